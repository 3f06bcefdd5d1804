use crate::diag::{Code, Diagnostic, Diagnostics, Location, StageFailed};
use crate::ingest::{ident_eq, SchemaAst};

use super::{Cardinality, FkCardinality, Field, ForeignKey, Mtrdb, Relation, Relationship};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ExtractOptions {
    /// Reject keyless tables instead of promoting all columns to a key.
    pub strict_keys: bool,
}

/// Build the metadata model from a parsed schema.
///
/// The first pass creates one relation per table with its fields, primary
/// and unique keys; the second resolves foreign keys against the now
/// complete relation set (so forward references work) and derives one
/// relationship per foreign key.
pub fn extract_mtrdb(schema: &SchemaAst, opts: ExtractOptions, diags: &mut Diagnostics) -> Result<Mtrdb, StageFailed> {
    let mark = diags.len();
    let mut relations: Vec<Relation> = Vec::with_capacity(schema.tables.len());

    for table in &schema.tables {
        let mut r = Relation {
            r_n: table.name.clone(),
            r_f: table.columns.iter().map(Field::from).collect(),
            r_pk: table.primary_key.clone(),
            r_fk: Vec::new(),
            r_uk: table.uniques.clone(),
            surrogate_pk: false,
        };
        if r.r_pk.is_empty() {
            if opts.strict_keys {
                diags.push(Diagnostic::error(
                    Code::MissingPrimaryKey,
                    Location::relation(&r.r_n),
                    format!("table `{}` declares no primary key", r.r_n),
                ));
            } else {
                r.r_pk = r.r_f.iter().map(|f| f.f_n.clone()).collect();
                r.surrogate_pk = true;
                diags.push(Diagnostic::warning(
                    Code::SurrogatePrimaryKey,
                    Location::relation(&r.r_n),
                    format!(
                        "table `{}` declares no primary key; using all columns ({}) as its key",
                        r.r_n,
                        r.r_pk.join(", ")
                    ),
                ));
            }
        }
        relations.push(r);
    }

    let mut resolved: Vec<Vec<ForeignKey>> = Vec::with_capacity(relations.len());
    for (table, holder) in schema.tables.iter().zip(&relations) {
        let mut fks = Vec::new();
        for fk in &table.foreign_keys {
            let Some(target) = relations.iter().find(|r| ident_eq(&r.r_n, &fk.referenced_table)) else {
                diags.push(Diagnostic::error(
                    Code::UnresolvedReference,
                    Location::relation(&holder.r_n),
                    format!(
                        "foreign key ({}) of `{}` references unknown table `{}`",
                        fk.columns.join(", "),
                        holder.r_n,
                        fk.referenced_table
                    ),
                ));
                continue;
            };
            match resolve_fk(holder, &fk.columns, target, &fk.referenced_columns) {
                Ok(fk) => fks.push(fk),
                Err(msg) => diags.push(Diagnostic::error(Code::KeyMismatch, Location::relation(&holder.r_n), msg)),
            }
        }
        resolved.push(fks);
    }
    for (r, fks) in relations.iter_mut().zip(resolved) {
        r.r_fk = fks;
    }
    diags.check_since(mark, "extract")?;

    let relationships = relations
        .iter()
        .flat_map(|holder| {
            holder.r_fk.iter().map(move |fk| Relationship {
                r_pk_source: fk.referenced_pk.clone(),
                source: fk.referenced_relation.clone(),
                r_fk_target: fk.fk_columns.clone(),
                target: holder.r_n.clone(),
                ca: derive_cardinality(fk, holder),
                self_referential: ident_eq(&fk.referenced_relation, &holder.r_n),
            })
        })
        .collect();
    Ok(Mtrdb {
        relations,
        relationships,
    })
}

/// Check a foreign key against the referenced primary key and order its
/// columns to line up with the key.
fn resolve_fk(holder: &Relation, cols: &[String], target: &Relation, refcols: &[String]) -> Result<ForeignKey, String> {
    let describe = || {
        format!(
            "foreign key ({}) of `{}` referencing `{}`",
            cols.join(", "),
            holder.r_n,
            target.r_n
        )
    };
    let fk_columns: Vec<String> = if refcols.is_empty() {
        if cols.len() != target.r_pk.len() {
            return Err(format!(
                "{} has {} column(s) but the primary key ({}) has {}",
                describe(),
                cols.len(),
                target.r_pk.join(", "),
                target.r_pk.len()
            ));
        }
        cols.to_vec()
    } else {
        if refcols.len() != cols.len() {
            return Err(format!(
                "{} lists {} local and {} referenced columns",
                describe(),
                cols.len(),
                refcols.len()
            ));
        }
        let same_set = refcols.len() == target.r_pk.len()
            && target.r_pk.iter().all(|pk| refcols.iter().any(|c| ident_eq(c, pk)));
        if !same_set {
            return Err(format!(
                "{} targets ({}) which is not its primary key ({})",
                describe(),
                refcols.join(", "),
                target.r_pk.join(", ")
            ));
        }
        target
            .r_pk
            .iter()
            .map(|pk| {
                let i = refcols.iter().position(|c| ident_eq(c, pk)).expect("checked above");
                cols[i].clone()
            })
            .collect()
    };
    for (local, remote) in fk_columns.iter().zip(&target.r_pk) {
        let lf = holder.field(local).expect("key columns exist");
        let rf = target.field(remote).expect("key columns exist");
        if lf.f_t.normalized() != rf.f_t.normalized() {
            return Err(format!(
                "{}: column `{}` is {} but `{}.{}` is {}",
                describe(),
                lf.f_n,
                lf.f_t,
                target.r_n,
                rf.f_n,
                rf.f_t
            ));
        }
    }
    Ok(ForeignKey {
        fk_columns,
        referenced_relation: target.r_n.clone(),
        referenced_pk: target.r_pk.clone(),
    })
}

/// Cardinality of a foreign key in both directions.
///
/// A holder row points at one referenced row, or at none when any key column
/// is nullable. A referenced row is pointed at by any number of holder rows,
/// or by at most one when the key columns are themselves the holder's
/// primary key or one of its unique keys.
pub fn derive_cardinality(fk: &ForeignKey, holder: &Relation) -> FkCardinality {
    let nullable = fk
        .fk_columns
        .iter()
        .any(|c| holder.field(c).is_some_and(|f| f.f_nl));
    let same_set = |key: &[String]| {
        key.len() == fk.fk_columns.len() && key.iter().all(|k| fk.fk_columns.iter().any(|c| ident_eq(c, k)))
    };
    let unique = same_set(&holder.r_pk) || holder.r_uk.iter().any(|u| same_set(u));
    FkCardinality {
        holder_to_referenced: Cardinality::new(if nullable { 0 } else { 1 }, Some(1)),
        referenced_to_holder: Cardinality::new(0, if unique { Some(1) } else { None }),
    }
}
