use std::collections::HashMap;

use crate::diag::{Code, Diagnostic, Location};
use crate::ingest::ident_eq;

use super::{Mtrdb, Relation};

/// Report every structural invariant violation of `m`. An empty result
/// means the model is well formed.
pub fn validate_mtrdb(m: &Mtrdb) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let err = |code, rel: &str, msg: String| Diagnostic::error(code, Location::relation(rel), msg);

    for (i, r) in m.relations.iter().enumerate() {
        if m.relations[..i].iter().any(|o| ident_eq(&o.r_n, &r.r_n)) {
            out.push(err(Code::DuplicateRelation, &r.r_n, format!("relation `{}` appears more than once", r.r_n)));
        }
        for (j, f) in r.r_f.iter().enumerate() {
            if r.r_f[..j].iter().any(|o| ident_eq(&o.f_n, &f.f_n)) {
                out.push(err(Code::DuplicateColumn, &r.r_n, format!("field `{}` appears more than once", f.f_n)));
            }
        }
        if r.r_pk.is_empty() {
            out.push(err(Code::MissingPrimaryKey, &r.r_n, format!("relation `{}` has no primary key", r.r_n)));
        }
        let keys = std::iter::once(("primary key", &r.r_pk))
            .chain(r.r_uk.iter().map(|u| ("unique key", u)))
            .chain(r.r_fk.iter().map(|fk| ("foreign key", &fk.fk_columns)));
        for (what, cols) in keys {
            for c in cols {
                if r.field(c).is_none() {
                    out.push(err(
                        Code::DanglingKeyColumn,
                        &r.r_n,
                        format!("{what} column `{c}` is not a field of `{}`", r.r_n),
                    ));
                }
            }
        }
        for fk in &r.r_fk {
            match m.relation(&fk.referenced_relation) {
                None => out.push(err(
                    Code::UnresolvedReference,
                    &r.r_n,
                    format!("foreign key of `{}` references unknown relation `{}`", r.r_n, fk.referenced_relation),
                )),
                Some(target) => {
                    if let Some(msg) = key_problem(r, &fk.fk_columns, target, &fk.referenced_pk) {
                        out.push(err(Code::KeyMismatch, &r.r_n, msg));
                    }
                }
            }
        }
    }

    // Relationships must correspond one-to-one with foreign keys. Arity and
    // lookup faults are reported per relationship; correspondence is
    // checked by counting per (referenced, holder) pair.
    let mut rel_counts: HashMap<(String, String), usize> = HashMap::new();
    for rel in &m.relationships {
        if rel.r_pk_source.len() != rel.r_fk_target.len() {
            out.push(err(
                Code::KeyMismatch,
                &rel.target,
                format!(
                    "relationship {} -> {} pairs {} key column(s) with {} foreign key column(s)",
                    rel.source,
                    rel.target,
                    rel.r_pk_source.len(),
                    rel.r_fk_target.len()
                ),
            ));
        }
        let (Some(source), Some(target)) = (m.relation(&rel.source), m.relation(&rel.target)) else {
            out.push(err(
                Code::UnresolvedReference,
                &rel.target,
                format!("relationship {} -> {} names an unknown relation", rel.source, rel.target),
            ));
            continue;
        };
        if rel.r_pk_source.len() == rel.r_fk_target.len() {
            if let Some(msg) = key_problem(target, &rel.r_fk_target, source, &rel.r_pk_source) {
                out.push(err(Code::KeyMismatch, &rel.target, msg));
            }
        }
        *rel_counts
            .entry((source.r_n.to_lowercase(), target.r_n.to_lowercase()))
            .or_default() += 1;
    }
    let mut fk_counts: HashMap<(String, String), usize> = HashMap::new();
    for r in &m.relations {
        for fk in &r.r_fk {
            if let Some(t) = m.relation(&fk.referenced_relation) {
                *fk_counts.entry((t.r_n.to_lowercase(), r.r_n.to_lowercase())).or_default() += 1;
            }
        }
    }
    let mut pairs: Vec<_> = rel_counts.keys().chain(fk_counts.keys()).cloned().collect();
    pairs.sort();
    pairs.dedup();
    for pair in pairs {
        let rels = rel_counts.get(&pair).copied().unwrap_or(0);
        let fks = fk_counts.get(&pair).copied().unwrap_or(0);
        if rels != fks {
            // Keys are lower-cased; report the declared spelling.
            let declared = |n: &str| m.relation(n).map_or_else(|| n.to_string(), |r| r.r_n.clone());
            let (referenced, holder) = (declared(&pair.0), declared(&pair.1));
            out.push(err(
                Code::OrphanRelationship,
                &holder,
                format!("{rels} relationship(s) but {fks} foreign key(s) from `{holder}` to `{referenced}`"),
            ));
        }
    }
    out
}

/// Arity, key-identity and type agreement between foreign key columns of
/// `holder` and key columns of `target`.
fn key_problem(holder: &Relation, fk_cols: &[String], target: &Relation, ref_cols: &[String]) -> Option<String> {
    if fk_cols.len() != ref_cols.len() {
        return Some(format!(
            "foreign key ({}) of `{}` has {} column(s) but references {}",
            fk_cols.join(", "),
            holder.r_n,
            fk_cols.len(),
            ref_cols.len()
        ));
    }
    let is_pk = ref_cols.len() == target.r_pk.len() && ref_cols.iter().zip(&target.r_pk).all(|(a, b)| ident_eq(a, b));
    if !is_pk {
        return Some(format!(
            "foreign key of `{}` references ({}) instead of the primary key ({}) of `{}`",
            holder.r_n,
            ref_cols.join(", "),
            target.r_pk.join(", "),
            target.r_n
        ));
    }
    for (l, r) in fk_cols.iter().zip(ref_cols) {
        let (Some(lf), Some(rf)) = (holder.field(l), target.field(r)) else {
            continue;
        };
        if lf.f_t.normalized() != rf.f_t.normalized() {
            return Some(format!(
                "`{}.{}` ({}) does not match `{}.{}` ({})",
                holder.r_n, lf.f_n, lf.f_t, target.r_n, rf.f_n, rf.f_t
            ));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diag::Diagnostics;
    use crate::ingest::parse_ddl;
    use crate::mtrdb::{extract_mtrdb, ExtractOptions};

    fn model() -> Mtrdb {
        let mut d = Diagnostics::new();
        let s = parse_ddl(
            "CREATE TABLE c (id INT PRIMARY KEY, n TEXT);\n\
             CREATE TABLE o (id INT PRIMARY KEY, c INT NOT NULL REFERENCES c);",
            &mut d,
        )
        .unwrap();
        extract_mtrdb(&s, ExtractOptions::default(), &mut d).unwrap()
    }

    fn codes(m: &Mtrdb) -> Vec<Code> {
        validate_mtrdb(m).into_iter().map(|d| d.code).collect()
    }

    #[test]
    fn extracted_model_is_valid() {
        assert!(validate_mtrdb(&model()).is_empty());
    }

    #[test]
    fn wrong_relationship_arity() {
        let mut m = model();
        m.relationships[0].r_fk_target.push("id".into());
        assert_eq!(codes(&m), vec![Code::KeyMismatch]);
    }

    #[test]
    fn duplicate_relation() {
        let mut m = model();
        let mut dup = m.relations[0].clone();
        dup.r_n = "C".into();
        m.relations.push(dup);
        assert_eq!(codes(&m), vec![Code::DuplicateRelation]);
    }

    #[test]
    fn missing_relationship_is_orphan() {
        let mut m = model();
        m.relationships.clear();
        assert_eq!(codes(&m), vec![Code::OrphanRelationship]);
    }

    #[test]
    fn relationship_to_unknown_relation() {
        let mut m = model();
        m.relationships.push(m.relationships[0].clone());
        m.relationships[1].source = "ghost".into();
        assert_eq!(codes(&m), vec![Code::UnresolvedReference]);
    }

    #[test]
    fn empty_primary_key() {
        let mut m = model();
        m.relations[0].r_pk.clear();
        let c = codes(&m);
        assert!(c.contains(&Code::MissingPrimaryKey));
    }

    #[test]
    fn dangling_key_column() {
        let mut m = model();
        m.relations[0].r_uk.push(vec!["nope".into()]);
        assert_eq!(codes(&m), vec![Code::DanglingKeyColumn]);
    }
}
