//! Table rows to OWL individuals.

mod coerce;

use std::collections::{HashMap, HashSet};

use crate::cdm::{CdmAttribute, CdmClass, CdmModel, FkRef, Origin};
use crate::diag::{Code, Diagnostic, Diagnostics, Location, Severity, StageFailed};
use crate::ingest::{ident_eq, Recordset};
use crate::owl::{sanitize_name, sanitize_value, EntityNames, Individual, Iri, OwlDocument};

pub use coerce::coerce_literal;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ConvertOptions {
    /// Dangling references are errors rather than warnings.
    pub strict_ri: bool,
}

/// `base + Class_v1_v2…`, with every part sanitized. Values must already be
/// in canonical lexical form so equal keys mint equal IRIs.
pub fn mint_iri(class_name: &str, pk_values: &[&str], base: &Iri) -> Iri {
    let mut local = sanitize_name(class_name);
    for v in pk_values {
        local.push('_');
        local.push_str(&sanitize_value(v));
    }
    base.join(&local)
}

/// A minted reference waiting for the referential integrity check.
struct PendingRef {
    target_class: String,
    target: Iri,
    location: Location,
}

struct Converter<'a> {
    cdm: &'a CdmModel,
    names: EntityNames,
    base: Iri,
    declared: HashSet<Iri>,
    individuals: Vec<Individual>,
    /// IRI → index into `individuals`.
    by_iri: HashMap<Iri, usize>,
    /// Minted IRIs per class, for the integrity check.
    minted: HashMap<String, HashSet<Iri>>,
    pending: Vec<PendingRef>,
}

fn cell<'r>(rs: &Recordset, row: &'r [Option<String>], col: &str) -> Option<&'r str> {
    rs.column_index(col).and_then(|i| row.get(i)).and_then(|c| c.as_deref())
}

impl<'a> Converter<'a> {
    fn pk_attribute(&self, class: &str, col: &str) -> Option<(&'a CdmClass, &'a CdmAttribute)> {
        let c = self.cdm.class(class)?;
        Some((c, c.attribute(col)?))
    }

    /// Canonical key values for `columns`, typed by the matching `key`
    /// attributes of `class`. `None` when a cell is NULL (reported only if
    /// `null_is_error`) or fails coercion (always reported).
    #[allow(clippy::too_many_arguments)]
    fn key_values(
        &self,
        rs: &Recordset,
        row_no: usize,
        row: &[Option<String>],
        columns: &[String],
        class: &str,
        key: &[String],
        null_is_error: bool,
        diags: &mut Diagnostics,
    ) -> Option<Vec<String>> {
        let mut values = Vec::with_capacity(columns.len());
        let mut ok = true;
        for (col, key_col) in columns.iter().zip(key) {
            let at = Location::cell(&rs.relation_name, row_no, col);
            let Some(v) = cell(rs, row, col) else {
                if null_is_error {
                    diags.push(Diagnostic::error(Code::NullKeyCell, at, format!("key column `{col}` is NULL")));
                }
                ok = false;
                continue;
            };
            let Some((_, attr)) = self.pk_attribute(class, key_col) else {
                ok = false;
                continue;
            };
            match coerce_literal(v, attr.a_t, attr.scale) {
                Ok(lit) => values.push(lit.lexical),
                Err(msg) => {
                    diags.push(Diagnostic::error(Code::LiteralCoercion, at, msg));
                    ok = false;
                }
            }
        }
        ok.then_some(values)
    }

    fn mint(&self, class: &str, values: &[String]) -> Iri {
        let refs: Vec<&str> = values.iter().map(String::as_str).collect();
        mint_iri(class, &refs, &self.base)
    }

    fn check_columns(&self, rs: &Recordset, known: &[&str], diags: &mut Diagnostics) -> bool {
        let mut ok = true;
        for h in &rs.header {
            if !known.iter().any(|k| ident_eq(k, h)) {
                diags.push(Diagnostic::error(
                    Code::UnknownColumn,
                    Location::Relation {
                        relation: rs.relation_name.clone(),
                        row: None,
                        column: Some(h.clone()),
                    },
                    format!("`{}` has no column `{h}`", rs.relation_name),
                ));
                ok = false;
            }
        }
        for (i, row) in rs.rows.iter().enumerate() {
            if row.len() != rs.header.len() {
                diags.push(Diagnostic::error(
                    Code::RowArity,
                    Location::row(&rs.relation_name, i + 1),
                    format!("row has {} cells, header has {}", row.len(), rs.header.len()),
                ));
                ok = false;
            }
        }
        ok
    }

    fn base_rows(&mut self, rs: &Recordset, class: &'a CdmClass, diags: &mut Diagnostics) {
        let fks: Vec<(&'a str, &'a FkRef)> = self
            .cdm
            .relationships
            .iter()
            .filter_map(|r| match &r.origin {
                Origin::Fk { holder, fk } if *holder == class.c_n => Some((r.rel_n.as_str(), fk)),
                _ => None,
            })
            .collect();
        let mut known: Vec<&str> = class.c_a.iter().map(|a| a.a_n.as_str()).collect();
        known.extend(fks.iter().flat_map(|(_, fk)| fk.columns.iter().map(String::as_str)));
        if !self.check_columns(rs, &known, diags) {
            return;
        }
        let class_iri = self.names.class(&class.c_n).clone();

        for (i, row) in rs.rows.iter().enumerate() {
            let row_no = i + 1;
            let Some(key) = self.key_values(rs, row_no, row, &class.primary_key, &class.c_n, &class.primary_key, true, diags)
            else {
                continue;
            };
            let iri = self.mint(&class.c_n, &key);
            if self.by_iri.contains_key(&iri) || self.declared.contains(&iri) {
                let what = if self.declared.contains(&iri) { "an ontology entity" } else { "another row" };
                diags.push(Diagnostic::error(
                    Code::IriCollision,
                    Location::row(&rs.relation_name, row_no),
                    format!("individual <{iri}> has the same IRI as {what}"),
                ));
                continue;
            }

            let mut ind = Individual {
                iri: iri.clone(),
                class_iri: class_iri.clone(),
                literal_assertions: Vec::new(),
                object_assertions: Vec::new(),
            };
            let mut row_ok = true;
            for a in &class.c_a {
                let Some(v) = cell(rs, row, &a.a_n) else { continue };
                match coerce_literal(v, a.a_t, a.scale) {
                    Ok(lit) => ind
                        .literal_assertions
                        .push((self.names.attribute(&class.c_n, &a.a_n).clone(), lit)),
                    Err(msg) => {
                        diags.push(Diagnostic::error(
                            Code::LiteralCoercion,
                            Location::cell(&rs.relation_name, row_no, &a.a_n),
                            msg,
                        ));
                        row_ok = false;
                    }
                }
            }
            for (rel_n, fk) in &fks {
                // A foreign key with any NULL column asserts nothing.
                if fk.columns.iter().any(|c| cell(rs, row, c).is_none()) {
                    continue;
                }
                let Some(values) =
                    self.key_values(rs, row_no, row, &fk.columns, &fk.referenced, &fk.referenced_pk, false, diags)
                else {
                    row_ok = false;
                    continue;
                };
                let target_class = self.cdm.class(&fk.referenced).map(|c| c.c_n.clone()).unwrap_or_default();
                let target = self.mint(&target_class, &values);
                self.pending.push(PendingRef {
                    target_class,
                    target: target.clone(),
                    location: Location::cell(&rs.relation_name, row_no, &fk.columns[0]),
                });
                ind.object_assertions.push((self.names.relationships[*rel_n].clone(), target));
            }
            if row_ok {
                self.minted.entry(class.c_n.clone()).or_default().insert(iri.clone());
                self.by_iri.insert(iri, self.individuals.len());
                self.individuals.push(ind);
            }
        }
    }

    fn junction_rows(&mut self, rs: &Recordset, relation: &str, diags: &mut Diagnostics) {
        let Some(rel) = self
            .cdm
            .relationships
            .iter()
            .find(|r| matches!(&r.origin, Origin::Junction { relation: j, .. } if ident_eq(j, relation)))
        else {
            return;
        };
        let Origin::Junction { source, destination, .. } = &rel.origin else { unreachable!() };
        let known: Vec<&str> = source.columns.iter().chain(&destination.columns).map(String::as_str).collect();
        if !self.check_columns(rs, &known, diags) {
            return;
        }
        let prop = self.names.relationships[&rel.rel_n].clone();
        let cs_iri = self.names.class(&rel.cs).clone();

        for (i, row) in rs.rows.iter().enumerate() {
            let row_no = i + 1;
            let src = self.key_values(rs, row_no, row, &source.columns, &rel.cs, &source.referenced_pk, true, diags);
            let dst = self.key_values(rs, row_no, row, &destination.columns, &rel.cd, &destination.referenced_pk, true, diags);
            let (Some(src), Some(dst)) = (src, dst) else { continue };
            let subject = self.mint(&rel.cs, &src);
            let target = self.mint(&rel.cd, &dst);
            self.pending.push(PendingRef {
                target_class: rel.cs.clone(),
                target: subject.clone(),
                location: Location::cell(&rs.relation_name, row_no, &source.columns[0]),
            });
            self.pending.push(PendingRef {
                target_class: rel.cd.clone(),
                target: target.clone(),
                location: Location::cell(&rs.relation_name, row_no, &destination.columns[0]),
            });
            let idx = match self.by_iri.get(&subject) {
                Some(&idx) => idx,
                None => {
                    // The source row is missing; keep the link on a bare
                    // individual so no junction row is lost.
                    self.individuals.push(Individual {
                        iri: subject.clone(),
                        class_iri: cs_iri.clone(),
                        literal_assertions: Vec::new(),
                        object_assertions: Vec::new(),
                    });
                    self.by_iri.insert(subject, self.individuals.len() - 1);
                    self.individuals.len() - 1
                }
            };
            self.individuals[idx].object_assertions.push((prop.clone(), target));
        }
    }
}

/// Append one individual per base-table row to `doc`.
///
/// Literal assertions cover every non-NULL attribute cell; each foreign key
/// without NULL columns becomes an object assertion to the minted target
/// IRI; each junction row adds one assertion to its source-side individual.
/// Targets with no matching row are reported as referential integrity
/// warnings (errors under `strict_ri`) but still asserted.
pub fn convert_recordsets(
    data: &[Recordset],
    cdm: &CdmModel,
    mut doc: OwlDocument,
    opts: ConvertOptions,
    diags: &mut Diagnostics,
) -> Result<OwlDocument, StageFailed> {
    let mark = diags.len();
    let mut conv = Converter {
        cdm,
        names: EntityNames::for_model(cdm, &doc.base_iri),
        base: doc.base_iri.clone(),
        declared: doc.axioms.iter().filter_map(|a| a.declared().cloned()).collect(),
        individuals: Vec::new(),
        by_iri: HashMap::new(),
        minted: HashMap::new(),
        pending: Vec::new(),
    };

    let mut junctions = Vec::new();
    for rs in data {
        if let Some(class) = cdm.class(&rs.relation_name) {
            conv.base_rows(rs, class, diags);
        } else if cdm.is_junction(&rs.relation_name) {
            junctions.push(rs);
        } else {
            diags.push(Diagnostic::error(
                Code::UnknownRelation,
                Location::relation(&rs.relation_name),
                format!("data for `{}`, which is not a relation of the schema", rs.relation_name),
            ));
        }
    }
    for rs in junctions {
        conv.junction_rows(rs, &rs.relation_name, diags);
    }

    let severity = if opts.strict_ri { Severity::Error } else { Severity::Warning };
    for p in &conv.pending {
        let found = conv.minted.get(&p.target_class).is_some_and(|s| s.contains(&p.target));
        if !found {
            diags.push(Diagnostic::new(
                severity,
                Code::ReferentialIntegrity,
                p.location.clone(),
                format!("no `{}` row for <{}>", p.target_class, p.target),
            ));
        }
    }

    diags.check_since(mark, "convert")?;
    doc.individuals.extend(conv.individuals);
    Ok(doc)
}
