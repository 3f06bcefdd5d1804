use crate::diag::{Code, Diagnostic, Diagnostics, Location, StageFailed};
use crate::ingest::ident_eq;
use crate::mtrdb::{derive_cardinality, Cardinality, ForeignKey, Mtrdb, Relation};

use super::naming::{relationship_base_name, upper_camel, NameSource};
use super::{CdmAttribute, CdmClass, CdmModel, CdmRelationship, FkRef, Origin, RelCardinality};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RelationKind {
    Base,
    Junction,
}

/// A relation is a junction when its composite primary key is made up of
/// foreign key columns, it has exactly two foreign keys, and it carries no
/// column outside the key.
pub fn classify_relation(r: &Relation, _m: &Mtrdb) -> RelationKind {
    let composite = r.r_pk.len() >= 2;
    let pk_from_fks = r.r_pk.iter().all(|c| r.is_fk_column(c));
    let two_fks = r.r_fk.len() == 2;
    let key_only = r.r_f.iter().all(|f| r.is_pk_column(&f.f_n));
    if composite && pk_from_fks && two_fks && key_only {
        RelationKind::Junction
    } else {
        RelationKind::Base
    }
}

fn fk_ref(fk: &ForeignKey) -> FkRef {
    FkRef {
        columns: fk.fk_columns.clone(),
        referenced: fk.referenced_relation.clone(),
        referenced_pk: fk.referenced_pk.clone(),
    }
}

/// Assigns relationship names, resolving model-wide collisions by appending
/// the holder class name and then a counter.
#[derive(Default)]
struct Namer {
    taken: Vec<String>,
}

impl Namer {
    fn assign(&mut self, base: String, holder: &str) -> String {
        let mut name = base.clone();
        if self.taken.contains(&name) {
            let with_holder = format!("{base}{}", upper_camel(holder));
            name = with_holder.clone();
            let mut n = 2;
            while self.taken.contains(&name) {
                name = format!("{with_holder}{n}");
                n += 1;
            }
        }
        self.taken.push(name.clone());
        name
    }
}

/// Build the canonical data model from a validated [`Mtrdb`].
///
/// Base relations become classes whose attributes are every field except
/// foreign-key-only columns; each of their foreign keys becomes one
/// relationship from the holder to the referenced class. Each junction
/// relation becomes a single many-to-many relationship between the targets
/// of its first and second foreign keys. A junction that is itself the
/// target of a foreign key is kept as a class with a warning.
pub fn build_cdm(m: &Mtrdb, diags: &mut Diagnostics) -> Result<CdmModel, StageFailed> {
    let mark = diags.len();
    let mut kinds: Vec<RelationKind> = m.relations.iter().map(|r| classify_relation(r, m)).collect();
    for (i, r) in m.relations.iter().enumerate() {
        if kinds[i] != RelationKind::Junction {
            continue;
        }
        let referrer = m
            .relations
            .iter()
            .find(|o| o.r_fk.iter().any(|fk| ident_eq(&fk.referenced_relation, &r.r_n)));
        if let Some(referrer) = referrer {
            kinds[i] = RelationKind::Base;
            diags.push(Diagnostic::warning(
                Code::ClassifyConflict,
                Location::relation(&r.r_n),
                format!(
                    "`{}` has the shape of a junction table but is referenced by `{}`; kept as a class",
                    r.r_n, referrer.r_n
                ),
            ));
        }
    }

    let mut model = CdmModel::default();
    for (r, kind) in m.relations.iter().zip(&kinds) {
        match kind {
            RelationKind::Junction => model.junction_relations.push(r.r_n.clone()),
            RelationKind::Base => model.classes.push(CdmClass {
                c_n: r.r_n.clone(),
                c_a: r
                    .r_f
                    .iter()
                    .filter(|f| r.is_pk_column(&f.f_n) || !r.is_fk_column(&f.f_n))
                    .map(|f| CdmAttribute {
                        a_n: f.f_n.clone(),
                        a_t: f.f_t,
                        a_l: f.f_l,
                        scale: f.scale,
                        a_d: f.f_d.clone(),
                        nullable: f.f_nl,
                    })
                    .collect(),
                c_r: Vec::new(),
                primary_key: r.r_pk.clone(),
                unique_keys: r.r_uk.clone(),
            }),
        }
    }

    let class_name = |rel: &str| -> String {
        model
            .class(rel)
            .map(|c| c.c_n.clone())
            .unwrap_or_else(|| rel.to_string())
    };
    let mut namer = Namer::default();
    let mut rels = Vec::new();
    for (r, kind) in m.relations.iter().zip(&kinds) {
        match kind {
            RelationKind::Base => {
                for fk in &r.r_fk {
                    let ca = derive_cardinality(fk, r);
                    let base = relationship_base_name(NameSource::Fk(fk));
                    rels.push(CdmRelationship {
                        rel_n: namer.assign(base, &r.r_n),
                        rel_c: RelCardinality {
                            forward: ca.holder_to_referenced,
                            inverse: ca.referenced_to_holder,
                        },
                        cs: r.r_n.clone(),
                        cd: class_name(&fk.referenced_relation),
                        origin: Origin::Fk {
                            holder: r.r_n.clone(),
                            fk: fk_ref(fk),
                        },
                    });
                }
            }
            RelationKind::Junction => {
                let (src, dst) = (&r.r_fk[0], &r.r_fk[1]);
                let cs = class_name(&src.referenced_relation);
                let base = relationship_base_name(NameSource::Junction(&r.r_n));
                rels.push(CdmRelationship {
                    rel_n: namer.assign(base, &cs),
                    rel_c: RelCardinality {
                        forward: Cardinality::MANY,
                        inverse: Cardinality::MANY,
                    },
                    cs,
                    cd: class_name(&dst.referenced_relation),
                    origin: Origin::Junction {
                        relation: r.r_n.clone(),
                        source: fk_ref(src),
                        destination: fk_ref(dst),
                    },
                });
            }
        }
    }
    for rel in &rels {
        if let Some(c) = model.classes.iter_mut().find(|c| c.c_n == rel.cs) {
            c.c_r.push(rel.rel_n.clone());
        }
    }
    model.relationships = rels;
    diags.check_since(mark, "cdm")?;
    Ok(model)
}
