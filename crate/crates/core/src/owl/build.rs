use std::collections::HashMap;

use crate::cdm::CdmModel;
use crate::diag::{Code, Diagnostic, Diagnostics, Location, StageFailed};
use crate::ingest::TypeKeyword;
use crate::mtrdb::Cardinality;

use super::model::{Iri, Literal, OwlAxiom, OwlDocument, RestrictionKind};
use super::names::EntityNames;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Profile {
    /// No key axioms; unique keys are reported as omitted.
    #[default]
    Owl1,
    /// Adds `owl:hasKey` for primary and unique keys.
    Owl2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BuildOptions {
    pub profile: Profile,
    pub attr_restrictions: bool,
    pub emit_length: bool,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            profile: Profile::Owl1,
            attr_restrictions: true,
            emit_length: false,
        }
    }
}

/// XSD datatype for a column type. The length never narrows the range.
pub fn map_type(a_t: TypeKeyword, _a_l: Option<u32>) -> Iri {
    use TypeKeyword::*;
    let local = match a_t {
        Int | Integer | SmallInt => "integer",
        BigInt => "long",
        Decimal | Numeric => "decimal",
        Float | Real | Double => "double",
        Char | Varchar | Text => "string",
        Date => "date",
        Time => "time",
        Timestamp | Datetime => "dateTime",
        Boolean => "boolean",
    };
    Iri::xsd(local)
}

/// Restrictions implied by a cardinality on `(class, property)`: `1..1`
/// is a single exact restriction, otherwise a min (when above zero) and a
/// max (when bounded).
pub fn restrictions_for(card: Cardinality) -> Vec<(RestrictionKind, u32)> {
    if card.min == 1 && card.max == Some(1) {
        return vec![(RestrictionKind::Exact, 1)];
    }
    let mut out = Vec::new();
    if card.min > 0 {
        out.push((RestrictionKind::Min, card.min));
    }
    if let Some(max) = card.max {
        out.push((RestrictionKind::Max, max));
    }
    out
}

/// Strip the SQL quoting from a canonical default literal.
fn default_lexical(d: &str) -> String {
    match d.strip_prefix('\'').and_then(|s| s.strip_suffix('\'')) {
        Some(inner) => inner.replace("''", "'"),
        None => d.to_string(),
    }
}

/// Translate a CDM into ontology axioms (no individuals).
///
/// Every class becomes a class declaration; every attribute a functional
/// datatype property; every relationship an object property plus a named
/// `<rel>Inv` inverse, with restrictions on the source class taken from the
/// forward cardinality.
pub fn build_ontology(
    cdm: &CdmModel,
    base: &Iri,
    opts: BuildOptions,
    diags: &mut Diagnostics,
) -> Result<OwlDocument, StageFailed> {
    let mark = diags.len();
    let names = EntityNames::for_model(cdm, base);
    check_collisions(cdm, &names, opts, diags);
    diags.check_since(mark, "owl")?;

    let mut doc = OwlDocument::new(base.clone());
    let ax = &mut doc.axioms;

    for c in &cdm.classes {
        ax.push(OwlAxiom::ClassDecl {
            iri: names.class(&c.c_n).clone(),
        });
    }

    let mut annotations = Vec::new();
    for c in &cdm.classes {
        let class = names.class(&c.c_n);
        for a in &c.c_a {
            let prop = names.attribute(&c.c_n, &a.a_n);
            ax.push(OwlAxiom::DatatypeProperty {
                iri: prop.clone(),
                domain: class.clone(),
                range: map_type(a.a_t, a.a_l),
                functional: true,
            });
            if let Some(d) = &a.a_d {
                annotations.push(OwlAxiom::Annotation {
                    subject: prop.clone(),
                    property: names.default_value.clone(),
                    value: Literal::plain(default_lexical(d)),
                });
            }
            if opts.emit_length {
                if let Some(l) = a.a_l {
                    annotations.push(OwlAxiom::Annotation {
                        subject: prop.clone(),
                        property: names.max_length.clone(),
                        value: Literal::typed(l.to_string(), Iri::xsd("nonNegativeInteger")),
                    });
                }
            }
        }
    }

    let mut restrictions = Vec::new();
    for r in &cdm.relationships {
        let prop = &names.relationships[&r.rel_n];
        let inv = &names.inverses[&r.rel_n];
        let (cs, cd) = (names.class(&r.cs), names.class(&r.cd));
        ax.push(OwlAxiom::ObjectProperty {
            iri: prop.clone(),
            domain: cs.clone(),
            range: cd.clone(),
            inverse_of: None,
        });
        ax.push(OwlAxiom::ObjectProperty {
            iri: inv.clone(),
            domain: cd.clone(),
            range: cs.clone(),
            inverse_of: Some(prop.clone()),
        });
        for (kind, value) in restrictions_for(r.rel_c.forward) {
            restrictions.push(OwlAxiom::CardinalityRestriction {
                class: cs.clone(),
                property: prop.clone(),
                kind,
                value,
            });
        }
    }
    if opts.attr_restrictions {
        for c in &cdm.classes {
            for a in &c.c_a {
                let kind = if a.nullable { RestrictionKind::Max } else { RestrictionKind::Exact };
                restrictions.push(OwlAxiom::CardinalityRestriction {
                    class: names.class(&c.c_n).clone(),
                    property: names.attribute(&c.c_n, &a.a_n).clone(),
                    kind,
                    value: 1,
                });
            }
        }
    }
    ax.extend(restrictions);

    for c in &cdm.classes {
        let class = names.class(&c.c_n);
        match opts.profile {
            Profile::Owl2 => {
                ax.push(OwlAxiom::HasKey {
                    class: class.clone(),
                    properties: c.primary_key.iter().map(|k| names.attribute(&c.c_n, k).clone()).collect(),
                });
                for uk in &c.unique_keys {
                    match uk.iter().map(|k| c.attribute(k).map(|a| &a.a_n)).collect::<Option<Vec<_>>>() {
                        Some(attrs) => ax.push(OwlAxiom::HasKey {
                            class: class.clone(),
                            properties: attrs.iter().map(|a| names.attribute(&c.c_n, a).clone()).collect(),
                        }),
                        None => diags.push(Diagnostic::note(
                            Code::UniqueKeysOmitted,
                            Location::relation(&c.c_n),
                            format!(
                                "unique key ({}) of `{}` includes foreign key columns; no key axiom emitted",
                                uk.join(", "),
                                c.c_n
                            ),
                        )),
                    }
                }
            }
            Profile::Owl1 if !c.unique_keys.is_empty() => diags.push(Diagnostic::note(
                Code::UniqueKeysOmitted,
                Location::relation(&c.c_n),
                format!(
                    "{} unique key(s) of `{}` omitted; key axioms need the owl2 profile",
                    c.unique_keys.len(),
                    c.c_n
                ),
            )),
            Profile::Owl1 => {}
        }
    }

    if annotations.iter().any(|a| matches!(a, OwlAxiom::Annotation { property, .. } if *property == names.default_value)) {
        ax.push(OwlAxiom::AnnotationPropertyDecl {
            iri: names.default_value.clone(),
        });
    }
    if annotations.iter().any(|a| matches!(a, OwlAxiom::Annotation { property, .. } if *property == names.max_length)) {
        ax.push(OwlAxiom::AnnotationPropertyDecl {
            iri: names.max_length.clone(),
        });
    }
    ax.extend(annotations);

    diags.check_since(mark, "owl")?;
    Ok(doc)
}

/// Report every IRI that more than one entity would be declared under.
fn check_collisions(cdm: &CdmModel, names: &EntityNames, opts: BuildOptions, diags: &mut Diagnostics) {
    let mut owners: Vec<(&Iri, String, &str)> = Vec::new();
    for c in &cdm.classes {
        owners.push((names.class(&c.c_n), format!("class `{}`", c.c_n), &c.c_n));
        for a in &c.c_a {
            owners.push((
                names.attribute(&c.c_n, &a.a_n),
                format!("attribute `{}.{}`", c.c_n, a.a_n),
                &c.c_n,
            ));
        }
    }
    for r in &cdm.relationships {
        owners.push((&names.relationships[&r.rel_n], format!("relationship `{}`", r.rel_n), &r.cs));
        owners.push((&names.inverses[&r.rel_n], format!("inverse of `{}`", r.rel_n), &r.cd));
    }
    let attrs = || cdm.classes.iter().flat_map(|c| &c.c_a);
    if attrs().any(|a| a.a_d.is_some()) {
        owners.push((&names.default_value, "annotation property `defaultValue`".into(), ""));
    }
    if opts.emit_length && attrs().any(|a| a.a_l.is_some()) {
        owners.push((&names.max_length, "annotation property `maxLength`".into(), ""));
    }

    let mut first: HashMap<&Iri, usize> = HashMap::new();
    for (i, (iri, what, rel)) in owners.iter().enumerate() {
        if let Some(&j) = first.get(iri) {
            let location = if rel.is_empty() { Location::None } else { Location::relation(*rel) };
            diags.push(Diagnostic::error(
                Code::IriCollision,
                location,
                format!("{what} and {} would both be named <{iri}>", owners[j].1),
            ));
        } else {
            first.insert(iri, i);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cdm::build_cdm;
    use crate::ingest::parse_ddl;
    use crate::mtrdb::{extract_mtrdb, ExtractOptions};

    fn base() -> Iri {
        Iri::parse_base("http://example.org/db#").unwrap()
    }

    fn cdm(ddl: &str) -> CdmModel {
        let mut d = Diagnostics::new();
        let s = parse_ddl(ddl, &mut d).unwrap();
        let m = extract_mtrdb(&s, ExtractOptions::default(), &mut d).unwrap();
        build_cdm(&m, &mut d).unwrap()
    }

    fn build(ddl: &str, opts: BuildOptions) -> (Result<OwlDocument, StageFailed>, Diagnostics) {
        let mut d = Diagnostics::new();
        let doc = build_ontology(&cdm(ddl), &base(), opts, &mut d);
        (doc, d)
    }

    #[test]
    fn type_map() {
        assert_eq!(map_type(TypeKeyword::Varchar, Some(50)), Iri::xsd("string"));
        assert_eq!(map_type(TypeKeyword::Decimal, Some(10)), Iri::xsd("decimal"));
        assert_eq!(map_type(TypeKeyword::Int, None), Iri::xsd("integer"));
        assert_eq!(map_type(TypeKeyword::BigInt, None), Iri::xsd("long"));
        assert_eq!(map_type(TypeKeyword::Datetime, None), Iri::xsd("dateTime"));
    }

    #[test]
    fn restriction_shapes() {
        assert_eq!(restrictions_for(Cardinality::EXACTLY_ONE), vec![(RestrictionKind::Exact, 1)]);
        assert_eq!(restrictions_for(Cardinality::ZERO_OR_ONE), vec![(RestrictionKind::Max, 1)]);
        assert_eq!(restrictions_for(Cardinality::MANY), vec![]);
        assert_eq!(
            restrictions_for(Cardinality::new(2, Some(5))),
            vec![(RestrictionKind::Min, 2), (RestrictionKind::Max, 5)]
        );
    }

    #[test]
    fn empty_model() {
        let mut d = Diagnostics::new();
        let doc = build_ontology(&CdmModel::default(), &base(), BuildOptions::default(), &mut d).unwrap();
        assert!(doc.axioms.is_empty());
        assert_eq!(doc.prefixes.len(), 5);
    }

    #[test]
    fn shared_attribute_names_are_prefixed() {
        let (doc, _) = build(
            "CREATE TABLE Customer (CustomerID INT PRIMARY KEY, Name TEXT);\n\
             CREATE TABLE Store (StoreID INT PRIMARY KEY, Name TEXT);",
            BuildOptions::default(),
        );
        let props: Vec<_> = doc
            .unwrap()
            .axioms
            .iter()
            .filter_map(|a| match a {
                OwlAxiom::DatatypeProperty { iri, .. } => Some(iri.local_name(&base()).unwrap().to_string()),
                _ => None,
            })
            .collect();
        assert_eq!(props, vec!["CustomerID", "Customer_Name", "StoreID", "Store_Name"]);
    }

    #[test]
    fn attribute_named_like_class_is_prefixed() {
        let (doc, _) = build(
            "CREATE TABLE Store (StoreID INT PRIMARY KEY);\nCREATE TABLE T (TID INT PRIMARY KEY, Store TEXT);",
            BuildOptions::default(),
        );
        assert!(doc.unwrap().is_declared(&base().join("T_Store")));
    }

    #[test]
    fn collision_after_disambiguation_is_an_error() {
        // Class `A_b` and attribute `b` of class `A` (shared with `A_b.b`)
        // both land on `A_b`.
        let (doc, d) = build(
            "CREATE TABLE A (id INT PRIMARY KEY, b INT);\nCREATE TABLE A_b (id2 INT PRIMARY KEY, b INT);",
            BuildOptions::default(),
        );
        assert!(doc.is_err());
        let errs: Vec<_> = d.with_code(Code::IriCollision).collect();
        assert_eq!(errs.len(), 1);
        assert_eq!(errs[0].location, Location::relation("A_b"));
    }

    #[test]
    fn relationship_restrictions_and_inverse() {
        let (doc, _) = build(
            "CREATE TABLE C (CID INT PRIMARY KEY);\n\
             CREATE TABLE O (OID INT PRIMARY KEY, CID INT NOT NULL REFERENCES C, MID INT REFERENCES C);",
            BuildOptions {
                attr_restrictions: false,
                ..Default::default()
            },
        );
        let doc = doc.unwrap();
        let b = base();
        assert!(doc.axioms.contains(&OwlAxiom::ObjectProperty {
            iri: b.join("hasCInv"),
            domain: b.join("C"),
            range: b.join("O"),
            inverse_of: Some(b.join("hasC")),
        }));
        let r: Vec<_> = doc
            .axioms
            .iter()
            .filter_map(|a| match a {
                OwlAxiom::CardinalityRestriction { property, kind, value, .. } => {
                    Some((property.local_name(&b).unwrap().to_string(), *kind, *value))
                }
                _ => None,
            })
            .collect();
        assert_eq!(r, vec![("hasC".into(), RestrictionKind::Exact, 1), ("hasM".into(), RestrictionKind::Max, 1)]);
    }

    #[test]
    fn attribute_restrictions_follow_nullability() {
        let (doc, _) = build("CREATE TABLE C (CID INT PRIMARY KEY, n TEXT);", BuildOptions::default());
        let kinds: Vec<_> = doc
            .unwrap()
            .axioms
            .iter()
            .filter_map(|a| match a {
                OwlAxiom::CardinalityRestriction { kind, .. } => Some(*kind),
                _ => None,
            })
            .collect();
        assert_eq!(kinds, vec![RestrictionKind::Exact, RestrictionKind::Max]);
    }

    #[test]
    fn defaults_and_lengths_become_annotations() {
        let (doc, _) = build(
            "CREATE TABLE C (CID INT PRIMARY KEY, n VARCHAR(20) DEFAULT 'it''s', q INT DEFAULT 0);",
            BuildOptions {
                emit_length: true,
                ..Default::default()
            },
        );
        let doc = doc.unwrap();
        let b = base();
        assert!(doc.is_declared(&b.join("defaultValue")));
        assert!(doc.is_declared(&b.join("maxLength")));
        assert!(doc.axioms.contains(&OwlAxiom::Annotation {
            subject: b.join("n"),
            property: b.join("defaultValue"),
            value: Literal::plain("it's"),
        }));
        assert!(doc.axioms.contains(&OwlAxiom::Annotation {
            subject: b.join("q"),
            property: b.join("defaultValue"),
            value: Literal::plain("0"),
        }));
        assert!(doc.axioms.contains(&OwlAxiom::Annotation {
            subject: b.join("n"),
            property: b.join("maxLength"),
            value: Literal::typed("20", Iri::xsd("nonNegativeInteger")),
        }));
    }

    #[test]
    fn keys_by_profile() {
        let ddl = "CREATE TABLE C (CID INT PRIMARY KEY, code TEXT UNIQUE);";
        let (doc, d) = build(ddl, BuildOptions::default());
        assert!(!doc.unwrap().axioms.iter().any(|a| matches!(a, OwlAxiom::HasKey { .. })));
        assert_eq!(d.with_code(Code::UniqueKeysOmitted).count(), 1);

        let (doc, d) = build(
            ddl,
            BuildOptions {
                profile: Profile::Owl2,
                ..Default::default()
            },
        );
        let keys = doc.unwrap().axioms.iter().filter(|a| matches!(a, OwlAxiom::HasKey { .. })).count();
        assert_eq!(keys, 2);
        assert!(d.is_empty());
    }

    #[test]
    fn unique_key_over_fk_column_is_noted_under_owl2() {
        let (doc, d) = build(
            "CREATE TABLE P (PID INT PRIMARY KEY);\nCREATE TABLE C (CID INT PRIMARY KEY, PID INT UNIQUE REFERENCES P);",
            BuildOptions {
                profile: Profile::Owl2,
                ..Default::default()
            },
        );
        assert_eq!(doc.unwrap().axioms.iter().filter(|a| matches!(a, OwlAxiom::HasKey { .. })).count(), 2);
        assert_eq!(d.with_code(Code::UniqueKeysOmitted).count(), 1);
    }
}
