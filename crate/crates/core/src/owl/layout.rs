//! Serialization order shared by both writers: classes, datatype
//! properties, object properties, restrictions, keys, annotations,
//! individuals; each section sorted by IRI.

use std::collections::BTreeMap;

use super::model::{Individual, Iri, Literal, OwlAxiom, OwlDocument, RestrictionKind};

pub(crate) struct DatatypeProp<'a> {
    pub iri: &'a Iri,
    pub domain: &'a Iri,
    pub range: &'a Iri,
    pub functional: bool,
}

pub(crate) struct ObjectProp<'a> {
    pub iri: &'a Iri,
    pub domain: &'a Iri,
    pub range: &'a Iri,
    pub inverse_of: Option<&'a Iri>,
}

pub(crate) struct Layout<'a> {
    pub classes: Vec<&'a Iri>,
    pub datatype_props: Vec<DatatypeProp<'a>>,
    pub object_props: Vec<ObjectProp<'a>>,
    /// class → (property, kind, value), sorted.
    pub restrictions: BTreeMap<&'a Iri, Vec<(&'a Iri, RestrictionKind, u32)>>,
    /// class → keys in document order.
    pub keys: BTreeMap<&'a Iri, Vec<&'a [Iri]>>,
    pub annotation_props: Vec<&'a Iri>,
    /// subject → (property, value), sorted.
    pub annotations: BTreeMap<&'a Iri, Vec<(&'a Iri, &'a Literal)>>,
    pub individuals: Vec<&'a Individual>,
}

impl<'a> Layout<'a> {
    pub fn of(doc: &'a OwlDocument) -> Self {
        let mut l = Layout {
            classes: Vec::new(),
            datatype_props: Vec::new(),
            object_props: Vec::new(),
            restrictions: BTreeMap::new(),
            keys: BTreeMap::new(),
            annotation_props: Vec::new(),
            annotations: BTreeMap::new(),
            individuals: doc.individuals.iter().collect(),
        };
        for a in &doc.axioms {
            match a {
                OwlAxiom::ClassDecl { iri } => l.classes.push(iri),
                OwlAxiom::DatatypeProperty {
                    iri,
                    domain,
                    range,
                    functional,
                } => l.datatype_props.push(DatatypeProp {
                    iri,
                    domain,
                    range,
                    functional: *functional,
                }),
                OwlAxiom::ObjectProperty {
                    iri,
                    domain,
                    range,
                    inverse_of,
                } => l.object_props.push(ObjectProp {
                    iri,
                    domain,
                    range,
                    inverse_of: inverse_of.as_ref(),
                }),
                OwlAxiom::CardinalityRestriction {
                    class,
                    property,
                    kind,
                    value,
                } => l.restrictions.entry(class).or_default().push((property, *kind, *value)),
                OwlAxiom::HasKey { class, properties } => l.keys.entry(class).or_default().push(properties),
                OwlAxiom::AnnotationPropertyDecl { iri } => l.annotation_props.push(iri),
                OwlAxiom::Annotation {
                    subject,
                    property,
                    value,
                } => l.annotations.entry(subject).or_default().push((property, value)),
            }
        }
        l.classes.sort();
        l.datatype_props.sort_by_key(|p| p.iri);
        l.object_props.sort_by_key(|p| p.iri);
        l.annotation_props.sort();
        for v in l.restrictions.values_mut() {
            v.sort();
        }
        for v in l.annotations.values_mut() {
            v.sort();
        }
        l.individuals.sort_by_key(|i| &i.iri);
        l
    }
}
