//! Canonical data model: classes with attributes, and named binary
//! relationships with min..max cardinalities.

mod build;
mod dump;
mod naming;

use crate::ingest::{ident_eq, TypeKeyword};
use crate::mtrdb::Cardinality;

pub use build::{build_cdm, classify_relation, RelationKind};
pub use dump::dump_cdm;
pub use naming::{lower_camel, relationship_base_name, upper_camel, NameSource};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CdmAttribute {
    pub a_n: String,
    pub a_t: TypeKeyword,
    pub a_l: Option<u32>,
    pub scale: Option<u32>,
    pub a_d: Option<String>,
    /// Carried from the field so restrictions can reflect NOT NULL.
    pub nullable: bool,
}

/// A foreign key seen from its holder: local columns aligned with the
/// referenced primary key.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FkRef {
    pub columns: Vec<String>,
    pub referenced: String,
    pub referenced_pk: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Origin {
    Fk { holder: String, fk: FkRef },
    /// `source` links the junction to `cs`, `destination` to `cd`.
    Junction {
        relation: String,
        source: FkRef,
        destination: FkRef,
    },
}

/// Cardinality of a relationship in both directions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RelCardinality {
    /// Number of `cd` instances one `cs` instance relates to.
    pub forward: Cardinality,
    /// Number of `cs` instances one `cd` instance relates to.
    pub inverse: Cardinality,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CdmRelationship {
    pub rel_n: String,
    pub rel_c: RelCardinality,
    pub cs: String,
    pub cd: String,
    pub origin: Origin,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CdmClass {
    pub c_n: String,
    pub c_a: Vec<CdmAttribute>,
    /// Names of relationships whose source is this class.
    pub c_r: Vec<String>,
    pub primary_key: Vec<String>,
    pub unique_keys: Vec<Vec<String>>,
}

impl CdmClass {
    pub fn attribute(&self, name: &str) -> Option<&CdmAttribute> {
        self.c_a.iter().find(|a| ident_eq(&a.a_n, name))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CdmModel {
    pub classes: Vec<CdmClass>,
    pub relationships: Vec<CdmRelationship>,
    pub junction_relations: Vec<String>,
}

impl CdmModel {
    pub fn class(&self, name: &str) -> Option<&CdmClass> {
        self.classes.iter().find(|c| ident_eq(&c.c_n, name))
    }

    pub fn is_junction(&self, relation: &str) -> bool {
        self.junction_relations.iter().any(|j| ident_eq(j, relation))
    }

    pub fn attribute_count(&self) -> usize {
        self.classes.iter().map(|c| c.c_a.len()).sum()
    }
}
