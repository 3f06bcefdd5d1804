//! Relational metadata: relations with their fields and keys, plus the
//! relationship set derived from the foreign keys.

mod dump;
mod extract;
mod validate;

use std::fmt;

use crate::ingest::{ident_eq, ColumnDef, ForeignKeyDef, SchemaAst, TableDef, TypeKeyword};

pub use dump::dump_mtrdb;
pub use extract::{derive_cardinality, extract_mtrdb, ExtractOptions};
pub use validate::validate_mtrdb;

/// One column: name, type, length, nullability, default.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Field {
    pub f_n: String,
    pub f_t: TypeKeyword,
    pub f_l: Option<u32>,
    /// Fractional digits; only DECIMAL/NUMERIC carry one.
    pub scale: Option<u32>,
    pub f_nl: bool,
    pub f_d: Option<String>,
}

impl From<&ColumnDef> for Field {
    fn from(c: &ColumnDef) -> Self {
        Field {
            f_n: c.name.clone(),
            f_t: c.sql_type,
            f_l: c.length,
            scale: c.scale,
            f_nl: c.nullable,
            f_d: c.default_value.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForeignKey {
    /// Ordered to match `referenced_pk` position by position.
    pub fk_columns: Vec<String>,
    pub referenced_relation: String,
    pub referenced_pk: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub r_n: String,
    pub r_f: Vec<Field>,
    pub r_pk: Vec<String>,
    pub r_fk: Vec<ForeignKey>,
    pub r_uk: Vec<Vec<String>>,
    /// The table declared no primary key and all columns were promoted.
    pub surrogate_pk: bool,
}

impl Relation {
    pub fn field(&self, name: &str) -> Option<&Field> {
        self.r_f.iter().find(|f| ident_eq(&f.f_n, name))
    }

    pub fn is_pk_column(&self, name: &str) -> bool {
        self.r_pk.iter().any(|c| ident_eq(c, name))
    }

    pub fn is_fk_column(&self, name: &str) -> bool {
        self.r_fk.iter().any(|fk| fk.fk_columns.iter().any(|c| ident_eq(c, name)))
    }

    pub fn to_table_def(&self) -> TableDef {
        TableDef {
            name: self.r_n.clone(),
            columns: self
                .r_f
                .iter()
                .map(|f| ColumnDef {
                    name: f.f_n.clone(),
                    sql_type: f.f_t,
                    length: f.f_l,
                    scale: f.scale,
                    nullable: f.f_nl,
                    default_value: f.f_d.clone(),
                })
                .collect(),
            primary_key: self.r_pk.clone(),
            foreign_keys: self
                .r_fk
                .iter()
                .map(|fk| ForeignKeyDef {
                    columns: fk.fk_columns.clone(),
                    referenced_table: fk.referenced_relation.clone(),
                    referenced_columns: fk.referenced_pk.clone(),
                })
                .collect(),
            uniques: self.r_uk.clone(),
        }
    }
}

/// `max == None` means unbounded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Cardinality {
    pub min: u32,
    pub max: Option<u32>,
}

impl Cardinality {
    pub const ZERO_OR_ONE: Cardinality = Cardinality { min: 0, max: Some(1) };
    pub const EXACTLY_ONE: Cardinality = Cardinality { min: 1, max: Some(1) };
    pub const MANY: Cardinality = Cardinality { min: 0, max: None };

    pub fn new(min: u32, max: Option<u32>) -> Self {
        Cardinality { min, max }
    }

    /// `min <= max`, with an unbounded max treated as infinity.
    pub fn is_consistent(&self) -> bool {
        self.max.is_none_or(|m| self.min <= m)
    }
}

impl fmt::Display for Cardinality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.max {
            Some(m) => write!(f, "{}..{}", self.min, m),
            None => write!(f, "{}..*", self.min),
        }
    }
}

/// Both directions of a foreign-key link.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FkCardinality {
    /// How many referenced rows one holder row points to.
    pub holder_to_referenced: Cardinality,
    /// How many holder rows may point to one referenced row.
    pub referenced_to_holder: Cardinality,
}

/// A foreign-key link from the point of view of the referenced relation
/// (`source`) toward the holder of the key (`target`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relationship {
    pub r_pk_source: Vec<String>,
    pub source: String,
    pub r_fk_target: Vec<String>,
    pub target: String,
    pub ca: FkCardinality,
    pub self_referential: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Mtrdb {
    pub relations: Vec<Relation>,
    pub relationships: Vec<Relationship>,
}

impl Mtrdb {
    pub fn relation(&self, name: &str) -> Option<&Relation> {
        self.relations.iter().find(|r| ident_eq(&r.r_n, name))
    }

    pub fn field_count(&self) -> usize {
        self.relations.iter().map(|r| r.r_f.len()).sum()
    }

    pub fn foreign_key_count(&self) -> usize {
        self.relations.iter().map(|r| r.r_fk.len()).sum()
    }

    /// Canonical DDL for the whole schema; re-extracting it reproduces the
    /// relations (with surrogate keys made explicit).
    pub fn to_schema(&self) -> SchemaAst {
        SchemaAst {
            tables: self.relations.iter().map(Relation::to_table_def).collect(),
        }
    }

    pub fn to_ddl(&self) -> String {
        self.to_schema().to_ddl()
    }
}
