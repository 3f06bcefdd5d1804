//! Relational database to OWL translation.
//!
//! The pipeline runs in fixed stages, each a pure function of the previous
//! stage's output:
//!
//! 1. [`ingest`] parses SQL DDL into a [`ingest::SchemaAst`] and loads table
//!    data into [`ingest::Recordset`]s.
//! 2. [`mtrdb`] extracts relational metadata: relations, fields, primary,
//!    foreign and unique keys, and the relationship set derived from the
//!    foreign keys.
//! 3. [`cdm`] classifies relations (base or junction) and builds the
//!    canonical data model of classes, attributes and binary relationships
//!    with min..max cardinalities.
//! 4. [`owl`] turns the model into an ontology document and serializes it as
//!    RDF/XML or Turtle.
//! 5. [`convert`] turns table rows into OWL individuals.

pub mod cdm;
pub mod convert;
pub mod diag;
pub mod ingest;
pub mod mtrdb;
pub mod owl;

pub use diag::{Code, Diagnostic, Diagnostics, Location, Pos, Severity, StageFailed};
