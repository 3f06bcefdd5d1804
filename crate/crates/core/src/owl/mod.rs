//! Ontology construction from a CDM and its RDF/XML and Turtle forms.

mod build;
mod layout;
mod model;
mod names;
mod rdfxml;
mod turtle;

pub use build::{build_ontology, map_type, restrictions_for, BuildOptions, Profile};
pub use model::{vocab, Individual, Iri, Literal, OwlAxiom, OwlDocument, RestrictionKind};
pub use names::{is_ncname, sanitize_name, sanitize_value, EntityNames};
pub use rdfxml::serialize_rdfxml;
pub use turtle::serialize_turtle;
