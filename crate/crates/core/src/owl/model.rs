use std::collections::BTreeMap;
use std::fmt;

pub mod vocab {
    pub const RDF: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
    pub const RDFS: &str = "http://www.w3.org/2000/01/rdf-schema#";
    pub const OWL: &str = "http://www.w3.org/2002/07/owl#";
    pub const XSD: &str = "http://www.w3.org/2001/XMLSchema#";

    /// Namespaces whose terms count as built-ins for closure checks.
    pub const BUILTIN_NAMESPACES: [&str; 4] = [RDF, RDFS, OWL, XSD];
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Iri(String);

impl Iri {
    /// Wrap a string already known to be an absolute IRI.
    pub fn new_unchecked(s: impl Into<String>) -> Self {
        Iri(s.into())
    }

    /// Validate a namespace IRI: an absolute IRI ending in `#` or `/`.
    pub fn parse_base(s: &str) -> Result<Iri, String> {
        let scheme_end = s.find(':').ok_or_else(|| format!("`{s}` is not an absolute IRI (no scheme)"))?;
        let scheme = &s[..scheme_end];
        let scheme_ok = scheme.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
            && scheme.chars().all(|c| c.is_ascii_alphanumeric() || "+-.".contains(c));
        if !scheme_ok {
            return Err(format!("`{s}` is not an absolute IRI (bad scheme)"));
        }
        if let Some(c) = s.chars().find(|c| c.is_whitespace() || c.is_control() || "<>\"{}|\\^`".contains(*c)) {
            return Err(format!("`{s}` contains the character {c:?}, which is not allowed in an IRI"));
        }
        if s.matches('#').count() > 1 {
            return Err(format!("`{s}` contains more than one `#`"));
        }
        if !(s.ends_with('#') || s.ends_with('/')) {
            return Err(format!("base IRI `{s}` must end in `#` or `/`"));
        }
        Ok(Iri(s.to_string()))
    }

    pub fn xsd(local: &str) -> Iri {
        Iri(format!("{}{local}", vocab::XSD))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// `base + local`; `self` must be a namespace IRI.
    pub fn join(&self, local: &str) -> Iri {
        Iri(format!("{}{local}", self.0))
    }

    pub fn local_name<'a>(&'a self, base: &Iri) -> Option<&'a str> {
        self.0.strip_prefix(base.as_str())
    }

    pub fn is_builtin(&self) -> bool {
        vocab::BUILTIN_NAMESPACES.iter().any(|ns| self.0.starts_with(ns))
    }
}

impl fmt::Display for Iri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub lexical: String,
    /// `None` is a plain literal (an `xsd:string` in RDF 1.1).
    pub datatype: Option<Iri>,
}

impl Literal {
    pub fn plain(s: impl Into<String>) -> Self {
        Literal {
            lexical: s.into(),
            datatype: None,
        }
    }

    pub fn typed(s: impl Into<String>, datatype: Iri) -> Self {
        Literal {
            lexical: s.into(),
            datatype: Some(datatype),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RestrictionKind {
    Exact,
    Min,
    Max,
}

impl RestrictionKind {
    pub fn owl_term(self) -> &'static str {
        match self {
            RestrictionKind::Exact => "cardinality",
            RestrictionKind::Min => "minCardinality",
            RestrictionKind::Max => "maxCardinality",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OwlAxiom {
    ClassDecl {
        iri: Iri,
    },
    DatatypeProperty {
        iri: Iri,
        domain: Iri,
        range: Iri,
        functional: bool,
    },
    ObjectProperty {
        iri: Iri,
        domain: Iri,
        range: Iri,
        inverse_of: Option<Iri>,
    },
    /// Encoded as `class rdfs:subClassOf [a owl:Restriction; ...]`.
    CardinalityRestriction {
        class: Iri,
        property: Iri,
        kind: RestrictionKind,
        value: u32,
    },
    HasKey {
        class: Iri,
        properties: Vec<Iri>,
    },
    AnnotationPropertyDecl {
        iri: Iri,
    },
    Annotation {
        subject: Iri,
        property: Iri,
        value: Literal,
    },
}

impl OwlAxiom {
    /// The entity this axiom declares, if it is a declaration.
    pub fn declared(&self) -> Option<&Iri> {
        match self {
            OwlAxiom::ClassDecl { iri }
            | OwlAxiom::DatatypeProperty { iri, .. }
            | OwlAxiom::ObjectProperty { iri, .. }
            | OwlAxiom::AnnotationPropertyDecl { iri } => Some(iri),
            _ => None,
        }
    }
}

/// One row as an OWL individual.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Individual {
    pub iri: Iri,
    pub class_iri: Iri,
    pub literal_assertions: Vec<(Iri, Literal)>,
    pub object_assertions: Vec<(Iri, Iri)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OwlDocument {
    pub base_iri: Iri,
    /// Prefix → namespace. The empty prefix maps to `base_iri`.
    pub prefixes: BTreeMap<String, String>,
    pub axioms: Vec<OwlAxiom>,
    pub individuals: Vec<Individual>,
}

impl OwlDocument {
    pub fn new(base_iri: Iri) -> Self {
        let mut prefixes = BTreeMap::new();
        prefixes.insert(String::new(), base_iri.as_str().to_string());
        prefixes.insert("owl".into(), vocab::OWL.into());
        prefixes.insert("rdf".into(), vocab::RDF.into());
        prefixes.insert("rdfs".into(), vocab::RDFS.into());
        prefixes.insert("xsd".into(), vocab::XSD.into());
        OwlDocument {
            base_iri,
            prefixes,
            axioms: Vec::new(),
            individuals: Vec::new(),
        }
    }

    pub fn is_declared(&self, iri: &Iri) -> bool {
        self.axioms.iter().any(|a| a.declared() == Some(iri))
    }

    pub fn class_decls(&self) -> impl Iterator<Item = &Iri> {
        self.axioms.iter().filter_map(|a| match a {
            OwlAxiom::ClassDecl { iri } => Some(iri),
            _ => None,
        })
    }

    /// Copy with the same prefixes and no axioms or individuals.
    pub fn empty_like(&self) -> Self {
        OwlDocument {
            base_iri: self.base_iri.clone(),
            prefixes: self.prefixes.clone(),
            axioms: Vec::new(),
            individuals: Vec::new(),
        }
    }

    /// Split into a schema document (axioms) and a data document
    /// (individuals).
    pub fn split(self) -> (OwlDocument, OwlDocument) {
        let mut data = self.empty_like();
        data.individuals = self.individuals;
        let schema = OwlDocument {
            individuals: Vec::new(),
            ..self
        };
        (schema, data)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_iri_validation() {
        assert!(Iri::parse_base("http://example.org/db#").is_ok());
        assert!(Iri::parse_base("urn:x:/").is_ok());
        assert!(Iri::parse_base("http://example.org/db").is_err());
        assert!(Iri::parse_base("example.org/db#").is_err());
        assert!(Iri::parse_base("http://ex.org/a b#").is_err());
        assert!(Iri::parse_base("http://ex.org/a#b#").is_err());
    }

    #[test]
    fn builtins() {
        assert!(Iri::xsd("string").is_builtin());
        assert!(!Iri::new_unchecked("http://ex.org/#A").is_builtin());
    }
}
