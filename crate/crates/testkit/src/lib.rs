//! Test oracles that do not share code with the translator: RDF documents
//! are read back with third-party parsers and checked at the triple level.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::path::PathBuf;

pub mod schemagen;

use oxrdfxml::RdfXmlParser;
use oxttl::TurtleParser;

pub const RDF: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
pub const RDFS: &str = "http://www.w3.org/2000/01/rdf-schema#";
pub const OWL: &str = "http://www.w3.org/2002/07/owl#";
pub const XSD: &str = "http://www.w3.org/2001/XMLSchema#";

/// Root of the shared fixture corpus.
pub fn fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Iri(String),
    Blank(String),
    Literal { lexical: String, datatype: String },
}

impl Term {
    pub fn iri(&self) -> Option<&str> {
        match self {
            Term::Iri(s) => Some(s),
            _ => None,
        }
    }

    pub fn is_blank(&self) -> bool {
        matches!(self, Term::Blank(_))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Iri(s) => write!(f, "<{s}>"),
            Term::Blank(s) => write!(f, "_:{s}"),
            Term::Literal { lexical, datatype } => write!(f, "{lexical:?}^^<{datatype}>"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triple {
    pub s: Term,
    pub p: String,
    pub o: Term,
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} <{}> {} .", self.s, self.p, self.o)
    }
}

fn convert(t: oxrdf::Triple) -> Triple {
    let s = match t.subject {
        oxrdf::NamedOrBlankNode::NamedNode(n) => Term::Iri(n.as_str().to_string()),
        oxrdf::NamedOrBlankNode::BlankNode(b) => Term::Blank(b.as_str().to_string()),
    };
    #[allow(unreachable_patterns)]
    let o = match t.object {
        oxrdf::Term::NamedNode(n) => Term::Iri(n.as_str().to_string()),
        oxrdf::Term::BlankNode(b) => Term::Blank(b.as_str().to_string()),
        oxrdf::Term::Literal(l) => Term::Literal {
            lexical: l.value().to_string(),
            datatype: l.datatype().as_str().to_string(),
        },
        other => panic!("unexpected term {other}"),
    };
    Triple {
        s,
        p: t.predicate.as_str().to_string(),
        o,
    }
}

pub fn parse_rdfxml(text: &str) -> Result<Vec<Triple>, String> {
    RdfXmlParser::new()
        .for_slice(text.as_bytes())
        .map(|t| t.map(convert).map_err(|e| e.to_string()))
        .collect()
}

pub fn parse_turtle(text: &str) -> Result<Vec<Triple>, String> {
    TurtleParser::new()
        .for_slice(text.as_bytes())
        .map(|t| t.map(convert).map_err(|e| e.to_string()))
        .collect()
}

pub fn xml_well_formed(text: &str) -> Result<(), String> {
    roxmltree::Document::parse(text).map(|_| ()).map_err(|e| e.to_string())
}

/// Sorted triple multiset with blank nodes replaced by a structural label
/// (the sorted description of everything reachable from them). Exact for
/// tree-shaped blank node structures, which is all the translator emits.
pub fn canonical(triples: &[Triple]) -> Vec<String> {
    let mut out_edges: HashMap<&str, Vec<(&str, &Term)>> = HashMap::new();
    for t in triples {
        if let Term::Blank(b) = &t.s {
            out_edges.entry(b).or_default().push((&t.p, &t.o));
        }
    }
    fn label(b: &str, edges: &HashMap<&str, Vec<(&str, &Term)>>, depth: usize) -> String {
        assert!(depth < 64, "blank node structure is not a tree");
        let mut parts: Vec<String> = edges
            .get(b)
            .map(|v| v.iter().map(|(p, o)| format!("<{p}> {}", render(o, edges, depth + 1))).collect())
            .unwrap_or_default();
        parts.sort();
        format!("[{}]", parts.join("; "))
    }
    fn render(t: &Term, edges: &HashMap<&str, Vec<(&str, &Term)>>, depth: usize) -> String {
        match t {
            Term::Blank(b) => label(b, edges, depth),
            other => other.to_string(),
        }
    }
    let mut v: Vec<String> = triples
        .iter()
        .map(|t| format!("{} <{}> {}", render(&t.s, &out_edges, 0), t.p, render(&t.o, &out_edges, 0)))
        .collect();
    v.sort();
    v
}

pub fn rdf_type() -> String {
    format!("{RDF}type")
}

/// Subjects typed as `type_iri`.
pub fn instances_of<'a>(triples: &'a [Triple], type_iri: &str) -> BTreeSet<&'a Term> {
    let ty = rdf_type();
    triples
        .iter()
        .filter(|t| t.p == ty && t.o.iri() == Some(type_iri))
        .map(|t| &t.s)
        .collect()
}

pub fn owl(local: &str) -> String {
    format!("{OWL}{local}")
}

fn is_builtin(iri: &str) -> bool {
    [RDF, RDFS, OWL, XSD].iter().any(|ns| iri.starts_with(ns))
}

/// Domain, range, type, restriction and predicate targets that are neither
/// declared in `triples` nor built-in vocabulary.
pub fn closure_violations(triples: &[Triple]) -> Vec<String> {
    let ty = rdf_type();
    let declaring = ["Class", "DatatypeProperty", "ObjectProperty", "AnnotationProperty"].map(owl);
    let declared: BTreeSet<&str> = triples
        .iter()
        .filter(|t| t.p == ty && t.o.iri().is_some_and(|o| declaring.iter().any(|d| d == o)))
        .filter_map(|t| t.s.iri())
        .collect();
    let ok = |iri: &str| is_builtin(iri) || declared.contains(iri);
    let target_predicates = [
        format!("{RDFS}domain"),
        format!("{RDFS}range"),
        format!("{RDFS}subClassOf"),
        ty.clone(),
        owl("onProperty"),
        owl("inverseOf"),
    ];
    let mut out = Vec::new();
    for t in triples {
        if !ok(&t.p) {
            out.push(format!("undeclared predicate in {t}"));
        }
        if target_predicates.contains(&t.p) {
            if let Some(o) = t.o.iri() {
                if !ok(o) {
                    out.push(format!("undeclared target in {t}"));
                }
            }
        }
    }
    out
}

/// Cardinality objects that are not `xsd:nonNegativeInteger` literals with
/// a digits-only lexical form.
pub fn cardinality_violations(triples: &[Triple]) -> Vec<String> {
    let preds = ["cardinality", "minCardinality", "maxCardinality"].map(owl);
    let nni = format!("{XSD}nonNegativeInteger");
    triples
        .iter()
        .filter(|t| preds.contains(&t.p))
        .filter(|t| match &t.o {
            Term::Literal { lexical, datatype } => {
                *datatype != nni || lexical.is_empty() || !lexical.bytes().all(|b| b.is_ascii_digit())
            }
            _ => true,
        })
        .map(|t| t.to_string())
        .collect()
}

/// Restriction nodes grouped by (class, property) → kinds present.
pub fn restriction_kinds(triples: &[Triple]) -> BTreeMap<(String, String), Vec<String>> {
    let sub = format!("{RDFS}subClassOf");
    let on = owl("onProperty");
    let kinds = ["cardinality", "minCardinality", "maxCardinality"].map(owl);
    let mut out: BTreeMap<(String, String), Vec<String>> = BTreeMap::new();
    for t in triples.iter().filter(|t| t.p == sub && t.o.is_blank()) {
        let node = &t.o;
        let prop = triples.iter().find(|x| x.s == *node && x.p == on).and_then(|x| x.o.iri());
        let (Some(class), Some(prop)) = (t.s.iri(), prop) else { continue };
        for x in triples.iter().filter(|x| x.s == *node && kinds.contains(&x.p)) {
            out.entry((class.to_string(), prop.to_string()))
                .or_default()
                .push(x.p[OWL.len()..].to_string());
        }
    }
    out
}
