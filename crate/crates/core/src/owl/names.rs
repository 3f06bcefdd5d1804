//! Local names for ontology entities and individuals.
//!
//! Everything minted under the base IRI is an ASCII NCName built from
//! `[A-Za-z0-9_-]`; any other character is written as `_xHH` per UTF-8
//! byte (upper-case hex).

use std::collections::HashMap;
use std::fmt::Write;

use crate::cdm::CdmModel;
use crate::ingest::ident_eq;

use super::model::Iri;

fn push_escaped(out: &mut String, c: char) {
    let mut buf = [0u8; 4];
    for b in c.encode_utf8(&mut buf).bytes() {
        write!(out, "_x{b:02X}").unwrap();
    }
}

/// Sanitize a schema name into an NCName. A leading digit or `-` is
/// escaped as well, since NCNames cannot start with one.
pub fn sanitize_name(name: &str) -> String {
    let mut out = String::with_capacity(name.len());
    for (i, c) in name.chars().enumerate() {
        let keep = c.is_ascii_alphanumeric() || c == '_' || c == '-';
        let bad_start = i == 0 && (c.is_ascii_digit() || c == '-');
        if keep && !bad_start {
            out.push(c);
        } else {
            push_escaped(&mut out, c);
        }
    }
    if out.is_empty() {
        out.push('_');
    }
    out
}

/// Sanitize one key value for use inside an individual's name.
///
/// `_` is always escaped, so in the joined name every `_` either starts an
/// `_xHH` escape or is a separator; a value that would begin with a literal
/// `x` has that `x` escaped so a separator is never followed by `xHH`. This
/// keeps distinct key tuples on distinct names.
pub fn sanitize_value(value: &str) -> String {
    let mut out = String::with_capacity(value.len());
    for (i, c) in value.chars().enumerate() {
        let keep = (c.is_ascii_alphanumeric() || c == '-') && !(i == 0 && c == 'x');
        if keep {
            out.push(c);
        } else {
            push_escaped(&mut out, c);
        }
    }
    out
}

/// XML NCName check restricted to what this crate emits plus Unicode
/// letters.
pub fn is_ncname(s: &str) -> bool {
    let mut cs = s.chars();
    match cs.next() {
        Some(c) if c.is_alphabetic() || c == '_' => {}
        _ => return false,
    }
    cs.all(|c| c.is_alphanumeric() || matches!(c, '_' | '-' | '.'))
}

/// Resolved IRIs for every entity the ontology builder declares.
#[derive(Debug, Clone)]
pub struct EntityNames {
    pub classes: HashMap<String, Iri>,
    /// Keyed by (class name, attribute name).
    pub attributes: HashMap<(String, String), Iri>,
    pub relationships: HashMap<String, Iri>,
    pub inverses: HashMap<String, Iri>,
    pub default_value: Iri,
    pub max_length: Iri,
}

impl EntityNames {
    /// Attribute properties use the bare attribute name when no other
    /// attribute shares it (case-insensitively) and it does not coincide
    /// with a class or relationship name; otherwise `<Class>_<attr>`.
    pub fn for_model(cdm: &CdmModel, base: &Iri) -> Self {
        let classes: HashMap<String, Iri> = cdm
            .classes
            .iter()
            .map(|c| (c.c_n.clone(), base.join(&sanitize_name(&c.c_n))))
            .collect();
        let relationships: HashMap<String, Iri> = cdm
            .relationships
            .iter()
            .map(|r| (r.rel_n.clone(), base.join(&sanitize_name(&r.rel_n))))
            .collect();
        let inverses: HashMap<String, Iri> = cdm
            .relationships
            .iter()
            .map(|r| (r.rel_n.clone(), base.join(&sanitize_name(&format!("{}Inv", r.rel_n)))))
            .collect();

        let taken_elsewhere = |local: &str| {
            let iri = base.join(local);
            classes.values().any(|c| *c == iri)
                || relationships.values().any(|r| *r == iri)
                || inverses.values().any(|r| *r == iri)
        };
        let mut attributes = HashMap::new();
        for c in &cdm.classes {
            for a in &c.c_a {
                let shared = cdm
                    .classes
                    .iter()
                    .flat_map(|o| o.c_a.iter().map(move |oa| (o, oa)))
                    .filter(|(_, oa)| ident_eq(&oa.a_n, &a.a_n))
                    .count()
                    > 1;
                let bare = sanitize_name(&a.a_n);
                let local = if shared || taken_elsewhere(&bare) {
                    sanitize_name(&format!("{}_{}", c.c_n, a.a_n))
                } else {
                    bare
                };
                attributes.insert((c.c_n.clone(), a.a_n.clone()), base.join(&local));
            }
        }
        EntityNames {
            classes,
            attributes,
            relationships,
            inverses,
            default_value: base.join("defaultValue"),
            max_length: base.join("maxLength"),
        }
    }

    pub fn class(&self, name: &str) -> &Iri {
        &self.classes[name]
    }

    pub fn attribute(&self, class: &str, attr: &str) -> &Iri {
        &self.attributes[&(class.to_string(), attr.to_string())]
    }
}
