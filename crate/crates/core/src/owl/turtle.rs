use std::fmt::Write;

use super::layout::Layout;
use super::model::{vocab, Iri, Literal, OwlDocument};

struct Terms<'a> {
    doc: &'a OwlDocument,
}

impl Terms<'_> {
    /// Prefixed name when the local part is a safe `PN_LOCAL`, else `<iri>`.
    fn term(&self, iri: &Iri) -> String {
        // Longest namespace wins so the base never shadows a vocabulary.
        let best = self
            .doc
            .prefixes
            .iter()
            .filter(|(_, ns)| iri.as_str().starts_with(ns.as_str()))
            .max_by_key(|(_, ns)| ns.len());
        if let Some((prefix, ns)) = best {
            let local = &iri.as_str()[ns.len()..];
            if is_simple_local(local) {
                return format!("{prefix}:{local}");
            }
        }
        format!("<{}>", escape_iri(iri.as_str()))
    }

    fn literal(&self, lit: &Literal) -> String {
        let mut s = String::with_capacity(lit.lexical.len() + 2);
        s.push('"');
        for c in lit.lexical.chars() {
            match c {
                '"' => s.push_str("\\\""),
                '\\' => s.push_str("\\\\"),
                '\n' => s.push_str("\\n"),
                '\r' => s.push_str("\\r"),
                '\t' => s.push_str("\\t"),
                c if c.is_control() => write!(s, "\\u{:04X}", c as u32).unwrap(),
                c => s.push(c),
            }
        }
        s.push('"');
        if let Some(dt) = &lit.datatype {
            s.push_str("^^");
            s.push_str(&self.term(dt));
        }
        s
    }
}

fn is_simple_local(local: &str) -> bool {
    let mut cs = local.chars();
    match cs.next() {
        Some(c) if c.is_ascii_alphanumeric() || c == '_' => {}
        _ => return false,
    }
    local.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
}

fn escape_iri(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        if c <= ' ' || "<>\"{}|^`\\".contains(c) {
            write!(out, "\\u{:04X}", c as u32).unwrap();
        } else {
            out.push(c);
        }
    }
    out
}

/// Write one subject with its predicate/object list.
fn block(out: &mut String, subject: &str, pairs: &[(String, String)]) {
    out.push_str(subject);
    for (i, (p, o)) in pairs.iter().enumerate() {
        let sep = if i == 0 { " " } else { " ;\n    " };
        write!(out, "{sep}{p} {o}").unwrap();
    }
    out.push_str(" .\n");
}

/// Serialize as Turtle. The triple set equals that of [`serialize_rdfxml`]
/// for the same document, in the same section order.
///
/// [`serialize_rdfxml`]: super::serialize_rdfxml
pub fn serialize_turtle(doc: &OwlDocument) -> String {
    let t = Terms { doc };
    let l = Layout::of(doc);
    let mut out = String::new();
    for (prefix, ns) in &doc.prefixes {
        writeln!(out, "@prefix {prefix}: <{}> .", escape_iri(ns)).unwrap();
    }
    let nni = Iri::xsd("nonNegativeInteger");
    let owl = |local: &str| t.term(&Iri::new_unchecked(format!("{}{local}", vocab::OWL)));

    let mut sections: Vec<String> = Vec::new();
    let mut section = |f: &mut dyn FnMut(&mut String)| {
        let mut s = String::new();
        f(&mut s);
        if !s.is_empty() {
            sections.push(s);
        }
    };

    section(&mut |s| {
        for c in &l.classes {
            block(s, &t.term(c), &[("a".into(), owl("Class"))]);
        }
    });
    section(&mut |s| {
        for p in &l.datatype_props {
            let mut ty = owl("DatatypeProperty");
            if p.functional {
                ty = format!("{ty} , {}", owl("FunctionalProperty"));
            }
            block(
                s,
                &t.term(p.iri),
                &[
                    ("a".into(), ty),
                    ("rdfs:domain".into(), t.term(p.domain)),
                    ("rdfs:range".into(), t.term(p.range)),
                ],
            );
        }
    });
    section(&mut |s| {
        for p in &l.object_props {
            let mut pairs = vec![
                ("a".to_string(), owl("ObjectProperty")),
                ("rdfs:domain".into(), t.term(p.domain)),
                ("rdfs:range".into(), t.term(p.range)),
            ];
            if let Some(inv) = p.inverse_of {
                pairs.push((owl("inverseOf"), t.term(inv)));
            }
            block(s, &t.term(p.iri), &pairs);
        }
    });
    section(&mut |s| {
        for (class, rs) in &l.restrictions {
            let pairs: Vec<_> = rs
                .iter()
                .map(|(prop, kind, value)| {
                    let node = format!(
                        "[\n        a {} ;\n        {} {} ;\n        {} {}\n    ]",
                        owl("Restriction"),
                        owl("onProperty"),
                        t.term(prop),
                        owl(kind.owl_term()),
                        t.literal(&Literal::typed(value.to_string(), nni.clone()))
                    );
                    ("rdfs:subClassOf".to_string(), node)
                })
                .collect();
            block(s, &t.term(class), &pairs);
        }
    });
    section(&mut |s| {
        for (class, keys) in &l.keys {
            let pairs: Vec<_> = keys
                .iter()
                .map(|key| {
                    let items: Vec<_> = key.iter().map(|p| t.term(p)).collect();
                    (owl("hasKey"), format!("( {} )", items.join(" ")))
                })
                .collect();
            block(s, &t.term(class), &pairs);
        }
    });
    section(&mut |s| {
        for p in &l.annotation_props {
            block(s, &t.term(p), &[("a".into(), owl("AnnotationProperty"))]);
        }
        for (subject, anns) in &l.annotations {
            let pairs: Vec<_> = anns.iter().map(|(p, v)| (t.term(p), t.literal(v))).collect();
            block(s, &t.term(subject), &pairs);
        }
    });
    section(&mut |s| {
        for ind in &l.individuals {
            let mut pairs = vec![("a".to_string(), t.term(&ind.class_iri))];
            pairs.extend(ind.literal_assertions.iter().map(|(p, v)| (t.term(p), t.literal(v))));
            pairs.extend(ind.object_assertions.iter().map(|(p, o)| (t.term(p), t.term(o))));
            block(s, &t.term(&ind.iri), &pairs);
        }
    });

    for s in sections {
        out.push('\n');
        out.push_str(&s);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::owl::model::{Individual, OwlAxiom};

    fn base() -> Iri {
        Iri::parse_base("http://example.org/db#").unwrap()
    }

    #[test]
    fn class_decl() {
        let mut doc = OwlDocument::new(base());
        doc.axioms.push(OwlAxiom::ClassDecl {
            iri: base().join("Product"),
        });
        assert!(serialize_turtle(&doc).contains("\n:Product a owl:Class .\n"));
    }

    #[test]
    fn prefixes_only_when_empty() {
        assert_eq!(
            serialize_turtle(&OwlDocument::new(base())),
            "@prefix : <http://example.org/db#> .\n\
             @prefix owl: <http://www.w3.org/2002/07/owl#> .\n\
             @prefix rdf: <http://www.w3.org/1999/02/22-rdf-syntax-ns#> .\n\
             @prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .\n\
             @prefix xsd: <http://www.w3.org/2001/XMLSchema#> .\n"
        );
    }

    #[test]
    fn literals_and_individuals() {
        let b = base();
        let mut doc = OwlDocument::new(b.clone());
        doc.individuals.push(Individual {
            iri: b.join("P_1"),
            class_iri: b.join("P"),
            literal_assertions: vec![(b.join("n"), Literal::typed("say \"hi\"\n", Iri::xsd("string")))],
            object_assertions: vec![(b.join("hasQ"), b.join("Q_1"))],
        });
        let t = serialize_turtle(&doc);
        assert!(t.contains(":P_1 a :P ;\n    :n \"say \\\"hi\\\"\\n\"^^xsd:string ;\n    :hasQ :Q_1 .\n"), "{t}");
    }

    #[test]
    fn unsafe_local_falls_back_to_full_iri() {
        let b = base();
        let t = Terms {
            doc: &OwlDocument::new(b.clone()),
        };
        assert_eq!(t.term(&b.join("a.b")), "<http://example.org/db#a.b>");
    }
}
