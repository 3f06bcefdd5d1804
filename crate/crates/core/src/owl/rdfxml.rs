use std::fmt::Write;

use crate::diag::{Code, Diagnostic, Location};

use super::layout::Layout;
use super::model::{vocab, Iri, Literal, OwlDocument};
use super::names::is_ncname;

fn escape(s: &str, attr: bool) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' if attr => out.push_str("&quot;"),
            '\r' => out.push_str("&#13;"),
            '\n' if attr => out.push_str("&#10;"),
            '\t' if attr => out.push_str("&#9;"),
            c => out.push(c),
        }
    }
    out
}

struct Writer<'a> {
    base: &'a Iri,
    hash_base: bool,
    out: String,
}

impl Writer<'_> {
    fn local<'i>(&self, iri: &'i Iri) -> Option<&'i str> {
        iri.local_name(self.base).filter(|l| !l.is_empty())
    }

    /// Attribute that names the subject of a declaration.
    fn subject_attr(&self, iri: &Iri) -> Result<String, Diagnostic> {
        match self.local(iri) {
            Some(l) if self.hash_base => {
                if !is_ncname(l) {
                    return Err(bad_name(l));
                }
                Ok(format!("rdf:ID=\"{}\"", escape(l, true)))
            }
            _ => Ok(format!("rdf:about=\"{}\"", escape(iri.as_str(), true))),
        }
    }

    fn about_attr(&self, iri: &Iri) -> String {
        format!("rdf:about=\"{}\"", escape(&self.reference(iri), true))
    }

    fn reference(&self, iri: &Iri) -> String {
        match self.local(iri) {
            Some(l) if self.hash_base => format!("#{l}"),
            _ => iri.as_str().to_string(),
        }
    }

    fn resource(&mut self, indent: usize, element: &str, iri: &Iri) {
        let r = escape(&self.reference(iri), true);
        writeln!(self.out, "{:indent$}<{element} rdf:resource=\"{r}\"/>", "").unwrap();
    }

    /// Element name for a term in the base namespace (default namespace).
    fn element_name<'i>(&self, iri: &'i Iri) -> Result<&'i str, Diagnostic> {
        match self.local(iri) {
            Some(l) if is_ncname(l) => Ok(l),
            Some(l) => Err(bad_name(l)),
            None => Err(Diagnostic::error(
                Code::InvalidNcName,
                Location::None,
                format!("<{iri}> is outside the base namespace and cannot be written as an element name"),
            )),
        }
    }

    fn literal(&mut self, indent: usize, element: &str, lit: &Literal) {
        let dt = match &lit.datatype {
            Some(d) => format!(" rdf:datatype=\"{}\"", escape(d.as_str(), true)),
            None => String::new(),
        };
        writeln!(
            self.out,
            "{:indent$}<{element}{dt}>{}</{element}>",
            "",
            escape(&lit.lexical, false)
        )
        .unwrap();
    }
}

fn bad_name(local: &str) -> Diagnostic {
    Diagnostic::error(
        Code::InvalidNcName,
        Location::None,
        format!("`{local}` is not a valid NCName"),
    )
}

/// Serialize as RDF/XML. Entities under a `#` base are declared with
/// `rdf:ID` and referenced as `#local`; under a `/` base full IRIs are used.
pub fn serialize_rdfxml(doc: &OwlDocument) -> Result<String, Diagnostic> {
    let base = &doc.base_iri;
    let mut w = Writer {
        base,
        hash_base: base.as_str().ends_with('#'),
        out: String::new(),
    };
    let l = Layout::of(doc);
    let nni = Iri::xsd("nonNegativeInteger");

    w.out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    w.out.push_str("<rdf:RDF");
    for (prefix, ns) in &doc.prefixes {
        let attr = if prefix.is_empty() { "xmlns".to_string() } else { format!("xmlns:{prefix}") };
        write!(w.out, "\n    {attr}=\"{}\"", escape(ns, true)).unwrap();
    }
    writeln!(w.out, "\n    xml:base=\"{}\">", escape(base.as_str(), true)).unwrap();

    for c in &l.classes {
        let s = w.subject_attr(c)?;
        writeln!(w.out, "  <owl:Class {s}/>").unwrap();
    }
    for p in &l.datatype_props {
        let s = w.subject_attr(p.iri)?;
        writeln!(w.out, "  <owl:DatatypeProperty {s}>").unwrap();
        if p.functional {
            w.resource(4, "rdf:type", &Iri::new_unchecked(format!("{}FunctionalProperty", vocab::OWL)));
        }
        w.resource(4, "rdfs:domain", p.domain);
        w.resource(4, "rdfs:range", p.range);
        w.out.push_str("  </owl:DatatypeProperty>\n");
    }
    for p in &l.object_props {
        let s = w.subject_attr(p.iri)?;
        writeln!(w.out, "  <owl:ObjectProperty {s}>").unwrap();
        w.resource(4, "rdfs:domain", p.domain);
        w.resource(4, "rdfs:range", p.range);
        if let Some(inv) = p.inverse_of {
            w.resource(4, "owl:inverseOf", inv);
        }
        w.out.push_str("  </owl:ObjectProperty>\n");
    }
    for (class, rs) in &l.restrictions {
        let a = w.about_attr(class);
        writeln!(w.out, "  <rdf:Description {a}>").unwrap();
        for (prop, kind, value) in rs {
            w.out.push_str("    <rdfs:subClassOf>\n      <owl:Restriction>\n");
            w.resource(8, "owl:onProperty", prop);
            w.literal(8, &format!("owl:{}", kind.owl_term()), &Literal::typed(value.to_string(), nni.clone()));
            w.out.push_str("      </owl:Restriction>\n    </rdfs:subClassOf>\n");
        }
        w.out.push_str("  </rdf:Description>\n");
    }
    for (class, keys) in &l.keys {
        let a = w.about_attr(class);
        writeln!(w.out, "  <rdf:Description {a}>").unwrap();
        for key in keys {
            w.out.push_str("    <owl:hasKey rdf:parseType=\"Collection\">\n");
            for p in key.iter() {
                let a = w.about_attr(p);
                writeln!(w.out, "      <rdf:Description {a}/>").unwrap();
            }
            w.out.push_str("    </owl:hasKey>\n");
        }
        w.out.push_str("  </rdf:Description>\n");
    }
    for p in &l.annotation_props {
        let s = w.subject_attr(p)?;
        writeln!(w.out, "  <owl:AnnotationProperty {s}/>").unwrap();
    }
    for (subject, anns) in &l.annotations {
        let a = w.about_attr(subject);
        writeln!(w.out, "  <rdf:Description {a}>").unwrap();
        for (prop, value) in anns {
            let name = w.element_name(prop)?;
            w.literal(4, name, value);
        }
        w.out.push_str("  </rdf:Description>\n");
    }
    for ind in &l.individuals {
        let s = w.subject_attr(&ind.iri)?;
        let typed = w.element_name(&ind.class_iri).ok();
        let open = typed.unwrap_or("rdf:Description");
        writeln!(w.out, "  <{open} {s}>").unwrap();
        if typed.is_none() {
            w.resource(4, "rdf:type", &ind.class_iri);
        }
        for (prop, lit) in &ind.literal_assertions {
            let name = w.element_name(prop)?;
            w.literal(4, name, lit);
        }
        for (prop, target) in &ind.object_assertions {
            let name = w.element_name(prop)?;
            w.resource(4, name, target);
        }
        writeln!(w.out, "  </{open}>").unwrap();
    }
    w.out.push_str("</rdf:RDF>\n");
    Ok(w.out)
}
