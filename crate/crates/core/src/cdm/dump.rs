//! Text rendering of a [`CdmModel`], one construct per line:
//!
//! ```text
//! class <name>
//!   attribute <name> <TYPE[(len[,scale])]> <NULL|NOT NULL>[ DEFAULT <literal>]
//!   key (<cols>)
//!   unique (<cols>)
//!   relationship <rel_n> -> <cd> <forward> inverse <inverse> via <fk|junction> <relation> (<cols>)
//! junction <relation>
//! ```

use std::fmt::Write;

use crate::ingest::SqlType;

use super::{CdmModel, Origin};

pub fn dump_cdm(model: &CdmModel) -> String {
    let mut s = String::new();
    for c in &model.classes {
        writeln!(s, "class {}", c.c_n).unwrap();
        for a in &c.c_a {
            let ty = SqlType {
                keyword: a.a_t,
                length: a.a_l,
                scale: a.scale,
            };
            write!(s, "  attribute {} {} {}", a.a_n, ty, if a.nullable { "NULL" } else { "NOT NULL" }).unwrap();
            if let Some(d) = &a.a_d {
                write!(s, " DEFAULT {d}").unwrap();
            }
            s.push('\n');
        }
        writeln!(s, "  key ({})", c.primary_key.join(", ")).unwrap();
        for u in &c.unique_keys {
            writeln!(s, "  unique ({})", u.join(", ")).unwrap();
        }
        for rel in model.relationships.iter().filter(|r| r.cs == c.c_n) {
            let via = match &rel.origin {
                Origin::Fk { holder, fk } => format!("fk {} ({})", holder, fk.columns.join(", ")),
                Origin::Junction { relation, .. } => format!("junction {relation}"),
            };
            writeln!(
                s,
                "  relationship {} -> {} {} inverse {} via {}",
                rel.rel_n, rel.cd, rel.rel_c.forward, rel.rel_c.inverse, via
            )
            .unwrap();
        }
    }
    for j in &model.junction_relations {
        writeln!(s, "junction {j}").unwrap();
    }
    s
}
