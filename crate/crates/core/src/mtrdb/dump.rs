//! Line-oriented text rendering of an [`Mtrdb`].
//!
//! ```text
//! relation <name>[ (surrogate key)]
//!   field <name> <TYPE[(len[,scale])]> <NULL|NOT NULL>[ DEFAULT <literal>]
//!   pk (<cols>)
//!   uk (<cols>)
//!   fk (<cols>) -> <relation> (<cols>)
//! relationship <source> (<pk cols>) <- <target> (<fk cols>) ca <h2r> / <r2h>[ self]
//! ```
//!
//! Relations come first in source order, then relationships in foreign-key
//! declaration order. `ca` shows holder-to-referenced then
//! referenced-to-holder cardinality.

use std::fmt::Write;

use crate::ingest::SqlType;

use super::Mtrdb;

pub fn dump_mtrdb(m: &Mtrdb) -> String {
    let mut s = String::new();
    for r in &m.relations {
        write!(s, "relation {}", r.r_n).unwrap();
        if r.surrogate_pk {
            s.push_str(" (surrogate key)");
        }
        s.push('\n');
        for f in &r.r_f {
            let ty = SqlType {
                keyword: f.f_t,
                length: f.f_l,
                scale: f.scale,
            };
            write!(s, "  field {} {} {}", f.f_n, ty, if f.f_nl { "NULL" } else { "NOT NULL" }).unwrap();
            if let Some(d) = &f.f_d {
                write!(s, " DEFAULT {d}").unwrap();
            }
            s.push('\n');
        }
        writeln!(s, "  pk ({})", r.r_pk.join(", ")).unwrap();
        for u in &r.r_uk {
            writeln!(s, "  uk ({})", u.join(", ")).unwrap();
        }
        for fk in &r.r_fk {
            writeln!(
                s,
                "  fk ({}) -> {} ({})",
                fk.fk_columns.join(", "),
                fk.referenced_relation,
                fk.referenced_pk.join(", ")
            )
            .unwrap();
        }
    }
    for rel in &m.relationships {
        write!(
            s,
            "relationship {} ({}) <- {} ({}) ca {} / {}",
            rel.source,
            rel.r_pk_source.join(", "),
            rel.target,
            rel.r_fk_target.join(", "),
            rel.ca.holder_to_referenced,
            rel.ca.referenced_to_holder
        )
        .unwrap();
        if rel.self_referential {
            s.push_str(" self");
        }
        s.push('\n');
    }
    s
}
