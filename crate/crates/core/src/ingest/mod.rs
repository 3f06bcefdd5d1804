//! Front-end: SQL DDL into a [`SchemaAst`], and table data from CSV files or
//! INSERT statements into [`Recordset`]s.

mod csv;
mod ddl;
mod insert;
pub mod lexer;
mod types;

use std::path::Path;

use crate::diag::{Code, Diagnostic, Diagnostics, Location, StageFailed};

pub use self::csv::{load_csv, load_csv_str, read_records, CsvRecord};
pub use ddl::parse_ddl;
pub use insert::parse_inserts;
pub use types::{
    ident_eq, quote_ident, quote_str, ColumnDef, ForeignKeyDef, Recordset, SchemaAst, SqlType, TableDef,
    TypeKeyword,
};

/// Load every `<Table>.csv` in `dir` (file names matched case-insensitively).
/// Tables without a file get no recordset; files naming no table are errors.
pub fn load_csv_dir(dir: &Path, schema: &SchemaAst, diags: &mut Diagnostics) -> Result<Vec<Recordset>, StageFailed> {
    let mark = diags.len();
    let label = dir.display().to_string();
    let entries = match std::fs::read_dir(dir) {
        Ok(e) => e,
        Err(e) => {
            diags.push(Diagnostic::error(
                Code::Io,
                Location::file(&label),
                format!("cannot read directory `{label}`: {e}"),
            ));
            return Err(StageFailed { stage: "load", errors: 1 });
        }
    };
    let mut files: Vec<(String, std::path::PathBuf)> = Vec::new();
    for entry in entries.flatten() {
        let path = entry.path();
        let is_csv = path
            .extension()
            .and_then(|e| e.to_str())
            .is_some_and(|e| e.eq_ignore_ascii_case("csv"));
        if !is_csv || !path.is_file() {
            continue;
        }
        if let Some(stem) = path.file_stem().and_then(|s| s.to_str()) {
            files.push((stem.to_string(), path));
        }
    }
    files.sort();

    for (stem, path) in &files {
        if schema.table(stem).is_none() {
            diags.push(Diagnostic::error(
                Code::UnknownTable,
                Location::file(path.display().to_string()),
                format!("data file `{}` names no table in the schema", path.display()),
            ));
        }
    }
    let mut out = Vec::new();
    for table in &schema.tables {
        if let Some((_, path)) = files.iter().find(|(s, _)| ident_eq(s, &table.name)) {
            match load_csv(path, table) {
                Ok(rs) => out.push(rs),
                Err(d) => diags.push(d),
            }
        }
    }
    diags.check_since(mark, "load")?;
    Ok(out)
}
