//! RFC-4180 reader that keeps track of quoting, so that an unquoted empty
//! field can be read as NULL while `""` stays an empty string.

use std::path::Path;

use crate::diag::{Code, Diagnostic, Location, Pos};

use super::types::{ident_eq, Recordset, TableDef};

/// One physical CSV record with the line it started on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CsvRecord {
    pub line: usize,
    pub fields: Vec<Option<String>>,
}

/// Split CSV text into records. Unquoted empty fields are `None`. Lines
/// that are completely empty are ignored.
pub fn read_records(text: &str) -> Result<Vec<CsvRecord>, Diagnostic> {
    let text = text.strip_prefix('\u{feff}').unwrap_or(text);
    let mut records = Vec::new();
    let mut chars = text.chars().peekable();
    let mut line = 1usize;
    let mut column = 1usize;

    let mut fields: Vec<Option<String>> = Vec::new();
    let mut field = String::new();
    let mut quoted = false;
    let mut record_line = 1usize;
    let mut any = false;

    fn finish_field(fields: &mut Vec<Option<String>>, field: &mut String, quoted: &mut bool) {
        let f = std::mem::take(field);
        fields.push(if f.is_empty() && !*quoted { None } else { Some(f) });
        *quoted = false;
    }

    while let Some(c) = chars.next() {
        match c {
            '"' if field.is_empty() && !quoted => {
                let start = Pos::new(line, column);
                quoted = true;
                any = true;
                column += 1;
                loop {
                    match chars.next() {
                        None => {
                            return Err(Diagnostic::error(
                                Code::Syntax,
                                Location::source(start),
                                "unterminated quoted field",
                            ))
                        }
                        Some('"') if chars.peek() == Some(&'"') => {
                            chars.next();
                            column += 2;
                            field.push('"');
                        }
                        Some('"') => {
                            column += 1;
                            break;
                        }
                        Some('\n') => {
                            line += 1;
                            column = 1;
                            field.push('\n');
                        }
                        Some(c) => {
                            column += 1;
                            field.push(c);
                        }
                    }
                }
                match chars.peek() {
                    None | Some(',') | Some('\n') | Some('\r') => {}
                    Some(_) => {
                        return Err(Diagnostic::error(
                            Code::Syntax,
                            Location::source(Pos::new(line, column)),
                            "unexpected text after closing quote",
                        ))
                    }
                }
            }
            ',' => {
                any = true;
                column += 1;
                finish_field(&mut fields, &mut field, &mut quoted);
            }
            '\r' if chars.peek() == Some(&'\n') => {}
            '\n' | '\r' => {
                if any || !field.is_empty() {
                    finish_field(&mut fields, &mut field, &mut quoted);
                    records.push(CsvRecord {
                        line: record_line,
                        fields: std::mem::take(&mut fields),
                    });
                }
                any = false;
                line += 1;
                column = 1;
                record_line = line;
            }
            c => {
                if quoted {
                    return Err(Diagnostic::error(
                        Code::Syntax,
                        Location::source(Pos::new(line, column)),
                        "unexpected text after closing quote",
                    ));
                }
                any = true;
                column += 1;
                field.push(c);
            }
        }
    }
    if any || !field.is_empty() {
        finish_field(&mut fields, &mut field, &mut quoted);
        records.push(CsvRecord {
            line: record_line,
            fields,
        });
    }
    Ok(records)
}

/// Load `<path>` as the data of `table`.
pub fn load_csv(path: &Path, table: &TableDef) -> Result<Recordset, Diagnostic> {
    let label = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|e| {
        Diagnostic::error(Code::Io, Location::file(&label), format!("cannot read `{label}`: {e}"))
    })?;
    load_csv_str(&text, table).map_err(|d| d.in_file(&label))
}

/// Same as [`load_csv`] over in-memory text.
pub fn load_csv_str(text: &str, table: &TableDef) -> Result<Recordset, Diagnostic> {
    let mut records = read_records(text)?.into_iter();
    let Some(head) = records.next() else {
        return Err(Diagnostic::error(
            Code::HeaderMismatch,
            Location::source(Pos::new(1, 1)),
            format!("missing header row for `{}`", table.name),
        ));
    };
    let header_pos = Location::source(Pos::new(head.line, 1));
    let names: Vec<String> = head.fields.into_iter().map(|f| f.unwrap_or_default()).collect();

    let mut header = Vec::with_capacity(names.len());
    let mut extra = Vec::new();
    for n in &names {
        match table.column(n.trim()) {
            Some(c) if !header.iter().any(|h: &String| ident_eq(h, &c.name)) => header.push(c.name.clone()),
            _ => extra.push(n.clone()),
        }
    }
    let missing: Vec<&str> = table
        .columns
        .iter()
        .filter(|c| !header.iter().any(|h| ident_eq(h, &c.name)))
        .map(|c| c.name.as_str())
        .collect();
    if !missing.is_empty() || !extra.is_empty() {
        let mut msg = format!("header of `{}` does not match its columns", table.name);
        if !missing.is_empty() {
            msg.push_str(&format!("; missing: {}", missing.join(", ")));
        }
        if !extra.is_empty() {
            msg.push_str(&format!("; unexpected: {}", extra.join(", ")));
        }
        return Err(Diagnostic::error(Code::HeaderMismatch, header_pos, msg));
    }

    let mut rs = Recordset::new(table.name.clone(), header);
    for rec in records {
        if rec.fields.len() != rs.header.len() {
            return Err(Diagnostic::error(
                Code::RowArity,
                Location::source(Pos::new(rec.line, 1)),
                format!(
                    "row has {} fields, header has {}",
                    rec.fields.len(),
                    rs.header.len()
                ),
            ));
        }
        rs.rows.push(rec.fields);
    }
    Ok(rs)
}
