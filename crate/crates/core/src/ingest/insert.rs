//! `INSERT INTO ... VALUES ...` data source.

use crate::diag::{Code, Diagnostic, Diagnostics, Location, Pos, StageFailed};

use super::lexer::{tokenize, Parser, Tok};
use super::types::{ident_eq, Recordset, SchemaAst, TableDef};

/// Read INSERT statements into one [`Recordset`] per table, in order of
/// first appearance. Each recordset uses the table's declared column order;
/// columns omitted from a statement's column list are NULL.
pub fn parse_inserts(text: &str, schema: &SchemaAst, diags: &mut Diagnostics) -> Result<Vec<Recordset>, StageFailed> {
    let mark = diags.len();
    let toks = match tokenize(text) {
        Ok(t) => t,
        Err(e) => {
            diags.push(e);
            return Err(StageFailed { stage: "load", errors: 1 });
        }
    };
    let mut p = Parser::new(toks);
    let mut out: Vec<Recordset> = Vec::new();
    while !p.at_eof() {
        if p.eat_punct(';') {
            continue;
        }
        if p.peek().is_keyword("insert") {
            if let Err(e) = insert(&mut p, schema, &mut out) {
                diags.push(e);
                p.recover();
            }
        } else {
            let t = p.peek().clone();
            diags.push(Diagnostic::note(
                Code::SkippedStatement,
                Location::source(t.pos),
                format!("skipped statement starting with {}", t.describe()),
            ));
            p.recover();
        }
    }
    diags.check_since(mark, "load")?;
    Ok(out)
}

fn insert(p: &mut Parser, schema: &SchemaAst, out: &mut Vec<Recordset>) -> Result<(), Diagnostic> {
    p.expect_keyword("insert")?;
    p.expect_keyword("into")?;
    let (name, name_pos) = p.expect_ident("table name")?;
    let table = schema.table(&name).ok_or_else(|| {
        Diagnostic::error(
            Code::UnknownTable,
            Location::source(name_pos),
            format!("INSERT into unknown table `{name}`"),
        )
    })?;
    let targets = if p.peek().is_punct('(') {
        let cols = p.ident_list("column name")?;
        let mut idx = Vec::with_capacity(cols.len());
        for (c, pos) in cols {
            let i = table.column_index(&c).ok_or_else(|| {
                Diagnostic::error(
                    Code::UnknownColumn,
                    Location::source(pos),
                    format!("table `{}` has no column `{c}`", table.name),
                )
            })?;
            if idx.contains(&i) {
                return Err(Diagnostic::error(
                    Code::DuplicateColumn,
                    Location::source(pos),
                    format!("column `{c}` listed twice"),
                ));
            }
            idx.push(i);
        }
        idx
    } else {
        (0..table.columns.len()).collect()
    };
    p.expect_keyword("values")?;

    let slot = match out.iter().position(|r| ident_eq(&r.relation_name, &table.name)) {
        Some(i) => i,
        None => {
            out.push(empty_recordset(table));
            out.len() - 1
        }
    };
    let mut rows = Vec::new();
    loop {
        let open = p.expect_punct('(')?;
        let mut values = vec![value(p)?];
        while p.eat_punct(',') {
            values.push(value(p)?);
        }
        p.expect_punct(')')?;
        if values.len() != targets.len() {
            return Err(Diagnostic::error(
                Code::RowArity,
                Location::source(open),
                format!("{} values for {} columns", values.len(), targets.len()),
            ));
        }
        let mut row = vec![None; table.columns.len()];
        for (i, v) in targets.iter().zip(values) {
            row[*i] = v;
        }
        rows.push(row);
        if !p.eat_punct(',') {
            break;
        }
    }
    p.end_statement()?;
    out[slot].rows.extend(rows);
    Ok(())
}

fn empty_recordset(table: &TableDef) -> Recordset {
    Recordset::new(
        table.name.clone(),
        table.columns.iter().map(|c| c.name.clone()).collect(),
    )
}

fn value(p: &mut Parser) -> Result<Option<String>, Diagnostic> {
    let t = p.advance();
    match t.tok {
        Tok::Str(s) => Ok(Some(s)),
        Tok::Number(n) => Ok(Some(n)),
        Tok::Punct(sign @ ('-' | '+')) => match p.advance().tok {
            Tok::Number(n) if sign == '-' => Ok(Some(format!("-{n}"))),
            Tok::Number(n) => Ok(Some(n)),
            _ => Err(bad_value(t.pos)),
        },
        Tok::Ident { text, quoted: false } if text.eq_ignore_ascii_case("null") => Ok(None),
        Tok::Ident { text, quoted: false }
            if text.eq_ignore_ascii_case("true") || text.eq_ignore_ascii_case("false") =>
        {
            Ok(Some(text.to_ascii_lowercase()))
        }
        _ => Err(bad_value(t.pos)),
    }
}

fn bad_value(pos: Pos) -> Diagnostic {
    Diagnostic::error(
        Code::Syntax,
        Location::source(pos),
        "expected a literal value (number, string, NULL, TRUE or FALSE)",
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ingest::parse_ddl;

    fn schema() -> SchemaAst {
        let mut d = Diagnostics::new();
        parse_ddl(
            "CREATE TABLE Store (StoreID INT PRIMARY KEY, StoreName VARCHAR(20));",
            &mut d,
        )
        .unwrap()
    }

    fn run(s: &str) -> Result<Vec<Recordset>, Diagnostics> {
        let mut d = Diagnostics::new();
        parse_inserts(s, &schema(), &mut d).map_err(|_| d)
    }

    #[test]
    fn single_row() {
        let rs = run("INSERT INTO Store (StoreID, StoreName) VALUES (1, 'Main');").unwrap();
        assert_eq!(rs.len(), 1);
        assert_eq!(rs[0].relation_name, "Store");
        assert_eq!(rs[0].rows, vec![vec![Some("1".into()), Some("Main".into())]]);
    }

    #[test]
    fn null_keyword_and_escapes() {
        let rs = run("INSERT INTO store (StoreName, StoreID) VALUES (NULL, 1), ('O''Hara', -2);").unwrap();
        assert_eq!(rs[0].rows[0], vec![Some("1".into()), None]);
        assert_eq!(rs[0].rows[1], vec![Some("-2".into()), Some("O'Hara".into())]);
    }

    #[test]
    fn rows_accumulate_across_statements() {
        let rs = run("INSERT INTO Store VALUES (1, 'a');\nINSERT INTO Store (StoreID) VALUES (2);").unwrap();
        assert_eq!(rs[0].rows.len(), 2);
        assert_eq!(rs[0].rows[1][1], None);
    }

    #[test]
    fn unknown_table() {
        let d = run("INSERT INTO Ghost (a) VALUES (1);").unwrap_err();
        let e = d.errors().next().unwrap();
        assert_eq!(e.code, Code::UnknownTable);
        assert_eq!(e.location, Location::source(Pos::new(1, 13)));
    }

    #[test]
    fn unknown_column() {
        let d = run("INSERT INTO Store (StoreID, Nope) VALUES (1, 2);").unwrap_err();
        assert_eq!(d.errors().next().unwrap().code, Code::UnknownColumn);
    }

    #[test]
    fn arity() {
        let d = run("INSERT INTO Store (StoreID, StoreName) VALUES (1);").unwrap_err();
        assert_eq!(d.errors().next().unwrap().code, Code::RowArity);
    }
}
