//! `CREATE TABLE` front-end.
//!
//! Grammar (case-insensitive keywords, `[]` optional, `*` repetition):
//!
//! ```text
//! create   := CREATE TABLE [IF NOT EXISTS] name '(' element (',' element)* ')' [';']
//! element  := column | [CONSTRAINT name] table_constraint
//! column   := name type [column_constraint]*
//! type     := keyword ['(' int [',' int] ')']  |  DOUBLE PRECISION
//! column_constraint := NOT NULL | NULL | DEFAULT literal | [CONSTRAINT name]
//!                      (PRIMARY KEY | UNIQUE | references)
//! table_constraint  := PRIMARY KEY cols | UNIQUE cols | FOREIGN KEY cols references
//! references := REFERENCES name [cols] [ON (DELETE|UPDATE) action]*
//! ```
//!
//! Any other statement is skipped up to its terminating `;` with a note.

use crate::diag::{Code, Diagnostic, Diagnostics, Location, Pos, StageFailed};

use super::lexer::{tokenize, Parser, Tok};
use super::types::{quote_str, ColumnDef, ForeignKeyDef, SchemaAst, TableDef, TypeKeyword};

/// Parse a DDL dump. Errors from all statements are collected before the
/// stage fails; skipped statements are reported as notes.
pub fn parse_ddl(text: &str, diags: &mut Diagnostics) -> Result<SchemaAst, StageFailed> {
    let mark = diags.len();
    let toks = match tokenize(text) {
        Ok(t) => t,
        Err(e) => {
            diags.push(e);
            return Err(StageFailed { stage: "parse", errors: 1 });
        }
    };
    let mut p = Parser::new(toks);
    let mut schema = SchemaAst::default();
    while !p.at_eof() {
        if p.eat_punct(';') {
            continue;
        }
        if p.peek().is_keyword("create") && p.peek_nth(1).is_keyword("table") {
            let mut tp = TableParser::default();
            match tp.create_table(&mut p) {
                Ok(raw) => {
                    let ok = tp.errors.is_empty();
                    diags.extend(tp.errors);
                    if ok {
                        if schema.table(&raw.def.name).is_some() {
                            diags.push(Diagnostic::error(
                                Code::DuplicateTable,
                                Location::source(raw.name_pos),
                                format!("table `{}` is defined more than once", raw.def.name),
                            ));
                        } else {
                            schema.tables.push(raw.def);
                        }
                    }
                }
                Err(e) => {
                    diags.extend(tp.errors);
                    diags.push(e);
                    p.recover();
                }
            }
        } else {
            let t = p.peek().clone();
            let what = match &t.tok {
                Tok::Ident { text, quoted: false } => text.to_ascii_uppercase(),
                _ => t.describe(),
            };
            diags.push(Diagnostic::note(
                Code::SkippedStatement,
                Location::source(t.pos),
                format!("skipped {what} statement"),
            ));
            p.recover();
        }
    }
    diags.check_since(mark, "parse")?;
    Ok(schema)
}

struct RawTable {
    def: TableDef,
    name_pos: Pos,
}

type Named = (String, Pos);

#[derive(Default)]
struct TableParser {
    errors: Vec<Diagnostic>,
    pk: Option<Vec<Named>>,
    uniques: Vec<Vec<Named>>,
    fks: Vec<(Vec<Named>, String, Vec<String>)>,
}

impl TableParser {
    fn create_table(&mut self, p: &mut Parser) -> Result<RawTable, Diagnostic> {
        p.expect_keyword("create")?;
        p.expect_keyword("table")?;
        if p.peek().is_keyword("if") {
            p.advance();
            p.expect_keyword("not")?;
            p.expect_keyword("exists")?;
        }
        let (name, name_pos) = p.expect_ident("table name")?;
        p.expect_punct('(')?;
        let mut columns: Vec<(ColumnDef, Pos)> = Vec::new();
        loop {
            let t = p.peek();
            let starts_constraint = t.is_keyword("constraint")
                || t.is_keyword("primary")
                || t.is_keyword("foreign")
                || (t.is_keyword("unique") && p.peek_nth(1).is_punct('('));
            if starts_constraint {
                self.table_constraint(p)?;
            } else {
                columns.push(self.column(p)?);
            }
            if p.eat_punct(',') {
                continue;
            }
            p.expect_punct(')')?;
            break;
        }
        p.end_statement()?;
        Ok(self.finish(name, name_pos, columns))
    }

    fn column(&mut self, p: &mut Parser) -> Result<(ColumnDef, Pos), Diagnostic> {
        let (name, pos) = p.expect_ident("column name or table constraint")?;
        let type_tok = p.peek().clone();
        let (word, _) = p.expect_ident("column type")?;
        let keyword = if word.eq_ignore_ascii_case("double") && p.peek().is_keyword("precision") {
            p.advance();
            Some(TypeKeyword::Double)
        } else {
            TypeKeyword::parse(&word)
        };
        let mut col = ColumnDef::new(name.clone(), keyword.unwrap_or(TypeKeyword::Text));
        match keyword {
            Some(kw) => self.type_args(p, &mut col, kw)?,
            None => {
                self.errors.push(Diagnostic::error(
                    Code::UnknownType,
                    Location::source(type_tok.pos),
                    format!("unsupported type `{word}` for column `{name}`"),
                ));
                if p.peek().is_punct('(') {
                    while !p.at_eof() && !p.eat_punct(')') {
                        p.advance();
                    }
                }
            }
        }
        loop {
            let t = p.peek().clone();
            if t.is_keyword("not") {
                p.advance();
                p.expect_keyword("null")?;
                col.nullable = false;
            } else if t.is_keyword("null") {
                p.advance();
                col.nullable = true;
            } else if t.is_keyword("default") {
                p.advance();
                col.default_value = default_literal(p)?;
            } else if t.is_keyword("constraint") {
                p.advance();
                p.expect_ident("constraint name")?;
                if !(p.peek().is_keyword("primary")
                    || p.peek().is_keyword("unique")
                    || p.peek().is_keyword("references")
                    || p.peek().is_keyword("not"))
                {
                    return Err(p.unexpected("column constraint"));
                }
            } else if t.is_keyword("primary") {
                p.advance();
                p.expect_keyword("key")?;
                self.set_pk(vec![(name.clone(), pos)], t.pos)?;
            } else if t.is_keyword("unique") {
                p.advance();
                self.uniques.push(vec![(name.clone(), pos)]);
            } else if t.is_keyword("references") {
                let (table, cols) = references(p)?;
                self.fks.push((vec![(name.clone(), pos)], table, cols));
            } else {
                break;
            }
        }
        Ok((col, pos))
    }

    fn type_args(&mut self, p: &mut Parser, col: &mut ColumnDef, kw: TypeKeyword) -> Result<(), Diagnostic> {
        if !p.peek().is_punct('(') {
            return Ok(());
        }
        if !kw.admits_length() {
            return Err(Diagnostic::error(
                Code::Syntax,
                Location::source(p.peek().pos),
                format!("type {kw} does not take a length"),
            ));
        }
        p.advance();
        col.length = Some(positive_int(p)?);
        if p.eat_punct(',') {
            if !kw.admits_scale() {
                return Err(p.unexpected("`)`"));
            }
            let t = p.peek().clone();
            match &t.tok {
                Tok::Number(n) if n.bytes().all(|b| b.is_ascii_digit()) => {
                    p.advance();
                    let scale: u32 = n
                        .parse()
                        .map_err(|_| Diagnostic::error(Code::Syntax, Location::source(t.pos), "scale out of range"))?;
                    col.scale = Some(scale);
                }
                _ => return Err(p.unexpected("scale")),
            }
        }
        p.expect_punct(')')?;
        Ok(())
    }

    fn table_constraint(&mut self, p: &mut Parser) -> Result<(), Diagnostic> {
        if p.eat_keyword("constraint") {
            p.expect_ident("constraint name")?;
        }
        let t = p.peek().clone();
        if t.is_keyword("primary") {
            p.advance();
            p.expect_keyword("key")?;
            let cols = p.ident_list("column name")?;
            self.set_pk(cols, t.pos)
        } else if t.is_keyword("unique") {
            p.advance();
            p.eat_keyword("key");
            let cols = p.ident_list("column name")?;
            self.uniques.push(cols);
            Ok(())
        } else if t.is_keyword("foreign") {
            p.advance();
            p.expect_keyword("key")?;
            let cols = p.ident_list("column name")?;
            let (table, refcols) = references(p)?;
            self.fks.push((cols, table, refcols));
            Ok(())
        } else {
            Err(p.unexpected("PRIMARY KEY, UNIQUE or FOREIGN KEY"))
        }
    }

    fn set_pk(&mut self, cols: Vec<Named>, pos: Pos) -> Result<(), Diagnostic> {
        if self.pk.is_some() {
            return Err(Diagnostic::error(
                Code::Syntax,
                Location::source(pos),
                "multiple primary keys declared for one table",
            ));
        }
        self.pk = Some(cols);
        Ok(())
    }

    /// Semantic checks and normalization of inline keys into table lists.
    fn finish(&mut self, name: String, name_pos: Pos, columns: Vec<(ColumnDef, Pos)>) -> RawTable {
        let mut def = TableDef::new(name);
        for (col, pos) in columns {
            if def.column(&col.name).is_some() {
                self.errors.push(Diagnostic::error(
                    Code::DuplicateColumn,
                    Location::source(pos),
                    format!("column `{}` is declared more than once in `{}`", col.name, def.name),
                ));
            } else {
                def.columns.push(col);
            }
        }
        let resolve = |cols: Vec<Named>, what: &str, errors: &mut Vec<Diagnostic>| -> Vec<String> {
            let mut out = Vec::with_capacity(cols.len());
            for (c, pos) in cols {
                match def.column(&c) {
                    Some(col) => out.push(col.name.clone()),
                    None => {
                        errors.push(Diagnostic::error(
                            Code::DanglingKeyColumn,
                            Location::source(pos),
                            format!("{what} names unknown column `{c}` of `{}`", def.name),
                        ));
                        out.push(c);
                    }
                }
            }
            out
        };
        let pk = self.pk.take().map(|c| resolve(c, "primary key", &mut self.errors));
        let uniques: Vec<Vec<String>> = std::mem::take(&mut self.uniques)
            .into_iter()
            .map(|c| resolve(c, "unique key", &mut self.errors))
            .collect();
        let fks: Vec<ForeignKeyDef> = std::mem::take(&mut self.fks)
            .into_iter()
            .map(|(cols, referenced_table, referenced_columns)| ForeignKeyDef {
                columns: resolve(cols, "foreign key", &mut self.errors),
                referenced_table,
                referenced_columns,
            })
            .collect();
        if let Some(pk) = pk {
            for c in &pk {
                if let Some(i) = def.column_index(c) {
                    def.columns[i].nullable = false;
                }
            }
            def.primary_key = pk;
        }
        def.uniques = uniques;
        def.foreign_keys = fks;
        RawTable { def, name_pos }
    }
}

fn references(p: &mut Parser) -> Result<(String, Vec<String>), Diagnostic> {
    p.expect_keyword("references")?;
    let (table, _) = p.expect_ident("referenced table name")?;
    let cols = if p.peek().is_punct('(') {
        p.ident_list("column name")?.into_iter().map(|(c, _)| c).collect()
    } else {
        Vec::new()
    };
    while p.peek().is_keyword("on") {
        p.advance();
        if !(p.eat_keyword("delete") || p.eat_keyword("update")) {
            return Err(p.unexpected("DELETE or UPDATE"));
        }
        if p.eat_keyword("cascade") || p.eat_keyword("restrict") {
            continue;
        }
        if p.eat_keyword("no") {
            p.expect_keyword("action")?;
        } else if p.eat_keyword("set") {
            if !(p.eat_keyword("null") || p.eat_keyword("default")) {
                return Err(p.unexpected("NULL or DEFAULT"));
            }
        } else {
            return Err(p.unexpected("referential action"));
        }
    }
    Ok((table, cols))
}

fn positive_int(p: &mut Parser) -> Result<u32, Diagnostic> {
    let t = p.peek().clone();
    if let Tok::Number(n) = &t.tok {
        if let Ok(v) = n.parse::<u32>() {
            if v > 0 {
                p.advance();
                return Ok(v);
            }
        }
    }
    Err(p.unexpected("positive integer length"))
}

/// `DEFAULT` literal in canonical SQL form; `DEFAULT NULL` yields `None`.
fn default_literal(p: &mut Parser) -> Result<Option<String>, Diagnostic> {
    let t = p.peek().clone();
    let lit = match &t.tok {
        Tok::Str(s) => quote_str(s),
        Tok::Number(n) => n.clone(),
        Tok::Punct(sign @ ('-' | '+')) => {
            p.advance();
            match &p.peek().tok {
                Tok::Number(n) => {
                    if *sign == '-' {
                        format!("-{n}")
                    } else {
                        n.clone()
                    }
                }
                _ => return Err(p.unexpected("number")),
            }
        }
        Tok::Ident { text, quoted: false } => {
            let up = text.to_ascii_uppercase();
            match up.as_str() {
                "NULL" => {
                    p.advance();
                    return Ok(None);
                }
                "TRUE" | "FALSE" | "CURRENT_DATE" | "CURRENT_TIME" | "CURRENT_TIMESTAMP" => up,
                _ => return Err(p.unexpected("default literal")),
            }
        }
        _ => return Err(p.unexpected("default literal")),
    };
    p.advance();
    Ok(Some(lit))
}
