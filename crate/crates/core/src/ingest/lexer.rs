//! SQL tokenizer shared by the DDL and INSERT front-ends.

use crate::diag::{Code, Diagnostic, Location, Pos};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    /// Bare or quoted identifier. Keywords are bare identifiers.
    Ident { text: String, quoted: bool },
    /// Unsigned numeric literal as written.
    Number(String),
    /// String literal with quotes removed and `''` unescaped.
    Str(String),
    Punct(char),
    Eof,
}

#[derive(Debug, Clone)]
pub struct Token {
    pub tok: Tok,
    pub pos: Pos,
}

impl Token {
    pub fn is_keyword(&self, kw: &str) -> bool {
        matches!(&self.tok, Tok::Ident { text, quoted: false } if text.eq_ignore_ascii_case(kw))
    }

    pub fn is_punct(&self, c: char) -> bool {
        self.tok == Tok::Punct(c)
    }

    pub fn describe(&self) -> String {
        match &self.tok {
            Tok::Ident { text, quoted: false } => format!("`{text}`"),
            Tok::Ident { text, quoted: true } => format!("quoted identifier `{text}`"),
            Tok::Number(n) => format!("number `{n}`"),
            Tok::Str(s) => format!("string '{s}'"),
            Tok::Punct(c) => format!("`{c}`"),
            Tok::Eof => "end of input".to_string(),
        }
    }
}

struct Cursor<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    column: usize,
}

impl Cursor<'_> {
    fn pos(&self) -> Pos {
        Pos::new(self.line, self.column)
    }

    fn peek(&mut self) -> Option<char> {
        self.chars.peek().copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn peek2(&self) -> Option<char> {
        let mut it = self.chars.clone();
        it.next();
        it.next()
    }
}

fn syntax(pos: Pos, msg: impl Into<String>) -> Diagnostic {
    Diagnostic::error(Code::Syntax, Location::source(pos), msg)
}

/// Split `text` into tokens. The final token is always [`Tok::Eof`].
pub fn tokenize(text: &str) -> Result<Vec<Token>, Diagnostic> {
    let text = text.strip_prefix('\u{feff}').unwrap_or(text);
    let mut cur = Cursor {
        chars: text.chars().peekable(),
        line: 1,
        column: 1,
    };
    let mut out = Vec::new();
    loop {
        let pos = cur.pos();
        let Some(c) = cur.peek() else {
            out.push(Token { tok: Tok::Eof, pos });
            return Ok(out);
        };
        match c {
            c if c.is_whitespace() => {
                cur.bump();
            }
            '-' if cur.peek2() == Some('-') => {
                while let Some(c) = cur.peek() {
                    if c == '\n' {
                        break;
                    }
                    cur.bump();
                }
            }
            '/' if cur.peek2() == Some('*') => {
                cur.bump();
                cur.bump();
                let mut closed = false;
                while let Some(c) = cur.bump() {
                    if c == '*' && cur.peek() == Some('/') {
                        cur.bump();
                        closed = true;
                        break;
                    }
                }
                if !closed {
                    return Err(syntax(pos, "unterminated block comment"));
                }
            }
            '\'' => {
                cur.bump();
                let mut s = String::new();
                loop {
                    match cur.bump() {
                        None => return Err(syntax(pos, "unterminated string literal")),
                        Some('\'') if cur.peek() == Some('\'') => {
                            cur.bump();
                            s.push('\'');
                        }
                        Some('\'') => break,
                        Some(c) => s.push(c),
                    }
                }
                out.push(Token { tok: Tok::Str(s), pos });
            }
            '"' | '`' => {
                let close = c;
                cur.bump();
                let mut s = String::new();
                loop {
                    match cur.bump() {
                        None => return Err(syntax(pos, "unterminated quoted identifier")),
                        Some(c) if c == close && cur.peek() == Some(close) => {
                            cur.bump();
                            s.push(close);
                        }
                        Some(c) if c == close => break,
                        Some(c) => s.push(c),
                    }
                }
                if s.is_empty() {
                    return Err(syntax(pos, "empty quoted identifier"));
                }
                out.push(Token {
                    tok: Tok::Ident { text: s, quoted: true },
                    pos,
                });
            }
            c if c.is_ascii_digit() || (c == '.' && cur.peek2().is_some_and(|d| d.is_ascii_digit())) => {
                let mut s = String::new();
                while let Some(c) = cur.peek() {
                    if c.is_ascii_digit() || c == '.' {
                        s.push(c);
                        cur.bump();
                    } else if (c == 'e' || c == 'E') && !s.contains(['e', 'E']) {
                        s.push(c);
                        cur.bump();
                        if let Some(sign @ ('+' | '-')) = cur.peek() {
                            s.push(sign);
                            cur.bump();
                        }
                    } else {
                        break;
                    }
                }
                if s.matches('.').count() > 1 {
                    return Err(syntax(pos, format!("malformed number `{s}`")));
                }
                out.push(Token { tok: Tok::Number(s), pos });
            }
            c if c.is_alphabetic() || c == '_' => {
                let mut s = String::new();
                while let Some(c) = cur.peek() {
                    if c.is_alphanumeric() || c == '_' || c == '$' {
                        s.push(c);
                        cur.bump();
                    } else {
                        break;
                    }
                }
                out.push(Token {
                    tok: Tok::Ident { text: s, quoted: false },
                    pos,
                });
            }
            c => {
                cur.bump();
                out.push(Token { tok: Tok::Punct(c), pos });
            }
        }
    }
}

/// Token stream with single-token lookahead.
pub struct Parser {
    toks: Vec<Token>,
    at: usize,
}

impl Parser {
    pub fn new(toks: Vec<Token>) -> Self {
        Parser { toks, at: 0 }
    }

    pub fn peek(&self) -> &Token {
        &self.toks[self.at]
    }

    pub fn peek_nth(&self, n: usize) -> &Token {
        let i = (self.at + n).min(self.toks.len() - 1);
        &self.toks[i]
    }

    pub fn advance(&mut self) -> Token {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    pub fn at_eof(&self) -> bool {
        self.peek().tok == Tok::Eof
    }

    pub fn eat_keyword(&mut self, kw: &str) -> bool {
        if self.peek().is_keyword(kw) {
            self.advance();
            true
        } else {
            false
        }
    }

    pub fn eat_punct(&mut self, c: char) -> bool {
        if self.peek().is_punct(c) {
            self.advance();
            true
        } else {
            false
        }
    }

    pub fn unexpected(&self, expected: &str) -> Diagnostic {
        let t = self.peek();
        syntax(t.pos, format!("expected {expected}, found {}", t.describe()))
    }

    pub fn expect_keyword(&mut self, kw: &str) -> Result<Pos, Diagnostic> {
        if self.peek().is_keyword(kw) {
            Ok(self.advance().pos)
        } else {
            Err(self.unexpected(&format!("`{}`", kw.to_ascii_uppercase())))
        }
    }

    pub fn expect_punct(&mut self, c: char) -> Result<Pos, Diagnostic> {
        if self.peek().is_punct(c) {
            Ok(self.advance().pos)
        } else {
            Err(self.unexpected(&format!("`{c}`")))
        }
    }

    pub fn expect_ident(&mut self, what: &str) -> Result<(String, Pos), Diagnostic> {
        match &self.peek().tok {
            Tok::Ident { text, .. } => {
                let text = text.clone();
                Ok((text, self.advance().pos))
            }
            _ => Err(self.unexpected(what)),
        }
    }

    /// `( ident, ident, ... )`
    pub fn ident_list(&mut self, what: &str) -> Result<Vec<(String, Pos)>, Diagnostic> {
        self.expect_punct('(')?;
        let mut out = vec![self.expect_ident(what)?];
        while self.eat_punct(',') {
            out.push(self.expect_ident(what)?);
        }
        self.expect_punct(')')?;
        Ok(out)
    }

    /// Skip to just past the next top-level `;` (or to end of input).
    pub fn recover(&mut self) {
        let mut depth = 0usize;
        while !self.at_eof() {
            let t = self.advance();
            match t.tok {
                Tok::Punct('(') => depth += 1,
                Tok::Punct(')') => depth = depth.saturating_sub(1),
                Tok::Punct(';') if depth == 0 => return,
                _ => {}
            }
        }
    }

    /// Statement terminator: `;` or end of input.
    pub fn end_statement(&mut self) -> Result<(), Diagnostic> {
        if self.eat_punct(';') || self.at_eof() {
            Ok(())
        } else {
            Err(self.unexpected("`;`"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &str) -> Vec<Tok> {
        tokenize(s).unwrap().into_iter().map(|t| t.tok).collect()
    }

    #[test]
    fn strings_unescape_doubled_quotes() {
        assert_eq!(toks("'it''s'"), vec![Tok::Str("it's".into()), Tok::Eof]);
    }

    #[test]
    fn quoted_identifiers_keep_spelling() {
        assert_eq!(
            toks("\"Order\" `a``b`"),
            vec![
                Tok::Ident { text: "Order".into(), quoted: true },
                Tok::Ident { text: "a`b".into(), quoted: true },
                Tok::Eof
            ]
        );
    }

    #[test]
    fn comments_are_skipped_and_positions_tracked() {
        let t = tokenize("-- hi\n/* x\n y */ foo").unwrap();
        assert_eq!(t[0].pos, Pos::new(3, 7));
    }

    #[test]
    fn unterminated_string_reports_its_start() {
        let e = tokenize("\n  'abc").unwrap_err();
        assert_eq!(e.location, Location::source(Pos::new(2, 3)));
    }

    #[test]
    fn numbers() {
        assert_eq!(toks("10.25 3e5"), vec![Tok::Number("10.25".into()), Tok::Number("3e5".into()), Tok::Eof]);
    }
}
