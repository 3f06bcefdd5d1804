//! Structured diagnostics shared by every pipeline stage.
//!
//! Stages push warnings and notes into a [`Diagnostics`] sink and report
//! failure by returning [`StageFailed`]; the errors themselves live in the
//! sink so that one stage can report all of its problems together.

use std::fmt;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
    Note,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Severity::Error => "error",
            Severity::Warning => "warning",
            Severity::Note => "note",
        })
    }
}

macro_rules! codes {
    ($($(#[$doc:meta])* $variant:ident => $id:literal,)*) => {
        /// Stable diagnostic identifiers. The set is closed; the string form
        /// is what appears in text and JSON output.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub enum Code {
            $($(#[$doc])* $variant,)*
        }

        impl Code {
            pub const ALL: &'static [Code] = &[$(Code::$variant,)*];

            pub fn as_str(self) -> &'static str {
                match self {
                    $(Code::$variant => $id,)*
                }
            }
        }
    };
}

codes! {
    /// Malformed DDL or INSERT text.
    Syntax => "syntax-error",
    /// A statement other than CREATE TABLE/INSERT was skipped.
    SkippedStatement => "skipped-statement",
    DuplicateTable => "duplicate-table",
    DuplicateColumn => "duplicate-column",
    /// Column type outside the supported keyword set.
    UnknownType => "unknown-type",
    /// A key clause names a column the table does not have.
    DanglingKeyColumn => "dangling-key-column",
    HeaderMismatch => "header-mismatch",
    RowArity => "row-arity",
    Io => "io-error",
    UnknownTable => "unknown-table",
    UnknownColumn => "unknown-column",
    /// A foreign key targets a relation that does not exist.
    UnresolvedReference => "unresolved-reference",
    /// Foreign key columns disagree with the referenced primary key.
    KeyMismatch => "key-mismatch",
    MissingPrimaryKey => "missing-primary-key",
    /// A keyless table was given its full column list as primary key.
    SurrogatePrimaryKey => "surrogate-primary-key",
    DuplicateRelation => "duplicate-relation",
    /// The relationship set does not correspond one-to-one with the foreign keys.
    OrphanRelationship => "orphan-relationship",
    /// A junction relation is itself referenced and was kept as a class.
    ClassifyConflict => "classify-conflict",
    IriCollision => "iri-collision",
    InvalidNcName => "invalid-ncname",
    /// Unique keys were not emitted (OWL 1 profile or non-attribute columns).
    UniqueKeysOmitted => "unique-keys-omitted",
    UnknownRelation => "unknown-relation",
    NullKeyCell => "null-key-cell",
    LiteralCoercion => "literal-coercion",
    /// A foreign key value matches no row of the referenced relation.
    ReferentialIntegrity => "referential-integrity",
    Config => "config-error",
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for Code {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// A position in a source text. Lines and columns are 1-based; columns
/// count characters, not bytes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

impl Pos {
    pub fn new(line: usize, column: usize) -> Self {
        Pos { line, column }
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Location {
    None,
    Source {
        #[serde(skip_serializing_if = "Option::is_none")]
        file: Option<String>,
        line: usize,
        column: usize,
    },
    /// A relation, optionally narrowed to a 1-based data row and a column.
    Relation {
        relation: String,
        #[serde(skip_serializing_if = "Option::is_none")]
        row: Option<usize>,
        #[serde(skip_serializing_if = "Option::is_none")]
        column: Option<String>,
    },
}

impl Location {
    pub fn source(pos: Pos) -> Self {
        Location::Source {
            file: None,
            line: pos.line,
            column: pos.column,
        }
    }

    pub fn relation(name: impl Into<String>) -> Self {
        Location::Relation {
            relation: name.into(),
            row: None,
            column: None,
        }
    }

    pub fn row(name: impl Into<String>, row: usize) -> Self {
        Location::Relation {
            relation: name.into(),
            row: Some(row),
            column: None,
        }
    }

    pub fn cell(name: impl Into<String>, row: usize, column: impl Into<String>) -> Self {
        Location::Relation {
            relation: name.into(),
            row: Some(row),
            column: Some(column.into()),
        }
    }

    pub fn file(path: impl Into<String>) -> Self {
        Location::Source {
            file: Some(path.into()),
            line: 0,
            column: 0,
        }
    }
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Location::None => Ok(()),
            Location::Source { file, line, column } => {
                if let Some(file) = file {
                    f.write_str(file)?;
                    if *line == 0 {
                        return Ok(());
                    }
                    f.write_str(":")?;
                }
                write!(f, "{line}:{column}")
            }
            Location::Relation {
                relation,
                row,
                column,
            } => {
                f.write_str(relation)?;
                if let Some(row) = row {
                    write!(f, " row {row}")?;
                }
                if let Some(column) = column {
                    write!(f, " column {column}")?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub severity: Severity,
    pub code: Code,
    pub location: Location,
    pub message: String,
}

impl Diagnostic {
    pub fn new(severity: Severity, code: Code, location: Location, message: impl Into<String>) -> Self {
        Diagnostic {
            severity,
            code,
            location,
            message: message.into(),
        }
    }

    pub fn error(code: Code, location: Location, message: impl Into<String>) -> Self {
        Self::new(Severity::Error, code, location, message)
    }

    pub fn warning(code: Code, location: Location, message: impl Into<String>) -> Self {
        Self::new(Severity::Warning, code, location, message)
    }

    pub fn note(code: Code, location: Location, message: impl Into<String>) -> Self {
        Self::new(Severity::Note, code, location, message)
    }

    /// Attach a file name to a source location that lacks one.
    pub fn in_file(mut self, path: &str) -> Self {
        if let Location::Source { file: file @ None, .. } = &mut self.location {
            *file = Some(path.to_string());
        }
        self
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.severity, self.code)?;
        if self.location != Location::None {
            write!(f, " {}", self.location)?;
        }
        write!(f, ": {}", self.message)
    }
}

impl std::error::Error for Diagnostic {}

/// Ordered collection of diagnostics produced by one or more stages.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Diagnostics {
    items: Vec<Diagnostic>,
}

impl Diagnostics {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, d: Diagnostic) {
        self.items.push(d);
    }

    pub fn extend(&mut self, ds: impl IntoIterator<Item = Diagnostic>) {
        self.items.extend(ds);
    }

    pub fn has_errors(&self) -> bool {
        self.items.iter().any(Diagnostic::is_error)
    }

    pub fn error_count(&self) -> usize {
        self.items.iter().filter(|d| d.is_error()).count()
    }

    pub fn errors(&self) -> impl Iterator<Item = &Diagnostic> {
        self.items.iter().filter(|d| d.is_error())
    }

    pub fn with_code(&self, code: Code) -> impl Iterator<Item = &Diagnostic> {
        self.items.iter().filter(move |d| d.code == code)
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Diagnostic> {
        self.items.iter()
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn into_vec(self) -> Vec<Diagnostic> {
        self.items
    }

    /// `Err(StageFailed)` when any error has been recorded since `mark`.
    pub fn check_since(&self, mark: usize, stage: &'static str) -> Result<(), StageFailed> {
        let errors = self.items[mark..].iter().filter(|d| d.is_error()).count();
        if errors == 0 {
            Ok(())
        } else {
            Err(StageFailed { stage, errors })
        }
    }
}

impl IntoIterator for Diagnostics {
    type Item = Diagnostic;
    type IntoIter = std::vec::IntoIter<Diagnostic>;

    fn into_iter(self) -> Self::IntoIter {
        self.items.into_iter()
    }
}

impl<'a> IntoIterator for &'a Diagnostics {
    type Item = &'a Diagnostic;
    type IntoIter = std::slice::Iter<'a, Diagnostic>;

    fn into_iter(self) -> Self::IntoIter {
        self.items.iter()
    }
}

/// A stage recorded at least one error; details are in the sink.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("{stage} failed with {errors} error(s)")]
pub struct StageFailed {
    pub stage: &'static str,
    pub errors: usize,
}
