use std::fmt;

/// Case-insensitive identifier comparison. Original spelling is kept
/// everywhere else.
pub fn ident_eq(a: &str, b: &str) -> bool {
    a == b || a.to_lowercase() == b.to_lowercase()
}

/// Column type keywords accepted by the front-end. The spelling is kept so
/// that metadata reproduces the declared type; [`TypeKeyword::normalized`]
/// collapses synonyms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TypeKeyword {
    Int,
    Integer,
    BigInt,
    SmallInt,
    Decimal,
    Numeric,
    Float,
    Real,
    Double,
    Char,
    Varchar,
    Text,
    Date,
    Time,
    Timestamp,
    Datetime,
    Boolean,
}

impl TypeKeyword {
    pub const ALL: &'static [TypeKeyword] = &[
        TypeKeyword::Int,
        TypeKeyword::Integer,
        TypeKeyword::BigInt,
        TypeKeyword::SmallInt,
        TypeKeyword::Decimal,
        TypeKeyword::Numeric,
        TypeKeyword::Float,
        TypeKeyword::Real,
        TypeKeyword::Double,
        TypeKeyword::Char,
        TypeKeyword::Varchar,
        TypeKeyword::Text,
        TypeKeyword::Date,
        TypeKeyword::Time,
        TypeKeyword::Timestamp,
        TypeKeyword::Datetime,
        TypeKeyword::Boolean,
    ];

    pub fn parse(word: &str) -> Option<Self> {
        TypeKeyword::ALL
            .iter()
            .copied()
            .find(|k| k.as_str().eq_ignore_ascii_case(word))
    }

    pub fn as_str(self) -> &'static str {
        match self {
            TypeKeyword::Int => "INT",
            TypeKeyword::Integer => "INTEGER",
            TypeKeyword::BigInt => "BIGINT",
            TypeKeyword::SmallInt => "SMALLINT",
            TypeKeyword::Decimal => "DECIMAL",
            TypeKeyword::Numeric => "NUMERIC",
            TypeKeyword::Float => "FLOAT",
            TypeKeyword::Real => "REAL",
            TypeKeyword::Double => "DOUBLE",
            TypeKeyword::Char => "CHAR",
            TypeKeyword::Varchar => "VARCHAR",
            TypeKeyword::Text => "TEXT",
            TypeKeyword::Date => "DATE",
            TypeKeyword::Time => "TIME",
            TypeKeyword::Timestamp => "TIMESTAMP",
            TypeKeyword::Datetime => "DATETIME",
            TypeKeyword::Boolean => "BOOLEAN",
        }
    }

    /// Synonym-collapsed keyword used for key compatibility checks.
    pub fn normalized(self) -> Self {
        match self {
            TypeKeyword::Integer => TypeKeyword::Int,
            TypeKeyword::Numeric => TypeKeyword::Decimal,
            TypeKeyword::Datetime => TypeKeyword::Timestamp,
            other => other,
        }
    }

    /// CHAR, VARCHAR and DECIMAL/NUMERIC carry a length (or precision).
    pub fn admits_length(self) -> bool {
        matches!(
            self,
            TypeKeyword::Char | TypeKeyword::Varchar | TypeKeyword::Decimal | TypeKeyword::Numeric
        )
    }

    pub fn admits_scale(self) -> bool {
        matches!(self, TypeKeyword::Decimal | TypeKeyword::Numeric)
    }
}

impl fmt::Display for TypeKeyword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Declared type of a column, e.g. `DECIMAL(10,2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SqlType {
    pub keyword: TypeKeyword,
    pub length: Option<u32>,
    pub scale: Option<u32>,
}

impl SqlType {
    pub fn plain(keyword: TypeKeyword) -> Self {
        SqlType {
            keyword,
            length: None,
            scale: None,
        }
    }
}

impl fmt::Display for SqlType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword.as_str())?;
        match (self.length, self.scale) {
            (Some(l), Some(s)) => write!(f, "({l},{s})"),
            (Some(l), None) => write!(f, "({l})"),
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColumnDef {
    pub name: String,
    pub sql_type: TypeKeyword,
    pub length: Option<u32>,
    /// Fractional digits for DECIMAL/NUMERIC.
    pub scale: Option<u32>,
    pub nullable: bool,
    /// Literal in canonical SQL form: strings single-quoted, numbers as
    /// written, keywords upper-case.
    pub default_value: Option<String>,
}

impl ColumnDef {
    pub fn new(name: impl Into<String>, sql_type: TypeKeyword) -> Self {
        ColumnDef {
            name: name.into(),
            sql_type,
            length: None,
            scale: None,
            nullable: true,
            default_value: None,
        }
    }

    pub fn with_length(mut self, length: u32) -> Self {
        self.length = Some(length);
        self
    }

    pub fn not_null(mut self) -> Self {
        self.nullable = false;
        self
    }

    pub fn ty(&self) -> SqlType {
        SqlType {
            keyword: self.sql_type,
            length: self.length,
            scale: self.scale,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForeignKeyDef {
    pub columns: Vec<String>,
    pub referenced_table: String,
    /// Empty when the clause omits the column list (the referenced primary
    /// key is meant).
    pub referenced_columns: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableDef {
    pub name: String,
    pub columns: Vec<ColumnDef>,
    pub primary_key: Vec<String>,
    pub foreign_keys: Vec<ForeignKeyDef>,
    pub uniques: Vec<Vec<String>>,
}

impl TableDef {
    pub fn new(name: impl Into<String>) -> Self {
        TableDef {
            name: name.into(),
            columns: Vec::new(),
            primary_key: Vec::new(),
            foreign_keys: Vec::new(),
            uniques: Vec::new(),
        }
    }

    pub fn column(&self, name: &str) -> Option<&ColumnDef> {
        self.columns.iter().find(|c| ident_eq(&c.name, name))
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| ident_eq(&c.name, name))
    }

    /// Canonical DDL: every identifier double-quoted, one clause per line,
    /// keys at table level.
    pub fn to_ddl(&self) -> String {
        let mut clauses: Vec<String> = self
            .columns
            .iter()
            .map(|c| {
                let mut s = format!("{} {}", quote_ident(&c.name), c.ty());
                if !c.nullable {
                    s.push_str(" NOT NULL");
                }
                if let Some(d) = &c.default_value {
                    s.push_str(" DEFAULT ");
                    s.push_str(d);
                }
                s
            })
            .collect();
        if !self.primary_key.is_empty() {
            clauses.push(format!("PRIMARY KEY ({})", quote_list(&self.primary_key)));
        }
        for u in &self.uniques {
            clauses.push(format!("UNIQUE ({})", quote_list(u)));
        }
        for fk in &self.foreign_keys {
            let mut s = format!(
                "FOREIGN KEY ({}) REFERENCES {}",
                quote_list(&fk.columns),
                quote_ident(&fk.referenced_table)
            );
            if !fk.referenced_columns.is_empty() {
                s.push_str(&format!(" ({})", quote_list(&fk.referenced_columns)));
            }
            clauses.push(s);
        }
        format!(
            "CREATE TABLE {} (\n  {}\n);\n",
            quote_ident(&self.name),
            clauses.join(",\n  ")
        )
    }
}

pub fn quote_ident(name: &str) -> String {
    format!("\"{}\"", name.replace('"', "\"\""))
}

fn quote_list(names: &[String]) -> String {
    names.iter().map(|n| quote_ident(n)).collect::<Vec<_>>().join(", ")
}

/// Quote text as a SQL string literal.
pub fn quote_str(s: &str) -> String {
    format!("'{}'", s.replace('\'', "''"))
}

/// Ordered table definitions parsed from one DDL source.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SchemaAst {
    pub tables: Vec<TableDef>,
}

impl SchemaAst {
    pub fn table(&self, name: &str) -> Option<&TableDef> {
        self.tables.iter().find(|t| ident_eq(&t.name, name))
    }

    pub fn to_ddl(&self) -> String {
        self.tables.iter().map(TableDef::to_ddl).collect::<Vec<_>>().join("\n")
    }
}

/// Tabular data for one relation. Cells are raw text; `None` is SQL NULL.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Recordset {
    pub relation_name: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<Option<String>>>,
}

impl Recordset {
    pub fn new(relation_name: impl Into<String>, header: Vec<String>) -> Self {
        Recordset {
            relation_name: relation_name.into(),
            header,
            rows: Vec::new(),
        }
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| ident_eq(h, name))
    }
}
