//! Random relational schemas with data, rendered as DDL text plus CSV or
//! INSERT data, together with the counts a correct translation must
//! produce. The expectations are computed here from the generator's own
//! description of the schema, never from the translator.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;

use rand::seq::IndexedRandom;
use rand::{Rng, RngExt};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Int,
    BigInt,
    SmallInt,
    Decimal,
    Double,
    Char,
    Varchar,
    Text,
    Date,
    Time,
    Timestamp,
    Boolean,
}

impl Kind {
    fn numeric(self) -> bool {
        matches!(
            self,
            Kind::Int | Kind::BigInt | Kind::SmallInt | Kind::Decimal | Kind::Double
        )
    }
}

#[derive(Debug, Clone)]
pub struct GenColumn {
    pub name: String,
    /// Declared type as written in the DDL, e.g. `DECIMAL(10,2)`.
    pub sql: String,
    pub kind: Kind,
    pub not_null: bool,
    pub default: Option<String>,
}

#[derive(Debug, Clone)]
pub struct GenFk {
    /// Local columns in the order of the target's key.
    pub columns: Vec<String>,
    pub target: usize,
}

#[derive(Debug, Clone)]
pub struct GenTable {
    pub name: String,
    pub columns: Vec<GenColumn>,
    /// Empty for a keyless table.
    pub pk: Vec<String>,
    pub fks: Vec<GenFk>,
    pub uniques: Vec<Vec<String>>,
    pub rows: Vec<Vec<Option<String>>>,
}

impl GenTable {
    /// Declared key, or every column for a keyless table.
    pub fn key(&self) -> Vec<String> {
        if self.pk.is_empty() {
            self.columns.iter().map(|c| c.name.clone()).collect()
        } else {
            self.pk.clone()
        }
    }

    fn col(&self, name: &str) -> &GenColumn {
        self.columns.iter().find(|c| c.name == name).expect("generated column")
    }

    fn index(&self, name: &str) -> usize {
        self.columns.iter().position(|c| c.name == name).expect("generated column")
    }

    fn fk_columns(&self) -> BTreeSet<&str> {
        self.fks.iter().flat_map(|f| f.columns.iter().map(String::as_str)).collect()
    }
}

#[derive(Debug, Clone, Default)]
pub struct GenSchema {
    pub tables: Vec<GenTable>,
}

/// What the translation of a [`GenSchema`] must contain.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Expected {
    pub relations: usize,
    pub fields: usize,
    pub classes: usize,
    pub junctions: usize,
    pub demoted_junctions: usize,
    pub keyless: usize,
    pub attributes: usize,
    /// Foreign-key columns of classes that are not also key columns.
    pub fk_only_columns: usize,
    pub junction_columns: usize,
    pub fk_relationships: usize,
    pub relationships: usize,
    pub restrictions: usize,
    pub default_annotations: usize,
    pub individuals: usize,
    pub object_assertions: usize,
    /// Lexical forms of every non-NULL attribute cell of a class table.
    pub literal_values: BTreeMap<String, usize>,
}

fn quote(name: &str) -> String {
    let plain = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
        && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
    if plain {
        name.to_string()
    } else {
        format!("\"{}\"", name.replace('"', "\"\""))
    }
}

fn sql_str(s: &str) -> String {
    format!("'{}'", s.replace('\'', "''"))
}

impl GenSchema {
    fn referenced(&self, i: usize) -> bool {
        self.tables.iter().any(|t| t.fks.iter().any(|f| f.target == i))
    }

    fn junction_shape(t: &GenTable) -> bool {
        let key = t.key();
        let fk_cols = t.fk_columns();
        key.len() >= 2
            && key.iter().all(|c| fk_cols.contains(c.as_str()))
            && t.fks.len() == 2
            && t.columns.iter().all(|c| key.contains(&c.name))
    }

    pub fn is_junction(&self, i: usize) -> bool {
        Self::junction_shape(&self.tables[i]) && !self.referenced(i)
    }

    pub fn expected(&self) -> Expected {
        let mut e = Expected {
            relations: self.tables.len(),
            ..Expected::default()
        };
        for (i, t) in self.tables.iter().enumerate() {
            e.fields += t.columns.len();
            if t.pk.is_empty() {
                e.keyless += 1;
            }
            if self.is_junction(i) {
                e.junctions += 1;
                e.relationships += 1;
                e.junction_columns += t.columns.len();
                e.object_assertions += t.rows.len();
                continue;
            }
            if Self::junction_shape(t) {
                e.demoted_junctions += 1;
            }
            e.classes += 1;
            let key = t.key();
            let fk_cols = t.fk_columns();
            let attrs: Vec<usize> = (0..t.columns.len())
                .filter(|&j| {
                    let n = &t.columns[j].name;
                    key.contains(n) || !fk_cols.contains(n.as_str())
                })
                .collect();
            e.attributes += attrs.len();
            e.fk_only_columns += t.columns.len() - attrs.len();
            e.fk_relationships += t.fks.len();
            e.relationships += t.fks.len();
            e.default_annotations += attrs.iter().filter(|&&j| t.columns[j].default.is_some()).count();
            e.individuals += t.rows.len();
            for row in &t.rows {
                for &j in &attrs {
                    if let Some(v) = &row[j] {
                        *e.literal_values.entry(v.clone()).or_default() += 1;
                    }
                }
                for fk in &t.fks {
                    if fk.columns.iter().all(|c| row[t.index(c)].is_some()) {
                        e.object_assertions += 1;
                    }
                }
            }
        }
        // One restriction per attribute (exactly one or at most one) and one
        // per foreign-key relationship; many-to-many links carry none.
        e.restrictions = e.attributes + e.fk_relationships;
        e
    }

    pub fn to_ddl(&self) -> String {
        let mut out = String::new();
        for t in &self.tables {
            let mut clauses = Vec::new();
            for c in &t.columns {
                let mut s = format!("{} {}", quote(&c.name), c.sql);
                if c.not_null {
                    s.push_str(" NOT NULL");
                }
                if let Some(d) = &c.default {
                    write!(s, " DEFAULT {d}").unwrap();
                }
                clauses.push(s);
            }
            let list = |cols: &[String]| cols.iter().map(|c| quote(c)).collect::<Vec<_>>().join(", ");
            if !t.pk.is_empty() {
                clauses.push(format!("PRIMARY KEY ({})", list(&t.pk)));
            }
            for u in &t.uniques {
                clauses.push(format!("UNIQUE ({})", list(u)));
            }
            for fk in &t.fks {
                let target = &self.tables[fk.target];
                clauses.push(format!(
                    "FOREIGN KEY ({}) REFERENCES {} ({})",
                    list(&fk.columns),
                    quote(&target.name),
                    list(&target.pk)
                ));
            }
            writeln!(out, "CREATE TABLE {} (\n  {}\n);", quote(&t.name), clauses.join(",\n  ")).unwrap();
        }
        out
    }

    /// `(file name, contents)` for every table with rows. An unquoted empty
    /// field is NULL.
    pub fn to_csv_files(&self) -> Vec<(String, String)> {
        let mut files = Vec::new();
        for t in self.tables.iter().filter(|t| !t.rows.is_empty()) {
            let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::CRLF).from_writer(Vec::new());
            w.write_record(t.columns.iter().map(|c| c.name.as_str())).unwrap();
            for row in &t.rows {
                assert!(
                    row.len() > 1 || row[0].is_some(),
                    "a lone NULL field cannot be told apart from an empty line"
                );
                w.write_record(row.iter().map(|v| v.as_deref().unwrap_or(""))).unwrap();
            }
            let text = String::from_utf8(w.into_inner().unwrap()).unwrap();
            files.push((format!("{}.csv", t.name), text));
        }
        files
    }

    pub fn to_inserts(&self) -> String {
        let mut out = String::new();
        for t in self.tables.iter().filter(|t| !t.rows.is_empty()) {
            let cols = t.columns.iter().map(|c| quote(&c.name)).collect::<Vec<_>>().join(", ");
            let rows: Vec<String> = t
                .rows
                .iter()
                .map(|row| {
                    let vals: Vec<String> = row
                        .iter()
                        .zip(&t.columns)
                        .map(|(v, c)| match v {
                            None => "NULL".to_string(),
                            Some(v) if c.kind.numeric() && v.bytes().all(|b| b.is_ascii_digit() || b == b'-' || b == b'.') => {
                                v.clone()
                            }
                            Some(v) => sql_str(v),
                        })
                        .collect();
                    format!("({})", vals.join(", "))
                })
                .collect();
            writeln!(out, "INSERT INTO {} ({cols}) VALUES\n  {};", quote(&t.name), rows.join(",\n  ")).unwrap();
        }
        out
    }
}

const TABLE_WORDS: &[&str] = &["Customer", "order_line", "Product", "shift", "Größe", "x-ray", "Item", "Depot"];
const ATTR_WORDS: &[&str] = &["name", "Qty", "price", "note", "created_at", "flag", "Größe", "zip code"];
const STRINGS: &[&str] = &[
    "plain",
    "comma, inside",
    "quote \" inside",
    "O'Hara",
    "two\nlines",
    "Größe",
    "<b>&amp;</b>",
    "  padded  ",
    "x",
    "_under_",
];

fn attr_type<R: Rng + ?Sized>(rng: &mut R) -> (String, Kind) {
    let choices: &[(&str, Kind)] = &[
        ("INT", Kind::Int),
        ("INTEGER", Kind::Int),
        ("BIGINT", Kind::BigInt),
        ("SMALLINT", Kind::SmallInt),
        ("DECIMAL(10,2)", Kind::Decimal),
        ("NUMERIC(8)", Kind::Decimal),
        ("FLOAT", Kind::Double),
        ("REAL", Kind::Double),
        ("DOUBLE", Kind::Double),
        ("DOUBLE PRECISION", Kind::Double),
        ("CHAR(12)", Kind::Char),
        ("VARCHAR(40)", Kind::Varchar),
        ("TEXT", Kind::Text),
        ("DATE", Kind::Date),
        ("TIME", Kind::Time),
        ("TIMESTAMP", Kind::Timestamp),
        ("DATETIME", Kind::Timestamp),
        ("BOOLEAN", Kind::Boolean),
    ];
    let (s, k) = *choices.choose(rng).unwrap();
    (s.to_string(), k)
}

fn key_type<R: Rng + ?Sized>(rng: &mut R) -> (String, Kind) {
    let choices: &[(&str, Kind)] = &[
        ("INT", Kind::Int),
        ("INTEGER", Kind::Int),
        ("BIGINT", Kind::BigInt),
        ("VARCHAR(12)", Kind::Varchar),
        ("CHAR(4)", Kind::Char),
        ("DATE", Kind::Date),
    ];
    let (s, k) = *choices.choose(rng).unwrap();
    (s.to_string(), k)
}

/// Same type, sometimes spelled with a synonym.
fn fk_type<R: Rng + ?Sized>(rng: &mut R, target: &GenColumn) -> String {
    match target.sql.as_str() {
        "INT" if rng.random_bool(0.5) => "INTEGER".into(),
        "INTEGER" if rng.random_bool(0.5) => "INT".into(),
        other => other.to_string(),
    }
}

/// Canonical lexical form of a random value, so the translator must
/// reproduce it unchanged.
fn random_value<R: Rng + ?Sized>(rng: &mut R, kind: Kind) -> String {
    match kind {
        Kind::Int => rng.random_range(-100_000i32..100_000).to_string(),
        Kind::BigInt => rng.random_range(-(1i64 << 50)..(1i64 << 50)).to_string(),
        Kind::SmallInt => rng.random_range(-300i32..300).to_string(),
        Kind::Decimal => {
            let whole = rng.random_range(-999i32..999);
            match rng.random_range(0..3) {
                0 => whole.to_string(),
                1 => format!("{whole}.{}", rng.random_range(1..10)),
                _ => format!("{whole}.{}{}", rng.random_range(0..10), rng.random_range(1..10)),
            }
        }
        Kind::Double => ["3.25", "-0.5", "1.0E10", "INF", "-INF", "NaN", "42"].choose(rng).unwrap().to_string(),
        Kind::Char => format!("c{}", rng.random_range(0..1000)),
        Kind::Varchar | Kind::Text => STRINGS.choose(rng).unwrap().to_string(),
        Kind::Date => format!(
            "{:04}-{:02}-{:02}",
            rng.random_range(1990..2030),
            rng.random_range(1..13),
            rng.random_range(1..29)
        ),
        Kind::Time => format!(
            "{:02}:{:02}:{:02}",
            rng.random_range(0..24),
            rng.random_range(0..60),
            rng.random_range(0..60)
        ),
        Kind::Timestamp => format!(
            "{:04}-{:02}-{:02}T{:02}:{:02}:{:02}",
            rng.random_range(1990..2030),
            rng.random_range(1..13),
            rng.random_range(1..29),
            rng.random_range(0..24),
            rng.random_range(0..60),
            rng.random_range(0..60)
        ),
        Kind::Boolean => if rng.random_bool(0.5) { "true" } else { "false" }.to_string(),
    }
}

/// Value number `n` of a key column; distinct `n` give distinct values.
fn key_value(kind: Kind, n: usize) -> String {
    match kind {
        Kind::Int | Kind::BigInt | Kind::SmallInt => (n * 7 + 1).to_string(),
        Kind::Char => format!("c{n}"),
        Kind::Date => format!("2020-{:02}-{:02}", n / 28 + 1, n % 28 + 1),
        _ => format!("k{n} v"),
    }
}

fn default_for(kind: Kind) -> Option<&'static str> {
    match kind {
        Kind::Int | Kind::SmallInt | Kind::BigInt => Some("0"),
        Kind::Decimal => Some("-1.5"),
        Kind::Varchar | Kind::Text | Kind::Char => Some("'n/a'"),
        Kind::Boolean => Some("TRUE"),
        Kind::Date => Some("CURRENT_DATE"),
        _ => None,
    }
}

/// Bounds for [`random_schema`].
#[derive(Debug, Clone, Copy)]
pub struct GenLimits {
    pub max_tables: usize,
    pub max_columns: usize,
    pub max_rows: usize,
}

impl Default for GenLimits {
    fn default() -> Self {
        GenLimits {
            max_tables: 12,
            max_columns: 10,
            max_rows: 5,
        }
    }
}

/// A valid schema: unique names, key-compatible foreign keys referencing
/// declared primary keys, and data that satisfies every key.
pub fn random_schema<R: Rng + ?Sized>(rng: &mut R, limits: GenLimits) -> GenSchema {
    let n = rng.random_range(1..=limits.max_tables);
    let mut s = GenSchema::default();
    for i in 0..n {
        let word = TABLE_WORDS.choose(rng).unwrap();
        let name = format!("{word}{i}");
        let keyed: Vec<usize> = (0..i).filter(|&j| !s.tables[j].pk.is_empty()).collect();
        let key_width = |j: usize, s: &GenSchema| s.tables[j].pk.len();
        let table = if keyed.len() >= 2 && rng.random_bool(0.2) {
            let a = *keyed.choose(rng).unwrap();
            let b = *keyed.choose(rng).unwrap();
            if key_width(a, &s) + key_width(b, &s) < limits.max_columns {
                junction(rng, &s, name, a, b, limits)
            } else {
                regular(rng, &s, name, &keyed, limits)
            }
        } else {
            regular(rng, &s, name, &keyed, limits)
        };
        s.tables.push(table);
    }
    fill_rows(rng, &mut s, limits.max_rows);
    s
}

fn junction<R: Rng + ?Sized>(rng: &mut R, s: &GenSchema, name: String, a: usize, b: usize, limits: GenLimits) -> GenTable {
    let mut t = GenTable {
        name,
        columns: Vec::new(),
        pk: Vec::new(),
        fks: Vec::new(),
        uniques: Vec::new(),
        rows: Vec::new(),
    };
    for (prefix, target) in [("src", a), ("dst", b)] {
        let mut cols = Vec::new();
        for pkc in &s.tables[target].pk {
            let tc = s.tables[target].col(pkc);
            let c = GenColumn {
                name: format!("{prefix}_{}", tc.name),
                sql: fk_type(rng, tc),
                kind: tc.kind,
                not_null: true,
                default: None,
            };
            cols.push(c.name.clone());
            t.columns.push(c);
        }
        t.pk.extend(cols.iter().cloned());
        t.fks.push(GenFk { columns: cols, target });
    }
    // Sometimes a payload column, which makes it an association class.
    if t.columns.len() < limits.max_columns && rng.random_bool(0.25) {
        let (sql, kind) = attr_type(rng);
        t.columns.push(GenColumn {
            name: "payload".into(),
            sql,
            kind,
            not_null: false,
            default: None,
        });
    }
    t
}

fn regular<R: Rng + ?Sized>(rng: &mut R, s: &GenSchema, name: String, keyed: &[usize], limits: GenLimits) -> GenTable {
    let mut t = GenTable {
        name,
        columns: Vec::new(),
        pk: Vec::new(),
        fks: Vec::new(),
        uniques: Vec::new(),
        rows: Vec::new(),
    };
    let width = rng.random_range(1..=limits.max_columns);
    let shape = rng.random_range(0..100);

    // Key: keyless, single, composite, or shared with a parent (one-to-one).
    if shape < 10 {
        // keyless: filled with attribute columns below
    } else if shape < 20 && !keyed.is_empty() {
        let target = *keyed.choose(rng).unwrap();
        let tt = &s.tables[target];
        if tt.pk.len() <= width {
            let mut cols = Vec::new();
            for pkc in &tt.pk {
                let tc = tt.col(pkc);
                t.columns.push(GenColumn {
                    name: format!("{}_ref", tc.name),
                    sql: fk_type(rng, tc),
                    kind: tc.kind,
                    not_null: true,
                    default: None,
                });
                cols.push(format!("{}_ref", tc.name));
            }
            t.pk = cols.clone();
            t.fks.push(GenFk { columns: cols, target });
        }
    }
    if shape >= 10 && t.pk.is_empty() {
        let parts = if shape >= 85 && width >= 2 { 2 } else { 1 };
        for k in 0..parts {
            let (sql, kind) = key_type(rng);
            let name = if parts == 1 { "id".to_string() } else { format!("k{k}") };
            t.columns.push(GenColumn {
                name: name.clone(),
                sql,
                kind,
                not_null: true,
                default: None,
            });
            t.pk.push(name);
        }
    }

    // Foreign keys to earlier keyed tables, or to this table itself.
    let fk_count = rng.random_range(0..=3usize);
    let me = s.tables.len();
    for r in 0..fk_count {
        let self_ref = !t.pk.is_empty() && rng.random_bool(0.1);
        let target = if self_ref {
            me
        } else if let Some(&j) = keyed.choose(rng) {
            j
        } else {
            break;
        };
        let target_cols: Vec<GenColumn> = if target == me {
            t.pk.iter().map(|c| t.col(c).clone()).collect()
        } else {
            s.tables[target].pk.iter().map(|c| s.tables[target].col(c).clone()).collect()
        };
        if t.columns.len() + target_cols.len() > limits.max_columns {
            break;
        }
        // Keyless tables key on every column, so their values cannot be NULL.
        let nullable = !t.pk.is_empty() && (target == me || rng.random_bool(0.4));
        let mut cols = Vec::new();
        for tc in &target_cols {
            let c = GenColumn {
                name: format!("r{r}_{}", tc.name),
                sql: fk_type(rng, tc),
                kind: tc.kind,
                not_null: !nullable,
                default: None,
            };
            cols.push(c.name.clone());
            t.columns.push(c);
        }
        if rng.random_bool(0.15) {
            t.uniques.push(cols.clone());
        }
        t.fks.push(GenFk { columns: cols, target });
    }

    let mut a = 0;
    while t.columns.len() < width || t.columns.is_empty() {
        let (sql, kind) = attr_type(rng);
        let word = ATTR_WORDS.choose(rng).unwrap();
        let name = format!("{word}{a}");
        a += 1;
        let keyless = t.pk.is_empty();
        let default = if !keyless && rng.random_bool(0.2) {
            default_for(kind).map(str::to_string)
        } else {
            None
        };
        if !keyless && rng.random_bool(0.1) {
            t.uniques.push(vec![name.clone()]);
        }
        t.columns.push(GenColumn {
            name,
            sql,
            kind,
            not_null: keyless || rng.random_bool(0.4),
            default,
        });
    }
    t
}

fn fill_rows<R: Rng + ?Sized>(rng: &mut R, s: &mut GenSchema, max_rows: usize) {
    for i in 0..s.tables.len() {
        let t = &s.tables[i];
        let mut rows: Vec<Vec<Option<String>>> = Vec::new();
        let mut seen_keys: BTreeSet<Vec<String>> = BTreeSet::new();
        let mut used_unique: Vec<BTreeSet<Vec<String>>> = vec![BTreeSet::new(); t.uniques.len()];
        let want = rng.random_range(0..=max_rows);
        let mut attempts = 0;
        while rows.len() < want && attempts < want * 10 {
            attempts += 1;
            let n = rows.len();
            let mut row: Vec<Option<String>> = vec![None; t.columns.len()];
            // Own key columns first (those not set by a foreign key).
            let fk_cols = t.fk_columns();
            for c in &t.pk {
                if !fk_cols.contains(c.as_str()) {
                    row[t.index(c)] = Some(key_value(t.col(c).kind, n));
                }
            }
            let mut ok = true;
            for fk in &t.fks {
                let parent_rows: Vec<Vec<Option<String>>> = if fk.target == i {
                    rows.clone()
                } else {
                    s.tables[fk.target].rows.clone()
                };
                let must = fk.columns.iter().all(|c| t.col(c).not_null);
                if !must && (parent_rows.is_empty() || rng.random_bool(0.25)) {
                    continue;
                }
                let Some(parent) = parent_rows.choose(rng) else {
                    ok = false;
                    break;
                };
                let target = &s.tables[fk.target];
                for (local, remote) in fk.columns.iter().zip(&target.pk) {
                    row[t.index(local)] = parent[target.index(remote)].clone();
                }
            }
            if !ok {
                break;
            }
            for (j, c) in t.columns.iter().enumerate() {
                if row[j].is_some() || fk_cols.contains(c.name.as_str()) || t.pk.contains(&c.name) {
                    continue;
                }
                if t.pk.is_empty() {
                    // Keyless rows are identified by all their values.
                    row[j] = Some(keyless_value(c.kind, n, j));
                } else if c.not_null || rng.random_bool(0.8) {
                    row[j] = Some(random_value(rng, c.kind));
                }
            }
            let key: Vec<String> = t.key().iter().map(|c| row[t.index(c)].clone().unwrap_or_default()).collect();
            if t.key().iter().any(|c| row[t.index(c)].is_none()) || seen_keys.contains(&key) {
                continue;
            }
            let uks: Vec<Option<Vec<String>>> = t
                .uniques
                .iter()
                .map(|u| u.iter().map(|c| row[t.index(c)].clone()).collect::<Option<Vec<_>>>())
                .collect();
            if uks.iter().zip(&used_unique).any(|(k, used)| k.as_ref().is_some_and(|k| used.contains(k))) {
                continue;
            }
            for (k, used) in uks.into_iter().zip(used_unique.iter_mut()) {
                if let Some(k) = k {
                    used.insert(k);
                }
            }
            seen_keys.insert(key);
            rows.push(row);
        }
        s.tables[i].rows = rows;
    }
}

/// Deterministic distinct values for keyless tables.
fn keyless_value(kind: Kind, n: usize, j: usize) -> String {
    match kind {
        Kind::Boolean => if n.is_multiple_of(2) { "true" } else { "false" }.into(),
        Kind::Double => format!("{n}.5"),
        Kind::Decimal => format!("{n}.{}", j % 9 + 1),
        Kind::Time => format!("10:{:02}:{:02}", n, j),
        Kind::Timestamp => format!("2021-01-{:02}T00:00:{:02}", n + 1, j),
        other => key_value(other, n),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn generated_schemas_are_self_consistent() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let s = random_schema(&mut rng, GenLimits::default());
            let e = s.expected();
            assert_eq!(e.classes + e.junctions, e.relations);
            assert_eq!(e.attributes + e.fk_only_columns + e.junction_columns, e.fields);
            for t in &s.tables {
                assert!(t.columns.len() <= 10);
                let names: BTreeSet<String> = t.columns.iter().map(|c| c.name.to_lowercase()).collect();
                assert_eq!(names.len(), t.columns.len());
            }
        }
    }
}
