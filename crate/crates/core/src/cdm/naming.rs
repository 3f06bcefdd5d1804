use crate::mtrdb::ForeignKey;

/// What a relationship name is derived from.
#[derive(Debug, Clone, Copy)]
pub enum NameSource<'a> {
    Fk(&'a ForeignKey),
    Junction(&'a str),
}

/// Name before collision handling.
///
/// A foreign key is named after its first column with one trailing `id`
/// (any case) and trailing `_` separators removed, prefixed with `has`;
/// when nothing remains the referenced class name is used. A junction is
/// named after the junction relation in lowerCamelCase.
pub fn relationship_base_name(src: NameSource<'_>) -> String {
    match src {
        NameSource::Fk(fk) => {
            let first = fk.fk_columns.first().map(String::as_str).unwrap_or("");
            let stem = strip_id(first);
            let stem = if stem.is_empty() { fk.referenced_relation.as_str() } else { stem };
            format!("has{}", upper_camel(stem))
        }
        NameSource::Junction(name) => lower_camel(name),
    }
}

fn strip_id(name: &str) -> &str {
    let n = name.len();
    let stripped = if n >= 2 && name.is_char_boundary(n - 2) && name[n - 2..].eq_ignore_ascii_case("id") {
        &name[..n - 2]
    } else {
        name
    };
    stripped.trim_end_matches('_')
}

fn words(s: &str) -> impl Iterator<Item = &str> {
    s.split(|c: char| !c.is_alphanumeric()).filter(|w| !w.is_empty())
}

fn capitalize(w: &str) -> String {
    let mut cs = w.chars();
    match cs.next() {
        Some(c) => c.to_uppercase().chain(cs).collect(),
        None => String::new(),
    }
}

/// `customer_name` → `CustomerName`; existing inner capitals are kept.
pub fn upper_camel(s: &str) -> String {
    words(s).map(capitalize).collect()
}

/// `EmployeeStore` → `employeeStore`, `employee_store` → `employeeStore`.
pub fn lower_camel(s: &str) -> String {
    let upper = upper_camel(s);
    let mut cs = upper.chars();
    match cs.next() {
        Some(c) => c.to_lowercase().chain(cs).collect(),
        None => String::new(),
    }
}
