//! Cell text to typed literal.
//!
//! Non-string cells are trimmed of surrounding ASCII whitespace before
//! validation; string cells are kept verbatim.

use chrono::{NaiveDate, NaiveTime};

use crate::ingest::TypeKeyword;
use crate::owl::{map_type, Literal};

fn all_digits(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())
}

fn split_sign(s: &str) -> (bool, &str) {
    match s.as_bytes().first() {
        Some(b'-') => (true, &s[1..]),
        Some(b'+') => (false, &s[1..]),
        _ => (false, s),
    }
}

/// `[+-]?[0-9]+` without redundant sign or leading zeros.
fn canonical_integer(s: &str) -> Option<String> {
    let (neg, digits) = split_sign(s);
    if !all_digits(digits) {
        return None;
    }
    let trimmed = digits.trim_start_matches('0');
    Some(match (neg, trimmed) {
        (_, "") => "0".to_string(),
        (true, t) => format!("-{t}"),
        (false, t) => t.to_string(),
    })
}

/// Decimal without exponent. Fraction zeros past `scale` (all of them when
/// there is no scale) are dropped, as is a bare trailing point.
fn canonical_decimal(s: &str, scale: Option<u32>) -> Option<String> {
    let (neg, body) = split_sign(s);
    let (int, frac) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !(int.is_empty() || all_digits(int)) || !(frac.is_empty() || all_digits(frac)) {
        return None;
    }
    let int = match int.trim_start_matches('0') {
        "" => "0",
        i => i,
    };
    let keep = scale.unwrap_or(0) as usize;
    let mut frac = frac;
    while frac.len() > keep && frac.ends_with('0') {
        frac = &frac[..frac.len() - 1];
    }
    let zero = int == "0" && frac.bytes().all(|b| b == b'0');
    let sign = if neg && !zero { "-" } else { "" };
    Some(if frac.is_empty() {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac}")
    })
}

fn valid_double(s: &str) -> Option<String> {
    match s.to_ascii_uppercase().as_str() {
        "INF" | "+INF" | "INFINITY" | "+INFINITY" => return Some("INF".into()),
        "-INF" | "-INFINITY" => return Some("-INF".into()),
        "NAN" => return Some("NaN".into()),
        _ => {}
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], Some(&s[i + 1..])),
        None => (s, None),
    };
    canonical_decimal(mantissa, None)?;
    if let Some(e) = exp {
        let (_, digits) = split_sign(e);
        if !all_digits(digits) {
            return None;
        }
    }
    Some(s.strip_prefix('+').unwrap_or(s).to_string())
}

/// `YYYY-MM-DD`, checked for calendar validity.
fn valid_date(s: &str) -> bool {
    let b = s.as_bytes();
    s.is_ascii()
        && b.len() == 10
        && b[4] == b'-'
        && b[7] == b'-'
        && [0..4, 5..7, 8..10].into_iter().all(|r| all_digits(&s[r]))
        && NaiveDate::parse_from_str(s, "%Y-%m-%d").is_ok()
}

/// Split an optional `Z` or `±HH:MM` zone suffix off a time.
fn split_zone(s: &str) -> Option<(&str, &str)> {
    if let Some(t) = s.strip_suffix('Z') {
        return Some((t, "Z"));
    }
    if s.len() > 6 {
        let (t, z) = s.split_at(s.len() - 6);
        let zb = z.as_bytes();
        if matches!(zb[0], b'+' | b'-') {
            let ok = all_digits(&z[1..3]) && zb[3] == b':' && all_digits(&z[4..6]);
            let in_range = ok && z[1..3].parse::<u32>().unwrap() <= 14 && z[4..6].parse::<u32>().unwrap() < 60;
            return in_range.then_some((t, z));
        }
    }
    Some((s, ""))
}

/// `HH:MM:SS[.fff][zone]`.
fn valid_time(s: &str) -> bool {
    if !s.is_ascii() {
        return false;
    }
    let Some((t, _)) = split_zone(s) else { return false };
    let b = t.as_bytes();
    if b.len() < 8 || b[2] != b':' || b[5] != b':' {
        return false;
    }
    let frac_ok = match &t[8..] {
        "" => true,
        f => f.strip_prefix('.').is_some_and(all_digits),
    };
    frac_ok
        && [0..2, 3..5, 6..8].into_iter().all(|r| all_digits(&t[r]))
        && &t[6..8] < "60"
        && NaiveTime::parse_from_str(&t[..8], "%H:%M:%S").is_ok()
}

/// XML 1.0 cannot carry most C0 controls, even escaped.
fn representable(s: &str) -> bool {
    s.chars()
        .all(|c| !matches!(c, '\u{0}'..='\u{8}' | '\u{B}' | '\u{C}' | '\u{E}'..='\u{1F}' | '\u{FFFE}' | '\u{FFFF}'))
}

/// Validate and canonicalize one non-NULL cell for a column type.
pub fn coerce_literal(cell: &str, a_t: TypeKeyword, scale: Option<u32>) -> Result<Literal, String> {
    use TypeKeyword::*;
    let datatype = map_type(a_t, None);
    let v = cell.trim_matches(|c: char| c.is_ascii_whitespace());
    let bad = |what: &str| format!("`{cell}` is not a valid {what}");
    let lexical = match a_t {
        Int | Integer | SmallInt => canonical_integer(v).ok_or_else(|| bad("integer"))?,
        BigInt => {
            let c = canonical_integer(v).ok_or_else(|| bad("integer"))?;
            c.parse::<i64>().map_err(|_| format!("`{cell}` is out of range for BIGINT"))?;
            c
        }
        Decimal | Numeric => canonical_decimal(v, scale).ok_or_else(|| bad("decimal"))?,
        Float | Real | Double => valid_double(v).ok_or_else(|| bad("floating-point number"))?,
        Boolean => match v.to_ascii_lowercase().as_str() {
            "1" | "true" => "true".into(),
            "0" | "false" => "false".into(),
            _ => return Err(bad("boolean (expected 0, 1, true or false)")),
        },
        Date if valid_date(v) => v.to_string(),
        Date => return Err(bad("date (expected YYYY-MM-DD)")),
        Time if valid_time(v) => v.to_string(),
        Time => return Err(bad("time (expected HH:MM:SS)")),
        Timestamp | Datetime => {
            let ok = v.is_ascii() && v.len() > 11 && matches!(v.as_bytes()[10], b'T' | b' ') && valid_date(&v[..10]) && valid_time(&v[11..]);
            if !ok {
                return Err(bad("timestamp (expected YYYY-MM-DDTHH:MM:SS)"));
            }
            format!("{}T{}", &v[..10], &v[11..])
        }
        Char | Varchar | Text => {
            if !representable(cell) {
                return Err(format!("{cell:?} contains a control character that cannot be written to RDF/XML"));
            }
            cell.to_string()
        }
    };
    Ok(Literal::typed(lexical, datatype))
}

#[cfg(test)]
mod tests {
    use super::*;
    use TypeKeyword::*;

    fn lex(cell: &str, t: TypeKeyword) -> String {
        coerce_literal(cell, t, None).unwrap().lexical
    }

    #[test]
    fn integers() {
        assert_eq!(lex("42", Int), "42");
        assert_eq!(lex("+007", Int), "7");
        assert_eq!(lex("-0", Int), "0");
        assert_eq!(lex(" 5 ", SmallInt), "5");
        assert_eq!(lex("123456789012345678901234567890", Integer), "123456789012345678901234567890");
        assert!(coerce_literal("abc", Int, None).is_err());
        assert!(coerce_literal("1.0", Int, None).is_err());
        assert!(coerce_literal("", Int, None).is_err());
        assert!(coerce_literal("9223372036854775808", BigInt, None).is_err());
        assert_eq!(lex("-9223372036854775808", BigInt), "-9223372036854775808");
    }

    #[test]
    fn decimals() {
        assert_eq!(coerce_literal("999.99", Decimal, Some(2)).unwrap(), Literal::typed("999.99", crate::owl::Iri::xsd("decimal")));
        assert_eq!(coerce_literal("1.500", Decimal, Some(2)).unwrap().lexical, "1.50");
        assert_eq!(coerce_literal("1.500", Decimal, None).unwrap().lexical, "1.5");
        assert_eq!(coerce_literal("2.", Numeric, None).unwrap().lexical, "2");
        assert_eq!(coerce_literal(".5", Decimal, None).unwrap().lexical, "0.5");
        assert_eq!(coerce_literal("-0.00", Decimal, None).unwrap().lexical, "0");
        assert_eq!(coerce_literal("-000.10", Decimal, Some(0)).unwrap().lexical, "-0.1");
        assert!(coerce_literal("1e3", Decimal, None).is_err());
        assert!(coerce_literal(".", Decimal, None).is_err());
        assert!(coerce_literal("1.2.3", Decimal, None).is_err());
    }

    #[test]
    fn doubles() {
        assert_eq!(lex("1.5e10", Double), "1.5e10");
        assert_eq!(lex("+2E-3", Float), "2E-3");
        assert_eq!(lex("inf", Real), "INF");
        assert_eq!(lex("NaN", Double), "NaN");
        assert!(coerce_literal("1e", Double, None).is_err());
        assert!(coerce_literal("e5", Double, None).is_err());
    }

    #[test]
    fn booleans() {
        assert_eq!(lex("1", Boolean), "true");
        assert_eq!(lex("FALSE", Boolean), "false");
        assert!(coerce_literal("yes", Boolean, None).is_err());
    }

    #[test]
    fn dates_and_times() {
        assert_eq!(lex("2024-02-29", Date), "2024-02-29");
        assert!(coerce_literal("2023-02-29", Date, None).is_err());
        assert!(coerce_literal("2024-2-9", Date, None).is_err());
        assert_eq!(lex("23:59:59.250", Time), "23:59:59.250");
        assert_eq!(lex("10:00:00+02:00", Time), "10:00:00+02:00");
        assert!(coerce_literal("24:00:01", Time, None).is_err());
        assert!(coerce_literal("10:00", Time, None).is_err());
        assert!(coerce_literal("23:59:60", Time, None).is_err());
        assert!(coerce_literal("ééééééééé", Time, None).is_err());
        assert!(coerce_literal("éééééééééé", Timestamp, None).is_err());
        assert_eq!(lex("2024-01-05 10:30:00", Timestamp), "2024-01-05T10:30:00");
        assert_eq!(lex("2024-01-05T10:30:00Z", Datetime), "2024-01-05T10:30:00Z");
        assert!(coerce_literal("2024-01-05", Timestamp, None).is_err());
    }

    #[test]
    fn strings_are_verbatim() {
        assert_eq!(lex("  padded ", Varchar), "  padded ");
        assert_eq!(lex("", Text), "");
        assert!(coerce_literal("a\u{1}b", Text, None).is_err());
    }
}
