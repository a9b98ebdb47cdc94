//! Text formats: the entry syntax and the `hadamat-matrix v1` file.
//!
//! An entry is one of
//!
//! * an integer literal, `-1`, `0`, `3`;
//! * a root of unity `zN^k`, meaning `ζ_N^k` (optionally negated, `-zN^k`);
//!   `N` must divide the file's order;
//! * a coefficient list `[c0,c1,...]` of exactly `φ(M)` rationals `p/q` in the
//!   power basis of `Q(ζ_M)`.
//!
//! A matrix file is
//!
//! ```text
//! hadamat-matrix v1
//! order 3
//! dim 3
//! scale 0
//! 1 1 1
//! 1 z3^1 z3^2
//! 1 z3^2 z3^1
//! ```
//!
//! The printer always emits the canonical spelling: integers as literals,
//! roots of unity as `zM^k` with `0 <= k < M`, everything else as a list.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::cyclotomic::{totient, CycloNum, MAX_ORDER};
use crate::matrix::CycloMatrix;

pub const MATRIX_HEADER: &str = "hadamat-matrix v1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            message: message.into(),
        }
    }
}

fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Canonical entry spelling.
pub fn format_entry(x: &CycloNum) -> String {
    if let Some(n) = x.as_integer() {
        return n.to_string();
    }
    if let Some(k) = x.root_exponent() {
        return format!("z{}^{}", x.order(), k);
    }
    let mut out = String::from("[");
    for (k, c) in x.coeffs().iter().enumerate() {
        if k > 0 {
            out.push(',');
        }
        out.push_str(&format_rational(c));
    }
    out.push(']');
    out
}

fn parse_rational(text: &str) -> Result<BigRational, String> {
    let text = text.trim();
    let (n, d) = match text.split_once('/') {
        Some((n, d)) => (n, d),
        None => (text, "1"),
    };
    let n: BigInt = n
        .trim()
        .parse()
        .map_err(|_| format!("invalid rational {text:?}"))?;
    let d: BigInt = d
        .trim()
        .parse()
        .map_err(|_| format!("invalid rational {text:?}"))?;
    if d.is_zero() {
        return Err(format!("zero denominator in {text:?}"));
    }
    Ok(BigRational::new(n, d))
}

/// Parses a `zN^k` token (without sign) into `(N, k)`.
fn parse_root(text: &str) -> Result<(u32, i64), String> {
    let body = text
        .strip_prefix('z')
        .ok_or_else(|| format!("invalid entry {text:?}"))?;
    let (n, k) = body
        .split_once('^')
        .ok_or_else(|| format!("root {text:?} needs an exponent, e.g. z5^1"))?;
    let n: u32 = n.parse().map_err(|_| format!("invalid root order in {text:?}"))?;
    let k: i64 = k.parse().map_err(|_| format!("invalid exponent in {text:?}"))?;
    if n == 0 || n > MAX_ORDER {
        return Err(format!("unsupported root order {n} in {text:?}"));
    }
    Ok((n, k))
}

/// The smallest root order an entry needs (1 for integers and lists).
pub fn entry_min_order(text: &str) -> Result<u32, String> {
    let t = text.trim();
    let t = t.strip_prefix('-').unwrap_or(t);
    if t.starts_with('z') {
        Ok(parse_root(t)?.0)
    } else {
        Ok(1)
    }
}

/// Parses one entry into `Q(ζ_order)`.
pub fn parse_entry(text: &str, order: u32) -> Result<CycloNum, String> {
    let t = text.trim();
    if let Some(list) = t.strip_prefix('[') {
        let list = list
            .strip_suffix(']')
            .ok_or_else(|| format!("unterminated coefficient list {t:?}"))?;
        let coeffs = list
            .split(',')
            .map(parse_rational)
            .collect::<Result<Vec<_>, _>>()?;
        let want = totient(order);
        if coeffs.len() != want {
            return Err(format!(
                "coefficient list has {} entries; order {order} needs exactly {want}",
                coeffs.len()
            ));
        }
        return CycloNum::from_coeffs(order, &coeffs).map_err(|e| e.to_string());
    }
    let (negate, body) = match t.strip_prefix('-') {
        Some(rest) if rest.starts_with('z') => (true, rest),
        _ => (false, t),
    };
    if body.starts_with('z') {
        let (n, k) = parse_root(body)?;
        if !order.is_multiple_of(n) {
            return Err(format!("z{n} does not live in Q(zeta_{order})"));
        }
        let r = CycloNum::root_of_unity(n, k)
            .and_then(|r| r.embed(order))
            .map_err(|e| e.to_string())?;
        return Ok(if negate { -r } else { r });
    }
    let n: i64 = t.parse().map_err(|_| format!("invalid entry {t:?}"))?;
    Ok(CycloNum::from_integer(order, n))
}

/// Serializes a matrix in the canonical file format (newline-terminated).
pub fn format_matrix(m: &CycloMatrix) -> String {
    let mut out = String::new();
    writeln!(out, "{MATRIX_HEADER}").unwrap();
    writeln!(out, "order {}", m.order()).unwrap();
    writeln!(out, "dim {}", m.dim()).unwrap();
    writeln!(out, "scale {}", m.scale_exp()).unwrap();
    for row in m.rows() {
        let cells: Vec<String> = row.iter().map(format_entry).collect();
        writeln!(out, "{}", cells.join(" ")).unwrap();
    }
    out
}

fn header_value<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
    key: &str,
) -> Result<u64, ParseError> {
    let (no, line) = lines
        .next()
        .ok_or_else(|| ParseError::new(0, format!("missing `{key}` line")))?;
    let value = line
        .strip_prefix(key)
        .and_then(|rest| rest.strip_prefix(' '))
        .ok_or_else(|| ParseError::new(no, format!("expected `{key} <n>`, found {line:?}")))?;
    value
        .trim()
        .parse()
        .map_err(|_| ParseError::new(no, format!("invalid {key} value {value:?}")))
}

/// Parses a matrix file.
pub fn parse_matrix(text: &str) -> Result<CycloMatrix, ParseError> {
    if text.starts_with('\u{feff}') {
        return Err(ParseError::new(1, "byte-order mark is not allowed"));
    }
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim_end()));
    match lines.next() {
        Some((_, MATRIX_HEADER)) => {}
        Some((no, other)) => {
            return Err(ParseError::new(
                no,
                format!("expected header {MATRIX_HEADER:?}, found {other:?}"),
            ))
        }
        None => return Err(ParseError::new(1, "empty input")),
    }
    let order = header_value(&mut lines, "order")?;
    if order == 0 || order > MAX_ORDER as u64 {
        return Err(ParseError::new(2, format!("unsupported order {order}")));
    }
    let order = order as u32;
    let dim = header_value(&mut lines, "dim")? as usize;
    if dim == 0 {
        return Err(ParseError::new(3, "dimension must be positive"));
    }
    let scale = header_value(&mut lines, "scale")? as u32;

    let mut entries = Vec::with_capacity(dim * dim);
    let mut rows = 0;
    for (no, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        if rows == dim {
            return Err(ParseError::new(no, "more rows than `dim`"));
        }
        let cells: Vec<&str> = line.split_whitespace().collect();
        if cells.len() != dim {
            return Err(ParseError::new(
                no,
                format!("expected {dim} entries, found {}", cells.len()),
            ));
        }
        for cell in cells {
            entries.push(parse_entry(cell, order).map_err(|m| ParseError::new(no, m))?);
        }
        rows += 1;
    }
    if rows != dim {
        return Err(ParseError::new(
            4 + rows,
            format!("expected {dim} rows, found {rows}"),
        ));
    }
    Ok(CycloMatrix::new(dim, order, entries)
        .expect("entries parsed at the declared order")
        .with_scale_exp(scale))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entry_spellings() {
        let z = |m, k| CycloNum::root_of_unity(m, k).unwrap();
        assert_eq!(format_entry(&CycloNum::from_integer(60, -1)), "-1");
        assert_eq!(format_entry(&z(60, 17)), "z60^17");
        assert_eq!(format_entry(&CycloNum::zero(60)), "0");
        let half = CycloNum::from_rational(3, BigRational::new(1.into(), 2.into())) + &z(3, 1);
        assert_eq!(format_entry(&half), "[1/2,1]");
        assert_eq!(parse_entry("[1/2,1]", 3).unwrap(), half);
        assert_eq!(parse_entry("z3^1", 60).unwrap(), z(60, 20));
        assert_eq!(parse_entry("-z4^1", 4).unwrap(), z(4, 3));
        assert_eq!(parse_entry(" 7 ", 5).unwrap(), CycloNum::from_integer(5, 7));
        assert!(parse_entry("z7^1", 60).is_err());
        assert!(parse_entry("[1,2,3]", 3).is_err());
        assert!(parse_entry("[1/0,1]", 3).is_err());
        assert!(parse_entry("zeta", 3).is_err());
        assert!(parse_entry("z3", 3).is_err());
    }

    #[test]
    fn matrix_file_round_trip() {
        let text = "hadamat-matrix v1\norder 3\ndim 3\nscale 1\n1 1 1\n1 z3^1 z3^2\n1 z3^2 z3^1\n";
        let m = parse_matrix(text).unwrap();
        assert_eq!(m.scale_exp(), 1);
        assert_eq!(format_matrix(&m), text);
    }

    #[test]
    fn matrix_file_errors() {
        let bad_count = "hadamat-matrix v1\norder 3\ndim 2\nscale 0\n1 1 1\n1 1\n";
        assert_eq!(parse_matrix(bad_count).unwrap_err().line, 5);
        let missing_row = "hadamat-matrix v1\norder 3\ndim 2\nscale 0\n1 1\n";
        assert!(parse_matrix(missing_row).is_err());
        let extra_row = "hadamat-matrix v1\norder 3\ndim 1\nscale 0\n1\n1\n";
        assert!(parse_matrix(extra_row).is_err());
        assert!(parse_matrix("hadamat-matrix v2\n").is_err());
        assert!(parse_matrix("hadamat-matrix v1\norder 0\ndim 1\nscale 0\n1\n").is_err());
        let long_list = "hadamat-matrix v1\norder 3\ndim 1\nscale 0\n[1,0,0]\n";
        assert!(parse_matrix(long_list).is_err());
        assert!(parse_matrix("\u{feff}hadamat-matrix v1\norder 1\ndim 1\nscale 0\n1\n").is_err());
    }
}
