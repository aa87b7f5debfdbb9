//! Plain-text code and matrix files.
//!
//! ```text
//! # perfect-forge code v1
//! q=2 p=2 k=1 n=3 count=2
//! 0 0 0
//! 1 1 1
//! ```
//!
//! Matrices use `# perfect-forge matrix v1` and `rows=`/`cols=` in place of
//! `n=`/`count=`. A `modulus=` field appears only for non-default moduli.
//! Code writers emit sorted words; readers accept any order.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::fqla::{ExplicitCode, FqMatrix, FqVector};
use crate::gf::Field;

pub const CODE_MAGIC: &str = "# perfect-forge code v1";
pub const MATRIX_MAGIC: &str = "# perfect-forge matrix v1";

pub(crate) fn field_header(field: &Field) -> String {
    let mut s = format!("q={} p={} k={}", field.q(), field.p(), field.k());
    if !field.has_default_modulus() {
        let m: Vec<String> = field.modulus().iter().map(|c| c.to_string()).collect();
        write!(s, " modulus={}", m.join(",")).unwrap();
    }
    s
}

/// `key=value` pairs of a header line.
pub(crate) fn parse_header(line: &str, lineno: usize) -> Result<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for tok in line.split_whitespace() {
        let (k, v) = tok
            .split_once('=')
            .ok_or_else(|| Error::parse(lineno, format!("expected key=value, found {tok:?}")))?;
        map.insert(k.to_string(), v.to_string());
    }
    Ok(map)
}

pub(crate) fn header_usize(h: &BTreeMap<String, String>, key: &str, lineno: usize) -> Result<usize> {
    h.get(key)
        .ok_or_else(|| Error::parse(lineno, format!("missing {key}=")))?
        .parse()
        .map_err(|_| Error::parse(lineno, format!("{key}= is not a number")))
}

pub(crate) fn header_field(h: &BTreeMap<String, String>, lineno: usize) -> Result<Field> {
    let q = header_usize(h, "q", lineno)? as u32;
    let p = header_usize(h, "p", lineno)? as u32;
    let k = header_usize(h, "k", lineno)? as u32;
    let modulus: Option<Vec<u32>> = h
        .get("modulus")
        .map(|m| {
            m.split(',')
                .map(|c| c.parse().map_err(|_| Error::parse(lineno, "bad modulus coefficient")))
                .collect::<Result<_>>()
        })
        .transpose()?;
    let field = Field::new(p, k, modulus.as_deref())?;
    if field.q() != q {
        return Err(Error::parse(lineno, format!("q={q} does not match p^k")));
    }
    Ok(field)
}

pub(crate) fn parse_symbols(field: &Field, line: &str, n: usize, lineno: usize) -> Result<FqVector> {
    let syms: Vec<u32> = line
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| Error::parse(lineno, format!("bad symbol {t:?}"))))
        .collect::<Result<_>>()?;
    if syms.len() != n {
        return Err(Error::parse(
            lineno,
            format!("expected {n} symbols, found {}", syms.len()),
        ));
    }
    FqVector::from_field_symbols(field, &syms).map_err(|e| Error::parse(lineno, e.to_string()))
}

pub fn write_code(code: &ExplicitCode) -> String {
    let mut s = String::with_capacity(code.len() * (2 * code.n() + 1) + 64);
    writeln!(s, "{CODE_MAGIC}").unwrap();
    writeln!(s, "{} n={} count={}", field_header(code.field()), code.n(), code.len()).unwrap();
    for w in code.iter() {
        writeln!(s, "{w}").unwrap();
    }
    s
}

pub fn read_code(text: &str) -> Result<ExplicitCode> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    match lines.next() {
        Some((_, l)) if l.trim() == CODE_MAGIC => {}
        _ => return Err(Error::parse(1, format!("expected {CODE_MAGIC:?}"))),
    }
    let (hl, header) = lines.next().ok_or_else(|| Error::parse(2, "missing header"))?;
    let h = parse_header(header, hl)?;
    let field = header_field(&h, hl)?;
    let n = header_usize(&h, "n", hl)?;
    let count = header_usize(&h, "count", hl)?;
    let mut words = Vec::with_capacity(count);
    for (ln, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        words.push(parse_symbols(&field, line, n, ln)?);
    }
    if words.len() != count {
        return Err(Error::parse(
            hl,
            format!("count={count} but {} words follow", words.len()),
        ));
    }
    let code = ExplicitCode::new(field, n, words)?;
    if code.len() != count {
        return Err(Error::parse(hl, "duplicate words"));
    }
    Ok(code)
}

pub fn write_matrix(m: &FqMatrix) -> String {
    let mut s = String::new();
    writeln!(s, "{MATRIX_MAGIC}").unwrap();
    write_matrix_body(&mut s, m);
    s
}

pub(crate) fn write_matrix_body(s: &mut String, m: &FqMatrix) {
    writeln!(s, "{} rows={} cols={}", field_header(m.field()), m.rows(), m.cols()).unwrap();
    for r in 0..m.rows() {
        writeln!(s, "{}", m.row(r)).unwrap();
    }
}

pub fn read_matrix(text: &str) -> Result<FqMatrix> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l)).peekable();
    match lines.next() {
        Some((_, l)) if l.trim() == MATRIX_MAGIC => {}
        _ => return Err(Error::parse(1, format!("expected {MATRIX_MAGIC:?}"))),
    }
    read_matrix_body(&mut lines)
}

pub(crate) fn read_matrix_body<'a>(lines: &mut impl Iterator<Item = (usize, &'a str)>) -> Result<FqMatrix> {
    let (hl, header) = lines.next().ok_or_else(|| Error::parse(0, "missing matrix header"))?;
    let h = parse_header(header, hl)?;
    let field = header_field(&h, hl)?;
    let rows = header_usize(&h, "rows", hl)?;
    let cols = header_usize(&h, "cols", hl)?;
    let mut vs = Vec::with_capacity(rows);
    for _ in 0..rows {
        let (ln, line) = lines.next().ok_or_else(|| Error::parse(hl, "matrix truncated"))?;
        vs.push(parse_symbols(&field, line, cols, ln)?);
    }
    FqMatrix::from_rows(field, cols, &vs)
}
