//! Text format for algebras and families.
//!
//! ```text
//! # comment
//! dim 4
//! basis e1 e2 e3 e4      # optional
//! [1,2] = 3
//! [1,3] = 4
//! [2,3] = t*4            # families only
//! [1,2] = (1 - t)*3 + 1/2*t^2*4
//! ```
//!
//! Indices are 1-based. In a term, the last factor is the basis index and the
//! factors before it (rationals, `t`, `t^k`, parenthesized polynomials) make up
//! the coefficient. Whitespace inside a bracket line is ignored.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::deform::DeformationFamily;
use crate::error::{Error, Result};
use crate::lie::{default_names, LieAlgebra};
use crate::linalg::{fmt_rational, Rational, Subspace};
use crate::poly::Poly;

type Brackets = BTreeMap<(usize, usize), Vec<Poly>>;

struct Parsed {
    names: Vec<String>,
    brackets: Brackets,
    line_of: BTreeMap<(usize, usize), usize>,
}

fn perr(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_document(text: &str) -> Result<Parsed> {
    let mut dim: Option<(usize, usize)> = None;
    let mut names: Option<(usize, Vec<String>)> = None;
    let mut lines: Vec<(usize, String, String)> = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let line = no + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if content.starts_with('[') {
            let (lhs, rhs) = content
                .split_once('=')
                .ok_or_else(|| perr(line, "expected `[i,j] = ...`"))?;
            let strip = |s: &str| s.chars().filter(|c| !c.is_whitespace()).collect::<String>();
            lines.push((line, strip(lhs), strip(rhs)));
            continue;
        }
        let mut words = content.split(|c: char| c.is_whitespace() || c == ',').filter(|w| !w.is_empty());
        match words.next() {
            Some("dim") => {
                if dim.is_some() {
                    return Err(perr(line, "duplicate `dim` line"));
                }
                let n = words
                    .next()
                    .and_then(|w| w.parse().ok())
                    .ok_or_else(|| perr(line, "`dim` needs a non-negative integer"))?;
                if words.next().is_some() {
                    return Err(perr(line, "unexpected text after `dim n`"));
                }
                dim = Some((line, n));
            }
            Some("basis") => {
                if names.is_some() {
                    return Err(perr(line, "duplicate `basis` line"));
                }
                names = Some((line, words.map(String::from).collect()));
            }
            _ => return Err(perr(line, format!("unrecognized line `{content}`"))),
        }
    }
    let (_, n) = dim.ok_or_else(|| perr(0, "missing `dim n` line"))?;
    let names = match names {
        Some((line, names)) => {
            if names.len() != n {
                return Err(perr(line, format!("`basis` lists {} names for dimension {n}", names.len())));
            }
            names
        }
        None => default_names(n),
    };
    let mut brackets = Brackets::new();
    let mut line_of = BTreeMap::new();
    for (line, lhs, rhs) in lines {
        let (i, j) = parse_pair(&lhs, n).map_err(|m| perr(line, m))?;
        if brackets.contains_key(&(i, j)) {
            return Err(perr(line, format!("duplicate bracket [{},{}]", i + 1, j + 1)));
        }
        let v = parse_rhs(&rhs, n).map_err(|m| perr(line, m))?;
        brackets.insert((i, j), v);
        line_of.insert((i, j), line);
    }
    Ok(Parsed {
        names,
        brackets,
        line_of,
    })
}

fn parse_pair(lhs: &str, n: usize) -> std::result::Result<(usize, usize), String> {
    let inner = lhs
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| format!("malformed bracket `{lhs}`"))?;
    let (a, b) = inner
        .split_once(',')
        .ok_or_else(|| format!("malformed bracket `{lhs}`"))?;
    let idx = |s: &str| -> std::result::Result<usize, String> {
        let k: usize = s.parse().map_err(|_| format!("bad index `{s}`"))?;
        if k == 0 || k > n {
            return Err(format!("index {k} out of range 1..={n}"));
        }
        Ok(k - 1)
    };
    let (i, j) = (idx(a)?, idx(b)?);
    if i >= j {
        return Err(format!("bracket [{},{}] must have i < j", i + 1, j + 1));
    }
    Ok((i, j))
}

enum Factor {
    Int(BigInt),
    Num(Rational),
    Poly(Poly),
}

impl Factor {
    fn into_poly(self) -> Poly {
        match self {
            Factor::Int(k) => Poly::constant(Rational::from_integer(k)),
            Factor::Num(q) => Poly::constant(q),
            Factor::Poly(p) => p,
        }
    }
}

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

type PResult<T> = std::result::Result<T, String>;

impl<'a> Cursor<'a> {
    fn new(s: &'a str) -> Self {
        Self { s: s.as_bytes(), pos: 0 }
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> PResult<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.unexpected("a number"));
        }
        let text = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits");
        Ok(text.parse().expect("digits parse"))
    }

    fn unexpected(&self, wanted: &str) -> String {
        if self.pos < self.s.len() {
            format!("expected {wanted} at `{}`", String::from_utf8_lossy(&self.s[self.pos..]))
        } else {
            format!("expected {wanted} at end of line")
        }
    }

    fn factor(&mut self) -> PResult<Factor> {
        match self.peek() {
            Some(b'0'..=b'9') => {
                let num = self.digits()?;
                if self.eat(b'/') {
                    let den = self.digits()?;
                    if den.is_zero() {
                        return Err("division by zero".into());
                    }
                    Ok(Factor::Num(Rational::new(num, den)))
                } else {
                    Ok(Factor::Int(num))
                }
            }
            Some(b't') => {
                self.pos += 1;
                let k = if self.eat(b'^') {
                    let k = self.digits()?;
                    usize::try_from(k).map_err(|_| "exponent too large".to_string())?
                } else {
                    1
                };
                Ok(Factor::Poly(Poly::monomial(Rational::one(), k)))
            }
            Some(b'(') => {
                self.pos += 1;
                let p = self.poly_sum()?;
                if !self.eat(b')') {
                    return Err(self.unexpected("`)`"));
                }
                Ok(Factor::Poly(p))
            }
            _ => Err(self.unexpected("a number, `t` or `(`")),
        }
    }

    fn product(&mut self) -> PResult<Vec<Factor>> {
        let mut out = vec![self.factor()?];
        while self.eat(b'*') {
            out.push(self.factor()?);
        }
        Ok(out)
    }

    fn sign(&mut self, first: bool) -> PResult<Option<bool>> {
        if self.eat(b'+') {
            Ok(Some(false))
        } else if self.eat(b'-') {
            Ok(Some(true))
        } else if first {
            Ok(Some(false))
        } else {
            Ok(None)
        }
    }

    fn poly_sum(&mut self) -> PResult<Poly> {
        let mut acc = Poly::zero();
        let mut first = true;
        while let Some(neg) = self.sign(first)? {
            first = false;
            let term = self
                .product()?
                .into_iter()
                .fold(Poly::one(), |acc, f| acc * f.into_poly());
            acc = if neg { acc - term } else { acc + term };
        }
        Ok(acc)
    }
}

fn parse_rhs(rhs: &str, n: usize) -> PResult<Vec<Poly>> {
    let mut v = vec![Poly::zero(); n];
    if rhs == "0" {
        return Ok(v);
    }
    if rhs.is_empty() {
        return Err("empty right-hand side".into());
    }
    let mut cur = Cursor::new(rhs);
    let mut first = true;
    while cur.peek().is_some() {
        let neg = cur.sign(first)?.ok_or_else(|| cur.unexpected("`+` or `-`"))?;
        first = false;
        let mut factors = cur.product()?;
        let index = match factors.pop() {
            Some(Factor::Int(k)) => k,
            _ => return Err("each term must end with a basis index".into()),
        };
        let k = usize::try_from(&index).ok().filter(|k| (1..=n).contains(k));
        let k = k.ok_or_else(|| format!("index {index} out of range 1..={n}"))?;
        let mut coeff = factors.into_iter().fold(Poly::one(), |acc, f| acc * f.into_poly());
        if neg {
            coeff = -coeff;
        }
        v[k - 1] = &v[k - 1] + &coeff;
    }
    Ok(v)
}

/// Parses a constant-coefficient algebra file and validates Jacobi.
pub fn parse_algebra(text: &str) -> Result<LieAlgebra> {
    let parsed = parse_document(text)?;
    let mut sc = BTreeMap::new();
    for ((i, j), v) in parsed.brackets {
        if v.iter().any(|p| !p.is_constant()) {
            return Err(perr(
                parsed.line_of[&(i, j)],
                format!("bracket [{},{}] depends on t; use a family file", i + 1, j + 1),
            ));
        }
        sc.insert((i, j), v.iter().map(|p| p.coeff(0)).collect());
    }
    LieAlgebra::new(parsed.names, sc)
}

/// Parses a family file. The base point must be a Lie algebra; the symbolic
/// Jacobi status is left to [`DeformationFamily::family_jacobi`].
pub fn parse_family(text: &str) -> Result<DeformationFamily> {
    let parsed = parse_document(text)?;
    DeformationFamily::new(parsed.names, parsed.brackets)
}

/// Parses `--subalgebra` input: 1-based indices `3,4`, or vectors
/// `(1,0,0);(0,1,1/2)` of length `n`.
pub fn parse_subspace(spec: &str, n: usize) -> Result<Subspace> {
    let spec: String = spec.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = |m: String| perr(0, format!("subalgebra `{spec}`: {m}"));
    if spec.is_empty() {
        return Ok(Subspace::zero(n));
    }
    if spec.starts_with('(') {
        let mut vectors = Vec::new();
        for chunk in spec.split(';') {
            let inner = chunk
                .strip_prefix('(')
                .and_then(|s| s.strip_suffix(')'))
                .ok_or_else(|| bad(format!("malformed vector `{chunk}`")))?;
            let v: Vec<Rational> = inner
                .split(',')
                .map(|x| x.parse::<Rational>().map_err(|_| bad(format!("bad entry `{x}`"))))
                .collect::<Result<_>>()?;
            if v.len() != n {
                return Err(bad(format!("vector has {} entries, expected {n}", v.len())));
            }
            vectors.push(v);
        }
        return Subspace::span(n, vectors);
    }
    let mut idx = Vec::new();
    for part in spec.split(',') {
        let k: usize = part.parse().map_err(|_| bad(format!("bad index `{part}`")))?;
        if k == 0 || k > n {
            return Err(bad(format!("index {k} out of range 1..={n}")));
        }
        idx.push(k - 1);
    }
    Subspace::coordinate(n, &idx)
}

fn fmt_poly_coeff(p: &Poly) -> (bool, String) {
    if p.is_constant() {
        let c = p.coeff(0);
        let neg = c < Rational::zero();
        let mag = if neg { -c } else { c };
        return (neg, if mag.is_one() { String::new() } else { fmt_rational(&mag) });
    }
    let nonzero: Vec<usize> = (0..p.coeffs().len()).filter(|&k| !p.coeff(k).is_zero()).collect();
    if let [k] = nonzero[..] {
        let neg = p.coeff(k) < Rational::zero();
        let mag = if neg { -p.clone() } else { p.clone() };
        return (neg, mag.to_string());
    }
    (false, format!("({p})"))
}

fn fmt_rhs(v: &[Poly]) -> String {
    let mut out = String::new();
    for (k, p) in v.iter().enumerate() {
        if p.is_zero() {
            continue;
        }
        let (neg, coeff) = fmt_poly_coeff(p);
        let term = if coeff.is_empty() {
            format!("{}", k + 1)
        } else {
            format!("{coeff}*{}", k + 1)
        };
        match (out.is_empty(), neg) {
            (true, false) => out.push_str(&term),
            (true, true) => write!(out, "-{term}").unwrap(),
            (false, false) => write!(out, " + {term}").unwrap(),
            (false, true) => write!(out, " - {term}").unwrap(),
        }
    }
    out
}

fn emit(names: &[String], brackets: &Brackets, header: Option<&str>) -> String {
    let mut out = String::new();
    if let Some(h) = header {
        for line in h.lines() {
            writeln!(out, "# {line}").unwrap();
        }
    }
    writeln!(out, "dim {}", names.len()).unwrap();
    if !names.is_empty() {
        writeln!(out, "basis {}", names.join(" ")).unwrap();
    }
    for ((i, j), v) in brackets {
        writeln!(out, "[{},{}] = {}", i + 1, j + 1, fmt_rhs(v)).unwrap();
    }
    out
}

pub fn emit_algebra(l: &LieAlgebra, header: Option<&str>) -> String {
    let brackets = l
        .relations()
        .iter()
        .map(|(k, v)| (*k, v.iter().cloned().map(Poly::constant).collect()))
        .collect();
    emit(l.names(), &brackets, header)
}

pub fn emit_family(f: &DeformationFamily, header: Option<&str>) -> String {
    emit(f.names(), f.relations(), header)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{builtin, builtin_algebra, heisenberg, n4_family, CatalogObject, CATALOG_KEYS};
    use crate::linalg::{int, ratio};

    #[test]
    fn parses_examples() {
        let h3 = parse_algebra("dim 3\n[1,2] = 3\n").unwrap();
        assert!(h3.same_relations(&heisenberg(1).unwrap()));
        let a2 = parse_algebra("dim 2").unwrap();
        assert!(a2.is_abelian() && a2.dim() == 2);
        let n4 = parse_algebra("dim 4\n[1,2]=3\n[1,3]=4").unwrap();
        assert!(n4.same_relations(&builtin_algebra("n4").unwrap()));
    }

    #[test]
    fn whitespace_and_comments() {
        let text = "  # heading\n dim   3 # three\nbasis X , Y Z\n[ 1 , 2 ]=  - 1 / 2 * 3 # half\n";
        let l = parse_algebra(text).unwrap();
        assert_eq!(l.names(), ["X", "Y", "Z"]);
        assert_eq!(l.bracket_basis(0, 1), vec![int(0), int(0), ratio(-1, 2)]);
    }

    #[test]
    fn family_examples() {
        let f = parse_family("dim 4\n[1,2]=3\n[1,3]=4\n[2,3]=t*4").unwrap();
        assert_eq!(f.relations(), n4_family().relations());
        let c = parse_family("dim 3\n[1,2]=3").unwrap();
        assert!(c.relations().values().flatten().all(Poly::is_constant));
        let g = parse_family("dim 4\n[1,2] = 1/2*3 + t^2*4").unwrap();
        let v = &g.relations()[&(0, 1)];
        assert_eq!(v[2], Poly::constant(ratio(1, 2)));
        assert_eq!(v[3].degree(), Some(2));
        let p = parse_family("dim 4\n[1,2] = (1 - t)*3 + t^2*4").unwrap();
        assert_eq!(p.relations()[&(0, 1)][2], Poly::new(vec![int(1), int(-1)]));
    }

    #[test]
    fn errors_carry_line_numbers() {
        let cases = [
            ("dim 3\n[1,4] = 3", 2),
            ("dim 3\n[2,1] = 3", 2),
            ("dim 3\n[1,2] = 3\n[1,2] = 3", 3),
            ("dim 3\n\n[1,2] = 3*", 3),
            ("dim 3\n[1,2] = 1/2", 2),
            ("dim 3\nfoo", 2),
            ("dim 3\n[1,2] = t*3", 2),
        ];
        for (text, line) in cases {
            match parse_algebra(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
    }

    #[test]
    fn jacobi_failure_lists_triples() {
        let err = parse_algebra("dim 3\n[1,2]=3\n[1,3]=1").unwrap_err();
        assert!(matches!(err, Error::Jacobi { ref triples } if triples == &[(0, 1, 2)]));
    }

    #[test]
    fn round_trip_every_key() {
        for key in CATALOG_KEYS {
            match builtin(key).unwrap().object {
                CatalogObject::Algebra(l) => {
                    assert_eq!(parse_algebra(&emit_algebra(&l, Some(key))).unwrap(), l, "{key}");
                }
                CatalogObject::Family(f) => {
                    assert_eq!(parse_family(&emit_family(&f, Some(key))).unwrap(), f, "{key}");
                }
            }
        }
    }

    #[test]
    fn emit_heisenberg_3() {
        let text = emit_algebra(&heisenberg(3).unwrap(), None);
        assert!(text.contains("dim 7"));
        assert_eq!(text.lines().filter(|l| l.starts_with('[')).count(), 3);
    }

    #[test]
    fn subspace_specs() {
        assert_eq!(parse_subspace("3,4", 4).unwrap(), Subspace::coordinate(4, &[2, 3]).unwrap());
        let s = parse_subspace("(1,1,0);(0,0,1/2)", 3).unwrap();
        assert_eq!(s.dim(), 2);
        assert!(parse_subspace("5", 4).is_err());
        assert!(parse_subspace("(1,0)", 3).is_err());
    }
}
