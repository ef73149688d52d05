//! Toric lines, arrangements and the plain-text arrangement format.
//!
//! A toric line `[a, b | c]` is the image in `T² = R²/Z²` of the affine line
//! `a·x + b·y = c`. With `(a, b)` coprime the image is a single circle. The
//! pairs `[a, b | c]` and `[−a, −b | −c mod 1]` describe the same set; the
//! canonical representative has `a > 0`, or `a = 0` and `b > 0`, and
//! `0 ≤ c < 1`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::lattice::gcd;

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArrangementError {
    #[error("normal vector (0, 0) does not define a line")]
    ZeroNormal,
    #[error("normal ({a}, {b}) is not primitive (gcd {gcd}); use the @split directive to split it")]
    NotPrimitive { a: i64, b: i64, gcd: u64 },
    #[error("line {line} appears more than once (positions {first} and {second})")]
    DuplicateLine {
        line: String,
        first: usize,
        second: usize,
    },
    #[error("arrangement is not essential: all normals are parallel")]
    NotEssential,
    #[error("arrangement has no lines")]
    Empty,
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
}

/// `r mod 1`, in `[0, 1)`.
pub fn frac(r: &Rational) -> Rational {
    r - r.floor()
}

pub fn rational(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn integer(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Formats a rational as `p/q`, or `p` when the denominator is 1.
pub fn format_rational(r: &Rational) -> String {
    if r.denom() == &BigInt::from(1) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p/q` or a plain integer. Returns `None` on malformed input or a
/// zero denominator.
pub fn parse_rational(s: &str) -> Option<Rational> {
    match s.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p).ok()?;
            let q = BigInt::from_str(q).ok()?;
            if q.is_zero() || q.is_negative() {
                return None;
            }
            Some(Rational::new(p, q))
        }
        None => BigInt::from_str(s).ok().map(Rational::from_integer),
    }
}

/// A canonical toric line. Field order gives the lexicographic `(a, b, c)`
/// ordering used for serialization and enumeration.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ToricLine {
    a: i64,
    b: i64,
    c: Rational,
}

impl ToricLine {
    /// Canonical representative of `[a, b | c]`. The normal must be primitive.
    pub fn new(a: i64, b: i64, c: Rational) -> Result<Self, ArrangementError> {
        if a == 0 && b == 0 {
            return Err(ArrangementError::ZeroNormal);
        }
        let g = gcd(a, b);
        if g != 1 {
            return Err(ArrangementError::NotPrimitive { a, b, gcd: g });
        }
        let (a, b, c) = if a < 0 || (a == 0 && b < 0) {
            (-a, -b, -c)
        } else {
            (a, b, c)
        };
        Ok(Self { a, b, c: frac(&c) })
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn intercept(&self) -> &Rational {
        &self.c
    }

    /// Primitive direction `(−b, a)` along the line.
    pub fn direction(&self) -> (i64, i64) {
        (-self.b, self.a)
    }

    pub fn is_parallel_to(&self, other: &ToricLine) -> bool {
        self.a == other.a && self.b == other.b
    }

    /// Exact test of `a·x + b·y ≡ c (mod 1)`.
    pub fn contains(&self, x: &Rational, y: &Rational) -> bool {
        let lhs = x * integer(self.a) + y * integer(self.b) - &self.c;
        lhs.is_integer()
    }
}

impl fmt::Display for ToricLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}|{}]", self.a, self.b, format_rational(&self.c))
    }
}

/// Canonicalizes `[a, b | c]`; alias of [`ToricLine::new`].
pub fn canonicalize_line(a: i64, b: i64, c: Rational) -> Result<ToricLine, ArrangementError> {
    ToricLine::new(a, b, c)
}

/// For `d = gcd(a, b)`, the set `a·x + b·y ≡ c` is the union of the `d`
/// lines `[a/d, b/d | (c + k)/d]`, `k = 0..d`.
pub fn split_non_primitive(a: i64, b: i64, c: Rational) -> Result<Vec<ToricLine>, ArrangementError> {
    if a == 0 && b == 0 {
        return Err(ArrangementError::ZeroNormal);
    }
    let d = gcd(a, b) as i64;
    (0..d)
        .map(|k| ToricLine::new(a / d, b / d, (&c + integer(k)) / integer(d)))
        .collect()
}

/// Duplicate-free, essential collection of toric lines.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Arrangement {
    lines: Vec<ToricLine>,
    label: Option<String>,
}

impl Arrangement {
    pub fn new(lines: Vec<ToricLine>) -> Result<Self, ArrangementError> {
        if lines.is_empty() {
            return Err(ArrangementError::Empty);
        }
        for (j, line) in lines.iter().enumerate() {
            if let Some(i) = lines[..j].iter().position(|l| l == line) {
                return Err(ArrangementError::DuplicateLine {
                    line: line.to_string(),
                    first: i,
                    second: j,
                });
            }
        }
        if lines.iter().all(|l| l.is_parallel_to(&lines[0])) {
            return Err(ArrangementError::NotEssential);
        }
        Ok(Self { lines, label: None })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn lines(&self) -> &[ToricLine] {
        &self.lines
    }

    pub fn line(&self, index: usize) -> &ToricLine {
        &self.lines[index]
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    /// Same arrangement with lines in `(a, b, c)` order and no label.
    pub fn canonical(&self) -> Arrangement {
        let mut lines = self.lines.clone();
        lines.sort();
        Arrangement { lines, label: None }
    }

    /// Canonical text form: one `a b c` row per line, sorted.
    pub fn serialize(&self) -> String {
        let mut lines: Vec<&ToricLine> = self.lines.iter().collect();
        lines.sort();
        let mut out = String::new();
        for l in lines {
            out.push_str(&format!("{} {} {}\n", l.a, l.b, format_rational(&l.c)));
        }
        out
    }

    /// Single-line form `[a,b|c];[a,b|c];...` in canonical order, used for
    /// witnesses in reports.
    pub fn compact(&self) -> String {
        let mut lines: Vec<&ToricLine> = self.lines.iter().collect();
        lines.sort();
        lines
            .iter()
            .map(|l| l.to_string())
            .collect::<Vec<_>>()
            .join(";")
    }
}

impl fmt::Display for Arrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body = self
            .lines
            .iter()
            .map(|l| l.to_string())
            .collect::<Vec<_>>()
            .join(", ");
        write!(f, "{{{body}}}")
    }
}

pub fn build_arrangement(lines: Vec<ToricLine>) -> Result<Arrangement, ArrangementError> {
    Arrangement::new(lines)
}

/// Parses the arrangement text format.
///
/// ```text
/// @split        # optional, must be the first directive
/// 1 2 0
/// 2 1 1/3       # a b c, with c an integer or p/q
/// ```
pub fn parse_arrangement(text: &str) -> Result<Arrangement, ArrangementError> {
    let mut split = false;
    let mut seen_content = false;
    let mut lines = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let lineno = lineno + 1;
        let content = raw.split('#').next().unwrap_or("");
        let tokens = tokenize(content);
        let Some(&(first_col, first)) = tokens.first() else {
            continue;
        };
        let syntax = |column: usize, message: String| ArrangementError::Syntax {
            line: lineno,
            column,
            message,
        };

        if let Some(directive) = first.strip_prefix('@') {
            if directive != "split" {
                return Err(syntax(first_col, format!("unknown directive `{first}`")));
            }
            if seen_content {
                return Err(syntax(
                    first_col,
                    "@split must precede all lines".to_string(),
                ));
            }
            if let Some(&(col, extra)) = tokens.get(1) {
                return Err(syntax(col, format!("unexpected token `{extra}` after @split")));
            }
            split = true;
            seen_content = true;
            continue;
        }
        seen_content = true;

        if tokens.len() != 3 {
            let column = tokens.get(3).map_or(content.trim_end().len() + 1, |t| t.0);
            return Err(syntax(
                column,
                format!("expected `a b c`, found {} token(s)", tokens.len()),
            ));
        }
        let parse_int = |(col, tok): (usize, &str)| {
            tok.parse::<i64>()
                .map_err(|_| syntax(col, format!("expected an integer, found `{tok}`")))
        };
        let a = parse_int(tokens[0])?;
        let b = parse_int(tokens[1])?;
        let (ccol, ctok) = tokens[2];
        let c = parse_rational(ctok)
            .ok_or_else(|| syntax(ccol, format!("expected `p/q` or an integer, found `{ctok}`")))?;

        if split {
            lines.extend(split_non_primitive(a, b, c)?);
        } else {
            lines.push(ToricLine::new(a, b, c)?);
        }
    }
    Arrangement::new(lines)
}

/// Whitespace-separated tokens with their 1-based character columns.
fn tokenize(s: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    for (i, ch) in s.char_indices() {
        if ch.is_whitespace() {
            if let Some(st) = start.take() {
                out.push((st, &s[st..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(st) = start {
        out.push((st, &s[st..]));
    }
    out.into_iter()
        .map(|(byte, tok)| (s[..byte].chars().count() + 1, tok))
        .collect()
}

impl FromStr for Arrangement {
    type Err = ArrangementError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_arrangement(s)
    }
}
