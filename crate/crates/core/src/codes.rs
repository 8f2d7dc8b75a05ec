//! The code model `C(D)`: defining multisets, codeword evaluation,
//! supports, covering, and weight distributions.
//!
//! A generator matrix is stored column-wise as the ordered multiset
//! `D = {d_1, ..., d_n}` of vectors in `GF(q)^k`; the codeword of a
//! message `x` is `(<x,d_1>, ..., <x,d_n>)`. Column order is significant
//! and preserved by serialization.

use std::collections::BTreeMap;
use std::fmt;
use std::io::{BufRead, Write};
use std::sync::Arc;

use thiserror::Error;

use crate::gf::{make_field, make_field_from_order, FieldElement, FieldSpec};
use crate::linalg::{self, LinalgError, Vector};

/// Enumerating all `q^k` messages is refused above this bound.
pub const MESSAGE_ENUMERATION_CAP: u64 = 1 << 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodesError {
    #[error("defining set must contain at least one column")]
    Empty,
    #[error("column {index} has length {got}, expected {expected}")]
    ColumnLengthMismatch {
        index: usize,
        expected: usize,
        got: usize,
    },
    #[error("columns belong to different fields")]
    FieldMismatch,
    #[error("length n = {n} is smaller than dimension k = {k}")]
    LengthBelowDimension { n: usize, k: usize },
    #[error("defining set has rank {0}, not full rank k")]
    RankDeficient(usize),
    #[error("message space q^k = {size} exceeds the enumeration cap {cap}")]
    EnumerationTooLarge { size: u64, cap: u64 },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// The ordered multiset `D` of column vectors defining the code `C(D)`.
#[derive(Clone, PartialEq, Eq)]
pub struct DefiningSet {
    columns: Vec<Vector>,
    k: usize,
    field: Arc<FieldSpec>,
}

impl DefiningSet {
    pub fn new(columns: Vec<Vector>) -> Result<DefiningSet, CodesError> {
        let first = columns.first().ok_or(CodesError::Empty)?;
        let k = first.len();
        let field = first.field().clone();
        if k < 1 {
            return Err(CodesError::ColumnLengthMismatch {
                index: 0,
                expected: 1,
                got: 0,
            });
        }
        for (i, c) in columns.iter().enumerate() {
            if c.len() != k {
                return Err(CodesError::ColumnLengthMismatch {
                    index: i,
                    expected: k,
                    got: c.len(),
                });
            }
            if *c.field() != field {
                return Err(CodesError::FieldMismatch);
            }
        }
        if columns.len() < k {
            return Err(CodesError::LengthBelowDimension {
                n: columns.len(),
                k,
            });
        }
        Ok(DefiningSet { columns, k, field })
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.k
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.columns.len()
    }

    #[inline]
    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    #[inline]
    pub fn columns(&self) -> &[Vector] {
        &self.columns
    }

    #[inline]
    pub fn column(&self, i: usize) -> &Vector {
        &self.columns[i]
    }

    /// Indices of zero columns; they contribute a coordinate that is zero
    /// in every codeword.
    pub fn inert_columns(&self) -> Vec<usize> {
        self.columns
            .iter()
            .enumerate()
            .filter(|(_, c)| c.is_zero())
            .map(|(i, _)| i)
            .collect()
    }

    /// Confirm that `C(D)` is an `[n, k]_q` code, i.e. `rank D = k`.
    pub fn validate_code(&self) -> Result<CodeValidation, CodesError> {
        let rank = linalg::rank(&self.columns)?;
        if rank != self.k {
            return Err(CodesError::RankDeficient(rank));
        }
        Ok(CodeValidation {
            rank,
            inert_columns: self.inert_columns(),
        })
    }

    /// The codeword `c(x) = (<x,d_1>, ..., <x,d_n>)`.
    pub fn encode(&self, x: &Vector) -> Result<Codeword, CodesError> {
        let coords = self
            .columns
            .iter()
            .map(|d| linalg::inner_product(x, d))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Codeword {
            coords,
            field: self.field.clone(),
            message: Some(x.clone()),
        })
    }

    /// Exact weight counts over all `q^k` messages.
    pub fn weight_distribution(&self) -> Result<WeightDistribution, CodesError> {
        let size = message_space_size(self.field.q(), self.k)?;
        self.validate_code()?;
        let mut counts: BTreeMap<usize, u64> = BTreeMap::new();
        for x in linalg::all_vectors(self.k, &self.field) {
            let w = self.encode(&x)?.weight();
            *counts.entry(w).or_insert(0) += 1;
        }
        debug_assert_eq!(counts.values().sum::<u64>(), size);
        Ok(WeightDistribution {
            counts,
            q: self.field.q(),
            k: self.k,
            n: self.n(),
        })
    }
}

impl fmt::Debug for DefiningSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "DefiningSet(q={}, k={}, n={})",
            self.field.q(),
            self.k,
            self.n()
        )
    }
}

/// Outcome of [`DefiningSet::validate_code`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeValidation {
    pub rank: usize,
    pub inert_columns: Vec<usize>,
}

pub(crate) fn message_space_size(q: u64, k: usize) -> Result<u64, CodesError> {
    let mut size = 1u64;
    for _ in 0..k {
        size = size.saturating_mul(q);
        if size > MESSAGE_ENUMERATION_CAP {
            return Err(CodesError::EnumerationTooLarge {
                size,
                cap: MESSAGE_ENUMERATION_CAP,
            });
        }
    }
    Ok(size)
}

/// A codeword of `C(D)`, optionally tagged with the message that produced it.
#[derive(Clone, PartialEq, Eq)]
pub struct Codeword {
    coords: Vec<FieldElement>,
    field: Arc<FieldSpec>,
    message: Option<Vector>,
}

impl Codeword {
    pub fn coords(&self) -> &[FieldElement] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn message(&self) -> Option<&Vector> {
        self.message.as_ref()
    }

    /// 0-based indices of the nonzero coordinates.
    pub fn support(&self) -> Vec<usize> {
        self.coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| i)
            .collect()
    }

    /// Hamming weight: the size of the support.
    pub fn weight(&self) -> usize {
        self.coords.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &Codeword) -> Result<Codeword, CodesError> {
        if self.len() != other.len() {
            return Err(LinalgError::DimensionMismatch(self.len(), other.len()).into());
        }
        if self.field != other.field {
            return Err(CodesError::FieldMismatch);
        }
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(&a, &b)| self.field.add(a, b))
            .collect();
        let message = match (&self.message, &other.message) {
            (Some(a), Some(b)) => a.add(b).ok(),
            _ => None,
        };
        Ok(Codeword {
            coords,
            field: self.field.clone(),
            message,
        })
    }

    pub fn scale(&self, a: FieldElement) -> Codeword {
        Codeword {
            coords: self.coords.iter().map(|&c| self.field.mul(c, a)).collect(),
            field: self.field.clone(),
            message: self.message.as_ref().map(|m| m.scale(a)),
        }
    }
}

impl fmt::Debug for Codeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Codeword[")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", c)?;
        }
        write!(f, "]")
    }
}

/// Does `v` cover `u`, i.e. `Suppt(u) ⊆ Suppt(v)` (written `u ⪯ v`)?
pub fn covers(u: &Codeword, v: &Codeword) -> Result<bool, CodesError> {
    if u.len() != v.len() {
        return Err(LinalgError::DimensionMismatch(u.len(), v.len()).into());
    }
    Ok(u.coords
        .iter()
        .zip(&v.coords)
        .all(|(a, b)| a.is_zero() || !b.is_zero()))
}

/// Weight counts of a code, indexed by Hamming weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightDistribution {
    counts: BTreeMap<usize, u64>,
    q: u64,
    k: usize,
    n: usize,
}

impl WeightDistribution {
    pub fn counts(&self) -> &BTreeMap<usize, u64> {
        &self.counts
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    /// Minimum nonzero-codeword weight.
    pub fn w_min(&self) -> Option<usize> {
        self.counts.keys().find(|&&w| w > 0).copied()
    }

    /// Maximum nonzero-codeword weight.
    pub fn w_max(&self) -> Option<usize> {
        self.counts.keys().rev().find(|&&w| w > 0).copied()
    }
}

// ---- file format ------------------------------------------------------
//
// Line 1:        q k n        (q as "p^m", or a plain integer when m = 1)
// Lines 2..n+1:  one column per line, k space-separated element encodings
//
// Blank lines and lines starting with '#' are ignored when reading.

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("malformed header: {0}")]
    MalformedHeader(String),
    #[error("line {line}, coordinate {column}: bad element encoding")]
    BadElementEncoding { line: usize, column: usize },
    #[error("line {line}: expected {expected} coordinates, found {got}")]
    LengthMismatch {
        line: usize,
        expected: usize,
        got: usize,
    },
    #[error("header declares {expected} columns, file contains {got}")]
    ColumnCountMismatch { expected: usize, got: usize },
    #[error("i/o error: {0}")]
    Io(String),
}

/// Parse the field identity `"p^m"` or a plain prime-power integer.
pub fn parse_field_order(token: &str) -> Result<Arc<FieldSpec>, ParseError> {
    let build = |res: Result<Arc<FieldSpec>, crate::gf::GfError>| {
        res.map_err(|e| ParseError::MalformedHeader(e.to_string()))
    };
    if let Some((ps, ms)) = token.split_once('^') {
        let p: u64 = ps
            .parse()
            .map_err(|_| ParseError::MalformedHeader(format!("bad field order '{token}'")))?;
        let m: u32 = ms
            .parse()
            .map_err(|_| ParseError::MalformedHeader(format!("bad field order '{token}'")))?;
        build(make_field(p, m))
    } else {
        let q: u64 = token
            .parse()
            .map_err(|_| ParseError::MalformedHeader(format!("bad field order '{token}'")))?;
        build(make_field_from_order(q))
    }
}

/// Read a defining set from the text format. Rank is not checked here.
pub fn read_defining_set<R: BufRead>(reader: R) -> Result<DefiningSet, ParseError> {
    let mut header: Option<(Arc<FieldSpec>, usize, usize)> = None;
    let mut columns: Vec<Vector> = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| ParseError::Io(e.to_string()))?;
        let lineno = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        match &header {
            None => {
                let parts: Vec<&str> = trimmed.split_whitespace().collect();
                if parts.len() != 3 {
                    return Err(ParseError::MalformedHeader(format!(
                        "expected 'q k n', found '{trimmed}'"
                    )));
                }
                let field = parse_field_order(parts[0])?;
                let k: usize = parts[1].parse().map_err(|_| {
                    ParseError::MalformedHeader(format!("bad dimension '{}'", parts[1]))
                })?;
                let n: usize = parts[2].parse().map_err(|_| {
                    ParseError::MalformedHeader(format!("bad length '{}'", parts[2]))
                })?;
                if k < 1 || n < k {
                    return Err(ParseError::MalformedHeader(format!(
                        "need n >= k >= 1, got k={k} n={n}"
                    )));
                }
                header = Some((field, k, n));
            }
            Some((field, k, n)) => {
                let tokens: Vec<&str> = trimmed.split_whitespace().collect();
                if tokens.len() != *k {
                    return Err(ParseError::LengthMismatch {
                        line: lineno,
                        expected: *k,
                        got: tokens.len(),
                    });
                }
                let mut coords = Vec::with_capacity(*k);
                for (col, tok) in tokens.iter().enumerate() {
                    let value: u64 = tok.parse().map_err(|_| ParseError::BadElementEncoding {
                        line: lineno,
                        column: col + 1,
                    })?;
                    let elem =
                        field
                            .element(value)
                            .map_err(|_| ParseError::BadElementEncoding {
                                line: lineno,
                                column: col + 1,
                            })?;
                    coords.push(elem);
                }
                if columns.len() == *n {
                    return Err(ParseError::ColumnCountMismatch {
                        expected: *n,
                        got: columns.len() + 1,
                    });
                }
                columns
                    .push(Vector::new(coords, field.clone()).expect("coordinates were validated"));
            }
        }
    }
    let (_, _, n) = header.ok_or_else(|| ParseError::MalformedHeader("empty input".into()))?;
    if columns.len() != n {
        return Err(ParseError::ColumnCountMismatch {
            expected: n,
            got: columns.len(),
        });
    }
    DefiningSet::new(columns).map_err(|e| ParseError::MalformedHeader(e.to_string()))
}

/// Write the text format; byte-identical output for equal inputs.
pub fn write_defining_set<W: Write>(d: &DefiningSet, mut out: W) -> std::io::Result<()> {
    writeln!(out, "{} {} {}", d.field().order_string(), d.k(), d.n())?;
    for c in d.columns() {
        writeln!(out, "{}", c)?;
    }
    Ok(())
}

/// Serialize to a string (same bytes as [`write_defining_set`]).
pub fn defining_set_to_string(d: &DefiningSet) -> String {
    let mut buf = Vec::new();
    write_defining_set(d, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("format is ASCII")
}
