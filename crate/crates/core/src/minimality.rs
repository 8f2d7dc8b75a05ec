//! Minimality checkers for `C(D)`.
//!
//! Four routes to the same question:
//!
//! - [`check_span`]: the hyperplane-span criterion — `C(D)` is minimal iff
//!   `dim Span(D ∩ y^⊥) = k - 1` for every nonzero `y`. Necessary and
//!   sufficient, needs no weight distribution. Only one representative per
//!   scalar class of `y` is examined, since `(ay)^⊥ = y^⊥` for `a != 0`.
//! - [`check_dhz`]: the weight identity — minimal iff
//!   `Σ_{c in F_q^*} wt(a + cb) != (q-1)·wt(a) - wt(b)` for every pair of
//!   linearly independent codewords `a`, `b`. Necessary and sufficient.
//! - [`check_brute`]: the covering definition itself, pair by pair. The
//!   oracle the other checkers are tested against.
//! - [`check_ab`]: the weight-ratio test `q·w_min > (q-1)·w_max`.
//!   Sufficient only; answers `Minimal` or `Inconclusive`, never `NotMinimal`.
//!
//! Every negative verdict carries a witness that re-verifies independently.

use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::codes::{covers, CodesError, DefiningSet};
use crate::linalg::{
    all_vectors, inner_product, projective_points, LinalgError, SpanBuilder, Vector,
};

/// Pairwise codeword enumeration is refused above this message-space size.
pub const PAIR_ENUMERATION_CAP: u64 = 1 << 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MinimalityError {
    #[error(transparent)]
    Codes(#[from] CodesError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("the zero vector has no minimality question")]
    ZeroVector,
    #[error("message space q^k = {size} exceeds the pair-enumeration cap {cap}")]
    EnumerationTooLarge { size: u64, cap: u64 },
    #[error("column {index} is zero; the counting identity requires nonzero columns")]
    ZeroColumnPresent { index: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Span,
    Dhz,
    Brute,
    Ab,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Method::Span => "span",
            Method::Dhz => "dhz",
            Method::Brute => "brute",
            Method::Ab => "ab",
        };
        write!(f, "{s}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Minimal,
    NotMinimal,
    /// Only [`check_ab`] produces this: the ratio test did not fire.
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verdict::Minimal => "minimal",
            Verdict::NotMinimal => "not_minimal",
            Verdict::Inconclusive => "inconclusive",
        };
        write!(f, "{s}")
    }
}

/// Evidence that a code is not minimal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// A projective `y` whose orthogonal columns span less than `k - 1`
    /// dimensions, so `c(y)` is covered by an independent codeword.
    DeficientHyperplane { y: Vector, dim_v: usize },
    /// Messages `x`, `y`, linearly independent, with `c(x) ⪯ c(y)`.
    CoveringPair { x: Vector, y: Vector },
    /// Messages `a`, `b` whose codewords satisfy the forbidden weight
    /// identity; both sides are recorded.
    WeightIdentity {
        a: Vector,
        b: Vector,
        lhs: i64,
        rhs: i64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct WorkCounters {
    /// Projective hyperplanes examined (span checker).
    pub hyperplanes: u64,
    /// Candidate codeword pairs examined (brute / dhz checkers).
    pub pairs: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalityVerdict {
    pub method: Method,
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    pub work: WorkCounters,
    /// Extra method-specific facts (e.g. `w_min`/`w_max` for the AB test).
    pub detail: Vec<(&'static str, String)>,
}

impl MinimalityVerdict {
    pub fn is_minimal(&self) -> bool {
        self.verdict == Verdict::Minimal
    }

    /// Re-derive the witness from `d`; true when it genuinely proves the
    /// negative verdict (or when there is no witness to check).
    pub fn verify_witness(&self, d: &DefiningSet) -> bool {
        let Some(witness) = &self.witness else {
            return self.verdict != Verdict::NotMinimal;
        };
        match witness {
            Witness::DeficientHyperplane { y, dim_v } => match check_codeword_span(y, d) {
                Ok(res) => !res.minimal && res.dim_v == *dim_v && res.dim_v < d.k() - 1,
                Err(_) => false,
            },
            Witness::CoveringPair { x, y } => {
                if x.is_scalar_multiple_of(y) {
                    return false;
                }
                match (d.encode(x), d.encode(y)) {
                    (Ok(cx), Ok(cy)) => covers(&cx, &cy).unwrap_or(false),
                    _ => false,
                }
            }
            Witness::WeightIdentity { a, b, lhs, rhs } => {
                if a.is_scalar_multiple_of(b) {
                    return false;
                }
                match dhz_sides(d, a, b) {
                    Ok((l, r)) => l == r && l == *lhs && r == *rhs,
                    Err(_) => false,
                }
            }
        }
    }
}

/// Result of the per-codeword span test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CodewordSpanResult {
    /// True iff `c(y)` is minimal in `C(D)` (assuming `rank D = k`).
    pub minimal: bool,
    /// `dim Span(D ∩ y^⊥)`.
    pub dim_v: usize,
}

/// Dimension test for a single codeword: `c(y)` is minimal iff the columns
/// of `D` orthogonal to `y` span `k - 1` dimensions.
///
/// Folds each orthogonal column into a growing echelon basis and stops as
/// soon as `k - 1` is reached.
pub fn check_codeword_span(
    y: &Vector,
    d: &DefiningSet,
) -> Result<CodewordSpanResult, MinimalityError> {
    if y.is_zero() {
        return Err(MinimalityError::ZeroVector);
    }
    let k = d.k();
    let mut builder = SpanBuilder::new(k, d.field().clone());
    for col in d.columns() {
        if inner_product(y, col)?.is_zero() {
            builder.insert(col)?;
            if builder.dim() == k - 1 {
                break;
            }
        }
    }
    let dim_v = builder.dim();
    Ok(CodewordSpanResult {
        minimal: dim_v == k - 1,
        dim_v,
    })
}

/// The span criterion over every scalar class of `y`.
pub fn check_span(d: &DefiningSet) -> Result<MinimalityVerdict, MinimalityError> {
    check_span_jobs(d, 1)
}

/// As [`check_span`], splitting the projective points across `jobs` workers.
/// The verdict and witness are independent of `jobs`: the deficient `y`
/// with the smallest enumeration index always wins.
pub fn check_span_jobs(d: &DefiningSet, jobs: usize) -> Result<MinimalityVerdict, MinimalityError> {
    d.validate_code()?;
    let points = projective_points(d.k(), d.field());
    let total = points.len() as u64;

    let failure: Option<(usize, usize)> = if jobs > 1 {
        in_pool(jobs, || {
            points
                .par_iter()
                .enumerate()
                .filter_map(|(i, y)| {
                    let res = check_codeword_span(y, d).expect("y is nonzero");
                    (!res.minimal).then_some((i, res.dim_v))
                })
                .min_by_key(|(i, _)| *i)
        })
    } else {
        let mut found = None;
        for (i, y) in points.iter().enumerate() {
            let res = check_codeword_span(y, d)?;
            if !res.minimal {
                found = Some((i, res.dim_v));
                break;
            }
        }
        found
    };

    Ok(match failure {
        Some((i, dim_v)) => MinimalityVerdict {
            method: Method::Span,
            verdict: Verdict::NotMinimal,
            witness: Some(Witness::DeficientHyperplane {
                y: points[i].clone(),
                dim_v,
            }),
            work: WorkCounters {
                hyperplanes: i as u64 + 1,
                ..Default::default()
            },
            detail: Vec::new(),
        },
        None => MinimalityVerdict {
            method: Method::Span,
            verdict: Verdict::Minimal,
            witness: None,
            work: WorkCounters {
                hyperplanes: total,
                ..Default::default()
            },
            detail: Vec::new(),
        },
    })
}

fn in_pool<T: Send>(jobs: usize, op: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool")
        .install(op)
}

fn check_pair_cap(d: &DefiningSet) -> Result<u64, MinimalityError> {
    let mut size = 1u64;
    for _ in 0..d.k() {
        size = size.saturating_mul(d.field().q());
        if size > PAIR_ENUMERATION_CAP {
            return Err(MinimalityError::EnumerationTooLarge {
                size,
                cap: PAIR_ENUMERATION_CAP,
            });
        }
    }
    Ok(size)
}

/// The covering definition, checked pair by pair: the oracle.
///
/// `y` runs over projective representatives (minimality of `c(y)` only
/// depends on the scalar class), `x` over all nonzero messages; a pair
/// fails when `x`, `y` are independent and `c(x) ⪯ c(y)`.
pub fn check_brute(d: &DefiningSet) -> Result<MinimalityVerdict, MinimalityError> {
    check_brute_jobs(d, 1)
}

/// As [`check_brute`], splitting the outer loop across `jobs` workers.
pub fn check_brute_jobs(
    d: &DefiningSet,
    jobs: usize,
) -> Result<MinimalityVerdict, MinimalityError> {
    check_pair_cap(d)?;
    d.validate_code()?;
    let k = d.k();
    let field = d.field();
    let reps = projective_points(k, field);
    let messages: Vec<Vector> = all_vectors(k, field).skip(1).collect();
    let per_rep = messages.len() as u64;

    // Failure slot for (rep index, message index); smallest slot wins.
    let scan_rep = |yi: usize| -> Option<(u64, Vector, Vector)> {
        let y = &reps[yi];
        let cy = d.encode(y).expect("dimension matches");
        for (xi, x) in messages.iter().enumerate() {
            if x.is_scalar_multiple_of(y) {
                continue;
            }
            let cx = d.encode(x).expect("dimension matches");
            if covers(&cx, &cy).expect("equal lengths") {
                let slot = yi as u64 * per_rep + xi as u64;
                return Some((slot, x.clone(), y.clone()));
            }
        }
        None
    };

    let failure = if jobs > 1 {
        in_pool(jobs, || {
            (0..reps.len())
                .into_par_iter()
                .filter_map(scan_rep)
                .min_by_key(|(slot, _, _)| *slot)
        })
    } else {
        let mut found = None;
        for yi in 0..reps.len() {
            if let Some(hit) = scan_rep(yi) {
                found = Some(hit);
                break;
            }
        }
        found
    };

    Ok(match failure {
        Some((slot, x, y)) => MinimalityVerdict {
            method: Method::Brute,
            verdict: Verdict::NotMinimal,
            witness: Some(Witness::CoveringPair { x, y }),
            work: WorkCounters {
                pairs: slot + 1,
                ..Default::default()
            },
            detail: Vec::new(),
        },
        None => MinimalityVerdict {
            method: Method::Brute,
            verdict: Verdict::Minimal,
            witness: None,
            work: WorkCounters {
                pairs: reps.len() as u64 * per_rep,
                ..Default::default()
            },
            detail: Vec::new(),
        },
    })
}

/// Both sides of the weight identity for messages `a`, `b`:
/// `lhs = Σ_{c in F_q^*} wt(c(a) + c·c(b))`, `rhs = (q-1)·wt(c(a)) - wt(c(b))`.
fn dhz_sides(d: &DefiningSet, a: &Vector, b: &Vector) -> Result<(i64, i64), MinimalityError> {
    let f = d.field();
    let ca = d.encode(a)?;
    let cb = d.encode(b)?;
    let mut lhs: i64 = 0;
    for c in f.enumerate_nonzero() {
        let mut w = 0i64;
        for (&ai, &bi) in ca.coords().iter().zip(cb.coords()) {
            if !f.add(ai, f.mul(c, bi)).is_zero() {
                w += 1;
            }
        }
        lhs += w;
    }
    let rhs = (f.q() as i64 - 1) * ca.weight() as i64 - cb.weight() as i64;
    Ok((lhs, rhs))
}

/// The weight-identity criterion over all ordered independent message pairs.
/// The identity is asymmetric in `(a, b)`, so both orders are tested.
pub fn check_dhz(d: &DefiningSet) -> Result<MinimalityVerdict, MinimalityError> {
    check_pair_cap(d)?;
    d.validate_code()?;
    let k = d.k();
    let messages: Vec<Vector> = all_vectors(k, d.field()).skip(1).collect();
    let count = messages.len() as u64;
    let mut slot = 0u64;
    for a in &messages {
        for b in &messages {
            slot += 1;
            if a.is_scalar_multiple_of(b) {
                continue;
            }
            let (lhs, rhs) = dhz_sides(d, a, b)?;
            if lhs == rhs {
                return Ok(MinimalityVerdict {
                    method: Method::Dhz,
                    verdict: Verdict::NotMinimal,
                    witness: Some(Witness::WeightIdentity {
                        a: a.clone(),
                        b: b.clone(),
                        lhs,
                        rhs,
                    }),
                    work: WorkCounters {
                        pairs: slot,
                        ..Default::default()
                    },
                    detail: Vec::new(),
                });
            }
        }
    }
    Ok(MinimalityVerdict {
        method: Method::Dhz,
        verdict: Verdict::Minimal,
        witness: None,
        work: WorkCounters {
            pairs: count * count,
            ..Default::default()
        },
        detail: Vec::new(),
    })
}

/// The weight-ratio sufficient test: `Minimal` when
/// `q·w_min > (q-1)·w_max` (integer arithmetic), `Inconclusive` otherwise.
pub fn check_ab(d: &DefiningSet) -> Result<MinimalityVerdict, MinimalityError> {
    let wd = d.weight_distribution()?;
    let w_min = wd.w_min().expect("a full-rank code has nonzero codewords") as u64;
    let w_max = wd.w_max().expect("a full-rank code has nonzero codewords") as u64;
    let q = d.field().q();
    let verdict = if q * w_min > (q - 1) * w_max {
        Verdict::Minimal
    } else {
        Verdict::Inconclusive
    };
    Ok(MinimalityVerdict {
        method: Method::Ab,
        verdict,
        witness: None,
        work: WorkCounters::default(),
        detail: vec![("w_min", w_min.to_string()), ("w_max", w_max.to_string())],
    })
}

/// Both sides of the hyperplane-incidence count: summing `#(D ∩ y^⊥)` over
/// all `q^k - 1` nonzero `y` equals `n·(q^{k-1} - 1)` whenever every column
/// is nonzero. Returns `(lhs, rhs)`.
pub fn counting_identity(d: &DefiningSet) -> Result<(u64, u64), MinimalityError> {
    if let Some(&index) = d.inert_columns().first() {
        return Err(MinimalityError::ZeroColumnPresent { index });
    }
    let k = d.k();
    let q = d.field().q();
    let mut per_class_sum = 0u64;
    for y in projective_points(k, d.field()) {
        for col in d.columns() {
            if inner_product(&y, col)?.is_zero() {
                per_class_sum += 1;
            }
        }
    }
    // #(D ∩ y^⊥) is constant on scalar classes of y.
    let lhs = per_class_sum * (q - 1);
    let rhs = d.n() as u64 * (q.pow(k as u32 - 1) - 1);
    Ok((lhs, rhs))
}
