//! Named defining-set constructions.
//!
//! - [`full_space`]: all of `GF(q)^k`, the `[q^k, k]_q` minimal code.
//! - [`d0`]: the units `e_1..e_k` together with `e_i + a·e_j` for
//!   `i < j`, `a != 0` — a minimal code of length `(q-1)·k(k-1)/2 + k`,
//!   which is the best known general upper bound for the threshold length.
//! - [`d0_witness`]: the explicit basis of `D_0 ∩ y^⊥` that proves
//!   minimality, one vector per index `i != i_0`.
//! - [`family_sets`] / [`d_family`]: the split-parameter families `D_1..D_4`
//!   built from the spans `S`, `S'`, `S''` and the cosets `Ω_1..Ω_3`.
//! - [`extend`]: length padding; supersets of minimal defining sets stay
//!   minimal, so padding preserves every verdict.
//!
//! All constructions are deterministic: components are emitted in
//! definition order and lexicographically sorted within each component.

use std::collections::BTreeSet;
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

use crate::codes::{CodesError, DefiningSet};
use crate::gf::FieldSpec;
use crate::linalg::{all_vectors, inner_product, LinalgError, Vector};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("dimension k must be at least 1")]
    InvalidDimension,
    #[error("split parameter t = {t} is out of range for k = {k} (need k/2 < t < k)")]
    BadSplit { k: usize, t: usize },
    #[error("family requires a split parameter t")]
    MissingSplit,
    #[error("enumerating q^k = {size} columns exceeds the cap {cap}")]
    EnumerationTooLarge { size: u64, cap: u64 },
    #[error("target length {target} is smaller than the current length {n}")]
    TargetTooSmall { target: usize, n: usize },
    #[error("padding source provides {got} columns, {needed} needed")]
    PaddingExhausted { needed: usize, got: usize },
    #[error("padding columns do not match the defining set (k and field must agree)")]
    PaddingMismatch,
    #[error("witness basis requires a nonzero vector")]
    ZeroVector,
    #[error(transparent)]
    Codes(#[from] CodesError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// The construction families exposed by the toolkit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Full,
    D0,
    D1,
    D2,
    D3,
    D4,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Full => "full",
            Family::D0 => "d0",
            Family::D1 => "d1",
            Family::D2 => "d2",
            Family::D3 => "d3",
            Family::D4 => "d4",
        }
    }

    pub fn needs_split(self) -> bool {
        matches!(self, Family::D1 | Family::D2 | Family::D3 | Family::D4)
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Family, String> {
        match s {
            "full" => Ok(Family::Full),
            "d0" => Ok(Family::D0),
            "d1" => Ok(Family::D1),
            "d2" => Ok(Family::D2),
            "d3" => Ok(Family::D3),
            "d4" => Ok(Family::D4),
            other => Err(format!(
                "unknown family '{other}' (expected full, d0, d1, d2, d3, d4)"
            )),
        }
    }
}

/// Parameters selecting one concrete construction.
#[derive(Debug, Clone)]
pub struct ConstructionParams {
    pub family: Family,
    pub k: usize,
    /// Split parameter for `D_1..D_4`; must satisfy `k/2 < t < k`.
    pub t: Option<usize>,
    pub field: Arc<FieldSpec>,
}

/// Extra facts about a built construction, for manifest headers.
pub type Manifest = Vec<(&'static str, String)>;

/// Build the construction selected by `params`, with its manifest.
pub fn construct(
    params: &ConstructionParams,
) -> Result<(DefiningSet, Manifest), ConstructionError> {
    let k = params.k;
    let field = &params.field;
    let mut manifest: Manifest = vec![
        ("family", params.family.name().to_string()),
        ("q", field.order_string()),
        ("k", k.to_string()),
    ];
    let d = match params.family {
        Family::Full => {
            let d = full_space(k, field)?;
            manifest.push(("n", d.n().to_string()));
            d
        }
        Family::D0 => {
            let d = d0(k, field)?;
            manifest.push(("n", d.n().to_string()));
            manifest.push(("component.units", k.to_string()));
            manifest.push(("component.pairs", (d.n() - k).to_string()));
            d
        }
        family => {
            let t = params.t.ok_or(ConstructionError::MissingSplit)?;
            let sets = family_sets(k, t, field)?;
            manifest.push(("t", t.to_string()));
            manifest.push(("component.s", sets.s.len().to_string()));
            manifest.push(("component.s_prime", sets.s_prime.len().to_string()));
            manifest.push(("component.s_dprime", sets.s_dprime.len().to_string()));
            manifest.push(("component.omega1", sets.omega1.len().to_string()));
            manifest.push(("component.omega2", sets.omega2.len().to_string()));
            manifest.push(("component.omega3", sets.omega3.len().to_string()));
            let d = d_family_from_sets(family, &sets)?;
            manifest.push(("n", d.n().to_string()));
            d
        }
    };
    Ok((d, manifest))
}

/// `D = GF(q)^k` in lexicographic order, zero vector included.
pub fn full_space(k: usize, field: &Arc<FieldSpec>) -> Result<DefiningSet, ConstructionError> {
    if k < 1 {
        return Err(ConstructionError::InvalidDimension);
    }
    crate::codes::message_space_size(field.q(), k).map_err(|e| match e {
        CodesError::EnumerationTooLarge { size, cap } => {
            ConstructionError::EnumerationTooLarge { size, cap }
        }
        other => ConstructionError::Codes(other),
    })?;
    Ok(DefiningSet::new(all_vectors(k, field).collect())?)
}

/// `D_0 = {e_1,...,e_k} ∪ {e_i + a·e_j : i < j, a != 0}`, in unit order
/// then `(i, j, a)` ascending. Length `(q-1)·k(k-1)/2 + k`.
pub fn d0(k: usize, field: &Arc<FieldSpec>) -> Result<DefiningSet, ConstructionError> {
    if k < 1 {
        return Err(ConstructionError::InvalidDimension);
    }
    let mut columns: Vec<Vector> = (0..k).map(|i| Vector::unit(k, i, field)).collect();
    for i in 0..k {
        for j in i + 1..k {
            for a in field.enumerate_nonzero() {
                let mut col = Vector::unit(k, i, field);
                col = col.add(&Vector::unit(k, j, field).scale(a))?;
                columns.push(col);
            }
        }
    }
    Ok(DefiningSet::new(columns)?)
}

/// Expected length of `d0(k)`: `(q-1)·k(k-1)/2 + k`.
pub fn d0_len(k: usize, q: u64) -> u64 {
    (q - 1) * (k as u64) * (k as u64 - 1) / 2 + k as u64
}

/// The explicit `k - 1` independent vectors of `D_0 ∩ y^⊥`, for nonzero `y`.
///
/// With `i_0` the first index where `y` is nonzero:
/// `α_i = e_i - y_{i_0}^{-1} y_i e_{i_0}` for `i < i_0`,
/// `α_i = e_{i_0} - y_i^{-1} y_{i_0} e_i` for `i > i_0` with `y_i != 0`,
/// `α_i = e_i` for `i > i_0` with `y_i = 0`.
/// Membership in `D_0` and orthogonality to `y` are re-verified before
/// returning, so a successful call is itself the executable proof.
pub fn d0_witness(y: &Vector) -> Result<Vec<Vector>, ConstructionError> {
    if y.is_zero() {
        return Err(ConstructionError::ZeroVector);
    }
    let k = y.len();
    let field = y.field().clone();
    let i0 = y
        .coords()
        .iter()
        .position(|c| !c.is_zero())
        .expect("y is nonzero");
    let y_i0 = y.get(i0);
    let mut witness = Vec::with_capacity(k - 1);
    for i in 0..k {
        if i == i0 {
            continue;
        }
        let yi = y.get(i);
        let alpha = if i < i0 {
            // y_i = 0 here since i_0 is the first nonzero index, so this
            // degenerates to e_i; the general formula is kept as stated.
            let coef = field.neg(field.mul(field.inv(y_i0).expect("nonzero"), yi));
            Vector::unit(k, i, &field).add(&Vector::unit(k, i0, &field).scale(coef))?
        } else if !yi.is_zero() {
            let coef = field.neg(field.mul(field.inv(yi).expect("nonzero"), y_i0));
            Vector::unit(k, i0, &field).add(&Vector::unit(k, i, &field).scale(coef))?
        } else {
            Vector::unit(k, i, &field)
        };
        witness.push(alpha);
    }
    // Executable proof obligations: each α_i sits in D_0 and in y^⊥.
    let d0_cols = d0(k, &field)?;
    for alpha in &witness {
        assert!(
            d0_cols.columns().contains(alpha),
            "witness vector {alpha:?} escaped D_0"
        );
        assert!(
            inner_product(alpha, y)?.is_zero(),
            "witness vector {alpha:?} is not orthogonal to {y:?}"
        );
    }
    Ok(witness)
}

/// The six ingredient sets for the families `D_1..D_4`, each sorted
/// lexicographically. Indices below are 1-based as in the definitions.
#[derive(Debug, Clone)]
pub struct FamilySets {
    /// `Span{e_1..e_t} \ {0}`
    pub s: Vec<Vector>,
    /// `Span{e_{k-t+1}..e_k} \ {0}`
    pub s_prime: Vec<Vector>,
    /// `Span{e_{k-t+2}..e_k} \ {0}`
    pub s_dprime: Vec<Vector>,
    /// `∪_{i=t+1}^{k} (e_i + S)`
    pub omega1: Vec<Vector>,
    /// `∪_{i=1}^{k-t} (e_i + S')`
    pub omega2: Vec<Vector>,
    /// `∪_{i=1}^{k-t+1} (e_i + S'')`
    pub omega3: Vec<Vector>,
}

fn check_split(k: usize, t: usize) -> Result<(), ConstructionError> {
    // k/2 < t < k, i.e. 2t > k and t < k.
    if 2 * t > k && t < k {
        Ok(())
    } else {
        Err(ConstructionError::BadSplit { k, t })
    }
}

/// Nonzero vectors supported on the window `[start, start + width)`,
/// embedded in `GF(q)^k`, in lexicographic order.
fn window_span(k: usize, start: usize, width: usize, field: &Arc<FieldSpec>) -> Vec<Vector> {
    let mut out = Vec::new();
    for v in all_vectors(width, field).skip(1) {
        let mut coords = vec![crate::gf::FieldElement::ZERO; k];
        coords[start..start + width].copy_from_slice(v.coords());
        out.push(Vector::new(coords, field.clone()).expect("valid coordinates"));
    }
    out
}

pub fn family_sets(
    k: usize,
    t: usize,
    field: &Arc<FieldSpec>,
) -> Result<FamilySets, ConstructionError> {
    check_split(k, t)?;
    let s = window_span(k, 0, t, field);
    let s_prime = window_span(k, k - t, t, field);
    let s_dprime = window_span(k, k - t + 1, t - 1, field);

    let coset_union = |units: std::ops::Range<usize>, base: &[Vector]| -> Vec<Vector> {
        let mut out: Vec<Vector> = Vec::new();
        for i in units {
            let e = Vector::unit(k, i, field);
            for v in base {
                out.push(e.add(v).expect("same length"));
            }
        }
        out.sort();
        out.dedup();
        out
    };

    let omega1 = coset_union(t..k, &s);
    let omega2 = coset_union(0..k - t, &s_prime);
    let omega3 = coset_union(0..k - t + 1, &s_dprime);

    Ok(FamilySets {
        s,
        s_prime,
        s_dprime,
        omega1,
        omega2,
        omega3,
    })
}

/// One of the four families, as a plain set: components are concatenated in
/// definition order and duplicates across components appear once.
pub fn d_family(
    family: Family,
    k: usize,
    t: usize,
    field: &Arc<FieldSpec>,
) -> Result<DefiningSet, ConstructionError> {
    let sets = family_sets(k, t, field)?;
    d_family_from_sets(family, &sets)
}

fn d_family_from_sets(family: Family, sets: &FamilySets) -> Result<DefiningSet, ConstructionError> {
    let components: Vec<&[Vector]> = match family {
        Family::D1 => vec![&sets.s, &sets.s_prime, &sets.omega2],
        Family::D2 => vec![&sets.s, &sets.s_dprime, &sets.omega3],
        Family::D3 => vec![&sets.s, &sets.s_prime, &sets.omega1, &sets.omega2],
        Family::D4 => vec![&sets.s, &sets.s_prime, &sets.omega1, &sets.omega3],
        _ => panic!("d_family only builds D_1..D_4"),
    };
    let mut seen: BTreeSet<Vector> = BTreeSet::new();
    let mut columns = Vec::new();
    for comp in components {
        for v in comp {
            if seen.insert(v.clone()) {
                columns.push(v.clone());
            }
        }
    }
    Ok(DefiningSet::new(columns)?)
}

/// Padding policies for [`extend`].
#[derive(Debug, Clone)]
pub enum Padding {
    /// Repeat the last column.
    RepeatLast,
    /// Cycle through the existing columns from the first.
    Cycle,
    /// Take columns from the supplied list, in order.
    Columns(Vec<Vector>),
}

/// Append columns until the length reaches `target_n`. A superset of a
/// minimal defining set stays minimal, so extension preserves minimality.
pub fn extend(
    d: &DefiningSet,
    target_n: usize,
    padding: &Padding,
) -> Result<DefiningSet, ConstructionError> {
    let n = d.n();
    if target_n < n {
        return Err(ConstructionError::TargetTooSmall {
            target: target_n,
            n,
        });
    }
    if target_n == n {
        return Ok(d.clone());
    }
    let needed = target_n - n;
    let mut columns = d.columns().to_vec();
    match padding {
        Padding::RepeatLast => {
            let last = columns.last().expect("defining sets are non-empty").clone();
            columns.extend(std::iter::repeat_with(|| last.clone()).take(needed));
        }
        Padding::Cycle => {
            for i in 0..needed {
                columns.push(d.column(i % n).clone());
            }
        }
        Padding::Columns(extra) => {
            if extra.len() < needed {
                return Err(ConstructionError::PaddingExhausted {
                    needed,
                    got: extra.len(),
                });
            }
            for c in extra.iter().take(needed) {
                if c.len() != d.k() || c.field() != d.field() {
                    return Err(ConstructionError::PaddingMismatch);
                }
                columns.push(c.clone());
            }
        }
    }
    Ok(DefiningSet::new(columns)?)
}
