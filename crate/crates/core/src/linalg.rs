//! Vectors and subspaces over `GF(q)`: rank, span, perpendicular spaces,
//! hyperplanes, and canonical enumeration of projective points.
//!
//! Every [`Subspace`] keeps its basis in reduced row-echelon form, so two
//! subspaces are equal exactly when their basis lists are equal. Vector
//! enumeration is always lexicographic with the first coordinate most
//! significant; projective representatives are normalized to have first
//! nonzero coordinate 1.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::gf::{FieldElement, FieldSpec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("vectors have different lengths ({0} vs {1})")]
    DimensionMismatch(usize, usize),
    #[error("vectors belong to different fields")]
    FieldMismatch,
    #[error("operation requires at least one vector")]
    EmptyInput,
    #[error("the zero vector is not allowed here")]
    ZeroVector,
    #[error("coordinate encoding {value} is out of range for GF({q})")]
    BadCoordinate { value: u64, q: u64 },
}

/// A row vector in `GF(q)^k`.
#[derive(Clone)]
pub struct Vector {
    coords: Vec<FieldElement>,
    field: Arc<FieldSpec>,
}

impl Vector {
    pub fn new(coords: Vec<FieldElement>, field: Arc<FieldSpec>) -> Result<Vector, LinalgError> {
        for c in &coords {
            if c.value() >= field.q() {
                return Err(LinalgError::BadCoordinate {
                    value: c.value(),
                    q: field.q(),
                });
            }
        }
        Ok(Vector { coords, field })
    }

    /// Convenience constructor from raw integer encodings.
    pub fn from_ints(values: &[u64], field: &Arc<FieldSpec>) -> Result<Vector, LinalgError> {
        let coords = values
            .iter()
            .map(|&v| {
                field.element(v).map_err(|_| LinalgError::BadCoordinate {
                    value: v,
                    q: field.q(),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Vector {
            coords,
            field: field.clone(),
        })
    }

    pub fn zero(len: usize, field: &Arc<FieldSpec>) -> Vector {
        Vector {
            coords: vec![FieldElement::ZERO; len],
            field: field.clone(),
        }
    }

    /// The standard basis vector `e_i` (0-based index).
    pub fn unit(len: usize, i: usize, field: &Arc<FieldSpec>) -> Vector {
        assert!(i < len);
        let mut coords = vec![FieldElement::ZERO; len];
        coords[i] = FieldElement::ONE;
        Vector {
            coords,
            field: field.clone(),
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.coords.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    #[inline]
    pub fn coords(&self) -> &[FieldElement] {
        &self.coords
    }

    #[inline]
    pub fn get(&self, i: usize) -> FieldElement {
        self.coords[i]
    }

    #[inline]
    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &Vector) -> Result<Vector, LinalgError> {
        check_compatible(self, other)?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(&a, &b)| self.field.add(a, b))
            .collect();
        Ok(Vector {
            coords,
            field: self.field.clone(),
        })
    }

    pub fn sub(&self, other: &Vector) -> Result<Vector, LinalgError> {
        check_compatible(self, other)?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(&a, &b)| self.field.sub(a, b))
            .collect();
        Ok(Vector {
            coords,
            field: self.field.clone(),
        })
    }

    pub fn scale(&self, a: FieldElement) -> Vector {
        let coords = self.coords.iter().map(|&c| self.field.mul(c, a)).collect();
        Vector {
            coords,
            field: self.field.clone(),
        }
    }

    /// The scalar-class representative: scaled so the first nonzero
    /// coordinate is 1. Returns `None` for the zero vector.
    pub fn projective_normalize(&self) -> Option<Vector> {
        let lead = self.coords.iter().find(|c| !c.is_zero())?;
        let scale = self
            .field
            .inv(*lead)
            .expect("nonzero element is invertible");
        Some(self.scale(scale))
    }

    /// True when `other` is a nonzero scalar multiple of `self`.
    pub fn is_scalar_multiple_of(&self, other: &Vector) -> bool {
        match (self.projective_normalize(), other.projective_normalize()) {
            (Some(a), Some(b)) => a == b,
            (None, None) => true,
            _ => false,
        }
    }
}

impl PartialEq for Vector {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords && self.field == other.field
    }
}

impl Eq for Vector {}

impl PartialOrd for Vector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Vector {
    /// Lexicographic on coordinates (first coordinate most significant),
    /// then on field order so ordering stays consistent with equality.
    fn cmp(&self, other: &Self) -> Ordering {
        self.coords
            .cmp(&other.coords)
            .then_with(|| (self.field.p(), self.field.m()).cmp(&(other.field.p(), other.field.m())))
    }
}

impl fmt::Display for Vector {
    /// Space-separated integer encodings, the wire format for vectors.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for c in &self.coords {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{}", c)?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self)
    }
}

fn check_compatible(x: &Vector, y: &Vector) -> Result<(), LinalgError> {
    if x.len() != y.len() {
        return Err(LinalgError::DimensionMismatch(x.len(), y.len()));
    }
    if x.field != y.field {
        return Err(LinalgError::FieldMismatch);
    }
    Ok(())
}

/// Euclidean inner product over GF(q).
pub fn inner_product(x: &Vector, y: &Vector) -> Result<FieldElement, LinalgError> {
    check_compatible(x, y)?;
    let f = x.field();
    let mut acc = FieldElement::ZERO;
    for (&a, &b) in x.coords().iter().zip(y.coords()) {
        acc = f.add(acc, f.mul(a, b));
    }
    Ok(acc)
}

/// Incremental echelon-form accumulator.
///
/// Inserting a vector reduces it against the rows already held; a nonzero
/// remainder becomes a new row (normalized to pivot 1) without touching the
/// existing rows, so the last insertion can always be undone by popping.
#[derive(Clone)]
pub struct SpanBuilder {
    rows: Vec<Vec<FieldElement>>,
    pivots: Vec<usize>,
    ambient: usize,
    field: Arc<FieldSpec>,
}

impl SpanBuilder {
    pub fn new(ambient: usize, field: Arc<FieldSpec>) -> SpanBuilder {
        SpanBuilder {
            rows: Vec::new(),
            pivots: Vec::new(),
            ambient,
            field,
        }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Insert a vector; returns true when it enlarged the span.
    pub fn insert(&mut self, v: &Vector) -> Result<bool, LinalgError> {
        if v.len() != self.ambient {
            return Err(LinalgError::DimensionMismatch(v.len(), self.ambient));
        }
        if *v.field() != self.field {
            return Err(LinalgError::FieldMismatch);
        }
        Ok(self.insert_coords(v.coords()))
    }

    /// Same as `insert`, on a raw coordinate slice of the right length.
    pub(crate) fn insert_coords(&mut self, coords: &[FieldElement]) -> bool {
        let f = &self.field;
        let mut work: Vec<FieldElement> = coords.to_vec();
        for (row, &pivot) in self.rows.iter().zip(&self.pivots) {
            let c = work[pivot];
            if !c.is_zero() {
                // rows are pivot-normalized to 1
                for (w, r) in work.iter_mut().zip(row) {
                    *w = f.sub(*w, f.mul(c, *r));
                }
            }
        }
        match work.iter().position(|c| !c.is_zero()) {
            None => false,
            Some(pivot) => {
                let scale = f.inv(work[pivot]).expect("pivot nonzero");
                for w in work.iter_mut() {
                    *w = f.mul(*w, scale);
                }
                self.rows.push(work);
                self.pivots.push(pivot);
                true
            }
        }
    }

    /// Canonicalize into a [`Subspace`] (reduced row-echelon basis).
    pub fn build(&self) -> Subspace {
        let f = &self.field;
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&i| self.pivots[i]);
        let mut rows: Vec<Vec<FieldElement>> =
            order.iter().map(|&i| self.rows[i].clone()).collect();
        let pivots: Vec<usize> = order.iter().map(|&i| self.pivots[i]).collect();
        // Clear above each pivot for the reduced form.
        for i in (0..rows.len()).rev() {
            let pivot = pivots[i];
            let lower = rows[i].clone();
            for row in rows.iter_mut().take(i) {
                let c = row[pivot];
                if !c.is_zero() {
                    for (w, l) in row.iter_mut().zip(&lower) {
                        *w = f.sub(*w, f.mul(c, *l));
                    }
                }
            }
        }
        let basis = rows
            .into_iter()
            .map(|coords| Vector {
                coords,
                field: self.field.clone(),
            })
            .collect();
        Subspace {
            basis,
            ambient: self.ambient,
            field: self.field.clone(),
        }
    }
}

/// A linear subspace of `GF(q)^k` with its unique reduced row-echelon basis.
#[derive(Clone)]
pub struct Subspace {
    basis: Vec<Vector>,
    ambient: usize,
    field: Arc<FieldSpec>,
}

impl Subspace {
    pub fn zero(ambient: usize, field: &Arc<FieldSpec>) -> Subspace {
        Subspace {
            basis: Vec::new(),
            ambient,
            field: field.clone(),
        }
    }

    pub fn full(ambient: usize, field: &Arc<FieldSpec>) -> Subspace {
        let basis = (0..ambient)
            .map(|i| Vector::unit(ambient, i, field))
            .collect();
        Subspace {
            basis,
            ambient,
            field: field.clone(),
        }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    #[inline]
    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn contains(&self, v: &Vector) -> bool {
        if v.len() != self.ambient || *v.field() != self.field {
            return false;
        }
        let f = &self.field;
        let mut work: Vec<FieldElement> = v.coords().to_vec();
        for row in &self.basis {
            let pivot = row
                .coords()
                .iter()
                .position(|c| !c.is_zero())
                .expect("basis rows are nonzero");
            let c = work[pivot];
            if !c.is_zero() {
                for (w, r) in work.iter_mut().zip(row.coords()) {
                    *w = f.sub(*w, f.mul(c, *r));
                }
            }
        }
        work.iter().all(|c| c.is_zero())
    }
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.field == other.field && self.basis == other.basis
    }
}

impl Eq for Subspace {}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Subspace(dim {} in GF({})^{}: ",
            self.dim(),
            self.field.q(),
            self.ambient
        )?;
        for (i, b) in self.basis.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{}", b)?;
        }
        write!(f, ")")
    }
}

/// Dimension of the span of a non-empty list of vectors.
pub fn rank(vs: &[Vector]) -> Result<usize, LinalgError> {
    Ok(span(vs)?.dim())
}

/// Canonical subspace spanned by a non-empty list of vectors.
pub fn span(vs: &[Vector]) -> Result<Subspace, LinalgError> {
    let first = vs.first().ok_or(LinalgError::EmptyInput)?;
    let mut builder = SpanBuilder::new(first.len(), first.field().clone());
    for v in vs {
        builder.insert(v)?;
    }
    Ok(builder.build())
}

/// The perpendicular space `{ y : <y, x> = 0 for all x in s }`.
pub fn perp(s: &Subspace) -> Subspace {
    let k = s.ambient_dim();
    let f = s.field();
    let basis = s.basis();
    let pivots: Vec<usize> = basis
        .iter()
        .map(|row| {
            row.coords()
                .iter()
                .position(|c| !c.is_zero())
                .expect("basis rows are nonzero")
        })
        .collect();
    let mut builder = SpanBuilder::new(k, f.clone());
    // One kernel vector per free column: w[free] = 1, w[pivot_i] = -B[i][free].
    for free in 0..k {
        if pivots.contains(&free) {
            continue;
        }
        let mut coords = vec![FieldElement::ZERO; k];
        coords[free] = FieldElement::ONE;
        for (row, &pivot) in basis.iter().zip(&pivots) {
            coords[pivot] = f.neg(row.get(free));
        }
        builder.insert_coords(&coords);
    }
    builder.build()
}

/// The hyperplane `y^⊥` for a nonzero `y`.
pub fn hyperplane(y: &Vector) -> Result<Subspace, LinalgError> {
    if y.is_zero() {
        return Err(LinalgError::ZeroVector);
    }
    let s = span(std::slice::from_ref(y))?;
    Ok(perp(&s))
}

/// All vectors of `GF(q)^k` in lexicographic order (first coordinate most
/// significant), starting at the zero vector.
pub fn all_vectors(k: usize, field: &Arc<FieldSpec>) -> AllVectors {
    AllVectors {
        state: Some(vec![FieldElement::ZERO; k]),
        field: field.clone(),
        fresh: true,
    }
}

pub struct AllVectors {
    state: Option<Vec<FieldElement>>,
    field: Arc<FieldSpec>,
    fresh: bool,
}

impl Iterator for AllVectors {
    type Item = Vector;

    fn next(&mut self) -> Option<Vector> {
        let state = self.state.as_mut()?;
        if self.fresh {
            self.fresh = false;
            let v = Vector {
                coords: state.clone(),
                field: self.field.clone(),
            };
            return Some(v);
        }
        // Odometer increment, last coordinate fastest.
        let q = self.field.q();
        let mut i = state.len();
        loop {
            if i == 0 {
                self.state = None;
                return None;
            }
            i -= 1;
            let next = state[i].value() + 1;
            if next < q {
                state[i] = self.field.element(next).expect("in range");
                break;
            }
            state[i] = FieldElement::ZERO;
        }
        Some(Vector {
            coords: state.clone(),
            field: self.field.clone(),
        })
    }
}

/// Canonical projective representatives of `GF(q)^k \ {0}`: one vector per
/// scalar class, first nonzero coordinate 1, in lexicographic order.
/// Yields exactly `(q^k - 1)/(q - 1)` vectors.
pub fn projective_points(k: usize, field: &Arc<FieldSpec>) -> Vec<Vector> {
    let mut out = Vec::new();
    // Leading zeros descending: (0,...,0,1,*) blocks come first in lex order.
    for lead in (0..k).rev() {
        let tail = k - lead - 1;
        for suffix in all_vectors(tail, field) {
            let mut coords = vec![FieldElement::ZERO; k];
            coords[lead] = FieldElement::ONE;
            coords[lead + 1..].copy_from_slice(suffix.coords());
            out.push(Vector {
                coords,
                field: field.clone(),
            });
        }
    }
    out
}

/// `(q^k - 1) / (q - 1)`, the number of projective points (saturating).
pub fn projective_count(k: usize, q: u64) -> u64 {
    let mut acc = 0u64;
    let mut pow = 1u64;
    for _ in 0..k {
        acc = acc.saturating_add(pow);
        pow = pow.saturating_mul(q);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;
    use proptest::prelude::*;

    fn vecs(field: &Arc<FieldSpec>, rows: &[&[u64]]) -> Vec<Vector> {
        rows.iter()
            .map(|r| Vector::from_ints(r, field).unwrap())
            .collect()
    }

    #[test]
    fn inner_product_examples() {
        let f2 = make_field(2, 1).unwrap();
        let x = Vector::from_ints(&[1, 1, 0], &f2).unwrap();
        let y = Vector::from_ints(&[0, 1, 1], &f2).unwrap();
        assert_eq!(inner_product(&x, &y).unwrap().value(), 1);

        let f3 = make_field(3, 1).unwrap();
        let x = Vector::from_ints(&[1, 2], &f3).unwrap();
        let y = Vector::from_ints(&[2, 2], &f3).unwrap();
        assert_eq!(inner_product(&x, &y).unwrap().value(), 0);

        // GF(4): (ω,1)·(ω,0) = ω² = ω+1.
        let f4 = make_field(2, 2).unwrap();
        let x = Vector::from_ints(&[2, 1], &f4).unwrap();
        let y = Vector::from_ints(&[2, 0], &f4).unwrap();
        assert_eq!(inner_product(&x, &y).unwrap().value(), 3);
    }

    #[test]
    fn inner_product_errors() {
        let f2 = make_field(2, 1).unwrap();
        let f3 = make_field(3, 1).unwrap();
        let x = Vector::from_ints(&[1, 1], &f2).unwrap();
        let y = Vector::from_ints(&[1, 1, 0], &f2).unwrap();
        assert_eq!(
            inner_product(&x, &y),
            Err(LinalgError::DimensionMismatch(2, 3))
        );
        let z = Vector::from_ints(&[1, 1], &f3).unwrap();
        assert_eq!(inner_product(&x, &z), Err(LinalgError::FieldMismatch));
    }

    #[test]
    fn rank_examples() {
        let f2 = make_field(2, 1).unwrap();
        assert_eq!(rank(&vecs(&f2, &[&[1, 0], &[0, 1], &[1, 1]])).unwrap(), 2);

        let f3 = make_field(3, 1).unwrap();
        assert_eq!(rank(&vecs(&f3, &[&[1, 2], &[2, 1]])).unwrap(), 1);

        assert_eq!(
            rank(&vecs(&f2, &[&[1, 0, 1], &[0, 1, 1], &[1, 1, 0]])).unwrap(),
            2
        );
        assert_eq!(rank(&vecs(&f2, &[&[0, 0], &[0, 0]])).unwrap(), 0);
        assert_eq!(rank(&[]), Err(LinalgError::EmptyInput));
    }

    #[test]
    fn span_examples() {
        let f2 = make_field(2, 1).unwrap();
        let s = span(&vecs(&f2, &[&[1, 1]])).unwrap();
        assert_eq!(s.dim(), 1);
        assert_eq!(s.basis()[0], Vector::from_ints(&[1, 1], &f2).unwrap());

        // Span(∅) = {0}: the builder knows the ambient dimension.
        let b = SpanBuilder::new(3, f2.clone());
        let s = b.build();
        assert_eq!(s.dim(), 0);
        assert_eq!(s, Subspace::zero(3, &f2));

        // Over GF(3), (1,1,0) = (1,0,2) + (0,1,1) since 2+1=0.
        let f3 = make_field(3, 1).unwrap();
        let s = span(&vecs(&f3, &[&[1, 0, 2], &[0, 1, 1], &[1, 1, 0]])).unwrap();
        assert_eq!(s.dim(), 2);
    }

    #[test]
    fn span_members_are_contained() {
        let f3 = make_field(3, 1).unwrap();
        let vs = vecs(&f3, &[&[1, 0, 2], &[0, 1, 1], &[1, 1, 0]]);
        let s = span(&vs).unwrap();
        for v in &vs {
            assert!(s.contains(v));
        }
        assert!(!s.contains(&Vector::from_ints(&[0, 0, 1], &f3).unwrap()));
    }

    #[test]
    fn perp_examples() {
        // Self-dual line in characteristic 2.
        let f2 = make_field(2, 1).unwrap();
        let s = span(&vecs(&f2, &[&[1, 1]])).unwrap();
        assert_eq!(perp(&s), s);

        let zero = Subspace::zero(3, &f2);
        assert_eq!(perp(&zero), Subspace::full(3, &f2));

        let f3 = make_field(3, 1).unwrap();
        let s = span(&vecs(&f3, &[&[1, 2]])).unwrap();
        let expected = span(&vecs(&f3, &[&[1, 1]])).unwrap();
        assert_eq!(perp(&s), expected);
    }

    #[test]
    fn hyperplane_examples() {
        let f2 = make_field(2, 1).unwrap();
        let h = hyperplane(&Vector::from_ints(&[1, 1], &f2).unwrap()).unwrap();
        assert_eq!(h, span(&vecs(&f2, &[&[1, 1]])).unwrap());

        let h = hyperplane(&Vector::from_ints(&[0, 0, 1], &f2).unwrap()).unwrap();
        assert_eq!(h, span(&vecs(&f2, &[&[1, 0, 0], &[0, 1, 0]])).unwrap());

        let f5 = make_field(5, 1).unwrap();
        let h = hyperplane(&Vector::from_ints(&[1, 1], &f5).unwrap()).unwrap();
        assert_eq!(h, span(&vecs(&f5, &[&[1, 4]])).unwrap());

        assert_eq!(
            hyperplane(&Vector::zero(2, &f2)),
            Err(LinalgError::ZeroVector)
        );
    }

    #[test]
    fn projective_points_examples() {
        let f2 = make_field(2, 1).unwrap();
        let pts = projective_points(2, &f2);
        let expected = vecs(&f2, &[&[0, 1], &[1, 0], &[1, 1]]);
        assert_eq!(pts, expected);

        let f3 = make_field(3, 1).unwrap();
        let pts = projective_points(2, &f3);
        let expected = vecs(&f3, &[&[0, 1], &[1, 0], &[1, 1], &[1, 2]]);
        assert_eq!(pts, expected);

        let f4 = make_field(2, 2).unwrap();
        assert_eq!(projective_points(2, &f4).len(), 5);
        assert_eq!(projective_count(2, 4), 5);
    }

    #[test]
    fn projective_points_cover_all_scalar_classes() {
        for (p, m, k) in [(2u64, 1u32, 4usize), (3, 1, 3), (2, 2, 3)] {
            let f = make_field(p, m).unwrap();
            let pts = projective_points(k, &f);
            assert_eq!(pts.len() as u64, projective_count(k, f.q()));
            // Every nonzero vector normalizes to exactly one listed point.
            let mut seen = 0usize;
            for v in all_vectors(k, &f) {
                if let Some(rep) = v.projective_normalize() {
                    assert_eq!(pts.iter().filter(|p| **p == rep).count(), 1);
                    seen += 1;
                }
            }
            assert_eq!(seen as u64, f.q().pow(k as u32) - 1);
            // Sorted ascending and each has leading coefficient 1.
            for w in pts.windows(2) {
                assert!(w[0] < w[1]);
            }
            for pt in &pts {
                let lead = pt.coords().iter().find(|c| !c.is_zero()).unwrap();
                assert_eq!(lead.value(), 1);
            }
        }
    }

    #[test]
    fn all_vectors_is_lexicographic() {
        let f3 = make_field(3, 1).unwrap();
        let all: Vec<Vector> = all_vectors(2, &f3).collect();
        assert_eq!(all.len(), 9);
        assert_eq!(all[0], Vector::zero(2, &f3));
        assert_eq!(all[1], Vector::from_ints(&[0, 1], &f3).unwrap());
        assert_eq!(all[3], Vector::from_ints(&[1, 0], &f3).unwrap());
        for w in all.windows(2) {
            assert!(w[0] < w[1]);
        }
    }

    #[test]
    fn hyperplane_equals_perp_of_span_exhaustively() {
        for q in [2u64, 3, 4] {
            let f = crate::gf::make_field_from_order(q).unwrap();
            for k in 1..=4usize {
                for y in projective_points(k, &f) {
                    let h = hyperplane(&y).unwrap();
                    assert_eq!(h.dim(), k - 1);
                    let s = span(std::slice::from_ref(&y)).unwrap();
                    assert_eq!(h, perp(&s));
                }
            }
        }
    }

    proptest! {
        #[test]
        fn perp_dimensions_and_double_perp(
            q_idx in 0usize..3,
            k in 1usize..5,
            raw in proptest::collection::vec(0u64..4, 0..12)
        ) {
            let q = [2u64, 3, 4][q_idx];
            let f = crate::gf::make_field_from_order(q).unwrap();
            let mut builder = SpanBuilder::new(k, f.clone());
            for chunk in raw.chunks(k) {
                if chunk.len() < k { break; }
                let coords: Vec<u64> = chunk.iter().map(|&v| v % q).collect();
                let v = Vector::from_ints(&coords, &f).unwrap();
                builder.insert(&v).unwrap();
            }
            let s = builder.build();
            let sp = perp(&s);
            prop_assert_eq!(s.dim() + sp.dim(), k);
            // S ⊆ (S^⊥)^⊥ with equality for subspaces.
            prop_assert_eq!(perp(&sp), s.clone());
            for b in s.basis() {
                for c in sp.basis() {
                    prop_assert!(inner_product(b, c).unwrap().is_zero());
                }
            }
        }

        #[test]
        fn span_is_idempotent_and_dedup_preserves_rank(
            q_idx in 0usize..3,
            k in 1usize..4,
            raw in proptest::collection::vec(0u64..4, 1..16)
        ) {
            let q = [2u64, 3, 4][q_idx];
            let f = crate::gf::make_field_from_order(q).unwrap();
            let mut vs: Vec<Vector> = Vec::new();
            for chunk in raw.chunks(k) {
                if chunk.len() < k { break; }
                let coords: Vec<u64> = chunk.iter().map(|&v| v % q).collect();
                vs.push(Vector::from_ints(&coords, &f).unwrap());
            }
            prop_assume!(!vs.is_empty());
            let s = span(&vs).unwrap();
            if s.dim() == 0 {
                prop_assert_eq!(s.clone(), Subspace::zero(k, &f));
            } else {
                prop_assert_eq!(span(s.basis()).unwrap(), s.clone());
            }
            let mut dedup = vs.clone();
            dedup.sort();
            dedup.dedup();
            prop_assert_eq!(rank(&vs).unwrap(), rank(&dedup).unwrap());
            // Doubling the multiset changes nothing either.
            let mut doubled = vs.clone();
            doubled.extend(vs.iter().cloned());
            prop_assert_eq!(rank(&doubled).unwrap(), s.dim());
        }
    }
}
