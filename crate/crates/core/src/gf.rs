//! Exact arithmetic in `GF(q)` for prime powers `q = p^m`.
//!
//! Elements are encoded as integers in `[0, q)`: the polynomial
//! `c_0 + c_1*α + ... + c_{m-1}*α^{m-1}` packs as `c_0 + c_1*p + ... +
//! c_{m-1}*p^{m-1}` (constant term least significant). The extension is
//! built over the lexicographically smallest monic irreducible polynomial
//! of degree `m`, compared coefficient-by-coefficient from the constant
//! term upward, so the same `(p, m)` always yields the same field.
//!
//! Full add/mul/inv tables are precomputed for `q <= 256`; larger fields
//! use on-the-fly polynomial arithmetic. Fields with `q > 2^16` are
//! rejected outright.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Largest admissible field order.
pub const MAX_FIELD_ORDER: u64 = 1 << 16;

/// Field orders up to this threshold get full lookup tables.
const TABLE_THRESHOLD: u64 = 256;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GfError {
    #[error("characteristic {0} is not prime")]
    NonPrimeCharacteristic(u64),
    #[error("field order {q} exceeds the cap of {MAX_FIELD_ORDER}")]
    FieldTooLarge { q: u64 },
    #[error("extension degree must be at least 1")]
    InvalidDegree,
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("division by zero in GF(q)")]
    DivisionByZero,
    #[error("value {value} is not a valid element encoding in GF({q})")]
    ElementOutOfRange { value: u64, q: u64 },
}

/// An element of `GF(q)`, stored as its canonical integer encoding.
///
/// The encoding alone does not identify the field; all arithmetic goes
/// through the owning [`FieldSpec`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FieldElement(u16);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    /// The integer encoding in `[0, q)`.
    #[inline]
    pub fn value(self) -> u64 {
        self.0 as u64
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

struct Tables {
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>, // inv[0] unused
}

/// A concrete finite field `GF(p^m)` with its canonical modulus.
pub struct FieldSpec {
    p: u64,
    m: u32,
    q: u64,
    /// Coefficients of the monic irreducible modulus, constant term first,
    /// including the leading 1. Empty when `m == 1`.
    modulus: Vec<u64>,
    tables: Option<Tables>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.p)
            .field("m", &self.m)
            .field("q", &self.q)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        // The modulus is determined by (p, m).
        self.p == other.p && self.m == other.m
    }
}

impl Eq for FieldSpec {}

/// Build the canonical `GF(p^m)`, shared behind an `Arc`.
pub fn make_field(p: u64, m: u32) -> Result<Arc<FieldSpec>, GfError> {
    FieldSpec::new(p, m).map(Arc::new)
}

/// Build the canonical field of order `q`, factoring `q = p^m`.
pub fn make_field_from_order(q: u64) -> Result<Arc<FieldSpec>, GfError> {
    if q > MAX_FIELD_ORDER {
        return Err(GfError::FieldTooLarge { q });
    }
    let (p, m) = factor_prime_power(q).ok_or(GfError::NotPrimePower(q))?;
    make_field(p, m)
}

impl FieldSpec {
    pub fn new(p: u64, m: u32) -> Result<FieldSpec, GfError> {
        if m < 1 {
            return Err(GfError::InvalidDegree);
        }
        if p > MAX_FIELD_ORDER {
            return Err(GfError::FieldTooLarge { q: p });
        }
        if !is_prime(p) {
            return Err(GfError::NonPrimeCharacteristic(p));
        }
        let q = checked_pow(p, m).ok_or(GfError::FieldTooLarge { q: u64::MAX })?;
        if q > MAX_FIELD_ORDER {
            return Err(GfError::FieldTooLarge { q });
        }
        let modulus = if m == 1 {
            Vec::new()
        } else {
            smallest_irreducible(p, m)
        };
        let mut field = FieldSpec {
            p,
            m,
            q,
            modulus,
            tables: None,
        };
        if q <= TABLE_THRESHOLD {
            field.tables = Some(field.build_tables());
        }
        Ok(field)
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn m(&self) -> u32 {
        self.m
    }

    #[inline]
    pub fn q(&self) -> u64 {
        self.q
    }

    /// Modulus coefficients, constant term first; empty for prime fields.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// The field identity as serialized: `"5"` or `"3^2"`.
    pub fn order_string(&self) -> String {
        if self.m == 1 {
            format!("{}", self.p)
        } else {
            format!("{}^{}", self.p, self.m)
        }
    }

    /// Human-readable modulus polynomial, e.g. `x^2 + x + 1`.
    pub fn modulus_string(&self) -> String {
        if self.m == 1 {
            return String::from("(prime field)");
        }
        let mut terms = Vec::new();
        for (i, &c) in self.modulus.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let term = match (i, c) {
                (0, c) => format!("{c}"),
                (1, 1) => String::from("x"),
                (1, c) => format!("{c}x"),
                (i, 1) => format!("x^{i}"),
                (i, c) => format!("{c}x^{i}"),
            };
            terms.push(term);
        }
        terms.join(" + ")
    }

    #[inline]
    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    #[inline]
    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    /// Validate an integer encoding.
    pub fn element(&self, value: u64) -> Result<FieldElement, GfError> {
        if value < self.q {
            Ok(FieldElement(value as u16))
        } else {
            Err(GfError::ElementOutOfRange { value, q: self.q })
        }
    }

    /// All elements in increasing encoding order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q).map(|v| FieldElement(v as u16))
    }

    /// The `q - 1` nonzero elements in increasing encoding order.
    pub fn enumerate_nonzero(&self) -> impl Iterator<Item = FieldElement> {
        (1..self.q).map(|v| FieldElement(v as u16))
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        debug_assert!(a.value() < self.q && b.value() < self.q);
        match &self.tables {
            Some(t) => FieldElement(t.add[a.0 as usize * self.q as usize + b.0 as usize]),
            None => self.add_nocache(a, b),
        }
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        match &self.tables {
            Some(t) => FieldElement(t.neg[a.0 as usize]),
            None => self.neg_nocache(a),
        }
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        debug_assert!(a.value() < self.q && b.value() < self.q);
        match &self.tables {
            Some(t) => FieldElement(t.mul[a.0 as usize * self.q as usize + b.0 as usize]),
            None => self.mul_nocache(a, b),
        }
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, GfError> {
        if a.is_zero() {
            return Err(GfError::DivisionByZero);
        }
        match &self.tables {
            Some(t) => Ok(FieldElement(t.inv[a.0 as usize])),
            None => Ok(self.pow(a, self.q - 2)),
        }
    }

    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut base = a;
        let mut acc = FieldElement::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Coefficient-wise addition mod p, bypassing the tables.
    fn add_nocache(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.m == 1 {
            return FieldElement(((a.value() + b.value()) % self.p) as u16);
        }
        let mut out = 0u64;
        let mut av = a.value();
        let mut bv = b.value();
        let mut scale = 1u64;
        for _ in 0..self.m {
            let digit = (av % self.p + bv % self.p) % self.p;
            out += digit * scale;
            av /= self.p;
            bv /= self.p;
            scale *= self.p;
        }
        FieldElement(out as u16)
    }

    fn neg_nocache(&self, a: FieldElement) -> FieldElement {
        if self.m == 1 {
            return FieldElement(((self.p - a.value()) % self.p) as u16);
        }
        let mut out = 0u64;
        let mut av = a.value();
        let mut scale = 1u64;
        for _ in 0..self.m {
            let digit = (self.p - av % self.p) % self.p;
            out += digit * scale;
            av /= self.p;
            scale *= self.p;
        }
        FieldElement(out as u16)
    }

    /// Polynomial product reduced mod the modulus, bypassing the tables.
    fn mul_nocache(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.m == 1 {
            return FieldElement(((a.value() * b.value()) % self.p) as u16);
        }
        let m = self.m as usize;
        let ad = self.digits(a.value());
        let bd = self.digits(b.value());
        // Schoolbook product, degree <= 2m - 2.
        let mut prod = vec![0u64; 2 * m - 1];
        for (i, &ai) in ad.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in bd.iter().enumerate() {
                prod[i + j] = (prod[i + j] + ai * bj) % self.p;
            }
        }
        // Reduce: x^m = -(c_0 + c_1 x + ... + c_{m-1} x^{m-1}).
        for deg in (m..prod.len()).rev() {
            let coeff = prod[deg];
            if coeff == 0 {
                continue;
            }
            prod[deg] = 0;
            for i in 0..m {
                let sub = coeff * self.modulus[i] % self.p;
                prod[deg - m + i] = (prod[deg - m + i] + self.p - sub) % self.p;
            }
        }
        let mut out = 0u64;
        for i in (0..m).rev() {
            out = out * self.p + prod[i];
        }
        FieldElement(out as u16)
    }

    fn digits(&self, mut v: u64) -> Vec<u64> {
        let mut d = vec![0u64; self.m as usize];
        for slot in d.iter_mut() {
            *slot = v % self.p;
            v /= self.p;
        }
        d
    }

    fn build_tables(&self) -> Tables {
        let q = self.q as usize;
        let mut add = vec![0u16; q * q];
        let mut mul = vec![0u16; q * q];
        let mut neg = vec![0u16; q];
        for a in 0..q {
            let fa = FieldElement(a as u16);
            neg[a] = self.neg_nocache(fa).0;
            for b in 0..q {
                let fb = FieldElement(b as u16);
                add[a * q + b] = self.add_nocache(fa, fb).0;
                mul[a * q + b] = self.mul_nocache(fa, fb).0;
            }
        }
        let mut inv = vec![0u16; q];
        for (a, slot) in inv.iter_mut().enumerate().skip(1) {
            let mut e = self.q - 2;
            let mut base = FieldElement(a as u16);
            let mut acc = FieldElement::ONE;
            while e > 0 {
                if e & 1 == 1 {
                    acc = self.mul_nocache(acc, base);
                }
                base = self.mul_nocache(base, base);
                e >>= 1;
            }
            debug_assert_eq!(self.mul_nocache(FieldElement(a as u16), acc).0, 1);
            *slot = acc.0;
        }
        Tables { add, mul, neg, inv }
    }
}

/// Deterministic trial-division primality test; `p <= 2^16` in practice.
fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p.is_multiple_of(2) {
        return p == 2;
    }
    let mut d = 3u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

fn checked_pow(p: u64, m: u32) -> Option<u64> {
    let mut acc = 1u64;
    for _ in 0..m {
        acc = acc.checked_mul(p)?;
        if acc > MAX_FIELD_ORDER {
            // Enough to know it is over the cap; avoid overflow for huge p.
            return Some(acc);
        }
    }
    Some(acc)
}

/// Factor `q` as `p^m` with `p` prime, if possible.
pub fn factor_prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut n = q;
    let mut p = 0u64;
    for cand in 2..=n {
        if cand * cand > n {
            p = n; // remaining factor is prime
            break;
        }
        if n.is_multiple_of(cand) {
            p = cand;
            break;
        }
    }
    let mut m = 0u32;
    while n.is_multiple_of(p) {
        n /= p;
        m += 1;
    }
    if n == 1 {
        Some((p, m))
    } else {
        None
    }
}

// ---- polynomial helpers over GF(p), dense coefficient vectors, constant first ----

fn poly_trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Remainder of `a` divided by monic `b` over GF(p).
fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r: Vec<u64> = a.to_vec();
    poly_trim(&mut r);
    let db = b.len() - 1;
    debug_assert_eq!(b[db], 1, "divisor must be monic");
    while r.len() > db {
        let lead = r[r.len() - 1];
        let shift = r.len() - 1 - db;
        if lead != 0 {
            for i in 0..=db {
                let sub = lead * b[i] % p;
                r[shift + i] = (r[shift + i] + p - sub) % p;
            }
        }
        r.pop();
        poly_trim(&mut r);
        if r.is_empty() {
            break;
        }
    }
    r
}

/// Is the monic polynomial `f` (constant first, leading 1) irreducible over GF(p)?
///
/// Trial division against every monic polynomial of degree 1..=deg(f)/2.
fn poly_is_irreducible(f: &[u64], p: u64) -> bool {
    let deg = f.len() - 1;
    debug_assert!(deg >= 1);
    for d in 1..=deg / 2 {
        // All monic polynomials of degree d: p^d coefficient choices.
        let count = p.pow(d as u32);
        for idx in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut t = idx;
            for _ in 0..d {
                g.push(t % p);
                t /= p;
            }
            g.push(1);
            if poly_rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// The lexicographically smallest monic irreducible of degree `m` over GF(p),
/// comparing coefficient lists from the constant term upward.
fn smallest_irreducible(p: u64, m: u32) -> Vec<u64> {
    let m = m as usize;
    let total = p.pow(m as u32);
    for idx in 0..total {
        // idx encodes (c_0, ..., c_{m-1}) with c_0 most significant, so
        // ascending idx is ascending lexicographic order on the list.
        let mut coeffs = vec![0u64; m + 1];
        coeffs[m] = 1;
        let mut t = idx;
        for i in (0..m).rev() {
            coeffs[i] = t % p;
            t /= p;
        }
        if poly_is_irreducible(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists over GF(p)")
}
