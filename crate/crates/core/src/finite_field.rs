//! Exact arithmetic in GF(p^n).
//!
//! Elements are coefficient vectors in the power basis `1, x, ..., x^{n-1}`
//! of `Z_p[x] / (f)`, where `f` is a monic irreducible polynomial. The trace,
//! dual basis and a few number-theoretic helpers live here as well.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{inv_mod, poly_degree, poly_gcd, QuotientRing};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut k = 2;
    while k * k <= n {
        if n.is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}

/// A finite field `GF(p^n)` given by its defining polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    p: u32,
    n: usize,
    /// Monic, constant term first, length `n + 1`.
    poly: Vec<u32>,
}

impl FieldSpec {
    /// Builds `GF(p^n)`.
    ///
    /// `poly` may be given either monic with `n + 1` coefficients or as the
    /// `n` low-order coefficients with the leading one implied. When omitted,
    /// the lexicographically smallest monic irreducible polynomial is used.
    pub fn new(p: u32, n: usize, poly: Option<&[u32]>) -> Result<Arc<FieldSpec>> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if n == 0 {
            return Err(Error::InvalidArgument("extension degree must be at least 1".into()));
        }
        let poly = match poly {
            Some(given) => {
                let full = normalize_monic(given, n, p)?;
                if !is_irreducible(&full, p) {
                    return Err(Error::Reducible(full, p));
                }
                full
            }
            None => default_irreducible(p, n),
        };
        Ok(Arc::new(FieldSpec { p, n, poly }))
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    /// Field order `p^n`.
    pub fn order(&self) -> usize {
        (self.p as usize).pow(self.n as u32)
    }

    /// Defining polynomial, monic, constant term first.
    pub fn poly(&self) -> &[u32] {
        &self.poly
    }

    pub(crate) fn quotient(&self) -> QuotientRing {
        QuotientRing { modulus: self.p, poly: self.poly.clone() }
    }

    /// Whether `a -> a^3` permutes the field, i.e. `gcd(3, p^n - 1) = 1`.
    pub fn cube_is_bijective(&self) -> bool {
        !(self.order() - 1).is_multiple_of(3)
    }
}

pub(crate) fn normalize_monic(given: &[u32], n: usize, modulus: u32) -> Result<Vec<u32>> {
    let mut full: Vec<u32> = given.iter().map(|&c| c % modulus).collect();
    if full.len() == n {
        full.push(1);
    }
    if full.len() != n + 1 {
        return Err(Error::BadPolynomial(format!(
            "expected {} or {} coefficients, got {}",
            n,
            n + 1,
            given.len()
        )));
    }
    if full[n] != 1 {
        return Err(Error::BadPolynomial("polynomial must be monic".into()));
    }
    Ok(full)
}

/// Irreducibility over `Z_p`: a root scan for degree ≤ 3 plus the
/// `gcd(x^{p^k} - x, f) = 1` test for `k ≤ n/2`.
pub(crate) fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let n = poly.len() - 1;
    if n == 1 {
        return true;
    }
    let has_root = (0..p).any(|r| {
        let mut acc = 0u64;
        for &c in poly.iter().rev() {
            acc = (acc * r as u64 + c as u64) % p as u64;
        }
        acc == 0
    });
    if has_root {
        return false;
    }
    if n <= 3 {
        return true;
    }
    let ring = QuotientRing { modulus: p, poly: poly.to_vec() };
    let mut x = ring.zero();
    x[1] = 1;
    let mut frob = x.clone();
    for _ in 1..=n / 2 {
        frob = ring.pow(&frob, p as u64);
        // frob - x, as a polynomial of degree < n
        let mut diff = frob.clone();
        diff[1] = (diff[1] + p - 1) % p;
        let g = poly_gcd(poly, &diff, p);
        if poly_degree(&g) > 0 || g.iter().all(|&c| c == 0) {
            return false;
        }
    }
    true
}

/// Smallest monic irreducible polynomial of degree `n`, comparing coefficient
/// lists constant term first.
pub(crate) fn default_irreducible(p: u32, n: usize) -> Vec<u32> {
    let total = (p as u64).pow(n as u32);
    for idx in 0..total {
        let mut c = vec![0u32; n + 1];
        let mut rest = idx;
        for nu in (0..n).rev() {
            c[nu] = (rest % p as u64) as u32;
            rest /= p as u64;
        }
        c[n] = 1;
        if is_irreducible(&c, p) {
            return c;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// An element of `GF(p^n)`.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    coeffs: Vec<u32>,
    spec: Arc<FieldSpec>,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}){:?}", self.spec.p, self.spec.n, self.coeffs)
    }
}

impl FieldElement {
    pub fn new(spec: &Arc<FieldSpec>, coeffs: &[u32]) -> Result<Self> {
        if coeffs.len() > spec.n {
            return Err(Error::DimMismatch { expected: spec.n, found: coeffs.len() });
        }
        let mut c: Vec<u32> = coeffs.iter().map(|&v| v % spec.p).collect();
        c.resize(spec.n, 0);
        Ok(FieldElement { coeffs: c, spec: spec.clone() })
    }

    /// Embeds an integer as a constant polynomial.
    pub fn from_int(spec: &Arc<FieldSpec>, v: i64) -> Self {
        let mut c = vec![0; spec.n];
        c[0] = v.rem_euclid(spec.p as i64) as u32;
        FieldElement { coeffs: c, spec: spec.clone() }
    }

    pub fn zero(spec: &Arc<FieldSpec>) -> Self {
        Self::from_int(spec, 0)
    }

    pub fn one(spec: &Arc<FieldSpec>) -> Self {
        Self::from_int(spec, 1)
    }

    /// The generator `x` of the power basis (equals the constant `0` when `n = 1`).
    pub fn x(spec: &Arc<FieldSpec>) -> Self {
        let mut e = Self::zero(spec);
        if spec.n > 1 {
            e.coeffs[1] = 1;
        }
        e
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn spec(&self) -> &Arc<FieldSpec> {
        &self.spec
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.spec, &other.spec) || *self.spec == *other.spec {
            Ok(())
        } else {
            Err(Error::SpecMismatch)
        }
    }

    fn with(&self, coeffs: Vec<u32>) -> Self {
        FieldElement { coeffs, spec: self.spec.clone() }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.with(self.spec.quotient().add(&self.coeffs, &other.coeffs)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.with(self.spec.quotient().neg(&self.coeffs))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.with(self.spec.quotient().mul(&self.coeffs, &other.coeffs)))
    }

    pub fn scale(&self, s: u32) -> Self {
        self.with(self.spec.quotient().scale(&self.coeffs, s % self.spec.p))
    }

    pub fn pow(&self, e: u64) -> Self {
        self.with(self.spec.quotient().pow(&self.coeffs, e))
    }

    pub fn cube(&self) -> Self {
        self.pow(3)
    }

    /// Multiplicative inverse via `a^{p^n - 2}`.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(self.spec.order() as u64 - 2))
    }

    /// Field trace `sum_k a^{p^k}`, returned as a residue mod `p`.
    pub fn trace(&self) -> u32 {
        let q = self.spec.quotient();
        let mut acc = self.spec.quotient().zero();
        let mut conj = self.coeffs.clone();
        for _ in 0..self.spec.n {
            acc = q.add(&acc, &conj);
            conj = q.pow(&conj, self.spec.p as u64);
        }
        debug_assert!(acc[1..].iter().all(|&c| c == 0), "trace lands in the prime field");
        acc[0]
    }

    /// Enumerates all `p^n` elements with the constant coefficient most significant.
    pub fn all(spec: &Arc<FieldSpec>) -> Vec<FieldElement> {
        spec.quotient()
            .elements()
            .map(|c| FieldElement { coeffs: c, spec: spec.clone() })
            .collect()
    }
}

/// Element `ã_i` with `tr(ã_i · b) = b_i` for every `b`, i.e. the trace-dual
/// of the power basis vector `x^i`.
pub fn dual_element(spec: &Arc<FieldSpec>, i: usize) -> Result<FieldElement> {
    let n = spec.n;
    if i >= n {
        return Err(Error::InvalidArgument(format!("coordinate {i} out of range for degree {n}")));
    }
    let p = spec.p as i64;
    let q = spec.quotient();
    let basis: Vec<Vec<u32>> = (0..n)
        .map(|k| {
            let mut e = q.zero();
            e[k] = 1;
            e
        })
        .collect();
    let tr = |v: &[u32]| FieldElement { coeffs: v.to_vec(), spec: spec.clone() }.trace() as i64;
    // Row nu: sum_mu y_mu tr(x^mu x^nu) = delta_{nu i}
    let mut aug: Vec<Vec<i64>> = (0..n)
        .map(|nu| {
            let mut row: Vec<i64> = (0..n).map(|mu| tr(&q.mul(&basis[mu], &basis[nu]))).collect();
            row.push(if nu == i { 1 } else { 0 });
            row
        })
        .collect();
    solve_mod_p(&mut aug, p)
        .map(|y| FieldElement {
            coeffs: y.into_iter().map(|v| v as u32).collect(),
            spec: spec.clone(),
        })
        .ok_or_else(|| Error::InvalidArgument("degenerate trace form".into()))
}

/// Gauss-Jordan elimination of an augmented system over `Z_p`.
fn solve_mod_p(aug: &mut [Vec<i64>], p: i64) -> Option<Vec<i64>> {
    let n = aug.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| aug[r][col].rem_euclid(p) != 0)?;
        aug.swap(col, pivot);
        let inv = inv_mod(aug[col][col].rem_euclid(p) as u32, p as u32)? as i64;
        for v in aug[col].iter_mut() {
            *v = (*v * inv).rem_euclid(p);
        }
        for r in 0..n {
            if r != col && aug[r][col] != 0 {
                let f = aug[r][col];
                let pivot_row = aug[col].clone();
                for (v, pv) in aug[r].iter_mut().zip(pivot_row) {
                    *v = (*v - f * pv).rem_euclid(p);
                }
            }
        }
    }
    Some(aug.iter().map(|row| row[n]).collect())
}

/// Jacobi symbol `(a / m)` for odd positive `m`.
pub fn jacobi_symbol(a: i64, m: u64) -> Result<i32> {
    if m.is_multiple_of(2) {
        return Err(Error::EvenModulus(m));
    }
    let mut a = a.rem_euclid(m as i64) as u64;
    let mut m = m;
    let mut result = 1;
    while a != 0 {
        while a.is_multiple_of(2) {
            a /= 2;
            if m % 8 == 3 || m % 8 == 5 {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut m);
        if a % 4 == 3 && m % 4 == 3 {
            result = -result;
        }
        a %= m;
    }
    Ok(if m == 1 { result } else { 0 })
}

/// Normalization `ε_p` of the quadratic Gauss sum, `Σ_j ω_p^{j²} = ε_p √p`.
pub fn gauss_eps(p: u64) -> Result<Complex64> {
    if p.is_multiple_of(2) {
        return Err(Error::EvenModulus(p));
    }
    Ok(if p % 4 == 1 { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 1.0) })
}
