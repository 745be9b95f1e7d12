//! Arithmetic in the Galois ring `GR(9, n) = (Z/9Z)[x] / (P)`, with `P`
//! monic and irreducible modulo 3.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finite_field::{default_irreducible, is_irreducible, normalize_monic, FieldElement, FieldSpec};
use crate::poly::QuotientRing;
use crate::states::DigitOrder;

pub const RING_MODULUS: u32 = 9;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingSpec {
    n: usize,
    /// Monic over Z/9Z, constant term first, length `n + 1`.
    poly: Vec<u32>,
}

impl RingSpec {
    /// Builds `GR(9, n)`. The default polynomial is the lift, with
    /// coefficients in `{0, 1, 2}`, of the default `GF(3^n)` polynomial.
    pub fn new(n: usize, poly: Option<&[u32]>) -> Result<Arc<RingSpec>> {
        if n == 0 {
            return Err(Error::InvalidArgument("extension degree must be at least 1".into()));
        }
        let poly = match poly {
            Some(given) => {
                let full = normalize_monic(given, n, RING_MODULUS)?;
                let reduced: Vec<u32> = full.iter().map(|c| c % 3).collect();
                if !is_irreducible(&reduced, 3) {
                    return Err(Error::ReducibleModThree(full));
                }
                full
            }
            None => default_irreducible(3, n),
        };
        Ok(Arc::new(RingSpec { n, poly }))
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn poly(&self) -> &[u32] {
        &self.poly
    }

    /// The residue field `GR(9, n) / (3)`.
    pub fn residue_field(&self) -> Arc<FieldSpec> {
        let reduced: Vec<u32> = self.poly.iter().map(|c| c % 3).collect();
        FieldSpec::new(3, self.n, Some(&reduced)).expect("reduction is irreducible by construction")
    }

    pub(crate) fn quotient(&self) -> QuotientRing {
        QuotientRing { modulus: RING_MODULUS, poly: self.poly.clone() }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct RingElement {
    coeffs: Vec<u32>,
    spec: Arc<RingSpec>,
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GR(9,{}){:?}", self.spec.n, self.coeffs)
    }
}

impl RingElement {
    pub fn new(spec: &Arc<RingSpec>, coeffs: &[u32]) -> Result<Self> {
        if coeffs.len() > spec.n {
            return Err(Error::DimMismatch { expected: spec.n, found: coeffs.len() });
        }
        let mut c: Vec<u32> = coeffs.iter().map(|&v| v % RING_MODULUS).collect();
        c.resize(spec.n, 0);
        Ok(RingElement { coeffs: c, spec: spec.clone() })
    }

    pub fn from_int(spec: &Arc<RingSpec>, v: i64) -> Self {
        let mut c = vec![0; spec.n];
        c[0] = v.rem_euclid(RING_MODULUS as i64) as u32;
        RingElement { coeffs: c, spec: spec.clone() }
    }

    pub fn one(spec: &Arc<RingSpec>) -> Self {
        Self::from_int(spec, 1)
    }

    pub fn x(spec: &Arc<RingSpec>) -> Self {
        let mut e = Self::from_int(spec, 0);
        if spec.n > 1 {
            e.coeffs[1] = 1;
        }
        e
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn spec(&self) -> &Arc<RingSpec> {
        &self.spec
    }

    fn check(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.spec, &other.spec) || *self.spec == *other.spec {
            Ok(())
        } else {
            Err(Error::SpecMismatch)
        }
    }

    fn with(&self, coeffs: Vec<u32>) -> Self {
        RingElement { coeffs, spec: self.spec.clone() }
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
        self.with(self.spec.quotient().scale(&self.coeffs, s % RING_MODULUS))
    }

    pub fn pow(&self, e: u64) -> Self {
        self.with(self.spec.quotient().pow(&self.coeffs, e))
    }

    pub fn cube(&self) -> Self {
        self.pow(3)
    }

    /// Trace of multiplication by `self` in the power basis, in `Z/9Z`.
    pub fn trace(&self) -> u32 {
        self.spec.quotient().matrix_trace(&self.coeffs)
    }

    /// Membership in the maximal ideal `(3)`, which is exactly the set of zero divisors.
    pub fn is_zero_divisor(&self) -> bool {
        self.coeffs.iter().all(|c| c % 3 == 0)
    }

    /// Image in the residue field.
    pub fn residue(&self, field: &Arc<FieldSpec>) -> FieldElement {
        let c: Vec<u32> = self.coeffs.iter().map(|c| c % 3).collect();
        FieldElement::new(field, &c).expect("degrees agree")
    }

    pub fn all(spec: &Arc<RingSpec>) -> Vec<RingElement> {
        spec.quotient()
            .elements()
            .map(|c| RingElement { coeffs: c, spec: spec.clone() })
            .collect()
    }
}

/// One representative per coset of `(3)`: coefficients in `{0, 1, 2}`, listed
/// so that position `J` holds the element whose digits map to basis index `J`.
pub fn coset_representatives(spec: &Arc<RingSpec>, order: DigitOrder) -> Vec<RingElement> {
    let n = spec.n;
    let total = 3usize.pow(n as u32);
    (0..total)
        .map(|j| {
            let digits = order.digits_of(j, 3, n);
            RingElement { coeffs: digits, spec: spec.clone() }
        })
        .collect()
}
