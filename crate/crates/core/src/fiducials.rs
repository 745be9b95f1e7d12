//! Fiducial states: the cubic-trace constructions over Galois fields and
//! rings, the qubit special cases, the Hoggar SIC fiducial and the sporadic
//! two-qutrit triplet.

use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finite_field::{FieldElement, FieldSpec};
use crate::galois_ring::{coset_representatives, RingElement, RingSpec, RING_MODULUS};
use crate::states::{DigitOrder, DimProfile, PhaseState, StateVector};

/// Parameter `a`, either a coefficient list (constant term first) or an
/// integer embedded as a constant polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Param {
    Int(i64),
    Coeffs(Vec<u32>),
}

impl Param {
    pub fn field_element(&self, spec: &Arc<FieldSpec>) -> Result<FieldElement> {
        match self {
            Param::Int(v) => Ok(FieldElement::from_int(spec, *v)),
            Param::Coeffs(c) => FieldElement::new(spec, c),
        }
    }

    pub fn ring_element(&self, spec: &Arc<RingSpec>) -> Result<RingElement> {
        match self {
            Param::Int(v) => Ok(RingElement::from_int(spec, *v)),
            Param::Coeffs(c) => RingElement::new(spec, c),
        }
    }
}

impl From<i64> for Param {
    fn from(v: i64) -> Self {
        Param::Int(v)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FiducialKind {
    Field,
    Ring,
    Qubit,
    Hoggar,
    Sporadic,
}

/// Serializable description of a fiducial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiducialRecipe {
    pub kind: FiducialKind,
    #[serde(default)]
    pub p: u32,
    #[serde(default = "one")]
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<Param>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub poly: Option<Vec<u32>>,
    #[serde(default)]
    pub order: DigitOrder,
    /// Which member of the sporadic triplet.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub index: Option<usize>,
}

fn one() -> usize {
    1
}

impl FiducialRecipe {
    pub fn field(p: u32, n: usize, a: impl Into<Param>) -> Self {
        FiducialRecipe { kind: FiducialKind::Field, p, n, a: Some(a.into()), poly: None, order: DigitOrder::Big, index: None }
    }

    pub fn ring(n: usize, a: impl Into<Param>) -> Self {
        FiducialRecipe { kind: FiducialKind::Ring, p: 3, n, a: Some(a.into()), poly: None, order: DigitOrder::Big, index: None }
    }

    pub fn qubit(n: usize) -> Self {
        FiducialRecipe { kind: FiducialKind::Qubit, p: 2, n, a: None, poly: None, order: DigitOrder::Big, index: None }
    }

    pub fn with_poly(mut self, poly: Vec<u32>) -> Self {
        self.poly = Some(poly);
        self
    }

    pub fn with_order(mut self, order: DigitOrder) -> Self {
        self.order = order;
        self
    }

    fn param(&self) -> Result<&Param> {
        self.a.as_ref().ok_or_else(|| Error::InvalidArgument("recipe needs a parameter 'a'".into()))
    }

    /// Exact phase form, when the fiducial is a phase state.
    pub fn phase_state(&self) -> Result<PhaseState> {
        match self.kind {
            FiducialKind::Field => {
                if self.p < 5 {
                    return Err(Error::BadPrime(self.p));
                }
                let spec = FieldSpec::new(self.p, self.n, self.poly.as_deref())?;
                let a = self.param()?.field_element(&spec)?;
                fiducial_mub_field(&spec, &a, self.order)
            }
            FiducialKind::Ring => {
                if self.p != 3 {
                    return Err(Error::BadPrime(self.p));
                }
                let spec = RingSpec::new(self.n, self.poly.as_deref())?;
                let a = self.param()?.ring_element(&spec)?;
                fiducial_mub_ring(&spec, &a, self.order)
            }
            FiducialKind::Qubit => fiducial_mub_qubit(self.n),
            FiducialKind::Sporadic => {
                let i = self.index.unwrap_or(0);
                sporadic_triplet().into_iter().nth(i).ok_or_else(|| {
                    Error::InvalidArgument(format!("sporadic index {i} out of range 0..3"))
                })
            }
            FiducialKind::Hoggar => Err(Error::InvalidArgument("the Hoggar fiducial is not a phase state".into())),
        }
    }

    pub fn state(&self) -> Result<StateVector> {
        match self.kind {
            FiducialKind::Hoggar => Ok(hoggar_fiducial()),
            _ => Ok(self.phase_state()?.to_amplitudes()),
        }
    }
}

/// `|f⟩ = p^{-n/2} Σ_j ω_p^{tr(a j³)} |j⟩` over `GF(p^n)`, `p ≥ 5`.
pub fn fiducial_mub_field(spec: &Arc<FieldSpec>, a: &FieldElement, order: DigitOrder) -> Result<PhaseState> {
    let p = spec.p();
    if p < 5 {
        return Err(Error::BadPrime(p));
    }
    if a.is_zero() {
        return Err(Error::ZeroParameter);
    }
    let n = spec.degree();
    let exps = (0..spec.order())
        .map(|idx| {
            let j = FieldElement::new(spec, &order.digits_of(idx, p, n)).expect("digit count is n");
            a.mul(&j.cube()).map(|v| v.trace())
        })
        .collect::<Result<Vec<u32>>>()?;
    Ok(PhaseState::from_raw(p, exps, DimProfile::uniform(p as usize, n)?))
}

/// `|f⟩ = 3^{-n/2} Σ_j ω_9^{tr(a j³)} |j⟩` with `j` over the coset representatives of `GR(9, n)`.
pub fn fiducial_mub_ring(spec: &Arc<RingSpec>, a: &RingElement, order: DigitOrder) -> Result<PhaseState> {
    if a.is_zero_divisor() {
        return Err(Error::ZeroDivisorParameter);
    }
    let exps = coset_representatives(spec, order)
        .iter()
        .map(|j| a.mul(&j.cube()).map(|v| v.trace()))
        .collect::<Result<Vec<u32>>>()?;
    Ok(PhaseState::from_raw(RING_MODULUS, exps, DimProfile::uniform(3, spec.degree())?))
}

/// The one- and two-qubit fiducials. No fiducial is known for three or more qubits.
pub fn fiducial_mub_qubit(n: usize) -> Result<PhaseState> {
    match n {
        1 => Ok(PhaseState::from_raw(8, vec![0, 1], DimProfile::uniform(2, 1)?)),
        2 => Ok(PhaseState::from_raw(4, vec![0, 1, 1, 1], DimProfile::uniform(2, 2)?)),
        0 => Err(Error::InvalidArgument("n must be at least 1".into())),
        _ => Err(Error::NotAvailable(n)),
    }
}

/// `(1+i, 0, -1, 1, -i, -1, 0, 0) / √6` on three qubits.
pub fn hoggar_fiducial() -> StateVector {
    let s = 1.0 / 6f64.sqrt();
    let raw = [(1.0, 1.0), (0.0, 0.0), (-1.0, 0.0), (1.0, 0.0), (0.0, -1.0), (-1.0, 0.0), (0.0, 0.0), (0.0, 0.0)];
    let amps = raw.iter().map(|&(re, im)| Complex64::new(re * s, im * s)).collect();
    StateVector::from_raw(amps, DimProfile::uniform(2, 3).expect("valid profile"))
}

const SPORADIC: [[u32; 9]; 3] = [
    [0, 1, 1, 1, 1, 0, 1, 1, 0],
    [0, 0, 1, 0, 0, 1, 0, 1, 0],
    [0, 0, 0, 0, 0, 0, 1, 2, 0],
];

/// Three two-qutrit fiducials over `ω_3` whose orbits under a subgroup of the
/// product WH group give three disjoint complete MUB families.
pub fn sporadic_triplet() -> [PhaseState; 3] {
    let profile = DimProfile::uniform(3, 2).expect("valid profile");
    SPORADIC.map(|e| PhaseState::from_raw(3, e.to_vec(), profile.clone()))
}

/// Diagonal gate `diag(ω_r^{e_j})` that maps `|+⟩` to a fiducial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TGate {
    pub root: u32,
    pub exps: Vec<u32>,
}

impl TGate {
    pub fn apply(&self, s: &PhaseState) -> Result<PhaseState> {
        if s.dim() != self.exps.len() {
            return Err(Error::DimMismatch { expected: self.exps.len(), found: s.dim() });
        }
        let lifted = s.lifted(crate::states::lcm(s.root() as u64, self.root as u64) as u32)?;
        let f = lifted.root() / self.root;
        let exps = lifted.exps().iter().zip(&self.exps).map(|(&a, &b)| (a + b * f) % lifted.root()).collect();
        PhaseState::new(lifted.root(), exps, s.profile().clone())
    }
}

/// The diagonal gate of a phase-state recipe. Since `|+⟩` carries no phases
/// its exponents coincide with those of the fiducial.
pub fn t_gate(recipe: &FiducialRecipe) -> Result<TGate> {
    let f = recipe.phase_state()?;
    Ok(TGate { root: f.root(), exps: f.exps().to_vec() })
}
