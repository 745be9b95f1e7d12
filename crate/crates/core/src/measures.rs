//! The magick functional `M(ρ) = Σ_{kl} |Tr W_kl ρ|` over the product WH
//! group, its single-group counterpart, and the SIC/MUB divergences.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fiducials::{fiducial_mub_qubit, FiducialRecipe};
use crate::finite_field::{gauss_eps, is_prime, jacobi_symbol};
use crate::states::{raw_overlap, DensityOperator, DimProfile, StateVector};
use crate::wh::{WhGroup, WhIndex};

/// Upper bound of the magick over all pure states, attained by SIC fiducials.
pub fn bound_sic(d: usize) -> f64 {
    1.0 + (d as f64 - 1.0) * (d as f64 + 1.0).sqrt()
}

/// Upper bound over equimodular states, attained by MUB fiducials.
pub fn bound_mub(d: usize) -> f64 {
    1.0 + (d as f64 - 1.0) * (d as f64).sqrt()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OperatorTerm {
    pub index: WhIndex,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MagickReport {
    pub value: f64,
    pub bound_sic: f64,
    pub bound_mub: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub per_operator: Option<Vec<OperatorTerm>>,
}

/// Either a pure state or a density operator, together with its profile.
#[derive(Debug, Clone, Copy)]
pub enum StateRef<'a> {
    Pure(&'a StateVector),
    Mixed(&'a DensityOperator, &'a DimProfile),
}

impl<'a> From<&'a StateVector> for StateRef<'a> {
    fn from(s: &'a StateVector) -> Self {
        StateRef::Pure(s)
    }
}

/// `|Tr W_kl ρ|` for every `(K, L)` row-major, one row per `K`.
fn magnitude_rows(group: &WhGroup, state: StateRef<'_>) -> Result<Vec<Vec<f64>>> {
    let d = group.dim();
    let found = match state {
        StateRef::Pure(s) => s.dim(),
        StateRef::Mixed(r, _) => r.dim(),
    };
    if found != d {
        return Err(Error::DimMismatch { expected: d, found });
    }
    let profile = group.profile();
    Ok((0..d)
        .into_par_iter()
        .map(|kk| {
            let k = profile.digits(kk);
            let row = match state {
                StateRef::Pure(s) => group.characteristic_row(s.amps(), &k),
                StateRef::Mixed(r, _) => group.characteristic_row_density(r.matrix(), &k),
            };
            row.iter().map(|z| z.norm()).collect()
        })
        .collect())
}

fn total(rows: &[Vec<f64>]) -> f64 {
    // fixed index-major reduction order
    rows.iter().map(|r| r.iter().sum::<f64>()).sum()
}

/// Magick over the product WH group of the state's profile.
pub fn magick<'a>(state: impl Into<StateRef<'a>>) -> Result<f64> {
    let state = state.into();
    let profile = match state {
        StateRef::Pure(s) => s.profile().clone(),
        StateRef::Mixed(_, p) => p.clone(),
    };
    Ok(total(&magnitude_rows(&WhGroup::new(&profile), state)?))
}

/// Magick with bounds and, optionally, every term.
pub fn magick_report<'a>(state: impl Into<StateRef<'a>>, per_operator: bool) -> Result<MagickReport> {
    let state = state.into();
    let profile = match state {
        StateRef::Pure(s) => s.profile().clone(),
        StateRef::Mixed(_, p) => p.clone(),
    };
    let rows = magnitude_rows(&WhGroup::new(&profile), state)?;
    let d = profile.total();
    let per_operator = per_operator.then(|| {
        rows.iter()
            .enumerate()
            .flat_map(|(kk, row)| {
                let profile = &profile;
                row.iter()
                    .enumerate()
                    .map(move |(ll, &value)| OperatorTerm { index: WhIndex::from_flat(profile, kk, ll), value })
            })
            .collect()
    });
    Ok(MagickReport { value: total(&rows), bound_sic: bound_sic(d), bound_mub: bound_mub(d), per_operator })
}

/// Magic over the single WH group of the full dimension `d`.
pub fn magic_global<'a>(state: impl Into<StateRef<'a>>) -> Result<f64> {
    match state.into() {
        StateRef::Pure(s) => {
            let flat = s.with_profile(DimProfile::new(vec![s.dim()])?)?;
            magick(&flat)
        }
        StateRef::Mixed(r, _) => {
            let p = DimProfile::new(vec![r.dim()])?;
            magick(StateRef::Mixed(r, &p))
        }
    }
}

/// `Σ_{α<β} (|⟨ψ_α|ψ_β⟩| - 1/√(d+1))²` over `d²` states.
pub fn p_sic(states: &[StateVector]) -> Result<f64> {
    let d = states.first().map(|s| s.dim()).unwrap_or(0);
    if d == 0 || states.len() != d * d {
        return Err(Error::WrongCount { expected: d * d, found: states.len() });
    }
    if let Some(s) = states.iter().find(|s| s.dim() != d) {
        return Err(Error::DimMismatch { expected: d, found: s.dim() });
    }
    let target = 1.0 / (d as f64 + 1.0).sqrt();
    let parts: Vec<f64> = (0..states.len())
        .into_par_iter()
        .map(|a| {
            states[a + 1..]
                .iter()
                .map(|t| (raw_overlap(states[a].amps(), t.amps()).norm() - target).powi(2))
                .sum()
        })
        .collect();
    Ok(parts.iter().sum())
}

/// Largest deviation of a basis' Gram matrix from the identity.
pub fn orthonormality_deviation(basis: &[StateVector]) -> f64 {
    let mut worst = 0.0f64;
    for (i, a) in basis.iter().enumerate() {
        for (j, b) in basis.iter().enumerate().skip(i) {
            let g = raw_overlap(a.amps(), b.amps());
            let want = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((g - Complex64::new(want, 0.0)).norm());
        }
    }
    worst
}

/// `Σ_{a<b} Σ_{ψ∈B_a, φ∈B_b} (|⟨ψ|φ⟩| - 1/√d)²`.
pub fn p_mub(bases: &[Vec<StateVector>]) -> Result<f64> {
    let d = bases.first().and_then(|b| b.first()).map(|s| s.dim()).unwrap_or(0);
    for (i, b) in bases.iter().enumerate() {
        if b.len() != d || b.iter().any(|s| s.dim() != d) {
            return Err(Error::WrongCount { expected: d, found: b.len() });
        }
        let dev = orthonormality_deviation(b);
        if dev > 1e-9 {
            return Err(Error::NotOrthonormal(i, dev));
        }
    }
    let target = 1.0 / (d as f64).sqrt();
    let pairs: Vec<(usize, usize)> =
        (0..bases.len()).flat_map(|a| (a + 1..bases.len()).map(move |b| (a, b))).collect();
    let parts: Vec<f64> = pairs
        .par_iter()
        .map(|&(a, b)| {
            let mut acc = 0.0;
            for x in &bases[a] {
                for y in &bases[b] {
                    acc += (raw_overlap(x.amps(), y.amps()).norm() - target).powi(2);
                }
            }
            acc
        })
        .collect();
    Ok(parts.iter().sum())
}

/// `P_SIC` of a full WH orbit as a function of the fiducial's magick.
pub fn p_sic_orbit_formula(d: usize, magick: f64) -> f64 {
    let d = d as f64;
    d * d * d - d * d + d * d / (d + 1.0).sqrt() * (1.0 - magick)
}

/// `P_MUB` of the `d` bases of an equimodular orbit as a function of the magick.
pub fn p_mub_orbit_formula(d: usize, magick: f64) -> f64 {
    let d = d as f64;
    d * d * d - d * d + d * d.sqrt() * (1.0 - magick)
}

/// Smallest `q ≥ 1` with `-q` a quadratic non-residue mod `p`, so that
/// `x² + q` is irreducible over `Z_p`.
pub fn nonresidue_shift(p: u32) -> Result<u32> {
    if p < 5 || !is_prime(p as u64) {
        return Err(Error::BadPrime(p));
    }
    (1..p)
        .find(|&q| jacobi_symbol(-(q as i64), p as u64) == Ok(-1))
        .ok_or(Error::BadPrime(p))
}

/// The two-qudit fiducial whose marginals have the closed forms below:
/// polynomial `x² + q` and `a = ã_0 = 1/2`.
pub fn dual_fiducial_recipe(p: u32) -> Result<FiducialRecipe> {
    let q = nonresidue_shift(p)?;
    Ok(FiducialRecipe::field(p, 2, p.div_ceil(2) as i64).with_poly(vec![q, 0, 1]))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Marginal {
    /// Reduced state of the first qudit.
    Rho1,
    /// Reduced state of the second qudit.
    Rho2,
}

/// Closed form of a marginal of [`dual_fiducial_recipe`].
pub fn marginal_closed_form(p: u32, variant: Marginal) -> Result<DensityOperator> {
    let q = nonresidue_shift(p)? as i64;
    let pu = p as usize;
    let pf = p as f64;
    let m = match variant {
        Marginal::Rho1 => {
            let eps = gauss_eps(p as u64)?;
            DMatrix::from_fn(pu, pu, |i, j| {
                if i == j {
                    return Complex64::new(1.0 / pf, 0.0);
                }
                let (i, j) = (i as i64, j as i64);
                let jac = jacobi_symbol(-3 * q * (i - j), p as u64).expect("p is an odd prime") as f64;
                let cube = (i.pow(3) - j.pow(3)).rem_euclid(p as i64) as f64;
                eps * jac * Complex64::from_polar(1.0, 2.0 * PI * cube / pf) / pf.powf(1.5)
            })
        }
        Marginal::Rho2 => {
            let mut m = DMatrix::zeros(pu, pu);
            m[(0, 0)] = Complex64::new(1.0 / pf, 0.0);
            for i in 1..pu {
                m[(i, i)] += Complex64::new(1.0 / pf, 0.0);
                m[(i, pu - i)] += Complex64::new(1.0 / pf, 0.0);
            }
            m
        }
    };
    Ok(DensityOperator::from_matrix_unchecked(m))
}

/// Hilbert-Schmidt overlap of two WH images of either marginal, from the case table.
pub fn marginal_hs_overlap(p: u32, k: usize, l: usize, k2: usize, l2: usize) -> Result<f64> {
    nonresidue_shift(p)?;
    let pf = p as f64;
    let (k, l, k2, l2) = (k % p as usize, l % p as usize, k2 % p as usize, l2 % p as usize);
    Ok(if k != k2 {
        1.0 / pf
    } else if l != l2 {
        (pf - 1.0) / (pf * pf)
    } else {
        (2.0 * pf - 1.0) / (pf * pf)
    })
}

/// `Tr[(W_kl ρ W_kl†)(W_k'l' ρ W_k'l'†)]` computed directly.
pub fn hs_overlap_numeric(rho: &DensityOperator, k: usize, l: usize, k2: usize, l2: usize) -> f64 {
    let d = rho.dim();
    let a = rho.conjugated(&crate::wh::wh_matrix(d, k, l));
    let b = rho.conjugated(&crate::wh::wh_matrix(d, k2, l2));
    a.hs_inner(&b).re
}

/// Magick of the `p^n` fiducial against the product of single-qudit magics
/// of the `p`-dimensional fiducial.
pub fn product_magic_comparison(p: u32, n: usize) -> Result<(f64, f64)> {
    let (global, local) = match p {
        2 => (fiducial_mub_qubit(n)?, fiducial_mub_qubit(1)?),
        3 => (FiducialRecipe::ring(n, 1).phase_state()?, FiducialRecipe::ring(1, 1).phase_state()?),
        _ => (FiducialRecipe::field(p, n, 1).phase_state()?, FiducialRecipe::field(p, 1, 1).phase_state()?),
    };
    let m = magick(&global.to_amplitudes())?;
    let m1 = magic_global(&local.to_amplitudes())?;
    Ok((m, m1.powi(n as i32)))
}
