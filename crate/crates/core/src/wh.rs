//! Product Weyl-Heisenberg operators `W_kl = ⊗_ν τ^{k_ν l_ν} X^{k_ν} Z^{l_ν}`
//! acting matrix-free on dense and phase-exponent states.
//!
//! `X|j⟩ = |j+1⟩`, `Z|j⟩ = ω^j |j⟩` and `τ_d = -e^{iπ/d} = ω_{2d}^{d+1}`.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::states::{lcm, DensityOperator, DimProfile, PhaseState, StateVector};

/// Shift and clock exponents, one entry per subsystem.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WhIndex {
    pub k: Vec<usize>,
    pub l: Vec<usize>,
}

impl WhIndex {
    pub fn new(k: Vec<usize>, l: Vec<usize>) -> Self {
        WhIndex { k, l }
    }

    pub fn identity(n: usize) -> Self {
        WhIndex { k: vec![0; n], l: vec![0; n] }
    }

    /// Index whose digit vectors are those of the flat indices `kk` and `ll`.
    pub fn from_flat(profile: &DimProfile, kk: usize, ll: usize) -> Self {
        WhIndex { k: profile.digits(kk), l: profile.digits(ll) }
    }

    pub fn flat(&self, profile: &DimProfile) -> (usize, usize) {
        (profile.index(&self.k), profile.index(&self.l))
    }

    pub fn is_identity(&self) -> bool {
        self.k.iter().chain(&self.l).all(|&v| v == 0)
    }

    fn check(&self, profile: &DimProfile) -> Result<()> {
        let n = profile.len();
        if self.k.len() != n || self.l.len() != n {
            return Err(Error::DimMismatch { expected: n, found: self.k.len().max(self.l.len()) });
        }
        for ((&k, &l), &d) in self.k.iter().zip(&self.l).zip(profile.dims()) {
            if k >= d || l >= d {
                return Err(Error::InvalidArgument(format!("WH exponent out of range for d = {d}")));
            }
        }
        Ok(())
    }
}

/// Precomputed index tables for one dimension profile.
///
/// Phases are kept as exponents of `ω_R` with `R = lcm_ν(2 d_ν)`, so the
/// action is exact up to the final conversion to floating point.
#[derive(Debug, Clone)]
pub struct WhGroup {
    profile: DimProfile,
    /// `digits[J * n + ν]`
    digits: Vec<usize>,
    strides: Vec<usize>,
    root: u64,
    /// `R / (2 d_ν)`
    unit: Vec<u64>,
    phases: Vec<Complex64>,
}

impl WhGroup {
    pub fn new(profile: &DimProfile) -> Self {
        let dims = profile.dims();
        let n = dims.len();
        let d = profile.total();
        let mut digits = Vec::with_capacity(d * n);
        for j in 0..d {
            digits.extend(profile.digits(j));
        }
        let mut strides = vec![1; n];
        for nu in (0..n.saturating_sub(1)).rev() {
            strides[nu] = strides[nu + 1] * dims[nu + 1];
        }
        let root = dims.iter().fold(1u64, |acc, &dn| lcm(acc, 2 * dn as u64));
        let unit = dims.iter().map(|&dn| root / (2 * dn as u64)).collect();
        let phases = (0..root).map(|e| Complex64::from_polar(1.0, 2.0 * PI * e as f64 / root as f64)).collect();
        WhGroup { profile: profile.clone(), digits, strides, root, unit, phases }
    }

    pub fn profile(&self) -> &DimProfile {
        &self.profile
    }

    pub fn dim(&self) -> usize {
        self.profile.total()
    }

    /// Number of product operators, `d²`.
    pub fn order(&self) -> usize {
        self.dim() * self.dim()
    }

    #[inline]
    pub(crate) fn digit(&self, j: usize, nu: usize) -> usize {
        self.digits[j * self.profile.len() + nu]
    }

    /// `J + k` digitwise.
    #[inline]
    pub(crate) fn shifted(&self, j: usize, k: &[usize]) -> usize {
        let dims = self.profile.dims();
        let mut out = 0;
        for nu in 0..dims.len() {
            out += (self.digit(j, nu) + k[nu]) % dims[nu] * self.strides[nu];
        }
        out
    }

    /// Exponent of `ω_R` contributed by the `τ^{kl}` factors.
    pub(crate) fn tau_exponent(&self, idx: &WhIndex) -> u64 {
        let dims = self.profile.dims();
        let mut e = 0u64;
        for nu in 0..dims.len() {
            let dn = dims[nu] as u64;
            e += self.unit[nu] * ((dn + 1) * (idx.k[nu] * idx.l[nu]) as u64 % (2 * dn));
        }
        e % self.root
    }

    /// Exponent of `ω_R` of the clock phase `Π_ν ω_{d_ν}^{l_ν j_ν}`.
    #[inline]
    pub(crate) fn clock_exponent(&self, j: usize, l: &[usize]) -> u64 {
        let dims = self.profile.dims();
        let mut e = 0u64;
        for nu in 0..dims.len() {
            e += 2 * self.unit[nu] * ((l[nu] * self.digit(j, nu)) % dims[nu]) as u64;
        }
        e % self.root
    }

    #[inline]
    pub(crate) fn phase(&self, e: u64) -> Complex64 {
        self.phases[(e % self.root) as usize]
    }

    pub fn apply(&self, s: &StateVector, idx: &WhIndex) -> Result<StateVector> {
        self.check_state(s.dim())?;
        idx.check(&self.profile)?;
        let t = self.tau_exponent(idx);
        let mut out = vec![Complex64::new(0.0, 0.0); self.dim()];
        for (j, a) in s.amps().iter().enumerate() {
            out[self.shifted(j, &idx.k)] = a * self.phase(t + self.clock_exponent(j, &idx.l));
        }
        Ok(StateVector::from_raw(out, s.profile().clone()))
    }

    /// Exact action on a phase state. The result lives over
    /// `lcm(r, d_ν)` and the global `τ` phase is dropped.
    pub fn apply_phase(&self, s: &PhaseState, idx: &WhIndex) -> Result<PhaseState> {
        self.check_state(s.dim())?;
        idx.check(&self.profile)?;
        let dims = self.profile.dims();
        let r = dims.iter().fold(s.root() as u64, |acc, &dn| lcm(acc, dn as u64));
        let lift = r / s.root() as u64;
        let mut exps = vec![0u32; self.dim()];
        for (j, &e) in s.exps().iter().enumerate() {
            let mut x = e as u64 * lift;
            for nu in 0..dims.len() {
                x += (r / dims[nu] as u64) * ((idx.l[nu] * self.digit(j, nu)) % dims[nu]) as u64;
            }
            exps[self.shifted(j, &idx.k)] = (x % r) as u32;
        }
        Ok(PhaseState::from_raw(r as u32, exps, s.profile().clone()))
    }

    /// `⟨ψ|W|ψ⟩`.
    pub fn expectation(&self, s: &StateVector, idx: &WhIndex) -> Result<Complex64> {
        self.check_state(s.dim())?;
        idx.check(&self.profile)?;
        let t = self.tau_exponent(idx);
        let amps = s.amps();
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, a) in amps.iter().enumerate() {
            acc += amps[self.shifted(j, &idx.k)].conj() * a * self.phase(t + self.clock_exponent(j, &idx.l));
        }
        Ok(acc)
    }

    /// `Tr[W ρ]`.
    pub fn expectation_density(&self, rho: &DensityOperator, idx: &WhIndex) -> Result<Complex64> {
        self.check_state(rho.dim())?;
        idx.check(&self.profile)?;
        let t = self.tau_exponent(idx);
        let m = rho.matrix();
        let mut acc = Complex64::new(0.0, 0.0);
        for j in 0..self.dim() {
            acc += m[(j, self.shifted(j, &idx.k))] * self.phase(t + self.clock_exponent(j, &idx.l));
        }
        Ok(acc)
    }

    /// `Σ_J conj(ψ[J+K]) ψ[J] ω^{L·J}` for every flat `L`, i.e. the expectations
    /// of the row `K` without the `τ` factors. Computed by a separable DFT.
    pub(crate) fn characteristic_row(&self, amps: &[Complex64], k: &[usize]) -> Vec<Complex64> {
        let d = self.dim();
        let v: Vec<Complex64> = (0..d).map(|j| amps[self.shifted(j, k)].conj() * amps[j]).collect();
        self.clock_transform(v)
    }

    /// Same as [`Self::characteristic_row`] for a density matrix, from `ρ[J, J+K]`.
    pub(crate) fn characteristic_row_density(&self, rho: &DMatrix<Complex64>, k: &[usize]) -> Vec<Complex64> {
        let v: Vec<Complex64> = (0..self.dim()).map(|j| rho[(j, self.shifted(j, k))]).collect();
        self.clock_transform(v)
    }

    /// `v ↦ Σ_J v[J] ω^{L·J}` for every `L`.
    fn clock_transform(&self, mut v: Vec<Complex64>) -> Vec<Complex64> {
        let mut scratch = vec![Complex64::new(0.0, 0.0); v.len()];
        self.clock_transform_in_place(&mut v, &mut scratch);
        v
    }

    /// In-place form of the separable DFT; `scratch` must have length `d`.
    pub(crate) fn clock_transform_in_place(&self, v: &mut [Complex64], scratch: &mut [Complex64]) {
        let d = self.dim();
        let dims = self.profile.dims();
        let mut src: &mut [Complex64] = v;
        let mut dst: &mut [Complex64] = scratch;
        for nu in 0..dims.len() {
            let dn = dims[nu];
            let stride = self.strides[nu];
            // ω_{d_ν}^{l j} = ω_R^{2 unit l j}
            let step = 2 * self.unit[nu];
            for j in 0..d {
                let jn = self.digit(j, nu);
                let base = j - jn * stride;
                let mut acc = Complex64::new(0.0, 0.0);
                for t in 0..dn {
                    acc += src[base + t * stride] * self.phase(step * ((jn * t) % dn) as u64);
                }
                dst[j] = acc;
            }
            std::mem::swap(&mut src, &mut dst);
        }
        if dims.len() % 2 == 1 {
            dst.copy_from_slice(src);
        }
    }

    /// All `d²` images in row-major `(K, L)` order.
    pub fn orbit(&self, s: &StateVector) -> Result<Vec<(WhIndex, StateVector)>> {
        self.check_state(s.dim())?;
        let d = self.dim();
        Ok((0..d * d)
            .into_par_iter()
            .map(|f| {
                let idx = WhIndex::from_flat(&self.profile, f / d, f % d);
                let img = self.apply(s, &idx).expect("shapes checked");
                (idx, img)
            })
            .collect())
    }

    /// Explicit `d × d` matrix of a product operator.
    pub fn matrix(&self, idx: &WhIndex) -> Result<DMatrix<Complex64>> {
        idx.check(&self.profile)?;
        let d = self.dim();
        let t = self.tau_exponent(idx);
        let mut m = DMatrix::zeros(d, d);
        for j in 0..d {
            m[(self.shifted(j, &idx.k), j)] = self.phase(t + self.clock_exponent(j, &idx.l));
        }
        Ok(m)
    }

    fn check_state(&self, dim: usize) -> Result<()> {
        if dim != self.dim() {
            return Err(Error::DimMismatch { expected: self.dim(), found: dim });
        }
        Ok(())
    }
}

pub fn apply_wh(s: &StateVector, idx: &WhIndex) -> Result<StateVector> {
    WhGroup::new(s.profile()).apply(s, idx)
}

pub fn apply_wh_phase(s: &PhaseState, idx: &WhIndex) -> Result<PhaseState> {
    WhGroup::new(s.profile()).apply_phase(s, idx)
}

pub fn wh_orbit(s: &StateVector) -> Vec<(WhIndex, StateVector)> {
    WhGroup::new(s.profile()).orbit(s).expect("profile taken from the state")
}

pub fn wh_expectation(s: &StateVector, idx: &WhIndex) -> Result<Complex64> {
    WhGroup::new(s.profile()).expectation(s, idx)
}

/// One commuting stratum of a single `d`-level system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Stratum {
    /// `{W_{0l}}`, the clock operators.
    Diagonal,
    /// `{(W_{1j})^k}`, proportional to `W_{k, jk}`.
    Shift(usize),
}

impl Stratum {
    /// Non-identity `(k, l)` pairs of the stratum.
    pub fn members(self, d: usize) -> Vec<(usize, usize)> {
        match self {
            Stratum::Diagonal => (1..d).map(|l| (0, l)).collect(),
            Stratum::Shift(j) => (1..d).map(|k| (k, (j * k) % d)).collect(),
        }
    }
}

/// The `d + 1` strata: `Shift(0), ..., Shift(d-1), Diagonal`.
pub fn strata(d: usize) -> Vec<Vec<(usize, usize)>> {
    (0..d)
        .map(Stratum::Shift)
        .chain(std::iter::once(Stratum::Diagonal))
        .map(|s| s.members(d))
        .collect()
}

/// True iff `⟨ψ|W|ψ⟩` vanishes (to `1e-10`) for every non-identity product
/// `W = ⊗_ν W_ν` with each `W_ν` the identity or a member of `selection[ν]`.
pub fn stratum_overlap_vanishes(s: &StateVector, selection: &[Stratum]) -> Result<bool> {
    let profile = s.profile();
    if selection.len() != profile.len() {
        return Err(Error::DimMismatch { expected: profile.len(), found: selection.len() });
    }
    let group = WhGroup::new(profile);
    let factors: Vec<Vec<(usize, usize)>> = selection
        .iter()
        .zip(profile.dims())
        .map(|(st, &d)| {
            if let Stratum::Shift(j) = st {
                if *j >= d {
                    return Err(Error::InvalidArgument(format!("stratum {j} out of range for d = {d}")));
                }
            }
            let mut m = vec![(0, 0)];
            m.extend(st.members(d));
            Ok(m)
        })
        .collect::<Result<_>>()?;
    let mut choice = vec![0usize; factors.len()];
    loop {
        let k = choice.iter().zip(&factors).map(|(&c, f)| f[c].0).collect();
        let l = choice.iter().zip(&factors).map(|(&c, f)| f[c].1).collect();
        let idx = WhIndex::new(k, l);
        if !idx.is_identity() && group.expectation(s, &idx)?.norm() > 1e-10 {
            return Ok(false);
        }
        // odometer over the factor choices
        let mut nu = factors.len();
        loop {
            if nu == 0 {
                return Ok(true);
            }
            nu -= 1;
            choice[nu] += 1;
            if choice[nu] < factors[nu].len() {
                break;
            }
            choice[nu] = 0;
        }
    }
}

/// Single-qudit `W_kl` as an explicit matrix.
pub fn wh_matrix(d: usize, k: usize, l: usize) -> DMatrix<Complex64> {
    let profile = DimProfile::new(vec![d]).expect("d >= 2");
    WhGroup::new(&profile).matrix(&WhIndex::new(vec![k % d], vec![l % d])).expect("in range")
}

/// Discrete Fourier gate `F_{jk} = ω^{jk} / √d`.
pub fn fourier_gate(d: usize) -> DMatrix<Complex64> {
    let s = 1.0 / (d as f64).sqrt();
    DMatrix::from_fn(d, d, |j, k| Complex64::from_polar(s, 2.0 * PI * ((j * k) % d) as f64 / d as f64))
}

/// Quadratic phase gate `diag(τ^{j(j+d)})`, which maps `X` to a multiple of `XZ`.
pub fn phase_gate(d: usize) -> DMatrix<Complex64> {
    let two_d = 2 * d;
    let diag: Vec<Complex64> = (0..d)
        .map(|j| {
            let e = ((d + 1) * (j * (j + d) % two_d)) % two_d;
            Complex64::from_polar(1.0, PI * e as f64 / d as f64)
        })
        .collect();
    DMatrix::from_diagonal(&nalgebra::DVector::from_vec(diag))
}

pub fn clifford_generators(d: usize) -> Vec<DMatrix<Complex64>> {
    vec![fourier_gate(d), phase_gate(d)]
}

/// Whether `U W U†` is a unimodular multiple of some WH operator for every `W`.
pub fn is_clifford(u: &DMatrix<Complex64>, d: usize) -> bool {
    if u.nrows() != d || u.ncols() != d {
        return false;
    }
    let ops: Vec<DMatrix<Complex64>> = (0..d * d).map(|f| wh_matrix(d, f / d, f % d)).collect();
    let ud = u.adjoint();
    ops.iter().all(|w| {
        let v = u * w * &ud;
        ops.iter().any(|w2| ((w2.adjoint() * &v).trace().norm() - d as f64).abs() < 1e-8)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{overlap, plus_state};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn p(dims: &[usize]) -> DimProfile {
        DimProfile::new(dims.to_vec()).unwrap()
    }

    #[test]
    fn qubit_action() {
        let pr = p(&[2]);
        let zero = StateVector::basis(&pr, 0).unwrap();
        let x = apply_wh(&zero, &WhIndex::new(vec![1], vec![0])).unwrap();
        assert!((x.amps()[1] - c(1.0, 0.0)).norm() < 1e-15);
        let plus = plus_state(&pr).to_amplitudes();
        let z = apply_wh(&plus, &WhIndex::new(vec![0], vec![1])).unwrap();
        let h = 1.0 / 2f64.sqrt();
        assert!((z.amps()[0] - c(h, 0.0)).norm() < 1e-15 && (z.amps()[1] - c(-h, 0.0)).norm() < 1e-15);
        let id = apply_wh(&plus, &WhIndex::identity(1)).unwrap();
        assert_eq!(id, plus);
    }

    #[test]
    fn tau_matches_definition() {
        for d in 2..8 {
            let w = wh_matrix(d, 1, 1);
            let tau = -Complex64::from_polar(1.0, PI / d as f64);
            let x = wh_matrix(d, 1, 0);
            let z = wh_matrix(d, 0, 1);
            let want = (&x * &z) * tau;
            assert!((w - want).norm() < 1e-12);
        }
    }

    #[test]
    fn expectation_examples() {
        let pr = p(&[2]);
        let zero = StateVector::basis(&pr, 0).unwrap();
        assert!((wh_expectation(&zero, &WhIndex::new(vec![0], vec![1])).unwrap() - c(1.0, 0.0)).norm() < 1e-15);
        let plus = plus_state(&pr).to_amplitudes();
        let x = wh_expectation(&plus, &WhIndex::new(vec![1], vec![0])).unwrap();
        assert!((x.norm() - 1.0).abs() < 1e-14);
        let pr9 = p(&[3, 3]);
        let s = plus_state(&pr9).to_amplitudes();
        assert!((wh_expectation(&s, &WhIndex::identity(2)).unwrap() - c(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn density_and_state_expectations_agree() {
        let pr = p(&[2, 3]);
        let s = StateVector::new(
            (0..6).map(|j| Complex64::from_polar(1.0 / 6f64.sqrt(), j as f64 * 0.7)).collect(),
            pr.clone(),
        )
        .unwrap();
        let rho = DensityOperator::pure(&s);
        let g = WhGroup::new(&pr);
        for kk in 0..6 {
            for ll in 0..6 {
                let idx = WhIndex::from_flat(&pr, kk, ll);
                let a = g.expectation(&s, &idx).unwrap();
                let b = g.expectation_density(&rho, &idx).unwrap();
                let m = g.matrix(&idx).unwrap();
                let c3 = (&m * rho.matrix()).trace();
                assert!((a - b).norm() < 1e-12 && (a - c3).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn characteristic_row_matches_direct_sum() {
        let pr = p(&[3, 2, 2]);
        let g = WhGroup::new(&pr);
        let s = StateVector::normalized((0..12).map(|j| c(j as f64 + 1.0, (j * j) as f64 * 0.1)).collect(), pr.clone())
            .unwrap();
        for kk in 0..12 {
            let k = pr.digits(kk);
            let row = g.characteristic_row(s.amps(), &k);
            for (ll, v) in row.iter().enumerate() {
                let idx = WhIndex::from_flat(&pr, kk, ll);
                let e = g.expectation(&s, &idx).unwrap();
                assert!((e.norm() - v.norm()).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn phase_action_matches_dense_action_up_to_global_phase() {
        let pr = p(&[3, 3]);
        let s = PhaseState::new(9, vec![0, 1, 8, 4, 2, 7, 3, 3, 5], pr.clone()).unwrap();
        let g = WhGroup::new(&pr);
        for f in 0..81 {
            let idx = WhIndex::from_flat(&pr, f / 9, f % 9);
            let a = g.apply_phase(&s, &idx).unwrap().to_amplitudes();
            let b = g.apply(&s.to_amplitudes(), &idx).unwrap();
            assert!((overlap(&a, &b).unwrap().norm() - 1.0).abs() < 1e-12);
        }
        let q = PhaseState::new(4, vec![0, 1, 1, 1], p(&[2, 2])).unwrap();
        let img = apply_wh_phase(&q, &WhIndex::new(vec![0, 0], vec![1, 0])).unwrap();
        assert_eq!(img.root(), 4);
        assert_eq!(img.exps(), &[0, 1, 3, 3]);
    }

    #[test]
    fn orbit_sizes_and_stabilizer_collapse() {
        let s = plus_state(&p(&[2, 2])).to_amplitudes();
        assert_eq!(wh_orbit(&s).len(), 16);
        let zero = StateVector::basis(&p(&[2]), 0).unwrap();
        let orbit = wh_orbit(&zero);
        for (_, img) in &orbit {
            let on0 = img.amps()[0].norm() > 1.0 - 1e-12;
            let on1 = img.amps()[1].norm() > 1.0 - 1e-12;
            assert!(on0 || on1);
        }
        let (idx, _) = &orbit[3];
        assert_eq!(idx, &WhIndex::new(vec![1], vec![1]));
    }

    #[test]
    fn group_closure_up_to_phase() {
        for d in 2..=5 {
            for a in 0..d * d {
                for b in 0..d * d {
                    let (k1, l1, k2, l2) = (a / d, a % d, b / d, b % d);
                    let prod = wh_matrix(d, k1, l1) * wh_matrix(d, k2, l2);
                    let target = wh_matrix(d, k1 + k2, l1 + l2);
                    let ph = (target.adjoint() * &prod).trace() / d as f64;
                    assert!((ph.norm() - 1.0).abs() < 1e-12);
                    assert!((prod - target * ph).norm() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn operators_are_hilbert_schmidt_orthogonal() {
        for dims in [vec![2, 2], vec![3], vec![3, 3], vec![2, 3], vec![3, 3, 3]] {
            let pr = p(&dims);
            let g = WhGroup::new(&pr);
            let d = pr.total();
            let ops: Vec<_> = (0..d * d).map(|f| g.matrix(&WhIndex::from_flat(&pr, f / d, f % d)).unwrap()).collect();
            let traces: f64 = ops.iter().map(|m| m.trace().norm_sqr()).sum();
            assert!((traces / d as f64 - d as f64).abs() < 1e-8);
            if d <= 9 {
                for (i, a) in ops.iter().enumerate() {
                    for (j, b) in ops.iter().enumerate() {
                        let hs = (a.adjoint() * b).trace();
                        let want = if i == j { d as f64 } else { 0.0 };
                        assert!((hs - c(want, 0.0)).norm() < 1e-9);
                    }
                }
            }
        }
    }

    #[test]
    fn strata_shapes_and_commutation() {
        assert_eq!(strata(2).len(), 3);
        assert!(strata(2).iter().all(|s| s.len() == 1));
        assert_eq!(strata(3).len(), 4);
        assert!(strata(3).iter().all(|s| s.len() == 2));
        for d in 2..=5 {
            let mut seen = std::collections::HashSet::new();
            for st in strata(d) {
                for &(k, l) in &st {
                    seen.insert((k, l));
                    for &(k2, l2) in &st {
                        let a = wh_matrix(d, k, l);
                        let b = wh_matrix(d, k2, l2);
                        assert!((&a * &b - &b * &a).norm() < 1e-10);
                    }
                }
            }
            // primes cover all non-identity pairs
            if [2, 3, 5].contains(&d) {
                assert_eq!(seen.len(), d * d - 1);
            }
        }
    }

    #[test]
    fn stratum_overlap_examples() {
        let pr = p(&[3, 3]);
        let s = PhaseState::new(3, vec![0, 1, 2, 2, 0, 1, 1, 1, 0], pr.clone()).unwrap().to_amplitudes();
        assert!(stratum_overlap_vanishes(&s, &[Stratum::Diagonal, Stratum::Diagonal]).unwrap());
        let zero = StateVector::basis(&pr, 0).unwrap();
        assert!(!stratum_overlap_vanishes(&zero, &[Stratum::Diagonal, Stratum::Diagonal]).unwrap());
        // the Fourier gate carries the clock stratum onto the shift stratum
        let f = fourier_gate(3);
        let ff = f.kronecker(&f);
        let fs = s.transformed(&ff).unwrap();
        assert!(stratum_overlap_vanishes(&fs, &[Stratum::Shift(0), Stratum::Shift(0)]).unwrap());
        assert!(!stratum_overlap_vanishes(&fs, &[Stratum::Diagonal, Stratum::Diagonal]).unwrap());
        assert!(stratum_overlap_vanishes(&zero, &[Stratum::Shift(0), Stratum::Shift(0)]).unwrap());
    }

    #[test]
    fn clifford_checks() {
        for d in [2, 3, 5] {
            assert!(is_clifford(&fourier_gate(d), d));
            assert!(is_clifford(&phase_gate(d), d));
            assert!(is_clifford(&DMatrix::identity(d, d), d));
        }
        // a generic unitary from the QR factor of a fixed complex matrix
        let m = DMatrix::from_fn(3, 3, |i, j| c((i * 3 + j) as f64 * 0.37 + 0.1, ((i + 2 * j) as f64).sin()));
        let q = m.qr().q();
        assert!(!is_clifford(&q, 3));
    }
}
