//! Orbit partitions and checks for MUB, SIC, Hadamard, Butson and
//! isoentanglement properties.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measures::orthonormality_deviation;
use crate::states::{muhm_avg_purity, purity, raw_overlap, DimProfile, PhaseState, StateVector};
use crate::wh::{WhGroup, WhIndex};

/// A list of orthonormal bases of one space.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisSet {
    pub d: usize,
    pub bases: Vec<Vec<StateVector>>,
    pub labels: Vec<String>,
}

impl BasisSet {
    /// Checks that every basis has `d` vectors and is orthonormal to `1e-9`.
    pub fn new(bases: Vec<Vec<StateVector>>, labels: Vec<String>) -> Result<Self> {
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
        Ok(BasisSet { d, bases, labels })
    }

    pub fn len(&self) -> usize {
        self.bases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bases.is_empty()
    }

    /// The same set with the computational basis prepended.
    pub fn with_computational(&self) -> Result<BasisSet> {
        let profile = self.bases[0][0].profile().clone();
        let mut bases = vec![computational_basis(&profile)];
        bases.extend(self.bases.iter().cloned());
        let mut labels = vec!["computational".to_string()];
        labels.extend(self.labels.iter().cloned());
        Ok(BasisSet { d: self.d, bases, labels })
    }

    pub fn states(&self) -> impl Iterator<Item = &StateVector> {
        self.bases.iter().flatten()
    }
}

pub fn computational_basis(profile: &DimProfile) -> Vec<StateVector> {
    (0..profile.total()).map(|j| StateVector::basis(profile, j).expect("in range")).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub passed: bool,
    pub max_abs_deviation: f64,
    pub tolerance: f64,
    pub pairs_checked: usize,
    /// Basis or state indices of the worst pair.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub worst_pair: Option<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub butson: Option<(usize, u32)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub common_value: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reference_value: Option<f64>,
}

impl VerificationReport {
    fn new(max_abs_deviation: f64, tolerance: f64, pairs_checked: usize) -> Self {
        VerificationReport {
            passed: max_abs_deviation <= tolerance,
            max_abs_deviation,
            tolerance,
            pairs_checked,
            worst_pair: None,
            butson: None,
            common_value: None,
            reference_value: None,
        }
    }
}

/// Bases `{W_KL s : L}` for every `K`, labelled by the flat index `K`.
pub fn partition_orbit(s: &PhaseState) -> Result<BasisSet> {
    partition_orbit_dense(&s.to_amplitudes())
}

/// Dense-input variant; rejects states that are not equimodular to `1e-9`.
pub fn partition_orbit_dense(s: &StateVector) -> Result<BasisSet> {
    if !s.is_equimodular(1e-9) {
        return Err(Error::NotEquimodular);
    }
    let profile = s.profile();
    let group = WhGroup::new(profile);
    let d = profile.total();
    let bases: Vec<Vec<StateVector>> = (0..d)
        .into_par_iter()
        .map(|kk| {
            (0..d)
                .map(|ll| group.apply(s, &WhIndex::from_flat(profile, kk, ll)).expect("shapes agree"))
                .collect()
        })
        .collect();
    BasisSet::new(bases, (0..d).map(|k| format!("k={}", fmt_digits(&profile.digits(k)))).collect())
}

fn fmt_digits(v: &[usize]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// Worst deviation of `|⟨a|b⟩|²` from `target` over all pairs of two bases.
fn cross_deviation(a: &[StateVector], b: &[StateVector], target: f64) -> f64 {
    let mut worst = 0.0f64;
    for x in a {
        for y in b {
            worst = worst.max((raw_overlap(x.amps(), y.amps()).norm_sqr() - target).abs());
        }
    }
    worst
}

/// Checks that every pair of distinct bases is unbiased.
pub fn verify_mub(set: &BasisSet, include_computational: bool, tol: f64) -> Result<VerificationReport> {
    let set = if include_computational { set.with_computational()? } else { set.clone() };
    let d = set.d;
    let mut worst = 0.0f64;
    for (i, b) in set.bases.iter().enumerate() {
        let dev = orthonormality_deviation(b);
        if dev > 1e-9 {
            return Err(Error::NotOrthonormal(i, dev));
        }
        worst = worst.max(dev);
    }
    let n = set.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let devs: Vec<f64> = pairs
        .par_iter()
        .map(|&(a, b)| cross_deviation(&set.bases[a], &set.bases[b], 1.0 / d as f64))
        .collect();
    let mut worst_pair = None;
    let mut worst_cross = -1.0;
    for (pair, &dev) in pairs.iter().zip(&devs) {
        if dev > worst_cross {
            worst_cross = dev;
            worst_pair = Some(*pair);
        }
    }
    let mut report = VerificationReport::new(worst.max(worst_cross), tol, pairs.len() * d * d);
    report.worst_pair = worst_pair;
    Ok(report)
}

/// Checks `|⟨ψ_α|ψ_β⟩|² = 1/(d+1)` for all pairs of `d²` states.
pub fn verify_sic(states: &[StateVector], tol: f64) -> Result<VerificationReport> {
    let d = states.first().map(|s| s.dim()).unwrap_or(0);
    if d == 0 || states.len() != d * d {
        return Err(Error::WrongCount { expected: d * d, found: states.len() });
    }
    let target = 1.0 / (d as f64 + 1.0);
    let rows: Vec<(f64, usize, usize)> = (0..states.len())
        .into_par_iter()
        .map(|a| {
            let mut best = ((states[a].norm_sqr() - 1.0).abs(), a, a);
            for (b, t) in states.iter().enumerate().skip(a + 1) {
                let dev = (raw_overlap(states[a].amps(), t.amps()).norm_sqr() - target).abs();
                if dev > best.0 {
                    best = (dev, a, b);
                }
            }
            best
        })
        .collect();
    let (worst, a, b) = rows.iter().copied().fold((0.0, 0, 0), |acc, r| if r.0 > acc.0 { r } else { acc });
    let mut report = VerificationReport::new(worst, tol, states.len() * (states.len() - 1) / 2);
    report.worst_pair = Some((a, b));
    Ok(report)
}

/// Matrix whose columns are `√d` times the basis vectors.
pub fn hadamard_from_basis(basis: &[StateVector]) -> DMatrix<Complex64> {
    let d = basis.len();
    let s = (d as f64).sqrt();
    DMatrix::from_fn(d, d, |row, col| basis[col].amps()[row] * s)
}

/// Divides every column by its first entry.
pub fn dephase_columns(m: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let mut out = m.clone();
    for mut col in out.column_iter_mut() {
        let first = col[0];
        if first.norm() > 0.0 {
            let u = first / first.norm();
            col.iter_mut().for_each(|z| *z /= u);
        }
    }
    out
}

/// Unimodular entries and `H†H = d·I`.
pub fn is_complex_hadamard(m: &DMatrix<Complex64>, tol: f64) -> VerificationReport {
    let d = m.nrows();
    if !m.is_square() {
        return VerificationReport::new(f64::INFINITY, tol, 0);
    }
    let modulus = m.iter().map(|z| (z.norm() - 1.0).abs()).fold(0.0, f64::max);
    let gram = m.adjoint() * m / Complex64::new(d as f64, 0.0);
    let unitarity = (gram - DMatrix::<Complex64>::identity(d, d)).iter().map(|z| z.norm()).fold(0.0, f64::max);
    VerificationReport::new(modulus.max(unitarity), tol, d * d)
}

/// Smallest `r ≤ max_root` with every entry a power of `ω_r` times the common modulus.
pub fn butson_class(m: &DMatrix<Complex64>, max_root: u32, tol: f64) -> Option<u32> {
    let modulus = m.iter().next()?.norm();
    if modulus == 0.0 || m.iter().any(|z| (z.norm() - modulus).abs() > tol) {
        return None;
    }
    (1..=max_root).find(|&r| {
        m.iter().all(|z| {
            let t = z.arg() * r as f64 / (2.0 * PI);
            (t - t.round()).abs() * 2.0 * PI / r as f64 <= tol
        })
    })
}

/// Distinct values of `|⟨a|b⟩|²` over all pairs, clustered to within `tol`.
pub fn overlap_spectrum(a: &[StateVector], b: &[StateVector], tol: f64) -> Vec<f64> {
    let mut vals: Vec<f64> =
        a.iter().flat_map(|x| b.iter().map(move |y| raw_overlap(x.amps(), y.amps()).norm_sqr())).collect();
    vals.sort_by(|x, y| x.total_cmp(y));
    let mut clusters: Vec<(f64, usize)> = Vec::new();
    let mut last = f64::NEG_INFINITY;
    for v in vals {
        match clusters.last_mut() {
            Some((sum, n)) if v - last <= tol => {
                *sum += v;
                *n += 1;
            }
            _ => clusters.push((v, 1)),
        }
        last = v;
    }
    clusters.into_iter().map(|(s, n)| s / n as f64).collect()
}

/// Whether every spectrum value lies within `tol` of one of `allowed`.
pub fn spectrum_within(spectrum: &[f64], allowed: &[f64], tol: f64) -> bool {
    spectrum.iter().all(|v| allowed.iter().any(|a| (v - a).abs() <= tol))
}

/// Checks that all states share one marginal purity on `keep`.
pub fn verify_isoentangled<'a>(
    states: impl IntoIterator<Item = &'a StateVector>,
    keep: &[usize],
    tol: f64,
) -> Result<VerificationReport> {
    let states: Vec<&StateVector> = states.into_iter().collect();
    let first = states.first().ok_or(Error::WrongCount { expected: 1, found: 0 })?;
    let (da, db) = first.profile().split_dims(keep)?;
    let purities = states.iter().map(|s| purity(s, keep)).collect::<Result<Vec<f64>>>()?;
    let lo = purities.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = purities.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mut report = VerificationReport::new(hi - lo, tol, states.len());
    report.common_value = Some(purities.iter().sum::<f64>() / purities.len() as f64);
    report.reference_value = Some(muhm_avg_purity(da, db));
    Ok(report)
}

/// Mean marginal purity over all states of a set.
pub fn mean_purity(set: &BasisSet, keep: &[usize]) -> Result<f64> {
    let vals = set.states().map(|s| purity(s, keep)).collect::<Result<Vec<f64>>>()?;
    Ok(vals.iter().sum::<f64>() / vals.len() as f64)
}
