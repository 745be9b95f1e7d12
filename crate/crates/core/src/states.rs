//! Pure states on multi-qudit registers, reduced density operators and
//! entanglement quantities.
//!
//! Global basis indices follow the Kronecker convention: subsystem 0 is the
//! leftmost (most significant) tensor factor.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Local dimensions of a multi-qudit register.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct DimProfile {
    dims: Vec<usize>,
}

impl DimProfile {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::InvalidArgument("empty dimension profile".into()));
        }
        if let Some(&d) = dims.iter().find(|&&d| d < 2) {
            return Err(Error::InvalidArgument(format!("local dimension {d} is below 2")));
        }
        Ok(DimProfile { dims })
    }

    /// `n` copies of a `p`-level system.
    pub fn uniform(p: usize, n: usize) -> Result<Self> {
        Self::new(vec![p; n])
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn total(&self) -> usize {
        self.dims.iter().product()
    }

    /// Local digits of a global index.
    pub fn digits(&self, mut index: usize) -> Vec<usize> {
        let mut out = vec![0; self.dims.len()];
        for (slot, &d) in out.iter_mut().zip(&self.dims).rev() {
            *slot = index % d;
            index /= d;
        }
        out
    }

    pub fn index(&self, digits: &[usize]) -> usize {
        digits.iter().zip(&self.dims).fold(0, |acc, (&j, &d)| acc * d + j)
    }

    /// Dimensions of the kept and traced-out factors for a subsystem selection.
    pub fn split_dims(&self, keep: &[usize]) -> Result<(usize, usize)> {
        check_keep(self, keep)?;
        let da: usize = keep.iter().map(|&i| self.dims[i]).product();
        Ok((da, self.total() / da))
    }
}

impl TryFrom<Vec<usize>> for DimProfile {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        DimProfile::new(v)
    }
}

impl From<DimProfile> for Vec<usize> {
    fn from(p: DimProfile) -> Self {
        p.dims
    }
}

/// How the coefficients of a field or ring element map onto qudit digits.
///
/// With `Big`, the coefficient of `x^ν` is the digit of subsystem `ν`, so
/// the constant coefficient is the leftmost tensor factor and
/// `J = Σ_ν j_ν p^{n-1-ν}`. `Little` reverses this: `J = Σ_ν j_ν p^ν`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DigitOrder {
    #[default]
    Big,
    Little,
}

impl DigitOrder {
    /// Coefficient tuple `(j_0, ..., j_{n-1})` for a global index.
    pub fn digits_of(self, index: usize, p: u32, n: usize) -> Vec<u32> {
        let p = p as usize;
        let mut rest = index;
        let mut out = vec![0u32; n];
        match self {
            DigitOrder::Big => {
                for nu in (0..n).rev() {
                    out[nu] = (rest % p) as u32;
                    rest /= p;
                }
            }
            DigitOrder::Little => {
                for slot in out.iter_mut() {
                    *slot = (rest % p) as u32;
                    rest /= p;
                }
            }
        }
        out
    }

    pub fn index_of(self, coeffs: &[u32], p: u32) -> usize {
        let p = p as usize;
        match self {
            DigitOrder::Big => coeffs.iter().fold(0, |acc, &c| acc * p + c as usize),
            DigitOrder::Little => coeffs.iter().rev().fold(0, |acc, &c| acc * p + c as usize),
        }
    }
}

impl std::str::FromStr for DigitOrder {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "big" => Ok(DigitOrder::Big),
            "little" => Ok(DigitOrder::Little),
            other => Err(Error::InvalidArgument(format!("unknown digit order '{other}'"))),
        }
    }
}

/// `ω_r^e`.
pub fn root_of_unity(r: u64, e: u64) -> Complex64 {
    let e = e % r;
    Complex64::from_polar(1.0, 2.0 * PI * e as f64 / r as f64)
}

/// A dense normalized pure state.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amps: Vec<Complex64>,
    profile: DimProfile,
}

impl StateVector {
    /// Wraps amplitudes that are already normalized to within `1e-12`.
    pub fn new(amps: Vec<Complex64>, profile: DimProfile) -> Result<Self> {
        check_len(&profile, amps.len())?;
        let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidArgument(format!("state norm squared is {norm}, not 1")));
        }
        Ok(StateVector { amps, profile })
    }

    /// Rescales arbitrary non-zero amplitudes to unit norm.
    pub fn normalized(amps: Vec<Complex64>, profile: DimProfile) -> Result<Self> {
        check_len(&profile, amps.len())?;
        let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::InvalidArgument("zero vector".into()));
        }
        Ok(StateVector { amps: amps.into_iter().map(|a| a / norm).collect(), profile })
    }

    pub(crate) fn from_raw(amps: Vec<Complex64>, profile: DimProfile) -> Self {
        StateVector { amps, profile }
    }

    /// Computational basis state `|index⟩`.
    pub fn basis(profile: &DimProfile, index: usize) -> Result<Self> {
        let d = profile.total();
        if index >= d {
            return Err(Error::InvalidArgument(format!("basis index {index} out of range for d = {d}")));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); d];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(StateVector { amps, profile: profile.clone() })
    }

    pub fn amps(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn profile(&self) -> &DimProfile {
        &self.profile
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Largest deviation of `|ψ_j|` from `1/√d`.
    pub fn equimodular_deviation(&self) -> f64 {
        let target = 1.0 / (self.dim() as f64).sqrt();
        self.amps.iter().map(|a| (a.norm() - target).abs()).fold(0.0, f64::max)
    }

    pub fn is_equimodular(&self, tol: f64) -> bool {
        self.equimodular_deviation() <= tol
    }

    /// Tensor product `self ⊗ other`.
    pub fn tensor(&self, other: &StateVector) -> StateVector {
        let mut dims = self.profile.dims.clone();
        dims.extend_from_slice(&other.profile.dims);
        let amps = self
            .amps
            .iter()
            .flat_map(|a| other.amps.iter().map(move |b| a * b))
            .collect();
        StateVector { amps, profile: DimProfile { dims } }
    }

    /// Same amplitudes, re-read on a different factorization of the same total dimension.
    pub fn with_profile(&self, profile: DimProfile) -> Result<StateVector> {
        check_len(&profile, self.amps.len())?;
        Ok(StateVector { amps: self.amps.clone(), profile })
    }

    /// Applies a matrix to the amplitudes, keeping the profile.
    pub fn transformed(&self, u: &DMatrix<Complex64>) -> Result<StateVector> {
        if u.nrows() != self.dim() || u.ncols() != self.dim() {
            return Err(Error::DimMismatch { expected: self.dim(), found: u.nrows() });
        }
        let v = u * nalgebra::DVector::from_column_slice(&self.amps);
        Ok(StateVector { amps: v.iter().copied().collect(), profile: self.profile.clone() })
    }

    /// Haar-random pure state.
    pub fn random<R: Rng + ?Sized>(profile: &DimProfile, rng: &mut R) -> StateVector {
        let amps: Vec<Complex64> = (0..profile.total())
            .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        StateVector::normalized(amps, profile.clone()).expect("gaussian vector is non-zero")
    }

    /// Equimodular state with independent uniformly random phases.
    pub fn random_equimodular<R: Rng + ?Sized>(profile: &DimProfile, rng: &mut R) -> StateVector {
        let d = profile.total();
        let s = 1.0 / (d as f64).sqrt();
        let amps = (0..d)
            .map(|_| Complex64::from_polar(s, 2.0 * PI * rng.random::<f64>()))
            .collect();
        StateVector { amps, profile: profile.clone() }
    }
}

fn check_len(profile: &DimProfile, len: usize) -> Result<()> {
    if profile.total() != len {
        return Err(Error::DimMismatch { expected: profile.total(), found: len });
    }
    Ok(())
}

/// Equimodular state `ω_r^{e_j} / √d`, stored exactly.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PhaseState {
    root: u32,
    exps: Vec<u32>,
    profile: DimProfile,
}

impl PhaseState {
    pub fn new(root: u32, exps: Vec<u32>, profile: DimProfile) -> Result<Self> {
        if root == 0 {
            return Err(Error::InvalidArgument("root order must be at least 1".into()));
        }
        check_len(&profile, exps.len())?;
        if let Some(&e) = exps.iter().find(|&&e| e >= root) {
            return Err(Error::InvalidArgument(format!("exponent {e} not below root {root}")));
        }
        Ok(PhaseState { root, exps, profile })
    }

    pub(crate) fn from_raw(root: u32, exps: Vec<u32>, profile: DimProfile) -> Self {
        PhaseState { root, exps, profile }
    }

    pub fn root(&self) -> u32 {
        self.root
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn profile(&self) -> &DimProfile {
        &self.profile
    }

    pub fn dim(&self) -> usize {
        self.exps.len()
    }

    pub fn to_amplitudes(&self) -> StateVector {
        let s = 1.0 / (self.dim() as f64).sqrt();
        let amps = self.exps.iter().map(|&e| root_of_unity(self.root as u64, e as u64) * s).collect();
        StateVector { amps, profile: self.profile.clone() }
    }

    /// Same state with the first exponent shifted to zero.
    pub fn dephased(&self) -> PhaseState {
        let r = self.root;
        let shift = self.exps[0];
        let exps = self.exps.iter().map(|&e| (e + r - shift) % r).collect();
        PhaseState { root: r, exps, profile: self.profile.clone() }
    }

    /// Re-expresses the exponents over a multiple of the current root.
    pub fn lifted(&self, root: u32) -> Result<PhaseState> {
        if !root.is_multiple_of(self.root) {
            return Err(Error::InvalidArgument(format!("{root} is not a multiple of {}", self.root)));
        }
        let f = root / self.root;
        Ok(PhaseState { root, exps: self.exps.iter().map(|&e| e * f).collect(), profile: self.profile.clone() })
    }

    /// Smallest root order that represents the same exponents.
    pub fn reduced(&self) -> PhaseState {
        let g = self.exps.iter().fold(self.root, |g, &e| gcd(g as u64, e as u64) as u32);
        PhaseState {
            root: self.root / g,
            exps: self.exps.iter().map(|&e| e / g).collect(),
            profile: self.profile.clone(),
        }
    }
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// The uniform superposition `|+⟩`.
pub fn plus_state(profile: &DimProfile) -> PhaseState {
    PhaseState { root: 1, exps: vec![0; profile.total()], profile: profile.clone() }
}

/// `⟨a|b⟩`, conjugate-linear in `a`.
pub fn overlap(a: &StateVector, b: &StateVector) -> Result<Complex64> {
    if a.dim() != b.dim() {
        return Err(Error::DimMismatch { expected: a.dim(), found: b.dim() });
    }
    Ok(raw_overlap(&a.amps, &b.amps))
}

pub(crate) fn raw_overlap(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// A density operator on a `d`-dimensional space.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    matrix: DMatrix<Complex64>,
}

impl DensityOperator {
    /// Accepts a matrix that is Hermitian, unit-trace and positive to within `1e-10`.
    pub fn new(matrix: DMatrix<Complex64>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::InvalidArgument("density matrix must be square".into()));
        }
        let rho = DensityOperator { matrix };
        let herm = (&rho.matrix - rho.matrix.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max);
        if herm > 1e-10 {
            return Err(Error::InvalidArgument(format!("matrix is not Hermitian (deviation {herm:e})")));
        }
        if (rho.trace() - 1.0).abs() > 1e-10 {
            return Err(Error::InvalidArgument(format!("trace is {}", rho.trace())));
        }
        if rho.eigenvalues().last().copied().unwrap_or(0.0) < -1e-10 {
            return Err(Error::InvalidArgument("matrix has a negative eigenvalue".into()));
        }
        Ok(rho)
    }

    pub(crate) fn from_matrix_unchecked(matrix: DMatrix<Complex64>) -> Self {
        DensityOperator { matrix }
    }

    pub fn pure(s: &StateVector) -> Self {
        let v = nalgebra::DVector::from_column_slice(s.amps());
        DensityOperator { matrix: &v * v.adjoint() }
    }

    pub fn maximally_mixed(d: usize) -> Self {
        DensityOperator { matrix: DMatrix::identity(d, d) * Complex64::new(1.0 / d as f64, 0.0) }
    }

    /// `λ·self + (1-λ)·other`.
    pub fn mix(&self, other: &DensityOperator, lambda: f64) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::DimMismatch { expected: self.dim(), found: other.dim() });
        }
        Ok(DensityOperator {
            matrix: &self.matrix * Complex64::new(lambda, 0.0) + &other.matrix * Complex64::new(1.0 - lambda, 0.0),
        })
    }

    /// Random mixed state of the given rank (partial trace of a Haar-random purification).
    pub fn random<R: Rng + ?Sized>(d: usize, rank: usize, rng: &mut R) -> Self {
        let g = DMatrix::from_fn(d, rank, |_, _| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)));
        let m = &g * g.adjoint();
        let tr: f64 = m.trace().re;
        DensityOperator { matrix: m / Complex64::new(tr, 0.0) }
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }

    pub fn purity(&self) -> f64 {
        // Tr ρ² = Σ |ρ_ij|² for Hermitian ρ
        self.matrix.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Eigenvalues in descending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let eig = nalgebra::SymmetricEigen::new(self.matrix.clone());
        let mut vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
        vals.sort_by(|a, b| b.total_cmp(a));
        vals
    }

    /// Hilbert-Schmidt inner product `Tr[self · other]`.
    pub fn hs_inner(&self, other: &DensityOperator) -> Complex64 {
        (&self.matrix * &other.matrix).trace()
    }

    /// `U ρ U†`.
    pub fn conjugated(&self, u: &DMatrix<Complex64>) -> Self {
        DensityOperator { matrix: u * &self.matrix * u.adjoint() }
    }
}

fn check_keep(profile: &DimProfile, keep: &[usize]) -> Result<()> {
    let n = profile.len();
    if keep.is_empty() || keep.len() >= n {
        return Err(Error::BadSubsystem(format!(
            "kept set {keep:?} must be a non-empty proper subset of {n} subsystems"
        )));
    }
    let mut seen = vec![false; n];
    for &i in keep {
        if i >= n || seen[i] {
            return Err(Error::BadSubsystem(format!("invalid or repeated subsystem {i}")));
        }
        seen[i] = true;
    }
    Ok(())
}

/// Reshapes a state into the `d_keep × d_rest` coefficient matrix for a bipartition.
fn bipartite_matrix(s: &StateVector, keep: &[usize]) -> Result<DMatrix<Complex64>> {
    let profile = s.profile();
    let (da, db) = profile.split_dims(keep)?;
    let mut kept: Vec<usize> = keep.to_vec();
    kept.sort_unstable();
    let rest: Vec<usize> = (0..profile.len()).filter(|i| !kept.contains(i)).collect();
    let dims = profile.dims();
    let mut m = DMatrix::zeros(da, db);
    for (j, amp) in s.amps().iter().enumerate() {
        let digits = profile.digits(j);
        let a = kept.iter().fold(0, |acc, &i| acc * dims[i] + digits[i]);
        let b = rest.iter().fold(0, |acc, &i| acc * dims[i] + digits[i]);
        m[(a, b)] = *amp;
    }
    Ok(m)
}

/// Reduced state on the subsystems in `keep`, ordered as in the global index.
pub fn partial_trace(s: &StateVector, keep: &[usize]) -> Result<DensityOperator> {
    let m = bipartite_matrix(s, keep)?;
    Ok(DensityOperator { matrix: &m * m.adjoint() })
}

/// Schmidt coefficients (squared), descending, `min(d_A, d_B)` of them.
pub fn schmidt_coefficients(s: &StateVector, keep: &[usize]) -> Result<Vec<f64>> {
    let m = bipartite_matrix(s, keep)?;
    let svd = m.svd(false, false);
    let mut vals: Vec<f64> = svd.singular_values.iter().map(|x| x * x).collect();
    vals.sort_by(|a, b| b.total_cmp(a));
    Ok(vals)
}

/// `Tr ρ_A²` for the kept subsystems.
pub fn purity(s: &StateVector, keep: &[usize]) -> Result<f64> {
    Ok(partial_trace(s, keep)?.purity())
}

/// Haar average of the marginal purity, `(d_A + d_B) / (d_A d_B + 1)`.
pub fn haar_avg_purity(da: usize, db: usize) -> f64 {
    (da + db) as f64 / (da * db + 1) as f64
}

/// Average marginal purity over the `d` Hadamard bases of a full MUB set that
/// contains the computational basis, `(d_A + d_B - 1) / (d_A d_B)`.
pub fn muhm_avg_purity(da: usize, db: usize) -> f64 {
    (da + db - 1) as f64 / (da * db) as f64
}
