//! JSON interchange for states and basis sets, and the LOG text format for
//! phase matrices.
//!
//! LOG text is a header line `r=<root> d=<dim>` followed by `d` rows of
//! whitespace-separated exponents `v`, each standing for `ω_r^v / √d`.
//! On input `•` and `.` are read as `0`.

use std::f64::consts::PI;
use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::states::{DimProfile, PhaseState, StateVector};
use crate::verify::BasisSet;

/// Reference matrices, embedded at build time.
pub mod fixtures {
    pub const H9_LOG: &str = include_str!("../fixtures/h9.log");
    pub const H25_LOG: &str = include_str!("../fixtures/h25.log");
    /// Nine matrices of the first sporadic family, dephased column-wise.
    pub const SPORADIC_FAMILY0_LOG: &str = include_str!("../fixtures/sporadic_family0.log");
}

type Amp = [f64; 2];

fn to_pairs(s: &StateVector) -> Vec<Amp> {
    s.amps().iter().map(|z| [z.re, z.im]).collect()
}

fn from_pairs(v: &[Amp]) -> Vec<Complex64> {
    v.iter().map(|&[re, im]| Complex64::new(re, im)).collect()
}

/// Any of the JSON documents the tools exchange.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Document {
    Phase { dims: Vec<usize>, root: u32, exps: Vec<u32> },
    Dense { dims: Vec<usize>, amps: Vec<Amp> },
    States { dims: Vec<usize>, states: Vec<Vec<Amp>> },
    Bases {
        dims: Vec<usize>,
        #[serde(default)]
        labels: Vec<String>,
        bases: Vec<Vec<Vec<Amp>>>,
    },
}

impl Document {
    pub fn parse(text: &str) -> Result<Document> {
        serde_json::from_str(text).map_err(|e| Error::Parse { line: e.line(), col: e.column(), msg: e.to_string() })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    pub fn from_phase(s: &PhaseState) -> Self {
        Document::Phase { dims: s.profile().dims().to_vec(), root: s.root(), exps: s.exps().to_vec() }
    }

    pub fn from_state(s: &StateVector) -> Self {
        Document::Dense { dims: s.profile().dims().to_vec(), amps: to_pairs(s) }
    }

    pub fn from_states(states: &[StateVector]) -> Self {
        let dims = states.first().map(|s| s.profile().dims().to_vec()).unwrap_or_default();
        Document::States { dims, states: states.iter().map(to_pairs).collect() }
    }

    pub fn from_bases(set: &BasisSet) -> Self {
        let dims = set.bases.first().and_then(|b| b.first()).map(|s| s.profile().dims().to_vec()).unwrap_or_default();
        Document::Bases {
            dims,
            labels: set.labels.clone(),
            bases: set.bases.iter().map(|b| b.iter().map(to_pairs).collect()).collect(),
        }
    }

    pub fn dims(&self) -> &[usize] {
        match self {
            Document::Phase { dims, .. }
            | Document::Dense { dims, .. }
            | Document::States { dims, .. }
            | Document::Bases { dims, .. } => dims,
        }
    }

    /// The single state held by a `Phase` or `Dense` document.
    pub fn state(&self) -> Result<StateVector> {
        let profile = DimProfile::new(self.dims().to_vec())?;
        match self {
            Document::Phase { root, exps, .. } => Ok(PhaseState::new(*root, exps.clone(), profile)?.to_amplitudes()),
            Document::Dense { amps, .. } => StateVector::new(from_pairs(amps), profile),
            _ => Err(Error::InvalidArgument("document holds more than one state".into())),
        }
    }

    pub fn phase_state(&self) -> Result<Option<PhaseState>> {
        match self {
            Document::Phase { dims, root, exps } => {
                Ok(Some(PhaseState::new(*root, exps.clone(), DimProfile::new(dims.clone())?)?))
            }
            _ => Ok(None),
        }
    }

    /// Every state, flattened across bases when the document is a basis set.
    pub fn states(&self) -> Result<Vec<StateVector>> {
        let profile = DimProfile::new(self.dims().to_vec())?;
        match self {
            Document::States { states, .. } => {
                states.iter().map(|a| StateVector::new(from_pairs(a), profile.clone())).collect()
            }
            Document::Bases { .. } => Ok(self.bases()?.states().cloned().collect()),
            _ => Ok(vec![self.state()?]),
        }
    }

    pub fn bases(&self) -> Result<BasisSet> {
        let profile = DimProfile::new(self.dims().to_vec())?;
        match self {
            Document::Bases { labels, bases, .. } => {
                let bases = bases
                    .iter()
                    .map(|b| b.iter().map(|a| StateVector::new(from_pairs(a), profile.clone())).collect())
                    .collect::<Result<Vec<Vec<StateVector>>>>()?;
                BasisSet::new(bases, labels.clone())
            }
            _ => Err(Error::InvalidArgument("document is not a basis set".into())),
        }
    }
}

/// Exponents `e_j` with `z_j ≈ |z_j| ω_r^{e_j}`; fails if some phase is off the grid by more than `tol` radians.
pub fn phase_exponents(amps: &[Complex64], root: u32, tol: f64) -> Result<Vec<u32>> {
    amps.iter()
        .enumerate()
        .map(|(j, z)| {
            if z.norm() < 1e-12 {
                return Err(Error::InvalidArgument(format!("entry {j} vanishes")));
            }
            let t = z.arg() * root as f64 / (2.0 * PI);
            let e = t.round();
            if (t - e).abs() * 2.0 * PI / root as f64 > tol {
                return Err(Error::InvalidArgument(format!("entry {j} is not a power of ω_{root}")));
            }
            Ok((e as i64).rem_euclid(root as i64) as u32)
        })
        .collect()
}

/// Exact phase form of an equimodular state, optionally with its global phase removed.
pub fn to_phase_state(s: &StateVector, root: u32, dephase: bool, tol: f64) -> Result<PhaseState> {
    if !s.is_equimodular(tol.max(1e-9)) {
        return Err(Error::NotEquimodular);
    }
    let ps = PhaseState::new(root, phase_exponents(s.amps(), root, tol)?, s.profile().clone())?;
    Ok(if dephase { ps.dephased() } else { ps })
}

/// Square matrix of exponents over `ω_r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogMatrix {
    pub root: u32,
    pub entries: Vec<Vec<u32>>,
}

impl LogMatrix {
    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    /// Reads a unimodular matrix, optionally dividing each column by its first entry.
    pub fn from_matrix(m: &DMatrix<Complex64>, root: u32, dephase: bool, tol: f64) -> Result<LogMatrix> {
        let m = if dephase { crate::verify::dephase_columns(m) } else { m.clone() };
        let d = m.nrows();
        let mut entries = vec![vec![0; d]; d];
        for col in 0..d {
            let column: Vec<Complex64> = m.column(col).iter().copied().collect();
            for (row, e) in phase_exponents(&column, root, tol)?.into_iter().enumerate() {
                entries[row][col] = e;
            }
        }
        Ok(LogMatrix { root, entries })
    }

    /// Matrix with unimodular entries `ω_r^v`.
    pub fn to_matrix(&self) -> DMatrix<Complex64> {
        let d = self.dim();
        let r = self.root as f64;
        DMatrix::from_fn(d, d, |i, j| Complex64::from_polar(1.0, 2.0 * PI * self.entries[i][j] as f64 / r))
    }

    /// The columns as normalized states on `profile`.
    pub fn columns(&self, profile: &DimProfile) -> Result<Vec<StateVector>> {
        let m = self.to_matrix() / Complex64::new((self.dim() as f64).sqrt(), 0.0);
        (0..self.dim())
            .map(|c| StateVector::normalized(m.column(c).iter().copied().collect(), profile.clone()))
            .collect()
    }

    pub fn parse(text: &str) -> Result<LogMatrix> {
        let mut all = Self::parse_many(text)?;
        match all.len() {
            1 => Ok(all.remove(0)),
            n => Err(Error::Parse { line: 1, col: 1, msg: format!("expected one matrix, found {n}") }),
        }
    }

    /// Reads consecutive matrices, each introduced by its own header line.
    pub fn parse_many(text: &str) -> Result<Vec<LogMatrix>> {
        let mut out = Vec::new();
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()).peekable();
        while let Some((ln, header)) = lines.next() {
            let (root, d) = parse_header(header, ln + 1)?;
            let mut entries = Vec::with_capacity(d);
            for _ in 0..d {
                let (rl, row) = lines
                    .next()
                    .ok_or_else(|| Error::Parse { line: ln + 1, col: 1, msg: format!("expected {d} rows") })?;
                entries.push(parse_row(row, rl + 1, root, d)?);
            }
            out.push(LogMatrix { root, entries });
        }
        if out.is_empty() {
            return Err(Error::Parse { line: 1, col: 1, msg: "no matrix found".into() });
        }
        Ok(out)
    }
}

fn parse_header(line: &str, ln: usize) -> Result<(u32, usize)> {
    let mut root = None;
    let mut dim = None;
    for tok in line.split_whitespace() {
        let col = column_of(line, tok);
        let bad = || Error::Parse { line: ln, col, msg: format!("bad header token '{tok}'") };
        match tok.split_once('=') {
            Some(("r", v)) => root = Some(v.parse::<u32>().map_err(|_| bad())?),
            Some(("d", v)) => dim = Some(v.parse::<usize>().map_err(|_| bad())?),
            _ => return Err(bad()),
        }
    }
    match (root, dim) {
        (Some(r), Some(d)) if r >= 1 && d >= 1 => Ok((r, d)),
        _ => Err(Error::Parse { line: ln, col: 1, msg: "header must read 'r=<root> d=<dim>'".into() }),
    }
}

fn parse_row(line: &str, ln: usize, root: u32, d: usize) -> Result<Vec<u32>> {
    let mut row = Vec::with_capacity(d);
    for tok in line.split_whitespace() {
        let col = column_of(line, tok);
        let v = match tok {
            "•" | "." => 0,
            _ => tok.parse::<u32>().map_err(|_| Error::Parse { line: ln, col, msg: format!("bad entry '{tok}'") })?,
        };
        if v >= root {
            return Err(Error::Parse { line: ln, col, msg: format!("entry {v} not below root {root}") });
        }
        row.push(v);
    }
    if row.len() != d {
        return Err(Error::Parse { line: ln, col: 1, msg: format!("row has {} entries, expected {d}", row.len()) });
    }
    Ok(row)
}

/// 1-based character column of a token borrowed from `line`.
fn column_of(line: &str, tok: &str) -> usize {
    let offset = tok.as_ptr() as usize - line.as_ptr() as usize;
    line[..offset].chars().count() + 1
}

impl fmt::Display for LogMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "r={} d={}", self.root, self.dim())?;
        for row in &self.entries {
            let line: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// Several matrices separated by blank lines.
pub fn format_many(ms: &[LogMatrix]) -> String {
    ms.iter().map(|m| m.to_string()).collect::<Vec<_>>().join("\n")
}
