//! Exhaustive scans over phase states `ω_r^{e_j} / √d`: fiducial existence,
//! the magick landscape, and the sporadic two-qutrit triplet.
//!
//! Candidates are enumerated by index with the first free exponent most
//! significant. Work is split into fixed index ranges and merged in index
//! order, so results do not depend on the worker count.

use std::collections::{BTreeMap, BTreeSet};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measures::bound_mub;
use crate::states::{lcm, purity, root_of_unity, DimProfile, PhaseState, StateVector};
use crate::verify::{partition_orbit, verify_mub, BasisSet};
use crate::wh::{WhGroup, WhIndex};

/// Default ceiling on the number of candidates.
pub const SEARCH_LIMIT: u64 = 100_000_000;

/// Margin below the equimodular bound used by the fast magick filter.
pub const FAST_REJECT_MARGIN: f64 = 1e-6;

const CHUNK: u64 = 4096;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub profile: DimProfile,
    pub root: u32,
    /// Fix the first exponent to zero.
    #[serde(default = "yes")]
    pub dephase: bool,
    /// Thread count; `None` uses the global pool.
    #[serde(default)]
    pub workers: Option<usize>,
    #[serde(default = "default_limit")]
    pub limit: u64,
}

fn yes() -> bool {
    true
}

fn default_limit() -> u64 {
    SEARCH_LIMIT
}

impl SearchConfig {
    pub fn new(profile: DimProfile, root: u32) -> Self {
        SearchConfig { profile, root, dephase: true, workers: None, limit: SEARCH_LIMIT }
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = Some(workers);
        self
    }

    /// `r^(d-1)` when dephased, `r^d` otherwise.
    pub fn candidate_count(&self) -> u128 {
        let free = self.profile.total() - usize::from(self.dephase);
        (self.root as u128).checked_pow(free as u32).unwrap_or(u128::MAX)
    }

    fn validate(&self) -> Result<u64> {
        if self.root < 2 {
            return Err(Error::InvalidArgument("root order must be at least 2".into()));
        }
        let n = self.candidate_count();
        if n > self.limit as u128 {
            return Err(Error::SearchSpaceTooLarge(n, self.limit));
        }
        Ok(n as u64)
    }

    /// Exponent tuple of candidate `index`.
    pub fn candidate(&self, index: u64) -> Vec<u32> {
        let d = self.profile.total();
        let mut e = vec![0u32; d];
        let first = usize::from(self.dephase);
        let mut rest = index;
        for slot in e[first..].iter_mut().rev() {
            *slot = (rest % self.root as u64) as u32;
            rest /= self.root as u64;
        }
        e
    }

    fn run<T: Send>(&self, job: impl FnOnce() -> T + Send) -> Result<T> {
        match self.workers {
            Some(n) => {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(n.max(1))
                    .build()
                    .map_err(|e| Error::InvalidArgument(e.to_string()))?;
                Ok(pool.install(job))
            }
            None => Ok(job()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchResult {
    /// One canonical representative per orbit class.
    pub hits: Vec<PhaseState>,
    pub scanned: u64,
    /// Candidates that passed the fast magick filter.
    pub survivors: u64,
    pub best_magick: f64,
    pub argmax: Option<PhaseState>,
    pub bound: f64,
}

impl SearchResult {
    /// Whether some hit lies in the same product-WH orbit as `s`, up to global phase.
    pub fn contains_equivalent(&self, s: &PhaseState) -> bool {
        let c = canonical_form(s);
        self.hits.contains(&c)
    }

    /// `bound - best_magick`.
    pub fn gap(&self) -> f64 {
        self.bound - self.best_magick
    }
}

/// Allocation-free magick of phase states on one profile.
pub(crate) struct PhaseMagick<'a> {
    group: &'a WhGroup,
    root: u32,
    table: Vec<Complex64>,
    shifts: &'a [Vec<usize>],
    v: Vec<Complex64>,
    scratch: Vec<Complex64>,
}

/// `shifts[K][J] = J + K`.
pub(crate) fn shift_table(group: &WhGroup) -> Vec<Vec<usize>> {
    let profile = group.profile();
    let d = profile.total();
    (0..d)
        .map(|kk| {
            let k = profile.digits(kk);
            (0..d).map(|j| group.shifted(j, &k)).collect()
        })
        .collect()
}

impl<'a> PhaseMagick<'a> {
    pub(crate) fn new(group: &'a WhGroup, shifts: &'a [Vec<usize>], root: u32) -> Self {
        let d = group.dim();
        let table = (0..root).map(|e| root_of_unity(root as u64, e as u64) / d as f64).collect();
        let zero = Complex64::new(0.0, 0.0);
        PhaseMagick { group, root, table, shifts, v: vec![zero; d], scratch: vec![zero; d] }
    }

    pub(crate) fn eval(&mut self, e: &[u32]) -> f64 {
        let r = self.root;
        let mut total = 0.0;
        for shift in self.shifts {
            for (j, slot) in self.v.iter_mut().enumerate() {
                *slot = self.table[((e[j] + r - e[shift[j]]) % r) as usize];
            }
            self.group.clock_transform_in_place(&mut self.v, &mut self.scratch);
            total += self.v.iter().map(|z| z.norm()).sum::<f64>();
        }
        total
    }
}

struct ChunkOutcome {
    survivors: Vec<u64>,
    best: (f64, u64),
}

fn scan(cfg: &SearchConfig, threshold: f64) -> Result<(u64, Vec<u64>, (f64, u64))> {
    let total = cfg.validate()?;
    let group = WhGroup::new(&cfg.profile);
    let shifts = shift_table(&group);
    let chunks: Vec<u64> = (0..total.div_ceil(CHUNK)).collect();
    let outcomes: Vec<ChunkOutcome> = cfg.run(|| {
        chunks
            .par_iter()
            .map(|&c| {
                let mut eval = PhaseMagick::new(&group, &shifts, cfg.root);
                let mut out = ChunkOutcome { survivors: Vec::new(), best: (f64::NEG_INFINITY, 0) };
                for idx in c * CHUNK..((c + 1) * CHUNK).min(total) {
                    let m = eval.eval(&cfg.candidate(idx));
                    if m > out.best.0 + 1e-12 {
                        out.best = (m, idx);
                    }
                    if m >= threshold {
                        out.survivors.push(idx);
                    }
                }
                out
            })
            .collect()
    })?;
    let mut survivors = Vec::new();
    let mut best = (f64::NEG_INFINITY, 0);
    for o in outcomes {
        if o.best.0 > best.0 + 1e-12 {
            best = o.best;
        }
        survivors.extend(o.survivors);
    }
    Ok((total, survivors, best))
}

/// Full MUB check of the orbit partition plus the computational basis.
pub fn is_mub_fiducial(s: &PhaseState, tol: f64) -> Result<bool> {
    let set = partition_orbit(s)?;
    Ok(verify_mub(&set, true, tol)?.passed)
}

/// Scans for MUB fiducials: fast magick rejection, then full verification,
/// then deduplication modulo the product WH group and global phase.
pub fn search_fiducials(cfg: &SearchConfig) -> Result<SearchResult> {
    let d = cfg.profile.total();
    let bound = bound_mub(d);
    let (scanned, survivors, best) = scan(cfg, bound - FAST_REJECT_MARGIN)?;
    let phase = |idx: u64| PhaseState::from_raw(cfg.root, cfg.candidate(idx), cfg.profile.clone());
    let verified: Vec<Option<PhaseState>> = cfg.run(|| {
        survivors
            .par_iter()
            .map(|&idx| {
                let s = phase(idx);
                match is_mub_fiducial(&s, 1e-9) {
                    Ok(true) => Some(canonical_form(&s)),
                    _ => None,
                }
            })
            .collect()
    })?;
    let hits: BTreeSet<(Vec<u32>, u32)> =
        verified.into_iter().flatten().map(|s| (s.exps().to_vec(), s.root())).collect();
    Ok(SearchResult {
        hits: hits.into_iter().map(|(e, r)| PhaseState::from_raw(r, e, cfg.profile.clone())).collect(),
        scanned,
        survivors: survivors.len() as u64,
        best_magick: best.0,
        argmax: (scanned > 0).then(|| phase(best.1)),
        bound,
    })
}

/// Largest magick over the grid and where it is first attained.
pub fn magick_landscape(cfg: &SearchConfig) -> Result<SearchResult> {
    let bound = bound_mub(cfg.profile.total());
    let (scanned, _, best) = scan(cfg, f64::INFINITY)?;
    Ok(SearchResult {
        hits: Vec::new(),
        scanned,
        survivors: 0,
        best_magick: best.0,
        argmax: (scanned > 0).then(|| PhaseState::from_raw(cfg.root, cfg.candidate(best.1), cfg.profile.clone())),
        bound,
    })
}

/// Lexicographically smallest dephased exponent tuple over the images under
/// the given operators, expressed over the smallest possible root.
fn minimal_image(s: &PhaseState, group: &WhGroup, ops: impl Iterator<Item = WhIndex>) -> PhaseState {
    let mut best: Option<PhaseState> = None;
    for idx in ops {
        let img = group.apply_phase(s, &idx).expect("shapes agree").dephased();
        if best.as_ref().is_none_or(|b| img.exps() < b.exps()) {
            best = Some(img);
        }
    }
    best.expect("at least the identity").reduced()
}

/// Orbit representative under the full product WH group and global phase.
pub fn canonical_form(s: &PhaseState) -> PhaseState {
    let profile = s.profile().clone();
    let group = WhGroup::new(&profile);
    let d = profile.total();
    let r = profile.dims().iter().fold(s.root() as u64, |acc, &x| lcm(acc, x as u64)) as u32;
    let lifted = s.lifted(r).expect("r is a multiple");
    minimal_image(&lifted, &group, (0..d * d).map(|f| WhIndex::from_flat(&profile, f / d, f % d)))
}

/// Operators `X^a ⊗ I · Z^b ⊗ Z^c` of the two-qutrit search subgroup.
fn subgroup_ops() -> impl Iterator<Item = WhIndex> {
    (0..27).map(|f| WhIndex::new(vec![f / 9, 0], vec![(f / 3) % 3, f % 3]))
}

fn subgroup_canonical(s: &PhaseState, group: &WhGroup) -> PhaseState {
    minimal_image(s, group, subgroup_ops())
}

/// The three bases `{(X^{-j} ⊗ X^f) Z_k ψ : k}` for `j = 0, 1, 2`.
fn subgroup_bases(s: &StateVector, group: &WhGroup, f: usize) -> Vec<Vec<StateVector>> {
    (0..3)
        .map(|j| {
            (0..9)
                .map(|k| group.apply(s, &WhIndex::new(vec![(3 - j) % 3, f % 3], vec![k / 3, k % 3])).expect("shapes"))
                .collect()
        })
        .collect()
}

/// Family `f` of a triplet: nine bases, basis `3l + j` being
/// `{(X^{-j} ⊗ X^f) Z_k ψ_l : k = 0..8}` with `Z_k = Z^{⌊k/3⌋} ⊗ Z^{k mod 3}`.
pub fn sporadic_family(triplet: &[PhaseState; 3], f: usize) -> Result<BasisSet> {
    let profile = triplet[0].profile().clone();
    if profile.dims() != [3, 3] {
        return Err(Error::DimMismatch { expected: 9, found: profile.total() });
    }
    let group = WhGroup::new(&profile);
    let mut bases = Vec::new();
    let mut labels = Vec::new();
    for (l, psi) in triplet.iter().enumerate() {
        for (j, b) in subgroup_bases(&psi.to_amplitudes(), &group, f).into_iter().enumerate() {
            bases.push(b);
            labels.push(format!("f={f} l={l} j={j}"));
        }
    }
    BasisSet::new(bases, labels)
}

fn unbiased(a: &[StateVector], b: &[StateVector], tol: f64) -> bool {
    a.iter().all(|x| {
        b.iter().all(|y| {
            let o: Complex64 = x.amps().iter().zip(y.amps()).map(|(p, q)| p.conj() * q).sum();
            (o.norm_sqr() - 1.0 / 9.0).abs() <= tol
        })
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SporadicSearchResult {
    pub scanned: u64,
    /// Candidates with marginal purity 5/9.
    pub purity_filtered: usize,
    /// Classes modulo the search subgroup whose own three bases are unbiased.
    pub subgroup_classes: usize,
    /// Classes modulo the full product group among those.
    pub group_classes: usize,
    pub compatible_pairs: usize,
    pub triplets: Vec<[PhaseState; 3]>,
}

impl SporadicSearchResult {
    /// Whether some triplet has the same full-group orbit classes as `t`.
    pub fn contains_equivalent(&self, t: &[PhaseState; 3]) -> bool {
        let key = |t: &[PhaseState; 3]| -> BTreeSet<Vec<u32>> {
            t.iter().map(|s| canonical_form(s).exps().to_vec()).collect()
        };
        let want = key(t);
        self.triplets.iter().any(|x| key(x) == want)
    }
}

/// Exhaustive search for triplets of two-qutrit states over `ω_3` whose
/// subgroup orbits together form nine bases unbiased to each other and to the
/// computational basis.
pub fn search_sporadic_triplet(workers: Option<usize>) -> Result<SporadicSearchResult> {
    let profile = DimProfile::uniform(3, 2)?;
    let mut cfg = SearchConfig::new(profile.clone(), 3);
    cfg.workers = workers;
    let total = cfg.validate()?;
    let group = WhGroup::new(&profile);
    let shifts = shift_table(&group);
    let target = 5.0 / 9.0;

    // (i)-(ii): purity filter and magick
    let filtered: Vec<(u64, f64)> = cfg.run(|| {
        (0..total)
            .into_par_iter()
            .filter_map(|idx| {
                let s = PhaseState::from_raw(3, cfg.candidate(idx), profile.clone());
                let v = s.to_amplitudes();
                let ok = [0usize, 1].iter().all(|&k| (purity(&v, &[k]).expect("valid split") - target).abs() < 1e-9);
                ok.then(|| (idx, PhaseMagick::new(&group, &shifts, 3).eval(s.exps())))
            })
            .collect()
    })?;

    // (iii): subgroup classes, grouped by full-group class and magick
    let mut classes: BTreeMap<Vec<u32>, (PhaseState, f64)> = BTreeMap::new();
    for &(idx, m) in &filtered {
        let s = PhaseState::from_raw(3, cfg.candidate(idx), profile.clone());
        let c = subgroup_canonical(&s, &group);
        classes.entry(c.exps().to_vec()).or_insert((c, m));
    }
    struct Class {
        rep: PhaseState,
        magick: f64,
        full: Vec<u32>,
        bases: Vec<Vec<StateVector>>,
    }
    let classes: Vec<Class> = classes
        .into_values()
        .filter_map(|(rep, magick)| {
            let bases = subgroup_bases(&rep.to_amplitudes(), &group, 0);
            let ok = (0..3).all(|a| (a + 1..3).all(|b| unbiased(&bases[a], &bases[b], 1e-9)));
            ok.then(|| Class { full: canonical_form(&rep).exps().to_vec(), rep, magick, bases })
        })
        .collect();
    let group_classes = classes.iter().map(|c| c.full.clone()).collect::<BTreeSet<_>>().len();

    // (iv): compatibility graph and its triangles
    let n = classes.len();
    let compatible = |a: &Class, b: &Class| {
        a.full != b.full
            && (a.magick - b.magick).abs() < 1e-9
            && a.bases.iter().all(|x| b.bases.iter().all(|y| unbiased(x, y, 1e-9)))
    };
    let adjacency: Vec<Vec<bool>> = cfg.run(|| {
        (0..n)
            .into_par_iter()
            .map(|a| (0..n).map(|b| a != b && compatible(&classes[a], &classes[b])).collect())
            .collect()
    })?;
    let compatible_pairs = adjacency.iter().map(|r| r.iter().filter(|&&x| x).count()).sum::<usize>() / 2;

    // (v): verify each triangle once per set of full-group classes
    let mut seen = BTreeSet::new();
    let mut triplets = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if !adjacency[a][b] {
                continue;
            }
            for c in b + 1..n {
                if !(adjacency[a][c] && adjacency[b][c]) {
                    continue;
                }
                let key: BTreeSet<Vec<u32>> =
                    [&classes[a].full, &classes[b].full, &classes[c].full].into_iter().cloned().collect();
                if key.len() < 3 || seen.contains(&key) {
                    continue;
                }
                let t = [classes[a].rep.clone(), classes[b].rep.clone(), classes[c].rep.clone()];
                if verify_mub(&sporadic_family(&t, 0)?, true, 1e-9)?.passed {
                    seen.insert(key);
                    triplets.push(t);
                }
            }
        }
    }
    Ok(SporadicSearchResult {
        scanned: total,
        purity_filtered: filtered.len(),
        subgroup_classes: n,
        group_classes,
        compatible_pairs,
        triplets,
    })
}
