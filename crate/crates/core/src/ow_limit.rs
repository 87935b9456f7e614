//! Finite-data estimates of `lim_{ε→0} lim_i a(ε, Ω_i)/|Ω_i|` for set
//! functions that are invariant, monotone in `ε`, sublinear and
//! `c`-subadditive, together with checkers for those four hypotheses.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{param, Error, Result};
use crate::lattice::{boundary_full, FiniteSubset, FolnerSpec, LatticePoint};
use crate::spectral::{count_in, gram_eigenvalues, MultiplierSet, DEFAULT_SIZE_CAP};

/// Absolute slack for floating comparisons in the checkers.
const CHECK_TOL: f64 = 1e-9;

/// `a : R_{>0} × P_finite(Z^d) → R_{≥0}` with its declared constants.
pub trait OwFunction: Sync {
    fn eval(&self, eps: f64, omega: &FiniteSubset) -> Result<f64>;
    /// `K` in `a(ε, Ω) ≤ K |Ω|`.
    fn sublinearity(&self) -> f64;
    /// `c` in `a(ε, Ω ∪ Ω') ≤ a(cε, Ω) + a(cε, Ω')`.
    fn subadditivity(&self) -> f64;
    fn name(&self) -> String;
}

/// `a(ε, Ω) = |Ω|`.
pub struct Volume;

impl OwFunction for Volume {
    fn eval(&self, _eps: f64, omega: &FiniteSubset) -> Result<f64> {
        Ok(omega.len() as f64)
    }
    fn sublinearity(&self) -> f64 {
        1.0
    }
    fn subadditivity(&self) -> f64 {
        1.0
    }
    fn name(&self) -> String {
        "volume".into()
    }
}

/// `a(ε, Ω) = |∂_F Ω|`, independent of `ε`.
pub struct BoundarySize {
    pub f: FiniteSubset,
}

impl OwFunction for BoundarySize {
    fn eval(&self, _eps: f64, omega: &FiniteSubset) -> Result<f64> {
        Ok(boundary_full(omega, &self.f)?.len() as f64)
    }
    /// `|∂⁺| ≤ (|F| - 1)|Ω|` and `|∂⁻| ≤ |Ω|`.
    fn sublinearity(&self) -> f64 {
        self.f.len() as f64
    }
    fn subadditivity(&self) -> f64 {
        1.0
    }
    fn name(&self) -> String {
        format!("boundary(|F|={})", self.f.len())
    }
}

/// `a(ε, Ω) = n_Ω[ε, 1]`, the number of eigenvalues of `R_Ω R*` in `[ε, 1]`.
///
/// Sublinear with `K = 1`. Subadditive with `c = 1/2`: the Gram matrix of
/// `Ω ∪ Ω'` is at most twice the block diagonal of the two pieces.
pub struct SpectralCount {
    e: MultiplierSet,
    cache: Mutex<HashMap<FiniteSubset, Arc<Vec<f64>>>>,
}

impl SpectralCount {
    pub fn new(e: MultiplierSet) -> Self {
        SpectralCount {
            e,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn multiplier(&self) -> &MultiplierSet {
        &self.e
    }

    pub fn eigenvalues(&self, omega: &FiniteSubset) -> Result<Arc<Vec<f64>>> {
        if let Some(v) = self.cache.lock().expect("cache poisoned").get(omega) {
            return Ok(Arc::clone(v));
        }
        let v = Arc::new(gram_eigenvalues(&self.e, omega, DEFAULT_SIZE_CAP)?);
        self.cache
            .lock()
            .expect("cache poisoned")
            .insert(omega.clone(), Arc::clone(&v));
        Ok(v)
    }
}

impl OwFunction for SpectralCount {
    fn eval(&self, eps: f64, omega: &FiniteSubset) -> Result<f64> {
        if omega.is_empty() {
            return Ok(0.0);
        }
        Ok(count_in(&self.eigenvalues(omega)?, eps, f64::INFINITY) as f64)
    }
    fn sublinearity(&self) -> f64 {
        1.0
    }
    fn subadditivity(&self) -> f64 {
        0.5
    }
    fn name(&self) -> String {
        format!("spectral(|E|={})", self.e.measure())
    }
}

/// Sets, translates, set pairs and `ε` values to probe the hypotheses on.
#[derive(Clone, Debug)]
pub struct SamplePlan {
    pub eps_grid: Vec<f64>,
    pub sets: Vec<FiniteSubset>,
    pub translates: Vec<LatticePoint>,
    pub pairs: Vec<(FiniteSubset, FiniteSubset)>,
}

impl SamplePlan {
    /// Random subsets of `[-radius, radius]^dim` with at most `max_size`
    /// points; pairs are drawn independently so they may overlap.
    pub fn random(
        dim: usize,
        radius: i64,
        count: usize,
        max_size: usize,
        eps_grid: Vec<f64>,
        seed: u64,
    ) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let set = |rng: &mut ChaCha8Rng| {
            let size = rng.random_range(1..=max_size);
            let mut s = FiniteSubset::empty(dim);
            for _ in 0..size {
                let p: Vec<i64> = (0..dim).map(|_| rng.random_range(-radius..=radius)).collect();
                s.insert(LatticePoint::new(p)).expect("dimension matches");
            }
            s
        };
        let sets = (0..count).map(|_| set(&mut rng)).collect();
        let pairs = (0..count).map(|_| (set(&mut rng), set(&mut rng))).collect();
        let translates = (0..count)
            .map(|_| LatticePoint::new((0..dim).map(|_| rng.random_range(-50..=50)).collect()))
            .collect();
        SamplePlan {
            eps_grid,
            sets,
            translates,
            pairs,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct CheckResult {
    pub checked: usize,
    pub counterexamples: Vec<String>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.counterexamples.push(describe());
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct HypothesisReport {
    pub invariance: CheckResult,
    pub monotonicity: CheckResult,
    pub sublinearity: CheckResult,
    pub subadditivity: CheckResult,
}

impl HypothesisReport {
    pub fn passed(&self) -> bool {
        self.invariance.passed()
            && self.monotonicity.passed()
            && self.sublinearity.passed()
            && self.subadditivity.passed()
    }
}

/// Probes (a) invariance, (b) monotonicity in `ε`, (c) `K`-sublinearity and
/// (d) `c`-subadditivity with the function's declared constants.
pub fn check_hypotheses(f: &dyn OwFunction, plan: &SamplePlan) -> Result<HypothesisReport> {
    let k = f.sublinearity();
    let c = f.subadditivity();
    let mut invariance = CheckResult::default();
    let mut monotonicity = CheckResult::default();
    let mut sublinearity = CheckResult::default();
    let mut subadditivity = CheckResult::default();
    let mut eps = plan.eps_grid.clone();
    eps.sort_by(f64::total_cmp);

    for (s, g) in plan.sets.iter().zip(plan.translates.iter().cycle()) {
        let moved = s.translate(g);
        let mut prev: Option<(f64, f64)> = None;
        for &e in &eps {
            let a = f.eval(e, s)?;
            let b = f.eval(e, &moved)?;
            invariance.record((a - b).abs() <= CHECK_TOL, || {
                format!("eps={e} |omega|={} shift={g}: {a} vs {b}", s.len())
            });
            sublinearity.record(a <= k * s.len() as f64 + CHECK_TOL, || {
                format!("eps={e} |omega|={}: {a} > {k} * {}", s.len(), s.len())
            });
            if let Some((pe, pa)) = prev {
                monotonicity.record(pa + CHECK_TOL >= a, || {
                    format!("|omega|={}: a({pe}) = {pa} < a({e}) = {a}", s.len())
                });
            }
            prev = Some((e, a));
        }
    }
    for (s, t) in &plan.pairs {
        let u = s.union(t);
        for &e in &eps {
            let lhs = f.eval(e, &u)?;
            let rhs = f.eval(c * e, s)? + f.eval(c * e, t)?;
            subadditivity.record(lhs <= rhs + CHECK_TOL, || {
                format!(
                    "eps={e} c={c} |omega|={} |omega'|={}: {lhs} > {rhs}",
                    s.len(),
                    t.len()
                )
            });
        }
    }
    Ok(HypothesisReport {
        invariance,
        monotonicity,
        sublinearity,
        subadditivity,
    })
}

/// For nested `Ω ⊆ Ω'`:
/// `a(ε,Ω) ≤ a(ε,Ω') ≤ a(ε,Ω) + K|Ω' \ Ω|` (divided through by `|Ω'|`).
pub fn check_nested(
    f: &dyn OwFunction,
    pairs: &[(FiniteSubset, FiniteSubset)],
    eps_grid: &[f64],
) -> Result<CheckResult> {
    let k = f.sublinearity();
    let mut out = CheckResult::default();
    for (small, big) in pairs {
        if !small.is_subset(big) {
            return Err(Error::Precondition("nested check needs omega inside omega'".into()));
        }
        let extra = (big.len() - small.len()) as f64;
        for &e in eps_grid {
            let a = f.eval(e, small)?;
            let b = f.eval(e, big)?;
            out.record(a <= b + CHECK_TOL && b <= a + k * extra + CHECK_TOL, || {
                format!("eps={e} |omega|={} |omega'|={}: {a}, {b}", small.len(), big.len())
            });
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub struct LimitRow {
    pub eps: f64,
    pub index: usize,
    pub size: usize,
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LimitEstimate {
    pub function: String,
    /// Descending.
    pub eps_grid: Vec<f64>,
    /// Ascending.
    pub indices: Vec<usize>,
    pub table: Vec<LimitRow>,
    pub tail_indices: Vec<usize>,
    pub limsup_curve: Vec<f64>,
    pub liminf_curve: Vec<f64>,
    /// `limsup` at the smallest `ε`.
    pub extrapolated: f64,
    /// `limsup - liminf` at the smallest `ε`.
    pub oscillation: f64,
    pub tolerance: f64,
    /// Both curves are non-increasing in `ε` and `limsup ≥ liminf`.
    pub curves_consistent: bool,
}

impl LimitEstimate {
    pub fn converged(&self) -> bool {
        self.oscillation <= self.tolerance
    }

    pub fn value(&self, eps: f64, index: usize) -> Option<f64> {
        self.table
            .iter()
            .find(|r| r.eps == eps && r.index == index)
            .map(|r| r.value)
    }
}

/// Default non-convergence tolerance on the tail oscillation.
pub const DEFAULT_TOLERANCE: f64 = 0.05;

/// Tabulates `a(ε, Ω_i)/|Ω_i|` and reads off the tail curves. The tail
/// window is the last third of the indices (at least one).
pub fn estimate_limit(
    f: &dyn OwFunction,
    spec: &FolnerSpec,
    indices: &[usize],
    eps_grid: &[f64],
) -> Result<LimitEstimate> {
    estimate_limit_with_tolerance(f, spec, indices, eps_grid, DEFAULT_TOLERANCE)
}

pub fn estimate_limit_with_tolerance(
    f: &dyn OwFunction,
    spec: &FolnerSpec,
    indices: &[usize],
    eps_grid: &[f64],
    tolerance: f64,
) -> Result<LimitEstimate> {
    if indices.is_empty() || indices.windows(2).any(|w| w[0] >= w[1]) {
        return Err(param("sizes", "must be nonempty and strictly ascending"));
    }
    if eps_grid.is_empty() || eps_grid.windows(2).any(|w| w[0] <= w[1]) {
        return Err(param("eps", "grid must be nonempty and strictly descending"));
    }
    if let Some(e) = eps_grid.iter().find(|e| !(**e > 0.0)) {
        return Err(param("eps", format!("values must be positive, got {e}")));
    }
    let columns: Vec<(usize, Vec<f64>)> = indices
        .par_iter()
        .map(|&i| {
            let omega = spec.set(i)?;
            let size = omega.len() as f64;
            let col = eps_grid
                .iter()
                .map(|&e| {
                    f.eval(e, &omega).map(|a| a / size).map_err(|source| Error::Evaluation {
                        eps: e,
                        index: i,
                        source: Box::new(source),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok((omega.len(), col))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut table = Vec::with_capacity(indices.len() * eps_grid.len());
    for (&i, (size, col)) in indices.iter().zip(&columns) {
        for (&e, &v) in eps_grid.iter().zip(col) {
            table.push(LimitRow {
                eps: e,
                index: i,
                size: *size,
                value: v,
            });
        }
    }
    let tail_len = (indices.len() / 3).max(1);
    let tail = &columns[columns.len() - tail_len..];
    let fold = |k: usize, init: f64, op: fn(f64, f64) -> f64| {
        tail.iter().map(|(_, col)| col[k]).fold(init, op)
    };
    let limsup_curve: Vec<f64> = (0..eps_grid.len())
        .map(|k| fold(k, f64::NEG_INFINITY, f64::max))
        .collect();
    let liminf_curve: Vec<f64> = (0..eps_grid.len())
        .map(|k| fold(k, f64::INFINITY, f64::min))
        .collect();
    let last = eps_grid.len() - 1;
    // ε descends along the grid, so the curves must not decrease.
    let curves_consistent = limsup_curve.windows(2).all(|w| w[1] + CHECK_TOL >= w[0])
        && liminf_curve.windows(2).all(|w| w[1] + CHECK_TOL >= w[0])
        && limsup_curve.iter().zip(&liminf_curve).all(|(s, i)| s >= i);
    Ok(LimitEstimate {
        function: f.name(),
        eps_grid: eps_grid.to_vec(),
        indices: indices.to_vec(),
        table,
        tail_indices: indices[indices.len() - tail_len..].to_vec(),
        extrapolated: limsup_curve[last],
        oscillation: limsup_curve[last] - liminf_curve[last],
        limsup_curve,
        liminf_curve,
        tolerance,
        curves_consistent,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct IndependenceReport {
    pub first: LimitEstimate,
    pub second: LimitEstimate,
    pub difference: f64,
    pub tolerance: f64,
}

impl IndependenceReport {
    pub fn agree(&self) -> bool {
        self.difference <= self.tolerance
    }
}

/// Runs [`estimate_limit`] along two Følner sequences and compares.
pub fn sequence_independence(
    f: &dyn OwFunction,
    spec1: &FolnerSpec,
    spec2: &FolnerSpec,
    indices: &[usize],
    eps_grid: &[f64],
    tolerance: f64,
) -> Result<IndependenceReport> {
    if spec1 == spec2 {
        return Err(param("family", "the two Følner sequences must differ"));
    }
    let first = estimate_limit_with_tolerance(f, spec1, indices, eps_grid, tolerance)?;
    let second = estimate_limit_with_tolerance(f, spec2, indices, eps_grid, tolerance)?;
    Ok(IndependenceReport {
        difference: (first.extrapolated - second.extrapolated).abs(),
        first,
        second,
        tolerance,
    })
}
