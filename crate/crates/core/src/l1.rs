//! The `ℓ¹` positivity construction and the residue-sum counterexample.
//!
//! A normalized `y ∈ ℓ¹(Z^d)` is almost carried by a finite set `F`. Disjoint
//! translates `γ_j + F` inside `Ω` then give a map `a ↦ Σ a_j (γ_j + y)` that
//! distorts `ℓ¹` norms by at most `[1 - 2ε, 1 + ε]`.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{Num, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Exp1;

use crate::error::{param, Error, Result};
use crate::lattice::{alpha, rational_to_f64, FiniteSubset, LatticePoint, Rational};
use crate::tiling::greedy_quasi_tiling;

const NORM_TOL: f64 = 1e-12;

/// A finitely supported vector on `Z^d`. Zero entries are not stored.
#[derive(Clone, Debug, PartialEq)]
pub struct SummableVector<T = f64> {
    dim: usize,
    entries: BTreeMap<LatticePoint, T>,
}

impl<T: Clone + Num + Signed> SummableVector<T> {
    pub fn zero(dim: usize) -> Self {
        SummableVector {
            dim,
            entries: BTreeMap::new(),
        }
    }

    pub fn from_pairs<I, P>(dim: usize, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (P, T)>,
        P: Into<LatticePoint>,
    {
        let mut v = SummableVector::zero(dim);
        for (p, x) in pairs {
            let p = p.into();
            if p.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: p.dim(),
                });
            }
            v.add_at(p, x);
        }
        Ok(v)
    }

    pub fn delta(p: LatticePoint) -> Self {
        let dim = p.dim();
        let mut v = SummableVector::zero(dim);
        v.add_at(p, T::one());
        v
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, p: &LatticePoint) -> T {
        self.entries.get(p).cloned().unwrap_or_else(T::zero)
    }

    pub fn add_at(&mut self, p: LatticePoint, x: T) {
        let v = self.get(&p) + x;
        if v.is_zero() {
            self.entries.remove(&p);
        } else {
            self.entries.insert(p, v);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&LatticePoint, &T)> + '_ {
        self.entries.iter()
    }

    pub fn support(&self) -> FiniteSubset {
        FiniteSubset::from_points(self.dim, self.entries.keys().cloned()).expect("dimension checked")
    }

    pub fn l1_norm(&self) -> T {
        self.entries.values().fold(T::zero(), |s, v| s + v.abs())
    }

    pub fn translate(&self, by: &LatticePoint) -> Self {
        SummableVector {
            dim: self.dim,
            entries: self.entries.iter().map(|(p, v)| (p + by, v.clone())).collect(),
        }
    }

    pub fn scale(&self, c: T) -> Self {
        let mut out = SummableVector::zero(self.dim);
        for (p, v) in &self.entries {
            out.add_at(p.clone(), v.clone() * c.clone());
        }
        out
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (p, v) in &other.entries {
            out.add_at(p.clone(), v.clone());
        }
        out
    }

    pub fn restrict(&self, omega: &FiniteSubset) -> Self {
        SummableVector {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .filter(|(p, _)| omega.contains(p))
                .map(|(p, v)| (p.clone(), v.clone()))
                .collect(),
        }
    }
}

impl SummableVector<f64> {
    /// `(1/2)^{k+1}` at `k = 0..terms` on `Z`, rescaled to unit `ℓ¹` norm.
    pub fn geometric(terms: usize) -> Self {
        let total = 1.0 - 0.5f64.powi(terms as i32);
        let pairs = (0..terms).map(|k| (k as i64, 0.5f64.powi(k as i32 + 1) / total));
        SummableVector::from_pairs(1, pairs).expect("one-dimensional")
    }

    pub fn is_normalized(&self) -> bool {
        (self.l1_norm() - 1.0).abs() <= NORM_TOL
    }
}

fn check_normalized(y: &SummableVector<f64>) -> Result<()> {
    if !y.is_normalized() {
        return Err(Error::Precondition(format!(
            "y must have unit l1 norm, got {}",
            y.l1_norm()
        )));
    }
    Ok(())
}

fn check_eps(epsilon: f64) -> Result<()> {
    if !(epsilon > 0.0 && epsilon < 0.5) {
        return Err(param("epsilon", format!("must lie in (0, 1/2), got {epsilon}")));
    }
    Ok(())
}

/// Smallest set of largest entries carrying mass `> 1 - ε`. Ties go to the
/// lexicographically smaller point.
pub fn truncate_support(y: &SummableVector<f64>, epsilon: f64) -> Result<FiniteSubset> {
    check_normalized(y)?;
    check_eps(epsilon)?;
    let mut order: Vec<(&LatticePoint, f64)> = y.iter().map(|(p, v)| (p, v.abs())).collect();
    order.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(b.0)));
    let mut f = FiniteSubset::empty(y.dim());
    let mut mass = 0.0;
    for (p, m) in order {
        f.insert(p.clone())?;
        mass += m;
        if mass > 1.0 - epsilon {
            return Ok(f);
        }
    }
    Err(Error::Invariant("normalized vector never exceeded mass 1 - epsilon".into()))
}

/// Pairwise disjoint translates `γ + F ⊆ Ω` found by the greedy quasi-tiling
/// with overlap parameter `1/(2|F|)`, which forces exact disjointness.
#[derive(Clone, Debug, PartialEq)]
pub struct DisjointTranslates {
    pub translates: Vec<LatticePoint>,
    pub alpha: Rational,
    /// `(1 - α(Ω; F)) |Ω| / (2|F|)`.
    pub bound: f64,
}

impl DisjointTranslates {
    pub fn count(&self) -> usize {
        self.translates.len()
    }

    pub fn bound_holds(&self) -> bool {
        self.count() as f64 >= self.bound
    }
}

pub fn disjoint_translates(omega: &FiniteSubset, f: &FiniteSubset) -> Result<DisjointTranslates> {
    if !f.is_subset(omega) {
        return Err(Error::Precondition("F must be contained in omega".into()));
    }
    let rho = Rational::new(1, 2 * f.len() as i128);
    let tiling = greedy_quasi_tiling(omega, f, rho)?;
    let a = alpha(omega, f)?;
    let bound = (1.0 - rational_to_f64(&a)) * omega.len() as f64 / (2.0 * f.len() as f64);
    Ok(DisjointTranslates {
        translates: tiling.tiles.iter().map(|t| t.translate.clone()).collect(),
        alpha: a,
        bound,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct SandwichSample {
    pub coefficients: Vec<f64>,
    pub ratio: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SandwichCertificate {
    pub f: FiniteSubset,
    pub epsilon: f64,
    /// Translates `γ_j` of `y`; the sets `γ_j + F` are pairwise disjoint.
    pub translates: Vec<LatticePoint>,
    pub samples: Vec<SandwichSample>,
    pub min_ratio: f64,
    pub max_ratio: f64,
    pub alpha: f64,
    /// `(1 - α(Ω; F)) / (2|F|)`.
    pub lower_bound: f64,
}

/// `|Σ a_j (γ_j + y)|₁`, summed exactly over the finite support.
pub fn pi_norm(y: &SummableVector<f64>, translates: &[LatticePoint], a: &[f64]) -> f64 {
    let mut acc: BTreeMap<LatticePoint, f64> = BTreeMap::new();
    for (g, &aj) in translates.iter().zip(a) {
        if aj == 0.0 {
            continue;
        }
        for (p, v) in y.iter() {
            *acc.entry(g + p).or_insert(0.0) += aj * v;
        }
    }
    acc.values().map(|v| v.abs()).sum()
}

/// Samples `a` on the `ℓ¹` unit sphere of the translate index set (plus
/// the first few basis vectors) and checks
/// `(1 - 2ε)|a|₁ ≤ |π(a)|₁ ≤ (1 + ε)|a|₁`. A violation is an error.
pub fn sandwich_check(
    y: &SummableVector<f64>,
    epsilon: f64,
    omega: &FiniteSubset,
    n_samples: usize,
    seed: u64,
) -> Result<SandwichCertificate> {
    check_normalized(y)?;
    check_eps(epsilon)?;
    if omega.dim() != y.dim() {
        return Err(Error::DimensionMismatch {
            expected: y.dim(),
            found: omega.dim(),
        });
    }
    let f = truncate_support(y, epsilon)?;
    // Re-anchor F at one of its points so it contains the origin.
    let anchor = f.iter().next().expect("nonempty").clone();
    let f0 = f.translate(&-&anchor);
    let packing = disjoint_translates(omega, &f0)?;
    let translates: Vec<LatticePoint> = packing.translates.iter().map(|g| g - &anchor).collect();
    let m = translates.len();
    if m == 0 {
        return Err(Error::Precondition("omega holds no translate of F".into()));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut coefficient_sets: Vec<Vec<f64>> = (0..m.min(4))
        .map(|j| (0..m).map(|i| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    for _ in 0..n_samples {
        let mags: Vec<f64> = (0..m).map(|_| rng.sample::<f64, _>(Exp1)).collect();
        let total: f64 = mags.iter().sum();
        coefficient_sets.push(
            mags.iter()
                .map(|x| if rng.random::<bool>() { x / total } else { -x / total })
                .collect(),
        );
    }
    let (lo, hi) = (1.0 - 2.0 * epsilon, 1.0 + epsilon);
    let mut samples = Vec::with_capacity(coefficient_sets.len());
    for a in coefficient_sets {
        let norm: f64 = a.iter().map(|x| x.abs()).sum();
        let ratio = pi_norm(y, &translates, &a) / norm;
        if !(lo - NORM_TOL..=hi + NORM_TOL).contains(&ratio) {
            return Err(Error::Invariant(format!(
                "norm ratio {ratio} outside [{lo}, {hi}]"
            )));
        }
        samples.push(SandwichSample {
            coefficients: a,
            ratio,
        });
    }
    let min_ratio = samples.iter().map(|s| s.ratio).fold(f64::INFINITY, f64::min);
    let max_ratio = samples.iter().map(|s| s.ratio).fold(f64::NEG_INFINITY, f64::max);
    let alpha = rational_to_f64(&packing.alpha);
    Ok(SandwichCertificate {
        lower_bound: (1.0 - alpha) / (2.0 * f.len() as f64),
        f,
        epsilon,
        translates,
        samples,
        min_ratio,
        max_ratio,
        alpha,
    })
}

fn check_line<T>(x: &SummableVector<T>) -> Result<()> {
    if x.dim != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            found: x.dim,
        });
    }
    Ok(())
}

/// Residue sums `π_k(x)(n) = Σ_{i ≡ n mod k} x(i)` for `n = 0..k`.
pub fn pi_k<T: Clone + Num + Signed>(x: &SummableVector<T>, k: u64) -> Result<Vec<T>> {
    check_line(x)?;
    if k == 0 {
        return Err(param("k", "must be positive"));
    }
    let mut out = vec![T::zero(); k as usize];
    for (p, v) in x.iter() {
        let r = p.coords()[0].rem_euclid(k as i64) as usize;
        out[r] = out[r].clone() + v.clone();
    }
    Ok(out)
}

/// `y_N = δ_0/2 - δ_N/2`.
pub fn y_n<T: Clone + Num + Signed>(n: i64) -> Result<SummableVector<T>> {
    if n < 1 {
        return Err(param("N", "must be at least 1"));
    }
    let half = T::one() / (T::one() + T::one());
    SummableVector::from_pairs(1, [(0i64, half.clone()), (n, -half)])
}

/// `lcm(1, ..., j)`.
pub fn lcm_upto(j: u64) -> Result<i64> {
    let mut acc: i64 = 1;
    for i in 1..=j as i64 {
        let g = acc.gcd(&i);
        acc = (acc / g)
            .checked_mul(i)
            .ok_or_else(|| param("j", format!("lcm(1..{j}) overflows")))?;
    }
    Ok(acc)
}

/// `ŷ(m) = Σ_{n∈Ω} 2 y_{kN_j}(m - n) y(n)` with the smallest `k` such that
/// `k N_j` exceeds the diameter of `Ω`. It restricts to `y` on `Ω` and is
/// annihilated by `π_i` for every `i ≤ j`.
pub fn lift_to_yj(
    y: &SummableVector<f64>,
    omega: &FiniteSubset,
    j: u64,
) -> Result<SummableVector<f64>> {
    check_line(y)?;
    if omega.dim() != 1 || omega.is_empty() {
        return Err(Error::Precondition("omega must be a nonempty subset of Z".into()));
    }
    if j == 0 {
        return Err(param("j", "must be positive"));
    }
    if y.l1_norm() > 0.5 + NORM_TOL {
        return Err(Error::Precondition(format!(
            "lift needs |y|_1 <= 1/2, got {}",
            y.l1_norm()
        )));
    }
    if !y.support().is_subset(omega) {
        return Err(Error::Precondition("support of y must lie in omega".into()));
    }
    let nj = lcm_upto(j)?;
    let diam = omega.diameter();
    let k = diam / nj + 1;
    let kernel: SummableVector<f64> = y_n(k * nj)?;
    let mut out = SummableVector::zero(1);
    for (n, yn) in y.iter() {
        for (d, kv) in kernel.iter() {
            out.add_at(n + d, 2.0 * kv * yn);
        }
    }
    Ok(out)
}

/// Finite shadow of the triviality of `∩_j ker π_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct TrivialityReport {
    pub m: i64,
    pub modulus: i64,
    pub columns: usize,
    pub rank: usize,
    /// Largest number of points of `[-M, M]` sharing one residue class.
    pub max_class_size: usize,
}

impl TrivialityReport {
    pub fn trivial(&self) -> bool {
        self.rank == self.columns && self.max_class_size <= 1
    }
}

/// `π_{2M+2}` restricted to vectors supported in `[-M, M]`: the residue
/// matrix has full column rank, so the only annihilated vector is zero.
pub fn intersection_triviality_check(m: i64) -> Result<TrivialityReport> {
    if m < 0 {
        return Err(param("M", "must be nonnegative"));
    }
    let modulus = 2 * m + 2;
    let columns = (2 * m + 1) as usize;
    let mut matrix = vec![vec![Rational::zero(); columns]; modulus as usize];
    let mut class_sizes = vec![0usize; modulus as usize];
    for (c, i) in (-m..=m).enumerate() {
        let r = i.rem_euclid(modulus) as usize;
        matrix[r][c] = Rational::from_integer(1);
        class_sizes[r] += 1;
    }
    Ok(TrivialityReport {
        m,
        modulus,
        columns,
        rank: exact_rank(matrix),
        max_class_size: class_sizes.into_iter().max().unwrap_or(0),
    })
}

fn exact_rank(mut a: Vec<Vec<Rational>>) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, pivot);
        for r in 0..rows {
            if r != rank && !a[r][c].is_zero() {
                let factor = a[r][c] / a[rank][c];
                for k in c..cols {
                    let delta = factor * a[rank][k];
                    a[r][k] -= delta;
                }
            }
        }
        rank += 1;
    }
    rank
}
