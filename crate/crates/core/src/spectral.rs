//! Band-limited subspaces of `ℓ²(Z^d)` and the spectra of their
//! restrictions to finite sets.
//!
//! For a measurable `E ⊆ T^d` the subspace `Y` consists of sequences whose
//! Fourier transform lives on `E`. The orthogonal projection onto `Y` is
//! convolution with `K(k) = ∫_E e^{2πik·θ} dθ`, so `R_Ω R*` on `ℓ²(Ω)` is the
//! Gram matrix `K(γ - γ')`. Its trace is `|Ω| · |E|` for every `Ω`.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::eigen::{hermitian_eigenvalues, symmetric_eigen};
use crate::error::{param, Error, Result};
use crate::lattice::{FiniteSubset, FolnerSpec, LatticePoint};

/// Default bound on `|Ω|` for dense solves.
pub const DEFAULT_SIZE_CAP: usize = 4096;
/// Slack allowed outside `[0, 1]` for computed eigenvalues.
pub const SPECTRUM_TOL: f64 = 1e-8;
/// Closed-interval counts widen each end by this much.
pub const COUNT_TOL: f64 = 1e-10;
/// Imaginary parts below this are treated as zero.
const REAL_TOL: f64 = 1e-14;

/// A product of finite unions of half-open intervals in `[0, 1)`, one
/// union per torus coordinate.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiplierSet {
    intervals: Vec<Vec<(f64, f64)>>,
}

impl MultiplierSet {
    /// Intervals are sorted per coordinate; overlaps are rejected.
    pub fn new(mut intervals: Vec<Vec<(f64, f64)>>) -> Result<Self> {
        if intervals.is_empty() {
            return Err(param("multiplier", "needs at least one coordinate"));
        }
        for axis in &mut intervals {
            for &(a, b) in axis.iter() {
                if !(0.0 <= a && a < b && b <= 1.0) {
                    return Err(param(
                        "multiplier",
                        format!("interval [{a}, {b}) must satisfy 0 <= a < b <= 1"),
                    ));
                }
            }
            axis.sort_by(|x, y| x.0.total_cmp(&y.0));
            if axis.windows(2).any(|w| w[0].1 > w[1].0) {
                return Err(param("multiplier", "intervals in one coordinate overlap"));
            }
        }
        Ok(MultiplierSet { intervals })
    }

    /// The symmetric band `[0, w/2) ∪ [1 - w/2, 1)` in each of `dim`
    /// coordinates with `w = measure^{1/dim}`, so the kernel is real.
    pub fn symmetric_band(dim: usize, measure: f64) -> Result<Self> {
        if dim == 0 {
            return Err(param("dim", "must be at least 1"));
        }
        if !(0.0..=1.0).contains(&measure) {
            return Err(param("measure", format!("must lie in [0, 1], got {measure}")));
        }
        let w = measure.powf(1.0 / dim as f64);
        let axis = if w == 0.0 {
            vec![]
        } else if w >= 1.0 {
            vec![(0.0, 1.0)]
        } else {
            vec![(0.0, w / 2.0), (1.0 - w / 2.0, 1.0)]
        };
        MultiplierSet::new(vec![axis; dim])
    }

    /// Parses `a:b[,a:b]` per coordinate, coordinates separated by `;`.
    /// An empty coordinate is the empty set.
    pub fn parse(s: &str) -> Result<Self> {
        let mut intervals = Vec::new();
        for axis in s.split(';') {
            let mut list = Vec::new();
            for part in axis.split(',').map(str::trim).filter(|p| !p.is_empty()) {
                let (a, b) = part
                    .split_once(':')
                    .ok_or_else(|| param("multiplier", format!("expected a:b, got `{part}`")))?;
                let num = |t: &str| {
                    t.trim()
                        .parse::<f64>()
                        .map_err(|_| param("multiplier", format!("not a number: `{t}`")))
                };
                list.push((num(a)?, num(b)?));
            }
            intervals.push(list);
        }
        MultiplierSet::new(intervals)
    }

    pub fn dim(&self) -> usize {
        self.intervals.len()
    }

    pub fn intervals(&self) -> &[Vec<(f64, f64)>] {
        &self.intervals
    }

    pub fn measure(&self) -> f64 {
        self.intervals
            .iter()
            .map(|axis| axis.iter().map(|(a, b)| b - a).sum::<f64>())
            .product()
    }

    pub fn contains(&self, theta: &[f64]) -> bool {
        self.intervals
            .iter()
            .zip(theta)
            .all(|(axis, &t)| axis.iter().any(|&(a, b)| a <= t && t < b))
    }

    fn axis_kernel(&self, axis: usize, k: i64) -> Complex64 {
        let list = &self.intervals[axis];
        if k == 0 {
            return Complex64::new(list.iter().map(|(a, b)| b - a).sum(), 0.0);
        }
        let w = 2.0 * PI * k as f64;
        let mut s = Complex64::new(0.0, 0.0);
        for &(a, b) in list {
            s += Complex64::from_polar(1.0, w * b) - Complex64::from_polar(1.0, w * a);
        }
        s / Complex64::new(0.0, w)
    }

    /// `∫_E e^{2πik·θ} dθ` in closed form.
    pub fn kernel_entry(&self, k: &LatticePoint) -> Complex64 {
        assert_eq!(k.dim(), self.dim(), "kernel argument has the wrong dimension");
        k.coords()
            .iter()
            .enumerate()
            .map(|(axis, &kj)| self.axis_kernel(axis, kj))
            .product()
    }
}

/// `K(γ - γ')` over `Ω × Ω`, column-major. `im` is `None` when the kernel
/// is real on every difference that occurs.
#[derive(Clone, Debug)]
pub struct GramMatrix {
    pub n: usize,
    pub re: Vec<f64>,
    pub im: Option<Vec<f64>>,
}

impl GramMatrix {
    pub fn is_real(&self) -> bool {
        self.im.is_none()
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.re[i * self.n + i]).sum()
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        let idx = j * self.n + i;
        Complex64::new(self.re[idx], self.im.as_ref().map_or(0.0, |m| m[idx]))
    }

    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        match &self.im {
            None => Ok(symmetric_eigen(&self.re, self.n, false)?.values),
            Some(im) => hermitian_eigenvalues(&self.re, im, self.n),
        }
    }
}

/// One-dimensional kernel tables over every difference the set can produce.
/// The kernel factorizes over coordinates, so each entry is a short product.
struct KernelTable {
    offsets: Vec<i64>,
    tables: Vec<Vec<Complex64>>,
}

impl KernelTable {
    fn new(e: &MultiplierSet, omega: &FiniteSubset) -> Self {
        let (lo, hi) = omega.bounding_box().unwrap_or((vec![0; e.dim()], vec![0; e.dim()]));
        let mut offsets = Vec::new();
        let mut tables = Vec::new();
        for axis in 0..e.dim() {
            let span = hi[axis] - lo[axis];
            offsets.push(span);
            tables.push((-span..=span).map(|k| e.axis_kernel(axis, k)).collect());
        }
        KernelTable { offsets, tables }
    }

    fn get(&self, a: &LatticePoint, b: &LatticePoint) -> Complex64 {
        let mut z = Complex64::new(1.0, 0.0);
        for (axis, (x, y)) in a.coords().iter().zip(b.coords()).enumerate() {
            z *= self.tables[axis][(x - y + self.offsets[axis]) as usize];
        }
        z
    }
}

fn check_set(e: &MultiplierSet, omega: &FiniteSubset, cap: usize) -> Result<()> {
    if omega.dim() != e.dim() {
        return Err(Error::DimensionMismatch {
            expected: e.dim(),
            found: omega.dim(),
        });
    }
    if omega.is_empty() {
        return Err(Error::EmptySet);
    }
    if omega.len() > cap {
        return Err(Error::SizeCap {
            size: omega.len(),
            cap,
        });
    }
    Ok(())
}

pub fn gram_matrix(e: &MultiplierSet, omega: &FiniteSubset, cap: usize) -> Result<GramMatrix> {
    check_set(e, omega, cap)?;
    let pts: Vec<&LatticePoint> = omega.iter().collect();
    let n = pts.len();
    let table = KernelTable::new(e, omega);
    let mut re = vec![0.0; n * n];
    let mut im = vec![0.0; n * n];
    let mut max_im = 0.0f64;
    for j in 0..n {
        for i in 0..n {
            let z = table.get(pts[i], pts[j]);
            re[j * n + i] = z.re;
            im[j * n + i] = z.im;
            max_im = max_im.max(z.im.abs());
        }
    }
    Ok(GramMatrix {
        n,
        re,
        im: (max_im > REAL_TOL).then_some(im),
    })
}

/// Eigenvalues of `R_Ω R*` with the spectrum and trace invariants enforced.
pub fn gram_eigenvalues(e: &MultiplierSet, omega: &FiniteSubset, cap: usize) -> Result<Vec<f64>> {
    let m = gram_matrix(e, omega, cap)?;
    let values = m.eigenvalues()?;
    check_spectrum(&values, m.trace())?;
    Ok(values)
}

fn check_spectrum(values: &[f64], trace: f64) -> Result<()> {
    if let Some(v) = values
        .iter()
        .find(|&&v| !(-SPECTRUM_TOL..=1.0 + SPECTRUM_TOL).contains(&v))
    {
        return Err(Error::Invariant(format!("eigenvalue {v} outside [0, 1]")));
    }
    let sum: f64 = values.iter().sum();
    if (sum - trace).abs() > SPECTRUM_TOL * values.len().max(1) as f64 {
        return Err(Error::Invariant(format!(
            "eigenvalue sum {sum} differs from trace {trace}"
        )));
    }
    Ok(())
}

/// `#{λ : a ≤ λ ≤ b}` with both ends widened by [`COUNT_TOL`].
pub fn count_in(values: &[f64], a: f64, b: f64) -> usize {
    values
        .iter()
        .filter(|&&v| a - COUNT_TOL <= v && v <= b + COUNT_TOL)
        .count()
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectralReport {
    pub omega_size: usize,
    pub measure: f64,
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    pub trace: f64,
    pub counts: Vec<((f64, f64), usize)>,
}

impl SpectralReport {
    pub fn count(&self, a: f64, b: f64) -> usize {
        count_in(&self.eigenvalues, a, b)
    }

    pub fn normalized_trace(&self) -> f64 {
        self.trace / self.omega_size as f64
    }
}

pub fn spectral_report(
    e: &MultiplierSet,
    omega: &FiniteSubset,
    intervals: &[(f64, f64)],
) -> Result<SpectralReport> {
    spectral_report_capped(e, omega, intervals, DEFAULT_SIZE_CAP)
}

pub fn spectral_report_capped(
    e: &MultiplierSet,
    omega: &FiniteSubset,
    intervals: &[(f64, f64)],
    cap: usize,
) -> Result<SpectralReport> {
    for &(a, b) in intervals {
        if !(a <= b) {
            return Err(param("interval", format!("[{a}, {b}] is empty")));
        }
    }
    let m = gram_matrix(e, omega, cap)?;
    let trace = m.trace();
    let eigenvalues = m.eigenvalues()?;
    check_spectrum(&eigenvalues, trace)?;
    let measure = e.measure();
    if (trace / m.n as f64 - measure).abs() > 1e-9 {
        return Err(Error::Invariant(format!(
            "trace / |omega| = {} differs from |E| = {measure}",
            trace / m.n as f64
        )));
    }
    let counts = intervals
        .iter()
        .map(|&(a, b)| ((a, b), count_in(&eigenvalues, a, b)))
        .collect();
    Ok(SpectralReport {
        omega_size: m.n,
        measure,
        eigenvalues,
        trace,
        counts,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConcentrationRow {
    pub index: usize,
    pub size: usize,
    pub count: usize,
    pub ratio: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConcentrationTable {
    pub a: f64,
    pub b: f64,
    pub rows: Vec<ConcentrationRow>,
}

impl ConcentrationTable {
    /// The ratio at the largest size is below the one at the smallest. A
    /// table that is identically zero (|E| ∈ {0, 1}) also passes.
    pub fn trend_holds(&self) -> bool {
        match (self.rows.first(), self.rows.last()) {
            (Some(f), Some(l)) => l.ratio < f.ratio || (f.count == 0 && l.count == 0),
            _ => false,
        }
    }

    pub fn strictly_decreasing(&self) -> bool {
        self.rows.windows(2).all(|w| w[1].ratio < w[0].ratio)
    }
}

/// `n_i[a, b] / |Ω_i|` along the Følner indices, solved in parallel.
pub fn concentration_scan(
    e: &MultiplierSet,
    spec: &FolnerSpec,
    indices: &[usize],
    a: f64,
    b: f64,
) -> Result<ConcentrationTable> {
    if !(0.0 < a && a <= b && b < 1.0) {
        return Err(param("a", format!("need 0 < a <= b < 1, got a = {a}, b = {b}")));
    }
    if indices.is_empty() {
        return Err(param("sizes", "at least one size is required"));
    }
    let mut sorted = indices.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let rows = sorted
        .par_iter()
        .map(|&index| {
            let omega = spec.set(index)?;
            let values = gram_eigenvalues(e, &omega, DEFAULT_SIZE_CAP)?;
            let count = count_in(&values, a, b);
            Ok(ConcentrationRow {
                index,
                size: omega.len(),
                count,
                ratio: count as f64 / omega.len() as f64,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ConcentrationTable { a, b, rows })
}

/// `(n[ε, 1], n[ε/2, 1])`, which bracket `wdim_ε(R_Ω B^Y_1, ℓ²)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Sandwich {
    pub size: usize,
    pub epsilon: f64,
    pub lower: usize,
    pub upper: usize,
}

impl Sandwich {
    pub fn lower_ratio(&self) -> f64 {
        self.lower as f64 / self.size as f64
    }

    pub fn upper_ratio(&self) -> f64 {
        self.upper as f64 / self.size as f64
    }
}

pub fn wdim_sandwich(e: &MultiplierSet, omega: &FiniteSubset, epsilon: f64) -> Result<Sandwich> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(param("epsilon", format!("must lie in (0, 1), got {epsilon}")));
    }
    let values = gram_eigenvalues(e, omega, DEFAULT_SIZE_CAP)?;
    Ok(sandwich_from_values(&values, epsilon))
}

pub fn sandwich_from_values(values: &[f64], epsilon: f64) -> Sandwich {
    Sandwich {
        size: values.len(),
        epsilon,
        lower: count_in(values, epsilon, 1.0),
        upper: count_in(values, epsilon / 2.0, 1.0),
    }
}

/// Normalized traces before and after restricting to the sublattice `N·Z^d`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Reduction {
    pub index: usize,
    pub cells: usize,
    pub multiplicity: usize,
    pub dim_parent: f64,
    pub dim_sub: f64,
}

impl Reduction {
    /// `dim_sub = N^d · dim_parent` within `1e-9`.
    pub fn holds(&self) -> bool {
        (self.dim_sub - self.multiplicity as f64 * self.dim_parent).abs() <= 1e-9
    }
}

/// Regroups a box whose sides are multiples of `index` into cosets of the
/// sublattice `index·Z^d`. Each cell carries `index^d` copies of the fiber,
/// and the sublattice trace is the sum of the cell-diagonal blocks.
pub fn reduction_check(e: &MultiplierSet, index: usize, omega: &FiniteSubset) -> Result<Reduction> {
    if index == 0 {
        return Err(param("index", "must be positive"));
    }
    check_set(e, omega, usize::MAX)?;
    let (lo, hi) = omega.bounding_box().ok_or(Error::EmptySet)?;
    let full: usize = lo.iter().zip(&hi).map(|(l, h)| (h - l + 1) as usize).product();
    if full != omega.len() {
        return Err(Error::Precondition("omega must be a box".into()));
    }
    let n = index as i64;
    if lo.iter().zip(&hi).any(|(l, h)| (h - l + 1) % n != 0) {
        return Err(Error::Precondition(format!(
            "box side lengths must be multiples of {index}"
        )));
    }
    let table = KernelTable::new(e, omega);
    let mut cells: BTreeMap<Vec<i64>, f64> = BTreeMap::new();
    for p in omega.iter() {
        let cell: Vec<i64> = p
            .coords()
            .iter()
            .zip(&lo)
            .map(|(x, l)| (x - l).div_euclid(n))
            .collect();
        *cells.entry(cell).or_insert(0.0) += table.get(p, p).re;
    }
    let parent_trace: f64 = omega.iter().map(|p| table.get(p, p).re).sum();
    let sub_trace: f64 = cells.values().sum();
    let multiplicity = index.pow(e.dim() as u32);
    Ok(Reduction {
        index,
        cells: cells.len(),
        multiplicity,
        dim_parent: parent_trace / omega.len() as f64,
        dim_sub: sub_trace / cells.len() as f64,
    })
}

/// Outside mass of `R* x` for one eigenvector, truncated to a padded box.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuasimodeSample {
    pub eigen_index: usize,
    pub lambda: f64,
    /// `|R* x|` on the padded box minus `Ω`.
    pub delta: f64,
    /// `sqrt(λ(1-λ))`, the exact outside mass on all of `Z^d`.
    pub delta_exact: f64,
    pub holds: bool,
}

impl QuasimodeSample {
    /// Squared mass lost to truncation.
    pub fn remainder(&self) -> f64 {
        (self.delta_exact.powi(2) - self.delta.powi(2)).max(0.0)
    }
}

/// Checks `λ(1-λ) ≤ 2ε + δ` with `ε = 0` for the given eigenvectors of the
/// (real) Gram matrix. `δ` is the mass of `R* x` outside `Ω`, evaluated on
/// the bounding box padded by `pad_factor` times its half-width.
pub fn quasimode_check(
    e: &MultiplierSet,
    omega: &FiniteSubset,
    eigen_indices: &[usize],
    pad_factor: i64,
) -> Result<Vec<QuasimodeSample>> {
    let m = gram_matrix(e, omega, DEFAULT_SIZE_CAP)?;
    if !m.is_real() {
        return Err(Error::Precondition(
            "quasimode check needs a real kernel (symmetric E)".into(),
        ));
    }
    let eig = symmetric_eigen(&m.re, m.n, true)?;
    let (lo, hi) = omega.bounding_box().ok_or(Error::EmptySet)?;
    let (plo, phi): (Vec<i64>, Vec<i64>) = lo
        .iter()
        .zip(&hi)
        .map(|(l, h)| {
            let r = ((h - l) / 2).max(1) * pad_factor;
            (l - r, h + r)
        })
        .unzip();
    let padded = FiniteSubset::product_box(&plo, &phi);
    let outside = padded.difference(omega);
    let pts: Vec<&LatticePoint> = omega.iter().collect();
    let table = KernelTable::new(e, &padded);
    eigen_indices
        .iter()
        .map(|&j| {
            if j >= m.n {
                return Err(Error::IndexOutOfRange { index: j, max: m.n - 1 });
            }
            let x = eig.vector(j).expect("vectors requested");
            let lambda = eig.values[j];
            let mut mass = 0.0;
            for g in outside.iter() {
                let v: Complex64 = pts
                    .iter()
                    .zip(x)
                    .map(|(p, xi)| table.get(g, p) * *xi)
                    .sum();
                mass += v.norm_sqr();
            }
            let delta = mass.sqrt();
            let lam = lambda.clamp(0.0, 1.0);
            Ok(QuasimodeSample {
                eigen_index: j,
                lambda,
                delta,
                delta_exact: (lam * (1.0 - lam)).sqrt(),
                holds: lam * (1.0 - lam) <= delta + 1e-12,
            })
        })
        .collect()
}

/// Finite-support symbol `γ ↦ a_γ ∈ Hom(C^{dim_in}, C^{dim_out})`.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteTypeSymbol {
    pub lattice_dim: usize,
    pub dim_in: usize,
    pub dim_out: usize,
    /// Row-major `dim_out × dim_in` blocks.
    pub coefficients: BTreeMap<LatticePoint, Vec<Complex64>>,
}

impl FiniteTypeSymbol {
    pub fn new(
        lattice_dim: usize,
        dim_in: usize,
        dim_out: usize,
        coefficients: BTreeMap<LatticePoint, Vec<Complex64>>,
    ) -> Result<Self> {
        if dim_in == 0 || dim_out == 0 {
            return Err(param("symbol", "fiber dimensions must be positive"));
        }
        for (g, a) in &coefficients {
            if g.dim() != lattice_dim {
                return Err(Error::DimensionMismatch {
                    expected: lattice_dim,
                    found: g.dim(),
                });
            }
            if a.len() != dim_in * dim_out {
                return Err(param("symbol", format!("coefficient at {g} has the wrong shape")));
            }
        }
        Ok(FiniteTypeSymbol {
            lattice_dim,
            dim_in,
            dim_out,
            coefficients,
        })
    }

    fn real(lattice_dim: usize, dim_in: usize, dim_out: usize, c: &[(i64, &[f64])]) -> Self {
        let coefficients = c
            .iter()
            .map(|(g, a)| {
                let mut p = vec![0; lattice_dim];
                p[0] = *g;
                (LatticePoint::new(p), a.iter().map(|&x| Complex64::new(x, 0.0)).collect())
            })
            .collect();
        FiniteTypeSymbol::new(lattice_dim, dim_in, dim_out, coefficients).expect("valid literal")
    }

    /// The identity on a one-dimensional fiber.
    pub fn identity(lattice_dim: usize) -> Self {
        Self::real(lattice_dim, 1, 1, &[(0, &[1.0])])
    }

    /// `(u, v) ↦ u + shift(v)`, symbol `[1, e^{2πiθ}]` from a two-dimensional
    /// fiber to a one-dimensional one.
    pub fn pair(lattice_dim: usize) -> Self {
        Self::real(lattice_dim, 2, 1, &[(0, &[1.0, 0.0]), (1, &[0.0, 1.0])])
    }

    /// `x ↦ x - shift(x)`, symbol `1 - e^{2πiθ}`.
    pub fn difference(lattice_dim: usize) -> Self {
        Self::real(lattice_dim, 1, 1, &[(0, &[1.0]), (1, &[-1.0])])
    }

    pub fn by_name(name: &str, lattice_dim: usize) -> Result<Self> {
        match name {
            "identity" => Ok(Self::identity(lattice_dim)),
            "pair" => Ok(Self::pair(lattice_dim)),
            "difference" => Ok(Self::difference(lattice_dim)),
            other => Err(param(
                "symbol",
                format!("unknown symbol `{other}` (expected identity, pair or difference)"),
            )),
        }
    }

    pub fn evaluate(&self, theta: &[f64]) -> DMatrix<Complex64> {
        let mut m = DMatrix::from_element(self.dim_out, self.dim_in, Complex64::new(0.0, 0.0));
        for (g, a) in &self.coefficients {
            let phase: f64 = g.coords().iter().zip(theta).map(|(k, t)| *k as f64 * t).sum();
            let w = Complex64::from_polar(1.0, 2.0 * PI * phase);
            for r in 0..self.dim_out {
                for c in 0..self.dim_in {
                    m[(r, c)] += a[r * self.dim_in + c] * w;
                }
            }
        }
        m
    }
}

/// Singular values above this count toward the numerical rank.
pub const RANK_TOL: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq)]
pub struct SymbolRankReport {
    pub grid_size: usize,
    pub points_in_e: usize,
    pub min_rank: usize,
    pub max_rank: usize,
    pub dim_in: usize,
    pub dim_out: usize,
    /// `(1/g^d) Σ_θ rank Ŝ(θ) 1_E(θ)`.
    pub image_dim: f64,
    /// Rank below `dim_in` everywhere on `E`: no injective equivariant map
    /// of finite type has this symbol.
    pub injectivity_impossible: bool,
}

pub fn symbol_rank_dimension(
    s: &FiniteTypeSymbol,
    e: &MultiplierSet,
    grid_size: usize,
) -> Result<SymbolRankReport> {
    if grid_size < 16 {
        return Err(param("grid", format!("must be at least 16, got {grid_size}")));
    }
    if s.lattice_dim != e.dim() {
        return Err(Error::DimensionMismatch {
            expected: e.dim(),
            found: s.lattice_dim,
        });
    }
    let d = e.dim();
    let total = grid_size
        .checked_pow(d as u32)
        .filter(|&t| t <= 1 << 22)
        .ok_or_else(|| param("grid", "grid_size^d is too large"))?;
    let mut min_rank = usize::MAX;
    let mut max_rank = 0;
    let mut rank_sum = 0usize;
    let mut points_in_e = 0;
    let mut theta = vec![0.0; d];
    for flat in 0..total {
        let mut r = flat;
        for t in theta.iter_mut() {
            *t = (r % grid_size) as f64 / grid_size as f64;
            r /= grid_size;
        }
        if !e.contains(&theta) {
            continue;
        }
        points_in_e += 1;
        let rank = s
            .evaluate(&theta)
            .singular_values()
            .iter()
            .filter(|&&x| x > RANK_TOL)
            .count();
        min_rank = min_rank.min(rank);
        max_rank = max_rank.max(rank);
        rank_sum += rank;
    }
    if points_in_e == 0 {
        min_rank = 0;
    }
    Ok(SymbolRankReport {
        grid_size,
        points_in_e,
        min_rank,
        max_rank,
        dim_in: s.dim_in,
        dim_out: s.dim_out,
        image_dim: rank_sum as f64 / total as f64,
        injectivity_impossible: max_rank < s.dim_in,
    })
}
