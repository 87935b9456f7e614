//! Certified bounds for the ε-width dimension of finite-dimensional balls.
//!
//! No general algorithm computes `wdim_ε` exactly, so every routine here
//! returns an interval `[lower, upper]` that contains the true value.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{param, Result};

/// The compact set and metric an interval refers to.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum BallContext {
    /// Unit ball of a normed space of dimension `n`, dilated by `radius`.
    UnitBall { n: usize, radius: f64 },
    /// Unit ball of `ℓ^q(n)` measured in the `ℓ^p` distance, `q < p`.
    LqInLp { n: usize, q: f64, p: f64 },
}

impl BallContext {
    pub fn dim(&self) -> usize {
        match *self {
            BallContext::UnitBall { n, .. } | BallContext::LqInLp { n, .. } => n,
        }
    }

    pub fn diameter(&self) -> f64 {
        match *self {
            BallContext::UnitBall { radius, .. } => 2.0 * radius,
            BallContext::LqInLp { .. } => 2.0,
        }
    }

    pub fn width(&self, epsilon: f64) -> Result<WidthInterval> {
        match *self {
            BallContext::UnitBall { n, radius } => wdim_unit_ball(n, epsilon, radius),
            BallContext::LqInLp { n, q, p } => wdim_lq_ball_in_lp(n, q, p, epsilon),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WidthInterval {
    pub lower: usize,
    pub upper: usize,
    pub epsilon: f64,
    pub context: BallContext,
}

impl WidthInterval {
    pub fn is_exact(&self) -> bool {
        self.lower == self.upper
    }
}

fn check_eps(epsilon: f64) -> Result<()> {
    if !(epsilon.is_finite() && epsilon > 0.0) {
        return Err(param("epsilon", format!("must be positive and finite, got {epsilon}")));
    }
    Ok(())
}

fn check_exponent(name: &'static str, e: f64) -> Result<()> {
    if !(e >= 1.0) {
        return Err(param(name, format!("must lie in [1, inf], got {e}")));
    }
    Ok(())
}

/// Bounds for the ball of radius `radius` in an `n`-dimensional normed space.
///
/// Below the radius the width is `n`; from twice the radius on it is `0`.
/// The window in between is left open.
pub fn wdim_unit_ball(n: usize, epsilon: f64, radius: f64) -> Result<WidthInterval> {
    if n == 0 {
        return Err(param("n", "must be at least 1"));
    }
    check_eps(epsilon)?;
    if !(radius.is_finite() && radius > 0.0) {
        return Err(param("radius", format!("must be positive and finite, got {radius}")));
    }
    let (lower, upper) = if epsilon < radius {
        (n, n)
    } else if epsilon >= 2.0 * radius {
        (0, 0)
    } else {
        (0, n)
    };
    Ok(WidthInterval {
        lower,
        upper,
        epsilon,
        context: BallContext::UnitBall { n, radius },
    })
}

/// `1/q - 1/p` with `1/inf = 0`.
pub fn beta(q: f64, p: f64) -> f64 {
    1.0 / q - if p.is_infinite() { 0.0 } else { 1.0 / p }
}

/// Fiber-diameter threshold of the `k`-term compression: `2 (k+1)^{-β}`.
pub fn compression_threshold(k: usize, beta: f64) -> f64 {
    2.0 * ((k + 1) as f64).powf(-beta)
}

/// Bounds for the unit ball of `ℓ^q(n)` inside `ℓ^p(n)`, `q < p`.
pub fn wdim_lq_ball_in_lp(n: usize, q: f64, p: f64, epsilon: f64) -> Result<WidthInterval> {
    if n == 0 {
        return Err(param("n", "must be at least 1"));
    }
    check_eps(epsilon)?;
    check_exponent("q", q)?;
    check_exponent("p", p)?;
    if q >= p {
        return Err(param(
            "q",
            format!("needs q < p (got q = {q}, p = {p}); use the unit-ball bounds instead"),
        ));
    }
    let b = beta(q, p);
    let upper = if epsilon >= 2.0 {
        0
    } else {
        (1..=n)
            .find(|&k| compression_threshold(k, b) <= epsilon)
            .unwrap_or(n)
    };
    let lower = (1..=n)
        .rev()
        .find(|&k| epsilon < (k as f64).powf(-b))
        .unwrap_or(0);
    Ok(WidthInterval {
        lower,
        upper,
        epsilon,
        context: BallContext::LqInLp { n, q, p },
    })
}

/// `ℓ^p` norm for `p ∈ [1, inf]`.
pub fn p_norm(x: &[f64], p: f64) -> f64 {
    if p.is_infinite() {
        x.iter().fold(0.0, |m, v| m.max(v.abs()))
    } else if p == 1.0 {
        x.iter().map(|v| v.abs()).sum()
    } else {
        x.iter().map(|v| v.abs().powf(p)).sum::<f64>().powf(1.0 / p)
    }
}

pub fn p_distance(x: &[f64], y: &[f64], p: f64) -> f64 {
    let d: Vec<f64> = x.iter().zip(y).map(|(a, b)| a - b).collect();
    p_norm(&d, p)
}

/// Keeps the `k+1` largest entries, then shrinks each toward zero by the
/// smallest kept magnitude. The result has at most `k` nonzeros and depends
/// continuously on `x`. Ties go to the lowest index.
pub fn compression_witness(x: &[f64], k: usize) -> Result<Vec<f64>> {
    if k + 1 > x.len() {
        return Err(param("k", format!("need k + 1 <= n, got k = {k}, n = {}", x.len())));
    }
    if let Some(v) = x.iter().find(|v| !v.is_finite()) {
        return Err(param("x", format!("entries must be finite, found {v}")));
    }
    let mut order: Vec<usize> = (0..x.len()).collect();
    order.sort_by(|&a, &b| x[b].abs().total_cmp(&x[a].abs()).then(a.cmp(&b)));
    let t = x[order[k]].abs();
    let mut out = vec![0.0; x.len()];
    for &i in &order[..k] {
        let m = x[i].abs() - t;
        if m > 0.0 {
            out[i] = m.copysign(x[i]);
        }
    }
    Ok(out)
}

/// Outcome of sampling pairs in one fiber of the compression map.
#[derive(Clone, Debug, PartialEq)]
pub struct FiberAudit {
    pub pairs: usize,
    pub max_distance: f64,
    pub threshold: f64,
    pub violations: usize,
}

fn sample_fiber_point(
    rng: &mut ChaCha8Rng,
    image: &[f64],
    support: &[usize],
    n: usize,
    k: usize,
    q: f64,
) -> Vec<f64> {
    loop {
        let t: f64 = rng.random::<f64>() * (k as f64 + 1.0).powf(-1.0 / q);
        let mut x = vec![0.0; n];
        for &i in support {
            x[i] = (image[i].abs() + t).copysign(if image[i] == 0.0 {
                if rng.random::<bool>() { 1.0 } else { -1.0 }
            } else {
                image[i]
            });
        }
        let free: Vec<usize> = (0..n).filter(|i| !support.contains(i)).collect();
        let j = free[rng.random_range(0..free.len())];
        x[j] = if rng.random::<bool>() { t } else { -t };
        let fill = rng.random::<bool>();
        for &i in &free {
            if i != j && fill {
                x[i] = rng.random_range(-t..=t) * 0.999;
            }
        }
        if p_norm(&x, q) <= 1.0 {
            return x;
        }
    }
}

/// Samples pairs in `B^{ℓ^q(n)}_1` sharing an image under the `k`-term
/// compression and records their largest `ℓ^p` distance. Each pair is built
/// by rejection: a common sparse image, two independent shrink levels, one
/// coordinate sitting exactly at the level and the rest below it.
pub fn fiber_audit(
    n: usize,
    k: usize,
    q: f64,
    p: f64,
    pairs: usize,
    seed: u64,
) -> Result<FiberAudit> {
    if k == 0 || k + 1 > n {
        return Err(param("k", format!("need 1 <= k < n, got k = {k}, n = {n}")));
    }
    check_exponent("q", q)?;
    check_exponent("p", p)?;
    let threshold = compression_threshold(k, beta(q, p));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_distance = 0.0f64;
    let mut violations = 0;
    for _ in 0..pairs {
        let support: Vec<usize> = sample(&mut rng, n, k).into_vec();
        // A small image keeps the rejection rate low and the fiber wide.
        let scale = rng.random::<f64>().powi(3);
        let mut image = vec![0.0; n];
        for &i in &support {
            image[i] = rng.random_range(-1.0..1.0) * scale / k as f64;
        }
        let x = sample_fiber_point(&mut rng, &image, &support, n, k, q);
        let y = sample_fiber_point(&mut rng, &image, &support, n, k, q);
        let fx = compression_witness(&x, k)?;
        let fy = compression_witness(&y, k)?;
        if p_distance(&fx, &fy, f64::INFINITY) > 1e-12 {
            return Err(crate::error::Error::Invariant(
                "fiber sampler produced points with different images".into(),
            ));
        }
        let d = p_distance(&x, &y, p);
        max_distance = max_distance.max(d);
        if d > threshold * (1.0 + 1e-9) {
            violations += 1;
        }
    }
    Ok(FiberAudit {
        pairs,
        max_distance,
        threshold,
        violations,
    })
}

/// Largest sampled ratio `|f(x) - f(y)|_p / |x - y|_p` for the compression map.
pub fn lipschitz_audit(n: usize, k: usize, p: f64, pairs: usize, seed: u64) -> Result<f64> {
    check_exponent("p", p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for _ in 0..pairs {
        let x: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
        let step = 10f64.powf(rng.random_range(-4.0..0.0));
        let y: Vec<f64> = x
            .iter()
            .map(|v| v + step * rng.random_range(-1.0..1.0))
            .collect();
        let d = p_distance(&x, &y, p);
        if d == 0.0 {
            continue;
        }
        let fd = p_distance(&compression_witness(&x, k)?, &compression_witness(&y, k)?, p);
        worst = worst.max(fd / d);
    }
    Ok(worst)
}

/// Result of sweeping the product inequality over a sample grid.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ProductReport {
    pub checked: usize,
    /// Upper bound of the product exceeding the sum of factor upper bounds.
    /// Only certified for unit balls in their own norm.
    pub upper_violations: Vec<String>,
    /// Lower bound of the product exceeding the sum of factor upper bounds.
    /// Any entry here contradicts the product inequality itself.
    pub certified_violations: Vec<String>,
    /// Cases where the containment upper bound of the product is one too
    /// large to witness the inequality; informational only.
    pub loose_cases: usize,
}

impl ProductReport {
    pub fn holds(&self) -> bool {
        self.upper_violations.is_empty() && self.certified_violations.is_empty()
    }
}

/// One factor pair in a product sweep.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ProductSample {
    /// Unit balls of `ℓ^r(n1)` and `ℓ^r(n2)` with the `ℓ^r` product metric.
    UnitBalls { n1: usize, n2: usize, r: f64 },
    /// Unit balls of `ℓ^q(n1)`, `ℓ^q(n2)` measured in `ℓ^p`, product in `ℓ^p`.
    LqInLp { n1: usize, n2: usize, q: f64, p: f64 },
}

fn root2(r: f64) -> f64 {
    if r.is_infinite() {
        1.0
    } else {
        2f64.powf(1.0 / r)
    }
}

/// Checks the product inequality `wdim_{2^{1/r}ε}(X×Y) ≤ wdim_ε X + wdim_ε Y`
/// against the implemented bounds, for every sample and every `ε` on the grid.
pub fn check_product_subadditivity(
    samples: &[ProductSample],
    eps_grid: &[f64],
) -> Result<ProductReport> {
    let mut report = ProductReport::default();
    for s in samples {
        for &eps in eps_grid {
            report.checked += 1;
            match *s {
                ProductSample::UnitBalls { n1, n2, r } => {
                    check_exponent("r", r)?;
                    let u1 = wdim_unit_ball(n1, eps, 1.0)?.upper;
                    let u2 = wdim_unit_ball(n2, eps, 1.0)?.upper;
                    // X×Y sits in the ball of radius 2^{1/r} of ℓ^r(n1+n2).
                    let c = root2(r);
                    let prod = wdim_unit_ball(n1 + n2, c * eps, c)?;
                    if prod.upper > u1 + u2 {
                        report
                            .upper_violations
                            .push(format!("{s:?} eps={eps}: {} > {u1} + {u2}", prod.upper));
                    }
                    if prod.lower > u1 + u2 {
                        report
                            .certified_violations
                            .push(format!("{s:?} eps={eps}: {} > {u1} + {u2}", prod.lower));
                    }
                }
                ProductSample::LqInLp { n1, n2, q, p } => {
                    let u1 = wdim_lq_ball_in_lp(n1, q, p, eps)?.upper;
                    let u2 = wdim_lq_ball_in_lp(n2, q, p, eps)?.upper;
                    let e = root2(p) * eps;
                    // X×Y contains the unit ball of ℓ^q(n1+n2) and sits in the
                    // ball of radius 2^{1/q}.
                    let inner = wdim_lq_ball_in_lp(n1 + n2, q, p, e)?;
                    let outer = wdim_lq_ball_in_lp(n1 + n2, q, p, e / root2(q))?;
                    if inner.lower > u1 + u2 {
                        report
                            .certified_violations
                            .push(format!("{s:?} eps={eps}: {} > {u1} + {u2}", inner.lower));
                    }
                    if outer.upper > u1 + u2 {
                        report.loose_cases += 1;
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Monotonicity of both bound curves in `ε`, and vanishing at the diameter.
#[derive(Clone, Debug, PartialEq)]
pub struct MonotoneReport {
    pub monotone: bool,
    pub zero_at_diameter: bool,
    pub intervals: Vec<WidthInterval>,
}

pub fn check_monotone_eps(context: BallContext, eps_grid: &[f64]) -> Result<MonotoneReport> {
    if eps_grid.windows(2).any(|w| w[0] > w[1]) {
        return Err(param("eps_grid", "must be sorted ascending"));
    }
    let intervals = eps_grid
        .iter()
        .map(|&e| context.width(e))
        .collect::<Result<Vec<_>>>()?;
    let monotone = intervals
        .windows(2)
        .all(|w| w[1].lower <= w[0].lower && w[1].upper <= w[0].upper);
    let diam = context.diameter();
    let zero_at_diameter = intervals
        .iter()
        .filter(|w| w.epsilon >= diam)
        .all(|w| w.lower == 0 && w.upper == 0);
    Ok(MonotoneReport {
        monotone,
        zero_at_diameter,
        intervals,
    })
}
