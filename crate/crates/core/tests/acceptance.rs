//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
//! failure. Run with `cargo test --test acceptance`.

use std::collections::{HashMap, HashSet};
use std::process::Command;
use std::time::{Duration, Instant};

use amenable_dim::l1::{self, SummableVector};
use amenable_dim::lattice::{self, FiniteSubset, FolnerSpec, LatticePoint, Rational};
use amenable_dim::ow_limit::{self, SpectralCount};
use amenable_dim::spectral::{self, MultiplierSet};
use amenable_dim::tiling::{self, QuasiTiling};
use amenable_dim::widths::{self, BallContext};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

type PointSet = HashSet<Vec<i64>>;

fn points(s: &FiniteSubset) -> PointSet {
    s.iter().map(|p| p.coords().to_vec()).collect()
}

fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Outer boundary straight from the definition: points outside Ω that
/// reach Ω by some element of F.
fn oracle_outer(omega: &PointSet, f: &PointSet) -> PointSet {
    let mut out = PointSet::new();
    for w in omega {
        for g in f {
            let p = sub(w, g);
            if !omega.contains(&p) {
                out.insert(p);
            }
        }
    }
    out
}

/// Inner boundary: points of Ω that leave Ω by some element of F.
fn oracle_inner(omega: &PointSet, f: &PointSet) -> PointSet {
    omega
        .iter()
        .filter(|w| f.iter().any(|g| !omega.contains(&add(w, g))))
        .cloned()
        .collect()
}

fn oracle_alpha(omega: &PointSet, f: &PointSet) -> Rational {
    let b = oracle_outer(omega, f).len() + oracle_inner(omega, f).len();
    Rational::new(b as i128, omega.len() as i128)
}

/// First-claim cores: every tile must keep at least (1 − ε) of its points,
/// and all tiles must lie inside Ω.
fn oracle_disjointness(t: &QuasiTiling, omega: &PointSet) -> Result<(), String> {
    let mut claimed = PointSet::new();
    for (i, tile) in t.tiles.iter().enumerate() {
        let pts = points(tile.set());
        ensure(pts.iter().all(|p| omega.contains(p)), || format!("tile {i} leaves omega"))?;
        let fresh = pts.iter().filter(|p| !claimed.contains(*p)).count();
        let keep = Rational::from_integer(fresh as i128);
        let need = (Rational::one() - t.epsilon) * Rational::from_integer(pts.len() as i128);
        ensure(keep >= need, || format!("tile {i} keeps {fresh} of {} points", pts.len()))?;
        claimed.extend(pts);
    }
    Ok(())
}

fn c1_boundary_identities() -> Outcome {
    let tiles: Vec<Vec<i64>> = vec![
        vec![0],
        vec![0, 1],
        vec![-1, 0],
        vec![-1, 0, 1],
        vec![0, 2],
        vec![0, 1, 2],
        vec![-2, 0, 3],
        vec![-1, 0, 1, 2],
    ];
    let mut checks = 0;
    for mask in 0u32..64 {
        let omega = FiniteSubset::from_ints((0..6).filter(|i| mask >> i & 1 == 1));
        let om = points(&omega);
        let mut alphas = Vec::new();
        for t in &tiles {
            let f = FiniteSubset::from_ints(t.iter().copied());
            let fp = points(&f);
            let d = lattice::decompose(&omega, &f).map_err(|e| e.to_string())?;
            let outer = oracle_outer(&om, &fp);
            let inner = oracle_inner(&om, &fp);
            ensure(points(&d.outer) == outer, || format!("outer boundary mask {mask} tile {t:?}"))?;
            ensure(points(&d.inner) == inner, || format!("inner boundary mask {mask} tile {t:?}"))?;
            ensure(d.full == d.outer.union(&d.inner), || "full = outer ∪ inner".into())?;
            ensure(d.outer.is_disjoint(&d.inner), || "outer ∩ inner = ∅".into())?;
            ensure(d.interior == omega.difference(&d.inner), || "interior = Ω \\ inner".into())?;
            ensure(d.closure == omega.union(&d.outer), || "closure = Ω ∪ outer".into())?;
            ensure(
                d.closure == d.interior.union(&d.full) && d.interior.is_disjoint(&d.full),
                || "closure = interior ⊔ full".into(),
            )?;
            let a = lattice::alpha_or_zero(&omega, &f).map_err(|e| e.to_string())?;
            if !om.is_empty() {
                ensure(a == oracle_alpha(&om, &fp), || format!("alpha mask {mask} tile {t:?}"))?;
            }
            alphas.push((fp, a));
            checks += 1;
        }
        for (f1, a1) in &alphas {
            for (f2, a2) in &alphas {
                if f1.is_subset(f2) {
                    ensure(a1 <= a2, || format!("alpha not monotone in F for mask {mask}"))?;
                }
            }
        }
    }
    Ok(format!("{checks} (Ω, F) pairs, 5 identities each"))
}

fn random_box(rng: &mut ChaCha8Rng, dim: usize, max_points: usize, containing_origin: bool) -> FiniteSubset {
    let sides: Vec<i64> = if dim == 1 {
        vec![rng.random_range(1..=max_points as i64)]
    } else {
        let a = rng.random_range(1..=max_points as i64);
        let b = rng.random_range(1..=(max_points as i64 / a).max(1));
        vec![a, b]
    };
    let lo: Vec<i64> = sides
        .iter()
        .map(|&s| if containing_origin { -rng.random_range(0..s) } else { rng.random_range(-50..50) })
        .collect();
    let hi: Vec<i64> = lo.iter().zip(&sides).map(|(l, s)| l + s - 1).collect();
    FiniteSubset::product_box(&lo, &hi)
}

fn c2_coverage() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let grid = [Rational::new(1, 8), Rational::new(1, 4), Rational::new(1, 2)];
    let mut tightest = f64::INFINITY;
    for trial in 0..500 {
        let dim = rng.random_range(1..=2);
        let omega = random_box(&mut rng, dim, 1000, false);
        let f = random_box(&mut rng, dim, 16, true);
        let eps = grid[trial % 3];
        let t = tiling::greedy_quasi_tiling(&omega, &f, eps).map_err(|e| e.to_string())?;
        let om = points(&omega);
        oracle_disjointness(&t, &om)?;
        let covered: PointSet = t.tiles.iter().flat_map(|x| points(x.set())).collect();
        let coverage = Rational::new(covered.len() as i128, om.len() as i128);
        let bound = eps * (Rational::one() - oracle_alpha(&om, &points(&f)));
        ensure(coverage >= bound, || {
            format!("trial {trial}: coverage {coverage} < bound {bound} (|Ω|={}, |F|={})", om.len(), f.len())
        })?;
        let rep = tiling::coverage_report(&t, &f).map_err(|e| e.to_string())?;
        ensure(rep.coverage == coverage && rep.bound == bound && rep.holds, || {
            format!("trial {trial}: library report disagrees with the oracle")
        })?;
        tightest = tightest.min(lattice::rational_to_f64(&(coverage - bound)));
    }
    Ok(format!("500 instances, smallest slack {tightest:.4}"))
}

fn c3_ow_cover() -> Outcome {
    let omega = FiniteSubset::interval(-2000, 2000);
    let om = points(&omega);
    let scales: Vec<FiniteSubset> = [1i64, 4, 16, 64].iter().map(|&i| FiniteSubset::interval(-i, i)).collect();
    let mut notes = Vec::new();
    for delta in [Rational::new(3, 10), Rational::new(2, 5)] {
        let cover = tiling::ow_cover_with_scales(&omega, &scales, delta).map_err(|e| e.to_string())?;
        oracle_disjointness(&cover.placed, &om)?;
        let covered: PointSet = cover.placed.tiles.iter().flat_map(|x| points(x.set())).collect();
        let residual = om.len() - covered.len();
        ensure(residual == cover.residual.len(), || "residual size mismatch".into())?;
        ensure(
            Rational::from_integer(residual as i128) <= delta * Rational::from_integer(om.len() as i128),
            || format!("δ = {delta}: residual {residual} exceeds δ|Ω|"),
        )?;
        let strict = tiling::ow_cover(&omega, &FolnerSpec::centered(1, 2000), delta);
        notes.push(format!(
            "δ={delta}: residual {residual}/{} ({} tiles), hypotheses on these scales {}, strict scales: {}",
            om.len(),
            cover.placed.len(),
            if cover.preconditions.satisfied { "met" } else { "unmet" },
            match strict {
                Ok(_) => "found".to_string(),
                Err(e) => format!("infeasible ({e})"),
            }
        ));
    }
    Ok(notes.join("; "))
}

fn c4_removal_union() -> Outcome {
    let tiles = [FiniteSubset::from_ints([0, 1]), FiniteSubset::from_ints([-1, 0, 1])];
    let mut removal = 0;
    for mask in 1u32..1 << 10 {
        let omega = FiniteSubset::from_ints((0..10).filter(|i| mask >> i & 1 == 1));
        // every Ω' ⊆ Ω, with ε = |Ω \ Ω'| / |Ω|, the largest admissible value
        let mut sub = mask;
        loop {
            if sub != mask {
                let inner = FiniteSubset::from_ints((0..10).filter(|i| sub >> i & 1 == 1));
                let rest = (mask & !sub).count_ones() as i128;
                let eps = Rational::new(rest, mask.count_ones() as i128);
                for f in &tiles {
                    let c = tiling::check_removal_bound(&omega, &inner, f, eps).map_err(|e| e.to_string())?;
                    ensure(c.holds, || format!("removal bound fails: Ω={mask:b} Ω'={sub:b}"))?;
                    removal += 1;
                }
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & mask;
        }
    }
    let mut union = 0;
    for mask in 1u32..1 << 12 {
        let omega = FiniteSubset::from_ints((0..12).filter(|i| mask >> i & 1 == 1));
        for f in &tiles {
            for eps in [Rational::new(1, 4), Rational::new(1, 2)] {
                let t = tiling::greedy_quasi_tiling(&omega, f, eps).map_err(|e| e.to_string())?;
                if t.is_empty() {
                    continue;
                }
                let c = tiling::check_union_bound(&t, f).map_err(|e| e.to_string())?;
                ensure(c.holds, || format!("union bound fails: Ω={mask:b}"))?;
                union += 1;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for trial in 0..500 {
        let dim = rng.random_range(1..=2);
        let omega = random_box(&mut rng, dim, 200, false);
        let f = random_box(&mut rng, dim, 9, true);
        let om: Vec<LatticePoint> = omega.iter().cloned().collect();
        let keep: Vec<LatticePoint> = om.iter().filter(|_| rng.random_bool(0.5)).cloned().collect();
        let inner = FiniteSubset::from_points(dim, keep).map_err(|e| e.to_string())?;
        if inner.len() == omega.len() {
            continue;
        }
        let eps = Rational::new((omega.len() - inner.len()) as i128, omega.len() as i128);
        let c = tiling::check_removal_bound(&omega, &inner, &f, eps).map_err(|e| e.to_string())?;
        let lhs = oracle_alpha(&points(&omega.difference(&inner)), &points(&f));
        ensure(c.holds && c.lhs == lhs, || format!("random removal trial {trial} fails"))?;
        let eps_t = [Rational::new(1, 8), Rational::new(1, 4), Rational::new(1, 2)][trial % 3];
        let t = tiling::greedy_quasi_tiling(&omega, &f, eps_t).map_err(|e| e.to_string())?;
        if !t.is_empty() {
            let c = tiling::check_union_bound(&t, &f).map_err(|e| e.to_string())?;
            ensure(c.holds, || format!("random union trial {trial} fails"))?;
        }
        removal += 1;
        union += 1;
    }
    Ok(format!("{removal} removal and {union} union checks"))
}

fn c5_trace() -> Outcome {
    let sizes = [5usize, 16, 33, 64, 100, 129, 200, 257, 300, 400];
    let mut worst = 0.0f64;
    for m in [0.25, 0.3, 0.5] {
        let e = MultiplierSet::symmetric_band(1, m).map_err(|e| e.to_string())?;
        for &n in &sizes {
            let omega = FiniteSubset::interval(0, n as i64 - 1);
            let rep = spectral::spectral_report(&e, &omega, &[]).map_err(|e| e.to_string())?;
            let eig_sum: f64 = rep.eigenvalues.iter().sum();
            for t in [rep.trace, eig_sum] {
                let err = (t / n as f64 - m).abs();
                worst = worst.max(err);
                ensure(err <= 1e-9, || format!("measure {m}, size {n}: error {err:e}"))?;
            }
        }
    }
    Ok(format!("30 boxes, max |trace/|Ω| − |E|| = {worst:.1e}"))
}

fn c6_concentration() -> Outcome {
    let e = MultiplierSet::symmetric_band(1, 0.5).map_err(|e| e.to_string())?;
    let spec = FolnerSpec::centered(1, 512);
    let table = spectral::concentration_scan(&e, &spec, &[32, 128, 512], 0.1, 0.9).map_err(|e| e.to_string())?;
    let r: Vec<f64> = table.rows.iter().map(|x| x.ratio).collect();
    let sizes: Vec<usize> = table.rows.iter().map(|x| x.size).collect();
    ensure(sizes == [65, 257, 1025], || format!("unexpected sizes {sizes:?}"))?;
    ensure(r[0] > r[1] && r[1] > r[2], || format!("ratios not strictly decreasing: {r:?}"))?;
    ensure(r[2] <= 0.5 * r[0], || format!("ratio(1025) = {} > 0.5 ratio(65) = {}", r[2], 0.5 * r[0]))?;
    let counts: Vec<usize> = table.rows.iter().map(|x| x.count).collect();
    Ok(format!("counts {counts:?}, ratios {:.4} > {:.4} > {:.4}", r[0], r[1], r[2]))
}

fn c7_sandwich() -> Outcome {
    let e = MultiplierSet::symmetric_band(1, 0.5).map_err(|e| e.to_string())?;
    let omega = FiniteSubset::interval(-512, 512);
    let s = spectral::wdim_sandwich(&e, &omega, 0.1).map_err(|e| e.to_string())?;
    let (lo, hi) = (s.lower_ratio(), s.upper_ratio());
    ensure((lo - 0.5).abs() <= 0.05 && (hi - 0.5).abs() <= 0.05, || format!("ratios {lo}, {hi}"))?;
    Ok(format!("n[0.1,1]/|Ω| = {lo:.4}, n[0.05,1]/|Ω| = {hi:.4}"))
}

fn c8_reduction() -> Outcome {
    let e = MultiplierSet::symmetric_band(1, 0.3).map_err(|e| e.to_string())?;
    let mut worst = 0.0f64;
    for n in [64i64, 128, 256] {
        let omega = FiniteSubset::interval(0, n - 1);
        let r = spectral::reduction_check(&e, 2, &omega).map_err(|e| e.to_string())?;
        let err = (r.dim_sub - 2.0 * r.dim_parent).abs();
        worst = worst.max(err);
        ensure(err <= 1e-9, || format!("box {n}: dim_sub {} vs 2·{}", r.dim_sub, r.dim_parent))?;
        ensure((r.dim_parent - 0.3).abs() <= 1e-9, || format!("dim_parent {}", r.dim_parent))?;
    }
    Ok(format!("dim_sub = 2·dim_parent = 0.6, max error {worst:.1e}"))
}

fn c9_independence() -> Outcome {
    let e = MultiplierSet::symmetric_band(1, 0.5).map_err(|e| e.to_string())?;
    let f = SpectralCount::new(e);
    let indices = [32usize, 64, 128, 256, 512];
    let rep = ow_limit::sequence_independence(
        &f,
        &FolnerSpec::centered(1, 512),
        &FolnerSpec::shifted(1, 512),
        &indices,
        &[0.2, 0.1, 0.05],
        0.05,
    )
    .map_err(|e| e.to_string())?;
    ensure(rep.difference <= 0.05, || format!("limits differ by {}", rep.difference))?;
    Ok(format!(
        "centered {:.4}, shifted {:.4}, difference {:.1e}",
        rep.first.extrapolated, rep.second.extrapolated, rep.difference
    ))
}

fn c10_l1_sandwich() -> Outcome {
    let y = SummableVector::geometric(20);
    let eps = 0.125;
    let cert = l1::sandwich_check(&y, eps, &FiniteSubset::interval(-50, 50), 100, 42).map_err(|e| e.to_string())?;
    for s in &cert.samples {
        ensure((0.75..=1.125).contains(&s.ratio), || format!("ratio {} outside [0.75, 1.125]", s.ratio))?;
    }
    // recompute a few ratios directly from the coefficients
    for s in cert.samples.iter().take(10) {
        let mut image: HashMap<i64, f64> = HashMap::new();
        for (g, a) in cert.translates.iter().zip(&s.coefficients) {
            for (p, v) in y.iter() {
                *image.entry(p.coords()[0] + g.coords()[0]).or_insert(0.0) += a * v;
            }
        }
        let num: f64 = image.values().map(|v| v.abs()).sum();
        let den: f64 = s.coefficients.iter().map(|v| v.abs()).sum();
        ensure((num / den - s.ratio).abs() <= 1e-12, || "ratio recomputation differs".into())?;
    }
    let target = 1.0 / (2.0 * cert.f.len() as f64);
    let mut bounds = Vec::new();
    for r in [10i64, 25, 50, 100, 200, 400] {
        let c = l1::sandwich_check(&y, eps, &FiniteSubset::interval(-r, r), 20, 42).map_err(|e| e.to_string())?;
        bounds.push(c.lower_bound);
    }
    ensure(bounds.windows(2).all(|w| w[1] >= w[0]), || format!("lower bounds not increasing: {bounds:?}"))?;
    ensure(bounds.iter().all(|&b| b <= target), || "lower bound above 1/(2|F|)".into())?;
    ensure(target - bounds[bounds.len() - 1] <= 0.01, || format!("lower bound {bounds:?} far from {target}"))?;
    Ok(format!(
        "{} samples in [{:.4}, {:.4}], |F| = {}, lower bound {:.4} → {:.4} (1/6 = {target:.4})",
        cert.samples.len(),
        cert.min_ratio,
        cert.max_ratio,
        cert.f.len(),
        bounds[0],
        bounds[bounds.len() - 1]
    ))
}

fn c11_counterexample() -> Outcome {
    for j in 1..=8u64 {
        let nj = l1::lcm_upto(j).map_err(|e| e.to_string())?;
        let oracle_nj = (1..=j as i64).fold(1i64, |acc, i| acc * i / num_integer::gcd(acc, i));
        ensure(nj == oracle_nj, || format!("lcm(1..{j})"))?;
        let y: SummableVector<Rational> = l1::y_n(nj).map_err(|e| e.to_string())?;
        for k in 1..=j {
            let r = l1::pi_k(&y, k).map_err(|e| e.to_string())?;
            ensure(r.iter().all(|v| v.is_zero()), || format!("π_{k}(y_{nj}) ≠ 0"))?;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for trial in 0..100 {
        let radius = rng.random_range(0..15i64);
        let j = rng.random_range(1..=8u64);
        let omega = FiniteSubset::interval(-radius, radius);
        let raw: Vec<(i64, f64)> = (-radius..=radius).map(|k| (k, rng.random_range(-1.0..1.0))).collect();
        let total: f64 = raw.iter().map(|(_, v)| v.abs()).sum();
        let y = SummableVector::from_pairs(1, raw.into_iter().map(|(k, v)| (k, 0.5 * v / total)))
            .map_err(|e| e.to_string())?;
        let lifted = l1::lift_to_yj(&y, &omega, j).map_err(|e| e.to_string())?;
        for p in omega.iter() {
            ensure((lifted.get(p) - y.get(p)).abs() <= 1e-12, || format!("trial {trial}: restriction differs"))?;
        }
        for i in 1..=j {
            let mut sums = vec![0.0; i as usize];
            for (p, v) in lifted.iter() {
                sums[p.coords()[0].rem_euclid(i as i64) as usize] += v;
            }
            ensure(sums.iter().all(|s| s.abs() <= 1e-12), || format!("trial {trial}: π_{i} of the lift ≠ 0"))?;
        }
    }
    for m in 0..=10i64 {
        let t = l1::intersection_triviality_check(m).map_err(|e| e.to_string())?;
        ensure(t.columns == (2 * m + 1) as usize && t.trivial(), || format!("M = {m}: {t:?}"))?;
    }
    Ok("π_k(y_{N_j}) = 0 for k ≤ j ≤ 8; 100 lifts; M ≤ 10 trivial".into())
}

fn c12_widths() -> Outcome {
    let grid: Vec<f64> = (1..=60).map(|i| i as f64 * 0.05).collect();
    let mut contexts = Vec::new();
    for n in [1usize, 2, 5, 8] {
        for r in [0.5, 1.0, 1.3] {
            contexts.push(BallContext::UnitBall { n, radius: r });
        }
    }
    let inf = f64::INFINITY;
    for n in [4usize, 16, 64] {
        for (q, p) in [(1.0, 2.0), (1.0, inf), (2.0, inf), (1.0, 4.0), (2.0, 3.0)] {
            contexts.push(BallContext::LqInLp { n, q, p });
        }
    }
    for c in &contexts {
        let rep = widths::check_monotone_eps(*c, &grid).map_err(|e| e.to_string())?;
        ensure(rep.monotone, || format!("{c:?}: not monotone"))?;
        for w in &rep.intervals {
            ensure(w.lower <= w.upper && w.upper <= c.dim(), || format!("{c:?} ε={}: invalid interval", w.epsilon))?;
            let zero = w.upper == 0;
            ensure(zero == (w.epsilon >= c.diameter()), || {
                format!("{c:?} ε={}: zero = {zero} but diameter = {}", w.epsilon, c.diameter())
            })?;
        }
    }
    let mut fibers = 0;
    let mut worst = 0.0f64;
    for (n, k, q, p) in [(16usize, 3usize, 1.0, 2.0), (32, 7, 1.0, inf), (24, 5, 2.0, inf), (40, 9, 1.5, 3.0)] {
        let a = widths::fiber_audit(n, k, q, p, 250, 42).map_err(|e| e.to_string())?;
        ensure(a.violations == 0 && a.max_distance <= a.threshold * (1.0 + 1e-9), || {
            format!("fiber audit n={n} k={k}: max {} vs {}", a.max_distance, a.threshold)
        })?;
        fibers += a.pairs;
        worst = worst.max(a.max_distance / a.threshold);
    }
    Ok(format!(
        "{} contexts × {} ε values; {fibers} fibers, max distance/threshold {worst:.4}",
        contexts.len(),
        grid.len()
    ))
}

const SUITE: &[&[&str]] = &[
    &["boundary", "--omega", "0..20", "--tile", "-2..1"],
    &["tile", "--omega", "0..30,0..30", "--tile", "0..2,0..1", "--eps", "1/4"],
    &["owcover", "--radius", "500", "--delta", "0.4", "--scales", "16,4,1"],
    &["widths", "--ball", "lq", "--n", "32", "--q", "1", "--p", "inf", "--audit-k", "5"],
    &["spectrum", "--measure", "0.5", "--size", "257", "--intervals", "0.1:0.9,0:0.05"],
    &["concentration", "--sizes", "65,129,257"],
    &["sandwich", "--size", "257"],
    &["owlimit", "--fn", "spectral", "--sizes", "33,65,129", "--compare", "shifted"],
    &["l1", "--y", "geometric", "--eps", "0.125"],
    &["counterexample"],
    &["reduction", "--measure", "0.3", "--index", "2"],
    &["symbolrank", "--symbol", "pair"],
];

fn run_suite(dir: &std::path::Path, tag: &str) -> Result<Vec<u8>, String> {
    let mut all = Vec::new();
    for (i, args) in SUITE.iter().enumerate() {
        let path = dir.join(format!("{tag}-{i}.jsonl"));
        let status = Command::new(env!("CARGO_BIN_EXE_amenable-dim"))
            .args(*args)
            .args(["--seed", "42", "--output"])
            .arg(&path)
            .status()
            .map_err(|e| e.to_string())?;
        ensure(status.success(), || format!("{args:?} exited with {status}"))?;
        all.extend(std::fs::read(&path).map_err(|e| e.to_string())?);
    }
    Ok(all)
}

fn c13_determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let a = run_suite(dir.path(), "a")?;
    let b = run_suite(dir.path(), "b")?;
    ensure(a == b, || "outputs differ".into())?;
    let lines = a.iter().filter(|&&c| c == b'\n').count();
    Ok(format!("{} subcommands, {lines} records, {} bytes identical", SUITE.len(), a.len()))
}

type Criterion = (u32, &'static str, Option<u64>, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 13] = [
        (1, "boundary identities", Some(1), c1_boundary_identities),
        (2, "quasi-tiling coverage", Some(10), c2_coverage),
        (3, "multi-scale cover", Some(30), c3_ow_cover),
        (4, "removal and union bounds", Some(10), c4_removal_union),
        (5, "spectral trace identity", Some(5), c5_trace),
        (6, "eigenvalue concentration", Some(120), c6_concentration),
        (7, "width sandwich", Some(60), c7_sandwich),
        (8, "sublattice reduction", Some(5), c8_reduction),
        (9, "Følner-sequence independence", Some(180), c9_independence),
        (10, "l1 sandwich", Some(5), c10_l1_sandwich),
        (11, "counterexample family", Some(5), c11_counterexample),
        (12, "width bounds", Some(10), c12_widths),
        (13, "determinism", None, c13_determinism),
    ];
    let mut failed = 0;
    for (n, name, budget, f) in criteria {
        let start = Instant::now();
        let result = f();
        let elapsed = start.elapsed();
        let over = budget.filter(|&b| elapsed > Duration::from_secs(b));
        let (status, detail) = match (&result, over) {
            (Ok(d), None) => ("PASS", d.clone()),
            (Ok(d), Some(b)) => ("FAIL", format!("{d}; exceeded the {b} s budget")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!("{status} [{n:>2}] {name} ({:.2} s): {detail}", elapsed.as_secs_f64());
    }
    println!("{} of 13 criteria passed", 13 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
