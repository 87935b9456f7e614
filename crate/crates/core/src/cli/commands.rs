use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::Value;

use super::record::ResultRecord;
use super::*;
use crate::error::{param, Result};
use crate::l1::{self, SummableVector};
use crate::lattice::{self, FiniteSubset, FolnerFamily, FolnerSpec, LatticePoint, Rational};
use crate::ow_limit::{self, BoundarySize, OwFunction, SpectralCount, Volume};
use crate::spectral::{self, FiniteTypeSymbol, MultiplierSet};
use crate::tiling;
use crate::widths::{self, BallContext};

/// Echo of the parameters that determine the output (seed included,
/// output path and format excluded).
pub fn input_echo(cli: &Cli) -> Value {
    fn obj<T: Serialize>(seed: u64, args: &T) -> Value {
        let mut v = serde_json::to_value(args).unwrap_or(Value::Null);
        if let Value::Object(m) = &mut v {
            m.insert("seed".into(), Value::from(seed));
        }
        v
    }
    let s = cli.seed;
    match &cli.command {
        Command::Boundary(a) => obj(s, a),
        Command::Tile(a) => obj(s, a),
        Command::Owcover(a) => obj(s, a),
        Command::Widths(a) => obj(s, a),
        Command::Spectrum(a) => obj(s, a),
        Command::Concentration(a) => obj(s, a),
        Command::Sandwich(a) => obj(s, a),
        Command::Owlimit(a) => obj(s, a),
        Command::L1(a) => obj(s, a),
        Command::Counterexample(a) => obj(s, a),
        Command::Reduction(a) => obj(s, a),
        Command::Symbolrank(a) => obj(s, a),
    }
}

pub fn dispatch(cli: &Cli) -> Result<Outcome> {
    let ctx = Ctx {
        name: cli.command.name(),
        input: input_echo(cli),
        seed: cli.seed,
    };
    match &cli.command {
        Command::Boundary(a) => boundary(&ctx, a),
        Command::Tile(a) => tile(&ctx, a),
        Command::Owcover(a) => owcover(&ctx, a),
        Command::Widths(a) => widths(&ctx, a),
        Command::Spectrum(a) => spectrum(&ctx, a),
        Command::Concentration(a) => concentration(&ctx, a),
        Command::Sandwich(a) => sandwich(&ctx, a),
        Command::Owlimit(a) => owlimit(&ctx, a),
        Command::L1(a) => l1_sandwich(&ctx, a),
        Command::Counterexample(a) => counterexample(&ctx, a),
        Command::Reduction(a) => reduction(&ctx, a),
        Command::Symbolrank(a) => symbolrank(&ctx, a),
    }
}

struct Ctx {
    name: &'static str,
    input: Value,
    seed: u64,
}

impl Ctx {
    fn record(&self) -> ResultRecord {
        ResultRecord::new(self.name, self.input.clone())
    }
}

fn ok(records: Vec<ResultRecord>) -> Result<Outcome> {
    Ok(Outcome {
        records,
        violation: None,
    })
}

fn checked(records: Vec<ResultRecord>, pass: bool, message: impl FnOnce() -> String) -> Result<Outcome> {
    Ok(Outcome {
        records,
        violation: (!pass).then(message),
    })
}

/// `lo..hi[,lo..hi]` for a box, otherwise `x[,y..];x[,y..]` point lists.
pub(crate) fn parse_set(name: &'static str, s: &str) -> Result<FiniteSubset> {
    let s = s.trim();
    if s.contains("..") {
        let mut lo = Vec::new();
        let mut hi = Vec::new();
        for part in s.split(',') {
            let (a, b) = part
                .split_once("..")
                .ok_or_else(|| param(name, format!("expected lo..hi, got `{part}`")))?;
            let a: i64 = a.trim().parse().map_err(|_| param(name, format!("not an integer: `{a}`")))?;
            let b: i64 = b.trim().parse().map_err(|_| param(name, format!("not an integer: `{b}`")))?;
            if a > b {
                return Err(param(name, format!("empty range {a}..{b}")));
            }
            lo.push(a);
            hi.push(b);
        }
        return Ok(FiniteSubset::product_box(&lo, &hi));
    }
    let mut points = Vec::new();
    for p in s.split(';').map(str::trim).filter(|p| !p.is_empty()) {
        let coords = p
            .split(',')
            .map(|c| c.trim().parse::<i64>().map_err(|_| param(name, format!("not an integer: `{c}`"))))
            .collect::<Result<Vec<_>>>()?;
        points.push(coords);
    }
    let dim = points.first().map(Vec::len).ok_or_else(|| param(name, "set is empty"))?;
    FiniteSubset::from_points(dim, points.into_iter().map(LatticePoint::new))
        .map_err(|e| param(name, e.to_string()))
}

fn parse_list<T: FromStr>(name: &'static str, s: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<T>().map_err(|_| param(name, format!("cannot parse `{t}`"))))
        .collect()
}

fn parse_rat(name: &'static str, s: &str) -> Result<Rational> {
    lattice::parse_rational(s).ok_or_else(|| param(name, format!("not a rational number: `{s}`")))
}

fn parse_exponent(name: &'static str, s: &str) -> Result<f64> {
    let v = match s.trim() {
        "inf" | "infinity" => f64::INFINITY,
        t => t.parse::<f64>().map_err(|_| param(name, format!("not a number: `{t}`")))?,
    };
    if !(v >= 1.0) {
        return Err(param(name, format!("exponent must be at least 1, got {v}")));
    }
    Ok(v)
}

fn parse_intervals(name: &'static str, s: &str) -> Result<Vec<(f64, f64)>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            let (a, b) = t
                .split_once(':')
                .ok_or_else(|| param(name, format!("expected a:b, got `{t}`")))?;
            let a: f64 = a.trim().parse().map_err(|_| param(name, format!("not a number: `{a}`")))?;
            let b: f64 = b.trim().parse().map_err(|_| param(name, format!("not a number: `{b}`")))?;
            if !(a <= b) {
                return Err(param(name, format!("empty interval {a}:{b}")));
            }
            Ok((a, b))
        })
        .collect()
}

fn multiplier(measure: f64, explicit: &Option<String>, dim: usize) -> Result<MultiplierSet> {
    match explicit {
        Some(s) => MultiplierSet::parse(s),
        None => {
            if !(0.0..=1.0).contains(&measure) {
                return Err(param("measure", format!("must lie in [0, 1], got {measure}")));
            }
            MultiplierSet::symmetric_band(dim, measure)
        }
    }
}

fn sized_box(dim: usize, size: usize) -> Result<FiniteSubset> {
    if size == 0 {
        return Err(param("size", "must be positive"));
    }
    if dim == 0 {
        return Err(param("dim", "must be at least 1"));
    }
    Ok(FiniteSubset::cube(dim, 0, size as i64 - 1))
}

fn ratio_text(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn boundary(ctx: &Ctx, a: &BoundaryArgs) -> Result<Outcome> {
    let omega = parse_set("omega", &a.omega)?;
    let f = parse_set("tile", &a.tile)?;
    let d = lattice::decompose(&omega, &f)?;
    let al = lattice::alpha(&omega, &f)?;
    let identities = d.full.len() == d.outer.len() + d.inner.len()
        && d.closure.len() == omega.len() + d.outer.len()
        && d.interior.len() == omega.len() - d.inner.len()
        && d.closure == d.interior.union(&d.full)
        && d.outer.is_disjoint(&omega);
    let r = ctx
        .record()
        .with("omega_size", omega.len())
        .with("tile_size", f.len())
        .with("outer", d.outer.len())
        .with("inner", d.inner.len())
        .with("full", d.full.len())
        .with("interior", d.interior.len())
        .with("closure", d.closure.len())
        .with("alpha", ratio_text(&al))
        .with("alpha_value", lattice::rational_to_f64(&al))
        .with("identities_hold", identities);
    checked(vec![r], identities, || "boundary identities failed".into())
}

fn tile(ctx: &Ctx, a: &TileArgs) -> Result<Outcome> {
    let eps = parse_rat("eps", &a.eps)?;
    if eps <= Rational::from_integer(0) || eps >= Rational::from_integer(1) {
        return Err(param("eps", format!("ε must be in (0,1), got {}", a.eps)));
    }
    let omega = parse_set("omega", &a.omega)?;
    let f = parse_set("tile", &a.tile)?;
    let t = tiling::greedy_quasi_tiling(&omega, &f, eps)?;
    t.audit()?;
    let rep = tiling::coverage_report(&t, &f)?;
    let maximal = tiling::is_maximal(&t, &f)?;
    let mut r = ctx
        .record()
        .with("omega_size", omega.len())
        .with("tile_size", f.len())
        .with("tiles", t.len())
        .with("covered", t.union().len())
        .with("coverage", ratio_text(&rep.coverage))
        .with("coverage_value", lattice::rational_to_f64(&rep.coverage))
        .with("alpha", ratio_text(&rep.alpha))
        .with("bound", ratio_text(&rep.bound))
        .with("bound_value", lattice::rational_to_f64(&rep.bound))
        .with("coverage_holds", rep.holds)
        .with("maximal", maximal);
    let mut pass = rep.holds;
    if !t.is_empty() {
        let u = tiling::check_union_bound(&t, &f)?;
        r.set("union_alpha", lattice::rational_to_f64(&u.lhs));
        r.set("union_bound", lattice::rational_to_f64(&u.rhs));
        r.set("union_holds", u.holds);
        pass &= u.holds;
    }
    checked(vec![r], pass, || "coverage or union bound failed".into())
}

fn owcover(ctx: &Ctx, a: &OwcoverArgs) -> Result<Outcome> {
    let delta = parse_rat("delta", &a.delta)?;
    if a.radius < 1 {
        return Err(param("radius", "must be positive"));
    }
    if a.dim == 0 {
        return Err(param("dim", "must be at least 1"));
    }
    let omega = FiniteSubset::cube(a.dim, -a.radius, a.radius);
    let cover = if a.strict {
        let spec = FolnerSpec::centered(a.dim, a.radius as usize);
        tiling::ow_cover(&omega, &spec, delta)?
    } else {
        let mut idx: Vec<usize> = parse_list("scales", &a.scales)?;
        idx.sort_unstable();
        idx.dedup();
        if idx.is_empty() || idx[0] == 0 {
            return Err(param("scales", "need positive box indices"));
        }
        let scales: Vec<FiniteSubset> = idx.iter().map(|&i| FiniteSubset::cube(a.dim, -(i as i64), i as i64)).collect();
        tiling::ow_cover_with_scales(&omega, &scales, delta)?
    };
    cover.placed.audit()?;
    let mut r = ctx
        .record()
        .with("omega_size", omega.len())
        .with("residual", cover.residual.len())
        .with("residual_fraction", cover.residual_fraction())
        .with("target", lattice::rational_to_f64(&delta) * omega.len() as f64)
        .with("target_met", cover.target_met)
        .with("tiles", cover.placed.len())
        .with("disjointness_audit", true)
        .with("depth", cover.preconditions.depth)
        .with("omega_alpha", lattice::rational_to_f64(&cover.preconditions.omega_alpha))
        .with("preconditions_satisfied", cover.preconditions.satisfied);
    for (s, n) in cover.scales.iter().zip(&cover.tiles_per_scale) {
        r.set(&format!("tiles_scale_{}", s.len()), *n);
    }
    let pass = cover.target_met;
    checked(vec![r], pass, || "residual exceeds δ|Ω|".into())
}

fn widths(ctx: &Ctx, a: &WidthsArgs) -> Result<Outcome> {
    let context = match a.ball {
        BallKind::Unit => BallContext::UnitBall {
            n: a.n,
            radius: a.radius,
        },
        BallKind::Lq => BallContext::LqInLp {
            n: a.n,
            q: parse_exponent("q", &a.q)?,
            p: parse_exponent("p", &a.p)?,
        },
    };
    let mut eps: Vec<f64> = parse_list("eps", &a.eps)?;
    if eps.is_empty() {
        return Err(param("eps", "need at least one value"));
    }
    eps.sort_by(f64::total_cmp);
    let report = widths::check_monotone_eps(context, &eps)?;
    let mut records: Vec<ResultRecord> = report
        .intervals
        .iter()
        .map(|w| {
            ctx.record()
                .with("eps", w.epsilon)
                .with("lower", w.lower)
                .with("upper", w.upper)
                .with("valid", w.lower <= w.upper)
        })
        .collect();
    let valid = report.intervals.iter().all(|w| w.lower <= w.upper);
    let mut summary = ctx
        .record()
        .with("diameter", context.diameter())
        .with("monotone", report.monotone)
        .with("zero_at_diameter", report.zero_at_diameter);
    let mut pass = valid && report.monotone && report.zero_at_diameter;
    if let Some(k) = a.audit_k {
        let BallContext::LqInLp { n, q, p } = context else {
            return Err(param("audit-k", "the fiber audit applies to --ball lq"));
        };
        let audit = widths::fiber_audit(n, k, q, p, a.audit_pairs, ctx.seed)?;
        summary.set("audit_pairs", audit.pairs);
        summary.set("audit_max_distance", audit.max_distance);
        summary.set("audit_threshold", audit.threshold);
        summary.set("audit_violations", audit.violations);
        pass &= audit.violations == 0;
    }
    records.push(summary);
    checked(records, pass, || "width bounds failed validity, monotonicity or the fiber audit".into())
}

fn spectrum(ctx: &Ctx, a: &SpectrumArgs) -> Result<Outcome> {
    let e = multiplier(a.measure, &a.multiplier, a.dim)?;
    let omega = sized_box(e.dim(), a.size)?;
    let intervals = parse_intervals("intervals", &a.intervals)?;
    let rep = spectral::spectral_report(&e, &omega, &intervals)?;
    let mut r = ctx
        .record()
        .with("omega_size", rep.omega_size)
        .with("measure", rep.measure)
        .with("trace", rep.trace)
        .with("normalized_trace", rep.normalized_trace())
        .with("trace_error", (rep.normalized_trace() - rep.measure).abs())
        .with("min_eigenvalue", rep.eigenvalues.first().copied().unwrap_or(0.0))
        .with("max_eigenvalue", rep.eigenvalues.last().copied().unwrap_or(0.0));
    for ((lo, hi), c) in &rep.counts {
        r.set(&format!("count[{lo},{hi}]"), *c);
    }
    ok(vec![r])
}

fn concentration(ctx: &Ctx, a: &ConcentrationArgs) -> Result<Outcome> {
    let e = multiplier(a.measure, &None, 1)?;
    let sizes: Vec<usize> = parse_list("sizes", &a.sizes)?;
    let max = sizes.iter().copied().max().ok_or_else(|| param("sizes", "need at least one size"))?;
    let spec = FolnerSpec::centered(1, max.max(1));
    let indices = sizes
        .iter()
        .map(|&s| {
            spec.index_for_size(s)
                .ok_or_else(|| param("sizes", format!("{s} is not the size of an interval [-i, i], i >= 1")))
        })
        .collect::<Result<Vec<_>>>()?;
    if !(a.a < a.b) {
        return Err(param("a", format!("need a < b, got [{}, {}]", a.a, a.b)));
    }
    let table = spectral::concentration_scan(&e, &spec, &indices, a.a, a.b)?;
    let mut records: Vec<ResultRecord> = table
        .rows
        .iter()
        .map(|row| {
            ctx.record()
                .with("size", row.size)
                .with("count", row.count)
                .with("ratio", row.ratio)
        })
        .collect();
    records.push(
        ctx.record()
            .with("strictly_decreasing", table.strictly_decreasing())
            .with("trend_holds", table.trend_holds()),
    );
    ok(records)
}

fn sandwich(ctx: &Ctx, a: &SandwichArgs) -> Result<Outcome> {
    let e = multiplier(a.measure, &a.multiplier, a.dim)?;
    let omega = sized_box(e.dim(), a.size)?;
    if !(a.eps > 0.0 && a.eps < 1.0) {
        return Err(param("eps", format!("must lie in (0, 1), got {}", a.eps)));
    }
    let s = spectral::wdim_sandwich(&e, &omega, a.eps)?;
    let r = ctx
        .record()
        .with("omega_size", s.size)
        .with("measure", e.measure())
        .with("lower", s.lower)
        .with("upper", s.upper)
        .with("lower_ratio", s.lower_ratio())
        .with("upper_ratio", s.upper_ratio());
    ok(vec![r])
}

fn family_spec(family: Family, dim: usize, max_index: usize) -> Result<FolnerSpec> {
    let f = match family {
        Family::Centered => FolnerFamily::CenteredBoxes,
        Family::Shifted => FolnerFamily::ShiftedBoxes,
    };
    FolnerSpec::new(f, dim, max_index)
}

fn owlimit(ctx: &Ctx, a: &OwlimitArgs) -> Result<Outcome> {
    let function: Box<dyn OwFunction> = match a.function {
        SetFunction::Volume => Box::new(Volume),
        SetFunction::Boundary => Box::new(BoundarySize {
            f: parse_set("tile", &a.tile)?,
        }),
        SetFunction::Spectral => Box::new(SpectralCount::new(multiplier(a.measure, &None, a.dim)?)),
    };
    let sizes: Vec<usize> = parse_list("sizes", &a.sizes)?;
    let eps: Vec<f64> = parse_list("eps", &a.eps)?;
    if !(a.tolerance > 0.0) {
        return Err(param("tolerance", "must be positive"));
    }
    let max = sizes.iter().copied().max().ok_or_else(|| param("sizes", "need at least one size"))?;
    if a.dim == 0 {
        return Err(param("dim", "must be at least 1"));
    }
    let max_index = (max as f64).powf(1.0 / a.dim as f64) as usize + 1;
    let spec = family_spec(a.family, a.dim, max_index)?;
    let indices = sizes
        .iter()
        .map(|&s| {
            spec.index_for_size(s)
                .ok_or_else(|| param("sizes", format!("{s} is not the size of a box (2i+1)^d, i >= 1")))
        })
        .collect::<Result<Vec<_>>>()?;
    let describe = |r: &mut ResultRecord, est: &ow_limit::LimitEstimate, suffix: &str| {
        r.set(&format!("value{suffix}"), est.extrapolated);
        r.set(&format!("oscillation{suffix}"), est.oscillation);
        r.set(&format!("converged{suffix}"), est.converged());
    };
    let mut r = ctx.record().with("function", function.name());
    let pass = match a.compare {
        None => {
            let est = ow_limit::estimate_limit_with_tolerance(function.as_ref(), &spec, &indices, &eps, a.tolerance)?;
            describe(&mut r, &est, "");
            r.set("curves_consistent", est.curves_consistent);
            true
        }
        Some(other) => {
            let spec2 = family_spec(other, a.dim, max_index)?;
            let rep = ow_limit::sequence_independence(function.as_ref(), &spec, &spec2, &indices, &eps, a.tolerance)?;
            describe(&mut r, &rep.first, "");
            describe(&mut r, &rep.second, "_compare");
            r.set("difference", rep.difference);
            r.set("agree", rep.agree());
            rep.agree()
        }
    };
    checked(vec![r], pass, || "limits along the two sequences disagree".into())
}

fn parse_vector(s: &str, terms: usize) -> Result<SummableVector<f64>> {
    if s.trim() == "geometric" {
        if terms == 0 {
            return Err(param("terms", "must be positive"));
        }
        return Ok(SummableVector::geometric(terms));
    }
    let pairs = s
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            let (k, v) = t
                .split_once(':')
                .ok_or_else(|| param("y", format!("expected k:v, got `{t}`")))?;
            let k: i64 = k.trim().parse().map_err(|_| param("y", format!("not an integer: `{k}`")))?;
            let v: f64 = v.trim().parse().map_err(|_| param("y", format!("not a number: `{v}`")))?;
            Ok((k, v))
        })
        .collect::<Result<Vec<_>>>()?;
    let y = SummableVector::from_pairs(1, pairs)?;
    if !y.is_normalized() {
        return Err(param("y", format!("must have unit l1 norm, got {}", y.l1_norm())));
    }
    Ok(y)
}

fn l1_sandwich(ctx: &Ctx, a: &L1Args) -> Result<Outcome> {
    let y = parse_vector(&a.y, a.terms)?;
    if !(a.eps > 0.0 && a.eps < 0.5) {
        return Err(param("eps", format!("must lie in (0, 1/2), got {}", a.eps)));
    }
    if a.radius < 0 {
        return Err(param("radius", "must be nonnegative"));
    }
    let omega = FiniteSubset::interval(-a.radius, a.radius);
    let cert = l1::sandwich_check(&y, a.eps, &omega, a.samples, ctx.seed)?;
    let r = ctx
        .record()
        .with("support_size", cert.f.len())
        .with("translates", cert.translates.len())
        .with("samples", cert.samples.len())
        .with("min_ratio", cert.min_ratio)
        .with("max_ratio", cert.max_ratio)
        .with("lower_limit", 1.0 - 2.0 * a.eps)
        .with("upper_limit", 1.0 + a.eps)
        .with("alpha", cert.alpha)
        .with("lower_bound", cert.lower_bound);
    ok(vec![r])
}

const LIFT_TOL: f64 = 1e-12;

fn counterexample(ctx: &Ctx, a: &CounterexampleArgs) -> Result<Outcome> {
    if a.j == 0 {
        return Err(param("j", "must be positive"));
    }
    if a.m < 0 {
        return Err(param("m", "must be nonnegative"));
    }
    if a.lift_radius < 0 {
        return Err(param("lift-radius", "must be nonnegative"));
    }
    let mut records = Vec::new();
    let mut pass = true;
    for j in 1..=a.j {
        let nj = l1::lcm_upto(j)?;
        let y: SummableVector<Rational> = l1::y_n(nj)?;
        let mut zero = true;
        for k in 1..=j {
            zero &= l1::pi_k(&y, k)?.iter().all(|v| *v == Rational::from_integer(0));
        }
        pass &= zero;
        records.push(ctx.record().with("part", "kernel").with("j", j as i64).with("n_j", nj).with("annihilated", zero));
    }

    let omega = FiniteSubset::interval(-a.lift_radius, a.lift_radius);
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let mut worst_restriction = 0.0f64;
    let mut worst_residue = 0.0f64;
    for _ in 0..a.lift_samples {
        let raw: Vec<(i64, f64)> = omega
            .iter()
            .map(|p| (p.coords()[0], rng.random_range(-1.0..1.0)))
            .collect();
        let total: f64 = raw.iter().map(|(_, v)| v.abs()).sum();
        let target = rng.random_range(0.0..0.5);
        let y = SummableVector::from_pairs(1, raw.into_iter().map(|(k, v)| (k, v * target / total)))?;
        let lifted = l1::lift_to_yj(&y, &omega, a.j)?;
        for p in omega.iter() {
            worst_restriction = worst_restriction.max((lifted.get(p) - y.get(p)).abs());
        }
        for i in 1..=a.j {
            for v in l1::pi_k(&lifted, i)? {
                worst_residue = worst_residue.max(v.abs());
            }
        }
    }
    let lift_ok = worst_restriction <= LIFT_TOL && worst_residue <= LIFT_TOL;
    pass &= lift_ok;
    records.push(
        ctx.record()
            .with("part", "lift")
            .with("samples", a.lift_samples)
            .with("max_restriction_error", worst_restriction)
            .with("max_residue", worst_residue)
            .with("holds", lift_ok),
    );

    for m in 0..=a.m {
        let t = l1::intersection_triviality_check(m)?;
        pass &= t.trivial();
        records.push(
            ctx.record()
                .with("part", "triviality")
                .with("m", m)
                .with("modulus", t.modulus)
                .with("columns", t.columns)
                .with("rank", t.rank)
                .with("trivial", t.trivial()),
        );
    }
    checked(records, pass, || "counterexample identities failed".into())
}

fn reduction(ctx: &Ctx, a: &ReductionArgs) -> Result<Outcome> {
    let e = multiplier(a.measure, &a.multiplier, a.dim)?;
    if a.index == 0 {
        return Err(param("index", "must be positive"));
    }
    if !a.size.is_multiple_of(a.index) {
        return Err(param("size", format!("must be a multiple of the index {}", a.index)));
    }
    let omega = sized_box(e.dim(), a.size)?;
    let red = spectral::reduction_check(&e, a.index, &omega)?;
    let r = ctx
        .record()
        .with("cells", red.cells)
        .with("multiplicity", red.multiplicity)
        .with("dim_parent", red.dim_parent)
        .with("dim_sub", red.dim_sub)
        .with("error", (red.dim_sub - red.multiplicity as f64 * red.dim_parent).abs())
        .with("holds", red.holds());
    let pass = red.holds();
    checked(vec![r], pass, || "sublattice dimension is not the index times the dimension".into())
}

fn symbolrank(ctx: &Ctx, a: &SymbolrankArgs) -> Result<Outcome> {
    let e = multiplier(a.measure, &a.multiplier, a.dim)?;
    let s = FiniteTypeSymbol::by_name(&a.symbol, e.dim())?;
    let rep = spectral::symbol_rank_dimension(&s, &e, a.grid)?;
    let r = ctx
        .record()
        .with("grid_size", rep.grid_size)
        .with("points_in_e", rep.points_in_e)
        .with("min_rank", rep.min_rank)
        .with("max_rank", rep.max_rank)
        .with("dim_in", rep.dim_in)
        .with("dim_out", rep.dim_out)
        .with("image_dim", rep.image_dim)
        .with("injectivity_impossible", rep.injectivity_impossible);
    ok(vec![r])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_syntax() {
        assert_eq!(parse_set("omega", "0..3").unwrap(), FiniteSubset::interval(0, 3));
        assert_eq!(
            parse_set("omega", "-1..1,0..2").unwrap(),
            FiniteSubset::product_box(&[-1, 0], &[1, 2])
        );
        assert_eq!(parse_set("tile", "0;2;5").unwrap(), FiniteSubset::from_ints([0, 2, 5]));
        assert_eq!(parse_set("tile", "0,0;1,0").unwrap().dim(), 2);
        assert!(matches!(parse_set("tile", "3..1"), Err(Error::Parameter { name: "tile", .. })));
        assert!(parse_set("tile", "0,0;1").is_err());
    }

    #[test]
    fn exponents() {
        assert_eq!(parse_exponent("p", "inf").unwrap(), f64::INFINITY);
        assert!(parse_exponent("q", "0.5").is_err());
    }

    #[test]
    fn explicit_vector_must_be_normalized() {
        assert!(parse_vector("0:0.5,1:0.5", 0).unwrap().is_normalized());
        assert!(matches!(parse_vector("0:0.5", 0), Err(Error::Parameter { name: "y", .. })));
    }
}
