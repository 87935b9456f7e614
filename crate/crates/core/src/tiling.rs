//! ε-disjoint quasi-tilings of finite sets by translates, the multi-scale
//! covering built from them, and exact checks of the boundary inequalities
//! that drive the covering argument.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{param, Error, Result};
use crate::lattice::{alpha, alpha_inner, alpha_or_zero, interior, FiniteSubset, FolnerSpec, LatticePoint, Rational};

/// Largest `N` tried by [`covering_depth`].
pub const MAX_COVERING_DEPTH: usize = 64;

/// A translate `γ + F` placed inside `Ω`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlacedTile {
    pub translate: LatticePoint,
    pub tile: FiniteSubset,
    placed: FiniteSubset,
}

impl PlacedTile {
    pub fn new(translate: LatticePoint, tile: FiniteSubset) -> Self {
        let placed = tile.translate(&translate);
        PlacedTile {
            translate,
            tile,
            placed,
        }
    }

    /// The translated set `γ + F`.
    pub fn set(&self) -> &FiniteSubset {
        &self.placed
    }
}

/// Translates of tiles inside `omega` together with disjoint cores that
/// certify ε-disjointness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasiTiling {
    pub omega: FiniteSubset,
    pub tiles: Vec<PlacedTile>,
    pub epsilon: Rational,
    pub cores: Vec<FiniteSubset>,
}

impl QuasiTiling {
    /// Assigns cores by placement order (each point goes to the earliest tile
    /// containing it) and audits the result.
    pub fn from_tiles(omega: FiniteSubset, tiles: Vec<PlacedTile>, epsilon: Rational) -> Result<Self> {
        let mut claimed = FiniteSubset::empty(omega.dim());
        let mut cores = Vec::with_capacity(tiles.len());
        for t in &tiles {
            let core = t.set().difference(&claimed);
            claimed.absorb(t.set());
            cores.push(core);
        }
        let tiling = QuasiTiling {
            omega,
            tiles,
            epsilon,
            cores,
        };
        tiling.audit()?;
        Ok(tiling)
    }

    pub fn len(&self) -> usize {
        self.tiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tiles.is_empty()
    }

    pub fn union(&self) -> FiniteSubset {
        let mut u = FiniteSubset::empty(self.omega.dim());
        for t in &self.tiles {
            u.absorb(t.set());
        }
        u
    }

    /// `|∪ tiles| / |Ω|`.
    pub fn coverage(&self) -> Result<Rational> {
        if self.omega.is_empty() {
            return Err(Error::EmptySet);
        }
        Ok(Rational::new(self.union().len() as i128, self.omega.len() as i128))
    }

    /// Checks every structural invariant of an ε-quasi-tiling.
    pub fn audit(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidTiling(msg));
        if self.epsilon < Rational::zero() || self.epsilon >= Rational::one() {
            return bad(format!("epsilon {} outside [0, 1)", self.epsilon));
        }
        if self.cores.len() != self.tiles.len() {
            return bad(format!("{} cores for {} tiles", self.cores.len(), self.tiles.len()));
        }
        let mut seen = FiniteSubset::empty(self.omega.dim());
        let mut core_union = FiniteSubset::empty(self.omega.dim());
        for (j, (t, core)) in self.tiles.iter().zip(&self.cores).enumerate() {
            if !t.set().is_subset(&self.omega) {
                return bad(format!("tile {j} at {:?} leaves omega", t.translate));
            }
            if !core.is_subset(t.set()) {
                return bad(format!("core {j} is not inside its tile"));
            }
            if !core.is_disjoint(&core_union) {
                return bad(format!("core {j} meets an earlier core"));
            }
            // |core| >= (1 - ε)|tile|
            let lhs = Rational::from_integer(core.len() as i128);
            let rhs = (Rational::one() - self.epsilon) * Rational::from_integer(t.tile.len() as i128);
            if lhs < rhs {
                return bad(format!(
                    "core {j} keeps {} of {} points, below (1 - {})",
                    core.len(),
                    t.tile.len(),
                    self.epsilon
                ));
            }
            core_union.absorb(core);
            seen.absorb(t.set());
        }
        if core_union != seen {
            return bad("cores do not cover the union of tiles".into());
        }
        Ok(())
    }
}

fn check_epsilon_open(epsilon: &Rational, name: &'static str) -> Result<()> {
    if *epsilon <= Rational::zero() || *epsilon >= Rational::one() {
        return Err(param(name, format!("{epsilon} must lie in (0, 1)")));
    }
    Ok(())
}

/// Greedy maximal ε-quasi-tiling of `omega` by translates `γ + f`.
///
/// Candidates `γ ∈ int_F Ω` are scanned lexicographically; a translate is
/// admitted when it meets the union of the previously admitted ones in at
/// most `ε|F|` points.
pub fn greedy_quasi_tiling(omega: &FiniteSubset, f: &FiniteSubset, epsilon: Rational) -> Result<QuasiTiling> {
    check_epsilon_open(&epsilon, "epsilon")?;
    let candidates = interior(omega, f)?;
    let budget = epsilon * Rational::from_integer(f.len() as i128);

    let mut covered = FiniteSubset::empty(omega.dim());
    let mut tiles = Vec::new();
    let mut cores = Vec::new();
    for gamma in candidates.iter() {
        let placed = PlacedTile::new(gamma.clone(), f.clone());
        let overlap = placed.set().overlap(&covered);
        if Rational::from_integer(overlap as i128) <= budget {
            cores.push(placed.set().difference(&covered));
            covered.absorb(placed.set());
            tiles.push(placed);
        }
    }
    Ok(QuasiTiling {
        omega: omega.clone(),
        tiles,
        epsilon,
        cores,
    })
}

/// True when no candidate `γ ∈ int_F Ω` can be appended to `tiling`.
pub fn is_maximal(tiling: &QuasiTiling, f: &FiniteSubset) -> Result<bool> {
    let union = tiling.union();
    let budget = tiling.epsilon * Rational::from_integer(f.len() as i128);
    let used: std::collections::BTreeSet<&LatticePoint> = tiling.tiles.iter().map(|t| &t.translate).collect();
    for gamma in interior(&tiling.omega, f)?.iter() {
        if used.contains(gamma) {
            continue;
        }
        let overlap = f.translate(gamma).overlap(&union);
        if Rational::from_integer(overlap as i128) <= budget {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Coverage of a greedy tiling against the lower bound `ε(1 − α(Ω;F))`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoverageReport {
    pub coverage: Rational,
    pub alpha: Rational,
    pub bound: Rational,
    /// Same bound with the inner-boundary ratio `α^-`, reported for diagnostics.
    pub alpha_inner: Rational,
    pub bound_inner: Rational,
    pub holds: bool,
}

pub fn coverage_report(tiling: &QuasiTiling, f: &FiniteSubset) -> Result<CoverageReport> {
    let coverage = tiling.coverage()?;
    let a = alpha(&tiling.omega, f)?;
    let a_in = alpha_inner(&tiling.omega, f)?;
    let bound = tiling.epsilon * (Rational::one() - a);
    let bound_inner = tiling.epsilon * (Rational::one() - a_in);
    Ok(CoverageReport {
        holds: coverage >= bound,
        coverage,
        alpha: a,
        bound,
        alpha_inner: a_in,
        bound_inner,
    })
}

fn to_big(r: &Rational) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

fn big_pow(base: &BigRational, exp: usize) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..exp {
        acc *= base;
    }
    acc
}

fn big_to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

fn check_delta(delta: &Rational) -> Result<()> {
    let half = Rational::new(1, 2);
    if *delta <= Rational::zero() || *delta >= half {
        return Err(param("delta", format!("{delta} must lie in (0, 1/2)")));
    }
    Ok(())
}

/// Smallest `N ≥ 1` with `(1 − δ(1 − (1+N)δ^{N+1}))^N < δ`, evaluated exactly.
pub fn covering_depth(delta: &Rational) -> Result<usize> {
    check_delta(delta)?;
    let d = to_big(delta);
    let one = BigRational::one();
    for n in 1..=MAX_COVERING_DEPTH {
        let inner = &one - &d * (&one - BigRational::from_integer(BigInt::from(n + 1)) * big_pow(&d, n + 1));
        if big_pow(&inner, n) < d {
            return Ok(n);
        }
    }
    Err(Error::CoveringDepthExceeded {
        delta: crate::lattice::rational_to_f64(delta),
        cap: MAX_COVERING_DEPTH,
    })
}

/// How far a scale list is from the hypotheses under which the multi-scale
/// covering is guaranteed to leave at most `δ|Ω|` uncovered.
#[derive(Debug, Clone, PartialEq)]
pub struct CoverPreconditions {
    pub depth: usize,
    /// `δ^{2N}`, required of every consecutive pair of scales.
    pub consecutive_bound: BigRational,
    /// `2δ^{2N}`, required of `α(Ω; largest scale)`.
    pub omega_bound: BigRational,
    pub consecutive_alphas: Vec<Rational>,
    pub omega_alpha: Rational,
    pub largest_inside_omega: bool,
    pub satisfied: bool,
}

pub fn cover_preconditions(omega: &FiniteSubset, scales: &[FiniteSubset], delta: &Rational) -> Result<CoverPreconditions> {
    let depth = covering_depth(delta)?;
    let consecutive_bound = big_pow(&to_big(delta), 2 * depth);
    let omega_bound = &consecutive_bound * BigRational::from_integer(BigInt::from(2));
    let largest = scales.last().ok_or_else(|| param("scales", "need at least one scale"))?;
    let consecutive_alphas = scales
        .windows(2)
        .map(|w| alpha(&w[1], &w[0]))
        .collect::<Result<Vec<_>>>()?;
    let omega_alpha = alpha(omega, largest)?;
    let largest_inside_omega = !interior(omega, largest)?.is_empty();
    let satisfied = scales.len() == depth
        && largest_inside_omega
        && to_big(&omega_alpha) <= omega_bound
        && consecutive_alphas.iter().all(|a| to_big(a) <= consecutive_bound);
    Ok(CoverPreconditions {
        depth,
        consecutive_bound,
        omega_bound,
        consecutive_alphas,
        omega_alpha,
        largest_inside_omega,
        satisfied,
    })
}

/// A δ-disjoint cover of `Ω` mixing tiles of several scales.
#[derive(Debug, Clone)]
pub struct OwCover {
    pub delta: Rational,
    /// Scales from smallest to largest.
    pub scales: Vec<FiniteSubset>,
    pub placed: QuasiTiling,
    /// Number of placed translates of each scale, aligned with `scales`.
    pub tiles_per_scale: Vec<usize>,
    pub residual: FiniteSubset,
    pub target_met: bool,
    pub preconditions: CoverPreconditions,
}

impl OwCover {
    pub fn residual_fraction(&self) -> f64 {
        self.residual.len() as f64 / self.placed.omega.len() as f64
    }
}

/// Runs the multi-scale covering on explicit scales (ascending), tiling the
/// residual with the largest scale first and moving down until at most
/// `δ|Ω|` points remain. The covering hypotheses are recorded but not
/// enforced; see [`ow_cover`] for the enforcing entry point.
pub fn ow_cover_with_scales(omega: &FiniteSubset, scales: &[FiniteSubset], delta: Rational) -> Result<OwCover> {
    check_delta(&delta)?;
    if omega.is_empty() {
        return Err(Error::EmptySet);
    }
    let preconditions = cover_preconditions(omega, scales, &delta)?;
    let target = delta * Rational::from_integer(omega.len() as i128);
    let within_target = |r: &FiniteSubset| Rational::from_integer(r.len() as i128) <= target;

    let mut residual = omega.clone();
    let mut tiles = Vec::new();
    let mut tiles_per_scale = vec![0; scales.len()];
    for (s, f) in scales.iter().enumerate().rev() {
        if within_target(&residual) {
            break;
        }
        let round = greedy_quasi_tiling(&residual, f, delta)?;
        residual = residual.difference(&round.union());
        tiles_per_scale[s] = round.len();
        tiles.extend(round.tiles);
    }
    let placed = QuasiTiling::from_tiles(omega.clone(), tiles, delta)?;
    Ok(OwCover {
        delta,
        scales: scales.to_vec(),
        placed,
        tiles_per_scale,
        target_met: within_target(&residual),
        residual,
        preconditions,
    })
}

/// Picks `depth` indices `n_1 < … < n_N` from the family with
/// `α(F_{n_{i+1}}; F_{n_i}) ≤ bound`, each as small as possible.
pub fn refine_subsequence(spec: &FolnerSpec, depth: usize, bound: &BigRational) -> Result<Vec<usize>> {
    let not_found = || Error::SubsequenceNotFound {
        bound: big_to_f64(bound),
        max_index: spec.max_index,
    };
    let mut chosen = vec![1usize];
    let mut prev = spec.set(1)?;
    while chosen.len() < depth {
        let start = *chosen.last().unwrap() + 1;
        let mut found = None;
        // |∂⁺_F Ω| ≥ |F| - 1 in a torsion-free group, so α(Ω; F) ≥ (|F| - 1)/|Ω|
        // rules out every candidate that is too small without building it.
        let min_size = BigRational::from_integer(BigInt::from(prev.len() as u64 - 1)) / bound;
        for idx in start..=spec.max_index {
            if BigRational::from_integer(BigInt::from(spec.size_at(idx) as u64)) < min_size {
                continue;
            }
            let cand = spec.set(idx)?;
            if to_big(&alpha(&cand, &prev)?) <= *bound {
                found = Some((idx, cand));
                break;
            }
        }
        let (idx, cand) = found.ok_or_else(not_found)?;
        chosen.push(idx);
        prev = cand;
    }
    Ok(chosen)
}

/// Multi-scale covering with the covering hypotheses enforced: the scales
/// are a refined subsequence of `spec` and `α(Ω; F_{n_N}) ≤ 2δ^{2N}`.
pub fn ow_cover(omega: &FiniteSubset, spec: &FolnerSpec, delta: Rational) -> Result<OwCover> {
    let depth = covering_depth(&delta)?;
    let bound = big_pow(&to_big(&delta), 2 * depth);
    let indices = refine_subsequence(spec, depth, &bound)?;
    let scales = indices.iter().map(|&i| spec.set(i)).collect::<Result<Vec<_>>>()?;
    let pre = cover_preconditions(omega, &scales, &delta)?;
    if !pre.satisfied {
        return Err(Error::OmegaTooSmall {
            required: big_to_f64(&pre.omega_bound),
            actual: crate::lattice::rational_to_f64(&pre.omega_alpha),
        });
    }
    let cover = ow_cover_with_scales(omega, &scales, delta)?;
    if !cover.target_met {
        return Err(Error::Invariant(format!(
            "residual {} exceeds delta |omega| under verified hypotheses",
            cover.residual.len()
        )));
    }
    Ok(cover)
}

/// Both sides of a checked inequality `lhs ≤ rhs`.
#[derive(Debug, Clone, PartialEq)]
pub struct InequalityCheck {
    pub holds: bool,
    pub lhs: Rational,
    pub rhs: Rational,
}

impl InequalityCheck {
    fn new(lhs: Rational, rhs: Rational) -> Self {
        InequalityCheck {
            holds: lhs <= rhs,
            lhs,
            rhs,
        }
    }
}

/// `α(Ω \ Ω'; F) ≤ (α(Ω'; F) + α(Ω; F)) / ε` whenever `Ω' ⊆ Ω` and
/// `|Ω \ Ω'| ≥ ε|Ω|`. An empty `Ω'` contributes 0.
pub fn check_removal_bound(
    omega: &FiniteSubset,
    omega_sub: &FiniteSubset,
    f: &FiniteSubset,
    epsilon: Rational,
) -> Result<InequalityCheck> {
    if epsilon <= Rational::zero() || epsilon > Rational::one() {
        return Err(param("epsilon", format!("{epsilon} must lie in (0, 1]")));
    }
    if omega.is_empty() {
        return Err(Error::EmptySet);
    }
    if !omega_sub.is_subset(omega) {
        return Err(Error::Precondition("omega' is not contained in omega".into()));
    }
    let rest = omega.difference(omega_sub);
    if Rational::from_integer(rest.len() as i128) < epsilon * Rational::from_integer(omega.len() as i128) {
        return Err(Error::Precondition(format!(
            "|omega \\ omega'| = {} is below epsilon |omega| = {} * {}",
            rest.len(),
            epsilon,
            omega.len()
        )));
    }
    let lhs = alpha(&rest, f)?;
    let rhs = (alpha_or_zero(omega_sub, f)? + alpha(omega, f)?) / epsilon;
    Ok(InequalityCheck::new(lhs, rhs))
}

/// `α(∪ D_i; F) ≤ max_i α(D_i; F) / (1 − ε)` for the tiles of an ε-disjoint family.
pub fn check_union_bound(tiling: &QuasiTiling, f: &FiniteSubset) -> Result<InequalityCheck> {
    tiling.audit()?;
    if tiling.is_empty() {
        return Err(Error::InvalidTiling("empty family".into()));
    }
    let lhs = alpha(&tiling.union(), f)?;
    let mut worst = Rational::zero();
    for t in &tiling.tiles {
        worst = worst.max(alpha(t.set(), f)?);
    }
    let rhs = worst / (Rational::one() - tiling.epsilon);
    Ok(InequalityCheck::new(lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::FolnerSpec;

    fn ints(v: &[i64]) -> FiniteSubset {
        FiniteSubset::from_ints(v.iter().copied())
    }

    fn translates(t: &QuasiTiling) -> Vec<i64> {
        t.tiles.iter().map(|p| p.translate.coords()[0]).collect()
    }

    #[test]
    fn pairs_tile_an_interval() {
        let omega = FiniteSubset::interval(0, 9);
        let f = ints(&[0, 1]);
        let t = greedy_quasi_tiling(&omega, &f, Rational::new(2, 5)).unwrap();
        assert_eq!(translates(&t), vec![0, 2, 4, 6, 8]);
        let rep = coverage_report(&t, &f).unwrap();
        assert_eq!(rep.coverage, Rational::one());
        assert_eq!(rep.bound, Rational::new(8, 25));
        assert!(rep.holds);
        assert!(is_maximal(&t, &f).unwrap());
        t.audit().unwrap();
    }

    #[test]
    fn singleton_tiles_cover_everything() {
        let omega = ints(&[-4, -1, 0, 3, 8]);
        let t = greedy_quasi_tiling(&omega, &ints(&[0]), Rational::new(1, 2)).unwrap();
        assert_eq!(t.len(), omega.len());
        assert_eq!(t.coverage().unwrap(), Rational::one());
    }

    #[test]
    fn small_epsilon_forces_disjoint_tiles() {
        let omega = FiniteSubset::interval(-8, 8);
        let f = FiniteSubset::interval(0, 3);
        let t = greedy_quasi_tiling(&omega, &f, Rational::new(1, 8)).unwrap();
        for (i, a) in t.tiles.iter().enumerate() {
            for b in &t.tiles[i + 1..] {
                assert!(a.set().is_disjoint(b.set()));
            }
        }
        assert!(coverage_report(&t, &f).unwrap().holds);
        assert_eq!(translates(&t), vec![-8, -4, 0, 4]);
    }

    #[test]
    fn empty_interior_gives_empty_tiling() {
        let omega = ints(&[0, 2, 4]);
        let t = greedy_quasi_tiling(&omega, &ints(&[0, 1]), Rational::new(1, 2)).unwrap();
        assert!(t.is_empty());
    }

    #[test]
    fn greedy_rejects_bad_epsilon() {
        let omega = FiniteSubset::interval(0, 3);
        let f = ints(&[0]);
        assert!(greedy_quasi_tiling(&omega, &f, Rational::new(3, 2)).is_err());
        assert!(greedy_quasi_tiling(&omega, &f, Rational::zero()).is_err());
        assert!(greedy_quasi_tiling(&omega, &ints(&[1]), Rational::new(1, 2)).is_err());
    }

    #[test]
    fn audit_catches_broken_cores() {
        let omega = FiniteSubset::interval(0, 5);
        let tiles = vec![
            PlacedTile::new(0.into(), ints(&[0, 1, 2])),
            PlacedTile::new(1.into(), ints(&[0, 1, 2])),
        ];
        // second tile keeps 1 of 3 points: needs ε ≥ 2/3
        assert!(QuasiTiling::from_tiles(omega.clone(), tiles.clone(), Rational::new(1, 2)).is_err());
        assert!(QuasiTiling::from_tiles(omega.clone(), tiles, Rational::new(2, 3)).is_ok());
        let outside = vec![PlacedTile::new(5.into(), ints(&[0, 1]))];
        assert!(QuasiTiling::from_tiles(omega, outside, Rational::new(1, 2)).is_err());
    }

    #[test]
    fn covering_depth_by_direct_search() {
        // (1 - δ(1 - (1+N)δ^{N+1}))^N evaluated by hand in floating point
        let direct = |delta: f64| {
            (1..=64)
                .find(|&n| {
                    let n_f = n as f64;
                    (1.0 - delta * (1.0 - (1.0 + n_f) * delta.powi(n as i32 + 1))).powi(n as i32) < delta
                })
                .unwrap()
        };
        assert_eq!(covering_depth(&Rational::new(3, 10)).unwrap(), 4);
        assert_eq!(covering_depth(&Rational::new(3, 10)).unwrap(), direct(0.3));
        assert_eq!(covering_depth(&Rational::new(2, 5)).unwrap(), direct(0.4));
        assert_eq!(covering_depth(&Rational::new(1, 10)).unwrap(), direct(0.1));
        assert!(covering_depth(&Rational::new(1, 2)).is_err());
    }

    #[test]
    fn strict_cover_fails_loudly_when_omega_is_too_small() {
        let omega = FiniteSubset::interval(-2000, 2000);
        let spec = FolnerSpec::centered(1, 2000);
        let err = ow_cover(&omega, &spec, Rational::new(2, 5)).unwrap_err();
        assert!(
            matches!(err, Error::OmegaTooSmall { .. } | Error::SubsequenceNotFound { .. }),
            "{err:?}"
        );
    }

    #[test]
    fn strict_cover_succeeds_when_hypotheses_hold() {
        // δ = 0.46: N = 2 and δ^4 ≈ 0.0448, so scales {[-1,1], [-45,45]}
        // and an interval of 3001 points satisfy every hypothesis.
        let delta = Rational::new(23, 50);
        assert_eq!(covering_depth(&delta).unwrap(), 2);
        let spec = FolnerSpec::centered(1, 60);
        let omega = FiniteSubset::interval(-1500, 1500);
        let cover = ow_cover(&omega, &spec, delta).unwrap();
        assert!(cover.preconditions.satisfied);
        assert!(cover.target_met);
        assert_eq!(cover.scales.len(), 2);
        assert_eq!(cover.scales[1], FiniteSubset::interval(-45, 45));
        cover.placed.audit().unwrap();
    }

    #[test]
    fn cover_with_explicit_scales() {
        let omega = FiniteSubset::interval(-300, 300);
        let spec = FolnerSpec::centered(1, 64);
        let scales: Vec<_> = [1, 4, 16].iter().map(|&i| spec.set(i).unwrap()).collect();
        let cover = ow_cover_with_scales(&omega, &scales, Rational::new(3, 10)).unwrap();
        assert!(cover.target_met);
        assert!(cover.residual_fraction() <= 0.3);
        assert!(!cover.preconditions.satisfied);
        cover.placed.audit().unwrap();
    }

    #[test]
    fn removal_bound_examples() {
        let omega = FiniteSubset::interval(0, 9);
        let sub = FiniteSubset::interval(0, 4);
        let f = ints(&[0, 1]);
        let c = check_removal_bound(&omega, &sub, &f, Rational::new(1, 2)).unwrap();
        // α({5..9}) = 2/5, α({0..4}) = 2/5, α({0..9}) = 1/5
        assert_eq!(c.lhs, Rational::new(2, 5));
        assert_eq!(c.rhs, Rational::new(6, 5));
        assert!(c.holds);

        let empty = FiniteSubset::empty(1);
        let c = check_removal_bound(&omega, &empty, &f, Rational::one()).unwrap();
        assert_eq!(c.lhs, c.rhs);

        assert!(check_removal_bound(&omega, &FiniteSubset::interval(0, 8), &f, Rational::new(1, 2)).is_err());
        assert!(check_removal_bound(&sub, &omega, &f, Rational::new(1, 2)).is_err());
    }

    #[test]
    fn union_bound_examples() {
        let omega = FiniteSubset::interval(0, 20);
        let f = ints(&[0, 1]);
        let tiles = vec![
            PlacedTile::new(0.into(), FiniteSubset::interval(0, 4)),
            PlacedTile::new(10.into(), FiniteSubset::interval(0, 4)),
        ];
        let t = QuasiTiling::from_tiles(omega, tiles, Rational::zero()).unwrap();
        assert!(check_union_bound(&t, &f).unwrap().holds);

        let omega = FiniteSubset::interval(0, 9);
        let g = greedy_quasi_tiling(&omega, &f, Rational::new(2, 5)).unwrap();
        assert!(check_union_bound(&g, &f).unwrap().holds);
    }
}
