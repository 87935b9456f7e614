//! Exact set calculus on the lattice `Z^d`.
//!
//! The group law is addition, so a translate `γF` is `γ + F` and the inverse
//! set `F^{-1}S` is `{s - f : s ∈ S, f ∈ F}`. Every set is stored sorted
//! lexicographically, which fixes all iteration orders downstream.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_rational::Ratio;
use num_traits::Zero;

use crate::error::{param, Error, Result};

/// Exact rational used for boundary ratios and tiling parameters.
pub type Rational = Ratio<i128>;

/// A point of `Z^d`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticePoint(Vec<i64>);

impl LatticePoint {
    pub fn new(coords: Vec<i64>) -> Self {
        assert!(!coords.is_empty(), "lattice points need at least one coordinate");
        LatticePoint(coords)
    }

    pub fn origin(dim: usize) -> Self {
        LatticePoint::new(vec![0; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_origin(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Coordinate-wise multiplication by an integer.
    pub fn scale(&self, factor: i64) -> Self {
        LatticePoint(self.0.iter().map(|c| c * factor).collect())
    }
}

impl From<i64> for LatticePoint {
    fn from(x: i64) -> Self {
        LatticePoint(vec![x])
    }
}

impl From<Vec<i64>> for LatticePoint {
    fn from(v: Vec<i64>) -> Self {
        LatticePoint::new(v)
    }
}

impl<const D: usize> From<[i64; D]> for LatticePoint {
    fn from(v: [i64; D]) -> Self {
        LatticePoint::new(v.to_vec())
    }
}

impl fmt::Debug for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() == 1 {
            write!(f, "{}", self.0[0])
        } else {
            write!(f, "{:?}", self.0)
        }
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl Add for &LatticePoint {
    type Output = LatticePoint;
    fn add(self, rhs: &LatticePoint) -> LatticePoint {
        debug_assert_eq!(self.dim(), rhs.dim());
        LatticePoint(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &LatticePoint {
    type Output = LatticePoint;
    fn sub(self, rhs: &LatticePoint) -> LatticePoint {
        debug_assert_eq!(self.dim(), rhs.dim());
        LatticePoint(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &LatticePoint {
    type Output = LatticePoint;
    fn neg(self) -> LatticePoint {
        LatticePoint(self.0.iter().map(|c| -c).collect())
    }
}

/// A finite subset of `Z^d` with a fixed ambient dimension.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteSubset {
    dim: usize,
    points: BTreeSet<LatticePoint>,
}

impl fmt::Debug for FiniteSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.points.iter()).finish()
    }
}

impl FiniteSubset {
    pub fn empty(dim: usize) -> Self {
        assert!(dim >= 1, "dimension must be at least 1");
        FiniteSubset {
            dim,
            points: BTreeSet::new(),
        }
    }

    /// Builds a set from points, rejecting points of the wrong dimension.
    pub fn from_points<I, P>(dim: usize, points: I) -> Result<Self>
    where
        I: IntoIterator<Item = P>,
        P: Into<LatticePoint>,
    {
        let mut set = FiniteSubset::empty(dim);
        for p in points {
            let p = p.into();
            if p.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: p.dim(),
                });
            }
            set.points.insert(p);
        }
        Ok(set)
    }

    /// One-dimensional set from integers.
    pub fn from_ints<I: IntoIterator<Item = i64>>(values: I) -> Self {
        FiniteSubset {
            dim: 1,
            points: values.into_iter().map(LatticePoint::from).collect(),
        }
    }

    /// The integer interval `[lo, hi]` in `Z`.
    pub fn interval(lo: i64, hi: i64) -> Self {
        FiniteSubset::from_ints(lo..=hi)
    }

    /// The box `∏ [lo_j, hi_j]`.
    pub fn product_box(lo: &[i64], hi: &[i64]) -> Self {
        assert_eq!(lo.len(), hi.len());
        let dim = lo.len();
        let mut points = BTreeSet::new();
        if lo.iter().zip(hi).any(|(l, h)| l > h) {
            return FiniteSubset::empty(dim);
        }
        let mut cur = lo.to_vec();
        loop {
            points.insert(LatticePoint(cur.clone()));
            let mut axis = dim;
            loop {
                if axis == 0 {
                    return FiniteSubset { dim, points };
                }
                axis -= 1;
                if cur[axis] < hi[axis] {
                    cur[axis] += 1;
                    break;
                }
                cur[axis] = lo[axis];
            }
        }
    }

    /// The cube `[lo, hi]^d`.
    pub fn cube(dim: usize, lo: i64, hi: i64) -> Self {
        FiniteSubset::product_box(&vec![lo; dim], &vec![hi; dim])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: &LatticePoint) -> bool {
        self.points.contains(p)
    }

    pub fn contains_origin(&self) -> bool {
        self.points.iter().any(LatticePoint::is_origin)
    }

    /// Points in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = &LatticePoint> + '_ {
        self.points.iter()
    }

    pub fn insert(&mut self, p: LatticePoint) -> Result<bool> {
        self.check_point(&p)?;
        Ok(self.points.insert(p))
    }

    pub fn remove(&mut self, p: &LatticePoint) -> bool {
        self.points.remove(p)
    }

    pub fn translate(&self, by: &LatticePoint) -> FiniteSubset {
        FiniteSubset {
            dim: self.dim,
            points: self.points.iter().map(|p| p + by).collect(),
        }
    }

    pub fn union(&self, other: &FiniteSubset) -> FiniteSubset {
        FiniteSubset {
            dim: self.dim,
            points: self.points.union(&other.points).cloned().collect(),
        }
    }

    /// In-place union.
    pub fn absorb(&mut self, other: &FiniteSubset) {
        self.points.extend(other.points.iter().cloned());
    }

    pub fn intersection(&self, other: &FiniteSubset) -> FiniteSubset {
        FiniteSubset {
            dim: self.dim,
            points: self.points.intersection(&other.points).cloned().collect(),
        }
    }

    pub fn difference(&self, other: &FiniteSubset) -> FiniteSubset {
        FiniteSubset {
            dim: self.dim,
            points: self.points.difference(&other.points).cloned().collect(),
        }
    }

    pub fn is_subset(&self, other: &FiniteSubset) -> bool {
        self.points.is_subset(&other.points)
    }

    pub fn is_disjoint(&self, other: &FiniteSubset) -> bool {
        self.points.is_disjoint(&other.points)
    }

    /// Number of points of `self` lying in `other`.
    pub fn overlap(&self, other: &FiniteSubset) -> usize {
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        small.points.iter().filter(|p| large.contains(p)).count()
    }

    /// Per-axis `(min, max)`; `None` for the empty set.
    pub fn bounding_box(&self) -> Option<(Vec<i64>, Vec<i64>)> {
        let mut it = self.points.iter();
        let first = it.next()?;
        let mut lo = first.0.clone();
        let mut hi = first.0.clone();
        for p in it {
            for (j, &c) in p.0.iter().enumerate() {
                lo[j] = lo[j].min(c);
                hi[j] = hi[j].max(c);
            }
        }
        Some((lo, hi))
    }

    /// Largest coordinate spread `max_j (hi_j - lo_j)`; 0 for empty sets.
    pub fn diameter(&self) -> i64 {
        self.bounding_box()
            .map(|(lo, hi)| lo.iter().zip(&hi).map(|(l, h)| h - l).max().unwrap_or(0))
            .unwrap_or(0)
    }

    /// `{s - f : s ∈ self, f ∈ f}`, the set `F^{-1}S`.
    pub fn minkowski_difference(&self, f: &FiniteSubset) -> FiniteSubset {
        let mut points = BTreeSet::new();
        for s in &self.points {
            for t in &f.points {
                points.insert(s - t);
            }
        }
        FiniteSubset {
            dim: self.dim,
            points,
        }
    }

    fn check_point(&self, p: &LatticePoint) -> Result<()> {
        if p.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: p.dim(),
            });
        }
        Ok(())
    }
}

impl<'a> IntoIterator for &'a FiniteSubset {
    type Item = &'a LatticePoint;
    type IntoIter = std::collections::btree_set::Iter<'a, LatticePoint>;
    fn into_iter(self) -> Self::IntoIter {
        self.points.iter()
    }
}

fn check_pair(omega: &FiniteSubset, f: &FiniteSubset) -> Result<()> {
    if omega.dim() != f.dim() {
        return Err(Error::DimensionMismatch {
            expected: omega.dim(),
            found: f.dim(),
        });
    }
    if !f.contains_origin() {
        return Err(Error::OriginMissing);
    }
    Ok(())
}

/// Outer boundary `{γ ∉ Ω : (γ + F) ∩ Ω ≠ ∅} = F^{-1}Ω ∩ Ω^c`.
pub fn boundary_outer(omega: &FiniteSubset, f: &FiniteSubset) -> Result<FiniteSubset> {
    check_pair(omega, f)?;
    Ok(omega.minkowski_difference(f).difference(omega))
}

/// Inner boundary `{γ ∈ Ω : (γ + F) ∩ Ω^c ≠ ∅}`.
pub fn boundary_inner(omega: &FiniteSubset, f: &FiniteSubset) -> Result<FiniteSubset> {
    check_pair(omega, f)?;
    let points = omega
        .iter()
        .filter(|g| f.iter().any(|t| !omega.contains(&(*g + t))))
        .cloned()
        .collect();
    Ok(FiniteSubset {
        dim: omega.dim(),
        points,
    })
}

/// Full boundary, the disjoint union of the outer and inner boundaries.
pub fn boundary_full(omega: &FiniteSubset, f: &FiniteSubset) -> Result<FiniteSubset> {
    Ok(boundary_outer(omega, f)?.union(&boundary_inner(omega, f)?))
}

/// `{γ : γ + F ⊆ Ω}`.
pub fn interior(omega: &FiniteSubset, f: &FiniteSubset) -> Result<FiniteSubset> {
    Ok(omega.difference(&boundary_inner(omega, f)?))
}

/// `{γ : (γ + F) ∩ Ω ≠ ∅}`.
pub fn closure(omega: &FiniteSubset, f: &FiniteSubset) -> Result<FiniteSubset> {
    Ok(omega.union(&boundary_outer(omega, f)?))
}

/// The five boundary sets of `Ω` relative to `F`, computed together.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryDecomposition {
    pub outer: FiniteSubset,
    pub inner: FiniteSubset,
    pub full: FiniteSubset,
    pub interior: FiniteSubset,
    pub closure: FiniteSubset,
}

pub fn decompose(omega: &FiniteSubset, f: &FiniteSubset) -> Result<BoundaryDecomposition> {
    let outer = boundary_outer(omega, f)?;
    let inner = boundary_inner(omega, f)?;
    Ok(BoundaryDecomposition {
        full: outer.union(&inner),
        interior: omega.difference(&inner),
        closure: omega.union(&outer),
        outer,
        inner,
    })
}

/// Relative amenability `|∂_F Ω| / |Ω|`, exact.
pub fn alpha(omega: &FiniteSubset, f: &FiniteSubset) -> Result<Rational> {
    if omega.is_empty() {
        return Err(Error::EmptySet);
    }
    let b = boundary_full(omega, f)?;
    Ok(Rational::new(b.len() as i128, omega.len() as i128))
}

/// `alpha` extended by `α(∅; F) = 0`.
pub fn alpha_or_zero(omega: &FiniteSubset, f: &FiniteSubset) -> Result<Rational> {
    if omega.is_empty() {
        check_pair(omega, f)?;
        return Ok(Rational::zero());
    }
    alpha(omega, f)
}

/// Inner-boundary ratio `|∂_F^- Ω| / |Ω|`.
pub fn alpha_inner(omega: &FiniteSubset, f: &FiniteSubset) -> Result<Rational> {
    if omega.is_empty() {
        return Err(Error::EmptySet);
    }
    let b = boundary_inner(omega, f)?;
    Ok(Rational::new(b.len() as i128, omega.len() as i128))
}

/// Concrete Følner families in `Z^d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FolnerFamily {
    /// `[-i, i]^d`
    CenteredBoxes,
    /// `[0, 2i]^d`
    ShiftedBoxes,
    /// `[0, r·i - 1] × [0, i - 1]^{d-1}`, eccentricity `r`.
    Rectangles { ratio: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FolnerSpec {
    pub family: FolnerFamily,
    pub dim: usize,
    pub max_index: usize,
}

impl FolnerSpec {
    pub fn new(family: FolnerFamily, dim: usize, max_index: usize) -> Result<Self> {
        if dim == 0 {
            return Err(param("dim", "must be at least 1"));
        }
        if max_index == 0 {
            return Err(param("max_index", "must be at least 1"));
        }
        if let FolnerFamily::Rectangles { ratio } = family {
            if ratio == 0 {
                return Err(param("ratio", "must be at least 1"));
            }
        }
        Ok(FolnerSpec {
            family,
            dim,
            max_index,
        })
    }

    pub fn centered(dim: usize, max_index: usize) -> Self {
        FolnerSpec::new(FolnerFamily::CenteredBoxes, dim, max_index).unwrap()
    }

    pub fn shifted(dim: usize, max_index: usize) -> Self {
        FolnerSpec::new(FolnerFamily::ShiftedBoxes, dim, max_index).unwrap()
    }

    /// Cardinality of the set at `index`, without building it.
    pub fn size_at(&self, index: usize) -> usize {
        let i = index;
        match self.family {
            FolnerFamily::CenteredBoxes | FolnerFamily::ShiftedBoxes => (2 * i + 1).pow(self.dim as u32),
            FolnerFamily::Rectangles { ratio } => ratio as usize * i * i.pow(self.dim as u32 - 1),
        }
    }

    /// Smallest index whose set has exactly `size` points, if any.
    pub fn index_for_size(&self, size: usize) -> Option<usize> {
        (1..=self.max_index).find(|&i| self.size_at(i) == size)
    }

    pub fn set(&self, index: usize) -> Result<FiniteSubset> {
        folner_set(self, index)
    }
}

pub fn folner_set(spec: &FolnerSpec, index: usize) -> Result<FiniteSubset> {
    if index == 0 || index > spec.max_index {
        return Err(Error::IndexOutOfRange {
            index,
            max: spec.max_index,
        });
    }
    let i = index as i64;
    let d = spec.dim;
    Ok(match spec.family {
        FolnerFamily::CenteredBoxes => FiniteSubset::cube(d, -i, i),
        FolnerFamily::ShiftedBoxes => FiniteSubset::cube(d, 0, 2 * i),
        FolnerFamily::Rectangles { ratio } => {
            let mut hi = vec![i - 1; d];
            hi[0] = ratio as i64 * i - 1;
            FiniteSubset::product_box(&vec![0; d], &hi)
        }
    })
}

/// Parses a rational from `p/q`, an integer, or a finite decimal.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: i128 = n.trim().parse().ok()?;
        let d: i128 = d.trim().parse().ok()?;
        if d == 0 {
            return None;
        }
        return Some(Rational::new(n, d));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().all(|c| c.is_ascii_digit()) || !frac_part.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    if frac_part.len() > 30 {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let num: i128 = if digits.is_empty() { 0 } else { digits.parse().ok()? };
    let den = 10i128.checked_pow(frac_part.len() as u32)?;
    let r = Rational::new(num, den);
    Some(if neg { -r } else { r })
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> FiniteSubset {
        FiniteSubset::from_ints(v.iter().copied())
    }

    #[test]
    fn outer_boundary_of_interval() {
        let omega = FiniteSubset::interval(0, 4);
        let f = ints(&[0, 1]);
        assert_eq!(boundary_outer(&omega, &f).unwrap(), ints(&[-1]));
        let shifted = omega.translate(&LatticePoint::from(7));
        assert_eq!(boundary_outer(&shifted, &f).unwrap(), ints(&[6]));
    }

    #[test]
    fn inner_boundary_of_interval() {
        let omega = FiniteSubset::interval(0, 4);
        assert_eq!(boundary_inner(&omega, &ints(&[0, 1])).unwrap(), ints(&[4]));
        assert_eq!(boundary_inner(&omega, &ints(&[-1, 0, 1])).unwrap(), ints(&[0, 4]));
    }

    #[test]
    fn singleton_tile_has_no_boundary() {
        let omega = ints(&[-3, 0, 2, 5, 6]);
        let f = ints(&[0]);
        let d = decompose(&omega, &f).unwrap();
        assert!(d.full.is_empty());
        assert_eq!(d.interior, omega);
        assert_eq!(d.closure, omega);
        assert_eq!(alpha(&omega, &f).unwrap(), Rational::zero());
    }

    #[test]
    fn full_decomposition_of_interval() {
        let omega = FiniteSubset::interval(0, 4);
        let d = decompose(&omega, &ints(&[0, 1])).unwrap();
        assert_eq!(d.full, ints(&[-1, 4]));
        assert_eq!(d.interior, FiniteSubset::interval(0, 3));
        assert_eq!(d.closure, FiniteSubset::interval(-1, 4));
        assert_eq!(alpha(&omega, &ints(&[0, 1])).unwrap(), Rational::new(2, 5));
    }

    #[test]
    fn planar_box_boundary_count() {
        let omega = FiniteSubset::cube(2, 0, 4);
        let f = FiniteSubset::from_points(2, [[0, 0], [1, 0], [0, 1]]).unwrap();
        assert_eq!(boundary_full(&omega, &f).unwrap().len(), 19);
    }

    #[test]
    fn centered_interval_alpha_closed_form() {
        let f = ints(&[0, 1]);
        let mut prev = None;
        for i in 1..40i64 {
            let a = alpha(&FiniteSubset::interval(-i, i), &f).unwrap();
            assert_eq!(a, Rational::new(2, 2 * i as i128 + 1));
            if let Some(p) = prev {
                assert!(a < p);
            }
            prev = Some(a);
        }
    }

    #[test]
    fn errors() {
        let omega = FiniteSubset::interval(0, 4);
        assert_eq!(boundary_outer(&omega, &ints(&[1, 2])), Err(Error::OriginMissing));
        let f2 = FiniteSubset::cube(2, 0, 1);
        assert!(matches!(
            boundary_inner(&omega, &f2),
            Err(Error::DimensionMismatch { expected: 1, found: 2 })
        ));
        assert_eq!(alpha(&FiniteSubset::empty(1), &ints(&[0])), Err(Error::EmptySet));
        assert!(FiniteSubset::from_points(1, [[1i64, 2]]).is_err());
    }

    #[test]
    fn folner_families() {
        let c = FolnerSpec::centered(1, 10);
        assert_eq!(folner_set(&c, 3).unwrap(), FiniteSubset::interval(-3, 3));
        assert_eq!(FolnerSpec::centered(2, 10).set(2).unwrap().len(), 25);
        assert_eq!(FolnerSpec::shifted(1, 10).set(3).unwrap(), FiniteSubset::interval(0, 6));
        assert!(matches!(c.set(0), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(c.set(11), Err(Error::IndexOutOfRange { .. })));
        let r = FolnerSpec::new(FolnerFamily::Rectangles { ratio: 4 }, 2, 10).unwrap();
        let s = r.set(3).unwrap();
        assert_eq!(s.len(), 36);
        assert_eq!(r.size_at(3), 36);
        assert_eq!(s.bounding_box().unwrap(), (vec![0, 0], vec![11, 2]));
        assert_eq!(FolnerSpec::centered(1, 40).index_for_size(65), Some(32));
        assert_eq!(c.index_for_size(65), None);
        for i in 1..10 {
            assert!(c.set(i).unwrap().is_subset(&c.set(i + 1).unwrap()));
        }
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("1/8"), Some(Rational::new(1, 8)));
        assert_eq!(parse_rational("0.4"), Some(Rational::new(2, 5)));
        assert_eq!(parse_rational("1.5"), Some(Rational::new(3, 2)));
        assert_eq!(parse_rational("-.25"), Some(Rational::new(-1, 4)));
        assert_eq!(parse_rational("3"), Some(Rational::new(3, 1)));
        assert_eq!(parse_rational("x"), None);
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("."), None);
    }
}
