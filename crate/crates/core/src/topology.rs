//! Finite topological spaces presented by minimal open neighbourhoods.
//!
//! Every finite topology is Alexandrov, so it is determined by the map
//! `x ↦ minopen[x]`. Open sets are exactly the sets `U` with
//! `minopen[x] ⊆ U` for all `x ∈ U` (the up-sets of the specialization
//! preorder), and the closure of `A` is `{x : minopen[x] ∩ A ≠ ∅}`.

use std::fmt;
use std::ops::{BitAnd, BitOr, BitXor, Sub};

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result, Violation, ViolationKind};

/// Default bound on the number of points for which all subsets may be enumerated.
pub const DEFAULT_ENUMERATION_LIMIT: usize = 12;

/// A subset of the points `0..n` of some finite space.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointSet {
    bits: FixedBitSet,
}

impl PointSet {
    pub fn empty(n: usize) -> Self {
        PointSet {
            bits: FixedBitSet::with_capacity(n),
        }
    }

    pub fn full(n: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(n);
        bits.insert_range(..);
        PointSet { bits }
    }

    /// Builds a set from point indices, rejecting indices `>= n`.
    pub fn from_points<I: IntoIterator<Item = usize>>(n: usize, points: I) -> Result<Self> {
        let mut set = PointSet::empty(n);
        for p in points {
            if p >= n {
                return Err(Error::PointOutOfRange { point: p, n });
            }
            set.bits.insert(p);
        }
        Ok(set)
    }

    /// The set whose members are the one-bits of `mask` (`n <= 64`).
    pub fn from_mask(n: usize, mask: u64) -> Self {
        assert!(n <= 64, "mask sets are limited to 64 points");
        let mut set = PointSet::empty(n);
        for p in 0..n {
            if mask >> p & 1 == 1 {
                set.bits.insert(p);
            }
        }
        set
    }

    /// Number of points of the ambient space.
    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    /// Number of members.
    pub fn count(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn contains(&self, p: usize) -> bool {
        self.bits.contains(p)
    }

    pub fn insert(&mut self, p: usize) {
        self.bits.insert(p);
    }

    pub fn remove(&mut self, p: usize) {
        self.bits.set(p, false);
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn first(&self) -> Option<usize> {
        self.bits.minimum()
    }

    pub fn complement(&self) -> PointSet {
        let mut bits = self.bits.clone();
        bits.toggle_range(..);
        PointSet { bits }
    }

    pub fn is_subset(&self, other: &PointSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn is_disjoint(&self, other: &PointSet) -> bool {
        self.bits.is_disjoint(&other.bits)
    }

    pub fn intersects(&self, other: &PointSet) -> bool {
        !self.is_disjoint(other)
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for p in self.iter() {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{p}")?;
            first = false;
        }
        Ok(())
    }
}

macro_rules! set_op {
    ($trait:ident, $method:ident, $body:ident) => {
        impl $trait<&PointSet> for &PointSet {
            type Output = PointSet;
            fn $method(self, rhs: &PointSet) -> PointSet {
                debug_assert_eq!(self.universe(), rhs.universe());
                let mut bits = self.bits.clone();
                bits.$body(&rhs.bits);
                PointSet { bits }
            }
        }
    };
}

set_op!(BitOr, bitor, union_with);
set_op!(BitAnd, bitand, intersect_with);
set_op!(BitXor, bitxor, symmetric_difference_with);
set_op!(Sub, sub, difference_with);

/// Validates a raw minimal-neighbourhood map, reporting the first offending pair.
///
/// Pairs are scanned in order of `x`, then of `y` in increasing order.
pub fn validate_minopen(n: usize, minopen: &[Vec<usize>]) -> Result<(), Violation> {
    debug_assert_eq!(minopen.len(), n);
    for (x, nbhd) in minopen.iter().enumerate() {
        let mut sorted = nbhd.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if let Some(&y) = sorted.iter().find(|&&y| y >= n) {
            return Err(Violation {
                x,
                y,
                kind: ViolationKind::OutOfRange,
            });
        }
        if !sorted.contains(&x) {
            return Err(Violation {
                x,
                y: x,
                kind: ViolationKind::NotReflexive,
            });
        }
        for &y in &sorted {
            if !minopen[y].iter().all(|z| sorted.contains(z)) {
                return Err(Violation {
                    x,
                    y,
                    kind: ViolationKind::NotCoherent,
                });
            }
        }
    }
    Ok(())
}

/// A finite topological space on the points `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteSpace {
    minopen: Vec<PointSet>,
}

impl fmt::Debug for FiniteSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.minopen.iter()).finish()
    }
}

impl FiniteSpace {
    /// Builds a space from per-point neighbourhood lists, validating both laws.
    pub fn from_lists<L: AsRef<[usize]>>(minopen: &[L]) -> Result<Self> {
        let n = minopen.len();
        let raw: Vec<Vec<usize>> = minopen.iter().map(|l| l.as_ref().to_vec()).collect();
        validate_minopen(n, &raw).map_err(Error::InvalidSpace)?;
        let minopen = raw
            .into_iter()
            .map(|l| PointSet::from_points(n, l))
            .collect::<Result<Vec<_>>>()?;
        Ok(FiniteSpace { minopen })
    }

    /// Builds a space from neighbourhood sets, validating both laws.
    pub fn from_sets(minopen: Vec<PointSet>) -> Result<Self> {
        let n = minopen.len();
        if let Some(bad) = minopen.iter().find(|s| s.universe() != n) {
            return Err(Error::PointOutOfRange {
                point: bad.universe().max(n),
                n,
            });
        }
        let raw: Vec<Vec<usize>> = minopen.iter().map(PointSet::to_vec).collect();
        validate_minopen(n, &raw).map_err(Error::InvalidSpace)?;
        Ok(FiniteSpace { minopen })
    }

    pub fn discrete(n: usize) -> Self {
        let minopen = (0..n)
            .map(|x| PointSet::from_points(n, [x]).expect("in range"))
            .collect();
        FiniteSpace { minopen }
    }

    pub fn indiscrete(n: usize) -> Self {
        FiniteSpace {
            minopen: vec![PointSet::full(n); n],
        }
    }

    /// Two points, `{0}` open and `1` in the closure of `0`.
    pub fn sierpinski() -> Self {
        FiniteSpace::from_lists(&[vec![0], vec![0, 1]]).expect("valid")
    }

    /// Topological sum: the points of `other` are shifted past those of `self`.
    pub fn sum(&self, other: &FiniteSpace) -> FiniteSpace {
        let n = self.len() + other.len();
        let shift = self.len();
        let minopen =
            self.minopen
                .iter()
                .map(|s| PointSet::from_points(n, s.iter()).expect("in range"))
                .chain(other.minopen.iter().map(|s| {
                    PointSet::from_points(n, s.iter().map(|p| p + shift)).expect("in range")
                }))
                .collect();
        FiniteSpace { minopen }
    }

    pub fn len(&self) -> usize {
        self.minopen.len()
    }

    pub fn is_empty(&self) -> bool {
        self.minopen.is_empty()
    }

    pub fn minopen(&self, x: usize) -> &PointSet {
        &self.minopen[x]
    }

    pub fn minopens(&self) -> &[PointSet] {
        &self.minopen
    }

    pub fn empty_set(&self) -> PointSet {
        PointSet::empty(self.len())
    }

    pub fn full_set(&self) -> PointSet {
        PointSet::full(self.len())
    }

    /// A subset of this space, rejecting out-of-range points.
    pub fn point_set<I: IntoIterator<Item = usize>>(&self, points: I) -> Result<PointSet> {
        PointSet::from_points(self.len(), points)
    }

    fn check(&self, a: &PointSet) {
        assert_eq!(
            a.universe(),
            self.len(),
            "point set belongs to a space with a different number of points"
        );
    }

    pub fn closure(&self, a: &PointSet) -> PointSet {
        self.check(a);
        let mut out = self.empty_set();
        for (x, nbhd) in self.minopen.iter().enumerate() {
            if nbhd.intersects(a) {
                out.insert(x);
            }
        }
        out
    }

    pub fn interior(&self, a: &PointSet) -> PointSet {
        self.check(a);
        let mut out = self.empty_set();
        for (x, nbhd) in self.minopen.iter().enumerate() {
            if nbhd.is_subset(a) {
                out.insert(x);
            }
        }
        out
    }

    pub fn frontier(&self, a: &PointSet) -> PointSet {
        &self.closure(a) - &self.interior(a)
    }

    pub fn is_open(&self, a: &PointSet) -> bool {
        self.check(a);
        a.iter().all(|x| self.minopen[x].is_subset(a))
    }

    pub fn is_closed(&self, a: &PointSet) -> bool {
        self.is_open(&a.complement())
    }

    /// `u ⊆ Cl(a)`; `u` must be open.
    pub fn is_dense_in(&self, a: &PointSet, u: &PointSet) -> Result<bool> {
        if !self.is_open(u) {
            return Err(Error::NotOpen);
        }
        Ok(u.is_subset(&self.closure(a)))
    }

    /// `u ⊆ Cl(X \ a)`; `u` must be open.
    pub fn is_codense_in(&self, a: &PointSet, u: &PointSet) -> Result<bool> {
        self.is_dense_in(&a.complement(), u)
    }

    pub fn is_regular_open(&self, u: &PointSet) -> bool {
        &self.regularization(u) == u
    }

    pub fn is_nowhere_dense(&self, a: &PointSet) -> bool {
        self.regularization(a).is_empty()
    }

    /// `Int(Cl(a))`, the regular open set attached to `a`.
    pub fn regularization(&self, a: &PointSet) -> PointSet {
        self.interior(&self.closure(a))
    }

    /// Points whose singleton is open.
    pub fn isolated_points(&self) -> PointSet {
        let mut out = self.empty_set();
        for (x, nbhd) in self.minopen.iter().enumerate() {
            if nbhd.count() == 1 {
                out.insert(x);
            }
        }
        out
    }

    /// All open sets, in increasing order of their bit mask.
    pub fn enumerate_opens(&self) -> Result<Vec<PointSet>> {
        self.enumerate_opens_with_limit(DEFAULT_ENUMERATION_LIMIT)
    }

    pub fn enumerate_opens_with_limit(&self, limit: usize) -> Result<Vec<PointSet>> {
        Ok(self
            .all_subsets_with_limit(limit)?
            .filter(|u| self.is_open(u))
            .collect())
    }

    /// Every subset of the carrier, in increasing order of bit mask.
    pub fn all_subsets(&self) -> Result<impl Iterator<Item = PointSet>> {
        self.all_subsets_with_limit(DEFAULT_ENUMERATION_LIMIT)
    }

    pub fn all_subsets_with_limit(&self, limit: usize) -> Result<impl Iterator<Item = PointSet>> {
        let n = self.len();
        if n > limit || n >= 64 {
            return Err(Error::SizeGuard { n, limit });
        }
        Ok((0..1u64 << n).map(move |mask| PointSet::from_mask(n, mask)))
    }

    /// The subspace on an open set `u`, with the original index of each new point.
    ///
    /// Because `u` is open, `minopen[x] ⊆ u` for every `x ∈ u`, so the
    /// restricted neighbourhoods are the subspace's minimal neighbourhoods.
    pub fn open_subspace(&self, u: &PointSet) -> Result<(FiniteSpace, Vec<usize>)> {
        if !self.is_open(u) {
            return Err(Error::NotOpen);
        }
        let points = u.to_vec();
        let mut index = vec![usize::MAX; self.len()];
        for (i, &p) in points.iter().enumerate() {
            index[p] = i;
        }
        let m = points.len();
        let minopen = points
            .iter()
            .map(|&p| {
                PointSet::from_points(m, self.minopen[p].iter().map(|q| index[q]))
                    .expect("open subspace")
            })
            .collect();
        Ok((FiniteSpace { minopen }, points))
    }

    /// Lifts a set of the subspace on `points` back to this space.
    pub fn lift(&self, points: &[usize], sub: &PointSet) -> PointSet {
        let mut out = self.empty_set();
        for i in sub.iter() {
            out.insert(points[i]);
        }
        out
    }

    /// Restricts `a` to the subspace on `points`.
    pub fn restrict(&self, points: &[usize], a: &PointSet) -> PointSet {
        let mut out = PointSet::empty(points.len());
        for (i, &p) in points.iter().enumerate() {
            if a.contains(p) {
                out.insert(i);
            }
        }
        out
    }
}

/// Every finite topology on `n` points, as the filtered reflexive relations.
///
/// Intended for exhaustive tests; `n` is limited to 5.
pub fn all_spaces(n: usize) -> Vec<FiniteSpace> {
    assert!(n <= 5, "exhaustive enumeration is only feasible for n <= 5");
    let off_diag: Vec<(usize, usize)> = (0..n)
        .flat_map(|x| (0..n).filter(move |&y| y != x).map(move |y| (x, y)))
        .collect();
    let mut out = Vec::new();
    for mask in 0u64..1 << off_diag.len() {
        let mut lists: Vec<Vec<usize>> = (0..n).map(|x| vec![x]).collect();
        for (i, &(x, y)) in off_diag.iter().enumerate() {
            if mask >> i & 1 == 1 {
                lists[x].push(y);
            }
        }
        if validate_minopen(n, &lists).is_ok() {
            out.push(FiniteSpace::from_lists(&lists).expect("validated"));
        }
    }
    out
}
