//! Monitorability on finite spaces.
//!
//! A set `A` is monitorable when no non-empty open `U` has `A` both dense
//! and codense in it. Several equivalent deciders live here so they can be
//! cross-checked against each other; [`crate::deciders`] exposes them by name.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::topology::{FiniteSpace, PointSet};

/// Outcome of a monitorability check.
///
/// `witness` is a non-empty open set in which the tested set is dense and
/// codense; it is present exactly when the set is not monitorable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonitorVerdict {
    pub monitorable: bool,
    pub witness: Option<PointSet>,
}

impl MonitorVerdict {
    pub fn monitorable() -> Self {
        MonitorVerdict {
            monitorable: true,
            witness: None,
        }
    }

    pub fn refuted_by(witness: PointSet) -> Self {
        MonitorVerdict {
            monitorable: false,
            witness: Some(witness),
        }
    }
}

/// A monitorable set written as `regular_part △ nowhere_dense_part`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub regular_part: PointSet,
    pub nowhere_dense_part: PointSet,
}

#[derive(Serialize)]
struct DecompositionJson {
    #[serde(rename = "O")]
    o: Vec<usize>,
    #[serde(rename = "N")]
    n: Vec<usize>,
}

impl Serialize for Decomposition {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        DecompositionJson {
            o: self.regular_part.to_vec(),
            n: self.nowhere_dense_part.to_vec(),
        }
        .serialize(serializer)
    }
}

/// `A` is monitorable iff `Int(Fr A) = ∅`.
///
/// The witness is `minopen[x]` for the smallest `x ∈ Int(Fr A)`.
pub fn is_monitorable_frontier(s: &FiniteSpace, a: &PointSet) -> MonitorVerdict {
    let bad = s.interior(&s.frontier(a));
    match bad.first() {
        None => MonitorVerdict::monitorable(),
        Some(x) => MonitorVerdict::refuted_by(s.minopen(x).clone()),
    }
}

/// Basis criterion: no basic open lies inside both `Cl A` and `Cl(X \ A)`.
pub fn is_monitorable_basis(s: &FiniteSpace, a: &PointSet) -> MonitorVerdict {
    let cl = s.closure(a);
    let cl_co = s.closure(&a.complement());
    (0..s.len())
        .map(|x| s.minopen(x))
        .find(|u| u.is_subset(&cl) && u.is_subset(&cl_co))
        .map_or_else(MonitorVerdict::monitorable, |u| {
            MonitorVerdict::refuted_by(u.clone())
        })
}

/// Raw definition, quantifying over every non-empty open set.
///
/// Returns the first dense-and-codense open in enumeration order as witness.
pub fn is_monitorable_oracle_verdict(s: &FiniteSpace, a: &PointSet) -> Result<MonitorVerdict> {
    let cl = s.closure(a);
    let cl_co = s.closure(&a.complement());
    Ok(s.enumerate_opens()?
        .into_iter()
        .find(|u| !u.is_empty() && u.is_subset(&cl) && u.is_subset(&cl_co))
        .map_or_else(MonitorVerdict::monitorable, MonitorVerdict::refuted_by))
}

pub fn is_monitorable_oracle(s: &FiniteSpace, a: &PointSet) -> Result<bool> {
    Ok(is_monitorable_oracle_verdict(s, a)?.monitorable)
}

/// The distinct minimal non-empty open sets, ordered by their smallest point.
///
/// `minopen[x]` is minimal iff every `y` in it has `minopen[y] = minopen[x]`.
pub fn minimal_opens(s: &FiniteSpace) -> Vec<PointSet> {
    let mut out: Vec<PointSet> = Vec::new();
    for x in 0..s.len() {
        let u = s.minopen(x);
        if u.iter().all(|y| s.minopen(y) == u) && !out.contains(u) {
            out.push(u.clone());
        }
    }
    out
}

/// `H` is the union of the minimal opens and `L = Int(X \ H)`.
pub fn compute_h_l(s: &FiniteSpace) -> (PointSet, PointSet) {
    let h = minimal_opens(s)
        .iter()
        .fold(s.empty_set(), |acc, u| &acc | u);
    let l = s.interior(&h.complement());
    (h, l)
}

/// Decides via the split `X ⊇ H ∪ L`: no minimal open may be cut by `A`,
/// and `A ∩ L` must be monitorable in the subspace `L`.
pub fn is_monitorable_decomposed_verdict(s: &FiniteSpace, a: &PointSet) -> MonitorVerdict {
    if let Some(u) = minimal_opens(s)
        .into_iter()
        .find(|u| !u.is_subset(a) && u.intersects(a))
    {
        return MonitorVerdict::refuted_by(u);
    }
    let (_, l) = compute_h_l(s);
    let (sub, points) = s.open_subspace(&l).expect("L is open");
    let verdict = is_monitorable_frontier(&sub, &s.restrict(&points, a));
    match verdict.witness {
        None => MonitorVerdict::monitorable(),
        Some(w) => MonitorVerdict::refuted_by(s.lift(&points, &w)),
    }
}

pub fn is_monitorable_decomposed(s: &FiniteSpace, a: &PointSet) -> bool {
    is_monitorable_decomposed_verdict(s, a).monitorable
}

/// Any two non-empty open sets meet.
pub fn is_hyperconnected(s: &FiniteSpace) -> bool {
    let opens = s.minopens();
    opens
        .iter()
        .enumerate()
        .all(|(i, u)| opens[i + 1..].iter().all(|v| u.intersects(v)))
}

/// On a non-empty hyperconnected space, `A` is monitorable iff
/// `Int A ≠ ∅` or `Int(X \ A) ≠ ∅`. A refutation is witnessed by `X`.
pub fn is_monitorable_hyperconnected_verdict(
    s: &FiniteSpace,
    a: &PointSet,
) -> Result<MonitorVerdict> {
    if s.is_empty() {
        return Err(Error::EmptySpace);
    }
    if !is_hyperconnected(s) {
        return Err(Error::NotHyperconnected);
    }
    if !s.interior(a).is_empty() || !s.interior(&a.complement()).is_empty() {
        Ok(MonitorVerdict::monitorable())
    } else {
        Ok(MonitorVerdict::refuted_by(s.full_set()))
    }
}

pub fn is_monitorable_hyperconnected(s: &FiniteSpace, a: &PointSet) -> Result<bool> {
    Ok(is_monitorable_hyperconnected_verdict(s, a)?.monitorable)
}

/// Canonical `(O, N)` with `O = Int(Cl m)` regular open, `N = m △ O` nowhere dense.
pub fn decompose(s: &FiniteSpace, m: &PointSet) -> Result<Decomposition> {
    if !is_monitorable_frontier(s, m).monitorable {
        return Err(Error::NotMonitorable);
    }
    let regular_part = s.regularization(m);
    let nowhere_dense_part = m ^ &regular_part;
    Ok(Decomposition {
        regular_part,
        nowhere_dense_part,
    })
}

/// Nowhere-dense equivalence: `a △ b` is nowhere dense.
pub fn nd_equivalent(s: &FiniteSpace, a: &PointSet, b: &PointSet) -> bool {
    s.is_nowhere_dense(&(a ^ b))
}

/// All monitorable subsets, in increasing bit-mask order.
pub fn monitorable_family(s: &FiniteSpace) -> Result<Vec<PointSet>> {
    Ok(s.all_subsets()?
        .filter(|a| is_monitorable_frontier(s, a).monitorable)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(s: &FiniteSpace, pts: &[usize]) -> PointSet {
        s.point_set(pts.iter().copied()).unwrap()
    }

    fn sum_example() -> FiniteSpace {
        FiniteSpace::discrete(3).sum(&FiniteSpace::indiscrete(2))
    }

    #[test]
    fn frontier_decider_examples() {
        let i2 = FiniteSpace::indiscrete(2);
        let v = is_monitorable_frontier(&i2, &set(&i2, &[0]));
        assert_eq!(v, MonitorVerdict::refuted_by(i2.full_set()));
        let s = FiniteSpace::sierpinski();
        assert!(is_monitorable_frontier(&s, &s.empty_set()).monitorable);
        assert!(is_monitorable_frontier(&s, &set(&s, &[1])).monitorable);
    }

    #[test]
    fn basis_decider_examples() {
        let d = FiniteSpace::discrete(3);
        for mask in 0..8 {
            assert!(is_monitorable_basis(&d, &PointSet::from_mask(3, mask)).monitorable);
        }
        let i2 = FiniteSpace::indiscrete(2);
        assert!(!is_monitorable_basis(&i2, &set(&i2, &[1])).monitorable);
        let x = sum_example();
        let v = is_monitorable_basis(&x, &set(&x, &[0, 3]));
        assert_eq!(v.witness, Some(set(&x, &[3, 4])));
        assert_eq!(
            is_monitorable_frontier(&x, &set(&x, &[0, 3])).witness,
            Some(set(&x, &[3, 4]))
        );
    }

    #[test]
    fn oracle_examples() {
        let s = FiniteSpace::sierpinski();
        assert!(is_monitorable_oracle(&s, &s.full_set()).unwrap());
        let i2 = FiniteSpace::indiscrete(2);
        assert!(!is_monitorable_oracle(&i2, &set(&i2, &[0])).unwrap());
        assert!(is_monitorable_oracle(&FiniteSpace::discrete(13), &PointSet::empty(13)).is_err());
    }

    #[test]
    fn decompose_examples() {
        let s = FiniteSpace::sierpinski();
        let d = decompose(&s, &set(&s, &[0])).unwrap();
        assert_eq!(d.regular_part, s.full_set());
        assert_eq!(d.nowhere_dense_part, set(&s, &[1]));
        assert!(s.is_nowhere_dense(&d.nowhere_dense_part));

        let d = decompose(&s, &s.full_set()).unwrap();
        assert_eq!(
            (d.regular_part, d.nowhere_dense_part),
            (s.full_set(), s.empty_set())
        );

        let disc = FiniteSpace::discrete(2);
        let d = decompose(&disc, &set(&disc, &[0])).unwrap();
        assert_eq!(
            (d.regular_part, d.nowhere_dense_part),
            (set(&disc, &[0]), disc.empty_set())
        );

        let i2 = FiniteSpace::indiscrete(2);
        assert!(matches!(
            decompose(&i2, &set(&i2, &[0])),
            Err(Error::NotMonitorable)
        ));
    }

    #[test]
    fn decomposition_json_shape() {
        let s = FiniteSpace::sierpinski();
        let d = decompose(&s, &set(&s, &[0])).unwrap();
        assert_eq!(serde_json::to_string(&d).unwrap(), r#"{"O":[0,1],"N":[1]}"#);
    }

    #[test]
    fn nd_equivalence_examples() {
        let s = FiniteSpace::sierpinski();
        let a = set(&s, &[0]);
        assert!(nd_equivalent(&s, &a, &a));
        assert!(nd_equivalent(&s, &a, &s.full_set()));
        let d = FiniteSpace::discrete(2);
        assert!(!nd_equivalent(&d, &set(&d, &[0]), &set(&d, &[1])));
    }

    #[test]
    fn monitorable_family_examples() {
        let i2 = FiniteSpace::indiscrete(2);
        assert_eq!(
            monitorable_family(&i2).unwrap(),
            vec![i2.empty_set(), i2.full_set()]
        );
        assert_eq!(
            monitorable_family(&FiniteSpace::discrete(3)).unwrap().len(),
            8
        );
        let x = FiniteSpace::discrete(1).sum(&FiniteSpace::indiscrete(2));
        let fam = monitorable_family(&x).unwrap();
        let expected: Vec<PointSet> = [&[][..], &[0], &[1, 2], &[0, 1, 2]]
            .iter()
            .map(|p| set(&x, p))
            .collect();
        assert_eq!(fam, expected);
    }

    #[test]
    fn h_l_examples() {
        let d = FiniteSpace::discrete(2);
        assert_eq!(minimal_opens(&d), vec![set(&d, &[0]), set(&d, &[1])]);
        assert_eq!(compute_h_l(&d), (d.full_set(), d.empty_set()));

        let i2 = FiniteSpace::indiscrete(2);
        assert_eq!(minimal_opens(&i2), vec![i2.full_set()]);
        assert_eq!(compute_h_l(&i2), (i2.full_set(), i2.empty_set()));

        let s = FiniteSpace::sierpinski();
        assert_eq!(minimal_opens(&s), vec![set(&s, &[0])]);
        assert_eq!(compute_h_l(&s), (set(&s, &[0]), s.empty_set()));
    }

    #[test]
    fn decomposed_decider_examples() {
        let i2 = FiniteSpace::indiscrete(2);
        assert!(!is_monitorable_decomposed(&i2, &set(&i2, &[0])));
        let d = FiniteSpace::discrete(3);
        assert!((0..8).all(|m| is_monitorable_decomposed(&d, &PointSet::from_mask(3, m))));
    }

    #[test]
    fn hyperconnected_examples() {
        assert!(is_hyperconnected(&FiniteSpace::indiscrete(4)));
        assert!(!is_hyperconnected(&FiniteSpace::discrete(2)));
        let s = FiniteSpace::sierpinski();
        assert!(is_monitorable_hyperconnected(&s, &set(&s, &[1])).unwrap());
        assert!(matches!(
            is_monitorable_hyperconnected(&FiniteSpace::discrete(2), &PointSet::empty(2)),
            Err(Error::NotHyperconnected)
        ));
        let e = FiniteSpace::discrete(0);
        assert!(matches!(
            is_monitorable_hyperconnected(&e, &e.empty_set()),
            Err(Error::EmptySpace)
        ));
    }
}
