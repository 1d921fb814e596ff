//! Where the family of monitorable sets sits in the Borel hierarchy.
//!
//! For a countable second countable space the family is either the whole
//! powerset, or Σ⁰₂, or Π⁰₃-complete. Which case holds is read off the
//! structure of the space: isolated points dense gives everything; otherwise
//! remove the union `H` of the minimal open sets and look for infinitely many
//! pairwise disjoint opens inside `L = Int(X \ H)`.
//!
//! Spaces are presented through [`SpacePresentation`]; built-in presentations
//! are registered by name in a [`PresentationRegistry`].

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::monitor::{compute_h_l, is_hyperconnected, minimal_opens};
use crate::symbolic::{EventuallyPeriodicWord, GridSet};
use crate::topology::{FiniteSpace, PointSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ComplexityTag {
    AllSets,
    Sigma02Branch,
    Pi03Complete,
    Pi11Complete,
    Unknown,
}

impl fmt::Display for ComplexityTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Exact position inside the Σ⁰₂ branch, known only for some built-ins.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Refinement {
    Clopen,
    Closed,
    Sigma02Complete,
}

/// An open set offered as a member of a pairwise disjoint family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum OpenWitness {
    Points(Vec<usize>),
    Described(String),
}

/// Result of searching for pairwise disjoint non-empty opens inside `L`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DisjointSearch {
    /// No such family has more than `bound` members; `family` attains it.
    Bounded {
        bound: usize,
        family: Vec<OpenWitness>,
    },
    /// `family` has the requested size; `unbounded` certifies that every size is attainable.
    Witnesses {
        family: Vec<OpenWitness>,
        unbounded: bool,
    },
    /// Nothing could be concluded within the budget.
    Inconclusive { family: Vec<OpenWitness> },
}

impl DisjointSearch {
    fn family_len(&self) -> usize {
        match self {
            DisjointSearch::Bounded { family, .. }
            | DisjointSearch::Witnesses { family, .. }
            | DisjointSearch::Inconclusive { family } => family.len(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinimalOpensSummary {
    /// Number of minimal non-empty opens; `None` when there are infinitely many.
    pub count: Option<usize>,
    pub h: String,
    pub l: String,
}

/// What the classifier needs to know about a space.
pub trait SpacePresentation: Send + Sync {
    fn name(&self) -> String;

    fn isolated_points_dense(&self) -> bool;

    fn second_countable(&self) -> bool {
        true
    }

    /// Reason the family is complete coanalytic, when known.
    fn coanalytic_certificate(&self) -> Option<String> {
        None
    }

    fn minimal_opens_summary(&self) -> MinimalOpensSummary;

    /// Looks for `k` pairwise disjoint non-empty opens inside `L`.
    fn disjoint_opens_in_l(&self, k: usize) -> DisjointSearch;

    fn refinement(&self) -> Option<Refinement> {
        None
    }

    fn hyperconnected(&self) -> Option<bool> {
        None
    }

    fn note(&self) -> Option<String> {
        None
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Evidence {
    pub space: String,
    pub isolated_points_dense: bool,
    pub second_countable: bool,
    pub minimal_opens: MinimalOpensSummary,
    pub disjoint_opens_in_l: Option<DisjointSearch>,
    pub hyperconnected: Option<bool>,
    pub certificate: Option<String>,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComplexityVerdict {
    pub tag: ComplexityTag,
    pub refinement: Option<Refinement>,
    pub evidence: Evidence,
    pub budget_used: usize,
}

pub fn classify(p: &dyn SpacePresentation, budget: usize) -> Result<ComplexityVerdict> {
    if budget == 0 {
        return Err(Error::InvalidArgument("budget must be at least 1".into()));
    }
    let mut evidence = Evidence {
        space: p.name(),
        isolated_points_dense: p.isolated_points_dense(),
        second_countable: p.second_countable(),
        minimal_opens: p.minimal_opens_summary(),
        disjoint_opens_in_l: None,
        hyperconnected: p.hyperconnected(),
        certificate: p.coanalytic_certificate(),
        note: p.note(),
    };
    let verdict = |tag, refinement, evidence, budget_used| ComplexityVerdict {
        tag,
        refinement,
        evidence,
        budget_used,
    };

    if evidence.isolated_points_dense {
        return Ok(verdict(ComplexityTag::AllSets, None, evidence, 0));
    }
    if !evidence.second_countable {
        let tag = if evidence.certificate.is_some() {
            ComplexityTag::Pi11Complete
        } else {
            ComplexityTag::Unknown
        };
        return Ok(verdict(tag, None, evidence, 0));
    }

    let search = p.disjoint_opens_in_l(budget);
    let used = search.family_len();
    let (tag, refinement) = match &search {
        DisjointSearch::Bounded { .. } => (ComplexityTag::Sigma02Branch, p.refinement()),
        DisjointSearch::Witnesses {
            family,
            unbounded: true,
        } if family.len() >= budget => (ComplexityTag::Pi03Complete, None),
        _ => (ComplexityTag::Unknown, None),
    };
    evidence.disjoint_opens_in_l = Some(search);
    Ok(verdict(tag, refinement, evidence, used))
}

/// Adapter classifying a finite space through its `H`/`L` split.
pub struct FinitePresentation {
    space: FiniteSpace,
    minimal: Vec<PointSet>,
    h: PointSet,
    l: PointSet,
}

pub fn finite_presentation(space: FiniteSpace) -> FinitePresentation {
    let minimal = minimal_opens(&space);
    let (h, l) = compute_h_l(&space);
    FinitePresentation {
        space,
        minimal,
        h,
        l,
    }
}

impl FinitePresentation {
    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    fn is_indiscrete(&self) -> bool {
        self.space.len() >= 2
            && self
                .space
                .minopens()
                .iter()
                .all(|u| u.count() == self.space.len())
    }
}

/// Largest family of pairwise disjoint sets among `candidates`, by exhaustive search.
fn max_disjoint_family(candidates: &[PointSet]) -> Vec<PointSet> {
    fn search(
        candidates: &[PointSet],
        start: usize,
        chosen: &mut Vec<usize>,
        best: &mut Vec<usize>,
    ) {
        if chosen.len() > best.len() {
            *best = chosen.clone();
        }
        if chosen.len() + (candidates.len() - start) <= best.len() {
            return;
        }
        for i in start..candidates.len() {
            if chosen
                .iter()
                .all(|&j| candidates[j].is_disjoint(&candidates[i]))
            {
                chosen.push(i);
                search(candidates, i + 1, chosen, best);
                chosen.pop();
            }
        }
    }
    let mut best = Vec::new();
    search(candidates, 0, &mut Vec::new(), &mut best);
    best.into_iter().map(|i| candidates[i].clone()).collect()
}

impl SpacePresentation for FinitePresentation {
    fn name(&self) -> String {
        format!("finite({})", self.space.len())
    }

    fn isolated_points_dense(&self) -> bool {
        self.space.closure(&self.space.isolated_points()) == self.space.full_set()
    }

    fn minimal_opens_summary(&self) -> MinimalOpensSummary {
        MinimalOpensSummary {
            count: Some(self.minimal.len()),
            h: format!("{{{}}}", self.h),
            l: format!("{{{}}}", self.l),
        }
    }

    /// Every non-empty open of `L` contains some `minopen[x] ⊆ L`, so a
    /// largest disjoint family can be drawn from those neighbourhoods.
    fn disjoint_opens_in_l(&self, _k: usize) -> DisjointSearch {
        let mut candidates: Vec<PointSet> = Vec::new();
        for x in self.l.iter() {
            let u = self.space.minopen(x);
            if !candidates.contains(u) {
                candidates.push(u.clone());
            }
        }
        let family = max_disjoint_family(&candidates);
        DisjointSearch::Bounded {
            bound: family.len(),
            family: family
                .iter()
                .map(|u| OpenWitness::Points(u.to_vec()))
                .collect(),
        }
    }

    fn refinement(&self) -> Option<Refinement> {
        if self.is_indiscrete() {
            Some(Refinement::Closed)
        } else if self.h == self.space.full_set() && self.minimal.len() >= 2 {
            Some(Refinement::Clopen)
        } else {
            None
        }
    }

    fn hyperconnected(&self) -> Option<bool> {
        Some(is_hyperconnected(&self.space))
    }

    fn note(&self) -> Option<String> {
        Some(
            "finite carrier: the monitorable family is a finite subset of P(X), so the verdict \
             records which branch of the classification procedure applies"
                .into(),
        )
    }
}

/// Countable or finite discrete space.
struct DiscreteBuiltin {
    size: Option<usize>,
}

impl SpacePresentation for DiscreteBuiltin {
    fn name(&self) -> String {
        match self.size {
            Some(n) => format!("discrete({n})"),
            None => "discrete".into(),
        }
    }

    fn isolated_points_dense(&self) -> bool {
        true
    }

    fn minimal_opens_summary(&self) -> MinimalOpensSummary {
        MinimalOpensSummary {
            count: self.size,
            h: "X (all singletons)".into(),
            l: "{}".into(),
        }
    }

    fn disjoint_opens_in_l(&self, _k: usize) -> DisjointSearch {
        DisjointSearch::Bounded {
            bound: 0,
            family: Vec::new(),
        }
    }
}

/// Indiscrete space on `n` points, `M(X) = {∅, X}`.
struct IndiscreteBuiltin {
    size: usize,
}

impl SpacePresentation for IndiscreteBuiltin {
    fn name(&self) -> String {
        format!("indiscrete({})", self.size)
    }

    fn isolated_points_dense(&self) -> bool {
        self.size <= 1
    }

    fn minimal_opens_summary(&self) -> MinimalOpensSummary {
        MinimalOpensSummary {
            count: Some(usize::from(self.size > 0)),
            h: "X".into(),
            l: "{}".into(),
        }
    }

    fn disjoint_opens_in_l(&self, _k: usize) -> DisjointSearch {
        DisjointSearch::Bounded {
            bound: 0,
            family: Vec::new(),
        }
    }

    fn refinement(&self) -> Option<Refinement> {
        Some(Refinement::Closed)
    }

    fn hyperconnected(&self) -> Option<bool> {
        Some(true)
    }
}

/// Discrete `Y` (of the given size, or countably infinite) plus a two-point indiscrete `Z`.
struct SumBuiltin {
    discrete_size: Option<usize>,
}

impl SpacePresentation for SumBuiltin {
    fn name(&self) -> String {
        match self.discrete_size {
            Some(k) => format!("sum({k})"),
            None => "sum".into(),
        }
    }

    fn isolated_points_dense(&self) -> bool {
        false
    }

    fn minimal_opens_summary(&self) -> MinimalOpensSummary {
        MinimalOpensSummary {
            count: self.discrete_size.map(|k| k + 1),
            h: "X (singletons of Y and Z)".into(),
            l: "{}".into(),
        }
    }

    fn disjoint_opens_in_l(&self, _k: usize) -> DisjointSearch {
        DisjointSearch::Bounded {
            bound: 0,
            family: Vec::new(),
        }
    }

    fn refinement(&self) -> Option<Refinement> {
        Some(Refinement::Clopen)
    }

    fn hyperconnected(&self) -> Option<bool> {
        Some(false)
    }
}

/// ℕ with the cofinite topology.
struct CofiniteBuiltin;

impl SpacePresentation for CofiniteBuiltin {
    fn name(&self) -> String {
        "cofinite".into()
    }

    fn isolated_points_dense(&self) -> bool {
        false
    }

    fn minimal_opens_summary(&self) -> MinimalOpensSummary {
        MinimalOpensSummary {
            count: Some(0),
            h: "{}".into(),
            l: "X".into(),
        }
    }

    /// Two non-empty opens are cofinite and so always meet.
    fn disjoint_opens_in_l(&self, _k: usize) -> DisjointSearch {
        DisjointSearch::Bounded {
            bound: 1,
            family: vec![OpenWitness::Described("X".into())],
        }
    }

    fn refinement(&self) -> Option<Refinement> {
        Some(Refinement::Sigma02Complete)
    }

    fn hyperconnected(&self) -> Option<bool> {
        Some(true)
    }
}

/// ℕ² under the Alexandrov topology of the column orders.
pub struct GridBuiltin;

impl GridBuiltin {
    /// The whole column `m`, the tail `{(m, n) : n ≥ 0}`.
    pub fn column_tail(m: usize) -> GridSet {
        GridSet::uniform(EventuallyPeriodicWord::constant(false))
            .with_column(m, EventuallyPeriodicWord::constant(true))
    }
}

impl SpacePresentation for GridBuiltin {
    fn name(&self) -> String {
        "grid".into()
    }

    fn isolated_points_dense(&self) -> bool {
        false
    }

    fn minimal_opens_summary(&self) -> MinimalOpensSummary {
        MinimalOpensSummary {
            count: Some(0),
            h: "{}".into(),
            l: "X".into(),
        }
    }

    fn disjoint_opens_in_l(&self, k: usize) -> DisjointSearch {
        DisjointSearch::Witnesses {
            family: (0..k)
                .map(|m| OpenWitness::Described(format!("col {m}")))
                .collect(),
            unbounded: true,
        }
    }

    fn hyperconnected(&self) -> Option<bool> {
        Some(false)
    }
}

/// `ℕ^<ω ∪ {∞}` with the Scott topology; not second countable.
struct ScottBuiltin;

impl SpacePresentation for ScottBuiltin {
    fn name(&self) -> String {
        "scott".into()
    }

    fn isolated_points_dense(&self) -> bool {
        false
    }

    fn second_countable(&self) -> bool {
        false
    }

    fn coanalytic_certificate(&self) -> Option<String> {
        Some(
            "a tree on N is a monitorable subset iff it is well founded, so the well-founded trees \
             reduce to M(X) by the identity map"
                .into(),
        )
    }

    fn minimal_opens_summary(&self) -> MinimalOpensSummary {
        MinimalOpensSummary {
            count: Some(0),
            h: "{}".into(),
            l: "X".into(),
        }
    }

    fn disjoint_opens_in_l(&self, _k: usize) -> DisjointSearch {
        DisjointSearch::Bounded {
            bound: 1,
            family: vec![OpenWitness::Described("X".into())],
        }
    }

    fn hyperconnected(&self) -> Option<bool> {
        Some(true)
    }
}

type Constructor = fn(Option<usize>) -> Result<Box<dyn SpacePresentation>>;

/// Built-in presentations by name. Names take an optional size, `indiscrete(3)`.
pub struct PresentationRegistry {
    constructors: BTreeMap<&'static str, Constructor>,
}

impl PresentationRegistry {
    pub fn empty() -> Self {
        PresentationRegistry {
            constructors: BTreeMap::new(),
        }
    }

    pub fn register(&mut self, name: &'static str, constructor: Constructor) {
        self.constructors.insert(name, constructor);
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.constructors.keys().copied()
    }

    pub fn build(&self, spec: &str) -> Result<Box<dyn SpacePresentation>> {
        let spec = spec.trim();
        let (name, arg) = match spec.split_once('(') {
            Some((name, rest)) => {
                let inner = rest
                    .strip_suffix(')')
                    .ok_or_else(|| Error::UnknownBuiltin(spec.to_string()))?;
                let n = inner
                    .trim()
                    .parse()
                    .map_err(|_| Error::UnknownBuiltin(spec.to_string()))?;
                (name.trim(), Some(n))
            }
            None => (spec, None),
        };
        let constructor = self
            .constructors
            .get(name)
            .ok_or_else(|| Error::UnknownBuiltin(spec.to_string()))?;
        constructor(arg)
    }
}

fn no_argument(name: &str, arg: Option<usize>) -> Result<()> {
    match arg {
        None => Ok(()),
        Some(_) => Err(Error::UnknownBuiltin(format!("{name} takes no size"))),
    }
}

impl Default for PresentationRegistry {
    fn default() -> Self {
        let mut r = PresentationRegistry::empty();
        r.register("discrete", |n| Ok(Box::new(DiscreteBuiltin { size: n })));
        r.register("indiscrete", |n| {
            Ok(Box::new(IndiscreteBuiltin {
                size: n.unwrap_or(2),
            }))
        });
        r.register("sum", |n| Ok(Box::new(SumBuiltin { discrete_size: n })));
        r.register("cofinite", |n| {
            no_argument("cofinite", n)?;
            Ok(Box::new(CofiniteBuiltin))
        });
        r.register("grid", |n| {
            no_argument("grid", n)?;
            Ok(Box::new(GridBuiltin))
        });
        r.register("scott", |n| {
            no_argument("scott", n)?;
            Ok(Box::new(ScottBuiltin))
        });
        r
    }
}

pub fn builtin_presentation(name: &str) -> Result<Box<dyn SpacePresentation>> {
    PresentationRegistry::default().build(name)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn classify_builtin(name: &str, budget: usize) -> ComplexityVerdict {
        classify(builtin_presentation(name).unwrap().as_ref(), budget).unwrap()
    }

    fn classify_finite(space: FiniteSpace) -> ComplexityVerdict {
        classify(&finite_presentation(space), 8).unwrap()
    }

    #[test]
    fn builtin_verdicts() {
        let v = classify_builtin("indiscrete(2)", 4);
        assert_eq!(
            (v.tag, v.refinement),
            (ComplexityTag::Sigma02Branch, Some(Refinement::Closed))
        );
        let v = classify_builtin("grid", 5);
        assert_eq!(v.tag, ComplexityTag::Pi03Complete);
        assert_eq!(v.budget_used, 5);
        let v = classify_builtin("cofinite", 4);
        assert_eq!(
            (v.tag, v.refinement),
            (
                ComplexityTag::Sigma02Branch,
                Some(Refinement::Sigma02Complete)
            )
        );
        assert_eq!(
            classify_builtin("discrete(3)", 4).tag,
            ComplexityTag::AllSets
        );
        assert_eq!(classify_builtin("discrete", 4).tag, ComplexityTag::AllSets);
        assert_eq!(
            classify_builtin("scott", 4).tag,
            ComplexityTag::Pi11Complete
        );
        let v = classify_builtin("sum(4)", 4);
        assert_eq!(
            (v.tag, v.refinement),
            (ComplexityTag::Sigma02Branch, Some(Refinement::Clopen))
        );
    }

    #[test]
    fn registry_names() {
        let r = PresentationRegistry::default();
        assert_eq!(
            r.names().collect::<Vec<_>>(),
            vec!["cofinite", "discrete", "grid", "indiscrete", "scott", "sum"]
        );
        for bad in ["torus", "grid(2)", "indiscrete(x)", "sum(3"] {
            assert!(
                matches!(r.build(bad), Err(Error::UnknownBuiltin(_))),
                "{bad}"
            );
        }
    }

    #[test]
    fn builtin_disjoint_searches() {
        match builtin_presentation("grid").unwrap().disjoint_opens_in_l(5) {
            DisjointSearch::Witnesses { family, unbounded } => {
                assert!(unbounded);
                assert_eq!(family.len(), 5);
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            builtin_presentation("cofinite")
                .unwrap()
                .disjoint_opens_in_l(3),
            DisjointSearch::Bounded { bound: 1, .. }
        ));
        assert!(matches!(
            builtin_presentation("indiscrete(3)")
                .unwrap()
                .disjoint_opens_in_l(3),
            DisjointSearch::Bounded { bound: 0, .. }
        ));
    }

    #[test]
    fn grid_column_tails_are_disjoint() {
        for k in 1..=64 {
            let cols: Vec<GridSet> = (0..k).map(GridBuiltin::column_tail).collect();
            for (i, a) in cols.iter().enumerate() {
                assert!(a.contains(i, 0) && a.contains(i, 17));
                for (j, b) in cols.iter().enumerate().skip(i + 1) {
                    for m in 0..=k {
                        for n in 0..8 {
                            assert!(
                                !(a.contains(m, n) && b.contains(m, n)),
                                "{i} {j} meet at ({m},{n})"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn finite_adapter_examples() {
        assert_eq!(
            classify_finite(FiniteSpace::sierpinski()).tag,
            ComplexityTag::AllSets
        );

        let i2 = finite_presentation(FiniteSpace::indiscrete(2));
        assert!(!i2.isolated_points_dense());
        assert!(matches!(
            i2.disjoint_opens_in_l(3),
            DisjointSearch::Bounded { bound: 0, .. }
        ));
        let v = classify(&i2, 3).unwrap();
        assert_eq!(
            (v.tag, v.refinement),
            (ComplexityTag::Sigma02Branch, Some(Refinement::Closed))
        );

        let sum = FiniteSpace::discrete(3).sum(&FiniteSpace::indiscrete(2));
        let p = finite_presentation(sum.clone());
        assert!(!p.isolated_points_dense());
        assert_eq!(p.minimal_opens_summary().l, "{}");
        let v = classify_finite(sum);
        assert_eq!(
            (v.tag, v.refinement),
            (ComplexityTag::Sigma02Branch, Some(Refinement::Clopen))
        );

        assert_eq!(
            classify_finite(FiniteSpace::discrete(3)).tag,
            ComplexityTag::AllSets
        );
    }

    #[test]
    fn verdict_json_shape() {
        let v = classify_builtin("cofinite", 2);
        let json = serde_json::to_value(&v).unwrap();
        assert_eq!(json["tag"], "Sigma02Branch");
        assert_eq!(json["refinement"], "Sigma02Complete");
        assert_eq!(json["evidence"]["disjoint_opens_in_l"]["kind"], "bounded");
        assert_eq!(json["budget_used"], 1);
    }

    #[test]
    fn zero_budget_rejected() {
        assert!(classify(builtin_presentation("grid").unwrap().as_ref(), 0).is_err());
    }

    #[test]
    fn max_disjoint_family_search() {
        let s = |pts: &[usize]| PointSet::from_points(5, pts.iter().copied()).unwrap();
        let cands = vec![s(&[0, 1, 2]), s(&[0]), s(&[1]), s(&[2, 3]), s(&[3, 4])];
        assert_eq!(max_disjoint_family(&cands).len(), 3);
        assert!(max_disjoint_family(&[]).is_empty());
    }
}
