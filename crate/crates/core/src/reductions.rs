//! Continuous reductions witnessing hardness of monitorability, with
//! independent membership tests for their source sets.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::symbolic::{
    grid_is_monitorable, scott_is_monitorable, EventuallyPeriodicWord, GridSet, ScottSet, Seq,
};

/// A point `α ∈ 2^(ℕ²)`, with `α(m, n)` read from column `m`, bit `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridAlpha(pub GridSet);

/// `α ∈ S₃` iff some column of `α` has infinitely many zeros.
///
/// A default word with a zero in its period qualifies because infinitely
/// many columns use it.
pub fn in_s3(alpha: &GridAlpha) -> bool {
    let GridAlpha(grid) = alpha;
    grid.default.is_coinfinite()
        || grid
            .exceptional
            .values()
            .any(EventuallyPeriodicWord::is_coinfinite)
}

/// `f(α) = {(m, 2n) : α(m, n) = 0}`.
pub fn grid_reduction(alpha: &GridAlpha) -> GridSet {
    alpha.0.map_columns(|w| w.complement().spread_to_even())
}

/// `α ∈ S₃` exactly when `f(α)` is not monitorable.
pub fn certify_grid_reduction(alpha: &GridAlpha) -> bool {
    in_s3(alpha) == !grid_is_monitorable(&grid_reduction(alpha)).monitorable
}

fn random_word(rng: &mut ChaCha8Rng, cofinite_bias: f64) -> EventuallyPeriodicWord {
    let pre_len = rng.random_range(0..5);
    let per_len = rng.random_range(1..5);
    let pre = (0..pre_len).map(|_| rng.random()).collect();
    let per = if rng.random_bool(cofinite_bias) {
        vec![true; per_len]
    } else if rng.random_bool(0.5) {
        vec![rng.random(); per_len]
    } else {
        (0..per_len).map(|_| rng.random()).collect()
    };
    EventuallyPeriodicWord::new(pre, per).expect("non-empty period")
}

/// A random eventually periodic `α` with up to four exceptional columns.
pub fn random_alpha(rng: &mut ChaCha8Rng) -> GridAlpha {
    // Half the inputs lean towards all-cofinite columns so both sides of S₃
    // are well represented.
    let bias = if rng.random_bool(0.5) { 0.9 } else { 0.0 };
    let mut grid = GridSet::uniform(random_word(rng, bias));
    for _ in 0..rng.random_range(0..5) {
        let m = rng.random_range(0..12);
        grid.exceptional.insert(m, random_word(rng, bias));
    }
    GridAlpha(grid)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertificationReport {
    pub cases: usize,
    pub failures: Vec<String>,
}

pub fn certify_grid_random(seed: u64, cases: usize) -> CertificationReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let failures = (0..cases)
        .map(|_| random_alpha(&mut rng))
        .filter(|alpha| !certify_grid_reduction(alpha))
        .map(|alpha| crate::symbolic::SymbolicSet::Grid(alpha.0).to_string())
        .collect();
    CertificationReport { cases, failures }
}

/// A tree on ℕ: a finite prefix-closed part plus at most one infinite spine
/// `{u · kʲ : j ≥ 1}` hanging off an explicit node `u`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TreePresentation {
    explicit_nodes: BTreeSet<Seq>,
    spine: Option<(Seq, usize)>,
}

impl TreePresentation {
    pub fn new(explicit_nodes: BTreeSet<Seq>, spine: Option<(Seq, usize)>) -> Result<Self> {
        for node in &explicit_nodes {
            if let Some((_, parent)) = node.split_last() {
                if !explicit_nodes.contains(parent) {
                    return Err(Error::MalformedTree(format!(
                        "node {node:?} is present but its parent {parent:?} is not"
                    )));
                }
            }
        }
        if let Some((u, _)) = &spine {
            if !explicit_nodes.contains(u) {
                return Err(Error::MalformedTree(format!(
                    "spine base {u:?} is not a node of the tree"
                )));
            }
        }
        Ok(TreePresentation {
            explicit_nodes,
            spine,
        })
    }

    pub fn empty() -> Self {
        TreePresentation {
            explicit_nodes: BTreeSet::new(),
            spine: None,
        }
    }

    pub fn explicit_nodes(&self) -> &BTreeSet<Seq> {
        &self.explicit_nodes
    }

    pub fn spine(&self) -> Option<&(Seq, usize)> {
        self.spine.as_ref()
    }

    pub fn contains(&self, node: &[usize]) -> bool {
        self.explicit_nodes.contains(node)
            || self.spine.as_ref().is_some_and(|(u, k)| {
                node.len() > u.len()
                    && node.starts_with(u)
                    && node[u.len()..].iter().all(|d| d == k)
            })
    }

    /// Canonical when the spine base is empty or does not itself end in the spine digit.
    pub fn is_canonical(&self) -> bool {
        self.spine.as_ref().is_none_or(|(u, k)| u.last() != Some(k))
    }

    /// Nodes of the explicit part with no explicit child.
    pub fn leaves(&self) -> Vec<Seq> {
        self.explicit_nodes
            .iter()
            .filter(|n| {
                !self
                    .explicit_nodes
                    .range::<Seq, _>((std::ops::Bound::Excluded(*n), std::ops::Bound::Unbounded))
                    .next()
                    .is_some_and(|next| next.len() > n.len() && next.starts_with(n))
            })
            .cloned()
            .collect()
    }
}

/// The finite part is well founded; a spine is an infinite branch.
pub fn is_well_founded(t: &TreePresentation) -> bool {
    t.spine.is_none()
}

/// The tree itself, as a subset of `ℕ^<ω ∪ {∞}`.
pub fn tree_reduction(t: &TreePresentation) -> ScottSet {
    ScottSet {
        infinity_member: false,
        explicit_nodes: t.explicit_nodes.clone(),
        cone_roots: BTreeSet::new(),
        spines: t.spine.iter().cloned().collect(),
    }
}

/// A tree is well founded exactly when its image is monitorable.
pub fn certify_tree_reduction(t: &TreePresentation) -> bool {
    is_well_founded(t) == scott_is_monitorable(&tree_reduction(t))
}

/// Every prefix-closed tree over digits `0..width` with nodes of length at most `depth`.
pub fn all_finite_trees(width: usize, depth: usize) -> Vec<TreePresentation> {
    fn subtrees(prefix: &Seq, width: usize, remaining: usize) -> Vec<Vec<Seq>> {
        let mut below: Vec<Vec<Seq>> = vec![vec![prefix.clone()]];
        if remaining > 0 {
            for d in 0..width {
                let mut child = prefix.clone();
                child.push(d);
                let options = subtrees(&child, width, remaining - 1);
                below = below
                    .iter()
                    .flat_map(|acc| {
                        std::iter::once(acc.clone()).chain(options.iter().map(move |o| {
                            let mut next = acc.clone();
                            next.extend(o.iter().cloned());
                            next
                        }))
                    })
                    .collect();
            }
        }
        below
    }
    std::iter::once(TreePresentation::empty())
        .chain(
            subtrees(&Vec::new(), width, depth)
                .into_iter()
                .map(|nodes| {
                    TreePresentation::new(nodes.into_iter().collect(), None)
                        .expect("prefix closed by construction")
                }),
        )
        .collect()
}

/// The finite trees, plus each non-empty one with a spine at every leaf and digit.
pub fn tree_sweep(width: usize, depth: usize) -> Vec<TreePresentation> {
    let mut out = Vec::new();
    for t in all_finite_trees(width, depth) {
        for leaf in t.leaves() {
            for k in 0..width {
                out.push(
                    TreePresentation::new(t.explicit_nodes.clone(), Some((leaf.clone(), k)))
                        .expect("leaf is a node"),
                );
            }
        }
        out.push(t);
    }
    out
}

pub fn certify_tree_sweep(width: usize, depth: usize) -> CertificationReport {
    let trees = tree_sweep(width, depth);
    let failures = trees
        .iter()
        .filter(|t| !certify_tree_reduction(t))
        .map(|t| tree_reduction(t).to_string())
        .collect();
    CertificationReport {
        cases: trees.len(),
        failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn w(pre: &str, per: &str) -> EventuallyPeriodicWord {
        EventuallyPeriodicWord::from_bits(pre, per).unwrap()
    }

    fn node(s: &[usize]) -> Seq {
        s.to_vec()
    }

    #[test]
    fn s3_examples() {
        assert!(!in_s3(&GridAlpha(GridSet::uniform(w("", "1")))));
        assert!(in_s3(&GridAlpha(
            GridSet::uniform(w("", "1")).with_column(2, w("", "0"))
        )));
        assert!(in_s3(&GridAlpha(GridSet::uniform(w("", "0")))));
    }

    #[test]
    fn grid_reduction_examples() {
        let ones = GridAlpha(GridSet::uniform(w("", "1")));
        assert_eq!(grid_reduction(&ones), GridSet::uniform(w("", "0")));

        let zero_col = GridAlpha(GridSet::uniform(w("", "1")).with_column(2, w("", "0")));
        assert_eq!(grid_reduction(&zero_col).column(2), &w("", "10"));

        let alternating = GridAlpha(GridSet::uniform(w("", "10")));
        let image = grid_reduction(&alternating);
        assert_eq!(image.default, w("", "0010"));
        let members: Vec<usize> = (0..16).filter(|&n| image.contains(5, n)).collect();
        assert_eq!(members, vec![2, 6, 10, 14]);
    }

    #[test]
    fn certify_grid_examples() {
        assert!(certify_grid_reduction(&GridAlpha(GridSet::uniform(w(
            "", "1"
        )))));
        assert!(certify_grid_reduction(&GridAlpha(
            GridSet::uniform(w("", "1")).with_column(0, w("", "0"))
        )));
        let report = certify_grid_random(7, 500);
        assert_eq!(report.cases, 500);
        assert!(report.failures.is_empty(), "{:?}", report.failures);
    }

    #[test]
    fn random_alphas_cover_both_sides() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let inside = (0..500).filter(|_| in_s3(&random_alpha(&mut rng))).count();
        assert!(inside > 50 && inside < 450, "{inside}");
    }

    #[test]
    fn image_is_codense() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let image = grid_reduction(&random_alpha(&mut rng));
            assert!(image.default.is_coinfinite());
            assert!(image
                .exceptional
                .values()
                .all(EventuallyPeriodicWord::is_coinfinite));
        }
    }

    #[test]
    fn tree_examples() {
        let empty = TreePresentation::empty();
        assert!(is_well_founded(&empty));
        assert_eq!(tree_reduction(&empty), ScottSet::default());
        assert!(scott_is_monitorable(&tree_reduction(&empty)));

        let small =
            TreePresentation::new([node(&[]), node(&[0]), node(&[1])].into(), None).unwrap();
        assert!(is_well_founded(&small));
        assert!(scott_is_monitorable(&tree_reduction(&small)));

        let ill = TreePresentation::new([node(&[])].into(), Some((node(&[]), 0))).unwrap();
        assert!(!is_well_founded(&ill));
        assert!(!scott_is_monitorable(&tree_reduction(&ill)));
        assert!(ill.contains(&[0, 0, 0]) && !ill.contains(&[1]));
        assert!(certify_tree_reduction(&ill));
    }

    #[test]
    fn malformed_trees_rejected() {
        assert!(matches!(
            TreePresentation::new([node(&[0])].into(), None),
            Err(Error::MalformedTree(_))
        ));
        assert!(matches!(
            TreePresentation::new([node(&[])].into(), Some((node(&[1]), 0))),
            Err(Error::MalformedTree(_))
        ));
    }

    #[test]
    fn tree_counts() {
        // Binary trees of height at most d: T(d) = 1 + T(d-1)², T(-1) = 1.
        assert_eq!(all_finite_trees(2, 0).len(), 2);
        assert_eq!(all_finite_trees(2, 1).len(), 5);
        assert_eq!(all_finite_trees(2, 3).len(), 677);
        let t = TreePresentation::new(
            [node(&[]), node(&[0]), node(&[0, 1]), node(&[1])].into(),
            None,
        )
        .unwrap();
        assert_eq!(t.leaves(), vec![node(&[0, 1]), node(&[1])]);
    }

    #[test]
    fn tree_sweep_certifies() {
        let report = certify_tree_sweep(2, 3);
        assert!(report.failures.is_empty(), "{:?}", report.failures);
        assert!(report.cases > 677);
    }

    #[test]
    fn tree_reduction_is_injective_on_canonical_presentations() {
        let canonical: Vec<TreePresentation> = tree_sweep(2, 3)
            .into_iter()
            .filter(|t| t.is_canonical())
            .collect();
        let images: HashSet<ScottSet> = canonical.iter().map(tree_reduction).collect();
        assert_eq!(images.len(), canonical.len());

        // Distinct canonical presentations also denote distinct trees.
        let nodes: Vec<Seq> = (0..=6)
            .flat_map(|len| {
                (0..1u32 << len)
                    .map(move |bits| (0..len).map(|i| (bits >> i & 1) as usize).collect())
            })
            .collect();
        let signatures: HashSet<Vec<bool>> = canonical
            .iter()
            .map(|t| {
                nodes
                    .iter()
                    .map(|n| tree_reduction(t).contains(n))
                    .collect()
            })
            .collect();
        assert_eq!(signatures.len(), canonical.len());
    }
}
