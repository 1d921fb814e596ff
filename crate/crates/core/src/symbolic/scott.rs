use std::collections::BTreeSet;
use std::fmt;

/// A finite sequence of naturals, a node of ℕ^<ω.
pub type Seq = Vec<usize>;

/// A subset of `ℕ^<ω ∪ {∞}` under the Scott topology of the prefix order
/// with `∞` on top.
///
/// Non-empty opens are the up-closed sets meeting every infinite branch; they
/// all contain `∞`, so the space is hyperconnected and monitorability reduces
/// to one of `A`, `X \ A` having non-empty interior.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct ScottSet {
    pub infinity_member: bool,
    pub explicit_nodes: BTreeSet<Seq>,
    /// Each root contributes itself and all of its extensions.
    pub cone_roots: BTreeSet<Seq>,
    /// `(u, k)` contributes `u · kʲ` for every `j ≥ 0`.
    pub spines: BTreeSet<(Seq, usize)>,
}

impl ScottSet {
    pub fn contains(&self, node: &[usize]) -> bool {
        self.explicit_nodes.contains(node)
            || self.cone_roots.iter().any(|r| node.starts_with(r))
            || self
                .spines
                .iter()
                .any(|(u, k)| node.starts_with(u) && node[u.len()..].iter().all(|d| d == k))
    }

    /// `Int A ≠ ∅`.
    ///
    /// A full cone lies inside `A` only below a cone root, and finitely many
    /// roots bar every branch only when the empty sequence is among them.
    pub fn interior_nonempty(&self) -> bool {
        self.infinity_member && self.cone_roots.contains(&Vec::new())
    }

    /// `Int(X \ A) ≠ ∅`.
    ///
    /// Branches through a cone root or along a spine never leave the closure
    /// of `A`; without cones and spines `A` is finite, and any node deeper than
    /// its explicit part has a cone disjoint from it.
    pub fn complement_interior_nonempty(&self) -> bool {
        !self.infinity_member && self.cone_roots.is_empty() && self.spines.is_empty()
    }
}

pub fn scott_interior_nonempty(a: &ScottSet) -> bool {
    a.interior_nonempty()
}

pub fn scott_is_monitorable(a: &ScottSet) -> bool {
    a.interior_nonempty() || a.complement_interior_nonempty()
}

pub(crate) fn format_seq(seq: &[usize]) -> String {
    if seq.is_empty() {
        "eps".to_string()
    } else {
        seq.iter()
            .map(usize::to_string)
            .collect::<Vec<_>>()
            .join(".")
    }
}

impl fmt::Display for ScottSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("scott")?;
        if self.infinity_member {
            f.write_str(" inf")?;
        }
        for n in &self.explicit_nodes {
            write!(f, " node {}", format_seq(n))?;
        }
        for r in &self.cone_roots {
            write!(f, " cone {}", format_seq(r))?;
        }
        for (u, k) in &self.spines {
            write!(f, " spine {} {k}", format_seq(u))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn seq(s: &[usize]) -> Seq {
        s.to_vec()
    }

    #[test]
    fn interior_examples() {
        let full = ScottSet {
            infinity_member: true,
            cone_roots: [seq(&[])].into(),
            ..Default::default()
        };
        assert!(scott_interior_nonempty(&full));
        let cone0 = ScottSet {
            infinity_member: true,
            cone_roots: [seq(&[0])].into(),
            ..Default::default()
        };
        assert!(!scott_interior_nonempty(&cone0));
        let spine = ScottSet {
            spines: [(seq(&[]), 0)].into(),
            ..Default::default()
        };
        assert!(!scott_interior_nonempty(&spine));
    }

    #[test]
    fn monitorability_examples() {
        let tree = ScottSet {
            explicit_nodes: [seq(&[]), seq(&[0]), seq(&[1]), seq(&[0, 3])].into(),
            ..Default::default()
        };
        assert!(scott_is_monitorable(&tree));
        let mut ill = tree.clone();
        ill.spines.insert((seq(&[]), 0));
        assert!(!scott_is_monitorable(&ill));
        let cone = ScottSet {
            cone_roots: [seq(&[0])].into(),
            ..Default::default()
        };
        assert!(!scott_is_monitorable(&cone));
        assert!(scott_is_monitorable(&ScottSet::default()));
    }

    #[test]
    fn membership() {
        let a = ScottSet {
            explicit_nodes: [seq(&[5])].into(),
            cone_roots: [seq(&[1, 2])].into(),
            spines: [(seq(&[0]), 3)].into(),
            ..Default::default()
        };
        assert!(a.contains(&[5]));
        assert!(a.contains(&[1, 2, 9, 9]));
        assert!(!a.contains(&[1]));
        assert!(a.contains(&[0]));
        assert!(a.contains(&[0, 3, 3]));
        assert!(!a.contains(&[0, 3, 4]));
        assert_eq!(a.to_string(), "scott node 5 cone 1.2 spine 0 3");
    }

    /// Bounded reading of "some cone below a bar lies inside the set":
    /// nodes use digits `0..=max_digit` and have length at most `depth`.
    /// With `max_digit` and `depth` past all presentation data a fresh digit
    /// escapes every cone root and spine, so the bounded answer is exact.
    fn bounded_interior(
        contains: &dyn Fn(&[usize]) -> bool,
        top: bool,
        max_digit: usize,
        depth: usize,
    ) -> bool {
        fn cone_inside(
            u: &mut Vec<usize>,
            contains: &dyn Fn(&[usize]) -> bool,
            max_digit: usize,
            depth: usize,
        ) -> bool {
            if !contains(u) {
                return false;
            }
            if u.len() == depth {
                return true;
            }
            (0..=max_digit).all(|d| {
                u.push(d);
                let ok = cone_inside(u, contains, max_digit, depth);
                u.pop();
                ok
            })
        }
        fn barred(
            u: &mut Vec<usize>,
            contains: &dyn Fn(&[usize]) -> bool,
            max_digit: usize,
            depth: usize,
        ) -> bool {
            if cone_inside(&mut u.clone(), contains, max_digit, depth) {
                return true;
            }
            if u.len() + 1 >= depth {
                return false;
            }
            (0..=max_digit).all(|d| {
                u.push(d);
                let ok = barred(u, contains, max_digit, depth);
                u.pop();
                ok
            })
        }
        top && barred(&mut Vec::new(), contains, max_digit, depth)
    }

    fn small_seq() -> impl Strategy<Value = Seq> {
        proptest::collection::vec(0usize..2, 0..3)
    }

    fn scott_set() -> impl Strategy<Value = ScottSet> {
        (
            any::<bool>(),
            proptest::collection::btree_set(small_seq(), 0..3),
            proptest::collection::btree_set(small_seq(), 0..2),
            proptest::collection::btree_set((small_seq(), 0usize..2), 0..2),
        )
            .prop_map(
                |(infinity_member, explicit_nodes, cone_roots, spines)| ScottSet {
                    infinity_member,
                    explicit_nodes,
                    cone_roots,
                    spines,
                },
            )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn interior_rules_match_bounded_search(a in scott_set()) {
            let (max_digit, depth) = (2, 4);
            let inside = |u: &[usize]| a.contains(u);
            let outside = |u: &[usize]| !a.contains(u);
            prop_assert_eq!(a.interior_nonempty(), bounded_interior(&inside, a.infinity_member, max_digit, depth));
            prop_assert_eq!(
                a.complement_interior_nonempty(),
                bounded_interior(&outside, !a.infinity_member, max_digit, depth)
            );
        }

        #[test]
        fn interiors_never_both_nonempty(a in scott_set()) {
            prop_assert!(!(a.interior_nonempty() && a.complement_interior_nonempty()));
        }
    }
}
