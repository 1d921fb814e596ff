//! Countable example spaces with finitely presented subsets.
//!
//! Each presentation class has an exact monitorability decider. The classes
//! are not closed under arbitrary Boolean combinations; for the Scott space
//! no decider can cover all subsets, since monitorability there is
//! complete coanalytic.

mod dsl;
mod grid;
mod scott;
mod sets;
mod word;

pub use dsl::parse_symbolic;
pub use grid::{grid_is_monitorable, GridSet, GridVerdict};
pub use scott::{scott_interior_nonempty, scott_is_monitorable, ScottSet, Seq};
pub use sets::{cofinite_is_monitorable, sum_is_monitorable, CofiniteSpaceSet, SumSpaceSet};
pub use word::EventuallyPeriodicWord;

/// A set in one of the built-in countable spaces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SymbolicSet {
    Cofinite(CofiniteSpaceSet),
    Grid(GridSet),
    Scott(ScottSet),
    Sum(SumSpaceSet),
}

/// Verdict on a symbolic set; only grid refutations carry a witness (a column).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolicVerdict {
    pub monitorable: bool,
    pub witness: Option<Vec<usize>>,
}

impl SymbolicSet {
    pub fn space_name(&self) -> &'static str {
        match self {
            SymbolicSet::Cofinite(_) => "cofinite",
            SymbolicSet::Grid(_) => "grid",
            SymbolicSet::Scott(_) => "scott",
            SymbolicSet::Sum(_) => "sum",
        }
    }

    pub fn decide(&self) -> SymbolicVerdict {
        let plain = |monitorable| SymbolicVerdict {
            monitorable,
            witness: None,
        };
        match self {
            SymbolicSet::Cofinite(a) => plain(cofinite_is_monitorable(a)),
            SymbolicSet::Grid(a) => {
                let v = grid_is_monitorable(a);
                SymbolicVerdict {
                    monitorable: v.monitorable,
                    witness: v.witness_column.map(|m| vec![m]),
                }
            }
            SymbolicSet::Scott(a) => plain(scott_is_monitorable(a)),
            SymbolicSet::Sum(a) => plain(sum_is_monitorable(a)),
        }
    }
}
