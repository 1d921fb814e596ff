use std::collections::BTreeMap;

use super::word::EventuallyPeriodicWord;

/// A subset of ℕ² given column by column.
///
/// Column `m` is `exceptional[m]` when present and `default` otherwise;
/// `(m, n)` is a member iff bit `n` of that column's word is set. The space
/// carries the Alexandrov topology of `(m, n) ≼ (m, n')` for `n ≤ n'`, whose
/// basic opens are the column tails.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GridSet {
    pub default: EventuallyPeriodicWord,
    pub exceptional: BTreeMap<usize, EventuallyPeriodicWord>,
}

/// Verdict for a grid set; the witness column has a tail in which the set is
/// dense and codense.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridVerdict {
    pub monitorable: bool,
    pub witness_column: Option<usize>,
}

impl GridSet {
    pub fn uniform(default: EventuallyPeriodicWord) -> Self {
        GridSet {
            default,
            exceptional: BTreeMap::new(),
        }
    }

    pub fn with_column(mut self, m: usize, word: EventuallyPeriodicWord) -> Self {
        self.exceptional.insert(m, word);
        self
    }

    pub fn column(&self, m: usize) -> &EventuallyPeriodicWord {
        self.exceptional.get(&m).unwrap_or(&self.default)
    }

    pub fn contains(&self, m: usize, n: usize) -> bool {
        self.column(m).bit(n)
    }

    /// Drops exceptional columns equal to the default.
    pub fn normalized(&self) -> GridSet {
        GridSet {
            default: self.default.clone(),
            exceptional: self
                .exceptional
                .iter()
                .filter(|(_, w)| **w != self.default)
                .map(|(&m, w)| (m, w.clone()))
                .collect(),
        }
    }

    /// Smallest column index using the default word.
    pub fn first_default_column(&self) -> usize {
        (0..)
            .find(|m| !self.exceptional.contains_key(m))
            .expect("finitely many exceptions")
    }

    /// Applies `f` to every column word.
    pub fn map_columns(
        &self,
        f: impl Fn(&EventuallyPeriodicWord) -> EventuallyPeriodicWord,
    ) -> GridSet {
        GridSet {
            default: f(&self.default),
            exceptional: self.exceptional.iter().map(|(&m, w)| (m, f(w))).collect(),
        }
    }
}

/// A set is dense in the tail of column `m` iff it meets that column
/// infinitely often, and codense iff it misses it infinitely often, so it is
/// not monitorable iff some column word is mixed.
pub fn grid_is_monitorable(a: &GridSet) -> GridVerdict {
    let witness = a
        .exceptional
        .iter()
        .find(|(_, w)| w.is_mixed())
        .map(|(&m, _)| m)
        .or_else(|| a.default.is_mixed().then(|| a.first_default_column()));
    GridVerdict {
        monitorable: witness.is_none(),
        witness_column: witness,
    }
}
