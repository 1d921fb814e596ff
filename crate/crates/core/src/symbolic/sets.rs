use std::collections::BTreeSet;

use super::word::EventuallyPeriodicWord;
use crate::error::{Error, Result};

/// A subset of ℕ under the cofinite topology.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CofiniteSpaceSet {
    pub word: EventuallyPeriodicWord,
}

/// A set is dense and codense in some non-empty cofinite open exactly when
/// it is infinite and coinfinite.
pub fn cofinite_is_monitorable(a: &CofiniteSpaceSet) -> bool {
    !a.word.is_mixed()
}

/// A subset of the sum of a discrete space `Y = {0..y}` and the two-point
/// indiscrete space `Z = {z₁, z₂}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SumSpaceSet {
    discrete_size: usize,
    discrete_part: BTreeSet<usize>,
    indiscrete_bits: (bool, bool),
}

impl SumSpaceSet {
    pub fn new(
        discrete_size: usize,
        discrete_part: BTreeSet<usize>,
        indiscrete_bits: (bool, bool),
    ) -> Result<Self> {
        if let Some(&p) = discrete_part.iter().find(|&&p| p >= discrete_size) {
            return Err(Error::PointOutOfRange {
                point: p,
                n: discrete_size,
            });
        }
        Ok(SumSpaceSet {
            discrete_size,
            discrete_part,
            indiscrete_bits,
        })
    }

    pub fn discrete_size(&self) -> usize {
        self.discrete_size
    }

    pub fn discrete_part(&self) -> &BTreeSet<usize> {
        &self.discrete_part
    }

    pub fn indiscrete_bits(&self) -> (bool, bool) {
        self.indiscrete_bits
    }
}

/// Not monitorable iff the set splits `Z`.
pub fn sum_is_monitorable(a: &SumSpaceSet) -> bool {
    a.indiscrete_bits.0 == a.indiscrete_bits.1
}
