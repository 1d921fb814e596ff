use std::fmt;

use crate::error::{Error, Result};

/// An infinite bit sequence `preperiod · period^ω`, read as a subset of ℕ.
///
/// Values are always canonical: the period is primitive and the preperiod
/// is as short as possible, so equal sequences have equal presentations.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EventuallyPeriodicWord {
    preperiod: Vec<bool>,
    period: Vec<bool>,
}

impl EventuallyPeriodicWord {
    pub fn new(preperiod: Vec<bool>, period: Vec<bool>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::InvalidArgument("period must be non-empty".into()));
        }
        Ok(Self::canonical(preperiod, period))
    }

    /// Parses two `0`/`1` strings.
    pub fn from_bits(preperiod: &str, period: &str) -> Result<Self> {
        Self::new(parse_bits(preperiod)?, parse_bits(period)?)
    }

    pub fn constant(bit: bool) -> Self {
        EventuallyPeriodicWord {
            preperiod: Vec::new(),
            period: vec![bit],
        }
    }

    /// The finite set of the given naturals.
    pub fn finite_set(members: &[usize]) -> Self {
        let len = members.iter().max().map_or(0, |m| m + 1);
        let mut pre = vec![false; len];
        for &m in members {
            pre[m] = true;
        }
        Self::canonical(pre, vec![false])
    }

    fn canonical(mut preperiod: Vec<bool>, period: Vec<bool>) -> Self {
        let mut period = primitive_root(period);
        while let (Some(&p), Some(&q)) = (preperiod.last(), period.last()) {
            if p != q {
                break;
            }
            preperiod.pop();
            period.rotate_right(1);
        }
        EventuallyPeriodicWord { preperiod, period }
    }

    pub fn preperiod(&self) -> &[bool] {
        &self.preperiod
    }

    pub fn period(&self) -> &[bool] {
        &self.period
    }

    pub fn bit(&self, n: usize) -> bool {
        match self.preperiod.get(n) {
            Some(&b) => b,
            None => self.period[(n - self.preperiod.len()) % self.period.len()],
        }
    }

    /// Infinitely many members.
    pub fn is_infinite(&self) -> bool {
        self.period.contains(&true)
    }

    /// Infinitely many non-members.
    pub fn is_coinfinite(&self) -> bool {
        self.period.contains(&false)
    }

    /// The period holds both bits: infinite and coinfinite.
    pub fn is_mixed(&self) -> bool {
        self.is_infinite() && self.is_coinfinite()
    }

    pub fn complement(&self) -> Self {
        let flip = |v: &[bool]| v.iter().map(|b| !b).collect::<Vec<_>>();
        Self::canonical(flip(&self.preperiod), flip(&self.period))
    }

    /// The word `w'` with `w'(2n) = w(n)` and `w'(2n + 1) = 0`.
    pub fn spread_to_even(&self) -> Self {
        let spread = |v: &[bool]| v.iter().flat_map(|&b| [b, false]).collect::<Vec<_>>();
        Self::canonical(spread(&self.preperiod), spread(&self.period))
    }
}

fn primitive_root(period: Vec<bool>) -> Vec<bool> {
    let n = period.len();
    for d in 1..n {
        if n.is_multiple_of(d) && (d..n).all(|i| period[i] == period[i - d]) {
            return period[..d].to_vec();
        }
    }
    period
}

pub(crate) fn parse_bits(s: &str) -> Result<Vec<bool>> {
    s.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(Error::InvalidArgument(format!("`{s}` is not a bit string"))),
        })
        .collect()
}

pub(crate) fn bits_to_string(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

impl fmt::Display for EventuallyPeriodicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "pre={} per={}",
            bits_to_string(&self.preperiod),
            bits_to_string(&self.period)
        )
    }
}

impl fmt::Debug for EventuallyPeriodicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}({})",
            bits_to_string(&self.preperiod),
            bits_to_string(&self.period)
        )
    }
}


#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(pre: &str, per: &str) -> EventuallyPeriodicWord {
        EventuallyPeriodicWord::from_bits(pre, per).unwrap()
    }

    #[test]
    fn finiteness_examples() {
        let finite = w("101", "0");
        assert!(!finite.is_infinite());
        assert!(finite.is_coinfinite());
        let full = w("", "1");
        assert!(full.is_infinite());
        assert!(!full.is_coinfinite());
        let evens = w("", "10");
        assert!(evens.is_infinite() && evens.is_coinfinite());
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(w("0101", "0101"), w("", "01"));
        assert_eq!(w("11", "11"), w("", "1"));
        assert_eq!(w("1", "01"), w("", "10"));
        assert_eq!(
            w("101001", "0"),
            EventuallyPeriodicWord::finite_set(&[0, 2, 5])
        );
        assert_eq!(w("", "00").to_string(), "pre= per=0");
        assert!(EventuallyPeriodicWord::from_bits("", "").is_err());
        assert!(EventuallyPeriodicWord::from_bits("2", "0").is_err());
    }

    #[test]
    fn spreading() {
        assert_eq!(w("", "01").spread_to_even(), w("", "0010"));
        assert_eq!(w("", "1").complement().spread_to_even(), w("", "0"));
        assert_eq!(w("", "0").complement().spread_to_even(), w("", "10"));
    }

    /// Members of a canonical word are recoverable from the raw presentation.
    fn raw_bit(pre: &[bool], per: &[bool], n: usize) -> bool {
        if n < pre.len() {
            pre[n]
        } else {
            per[(n - pre.len()) % per.len()]
        }
    }

    proptest! {
        #[test]
        fn canonicalization_preserves_membership(
            pre in proptest::collection::vec(any::<bool>(), 0..8),
            per in proptest::collection::vec(any::<bool>(), 1..8),
        ) {
            let word = EventuallyPeriodicWord::new(pre.clone(), per.clone()).unwrap();
            for n in 0..pre.len() + 3 * per.len() + 8 {
                prop_assert_eq!(word.bit(n), raw_bit(&pre, &per, n));
            }
            let again = EventuallyPeriodicWord::new(word.preperiod().to_vec(), word.period().to_vec()).unwrap();
            prop_assert_eq!(&again, &word);
            prop_assert!(word.period().len() <= per.len());
            prop_assert!(word.preperiod().len() <= pre.len());
        }

        #[test]
        fn spread_semantics(word in strategy::word()) {
            let s = word.spread_to_even();
            for n in 0..40 {
                prop_assert_eq!(s.bit(2 * n), word.bit(n));
                prop_assert!(!s.bit(2 * n + 1));
            }
        }
    }
}
