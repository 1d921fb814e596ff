//! Named monitorability deciders, selectable at runtime.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::monitor::{self, MonitorVerdict};
use crate::topology::{FiniteSpace, PointSet};

/// A procedure deciding monitorability of a set in a finite space.
pub trait Decider: Send + Sync {
    fn name(&self) -> &'static str;

    /// One-line description for listings.
    fn summary(&self) -> &'static str;

    fn decide(&self, space: &FiniteSpace, set: &PointSet) -> Result<MonitorVerdict>;
}

pub struct FrontierDecider;

impl Decider for FrontierDecider {
    fn name(&self) -> &'static str {
        "frontier"
    }

    fn summary(&self) -> &'static str {
        "interior of the frontier is empty"
    }

    fn decide(&self, space: &FiniteSpace, set: &PointSet) -> Result<MonitorVerdict> {
        Ok(monitor::is_monitorable_frontier(space, set))
    }
}

pub struct BasisDecider;

impl Decider for BasisDecider {
    fn name(&self) -> &'static str {
        "basis"
    }

    fn summary(&self) -> &'static str {
        "no minimal neighbourhood inside both closures"
    }

    fn decide(&self, space: &FiniteSpace, set: &PointSet) -> Result<MonitorVerdict> {
        Ok(monitor::is_monitorable_basis(space, set))
    }
}

pub struct OracleDecider;

impl Decider for OracleDecider {
    fn name(&self) -> &'static str {
        "oracle"
    }

    fn summary(&self) -> &'static str {
        "enumerate every non-empty open set (small spaces only)"
    }

    fn decide(&self, space: &FiniteSpace, set: &PointSet) -> Result<MonitorVerdict> {
        monitor::is_monitorable_oracle_verdict(space, set)
    }
}

pub struct DecomposedDecider;

impl Decider for DecomposedDecider {
    fn name(&self) -> &'static str {
        "decomposed"
    }

    fn summary(&self) -> &'static str {
        "minimal opens uncut, remainder checked on L"
    }

    fn decide(&self, space: &FiniteSpace, set: &PointSet) -> Result<MonitorVerdict> {
        Ok(monitor::is_monitorable_decomposed_verdict(space, set))
    }
}

pub struct HyperconnectedDecider;

impl Decider for HyperconnectedDecider {
    fn name(&self) -> &'static str {
        "hyperconnected"
    }

    fn summary(&self) -> &'static str {
        "interior of the set or its complement is non-empty (hyperconnected spaces)"
    }

    fn decide(&self, space: &FiniteSpace, set: &PointSet) -> Result<MonitorVerdict> {
        monitor::is_monitorable_hyperconnected_verdict(space, set)
    }
}

pub struct DeciderRegistry {
    deciders: BTreeMap<&'static str, Box<dyn Decider>>,
}

impl DeciderRegistry {
    pub fn empty() -> Self {
        DeciderRegistry {
            deciders: BTreeMap::new(),
        }
    }

    pub fn register(&mut self, decider: Box<dyn Decider>) {
        self.deciders.insert(decider.name(), decider);
    }

    pub fn get(&self, name: &str) -> Result<&dyn Decider> {
        self.deciders
            .get(name)
            .map(|d| d.as_ref())
            .ok_or_else(|| Error::UnknownDecider(name.to_string()))
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.deciders.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn Decider> {
        self.deciders.values().map(|d| d.as_ref())
    }
}

impl Default for DeciderRegistry {
    fn default() -> Self {
        let mut registry = DeciderRegistry::empty();
        registry.register(Box::new(FrontierDecider));
        registry.register(Box::new(BasisDecider));
        registry.register(Box::new(OracleDecider));
        registry.register(Box::new(DecomposedDecider));
        registry.register(Box::new(HyperconnectedDecider));
        registry
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lookup_by_name() {
        let registry = DeciderRegistry::default();
        assert_eq!(
            registry.names().collect::<Vec<_>>(),
            vec![
                "basis",
                "decomposed",
                "frontier",
                "hyperconnected",
                "oracle"
            ]
        );
        assert!(matches!(
            registry.get("magic"),
            Err(Error::UnknownDecider(_))
        ));
        let i2 = FiniteSpace::indiscrete(2);
        let a = i2.point_set([0]).unwrap();
        for d in registry.iter() {
            let v = d.decide(&i2, &a).unwrap();
            assert!(!v.monitorable, "{}", d.name());
            assert_eq!(v.witness, Some(i2.full_set()), "{}", d.name());
        }
    }
}
