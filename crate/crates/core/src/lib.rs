//! Monitorability of sets in finite and symbolic topological spaces.
//!
//! A set is monitorable when its frontier has empty interior. Finite spaces
//! are given by the minimal open neighbourhood of each point.

pub mod classify;
pub mod cli;
pub mod deciders;
pub mod error;
pub mod lts;
pub mod monitor;
pub mod reductions;
pub mod symbolic;
pub mod text;
pub mod topology;

pub use error::{Error, Result};
pub use topology::{FiniteSpace, PointSet};
