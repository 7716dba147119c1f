//! Exact c-self domination numbers and a G(n,p) concentration laboratory.

pub mod asymptotics;
pub mod corpus;
pub mod error;
pub mod exec;
pub mod experiments;
pub mod graph;
pub mod rng;
pub mod sdf;
pub mod selfcheck;
pub mod solver;

pub use error::{Error, Result};
pub use exec::Execution;
pub use graph::{generate_gnp, Graph};
pub use rng::{Seed, SplitMix64};
pub use sdf::{CParam, Label, Rational, SdfAssignment, Weight};
