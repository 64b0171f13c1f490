//! Exact computational Lie theory for classifying essential conformal
//! homogeneous spaces of complex simple groups.

pub mod chevalley;
pub mod classify;
pub mod cli;
pub mod constructions;
pub mod error;
pub mod invform;
pub mod isotropy;
pub mod linalg;
pub mod rational;
pub mod rootsys;

pub use error::{Error, Result};
pub use rational::Rational;
