//! A proof kernel, bounded prover and finite-model toolkit for a relational
//! type logic without extensionality.

pub mod calculus;
pub mod fragment;
pub mod models;
pub mod prover;
pub mod syntax;
pub mod worlds;

pub use syntax::*;
