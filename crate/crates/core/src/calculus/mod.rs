//! Proof objects, the kernel checker, derived rules and theories.

pub mod build;
pub mod check;
pub mod derived;
pub mod proof;
pub mod prune;
pub mod serial;
pub mod theory;

pub use check::{check_proof, Rejection};
pub use derived::{check_derived, expand_derived, DerivedCheckError, ExpansionError};
pub use proof::{fresh_names, Proof, RuleData, RuleId};
pub use prune::{cumulative, prune};
pub use serial::{proof_from_json, proof_to_json, ProofFormatError};
pub use theory::{lambda_conversion, theory_instances, universal_closure, Request, Scheme, Theory, TheoryError};
