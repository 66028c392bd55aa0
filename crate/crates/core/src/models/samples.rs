//! Two shipped models over the propositional constants `p`, `q`, `r`.
//!
//! In the first, `⟨⟩` has one token per truth value, so coextensive
//! propositions share an intension. In the second, `p` and `q` are distinct
//! true tokens and some property of propositions tells them apart.

use super::model::{FiniteModel, ModelFormatError};
use crate::syntax::{sugar, Signature, Term, Type, TypeError};

const EXTENSIONAL: &str = include_str!("../../data/models/extensional.json");
const INTENSIONAL: &str = include_str!("../../data/models/intensional.json");

pub fn extensional_model() -> Result<FiniteModel, ModelFormatError> {
    FiniteModel::from_json(EXTENSIONAL)
}

pub fn intensional_model() -> Result<FiniteModel, ModelFormatError> {
    FiniteModel::from_json(INTENSIONAL)
}

/// The constants both models interpret.
pub fn sample_signature() -> Signature {
    Signature::new().with("p", Type::prop()).with("q", Type::prop()).with("r", Type::prop())
}

/// `(a ↔ b) → a = b`.
pub fn extensionality(a: &Term, b: &Term) -> Result<Term, TypeError> {
    sugar::imp(sugar::iff(a.clone(), b.clone())?, sugar::eq(a.clone(), b.clone())?)
}

/// The instance for every ordered pair of constants of type `ty`.
pub fn atomic_extensionality(sig: &Signature, ty: &Type) -> Vec<Term> {
    let cs: Vec<Term> = sig.constants_of_type(ty).map(Term::constant).collect();
    let mut out = Vec::new();
    for a in &cs {
        for b in &cs {
            out.push(extensionality(a, b).expect("same type"));
        }
    }
    out
}
