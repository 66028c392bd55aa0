//! Finite intensional models: evaluation, well-formedness, refutation,
//! saturation checks, countermodels and quotients.

mod countermodel;
mod hintikka;
mod model;
mod normal;
pub mod random;
mod samples;

pub use countermodel::{build_countermodel, CountermodelError};
pub use hintikka::{check_hintikka, occurring_universe, sequent_signature, HintikkaReport, Violation};
pub use model::{
    truth_ext, Assignment, EvalError, Ext, FiniteModel, ModelFormatError, ModelReport, Tok, TokenInfo, TOKEN_MARK,
};
pub use normal::{is_normal, normalize_model, similarity, CoherenceError};
pub use samples::{atomic_extensionality, extensional_model, extensionality, intensional_model, sample_signature};
