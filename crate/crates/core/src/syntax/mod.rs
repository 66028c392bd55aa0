//! Types, terms, signatures, substitution, sugar and the text syntax.

pub mod error;
pub mod normalize;
pub mod parse;
pub mod print;
pub mod sequent;
pub mod signature;
pub mod subst;
pub mod sugar;
pub mod surface;
pub mod term;
pub mod types;

pub use error::{BudgetExceeded, CaptureError, ParseError, SyntaxError, TypeError};
pub use normalize::{alpha_canonical, alpha_eq, beta_eta_normalize, beta_normalize, head_reduce};
pub use parse::{parse_sentence, parse_sequent, parse_surface, parse_term, parse_term_in, parse_type};
pub use print::{pretty_term, print_term};
pub use sequent::{Sequent, Sign, SignedSentence};
pub use signature::Signature;
pub use subst::{apply_subst, is_free_for, subst1, Substitution};
pub use surface::{desugar, Surface};
pub use term::{free_vars, is_closed, type_of, Const, Context, Term, TermKind, Var};
pub use types::{Name, Type};
