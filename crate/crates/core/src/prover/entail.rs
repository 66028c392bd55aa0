use crate::calculus::{Proof, Theory};
use crate::models::{build_countermodel, FiniteModel};
use crate::syntax::{Sequent, Term};

use super::search::prove_in;
use super::{goal_signature, Dimension, SaturationReport, SearchBudget, SearchOutcome};

/// Evidence that the premises do not entail the conclusions.
#[derive(Clone, Debug)]
pub struct Certificate {
    /// The saturated branch, theory axioms included.
    pub branch: Sequent,
    pub report: SaturationReport,
    /// A model refuting the branch, present only once validated.
    pub model: Option<FiniteModel>,
    /// Why no validated model could be produced.
    pub model_error: Option<String>,
}

impl Certificate {
    pub fn is_validated(&self) -> bool {
        self.model.is_some()
    }
}

#[derive(Clone, Debug)]
pub enum Verdict {
    Yes(Proof),
    No(Box<Certificate>),
    Unknown(Dimension),
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Yes(_) => "yes",
            Verdict::No(_) => "no",
            Verdict::Unknown(_) => "unknown",
        }
    }
}

/// Whether `th ∪ premises ⊢ conclusions`, with a countermodel attempt on
/// an open branch.
pub fn entails(premises: &[Term], conclusions: &[Term], th: &Theory, budget: &SearchBudget) -> Verdict {
    let goal = Sequent::from_sides(premises.iter().cloned(), conclusions.iter().cloned());
    let sig = goal_signature(&goal, th);
    let run = prove_in(&sig, &goal, th, budget);
    match run.outcome {
        SearchOutcome::ProofFound(p) => Verdict::Yes(p),
        SearchOutcome::Exhausted(d) => Verdict::Unknown(d),
        SearchOutcome::OpenBranch(branch, report) => {
            let (model, model_error) = match build_countermodel(&branch, &run.signature) {
                Ok(m) => (Some(m), None),
                Err(e) => (None, Some(e.to_string())),
            };
            Verdict::No(Box::new(Certificate { branch, report, model, model_error }))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_sentence, sugar, Signature, Type};

    #[test]
    fn top_is_entailed_by_nothing() {
        let v = entails(&[], &[sugar::top()], &Theory::empty(""), &SearchBudget::default());
        assert!(matches!(v, Verdict::Yes(_)));
    }

    #[test]
    fn atoms_do_not_entail_each_other() {
        let sig = Signature::new().with("p", Type::prop()).with("q", Type::prop());
        let p = parse_sentence("p", &sig).unwrap();
        let q = parse_sentence("q", &sig).unwrap();
        match entails(&[p], &[q], &Theory::empty(""), &SearchBudget::default()) {
            Verdict::No(c) => assert!(c.is_validated(), "{:?}", c.model_error),
            other => panic!("{}", other.label()),
        }
    }
}
