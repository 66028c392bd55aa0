//! The shipped goals about worlds and the finite model the model-checked
//! goals are evaluated in.

use crate::calculus::{proof_from_json, Proof};
use crate::models::{FiniteModel, ModelFormatError};
use crate::syntax::{parse_term, parse_term_in, sugar, Context, Sequent, Signature, Term, Type, Var};

use super::{
    actual_world_axioms, belief_accessibility, belief_seriality, box_op, diamond_op, omega, w1, w2, w3, w4,
    worlds_signature,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GoalKind {
    /// The prover should close the goal with its default budget.
    Prove,
    /// A stored proof of the goal must pass the kernel.
    CheckScript(&'static str),
    /// The shipped model must make every premise and the conclusion true.
    ModelValidate,
}

impl GoalKind {
    pub fn tag(&self) -> &'static str {
        match self {
            GoalKind::Prove => "prove",
            GoalKind::CheckScript(_) => "check-script",
            GoalKind::ModelValidate => "model-validate",
        }
    }
}

#[derive(Clone, Debug)]
pub struct WorldGoal {
    pub name: &'static str,
    /// Axiom instances assumed.
    pub premises: Vec<Term>,
    pub conclusion: Term,
    pub kinds: Vec<GoalKind>,
}

impl WorldGoal {
    pub fn sequent(&self) -> Sequent {
        Sequent::from_sides(self.premises.iter().cloned(), [self.conclusion.clone()])
    }

    /// The stored proof, if the goal has one.
    pub fn script(&self) -> Option<Result<(Proof, Signature), String>> {
        self.kinds.iter().find_map(|k| match k {
            GoalKind::CheckScript(text) => Some(proof_from_json(text).map_err(|e| e.to_string())),
            _ => None,
        })
    }
}

/// Constants the goals use beyond `Omega` and `w0`.
pub fn corpus_signature() -> Signature {
    let e = Type::basic("e");
    worlds_signature()
        .with("p", Type::prop())
        .with("q", Type::prop())
        .with("P", e.property())
        .with("believe", Type::complex(vec![e.clone(), Type::prop()]))
        .with("john", e)
}

fn t(src: &str) -> Term {
    parse_term(src, &corpus_signature()).unwrap_or_else(|e| panic!("{src}: {e}"))
}

fn w2s(pairs: &[(&str, &str)]) -> Vec<Term> {
    pairs.iter().map(|(a, b)| w2(&t(a), &t(b)).expect("W2 instance")).collect()
}

/// The belief predicate for john.
pub fn john_r() -> Term {
    belief_accessibility(&t("believe"), &t("john")).expect("typed")
}

const D_PROOF: &str = include_str!("../../data/worlds/d.proof.json");
const FOUR_PROOF: &str = include_str!("../../data/worlds/4.proof.json");
const FIVE_PROOF: &str = include_str!("../../data/worlds/5.proof.json");
const MODEL: &str = include_str!("../../data/worlds/model.json");

/// The goal list, in a fixed order.
pub fn goal_corpus() -> Vec<WorldGoal> {
    use GoalKind::*;
    let mut out = Vec::new();
    let mut goal = |name, premises: Vec<Term>, conclusion: Term, kinds: Vec<GoalKind>| {
        out.push(WorldGoal { name, premises, conclusion, kinds });
    };

    let mut a = vec![w1()];
    a.extend(w2s(&[("p", "bot")]));
    goal("a", a, t("forall w:<<>> . Omega w -> (w (~ p) <-> ~ w p)"), vec![Prove, ModelValidate]);

    let mut b = vec![w1()];
    b.extend(w2s(&[("p -> ~ q", "bot"), ("p", "~ q"), ("q", "bot")]));
    goal("b", b, t("forall w:<<>> . Omega w -> (w (p & q) <-> w p & w q)"), vec![Prove, ModelValidate]);

    let c = w2s(&[("lam x:e . top", "lam x:e . P x"), ("bot", "bot")]);
    goal(
        "c",
        c,
        t("forall w:<<>> . Omega w -> (w (forall x:e . P x) <-> forall x:e . w (P x))"),
        vec![Prove, ModelValidate],
    );

    let mut d = vec![w1()];
    d.extend(w2s(&[("forall x:e . ~ P x", "bot"), ("lam x:e . top", "lam x:e . ~ P x"), ("bot", "bot")]));
    let px = Term::app(t("P"), Term::var(Var::new("x", Type::basic("e")))).expect("typed");
    d.push(w2(&px, &Term::bottom()).expect("W2 instance"));
    goal(
        "d",
        d,
        t("forall w:<<>> . Omega w -> (w (exists x:e . P x) <-> exists x:e . w (P x))"),
        vec![Prove, ModelValidate],
    );

    goal("omega-reflexive", vec![w4()], t("forall w:<<>> . Omega w -> w (Omega w)"), vec![Prove, ModelValidate]);
    goal(
        "omega-symmetric",
        vec![w4()],
        t("forall w:<<>> . forall v:<<>> . Omega w & Omega v & w (Omega v) -> v (Omega w)"),
        vec![Prove, ModelValidate],
    );
    goal(
        "omega-transitive",
        vec![w4()],
        t("forall w:<<>> . forall v:<<>> . forall u:<<>> . Omega w & Omega v & Omega u & w (Omega v) & v (Omega u) -> w (Omega u)"),
        vec![Prove, ModelValidate],
    );

    goal("box-top", w2s(&[("bot", "bot")]), box_op(&omega(), &sugar::top()).unwrap(), vec![Prove, ModelValidate]);

    let rj = john_r();
    let q = t("q");
    let boxq = box_op(&rj, &q).unwrap();

    let mut dp = vec![w1()];
    dp.extend(w2s(&[("q", "bot")]));
    dp.extend(actual_world_axioms());
    dp.push(belief_seriality(&t("believe"), &t("john")).unwrap());
    goal("D", dp, sugar::imp(boxq.clone(), diamond_op(&rj, &q).unwrap()).unwrap(), vec![CheckScript(D_PROOF)]);

    let four = sugar::imp(boxq.clone(), box_op(&rj, &boxq).unwrap()).unwrap();
    goal("4", four_premises(), four, vec![CheckScript(FOUR_PROOF)]);

    let dia = diamond_op(&rj, &q).unwrap();
    let five = sugar::imp(dia.clone(), box_op(&rj, &dia).unwrap()).unwrap();
    goal("5", five_premises(), five, vec![CheckScript(FIVE_PROOF)]);
    out
}

/// `R w` for john's belief predicate, `w` free.
const RW: &str = "forall p:<> . (believe john p <-> w (believe john p)) & (believe john p -> w p)";

/// A term over the free variables `w : <<>>` and `p : <>`.
fn open_t(src: &str) -> Term {
    let ctx: Context = [("w".into(), super::world_type()), ("p".into(), Type::prop())].into_iter().collect();
    parse_term_in(src, &corpus_signature(), &ctx).unwrap_or_else(|e| panic!("{src}: {e}"))
}

/// The instances behind `[R]φ → [R][R]φ` and `<R>φ → [R]<R>φ`: W2 along
/// the structure of `[R]φ` seen from a world, W3 for the formulas worlds
/// are applied to, W1 and W4.
fn transfer_premises(phi: &str, negated_box: bool) -> Vec<Term> {
    let i1 = "believe john p -> w (believe john p)";
    let i2 = "w (believe john p) -> believe john p";
    let i = format!("({i1}) & ({i2})");
    let j = "believe john p -> w p";
    let c = format!("({i}) & ({j})");
    let pairs: Vec<(String, String)> = vec![
        ("lam w:<<>> . top".into(), format!("lam w:<<>> . (Omega w & ({RW})) -> w ({phi})")),
        ("bot".into(), "bot".into()),
        (format!("Omega w & ({RW})"), format!("w ({phi})")),
        (format!("Omega w -> ~ ({RW})"), "bot".into()),
        ("Omega w".into(), format!("~ ({RW})")),
        (RW.into(), "bot".into()),
        ("lam p:<> . top".into(), format!("lam p:<> . {c}")),
        (format!("({i}) -> ~ ({j})"), "bot".into()),
        (i.clone(), format!("~ ({j})")),
        (j.into(), "bot".into()),
        (format!("({i1}) -> ~ ({i2})"), "bot".into()),
        (i1.into(), format!("~ ({i2})")),
        (i2.into(), "bot".into()),
        ("believe john p".into(), "w (believe john p)".into()),
        ("w (believe john p)".into(), "believe john p".into()),
        ("believe john p".into(), "w p".into()),
    ];
    let mut v = vec![w1(), w4()];
    if negated_box {
        let boxed = box_op(&john_r(), &t(phi)).expect("typed");
        v.push(w2(&boxed, &Term::bottom()).expect("W2 instance"));
    }
    for (a, b) in &pairs {
        v.push(w2(&open_t(a), &open_t(b)).expect("W2 instance"));
    }
    for f in ["believe john p", "p", phi] {
        v.push(w3(&open_t(f)).expect("W3 instance"));
    }
    v
}

fn four_premises() -> Vec<Term> {
    transfer_premises("q", false)
}

fn five_premises() -> Vec<Term> {
    transfer_premises("~ q", true)
}

/// The finite model the `model-validate` goals are checked in.
pub fn worlds_model() -> Result<FiniteModel, ModelFormatError> {
    FiniteModel::from_json(MODEL)
}
