//! Worlds as sets of propositions: a worldhood predicate `Omega`, axioms
//! making worlds consistent, complete and rigid, box and diamond operators
//! over accessibility predicates, and a corpus of goals.

mod corpus;

use std::sync::Arc;

use thiserror::Error;

use crate::calculus::{lambda_conversion, Scheme, Theory, TheoryError};
use crate::syntax::normalize::{fresh_like, head_reduce};
use crate::syntax::{beta_normalize, sugar, Signature, Term, TermKind, Type, TypeError, Var};

pub use corpus::{corpus_signature, goal_corpus, john_r, worlds_model, GoalKind, WorldGoal};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WorldsError {
    #[error("type mismatch: {0}")]
    TypeMismatch(String),
}

impl From<TypeError> for WorldsError {
    fn from(e: TypeError) -> WorldsError {
        WorldsError::TypeMismatch(e.to_string())
    }
}

impl From<WorldsError> for TheoryError {
    fn from(e: WorldsError) -> TheoryError {
        TheoryError::BadArguments { scheme: "worlds".into(), reason: e.to_string() }
    }
}

pub const OMEGA: &str = "Omega";
pub const ACTUAL: &str = "w0";

/// `<<>>`, the type of worlds.
pub fn world_type() -> Type {
    Type::prop().property()
}

/// `<<<>>>`, the type of accessibility predicates.
pub fn predicate_type() -> Type {
    world_type().property()
}

pub fn omega() -> Term {
    Term::cnst(OMEGA, predicate_type())
}

pub fn actual() -> Term {
    Term::cnst(ACTUAL, world_type())
}

/// `Omega` and `w0`.
pub fn worlds_signature() -> Signature {
    Signature::new().with(OMEGA, predicate_type()).with(ACTUAL, world_type())
}

fn app(f: &Term, a: &Term) -> Result<Term, WorldsError> {
    Ok(Term::app(f.clone(), a.clone())?)
}

/// A variable named `base` (primed as needed) not free in any of `avoid`.
fn var_avoiding(base: &str, ty: Type, avoid: &[&Term]) -> Var {
    let v = Var::new(base, ty);
    if avoid.iter().any(|t| t.has_free(&v)) {
        fresh_like(&v, |c| avoid.iter().any(|t| t.has_free(c)))
    } else {
        v
    }
}

/// `R w` with a head redex contracted.
fn applied(r: &Term, w: &Term) -> Result<Term, WorldsError> {
    let t = app(r, w)?;
    Ok(head_reduce(&t).unwrap_or(t))
}

/// W1: `∀w(Omega w → ¬ w ⊥)`.
pub fn w1() -> Term {
    let w = Var::new("w", world_type());
    let wt = Term::var(w.clone());
    let body =
        sugar::imp(app(&omega(), &wt).unwrap(), sugar::not(app(&wt, &Term::bottom()).unwrap()).unwrap()).unwrap();
    sugar::forall(w, body).unwrap()
}

/// W2 at `(A, B)`: `∀w(Omega w → (w(A ⊂ B) ↔ ∀x⃗(w(A x⃗) → w(B x⃗))))`,
/// with `A x⃗` and `B x⃗` β-normalised. Free variables of A and B are
/// closed over universally.
pub fn w2(a: &Term, b: &Term) -> Result<Term, WorldsError> {
    if a.ty() != b.ty() || !a.ty().is_complex() {
        return Err(WorldsError::TypeMismatch(format!(
            "W2 needs two terms of one complex type, got {} and {}",
            a.ty(),
            b.ty()
        )));
    }
    let w = var_avoiding("%w", world_type(), &[a, b]);
    let wt = Term::var(w.clone());
    let xs: Vec<Var> =
        a.ty().args().iter().enumerate().map(|(i, ty)| var_avoiding(&format!("%x{i}"), ty.clone(), &[a, b])).collect();
    let ax = Term::apps(a.clone(), xs.iter().cloned().map(Term::var))?;
    let bx = Term::apps(b.clone(), xs.iter().cloned().map(Term::var))?;
    let nf = |t: &Term| beta_normalize(t).map_err(|e| WorldsError::TypeMismatch(e.to_string()));
    let pointwise = sugar::forall_all(&xs, sugar::imp(app(&wt, &nf(&ax)?)?, app(&wt, &nf(&bx)?)?)?)?;
    let whole = app(&wt, &Term::subset(a.clone(), b.clone())?)?;
    let body = sugar::imp(app(&omega(), &wt)?, sugar::iff(whole, pointwise)?)?;
    close(sugar::forall(w, body)?)
}

/// W3 at `φ`: `∀w∀w'((Omega w ∧ Omega w') → (w(w'φ) ↔ w'φ))`.
pub fn w3(phi: &Term) -> Result<Term, WorldsError> {
    if !phi.is_formula() {
        return Err(WorldsError::TypeMismatch(format!("W3 needs a formula, got type {}", phi.ty())));
    }
    let w = var_avoiding("%w", world_type(), &[phi]);
    let v = var_avoiding("%v", world_type(), &[phi]);
    let (wt, vt) = (Term::var(w.clone()), Term::var(v.clone()));
    let vphi = app(&vt, phi)?;
    let worlds = sugar::and(app(&omega(), &wt)?, app(&omega(), &vt)?)?;
    let body = sugar::imp(worlds, sugar::iff(app(&wt, &vphi)?, vphi)?)?;
    close(sugar::forall_all(&[w, v], body)?)
}

/// W4: `∀w(Omega w → ∀w'(Omega w' ↔ w(Omega w')))`.
pub fn w4() -> Term {
    let w = Var::new("w", world_type());
    let v = Var::new("v", world_type());
    let (wt, vt) = (Term::var(w.clone()), Term::var(v.clone()));
    let ov = app(&omega(), &vt).unwrap();
    let inner = sugar::forall(v, sugar::iff(ov.clone(), app(&wt, &ov).unwrap()).unwrap()).unwrap();
    sugar::forall(w, sugar::imp(app(&omega(), &wt).unwrap(), inner).unwrap()).unwrap()
}

/// `Omega w0` and `∀p(w0 p ↔ p)`.
pub fn actual_world_axioms() -> [Term; 2] {
    let p = Var::new("p", Type::prop());
    let pt = Term::var(p.clone());
    let truth = sugar::forall(p, sugar::iff(app(&actual(), &pt).unwrap(), pt).unwrap()).unwrap();
    [app(&omega(), &actual()).unwrap(), truth]
}

fn close(t: Term) -> Result<Term, WorldsError> {
    Ok(crate::calculus::universal_closure(&t)?)
}

/// One requested axiom or scheme instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WorldRequest {
    W1,
    W2(Term, Term),
    W3(Term),
    W4,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct WorldOptions {
    pub actual_world: bool,
}

/// The requested instances in order, without repeats, followed by the
/// actual-world axioms when asked for.
pub fn world_axiom_instances(requests: &[WorldRequest], opts: WorldOptions) -> Result<Vec<Term>, WorldsError> {
    let mut out: Vec<Term> = Vec::new();
    let mut push = |t: Term| {
        if !out.contains(&t) {
            out.push(t);
        }
    };
    for r in requests {
        push(match r {
            WorldRequest::W1 => w1(),
            WorldRequest::W2(a, b) => w2(a, b)?,
            WorldRequest::W3(phi) => w3(phi)?,
            WorldRequest::W4 => w4(),
        });
    }
    if opts.actual_world {
        for t in actual_world_axioms() {
            push(t);
        }
    }
    Ok(out)
}

/// W2 instances for every inclusion occurring in the sentences.
struct W2Scheme;

impl Scheme for W2Scheme {
    fn name(&self) -> &str {
        "W2"
    }

    fn instantiate(&self, args: &[Term]) -> Result<Term, TheoryError> {
        let [a, b] = args else {
            return Err(TheoryError::BadArguments { scheme: "W2".into(), reason: "expects [A, B]".into() });
        };
        Ok(w2(a, b)?)
    }

    fn demand(&self, sentences: &[Term]) -> Vec<Vec<Term>> {
        let mut out = Vec::new();
        for s in sentences {
            s.visit(&mut |t| {
                if let TermKind::Subset(a, b) = t.kind() {
                    out.push(vec![a.clone(), b.clone()]);
                }
            });
        }
        out
    }
}

/// W3 instances for every formula a world is applied to.
struct W3Scheme;

impl Scheme for W3Scheme {
    fn name(&self) -> &str {
        "W3"
    }

    fn instantiate(&self, args: &[Term]) -> Result<Term, TheoryError> {
        let [phi] = args else {
            return Err(TheoryError::BadArguments { scheme: "W3".into(), reason: "expects [phi]".into() });
        };
        Ok(w3(phi)?)
    }

    fn demand(&self, sentences: &[Term]) -> Vec<Vec<Term>> {
        let mut out = Vec::new();
        for s in sentences {
            s.visit(&mut |t| {
                if let TermKind::App(f, phi) = t.kind() {
                    if *f.ty() == world_type() {
                        out.push(vec![phi.clone()]);
                    }
                }
            });
        }
        out
    }
}

/// W1 and W4 as axioms, W2 and W3 as demand-driven schemes, over λ-conversion.
/// With `actual_world` the two actual-world axioms are added.
pub fn worlds_theory(actual_world: bool) -> Theory {
    let mut axioms = vec![w1(), w4()];
    if actual_world {
        axioms.extend(actual_world_axioms());
    }
    let base = Theory {
        name: if actual_world { "worlds+w0".into() } else { "worlds".into() },
        signature: worlds_signature(),
        axioms,
        schemes: vec![Arc::new(W2Scheme), Arc::new(W3Scheme)],
    };
    base.union(&lambda_conversion()).expect("disjoint signatures")
}

/// `[R]φ`: `∀w((Omega w ∧ R w) → w φ)`, with `R w` contracted when R is an
/// abstraction.
pub fn box_op(r: &Term, phi: &Term) -> Result<Term, WorldsError> {
    if *r.ty() != predicate_type() || !phi.is_formula() {
        return Err(WorldsError::TypeMismatch(format!("box needs <<<>>> and <>, got {} and {}", r.ty(), phi.ty())));
    }
    let w = var_avoiding("w", world_type(), &[r, phi]);
    let wt = Term::var(w.clone());
    let guard = sugar::and(app(&omega(), &wt)?, applied(r, &wt)?)?;
    Ok(sugar::forall(w, sugar::imp(guard, app(&wt, phi)?)?)?)
}

/// `<R>φ`: `¬[R]¬φ`.
pub fn diamond_op(r: &Term, phi: &Term) -> Result<Term, WorldsError> {
    Ok(sugar::not(box_op(r, &sugar::not(phi.clone())?)?)?)
}

/// Formulas with modal operators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Modal {
    Atom(Term),
    Not(Box<Modal>),
    Imp(Box<Modal>, Box<Modal>),
    Box(Term, Box<Modal>),
    Diamond(Term, Box<Modal>),
}

impl Modal {
    pub fn boxed(r: &Term, m: Modal) -> Modal {
        Modal::Box(r.clone(), Box::new(m))
    }

    pub fn diamond(r: &Term, m: Modal) -> Modal {
        Modal::Diamond(r.clone(), Box::new(m))
    }

    pub fn imp(a: Modal, b: Modal) -> Modal {
        Modal::Imp(Box::new(a), Box::new(b))
    }
}

pub fn desugar_modal(m: &Modal) -> Result<Term, WorldsError> {
    Ok(match m {
        Modal::Atom(t) => {
            if !t.is_formula() {
                return Err(WorldsError::TypeMismatch(format!("atom of type {}", t.ty())));
            }
            t.clone()
        }
        Modal::Not(a) => sugar::not(desugar_modal(a)?)?,
        Modal::Imp(a, b) => sugar::imp(desugar_modal(a)?, desugar_modal(b)?)?,
        Modal::Box(r, a) => box_op(r, &desugar_modal(a)?)?,
        Modal::Diamond(r, a) => diamond_op(r, &desugar_modal(a)?)?,
    })
}

/// Worlds agreeing with the agent's explicit beliefs and making them true:
/// `λw.∀p((believe j p ↔ w(believe j p)) ∧ (believe j p → w p))`.
pub fn belief_accessibility(believe: &Term, agent: &Term) -> Result<Term, WorldsError> {
    let p = Var::new("p", Type::prop());
    let w = var_avoiding("w", world_type(), &[believe, agent]);
    let (pt, wt) = (Term::var(p.clone()), Term::var(w.clone()));
    let bp = Term::apps(believe.clone(), [agent.clone(), pt.clone()])?;
    let body = sugar::and(sugar::iff(bp.clone(), app(&wt, &bp)?)?, sugar::imp(bp, app(&wt, &pt)?)?)?;
    Ok(Term::lam(w, sugar::forall(p, body)?)?)
}

/// Seriality of `λwλw'. w(R w')` for the belief predicate, relativised to
/// worlds: `∀w(Omega w → ∃w'(Omega w' ∧ ∀p((w(bjp) ↔ w'(bjp)) ∧ (w(bjp) → w'p))))`.
pub fn belief_seriality(believe: &Term, agent: &Term) -> Result<Term, WorldsError> {
    let p = Var::new("p", Type::prop());
    let w = var_avoiding("w", world_type(), &[believe, agent]);
    let v = var_avoiding("v", world_type(), &[believe, agent]);
    let (pt, wt, vt) = (Term::var(p.clone()), Term::var(w.clone()), Term::var(v.clone()));
    let bp = Term::apps(believe.clone(), [agent.clone(), pt.clone()])?;
    let rows = sugar::and(sugar::iff(app(&wt, &bp)?, app(&vt, &bp)?)?, sugar::imp(app(&wt, &bp)?, app(&vt, &pt)?)?)?;
    let succ = sugar::exists(v.clone(), sugar::and(app(&omega(), &vt)?, sugar::forall(p, rows)?)?)?;
    Ok(sugar::forall(w, sugar::imp(app(&omega(), &wt)?, succ)?)?)
}

/// `λwλw'. w(R w')`.
pub fn accessibility_relation(r: &Term) -> Result<Term, WorldsError> {
    let w = var_avoiding("w", world_type(), &[r]);
    let v = var_avoiding("v", world_type(), &[r]);
    let (wt, vt) = (Term::var(w.clone()), Term::var(v.clone()));
    Ok(Term::lam(w, Term::lam(v, app(&wt, &applied(r, &vt)?)?)?)?)
}
