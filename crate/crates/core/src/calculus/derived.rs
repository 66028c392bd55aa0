//! Macro expansion of the derived rules into base-rule proofs.

use std::collections::BTreeSet;

use thiserror::Error;

use super::build::{self, Built};
use super::check::{check_proof, set_rule, Rejection};
use super::proof::{fresh_names, Proof, RuleData, RuleId};
use crate::syntax::{subst1, sugar, Const, Sequent, Sign, Signature, SignedSentence, Term, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot expand {rule} node at {path:?}: {reason}")]
pub struct ExpansionError {
    pub path: Vec<usize>,
    pub rule: RuleId,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DerivedCheckError {
    #[error(transparent)]
    Expansion(#[from] ExpansionError),
    #[error(transparent)]
    Kernel(#[from] Rejection),
}

/// Replaces every derived node by a base-rule subproof with the same conclusion.
/// Witness constants needed by the expansion avoid every name in the proof and in `sig`.
pub fn expand_derived(p: &Proof, sig: &Signature) -> Result<Proof, ExpansionError> {
    let mut used = p.constant_names();
    used.extend(sig.constants().map(|c| c.name.to_string()));
    let mut path = Vec::new();
    expand(p, &mut used, &mut path)
}

/// Expands, then runs the kernel on the result.
pub fn check_derived(p: &Proof, sig: &Signature) -> Result<Proof, DerivedCheckError> {
    let base = expand_derived(p, sig)?;
    check_proof(&base, sig)?;
    Ok(base)
}

fn signed(sign: Sign, t: Term) -> Result<SignedSentence, String> {
    SignedSentence::new(sign, t).map_err(|e| e.to_string())
}

fn expand(p: &Proof, used: &mut BTreeSet<String>, path: &mut Vec<usize>) -> Result<Proof, ExpansionError> {
    let mut premises = Vec::with_capacity(p.premises.len());
    for (i, q) in p.premises.iter().enumerate() {
        path.push(i);
        premises.push(expand(q, used, path)?);
        path.pop();
    }
    if !p.rule.is_derived() {
        return Ok(Proof::new(p.conclusion.clone(), p.rule, p.data.clone(), premises));
    }
    if premises.len() != p.rule.arity() {
        return Err(ExpansionError {
            path: path.clone(),
            rule: p.rule,
            reason: format!("expected {} premises, found {}", p.rule.arity(), premises.len()),
        });
    }
    expand_node(p, premises, used).map_err(|reason| ExpansionError { path: path.clone(), rule: p.rule, reason })
}

fn expand_node(p: &Proof, premises: Vec<Proof>, used: &mut BTreeSet<String>) -> Built {
    let g = &p.conclusion;
    let mut prems = premises.into_iter();
    match (p.rule, &p.data) {
        (RuleId::TopR, RuleData::None) => {
            if !g.has(Sign::R, &sugar::top()) {
                return Err("R:top not in conclusion".into());
            }
            build::top_r(g)
        }
        (RuleId::ImpR, RuleData::Principal(imp)) => {
            let (phi, psi) = sugar::as_imp(imp).ok_or("principal is not an implication")?;
            let q = prems.next().expect("arity");
            set_rule(
                g,
                &signed(Sign::R, imp.clone())?,
                &[(&q.conclusion, vec![signed(Sign::L, phi.clone())?, signed(Sign::R, psi.clone())?])],
            )?;
            build::sub_r(g, imp, &[], |g1| Ok(q.weaken_to(g1)))
        }
        (RuleId::ImpL, RuleData::Principal(imp)) => {
            let (phi, psi) = sugar::as_imp(imp).ok_or("principal is not an implication")?;
            let q_psi = prems.next().expect("arity");
            let q_phi = prems.next().expect("arity");
            set_rule(
                g,
                &signed(Sign::L, imp.clone())?,
                &[
                    (&q_psi.conclusion, vec![signed(Sign::L, psi.clone())?]),
                    (&q_phi.conclusion, vec![signed(Sign::R, phi.clone())?]),
                ],
            )?;
            build::sub_l(g, imp, &[], |g1| Ok(q_psi.weaken_to(g1)), |g2| Ok(q_phi.weaken_to(g2)))
        }
        (RuleId::AllL, RuleData::Instantiate { principal, args }) => {
            let (x, phi) = sugar::as_forall(principal).ok_or("principal is not universal")?;
            let [a] = args.as_slice() else { return Err("AllL takes exactly one witness".into()) };
            if !a.is_closed() || a.ty() != &x.ty {
                return Err(format!("witness {a} is not a closed term of type {}", x.ty));
            }
            let inst = subst1(phi, x, a).map_err(|e| e.to_string())?;
            let q = prems.next().expect("arity");
            set_rule(g, &signed(Sign::L, principal.clone())?, &[(&q.conclusion, vec![signed(Sign::L, inst)?])])?;
            let (top_lam, phi_lam) = principal.as_subset().expect("forall shape");
            let phi_a = Term::app(phi_lam.clone(), a.clone()).map_err(|e| e.to_string())?;
            let top_a = Term::app(top_lam.clone(), a.clone()).map_err(|e| e.to_string())?;
            build::sub_l(
                g,
                principal,
                std::slice::from_ref(a),
                |g1| build::lam(g1, Sign::L, &phi_a, |g2| Ok(q.weaken_to(g2))),
                |g1| build::lam(g1, Sign::R, &top_a, build::top_r),
            )
        }
        (RuleId::AllR, RuleData::Fresh { principal, fresh }) => {
            let (x, phi) = sugar::as_forall(principal).ok_or("principal is not universal")?;
            let [c] = fresh.as_slice() else { return Err("AllR takes exactly one witness".into()) };
            if c.ty != x.ty {
                return Err(format!("witness {} has type {}, expected {}", c.name, c.ty, x.ty));
            }
            if g.constant_names().contains(&*c.name) {
                return Err(format!("witness {} is not fresh", c.name));
            }
            let ct = Term::constant(c.clone());
            let inst = subst1(phi, x, &ct).map_err(|e| e.to_string())?;
            let q = prems.next().expect("arity");
            set_rule(g, &signed(Sign::R, principal.clone())?, &[(&q.conclusion, vec![signed(Sign::R, inst)?])])?;
            let (_, phi_lam) = principal.as_subset().expect("forall shape");
            let phi_c = Term::app(phi_lam.clone(), ct).map_err(|e| e.to_string())?;
            build::sub_r(g, principal, std::slice::from_ref(c), |g1| {
                build::lam(g1, Sign::R, &phi_c, |g2| Ok(q.weaken_to(g2)))
            })
        }
        (RuleId::EqR, RuleData::Principal(eq)) => {
            let (a, b) = sugar::as_eq(eq).ok_or("principal is not an equation")?;
            if a != b {
                return Err("EqR needs an equation A=A".into());
            }
            if !g.has(Sign::R, eq) {
                return Err("R:A=A not in conclusion".into());
            }
            let name = fresh_names(used).next().expect("infinite pool");
            used.insert(name.clone());
            let (z, body) = sugar::as_forall(eq).expect("eq shape");
            let c = Const::new(&name, z.ty.clone());
            let ct = Term::constant(c.clone());
            let (_, body_lam) = eq.as_subset().expect("forall shape");
            let redex = Term::app(body_lam.clone(), ct.clone()).map_err(|e| e.to_string())?;
            let ca = Term::app(ct, a.clone()).map_err(|e| e.to_string())?;
            let inner = subst1(body, z, &Term::constant(c.clone())).map_err(|e| e.to_string())?;
            build::sub_r(g, eq, &[c], |g1| {
                build::lam(g1, Sign::R, &redex, |g2| build::sub_r(g2, &inner, &[], |g3| Ok(build::axiom(g3, &ca))))
            })
        }
        (RuleId::EqL, RuleData::Equation { equation, reversed, hole, context }) => {
            let q = prems.next().expect("arity");
            expand_eq_l(g, q, equation, *reversed, hole, context)
        }
        _ => Err("rule data does not fit the rule".into()),
    }
}

fn expand_eq_l(g: &Sequent, q: Proof, equation: &Term, reversed: bool, x: &Var, phi: &Term) -> Built {
    let (l, r) = sugar::as_eq(equation).ok_or("equation data is not an equation")?;
    let (a, b) = if reversed { (r, l) } else { (l, r) };
    if x.ty != *a.ty() {
        return Err(format!("hole has type {}, equation sides {}", x.ty, a.ty()));
    }
    if !phi.is_formula() {
        return Err("context is not a formula".into());
    }
    let phi_a = subst1(phi, x, a).map_err(|e| format!("A not free for the hole: {e}"))?;
    let phi_b = subst1(phi, x, b).map_err(|e| format!("B not free for the hole: {e}"))?;
    if !g.has(Sign::L, equation) {
        return Err("equation not on the left of the conclusion".into());
    }
    if !q.conclusion.has(Sign::L, equation) {
        return Err("equation not on the left of the premise".into());
    }
    set_rule(g, &signed(Sign::R, phi_b.clone())?, &[(&q.conclusion, vec![signed(Sign::R, phi_a.clone())?])])?;

    let err = |e: crate::syntax::TypeError| e.to_string();
    let (z, body) = sugar::as_forall(equation).expect("eq shape");
    let (top_lam, body_lam) = equation.as_subset().expect("forall shape");
    let ctx = if reversed { sugar::not(phi.clone()).map_err(err)? } else { phi.clone() };
    let c = Term::lam(x.clone(), ctx).map_err(err)?;
    let redex = Term::app(body_lam.clone(), c.clone()).map_err(err)?;
    let top_redex = Term::app(top_lam.clone(), c.clone()).map_err(err)?;
    // z C l ⊂ z C r with z := C
    let inner = subst1(body, z, &c).map_err(|e| e.to_string())?;
    let cl = Term::app(c.clone(), l.clone()).map_err(err)?;
    let cr = Term::app(c.clone(), r.clone()).map_err(err)?;

    let top_branch = |g1: &Sequent| build::lam(g1, Sign::R, &top_redex, build::top_r);
    if !reversed {
        // C = λx.φ; inner is C A ⊂ C B.
        build::sub_l(
            g,
            equation,
            std::slice::from_ref(&c),
            |g1| {
                build::lam(g1, Sign::L, &redex, |g2| {
                    build::sub_l(
                        g2,
                        &inner,
                        &[],
                        |g3| build::lam(g3, Sign::L, &cr, |g4| Ok(build::axiom(g4, &phi_b))),
                        |g3| build::lam(g3, Sign::R, &cl, |g4| Ok(q.weaken_to(g4))),
                    )
                })
            },
            top_branch,
        )
    } else {
        // C = λx.¬φ; the equation reads B=A, inner is C B ⊂ C A.
        let not_phi_a = sugar::not(phi_a.clone()).map_err(err)?;
        let not_phi_b = sugar::not(phi_b.clone()).map_err(err)?;
        build::sub_l(
            g,
            equation,
            std::slice::from_ref(&c),
            |g1| {
                build::lam(g1, Sign::L, &redex, |g2| {
                    build::sub_l(
                        g2,
                        &inner,
                        &[],
                        |g3| {
                            build::lam(g3, Sign::L, &cr, |g4| {
                                build::sub_l(
                                    g4,
                                    &not_phi_a,
                                    &[],
                                    |g5| Ok(build::bottom_l(g5)),
                                    |g5| Ok(q.weaken_to(g5)),
                                )
                            })
                        },
                        |g3| {
                            build::lam(g3, Sign::R, &cl, |g4| {
                                build::sub_r(g4, &not_phi_b, &[], |g5| Ok(build::axiom(g5, &phi_b)))
                            })
                        },
                    )
                })
            },
            top_branch,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_sequent, parse_term, Type};

    fn sig() -> Signature {
        let e = Type::basic("e");
        Signature::new()
            .with("p", Type::prop())
            .with("q", Type::prop())
            .with("a", e.clone())
            .with("b", e.clone())
            .with("P", e.property())
    }

    #[test]
    fn imp_r_expands() {
        let s = sig();
        let goal = parse_sequent("=> p -> p", &s).unwrap();
        let imp = goal.right().next().unwrap().clone();
        let prem = parse_sequent("p => p", &s).unwrap();
        let p = Term::cnst("p", Type::prop());
        let proof = Proof::new(
            goal,
            RuleId::ImpR,
            RuleData::Principal(imp),
            vec![Proof::leaf(prem, RuleId::Axiom, RuleData::Principal(p))],
        );
        let base = check_derived(&proof, &s).unwrap();
        assert!(!base.uses_derived());
    }

    #[test]
    fn eq_r_expands() {
        let s = sig();
        let goal = parse_sequent("=> a = a", &s).unwrap();
        let eq = goal.right().next().unwrap().clone();
        let proof = Proof::leaf(goal, RuleId::EqR, RuleData::Principal(eq));
        check_derived(&proof, &s).unwrap();
    }

    #[test]
    fn eq_l_both_orientations() {
        let s = sig();
        let e = Type::basic("e");
        let x = Var::new("x", e.clone());
        let phi = parse_term("P x:e", &s).unwrap();
        for (eq_text, reversed) in [("a = b", false), ("b = a", true)] {
            let goal = parse_sequent(&format!("{eq_text} => P b"), &s).unwrap();
            let eq = goal.left().next().unwrap().clone();
            let prem = parse_sequent(&format!("{eq_text} => P a"), &s).unwrap();
            // Close the premise through an extra R:top so the test needs no L:P a.
            let leaf_goal = prem.with(SignedSentence::r(sugar::top()));
            let leaf = Proof::leaf(leaf_goal, RuleId::TopR, RuleData::None);
            let proof = Proof::new(
                goal.with(SignedSentence::r(sugar::top())),
                RuleId::EqL,
                RuleData::Equation { equation: eq, reversed, hole: x.clone(), context: phi.clone() },
                vec![leaf],
            );
            check_derived(&proof, &s).unwrap_or_else(|e| panic!("{eq_text}: {e}"));
        }
    }

    #[test]
    fn inconsistent_data_is_an_expansion_error() {
        let s = sig();
        let goal = parse_sequent("=> p", &s).unwrap();
        let proof = Proof::leaf(goal, RuleId::TopR, RuleData::None);
        assert!(matches!(check_derived(&proof, &s), Err(DerivedCheckError::Expansion(_))));
    }
}
