//! Constructors for base-rule nodes. Each computes the premise sequent and
//! hands it to a continuation that proves it.

use super::check::{apply_args, contract_head};
use super::proof::{Proof, RuleData, RuleId};
use crate::syntax::{sugar, Const, Sequent, Sign, SignedSentence, Term};

pub type Built = Result<Proof, String>;

fn signed(sign: Sign, t: Term) -> Result<SignedSentence, String> {
    SignedSentence::new(sign, t).map_err(|e| e.to_string())
}

pub fn axiom(g: &Sequent, phi: &Term) -> Proof {
    Proof::leaf(g.clone(), RuleId::Axiom, RuleData::Principal(phi.clone()))
}

pub fn bottom_l(g: &Sequent) -> Proof {
    Proof::leaf(g.clone(), RuleId::BottomL, RuleData::None)
}

/// LamL or LamR on the head redex `t`.
pub fn lam(g: &Sequent, sign: Sign, t: &Term, k: impl FnOnce(&Sequent) -> Built) -> Built {
    let reduced = contract_head(t)?;
    let g1 = g.with(signed(sign, reduced)?);
    let rule = if sign == Sign::L { RuleId::LamL } else { RuleId::LamR };
    Ok(Proof::new(g.clone(), rule, RuleData::Principal(t.clone()), vec![k(&g1)?]))
}

/// SubL on `principal = A⊂B` with closed `args`. `k_b` proves the premise
/// with `L:B C⃗`, `k_a` the one with `R:A C⃗`.
pub fn sub_l(
    g: &Sequent,
    principal: &Term,
    args: &[Term],
    k_b: impl FnOnce(&Sequent) -> Built,
    k_a: impl FnOnce(&Sequent) -> Built,
) -> Built {
    let (a, b) = principal.as_subset().ok_or("not an inclusion")?;
    let gb = g.with(signed(Sign::L, apply_args(b, args)?)?);
    let ga = g.with(signed(Sign::R, apply_args(a, args)?)?);
    let data = RuleData::Instantiate { principal: principal.clone(), args: args.to_vec() };
    Ok(Proof::new(g.clone(), RuleId::SubL, data, vec![k_b(&gb)?, k_a(&ga)?]))
}

/// SubR on `principal = A⊂B` with witnesses `fresh`.
pub fn sub_r(g: &Sequent, principal: &Term, fresh: &[Const], k: impl FnOnce(&Sequent) -> Built) -> Built {
    let (a, b) = principal.as_subset().ok_or("not an inclusion")?;
    let cs: Vec<Term> = fresh.iter().cloned().map(Term::constant).collect();
    let g1 = g.with(signed(Sign::L, apply_args(a, &cs)?)?).with(signed(Sign::R, apply_args(b, &cs)?)?);
    let data = RuleData::Fresh { principal: principal.clone(), fresh: fresh.to_vec() };
    Ok(Proof::new(g.clone(), RuleId::SubR, data, vec![k(&g1)?]))
}

/// Base proof of a sequent containing `R:⊤`.
pub fn top_r(g: &Sequent) -> Built {
    sub_r(g, &sugar::top(), &[], |g1| Ok(bottom_l(g1)))
}
