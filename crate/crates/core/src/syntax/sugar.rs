//! Defined connectives as functions on core terms, and their recognisers.
//!
//! The expansions are fixed:
//! `φ→ψ := φ⊂ψ`, `⊤ := ⊥⊂⊥`, `∀xφ := (λx.⊤)⊂(λx.φ)`,
//! `A=B := ∀z(zA→zB)` with `z : <α>` drawn from the reserved `%` namespace,
//! `¬φ := φ→⊥`, `φ∧ψ := ¬(φ→¬ψ)`, `φ∨ψ := ¬φ→ψ`,
//! `φ↔ψ := (φ→ψ)∧(ψ→φ)`, `∃xφ := ¬∀x¬φ`.

use super::error::TypeError;
use super::term::{Term, Var};
use super::types::Type;

fn expect_formula(t: &Term, what: &str) -> Result<(), TypeError> {
    if t.is_formula() {
        Ok(())
    } else {
        Err(TypeError::Mismatch(format!("{what} expects formulas, got type {}", t.ty())))
    }
}

pub fn top() -> Term {
    Term::subset(Term::bottom(), Term::bottom()).expect("bot sub bot")
}

pub fn imp(a: Term, b: Term) -> Result<Term, TypeError> {
    expect_formula(&a, "->")?;
    expect_formula(&b, "->")?;
    Term::subset(a, b)
}

pub fn not(a: Term) -> Result<Term, TypeError> {
    expect_formula(&a, "~")?;
    Term::subset(a, Term::bottom())
}

pub fn and(a: Term, b: Term) -> Result<Term, TypeError> {
    not(imp(a, not(b)?)?)
}

pub fn or(a: Term, b: Term) -> Result<Term, TypeError> {
    imp(not(a)?, b)
}

pub fn iff(a: Term, b: Term) -> Result<Term, TypeError> {
    and(imp(a.clone(), b.clone())?, imp(b, a)?)
}

pub fn forall(x: Var, body: Term) -> Result<Term, TypeError> {
    expect_formula(&body, "forall")?;
    Term::subset(Term::lam(x.clone(), top())?, Term::lam(x, body)?)
}

/// Nested universal closure, outermost binder first.
pub fn forall_all(xs: &[Var], body: Term) -> Result<Term, TypeError> {
    xs.iter().rev().try_fold(body, |acc, x| forall(x.clone(), acc))
}

pub fn exists(x: Var, body: Term) -> Result<Term, TypeError> {
    not(forall(x, not(body)?)?)
}

/// The bound variable used by the expansion of `a = b`.
pub fn eq_binder(a: &Term, b: &Term) -> Var {
    let ty = a.ty().property();
    let mut i = 0usize;
    loop {
        let name = if i == 0 { "%z".to_string() } else { format!("%z{i}") };
        let clash = a.free_vars().iter().chain(b.free_vars().iter()).any(|v| *v.name == *name);
        if !clash {
            return Var::new(&name, ty);
        }
        i += 1;
    }
}

pub fn eq(a: Term, b: Term) -> Result<Term, TypeError> {
    if a.ty() != b.ty() {
        return Err(TypeError::Mismatch(format!("equation between types {} and {}", a.ty(), b.ty())));
    }
    let z = eq_binder(&a, &b);
    let zt = Term::var(z.clone());
    forall(z, imp(Term::app(zt.clone(), a)?, Term::app(zt, b)?)?)
}

pub fn is_top(t: &Term) -> bool {
    matches!(t.as_subset(), Some((a, b)) if a.is_bottom() && b.is_bottom())
}

pub fn as_imp(t: &Term) -> Option<(&Term, &Term)> {
    t.as_subset().filter(|(a, _)| a.is_formula())
}

pub fn as_not(t: &Term) -> Option<&Term> {
    as_imp(t).filter(|(_, b)| b.is_bottom()).map(|(a, _)| a)
}

pub fn as_forall(t: &Term) -> Option<(&Var, &Term)> {
    let (l, r) = t.as_subset()?;
    let (x, top_body) = l.as_lam()?;
    let (y, body) = r.as_lam()?;
    if x == y && is_top(top_body) && body.is_formula() {
        Some((y, body))
    } else {
        None
    }
}

pub fn as_exists(t: &Term) -> Option<(&Var, &Term)> {
    let (x, inner) = as_forall(as_not(t)?)?;
    Some((x, as_not(inner)?))
}

pub fn as_and(t: &Term) -> Option<(&Term, &Term)> {
    let (a, nb) = as_imp(as_not(t)?)?;
    Some((a, as_not(nb)?))
}

pub fn as_or(t: &Term) -> Option<(&Term, &Term)> {
    let (na, b) = as_imp(t)?;
    Some((as_not(na)?, b))
}

pub fn as_iff(t: &Term) -> Option<(&Term, &Term)> {
    let (l, r) = as_and(t)?;
    let (a, b) = as_imp(l)?;
    let (b2, a2) = as_imp(r)?;
    if a == a2 && b == b2 {
        Some((a, b))
    } else {
        None
    }
}

/// Recognises exactly the expansion produced by [`eq`].
pub fn as_eq(t: &Term) -> Option<(&Term, &Term)> {
    let (z, body) = as_forall(t)?;
    let (za, zb) = as_imp(body)?;
    let (z1, a) = za.as_app()?;
    let (z2, b) = zb.as_app()?;
    if z1.as_var() != Some(z) || z2.as_var() != Some(z) || a.has_free(z) || b.has_free(z) {
        return None;
    }
    if eq_binder(a, b) != *z {
        return None;
    }
    Some((a, b))
}

/// `λx1...λxn.⊥` for a complex type.
pub fn empty_relation(ty: &Type) -> Option<Term> {
    if !ty.is_complex() {
        return None;
    }
    let vars: Vec<Var> = ty.args().iter().enumerate().map(|(i, a)| Var::new(&format!("%x{i}"), a.clone())).collect();
    let mut t = Term::bottom();
    for v in vars.into_iter().rev() {
        t = Term::lam(v, t).expect("complex body");
    }
    Some(t)
}
