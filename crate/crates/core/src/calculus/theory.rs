//! Non-logical axiom supplies: fixed sentences plus scheme generators.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::syntax::{is_free_for, subst1, sugar, Signature, Term, TermKind, TypeError, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TheoryError {
    #[error("unknown scheme `{0}`")]
    UnknownScheme(String),
    #[error("scheme {scheme}: {reason}")]
    BadArguments { scheme: String, reason: String },
    #[error(transparent)]
    Type(#[from] TypeError),
}

/// A scheme maps argument tuples to (possibly open) instances; the theory
/// closes them universally.
pub trait Scheme: Send + Sync {
    fn name(&self) -> &str;
    fn instantiate(&self, args: &[Term]) -> Result<Term, TheoryError>;
    /// Argument tuples suggested by the given sentences.
    fn demand(&self, sentences: &[Term]) -> Vec<Vec<Term>>;
}

/// A request for one scheme instance.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Request {
    pub scheme: String,
    pub args: Vec<Term>,
}

#[derive(Clone, Default)]
pub struct Theory {
    pub name: String,
    /// Constants the theory adds to the language.
    pub signature: Signature,
    pub axioms: Vec<Term>,
    pub schemes: Vec<Arc<dyn Scheme>>,
}

impl fmt::Debug for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let schemes: Vec<&str> = self.schemes.iter().map(|s| s.name()).collect();
        f.debug_struct("Theory")
            .field("name", &self.name)
            .field("axioms", &self.axioms.len())
            .field("schemes", &schemes)
            .finish()
    }
}

impl Theory {
    pub fn empty(name: &str) -> Theory {
        Theory { name: name.to_string(), ..Theory::default() }
    }

    pub fn is_empty(&self) -> bool {
        self.axioms.is_empty() && self.schemes.is_empty()
    }

    /// Union of two theories. Duplicate axioms and same-named schemes are kept once.
    pub fn union(&self, other: &Theory) -> Result<Theory, TypeError> {
        let mut out = self.clone();
        out.name = if self.name.is_empty() {
            other.name.clone()
        } else if other.name.is_empty() {
            self.name.clone()
        } else {
            format!("{}+{}", self.name, other.name)
        };
        out.signature.merge(&other.signature)?;
        for a in &other.axioms {
            if !out.axioms.contains(a) {
                out.axioms.push(a.clone());
            }
        }
        for s in &other.schemes {
            if !out.schemes.iter().any(|t| t.name() == s.name()) {
                out.schemes.push(s.clone());
            }
        }
        Ok(out)
    }

    pub fn scheme(&self, name: &str) -> Option<&Arc<dyn Scheme>> {
        self.schemes.iter().find(|s| s.name() == name)
    }

    /// The closed instance for one request.
    pub fn instance(&self, req: &Request) -> Result<Term, TheoryError> {
        let scheme = self.scheme(&req.scheme).ok_or_else(|| TheoryError::UnknownScheme(req.scheme.clone()))?;
        let body = scheme.instantiate(&req.args)?;
        if !body.is_formula() {
            return Err(TheoryError::BadArguments {
                scheme: req.scheme.clone(),
                reason: "instance is not a formula".into(),
            });
        }
        Ok(universal_closure(&body)?)
    }

    /// Requests every scheme suggests for the given sentences, in scheme order.
    pub fn demand(&self, sentences: &[Term]) -> Vec<Request> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for s in &self.schemes {
            for args in s.demand(sentences) {
                let r = Request { scheme: s.name().to_string(), args };
                if seen.insert(r.clone()) {
                    out.push(r);
                }
            }
        }
        out
    }
}

/// Fixed axioms first, then the requested instances in order, without duplicates.
pub fn theory_instances(th: &Theory, requests: &[Request]) -> Result<Vec<Term>, TheoryError> {
    let mut out: Vec<Term> = Vec::new();
    let mut seen = HashSet::new();
    for a in &th.axioms {
        if seen.insert(a.clone()) {
            out.push(a.clone());
        }
    }
    for r in requests {
        let t = th.instance(r)?;
        if seen.insert(t.clone()) {
            out.push(t);
        }
    }
    Ok(out)
}

/// `∀x1...∀xn φ` over the free variables of φ, sorted by (name, type).
pub fn universal_closure(phi: &Term) -> Result<Term, TypeError> {
    let vars: Vec<Var> = phi.free_vars().into_iter().collect();
    sugar::forall_all(&vars, phi.clone())
}

fn bad(scheme: &str, reason: impl Into<String>) -> TheoryError {
    TheoryError::BadArguments { scheme: scheme.to_string(), reason: reason.into() }
}

/// `(λx.A)B = A{x:=B}`, if B is free for x in A. Arguments: `[λx.A, B]`.
#[derive(Debug, Default)]
pub struct Beta;

impl Scheme for Beta {
    fn name(&self) -> &str {
        "beta"
    }

    fn instantiate(&self, args: &[Term]) -> Result<Term, TheoryError> {
        let [lam, b] = args else { return Err(bad("beta", "expects [lam x . A, B]")) };
        let (x, a) = lam.as_lam().ok_or_else(|| bad("beta", "first argument is not an abstraction"))?;
        if !is_free_for(b, x, a)? {
            return Err(bad("beta", "argument not free for the bound variable"));
        }
        let redex = Term::app(lam.clone(), b.clone())?;
        let contractum = subst1(a, x, b).map_err(|e| bad("beta", e.to_string()))?;
        Ok(sugar::eq(redex, contractum)?)
    }

    fn demand(&self, sentences: &[Term]) -> Vec<Vec<Term>> {
        let mut out = Vec::new();
        for s in sentences {
            s.visit(&mut |t| {
                if let TermKind::App(f, b) = t.kind() {
                    if let Some((x, a)) = f.as_lam() {
                        if free_for(b, x, a) {
                            out.push(vec![f.clone(), b.clone()]);
                        }
                    }
                }
            });
        }
        out
    }
}

fn free_for(b: &Term, x: &Var, a: &Term) -> bool {
    is_free_for(b, x, a).unwrap_or(false)
}

/// `λx.Ax = A`, if x is not free in A. Arguments: `[λx.Ax]`.
#[derive(Debug, Default)]
pub struct Eta;

fn eta_parts(t: &Term) -> Option<&Term> {
    let (x, body) = t.as_lam()?;
    let (a, arg) = body.as_app()?;
    (arg.as_var() == Some(x) && !a.has_free(x)).then_some(a)
}

impl Scheme for Eta {
    fn name(&self) -> &str {
        "eta"
    }

    fn instantiate(&self, args: &[Term]) -> Result<Term, TheoryError> {
        let [lam] = args else { return Err(bad("eta", "expects [lam x . A x]")) };
        let a =
            eta_parts(lam).ok_or_else(|| bad("eta", "argument is not of the form lam x . A x with x not free in A"))?;
        Ok(sugar::eq(lam.clone(), a.clone())?)
    }

    fn demand(&self, sentences: &[Term]) -> Vec<Vec<Term>> {
        let mut out = Vec::new();
        for s in sentences {
            s.visit(&mut |t| {
                if eta_parts(t).is_some() {
                    out.push(vec![t.clone()]);
                }
            });
        }
        out
    }
}

/// `λx.A = λy.A{x:=y}`, if y is free for x in A and not free in λx.A.
/// Arguments: `[λx.A, y]`. Only explicit requests; nothing is demanded.
#[derive(Debug, Default)]
pub struct Alpha;

impl Scheme for Alpha {
    fn name(&self) -> &str {
        "alpha"
    }

    fn instantiate(&self, args: &[Term]) -> Result<Term, TheoryError> {
        let [lam, y] = args else { return Err(bad("alpha", "expects [lam x . A, y]")) };
        let (x, a) = lam.as_lam().ok_or_else(|| bad("alpha", "first argument is not an abstraction"))?;
        let yv = y.as_var().ok_or_else(|| bad("alpha", "second argument is not a variable"))?;
        if !is_free_for(y, x, a)? {
            return Err(bad("alpha", "new variable not free for the old one"));
        }
        if yv != x && lam.has_free(yv) {
            return Err(bad("alpha", "new variable occurs free in the abstraction"));
        }
        let renamed = Term::lam(yv.clone(), subst1(a, x, y).map_err(|e| bad("alpha", e.to_string()))?)?;
        Ok(sugar::eq(lam.clone(), renamed)?)
    }

    fn demand(&self, _sentences: &[Term]) -> Vec<Vec<Term>> {
        Vec::new()
    }
}

/// The three λ-conversion schemes.
pub fn lambda_conversion() -> Theory {
    Theory {
        name: "lambda-conv".into(),
        signature: Signature::new(),
        axioms: Vec::new(),
        schemes: vec![Arc::new(Alpha), Arc::new(Beta), Arc::new(Eta)],
    }
}
