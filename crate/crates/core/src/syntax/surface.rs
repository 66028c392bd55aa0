use super::error::TypeError;
use super::signature::Signature;
use super::sugar;
use super::term::{Const, Context, Term, Var};
use super::types::Type;

/// Parsed syntax before name resolution and sugar expansion.
#[derive(Clone, Debug, PartialEq)]
pub enum Surface {
    /// An identifier, optionally annotated `x:T`. Resolved against binders,
    /// then the signature, then the context.
    Ident {
        name: String,
        ann: Option<Type>,
        pos: usize,
    },
    /// Backquoted name: always a signature constant.
    ConstRef {
        name: String,
        pos: usize,
    },
    Bottom,
    Top,
    App(Box<Surface>, Box<Surface>),
    Lam(String, Type, Box<Surface>),
    Forall(String, Type, Box<Surface>),
    Exists(String, Type, Box<Surface>),
    Sub(Box<Surface>, Box<Surface>),
    Imp(Box<Surface>, Box<Surface>),
    Not(Box<Surface>),
    And(Box<Surface>, Box<Surface>),
    Or(Box<Surface>, Box<Surface>),
    Iff(Box<Surface>, Box<Surface>),
    Eq(Box<Surface>, Box<Surface>),
    /// An already-built core term, spliced in verbatim.
    Core(Term),
}

impl Surface {
    pub fn app(f: Surface, a: Surface) -> Surface {
        Surface::App(Box::new(f), Box::new(a))
    }
}

impl From<Term> for Surface {
    fn from(t: Term) -> Surface {
        Surface::Core(t)
    }
}

/// Expands sugar and resolves names, producing a core term.
pub fn desugar(s: &Surface, sig: &Signature, ctx: &Context) -> Result<Term, TypeError> {
    Desugar { sig, ctx, scope: Vec::new() }.go(s)
}

struct Desugar<'a> {
    sig: &'a Signature,
    ctx: &'a Context,
    scope: Vec<Var>,
}

impl Desugar<'_> {
    fn resolve(&self, name: &str, ann: &Option<Type>) -> Result<Term, TypeError> {
        match ann {
            Some(ty) => Ok(Term::var(Var::new(name, ty.clone()))),
            None => {
                if let Some(v) = self.scope.iter().rev().find(|v| &*v.name == name) {
                    return Ok(Term::var(v.clone()));
                }
                if let Some(ty) = self.ctx.get(name) {
                    return Ok(Term::var(Var::new(name, ty.clone())));
                }
                if let Some(ty) = self.sig.constant(name) {
                    return Ok(Term::constant(Const::new(name, ty.clone())));
                }
                Err(TypeError::UndeclaredConstant(name.to_string()))
            }
        }
    }

    fn bind(&mut self, name: &str, ty: &Type, body: &Surface) -> Result<(Var, Term), TypeError> {
        let v = Var::new(name, ty.clone());
        self.scope.push(v.clone());
        let b = self.go(body);
        self.scope.pop();
        Ok((v, b?))
    }

    fn go(&mut self, s: &Surface) -> Result<Term, TypeError> {
        Ok(match s {
            Surface::Ident { name, ann, .. } => self.resolve(name, ann)?,
            Surface::ConstRef { name, .. } => match self.sig.constant(name) {
                Some(ty) => Term::constant(Const::new(name, ty.clone())),
                None => return Err(TypeError::UndeclaredConstant(name.clone())),
            },
            Surface::Bottom => Term::bottom(),
            Surface::Top => sugar::top(),
            Surface::App(f, a) => Term::app(self.go(f)?, self.go(a)?)?,
            Surface::Lam(x, ty, b) => {
                let (v, body) = self.bind(x, ty, b)?;
                Term::lam(v, body)?
            }
            Surface::Forall(x, ty, b) => {
                let (v, body) = self.bind(x, ty, b)?;
                sugar::forall(v, body)?
            }
            Surface::Exists(x, ty, b) => {
                let (v, body) = self.bind(x, ty, b)?;
                sugar::exists(v, body)?
            }
            Surface::Sub(a, b) => Term::subset(self.go(a)?, self.go(b)?)?,
            Surface::Imp(a, b) => sugar::imp(self.go(a)?, self.go(b)?)?,
            Surface::Not(a) => sugar::not(self.go(a)?)?,
            Surface::And(a, b) => sugar::and(self.go(a)?, self.go(b)?)?,
            Surface::Or(a, b) => sugar::or(self.go(a)?, self.go(b)?)?,
            Surface::Iff(a, b) => sugar::iff(self.go(a)?, self.go(b)?)?,
            Surface::Eq(a, b) => sugar::eq(self.go(a)?, self.go(b)?)?,
            Surface::Core(t) => t.clone(),
        })
    }
}
