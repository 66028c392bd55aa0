//! Finite countermodels for saturated sequents.
//!
//! Tokens stand for pairs of a closed term and a possible extension. A
//! compound token is identified by its intension key, and its extension is
//! recomputed from the compositional clauses until nothing changes. Constants
//! keep the extension forced by the left literals of the sequent.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use super::model::{Assignment, EvalError, Ext, FiniteModel, Tok};
use crate::prover::canonical_inhabitant;
use crate::syntax::{Sequent, Sign, Signature, Term, TermKind, Type};

/// Most tokens a construction may create.
const TOKEN_LIMIT: usize = 20_000;
/// Most recomputation rounds before giving up on a fixpoint.
const ROUND_LIMIT: usize = 200;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CountermodelError {
    #[error("no constant of basic type {0}")]
    NoConstant(Type),
    #[error("validation failed at {0}")]
    ValidationFailed(String),
}

fn failed(stage: impl Into<String>) -> CountermodelError {
    CountermodelError::ValidationFailed(stage.into())
}

/// Builds a model refuting `seq`, validated before it is returned.
pub fn build_countermodel(seq: &Sequent, sig: &Signature) -> Result<FiniteModel, CountermodelError> {
    match Builder::build(seq, sig, true) {
        Ok(m) => Ok(m),
        Err(CountermodelError::ValidationFailed(_)) => Builder::build(seq, sig, false),
        Err(e) => Err(e),
    }
}

struct Builder<'a> {
    m: FiniteModel,
    seq: &'a Sequent,
    sig: &'a Signature,
    /// Compound tokens with the closed shell their extension is computed from.
    shells: BTreeMap<Tok, Term>,
    /// Tokens that separate members of a domain: `λx.⊥` paired with `{d}`.
    separated: BTreeSet<Tok>,
}

impl<'a> Builder<'a> {
    fn build(seq: &'a Sequent, sig: &'a Signature, separators: bool) -> Result<FiniteModel, CountermodelError> {
        let mut b = Builder { m: FiniteModel::new(), seq, sig, shells: BTreeMap::new(), separated: BTreeSet::new() };
        let consts: BTreeSet<_> = seq.iter().flat_map(|s| s.sentence.constants()).collect();
        for c in &consts {
            let t = b.m.add_token(&c.ty);
            b.m.bind_constant(&c.name, t);
        }
        for s in seq {
            b.intern(&s.sentence)?;
        }
        b.constant_extensions()?;
        for s in seq.iter().filter(|s| s.sign == Sign::L) {
            if let Some((a, _)) = s.sentence.as_subset() {
                for ty in a.ty().args().to_vec() {
                    b.inhabit(&ty, true)?;
                }
            }
        }
        loop {
            b.fill_domains()?;
            if separators {
                b.add_separators()?;
            }
            let before = b.m.tokens().len();
            b.fixpoint()?;
            if b.m.tokens().len() == before {
                break;
            }
        }
        let m = b.m;
        match m.refutes(seq) {
            Ok(true) => {}
            Ok(false) => return Err(failed("refutation")),
            Err(e) => return Err(failed(format!("refutation: {e}"))),
        }
        let probes: Vec<Term> = seq.iter().map(|s| s.sentence.clone()).collect();
        let report = m.check(&probes);
        if !report.is_ok() || !report.escapes.is_empty() {
            return Err(failed("model check"));
        }
        Ok(m)
    }

    fn budget(&self) -> Result<(), CountermodelError> {
        if self.m.tokens().len() > TOKEN_LIMIT {
            Err(failed("carrier"))
        } else {
            Ok(())
        }
    }

    /// The token of a closed term, creating tokens for missing keys.
    fn intern(&mut self, t: &Term) -> Result<Tok, CountermodelError> {
        loop {
            match self.m.resolve_intension(&Assignment::new(), t) {
                Ok(tok) => return Ok(tok),
                Err(EvalError::CarrierEscape { key, shell }) => self.create(&key, shell)?,
                Err(EvalError::UnknownConstant(name)) => {
                    let c = t.constants().into_iter().find(|c| *c.name == *name).expect("constant occurs");
                    let tok = self.m.add_token(&c.ty);
                    self.m.bind_constant(&name, tok);
                }
                Err(e) => return Err(failed(format!("intension: {e}"))),
            }
        }
    }

    fn create(&mut self, key: &str, shell: Term) -> Result<(), CountermodelError> {
        self.budget()?;
        let tok = self.m.add_token(shell.ty());
        self.m.bind_key(key, tok);
        self.shells.insert(tok, shell);
        Ok(())
    }

    /// Extension of a complex constant: the tuples its left literals force.
    fn constant_extensions(&mut self) -> Result<(), CountermodelError> {
        let mut exts: BTreeMap<Tok, Ext> = BTreeMap::new();
        for phi in self.seq.left() {
            let (head, args) = phi.spine();
            let TermKind::Const(c) = head.kind() else { continue };
            let Some(&tok) = self.m.constants().get(&*c.name) else { continue };
            let args: Vec<Term> = args.into_iter().cloned().collect();
            let mut row = Vec::with_capacity(args.len());
            for a in &args {
                row.push(self.intern(a)?);
            }
            exts.entry(tok).or_default().insert(row);
        }
        for (tok, e) in exts {
            self.m.set_ext(tok, e);
        }
        Ok(())
    }

    /// Makes the domain of `ty` nonempty, or adds its inhabitant outright.
    fn inhabit(&mut self, ty: &Type, always: bool) -> Result<(), CountermodelError> {
        if !always && !self.m.domain(ty).is_empty() {
            return Ok(());
        }
        match canonical_inhabitant(ty, self.sig) {
            Some(t) => {
                self.intern(&t)?;
                Ok(())
            }
            None if !self.m.domain(ty).is_empty() => Ok(()),
            None => Err(CountermodelError::NoConstant(ty.clone())),
        }
    }

    /// Every argument type of a populated type gets a nonempty domain.
    fn fill_domains(&mut self) -> Result<(), CountermodelError> {
        loop {
            let mut needed = BTreeSet::new();
            for ty in self.m.domains().keys() {
                let mut comps = Vec::new();
                ty.components(&mut comps);
                needed.extend(comps.into_iter().filter(|c| self.m.domain(c).is_empty()));
            }
            if needed.is_empty() {
                return Ok(());
            }
            for ty in needed {
                self.inhabit(&ty, false)?;
            }
        }
    }

    /// For each populated type whose property type is populated too, adds
    /// `{d}` tokens so that no two members of the domain are identified.
    fn add_separators(&mut self) -> Result<(), CountermodelError> {
        let mut types: Vec<Type> = self.m.domains().keys().cloned().collect();
        types.sort_by_key(Type::depth);
        for ty in types {
            let prop = ty.property();
            if self.m.domain(&prop).is_empty() {
                continue;
            }
            let forbidden = self.excluded_from_empty(&prop)?;
            let covered: BTreeSet<Tok> = self
                .m
                .domain(&prop)
                .iter()
                .filter_map(|p| {
                    let e = self.m.ext(*p);
                    (e.len() == 1 && self.separated.contains(p)).then(|| e.iter().next().unwrap()[0])
                })
                .collect();
            for d in self.m.domain(&ty).to_vec() {
                if covered.contains(&d) || forbidden.contains(&d) {
                    continue;
                }
                self.budget()?;
                let sep = self.m.add_token(&prop);
                self.m.set_ext(sep, Ext::from([vec![d]]));
                self.separated.insert(sep);
            }
        }
        Ok(())
    }

    /// Tokens `d` with `R: (λx.⊥) B` in the sequent and `I(B) = d`.
    fn excluded_from_empty(&mut self, prop: &Type) -> Result<BTreeSet<Tok>, CountermodelError> {
        let empty = canonical_inhabitant(prop, self.sig).expect("complex type");
        let mut out = BTreeSet::new();
        let rights: Vec<Term> = self.seq.right().cloned().collect();
        for phi in rights {
            if let Some((f, b)) = phi.as_app() {
                if *f == empty {
                    out.insert(self.intern(b)?);
                }
            }
        }
        Ok(out)
    }

    /// Recomputes compound extensions until they are stable.
    fn fixpoint(&mut self) -> Result<(), CountermodelError> {
        for _ in 0..ROUND_LIMIT {
            let mut changed = false;
            let shells: Vec<(Tok, Term)> = self.shells.iter().map(|(k, v)| (*k, v.clone())).collect();
            let mut updates = Vec::new();
            for (tok, shell) in shells {
                if shell.ty().is_basic() {
                    continue;
                }
                match self.m.eval_extension(&Assignment::new(), &shell) {
                    Ok(e) => {
                        if *self.m.ext(tok) != e {
                            updates.push((tok, e));
                        }
                    }
                    Err(EvalError::CarrierEscape { key, shell }) => {
                        self.create(&key, shell)?;
                        changed = true;
                    }
                    Err(e) => return Err(failed(format!("evaluation: {e}"))),
                }
            }
            if !updates.is_empty() {
                changed = true;
            }
            for (tok, e) in updates {
                self.m.set_ext(tok, e);
            }
            if !changed {
                return Ok(());
            }
            self.fill_domains()?;
        }
        Err(failed("fixpoint"))
    }
}
