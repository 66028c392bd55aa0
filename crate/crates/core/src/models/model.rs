use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;

use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::syntax::{parse_type, print_term, Sequent, Sign, Term, TermKind, Type, Var};

/// Index of a token in its model.
pub type Tok = usize;
/// A set of token tuples. At type `<>` this is `{}` (0) or `{[]}` (1).
pub type Ext = BTreeSet<Vec<Tok>>;
/// Variable assignment; only consulted variables need entries.
pub type Assignment = BTreeMap<Var, Tok>;

/// Prefix marking a constant that stands for a token inside intension keys.
pub const TOKEN_MARK: char = '#';

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TokenInfo {
    pub name: String,
    pub ty: Type,
    /// Empty and unused for tokens of basic type.
    pub ext: Ext,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("carrier escape: no intension for `{key}`")]
    CarrierEscape { key: String, shell: Term },
    #[error("unassigned variable `{0}`")]
    Unassigned(String),
    #[error("constant `{0}` has no intension")]
    UnknownConstant(String),
    #[error("unknown token `{0}`")]
    UnknownToken(String),
    #[error("`{0}` has basic type and no extension")]
    BasicType(String),
}

#[derive(Debug, Error)]
pub enum ModelFormatError {
    #[error("malformed model file: {0}")]
    Shape(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

/// A finite intensional model with partial intension tables.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FiniteModel {
    tokens: Vec<TokenInfo>,
    by_name: HashMap<String, Tok>,
    domains: BTreeMap<Type, Vec<Tok>>,
    constants: BTreeMap<String, Tok>,
    intensions: BTreeMap<String, Tok>,
}

impl FiniteModel {
    pub fn new() -> FiniteModel {
        FiniteModel::default()
    }

    /// Adds a token named `<type>/<k>`, spaces in the type written as commas.
    pub fn add_token(&mut self, ty: &Type) -> Tok {
        let k = self.domains.get(ty).map_or(0, Vec::len);
        self.add_named_token(&format!("{}/{k}", ty.to_string().replace(' ', ",")), ty)
            .expect("generated names are fresh")
    }

    pub fn add_named_token(&mut self, name: &str, ty: &Type) -> Result<Tok, String> {
        if self.by_name.contains_key(name) {
            return Err(format!("duplicate token `{name}`"));
        }
        let id = self.tokens.len();
        self.tokens.push(TokenInfo { name: name.to_string(), ty: ty.clone(), ext: Ext::new() });
        self.by_name.insert(name.to_string(), id);
        self.domains.entry(ty.clone()).or_default().push(id);
        Ok(id)
    }

    pub fn set_ext(&mut self, t: Tok, ext: Ext) {
        self.tokens[t].ext = ext;
    }

    pub fn bind_constant(&mut self, name: &str, t: Tok) {
        self.constants.insert(name.to_string(), t);
    }

    pub fn bind_key(&mut self, key: &str, t: Tok) {
        self.intensions.insert(key.to_string(), t);
    }

    pub fn token(&self, t: Tok) -> &TokenInfo {
        &self.tokens[t]
    }

    pub fn tokens(&self) -> &[TokenInfo] {
        &self.tokens
    }

    pub fn token_named(&self, name: &str) -> Option<Tok> {
        self.by_name.get(name).copied()
    }

    pub fn ext(&self, t: Tok) -> &Ext {
        &self.tokens[t].ext
    }

    pub fn domain(&self, ty: &Type) -> &[Tok] {
        self.domains.get(ty).map_or(&[], Vec::as_slice)
    }

    pub fn domains(&self) -> &BTreeMap<Type, Vec<Tok>> {
        &self.domains
    }

    pub fn constants(&self) -> &BTreeMap<String, Tok> {
        &self.constants
    }

    pub fn intensions(&self) -> &BTreeMap<String, Tok> {
        &self.intensions
    }

    /// The constant standing for token `t` inside keys.
    pub fn token_term(&self, t: Tok) -> Term {
        let info = &self.tokens[t];
        Term::cnst(&format!("{TOKEN_MARK}{}", info.name), info.ty.clone())
    }

    fn token_of_mark(&self, name: &str) -> Option<Tok> {
        name.strip_prefix(TOKEN_MARK).and_then(|n| self.token_named(n))
    }

    /// The intension table key of a closed term whose closed proper
    /// subterms have intensions `sub`.
    pub(crate) fn key_of(
        &self,
        t: &Term,
        sub: &mut impl FnMut(&Term) -> Result<Tok, EvalError>,
    ) -> Result<String, EvalError> {
        let shell = self.replace_closed(t, true, sub)?;
        Ok(print_term(&shell))
    }

    /// Replaces every maximal closed proper subterm by its token constant.
    fn replace_closed(
        &self,
        t: &Term,
        top: bool,
        sub: &mut impl FnMut(&Term) -> Result<Tok, EvalError>,
    ) -> Result<Term, EvalError> {
        if !top && t.is_closed() {
            return Ok(self.token_term(sub(t)?));
        }
        Ok(match t.kind() {
            TermKind::Const(_) | TermKind::Var(_) | TermKind::Bottom => t.clone(),
            TermKind::App(a, b) => {
                Term::app(self.replace_closed(a, false, sub)?, self.replace_closed(b, false, sub)?).expect("typed")
            }
            TermKind::Subset(a, b) => {
                Term::subset(self.replace_closed(a, false, sub)?, self.replace_closed(b, false, sub)?).expect("typed")
            }
            TermKind::Lam(x, b) => Term::lam(x.clone(), self.replace_closed(b, false, sub)?).expect("typed"),
        })
    }

    /// Replaces free variables by the constants of their tokens.
    fn close_under(&self, a: &Assignment, t: &Term) -> Result<Term, EvalError> {
        if t.is_closed() {
            return Ok(t.clone());
        }
        let mut bound: Vec<Var> = Vec::new();
        self.close_rec(a, t, &mut bound)
    }

    fn close_rec(&self, a: &Assignment, t: &Term, bound: &mut Vec<Var>) -> Result<Term, EvalError> {
        if t.is_closed() {
            return Ok(t.clone());
        }
        Ok(match t.kind() {
            TermKind::Var(v) if !bound.contains(v) => {
                let tok = a.get(v).ok_or_else(|| EvalError::Unassigned(v.name.to_string()))?;
                self.token_term(*tok)
            }
            TermKind::Const(_) | TermKind::Var(_) | TermKind::Bottom => t.clone(),
            TermKind::App(x, y) => {
                Term::app(self.close_rec(a, x, bound)?, self.close_rec(a, y, bound)?).expect("typed")
            }
            TermKind::Subset(x, y) => {
                Term::subset(self.close_rec(a, x, bound)?, self.close_rec(a, y, bound)?).expect("typed")
            }
            TermKind::Lam(x, body) => {
                bound.push(x.clone());
                let b = self.close_rec(a, body, bound);
                bound.pop();
                Term::lam(x.clone(), b?).expect("typed")
            }
        })
    }

    fn resolve_closed(&self, t: &Term) -> Result<Tok, EvalError> {
        if let TermKind::Const(c) = t.kind() {
            if c.name.starts_with(TOKEN_MARK) {
                return self.token_of_mark(&c.name).ok_or_else(|| EvalError::UnknownToken(c.name.to_string()));
            }
            return self.constants.get(&*c.name).copied().ok_or_else(|| EvalError::UnknownConstant(c.name.to_string()));
        }
        let shell = self.replace_closed(t, true, &mut |s| self.resolve_closed(s))?;
        let key = print_term(&shell);
        self.intensions.get(&key).copied().ok_or(EvalError::CarrierEscape { key, shell })
    }

    /// The key `t` is looked up under, given assignment `a`.
    pub fn intension_key(&self, a: &Assignment, t: &Term) -> Result<String, EvalError> {
        let closed = self.close_under(a, t)?;
        self.key_of(&closed, &mut |s| self.resolve_closed(s))
    }

    /// I(a, t).
    pub fn resolve_intension(&self, a: &Assignment, t: &Term) -> Result<Tok, EvalError> {
        if let TermKind::Var(v) = t.kind() {
            return a.get(v).copied().ok_or_else(|| EvalError::Unassigned(v.name.to_string()));
        }
        let closed = self.close_under(a, t)?;
        self.resolve_closed(&closed)
    }

    /// V(a, t) for a term of complex type.
    pub fn eval_extension(&self, a: &Assignment, t: &Term) -> Result<Ext, EvalError> {
        match t.kind() {
            TermKind::Bottom => Ok(Ext::new()),
            TermKind::Var(v) => {
                let tok = a.get(v).ok_or_else(|| EvalError::Unassigned(v.name.to_string()))?;
                self.complex_ext(*tok, t)
            }
            TermKind::Const(_) => {
                let tok = self.resolve_closed(t)?;
                self.complex_ext(tok, t)
            }
            TermKind::App(f, b) => {
                let d = self.resolve_intension(a, b)?;
                let fe = self.eval_extension(a, f)?;
                Ok(fe.into_iter().filter(|row| row[0] == d).map(|row| row[1..].to_vec()).collect())
            }
            TermKind::Lam(x, body) => {
                let mut out = Ext::new();
                let mut a2 = a.clone();
                for &d in self.domain(&x.ty) {
                    a2.insert(x.clone(), d);
                    for row in self.eval_extension(&a2, body)? {
                        let mut r = Vec::with_capacity(row.len() + 1);
                        r.push(d);
                        r.extend(row);
                        out.insert(r);
                    }
                }
                Ok(out)
            }
            TermKind::Subset(x, y) => {
                let ex = self.eval_extension(a, x)?;
                let ey = self.eval_extension(a, y)?;
                Ok(truth_ext(ex.is_subset(&ey)))
            }
        }
    }

    fn complex_ext(&self, tok: Tok, t: &Term) -> Result<Ext, EvalError> {
        if self.tokens[tok].ty.is_basic() {
            return Err(EvalError::BasicType(print_term(t)));
        }
        Ok(self.tokens[tok].ext.clone())
    }

    /// Truth of a formula under `a`.
    pub fn holds(&self, a: &Assignment, phi: &Term) -> Result<bool, EvalError> {
        Ok(!self.eval_extension(a, phi)?.is_empty())
    }

    /// Whether every L member is true and every R member false.
    pub fn refutes(&self, seq: &Sequent) -> Result<bool, EvalError> {
        let a = Assignment::new();
        for s in seq {
            let v = self.holds(&a, &s.sentence)?;
            if v != (s.sign == Sign::L) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Well-formedness relative to the probe terms and their subterms.
    pub fn check(&self, probes: &[Term]) -> ModelReport {
        let mut r = ModelReport::default();
        for (ty, toks) in &self.domains {
            if toks.is_empty() {
                r.violations.push(format!("domain of {ty} is empty"));
            }
        }
        for (i, info) in self.tokens.iter().enumerate() {
            if !self.domain(&info.ty).contains(&i) {
                r.violations.push(format!("token {} missing from its domain", info.name));
            }
            let args = info.ty.args();
            for row in &info.ext {
                let ok = row.len() == args.len()
                    && row.iter().zip(args).all(|(d, ty)| self.tokens.get(*d).is_some_and(|x| x.ty == *ty));
                if !ok || info.ty.is_basic() {
                    r.violations.push(format!("extension of {} is not typed by {}", info.name, info.ty));
                    break;
                }
            }
        }
        for (name, t) in &self.constants {
            if name.starts_with(TOKEN_MARK) {
                r.violations.push(format!("constant name {name} uses the token mark"));
            }
            let _ = t;
        }
        let mut seen = HashSet::new();
        let mut subterms = Vec::new();
        for p in probes {
            p.closed_subterms(&mut subterms, &mut seen);
        }
        let a = Assignment::new();
        for t in &subterms {
            r.probes_checked += 1;
            if let TermKind::App(f, b) = t.kind() {
                if let TermKind::Lam(x, body) = f.kind() {
                    self.check_substitution(x, body, b, &mut r);
                }
            }
            if t.ty().is_basic() {
                continue;
            }
            let tok = match self.resolve_intension(&a, t) {
                Ok(tok) => tok,
                Err(e) => {
                    r.escapes.push(format!("{}: {e}", print_term(t)));
                    continue;
                }
            };
            if self.tokens[tok].ty != *t.ty() {
                r.violations.push(format!("intension of {} has type {}", print_term(t), self.tokens[tok].ty));
                continue;
            }
            match self.eval_extension(&a, t) {
                Ok(v) if v == self.tokens[tok].ext => {}
                Ok(_) => r
                    .violations
                    .push(format!("extension of the intension of {} disagrees with its value", print_term(t))),
                Err(e) => r.escapes.push(format!("{}: {e}", print_term(t))),
            }
        }
        r
    }

    /// I(a, A{x:=B}) = I(a[I(a,B)/x], A) on a closed redex.
    fn check_substitution(&self, x: &Var, body: &Term, b: &Term, r: &mut ModelReport) {
        let a = Assignment::new();
        let Ok(db) = self.resolve_intension(&a, b) else { return };
        let substituted = crate::syntax::normalize::subst_avoiding(body, x, b);
        let mut a2 = Assignment::new();
        a2.insert(x.clone(), db);
        if let (Ok(l), Ok(rr)) = (self.resolve_intension(&a, &substituted), self.resolve_intension(&a2, body)) {
            if l != rr {
                r.violations.push(format!("substitution incoherence at {}", print_term(body)));
            }
        }
    }

    /// Structured text form.
    pub fn to_json(&self) -> String {
        let types: Vec<String> = self.domains.keys().map(|t| t.to_string()).collect();
        let mut domains = Map::new();
        for (ty, toks) in &self.domains {
            domains.insert(ty.to_string(), toks.iter().map(|t| Value::String(self.tokens[*t].name.clone())).collect());
        }
        let name = |t: &Tok| Value::String(self.tokens[*t].name.clone());
        let constants: Map<String, Value> = self.constants.iter().map(|(k, t)| (k.clone(), name(t))).collect();
        let intensions: Map<String, Value> = self.intensions.iter().map(|(k, t)| (k.clone(), name(t))).collect();
        let mut extensions = Map::new();
        for info in &self.tokens {
            if info.ty.is_basic() {
                continue;
            }
            let v = if info.ty.args().is_empty() {
                json!(if info.ext.is_empty() { 0 } else { 1 })
            } else {
                Value::Array(
                    info.ext
                        .iter()
                        .map(|row| {
                            Value::Array(row.iter().map(|d| Value::String(self.tokens[*d].name.clone())).collect())
                        })
                        .collect(),
                )
            };
            extensions.insert(info.name.clone(), v);
        }
        let v = json!({
            "types": types,
            "domains": domains,
            "constants": constants,
            "intensions": intensions,
            "extensions": extensions,
        });
        let mut s = serde_json::to_string_pretty(&v).expect("serialisable");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<FiniteModel, ModelFormatError> {
        let shape = |m: String| ModelFormatError::Shape(m);
        let v: Value = serde_json::from_str(text)?;
        let obj = v.as_object().ok_or_else(|| shape("expected an object".into()))?;
        let mut m = FiniteModel::new();
        let domains = obj.get("domains").and_then(Value::as_object).ok_or_else(|| shape("missing domains".into()))?;
        let mut order: Vec<(Type, &Value)> = Vec::new();
        if let Some(types) = obj.get("types").and_then(Value::as_array) {
            for t in types {
                let s = t.as_str().ok_or_else(|| shape("types must be strings".into()))?;
                let ty = parse_type(s).map_err(|e| shape(e.to_string()))?;
                let toks = domains.get(s).ok_or_else(|| shape(format!("no domain for {s}")))?;
                order.push((ty, toks));
            }
        } else {
            for (s, toks) in domains {
                order.push((parse_type(s).map_err(|e| shape(e.to_string()))?, toks));
            }
        }
        for (ty, toks) in order {
            for t in toks.as_array().ok_or_else(|| shape("domains must be lists".into()))? {
                let name = t.as_str().ok_or_else(|| shape("token names must be strings".into()))?;
                m.add_named_token(name, &ty).map_err(shape)?;
            }
        }
        let lookup = |m: &FiniteModel, v: &Value| -> Result<Tok, ModelFormatError> {
            let name = v.as_str().ok_or_else(|| ModelFormatError::Shape("token names must be strings".into()))?;
            m.token_named(name).ok_or_else(|| ModelFormatError::Shape(format!("unknown token {name}")))
        };
        for (field, is_const) in [("constants", true), ("intensions", false)] {
            if let Some(map) = obj.get(field).and_then(Value::as_object) {
                for (k, v) in map {
                    let t = lookup(&m, v)?;
                    if is_const {
                        m.bind_constant(k, t);
                    } else {
                        m.bind_key(k, t);
                    }
                }
            }
        }
        if let Some(map) = obj.get("extensions").and_then(Value::as_object) {
            for (k, v) in map {
                let t = m.token_named(k).ok_or_else(|| shape(format!("unknown token {k}")))?;
                let ext = match v {
                    Value::Number(n) => truth_ext(n.as_u64() == Some(1)),
                    Value::Array(rows) => {
                        let mut ext = Ext::new();
                        for row in rows {
                            let row = row.as_array().ok_or_else(|| shape("extension rows must be lists".into()))?;
                            ext.insert(row.iter().map(|d| lookup(&m, d)).collect::<Result<Vec<_>, _>>()?);
                        }
                        ext
                    }
                    _ => return Err(shape(format!("bad extension for {k}"))),
                };
                m.set_ext(t, ext);
            }
        }
        Ok(m)
    }
}

/// `{[]}` for true, `{}` for false.
pub fn truth_ext(b: bool) -> Ext {
    let mut e = Ext::new();
    if b {
        e.insert(Vec::new());
    }
    e
}

/// Findings of [`FiniteModel::check`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ModelReport {
    pub violations: Vec<String>,
    /// Probe subterms whose intension or value could not be resolved.
    pub escapes: Vec<String>,
    pub probes_checked: usize,
}

impl ModelReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ModelReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "checked {} probe subterms", self.probes_checked)?;
        for v in &self.violations {
            writeln!(f, "violation: {v}")?;
        }
        for e in &self.escapes {
            writeln!(f, "escape: {e}")?;
        }
        Ok(())
    }
}
