//! JSON proof files: nested nodes with the rule name, the conclusion in
//! canonical surface syntax, rule data and premises. A premise whose
//! conclusion is its parent's conclusion plus what the rule adds may leave
//! the conclusion out.

use std::collections::HashMap;

use serde_json::{json, Map, Value};
use thiserror::Error;

use super::proof::{Proof, RuleData, RuleId};
use super::prune::shape as rule_shape;
use crate::syntax::{parse_sequent, parse_term, parse_type, Const, ParseError, Sequent, Signature, Var};
use crate::syntax::{print_term, Term};

pub const PROOF_FORMAT: &str = "itl-proof/1";

#[derive(Debug, Error)]
pub enum ProofFormatError {
    #[error("malformed proof file: {0}")]
    Shape(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

fn shape(msg: impl Into<String>) -> ProofFormatError {
    ProofFormatError::Shape(msg.into())
}

/// Term strings at least this long go into the shared table.
const SHARE_FROM: usize = 48;

/// Serialises a proof together with the signature its conclusions are read in.
pub fn proof_to_json(p: &Proof, sig: &Signature) -> String {
    let sig_lines: Vec<Value> = sig.to_string().lines().map(|l| Value::String(l.to_string())).collect();
    let mut w = Writer::default();
    let proof = w.node(p, None);
    let mut v = Map::new();
    v.insert("format".into(), json!(PROOF_FORMAT));
    v.insert("signature".into(), Value::Array(sig_lines));
    if !w.terms.is_empty() {
        v.insert("terms".into(), json!(w.terms));
    }
    v.insert("proof".into(), proof);
    let mut s = serde_json::to_string(&Value::Object(v)).expect("serialisable");
    s.push('\n');
    s
}

fn const_value(c: &Const) -> Value {
    json!({ "name": &*c.name, "type": c.ty.to_string() })
}

/// Long term strings are written once in `terms` and referred to as `@i`.
#[derive(Default)]
struct Writer {
    terms: Vec<String>,
    index: HashMap<String, usize>,
}

impl Writer {
    fn term(&mut self, t: &Term) -> String {
        let s = print_term(t);
        if s.len() < SHARE_FROM {
            return s;
        }
        let n = self.terms.len();
        let i = *self.index.entry(s.clone()).or_insert(n);
        if i == n {
            self.terms.push(s);
        }
        format!("@{i}")
    }

    fn node(&mut self, p: &Proof, implied: Option<Sequent>) -> Value {
        let mut m = Map::new();
        m.insert("rule".into(), Value::String(p.rule.name().into()));
        if implied.as_ref() != Some(&p.conclusion) {
            m.insert("conclusion".into(), Value::String(p.conclusion.print()));
        }
        let data = match &p.data {
            RuleData::None => None,
            RuleData::Principal(t) => Some(json!({ "principal": self.term(t) })),
            RuleData::Instantiate { principal, args } => Some(json!({
                "principal": self.term(principal),
                "args": args.iter().map(|a| self.term(a)).collect::<Vec<_>>(),
            })),
            RuleData::Fresh { principal, fresh } => Some(json!({
                "principal": self.term(principal),
                "fresh": fresh.iter().map(const_value).collect::<Vec<_>>(),
            })),
            RuleData::Equation { equation, reversed, hole, context } => Some(json!({
                "equation": self.term(equation),
                "reversed": reversed,
                "hole": { "name": &*hole.name, "type": hole.ty.to_string() },
                "context": self.term(context),
            })),
        };
        if let Some(d) = data {
            m.insert("data".into(), d);
        }
        let implied = implied_premises(&p.conclusion, p.rule, &p.data, p.premises.len());
        let premises = p.premises.iter().zip(implied).map(|(q, i)| self.node(q, i)).collect();
        m.insert("premises".into(), Value::Array(premises));
        Value::Object(m)
    }
}

/// The premise conclusions a rule application implies on its own.
fn implied_premises(conclusion: &Sequent, rule: RuleId, data: &RuleData, n: usize) -> Vec<Option<Sequent>> {
    match rule_shape(rule, data) {
        Some((_, additions)) if additions.len() == n => additions.iter().map(|a| Some(conclusion.union(a))).collect(),
        _ => vec![None; n],
    }
}

/// Reads a proof file, returning the proof and its signature.
pub fn proof_from_json(text: &str) -> Result<(Proof, Signature), ProofFormatError> {
    let mut de = serde_json::Deserializer::from_str(text);
    de.disable_recursion_limit();
    let v: Value = serde::Deserialize::deserialize(&mut de)?;
    if v.get("format").and_then(Value::as_str) != Some(PROOF_FORMAT) {
        return Err(shape(format!("expected format {PROOF_FORMAT}")));
    }
    let lines = v.get("signature").and_then(Value::as_array).ok_or_else(|| shape("missing signature"))?;
    let mut text = String::new();
    for l in lines {
        text.push_str(l.as_str().ok_or_else(|| shape("signature lines must be strings"))?);
        text.push('\n');
    }
    let sig = Signature::parse(&text)?;
    let terms = match v.get("terms") {
        None => Vec::new(),
        Some(t) => t
            .as_array()
            .ok_or_else(|| shape("terms must be a list"))?
            .iter()
            .map(|s| s.as_str().map(str::to_string).ok_or_else(|| shape("terms must be strings")))
            .collect::<Result<_, _>>()?,
    };
    let root = v.get("proof").ok_or_else(|| shape("missing proof"))?;
    let mut r = Reader { terms, parsed: HashMap::new() };
    let proof = r.node(root, &sig, None)?;
    Ok((proof, sig))
}

fn str_field<'a>(v: &'a Value, key: &str) -> Result<&'a str, ProofFormatError> {
    v.get(key).and_then(Value::as_str).ok_or_else(|| shape(format!("missing string field `{key}`")))
}

fn typed_name(v: &Value) -> Result<(String, crate::syntax::Type), ProofFormatError> {
    let name = str_field(v, "name")?.to_string();
    let ty = parse_type(str_field(v, "type")?).map_err(ParseError::from)?;
    Ok((name, ty))
}

struct Reader {
    terms: Vec<String>,
    /// Table entries already parsed, keyed by index and signature size.
    parsed: HashMap<(usize, usize), Term>,
}

impl Reader {
    fn term(&mut self, s: &str, sig: &Signature) -> Result<Term, ProofFormatError> {
        let Some(i) = s.strip_prefix('@') else {
            return Ok(parse_term(s, sig)?);
        };
        let i: usize = i.parse().map_err(|_| shape(format!("bad term reference `{s}`")))?;
        let key = (i, sig.constants().count());
        if let Some(t) = self.parsed.get(&key) {
            return Ok(t.clone());
        }
        let text = self.terms.get(i).ok_or_else(|| shape(format!("term reference `{s}` out of range")))?;
        let t = parse_term(text, sig)?;
        self.parsed.insert(key, t.clone());
        Ok(t)
    }

    fn term_field(&mut self, v: &Value, key: &str, sig: &Signature) -> Result<Term, ProofFormatError> {
        self.term(str_field(v, key)?, sig)
    }

    fn node(&mut self, v: &Value, sig: &Signature, implied: Option<Sequent>) -> Result<Proof, ProofFormatError> {
        let rule_name = str_field(v, "rule")?;
        let rule = RuleId::from_name(rule_name).ok_or_else(|| shape(format!("unknown rule `{rule_name}`")))?;
        let conclusion = match (v.get("conclusion"), implied) {
            (Some(_), _) => parse_sequent(str_field(v, "conclusion")?, sig)?,
            (None, Some(s)) => s,
            (None, None) => return Err(shape("missing string field `conclusion`")),
        };
        let mut inner = None;
        let data = match (rule, v.get("data")) {
            (_, None) => RuleData::None,
            (RuleId::SubL | RuleId::AllL, Some(d)) => {
                let principal = self.term_field(d, "principal", sig)?;
                let args = d
                    .get("args")
                    .and_then(Value::as_array)
                    .ok_or_else(|| shape("missing args"))?
                    .iter()
                    .map(|a| self.term(a.as_str().ok_or_else(|| shape("args must be strings"))?, sig))
                    .collect::<Result<Vec<_>, ProofFormatError>>()?;
                RuleData::Instantiate { principal, args }
            }
            (RuleId::SubR | RuleId::AllR, Some(d)) => {
                let principal = self.term_field(d, "principal", sig)?;
                let mut fresh = Vec::new();
                let mut extended = sig.clone();
                for c in d.get("fresh").and_then(Value::as_array).ok_or_else(|| shape("missing fresh"))? {
                    let (name, ty) = typed_name(c)?;
                    extended.declare(&name, ty.clone()).map_err(ParseError::from)?;
                    fresh.push(Const::new(&name, ty));
                }
                inner = Some(extended);
                RuleData::Fresh { principal, fresh }
            }
            (RuleId::EqL, Some(d)) => {
                let equation = self.term_field(d, "equation", sig)?;
                let reversed = d.get("reversed").and_then(Value::as_bool).ok_or_else(|| shape("missing reversed"))?;
                let (name, ty) = typed_name(d.get("hole").ok_or_else(|| shape("missing hole"))?)?;
                let context = self.term_field(d, "context", sig)?;
                RuleData::Equation { equation, reversed, hole: Var::new(&name, ty), context }
            }
            (_, Some(d)) => RuleData::Principal(self.term_field(d, "principal", sig)?),
        };
        let scope = inner.as_ref().unwrap_or(sig);
        let subs = v.get("premises").and_then(Value::as_array).ok_or_else(|| shape("missing premises"))?;
        let implied = implied_premises(&conclusion, rule, &data, subs.len());
        let premises = subs.iter().zip(implied).map(|(q, i)| self.node(q, scope, i)).collect::<Result<Vec<_>, _>>()?;
        Ok(Proof::new(conclusion, rule, data, premises))
    }
}
