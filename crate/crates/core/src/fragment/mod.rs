//! A small English fragment: bracketed structures, a lexicon of typed
//! translations, and entailment queries between translated sentences.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use thiserror::Error;

use crate::calculus::{lambda_conversion, Theory};
use crate::prover::{entails, SearchBudget, Verdict};
use crate::syntax::{beta_normalize, parse_term, Signature, Term, Type, TypeError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FragmentError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown word `{0}`")]
    UnknownWord(String),
    #[error("{0} has no sentence translation")]
    Untranslatable(Side),
    #[error("unknown postulate set `{0}`")]
    UnknownPostulates(String),
    #[error(transparent)]
    Type(#[from] TypeError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Premise(usize),
    Conclusion,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Premise(i) => write!(f, "premise {}", i + 1),
            Side::Conclusion => write!(f, "conclusion"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SynStructure {
    Word(String),
    Pair(Box<SynStructure>, Box<SynStructure>),
}

impl SynStructure {
    pub fn word(w: &str) -> SynStructure {
        SynStructure::Word(w.to_string())
    }

    pub fn pair(l: SynStructure, r: SynStructure) -> SynStructure {
        SynStructure::Pair(Box::new(l), Box::new(r))
    }
}

impl fmt::Display for SynStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SynStructure::Word(w) => write!(f, "{w}"),
            SynStructure::Pair(l, r) => write!(f, "[{l} {r}]"),
        }
    }
}

/// Parses bracket notation. A bracket holds one or two structures; words
/// must be in the lexicon.
pub fn parse_structure(text: &str) -> Result<SynStructure, FragmentError> {
    let lex = Lexicon::standard();
    let mut p = StructParser { text, pos: 0, lex: &lex };
    let s = p.structure()?;
    p.skip_ws();
    if p.pos < text.len() {
        return Err(p.err("trailing input"));
    }
    Ok(s)
}

struct StructParser<'a> {
    text: &'a str,
    pos: usize,
    lex: &'a Lexicon,
}

impl StructParser<'_> {
    fn err(&self, msg: &str) -> FragmentError {
        FragmentError::Syntax { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        let rest = &self.text[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn structure(&mut self) -> Result<SynStructure, FragmentError> {
        self.skip_ws();
        let rest = &self.text[self.pos..];
        if rest.starts_with('[') {
            self.pos += 1;
            let first = self.structure()?;
            self.skip_ws();
            let out = if self.text[self.pos..].starts_with(']') {
                first
            } else {
                let second = self.structure()?;
                SynStructure::pair(first, second)
            };
            self.skip_ws();
            if !self.text[self.pos..].starts_with(']') {
                return Err(self.err("expected `]`"));
            }
            self.pos += 1;
            return Ok(out);
        }
        let len = rest.find(|c: char| !c.is_alphanumeric() && c != '_').unwrap_or(rest.len());
        if len == 0 {
            return Err(self.err(if rest.is_empty() { "unexpected end of input" } else { "expected a word or `[`" }));
        }
        let w = &rest[..len];
        if self.lex.get(w).is_none() {
            return Err(FragmentError::UnknownWord(w.to_string()));
        }
        self.pos += len;
        Ok(SynStructure::word(w))
    }
}

/// Word translations over the fragment's constants.
#[derive(Clone, Debug)]
pub struct Lexicon {
    pub signature: Signature,
    entries: BTreeMap<String, Term>,
}

const ENTRIES: &[(&str, &str)] = &[
    ("if", "lam p:<> . lam q:<> . p -> q"),
    ("no", "lam P1:<e> . lam P:<e> . ~ (exists x:e . P1 x & P x)"),
    ("some", "lam P1:<e> . lam P:<e> . exists x:e . P1 x & P x"),
    ("every", "lam P1:<e> . lam P:<e> . forall x:e . P1 x -> P x"),
    ("loves", "lam Q:<<e>> . lam x:e . Q (lam y:e . love x y)"),
    ("is", "lam Q:<<e>> . lam x:e . Q (lam y:e . x = y)"),
    ("knows", "lam p:<> . lam x:e . know x p"),
    ("believes", "lam p:<> . lam x:e . believe x p"),
    ("man", "man"),
    ("unicorn", "unicorn"),
    ("runs", "run"),
    ("laughs", "laugh"),
    ("Bill", "bill"),
    ("Ann", "ann"),
    ("Tully", "tully"),
    ("Cicero", "cicero"),
];

impl Lexicon {
    pub fn standard() -> Lexicon {
        let signature = fragment_signature();
        let entries = ENTRIES
            .iter()
            .map(|(w, src)| (w.to_string(), parse_term(src, &signature).expect("lexicon entry")))
            .collect();
        Lexicon { signature, entries }
    }

    pub fn get(&self, word: &str) -> Option<&Term> {
        self.entries.get(word)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Term)> {
        self.entries.iter().map(|(w, t)| (w.as_str(), t))
    }
}

pub fn fragment_signature() -> Signature {
    let e = Type::basic("e");
    let p = e.property();
    let q = p.property();
    let mut sig = Signature::new();
    for c in ["man", "unicorn", "run", "laugh"] {
        sig = sig.with(c, p.clone());
    }
    sig = sig.with("love", Type::complex(vec![e.clone(), e.clone()]));
    for c in ["know", "believe"] {
        sig = sig.with(c, Type::complex(vec![e.clone(), Type::prop()]));
    }
    for c in ["bill", "ann", "tully", "cicero"] {
        sig = sig.with(c, q.clone());
    }
    sig
}

/// Every translation of `s`: `AB` and `BA` for each well-typed combination.
pub fn translate(s: &SynStructure) -> Vec<Term> {
    translate_with(&Lexicon::standard(), s)
}

pub fn translate_with(lex: &Lexicon, s: &SynStructure) -> Vec<Term> {
    match s {
        SynStructure::Word(w) => lex.get(w).cloned().into_iter().collect(),
        SynStructure::Pair(l, r) => {
            let ls = translate_with(lex, l);
            let rs = translate_with(lex, r);
            let mut seen = HashSet::new();
            let mut out = Vec::new();
            for a in &ls {
                for b in &rs {
                    for t in [Term::app(a.clone(), b.clone()), Term::app(b.clone(), a.clone())].into_iter().flatten() {
                        if seen.insert(t.clone()) {
                            out.push(t);
                        }
                    }
                }
            }
            out
        }
    }
}

/// β-normal forms of the sentence translations of `s`, without repeats.
pub fn sentence_translations(s: &SynStructure) -> Vec<Term> {
    let mut seen = HashSet::new();
    translate(s)
        .into_iter()
        .filter(Term::is_formula)
        .filter_map(|t| beta_normalize(&t).ok())
        .filter(|t| seen.insert(t.clone()))
        .collect()
}

/// The name postulates: `∀P(ann P ↔ P a)` and likewise for bill, tully and
/// cicero, with `a, b, t, c : e`.
pub fn names() -> Theory {
    let mut sig = fragment_signature();
    for c in ["a", "b", "t", "c"] {
        sig = sig.with(c, Type::basic("e"));
    }
    let axioms = [("ann", "a"), ("bill", "b"), ("tully", "t"), ("cicero", "c")]
        .iter()
        .map(|(name, ind)| parse_term(&format!("forall P:<e> . {name} P <-> P {ind}"), &sig).expect("postulate"))
        .collect();
    let mut signature = Signature::new();
    for c in ["a", "b", "t", "c"] {
        signature = signature.with(c, Type::basic("e"));
    }
    Theory { name: "names".into(), signature, axioms, schemes: Vec::new() }
}

/// A named postulate set, or a `+`-separated union of them.
pub fn postulate_set(spec: &str) -> Result<Theory, FragmentError> {
    let mut th = Theory::empty("");
    for part in spec.split('+').map(str::trim).filter(|p| !p.is_empty()) {
        let next = match part {
            "lambda-conv" => lambda_conversion(),
            "names" => names(),
            "none" => Theory::empty("none"),
            other => return Err(FragmentError::UnknownPostulates(other.to_string())),
        };
        th = th.union(&next)?;
    }
    Ok(th)
}

/// Whether the premises entail the conclusion under `posts`. Each premise
/// and the conclusion may have several readings; the answer is yes when
/// some choice of readings is entailed, and otherwise the first negative
/// verdict, preferring one with a validated model.
pub fn fragment_entails(
    premises: &[SynStructure],
    conclusion: &SynStructure,
    posts: &Theory,
    budget: &SearchBudget,
) -> Result<Verdict, FragmentError> {
    let mut readings = Vec::with_capacity(premises.len());
    for (i, p) in premises.iter().enumerate() {
        let r = sentence_translations(p);
        if r.is_empty() {
            return Err(FragmentError::Untranslatable(Side::Premise(i)));
        }
        readings.push(r);
    }
    let goals = sentence_translations(conclusion);
    if goals.is_empty() {
        return Err(FragmentError::Untranslatable(Side::Conclusion));
    }
    let mut choice = vec![0usize; readings.len()];
    let mut best: Option<Verdict> = None;
    loop {
        let prem: Vec<Term> = choice.iter().zip(&readings).map(|(i, r)| r[*i].clone()).collect();
        for g in &goals {
            let v = entails(&prem, std::slice::from_ref(g), posts, budget);
            match &v {
                Verdict::Yes(_) => return Ok(v),
                Verdict::No(c) => {
                    let better = match &best {
                        None | Some(Verdict::Unknown(_)) => true,
                        Some(Verdict::No(old)) => !old.is_validated() && c.is_validated(),
                        Some(Verdict::Yes(_)) => false,
                    };
                    if better {
                        best = Some(v);
                    }
                }
                Verdict::Unknown(_) => {
                    if best.is_none() {
                        best = Some(v);
                    }
                }
            }
        }
        let mut k = 0;
        while k < choice.len() {
            choice[k] += 1;
            if choice[k] < readings[k].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
        if k == choice.len() {
            break;
        }
    }
    Ok(best.expect("at least one pair"))
}
