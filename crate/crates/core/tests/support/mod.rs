//! Generators shared by the property suites.
#![allow(dead_code)]

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;

use itl::calculus::{Proof, RuleData, RuleId, Theory};
use itl::models::random::{eval, model_for, random_model, RandomConfig};
use itl::models::{Assignment, Ext, FiniteModel, Tok};
use itl::prover::{prove_in, SearchBudget, SearchOutcome};
use itl::{parse_sequent, parse_term, subst1, sugar, Sequent, Signature, SignedSentence, Term, Type, Var};

pub fn e() -> Type {
    Type::basic("e")
}

pub fn signature() -> Signature {
    Signature::new()
        .with("p", Type::prop())
        .with("q", Type::prop())
        .with("a", e())
        .with("b", e())
        .with("P", e().property())
        .with("Q", e().property())
        .with("R", Type::complex(vec![e(), e()]))
}

pub fn t(src: &str) -> Term {
    parse_term(src, &signature()).unwrap_or_else(|err| panic!("{src}: {err}"))
}

/// Random well-typed terms over [`signature`].
pub struct TermGen<'r, R: Rng> {
    pub rng: &'r mut R,
    fresh: usize,
}

impl<'r, R: Rng> TermGen<'r, R> {
    pub fn new(rng: &'r mut R) -> Self {
        TermGen { rng, fresh: 0 }
    }

    pub fn var(&mut self, ty: Type) -> Var {
        self.fresh += 1;
        let stem = if ty.is_basic() { "x" } else { "y" };
        Var::new(&format!("{stem}{}", self.fresh), ty)
    }

    /// A term of type `e` over the constants and `scope`.
    pub fn individual(&mut self, scope: &[Var]) -> Term {
        let vars: Vec<&Var> = scope.iter().filter(|v| v.ty == e()).collect();
        if !vars.is_empty() && self.rng.gen_bool(0.5) {
            return Term::var((*vars.choose(self.rng).unwrap()).clone());
        }
        t(["a", "b"].choose(self.rng).unwrap())
    }

    /// A term of type `<e>`.
    pub fn predicate(&mut self, depth: usize, scope: &[Var]) -> Term {
        if depth == 0 || self.rng.gen_bool(0.6) {
            return t(["P", "Q"].choose(self.rng).unwrap());
        }
        if self.rng.gen_bool(0.5) {
            let x = self.var(e());
            let mut inner = scope.to_vec();
            inner.push(x.clone());
            return Term::lam(x, self.formula(depth - 1, &inner)).unwrap();
        }
        let arg = self.individual(scope);
        Term::app(t("R"), arg).unwrap()
    }

    pub fn atom(&mut self, scope: &[Var]) -> Term {
        match self.rng.gen_range(0..6) {
            0 => t("p"),
            1 => t("q"),
            2 => Term::bottom(),
            3 => sugar::top(),
            _ => {
                let p = t(["P", "Q"].choose(self.rng).unwrap());
                Term::app(p, self.individual(scope)).unwrap()
            }
        }
    }

    pub fn formula(&mut self, depth: usize, scope: &[Var]) -> Term {
        if depth == 0 {
            return self.atom(scope);
        }
        let d = depth - 1;
        match self.rng.gen_range(0..10) {
            0 => self.atom(scope),
            1 => sugar::imp(self.formula(d, scope), self.formula(d, scope)).unwrap(),
            2 => sugar::not(self.formula(d, scope)).unwrap(),
            3 => sugar::and(self.formula(d, scope), self.formula(d, scope)).unwrap(),
            4 => sugar::or(self.formula(d, scope), self.formula(d, scope)).unwrap(),
            5 => {
                let x = self.var(e());
                let mut inner = scope.to_vec();
                inner.push(x.clone());
                let body = self.formula(d, &inner);
                if self.rng.gen_bool(0.5) {
                    sugar::forall(x, body).unwrap()
                } else {
                    sugar::exists(x, body).unwrap()
                }
            }
            6 => sugar::eq(self.individual(scope), self.individual(scope)).unwrap(),
            7 => {
                let x = self.var(e());
                let mut inner = scope.to_vec();
                inner.push(x.clone());
                let lam = Term::lam(x, self.formula(d, &inner)).unwrap();
                Term::app(lam, self.individual(scope)).unwrap()
            }
            8 => Term::subset(self.predicate(d, scope), self.predicate(d, scope)).unwrap(),
            _ => Term::app(self.predicate(d, scope), self.individual(scope)).unwrap(),
        }
    }

    /// A closed term of any of the generated types.
    pub fn any_closed(&mut self, depth: usize) -> Term {
        match self.rng.gen_range(0..4) {
            0 => self.individual(&[]),
            1 => self.predicate(depth, &[]),
            _ => self.formula(depth, &[]),
        }
    }
}

/// Model shapes the suites draw from: up to two individuals, and either
/// one token per extension or a few duplicates.
pub fn random_config(rng: &mut impl Rng) -> RandomConfig {
    let prop = Type::prop();
    RandomConfig {
        types: vec![prop.property().property(), e().property().property().property()],
        max_basic: rng.gen_range(1..=2),
        duplicates: rng.gen_range(0..=2),
        max_domain: 64,
        injective: rng.gen_bool(0.3),
    }
}

pub fn random_model_for(rng: &mut impl Rng) -> FiniteModel {
    let cfg = random_config(rng);
    random_model(&signature(), &cfg, rng)
}

/// Models one type level shallower, for suites that compare every pair of
/// tokens.
pub fn small_model_for(rng: &mut impl Rng) -> FiniteModel {
    let mut cfg = random_config(rng);
    cfg.types = vec![Type::prop().property(), e().property().property()];
    random_model(&signature(), &cfg, rng)
}

/// The truth value of `phi` under `a`, assigning missing intensions on the
/// way; `None` when the model has no token for some subterm.
pub fn value(m: &mut FiniteModel, a: &Assignment, phi: &Term, injective: bool, rng: &mut impl Rng) -> Option<Ext> {
    eval(m, a, phi, injective, rng).ok()
}

pub fn truth(m: &mut FiniteModel, a: &Assignment, phi: &Term, rng: &mut impl Rng) -> Option<bool> {
    value(m, a, phi, false, rng).map(|e| !e.is_empty())
}

/// Findings of one run of the value-facts suite.
#[derive(Debug, Default)]
pub struct FactTally {
    pub probes: BTreeMap<u8, usize>,
    pub violations: Vec<String>,
}

impl FactTally {
    pub fn total(&self) -> usize {
        self.probes.values().sum()
    }
}

/// One probe for each value fact in one model; escaped probes are skipped.
pub fn value_facts(m: &mut FiniteModel, rng: &mut impl Rng, tally: &mut FactTally) {
    let a = Assignment::new();
    let mut closed = Vec::new();
    let note = |item: u8, ok: Option<bool>, what: String, tally: &mut FactTally| match ok {
        Some(true) => *tally.probes.entry(item).or_default() += 1,
        Some(false) => {
            *tally.probes.entry(item).or_default() += 1;
            tally.violations.push(format!("item {item}: {what}"));
        }
        None => {}
    };

    // 1: implication is false exactly when antecedent true, consequent false.
    let (phi, psi) = {
        let mut g = TermGen::new(rng);
        (g.formula(2, &[]), g.formula(2, &[]))
    };
    let imp = sugar::imp(phi.clone(), psi.clone()).unwrap();
    let ok = (|| {
        let vi = truth(m, &a, &imp, rng)?;
        let vp = truth(m, &a, &phi, rng)?;
        let vq = truth(m, &a, &psi, rng)?;
        Some(!vi == (vp && !vq))
    })();
    note(1, ok, format!("{imp}"), tally);
    closed.push(imp);

    // 2: a universal holds iff every instance over the domain holds.
    let (x, body) = {
        let mut g = TermGen::new(rng);
        let x = g.var(e());
        let body = g.formula(2, std::slice::from_ref(&x));
        (x, body)
    };
    let all = sugar::forall(x.clone(), body.clone()).unwrap();
    let ok = (|| {
        let v = truth(m, &a, &all, rng)?;
        let mut each = true;
        for d in m.domain(&e()).to_vec() {
            let ad: Assignment = [(x.clone(), d)].into_iter().collect();
            each &= truth(m, &ad, &body, rng)?;
        }
        Some(v == each)
    })();
    note(2, ok, format!("{all}"), tally);
    closed.push(all);

    // 3: a redex and its contractum have the same value.
    let (x, body, arg) = {
        let mut g = TermGen::new(rng);
        let x = g.var(e());
        let body = if g.rng.gen_bool(0.5) {
            g.formula(2, std::slice::from_ref(&x))
        } else {
            g.predicate(2, std::slice::from_ref(&x))
        };
        let arg = g.individual(&[]);
        (x, body, arg)
    };
    let redex = Term::app(Term::lam(x.clone(), body.clone()).unwrap(), arg.clone()).unwrap();
    let ok = (|| {
        let contractum = subst1(&body, &x, &arg).ok()?;
        Some(value(m, &a, &redex, false, rng)? == value(m, &a, &contractum, false, rng)?)
    })();
    note(3, ok, format!("{redex}"), tally);

    // 4: identity implies inclusion; 5: identity is reflexive.
    let (l, r) = {
        let mut g = TermGen::new(rng);
        if g.rng.gen_bool(0.5) {
            (g.formula(1, &[]), g.formula(1, &[]))
        } else {
            (g.predicate(1, &[]), g.predicate(1, &[]))
        }
    };
    let pair = [l.clone(), if rng.gen_bool(0.3) { l.clone() } else { r.clone() }];
    let eq = sugar::eq(pair[0].clone(), pair[1].clone()).unwrap();
    let sub = Term::subset(pair[0].clone(), pair[1].clone()).unwrap();
    let ok = (|| Some(!truth(m, &a, &eq, rng)? || truth(m, &a, &sub, rng)?))();
    note(4, ok, format!("{eq}"), tally);
    let refl = sugar::eq(l.clone(), l.clone()).unwrap();
    note(5, truth(m, &a, &refl, rng), format!("{refl}"), tally);
    closed.extend([eq, sub, refl]);

    // 6: substituting identicals gives identicals.
    let (x, ctx, b1, b2) = {
        let mut g = TermGen::new(rng);
        let x = g.var(e());
        let ctx = if g.rng.gen_bool(0.5) {
            g.formula(2, std::slice::from_ref(&x))
        } else {
            g.predicate(2, std::slice::from_ref(&x))
        };
        (x, ctx, g.individual(&[]), g.individual(&[]))
    };
    let premise = sugar::eq(b1.clone(), b2.clone()).unwrap();
    let ok = (|| {
        let s1 = subst1(&ctx, &x, &b1).ok()?;
        let s2 = subst1(&ctx, &x, &b2).ok()?;
        let concl = sugar::eq(s1, s2).ok()?;
        Some(!truth(m, &a, &premise, rng)? || truth(m, &a, &concl, rng)?)
    })();
    note(6, ok, format!("{premise} / {ctx}"), tally);
    closed.push(premise);

    let report = m.check(&closed);
    tally.violations.extend(report.violations.iter().map(|v| format!("model: {v}")));
}

/// Sequent templates over formula slots `A`, `B`, `C`; each instance is provable.
const TEMPLATES: &[&str] = &[
    "=> A -> A",
    "=> A -> B -> A",
    "A -> B => ~ B -> ~ A",
    "=> A | ~ A",
    "=> ((A -> B) -> A) -> A",
    "A & B => B & A",
    "forall x:e . P x => P a",
    "P b => exists x:e . P x",
    "=> a = a",
    "a = b, P a => P b",
    "(lam x:e . P x) a => P a",
    "A, A -> B, B -> C => C",
];

/// Fills the formula slots of a template with random closed formulas.
fn instantiate(template: &str, fill: &[Term; 3]) -> Option<Sequent> {
    let sig = signature();
    let mut text = template.to_string();
    for (slot, f) in ["A", "B", "C"].iter().zip(fill) {
        text = text.replace(slot, &format!("({})", itl::print_term(f)));
    }
    parse_sequent(&text, &sig).ok()
}

/// At least `n` machine-found proofs of template instances, in a fixed order.
pub fn proof_corpus(n: usize, rng: &mut impl Rng) -> Vec<(Sequent, Proof, Signature)> {
    let budget = SearchBudget { max_depth: 400, ..SearchBudget::default() };
    let mut out = Vec::new();
    let mut round = 0;
    while out.len() < n {
        for tpl in TEMPLATES {
            let fill = {
                let mut g = TermGen::new(rng);
                [g.formula(1, &[]), g.formula(1, &[]), g.formula(1, &[])]
            };
            let Some(seq) = instantiate(tpl, &fill) else { continue };
            let run = prove_in(&signature(), &seq, &Theory::empty(""), &budget);
            if let SearchOutcome::ProofFound(p) = run.outcome {
                out.push((seq, p, run.signature));
            }
        }
        round += 1;
        assert!(round < 50, "templates stopped producing proofs");
    }
    out
}

/// Whether `m` refutes `seq`, assigning missing intensions first; `None`
/// when some member cannot be evaluated.
pub fn refutes(m: &mut FiniteModel, seq: &Sequent, rng: &mut impl Rng) -> Option<bool> {
    let a = Assignment::new();
    let mut refuted = true;
    for s in seq {
        let v = truth(m, &a, &s.sentence, rng)?;
        refuted &= v == (s.sign == itl::Sign::L);
    }
    Some(refuted)
}

/// A model for the sequent's sentences, with those it could close.
pub fn model_for_sequent(seq: &Sequent, rng: &mut impl Rng) -> (FiniteModel, bool) {
    let probes: Vec<Term> = seq.iter().map(|s| s.sentence.clone()).collect();
    let cfg = random_config(rng);
    let (m, kept) = model_for(&signature(), &cfg, &probes, rng);
    (m, kept.len() == probes.len())
}

/// Two proofs per derived rule, each with the derived rule at the root.
pub fn derived_instances() -> Vec<(RuleId, Proof)> {
    let sig = signature();
    let seq = |s: &str| parse_sequent(s, &sig).unwrap_or_else(|err| panic!("{s}: {err}"));
    let axiom = |s: &str, phi: &str| Proof::leaf(seq(s), RuleId::Axiom, RuleData::Principal(t(phi)));
    let right = |s: &str| seq(s).right().next().unwrap().clone();
    let left = |s: &str| seq(s).left().next().unwrap().clone();
    let c = itl::Const::new("c", e());
    let mut out = Vec::new();

    for s in ["=> top", "p => top, q"] {
        out.push((RuleId::TopR, Proof::leaf(seq(s), RuleId::TopR, RuleData::None)));
    }
    out.push((
        RuleId::ImpR,
        Proof::new(seq("=> p -> p"), RuleId::ImpR, RuleData::Principal(right("=> p -> p")), vec![axiom("p => p", "p")]),
    ));
    out.push((
        RuleId::ImpR,
        Proof::new(
            seq("q => P a -> q"),
            RuleId::ImpR,
            RuleData::Principal(right("=> P a -> q")),
            vec![axiom("q, P a => q", "q")],
        ),
    ));
    for (imp, ante, cons) in [("p -> q", "p", "q"), ("P a -> Q b", "P a", "Q b")] {
        let goal = format!("{imp}, {ante} => {cons}");
        out.push((
            RuleId::ImpL,
            Proof::new(
                seq(&goal),
                RuleId::ImpL,
                RuleData::Principal(left(&format!("{imp} =>"))),
                vec![
                    axiom(&format!("{imp}, {ante}, {cons} => {cons}"), cons),
                    axiom(&format!("{imp}, {ante} => {cons}, {ante}"), ante),
                ],
            ),
        ));
    }
    for (pred, w) in [("P", "a"), ("Q", "b")] {
        let all = format!("forall x:e . {pred} x");
        out.push((
            RuleId::AllL,
            Proof::new(
                seq(&format!("{all} => {pred} {w}")),
                RuleId::AllL,
                RuleData::Instantiate { principal: left(&format!("{all} =>")), args: vec![t(w)] },
                vec![axiom(&format!("{all}, {pred} {w} => {pred} {w}"), &format!("{pred} {w}"))],
            ),
        ));
    }
    {
        let mut csig = sig.clone();
        csig.declare("c", e()).unwrap();
        let cseq = |s: &str| parse_sequent(s, &csig).unwrap();
        let all = right("=> forall x:e . P x -> P x");
        let inner = cseq("=> P c -> P c");
        let imp = inner.right().next().unwrap().clone();
        let pc = parse_term("P c", &csig).unwrap();
        let body = Proof::new(
            inner,
            RuleId::ImpR,
            RuleData::Principal(imp),
            vec![Proof::leaf(cseq("P c => P c"), RuleId::Axiom, RuleData::Principal(pc.clone()))],
        );
        out.push((
            RuleId::AllR,
            Proof::new(
                seq("=> forall x:e . P x -> P x"),
                RuleId::AllR,
                RuleData::Fresh { principal: all, fresh: vec![c.clone()] },
                vec![body],
            ),
        ));
        let hyp = left("forall x:e . P x =>");
        let goal_all = right("=> forall y:e . P y");
        let inst = Proof::new(
            cseq("forall x:e . P x => P c"),
            RuleId::AllL,
            RuleData::Instantiate { principal: hyp, args: vec![Term::constant(c.clone())] },
            vec![Proof::leaf(cseq("forall x:e . P x, P c => P c"), RuleId::Axiom, RuleData::Principal(pc))],
        );
        out.push((
            RuleId::AllR,
            Proof::new(
                seq("forall x:e . P x => forall y:e . P y"),
                RuleId::AllR,
                RuleData::Fresh { principal: goal_all, fresh: vec![c] },
                vec![inst],
            ),
        ));
    }
    for s in ["=> a = a", "=> P = P"] {
        out.push((RuleId::EqR, Proof::leaf(seq(s), RuleId::EqR, RuleData::Principal(right(s)))));
    }
    let x = Var::new("x", e());
    for (eq, reversed) in [("a = b", false), ("b = a", true)] {
        let context = parse_term("P x:e", &sig).unwrap();
        out.push((
            RuleId::EqL,
            Proof::new(
                seq(&format!("{eq}, P a => P b")),
                RuleId::EqL,
                RuleData::Equation { equation: left(&format!("{eq} =>")), reversed, hole: x.clone(), context },
                vec![axiom(&format!("{eq}, P a => P a"), "P a")],
            ),
        ));
    }
    out
}

/// `m` with a copy of basic token `d`: every tuple through `d` is repeated
/// through the copy.
pub fn duplicate_basic(m: &mut FiniteModel, d: Tok) -> Tok {
    let ty = m.token(d).ty.clone();
    let copy = m.add_token(&ty);
    let complex: Vec<Tok> = (0..m.tokens().len()).filter(|t| !m.token(*t).ty.is_basic()).collect();
    for t in complex {
        let mut ext = m.ext(t).clone();
        let extra: Vec<Vec<Tok>> =
            ext.iter().filter(|row| row.contains(&d)).flat_map(|row| variants(row, d, copy)).collect();
        ext.extend(extra);
        m.set_ext(t, ext);
    }
    copy
}

/// Every row obtained by replacing some occurrences of `d` with `copy`.
fn variants(row: &[Tok], d: Tok, copy: Tok) -> Vec<Vec<Tok>> {
    let mut out = vec![Vec::new()];
    for &x in row {
        let opts: &[Tok] = if x == d { &[d, copy] } else { std::slice::from_ref(&x) };
        out = out.iter().flat_map(|r: &Vec<Tok>| opts.iter().map(move |o| [r.as_slice(), &[*o]].concat())).collect();
    }
    out
}

/// Signed sentences as `L:`/`R:` text, for messages.
pub fn show(seq: &Sequent) -> String {
    seq.iter().map(SignedSentence::to_string).collect::<Vec<_>>().join(", ")
}
