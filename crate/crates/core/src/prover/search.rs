//! The search engine. One depth-first tableau over cumulative branches:
//! every rule keeps its principal, so rule order never costs completeness
//! and no choice needs undoing.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::sync::Arc;
use std::time::Instant;

use super::universe::{canonical_inhabitant, TermUniverse};
use super::{goal_signature, Dimension, SaturationReport, SearchBudget, SearchOutcome};
use crate::calculus::check::contract_head;
use crate::calculus::prune::trim;
use crate::calculus::{check_proof, prune, Proof, RuleData, RuleId, Theory};
use crate::models::check_hintikka;
use crate::syntax::normalize::has_head_redex;
use crate::syntax::{sugar, Const, Sequent, Sign, Signature, SignedSentence, Term, Type};

/// Stack for the search thread; branches can be thousands of rules deep.
const SEARCH_STACK: usize = 512 << 20;
/// How many instantiations the stats keep verbatim.
const RECORD_LIMIT: usize = 10_000;

#[derive(Clone, Debug, Default)]
pub struct SearchStats {
    pub nodes: usize,
    pub splits: usize,
    pub instantiation_count: usize,
    /// The first instantiations performed, as (principal, arguments).
    pub instantiations: Vec<(Term, Vec<Term>)>,
    pub axiom_instances: usize,
}

/// Everything a search produced.
#[derive(Clone, Debug)]
pub struct SearchRun {
    pub outcome: SearchOutcome,
    pub stats: SearchStats,
    /// The goal together with the theory axioms it was searched with.
    pub root: Sequent,
    pub axioms: Vec<Term>,
    /// Signature the root is read in; proofs check against it.
    pub signature: Signature,
}

/// Searches for a proof of `goal` from the axioms of `th`.
pub fn prove(goal: &Sequent, th: &Theory, budget: &SearchBudget) -> SearchOutcome {
    let sig = goal_signature(goal, th);
    prove_in(&sig, goal, th, budget).outcome
}

/// Drives one branch of `goal` to saturation, or closes every branch.
pub fn saturate(goal: &Sequent, budget: &SearchBudget) -> SearchOutcome {
    prove(goal, &Theory::empty(""), budget)
}

/// [`prove`] with an explicit signature, returning statistics as well.
pub fn prove_in(sig: &Signature, goal: &Sequent, th: &Theory, budget: &SearchBudget) -> SearchRun {
    run_search(sig, goal, th, budget, None)
}

/// [`prove_in`] with quantifier instances drawn only from `hints`. A
/// witness constant `_kN` inside a hint stands for any witness of its type.
/// An open branch only shows
/// that the hints do not suffice.
pub fn prove_guided(sig: &Signature, goal: &Sequent, th: &Theory, budget: &SearchBudget, hints: &[Term]) -> SearchRun {
    run_search(sig, goal, th, budget, Some(Arc::new(hints.iter().map(erase_witnesses).collect())))
}

fn is_witness(name: &str) -> bool {
    name.strip_prefix("_k").is_some_and(|n| !n.is_empty() && n.bytes().all(|b| b.is_ascii_digit()))
}

/// `t` with every witness constant renamed to `_k`.
fn erase_witnesses(t: &Term) -> Term {
    use crate::syntax::TermKind;
    match t.kind() {
        TermKind::Const(c) if is_witness(&c.name) => Term::cnst("_k", c.ty.clone()),
        TermKind::Const(_) | TermKind::Var(_) | TermKind::Bottom => t.clone(),
        TermKind::App(f, a) => Term::app(erase_witnesses(f), erase_witnesses(a)).expect("typed"),
        TermKind::Lam(x, b) => Term::lam(x.clone(), erase_witnesses(b)).expect("typed"),
        TermKind::Subset(a, b) => Term::subset(erase_witnesses(a), erase_witnesses(b)).expect("typed"),
    }
}

fn run_search(
    sig: &Signature,
    goal: &Sequent,
    th: &Theory,
    budget: &SearchBudget,
    allowed: Option<Arc<HashSet<Term>>>,
) -> SearchRun {
    let mut full = sig.clone();
    let _ = full.merge(&goal_signature(goal, th));
    let (axioms, capped) = root_axioms(goal, th, budget.max_axiom_instances);
    let mut root = goal.clone();
    for a in &axioms {
        root.insert(SignedSentence::l(a.clone()));
    }
    let (root2, full2, budget2) = (root.clone(), full.clone(), budget.clone());
    let handle = std::thread::Builder::new()
        .stack_size(SEARCH_STACK)
        .spawn(move || {
            let mut engine = Engine::new(&full2, &root2, &budget2);
            let res = engine.run(Branch::root(&root2, allowed));
            (res, engine.stats)
        })
        .expect("spawn search thread");
    let (res, mut stats) = handle.join().expect("search thread panicked");
    stats.axiom_instances = axioms.len() - th.axioms.len().min(axioms.len());
    let outcome = match res {
        Res::Closed(p) => {
            let p = prune(&p);
            if let Err(e) = check_proof(&p, &full) {
                panic!("search produced a proof the kernel rejects: {e}");
            }
            SearchOutcome::ProofFound(p)
        }
        Res::Open(_) if capped => SearchOutcome::Exhausted(Dimension::AxiomInstances),
        Res::Open(br) => {
            let report = report(&br, &full);
            SearchOutcome::OpenBranch(br.seq, report)
        }
        Res::Out(d) => SearchOutcome::Exhausted(d),
    };
    SearchRun { outcome, stats, root, axioms, signature: full }
}

/// Fixed axioms, then scheme instances demanded by the goal and, in turn,
/// by the instances themselves. The flag reports that the cap was reached.
fn root_axioms(goal: &Sequent, th: &Theory, cap: usize) -> (Vec<Term>, bool) {
    let mut out: Vec<Term> = th.axioms.clone();
    let mut seen: HashSet<Term> = out.iter().cloned().collect();
    let mut frontier: Vec<Term> = goal.iter().map(|s| s.sentence.clone()).collect();
    frontier.extend(th.axioms.iter().cloned());
    let mut requested = HashSet::new();
    let mut count = 0;
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for r in th.demand(&frontier) {
            if !requested.insert(r.clone()) {
                continue;
            }
            if count >= cap {
                return (out, true);
            }
            count += 1;
            if let Ok(t) = th.instance(&r) {
                if seen.insert(t.clone()) {
                    out.push(t.clone());
                    next.push(t);
                }
            }
        }
        frontier = next;
    }
    (out, false)
}

fn report(br: &Branch, sig: &Signature) -> SaturationReport {
    let h = check_hintikka(&br.seq, Some(sig));
    let universe: BTreeMap<String, usize> = br.cands.iter().map(|(t, v)| (t.to_string(), v.len())).collect();
    SaturationReport {
        members: br.seq.len(),
        universe_size: universe.values().sum(),
        universe,
        fresh_constants: br.fresh.clone(),
        clause_checks: h.checks.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
        violations: h.violations.iter().map(|v| v.to_string()).collect(),
    }
}

enum Res {
    Closed(Proof),
    Open(Box<Branch>),
    Out(Dimension),
}

#[derive(Clone)]
enum Closure {
    Axiom(Term),
    Bottom,
}

#[derive(Clone)]
struct Quant {
    principal: Term,
    a: Term,
    b: Term,
    arg_types: Vec<Type>,
    /// `A` is `λx⃗.⊤`, so the `R:A C⃗` premise always closes.
    forall_like: bool,
    tried: HashSet<Vec<Term>>,
    /// Every tuple whose largest candidate index is below this is done.
    scan_from: usize,
    count: usize,
}

#[derive(Clone)]
struct Branch {
    seq: Sequent,
    order: Vec<SignedSentence>,
    cursor: usize,
    props: Vec<(Term, Term)>,
    quants: Vec<Quant>,
    cands: BTreeMap<Type, Vec<Term>>,
    cand_set: HashSet<Term>,
    closed: Option<Closure>,
    depth: usize,
    fresh: Vec<String>,
    universe_level: usize,
    capped: bool,
    /// Guided search: the only terms quantifiers may be instantiated with.
    allowed: Option<Arc<HashSet<Term>>>,
}

impl Branch {
    fn root(root: &Sequent, allowed: Option<Arc<HashSet<Term>>>) -> Box<Branch> {
        let mut br = Box::new(Branch {
            seq: Sequent::new(),
            order: Vec::new(),
            cursor: 0,
            props: Vec::new(),
            quants: Vec::new(),
            cands: BTreeMap::new(),
            cand_set: HashSet::new(),
            closed: None,
            depth: 0,
            fresh: Vec::new(),
            universe_level: 1,
            capped: false,
            allowed,
        });
        for s in root {
            br.add(s.clone());
        }
        br
    }

    fn add(&mut self, s: SignedSentence) {
        if self.seq.contains(&s) {
            return;
        }
        if self.closed.is_none() {
            if s.sign == Sign::L && s.sentence.is_bottom() {
                self.closed = Some(Closure::Bottom);
            } else if self.seq.contains(&s.complement()) {
                self.closed = Some(Closure::Axiom(s.sentence.clone()));
            }
        }
        let mut found = Vec::new();
        s.sentence.closed_subterms(&mut found, &mut self.cand_set);
        for t in found {
            if self.allows(&t) {
                self.cands.entry(t.ty().clone()).or_default().push(t);
            }
        }
        self.seq.insert(s.clone());
        self.order.push(s);
    }

    fn allows(&self, t: &Term) -> bool {
        match &self.allowed {
            None => true,
            Some(a) => a.contains(&erase_witnesses(t)),
        }
    }

    fn add_candidate(&mut self, t: Term) {
        if self.cand_set.insert(t.clone()) && self.allows(&t) {
            self.cands.entry(t.ty().clone()).or_default().push(t);
        }
    }

    fn has(&self, sign: Sign, t: &Term) -> bool {
        self.seq.has(sign, t)
    }

    /// Whether adding `s` closes the branch at once or after head reductions
    /// and one empty SubR.
    fn closes_with(&self, sign: Sign, t: &Term) -> bool {
        let mut cur = t.clone();
        for _ in 0..64 {
            if sign == Sign::L && cur.is_bottom() {
                return true;
            }
            if self.has(sign.flip(), &cur) {
                return true;
            }
            if sign == Sign::R {
                if let Some((x, y)) = cur.as_subset() {
                    if x == y {
                        return true;
                    }
                }
            }
            if !has_head_redex(&cur) {
                return false;
            }
            match contract_head(&cur) {
                Ok(r) => cur = r,
                Err(_) => return false,
            }
        }
        false
    }

    fn satisfied(&self, q: &Quant, args: &[Term]) -> bool {
        let b = Term::apps(q.b.clone(), args.iter().cloned()).expect("typed");
        if self.has(Sign::L, &b) {
            return true;
        }
        let a = Term::apps(q.a.clone(), args.iter().cloned()).expect("typed");
        self.has(Sign::R, &a)
    }

    /// The next untried, unsatisfied tuple of `q` with its largest index.
    fn next_tuple(&mut self, qi: usize) -> Option<(usize, Vec<Term>)> {
        let types = self.quants[qi].arg_types.clone();
        let lists: Vec<Vec<Term>> = types.iter().map(|t| self.cands.get(t).cloned().unwrap_or_default()).collect();
        if lists.iter().any(|l| l.is_empty()) {
            return None;
        }
        let max_len = lists.iter().map(Vec::len).max().unwrap_or(0);
        let mut m = self.quants[qi].scan_from;
        while m < max_len {
            let mut found = None;
            for_each_tuple_with_max(&lists, m, &mut |idx| {
                if found.is_some() {
                    return;
                }
                let tuple: Vec<Term> = idx.iter().zip(&lists).map(|(i, l)| l[*i].clone()).collect();
                if !self.quants[qi].tried.contains(&tuple) && !self.satisfied(&self.quants[qi], &tuple) {
                    found = Some(tuple);
                }
            });
            if let Some(t) = found {
                return Some((m, t));
            }
            if m == self.quants[qi].scan_from {
                self.quants[qi].scan_from += 1;
            }
            m += 1;
        }
        None
    }
}

/// Calls `f` on every index tuple whose largest entry is exactly `m`.
fn for_each_tuple_with_max(lists: &[Vec<Term>], m: usize, f: &mut impl FnMut(&[usize])) {
    fn go(lists: &[Vec<Term>], m: usize, pos: usize, hit: bool, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if pos == lists.len() {
            if hit {
                f(cur);
            }
            return;
        }
        let bound = (m + 1).min(lists[pos].len());
        for i in 0..bound {
            cur.push(i);
            go(lists, m, pos + 1, hit || i == m, cur, f);
            cur.pop();
        }
    }
    go(lists, m, 0, false, &mut Vec::new(), f);
}

enum Step {
    Unary { concl: Sequent, rule: RuleId, data: RuleData },
    Split { concl: Sequent, data: RuleData, closed: Proof, closed_is_left: bool },
}

impl Step {
    fn wrap(self, p: Proof) -> Proof {
        match self {
            Step::Unary { concl, rule, data } => Proof::new(concl, rule, data, vec![p]),
            Step::Split { concl, data, closed, closed_is_left } => {
                let premises = if closed_is_left { vec![closed, p] } else { vec![p, closed] };
                Proof::new(concl, RuleId::SubL, data, premises)
            }
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum SplitKind {
    Real,
    LeftCloses,
    RightCloses,
    BothClose,
}

enum Action {
    Unary { rule: RuleId, data: RuleData, add: Vec<SignedSentence> },
    Split { principal: Term, args: Vec<Term>, left: SignedSentence, right: SignedSentence, kind: SplitKind },
    Continue,
    Saturated,
}

struct Engine {
    budget: SearchBudget,
    sig: Signature,
    universe: TermUniverse,
    start: Instant,
    counter: usize,
    used: BTreeSet<String>,
    stats: SearchStats,
    timed_out: bool,
}

impl Engine {
    fn new(sig: &Signature, root: &Sequent, budget: &SearchBudget) -> Engine {
        let mut used: BTreeSet<String> = sig.constants().map(|c| c.name.to_string()).collect();
        used.extend(root.constant_names());
        Engine {
            budget: budget.clone(),
            sig: sig.clone(),
            universe: TermUniverse::new(sig, budget.term_universe_depth),
            start: Instant::now(),
            counter: 0,
            used,
            stats: SearchStats::default(),
            timed_out: false,
        }
    }

    fn fresh(&mut self, ty: &Type) -> Const {
        loop {
            self.counter += 1;
            let name = format!("_k{}", self.counter);
            if self.used.insert(name.clone()) {
                return Const::new(&name, ty.clone());
            }
        }
    }

    fn out_of_time(&mut self) -> bool {
        if !self.timed_out && self.stats.nodes.is_multiple_of(64) && self.start.elapsed() > self.budget.time_limit {
            self.timed_out = true;
        }
        self.timed_out
    }

    fn run(&mut self, mut br: Box<Branch>) -> Res {
        let mut trail: Vec<Step> = Vec::new();
        let res = loop {
            self.stats.nodes += 1;
            if self.out_of_time() {
                break Res::Out(Dimension::Time);
            }
            if let Some(c) = &br.closed {
                let p = match c {
                    Closure::Axiom(phi) => Proof::leaf(br.seq.clone(), RuleId::Axiom, RuleData::Principal(phi.clone())),
                    Closure::Bottom => Proof::leaf(br.seq.clone(), RuleId::BottomL, RuleData::None),
                };
                break Res::Closed(p);
            }
            if br.depth >= self.budget.max_depth {
                break Res::Out(Dimension::Depth);
            }
            match self.next_action(&mut br) {
                Action::Continue => {}
                Action::Saturated => {
                    break if br.capped { Res::Out(Dimension::Instantiations) } else { Res::Open(br) };
                }
                Action::Unary { rule, data, add } => {
                    trail.push(Step::Unary { concl: br.seq.clone(), rule, data });
                    br.depth += 1;
                    for s in add {
                        br.add(s);
                    }
                }
                Action::Split { principal, args, left, right, kind } => {
                    self.stats.splits += 1;
                    let concl = br.seq.clone();
                    let data = RuleData::Instantiate { principal, args };
                    let mut lb = br.clone();
                    lb.depth += 1;
                    lb.add(left.clone());
                    br.depth += 1;
                    br.add(right.clone());
                    let rb = br;
                    let (first, second, first_is_left, added) = match kind {
                        SplitKind::RightCloses => (rb, lb, false, right),
                        _ => (lb, rb, true, left),
                    };
                    let first_seq = first.seq.clone();
                    match self.run(first) {
                        Res::Closed(p) => {
                            // A closure that ignores the split member closes the parent too.
                            let p = trim(&p);
                            if !p.conclusion.contains(&added) {
                                break Res::Closed(p.weaken_to(&concl));
                            }
                            let closed = p.weaken_to(&first_seq);
                            trail.push(Step::Split { concl, data, closed, closed_is_left: first_is_left });
                            br = second;
                        }
                        Res::Open(b) => break Res::Open(b),
                        Res::Out(d) => {
                            break match self.run(second) {
                                Res::Open(b) => Res::Open(b),
                                _ => Res::Out(d),
                            };
                        }
                    }
                }
            }
        };
        match res {
            Res::Closed(mut p) => {
                for step in trail.into_iter().rev() {
                    p = step.wrap(p);
                }
                Res::Closed(p)
            }
            other => other,
        }
    }

    fn register(&mut self, br: &mut Branch, a: &Term, b: &Term, principal: &Term) {
        let arg_types = a.ty().args().to_vec();
        if arg_types.is_empty() {
            br.props.push((a.clone(), b.clone()));
            return;
        }
        for ty in &arg_types {
            if let Some(t) = canonical_inhabitant(ty, &self.sig) {
                br.add_candidate(t);
            }
            for k in 1..br.universe_level {
                for t in self.universe.level(ty, k) {
                    br.add_candidate(t);
                }
            }
        }
        br.quants.push(Quant {
            principal: principal.clone(),
            a: a.clone(),
            b: b.clone(),
            forall_like: is_full(a),
            arg_types,
            tried: HashSet::new(),
            scan_from: 0,
            count: 0,
        });
    }

    fn next_action(&mut self, br: &mut Branch) -> Action {
        // λ-contractions, SubR, and registration of left inclusions.
        while br.cursor < br.order.len() {
            let s = br.order[br.cursor].clone();
            br.cursor += 1;
            let t = &s.sentence;
            if has_head_redex(t) {
                if let Ok(r) = contract_head(t) {
                    if !br.has(s.sign, &r) {
                        let rule = if s.sign == Sign::L { RuleId::LamL } else { RuleId::LamR };
                        return Action::Unary {
                            rule,
                            data: RuleData::Principal(t.clone()),
                            add: vec![signed(s.sign, r)],
                        };
                    }
                }
                continue;
            }
            let Some((a, b)) = t.as_subset() else { continue };
            match s.sign {
                Sign::R => {
                    let arg_types = a.ty().args().to_vec();
                    if arg_types.is_empty() && br.has(Sign::L, a) && br.has(Sign::R, b) {
                        continue;
                    }
                    let fresh: Vec<Const> = arg_types.iter().map(|ty| self.fresh(ty)).collect();
                    br.fresh.extend(fresh.iter().map(|c| c.name.to_string()));
                    let cs: Vec<Term> = fresh.iter().cloned().map(Term::constant).collect();
                    let ac = Term::apps(a.clone(), cs.iter().cloned()).expect("typed");
                    let bc = Term::apps(b.clone(), cs).expect("typed");
                    return Action::Unary {
                        rule: RuleId::SubR,
                        data: RuleData::Fresh { principal: t.clone(), fresh },
                        add: vec![SignedSentence::l(ac), SignedSentence::r(bc)],
                    };
                }
                Sign::L => {
                    let (a, b) = (a.clone(), b.clone());
                    self.register(br, &a, &b, t);
                }
            }
        }

        // Propositional inclusions where a premise closes at once.
        br.props.retain(|(a, b)| !(br.seq.has(Sign::L, b) || br.seq.has(Sign::R, a)));
        for (a, b) in &br.props {
            let lc = br.closes_with(Sign::L, b);
            let rc = br.closes_with(Sign::R, a);
            let kind = match (lc, rc) {
                (true, true) => SplitKind::BothClose,
                (true, false) => SplitKind::LeftCloses,
                (false, true) => SplitKind::RightCloses,
                _ => continue,
            };
            let principal = Term::subset(a.clone(), b.clone()).expect("typed");
            return split(principal, a, b, Vec::new(), kind);
        }

        // Universal instances: the right premise always closes.
        if let Some(act) = self.fair_instance(br, true) {
            return act;
        }

        // Other relational inclusions with a premise that closes at once.
        for qi in 0..br.quants.len() {
            if br.quants[qi].forall_like || br.quants[qi].count >= self.budget.max_instantiations {
                continue;
            }
            let lists: Vec<Vec<Term>> =
                br.quants[qi].arg_types.iter().map(|t| br.cands.get(t).cloned().unwrap_or_default()).collect();
            let max_len = lists.iter().map(Vec::len).max().unwrap_or(0);
            let mut hit = None;
            for m in 0..max_len {
                for_each_tuple_with_max(&lists, m, &mut |idx| {
                    if hit.is_some() {
                        return;
                    }
                    let q = &br.quants[qi];
                    let tuple: Vec<Term> = idx.iter().zip(&lists).map(|(i, l)| l[*i].clone()).collect();
                    if q.tried.contains(&tuple) || br.satisfied(q, &tuple) {
                        return;
                    }
                    let bc = Term::apps(q.b.clone(), tuple.iter().cloned()).expect("typed");
                    let ac = Term::apps(q.a.clone(), tuple.iter().cloned()).expect("typed");
                    let kind = match (br.closes_with(Sign::L, &bc), br.closes_with(Sign::R, &ac)) {
                        (true, true) => SplitKind::BothClose,
                        (true, false) => SplitKind::LeftCloses,
                        (false, true) => SplitKind::RightCloses,
                        _ => return,
                    };
                    hit = Some((tuple, kind));
                });
                if hit.is_some() {
                    break;
                }
            }
            if let Some((tuple, kind)) = hit {
                return self.instantiate(br, qi, tuple, kind);
            }
        }

        // Genuine propositional splits.
        if let Some((a, b)) = br.props.first().cloned() {
            let principal = Term::subset(a.clone(), b.clone()).expect("typed");
            return split(principal, &a, &b, Vec::new(), SplitKind::Real);
        }

        // Genuine relational splits.
        if let Some(act) = self.fair_instance(br, false) {
            return act;
        }

        // Widen the candidates with the next universe level.
        if br.universe_level < self.budget.term_universe_depth {
            let k = br.universe_level;
            br.universe_level += 1;
            let types: BTreeSet<Type> = br.quants.iter().flat_map(|q| q.arg_types.iter().cloned()).collect();
            for ty in types {
                for t in self.universe.level(&ty, k) {
                    br.add_candidate(t);
                }
            }
            return Action::Continue;
        }
        Action::Saturated
    }

    /// The fairest pending instance among quantifiers of the given kind:
    /// smallest largest-candidate-index first, then principal order.
    fn fair_instance(&mut self, br: &mut Branch, forall_like: bool) -> Option<Action> {
        let mut best: Option<(usize, usize, Vec<Term>)> = None;
        for qi in 0..br.quants.len() {
            if br.quants[qi].forall_like != forall_like {
                continue;
            }
            if br.quants[qi].count >= self.budget.max_instantiations {
                if br.next_tuple(qi).is_some() {
                    br.capped = true;
                }
                continue;
            }
            if let Some((m, tuple)) = br.next_tuple(qi) {
                if best.as_ref().is_none_or(|(bm, _, _)| m < *bm) {
                    best = Some((m, qi, tuple));
                }
            }
        }
        let (_, qi, tuple) = best?;
        let kind = if forall_like { SplitKind::RightCloses } else { SplitKind::Real };
        Some(self.instantiate(br, qi, tuple, kind))
    }

    fn instantiate(&mut self, br: &mut Branch, qi: usize, tuple: Vec<Term>, kind: SplitKind) -> Action {
        let q = &mut br.quants[qi];
        q.tried.insert(tuple.clone());
        q.count += 1;
        self.stats.instantiation_count += 1;
        if self.stats.instantiations.len() < RECORD_LIMIT {
            self.stats.instantiations.push((q.principal.clone(), tuple.clone()));
        }
        let (principal, a, b) = (q.principal.clone(), q.a.clone(), q.b.clone());
        split(principal, &a, &b, tuple, kind)
    }
}

fn signed(sign: Sign, t: Term) -> SignedSentence {
    SignedSentence { sign, sentence: t }
}

fn split(principal: Term, a: &Term, b: &Term, args: Vec<Term>, kind: SplitKind) -> Action {
    let bc = Term::apps(b.clone(), args.iter().cloned()).expect("typed");
    let ac = Term::apps(a.clone(), args.iter().cloned()).expect("typed");
    Action::Split { principal, args, left: SignedSentence::l(bc), right: SignedSentence::r(ac), kind }
}

/// `λx⃗.⊤` with one binder per argument place.
fn is_full(a: &Term) -> bool {
    let n = a.ty().args().len();
    let mut t = a;
    for _ in 0..n {
        match t.as_lam() {
            Some((_, body)) => t = body,
            None => return false,
        }
    }
    sugar::is_top(t)
}
