use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, LazyLock, Mutex, Weak};

use super::error::TypeError;
use super::signature::Signature;
use super::types::{Name, Type};

/// A typed variable. Identity is the (name, type) pair.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var {
    pub name: Name,
    pub ty: Type,
}

impl Var {
    pub fn new(name: &str, ty: Type) -> Var {
        Var { name: Arc::from(name), ty }
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.name, self.ty)
    }
}

/// A non-logical constant together with its (unique) type.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Const {
    pub name: Name,
    pub ty: Type,
}

impl Const {
    pub fn new(name: &str, ty: Type) -> Const {
        Const { name: Arc::from(name), ty }
    }
}

impl fmt::Debug for Const {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.name, self.ty)
    }
}

/// The public view of a term's root.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TermKind {
    Const(Const),
    Var(Var),
    Bottom,
    App(Term, Term),
    Lam(Var, Term),
    Subset(Term, Term),
}

struct Node {
    kind: TermKind,
    ty: Type,
    hash: u64,
    size: usize,
    /// Free variables; `None` when the term is closed.
    free: Option<Arc<BTreeSet<Var>>>,
}

/// Live nodes by hash, so that equal terms share one allocation and most
/// comparisons stop at pointer equality.
struct Shard {
    buckets: HashMap<u64, Vec<Weak<Node>>>,
    entries: usize,
    swept_at: usize,
}

const SHARDS: usize = 16;

static TABLE: LazyLock<Vec<Mutex<Shard>>> = LazyLock::new(|| {
    (0..SHARDS).map(|_| Mutex::new(Shard { buckets: HashMap::new(), entries: 0, swept_at: 1024 })).collect()
});

fn intern(node: Node) -> Term {
    let mut shard = TABLE[node.hash as usize % SHARDS].lock().unwrap_or_else(|e| e.into_inner());
    let bucket = shard.buckets.entry(node.hash).or_default();
    let before = bucket.len();
    bucket.retain(|w| w.strong_count() > 0);
    for w in bucket.iter() {
        if let Some(existing) = w.upgrade() {
            if existing.kind == node.kind && existing.ty == node.ty {
                return Term(existing);
            }
        }
    }
    let arc = Arc::new(node);
    bucket.push(Arc::downgrade(&arc));
    let removed = before + 1 - bucket.len();
    shard.entries = shard.entries + 1 - removed.min(shard.entries + 1);
    if shard.entries > 2 * shard.swept_at {
        shard.buckets.retain(|_, b| {
            b.retain(|w| w.strong_count() > 0);
            !b.is_empty()
        });
        shard.entries = shard.buckets.values().map(Vec::len).sum();
        shard.swept_at = shard.entries.max(1024);
    }
    Term(arc)
}

/// A well-typed term. Ill-typed trees cannot be constructed.
#[derive(Clone)]
pub struct Term(Arc<Node>);

impl PartialEq for Term {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.hash == other.0.hash && self.0.kind == other.0.kind)
    }
}

impl Eq for Term {}

impl Hash for Term {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.0.hash);
    }
}

impl PartialOrd for Term {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Term {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        if Arc::ptr_eq(&self.0, &other.0) {
            return std::cmp::Ordering::Equal;
        }
        self.0.kind.cmp(&other.0.kind)
    }
}

impl Term {
    fn mk(kind: TermKind, ty: Type) -> Term {
        let mut h = DefaultHasher::new();
        let (size, free) = match &kind {
            TermKind::Const(c) => {
                0u8.hash(&mut h);
                c.hash(&mut h);
                (1, None)
            }
            TermKind::Var(v) => {
                1u8.hash(&mut h);
                v.hash(&mut h);
                (1, Some(Arc::new(BTreeSet::from([v.clone()]))))
            }
            TermKind::Bottom => {
                2u8.hash(&mut h);
                (1, None)
            }
            TermKind::App(a, b) | TermKind::Subset(a, b) => {
                if matches!(kind, TermKind::App(..)) { 3u8 } else { 5u8 }.hash(&mut h);
                h.write_u64(a.0.hash);
                h.write_u64(b.0.hash);
                (1 + a.size() + b.size(), union_free(a, b))
            }
            TermKind::Lam(v, body) => {
                4u8.hash(&mut h);
                v.hash(&mut h);
                h.write_u64(body.0.hash);
                let free = match &body.0.free {
                    Some(fv) if fv.contains(v) => {
                        let mut s = (**fv).clone();
                        s.remove(v);
                        if s.is_empty() {
                            None
                        } else {
                            Some(Arc::new(s))
                        }
                    }
                    other => other.clone(),
                };
                (1 + body.size(), free)
            }
        };
        intern(Node { kind, ty, hash: h.finish(), size, free })
    }

    pub fn constant(c: Const) -> Term {
        let ty = c.ty.clone();
        Term::mk(TermKind::Const(c), ty)
    }

    /// Shorthand for `Term::constant(Const::new(name, ty))`.
    pub fn cnst(name: &str, ty: Type) -> Term {
        Term::constant(Const::new(name, ty))
    }

    pub fn var(v: Var) -> Term {
        let ty = v.ty.clone();
        Term::mk(TermKind::Var(v), ty)
    }

    pub fn bottom() -> Term {
        Term::mk(TermKind::Bottom, Type::prop())
    }

    /// `(f a)`; `f` must have a complex type whose first argument type is the type of `a`.
    pub fn app(f: Term, a: Term) -> Result<Term, TypeError> {
        let ty = match f.ty() {
            Type::Complex(args) if !args.is_empty() => {
                if args[0] != *a.ty() {
                    return Err(TypeError::Mismatch(format!(
                        "argument of type {} given where {} expected",
                        a.ty(),
                        args[0]
                    )));
                }
                Type::complex(args[1..].to_vec())
            }
            Type::Complex(_) => {
                return Err(TypeError::Mismatch("application of a term of type <> (no argument places left)".into()))
            }
            Type::Basic(b) => return Err(TypeError::Mismatch(format!("application of a term of basic type {b}"))),
        };
        Ok(Term::mk(TermKind::App(f, a), ty))
    }

    /// `f a1 ... an`, left-associated.
    pub fn apps(f: Term, args: impl IntoIterator<Item = Term>) -> Result<Term, TypeError> {
        args.into_iter().try_fold(f, Term::app)
    }

    /// `(lam v . body)`; the body must have complex type.
    pub fn lam(v: Var, body: Term) -> Result<Term, TypeError> {
        let ty = body
            .ty()
            .abstracted(&v.ty)
            .ok_or_else(|| TypeError::Mismatch(format!("abstraction over a body of basic type {}", body.ty())))?;
        Ok(Term::mk(TermKind::Lam(v, body), ty))
    }

    /// `(a sub b)`; both sides must share one complex type.
    pub fn subset(a: Term, b: Term) -> Result<Term, TypeError> {
        if a.ty() != b.ty() {
            return Err(TypeError::Mismatch(format!("inclusion between terms of types {} and {}", a.ty(), b.ty())));
        }
        if !a.ty().is_complex() {
            return Err(TypeError::Mismatch(format!("inclusion at basic type {}", a.ty())));
        }
        Ok(Term::mk(TermKind::Subset(a, b), Type::prop()))
    }

    pub fn kind(&self) -> &TermKind {
        &self.0.kind
    }

    pub fn ty(&self) -> &Type {
        &self.0.ty
    }

    pub fn size(&self) -> usize {
        self.0.size
    }

    pub fn is_closed(&self) -> bool {
        self.0.free.is_none()
    }

    pub fn is_formula(&self) -> bool {
        self.ty().is_prop()
    }

    /// Closed formula.
    pub fn is_sentence(&self) -> bool {
        self.is_formula() && self.is_closed()
    }

    pub fn free_vars(&self) -> BTreeSet<Var> {
        self.0.free.as_ref().map(|s| (**s).clone()).unwrap_or_default()
    }

    pub fn has_free(&self, v: &Var) -> bool {
        self.0.free.as_ref().is_some_and(|s| s.contains(v))
    }

    pub fn is_bottom(&self) -> bool {
        matches!(self.kind(), TermKind::Bottom)
    }

    pub fn as_const(&self) -> Option<&Const> {
        match self.kind() {
            TermKind::Const(c) => Some(c),
            _ => None,
        }
    }

    pub fn as_var(&self) -> Option<&Var> {
        match self.kind() {
            TermKind::Var(v) => Some(v),
            _ => None,
        }
    }

    pub fn as_subset(&self) -> Option<(&Term, &Term)> {
        match self.kind() {
            TermKind::Subset(a, b) => Some((a, b)),
            _ => None,
        }
    }

    pub fn as_lam(&self) -> Option<(&Var, &Term)> {
        match self.kind() {
            TermKind::Lam(v, b) => Some((v, b)),
            _ => None,
        }
    }

    pub fn as_app(&self) -> Option<(&Term, &Term)> {
        match self.kind() {
            TermKind::App(f, a) => Some((f, a)),
            _ => None,
        }
    }

    /// Splits `h a1 ... an` into the head `h` and its arguments.
    pub fn spine(&self) -> (&Term, Vec<&Term>) {
        let mut args = Vec::new();
        let mut t = self;
        while let TermKind::App(f, a) = t.kind() {
            args.push(a);
            t = f;
        }
        args.reverse();
        (t, args)
    }

    /// All constants occurring in the term.
    pub fn constants(&self) -> BTreeSet<Const> {
        let mut out = BTreeSet::new();
        self.collect_constants(&mut out);
        out
    }

    pub fn collect_constants(&self, out: &mut BTreeSet<Const>) {
        match self.kind() {
            TermKind::Const(c) => {
                out.insert(c.clone());
            }
            TermKind::Var(_) | TermKind::Bottom => {}
            TermKind::App(a, b) | TermKind::Subset(a, b) => {
                a.collect_constants(out);
                b.collect_constants(out);
            }
            TermKind::Lam(_, b) => b.collect_constants(out),
        }
    }

    pub fn contains_const(&self, name: &str) -> bool {
        match self.kind() {
            TermKind::Const(c) => &*c.name == name,
            TermKind::Var(_) | TermKind::Bottom => false,
            TermKind::App(a, b) | TermKind::Subset(a, b) => a.contains_const(name) || b.contains_const(name),
            TermKind::Lam(_, b) => b.contains_const(name),
        }
    }

    /// Every subterm occurrence, in pre-order.
    pub fn subterms(&self) -> Vec<Term> {
        let mut out = Vec::new();
        self.visit(&mut |t| out.push(t.clone()));
        out
    }

    pub fn visit(&self, f: &mut impl FnMut(&Term)) {
        f(self);
        match self.kind() {
            TermKind::Const(_) | TermKind::Var(_) | TermKind::Bottom => {}
            TermKind::App(a, b) | TermKind::Subset(a, b) => {
                a.visit(f);
                b.visit(f);
            }
            TermKind::Lam(_, b) => b.visit(f),
        }
    }

    /// Closed subterms, deduplicated, in pre-order of first occurrence.
    pub fn closed_subterms(&self, out: &mut Vec<Term>, seen: &mut std::collections::HashSet<Term>) {
        if self.is_closed() {
            if !seen.insert(self.clone()) {
                return;
            }
            out.push(self.clone());
        }
        match self.kind() {
            TermKind::Const(_) | TermKind::Var(_) | TermKind::Bottom => {}
            TermKind::App(a, b) | TermKind::Subset(a, b) => {
                a.closed_subterms(out, seen);
                b.closed_subterms(out, seen);
            }
            TermKind::Lam(_, b) => b.closed_subterms(out, seen),
        }
    }

    /// Maximum nesting of binders and applications.
    pub fn depth(&self) -> usize {
        match self.kind() {
            TermKind::Const(_) | TermKind::Var(_) | TermKind::Bottom => 0,
            TermKind::App(a, b) | TermKind::Subset(a, b) => 1 + a.depth().max(b.depth()),
            TermKind::Lam(_, b) => 1 + b.depth(),
        }
    }

    /// Canonical surface text of the term.
    pub fn print(&self) -> String {
        super::print::print_term(self)
    }
}

fn union_free(a: &Term, b: &Term) -> Option<Arc<BTreeSet<Var>>> {
    match (&a.0.free, &b.0.free) {
        (None, None) => None,
        (Some(s), None) | (None, Some(s)) => Some(s.clone()),
        (Some(s), Some(t)) => {
            if Arc::ptr_eq(s, t) {
                return Some(s.clone());
            }
            let mut u = (**s).clone();
            u.extend(t.iter().cloned());
            Some(Arc::new(u))
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.print())
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.print())
    }
}

/// Typing context for free variables.
pub type Context = BTreeMap<Name, Type>;

/// Computes the type of `term`, checking that every constant is declared in
/// `sig` at its carried type and that every free variable appears in `ctx`
/// at its carried type.
pub fn type_of(term: &Term, sig: &Signature, ctx: &Context) -> Result<Type, TypeError> {
    check_decls(term, sig, ctx, &mut Vec::new())?;
    Ok(term.ty().clone())
}

fn check_decls(term: &Term, sig: &Signature, ctx: &Context, bound: &mut Vec<Var>) -> Result<(), TypeError> {
    match term.kind() {
        TermKind::Const(c) => match sig.constant(&c.name) {
            None => Err(TypeError::UndeclaredConstant(c.name.to_string())),
            Some(ty) if *ty != c.ty => {
                Err(TypeError::Mismatch(format!("constant {} used at type {} but declared at {}", c.name, c.ty, ty)))
            }
            Some(_) => Ok(()),
        },
        TermKind::Var(v) => {
            if bound.contains(v) {
                return Ok(());
            }
            match ctx.get(&v.name) {
                Some(ty) if *ty == v.ty => Ok(()),
                Some(ty) => Err(TypeError::Mismatch(format!(
                    "variable {} carries type {} but context gives {}",
                    v.name, v.ty, ty
                ))),
                None => Err(TypeError::UnboundVariable(v.name.to_string())),
            }
        }
        TermKind::Bottom => Ok(()),
        TermKind::App(a, b) | TermKind::Subset(a, b) => {
            check_decls(a, sig, ctx, bound)?;
            check_decls(b, sig, ctx, bound)
        }
        TermKind::Lam(v, b) => {
            bound.push(v.clone());
            let r = check_decls(b, sig, ctx, bound);
            bound.pop();
            r
        }
    }
}

pub fn free_vars(term: &Term) -> BTreeSet<Var> {
    term.free_vars()
}

pub fn is_closed(term: &Term) -> bool {
    term.is_closed()
}
