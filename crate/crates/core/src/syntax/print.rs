use super::sugar;
use super::term::{Term, TermKind, Var};

const BINDER: u8 = 0;
const IFF: u8 = 1;
const IMP: u8 = 2;
const OR: u8 = 3;
const AND: u8 = 4;
const UNARY: u8 = 5;
const REL: u8 = 6;
const APP: u8 = 7;
const ATOM: u8 = 8;

/// Canonical text: core syntax only (`bot`, application, `lam`, `sub`).
/// This is the form used for sequent membership and model keys.
pub fn print_term(t: &Term) -> String {
    let mut p = Printer { sugar: false, scope: Vec::new(), out: String::new() };
    p.term(t, BINDER);
    p.out
}

/// Text with defined connectives folded back. Parses to the same term.
pub fn pretty_term(t: &Term) -> String {
    let mut p = Printer { sugar: true, scope: Vec::new(), out: String::new() };
    p.term(t, BINDER);
    p.out
}

struct Printer {
    sugar: bool,
    scope: Vec<Var>,
    out: String,
}

impl Printer {
    fn open(&mut self, level: u8, min: u8) -> bool {
        let paren = level < min;
        if paren {
            self.out.push('(');
        }
        paren
    }

    fn close(&mut self, paren: bool) {
        if paren {
            self.out.push(')');
        }
    }

    fn binder(&mut self, kw: &str, x: &Var, body: &Term, min: u8) {
        let paren = self.open(BINDER, min);
        self.out.push_str(&format!("{kw} {}:{} . ", x.name, x.ty));
        self.scope.push(x.clone());
        self.term(body, BINDER);
        self.scope.pop();
        self.close(paren);
    }

    #[allow(clippy::too_many_arguments)]
    fn infix(&mut self, level: u8, min: u8, l: &Term, lmin: u8, op: &str, r: &Term, rmin: u8) {
        let paren = self.open(level, min);
        self.term(l, lmin);
        self.out.push(' ');
        self.out.push_str(op);
        self.out.push(' ');
        self.term(r, rmin);
        self.close(paren);
    }

    fn var(&mut self, v: &Var) {
        let innermost = self.scope.iter().rev().find(|b| b.name == v.name);
        if innermost == Some(v) {
            self.out.push_str(&v.name);
        } else {
            self.out.push_str(&format!("{}:{}", v.name, v.ty));
        }
    }

    fn term(&mut self, t: &Term, min: u8) {
        if self.sugar && self.sugared(t, min) {
            return;
        }
        match t.kind() {
            TermKind::Const(c) => {
                if self.scope.iter().any(|b| b.name == c.name) {
                    self.out.push('`');
                }
                self.out.push_str(&c.name);
            }
            TermKind::Var(v) => self.var(v),
            TermKind::Bottom => self.out.push_str("bot"),
            TermKind::App(f, a) => {
                let paren = self.open(APP, min);
                self.term(f, APP);
                self.out.push(' ');
                self.term(a, ATOM);
                self.close(paren);
            }
            TermKind::Lam(x, b) => self.binder("lam", x, b, min),
            TermKind::Subset(a, b) => self.infix(REL, min, a, APP, "sub", b, APP),
        }
    }

    fn sugared(&mut self, t: &Term, min: u8) -> bool {
        if !t.is_formula() || t.as_subset().is_none() {
            return false;
        }
        if sugar::is_top(t) {
            self.out.push_str("top");
        } else if let Some((a, b)) = sugar::as_eq(t) {
            self.infix(REL, min, a, APP, "=", b, APP);
        } else if let Some((x, body)) = sugar::as_exists(t) {
            self.binder("exists", x, body, min);
        } else if let Some((x, body)) = sugar::as_forall(t) {
            self.binder("forall", x, body, min);
        } else if let Some((a, b)) = sugar::as_iff(t) {
            self.infix(IFF, min, a, IMP, "<->", b, IFF);
        } else if let Some((a, b)) = sugar::as_and(t) {
            self.infix(AND, min, a, AND, "&", b, UNARY);
        } else if let Some(a) = sugar::as_not(t) {
            let paren = self.open(UNARY, min);
            self.out.push('~');
            self.term(a, UNARY);
            self.close(paren);
        } else if let Some((a, b)) = sugar::as_or(t) {
            self.infix(OR, min, a, OR, "|", b, AND);
        } else if let Some((a, b)) = sugar::as_imp(t) {
            self.infix(IMP, min, a, OR, "->", b, IMP);
        } else {
            return false;
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse::parse_term;
    use crate::syntax::signature::Signature;
    use crate::syntax::types::Type;

    fn sig() -> Signature {
        let e = Type::basic("e");
        Signature::new()
            .with("p", Type::prop())
            .with("q", Type::prop())
            .with("c", e.clone())
            .with("P", e.property())
            .with("R", Type::complex(vec![e.clone(), e]))
    }

    #[test]
    fn canonical_is_core_only() {
        let t = parse_term("p -> q", &sig()).unwrap();
        assert_eq!(print_term(&t), "p sub q");
        assert_eq!(pretty_term(&t), "p -> q");
    }

    #[test]
    fn pretty_round_trips() {
        for src in [
            "forall x:e . P x -> exists y:e . R x y",
            "p & q | ~p",
            "(p <-> q) -> p = q",
            "c = c",
            "lam x:e . lam x:<> . x",
            "~ ~p",
            "top & (p -> q -> p)",
        ] {
            let t = parse_term(src, &sig()).unwrap();
            for text in [print_term(&t), pretty_term(&t)] {
                assert_eq!(parse_term(&text, &sig()).unwrap(), t, "{src} via {text}");
            }
        }
    }

    #[test]
    fn shadowed_variable_is_annotated() {
        let t = parse_term("lam x:e . lam x:<> . P x:e", &sig());
        // The inner body has type <> only if `x:e` denotes the outer binder.
        let t = t.unwrap();
        assert_eq!(print_term(&t), "lam x:e . lam x:<> . P x:e");
    }

    #[test]
    fn constant_shadowed_by_binder_is_quoted() {
        let t = parse_term("lam c:<> . P `c", &sig()).unwrap();
        assert_eq!(print_term(&t), "lam c:<> . P `c");
    }
}
