use super::error::{ParseError, SyntaxError};
use super::sequent::{Sequent, Sign, SignedSentence};
use super::signature::Signature;
use super::surface::{desugar, Surface};
use super::term::{Context, Term};
use super::types::Type;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Quoted(String),
    Lam,
    Forall,
    Exists,
    Sub,
    Bot,
    Top,
    Lt,
    Gt,
    LParen,
    RParen,
    Colon,
    Dot,
    Comma,
    Arrow,
    DArrow,
    Iff,
    Amp,
    Bar,
    Tilde,
    Eq,
}

fn ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, SyntaxError> {
    let bytes: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    // Byte offsets for error messages.
    let offsets: Vec<usize> = text.char_indices().map(|(o, _)| o).chain(std::iter::once(text.len())).collect();
    while i < bytes.len() {
        let c = bytes[i];
        let pos = offsets[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let two: String = bytes[i..bytes.len().min(i + 3)].iter().collect();
        let (tok, len) = if two.starts_with("<->") {
            (Tok::Iff, 3)
        } else if two.starts_with("->") {
            (Tok::Arrow, 2)
        } else if two.starts_with("=>") {
            (Tok::DArrow, 2)
        } else {
            match c {
                '<' => (Tok::Lt, 1),
                '>' => (Tok::Gt, 1),
                '(' => (Tok::LParen, 1),
                ')' => (Tok::RParen, 1),
                ':' => (Tok::Colon, 1),
                '.' => (Tok::Dot, 1),
                ',' => (Tok::Comma, 1),
                '&' => (Tok::Amp, 1),
                '|' => (Tok::Bar, 1),
                '~' => (Tok::Tilde, 1),
                '=' => (Tok::Eq, 1),
                '`' | '%' => {
                    let mut j = i + 1;
                    while j < bytes.len() && ident_char(bytes[j]) {
                        j += 1;
                    }
                    if j == i + 1 {
                        return Err(SyntaxError { pos, msg: format!("expected identifier after `{c}`") });
                    }
                    let name: String = bytes[i + 1..j].iter().collect();
                    let tok = if c == '`' { Tok::Quoted(name) } else { Tok::Ident(format!("%{name}")) };
                    (tok, j - i)
                }
                c if c.is_ascii_alphabetic() || c == '_' => {
                    let mut j = i + 1;
                    while j < bytes.len() && ident_char(bytes[j]) {
                        j += 1;
                    }
                    let word: String = bytes[i..j].iter().collect();
                    let tok = match word.as_str() {
                        "lam" => Tok::Lam,
                        "forall" => Tok::Forall,
                        "exists" => Tok::Exists,
                        "sub" => Tok::Sub,
                        "bot" => Tok::Bot,
                        "top" => Tok::Top,
                        _ => Tok::Ident(word),
                    };
                    (tok, j - i)
                }
                other => return Err(SyntaxError { pos, msg: format!("unexpected character `{other}`") }),
            }
        };
        out.push((tok, pos));
        i += len;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    i: usize,
    end: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Parser, SyntaxError> {
        Ok(Parser { toks: lex(text)?, i: 0, end: text.len() })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|(t, _)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.i).map(|(_, p)| *p).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, SyntaxError> {
        Err(SyntaxError { pos: self.pos(), msg: msg.into() })
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: &Tok, what: &str) -> Result<(), SyntaxError> {
        if self.eat(t) {
            Ok(())
        } else {
            self.err(format!("expected {what}"))
        }
    }

    fn ty(&mut self) -> Result<Type, SyntaxError> {
        match self.peek().cloned() {
            Some(Tok::Ident(name)) if !name.starts_with('%') => {
                self.i += 1;
                Ok(Type::basic(&name))
            }
            Some(Tok::Lt) => {
                self.i += 1;
                let mut args = Vec::new();
                while !self.eat(&Tok::Gt) {
                    if self.peek().is_none() {
                        return self.err("unterminated type");
                    }
                    args.push(self.ty()?);
                }
                Ok(Type::complex(args))
            }
            _ => self.err("expected a type"),
        }
    }

    fn term(&mut self) -> Result<Surface, SyntaxError> {
        self.iff()
    }

    fn binder(&mut self) -> Result<Surface, SyntaxError> {
        let kind = self.peek().cloned();
        self.i += 1;
        let name = match self.peek().cloned() {
            Some(Tok::Ident(n)) => {
                self.i += 1;
                n
            }
            _ => return self.err("expected a bound variable"),
        };
        self.expect(&Tok::Colon, "`:` after bound variable")?;
        let ty = self.ty()?;
        self.expect(&Tok::Dot, "`.` after binder")?;
        let body = Box::new(self.term()?);
        Ok(match kind {
            Some(Tok::Lam) => Surface::Lam(name, ty, body),
            Some(Tok::Forall) => Surface::Forall(name, ty, body),
            _ => Surface::Exists(name, ty, body),
        })
    }

    fn iff(&mut self) -> Result<Surface, SyntaxError> {
        let l = self.imp()?;
        if self.eat(&Tok::Iff) {
            let r = self.iff()?;
            return Ok(Surface::Iff(Box::new(l), Box::new(r)));
        }
        Ok(l)
    }

    fn imp(&mut self) -> Result<Surface, SyntaxError> {
        let l = self.or()?;
        if self.eat(&Tok::Arrow) {
            let r = self.imp()?;
            return Ok(Surface::Imp(Box::new(l), Box::new(r)));
        }
        Ok(l)
    }

    fn or(&mut self) -> Result<Surface, SyntaxError> {
        let mut l = self.and()?;
        while self.eat(&Tok::Bar) {
            let r = self.and()?;
            l = Surface::Or(Box::new(l), Box::new(r));
        }
        Ok(l)
    }

    fn and(&mut self) -> Result<Surface, SyntaxError> {
        let mut l = self.unary()?;
        while self.eat(&Tok::Amp) {
            let r = self.unary()?;
            l = Surface::And(Box::new(l), Box::new(r));
        }
        Ok(l)
    }

    fn unary(&mut self) -> Result<Surface, SyntaxError> {
        if self.eat(&Tok::Tilde) {
            return Ok(Surface::Not(Box::new(self.unary()?)));
        }
        if matches!(self.peek(), Some(Tok::Lam | Tok::Forall | Tok::Exists)) {
            return self.binder();
        }
        self.rel()
    }

    fn rel(&mut self) -> Result<Surface, SyntaxError> {
        let l = self.app()?;
        if self.eat(&Tok::Sub) {
            let r = self.app()?;
            return Ok(Surface::Sub(Box::new(l), Box::new(r)));
        }
        if self.eat(&Tok::Eq) {
            let r = self.app()?;
            return Ok(Surface::Eq(Box::new(l), Box::new(r)));
        }
        Ok(l)
    }

    fn starts_atom(&self) -> bool {
        matches!(self.peek(), Some(Tok::Ident(_) | Tok::Quoted(_) | Tok::Bot | Tok::Top | Tok::LParen))
    }

    fn app(&mut self) -> Result<Surface, SyntaxError> {
        let mut f = self.atom()?;
        while self.starts_atom() {
            let a = self.atom()?;
            f = Surface::app(f, a);
        }
        Ok(f)
    }

    fn atom(&mut self) -> Result<Surface, SyntaxError> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Ident(name)) => {
                self.i += 1;
                let ann = if self.eat(&Tok::Colon) { Some(self.ty()?) } else { None };
                Ok(Surface::Ident { name, ann, pos })
            }
            Some(Tok::Quoted(name)) => {
                self.i += 1;
                Ok(Surface::ConstRef { name, pos })
            }
            Some(Tok::Bot) => {
                self.i += 1;
                Ok(Surface::Bottom)
            }
            Some(Tok::Top) => {
                self.i += 1;
                Ok(Surface::Top)
            }
            Some(Tok::LParen) => {
                self.i += 1;
                let t = self.term()?;
                self.expect(&Tok::RParen, "`)`")?;
                Ok(t)
            }
            Some(_) => self.err("expected a term"),
            None => self.err("unexpected end of input"),
        }
    }

    fn finish(&self) -> Result<(), SyntaxError> {
        if self.i < self.toks.len() {
            return self.err("trailing input");
        }
        Ok(())
    }
}

/// Parses a type such as `<e <>>`.
pub fn parse_type(text: &str) -> Result<Type, SyntaxError> {
    let mut p = Parser::new(text)?;
    let t = p.ty()?;
    p.finish()?;
    Ok(t)
}

/// Parses a term without resolving names or expanding sugar.
pub fn parse_surface(text: &str) -> Result<Surface, SyntaxError> {
    let mut p = Parser::new(text)?;
    let t = p.term()?;
    p.finish()?;
    Ok(t)
}

/// Parses and desugars a term against a signature.
pub fn parse_term(text: &str, sig: &Signature) -> Result<Term, ParseError> {
    parse_term_in(text, sig, &Context::new())
}

pub fn parse_term_in(text: &str, sig: &Signature, ctx: &Context) -> Result<Term, ParseError> {
    let s = parse_surface(text)?;
    Ok(desugar(&s, sig, ctx)?)
}

/// Parses a closed formula.
pub fn parse_sentence(text: &str, sig: &Signature) -> Result<Term, ParseError> {
    let t = parse_term(text, sig)?;
    if !t.is_sentence() {
        return Err(ParseError::Sequent(format!("`{text}` is not a closed formula")));
    }
    Ok(t)
}

/// Parses `phi1, ..., phim => psi1, ..., psin`.
pub fn parse_sequent(text: &str, sig: &Signature) -> Result<Sequent, ParseError> {
    let mut p = Parser::new(text)?;
    let mut seq = Sequent::new();
    let mut sign = Sign::L;
    let mut expect_item = true;
    loop {
        match p.peek() {
            None => break,
            Some(Tok::DArrow) => {
                if sign == Sign::R {
                    return Err(p.err::<()>("second `=>`").unwrap_err().into());
                }
                p.i += 1;
                sign = Sign::R;
                expect_item = true;
                continue;
            }
            Some(Tok::Comma) if !expect_item => {
                p.i += 1;
                expect_item = true;
                continue;
            }
            _ if expect_item => {}
            _ => return Err(p.err::<()>("expected `,` or `=>`").unwrap_err().into()),
        }
        let s = p.term()?;
        let t = desugar(&s, sig, &Context::new())?;
        let ss = SignedSentence::new(sign, t).map_err(|e| ParseError::Sequent(e.to_string()))?;
        seq.insert(ss);
        expect_item = false;
    }
    if sign == Sign::L {
        return Err(SyntaxError { pos: text.len(), msg: "missing `=>`".into() }.into());
    }
    Ok(seq)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::sugar;
    use crate::syntax::term::Var;

    fn sig() -> Signature {
        Signature::new().with("p", Type::prop()).with("q", Type::prop()).with("r", Type::prop())
    }

    #[test]
    fn subset_of_constants() {
        let t = parse_term("p sub q", &sig()).unwrap();
        let p = Term::cnst("p", Type::prop());
        let q = Term::cnst("q", Type::prop());
        assert_eq!(t, Term::subset(p, q).unwrap());
    }

    #[test]
    fn lambda_with_applications() {
        let t = parse_term("lam z:<<>> . (z p sub z q)", &sig()).unwrap();
        let z = Var::new("z", Type::prop().property());
        let zt = Term::var(z.clone());
        let body = Term::subset(
            Term::app(zt.clone(), Term::cnst("p", Type::prop())).unwrap(),
            Term::app(zt, Term::cnst("q", Type::prop())).unwrap(),
        )
        .unwrap();
        assert_eq!(t, Term::lam(z, body).unwrap());
    }

    #[test]
    fn sequent_sides() {
        let s = parse_sequent("p, q => r", &sig()).unwrap();
        assert_eq!(s.len(), 3);
        assert!(s.contains(&SignedSentence::new(Sign::L, Term::cnst("q", Type::prop())).unwrap()));
        assert!(s.contains(&SignedSentence::new(Sign::R, Term::cnst("r", Type::prop())).unwrap()));
        assert!(parse_sequent("=>", &sig()).unwrap().is_empty());
    }

    #[test]
    fn arrow_is_right_associative() {
        let t = parse_term("p -> q -> r", &sig()).unwrap();
        let (a, rest) = sugar::as_imp(&t).unwrap();
        assert_eq!(a.to_string(), "p");
        assert!(sugar::as_imp(rest).is_some());
    }

    #[test]
    fn syntax_error_position() {
        let err = parse_surface("p sub )").unwrap_err();
        assert_eq!(err.pos, 6);
    }

    #[test]
    fn unknown_identifier() {
        assert!(matches!(parse_term("s", &sig()), Err(ParseError::Type(_))));
    }

    #[test]
    fn binder_in_unary_position() {
        let sig = sig().with("P", Type::basic("e").property());
        let t = parse_term("~ forall x:e . P x", &sig).unwrap();
        assert!(sugar::as_not(&t).and_then(sugar::as_forall).is_some());
    }
}
