use std::collections::BTreeSet;
use std::fmt;

use super::print::{pretty_term, print_term};
use super::term::Term;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    L,
    R,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::L => Sign::R,
            Sign::R => Sign::L,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::L => "L",
            Sign::R => "R",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("signed sentences must be closed formulas: {0}")]
pub struct NotASentence(pub String);

/// `L:φ` or `R:φ` for a closed formula φ.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedSentence {
    pub sign: Sign,
    pub sentence: Term,
}

impl SignedSentence {
    pub fn new(sign: Sign, sentence: Term) -> Result<SignedSentence, NotASentence> {
        if !sentence.is_sentence() {
            return Err(NotASentence(print_term(&sentence)));
        }
        Ok(SignedSentence { sign, sentence })
    }

    pub fn l(sentence: Term) -> SignedSentence {
        SignedSentence::new(Sign::L, sentence).expect("closed formula")
    }

    pub fn r(sentence: Term) -> SignedSentence {
        SignedSentence::new(Sign::R, sentence).expect("closed formula")
    }

    pub fn complement(&self) -> SignedSentence {
        SignedSentence { sign: self.sign.flip(), sentence: self.sentence.clone() }
    }
}

impl fmt::Display for SignedSentence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.sign, print_term(&self.sentence))
    }
}

impl fmt::Debug for SignedSentence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.sign, pretty_term(&self.sentence))
    }
}

/// A finite set of signed sentences. Membership is syntactic identity.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sequent(BTreeSet<SignedSentence>);

impl Sequent {
    pub fn new() -> Sequent {
        Sequent::default()
    }

    pub fn from_sides(left: impl IntoIterator<Item = Term>, right: impl IntoIterator<Item = Term>) -> Sequent {
        let mut s = Sequent::new();
        for t in left {
            s.insert(SignedSentence::l(t));
        }
        for t in right {
            s.insert(SignedSentence::r(t));
        }
        s
    }

    pub fn insert(&mut self, s: SignedSentence) -> bool {
        self.0.insert(s)
    }

    pub fn remove(&mut self, s: &SignedSentence) -> bool {
        self.0.remove(s)
    }

    pub fn with(&self, s: SignedSentence) -> Sequent {
        let mut out = self.clone();
        out.insert(s);
        out
    }

    pub fn contains(&self, s: &SignedSentence) -> bool {
        self.0.contains(s)
    }

    pub fn has(&self, sign: Sign, t: &Term) -> bool {
        self.0.contains(&SignedSentence { sign, sentence: t.clone() })
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &SignedSentence> {
        self.0.iter()
    }

    pub fn left(&self) -> impl Iterator<Item = &Term> {
        self.0.iter().filter(|s| s.sign == Sign::L).map(|s| &s.sentence)
    }

    pub fn right(&self) -> impl Iterator<Item = &Term> {
        self.0.iter().filter(|s| s.sign == Sign::R).map(|s| &s.sentence)
    }

    pub fn is_subset(&self, other: &Sequent) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn union(&self, other: &Sequent) -> Sequent {
        Sequent(self.0.union(&other.0).cloned().collect())
    }

    pub fn difference(&self, other: &Sequent) -> Sequent {
        Sequent(self.0.difference(&other.0).cloned().collect())
    }

    /// Constant names occurring anywhere in the sequent.
    pub fn constant_names(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for s in &self.0 {
            for c in s.sentence.constants() {
                out.insert(c.name.to_string());
            }
        }
        out
    }

    fn render(&self, f: impl Fn(&Term) -> String) -> String {
        let l: Vec<String> = self.left().map(&f).collect();
        let r: Vec<String> = self.right().map(&f).collect();
        match (l.is_empty(), r.is_empty()) {
            (true, true) => "=>".into(),
            (true, false) => format!("=> {}", r.join(", ")),
            (false, true) => format!("{} =>", l.join(", ")),
            (false, false) => format!("{} => {}", l.join(", "), r.join(", ")),
        }
    }

    /// Canonical text, parseable by `parse_sequent`.
    pub fn print(&self) -> String {
        self.render(print_term)
    }

    pub fn pretty(&self) -> String {
        self.render(pretty_term)
    }
}

impl FromIterator<SignedSentence> for Sequent {
    fn from_iter<I: IntoIterator<Item = SignedSentence>>(iter: I) -> Sequent {
        Sequent(iter.into_iter().collect())
    }
}

impl Extend<SignedSentence> for Sequent {
    fn extend<I: IntoIterator<Item = SignedSentence>>(&mut self, iter: I) {
        self.0.extend(iter)
    }
}

impl<'a> IntoIterator for &'a Sequent {
    type Item = &'a SignedSentence;
    type IntoIter = std::collections::btree_set::Iter<'a, SignedSentence>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.print())
    }
}

impl fmt::Debug for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pretty())
    }
}
