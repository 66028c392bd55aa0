use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use super::error::{ParseError, SyntaxError, TypeError};
use super::parse::parse_type;
use super::term::Const;
use super::types::{Name, Type};

/// Declared basic types and uniquely typed constants.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct Signature {
    basic_types: BTreeSet<Name>,
    constants: BTreeMap<Name, Type>,
}

impl Signature {
    pub fn new() -> Signature {
        Signature::default()
    }

    pub fn add_basic_type(&mut self, name: &str) {
        self.basic_types.insert(Arc::from(name));
    }

    /// Declares `name : ty`, registering any basic types it mentions.
    /// Redeclaring at the same type is a no-op; at another type it fails.
    pub fn declare(&mut self, name: &str, ty: Type) -> Result<(), TypeError> {
        if let Some(old) = self.constants.get(name) {
            if *old != ty {
                return Err(TypeError::Mismatch(format!(
                    "constant {name} already declared at {old}, redeclared at {ty}"
                )));
            }
            return Ok(());
        }
        let mut comps = Vec::new();
        ty.components(&mut comps);
        for c in comps {
            if let Type::Basic(b) = c {
                self.basic_types.insert(b);
            }
        }
        self.constants.insert(Arc::from(name), ty);
        Ok(())
    }

    /// Builder form of [`Signature::declare`]; panics on a conflicting redeclaration.
    pub fn with(mut self, name: &str, ty: Type) -> Signature {
        self.declare(name, ty).expect("conflicting declaration");
        self
    }

    pub fn constant(&self, name: &str) -> Option<&Type> {
        self.constants.get(name)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.constants.contains_key(name)
    }

    pub fn constants(&self) -> impl Iterator<Item = Const> + '_ {
        self.constants.iter().map(|(n, t)| Const { name: n.clone(), ty: t.clone() })
    }

    pub fn constants_of_type<'a>(&'a self, ty: &'a Type) -> impl Iterator<Item = Const> + 'a {
        self.constants().filter(move |c| c.ty == *ty)
    }

    pub fn basic_types(&self) -> impl Iterator<Item = &Name> {
        self.basic_types.iter()
    }

    /// Union; fails if the two signatures type a constant differently.
    pub fn merge(&mut self, other: &Signature) -> Result<(), TypeError> {
        for b in &other.basic_types {
            self.basic_types.insert(b.clone());
        }
        for (n, t) in &other.constants {
            self.declare(n, t.clone())?;
        }
        Ok(())
    }

    /// Parses lines of the form `type e` and `const name : T`.
    /// Blank lines and lines starting with `#` are ignored.
    pub fn parse(text: &str) -> Result<Signature, ParseError> {
        let mut sig = Signature::new();
        let mut offset = 0;
        for line in text.lines() {
            let trimmed = line.trim();
            let start = offset + (line.len() - line.trim_start().len());
            offset += line.len() + 1;
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            if let Some(rest) = trimmed.strip_prefix("type ") {
                let name = rest.trim();
                if !is_identifier(name) {
                    return Err(SyntaxError { pos: start, msg: format!("bad type name `{name}`") }.into());
                }
                sig.add_basic_type(name);
            } else if let Some(rest) = trimmed.strip_prefix("const ") {
                let (name, ty) = rest
                    .split_once(':')
                    .ok_or_else(|| SyntaxError { pos: start, msg: "expected `const name : T`".into() })?;
                let name = name.trim();
                if !is_identifier(name) {
                    return Err(SyntaxError { pos: start, msg: format!("bad constant name `{name}`") }.into());
                }
                let ty = parse_type(ty.trim()).map_err(|e| SyntaxError { pos: start + e.pos, msg: e.msg })?;
                sig.declare(name, ty)?;
            } else {
                return Err(SyntaxError { pos: start, msg: format!("unrecognised line `{trimmed}`") }.into());
            }
        }
        Ok(sig)
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.basic_types {
            writeln!(f, "type {b}")?;
        }
        for (n, t) in &self.constants {
            writeln!(f, "const {n} : {t}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
