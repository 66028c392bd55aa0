use std::fmt;
use std::sync::Arc;

/// Shared identifier.
pub type Name = Arc<str>;

/// A type of the relational type theory.
///
/// Basic types are named; a complex type `<a1 ... an>` is the type of
/// n-ary relations over the argument types. `<>` is the type of
/// propositions and is distinct from every basic type.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Type {
    Basic(Name),
    Complex(Arc<[Type]>),
}

impl Type {
    pub fn basic(name: &str) -> Type {
        Type::Basic(Arc::from(name))
    }

    pub fn complex(args: Vec<Type>) -> Type {
        Type::Complex(Arc::from(args))
    }

    /// The proposition type `<>`.
    pub fn prop() -> Type {
        Type::complex(Vec::new())
    }

    pub fn is_complex(&self) -> bool {
        matches!(self, Type::Complex(_))
    }

    pub fn is_basic(&self) -> bool {
        matches!(self, Type::Basic(_))
    }

    pub fn is_prop(&self) -> bool {
        matches!(self, Type::Complex(args) if args.is_empty())
    }

    /// Argument types of a complex type; empty for basic types.
    pub fn args(&self) -> &[Type] {
        match self {
            Type::Basic(_) => &[],
            Type::Complex(args) => args,
        }
    }

    /// Number of argument places, `None` for a basic type.
    pub fn arity(&self) -> Option<usize> {
        match self {
            Type::Basic(_) => None,
            Type::Complex(args) => Some(args.len()),
        }
    }

    /// The type left after supplying the first argument.
    pub fn applied(&self) -> Option<Type> {
        match self {
            Type::Complex(args) if !args.is_empty() => Some(Type::complex(args[1..].to_vec())),
            _ => None,
        }
    }

    /// `<arg self...>`: the type of an abstraction over `arg` with body of type `self`.
    pub fn abstracted(&self, arg: &Type) -> Option<Type> {
        match self {
            Type::Complex(args) => {
                let mut v = Vec::with_capacity(args.len() + 1);
                v.push(arg.clone());
                v.extend(args.iter().cloned());
                Some(Type::complex(v))
            }
            Type::Basic(_) => None,
        }
    }

    /// `<self>`: the type of properties of objects of this type.
    pub fn property(&self) -> Type {
        Type::complex(vec![self.clone()])
    }

    /// Nesting depth; basic types and `<>` have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Type::Basic(_) => 0,
            Type::Complex(args) => args.iter().map(|a| a.depth() + 1).max().unwrap_or(0),
        }
    }

    /// This type together with every type occurring inside it.
    pub fn components(&self, out: &mut Vec<Type>) {
        if !out.contains(self) {
            out.push(self.clone());
        }
        for a in self.args() {
            a.components(out);
        }
    }
}

impl fmt::Display for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Type::Basic(name) => f.write_str(name),
            Type::Complex(args) => {
                f.write_str("<")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(">")
            }
        }
    }
}

impl fmt::Debug for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prop_is_not_basic() {
        assert_ne!(Type::prop(), Type::basic("t"));
        assert!(Type::prop().is_complex());
        assert!(Type::prop().is_prop());
    }

    #[test]
    fn display_nested() {
        let e = Type::basic("e");
        let t = Type::complex(vec![e.clone(), Type::prop()]);
        assert_eq!(t.to_string(), "<e <>>");
        assert_eq!(t.applied().unwrap(), Type::complex(vec![Type::prop()]));
        assert_eq!(Type::prop().abstracted(&e).unwrap(), e.property());
    }
}
