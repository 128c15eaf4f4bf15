//! Sorted types and the syntactical sort map.

use std::fmt;
use std::sync::Arc;

use crate::error::SortError;

/// An atomic type together with its declared sort.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom {
    name: Arc<str>,
    sort: usize,
}

impl Atom {
    /// Builds an atom. The name must be a lower-case identifier.
    pub fn new(name: &str, sort: usize) -> Result<Atom, SortError> {
        if !is_atom_name(name) {
            return Err(SortError::BadAtomName(name.to_string()));
        }
        Ok(Atom { name: name.into(), sort })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn sort(&self) -> usize {
        self.sort
    }
}

pub(crate) fn is_atom_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_lowercase() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// The connective structure of a type.
///
/// `Under(a, c)` is `a\c`, `Over(c, b)` is `c/b`, `DDown(k, a, c)` is `a↓k c`
/// and `DUp(k, c, b)` is `c↑k b`: operands are stored in the order they are written.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TypeKind {
    Atom(Atom),
    UnitI,
    UnitJ,
    Prod(Type, Type),
    Under(Type, Type),
    Over(Type, Type),
    DProd(usize, Type, Type),
    DDown(usize, Type, Type),
    DUp(usize, Type, Type),
}

#[derive(Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct TypeNode {
    kind: TypeKind,
    sort: usize,
    size: usize,
}

/// A well-sorted type. Cheap to clone; the sort is computed once at construction.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Type(Arc<TypeNode>);

impl Type {
    fn node(kind: TypeKind, sort: usize) -> Type {
        let size = match &kind {
            TypeKind::Atom(_) => 0,
            TypeKind::UnitI | TypeKind::UnitJ => 1,
            TypeKind::Prod(l, r)
            | TypeKind::Under(l, r)
            | TypeKind::Over(l, r)
            | TypeKind::DProd(_, l, r)
            | TypeKind::DDown(_, l, r)
            | TypeKind::DUp(_, l, r) => 1 + l.size() + r.size(),
        };
        Type(Arc::new(TypeNode { kind, sort, size }))
    }

    pub fn atom(atom: Atom) -> Type {
        let sort = atom.sort;
        Type::node(TypeKind::Atom(atom), sort)
    }

    /// Shorthand for `Type::atom(Atom::new(name, sort)?)`.
    pub fn var(name: &str, sort: usize) -> Result<Type, SortError> {
        Ok(Type::atom(Atom::new(name, sort)?))
    }

    pub fn unit_i() -> Type {
        Type::node(TypeKind::UnitI, 0)
    }

    pub fn unit_j() -> Type {
        Type::node(TypeKind::UnitJ, 1)
    }

    /// `a . b`
    pub fn prod(a: Type, b: Type) -> Type {
        let sort = a.sort() + b.sort();
        Type::node(TypeKind::Prod(a, b), sort)
    }

    /// `a \ c`, of sort `S(c) - S(a)`.
    pub fn under(a: Type, c: Type) -> Result<Type, SortError> {
        let sort = c
            .sort()
            .checked_sub(a.sort())
            .ok_or_else(|| SortError::Negative(format!("{a}\\{c}")))?;
        Ok(Type::node(TypeKind::Under(a, c), sort))
    }

    /// `c / b`, of sort `S(c) - S(b)`.
    pub fn over(c: Type, b: Type) -> Result<Type, SortError> {
        let sort = c
            .sort()
            .checked_sub(b.sort())
            .ok_or_else(|| SortError::Negative(format!("{c}/{b}")))?;
        Ok(Type::node(TypeKind::Over(c, b), sort))
    }

    /// `a @k b`, of sort `S(a) + S(b) - 1`; needs `1 <= k <= S(a)`.
    pub fn dprod(k: usize, a: Type, b: Type) -> Result<Type, SortError> {
        check_index(k, a.sort(), || format!("{a}@{k}{b}"))?;
        let sort = a.sort() + b.sort() - 1;
        Ok(Type::node(TypeKind::DProd(k, a, b), sort))
    }

    /// `a !k c`, of sort `S(c) + 1 - S(a)`; needs `1 <= k <= S(a)`.
    pub fn ddown(k: usize, a: Type, c: Type) -> Result<Type, SortError> {
        check_index(k, a.sort(), || format!("{a}!{k}{c}"))?;
        let sort = (c.sort() + 1)
            .checked_sub(a.sort())
            .ok_or_else(|| SortError::Negative(format!("{a}!{k}{c}")))?;
        Ok(Type::node(TypeKind::DDown(k, a, c), sort))
    }

    /// `c ^k b`, of sort `S(c) + 1 - S(b)`; needs `1 <= k <= S(c) + 1 - S(b)`.
    pub fn dup(k: usize, c: Type, b: Type) -> Result<Type, SortError> {
        let sort = (c.sort() + 1)
            .checked_sub(b.sort())
            .ok_or_else(|| SortError::Negative(format!("{c}^{k}{b}")))?;
        check_index(k, sort, || format!("{c}^{k}{b}"))?;
        Ok(Type::node(TypeKind::DUp(k, c, b), sort))
    }

    /// A type that no parser can produce, used to tag a position while rewriting.
    pub(crate) fn marker(sort: usize) -> Type {
        Type::atom(Atom { name: "#marker".into(), sort })
    }

    pub fn kind(&self) -> &TypeKind {
        &self.0.kind
    }

    /// The sort `S(t)`.
    pub fn sort(&self) -> usize {
        self.0.sort
    }

    /// Number of connective and unit occurrences; atoms count zero.
    pub fn size(&self) -> usize {
        self.0.size
    }

    pub fn is_atom(&self) -> bool {
        matches!(self.kind(), TypeKind::Atom(_))
    }

    /// Visits every atom occurring in the type.
    pub fn atoms(&self, out: &mut Vec<Atom>) {
        match self.kind() {
            TypeKind::Atom(a) => out.push(a.clone()),
            TypeKind::UnitI | TypeKind::UnitJ => {}
            TypeKind::Prod(l, r)
            | TypeKind::Under(l, r)
            | TypeKind::Over(l, r)
            | TypeKind::DProd(_, l, r)
            | TypeKind::DDown(_, l, r)
            | TypeKind::DUp(_, l, r) => {
                l.atoms(out);
                r.atoms(out);
            }
        }
    }

    fn is_compound(&self) -> bool {
        !matches!(self.kind(), TypeKind::Atom(_) | TypeKind::UnitI | TypeKind::UnitJ)
    }

    /// Prints the type, parenthesized when it is not atomic.
    pub fn display_atomic(&self) -> impl fmt::Display + '_ {
        Operand(self)
    }
}

fn check_index(k: usize, bound: usize, what: impl FnOnce() -> String) -> Result<(), SortError> {
    if k == 0 || k > bound {
        Err(SortError::WrapIndex { k, bound, what: what() })
    } else {
        Ok(())
    }
}

struct Operand<'a>(&'a Type);

impl fmt::Display for Operand<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_compound() {
            write!(f, "({})", self.0)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl fmt::Display for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind() {
            TypeKind::Atom(a) => f.write_str(a.name()),
            TypeKind::UnitI => f.write_str("I"),
            TypeKind::UnitJ => f.write_str("J"),
            TypeKind::Prod(a, b) => write!(f, "{}.{}", Operand(a), Operand(b)),
            TypeKind::Under(a, c) => write!(f, "{}\\{}", Operand(a), Operand(c)),
            TypeKind::Over(c, b) => write!(f, "{}/{}", Operand(c), Operand(b)),
            TypeKind::DProd(k, a, b) => write!(f, "{}@{k}{}", Operand(a), Operand(b)),
            TypeKind::DDown(k, a, c) => write!(f, "{}!{k}{}", Operand(a), Operand(c)),
            TypeKind::DUp(k, c, b) => write!(f, "{}^{k}{}", Operand(c), Operand(b)),
        }
    }
}
