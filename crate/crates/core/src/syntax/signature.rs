use std::collections::BTreeMap;

use crate::error::ParseError;
use crate::syntax::types::is_atom_name;
use crate::syntax::{Atom, Type};

/// Declared atoms and their sorts.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Signature {
    sorts: BTreeMap<String, usize>,
}

impl Signature {
    pub fn new() -> Signature {
        Signature::default()
    }

    /// Builds a signature from `(name, sort)` pairs.
    pub fn from_pairs<'a>(pairs: impl IntoIterator<Item = (&'a str, usize)>) -> Result<Signature, ParseError> {
        let mut sig = Signature::new();
        for (name, sort) in pairs {
            sig.declare(name, sort)?;
        }
        Ok(sig)
    }

    /// Declares an atom; redeclaring with the same sort is allowed.
    pub fn declare(&mut self, name: &str, sort: usize) -> Result<(), ParseError> {
        if !is_atom_name(name) {
            return Err(ParseError::new(0, format!("invalid atom name `{name}`")));
        }
        match self.sorts.get(name) {
            Some(&s) if s != sort => {
                Err(ParseError::new(0, format!("atom `{name}` declared with sorts {s} and {sort}")))
            }
            _ => {
                self.sorts.insert(name.to_string(), sort);
                Ok(())
            }
        }
    }

    pub fn sort_of(&self, name: &str) -> Option<usize> {
        self.sorts.get(name).copied()
    }

    pub fn atom(&self, name: &str) -> Option<Type> {
        let sort = self.sort_of(name)?;
        Some(Type::atom(Atom::new(name, sort).expect("declared names are valid")))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, usize)> {
        self.sorts.iter().map(|(n, s)| (n.as_str(), *s))
    }

    pub fn len(&self) -> usize {
        self.sorts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sorts.is_empty()
    }

    /// Parses `name<TAB>sort` lines. Blank lines and `#` comments are skipped;
    /// any run of whitespace separates the two fields.
    pub fn parse(text: &str) -> Result<Signature, ParseError> {
        let mut sig = Signature::new();
        let mut offset = 0;
        for line in text.split_inclusive('\n') {
            let start = offset;
            offset += line.len();
            let body = line.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let mut fields = body.split_whitespace();
            let (name, sort) = match (fields.next(), fields.next(), fields.next()) {
                (Some(n), Some(s), None) => (n, s),
                _ => return Err(ParseError::new(start, "expected `name<TAB>sort`")),
            };
            let sort: usize = sort
                .parse()
                .map_err(|_| ParseError::new(start, format!("invalid sort `{sort}`")))?;
            sig.declare(name, sort).map_err(|e| ParseError::new(start, e.msg))?;
        }
        Ok(sig)
    }
}

impl std::fmt::Display for Signature {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (name, sort) in &self.sorts {
            writeln!(f, "{name}\t{sort}")?;
        }
        Ok(())
    }
}
