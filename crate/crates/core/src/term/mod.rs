//! Structural terms over concatenation and wrapping, the translation into
//! hyperconfigurations, and canonical terms for configurations.

use std::fmt;

use crate::error::TermError;
use crate::syntax::{HyperConfig, Item, Token, Type};

mod extract;
mod normalize;
mod oracle;
mod rules;

pub use extract::{extract, extractable, uniqueness_check, uniqueness_check_seeded, Extraction};
pub use normalize::{normalize, normalize_with_budget, rewrite_between, DEFAULT_BUDGET};
pub use oracle::{bounded_equiv_oracle, bounded_equiv_oracle_with, reachable, ORACLE_SLACK};
pub use rules::{applicable_rules, apply_rule, complete_params, successors, Rule, RuleApp, RewriteTrace, TraceStep};

/// One step of a path from the root of a term.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    Left,
    Right,
}

/// Addresses a subterm by the steps taken from the root.
pub type Path = Vec<Step>;

/// Formats a path as comma-separated `0`/`1` digits.
pub fn path_to_string(path: &[Step]) -> String {
    path.iter()
        .map(|s| if *s == Step::Left { "0" } else { "1" })
        .collect::<Vec<_>>()
        .join(",")
}

/// Reads a path written as `0`/`1` digits, optionally comma separated.
pub fn parse_path(src: &str) -> Option<Path> {
    src.chars()
        .filter(|c| !c.is_whitespace() && *c != ',')
        .map(|c| match c {
            '0' => Some(Step::Left),
            '1' => Some(Step::Right),
            _ => None,
        })
        .collect()
}

/// A structural term. Build `Wrap` nodes with [`StructTerm::wrap`] so that the
/// index bound is checked.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StructTerm {
    /// The continuous unit.
    I,
    /// The discontinuous unit, of sort 1.
    J,
    Leaf(Type),
    Cat(Box<StructTerm>, Box<StructTerm>),
    /// `Wrap(i, l, r)` puts `r` into the `i`-th gap of `l`.
    Wrap(usize, Box<StructTerm>, Box<StructTerm>),
}

/// The three relative positions of `T2` and `T3` in `(T1 +i T2) +j T3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Placement {
    /// `T2` precedes `T3`.
    P1,
    /// `T3` precedes `T2`.
    P2,
    /// `T3` lands inside `T2`.
    O,
}

/// Classifies `(T1 +i T2) +j T3` from `i`, the sort of `T2`, and `j`.
pub fn classify_indices(i: usize, t2: usize, j: usize) -> Placement {
    if j < i {
        Placement::P2
    } else if i + t2 < j + 1 {
        Placement::P1
    } else {
        Placement::O
    }
}

impl StructTerm {
    pub fn leaf(t: Type) -> StructTerm {
        StructTerm::Leaf(t)
    }

    pub fn cat(l: StructTerm, r: StructTerm) -> StructTerm {
        StructTerm::Cat(Box::new(l), Box::new(r))
    }

    /// `l +i r`, checking `1 <= i <= sort(l)`.
    pub fn wrap(i: usize, l: StructTerm, r: StructTerm) -> Result<StructTerm, TermError> {
        let sort = l.sort();
        if i == 0 || i > sort {
            return Err(TermError::WrapIndex { i, sort });
        }
        Ok(StructTerm::Wrap(i, Box::new(l), Box::new(r)))
    }

    pub fn sort(&self) -> usize {
        match self {
            StructTerm::I => 0,
            StructTerm::J => 1,
            StructTerm::Leaf(t) => t.sort(),
            StructTerm::Cat(l, r) => l.sort() + r.sort(),
            StructTerm::Wrap(_, l, r) => l.sort() + r.sort() - 1,
        }
    }

    /// True when every wrap index is within range.
    pub fn is_well_formed(&self) -> bool {
        match self {
            StructTerm::I | StructTerm::J | StructTerm::Leaf(_) => true,
            StructTerm::Cat(l, r) => l.is_well_formed() && r.is_well_formed(),
            StructTerm::Wrap(i, l, r) => {
                *i >= 1 && *i <= l.sort() && l.is_well_formed() && r.is_well_formed()
            }
        }
    }

    /// Number of `I`, `J` and type leaves.
    pub fn size(&self) -> usize {
        match self {
            StructTerm::I | StructTerm::J | StructTerm::Leaf(_) => 1,
            StructTerm::Cat(l, r) | StructTerm::Wrap(_, l, r) => l.size() + r.size(),
        }
    }

    pub fn get(&self, path: &[Step]) -> Option<&StructTerm> {
        let mut t = self;
        for step in path {
            t = match (t, step) {
                (StructTerm::Cat(l, _) | StructTerm::Wrap(_, l, _), Step::Left) => l,
                (StructTerm::Cat(_, r) | StructTerm::Wrap(_, _, r), Step::Right) => r,
                _ => return None,
            };
        }
        Some(t)
    }

    pub fn get_mut(&mut self, path: &[Step]) -> Option<&mut StructTerm> {
        let mut t = self;
        for step in path {
            t = match (t, step) {
                (StructTerm::Cat(l, _) | StructTerm::Wrap(_, l, _), Step::Left) => l,
                (StructTerm::Cat(_, r) | StructTerm::Wrap(_, _, r), Step::Right) => r,
                _ => return None,
            };
        }
        Some(t)
    }

    /// Replaces the subterm at `path`; the replacement must have the same sort.
    pub fn replace(&self, path: &[Step], new: StructTerm) -> Result<StructTerm, TermError> {
        let mut out = self.clone();
        let slot = out.get_mut(path).ok_or_else(|| TermError::BadPath(path.to_vec()))?;
        if slot.sort() != new.sort() {
            return Err(TermError::NotApplicable {
                rule: "replace".into(),
                path: path.to_vec(),
                msg: format!("sort {} replaced by sort {}", slot.sort(), new.sort()),
            });
        }
        *slot = new;
        Ok(out)
    }

    /// Paths of the type leaves, left to right.
    pub fn leaf_paths(&self) -> Vec<Path> {
        fn go(t: &StructTerm, here: &mut Path, out: &mut Vec<Path>) {
            match t {
                StructTerm::Leaf(_) => out.push(here.clone()),
                StructTerm::Cat(l, r) | StructTerm::Wrap(_, l, r) => {
                    here.push(Step::Left);
                    go(l, here, out);
                    here.pop();
                    here.push(Step::Right);
                    go(r, here, out);
                    here.pop();
                }
                _ => {}
            }
        }
        let mut out = Vec::new();
        go(self, &mut Vec::new(), &mut out);
        out
    }

    /// Classifies a subterm of shape `(T1 +i T2) +j T3`.
    pub fn classify(&self) -> Option<Placement> {
        match self {
            StructTerm::Wrap(j, inner, _) => match &**inner {
                StructTerm::Wrap(i, _, t2) => Some(classify_indices(*i, t2.sort(), *j)),
                _ => None,
            },
            _ => None,
        }
    }
}

/// A flattened token tagged with the ordinal of the type leaf it came from.
pub(crate) type Tagged = (Token, Option<usize>);

/// The translation into flat tokens, with each token tagged by its leaf ordinal.
pub(crate) fn sharp_tagged(t: &StructTerm) -> Vec<Tagged> {
    fn go(t: &StructTerm, next: &mut usize) -> Vec<Tagged> {
        match t {
            StructTerm::I => Vec::new(),
            StructTerm::J => vec![(Token::Sep, None)],
            StructTerm::Leaf(ty) => {
                let n = *next;
                *next += 1;
                HyperConfig::figure(ty).flatten().into_iter().map(|tok| (tok, Some(n))).collect()
            }
            StructTerm::Cat(l, r) => {
                let mut out = go(l, next);
                out.extend(go(r, next));
                out
            }
            StructTerm::Wrap(i, l, r) => {
                let left = go(l, next);
                let right = go(r, next);
                let pos = left
                    .iter()
                    .enumerate()
                    .filter(|(_, (tok, _))| tok.is_sep())
                    .nth(i - 1)
                    .map(|(n, _)| n)
                    .expect("wrap index within sort");
                let mut out = Vec::with_capacity(left.len() + right.len());
                out.extend_from_slice(&left[..pos]);
                out.extend(right);
                out.extend_from_slice(&left[pos + 1..]);
                out
            }
        }
    }
    go(t, &mut 0)
}

/// Path of the type leaf contributing the token at `pos` of the translation.
pub fn occurrence_path(t: &StructTerm, pos: usize) -> Option<Path> {
    let (_, tag) = sharp_tagged(t).into_iter().nth(pos)?;
    Some(t.leaf_paths().swap_remove(tag?))
}

/// Position of the first token contributed by the type leaf at `path`.
pub fn occurrence_pos(t: &StructTerm, path: &[Step]) -> Option<usize> {
    let ordinal = t.leaf_paths().iter().position(|p| p == path)?;
    sharp_tagged(t).iter().position(|(_, tag)| *tag == Some(ordinal))
}

/// The translation into flat tokens.
pub fn sharp_tokens(t: &StructTerm) -> Vec<Token> {
    sharp_tagged(t).into_iter().map(|(tok, _)| tok).collect()
}

/// The translation of a term into a hyperconfiguration.
pub fn sharp(t: &StructTerm) -> HyperConfig {
    HyperConfig::parse_flat(&sharp_tokens(t)).expect("translation yields well-formed tokens")
}

/// Decides equivalence under the structural rules by comparing translations.
pub fn equiv(t: &StructTerm, s: &StructTerm) -> bool {
    sharp_tokens(t) == sharp_tokens(s)
}

/// The canonical term whose translation is `d`.
pub fn term_of_config(d: &HyperConfig) -> StructTerm {
    term_of_items(d.items())
}

fn term_of_items(items: &[Item]) -> StructTerm {
    let Some((head, rest)) = items.split_first() else {
        return StructTerm::I;
    };
    let head = match head {
        Item::Leaf(t) => StructTerm::Leaf(t.clone()),
        Item::Sep => StructTerm::J,
        Item::Occ { ty, gaps } => {
            let mut w = StructTerm::Leaf(ty.clone());
            let mut offset = 0;
            for gap in gaps {
                w = StructTerm::wrap(1 + offset, w, term_of_config(gap))
                    .expect("gap index within sort");
                offset += gap.sort();
            }
            w
        }
    };
    StructTerm::cat(head, term_of_items(rest))
}

impl fmt::Display for StructTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StructTerm::I => f.write_str("II"),
            StructTerm::J => f.write_str("JJ"),
            StructTerm::Leaf(t) => write!(f, "{t}"),
            StructTerm::Cat(l, r) => write!(f, "({l} + {r})"),
            StructTerm::Wrap(i, l, r) => write!(f, "({l} +{i} {r})"),
        }
    }
}
