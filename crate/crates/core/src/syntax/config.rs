//! Hyperconfigurations in tree form, their flattened token form, and wrapping.

use std::fmt;

use crate::error::ConfigError;
use crate::syntax::Type;

/// One token of the string-based presentation of a configuration.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Token {
    /// A type of sort 0.
    Leaf(Type),
    /// The `k`-th segment of a type of positive sort.
    Seg(Type, usize),
    /// The separator `[]`.
    Sep,
}

impl Token {
    pub fn is_sep(&self) -> bool {
        matches!(self, Token::Sep)
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Leaf(t) => write!(f, "{t}"),
            Token::Seg(t, k) => write!(f, "{k}:{}", t.display_atomic()),
            Token::Sep => f.write_str("[]"),
        }
    }
}

/// An item of a tree-form configuration.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Item {
    Leaf(Type),
    Sep,
    /// An occurrence of a type of positive sort with one configuration per gap.
    Occ { ty: Type, gaps: Vec<HyperConfig> },
}

/// A hyperconfiguration, stored as a tree.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HyperConfig {
    items: Vec<Item>,
}

impl HyperConfig {
    /// The empty configuration `Lambda`.
    pub fn empty() -> HyperConfig {
        HyperConfig { items: Vec::new() }
    }

    /// The configuration consisting of one separator.
    pub fn sep() -> HyperConfig {
        HyperConfig { items: vec![Item::Sep] }
    }

    /// Builds a configuration, checking sorts and gap counts of every item.
    pub fn from_items(items: Vec<Item>) -> Result<HyperConfig, ConfigError> {
        for item in &items {
            match item {
                Item::Leaf(t) if t.sort() != 0 => {
                    return Err(ConfigError::Gaps { ty: t.to_string(), got: 0, expected: t.sort() })
                }
                Item::Occ { ty, .. } if ty.sort() == 0 => {
                    return Err(ConfigError::LeafSort(ty.to_string()))
                }
                Item::Occ { ty, gaps } if gaps.len() != ty.sort() => {
                    return Err(ConfigError::Gaps {
                        ty: ty.to_string(),
                        got: gaps.len(),
                        expected: ty.sort(),
                    })
                }
                _ => {}
            }
        }
        Ok(HyperConfig { items })
    }

    /// The figure of a type: the type itself at sort 0, otherwise its
    /// segments interleaved with separators.
    pub fn figure(t: &Type) -> HyperConfig {
        let item = if t.sort() == 0 {
            Item::Leaf(t.clone())
        } else {
            Item::Occ { ty: t.clone(), gaps: vec![HyperConfig::sep(); t.sort()] }
        };
        HyperConfig { items: vec![item] }
    }

    pub fn items(&self) -> &[Item] {
        &self.items
    }

    pub fn into_items(self) -> Vec<Item> {
        self.items
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// The number of separators, counted at every depth.
    pub fn sort(&self) -> usize {
        self.items
            .iter()
            .map(|item| match item {
                Item::Leaf(_) => 0,
                Item::Sep => 1,
                Item::Occ { gaps, .. } => gaps.iter().map(HyperConfig::sort).sum(),
            })
            .sum()
    }

    /// Concatenation `self, other`.
    pub fn concat(&self, other: &HyperConfig) -> HyperConfig {
        let mut items = self.items.clone();
        items.extend(other.items.iter().cloned());
        HyperConfig { items }
    }

    /// The string-based presentation, in left-to-right order.
    pub fn flatten(&self) -> Vec<Token> {
        let mut out = Vec::new();
        self.flatten_into(&mut out);
        out
    }

    fn flatten_into(&self, out: &mut Vec<Token>) {
        for item in &self.items {
            match item {
                Item::Leaf(t) => out.push(Token::Leaf(t.clone())),
                Item::Sep => out.push(Token::Sep),
                Item::Occ { ty, gaps } => {
                    out.push(Token::Seg(ty.clone(), 0));
                    for (n, gap) in gaps.iter().enumerate() {
                        gap.flatten_into(out);
                        out.push(Token::Seg(ty.clone(), n + 1));
                    }
                }
            }
        }
    }

    /// Reads back a token sequence; segments of each occurrence must appear
    /// in order and be properly nested.
    pub fn parse_flat(tokens: &[Token]) -> Result<HyperConfig, ConfigError> {
        struct Frame {
            ty: Type,
            next: usize,
            gaps: Vec<HyperConfig>,
            outer: Vec<Item>,
        }
        let mut stack: Vec<Frame> = Vec::new();
        let mut current: Vec<Item> = Vec::new();
        for (at, token) in tokens.iter().enumerate() {
            match token {
                Token::Leaf(t) => {
                    if t.sort() != 0 {
                        return Err(ConfigError::Tokens {
                            at,
                            msg: format!("`{t}` has positive sort and must be segmented"),
                        });
                    }
                    current.push(Item::Leaf(t.clone()));
                }
                Token::Sep => current.push(Item::Sep),
                Token::Seg(t, 0) => {
                    if t.sort() == 0 {
                        return Err(ConfigError::Tokens {
                            at,
                            msg: format!("`{t}` has sort 0 and has no segments"),
                        });
                    }
                    let outer = std::mem::take(&mut current);
                    stack.push(Frame { ty: t.clone(), next: 1, gaps: Vec::new(), outer });
                }
                Token::Seg(t, k) => {
                    let fits = matches!(stack.last(), Some(f) if f.ty == *t && f.next == *k);
                    if !fits {
                        return Err(ConfigError::Tokens {
                            at,
                            msg: format!("unexpected segment {k} of `{t}`"),
                        });
                    }
                    let frame = stack.last_mut().expect("checked above");
                    frame.gaps.push(HyperConfig { items: std::mem::take(&mut current) });
                    frame.next += 1;
                    if *k == t.sort() {
                        let frame = stack.pop().expect("checked above");
                        current = frame.outer;
                        current.push(Item::Occ { ty: frame.ty, gaps: frame.gaps });
                    }
                }
            }
        }
        if let Some(frame) = stack.last() {
            return Err(ConfigError::Tokens {
                at: tokens.len(),
                msg: format!("missing segment {} of `{}`", frame.next, frame.ty),
            });
        }
        Ok(HyperConfig { items: current })
    }

    /// `self |_k f`: replaces the `k`-th separator (1-based, flattened order) by `f`.
    pub fn wrap_at(&self, k: usize, f: &HyperConfig) -> Result<HyperConfig, ConfigError> {
        let tokens = wrap_tokens(&self.flatten(), k, &f.flatten())?;
        Ok(HyperConfig::parse_flat(&tokens).expect("wrapping preserves well-formedness"))
    }

    /// Replaces the successive separators simultaneously by `fills`.
    pub fn generalized_wrap(&self, fills: &[HyperConfig]) -> Result<HyperConfig, ConfigError> {
        let fills: Vec<Vec<Token>> = fills.iter().map(HyperConfig::flatten).collect();
        let tokens = generalized_wrap_tokens(&self.flatten(), &fills)?;
        Ok(HyperConfig::parse_flat(&tokens).expect("wrapping preserves well-formedness"))
    }
}

/// Token-level `|_k`.
pub fn wrap_tokens(g: &[Token], k: usize, f: &[Token]) -> Result<Vec<Token>, ConfigError> {
    let sort = g.iter().filter(|t| t.is_sep()).count();
    if k == 0 || k > sort {
        return Err(ConfigError::SeparatorIndex { k, sort });
    }
    let pos = g
        .iter()
        .enumerate()
        .filter(|(_, t)| t.is_sep())
        .nth(k - 1)
        .map(|(n, _)| n)
        .expect("index checked");
    let mut out = Vec::with_capacity(g.len() + f.len());
    out.extend_from_slice(&g[..pos]);
    out.extend_from_slice(f);
    out.extend_from_slice(&g[pos + 1..]);
    Ok(out)
}

/// Token-level generalized wrap.
pub fn generalized_wrap_tokens(g: &[Token], fills: &[Vec<Token>]) -> Result<Vec<Token>, ConfigError> {
    let sort = g.iter().filter(|t| t.is_sep()).count();
    if fills.len() != sort {
        return Err(ConfigError::Arity { expected: sort, got: fills.len() });
    }
    let mut out = Vec::new();
    let mut next = fills.iter();
    for token in g {
        if token.is_sep() {
            out.extend_from_slice(next.next().expect("arity checked"));
        } else {
            out.push(token.clone());
        }
    }
    Ok(out)
}

/// Prints a token sequence in flat notation, `Lambda` when empty.
pub fn display_tokens(tokens: &[Token]) -> String {
    if tokens.is_empty() {
        return "Lambda".to_string();
    }
    tokens.iter().map(Token::to_string).collect::<Vec<_>>().join(", ")
}

impl fmt::Display for Item {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Item::Leaf(t) => write!(f, "{t}"),
            Item::Sep => f.write_str("[]"),
            Item::Occ { ty, gaps } => {
                write!(f, "{{ {ty} : ")?;
                for (n, gap) in gaps.iter().enumerate() {
                    if n > 0 {
                        f.write_str(" ; ")?;
                    }
                    write!(f, "{gap}")?;
                }
                f.write_str(" }")
            }
        }
    }
}

/// Tree notation; `{ A : g1 ; ... }` for occurrences.
impl fmt::Display for HyperConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.items.is_empty() {
            return f.write_str("Lambda");
        }
        for (n, item) in self.items.iter().enumerate() {
            if n > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{item}")?;
        }
        Ok(())
    }
}
