//! The hypersequent calculus: sequents over hyperconfigurations, a checker
//! that accepts Cut, and cut-free backward proof search.

use std::fmt;
use std::str::FromStr;

use crate::error::SortError;
use crate::syntax::{display_tokens, HyperConfig, Token, Type};

mod check;
pub(crate) mod flat;
mod rules;
mod search;

pub use check::check;
pub(crate) use rules::instances;
pub use rules::{enumerate_rule_instances, RuleInstance};
pub use search::{count_balanced, prove, prove_all, Prover};

/// The logical rules shared by both calculi, in the order of the rule figure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HRule {
    Id,
    Cut,
    UnderL,
    UnderR,
    OverL,
    OverR,
    ProdL,
    ProdR,
    IL,
    IR,
    DownL,
    DownR,
    UpL,
    UpR,
    DProdL,
    DProdR,
    JL,
    JR,
}

impl HRule {
    pub const ALL: [HRule; 18] = [
        HRule::Id,
        HRule::Cut,
        HRule::UnderL,
        HRule::UnderR,
        HRule::OverL,
        HRule::OverR,
        HRule::ProdL,
        HRule::ProdR,
        HRule::IL,
        HRule::IR,
        HRule::DownL,
        HRule::DownR,
        HRule::UpL,
        HRule::UpR,
        HRule::DProdL,
        HRule::DProdR,
        HRule::JL,
        HRule::JR,
    ];

    pub fn name(self) -> &'static str {
        match self {
            HRule::Id => "Id",
            HRule::Cut => "Cut",
            HRule::UnderL => "UnderL",
            HRule::UnderR => "UnderR",
            HRule::OverL => "OverL",
            HRule::OverR => "OverR",
            HRule::ProdL => "ProdL",
            HRule::ProdR => "ProdR",
            HRule::IL => "IL",
            HRule::IR => "IR",
            HRule::DownL => "DownL",
            HRule::DownR => "DownR",
            HRule::UpL => "UpL",
            HRule::UpR => "UpR",
            HRule::DProdL => "DProdL",
            HRule::DProdR => "DProdR",
            HRule::JL => "JL",
            HRule::JR => "JR",
        }
    }

    /// Number of premises.
    pub fn arity(self) -> usize {
        match self {
            HRule::Id | HRule::IR | HRule::JR => 0,
            HRule::Cut | HRule::UnderL | HRule::OverL | HRule::ProdR | HRule::DownL | HRule::UpL | HRule::DProdR => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for HRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for HRule {
    type Err = String;

    fn from_str(s: &str) -> Result<HRule, String> {
        HRule::ALL.into_iter().find(|r| r.name() == s).ok_or_else(|| format!("unknown rule `{s}`"))
    }
}

/// Filler chunks `[start, end)` of the conclusion's tokens that a left rule
/// (or Cut) abstracts into the separators of its minor premise's antecedent.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Abstraction {
    pub chunks: Vec<(usize, usize)>,
}

/// Locates a rule instance in the flattened antecedent of the conclusion.
///
/// For left rules `at..end` is the token range rewritten in the minor
/// premise; for `DProdR` it is the wrapped-in part and for `ProdR` `at` is the
/// split point. For Cut, `at` is the first token of the cut occurrence in the
/// second premise. `k` is the wrap index of discontinuous rules.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HParams {
    pub at: Option<usize>,
    pub end: Option<usize>,
    pub k: Option<usize>,
    pub abstraction: Option<Abstraction>,
}

impl HParams {
    pub fn is_empty(&self) -> bool {
        *self == HParams::default()
    }

    /// True when every field set in `self` agrees with `other`.
    pub fn matches(&self, other: &HParams) -> bool {
        (self.at.is_none() || self.at == other.at)
            && (self.end.is_none() || self.end == other.end)
            && (self.k.is_none() || self.k == other.k)
            && (self.abstraction.is_none() || self.abstraction == other.abstraction)
    }
}

/// A hypersequent `antecedent => succedent`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HSequent {
    pub antecedent: HyperConfig,
    pub succedent: Type,
}

impl HSequent {
    pub fn new(antecedent: HyperConfig, succedent: Type) -> Result<HSequent, SortError> {
        if antecedent.sort() != succedent.sort() {
            return Err(SortError::Sequent { antecedent: antecedent.sort(), succedent: succedent.sort() });
        }
        Ok(HSequent { antecedent, succedent })
    }

    pub(crate) fn from_tokens(toks: &[Token], succedent: Type) -> HSequent {
        let antecedent = HyperConfig::parse_flat(toks).expect("engine keeps tokens well-formed");
        HSequent { antecedent, succedent }
    }

    pub fn tokens(&self) -> Vec<Token> {
        self.antecedent.flatten()
    }

    /// Connective and unit occurrences over the whole sequent.
    pub fn measure(&self) -> usize {
        flat::measure(&self.tokens(), &self.succedent)
    }
}

/// Flat notation, e.g. `0:e, [], 1:e => e`.
impl fmt::Display for HSequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} => {}", display_tokens(&self.tokens()), self.succedent)
    }
}

/// A derivation tree in the hypersequent calculus.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HDerivation {
    pub rule: HRule,
    pub conclusion: HSequent,
    pub premises: Vec<HDerivation>,
    pub params: HParams,
}

impl HDerivation {
    /// Rule names in pre-order.
    pub fn rules(&self) -> Vec<HRule> {
        let mut out = vec![self.rule];
        for p in &self.premises {
            out.extend(p.rules());
        }
        out
    }

    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(HDerivation::size).sum::<usize>()
    }

    pub fn height(&self) -> usize {
        1 + self.premises.iter().map(HDerivation::height).max().unwrap_or(0)
    }
}
