use thiserror::Error;

use crate::term::Step;

/// Ill-sorted or malformed type construction.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SortError {
    #[error("invalid atom name `{0}`")]
    BadAtomName(String),
    #[error("type `{0}` would have negative sort")]
    Negative(String),
    #[error("index {k} out of range 1..={bound} in `{what}`")]
    WrapIndex { k: usize, bound: usize, what: String },
    #[error("sort mismatch: antecedent has sort {antecedent}, succedent has sort {succedent}")]
    Sequent { antecedent: usize, succedent: usize },
}

/// A syntax error in textual input, with a byte offset.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("at offset {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

impl ParseError {
    pub fn new(pos: usize, msg: impl Into<String>) -> ParseError {
        ParseError { pos, msg: msg.into() }
    }
}

/// Failures of configuration operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("separator index {k} out of range for configuration of sort {sort}")]
    SeparatorIndex { k: usize, sort: usize },
    #[error("expected {expected} fillers, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("malformed token sequence at token {at}: {msg}")]
    Tokens { at: usize, msg: String },
    #[error("occurrence of `{ty}` has {got} gaps, expected {expected}")]
    Gaps { ty: String, got: usize, expected: usize },
    #[error("type `{0}` of sort 0 cannot carry gaps")]
    LeafSort(String),
}

/// Failures of structural-term operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("wrap index {i} out of range for left operand of sort {sort}")]
    WrapIndex { i: usize, sort: usize },
    #[error("path {0:?} does not address a subterm")]
    BadPath(Vec<Step>),
    #[error("path {0:?} does not address a type leaf")]
    NotLeaf(Vec<Step>),
    #[error("rule {rule} does not apply at {path:?}: {msg}")]
    NotApplicable { rule: String, path: Vec<Step>, msg: String },
    #[error("unknown structural rule `{0}`")]
    UnknownRule(String),
    #[error("missing parameter `{param}` for rule {rule}")]
    MissingParam { rule: String, param: String },
    #[error("occurrence at {0:?} is not extractable")]
    NotExtractable(Vec<Step>),
    #[error("rewrite budget of {0} steps exhausted")]
    Budget(usize),
}

/// A rule-instance violation found while checking a derivation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{rule} at node {node:?}: {msg}")]
pub struct CheckError {
    /// Premise indices leading from the root to the failing node.
    pub node: Vec<usize>,
    pub rule: String,
    pub msg: String,
}

impl CheckError {
    pub fn new(rule: impl Into<String>, msg: impl Into<String>) -> CheckError {
        CheckError { node: Vec::new(), rule: rule.into(), msg: msg.into() }
    }

    pub(crate) fn under(mut self, premise: usize) -> CheckError {
        self.node.insert(0, premise);
        self
    }
}

/// Failures translating derivations between the two calculi.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BridgeError {
    #[error("input derivation is invalid: {0}")]
    Invalid(#[from] CheckError),
    #[error("target term does not match the end-sequent antecedent")]
    Target,
    #[error(transparent)]
    Term(#[from] TermError),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

/// Failures reading serialized derivations and traces.
#[derive(Debug, Error)]
pub enum SerialError {
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("field `{0}` missing or of the wrong kind")]
    Field(String),
    #[error("unknown rule `{0}`")]
    Rule(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// Failures reading a lexicon or looking words up in it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LexiconError {
    #[error("line {line}: {msg}")]
    Line { line: usize, msg: String },
    #[error("word `{0}` is not in the lexicon")]
    UnknownWord(String),
}
