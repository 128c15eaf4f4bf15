//! Sorted types, signatures, hyperconfigurations and their textual syntax.

mod config;
mod parse;
mod signature;
mod types;

pub use config::{display_tokens, generalized_wrap_tokens, wrap_tokens, HyperConfig, Item, Token};
pub use parse::{parse_config, parse_hsequent, parse_msequent, parse_term, parse_type};
pub use signature::Signature;
pub use types::{Atom, Type, TypeKind};
