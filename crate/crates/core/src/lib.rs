//! The discontinuous Lambek calculus in two presentations: a hypersequent
//! calculus without structural rules and a multimodal calculus over structural
//! terms, with translations between them.

pub mod error;
pub mod hd;
pub mod syntax;
pub mod term;
pub mod bridge;
pub mod md;
pub mod serial;
pub mod lexicon;
