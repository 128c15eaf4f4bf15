//! Word-to-type lexicons and sentence parsing by proof search.
//!
//! File format: a `[signature]` section of `name<TAB>sort` lines followed by a
//! `[lexicon]` section of `word<TAB>type` lines. A word may have several lines.

use std::collections::BTreeMap;

use crate::error::LexiconError;
use crate::hd::{HDerivation, HSequent, Prover};
use crate::syntax::{parse_type, HyperConfig, Signature, Type};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Lexicon {
    pub signature: Signature,
    pub entries: BTreeMap<String, Vec<Type>>,
}

/// One type assignment to the words of a sentence, with its proofs.
#[derive(Clone, Debug)]
pub struct Reading {
    pub types: Vec<Type>,
    pub proofs: Vec<HDerivation>,
}

impl Lexicon {
    pub fn parse(text: &str) -> Result<Lexicon, LexiconError> {
        let mut lex = Lexicon::default();
        let mut in_lexicon = false;
        for (n, raw) in text.lines().enumerate() {
            let line = n + 1;
            let err = |msg: String| LexiconError::Line { line, msg };
            let body = raw.trim();
            if body.is_empty() || body.starts_with('#') {
                continue;
            }
            match body {
                "[signature]" => {
                    in_lexicon = false;
                    continue;
                }
                "[lexicon]" => {
                    in_lexicon = true;
                    continue;
                }
                _ => {}
            }
            let (left, right) = body
                .split_once('\t')
                .or_else(|| body.split_once(char::is_whitespace))
                .ok_or_else(|| err("expected two tab-separated fields".into()))?;
            let (left, right) = (left.trim(), right.trim());
            if in_lexicon {
                let ty = parse_type(right, &lex.signature).map_err(|e| err(e.to_string()))?;
                lex.entries.entry(left.to_string()).or_default().push(ty);
            } else {
                let sort = right.parse().map_err(|_| err(format!("bad sort `{right}`")))?;
                lex.signature.declare(left, sort).map_err(|e| err(e.msg))?;
            }
        }
        Ok(lex)
    }

    pub fn lookup(&self, word: &str) -> Result<&[Type], LexiconError> {
        self.entries.get(word).map(Vec::as_slice).ok_or_else(|| LexiconError::UnknownWord(word.to_string()))
    }

    /// Every type assignment whose comma-joined figures prove `target`, each
    /// with up to `limit` proofs.
    pub fn readings(&self, words: &[&str], target: &Type, limit: usize) -> Result<Vec<Reading>, LexiconError> {
        let choices = words.iter().map(|w| self.lookup(w)).collect::<Result<Vec<_>, _>>()?;
        let mut prover = Prover::new();
        let mut out = Vec::new();
        let mut idx = vec![0; choices.len()];
        loop {
            let types: Vec<Type> = idx.iter().zip(&choices).map(|(&n, c)| c[n].clone()).collect();
            let ante = types
                .iter()
                .fold(HyperConfig::empty(), |acc, t| acc.concat(&HyperConfig::figure(t)));
            if let Ok(s) = HSequent::new(ante, target.clone()) {
                let proofs = prover.prove_all(&s, limit);
                if !proofs.is_empty() {
                    out.push(Reading { types, proofs });
                }
            }
            let mut pos = idx.len();
            loop {
                if pos == 0 {
                    return Ok(out);
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < choices[pos].len() {
                    break;
                }
                idx[pos] = 0;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const LEX: &str = "[signature]\nn\t0\ns\t0\n[lexicon]\njohn\tn\nwalks\tn\\s\n";

    fn s(lex: &Lexicon) -> Type {
        lex.signature.atom("s").unwrap()
    }

    #[test]
    fn sentences() {
        let lex = Lexicon::parse(LEX).unwrap();
        let count = |words: &[&str], t: &Type| -> usize {
            lex.readings(words, t, 16).unwrap().iter().map(|r| r.proofs.len()).sum()
        };
        assert_eq!(count(&["john", "walks"], &s(&lex)), 1);
        assert_eq!(count(&["walks", "john"], &s(&lex)), 0);
        assert_eq!(count(&[], &Type::unit_i()), 1);
        assert_eq!(lex.readings(&["mary"], &s(&lex), 16).unwrap_err(), LexiconError::UnknownWord("mary".into()));
    }

    #[test]
    fn bad_lines() {
        assert!(matches!(Lexicon::parse("[lexicon]\njohn\tq\n"), Err(LexiconError::Line { line: 2, .. })));
        assert!(matches!(Lexicon::parse("n\tx\n"), Err(LexiconError::Line { line: 1, .. })));
    }
}
