//! Rewriting any term to the canonical term of its translation.
//!
//! A canonical term is a right-nested chain `h1 + (h2 + ... (hn + II))` whose
//! heads are sort-0 leaves, `JJ`, or blocks `(..(A +1 G1) +e2 G2 ..) +ea Ga`
//! with every `Gn` again canonical.

use crate::error::TermError;
use crate::term::{equiv, sharp, term_of_config, Placement, Rule, RuleApp, RewriteTrace, Step, StructTerm};

/// Default cap on the number of rewrite steps.
pub const DEFAULT_BUDGET: usize = 10_000;

/// A trace from `t` to the canonical term of its translation.
pub fn normalize(t: &StructTerm) -> Result<RewriteTrace, TermError> {
    normalize_with_budget(t, DEFAULT_BUDGET)
}

pub fn normalize_with_budget(t: &StructTerm, budget: usize) -> Result<RewriteTrace, TermError> {
    let mut n = Normalizer { trace: RewriteTrace::new(t.clone()), budget };
    n.norm(&mut Vec::new())?;
    Ok(n.trace)
}

/// A trace from `from` to `to`, through their common canonical term.
pub fn rewrite_between(from: &StructTerm, to: &StructTerm, budget: usize) -> Result<RewriteTrace, TermError> {
    if !equiv(from, to) {
        return Err(TermError::NotApplicable {
            rule: "rewrite".into(),
            path: Vec::new(),
            msg: format!("`{from}` and `{to}` have different translations"),
        });
    }
    let mut trace = normalize_with_budget(from, budget)?;
    let back = normalize_with_budget(to, budget.saturating_sub(trace.len()))?.reversed();
    if trace.len() + back.len() > budget {
        return Err(TermError::Budget(budget));
    }
    debug_assert_eq!(trace.end(), &back.start);
    trace.extend(back);
    Ok(trace)
}

struct Normalizer {
    trace: RewriteTrace,
    budget: usize,
}

fn with(path: &[Step], step: Step) -> Vec<Step> {
    let mut p = path.to_vec();
    p.push(step);
    p
}

impl Normalizer {
    fn at(&self, path: &[Step]) -> &StructTerm {
        self.trace.end().get(path).expect("normalizer paths resolve")
    }

    fn apply(&mut self, app: RuleApp) -> Result<(), TermError> {
        if self.trace.len() >= self.budget {
            return Err(TermError::Budget(self.budget));
        }
        self.trace.push(app)?;
        Ok(())
    }

    fn rule(&mut self, rule: Rule, path: &[Step]) -> Result<(), TermError> {
        self.apply(RuleApp::new(rule, path.to_vec()))
    }

    fn norm(&mut self, path: &mut Vec<Step>) -> Result<(), TermError> {
        let sub = self.at(path);
        if *sub == term_of_config(&sharp(sub)) {
            return Ok(());
        }
        match sub.clone() {
            StructTerm::I => Ok(()),
            StructTerm::J => self.rule(Rule::UnitIRAdd, path),
            StructTerm::Leaf(t) => {
                for i in 1..=t.sort() {
                    self.apply(RuleApp::new(Rule::UnitJIAdd, path.clone()).with("i", i))?;
                    self.rule(Rule::UnitIRAdd, &with(path, Step::Right))?;
                }
                self.rule(Rule::UnitIRAdd, path)
            }
            StructTerm::Cat(..) => {
                self.children(path)?;
                self.append(path)
            }
            StructTerm::Wrap(..) => {
                self.children(path)?;
                self.wrap(path)
            }
        }
    }

    fn children(&mut self, path: &mut Vec<Step>) -> Result<(), TermError> {
        path.push(Step::Left);
        self.norm(path)?;
        path.pop();
        path.push(Step::Right);
        self.norm(path)?;
        path.pop();
        Ok(())
    }

    /// `P + C` with both chains becomes one chain.
    fn append(&mut self, path: &[Step]) -> Result<(), TermError> {
        let mut path = path.to_vec();
        loop {
            let StructTerm::Cat(p, _) = self.at(&path) else {
                unreachable!("append on a concatenation");
            };
            if **p == StructTerm::I {
                return self.rule(Rule::UnitILDrop, &path);
            }
            self.rule(Rule::AsscCFwd, &path)?;
            path.push(Step::Right);
        }
    }

    /// `P +i C` with both chains becomes one chain.
    fn wrap(&mut self, path: &[Step]) -> Result<(), TermError> {
        let mut path = path.to_vec();
        loop {
            let StructTerm::Wrap(i, p, _) = self.at(&path) else {
                unreachable!("wrap on a wrapping");
            };
            let i = *i;
            let StructTerm::Cat(head, _) = &**p else {
                unreachable!("chain of positive sort is a concatenation");
            };
            let h = head.sort();
            let head_is_j = **head == StructTerm::J;
            if head_is_j && i == 1 {
                // (JJ + T) +1 C  ~>  C + T
                self.rule(Rule::SwLeftBwd, &path)?;
                return self.append(&path);
            }
            if i > h || head_is_j {
                // (H + T) +i C  ~>  H + (T +(i-h) C)
                self.rule(Rule::SwRightFwd, &with(&path, Step::Left))?;
                self.rule(Rule::AsscD2, &path)?;
                self.rule(Rule::SwRightBwd, &path)?;
                path.push(Step::Right);
                continue;
            }
            // (W + T) +i C  ~>  (W +i C) + T with the gap inside block W
            self.rule(Rule::SwLeftFwd, &with(&path, Step::Left))?;
            self.rule(Rule::AsscD2, &path)?;
            self.rule(Rule::SwLeftBwd, &path)?;
            return self.wrap_block(&with(&path, Step::Left));
        }
    }

    /// `W +i C` with `W` a block becomes a block.
    fn wrap_block(&mut self, path: &[Step]) -> Result<(), TermError> {
        let mut path = path.to_vec();
        loop {
            match self.at(&path).classify() {
                Some(Placement::O) => {
                    self.rule(Rule::AsscD2, &path)?;
                    return self.wrap(&with(&path, Step::Right));
                }
                Some(Placement::P2) => {
                    self.rule(Rule::MixPerm2Fwd, &path)?;
                    path.push(Step::Left);
                }
                other => unreachable!("gap of a block cannot lie after it: {other:?}"),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_term, Signature};

    fn term(src: &str) -> StructTerm {
        let sig = Signature::from_pairs([("a", 0), ("b", 2), ("c", 0), ("d", 2), ("e", 1), ("f", 3)]).unwrap();
        parse_term(src, &sig).unwrap()
    }

    fn check(src: &str) {
        let t = term(src);
        let trace = normalize(&t).unwrap();
        trace.validate().unwrap();
        assert_eq!(trace.end(), &term_of_config(&sharp(&t)), "{src}");
    }

    #[test]
    fn canonical_is_fixed() {
        let t = term("II");
        assert!(normalize(&t).unwrap().is_empty());
        let c = term_of_config(&sharp(&term("((f +2 (b +1 e)) + a)")));
        assert!(normalize(&c).unwrap().is_empty());
    }

    #[test]
    fn reaches_canonical_terms() {
        for src in [
            "(II + a)",
            "((e + JJ) +2 a)",
            "((a + JJ) +1 c)",
            "(((b^2a +1 d) +4 e) +3 (JJ + c\\a))",
            "((f +1 e) +3 (a + c))",
            "((f +3 e) +1 b)",
            "(f +2 (b +1 e))",
            "((JJ + JJ) +2 (JJ + e))",
            "(((JJ + a) + JJ) +2 e)",
            "((a + f) +3 ((a + JJ) +1 II))",
            "(JJ +1 (JJ +1 JJ))",
        ] {
            check(src);
        }
    }

    #[test]
    fn budget_is_enforced() {
        let t = term("(((b^2a +1 d) +4 e) +3 (JJ + c\\a))");
        assert!(matches!(normalize_with_budget(&t, 3), Err(TermError::Budget(3))));
    }

    #[test]
    fn rewrites_between_equivalents() {
        let from = term("((a + JJ) +1 c)");
        let to = term("((JJ + c) +1 a)");
        let trace = rewrite_between(&from, &to, DEFAULT_BUDGET).unwrap();
        trace.validate().unwrap();
        assert_eq!(trace.end(), &to);
        assert!(rewrite_between(&from, &term("(c + a)"), DEFAULT_BUDGET).is_err());
    }
}
