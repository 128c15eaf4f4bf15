//! Cut-free backward proof search. Every cut-free premise has fewer
//! connectives than its conclusion, so plain depth-first search terminates.

use std::collections::{BTreeMap, HashMap};

use crate::hd::rules::enumerate_rule_instances;
use crate::hd::{HDerivation, HSequent};
use crate::syntax::{Token, Type, TypeKind};

type Key = (Vec<Token>, Type);

/// Search state, reusable across queries; memoizes per flattened sequent.
#[derive(Default)]
pub struct Prover {
    first: HashMap<Key, Option<HDerivation>>,
    all: HashMap<Key, Vec<HDerivation>>,
    limit: usize,
    /// Sequents expanded so far.
    pub expanded: usize,
}

impl Prover {
    pub fn new() -> Prover {
        Prover::default()
    }

    /// The first cut-free proof in enumeration order.
    pub fn prove(&mut self, s: &HSequent) -> Option<HDerivation> {
        if s.antecedent.sort() != s.succedent.sort() {
            return None;
        }
        self.first_proof(s)
    }

    /// Up to `limit` distinct cut-free proofs, in enumeration order.
    pub fn prove_all(&mut self, s: &HSequent, limit: usize) -> Vec<HDerivation> {
        if s.antecedent.sort() != s.succedent.sort() || limit == 0 {
            return Vec::new();
        }
        if limit != self.limit {
            self.all.clear();
            self.limit = limit;
        }
        self.all_proofs(s)
    }

    fn first_proof(&mut self, s: &HSequent) -> Option<HDerivation> {
        let key = (s.tokens(), s.succedent.clone());
        if let Some(hit) = self.first.get(&key) {
            return hit.clone();
        }
        let found = self.search_first(s);
        self.first.insert(key, found.clone());
        found
    }

    fn search_first(&mut self, s: &HSequent) -> Option<HDerivation> {
        if !count_balanced(s) {
            return None;
        }
        self.expanded += 1;
        'instances: for inst in enumerate_rule_instances(s) {
            let mut premises = Vec::with_capacity(inst.premises.len());
            for p in &inst.premises {
                match self.first_proof(p) {
                    Some(d) => premises.push(d),
                    None => continue 'instances,
                }
            }
            return Some(HDerivation { rule: inst.rule, conclusion: s.clone(), premises, params: inst.params });
        }
        None
    }

    fn all_proofs(&mut self, s: &HSequent) -> Vec<HDerivation> {
        let key = (s.tokens(), s.succedent.clone());
        if let Some(hit) = self.all.get(&key) {
            return hit.clone();
        }
        let mut out: Vec<HDerivation> = Vec::new();
        if count_balanced(s) {
            self.expanded += 1;
            for inst in enumerate_rule_instances(s) {
                let lists: Vec<Vec<HDerivation>> = inst.premises.iter().map(|p| self.all_proofs(p)).collect();
                if lists.iter().any(Vec::is_empty) {
                    continue;
                }
                let mut idx = vec![0; lists.len()];
                loop {
                    let premises = idx.iter().zip(&lists).map(|(&n, l)| l[n].clone()).collect();
                    let d = HDerivation { rule: inst.rule, conclusion: s.clone(), premises, params: inst.params.clone() };
                    if !out.contains(&d) {
                        out.push(d);
                        if out.len() >= self.limit {
                            self.all.insert(key, out.clone());
                            return out;
                        }
                    }
                    // odometer over the premise proof lists
                    let mut pos = idx.len();
                    loop {
                        if pos == 0 {
                            break;
                        }
                        pos -= 1;
                        idx[pos] += 1;
                        if idx[pos] < lists[pos].len() {
                            break;
                        }
                        idx[pos] = 0;
                        if pos == 0 {
                            pos = usize::MAX;
                            break;
                        }
                    }
                    if pos == usize::MAX || idx.is_empty() {
                        break;
                    }
                }
            }
        }
        self.all.insert(key, out.clone());
        out
    }
}

pub fn prove(s: &HSequent) -> Option<HDerivation> {
    Prover::new().prove(s)
}

pub fn prove_all(s: &HSequent, limit: usize) -> Vec<HDerivation> {
    Prover::new().prove_all(s, limit)
}

fn tally(t: &Type, positive: bool, counts: &mut BTreeMap<String, i64>) {
    match t.kind() {
        TypeKind::Atom(a) => *counts.entry(a.name().to_string()).or_default() += if positive { 1 } else { -1 },
        TypeKind::UnitI | TypeKind::UnitJ => {}
        TypeKind::Prod(l, r) | TypeKind::DProd(_, l, r) => {
            tally(l, positive, counts);
            tally(r, positive, counts);
        }
        TypeKind::Under(a, c) | TypeKind::DDown(_, a, c) => {
            tally(a, !positive, counts);
            tally(c, positive, counts);
        }
        TypeKind::Over(c, b) | TypeKind::DUp(_, c, b) => {
            tally(c, positive, counts);
            tally(b, !positive, counts);
        }
    }
}

/// Necessary condition for provability: every atom occurs as often
/// positively as negatively.
pub fn count_balanced(s: &HSequent) -> bool {
    let mut counts = BTreeMap::new();
    for t in s.tokens() {
        if let Token::Leaf(ty) | Token::Seg(ty, 0) = t {
            tally(&ty, false, &mut counts);
        }
    }
    tally(&s.succedent, true, &mut counts);
    counts.values().all(|&c| c == 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hd::{check, HRule};
    use crate::syntax::{parse_hsequent, Signature};

    fn sequent(src: &str) -> HSequent {
        let sig = Signature::from_pairs([("a", 0), ("b", 2), ("c", 0), ("d", 2), ("e", 1), ("n", 0), ("s", 0)]).unwrap();
        let (g, t) = parse_hsequent(src, &sig).unwrap();
        HSequent::new(g, t).unwrap()
    }

    #[test]
    fn finds_and_checks() {
        for src in ["a => a", "n, n\\s => s", "a => s/(a\\s)", "Lambda => I", "[] => J", "0:e, [], 1:e => e"] {
            let d = prove(&sequent(src)).expect(src);
            check(&d).unwrap();
        }
        assert!(prove(&sequent("a => c")).is_none());
        assert!(prove(&sequent("n\\s, n => s")).is_none());
    }

    #[test]
    fn worked_example() {
        let s = sequent("0:(b^2a), 0:d, [], 1:d, [], 2:d, 1:(b^2a), [], c\\a, 2:(b^2a), 0:e, [], 1:e, 3:(b^2a) => ((b@1d)@3e)^3c");
        let d = prove(&s).unwrap();
        check(&d).unwrap();
        assert_eq!(d.rule, HRule::UpR);
    }

    #[test]
    fn proof_counts() {
        assert_eq!(prove_all(&sequent("a => a"), 10).len(), 1);
        assert_eq!(prove_all(&sequent("a => c"), 10).len(), 0);
        // Id on the compound type, or decomposition by OverR then OverL
        assert_eq!(prove_all(&sequent("s/n => s/n"), 10).len(), 2);
        assert_eq!(prove_all(&sequent("s/n => s/n"), 1).len(), 1);
    }

    #[test]
    fn balance() {
        assert!(count_balanced(&sequent("n, n\\s => s")));
        assert!(!count_balanced(&sequent("n, n\\s => n")));
    }
}
