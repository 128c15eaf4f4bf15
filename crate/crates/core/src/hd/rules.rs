//! Backward reading of the rule figure: every way a sequent can be the
//! conclusion of a cut-free rule instance.

use crate::hd::flat::{abstract_tokens, chunk_tokens, figure, Flat};
use crate::hd::{Abstraction, HParams, HRule, HSequent};
use crate::syntax::{generalized_wrap_tokens, wrap_tokens, Token, Type, TypeKind};

/// One backward rule application: the premises that would conclude the sequent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleInstance {
    pub rule: HRule,
    pub params: HParams,
    pub premises: Vec<HSequent>,
    /// First token of the active occurrence, for left rules.
    pub principal: Option<usize>,
}

/// All cut-free rule instances concluding `s`, rules in figure order, then
/// leftmost active occurrence, then smallest abstraction.
pub fn enumerate_rule_instances(s: &HSequent) -> Vec<RuleInstance> {
    let toks = s.tokens();
    let mut out = Vec::new();
    for rule in HRule::ALL {
        instances(&toks, &s.succedent, rule, &mut out);
    }
    out
}

fn seq(toks: Vec<Token>, ty: &Type) -> HSequent {
    HSequent::from_tokens(&toks, ty.clone())
}

fn gw(t: &Type, fills: &[Vec<Token>]) -> Vec<Token> {
    generalized_wrap_tokens(&figure(t), fills).expect("filler count matches sort")
}

fn splice(toks: &[Token], s: usize, e: usize, mid: Vec<Token>) -> Vec<Token> {
    let mut out = toks[..s].to_vec();
    out.extend(mid);
    out.extend_from_slice(&toks[e..]);
    out
}

fn region(at: usize, end: usize, k: Option<usize>, chunks: Option<Vec<(usize, usize)>>) -> HParams {
    HParams { at: Some(at), end: Some(end), k, abstraction: chunks.map(|chunks| Abstraction { chunks }) }
}

/// Instances of one rule; Cut has none.
pub(crate) fn instances(toks: &[Token], succ: &Type, rule: HRule, out: &mut Vec<RuleInstance>) {
    let f = Flat::new(toks);
    let n = toks.len();
    let mut push = |params: HParams, premises: Vec<HSequent>, principal: Option<usize>| {
        out.push(RuleInstance { rule, params, premises, principal })
    };
    match rule {
        HRule::Cut => {}
        HRule::Id => {
            if toks == figure(succ).as_slice() {
                push(HParams::default(), vec![], None);
            }
        }
        HRule::IR => {
            if toks.is_empty() && *succ.kind() == TypeKind::UnitI {
                push(HParams::default(), vec![], None);
            }
        }
        HRule::JR => {
            if toks == [Token::Sep] && *succ.kind() == TypeKind::UnitJ {
                push(HParams::default(), vec![], None);
            }
        }
        HRule::UnderR => {
            if let TypeKind::Under(a, c) = succ.kind() {
                let mut p = figure(a);
                p.extend_from_slice(toks);
                push(HParams::default(), vec![seq(p, c)], None);
            }
        }
        HRule::OverR => {
            if let TypeKind::Over(c, b) = succ.kind() {
                let mut p = toks.to_vec();
                p.extend(figure(b));
                push(HParams::default(), vec![seq(p, c)], None);
            }
        }
        HRule::ProdR => {
            if let TypeKind::Prod(a, b) = succ.kind() {
                for m in 0..=n {
                    if f.seps_before(m) == a.sort() && f.wf(0, m) && f.wf(m, n) {
                        let params = HParams { at: Some(m), ..HParams::default() };
                        push(params, vec![seq(toks[..m].to_vec(), a), seq(toks[m..].to_vec(), b)], None);
                    }
                }
            }
        }
        HRule::DProdR => {
            if let TypeKind::DProd(k, a, b) = succ.kind() {
                for s in 0..=n {
                    if f.seps_before(s) != k - 1 {
                        continue;
                    }
                    for e in s..=n {
                        if f.seps_in(s, e) == b.sort() && f.wf(s, e) {
                            let outer = splice(toks, s, e, vec![Token::Sep]);
                            let params = HParams { at: Some(s), end: Some(e), k: Some(*k), abstraction: None };
                            push(params, vec![seq(outer, a), seq(toks[s..e].to_vec(), b)], None);
                        }
                    }
                }
            }
        }
        HRule::DownR => {
            if let TypeKind::DDown(k, a, c) = succ.kind() {
                let p = wrap_tokens(&figure(a), *k, toks).expect("k within sort of A");
                push(HParams { k: Some(*k), ..HParams::default() }, vec![seq(p, c)], None);
            }
        }
        HRule::UpR => {
            if let TypeKind::DUp(k, c, b) = succ.kind() {
                let p = wrap_tokens(toks, *k, &figure(b)).expect("k within antecedent sort");
                push(HParams { k: Some(*k), ..HParams::default() }, vec![seq(p, c)], None);
            }
        }
        HRule::IL | HRule::JL | HRule::ProdL | HRule::DProdL => {
            for (q0, ty) in f.occurrences() {
                let segs = f.segments(q0);
                let last = *segs.last().expect("occurrence has a segment");
                let mid = match (rule, ty.kind()) {
                    (HRule::IL, TypeKind::UnitI) => Vec::new(),
                    (HRule::JL, TypeKind::UnitJ) => toks[q0 + 1..last].to_vec(),
                    (HRule::ProdL, TypeKind::Prod(a, b)) => {
                        let mut pat = figure(a);
                        pat.extend(figure(b));
                        generalized_wrap_tokens(&pat, &f.gaps(q0)).expect("sorts add up")
                    }
                    (HRule::DProdL, TypeKind::DProd(k, a, b)) => {
                        let pat = wrap_tokens(&figure(a), *k, &figure(b)).expect("k within sort of A");
                        generalized_wrap_tokens(&pat, &f.gaps(q0)).expect("sorts add up")
                    }
                    _ => continue,
                };
                push(region(q0, last + 1, None, None), vec![seq(splice(toks, q0, last + 1, mid), succ)], Some(q0));
            }
        }
        HRule::UnderL => {
            for (q0, ty) in f.occurrences() {
                let TypeKind::Under(a, c) = ty.kind() else { continue };
                let gaps = f.gaps(q0);
                let e = *f.segments(q0).last().expect("nonempty") + 1;
                for s in (0..=q0).rev() {
                    if !f.wf(s, q0) {
                        continue;
                    }
                    for chunks in f.abstractions(s, q0, a.sort()) {
                        let gamma = abstract_tokens(toks, s, q0, &chunks);
                        let mut fills = chunk_tokens(toks, &chunks);
                        fills.extend(gaps.iter().cloned());
                        let minor = splice(toks, s, e, gw(c, &fills));
                        push(region(s, e, None, Some(chunks)), vec![seq(gamma, a), seq(minor, succ)], Some(q0));
                    }
                }
            }
        }
        HRule::OverL => {
            for (q0, ty) in f.occurrences() {
                let TypeKind::Over(c, b) = ty.kind() else { continue };
                let gaps = f.gaps(q0);
                let lo = *f.segments(q0).last().expect("nonempty") + 1;
                for e in lo..=n {
                    if !f.wf(lo, e) {
                        continue;
                    }
                    for chunks in f.abstractions(lo, e, b.sort()) {
                        let gamma = abstract_tokens(toks, lo, e, &chunks);
                        let mut fills = gaps.clone();
                        fills.extend(chunk_tokens(toks, &chunks));
                        let minor = splice(toks, q0, e, gw(c, &fills));
                        push(region(q0, e, None, Some(chunks)), vec![seq(gamma, b), seq(minor, succ)], Some(q0));
                    }
                }
            }
        }
        HRule::DownL => {
            for (q0, ty) in f.occurrences() {
                let TypeKind::DDown(k, a, c) = ty.kind() else { continue };
                let gaps = f.gaps(q0);
                let lo = *f.segments(q0).last().expect("nonempty") + 1;
                for s in (0..=q0).rev() {
                    for e in lo..=n {
                        if !f.wf(s, e) {
                            continue;
                        }
                        let befores = f.abstractions(s, q0, k - 1);
                        if befores.is_empty() {
                            continue;
                        }
                        let afters = f.abstractions(lo, e, a.sort() - k);
                        for before in &befores {
                            for after in &afters {
                                let mut gamma = abstract_tokens(toks, s, q0, before);
                                gamma.push(Token::Sep);
                                gamma.extend(abstract_tokens(toks, lo, e, after));
                                let mut fills = chunk_tokens(toks, before);
                                fills.extend(gaps.iter().cloned());
                                fills.extend(chunk_tokens(toks, after));
                                let minor = splice(toks, s, e, gw(c, &fills));
                                let mut chunks = before.clone();
                                chunks.extend(after.iter().copied());
                                push(region(s, e, Some(*k), Some(chunks)), vec![seq(gamma, a), seq(minor, succ)], Some(q0));
                            }
                        }
                    }
                }
            }
        }
        HRule::UpL => {
            for (q0, ty) in f.occurrences() {
                let TypeKind::DUp(k, c, b) = ty.kind() else { continue };
                let segs = f.segments(q0);
                let gaps = f.gaps(q0);
                let (lo, hi) = (segs[k - 1] + 1, segs[*k]);
                let e = *segs.last().expect("nonempty") + 1;
                for chunks in f.abstractions(lo, hi, b.sort()) {
                    let gamma = abstract_tokens(toks, lo, hi, &chunks);
                    let mut fills = gaps[..k - 1].to_vec();
                    fills.extend(chunk_tokens(toks, &chunks));
                    fills.extend(gaps[*k..].iter().cloned());
                    let minor = splice(toks, q0, e, gw(c, &fills));
                    push(region(q0, e, Some(*k), Some(chunks)), vec![seq(gamma, b), seq(minor, succ)], Some(q0));
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_hsequent, Signature};

    fn sequent(src: &str) -> HSequent {
        let sig = Signature::from_pairs([("a", 0), ("b", 2), ("c", 0), ("d", 2), ("e", 1), ("n", 0), ("s", 0)]).unwrap();
        let (g, t) = parse_hsequent(src, &sig).unwrap();
        HSequent::new(g, t).unwrap()
    }

    fn rules_of(src: &str) -> Vec<HRule> {
        enumerate_rule_instances(&sequent(src)).iter().map(|i| i.rule).collect()
    }

    #[test]
    fn under_left_closure() {
        let all = enumerate_rule_instances(&sequent("c, c\\a => a"));
        let under: Vec<_> = all.iter().filter(|i| i.rule == HRule::UnderL).collect();
        // Gamma empty first, then Gamma = c
        assert_eq!(under.len(), 2);
        assert_eq!(under[0].premises[0], sequent("Lambda => c"));
        assert_eq!(under[1].premises, vec![sequent("c => c"), sequent("a => a")]);
    }

    #[test]
    fn units() {
        assert_eq!(rules_of("Lambda => I"), [HRule::IR]);
        assert_eq!(rules_of("[] => J"), [HRule::JR]);
        assert_eq!(rules_of("0:J, a, 1:J => a"), [HRule::JL]);
    }

    #[test]
    fn dprod_right_unique_split() {
        let s = sequent("0:e, 0:d, [], 1:d, [], 2:d, 1:e => e@1d");
        let all = enumerate_rule_instances(&s);
        let dp: Vec<_> = all
            .iter()
            .filter(|i| i.rule == HRule::DProdR && i.premises.iter().all(|p| crate::hd::prove(p).is_some()))
            .collect();
        assert_eq!(dp.len(), 1);
        assert_eq!(dp[0].params.k, Some(1));
        assert_eq!(dp[0].premises[0], sequent("0:e, [], 1:e => e"));
    }

    #[test]
    fn up_left_abstracts_inside_gap() {
        let s = sequent("0:(b^2a), [], 1:(b^2a), c, c\\a, 2:(b^2a), [], 3:(b^2a) => b");
        let up: Vec<_> = enumerate_rule_instances(&s).into_iter().filter(|i| i.rule == HRule::UpL).collect();
        assert_eq!(up.len(), 1);
        assert_eq!(up[0].premises, vec![sequent("c, c\\a => a"), sequent("0:b, [], 1:b, [], 2:b => b")]);
        assert_eq!(up[0].params.k, Some(2));
    }
}
