//! Translating derivations between the two calculi.
//!
//! Lowering maps each logical node to its hypersequent image and erases
//! structural steps. Lifting keeps, at every node, a term whose translation is
//! the node's antecedent, and reconciles rule-shaped terms with the requested
//! ones by explicit rewrite traces.

use crate::error::BridgeError;
use crate::hd::flat::Flat;
use crate::hd::{check, instances, HDerivation, HParams, HRule, HSequent};
use crate::md::{check_m, MDerivation, MParams, MRule, MSequent};
use crate::syntax::{generalized_wrap_tokens, Token, Type, TypeKind};
use crate::term::{
    extract, occurrence_path, occurrence_pos, rewrite_between, sharp, sharp_tokens, term_of_config, Step,
    StructTerm, DEFAULT_BUDGET,
};

/// The hypersequent image of a multimodal sequent.
pub fn image(m: &MSequent) -> HSequent {
    HSequent { antecedent: sharp(&m.antecedent), succedent: m.succedent.clone() }
}

/// True when the end-sequents correspond under the translation.
pub fn correspondence_check(m: &MDerivation, h: &HDerivation) -> bool {
    sharp_tokens(&m.conclusion.antecedent) == h.conclusion.tokens() && m.conclusion.succedent == h.conclusion.succedent
}

/// Lowers a checked multimodal derivation to the hypersequent calculus.
pub fn lower(d: &MDerivation) -> Result<HDerivation, BridgeError> {
    check_m(d)?;
    let h = lower_node(d)?;
    check(&h).map_err(|e| BridgeError::Internal(format!("lowered derivation fails to check: {e}")))?;
    Ok(h)
}

fn lower_node(d: &MDerivation) -> Result<HDerivation, BridgeError> {
    let rule = match &d.rule {
        MRule::Structural(_) => return lower_node(&d.premises[0]),
        MRule::Logical(r) => *r,
    };
    let premises = d.premises.iter().map(lower_node).collect::<Result<Vec<_>, _>>()?;
    let conclusion = image(&d.conclusion);
    let params = if rule == HRule::Cut {
        let at = d.params.at.as_ref().and_then(|p| occurrence_pos(&d.premises[1].conclusion.antecedent, p));
        HParams { at, ..HParams::default() }
    } else {
        let mut found = Vec::new();
        instances(&conclusion.tokens(), &conclusion.succedent, rule, &mut found);
        found
            .into_iter()
            .find(|i| i.premises.iter().zip(&premises).all(|(a, b)| *a == b.conclusion))
            .map(|i| i.params)
            .ok_or_else(|| BridgeError::Internal(format!("no {rule} instance concludes `{conclusion}`")))?
    };
    Ok(HDerivation { rule, conclusion, premises, params })
}

/// Lifts a checked hypersequent derivation; the result concludes `target`
/// when given, otherwise the canonical term of the antecedent.
pub fn lift(d: &HDerivation, target: Option<&StructTerm>) -> Result<MDerivation, BridgeError> {
    lift_with_budget(d, target, DEFAULT_BUDGET)
}

/// [`lift`] with an explicit cap on each reconciling rewrite trace.
pub fn lift_with_budget(d: &HDerivation, target: Option<&StructTerm>, budget: usize) -> Result<MDerivation, BridgeError> {
    check(d)?;
    let target = match target {
        Some(t) if sharp_tokens(t) != d.conclusion.tokens() => return Err(BridgeError::Target),
        Some(t) => t.clone(),
        None => term_of_config(&d.conclusion.antecedent),
    };
    let m = Lifter { budget }.lift_to(d, &target)?;
    check_m(&m).map_err(|e| BridgeError::Internal(format!("lifted derivation fails to check: {e}")))?;
    Ok(m)
}

struct Lifter {
    budget: usize,
}

fn leaf(t: &Type) -> StructTerm {
    StructTerm::leaf(t.clone())
}

fn wrap(k: usize, l: StructTerm, r: StructTerm) -> Result<StructTerm, BridgeError> {
    Ok(StructTerm::wrap(k, l, r)?)
}

fn node(rule: HRule, ant: StructTerm, succ: &Type, premises: Vec<MDerivation>, params: MParams) -> MDerivation {
    MDerivation {
        rule: MRule::Logical(rule),
        conclusion: MSequent { antecedent: ant, succedent: succ.clone() },
        premises,
        params,
    }
}

fn prefixed(prefix: &[Step], at: &[Step]) -> Vec<Step> {
    let mut p = prefix.to_vec();
    p.extend_from_slice(at);
    p
}

fn internal(msg: impl Into<String>) -> BridgeError {
    BridgeError::Internal(msg.into())
}

impl Lifter {
    fn default_term(&self, s: &HSequent) -> StructTerm {
        term_of_config(&s.antecedent)
    }

    /// Stacks structural steps rewriting the subterm at `at` of `d`'s
    /// antecedent into `to`.
    fn rewrite_at(&self, mut d: MDerivation, at: &[Step], to: &StructTerm) -> Result<MDerivation, BridgeError> {
        let from = d.conclusion.antecedent.get(at).ok_or_else(|| internal("rewrite path"))?.clone();
        if from == *to {
            return Ok(d);
        }
        let trace = rewrite_between(&from, to, self.budget)?;
        let succ = d.conclusion.succedent.clone();
        let mut whole = d.conclusion.antecedent.clone();
        for step in trace.steps {
            whole = whole.replace(at, step.result)?;
            let app = crate::term::RuleApp { at: prefixed(at, &step.app.at), ..step.app };
            d = MDerivation {
                rule: MRule::Structural(app),
                conclusion: MSequent { antecedent: whole.clone(), succedent: succ.clone() },
                premises: vec![d],
                params: MParams::default(),
            };
        }
        Ok(d)
    }

    fn lift_default(&self, d: &HDerivation) -> Result<MDerivation, BridgeError> {
        self.lift_to(d, &self.default_term(&d.conclusion))
    }

    fn lift_to(&self, d: &HDerivation, target: &StructTerm) -> Result<MDerivation, BridgeError> {
        let succ = &d.conclusion.succedent;
        let (params, principal) = resolve(d)?;
        let mp = |at: Option<Vec<Step>>, k: Option<usize>| MParams { at, k };
        let natural = match (d.rule, succ.kind()) {
            (HRule::Id, _) => node(HRule::Id, leaf(succ), succ, vec![], MParams::default()),
            (HRule::IR, _) => node(HRule::IR, StructTerm::I, succ, vec![], MParams::default()),
            (HRule::JR, _) => node(HRule::JR, StructTerm::J, succ, vec![], MParams::default()),
            (HRule::UnderR, TypeKind::Under(a, _)) => {
                let p = self.lift_to(&d.premises[0], &StructTerm::cat(leaf(a), target.clone()))?;
                return Ok(node(HRule::UnderR, target.clone(), succ, vec![p], MParams::default()));
            }
            (HRule::OverR, TypeKind::Over(_, b)) => {
                let p = self.lift_to(&d.premises[0], &StructTerm::cat(target.clone(), leaf(b)))?;
                return Ok(node(HRule::OverR, target.clone(), succ, vec![p], MParams::default()));
            }
            (HRule::DownR, TypeKind::DDown(k, a, _)) => {
                let p = self.lift_to(&d.premises[0], &wrap(*k, leaf(a), target.clone())?)?;
                return Ok(node(HRule::DownR, target.clone(), succ, vec![p], mp(None, Some(*k))));
            }
            (HRule::UpR, TypeKind::DUp(k, _, b)) => return self.lift_up_right(d, *k, b, target),
            (HRule::ProdR, _) => {
                let l = self.lift_default(&d.premises[0])?;
                let r = self.lift_default(&d.premises[1])?;
                let ant = StructTerm::cat(l.conclusion.antecedent.clone(), r.conclusion.antecedent.clone());
                node(HRule::ProdR, ant, succ, vec![l, r], MParams::default())
            }
            (HRule::DProdR, TypeKind::DProd(k, _, _)) => {
                let l = self.lift_default(&d.premises[0])?;
                let r = self.lift_default(&d.premises[1])?;
                let ant = wrap(*k, l.conclusion.antecedent.clone(), r.conclusion.antecedent.clone())?;
                node(HRule::DProdR, ant, succ, vec![l, r], mp(None, Some(*k)))
            }
            (HRule::IL | HRule::JL | HRule::ProdL | HRule::DProdL, _) => {
                let at = params.at.ok_or_else(|| internal("left rule without position"))?;
                let path = occurrence_path(target, at).ok_or_else(|| internal("occurrence not found"))?;
                let Some(StructTerm::Leaf(ty)) = target.get(&path) else {
                    return Err(internal("active occurrence is not a leaf"));
                };
                let (replacement, k) = match ty.kind() {
                    TypeKind::UnitI => (StructTerm::I, None),
                    TypeKind::UnitJ => (StructTerm::J, None),
                    TypeKind::Prod(a, b) => (StructTerm::cat(leaf(a), leaf(b)), None),
                    TypeKind::DProd(k, a, b) => (wrap(*k, leaf(a), leaf(b))?, Some(*k)),
                    _ => return Err(internal("active occurrence has the wrong connective")),
                };
                let p = self.lift_to(&d.premises[0], &target.replace(&path, replacement)?)?;
                return Ok(node(d.rule, target.clone(), succ, vec![p], mp(Some(path), k)));
            }
            (HRule::UnderL | HRule::OverL | HRule::UpL | HRule::DownL | HRule::Cut, _) => {
                let major = self.lift_default(&d.premises[0])?;
                let minor = self.lift_default(&d.premises[1])?;
                let at = params.at.ok_or_else(|| internal("left rule without position"))?;
                let t2 = &minor.conclusion.antecedent;
                let path = occurrence_path(t2, at).ok_or_else(|| internal("occurrence not found"))?;
                let Some(StructTerm::Leaf(c)) = t2.get(&path) else {
                    return Err(internal("minor premise occurrence is not a leaf"));
                };
                let x = major.conclusion.antecedent.clone();
                let (pattern, k) = match principal {
                    None => (x, None),
                    Some(q0) => {
                        let ty = match &d.conclusion.tokens()[q0] {
                            Token::Leaf(ty) | Token::Seg(ty, 0) => ty.clone(),
                            _ => return Err(internal("principal position is not an occurrence")),
                        };
                        match (d.rule, ty.kind()) {
                            (HRule::UnderL, _) => (StructTerm::cat(x, leaf(&ty)), None),
                            (HRule::OverL, _) => (StructTerm::cat(leaf(&ty), x), None),
                            (HRule::UpL, TypeKind::DUp(k, _, _)) => (wrap(*k, leaf(&ty), x)?, Some(*k)),
                            (HRule::DownL, TypeKind::DDown(k, _, _)) => (wrap(*k, x, leaf(&ty))?, Some(*k)),
                            _ => return Err(internal("principal type has the wrong connective")),
                        }
                    }
                };
                debug_assert!(d.rule == HRule::Cut || c.sort() == pattern.sort());
                let ant = t2.replace(&path, pattern)?;
                node(d.rule, ant, succ, vec![major, minor], mp(Some(path), k))
            }
            _ => return Err(internal(format!("{} does not match its succedent", d.rule))),
        };
        self.rewrite_at(natural, &[], target)
    }

    fn lift_up_right(&self, d: &HDerivation, k: usize, b: &Type, target: &StructTerm) -> Result<MDerivation, BridgeError> {
        let premise = &d.premises[0];
        let gamma = d.conclusion.tokens();
        let pos = gamma
            .iter()
            .enumerate()
            .filter(|(_, t)| t.is_sep())
            .nth(k - 1)
            .map(|(n, _)| n)
            .ok_or_else(|| internal("separator index out of range"))?;
        let p = self.lift_default(premise)?;
        let y = p.conclusion.antecedent.clone();
        let path = occurrence_path(&y, pos).ok_or_else(|| internal("wrapped-in occurrence not found"))?;
        let ex = extract(&y, &path).map_err(|e| internal(format!("extraction failed: {e}")))?;
        if ex.index != k {
            return Err(internal(format!("extraction index {} differs from rule index {k}", ex.index)));
        }
        if sharp_tokens(&ex.rest) != gamma {
            return Err(internal("extraction remainder does not translate to the antecedent"));
        }
        let succ = premise.conclusion.succedent.clone();
        let mut cur = p;
        for step in ex.trace.steps {
            cur = MDerivation {
                rule: MRule::Structural(step.app),
                conclusion: MSequent { antecedent: step.result, succedent: succ.clone() },
                premises: vec![cur],
                params: MParams::default(),
            };
        }
        debug_assert_eq!(cur.conclusion.antecedent, StructTerm::wrap(k, ex.rest.clone(), leaf(b)).expect("sorted"));
        let cur = self.rewrite_at(cur, &[Step::Left], target)?;
        Ok(node(HRule::UpR, target.clone(), &d.conclusion.succedent, vec![cur], MParams { at: None, k: Some(k) }))
    }
}

/// The full parameters of a checked node, with its principal occurrence.
fn resolve(d: &HDerivation) -> Result<(HParams, Option<usize>), BridgeError> {
    match d.rule {
        HRule::Id | HRule::IR | HRule::JR | HRule::UnderR | HRule::OverR | HRule::DownR | HRule::UpR => {
            Ok((d.params.clone(), None))
        }
        HRule::Cut => {
            if d.params.at.is_some() {
                return Ok((d.params.clone(), None));
            }
            let gamma = d.premises[0].conclusion.tokens();
            let toks = d.premises[1].conclusion.tokens();
            let want = d.conclusion.tokens();
            let f = Flat::new(&toks);
            for (q0, ty) in f.occurrences() {
                if *ty != d.premises[0].conclusion.succedent {
                    continue;
                }
                let last = *f.segments(q0).last().expect("occurrence");
                let mut got = toks[..q0].to_vec();
                got.extend(generalized_wrap_tokens(&gamma, &f.gaps(q0)).expect("sorts agree"));
                got.extend_from_slice(&toks[last + 1..]);
                if got == want {
                    return Ok((HParams { at: Some(q0), ..HParams::default() }, None));
                }
            }
            Err(internal("cut occurrence not found"))
        }
        rule => {
            let mut found = Vec::new();
            instances(&d.conclusion.tokens(), &d.conclusion.succedent, rule, &mut found);
            found
                .into_iter()
                .find(|i| d.params.matches(&i.params) && i.premises.iter().zip(&d.premises).all(|(a, b)| *a == b.conclusion))
                .map(|i| (i.params, i.principal))
                .ok_or_else(|| internal(format!("no {rule} instance matches")))
        }
    }
}
