//! The multimodal calculus: sequents over structural terms, logical rules and
//! structural-rule steps. Proof search goes through the hypersequent calculus.

use std::fmt;

use crate::bridge::{image, lift_with_budget};
use crate::error::{CheckError, SortError};
use crate::hd::HRule;
use crate::term::{apply_rule, Path, RuleApp, Step, StructTerm, DEFAULT_BUDGET};
use crate::syntax::{Type, TypeKind};

/// A sequent `antecedent -> succedent`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MSequent {
    pub antecedent: StructTerm,
    pub succedent: Type,
}

impl MSequent {
    pub fn new(antecedent: StructTerm, succedent: Type) -> Result<MSequent, SortError> {
        if antecedent.sort() != succedent.sort() {
            return Err(SortError::Sequent { antecedent: antecedent.sort(), succedent: succedent.sort() });
        }
        Ok(MSequent { antecedent, succedent })
    }
}

impl fmt::Display for MSequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.antecedent, self.succedent)
    }
}

/// A logical rule, or one structural rewrite applied to the premise's antecedent.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MRule {
    Logical(HRule),
    Structural(RuleApp),
}

impl MRule {
    pub fn name(&self) -> &'static str {
        match self {
            MRule::Logical(r) => r.name(),
            MRule::Structural(app) => app.rule.name(),
        }
    }
}

impl fmt::Display for MRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Locates a logical rule instance: `at` addresses the active subterm of the
/// conclusion (for Cut, the cut-in term); `k` is the wrap index.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MParams {
    pub at: Option<Path>,
    pub k: Option<usize>,
}

/// A derivation tree in the multimodal calculus.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MDerivation {
    pub rule: MRule,
    pub conclusion: MSequent,
    pub premises: Vec<MDerivation>,
    pub params: MParams,
}

impl MDerivation {
    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(MDerivation::size).sum::<usize>()
    }

    /// Logical rules in pre-order, structural steps skipped.
    pub fn logical_rules(&self) -> Vec<HRule> {
        let mut out = Vec::new();
        if let MRule::Logical(r) = &self.rule {
            out.push(*r);
        }
        for p in &self.premises {
            out.extend(p.logical_rules());
        }
        out
    }

    /// Structural steps in pre-order.
    pub fn structural_steps(&self) -> Vec<&RuleApp> {
        let mut out = Vec::new();
        if let MRule::Structural(app) = &self.rule {
            out.push(app);
        }
        for p in &self.premises {
            out.extend(p.structural_steps());
        }
        out
    }
}

/// Searches the hypersequent calculus on the translation of `s` and lifts the
/// proof back so that it ends exactly at `s`.
pub fn prove_m(s: &MSequent) -> Option<MDerivation> {
    prove_m_with_budget(s, DEFAULT_BUDGET)
}

pub fn prove_m_with_budget(s: &MSequent, budget: usize) -> Option<MDerivation> {
    let h = crate::hd::prove(&image(s))?;
    lift_with_budget(&h, Some(&s.antecedent), budget).ok()
}

/// Every subterm path, in pre-order.
fn all_paths(t: &StructTerm) -> Vec<Path> {
    fn go(t: &StructTerm, here: &mut Path, out: &mut Vec<Path>) {
        out.push(here.clone());
        if let StructTerm::Cat(l, r) | StructTerm::Wrap(_, l, r) = t {
            here.push(Step::Left);
            go(l, here, out);
            here.pop();
            here.push(Step::Right);
            go(r, here, out);
            here.pop();
        }
    }
    let mut out = Vec::new();
    go(t, &mut Vec::new(), &mut out);
    out
}

/// Verifies every node against the logical or structural rule it names.
pub fn check_m(d: &MDerivation) -> Result<(), CheckError> {
    check_node(d).map_err(|msg| CheckError::new(d.rule.name(), msg))?;
    for (n, p) in d.premises.iter().enumerate() {
        check_m(p).map_err(|e| e.under(n))?;
    }
    Ok(())
}

fn check_node(d: &MDerivation) -> Result<(), String> {
    let c = &d.conclusion;
    if !c.antecedent.is_well_formed() || c.antecedent.sort() != c.succedent.sort() {
        return Err(format!("ill-sorted sequent `{c}`"));
    }
    let prem: Vec<&MSequent> = d.premises.iter().map(|p| &p.conclusion).collect();
    match &d.rule {
        MRule::Structural(app) => {
            let [p] = prem[..] else {
                return Err(format!("expected 1 premise, found {}", prem.len()));
            };
            if p.succedent != c.succedent {
                return Err("structural step changed the succedent".into());
            }
            let got = apply_rule(&p.antecedent, app).map_err(|e| e.to_string())?;
            if got != c.antecedent {
                return Err(format!("rewriting `{}` gives `{got}`, not `{}`", p.antecedent, c.antecedent));
            }
            Ok(())
        }
        MRule::Logical(rule) => {
            if prem.len() != rule.arity() {
                return Err(format!("expected {} premises, found {}", rule.arity(), prem.len()));
            }
            check_logical(*rule, c, &prem, &d.params)
        }
    }
}

fn seq_is(s: &MSequent, ant: &StructTerm, succ: &Type) -> bool {
    s.antecedent == *ant && s.succedent == *succ
}

fn k_ok(params: &MParams, k: usize) -> bool {
    params.k.is_none_or(|given| given == k)
}

fn check_logical(rule: HRule, c: &MSequent, prem: &[&MSequent], params: &MParams) -> Result<(), String> {
    let x = &c.antecedent;
    let ok = match (rule, c.succedent.kind()) {
        (HRule::Id, _) => *x == StructTerm::Leaf(c.succedent.clone()),
        (HRule::IR, TypeKind::UnitI) => *x == StructTerm::I,
        (HRule::JR, TypeKind::UnitJ) => *x == StructTerm::J,
        (HRule::UnderR, TypeKind::Under(a, b)) => {
            seq_is(prem[0], &StructTerm::cat(StructTerm::leaf(a.clone()), x.clone()), b)
        }
        (HRule::OverR, TypeKind::Over(b, a)) => {
            seq_is(prem[0], &StructTerm::cat(x.clone(), StructTerm::leaf(a.clone())), b)
        }
        (HRule::UpR, TypeKind::DUp(k, b, a)) => {
            k_ok(params, *k)
                && StructTerm::wrap(*k, x.clone(), StructTerm::leaf(a.clone())).is_ok_and(|t| seq_is(prem[0], &t, b))
        }
        (HRule::DownR, TypeKind::DDown(k, a, b)) => {
            k_ok(params, *k)
                && StructTerm::wrap(*k, StructTerm::leaf(a.clone()), x.clone()).is_ok_and(|t| seq_is(prem[0], &t, b))
        }
        (HRule::ProdR, TypeKind::Prod(a, b)) => match x {
            StructTerm::Cat(l, r) => seq_is(prem[0], l, a) && seq_is(prem[1], r, b),
            _ => false,
        },
        (HRule::DProdR, TypeKind::DProd(k, a, b)) => match x {
            StructTerm::Wrap(i, l, r) => i == k && k_ok(params, *k) && seq_is(prem[0], l, a) && seq_is(prem[1], r, b),
            _ => false,
        },
        (HRule::IR | HRule::JR | HRule::UnderR | HRule::OverR | HRule::UpR | HRule::DownR, _)
        | (HRule::ProdR | HRule::DProdR, _) => false,
        _ => {
            let paths = match &params.at {
                Some(p) => vec![p.clone()],
                None => all_paths(x),
            };
            paths.iter().any(|p| left_at(rule, c, prem, params, p))
        }
    };
    if ok {
        Ok(())
    } else {
        Err(format!("premises do not match any instance concluding `{c}`"))
    }
}

/// A left rule or Cut whose active subterm sits at `p`.
fn left_at(rule: HRule, c: &MSequent, prem: &[&MSequent], params: &MParams, p: &[Step]) -> bool {
    let x = &c.antecedent;
    let Some(sub) = x.get(p) else { return false };
    let minor = |prem: &MSequent, new: StructTerm| {
        prem.succedent == c.succedent && x.replace(p, new).is_ok_and(|t| t == prem.antecedent)
    };
    let leaf = |t: &Type| StructTerm::leaf(t.clone());
    match (rule, sub) {
        (HRule::Cut, s) => seq_is(prem[0], s, &prem[0].succedent) && minor(prem[1], leaf(&prem[0].succedent)),
        (HRule::IL, StructTerm::Leaf(t)) if *t.kind() == TypeKind::UnitI => minor(prem[0], StructTerm::I),
        (HRule::JL, StructTerm::Leaf(t)) if *t.kind() == TypeKind::UnitJ => minor(prem[0], StructTerm::J),
        (HRule::ProdL, StructTerm::Leaf(t)) => match t.kind() {
            TypeKind::Prod(a, b) => minor(prem[0], StructTerm::cat(leaf(a), leaf(b))),
            _ => false,
        },
        (HRule::DProdL, StructTerm::Leaf(t)) => match t.kind() {
            TypeKind::DProd(k, a, b) => {
                k_ok(params, *k) && StructTerm::wrap(*k, leaf(a), leaf(b)).is_ok_and(|w| minor(prem[0], w))
            }
            _ => false,
        },
        (HRule::UnderL, StructTerm::Cat(l, r)) => match &**r {
            StructTerm::Leaf(t) => match t.kind() {
                TypeKind::Under(a, b) => seq_is(prem[0], l, a) && minor(prem[1], leaf(b)),
                _ => false,
            },
            _ => false,
        },
        (HRule::OverL, StructTerm::Cat(l, r)) => match &**l {
            StructTerm::Leaf(t) => match t.kind() {
                TypeKind::Over(b, a) => seq_is(prem[0], r, a) && minor(prem[1], leaf(b)),
                _ => false,
            },
            _ => false,
        },
        (HRule::UpL, StructTerm::Wrap(i, l, r)) => match &**l {
            StructTerm::Leaf(t) => match t.kind() {
                TypeKind::DUp(k, b, a) => {
                    i == k && k_ok(params, *k) && seq_is(prem[0], r, a) && minor(prem[1], leaf(b))
                }
                _ => false,
            },
            _ => false,
        },
        (HRule::DownL, StructTerm::Wrap(i, l, r)) => match &**r {
            StructTerm::Leaf(t) => match t.kind() {
                TypeKind::DDown(k, a, b) => {
                    i == k && k_ok(params, *k) && seq_is(prem[0], l, a) && minor(prem[1], leaf(b))
                }
                _ => false,
            },
            _ => false,
        },
        _ => false,
    }
}
