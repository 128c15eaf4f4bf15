//! Bringing a visible type occurrence to the outside of a term: `T[A] ~* T' +i A`.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::TermError;
use crate::syntax::{HyperConfig, Token, Type};
use crate::term::{
    applicable_rules, apply_rule, normalize, rewrite_between, sharp_tagged, sharp_tokens, term_of_config, Path,
    Placement, Rule, RuleApp, RewriteTrace, Step, StructTerm, DEFAULT_BUDGET,
};

/// The outcome of an extraction: the trace ends at `Wrap(index, rest, A)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extraction {
    pub rest: StructTerm,
    pub index: usize,
    pub trace: RewriteTrace,
}

fn leaf_type<'a>(t: &'a StructTerm, at: &[Step]) -> Result<&'a Type, TermError> {
    match t.get(at) {
        Some(StructTerm::Leaf(ty)) => Ok(ty),
        Some(_) => Err(TermError::NotLeaf(at.to_vec())),
        None => Err(TermError::BadPath(at.to_vec())),
    }
}

/// The separator index `i` with `sharp(t) = D |_i figure(A)` for the leaf at
/// `at`, or `None` when the leaf's gaps do not hold exactly one separator each.
pub fn extractable(t: &StructTerm, at: &[Step]) -> Result<Option<usize>, TermError> {
    let ty = leaf_type(t, at)?;
    let ordinal = t.leaf_paths().iter().position(|p| p == at).expect("leaf path listed");
    let tokens = sharp_tagged(t);
    let own: Vec<usize> = tokens
        .iter()
        .enumerate()
        .filter(|(_, (tok, tag))| *tag == Some(ordinal) && !tok.is_sep())
        .map(|(n, _)| n)
        .collect();
    debug_assert_eq!(own.len(), ty.sort() + 1);
    let contiguous = own.windows(2).all(|w| w[1] == w[0] + 2 && tokens[w[0] + 1].0 == Token::Sep);
    if !contiguous {
        return Ok(None);
    }
    let before = tokens[..own[0]].iter().filter(|(tok, _)| tok.is_sep()).count();
    Ok(Some(before + 1))
}

/// Rewrites `t` to `rest +i A` for the visible leaf `A` at `at`.
pub fn extract(t: &StructTerm, at: &[Step]) -> Result<Extraction, TermError> {
    let Some(want) = extractable(t, at)? else {
        return Err(TermError::NotExtractable(at.to_vec()));
    };
    let mut trace = RewriteTrace::new(t.clone());
    let index = match extract_in(&mut trace, &mut Vec::new(), at) {
        Ok(index) => index,
        // a gap may only collapse to one separator further out
        Err(_) => {
            trace = via_normal_form(t, at, want)?;
            want
        }
    };
    let StructTerm::Wrap(i, rest, _) = trace.end() else {
        unreachable!("extraction ends in a wrapping");
    };
    debug_assert_eq!(*i, index);
    let rest = (**rest).clone();
    Ok(Extraction { rest, index, trace })
}

fn via_normal_form(t: &StructTerm, at: &[Step], index: usize) -> Result<RewriteTrace, TermError> {
    let ty = leaf_type(t, at)?.clone();
    let ordinal = t.leaf_paths().iter().position(|p| p == at).expect("leaf path listed");
    let tokens = sharp_tagged(t);
    let own: Vec<usize> = (0..tokens.len()).filter(|&n| tokens[n].1 == Some(ordinal) && !tokens[n].0.is_sep()).collect();
    let (first, last) = (own[0], own[own.len() - 1]);
    let rest_tokens: Vec<Token> = tokens[..first]
        .iter()
        .map(|(tok, _)| tok.clone())
        .chain(std::iter::once(Token::Sep))
        .chain(tokens[last + 1..].iter().map(|(tok, _)| tok.clone()))
        .collect();
    let rest = term_of_config(&HyperConfig::parse_flat(&rest_tokens).expect("well-formed remainder"));
    let target = StructTerm::Wrap(index, Box::new(rest), Box::new(StructTerm::Leaf(ty)));
    rewrite_between(t, &target, DEFAULT_BUDGET)
}

fn push(trace: &mut RewriteTrace, rule: Rule, at: &[Step]) -> Result<(), TermError> {
    trace.push(RuleApp::new(rule, at.to_vec())).map(|_| ())
}

fn child(path: &[Step], step: Step) -> Path {
    let mut p = path.to_vec();
    p.push(step);
    p
}

/// Extracts the leaf at relative path `rel` from the subterm at `here`, leaving
/// `Wrap(i, _, A)` at `here`; returns `i`.
fn extract_in(trace: &mut RewriteTrace, here: &mut Path, rel: &[Step]) -> Result<usize, TermError> {
    let s = trace.end().get(here).expect("path resolves").clone();
    let Some((&first, deeper)) = rel.split_first() else {
        // T[A] with T empty: A ~> JJ +1 A
        push(trace, Rule::UnitJLAdd, here)?;
        return Ok(1);
    };
    match (s, first) {
        (StructTerm::Wrap(i, _, r), Step::Right) if deeper.is_empty() && matches!(*r, StructTerm::Leaf(_)) => Ok(i),
        (StructTerm::Cat(..), Step::Left) if deeper.is_empty() => {
            push(trace, Rule::SwLeftFwd, here)?;
            Ok(1)
        }
        (StructTerm::Cat(l, _), Step::Right) if deeper.is_empty() => {
            push(trace, Rule::SwRightFwd, here)?;
            Ok(l.sort() + 1)
        }
        (StructTerm::Cat(..), Step::Left) => {
            here.push(Step::Left);
            let k = extract_in(trace, here, deeper)?;
            here.pop();
            push(trace, Rule::SwLeftFwd, here)?;
            push(trace, Rule::AsscD1, here)?;
            push(trace, Rule::SwLeftBwd, &child(here, Step::Left))?;
            Ok(k)
        }
        (StructTerm::Cat(l, _), Step::Right) => {
            here.push(Step::Right);
            let k = extract_in(trace, here, deeper)?;
            here.pop();
            push(trace, Rule::SwRightFwd, here)?;
            push(trace, Rule::AsscD1, here)?;
            push(trace, Rule::SwRightBwd, &child(here, Step::Left))?;
            Ok(l.sort() + k)
        }
        (StructTerm::Wrap(i, _, _), Step::Right) => {
            here.push(Step::Right);
            let k = extract_in(trace, here, deeper)?;
            here.pop();
            push(trace, Rule::AsscD1, here)?;
            Ok(i + k - 1)
        }
        (StructTerm::Wrap(_, _, r), Step::Left) => {
            here.push(Step::Left);
            let k = extract_in(trace, here, deeper)?;
            here.pop();
            match trace.end().get(here).and_then(StructTerm::classify) {
                Some(Placement::P1) => {
                    push(trace, Rule::MixPerm1Fwd, here)?;
                    Ok(k)
                }
                Some(Placement::P2) => {
                    push(trace, Rule::MixPerm2Fwd, here)?;
                    Ok(k + r.sort() - 1)
                }
                Some(Placement::O) => {
                    // The wrapped material fills a gap of A, so it must be a lone separator.
                    let right = child(here, Step::Right);
                    let sub = trace.end().get(&right).expect("path resolves").clone();
                    let norm = normalize(&sub)?;
                    for step in norm.steps {
                        let mut at = right.clone();
                        at.extend(step.app.at.iter().copied());
                        trace.push(RuleApp { at, ..step.app })?;
                    }
                    push(trace, Rule::UnitIRDrop, &right)?;
                    push(trace, Rule::UnitJIDrop, here)?;
                    Ok(k)
                }
                None => unreachable!("left extraction leaves a nested wrapping"),
            }
        }
        (_, _) => Err(TermError::BadPath(rel.to_vec())),
    }
}

/// Re-extracts from randomly rewritten but equivalent variants of `t` and
/// checks that the index and the remainder's translation never change.
pub fn uniqueness_check(t: &StructTerm, at: &[Step], trials: usize) -> bool {
    uniqueness_check_seeded(t, at, trials, 0)
}

/// [`uniqueness_check`] with an explicit base seed.
pub fn uniqueness_check_seeded(t: &StructTerm, at: &[Step], trials: usize, seed: u64) -> bool {
    let Ok(base) = extract(t, at) else {
        return false;
    };
    let want = (base.index, sharp_tokens(&base.rest));
    let Ok(ty) = leaf_type(t, at).cloned() else {
        return false;
    };
    let marked = t.replace(at, StructTerm::Leaf(Type::marker(ty.sort()))).expect("same sort");
    let limit = t.size() + 3;
    for trial in 1..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(1_000_003).wrapping_add(trial as u64));
        let mut cur = marked.clone();
        let steps = rng.gen_range(1..=12);
        for _ in 0..steps {
            let apps = applicable_rules(&cur, cur.size() < limit);
            let Some(app) = apps.choose(&mut rng) else { break };
            cur = apply_rule(&cur, app).expect("listed rules apply");
        }
        let marker = Type::marker(ty.sort());
        let Some(path) = cur
            .leaf_paths()
            .into_iter()
            .find(|p| matches!(cur.get(p), Some(StructTerm::Leaf(x)) if *x == marker))
        else {
            return false;
        };
        let restored = cur.replace(&path, StructTerm::Leaf(ty.clone())).expect("same sort");
        match extract(&restored, &path) {
            Ok(e) if (e.index, sharp_tokens(&e.rest)) == want => {}
            _ => return false,
        }
    }
    true
}
