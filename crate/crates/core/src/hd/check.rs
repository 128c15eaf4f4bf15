use crate::error::CheckError;
use crate::hd::flat::Flat;
use crate::hd::rules::instances;
use crate::hd::{HDerivation, HRule, HSequent};
use crate::syntax::generalized_wrap_tokens;

/// Verifies every node of `d` against its rule schema; Cut is accepted.
pub fn check(d: &HDerivation) -> Result<(), CheckError> {
    check_node(d)?;
    for (n, p) in d.premises.iter().enumerate() {
        check(p).map_err(|e| e.under(n))?;
    }
    Ok(())
}

fn check_node(d: &HDerivation) -> Result<(), CheckError> {
    let fail = |msg: String| Err(CheckError::new(d.rule.name(), msg));
    let c = &d.conclusion;
    if c.antecedent.sort() != c.succedent.sort() {
        return fail(format!("ill-sorted sequent `{c}`"));
    }
    if d.premises.len() != d.rule.arity() {
        return fail(format!("expected {} premises, found {}", d.rule.arity(), d.premises.len()));
    }
    let given: Vec<&HSequent> = d.premises.iter().map(|p| &p.conclusion).collect();
    if d.rule == HRule::Cut {
        return check_cut(d, given[0], given[1]);
    }
    let mut found = Vec::new();
    instances(&c.tokens(), &c.succedent, d.rule, &mut found);
    if found.is_empty() {
        return fail(format!("rule does not apply to `{c}`"));
    }
    let ok = found
        .iter()
        .any(|i| d.params.matches(&i.params) && i.premises.iter().zip(&given).all(|(a, b)| a == *b));
    if ok {
        Ok(())
    } else {
        fail(format!("premises do not match any instance concluding `{c}`"))
    }
}

/// `Gamma => A` and `Delta<A> => B` give `Delta<Gamma> => B`; `params.at`
/// optionally fixes the cut occurrence's first token in the minor premise.
fn check_cut(d: &HDerivation, major: &HSequent, minor: &HSequent) -> Result<(), CheckError> {
    if minor.succedent != d.conclusion.succedent {
        return Err(CheckError::new("Cut", "succedent differs from the second premise"));
    }
    let gamma = major.tokens();
    let toks = minor.tokens();
    let want = d.conclusion.tokens();
    let f = Flat::new(&toks);
    for (q0, ty) in f.occurrences() {
        if *ty != major.succedent || d.params.at.is_some_and(|at| at != q0) {
            continue;
        }
        let last = *f.segments(q0).last().expect("nonempty");
        let filled = generalized_wrap_tokens(&gamma, &f.gaps(q0)).expect("sorts agree");
        let mut got = toks[..q0].to_vec();
        got.extend(filled);
        got.extend_from_slice(&toks[last + 1..]);
        if got == want {
            return Ok(());
        }
    }
    Err(CheckError::new("Cut", format!("no occurrence of `{}` in the second premise yields the conclusion", major.succedent)))
}
