//! The structural rules as rewrites on subterms.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::TermError;
use crate::term::{classify_indices, Path, Placement, Step, StructTerm};

/// A structural rule, read in one direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    /// `X ~> II + X`
    UnitILAdd,
    UnitILDrop,
    /// `X ~> X + II`
    UnitIRAdd,
    UnitIRDrop,
    /// `X ~> JJ +1 X`
    UnitJLAdd,
    UnitJLDrop,
    /// `X ~> X +i JJ`
    UnitJIAdd,
    UnitJIDrop,
    /// `(X + Y) + Z ~> X + (Y + Z)`
    AsscCFwd,
    AsscCBwd,
    /// `X + Y ~> (JJ + Y) +1 X`
    SwLeftFwd,
    SwLeftBwd,
    /// `X + Y ~> (X + JJ) +(x+1) Y`
    SwRightFwd,
    SwRightBwd,
    /// `T1 +i (T2 +j T3) ~> (T1 +i T2) +(i+j-1) T3`
    AsscD1,
    /// `(T1 +i T2) +j T3 ~> T1 +i (T2 +(j-i+1) T3)` when `T3` lands inside `T2`.
    AsscD2,
    /// `(T1 +i T2) +j T3 ~> (T1 +(j-t2+1) T3) +i T2` when `T2` precedes `T3`.
    MixPerm1Fwd,
    /// `(T1 +i T3) +j T2 ~> (T1 +j T2) +(i+t2-1) T3` when `j < i`.
    MixPerm1Bwd,
    /// `(T1 +i T2) +j T3 ~> (T1 +j T3) +(i+t3-1) T2` when `j < i`.
    MixPerm2Fwd,
    /// `(T1 +i T3) +j T2 ~> (T1 +(j-t3+1) T2) +i T3` when `T3` precedes `T2`.
    MixPerm2Bwd,
}

impl Rule {
    pub const ALL: [Rule; 20] = [
        Rule::UnitILAdd,
        Rule::UnitILDrop,
        Rule::UnitIRAdd,
        Rule::UnitIRDrop,
        Rule::UnitJLAdd,
        Rule::UnitJLDrop,
        Rule::UnitJIAdd,
        Rule::UnitJIDrop,
        Rule::AsscCFwd,
        Rule::AsscCBwd,
        Rule::SwLeftFwd,
        Rule::SwLeftBwd,
        Rule::SwRightFwd,
        Rule::SwRightBwd,
        Rule::AsscD1,
        Rule::AsscD2,
        Rule::MixPerm1Fwd,
        Rule::MixPerm1Bwd,
        Rule::MixPerm2Fwd,
        Rule::MixPerm2Bwd,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Rule::UnitILAdd => "UnitI-L-add",
            Rule::UnitILDrop => "UnitI-L-drop",
            Rule::UnitIRAdd => "UnitI-R-add",
            Rule::UnitIRDrop => "UnitI-R-drop",
            Rule::UnitJLAdd => "UnitJ-L-add",
            Rule::UnitJLDrop => "UnitJ-L-drop",
            Rule::UnitJIAdd => "UnitJ-i-add",
            Rule::UnitJIDrop => "UnitJ-i-drop",
            Rule::AsscCFwd => "AsscC-fwd",
            Rule::AsscCBwd => "AsscC-bwd",
            Rule::SwLeftFwd => "SW-left-fwd",
            Rule::SwLeftBwd => "SW-left-bwd",
            Rule::SwRightFwd => "SW-right-fwd",
            Rule::SwRightBwd => "SW-right-bwd",
            Rule::AsscD1 => "AsscD1",
            Rule::AsscD2 => "AsscD2",
            Rule::MixPerm1Fwd => "MixPerm1-fwd",
            Rule::MixPerm1Bwd => "MixPerm1-bwd",
            Rule::MixPerm2Fwd => "MixPerm2-fwd",
            Rule::MixPerm2Bwd => "MixPerm2-bwd",
        }
    }

    /// The rule read in the opposite direction.
    pub fn inverse(self) -> Rule {
        match self {
            Rule::UnitILAdd => Rule::UnitILDrop,
            Rule::UnitILDrop => Rule::UnitILAdd,
            Rule::UnitIRAdd => Rule::UnitIRDrop,
            Rule::UnitIRDrop => Rule::UnitIRAdd,
            Rule::UnitJLAdd => Rule::UnitJLDrop,
            Rule::UnitJLDrop => Rule::UnitJLAdd,
            Rule::UnitJIAdd => Rule::UnitJIDrop,
            Rule::UnitJIDrop => Rule::UnitJIAdd,
            Rule::AsscCFwd => Rule::AsscCBwd,
            Rule::AsscCBwd => Rule::AsscCFwd,
            Rule::SwLeftFwd => Rule::SwLeftBwd,
            Rule::SwLeftBwd => Rule::SwLeftFwd,
            Rule::SwRightFwd => Rule::SwRightBwd,
            Rule::SwRightBwd => Rule::SwRightFwd,
            Rule::AsscD1 => Rule::AsscD2,
            Rule::AsscD2 => Rule::AsscD1,
            Rule::MixPerm1Fwd => Rule::MixPerm1Bwd,
            Rule::MixPerm1Bwd => Rule::MixPerm1Fwd,
            Rule::MixPerm2Fwd => Rule::MixPerm2Bwd,
            Rule::MixPerm2Bwd => Rule::MixPerm2Fwd,
        }
    }

    /// True for the rules that introduce a unit constant.
    pub fn is_unit_add(self) -> bool {
        matches!(self, Rule::UnitILAdd | Rule::UnitIRAdd | Rule::UnitJLAdd | Rule::UnitJIAdd)
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Rule {
    type Err = TermError;

    fn from_str(s: &str) -> Result<Rule, TermError> {
        Rule::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| TermError::UnknownRule(s.to_string()))
    }
}

/// A rule applied at a position, with the indices its schema mentions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RuleApp {
    pub rule: Rule,
    pub at: Path,
    pub params: BTreeMap<String, usize>,
}

impl RuleApp {
    pub fn new(rule: Rule, at: Path) -> RuleApp {
        RuleApp { rule, at, params: BTreeMap::new() }
    }

    pub fn with(mut self, key: &str, value: usize) -> RuleApp {
        self.params.insert(key.to_string(), value);
        self
    }

    fn param(&self, key: &str) -> Option<usize> {
        self.params.get(key).copied()
    }
}

impl fmt::Display for RuleApp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at [{}]", self.rule, super::path_to_string(&self.at))?;
        for (k, v) in &self.params {
            write!(f, " {k}={v}")?;
        }
        Ok(())
    }
}

/// One rewrite step and the whole term it produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub app: RuleApp,
    pub result: StructTerm,
}

/// A sequence of rewrites from a start term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteTrace {
    pub start: StructTerm,
    pub steps: Vec<TraceStep>,
}

impl RewriteTrace {
    pub fn new(start: StructTerm) -> RewriteTrace {
        RewriteTrace { start, steps: Vec::new() }
    }

    pub fn end(&self) -> &StructTerm {
        self.steps.last().map_or(&self.start, |s| &s.result)
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Applies `app` to the current end and records it with completed parameters.
    pub fn push(&mut self, app: RuleApp) -> Result<&StructTerm, TermError> {
        let app = complete_params(self.end(), &app)?;
        let result = apply_rule(self.end(), &app)?;
        self.steps.push(TraceStep { app, result });
        Ok(self.end())
    }

    /// Appends every step of `other`, which must start where `self` ends.
    pub fn extend(&mut self, other: RewriteTrace) {
        debug_assert_eq!(self.end(), &other.start);
        self.steps.extend(other.steps);
    }

    /// Re-applies every step, returning the first failure.
    pub fn validate(&self) -> Result<(), TermError> {
        let mut t = self.start.clone();
        for step in &self.steps {
            t = apply_rule(&t, &step.app)?;
            if t != step.result {
                return Err(TermError::NotApplicable {
                    rule: step.app.rule.name().into(),
                    path: step.app.at.clone(),
                    msg: "recorded result differs from the rewrite".into(),
                });
            }
        }
        Ok(())
    }

    /// The same rewrites read backwards, from the end to the start.
    pub fn reversed(&self) -> RewriteTrace {
        let mut terms = vec![self.start.clone()];
        terms.extend(self.steps.iter().map(|s| s.result.clone()));
        let mut out = RewriteTrace::new(self.end().clone());
        for (n, step) in self.steps.iter().enumerate().rev() {
            let before = &terms[n];
            let after = &terms[n + 1];
            let mut app = RuleApp::new(step.app.rule.inverse(), step.app.at.clone());
            if app.rule == Rule::UnitJIAdd {
                if let Some(StructTerm::Wrap(i, _, _)) = before.get(&app.at) {
                    app = app.with("i", *i);
                }
            }
            let app = complete_params(after, &app).expect("inverse applies");
            out.steps.push(TraceStep { app, result: before.clone() });
        }
        out
    }
}

fn not_applicable(app: &RuleApp, msg: impl Into<String>) -> TermError {
    TermError::NotApplicable { rule: app.rule.name().into(), path: app.at.clone(), msg: msg.into() }
}

fn split(t: &StructTerm) -> Option<(&StructTerm, &StructTerm)> {
    match t {
        StructTerm::Cat(l, r) => Some((l, r)),
        _ => None,
    }
}

fn split_wrap(t: &StructTerm) -> Option<(usize, &StructTerm, &StructTerm)> {
    match t {
        StructTerm::Wrap(i, l, r) => Some((*i, l, r)),
        _ => None,
    }
}

/// The indices a rule mentions, as read off the subterm it rewrites.
fn shape_params(rule: Rule, s: &StructTerm) -> Option<Vec<(&'static str, usize)>> {
    Some(match rule {
        Rule::UnitJIDrop => {
            let (i, _, r) = split_wrap(s)?;
            (*r == StructTerm::J).then_some(())?;
            vec![("i", i)]
        }
        Rule::SwRightFwd => {
            let (x, _) = split(s)?;
            vec![("k", x.sort() + 1)]
        }
        Rule::SwRightBwd => vec![("k", split_wrap(s)?.0)],
        Rule::AsscD1 => {
            let (i, _, inner) = split_wrap(s)?;
            let (j, _, _) = split_wrap(inner)?;
            vec![("i", i), ("j", j)]
        }
        Rule::AsscD2 | Rule::MixPerm1Fwd | Rule::MixPerm1Bwd | Rule::MixPerm2Fwd | Rule::MixPerm2Bwd => {
            let (j, inner, _) = split_wrap(s)?;
            let (i, _, _) = split_wrap(inner)?;
            vec![("i", i), ("j", j)]
        }
        _ => Vec::new(),
    })
}

/// Fills in the parameters implied by the subterm at `app.at`.
pub fn complete_params(t: &StructTerm, app: &RuleApp) -> Result<RuleApp, TermError> {
    let s = t.get(&app.at).ok_or_else(|| TermError::BadPath(app.at.clone()))?;
    let mut out = app.clone();
    if let Some(params) = shape_params(app.rule, s) {
        for (k, v) in params {
            out.params.entry(k.to_string()).or_insert(v);
        }
    }
    Ok(out)
}

/// Rewrites the subterm at `app.at` by `app.rule`. Parameters, when given, must
/// agree with the subterm; `UnitJ-i-add` requires `i`.
pub fn apply_rule(t: &StructTerm, app: &RuleApp) -> Result<StructTerm, TermError> {
    let s = t.get(&app.at).ok_or_else(|| TermError::BadPath(app.at.clone()))?;
    let expected = shape_params(app.rule, s).ok_or_else(|| not_applicable(app, "shape mismatch"))?;
    for (key, value) in &app.params {
        let allowed = expected.iter().find(|(k, _)| k == key).map(|(_, v)| *v);
        match allowed {
            Some(v) if v == *value => {}
            Some(v) => {
                return Err(not_applicable(app, format!("parameter {key}={value}, subterm has {v}")))
            }
            None if app.rule == Rule::UnitJIAdd && key == "i" => {}
            None => return Err(not_applicable(app, format!("unexpected parameter `{key}`"))),
        }
    }
    let new = rewrite(s, app)?;
    debug_assert_eq!(new.sort(), s.sort());
    Ok(t.replace(&app.at, new).expect("rewrites preserve sort"))
}

fn wrap(app: &RuleApp, i: usize, l: StructTerm, r: StructTerm) -> Result<StructTerm, TermError> {
    StructTerm::wrap(i, l, r).map_err(|e| not_applicable(app, e.to_string()))
}

fn rewrite(s: &StructTerm, app: &RuleApp) -> Result<StructTerm, TermError> {
    use StructTerm::{Cat, Wrap, I, J};
    let shape = || not_applicable(app, "shape mismatch");
    Ok(match app.rule {
        Rule::UnitILAdd => StructTerm::cat(I, s.clone()),
        Rule::UnitILDrop => match s {
            Cat(l, r) if **l == I => (**r).clone(),
            _ => return Err(shape()),
        },
        Rule::UnitIRAdd => StructTerm::cat(s.clone(), I),
        Rule::UnitIRDrop => match s {
            Cat(l, r) if **r == I => (**l).clone(),
            _ => return Err(shape()),
        },
        Rule::UnitJLAdd => wrap(app, 1, J, s.clone())?,
        Rule::UnitJLDrop => match s {
            Wrap(1, l, r) if **l == J => (**r).clone(),
            _ => return Err(shape()),
        },
        Rule::UnitJIAdd => {
            let i = app.param("i").ok_or_else(|| TermError::MissingParam {
                rule: app.rule.name().into(),
                param: "i".into(),
            })?;
            wrap(app, i, s.clone(), J)?
        }
        Rule::UnitJIDrop => match s {
            Wrap(_, l, r) if **r == J => (**l).clone(),
            _ => return Err(shape()),
        },
        Rule::AsscCFwd => match s {
            Cat(xy, z) => match &**xy {
                Cat(x, y) => StructTerm::cat((**x).clone(), StructTerm::cat((**y).clone(), (**z).clone())),
                _ => return Err(shape()),
            },
            _ => return Err(shape()),
        },
        Rule::AsscCBwd => match s {
            Cat(x, yz) => match &**yz {
                Cat(y, z) => StructTerm::cat(StructTerm::cat((**x).clone(), (**y).clone()), (**z).clone()),
                _ => return Err(shape()),
            },
            _ => return Err(shape()),
        },
        Rule::SwLeftFwd => match s {
            Cat(x, y) => wrap(app, 1, StructTerm::cat(J, (**y).clone()), (**x).clone())?,
            _ => return Err(shape()),
        },
        Rule::SwLeftBwd => match s {
            Wrap(1, jy, x) => match &**jy {
                Cat(j, y) if **j == J => StructTerm::cat((**x).clone(), (**y).clone()),
                _ => return Err(shape()),
            },
            _ => return Err(shape()),
        },
        Rule::SwRightFwd => match s {
            Cat(x, y) => wrap(app, x.sort() + 1, StructTerm::cat((**x).clone(), J), (**y).clone())?,
            _ => return Err(shape()),
        },
        Rule::SwRightBwd => match s {
            Wrap(k, xj, y) => match &**xj {
                Cat(x, j) if **j == J && *k == x.sort() + 1 => StructTerm::cat((**x).clone(), (**y).clone()),
                Cat(_, j) if **j == J => return Err(not_applicable(app, "index is not sort of left part plus one")),
                _ => return Err(shape()),
            },
            _ => return Err(shape()),
        },
        Rule::AsscD1 => match s {
            Wrap(i, t1, inner) => match &**inner {
                Wrap(j, t2, t3) => {
                    let left = wrap(app, *i, (**t1).clone(), (**t2).clone())?;
                    wrap(app, i + j - 1, left, (**t3).clone())?
                }
                _ => return Err(shape()),
            },
            _ => return Err(shape()),
        },
        Rule::AsscD2
        | Rule::MixPerm1Fwd
        | Rule::MixPerm1Bwd
        | Rule::MixPerm2Fwd
        | Rule::MixPerm2Bwd => {
            let (j, inner, outer_right) = split_wrap(s).ok_or_else(shape)?;
            let (i, t1, inner_right) = split_wrap(inner).ok_or_else(shape)?;
            let (t1, mid, out) = (t1.clone(), inner_right.clone(), outer_right.clone());
            let placement = classify_indices(i, mid.sort(), j);
            let need = |p: Placement| -> Result<(), TermError> {
                if placement == p {
                    Ok(())
                } else {
                    Err(not_applicable(app, format!("placement is {placement:?}, rule needs {p:?}")))
                }
            };
            match app.rule {
                Rule::AsscD2 => {
                    need(Placement::O)?;
                    let right = wrap(app, j - i + 1, mid, out)?;
                    wrap(app, i, t1, right)?
                }
                Rule::MixPerm1Fwd => {
                    need(Placement::P1)?;
                    let left = wrap(app, j + 1 - mid.sort(), t1, out)?;
                    wrap(app, i, left, mid)?
                }
                Rule::MixPerm1Bwd => {
                    need(Placement::P2)?;
                    let t2 = out;
                    let t3 = mid;
                    let shift = i + t2.sort() - 1;
                    let left = wrap(app, j, t1, t2)?;
                    wrap(app, shift, left, t3)?
                }
                Rule::MixPerm2Fwd => {
                    need(Placement::P2)?;
                    let shift = i + out.sort() - 1;
                    let left = wrap(app, j, t1, out)?;
                    wrap(app, shift, left, mid)?
                }
                Rule::MixPerm2Bwd => {
                    need(Placement::P1)?;
                    let t2 = out;
                    let t3 = mid;
                    let left = wrap(app, j + 1 - t3.sort(), t1, t2)?;
                    wrap(app, i, left, t3)?
                }
                _ => unreachable!("outer match"),
            }
        }
    })
}

/// Cheap test of the outer constructors a rule needs.
fn shape_ok(rule: Rule, s: &StructTerm) -> bool {
    use StructTerm::{Cat, Wrap, I, J};
    match rule {
        Rule::UnitILAdd | Rule::UnitIRAdd | Rule::UnitJLAdd | Rule::UnitJIAdd => true,
        Rule::UnitILDrop => matches!(s, Cat(l, _) if **l == I),
        Rule::UnitIRDrop => matches!(s, Cat(_, r) if **r == I),
        Rule::UnitJLDrop => matches!(s, Wrap(1, l, _) if **l == J),
        Rule::UnitJIDrop => matches!(s, Wrap(_, _, r) if **r == J),
        Rule::AsscCFwd => matches!(s, Cat(l, _) if matches!(**l, Cat(..))),
        Rule::AsscCBwd => matches!(s, Cat(_, r) if matches!(**r, Cat(..))),
        Rule::SwLeftFwd | Rule::SwRightFwd => matches!(s, Cat(..)),
        Rule::SwLeftBwd => matches!(s, Wrap(1, l, _) if matches!(&**l, Cat(j, _) if **j == J)),
        Rule::SwRightBwd => matches!(s, Wrap(k, l, _) if matches!(&**l, Cat(x, j) if **j == J && *k == x.sort() + 1)),
        Rule::AsscD1 => matches!(s, Wrap(_, _, r) if matches!(**r, Wrap(..))),
        Rule::AsscD2 | Rule::MixPerm1Fwd | Rule::MixPerm1Bwd | Rule::MixPerm2Fwd | Rule::MixPerm2Bwd => {
            let Wrap(j, inner, _) = s else { return false };
            let Wrap(i, _, mid) = &**inner else { return false };
            let want = match rule {
                Rule::AsscD2 => Placement::O,
                Rule::MixPerm1Fwd | Rule::MixPerm2Bwd => Placement::P1,
                _ => Placement::P2,
            };
            classify_indices(*i, mid.sort(), *j) == want
        }
    }
}

/// Every applicable rule instance with its result, as in [`applicable_rules`].
pub fn successors(t: &StructTerm, with_adds: bool) -> Vec<(RuleApp, StructTerm)> {
    applicable_rules(t, with_adds)
        .into_iter()
        .map(|app| {
            let s = t.get(&app.at).expect("listed path");
            let new = rewrite(s, &app).expect("listed rules apply");
            let next = t.replace(&app.at, new).expect("rewrites preserve sort");
            (app, next)
        })
        .collect()
}

/// Every rule instance that applies somewhere in `t`. `UnitJ-i-add` is listed
/// once per admissible `i`; the unit-adding rules are included only when
/// `with_adds` is set.
pub fn applicable_rules(t: &StructTerm, with_adds: bool) -> Vec<RuleApp> {
    let mut out = Vec::new();
    let mut stack: Vec<(Path, &StructTerm)> = vec![(Vec::new(), t)];
    while let Some((path, s)) = stack.pop() {
        for rule in Rule::ALL {
            if rule.is_unit_add() {
                if !with_adds {
                    continue;
                }
                if rule == Rule::UnitJIAdd {
                    for i in 1..=s.sort() {
                        out.push(RuleApp::new(rule, path.clone()).with("i", i));
                    }
                    continue;
                }
            }
            let app = RuleApp::new(rule, path.clone());
            if shape_ok(rule, s) && rewrite(s, &app).is_ok() {
                let app = complete_params(t, &app).expect("path resolves");
                out.push(app);
            }
        }
        if let StructTerm::Cat(l, r) | StructTerm::Wrap(_, l, r) = s {
            let mut lp = path.clone();
            lp.push(Step::Left);
            let mut rp = path;
            rp.push(Step::Right);
            stack.push((rp, r));
            stack.push((lp, l));
        }
    }
    out
}
