#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use displace_core::hd::{HDerivation, HParams, HRule, HSequent};
use displace_core::md::{MDerivation, MParams, MRule, MSequent};
use displace_core::syntax::{HyperConfig, Item, Signature, Token, Type, TypeKind};
use displace_core::term::{apply_rule, complete_params, sharp_tokens, Path, Rule, RuleApp, Step, StructTerm};

pub mod lambek;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn sig() -> Signature {
    Signature::from_pairs([("a", 0), ("b", 0), ("c", 0), ("e", 1), ("d", 2), ("f", 3)]).unwrap()
}

pub fn atom(name: &str) -> Type {
    sig().atom(name).unwrap()
}

pub fn atoms_up_to(max_sort: usize) -> Vec<Type> {
    let s = sig();
    s.iter().filter(|(_, k)| *k <= max_sort).map(|(n, _)| s.atom(n).unwrap()).collect()
}

// random types and terms

/// A well-sorted type with at most `depth` nested connectives and sort at most `max_sort`.
pub fn random_type(rng: &mut impl Rng, depth: usize, max_sort: usize) -> Type {
    let atoms = atoms_up_to(max_sort.min(2));
    loop {
        let t = type_attempt(rng, depth, &atoms);
        if t.sort() <= max_sort {
            return t;
        }
    }
}

fn type_attempt(rng: &mut impl Rng, depth: usize, atoms: &[Type]) -> Type {
    if depth == 0 || rng.gen_bool(0.35) {
        return match rng.gen_range(0..12) {
            0 => Type::unit_i(),
            1 => Type::unit_j(),
            _ => atoms.choose(rng).unwrap().clone(),
        };
    }
    loop {
        let a = type_attempt(rng, depth - 1, atoms);
        let b = type_attempt(rng, depth - 1, atoms);
        let k = rng.gen_range(1..=3);
        let made = match rng.gen_range(0..6) {
            0 => Ok(Type::prod(a, b)),
            1 => Type::under(a, b),
            2 => Type::over(a, b),
            3 => Type::dprod(k, a, b),
            4 => Type::ddown(k, a, b),
            _ => Type::dup(k, a, b),
        };
        if let Ok(t) = made {
            return t;
        }
    }
}

/// A random well-formed term of height at most `depth` over `leaves`.
pub fn random_term(rng: &mut impl Rng, depth: usize, leaves: &[StructTerm]) -> StructTerm {
    if depth == 0 || rng.gen_bool(0.25) {
        return leaves.choose(rng).unwrap().clone();
    }
    let l = random_term(rng, depth - 1, leaves);
    let r = random_term(rng, depth - 1, leaves);
    if l.sort() > 0 && rng.gen_bool(0.5) {
        let i = rng.gen_range(1..=l.sort());
        StructTerm::wrap(i, l, r).unwrap()
    } else {
        StructTerm::cat(l, r)
    }
}

/// Atom leaves of sort at most `max_sort`, plus both units.
pub fn term_leaves(max_sort: usize) -> Vec<StructTerm> {
    let mut out = vec![StructTerm::I, StructTerm::J];
    out.extend(atoms_up_to(max_sort).into_iter().map(StructTerm::Leaf));
    out
}

/// A random hyperconfiguration with at most `budget` items in total and at
/// most `nesting` levels of occurrences inside gaps.
pub fn random_config(rng: &mut impl Rng, budget: &mut usize, nesting: usize) -> HyperConfig {
    let mut items = Vec::new();
    let want = rng.gen_range(0..=4);
    for _ in 0..want {
        if *budget == 0 {
            break;
        }
        *budget -= 1;
        let item = match rng.gen_range(0..5) {
            0 => Item::Sep,
            1 | 2 if nesting > 0 => {
                let ty = loop {
                    let t = random_type(rng, 2, 3);
                    if t.sort() > 0 {
                        break t;
                    }
                };
                let gaps = (0..ty.sort()).map(|_| random_config(rng, budget, nesting - 1)).collect();
                Item::Occ { ty, gaps }
            }
            _ => loop {
                let t = random_type(rng, 2, 0);
                if t.sort() == 0 {
                    break Item::Leaf(t);
                }
            },
        };
        items.push(item);
    }
    HyperConfig::from_items(items).unwrap()
}

/// The separator index of the leaf at `path`, read off the translation with
/// the leaf replaced by a fresh atom.
pub fn separator_index(t: &StructTerm, path: &[Step]) -> usize {
    let Some(StructTerm::Leaf(ty)) = t.get(path) else { panic!("not a leaf") };
    let fresh = Type::var("zz_fresh", ty.sort()).unwrap();
    let marked = t.replace(path, StructTerm::Leaf(fresh.clone())).unwrap();
    let toks = sharp_tokens(&marked);
    let first = toks
        .iter()
        .position(|tok| matches!(tok, Token::Leaf(x) | Token::Seg(x, 0) if *x == fresh))
        .unwrap();
    toks[..first].iter().filter(|tok| tok.is_sep()).count() + 1
}

// tree-form occurrences and substitution

/// Gap steps `(item, gap)` followed by an item index.
pub type Addr = (Vec<(usize, usize)>, usize);

pub fn occurrences(cfg: &HyperConfig) -> Vec<Addr> {
    fn go(cfg: &HyperConfig, prefix: &mut Vec<(usize, usize)>, out: &mut Vec<Addr>) {
        for (n, item) in cfg.items().iter().enumerate() {
            match item {
                Item::Sep => {}
                Item::Leaf(_) => out.push((prefix.clone(), n)),
                Item::Occ { gaps, .. } => {
                    out.push((prefix.clone(), n));
                    for (g, gap) in gaps.iter().enumerate() {
                        prefix.push((n, g));
                        go(gap, prefix, out);
                        prefix.pop();
                    }
                }
            }
        }
    }
    let mut out = Vec::new();
    go(cfg, &mut Vec::new(), &mut out);
    out
}

fn level<'a>(cfg: &'a HyperConfig, steps: &[(usize, usize)]) -> &'a HyperConfig {
    match steps.split_first() {
        None => cfg,
        Some((&(n, g), rest)) => match &cfg.items()[n] {
            Item::Occ { gaps, .. } => level(&gaps[g], rest),
            _ => panic!("bad address"),
        },
    }
}

/// The type and gap contents of the occurrence at `addr`.
pub fn occurrence(cfg: &HyperConfig, addr: &Addr) -> (Type, Vec<HyperConfig>) {
    match &level(cfg, &addr.0).items()[addr.1] {
        Item::Leaf(t) => (t.clone(), Vec::new()),
        Item::Occ { ty, gaps } => (ty.clone(), gaps.clone()),
        Item::Sep => panic!("separator"),
    }
}

/// Replaces the item at `addr` by `new` items, spliced in place.
fn splice(cfg: &HyperConfig, steps: &[(usize, usize)], n: usize, new: Vec<Item>) -> HyperConfig {
    let mut items = cfg.items().to_vec();
    match steps.split_first() {
        None => {
            items.splice(n..=n, new);
        }
        Some((&(m, g), rest)) => {
            let Item::Occ { ty, gaps } = &items[m] else { panic!("bad address") };
            let mut gaps = gaps.clone();
            gaps[g] = splice(&gaps[g], rest, n, new);
            items[m] = Item::Occ { ty: ty.clone(), gaps };
        }
    }
    canonical(HyperConfig::from_items(items).unwrap())
}

pub fn canonical(cfg: HyperConfig) -> HyperConfig {
    HyperConfig::parse_flat(&cfg.flatten()).unwrap()
}

/// `Delta<X>`: the occurrence at `addr` is replaced by `x` with its
/// separators filled by the occurrence's gap contents.
pub fn substitute(cfg: &HyperConfig, addr: &Addr, x: &HyperConfig) -> Option<HyperConfig> {
    let (_, gaps) = occurrence(cfg, addr);
    let filled = x.generalized_wrap(&gaps).ok()?;
    Some(splice(cfg, &addr.0, addr.1, filled.into_items()))
}

/// Every way of reading `cfg` as `Delta<A>` for some occurrence of `ty`.
fn occurrences_of(cfg: &HyperConfig, ty: &Type) -> Vec<Addr> {
    occurrences(cfg).into_iter().filter(|a| occurrence(cfg, a).0 == *ty).collect()
}

/// Positions between items at every level, as `(level steps, insertion index)`.
fn slots(cfg: &HyperConfig) -> Vec<(Vec<(usize, usize)>, usize)> {
    fn go(cfg: &HyperConfig, prefix: &mut Vec<(usize, usize)>, out: &mut Vec<(Vec<(usize, usize)>, usize)>) {
        for n in 0..=cfg.items().len() {
            out.push((prefix.clone(), n));
        }
        for (n, item) in cfg.items().iter().enumerate() {
            if let Item::Occ { gaps, .. } = item {
                for (g, gap) in gaps.iter().enumerate() {
                    prefix.push((n, g));
                    go(gap, prefix, out);
                    prefix.pop();
                }
            }
        }
    }
    let mut out = Vec::new();
    go(cfg, &mut Vec::new(), &mut out);
    out
}

fn insert_at(cfg: &HyperConfig, steps: &[(usize, usize)], n: usize, new: Vec<Item>) -> HyperConfig {
    let mut items = cfg.items().to_vec();
    match steps.split_first() {
        None => {
            items.splice(n..n, new);
        }
        Some((&(m, g), rest)) => {
            let Item::Occ { ty, gaps } = &items[m] else { panic!("bad address") };
            let mut gaps = gaps.clone();
            gaps[g] = insert_at(&gaps[g], rest, n, new);
            items[m] = Item::Occ { ty: ty.clone(), gaps };
        }
    }
    canonical(HyperConfig::from_items(items).unwrap())
}

/// Separator items at every level, addressed like occurrences.
fn separators(cfg: &HyperConfig) -> Vec<Addr> {
    fn go(cfg: &HyperConfig, prefix: &mut Vec<(usize, usize)>, out: &mut Vec<Addr>) {
        for (n, item) in cfg.items().iter().enumerate() {
            match item {
                Item::Sep => out.push((prefix.clone(), n)),
                Item::Leaf(_) => {}
                Item::Occ { gaps, .. } => {
                    for (g, gap) in gaps.iter().enumerate() {
                        prefix.push((n, g));
                        go(gap, prefix, out);
                        prefix.pop();
                    }
                }
            }
        }
    }
    let mut out = Vec::new();
    go(cfg, &mut Vec::new(), &mut out);
    out
}

fn fig(t: &Type) -> HyperConfig {
    HyperConfig::figure(t)
}

fn seq(cfg: HyperConfig, ty: Type) -> Option<HSequent> {
    HSequent::new(canonical(cfg), ty).ok()
}

/// Whether `concl` follows from `prem` by one application of `rule`, by the
/// rule schemas read on tree-form configurations.
pub fn sound_instance(rule: HRule, concl: &HSequent, prem: &[HSequent]) -> bool {
    use HRule::*;
    let x = canonical(concl.antecedent.clone());
    let c = &concl.succedent;
    let same = |cfg: Option<HyperConfig>, ty: &Type, p: &HSequent| {
        cfg.is_some_and(|cfg| canonical(cfg) == canonical(p.antecedent.clone())) && *ty == p.succedent
    };
    match (rule, c.kind(), prem) {
        (Id, _, []) => x == fig(c),
        (IR, TypeKind::UnitI, []) => x.is_empty(),
        (JR, TypeKind::UnitJ, []) => x == HyperConfig::sep(),
        (UnderR, TypeKind::Under(a, b), [p]) => same(Some(fig(a).concat(&x)), b, p),
        (OverR, TypeKind::Over(b, a), [p]) => same(Some(x.concat(&fig(a))), b, p),
        (UpR, TypeKind::DUp(k, b, a), [p]) => same(x.wrap_at(*k, &fig(a)).ok(), b, p),
        (DownR, TypeKind::DDown(k, a, b), [p]) => same(fig(a).wrap_at(*k, &x).ok(), b, p),
        (ProdR, TypeKind::Prod(a, b), [p, q]) => {
            p.succedent == *a && q.succedent == *b && canonical(p.antecedent.concat(&q.antecedent)) == x
        }
        (DProdR, TypeKind::DProd(k, a, b), [p, q]) => {
            p.succedent == *a
                && q.succedent == *b
                && p.antecedent.wrap_at(*k, &q.antecedent).is_ok_and(|w| canonical(w) == x)
        }
        (IL | JL | ProdL | DProdL, _, [p]) => occurrences(&x).iter().any(|addr| {
            let (ty, _) = occurrence(&x, addr);
            let replacement = match (rule, ty.kind()) {
                (IL, TypeKind::UnitI) => HyperConfig::empty(),
                (JL, TypeKind::UnitJ) => HyperConfig::sep(),
                (ProdL, TypeKind::Prod(a, b)) => fig(a).concat(&fig(b)),
                (DProdL, TypeKind::DProd(k, a, b)) => match fig(a).wrap_at(*k, &fig(b)) {
                    Ok(w) => w,
                    Err(_) => return false,
                },
                _ => return false,
            };
            same(substitute(&x, addr, &replacement), c, p)
        }),
        (UnderL | OverL | UpL | DownL | Cut, _, [p, q]) => {
            if q.succedent != *c {
                return false;
            }
            let gamma = &p.antecedent;
            let a = &p.succedent;
            occurrences(&q.antecedent).iter().any(|addr| {
                let (b, _) = occurrence(&q.antecedent, addr);
                let xs: Vec<HyperConfig> = match rule {
                    Cut if b == *a => vec![gamma.clone()],
                    Cut => vec![],
                    UnderL => Type::under(a.clone(), b.clone()).map(|t| gamma.concat(&fig(&t))).into_iter().collect(),
                    OverL => Type::over(b.clone(), a.clone()).map(|t| fig(&t).concat(gamma)).into_iter().collect(),
                    UpL => (1..=b.sort() + 1)
                        .filter_map(|k| Type::dup(k, b.clone(), a.clone()).ok().and_then(|t| fig(&t).wrap_at(k, gamma).ok()))
                        .collect(),
                    DownL => (1..=gamma.sort().max(1))
                        .filter_map(|k| Type::ddown(k, a.clone(), b.clone()).ok().and_then(|t| gamma.wrap_at(k, &fig(&t)).ok()))
                        .collect(),
                    _ => unreachable!(),
                };
                xs.iter().any(|xx| substitute(&q.antecedent, addr, xx).is_some_and(|r| canonical(r) == x))
            })
        }
        _ => false,
    }
}

// forward random derivations

fn node(rule: HRule, conclusion: HSequent, premises: Vec<HDerivation>) -> HDerivation {
    HDerivation { rule, conclusion, premises, params: HParams::default() }
}

fn axiom(rng: &mut impl Rng) -> HDerivation {
    match rng.gen_range(0..10) {
        0 => node(HRule::IR, seq(HyperConfig::empty(), Type::unit_i()).unwrap(), vec![]),
        1 => node(HRule::JR, seq(HyperConfig::sep(), Type::unit_j()).unwrap(), vec![]),
        2 => {
            let t = random_type(rng, 1, 2);
            node(HRule::Id, seq(fig(&t), t).unwrap(), vec![])
        }
        _ => {
            let t = atoms_up_to(2).choose(rng).unwrap().clone();
            node(HRule::Id, seq(fig(&t), t).unwrap(), vec![])
        }
    }
}

/// Bare figure items at the top level: a leaf, or an occurrence whose gaps are single separators.
fn bare(item: &Item) -> Option<Type> {
    match item {
        Item::Leaf(t) => Some(t.clone()),
        Item::Occ { ty, gaps } if gaps.iter().all(|g| *g == HyperConfig::sep()) => Some(ty.clone()),
        _ => None,
    }
}

/// One random forward rule application to derivations from `pool`.
fn forward(rng: &mut impl Rng, pool: &[HDerivation]) -> Option<HDerivation> {
    let d = pool.choose(rng)?.clone();
    let e = pool.choose(rng)?.clone();
    let x = d.conclusion.antecedent.clone();
    let c = d.conclusion.succedent.clone();
    let k_of = |rng: &mut dyn rand::RngCore, n: usize| if n == 0 { None } else { Some(rng.gen_range(1..=n)) };
    match rng.gen_range(0..14) {
        0 => {
            let cfg = d.conclusion.antecedent.concat(&e.conclusion.antecedent);
            Some(node(HRule::ProdR, seq(cfg, Type::prod(c, e.conclusion.succedent.clone()))?, vec![d, e]))
        }
        1 => {
            let k = k_of(rng, c.sort())?;
            let cfg = x.wrap_at(k, &e.conclusion.antecedent).ok()?;
            let t = Type::dprod(k, c, e.conclusion.succedent.clone()).ok()?;
            Some(node(HRule::DProdR, seq(cfg, t)?, vec![d, e]))
        }
        2 => {
            let a = bare(x.items().first()?)?;
            let rest = HyperConfig::from_items(x.items()[1..].to_vec()).ok()?;
            Some(node(HRule::UnderR, seq(rest, Type::under(a, c).ok()?)?, vec![d]))
        }
        3 => {
            let a = bare(x.items().last()?)?;
            let rest = HyperConfig::from_items(x.items()[..x.items().len() - 1].to_vec()).ok()?;
            Some(node(HRule::OverR, seq(rest, Type::over(c, a).ok()?)?, vec![d]))
        }
        4 => {
            // Delta |_k A => B  gives  Delta => B ^k A
            let occs = occurrences(&x);
            let addr = occs.choose(rng)?;
            let (a, gaps) = occurrence(&x, addr);
            if gaps.iter().any(|g| *g != HyperConfig::sep()) {
                return None;
            }
            let delta = splice(&x, &addr.0, addr.1, vec![Item::Sep]);
            let k = (1..=delta.sort()).find(|&k| delta.wrap_at(k, &fig(&a)).is_ok_and(|w| canonical(w) == canonical(x.clone())))?;
            Some(node(HRule::UpR, seq(delta, Type::dup(k, c, a).ok()?)?, vec![d]))
        }
        5 => {
            // A |_k Delta => B  gives  Delta => A !k B
            let [Item::Occ { ty, gaps }] = x.items() else { return None };
            let k = k_of(rng, gaps.len())?;
            if gaps.iter().enumerate().any(|(n, g)| n + 1 != k && *g != HyperConfig::sep()) {
                return None;
            }
            let delta = gaps[k - 1].clone();
            Some(node(HRule::DownR, seq(delta, Type::ddown(k, ty.clone(), c).ok()?)?, vec![d]))
        }
        6..=9 => {
            // two-premise left rules and Cut: d is the minor premise Gamma => A
            let q = &e.conclusion;
            let addr = occurrences(&q.antecedent).choose(rng)?.clone();
            let (b, _) = occurrence(&q.antecedent, &addr);
            let gamma = &x;
            let (rule, xx) = match rng.gen_range(0..5) {
                0 => (HRule::UnderL, gamma.concat(&fig(&Type::under(c.clone(), b).ok()?))),
                1 => (HRule::OverL, fig(&Type::over(b, c.clone()).ok()?).concat(gamma)),
                2 => {
                    let k = rng.gen_range(1..=b.sort() + 1);
                    (HRule::UpL, fig(&Type::dup(k, b, c.clone()).ok()?).wrap_at(k, gamma).ok()?)
                }
                3 => {
                    let k = k_of(rng, gamma.sort())?;
                    (HRule::DownL, gamma.wrap_at(k, &fig(&Type::ddown(k, c.clone(), b).ok()?)).ok()?)
                }
                _ => {
                    // cut against an occurrence of the succedent, when there is one
                    let addr = occurrences_of(&q.antecedent, &c).choose(rng)?.clone();
                    let cfg = substitute(&q.antecedent, &addr, gamma)?;
                    return Some(node(HRule::Cut, seq(cfg, q.succedent.clone())?, vec![d, e]));
                }
            };
            let cfg = substitute(&q.antecedent, &addr, &xx)?;
            Some(node(rule, seq(cfg, q.succedent.clone())?, vec![d, e]))
        }
        10 => {
            let (steps, n) = slots(&x).choose(rng)?.clone();
            let cfg = insert_at(&x, &steps, n, vec![Item::Leaf(Type::unit_i())]);
            Some(node(HRule::IL, seq(cfg, c)?, vec![d]))
        }
        11 => {
            let addr = separators(&x).choose(rng)?.clone();
            let j = Item::Occ { ty: Type::unit_j(), gaps: vec![HyperConfig::sep()] };
            let cfg = splice(&x, &addr.0, addr.1, vec![j]);
            Some(node(HRule::JL, seq(cfg, c)?, vec![d]))
        }
        12 => {
            // adjacent bare figures A, B at the top level become A.B
            let items = x.items();
            let n = rng.gen_range(0..items.len().max(1));
            let (a, b) = (bare(items.get(n)?)?, bare(items.get(n + 1)?)?);
            let mut new = items[..n].to_vec();
            new.extend(fig(&Type::prod(a, b)).into_items());
            new.extend_from_slice(&items[n + 2..]);
            Some(node(HRule::ProdL, seq(HyperConfig::from_items(new).ok()?, c)?, vec![d]))
        }
        _ => {
            // A |_k B as a bare top-level item becomes A @k B
            let items = x.items();
            let n = rng.gen_range(0..items.len().max(1));
            let Item::Occ { ty, gaps } = items.get(n)? else { return None };
            let k = (1..=gaps.len()).find(|&k| {
                bare_config(&gaps[k - 1]).is_some()
                    && gaps.iter().enumerate().all(|(m, g)| m + 1 == k || *g == HyperConfig::sep())
            })?;
            let b = bare_config(&gaps[k - 1])?;
            let t = Type::dprod(k, ty.clone(), b).ok()?;
            let mut new = items[..n].to_vec();
            new.extend(fig(&t).into_items());
            new.extend_from_slice(&items[n + 1..]);
            Some(node(HRule::DProdL, seq(HyperConfig::from_items(new).ok()?, c)?, vec![d]))
        }
    }
}

fn bare_config(cfg: &HyperConfig) -> Option<Type> {
    match cfg.items() {
        [item] => bare(item),
        _ => None,
    }
}

/// A derivation built bottom-up by random forward rule applications, of height
/// at most `depth` and antecedent length at most `max_tokens`.
pub fn random_derivation(rng: &mut impl Rng, depth: usize, max_tokens: usize) -> HDerivation {
    let mut levels: Vec<Vec<HDerivation>> = vec![(0..6).map(|_| axiom(rng)).collect()];
    for _ in 1..depth {
        let pool: Vec<HDerivation> = levels.iter().flatten().cloned().collect();
        let mut next = Vec::new();
        for _ in 0..200 {
            if next.len() >= 6 {
                break;
            }
            if let Some(d) = forward(rng, &pool) {
                if d.conclusion.tokens().len() <= max_tokens && d.conclusion.succedent.size() <= 9 {
                    next.push(d);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        levels.push(next);
    }
    let top = levels.iter().rev().find(|l| !l.is_empty()).unwrap();
    top.choose(rng).unwrap().clone()
}

// the worked example

pub fn worked_signature() -> Signature {
    Signature::from_pairs([("a", 0), ("b", 2), ("c", 0), ("d", 2), ("e", 1)]).unwrap()
}

fn wsig(name: &str) -> Type {
    worked_signature().atom(name).unwrap()
}

pub fn parse_h(src: &str) -> HSequent {
    let (g, t) = displace_core::syntax::parse_hsequent(src, &worked_signature()).unwrap();
    HSequent::new(g, t).unwrap()
}

pub fn parse_m(src: &str) -> MSequent {
    let (x, t) = displace_core::syntax::parse_msequent(src, &worked_signature()).unwrap();
    MSequent::new(x, t).unwrap()
}

pub const HSDER_END: &str =
    "0:(b^2a), 0:d, [], 1:d, [], 2:d, 1:(b^2a), [], c\\a, 2:(b^2a), 0:e, [], 1:e, 3:(b^2a) => ((b@1d)@3e)^3c";
pub const MMDER_END: &str = "(((b^2a +1 d) +4 e) +3 (JJ + c\\a)) -> ((b@1d)@3e)^3c";

fn h_id(name: &str) -> HDerivation {
    let t = wsig(name);
    node(HRule::Id, HSequent::new(fig(&t), t).unwrap(), vec![])
}

/// The hypersequent derivation of the worked example, built by hand.
pub fn golden_hsder() -> HDerivation {
    let under = node(HRule::UnderL, parse_h("c, c\\a => a"), vec![h_id("c"), h_id("a")]);
    let up = node(HRule::UpL, parse_h("0:(b^2a), [], 1:(b^2a), a, 2:(b^2a), [], 3:(b^2a) => b"), vec![h_id("a"), h_id("b")]);
    let cut = node(HRule::Cut, parse_h("0:(b^2a), [], 1:(b^2a), c, c\\a, 2:(b^2a), [], 3:(b^2a) => b"), vec![under, up]);
    let d1 = node(
        HRule::DProdR,
        parse_h("0:(b^2a), 0:d, [], 1:d, [], 2:d, 1:(b^2a), c, c\\a, 2:(b^2a), [], 3:(b^2a) => b@1d"),
        vec![cut, h_id("d")],
    );
    let d3 = node(
        HRule::DProdR,
        parse_h("0:(b^2a), 0:d, [], 1:d, [], 2:d, 1:(b^2a), c, c\\a, 2:(b^2a), 0:e, [], 1:e, 3:(b^2a) => (b@1d)@3e"),
        vec![d1, h_id("e")],
    );
    node(HRule::UpR, parse_h(HSDER_END), vec![d3])
}

fn m_node(rule: HRule, src: &str, premises: Vec<MDerivation>) -> MDerivation {
    MDerivation { rule: MRule::Logical(rule), conclusion: parse_m(src), premises, params: MParams::default() }
}

fn m_id(name: &str) -> MDerivation {
    let t = wsig(name);
    MDerivation {
        rule: MRule::Logical(HRule::Id),
        conclusion: MSequent::new(StructTerm::Leaf(t.clone()), t).unwrap(),
        premises: vec![],
        params: MParams::default(),
    }
}

/// One structural step below `d`, rewriting its antecedent.
pub fn m_step(d: MDerivation, rule: Rule, at: Path) -> MDerivation {
    let app = complete_params(&d.conclusion.antecedent, &RuleApp::new(rule, at)).unwrap();
    let antecedent = apply_rule(&d.conclusion.antecedent, &app).unwrap();
    let conclusion = MSequent { antecedent, succedent: d.conclusion.succedent.clone() };
    MDerivation { rule: MRule::Structural(app), conclusion, premises: vec![d], params: MParams::default() }
}

/// The multimodal derivation of the worked example, with the structural
/// steps that bring `C` to the outside before the final UpR.
pub fn golden_mmder() -> MDerivation {
    let under = m_node(HRule::UnderL, "(c + c\\a) -> a", vec![m_id("c"), m_id("a")]);
    let up = m_node(HRule::UpL, "(b^2a +2 a) -> b", vec![m_id("a"), m_id("b")]);
    let cut = m_node(HRule::Cut, "(b^2a +2 (c + c\\a)) -> b", vec![under, up]);
    let d1 = m_node(HRule::DProdR, "((b^2a +2 (c + c\\a)) +1 d) -> b@1d", vec![cut, m_id("d")]);
    let d3 = m_node(HRule::DProdR, "(((b^2a +2 (c + c\\a)) +1 d) +3 e) -> (b@1d)@3e", vec![d1, m_id("e")]);
    let s = m_step(d3, Rule::MixPerm2Fwd, vec![Step::Left]);
    let s = m_step(s, Rule::MixPerm1Fwd, vec![]);
    let s = m_step(s, Rule::SwLeftFwd, vec![Step::Right]);
    let s = m_step(s, Rule::AsscD1, vec![]);
    m_node(HRule::UpR, MMDER_END, vec![s])
}

pub fn golden_dir() -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}
