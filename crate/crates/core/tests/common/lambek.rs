//! An independent cut-free proof counter for the Lambek calculus with empty
//! antecedents and the unit `I`, on lists of formulas.

use std::collections::HashMap;

use rand::Rng;

use displace_core::syntax::{Signature, Type};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum L {
    At(&'static str),
    I,
    Prod(Box<L>, Box<L>),
    Under(Box<L>, Box<L>),
    Over(Box<L>, Box<L>),
}

pub fn at(n: &'static str) -> L {
    L::At(n)
}
pub fn prod(a: L, b: L) -> L {
    L::Prod(Box::new(a), Box::new(b))
}
pub fn under(a: L, b: L) -> L {
    L::Under(Box::new(a), Box::new(b))
}
pub fn over(b: L, a: L) -> L {
    L::Over(Box::new(b), Box::new(a))
}

impl L {
    pub fn to_type(&self, sig: &Signature) -> Type {
        match self {
            L::At(n) => sig.atom(n).unwrap(),
            L::I => Type::unit_i(),
            L::Prod(a, b) => Type::prod(a.to_type(sig), b.to_type(sig)),
            L::Under(a, b) => Type::under(a.to_type(sig), b.to_type(sig)).unwrap(),
            L::Over(b, a) => Type::over(b.to_type(sig), a.to_type(sig)).unwrap(),
        }
    }

    pub fn connectives(&self) -> usize {
        match self {
            L::At(_) => 0,
            L::I => 1,
            L::Prod(a, b) | L::Under(a, b) | L::Over(a, b) => 1 + a.connectives() + b.connectives(),
        }
    }
}

pub fn random(rng: &mut impl Rng, depth: usize, atoms: &[&'static str]) -> L {
    if depth == 0 || rng.gen_bool(0.4) {
        return if rng.gen_range(0..10) == 0 { L::I } else { L::At(atoms[rng.gen_range(0..atoms.len())]) };
    }
    let a = random(rng, depth - 1, atoms);
    let b = random(rng, depth - 1, atoms);
    match rng.gen_range(0..3) {
        0 => prod(a, b),
        1 => under(a, b),
        _ => over(a, b),
    }
}

type Key = (Vec<L>, L, usize);

/// Counts cut-free proofs of height at most `depth` by exhaustive backward search.
#[derive(Default)]
pub struct Counter {
    memo: HashMap<Key, u64>,
}

impl Counter {
    pub fn count(&mut self, ant: &[L], succ: &L, depth: usize) -> u64 {
        if depth == 0 {
            return 0;
        }
        let key = (ant.to_vec(), succ.clone(), depth);
        if let Some(&n) = self.memo.get(&key) {
            return n;
        }
        let d = depth - 1;
        let mut total = 0;
        if ant.len() == 1 && ant[0] == *succ {
            total += 1;
        }
        match succ {
            L::I if ant.is_empty() => total += 1,
            L::Prod(a, b) => {
                for s in 0..=ant.len() {
                    let left = self.count(&ant[..s], a, d);
                    if left > 0 {
                        total += left * self.count(&ant[s..], b, d);
                    }
                }
            }
            L::Under(a, b) => {
                let mut v = vec![(**a).clone()];
                v.extend_from_slice(ant);
                total += self.count(&v, b, d);
            }
            L::Over(b, a) => {
                let mut v = ant.to_vec();
                v.push((**a).clone());
                total += self.count(&v, b, d);
            }
            _ => {}
        }
        for p in 0..ant.len() {
            let splice = |lo: usize, hi: usize, mid: Vec<L>| {
                let mut v = ant[..lo].to_vec();
                v.extend(mid);
                v.extend_from_slice(&ant[hi..]);
                v
            };
            match &ant[p] {
                L::I => total += self.count(&splice(p, p + 1, vec![]), succ, d),
                L::Prod(a, b) => total += self.count(&splice(p, p + 1, vec![(**a).clone(), (**b).clone()]), succ, d),
                L::Under(a, b) => {
                    for s in 0..=p {
                        let minor = self.count(&ant[s..p], a, d);
                        if minor > 0 {
                            total += minor * self.count(&splice(s, p + 1, vec![(**b).clone()]), succ, d);
                        }
                    }
                }
                L::Over(b, a) => {
                    for e in p + 1..=ant.len() {
                        let minor = self.count(&ant[p + 1..e], a, d);
                        if minor > 0 {
                            total += minor * self.count(&splice(p, e, vec![(**b).clone()]), succ, d);
                        }
                    }
                }
                L::At(_) => {}
            }
        }
        self.memo.insert(key, total);
        total
    }
}
