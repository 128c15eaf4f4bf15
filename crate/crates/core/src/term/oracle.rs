//! Reachability under single rewrite steps, by breadth-first search.

use std::collections::HashMap;

use crate::term::{successors, StructTerm};

/// Extra leaves (unit constants) the search may introduce beyond the larger input.
pub const ORACLE_SLACK: usize = 2;

fn neighbours(t: &StructTerm, max_size: usize) -> Vec<StructTerm> {
    successors(t, t.size() < max_size).into_iter().map(|(_, v)| v).filter(|v| v.size() <= max_size).collect()
}

/// Every term reachable from `t` within `depth` steps, never exceeding
/// `max_size` leaves, with its distance.
pub fn reachable(t: &StructTerm, depth: usize, max_size: usize) -> HashMap<StructTerm, usize> {
    let mut seen = HashMap::new();
    seen.insert(t.clone(), 0);
    let mut frontier = vec![t.clone()];
    for d in 1..=depth {
        let mut next = Vec::new();
        for u in &frontier {
            for v in neighbours(u, max_size) {
                if !seen.contains_key(&v) {
                    seen.insert(v.clone(), d);
                    next.push(v);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    seen
}

/// True when `s` is reachable from `t` by at most `depth` rewrites in either
/// direction, with terms of at most `ORACLE_SLACK` more leaves than the inputs.
pub fn bounded_equiv_oracle(t: &StructTerm, s: &StructTerm, depth: usize) -> bool {
    bounded_equiv_oracle_with(t, s, depth, t.size().max(s.size()) + ORACLE_SLACK)
}

/// [`bounded_equiv_oracle`] with an explicit leaf cap; searches from both ends.
pub fn bounded_equiv_oracle_with(t: &StructTerm, s: &StructTerm, depth: usize, max_size: usize) -> bool {
    if t == s {
        return true;
    }
    if t.sort() != s.sort() {
        return false;
    }
    let mut sides = [
        (HashMap::from([(t.clone(), 0usize)]), vec![t.clone()]),
        (HashMap::from([(s.clone(), 0usize)]), vec![s.clone()]),
    ];
    let mut levels = [0usize, 0usize];
    while levels[0] + levels[1] < depth {
        let side = if sides[0].1.len() <= sides[1].1.len() { 0 } else { 1 };
        if sides[side].1.is_empty() {
            return false;
        }
        levels[side] += 1;
        let frontier = std::mem::take(&mut sides[side].1);
        let mut next = Vec::new();
        for u in &frontier {
            for v in neighbours(u, max_size) {
                if sides[1 - side].0.contains_key(&v) {
                    return true;
                }
                if !sides[side].0.contains_key(&v) {
                    sides[side].0.insert(v.clone(), levels[side]);
                    next.push(v);
                }
            }
        }
        sides[side].1 = next;
    }
    false
}
