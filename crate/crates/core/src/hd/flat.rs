//! Analysis of flat token sequences: occurrence spans, well-formed ranges and
//! abstraction of filler chunks.

use crate::syntax::{HyperConfig, Token, Type};

/// Occurrence structure of a well-formed token sequence.
pub(crate) struct Flat<'a> {
    pub toks: &'a [Token],
    /// For each token, the index of the first token of its occurrence.
    first: Vec<usize>,
    /// For each token, the index of the last token of its occurrence.
    last: Vec<usize>,
    /// Number of separators strictly before each position (length `len + 1`).
    seps: Vec<usize>,
}

impl<'a> Flat<'a> {
    pub fn new(toks: &'a [Token]) -> Flat<'a> {
        let n = toks.len();
        let mut first: Vec<usize> = (0..n).collect();
        let mut last: Vec<usize> = (0..n).collect();
        let mut open: Vec<Vec<usize>> = Vec::new();
        for (i, t) in toks.iter().enumerate() {
            if let Token::Seg(ty, k) = t {
                if *k == 0 {
                    open.push(vec![i]);
                } else {
                    let segs = open.last_mut().expect("well-formed tokens");
                    segs.push(i);
                    if *k == ty.sort() {
                        let segs = open.pop().expect("checked");
                        let (f, l) = (segs[0], *segs.last().expect("nonempty"));
                        for s in segs {
                            first[s] = f;
                            last[s] = l;
                        }
                    }
                }
            }
        }
        let mut seps = Vec::with_capacity(n + 1);
        let mut c = 0;
        seps.push(0);
        for t in toks {
            if t.is_sep() {
                c += 1;
            }
            seps.push(c);
        }
        Flat { toks, first, last, seps }
    }

    /// Separators in `[s, e)`.
    pub fn seps_in(&self, s: usize, e: usize) -> usize {
        self.seps[e] - self.seps[s]
    }

    pub fn seps_before(&self, s: usize) -> usize {
        self.seps[s]
    }

    /// True when no occurrence crosses the boundary of `[s, e)`.
    pub fn wf(&self, s: usize, e: usize) -> bool {
        (s..e).all(|i| self.first[i] >= s && self.last[i] < e)
    }

    /// Starting positions of occurrences (sort-0 leaves and first segments), with their types.
    pub fn occurrences(&self) -> impl Iterator<Item = (usize, &'a Type)> + '_ {
        self.toks.iter().enumerate().filter_map(|(i, t)| match t {
            Token::Leaf(ty) | Token::Seg(ty, 0) => Some((i, ty)),
            _ => None,
        })
    }

    /// Positions of all segments of the occurrence starting at `q0`.
    pub fn segments(&self, q0: usize) -> Vec<usize> {
        let last = self.last[q0];
        (q0..=last).filter(|&i| self.first[i] == q0 && !self.toks[i].is_sep()).collect()
    }

    /// Gap contents of the occurrence starting at `q0`.
    pub fn gaps(&self, q0: usize) -> Vec<Vec<Token>> {
        self.segments(q0).windows(2).map(|w| self.toks[w[0] + 1..w[1]].to_vec()).collect()
    }

    /// Every way of choosing `count` ordered, disjoint, well-formed chunks in
    /// `[lo, hi)` that together contain every separator of the range. Chunks
    /// may be empty. Earlier and shorter chunks come first.
    pub fn abstractions(&self, lo: usize, hi: usize, count: usize) -> Vec<Vec<(usize, usize)>> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        self.abstract_from(lo, hi, count, &mut cur, &mut out);
        out
    }

    fn abstract_from(
        &self,
        pos: usize,
        hi: usize,
        count: usize,
        cur: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if count == 0 {
            if self.seps_in(pos, hi) == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for s in pos..=hi {
            if s > pos && self.toks[s - 1].is_sep() {
                break;
            }
            for e in s..=hi {
                if self.wf(s, e) {
                    cur.push((s, e));
                    self.abstract_from(e, hi, count - 1, cur, out);
                    cur.pop();
                }
            }
        }
    }
}

/// Tokens of `toks[lo..hi]` with each chunk replaced by one separator.
pub(crate) fn abstract_tokens(toks: &[Token], lo: usize, hi: usize, chunks: &[(usize, usize)]) -> Vec<Token> {
    let mut out = Vec::new();
    let mut pos = lo;
    for &(s, e) in chunks {
        out.extend_from_slice(&toks[pos..s]);
        out.push(Token::Sep);
        pos = e;
    }
    out.extend_from_slice(&toks[pos..hi]);
    out
}

pub(crate) fn chunk_tokens(toks: &[Token], chunks: &[(usize, usize)]) -> Vec<Vec<Token>> {
    chunks.iter().map(|&(s, e)| toks[s..e].to_vec()).collect()
}

pub(crate) fn figure(t: &Type) -> Vec<Token> {
    HyperConfig::figure(t).flatten()
}

/// Total number of connectives and units over all occurrences of the sequent.
pub(crate) fn measure(toks: &[Token], succ: &Type) -> usize {
    toks.iter()
        .map(|t| match t {
            Token::Leaf(ty) | Token::Seg(ty, 0) => ty.size(),
            _ => 0,
        })
        .sum::<usize>()
        + succ.size()
}
