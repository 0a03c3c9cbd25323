//! Exact minimum size of a maximal partial spread for q in {2, 3}.
//!
//! A maximal partial spread is a maximal independent set of the meet graph,
//! i.e. an independent dominating set. The search branches on the closed
//! neighborhood of an undominated line: one of those lines must join the
//! spread. Lines already branched on are forbidden in later siblings, so each
//! set is generated once. The meet graph is built from the polar form only.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::enumeration::{LineId, LineTable};
use crate::error::{Error, Result};
use crate::geometry::meets;

const WORDS: usize = 3;
type Bits = [u64; WORDS];

fn bit(i: usize) -> Bits {
    let mut b = [0; WORDS];
    b[i / 64] |= 1 << (i % 64);
    b
}
fn and(a: &Bits, b: &Bits) -> Bits {
    std::array::from_fn(|k| a[k] & b[k])
}
fn andnot(a: &Bits, b: &Bits) -> Bits {
    std::array::from_fn(|k| a[k] & !b[k])
}
fn or(a: &Bits, b: &Bits) -> Bits {
    std::array::from_fn(|k| a[k] | b[k])
}
fn count(a: &Bits) -> u32 {
    a.iter().map(|w| w.count_ones()).sum()
}
fn ones(a: Bits) -> impl Iterator<Item = usize> {
    (0..WORDS).flat_map(move |k| {
        let mut w = a[k];
        std::iter::from_fn(move || {
            (w != 0).then(|| {
                let t = w.trailing_zeros() as usize;
                w &= w - 1;
                k * 64 + t
            })
        })
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleResult {
    pub q: u32,
    pub min_size: usize,
    /// A maximal partial spread of the minimum size.
    pub witness: Vec<LineId>,
    pub nodes: u64,
}

struct MeetGraph {
    closed: Vec<Bits>,
    all: Bits,
}

impl MeetGraph {
    fn new(table: &LineTable) -> Self {
        let n = table.len();
        assert!(n <= WORDS * 64);
        let f = table.field();
        let lines: Vec<_> = table.iter().collect();
        let closed = (0..n)
            .map(|i| {
                (0..n)
                    .filter(|&j| meets(f, &lines[i], &lines[j]))
                    .fold([0; WORDS], |acc, j| or(&acc, &bit(j)))
            })
            .collect();
        let all = (0..n).fold([0; WORDS], |acc, j| or(&acc, &bit(j)));
        MeetGraph { closed, all }
    }
}

struct Search<'a> {
    g: &'a MeetGraph,
    chosen: Vec<usize>,
    best: Vec<usize>,
    best_size: usize,
    nodes: u64,
}

impl Search<'_> {
    fn go(&mut self, alive: Bits, forbidden: Bits) {
        self.nodes += 1;
        if count(&alive) == 0 {
            if self.chosen.len() < self.best_size {
                self.best_size = self.chosen.len();
                self.best = self.chosen.clone();
            }
            return;
        }
        let allowed = andnot(&alive, &forbidden);
        let max_cover = ones(allowed)
            .map(|v| count(&and(&self.g.closed[v], &alive)))
            .max()
            .unwrap_or(0);
        if max_cover == 0 {
            return;
        }
        let lower = count(&alive).div_ceil(max_cover) as usize;
        if self.chosen.len() + lower >= self.best_size {
            return;
        }
        // the undominated line with the fewest ways to be dominated
        let (options, _) = ones(alive)
            .map(|u| {
                let opts = and(&self.g.closed[u], &allowed);
                (opts, count(&opts))
            })
            .min_by_key(|&(_, c)| c)
            .unwrap();
        let mut forbidden = forbidden;
        for v in ones(options) {
            self.chosen.push(v);
            let next_alive = andnot(&alive, &self.g.closed[v]);
            self.go(next_alive, and(&forbidden, &next_alive));
            self.chosen.pop();
            forbidden = or(&forbidden, &bit(v));
        }
    }
}

/// Exact minimum maximal-partial-spread size for q in {2, 3}.
///
/// For q = 3 the search assumes line 0 belongs to the spread; this loses
/// nothing because the collineation group is transitive on lines. For q = 2
/// the search is unrestricted.
pub fn brute_force_oracle(q: u32) -> Result<OracleResult> {
    if !(2..=3).contains(&q) {
        return Err(Error::OracleUnsupported(q));
    }
    let table = LineTable::for_order(q)?;
    let g = MeetGraph::new(&table);
    let mut s = Search {
        g: &g,
        chosen: Vec::new(),
        best: Vec::new(),
        best_size: usize::MAX,
        nodes: 0,
    };
    if q == 2 {
        s.go(g.all, [0; WORDS]);
    } else {
        s.chosen.push(0);
        s.go(andnot(&g.all, &g.closed[0]), [0; WORDS]);
    }
    Ok(OracleResult {
        q,
        min_size: s.best_size,
        witness: s.best.iter().map(|&i| i as LineId).collect(),
        nodes: s.nodes,
    })
}

/// Every size of a maximal partial spread (or spread) of PG(3,2), by
/// enumerating all independent sets of the meet graph.
pub fn maximal_sizes_q2() -> Result<BTreeSet<usize>> {
    let table = LineTable::for_order(2)?;
    let g = MeetGraph::new(&table);
    let mut sizes = BTreeSet::new();
    // extend only with larger indices; `skew_all` is the set of lines skew
    // to everything chosen, regardless of index
    fn walk(g: &MeetGraph, from: usize, depth: usize, skew_all: Bits, sizes: &mut BTreeSet<usize>) {
        if count(&skew_all) == 0 {
            sizes.insert(depth);
            return;
        }
        for v in ones(skew_all).filter(|&v| v >= from) {
            walk(g, v + 1, depth + 1, andnot(&skew_all, &g.closed[v]), sizes);
        }
    }
    walk(&g, 0, 0, g.all, &mut sizes);
    Ok(sizes)
}
