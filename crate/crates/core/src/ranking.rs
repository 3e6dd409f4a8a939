//! Optimal vertex ranking of rooted trees (Schäffer's bottom-up algorithm),
//! rank lists, and the ζ / σ potentials over them.
//!
//! Ranks start at 0, so a ranking with maximum rank `r` certifies treedepth
//! `r + 1`. A tree with treedepth `d` has at least `2^(d-1)` vertices, hence
//! every rank that can occur in memory fits below 64 and a rank list is a
//! single `u64` bitmask. Comparing two masks as integers is the same as
//! comparing the lists lexicographically from the largest rank down, which is
//! also the order of their ζ potentials.

use std::fmt;

use crate::golden::{GoldenValue, RingScalar};
use crate::graph::RootedTree;

/// Set of ranks, stored as a bitmask (bit `r` set iff rank `r` is present).
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RankList(u64);

impl RankList {
    pub const EMPTY: RankList = RankList(0);

    pub fn from_bits(bits: u64) -> Self {
        RankList(bits)
    }

    pub fn singleton(r: u32) -> Self {
        RankList(1 << r)
    }

    pub fn from_ranks<I: IntoIterator<Item = u32>>(ranks: I) -> Self {
        RankList(ranks.into_iter().fold(0, |acc, r| acc | (1u64 << r)))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, r: u32) -> bool {
        r < 64 && self.0 >> r & 1 == 1
    }

    pub fn max(self) -> Option<u32> {
        (self.0 != 0).then(|| 63 - self.0.leading_zeros())
    }

    /// Ranks in strictly decreasing order.
    pub fn ranks(self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.len());
        let mut bits = self.0;
        while bits != 0 {
            let r = 63 - bits.leading_zeros();
            out.push(r);
            bits &= !(1 << r);
        }
        out
    }
}

impl fmt::Debug for RankList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for RankList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.ranks().iter().map(u32::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// ζ(L) = Σ_{r ∈ L} 3^r.
pub fn zeta<T: RingScalar>(l: RankList) -> T {
    let three = T::from_u8(3).unwrap();
    let mut total = T::zero();
    let mut power = T::one();
    let mut bits = l.bits();
    while bits != 0 {
        if bits & 1 == 1 {
            total = total + power.clone();
        }
        power = power * three.clone();
        bits >>= 1;
    }
    total
}

/// σ(L) = Σ_i φ^(l_i − i) with l_0 > l_1 > … the ranks in decreasing order.
pub fn sigma<T: RingScalar>(l: RankList) -> GoldenValue<T> {
    let mut total = GoldenValue::zero();
    for (i, r) in l.ranks().into_iter().enumerate() {
        total += &GoldenValue::phi_pow(r as i64 - i as i64);
    }
    total
}

/// Vertex ranking together with the rank list of every subtree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ranking {
    pub alpha: Vec<u32>,
    pub lists: Vec<RankList>,
    pub max_rank: u32,
}

impl Ranking {
    /// Treedepth certified by the ranking (`max_rank + 1`).
    pub fn td(&self) -> usize {
        self.max_rank as usize + 1
    }
}

/// Optimal ranking of a rooted tree.
pub fn schaffer_rank(t: &RootedTree) -> Ranking {
    let order = t.postorder();
    let (alpha, lists) = rank_bottom_up(t.n(), |v| t.children(v), &order);
    let max_rank = alpha.iter().copied().max().unwrap_or(0);
    Ranking {
        alpha,
        lists,
        max_rank,
    }
}

/// Ranks a rooted forest given by child lists; `order` must list every
/// vertex after all of its children.
pub fn rank_bottom_up<'a, F>(n: usize, children: F, order: &[usize]) -> (Vec<u32>, Vec<RankList>)
where
    F: Fn(usize) -> &'a [usize],
{
    let mut alpha = vec![0u32; n];
    let mut lists = vec![RankList::EMPTY; n];
    for &v in order {
        let mut union = 0u64;
        let mut repeated = 0u64;
        for &c in children(v) {
            let l = lists[c].0;
            repeated |= union & l;
            union |= l;
        }
        // ranks allowed for v: above the largest repeated rank, not yet visible
        let floor = if repeated == 0 {
            !0u64
        } else {
            let x = 63 - repeated.leading_zeros();
            assert!(x < 63, "rank overflow");
            !0u64 << (x + 1)
        };
        let free = floor & !union;
        assert!(free != 0, "rank overflow");
        let a = free.trailing_zeros();
        alpha[v] = a;
        let above = if a == 63 { 0 } else { union & (!0u64 << (a + 1)) };
        lists[v] = RankList(above | 1 << a);
    }
    (alpha, lists)
}

/// Checks that equal ranks are always separated by a higher rank on the tree
/// path between them. Returns the first offending pair `(u, v)`, `u < v`.
pub fn verify_ranking(t: &RootedTree, alpha: &[u32]) -> Result<(), (usize, usize)> {
    let n = t.n();
    assert_eq!(alpha.len(), n, "one rank per vertex");
    let mut by_rank: Vec<usize> = (0..n).collect();
    by_rank.sort_by_key(|&v| (alpha[v], v));

    let mut dsu = Dsu::new(n);
    let mut active = vec![false; n];
    // (rank, vertex) of the last same-rank vertex seen in a component
    let mut mark: Vec<Option<(u32, usize)>> = vec![None; n];
    let mut i = 0;
    while i < n {
        let r = alpha[by_rank[i]];
        let j = by_rank[i..].iter().position(|&v| alpha[v] != r).map_or(n, |k| i + k);
        let group = &by_rank[i..j];
        for &v in group {
            active[v] = true;
        }
        for &v in group {
            let nbrs = t.children(v).iter().copied().chain(t.parent(v));
            for w in nbrs {
                if active[w] {
                    dsu.union(v, w);
                }
            }
        }
        for &v in group {
            let root = dsu.find(v);
            match mark[root] {
                Some((rr, u)) if rr == r => return Err((u.min(v), u.max(v))),
                _ => mark[root] = Some((r, v)),
            }
        }
        i = j;
    }
    Ok(())
}

pub(crate) struct Dsu {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl Dsu {
    pub(crate) fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false when `a` and `b` were already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        true
    }
}
