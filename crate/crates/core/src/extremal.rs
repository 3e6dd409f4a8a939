//! Trees of large treedepth without long paths or deep binary subdivisions.
//!
//! `G_1` is a single vertex. `G_n` is a path on `2^n` vertices, rooted at an
//! endpoint, with a copy of `G_{n-1}` hanging from every path vertex by an
//! edge to the copy's root.

use rand::Rng;

use crate::error::{Error, Result};
use crate::generate;
use crate::graph::RootedTree;
use crate::obstruction::{aligned_subdivision_depth, binary_subdivision_depth, longest_path};
use crate::ranking::schaffer_rank;

pub const MAX_GN: usize = 6;

/// Number of vertices of `G_n`.
pub fn gn_size(n: usize) -> usize {
    (2..=n).fold(1, |s, k| (1 << k) * (1 + s))
}

/// `G_n`, numbered spine first (root 0, along the path), then the copies in
/// spine order, each numbered the same way.
pub fn gen_gn(n: usize) -> Result<RootedTree> {
    if !(1..=MAX_GN).contains(&n) {
        return Err(Error::OutOfRange {
            what: "family index",
            value: n as i64,
        });
    }
    let mut parent = Vec::with_capacity(gn_size(n));
    build(n, None, &mut parent);
    Ok(RootedTree::from_parents(parent).expect("construction yields a tree"))
}

fn build(n: usize, attach: Option<usize>, parent: &mut Vec<Option<usize>>) {
    let base = parent.len();
    if n == 1 {
        parent.push(attach);
        return;
    }
    let len = 1usize << n;
    for i in 0..len {
        parent.push(if i == 0 { attach } else { Some(base + i - 1) });
    }
    for i in 0..len {
        build(n - 1, Some(base + i), parent);
    }
}

/// `C(n + 1, 2)`.
pub fn td_lower_bound(n: usize) -> usize {
    n * (n + 1) / 2
}

#[derive(Debug, Clone, PartialEq)]
pub struct GnReport {
    pub n: usize,
    pub size: usize,
    /// Vertices on the longest root-to-leaf path.
    pub root_to_leaf: usize,
    /// Vertices on the longest path.
    pub longest_path: usize,
    pub subdivision_depth: usize,
    pub aligned_depth: usize,
    pub td: usize,
    pub td_lower: usize,
}

impl GnReport {
    pub fn root_to_leaf_ok(&self) -> bool {
        self.root_to_leaf < 1 << (self.n + 1)
    }

    pub fn longest_path_ok(&self) -> bool {
        self.longest_path < 1 << (self.n + 2)
    }

    pub fn subdivision_ok(&self) -> bool {
        self.subdivision_depth < self.n + 2 && self.aligned_depth < self.n + 1
    }

    pub fn td_ok(&self) -> bool {
        self.td >= self.td_lower
    }

    pub fn passes(&self) -> bool {
        self.root_to_leaf_ok() && self.longest_path_ok() && self.subdivision_ok() && self.td_ok()
    }

    /// `td / max(log₂(longest path), subdivision depth)²`.
    pub fn separation(&self) -> f64 {
        let l = (self.longest_path as f64).log2().max(self.subdivision_depth as f64);
        if l == 0.0 {
            return f64::INFINITY;
        }
        self.td as f64 / (l * l)
    }
}

/// Measures `G_n`.
pub fn verify_gn(n: usize) -> Result<GnReport> {
    let t = gen_gn(n)?;
    Ok(GnReport {
        n,
        size: t.n(),
        root_to_leaf: t.height(),
        longest_path: longest_path(&t).0 + 1,
        subdivision_depth: binary_subdivision_depth(&t),
        aligned_depth: aligned_subdivision_depth(&t),
        td: schaffer_rank(&t).td(),
        td_lower: td_lower_bound(n),
    })
}

/// Random member of the family built from a path on at least `2^a` vertices
/// with a tree of treedepth at least `b` hanging from every path vertex.
pub fn sample_family_member<R: Rng + ?Sized>(a: usize, b: usize, rng: &mut R) -> RootedTree {
    let spine = (1usize << a) + rng.gen_range(0..=(1usize << a) / 2);
    let mut parent: Vec<Option<usize>> = (0..spine).map(|i| i.checked_sub(1)).collect();
    for v in 0..spine {
        let size = rng.gen_range(1..=(1usize << b) + 4);
        let mut t = generate::random_tree_varied(size, rng);
        if schaffer_rank(&t).td() < b {
            // a path on 2^(b-1) vertices has treedepth b
            let mut p: Vec<Option<usize>> = t.parents().to_vec();
            let top = t.root();
            for i in 0..1usize << (b - 1) {
                let at = p.len();
                p.push(Some(if i == 0 { top } else { at - 1 }));
            }
            t = RootedTree::from_parents(p).unwrap();
        }
        let base = parent.len();
        let order = t.preorder();
        let mut local = vec![0; t.n()];
        for (i, &x) in order.iter().enumerate() {
            local[x] = base + i;
        }
        for &x in &order {
            parent.push(Some(t.parent(x).map_or(v, |p| local[p])));
        }
    }
    RootedTree::from_parents(parent).unwrap()
}

/// Samples `trials` family members and returns the first whose treedepth
/// falls below `a + b`.
pub fn check_family_depth<R: Rng + ?Sized>(a: usize, b: usize, trials: usize, rng: &mut R) -> std::result::Result<(), RootedTree> {
    assert!(a >= 1 && b >= 1);
    for _ in 0..trials {
        let h = sample_family_member(a, b, rng);
        if schaffer_rank(&h).td() < a + b {
            return Err(h);
        }
    }
    Ok(())
}
