//! Instance generators: fixed families, random trees and graphs, and the
//! exhaustive list of free trees on a given number of vertices.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet};

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::{Graph, RootedTree};
use crate::ranking::Dsu;

pub fn path(n: usize) -> Graph {
    Graph::from_edges_dedup(n, (1..n).map(|i| (i - 1, i)))
}

pub fn cycle(n: usize) -> Graph {
    Graph::from_edges_dedup(n, (0..n).map(|i| (i, (i + 1) % n)))
}

pub fn complete(n: usize) -> Graph {
    Graph::from_edges_dedup(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))))
}

/// Star with `leaves` leaves; vertex 0 is the center.
pub fn star(leaves: usize) -> Graph {
    Graph::from_edges_dedup(leaves + 1, (1..=leaves).map(|i| (0, i)))
}

/// Complete `k`-ary tree whose root-to-leaf paths have `levels` vertices,
/// numbered in BFS order and rooted at 0.
pub fn complete_kary_tree(k: usize, levels: usize) -> RootedTree {
    let mut parent = vec![None];
    let mut frontier = vec![0];
    for _ in 1..levels {
        let mut next = Vec::new();
        for &p in &frontier {
            for _ in 0..k {
                next.push(parent.len());
                parent.push(Some(p));
            }
        }
        frontier = next;
    }
    RootedTree::from_parents(parent).unwrap()
}

/// Spider: a center with `legs` paths of `len` vertices each.
pub fn spider(legs: usize, len: usize) -> Graph {
    let mut edges = Vec::new();
    let mut next = 1;
    for _ in 0..legs {
        let mut prev = 0;
        for _ in 0..len {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
    }
    Graph::from_edges_dedup(next, edges)
}

/// Uniform random labelled tree (Prüfer decoding), rooted at 0.
pub fn random_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> RootedTree {
    assert!(n >= 1);
    if n <= 2 {
        let parent = (0..n).map(|v| (v > 0).then_some(0)).collect();
        return RootedTree::from_parents(parent).unwrap();
    }
    let code: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &c in &code {
        degree[c] += 1;
    }
    let mut leaves: BinaryHeap<Reverse<usize>> =
        (0..n).filter(|&v| degree[v] == 1).map(Reverse).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &c in &code {
        let Reverse(leaf) = leaves.pop().unwrap();
        edges.push((leaf, c));
        degree[c] -= 1;
        if degree[c] == 1 {
            leaves.push(Reverse(c));
        }
    }
    let Reverse(a) = leaves.pop().unwrap();
    let Reverse(b) = leaves.pop().unwrap();
    edges.push((a, b));
    RootedTree::from_graph(&Graph::from_edges_dedup(n, edges), 0).unwrap()
}

/// Random tree where vertex `v` attaches to a uniform earlier vertex among the
/// last `window` ones (`window = n` gives a random recursive tree, small
/// windows give long, thin trees).
pub fn random_attachment_tree<R: Rng + ?Sized>(n: usize, window: usize, rng: &mut R) -> RootedTree {
    assert!(n >= 1 && window >= 1);
    let parent = (0..n)
        .map(|v| (v > 0).then(|| rng.gen_range(v.saturating_sub(window)..v)))
        .collect();
    RootedTree::from_parents(parent).unwrap()
}

/// Random tree drawn from a mix of shapes (uniform, recursive, thin).
pub fn random_tree_varied<R: Rng + ?Sized>(n: usize, rng: &mut R) -> RootedTree {
    match rng.gen_range(0..3) {
        0 => random_tree(n, rng),
        1 => random_attachment_tree(n, n, rng),
        _ => {
            let w = rng.gen_range(1..=4);
            random_attachment_tree(n, w, rng)
        }
    }
}

/// Random connected graph: a random spanning tree plus every other pair with
/// a density drawn uniformly from [0, 1).
pub fn random_connected_graph<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Graph {
    let p: f64 = rng.gen();
    let t = random_tree(n, rng);
    let mut edges: Vec<(usize, usize)> = t.edges().collect();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges_dedup(n, edges)
}

/// Random connected partial `k`-tree: a random `k`-tree, of which a random
/// spanning tree is kept and every other edge survives with `keep` probability.
pub fn random_partial_ktree<R: Rng + ?Sized>(n: usize, k: usize, keep: f64, rng: &mut R) -> Graph {
    assert!(k >= 1);
    let mut edges = Vec::new();
    let base = n.min(k + 1);
    for i in 0..base {
        for j in i + 1..base {
            edges.push((i, j));
        }
    }
    let mut cliques: Vec<Vec<usize>> = Vec::new();
    if n > k {
        for skip in 0..=k {
            cliques.push((0..=k).filter(|&x| x != skip).collect());
        }
    }
    for v in base..n {
        let clique = cliques[rng.gen_range(0..cliques.len())].clone();
        for &u in &clique {
            edges.push((u, v));
        }
        for skip in 0..k {
            let mut c = clique.clone();
            c[skip] = v;
            cliques.push(c);
        }
    }
    let mut relabel: Vec<usize> = (0..n).collect();
    relabel.shuffle(rng);
    edges.shuffle(rng);
    let mut dsu = Dsu::new(n);
    let kept = edges
        .into_iter()
        .filter(|&(u, v)| dsu.union(u, v) || rng.gen_bool(keep))
        .map(|(u, v)| (relabel[u], relabel[v]));
    Graph::from_edges_dedup(n, kept)
}

/// Every free (unlabelled) tree on `n` vertices, each rooted at vertex 0.
pub fn all_free_trees(n: usize) -> Vec<RootedTree> {
    assert!(n >= 1);
    let rooted = rooted_tree_codes(n);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for code in &rooted[n] {
        let t = tree_from_code(code);
        if seen.insert(free_canonical(&t)) {
            out.push(t);
        }
    }
    out
}

/// `codes[k]` lists the canonical parenthesis codes of all rooted trees on `k`
/// vertices.
fn rooted_tree_codes(n: usize) -> Vec<Vec<String>> {
    let mut codes: Vec<Vec<String>> = vec![Vec::new(), vec!["()".to_string()]];
    for size in 2..=n {
        let mut here = Vec::new();
        let mut chosen = Vec::new();
        forests(&codes, size - 1, (size - 1, usize::MAX), &mut chosen, &mut here);
        codes.push(here);
    }
    codes
}

/// Multisets of rooted trees with total size `left`, listed in nonincreasing
/// `(size, index)` order so each multiset appears once.
fn forests(
    codes: &[Vec<String>],
    left: usize,
    bound: (usize, usize),
    chosen: &mut Vec<(usize, usize)>,
    out: &mut Vec<String>,
) {
    if left == 0 {
        let mut s = String::from("(");
        for &(sz, i) in chosen.iter() {
            s.push_str(&codes[sz][i]);
        }
        s.push(')');
        out.push(s);
        return;
    }
    for sz in (1..=left.min(bound.0)).rev() {
        let top = if sz == bound.0 { bound.1.min(codes[sz].len() - 1) } else { codes[sz].len() - 1 };
        for i in (0..=top).rev() {
            chosen.push((sz, i));
            forests(codes, left - sz, (sz, i), chosen, out);
            chosen.pop();
        }
    }
}

fn tree_from_code(code: &str) -> RootedTree {
    let mut parent = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    for ch in code.chars() {
        if ch == '(' {
            let v = parent.len();
            parent.push(stack.last().copied());
            stack.push(v);
        } else {
            stack.pop();
        }
    }
    RootedTree::from_parents(parent).unwrap()
}

/// Canonical code of a free tree: the smallest rooted code over its centers.
fn free_canonical(t: &RootedTree) -> String {
    let g = t.to_graph();
    let n = g.n();
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&v| degree[v] <= 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &v in &layer {
            for &w in g.neighbors(v) {
                degree[w] -= 1;
                if degree[w] == 1 {
                    next.push(w);
                }
            }
        }
        layer = next;
    }
    layer
        .iter()
        .map(|&c| rooted_code(&RootedTree::from_graph(&g, c).unwrap(), c))
        .min()
        .unwrap()
}

fn rooted_code(t: &RootedTree, v: usize) -> String {
    let mut parts: Vec<String> = t.children(v).iter().map(|&c| rooted_code(t, c)).collect();
    parts.sort_unstable();
    format!("({})", parts.concat())
}
