//! Obstructions in graphs of bounded treewidth: lifting a subtree of a greedy
//! decomposition to a bounded-degree tree of the graph, the resulting deep
//! subcubic subtree, and the two tree measures it certifies (longest path and
//! depth of a full binary tree subdivision).
//!
//! Depth convention: a full binary tree of depth `h` has `2^h − 1` vertices,
//! so a single vertex has depth 1 and a path on three vertices has depth 2.

use std::collections::VecDeque;

use crate::decomposition::{back_edges, GreedyTreeDecomposition};
use crate::error::{Error, Result};
use crate::extract::{beats_golden_power, extract_subcubic};
use crate::graph::{Graph, RootedTree, Subtree};
use crate::ranking::schaffer_rank;

/// Tree of `g` containing every vertex of `s`, with maximum degree at most
/// `tau + 2`.
///
/// Every non-root node `c` of the decomposition gets one hook edge from the
/// shallowest vertex of its subtree to its parent. The hook edges form a
/// spanning tree `R` of `g`, and the result is the smallest subtree of `R`
/// containing `s`. A vertex meets at most `tau − 1` hook edges towards its
/// ancestors, and only the hooks of its own children in `s` towards its
/// descendants.
pub fn lift_to_graph_tree(g: &Graph, d: &GreedyTreeDecomposition, s: &Subtree) -> Result<Subtree> {
    let t = &d.tree;
    let n = g.n();
    if t.n() != n {
        return Err(Error::InvalidGreedy(format!("{} nodes for {} vertices", t.n(), n)));
    }
    for (p, c) in s.host_edges() {
        if t.parent(c) != Some(p) {
            return Err(Error::InvalidGreedy(format!("{p}-{c} is not an edge of the decomposition")));
        }
    }
    let hook = back_edges(g, t)
        .map_err(|(u, v)| Error::InvalidGreedy(format!("edge {u}-{v} joins incomparable nodes")))?;

    let mut radj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for c in 0..n {
        if let Some(p) = t.parent(c) {
            let w = hook[c].ok_or_else(|| Error::LiftFailed {
                parent: p,
                child: c,
                msg: "no edge from the child subtree back to its parent".into(),
            })?;
            radj[p].push(w);
            radj[w].push(p);
        }
    }

    // prune leaves of R outside s
    let mut keep = vec![true; n];
    let mut inside = vec![false; n];
    for &v in &s.vertices {
        inside[v] = true;
    }
    let mut degree: Vec<usize> = radj.iter().map(Vec::len).collect();
    let mut queue: VecDeque<usize> = (0..n).filter(|&v| degree[v] <= 1 && !inside[v]).collect();
    while let Some(v) = queue.pop_front() {
        if !keep[v] {
            continue;
        }
        keep[v] = false;
        for &w in &radj[v] {
            if keep[w] {
                degree[w] -= 1;
                if degree[w] == 1 && !inside[w] {
                    queue.push_back(w);
                }
            }
        }
    }
    let mut edges = Vec::new();
    for c in 0..n {
        if let (Some(p), Some(w)) = (t.parent(c), hook[c]) {
            if keep[p] && keep[w] {
                edges.push((p, w));
            }
        }
    }
    let root = s.root();
    let f = Subtree::from_host_edges(root, &edges)
        .map_err(|e| lift_failure(s, format!("hook edges do not form a tree: {e}")))?;
    check_lift(g, d, s, &f)?;
    Ok(f)
}

fn lift_failure(s: &Subtree, msg: String) -> Error {
    let (parent, child) = s.host_edges().first().copied().unwrap_or((s.root(), s.root()));
    Error::LiftFailed { parent, child, msg }
}

/// Postconditions of the lift: `f` is a tree in `g`, covers `s`, and has
/// maximum degree at most `tau + 2`.
pub fn check_lift(g: &Graph, d: &GreedyTreeDecomposition, s: &Subtree, f: &Subtree) -> Result<()> {
    for (u, v) in f.host_edges() {
        if !g.has_edge(u, v) {
            return Err(lift_failure(s, format!("{u}-{v} is not an edge of the graph")));
        }
    }
    let mut covered = vec![false; g.n()];
    for &v in &f.vertices {
        covered[v] = true;
    }
    if let Some(&v) = s.vertices.iter().find(|&&v| !covered[v]) {
        let parent = s.tree.parent(s.vertices.iter().position(|&x| x == v).unwrap());
        let parent = parent.map_or(v, |p| s.vertices[p]);
        return Err(Error::LiftFailed {
            parent,
            child: v,
            msg: "vertex of the subtree missing from the lift".into(),
        });
    }
    if f.max_degree() > d.tau + 2 {
        return Err(lift_failure(
            s,
            format!("maximum degree {} exceeds {}", f.max_degree(), d.tau + 2),
        ));
    }
    Ok(())
}

/// Everything measured along the way from a greedy decomposition to a deep
/// subcubic subtree of the graph.
#[derive(Debug, Clone)]
pub struct Obstruction {
    pub tau: usize,
    pub td_t: usize,
    pub td_s: usize,
    pub size_s: usize,
    pub size_f: usize,
    pub max_degree_f: usize,
    pub td_f: usize,
    pub td_h: usize,
    pub h: Subtree,
    /// 3^td(S) > φ^td(T).
    pub s_deep: bool,
    /// |V(F)| ≥ |V(S)| ≥ 2^(td(S) − 1).
    pub s_large: bool,
    /// (τ + 2)^td(F) ≥ |V(F)|.
    pub f_deep: bool,
    /// 3^td(H) > φ^td(F).
    pub h_deep: bool,
}

impl Obstruction {
    pub fn chain_holds(&self) -> bool {
        self.s_deep && self.s_large && self.f_deep && self.h_deep
    }
}

/// Subcubic subtree `S` of the decomposition tree and its lift `F`.
pub fn extract_and_lift(g: &Graph, d: &GreedyTreeDecomposition) -> Result<(Subtree, Subtree)> {
    let s = extract_subcubic(&d.tree);
    let f = lift_to_graph_tree(g, d, &s)?;
    Ok((s, f))
}

/// Extracts a subcubic subtree `S` of the decomposition tree, lifts it to a
/// tree `F` of `g` and extracts a subcubic subtree `H` of `F`.
pub fn find_obstruction(g: &Graph, d: &GreedyTreeDecomposition) -> Result<Obstruction> {
    let td_t = schaffer_rank(&d.tree).td();
    let (s, f) = extract_and_lift(g, d)?;
    let td_s = schaffer_rank(&s.tree).td();
    let td_f = schaffer_rank(&f.tree).td();
    let h_local = extract_subcubic(&f.tree);
    let td_h = schaffer_rank(&h_local.tree).td();
    let h = Subtree {
        vertices: h_local.vertices.iter().map(|&i| f.vertices[i]).collect(),
        tree: h_local.tree,
    };

    let size_s = s.n();
    let size_f = f.n();
    let f_deep = {
        let base = (d.tau + 2) as u128;
        // saturation keeps the comparison exact
        let mut acc: u128 = 1;
        for _ in 0..td_f {
            acc = acc.saturating_mul(base);
        }
        acc >= size_f as u128
    };
    Ok(Obstruction {
        tau: d.tau,
        td_t,
        td_s,
        size_s,
        size_f,
        max_degree_f: f.max_degree(),
        td_f,
        td_h,
        h,
        s_deep: beats_golden_power::<i128>(td_s, td_t),
        s_large: size_f >= size_s && td_s >= 1 && (size_s as u128) >= 1u128 << (td_s - 1),
        f_deep,
        h_deep: beats_golden_power::<i128>(td_h, td_f),
    })
}

fn bfs_far(t: &RootedTree, from: usize) -> (usize, Vec<usize>) {
    let n = t.n();
    let mut prev = vec![usize::MAX; n];
    let mut dist = vec![usize::MAX; n];
    dist[from] = 0;
    let mut queue = VecDeque::from([from]);
    let mut last = from;
    while let Some(u) = queue.pop_front() {
        last = u;
        let nbrs = t.children(u).iter().copied().chain(t.parent(u));
        for w in nbrs {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                prev[w] = u;
                queue.push_back(w);
            }
        }
    }
    let mut path = vec![last];
    while *path.last().unwrap() != from {
        path.push(prev[*path.last().unwrap()]);
    }
    (dist[last], path)
}

/// Longest path of a tree: edge count and the path itself.
pub fn longest_path(t: &RootedTree) -> (usize, Vec<usize>) {
    let (_, first) = bfs_far(t, t.root());
    bfs_far(t, first[0])
}

/// `max(1, b₁, b₂ + 1)` for the two largest values.
fn combine(top: [usize; 2]) -> usize {
    1.max(top[0]).max(if top[1] > 0 { top[1] + 1 } else { 0 })
}

fn push_top<const K: usize>(top: &mut [usize; K], x: usize) {
    if let Some(i) = top.iter().position(|&y| x > y) {
        top[i..].rotate_right(1);
        top[i] = x;
    }
}

/// Depth of the deepest full binary tree subdivision whose top vertex is
/// closest to the root, computed for every vertex of the rooted tree.
fn aligned_values(t: &RootedTree) -> Vec<usize> {
    let mut down = vec![0usize; t.n()];
    for v in t.postorder() {
        let mut top = [0usize; 2];
        for &c in t.children(v) {
            push_top(&mut top, down[c]);
        }
        down[v] = combine(top);
    }
    down
}

/// Deepest full binary tree subdivision in `t` whose top vertex is the one
/// closest to the root of `t`.
pub fn aligned_subdivision_depth(t: &RootedTree) -> usize {
    aligned_values(t)[t.root()]
}

/// Deepest full binary tree subdivision contained in `t`, over all choices
/// of its top vertex.
pub fn binary_subdivision_depth(t: &RootedTree) -> usize {
    let down = aligned_values(t);
    let mut up = vec![0usize; t.n()];
    let mut best = 0;
    for v in t.preorder() {
        let mut top = [0usize; 3];
        push_top(&mut top, up[v]);
        for &c in t.children(v) {
            push_top(&mut top, down[c]);
        }
        best = best.max(combine([top[0], top[1]]));
        for &c in t.children(v) {
            // drop one copy of down[c] from the top three
            let mut rest = [0usize; 2];
            let mut skipped = false;
            let mut k = 0;
            for &x in &top {
                if !skipped && x == down[c] {
                    skipped = true;
                } else if k < 2 {
                    rest[k] = x;
                    k += 1;
                }
            }
            up[c] = combine(rest);
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::{heuristic_tree_decomposition, to_greedy, validate_greedy};
    use crate::generate;
    use crate::oracle;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rooted(g: &Graph) -> RootedTree {
        RootedTree::from_graph(g, 0).unwrap()
    }

    #[test]
    fn longest_path_examples() {
        assert_eq!(longest_path(&RootedTree::single()).0, 0);
        assert_eq!(longest_path(&rooted(&generate::star(3))).0, 2);
        let (len, path) = longest_path(&rooted(&generate::path(7)));
        assert_eq!(len, 6);
        assert_eq!(path.len(), 7);
    }

    #[test]
    fn subdivision_examples() {
        assert_eq!(binary_subdivision_depth(&RootedTree::single()), 1);
        assert_eq!(binary_subdivision_depth(&rooted(&generate::path(2))), 1);
        assert_eq!(binary_subdivision_depth(&rooted(&generate::path(9))), 2);
        assert_eq!(aligned_subdivision_depth(&rooted(&generate::path(9))), 1);
        assert_eq!(binary_subdivision_depth(&generate::complete_kary_tree(2, 4)), 4);
        assert_eq!(binary_subdivision_depth(&rooted(&generate::spider(3, 2))), 2);
        assert_eq!(binary_subdivision_depth(&rooted(&generate::star(5))), 2);
    }

    #[test]
    fn measures_match_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..300 {
            let n = rng.gen_range(1..=12);
            let t = generate::random_tree_varied(n, &mut rng);
            let (len, path) = longest_path(&t);
            assert_eq!(len, oracle::longest_path_brute(&t).0);
            assert_eq!(path.len(), len + 1);
            for w in path.windows(2) {
                assert!(t.parent(w[0]) == Some(w[1]) || t.parent(w[1]) == Some(w[0]));
            }
            assert_eq!(
                binary_subdivision_depth(&t),
                oracle::binary_subdivision_depth_brute(&t, 12).unwrap()
            );
        }
    }

    #[test]
    fn unaligned_exceeds_aligned_by_at_most_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for _ in 0..200 {
            let t = generate::random_tree_varied(rng.gen_range(1..200), &mut rng);
            let a = aligned_subdivision_depth(&t);
            let b = binary_subdivision_depth(&t);
            assert!(a <= b && b <= a + 1);
        }
    }

    #[test]
    fn lift_of_tree_is_the_subtree() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..50 {
            let t = generate::random_tree(60, &mut rng);
            let g = t.to_graph();
            let bags = (0..g.n())
                .map(|v| std::iter::once(v).chain(t.parent(v)).collect())
                .collect();
            let d = GreedyTreeDecomposition::new(t.clone(), bags);
            assert_eq!(validate_greedy(&g, &d), Ok(()));
            let s = extract_subcubic(&t);
            let f = lift_to_graph_tree(&g, &d, &s).unwrap();
            let mut a = f.host_edges();
            let mut b = s.host_edges();
            a.sort_unstable();
            b.sort_unstable();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn lift_of_c4_is_hamiltonian_path() {
        let c4 = generate::cycle(4);
        let d = to_greedy(&c4, &heuristic_tree_decomposition(&c4)).unwrap();
        assert_eq!(d.tree.height(), 4);
        let s = extract_subcubic(&d.tree);
        assert_eq!(s.n(), 4);
        let f = lift_to_graph_tree(&c4, &d, &s).unwrap();
        assert_eq!(f.n(), 4);
        assert_eq!(f.max_degree(), 2);
        assert!(f.max_degree() <= d.tau + 2);
    }

    #[test]
    fn pipeline_on_path() {
        let p = generate::path(20);
        let d = to_greedy(&p, &heuristic_tree_decomposition(&p)).unwrap();
        let o = find_obstruction(&p, &d).unwrap();
        assert!(o.chain_holds());
        assert_eq!(o.td_h, 5);
    }

    #[test]
    fn pipeline_on_partial_ktrees() {
        let mut rng = ChaCha8Rng::seed_from_u64(24);
        for _ in 0..100 {
            let n = rng.gen_range(2..=120);
            let k = rng.gen_range(2..=3);
            let g = generate::random_partial_ktree(n, k, 0.7, &mut rng);
            let d = to_greedy(&g, &heuristic_tree_decomposition(&g)).unwrap();
            let o = find_obstruction(&g, &d).unwrap();
            assert!(o.chain_holds(), "{o:?}");
            assert!(o.h.max_degree() <= 3);
            for (u, v) in o.h.host_edges() {
                assert!(g.has_edge(u, v));
            }
        }
    }
}
