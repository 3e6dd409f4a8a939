//! Exhaustive oracles for small graphs. Everything here is deliberately
//! brute force and shares no code with the fast algorithms it is used to check.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::graph::{Graph, RootedTree, TreedepthDecomposition};

pub const TD_BUDGET: usize = 15;
pub const TW_BUDGET: usize = 12;
pub const SUBTREE_BUDGET: usize = 9;

fn check_budget(g: &Graph, budget: usize) -> Result<()> {
    if g.n() > budget || g.n() > 63 {
        return Err(Error::BudgetExceeded {
            n: g.n(),
            budget,
        });
    }
    Ok(())
}

fn adjacency_masks(g: &Graph) -> Vec<u64> {
    (0..g.n())
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w))
        .collect()
}

fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (mask != 0).then(|| {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            v
        })
    })
}

/// Splits `mask` into connected components of the graph given by `adj`.
fn components(adj: &[u64], mut mask: u64) -> Vec<u64> {
    let mut out = Vec::new();
    while mask != 0 {
        let start = mask & mask.wrapping_neg();
        let mut comp = start;
        let mut frontier = start;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = adj[v] & mask & !comp;
            comp |= fresh;
            frontier |= fresh;
        }
        out.push(comp);
        mask &= !comp;
    }
    out
}

/// Treedepth by the deletion recursion, memoised on connected vertex sets.
struct TdSolver<'a> {
    adj: &'a [u64],
    memo: HashMap<u64, u8>,
}

impl<'a> TdSolver<'a> {
    fn new(adj: &'a [u64]) -> Self {
        TdSolver {
            adj,
            memo: HashMap::new(),
        }
    }

    fn td(&mut self, mask: u64) -> usize {
        components(self.adj, mask)
            .into_iter()
            .map(|c| self.td_connected(c))
            .max()
            .unwrap_or(0)
    }

    fn td_connected(&mut self, mask: u64) -> usize {
        let size = mask.count_ones() as usize;
        if size <= 2 {
            return size;
        }
        if let Some(&d) = self.memo.get(&mask) {
            return d as usize;
        }
        let mut best = size;
        for v in bits(mask) {
            let rest = mask & !(1 << v);
            let mut worst = 0;
            for c in components(self.adj, rest) {
                worst = worst.max(self.td_connected(c));
                if worst + 1 >= best {
                    break;
                }
            }
            best = best.min(worst + 1);
        }
        self.memo.insert(mask, best as u8);
        best
    }

    /// Fills `parent` with an optimal elimination forest of `mask`; the
    /// lowest-id vertex wins ties.
    fn witness(&mut self, mask: u64, above: Option<usize>, parent: &mut [Option<usize>]) {
        for c in components(self.adj, mask) {
            let want = self.td_connected(c);
            let v = bits(c)
                .find(|&v| {
                    let rest = c & !(1 << v);
                    components(self.adj, rest)
                        .into_iter()
                        .all(|d| self.td_connected(d) < want)
                })
                .expect("some vertex attains the optimum");
            parent[v] = above;
            self.witness(c & !(1 << v), Some(v), parent);
        }
    }
}

/// Exact treedepth with an optimal decomposition (forest nodes = vertices).
pub fn td_exact(g: &Graph, budget: usize) -> Result<(usize, TreedepthDecomposition)> {
    check_budget(g, budget)?;
    let adj = adjacency_masks(g);
    let mut solver = TdSolver::new(&adj);
    let all = full_mask(g.n());
    let depth = solver.td(all);
    let mut parent = vec![None; g.n()];
    solver.witness(all, None, &mut parent);
    let d = TreedepthDecomposition::from_vertex_parents(parent)?;
    debug_assert_eq!(d.height(), depth);
    Ok((depth, d))
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        !0
    } else {
        (1u64 << n) - 1
    }
}

/// Exact treewidth by dynamic programming over elimination prefixes:
/// TW(S) = min_{v ∈ S} max(TW(S − v), |Q(S − v, v)|), where Q(S, v) are the
/// vertices outside S ∪ {v} reachable from v through S.
pub fn tw_exact(g: &Graph, budget: usize) -> Result<usize> {
    check_budget(g, budget.min(24))?;
    let n = g.n();
    if n == 0 {
        return Ok(0);
    }
    let adj = adjacency_masks(g);
    let size = 1usize << n;
    let mut tw = vec![i8::MAX; size];
    tw[0] = -1;
    for s in 1..size {
        let s64 = s as u64;
        let mut best = i8::MAX;
        for v in bits(s64) {
            let prev = s64 & !(1 << v);
            let q = reach_outside(&adj, prev, v, full_mask(n));
            best = best.min(tw[prev as usize].max(q as i8));
        }
        tw[s] = best;
    }
    Ok(tw[size - 1].max(0) as usize)
}

fn reach_outside(adj: &[u64], inner: u64, v: usize, all: u64) -> u32 {
    let mut seen = 1u64 << v;
    let mut frontier = 1u64 << v;
    let mut outside = 0u64;
    while frontier != 0 {
        let x = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let nb = adj[x] & all & !seen;
        seen |= nb;
        outside |= nb & !inner;
        frontier |= nb & inner;
    }
    outside.count_ones()
}

/// Best subtree found by [`max_subtree_td`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubtreeWitness {
    pub depth: usize,
    pub vertices: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

/// Maximum treedepth over all subtrees of `g` with maximum degree at most
/// `degree_cap` (`None` for no cap). Enumerates connected acyclic edge sets.
pub fn max_subtree_td(g: &Graph, degree_cap: Option<usize>, budget: usize) -> Result<SubtreeWitness> {
    check_budget(g, budget)?;
    let n = g.n();
    if n == 0 {
        return Ok(SubtreeWitness {
            depth: 0,
            vertices: vec![],
            edges: vec![],
        });
    }
    let adj = adjacency_masks(g);
    // no subtree can beat td(G) or the depth of a path through every vertex
    let ceiling = {
        let mut solver = TdSolver::new(&adj);
        solver.td(full_mask(n)).min(1 + n.ilog2() as usize)
    };
    let mut search = SubtreeSearch {
        adj: &adj,
        cap: degree_cap.unwrap_or(usize::MAX),
        ceiling,
        best: SubtreeWitness {
            depth: 1,
            vertices: vec![0],
            edges: vec![],
        },
        degree: vec![0; n],
        edges: Vec::new(),
        allowed: 0,
    };
    for r in 0..n {
        if search.best.depth >= ceiling {
            break;
        }
        search.allowed = full_mask(n) & !((1u64 << r) - 1);
        let frontier: Vec<(usize, usize)> = bits(adj[r] & search.allowed).map(|w| (r, w)).collect();
        search.grow(1 << r, frontier);
    }
    Ok(search.best)
}

/// Max subcubic-subtree treedepth (degree cap 3).
pub fn max_subcubic_subtree_td(g: &Graph, budget: usize) -> Result<SubtreeWitness> {
    max_subtree_td(g, Some(3), budget)
}

struct SubtreeSearch<'a> {
    adj: &'a [u64],
    cap: usize,
    ceiling: usize,
    best: SubtreeWitness,
    degree: Vec<usize>,
    edges: Vec<(usize, usize)>,
    allowed: u64,
}

impl SubtreeSearch<'_> {
    /// Include/exclude recursion over frontier edges; each subtree whose
    /// smallest vertex is the current root is reached at exactly one leaf.
    fn grow(&mut self, tree: u64, mut frontier: Vec<(usize, usize)>) {
        if self.best.depth >= self.ceiling {
            return;
        }
        while let Some(&(x, y)) = frontier.first() {
            if tree >> y & 1 == 1 || self.degree[x] >= self.cap {
                frontier.remove(0);
                continue;
            }
            break;
        }
        let Some(&(x, y)) = frontier.first() else {
            self.evaluate(tree);
            return;
        };
        let rest: Vec<(usize, usize)> = frontier[1..].to_vec();
        // include (x, y)
        let mut with = rest.clone();
        with.extend(bits(self.adj[y] & self.allowed & !tree).map(|z| (y, z)));
        self.degree[x] += 1;
        self.degree[y] += 1;
        self.edges.push((x, y));
        self.grow(tree | 1 << y, with);
        self.edges.pop();
        self.degree[x] -= 1;
        self.degree[y] -= 1;
        // exclude (x, y)
        self.grow(tree, rest);
    }

    fn evaluate(&mut self, tree: u64) {
        // a subtree that can still absorb an edge is dominated by a larger one
        for v in bits(tree) {
            if self.degree[v] < self.cap && self.adj[v] & self.allowed & !tree != 0 {
                return;
            }
        }
        let mut local = vec![0u64; self.adj.len()];
        for &(a, b) in &self.edges {
            local[a] |= 1 << b;
            local[b] |= 1 << a;
        }
        let depth = TdSolver::new(&local).td(tree);
        if depth > self.best.depth {
            self.best = SubtreeWitness {
                depth,
                vertices: bits(tree).collect(),
                edges: self.edges.clone(),
            };
        }
    }
}

/// Longest path in a tree by BFS from every vertex. Returns the edge count
/// and one longest path.
pub fn longest_path_brute(t: &RootedTree) -> (usize, Vec<usize>) {
    let g = t.to_graph();
    let n = g.n();
    let mut best = (0, vec![t.root()]);
    for s in 0..n {
        let mut prev = vec![usize::MAX; n];
        let mut dist = vec![usize::MAX; n];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    prev[w] = u;
                    queue.push_back(w);
                }
            }
        }
        for e in 0..n {
            if dist[e] > best.0 {
                let mut path = vec![e];
                while *path.last().unwrap() != s {
                    path.push(prev[*path.last().unwrap()]);
                }
                best = (dist[e], path);
            }
        }
    }
    best
}

/// Largest `h` such that the tree contains a subdivision of the full binary
/// tree with `h` levels, by testing every connected vertex subset.
pub fn binary_subdivision_depth_brute(t: &RootedTree, budget: usize) -> Result<usize> {
    let g = t.to_graph();
    check_budget(&g, budget.min(20))?;
    let n = g.n();
    let adj = adjacency_masks(&g);
    let mut best = 1;
    for mask in 1u64..(1u64 << n) {
        if components(&adj, mask).len() != 1 {
            continue;
        }
        best = best.max(subdivision_levels(&adj, mask));
    }
    Ok(best)
}

/// Levels of the full binary tree that the subtree `mask` subdivides, or 1.
fn subdivision_levels(adj: &[u64], mask: u64) -> usize {
    let deg = |v: usize| (adj[v] & mask).count_ones();
    if mask.count_ones() < 3 || bits(mask).any(|v| deg(v) > 3) {
        return 1;
    }
    let mut best = 1;
    for root in bits(mask).filter(|&v| deg(v) == 2) {
        // count branching vertices (two children) on every root-to-leaf path
        let mut levels = Vec::new();
        let mut stack = vec![(root, usize::MAX, 0usize)];
        while let Some((v, from, branches)) = stack.pop() {
            let kids: Vec<usize> = bits(adj[v] & mask).filter(|&w| w != from).collect();
            let branches = branches + usize::from(kids.len() == 2);
            if kids.is_empty() {
                levels.push(branches);
            }
            for w in kids {
                stack.push((w, v, branches));
            }
        }
        if levels.iter().all(|&l| l == levels[0]) {
            best = best.max(levels[0] + 1);
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;

    #[test]
    fn td_small_cases() {
        assert_eq!(td_exact(&Graph::empty(0), 15).unwrap().0, 0);
        assert_eq!(td_exact(&generate::complete(4), 15).unwrap().0, 4);
        assert_eq!(td_exact(&generate::path(7), 15).unwrap().0, 3);
        assert_eq!(td_exact(&Graph::empty(5), 15).unwrap().0, 1);
        let (d, w) = td_exact(&generate::cycle(6), 15).unwrap();
        assert_eq!(w.validate(&generate::cycle(6)), Ok(()));
        assert_eq!(w.height(), d);
    }

    #[test]
    fn td_paths_match_log_formula() {
        for n in 1..=15usize {
            let want = (usize::BITS - n.leading_zeros()) as usize;
            assert_eq!(td_exact(&generate::path(n), 15).unwrap().0, want);
        }
    }

    #[test]
    fn budget_is_enforced() {
        let err = td_exact(&generate::path(16), 15).unwrap_err();
        assert_eq!(err, Error::BudgetExceeded { n: 16, budget: 15 });
        assert!(tw_exact(&generate::path(13), 12).is_err());
        assert!(max_subcubic_subtree_td(&generate::path(10), 9).is_err());
    }

    #[test]
    fn tw_small_cases() {
        assert_eq!(tw_exact(&generate::path(6), 12).unwrap(), 1);
        assert_eq!(tw_exact(&generate::star(5), 12).unwrap(), 1);
        assert_eq!(tw_exact(&generate::complete(5), 12).unwrap(), 4);
        assert_eq!(tw_exact(&generate::cycle(5), 12).unwrap(), 2);
        assert_eq!(tw_exact(&Graph::empty(3), 12).unwrap(), 0);
        for n in 1..=8 {
            assert_eq!(tw_exact(&generate::complete(n), 12).unwrap(), n - 1);
        }
    }

    #[test]
    fn tw_by_brute_force_orders() {
        // width of the best elimination order, trying all permutations
        fn brute(g: &Graph) -> usize {
            let n = g.n();
            let mut perm: Vec<usize> = (0..n).collect();
            let mut best = usize::MAX;
            permute(&mut perm, 0, &mut |order| {
                let mut adj: Vec<std::collections::BTreeSet<usize>> =
                    (0..n).map(|v| g.neighbors(v).iter().copied().collect()).collect();
                let mut width = 0;
                for &v in order.iter() {
                    let nb: Vec<usize> = adj[v].iter().copied().collect();
                    width = width.max(nb.len());
                    for &a in &nb {
                        adj[a].remove(&v);
                        for &b in &nb {
                            if a != b {
                                adj[a].insert(b);
                            }
                        }
                    }
                }
                best = best.min(width);
            });
            best
        }
        fn permute(p: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
            if k == p.len() {
                f(p);
                return;
            }
            for i in k..p.len() {
                p.swap(k, i);
                permute(p, k + 1, f);
                p.swap(k, i);
            }
        }
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..40 {
            let n = rand::Rng::gen_range(&mut rng, 1..=7);
            let g = generate::random_connected_graph(n, &mut rng);
            assert_eq!(tw_exact(&g, 12).unwrap(), brute(&g), "{g:?}");
        }
    }

    #[test]
    fn subcubic_subtree_examples() {
        assert_eq!(max_subcubic_subtree_td(&generate::complete(4), 9).unwrap().depth, 3);
        assert_eq!(max_subcubic_subtree_td(&generate::path(4), 9).unwrap().depth, 3);
        assert_eq!(max_subcubic_subtree_td(&Graph::empty(1), 9).unwrap().depth, 1);
        // star K_{1,5}: capped subtrees are paths of 3 vertices
        assert_eq!(max_subcubic_subtree_td(&generate::star(5), 9).unwrap().depth, 2);
        assert_eq!(max_subtree_td(&generate::star(5), None, 9).unwrap().depth, 2);
    }

    #[test]
    fn subtree_witness_is_a_subtree() {
        let g = generate::complete(6);
        let w = max_subcubic_subtree_td(&g, 9).unwrap();
        assert_eq!(w.edges.len() + 1, w.vertices.len());
        for &(a, b) in &w.edges {
            assert!(g.has_edge(a, b));
        }
        let t = crate::graph::Subtree::from_host_edges(w.vertices[0], &w.edges).unwrap();
        assert!(t.max_degree() <= 3);
        assert_eq!(td_exact(&t.tree.to_graph(), 15).unwrap().0, w.depth);
    }

    #[test]
    fn subtree_enumeration_counts_spanning_trees() {
        // without a cap and without pruning every subtree of K4 is visited;
        // check the include/exclude recursion against Cayley's formula
        struct Count<'a> {
            adj: &'a [u64],
            allowed: u64,
            spanning: usize,
            all: usize,
        }
        impl Count<'_> {
            fn grow(&mut self, tree: u64, mut frontier: Vec<(usize, usize)>) {
                while let Some(&(_, y)) = frontier.first() {
                    if tree >> y & 1 == 1 {
                        frontier.remove(0);
                    } else {
                        break;
                    }
                }
                let Some(&(_, y)) = frontier.first() else {
                    self.all += 1;
                    if tree.count_ones() == 4 {
                        self.spanning += 1;
                    }
                    return;
                };
                let rest = frontier[1..].to_vec();
                let mut with = rest.clone();
                with.extend(bits(self.adj[y] & self.allowed & !tree).map(|z| (y, z)));
                self.grow(tree | 1 << y, with);
                self.grow(tree, rest);
            }
        }
        let g = generate::complete(4);
        let adj = adjacency_masks(&g);
        let mut c = Count { adj: &adj, allowed: 0b1111, spanning: 0, all: 0 };
        c.grow(1, vec![(0, 1), (0, 2), (0, 3)]);
        assert_eq!(c.spanning, 16);
        // subtrees of K4 containing vertex 0: 1 + 3 + 3·2·... = 1 + 3 + 9 + 16
        assert_eq!(c.all, 1 + 3 + 9 + 16);
    }

    #[test]
    fn subdivision_brute_small_cases() {
        let p = RootedTree::from_graph(&generate::path(6), 0).unwrap();
        assert_eq!(binary_subdivision_depth_brute(&p, 16).unwrap(), 2);
        let single = RootedTree::single();
        assert_eq!(binary_subdivision_depth_brute(&single, 16).unwrap(), 1);
        let fbt = generate::complete_kary_tree(2, 3);
        assert_eq!(binary_subdivision_depth_brute(&fbt, 16).unwrap(), 3);
        let spider = RootedTree::from_graph(&generate::spider(3, 2), 0).unwrap();
        assert_eq!(binary_subdivision_depth_brute(&spider, 16).unwrap(), 2);
    }

    #[test]
    fn longest_path_brute_small_cases() {
        let star = RootedTree::from_graph(&generate::star(3), 0).unwrap();
        assert_eq!(longest_path_brute(&star).0, 2);
        assert_eq!(longest_path_brute(&RootedTree::single()).0, 0);
    }
}
