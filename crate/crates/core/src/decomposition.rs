//! Tree decompositions: a min-fill heuristic, conversion to greedy tree
//! decompositions (elimination trees), and composition of a tree
//! decomposition with a ranking of its skeleton into a treedepth
//! decomposition of height at most (bag size) · td(skeleton).

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{Graph, RootedTree, TdecViolation, TreeDecomposition, TreedepthDecomposition};
use crate::ranking::schaffer_rank;

/// Tree decomposition whose nodes are the vertices of the graph, every edge
/// joins an ancestor-descendant pair, and every child subtree sends an edge
/// back to its parent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreedyTreeDecomposition {
    pub tree: RootedTree,
    pub bags: Vec<Vec<usize>>,
    pub tau: usize,
}

impl GreedyTreeDecomposition {
    pub fn new(tree: RootedTree, bags: Vec<Vec<usize>>) -> Self {
        let bags: Vec<Vec<usize>> = bags
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b.dedup();
                b
            })
            .collect();
        let tau = bags.iter().map(Vec::len).max().unwrap_or(0);
        GreedyTreeDecomposition { tree, bags, tau }
    }

    pub fn as_tree_decomposition(&self) -> TreeDecomposition {
        TreeDecomposition::new(self.tree.clone(), self.bags.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GreedyViolation {
    /// Node set differs from the vertex set.
    NodeCount { nodes: usize, vertices: usize },
    /// Edge between incomparable nodes.
    Incomparable { u: usize, v: usize },
    /// No edge from the subtree of `child` to `parent`.
    NoBackEdge { parent: usize, child: usize },
    NotATreeDecomposition(TdecViolation),
}

impl fmt::Display for GreedyViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GreedyViolation::NodeCount { nodes, vertices } => {
                write!(f, "condition 1: {nodes} nodes for {vertices} vertices")
            }
            GreedyViolation::Incomparable { u, v } => {
                write!(f, "condition 2: edge {u}-{v} joins incomparable nodes")
            }
            GreedyViolation::NoBackEdge { parent, child } => {
                write!(f, "condition 3: no edge from the subtree of {child} to {parent}")
            }
            GreedyViolation::NotATreeDecomposition(v) => write!(f, "not a tree decomposition: {v:?}"),
        }
    }
}

/// For every non-root node `c` of `tree`, the shallowest vertex `w` of the
/// subtree of `c` adjacent to the parent of `c` (smallest id on ties), or
/// `None` if there is none. Fails with the first edge joining incomparable
/// nodes.
pub(crate) fn back_edges(
    g: &Graph,
    tree: &RootedTree,
) -> std::result::Result<Vec<Option<usize>>, (usize, usize)> {
    let n = tree.n();
    let depth = tree.depths();
    let mut hook: Vec<Option<usize>> = vec![None; n];
    let mut path: Vec<usize> = Vec::new();
    for w in tree.preorder() {
        path.truncate(depth[w] - 1);
        path.push(w);
        for &p in g.neighbors(w) {
            if depth[p] > depth[w] {
                continue;
            }
            if depth[p] == depth[w] || path[depth[p] - 1] != p {
                return Err((w.min(p), w.max(p)));
            }
            let c = path[depth[p]];
            match hook[c] {
                Some(h) if (depth[h], h) <= (depth[w], w) => {}
                _ => hook[c] = Some(w),
            }
        }
    }
    Ok(hook)
}

/// Checks the three greedy conditions, then tree-decomposition validity.
pub fn validate_greedy(g: &Graph, d: &GreedyTreeDecomposition) -> std::result::Result<(), GreedyViolation> {
    if d.tree.n() != g.n() || d.bags.len() != g.n() {
        return Err(GreedyViolation::NodeCount {
            nodes: d.tree.n(),
            vertices: g.n(),
        });
    }
    let hook = back_edges(g, &d.tree).map_err(|(u, v)| GreedyViolation::Incomparable { u, v })?;
    for c in d.tree.preorder() {
        if let Some(p) = d.tree.parent(c) {
            if hook[c].is_none() {
                return Err(GreedyViolation::NoBackEdge { parent: p, child: c });
            }
        }
    }
    d.as_tree_decomposition()
        .validate(g)
        .map_err(GreedyViolation::NotATreeDecomposition)
}

/// Min-fill elimination ordering; bag of `v` is `v` plus its later neighbours
/// in the filled graph, attached below the bag of the earliest of them.
pub fn heuristic_tree_decomposition(g: &Graph) -> TreeDecomposition {
    let n = g.n();
    if n == 0 {
        return TreeDecomposition::new(RootedTree::single(), vec![vec![]]);
    }
    let mut adj: Vec<HashSet<usize>> = (0..n).map(|v| g.neighbors(v).iter().copied().collect()).collect();
    let fill_of = |adj: &[HashSet<usize>], x: usize| -> usize {
        let nb: Vec<usize> = adj[x].iter().copied().collect();
        let mut missing = 0;
        for (i, &a) in nb.iter().enumerate() {
            for &b in &nb[i + 1..] {
                if !adj[a].contains(&b) {
                    missing += 1;
                }
            }
        }
        missing
    };
    let mut fill: Vec<usize> = (0..n).map(|v| fill_of(&adj, v)).collect();
    let mut heap: BinaryHeap<Reverse<(usize, usize, usize)>> =
        (0..n).map(|v| Reverse((fill[v], adj[v].len(), v))).collect();
    let mut position = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut later: Vec<Vec<usize>> = vec![Vec::new(); n];

    while let Some(Reverse((f, deg, v))) = heap.pop() {
        if position[v] != usize::MAX || f != fill[v] || deg != adj[v].len() {
            continue;
        }
        position[v] = order.len();
        order.push(v);
        let mut nb: Vec<usize> = adj[v].iter().copied().collect();
        nb.sort_unstable();
        let mut new_edges = Vec::new();
        for (i, &a) in nb.iter().enumerate() {
            for &b in &nb[i + 1..] {
                if !adj[a].contains(&b) {
                    new_edges.push((a, b));
                }
            }
        }
        for &x in &nb {
            adj[x].remove(&v);
        }
        for &(a, b) in &new_edges {
            adj[a].insert(b);
            adj[b].insert(a);
        }
        adj[v].clear();
        // a new edge ab completes a pair for every common neighbour of a, b
        let touched: HashSet<usize> = nb.iter().copied().collect();
        let mut dirty: Vec<usize> = nb.clone();
        for &(a, b) in &new_edges {
            let (s, l) = if adj[a].len() <= adj[b].len() { (a, b) } else { (b, a) };
            for &x in &adj[s] {
                if !touched.contains(&x) && adj[l].contains(&x) {
                    fill[x] -= 1;
                    dirty.push(x);
                }
            }
        }
        for &x in &nb {
            fill[x] = fill_of(&adj, x);
        }
        dirty.sort_unstable();
        dirty.dedup();
        for x in dirty {
            heap.push(Reverse((fill[x], adj[x].len(), x)));
        }
        later[v] = nb;
    }

    let mut parent: Vec<Option<usize>> = (0..n)
        .map(|v| later[v].iter().copied().min_by_key(|&u| position[u]))
        .collect();
    // disconnected input: hang every other component below the last vertex
    let last = order[n - 1];
    for &v in &order[..n - 1] {
        if parent[v].is_none() {
            parent[v] = Some(last);
        }
    }
    let bags = (0..n)
        .map(|v| {
            let mut b = later[v].clone();
            b.push(v);
            b
        })
        .collect();
    let tree = RootedTree::from_parents(parent).expect("elimination forest is a tree");
    TreeDecomposition::new(tree, bags)
}

/// Elimination order read off a tree decomposition: bags are visited leaves
/// first and each emits, in ascending id, the vertices it does not share with
/// its parent.
pub fn elimination_order(t: &TreeDecomposition, n: usize) -> Vec<usize> {
    let mut done = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for x in t.tree.postorder() {
        let up: &[usize] = t.tree.parent(x).map_or(&[], |p| &t.bags[p]);
        for &v in &t.bags[x] {
            if !done[v] && up.binary_search(&v).is_err() {
                done[v] = true;
                order.push(v);
            }
        }
    }
    order
}

/// Elimination tree of the order extracted from `t`. Bags are contained in
/// bags of `t`, so `tau` never exceeds the maximum bag size of `t`.
pub fn to_greedy(g: &Graph, t: &TreeDecomposition) -> Result<GreedyTreeDecomposition> {
    t.validate(g)
        .map_err(|v| Error::InvalidTreeDecomposition(format!("{v:?}")))?;
    let n = g.n();
    if n == 0 {
        return Err(Error::NotConnected);
    }
    let order = elimination_order(t, n);
    let mut position = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    let mut higher: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut parent = vec![None; n];
    for &v in &order {
        let mut h = std::mem::take(&mut higher[v]);
        h.extend(g.neighbors(v).iter().copied().filter(|&u| position[u] > position[v]));
        h.sort_unstable();
        h.dedup();
        if let Some(&p) = h.iter().min_by_key(|&&u| position[u]) {
            parent[v] = Some(p);
            let pass: Vec<usize> = h.iter().copied().filter(|&u| u != p).collect();
            higher[p].extend(pass);
        } else if position[v] + 1 != n {
            return Err(Error::NotConnected);
        }
        higher[v] = h;
    }
    let bags = (0..n)
        .map(|v| {
            let mut b = higher[v].clone();
            b.push(v);
            b
        })
        .collect();
    let tree = RootedTree::from_parents(parent).expect("elimination tree of a connected graph");
    Ok(GreedyTreeDecomposition::new(tree, bags))
}

/// Treedepth decomposition of the skeleton read off its optimal ranking:
/// the top-ranked vertex of each component is the root of that component.
fn skeleton_forest(skel: &RootedTree, rank: &[u32]) -> Vec<Option<usize>> {
    let n = skel.n();
    let g = skel.to_graph();
    let mut parent = vec![None; n];
    let mut removed = vec![false; n];
    let mut stamp = vec![usize::MAX; n];
    let mut stack: Vec<(Vec<usize>, Option<usize>)> = vec![((0..n).collect(), None)];
    let mut next_stamp = 0;
    while let Some((comp, up)) = stack.pop() {
        let top = *comp.iter().max_by_key(|&&v| rank[v]).unwrap();
        assert_eq!(
            comp.iter().filter(|&&v| rank[v] == rank[top]).count(),
            1,
            "ranking has a repeated maximum in a component"
        );
        parent[top] = up;
        removed[top] = true;
        for &s in g.neighbors(top) {
            if removed[s] || stamp[s] == next_stamp {
                continue;
            }
            // collect the component of s in what is left
            let mut part = vec![s];
            stamp[s] = next_stamp;
            let mut i = 0;
            while i < part.len() {
                for &w in g.neighbors(part[i]) {
                    if !removed[w] && stamp[w] != next_stamp {
                        stamp[w] = next_stamp;
                        part.push(w);
                    }
                }
                i += 1;
            }
            stack.push((part, Some(top)));
        }
        next_stamp += 1;
    }
    parent
}

/// Treedepth decomposition from a tree decomposition: rank the skeleton,
/// place every vertex at its shallowest bag node in the ranking forest and
/// expand each node into a chain of its vertices in ascending id.
pub fn compose_td(g: &Graph, t: &TreeDecomposition) -> Result<TreedepthDecomposition> {
    t.validate(g)
        .map_err(|v| Error::InvalidTreeDecomposition(format!("{v:?}")))?;
    let n = g.n();
    let skel = &t.tree;
    let k = skel.n();
    let ranking = schaffer_rank(skel);
    let fparent = skeleton_forest(skel, &ranking.alpha);

    // forest depths, top-down
    let mut fchildren: Vec<Vec<usize>> = vec![Vec::new(); k];
    let mut froot = 0;
    for x in 0..k {
        match fparent[x] {
            Some(p) => fchildren[p].push(x),
            None => froot = x,
        }
    }
    let mut fdepth = vec![0usize; k];
    let mut topdown = vec![froot];
    let mut i = 0;
    while i < topdown.len() {
        let x = topdown[i];
        for &c in &fchildren[x] {
            fdepth[c] = fdepth[x] + 1;
            topdown.push(c);
        }
        i += 1;
    }

    let mut home: Vec<Option<usize>> = vec![None; n];
    let mut tied = vec![false; n];
    for x in 0..k {
        for &v in &t.bags[x] {
            match home[v] {
                Some(h) if fdepth[h] < fdepth[x] => {}
                Some(h) if fdepth[h] == fdepth[x] => tied[v] = true,
                _ => {
                    home[v] = Some(x);
                    tied[v] = false;
                }
            }
        }
    }
    assert!(!tied.iter().any(|&b| b), "two shallowest bag nodes for one vertex");

    let mut chains: Vec<Vec<usize>> = vec![Vec::new(); k];
    for v in 0..n {
        chains[home[v].expect("validated decomposition covers every vertex")].push(v);
    }
    let mut last: Vec<Option<usize>> = vec![None; k];
    let mut vparent: Vec<Option<usize>> = vec![None; n];
    for &x in &topdown {
        let mut above = fparent[x].and_then(|p| last[p]);
        for &v in &chains[x] {
            vparent[v] = above;
            above = Some(v);
        }
        last[x] = above;
    }
    let d = TreedepthDecomposition::from_vertex_parents(vparent)?;
    assert!(
        d.height() <= t.max_bag_size() * ranking.td(),
        "composition exceeded bag size times skeleton treedepth"
    );
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;
    use crate::oracle;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn td_from(parents: Vec<Option<usize>>, bags: Vec<Vec<usize>>) -> TreeDecomposition {
        TreeDecomposition::new(RootedTree::from_parents(parents).unwrap(), bags)
    }

    #[test]
    fn heuristic_widths() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let t = generate::random_tree(40, &mut rng).to_graph();
        let d = heuristic_tree_decomposition(&t);
        assert_eq!(d.validate(&t), Ok(()));
        assert_eq!(d.width(), 1);
        let c5 = generate::cycle(5);
        assert_eq!(heuristic_tree_decomposition(&c5).width(), 2);
        let k4 = generate::complete(4);
        assert_eq!(heuristic_tree_decomposition(&k4).width(), 3);
        let one = Graph::empty(1);
        assert_eq!(heuristic_tree_decomposition(&one).validate(&one), Ok(()));
    }

    #[test]
    fn heuristic_is_valid_on_random_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..200 {
            let n = rng.gen_range(1..=30);
            let g = generate::random_connected_graph(n, &mut rng);
            let d = heuristic_tree_decomposition(&g);
            assert_eq!(d.validate(&g), Ok(()));
            assert_eq!(d.bags.len(), n);
        }
        let g = Graph::from_edges(5, &[(0, 1), (3, 4)]).unwrap();
        assert_eq!(heuristic_tree_decomposition(&g).validate(&g), Ok(()));
    }

    #[test]
    fn heuristic_is_exact_on_ktrees() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for k in 1..=4 {
            let g = generate::random_partial_ktree(60, k, 1.0, &mut rng);
            assert_eq!(heuristic_tree_decomposition(&g).width(), k);
        }
    }

    #[test]
    fn path_decomposition_gives_chain() {
        let p4 = generate::path(4);
        let t = td_from(vec![None, Some(0), Some(1)], vec![vec![0, 1], vec![1, 2], vec![2, 3]]);
        let d = to_greedy(&p4, &t).unwrap();
        assert_eq!(d.tau, 2);
        assert_eq!(validate_greedy(&p4, &d), Ok(()));
        // order 3, 2, 0, 1: vertex 1 on top with 0 and the chain 2 - 3 below
        assert_eq!(d.tree.parents(), &[Some(1), None, Some(1), Some(2)]);
        assert_eq!(d.tree.height(), 3);
    }

    #[test]
    fn clique_gives_chain() {
        let k3 = generate::complete(3);
        let t = td_from(vec![None], vec![vec![0, 1, 2]]);
        let d = to_greedy(&k3, &t).unwrap();
        assert_eq!(d.tau, 3);
        assert_eq!(d.tree.height(), 3);
        assert_eq!(d.tree.parents(), &[Some(1), Some(2), None]);
        assert_eq!(d.bags, vec![vec![0, 1, 2], vec![1, 2], vec![2]]);
        let one = Graph::empty(1);
        let d = to_greedy(&one, &td_from(vec![None], vec![vec![0]])).unwrap();
        assert_eq!((d.tau, d.bags.clone()), (1, vec![vec![0]]));
    }

    #[test]
    fn greedy_violations_are_named() {
        let p3 = generate::path(3);
        // 1 and 2 are siblings under 0 but adjacent
        let tree = RootedTree::from_parents(vec![None, Some(0), Some(0)]).unwrap();
        let d = GreedyTreeDecomposition::new(tree, vec![vec![0, 1], vec![1, 2], vec![2]]);
        assert_eq!(validate_greedy(&p3, &d), Err(GreedyViolation::Incomparable { u: 1, v: 2 }));
        // chain 2 - 0 - 1: subtree of 0 is {0, 1}, neither adjacent to 2
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let tree = RootedTree::from_parents(vec![Some(2), Some(0), None]).unwrap();
        let d = GreedyTreeDecomposition::new(tree, vec![vec![0, 1, 2], vec![1, 2], vec![2]]);
        assert_eq!(validate_greedy(&g, &d), Ok(()));
        let g = Graph::from_edges(3, &[(0, 1)]).unwrap();
        let d = GreedyTreeDecomposition::new(d.tree, vec![vec![0, 1, 2], vec![1, 2], vec![2]]);
        assert_eq!(validate_greedy(&g, &d), Err(GreedyViolation::NoBackEdge { parent: 2, child: 0 }));
    }

    #[test]
    fn greedy_from_random_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for _ in 0..300 {
            let n = rng.gen_range(1..=40);
            let g = if rng.gen_bool(0.5) {
                generate::random_connected_graph(n, &mut rng)
            } else {
                generate::random_partial_ktree(n, rng.gen_range(1..=4), 0.6, &mut rng)
            };
            let t = heuristic_tree_decomposition(&g);
            let d = to_greedy(&g, &t).unwrap();
            assert_eq!(validate_greedy(&g, &d), Ok(()));
            assert!(d.tau <= t.width() + 1);
        }
    }

    #[test]
    fn compose_examples() {
        let k3 = generate::complete(3);
        let d = compose_td(&k3, &td_from(vec![None], vec![vec![0, 1, 2]])).unwrap();
        assert_eq!(d.height(), 3);
        // C4 as 1-2, 2-4, 4-3, 3-1
        let c4 = Graph::from_edges(4, &[(0, 1), (1, 3), (3, 2), (2, 0)]).unwrap();
        let t = td_from(vec![None, Some(0)], vec![vec![0, 1, 2], vec![1, 2, 3]]);
        let d = compose_td(&c4, &t).unwrap();
        assert_eq!(d.validate(&c4), Ok(()));
        assert_eq!(d.height(), 4);
    }

    #[test]
    fn compose_rejects_invalid_input() {
        let k3 = generate::complete(3);
        let t = td_from(vec![None, Some(0)], vec![vec![0, 1], vec![1, 2]]);
        assert!(matches!(compose_td(&k3, &t), Err(Error::InvalidTreeDecomposition(_))));
    }

    #[test]
    fn compose_on_trees_is_within_twice_optimum() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..200 {
            let n = rng.gen_range(1..=15);
            let g = generate::random_tree_varied(n, &mut rng).to_graph();
            let t = heuristic_tree_decomposition(&g);
            let d = compose_td(&g, &t).unwrap();
            assert_eq!(d.validate(&g), Ok(()));
            let exact = oracle::td_exact(&g, 15).unwrap().0;
            assert!(d.height() <= 2 * schaffer_rank(&t.tree).td());
            assert!(d.height() >= exact);
        }
    }

    #[test]
    fn compose_on_partial_ktrees() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..100 {
            let n = rng.gen_range(1..=80);
            let g = generate::random_partial_ktree(n, 3, 0.5, &mut rng);
            let t = heuristic_tree_decomposition(&g);
            let d = compose_td(&g, &t).unwrap();
            assert_eq!(d.validate(&g), Ok(()));
            assert!(d.height() <= t.max_bag_size() * schaffer_rank(&t.tree).td());
        }
    }
}
