use std::fmt;

use super::Graph;
use crate::error::{Error, Result};

/// Rooted forest plus an injective placement of graph vertices on its nodes,
/// such that every edge joins an ancestor-descendant pair.
///
/// Forest nodes are `0..parent.len()`; `assign[v]` is the node of vertex `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreedepthDecomposition {
    parent: Vec<Option<usize>>,
    assign: Vec<usize>,
    height: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TdViolation {
    WrongVertexCount { expected: usize, found: usize },
    NodeOutOfRange { vertex: usize, node: usize },
    NotInjective { u: usize, v: usize, node: usize },
    Incomparable { u: usize, v: usize },
    HeightMismatch { stored: usize, actual: usize },
}

impl fmt::Display for TdViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            TdViolation::WrongVertexCount { expected, found } => {
                write!(f, "decomposition places {found} vertices, graph has {expected}")
            }
            TdViolation::NodeOutOfRange { vertex, node } => {
                write!(f, "vertex {} mapped to missing node {node}", vertex + 1)
            }
            TdViolation::NotInjective { u, v, node } => {
                write!(f, "vertices {} and {} share node {node}", u + 1, v + 1)
            }
            TdViolation::Incomparable { u, v } => {
                write!(f, "edge {} {} joins incomparable nodes", u + 1, v + 1)
            }
            TdViolation::HeightMismatch { stored, actual } => {
                write!(f, "stored height {stored}, recomputed {actual}")
            }
        }
    }
}

impl TreedepthDecomposition {
    pub fn new(parent: Vec<Option<usize>>, assign: Vec<usize>) -> Result<Self> {
        let k = parent.len();
        if let Some(&bad) = parent.iter().flatten().find(|&&p| p >= k) {
            return Err(Error::InvalidTreedepthDecomposition(format!("parent {bad} out of range")));
        }
        if let Some(&bad) = assign.iter().find(|&&x| x >= k) {
            return Err(Error::InvalidTreedepthDecomposition(format!("node {bad} out of range")));
        }
        let height = forest_height(&parent).ok_or_else(|| {
            Error::InvalidTreedepthDecomposition("parent pointers contain a cycle".into())
        })?;
        Ok(TreedepthDecomposition {
            parent,
            assign,
            height,
        })
    }

    /// Decomposition whose forest nodes are the graph vertices themselves.
    pub fn from_vertex_parents(parent: Vec<Option<usize>>) -> Result<Self> {
        let assign = (0..parent.len()).collect();
        Self::new(parent, assign)
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn node_count(&self) -> usize {
        self.parent.len()
    }

    pub fn forest_parent(&self, node: usize) -> Option<usize> {
        self.parent[node]
    }

    pub fn assign(&self) -> &[usize] {
        &self.assign
    }

    pub fn validate(&self, g: &Graph) -> std::result::Result<(), TdViolation> {
        let k = self.parent.len();
        if self.assign.len() != g.n() {
            return Err(TdViolation::WrongVertexCount {
                expected: g.n(),
                found: self.assign.len(),
            });
        }
        let mut owner = vec![usize::MAX; k];
        for (v, &x) in self.assign.iter().enumerate() {
            if x >= k {
                return Err(TdViolation::NodeOutOfRange { vertex: v, node: x });
            }
            if owner[x] != usize::MAX {
                return Err(TdViolation::NotInjective {
                    u: owner[x],
                    v,
                    node: x,
                });
            }
            owner[x] = v;
        }
        let actual = forest_height(&self.parent).unwrap_or(usize::MAX);
        if actual != self.height {
            return Err(TdViolation::HeightMismatch {
                stored: self.height,
                actual,
            });
        }
        let (tin, tout) = forest_euler(&self.parent);
        let related = |a: usize, b: usize| tin[a] <= tin[b] && tout[b] <= tout[a];
        for (u, v) in g.edges() {
            let (a, b) = (self.assign[u], self.assign[v]);
            if !related(a, b) && !related(b, a) {
                return Err(TdViolation::Incomparable { u, v });
            }
        }
        Ok(())
    }

    /// Forest parents after splicing out nodes that carry no vertex; entry `v`
    /// is the vertex at the nearest occupied proper ancestor of `v`'s node.
    pub fn vertex_parents(&self) -> Vec<Option<usize>> {
        let k = self.parent.len();
        let mut owner = vec![None; k];
        for (v, &x) in self.assign.iter().enumerate() {
            owner[x] = Some(v);
        }
        // nearest occupied ancestor-or-self of every node, filled top-down
        let mut nearest: Vec<Option<usize>> = vec![None; k];
        for x in topological_order(&self.parent) {
            nearest[x] = owner[x].or_else(|| self.parent[x].and_then(|p| nearest[p]));
        }
        self.assign
            .iter()
            .map(|&x| self.parent[x].and_then(|p| nearest[p]))
            .collect()
    }

    /// The same decomposition with nodes = vertices and unused nodes spliced out.
    pub fn compacted(&self) -> TreedepthDecomposition {
        Self::from_vertex_parents(self.vertex_parents()).expect("splicing keeps a forest")
    }

    /// PACE 2020 certificate: height, then the parent vertex of each vertex
    /// (0 for roots). Written for the compacted forest.
    pub fn to_pace(&self) -> String {
        let parents = self.vertex_parents();
        let height = forest_height(&parents).unwrap_or(0);
        let mut out = format!("{height}\n");
        for p in parents {
            out.push_str(&format!("{}\n", p.map_or(0, |p| p + 1)));
        }
        out
    }
}

/// Parses a PACE 2020 certificate for a graph on `n` vertices.
pub fn parse_td_certificate(text: &str, n: usize) -> Result<TreedepthDecomposition> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('c'));
    let (hline, h) = lines
        .next()
        .ok_or_else(|| Error::parse(0, "missing height line"))?;
    let height: usize = h
        .parse()
        .map_err(|_| Error::parse(hline, format!("bad height `{h}`")))?;
    let mut parent = Vec::with_capacity(n);
    for (line, l) in lines {
        let p: usize = l
            .parse()
            .map_err(|_| Error::parse(line, format!("bad parent `{l}`")))?;
        if p > n {
            return Err(Error::parse(line, format!("parent {p} out of range")));
        }
        parent.push(p.checked_sub(1));
    }
    if parent.len() != n {
        return Err(Error::parse(0, format!("expected {n} parent lines, found {}", parent.len())));
    }
    let d = TreedepthDecomposition::from_vertex_parents(parent)?;
    if d.height() != height {
        return Err(Error::parse(
            hline,
            format!("declared height {height}, forest has height {}", d.height()),
        ));
    }
    Ok(d)
}

fn topological_order(parent: &[Option<usize>]) -> Vec<usize> {
    let k = parent.len();
    let mut children = vec![Vec::new(); k];
    let mut stack = Vec::new();
    for (x, p) in parent.iter().enumerate() {
        match p {
            Some(p) => children[*p].push(x),
            None => stack.push(x),
        }
    }
    let mut order = Vec::with_capacity(k);
    while let Some(x) = stack.pop() {
        order.push(x);
        stack.extend(children[x].iter().copied());
    }
    order
}

/// Longest root-to-leaf node count, or `None` if the pointers are cyclic.
fn forest_height(parent: &[Option<usize>]) -> Option<usize> {
    let order = topological_order(parent);
    if order.len() != parent.len() {
        return None;
    }
    let mut depth = vec![0; parent.len()];
    let mut best = 0;
    for x in order {
        depth[x] = parent[x].map_or(1, |p| depth[p] + 1);
        best = best.max(depth[x]);
    }
    Some(best)
}

fn forest_euler(parent: &[Option<usize>]) -> (Vec<usize>, Vec<usize>) {
    let k = parent.len();
    let mut children = vec![Vec::new(); k];
    let mut roots = Vec::new();
    for (x, p) in parent.iter().enumerate() {
        match p {
            Some(p) => children[*p].push(x),
            None => roots.push(x),
        }
    }
    let mut tin = vec![0; k];
    let mut tout = vec![0; k];
    let mut clock = 0;
    let mut stack: Vec<(usize, bool)> = roots.iter().rev().map(|&r| (r, false)).collect();
    while let Some((x, done)) = stack.pop() {
        if done {
            tout[x] = clock;
            continue;
        }
        tin[x] = clock;
        clock += 1;
        stack.push((x, true));
        stack.extend(children[x].iter().rev().map(|&c| (c, false)));
    }
    (tin, tout)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k3() -> Graph {
        Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    #[test]
    fn single_vertex_certificate() {
        let d = TreedepthDecomposition::from_vertex_parents(vec![None]).unwrap();
        assert_eq!(d.to_pace(), "1\n0\n");
    }

    #[test]
    fn path_rooted_in_middle() {
        let d = TreedepthDecomposition::from_vertex_parents(vec![Some(1), None, Some(1)]).unwrap();
        assert_eq!(d.to_pace(), "2\n2\n0\n2\n");
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(d.validate(&p3), Ok(()));
    }

    #[test]
    fn clique_chain() {
        let d = TreedepthDecomposition::from_vertex_parents(vec![None, Some(0), Some(1)]).unwrap();
        assert_eq!(d.to_pace(), "3\n0\n1\n2\n");
        assert_eq!(d.validate(&k3()), Ok(()));
    }

    #[test]
    fn clique_star_is_rejected_on_leaf_edge() {
        let d = TreedepthDecomposition::from_vertex_parents(vec![None, Some(0), Some(0)]).unwrap();
        assert_eq!(d.validate(&k3()), Err(TdViolation::Incomparable { u: 1, v: 2 }));
    }

    #[test]
    fn shared_node_is_rejected() {
        let d = TreedepthDecomposition::new(vec![None, Some(0), Some(1)], vec![0, 1, 1]).unwrap();
        assert!(matches!(d.validate(&k3()), Err(TdViolation::NotInjective { .. })));
    }

    #[test]
    fn compaction_splices_empty_nodes() {
        // node 0 empty root, node 1 empty, nodes 2..4 carry vertices 0..2
        let d = TreedepthDecomposition::new(
            vec![None, Some(0), Some(1), Some(2), Some(1)],
            vec![2, 3, 4],
        )
        .unwrap();
        assert_eq!(d.height(), 4);
        let g = Graph::from_edges(3, &[(0, 1)]).unwrap();
        assert_eq!(d.validate(&g), Ok(()));
        assert_eq!(d.to_pace(), "2\n0\n1\n0\n");
        assert_eq!(d.compacted().validate(&g), Ok(()));
        let p3 = Graph::from_edges(3, &[(0, 1), (0, 2)]).unwrap();
        assert_eq!(d.validate(&p3), Err(TdViolation::Incomparable { u: 0, v: 2 }));
    }

    #[test]
    fn certificate_parse() {
        let d = parse_td_certificate("3\n0\n1\n2\n", 3).unwrap();
        assert_eq!(d.height(), 3);
        assert!(parse_td_certificate("2\n0\n1\n2\n", 3).is_err());
        assert!(parse_td_certificate("3\n0\n1\n", 3).is_err());
        assert!(parse_td_certificate("3\n2\n3\n1\n", 3).is_err());
    }

    /// Ancestor walk, no Euler tours.
    fn naive_ok(g: &Graph, parent: &[Option<usize>], assign: &[usize]) -> bool {
        let above = |mut x: usize, target: usize| loop {
            if x == target {
                return true;
            }
            match parent[x] {
                Some(p) => x = p,
                None => return false,
            }
        };
        let mut used = std::collections::HashSet::new();
        assign.iter().all(|&x| used.insert(x))
            && g.edges().all(|(u, v)| above(assign[u], assign[v]) || above(assign[v], assign[u]))
    }

    #[test]
    fn mutations_flip_acceptance_exactly_when_they_should() {
        use crate::generate;
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        let (mut accepted, mut rejected) = (0, 0);
        for _ in 0..2000 {
            let n = rng.gen_range(2..=12);
            let g = generate::random_connected_graph(n, &mut rng);
            let (_, d) = crate::oracle::td_exact(&g, 12).unwrap();
            let mut parent = d.parent.clone();
            let mut assign = d.assign.clone();
            if rng.gen_bool(0.5) {
                let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
                assign.swap(a, b);
                if rng.gen_bool(0.2) {
                    assign[a] = assign[b];
                }
            } else {
                // reparent a node under a random non-descendant, or make it a root
                let x = rng.gen_range(0..parent.len());
                let y = rng.gen_range(0..parent.len());
                let mut z = Some(y);
                while let Some(w) = z {
                    if w == x {
                        break;
                    }
                    z = parent[w];
                }
                parent[x] = if z.is_none() { Some(y) } else { None };
            }
            let m = TreedepthDecomposition::new(parent.clone(), assign.clone()).unwrap();
            let want = naive_ok(&g, &parent, &assign);
            assert_eq!(m.validate(&g).is_ok(), want);
            if want {
                accepted += 1;
            } else {
                rejected += 1;
            }
        }
        assert!(accepted > 100 && rejected > 100);
    }
}
