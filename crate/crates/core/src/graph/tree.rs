use std::collections::VecDeque;

use super::Graph;
use crate::error::{Error, Result};

/// Tree with a distinguished root, parent pointers and ordered child lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedTree {
    root: usize,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
}

impl RootedTree {
    pub fn single() -> Self {
        RootedTree {
            root: 0,
            parent: vec![None],
            children: vec![Vec::new()],
        }
    }

    /// Builds a tree from a parent array. Child lists are in ascending order.
    pub fn from_parents(parent: Vec<Option<usize>>) -> Result<Self> {
        let n = parent.len();
        if n == 0 {
            return Err(Error::NotATree("empty vertex set".into()));
        }
        let mut root = None;
        let mut children = vec![Vec::new(); n];
        for (v, p) in parent.iter().enumerate() {
            match *p {
                None if root.is_some() => {
                    return Err(Error::NotATree(format!("second root at {v}")))
                }
                None => root = Some(v),
                Some(p) if p >= n || p == v => {
                    return Err(Error::NotATree(format!("bad parent {p} for {v}")))
                }
                Some(p) => children[p].push(v),
            }
        }
        let root = root.ok_or_else(|| Error::NotATree("no root".into()))?;
        let tree = RootedTree {
            root,
            parent,
            children,
        };
        if tree.preorder().len() != n {
            return Err(Error::NotATree("parent pointers contain a cycle".into()));
        }
        Ok(tree)
    }

    /// Roots a tree-shaped graph at `root`. Children follow adjacency order.
    pub fn from_graph(g: &Graph, root: usize) -> Result<Self> {
        let n = g.n();
        if n == 0 {
            return Err(Error::NotATree("empty graph".into()));
        }
        if root >= n {
            return Err(Error::OutOfRange {
                what: "root",
                value: root as i64 + 1,
            });
        }
        if g.m() + 1 != n {
            return Err(Error::NotATree(format!("{} vertices but {} edges", n, g.m())));
        }
        let mut parent = vec![None; n];
        let mut children = vec![Vec::new(); n];
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([root]);
        seen[root] = true;
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(u);
                    children[u].push(w);
                    queue.push_back(w);
                    count += 1;
                }
            }
        }
        if count != n {
            return Err(Error::NotATree("disconnected".into()));
        }
        Ok(RootedTree {
            root,
            parent,
            children,
        })
    }

    pub fn n(&self) -> usize {
        self.parent.len()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn parents(&self) -> &[Option<usize>] {
        &self.parent
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.children[v].is_empty()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.children[v].len() + usize::from(self.parent[v].is_some())
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Vertices in DFS preorder (children visited in list order).
    pub fn preorder(&self) -> Vec<usize> {
        let mut order = Vec::with_capacity(self.n());
        let mut stack = vec![self.root];
        while let Some(u) = stack.pop() {
            order.push(u);
            stack.extend(self.children[u].iter().rev());
        }
        order
    }

    /// Vertices ordered so that every child precedes its parent.
    pub fn postorder(&self) -> Vec<usize> {
        let mut order = self.preorder();
        order.reverse();
        order
    }

    /// Number of vertices on the path from the root to each vertex.
    pub fn depths(&self) -> Vec<usize> {
        let mut depth = vec![0; self.n()];
        for u in self.preorder() {
            depth[u] = self.parent[u].map_or(1, |p| depth[p] + 1);
        }
        depth
    }

    /// Vertex count of the longest root-to-leaf path.
    pub fn height(&self) -> usize {
        self.depths().into_iter().max().unwrap_or(0)
    }

    /// Tree edges as `(parent, child)`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parent
            .iter()
            .enumerate()
            .filter_map(|(v, p)| p.map(|p| (p, v)))
    }

    pub fn to_graph(&self) -> Graph {
        Graph::from_edges_dedup(self.n(), self.edges())
    }

    /// The same tree rooted at `new_root`.
    pub fn rerooted(&self, new_root: usize) -> RootedTree {
        let mut parent = self.parent.clone();
        let mut prev = None;
        let mut cur = Some(new_root);
        while let Some(v) = cur {
            cur = self.parent[v];
            parent[v] = prev;
            prev = Some(v);
        }
        RootedTree::from_parents(parent).expect("rerooting preserves tree shape")
    }

    /// Entry/exit times of a preorder walk, for O(1) ancestor tests.
    pub fn euler_times(&self) -> (Vec<usize>, Vec<usize>) {
        let n = self.n();
        let mut tin = vec![0; n];
        let mut tout = vec![0; n];
        let mut clock = 0;
        let mut stack = vec![(self.root, false)];
        while let Some((u, done)) = stack.pop() {
            if done {
                tout[u] = clock;
                continue;
            }
            tin[u] = clock;
            clock += 1;
            stack.push((u, true));
            for &c in self.children[u].iter().rev() {
                stack.push((c, false));
            }
        }
        (tin, tout)
    }
}

/// A tree living inside a larger vertex set: node `i` of `tree` stands for
/// vertex `vertices[i]` of the host.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subtree {
    pub vertices: Vec<usize>,
    pub tree: RootedTree,
}

impl Subtree {
    /// Assembles a subtree from host edges; the root is `root` (a host vertex).
    /// Local ids follow ascending host id.
    pub fn from_host_edges(root: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut vertices: Vec<usize> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
        vertices.push(root);
        vertices.sort_unstable();
        vertices.dedup();
        let local = |v: usize| vertices.binary_search(&v).unwrap();
        let g = Graph::from_edges_dedup(vertices.len(), edges.iter().map(|&(a, b)| (local(a), local(b))));
        if g.m() != edges.len() {
            return Err(Error::NotATree("repeated edge".into()));
        }
        let tree = RootedTree::from_graph(&g, local(root))?;
        Ok(Subtree { vertices, tree })
    }

    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn root(&self) -> usize {
        self.vertices[self.tree.root()]
    }

    /// Edges in host ids as `(parent, child)`.
    pub fn host_edges(&self) -> Vec<(usize, usize)> {
        self.tree
            .edges()
            .map(|(p, c)| (self.vertices[p], self.vertices[c]))
            .collect()
    }

    pub fn max_degree(&self) -> usize {
        self.tree.max_degree()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        Graph::from_edges_dedup(n, (1..n).map(|i| (i - 1, i)))
    }

    #[test]
    fn orders_and_height() {
        let t = RootedTree::from_graph(&path(4), 0).unwrap();
        assert_eq!(t.preorder(), vec![0, 1, 2, 3]);
        assert_eq!(t.postorder(), vec![3, 2, 1, 0]);
        assert_eq!(t.height(), 4);
        let t = t.rerooted(2);
        assert_eq!(t.root(), 2);
        assert_eq!(t.height(), 3);
        assert_eq!(t.parent(0), Some(1));
    }

    #[test]
    fn rejects_cycles_and_forests() {
        assert!(RootedTree::from_parents(vec![Some(1), Some(0), None]).is_err());
        assert!(RootedTree::from_parents(vec![None, None]).is_err());
        let cyc = Graph::from_edges_dedup(3, [(0, 1), (1, 2), (2, 0)]);
        assert!(RootedTree::from_graph(&cyc, 0).is_err());
        let forest = Graph::from_edges_dedup(4, [(0, 1), (2, 3), (0, 0)]);
        assert!(RootedTree::from_graph(&forest, 0).is_err());
    }

    #[test]
    fn euler_times_nest() {
        let t = RootedTree::from_graph(&path(3), 1).unwrap();
        let (tin, tout) = t.euler_times();
        for v in 0..3 {
            assert!(tin[1] <= tin[v] && tout[v] <= tout[1]);
        }
        assert!(!(tin[0] <= tin[2] && tout[2] <= tout[0]));
    }

    #[test]
    fn subtree_from_host_edges() {
        let s = Subtree::from_host_edges(7, &[(7, 3), (3, 9)]).unwrap();
        assert_eq!(s.vertices, vec![3, 7, 9]);
        assert_eq!(s.root(), 7);
        assert_eq!(s.host_edges().len(), 2);
        assert!(Subtree::from_host_edges(0, &[(0, 1), (1, 2), (2, 0)]).is_err());
    }
}
