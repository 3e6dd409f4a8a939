//! Graph and tree value types shared by every other module.
//!
//! Vertices are `0..n` in memory. All text formats (`.gr`, `.td`, treedepth
//! certificates) are 1-indexed, and conversion happens only at parse/write.

mod tdd;
mod treedec;
mod tree;

pub use tdd::{parse_td_certificate, TdViolation, TreedepthDecomposition};
pub use treedec::{TdecViolation, TreeDecomposition};
pub use tree::{RootedTree, Subtree};

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};

/// Undirected simple graph with sorted adjacency lists.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    /// Builds a graph from an edge list, rejecting self-loops, duplicates and
    /// out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for (i, &(u, v)) in edges.iter().enumerate() {
            if u >= n || v >= n {
                return Err(Error::parse(
                    i + 1,
                    format!("edge ({u}, {v}) out of range for n = {n}"),
                ));
            }
            if u == v {
                return Err(Error::parse(i + 1, format!("self-loop at {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::parse(0, format!("duplicate edge ({u}, {})", w[0])));
            }
        }
        Ok(Graph {
            adj,
            m: edges.len(),
        })
    }

    /// Like [`Graph::from_edges`] but silently drops loops and repeated edges.
    pub fn from_edges_dedup(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            if u != v {
                adj[u].push(v);
                adj[v].push(u);
            }
        }
        let mut m2 = 0;
        for list in adj.iter_mut() {
            list.sort_unstable();
            list.dedup();
            m2 += list.len();
        }
        Graph { adj, m: m2 / 2 }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            queue.push_back(s);
            let mut comp = Vec::new();
            while let Some(u) = queue.pop_front() {
                comp.push(u);
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.components().len() == 1
    }

    /// True when the graph is connected and acyclic.
    pub fn is_tree(&self) -> bool {
        self.n() >= 1 && self.m + 1 == self.n() && self.is_connected()
    }

    /// Subgraph induced by `vertices`; vertex `i` of the result is `vertices[i]`.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let edges = vertices.iter().enumerate().flat_map(|(i, &v)| {
            let index = &index;
            self.adj[v]
                .iter()
                .filter_map(move |&w| (index[w] != usize::MAX && index[w] > i).then(|| (i, index[w])))
        });
        Graph::from_edges_dedup(vertices.len(), edges)
    }

    /// Parses a PACE `.gr` document (`p tdp|tw|edge n m` header, then edges).
    pub fn parse(text: &str) -> Result<Self> {
        let mut header: Option<(usize, usize)> = None;
        let mut edges = Vec::new();
        let mut edge_lines = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('c') {
                continue;
            }
            let mut fields = line.split_whitespace();
            let first = fields.next().unwrap_or_default();
            if first == "p" {
                if header.is_some() {
                    return Err(Error::parse(line_no, "second header line"));
                }
                let desc = fields
                    .next()
                    .ok_or_else(|| Error::parse(line_no, "malformed header"))?;
                if !matches!(desc, "tdp" | "tw" | "edge") {
                    return Err(Error::parse(line_no, format!("unknown problem descriptor `{desc}`")));
                }
                let n = parse_num(fields.next(), line_no, "vertex count")?;
                let m = parse_num(fields.next(), line_no, "edge count")?;
                if fields.next().is_some() {
                    return Err(Error::parse(line_no, "trailing fields in header"));
                }
                header = Some((n, m));
                continue;
            }
            let (n, _) = header.ok_or_else(|| Error::parse(line_no, "edge before header"))?;
            let (a, b) = if first == "e" {
                (fields.next(), fields.next())
            } else {
                (Some(first), fields.next())
            };
            let u = parse_num(a, line_no, "endpoint")?;
            let v = parse_num(b, line_no, "endpoint")?;
            if fields.next().is_some() {
                return Err(Error::parse(line_no, "trailing fields in edge line"));
            }
            for x in [u, v] {
                if x == 0 || x > n {
                    return Err(Error::parse(line_no, format!("vertex {x} out of range 1..={n}")));
                }
            }
            if u == v {
                return Err(Error::parse(line_no, format!("self-loop at {u}")));
            }
            edges.push((u - 1, v - 1));
            edge_lines.push(line_no);
        }
        let (n, m) = header.ok_or_else(|| Error::parse(0, "missing header"))?;
        if edges.len() != m {
            return Err(Error::parse(
                edge_lines.last().copied().unwrap_or(0),
                format!("header announces {m} edges, found {}", edges.len()),
            ));
        }
        let mut seen = std::collections::HashSet::with_capacity(m);
        for (&(u, v), &line) in edges.iter().zip(&edge_lines) {
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::parse(line, format!("duplicate edge {} {}", u + 1, v + 1)));
            }
        }
        Graph::from_edges(n, &edges)
    }

    /// Serializes to `.gr` with a `p tdp` header and edges in canonical order.
    pub fn to_gr(&self) -> String {
        let mut out = format!("p tdp {} {}\n", self.n(), self.m);
        for (u, v) in self.edges() {
            out.push_str(&format!("{} {}\n", u + 1, v + 1));
        }
        out
    }
}

fn parse_num(field: Option<&str>, line: usize, what: &str) -> Result<usize> {
    let s = field.ok_or_else(|| Error::parse(line, format!("missing {what}")))?;
    s.parse()
        .map_err(|_| Error::parse(line, format!("bad {what} `{s}`")))
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n(), self.edges().collect::<Vec<_>>())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_edge() {
        let g = Graph::parse("p tdp 2 1\n1 2").unwrap();
        assert_eq!(g.n(), 2);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1)]);
    }

    #[test]
    fn triangle() {
        let g = Graph::parse("p tdp 3 3\n1 2\n2 3\n1 3").unwrap();
        assert_eq!(g.m(), 3);
        assert_eq!(g.neighbors(0), &[1, 2]);
    }

    #[test]
    fn duplicate_edge_rejected() {
        let err = Graph::parse("p tdp 3 2\n1 2\n1 2").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
    }

    #[test]
    fn reversed_duplicate_rejected() {
        assert!(Graph::parse("p tdp 3 2\n1 2\n2 1").is_err());
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let cases = [
            ("p tdp 2 1\n1 3", 2),
            ("p tdp 2 1\n1 1", 2),
            ("c hi\np foo 2 1\n1 2", 2),
            ("p tdp 2 2\n1 2", 2),
            ("1 2\np tdp 2 1", 1),
            ("p tdp x 1\n1 2", 1),
        ];
        for (text, line) in cases {
            match Graph::parse(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn accepts_tw_and_dimacs_headers() {
        let g = Graph::parse("c x\np tw 3 2\n1 2\n2 3\n").unwrap();
        assert_eq!(g.m(), 2);
        let g = Graph::parse("p edge 3 2\ne 1 2\ne 2 3\n").unwrap();
        assert_eq!(g.m(), 2);
    }

    #[test]
    fn gr_roundtrip_is_bit_exact() {
        let text = "p tdp 4 3\n1 2\n1 4\n3 4\n";
        let g = Graph::parse(text).unwrap();
        assert_eq!(g.to_gr(), text);
    }

    #[test]
    fn induced_subgraph() {
        let g = Graph::parse("p tdp 4 4\n1 2\n2 3\n3 4\n4 1").unwrap();
        let h = g.induced(&[0, 1, 2]);
        assert_eq!(h.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
        assert!(h.is_tree());
        assert!(!g.is_tree());
    }
}
