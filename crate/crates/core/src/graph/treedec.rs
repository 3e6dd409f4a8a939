use std::fmt;

use super::{Graph, RootedTree};
use crate::error::{Error, Result};

/// Tree decomposition: a rooted tree of bag nodes, each bag a sorted vertex set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeDecomposition {
    pub tree: RootedTree,
    pub bags: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TdecViolation {
    BagCount { nodes: usize, bags: usize },
    VertexOutOfRange { node: usize, vertex: usize },
    EdgeUncovered { u: usize, v: usize },
    VertexUncovered { v: usize },
    Disconnected { v: usize },
}

impl fmt::Display for TdecViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            TdecViolation::BagCount { nodes, bags } => {
                write!(f, "{nodes} tree nodes but {bags} bags")
            }
            TdecViolation::VertexOutOfRange { node, vertex } => {
                write!(f, "bag {} holds unknown vertex {}", node + 1, vertex + 1)
            }
            TdecViolation::EdgeUncovered { u, v } => {
                write!(f, "edge {} {} is in no bag", u + 1, v + 1)
            }
            TdecViolation::VertexUncovered { v } => write!(f, "vertex {} is in no bag", v + 1),
            TdecViolation::Disconnected { v } => {
                write!(f, "bags holding vertex {} are not connected", v + 1)
            }
        }
    }
}

impl TreeDecomposition {
    pub fn new(tree: RootedTree, mut bags: Vec<Vec<usize>>) -> Self {
        for bag in bags.iter_mut() {
            bag.sort_unstable();
            bag.dedup();
        }
        TreeDecomposition { tree, bags }
    }

    pub fn max_bag_size(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Max bag size minus one (0 for decompositions with only empty bags).
    pub fn width(&self) -> usize {
        self.max_bag_size().saturating_sub(1)
    }

    pub fn validate(&self, g: &Graph) -> std::result::Result<(), TdecViolation> {
        let k = self.tree.n();
        if self.bags.len() != k {
            return Err(TdecViolation::BagCount {
                nodes: k,
                bags: self.bags.len(),
            });
        }
        let n = g.n();
        let mut holders: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (t, bag) in self.bags.iter().enumerate() {
            for &v in bag {
                if v >= n {
                    return Err(TdecViolation::VertexOutOfRange { node: t, vertex: v });
                }
                holders[v].push(t);
            }
        }
        for (u, v) in g.edges() {
            let (a, b) = (&holders[u], &holders[v]);
            if !sorted_intersect(a, b) {
                return Err(TdecViolation::EdgeUncovered { u, v });
            }
        }
        for (v, hs) in holders.iter().enumerate() {
            if hs.is_empty() {
                return Err(TdecViolation::VertexUncovered { v });
            }
            // a node set is a connected subtree iff exactly one member has its
            // parent outside the set
            let tops = hs
                .iter()
                .filter(|&&t| match self.tree.parent(t) {
                    None => true,
                    Some(p) => self.bags[p].binary_search(&v).is_err(),
                })
                .count();
            if tops != 1 {
                return Err(TdecViolation::Disconnected { v });
            }
        }
        Ok(())
    }

    /// PACE 2017 `.td` text: `s td` header, bag lines, then tree edges.
    pub fn to_pace(&self, n: usize) -> String {
        let mut out = format!("s td {} {} {}\n", self.bags.len(), self.max_bag_size(), n);
        for (t, bag) in self.bags.iter().enumerate() {
            out.push_str(&format!("b {}", t + 1));
            for v in bag {
                out.push_str(&format!(" {}", v + 1));
            }
            out.push('\n');
        }
        let mut edges: Vec<_> = self.tree.edges().map(|(p, c)| (p.min(c), p.max(c))).collect();
        edges.sort_unstable();
        for (a, b) in edges {
            out.push_str(&format!("{} {}\n", a + 1, b + 1));
        }
        out
    }

    /// Parses PACE 2017 `.td`; the decomposition tree is rooted at bag 1.
    /// Returns the decomposition and the declared vertex count.
    pub fn parse_pace(text: &str) -> Result<(Self, usize)> {
        let mut header: Option<(usize, usize, usize)> = None;
        let mut bags: Vec<Option<Vec<usize>>> = Vec::new();
        let mut edges = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('c') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let num = |s: &str| -> Result<usize> {
                s.parse()
                    .map_err(|_| Error::parse(line_no, format!("bad number `{s}`")))
            };
            match fields[0] {
                "s" => {
                    if fields.len() != 5 || fields[1] != "td" || header.is_some() {
                        return Err(Error::parse(line_no, "malformed solution line"));
                    }
                    let h = (num(fields[2])?, num(fields[3])?, num(fields[4])?);
                    bags = vec![None; h.0];
                    header = Some(h);
                }
                "b" => {
                    let (nb, _, n) = header.ok_or_else(|| Error::parse(line_no, "bag before header"))?;
                    let id = num(fields.get(1).copied().unwrap_or(""))?;
                    if id == 0 || id > nb {
                        return Err(Error::parse(line_no, format!("bag id {id} out of range")));
                    }
                    if bags[id - 1].is_some() {
                        return Err(Error::parse(line_no, format!("bag {id} listed twice")));
                    }
                    let mut bag = Vec::with_capacity(fields.len() - 2);
                    for f in &fields[2..] {
                        let v = num(f)?;
                        if v == 0 || v > n {
                            return Err(Error::parse(line_no, format!("vertex {v} out of range")));
                        }
                        bag.push(v - 1);
                    }
                    bags[id - 1] = Some(bag);
                }
                _ => {
                    let (nb, _, _) = header.ok_or_else(|| Error::parse(line_no, "edge before header"))?;
                    if fields.len() != 2 {
                        return Err(Error::parse(line_no, "malformed tree edge"));
                    }
                    let (a, b) = (num(fields[0])?, num(fields[1])?);
                    if a == 0 || b == 0 || a > nb || b > nb {
                        return Err(Error::parse(line_no, "tree edge endpoint out of range"));
                    }
                    edges.push((a - 1, b - 1));
                }
            }
        }
        let (nb, width, n) = header.ok_or_else(|| Error::parse(0, "missing `s td` line"))?;
        let bags: Vec<Vec<usize>> = bags
            .into_iter()
            .enumerate()
            .map(|(i, b)| b.ok_or_else(|| Error::parse(0, format!("bag {} missing", i + 1))))
            .collect::<Result<_>>()?;
        if nb == 0 {
            return Err(Error::parse(0, "decomposition without bags"));
        }
        let skeleton = Graph::from_edges_dedup(nb, edges.iter().copied());
        if skeleton.m() != edges.len() {
            return Err(Error::InvalidTreeDecomposition("repeated tree edge".into()));
        }
        let tree = RootedTree::from_graph(&skeleton, 0)
            .map_err(|e| Error::InvalidTreeDecomposition(e.to_string()))?;
        let td = TreeDecomposition::new(tree, bags);
        if td.max_bag_size() != width {
            return Err(Error::parse(
                0,
                format!("declared bag size {width}, largest bag has {}", td.max_bag_size()),
            ));
        }
        Ok((td, n))
    }
}

fn sorted_intersect(a: &[usize], b: &[usize]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return true,
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_bags(a: Vec<usize>, b: Vec<usize>) -> TreeDecomposition {
        let tree = RootedTree::from_parents(vec![None, Some(0)]).unwrap();
        TreeDecomposition::new(tree, vec![a, b])
    }

    #[test]
    fn triangle_single_bag() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let td = TreeDecomposition::new(RootedTree::single(), vec![vec![2, 0, 1]]);
        assert_eq!(td.validate(&g), Ok(()));
        assert_eq!(td.width(), 2);
    }

    #[test]
    fn path_two_bags() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let td = two_bags(vec![0, 1], vec![1, 2]);
        assert_eq!(td.validate(&g), Ok(()));
        assert_eq!(td.width(), 1);
        let bad = two_bags(vec![0], vec![2]);
        assert_eq!(bad.validate(&g), Err(TdecViolation::EdgeUncovered { u: 0, v: 1 }));
    }

    #[test]
    fn disconnected_occurrence() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let tree = RootedTree::from_parents(vec![None, Some(0), Some(1)]).unwrap();
        let td = TreeDecomposition::new(tree, vec![vec![0, 1], vec![1, 2], vec![0]]);
        assert_eq!(td.validate(&g), Err(TdecViolation::Disconnected { v: 0 }));
    }

    #[test]
    fn pace_roundtrip() {
        let td = two_bags(vec![0, 1], vec![1, 2]);
        let text = td.to_pace(3);
        assert_eq!(text, "s td 2 2 3\nb 1 1 2\nb 2 2 3\n1 2\n");
        let (back, n) = TreeDecomposition::parse_pace(&text).unwrap();
        assert_eq!(n, 3);
        assert_eq!(back, td);
    }

    #[test]
    fn pace_parse_rejects_garbage() {
        assert!(TreeDecomposition::parse_pace("s td 1 1 2\nb 1 3\n").is_err());
        assert!(TreeDecomposition::parse_pace("s td 2 1 2\nb 1 1\nb 2 2\n").is_err());
        assert!(TreeDecomposition::parse_pace("s td 1 2 2\nb 1 1\n").is_err());
    }
}
