//! Extraction of a subcubic subtree of large treedepth from any tree.
//!
//! Every vertex keeps the (at most) two children with the largest rank lists;
//! the component of the root in the resulting forest is subcubic and its
//! treedepth `d'` satisfies `3^d' > φ^d` where `d` is the treedepth of the
//! input, i.e. `d' > d · log₃ φ ≈ 0.438 d`.

use crate::golden::{GoldenValue, RingScalar};
use crate::graph::{RootedTree, Subtree};
use crate::ranking::{rank_bottom_up, schaffer_rank, sigma, zeta, Ranking};

/// `C(v)` for every vertex: all children if there are at most two, otherwise
/// the two with lexicographically largest rank lists (smaller id on ties).
pub fn select_children(t: &RootedTree, ranking: &Ranking) -> Vec<Vec<usize>> {
    (0..t.n())
        .map(|v| {
            let kids = t.children(v);
            if kids.len() <= 2 {
                let mut k = kids.to_vec();
                k.sort_unstable();
                return k;
            }
            let key = |c: usize| (std::cmp::Reverse(ranking.lists[c]), c);
            let mut best = [kids[0], kids[1]];
            if key(best[1]) < key(best[0]) {
                best.swap(0, 1);
            }
            for &c in &kids[2..] {
                if key(c) < key(best[0]) {
                    best = [c, best[0]];
                } else if key(c) < key(best[1]) {
                    best[1] = c;
                }
            }
            best.to_vec()
        })
        .collect()
}

/// Subcubic subtree of `t` containing its root.
pub fn extract_subcubic(t: &RootedTree) -> Subtree {
    let ranking = schaffer_rank(t);
    extract_with(t, &ranking)
}

pub fn extract_with(t: &RootedTree, ranking: &Ranking) -> Subtree {
    let chosen = select_children(t, ranking);
    let mut vertices = vec![t.root()];
    let mut parent = vec![None];
    let mut i = 0;
    while i < vertices.len() {
        let v = vertices[i];
        for &c in &chosen[v] {
            parent.push(Some(i));
            vertices.push(c);
        }
        i += 1;
    }
    let tree = RootedTree::from_parents(parent).expect("BFS layout is a tree");
    Subtree { vertices, tree }
}

/// Per-vertex values and margins of the potential inequalities.
#[derive(Debug, Clone)]
pub struct NodeClaims<T> {
    pub vertex: usize,
    /// ζ̃(v) − 1 − Σ_{s ∈ C(v)} ζ̃(s), must be ≥ 0.
    pub zeta_margin: T,
    /// 1 + Σ_{s ∈ C(v)} σ(s) − σ(v), must be ≥ 0.
    pub sigma_margin: GoldenValue<T>,
    /// ζ̃(v) − σ(v), must be ≥ 0.
    pub chain_margin: GoldenValue<T>,
}

impl<T: RingScalar> NodeClaims<T> {
    pub fn holds(&self) -> bool {
        !self.zeta_margin.is_negative()
            && self.sigma_margin >= GoldenValue::zero()
            && self.chain_margin >= GoldenValue::zero()
    }
}

#[derive(Debug, Clone)]
pub struct ClaimReport<T> {
    pub td_tree: usize,
    pub td_subtree: usize,
    pub nodes: Vec<NodeClaims<T>>,
    /// σ(root) ≥ φ^(td − 1).
    pub sigma_bound: bool,
    /// 2·ζ(root) < 3^td.
    pub zeta_bound: bool,
    /// 3^td(S) > φ^td(T).
    pub depth_guarantee: bool,
}

impl<T: RingScalar> ClaimReport<T> {
    pub fn violations(&self) -> impl Iterator<Item = &NodeClaims<T>> {
        self.nodes.iter().filter(|c| !c.holds())
    }

    pub fn all_hold(&self) -> bool {
        self.sigma_bound && self.zeta_bound && self.depth_guarantee && self.violations().next().is_none()
    }
}

/// `3^small > φ^large`, decided exactly.
pub fn beats_golden_power<T: RingScalar>(small: usize, large: usize) -> bool {
    let three = num_traits::pow::pow(T::from_u8(3).unwrap(), small);
    GoldenValue::from_int(three) > GoldenValue::<T>::phi_pow(large as i64)
}

/// Recomputes everything the extraction relies on and checks each inequality
/// at every vertex in exact arithmetic. Coefficients of type `T` must hold
/// `3^(td+1)`; `i128` suffices for any tree that fits in memory.
pub fn check_potential_claims<T: RingScalar>(t: &RootedTree) -> ClaimReport<T> {
    let n = t.n();
    let ranking = schaffer_rank(t);
    let chosen = select_children(t, &ranking);

    // rank the forest of kept edges; each component is rooted at its vertex
    // closest to the root of t, and children precede parents in t's postorder
    let order = t.postorder();
    let (_, forest_lists) = rank_bottom_up(n, |v| &chosen[v], &order);

    let zeta_f: Vec<T> = forest_lists.iter().map(|&l| zeta(l)).collect();
    let sig: Vec<GoldenValue<T>> = ranking.lists.iter().map(|&l| sigma(l)).collect();

    let nodes = (0..n)
        .map(|v| {
            let mut zsum = T::one();
            let mut ssum = GoldenValue::one();
            for &s in &chosen[v] {
                zsum = zsum + zeta_f[s].clone();
                ssum += &sig[s];
            }
            NodeClaims {
                vertex: v,
                zeta_margin: zeta_f[v].clone() - zsum,
                sigma_margin: ssum - sig[v].clone(),
                chain_margin: GoldenValue::from_int(zeta_f[v].clone()) - sig[v].clone(),
            }
        })
        .collect();

    let root = t.root();
    let td = ranking.td();
    let td_s = forest_lists[root].max().map_or(0, |r| r as usize + 1);
    let root_list = ranking.lists[root];
    let two = T::from_u8(2).unwrap();
    let three_td = num_traits::pow::pow(T::from_u8(3).unwrap(), td);
    ClaimReport {
        td_tree: td,
        td_subtree: td_s,
        nodes,
        sigma_bound: sigma::<T>(root_list) >= GoldenValue::phi_pow(td as i64 - 1),
        zeta_bound: two * zeta::<T>(root_list) < three_td,
        depth_guarantee: beats_golden_power::<T>(td_s, td),
    }
}
