//! Polynomial-time treedepth approximation with certificates.

use rayon::prelude::*;

use crate::decomposition::{compose_td, heuristic_tree_decomposition, to_greedy};
use crate::error::{Error, Result};
use crate::graph::{Graph, TreeDecomposition, TreedepthDecomposition};
use crate::oracle;
use crate::ranking::schaffer_rank;

/// Decides `td(g) ≤ k`, returning a witness on success. `None` means either
/// "no" or "gave up".
pub trait ExactDecider: Sync {
    fn decide(&self, g: &Graph, k: usize) -> Option<TreedepthDecomposition>;
}

/// Exhaustive search, giving up above `budget` vertices.
#[derive(Debug, Clone, Copy)]
pub struct OracleDecider {
    pub budget: usize,
}

impl Default for OracleDecider {
    fn default() -> Self {
        OracleDecider {
            budget: oracle::TD_BUDGET,
        }
    }
}

impl ExactDecider for OracleDecider {
    fn decide(&self, g: &Graph, k: usize) -> Option<TreedepthDecomposition> {
        let (td, d) = oracle::td_exact(g, self.budget).ok()?;
        (td <= k).then_some(d)
    }
}

/// Asks the decider for every `k ≤ log₂(n) / t`, `t` the width of a
/// heuristic tree decomposition, and composes the decomposition otherwise.
pub fn cheap_approx(g: &Graph, decider: &dyn ExactDecider) -> Result<TreedepthDecomposition> {
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    let t = heuristic_tree_decomposition(g);
    let width = t.width().max(1);
    let kmax = if g.n() <= 1 { 1 } else { (g.n() as f64).log2() as usize / width };
    let found = (1..=kmax)
        .into_par_iter()
        .find_map_first(|k| decider.decide(g, k).filter(|d| d.height() <= k));
    match found {
        Some(d) => Ok(d),
        None => compose_td(g, &t),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ApproxReport {
    pub n: usize,
    pub input_width: usize,
    pub tau: usize,
    pub skeleton_td: usize,
    pub height: usize,
    /// τ · td(skeleton).
    pub bound: usize,
    pub exact: Option<usize>,
    pub ratio: Option<f64>,
    /// td(skeleton) / (td(G) · log₂ τ), when defined.
    pub skeleton_constant: Option<f64>,
}

/// Tree decomposition (heuristic or supplied) → greedy decomposition →
/// composition with the ranked skeleton. The exact treedepth is computed for
/// the report when `g` has at most `oracle_budget` vertices.
pub fn approx_td(
    g: &Graph,
    external: Option<&TreeDecomposition>,
    oracle_budget: usize,
) -> Result<(TreedepthDecomposition, ApproxReport)> {
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    let t = match external {
        Some(t) => {
            t.validate(g)
                .map_err(|v| Error::InvalidTreeDecomposition(format!("{v:?}")))?;
            t.clone()
        }
        None => heuristic_tree_decomposition(g),
    };
    let greedy = to_greedy(g, &t)?;
    let skeleton_td = schaffer_rank(&greedy.tree).td();
    let d = compose_td(g, &greedy.as_tree_decomposition())?;
    let bound = greedy.tau * skeleton_td;
    assert!(d.height() <= bound, "height above τ · td(skeleton)");

    let exact = (g.n() <= oracle_budget)
        .then(|| oracle::td_exact(g, oracle_budget).ok().map(|(k, _)| k))
        .flatten();
    let ratio = exact.filter(|&k| k > 0).map(|k| d.height() as f64 / k as f64);
    let skeleton_constant = exact
        .filter(|_| greedy.tau >= 2)
        .map(|k| skeleton_td as f64 / (k as f64 * (greedy.tau as f64).log2()));
    let report = ApproxReport {
        n: g.n(),
        input_width: t.width(),
        tau: greedy.tau,
        skeleton_td,
        height: d.height(),
        bound,
        exact,
        ratio,
        skeleton_constant,
    };
    Ok((d, report))
}
