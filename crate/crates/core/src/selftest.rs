//! Randomized invariant suite shared by the command line `selftest`.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::approx::approx_td;
use crate::decomposition::{compose_td, heuristic_tree_decomposition, to_greedy, validate_greedy};
use crate::extract::{beats_golden_power, check_potential_claims, extract_subcubic};
use crate::extremal::{check_family_depth, verify_gn};
use crate::generate;
use crate::graph::Graph;
use crate::obstruction::{binary_subdivision_depth, find_obstruction, longest_path};
use crate::oracle;
use crate::ranking::{schaffer_rank, verify_ranking};
use crate::BigGolden;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

struct Scale {
    free_trees: usize,
    random_trees: usize,
    tree_size: usize,
    small_graphs: usize,
    ktrees: usize,
    ktree_size: usize,
    gn: usize,
    brute_per_size: usize,
}

const SMALL: Scale = Scale {
    free_trees: 8,
    random_trees: 100,
    tree_size: 300,
    small_graphs: 60,
    ktrees: 60,
    ktree_size: 60,
    gn: 4,
    brute_per_size: 20,
};

const FULL: Scale = Scale {
    free_trees: 10,
    random_trees: 1000,
    tree_size: 2000,
    small_graphs: 500,
    ktrees: 500,
    ktree_size: 100,
    gn: 5,
    brute_per_size: 200,
};

fn count<T: Sync>(name: &'static str, items: &[T], bad: impl Fn(&T) -> bool + Sync) -> Check {
    Check {
        name,
        cases: items.len(),
        failures: items.par_iter().filter(|x| bad(x)).count(),
    }
}

/// Runs every invariant check; identical `seed` and `small` give identical
/// results.
pub fn run(seed: u64, small: bool) -> Vec<Check> {
    let sc = if small { &SMALL } else { &FULL };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();

    let free: Vec<_> = (1..=sc.free_trees).flat_map(generate::all_free_trees).collect();
    checks.push(count("ranking_optimal_on_free_trees", &free, |t| {
        schaffer_rank(t).td() != oracle::td_exact(&t.to_graph(), oracle::TD_BUDGET).unwrap().0
    }));

    let mut trees: Vec<_> = (0..sc.random_trees)
        .map(|_| {
            let n = rng.gen_range(1..=sc.tree_size);
            generate::random_tree_varied(n, &mut rng)
        })
        .collect();
    trees.extend(free);
    checks.push(count("ranking_is_valid", &trees, |t| {
        verify_ranking(t, &schaffer_rank(t).alpha).is_err()
    }));
    checks.push(count("extraction_depth", &trees, |t| {
        let s = extract_subcubic(t);
        s.max_degree() > 3 || !beats_golden_power::<i128>(schaffer_rank(&s.tree).td(), schaffer_rank(t).td())
    }));
    checks.push(count("potential_claims", &trees, |t| !check_potential_claims::<i128>(t).all_hold()));

    let graphs: Vec<Graph> = (0..sc.small_graphs)
        .map(|_| {
            let n = rng.gen_range(1..=8);
            generate::random_connected_graph(n, &mut rng)
        })
        .collect();
    checks.push(count("subcubic_subtree_bound", &graphs, |g| {
        let td = oracle::td_exact(g, 8).unwrap().0;
        let tw = oracle::tw_exact(g, 8).unwrap();
        let h = oracle::max_subcubic_subtree_td(g, 8).unwrap().depth;
        let b = oracle::max_subtree_td(g, None, 8).unwrap().depth;
        // 3^((tw+1)h) ≥ φ^td, and td ≤ (tw+1)·b
        let lhs = BigGolden::from_int(BigInt::from(3).pow(((tw + 1) * h) as u32));
        lhs < BigGolden::phi_pow(td as i64) || td > (tw + 1) * b
    }));
    checks.push(count("approx_certificates", &graphs, |g| match approx_td(g, None, 8) {
        Ok((d, r)) => d.validate(g).is_err() || r.exact.is_some_and(|k| r.height < k),
        Err(_) => true,
    }));

    let ktrees: Vec<Graph> = (0..sc.ktrees)
        .map(|i| {
            let n = rng.gen_range(1..=sc.ktree_size);
            let keep = rng.gen_range(0.3..1.0);
            generate::random_partial_ktree(n, 2 + i % 2, keep, &mut rng)
        })
        .collect();
    checks.push(count("composition", &ktrees, |g| {
        let t = heuristic_tree_decomposition(g);
        match compose_td(g, &t) {
            Ok(d) => d.validate(g).is_err() || d.height() > t.max_bag_size() * schaffer_rank(&t.tree).td(),
            Err(_) => true,
        }
    }));
    checks.push(count("greedy_and_lift", &ktrees, |g| {
        let t = heuristic_tree_decomposition(g);
        let Ok(d) = to_greedy(g, &t) else { return true };
        validate_greedy(g, &d).is_err()
            || d.tau > t.width() + 1
            || !find_obstruction(g, &d).is_ok_and(|o| o.chain_holds())
    }));

    let ns: Vec<usize> = (1..=sc.gn).collect();
    checks.push(count("extremal_family", &ns, |&n| !verify_gn(n).unwrap().passes()));
    let pairs = [(1, 1), (2, 2), (3, 3)];
    let seeds: Vec<(usize, usize, u64)> = pairs.iter().map(|&(a, b)| (a, b, rng.gen())).collect();
    checks.push(count("family_treedepth_bound", &seeds, |&(a, b, s)| {
        check_family_depth(a, b, 30, &mut ChaCha8Rng::seed_from_u64(s)).is_err()
    }));

    let mut small_trees = Vec::new();
    for n in 1..=12 {
        for _ in 0..sc.brute_per_size {
            small_trees.push(generate::random_tree_varied(n, &mut rng));
        }
    }
    checks.push(count("tree_measures_vs_brute_force", &small_trees, |t| {
        longest_path(t).0 != oracle::longest_path_brute(t).0
            || binary_subdivision_depth(t) != oracle::binary_subdivision_depth_brute(t, 12).unwrap()
    }));
    checks
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suite_passes_and_is_reproducible() {
        let a = run(7, true);
        assert!(a.iter().all(Check::passed), "{a:?}");
        assert_eq!(a, run(7, true));
    }
}
