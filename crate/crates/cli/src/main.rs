use std::fmt::Display;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use treedepth::approx::approx_td;
use treedepth::decomposition::{compose_td, heuristic_tree_decomposition, to_greedy};
use treedepth::extract::{check_potential_claims, extract_subcubic};
use treedepth::extremal::{gen_gn, verify_gn};
use treedepth::obstruction::find_obstruction;
use treedepth::ranking::{sigma, zeta};
use treedepth::{oracle, schaffer_rank, selftest, Graph, RootedTree, TreeDecomposition};

#[derive(Parser)]
#[command(name = "tdk", version, about = "Treedepth toolkit")]
struct Cli {
    /// Seed for randomized subcommands.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Largest vertex count handed to the exhaustive oracles.
    #[arg(long, global = true)]
    oracle_budget: Option<usize>,
    /// Root vertex for tree input (1-indexed).
    #[arg(long, global = true, default_value_t = 1)]
    root: usize,
    /// Aligned human-readable output.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Optimal vertex ranking of a tree.
    Rank { input: Option<PathBuf> },
    /// Subcubic subtree of large treedepth.
    Extract {
        input: Option<PathBuf>,
        /// Emit the per-vertex potential report.
        #[arg(long)]
        check_claims: bool,
    },
    /// Treedepth certificate from a tree decomposition.
    Compose {
        input: Option<PathBuf>,
        #[arg(long)]
        td_file: Option<PathBuf>,
    },
    /// Approximate treedepth with a certificate; the report goes to stderr.
    Approx {
        input: Option<PathBuf>,
        #[arg(long)]
        td_file: Option<PathBuf>,
    },
    /// Subcubic tree subgraph certifying large treedepth.
    Obstruct {
        input: Option<PathBuf>,
        #[arg(long)]
        td_file: Option<PathBuf>,
    },
    /// Exact treedepth, treewidth and subtree treedepth of a small graph.
    Oracle { input: Option<PathBuf> },
    /// Writes G_n as a `.gr` file.
    GenGn { n: usize },
    /// Measures G_n.
    VerifyGn { n: usize },
    /// Randomized invariant suite.
    Selftest {
        #[arg(long)]
        small: bool,
    },
}

type Fallible<T> = Result<T, String>;

struct Out {
    pretty: bool,
    buf: String,
}

impl Out {
    fn kv(&mut self, key: &str, value: impl Display) {
        if self.pretty {
            self.buf.push_str(&format!("{key:<24} {value}\n"));
        } else {
            self.buf.push_str(&format!("{key} {value}\n"));
        }
    }

    fn raw(&mut self, text: &str) {
        self.buf.push_str(text);
    }
}

fn read_input(path: Option<&Path>) -> Fallible<String> {
    match path {
        Some(p) if p != Path::new("-") => {
            std::fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()))
        }
        _ => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).map_err(|e| format!("stdin: {e}"))?;
            Ok(s)
        }
    }
}

fn read_graph(path: Option<&Path>) -> Fallible<Graph> {
    Graph::parse(&read_input(path)?).map_err(|e| format!("input: {e}"))
}

fn read_tree(path: Option<&Path>, root: usize) -> Fallible<RootedTree> {
    let g = read_graph(path)?;
    if root == 0 {
        return Err("root must be at least 1".into());
    }
    RootedTree::from_graph(&g, root - 1).map_err(|e| e.to_string())
}

fn read_decomposition(g: &Graph, path: Option<&Path>) -> Fallible<TreeDecomposition> {
    let Some(p) = path else {
        return Ok(heuristic_tree_decomposition(g));
    };
    let text = std::fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()))?;
    let (t, n) = TreeDecomposition::parse_pace(&text).map_err(|e| format!("{}: {e}", p.display()))?;
    if n != g.n() {
        return Err(format!("decomposition covers {n} vertices, graph has {}", g.n()));
    }
    t.validate(g).map_err(|v| format!("invalid tree decomposition: {v}"))?;
    Ok(t)
}

fn join<T: Display>(items: impl IntoIterator<Item = T>) -> String {
    let v: Vec<String> = items.into_iter().map(|x| x.to_string()).collect();
    if v.is_empty() {
        "-".into()
    } else {
        v.join(",")
    }
}

fn rank(cli: &Cli, input: Option<&Path>, out: &mut Out) -> Fallible<bool> {
    let t = read_tree(input, cli.root)?;
    let r = schaffer_rank(&t);
    out.kv("n", t.n());
    out.kv("root", cli.root);
    out.kv("td", r.td());
    for v in 0..t.n() {
        let l = r.lists[v];
        out.kv(
            "vertex",
            format!(
                "{} rank {} list {} zeta {} sigma {}",
                v + 1,
                r.alpha[v],
                join(l.ranks()),
                zeta::<i128>(l),
                sigma::<i128>(l)
            ),
        );
    }
    Ok(true)
}

fn extract(cli: &Cli, input: Option<&Path>, check: bool, out: &mut Out) -> Fallible<bool> {
    let t = read_tree(input, cli.root)?;
    let s = extract_subcubic(&t);
    out.kv("td_tree", schaffer_rank(&t).td());
    out.kv("td_subtree", schaffer_rank(&s.tree).td());
    out.kv("subtree_vertices", s.n());
    out.kv("subtree_max_degree", s.max_degree());
    for (u, v) in s.host_edges() {
        out.kv("edge", format!("{} {}", u + 1, v + 1));
    }
    if !check {
        return Ok(true);
    }
    let report = check_potential_claims::<i128>(&t);
    for c in &report.nodes {
        out.kv(
            "claims",
            format!(
                "{} zeta_margin {} sigma_margin {} chain_margin {} {}",
                c.vertex + 1,
                c.zeta_margin,
                c.sigma_margin,
                c.chain_margin,
                if c.holds() { "ok" } else { "violated" }
            ),
        );
    }
    out.kv("sigma_bound", report.sigma_bound);
    out.kv("zeta_bound", report.zeta_bound);
    out.kv("depth_guarantee", report.depth_guarantee);
    out.kv("violations", report.violations().count());
    out.kv("claims_hold", report.all_hold());
    Ok(report.all_hold())
}

fn compose(input: Option<&Path>, td_file: Option<&Path>, out: &mut Out) -> Fallible<bool> {
    let g = read_graph(input)?;
    let t = read_decomposition(&g, td_file)?;
    let d = compose_td(&g, &t).map_err(|e| e.to_string())?;
    d.validate(&g).map_err(|v| format!("composed decomposition rejected: {v:?}"))?;
    out.raw(&d.to_pace());
    Ok(true)
}

fn approx(cli: &Cli, input: Option<&Path>, td_file: Option<&Path>, out: &mut Out) -> Fallible<bool> {
    let g = read_graph(input)?;
    let external = td_file.map(|p| read_decomposition(&g, Some(p))).transpose()?;
    let budget = cli.oracle_budget.unwrap_or(oracle::TD_BUDGET);
    let (d, r) = approx_td(&g, external.as_ref(), budget).map_err(|e| e.to_string())?;
    d.validate(&g).map_err(|v| format!("certificate rejected: {v:?}"))?;
    out.raw(&d.to_pace());

    let mut rep = Out {
        pretty: cli.pretty,
        buf: String::new(),
    };
    rep.kv("n", r.n);
    rep.kv("input_width", r.input_width);
    rep.kv("tau", r.tau);
    rep.kv("skeleton_td", r.skeleton_td);
    rep.kv("height", r.height);
    rep.kv("bound", r.bound);
    rep.kv("exact", r.exact.map_or("-".into(), |k| k.to_string()));
    rep.kv("ratio", r.ratio.map_or("-".into(), |x| format!("{x:.4}")));
    rep.kv(
        "skeleton_constant",
        r.skeleton_constant.map_or("-".into(), |x| format!("{x:.4}")),
    );
    eprint!("{}", rep.buf);
    Ok(true)
}

fn obstruct(input: Option<&Path>, td_file: Option<&Path>, out: &mut Out) -> Fallible<bool> {
    let g = read_graph(input)?;
    let t = read_decomposition(&g, td_file)?;
    let d = to_greedy(&g, &t).map_err(|e| e.to_string())?;
    let o = find_obstruction(&g, &d).map_err(|e| e.to_string())?;
    out.kv("tau", o.tau);
    out.kv("td_t", o.td_t);
    out.kv("td_s", o.td_s);
    out.kv("size_s", o.size_s);
    out.kv("size_f", o.size_f);
    out.kv("max_degree_f", o.max_degree_f);
    out.kv("td_f", o.td_f);
    out.kv("td_h", o.td_h);
    out.kv("s_deep", o.s_deep);
    out.kv("s_large", o.s_large);
    out.kv("f_deep", o.f_deep);
    out.kv("h_deep", o.h_deep);
    out.kv("chain_holds", o.chain_holds());
    out.kv("h_vertices", o.h.n());
    for (u, v) in o.h.host_edges() {
        out.kv("edge", format!("{} {}", u + 1, v + 1));
    }
    Ok(o.chain_holds())
}

fn run_oracle(cli: &Cli, input: Option<&Path>, out: &mut Out) -> Fallible<bool> {
    let g = read_graph(input)?;
    let budget = |default: usize| cli.oracle_budget.unwrap_or(default);
    let (td, _) = oracle::td_exact(&g, budget(oracle::TD_BUDGET)).map_err(|e| e.to_string())?;
    out.kv("n", g.n());
    out.kv("m", g.m());
    out.kv("td", td);
    match oracle::tw_exact(&g, budget(oracle::TW_BUDGET)) {
        Ok(tw) => out.kv("tw", tw),
        Err(_) => out.kv("tw", "over_budget"),
    }
    let sb = budget(oracle::SUBTREE_BUDGET);
    match oracle::max_subtree_td(&g, None, sb) {
        Ok(w) => out.kv("max_subtree_td", w.depth),
        Err(_) => out.kv("max_subtree_td", "over_budget"),
    }
    match oracle::max_subcubic_subtree_td(&g, sb) {
        Ok(w) => {
            out.kv("max_subcubic_subtree_td", w.depth);
            for (u, v) in w.edges {
                out.kv("edge", format!("{} {}", u + 1, v + 1));
            }
        }
        Err(_) => out.kv("max_subcubic_subtree_td", "over_budget"),
    }
    Ok(true)
}

fn run_verify_gn(n: usize, out: &mut Out) -> Fallible<bool> {
    let r = verify_gn(n).map_err(|e| e.to_string())?;
    out.kv("n", r.n);
    out.kv("size", r.size);
    out.kv("td", r.td);
    out.kv("td_lower", r.td_lower);
    out.kv("td_ok", r.td_ok());
    out.kv("root_to_leaf", r.root_to_leaf);
    out.kv("root_to_leaf_ok", r.root_to_leaf_ok());
    out.kv("longest_path", r.longest_path);
    out.kv("longest_path_ok", r.longest_path_ok());
    out.kv("subdivision_depth", r.subdivision_depth);
    out.kv("aligned_depth", r.aligned_depth);
    out.kv("subdivision_ok", r.subdivision_ok());
    out.kv("separation", format!("{:.4}", r.separation()));
    out.kv("pass", r.passes());
    Ok(r.passes())
}

fn run_selftest(seed: u64, small: bool, out: &mut Out) -> bool {
    let checks = selftest::run(seed, small);
    for c in &checks {
        out.kv(
            "check",
            format!(
                "{} cases {} failures {} {}",
                c.name,
                c.cases,
                c.failures,
                if c.passed() { "pass" } else { "FAIL" }
            ),
        );
    }
    let ok = checks.iter().all(|c| c.passed());
    out.kv("selftest", if ok { "pass" } else { "FAIL" });
    ok
}

fn dispatch(cli: &Cli, out: &mut Out) -> Fallible<bool> {
    match &cli.cmd {
        Cmd::Rank { input } => rank(cli, input.as_deref(), out),
        Cmd::Extract { input, check_claims } => extract(cli, input.as_deref(), *check_claims, out),
        Cmd::Compose { input, td_file } => compose(input.as_deref(), td_file.as_deref(), out),
        Cmd::Approx { input, td_file } => approx(cli, input.as_deref(), td_file.as_deref(), out),
        Cmd::Obstruct { input, td_file } => obstruct(input.as_deref(), td_file.as_deref(), out),
        Cmd::Oracle { input } => run_oracle(cli, input.as_deref(), out),
        Cmd::GenGn { n } => {
            let t = gen_gn(*n).map_err(|e| e.to_string())?;
            out.raw(&t.to_graph().to_gr());
            Ok(true)
        }
        Cmd::VerifyGn { n } => run_verify_gn(*n, out),
        Cmd::Selftest { small } => Ok(run_selftest(cli.seed, *small, out)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Ok(v) = std::env::var("TDK_THREADS") {
        match v.parse::<usize>() {
            Ok(k) if k > 0 => {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(k).build_global();
            }
            _ => {
                eprintln!("tdk: TDK_THREADS must be a positive integer, got `{v}`");
                return ExitCode::from(2);
            }
        }
    }
    let mut out = Out {
        pretty: cli.pretty,
        buf: String::new(),
    };
    let result = dispatch(&cli, &mut out);
    let _ = io::stdout().lock().write_all(out.buf.as_bytes());
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("tdk: {e}");
            ExitCode::from(1)
        }
    }
}
