//! The `perm3col` commands. Each returns its exit code and standard output
//! so the binary stays a thin shell around them.
//!
//! Exit codes: 0 for success or a feasible instance, 1 for an infeasible
//! instance, an invalid colouring or a failed ordering check, 2 for errors.

use std::fmt::Write;
use std::fs;
use std::path::Path;
use std::time::Instant;

use perm3col::{
    bfs_layers, build_multichain_ordering, gen_instance, multichain_violation, parse_colouring, parse_instance, solve,
    solve_components, solve_with_trace, write_dot, write_instance, write_verdict, Colouring, Error, GenConfig,
    Instance, Verdict, VertexId,
};

pub const FEASIBLE: i32 = 0;
pub const INFEASIBLE: i32 = 1;
pub const ERROR: i32 = 2;

/// What a command prints and how it exits. Failures that should exit with
/// [`ERROR`] travel as `Err` instead.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
}

impl Outcome {
    fn new(code: i32, stdout: String) -> Self {
        Outcome { code, stdout }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Input { path: String, source: Error },
    #[error(transparent)]
    Solver(#[from] Error),
    #[error("{0}")]
    Usage(String),
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn load_instance(path: &Path) -> Result<Instance, CliError> {
    parse_instance(&read(path)?).map_err(|source| CliError::Input { path: path.display().to_string(), source })
}

fn load_colouring(path: &Path, n: usize) -> Result<Colouring, CliError> {
    parse_colouring(&read(path)?, n).map_err(|source| CliError::Input { path: path.display().to_string(), source })
}

fn verdict_code(v: &Verdict) -> i32 {
    if v.is_feasible() {
        FEASIBLE
    } else {
        INFEASIBLE
    }
}

/// Decides an instance file. With `trace`, the pipeline's steps come first
/// as `c` lines.
pub fn cmd_solve(path: &Path, trace: bool, components: bool) -> Result<Outcome, CliError> {
    let inst = load_instance(path)?;
    let mut out = String::new();
    let verdict = if components {
        solve_components(&inst)?
    } else if trace {
        let (verdict, trace) = solve_with_trace(&inst)?;
        for line in trace.to_string().lines() {
            writeln!(out, "c {line}").unwrap();
        }
        verdict
    } else {
        match solve(&inst) {
            Err(Error::Disconnected(v)) => {
                return Err(CliError::Usage(format!(
                    "graph is disconnected (vertex {v} is unreachable from the root); rerun with --components"
                )))
            }
            other => other?,
        }
    };
    out.push_str(&write_verdict(&verdict));
    Ok(Outcome::new(verdict_code(&verdict), out))
}

/// First reason the colouring is not a proper list colouring, if any.
fn colouring_problem(inst: &Instance, c: &Colouring) -> Option<String> {
    for v in 0..inst.n() {
        let colour = c.get(v)?;
        if !inst.lists.get(v).contains(colour) {
            return Some(format!(
                "vertex {} has colour {colour}, not in its list {{{}}}",
                VertexId(v),
                inst.lists.get(v)
            ));
        }
    }
    inst.graph().edges().find(|&(a, b)| c.get(a) == c.get(b)).map(|(a, b)| {
        format!("vertices {} and {} are adjacent and both have colour {}", VertexId(a), VertexId(b), c.get(a).unwrap())
    })
}

pub fn cmd_verify(instance: &Path, colouring: &Path) -> Result<Outcome, CliError> {
    let inst = load_instance(instance)?;
    let c = load_colouring(colouring, inst.n())?;
    Ok(match colouring_problem(&inst, &c) {
        None => Outcome::new(FEASIBLE, "ok\n".into()),
        Some(why) => Outcome::new(INFEASIBLE, format!("invalid: {why}\n")),
    })
}

pub fn cmd_gen(cfg: &GenConfig) -> Result<Outcome, CliError> {
    let inst = gen_instance(cfg)?;
    let mut out = format!(
        "# perm3col gen --n {} --seed {} --list-density {} --precolour-rate {}",
        cfg.n, cfg.seed, cfg.list_density, cfg.precolour_rate
    );
    if let Some(b) = cfg.band {
        write!(out, " --band {b}").unwrap();
    }
    out.push('\n');
    out.push_str(&write_instance(&inst));
    Ok(Outcome::new(FEASIBLE, out))
}

/// Layers the graph from its root and reports whether the layering is
/// multi-chain and, if so, whether every layer is bipartite.
pub fn cmd_check_ordering(path: &Path) -> Result<Outcome, CliError> {
    let inst = load_instance(path)?;
    let g = inst.graph();
    let root = inst.root();
    let layering = bfs_layers(&g, root.index())?;
    let mut out = format!("root {root}\n");
    for (i, layer) in layering.layers().iter().enumerate() {
        write!(out, "layer {i}:").unwrap();
        for &v in layer {
            write!(out, " {}", VertexId(v)).unwrap();
        }
        out.push('\n');
    }
    Ok(match multichain_violation(&g, &layering)? {
        None => {
            out.push_str("multi-chain: yes\n");
            match build_multichain_ordering(&g, root.index())?.odd_cycle() {
                None => out.push_str("bipartite layers: yes\n"),
                Some((layer, v)) => {
                    writeln!(out, "bipartite layers: no, layer {layer} has an odd cycle through {v}").unwrap()
                }
            }
            Outcome::new(FEASIBLE, out)
        }
        Some(v) => {
            writeln!(out, "multi-chain: no, {v}").unwrap();
            Outcome::new(INFEASIBLE, out)
        }
    })
}

/// Settings for [`cmd_bench`].
#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub sizes: Vec<usize>,
    pub reps: usize,
    pub seed: u64,
    pub list_density: f64,
    pub precolour_rate: f64,
    pub band: Option<usize>,
    pub csv: bool,
}

/// Least-squares slope of `ln y` against `ln x`, or `None` with fewer than
/// two distinct sizes.
pub fn fitted_exponent(points: &[(usize, f64)]) -> Option<f64> {
    let logs: Vec<(f64, f64)> = points.iter().map(|&(n, t)| ((n as f64).ln(), t.max(1e-9).ln())).collect();
    let m = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / m;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / m;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if logs.len() < 2 || sxx == 0.0 {
        return None;
    }
    Some(logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<f64>() / sxx)
}

/// Times `solve` on generated instances, `reps` per size, one after the
/// other so that runs do not compete for the CPU.
pub fn cmd_bench(cfg: &BenchConfig) -> Result<Outcome, CliError> {
    if cfg.sizes.is_empty() {
        return Err(CliError::Usage("no sizes given".into()));
    }
    if cfg.reps == 0 {
        return Err(CliError::Usage("reps must be at least 1".into()));
    }
    let mut points = Vec::new();
    for &n in &cfg.sizes {
        let mut total = 0.0;
        for r in 0..cfg.reps {
            let gen = GenConfig {
                list_density: cfg.list_density,
                precolour_rate: cfg.precolour_rate,
                band: cfg.band,
                ..GenConfig::new(n, cfg.seed.wrapping_add(r as u64))
            };
            let inst = gen_instance(&gen)?;
            let start = Instant::now();
            solve(&inst)?;
            total += start.elapsed().as_secs_f64() * 1000.0;
        }
        points.push((n, total / cfg.reps as f64));
    }
    let slope = fitted_exponent(&points);
    let mut out = String::new();
    if cfg.csv {
        out.push_str("n,mean_ms,fitted_exponent\n");
        let slope = slope.map(|s| format!("{s:.3}")).unwrap_or_default();
        for (n, ms) in &points {
            writeln!(out, "{n},{ms:.3},{slope}").unwrap();
        }
    } else {
        for (n, ms) in &points {
            writeln!(out, "n {n}: {ms:.3} ms").unwrap();
        }
        match slope {
            Some(s) => writeln!(out, "fitted exponent {s:.3}").unwrap(),
            None => out.push_str("fitted exponent needs at least two sizes\n"),
        }
    }
    Ok(Outcome::new(FEASIBLE, out))
}

/// DOT rendering of an instance, ranked by layer when the graph is
/// connected, and coloured when a colouring file is given.
pub fn cmd_dot(path: &Path, colouring: Option<&Path>) -> Result<Outcome, CliError> {
    let inst = load_instance(path)?;
    let g = inst.graph();
    let c = colouring.map(|p| load_colouring(p, inst.n())).transpose()?;
    let layering = bfs_layers(&g, inst.root().index()).ok();
    Ok(Outcome::new(FEASIBLE, write_dot(&g, &inst.lists, layering.as_ref(), c.as_ref())))
}
