//! Batch experiments: generate random networks, run a roster of
//! two-connection solvers on each, and report per-trial objectives as CSV
//! plus an SVG histogram. Output is byte-deterministic for a given spec
//! unless wall-clock timing is requested.

use std::fmt::Write as _;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::failure::ConnectionRequest;
use crate::netgen::{generate, GenConfig};
use crate::paths::disjoint_pair;
use crate::twocp::{
    brute_2cp2, brute_2cp3, solve_2cp2a, solve_2cp2n, solve_2cp3a, solve_2cp3b, solve_2cp3n,
    TwoCPInstance, TwoCPSolution,
};

/// Objective recorded when a solver finds no admissible scenario; above any
/// real failure probability so infeasible runs sort last and get their own
/// histogram bin.
pub const INFEASIBLE_OBJECTIVE: f64 = 1.2;
/// Terminal redraw attempts per drawn graph before the graph itself is
/// redrawn.
pub const MAX_REDRAWS: usize = 5;

/// How many fresh graphs a single trial may draw before giving up.
pub const MAX_GRAPH_DRAWS: usize = 100;
const OBJECTIVE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// First primary fixed; solvers choose the first backup and second pair.
    FixedPrimary,
    /// Nothing fixed; solvers choose all four paths.
    FreeForm,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSpec {
    pub family: Family,
    pub trials: usize,
    pub nodes: usize,
    pub seed: u64,
    /// Record wall-clock runtimes; breaks byte determinism of the CSV.
    #[serde(default)]
    pub timing: bool,
    /// Cut-enumeration depth handed to the solvers that use it.
    #[serde(default = "default_cut_level")]
    pub cut_level: usize,
    /// Degree-distribution exponent for the generated networks.
    #[serde(default = "default_alpha")]
    pub alpha: f64,
    /// Probability a generated link lacks capacity.
    #[serde(default = "default_p_nocap")]
    pub p_nocap: f64,
    /// Algorithm names to run; `None` means the family's full roster.
    #[serde(default)]
    pub roster: Option<Vec<String>>,
}

fn default_cut_level() -> usize {
    4
}

fn default_alpha() -> f64 {
    2.1
}

fn default_p_nocap() -> f64 {
    0.15
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRow {
    pub trial: usize,
    pub seed: u64,
    pub algo: String,
    pub objective: f64,
    pub feasible: bool,
    pub optimal: bool,
    pub runtime_us: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentResult {
    pub spec: ExperimentSpec,
    pub rows: Vec<TrialRow>,
    pub completed: usize,
    pub skipped: usize,
    pub redraws: usize,
}

pub fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e3779b97f4a7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d049bb133111eb);
    x ^ (x >> 31)
}

/// Roster of (name, solver) per family. The reference search runs first and
/// anchors the optimality comparison.
fn roster(family: Family, cut_level: usize) -> Vec<(&'static str, SolverFn)> {
    match family {
        Family::FixedPrimary => vec![
            ("bf", Box::new(brute_2cp2) as SolverFn),
            ("2a", Box::new(solve_2cp2a)),
            ("2n", Box::new(solve_2cp2n)),
        ],
        Family::FreeForm => vec![
            ("bf", Box::new(brute_2cp3) as SolverFn),
            ("3a", Box::new(move |i: &TwoCPInstance| solve_2cp3a(i, cut_level))),
            ("3b", Box::new(move |i: &TwoCPInstance| solve_2cp3b(i, cut_level, false))),
            ("3n", Box::new(solve_2cp3n)),
        ],
    }
}

type SolverFn = Box<dyn Fn(&TwoCPInstance) -> Result<TwoCPSolution>>;

pub fn run_experiment(spec: &ExperimentSpec) -> Result<ExperimentResult> {
    if spec.trials == 0 {
        return Err(Error::input("trial count must be positive"));
    }
    if spec.nodes < 5 {
        return Err(Error::input("need at least 5 nodes for four terminals"));
    }
    let mut solvers = roster(spec.family, spec.cut_level);
    if let Some(wanted) = &spec.roster {
        for name in wanted {
            if !solvers.iter().any(|(n, _)| n == name) {
                return Err(Error::input(format!(
                    "unknown algorithm {name:?} for this problem family"
                )));
            }
        }
        solvers.retain(|(n, _)| wanted.iter().any(|w| w == n));
        if solvers.is_empty() {
            return Err(Error::input("algorithm roster must be non-empty"));
        }
    }
    let mut rows = Vec::new();
    let mut completed = 0usize;
    let mut skipped = 0usize;
    let mut redraws = 0usize;
    for trial in 0..spec.trials {
        let trial_seed = spec.seed ^ splitmix64(trial as u64);
        match run_trial(spec, trial, trial_seed, &solvers) {
            Ok(Some((mut trial_rows, trial_redraws))) => {
                redraws += trial_redraws;
                rows.append(&mut trial_rows);
                completed += 1;
            }
            Ok(None) => skipped += 1,
            Err(Error::Resource(_)) | Err(Error::Generation(_)) => skipped += 1,
            Err(e) => return Err(e),
        }
    }
    Ok(ExperimentResult {
        spec: spec.clone(),
        rows,
        completed,
        skipped,
        redraws,
    })
}

/// One trial: a fresh network, four distinct terminals (redrawn, and
/// eventually the graph itself redrawn, until both connections' terminal
/// pairs can host a fully reliable primary/backup pair), then every solver
/// on the same instance.
fn run_trial(
    spec: &ExperimentSpec,
    trial: usize,
    trial_seed: u64,
    solvers: &[(&'static str, SolverFn)],
) -> Result<Option<(Vec<TrialRow>, usize)>> {
    // degenerate samples are rejected and the whole graph redrawn: generation
    // failures, graphs where the sampled terminals cannot host a fully
    // reliable first connection (after a bounded number of terminal retries),
    // and graphs with no such terminal pair at all
    let mut redraws = 0usize;
    let mut found = None;
    'graphs: for attempt in 0..MAX_GRAPH_DRAWS {
        let draw_seed = trial_seed ^ splitmix64(trial_seed.wrapping_add(attempt as u64));
        let mut gen_cfg = GenConfig::new(spec.nodes, draw_seed);
        gen_cfg.alpha = spec.alpha;
        gen_cfg.p_nocap = spec.p_nocap;
        let net = match generate(&gen_cfg) {
            Ok(net) => net,
            Err(Error::Generation(_)) => continue,
            Err(e) => return Err(e),
        };
        let allowed = net.capacity_mask();
        let pf: Vec<f64> = net.links().iter().map(|l| l.failure_probability).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(splitmix64(draw_seed));
        for _ in 0..MAX_REDRAWS {
            let mut picks: Vec<usize> = (0..spec.nodes).collect();
            picks.shuffle(&mut rng);
            let (s1, t1, s2, t2) = (picks[0], picks[1], picks[2], picks[3]);
            let Some((p1, _)) = disjoint_pair(&net, &allowed, &pf, s1, t1)? else {
                redraws += 1;
                continue;
            };
            if disjoint_pair(&net, &allowed, &pf, s2, t2)?.is_none() {
                redraws += 1;
                continue;
            }
            let fixed_p1 = match spec.family {
                Family::FixedPrimary => Some(p1),
                Family::FreeForm => None,
            };
            found = Some(TwoCPInstance {
                net: net.clone(),
                req1: ConnectionRequest::new(s1, t1, 0.0, 1)?,
                req2: ConnectionRequest::new(s2, t2, 1.0, 2)?,
                fixed_p1,
                fixed_b1: None,
            });
            break 'graphs;
        }
    }
    let Some(inst) = found else { return Ok(None) };
    let mut outcomes = Vec::with_capacity(solvers.len());
    for (name, solver) in solvers {
        let start = std::time::Instant::now();
        let sol = solver(&inst)?;
        let runtime_us = if spec.timing {
            start.elapsed().as_micros() as u64
        } else {
            0
        };
        let objective = sol.objective.unwrap_or(INFEASIBLE_OBJECTIVE);
        outcomes.push((*name, objective, sol.is_feasible(), runtime_us));
    }
    let best = outcomes
        .iter()
        .map(|&(_, obj, _, _)| obj)
        .fold(f64::INFINITY, f64::min);
    let rows = outcomes
        .into_iter()
        .map(|(name, objective, feasible, runtime_us)| TrialRow {
            trial,
            seed: trial_seed,
            algo: name.to_string(),
            objective,
            feasible,
            optimal: objective <= best + OBJECTIVE_TOL,
            runtime_us,
        })
        .collect();
    Ok(Some((rows, redraws)))
}

pub fn write_csv(result: &ExperimentResult) -> String {
    let mut out = String::from("trial,seed,algo,objective,feasible,optimal,runtime_us\n");
    for r in &result.rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.trial, r.seed, r.algo, r.objective, r.feasible, r.optimal, r.runtime_us
        );
    }
    out
}

/// Per-algorithm (feasible fraction, optimal fraction), in roster order.
/// Feasibility is over all completed trials; the optimal rate counts only
/// trials where some roster member found a solution, so it reads as "found a
/// minimal-value solution when one existed".
pub fn summarize(result: &ExperimentResult) -> Vec<(String, f64, f64)> {
    let mut order: Vec<String> = Vec::new();
    for r in &result.rows {
        if !order.contains(&r.algo) {
            order.push(r.algo.clone());
        }
    }
    let mut solvable: std::collections::HashSet<usize> = std::collections::HashSet::new();
    for r in &result.rows {
        if r.feasible {
            solvable.insert(r.trial);
        }
    }
    order
        .into_iter()
        .map(|algo| {
            let mine: Vec<&TrialRow> = result.rows.iter().filter(|r| r.algo == algo).collect();
            let n = mine.len().max(1) as f64;
            let feas = mine.iter().filter(|r| r.feasible).count() as f64 / n;
            let denom = mine.iter().filter(|r| solvable.contains(&r.trial)).count().max(1) as f64;
            let opt = mine
                .iter()
                .filter(|r| solvable.contains(&r.trial) && r.feasible && r.optimal)
                .count() as f64
                / denom;
            (algo, feas, opt)
        })
        .collect()
}

const PALETTE: [&str; 6] = ["#4c72b0", "#dd8452", "#55a868", "#c44e52", "#8172b3", "#937860"];

/// Self-contained SVG histogram of solver objectives: twelve equal bins over
/// [0, 1.2) plus a final bin for the infeasible sentinel, bars grouped by
/// algorithm.
pub fn emit_plot(result: &ExperimentResult) -> String {
    let algos: Vec<String> = summarize(result).into_iter().map(|(a, _, _)| a).collect();
    let nbins = 13usize;
    let mut counts = vec![vec![0usize; nbins]; algos.len()];
    for r in &result.rows {
        let ai = algos.iter().position(|a| *a == r.algo).unwrap();
        let bin = if r.objective >= INFEASIBLE_OBJECTIVE - OBJECTIVE_TOL {
            nbins - 1
        } else {
            ((r.objective / 0.1).floor() as usize).min(nbins - 2)
        };
        counts[ai][bin] += 1;
    }
    let peak = counts
        .iter()
        .flat_map(|c| c.iter())
        .copied()
        .max()
        .unwrap_or(0)
        .max(1) as f64;
    let (w, h, ml, mb, mt) = (760.0, 420.0, 50.0, 60.0, 20.0);
    let plot_w = w - ml - 20.0;
    let plot_h = h - mb - mt;
    let group_w = plot_w / nbins as f64;
    let bar_w = group_w / (algos.len().max(1) as f64 + 0.5);
    let mut svg = String::new();
    let _ = write!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" \
         font-family=\"sans-serif\" font-size=\"11\">\n\
         <rect width=\"{w}\" height=\"{h}\" fill=\"white\"/>\n"
    );
    for (ai, algo) in algos.iter().enumerate() {
        let color = PALETTE[ai % PALETTE.len()];
        for (bin, &c) in counts[ai].iter().enumerate() {
            if c == 0 {
                continue;
            }
            let bh = plot_h * c as f64 / peak;
            let x = ml + bin as f64 * group_w + ai as f64 * bar_w;
            let y = mt + plot_h - bh;
            let _ = write!(
                svg,
                "<rect x=\"{x:.1}\" y=\"{y:.1}\" width=\"{bar_w:.1}\" height=\"{bh:.1}\" \
                 fill=\"{color}\"><title>{algo}: {c}</title></rect>\n"
            );
        }
        let lx = ml + 8.0 + ai as f64 * 70.0;
        let _ = write!(
            svg,
            "<rect x=\"{lx:.1}\" y=\"6\" width=\"10\" height=\"10\" fill=\"{color}\"/>\
             <text x=\"{:.1}\" y=\"15\">{algo}</text>\n",
            lx + 14.0
        );
    }
    // axis labels: bin edges plus the infeasible bin
    for bin in 0..nbins {
        let x = ml + bin as f64 * group_w;
        let label = if bin == nbins - 1 {
            "inf".to_string()
        } else {
            format!("{:.1}", bin as f64 * 0.1)
        };
        let _ = write!(
            svg,
            "<text x=\"{x:.1}\" y=\"{:.1}\">{label}</text>\n",
            h - mb + 16.0
        );
    }
    let _ = write!(
        svg,
        "<text x=\"6\" y=\"{:.1}\">count (peak {})</text>\n</svg>\n",
        mt + 12.0,
        peak as usize
    );
    svg
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(family: Family, trials: usize, seed: u64) -> ExperimentSpec {
        ExperimentSpec {
            family,
            trials,
            nodes: 10,
            seed,
            timing: false,
            cut_level: 4,
            alpha: 2.1,
            p_nocap: 0.15,
            roster: None,
        }
    }

    #[test]
    fn experiment_is_deterministic() {
        let s = spec(Family::FixedPrimary, 20, 9);
        let a = run_experiment(&s).unwrap();
        let b = run_experiment(&s).unwrap();
        assert_eq!(write_csv(&a), write_csv(&b));
        assert_eq!(emit_plot(&a), emit_plot(&b));
        assert!(a.completed > 0);
    }

    #[test]
    fn reference_search_is_always_optimal() {
        for family in [Family::FixedPrimary, Family::FreeForm] {
            let r = run_experiment(&spec(family, 15, 3)).unwrap();
            for row in r.rows.iter().filter(|r| r.algo == "bf") {
                assert!(row.optimal, "trial {}", row.trial);
            }
            let summary = summarize(&r);
            let bf = summary.iter().find(|(a, _, _)| a == "bf").unwrap();
            assert_eq!(bf.2, 1.0);
        }
    }

    #[test]
    fn csv_has_expected_shape() {
        let r = run_experiment(&spec(Family::FreeForm, 5, 1)).unwrap();
        let csv = write_csv(&r);
        let mut lines = csv.lines();
        assert_eq!(
            lines.next().unwrap(),
            "trial,seed,algo,objective,feasible,optimal,runtime_us"
        );
        let body: Vec<&str> = lines.collect();
        assert_eq!(body.len(), r.completed * 4);
        for line in body {
            assert_eq!(line.split(',').count(), 7);
            assert!(line.ends_with(",0")); // timing off
        }
    }

    #[test]
    fn plot_is_valid_svg_with_bars() {
        let r = run_experiment(&spec(Family::FixedPrimary, 10, 5)).unwrap();
        let svg = emit_plot(&r);
        assert!(svg.starts_with("<svg"));
        assert!(svg.trim_end().ends_with("</svg>"));
        assert!(svg.matches("<rect").count() > 3);
    }

    #[test]
    fn rejects_degenerate_specs() {
        assert!(run_experiment(&ExperimentSpec {
            family: Family::FixedPrimary,
            trials: 0,
            nodes: 10,
            seed: 0,
            timing: false,
            cut_level: 4,
            alpha: 2.1,
            p_nocap: 0.15,
            roster: None,
        })
        .is_err());
        assert!(run_experiment(&ExperimentSpec {
            family: Family::FixedPrimary,
            trials: 1,
            nodes: 4,
            seed: 0,
            timing: false,
            cut_level: 4,
            alpha: 2.1,
            p_nocap: 0.15,
            roster: None,
        })
        .is_err());
    }
}
