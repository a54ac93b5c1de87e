//! Python bindings: network construction, the path-pair solvers, the
//! two-connection solvers, online admission, and the experiment harness.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use survivor::error::Error;
use survivor::failure::{preemption_oracle, ConnectionRequest, PathPair, Scenario};
use survivor::graph::{EdgePath, LinkSet, Network as CoreNetwork};
use survivor::netgen::{generate, GenConfig};
use survivor::okcp::{apply_admission, solve_2cesb, solve_okcp, LinkPartition};
use survivor::paths::{disjoint_pair, tunable_pair};
use survivor::sim::{run_experiment, summarize, ExperimentSpec, Family};
use survivor::twocp::{
    brute_2cp1, brute_2cp2, brute_2cp3, solve_2cp1_sca, solve_2cp2a, solve_2cp2n, solve_2cp3a,
    solve_2cp3b, solve_2cp3n, TwoCPInstance,
};

fn err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Undirected network with per-link failure probabilities and capacity flags.
#[pyclass(name = "Network", skip_from_py_object)]
#[derive(Clone)]
struct PyNetwork {
    inner: CoreNetwork,
}

#[pymethods]
impl PyNetwork {
    /// Build from `(a, b, failure_probability, has_capacity)` tuples.
    #[new]
    fn new(node_count: usize, links: Vec<(usize, usize, f64, bool)>) -> PyResult<Self> {
        let links = links
            .into_iter()
            .map(|(a, b, p, cap)| survivor::graph::Link {
                a,
                b,
                failure_probability: p,
                has_capacity: cap,
            })
            .collect();
        Ok(PyNetwork { inner: CoreNetwork::new(node_count, links).map_err(err)? })
    }

    /// Parse the line-oriented graph text format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        let (net, _labels) = CoreNetwork::parse(text).map_err(err)?;
        Ok(PyNetwork { inner: net })
    }

    /// Random power-law network with normalized failure probabilities.
    #[staticmethod]
    #[pyo3(signature = (nodes, seed, alpha=2.1, lam=5.0, p_nocap=0.15))]
    fn generate(nodes: usize, seed: u64, alpha: f64, lam: f64, p_nocap: f64) -> PyResult<Self> {
        let mut cfg = GenConfig::new(nodes, seed);
        cfg.alpha = alpha;
        cfg.lambda = lam;
        cfg.p_nocap = p_nocap;
        Ok(PyNetwork { inner: generate(&cfg).map_err(err)? })
    }

    fn to_text(&self) -> String {
        self.inner.to_text()
    }

    #[getter]
    fn node_count(&self) -> usize {
        self.inner.node_count()
    }

    #[getter]
    fn link_count(&self) -> usize {
        self.inner.link_count()
    }

    /// Links as `(a, b, failure_probability, has_capacity)` tuples.
    fn links(&self) -> Vec<(usize, usize, f64, bool)> {
        self.inner
            .links()
            .iter()
            .map(|l| (l.a, l.b, l.failure_probability, l.has_capacity))
            .collect()
    }

    fn __repr__(&self) -> String {
        format!(
            "Network(nodes={}, links={})",
            self.inner.node_count(),
            self.inner.link_count()
        )
    }
}

/// A solved two-connection scenario: overlap case, second-connection failure
/// probability, and the four paths as link-index lists.
#[pyclass(name = "Solution")]
struct PySolution {
    #[pyo3(get)]
    case_tag: String,
    #[pyo3(get)]
    objective: Option<f64>,
    #[pyo3(get)]
    p1: Option<Vec<usize>>,
    #[pyo3(get)]
    b1: Option<Vec<usize>>,
    #[pyo3(get)]
    p2: Option<Vec<usize>>,
    #[pyo3(get)]
    b2: Option<Vec<usize>>,
}

#[pymethods]
impl PySolution {
    #[getter]
    fn feasible(&self) -> bool {
        self.objective.is_some()
    }

    fn __repr__(&self) -> String {
        format!("Solution(case_tag={:?}, objective={:?})", self.case_tag, self.objective)
    }
}

/// Kebab-case tag matching the CLI's JSON output.
fn case_tag_str(tag: &survivor::failure::CaseTag) -> String {
    use survivor::failure::CaseTag::*;
    match tag {
        SharedBackup => "shared-backup",
        UnavoidableFirstBackup => "unavoidable-first-backup",
        Overlapped => "overlapped",
        Infeasible => "infeasible",
    }
    .to_string()
}

fn solution_of(sol: survivor::twocp::TwoCPSolution) -> PySolution {
    let tag = case_tag_str(&sol.case_tag);
    let paths = sol.scenario.as_ref().map(|s| {
        (
            s.pairs[0].primary.links.clone(),
            s.pairs[0].backup.links.clone(),
            s.pairs[1].primary.links.clone(),
            s.pairs[1].backup.links.clone(),
        )
    });
    let (p1, b1, p2, b2) = match paths {
        Some((a, b, c, d)) => (Some(a), Some(b), Some(c), Some(d)),
        None => (None, None, None, None),
    };
    PySolution { case_tag: tag, objective: sol.objective, p1, b1, p2, b2 }
}

fn path(net: &CoreNetwork, links: Vec<usize>, s: usize, t: usize) -> PyResult<EdgePath> {
    EdgePath::new(net, links.clone(), s, t)
        .or_else(|_| EdgePath::new(net, links.into_iter().rev().collect(), s, t))
        .map_err(err)
}

/// Minimum-weight pair of link-disjoint paths under failure-probability
/// weights, restricted to links with capacity. None when no pair exists.
#[pyfunction(name = "disjoint_pair")]
fn py_disjoint_pair(
    net: &PyNetwork,
    s: usize,
    t: usize,
) -> PyResult<Option<(Vec<usize>, Vec<usize>)>> {
    let allowed = net.inner.capacity_mask();
    let w: Vec<f64> = net.inner.links().iter().map(|l| l.failure_probability).collect();
    Ok(disjoint_pair(&net.inner, &allowed, &w, s, t)
        .map_err(err)?
        .map(|(p, b)| (p.links, b.links)))
}

/// Minimum-failure primary/backup pair that may share the links separating s
/// from t; returns `(primary, backup, failure_probability)`.
#[pyfunction(name = "tunable_pair")]
fn py_tunable_pair(
    net: &PyNetwork,
    s: usize,
    t: usize,
) -> PyResult<Option<(Vec<usize>, Vec<usize>, f64)>> {
    let allowed = net.inner.capacity_mask();
    Ok(tunable_pair(&net.inner, &allowed, s, t)
        .map_err(err)?
        .map(|(p, b, pf)| (p.links, b.links, pf)))
}

fn instance(
    net: &PyNetwork,
    terminals: (usize, usize, usize, usize),
    p1: Option<Vec<usize>>,
    b1: Option<Vec<usize>>,
) -> PyResult<TwoCPInstance> {
    let (s1, t1, s2, t2) = terminals;
    let fixed_p1 = p1.map(|l| path(&net.inner, l, s1, t1)).transpose()?;
    let fixed_b1 = b1.map(|l| path(&net.inner, l, s1, t1)).transpose()?;
    Ok(TwoCPInstance {
        net: net.inner.clone(),
        req1: ConnectionRequest::new(s1, t1, 0.0, 1).map_err(err)?,
        req2: ConnectionRequest::new(s2, t2, 1.0, 2).map_err(err)?,
        fixed_p1,
        fixed_b1,
    })
}

/// Route a second connection so its failure probability is minimal. The
/// first connection's paths may be fixed (`p1`/`b1`), partially fixed, or
/// free, and `algo` picks the solver: `sca`, `2a`, `2n`, `3a`, `3b`, `3n`,
/// or `bf` for the exhaustive reference.
#[pyfunction(name = "solve_two_connections")]
#[pyo3(signature = (net, s1, t1, s2, t2, algo, p1=None, b1=None, cut_level=4))]
#[allow(clippy::too_many_arguments)]
fn py_solve_two_connections(
    net: &PyNetwork,
    s1: usize,
    t1: usize,
    s2: usize,
    t2: usize,
    algo: &str,
    p1: Option<Vec<usize>>,
    b1: Option<Vec<usize>>,
    cut_level: usize,
) -> PyResult<PySolution> {
    let inst = instance(net, (s1, t1, s2, t2), p1, b1)?;
    let sol = match algo {
        "sca" => solve_2cp1_sca(&inst),
        "2a" => solve_2cp2a(&inst),
        "2n" => solve_2cp2n(&inst),
        "3a" => solve_2cp3a(&inst, cut_level),
        "3b" => solve_2cp3b(&inst, cut_level, false),
        "3n" => solve_2cp3n(&inst),
        "bf" => match (&inst.fixed_p1, &inst.fixed_b1) {
            (Some(_), Some(_)) => brute_2cp1(&inst),
            (Some(_), None) => brute_2cp2(&inst),
            _ => brute_2cp3(&inst),
        },
        other => return Err(PyValueError::new_err(format!("unknown algorithm {other:?}"))),
    }
    .map_err(err)?;
    Ok(solution_of(sol))
}

/// Exact failure probabilities `(pf_c1, pf_c2)` of an explicit scenario
/// under preemptive restoration.
#[pyfunction(name = "evaluate")]
#[allow(clippy::too_many_arguments)]
fn py_evaluate(
    net: &PyNetwork,
    s1: usize,
    t1: usize,
    s2: usize,
    t2: usize,
    p1: Vec<usize>,
    b1: Vec<usize>,
    p2: Vec<usize>,
    b2: Vec<usize>,
) -> PyResult<(f64, f64)> {
    let c1 = PathPair::new(path(&net.inner, p1, s1, t1)?, path(&net.inner, b1, s1, t1)?)
        .map_err(err)?;
    let c2 = PathPair::new(path(&net.inner, p2, s2, t2)?, path(&net.inner, b2, s2, t2)?)
        .map_err(err)?;
    preemption_oracle(&net.inner, &Scenario::two(c1, c2)).map_err(err)
}

fn partition(
    net: &CoreNetwork,
    backup: Vec<usize>,
    primary: Vec<usize>,
) -> PyResult<LinkPartition> {
    let m = net.link_count();
    let mut free = net.full_mask();
    let e2 = LinkSet::from_links(m, &backup);
    let e3 = LinkSet::from_links(m, &primary);
    for e in backup.iter().chain(&primary) {
        free.remove(*e);
    }
    LinkPartition::new(net, free, e2, e3).map_err(err)
}

/// Admit a fully reliable connection into a network whose links are already
/// claimed as existing backups or primaries. Returns
/// `(primary, backup, partition_text_after)` or None.
#[pyfunction(name = "solve_admission")]
#[pyo3(signature = (net, s, t, backup_links, primary_links, k=2))]
fn py_solve_admission(
    net: &PyNetwork,
    s: usize,
    t: usize,
    backup_links: Vec<usize>,
    primary_links: Vec<usize>,
    k: usize,
) -> PyResult<Option<(Vec<usize>, Vec<usize>, String)>> {
    let part = partition(&net.inner, backup_links, primary_links)?;
    match solve_okcp(&net.inner, &part, s, t, k).map_err(err)? {
        Some(pair) => {
            let after = apply_admission(&net.inner, &part, &pair).map_err(err)?;
            Ok(Some((pair.primary.links.clone(), pair.backup.links.clone(), after.to_text())))
        }
        None => Ok(None),
    }
}

/// Two fully reliable connections whose backup paths may share links.
/// Returns `(p1, b1, p2, b2)` link lists or None.
#[pyfunction(name = "solve_shared_backup_pair")]
fn py_solve_shared_backup_pair(
    net: &PyNetwork,
    s1: usize,
    t1: usize,
    s2: usize,
    t2: usize,
) -> PyResult<Option<(Vec<usize>, Vec<usize>, Vec<usize>, Vec<usize>)>> {
    let allowed = net.inner.capacity_mask();
    Ok(solve_2cesb(&net.inner, &allowed, s1, t1, s2, t2)
        .map_err(err)?
        .map(|scen| {
            (
                scen.pairs[0].primary.links.clone(),
                scen.pairs[0].backup.links.clone(),
                scen.pairs[1].primary.links.clone(),
                scen.pairs[1].backup.links.clone(),
            )
        }))
}

/// Monte-Carlo solver comparison on generated networks. Returns a dict with
/// `completed`, `skipped`, and `rates` (per-algorithm
/// `(feasible_rate, optimal_rate)`).
#[pyfunction(name = "run_experiment")]
#[pyo3(signature = (family, trials, nodes, seed, alpha=2.1, p_nocap=0.15, cut_level=4))]
fn py_run_experiment(
    py: Python<'_>,
    family: &str,
    trials: usize,
    nodes: usize,
    seed: u64,
    alpha: f64,
    p_nocap: f64,
    cut_level: usize,
) -> PyResult<Py<pyo3::types::PyDict>> {
    let family = match family {
        "fixed-primary" => Family::FixedPrimary,
        "free-form" => Family::FreeForm,
        other => {
            return Err(PyValueError::new_err(format!(
                "unknown family {other:?}; expected fixed-primary or free-form"
            )))
        }
    };
    let spec = ExperimentSpec {
        family,
        trials,
        nodes,
        seed,
        timing: false,
        cut_level,
        alpha,
        p_nocap,
        roster: None,
    };
    let result = run_experiment(&spec).map_err(err)?;
    let out = pyo3::types::PyDict::new(py);
    out.set_item("completed", result.completed)?;
    out.set_item("skipped", result.skipped)?;
    let rates = pyo3::types::PyDict::new(py);
    for (algo, feasible, optimal) in summarize(&result) {
        rates.set_item(algo, (feasible, optimal))?;
    }
    out.set_item("rates", rates)?;
    Ok(out.into())
}

#[pymodule]
fn pysurvivor(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyNetwork>()?;
    m.add_class::<PySolution>()?;
    m.add_function(wrap_pyfunction!(py_disjoint_pair, m)?)?;
    m.add_function(wrap_pyfunction!(py_tunable_pair, m)?)?;
    m.add_function(wrap_pyfunction!(py_solve_two_connections, m)?)?;
    m.add_function(wrap_pyfunction!(py_evaluate, m)?)?;
    m.add_function(wrap_pyfunction!(py_solve_admission, m)?)?;
    m.add_function(wrap_pyfunction!(py_solve_shared_backup_pair, m)?)?;
    m.add_function(wrap_pyfunction!(py_run_experiment, m)?)?;
    Ok(())
}
