//! Solvers for routing a second prioritized connection next to (or jointly
//! with) a fully reliable first connection: the exact branch solver for the
//! fixed-first-pair problem, heuristics and greedy baselines for the freer
//! variants, and brute-force oracles.

use serde::{Deserialize, Serialize};

use crate::cuts::small_cut_weights;
use crate::error::{Error, Result};
use crate::failure::{
    classify_case, pf2_fast, preemption_oracle, CaseTag, ConnectionRequest, PathPair, Scenario,
};
use crate::graph::{connectivity, decompose_d1, EdgePath, Link, LinkSet, Network, NodeId};
use crate::paths::{
    disjoint_pair, enumerate_simple_paths, shortest_path, tunable_pair, two_path_problem,
    DEFAULT_PATH_CAP,
};

/// Node-count guard for the brute-force solvers.
pub const BRUTE_MAX_NODES: usize = 12;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TwoCPInstance {
    pub net: Network,
    pub req1: ConnectionRequest,
    pub req2: ConnectionRequest,
    /// Fixed first primary (required for the fixed-pair and fixed-primary
    /// problems).
    pub fixed_p1: Option<EdgePath>,
    /// Fixed first backup (required for the fixed-pair problem).
    pub fixed_b1: Option<EdgePath>,
}

impl TwoCPInstance {
    pub fn validate(&self) -> Result<()> {
        if self.req1.mcfp != 0.0 {
            return Err(Error::input("first connection must be fully reliable"));
        }
        let allowed = self.allowed();
        for (path, which) in [(&self.fixed_p1, "primary"), (&self.fixed_b1, "backup")] {
            if let Some(p) = path {
                EdgePath::new(&self.net, p.links.clone(), p.source, p.target)?;
                if p.source != self.req1.source || p.target != self.req1.destination {
                    return Err(Error::input(format!("fixed {which} terminal mismatch")));
                }
                if p.links.iter().any(|&e| !allowed.contains(e)) {
                    return Err(Error::input(format!(
                        "fixed {which} uses a link without capacity"
                    )));
                }
            }
        }
        if let (Some(p1), Some(b1)) = (&self.fixed_p1, &self.fixed_b1) {
            if p1.link_set(&self.net).intersects(&b1.link_set(&self.net)) {
                return Err(Error::input(
                    "fixed first pair must be link-disjoint (fully reliable)",
                ));
            }
        }
        Ok(())
    }

    /// Links usable by any path: those with capacity. Links without capacity
    /// stay in the failure space but carry no traffic.
    pub fn allowed(&self) -> LinkSet {
        self.net.capacity_mask()
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TwoCPSolution {
    pub case_tag: CaseTag,
    /// pf_c2 of the returned scenario; absent when infeasible.
    pub objective: Option<f64>,
    pub scenario: Option<Scenario>,
}

impl TwoCPSolution {
    pub fn infeasible() -> Self {
        TwoCPSolution {
            case_tag: CaseTag::Infeasible,
            objective: None,
            scenario: None,
        }
    }

    pub fn is_feasible(&self) -> bool {
        self.scenario.is_some()
    }

    fn from_scenario(net: &Network, scen: Scenario) -> Result<Self> {
        let (_, pf2) = preemption_oracle(net, &scen)?;
        let tag = classify_case(net, &scen)?.unwrap_or(CaseTag::Overlapped);
        Ok(TwoCPSolution {
            case_tag: tag,
            objective: Some(pf2),
            scenario: Some(scen),
        })
    }
}

fn subtract_path(allowed: &LinkSet, net: &Network, p: &EdgePath) -> LinkSet {
    allowed.difference(&p.link_set(net))
}

fn pf_weights(net: &Network) -> Vec<f64> {
    net.links().iter().map(|l| l.failure_probability).collect()
}

/// Exact solver for the second connection when the first pair is fixed.
/// Builds one candidate per overlap case — a shared-backup pair threaded
/// through a fictitious shortcut over the first backup, a shared-bridge pair
/// avoiding only the first primary, and an overlapped pair crossing the first
/// primary at minimum cost — and returns the candidate the preemption
/// evaluator scores best.
pub fn solve_2cp1_sca(inst: &TwoCPInstance) -> Result<TwoCPSolution> {
    inst.validate()?;
    let p1 = inst
        .fixed_p1
        .as_ref()
        .ok_or_else(|| Error::input("first primary must be fixed"))?;
    let b1 = inst
        .fixed_b1
        .as_ref()
        .ok_or_else(|| Error::input("first backup must be fixed"))?;
    let net = &inst.net;
    let (s2, t2) = (inst.req2.source, inst.req2.destination);
    let allowed = inst.allowed();
    let g1 = subtract_path(&allowed, net, p1);
    if !connectivity(net, &g1, s2, t2)? {
        return Ok(TwoCPSolution::infeasible());
    }
    let c1 = PathPair::new(p1.clone(), b1.clone())?;
    let mut candidates: Vec<Scenario> = Vec::new();

    // Shared-backup candidate: route c2 entirely off c1's paths, bridging
    // over b1 where that bypasses bottlenecks.
    let g2 = subtract_path(&g1, net, b1);
    if connectivity(net, &g2, s2, t2)? {
        if let Some(pair) = shared_backup_candidate(net, &g2, b1, s2, t2)? {
            candidates.push(Scenario::two(c1.clone(), pair));
        }
    }

    // Unavoidable-first-backup candidate: avoid only p1 and share any
    // bottleneck bridges between c2's own paths.
    if let Some((p2, b2, _)) = tunable_pair(net, &g1, s2, t2)? {
        candidates.push(Scenario::two(
            c1.clone(),
            PathPair::new(p2, b2)?,
        ));
    }

    // Overlapped candidate: p2 as reliable as possible off p1; b2 avoids b1
    // and pays only for crossing p1.
    if let Some(p2) = shortest_path(net, &g1, &pf_weights(net), s2, t2)? {
        let gb = subtract_path(&allowed, net, b1);
        let p1set = p1.link_set(net);
        let weights: Vec<f64> = net
            .links()
            .iter()
            .enumerate()
            .map(|(e, l)| {
                if p1set.contains(e) {
                    l.failure_probability
                } else {
                    0.0
                }
            })
            .collect();
        if let Some(b2) = shortest_path(net, &gb, &weights, s2, t2)? {
            candidates.push(Scenario::two(c1.clone(), PathPair::new(p2, b2)?));
        }
    }

    let mut best: Option<(f64, Scenario)> = None;
    for scen in candidates {
        let (_, pf2) = preemption_oracle(net, &scen)?;
        if best.as_ref().is_none_or(|(b, _)| pf2 + 1e-12 < *b) {
            best = Some((pf2, scen));
        }
    }
    let (_, scen) = best.ok_or_else(|| Error::input("no candidate despite connectivity"))?;
    TwoCPSolution::from_scenario(net, scen)
}

/// Builds the shared-backup pair in `g2` (the graph without c1's links): find
/// the chain decomposition toward t2, add a zero-weight fictitious link
/// between the first and last chain components touched by b1, take the
/// minimum shared-bridge pair there, and splice the matching b1 segment in
/// place of the fictitious link.
fn shared_backup_candidate(
    net: &Network,
    g2: &LinkSet,
    b1: &EdgePath,
    s2: NodeId,
    t2: NodeId,
) -> Result<Option<PathPair>> {
    let d1 = decompose_d1(net, g2, s2, t2)?;
    let b1_nodes = b1.nodes(net);
    let touch: Vec<Option<NodeId>> = d1
        .components
        .iter()
        .map(|comp| {
            b1_nodes
                .iter()
                .copied()
                .find(|v| comp.contains(v))
        })
        .collect();
    let first = touch.iter().position(|x| x.is_some());
    let last = touch.iter().rposition(|x| x.is_some());
    let (xi, xj, span) = match (first, last) {
        (Some(i), Some(j)) if i != j => (touch[i].unwrap(), touch[j].unwrap(), true),
        _ => (0, 0, false),
    };
    if !span {
        // no helpful span of b1 across the chain: plain shared-bridge pair
        return Ok(tunable_pair(net, g2, s2, t2)?.map(|(p, b, _)| PathPair { primary: p, backup: b }));
    }
    // Augment with the fictitious link; original link indices are preserved.
    let m = net.link_count();
    let mut links = net.links().to_vec();
    links.push(Link {
        a: xi,
        b: xj,
        failure_probability: 0.0,
        has_capacity: true,
    });
    let aug = Network::new(net.node_count(), links)?;
    let mut aug_allowed = LinkSet::empty(m + 1);
    for e in g2.iter() {
        aug_allowed.insert(e);
    }
    aug_allowed.insert(m);
    let Some((pa, pb, _)) = tunable_pair(&aug, &aug_allowed, s2, t2)? else {
        return Ok(None);
    };
    // The fictitious link bypasses chain bridges, so it is never shared; at
    // most one of the two paths carries it and becomes the backup.
    let (p2, b2) = if pb.links.contains(&m) {
        (pa, pb)
    } else {
        (pb, pa)
    };
    let p2 = EdgePath::new(net, p2.links.clone(), s2, t2)?;
    let b2 = splice_fictitious(net, &b2, m, b1, xi, xj, s2, t2)?;
    Ok(Some(PathPair::new(p2, b2)?))
}

/// Replaces occurrences of the fictitious link index `f` in `path` with the
/// segment of `b1` running between the splice nodes, oriented to fit.
#[allow(clippy::too_many_arguments)]
fn splice_fictitious(
    net: &Network,
    path: &EdgePath,
    f: usize,
    b1: &EdgePath,
    xi: NodeId,
    xj: NodeId,
    s2: NodeId,
    t2: NodeId,
) -> Result<EdgePath> {
    if !path.links.contains(&f) {
        return EdgePath::new(net, path.links.clone(), s2, t2);
    }
    let b1_nodes = b1.nodes(net);
    let pi = b1_nodes.iter().position(|&v| v == xi).unwrap();
    let pj = b1_nodes.iter().position(|&v| v == xj).unwrap();
    let (lo, hi) = (pi.min(pj), pi.max(pj));
    let seg: Vec<usize> = b1.links[lo..hi].to_vec();
    // orient the segment: seg as stored runs b1_nodes[lo] -> b1_nodes[hi]
    let mut out = Vec::new();
    let mut cur = s2;
    let aug_link_other = |node: NodeId| if node == xi { xj } else { xi };
    for &e in &path.links {
        if e != f {
            out.push(e);
            cur = net.link(e).other_endpoint(cur);
        } else {
            let forward = cur == b1_nodes[lo];
            if forward {
                out.extend(seg.iter().copied());
            } else {
                out.extend(seg.iter().rev().copied());
            }
            cur = aug_link_other(cur);
        }
    }
    EdgePath::new(net, out, s2, t2)
}

/// The candidate pools a brute-force solver minimizes over.
struct BruteSpace {
    p2s: Vec<LinkSet>,
    b2s: Vec<LinkSet>,
}

fn brute_guard(net: &Network) -> Result<()> {
    if net.node_count() > BRUTE_MAX_NODES {
        return Err(Error::resource(format!(
            "brute-force solver limited to {BRUTE_MAX_NODES} nodes"
        )));
    }
    Ok(())
}

/// Exact minimum pf_c2 over all (p2, b2) with p2 avoiding p1, as link sets.
/// Prefers minimizers inside the retained overlap cases on ties. Returns the
/// best (p2, b2, pf2) or None when no p2 exists.
fn brute_second_pair(
    net: &Network,
    allowed: &LinkSet,
    p1: &LinkSet,
    b1: &LinkSet,
    s2: NodeId,
    t2: NodeId,
    budget: &mut usize,
) -> Result<Option<(LinkSet, LinkSet, f64)>> {
    let g1 = allowed.difference(p1);
    let p2s: Vec<LinkSet> = enumerate_simple_paths(net, &g1, s2, t2, DEFAULT_PATH_CAP)?
        .iter()
        .map(|p| p.link_set(net))
        .collect();
    if p2s.is_empty() {
        return Ok(None);
    }
    let b2s: Vec<LinkSet> = enumerate_simple_paths(net, allowed, s2, t2, DEFAULT_PATH_CAP)?
        .iter()
        .map(|p| p.link_set(net))
        .collect();
    let space = BruteSpace { p2s, b2s };
    let mut best: Option<(usize, usize, f64, bool)> = None;
    for (i, p2) in space.p2s.iter().enumerate() {
        for (j, b2) in space.b2s.iter().enumerate() {
            if *budget == 0 {
                return Err(Error::resource("brute-force pair budget exhausted"));
            }
            *budget -= 1;
            let pf2 = pf2_fast(net, p1, b1, p2, b2);
            let retained = !(b2.intersects(p1) && b2.intersects(b1));
            let better = match &best {
                None => true,
                Some((_, _, bv, bret)) => {
                    pf2 + 1e-12 < *bv || ((pf2 - *bv).abs() <= 1e-12 && retained && !*bret)
                }
            };
            if better {
                best = Some((i, j, pf2, retained));
            }
        }
    }
    let (i, j, pf2, _) = best.unwrap();
    Ok(Some((space.p2s[i].clone(), space.b2s[j].clone(), pf2)))
}

/// Rebuilds a concrete path from a link set known to be a simple path.
fn path_from_set(net: &Network, set: &LinkSet, s: NodeId, t: NodeId) -> Result<EdgePath> {
    enumerate_simple_paths(net, set, s, t, 4)?
        .into_iter()
        .find(|p| p.links.len() == set.len())
        .ok_or_else(|| Error::input("link set is not a simple path"))
}

/// Exhaustive optimum for the fixed-first-pair problem.
pub fn brute_2cp1(inst: &TwoCPInstance) -> Result<TwoCPSolution> {
    inst.validate()?;
    brute_guard(&inst.net)?;
    let p1 = inst
        .fixed_p1
        .as_ref()
        .ok_or_else(|| Error::input("first primary must be fixed"))?;
    let b1 = inst
        .fixed_b1
        .as_ref()
        .ok_or_else(|| Error::input("first backup must be fixed"))?;
    let net = &inst.net;
    let allowed = inst.allowed();
    let mut budget = DEFAULT_PATH_CAP;
    let Some((p2, b2, _)) = brute_second_pair(
        net,
        &allowed,
        &p1.link_set(net),
        &b1.link_set(net),
        inst.req2.source,
        inst.req2.destination,
        &mut budget,
    )?
    else {
        return Ok(TwoCPSolution::infeasible());
    };
    let scen = Scenario::two(
        PathPair::new(p1.clone(), b1.clone())?,
        PathPair::new(
            path_from_set(net, &p2, inst.req2.source, inst.req2.destination)?,
            path_from_set(net, &b2, inst.req2.source, inst.req2.destination)?,
        )?,
    );
    TwoCPSolution::from_scenario(net, scen)
}

/// Exhaustive optimum when only the first primary is fixed: enumerate every
/// first backup and take the best inner optimum.
pub fn brute_2cp2(inst: &TwoCPInstance) -> Result<TwoCPSolution> {
    inst.validate()?;
    brute_guard(&inst.net)?;
    let p1 = inst
        .fixed_p1
        .as_ref()
        .ok_or_else(|| Error::input("first primary must be fixed"))?;
    let net = &inst.net;
    let allowed = inst.allowed();
    let g1 = subtract_path(&allowed, net, p1);
    let b1s = enumerate_simple_paths(net, &g1, inst.req1.source, inst.req1.destination, DEFAULT_PATH_CAP)?;
    let mut budget = DEFAULT_PATH_CAP;
    let mut best: Option<(f64, EdgePath, LinkSet, LinkSet)> = None;
    for b1 in &b1s {
        let hit = brute_second_pair(
            net,
            &allowed,
            &p1.link_set(net),
            &b1.link_set(net),
            inst.req2.source,
            inst.req2.destination,
            &mut budget,
        )?;
        if let Some((p2, b2, pf2)) = hit {
            if best.as_ref().is_none_or(|(bv, ..)| pf2 + 1e-12 < *bv) {
                best = Some((pf2, b1.clone(), p2, b2));
            }
        }
    }
    let Some((_, b1, p2, b2)) = best else {
        return Ok(TwoCPSolution::infeasible());
    };
    let scen = Scenario::two(
        PathPair::new(p1.clone(), b1)?,
        PathPair::new(
            path_from_set(net, &p2, inst.req2.source, inst.req2.destination)?,
            path_from_set(net, &b2, inst.req2.source, inst.req2.destination)?,
        )?,
    );
    TwoCPSolution::from_scenario(net, scen)
}

/// Exhaustive optimum over both first-connection paths as well.
pub fn brute_2cp3(inst: &TwoCPInstance) -> Result<TwoCPSolution> {
    inst.validate()?;
    brute_guard(&inst.net)?;
    let net = &inst.net;
    let allowed = inst.allowed();
    let p1s = enumerate_simple_paths(net, &allowed, inst.req1.source, inst.req1.destination, DEFAULT_PATH_CAP)?;
    let mut budget = DEFAULT_PATH_CAP;
    let mut best: Option<(f64, Scenario)> = None;
    for p1 in &p1s {
        let g1 = subtract_path(&allowed, net, p1);
        let b1s =
            enumerate_simple_paths(net, &g1, inst.req1.source, inst.req1.destination, DEFAULT_PATH_CAP)?;
        for b1 in &b1s {
            let hit = brute_second_pair(
                net,
                &allowed,
                &p1.link_set(net),
                &b1.link_set(net),
                inst.req2.source,
                inst.req2.destination,
                &mut budget,
            )?;
            if let Some((p2, b2, pf2)) = hit {
                if best.as_ref().is_none_or(|(bv, _)| pf2 + 1e-12 < *bv) {
                    let scen = Scenario::two(
                        PathPair::new(p1.clone(), b1.clone())?,
                        PathPair::new(
                            path_from_set(net, &p2, inst.req2.source, inst.req2.destination)?,
                            path_from_set(net, &b2, inst.req2.source, inst.req2.destination)?,
                        )?,
                    );
                    best = Some((pf2, scen));
                }
            }
        }
    }
    match best {
        Some((_, scen)) => TwoCPSolution::from_scenario(net, scen),
        None => Ok(TwoCPSolution::infeasible()),
    }
}

/// Heuristic for the fixed-primary problem: try to route the first backup
/// alongside a second-connection path (link-disjointly), then solve the fixed
/// pair exactly; when that fails, fall back to the shortest first backup and
/// a shared-bridge second pair, both off the first primary.
pub fn solve_2cp2a(inst: &TwoCPInstance) -> Result<TwoCPSolution> {
    inst.validate()?;
    let p1 = inst
        .fixed_p1
        .as_ref()
        .ok_or_else(|| Error::input("first primary must be fixed"))?;
    let net = &inst.net;
    let allowed = inst.allowed();
    let g1 = subtract_path(&allowed, net, p1);
    let tpp = two_path_problem(
        net,
        &g1,
        inst.req1.source,
        inst.req1.destination,
        inst.req2.source,
        inst.req2.destination,
    )?;
    if let Some((b1, _)) = tpp {
        let sub = TwoCPInstance {
            net: inst.net.clone(),
            req1: inst.req1,
            req2: inst.req2,
            fixed_p1: Some(p1.clone()),
            fixed_b1: Some(b1),
        };
        return solve_2cp1_sca(&sub);
    }
    let Some(b1) = shortest_path(net, &g1, &pf_weights(net), inst.req1.source, inst.req1.destination)?
    else {
        return Ok(TwoCPSolution::infeasible());
    };
    let Some((p2, b2, _)) = tunable_pair(net, &g1, inst.req2.source, inst.req2.destination)? else {
        return Ok(TwoCPSolution::infeasible());
    };
    let scen = Scenario::two(PathPair::new(p1.clone(), b1)?, PathPair::new(p2, b2)?);
    TwoCPSolution::from_scenario(net, scen)
}

/// Greedy baseline for the fixed-primary problem, choosing each path in
/// arrival order with failure-probability weights and no lookahead: the first
/// backup ignores the second connection entirely, the second primary ignores
/// the first backup, and the second backup is a single shortest path under
/// per-link penalties.
pub fn solve_2cp2n(inst: &TwoCPInstance) -> Result<TwoCPSolution> {
    inst.validate()?;
    let p1 = inst
        .fixed_p1
        .as_ref()
        .ok_or_else(|| Error::input("first primary must be fixed"))?;
    let net = &inst.net;
    let allowed = inst.allowed();
    let w = pf_weights(net);
    let g1 = subtract_path(&allowed, net, p1);
    let Some(p2) = shortest_path(net, &g1, &w, inst.req2.source, inst.req2.destination)? else {
        return Ok(TwoCPSolution::infeasible());
    };
    // the first backup dodges both primaries when it can, and settles for
    // dodging only the first otherwise
    let g1_no_p2 = subtract_path(&g1, net, &p2);
    let b1 = match shortest_path(net, &g1_no_p2, &w, inst.req1.source, inst.req1.destination)? {
        Some(b1) => b1,
        None => {
            let Some(b1) =
                shortest_path(net, &g1, &w, inst.req1.source, inst.req1.destination)?
            else {
                return Ok(TwoCPSolution::infeasible());
            };
            b1
        }
    };
    // Per-link penalty: a backup link only costs when the failure it carries
    // would already have knocked out the second primary.
    let p1set = p1.link_set(net);
    let b1set = b1.link_set(net);
    let p2set = p2.link_set(net);
    let x = p2set.intersects(&b1set);
    let penalties: Vec<f64> = (0..net.link_count())
        .map(|e| {
            let c1_on_b1 = p1set.contains(e) && !b1set.contains(e);
            let p2_unusable = p2set.contains(e) || (c1_on_b1 && x);
            if p2_unusable {
                net.link(e).failure_probability
            } else {
                0.0
            }
        })
        .collect();
    let g2 = subtract_path(&allowed, net, &p2);
    // when no detour exists the second connection goes unprotected
    let b2 = shortest_path(net, &g2, &penalties, inst.req2.source, inst.req2.destination)?
        .unwrap_or_else(|| p2.clone());
    let scen = Scenario::two(PathPair::new(p1.clone(), b1)?, PathPair::new(p2, b2)?);
    TwoCPSolution::from_scenario(net, scen)
}

/// Free-first-pair heuristic: pick the first pair as the minimum disjoint
/// pair under interference-aware cut weights, then solve the fixed pair
/// exactly.
pub fn solve_2cp3a(inst: &TwoCPInstance, cut_level: usize) -> Result<TwoCPSolution> {
    let allowed = inst.allowed();
    let w = small_cut_weights(&inst.net, &allowed, cut_level)?;
    solve_2cp3_with_weights(inst, &w)
}

/// Free-first-pair baseline: as the cut-weight variant but weighting links by
/// failure probability directly.
pub fn solve_2cp3n(inst: &TwoCPInstance) -> Result<TwoCPSolution> {
    let w = pf_weights(&inst.net);
    solve_2cp3_with_weights(inst, &w)
}

/// Relative weight difference under which a disjoint pair's two paths are
/// considered interchangeable for role assignment.
const ROLE_TIE_FRACTION: f64 = 0.2;

fn solve_2cp3_with_weights(inst: &TwoCPInstance, w: &[f64]) -> Result<TwoCPSolution> {
    inst.validate()?;
    let net = &inst.net;
    let allowed = inst.allowed();
    // nudge every link by a whisker so that ties between equal-weight pairs
    // resolve toward fewer total hops
    let nudged: Vec<f64> = w.iter().map(|x| x + 1e-9).collect();
    let Some((p1, b1)) =
        disjoint_pair(net, &allowed, &nudged, inst.req1.source, inst.req1.destination)?
    else {
        return Ok(TwoCPSolution::infeasible());
    };
    // the disjoint pair is unordered; the lighter path under the weight
    // function becomes the primary, with weight ties broken toward the
    // shorter path (a shorter primary removes fewer links from the residual
    // graph available to the second connection)
    let weight_of = |p: &EdgePath| p.links.iter().map(|&e| w[e]).sum::<f64>();
    let (wp, wb) = (weight_of(&p1), weight_of(&b1));
    let near_tie = (wp - wb).abs() <= ROLE_TIE_FRACTION * (wp + wb);
    let (p1, b1) = if wb < wp { (b1, p1) } else { (p1, b1) };
    let solve_fixed = |p1: &EdgePath, b1: &EdgePath| {
        let sub = TwoCPInstance {
            net: inst.net.clone(),
            req1: inst.req1,
            req2: inst.req2,
            fixed_p1: Some(p1.clone()),
            fixed_b1: Some(b1.clone()),
        };
        solve_2cp1_sca(&sub)
    };
    let first = solve_fixed(&p1, &b1)?;
    if !near_tie {
        return Ok(first);
    }
    // the two paths are nearly interchangeable under the weight function:
    // solve the second stage for both role assignments and keep the better
    let second = solve_fixed(&b1, &p1)?;
    Ok(match (first.objective, second.objective) {
        (Some(a), Some(b)) => if b < a { second } else { first },
        (None, Some(_)) => second,
        _ => first,
    })
}

/// Free-first-pair heuristic that fixes only the first primary (shortest
/// under cut weights, or failure probabilities with `pf_weighted`) and defers
/// the rest to the fixed-primary heuristic.
pub fn solve_2cp3b(inst: &TwoCPInstance, cut_level: usize, pf_weighted: bool) -> Result<TwoCPSolution> {
    inst.validate()?;
    let net = &inst.net;
    let allowed = inst.allowed();
    let w = if pf_weighted {
        pf_weights(net)
    } else {
        small_cut_weights(net, &allowed, cut_level)?
    };
    let Some(p1) = shortest_path(net, &allowed, &w, inst.req1.source, inst.req1.destination)? else {
        return Ok(TwoCPSolution::infeasible());
    };
    let sub = TwoCPInstance {
        net: inst.net.clone(),
        req1: inst.req1,
        req2: inst.req2,
        fixed_p1: Some(p1),
        fixed_b1: None,
    };
    solve_2cp2a(&sub)
}
