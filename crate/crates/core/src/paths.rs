//! Deterministic shortest paths, minimum-weight link-disjoint pairs, the
//! shared-bridge pair builder, and bounded exact multi-terminal disjoint-path
//! search.

use crate::error::{Error, Result};
use crate::graph::{bridges_separating, connectivity, EdgePath, Link, LinkSet, Network, NodeId};

/// Guard for the exact multi-terminal search.
pub const MAX_DISJOINT_LINKS: usize = 64;
pub const MAX_TERMINAL_PAIRS: usize = 7;
/// Cap on enumerated simple paths before the brute helpers abort.
pub const DEFAULT_PATH_CAP: usize = 2_000_000;

fn check_weights(net: &Network, weights: &[f64]) -> Result<()> {
    if weights.len() != net.link_count() {
        return Err(Error::input("weight vector length mismatch"));
    }
    if weights.iter().any(|w| !(*w >= 0.0)) {
        return Err(Error::input("weights must be nonnegative"));
    }
    Ok(())
}

/// Dijkstra distances (weight, hop count) from `src` over the allowed
/// subgraph. Hop count breaks weight ties toward fewer links.
fn dijkstra(
    net: &Network,
    allowed: &LinkSet,
    weights: &[f64],
    src: NodeId,
) -> (Vec<f64>, Vec<usize>) {
    let n = net.node_count();
    let mut dist = vec![f64::INFINITY; n];
    let mut hops = vec![usize::MAX; n];
    dist[src] = 0.0;
    hops[src] = 0;
    let mut heap = std::collections::BinaryHeap::new();
    heap.push(std::cmp::Reverse((
        ordered_float(0.0),
        0usize,
        src,
    )));
    while let Some(std::cmp::Reverse((d, h, u))) = heap.pop() {
        let d = from_ordered(d);
        if (d, h) > (dist[u], hops[u]) {
            continue;
        }
        for &(e, v) in net.adjacency(u) {
            if !allowed.contains(e) {
                continue;
            }
            let nd = d + weights[e];
            let nh = h + 1;
            if nd < dist[v] || (nd == dist[v] && nh < hops[v]) {
                dist[v] = nd;
                hops[v] = nh;
                heap.push(std::cmp::Reverse((ordered_float(nd), nh, v)));
            }
        }
    }
    (dist, hops)
}

fn ordered_float(x: f64) -> u64 {
    // Monotone bijection from nonnegative f64 to u64 for heap ordering.
    debug_assert!(x >= 0.0);
    x.to_bits()
}

fn from_ordered(b: u64) -> f64 {
    f64::from_bits(b)
}

/// Minimum-weight s-t path over the allowed subgraph, ties broken by fewest
/// links then lexicographically smallest link-index sequence. None when no
/// path exists.
pub fn shortest_path(
    net: &Network,
    allowed: &LinkSet,
    weights: &[f64],
    s: NodeId,
    t: NodeId,
) -> Result<Option<EdgePath>> {
    net.check_node(s)?;
    net.check_node(t)?;
    check_weights(net, weights)?;
    if s == t {
        return Ok(Some(EdgePath::empty(s)));
    }
    let (dist_t, hops_t) = dijkstra(net, allowed, weights, t);
    if dist_t[s].is_infinite() {
        return Ok(None);
    }
    let tol = 1e-9 * (1.0 + dist_t[s].abs());
    // Greedy forward walk: at each node take the smallest link index that
    // still completes an optimal path; yields the lexicographically smallest
    // optimal link sequence. Hop bookkeeping is exact, so the walk cannot
    // revisit a node.
    let mut links = Vec::new();
    let mut cur = s;
    let mut rem_w = dist_t[s];
    let mut rem_h = hops_t[s];
    while cur != t {
        let mut incident: Vec<(usize, NodeId)> = net
            .adjacency(cur)
            .iter()
            .copied()
            .filter(|&(e, _)| allowed.contains(e))
            .collect();
        incident.sort();
        let mut advanced = false;
        for (e, v) in incident {
            if hops_t[v] != usize::MAX
                && rem_h == hops_t[v] + 1
                && (weights[e] + dist_t[v] - rem_w).abs() <= tol
            {
                links.push(e);
                rem_w -= weights[e];
                rem_h -= 1;
                cur = v;
                advanced = true;
                break;
            }
        }
        if !advanced {
            return Err(Error::input("shortest-path reconstruction stalled"));
        }
    }
    Ok(Some(EdgePath::new(net, links, s, t)?))
}

/// Per-link flow state during the two-augmentation search.
#[derive(Clone, Copy, PartialEq)]
enum Usage {
    Unused,
    /// Used in the direction from the stored node toward the other endpoint.
    From(NodeId),
}

/// Two link-disjoint s-t paths of minimum total weight, via two successive
/// shortest-path augmentations with reduced costs on the directed expansion
/// (used links offer only their zero-cost cancelling arc). None when no
/// disjoint pair exists.
pub fn disjoint_pair(
    net: &Network,
    allowed: &LinkSet,
    weights: &[f64],
    s: NodeId,
    t: NodeId,
) -> Result<Option<(EdgePath, EdgePath)>> {
    net.check_node(s)?;
    net.check_node(t)?;
    check_weights(net, weights)?;
    if s == t {
        return Ok(Some((EdgePath::empty(s), EdgePath::empty(s))));
    }
    let (pot, _) = dijkstra(net, allowed, weights, s);
    if pot[t].is_infinite() {
        return Ok(None);
    }
    let mut usage = vec![Usage::Unused; net.link_count()];
    for round in 0..2 {
        if !augment(net, allowed, weights, &pot, &mut usage, s, t) {
            if round == 0 {
                return Ok(None); // unreachable given the potential check
            }
            return Ok(None);
        }
    }
    // Decompose the used-link flow into two trails, smallest link index first.
    let mut consumed = vec![false; net.link_count()];
    let mut first: Option<EdgePath> = None;
    let mut second: Option<EdgePath> = None;
    for slot in [&mut first, &mut second] {
        let mut links = Vec::new();
        let mut cur = s;
        loop {
            if cur == t && !links.is_empty() {
                break;
            }
            let mut candidates: Vec<usize> = net
                .adjacency(cur)
                .iter()
                .filter(|&&(e, _)| {
                    !consumed[e] && usage[e] == Usage::From(cur)
                })
                .map(|&(e, _)| e)
                .collect();
            candidates.sort();
            let e = *candidates
                .first()
                .ok_or_else(|| Error::input("disjoint-pair flow decomposition failed"))?;
            consumed[e] = true;
            cur = net.link(e).other_endpoint(cur);
            links.push(e);
        }
        *slot = Some(EdgePath::new(net, links, s, t)?);
    }
    Ok(Some((first.unwrap(), second.unwrap())))
}

/// One shortest-path augmentation on the residual expansion. Returns false
/// when t is unreachable.
fn augment(
    net: &Network,
    allowed: &LinkSet,
    weights: &[f64],
    pot: &[f64],
    usage: &mut [Usage],
    s: NodeId,
    t: NodeId,
) -> bool {
    let n = net.node_count();
    let mut dist = vec![f64::INFINITY; n];
    let mut prev: Vec<Option<usize>> = vec![None; n];
    dist[s] = 0.0;
    let mut heap = std::collections::BinaryHeap::new();
    heap.push(std::cmp::Reverse((ordered_float(0.0), s)));
    while let Some(std::cmp::Reverse((d, u))) = heap.pop() {
        let d = from_ordered(d);
        if d > dist[u] {
            continue;
        }
        for &(e, v) in net.adjacency(u) {
            if !allowed.contains(e) || pot[u].is_infinite() || pot[v].is_infinite() {
                continue;
            }
            let residual_ok = match usage[e] {
                Usage::Unused => true,
                // A used link may only be traversed against its direction.
                Usage::From(from) => from == v,
            };
            if !residual_ok {
                continue;
            }
            let rc = match usage[e] {
                Usage::Unused => weights[e] + pot[u] - pot[v],
                Usage::From(_) => -weights[e] + pot[u] - pot[v],
            }
            .max(0.0);
            let nd = d + rc;
            if nd < dist[v] {
                dist[v] = nd;
                prev[v] = Some(e);
                heap.push(std::cmp::Reverse((ordered_float(nd), v)));
            }
        }
    }
    if dist[t].is_infinite() {
        return false;
    }
    let mut cur = t;
    while cur != s {
        let e = prev[cur].unwrap();
        let other = net.link(e).other_endpoint(cur);
        usage[e] = match usage[e] {
            Usage::Unused => Usage::From(other),
            Usage::From(_) => Usage::Unused, // cancellation
        };
        cur = other;
    }
    true
}

/// Minimum-failure primary/backup pair when the two paths are allowed to
/// share links: duplicate every bridge separating s from t, find the
/// min-weight disjoint pair in the augmented graph under failure-probability
/// weights, and map the duplicates back (the pair then shares exactly the
/// bridges). Returned value is the sum of the bridge failure probabilities —
/// the single-connection optimum.
pub fn tunable_pair(
    net: &Network,
    allowed: &LinkSet,
    s: NodeId,
    t: NodeId,
) -> Result<Option<(EdgePath, EdgePath, f64)>> {
    net.check_node(s)?;
    net.check_node(t)?;
    if s == t {
        return Ok(Some((EdgePath::empty(s), EdgePath::empty(s), 0.0)));
    }
    if !connectivity(net, allowed, s, t)? {
        return Ok(None);
    }
    let bridges = bridges_separating(net, allowed, s, t)?;
    let m = net.link_count();
    let mut links: Vec<Link> = net.links().to_vec();
    let mut aug_allowed = LinkSet::empty(m + bridges.len());
    for e in allowed.iter() {
        aug_allowed.insert(e);
    }
    let mut twin_origin = Vec::new();
    for &b in &bridges {
        aug_allowed.insert(links.len());
        twin_origin.push(b);
        links.push(net.link(b).clone());
    }
    let aug = Network::new(net.node_count(), links)?;
    let weights: Vec<f64> = aug
        .links()
        .iter()
        .map(|l| l.failure_probability)
        .collect();
    let Some((p, b)) = disjoint_pair(&aug, &aug_allowed, &weights, s, t)? else {
        return Ok(None); // unreachable: duplication makes the component 2-link-connected
    };
    let map_back = |path: EdgePath| -> Result<EdgePath> {
        let links: Vec<usize> = path
            .links
            .into_iter()
            .map(|e| if e < m { e } else { twin_origin[e - m] })
            .collect();
        EdgePath::new(net, links, s, t)
    };
    let failure: f64 = bridges
        .iter()
        .map(|&e| net.link(e).failure_probability)
        .sum();
    Ok(Some((map_back(p)?, map_back(b)?, failure)))
}

/// Exact backtracking search for a system of mutually disjoint paths, one per
/// terminal pair. Link-disjoint by default; with `node_disjoint`, paths may
/// share a node only when it is a designated terminal of both. Returns the
/// first system in canonical order (pairs routed in order, links tried
/// ascending), or None.
pub fn k_disjoint_paths(
    net: &Network,
    allowed: &LinkSet,
    pairs: &[(NodeId, NodeId)],
    node_disjoint: bool,
) -> Result<Option<Vec<EdgePath>>> {
    if pairs.len() > MAX_TERMINAL_PAIRS {
        return Err(Error::resource(format!(
            "{} terminal pairs above limit {MAX_TERMINAL_PAIRS}",
            pairs.len()
        )));
    }
    if allowed.len() > MAX_DISJOINT_LINKS {
        return Err(Error::resource(format!(
            "{} links above disjoint-search limit {MAX_DISJOINT_LINKS}",
            allowed.len()
        )));
    }
    for &(a, b) in pairs {
        net.check_node(a)?;
        net.check_node(b)?;
    }
    let mut state = SearchState {
        net,
        allowed,
        pairs,
        node_disjoint,
        used_links: LinkSet::empty(net.link_count()),
        node_owner: vec![Vec::new(); net.node_count()],
        done: Vec::new(),
    };
    Ok(state.route(0))
}

struct SearchState<'a> {
    net: &'a Network,
    allowed: &'a LinkSet,
    pairs: &'a [(NodeId, NodeId)],
    node_disjoint: bool,
    used_links: LinkSet,
    /// Pair indices whose path touches each node (node-disjoint mode only).
    node_owner: Vec<Vec<usize>>,
    done: Vec<EdgePath>,
}

impl SearchState<'_> {
    fn route(&mut self, idx: usize) -> Option<Vec<EdgePath>> {
        if idx == self.pairs.len() {
            return Some(self.done.clone());
        }
        let (s, t) = self.pairs[idx];
        if s == t {
            if !self.claim_node(idx, s) {
                return None;
            }
            self.done.push(EdgePath::empty(s));
            let hit = self.residual_ok(idx + 1).then(|| self.route(idx + 1)).flatten();
            if hit.is_some() {
                return hit;
            }
            self.done.pop();
            self.release_node(idx, s);
            return None;
        }
        if !self.claim_node(idx, s) {
            return None;
        }
        let hit = self.extend(idx, s, t, &mut Vec::new(), &mut vec![false; self.net.node_count()]);
        if hit.is_none() {
            self.release_node(idx, s);
        }
        hit
    }

    /// DFS over node-simple extensions of the current partial path for pair
    /// `idx`, currently at `cur`.
    fn extend(
        &mut self,
        idx: usize,
        cur: NodeId,
        t: NodeId,
        partial: &mut Vec<usize>,
        on_path: &mut Vec<bool>,
    ) -> Option<Vec<EdgePath>> {
        on_path[cur] = true;
        if cur == t && !partial.is_empty() {
            let (s, _) = self.pairs[idx];
            let path = EdgePath::new(self.net, partial.clone(), s, t).unwrap();
            self.done.push(path);
            if self.residual_ok(idx + 1) {
                if let Some(hit) = self.route(idx + 1) {
                    return Some(hit);
                }
            }
            self.done.pop();
            // fall through: a longer path for this pair may still unblock
            // the rest
        }
        let mut incident: Vec<(usize, NodeId)> = self
            .net
            .adjacency(cur)
            .iter()
            .copied()
            .filter(|&(e, v)| {
                self.allowed.contains(e) && !self.used_links.contains(e) && !on_path[v]
            })
            .collect();
        incident.sort();
        for (e, v) in incident {
            if !self.claim_node(idx, v) {
                continue;
            }
            self.used_links.insert(e);
            partial.push(e);
            if let Some(hit) = self.extend(idx, v, t, partial, on_path) {
                return Some(hit);
            }
            partial.pop();
            self.used_links.remove(e);
            self.release_node(idx, v);
            on_path[v] = false;
        }
        on_path[cur] = false;
        None
    }

    /// Records pair `idx` touching node `v`; false when that collides with an
    /// earlier path under the node-disjoint rule.
    fn claim_node(&mut self, idx: usize, v: NodeId) -> bool {
        if !self.node_disjoint {
            return true;
        }
        let is_terminal = |i: usize| self.pairs[i].0 == v || self.pairs[i].1 == v;
        if self.node_owner[v]
            .iter()
            .any(|&j| !(is_terminal(idx) && is_terminal(j)))
        {
            return false;
        }
        self.node_owner[v].push(idx);
        true
    }

    fn release_node(&mut self, idx: usize, v: NodeId) {
        if self.node_disjoint {
            let pos = self.node_owner[v].iter().rposition(|&j| j == idx).unwrap();
            self.node_owner[v].remove(pos);
        }
    }

    /// Necessary-condition prune: every unrouted pair must still be connected
    /// over the unused allowed links.
    fn residual_ok(&self, from: usize) -> bool {
        let residual = self.allowed.difference(&self.used_links);
        self.pairs[from..]
            .iter()
            .all(|&(a, b)| connectivity(self.net, &residual, a, b).unwrap_or(false))
    }
}

/// Link-disjoint paths for two terminal pairs, or None.
pub fn two_path_problem(
    net: &Network,
    allowed: &LinkSet,
    s1: NodeId,
    t1: NodeId,
    s2: NodeId,
    t2: NodeId,
) -> Result<Option<(EdgePath, EdgePath)>> {
    Ok(k_disjoint_paths(net, allowed, &[(s1, t1), (s2, t2)], false)?
        .map(|mut v| {
            let b = v.pop().unwrap();
            let a = v.pop().unwrap();
            (a, b)
        }))
}

/// All node-simple s-t paths over the allowed subgraph, in canonical DFS
/// order (links tried ascending). Aborts past `cap` paths. Brute-force
/// building block.
pub fn enumerate_simple_paths(
    net: &Network,
    allowed: &LinkSet,
    s: NodeId,
    t: NodeId,
    cap: usize,
) -> Result<Vec<EdgePath>> {
    net.check_node(s)?;
    net.check_node(t)?;
    let mut out = Vec::new();
    if s == t {
        out.push(EdgePath::empty(s));
        return Ok(out);
    }
    let mut on_path = vec![false; net.node_count()];
    on_path[s] = true;
    let mut partial = Vec::new();
    dfs_paths(net, allowed, s, s, t, &mut on_path, &mut partial, &mut out, cap)?;
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn dfs_paths(
    net: &Network,
    allowed: &LinkSet,
    start: NodeId,
    cur: NodeId,
    t: NodeId,
    on_path: &mut Vec<bool>,
    partial: &mut Vec<usize>,
    out: &mut Vec<EdgePath>,
    cap: usize,
) -> Result<()> {
    let mut incident: Vec<(usize, NodeId)> = net
        .adjacency(cur)
        .iter()
        .copied()
        .filter(|&(e, v)| allowed.contains(e) && !on_path[v])
        .collect();
    incident.sort();
    for (e, v) in incident {
        partial.push(e);
        if v == t {
            if out.len() >= cap {
                return Err(Error::resource(format!(
                    "simple-path enumeration exceeded cap {cap}"
                )));
            }
            out.push(EdgePath::new(net, partial.clone(), start, t)?);
        } else {
            on_path[v] = true;
            dfs_paths(net, allowed, start, v, t, on_path, partial, out, cap)?;
            on_path[v] = false;
        }
        partial.pop();
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Link;

    fn net_w(n: usize, edges: &[(usize, usize, f64)]) -> Network {
        Network::new(
            n,
            edges
                .iter()
                .map(|&(a, b, p)| Link {
                    a,
                    b,
                    failure_probability: p,
                    has_capacity: true,
                })
                .collect(),
        )
        .unwrap()
    }

    fn weights_of(net: &Network) -> Vec<f64> {
        net.links().iter().map(|l| l.failure_probability).collect()
    }

    #[test]
    fn shortest_path_trap_graph() {
        // s=0 a=1 b=2 t=3; the cheap chain tempts a greedy pair search
        let g = net_w(4, &[(0, 1, 0.1), (1, 2, 0.1), (2, 3, 0.1), (0, 2, 0.4), (1, 3, 0.4)]);
        let w = weights_of(&g);
        let p = shortest_path(&g, &g.full_mask(), &w, 0, 3).unwrap().unwrap();
        assert_eq!(p.links, vec![0, 1, 2]);
    }

    #[test]
    fn shortest_path_tie_breaks() {
        let g = net_w(4, &[(0, 1, 1.0), (1, 3, 1.0), (0, 2, 1.0), (2, 3, 1.0)]);
        let w = weights_of(&g);
        let p = shortest_path(&g, &g.full_mask(), &w, 0, 3).unwrap().unwrap();
        assert_eq!(p.links, vec![0, 1]); // lexicographically smaller of the two
        // fewest-links tie-break beats equal-weight longer path
        let g = net_w(3, &[(0, 1, 0.5), (1, 2, 0.5), (0, 2, 1.0)]);
        let w = weights_of(&g);
        let p = shortest_path(&g, &g.full_mask(), &w, 0, 2).unwrap().unwrap();
        assert_eq!(p.links, vec![2]);
    }

    #[test]
    fn shortest_path_infeasible() {
        let g = net_w(2, &[]);
        assert!(shortest_path(&g, &g.full_mask(), &[], 0, 1).unwrap().is_none());
    }

    #[test]
    fn disjoint_pair_avoids_greedy_trap() {
        let g = net_w(4, &[(0, 1, 0.1), (1, 2, 0.1), (2, 3, 0.1), (0, 2, 0.4), (1, 3, 0.4)]);
        let w = weights_of(&g);
        let (p, b) = disjoint_pair(&g, &g.full_mask(), &w, 0, 3).unwrap().unwrap();
        let total: f64 = p.links.iter().chain(&b.links).map(|&e| w[e]).sum();
        // optimum is {0-1-3, 0-2-3}: the cheap chain must be abandoned
        assert!((total - 1.0).abs() < 1e-9);
        assert!(p.link_set(&g).is_disjoint(&b.link_set(&g)));
    }

    #[test]
    fn disjoint_pair_on_diamond_and_path() {
        let g = net_w(4, &[(0, 1, 1.0), (1, 3, 1.0), (0, 2, 1.0), (2, 3, 1.0)]);
        let w = weights_of(&g);
        let (p, b) = disjoint_pair(&g, &g.full_mask(), &w, 0, 3).unwrap().unwrap();
        assert!(p.link_set(&g).is_disjoint(&b.link_set(&g)));
        let path = net_w(3, &[(0, 1, 0.5), (1, 2, 0.5)]);
        let w = weights_of(&path);
        assert!(disjoint_pair(&path, &path.full_mask(), &w, 0, 2).unwrap().is_none());
    }

    fn brute_best_pair(net: &Network, allowed: &LinkSet, w: &[f64], s: usize, t: usize) -> Option<f64> {
        let paths = enumerate_simple_paths(net, allowed, s, t, 100_000).unwrap();
        let mut best: Option<f64> = None;
        for p in &paths {
            for b in &paths {
                if p.link_set(net).is_disjoint(&b.link_set(net)) {
                    let tot: f64 = p.links.iter().chain(&b.links).map(|&e| w[e]).sum();
                    best = Some(best.map_or(tot, |x: f64| x.min(tot)));
                }
            }
        }
        best
    }

    #[test]
    fn disjoint_pair_matches_brute_on_random_graphs() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for trial in 0..300 {
            let n = rng.gen_range(3..=7);
            let mut edges = Vec::new();
            for a in 0..n {
                for b in a + 1..n {
                    if rng.gen_bool(0.55) {
                        edges.push((a, b, rng.gen_range(0.01..1.0)));
                    }
                }
            }
            if edges.is_empty() {
                continue;
            }
            let g = net_w(n, &edges);
            let w = weights_of(&g);
            let s = 0;
            let t = n - 1;
            let brute = brute_best_pair(&g, &g.full_mask(), &w, s, t);
            let fast = disjoint_pair(&g, &g.full_mask(), &w, s, t).unwrap();
            match (brute, fast) {
                (None, None) => {}
                (Some(bw), Some((p, b))) => {
                    assert!(p.link_set(&g).is_disjoint(&b.link_set(&g)), "trial {trial}");
                    let tot: f64 = p.links.iter().chain(&b.links).map(|&e| w[e]).sum();
                    assert!((tot - bw).abs() < 1e-9, "trial {trial}: {tot} vs {bw}");
                }
                other => panic!("trial {trial}: feasibility mismatch {other:?}"),
            }
        }
    }

    #[test]
    fn tunable_pair_on_bridged_graphs() {
        // pure path: both paths identical, failure = 1.0
        let path = net_w(3, &[(0, 1, 0.5), (1, 2, 0.5)]);
        let (p, b, f) = tunable_pair(&path, &path.full_mask(), 0, 2).unwrap().unwrap();
        assert_eq!(p.links, b.links);
        assert!((f - 1.0).abs() < 1e-9);
        // diamond: disjoint, failure 0
        let d = net_w(4, &[(0, 1, 0.25), (1, 3, 0.25), (0, 2, 0.25), (2, 3, 0.25)]);
        let (p, b, f) = tunable_pair(&d, &d.full_mask(), 0, 3).unwrap().unwrap();
        assert!(p.link_set(&d).is_disjoint(&b.link_set(&d)));
        assert!(f.abs() < 1e-9);
        // two diamonds over a bridge of probability 0.1
        let edges = [
            (0, 1, 0.1), (1, 3, 0.1), (0, 2, 0.1), (2, 3, 0.15),
            (3, 4, 0.1), // bridge
            (4, 5, 0.1), (5, 7, 0.1), (4, 6, 0.15), (6, 7, 0.1),
        ];
        let g = net_w(8, &edges);
        let (p, b, f) = tunable_pair(&g, &g.full_mask(), 0, 7).unwrap().unwrap();
        assert!((f - 0.1).abs() < 1e-9);
        let shared = p.link_set(&g).intersection(&b.link_set(&g));
        assert_eq!(shared.to_vec(), vec![4]);
    }

    #[test]
    fn tunable_pair_matches_brute_minimum() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..150 {
            let n = rng.gen_range(3..=6);
            let mut edges = Vec::new();
            for a in 0..n {
                for b in a + 1..n {
                    if rng.gen_bool(0.5) {
                        edges.push((a, b, rng.gen_range(0.01..1.0)));
                    }
                }
            }
            if edges.is_empty() {
                continue;
            }
            let g = net_w(n, &edges);
            if !connectivity(&g, &g.full_mask(), 0, n - 1).unwrap() {
                assert!(tunable_pair(&g, &g.full_mask(), 0, n - 1).unwrap().is_none());
                continue;
            }
            let (_, _, f) = tunable_pair(&g, &g.full_mask(), 0, n - 1).unwrap().unwrap();
            // brute: min over all path pairs of the shared-link probability sum
            let paths = enumerate_simple_paths(&g, &g.full_mask(), 0, n - 1, 100_000).unwrap();
            let mut best = f64::INFINITY;
            for p in &paths {
                for b in &paths {
                    let shared = p.link_set(&g).intersection(&b.link_set(&g));
                    best = best.min(g.failure_of_set(&shared));
                }
            }
            assert!((f - best).abs() < 1e-9);
        }
    }

    #[test]
    fn k_disjoint_examples() {
        // diamond, two 0-3 pairs
        let d = net_w(4, &[(0, 1, 0.25), (1, 3, 0.25), (0, 2, 0.25), (2, 3, 0.25)]);
        let sol = k_disjoint_paths(&d, &d.full_mask(), &[(0, 3), (0, 3)], false).unwrap().unwrap();
        assert!(sol[0].link_set(&d).is_disjoint(&sol[1].link_set(&d)));
        // K4 crossing pairs feasible via direct links
        let k4 = net_w(4, &[(0, 1, 0.1), (0, 2, 0.1), (0, 3, 0.2), (1, 2, 0.2), (1, 3, 0.2), (2, 3, 0.2)]);
        assert!(k_disjoint_paths(&k4, &k4.full_mask(), &[(0, 2), (1, 3)], false).unwrap().is_some());
        // 4-cycle crossing pairs infeasible
        let c4 = net_w(4, &[(0, 1, 0.25), (1, 2, 0.25), (2, 3, 0.25), (3, 0, 0.25)]);
        assert!(k_disjoint_paths(&c4, &c4.full_mask(), &[(0, 2), (1, 3)], false).unwrap().is_none());
        // same-terminal pair yields an empty path
        let sol = k_disjoint_paths(&c4, &c4.full_mask(), &[(0, 0), (1, 3)], false).unwrap().unwrap();
        assert!(sol[0].links.is_empty());
    }

    #[test]
    fn node_disjoint_rule() {
        // two 0-3 pairs on the diamond share only their terminals
        let d = net_w(4, &[(0, 1, 0.25), (1, 3, 0.25), (0, 2, 0.25), (2, 3, 0.25)]);
        assert!(k_disjoint_paths(&d, &d.full_mask(), &[(0, 3), (0, 3)], true).unwrap().is_some());
        // paths 0-1-2 and 3-1-4 would need interior node 1 twice: infeasible
        let star = net_w(5, &[(0, 1, 0.2), (1, 2, 0.2), (3, 1, 0.3), (1, 4, 0.3)]);
        assert!(k_disjoint_paths(&star, &star.full_mask(), &[(0, 2), (3, 4)], true).unwrap().is_none());
        assert!(k_disjoint_paths(&star, &star.full_mask(), &[(0, 2), (3, 4)], false).unwrap().is_some());
    }

    #[test]
    fn k_disjoint_matches_brute_feasibility() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for trial in 0..200 {
            let n = rng.gen_range(4..=7);
            let mut edges = Vec::new();
            for a in 0..n {
                for b in a + 1..n {
                    if rng.gen_bool(0.5) {
                        edges.push((a, b, 0.1));
                    }
                }
            }
            if edges.len() < 3 {
                continue;
            }
            let g = net_w(n, &edges);
            let pairs = [(0, n - 1), (1, n - 2), (0, n - 2)];
            let k = rng.gen_range(2..=3);
            let pairs = &pairs[..k];
            let fast = k_disjoint_paths(&g, &g.full_mask(), pairs, false).unwrap();
            let slow = brute_disjoint_system(&g, pairs);
            assert_eq!(fast.is_some(), slow, "trial {trial}");
            if let Some(sol) = fast {
                for i in 0..sol.len() {
                    for j in i + 1..sol.len() {
                        assert!(sol[i].link_set(&g).is_disjoint(&sol[j].link_set(&g)));
                    }
                }
            }
        }
    }

    fn brute_disjoint_system(net: &Network, pairs: &[(usize, usize)]) -> bool {
        fn go(net: &Network, pairs: &[(usize, usize)], used: &LinkSet) -> bool {
            let Some(&(s, t)) = pairs.first() else { return true };
            let free = net.full_mask().difference(used);
            let paths = enumerate_simple_paths(net, &free, s, t, 100_000).unwrap();
            paths
                .iter()
                .any(|p| go(net, &pairs[1..], &used.union(&p.link_set(net))))
        }
        go(net, pairs, &LinkSet::empty(net.link_count()))
    }

    #[test]
    fn guards() {
        let d = net_w(4, &[(0, 1, 0.25), (1, 3, 0.25), (0, 2, 0.25), (2, 3, 0.25)]);
        let many: Vec<(usize, usize)> = vec![(0, 3); 8];
        assert!(k_disjoint_paths(&d, &d.full_mask(), &many, false).is_err());
        let w = vec![-0.1; 4];
        assert!(shortest_path(&d, &d.full_mask(), &w, 0, 3).is_err());
    }
}
