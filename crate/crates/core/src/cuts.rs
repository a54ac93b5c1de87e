//! Small-cut enumeration and the derived per-link cut weights that steer the
//! cut-aware routing heuristics.

use crate::error::{Error, Result};
use crate::graph::{component_ids, LinkSet, Network};

/// Don't enumerate cuts above this size by default; the search is exponential
/// in the cut level.
pub const DEFAULT_MAX_CUT_LEVEL: usize = 6;
/// Node-count guard for the branch-and-bound; beyond this, bipartition search
/// is too expensive.
pub const DEFAULT_MAX_CUT_NODES: usize = 24;

/// All minimal link cuts of size <= `level` in the connected subgraph induced
/// by `allowed`. Each cut is returned as a sorted list of link indices; the
/// overall list is sorted for determinism.
///
/// A minimal cut is a set of links whose removal disconnects the graph while
/// no proper subset does; equivalently, the links spanning a bipartition whose
/// two sides each induce a connected subgraph.
pub fn enumerate_small_cuts(net: &Network, allowed: &LinkSet, level: usize) -> Result<Vec<Vec<usize>>> {
    if level > DEFAULT_MAX_CUT_LEVEL {
        return Err(Error::resource(format!(
            "cut level {level} above supported maximum {DEFAULT_MAX_CUT_LEVEL}"
        )));
    }
    // Work inside one connected component at a time; a minimal cut never
    // spans components.
    let comp = component_ids(net, allowed);
    let ncomp = comp.iter().copied().max().map(|m| m + 1).unwrap_or(0);
    let mut cuts = Vec::new();
    for c in 0..ncomp {
        let nodes: Vec<usize> = (0..net.node_count()).filter(|&v| comp[v] == c).collect();
        if nodes.len() < 2 {
            continue;
        }
        if nodes.len() > DEFAULT_MAX_CUT_NODES {
            return Err(Error::resource(format!(
                "component with {} nodes exceeds cut enumeration limit {DEFAULT_MAX_CUT_NODES}",
                nodes.len()
            )));
        }
        component_cuts(net, allowed, &nodes, level, &mut cuts);
    }
    cuts.sort();
    cuts.dedup();
    Ok(cuts)
}

/// Branch and bound over side assignments: nodes[0] is pinned to side A and
/// the remaining nodes are assigned A/B in order, pruning whenever the links
/// already crossing the partial bipartition exceed `level`.
fn component_cuts(
    net: &Network,
    allowed: &LinkSet,
    nodes: &[usize],
    level: usize,
    out: &mut Vec<Vec<usize>>,
) {
    let pos: std::collections::HashMap<usize, usize> =
        nodes.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    // side[i]: 0 unassigned yet, 1 = A, 2 = B
    let mut side = vec![0u8; nodes.len()];
    side[0] = 1;
    recurse(net, allowed, nodes, &pos, &mut side, 1, level, out);
}

#[allow(clippy::too_many_arguments)]
fn recurse(
    net: &Network,
    allowed: &LinkSet,
    nodes: &[usize],
    pos: &std::collections::HashMap<usize, usize>,
    side: &mut Vec<u8>,
    next: usize,
    level: usize,
    out: &mut Vec<Vec<usize>>,
) {
    let crossing = crossing_count(net, allowed, nodes, pos, side);
    if crossing > level {
        return;
    }
    if next == nodes.len() {
        if side.iter().all(|&s| s != 2) {
            return; // side B empty: not a bipartition
        }
        if sides_connected(net, allowed, nodes, pos, side) {
            let mut cut = Vec::new();
            for e in allowed.iter() {
                let l = net.link(e);
                if let (Some(&ia), Some(&ib)) = (pos.get(&l.a), pos.get(&l.b)) {
                    if side[ia] != side[ib] {
                        cut.push(e);
                    }
                }
            }
            if !cut.is_empty() {
                out.push(cut);
            }
        }
        return;
    }
    for s in [1u8, 2u8] {
        side[next] = s;
        recurse(net, allowed, nodes, pos, side, next + 1, level, out);
    }
    side[next] = 0;
}

fn crossing_count(
    net: &Network,
    allowed: &LinkSet,
    _nodes: &[usize],
    pos: &std::collections::HashMap<usize, usize>,
    side: &[u8],
) -> usize {
    allowed
        .iter()
        .filter(|&e| {
            let l = net.link(e);
            match (pos.get(&l.a), pos.get(&l.b)) {
                (Some(&ia), Some(&ib)) => side[ia] != 0 && side[ib] != 0 && side[ia] != side[ib],
                _ => false,
            }
        })
        .count()
}

fn sides_connected(
    net: &Network,
    allowed: &LinkSet,
    nodes: &[usize],
    pos: &std::collections::HashMap<usize, usize>,
    side: &[u8],
) -> bool {
    for want in [1u8, 2u8] {
        let members: Vec<usize> = nodes
            .iter()
            .enumerate()
            .filter(|&(i, _)| side[i] == want)
            .map(|(_, &v)| v)
            .collect();
        if members.is_empty() {
            return false;
        }
        let mut seen = std::collections::HashSet::new();
        seen.insert(members[0]);
        let mut stack = vec![members[0]];
        while let Some(u) = stack.pop() {
            for &(e, v) in net.adjacency(u) {
                if allowed.contains(e)
                    && pos.contains_key(&v)
                    && side[pos[&v]] == want
                    && seen.insert(v)
                {
                    stack.push(v);
                }
            }
        }
        if members.iter().any(|v| !seen.contains(v)) {
            return false;
        }
    }
    true
}

/// Per-link weights summing, for each link, n_i / i over cut sizes i = 1..=level,
/// where n_i is the number of minimal size-i cuts containing the link. Links in
/// many small cuts get large weights, so shortest paths under these weights
/// avoid fragile regions.
pub fn small_cut_weights(net: &Network, allowed: &LinkSet, level: usize) -> Result<Vec<f64>> {
    let cuts = enumerate_small_cuts(net, allowed, level)?;
    let mut weights = vec![0.0; net.link_count()];
    for cut in &cuts {
        let k = cut.len() as f64;
        for &e in cut {
            weights[e] += 1.0 / k;
        }
    }
    Ok(weights)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Link;

    fn net(n: usize, edges: &[(usize, usize)]) -> Network {
        Network::new(
            n,
            edges
                .iter()
                .map(|&(a, b)| Link {
                    a,
                    b,
                    failure_probability: 1.0 / edges.len() as f64,
                    has_capacity: true,
                })
                .collect(),
        )
        .unwrap()
    }

    /// Reference enumeration: every bipartition's crossing set, filtered to
    /// inclusion-minimal sets.
    fn brute_cuts(net: &Network, level: usize) -> Vec<Vec<usize>> {
        let n = net.node_count();
        let mut cand: Vec<Vec<usize>> = Vec::new();
        for mask in 1u32..(1 << (n - 1)) {
            let side = |v: usize| v != 0 && mask & (1 << (v - 1)) != 0;
            let cut: Vec<usize> = (0..net.link_count())
                .filter(|&e| side(net.link(e).a) != side(net.link(e).b))
                .collect();
            if !cut.is_empty() && cut.len() <= level {
                // must actually disconnect
                let mut m = net.full_mask();
                for &e in &cut {
                    m.remove(e);
                }
                let comp = component_ids(net, &m);
                let pair = (0..net.link_count())
                    .filter(|&e| !m.contains(e))
                    .all(|e| comp[net.link(e).a] != comp[net.link(e).b]);
                if pair {
                    cand.push(cut);
                }
            }
        }
        cand.sort();
        cand.dedup();
        let minimal: Vec<Vec<usize>> = cand
            .iter()
            .filter(|c| {
                !cand
                    .iter()
                    .any(|o| o.len() < c.len() && o.iter().all(|e| c.contains(e)))
            })
            .cloned()
            .collect();
        minimal
    }

    #[test]
    fn cycle_cuts_are_link_pairs() {
        let c4 = net(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let cuts = enumerate_small_cuts(&c4, &c4.full_mask(), 2).unwrap();
        assert_eq!(cuts.len(), 6); // C(4,2): every link pair disconnects a cycle
        for c in &cuts {
            assert_eq!(c.len(), 2);
        }
    }

    #[test]
    fn bridge_is_a_singleton_cut() {
        let g = net(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]);
        let cuts = enumerate_small_cuts(&g, &g.full_mask(), 1).unwrap();
        assert!(cuts.is_empty());
        let with_bridge = net(4, &[(0, 1), (1, 2), (2, 0), (2, 3)]);
        let cuts = enumerate_small_cuts(&with_bridge, &with_bridge.full_mask(), 1).unwrap();
        assert_eq!(cuts, vec![vec![3]]);
    }

    #[test]
    fn matches_reference_enumeration() {
        let samples = [
            net(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]),
            net(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (1, 3)]),
            net(6, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3)]),
            net(4, &[(0, 1), (0, 1), (1, 2), (2, 3), (3, 1)]), // parallel links
        ];
        for (i, g) in samples.iter().enumerate() {
            for level in 1..=4 {
                let fast = enumerate_small_cuts(g, &g.full_mask(), level).unwrap();
                let slow = brute_cuts(g, level);
                assert_eq!(fast, slow, "sample {i} level {level}");
            }
        }
    }

    #[test]
    fn weights_on_cycle() {
        let c3 = net(3, &[(0, 1), (1, 2), (2, 0)]);
        let w = small_cut_weights(&c3, &c3.full_mask(), 2).unwrap();
        // each link sits in 2 of the 3 link-pair cuts
        for x in w {
            assert!((x - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn resource_guards() {
        let c3 = net(3, &[(0, 1), (1, 2), (2, 0)]);
        assert!(enumerate_small_cuts(&c3, &c3.full_mask(), 7).is_err());
        let big = Network::new(
            30,
            (0..30)
                .map(|i| Link {
                    a: i,
                    b: (i + 1) % 30,
                    failure_probability: 1.0 / 30.0,
                    has_capacity: true,
                })
                .collect(),
        )
        .unwrap();
        assert!(enumerate_small_cuts(&big, &big.full_mask(), 2).is_err());
    }
}
