//! Online admission of a fully reliable connection over a partitioned link
//! set: free links (usable by anyone), backup links (reusable by backup paths
//! only), and primary links (taken). The new primary must use only free
//! links; the new backup may additionally cross existing backup links.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::failure::{PathPair, Scenario};
use crate::graph::{
    component_ids, connectivity, decompose_d1, EdgePath, LinkSet, Network, NodeId,
};
use crate::paths::{disjoint_pair, k_disjoint_paths, shortest_path};

/// Guards for the exact admission search.
pub const MAX_K: usize = 5;
pub const MAX_BACKUP_SETS: usize = 6;
pub const OKCP_BRUTE_MAX_NODES: usize = 12;
const SEARCH_STEP_LIMIT: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkPartition {
    pub e1_free: LinkSet,
    pub e2_backup: LinkSet,
    pub e3_primary: LinkSet,
}

impl LinkPartition {
    pub fn new(net: &Network, e1: LinkSet, e2: LinkSet, e3: LinkSet) -> Result<Self> {
        let m = net.link_count();
        if e1.capacity() != m || e2.capacity() != m || e3.capacity() != m {
            return Err(Error::input("partition capacity mismatch"));
        }
        if !e1.is_disjoint(&e2) || !e1.is_disjoint(&e3) || !e2.is_disjoint(&e3) {
            return Err(Error::input("partition sets overlap"));
        }
        if e1.union(&e2).union(&e3).len() != m {
            return Err(Error::input("partition does not cover the link set"));
        }
        Ok(LinkPartition {
            e1_free: e1,
            e2_backup: e2,
            e3_primary: e3,
        })
    }

    pub fn all_free(net: &Network) -> Self {
        LinkPartition {
            e1_free: net.full_mask(),
            e2_backup: LinkSet::empty(net.link_count()),
            e3_primary: LinkSet::empty(net.link_count()),
        }
    }

    /// Links a backup path may use.
    pub fn backup_mask(&self) -> LinkSet {
        self.e1_free.union(&self.e2_backup)
    }

    /// Parses `free|backup|primary <link-index>` lines (`#` comments, blank
    /// lines ignored). Unlisted links default to free.
    pub fn parse(net: &Network, text: &str) -> Result<Self> {
        let m = net.link_count();
        let mut e1 = net.full_mask();
        let mut e2 = LinkSet::empty(m);
        let mut e3 = LinkSet::empty(m);
        for (lineno, raw) in text.lines().enumerate() {
            let line = match raw.find('#') {
                Some(p) => &raw[..p],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let mut parts = line.split_whitespace();
            let kw = parts.next().unwrap();
            let idx: usize = parts
                .next()
                .ok_or_else(|| Error::input(format!("line {}: missing link index", lineno + 1)))?
                .parse()
                .map_err(|_| Error::input(format!("line {}: bad link index", lineno + 1)))?;
            if idx >= m {
                return Err(Error::input(format!(
                    "line {}: link index {idx} out of range",
                    lineno + 1
                )));
            }
            e1.remove(idx);
            e2.remove(idx);
            e3.remove(idx);
            match kw {
                "free" => e1.insert(idx),
                "backup" => e2.insert(idx),
                "primary" => e3.insert(idx),
                other => {
                    return Err(Error::input(format!(
                        "line {}: unknown class {other}",
                        lineno + 1
                    )))
                }
            }
        }
        LinkPartition::new(net, e1, e2, e3)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for e in self.e1_free.iter() {
            out.push_str(&format!("free {e}\n"));
        }
        for e in self.e2_backup.iter() {
            out.push_str(&format!("backup {e}\n"));
        }
        for e in self.e3_primary.iter() {
            out.push_str(&format!("primary {e}\n"));
        }
        out
    }
}

/// Quick necessary test: the new pair needs two link-disjoint s-t paths in
/// free ∪ backup links, which exist exactly when no single link there
/// separates s from t. False = proven infeasible; true is NOT sufficient.
pub fn reduce_r1(net: &Network, part: &LinkPartition, s: NodeId, t: NodeId) -> Result<bool> {
    let usable = part.backup_mask();
    if !connectivity(net, &usable, s, t)? {
        return Ok(false);
    }
    let bridges = crate::graph::bridges_separating(net, &usable, s, t)?;
    Ok(bridges.is_empty())
}

/// Connected components of the subgraph induced by `mask`, as link-index
/// groups ordered by smallest member.
pub fn link_components(net: &Network, mask: &LinkSet) -> Vec<Vec<usize>> {
    let comp = component_ids(net, mask);
    let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
    for e in mask.iter() {
        groups.entry(comp[net.link(e).a]).or_default().push(e);
    }
    let mut out: Vec<Vec<usize>> = groups.into_values().collect();
    for g in &mut out {
        g.sort();
    }
    out.sort();
    out
}

fn node_set(net: &Network, links: &[usize]) -> Vec<NodeId> {
    let mut nodes: Vec<NodeId> = links
        .iter()
        .flat_map(|&e| [net.link(e).a, net.link(e).b])
        .collect();
    nodes.sort();
    nodes.dedup();
    nodes
}

/// Simplifies the partition without changing admissibility of an (s, t) pair:
/// free links the primary can never reach are downgraded to backup links
/// (when a backup could still cross them) or to taken links, and backup
/// components no primary-side path can enter are retired.
pub fn reduce_r2(net: &Network, part: &LinkPartition, s: NodeId, t: NodeId) -> Result<LinkPartition> {
    net.check_node(s)?;
    net.check_node(t)?;
    let mut e1 = part.e1_free.clone();
    let mut e2 = part.e2_backup.clone();
    let mut e3 = part.e3_primary.clone();
    loop {
        let mut changed = false;
        // free links outside s's free component can't carry the primary
        let comp = component_ids(net, &e1);
        for e in e1.to_vec() {
            if comp[net.link(e).a] != comp[s] {
                e1.remove(e);
                e2.insert(e);
                changed = true;
            }
        }
        // a free bridge that does not separate s from t dangles: a simple
        // primary path entering its far side could never come back
        if connectivity(net, &e1, s, t)? {
            'bridge: for e in e1.to_vec() {
                let mut reduced = e1.clone();
                reduced.remove(e);
                let l = net.link(e);
                if connectivity(net, &reduced, l.a, l.b)? {
                    continue; // not a bridge
                }
                if !connectivity(net, &reduced, s, t)? {
                    continue; // separating bridge: the primary must use it
                }
                let far_comp = component_ids(net, &reduced);
                let far_root = if far_comp[l.a] == far_comp[s] { l.b } else { l.a };
                if far_comp[far_root] == far_comp[s] || far_comp[far_root] == far_comp[t] {
                    continue; // whole component is on the s-t side
                }
                let mut moved = vec![e];
                for f in reduced.to_vec() {
                    if far_comp[net.link(f).a] == far_comp[far_root] {
                        moved.push(f);
                    }
                }
                // the far side joins the backup space if a backup could reach
                // it, else it is effectively taken
                let e2_nodes: std::collections::HashSet<NodeId> =
                    e2.iter().flat_map(|x| [net.link(x).a, net.link(x).b]).collect();
                let near = net.link(e).other_endpoint(far_root);
                let touches = moved
                    .iter()
                    .flat_map(|&f| [net.link(f).a, net.link(f).b])
                    .any(|v| e2_nodes.contains(&v) || v == near);
                for f in moved {
                    e1.remove(f);
                    if touches {
                        e2.insert(f);
                    } else {
                        e3.insert(f);
                    }
                }
                changed = true;
                break 'bridge;
            }
        }
        // backup components sharing no node with the free graph or the
        // terminals are unreachable
        let mut free_nodes: std::collections::HashSet<NodeId> =
            e1.iter().flat_map(|e| [net.link(e).a, net.link(e).b]).collect();
        free_nodes.insert(s);
        free_nodes.insert(t);
        for group in link_components(net, &e2) {
            if !node_set(net, &group).iter().any(|v| free_nodes.contains(v)) {
                for e in group {
                    e2.remove(e);
                    e3.insert(e);
                }
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    LinkPartition::new(net, e1, e2, e3)
}

/// One way a second path can cross a free component next to the primary: the
/// crossing jumps between attachment nodes (the `leaps`), leaving the
/// component between each jump.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transition {
    pub component: usize,
    /// (primary entry, primary exit, crossing entry, crossing exit).
    pub terminals: (NodeId, NodeId, NodeId, NodeId),
    /// Attachment-node pairs jumped over, in traversal order.
    pub leaps: Vec<(NodeId, NodeId)>,
}

/// All feasible crossings of one free component with at most `max_leaps`
/// jumps over the attachment set: a crossing with leaps
/// (u_1,v_1)..(u_k,v_k) is feasible when link-disjoint paths
/// primary-entry→primary-exit, s2→u_1, v_1→u_2, .., v_k→t2 all fit in the
/// component simultaneously.
pub fn enumerate_transitions(
    net: &Network,
    component_mask: &LinkSet,
    component: usize,
    terminals: (NodeId, NodeId, NodeId, NodeId),
    attachments: &[NodeId],
    max_leaps: usize,
) -> Result<Vec<Transition>> {
    let (s1, t1, s2, t2) = terminals;
    let mut out = Vec::new();
    let mut leap_sets: Vec<Vec<(NodeId, NodeId)>> = vec![Vec::new()];
    for _ in 0..max_leaps {
        let mut next = Vec::new();
        for prefix in &leap_sets {
            if prefix.len() < max_leaps {
                for &u in attachments {
                    for &v in attachments {
                        if u != v {
                            let mut ext = prefix.clone();
                            ext.push((u, v));
                            next.push(ext);
                        }
                    }
                }
            }
        }
        leap_sets.extend(next.clone());
        if next.is_empty() {
            break;
        }
        leap_sets.dedup();
    }
    leap_sets.sort();
    leap_sets.dedup();
    for leaps in leap_sets {
        let mut pairs = vec![(s1, t1)];
        let mut cur = s2;
        for &(u, v) in &leaps {
            pairs.push((cur, u));
            cur = v;
        }
        pairs.push((cur, t2));
        if pairs.len() > crate::paths::MAX_TERMINAL_PAIRS {
            continue;
        }
        if k_disjoint_paths(net, component_mask, &pairs, false)?.is_some() {
            out.push(Transition {
                component,
                terminals,
                leaps,
            });
        }
    }
    Ok(out)
}

/// Exhaustive admission search oracle. Returns the first feasible
/// (primary ⊆ free, backup ⊆ free ∪ backup, link-disjoint) pair in canonical
/// order.
pub fn brute_okcp(
    net: &Network,
    part: &LinkPartition,
    s: NodeId,
    t: NodeId,
) -> Result<Option<PathPair>> {
    if net.node_count() > OKCP_BRUTE_MAX_NODES {
        return Err(Error::resource(format!(
            "admission oracle limited to {OKCP_BRUTE_MAX_NODES} nodes"
        )));
    }
    let primaries = crate::paths::enumerate_simple_paths(net, &part.e1_free, s, t, 200_000)?;
    let usable = part.backup_mask();
    let zeros = vec![0.0; net.link_count()];
    for p in primaries {
        let residual = usable.difference(&p.link_set(net));
        if let Some(b) = shortest_path(net, &residual, &zeros, s, t)? {
            return Ok(Some(PathPair::new(p, b)?));
        }
    }
    Ok(None)
}

/// Exact admission solver. After the quick reductions, either two free
/// disjoint paths exist outright, or the backup must detour around the free
/// bridges through existing backup components; the search enumerates which
/// backup components the detour crosses, where it attaches, and how its free
/// interludes coexist with the primary inside each chain component.
pub fn solve_okcp(
    net: &Network,
    part: &LinkPartition,
    s: NodeId,
    t: NodeId,
    k: usize,
) -> Result<Option<PathPair>> {
    net.check_node(s)?;
    net.check_node(t)?;
    if s == t {
        return Err(Error::input("admission terminals coincide"));
    }
    if k > MAX_K {
        return Err(Error::resource(format!("connection count above {MAX_K}")));
    }
    if !reduce_r1(net, part, s, t)? {
        return Ok(None);
    }
    let part = reduce_r2(net, part, s, t)?;
    let e1 = &part.e1_free;
    if !connectivity(net, e1, s, t)? {
        return Ok(None);
    }
    let zeros = vec![0.0; net.link_count()];
    if let Some((p, b)) = disjoint_pair(net, e1, &zeros, s, t)? {
        return Ok(Some(PathPair::new(p, b)?));
    }
    let d1 = decompose_d1(net, e1, s, t)?;
    let r = d1.bridges.len();
    debug_assert!(r >= 1);
    // chain component of each node (None for nodes off the chain)
    let mut chain_of: Vec<Option<usize>> = vec![None; net.node_count()];
    for (l, comp) in d1.components.iter().enumerate() {
        for &v in comp {
            chain_of[v] = Some(l);
        }
    }
    // free links interior to each chain component
    let mut bridge_mask = LinkSet::empty(net.link_count());
    for &e in &d1.bridges {
        bridge_mask.insert(e);
    }
    let interior = e1.difference(&bridge_mask);
    let mut comp_mask: Vec<LinkSet> = vec![LinkSet::empty(net.link_count()); r + 1];
    for e in interior.iter() {
        if let Some(l) = chain_of[net.link(e).a] {
            comp_mask[l].insert(e);
        }
    }
    // primary entry/exit per chain component
    let mut prim_pairs: Vec<(NodeId, NodeId)> = Vec::with_capacity(r + 1);
    let mut entry = s;
    for &(v_l, u_next) in &d1.endpoints {
        prim_pairs.push((entry, v_l));
        entry = u_next;
    }
    prim_pairs.push((entry, t));
    // backup components with their node sets
    let sets = link_components(net, &part.e2_backup);
    if sets.len() > MAX_BACKUP_SETS {
        return Err(Error::resource(format!(
            "more than {MAX_BACKUP_SETS} backup components"
        )));
    }
    let set_masks: Vec<LinkSet> = sets
        .iter()
        .map(|g| LinkSet::from_links(net.link_count(), g))
        .collect();
    let set_nodes: Vec<Vec<NodeId>> = sets.iter().map(|g| node_set(net, g)).collect();

    let mut search = AdmissionSearch {
        net,
        chain_of: &chain_of,
        comp_mask: &comp_mask,
        prim_pairs: &prim_pairs,
        bridges: &d1.bridges,
        set_masks: &set_masks,
        set_nodes: &set_nodes,
        zeros: &zeros,
        memo: HashMap::new(),
        steps: 0,
        last_chain: r,
        t,
    };
    // prefer solutions crossing each chain component as few extra times as
    // possible, then crossing fewer backup components
    for cap in 0..=sets.len() + 1 {
        for j in 1..=sets.len() {
            if let Some(pair) = search.run(s, j, cap)? {
                return Ok(Some(pair));
            }
        }
    }
    Ok(None)
}

/// A free interlude of the backup: a path between two attachment nodes inside
/// one chain component, routed jointly with the primary there.
#[derive(Clone)]
struct Gap {
    comp: usize,
    from: NodeId,
    to: NodeId,
}

struct AdmissionSearch<'a> {
    net: &'a Network,
    chain_of: &'a [Option<usize>],
    comp_mask: &'a [LinkSet],
    prim_pairs: &'a [(NodeId, NodeId)],
    bridges: &'a [usize],
    set_masks: &'a [LinkSet],
    set_nodes: &'a [Vec<NodeId>],
    zeros: &'a [f64],
    /// component -> gap terminal list -> disjoint system (primary first)
    memo: HashMap<(usize, Vec<(NodeId, NodeId)>), Option<Vec<EdgePath>>>,
    steps: usize,
    last_chain: usize,
    t: NodeId,
}

impl AdmissionSearch<'_> {
    fn run(&mut self, s: NodeId, max_sets: usize, gap_cap: usize) -> Result<Option<PathPair>> {
        let mut used = vec![false; self.set_masks.len()];
        let mut crossings = Vec::new();
        let mut gaps = Vec::new();
        self.descend(s, s, true, max_sets, gap_cap, &mut used, &mut crossings, &mut gaps)
    }

    fn step(&mut self) -> Result<()> {
        self.steps += 1;
        if self.steps > SEARCH_STEP_LIMIT {
            return Err(Error::resource("admission search budget exhausted"));
        }
        Ok(())
    }

    /// Extends the backup: currently positioned at `at` (start when
    /// `at_start`), choosing the next backup component to cross.
    #[allow(clippy::too_many_arguments)]
    fn descend(
        &mut self,
        s: NodeId,
        at: NodeId,
        at_start: bool,
        sets_left: usize,
        gap_cap: usize,
        used: &mut Vec<bool>,
        crossings: &mut Vec<(usize, NodeId, NodeId)>,
        gaps: &mut Vec<Gap>,
    ) -> Result<Option<PathPair>> {
        if sets_left == 0 {
            return Ok(None);
        }
        for b in 0..self.set_masks.len() {
            if used[b] {
                continue;
            }
            for ai in 0..self.set_nodes[b].len() {
                let a = self.set_nodes[b][ai];
                self.step()?;
                // reach the entry node a: either we are already there, or a
                // free interlude inside a common chain component gets us there
                let gap = if a == at {
                    None
                } else {
                    let (Some(ca), Some(cb)) = (self.chain_of[at], self.chain_of[a]) else {
                        continue;
                    };
                    if ca != cb {
                        continue;
                    }
                    if at_start && ca != 0 {
                        continue; // the opening interlude starts at s in C_1
                    }
                    Some(Gap { comp: ca, from: at, to: a })
                };
                if let Some(g) = &gap {
                    if gaps.iter().filter(|x| x.comp == g.comp).count() + 1 > gap_cap {
                        continue;
                    }
                }
                for xi in 0..self.set_nodes[b].len() {
                    let x = self.set_nodes[b][xi];
                    self.step()?;
                    if !connectivity(self.net, &self.set_masks[b], a, x)? {
                        continue;
                    }
                    used[b] = true;
                    crossings.push((b, a, x));
                    if let Some(g) = gap.clone() {
                        gaps.push(g);
                    }
                    // finish: from x we need to reach t — directly, or via a
                    // closing interlude in the last chain component
                    let closing = if x == self.t {
                        Some(None)
                    } else if self.chain_of[x] == Some(self.last_chain)
                        && gaps.iter().filter(|g| g.comp == self.last_chain).count() < gap_cap
                    {
                        Some(Some(Gap { comp: self.last_chain, from: x, to: self.t }))
                    } else {
                        None
                    };
                    if let Some(close) = closing {
                        let extra = close.is_some();
                        if let Some(g) = close {
                            gaps.push(g);
                        }
                        if let Some(pair) = self.assemble(s, crossings, gaps)? {
                            return Ok(Some(pair));
                        }
                        if extra {
                            gaps.pop();
                        }
                    }
                    let deeper = self.descend(
                        s,
                        x,
                        false,
                        sets_left - 1,
                        gap_cap,
                        used,
                        crossings,
                        gaps,
                    )?;
                    if deeper.is_some() {
                        return Ok(deeper);
                    }
                    if gap.is_some() {
                        gaps.pop();
                    }
                    crossings.pop();
                    used[b] = false;
                }
            }
        }
        Ok(None)
    }

    /// Checks the per-component disjoint systems and, on success, builds the
    /// concrete primary and backup paths.
    fn assemble(
        &mut self,
        s: NodeId,
        crossings: &[(usize, NodeId, NodeId)],
        gaps: &[Gap],
    ) -> Result<Option<PathPair>> {
        let ncomp = self.prim_pairs.len();
        let mut per_comp: Vec<Vec<(NodeId, NodeId)>> = vec![Vec::new(); ncomp];
        for g in gaps {
            per_comp[g.comp].push((g.from, g.to));
        }
        let mut systems: Vec<Vec<EdgePath>> = Vec::with_capacity(ncomp);
        for l in 0..ncomp {
            let key = (l, per_comp[l].clone());
            let sys = if let Some(hit) = self.memo.get(&key) {
                hit.clone()
            } else {
                let mut pairs = vec![self.prim_pairs[l]];
                pairs.extend(per_comp[l].iter().copied());
                let res = if pairs.len() > crate::paths::MAX_TERMINAL_PAIRS {
                    None
                } else {
                    k_disjoint_paths(self.net, &self.comp_mask[l], &pairs, false)?
                };
                self.memo.insert(key, res.clone());
                res
            };
            match sys {
                Some(sys) => systems.push(sys),
                None => return Ok(None),
            }
        }
        // primary: component segments interleaved with the chain bridges
        let mut primary_links = Vec::new();
        for l in 0..ncomp {
            primary_links.extend(systems[l][0].links.iter().copied());
            if l < ncomp - 1 {
                primary_links.push(self.bridges[l]);
            }
        }
        let primary = EdgePath::new(self.net, primary_links, s, self.t)?;
        // backup: interludes and component crossings in traversal order
        let mut consumed: Vec<usize> = vec![1; ncomp]; // next unused path per component
        let mut backup_links = Vec::new();
        let mut gap_iter = gaps.iter();
        let mut take_gap = |want_from: NodeId, want_to: NodeId,
                            systems: &[Vec<EdgePath>]| -> Option<Vec<usize>> {
            let g = gap_iter.next()?;
            debug_assert_eq!((g.from, g.to), (want_from, want_to));
            let idx = consumed[g.comp];
            consumed[g.comp] += 1;
            Some(systems[g.comp][idx].links.clone())
        };
        let mut cur = s;
        for &(b, a, x) in crossings {
            if a != cur {
                backup_links.extend(
                    take_gap(cur, a, &systems)
                        .ok_or_else(|| Error::input("backup interlude missing"))?,
                );
            }
            let seg = shortest_path(self.net, &self.set_masks[b], self.zeros, a, x)?
                .ok_or_else(|| Error::input("backup crossing vanished"))?;
            backup_links.extend(seg.links);
            cur = x;
        }
        if cur != self.t {
            backup_links.extend(
                take_gap(cur, self.t, &systems)
                    .ok_or_else(|| Error::input("closing interlude missing"))?,
            );
        }
        let backup = EdgePath::new(self.net, backup_links, s, self.t)?;
        Ok(Some(PathPair::new(primary, backup)?))
    }
}

/// Partition bookkeeping after an accepted admission: the pair's primary
/// links become taken, its free backup links become backup links.
pub fn apply_admission(
    net: &Network,
    part: &LinkPartition,
    pair: &PathPair,
) -> Result<LinkPartition> {
    let mut e1 = part.e1_free.clone();
    let mut e2 = part.e2_backup.clone();
    let mut e3 = part.e3_primary.clone();
    for &e in &pair.primary.links {
        if !e1.contains(e) {
            return Err(Error::input(format!("primary link {e} is not free")));
        }
        e1.remove(e);
        e3.insert(e);
    }
    for &e in &pair.backup.links {
        if e3.contains(e) {
            return Err(Error::input(format!("backup link {e} is taken")));
        }
        if e1.contains(e) {
            e1.remove(e);
            e2.insert(e);
        }
    }
    LinkPartition::new(net, e1, e2, e3)
}

/// Offline joint establishment of two fully reliable connections where only
/// the backup paths may share links. Tries, in order: four mutually disjoint
/// paths; for a shared source, a five-path system whose backups share a stem
/// through a junction; and the seven-path systems whose backups share a
/// middle segment between two junctions (both orientations of the second
/// connection). Returns the found scenario or None.
pub fn solve_2cesb(
    net: &Network,
    allowed: &LinkSet,
    s1: NodeId,
    t1: NodeId,
    s2: NodeId,
    t2: NodeId,
) -> Result<Option<Scenario>> {
    for &v in &[s1, t1, s2, t2] {
        net.check_node(v)?;
    }
    if s1 == t1 || s2 == t2 {
        return Err(Error::input("connection terminals coincide"));
    }
    // normalize terminal coincidences toward a shared source
    let (s1, t1, s2, t2) = if t1 == s2 || t1 == t2 {
        // flip the first connection so the coincidence sits at s1
        (t1, s1, s2, t2)
    } else {
        (s1, t1, s2, t2)
    };
    let (s2, t2) = if s1 == t2 { (t2, s2) } else { (s2, t2) };

    // four mutually disjoint paths
    if let Some(mut sol) =
        k_disjoint_paths(net, allowed, &[(s1, t1), (s1, t1), (s2, t2), (s2, t2)], false)?
    {
        let b2 = sol.pop().unwrap();
        let p2 = sol.pop().unwrap();
        let b1 = sol.pop().unwrap();
        let p1 = sol.pop().unwrap();
        return Ok(Some(Scenario::two(
            PathPair::new(p1, b1)?,
            PathPair::new(p2, b2)?,
        )));
    }

    let n = net.node_count();
    if s1 == s2 {
        // backups share a stem from the common source to a junction
        for x in 0..n {
            let pairs = [(s1, t1), (s2, t2), (s1, x), (x, t1), (x, t2)];
            if let Some(sol) = k_disjoint_paths(net, allowed, &pairs, false)? {
                let [p1, p2, stem, r1, r2]: [EdgePath; 5] = sol.try_into().unwrap();
                let b1 = concat_paths(net, &[&stem, &r1], s1, t1)?;
                let b2 = concat_paths(net, &[&stem, &r2], s2, t2)?;
                return Ok(Some(Scenario::two(
                    PathPair::new(p1, b1)?,
                    PathPair::new(p2, b2)?,
                )));
            }
        }
    }
    // backups share a middle segment between junctions x and y
    for x in 0..n {
        for y in 0..n {
            for flip in [false, true] {
                let (c2a, c2b) = if flip { (t2, s2) } else { (s2, t2) };
                let pairs = [
                    (s1, t1),
                    (s2, t2),
                    (s1, x),
                    (c2a, x),
                    (x, y),
                    (y, t1),
                    (y, c2b),
                ];
                if let Some(sol) = k_disjoint_paths(net, allowed, &pairs, false)? {
                    let [p1, p2, q1, q2, mid, r1, r2]: [EdgePath; 7] = sol.try_into().unwrap();
                    let b1 = concat_paths(net, &[&q1, &mid, &r1], s1, t1)?;
                    let b2 = if flip {
                        concat_paths(net, &[&r2.reversed(), &mid.reversed(), &q2.reversed()], s2, t2)?
                    } else {
                        concat_paths(net, &[&q2, &mid, &r2], s2, t2)?
                    };
                    return Ok(Some(Scenario::two(
                        PathPair::new(p1, b1)?,
                        PathPair::new(p2, b2)?,
                    )));
                }
            }
        }
    }
    Ok(None)
}

fn concat_paths(net: &Network, parts: &[&EdgePath], s: NodeId, t: NodeId) -> Result<EdgePath> {
    let links: Vec<usize> = parts.iter().flat_map(|p| p.links.iter().copied()).collect();
    EdgePath::new(net, links, s, t)
}
