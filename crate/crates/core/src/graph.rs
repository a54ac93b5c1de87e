//! Undirected multigraph with per-link failure probabilities, plus the
//! connectivity, bridge and decomposition machinery shared by every solver.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type NodeId = usize;

/// Absolute tolerance for all probability comparisons.
pub const PROB_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Link {
    pub a: NodeId,
    pub b: NodeId,
    pub failure_probability: f64,
    pub has_capacity: bool,
}

impl Link {
    pub fn other_endpoint(&self, node: NodeId) -> NodeId {
        if node == self.a {
            self.b
        } else {
            self.a
        }
    }

    pub fn touches(&self, node: NodeId) -> bool {
        self.a == node || self.b == node
    }
}

/// Undirected multigraph. Link identity is by index; parallel links are
/// permitted, self-loops are not. Immutable after construction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Network {
    node_count: usize,
    links: Vec<Link>,
    #[serde(skip)]
    adjacency: Vec<Vec<(usize, NodeId)>>,
}

impl Network {
    pub fn new(node_count: usize, links: Vec<Link>) -> Result<Self> {
        for (i, l) in links.iter().enumerate() {
            if l.a >= node_count || l.b >= node_count {
                return Err(Error::input(format!(
                    "link {i} endpoint out of range ({}, {})",
                    l.a, l.b
                )));
            }
            if l.a == l.b {
                return Err(Error::input(format!("link {i} is a self-loop at {}", l.a)));
            }
            if !(0.0..=1.0).contains(&l.failure_probability) || l.failure_probability.is_nan() {
                return Err(Error::input(format!(
                    "link {i} failure probability {} outside [0,1]",
                    l.failure_probability
                )));
            }
        }
        let mut net = Network {
            node_count,
            links,
            adjacency: Vec::new(),
        };
        net.rebuild_adjacency();
        Ok(net)
    }

    fn rebuild_adjacency(&mut self) {
        let mut adjacency = vec![Vec::new(); self.node_count];
        for (idx, l) in self.links.iter().enumerate() {
            adjacency[l.a].push((idx, l.b));
            adjacency[l.b].push((idx, l.a));
        }
        self.adjacency = adjacency;
    }

    /// Rebuilds the adjacency index; needed after deserialization since the
    /// index is not part of the serialized form.
    pub fn after_deserialize(mut self) -> Self {
        self.rebuild_adjacency();
        self
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn link_count(&self) -> usize {
        self.links.len()
    }

    pub fn link(&self, idx: usize) -> &Link {
        &self.links[idx]
    }

    pub fn links(&self) -> &[Link] {
        &self.links
    }

    /// (link index, neighbor) pairs incident to `node`, in link-index order of
    /// insertion.
    pub fn adjacency(&self, node: NodeId) -> &[(usize, NodeId)] {
        &self.adjacency[node]
    }

    pub fn degree(&self, node: NodeId) -> usize {
        self.adjacency[node].len()
    }

    pub fn check_node(&self, node: NodeId) -> Result<()> {
        if node >= self.node_count {
            Err(Error::input(format!("unknown node id {node}")))
        } else {
            Ok(())
        }
    }

    pub fn total_failure_probability(&self) -> f64 {
        self.links.iter().map(|l| l.failure_probability).sum()
    }

    /// Mask holding every link of the network.
    pub fn full_mask(&self) -> LinkSet {
        let mut s = LinkSet::empty(self.links.len());
        for i in 0..self.links.len() {
            s.insert(i);
        }
        s
    }

    /// Mask holding only the links flagged as having capacity.
    pub fn capacity_mask(&self) -> LinkSet {
        let mut s = LinkSet::empty(self.links.len());
        for (i, l) in self.links.iter().enumerate() {
            if l.has_capacity {
                s.insert(i);
            }
        }
        s
    }

    pub fn failure_of_set(&self, set: &LinkSet) -> f64 {
        set.iter().map(|e| self.links[e].failure_probability).sum()
    }

    /// Parses the line-oriented graph interchange format:
    /// `nodes <n>` header, then `link <u> <v> <p_f> <cap:0|1>` per link.
    /// `#` starts a comment; blank lines are ignored. Node labels may be
    /// arbitrary tokens and are mapped to dense 0-based ids on ingestion
    /// (integer labels in 0..n map to themselves).
    pub fn parse(text: &str) -> Result<(Network, Vec<String>)> {
        let mut node_count: Option<usize> = None;
        let mut links = Vec::new();
        let mut labels: Vec<String> = Vec::new();
        let mut label_ids: BTreeMap<String, usize> = BTreeMap::new();
        let mut numeric_labels = true;

        for (lineno, raw) in text.lines().enumerate() {
            let line = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let mut parts = line.split_whitespace();
            let kw = parts.next().unwrap();
            match kw {
                "nodes" => {
                    let n: usize = parts
                        .next()
                        .ok_or_else(|| Error::input(format!("line {}: missing node count", lineno + 1)))?
                        .parse()
                        .map_err(|_| Error::input(format!("line {}: bad node count", lineno + 1)))?;
                    node_count = Some(n);
                }
                "link" => {
                    let n = node_count
                        .ok_or_else(|| Error::input("link record before nodes header"))?;
                    let u = parts
                        .next()
                        .ok_or_else(|| Error::input(format!("line {}: missing endpoint", lineno + 1)))?;
                    let v = parts
                        .next()
                        .ok_or_else(|| Error::input(format!("line {}: missing endpoint", lineno + 1)))?;
                    let p: f64 = parts
                        .next()
                        .ok_or_else(|| Error::input(format!("line {}: missing probability", lineno + 1)))?
                        .parse()
                        .map_err(|_| Error::input(format!("line {}: bad probability", lineno + 1)))?;
                    let cap = match parts.next() {
                        Some("0") => false,
                        Some("1") | None => true,
                        Some(other) => {
                            return Err(Error::input(format!(
                                "line {}: bad capacity flag {other}",
                                lineno + 1
                            )))
                        }
                    };
                    numeric_labels = numeric_labels
                        && u.parse::<usize>().map(|x| x < n).unwrap_or(false)
                        && v.parse::<usize>().map(|x| x < n).unwrap_or(false);
                    let mut id_of = |tok: &str| -> usize {
                        if let Some(&id) = label_ids.get(tok) {
                            id
                        } else {
                            let id = labels.len();
                            labels.push(tok.to_string());
                            label_ids.insert(tok.to_string(), id);
                            id
                        }
                    };
                    let ua = id_of(u);
                    let vb = id_of(v);
                    links.push((u.to_string(), v.to_string(), ua, vb, p, cap));
                }
                other => {
                    return Err(Error::input(format!(
                        "line {}: unknown record {other}",
                        lineno + 1
                    )))
                }
            }
        }

        let n = node_count.ok_or_else(|| Error::input("missing nodes header"))?;
        let realized: Vec<Link> = links
            .iter()
            .map(|(u, v, ua, vb, p, cap)| {
                let (a, b) = if numeric_labels {
                    (u.parse::<usize>().unwrap(), v.parse::<usize>().unwrap())
                } else {
                    (*ua, *vb)
                };
                Link {
                    a,
                    b,
                    failure_probability: *p,
                    has_capacity: *cap,
                }
            })
            .collect();
        if !numeric_labels && labels.len() > n {
            return Err(Error::input(format!(
                "{} distinct node labels but nodes header says {n}",
                labels.len()
            )));
        }
        let label_vec = if numeric_labels {
            (0..n).map(|i| i.to_string()).collect()
        } else {
            let mut v = labels.clone();
            while v.len() < n {
                v.push(v.len().to_string());
            }
            v
        };
        Ok((Network::new(n, realized)?, label_vec))
    }

    /// Serializes in the interchange format. Round-trips bit-exactly through
    /// `parse` for dense integer labels.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "nodes {}", self.node_count).unwrap();
        for l in &self.links {
            writeln!(
                out,
                "link {} {} {} {}",
                l.a,
                l.b,
                format_probability(l.failure_probability),
                if l.has_capacity { 1 } else { 0 }
            )
            .unwrap();
        }
        out
    }
}

fn format_probability(p: f64) -> String {
    // Shortest representation that round-trips through f64 parsing.
    let mut s = format!("{p}");
    if !s.contains('.') && !s.contains('e') {
        s.push_str(".0");
    }
    s
}

/// Compact set of link indices backed by a bit vector. Serializes as
/// `{ capacity, links: [indices] }`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinkSet {
    bits: Vec<u64>,
    capacity: usize,
}

impl Serialize for LinkSet {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = ser.serialize_struct("LinkSet", 2)?;
        st.serialize_field("capacity", &self.capacity)?;
        st.serialize_field("links", &self.to_vec())?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for LinkSet {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            capacity: usize,
            links: Vec<usize>,
        }
        let repr = Repr::deserialize(de)?;
        if let Some(&bad) = repr.links.iter().find(|&&l| l >= repr.capacity) {
            return Err(serde::de::Error::custom(format!(
                "link index {bad} outside capacity {}",
                repr.capacity
            )));
        }
        Ok(LinkSet::from_links(repr.capacity, &repr.links))
    }
}

impl LinkSet {
    pub fn empty(capacity: usize) -> Self {
        LinkSet {
            bits: vec![0; capacity.div_ceil(64).max(1)],
            capacity,
        }
    }

    pub fn from_links(capacity: usize, links: &[usize]) -> Self {
        let mut s = Self::empty(capacity);
        for &l in links {
            s.insert(l);
        }
        s
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn insert(&mut self, idx: usize) {
        debug_assert!(idx < self.capacity);
        self.bits[idx / 64] |= 1 << (idx % 64);
    }

    pub fn remove(&mut self, idx: usize) {
        self.bits[idx / 64] &= !(1 << (idx % 64));
    }

    pub fn contains(&self, idx: usize) -> bool {
        idx < self.capacity && self.bits[idx / 64] & (1 << (idx % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn is_disjoint(&self, other: &LinkSet) -> bool {
        self.bits
            .iter()
            .zip(&other.bits)
            .all(|(a, b)| a & b == 0)
    }

    pub fn intersects(&self, other: &LinkSet) -> bool {
        !self.is_disjoint(other)
    }

    pub fn intersection(&self, other: &LinkSet) -> LinkSet {
        let mut out = self.clone();
        for (w, o) in out.bits.iter_mut().zip(&other.bits) {
            *w &= o;
        }
        out
    }

    pub fn union(&self, other: &LinkSet) -> LinkSet {
        let mut out = self.clone();
        for (w, o) in out.bits.iter_mut().zip(&other.bits) {
            *w |= o;
        }
        out
    }

    pub fn difference(&self, other: &LinkSet) -> LinkSet {
        let mut out = self.clone();
        for (w, o) in out.bits.iter_mut().zip(&other.bits) {
            *w &= !o;
        }
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let bit = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * 64 + bit)
                }
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

/// Walk between two terminals given as an ordered list of link indices with no
/// repeated link. Node repetition is allowed; link-disjointness between two
/// paths is set intersection on link indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgePath {
    pub links: Vec<usize>,
    pub source: NodeId,
    pub target: NodeId,
}

impl EdgePath {
    pub fn new(net: &Network, links: Vec<usize>, source: NodeId, target: NodeId) -> Result<Self> {
        net.check_node(source)?;
        net.check_node(target)?;
        let mut seen = LinkSet::empty(net.link_count());
        let mut cur = source;
        for &e in &links {
            if e >= net.link_count() {
                return Err(Error::input(format!("link index {e} out of range")));
            }
            if seen.contains(e) {
                return Err(Error::input(format!("link index {e} repeats in path")));
            }
            seen.insert(e);
            let l = net.link(e);
            if !l.touches(cur) {
                return Err(Error::input(format!(
                    "link {e} does not touch walk position {cur}"
                )));
            }
            cur = l.other_endpoint(cur);
        }
        if cur != target {
            return Err(Error::input(format!(
                "walk ends at {cur}, expected {target}"
            )));
        }
        if links.is_empty() && source != target {
            return Err(Error::input("empty path with distinct terminals"));
        }
        Ok(EdgePath {
            links,
            source,
            target,
        })
    }

    pub fn empty(node: NodeId) -> Self {
        EdgePath {
            links: Vec::new(),
            source: node,
            target: node,
        }
    }

    pub fn link_set(&self, net: &Network) -> LinkSet {
        LinkSet::from_links(net.link_count(), &self.links)
    }

    /// Node sequence of the walk, source first.
    pub fn nodes(&self, net: &Network) -> Vec<NodeId> {
        let mut out = vec![self.source];
        let mut cur = self.source;
        for &e in &self.links {
            cur = net.link(e).other_endpoint(cur);
            out.push(cur);
        }
        out
    }

    pub fn reversed(&self) -> EdgePath {
        EdgePath {
            links: self.links.iter().rev().copied().collect(),
            source: self.target,
            target: self.source,
        }
    }
}

/// True iff a walk from `s` to `t` exists using only links in `allowed`.
pub fn connectivity(net: &Network, allowed: &LinkSet, s: NodeId, t: NodeId) -> Result<bool> {
    net.check_node(s)?;
    net.check_node(t)?;
    if s == t {
        return Ok(true);
    }
    let mut seen = vec![false; net.node_count()];
    let mut stack = vec![s];
    seen[s] = true;
    while let Some(u) = stack.pop() {
        for &(e, v) in net.adjacency(u) {
            if allowed.contains(e) && !seen[v] {
                if v == t {
                    return Ok(true);
                }
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    Ok(false)
}

/// Component id per node over the `allowed` subgraph; isolated nodes get their
/// own component.
pub fn component_ids(net: &Network, allowed: &LinkSet) -> Vec<usize> {
    let mut comp = vec![usize::MAX; net.node_count()];
    let mut next = 0;
    for start in 0..net.node_count() {
        if comp[start] != usize::MAX {
            continue;
        }
        comp[start] = next;
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for &(e, v) in net.adjacency(u) {
                if allowed.contains(e) && comp[v] == usize::MAX {
                    comp[v] = next;
                    stack.push(v);
                }
            }
        }
        next += 1;
    }
    comp
}

/// Fewest-hop s-t walk in the allowed subgraph, preferring smaller link
/// indices (deterministic). Returns None when disconnected.
fn bfs_path(net: &Network, allowed: &LinkSet, s: NodeId, t: NodeId) -> Option<EdgePath> {
    if s == t {
        return Some(EdgePath::empty(s));
    }
    let mut prev: Vec<Option<(usize, NodeId)>> = vec![None; net.node_count()];
    let mut seen = vec![false; net.node_count()];
    seen[s] = true;
    let mut frontier = vec![s];
    while !frontier.is_empty() && !seen[t] {
        let mut next = Vec::new();
        for &u in &frontier {
            let mut incident: Vec<(usize, NodeId)> = net
                .adjacency(u)
                .iter()
                .copied()
                .filter(|&(e, _)| allowed.contains(e))
                .collect();
            incident.sort();
            for (e, v) in incident {
                if !seen[v] {
                    seen[v] = true;
                    prev[v] = Some((e, u));
                    next.push(v);
                }
            }
        }
        frontier = next;
    }
    if !seen[t] {
        return None;
    }
    let mut links = Vec::new();
    let mut cur = t;
    while cur != s {
        let (e, u) = prev[cur].unwrap();
        links.push(e);
        cur = u;
    }
    links.reverse();
    Some(EdgePath {
        links,
        source: s,
        target: t,
    })
}

/// The links whose individual removal disconnects `s` from `t`, ordered along
/// the s-t direction. Errors when `s` and `t` are disconnected.
pub fn bridges_separating(net: &Network, allowed: &LinkSet, s: NodeId, t: NodeId) -> Result<Vec<usize>> {
    net.check_node(s)?;
    net.check_node(t)?;
    if s == t {
        return Ok(Vec::new());
    }
    let path = bfs_path(net, allowed, s, t)
        .ok_or_else(|| Error::input(format!("{s} and {t} are disconnected")))?;
    // Every separating link lies on every s-t path, so testing one path's
    // links finds them all, already in s-to-t order.
    let mut out = Vec::new();
    for &e in &path.links {
        let mut reduced = allowed.clone();
        reduced.remove(e);
        if !connectivity(net, &reduced, s, t)? {
            out.push(e);
        }
    }
    Ok(out)
}

/// Chain decomposition of the s-t component into successive components
/// interlinked by the bridges separating `s` from `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct D1Decomposition {
    /// Node sets C_1..C_{r+1} in chain order; `s` is in the first, `t` in the
    /// last.
    pub components: Vec<Vec<NodeId>>,
    /// Bridge link indices e_1..e_r in chain order.
    pub bridges: Vec<usize>,
    /// Per bridge, (v_l in C_l, u_{l+1} in C_{l+1}).
    pub endpoints: Vec<(NodeId, NodeId)>,
}

pub fn decompose_d1(net: &Network, allowed: &LinkSet, s: NodeId, t: NodeId) -> Result<D1Decomposition> {
    let bridges = bridges_separating(net, allowed, s, t)?;
    let mut reduced = allowed.clone();
    for &e in &bridges {
        reduced.remove(e);
    }
    let comp = component_ids(net, &reduced);
    let mut components = Vec::new();
    let mut endpoints = Vec::new();
    let mut cur_comp = comp[s];
    components.push(component_nodes(net, &comp, cur_comp));
    for &e in &bridges {
        let l = net.link(e);
        let (v_l, u_next) = if comp[l.a] == cur_comp {
            (l.a, l.b)
        } else {
            (l.b, l.a)
        };
        debug_assert_eq!(comp[v_l], cur_comp);
        cur_comp = comp[u_next];
        endpoints.push((v_l, u_next));
        components.push(component_nodes(net, &comp, cur_comp));
    }
    debug_assert!(components.last().unwrap().contains(&t));
    Ok(D1Decomposition {
        components,
        bridges,
        endpoints,
    })
}

fn component_nodes(net: &Network, comp: &[usize], id: usize) -> Vec<NodeId> {
    (0..net.node_count()).filter(|&v| comp[v] == id).collect()
}

/// Result of the clique transformation: every node of degree above two becomes
/// a clique of zero-weight internal links, turning link-disjointness questions
/// into node-disjointness questions.
#[derive(Debug, Clone)]
pub struct CliqueTransform {
    pub network: Network,
    /// Image nodes of each original node (singleton for degree <= 2).
    pub node_images: Vec<Vec<NodeId>>,
    /// Original node carried by each image node.
    pub node_origin: Vec<NodeId>,
    /// Per original link index, its image endpoints (a-side carrier, b-side
    /// carrier). Image link indices 0..m-1 coincide with the original indices.
    pub incidence: Vec<(NodeId, NodeId)>,
    /// Per image link, the original link it realizes (None for clique-internal
    /// links).
    pub link_origin: Vec<Option<usize>>,
}

pub fn clique_transform(net: &Network) -> CliqueTransform {
    let mut node_images: Vec<Vec<NodeId>> = Vec::with_capacity(net.node_count());
    let mut node_origin = Vec::new();
    // Carrier image node of each (link, endpoint side) incidence.
    let mut carrier: Vec<(NodeId, NodeId)> = vec![(usize::MAX, usize::MAX); net.link_count()];
    let mut next = 0usize;
    for v in 0..net.node_count() {
        let mut incident: Vec<usize> = net.adjacency(v).iter().map(|&(e, _)| e).collect();
        incident.sort();
        incident.dedup();
        if incident.len() <= 2 {
            node_images.push(vec![next]);
            node_origin.push(v);
            for e in incident {
                assign_carrier(&mut carrier, net, e, v, next);
            }
            next += 1;
        } else {
            let mut images = Vec::new();
            for e in incident {
                images.push(next);
                node_origin.push(v);
                assign_carrier(&mut carrier, net, e, v, next);
                next += 1;
            }
            node_images.push(images);
        }
    }
    let mut links = Vec::new();
    let mut link_origin = Vec::new();
    for (e, l) in net.links().iter().enumerate() {
        let (ca, cb) = carrier[e];
        links.push(Link {
            a: ca,
            b: cb,
            failure_probability: l.failure_probability,
            has_capacity: l.has_capacity,
        });
        link_origin.push(Some(e));
    }
    for images in &node_images {
        for i in 0..images.len() {
            for j in i + 1..images.len() {
                links.push(Link {
                    a: images[i],
                    b: images[j],
                    failure_probability: 0.0,
                    has_capacity: true,
                });
                link_origin.push(None);
            }
        }
    }
    let network = Network::new(next, links).expect("clique transform is well formed");
    CliqueTransform {
        network,
        node_images,
        node_origin,
        incidence: carrier,
        link_origin,
    }
}

fn assign_carrier(
    carrier: &mut [(NodeId, NodeId)],
    net: &Network,
    link: usize,
    node: NodeId,
    image: NodeId,
) {
    if net.link(link).a == node {
        carrier[link].0 = image;
    } else {
        carrier[link].1 = image;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub fn diamond() -> Network {
        // links (0,1),(1,3),(0,2),(2,3)
        Network::new(
            4,
            vec![
                Link { a: 0, b: 1, failure_probability: 0.25, has_capacity: true },
                Link { a: 1, b: 3, failure_probability: 0.25, has_capacity: true },
                Link { a: 0, b: 2, failure_probability: 0.25, has_capacity: true },
                Link { a: 2, b: 3, failure_probability: 0.25, has_capacity: true },
            ],
        )
        .unwrap()
    }

    pub fn path3() -> Network {
        Network::new(
            3,
            vec![
                Link { a: 0, b: 1, failure_probability: 0.5, has_capacity: true },
                Link { a: 1, b: 2, failure_probability: 0.5, has_capacity: true },
            ],
        )
        .unwrap()
    }

    #[test]
    fn connectivity_basics() {
        let net = diamond();
        let all = net.full_mask();
        assert!(connectivity(&net, &all, 0, 3).unwrap());
        let only_first = LinkSet::from_links(4, &[0]);
        assert!(!connectivity(&net, &only_first, 0, 3).unwrap());
        let two = Network::new(2, vec![]).unwrap();
        assert!(!connectivity(&two, &two.full_mask(), 0, 1).unwrap());
        assert!(connectivity(&net, &all, 2, 2).unwrap());
        assert!(connectivity(&net, &all, 9, 0).is_err());
    }

    #[test]
    fn bridges_on_path_graph() {
        let net = path3();
        assert_eq!(bridges_separating(&net, &net.full_mask(), 0, 2).unwrap(), vec![0, 1]);
        let net = diamond();
        assert!(bridges_separating(&net, &net.full_mask(), 0, 3).unwrap().is_empty());
    }

    #[test]
    fn bridges_two_diamonds_joined() {
        // diamond on 0..4, bridge (3,4), diamond on 4..8
        let mut links = diamond().links().to_vec();
        links.push(Link { a: 3, b: 4, failure_probability: 0.1, has_capacity: true });
        for l in diamond().links() {
            links.push(Link {
                a: l.a + 4,
                b: l.b + 4,
                failure_probability: l.failure_probability,
                has_capacity: true,
            });
        }
        let net = Network::new(8, links).unwrap();
        let bridges = bridges_separating(&net, &net.full_mask(), 0, 7).unwrap();
        assert_eq!(bridges, vec![4]);
        // exhaustive cross-check by removal
        for e in 0..net.link_count() {
            let mut m = net.full_mask();
            m.remove(e);
            let separated = !connectivity(&net, &m, 0, 7).unwrap();
            assert_eq!(separated, bridges.contains(&e), "link {e}");
        }
        let d1 = decompose_d1(&net, &net.full_mask(), 0, 7).unwrap();
        assert_eq!(d1.components.len(), 2);
        assert_eq!(d1.bridges, vec![4]);
        assert_eq!(d1.endpoints, vec![(3, 4)]);
    }

    #[test]
    fn d1_on_path_graph() {
        let net = path3();
        let d1 = decompose_d1(&net, &net.full_mask(), 0, 2).unwrap();
        assert_eq!(d1.components, vec![vec![0], vec![1], vec![2]]);
        assert_eq!(d1.bridges, vec![0, 1]);
        let net = diamond();
        let d1 = decompose_d1(&net, &net.full_mask(), 0, 3).unwrap();
        assert_eq!(d1.components, vec![vec![0, 1, 2, 3]]);
        assert!(d1.bridges.is_empty());
    }

    #[test]
    fn disconnected_terminals_are_input_errors() {
        let net = Network::new(2, vec![]).unwrap();
        assert!(bridges_separating(&net, &net.full_mask(), 0, 1).is_err());
        assert!(decompose_d1(&net, &net.full_mask(), 0, 1).is_err());
    }

    #[test]
    fn clique_transform_star() {
        // K_{1,3}: center 0
        let net = Network::new(
            4,
            vec![
                Link { a: 0, b: 1, failure_probability: 0.3, has_capacity: true },
                Link { a: 0, b: 2, failure_probability: 0.3, has_capacity: true },
                Link { a: 0, b: 3, failure_probability: 0.4, has_capacity: true },
            ],
        )
        .unwrap();
        let ct = clique_transform(&net);
        assert_eq!(ct.network.node_count(), 6);
        assert_eq!(ct.network.link_count(), 6);
        assert_eq!(ct.node_images[0].len(), 3);
        for e in 3..6 {
            assert_eq!(ct.link_origin[e], None);
            assert_eq!(ct.network.link(e).failure_probability, 0.0);
        }
    }

    #[test]
    fn clique_transform_low_degree_unchanged() {
        for net in [path3(), diamond()] {
            let ct = clique_transform(&net);
            assert_eq!(ct.network.node_count(), net.node_count());
            assert_eq!(ct.network.link_count(), net.link_count());
        }
    }

    #[test]
    fn path_validation() {
        let net = diamond();
        let p = EdgePath::new(&net, vec![0, 1], 0, 3).unwrap();
        assert_eq!(p.nodes(&net), vec![0, 1, 3]);
        assert!(EdgePath::new(&net, vec![0, 1], 0, 2).is_err());
        assert!(EdgePath::new(&net, vec![0, 0], 0, 0).is_err());
        assert!(EdgePath::new(&net, vec![], 0, 3).is_err());
        assert!(EdgePath::new(&net, vec![9], 0, 3).is_err());
    }

    #[test]
    fn format_round_trip() {
        let net = diamond();
        let text = net.to_text();
        let (parsed, labels) = Network::parse(&text).unwrap();
        assert_eq!(parsed.to_text(), text);
        assert_eq!(labels.len(), 4);
        // arbitrary labels
        let (named, labels) = Network::parse("nodes 3\nlink alpha beta 0.5 1\nlink beta gamma 0.5 0\n").unwrap();
        assert_eq!(labels, vec!["alpha", "beta", "gamma"]);
        assert!(!named.link(1).has_capacity);
    }
}
