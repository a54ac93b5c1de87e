//! Probability bookkeeping under the single-link-failure model and the exact
//! preemption-aware failure evaluator for two prioritized connections.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgePath, LinkSet, Network, NodeId, PROB_TOL};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConnectionRequest {
    pub source: NodeId,
    pub destination: NodeId,
    /// Maximal conditional failure probability the connection tolerates;
    /// 0 means fully reliable under any single failure.
    pub mcfp: f64,
    /// 1 = highest priority.
    pub priority: u32,
}

impl ConnectionRequest {
    pub fn new(source: NodeId, destination: NodeId, mcfp: f64, priority: u32) -> Result<Self> {
        if source == destination {
            return Err(Error::input("request source equals destination"));
        }
        if !(0.0..=1.0).contains(&mcfp) {
            return Err(Error::input(format!("mcfp {mcfp} outside [0,1]")));
        }
        Ok(ConnectionRequest {
            source,
            destination,
            mcfp,
            priority,
        })
    }
}

/// Working route plus its protection route for one connection.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathPair {
    pub primary: EdgePath,
    pub backup: EdgePath,
}

impl PathPair {
    pub fn new(primary: EdgePath, backup: EdgePath) -> Result<Self> {
        if primary.source != backup.source || primary.target != backup.target {
            return Err(Error::input("primary and backup terminals differ"));
        }
        Ok(PathPair { primary, backup })
    }
}

/// Path pairs for K connections, listed in priority order (highest first).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Scenario {
    pub pairs: Vec<PathPair>,
}

impl Scenario {
    pub fn two(c1: PathPair, c2: PathPair) -> Self {
        Scenario {
            pairs: vec![c1, c2],
        }
    }
}

/// True iff the link failure probabilities sum to 1 within tolerance, i.e.
/// they form a conditional distribution over which single link fails.
pub fn validate_normalization(net: &Network) -> bool {
    (net.total_failure_probability() - 1.0).abs() <= PROB_TOL
}

/// Sum of the failure probabilities of the path's links.
pub fn path_failure_probability(net: &Network, p: &EdgePath) -> Result<f64> {
    let mut sum = 0.0;
    for &e in &p.links {
        if e >= net.link_count() {
            return Err(Error::input(format!("link index {e} out of range")));
        }
        sum += net.link(e).failure_probability;
    }
    Ok(sum)
}

/// Failure probability of one connection in isolation: the probability mass on
/// links shared by its primary and backup.
pub fn single_connection_failure(net: &Network, pair: &PathPair) -> Result<f64> {
    let shared = pair
        .primary
        .link_set(net)
        .intersection(&pair.backup.link_set(net));
    Ok(net.failure_of_set(&shared))
}

/// Link sets of a two-connection scenario, precomputed for the evaluators.
struct TwoSets {
    p1: LinkSet,
    b1: LinkSet,
    p2: LinkSet,
    b2: LinkSet,
}

fn two_sets(net: &Network, scen: &Scenario) -> Result<TwoSets> {
    if scen.pairs.len() != 2 {
        return Err(Error::input("evaluator expects exactly 2 connections"));
    }
    let s = TwoSets {
        p1: scen.pairs[0].primary.link_set(net),
        b1: scen.pairs[0].backup.link_set(net),
        p2: scen.pairs[1].primary.link_set(net),
        b2: scen.pairs[1].backup.link_set(net),
    };
    if s.p1.intersects(&s.p2) {
        return Err(Error::input("primary paths must be link-disjoint"));
    }
    Ok(s)
}

/// Exact failure probabilities (pf_c1, pf_c2) of a two-connection scenario
/// under preemptive restoration, by enumerating every link as the unique
/// failed link:
///  - c1 runs on p1 if the failure misses p1, else on b1 if it misses b1,
///    else c1 fails;
///  - when c1 reroutes onto b1, it seizes b1's links from c2's paths;
///  - a backup of c2 also cannot seize links of c1's working primary;
///  - c2 fails when neither of its paths remains usable.
pub fn preemption_oracle(net: &Network, scen: &Scenario) -> Result<(f64, f64)> {
    let s = two_sets(net, scen)?;
    let mut pf1 = 0.0;
    let mut pf2 = 0.0;
    for e in 0..net.link_count() {
        let p = net.link(e).failure_probability;
        if p == 0.0 {
            continue;
        }
        let c1_on_p1 = !s.p1.contains(e);
        let c1_on_b1 = !c1_on_p1 && !s.b1.contains(e);
        if !c1_on_p1 && !c1_on_b1 {
            pf1 += p;
        }
        let p2_usable = !s.p2.contains(e) && !(c1_on_b1 && s.p2.intersects(&s.b1));
        let b2_usable = !s.b2.contains(e)
            && !(c1_on_b1 && s.b2.intersects(&s.b1))
            && !(c1_on_p1 && s.b2.intersects(&s.p1));
        if !p2_usable && !b2_usable {
            pf2 += p;
        }
    }
    Ok((pf1, pf2))
}

/// Fast pf_c2 from precomputed link sets, exact on every overlap pattern
/// (including the dominated one). Algebraic form of the link-enumeration
/// oracle, used in brute-force inner loops; equality with `preemption_oracle`
/// is property-tested.
pub fn pf2_fast(net: &Network, p1: &LinkSet, b1: &LinkSet, p2: &LinkSet, b2: &LinkSet) -> f64 {
    let z = b2.intersects(p1);
    let y = b2.intersects(b1);
    let x = p2.intersects(b1);
    let mut v = if z {
        net.failure_of_set(p2)
    } else {
        net.failure_of_set(&p2.intersection(b2))
    };
    if x {
        let exposed = p1.difference(b1);
        v += if y {
            net.failure_of_set(&exposed)
        } else {
            net.failure_of_set(&b2.intersection(&exposed))
        };
    }
    v
}

/// The overlap pattern of a two-connection scenario.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CaseTag {
    /// b2 avoids p1; only backups may interfere.
    SharedBackup,
    /// b2 avoids p1 but p2 or b2 meets b1.
    UnavoidableFirstBackup,
    /// b2 meets p1 while avoiding b1.
    Overlapped,
    Infeasible,
}

/// Classifies a scenario into the retained overlap cases; None for the
/// dominated pattern where b2 meets both p1 and b1.
pub fn classify_case(net: &Network, scen: &Scenario) -> Result<Option<CaseTag>> {
    let s = two_sets(net, scen)?;
    let z = s.b2.intersects(&s.p1);
    let y = s.b2.intersects(&s.b1);
    let x = s.p2.intersects(&s.b1);
    Ok(if !z {
        if !x && !y {
            Some(CaseTag::SharedBackup)
        } else {
            Some(CaseTag::UnavoidableFirstBackup)
        }
    } else if !y {
        Some(CaseTag::Overlapped)
    } else {
        None
    })
}

/// Closed-form pf_c2 on the retained overlap cases; agrees exactly with
/// `preemption_oracle` there. Errors outside its domain (b2 meeting both p1
/// and b1), where callers fall back to the oracle.
pub fn closed_form_c2(net: &Network, scen: &Scenario) -> Result<f64> {
    let s = two_sets(net, scen)?;
    let z = s.b2.intersects(&s.p1);
    let y = s.b2.intersects(&s.b1);
    let x = s.p2.intersects(&s.b1);
    if z && y {
        return Err(Error::input(
            "scenario outside the retained overlap cases (b2 meets both p1 and b1)",
        ));
    }
    Ok(if !z {
        let mut v = net.failure_of_set(&s.p2.intersection(&s.b2));
        if x && y {
            v += net.failure_of_set(&s.p1.difference(&s.b1));
        }
        v
    } else {
        // b2 crosses the working primary: p2 is c2's only survivable route
        let mut v = net.failure_of_set(&s.p2);
        if x {
            v += net.failure_of_set(&s.p1.intersection(&s.b2));
        }
        v
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Link;

    fn net_uniform(n: usize, edges: &[(usize, usize)]) -> Network {
        let m = edges.len() as f64;
        Network::new(
            n,
            edges
                .iter()
                .map(|&(a, b)| Link {
                    a,
                    b,
                    failure_probability: 1.0 / m,
                    has_capacity: true,
                })
                .collect(),
        )
        .unwrap()
    }

    fn pair(net: &Network, p: &[usize], b: &[usize], s: usize, t: usize) -> PathPair {
        PathPair::new(
            EdgePath::new(net, p.to_vec(), s, t).unwrap(),
            EdgePath::new(net, b.to_vec(), s, t).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn normalization() {
        let g = net_uniform(3, &[(0, 1), (1, 2)]);
        assert!(validate_normalization(&g));
        let g = Network::new(
            2,
            vec![Link { a: 0, b: 1, failure_probability: 0.4, has_capacity: true }],
        )
        .unwrap();
        assert!(!validate_normalization(&g));
    }

    #[test]
    fn basic_probabilities() {
        let g = Network::new(
            3,
            vec![
                Link { a: 0, b: 1, failure_probability: 0.2, has_capacity: true },
                Link { a: 1, b: 2, failure_probability: 0.3, has_capacity: true },
                Link { a: 0, b: 2, failure_probability: 0.5, has_capacity: true },
            ],
        )
        .unwrap();
        let p = EdgePath::new(&g, vec![0, 1], 0, 2).unwrap();
        assert!((path_failure_probability(&g, &p).unwrap() - 0.5).abs() < 1e-12);
        let direct = EdgePath::new(&g, vec![2], 0, 2).unwrap();
        let pp = PathPair::new(p.clone(), direct.clone()).unwrap();
        assert_eq!(single_connection_failure(&g, &pp).unwrap(), 0.0);
        let same = PathPair::new(p.clone(), p.clone()).unwrap();
        assert!((single_connection_failure(&g, &same).unwrap() - 0.5).abs() < 1e-12);
    }

    /// Ladder with enough parallel structure to realize all overlap cases.
    /// nodes 0..=3; links: three 0-1 rails (0,1,2), three 1-2 rails (3,4,5),
    /// three 2-3 rails (6,7,8).
    fn ladder() -> Network {
        net_uniform(
            4,
            &[(0, 1), (0, 1), (0, 1), (1, 2), (1, 2), (1, 2), (2, 3), (2, 3), (2, 3)],
        )
    }

    #[test]
    fn shared_backup_case() {
        // c1: 0->2 over rails 0,3; backup rails 1,4. c2: 0->2 over rails 2,5;
        // backup shares c1's backup rail 4.
        let g = ladder();
        let scen = Scenario::two(
            pair(&g, &[0, 3], &[1, 4], 0, 2),
            pair(&g, &[2, 5], &[2, 4], 0, 2),
        );
        // backup sharing only: pf_c2 = mass of p2 ∩ b2 = link 2
        let (pf1, pf2) = preemption_oracle(&g, &scen).unwrap();
        assert!(pf1.abs() < 1e-12);
        assert!((pf2 - 1.0 / 9.0).abs() < 1e-12);
        // b2 here meets p2 but not p1/b1 — actually shares b1's rail 4 too,
        // placing it in the unavoidable-first-backup pattern
        assert_eq!(
            classify_case(&g, &scen).unwrap(),
            Some(CaseTag::UnavoidableFirstBackup)
        );
        assert!((closed_form_c2(&g, &scen).unwrap() - pf2).abs() < 1e-12);
    }

    #[test]
    fn overlapped_case_matches_printed_value() {
        // c2's backup runs through c1's primary (rail 0) while avoiding b1;
        // p2 crosses b1 on rail 4.
        let g = ladder();
        let scen = Scenario::two(
            pair(&g, &[0, 3], &[1, 4], 0, 2),
            pair(&g, &[2, 4], &[0, 5], 0, 2),
        );
        let (_, pf2) = preemption_oracle(&g, &scen).unwrap();
        assert_eq!(classify_case(&g, &scen).unwrap(), Some(CaseTag::Overlapped));
        // pf2 = P_f(p2) + P_f(p1 ∩ b2) = 2/9 + 1/9
        assert!((pf2 - 3.0 / 9.0).abs() < 1e-12);
        assert!((closed_form_c2(&g, &scen).unwrap() - pf2).abs() < 1e-12);
    }

    #[test]
    fn all_disjoint_is_fully_reliable() {
        let g = ladder();
        let scen = Scenario::two(
            pair(&g, &[0, 3], &[1, 4], 0, 2),
            pair(&g, &[2], &[2], 0, 1),
        );
        // c2 primary = backup = rail 2 (degenerate but legal input)
        let (_, pf2) = preemption_oracle(&g, &scen).unwrap();
        assert!((pf2 - 1.0 / 9.0).abs() < 1e-12);
        let scen = Scenario::two(
            pair(&g, &[0], &[1], 0, 1),
            pair(&g, &[6], &[7], 2, 3),
        );
        let (pf1, pf2) = preemption_oracle(&g, &scen).unwrap();
        assert_eq!((pf1, pf2), (0.0, 0.0));
        assert_eq!(closed_form_c2(&g, &scen).unwrap(), 0.0);
        assert_eq!(classify_case(&g, &scen).unwrap(), Some(CaseTag::SharedBackup));
    }

    #[test]
    fn fourth_pattern_is_out_of_domain() {
        // b2 meets both p1 (rail 0) and b1 (rail 4)
        let g = ladder();
        let scen = Scenario::two(
            pair(&g, &[0, 3], &[1, 4], 0, 2),
            pair(&g, &[2, 5], &[0, 4], 0, 2),
        );
        assert_eq!(classify_case(&g, &scen).unwrap(), None);
        assert!(closed_form_c2(&g, &scen).is_err());
        // the oracle still evaluates it
        preemption_oracle(&g, &scen).unwrap();
    }

    #[test]
    fn disjoint_primaries_enforced() {
        let g = ladder();
        let scen = Scenario::two(
            pair(&g, &[0, 3], &[1, 4], 0, 2),
            pair(&g, &[0, 5], &[2, 4], 0, 2),
        );
        assert!(preemption_oracle(&g, &scen).is_err());
    }

    #[test]
    fn pf1_equals_isolated_overlap_mass() {
        use rand::prelude::*;
        let g = ladder();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let rails: [&[usize]; 3] = [&[0, 3], &[1, 4], &[2, 5]];
        for _ in 0..200 {
            let pick = |rng: &mut rand_chacha::ChaCha8Rng| rails[rng.gen_range(0..3)].to_vec();
            let p1 = pick(&mut rng);
            let b1 = pick(&mut rng);
            let mut p2 = pick(&mut rng);
            while p2[0] == p1[0] {
                p2 = pick(&mut rng);
            }
            let b2 = pick(&mut rng);
            let scen = Scenario::two(
                pair(&g, &p1, &b1, 0, 2),
                pair(&g, &p2, &b2, 0, 2),
            );
            let (pf1, pf2) = preemption_oracle(&g, &scen).unwrap();
            let iso = single_connection_failure(&g, &scen.pairs[0]).unwrap();
            assert!((pf1 - iso).abs() < 1e-12);
            assert!((0.0..=1.0 + 1e-12).contains(&pf2));
            let fast = pf2_fast(
                &g,
                &scen.pairs[0].primary.link_set(&g),
                &scen.pairs[0].backup.link_set(&g),
                &scen.pairs[1].primary.link_set(&g),
                &scen.pairs[1].backup.link_set(&g),
            );
            assert!((fast - pf2).abs() < 1e-12);
            if let Ok(cf) = closed_form_c2(&g, &scen) {
                assert!((cf - pf2).abs() < 1e-12);
            } else {
                assert_eq!(classify_case(&g, &scen).unwrap(), None);
            }
        }
    }

    #[test]
    fn scenario_json_round_trip() {
        let g = ladder();
        let scen = Scenario::two(
            pair(&g, &[0, 3], &[1, 4], 0, 2),
            pair(&g, &[2, 5], &[2, 4], 0, 2),
        );
        let s = serde_json::to_string(&scen).unwrap();
        let back: Scenario = serde_json::from_str(&s).unwrap();
        assert_eq!(back, scen);
    }
}
