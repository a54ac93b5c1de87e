//! Random test networks: power-law degree sequences realized by a
//! configuration model, exponentially distributed link failure weights
//! normalized so that exactly one link fails, and a fraction of links flagged
//! as carrying no connection capacity.

use rand::distributions::WeightedIndex;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rand_distr::Exp;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Link, Network};

/// Attempts before giving up on drawing a graphical, realizable degree
/// sequence.
pub const MAX_RESAMPLES: usize = 100;
const MAX_MATCHINGS: usize = 200;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenConfig {
    pub nodes: usize,
    /// Degree distribution exponent: P(d) proportional to d^-alpha.
    pub alpha: f64,
    /// Rate of the exponential failure-weight draw (weights are normalized
    /// afterwards, so this only shapes their spread).
    pub lambda: f64,
    /// Probability that a link carries no connection capacity.
    pub p_nocap: f64,
    pub seed: u64,
}

impl GenConfig {
    pub fn new(nodes: usize, seed: u64) -> Self {
        GenConfig {
            nodes,
            alpha: 2.1,
            lambda: 5.0,
            p_nocap: 0.15,
            seed,
        }
    }
}

/// Erdős–Gallai test on a descending degree sequence.
fn graphical(desc: &[usize]) -> bool {
    let n = desc.len();
    let total: usize = desc.iter().sum();
    if total % 2 != 0 {
        return false;
    }
    let mut prefix = 0usize;
    for k in 1..=n {
        prefix += desc[k - 1];
        let tail: usize = desc[k..].iter().map(|&d| d.min(k)).sum();
        if prefix > k * (k - 1) + tail {
            return false;
        }
    }
    true
}

pub fn generate(cfg: &GenConfig) -> Result<Network> {
    if cfg.nodes < 3 {
        return Err(Error::input("need at least 3 nodes"));
    }
    if !(0.0..=1.0).contains(&cfg.p_nocap) {
        return Err(Error::input("p_nocap outside [0, 1]"));
    }
    if cfg.alpha <= 0.0 || cfg.lambda <= 0.0 {
        return Err(Error::input("alpha and lambda must be positive"));
    }
    let n = cfg.nodes;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let weights: Vec<f64> = (1..n).map(|d| (d as f64).powf(-cfg.alpha)).collect();
    let degree_dist =
        WeightedIndex::new(&weights).map_err(|e| Error::input(format!("bad degree weights: {e}")))?;

    for _ in 0..MAX_RESAMPLES {
        let degrees: Vec<usize> = (0..n).map(|_| degree_dist.sample(&mut rng) + 1).collect();
        let mut desc = degrees.clone();
        desc.sort_unstable_by(|a, b| b.cmp(a));
        if !graphical(&desc) {
            continue;
        }
        // configuration model: pair stubs uniformly, rejecting self-loops and
        // parallel links
        'matching: for _ in 0..MAX_MATCHINGS {
            let mut stubs: Vec<usize> = degrees
                .iter()
                .enumerate()
                .flat_map(|(v, &d)| std::iter::repeat(v).take(d))
                .collect();
            stubs.shuffle(&mut rng);
            let mut seen = std::collections::HashSet::new();
            let mut edges = Vec::with_capacity(stubs.len() / 2);
            for pair in stubs.chunks(2) {
                let (a, b) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
                if a == b || !seen.insert((a, b)) {
                    continue 'matching;
                }
                edges.push((a, b));
            }
            edges.sort_unstable();
            // exponential failure weights, normalized before capacities are
            // drawn so the draw order is part of the format
            let exp = Exp::new(cfg.lambda)
                .map_err(|e| Error::input(format!("bad lambda: {e}")))?;
            let mut probs: Vec<f64> = edges.iter().map(|_| exp.sample(&mut rng)).collect();
            let total: f64 = probs.iter().sum();
            if total <= 0.0 {
                continue;
            }
            for p in &mut probs {
                *p /= total;
            }
            let links = edges
                .iter()
                .zip(&probs)
                .map(|(&(a, b), &p)| Link {
                    a,
                    b,
                    failure_probability: p,
                    has_capacity: !rng.gen_bool(cfg.p_nocap),
                })
                .collect();
            return Network::new(n, links);
        }
    }
    Err(Error::generation(format!(
        "no realizable degree sequence in {MAX_RESAMPLES} attempts"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn erdos_gallai_basics() {
        assert!(graphical(&[2, 2, 2]));
        assert!(graphical(&[3, 3, 3, 3]));
        assert!(graphical(&[3, 1, 1, 1])); // star
        assert!(!graphical(&[3, 1, 1])); // odd sum
        assert!(!graphical(&[4, 4, 2, 1, 1])); // fails the k=2 bound
        assert!(graphical(&[3, 2, 2, 2, 1]));
    }

    #[test]
    fn generation_is_deterministic() {
        let cfg = GenConfig::new(12, 42);
        let a = generate(&cfg).unwrap();
        let b = generate(&cfg).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        let c = generate(&GenConfig::new(12, 43)).unwrap();
        assert_ne!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&c).unwrap());
    }

    #[test]
    fn generated_networks_are_well_formed() {
        for seed in 0..30 {
            let cfg = GenConfig::new(12, seed);
            let net = generate(&cfg).unwrap();
            // normalized failure weights
            let sum: f64 = net.links().iter().map(|l| l.failure_probability).sum();
            assert!((sum - 1.0).abs() < 1e-9, "seed {seed} sum {sum}");
            // simple graph, degrees within range
            let mut seen = std::collections::HashSet::new();
            let mut deg = vec![0usize; net.node_count()];
            for l in net.links() {
                assert_ne!(l.a, l.b);
                assert!(seen.insert((l.a.min(l.b), l.a.max(l.b))));
                deg[l.a] += 1;
                deg[l.b] += 1;
            }
            for &d in &deg {
                assert!(d >= 1 && d < net.node_count());
            }
        }
    }

    #[test]
    fn degree_distribution_is_heavy_at_one() {
        // with alpha = 2.1 well over half the nodes should have degree 1
        let mut ones = 0usize;
        let mut total = 0usize;
        for seed in 0..40 {
            let net = generate(&GenConfig::new(20, 1000 + seed)).unwrap();
            let mut deg = vec![0usize; net.node_count()];
            for l in net.links() {
                deg[l.a] += 1;
                deg[l.b] += 1;
            }
            ones += deg.iter().filter(|&&d| d == 1).count();
            total += deg.len();
        }
        let frac = ones as f64 / total as f64;
        assert!(frac > 0.5, "degree-1 fraction {frac}");
    }

    #[test]
    fn some_links_lack_capacity() {
        let mut nocap = 0usize;
        let mut total = 0usize;
        for seed in 0..40 {
            let net = generate(&GenConfig::new(20, 2000 + seed)).unwrap();
            nocap += net.links().iter().filter(|l| !l.has_capacity).count();
            total += net.link_count();
        }
        let frac = nocap as f64 / total as f64;
        assert!((frac - 0.15).abs() < 0.06, "no-capacity fraction {frac}");
    }

    #[test]
    fn rejects_bad_configs() {
        assert!(generate(&GenConfig::new(2, 0)).is_err());
        let mut cfg = GenConfig::new(10, 0);
        cfg.p_nocap = 1.5;
        assert!(generate(&cfg).is_err());
    }
}
