//! Shared helpers for the integration test suites: deterministic random
//! graphs and partitions, and independent brute-force reference
//! implementations of the scores and pair confusion counts.

use flatmod::graph::Graph;
use flatmod::metrics::PairConfusion;
use flatmod::partition::Partition;
use flatmod::scoring::{ScaledScore, ScoreVariant};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Erdos-Renyi-style graph with at least one edge.
pub fn random_graph(rng: &mut ChaCha8Rng, max_n: usize) -> Graph {
    loop {
        let n = rng.gen_range(3..=max_n);
        let p = rng.gen_range(0.1..0.6);
        let mut edges = Vec::new();
        for u in 0..n as u32 {
            for v in (u + 1)..n as u32 {
                if rng.gen_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        if !edges.is_empty() {
            return Graph::from_edges(n, &edges).unwrap();
        }
    }
}

/// Random d-regular simple graph via stub matching with rejection.
pub fn random_regular_graph(rng: &mut ChaCha8Rng, n: usize, d: usize) -> Graph {
    assert!(n * d % 2 == 0 && d < n);
    'outer: loop {
        let mut stubs: Vec<u32> = (0..n as u32).flat_map(|v| std::iter::repeat(v).take(d)).collect();
        stubs.shuffle(rng);
        let mut seen = std::collections::HashSet::new();
        let mut edges = Vec::new();
        for pair in stubs.chunks(2) {
            let (u, v) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
            if u == v || !seen.insert((u, v)) {
                continue 'outer;
            }
            edges.push((u, v));
        }
        return Graph::from_edges(n, &edges).unwrap();
    }
}

pub fn random_partition(rng: &mut ChaCha8Rng, n: usize) -> Partition {
    let k = rng.gen_range(1..=n as u32);
    let raw: Vec<u32> = (0..n).map(|_| rng.gen_range(0..k)).collect();
    Partition::from_assignment(&raw)
}

/// Direct double-sum evaluation of Eq. (1)/(2)/(4) over ordered vertex
/// pairs (diagonal included), in the same scaled-integer form as
/// `scoring::score`. Deliberately naive: O(n^2) with adjacency lookups.
pub fn brute_force_score(g: &Graph, p: &Partition, variant: ScoreVariant) -> ScaledScore {
    let two_l = g.two_l() as i128;
    let n = g.vertex_count() as u32;
    let mut numerator = 0i128;
    for v in 0..n {
        for w in 0..n {
            if !p.same_cluster(v, w) {
                continue;
            }
            let a = if v != w && g.has_edge(v, w) { 1i128 } else { 0 };
            numerator += match variant {
                ScoreVariant::Standard { r } => {
                    let pr = r.hundredths() as i128;
                    let kv = g.degree(v) as i128;
                    let kw = g.degree(w) as i128;
                    pr * two_l * a - 100 * kv * kw
                }
                ScoreVariant::Flat { penalty } => two_l * a - penalty as i128,
            };
        }
    }
    ScaledScore { numerator, denominator: variant.denominator(g.two_l()) }
}

/// Pair confusion by direct enumeration of all unordered vertex pairs.
pub fn brute_force_confusion(truth: &Partition, found: &Partition) -> PairConfusion {
    let n = truth.len() as u32;
    let mut c = PairConfusion::default();
    for u in 0..n {
        for v in (u + 1)..n {
            c.add_pair(truth.same_cluster(u, v), found.same_cluster(u, v));
        }
    }
    c
}
