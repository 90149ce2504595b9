//! Partition quality scores: resolution modularity and flat modularity.
//!
//! Both scores are sums over all ordered vertex pairs `(v, w)` in the same
//! cluster, including the diagonal `v = w`. For a partition into clusters
//! with internal edge count `m_c`, degree sum `a_c`, and size `n_c`:
//!
//! - resolution modularity: `Q_r = sum_c [ r * 2*m_c / 2L - (a_c / 2L)^2 ]`
//! - flat modularity: `Qf_R = sum_c [ 2*m_c / 2L - R * n_c^2 / (2L)^2 ]`
//!
//! All comparisons are done in exact integer-scaled form. The resolution is a
//! two-decimal rational `p/100`, so resolution scores carry the fixed
//! denominator `100 * (2L)^2` and flat scores carry `(2L)^2`. Equal
//! partitions under the same variant always produce identical numerators,
//! which keeps the greedy climb's tie-breaking deterministic.

use crate::error::ScoreError;
use crate::graph::Graph;
use crate::greedy::MergeState;
use crate::partition::{ClusterId, Partition};

/// Resolution parameter stored exactly as hundredths: `r = hundredths / 100`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Resolution(u32);

impl Resolution {
    pub fn from_hundredths(p: u32) -> Option<Self> {
        (p <= 100).then_some(Resolution(p))
    }

    /// Accepts values representable exactly as `p/100`, e.g. `0.39`.
    pub fn from_f64(r: f64) -> Option<Self> {
        let p = (r * 100.0).round();
        if (0.0..=100.0).contains(&p) && (p / 100.0 - r).abs() < 1e-9 {
            Some(Resolution(p as u32))
        } else {
            None
        }
    }

    pub fn hundredths(self) -> u32 {
        self.0
    }

    pub fn value(self) -> f64 {
        self.0 as f64 / 100.0
    }
}

impl std::fmt::Display for Resolution {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:.2}", self.value())
    }
}

/// Which score the greedy climb maximizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScoreVariant {
    /// `Q_r` with resolution `r`.
    Standard { r: Resolution },
    /// `Qf_R` with a uniform penalty multiplier `R`.
    Flat { penalty: u64 },
}

impl ScoreVariant {
    pub fn standard(r: f64) -> Option<Self> {
        Resolution::from_f64(r).map(|r| ScoreVariant::Standard { r })
    }

    pub fn flat(penalty: u64) -> Self {
        ScoreVariant::Flat { penalty }
    }

    /// Fixed score denominator for this variant on a graph with `2L` stubs.
    pub fn denominator(self, two_l: u64) -> i128 {
        let d = (two_l as i128) * (two_l as i128);
        match self {
            ScoreVariant::Standard { .. } => 100 * d,
            ScoreVariant::Flat { .. } => d,
        }
    }

    /// Numerator contribution of one cluster.
    fn cluster_term(self, two_l: u64, internal_edges: u64, degree_sum: u64, size: u64) -> i128 {
        let two_l = two_l as i128;
        let m = internal_edges as i128;
        match self {
            ScoreVariant::Standard { r } => {
                let p = r.hundredths() as i128;
                let a = degree_sum as i128;
                p * two_l * 2 * m - 100 * a * a
            }
            ScoreVariant::Flat { penalty } => {
                let n = size as i128;
                two_l * 2 * m - (penalty as i128) * n * n
            }
        }
    }

    /// Exact merge delta numerator for combining clusters `i` and `j` with
    /// `e_ij` connecting edges, over `denominator(two_l)`.
    pub fn delta_numerator(
        self,
        two_l: u64,
        inter_edges: u64,
        degree_i: u64,
        degree_j: u64,
        size_i: u64,
        size_j: u64,
    ) -> i128 {
        let two_l = two_l as i128;
        let e = inter_edges as i128;
        match self {
            ScoreVariant::Standard { r } => {
                let p = r.hundredths() as i128;
                2 * p * e * two_l - 200 * (degree_i as i128) * (degree_j as i128)
            }
            ScoreVariant::Flat { penalty } => {
                2 * e * two_l - 2 * (penalty as i128) * (size_i as i128) * (size_j as i128)
            }
        }
    }
}

/// An exact score: `numerator / denominator` with the variant's fixed
/// denominator. Comparisons between scores of the same variant on the same
/// graph reduce to integer comparisons of the numerators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScaledScore {
    pub numerator: i128,
    pub denominator: i128,
}

impl ScaledScore {
    pub fn value(self) -> f64 {
        self.numerator as f64 / self.denominator as f64
    }
}

/// Evaluate the chosen score for a partition.
pub fn score(g: &Graph, p: &Partition, variant: ScoreVariant) -> Result<ScaledScore, ScoreError> {
    if p.len() != g.vertex_count() {
        return Err(ScoreError::VertexCountMismatch {
            partition: p.len(),
            graph: g.vertex_count(),
        });
    }
    let mut internal = vec![0u64; p.cluster_count()];
    for &(u, v) in g.edges() {
        if p.same_cluster(u, v) {
            internal[p.cluster_of(u) as usize] += 1;
        }
    }
    let mut degree_sum = vec![0u64; p.cluster_count()];
    for v in 0..g.vertex_count() as u32 {
        degree_sum[p.cluster_of(v) as usize] += g.degree(v) as u64;
    }
    let sizes = p.cluster_sizes();

    let two_l = g.two_l();
    let mut numerator = 0i128;
    for c in 0..p.cluster_count() {
        numerator += variant.cluster_term(two_l, internal[c], degree_sum[c], sizes[c]);
    }
    Ok(ScaledScore {
        numerator,
        denominator: variant.denominator(two_l),
    })
}

/// Resolution modularity `Q_r` as a float, with the exact form alongside.
pub fn modularity(g: &Graph, p: &Partition, r: Resolution) -> Result<(f64, ScaledScore), ScoreError> {
    let s = score(g, p, ScoreVariant::Standard { r })?;
    Ok((s.value(), s))
}

/// Flat modularity `Qf_R` as a float, with the exact form alongside.
pub fn flat_modularity(
    g: &Graph,
    p: &Partition,
    penalty: u64,
) -> Result<(f64, ScaledScore), ScoreError> {
    let s = score(g, p, ScoreVariant::Flat { penalty })?;
    Ok((s.value(), s))
}

/// Exact score change from merging live clusters `i` and `j`, over the
/// variant's fixed denominator.
pub fn merge_delta(
    state: &MergeState,
    i: ClusterId,
    j: ClusterId,
    variant: ScoreVariant,
) -> Result<ScaledScore, ScoreError> {
    if !state.is_live(i) {
        return Err(ScoreError::UnknownCluster(i));
    }
    if !state.is_live(j) {
        return Err(ScoreError::UnknownCluster(j));
    }
    let numerator = variant.delta_numerator(
        state.two_l(),
        state.inter_edges(i, j),
        state.degree_sum(i),
        state.degree_sum(j),
        state.size(i),
        state.size(j),
    );
    Ok(ScaledScore {
        numerator,
        denominator: variant.denominator(state.two_l()),
    })
}
