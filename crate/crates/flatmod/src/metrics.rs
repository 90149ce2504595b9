//! Pairwise-agreement evaluation of a found clustering against ground truth.
//!
//! Every unordered vertex pair is either together or apart in each
//! partition; counting agreements gives a 2x2 confusion matrix which the
//! Matthews correlation coefficient turns into a single number. Degree
//! buckets restrict the pair universe so performance can be broken down by
//! vertex degree.

use crate::error::MetricError;
use crate::graph::Graph;
use crate::partition::Partition;

/// Confusion counts over unordered vertex pairs. "Positive" means together
/// in the ground truth.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PairConfusion {
    pub tp: u64,
    pub fp: u64,
    pub fn_: u64,
    pub tn: u64,
}

impl PairConfusion {
    pub fn total(&self) -> u64 {
        self.tp + self.fp + self.fn_ + self.tn
    }

    pub fn add_pair(&mut self, together_truth: bool, together_found: bool) {
        match (together_truth, together_found) {
            (true, true) => self.tp += 1,
            (false, true) => self.fp += 1,
            (true, false) => self.fn_ += 1,
            (false, false) => self.tn += 1,
        }
    }

    pub fn merge(&mut self, other: &PairConfusion) {
        self.tp += other.tp;
        self.fp += other.fp;
        self.fn_ += other.fn_;
        self.tn += other.tn;
    }
}

fn choose2(x: u64) -> u64 {
    x * (x - 1) / 2
}

/// Confusion counts over all `C(n, 2)` pairs, computed from the contingency
/// table between the two partitions.
pub fn pair_confusion(truth: &Partition, found: &Partition) -> Result<PairConfusion, MetricError> {
    if truth.len() != found.len() {
        return Err(MetricError::VertexSetMismatch {
            truth: truth.len(),
            found: found.len(),
        });
    }
    let n = truth.len() as u64;
    let mut cells: std::collections::HashMap<(u32, u32), u64> = std::collections::HashMap::new();
    for v in 0..truth.len() as u32 {
        *cells.entry((truth.cluster_of(v), found.cluster_of(v))).or_insert(0) += 1;
    }
    let tp: u64 = cells.values().map(|&c| choose2(c)).sum();
    let together_truth: u64 = truth.cluster_sizes().iter().map(|&s| choose2(s)).sum();
    let together_found: u64 = found.cluster_sizes().iter().map(|&s| choose2(s)).sum();
    let fp = together_found - tp;
    let fn_ = together_truth - tp;
    let tn = choose2(n) - tp - fp - fn_;
    Ok(PairConfusion { tp, fp, fn_, tn })
}

/// Matthews correlation coefficient in `[-1, 1]`. Any zero marginal makes
/// the quotient undefined; the conventional value 0 is returned then.
pub fn mcc(c: &PairConfusion) -> f64 {
    let (tp, fp, fn_, tn) = (c.tp as i128, c.fp as i128, c.fn_ as i128, c.tn as i128);
    let marginals = [tp + fp, tp + fn_, tn + fp, tn + fn_];
    if marginals.contains(&0) {
        return 0.0;
    }
    let numerator = (tp * tn - fp * fn_) as f64;
    let denominator = marginals.iter().map(|&m| m as f64).product::<f64>().sqrt();
    numerator / denominator
}

/// Consecutive degree ranges, each covering at most `cap` vertices unless a
/// single degree class alone exceeds the cap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeBucket {
    pub lo: u32,
    pub hi: u32,
    pub vertices: Vec<u32>,
}

/// Walk distinct degrees ascending, closing the current bucket before adding
/// a degree that would push it over `cap`.
pub fn degree_buckets(g: &Graph, cap: usize) -> Vec<DegreeBucket> {
    assert!(cap >= 1);
    let mut by_degree: std::collections::BTreeMap<u32, Vec<u32>> = std::collections::BTreeMap::new();
    for v in 0..g.vertex_count() as u32 {
        by_degree.entry(g.degree(v)).or_default().push(v);
    }
    let mut buckets = Vec::new();
    let mut current: Option<DegreeBucket> = None;
    for (degree, vertices) in by_degree {
        match current.as_mut() {
            Some(bucket) if bucket.vertices.len() + vertices.len() <= cap => {
                bucket.hi = degree;
                bucket.vertices.extend(vertices);
            }
            Some(_) => {
                buckets.extend(current.take());
                current = Some(DegreeBucket { lo: degree, hi: degree, vertices });
            }
            None => {
                current = Some(DegreeBucket { lo: degree, hi: degree, vertices });
            }
        }
    }
    buckets.extend(current);
    buckets
}

/// Confusion counts over exactly the unordered pairs whose degrees satisfy
/// the predicate in either orientation; direct enumeration.
pub fn restricted_confusion<F>(
    truth: &Partition,
    found: &Partition,
    g: &Graph,
    predicate: F,
) -> Result<PairConfusion, MetricError>
where
    F: Fn(u32, u32) -> bool,
{
    check_cover(truth, found, g)?;
    let n = g.vertex_count() as u32;
    let mut confusion = PairConfusion::default();
    for u in 0..n {
        for v in (u + 1)..n {
            let (du, dv) = (g.degree(u), g.degree(v));
            if predicate(du, dv) || predicate(dv, du) {
                confusion.add_pair(truth.same_cluster(u, v), found.same_cluster(u, v));
            }
        }
    }
    Ok(confusion)
}

/// Confusion over pairs with one endpoint of degree at most `low_cut` and
/// the other of degree at least `high_cut`. Enumerates the cross product of
/// the two qualifying vertex sets, which is fast when the cuts are disjoint.
pub fn low_high_confusion(
    truth: &Partition,
    found: &Partition,
    g: &Graph,
    low_cut: u32,
    high_cut: u32,
) -> Result<PairConfusion, MetricError> {
    check_cover(truth, found, g)?;
    if low_cut >= high_cut {
        // overlapping cuts need the general unordered-pair treatment
        return restricted_confusion(truth, found, g, |du, dv| du <= low_cut && dv >= high_cut);
    }
    let low: Vec<u32> = (0..g.vertex_count() as u32)
        .filter(|&v| g.degree(v) <= low_cut)
        .collect();
    let high: Vec<u32> = (0..g.vertex_count() as u32)
        .filter(|&v| g.degree(v) >= high_cut)
        .collect();
    let mut confusion = PairConfusion::default();
    for &u in &low {
        for &v in &high {
            confusion.add_pair(truth.same_cluster(u, v), found.same_cluster(u, v));
        }
    }
    Ok(confusion)
}

fn check_cover(truth: &Partition, found: &Partition, g: &Graph) -> Result<(), MetricError> {
    if truth.len() != found.len() || truth.len() != g.vertex_count() {
        return Err(MetricError::VertexSetMismatch {
            truth: truth.len(),
            found: found.len(),
        });
    }
    Ok(())
}

/// Lower-triangular matrix of per-bucket-pair MCC values.
#[derive(Debug, Clone)]
pub struct BucketMatrix {
    pub buckets: Vec<DegreeBucket>,
    /// `cells[i][j]` for `i >= j`: confusion and MCC over pairs with one
    /// endpoint in bucket `i` and the other in bucket `j`.
    pub cells: Vec<Vec<(PairConfusion, f64)>>,
}

/// MCC per bucket pair: cell `(i, j)` covers pairs with one endpoint in each
/// bucket; the diagonal covers pairs within a bucket.
pub fn bucket_mcc_matrix(
    truth: &Partition,
    found: &Partition,
    g: &Graph,
    buckets: &[DegreeBucket],
) -> Result<BucketMatrix, MetricError> {
    check_cover(truth, found, g)?;
    let mut cells = Vec::with_capacity(buckets.len());
    for (i, bucket_i) in buckets.iter().enumerate() {
        let mut row = Vec::with_capacity(i + 1);
        for bucket_j in buckets.iter().take(i + 1) {
            let mut confusion = PairConfusion::default();
            if std::ptr::eq(bucket_i, bucket_j) {
                let vs = &bucket_i.vertices;
                for (a, &u) in vs.iter().enumerate() {
                    for &v in &vs[a + 1..] {
                        confusion.add_pair(truth.same_cluster(u, v), found.same_cluster(u, v));
                    }
                }
            } else {
                for &u in &bucket_i.vertices {
                    for &v in &bucket_j.vertices {
                        confusion.add_pair(truth.same_cluster(u, v), found.same_cluster(u, v));
                    }
                }
            }
            row.push((confusion, mcc(&confusion)));
        }
        cells.push(row);
    }
    Ok(BucketMatrix {
        buckets: buckets.to_vec(),
        cells,
    })
}

impl BucketMatrix {
    /// CSV rows: `bucket_i_lo,bucket_i_hi,bucket_j_lo,bucket_j_hi,pair_count,mcc`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("bucket_i_lo,bucket_i_hi,bucket_j_lo,bucket_j_hi,pair_count,mcc\n");
        for (i, row) in self.cells.iter().enumerate() {
            for (j, (confusion, value)) in row.iter().enumerate() {
                out.push_str(&format!(
                    "{},{},{},{},{},{:.6}\n",
                    self.buckets[i].lo,
                    self.buckets[i].hi,
                    self.buckets[j].lo,
                    self.buckets[j].hi,
                    confusion.total(),
                    value
                ));
            }
        }
        out
    }
}
