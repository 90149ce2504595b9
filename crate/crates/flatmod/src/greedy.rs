//! Greedy agglomerative clustering.
//!
//! Starting from singletons, repeatedly merge the connected cluster pair with
//! the largest exact score improvement, stopping as soon as no merge strictly
//! improves the score. Only connected pairs are candidates: a merge of two
//! disconnected clusters only pays the penalty term, so its delta is negative
//! under both variants.
//!
//! Ties are broken by sorting: among equal deltas the pair with the smaller
//! cluster id wins, then the smaller partner id. A merged cluster keeps the
//! smaller of its two parents' ids, so the order is total and reruns are
//! byte-identical.

use crate::error::TraceError;
use crate::graph::Graph;
use crate::partition::{ClusterId, Partition};
use crate::scoring::{score, ScaledScore, ScoreVariant};
use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashMap};
use std::fmt::Write as _;

/// Per-cluster aggregates during a climb: degree sums, sizes, and
/// inter-cluster edge counts for connected pairs.
#[derive(Debug, Clone)]
pub struct MergeState {
    two_l: u64,
    live: Vec<bool>,
    degree_sum: Vec<u64>,
    size: Vec<u64>,
    // neighbors[c] maps adjacent cluster -> number of connecting edges
    neighbors: Vec<HashMap<ClusterId, u64>>,
    version: Vec<u32>,
    live_count: usize,
}

impl MergeState {
    /// All vertices in their own cluster; cluster ids equal vertex ids.
    pub fn from_singletons(g: &Graph) -> Self {
        let n = g.vertex_count();
        let mut neighbors = vec![HashMap::new(); n];
        for &(u, v) in g.edges() {
            neighbors[u as usize].insert(v, 1u64);
            neighbors[v as usize].insert(u, 1u64);
        }
        MergeState {
            two_l: g.two_l(),
            live: vec![true; n],
            degree_sum: g.degrees().iter().map(|&d| d as u64).collect(),
            size: vec![1; n],
            neighbors,
            version: vec![0; n],
            live_count: n,
        }
    }

    pub fn two_l(&self) -> u64 {
        self.two_l
    }

    pub fn is_live(&self, c: ClusterId) -> bool {
        (c as usize) < self.live.len() && self.live[c as usize]
    }

    pub fn live_count(&self) -> usize {
        self.live_count
    }

    pub fn degree_sum(&self, c: ClusterId) -> u64 {
        self.degree_sum[c as usize]
    }

    pub fn size(&self, c: ClusterId) -> u64 {
        self.size[c as usize]
    }

    pub fn version(&self, c: ClusterId) -> u32 {
        self.version[c as usize]
    }

    /// Edges between clusters `i` and `j`; zero when disconnected.
    pub fn inter_edges(&self, i: ClusterId, j: ClusterId) -> u64 {
        self.neighbors[i as usize].get(&j).copied().unwrap_or(0)
    }

    pub fn live_clusters(&self) -> impl Iterator<Item = ClusterId> + '_ {
        self.live
            .iter()
            .enumerate()
            .filter(|(_, &l)| l)
            .map(|(c, _)| c as ClusterId)
    }

    pub fn neighbors_of(&self, c: ClusterId) -> impl Iterator<Item = (ClusterId, u64)> + '_ {
        self.neighbors[c as usize].iter().map(|(&k, &e)| (k, e))
    }

    /// Merge `i` and `j`; the smaller id survives and is returned. Versions
    /// of both ids are bumped so queued candidates referencing them go stale.
    pub fn merge(&mut self, i: ClusterId, j: ClusterId) -> ClusterId {
        assert!(self.is_live(i) && self.is_live(j) && i != j);
        let (keep, gone) = if i < j { (i, j) } else { (j, i) };
        let (ku, gu) = (keep as usize, gone as usize);

        self.degree_sum[ku] += self.degree_sum[gu];
        self.size[ku] += self.size[gu];
        self.live[gu] = false;
        self.live_count -= 1;
        self.version[ku] += 1;
        self.version[gu] += 1;

        let gone_neighbors = std::mem::take(&mut self.neighbors[gu]);
        for (c, e) in gone_neighbors {
            let cu = c as usize;
            self.neighbors[cu].remove(&gone);
            if c == keep {
                continue;
            }
            *self.neighbors[ku].entry(c).or_insert(0) += e;
            *self.neighbors[cu].entry(keep).or_insert(0) += e;
        }
        self.neighbors[ku].remove(&keep);
        keep
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MergeRecord {
    pub step: usize,
    pub i: ClusterId,
    pub j: ClusterId,
    pub delta_num: i128,
    pub delta_den: i128,
}

pub type MergeTrace = Vec<MergeRecord>;

#[derive(Debug, Clone)]
pub struct GreedyResult {
    pub partition: Partition,
    pub trace: MergeTrace,
    /// Exact final score (singleton score plus all merge deltas).
    pub score: ScaledScore,
}

// Heap entry; max order is (delta desc, i asc, j asc), with i < j.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Candidate {
    delta: i128,
    i: ClusterId,
    j: ClusterId,
    version_i: u32,
    version_j: u32,
}

impl Ord for Candidate {
    fn cmp(&self, other: &Self) -> Ordering {
        self.delta
            .cmp(&other.delta)
            .then_with(|| other.i.cmp(&self.i))
            .then_with(|| other.j.cmp(&self.j))
    }
}

impl PartialOrd for Candidate {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn candidate(state: &MergeState, a: ClusterId, b: ClusterId, variant: ScoreVariant) -> Candidate {
    let (i, j) = if a < b { (a, b) } else { (b, a) };
    let delta = variant.delta_numerator(
        state.two_l(),
        state.inter_edges(i, j),
        state.degree_sum(i),
        state.degree_sum(j),
        state.size(i),
        state.size(j),
    );
    Candidate {
        delta,
        i,
        j,
        version_i: state.version(i),
        version_j: state.version(j),
    }
}

/// Run the greedy climb under the chosen score variant.
pub fn greedy_cluster(g: &Graph, variant: ScoreVariant) -> GreedyResult {
    let n = g.vertex_count();
    let mut state = MergeState::from_singletons(g);
    let den = variant.denominator(state.two_l());

    let mut heap: BinaryHeap<Candidate> = g
        .edges()
        .iter()
        .map(|&(u, v)| candidate(&state, u, v, variant))
        .collect();

    let mut assignment: Vec<ClusterId> = (0..n as ClusterId).collect();
    let mut members: Vec<Vec<u32>> = (0..n as u32).map(|v| vec![v]).collect();

    let mut start = score(g, &Partition::singletons(n), variant).expect("singleton score");
    let mut trace = MergeTrace::new();

    while let Some(cand) = heap.pop() {
        if !state.is_live(cand.i)
            || !state.is_live(cand.j)
            || state.version(cand.i) != cand.version_i
            || state.version(cand.j) != cand.version_j
        {
            continue; // stale entry
        }
        if cand.delta <= 0 {
            break; // strict improvement required
        }

        trace.push(MergeRecord {
            step: trace.len(),
            i: cand.i,
            j: cand.j,
            delta_num: cand.delta,
            delta_den: den,
        });
        start.numerator += cand.delta;

        let keep = state.merge(cand.i, cand.j);
        let gone = if keep == cand.i { cand.j } else { cand.i };
        let moved = std::mem::take(&mut members[gone as usize]);
        for &v in &moved {
            assignment[v as usize] = keep;
        }
        members[keep as usize].extend(moved);

        let fresh: Vec<Candidate> = state
            .neighbors_of(keep)
            .map(|(c, _)| candidate(&state, keep, c, variant))
            .collect();
        heap.extend(fresh);
    }

    GreedyResult {
        partition: Partition::from_assignment(&assignment),
        trace,
        score: start,
    }
}

/// Reapply a recorded merge sequence, checking each step against the current
/// aggregates. Produces the identical final partition.
pub fn replay_trace(g: &Graph, trace: &MergeTrace) -> Result<Partition, TraceError> {
    let n = g.vertex_count();
    let mut state = MergeState::from_singletons(g);
    let mut assignment: Vec<ClusterId> = (0..n as ClusterId).collect();
    let mut members: Vec<Vec<u32>> = (0..n as u32).map(|v| vec![v]).collect();

    for record in trace {
        for c in [record.i, record.j] {
            if !state.is_live(c) {
                return Err(TraceError::UnknownCluster {
                    step: record.step,
                    cluster: c,
                });
            }
        }
        let keep = state.merge(record.i, record.j);
        let gone = if keep == record.i { record.j } else { record.i };
        let moved = std::mem::take(&mut members[gone as usize]);
        for &v in &moved {
            assignment[v as usize] = keep;
        }
        members[keep as usize].extend(moved);
    }
    Ok(Partition::from_assignment(&assignment))
}

/// Trace file: one `step i j delta_num delta_den` line per merge.
pub fn write_trace(trace: &MergeTrace) -> String {
    let mut out = String::new();
    for r in trace {
        let _ = writeln!(
            out,
            "{} {} {} {} {}",
            r.step, r.i, r.j, r.delta_num, r.delta_den
        );
    }
    out
}

pub fn load_trace(text: &str) -> Result<MergeTrace, String> {
    let mut trace = MergeTrace::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 5 {
            return Err(format!("line {}: expected 5 fields", idx + 1));
        }
        let parse = |s: &str| -> Result<i128, String> {
            s.parse().map_err(|_| format!("line {}: bad number `{s}`", idx + 1))
        };
        trace.push(MergeRecord {
            step: parse(fields[0])? as usize,
            i: parse(fields[1])? as ClusterId,
            j: parse(fields[2])? as ClusterId,
            delta_num: parse(fields[3])?,
            delta_den: parse(fields[4])?,
        });
    }
    Ok(trace)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::load_edge_list;
    use crate::scoring::{merge_delta, modularity, Resolution};

    fn barbell() -> Graph {
        load_edge_list("0 1\n0 2\n1 2\n3 4\n3 5\n4 5\n2 3").unwrap()
    }

    fn standard(r: f64) -> ScoreVariant {
        ScoreVariant::standard(r).unwrap()
    }

    #[test]
    fn barbell_recovers_triangles() {
        let g = barbell();
        let result = greedy_cluster(&g, standard(1.0));
        assert_eq!(result.partition.assignment(), &[0, 0, 0, 1, 1, 1]);
        // first merge is a degree-2/degree-2 triangle edge with delta 20/196
        assert_eq!(result.trace[0].i, 0);
        assert_eq!(result.trace[0].j, 1);
        assert_eq!(
            result.trace[0].delta_num * 196,
            20 * result.trace[0].delta_den
        );
        let (q, exact) = modularity(&g, &result.partition, Resolution::from_f64(1.0).unwrap()).unwrap();
        assert_eq!(exact, result.score);
        assert!((q - 5.0 / 14.0).abs() < 1e-12);
    }

    #[test]
    fn four_cycle_tie_break() {
        let g = load_edge_list("0 1\n1 2\n2 3\n0 3").unwrap();
        let result = greedy_cluster(&g, standard(1.0));
        // all four edges tie; lowest pair (0, 1) merges first
        assert_eq!((result.trace[0].i, result.trace[0].j), (0, 1));
    }

    #[test]
    fn flat_large_penalty_keeps_singletons() {
        let g = barbell();
        let result = greedy_cluster(&g, ScoreVariant::flat(2 * g.edge_count() as u64));
        assert!(result.trace.is_empty());
        assert_eq!(result.partition, Partition::singletons(6));
    }

    #[test]
    fn merge_state_aggregates() {
        let g = barbell();
        let mut state = MergeState::from_singletons(&g);
        assert_eq!(state.inter_edges(2, 3), 1);
        let keep = state.merge(0, 1);
        assert_eq!(keep, 0);
        assert_eq!(state.degree_sum(0), 4);
        assert_eq!(state.size(0), 2);
        assert_eq!(state.inter_edges(0, 2), 2);
        assert!(!state.is_live(1));
        let degree_total: u64 = state.live_clusters().map(|c| state.degree_sum(c)).sum();
        assert_eq!(degree_total, g.two_l());
        let size_total: u64 = state.live_clusters().map(|c| state.size(c)).sum();
        assert_eq!(size_total, 6);
    }

    #[test]
    fn merge_delta_errors_on_dead_cluster() {
        let g = barbell();
        let mut state = MergeState::from_singletons(&g);
        state.merge(0, 1);
        assert!(merge_delta(&state, 1, 2, standard(1.0)).is_err());
    }

    #[test]
    fn replay_reproduces_partition() {
        let g = barbell();
        let result = greedy_cluster(&g, standard(1.0));
        let replayed = replay_trace(&g, &result.trace).unwrap();
        assert_eq!(replayed, result.partition);
    }

    #[test]
    fn replay_empty_trace_is_singletons() {
        let g = barbell();
        let replayed = replay_trace(&g, &MergeTrace::new()).unwrap();
        assert_eq!(replayed, Partition::singletons(6));
    }

    #[test]
    fn replay_unknown_cluster() {
        let g = barbell();
        let trace = vec![MergeRecord {
            step: 0,
            i: 0,
            j: 99,
            delta_num: 1,
            delta_den: 196,
        }];
        assert!(matches!(
            replay_trace(&g, &trace),
            Err(TraceError::UnknownCluster { .. })
        ));
    }

    #[test]
    fn trace_round_trip() {
        let g = barbell();
        let result = greedy_cluster(&g, standard(0.39));
        let text = write_trace(&result.trace);
        assert_eq!(load_trace(&text).unwrap(), result.trace);
    }

    #[test]
    fn determinism() {
        let g = barbell();
        let a = greedy_cluster(&g, standard(0.39));
        let b = greedy_cluster(&g, standard(0.39));
        assert_eq!(a.partition, b.partition);
        assert_eq!(a.trace, b.trace);
    }
}
