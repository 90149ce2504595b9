//! Vertex-to-cluster assignments and the membership file format.

use crate::error::GraphError;
use std::fmt::Write as _;

pub type ClusterId = u32;

/// A division of vertices `[0, n)` into clusters with dense ids
/// `[0, cluster_count)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    assignment: Vec<ClusterId>,
    cluster_count: usize,
}

impl Partition {
    /// Build from a raw assignment, relabeling cluster ids densely in order
    /// of first appearance (i.e. ordered by smallest member vertex).
    pub fn from_assignment(raw: &[u32]) -> Self {
        let mut remap: std::collections::HashMap<u32, ClusterId> = std::collections::HashMap::new();
        let mut assignment = Vec::with_capacity(raw.len());
        for &c in raw {
            let next = remap.len() as ClusterId;
            let id = *remap.entry(c).or_insert(next);
            assignment.push(id);
        }
        Partition {
            assignment,
            cluster_count: remap.len(),
        }
    }

    pub fn singletons(n: usize) -> Self {
        Partition {
            assignment: (0..n as ClusterId).collect(),
            cluster_count: n,
        }
    }

    pub fn single_cluster(n: usize) -> Self {
        Partition {
            assignment: vec![0; n],
            cluster_count: if n == 0 { 0 } else { 1 },
        }
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    pub fn cluster_count(&self) -> usize {
        self.cluster_count
    }

    pub fn cluster_of(&self, v: u32) -> ClusterId {
        self.assignment[v as usize]
    }

    pub fn assignment(&self) -> &[ClusterId] {
        &self.assignment
    }

    pub fn same_cluster(&self, u: u32, v: u32) -> bool {
        self.assignment[u as usize] == self.assignment[v as usize]
    }

    /// Member lists per cluster, indexed by cluster id.
    pub fn clusters(&self) -> Vec<Vec<u32>> {
        let mut out = vec![Vec::new(); self.cluster_count];
        for (v, &c) in self.assignment.iter().enumerate() {
            out[c as usize].push(v as u32);
        }
        out
    }

    pub fn cluster_sizes(&self) -> Vec<u64> {
        let mut sizes = vec![0u64; self.cluster_count];
        for &c in &self.assignment {
            sizes[c as usize] += 1;
        }
        sizes
    }
}

/// Membership file: one `vertex_id cluster_id` pair per line, sorted by
/// vertex id.
pub fn write_membership(p: &Partition) -> String {
    let mut out = String::new();
    for (v, &c) in p.assignment().iter().enumerate() {
        let _ = writeln!(out, "{v} {c}");
    }
    out
}

pub fn load_membership(text: &str) -> Result<Partition, GraphError> {
    let mut pairs: Vec<(u32, u32)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split_whitespace();
        match (parts.next(), parts.next(), parts.next()) {
            (Some(a), Some(b), None) => {
                let v = a.parse().map_err(|_| GraphError::Parse {
                    line: idx + 1,
                    msg: format!("bad vertex id `{a}`"),
                })?;
                let c = b.parse().map_err(|_| GraphError::Parse {
                    line: idx + 1,
                    msg: format!("bad cluster id `{b}`"),
                })?;
                pairs.push((v, c));
            }
            _ => {
                return Err(GraphError::Parse {
                    line: idx + 1,
                    msg: format!("expected `vertex cluster`, got `{line}`"),
                })
            }
        }
    }
    pairs.sort_unstable();
    for (i, &(v, _)) in pairs.iter().enumerate() {
        if v as usize != i {
            return Err(GraphError::Validation(format!(
                "membership vertex ids are not dense: expected {i}, found {v}"
            )));
        }
    }
    let raw: Vec<u32> = pairs.into_iter().map(|(_, c)| c).collect();
    Ok(Partition::from_assignment(&raw))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dense_relabel_by_first_appearance() {
        let p = Partition::from_assignment(&[7, 7, 3, 3, 7]);
        assert_eq!(p.assignment(), &[0, 0, 1, 1, 0]);
        assert_eq!(p.cluster_count(), 2);
    }

    #[test]
    fn membership_round_trip() {
        let p = Partition::from_assignment(&[0, 1, 1, 0, 2]);
        let text = write_membership(&p);
        assert_eq!(load_membership(&text).unwrap(), p);
    }

    #[test]
    fn sizes_and_clusters() {
        let p = Partition::from_assignment(&[0, 1, 1, 0]);
        assert_eq!(p.cluster_sizes(), vec![2, 2]);
        assert_eq!(p.clusters(), vec![vec![0, 3], vec![1, 2]]);
    }

    #[test]
    fn sparse_vertex_ids_rejected() {
        assert!(load_membership("0 0\n2 1").is_err());
    }
}
