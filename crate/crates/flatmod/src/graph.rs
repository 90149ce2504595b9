//! Undirected simple-graph representation and edge-list ingestion.
//!
//! Vertices carry dense ids in `[0, n)`. The structure stores the edge list,
//! per-vertex sorted adjacency, degrees, and the edge count `L`. Graphs are
//! immutable after construction and safe to share across threads.

use crate::error::GraphError;
use std::fmt::Write as _;

pub type VertexId = u32;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(VertexId, VertexId)>,
    adjacency: Vec<Vec<VertexId>>,
    degree: Vec<u32>,
}

impl Graph {
    /// Build a graph from an unordered edge list. Edges are normalized to
    /// `(min, max)` and sorted; self-loops and duplicates are rejected.
    pub fn from_edges(n: usize, raw_edges: &[(VertexId, VertexId)]) -> Result<Self, GraphError> {
        let mut edges: Vec<(VertexId, VertexId)> = Vec::with_capacity(raw_edges.len());
        for &(u, v) in raw_edges {
            if u == v {
                return Err(GraphError::Validation(format!("self-loop at vertex {u}")));
            }
            if u as usize >= n || v as usize >= n {
                return Err(GraphError::Validation(format!(
                    "edge ({u}, {v}) out of range for n={n}"
                )));
            }
            edges.push((u.min(v), u.max(v)));
        }
        edges.sort_unstable();
        if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::Validation(format!(
                "duplicate edge ({}, {})",
                w[0].0, w[0].1
            )));
        }
        if edges.is_empty() {
            return Err(GraphError::EmptyGraph);
        }

        let mut adjacency = vec![Vec::new(); n];
        let mut degree = vec![0u32; n];
        for &(u, v) in &edges {
            adjacency[u as usize].push(v);
            adjacency[v as usize].push(u);
            degree[u as usize] += 1;
            degree[v as usize] += 1;
        }
        for neighbors in &mut adjacency {
            neighbors.sort_unstable();
        }

        let g = Graph {
            n,
            edges,
            adjacency,
            degree,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Number of edges, `L`.
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// `2L`, the sum of all degrees.
    pub fn two_l(&self) -> u64 {
        2 * self.edges.len() as u64
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn degree(&self, v: VertexId) -> u32 {
        self.degree[v as usize]
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degree
    }

    /// Average degree `2L / n`.
    pub fn avg_degree(&self) -> f64 {
        self.two_l() as f64 / self.n as f64
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adjacency[v as usize]
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.adjacency[u as usize].binary_search(&v).is_ok()
    }

    /// Check every structural invariant, returning the first violation.
    pub fn validate(&self) -> Result<(), GraphError> {
        let mut degree_sum = 0u64;
        for v in 0..self.n {
            let adj = &self.adjacency[v];
            if adj.windows(2).any(|w| w[0] >= w[1]) {
                return Err(GraphError::Validation(format!(
                    "adjacency of {v} is not sorted strictly ascending"
                )));
            }
            if adj.iter().any(|&w| w as usize == v) {
                return Err(GraphError::Validation(format!("self-loop at vertex {v}")));
            }
            for &w in adj {
                if !self.adjacency[w as usize].contains(&(v as VertexId)) {
                    return Err(GraphError::Validation(format!(
                        "asymmetric adjacency: {w} in adj({v}) but not vice versa"
                    )));
                }
            }
            if adj.len() != self.degree[v] as usize {
                return Err(GraphError::Validation(format!(
                    "degree of {v} does not match adjacency length"
                )));
            }
            degree_sum += self.degree[v] as u64;
        }
        if degree_sum != self.two_l() {
            return Err(GraphError::Validation(format!(
                "degree sum {degree_sum} != 2L = {}",
                self.two_l()
            )));
        }
        Ok(())
    }

    /// Number of connected components (ignoring isolated-vertex special cases;
    /// an isolated vertex is its own component).
    pub fn component_count(&self) -> usize {
        let mut seen = vec![false; self.n];
        let mut components = 0;
        let mut stack = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            components += 1;
            seen[start] = true;
            stack.push(start as VertexId);
            while let Some(v) = stack.pop() {
                for &w in self.neighbors(v) {
                    if !seen[w as usize] {
                        seen[w as usize] = true;
                        stack.push(w);
                    }
                }
            }
        }
        components
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }
}

/// Parse a line-oriented edge list. Lines starting with `#` are comments; an
/// optional first line `# n=<count>` fixes the vertex count, otherwise it is
/// `1 + max id`.
pub fn load_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut edges = Vec::new();
    let mut declared_n: Option<usize> = None;
    let mut max_id: Option<VertexId> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('#') {
            let rest = rest.trim();
            if let Some(count) = rest.strip_prefix("n=") {
                if declared_n.is_some() || !edges.is_empty() {
                    // header only honored on the first line
                    continue;
                }
                declared_n = Some(count.trim().parse().map_err(|_| GraphError::Parse {
                    line: line_no,
                    msg: format!("bad vertex count `{count}`"),
                })?);
            }
            continue;
        }
        let mut parts = line.split_whitespace();
        let (u, v) = match (parts.next(), parts.next(), parts.next()) {
            (Some(a), Some(b), None) => {
                let u: VertexId = a.parse().map_err(|_| GraphError::Parse {
                    line: line_no,
                    msg: format!("expected non-negative integer, got `{a}`"),
                })?;
                let v: VertexId = b.parse().map_err(|_| GraphError::Parse {
                    line: line_no,
                    msg: format!("expected non-negative integer, got `{b}`"),
                })?;
                (u, v)
            }
            _ => {
                return Err(GraphError::Parse {
                    line: line_no,
                    msg: format!("expected two integers, got `{line}`"),
                })
            }
        };
        if u == v {
            return Err(GraphError::Validation(format!(
                "self-loop `{u} {v}` at line {line_no}"
            )));
        }
        max_id = Some(max_id.map_or(u.max(v), |m| m.max(u).max(v)));
        edges.push((u, v));
    }

    let n = match (declared_n, max_id) {
        (Some(n), Some(m)) if (m as usize) < n => n,
        (Some(n), Some(m)) => {
            return Err(GraphError::Validation(format!(
                "vertex id {m} exceeds declared n={n}"
            )))
        }
        (Some(n), None) => n,
        (None, Some(m)) => m as usize + 1,
        (None, None) => 0,
    };
    Graph::from_edges(n, &edges)
}

/// Canonical edge-list text: `# n=<count>` header, then `u v` per edge with
/// `u < v`, sorted. Reloading yields an identical graph.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# n={}", g.vertex_count());
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}
