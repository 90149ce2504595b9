//! Error types shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("graph has no edges; scores are undefined")]
    EmptyGraph,
}

#[derive(Debug, Error)]
pub enum ScoreError {
    #[error("cluster {0} is not live")]
    UnknownCluster(u32),
    #[error("partition covers {partition} vertices, graph has {graph}")]
    VertexCountMismatch { partition: usize, graph: usize },
}

#[derive(Debug, Error)]
pub enum TraceError {
    #[error("step {step}: cluster {cluster} is not live")]
    UnknownCluster { step: usize, cluster: u32 },
    #[error("step {step}: recorded delta {expected} does not match recomputed {actual}")]
    DeltaMismatch {
        step: usize,
        expected: i128,
        actual: i128,
    },
}

#[derive(Debug, Error)]
pub enum LfrError {
    #[error("no minimum degree in [1, {max_degree}] reaches mean degree {target}")]
    InfeasibleDegrees { target: f64, max_degree: u32 },
    #[error("cannot partition {n} vertices into communities of size [{min}, {max}]")]
    InfeasiblePartition { n: usize, min: usize, max: usize },
    #[error("generation failed at stage `{stage}` after {attempts} attempts")]
    GenerationFailure { stage: &'static str, attempts: u32 },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}

#[derive(Debug, Error)]
pub enum MetricError {
    #[error("partitions cover different vertex sets ({truth} vs {found})")]
    VertexSetMismatch { truth: usize, found: usize },
}

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("empty input")]
    EmptyInput,
    #[error("missing results: {0}")]
    MissingResults(String),
    #[error("config error: {0}")]
    Config(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("bad data: {0}")]
    Data(String),
}
