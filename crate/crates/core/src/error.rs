use thiserror::Error;

use crate::graph::MAX_VERTICES;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex count {0} outside 1..={max}", max = MAX_VERTICES)]
    Order(usize),
    #[error("vertex {v} out of range for a graph on {n} vertices")]
    Vertex { v: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("adjacency not symmetric between {0} and {1}")]
    Asymmetric(usize, usize),
    #[error("color {color} out of range for {colors} colors")]
    Color { color: usize, colors: usize },
    #[error("coloring is incomplete: pair ({0}, {1}) is unassigned")]
    Incomplete(usize, usize),
    #[error("expected {expected} targets for a {expected}-coloring, got {got}")]
    TargetCount { expected: usize, got: usize },
}

/// Failure to parse one of the textual formats, with a byte or line position.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("target expression {input:?}: {msg} at position {pos}")]
    Target { input: String, pos: usize, msg: String },
    #[error("graph6: {0}")]
    Graph6(String),
    #[error("coloring line {line}: {msg}")]
    Coloring { line: usize, msg: String },
    #[error("registry line {line}: {msg}")]
    Registry { line: usize, msg: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundError {
    #[error("integer overflow while evaluating {0}")]
    Overflow(&'static str),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TargetError {
    #[error("{0} has a single vertex; nothing to delete")]
    SingleVertex(String),
    #[error("rule not applicable: {0}")]
    Shape(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RegistryError {
    #[error("contradiction for {key}: lower bound {lower} exceeds upper bound {upper}")]
    Contradiction { key: String, lower: u64, upper: u64 },
    #[error("fact value must be positive")]
    ZeroValue,
    #[error("fact is for {got}, expected {expected}")]
    KeyMismatch { expected: String, got: String },
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("i/o: {0}")]
    Io(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("vertex count {0} outside 1..={max}", max = MAX_VERTICES)]
    Order(usize),
    #[error("expected {expected} degree caps, got {got}")]
    CapCount { expected: usize, got: usize },
    #[error("expected {expected} targets, got {got}")]
    TargetCount { expected: usize, got: usize },
    #[error("input graph contains a 4-cycle on vertices {0:?}")]
    NotC4Free(Vec<usize>),
    #[error("invalid range {0}..={1}")]
    Range(usize, usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error("color {color} contains a forbidden {target} on vertices {vertices:?}")]
    Violation { color: usize, target: String, vertices: Vec<usize> },
    #[error("target at position {0} is not a clique")]
    NotClique(usize),
    #[error("clique size must be at least 2, got {0}")]
    CliqueSize(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}
