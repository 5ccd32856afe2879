use thiserror::Error;

use crate::graph::Label;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("parameter out of domain: {0}")]
    ParamDomain(String),
    #[error("invalid vertex id {0}")]
    InvalidVertex(usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0},{1})")]
    DuplicateEdge(usize, usize),
    #[error("subgraph not contained in graph: {0}")]
    NotASubgraph(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoverError {
    #[error("window [{lo},{hi}] must span at least {min} indices")]
    WindowTooSmall { lo: i64, hi: i64, min: i64 },
    #[error("{0} lies outside the window")]
    WindowExhausted(Label),
    #[error("move tail {expected} does not match the projection of {at}")]
    TailMismatch { expected: String, at: Label },
    #[error("not an edge of the quotient graph: ({0},{1})")]
    NotAnEdge(usize, usize),
    #[error("congruence modulus must be positive")]
    BadModulus,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("state space of {required} states exceeds the budget of {budget}")]
    BudgetExceeded { required: u128, budget: u128 },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph is empty")]
    Empty,
    #[error("solver supports at most {max} vertices, graph has {got}")]
    TooManyVertices { max: usize, got: usize },
    #[error("cop count must be at least 1")]
    NoCops,
    #[error("no cop count up to {0} wins")]
    ExceedsMax(usize),
    #[error("state is {0}")]
    WrongState(&'static str),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StrategyError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("illegal move: {0}")]
    IllegalMove(String),
    #[error("strategy invariant broken: {0}")]
    Invariant(String),
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}
