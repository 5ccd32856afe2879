//! Cops and robbers on generalized Petersen graphs and I-graphs: exact cop
//! numbers by retrograde analysis, and executable cop strategies played in
//! the infinite cyclic cover.

pub mod cover;
pub mod error;
pub mod graph;
pub mod solver;
pub mod strategies;

pub use error::{CoverError, GraphError, SolveError, StrategyError};
pub use graph::{
    build_gp, build_igraph, is_connected_igraph, is_isometric_subgraph, is_tree, BoundReport,
    Family, Girth, GpParams, Graph, IGraphParams, Label, Rim, Subgraph, Vertex,
};
