//! Executable cop strategies.
//!
//! Every controller plays on a quotient graph (a GP or I-graph, or an
//! arbitrary graph for tree guarding). The family strategies reason about a
//! fixed lift of the robber in a window of the cyclic cover, move one lead
//! cop per squad there, and report the projections of those moves.
//! [`simulate`] runs a controller against a robber policy and records a
//! [`GameTrace`] that [`verify_trace`] can replay independently.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::StrategyError;
use crate::graph::{Graph, Label, Vertex};

mod four;
mod gp3;
mod guard;
mod igraph5;
mod lifted;
mod simulate;
mod trace;
mod weak;

pub use four::{four_cop_controller, FourCopController};
pub use gp3::{gp_n3_controller, GpN3Controller};
pub use guard::{tree_guard_controller, TreeGuardController};
pub use igraph5::{igraph_five_cop_controller, IGraphFiveController};
pub use lifted::{Flank, Orientation};
pub use simulate::{simulate, RobberPolicy, SimulationError};
pub use trace::{
    verify_trace, Actor, GameTrace, Outcome, Placements, TraceParams, TurnRecord, WindowInfo,
};
pub use weak::{
    force_right_controller, force_right_controller_in, weak_cop_controller, weak_cop_controller_in,
    WeakCopController,
};

/// Stage of a strategy, reported per squad and per turn.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Phase {
    /// Walking the rim until a move congruent to the robber's index exists.
    CongruenceChase,
    /// Congruent, but on the other rim from the robber.
    ParityMatch,
    /// Congruent and on the robber's rim, or sweeping toward him.
    Push,
    /// Guard cop shrinking the deficient set.
    Establish,
    /// Guard condition holds; cop keeps it.
    Guard,
    /// Anti-stalling cop heading for the robber.
    Approach,
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Phase::CongruenceChase => "CONGRUENCE_CHASE",
            Phase::ParityMatch => "PARITY_MATCH",
            Phase::Push => "PUSH",
            Phase::Establish => "ESTABLISH",
            Phase::Guard => "GUARD",
            Phase::Approach => "APPROACH",
        };
        f.write_str(s)
    }
}

/// What a squad's lead cop is doing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    /// Still searching for congruence.
    Walker,
    /// Holds congruence with the robber's index.
    Congruent,
    /// Stays on the A rim and closes in on the robber's index.
    Sweeper,
    Guard,
    Approach,
}

/// One lead cop's move in the cover. `from` is the lead after any
/// reselection at the start of the turn, so `to` is `from` or a neighbor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquadMove {
    pub squad: usize,
    pub role: Role,
    pub phase: Phase,
    pub from: Label,
    pub to: Label,
}

/// Guard condition report. Tree vertices are given as positions in the
/// guarded tree's vertex list (see [`TraceParams::guarded_tree`]).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GuardStatus {
    pub cop_position: usize,
    pub gc_holds: bool,
    /// Tree vertices strictly closer to the robber than to the cop (in tree
    /// distance), after the cop's move.
    pub deficient_set: Vec<usize>,
    /// Component of the tree minus the cop holding the deficient set, after
    /// the cop's move. Empty when the condition holds.
    pub component: Vec<usize>,
    /// The same component computed before the cop's move.
    pub component_before: Vec<usize>,
}

/// A controller's joint move for one cop turn plus annotations.
#[derive(Clone, Debug, PartialEq)]
pub struct CopTurn {
    /// Quotient positions of all cops after the move.
    pub positions: Vec<Vertex>,
    pub phase: String,
    pub gc: Option<bool>,
    pub squads: Vec<SquadMove>,
    pub guard: Option<GuardStatus>,
    pub flags: Vec<String>,
}

/// A cop strategy driven turn by turn. Cops place first, the robber places
/// after seeing them, then cop turns and robber turns alternate.
pub trait Controller {
    fn name(&self) -> &'static str;

    /// The graph the game is played on.
    fn graph(&self) -> &Graph;

    fn cop_count(&self) -> usize;

    fn place_cops(&mut self) -> Result<Vec<Vertex>, StrategyError>;

    fn robber_placed(&mut self, at: Vertex) -> Result<(), StrategyError>;

    fn cop_turn(&mut self) -> Result<CopTurn, StrategyError>;

    fn robber_moved(&mut self, to: Vertex) -> Result<(), StrategyError>;

    /// Current lift of the robber, for strategies played in the cover.
    fn robber_lift(&self) -> Option<Label> {
        None
    }

    /// Fixed window and push thresholds, for window-bounded strategies.
    fn window(&self) -> Option<WindowInfo> {
        None
    }

    /// True once the robber's lift has crossed a push threshold.
    fn pushed_out(&self) -> bool {
        false
    }

    /// Vertices of a guarded tree, for guard strategies.
    fn guarded_tree(&self) -> Option<Vec<String>> {
        None
    }
}
