//! Game traces and their independent replay.

use serde::{Deserialize, Serialize};

use super::lifted::Orientation;
use super::{GuardStatus, SquadMove};
use crate::cover::{cover_neighbors, project_label};
use crate::error::StrategyError;
use crate::graph::{Family, Graph, Label, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Outcome {
    Capture,
    PushedOut,
    TurnLimit,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Actor {
    Cop,
    Robber,
}

/// A fixed cover window and the indices past which the robber counts as
/// pushed out in the given orientation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowInfo {
    pub lo: i64,
    pub hi: i64,
    pub push_low: i64,
    pub push_high: i64,
    pub orientation: Orientation,
}

impl WindowInfo {
    pub fn is_pushed_out(&self, robber: Label) -> bool {
        let high = robber.index > self.push_high;
        let low = robber.index < self.push_low;
        match self.orientation {
            Orientation::Up => high,
            Orientation::Down => low,
            Orientation::Free => high || low,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceParams {
    pub strategy: String,
    pub policy: String,
    pub max_turns: usize,
    pub family: Family,
    pub n_vertices: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<WindowInfo>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub guarded_tree: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Placements {
    pub cops: Vec<Vertex>,
    pub robber: Vertex,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub robber_lift: Option<Label>,
}

/// One half-move. `moves` lists positions after the move: every cop for a
/// cop turn, the robber alone for a robber turn.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TurnRecord {
    pub actor: Actor,
    pub moves: Vec<Vertex>,
    pub phase: Option<String>,
    pub gc: Option<bool>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub squads: Vec<SquadMove>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub robber_lift: Option<Label>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub guard: Option<GuardStatus>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub flags: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GameTrace {
    pub graph: String,
    pub params: TraceParams,
    pub placements: Placements,
    pub turns: Vec<TurnRecord>,
    pub outcome: Outcome,
}

impl GameTrace {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("traces serialize")
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }

    pub fn cop_turns(&self) -> usize {
        self.turns.iter().filter(|t| t.actor == Actor::Cop).count()
    }

    /// Robber lifts recorded on robber turns, starting with the placement.
    pub fn robber_lifts(&self) -> Vec<Label> {
        self.placements
            .robber_lift
            .into_iter()
            .chain(self.turns.iter().filter_map(|t| t.robber_lift))
            .collect()
    }

    pub fn flags(&self) -> impl Iterator<Item = &str> {
        self.turns
            .iter()
            .flat_map(|t| t.flags.iter().map(String::as_str))
    }
}

fn illegal(msg: String) -> StrategyError {
    StrategyError::IllegalMove(msg)
}

fn closed_contains(g: &Graph, from: Vertex, to: Vertex) -> bool {
    from == to || g.has_edge(from, to)
}

fn cover_step(base: crate::graph::IGraphParams, from: Label, to: Label) -> bool {
    from == to || cover_neighbors(base, from).contains(&to)
}

/// Replays `trace` on `g`: every move must be legal, squad moves must be
/// cover moves projecting onto the recorded quotient moves, and robber lifts
/// must follow the robber. Returns the recomputed outcome.
pub fn verify_trace(g: &Graph, trace: &GameTrace) -> Result<Outcome, StrategyError> {
    let n = g.n_vertices();
    if trace.params.n_vertices != n {
        return Err(StrategyError::Precondition(format!(
            "trace is for {} vertices, graph has {n}",
            trace.params.n_vertices
        )));
    }
    let base = g.igraph_params();
    let mut cops = trace.placements.cops.clone();
    let mut robber = trace.placements.robber;
    if robber >= n || cops.iter().any(|&c| c >= n) {
        return Err(illegal("placement outside the graph".into()));
    }
    let mut lift = trace.placements.robber_lift;
    if let (Some(b), Some(l)) = (base, lift) {
        if project_label(b, l) != robber {
            return Err(illegal(format!(
                "robber lift {l} does not project to {robber}"
            )));
        }
    }
    let window = trace.params.window;
    let pushed =
        |lift: Option<Label>| matches!((window, lift), (Some(w), Some(l)) if w.is_pushed_out(l));

    let mut captured = cops.contains(&robber);
    let mut expected = Actor::Cop;
    for (i, t) in trace.turns.iter().enumerate() {
        if captured {
            return Err(illegal(format!("turn {i} recorded after a capture")));
        }
        if pushed(lift) {
            return Err(illegal(format!(
                "turn {i} recorded after the robber was pushed out"
            )));
        }
        if t.actor != expected {
            return Err(illegal(format!("turn {i}: expected a {expected:?} move")));
        }
        match t.actor {
            Actor::Cop => {
                if t.moves.len() != cops.len() {
                    return Err(illegal(format!(
                        "turn {i}: {} cop positions for {} cops",
                        t.moves.len(),
                        cops.len()
                    )));
                }
                for (c, (&from, &to)) in cops.iter().zip(&t.moves).enumerate() {
                    if to >= n || !closed_contains(g, from, to) {
                        return Err(illegal(format!("turn {i}: cop {c} moved {from} -> {to}")));
                    }
                }
                if let Some(b) = base {
                    for sm in &t.squads {
                        let (Some(&from), Some(&to)) = (cops.get(sm.squad), t.moves.get(sm.squad))
                        else {
                            return Err(illegal(format!("turn {i}: unknown squad {}", sm.squad)));
                        };
                        if !cover_step(b, sm.from, sm.to) {
                            return Err(illegal(format!(
                                "turn {i}: lead {} -> {} is not a cover move",
                                sm.from, sm.to
                            )));
                        }
                        if project_label(b, sm.from) != from || project_label(b, sm.to) != to {
                            return Err(illegal(format!(
                                "turn {i}: squad {} lead move {} -> {} does not project to {from} -> {to}",
                                sm.squad, sm.from, sm.to
                            )));
                        }
                    }
                }
                cops.clone_from(&t.moves);
                expected = Actor::Robber;
            }
            Actor::Robber => {
                let [to] = t.moves[..] else {
                    return Err(illegal(format!(
                        "turn {i}: robber turn must list one vertex"
                    )));
                };
                if to >= n || !closed_contains(g, robber, to) {
                    return Err(illegal(format!("turn {i}: robber moved {robber} -> {to}")));
                }
                if let (Some(b), Some(prev), Some(next)) = (base, lift, t.robber_lift) {
                    if !cover_step(b, prev, next) || project_label(b, next) != to {
                        return Err(illegal(format!("turn {i}: robber lift {prev} -> {next} does not follow {robber} -> {to}")));
                    }
                }
                if t.robber_lift.is_some() {
                    lift = t.robber_lift;
                }
                robber = to;
                expected = Actor::Cop;
            }
        }
        captured = cops.contains(&robber);
    }
    let outcome = if captured {
        Outcome::Capture
    } else if pushed(lift) {
        Outcome::PushedOut
    } else {
        if trace.cop_turns() != trace.params.max_turns || expected != Actor::Cop {
            return Err(illegal(
                "trace stops before the turn limit without a capture".into(),
            ));
        }
        Outcome::TurnLimit
    };
    Ok(outcome)
}
