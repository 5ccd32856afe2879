//! Running a controller against a robber policy.

use std::fmt;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::trace::{Actor, GameTrace, Outcome, Placements, TraceParams, TurnRecord};
use super::Controller;
use crate::error::StrategyError;
use crate::graph::{Family, Graph, Vertex};
use crate::solver::{GameState, Side, SolveTable};

/// How the robber plays.
#[derive(Clone)]
pub enum RobberPolicy {
    /// Plays from a solved table for the controller's cop count: a safe
    /// move when one exists, else the move delaying capture longest.
    Optimal(Arc<SolveTable>),
    /// Maximizes the distance to the nearest cop over the closed
    /// neighborhood; smallest vertex id on ties.
    Greedy,
    /// Uniform over moves not adjacent to any cop, falling back to
    /// unoccupied moves, then to any move.
    Random(u64),
    /// The first entry is the placement, the rest are successive robber
    /// positions; the robber passes once the script runs out.
    Scripted(Vec<Vertex>),
}

impl fmt::Display for RobberPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RobberPolicy::Optimal(_) => write!(f, "OPTIMAL"),
            RobberPolicy::Greedy => write!(f, "GREEDY"),
            RobberPolicy::Random(seed) => write!(f, "RANDOM({seed})"),
            RobberPolicy::Scripted(m) => write!(f, "SCRIPTED({})", m.len()),
        }
    }
}

impl fmt::Debug for RobberPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A simulation aborted by an illegal move or a controller failure, with
/// the trace up to that point.
#[derive(Debug, Clone)]
pub struct SimulationError {
    pub error: StrategyError,
    pub trace: Box<GameTrace>,
}

impl fmt::Display for SimulationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} (after {} half-moves)",
            self.error,
            self.trace.turns.len()
        )
    }
}

impl std::error::Error for SimulationError {}

struct Robber<'a> {
    policy: &'a RobberPolicy,
    g: &'a Graph,
    dist: Vec<Vec<u32>>,
    rng: ChaCha8Rng,
    script_pos: usize,
}

impl<'a> Robber<'a> {
    fn new(policy: &'a RobberPolicy, g: &'a Graph, cops: usize) -> Result<Self, StrategyError> {
        if let RobberPolicy::Optimal(t) = policy {
            if t.n_vertices() != g.n_vertices() || t.cops() != cops {
                return Err(StrategyError::Precondition(format!(
                    "solve table is for {} cops on {} vertices, game has {cops} cops on {}",
                    t.cops(),
                    t.n_vertices(),
                    g.n_vertices()
                )));
            }
        }
        if let RobberPolicy::Scripted(m) = policy {
            if m.is_empty() {
                return Err(StrategyError::Precondition("robber script is empty".into()));
            }
        }
        let dist = match policy {
            RobberPolicy::Greedy | RobberPolicy::Random(_) => g.distance_matrix(),
            _ => Vec::new(),
        };
        let seed = if let RobberPolicy::Random(s) = policy {
            *s
        } else {
            0
        };
        Ok(Robber {
            policy,
            g,
            dist,
            rng: ChaCha8Rng::seed_from_u64(seed),
            script_pos: 0,
        })
    }

    fn nearest_cop(&self, cops: &[Vertex], v: Vertex) -> u32 {
        cops.iter()
            .map(|&c| self.dist[c][v])
            .min()
            .unwrap_or(u32::MAX)
    }

    fn greedy(&self, cops: &[Vertex], options: impl Iterator<Item = Vertex>) -> Vertex {
        let mut best: Option<(u32, Vertex)> = None;
        for v in options {
            let d = self.nearest_cop(cops, v);
            if best.is_none_or(|(bd, _)| d > bd) {
                best = Some((d, v));
            }
        }
        best.expect("options are nonempty").1
    }

    fn random(&mut self, cops: &[Vertex], options: Vec<Vertex>) -> Vertex {
        let safe: Vec<Vertex> = options
            .iter()
            .copied()
            .filter(|&v| self.nearest_cop(cops, v) >= 2)
            .collect();
        let free: Vec<Vertex> = options
            .iter()
            .copied()
            .filter(|v| !cops.contains(v))
            .collect();
        let pool = if !safe.is_empty() {
            safe
        } else if !free.is_empty() {
            free
        } else {
            options
        };
        *pool.choose(&mut self.rng).expect("options are nonempty")
    }

    fn place(&mut self, cops: &[Vertex]) -> Vertex {
        let all = 0..self.g.n_vertices();
        match self.policy {
            RobberPolicy::Optimal(t) => t.optimal_robber_placement(cops),
            RobberPolicy::Greedy => self.greedy(cops, all),
            RobberPolicy::Random(_) => self.random(cops, all.collect()),
            RobberPolicy::Scripted(m) => {
                self.script_pos = 1;
                m[0]
            }
        }
    }

    fn closed(&self, r: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        std::iter::once(r).chain(self.g.neighbors(r).iter().copied())
    }

    fn step(&mut self, cops: &[Vertex], r: Vertex) -> Result<Vertex, StrategyError> {
        Ok(match self.policy {
            RobberPolicy::Optimal(t) => {
                t.optimal_robber_move(&GameState::new(cops.to_vec(), r, Side::Robber))?
            }
            RobberPolicy::Greedy => {
                let mut options: Vec<Vertex> = self.closed(r).collect();
                options.sort_unstable();
                self.greedy(cops, options.into_iter())
            }
            RobberPolicy::Random(_) => {
                let mut options: Vec<Vertex> = self.closed(r).collect();
                options.sort_unstable();
                self.random(cops, options)
            }
            RobberPolicy::Scripted(m) => {
                let next = m.get(self.script_pos).copied().unwrap_or(r);
                self.script_pos += 1;
                next
            }
        })
    }
}

fn graph_name(g: &Graph) -> String {
    match g.family() {
        Family::Gp(p) => p.to_string(),
        Family::IGraph(p) => p.to_string(),
        Family::CoverWindow { base, lo, hi } => format!("{base} cover [{lo},{hi}]"),
        Family::Generic => format!("graph({} vertices, {} edges)", g.n_vertices(), g.n_edges()),
    }
}

/// Plays `ctrl` against `policy` for at most `max_turns` rounds (a cop move
/// followed by a robber move), stopping at capture or when the controller
/// reports the robber pushed out of its window.
pub fn simulate(
    ctrl: &mut dyn Controller,
    policy: &RobberPolicy,
    max_turns: usize,
) -> Result<GameTrace, SimulationError> {
    let g = ctrl.graph().clone();
    let mut trace = GameTrace {
        graph: graph_name(&g),
        params: TraceParams {
            strategy: ctrl.name().to_string(),
            policy: policy.to_string(),
            max_turns,
            family: g.family().clone(),
            n_vertices: g.n_vertices(),
            window: ctrl.window(),
            guarded_tree: ctrl.guarded_tree(),
        },
        placements: Placements {
            cops: Vec::new(),
            robber: 0,
            robber_lift: None,
        },
        turns: Vec::new(),
        outcome: Outcome::TurnLimit,
    };
    match play(ctrl, &g, policy, max_turns, &mut trace) {
        Ok(outcome) => {
            trace.outcome = outcome;
            Ok(trace)
        }
        Err(error) => Err(SimulationError {
            error,
            trace: Box::new(trace),
        }),
    }
}

fn play(
    ctrl: &mut dyn Controller,
    g: &Graph,
    policy: &RobberPolicy,
    max_turns: usize,
    trace: &mut GameTrace,
) -> Result<Outcome, StrategyError> {
    let n = g.n_vertices();
    let mut cops = ctrl.place_cops()?;
    if cops.len() != ctrl.cop_count() || cops.iter().any(|&c| c >= n) {
        return Err(StrategyError::IllegalMove(format!(
            "bad cop placement {cops:?}"
        )));
    }
    trace.placements.cops.clone_from(&cops);
    let mut robber_agent = Robber::new(policy, g, cops.len())?;
    let mut r = robber_agent.place(&cops);
    trace.placements.robber = r;
    if r >= n {
        return Err(StrategyError::IllegalMove(format!("robber placed on {r}")));
    }
    ctrl.robber_placed(r)?;
    trace.placements.robber_lift = ctrl.robber_lift();
    if cops.contains(&r) {
        return Ok(Outcome::Capture);
    }

    for _ in 0..max_turns {
        let turn = ctrl.cop_turn()?;
        let legal = turn.positions.len() == cops.len()
            && cops
                .iter()
                .zip(&turn.positions)
                .all(|(&from, &to)| to < n && (from == to || g.has_edge(from, to)));
        if !legal {
            return Err(StrategyError::IllegalMove(format!(
                "cops {cops:?} -> {:?}",
                turn.positions
            )));
        }
        cops.clone_from(&turn.positions);
        trace.turns.push(TurnRecord {
            actor: Actor::Cop,
            moves: turn.positions,
            phase: Some(turn.phase),
            gc: turn.gc,
            squads: turn.squads,
            robber_lift: None,
            guard: turn.guard,
            flags: turn.flags,
        });
        if cops.contains(&r) {
            return Ok(Outcome::Capture);
        }

        let next = robber_agent.step(&cops, r)?;
        if next >= n || (next != r && !g.has_edge(r, next)) {
            return Err(StrategyError::IllegalMove(format!("robber {r} -> {next}")));
        }
        r = next;
        ctrl.robber_moved(r)?;
        trace.turns.push(TurnRecord {
            actor: Actor::Robber,
            moves: vec![r],
            phase: None,
            gc: None,
            squads: Vec::new(),
            robber_lift: ctrl.robber_lift(),
            guard: None,
            flags: Vec::new(),
        });
        if cops.contains(&r) {
            return Ok(Outcome::Capture);
        }
        if ctrl.pushed_out() {
            return Ok(Outcome::PushedOut);
        }
    }
    Ok(Outcome::TurnLimit)
}
