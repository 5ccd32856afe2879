//! Exact "do `c` cops win on `G`?" by retrograde analysis of the full game
//! state space, cop numbers, and optimal-move extraction for both players.
//!
//! Rules: cops place first (stacking allowed), the robber places having seen
//! them, then the cops move. On each turn every pawn of the moving side
//! moves to a closed neighbor; the robber is caught as soon as he shares a
//! vertex with a cop, after any half-move including placement.

mod engine;
pub mod multiset;

use serde::{Deserialize, Serialize};

use crate::error::SolveError;
use crate::graph::{Graph, Vertex};
use engine::{EngineInput, EngineOutput, Mask, UNKNOWN};
pub use multiset::{multiset_count, MultisetIndexer, MAX_COPS};

/// Default cap on the number of game states a single solve may allocate.
pub const DEFAULT_BUDGET_STATES: u128 = 200_000_000;

/// Largest graph the bit-packed engine handles.
pub const MAX_VERTICES: usize = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    Cop,
    Robber,
}

/// A game position. `cops` is kept sorted; two cops may share a vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GameState {
    pub cops: Vec<Vertex>,
    pub robber: Vertex,
    pub to_move: Side,
}

impl GameState {
    pub fn new(mut cops: Vec<Vertex>, robber: Vertex, to_move: Side) -> Self {
        cops.sort_unstable();
        GameState {
            cops,
            robber,
            to_move,
        }
    }

    pub fn is_capture(&self) -> bool {
        self.cops.contains(&self.robber)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StateLabel {
    CopWin,
    RobberSafe,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveStats {
    pub states: u128,
    pub iterations: u32,
    pub millis: u128,
    pub peak_bytes: u64,
}

impl SolveStats {
    /// Single-line JSON record.
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("stats serialize")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolveOptions {
    pub budget_states: u128,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            budget_states: DEFAULT_BUDGET_STATES,
        }
    }
}

/// Total number of game states (both sides to move) for `c` cops on `n` vertices.
pub fn state_count(n: usize, c: usize) -> u128 {
    multiset_count(n, c) * n as u128 * 2
}

/// Per-state labels and capture distances for one cop count.
///
/// Capture distance counts cop moves until capture under optimal play: a
/// cop-to-move state is one more than its best successor, a robber-to-move
/// state equals its worst successor, and a capture is 0.
pub struct SolveTable {
    n: usize,
    c: usize,
    words: usize,
    indexer: MultisetIndexer,
    closed: Vec<Vec<u16>>,
    robber_won: Vec<u64>,
    cop_won: Vec<u64>,
    dist_robber: Vec<u16>,
    dist_cop: Vec<u16>,
    witness: Option<(usize, u16)>,
    stats: SolveStats,
}

/// Outcome of [`is_copwin`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CopWin {
    pub wins: bool,
    /// Placement that wins fastest in the worst case (smallest rank on ties).
    pub witness: Option<Vec<Vertex>>,
    /// Worst-case number of cop moves from the witness placement.
    pub capture_moves: Option<u32>,
    pub stats: SolveStats,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CopNumberResult {
    pub cop_number: usize,
    pub witness_placement: Vec<Vertex>,
    pub solve_stats: Vec<SolveStats>,
}

fn prepare(
    g: &Graph,
    c: usize,
    opts: SolveOptions,
) -> Result<(MultisetIndexer, Vec<Vec<u16>>), SolveError> {
    let n = g.n_vertices();
    if n == 0 {
        return Err(SolveError::Empty);
    }
    if c == 0 {
        return Err(SolveError::NoCops);
    }
    if n > MAX_VERTICES {
        return Err(SolveError::TooManyVertices {
            max: MAX_VERTICES,
            got: n,
        });
    }
    if !g.is_connected() {
        return Err(SolveError::Disconnected);
    }
    let required = state_count(n, c);
    if required > opts.budget_states {
        return Err(SolveError::BudgetExceeded {
            required,
            budget: opts.budget_states,
        });
    }
    let indexer = MultisetIndexer::new(n, c)?;
    let closed = (0..n)
        .map(|v| {
            let mut l: Vec<u16> = g.neighbors(v).iter().map(|&w| w as u16).collect();
            l.push(v as u16);
            l.sort_unstable();
            l
        })
        .collect();
    Ok((indexer, closed))
}

fn words_for(n: usize) -> usize {
    match n {
        0..=64 => 1,
        65..=128 => 2,
        _ => 4,
    }
}

fn flatten<const W: usize>(v: Vec<Mask<W>>) -> Vec<u64> {
    v.into_iter().flat_map(|m| m.0).collect()
}

struct RawSolve {
    robber_won: Vec<u64>,
    cop_won: Vec<u64>,
    dist_robber: Vec<u16>,
    dist_cop: Vec<u16>,
    witness: Option<(usize, u16)>,
    layers: u32,
    peak_bytes: u64,
    millis: u128,
}

fn dispatch(input: EngineInput<'_>, n: usize) -> RawSolve {
    fn convert<const W: usize>(o: EngineOutput<W>) -> RawSolve {
        RawSolve {
            robber_won: flatten(o.robber_won),
            cop_won: flatten(o.cop_won),
            dist_robber: o.dist_robber,
            dist_cop: o.dist_cop,
            witness: o.witness,
            layers: o.layers,
            peak_bytes: o.peak_bytes,
            millis: o.millis,
        }
    }
    match words_for(n) {
        1 => convert(engine::run::<1>(input)),
        2 => convert(engine::run::<2>(input)),
        _ => convert(engine::run::<4>(input)),
    }
}

/// Full least-fixed-point labeling for `c` cops on `g`.
pub fn solve(g: &Graph, c: usize) -> Result<SolveTable, SolveError> {
    solve_with(g, c, SolveOptions::default())
}

pub fn solve_with(g: &Graph, c: usize, opts: SolveOptions) -> Result<SolveTable, SolveError> {
    let (indexer, closed) = prepare(g, c, opts)?;
    let n = g.n_vertices();
    let raw = dispatch(
        EngineInput {
            closed: &closed,
            indexer: &indexer,
            record_distances: true,
            stop_at_witness: false,
        },
        n,
    );
    Ok(SolveTable {
        n,
        c,
        words: words_for(n),
        stats: SolveStats {
            states: state_count(n, c),
            iterations: raw.layers,
            millis: raw.millis,
            peak_bytes: raw.peak_bytes,
        },
        indexer,
        closed,
        robber_won: raw.robber_won,
        cop_won: raw.cop_won,
        dist_robber: raw.dist_robber,
        dist_cop: raw.dist_cop,
        witness: raw.witness,
    })
}

/// Decides whether `c` cops win, stopping as soon as a winning placement is
/// certain.
pub fn is_copwin(g: &Graph, c: usize) -> Result<CopWin, SolveError> {
    is_copwin_with(g, c, SolveOptions::default())
}

pub fn is_copwin_with(g: &Graph, c: usize, opts: SolveOptions) -> Result<CopWin, SolveError> {
    let (indexer, closed) = prepare(g, c, opts)?;
    let n = g.n_vertices();
    let raw = dispatch(
        EngineInput {
            closed: &closed,
            indexer: &indexer,
            record_distances: false,
            stop_at_witness: true,
        },
        n,
    );
    let witness = raw.witness.map(|(p, _)| unrank_vertices(&indexer, p));
    Ok(CopWin {
        wins: raw.witness.is_some(),
        witness,
        capture_moves: raw.witness.map(|(_, d)| u32::from(d)),
        stats: SolveStats {
            states: state_count(n, c),
            iterations: raw.layers,
            millis: raw.millis,
            peak_bytes: raw.peak_bytes,
        },
    })
}

/// Smallest `c <= c_max` for which `c` cops win.
pub fn cop_number(g: &Graph, c_max: usize) -> Result<CopNumberResult, SolveError> {
    cop_number_with(g, c_max, SolveOptions::default())
}

pub fn cop_number_with(
    g: &Graph,
    c_max: usize,
    opts: SolveOptions,
) -> Result<CopNumberResult, SolveError> {
    if c_max == 0 {
        return Err(SolveError::NoCops);
    }
    let mut stats = Vec::new();
    for c in 1..=c_max {
        let res = is_copwin_with(g, c, opts)?;
        stats.push(res.stats);
        if res.wins {
            return Ok(CopNumberResult {
                cop_number: c,
                witness_placement: res.witness.expect("winning solve has a witness"),
                solve_stats: stats,
            });
        }
    }
    Err(SolveError::ExceedsMax(c_max))
}

fn unrank_vertices(idx: &MultisetIndexer, rank: usize) -> Vec<Vertex> {
    let mut buf = vec![0u16; idx.cops()];
    idx.unrank(rank, &mut buf);
    buf.into_iter().map(usize::from).collect()
}

impl std::fmt::Debug for SolveTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SolveTable")
            .field("n", &self.n)
            .field("c", &self.c)
            .field("cops_win", &self.cops_win())
            .field("stats", &self.stats)
            .finish()
    }
}

impl SolveTable {
    pub fn n_vertices(&self) -> usize {
        self.n
    }

    pub fn cops(&self) -> usize {
        self.c
    }

    pub fn stats(&self) -> SolveStats {
        self.stats
    }

    pub fn closed_neighborhood(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.closed[v].iter().map(|&w| w as usize)
    }

    fn check_state(&self, s: &GameState) -> Result<(), SolveError> {
        if s.cops.len() != self.c {
            return Err(SolveError::WrongState("malformed: wrong number of cops"));
        }
        if s.robber >= self.n || s.cops.iter().any(|&p| p >= self.n) {
            return Err(SolveError::WrongState("malformed: vertex out of range"));
        }
        Ok(())
    }

    fn cop_rank(&self, cops: &[Vertex]) -> usize {
        let mut buf: Vec<u16> = cops.iter().map(|&v| v as u16).collect();
        buf.sort_unstable();
        self.indexer.rank(&buf)
    }

    /// Canonical rank in `[0, C(n+c-1, c) * n * 2)`.
    pub fn rank(&self, s: &GameState) -> usize {
        let side = match s.to_move {
            Side::Cop => 0,
            Side::Robber => 1,
        };
        (self.cop_rank(&s.cops) * self.n + s.robber) * 2 + side
    }

    pub fn unrank(&self, rank: usize) -> GameState {
        let to_move = if rank.is_multiple_of(2) {
            Side::Cop
        } else {
            Side::Robber
        };
        let rest = rank / 2;
        let robber = rest % self.n;
        let cops = unrank_vertices(&self.indexer, rest / self.n);
        GameState {
            cops,
            robber,
            to_move,
        }
    }

    pub fn total_states(&self) -> usize {
        self.indexer.count() * self.n * 2
    }

    fn bit(words: &[u64], w: usize, p: usize, r: usize) -> bool {
        words[p * w + (r >> 6)] >> (r & 63) & 1 == 1
    }

    pub fn label(&self, s: &GameState) -> StateLabel {
        if s.is_capture() {
            return StateLabel::CopWin;
        }
        let p = self.cop_rank(&s.cops);
        let won = match s.to_move {
            Side::Robber => Self::bit(&self.robber_won, self.words, p, s.robber),
            Side::Cop => Self::bit(&self.cop_won, self.words, p, s.robber),
        };
        if won {
            StateLabel::CopWin
        } else {
            StateLabel::RobberSafe
        }
    }

    /// Cop moves to capture under optimal play, `None` for robber-safe states.
    pub fn capture_distance(&self, s: &GameState) -> Option<u32> {
        if s.is_capture() {
            return Some(0);
        }
        let p = self.cop_rank(&s.cops);
        let d = match s.to_move {
            Side::Robber => self.dist_robber[p * self.n + s.robber],
            Side::Cop => self.dist_cop[p * self.n + s.robber],
        };
        (d != UNKNOWN).then_some(u32::from(d))
    }

    /// True iff some placement wins against every robber placement.
    pub fn cops_win(&self) -> bool {
        self.witness.is_some()
    }

    /// Winning placement with the smallest worst-case capture time, smallest
    /// rank on ties.
    pub fn winning_placement(&self) -> Option<Vec<Vertex>> {
        self.witness.map(|(p, _)| unrank_vertices(&self.indexer, p))
    }

    /// Robber placements that survive against `cops`. Empty iff `cops` wins.
    pub fn safe_robber_placements(&self, cops: &[Vertex]) -> Vec<Vertex> {
        let s = GameState::new(cops.to_vec(), 0, Side::Cop);
        (0..self.n)
            .filter(|&r| {
                self.label(&GameState {
                    robber: r,
                    ..s.clone()
                }) == StateLabel::RobberSafe
            })
            .collect()
    }

    /// Every joint cop move from `cops`, as sorted multisets (with repeats).
    pub fn joint_moves(&self, cops: &[Vertex]) -> Vec<Vec<Vertex>> {
        let mut out: Vec<Vec<Vertex>> = vec![Vec::new()];
        for &p in cops {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    self.closed[p].iter().map(move |&q| {
                        let mut next = prefix.clone();
                        next.push(q as usize);
                        next
                    })
                })
                .collect();
        }
        for m in &mut out {
            m.sort_unstable();
        }
        out.sort();
        out.dedup();
        out
    }

    /// Joint move minimizing the successor's capture distance; ties go to
    /// the smallest successor rank.
    pub fn optimal_cop_move(&self, s: &GameState) -> Result<Vec<Vertex>, SolveError> {
        self.check_state(s)?;
        if s.to_move != Side::Cop {
            return Err(SolveError::WrongState("not cop to move"));
        }
        if s.is_capture() {
            return Err(SolveError::WrongState("already a capture"));
        }
        if self.label(s) != StateLabel::CopWin {
            return Err(SolveError::WrongState("robber-safe"));
        }
        let mut best: Option<(u32, usize, Vec<Vertex>)> = None;
        for mv in self.joint_moves(&s.cops) {
            let next = GameState {
                cops: mv,
                robber: s.robber,
                to_move: Side::Robber,
            };
            let Some(d) = self.capture_distance(&next) else {
                continue;
            };
            let key = (d, self.rank(&next));
            if best.as_ref().is_none_or(|b| key < (b.0, b.1)) {
                best = Some((key.0, key.1, next.cops));
            }
        }
        Ok(best.expect("cop-win state has a winning successor").2)
    }

    /// A robber-safe reply when one exists (smallest vertex id), otherwise the
    /// reply that delays capture longest (smallest id on ties).
    pub fn optimal_robber_move(&self, s: &GameState) -> Result<Vertex, SolveError> {
        self.check_state(s)?;
        if s.to_move != Side::Robber {
            return Err(SolveError::WrongState("not robber to move"));
        }
        if s.is_capture() {
            return Err(SolveError::WrongState("already a capture"));
        }
        let mut best: Option<(u32, Vertex)> = None;
        for r in self.closed_neighborhood(s.robber) {
            let next = GameState {
                cops: s.cops.clone(),
                robber: r,
                to_move: Side::Cop,
            };
            match self.capture_distance(&next) {
                None => return Ok(r),
                Some(d) => {
                    if best.is_none_or(|(bd, _)| d > bd) {
                        best = Some((d, r));
                    }
                }
            }
        }
        Ok(best.expect("closed neighborhood is nonempty").1)
    }

    /// Best robber placement against `cops`: safe if possible (smallest id),
    /// else the one maximizing capture distance.
    pub fn optimal_robber_placement(&self, cops: &[Vertex]) -> Vertex {
        let mut best: Option<(u32, Vertex)> = None;
        for r in 0..self.n {
            let s = GameState::new(cops.to_vec(), r, Side::Cop);
            match self.capture_distance(&s) {
                None => return r,
                Some(d) => {
                    if best.is_none_or(|(bd, _)| d > bd) {
                        best = Some((d, r));
                    }
                }
            }
        }
        best.expect("graph is nonempty").1
    }
}

#[cfg(test)]
mod tests;
