//! Shared machinery for strategies played in a window of the cyclic cover:
//! the robber's lift, window upkeep, and the congruence-keeping squads.

use serde::{Deserialize, Serialize};

use super::{Phase, Role, SquadMove};
use crate::cover::{cover_neighbors, project_label, CoverWindow, QuotientMove, SquadState};
use crate::error::{CoverError, StrategyError};
use crate::graph::{IGraphParams, Label, Rim, Vertex};

/// Which side of the robber's index a cop keeps to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flank {
    Below,
    Above,
}

/// Direction a pushing pair drives the robber's index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    /// Cops stay below the robber, pushing his index up.
    Up,
    /// Cops stay above the robber, pushing his index down.
    Down,
    /// The flank is chosen when congruence is first acquired.
    Free,
}

impl Orientation {
    fn flank(self) -> Option<Flank> {
        match self {
            Orientation::Up => Some(Flank::Below),
            Orientation::Down => Some(Flank::Above),
            Orientation::Free => None,
        }
    }
}

/// `l` and its three cover neighbors.
pub(crate) fn closed_moves(base: IGraphParams, l: Label) -> [Label; 4] {
    let [x, y, z] = cover_neighbors(base, l);
    [l, x, y, z]
}

fn congruent(a: i64, b: i64, modulus: i64) -> bool {
    (a - b).rem_euclid(modulus) == 0
}

fn best_by_gap(moves: impl Iterator<Item = Label>, robber: Label) -> Option<Label> {
    moves.min_by_key(|&m| {
        (
            m != robber,
            m.rim != robber.rim,
            (m.index - robber.index).abs(),
            m,
        )
    })
}

/// Move of a chasing cop that makes it congruent to the robber's index,
/// preferring a capture, then the robber's rim, then the smallest gap.
pub(crate) fn acquisition_move(
    base: IGraphParams,
    cop: Label,
    robber: Label,
    modulus: i64,
) -> Option<Label> {
    best_by_gap(
        closed_moves(base, cop)
            .into_iter()
            .filter(|m| congruent(m.index, robber.index, modulus)),
        robber,
    )
}

/// Move of a congruent cop that stays congruent and on its flank, with the
/// same preferences as [`acquisition_move`]. `None` means congruence or the
/// flank was already lost.
pub(crate) fn locked_move(
    base: IGraphParams,
    cop: Label,
    robber: Label,
    modulus: i64,
    flank: Flank,
) -> Option<Label> {
    best_by_gap(
        closed_moves(base, cop).into_iter().filter(|&m| {
            congruent(m.index, robber.index, modulus)
                && (m == robber
                    || match flank {
                        Flank::Below => m.index < robber.index,
                        Flank::Above => m.index > robber.index,
                    })
        }),
        robber,
    )
}

fn congruent_phase(to: Label, robber: Label) -> Phase {
    if to.rim == robber.rim {
        Phase::Push
    } else {
        Phase::ParityMatch
    }
}

/// The window a cover strategy plays in, with the robber's lift.
#[derive(Clone, Debug)]
pub(crate) struct Board {
    window: CoverWindow,
    robber: Label,
    recenter: bool,
}

impl Board {
    /// A board on `window`. With `recenter` the window follows the play;
    /// otherwise leaving it is an error.
    pub fn new(window: CoverWindow, recenter: bool) -> Self {
        let robber = Label::new(Rim::A, (window.lo() + window.hi()) / 2);
        Board {
            window,
            robber,
            recenter,
        }
    }

    pub fn base(&self) -> IGraphParams {
        self.window.base()
    }

    pub fn window(&self) -> &CoverWindow {
        &self.window
    }

    pub fn robber(&self) -> Label {
        self.robber
    }

    pub fn project(&self, l: Label) -> Vertex {
        project_label(self.base(), l)
    }

    /// Lift of quotient vertex `v` with index in `first..first + n`.
    pub fn lift_from(&self, v: Vertex, first: i64) -> Label {
        let n = self.base().n;
        let (rim, i) = if v < n { (Rim::A, v) } else { (Rim::B, v - n) };
        let index = first + (i as i64 - first).rem_euclid(n as i64);
        Label::new(rim, index)
    }

    pub fn place_robber(&mut self, lift: Label) -> Result<(), StrategyError> {
        self.robber = lift;
        self.ensure(&[lift.index])
    }

    /// Follows a quotient robber move with the unique lifted move.
    pub fn robber_moved(&mut self, to: Vertex) -> Result<(), StrategyError> {
        let from = self.project(self.robber);
        self.robber = self
            .window
            .lift_move(QuotientMove::between(from, to), self.robber)?;
        Ok(())
    }

    /// Keeps `indices` clear of the window boundary by re-centering, or, for
    /// fixed windows, checks they still fit.
    pub fn ensure(&mut self, indices: &[i64]) -> Result<(), StrategyError> {
        let lo = indices
            .iter()
            .copied()
            .min()
            .unwrap_or(self.robber.index)
            .min(self.robber.index);
        let hi = indices
            .iter()
            .copied()
            .max()
            .unwrap_or(self.robber.index)
            .max(self.robber.index);
        let base = self.base();
        let reach = base.j.max(base.k) as i64;
        if !self.recenter {
            if lo - reach < self.window.lo() || hi + reach > self.window.hi() {
                let at = if lo - reach < self.window.lo() {
                    lo
                } else {
                    hi
                };
                return Err(CoverError::WindowExhausted(Label::new(Rim::A, at)).into());
            }
            return Ok(());
        }
        let margin = (reach + 1) * base.n as i64;
        if lo - margin >= self.window.lo() && hi + margin <= self.window.hi() {
            return Ok(());
        }
        let half = CoverWindow::default_half_width(base);
        self.window = CoverWindow::new(base, lo - half, hi + half)?;
        Ok(())
    }

    /// Window distances from `l`, as a lookup by label.
    pub fn distances(&self, l: Label) -> Result<impl Fn(Label) -> u32 + '_, StrategyError> {
        let d = self.window.distances_from(l)?;
        Ok(move |x: Label| self.window.vertex(x).map_or(u32::MAX, |v| d[v]))
    }

    fn reselect(
        &self,
        lead: Label,
        target: i64,
        modulus: i64,
        flank: Flank,
    ) -> Result<Label, StrategyError> {
        let s = SquadState::new(0, lead);
        let s = match flank {
            Flank::Below => self.window.reselect_lead(s, target, modulus)?,
            Flank::Above => self.window.reselect_lead_above(s, target, modulus)?,
        };
        Ok(s.lead)
    }
}

/// A lead cop that first acquires congruence with the robber's index modulo
/// `modulus` by walking one rim, then keeps it from a fixed flank.
#[derive(Clone, Debug)]
pub(crate) struct CongruentCop {
    pub squad: usize,
    pub lead: Label,
    modulus: i64,
    /// Signed index step of the walk; the walk stays on `lead.rim`.
    walk: i64,
    flank: Flank,
    locked: bool,
    /// Gap to the robber at the end of the previous cop turn.
    last_gap: Option<i64>,
}

impl CongruentCop {
    pub fn new(squad: usize, start: Label, modulus: i64, walk: i64, flank: Flank) -> Self {
        CongruentCop {
            squad,
            lead: start,
            modulus,
            walk,
            flank,
            locked: false,
            last_gap: None,
        }
    }

    pub fn is_locked(&self) -> bool {
        self.locked
    }

    pub fn gap(&self, robber: Label) -> i64 {
        (robber.index - self.lead.index).abs()
    }

    /// Plays one turn. Returns the move, whether the gap to the robber
    /// shrank since the previous turn, and whether the robber jumped over
    /// the lead so that keeping congruence put it on the wrong flank.
    pub fn turn(&mut self, board: &Board) -> Result<(SquadMove, bool, bool), StrategyError> {
        let r = board.robber();
        let base = board.base();
        let mut crossed = false;
        let (from, to, phase, role) = if self.locked {
            let from = board.reselect(self.lead, r.index, self.modulus, self.flank)?;
            let to = match locked_move(base, from, r, self.modulus, self.flank) {
                Some(to) => to,
                None => {
                    crossed = true;
                    acquisition_move(base, from, r, self.modulus).ok_or_else(|| {
                        StrategyError::Invariant(format!(
                            "squad {} lost congruence at {from}",
                            self.squad
                        ))
                    })?
                }
            };
            (from, to, congruent_phase(to, r), Role::Congruent)
        } else if let Some(to) = acquisition_move(base, self.lead, r, self.modulus) {
            self.locked = true;
            (self.lead, to, congruent_phase(to, r), Role::Congruent)
        } else {
            let to = Label::new(self.lead.rim, self.lead.index + self.walk);
            (self.lead, to, Phase::CongruenceChase, Role::Walker)
        };
        self.lead = to;
        let gap = self.gap(r);
        let reduced = self.locked && self.last_gap.is_some_and(|g| gap < g);
        self.last_gap = self.locked.then_some(gap);
        Ok((
            SquadMove {
                squad: self.squad,
                role,
                phase,
                from,
                to,
            },
            reduced,
            crossed,
        ))
    }
}

#[derive(Clone, Debug)]
enum PairState {
    Chase {
        walkers: [Label; 2],
    },
    Locked {
        lead: usize,
        pos: [Label; 2],
        flank: Flank,
    },
}

/// Two squads on GP(inf, k): both walk the A rim in opposite directions
/// from the same start until one can become congruent to the robber modulo
/// `k`. That one keeps congruence from its flank; the other sweeps the A rim
/// toward the robber's index from the same flank.
#[derive(Clone, Debug)]
pub(crate) struct PushPair {
    squads: [usize; 2],
    modulus: i64,
    orientation: Orientation,
    state: PairState,
    chase_turns: usize,
}

impl PushPair {
    pub fn new(squads: [usize; 2], start: Label, modulus: i64, orientation: Orientation) -> Self {
        PushPair {
            squads,
            modulus,
            orientation,
            state: PairState::Chase {
                walkers: [start, start],
            },
            chase_turns: 0,
        }
    }

    pub fn leads(&self) -> [Label; 2] {
        match self.state {
            PairState::Chase { walkers } => walkers,
            PairState::Locked { pos, .. } => pos,
        }
    }

    /// Squad position (0 or 1) of the congruent lead, once locked.
    pub fn congruent_squad(&self) -> Option<usize> {
        match self.state {
            PairState::Chase { .. } => None,
            PairState::Locked { lead, .. } => Some(lead),
        }
    }

    pub fn chase_turns(&self) -> usize {
        self.chase_turns
    }

    pub fn phase(&self) -> Phase {
        match self.state {
            PairState::Chase { .. } => Phase::CongruenceChase,
            PairState::Locked { .. } => Phase::Push,
        }
    }

    /// Fixes the push direction. Leads move to the new flank by reselection
    /// at the start of the next turn.
    pub fn commit(&mut self, orientation: Orientation) {
        self.orientation = orientation;
        if let (PairState::Locked { flank, .. }, Some(f)) = (&mut self.state, orientation.flank()) {
            *flank = f;
        }
    }

    fn sweep(
        &self,
        board: &Board,
        from: Label,
        flank: Flank,
    ) -> Result<(Label, Label), StrategyError> {
        let r = board.robber();
        let from = board.reselect(from, r.index, 1, flank)?;
        let j = board.base().j as i64;
        let to = match flank {
            Flank::Below if from.index < r.index => Label::new(Rim::A, from.index + j),
            Flank::Above if from.index > r.index => Label::new(Rim::A, from.index - j),
            _ => from,
        };
        Ok((from, to))
    }

    pub fn turn(&mut self, board: &Board) -> Result<[SquadMove; 2], StrategyError> {
        let r = board.robber();
        let base = board.base();
        let m = self.modulus;
        match self.state {
            PairState::Chase { walkers } => {
                self.chase_turns += 1;
                let lock =
                    (0..2).find_map(|i| acquisition_move(base, walkers[i], r, m).map(|to| (i, to)));
                let Some((lead, to)) = lock else {
                    let j = base.j as i64;
                    let next = [
                        Label::new(Rim::A, walkers[0].index + j),
                        Label::new(Rim::A, walkers[1].index - j),
                    ];
                    self.state = PairState::Chase { walkers: next };
                    return Ok([0, 1].map(|i| SquadMove {
                        squad: self.squads[i],
                        role: Role::Walker,
                        phase: Phase::CongruenceChase,
                        from: walkers[i],
                        to: next[i],
                    }));
                };
                let flank = self.orientation.flank().unwrap_or(if to.index <= r.index {
                    Flank::Below
                } else {
                    Flank::Above
                });
                let other = 1 - lead;
                let (sweep_from, sweep_to) = self.sweep(board, walkers[other], flank)?;
                let mut pos = [to; 2];
                pos[other] = sweep_to;
                self.state = PairState::Locked { lead, pos, flank };
                let mut out = [
                    SquadMove {
                        squad: self.squads[lead],
                        role: Role::Congruent,
                        phase: congruent_phase(to, r),
                        from: walkers[lead],
                        to,
                    },
                    SquadMove {
                        squad: self.squads[other],
                        role: Role::Sweeper,
                        phase: Phase::Push,
                        from: sweep_from,
                        to: sweep_to,
                    },
                ];
                if lead == 1 {
                    out.swap(0, 1);
                }
                Ok(out)
            }
            PairState::Locked { lead, pos, flank } => {
                let other = 1 - lead;
                let from = board.reselect(pos[lead], r.index, m, flank)?;
                let to = locked_move(base, from, r, m, flank).ok_or_else(|| {
                    StrategyError::Invariant(format!(
                        "squad {} lost congruence at {from}",
                        self.squads[lead]
                    ))
                })?;
                let (sweep_from, sweep_to) = self.sweep(board, pos[other], flank)?;
                let mut next = [to; 2];
                next[other] = sweep_to;
                self.state = PairState::Locked {
                    lead,
                    pos: next,
                    flank,
                };
                let mut out = [
                    SquadMove {
                        squad: self.squads[lead],
                        role: Role::Congruent,
                        phase: congruent_phase(to, r),
                        from,
                        to,
                    },
                    SquadMove {
                        squad: self.squads[other],
                        role: Role::Sweeper,
                        phase: Phase::Push,
                        from: sweep_from,
                        to: sweep_to,
                    },
                ];
                if lead == 1 {
                    out.swap(0, 1);
                }
                Ok(out)
            }
        }
    }
}
