//! Two lead cops on a fixed window of GP(inf, k) that either capture the
//! robber's lift or push it out of the window.

use super::lifted::{Board, Orientation, PushPair};
use super::trace::WindowInfo;
use super::{Controller, CopTurn, Phase};
use crate::cover::CoverWindow;
use crate::error::StrategyError;
use crate::graph::{build_gp, GpParams, Graph, IGraphParams, Label, Rim, Vertex};

#[derive(Clone, Debug)]
pub struct WeakCopController {
    name: &'static str,
    graph: Graph,
    board: Board,
    pair: PushPair,
    orientation: Orientation,
}

/// Both leads start at `a_0`; whichever first gets a move congruent to the
/// robber's index modulo `k` keeps congruence from its side, the other
/// sweeps the A rim toward the robber from the same side.
pub fn weak_cop_controller(base: GpParams) -> Result<WeakCopController, StrategyError> {
    weak_cop_controller_in(base, CoverWindow::centered(base, 0, 0)?)
}

pub fn weak_cop_controller_in(
    base: GpParams,
    window: CoverWindow,
) -> Result<WeakCopController, StrategyError> {
    WeakCopController::build("weak2", base, window, Orientation::Free)
}

/// Like [`weak_cop_controller`], but both leads always stay below the
/// robber, so his index can only be pushed up.
pub fn force_right_controller(base: GpParams) -> Result<WeakCopController, StrategyError> {
    force_right_controller_in(base, CoverWindow::centered(base, 0, 0)?)
}

pub fn force_right_controller_in(
    base: GpParams,
    window: CoverWindow,
) -> Result<WeakCopController, StrategyError> {
    WeakCopController::build("forceright", base, window, Orientation::Up)
}

impl WeakCopController {
    fn build(
        name: &'static str,
        base: GpParams,
        window: CoverWindow,
        orientation: Orientation,
    ) -> Result<Self, StrategyError> {
        let base = GpParams::new(base.n, base.k)?;
        if window.base() != IGraphParams::from(base) {
            return Err(StrategyError::Precondition(format!(
                "window is not a cover of {base}"
            )));
        }
        let start = Label::new(Rim::A, 0);
        let n = base.n as i64;
        if !window.contains(Label::new(Rim::A, -n)) || !window.contains(Label::new(Rim::A, 2 * n)) {
            return Err(StrategyError::Precondition(
                "window must contain indices -n..2n".into(),
            ));
        }
        Ok(WeakCopController {
            name,
            graph: build_gp(base)?,
            board: Board::new(window, false),
            pair: PushPair::new([0, 1], start, base.k as i64, orientation),
            orientation,
        })
    }

    /// Cop turns spent searching for congruence so far.
    pub fn chase_turns(&self) -> usize {
        self.pair.chase_turns()
    }

    /// Current lead cops in the window.
    pub fn leads(&self) -> [Label; 2] {
        self.pair.leads()
    }

    pub fn phase(&self) -> Phase {
        self.pair.phase()
    }
}

impl Controller for WeakCopController {
    fn name(&self) -> &'static str {
        self.name
    }

    fn graph(&self) -> &Graph {
        &self.graph
    }

    fn cop_count(&self) -> usize {
        2
    }

    fn place_cops(&mut self) -> Result<Vec<Vertex>, StrategyError> {
        Ok(self
            .pair
            .leads()
            .iter()
            .map(|&l| self.board.project(l))
            .collect())
    }

    fn robber_placed(&mut self, at: Vertex) -> Result<(), StrategyError> {
        self.graph.check_vertex(at)?;
        let lift = self.board.lift_from(at, 0);
        self.board.place_robber(lift)
    }

    fn cop_turn(&mut self) -> Result<CopTurn, StrategyError> {
        let leads = self.pair.leads();
        self.board.ensure(&[leads[0].index, leads[1].index])?;
        let moves = self.pair.turn(&self.board)?;
        let mut positions = vec![0; 2];
        for m in &moves {
            positions[m.squad] = self.board.project(m.to);
        }
        let phase = match self.pair.congruent_squad() {
            None => Phase::CongruenceChase,
            Some(i) => moves[i].phase,
        };
        Ok(CopTurn {
            positions,
            phase: phase.to_string(),
            gc: None,
            squads: moves.to_vec(),
            guard: None,
            flags: Vec::new(),
        })
    }

    fn robber_moved(&mut self, to: Vertex) -> Result<(), StrategyError> {
        self.board.robber_moved(to)
    }

    fn robber_lift(&self) -> Option<Label> {
        Some(self.board.robber())
    }

    fn window(&self) -> Option<WindowInfo> {
        let w = self.board.window();
        let (push_low, push_high) = w.push_thresholds();
        Some(WindowInfo {
            lo: w.lo(),
            hi: w.hi(),
            push_low,
            push_high,
            orientation: self.orientation,
        })
    }

    fn pushed_out(&self) -> bool {
        self.window()
            .is_some_and(|w| w.is_pushed_out(self.board.robber()))
    }
}
