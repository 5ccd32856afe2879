//! Four cops on GP(n, k): two pushing pairs with opposite orientations
//! squeeze one fixed lift of the robber from both sides.

use super::lifted::{Board, Orientation, PushPair};
use super::{Controller, CopTurn};
use crate::cover::CoverWindow;
use crate::error::StrategyError;
use crate::graph::{build_gp, GpParams, Graph, Label, Rim, Vertex};

#[derive(Clone, Debug)]
pub struct FourCopController {
    graph: Graph,
    board: Board,
    up: PushPair,
    down: PushPair,
}

/// Cops 0 and 1 push the robber's lift up, cops 2 and 3 push it down. The
/// window re-centers on the play as needed.
pub fn four_cop_controller(base: GpParams) -> Result<FourCopController, StrategyError> {
    let base = GpParams::new(base.n, base.k)?;
    let start = Label::new(Rim::A, 0);
    let k = base.k as i64;
    Ok(FourCopController {
        graph: build_gp(base)?,
        board: Board::new(CoverWindow::centered(base, 0, 0)?, true),
        up: PushPair::new([0, 1], start, k, Orientation::Up),
        down: PushPair::new([2, 3], start, k, Orientation::Down),
    })
}

impl FourCopController {
    /// Lead cops in cop order.
    pub fn leads(&self) -> [Label; 4] {
        let [a, b] = self.up.leads();
        let [c, d] = self.down.leads();
        [a, b, c, d]
    }

    /// Cop turns each pair spent searching for congruence.
    pub fn chase_turns(&self) -> [usize; 2] {
        [self.up.chase_turns(), self.down.chase_turns()]
    }
}

impl Controller for FourCopController {
    fn name(&self) -> &'static str {
        "four"
    }

    fn graph(&self) -> &Graph {
        &self.graph
    }

    fn cop_count(&self) -> usize {
        4
    }

    fn place_cops(&mut self) -> Result<Vec<Vertex>, StrategyError> {
        Ok(self
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
        let indices = self.leads().map(|l| l.index);
        self.board.ensure(&indices)?;
        let mut squads = self.up.turn(&self.board)?.to_vec();
        squads.extend(self.down.turn(&self.board)?);
        let mut positions = vec![0; 4];
        for m in &squads {
            positions[m.squad] = self.board.project(m.to);
        }
        let phase = format!("up:{},down:{}", self.up.phase(), self.down.phase());
        Ok(CopTurn {
            positions,
            phase,
            gc: None,
            squads,
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
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strategies::{simulate, verify_trace, Outcome, RobberPolicy};

    #[test]
    fn stationary_robber_is_caught() {
        for (n, k) in [(8, 3), (10, 2), (13, 5)] {
            for v in [0, 3, n + 2] {
                let mut ctl = four_cop_controller(GpParams { n, k }).unwrap();
                let trace = simulate(&mut ctl, &RobberPolicy::Scripted(vec![v]), 50 * n).unwrap();
                assert_eq!(trace.outcome, Outcome::Capture, "GP({n},{k}) robber at {v}");
                assert_eq!(verify_trace(ctl.graph(), &trace).unwrap(), Outcome::Capture);
            }
        }
    }

    #[test]
    fn greedy_robber_on_gp_26_10() {
        let mut ctl = four_cop_controller(GpParams { n: 26, k: 10 }).unwrap();
        let trace = simulate(&mut ctl, &RobberPolicy::Greedy, 50 * 26).unwrap();
        assert_eq!(trace.outcome, Outcome::Capture);
        assert_eq!(verify_trace(ctl.graph(), &trace).unwrap(), Outcome::Capture);
    }
}
