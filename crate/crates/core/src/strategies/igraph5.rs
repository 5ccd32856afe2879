//! Five cops on a connected I-graph I(n, j, k).
//!
//! Cops 0 and 1 walk the A rim (steps of `j`) until congruent to the
//! robber's index modulo `k`, cops 2 and 3 walk the B rim (steps of `k`)
//! until congruent modulo `j`; within each pair one keeps below the robber
//! and one above. Cop 4 heads for the robber's spoke so he cannot pass or
//! flip rims forever.

use super::lifted::{closed_moves, Board, CongruentCop, Flank};
use super::{Controller, CopTurn, Phase, Role, SquadMove};
use crate::cover::CoverWindow;
use crate::error::StrategyError;
use crate::graph::{build_igraph, gcd_i64, Graph, IGraphParams, Label, Rim, Vertex};

#[derive(Clone, Debug)]
pub struct IGraphFiveController {
    graph: Graph,
    board: Board,
    congruent: [CongruentCop; 4],
    approach: Label,
    stalls: usize,
}

pub fn igraph_five_cop_controller(
    params: IGraphParams,
) -> Result<IGraphFiveController, StrategyError> {
    let params = IGraphParams::new(params.n, params.j, params.k)?;
    if !params.is_connected() {
        return Err(StrategyError::Precondition(format!(
            "{params} is disconnected"
        )));
    }
    let mut ctl = IGraphFiveController {
        graph: build_igraph(params)?,
        board: Board::new(CoverWindow::centered(params, 0, 0)?, true),
        congruent: squads(params, 0),
        approach: Label::new(Rim::A, 0),
        stalls: 0,
    };
    ctl.approach = ctl.congruent[0].lead;
    Ok(ctl)
}

fn squads(p: IGraphParams, origin: i64) -> [CongruentCop; 4] {
    let (j, k) = (p.j as i64, p.k as i64);
    let a = Label::new(Rim::A, origin);
    let b = Label::new(Rim::B, origin);
    [
        CongruentCop::new(0, a, k, j, Flank::Below),
        CongruentCop::new(1, a, k, -j, Flank::Above),
        CongruentCop::new(2, b, j, k, Flank::Below),
        CongruentCop::new(3, b, j, -k, Flank::Above),
    ]
}

impl IGraphFiveController {
    /// Lead cops in cop order.
    pub fn leads(&self) -> [Label; 5] {
        let c = &self.congruent;
        [c[0].lead, c[1].lead, c[2].lead, c[3].lead, self.approach]
    }

    /// Turns in which all four congruent cops were locked and none closed
    /// its gap to the robber.
    pub fn stalls(&self) -> usize {
        self.stalls
    }

    fn approach_move(&self) -> Result<Label, StrategyError> {
        let r = self.board.robber();
        let partner = Label::new(r.rim.other(), r.index);
        let to_robber = self.board.distances(r)?;
        let to_partner = self.board.distances(partner)?;
        let best = closed_moves(self.board.base(), self.approach)
            .into_iter()
            .filter(|&m| self.board.window().contains(m))
            .min_by_key(|&m| {
                let d = to_robber(m);
                (d.min(to_partner(m)), d, m)
            })
            .expect("the current position is always a candidate");
        Ok(best)
    }
}

impl Controller for IGraphFiveController {
    fn name(&self) -> &'static str {
        "igraph5"
    }

    fn graph(&self) -> &Graph {
        &self.graph
    }

    fn cop_count(&self) -> usize {
        5
    }

    fn place_cops(&mut self) -> Result<Vec<Vertex>, StrategyError> {
        Ok(self
            .leads()
            .iter()
            .map(|&l| self.board.project(l))
            .collect())
    }

    /// Leads are re-chosen among the lifts of their start vertices so that
    /// they share the robber lift's component of the cover.
    fn robber_placed(&mut self, at: Vertex) -> Result<(), StrategyError> {
        self.graph.check_vertex(at)?;
        let p = self.board.base();
        let lift = self.board.lift_from(at, 0);
        let g = gcd_i64(p.j as i64, p.k as i64);
        let n = p.n as i64;
        let q = (0..g)
            .find(|q| (q * n - lift.index).rem_euclid(g) == 0)
            .ok_or_else(|| {
                StrategyError::Precondition(format!(
                    "{p} has no lift of a_0 in the robber's component"
                ))
            })?;
        self.congruent = squads(p, q * n);
        self.approach = Label::new(Rim::A, q * n);
        self.board.place_robber(lift)
    }

    fn cop_turn(&mut self) -> Result<CopTurn, StrategyError> {
        let indices = self.leads().map(|l| l.index);
        self.board.ensure(&indices)?;
        let all_locked = self.congruent.iter().all(CongruentCop::is_locked);
        let mut squads = Vec::with_capacity(5);
        let mut reduced = false;
        let mut flags = Vec::new();
        for c in &mut self.congruent {
            let (m, red, crossed) = c.turn(&self.board)?;
            reduced |= red;
            if crossed {
                flags.push(format!("robber jumped over squad {}", c.squad));
            }
            squads.push(m);
        }
        let to = self.approach_move()?;
        squads.push(SquadMove {
            squad: 4,
            role: Role::Approach,
            phase: Phase::Approach,
            from: self.approach,
            to,
        });
        self.approach = to;

        if all_locked && !reduced {
            self.stalls += 1;
            flags.push("no congruent lead closed in".to_string());
        }
        let positions = squads.iter().map(|m| self.board.project(m.to)).collect();
        let names = ["k-", "k+", "j-", "j+", "c5"];
        let phase = names
            .iter()
            .zip(&squads)
            .map(|(name, m)| format!("{name}:{}", m.phase))
            .collect::<Vec<_>>()
            .join(",");
        Ok(CopTurn {
            positions,
            phase,
            gc: None,
            squads,
            guard: None,
            flags,
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

    fn ip(n: usize, j: usize, k: usize) -> IGraphParams {
        IGraphParams { n, j, k }
    }

    #[test]
    fn rejects_disconnected() {
        assert!(matches!(
            igraph_five_cop_controller(ip(6, 2, 2)),
            Err(StrategyError::Precondition(_))
        ));
    }

    #[test]
    fn greedy_robbers_are_caught() {
        for p in [
            ip(7, 3, 2),
            ip(7, 1, 3),
            ip(12, 2, 4),
            ip(10, 4, 2),
            ip(13, 5, 3),
        ] {
            if !p.is_connected() {
                continue;
            }
            let mut ctl = igraph_five_cop_controller(p).unwrap();
            let trace = simulate(&mut ctl, &RobberPolicy::Greedy, 50 * p.n).unwrap();
            assert_eq!(trace.outcome, Outcome::Capture, "{p}");
            assert_eq!(verify_trace(ctl.graph(), &trace).unwrap(), Outcome::Capture);
        }
    }

    #[test]
    fn leads_share_the_robber_component() {
        let p = ip(9, 2, 4);
        assert!(p.is_connected());
        for v in 0..18 {
            let mut ctl = igraph_five_cop_controller(p).unwrap();
            ctl.place_cops().unwrap();
            ctl.robber_placed(v).unwrap();
            let r = ctl.robber_lift().unwrap();
            for l in ctl.leads() {
                assert_eq!((l.index - r.index).rem_euclid(2), 0);
            }
        }
    }
}
