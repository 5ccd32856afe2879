//! Three cops on GP(n, 3): one guards the tree on `a_1, a_2, a_3, b_1, b_2,
//! b_3` in the cover, which separates indices `<= 0` from indices `>= 4`;
//! the other two push the robber's lift toward it.

use super::guard::TreeGuard;
use super::lifted::{Board, Orientation, PushPair};
use super::{Controller, CopTurn, Role, SquadMove};
use crate::cover::{cover_neighbors, CoverWindow};
use crate::error::StrategyError;
use crate::graph::{build_gp, GpParams, Graph, IGraphParams, Label, Rim, Vertex};

const TREE: [Label; 6] = [
    Label {
        rim: Rim::A,
        index: 1,
    },
    Label {
        rim: Rim::A,
        index: 2,
    },
    Label {
        rim: Rim::A,
        index: 3,
    },
    Label {
        rim: Rim::B,
        index: 1,
    },
    Label {
        rim: Rim::B,
        index: 2,
    },
    Label {
        rim: Rim::B,
        index: 3,
    },
];

/// Guard starts on `a_2`.
const GUARD_START: usize = 1;

#[derive(Clone, Debug)]
pub struct GpN3Controller {
    graph: Graph,
    board: Board,
    guard: TreeGuard,
    pair: PushPair,
    committed: Option<Orientation>,
}

/// Cop 0 guards the tree, cops 1 and 2 chase congruence freely until the
/// guard condition first holds, then push toward the tree.
pub fn gp_n3_controller(n: usize) -> Result<GpN3Controller, StrategyError> {
    let base = GpParams::new(n, 3)?;
    if n < 7 {
        return Err(StrategyError::Precondition(format!(
            "GP(n,3) needs n >= 7, got {n}"
        )));
    }
    let cover = IGraphParams::from(base);
    let adj = TREE
        .iter()
        .map(|&v| {
            let nb = cover_neighbors(cover, v);
            (0..TREE.len()).filter(|&w| nb.contains(&TREE[w])).collect()
        })
        .collect();
    Ok(GpN3Controller {
        graph: build_gp(base)?,
        board: Board::new(CoverWindow::centered(base, 2, 0)?, true),
        guard: TreeGuard::new(adj, GUARD_START),
        pair: PushPair::new([1, 2], Label::new(Rim::A, 0), 3, Orientation::Free),
        committed: None,
    })
}

impl GpN3Controller {
    /// The guarded tree in the cover.
    pub fn tree() -> [Label; 6] {
        TREE
    }

    pub fn established(&self) -> bool {
        self.guard.established()
    }

    /// Push direction, once chosen.
    pub fn orientation(&self) -> Option<Orientation> {
        self.committed
    }

    fn leads(&self) -> [Label; 3] {
        let [a, b] = self.pair.leads();
        [TREE[self.guard.cop()], a, b]
    }
}

impl Controller for GpN3Controller {
    fn name(&self) -> &'static str {
        "gpn3"
    }

    fn graph(&self) -> &Graph {
        &self.graph
    }

    fn cop_count(&self) -> usize {
        3
    }

    fn place_cops(&mut self) -> Result<Vec<Vertex>, StrategyError> {
        Ok(self
            .leads()
            .iter()
            .map(|&l| self.board.project(l))
            .collect())
    }

    /// The robber's lift has index in `1..=n`: on the tree when he starts on
    /// its projection, right of it otherwise.
    fn robber_placed(&mut self, at: Vertex) -> Result<(), StrategyError> {
        self.graph.check_vertex(at)?;
        let lift = self.board.lift_from(at, 1);
        self.board.place_robber(lift)
    }

    fn cop_turn(&mut self) -> Result<CopTurn, StrategyError> {
        let mut indices = self.leads().map(|l| l.index).to_vec();
        indices.extend([1, 3]);
        self.board.ensure(&indices)?;
        let r = self.board.robber();
        if self.committed.is_none() && self.guard.established() && !(1..=3).contains(&r.index) {
            let o = if r.index >= 4 {
                Orientation::Down
            } else {
                Orientation::Up
            };
            self.pair.commit(o);
            self.committed = Some(o);
        }

        let dist = self.board.distances(r)?;
        let robber_dist: Vec<u32> = TREE.iter().map(|&v| dist(v)).collect();
        let (from, to, status, guard_phase) = self.guard.step(&robber_dist)?;
        let mut squads = vec![SquadMove {
            squad: 0,
            role: Role::Guard,
            phase: guard_phase,
            from: TREE[from],
            to: TREE[to],
        }];
        squads.extend(self.pair.turn(&self.board)?);
        let mut positions = vec![0; 3];
        for m in &squads {
            positions[m.squad] = self.board.project(m.to);
        }
        let push = match self.committed {
            Some(Orientation::Up) => "up",
            Some(Orientation::Down) => "down",
            None | Some(Orientation::Free) => "free",
        };
        let phase = format!("guard:{guard_phase},{push}:{}", self.pair.phase());
        Ok(CopTurn {
            positions,
            phase,
            gc: Some(status.gc_holds),
            squads,
            guard: Some(status),
            flags: Vec::new(),
        })
    }

    fn robber_moved(&mut self, to: Vertex) -> Result<(), StrategyError> {
        self.board.robber_moved(to)
    }

    fn robber_lift(&self) -> Option<Label> {
        Some(self.board.robber())
    }

    fn guarded_tree(&self) -> Option<Vec<String>> {
        Some(TREE.iter().map(|l| l.to_string()).collect())
    }
}
