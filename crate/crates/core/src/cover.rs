//! Finite windows of the infinite cyclic covers GP(inf, k) and I(inf, j, k),
//! with the covering projection, unique edge lifting and squad bookkeeping.
//!
//! A window covers indices `lo..=hi` on both rims. Window vertex ids are
//! `a_i -> i - lo` and `b_i -> width + i - lo` where `width = hi - lo + 1`;
//! quotient ids follow the family convention `a_i -> i mod n`,
//! `b_i -> n + (i mod n)`.

use serde::{Deserialize, Serialize};

use crate::error::CoverError;
use crate::graph::{Family, Graph, IGraphParams, Label, Rim, Vertex};

/// A move of one pawn on the quotient graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum QuotientMove {
    Pass,
    Step { from: Vertex, to: Vertex },
}

impl QuotientMove {
    pub fn between(from: Vertex, to: Vertex) -> Self {
        if from == to {
            QuotientMove::Pass
        } else {
            QuotientMove::Step { from, to }
        }
    }
}

/// Lead cop of a squad. The other members sit at `lead.index + q * n` on the
/// same rim and are never materialized.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquadState {
    pub lead: Label,
    pub squad: usize,
}

impl SquadState {
    pub fn new(squad: usize, lead: Label) -> Self {
        SquadState { lead, squad }
    }

    pub fn base_cop_index(&self) -> i64 {
        self.lead.index
    }

    pub fn rim(&self) -> Rim {
        self.lead.rim
    }
}

#[derive(Clone, Debug)]
pub struct CoverWindow {
    base: IGraphParams,
    lo: i64,
    hi: i64,
    graph: Graph,
}

/// The three cover neighbors of `l` (A-rim step `j`, B-rim step `k`).
pub fn cover_neighbors(base: IGraphParams, l: Label) -> [Label; 3] {
    let (j, k) = (base.j as i64, base.k as i64);
    match l.rim {
        Rim::A => [
            Label::new(Rim::A, l.index - j),
            Label::new(Rim::A, l.index + j),
            Label::new(Rim::B, l.index),
        ],
        Rim::B => [
            Label::new(Rim::A, l.index),
            Label::new(Rim::B, l.index - k),
            Label::new(Rim::B, l.index + k),
        ],
    }
}

/// Quotient id of a cover label.
pub fn project_label(base: IGraphParams, l: Label) -> Vertex {
    let n = base.n as i64;
    let i = l.index.rem_euclid(n) as usize;
    match l.rim {
        Rim::A => i,
        Rim::B => base.n + i,
    }
}

impl CoverWindow {
    /// Smallest admissible `hi - lo`.
    pub fn min_span(base: IGraphParams) -> i64 {
        4 * base.n as i64
    }

    pub fn new(base: impl Into<IGraphParams>, lo: i64, hi: i64) -> Result<Self, CoverError> {
        let base: IGraphParams = base.into();
        let base = IGraphParams::new(base.n, base.j, base.k)?;
        let min = Self::min_span(base);
        if hi - lo < min {
            return Err(CoverError::WindowTooSmall { lo, hi, min });
        }
        let width = (hi - lo + 1) as usize;
        let labels: Vec<Label> = (lo..=hi)
            .map(|i| Label::new(Rim::A, i))
            .chain((lo..=hi).map(|i| Label::new(Rim::B, i)))
            .collect();
        let (j, k) = (base.j, base.k);
        let edges = (0..width).flat_map(move |x| {
            let mut e = vec![(x, width + x)];
            if x + j < width {
                e.push((x, x + j));
            }
            if x + k < width {
                e.push((width + x, width + x + k));
            }
            e
        });
        let graph = Graph::from_labeled_edges(labels, Family::CoverWindow { base, lo, hi }, edges);
        Ok(CoverWindow {
            base,
            lo,
            hi,
            graph,
        })
    }

    /// Window centered on `center` with half-width `(2 * max(j, k) + 2) * n + slack`.
    pub fn centered(
        base: impl Into<IGraphParams>,
        center: i64,
        slack: i64,
    ) -> Result<Self, CoverError> {
        let base: IGraphParams = base.into();
        let half = Self::default_half_width(base) + slack.max(0);
        Self::new(base, center - half, center + half)
    }

    pub fn default_half_width(base: IGraphParams) -> i64 {
        (2 * base.j.max(base.k) as i64 + 2) * base.n as i64
    }

    pub fn base(&self) -> IGraphParams {
        self.base
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.hi
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    fn width(&self) -> usize {
        (self.hi - self.lo + 1) as usize
    }

    pub fn contains(&self, l: Label) -> bool {
        (self.lo..=self.hi).contains(&l.index)
    }

    /// Vertices whose three cover neighbors all lie in the window.
    pub fn is_interior(&self, l: Label) -> bool {
        let reach = self.base.j.max(self.base.k) as i64;
        self.lo + reach <= l.index && l.index <= self.hi - reach
    }

    pub fn vertex(&self, l: Label) -> Result<Vertex, CoverError> {
        if !self.contains(l) {
            return Err(CoverError::WindowExhausted(l));
        }
        let x = (l.index - self.lo) as usize;
        Ok(match l.rim {
            Rim::A => x,
            Rim::B => self.width() + x,
        })
    }

    pub fn label(&self, v: Vertex) -> Label {
        self.graph.label(v).expect("window graphs are labeled")
    }

    /// Same rim, index reduced modulo `n`.
    pub fn project(&self, l: Label) -> Vertex {
        project_label(self.base, l)
    }

    pub fn project_vertex(&self, v: Vertex) -> Vertex {
        self.project(self.label(v))
    }

    /// Window neighbors of `l` (boundary vertices have fewer than three).
    pub fn neighbors(&self, l: Label) -> Result<Vec<Label>, CoverError> {
        let v = self.vertex(l)?;
        Ok(self
            .graph
            .neighbors(v)
            .iter()
            .map(|&w| self.label(w))
            .collect())
    }

    /// Head of the unique lift at `at` of a quotient move.
    pub fn lift_move(&self, mv: QuotientMove, at: Label) -> Result<Label, CoverError> {
        if !self.contains(at) {
            return Err(CoverError::WindowExhausted(at));
        }
        let QuotientMove::Step { from, to } = mv else {
            return Ok(at);
        };
        if self.project(at) != from {
            return Err(CoverError::TailMismatch {
                expected: from.to_string(),
                at,
            });
        }
        let head = cover_neighbors(self.base, at)
            .into_iter()
            .find(|&l| self.project(l) == to)
            .ok_or(CoverError::NotAnEdge(from, to))?;
        if !self.contains(head) {
            return Err(CoverError::WindowExhausted(head));
        }
        Ok(head)
    }

    /// Moves the lead to the squad member with the largest index below
    /// `target` whose index is congruent to the current lead modulo
    /// `modulus * n`. A lead already below `target` is kept.
    pub fn reselect_lead(
        &self,
        s: SquadState,
        target: i64,
        modulus: i64,
    ) -> Result<SquadState, CoverError> {
        if modulus <= 0 {
            return Err(CoverError::BadModulus);
        }
        let idx = s.lead.index;
        if idx < target {
            return Ok(s);
        }
        let step = modulus * self.base.n as i64;
        let m = (idx - target) / step + 1;
        self.with_index(s, idx - m * step)
    }

    /// Mirror of [`reselect_lead`](Self::reselect_lead): smallest qualifying
    /// index above `target`.
    pub fn reselect_lead_above(
        &self,
        s: SquadState,
        target: i64,
        modulus: i64,
    ) -> Result<SquadState, CoverError> {
        if modulus <= 0 {
            return Err(CoverError::BadModulus);
        }
        let idx = s.lead.index;
        if idx > target {
            return Ok(s);
        }
        let step = modulus * self.base.n as i64;
        let m = (target - idx) / step + 1;
        self.with_index(s, idx + m * step)
    }

    fn with_index(&self, s: SquadState, index: i64) -> Result<SquadState, CoverError> {
        let lead = Label::new(s.lead.rim, index);
        if !self.contains(lead) {
            return Err(CoverError::WindowExhausted(lead));
        }
        Ok(SquadState {
            lead,
            squad: s.squad,
        })
    }

    /// Hop distances inside the window from `l`, indexed by window vertex id.
    pub fn distances_from(&self, l: Label) -> Result<Vec<u32>, CoverError> {
        Ok(self.graph.bfs(self.vertex(l)?))
    }

    /// Index thresholds past which a robber counts as pushed out:
    /// one quarter and three quarters of the way across the window.
    pub fn push_thresholds(&self) -> (i64, i64) {
        let span = self.hi - self.lo;
        (self.lo + span / 4, self.lo + 3 * span / 4)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_igraph, GpParams};
    use proptest::prelude::*;

    fn gp_base(n: usize, k: usize) -> IGraphParams {
        GpParams { n, k }.into()
    }

    #[test]
    fn window_shape() {
        let w = CoverWindow::new(gp_base(7, 2), -14, 14).unwrap();
        assert_eq!(w.graph().n_vertices(), 58);
        let a0 = Label::new(Rim::A, 0);
        let mut nb = w.neighbors(a0).unwrap();
        nb.sort();
        assert_eq!(
            nb,
            vec![
                Label::new(Rim::A, -1),
                Label::new(Rim::A, 1),
                Label::new(Rim::B, 0)
            ]
        );
        let bhi = w.vertex(Label::new(Rim::B, 14)).unwrap();
        assert!(w.graph().degree(bhi) < 3);
        for v in 0..w.graph().n_vertices() {
            let l = w.label(v);
            if w.is_interior(l) {
                assert_eq!(w.graph().degree(v), 3, "{l}");
            }
        }
        assert!(matches!(
            CoverWindow::new(gp_base(7, 2), 0, 27),
            Err(CoverError::WindowTooSmall { .. })
        ));
    }

    #[test]
    fn projection_examples() {
        let n = 9;
        let w = CoverWindow::new(gp_base(n, 2), -40, 40).unwrap();
        assert_eq!(w.project(Label::new(Rim::A, n as i64 + 3)), 3);
        assert_eq!(w.project(Label::new(Rim::B, -1)), n + n - 1);
        for i in -20..20 {
            for rim in [Rim::A, Rim::B] {
                let l = Label::new(rim, i);
                assert_eq!(w.project(l), w.project(Label::new(rim, i + n as i64)));
            }
        }
    }

    #[test]
    fn lift_examples() {
        let n = 7i64;
        let w = CoverWindow::new(gp_base(7, 2), -30, 30).unwrap();
        let edge = QuotientMove::Step {
            from: (n - 1) as usize,
            to: 0,
        };
        assert_eq!(
            w.lift_move(edge, Label::new(Rim::A, n - 1)).unwrap(),
            Label::new(Rim::A, n)
        );
        assert_eq!(
            w.lift_move(edge, Label::new(Rim::A, 2 * n - 1)).unwrap(),
            Label::new(Rim::A, 2 * n)
        );
        let at = Label::new(Rim::B, 5);
        assert_eq!(w.lift_move(QuotientMove::Pass, at).unwrap(), at);
        assert!(matches!(
            w.lift_move(edge, Label::new(Rim::A, 0)),
            Err(CoverError::TailMismatch { .. })
        ));
        assert!(matches!(
            w.lift_move(QuotientMove::Step { from: 0, to: 3 }, Label::new(Rim::A, 0)),
            Err(CoverError::NotAnEdge(0, 3))
        ));
        assert!(matches!(
            w.lift_move(
                QuotientMove::Step { from: 2, to: 3 },
                Label::new(Rim::A, 30)
            ),
            Err(CoverError::WindowExhausted(_))
        ));
    }

    #[test]
    fn reselect_examples() {
        let (n, k) = (7i64, 2i64);
        let w = CoverWindow::new(gp_base(7, 2), -200, 200).unwrap();
        let s = SquadState::new(0, Label::new(Rim::B, 5));
        assert_eq!(w.reselect_lead(s, 9, k).unwrap(), s);
        let moved = w.reselect_lead(s, 5, k).unwrap();
        assert_eq!(moved.lead.index, 5 - k * n);
        let moved = w.reselect_lead(s, -20, k).unwrap();
        assert_eq!(moved.lead.index, 5 - 2 * k * n);
        assert_eq!((moved.lead.index - 5).rem_euclid(k), 0);
        assert_eq!((moved.lead.index - 5).rem_euclid(n), 0);
        assert_eq!(w.project(moved.lead), w.project(s.lead));
        let up = w.reselect_lead_above(s, 5, k).unwrap();
        assert_eq!(up.lead.index, 5 + k * n);
        assert!(matches!(
            w.reselect_lead(s, -195, k),
            Err(CoverError::WindowExhausted(_))
        ));
    }

    #[test]
    fn projection_is_a_homomorphism_with_unique_lifts() {
        for base in [
            gp_base(7, 2),
            gp_base(10, 3),
            IGraphParams { n: 8, j: 2, k: 3 },
            IGraphParams { n: 12, j: 2, k: 4 },
        ] {
            let quotient = build_igraph(base).unwrap();
            let w = CoverWindow::centered(base, 0, 0).unwrap();
            let g = w.graph();
            for (u, v) in g.edges() {
                assert!(quotient.has_edge(w.project_vertex(u), w.project_vertex(v)));
            }
            for v in 0..g.n_vertices() {
                let l = w.label(v);
                if !w.is_interior(l) {
                    continue;
                }
                let q = w.project(l);
                for &head in quotient.neighbors(q) {
                    let lifts = g
                        .neighbors(v)
                        .iter()
                        .filter(|&&x| w.project_vertex(x) == head)
                        .count();
                    assert_eq!(lifts, 1);
                }
            }
        }
    }

    proptest! {
        #[test]
        fn squads_stay_consistent(start in -20i64..20, moves in proptest::collection::vec(0usize..4, 0..30)) {
            let base = gp_base(9, 4);
            let quotient = build_igraph(base).unwrap();
            let w = CoverWindow::new(base, -500, 500).unwrap();
            let mut squad: Vec<Label> = (-3..=3).map(|q| Label::new(Rim::A, start + 9 * q)).collect();
            for choice in moves {
                let from = w.project(squad[0]);
                let mut options = quotient.neighbors(from).to_vec();
                options.push(from);
                let mv = QuotientMove::between(from, options[choice % options.len()]);
                for member in squad.iter_mut() {
                    *member = w.lift_move(mv, *member).unwrap();
                }
                for m in &squad {
                    prop_assert_eq!(m.rim, squad[0].rim);
                    prop_assert_eq!((m.index - squad[0].index).rem_euclid(9), 0);
                    prop_assert_eq!(w.project(*m), w.project(squad[0]));
                }
            }
        }

        #[test]
        fn reselection_keeps_projection(idx in -100i64..100, target in -100i64..100, modulus in 1i64..5) {
            let w = CoverWindow::new(gp_base(11, 4), -2000, 2000).unwrap();
            let s = SquadState::new(1, Label::new(Rim::B, idx));
            let r = w.reselect_lead(s, target, modulus).unwrap();
            prop_assert!(r.lead.index < target || r == s);
            prop_assert!(r.lead.index < target || idx < target);
            prop_assert_eq!(w.project(r.lead), w.project(s.lead));
            prop_assert_eq!((r.lead.index - idx).rem_euclid(modulus * 11), 0);
            prop_assert!(r.lead.index + modulus * 11 >= target || idx < target);
        }
    }
}
