//! One cop guarding a finite isometric subtree.
//!
//! The guard condition holds when every tree vertex is at least as close
//! (in tree distance) to the cop as to the robber. The cop only ever moves
//! inside the tree: toward the component of `T - cop` that holds the
//! violating vertices, or not at all.

use std::collections::VecDeque;

use super::{Controller, CopTurn, GuardStatus, Phase};
use crate::error::StrategyError;
use crate::graph::{is_isometric_subgraph, is_tree, Graph, Subgraph, Vertex};

#[derive(Clone, Debug)]
pub(crate) struct TreeGuard {
    adj: Vec<Vec<usize>>,
    dist: Vec<Vec<u32>>,
    cop: usize,
    established: bool,
}

impl TreeGuard {
    pub fn new(adj: Vec<Vec<usize>>, start: usize) -> Self {
        let m = adj.len();
        let dist = (0..m)
            .map(|s| {
                let mut d = vec![u32::MAX; m];
                d[s] = 0;
                let mut queue = VecDeque::from([s]);
                while let Some(u) = queue.pop_front() {
                    for &w in &adj[u] {
                        if d[w] == u32::MAX {
                            d[w] = d[u] + 1;
                            queue.push_back(w);
                        }
                    }
                }
                d
            })
            .collect();
        TreeGuard {
            adj,
            dist,
            cop: start,
            established: false,
        }
    }

    pub fn cop(&self) -> usize {
        self.cop
    }

    pub fn established(&self) -> bool {
        self.established
    }

    fn violators(&self, cop: usize, robber_dist: &[u32]) -> Vec<usize> {
        (0..self.adj.len())
            .filter(|&v| self.dist[cop][v] > robber_dist[v])
            .collect()
    }

    /// Vertices reachable from `seed` in the tree without passing `cop`.
    fn component(&self, cop: usize, seed: usize) -> Vec<usize> {
        let mut seen = vec![false; self.adj.len()];
        seen[cop] = true;
        seen[seed] = true;
        let mut stack = vec![seed];
        let mut out = vec![seed];
        while let Some(u) = stack.pop() {
            for &w in &self.adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                    out.push(w);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Violating vertices and the component of `T - cop` holding them.
    fn deficient(
        &self,
        cop: usize,
        robber_dist: &[u32],
    ) -> Result<(Vec<usize>, Vec<usize>), StrategyError> {
        let violators = self.violators(cop, robber_dist);
        let Some(&first) = violators.first() else {
            return Ok((violators, Vec::new()));
        };
        if first == cop {
            return Err(StrategyError::Invariant(format!(
                "guard position {cop} is closer to the robber"
            )));
        }
        let comp = self.component(cop, first);
        if let Some(v) = violators.iter().find(|v| comp.binary_search(v).is_err()) {
            return Err(StrategyError::Invariant(format!(
                "violators {first} and {v} lie in different components of the tree minus the guard"
            )));
        }
        Ok((violators, comp))
    }

    /// One cop turn given the robber's distance to every tree vertex.
    pub fn step(
        &mut self,
        robber_dist: &[u32],
    ) -> Result<(usize, usize, GuardStatus, Phase), StrategyError> {
        let phase = if self.established {
            Phase::Guard
        } else {
            Phase::Establish
        };
        let from = self.cop;
        let (_, before) = self.deficient(from, robber_dist)?;
        let to = if before.is_empty() {
            from
        } else {
            *self.adj[from]
                .iter()
                .find(|w| before.binary_search(w).is_ok())
                .expect("a component of T - cop touches cop")
        };
        let (violators, component) = self.deficient(to, robber_dist)?;
        self.cop = to;
        if violators.is_empty() {
            self.established = true;
        }
        let status = GuardStatus {
            cop_position: to,
            gc_holds: violators.is_empty(),
            deficient_set: violators,
            component,
            component_before: before,
        };
        Ok((from, to, status, phase))
    }
}

/// Single-cop controller guarding `tree` in an arbitrary graph.
#[derive(Clone, Debug)]
pub struct TreeGuardController {
    graph: Graph,
    tree: Subgraph,
    dist: Vec<Vec<u32>>,
    guard: TreeGuard,
    start: usize,
    robber: Vertex,
}

/// Guards `tree`, which must be a finite isometric subtree of `g`, starting
/// from the tree vertex `start`.
pub fn tree_guard_controller(
    g: Graph,
    tree: Subgraph,
    start: Vertex,
) -> Result<TreeGuardController, StrategyError> {
    if !is_tree(&tree) {
        return Err(StrategyError::Precondition(
            "guarded subgraph is not a tree".into(),
        ));
    }
    if !is_isometric_subgraph(&g, &tree)? {
        return Err(StrategyError::Precondition(
            "guarded tree is not isometric".into(),
        ));
    }
    let Some(start) = tree.position(start) else {
        return Err(StrategyError::Precondition(format!(
            "start vertex {start} is not in the tree"
        )));
    };
    let adj = tree.local_adjacency()?;
    let dist = g.distance_matrix();
    Ok(TreeGuardController {
        graph: g,
        tree,
        dist,
        guard: TreeGuard::new(adj, start),
        start,
        robber: 0,
    })
}

impl TreeGuardController {
    pub fn tree(&self) -> &Subgraph {
        &self.tree
    }

    /// Current cop vertex.
    pub fn cop(&self) -> Vertex {
        self.tree.vertices[self.guard.cop()]
    }

    pub fn robber(&self) -> Vertex {
        self.robber
    }

    /// Whether the guard condition has held at the end of some cop turn.
    pub fn established(&self) -> bool {
        self.guard.established()
    }

    /// The guard condition for the current positions.
    pub fn gc_holds(&self) -> bool {
        let cop = self.guard.cop();
        self.tree
            .vertices
            .iter()
            .enumerate()
            .all(|(i, &v)| self.guard.dist[cop][i] <= self.dist[v][self.robber])
    }
}

impl Controller for TreeGuardController {
    fn name(&self) -> &'static str {
        "guard"
    }

    fn graph(&self) -> &Graph {
        &self.graph
    }

    fn cop_count(&self) -> usize {
        1
    }

    fn place_cops(&mut self) -> Result<Vec<Vertex>, StrategyError> {
        Ok(vec![self.tree.vertices[self.start]])
    }

    fn robber_placed(&mut self, at: Vertex) -> Result<(), StrategyError> {
        self.graph.check_vertex(at)?;
        self.robber = at;
        Ok(())
    }

    fn cop_turn(&mut self) -> Result<CopTurn, StrategyError> {
        let robber_dist: Vec<u32> = self
            .tree
            .vertices
            .iter()
            .map(|&v| self.dist[v][self.robber])
            .collect();
        let (_, to, status, phase) = self.guard.step(&robber_dist)?;
        Ok(CopTurn {
            positions: vec![self.tree.vertices[to]],
            phase: phase.to_string(),
            gc: Some(status.gc_holds),
            squads: Vec::new(),
            guard: Some(status),
            flags: Vec::new(),
        })
    }

    fn robber_moved(&mut self, to: Vertex) -> Result<(), StrategyError> {
        self.graph.check_vertex(to)?;
        self.robber = to;
        Ok(())
    }

    fn guarded_tree(&self) -> Option<Vec<String>> {
        Some(self.tree.vertices.iter().map(|v| v.to_string()).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle_graph, path_graph};
    use crate::strategies::{simulate, Outcome, RobberPolicy};

    fn c12_path() -> (Graph, Subgraph) {
        let g = cycle_graph(12).unwrap();
        let tree = Subgraph::induced(&g, vec![0, 1, 2, 3, 4]);
        (g, tree)
    }

    #[test]
    fn rejects_bad_trees() {
        let g = cycle_graph(6).unwrap();
        let long = Subgraph::induced(&g, vec![0, 1, 2, 3, 4]);
        assert!(matches!(
            tree_guard_controller(g.clone(), long, 0),
            Err(StrategyError::Precondition(_))
        ));
        let cycle = Subgraph::induced(&g, (0..6).collect());
        assert!(matches!(
            tree_guard_controller(g.clone(), cycle, 0),
            Err(StrategyError::Precondition(_))
        ));
        let path = Subgraph::induced(&g, vec![0, 1]);
        assert!(matches!(
            tree_guard_controller(g, path, 4),
            Err(StrategyError::Precondition(_))
        ));
    }

    #[test]
    fn far_robber_means_no_move() {
        let (g, tree) = c12_path();
        let mut ctl = tree_guard_controller(g, tree, 2).unwrap();
        ctl.place_cops().unwrap();
        ctl.robber_placed(8).unwrap();
        let turn = ctl.cop_turn().unwrap();
        assert_eq!(turn.positions, vec![2]);
        assert_eq!(turn.gc, Some(true));
        assert!(turn.guard.unwrap().component_before.is_empty());
    }

    #[test]
    fn establishment_shrinks_and_robber_on_tree_is_caught() {
        let (g, tree) = c12_path();
        let mut ctl = tree_guard_controller(g, tree, 0).unwrap();
        ctl.place_cops().unwrap();
        ctl.robber_placed(6).unwrap();
        let mut sizes = Vec::new();
        while !ctl.established() {
            let t = ctl.cop_turn().unwrap();
            let st = t.guard.unwrap();
            assert!(st.component.len() < st.component_before.len());
            sizes.push(st.component_before.len());
        }
        assert!(sizes.windows(2).all(|w| w[1] < w[0]));
        assert!(ctl.gc_holds());
        ctl.robber_moved(5).unwrap();
        let t = ctl.cop_turn().unwrap();
        assert_eq!(t.gc, Some(true));
        ctl.robber_moved(4).unwrap();
        let t = ctl.cop_turn().unwrap();
        assert_eq!(t.positions, vec![4]);
    }

    #[test]
    fn path_graph_guard_captures_a_greedy_robber() {
        let g = path_graph(9).unwrap();
        let tree = Subgraph::induced(&g, (0..9).collect());
        let mut ctl = tree_guard_controller(g, tree, 4).unwrap();
        let trace = simulate(&mut ctl, &RobberPolicy::Greedy, 20).unwrap();
        assert_eq!(trace.outcome, Outcome::Capture);
    }
}
