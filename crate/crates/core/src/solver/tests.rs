use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::graph::{build_gp, cycle_graph, path_graph, GpParams};

/// Naive value iteration over ordered cop tuples: no multisets, no counters,
/// no bit packing. After round `d`, `cop[s]` / `rob[s]` hold whether capture
/// is forced within `d` cop moves.
struct Oracle {
    n: usize,
    c: usize,
    dist_cop: Vec<Option<u32>>,
    dist_rob: Vec<Option<u32>>,
}

impl Oracle {
    fn new(g: &Graph, c: usize) -> Self {
        let n = g.n_vertices();
        let tuples = n.pow(c as u32);
        let closed: Vec<Vec<usize>> = (0..n)
            .map(|v| {
                let mut l = g.neighbors(v).to_vec();
                l.push(v);
                l
            })
            .collect();
        let decode = |t: usize| -> Vec<usize> {
            let mut t = t;
            (0..c)
                .map(|_| {
                    let p = t % n;
                    t /= n;
                    p
                })
                .collect()
        };
        let encode = |v: &[usize]| v.iter().rev().fold(0, |acc, &p| acc * n + p);
        let moves: Vec<Vec<usize>> = (0..tuples)
            .map(|t| {
                let cur = decode(t);
                let mut out = vec![Vec::new()];
                for &p in &cur {
                    out = out
                        .into_iter()
                        .flat_map(|pre: Vec<usize>| {
                            closed[p].iter().map(move |&q| {
                                let mut x = pre.clone();
                                x.push(q);
                                x
                            })
                        })
                        .collect();
                }
                out.iter().map(|v| encode(v)).collect()
            })
            .collect();
        let occupied = |t: usize, r: usize| decode(t).contains(&r);

        let mut dist_cop = vec![None; tuples * n];
        let mut dist_rob = vec![None; tuples * n];
        for t in 0..tuples {
            for r in 0..n {
                if occupied(t, r) {
                    dist_rob[t * n + r] = Some(0);
                    dist_cop[t * n + r] = Some(0);
                }
            }
        }
        let mut d = 0;
        loop {
            d += 1;
            let prev_rob = dist_rob.clone();
            let mut changed = false;
            for t in 0..tuples {
                for r in 0..n {
                    if dist_cop[t * n + r].is_none()
                        && moves[t].iter().any(|&t2| prev_rob[t2 * n + r].is_some())
                    {
                        dist_cop[t * n + r] = Some(d);
                        changed = true;
                    }
                }
            }
            for t in 0..tuples {
                for r in 0..n {
                    if dist_rob[t * n + r].is_none()
                        && closed[r].iter().all(|&r2| dist_cop[t * n + r2].is_some())
                    {
                        dist_rob[t * n + r] = Some(d);
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        Oracle {
            n,
            c,
            dist_cop,
            dist_rob,
        }
    }

    fn tuple(&self, cops: &[usize]) -> usize {
        cops.iter().rev().fold(0, |acc, &p| acc * self.n + p)
    }

    fn distance(&self, s: &GameState) -> Option<u32> {
        let t = self.tuple(&s.cops);
        match s.to_move {
            Side::Cop => self.dist_cop[t * self.n + s.robber],
            Side::Robber => self.dist_rob[t * self.n + s.robber],
        }
    }

    fn cops_win(&self) -> bool {
        (0..self.n.pow(self.c as u32))
            .any(|t| (0..self.n).all(|r| self.dist_rob[t * self.n + r].is_some()))
    }
}

fn all_states(table: &SolveTable) -> impl Iterator<Item = GameState> + '_ {
    (0..table.total_states()).map(|r| table.unrank(r))
}

fn random_connected_graph(rng: &mut ChaCha8Rng, n: usize, extra: usize) -> Graph {
    let mut edges = HashSet::new();
    for v in 1..n {
        let u = rng.gen_range(0..v);
        edges.insert((u, v));
    }
    for _ in 0..extra {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u != v {
            edges.insert((u.min(v), u.max(v)));
        }
    }
    let edges: Vec<_> = edges.into_iter().collect();
    Graph::from_edges(n, &edges).unwrap()
}

fn gp(n: usize, k: usize) -> Graph {
    build_gp(GpParams { n, k }).unwrap()
}

#[test]
fn single_edge_is_all_cop_win() {
    let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
    let t = solve(&g, 1).unwrap();
    for s in all_states(&t) {
        assert_eq!(t.label(&s), StateLabel::CopWin, "{s:?}");
    }
    let s = GameState::new(vec![0], 1, Side::Cop);
    assert_eq!(t.optimal_cop_move(&s).unwrap(), vec![1]);
}

#[test]
fn small_decisions() {
    assert!(is_copwin(&path_graph(5).unwrap(), 1).unwrap().wins);
    assert!(!is_copwin(&cycle_graph(8).unwrap(), 1).unwrap().wins);
    assert!(is_copwin(&cycle_graph(8).unwrap(), 2).unwrap().wins);
    let p = gp(5, 2);
    assert!(!is_copwin(&p, 2).unwrap().wins);
    assert!(is_copwin(&p, 3).unwrap().wins);
}

#[test]
fn petersen_agrees_with_oracle() {
    let g = gp(5, 2);
    for c in [2, 3] {
        let oracle = Oracle::new(&g, c);
        let table = solve(&g, c).unwrap();
        assert_eq!(table.cops_win(), oracle.cops_win());
        assert_eq!(table.cops_win(), c == 3);
        for s in all_states(&table) {
            assert_eq!(table.capture_distance(&s), oracle.distance(&s), "{s:?}");
        }
    }
}

#[test]
fn oracle_equivalence_on_small_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut graphs = vec![
        gp(5, 2),
        gp(6, 2),
        gp(6, 1),
        cycle_graph(8).unwrap(),
        path_graph(6).unwrap(),
    ];
    for _ in 0..12 {
        let n = rng.gen_range(3..=12);
        let extra = rng.gen_range(0..n);
        graphs.push(random_connected_graph(&mut rng, n, extra));
    }
    for g in &graphs {
        for c in 1..=2 {
            let oracle = Oracle::new(g, c);
            let table = solve(g, c).unwrap();
            assert_eq!(table.cops_win(), oracle.cops_win());
            assert_eq!(is_copwin(g, c).unwrap().wins, oracle.cops_win());
            for s in all_states(&table) {
                let expected = oracle.distance(&s);
                assert_eq!(table.capture_distance(&s), expected, "{s:?}");
                let label = if expected.is_some() {
                    StateLabel::CopWin
                } else {
                    StateLabel::RobberSafe
                };
                assert_eq!(table.label(&s), label);
            }
        }
    }
}

#[test]
fn labels_are_a_fixed_point() {
    for g in [gp(5, 2), gp(7, 2), cycle_graph(9).unwrap()] {
        for c in 1..=3 {
            let t = solve(&g, c).unwrap();
            for s in all_states(&t) {
                if s.is_capture() {
                    continue;
                }
                let recomputed = match s.to_move {
                    Side::Cop => t.joint_moves(&s.cops).into_iter().any(|mv| {
                        t.label(&GameState {
                            cops: mv,
                            robber: s.robber,
                            to_move: Side::Robber,
                        }) == StateLabel::CopWin
                    }),
                    Side::Robber => t.closed_neighborhood(s.robber).all(|r| {
                        t.label(&GameState {
                            cops: s.cops.clone(),
                            robber: r,
                            to_move: Side::Cop,
                        }) == StateLabel::CopWin
                    }),
                };
                assert_eq!(recomputed, t.label(&s) == StateLabel::CopWin, "{s:?}");
                assert_eq!(t.capture_distance(&s) == Some(0), s.is_capture());
            }
        }
    }
}

#[test]
fn optimal_play_captures_in_exactly_the_capture_distance() {
    let g = gp(5, 2);
    let t = solve(&g, 3).unwrap();
    for s0 in all_states(&t) {
        let Some(d0) = t.capture_distance(&s0) else {
            continue;
        };
        let mut s = s0.clone();
        let mut cop_moves = 0;
        while !s.is_capture() {
            match s.to_move {
                Side::Cop => {
                    let before = t.capture_distance(&s).unwrap();
                    let cops = t.optimal_cop_move(&s).unwrap();
                    s = GameState {
                        cops,
                        robber: s.robber,
                        to_move: Side::Robber,
                    };
                    assert!(t.capture_distance(&s).unwrap() < before);
                    cop_moves += 1;
                }
                Side::Robber => {
                    let r = t.optimal_robber_move(&s).unwrap();
                    s = GameState {
                        cops: s.cops.clone(),
                        robber: r,
                        to_move: Side::Cop,
                    };
                }
            }
        }
        assert_eq!(cop_moves, d0, "{s0:?}");
    }
}

#[test]
fn cop_captures_adjacent_robber_immediately() {
    let g = gp(7, 2);
    let t = solve(&g, 2).unwrap();
    let s = GameState::new(vec![0, 10], 1, Side::Cop);
    let mv = t.optimal_cop_move(&s).unwrap();
    assert!(mv.contains(&1));
}

#[test]
fn robber_keeps_away_on_the_eight_cycle() {
    let g = cycle_graph(8).unwrap();
    let t = solve(&g, 1).unwrap();
    let mut cop = 0;
    let mut robber = t.optimal_robber_placement(&[cop]);
    let mut seen = HashSet::new();
    loop {
        assert!(seen.len() < 64, "no repetition");
        if !seen.insert((cop, robber)) {
            break;
        }
        let s = GameState::new(vec![cop], robber, Side::Cop);
        // Any cop move: step toward the robber.
        let d = g.bfs(robber);
        cop = *g.neighbors(cop).iter().min_by_key(|&&w| d[w]).unwrap();
        assert_ne!(cop, robber);
        let s = GameState::new(vec![cop], s.robber, Side::Robber);
        robber = t.optimal_robber_move(&s).unwrap();
        assert_ne!(cop, robber);
    }
}

#[test]
fn robber_maximizes_distance_when_lost() {
    let g = path_graph(5).unwrap();
    let t = solve(&g, 1).unwrap();
    // Cop on 1, robber on 3: staying and moving right both take three cop
    // moves to lose; the tie goes to the smaller id. Stepping to 2 loses at once.
    let s = GameState::new(vec![1], 3, Side::Robber);
    let r = t.optimal_robber_move(&s).unwrap();
    assert_eq!(r, 3);
    assert_eq!(
        t.capture_distance(&GameState::new(vec![1], 4, Side::Cop)),
        Some(3)
    );
    assert_eq!(
        t.capture_distance(&GameState::new(vec![1], 2, Side::Cop)),
        Some(1)
    );
    let after = GameState::new(vec![1], r, Side::Cop);
    assert_eq!(t.capture_distance(&after), Some(3));
}

#[test]
fn wrong_state_errors() {
    let g = cycle_graph(8).unwrap();
    let t = solve(&g, 1).unwrap();
    let safe = GameState::new(vec![0], 4, Side::Cop);
    assert_eq!(t.label(&safe), StateLabel::RobberSafe);
    assert!(t.optimal_cop_move(&safe).is_err());
    assert!(t
        .optimal_robber_move(&GameState::new(vec![0], 0, Side::Robber))
        .is_err());
    assert!(t.optimal_robber_move(&safe).is_err());
}

#[test]
fn witness_matches_full_table() {
    for (g, c) in [(gp(5, 2), 3), (gp(6, 2), 2), (cycle_graph(7).unwrap(), 2)] {
        let quick = is_copwin(&g, c).unwrap();
        let table = solve(&g, c).unwrap();
        assert!(quick.wins);
        assert_eq!(quick.witness, table.winning_placement());
        let w = quick.witness.unwrap();
        assert!(table.safe_robber_placements(&w).is_empty());
    }
}

#[test]
fn rank_round_trips() {
    let t = solve(&gp(5, 2), 2).unwrap();
    assert_eq!(t.total_states() as u128, state_count(10, 2));
    for r in 0..t.total_states() {
        assert_eq!(t.rank(&t.unrank(r)), r);
    }
}

#[test]
fn errors() {
    let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
    assert!(matches!(solve(&g, 1), Err(SolveError::Disconnected)));
    let big = gp(30, 7);
    let err = solve_with(
        &big,
        4,
        SolveOptions {
            budget_states: 1000,
        },
    )
    .unwrap_err();
    assert!(
        matches!(err, SolveError::BudgetExceeded { required, .. } if required == state_count(60, 4))
    );
    assert!(matches!(
        cop_number(&gp(5, 2), 2),
        Err(SolveError::ExceedsMax(2))
    ));
    assert!(matches!(solve(&gp(5, 2), 0), Err(SolveError::NoCops)));
}

#[test]
fn cop_number_small_values() {
    assert_eq!(cop_number(&gp(5, 2), 4).unwrap().cop_number, 3);
    assert_eq!(cop_number(&gp(6, 2), 4).unwrap().cop_number, 2);
    assert_eq!(
        cop_number(&path_graph(4).unwrap(), 4).unwrap().cop_number,
        1
    );
}

#[test]
fn stats_json_is_one_line() {
    let r = is_copwin(&gp(5, 2), 3).unwrap();
    let line = r.stats.to_json_line();
    assert!(!line.contains('\n'));
    let v: serde_json::Value = serde_json::from_str(&line).unwrap();
    assert_eq!(v["states"], 2 * 220 * 10);
}
