use gpcops::strategies::{
    four_cop_controller, igraph_five_cop_controller, simulate, verify_trace, weak_cop_controller,
    Actor, Controller, GameTrace, Outcome, RobberPolicy,
};
use gpcops::{GpParams, IGraphParams};
use proptest::prelude::*;

#[test]
fn zero_turns_is_a_turn_limit() {
    let mut ctl = four_cop_controller(GpParams { n: 10, k: 3 }).unwrap();
    let trace = simulate(&mut ctl, &RobberPolicy::Greedy, 0).unwrap();
    assert_eq!(trace.outcome, Outcome::TurnLimit);
    assert!(trace.turns.is_empty());
    assert_eq!(
        verify_trace(ctl.graph(), &trace).unwrap(),
        Outcome::TurnLimit
    );
}

#[test]
fn placing_on_a_cop_is_an_immediate_capture() {
    let mut ctl = four_cop_controller(GpParams { n: 10, k: 3 }).unwrap();
    let cops = ctl.place_cops().unwrap();
    let mut ctl = four_cop_controller(GpParams { n: 10, k: 3 }).unwrap();
    let trace = simulate(&mut ctl, &RobberPolicy::Scripted(vec![cops[0]]), 10).unwrap();
    assert_eq!(trace.outcome, Outcome::Capture);
    assert!(trace.turns.is_empty());
    assert_eq!(verify_trace(ctl.graph(), &trace).unwrap(), Outcome::Capture);
}

#[test]
fn greedy_games_are_deterministic() {
    let play = || {
        let mut ctl = igraph_five_cop_controller(IGraphParams { n: 11, j: 2, k: 3 }).unwrap();
        simulate(&mut ctl, &RobberPolicy::Greedy, 500).unwrap()
    };
    assert_eq!(play(), play());
}

#[test]
fn json_round_trip() {
    let mut ctl = weak_cop_controller(GpParams { n: 11, k: 4 }).unwrap();
    let trace = simulate(&mut ctl, &RobberPolicy::Random(3), 500).unwrap();
    let back = GameTrace::from_json(&trace.to_json()).unwrap();
    assert_eq!(back, trace);
    assert_eq!(verify_trace(ctl.graph(), &back).unwrap(), trace.outcome);
}

#[test]
fn tampered_moves_are_rejected() {
    let mut ctl = four_cop_controller(GpParams { n: 12, k: 5 }).unwrap();
    let mut trace = simulate(&mut ctl, &RobberPolicy::Greedy, 600).unwrap();
    let robber_turn = trace
        .turns
        .iter_mut()
        .find(|t| t.actor == Actor::Robber)
        .unwrap();
    robber_turn.moves[0] = (robber_turn.moves[0] + 6) % 24;
    assert!(verify_trace(ctl.graph(), &trace).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    /// The robber's lifted index changes by at most one residue class mod k
    /// per move, and every four-cop game against a random robber ends in
    /// capture.
    #[test]
    fn four_cops_catch_random_robbers(n in 5usize..=22, k_seed in 0usize..100, seed in 0u64..1000) {
        let k = 1 + k_seed % ((n - 1) / 2);
        let mut ctl = four_cop_controller(GpParams { n, k }).unwrap();
        let trace = simulate(&mut ctl, &RobberPolicy::Random(seed), 50 * n).unwrap();
        prop_assert_eq!(trace.outcome, Outcome::Capture);
        prop_assert_eq!(verify_trace(ctl.graph(), &trace).unwrap(), Outcome::Capture);
        let k = k as i64;
        for w in trace.robber_lifts().windows(2) {
            let d = (w[1].index - w[0].index).rem_euclid(k);
            prop_assert!(d == 0 || d == 1 || d == k - 1);
        }
    }
}
