//! Cop numbers of GP(n,k) over a range of n, one CSV row per graph.

use std::fs;
use std::path::Path;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::thread;

use gpcops::solver::{self, SolveOptions, SolveStats};
use gpcops::{build_gp, GpParams, SolveError};
use serde::Serialize;

use crate::CliError;

pub const HEADER: &str = "n,k,copnumber,girth,lowerbound,states,millis";

#[derive(Clone, Debug, Serialize)]
struct Row {
    n: usize,
    k: usize,
    /// Cop number, or why the row has none.
    cop_number: Result<usize, String>,
    girth: String,
    lower_bound: u32,
    solve_stats: Vec<SolveStats>,
}

impl Row {
    fn csv(&self) -> String {
        let cop = match &self.cop_number {
            Ok(c) => c.to_string(),
            Err(e) => e.clone(),
        };
        let states: u128 = self.solve_stats.iter().map(|s| s.states).sum();
        let millis: u128 = self.solve_stats.iter().map(|s| s.millis).sum();
        format!(
            "{},{},{cop},{},{},{states},{millis}",
            self.n, self.k, self.girth, self.lower_bound
        )
    }
}

fn solve_row(p: GpParams, cmax: usize, opts: SolveOptions) -> Row {
    let g = build_gp(p).expect("valid parameters");
    let b = g.lower_bounds();
    let (cop_number, solve_stats) = match solver::cop_number_with(&g, cmax, opts) {
        Ok(r) => (Ok(r.cop_number), r.solve_stats),
        Err(SolveError::BudgetExceeded { .. }) => (Err("budget_exceeded".into()), Vec::new()),
        Err(SolveError::ExceedsMax(c)) => (Err(format!(">{c}")), Vec::new()),
        Err(e) => (Err(e.to_string()), Vec::new()),
    };
    Row {
        n: p.n,
        k: p.k,
        cop_number,
        girth: b.girth.to_string(),
        lower_bound: b.lower_bound(),
        solve_stats,
    }
}

/// Solves every row on up to `jobs` threads; rows come back in (n,k) order.
fn solve_all(params: &[GpParams], cmax: usize, opts: SolveOptions, jobs: usize) -> Vec<Row> {
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<Row>>> = Mutex::new(vec![None; params.len()]);
    thread::scope(|s| {
        for _ in 0..jobs.clamp(1, params.len().max(1)) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(&p) = params.get(i) else { break };
                let row = solve_row(p, cmax, opts);
                slots.lock().expect("no worker panicked")[i] = Some(row);
            });
        }
    });
    slots
        .into_inner()
        .expect("no worker panicked")
        .into_iter()
        .map(|r| r.expect("every row solved"))
        .collect()
}

pub fn run(
    n_min: usize,
    n_max: usize,
    copnum: Option<usize>,
    cmax: usize,
    opts: SolveOptions,
    jobs: usize,
    out: Option<&Path>,
) -> Result<u8, CliError> {
    if n_min < 5 || n_min > n_max {
        return Err(CliError::Parse(format!(
            "need 5 <= n_min <= n_max, got {n_min}..{n_max}"
        )));
    }
    let params: Vec<GpParams> = (n_min..=n_max)
        .flat_map(|n| {
            (1..)
                .take_while(move |&k| 2 * k < n)
                .map(move |k| GpParams { n, k })
        })
        .collect();
    let rows: Vec<Row> = solve_all(&params, cmax, opts, jobs)
        .into_iter()
        .filter(|r| copnum.is_none_or(|c| r.cop_number == Ok(c)))
        .collect();
    let mut csv = String::from(HEADER);
    csv.push('\n');
    for r in &rows {
        csv.push_str(&r.csv());
        csv.push('\n');
    }
    match out {
        None => print!("{csv}"),
        Some(path) => {
            let io = |e: std::io::Error| CliError::Io(format!("{}: {e}", path.display()));
            fs::write(path, csv).map_err(io)?;
            let mut sidecar = path.as_os_str().to_owned();
            sidecar.push(".stats.json");
            let stats = serde_json::to_string_pretty(&rows).expect("rows serialize");
            fs::write(&sidecar, stats).map_err(io)?;
        }
    }
    let failed = rows
        .iter()
        .any(|r| r.cop_number.as_ref().is_err_and(|e| e == "budget_exceeded"));
    Ok(if failed { 4 } else { 0 })
}
