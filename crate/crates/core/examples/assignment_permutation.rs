//! Assignment problems come out as permutation matrices, automatically.
//!
//! With unit supplies and unit demands, every feasible integral plan is a
//! permutation matrix, and the solver only ever produces integral plans —
//! so solving IS assigning. No rounding, no special casing.
//!
//! Run with: `cargo run --release --example assignment_permutation`

use hitchcock::{gen_assignment, oracle_solve, solve, DescentStrategy, SolveOptions, StopMode};

fn main() {
    let n = 8;
    let inst = gen_assignment(n, 99, 42);
    let opts = SolveOptions {
        mode: StopMode::PerRowStops,
        descent: DescentStrategy::VersionB,
        ..SolveOptions::default()
    };
    let report = solve(&inst, &opts).expect("solve");

    println!("profit matrix ({n}x{n}, seed 42), chosen cells bracketed:\n");
    let mut chosen = vec![vec![false; n]; n];
    for &(i, j, f) in &report.flows {
        assert_eq!(f, 1, "assignment flows are 0/1");
        chosen[i][j] = true;
    }
    for (i, chosen_row) in chosen.iter().enumerate() {
        let cells: Vec<String> = chosen_row
            .iter()
            .enumerate()
            .map(|(j, &picked)| {
                let c = inst.c_at(i, j);
                if picked {
                    format!("[{c:>2}]")
                } else {
                    format!(" {c:>2} ")
                }
            })
            .collect();
        println!("  {}", cells.join(""));
    }

    // One chosen cell per row and per column: a permutation.
    let perm: Vec<usize> =
        (0..n).map(|i| (0..n).find(|&j| chosen[i][j]).expect("one per row")).collect();
    let mut seen = vec![false; n];
    for &j in &perm {
        assert!(!seen[j], "one per column");
        seen[j] = true;
    }
    println!("\nassignment: {perm:?}");
    println!("total profit {} in {} cycles", report.cost, report.cycles);
    assert_eq!(report.cost, oracle_solve(&inst).expect("within cap").cost);
    println!("matches the independent reference solver exactly");
}
