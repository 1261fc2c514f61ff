//! The randomized benchmark protocol: how many cycles do typical runs take?
//!
//! For each size n, solve many random instances (supplies scaled so totals
//! stay comparable across sizes, profits up to n²) with per-row stops and
//! the cached descent, and report mean ± rms cycle counts. Observed means
//! land near 23, 50, 80 for n = 10, 20, 30 — roughly 2.6·n, nowhere near
//! the exponential worst case.
//!
//! Run with: `cargo run --release --example cycle_statistics`

use hitchcock::cli::run_bench;
use hitchcock::{DescentStrategy, StopMode};

fn main() {
    let reps = 50;
    let report = run_bench(
        &[10, 20, 30],
        reps,
        false, // non-degenerate regime: profits in [0, n*n]
        StopMode::PerRowStops,
        DescentStrategy::VersionB,
        1,
    )
    .expect("bench");

    println!(
        "{:>4} {:>6} {:>14} {:>10} {:>14}",
        "n", "reps", "mean cycles", "rms", "mean solve ms"
    );
    for row in &report.rows {
        println!(
            "{:>4} {:>6} {:>14.2} {:>10.2} {:>14.3}",
            row.n, row.reps, row.mean_cycles, row.rms_cycles, row.mean_solve_ms
        );
    }
    println!("\nreference points from the same protocol: 23 ± 2, 50 ± 4, 80 ± 6");
}
