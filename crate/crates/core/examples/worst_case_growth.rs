//! The adversarial family: cycle counts that double with every added row.
//!
//! For each n, `gen_worst_case(n)` builds an n×n instance with
//! Fibonacci-like supplies and a rigged profit matrix that forces the
//! solver to retrace its steps: the observed cycle count is exactly
//! 3·2^(n−1) − 2. This is the proof-by-construction that the worst case
//! is exponential even though random instances stay near-linear.
//!
//! Run with: `cargo run --release --example worst_case_growth`

use hitchcock::{gen_worst_case, solve, z_inf, SolveOptions};

fn main() {
    println!("{:>3} {:>10} {:>12} {:>12}", "n", "cycles", "3*2^(n-1)-2", "cells");
    for n in 2..=14 {
        let inst = gen_worst_case(n).expect("n is within the overflow cap");
        let report = solve(&inst, &SolveOptions::default()).expect("solve");
        let law = z_inf(n);
        println!("{:>3} {:>10} {:>12} {:>12}", n, report.cycles, law, n * n);
        assert_eq!(report.cycles as u128, law);
    }
    println!("\nevery count matches the closed form exactly");
}
