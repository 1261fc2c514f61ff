//! How many cycles can a run take? Three bounds, and where they touch.
//!
//! - `z_sup(m, n)`: a crude binomial bound, C(m+n, m) − 1, from counting
//!   tree level profiles.
//! - `z_prime_sup(m, n)`: a much tighter bound from ranking signature
//!   pairs and finding the longest strictly increasing chain.
//! - `z_inf(n)`: a lower bound, 3·2^(n−1) − 2, attained by an explicit
//!   adversarial family — so on the diagonal the chain bound is TIGHT.
//!
//! Run with: `cargo run --release --example iteration_bounds`

use hitchcock::{gen_worst_case, solve, z_inf, z_prime_sup, z_sup, SolveOptions};

fn main() {
    println!("chain bound grid (rows m = 1..10, columns n = 1..10):\n");
    print!("m\\n");
    for n in 1..=10 {
        print!("{n:>7}");
    }
    println!();
    for m in 1..=10 {
        print!("{m:<3}");
        for n in 1..=10 {
            print!("{:>7}", z_prime_sup(m, n).expect("within cap"));
        }
        println!();
    }

    println!("\ncrude binomial bound at (10, 10): {}", z_sup(10, 10));
    println!("chain bound at (10, 10):          {}", z_prime_sup(10, 10).unwrap());

    println!("\ndiagonal: chain bound vs. the adversarial lower bound");
    println!("{:>3} {:>12} {:>12} {:>10}", "n", "chain bound", "lower bound", "observed");
    for n in 2..=10 {
        let chain = z_prime_sup(n, n).unwrap();
        let lower = z_inf(n);
        let observed =
            solve(&gen_worst_case(n).unwrap(), &SolveOptions::default()).expect("solve").cycles;
        println!("{n:>3} {chain:>12} {lower:>12} {observed:>10}");
        assert_eq!(chain as u128, lower);
        assert_eq!(observed as u128, lower);
    }
    println!("\nthe bound is attained: worst-case runs use every cycle the chain allows");
}
