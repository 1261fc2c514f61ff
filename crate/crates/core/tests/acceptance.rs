//! Acceptance suite: one test per shipping criterion, one PASS line each.
//!
//! Every expectation here is frozen — tolerances are written into the
//! asserts, reference values into the tables. A red test means the
//! implementation moved away from its contract, never that the contract
//! should move toward the implementation.

use hitchcock::cli::run_bench;
use hitchcock::solver::format_trace_line;
use hitchcock::{
    gen_assignment, gen_worst_case, oracle_solve, oracle_solve_with_cap, parse_instance, solve,
    verify_optimality, z_inf, z_prime_sup, z_sup, DescentStrategy, Instance, SolveOptions,
    StopMode,
};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

const ALL_COMBOS: [(StopMode, DescentStrategy); 5] = [
    (StopMode::SingleStop, DescentStrategy::Naive),
    (StopMode::SingleStop, DescentStrategy::VersionA),
    (StopMode::PerRowStops, DescentStrategy::Naive),
    (StopMode::PerRowStops, DescentStrategy::VersionA),
    (StopMode::PerRowStops, DescentStrategy::VersionB),
];

/// Balanced random instance with optional forced zero supplies and a
/// controllable profit range; the supply/demand split is a random
/// composition so edge shapes (empty rows, lopsided columns) occur.
fn random_instance(
    rng: &mut ChaCha8Rng,
    m: usize,
    n: usize,
    a_max: i64,
    c_lo: i64,
    c_hi: i64,
    force_zero_supply: bool,
) -> Instance {
    let mut a: Vec<i64> = (0..m).map(|_| rng.random_range(0..=a_max)).collect();
    if force_zero_supply {
        a[rng.random_range(0..m)] = 0;
    }
    let total: i64 = a.iter().sum();
    let mut b = Vec::with_capacity(n);
    let mut remaining = total;
    for _ in 0..n - 1 {
        let take = rng.random_range(0..=remaining);
        b.push(take);
        remaining -= take;
    }
    b.push(remaining);
    let c: Vec<i64> = (0..m * n).map(|_| rng.random_range(c_lo..=c_hi)).collect();
    Instance { m, n, a, b, c }
}

#[test]
fn criterion_1_worked_example_replay() {
    let text = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/tests/data/worked_example.txt"
    ))
    .expect("committed fixture");
    let inst = parse_instance(&text).expect("fixture parses");

    let opts = SolveOptions {
        mode: StopMode::SingleStop,
        descent: DescentStrategy::Naive,
        c_sup_override: Some(100),
        verify_each_cycle: false,
        trace: true,
    };
    let report = solve(&inst, &opts).expect("solve");

    assert_eq!(report.cycles, 6, "criterion 1: six cycles");
    assert_eq!(report.cost, 9987, "criterion 1: cost");
    let events = report.trace.as_ref().unwrap();
    let ds: Vec<i64> = events.iter().map(|e| e.d).collect();
    assert_eq!(ds, vec![6, 30, 2, 10, 29, 10], "criterion 1: descent sequence");
    assert_eq!(events[0].contact, (2, 0), "criterion 1: first contact row 3, column 1");
    assert_eq!(events[0].lambda, 44, "criterion 1: first readjustment");

    let mut grid = vec![vec![0i64; 4]; 3];
    for &(i, j, f) in &report.flows {
        grid[i][j] = f;
    }
    assert_eq!(
        grid,
        vec![vec![0, 52, 9, 25], vec![0, 0, 4, 0], vec![44, 0, 0, 12]],
        "criterion 1: final flows"
    );

    // The rendered trace must match the committed golden file byte-for-byte.
    let golden = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/tests/data/worked_example.trace"
    ))
    .expect("committed golden trace");
    let rendered: String = events
        .iter()
        .enumerate()
        .map(|(idx, e)| format_trace_line(idx as u64 + 1, e, StopMode::SingleStop) + "\n")
        .collect();
    assert_eq!(rendered, golden, "criterion 1: golden trace bytes");

    assert!(
        report.elapsed.as_secs_f64() < 1e-3,
        "criterion 1: replay took {:?}, budget 1 ms",
        report.elapsed
    );
    println!("criterion 1 (worked-example replay, bit-exact, < 1 ms): PASS");
}

#[test]
fn criterion_2_oracle_equivalence() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xC2);
    let mut solves = 0u32;
    for trial in 0..500 {
        let m = rng.random_range(2..=8);
        let n = rng.random_range(2..=8);
        let degenerate = trial % 3 == 0;
        let (c_lo, c_hi) = if degenerate { (0, 4) } else { (-50, 50) };
        let inst = random_instance(&mut rng, m, n, 20, c_lo, c_hi, trial % 5 == 0);
        let expected = oracle_solve(&inst).expect("within oracle cap").cost;
        for (mode, descent) in ALL_COMBOS {
            let opts = SolveOptions { mode, descent, ..SolveOptions::default() };
            let report = solve(&inst, &opts)
                .unwrap_or_else(|e| panic!("criterion 2: trial {trial} {mode:?}/{descent:?}: {e}"));
            assert_eq!(
                report.cost, expected,
                "criterion 2: trial {trial} {mode:?}/{descent:?} disagrees with the oracle"
            );
            solves += 1;
        }
    }
    let elapsed = started.elapsed();
    assert!(
        elapsed.as_secs_f64() < 30.0,
        "criterion 2: {solves} solves took {elapsed:?}, budget 30 s"
    );
    println!(
        "criterion 2 (oracle equivalence, 500 instances x 5 combos in {:.1} s): PASS",
        elapsed.as_secs_f64()
    );
}

#[test]
fn criterion_3_worst_case_law() {
    for n in 2..=14 {
        let inst = gen_worst_case(n).expect("within overflow cap");
        let report = solve(&inst, &SolveOptions::default()).expect("solve");
        assert_eq!(
            report.cycles as u128,
            z_inf(n),
            "criterion 3: adversarial n = {n} must take 3*2^(n-1) - 2 cycles"
        );
    }
    println!("criterion 3 (worst-case cycle law, n = 2..14): PASS");
}

#[test]
fn criterion_4_appendix_tables() {
    let started = Instant::now();
    // Reference grid for 1 <= m, n <= 10 (rows m, columns n).
    const EXPECTED: [[u64; 10]; 10] = [
        [1, 2, 3, 4, 5, 6, 7, 8, 9, 10],
        [2, 4, 6, 8, 10, 12, 14, 16, 18, 20],
        [3, 6, 10, 14, 19, 24, 30, 36, 43, 50],
        [4, 8, 14, 22, 30, 40, 52, 64, 78, 94],
        [5, 10, 19, 30, 46, 62, 83, 108, 138, 170],
        [6, 12, 24, 40, 62, 94, 126, 168, 222, 284],
        [7, 14, 30, 52, 83, 126, 190, 254, 339, 448],
        [8, 16, 36, 64, 108, 168, 254, 382, 510, 682],
        [9, 18, 43, 78, 138, 222, 339, 510, 766, 1022],
        [10, 20, 50, 94, 170, 284, 448, 682, 1022, 1534],
    ];
    for m in 1..=10 {
        for n in 1..=10 {
            assert_eq!(
                z_prime_sup(m, n).expect("within cap"),
                EXPECTED[m - 1][n - 1],
                "criterion 4: chain bound at ({m}, {n})"
            );
        }
    }
    assert_eq!(z_sup(10, 10), 184755, "criterion 4: binomial bound at (10, 10)");
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 10.0, "criterion 4: took {elapsed:?}, budget 10 s");
    println!(
        "criterion 4 (appendix tables, 100 grid entries + binomial bound in {:.1} s): PASS",
        elapsed.as_secs_f64()
    );
}

#[test]
fn criterion_5_invariant_suite() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC5);
    for trial in 0..100u64 {
        // Cover the full size range, with the largest shapes pinned.
        let (m, n) = match trial {
            0 => (100, 100),
            1 => (100, 17),
            2 => (3, 100),
            _ => (rng.random_range(2..=100), rng.random_range(2..=100)),
        };
        let (mode, descent) = ALL_COMBOS[trial as usize % ALL_COMBOS.len()];
        let inst = random_instance(&mut rng, m, n, 50, 0, (m * n) as i64, trial % 7 == 0);
        let opts =
            SolveOptions { mode, descent, verify_each_cycle: true, ..SolveOptions::default() };
        // verify_each_cycle fails the solve on any violated property, any
        // non-increasing signature rank, or any force-sum mismatch.
        let report = solve(&inst, &opts).unwrap_or_else(|e| {
            panic!("criterion 5: trial {trial} ({m}x{n} {mode:?}/{descent:?}): {e}")
        });
        let cert = verify_optimality(&inst, &report.flows, &report.alpha, &report.beta);
        assert!(cert.certified(), "criterion 5: trial {trial} terminated uncertified: {cert}");
        assert_eq!(cert.primal_value, cert.dual_value, "criterion 5: cost identity");
    }
    println!("criterion 5 (per-cycle invariants across 100 verified solves up to n = 100): PASS");
}

#[test]
fn criterion_6_cycle_statistics() {
    let report =
        run_bench(&[10, 20, 30], 100, false, StopMode::PerRowStops, DescentStrategy::VersionB, 1)
            .expect("bench");
    let reference = [23.0, 50.0, 80.0];
    for (row, want) in report.rows.iter().zip(reference) {
        let deviation = (row.mean_cycles - want).abs() / want;
        assert!(
            deviation <= 0.35,
            "criterion 6: n = {} mean cycles {:.2} deviates {:.0}% from {} (band ±35%)",
            row.n,
            row.mean_cycles,
            deviation * 100.0,
            want
        );
    }
    let means: Vec<String> =
        report.rows.iter().map(|r| format!("{:.1}±{:.1}", r.mean_cycles, r.rms_cycles)).collect();
    println!("criterion 6 (cycle statistics near 23/50/80, observed {}): PASS", means.join(", "));
}

#[test]
fn criterion_7_degenerate_regime_speed() {
    let n = 500;
    let cfg = hitchcock::GeneratorConfig::bench_model(n, true, 0xC7).expect("config");
    let inst = hitchcock::gen_random(&cfg);

    let naive =
        solve(&inst, &SolveOptions { descent: DescentStrategy::Naive, ..SolveOptions::default() })
            .expect("naive solve");
    let version_a = solve(
        &inst,
        &SolveOptions { descent: DescentStrategy::VersionA, ..SolveOptions::default() },
    )
    .expect("early-exit solve");
    assert_eq!(naive.cost, version_a.cost, "criterion 7: same optimum");

    let scan_fraction = version_a.scanned_cells as f64 / version_a.cycles as f64 / (n * n) as f64;
    assert!(
        scan_fraction < 0.20,
        "criterion 7: early-exit scan averaged {:.1}% of the board (budget 20%)",
        scan_fraction * 100.0
    );
    let speedup = naive.elapsed.as_secs_f64() / version_a.elapsed.as_secs_f64();
    assert!(
        speedup >= 2.0,
        "criterion 7: early-exit speedup {speedup:.2}x (budget 2x) — naive {:?}, early-exit {:?}",
        naive.elapsed,
        version_a.elapsed
    );
    println!(
        "criterion 7 (degenerate regime: {:.2}% of board per scan, {speedup:.0}x faster): PASS",
        scan_fraction * 100.0
    );
}

#[test]
fn criterion_8_cache_matches_full_recomputation() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC8);
    let mut cycles = 0u64;
    for trial in 0..50 {
        let m = rng.random_range(2..=12);
        let n = rng.random_range(2..=12);
        let inst = random_instance(&mut rng, m, n, 30, 0, 40, false);
        let opts = SolveOptions {
            mode: StopMode::PerRowStops,
            descent: DescentStrategy::VersionB,
            verify_each_cycle: true, // compares the cache against a rebuild every cycle
            ..SolveOptions::default()
        };
        let report =
            solve(&inst, &opts).unwrap_or_else(|e| panic!("criterion 8: trial {trial}: {e}"));
        cycles += report.cycles;
    }
    println!(
        "criterion 8 (incremental branch distances == full recomputation over {cycles} cycles): PASS"
    );
}

#[test]
fn criterion_9_assignment_specialization() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC9);
    for trial in 0..100u64 {
        let n = rng.random_range(2..=50);
        let inst = gen_assignment(n, 99, trial);
        let (mode, descent) = ALL_COMBOS[trial as usize % ALL_COMBOS.len()];
        let opts = SolveOptions { mode, descent, ..SolveOptions::default() };
        let report = solve(&inst, &opts).expect("solve");

        let mut row_hit = vec![false; n];
        let mut col_hit = vec![false; n];
        for &(i, j, f) in &report.flows {
            assert_eq!(f, 1, "criterion 9: trial {trial} flow not 0/1");
            assert!(!row_hit[i] && !col_hit[j], "criterion 9: trial {trial} not a permutation");
            row_hit[i] = true;
            col_hit[j] = true;
        }
        assert!(row_hit.iter().all(|&h| h), "criterion 9: trial {trial} rows unassigned");

        let expected = oracle_solve_with_cap(&inst, 2500).expect("oracle").cost;
        assert_eq!(report.cost, expected, "criterion 9: trial {trial} cost");
    }
    println!("criterion 9 (100 assignment instances n <= 50: permutations at oracle cost): PASS");
}
