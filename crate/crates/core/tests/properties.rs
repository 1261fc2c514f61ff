//! Property-based checks: parsing is total, serialization round-trips,
//! generators only emit valid instances, and small random solves always
//! match the independent reference solver.

use hitchcock::instance::validate;
use hitchcock::{
    gen_random, oracle_solve, parse_instance, serialize_instance, solve, verify_optimality,
    DescentStrategy, GeneratorConfig, Instance, SolveOptions, StopMode,
};
use proptest::prelude::*;

/// Valid balanced instances with small entries (solver- and oracle-sized).
fn small_instance() -> impl Strategy<Value = Instance> {
    (1usize..=5, 1usize..=5)
        .prop_flat_map(|(m, n)| {
            (
                Just(m),
                Just(n),
                prop::collection::vec(0i64..=10, m),
                prop::collection::vec(0.0f64..1.0, n.saturating_sub(1)),
                prop::collection::vec(-20i64..=20, m * n),
            )
        })
        .prop_map(|(m, n, a, cuts, c)| {
            // Split the supply total across columns at the sampled fractions.
            let total: i64 = a.iter().sum();
            let mut b = Vec::with_capacity(n);
            let mut remaining = total;
            for frac in cuts {
                let take = ((remaining as f64) * frac) as i64;
                b.push(take);
                remaining -= take;
            }
            b.push(remaining);
            Instance { m, n, a, b, c }
        })
}

proptest! {
    // Parsing arbitrary text must never panic — errors only.
    #[test]
    fn parse_is_total(text in ".{0,400}") {
        let _ = parse_instance(&text);
    }

    // Parsing slightly structured garbage must not panic either.
    #[test]
    fn parse_is_total_on_numeric_soup(
        tokens in prop::collection::vec(-1000i64..1000, 0..40),
        newlines in prop::collection::vec(any::<bool>(), 0..40),
    ) {
        let mut text = String::new();
        for (idx, t) in tokens.iter().enumerate() {
            text.push_str(&t.to_string());
            text.push(if newlines.get(idx).copied().unwrap_or(false) { '\n' } else { ' ' });
        }
        let _ = parse_instance(&text);
    }

    #[test]
    fn serialize_then_parse_round_trips(inst in small_instance()) {
        let parsed = parse_instance(&serialize_instance(&inst)).expect("round-trip parses");
        prop_assert_eq!(parsed, inst);
    }

    #[test]
    fn generator_output_always_validates(
        m in 1usize..=12,
        n in 1usize..=12,
        scale in 1i64..=50,
        c_max in 1i64..=500,
        seed in any::<u64>(),
    ) {
        // Balanced by construction: a_max = n*scale, b_max = m*scale.
        let cfg = GeneratorConfig::new(m, n, n as i64 * scale, m as i64 * scale, c_max, seed)
            .expect("balanced config");
        let inst = gen_random(&cfg);
        prop_assert!(validate(&inst).is_ok());
    }

    #[test]
    fn random_solves_match_the_reference(inst in small_instance()) {
        let expected = oracle_solve(&inst).expect("oracle").cost;
        for (mode, descent) in [
            (StopMode::SingleStop, DescentStrategy::Naive),
            (StopMode::SingleStop, DescentStrategy::VersionA),
            (StopMode::PerRowStops, DescentStrategy::Naive),
            (StopMode::PerRowStops, DescentStrategy::VersionA),
            (StopMode::PerRowStops, DescentStrategy::VersionB),
        ] {
            let opts = SolveOptions { mode, descent, verify_each_cycle: true, ..SolveOptions::default() };
            let report = solve(&inst, &opts).expect("solve");
            prop_assert_eq!(report.cost, expected);
            let cert = verify_optimality(&inst, &report.flows, &report.alpha, &report.beta);
            prop_assert!(cert.certified(), "{}", cert);
        }
    }
}
