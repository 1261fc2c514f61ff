//! Exact solver for balanced transportation problems, built as a
//! simulation of a mechanical equilibrium process.
//!
//! Imagine each supply row and demand column as a horizontal rod. Rods
//! start stacked — supply rods high, demand rods low — and the supply
//! bundle descends under load. Whenever a supply rod comes to rest on a
//! demand rod (their height gap equals the shipping profit), the contact
//! carries force, and force is flow: at full equilibrium the contact
//! forces are an optimal shipping plan and the rod heights are the
//! optimal dual prices. The simulation is exact over the integers — no
//! physics is approximated, only obeyed.
//!
//! Each cycle of the loop lowers the still-moving rods by the smallest
//! slack (`descent`), inserts the new contact, rebalances forces along
//! the unique path between the two tree roots (`readjustment`), and
//! deletes the edge whose force reached zero, transplanting a whole
//! subtree from one tree to the other (`capture`). A signature argument
//! on tree shapes proves the loop terminates; binomial and chain bounds
//! on the cycle count are computed in [`bounds`].
//!
//! # Start with the examples
//!
//! Each major capability has a runnable example:
//!
//! | Example | Run | Shows |
//! |---|---|---|
//! | `worked_example` | `cargo run --release --example worked_example` | The reference 3×4 run, cycle by cycle: descents, contacts, forces, final plan |
//! | `descent_strategies` | `cargo run --release --example descent_strategies` | All stop-mode × descent-strategy combinations agree on cost while scanning very different amounts |
//! | `worst_case_growth` | `cargo run --release --example worst_case_growth` | The adversarial family whose cycle count doubles with every added row |
//! | `iteration_bounds` | `cargo run --release --example iteration_bounds` | Cycle-count bounds: the chain bound grid, the crude binomial bound, and where they meet the adversarial family |
//! | `oracle_crosscheck` | `cargo run --release --example oracle_crosscheck` | Random instances solved twice — tree solver vs. an independent shortest-path solver — plus the optimality certificate |
//! | `assignment_permutation` | `cargo run --release --example assignment_permutation` | Unit-supply instances coming out as 0/1 permutation matrices |
//! | `degenerate_scan` | `cargo run --release --example degenerate_scan` | Why the early-exit scan wins when profits are heavily tied |
//! | `cycle_statistics` | `cargo run --release --example cycle_statistics` | The randomized benchmark protocol: mean ± rms cycles across sizes |
//!
//! The same capabilities are scriptable through the `hitchcock` binary
//! (`solve`, `generate`, `trace`, `verify`, `bounds`, `bench`).
//!
//! # Library map
//!
//! - [`instance`]: problem data, validation, parsing/serialization, and
//!   instance generators (random, adversarial, assignment, benchmark).
//! - [`forest`]: the mechanical state — two triply linked trees of rods,
//!   heights, edge forces — and the surgery and property checks on them.
//! - [`solver`]: the cycle loop, the three descent strategies, solution
//!   extraction, and the self-contained optimality certificate.
//! - [`oracle`]: an independent exact solver (successive shortest paths)
//!   sharing no state with the tree solver, for cross-checking.
//! - [`bounds`]: signature machinery and the three cycle-count bounds.
//! - [`cli`]: the command-line front end over all of the above.
//!
//! # Quick start
//!
//! ```
//! use hitchcock::{solve, Instance, SolveOptions};
//!
//! let inst = Instance::from_rows(
//!     vec![86, 4, 56],
//!     vec![44, 52, 13, 37],
//!     vec![
//!         vec![26, 64, 33, 62],
//!         vec![63, 27, 13, 14],
//!         vec![94, 4, 4, 52],
//!     ],
//! );
//! let report = solve(&inst, &SolveOptions::default()).unwrap();
//! assert_eq!(report.cost, 9987);
//! assert_eq!(report.cycles, 6);
//! ```

pub mod bounds;
pub mod cli;
pub mod forest;
pub mod instance;
pub mod oracle;
pub mod solver;

pub use bounds::{compare_signatures, z_inf, z_prime_sup, z_sup};
pub use forest::{ForestState, Membership, NodeId, Signature, StopMode};
pub use instance::{
    gen_assignment, gen_random, gen_worst_case, parse_instance, serialize_instance,
    GeneratorConfig, Instance,
};
pub use oracle::{oracle_solve, oracle_solve_with_cap};
pub use solver::{
    solve, verify_optimality, CertificateReport, CycleEvent, DescentStrategy, SolveOptions,
    SolveReport,
};
