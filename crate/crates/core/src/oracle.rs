//! Independent reference solver used to cross-check the tree method.
//!
//! Classic successive shortest paths on the bipartite flow network with
//! Johnson potentials and Dijkstra — deliberately sharing no state, no data
//! structures, and no helper code with the mechanical solver, so agreement
//! between the two is meaningful evidence. Intended for small instances (see
//! [`ORACLE_DEFAULT_CELL_CAP`]); the mechanical solver is the fast path.

use crate::instance::{validate, Instance, ValidationReport};
use std::cmp::Reverse;
use std::collections::BinaryHeap;
use thiserror::Error;

/// Default ceiling on `m·n` for [`oracle_solve`]. The oracle is quadratic-ish
/// and meant as a referee on small instances; larger calls must opt in via
/// [`oracle_solve_with_cap`].
pub const ORACLE_DEFAULT_CELL_CAP: usize = 400;

/// An optimal solution as computed by the reference method: positive flows,
/// a full dual certificate, and the exact objective value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleSolution {
    /// Positive shipments as `(i, j, amount)` triplets.
    pub flows: Vec<(usize, usize, i64)>,
    /// Dual heights for rows; `alpha[i] - beta[j] >= c[i][j]` everywhere,
    /// with equality on every positive flow.
    pub alpha: Vec<i64>,
    /// Dual heights for columns.
    pub beta: Vec<i64>,
    /// Objective `Σ c·f`, exact.
    pub cost: i128,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("invalid instance: {0}")]
    InvalidInstance(ValidationReport),
    #[error("instance has {cells} cells, above the oracle cap of {cap}")]
    TooLarge { cells: usize, cap: usize },
    #[error("magnitudes too large for exact shortest paths: {0}")]
    MagnitudeTooLarge(String),
}

/// Solves a balanced transportation problem by successive shortest paths.
/// Rejects instances above [`ORACLE_DEFAULT_CELL_CAP`] cells.
pub fn oracle_solve(inst: &Instance) -> Result<OracleSolution, OracleError> {
    oracle_solve_with_cap(inst, ORACLE_DEFAULT_CELL_CAP)
}

/// [`oracle_solve`] with an explicit cell cap, for callers that accept the
/// cost of refereeing bigger instances.
pub fn oracle_solve_with_cap(
    inst: &Instance,
    cell_cap: usize,
) -> Result<OracleSolution, OracleError> {
    let report = validate(inst);
    if !report.is_ok() {
        return Err(OracleError::InvalidInstance(report));
    }
    let cells = inst.m * inst.n;
    if cells > cell_cap {
        return Err(OracleError::TooLarge { cells, cap: cell_cap });
    }
    guard_magnitudes(inst)?;
    Ok(solve_inner(inst))
}

/// Shortest-path distances sum edge costs over up to `m+n+2` hops and the
/// costs are shifted profits; make sure the sums stay far from i64 overflow.
fn guard_magnitudes(inst: &Instance) -> Result<(), OracleError> {
    let max_abs = inst.c.iter().map(|c| c.unsigned_abs()).max().unwrap_or(0) as i128;
    let hops = (inst.m + inst.n + 2) as i128;
    if hops * (2 * max_abs + 1) > i64::MAX as i128 / 2 {
        return Err(OracleError::MagnitudeTooLarge(format!(
            "profit magnitude {max_abs} over {hops} hops"
        )));
    }
    if inst.total_supply() > i64::MAX as i128 / 4 {
        return Err(OracleError::MagnitudeTooLarge(format!(
            "total supply {}",
            inst.total_supply()
        )));
    }
    Ok(())
}

const UNSET: usize = usize::MAX;

#[derive(Debug, Clone)]
struct Arc {
    to: usize,
    rev: usize,
    cap: i64,
    cost: i64,
}

#[derive(Debug, Default)]
struct FlowNet {
    adj: Vec<Vec<Arc>>,
}

impl FlowNet {
    fn new(nodes: usize) -> Self {
        FlowNet { adj: vec![Vec::new(); nodes] }
    }

    fn add_arc(&mut self, from: usize, to: usize, cap: i64, cost: i64) {
        let rev_from = self.adj[to].len();
        let rev_to = self.adj[from].len();
        self.adj[from].push(Arc { to, rev: rev_from, cap, cost });
        self.adj[to].push(Arc { to: from, rev: rev_to, cap: 0, cost: -cost });
    }
}

fn solve_inner(inst: &Instance) -> OracleSolution {
    let (m, n) = (inst.m, inst.n);
    // Node layout: source, m rows, n columns, sink.
    let source = 0;
    let row = |i: usize| 1 + i;
    let col = |j: usize| 1 + m + j;
    let sink = 1 + m + n;
    let nodes = m + n + 2;

    // Maximizing Σ c·f equals min-cost flow on shifted costs c_shift =
    // (max c + 1) − c >= 1; the shift cancels out of the dual mapping below.
    let shift = inst.max_c() + 1;
    let big = i64::MAX / 2;
    let mut net = FlowNet::new(nodes);
    for i in 0..m {
        net.add_arc(source, row(i), inst.a[i], 0);
    }
    for i in 0..m {
        for j in 0..n {
            net.add_arc(row(i), col(j), big, shift - inst.c_at(i, j));
        }
    }
    for j in 0..n {
        net.add_arc(col(j), sink, inst.b[j], 0);
    }

    let mut potential = vec![0i64; nodes];
    let mut remaining = inst.total_supply();
    while remaining > 0 {
        // Dijkstra on reduced costs from the source.
        let mut dist = vec![i64::MAX; nodes];
        let mut prev: Vec<(usize, usize)> = vec![(UNSET, UNSET); nodes];
        let mut heap = BinaryHeap::new();
        dist[source] = 0;
        heap.push(Reverse((0i64, source)));
        while let Some(Reverse((d, u))) = heap.pop() {
            if d > dist[u] {
                continue;
            }
            for (idx, arc) in net.adj[u].iter().enumerate() {
                if arc.cap <= 0 {
                    continue;
                }
                let nd = d + arc.cost + potential[u] - potential[arc.to];
                if nd < dist[arc.to] {
                    dist[arc.to] = nd;
                    prev[arc.to] = (u, idx);
                    heap.push(Reverse((nd, arc.to)));
                }
            }
        }
        assert!(dist[sink] != i64::MAX, "balanced valid instance must be feasible");

        // Augment by the path bottleneck.
        let mut bottleneck = i64::MAX;
        let mut v = sink;
        while v != source {
            let (u, idx) = prev[v];
            bottleneck = bottleneck.min(net.adj[u][idx].cap);
            v = u;
        }
        let mut v = sink;
        while v != source {
            let (u, idx) = prev[v];
            net.adj[u][idx].cap -= bottleneck;
            let rev = net.adj[u][idx].rev;
            net.adj[v][rev].cap += bottleneck;
            v = u;
        }
        remaining -= bottleneck as i128;

        // Fold distances into the potentials; nodes the search no longer
        // reaches are capped at the sink distance, which keeps every
        // residual reduced cost nonnegative.
        for v in 0..nodes {
            potential[v] += dist[v].min(dist[sink]);
        }
    }

    // Flow on a forward arc is its capacity loss. Each row node's arc list
    // holds the reverse arc to the source first, then its n column arcs in
    // column order.
    let mut flows = Vec::new();
    let mut cost: i128 = 0;
    for i in 0..m {
        for (j, arc) in net.adj[row(i)][1..=n].iter().enumerate() {
            debug_assert_eq!(arc.to, col(j));
            let f = big - arc.cap;
            if f > 0 {
                flows.push((i, j, f));
                cost += f as i128 * inst.c_at(i, j) as i128;
            }
        }
    }

    // Dual mapping: alpha_i = shift + pi_row, beta_j = pi_col satisfies
    // alpha_i - beta_j - c_ij = c_shift_ij + pi_row - pi_col, which is the
    // residual reduced cost: nonnegative everywhere, zero on positive flow.
    let alpha = (0..m).map(|i| shift + potential[row(i)]).collect();
    let beta = (0..n).map(|j| potential[col(j)]).collect();
    OracleSolution { flows, alpha, beta, cost }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{RngExt, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn worked_example() -> Instance {
        Instance::from_rows(
            vec![86, 4, 56],
            vec![44, 52, 13, 37],
            vec![vec![26, 64, 33, 62], vec![63, 27, 13, 14], vec![94, 4, 4, 52]],
        )
    }

    /// Full certificate check: feasibility, dual feasibility, complementary
    /// slackness, and the duality identity Σa·alpha − Σb·beta = cost.
    fn assert_certified(inst: &Instance, sol: &OracleSolution) {
        let mut row_sum = vec![0i128; inst.m];
        let mut col_sum = vec![0i128; inst.n];
        for &(i, j, f) in &sol.flows {
            assert!(f > 0);
            row_sum[i] += f as i128;
            col_sum[j] += f as i128;
            let slack = sol.alpha[i] - sol.beta[j] - inst.c_at(i, j);
            assert_eq!(slack, 0, "positive flow on slack edge ({i},{j})");
        }
        for (i, (&got, &want)) in row_sum.iter().zip(&inst.a).enumerate() {
            assert_eq!(got, want as i128, "row {i} sum");
        }
        for (j, (&got, &want)) in col_sum.iter().zip(&inst.b).enumerate() {
            assert_eq!(got, want as i128, "col {j} sum");
        }
        for i in 0..inst.m {
            for j in 0..inst.n {
                assert!(
                    sol.alpha[i] - sol.beta[j] >= inst.c_at(i, j),
                    "dual infeasible at ({i},{j})"
                );
            }
        }
        let dual: i128 =
            (0..inst.m).map(|i| inst.a[i] as i128 * sol.alpha[i] as i128).sum::<i128>()
                - (0..inst.n).map(|j| inst.b[j] as i128 * sol.beta[j] as i128).sum::<i128>();
        assert_eq!(dual, sol.cost, "duality gap");
    }

    /// Tiny exhaustive maximizer, the primitive referee for the referee:
    /// enumerates every feasible integer flow matrix by depth-first search.
    fn exhaustive_best(inst: &Instance) -> i128 {
        fn go(
            inst: &Instance,
            cell: usize,
            row_left: &mut Vec<i64>,
            col_left: &mut Vec<i64>,
            acc: i128,
            best: &mut i128,
        ) {
            if cell == inst.m * inst.n {
                if row_left.iter().all(|&r| r == 0) && col_left.iter().all(|&c| c == 0) {
                    *best = (*best).max(acc);
                }
                return;
            }
            let (i, j) = (cell / inst.n, cell % inst.n);
            // Last column of a row must absorb the remainder.
            let max_f = row_left[i].min(col_left[j]);
            let forced = if j == inst.n - 1 { row_left[i] } else { 0 };
            if forced > max_f {
                return;
            }
            let range = if j == inst.n - 1 { forced..=forced } else { 0..=max_f };
            for f in range {
                row_left[i] -= f;
                col_left[j] -= f;
                go(
                    inst,
                    cell + 1,
                    row_left,
                    col_left,
                    acc + f as i128 * inst.c_at(i, j) as i128,
                    best,
                );
                row_left[i] += f;
                col_left[j] += f;
            }
        }
        let mut best = i128::MIN;
        let mut row_left = inst.a.clone();
        let mut col_left = inst.b.clone();
        go(inst, 0, &mut row_left, &mut col_left, 0, &mut best);
        best
    }

    #[test]
    fn solves_the_worked_example() {
        let sol = oracle_solve(&worked_example()).unwrap();
        assert_eq!(sol.cost, 9987);
        assert_certified(&worked_example(), &sol);
    }

    #[test]
    fn solves_trivial_shapes() {
        let one = Instance::from_rows(vec![7], vec![7], vec![vec![-3]]);
        let sol = oracle_solve(&one).unwrap();
        assert_eq!(sol.flows, vec![(0, 0, 7)]);
        assert_eq!(sol.cost, -21);
        assert_certified(&one, &sol);

        let diag = Instance::from_rows(vec![1, 1], vec![1, 1], vec![vec![10, 1], vec![1, 10]]);
        let sol = oracle_solve(&diag).unwrap();
        assert_eq!(sol.cost, 20);
        assert_certified(&diag, &sol);
    }

    #[test]
    fn handles_zero_supplies_and_demands() {
        let inst = Instance::from_rows(vec![0, 5], vec![5, 0], vec![vec![9, 9], vec![1, 9]]);
        let sol = oracle_solve(&inst).unwrap();
        assert_eq!(sol.cost, 5);
        assert_certified(&inst, &sol);

        let empty = Instance::from_rows(vec![0], vec![0], vec![vec![4]]);
        let sol = oracle_solve(&empty).unwrap();
        assert!(sol.flows.is_empty());
        assert_eq!(sol.cost, 0);
        assert_certified(&empty, &sol);
    }

    #[test]
    fn agrees_with_exhaustive_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(424242);
        for trial in 0..60 {
            let m = rng.random_range(1..=3);
            let n = rng.random_range(1..=3);
            let mut a: Vec<i64> = (0..m).map(|_| rng.random_range(0..=5)).collect();
            let mut b: Vec<i64> = (0..n).map(|_| rng.random_range(0..=5)).collect();
            let (sa, sb) = (a.iter().sum::<i64>(), b.iter().sum::<i64>());
            if sa > sb {
                b[0] += sa - sb;
            } else {
                a[0] += sb - sa;
            }
            let c = (0..m * n).map(|_| rng.random_range(-9..=9)).collect();
            let inst = Instance { m, n, a, b, c };
            let sol = oracle_solve(&inst).unwrap();
            assert_certified(&inst, &sol);
            assert_eq!(sol.cost, exhaustive_best(&inst), "trial {trial}: {inst:?}");
        }
    }

    #[test]
    fn enforces_the_cell_cap() {
        let inst = Instance { m: 21, n: 20, a: vec![20; 21], b: vec![21; 20], c: vec![1; 420] };
        assert_eq!(
            oracle_solve(&inst),
            Err(OracleError::TooLarge { cells: 420, cap: ORACLE_DEFAULT_CELL_CAP })
        );
        assert!(oracle_solve_with_cap(&inst, 420).is_ok());
    }

    #[test]
    fn rejects_invalid_instances() {
        let inst = Instance::from_rows(vec![1], vec![2], vec![vec![1]]);
        assert!(matches!(oracle_solve(&inst), Err(OracleError::InvalidInstance(_))));
    }
}
