//! The solver loop: descend, make contact, readjust forces, capture a
//! branch; repeat until the moving tree is bare.
//!
//! Three interchangeable descent strategies find each cycle's contact pair:
//! a full scan, an early-exit scan from a shuffled start, and a cached
//! branch-distance lookup (per-row-stop runs only). All three produce the
//! same descent distance; they may pick different (equally close) contact
//! pairs, so runs differ in path but never in final cost.

use crate::bounds::{compare_signatures, z_sup};
use crate::forest::{
    apply_capture, check_properties, extract_signature, init_forest, main_path, ForestState,
    MainPath, Membership, NodeId, Signature, StopMode, NONE,
};
use crate::instance::{validate, Instance, ValidationReport};
use serde::Serialize;
use std::cmp::Ordering;
use std::time::{Duration, Instant};
use thiserror::Error;

/// How each cycle locates the closest moving-row / fixed-column pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DescentStrategy {
    /// Scan every pair; deterministic smallest-(i, j) tie-break.
    Naive,
    /// Scan from a start rank that hops by the golden-ratio fraction of the
    /// board between searches, and stop at the first zero slack found
    /// (a zero can never be beaten). Big win under heavy degeneracy.
    VersionA,
    /// Keep per-branch minimal distances so a descent only scans the stored
    /// row of the active branch: O(n) per descent. Requires per-row stops,
    /// where the moving tree is always a single branch.
    VersionB,
}

/// Options controlling a solve. `Default` is a single stop with the naive
/// scan and no instrumentation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SolveOptions {
    pub mode: StopMode,
    pub descent: DescentStrategy,
    /// Starting height for the rows; must be at least `max c`. Defaults to
    /// `max c + 1`.
    pub c_sup_override: Option<i64>,
    /// Run the full property checker, signature-rank monotonicity, the
    /// force-sum ledger, and (for the cached strategy) a from-scratch cache
    /// comparison after every cycle. Expensive; for tests and debugging.
    pub verify_each_cycle: bool,
    /// Record one [`CycleEvent`] per cycle in the report.
    pub trace: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            mode: StopMode::SingleStop,
            descent: DescentStrategy::Naive,
            c_sup_override: None,
            verify_each_cycle: false,
            trace: false,
        }
    }
}

/// Which tree captured the transplanted branch this cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CaptureDirection {
    /// The moving tree captured a fixed branch.
    MovingGains,
    /// The fixed tree captured a moving branch.
    FixedGains,
    /// The fixed tree captured the moving tree's last branch, ending the
    /// run (or, with per-row stops, the current sub-run).
    Termination,
}

impl std::fmt::Display for CaptureDirection {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            CaptureDirection::MovingGains => "moving-gains",
            CaptureDirection::FixedGains => "fixed-gains",
            CaptureDirection::Termination => "termination",
        };
        write!(f, "{s}")
    }
}

/// Everything that happened in one cycle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleEvent {
    /// Descent distance (0 under degeneracy).
    pub d: i64,
    /// Contact pair `(i_c, j_c)`, 0-based.
    pub contact: (usize, usize),
    /// Force readjustment along the main path.
    pub lambda: i64,
    /// The removed zero-force edge, as `(parent, child)` at breaking time.
    pub breaking_edge: (NodeId, NodeId),
    pub capture_direction: CaptureDirection,
}

/// Exact objective values can exceed what a JSON number holds, so they
/// serialize as decimal strings.
fn i128_as_string<S: serde::Serializer>(v: &i128, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// Result of a complete solve.
#[derive(Debug, Clone, Serialize)]
pub struct SolveReport {
    /// Positive shipments as `(i, j, amount)`, sorted by `(i, j)`.
    pub flows: Vec<(usize, usize, i64)>,
    /// Final row heights (supply duals).
    pub alpha: Vec<i64>,
    /// Final column heights (demand duals).
    pub beta: Vec<i64>,
    /// Objective `Σ c·f`, exact.
    #[serde(serialize_with = "i128_as_string")]
    pub cost: i128,
    /// Total cycles over the whole run (all sub-runs included).
    pub cycles: u64,
    /// Per-cycle events, when tracing was requested.
    pub trace: Option<Vec<CycleEvent>>,
    /// Wall-clock time of the run.
    pub elapsed: Duration,
    /// Candidate evaluations performed by the descent scans (the cost driver
    /// that distinguishes the strategies).
    pub scanned_cells: u64,
}

/// Outcome of the cycle loop itself (no solution extraction).
#[derive(Debug, Clone)]
pub struct RunTrace {
    pub cycles: u64,
    pub events: Option<Vec<CycleEvent>>,
    pub scanned_cells: u64,
}

/// Version A scan state: the rank in `[0, m·n)` where the next search
/// starts. Advancing by the golden-ratio fraction of the board spreads the
/// starts evenly, so under degeneracy each search finds a nearby zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ScanCursor {
    pub r: usize,
}

impl ScanCursor {
    /// Golden-ratio fraction `(√5 − 1)/2` of the board, rounded down.
    pub fn advance(&mut self, cells: usize) {
        const GOLDEN_FRACTION: f64 = 0.618_033_988_749_894_9;
        self.r = (self.r + (GOLDEN_FRACTION * cells as f64) as usize) % cells;
    }
}

/// Version B cache: for every row head `i`, the minimal slack between any
/// row of the branch hanging at `i` and each column.
///
/// Stored in a height-invariant form: `rho[i][j] = min over rows i' in the
/// branch of (alpha_i' − alpha_i − c_i'j)`, which depends only on the
/// branch's internal geometry. Branches move rigidly, so descents never
/// invalidate `rho`; the live distance is recovered on demand as
/// `delta = rho + alpha_i − beta_j`. Only captures change branch contents,
/// and they only change branches whose head row lies on the main path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchDistances {
    n: usize,
    rho: Vec<i64>,
    /// The branch row achieving each minimum, for contact selection.
    argmin_row: Vec<usize>,
}

impl BranchDistances {
    /// Live minimal distance between branch `i`'s rows and column `j`.
    #[inline]
    pub fn delta(&self, state: &ForestState, i: usize, j: usize) -> i64 {
        self.rho[i * self.n + j] + state.alpha[i] - state.beta[j]
    }

    #[inline]
    pub fn argmin_row(&self, i: usize, j: usize) -> usize {
        self.argmin_row[i * self.n + j]
    }

    /// Builds the cache from scratch for every row head, deepest rows first
    /// so inner branches are ready when their enclosing branch aggregates
    /// them. Also the verification oracle for the incremental update.
    pub fn build_full(state: &ForestState, inst: &Instance) -> BranchDistances {
        let mut cache = BranchDistances {
            n: state.n,
            rho: vec![0; state.m * state.n],
            argmin_row: vec![0; state.m * state.n],
        };
        let mut rows: Vec<usize> = (0..state.m).collect();
        rows.sort_by_key(|&i| std::cmp::Reverse(node_depth(state, state.row_slot(i))));
        for i in rows {
            cache.recompute_head(state, inst, i);
        }
        cache
    }

    /// Recomputes row `i`'s stored distances from its own slacks and the
    /// (already current) caches of the branch heads directly below it.
    /// Ties keep the first candidate in encounter order — own row, then
    /// sub-heads in child-list traversal order — which makes incremental
    /// and from-scratch maintenance agree exactly.
    fn recompute_head(&mut self, state: &ForestState, inst: &Instance, i: usize) {
        let n = self.n;
        for j in 0..n {
            self.rho[i * n + j] = -inst.c_at(i, j);
            self.argmin_row[i * n + j] = i;
        }
        for sub in collect_subheads(state, i) {
            let offset = state.alpha[sub] - state.alpha[i];
            for j in 0..n {
                let cand = offset + self.rho[sub * n + j];
                if cand < self.rho[i * n + j] {
                    self.rho[i * n + j] = cand;
                    self.argmin_row[i * n + j] = self.argmin_row[sub * n + j];
                }
            }
        }
    }
}

/// The row heads hanging directly below row `i`: descend through `i`'s
/// column children and stop at the first row on every path. Deterministic
/// child-list order.
fn collect_subheads(state: &ForestState, i: usize) -> Vec<usize> {
    let mut subheads = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    let mut child = state.first_child[state.row_slot(i)];
    while child != NONE {
        stack.push(child);
        child = state.next_sibling[child];
    }
    while let Some(slot) = stack.pop() {
        if slot < state.m {
            subheads.push(slot);
            continue; // its own cache already aggregates everything below
        }
        let mut grandchild = state.first_child[slot];
        while grandchild != NONE {
            stack.push(grandchild);
            grandchild = state.next_sibling[grandchild];
        }
    }
    subheads
}

fn node_depth(state: &ForestState, mut slot: usize) -> usize {
    let mut depth = 0;
    while state.parent[slot] != NONE {
        slot = state.parent[slot];
        depth += 1;
    }
    depth
}

/// Refreshes the cache after a capture: every branch whose head row lies on
/// the cycle's main path may have gained or lost rows, and those heads nest
/// along the path, so they are recomputed deepest-first against the
/// post-capture tree. Branches with off-path heads are untouched by the
/// surgery and stay valid.
pub fn update_branch_distances(
    cache: &mut BranchDistances,
    state: &ForestState,
    inst: &Instance,
    path: &MainPath,
) {
    let mut rows: Vec<usize> = path.nodes.iter().copied().filter(|&s| s < state.m).collect();
    rows.sort_by_key(|&i| std::cmp::Reverse(node_depth(state, state.row_slot(i))));
    for i in rows {
        cache.recompute_head(state, inst, i);
    }
}

/// Errors from [`solve`] and the lower-level loop ops.
#[derive(Debug, Clone, Error)]
pub enum SolveError {
    #[error("invalid instance: {0}")]
    InvalidInstance(ValidationReport),
    #[error("unsupported options: {0}")]
    UnsupportedOptions(String),
    #[error("magnitudes too large for overflow-safe arithmetic: {0}")]
    MagnitudeTooLarge(String),
    #[error("descent called with no moving row or no fixed column")]
    NoCandidates,
    #[error(
        "cycle budget exceeded after {cycles} cycles; this is a solver bug, not an input condition"
    )]
    CycleBudgetExceeded { cycles: u64 },
    #[error("invariant violated at cycle {cycle}: {details}")]
    InvariantViolated { cycle: u64, details: String },
    #[error("solution extraction before termination: {0}")]
    NotTerminated(String),
}

// ---------------------------------------------------------------------------
// Descent strategies
// ---------------------------------------------------------------------------

/// Full-scan descent: finds the minimum slack over moving rows × fixed
/// columns (ties: smallest `i`, then `j`), lowers the moving tree by it, and
/// returns `(d, i_c, j_c)`. `scanned` counts slack evaluations.
pub fn descent_step(
    state: &mut ForestState,
    inst: &Instance,
    scanned: &mut u64,
) -> Result<(i64, usize, usize), SolveError> {
    let mut best: Option<(i64, usize, usize)> = None;
    for i in 0..state.m {
        if state.membership[state.row_slot(i)] != Membership::Moving {
            continue;
        }
        for j in 0..state.n {
            if state.membership[state.col_slot(j)] != Membership::Fixed {
                continue;
            }
            let g = state.gamma(inst, i, j);
            *scanned += 1;
            if best.is_none_or(|(bg, _, _)| g < bg) {
                best = Some((g, i, j));
            }
        }
    }
    let (d, i, j) = best.ok_or(SolveError::NoCandidates)?;
    debug_assert!(d >= 0, "slack went negative before descent");
    state.lower_moving(d);
    Ok((d, i, j))
}

/// Early-exit descent: scans pairs in rank order starting at the cursor,
/// returns immediately on a zero slack (nothing can be closer), otherwise
/// completes the scan and returns the true minimum (ties: first hit from
/// the cursor). Advances the cursor afterwards.
pub fn descent_version_a(
    state: &mut ForestState,
    inst: &Instance,
    cursor: &mut ScanCursor,
    scanned: &mut u64,
) -> Result<(i64, usize, usize), SolveError> {
    let cells = state.m * state.n;
    let mut best: Option<(i64, usize, usize)> = None;
    for offset in 0..cells {
        let rank = (cursor.r + offset) % cells;
        let (i, j) = (rank / state.n, rank % state.n);
        if state.membership[state.row_slot(i)] != Membership::Moving
            || state.membership[state.col_slot(j)] != Membership::Fixed
        {
            continue;
        }
        let g = state.gamma(inst, i, j);
        *scanned += 1;
        debug_assert!(g >= 0);
        if g == 0 {
            best = Some((0, i, j));
            break;
        }
        if best.is_none_or(|(bg, _, _)| g < bg) {
            best = Some((g, i, j));
        }
    }
    cursor.advance(cells);
    let (d, i, j) = best.ok_or(SolveError::NoCandidates)?;
    state.lower_moving(d);
    Ok((d, i, j))
}

/// Cached descent for per-row-stop runs: the moving tree is exactly the
/// branch headed by the released row `active_row`, so the minimum over all
/// moving rows is the minimum of that branch's cached distances over fixed
/// columns — one stored row, O(n). Ties: smallest `j`, then the cached
/// minimizing row.
pub fn descent_version_b(
    state: &mut ForestState,
    cache: &BranchDistances,
    active_row: usize,
    scanned: &mut u64,
) -> Result<(i64, usize, usize), SolveError> {
    debug_assert_eq!(state.membership[state.row_slot(active_row)], Membership::Moving);
    let mut best: Option<(i64, usize)> = None;
    for j in 0..state.n {
        if state.membership[state.col_slot(j)] != Membership::Fixed {
            continue;
        }
        let delta = cache.delta(state, active_row, j);
        *scanned += 1;
        if best.is_none_or(|(bd, _)| delta < bd) {
            best = Some((delta, j));
        }
    }
    let (d, j) = best.ok_or(SolveError::NoCandidates)?;
    let i = cache.argmin_row(active_row, j);
    debug_assert!(d >= 0);
    state.lower_moving(d);
    Ok((d, i, j))
}

// ---------------------------------------------------------------------------
// Contact, readjustment, capture
// ---------------------------------------------------------------------------

/// Inserts the (virtual, zero-force) contact edge, readjusts forces along
/// the main path — `+λ` on even-numbered edges, `−λ` on odd — and selects
/// the breaking edge: among odd edges now at zero force, the one nearest
/// `Q`. Returns `(lambda, breaking edge index)`; the caller completes the
/// cycle with [`apply_capture`].
pub fn contact_and_readjust(state: &mut ForestState, path: &MainPath) -> (i64, usize) {
    let edges = path.edge_count();
    let mut lambda = i64::MAX;
    for t in (1..=edges).step_by(2) {
        let slot = path.force_slot(t).expect("odd edges are real tree edges");
        lambda = lambda.min(state.edge_force[slot]);
    }
    debug_assert!(lambda >= 0, "negative force on the main path");
    for t in 1..=edges {
        if let Some(slot) = path.force_slot(t) {
            if t % 2 == 1 {
                state.edge_force[slot] -= lambda;
            } else {
                state.edge_force[slot] += lambda;
            }
        }
    }
    let break_edge = (1..=edges)
        .step_by(2)
        .find(|&t| state.edge_force[path.force_slot(t).unwrap()] == 0)
        .expect("the lambda-minimizing edge reaches zero");
    (lambda, break_edge)
}

/// `(parent, child)` of path edge `t`, oriented as stored in the tree at
/// call time.
fn edge_endpoints(state: &ForestState, path: &MainPath, t: usize) -> (NodeId, NodeId) {
    if t <= path.contact_pos {
        (state.node_id(path.nodes[t - 1]), state.node_id(path.nodes[t]))
    } else {
        (state.node_id(path.nodes[t]), state.node_id(path.nodes[t - 1]))
    }
}

// ---------------------------------------------------------------------------
// The cycle loop
// ---------------------------------------------------------------------------

/// Bookkeeping for the per-cycle invariant verification.
struct Verifier {
    moving_sig: Signature,
    fixed_sig: Signature,
    force_sum: i128,
}

/// Runs the cycle loop on an initialized state until every stop is bare,
/// releasing stops in index order in per-row mode. The state is left at
/// termination; use [`extract_solution`] to read the answer off it.
pub fn run(
    state: &mut ForestState,
    inst: &Instance,
    opts: &SolveOptions,
) -> Result<RunTrace, SolveError> {
    let budget: u64 = u64::try_from(z_sup(inst.m, inst.n).saturating_add(1)).unwrap_or(u64::MAX);
    let mut cycles: u64 = 0;
    let mut scanned: u64 = 0;
    let mut events = opts.trace.then(Vec::new);
    let mut cursor = ScanCursor { r: 0 };
    let mut cache = (opts.descent == DescentStrategy::VersionB)
        .then(|| BranchDistances::build_full(state, inst));
    // Cumulative descent bound: keeps every height, slack, and stored
    // offset comfortably inside i64 (entry magnitudes are guarded on entry).
    let mut total_descent: i128 = 0;

    let stops: Vec<usize> = match opts.mode {
        StopMode::SingleStop => vec![0],
        StopMode::PerRowStops => (0..inst.m).collect(),
    };

    let mut verifier: Option<Verifier> = None;

    'all_stops: for &k in &stops {
        if opts.mode == StopMode::PerRowStops {
            state.release_stop(k);
        }
        if opts.verify_each_cycle {
            verifier = Some(Verifier {
                moving_sig: extract_signature(state, NodeId::StopQ(k)),
                fixed_sig: extract_signature(state, NodeId::StopP),
                force_sum: state.sum_row_column_forces(),
            });
        }

        loop {
            let q = state.stop_q_slot(k);
            if state.first_child[q] == NONE {
                break; // moving tree is bare: sub-run done
            }
            if !(0..state.n).any(|j| state.membership[state.col_slot(j)] == Membership::Fixed) {
                // The fixed tree ran out of columns: nothing left to contact
                // anywhere, so the run ends; extraction reads the flows off
                // whichever tree holds them.
                break 'all_stops;
            }

            let (d, i_c, j_c) = match opts.descent {
                DescentStrategy::Naive => descent_step(state, inst, &mut scanned)?,
                DescentStrategy::VersionA => {
                    descent_version_a(state, inst, &mut cursor, &mut scanned)?
                }
                DescentStrategy::VersionB => {
                    descent_version_b(state, cache.as_ref().unwrap(), k, &mut scanned)?
                }
            };
            total_descent += d as i128;
            if total_descent > i64::MAX as i128 / 4 {
                return Err(SolveError::MagnitudeTooLarge(format!(
                    "cumulative descent {total_descent}"
                )));
            }
            debug_assert_eq!(state.gamma(inst, i_c, j_c), 0);

            let path = main_path(state, i_c, j_c);
            let (lambda, break_edge) = contact_and_readjust(state, &path);
            let breaking_edge = edge_endpoints(state, &path, break_edge);
            apply_capture(state, &path, break_edge, lambda);

            let capture_direction = if state.first_child[q] == NONE {
                CaptureDirection::Termination
            } else if break_edge < path.contact_pos + 1 {
                CaptureDirection::FixedGains
            } else {
                CaptureDirection::MovingGains
            };

            if let Some(cache) = cache.as_mut() {
                update_branch_distances(cache, state, inst, &path);
            }

            cycles += 1;
            if cycles >= budget {
                return Err(SolveError::CycleBudgetExceeded { cycles });
            }

            if let Some(v) = verifier.as_mut() {
                verify_cycle(state, inst, v, lambda, k, cache.as_ref(), cycles)?;
            }
            if let Some(events) = events.as_mut() {
                events.push(CycleEvent {
                    d,
                    contact: (i_c, j_c),
                    lambda,
                    breaking_edge,
                    capture_direction,
                });
            }
        }

        if opts.mode == StopMode::PerRowStops {
            state.retire_stop(k);
        }
    }

    Ok(RunTrace { cycles, events, scanned_cells: scanned })
}

/// The per-cycle invariant battery behind `verify_each_cycle`.
fn verify_cycle(
    state: &ForestState,
    inst: &Instance,
    v: &mut Verifier,
    lambda: i64,
    active_stop: usize,
    cache: Option<&BranchDistances>,
    cycle: u64,
) -> Result<(), SolveError> {
    let fail = |details: String| SolveError::InvariantViolated { cycle, details };

    let report = check_properties(state, inst);
    if !report.is_ok() {
        return Err(fail(report.to_string()));
    }

    let moving = extract_signature(state, NodeId::StopQ(active_stop));
    if compare_signatures(&v.moving_sig, &moving) != Ordering::Less {
        return Err(fail(format!(
            "moving signature rank did not increase: {:?} then {:?}",
            v.moving_sig.g, moving.g
        )));
    }
    let fixed = extract_signature(state, NodeId::StopP);
    if compare_signatures(&v.fixed_sig, &fixed) != Ordering::Less {
        return Err(fail(format!(
            "fixed signature rank did not increase: {:?} then {:?}",
            v.fixed_sig.g, fixed.g
        )));
    }
    v.moving_sig = moving;
    v.fixed_sig = fixed;

    let sum = state.sum_row_column_forces();
    if sum != v.force_sum + lambda as i128 {
        return Err(fail(format!(
            "row-column force sum moved {} -> {} under lambda {}",
            v.force_sum, sum, lambda
        )));
    }
    v.force_sum = sum;

    if let Some(cache) = cache {
        let fresh = BranchDistances::build_full(state, inst);
        if fresh != *cache {
            let n = state.n;
            let bad = (0..state.m * n)
                .find(|&idx| {
                    fresh.rho[idx] != cache.rho[idx]
                        || fresh.argmin_row[idx] != cache.argmin_row[idx]
                })
                .unwrap();
            return Err(fail(format!(
                "branch-distance cache stale at branch {} column {}: stored ({}, {}), fresh ({}, {})",
                bad / n + 1,
                bad % n + 1,
                cache.rho[bad],
                cache.argmin_row[bad] + 1,
                fresh.rho[bad],
                fresh.argmin_row[bad] + 1
            )));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Extraction, certification, and the public entry point
// ---------------------------------------------------------------------------

/// Flow triples `(row, column, amount)` plus the final row and column heights.
pub type ExtractedSolution = (Vec<(usize, usize, i64)>, Vec<i64>, Vec<i64>);

/// Reads the solution off a terminated state: flows are the forces on
/// row–column edges (absent edge = 0), duals are the final heights. Errors
/// if some stop still holds a subtree.
pub fn extract_solution(state: &ForestState) -> Result<ExtractedSolution, SolveError> {
    let busy_stop = (0..state.num_stops).find(|&k| state.first_child[state.stop_q_slot(k)] != NONE);
    if let Some(k) = busy_stop {
        let fixed_cols =
            (0..state.n).filter(|&j| state.membership[state.col_slot(j)] == Membership::Fixed);
        if fixed_cols.count() > 0 {
            return Err(SolveError::NotTerminated(format!(
                "stop {} still holds a subtree",
                state.node_name(state.stop_q_slot(k))
            )));
        }
        // Otherwise the fixed tree ran out of columns mid-run; the moving
        // tree holds the full solution and extraction proceeds.
    }
    let mut flows: Vec<(usize, usize, i64)> =
        state.row_column_edges().filter(|&(_, _, f)| f > 0).collect();
    flows.sort_unstable();
    Ok((flows, state.alpha.clone(), state.beta.clone()))
}

/// Certificate of optimality for a proposed primal/dual pair.
///
/// Five checks: row sums, column sums (with `f ≥ 0` folded into both),
/// dual feasibility (`alpha_i − beta_j ≥ c_ij` everywhere), complementary
/// slackness (`f_ij > 0` only where that holds with equality), and the
/// duality identity `Σa·alpha − Σb·beta = Σc·f`. All five passing proves
/// optimality outright — no trust in the solver required.
#[derive(Debug, Clone, Serialize)]
pub struct CertificateReport {
    /// Primal objective Σc·f of the proposed flows.
    #[serde(serialize_with = "i128_as_string")]
    pub primal_value: i128,
    /// Dual objective Σa·alpha − Σb·beta of the proposed heights.
    #[serde(serialize_with = "i128_as_string")]
    pub dual_value: i128,
    /// Every failed check, with a witness. Empty means certified optimal.
    pub violations: Vec<String>,
}

impl CertificateReport {
    pub fn certified(&self) -> bool {
        self.violations.is_empty()
    }
}

impl std::fmt::Display for CertificateReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.certified() {
            write!(f, "certified optimal: cost {}", self.primal_value)
        } else {
            write!(f, "NOT certified: {}", self.violations.join("; "))
        }
    }
}

/// Checks a proposed solution against an instance. Pure; all failures are
/// reported with witnesses rather than short-circuiting.
pub fn verify_optimality(
    inst: &Instance,
    flows: &[(usize, usize, i64)],
    alpha: &[i64],
    beta: &[i64],
) -> CertificateReport {
    let mut violations = Vec::new();
    if alpha.len() != inst.m || beta.len() != inst.n {
        violations.push(format!(
            "dual vectors sized {}/{}, expected {}/{}",
            alpha.len(),
            beta.len(),
            inst.m,
            inst.n
        ));
        return CertificateReport { primal_value: 0, dual_value: 0, violations };
    }

    let mut row_sum = vec![0i128; inst.m];
    let mut col_sum = vec![0i128; inst.n];
    let mut primal: i128 = 0;
    for &(i, j, f) in flows {
        if i >= inst.m || j >= inst.n {
            violations.push(format!("flow index ({i},{j}) out of range"));
            continue;
        }
        if f < 0 {
            violations.push(format!("flow f[{},{}] = {f} is negative", i + 1, j + 1));
        }
        row_sum[i] += f as i128;
        col_sum[j] += f as i128;
        primal += f as i128 * inst.c_at(i, j) as i128;
        let slack = alpha[i] as i128 - beta[j] as i128 - inst.c_at(i, j) as i128;
        if f > 0 && slack != 0 {
            violations.push(format!(
                "complementary slackness: f[{},{}] = {f} on slack {slack}",
                i + 1,
                j + 1
            ));
        }
    }
    for (i, (&shipped, &supply)) in row_sum.iter().zip(&inst.a).enumerate() {
        if shipped != supply as i128 {
            violations.push(format!("row {} ships {} of supply {}", i + 1, shipped, supply));
        }
    }
    for (j, (&received, &demand)) in col_sum.iter().zip(&inst.b).enumerate() {
        if received != demand as i128 {
            violations.push(format!("column {} receives {} of demand {}", j + 1, received, demand));
        }
    }
    for (i, &ai) in alpha.iter().enumerate() {
        for (j, &bj) in beta.iter().enumerate() {
            let slack = ai as i128 - bj as i128 - inst.c_at(i, j) as i128;
            if slack < 0 {
                violations.push(format!("dual infeasible at ({},{}): slack {slack}", i + 1, j + 1));
            }
        }
    }
    let dual: i128 = (0..inst.m).map(|i| inst.a[i] as i128 * alpha[i] as i128).sum::<i128>()
        - (0..inst.n).map(|j| inst.b[j] as i128 * beta[j] as i128).sum::<i128>();
    if dual != primal {
        violations.push(format!("duality gap: primal {primal}, dual {dual}"));
    }
    CertificateReport { primal_value: primal, dual_value: dual, violations }
}

/// Entry-magnitude guard: with every profit, the starting height, and the
/// total supply below `i64::MAX / 4`, all heights, slacks, forces, and
/// cached offsets stay inside i64 for the whole run (the cumulative descent
/// is re-guarded each cycle).
fn guard_magnitudes(inst: &Instance, c_sup: i64) -> Result<(), SolveError> {
    let limit = i64::MAX / 4;
    let max_abs_c = inst.c.iter().map(|c| c.unsigned_abs()).max().unwrap_or(0);
    if max_abs_c > limit as u64 {
        return Err(SolveError::MagnitudeTooLarge(format!("profit magnitude {max_abs_c}")));
    }
    if c_sup.unsigned_abs() > limit as u64 {
        return Err(SolveError::MagnitudeTooLarge(format!("starting height {c_sup}")));
    }
    if inst.total_supply() > limit as i128 {
        return Err(SolveError::MagnitudeTooLarge(format!("total supply {}", inst.total_supply())));
    }
    Ok(())
}

/// Solves a balanced transportation problem exactly. Validates the
/// instance, runs the cycle loop to termination, and returns flows, duals,
/// cost, and instrumentation. Deterministic for fixed options.
pub fn solve(inst: &Instance, opts: &SolveOptions) -> Result<SolveReport, SolveError> {
    let started = Instant::now();
    let report = validate(inst);
    if !report.is_ok() {
        return Err(SolveError::InvalidInstance(report));
    }
    if opts.descent == DescentStrategy::VersionB && opts.mode != StopMode::PerRowStops {
        return Err(SolveError::UnsupportedOptions(
            "the cached-distance descent requires per-row stops (its cache is per branch and \
             the moving tree must be a single branch)"
                .to_string(),
        ));
    }
    let c_sup = opts.c_sup_override.unwrap_or_else(|| inst.max_c() + 1);
    if c_sup < inst.max_c() {
        return Err(SolveError::UnsupportedOptions(format!(
            "starting height {c_sup} is below the largest profit {}; rows must start above \
             every stud",
            inst.max_c()
        )));
    }
    guard_magnitudes(inst, c_sup)?;

    let mut state = init_forest(inst, c_sup, opts.mode);
    let trace = run(&mut state, inst, opts)?;
    let (flows, alpha, beta) = extract_solution(&state)?;
    let cost: i128 = flows.iter().map(|&(i, j, f)| f as i128 * inst.c_at(i, j) as i128).sum();

    Ok(SolveReport {
        flows,
        alpha,
        beta,
        cost,
        cycles: trace.cycles,
        trace: trace.events,
        elapsed: started.elapsed(),
        scanned_cells: trace.scanned_cells,
    })
}

/// One pinned trace line: `cycle d i_c j_c lambda break_parent break_child
/// direction`, tab-separated, indices 1-based, node names as in the tree
/// diagrams (`Q` plain when the run has a single stop).
pub fn format_trace_line(cycle: u64, event: &CycleEvent, mode: StopMode) -> String {
    let name = |id: NodeId| match id {
        NodeId::StopQ(_) if mode == StopMode::SingleStop => "Q".to_string(),
        other => other.to_string(),
    };
    format!(
        "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
        cycle,
        event.d,
        event.contact.0 + 1,
        event.contact.1 + 1,
        event.lambda,
        name(event.breaking_edge.0),
        name(event.breaking_edge.1),
        event.capture_direction
    )
}
