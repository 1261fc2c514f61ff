//! The mechanical state of the solver: one or two triply linked trees of
//! row and column rods suspended from stops, with per-edge contact forces
//! and per-rod heights.
//!
//! The fixed tree hangs from stop `P` and never moves; the moving tree hangs
//! from a stop `Q` (one global stop, or one stop per row) and descends
//! rigidly between structure changes. Flows of the transportation problem
//! appear as contact forces on row–column edges, and the dual values are the
//! rod heights `alpha` / `beta`.

use crate::instance::Instance;
use serde::Serialize;

/// Sentinel for "no node" in the triply linked arrays.
pub const NONE: usize = usize::MAX;

/// Public name of a node. Internally nodes live in one flat slot space; this
/// enum is the stable external identity used in events, reports, and tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum NodeId {
    /// Row rod `i` (0-based). A male node: its tree neighbours are female.
    Row(usize),
    /// Column rod `j` (0-based). A female node.
    Column(usize),
    /// The fixed stop. Male; the fixed tree's root.
    StopP,
    /// Moving stop `k` (0-based). Female; a moving tree's root. With a single
    /// global stop only `StopQ(0)` exists.
    StopQ(usize),
}

impl std::fmt::Display for NodeId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NodeId::Row(i) => write!(f, "A{}", i + 1),
            NodeId::Column(j) => write!(f, "B{}", j + 1),
            NodeId::StopP => write!(f, "P"),
            NodeId::StopQ(k) => write!(f, "Q{}", k + 1),
        }
    }
}

/// Which tree (if any) a node currently belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Membership {
    /// In the moving tree (descends during a cycle).
    Moving,
    /// In the fixed tree (never moves).
    Fixed,
    /// In neither tree: a not-yet-released or already-retired stop, or the
    /// row still parked on an unreleased stop. Outside nodes keep their
    /// parked edge but take no part in descents, captures, or signatures.
    Outside,
}

/// Stop layout. One global moving stop carries every row from the start; the
/// per-row layout parks each row on its own stop and releases the stops one
/// at a time (rows join the problem one by one).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum StopMode {
    SingleStop,
    PerRowStops,
}

/// Level profile of one tree: entry `t` is the number of nodes at depth
/// `t + 1` below the root (the root itself is not counted). Trees are
/// compared in the alternating order implemented by `compare_signatures`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Signature {
    pub g: Vec<u32>,
}

/// The complete mechanical state. Nodes live in one flat slot space:
/// rows `0..m`, columns `m..m+n`, stop `P` at `m+n`, stops `Q_k` at
/// `m+n+1+k`. The tree structure is triply linked (`parent`, `first_child`,
/// `next_sibling`), and the contact force of the edge to the parent is
/// stored on the child.
#[derive(Debug, Clone)]
pub struct ForestState {
    pub m: usize,
    pub n: usize,
    /// Number of moving stops: 1 (single-stop) or `m` (per-row).
    pub num_stops: usize,
    /// Row heights (dual values of supplies), length `m`.
    pub alpha: Vec<i64>,
    /// Column heights (dual values of demands), length `n`.
    pub beta: Vec<i64>,
    /// Parent slot, or `NONE` for roots.
    pub parent: Vec<usize>,
    /// Head of the child list, or `NONE`.
    pub first_child: Vec<usize>,
    /// Next sibling in the parent's child list, or `NONE`.
    pub next_sibling: Vec<usize>,
    /// Force on the edge to the parent, stored on the child slot; 0 for
    /// roots.
    pub edge_force: Vec<i64>,
    /// Tree membership per slot.
    pub membership: Vec<Membership>,
    /// Initialization height: every row starts at `alpha = c_sup`, strictly
    /// above every profit, so all initial slacks are positive.
    pub c_sup: i64,
}

impl ForestState {
    // -- slot arithmetic ---------------------------------------------------

    #[inline]
    pub fn row_slot(&self, i: usize) -> usize {
        debug_assert!(i < self.m);
        i
    }

    #[inline]
    pub fn col_slot(&self, j: usize) -> usize {
        debug_assert!(j < self.n);
        self.m + j
    }

    #[inline]
    pub fn stop_p_slot(&self) -> usize {
        self.m + self.n
    }

    #[inline]
    pub fn stop_q_slot(&self, k: usize) -> usize {
        debug_assert!(k < self.num_stops);
        self.m + self.n + 1 + k
    }

    pub fn slot_of(&self, id: NodeId) -> usize {
        match id {
            NodeId::Row(i) => self.row_slot(i),
            NodeId::Column(j) => self.col_slot(j),
            NodeId::StopP => self.stop_p_slot(),
            NodeId::StopQ(k) => self.stop_q_slot(k),
        }
    }

    pub fn node_id(&self, slot: usize) -> NodeId {
        if slot < self.m {
            NodeId::Row(slot)
        } else if slot < self.m + self.n {
            NodeId::Column(slot - self.m)
        } else if slot == self.m + self.n {
            NodeId::StopP
        } else {
            NodeId::StopQ(slot - self.m - self.n - 1)
        }
    }

    /// Rows and stop `P` are male; columns and stops `Q` are female. Every
    /// tree edge joins one of each.
    #[inline]
    pub fn is_male(&self, slot: usize) -> bool {
        slot < self.m || slot == self.stop_p_slot()
    }

    // -- structure editing -------------------------------------------------

    /// Hangs `child` on `parent` with the given contact force. The child is
    /// pushed at the front of the parent's child list (cheap and
    /// deterministic; child order never affects results, only traversal
    /// order, which is pinned by this rule).
    pub fn attach(&mut self, child: usize, parent: usize, force: i64) {
        debug_assert_eq!(self.parent[child], NONE, "attach of a non-root");
        debug_assert_ne!(
            self.is_male(child),
            self.is_male(parent),
            "edges join a male and a female node"
        );
        self.parent[child] = parent;
        self.next_sibling[child] = self.first_child[parent];
        self.first_child[parent] = child;
        self.edge_force[child] = force;
    }

    /// Unhooks `child` from its parent, leaving it a root. Its own subtree
    /// is untouched.
    pub fn detach(&mut self, child: usize) {
        let parent = self.parent[child];
        debug_assert_ne!(parent, NONE, "detach of a root");
        let mut cursor = self.first_child[parent];
        if cursor == child {
            self.first_child[parent] = self.next_sibling[child];
        } else {
            while self.next_sibling[cursor] != child {
                cursor = self.next_sibling[cursor];
                debug_assert_ne!(cursor, NONE, "child missing from parent's list");
            }
            self.next_sibling[cursor] = self.next_sibling[child];
        }
        self.parent[child] = NONE;
        self.next_sibling[child] = NONE;
        self.edge_force[child] = 0;
    }

    /// All slots of the subtree rooted at `root` (root included), in
    /// depth-first order following child lists.
    pub fn subtree_slots(&self, root: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![root];
        while let Some(slot) = stack.pop() {
            out.push(slot);
            let mut child = self.first_child[slot];
            while child != NONE {
                stack.push(child);
                child = self.next_sibling[child];
            }
        }
        out
    }

    pub fn set_membership_subtree(&mut self, root: usize, membership: Membership) {
        for slot in self.subtree_slots(root) {
            self.membership[slot] = membership;
        }
    }

    // -- mechanics ---------------------------------------------------------

    /// Vertical slack between row `i` and column `j`: the gap the moving
    /// tree would have to descend for the pair to touch. Nonnegative
    /// everywhere at all times; exactly zero on row–column tree edges.
    #[inline]
    pub fn gamma(&self, inst: &Instance, i: usize, j: usize) -> i64 {
        self.alpha[i] - self.beta[j] - inst.c_at(i, j)
    }

    /// Rigid descent: lowers every moving rod by `d`. Stops have no height
    /// of their own.
    pub fn lower_moving(&mut self, d: i64) {
        debug_assert!(d >= 0);
        for i in 0..self.m {
            if self.membership[self.row_slot(i)] == Membership::Moving {
                self.alpha[i] -= d;
            }
        }
        for j in 0..self.n {
            if self.membership[self.col_slot(j)] == Membership::Moving {
                self.beta[j] -= d;
            }
        }
    }

    /// The slot of the active moving stop, if any.
    pub fn moving_root(&self) -> Option<usize> {
        (0..self.num_stops)
            .map(|k| self.stop_q_slot(k))
            .find(|&s| self.membership[s] == Membership::Moving)
    }

    /// Activates stop `k`: the stop and its parked subtree (normally just
    /// row `k`) join the moving tree.
    pub fn release_stop(&mut self, k: usize) {
        let slot = self.stop_q_slot(k);
        debug_assert_eq!(self.membership[slot], Membership::Outside);
        debug_assert!(self.moving_root().is_none(), "only one stop may be active");
        self.set_membership_subtree(slot, Membership::Moving);
    }

    /// Parks a stop that has lost all children; it takes no further part in
    /// the run.
    pub fn retire_stop(&mut self, k: usize) {
        let slot = self.stop_q_slot(k);
        debug_assert_eq!(self.first_child[slot], NONE, "retired stop must be childless");
        self.membership[slot] = Membership::Outside;
    }

    /// Sum of contact forces over row–column edges only (stop edges
    /// excluded). Grows by exactly the readjustment amount `lambda` each
    /// cycle; reaching `Σa` is the termination condition in disguise.
    pub fn sum_row_column_forces(&self) -> i128 {
        let mut sum = 0i128;
        for i in 0..self.m {
            let p = self.parent[self.row_slot(i)];
            if p != NONE && p >= self.m && p < self.m + self.n {
                sum += self.edge_force[self.row_slot(i)] as i128;
            }
        }
        for j in 0..self.n {
            let p = self.parent[self.col_slot(j)];
            if p != NONE && p < self.m {
                sum += self.edge_force[self.col_slot(j)] as i128;
            }
        }
        sum
    }

    /// Iterates row–column tree edges as `(i, j, force)`.
    pub fn row_column_edges(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        let rows = (0..self.m).filter_map(move |i| {
            let p = self.parent[self.row_slot(i)];
            (p != NONE && p >= self.m && p < self.m + self.n)
                .then(|| (i, p - self.m, self.edge_force[self.row_slot(i)]))
        });
        let cols = (0..self.n).filter_map(move |j| {
            let p = self.parent[self.col_slot(j)];
            (p != NONE && p < self.m).then(|| (p, j, self.edge_force[self.col_slot(j)]))
        });
        rows.chain(cols)
    }

    /// Human-readable node name for traces and reports: `A1…`, `B1…`, `P`,
    /// and `Q` / `Q1…` (the index is dropped when only one stop exists).
    pub fn node_name(&self, slot: usize) -> String {
        match self.node_id(slot) {
            NodeId::StopQ(_) if self.num_stops == 1 => "Q".to_string(),
            id => id.to_string(),
        }
    }
}

/// Builds the initial state: every row at height `c_sup`, every column at 0;
/// all columns hang on `P` carrying their demands, all rows hang on moving
/// stops carrying their supplies. With a single stop all rows are moving at
/// once; with per-row stops everything starts `Outside` and the driver
/// releases stops one by one.
pub fn init_forest(inst: &Instance, c_sup: i64, mode: StopMode) -> ForestState {
    let (m, n) = (inst.m, inst.n);
    let num_stops = match mode {
        StopMode::SingleStop => 1,
        StopMode::PerRowStops => m,
    };
    let slots = m + n + 1 + num_stops;
    let mut state = ForestState {
        m,
        n,
        num_stops,
        alpha: vec![c_sup; m],
        beta: vec![0; n],
        parent: vec![NONE; slots],
        first_child: vec![NONE; slots],
        next_sibling: vec![NONE; slots],
        edge_force: vec![0; slots],
        membership: vec![Membership::Outside; slots],
        c_sup,
    };

    let p = state.stop_p_slot();
    state.membership[p] = Membership::Fixed;
    // Attach in reverse so child lists read in natural index order.
    for j in (0..n).rev() {
        let slot = state.col_slot(j);
        state.attach(slot, p, inst.b[j]);
        state.membership[slot] = Membership::Fixed;
    }
    match mode {
        StopMode::SingleStop => {
            let q = state.stop_q_slot(0);
            state.membership[q] = Membership::Moving;
            for i in (0..m).rev() {
                let slot = state.row_slot(i);
                state.attach(slot, q, inst.a[i]);
                state.membership[slot] = Membership::Moving;
            }
        }
        StopMode::PerRowStops => {
            for k in 0..m {
                let q = state.stop_q_slot(k);
                state.attach(state.row_slot(k), q, inst.a[k]);
                // Parked: both stay Outside until the stop is released.
            }
        }
    }
    state
}

// ---------------------------------------------------------------------------
// Main path and capture
// ---------------------------------------------------------------------------

/// The cycle's working path: the node chain from the moving root `Q` down to
/// the contact row, across the contact pair, and up to `P`. Edges are
/// numbered from 1 at `Q`; the contact edge `(nodes[contact_pos],
/// nodes[contact_pos + 1])` always gets an even number, so the path has an
/// odd number of edges.
#[derive(Debug, Clone)]
pub struct MainPath {
    /// Slots from the moving root (index 0) to `P` (last index).
    pub nodes: Vec<usize>,
    /// Index of the contact row within `nodes`; always odd.
    pub contact_pos: usize,
}

impl MainPath {
    /// Number of edges on the path (odd).
    pub fn edge_count(&self) -> usize {
        self.nodes.len() - 1
    }

    /// The slot carrying the force of edge `t` (1-based): on the moving side
    /// the deeper node is the child; on the fixed side the shallower one is.
    /// The contact edge (`t == contact_pos + 1`) exists only virtually until
    /// the capture attaches it, so it carries no stored force.
    pub fn force_slot(&self, t: usize) -> Option<usize> {
        debug_assert!(t >= 1 && t <= self.edge_count());
        if t <= self.contact_pos {
            Some(self.nodes[t])
        } else if t == self.contact_pos + 1 {
            None
        } else {
            Some(self.nodes[t - 1])
        }
    }
}

/// Computes the main path for contact pair `(i, j)`: row `i` must be moving
/// and column `j` fixed. Walks both tree branches up to their roots.
pub fn main_path(state: &ForestState, i: usize, j: usize) -> MainPath {
    debug_assert_eq!(state.membership[state.row_slot(i)], Membership::Moving);
    debug_assert_eq!(state.membership[state.col_slot(j)], Membership::Fixed);

    let mut moving_side = Vec::new();
    let mut slot = state.row_slot(i);
    while slot != NONE {
        moving_side.push(slot);
        slot = state.parent[slot];
    }
    moving_side.reverse(); // moving root … contact row

    let contact_pos = moving_side.len() - 1;
    let mut nodes = moving_side;
    let mut slot = state.col_slot(j);
    while slot != NONE {
        nodes.push(slot);
        slot = state.parent[slot];
    }

    debug_assert!(contact_pos % 2 == 1, "contact edge must be even-numbered");
    debug_assert_eq!(nodes[0], state.moving_root().expect("active moving tree"));
    debug_assert_eq!(*nodes.last().unwrap(), state.stop_p_slot());
    MainPath { nodes, contact_pos }
}

/// Transplants the branch cut free by the breaking edge into the other tree.
///
/// `break_edge` is the 1-based, odd path index of the breaking edge, whose
/// stored force must already be zero (the caller readjusts forces first);
/// `lambda` is the force the new contact edge carries. The piece between the
/// breaking edge and the contact pair is re-rooted (its parent chain along
/// the path reverses, each edge keeping its force) and re-hung across the
/// contact pair, then flips membership wholesale.
pub fn apply_capture(state: &mut ForestState, path: &MainPath, break_edge: usize, lambda: i64) {
    let nodes = &path.nodes;
    let cpos = path.contact_pos;
    debug_assert!(break_edge % 2 == 1);
    debug_assert_ne!(break_edge, cpos + 1, "contact edge cannot break");
    debug_assert_eq!(
        state.edge_force[path.force_slot(break_edge).unwrap()],
        0,
        "breaking edge must carry zero force"
    );

    // Edge forces by path position, captured before any rewiring (the
    // force-on-child storage is reshuffled by the reversal).
    let force_at = |state: &ForestState, t: usize| -> i64 {
        path.force_slot(t).map_or(lambda, |slot| state.edge_force[slot])
    };

    if break_edge < cpos + 1 {
        // Breaking edge on the moving side: the piece from the breaking
        // edge's child down to the contact row defects to the fixed tree.
        let s = break_edge;
        let forces: Vec<i64> = (s..=cpos).map(|t| force_at(state, t + 1)).collect();
        state.detach(nodes[s]);
        for t in s..cpos {
            state.detach(nodes[t + 1]);
            state.attach(nodes[t], nodes[t + 1], forces[t - s]);
        }
        state.attach(nodes[cpos], nodes[cpos + 1], lambda);
        state.set_membership_subtree(nodes[cpos], Membership::Fixed);
    } else {
        // Breaking edge on the fixed side: the piece from the contact column
        // up to the breaking edge's child joins the moving tree.
        let s = break_edge;
        let forces: Vec<i64> = (cpos + 2..s).map(|t| force_at(state, t)).collect();
        state.detach(nodes[s - 1]);
        for t in (cpos + 2..s).rev() {
            state.detach(nodes[t - 1]);
            state.attach(nodes[t], nodes[t - 1], forces[t - cpos - 2]);
        }
        state.attach(nodes[cpos + 1], nodes[cpos], lambda);
        state.set_membership_subtree(nodes[cpos + 1], Membership::Moving);
    }
}

// ---------------------------------------------------------------------------
// Property checks
// ---------------------------------------------------------------------------

/// One violated structural or mechanical invariant, with a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PropertyViolation {
    /// A tree edge joins two male or two female nodes.
    EdgeGenderClash { parent: NodeId, child: NodeId },
    /// parent / first_child / next_sibling arrays disagree.
    LinkageBroken { slot: NodeId, detail: String },
    /// A node is in a tree but not reachable from that tree's root, or a
    /// root is missing/duplicated.
    ForestShapeBroken { detail: String },
    /// An active two-tree state is missing a row in the moving tree or a
    /// column in the fixed tree.
    TreeWithoutRods { detail: String },
    /// A vertical slack went negative (a row fell below a column it is not
    /// resting on).
    NegativeSlack { i: usize, j: usize, gamma: i64 },
    /// A row–column tree edge has nonzero slack (contact without touching).
    SlackOnContact { i: usize, j: usize, gamma: i64 },
    /// A contact force went negative (an edge would have to pull).
    NegativeForce { parent: NodeId, child: NodeId, force: i64 },
    /// Forces incident to a rod do not add up to its weight.
    ForceImbalance { node: NodeId, sum: i128, expected: i64 },
}

impl std::fmt::Display for PropertyViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PropertyViolation::EdgeGenderClash { parent, child } => {
                write!(f, "edge {parent}-{child} joins nodes of the same gender")
            }
            PropertyViolation::LinkageBroken { slot, detail } => {
                write!(f, "triple linkage broken at {slot}: {detail}")
            }
            PropertyViolation::ForestShapeBroken { detail } => {
                write!(f, "forest shape broken: {detail}")
            }
            PropertyViolation::TreeWithoutRods { detail } => {
                write!(f, "tree without rods: {detail}")
            }
            PropertyViolation::NegativeSlack { i, j, gamma } => {
                write!(f, "slack of row {} over column {} is {gamma} < 0", i + 1, j + 1)
            }
            PropertyViolation::SlackOnContact { i, j, gamma } => {
                write!(f, "tree edge A{}-B{} has slack {gamma} != 0", i + 1, j + 1)
            }
            PropertyViolation::NegativeForce { parent, child, force } => {
                write!(f, "edge {parent}-{child} carries force {force} < 0")
            }
            PropertyViolation::ForceImbalance { node, sum, expected } => {
                write!(f, "forces at {node} sum to {sum}, expected {expected}")
            }
        }
    }
}

/// Outcome of [`check_properties`]: all violated invariants with witnesses
/// (empty means the state is mechanically sound).
#[derive(Debug, Clone, Default)]
pub struct PropertyReport {
    pub violations: Vec<PropertyViolation>,
}

impl PropertyReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl std::fmt::Display for PropertyReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_ok() {
            return write!(f, "all properties hold");
        }
        for (idx, v) in self.violations.iter().enumerate() {
            if idx > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Verifies every invariant the mechanics guarantee between cycles:
/// male/female edge alternation, consistent triple linkage, a forest of at
/// most two populated trees, nonnegative slacks everywhere, zero slack on
/// contacts, nonnegative forces, and per-rod force balance (each rod's
/// incident forces sum to its weight). Outside nodes are checked for local
/// consistency but excluded from the tree-shape counts.
pub fn check_properties(state: &ForestState, inst: &Instance) -> PropertyReport {
    let mut violations = Vec::new();
    let slots = state.parent.len();

    // Triple-linkage consistency and edge genders.
    let mut seen_as_child = vec![false; slots];
    for parent in 0..slots {
        let mut child = state.first_child[parent];
        while child != NONE {
            if state.parent[child] != parent {
                violations.push(PropertyViolation::LinkageBroken {
                    slot: state.node_id(child),
                    detail: format!(
                        "listed under {} but parent pointer disagrees",
                        state.node_name(parent)
                    ),
                });
            }
            if seen_as_child[child] {
                violations.push(PropertyViolation::LinkageBroken {
                    slot: state.node_id(child),
                    detail: "appears in two child lists".to_string(),
                });
            }
            seen_as_child[child] = true;
            if state.is_male(child) == state.is_male(parent) {
                violations.push(PropertyViolation::EdgeGenderClash {
                    parent: state.node_id(parent),
                    child: state.node_id(child),
                });
            }
            child = state.next_sibling[child];
        }
    }
    for (slot, &seen) in seen_as_child.iter().enumerate() {
        if state.parent[slot] != NONE && !seen {
            violations.push(PropertyViolation::LinkageBroken {
                slot: state.node_id(slot),
                detail: "has a parent but is absent from its child list".to_string(),
            });
        }
    }

    // Forest shape: the fixed tree is rooted at P; at most one moving stop
    // is active; every in-tree node is reachable from its root.
    let p = state.stop_p_slot();
    if state.membership[p] != Membership::Fixed || state.parent[p] != NONE {
        violations.push(PropertyViolation::ForestShapeBroken {
            detail: "stop P must be the fixed root".to_string(),
        });
    }
    let moving_roots: Vec<usize> = (0..state.num_stops)
        .map(|k| state.stop_q_slot(k))
        .filter(|&s| state.membership[s] == Membership::Moving)
        .collect();
    if moving_roots.len() > 1 {
        violations.push(PropertyViolation::ForestShapeBroken {
            detail: format!("{} moving stops active at once", moving_roots.len()),
        });
    }
    let mut reachable = vec![false; slots];
    for slot in state.subtree_slots(p) {
        reachable[slot] = true;
    }
    for &q in &moving_roots {
        for slot in state.subtree_slots(q) {
            reachable[slot] = true;
        }
    }
    for (slot, &reached) in reachable.iter().enumerate() {
        let membership = state.membership[slot];
        if membership != Membership::Outside && !reached {
            violations.push(PropertyViolation::ForestShapeBroken {
                detail: format!(
                    "{} is in a tree but unreachable from a root",
                    state.node_name(slot)
                ),
            });
        }
        if membership != Membership::Outside && state.parent[slot] != NONE {
            let pm = state.membership[state.parent[slot]];
            if pm != membership {
                violations.push(PropertyViolation::ForestShapeBroken {
                    detail: format!(
                        "{} and its parent are in different trees",
                        state.node_name(slot)
                    ),
                });
            }
        }
    }

    // Two-tree nontriviality: while a moving stop is active, the moving tree
    // holds at least one row and the fixed tree at least one column.
    if let Some(&q) = moving_roots.first() {
        let has_row = (0..state.m).any(|i| state.membership[i] == Membership::Moving);
        if !has_row && state.first_child[q] != NONE {
            violations.push(PropertyViolation::TreeWithoutRods {
                detail: "moving tree has no row".to_string(),
            });
        }
        let has_col =
            (0..state.n).any(|j| state.membership[state.col_slot(j)] == Membership::Fixed);
        if !has_col {
            violations.push(PropertyViolation::TreeWithoutRods {
                detail: "fixed tree has no column".to_string(),
            });
        }
    }

    // Slacks: nonnegative everywhere, zero on row-column contacts.
    for i in 0..state.m {
        for j in 0..state.n {
            let g = state.gamma(inst, i, j);
            if g < 0 {
                violations.push(PropertyViolation::NegativeSlack { i, j, gamma: g });
            }
        }
    }
    for (i, j, _) in state.row_column_edges() {
        let g = state.gamma(inst, i, j);
        if g != 0 {
            violations.push(PropertyViolation::SlackOnContact { i, j, gamma: g });
        }
    }

    // Forces: nonnegative on every edge; incident forces at each rod sum to
    // its weight (supplies for rows, demands for columns).
    for slot in 0..slots {
        if state.parent[slot] != NONE && state.edge_force[slot] < 0 {
            violations.push(PropertyViolation::NegativeForce {
                parent: state.node_id(state.parent[slot]),
                child: state.node_id(slot),
                force: state.edge_force[slot],
            });
        }
    }
    for slot in 0..state.m + state.n {
        let mut sum = 0i128;
        if state.parent[slot] != NONE {
            sum += state.edge_force[slot] as i128;
        }
        let mut child = state.first_child[slot];
        while child != NONE {
            sum += state.edge_force[child] as i128;
            child = state.next_sibling[child];
        }
        let expected = if slot < state.m { inst.a[slot] } else { inst.b[slot - state.m] };
        if sum != expected as i128 {
            violations.push(PropertyViolation::ForceImbalance {
                node: state.node_id(slot),
                sum,
                expected,
            });
        }
    }

    PropertyReport { violations }
}

// ---------------------------------------------------------------------------
// Signatures
// ---------------------------------------------------------------------------

/// Level profile of the tree rooted at `root`: breadth-first level sizes,
/// root excluded. An empty tree (childless root) yields the empty signature,
/// which orders after every nonempty one.
pub fn extract_signature(state: &ForestState, root: NodeId) -> Signature {
    let root = state.slot_of(root);
    let mut g = Vec::new();
    let mut level = vec![root];
    loop {
        let mut next = Vec::new();
        for &slot in &level {
            let mut child = state.first_child[slot];
            while child != NONE {
                next.push(child);
                child = state.next_sibling[child];
            }
        }
        if next.is_empty() {
            break;
        }
        g.push(next.len() as u32);
        level = next;
    }
    Signature { g }
}
