//! Problem representation, validation, file I/O, and instance generators.
//!
//! An [`Instance`] is a balanced transportation problem: `m` supplies, `n`
//! demands, and an `m×n` integer profit matrix to be maximized. All weights
//! and profits are 64-bit signed integers with exact comparison; real-valued
//! input is a documented non-goal — callers pre-scale. Exact ties are central
//! to the degenerate regime, and floating tolerance would change semantics.

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// A balanced transportation problem.
///
/// Row `i` offers supply `a[i]`, column `j` requires demand `b[j]`, and
/// shipping one unit from `i` to `j` earns profit `c[i·n + j]` (maximization
/// convention; profits may be negative). A valid instance satisfies
/// `Σa = Σb`, `a ≥ 0`, `b ≥ 0` — see [`validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    /// Number of rows (supplies).
    pub m: usize,
    /// Number of columns (demands).
    pub n: usize,
    /// Row supplies, length `m`.
    pub a: Vec<i64>,
    /// Column demands, length `n`.
    pub b: Vec<i64>,
    /// Profit matrix in row-major order: entry `(i, j)` is `c[i * n + j]`.
    pub c: Vec<i64>,
}

impl Instance {
    /// Builds an instance from per-row profit vectors. `m` and `n` are taken
    /// from `a.len()` and `b.len()`; ragged or mis-sized rows surface as a
    /// dimension violation in [`validate`].
    pub fn from_rows(a: Vec<i64>, b: Vec<i64>, rows: Vec<Vec<i64>>) -> Self {
        let m = a.len();
        let n = b.len();
        let c = rows.into_iter().flatten().collect();
        Instance { m, n, a, b, c }
    }

    /// Profit for shipping one unit from row `i` to column `j`.
    #[inline]
    pub fn c_at(&self, i: usize, j: usize) -> i64 {
        self.c[i * self.n + j]
    }

    /// Largest profit entry. The solver's default initialization constant is
    /// `max_c + 1` (it must sit strictly above every profit).
    pub fn max_c(&self) -> i64 {
        self.c.iter().copied().max().expect("instance has at least one cell")
    }

    /// Total supply `Σa`, widened so that huge instances cannot wrap.
    pub fn total_supply(&self) -> i128 {
        self.a.iter().map(|&x| x as i128).sum()
    }

    /// Total demand `Σb`, widened so that huge instances cannot wrap.
    pub fn total_demand(&self) -> i128 {
        self.b.iter().map(|&x| x as i128).sum()
    }
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

/// One violated instance invariant, with a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValidationViolation {
    /// `m` or `n` is zero.
    EmptyDimension,
    /// `a`, `b`, or `c` has the wrong length for the declared `m×n`.
    DimensionMismatch { what: &'static str, expected: usize, found: usize },
    /// `Σa ≠ Σb`.
    BalanceViolated { sum_a: i128, sum_b: i128 },
    /// A supply is negative.
    NegativeSupply { i: usize, value: i64 },
    /// A demand is negative.
    NegativeDemand { j: usize, value: i64 },
}

impl std::fmt::Display for ValidationViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ValidationViolation::EmptyDimension => write!(f, "m and n must be positive"),
            ValidationViolation::DimensionMismatch { what, expected, found } => {
                write!(f, "{what} has length {found}, expected {expected}")
            }
            ValidationViolation::BalanceViolated { sum_a, sum_b } => {
                write!(f, "total supply {sum_a} does not equal total demand {sum_b}")
            }
            ValidationViolation::NegativeSupply { i, value } => {
                write!(f, "supply a[{i}] = {value} is negative")
            }
            ValidationViolation::NegativeDemand { j, value } => {
                write!(f, "demand b[{j}] = {value} is negative")
            }
        }
    }
}

/// Outcome of [`validate`]: the full list of violated invariants (empty means
/// the instance is well-formed).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<ValidationViolation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl std::fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_ok() {
            return write!(f, "valid");
        }
        let mut first = true;
        for v in &self.violations {
            if !first {
                write!(f, "; ")?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        Ok(())
    }
}

/// Checks balance, nonnegativity, and dimension consistency. Pure; all
/// failures are reported together rather than short-circuiting. Zero supplies
/// and demands are permitted, and profits carry no sign condition.
pub fn validate(inst: &Instance) -> ValidationReport {
    let mut violations = Vec::new();
    if inst.m == 0 || inst.n == 0 {
        violations.push(ValidationViolation::EmptyDimension);
    }
    if inst.a.len() != inst.m {
        violations.push(ValidationViolation::DimensionMismatch {
            what: "a",
            expected: inst.m,
            found: inst.a.len(),
        });
    }
    if inst.b.len() != inst.n {
        violations.push(ValidationViolation::DimensionMismatch {
            what: "b",
            expected: inst.n,
            found: inst.b.len(),
        });
    }
    if inst.c.len() != inst.m * inst.n {
        violations.push(ValidationViolation::DimensionMismatch {
            what: "c",
            expected: inst.m * inst.n,
            found: inst.c.len(),
        });
    }
    for (i, &v) in inst.a.iter().enumerate() {
        if v < 0 {
            violations.push(ValidationViolation::NegativeSupply { i, value: v });
        }
    }
    for (j, &v) in inst.b.iter().enumerate() {
        if v < 0 {
            violations.push(ValidationViolation::NegativeDemand { j, value: v });
        }
    }
    // Sums are widened: the worst-case family reaches Σa ≈ 1.2e19 at its size
    // cap, which overflows i64 even though every individual weight fits.
    let (sum_a, sum_b) = (inst.total_supply(), inst.total_demand());
    if sum_a != sum_b {
        violations.push(ValidationViolation::BalanceViolated { sum_a, sum_b });
    }
    ValidationReport { violations }
}

// ---------------------------------------------------------------------------
// Generators
// ---------------------------------------------------------------------------

/// Errors from instance generators and generator configuration.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerateError {
    #[error("invalid generator configuration: {0}")]
    InvalidConfig(String),
    #[error("worst-case family needs n >= 2 (n = 1 leaves the recurrences under-determined)")]
    TooSmall,
    #[error("worst-case family overflows 64-bit integers at n = {n} (cap is n <= {cap})")]
    Overflow { n: usize, cap: usize },
}

/// The worst-case generator's documented size cap: weights follow
/// `a_n = Fib(2n)`, and `Fib(94)` is the first even-indexed Fibonacci number
/// past `i64::MAX`, so n = 47 would overflow `a_n`.
pub const WORST_CASE_MAX_N: usize = 46;

/// Configuration for [`gen_random`]: uniform integer supplies, demands, and
/// profits, rebalanced to exact equality.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorConfig {
    pub m: usize,
    pub n: usize,
    /// Supplies are drawn uniformly from `[1, a_max]`.
    pub a_max: i64,
    /// Demands are drawn uniformly from `[1, b_max]`; `m·a_max = n·b_max` is
    /// required so the two sums agree in expectation and rebalancing stays
    /// small.
    pub b_max: i64,
    /// Profits are drawn uniformly from `[1, c_max]`.
    pub c_max: i64,
    /// Degeneracy ratio `c_max / (m·n)`. Values at or above 1 give the
    /// non-degenerate regime (each profit value appears about once); values
    /// well below 1 give massive ties and the degenerate regime.
    pub c_star: f64,
    pub seed: u64,
}

impl GeneratorConfig {
    /// Validated constructor. Requires `m, n ≥ 1`, `a_max, b_max, c_max ≥ 1`,
    /// and the sampling-interval constraint `m·a_max = n·b_max`.
    pub fn new(
        m: usize,
        n: usize,
        a_max: i64,
        b_max: i64,
        c_max: i64,
        seed: u64,
    ) -> Result<Self, GenerateError> {
        if m == 0 || n == 0 {
            return Err(GenerateError::InvalidConfig("m and n must be positive".into()));
        }
        if a_max < 1 || b_max < 1 {
            return Err(GenerateError::InvalidConfig("a_max and b_max must be >= 1".into()));
        }
        if c_max < 1 {
            return Err(GenerateError::InvalidConfig("c_max must be >= 1".into()));
        }
        if (m as i128) * (a_max as i128) != (n as i128) * (b_max as i128) {
            return Err(GenerateError::InvalidConfig(format!(
                "m*a_max must equal n*b_max (got {m}*{a_max} vs {n}*{b_max})"
            )));
        }
        let c_star = c_max as f64 / (m as f64 * n as f64);
        Ok(GeneratorConfig { m, n, a_max, b_max, c_max, c_star, seed })
    }

    /// The square benchmark model: `m = n`, `a_max = b_max = max(160000/n, 2)`,
    /// and `c_max = n²` in the non-degenerate regime (degeneracy ratio exactly
    /// 1) or `c_max = 20` in the degenerate regime.
    pub fn bench_model(n: usize, degenerate: bool, seed: u64) -> Result<Self, GenerateError> {
        if n == 0 {
            return Err(GenerateError::InvalidConfig("n must be positive".into()));
        }
        let a_max = (160_000 / n as i64).max(2);
        let c_max = if degenerate { 20 } else { (n * n) as i64 };
        GeneratorConfig::new(n, n, a_max, a_max, c_max, seed)
    }
}

/// Draws a random instance: `a_i` uniform in `[1, a_max]`, `b_j` uniform in
/// `[1, b_max]`, then the deficient vector is rebalanced (+1 round-robin from
/// its first entry) until `Σa = Σb` holds exactly; `c_ij` uniform in
/// `[1, c_max]`. Deterministic given the seed: draws happen in the fixed
/// order a, b, c from a ChaCha8 stream.
///
/// Round-robin rebalancing preserves the distribution shape and always
/// terminates (entries only grow, by at most ⌈Δ/len⌉ each).
pub fn gen_random(cfg: &GeneratorConfig) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut a: Vec<i64> = (0..cfg.m).map(|_| rng.random_range(1..=cfg.a_max)).collect();
    let mut b: Vec<i64> = (0..cfg.n).map(|_| rng.random_range(1..=cfg.b_max)).collect();
    let delta =
        a.iter().map(|&x| x as i128).sum::<i128>() - b.iter().map(|&x| x as i128).sum::<i128>();
    if delta > 0 {
        spread_increments(&mut b, delta as u128);
    } else if delta < 0 {
        spread_increments(&mut a, (-delta) as u128);
    }
    let c = (0..cfg.m * cfg.n).map(|_| rng.random_range(1..=cfg.c_max)).collect();
    let inst = Instance { m: cfg.m, n: cfg.n, a, b, c };
    debug_assert!(validate(&inst).is_ok());
    inst
}

/// Adds `count` unit increments to `values`, cycling from index 0.
fn spread_increments(values: &mut [i64], count: u128) {
    let len = values.len() as u128;
    let per_entry = (count / len) as i64;
    let remainder = (count % len) as usize;
    for (idx, v) in values.iter_mut().enumerate() {
        *v += per_entry + i64::from(idx < remainder);
    }
}

/// Builds the exponential worst-case family: interleaved-Fibonacci weights
/// (`a = 1, 3, 8, 21, …`, `b = 2, 5, 13, …`, last demand repeated so the
/// instance balances) and steeply decreasing profits
/// `(n+1−i)(n+1−j) − n²·(2^i, 2^j, or their sum)` chosen so the solver is
/// forced through `3·2^(n−1) − 2` cycles. All values are computed in i128 and
/// rejected if any fails to fit i64 (see [`WORST_CASE_MAX_N`]).
pub fn gen_worst_case(n: usize) -> Result<Instance, GenerateError> {
    if n < 2 {
        return Err(GenerateError::TooSmall);
    }
    let overflow = |_| GenerateError::Overflow { n, cap: WORST_CASE_MAX_N };

    let mut a_wide = vec![0i128; n];
    let mut b_wide = vec![0i128; n];
    a_wide[0] = 1;
    b_wide[0] = 2;
    for i in 1..n - 1 {
        a_wide[i] = a_wide[i - 1] + b_wide[i - 1];
        b_wide[i] = b_wide[i - 1] + a_wide[i];
    }
    a_wide[n - 1] = a_wide[n - 2] + b_wide[n - 2];
    b_wide[n - 1] = b_wide[n - 2];

    let a: Vec<i64> =
        a_wide.iter().map(|&x| i64::try_from(x).map_err(overflow)).collect::<Result<_, _>>()?;
    let b: Vec<i64> =
        b_wide.iter().map(|&x| i64::try_from(x).map_err(overflow)).collect::<Result<_, _>>()?;

    let n_i = n as i128;
    let mut c = Vec::with_capacity(n * n);
    for i in 1..=n_i {
        for j in 1..=n_i {
            let base = (n_i + 1 - i) * (n_i + 1 - j);
            let spike = match i.cmp(&j) {
                std::cmp::Ordering::Equal => (1i128 << i) + (1i128 << j),
                std::cmp::Ordering::Less => 1i128 << j,
                std::cmp::Ordering::Greater => 1i128 << i,
            };
            let value = base - n_i * n_i * spike;
            c.push(i64::try_from(value).map_err(overflow)?);
        }
    }

    let inst = Instance { m: n, n, a, b, c };
    debug_assert!(validate(&inst).is_ok());
    Ok(inst)
}

/// Builds a random assignment instance: `m = n`, unit supplies and demands,
/// profits uniform in `[1, c_max]`. Any optimal solution is a 0/1 permutation
/// matrix.
pub fn gen_assignment(n: usize, c_max: i64, seed: u64) -> Instance {
    assert!(n >= 1, "assignment instance needs n >= 1");
    assert!(c_max >= 1, "assignment instance needs c_max >= 1");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let c = (0..n * n).map(|_| rng.random_range(1..=c_max)).collect();
    let inst = Instance { m: n, n, a: vec![1; n], b: vec![1; n], c };
    debug_assert!(validate(&inst).is_ok());
    inst
}

// ---------------------------------------------------------------------------
// Text format
// ---------------------------------------------------------------------------

/// Errors from [`parse_instance`], each a distinct diagnostic with the
/// 1-based source line where applicable.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("missing header: expected a line `m n`")]
    MissingHeader,
    #[error("line {line}: expected {expected} for {what}, found {found}")]
    WrongCount { line: usize, what: &'static str, expected: usize, found: usize },
    #[error("line {line}: `{token}` is not a 64-bit integer")]
    BadToken { line: usize, token: String },
    #[error("line {line}: {what} is missing")]
    MissingLine { line: usize, what: &'static str },
    #[error("line {line}: unexpected trailing content")]
    TrailingContent { line: usize },
    #[error("header declares non-positive dimensions {m}x{n}")]
    BadDimensions { m: i64, n: i64 },
    #[error("instance is invalid: {0}")]
    Validation(ValidationReport),
}

/// Parses the plain-text instance format:
///
/// ```text
/// line 1:        m n
/// line 2:        m values of a
/// line 3:        n values of b
/// lines 4..3+m:  rows of c (n values each)
/// ```
///
/// Tokens are whitespace-separated integers. Blank lines and lines whose
/// first non-whitespace character is `#` are ignored. The parsed instance
/// must pass [`validate`] (balance included).
pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    // Content lines with their original 1-based numbers, comments stripped.
    let mut lines =
        text.lines().enumerate().map(|(idx, line)| (idx + 1, line)).filter(|(_, line)| {
            let t = line.trim_start();
            !t.is_empty() && !t.starts_with('#')
        });

    let (header_no, header) = lines.next().ok_or(ParseError::MissingHeader)?;
    let dims = parse_int_line(header_no, header)?;
    if dims.len() != 2 {
        return Err(ParseError::WrongCount {
            line: header_no,
            what: "header `m n`",
            expected: 2,
            found: dims.len(),
        });
    }
    if dims[0] < 1 || dims[1] < 1 {
        return Err(ParseError::BadDimensions { m: dims[0], n: dims[1] });
    }
    let (m, n) = (dims[0] as usize, dims[1] as usize);

    let mut last_line = header_no;
    let mut expect = |what: &'static str, count: usize| -> Result<Vec<i64>, ParseError> {
        let (line_no, line) =
            lines.next().ok_or(ParseError::MissingLine { line: last_line + 1, what })?;
        last_line = line_no;
        let values = parse_int_line(line_no, line)?;
        if values.len() != count {
            return Err(ParseError::WrongCount {
                line: line_no,
                what,
                expected: count,
                found: values.len(),
            });
        }
        Ok(values)
    };

    let a = expect("supply vector a", m)?;
    let b = expect("demand vector b", n)?;
    let mut c = Vec::with_capacity(m * n);
    for _ in 0..m {
        c.extend(expect("profit row", n)?);
    }
    if let Some((line_no, _)) = lines.next() {
        return Err(ParseError::TrailingContent { line: line_no });
    }

    let inst = Instance { m, n, a, b, c };
    let report = validate(&inst);
    if !report.is_ok() {
        return Err(ParseError::Validation(report));
    }
    Ok(inst)
}

fn parse_int_line(line_no: usize, line: &str) -> Result<Vec<i64>, ParseError> {
    line.split_whitespace()
        .map(|token| {
            token
                .parse::<i64>()
                .map_err(|_| ParseError::BadToken { line: line_no, token: token.to_string() })
        })
        .collect()
}

/// Renders an instance in the text format accepted by [`parse_instance`].
/// Round-trip identity: `parse_instance(&serialize_instance(x)) == Ok(x)` for
/// every valid `x`.
pub fn serialize_instance(inst: &Instance) -> String {
    let join = |values: &[i64]| values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ");
    let mut out = String::new();
    out.push_str(&format!("{} {}\n", inst.m, inst.n));
    out.push_str(&join(&inst.a));
    out.push('\n');
    out.push_str(&join(&inst.b));
    out.push('\n');
    for i in 0..inst.m {
        out.push_str(&join(&inst.c[i * inst.n..(i + 1) * inst.n]));
        out.push('\n');
    }
    out
}
