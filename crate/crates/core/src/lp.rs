//! Dense two-phase simplex over free real variables.
//!
//! Problems have the shape
//!
//! ```text
//! minimize    c·x
//! subject to  ℓᵢ ≤ aᵢ·x ≤ uᵢ     (slabs; either bound may be infinite)
//!             eⱼ·x = vⱼ          (equalities)
//! ```
//!
//! Internally every free variable is split as `x = x⁺ − x⁻`, each finite slab
//! bound becomes one row with its own slack, and phase one minimizes the sum of
//! artificial variables. Pricing is Dantzig's rule (most negative reduced cost)
//! with the largest pivot breaking ratio ties. After a run of degenerate pivots
//! the solver falls back to Bland's rule (smallest eligible index for both the
//! entering and the leaving variable) until the objective moves again, which
//! keeps it from cycling on the highly degenerate polar problems.

use thiserror::Error;

pub const MAX_VARIABLES: usize = 4096;
pub const MAX_SLABS: usize = 16384;
pub const ITERATION_CAP: usize = 1_000_000;

const COST_EPS: f64 = 1e-9;
const PIVOT_EPS: f64 = 1e-11;
const FEASIBILITY_EPS: f64 = 1e-9;
const DEGENERATE_RUN: usize = 50;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LpError {
    #[error("problem has no variables")]
    NoVariables,
    #[error("{0} variables exceeds the limit of {MAX_VARIABLES}")]
    TooManyVariables(usize),
    #[error("{0} constraints exceeds the limit of {MAX_SLABS}")]
    TooManySlabs(usize),
    #[error("constraint {index} has {got} coefficients, expected {expected}")]
    LengthMismatch { index: usize, expected: usize, got: usize },
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),
    #[error("slab {index} has invalid bounds [{lower}, {upper}]")]
    InvalidBounds { index: usize, lower: f64, upper: f64 },
    #[error("simplex iteration cap of {ITERATION_CAP} exceeded")]
    CapExceeded,
}

/// `lower ≤ coeffs·x ≤ upper`.
#[derive(Debug, Clone, PartialEq)]
pub struct Slab {
    pub coeffs: Vec<f64>,
    pub lower: f64,
    pub upper: f64,
}

impl Slab {
    pub fn new(coeffs: Vec<f64>, lower: f64, upper: f64) -> Self {
        Slab { coeffs, lower, upper }
    }

    pub fn at_least(coeffs: Vec<f64>, lower: f64) -> Self {
        Slab::new(coeffs, lower, f64::INFINITY)
    }

    pub fn at_most(coeffs: Vec<f64>, upper: f64) -> Self {
        Slab::new(coeffs, f64::NEG_INFINITY, upper)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Equality {
    pub coeffs: Vec<f64>,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpProblem {
    pub objective: Vec<f64>,
    pub slabs: Vec<Slab>,
    pub equalities: Vec<Equality>,
    /// Variables constrained to be `≥ 0` without spending a row on it. Empty
    /// means every variable is free.
    pub nonnegative: Vec<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Unbounded,
    Infeasible,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal { value: f64, point: Vec<f64> },
    /// `point` is feasible and `point + t·ray` stays feasible for all `t ≥ 0`
    /// while the objective decreases without bound.
    Unbounded { point: Vec<f64>, ray: Vec<f64> },
    Infeasible,
}

impl LpOutcome {
    pub fn status(&self) -> LpStatus {
        match self {
            LpOutcome::Optimal { .. } => LpStatus::Optimal,
            LpOutcome::Unbounded { .. } => LpStatus::Unbounded,
            LpOutcome::Infeasible => LpStatus::Infeasible,
        }
    }
}

impl LpProblem {
    pub fn new(objective: Vec<f64>) -> Self {
        LpProblem {
            objective,
            slabs: Vec::new(),
            equalities: Vec::new(),
            nonnegative: Vec::new(),
        }
    }

    /// Marks every variable as nonnegative.
    pub fn all_nonnegative(mut self) -> Self {
        self.nonnegative = vec![true; self.num_vars()];
        self
    }

    fn is_nonnegative(&self, k: usize) -> bool {
        self.nonnegative.get(k).copied().unwrap_or(false)
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn slab(mut self, coeffs: Vec<f64>, lower: f64, upper: f64) -> Self {
        self.slabs.push(Slab::new(coeffs, lower, upper));
        self
    }

    pub fn equality(mut self, coeffs: Vec<f64>, value: f64) -> Self {
        self.equalities.push(Equality { coeffs, value });
        self
    }

    pub fn validate(&self) -> Result<(), LpError> {
        let n = self.num_vars();
        if n == 0 {
            return Err(LpError::NoVariables);
        }
        if n > MAX_VARIABLES {
            return Err(LpError::TooManyVariables(n));
        }
        let rows = self.slabs.len() + self.equalities.len();
        if rows > MAX_SLABS {
            return Err(LpError::TooManySlabs(rows));
        }
        if self.objective.iter().any(|x| !x.is_finite()) {
            return Err(LpError::NonFinite("objective"));
        }
        if !self.nonnegative.is_empty() && self.nonnegative.len() != n {
            return Err(LpError::LengthMismatch {
                index: rows,
                expected: n,
                got: self.nonnegative.len(),
            });
        }
        for (index, s) in self.slabs.iter().enumerate() {
            if s.coeffs.len() != n {
                return Err(LpError::LengthMismatch {
                    index,
                    expected: n,
                    got: s.coeffs.len(),
                });
            }
            if s.coeffs.iter().any(|x| !x.is_finite()) {
                return Err(LpError::NonFinite("slab coefficients"));
            }
            if s.lower.is_nan() || s.upper.is_nan() {
                return Err(LpError::NonFinite("slab bounds"));
            }
            if s.lower > s.upper || s.lower == f64::INFINITY || s.upper == f64::NEG_INFINITY {
                return Err(LpError::InvalidBounds {
                    index,
                    lower: s.lower,
                    upper: s.upper,
                });
            }
        }
        for (i, e) in self.equalities.iter().enumerate() {
            if e.coeffs.len() != n {
                return Err(LpError::LengthMismatch {
                    index: self.slabs.len() + i,
                    expected: n,
                    got: e.coeffs.len(),
                });
            }
            if e.coeffs.iter().any(|x| !x.is_finite()) || !e.value.is_finite() {
                return Err(LpError::NonFinite("equality"));
            }
        }
        Ok(())
    }

    /// Largest violation of any constraint at `x` (zero when feasible).
    pub fn max_violation(&self, x: &[f64]) -> f64 {
        let mut worst: f64 = 0.0;
        for (k, &xk) in x.iter().enumerate() {
            if self.is_nonnegative(k) {
                worst = worst.max(-xk);
            }
        }
        for s in &self.slabs {
            let v = dot(&s.coeffs, x);
            worst = worst.max(s.lower - v).max(v - s.upper);
        }
        for e in &self.equalities {
            worst = worst.max((dot(&e.coeffs, x) - e.value).abs());
        }
        worst
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

struct Tableau {
    width: usize,
    rows: Vec<Vec<f64>>,
    rhs: Vec<f64>,
    cost: Vec<f64>,
    neg_objective: f64,
    basis: Vec<usize>,
    iterations: usize,
}

enum SimplexEnd {
    Optimal,
    Unbounded(usize),
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c];
        {
            let row = &mut self.rows[r];
            for x in row.iter_mut() {
                *x /= p;
            }
            row[c] = 1.0;
        }
        self.rhs[r] /= p;
        let pivot_row = self.rows[r].clone();
        let pivot_rhs = self.rhs[r];
        for i in 0..self.rows.len() {
            if i == r {
                continue;
            }
            let factor = self.rows[i][c];
            if factor == 0.0 {
                continue;
            }
            for (x, &y) in self.rows[i].iter_mut().zip(&pivot_row) {
                *x -= factor * y;
            }
            self.rows[i][c] = 0.0;
            self.rhs[i] -= factor * pivot_rhs;
        }
        let factor = self.cost[c];
        if factor != 0.0 {
            for (x, &y) in self.cost.iter_mut().zip(&pivot_row) {
                *x -= factor * y;
            }
            self.cost[c] = 0.0;
            self.neg_objective -= factor * pivot_rhs;
        }
        self.basis[r] = c;
    }

    fn run(&mut self, allowed: usize) -> Result<SimplexEnd, LpError> {
        // Dantzig pricing while the objective moves; Bland's rule after a run
        // of degenerate pivots, until the objective moves again.
        let mut stalled = 0usize;
        loop {
            self.iterations += 1;
            if self.iterations > ITERATION_CAP {
                return Err(LpError::CapExceeded);
            }
            let bland = stalled >= DEGENERATE_RUN;
            let enter = if bland {
                (0..allowed).find(|&j| self.cost[j] < -COST_EPS)
            } else {
                (0..allowed)
                    .filter(|&j| self.cost[j] < -COST_EPS)
                    .min_by(|&a, &b| self.cost[a].total_cmp(&self.cost[b]))
            };
            let Some(enter) = enter else {
                return Ok(SimplexEnd::Optimal);
            };
            let mut leave: Option<(usize, f64)> = None;
            for i in 0..self.rows.len() {
                let a = self.rows[i][enter];
                if a <= PIVOT_EPS {
                    continue;
                }
                let ratio = self.rhs[i].max(0.0) / a;
                leave = match leave {
                    None => Some((i, ratio)),
                    Some((best, best_ratio)) => {
                        let slack = 1e-12 * (1.0 + best_ratio.abs());
                        let tie_wins = if bland {
                            self.basis[i] < self.basis[best]
                        } else {
                            a > self.rows[best][enter]
                        };
                        if ratio < best_ratio - slack || (ratio <= best_ratio + slack && tie_wins) {
                            Some((i, ratio))
                        } else {
                            Some((best, best_ratio))
                        }
                    }
                };
            }
            match leave {
                None => return Ok(SimplexEnd::Unbounded(enter)),
                Some((r, ratio)) => {
                    if ratio * -self.cost[enter] > 1e-12 {
                        stalled = 0;
                    } else {
                        stalled += 1;
                    }
                    self.pivot(r, enter);
                    for b in self.rhs.iter_mut() {
                        if *b < 0.0 && *b > -1e-12 {
                            *b = 0.0;
                        }
                    }
                }
            }
        }
    }

    fn values(&self) -> Vec<f64> {
        let mut v = vec![0.0; self.width];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < self.width {
                v[b] = self.rhs[i];
            }
        }
        v
    }
}

/// Solves the problem. Deterministic for identical input.
pub fn solve_lp(problem: &LpProblem) -> Result<LpOutcome, LpError> {
    problem.validate()?;
    let n = problem.num_vars();

    // Standard-form rows over [x⁺ | x⁻ | slacks].
    struct Row {
        coeffs: Vec<f64>,
        slack_sign: f64,
        rhs: f64,
    }
    let mut rows: Vec<Row> = Vec::new();
    for s in &problem.slabs {
        if s.lower == s.upper {
            rows.push(Row {
                coeffs: s.coeffs.clone(),
                slack_sign: 0.0,
                rhs: s.lower,
            });
            continue;
        }
        if s.lower.is_finite() {
            rows.push(Row {
                coeffs: s.coeffs.clone(),
                slack_sign: -1.0,
                rhs: s.lower,
            });
        }
        if s.upper.is_finite() {
            rows.push(Row {
                coeffs: s.coeffs.clone(),
                slack_sign: 1.0,
                rhs: s.upper,
            });
        }
    }
    for e in &problem.equalities {
        rows.push(Row {
            coeffs: e.coeffs.clone(),
            slack_sign: 0.0,
            rhs: e.value,
        });
    }

    let num_slacks = rows.iter().filter(|r| r.slack_sign != 0.0).count();
    let structural = 2 * n + num_slacks;
    let m = rows.len();
    let width = structural + m;

    let mut tab = Tableau {
        width,
        rows: Vec::with_capacity(m),
        rhs: Vec::with_capacity(m),
        cost: vec![0.0; width],
        neg_objective: 0.0,
        basis: Vec::with_capacity(m),
        iterations: 0,
    };
    let mut slack_col = 2 * n;
    for (i, r) in rows.iter().enumerate() {
        let sign = if r.rhs < 0.0 { -1.0 } else { 1.0 };
        let mut row = vec![0.0; width];
        for k in 0..n {
            row[k] = sign * r.coeffs[k];
            // A nonnegative variable has no negative part.
            if !problem.is_nonnegative(k) {
                row[n + k] = -sign * r.coeffs[k];
            }
        }
        if r.slack_sign != 0.0 {
            row[slack_col] = sign * r.slack_sign;
            slack_col += 1;
        }
        row[structural + i] = 1.0;
        tab.rows.push(row);
        tab.rhs.push(sign * r.rhs);
        tab.basis.push(structural + i);
    }

    // Phase one: minimize the sum of artificials.
    let rhs_scale: f64 = 1.0 + tab.rhs.iter().map(|b| b.abs()).sum::<f64>();
    for j in 0..structural {
        tab.cost[j] = -tab.rows.iter().map(|r| r[j]).sum::<f64>();
    }
    tab.neg_objective = -tab.rhs.iter().sum::<f64>();
    if m > 0 {
        match tab.run(structural)? {
            SimplexEnd::Optimal => {}
            SimplexEnd::Unbounded(_) => unreachable!("phase one is bounded below by zero"),
        }
        if -tab.neg_objective > FEASIBILITY_EPS * rhs_scale {
            return Ok(LpOutcome::Infeasible);
        }
    }

    // Drive remaining artificials out of the basis; drop redundant rows.
    let mut i = 0;
    while i < tab.rows.len() {
        if tab.basis[i] >= structural {
            let col = (0..structural).find(|&j| tab.rows[i][j].abs() > 1e-9);
            match col {
                Some(j) => {
                    tab.pivot(i, j);
                    i += 1;
                }
                None => {
                    tab.rows.remove(i);
                    tab.rhs.remove(i);
                    tab.basis.remove(i);
                }
            }
        } else {
            i += 1;
        }
    }
    for row in tab.rows.iter_mut() {
        row.truncate(structural);
    }
    tab.width = structural;

    // Phase two.
    let mut c = vec![0.0; structural];
    for k in 0..n {
        c[k] = problem.objective[k];
        if !problem.is_nonnegative(k) {
            c[n + k] = -problem.objective[k];
        }
    }
    tab.cost = c.clone();
    tab.neg_objective = 0.0;
    for (r, &b) in tab.basis.iter().enumerate() {
        let cb = c[b];
        if cb == 0.0 {
            continue;
        }
        for j in 0..structural {
            tab.cost[j] -= cb * tab.rows[r][j];
        }
        tab.neg_objective -= cb * tab.rhs[r];
    }
    for &b in &tab.basis {
        tab.cost[b] = 0.0;
    }

    let end = tab.run(structural)?;
    let vals = tab.values();
    let point: Vec<f64> = (0..n).map(|k| vals[k] - vals[n + k]).collect();
    match end {
        SimplexEnd::Optimal => {
            let value = dot(&problem.objective, &point);
            Ok(LpOutcome::Optimal { value, point })
        }
        SimplexEnd::Unbounded(enter) => {
            let mut d = vec![0.0; structural];
            d[enter] = 1.0;
            for (r, &b) in tab.basis.iter().enumerate() {
                d[b] = -tab.rows[r][enter];
            }
            let ray = (0..n).map(|k| d[k] - d[n + k]).collect();
            Ok(LpOutcome::Unbounded { point, ray })
        }
    }
}
