//! Dense linear programming and the small mixed-integer programs built on
//! top of it.
//!
//! [`solve_lp`] is a textbook two-phase primal simplex on a full tableau
//! with Bland's rule, adequate for the few-variable programs arising from
//! polynomial optimization. The binary programs are solved by enumerating
//! assignments in order of objective value and asking an LP for
//! feasibility of each, see [`milp_min_weighted_binaries`].

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectral::{Poly, Spectrum};

/// Feasibility tolerance used throughout.
pub const DEFAULT_FEAS_TOL: f64 = 1e-7;
/// Smallest acceptable pivot magnitude.
pub const DEFAULT_PIVOT_TOL: f64 = 1e-9;
/// Largest binary vector length accepted by the enumerator.
pub const ENUMERATION_CAP: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sense {
    Maximize,
    Minimize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Le => "<=",
            Relation::Eq => "=",
            Relation::Ge => ">=",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Constraint {
    pub coeffs: Vec<f64>,
    pub relation: Relation,
    pub rhs: f64,
}

impl Constraint {
    pub fn new(coeffs: Vec<f64>, relation: Relation, rhs: f64) -> Self {
        Constraint {
            coeffs,
            relation,
            rhs,
        }
    }

    /// Amount by which `x` violates the constraint (0 when satisfied).
    pub fn violation(&self, x: &[f64]) -> f64 {
        let lhs: f64 = self.coeffs.iter().zip(x).map(|(a, b)| a * b).sum();
        match self.relation {
            Relation::Le => (lhs - self.rhs).max(0.0),
            Relation::Ge => (self.rhs - lhs).max(0.0),
            Relation::Eq => (lhs - self.rhs).abs(),
        }
    }
}

/// `optimize c·x` subject to linear constraints. Variables are free unless
/// marked non-negative.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LinearProgram {
    pub sense: Sense,
    pub objective: Vec<f64>,
    pub constraints: Vec<Constraint>,
    pub nonnegative: Vec<bool>,
}

impl LinearProgram {
    pub fn new(sense: Sense, objective: Vec<f64>) -> Self {
        let n = objective.len();
        LinearProgram {
            sense,
            objective,
            constraints: Vec::new(),
            nonnegative: vec![false; n],
        }
    }

    /// A pure feasibility problem over `num_vars` free variables.
    pub fn feasibility(num_vars: usize) -> Self {
        LinearProgram::new(Sense::Minimize, vec![0.0; num_vars])
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn add(&mut self, coeffs: Vec<f64>, relation: Relation, rhs: f64) -> &mut Self {
        assert_eq!(
            coeffs.len(),
            self.num_vars(),
            "constraint row has wrong length"
        );
        self.constraints.push(Constraint {
            coeffs,
            relation,
            rhs,
        });
        self
    }

    pub fn set_nonnegative(&mut self, var: usize) -> &mut Self {
        self.nonnegative[var] = true;
        self
    }

    /// Largest constraint violation at `x`.
    pub fn max_violation(&self, x: &[f64]) -> f64 {
        let rows = self.constraints.iter().map(|c| c.violation(x));
        let signs = x
            .iter()
            .zip(&self.nonnegative)
            .map(|(&v, &nn)| if nn { (-v).max(0.0) } else { 0.0 });
        rows.chain(signs).fold(0.0, f64::max)
    }

    pub fn objective_value(&self, x: &[f64]) -> f64 {
        self.objective.iter().zip(x).map(|(a, b)| a * b).sum()
    }
}

/// Plain-text dump, one constraint per line.
impl fmt::Display for LinearProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sense = match self.sense {
            Sense::Maximize => "maximize",
            Sense::Minimize => "minimize",
        };
        writeln!(f, "{sense} {}", fmt_row(&self.objective))?;
        writeln!(f, "subject to")?;
        for c in &self.constraints {
            writeln!(f, "  {} {} {}", fmt_row(&c.coeffs), c.relation, c.rhs)?;
        }
        let nn: Vec<String> = self
            .nonnegative
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| format!("x{i}"))
            .collect();
        if nn.is_empty() {
            writeln!(f, "all variables free")
        } else {
            writeln!(f, "nonnegative: {}", nn.join(" "))
        }
    }
}

fn fmt_row(coeffs: &[f64]) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .map(|(i, c)| format!("{c:+}*x{i}"))
        .collect();
    terms.join(" ")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LpSolution {
    pub status: LpStatus,
    /// Optimal point, or a feasible point when unbounded; empty if infeasible.
    pub x: Vec<f64>,
    pub value: f64,
    /// Improving direction certifying unboundedness.
    pub ray: Option<Vec<f64>>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LpOptions {
    pub feas_tol: f64,
    pub pivot_tol: f64,
    pub max_pivots: usize,
}

impl Default for LpOptions {
    fn default() -> Self {
        LpOptions {
            feas_tol: DEFAULT_FEAS_TOL,
            pivot_tol: DEFAULT_PIVOT_TOL,
            max_pivots: 50_000,
        }
    }
}

pub fn solve_lp(lp: &LinearProgram) -> Result<LpSolution> {
    solve_lp_with(lp, &LpOptions::default())
}

/// Column of the standard-form problem and how it maps back.
#[derive(Clone, Copy)]
enum Col {
    /// `x_j = +y`
    Plus(usize),
    /// `x_j = -y` (negative part of a free variable)
    Minus(usize),
    Slack,
    Artificial,
}

struct Tableau {
    /// `rows x (cols + 1)`, the last entry of each row is the rhs.
    a: Vec<Vec<f64>>,
    basis: Vec<usize>,
    cols: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let w = self.cols + 1;
        let piv = self.a[r][c];
        for v in self.a[r].iter_mut() {
            *v /= piv;
        }
        let prow = self.a[r].clone();
        for (i, row) in self.a.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[c];
            if f != 0.0 {
                for j in 0..w {
                    row[j] -= f * prow[j];
                }
                row[c] = 0.0;
            }
        }
        self.basis[r] = c;
    }

    /// Reduced costs of `cost` (minimization) against the current basis.
    fn reduced_costs(&self, cost: &[f64]) -> (Vec<f64>, f64) {
        let mut red = cost.to_vec();
        let mut obj = 0.0;
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = cost[b];
            if cb != 0.0 {
                for (r, &x) in red.iter_mut().zip(&self.a[i][..self.cols]) {
                    *r -= cb * x;
                }
                obj += cb * self.a[i][self.cols];
            }
        }
        (red, obj)
    }
}

enum PhaseOutcome {
    Optimal,
    Unbounded(usize),
}

/// Minimizes `cost` over the tableau with Bland's rule, restricted to
/// columns where `allowed` is true.
fn run_simplex(
    t: &mut Tableau,
    cost: &[f64],
    allowed: &[bool],
    opts: &LpOptions,
) -> Result<PhaseOutcome> {
    for _ in 0..opts.max_pivots {
        let (red, _) = t.reduced_costs(cost);
        let cost_scale = cost.iter().fold(1.0f64, |m, c| m.max(c.abs()));
        let entering = (0..t.cols).find(|&j| allowed[j] && red[j] < -1e-11 * cost_scale);
        let Some(c) = entering else {
            return Ok(PhaseOutcome::Optimal);
        };
        let mut best: Option<(f64, usize, usize)> = None;
        for (i, row) in t.a.iter().enumerate() {
            let aij = row[c];
            if aij > opts.pivot_tol {
                let ratio = row[t.cols] / aij;
                let better = match best {
                    None => true,
                    Some((br, _, bb)) => {
                        ratio < br - 1e-12 || (ratio <= br + 1e-12 && t.basis[i] < bb)
                    }
                };
                if better {
                    best = Some((ratio, i, t.basis[i]));
                }
            }
        }
        match best {
            None => {
                if t.a.iter().any(|row| row[c] > 1e-12) {
                    return Err(Error::Numerical(format!(
                        "simplex breakdown: no pivot above {:.0e} in entering column",
                        opts.pivot_tol
                    )));
                }
                return Ok(PhaseOutcome::Unbounded(c));
            }
            Some((_, r, _)) => t.pivot(r, c),
        }
    }
    Err(Error::Numerical(format!(
        "simplex exceeded {} pivots",
        opts.max_pivots
    )))
}

/// Two-phase simplex.
pub fn solve_lp_with(lp: &LinearProgram, opts: &LpOptions) -> Result<LpSolution> {
    let nv = lp.num_vars();
    if lp
        .objective
        .iter()
        .chain(
            lp.constraints
                .iter()
                .flat_map(|c| c.coeffs.iter().chain([&c.rhs])),
        )
        .any(|v| !v.is_finite())
    {
        return Err(Error::Input("LP has non-finite coefficients".into()));
    }

    let mut cols: Vec<Col> = Vec::new();
    let mut var_cols: Vec<(usize, Option<usize>)> = Vec::with_capacity(nv);
    for j in 0..nv {
        let plus = cols.len();
        cols.push(Col::Plus(j));
        let minus = if lp.nonnegative[j] {
            None
        } else {
            cols.push(Col::Minus(j));
            Some(cols.len() - 1)
        };
        var_cols.push((plus, minus));
    }
    let structural = cols.len();
    let m = lp.constraints.len();
    let slack_col: Vec<Option<usize>> = lp
        .constraints
        .iter()
        .map(|c| match c.relation {
            Relation::Eq => None,
            _ => {
                cols.push(Col::Slack);
                Some(cols.len() - 1)
            }
        })
        .collect();

    // Rows with their rhs made non-negative.
    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let mut needs_art = Vec::new();
    for (i, c) in lp.constraints.iter().enumerate() {
        let mut row = vec![0.0; cols.len()];
        for (j, &a) in c.coeffs.iter().enumerate() {
            let (p, q) = var_cols[j];
            row[p] = a;
            if let Some(q) = q {
                row[q] = -a;
            }
        }
        if let Some(s) = slack_col[i] {
            row[s] = if c.relation == Relation::Le {
                1.0
            } else {
                -1.0
            };
        }
        let mut rhs = c.rhs;
        if rhs < 0.0 {
            row.iter_mut().for_each(|v| *v = -*v);
            rhs = -rhs;
        }
        match slack_col[i] {
            Some(s) if row[s] > 0.0 => basis.push(s),
            _ => {
                basis.push(usize::MAX);
                needs_art.push(i);
            }
        }
        row.push(rhs);
        rows.push(row);
    }
    let first_art = cols.len();
    for _ in &needs_art {
        cols.push(Col::Artificial);
    }
    let total = cols.len();
    for row in rows.iter_mut() {
        let rhs = row.pop().expect("rhs");
        row.resize(total, 0.0);
        row.push(rhs);
    }
    for (k, &i) in needs_art.iter().enumerate() {
        rows[i][first_art + k] = 1.0;
        basis[i] = first_art + k;
    }
    let mut t = Tableau {
        a: rows,
        basis,
        cols: total,
    };
    let rhs_scale = lp
        .constraints
        .iter()
        .fold(1.0f64, |s, c| s.max(c.rhs.abs()));

    // Phase 1
    if !needs_art.is_empty() {
        let mut cost = vec![0.0; total];
        cost[first_art..].iter_mut().for_each(|c| *c = 1.0);
        let all = vec![true; total];
        if let PhaseOutcome::Unbounded(_) = run_simplex(&mut t, &cost, &all, opts)? {
            return Err(Error::Numerical("phase 1 reported unbounded".into()));
        }
        let (_, infeas) = t.reduced_costs(&cost);
        if infeas > opts.feas_tol * rhs_scale {
            return Ok(LpSolution {
                status: LpStatus::Infeasible,
                x: Vec::new(),
                value: f64::NAN,
                ray: None,
            });
        }
        // Drive artificials out of the basis; drop redundant rows.
        let mut i = 0;
        while i < t.a.len() {
            if t.basis[i] >= first_art {
                let c = (0..first_art)
                    .filter(|&j| t.a[i][j].abs() > opts.pivot_tol)
                    .max_by(|&a, &b| t.a[i][a].abs().total_cmp(&t.a[i][b].abs()));
                match c {
                    Some(c) => t.pivot(i, c),
                    None => {
                        t.a.remove(i);
                        t.basis.remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }
    }

    // Phase 2
    let sign = if lp.sense == Sense::Maximize {
        -1.0
    } else {
        1.0
    };
    let mut cost = vec![0.0; total];
    for (c, col) in cost.iter_mut().zip(&cols) {
        *c = match *col {
            Col::Plus(j) => sign * lp.objective[j],
            Col::Minus(j) => -sign * lp.objective[j],
            _ => 0.0,
        };
    }
    let allowed: Vec<bool> = (0..total).map(|j| j < first_art).collect();
    let outcome = run_simplex(&mut t, &cost, &allowed, opts)?;

    let mut y = vec![0.0; total];
    for (i, &b) in t.basis.iter().enumerate() {
        y[b] = t.a[i][t.cols];
    }
    let to_x = |y: &[f64]| -> Vec<f64> {
        let mut x = vec![0.0; nv];
        for (j, col) in cols[..structural].iter().enumerate() {
            match *col {
                Col::Plus(v) => x[v] += y[j],
                Col::Minus(v) => x[v] -= y[j],
                _ => {}
            }
        }
        x
    };
    let x = to_x(&y);
    let value = lp.objective_value(&x);
    match outcome {
        PhaseOutcome::Optimal => Ok(LpSolution {
            status: LpStatus::Optimal,
            x,
            value,
            ray: None,
        }),
        PhaseOutcome::Unbounded(c) => {
            let mut dir = vec![0.0; total];
            dir[c] = 1.0;
            for (i, &b) in t.basis.iter().enumerate() {
                dir[b] = -t.a[i][c];
            }
            Ok(LpSolution {
                status: LpStatus::Unbounded,
                x,
                value,
                ray: Some(to_x(&dir)),
            })
        }
    }
}

// ---------------------------------------------------------------------------
// Polynomial programs

/// Intended sign of `p(θ_j)` at one distinct eigenvalue.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Sign {
    Neg,
    Zero,
    Pos,
}

/// One [`Sign`] per distinct eigenvalue, in decreasing eigenvalue order.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SignPattern(pub Vec<Sign>);

impl SignPattern {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Total multiplicity carrying sign `s`.
    pub fn weight(&self, s: Sign, mult: &[usize]) -> usize {
        self.0
            .iter()
            .zip(mult)
            .filter(|(&x, _)| x == s)
            .map(|(_, &m)| m)
            .sum()
    }

    /// A lower bound on the number of distinct real roots of any non-zero
    /// polynomial realizing the pattern: one per `Zero` entry plus one per
    /// adjacent strict sign change.
    pub fn min_roots(&self) -> usize {
        let zeros = self.0.iter().filter(|&&s| s == Sign::Zero).count();
        let changes = self
            .0
            .windows(2)
            .filter(|w| {
                matches!(
                    (w[0], w[1]),
                    (Sign::Pos, Sign::Neg) | (Sign::Neg, Sign::Pos)
                )
            })
            .count();
        zeros + changes
    }
}

/// Row `(1, θ, θ², ..., θ^k)`.
pub fn vandermonde_row(theta: f64, k: usize) -> Vec<f64> {
    let mut row = Vec::with_capacity(k + 1);
    let mut p = 1.0;
    for _ in 0..=k {
        row.push(p);
        p *= theta;
    }
    row
}

/// Row of `Σ_j m_j θ_j^i`, i.e. the coefficients of `trace p(A)`.
pub fn trace_row(spectrum: &Spectrum, k: usize) -> Vec<f64> {
    let mut row = vec![0.0; k + 1];
    for (&t, &m) in spectrum.distinct.iter().zip(&spectrum.mult) {
        for (r, v) in row.iter_mut().zip(vandermonde_row(t, k)) {
            *r += m as f64 * v;
        }
    }
    row
}

/// Adds `p(θ) ≥ eps`, `p(θ) ≤ -eps` or `p(θ) = 0` to `lp`.
pub fn push_sign(lp: &mut LinearProgram, theta: f64, k: usize, sign: Sign, eps: f64) {
    let row = vandermonde_row(theta, k);
    match sign {
        Sign::Pos => lp.add(row, Relation::Ge, eps),
        Sign::Neg => lp.add(row, Relation::Le, -eps),
        Sign::Zero => lp.add(row, Relation::Eq, 0.0),
    };
}

/// Finds some `p ∈ R_k[x]` with the requested signs at the distinct
/// eigenvalues and satisfying the extra constraints (rows over
/// `a_0..a_k`). `Ok(None)` means infeasible.
pub fn feasible_poly_for_pattern(
    spectrum: &Spectrum,
    pattern: &SignPattern,
    k: usize,
    extra: &[Constraint],
    eps: f64,
    opts: &LpOptions,
) -> Result<Option<Poly>> {
    assert!(eps > 0.0, "eps must be positive");
    assert_eq!(
        pattern.len(),
        spectrum.distinct.len(),
        "pattern length must match distinct eigenvalues"
    );
    let mut lp = LinearProgram::feasibility(k + 1);
    for (&theta, &s) in spectrum.distinct.iter().zip(&pattern.0) {
        push_sign(&mut lp, theta, k, s, eps);
    }
    for c in extra {
        lp.add(c.coeffs.clone(), c.relation, c.rhs);
    }
    let sol = solve_lp_with(&lp, opts)?;
    Ok(match sol.status {
        LpStatus::Optimal | LpStatus::Unbounded => Some(Poly::new(sol.x)),
        LpStatus::Infeasible => None,
    })
}

/// Minimizes `weights · b` over `b ∈ {0,1}^len` subject to a feasibility
/// oracle. Assignments are visited in non-decreasing weight and, within a
/// weight, lexicographically; the first feasible one is optimal. Within a
/// weight level candidates are tested in parallel with a deterministic
/// result. Returns `None` when no assignment is feasible.
pub fn milp_min_weighted_binaries<F>(
    weights: &[usize],
    feasible: F,
) -> Result<Option<(usize, Vec<bool>)>>
where
    F: Fn(&[bool]) -> Result<bool> + Sync,
{
    let len = weights.len();
    if len > ENUMERATION_CAP {
        return Err(Error::Resource(format!(
            "{len} binary variables exceed the enumeration cap of {ENUMERATION_CAP}; a branch-and-bound MILP solver is needed"
        )));
    }
    let mut levels = WeightOrder::new(weights);
    while let Some((weight, mut batch)) = levels.next_level() {
        batch.sort();
        let hit = batch
            .par_iter()
            .map(|b| feasible(b).map(|ok| ok.then(|| b.clone())))
            .find_first(|r| !matches!(r, Ok(None)));
        match hit {
            Some(Ok(Some(b))) => return Ok(Some((weight, b))),
            Some(Err(e)) => return Err(e),
            _ => {}
        }
    }
    Ok(None)
}

/// Lazy enumeration of all subsets in non-decreasing total weight.
pub struct WeightOrder {
    sorted: Vec<(usize, usize)>,
    heap: BinaryHeap<Reverse<(usize, usize, u64)>>,
    emitted_empty: bool,
}

impl WeightOrder {
    pub fn new(weights: &[usize]) -> Self {
        assert!(weights.len() <= 63);
        let mut sorted: Vec<(usize, usize)> = weights
            .iter()
            .copied()
            .enumerate()
            .map(|(i, w)| (w, i))
            .collect();
        sorted.sort();
        let mut heap = BinaryHeap::new();
        if !sorted.is_empty() {
            heap.push(Reverse((sorted[0].0, 0, 1u64)));
        }
        WeightOrder {
            sorted,
            heap,
            emitted_empty: false,
        }
    }

    fn to_vec(&self, mask: u64) -> Vec<bool> {
        let mut b = vec![false; self.sorted.len()];
        for (pos, &(_, orig)) in self.sorted.iter().enumerate() {
            if mask >> pos & 1 == 1 {
                b[orig] = true;
            }
        }
        b
    }

    fn pop(&mut self) -> Option<(usize, Vec<bool>)> {
        if !self.emitted_empty {
            self.emitted_empty = true;
            return Some((0, vec![false; self.sorted.len()]));
        }
        let Reverse((sum, last, mask)) = self.heap.pop()?;
        if last + 1 < self.sorted.len() {
            let next_w = self.sorted[last + 1].0;
            self.heap
                .push(Reverse((sum + next_w, last + 1, mask | 1 << (last + 1))));
            self.heap.push(Reverse((
                sum - self.sorted[last].0 + next_w,
                last + 1,
                (mask & !(1 << last)) | 1 << (last + 1),
            )));
        }
        Some((sum, self.to_vec(mask)))
    }

    /// All subsets sharing the next smallest weight.
    pub fn next_level(&mut self) -> Option<(usize, Vec<Vec<bool>>)> {
        let (w, first) = self.pop()?;
        let mut batch = vec![first];
        loop {
            let next_sum = if !self.emitted_empty {
                Some(0)
            } else {
                self.heap.peek().map(|r| r.0 .0)
            };
            if next_sum != Some(w) {
                break;
            }
            batch.push(self.pop().expect("peeked").1);
        }
        Some((w, batch))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Family};
    use crate::spectral::eigendecompose;

    #[test]
    fn simple_max() {
        let mut lp = LinearProgram::new(Sense::Maximize, vec![1.0]);
        lp.add(vec![1.0], Relation::Le, 3.0);
        let s = solve_lp(&lp).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        assert!((s.value - 3.0).abs() < 1e-12);
    }

    #[test]
    fn unbounded_with_ray() {
        let mut lp = LinearProgram::new(Sense::Maximize, vec![1.0]);
        lp.add(vec![1.0], Relation::Ge, 1.0);
        let s = solve_lp(&lp).unwrap();
        assert_eq!(s.status, LpStatus::Unbounded);
        let ray = s.ray.unwrap();
        assert!(ray[0] > 0.0);
        assert!(lp.max_violation(&s.x) < 1e-9);
    }

    #[test]
    fn symmetric_optimum() {
        let mut lp = LinearProgram::new(Sense::Maximize, vec![1.0, 1.0]);
        lp.add(vec![1.0, 1.0], Relation::Le, 2.0)
            .add(vec![1.0, -1.0], Relation::Eq, 0.0);
        let s = solve_lp(&lp).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        assert!((s.value - 2.0).abs() < 1e-12);
        assert!((s.x[0] - 1.0).abs() < 1e-12 && (s.x[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn infeasible_and_degenerate() {
        let mut lp = LinearProgram::feasibility(2);
        lp.add(vec![1.0, 1.0], Relation::Le, 1.0)
            .add(vec![1.0, 1.0], Relation::Ge, 2.0);
        assert_eq!(solve_lp(&lp).unwrap().status, LpStatus::Infeasible);

        // redundant equalities leave an artificial in the basis at level 0
        let mut lp = LinearProgram::new(Sense::Minimize, vec![1.0, 2.0]);
        lp.add(vec![1.0, 1.0], Relation::Eq, 1.0)
            .add(vec![2.0, 2.0], Relation::Eq, 2.0)
            .set_nonnegative(0)
            .set_nonnegative(1);
        let s = solve_lp(&lp).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        assert!((s.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_non_finite() {
        let mut lp = LinearProgram::feasibility(1);
        lp.add(vec![f64::NAN], Relation::Le, 1.0);
        assert!(matches!(solve_lp(&lp), Err(Error::Input(_))));
    }

    #[test]
    fn display_dump() {
        let mut lp = LinearProgram::new(Sense::Maximize, vec![1.0, -2.0]);
        lp.add(vec![1.0, 1.0], Relation::Le, 4.0).set_nonnegative(1);
        let s = lp.to_string();
        assert!(s.starts_with("maximize +1*x0 -2*x1\nsubject to\n  +1*x0 +1*x1 <= 4\n"));
        assert!(s.contains("nonnegative: x1"));
    }

    fn c6() -> Spectrum {
        eigendecompose(&generate(Family::Cycle, &[6]).unwrap()).unwrap()
    }

    #[test]
    fn c6_pattern_with_trace() {
        use Sign::*;
        let s = c6();
        let trace = Constraint::new(trace_row(&s, 2), Relation::Eq, 0.0);
        // p(x) = x^2 - 2 realizes (+,-,-,+) with zero trace: 2*1 - 1*2 - 1*2 + 2*1 = 0
        let witness = Poly::new(vec![-2.0, 0.0, 1.0]);
        assert!(s.weighted_sum(&witness).abs() < 1e-9);
        let p = feasible_poly_for_pattern(
            &s,
            &SignPattern(vec![Pos, Neg, Neg, Pos]),
            2,
            std::slice::from_ref(&trace),
            1.0,
            &LpOptions::default(),
        )
        .unwrap()
        .expect("feasible");
        let vals: Vec<f64> = s.distinct.iter().map(|&t| p.eval(t)).collect();
        assert!(vals[0] >= 1.0 - 1e-9 && vals[3] >= 1.0 - 1e-9);
        assert!(vals[1] <= -1.0 + 1e-9 && vals[2] <= -1.0 + 1e-9);
        assert!(s.weighted_sum(&p).abs() < 1e-7);

        let none = feasible_poly_for_pattern(
            &s,
            &SignPattern(vec![Pos, Neg, Neg, Pos]),
            1,
            &[],
            1.0,
            &LpOptions::default(),
        )
        .unwrap();
        assert!(none.is_none());
    }

    #[test]
    fn all_zero_pattern_only_admits_zero() {
        use Sign::*;
        let s = c6();
        let trace = Constraint::new(trace_row(&s, 2), Relation::Eq, 0.0);
        let p = feasible_poly_for_pattern(
            &s,
            &SignPattern(vec![Zero; 4]),
            2,
            &[trace],
            1.0,
            &LpOptions::default(),
        )
        .unwrap()
        .unwrap();
        assert!(p.coeffs().iter().all(|c| c.abs() < 1e-12));
    }

    #[test]
    fn min_roots_counts() {
        use Sign::*;
        assert_eq!(SignPattern(vec![Pos, Neg, Neg, Pos]).min_roots(), 2);
        assert_eq!(SignPattern(vec![Pos, Zero, Neg]).min_roots(), 1);
        assert_eq!(SignPattern(vec![Pos, Pos]).min_roots(), 0);
    }

    #[test]
    fn weighted_binary_examples() {
        let s = c6();
        let trace = trace_row(&s, 2);
        let feasible = |b: &[bool]| -> Result<bool> {
            let mut lp = LinearProgram::feasibility(3);
            lp.add(trace.clone(), Relation::Eq, 0.0);
            for (j, &bj) in b.iter().enumerate() {
                if !bj {
                    lp.add(vandermonde_row(s.distinct[j], 2), Relation::Le, -1.0);
                }
            }
            Ok(solve_lp(&lp)?.status != LpStatus::Infeasible)
        };
        let (w, b) = milp_min_weighted_binaries(&s.mult, feasible)
            .unwrap()
            .unwrap();
        assert_eq!(w, 2);
        assert_eq!(b, vec![true, false, false, true]);

        let (w, b) = milp_min_weighted_binaries(&[1, 1, 1], |_| Ok(true))
            .unwrap()
            .unwrap();
        assert_eq!((w, b), (0, vec![false; 3]));
        let (w, _) = milp_min_weighted_binaries(&[1, 1], |b| Ok(b == [true, true]))
            .unwrap()
            .unwrap();
        assert_eq!(w, 2);
        assert!(milp_min_weighted_binaries(&[1, 2], |_| Ok(false))
            .unwrap()
            .is_none());
        assert!(matches!(
            milp_min_weighted_binaries(&[1; 25], |_| Ok(true)),
            Err(Error::Resource(_))
        ));
    }

    #[test]
    fn weight_order_is_complete_and_sorted() {
        let weights = [3, 1, 2, 2, 5, 1];
        let mut order = WeightOrder::new(&weights);
        let mut seen = std::collections::HashSet::new();
        let mut last = 0;
        while let Some((w, batch)) = order.next_level() {
            assert!(w >= last);
            last = w;
            for b in batch {
                let sum: usize = b
                    .iter()
                    .zip(&weights)
                    .filter(|(&x, _)| x)
                    .map(|(_, &w)| w)
                    .sum();
                assert_eq!(sum, w);
                assert!(seen.insert(b));
            }
        }
        assert_eq!(seen.len(), 64);
    }
}
