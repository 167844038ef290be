//! Optimized eigenvalue lower bounds on `χ_kq` and sandwich certification.
//!
//! Each bound depends on a polynomial `p` of degree at most `k` evaluated
//! on the adjacency spectrum. The optimal polynomial is found by linear
//! programming over the coefficients `a_0..a_k`:
//!
//! - [`inertial1_bound`]: `n / min(#{p(λ_i) >= w(p)}, #{p(λ_i) <= W(p)})`,
//!   minimized over binary "non-negative at θ_j" assignments.
//! - [`inertial2_bound`]: `1 + #{p < 0} / #{p > 0}` for k-partially
//!   walk-regular graphs, maximized over sign patterns.
//! - [`ratio_bound`]: `(p(λ_1) - λ(p)) / (W(p) - λ(p))`, one LP per vertex
//!   and eigenvalue index.
//! - [`inertia_k1_bound`]: `1 + max(n⁺/n⁻, n⁻/n⁺)`.
//!
//! Sign requirements are imposed directly as `p(θ) >= 1`, `p(θ) <= -1` or
//! `p(θ) = 0` (the bounds are invariant under positive scaling of `p`), so
//! no big-M constants are involved.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{chromatic_number_exact, DEFAULT_BUDGET};
use crate::graph::{is_k_partially_walk_regular, power_graph, Graph};
use crate::lp::{
    feasible_poly_for_pattern, milp_min_weighted_binaries, push_sign, solve_lp_with, trace_row,
    vandermonde_row, Constraint, LinearProgram, LpOptions, LpStatus, Relation, Sense, Sign,
    SignPattern, ENUMERATION_CAP,
};
use crate::spectral::{
    eigendecompose_with_tol, poly_diagonal, poly_stats_from_diagonal, power_diagonals, Poly,
    Spectrum, DEFAULT_EIG_TOL,
};

/// Backoff applied before rounding a real lower bound up to an integer.
pub const CEIL_BACKOFF: f64 = 1e-7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Method {
    Inertial1,
    Inertial2,
    Ratio,
    InertiaK1,
}

impl Method {
    pub const ALL: [Method; 4] = [
        Method::Inertial1,
        Method::Inertial2,
        Method::Ratio,
        Method::InertiaK1,
    ];

    /// Name used on the command line.
    pub fn cli_name(self) -> &'static str {
        match self {
            Method::Inertial1 => "inertial1",
            Method::Inertial2 => "inertial2",
            Method::Ratio => "ratio",
            Method::InertiaK1 => "inertia1q",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.cli_name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "inertial1" => Method::Inertial1,
            "inertial2" => Method::Inertial2,
            "ratio" => Method::Ratio,
            "inertia1q" | "inertia_k1" => Method::InertiaK1,
            _ => return Err(Error::Input(format!("unknown bound method {s:?}"))),
        })
    }
}

/// Tunables shared by all bound computations.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundConfig {
    /// Relative eigenvalue grouping tolerance.
    pub eig_tol: f64,
    /// Margin for strict signs in pattern programs.
    pub eps: f64,
    /// Margin for `p(θ_0) > p(θ_j)` in the ratio programs.
    pub ratio_strict: f64,
    /// Keep `Σ m_j p(θ_j) = 0` in the second inertial program. Dropping it
    /// gives an unsound value and exists only to demonstrate that.
    pub inertial2_trace: bool,
    /// Upper limit on enumerated sign patterns.
    pub max_patterns: usize,
    pub lp: LpOptions,
}

impl Default for BoundConfig {
    fn default() -> Self {
        BoundConfig {
            eig_tol: DEFAULT_EIG_TOL,
            eps: 1.0,
            ratio_strict: 1e-6,
            inertial2_trace: true,
            max_patterns: 5_000_000,
            lp: LpOptions::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub graph: Option<String>,
    pub n: usize,
    pub k: usize,
    pub method: Method,
    pub raw_value: Option<f64>,
    pub integer_bound: Option<usize>,
    pub witness_poly: Option<Poly>,
    pub applicable: bool,
    pub notes: Vec<String>,
    /// Optimal sign pattern of the second inertial program.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sign_pattern: Option<SignPattern>,
    /// Optimal assignment `b_j = [p(θ_j) may be >= w(p)]` of the first
    /// inertial program.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub binaries: Option<Vec<bool>>,
}

impl BoundReport {
    fn inapplicable(g: &Graph, k: usize, method: Method, note: impl Into<String>) -> Self {
        BoundReport {
            graph: g.name().map(str::to_string),
            n: g.n(),
            k,
            method,
            raw_value: None,
            integer_bound: None,
            witness_poly: None,
            applicable: false,
            notes: vec![note.into()],
            sign_pattern: None,
            binaries: None,
        }
    }

    fn applicable(
        g: &Graph,
        k: usize,
        method: Method,
        raw: f64,
        witness: Poly,
        notes: Vec<String>,
    ) -> Self {
        BoundReport {
            graph: g.name().map(str::to_string),
            n: g.n(),
            k,
            method,
            raw_value: Some(raw),
            integer_bound: Some(integer_bound(raw)),
            witness_poly: Some(witness),
            applicable: true,
            notes,
            sign_pattern: None,
            binaries: None,
        }
    }

    /// Integer bound, treating inapplicable reports as the trivial bound 1.
    pub fn value(&self) -> usize {
        self.integer_bound.unwrap_or(1)
    }
}

/// `ceil(raw - 1e-7)`, never below 1.
pub fn integer_bound(raw: f64) -> usize {
    ((raw - CEIL_BACKOFF).ceil().max(1.0)) as usize
}

/// Spectrum and closed-walk data shared by the bound computations for one
/// `(G, k)` pair.
#[derive(Clone, Debug)]
pub struct Prepared<'g> {
    pub graph: &'g Graph,
    pub k: usize,
    pub spectrum: Spectrum,
    /// `diags[i][v] = (A^i)_vv`.
    pub diags: Vec<Vec<f64>>,
    pub walk_regular: bool,
}

impl<'g> Prepared<'g> {
    pub fn new(graph: &'g Graph, k: usize, cfg: &BoundConfig) -> Result<Self> {
        if k == 0 {
            return Err(Error::Input("k must be at least 1".into()));
        }
        let spectrum = eigendecompose_with_tol(graph, cfg.eig_tol)?;
        Ok(Prepared {
            graph,
            k,
            spectrum,
            diags: power_diagonals(graph, k),
            walk_regular: is_k_partially_walk_regular(graph, k),
        })
    }

    fn profile(&self, v: usize) -> Vec<f64> {
        self.diags.iter().map(|d| d[v]).collect()
    }

    /// Vertices grouped by their closed-walk profile `((A^i)_vv)_{i<=k}`.
    /// Vertices sharing a profile produce identical diagonal constraints.
    /// Representatives are listed in order of first occurrence.
    fn vertex_classes(&self) -> Vec<Vec<f64>> {
        let mut seen: HashSet<Vec<u64>> = HashSet::new();
        let mut out = Vec::new();
        for v in 0..self.graph.n() {
            let prof = self.profile(v);
            let key: Vec<u64> = prof.iter().map(|x| x.to_bits()).collect();
            if seen.insert(key) {
                out.push(prof);
            }
        }
        out
    }

    fn values(&self, p: &Poly) -> Vec<f64> {
        self.spectrum.distinct.iter().map(|&t| p.eval(t)).collect()
    }
}

/// Tolerance for classifying `p(θ)` against a threshold.
fn classify_tol(vals: &[f64], extra: &[f64]) -> f64 {
    1e-6 * vals.iter().chain(extra).fold(1.0f64, |m, v| m.max(v.abs()))
}

// ---------------------------------------------------------------------------
// First inertial-type bound

/// Re-evaluates the first inertial bound for a given polynomial.
pub fn inertial1_value(prep: &Prepared, p: &Poly) -> f64 {
    let vals = prep.values(p);
    let diag = poly_diagonal(p, &prep.diags);
    let w_min = diag.iter().copied().fold(f64::INFINITY, f64::min);
    let w_max = diag.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let tol = classify_tol(&vals, &diag);
    let mult = &prep.spectrum.mult;
    let ge: usize = vals
        .iter()
        .zip(mult)
        .filter(|(&v, _)| v >= w_min - tol)
        .map(|(_, &m)| m)
        .sum();
    let le: usize = vals
        .iter()
        .zip(mult)
        .filter(|(&v, _)| v <= w_max + tol)
        .map(|(_, &m)| m)
        .sum();
    prep.graph.n() as f64 / ge.min(le).max(1) as f64
}

pub fn inertial1_bound(g: &Graph, k: usize) -> Result<BoundReport> {
    let cfg = BoundConfig::default();
    inertial1_bound_with(&Prepared::new(g, k, &cfg)?, &cfg)
}

/// Minimizes `Σ_{j: p(θ_j) >= w(p)} m_j` over `p` normalized to
/// `w(p) = 0`. Replacing `p` by `-p` swaps the two counts in the
/// denominator, so this single minimization also covers the
/// `#{p(λ_i) <= W(p)}` side.
pub fn inertial1_bound_with(prep: &Prepared, cfg: &BoundConfig) -> Result<BoundReport> {
    let g = prep.graph;
    let k = prep.k;
    let s = &prep.spectrum;
    if s.distinct.len() > ENUMERATION_CAP {
        return Err(Error::Resource(format!(
            "{} distinct eigenvalues exceed the enumeration cap of {ENUMERATION_CAP}",
            s.distinct.len()
        )));
    }
    let mut notes = Vec::new();
    // One constraint family per normalization vertex class.
    let families: Vec<Vec<Constraint>> = if prep.walk_regular {
        notes.push(
            "k-partially walk-regular: trace condition replaces per-vertex normalization"
                .to_string(),
        );
        vec![vec![Constraint::new(trace_row(s, k), Relation::Eq, 0.0)]]
    } else {
        let classes = prep.vertex_classes();
        notes.push(format!(
            "per-vertex normalization over {} closed-walk classes",
            classes.len()
        ));
        classes
            .iter()
            .map(|u| {
                let mut rows: Vec<Constraint> = classes
                    .iter()
                    .filter(|v| *v != u)
                    .map(|v| Constraint::new(v.clone(), Relation::Ge, 0.0))
                    .collect();
                rows.push(Constraint::new(u.clone(), Relation::Eq, 0.0));
                rows
            })
            .collect()
    };
    let solve_for = |fam: &[Constraint], b: &[bool]| -> Result<Option<Poly>> {
        let mut lp = LinearProgram::feasibility(k + 1);
        for c in fam {
            lp.add(c.coeffs.clone(), c.relation, c.rhs);
        }
        for (&theta, &bj) in s.distinct.iter().zip(b) {
            if !bj {
                push_sign(&mut lp, theta, k, Sign::Neg, cfg.eps);
            }
        }
        let sol = solve_lp_with(&lp, &cfg.lp)?;
        Ok((sol.status != LpStatus::Infeasible).then(|| Poly::new(sol.x)))
    };
    let feasible = |b: &[bool]| -> Result<bool> {
        for fam in &families {
            if solve_for(fam, b)?.is_some() {
                return Ok(true);
            }
        }
        Ok(false)
    };
    let Some((weight, b)) = milp_min_weighted_binaries(&s.mult, feasible)? else {
        return Err(Error::Numerical(
            "first inertial program infeasible for every assignment".into(),
        ));
    };
    let mut witness = None;
    for fam in &families {
        if let Some(p) = solve_for(fam, &b)? {
            witness = Some(p);
            break;
        }
    }
    let witness = witness.ok_or_else(|| {
        Error::Numerical("optimal assignment lost feasibility on re-solve".into())
    })?;
    let raw = inertial1_value(prep, &witness);
    notes.push(format!("optimal weighted-binary value m.b = {weight}"));
    let recomputed = (g.n() as f64 / raw).round() as usize;
    if recomputed != weight {
        notes.push(format!(
            "witness re-evaluation gives denominator {recomputed}"
        ));
    }
    let mut report = BoundReport::applicable(g, k, Method::Inertial1, raw, witness, notes);
    report.binaries = Some(b);
    Ok(report)
}

// ---------------------------------------------------------------------------
// Second inertial-type bound

/// `1 + #{p(λ) < 0} / #{p(λ) > 0}` with multiplicities, or `None` if `p`
/// is positive nowhere.
pub fn inertial2_value(spectrum: &Spectrum, p: &Poly) -> Option<f64> {
    let vals: Vec<f64> = spectrum.distinct.iter().map(|&t| p.eval(t)).collect();
    let tol = classify_tol(&vals, &[]);
    let pos: usize = vals
        .iter()
        .zip(&spectrum.mult)
        .filter(|(&v, _)| v > tol)
        .map(|(_, &m)| m)
        .sum();
    let neg: usize = vals
        .iter()
        .zip(&spectrum.mult)
        .filter(|(&v, _)| v < -tol)
        .map(|(_, &m)| m)
        .sum();
    (pos > 0).then(|| 1.0 + neg as f64 / pos as f64)
}

pub fn inertial2_bound(g: &Graph, k: usize) -> Result<BoundReport> {
    let cfg = BoundConfig::default();
    inertial2_bound_with(&Prepared::new(g, k, &cfg)?, &cfg)
}

pub fn inertial2_bound_with(prep: &Prepared, cfg: &BoundConfig) -> Result<BoundReport> {
    let g = prep.graph;
    let k = prep.k;
    if k >= 2 && !prep.walk_regular {
        return Ok(BoundReport::inapplicable(
            g,
            k,
            Method::Inertial2,
            format!("graph is not {k}-partially walk-regular"),
        ));
    }
    let comps = g.components();
    if !prep.spectrum.top_is_simple() && comps.len() > 1 {
        let mut best: Option<(f64, Poly, SignPattern, usize)> = None;
        for (ci, comp) in comps.iter().enumerate() {
            if comp.len() < 2 {
                continue;
            }
            let sub = g.induced_subgraph(comp);
            let sp = Prepared::new(&sub, k, cfg)?;
            if let Some((raw, p, pat)) = inertial2_core(&sp, cfg)? {
                if best.as_ref().is_none_or(|b| raw > b.0 + 1e-12) {
                    best = Some((raw, p, pat, ci));
                }
            }
        }
        let mut notes =
            vec![format!("largest eigenvalue is not simple: evaluated on each of {} components, maximum reported", comps.len())];
        return Ok(match best {
            Some((raw, p, pat, ci)) => {
                notes.push(format!(
                    "attained on component {ci} (vertices {:?}); witness refers to that component",
                    comps[ci]
                ));
                let mut r = BoundReport::applicable(g, k, Method::Inertial2, raw, p, notes);
                r.sign_pattern = Some(pat);
                r
            }
            None => {
                notes.push("no sign pattern with both signs is realizable; trivial bound".into());
                BoundReport::applicable(g, k, Method::Inertial2, 1.0, Poly::zero(k), notes)
            }
        });
    }
    let mut notes = Vec::new();
    if k == 1 && !prep.walk_regular {
        notes.push("k = 1: walk-regularity not required".into());
    }
    if !cfg.inertial2_trace {
        notes.push("trace condition dropped".into());
    }
    Ok(match inertial2_core(prep, cfg)? {
        Some((raw, p, pat)) => {
            let mut r = BoundReport::applicable(g, k, Method::Inertial2, raw, p, notes);
            r.sign_pattern = Some(pat);
            r
        }
        None => {
            notes.push("no sign pattern with both signs is realizable; trivial bound".into());
            BoundReport::applicable(g, k, Method::Inertial2, 1.0, Poly::zero(k), notes)
        }
    })
}

/// All sign patterns with at least one `Pos` and one `Neg` that a non-zero
/// polynomial of degree at most `k` could realize.
fn candidate_patterns(mult: &[usize], k: usize, cap: usize) -> Result<Vec<SignPattern>> {
    #[allow(clippy::too_many_arguments)]
    fn rec(
        j: usize,
        len: usize,
        k: usize,
        roots: usize,
        prev: Option<Sign>,
        cur: &mut Vec<Sign>,
        out: &mut Vec<SignPattern>,
        cap: usize,
    ) -> bool {
        if j == len {
            let has_pos = cur.contains(&Sign::Pos);
            let has_neg = cur.contains(&Sign::Neg);
            if has_pos && has_neg {
                if out.len() >= cap {
                    return false;
                }
                out.push(SignPattern(cur.clone()));
            }
            return true;
        }
        for s in [Sign::Neg, Sign::Zero, Sign::Pos] {
            let add = match (prev, s) {
                (_, Sign::Zero) => 1,
                (Some(Sign::Pos), Sign::Neg) | (Some(Sign::Neg), Sign::Pos) => 1,
                _ => 0,
            };
            if roots + add > k {
                continue;
            }
            cur.push(s);
            let ok = rec(j + 1, len, k, roots + add, Some(s), cur, out, cap);
            cur.pop();
            if !ok {
                return false;
            }
        }
        true
    }
    let mut out = Vec::new();
    if !rec(0, mult.len(), k, 0, None, &mut Vec::new(), &mut out, cap) {
        return Err(Error::Resource(format!(
            "more than {cap} candidate sign patterns"
        )));
    }
    Ok(out)
}

/// Best `(value, witness, pattern)` for a single graph, `None` if no
/// pattern with both signs is feasible.
fn inertial2_core(prep: &Prepared, cfg: &BoundConfig) -> Result<Option<(f64, Poly, SignPattern)>> {
    let s = &prep.spectrum;
    let k = prep.k;
    let mut patterns = candidate_patterns(&s.mult, k, cfg.max_patterns)?;
    let weights: Vec<(usize, usize)> = patterns
        .iter()
        .map(|p| (p.weight(Sign::Neg, &s.mult), p.weight(Sign::Pos, &s.mult)))
        .collect();
    let mut order: Vec<usize> = (0..patterns.len()).collect();
    // Descending neg/pos, ties broken by pattern order.
    order.sort_by(|&a, &b| {
        let (na, pa) = weights[a];
        let (nb, pb) = weights[b];
        (nb * pa)
            .cmp(&(na * pb))
            .then_with(|| patterns[a].cmp(&patterns[b]))
    });
    let extra: Vec<Constraint> = if cfg.inertial2_trace {
        vec![Constraint::new(trace_row(s, k), Relation::Eq, 0.0)]
    } else {
        Vec::new()
    };
    let try_pattern = |pat: &SignPattern| -> Result<Option<Poly>> {
        feasible_poly_for_pattern(s, pat, k, &extra, cfg.eps, &cfg.lp)
    };
    let mut start = 0;
    while start < order.len() {
        let (n0, p0) = weights[order[start]];
        let mut end = start + 1;
        while end < order.len() {
            let (n1, p1) = weights[order[end]];
            if n1 * p0 != n0 * p1 {
                break;
            }
            end += 1;
        }
        let hit = order[start..end]
            .par_iter()
            .map(|&i| try_pattern(&patterns[i]).map(|r| r.map(|p| (i, p))))
            .find_first(|r| !matches!(r, Ok(None)));
        match hit {
            Some(Ok(Some((i, p)))) => {
                let raw = inertial2_value(s, &p).unwrap_or(1.0);
                return Ok(Some((raw, p, std::mem::take(&mut patterns[i]))));
            }
            Some(Err(e)) => return Err(e),
            _ => {}
        }
        start = end;
    }
    Ok(None)
}

// ---------------------------------------------------------------------------
// Hoffman ratio-type bound

/// `(p(λ_1) - λ(p)) / (W(p) - λ(p))`, or `None` when the hypotheses
/// `p(λ_1) > λ(p)` and `W(p) > λ(p)` fail.
pub fn ratio_value(prep: &Prepared, p: &Poly) -> Option<f64> {
    let diag = poly_diagonal(p, &prep.diags);
    let st = poly_stats_from_diagonal(p, &diag, &prep.spectrum);
    let lam = st.lambda_p?;
    let den = st.w_max - lam;
    (st.p_lambda1 > lam && den > 0.0).then(|| (st.p_lambda1 - lam) / den)
}

/// Classical Hoffman bound `1 - λ_1 / λ_n`, `None` for edgeless graphs.
pub fn hoffman_value(spectrum: &Spectrum) -> Option<f64> {
    let l1 = spectrum.full[0];
    let ln = *spectrum.full.last().expect("non-empty spectrum");
    (ln < -spectrum.tol).then(|| 1.0 - l1 / ln)
}

pub fn ratio_bound(g: &Graph, k: usize) -> Result<BoundReport> {
    let cfg = BoundConfig::default();
    ratio_bound_with(&Prepared::new(g, k, &cfg)?, &cfg)
}

pub fn ratio_bound_with(prep: &Prepared, cfg: &BoundConfig) -> Result<BoundReport> {
    let g = prep.graph;
    let k = prep.k;
    if !prep.spectrum.top_is_simple() {
        let comps = g.components();
        if comps.len() <= 1 {
            return Ok(BoundReport::inapplicable(
                g,
                k,
                Method::Ratio,
                "largest eigenvalue is not simple",
            ));
        }
        let mut best: Option<(f64, Poly, usize)> = None;
        for (ci, comp) in comps.iter().enumerate() {
            if comp.len() < 2 {
                continue;
            }
            let sub = g.induced_subgraph(comp);
            let sp = Prepared::new(&sub, k, cfg)?;
            if !sp.spectrum.top_is_simple() {
                continue;
            }
            if let Some((raw, p)) = ratio_core(&sp, cfg)? {
                if best.as_ref().is_none_or(|b| raw > b.0 + 1e-12) {
                    best = Some((raw, p, ci));
                }
            }
        }
        let mut notes =
            vec![format!("largest eigenvalue is not simple: evaluated on each of {} components, maximum reported", comps.len())];
        return Ok(match best {
            Some((raw, p, ci)) => {
                notes.push(format!(
                    "attained on component {ci} (vertices {:?}); witness refers to that component",
                    comps[ci]
                ));
                BoundReport::applicable(g, k, Method::Ratio, raw, p, notes)
            }
            None => {
                let mut r = BoundReport::inapplicable(
                    g,
                    k,
                    Method::Ratio,
                    "no component admits a feasible ratio program",
                );
                r.notes.splice(0..0, notes);
                r
            }
        });
    }
    Ok(match ratio_core(prep, cfg)? {
        Some((raw, p)) => BoundReport::applicable(g, k, Method::Ratio, raw, p, Vec::new()),
        None => {
            BoundReport::inapplicable(g, k, Method::Ratio, "every (u, l) program is infeasible")
        }
    })
}

/// Solves the `(u, ℓ)` grid of programs
/// `max p(θ_0) - p(θ_ℓ)` s.t. `p(A)_vv <= p(A)_uu`, `p(A)_uu - p(θ_ℓ) = 1`,
/// `p(θ_0) - p(θ_j) >= δ`, `p(θ_j) >= p(θ_ℓ)` for `j >= 1`.
fn ratio_core(prep: &Prepared, cfg: &BoundConfig) -> Result<Option<(f64, Poly)>> {
    let s = &prep.spectrum;
    let k = prep.k;
    let d = s.d();
    if d == 0 {
        return Ok(None);
    }
    let classes = if prep.walk_regular {
        vec![prep.profile(0)]
    } else {
        prep.vertex_classes()
    };
    let rows: Vec<Vec<f64>> = s.distinct.iter().map(|&t| vandermonde_row(t, k)).collect();
    let diff = |a: &[f64], b: &[f64]| -> Vec<f64> { a.iter().zip(b).map(|(x, y)| x - y).collect() };
    let grid: Vec<(usize, usize)> = (0..classes.len())
        .flat_map(|u| (1..=d).map(move |l| (u, l)))
        .collect();
    let results: Vec<Result<Option<(f64, Poly)>>> = grid
        .par_iter()
        .map(|&(u, l)| {
            let mut lp = LinearProgram::new(Sense::Maximize, diff(&rows[0], &rows[l]));
            for (vi, v) in classes.iter().enumerate() {
                if vi != u {
                    lp.add(diff(v, &classes[u]), Relation::Le, 0.0);
                }
            }
            lp.add(diff(&classes[u], &rows[l]), Relation::Eq, 1.0);
            for j in 1..=d {
                lp.add(diff(&rows[0], &rows[j]), Relation::Ge, cfg.ratio_strict);
                if j != l {
                    lp.add(diff(&rows[j], &rows[l]), Relation::Ge, 0.0);
                }
            }
            let sol = solve_lp_with(&lp, &cfg.lp)?;
            Ok(match sol.status {
                LpStatus::Optimal => Some((sol.value, Poly::new(sol.x))),
                LpStatus::Infeasible => None,
                LpStatus::Unbounded => {
                    return Err(Error::Numerical(format!(
                        "ratio program (class {u}, l = {l}) reported unbounded"
                    )))
                }
            })
        })
        .collect();
    let mut best: Option<(f64, Poly)> = None;
    for r in results {
        if let Some((value, p)) = r? {
            if best
                .as_ref()
                .is_none_or(|b| value > b.0 + 1e-12 * value.abs().max(1.0))
            {
                best = Some((value, p));
            }
        }
    }
    Ok(best.and_then(|(_, p)| ratio_value(prep, &p).map(|raw| (raw, p))))
}

// ---------------------------------------------------------------------------
// Inertia bound

/// `1 + max(n⁺/n⁻, n⁻/n⁺)` from the inertia of `G`; 1 for edgeless graphs.
pub fn inertia_k1_bound(g: &Graph) -> Result<BoundReport> {
    let cfg = BoundConfig::default();
    Ok(inertia_k1_bound_with(&Prepared::new(g, 1, &cfg)?))
}

/// The inertia bound of `G` itself. For `k > 1` it still bounds `χ_kq`,
/// because `G` is a subgraph of `G^k`.
pub fn inertia_k1_bound_with(prep: &Prepared) -> BoundReport {
    let g = prep.graph;
    let inertia = prep.spectrum.inertia();
    let (p, m) = (inertia.n_plus, inertia.n_minus);
    let mut notes = vec![format!(
        "inertia (n+, n0, n-) = ({}, {}, {})",
        p, inertia.n_zero, m
    )];
    let raw = if p == 0 || m == 0 {
        notes.push("edgeless graph: trivial bound".into());
        1.0
    } else {
        1.0 + (p as f64 / m as f64).max(m as f64 / p as f64)
    };
    if prep.k > 1 {
        notes.push("computed on G; valid for every k since G is a subgraph of G^k".into());
    }
    BoundReport::applicable(
        g,
        prep.k,
        Method::InertiaK1,
        raw,
        Poly::identity(prep.k),
        notes,
    )
}

// ---------------------------------------------------------------------------
// Certification

pub fn run_method(prep: &Prepared, method: Method, cfg: &BoundConfig) -> Result<BoundReport> {
    match method {
        Method::Inertial1 => inertial1_bound_with(prep, cfg),
        Method::Inertial2 => inertial2_bound_with(prep, cfg),
        Method::Ratio => ratio_bound_with(prep, cfg),
        Method::InertiaK1 => Ok(inertia_k1_bound_with(prep)),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Certificate {
    pub graph: Option<String>,
    pub n: usize,
    pub k: usize,
    /// `χ_k(G) = χ(G^k)`, `None` if the exact search ran out of budget.
    pub chi_k_exact: Option<usize>,
    /// Best known upper bound on `χ_k`.
    pub chi_k_upper: usize,
    pub best_bound: Option<BoundReport>,
    pub certified: bool,
    /// `χ_kq`, known exactly when certified.
    pub quantum_value: Option<usize>,
    pub reports: Vec<BoundReport>,
    pub notes: Vec<String>,
}

pub fn certify(g: &Graph, k: usize) -> Result<Certificate> {
    certify_with(g, k, &Method::ALL, &BoundConfig::default(), DEFAULT_BUDGET)
}

/// Runs the selected bounds and the exact solver, and pins `χ_kq` when the
/// best lower bound meets `χ_k`.
pub fn certify_with(
    g: &Graph,
    k: usize,
    methods: &[Method],
    cfg: &BoundConfig,
    budget: u64,
) -> Result<Certificate> {
    let prep = Prepared::new(g, k, cfg)?;
    let mut notes = Vec::new();
    let mut reports = Vec::new();
    for &m in methods {
        match run_method(&prep, m, cfg) {
            Ok(r) => reports.push(r),
            Err(e @ (Error::Resource(_) | Error::Numerical(_))) => {
                reports.push(BoundReport::inapplicable(
                    g,
                    k,
                    m,
                    format!("not computed: {e}"),
                ));
            }
            Err(e) => return Err(e),
        }
    }
    let best_bound = reports
        .iter()
        .filter(|r| r.applicable)
        .fold(None::<&BoundReport>, |best, r| match best {
            Some(b) if b.value() >= r.value() => Some(b),
            _ => Some(r),
        })
        .cloned();
    let exact = chromatic_number_exact(&power_graph(g, k), budget);
    let chi_k_exact = (!exact.timed_out).then_some(exact.chi);
    if exact.timed_out {
        notes.push(format!(
            "exact search exhausted its budget of {budget} nodes: {} <= chi_k <= {}",
            exact.lower_bound, exact.chi
        ));
    }
    let best_value = best_bound.as_ref().map_or(1, BoundReport::value);
    if best_value > exact.chi {
        return Err(Error::Numerical(format!(
            "lower bound {best_value} exceeds the coloring upper bound {} (k = {k})",
            exact.chi
        )));
    }
    let certified = chi_k_exact == Some(best_value) && best_bound.is_some();
    Ok(Certificate {
        graph: g.name().map(str::to_string),
        n: g.n(),
        k,
        chi_k_exact,
        chi_k_upper: exact.chi,
        best_bound,
        certified,
        quantum_value: certified.then_some(best_value),
        reports,
        notes,
    })
}
