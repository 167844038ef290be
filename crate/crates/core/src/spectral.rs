//! Adjacency spectra, inertia, and polynomials evaluated at the adjacency
//! matrix.

use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Relative grouping tolerance for distinct eigenvalues.
pub const DEFAULT_EIG_TOL: f64 = 1e-8;

const MAX_SWEEPS: usize = 100;

/// Dense row-major real square matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    n: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(n: usize) -> Self {
        Matrix {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_row_major(n: usize, data: Vec<f64>) -> Self {
        assert_eq!(data.len(), n * n, "matrix data has wrong length");
        Matrix { n, data }
    }

    pub fn adjacency(g: &Graph) -> Self {
        Matrix::from_row_major(g.n(), g.adjacency_matrix())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.n).map(|i| self[(i, i)]).collect()
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == 0.0 {
                    continue;
                }
                let row = &other.data[k * n..(k + 1) * n];
                let dst = &mut out.data[i * n..(i + 1) * n];
                for (d, &b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
        }
        out
    }

    pub fn add_scaled(&mut self, other: &Matrix, s: f64) {
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a += s * b;
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    fn frobenius(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.n + j]
    }
}

/// Real polynomial `a_0 + a_1 x + ... + a_k x^k`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Poly {
    coeffs: Vec<f64>,
}

impl Poly {
    pub fn new(coeffs: Vec<f64>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a polynomial needs at least one coefficient"
        );
        Poly { coeffs }
    }

    pub fn zero(k: usize) -> Self {
        Poly {
            coeffs: vec![0.0; k + 1],
        }
    }

    /// `x` as an element of `R_k[x]`.
    pub fn identity(k: usize) -> Self {
        let mut p = Poly::zero(k.max(1));
        p.coeffs[1] = 1.0;
        p
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// The degree bound `k` (number of coefficients minus one).
    pub fn k(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Actual degree, ignoring trailing zeros. The zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.iter().rposition(|&c| c != 0.0).unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0.0)
    }

    pub fn eval(&self, x: f64) -> f64 {
        eval_poly_scalar(self, x)
    }

    /// `c * p + b`.
    pub fn affine(&self, c: f64, b: f64) -> Poly {
        let mut coeffs: Vec<f64> = self.coeffs.iter().map(|a| a * c).collect();
        coeffs[0] += b;
        Poly { coeffs }
    }

    pub fn neg(&self) -> Poly {
        self.affine(-1.0, 0.0)
    }
}

/// Horner evaluation.
pub fn eval_poly_scalar(p: &Poly, x: f64) -> f64 {
    p.coeffs.iter().rev().fold(0.0, |acc, &a| acc * x + a)
}

/// Counts of positive, zero and negative eigenvalues.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Inertia {
    pub n_plus: usize,
    pub n_zero: usize,
    pub n_minus: usize,
}

/// Full eigendecomposition of an adjacency matrix together with the
/// distinct-eigenvalue grouping.
#[derive(Clone, Debug)]
pub struct Spectrum {
    /// `λ_1 >= ... >= λ_n`.
    pub full: Vec<f64>,
    /// Distinct eigenvalues, strictly decreasing.
    pub distinct: Vec<f64>,
    pub mult: Vec<usize>,
    /// `group[i]` is the index into `distinct` holding `full[i]`.
    pub group: Vec<usize>,
    /// Unit eigenvectors, `vectors[i]` belongs to `full[i]`.
    pub vectors: Vec<Vec<f64>>,
    /// Absolute grouping tolerance actually used.
    pub tol: f64,
}

impl Spectrum {
    pub fn n(&self) -> usize {
        self.full.len()
    }

    /// Index `d` of the smallest distinct eigenvalue (`d + 1` distinct values).
    pub fn d(&self) -> usize {
        self.distinct.len() - 1
    }

    pub fn spectral_radius(&self) -> f64 {
        self.full.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn inertia(&self) -> Inertia {
        let mut out = Inertia {
            n_plus: 0,
            n_zero: 0,
            n_minus: 0,
        };
        for &x in &self.full {
            if x > self.tol {
                out.n_plus += 1;
            } else if x < -self.tol {
                out.n_minus += 1;
            } else {
                out.n_zero += 1;
            }
        }
        out
    }

    /// `Σ_j m_j p(θ_j)`, the trace of `p(A)`.
    pub fn weighted_sum(&self, p: &Poly) -> f64 {
        self.distinct
            .iter()
            .zip(&self.mult)
            .map(|(&t, &m)| m as f64 * p.eval(t))
            .sum()
    }

    /// True when `λ_1 > λ_2`, i.e. the largest eigenvalue is simple.
    pub fn top_is_simple(&self) -> bool {
        self.mult.first() == Some(&1)
    }

    /// Distinct eigenvalues and multiplicities rounded to 15 significant
    /// digits, the stable JSON form.
    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("spectrum serializes")
    }
}

impl Serialize for Spectrum {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let distinct: Vec<f64> = self.distinct.iter().map(|&x| round_sig(x, 15)).collect();
        let mut st = s.serialize_struct("Spectrum", 2)?;
        st.serialize_field("distinct", &distinct)?;
        st.serialize_field("mult", &self.mult)?;
        st.end()
    }
}

/// Rounds to `digits` significant decimal digits; `-0.0` becomes `0.0`.
pub fn round_sig(x: f64, digits: usize) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { 0.0 } else { x };
    }
    let s = format!("{:.*e}", digits.saturating_sub(1), x);
    let r: f64 = s.parse().expect("formatted float parses");
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

/// Cyclic Jacobi eigendecomposition of the adjacency matrix of `g`.
pub fn eigendecompose(g: &Graph) -> Result<Spectrum> {
    eigendecompose_with_tol(g, DEFAULT_EIG_TOL)
}

/// As [`eigendecompose`], grouping eigenvalues closer than
/// `rel_tol * max(1, spectral radius)`.
pub fn eigendecompose_with_tol(g: &Graph, rel_tol: f64) -> Result<Spectrum> {
    if g.n() == 0 {
        return Err(Error::Input(
            "eigendecomposition needs at least one vertex".into(),
        ));
    }
    let (values, vectors) = jacobi_eigen(&Matrix::adjacency(g))?;
    Ok(group_spectrum(values, vectors, rel_tol))
}

fn group_spectrum(values: Vec<f64>, vectors: Vec<Vec<f64>>, rel_tol: f64) -> Spectrum {
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[b].total_cmp(&values[a]).then(a.cmp(&b)));
    let full: Vec<f64> = order.iter().map(|&i| values[i]).collect();
    let vectors: Vec<Vec<f64>> = order.iter().map(|&i| vectors[i].clone()).collect();
    let radius = full.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let tol = rel_tol * radius.max(1.0);

    let mut distinct: Vec<f64> = Vec::new();
    let mut sums: Vec<f64> = Vec::new();
    let mut mult: Vec<usize> = Vec::new();
    let mut group = Vec::with_capacity(n);
    for &x in &full {
        let same = distinct.last().is_some_and(|&last| last - x <= tol);
        if same {
            let j = distinct.len() - 1;
            sums[j] += x;
            mult[j] += 1;
            distinct[j] = sums[j] / mult[j] as f64;
        } else {
            distinct.push(x);
            sums.push(x);
            mult.push(1);
        }
        group.push(distinct.len() - 1);
    }
    Spectrum {
        full,
        distinct,
        mult,
        group,
        vectors,
        tol,
    }
}

/// Eigenvalues and eigenvectors (unsorted) of a symmetric matrix by cyclic
/// Jacobi rotations.
pub fn jacobi_eigen(m: &Matrix) -> Result<(Vec<f64>, Vec<Vec<f64>>)> {
    let n = m.n();
    let mut a = m.clone();
    let mut v = Matrix::identity(n);
    let scale = m.frobenius().max(1e-300);
    let mut converged = n <= 1;
    for _sweep in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) <= 1e-15 * scale {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                if apq.abs() <= 1e-300 {
                    continue;
                }
                let app = a[(p, p)];
                let aqq = a[(q, q)];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                rotate(&mut a, &mut v, p, q, c, s);
            }
        }
    }
    if !converged {
        let off = off_diagonal_norm(&a);
        if off > 1e-12 * scale {
            return Err(Error::Numerical(format!(
                "Jacobi iteration did not converge after {MAX_SWEEPS} sweeps (off-diagonal norm {off:.3e})"
            )));
        }
    }
    let values = a.diagonal();
    let vectors = (0..n)
        .map(|j| (0..n).map(|i| v[(i, j)]).collect())
        .collect();
    Ok((values, vectors))
}

fn off_diagonal_norm(a: &Matrix) -> f64 {
    let n = a.n();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)] * a[(i, j)];
            }
        }
    }
    s.sqrt()
}

/// Applies the rotation `J(p, q, c, s)` as `A <- J^T A J`, `V <- V J`.
fn rotate(a: &mut Matrix, v: &mut Matrix, p: usize, q: usize, c: f64, s: f64) {
    let n = a.n();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = c * akp - s * akq;
        a[(k, q)] = s * akp + c * akq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = c * apk - s * aqk;
        a[(q, k)] = s * apk + c * aqk;
    }
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = c * vkp - s * vkq;
        v[(k, q)] = s * vkp + c * vkq;
    }
}

pub fn inertia(g: &Graph) -> Result<Inertia> {
    Ok(eigendecompose(g)?.inertia())
}

/// Diagonal and spectral statistics of `p(A)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PolyStats {
    /// `max_u p(A)_uu`.
    pub w_max: f64,
    /// `min_u p(A)_uu`.
    pub w_min: f64,
    /// `min_{i in 2..=n} p(λ_i)` over the full sorted list; `None` when `n = 1`.
    pub lambda_p: Option<f64>,
    /// `p(λ_1)`.
    pub p_lambda1: f64,
}

/// Computes `p(A) = Σ a_i A^i` by iterated multiplication along with its
/// [`PolyStats`].
pub fn eval_poly_matrix(p: &Poly, g: &Graph, spectrum: &Spectrum) -> (Matrix, PolyStats) {
    let a = Matrix::adjacency(g);
    let n = g.n();
    let mut power = Matrix::identity(n);
    let mut out = Matrix::zeros(n);
    for (i, &c) in p.coeffs().iter().enumerate() {
        if i > 0 {
            power = power.mul(&a);
        }
        if c != 0.0 {
            out.add_scaled(&power, c);
        }
    }
    let stats = poly_stats_from_diagonal(p, &out.diagonal(), spectrum);
    (out, stats)
}

pub(crate) fn poly_stats_from_diagonal(p: &Poly, diag: &[f64], spectrum: &Spectrum) -> PolyStats {
    let w_max = diag.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let w_min = diag.iter().copied().fold(f64::INFINITY, f64::min);
    let lambda_p = spectrum.full[1..]
        .iter()
        .map(|&x| p.eval(x))
        .reduce(f64::min);
    PolyStats {
        w_max,
        w_min,
        lambda_p,
        p_lambda1: p.eval(spectrum.full[0]),
    }
}

/// `diag[i][v] = (A^i)_vv` for `i in 0..=k`, by propagating unit vectors
/// through the adjacency lists.
pub fn power_diagonals(g: &Graph, k: usize) -> Vec<Vec<f64>> {
    let n = g.n();
    let lists = g.adjacency_lists();
    let mut out = vec![vec![0.0; n]; k + 1];
    for v in 0..n {
        out[0][v] = 1.0;
        let mut x = vec![0.0; n];
        x[v] = 1.0;
        for row in out.iter_mut().skip(1) {
            x = lists
                .iter()
                .map(|nb| nb.iter().map(|&w| x[w]).sum())
                .collect();
            row[v] = x[v];
        }
    }
    out
}

/// `p(A)_vv` for every vertex, from precomputed [`power_diagonals`].
pub fn poly_diagonal(p: &Poly, diags: &[Vec<f64>]) -> Vec<f64> {
    let n = diags.first().map_or(0, Vec::len);
    (0..n)
        .map(|v| p.coeffs().iter().zip(diags).map(|(&a, d)| a * d[v]).sum())
        .collect()
}
