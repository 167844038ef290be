//! Projector algebra for quantum k-distance colorings.
//!
//! A quantum k-distance c-coloring of `G` in dimension `d` is a family of
//! orthogonal projectors `P_{v,h}` on `ℂ^d` with `Σ_h P_{v,h} = I_d` for
//! every vertex and `P_{v,h} P_{w,h} = 0` whenever `0 < dist(v, w) <= k`.
//!
//! The block projectors `P_s = Σ_v e_v e_v† ⊗ P_{v,s}` resolve the identity
//! on `ℂ^{nd}` and define the pinching `C_P(X) = Σ_s P_s X P_s`. For a
//! coloring, `C_P(A^ℓ ⊗ I_d) = diag(A^ℓ) ⊗ I_d` for `ℓ <= k`: the pinching
//! annihilates every off-diagonal entry of the walk matrices, and for
//! `ℓ = 1` the whole matrix.
//!
//! Everything here is dense and numerical, with a small complex kernel of
//! its own.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::ops::{Index, IndexMut};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{distances, Graph};
use crate::spectral::{Matrix, Poly};

pub const DEFAULT_QTOL: f64 = 1e-10;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Dense square complex matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(n: usize) -> Self {
        ComplexMatrix {
            n,
            data: vec![ZERO; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_row_major(n: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != n * n {
            return Err(Error::Structure(format!(
                "expected {} entries for a {n}x{n} matrix, got {}",
                n * n,
                data.len()
            )));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Input("matrix has non-finite entries".into()));
        }
        Ok(ComplexMatrix { n, data })
    }

    pub fn from_real(m: &Matrix) -> Self {
        let n = m.n();
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = Complex64::new(m[(i, j)], 0.0);
            }
        }
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn mul(&self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for l in 0..n {
                let a = self.data[i * n + l];
                if a == ZERO {
                    continue;
                }
                let row = &other.data[l * n..(l + 1) * n];
                let dst = &mut out.data[i * n..(i + 1) * n];
                for (d, &b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
        }
        out
    }

    pub fn adjoint(&self) -> ComplexMatrix {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.data[j * n + i] = self.data[i * n + j].conj();
            }
        }
        out
    }

    pub fn add(&self, other: &ComplexMatrix) -> ComplexMatrix {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &ComplexMatrix) -> ComplexMatrix {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, s: Complex64) -> ComplexMatrix {
        ComplexMatrix {
            n: self.n,
            data: self.data.iter().map(|&z| z * s).collect(),
        }
    }

    fn zip_with(
        &self,
        other: &ComplexMatrix,
        f: impl Fn(Complex64, Complex64) -> Complex64,
    ) -> ComplexMatrix {
        assert_eq!(self.n, other.n, "dimension mismatch");
        ComplexMatrix {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.n).map(|i| self.data[i * self.n + i]).sum()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, z| m.max(z.norm()))
    }

    /// `max |X - Y|` over entries.
    pub fn dist(&self, other: &ComplexMatrix) -> f64 {
        assert_eq!(self.n, other.n, "dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .fold(0.0, |m, (a, b)| m.max((a - b).norm()))
    }

    /// `X ⊗ I_d`.
    pub fn kron_identity(&self, d: usize) -> ComplexMatrix {
        let n = self.n;
        let mut out = Self::zeros(n * d);
        for i in 0..n {
            for j in 0..n {
                let z = self.data[i * n + j];
                if z == ZERO {
                    continue;
                }
                for t in 0..d {
                    out[(i * d + t, j * d + t)] = z;
                }
            }
        }
        out
    }

    /// The `d x d` block at block position `(v, w)`.
    pub fn block(&self, v: usize, w: usize, d: usize) -> ComplexMatrix {
        let mut out = Self::zeros(d);
        for a in 0..d {
            for b in 0..d {
                out[(a, b)] = self[(v * d + a, w * d + b)];
            }
        }
        out
    }

    /// `max(|P - P†|, |P² - P|)`.
    pub fn projector_residual(&self) -> f64 {
        self.dist(&self.adjoint()).max(self.mul(self).dist(self))
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.dist(&self.adjoint()) <= tol
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.n + j]
    }
}

/// Eigen-decomposition of a Hermitian matrix by complex cyclic Jacobi.
/// Eigenvalues are returned in decreasing order; column `i` of the second
/// matrix is the matching unit eigenvector.
pub fn hermitian_eigen(h: &ComplexMatrix) -> Result<(Vec<f64>, ComplexMatrix)> {
    let n = h.n;
    let mut a = h.clone();
    let mut v = ComplexMatrix::identity(n);
    let fro: f64 = a.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let target = 1e-15 * fro.max(f64::MIN_POSITIVE);
    let off = |a: &ComplexMatrix| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += a[(i, j)].norm_sqr();
                }
            }
        }
        s.sqrt()
    };
    let mut converged = off(&a) <= target;
    for _ in 0..100 {
        if converged {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let hpq = a[(p, q)];
                let r = hpq.norm();
                if r <= 1e-300 {
                    continue;
                }
                let phase = hpq / r;
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let tau = (aqq - app) / (2.0 * r);
                let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // V = diag(1, conj(phase)) * [[c, s], [-s, c]]
                let v00 = Complex64::new(c, 0.0);
                let v01 = Complex64::new(s, 0.0);
                let v10 = -phase.conj() * s;
                let v11 = phase.conj() * c;
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * v00 + akq * v10;
                    a[(k, q)] = akp * v01 + akq * v11;
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * v00 + vkq * v10;
                    v[(k, q)] = vkp * v01 + vkq * v11;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = v00.conj() * apk + v10.conj() * aqk;
                    a[(q, k)] = v01.conj() * apk + v11.conj() * aqk;
                }
                a[(p, q)] = ZERO;
                a[(q, p)] = ZERO;
            }
        }
        converged = off(&a) <= target;
    }
    if !converged {
        return Err(Error::Numerical(
            "complex Jacobi iteration did not converge in 100 sweeps".into(),
        ));
    }
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&i, &j| a[(j, j)].re.total_cmp(&a[(i, i)].re));
    let vals = idx.iter().map(|&i| a[(i, i)].re).collect();
    let mut vecs = ComplexMatrix::zeros(n);
    for (col, &i) in idx.iter().enumerate() {
        for r in 0..n {
            vecs[(r, col)] = v[(r, i)];
        }
    }
    Ok((vals, vecs))
}

/// Numerical rank of a positive semidefinite matrix by diagonally pivoted
/// Cholesky; pivots at or below `tol` end the factorization.
pub fn psd_rank(m: &ComplexMatrix, tol: f64) -> usize {
    let n = m.n;
    let mut a = m.clone();
    let mut rank = 0;
    let mut used = vec![false; n];
    for _ in 0..n {
        let Some(piv) = (0..n)
            .filter(|&i| !used[i])
            .max_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re))
        else {
            break;
        };
        let d = a[(piv, piv)].re;
        if d <= tol {
            break;
        }
        used[piv] = true;
        rank += 1;
        let col: Vec<Complex64> = (0..n).map(|i| a[(i, piv)]).collect();
        for i in 0..n {
            for j in 0..n {
                a[(i, j)] -= col[i] * col[j].conj() / d;
            }
        }
    }
    rank
}

// ---------------------------------------------------------------------------
// Colorings

/// Projectors `P_{v,h}` for `v < n`, `h < c`, each `d x d`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuantumColoring {
    pub n: usize,
    pub c: usize,
    pub d: usize,
    projectors: Vec<ComplexMatrix>,
}

impl QuantumColoring {
    /// `projectors[v * c + h]` is `P_{v,h}`.
    pub fn new(n: usize, c: usize, d: usize, projectors: Vec<ComplexMatrix>) -> Result<Self> {
        if projectors.len() != n * c {
            return Err(Error::Structure(format!(
                "expected {} projectors, got {}",
                n * c,
                projectors.len()
            )));
        }
        if let Some(p) = projectors.iter().find(|p| p.n != d) {
            return Err(Error::Structure(format!(
                "projector of dimension {} in a dimension-{d} family",
                p.n
            )));
        }
        Ok(QuantumColoring {
            n,
            c,
            d,
            projectors,
        })
    }

    pub fn get(&self, v: usize, h: usize) -> &ComplexMatrix {
        &self.projectors[v * self.c + h]
    }

    pub fn get_mut(&mut self, v: usize, h: usize) -> &mut ComplexMatrix {
        &mut self.projectors[v * self.c + h]
    }

    pub fn projectors(&self) -> &[ComplexMatrix] {
        &self.projectors
    }
}

/// `P_{v,h} = [coloring[v] == h]` as `1 x 1` matrices.
pub fn lift_classical(coloring: &[usize], c: usize) -> Result<QuantumColoring> {
    if let Some((v, &h)) = coloring.iter().enumerate().find(|(_, &h)| h >= c) {
        return Err(Error::Input(format!(
            "vertex {v} has color {h}, outside 0..{c}"
        )));
    }
    let projectors = coloring
        .iter()
        .flat_map(|&col| {
            (0..c).map(move |h| {
                if h == col {
                    ComplexMatrix::identity(1)
                } else {
                    ComplexMatrix::zeros(1)
                }
            })
        })
        .collect();
    QuantumColoring::new(coloring.len(), c, 1, projectors)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    Projector,
    Completeness,
    Orthogonality,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub v: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub w: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h: Option<usize>,
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub pass: bool,
    pub max_residual: f64,
    pub projector_residual: f64,
    pub completeness_residual: f64,
    pub orthogonality_residual: f64,
    pub violations: Vec<Violation>,
}

/// Projector, completeness and orthogonality violations at one vertex, with
/// the largest residual of each kind.
type VertexCheck = (Vec<Violation>, Vec<Violation>, Vec<Violation>, [f64; 3]);

/// Checks the projector property, completeness at every vertex, and
/// `P_{v,h} P_{w,h} = 0` for all `v != w` with `dist(v, w) <= k`.
/// Violations are listed by kind, then `(v, w, h)` lexicographically.
pub fn verify_quantum_coloring(
    qc: &QuantumColoring,
    g: &Graph,
    k: usize,
    tol: f64,
) -> Result<Verdict> {
    if qc.n != g.n() {
        return Err(Error::Structure(format!(
            "coloring has {} vertices, graph has {}",
            qc.n,
            g.n()
        )));
    }
    let n = qc.n;
    let dist = distances(g);
    let id = ComplexMatrix::identity(qc.d);
    let per_vertex: Vec<VertexCheck> = (0..n)
        .into_par_iter()
        .map(|v| {
            let mut proj = Vec::new();
            let mut comp = Vec::new();
            let mut orth = Vec::new();
            let mut res = [0.0f64; 3];
            let mut sum = ComplexMatrix::zeros(qc.d);
            for h in 0..qc.c {
                let p = qc.get(v, h);
                let r = p.projector_residual();
                res[0] = res[0].max(r);
                if r > tol {
                    proj.push(Violation {
                        kind: ViolationKind::Projector,
                        v,
                        w: None,
                        h: Some(h),
                        residual: r,
                    });
                }
                sum = sum.add(p);
            }
            let r = sum.dist(&id);
            res[1] = r;
            if r > tol {
                comp.push(Violation {
                    kind: ViolationKind::Completeness,
                    v,
                    w: None,
                    h: None,
                    residual: r,
                });
            }
            for w in v + 1..n {
                if !dist.within(v, w, k) {
                    continue;
                }
                for h in 0..qc.c {
                    let r = qc.get(v, h).mul(qc.get(w, h)).max_abs();
                    res[2] = res[2].max(r);
                    if r > tol {
                        orth.push(Violation {
                            kind: ViolationKind::Orthogonality,
                            v,
                            w: Some(w),
                            h: Some(h),
                            residual: r,
                        });
                    }
                }
            }
            (proj, comp, orth, res)
        })
        .collect();
    let mut res = [0.0f64; 3];
    let mut buckets: [Vec<Violation>; 3] = Default::default();
    for (a, b, c, r) in per_vertex {
        buckets[0].extend(a);
        buckets[1].extend(b);
        buckets[2].extend(c);
        for i in 0..3 {
            res[i] = res[i].max(r[i]);
        }
    }
    let violations: Vec<Violation> = buckets.into_iter().flatten().collect();
    Ok(Verdict {
        pass: violations.is_empty(),
        max_residual: res.iter().copied().fold(0.0, f64::max),
        projector_residual: res[0],
        completeness_residual: res[1],
        orthogonality_residual: res[2],
        violations,
    })
}

// ---------------------------------------------------------------------------
// Pinching

/// Projectors `P_1..P_c` on `ℂ^{nd}`.
#[derive(Clone, Debug, PartialEq)]
pub struct PinchingFamily {
    pub n: usize,
    pub d: usize,
    pub projectors: Vec<ComplexMatrix>,
    /// Every `P_s` vanishes outside the diagonal `d x d` blocks.
    pub block_diagonal: bool,
}

impl PinchingFamily {
    pub fn new(n: usize, d: usize, projectors: Vec<ComplexMatrix>) -> Result<Self> {
        if projectors.is_empty() {
            return Err(Error::Structure("empty projector family".into()));
        }
        if let Some(p) = projectors.iter().find(|p| p.n != n * d) {
            return Err(Error::Structure(format!(
                "projector of dimension {} where {} was expected",
                p.n,
                n * d
            )));
        }
        let block_diagonal = projectors
            .iter()
            .all(|p| (0..n * d).all(|i| (0..n * d).all(|j| i / d == j / d || p[(i, j)] == ZERO)));
        Ok(PinchingFamily {
            n,
            d,
            projectors,
            block_diagonal,
        })
    }

    pub fn c(&self) -> usize {
        self.projectors.len()
    }

    /// `|Σ_s P_s - I|`.
    pub fn resolution_residual(&self) -> f64 {
        let mut sum = ComplexMatrix::zeros(self.n * self.d);
        for p in &self.projectors {
            sum = sum.add(p);
        }
        sum.dist(&ComplexMatrix::identity(self.n * self.d))
    }

    /// `U = Σ_s ω^s P_s` with `ω = e^{2πi/c}` and `s` counted from 1.
    pub fn unitary(&self) -> ComplexMatrix {
        let c = self.c();
        let mut u = ComplexMatrix::zeros(self.n * self.d);
        for (i, p) in self.projectors.iter().enumerate() {
            let w = Complex64::from_polar(1.0, 2.0 * PI * (i + 1) as f64 / c as f64);
            u = u.add(&p.scale(w));
        }
        u
    }
}

/// `P_s = Σ_v e_v e_v† ⊗ P_{v,s}`.
pub fn build_pinching(qc: &QuantumColoring, tol: f64) -> Result<PinchingFamily> {
    let (n, d) = (qc.n, qc.d);
    for v in 0..n {
        for h in 0..qc.c {
            let r = qc.get(v, h).projector_residual();
            if r > tol {
                return Err(Error::TheoremViolation {
                    residual: r,
                    reason: format!("P_({v},{h}) is not a projector"),
                });
            }
        }
    }
    let projectors: Vec<ComplexMatrix> = (0..qc.c)
        .map(|s| {
            let mut p = ComplexMatrix::zeros(n * d);
            for v in 0..n {
                let b = qc.get(v, s);
                for a in 0..d {
                    for bb in 0..d {
                        p[(v * d + a, v * d + bb)] = b[(a, bb)];
                    }
                }
            }
            p
        })
        .collect();
    let fam = PinchingFamily::new(n, d, projectors)?;
    let r = fam.resolution_residual();
    if r > tol {
        return Err(Error::TheoremViolation {
            residual: r,
            reason: "block projectors do not resolve the identity".into(),
        });
    }
    Ok(fam)
}

/// `C_P(X) = Σ_s P_s X P_s`.
pub fn pinch(fam: &PinchingFamily, x: &ComplexMatrix) -> Result<ComplexMatrix> {
    if x.n != fam.n * fam.d {
        return Err(Error::Structure(format!(
            "matrix of dimension {} cannot be pinched by a family on {}",
            x.n,
            fam.n * fam.d
        )));
    }
    let mut out = ComplexMatrix::zeros(x.n);
    for p in &fam.projectors {
        out = out.add(&p.mul(x).mul(p));
    }
    Ok(out)
}

/// Residuals of the pinching conditions for walks of length `1..=k`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PinchingResiduals {
    /// `|C_P(A^ℓ ⊗ I) - diag(A^ℓ) ⊗ I|`, indexed by `ℓ - 1`.
    pub walk: Vec<f64>,
    /// `|C_P(A^ℓ ⊗ I)|`: zero only for `ℓ = 1` or when `A^ℓ` has zero
    /// diagonal.
    pub walk_total: Vec<f64>,
    /// `max_v |C_P(E_v ⊗ I) - E_v ⊗ I|` over the diagonal units `E_v`.
    pub diagonal: f64,
}

impl PinchingResiduals {
    pub fn max(&self) -> f64 {
        self.walk.iter().copied().fold(self.diagonal, f64::max)
    }
}

pub fn pinching_residuals(fam: &PinchingFamily, g: &Graph, k: usize) -> Result<PinchingResiduals> {
    if g.n() != fam.n {
        return Err(Error::Structure(format!(
            "family on {} vertices, graph has {}",
            fam.n,
            g.n()
        )));
    }
    let a = Matrix::adjacency(g);
    let mut pow = Matrix::identity(g.n());
    let mut walk = Vec::with_capacity(k);
    let mut walk_total = Vec::with_capacity(k);
    for _ in 0..k {
        pow = pow.mul(&a);
        let x = ComplexMatrix::from_real(&pow).kron_identity(fam.d);
        let px = pinch(fam, &x)?;
        let mut diag = ComplexMatrix::zeros(g.n());
        for (v, w) in pow.diagonal().into_iter().enumerate() {
            diag[(v, v)] = Complex64::new(w, 0.0);
        }
        let diag = diag.kron_identity(fam.d);
        walk.push(px.dist(&diag));
        walk_total.push(px.max_abs());
    }
    let mut diagonal = 0.0f64;
    for v in 0..g.n() {
        let mut e = ComplexMatrix::zeros(g.n());
        e[(v, v)] = ONE;
        let x = e.kron_identity(fam.d);
        diagonal = diagonal.max(pinch(fam, &x)?.dist(&x));
    }
    Ok(PinchingResiduals {
        walk,
        walk_total,
        diagonal,
    })
}

/// Recovers `P_{v,s}` as the diagonal blocks of a pinching family that
/// satisfies the walk and diagonal conditions up to `k`.
pub fn pinching_to_coloring(
    fam: &PinchingFamily,
    g: &Graph,
    k: usize,
    tol: f64,
) -> Result<QuantumColoring> {
    if !fam.block_diagonal {
        return Err(Error::Structure(
            "projectors are not block diagonal over the vertices".into(),
        ));
    }
    let r = fam.resolution_residual();
    if r > tol {
        return Err(Error::TheoremViolation {
            residual: r,
            reason: "family does not resolve the identity".into(),
        });
    }
    let res = pinching_residuals(fam, g, k)?;
    if res.max() > tol {
        return Err(Error::TheoremViolation {
            residual: res.max(),
            reason: "pinching conditions fail".into(),
        });
    }
    let c = fam.c();
    let mut projectors = Vec::with_capacity(fam.n * c);
    for v in 0..fam.n {
        for p in &fam.projectors {
            projectors.push(p.block(v, v, fam.d));
        }
    }
    let qc = QuantumColoring::new(fam.n, c, fam.d, projectors)?;
    let verdict = verify_quantum_coloring(&qc, g, k, tol)?;
    if !verdict.pass {
        return Err(Error::TheoremViolation {
            residual: verdict.max_residual,
            reason: format!(
                "extracted blocks fail verification ({} violations)",
                verdict.violations.len()
            ),
        });
    }
    Ok(qc)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct UnitaryCheck {
    /// `|C_P(X) - (1/c) Σ_{ℓ=0}^{c-1} U^ℓ X U^{-ℓ}|`.
    pub residual: f64,
    /// `|U U† - I|`.
    pub unitarity: f64,
}

fn orbit_terms(u: &ComplexMatrix, x: &ComplexMatrix, c: usize) -> Vec<ComplexMatrix> {
    let ud = u.adjoint();
    let mut terms = Vec::with_capacity(c);
    let mut cur = x.clone();
    for _ in 0..c {
        terms.push(cur.clone());
        cur = u.mul(&cur).mul(&ud);
    }
    terms
}

pub fn pinching_unitary_identity(fam: &PinchingFamily, x: &ComplexMatrix) -> Result<UnitaryCheck> {
    let c = fam.c();
    let u = fam.unitary();
    let unitarity = u.mul(&u.adjoint()).dist(&ComplexMatrix::identity(u.n));
    let mut avg = ComplexMatrix::zeros(x.n);
    for t in orbit_terms(&u, x, c) {
        avg = avg.add(&t);
    }
    let avg = avg.scale(Complex64::new(1.0 / c as f64, 0.0));
    Ok(UnitaryCheck {
        residual: pinch(fam, x)?.dist(&avg),
        unitarity,
    })
}

/// `|-M - Σ_{ℓ=1}^{c-1} U^ℓ M U^{-ℓ}|`; vanishes exactly when the pinching
/// annihilates `M`.
pub fn orbit_sum_residual(fam: &PinchingFamily, m: &ComplexMatrix) -> Result<f64> {
    if m.n != fam.n * fam.d {
        return Err(Error::Structure("dimension mismatch".into()));
    }
    let terms = orbit_terms(&fam.unitary(), m, fam.c());
    let mut sum = m.clone();
    for t in &terms[1..] {
        sum = sum.add(t);
    }
    Ok(sum.max_abs())
}

/// Positive and negative parts of `p(A) ⊗ I_d`.
#[derive(Clone, Debug)]
pub struct SignSplit {
    pub p_b: ComplexMatrix,
    pub p_c: ComplexMatrix,
    pub p_plus: ComplexMatrix,
    pub p_minus: ComplexMatrix,
    /// `|p(B) - p(C) - p(A) ⊗ I|`.
    pub split_residual: f64,
    pub min_eig_b: f64,
    pub min_eig_c: f64,
    pub rank_b: usize,
    pub rank_c: usize,
}

/// `p(B) = P⁺ M P⁺` and `p(C) = -P⁻ M P⁻` for `M = p(A) ⊗ I_d`, where
/// `P^±` project onto the eigenvectors of `M` with positive and negative
/// eigenvalue.
pub fn sign_split(g: &Graph, p: &Poly, d: usize) -> Result<SignSplit> {
    let a = Matrix::adjacency(g);
    let n = g.n();
    let id = Matrix::identity(n);
    let mut pa = Matrix::zeros(n);
    for &coef in p.coeffs().iter().rev() {
        pa = pa.mul(&a);
        pa.add_scaled(&id, coef);
    }
    let m = ComplexMatrix::from_real(&pa).kron_identity(d);
    let (vals, vecs) = hermitian_eigen(&m)?;
    let scale = vals.iter().fold(1.0f64, |s, v| s.max(v.abs()));
    let tol = 1e-9 * scale;
    let proj = |keep: &dyn Fn(f64) -> bool| {
        let mut out = ComplexMatrix::zeros(m.n);
        for (col, &lam) in vals.iter().enumerate() {
            if !keep(lam) {
                continue;
            }
            for i in 0..m.n {
                for j in 0..m.n {
                    out[(i, j)] += vecs[(i, col)] * vecs[(j, col)].conj();
                }
            }
        }
        out
    };
    let p_plus = proj(&|l| l > tol);
    let p_minus = proj(&|l| l < -tol);
    let p_b = p_plus.mul(&m).mul(&p_plus);
    let p_c = p_minus
        .mul(&m)
        .mul(&p_minus)
        .scale(Complex64::new(-1.0, 0.0));
    let split_residual = p_b.sub(&p_c).dist(&m);
    let min_eig = |x: &ComplexMatrix| -> Result<f64> {
        Ok(hermitian_eigen(x)?.0.last().copied().unwrap_or(0.0))
    };
    Ok(SignSplit {
        min_eig_b: min_eig(&p_b)?,
        min_eig_c: min_eig(&p_c)?,
        rank_b: psd_rank(&p_b, tol),
        rank_c: psd_rank(&p_c, tol),
        p_b,
        p_c,
        p_plus,
        p_minus,
        split_residual,
    })
}

// ---------------------------------------------------------------------------
// JSON

#[derive(Serialize, Deserialize)]
struct ProjectorEntry {
    v: usize,
    h: usize,
    matrix: Vec<[f64; 2]>,
}

/// Parses a JSON array of `{v, h, matrix: [[re, im], ...]}` entries, each
/// matrix `d x d` in row-major order; `v` and `h` are 0-based.
pub fn parse_projectors_json(text: &str) -> Result<QuantumColoring> {
    let entries: Vec<ProjectorEntry> =
        serde_json::from_str(text).map_err(|e| Error::Input(format!("projector JSON: {e}")))?;
    if entries.is_empty() {
        return Err(Error::Structure("no projectors given".into()));
    }
    let len = entries[0].matrix.len();
    let d = (len as f64).sqrt().round() as usize;
    if d * d != len || d == 0 {
        return Err(Error::Structure(format!(
            "matrix with {len} entries is not square"
        )));
    }
    let n = entries.iter().map(|e| e.v).max().unwrap() + 1;
    let c = entries.iter().map(|e| e.h).max().unwrap() + 1;
    let mut map = BTreeMap::new();
    for e in entries {
        if e.matrix.len() != len {
            return Err(Error::Structure(format!(
                "projector ({}, {}) has {} entries, expected {len}",
                e.v,
                e.h,
                e.matrix.len()
            )));
        }
        let key = (e.v, e.h);
        let m = ComplexMatrix::from_row_major(
            d,
            e.matrix
                .iter()
                .map(|z| Complex64::new(z[0], z[1]))
                .collect(),
        )?;
        if map.insert(key, m).is_some() {
            return Err(Error::Structure(format!(
                "duplicate projector ({}, {})",
                key.0, key.1
            )));
        }
    }
    let mut projectors = Vec::with_capacity(n * c);
    for v in 0..n {
        for h in 0..c {
            projectors.push(
                map.remove(&(v, h))
                    .ok_or_else(|| Error::Structure(format!("missing projector ({v}, {h})")))?,
            );
        }
    }
    QuantumColoring::new(n, c, d, projectors)
}

pub fn projectors_to_json(qc: &QuantumColoring) -> serde_json::Value {
    let entries: Vec<ProjectorEntry> = (0..qc.n)
        .flat_map(|v| (0..qc.c).map(move |h| (v, h)))
        .map(|(v, h)| ProjectorEntry {
            v,
            h,
            matrix: qc.get(v, h).data.iter().map(|z| [z.re, z.im]).collect(),
        })
        .collect();
    serde_json::to_value(entries).expect("projector entries serialize")
}
