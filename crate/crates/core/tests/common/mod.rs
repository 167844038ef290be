#![allow(clippy::needless_range_loop)]

//! Reference implementations used to check the library. Each one is
//! written from the definitions, as slow and plain as possible, and shares
//! no code with the crate under test.

#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

// ---------------------------------------------------------------------------
// Graphs as plain adjacency matrices

pub type Adj = Vec<Vec<bool>>;

pub fn adj_from_edges(n: usize, edges: &[(usize, usize)]) -> Adj {
    let mut a = vec![vec![false; n]; n];
    for &(u, v) in edges {
        a[u][v] = true;
        a[v][u] = true;
    }
    a
}

pub fn random_adj(rng: &mut impl Rng, n: usize, p: f64) -> Adj {
    let mut a = vec![vec![false; n]; n];
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                a[u][v] = true;
                a[v][u] = true;
            }
        }
    }
    a
}

pub fn edges_of(a: &Adj) -> Vec<(usize, usize)> {
    let n = a.len();
    let mut out = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if a[u][v] {
                out.push((u, v));
            }
        }
    }
    out
}

pub fn is_connected(a: &Adj) -> bool {
    let n = a.len();
    if n == 0 {
        return true;
    }
    let mut seen = vec![false; n];
    let mut q = VecDeque::from([0]);
    seen[0] = true;
    while let Some(u) = q.pop_front() {
        for v in 0..n {
            if a[u][v] && !seen[v] {
                seen[v] = true;
                q.push_back(v);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// All-pairs distances, `u32::MAX` for unreachable pairs.
pub fn floyd_warshall(a: &Adj) -> Vec<Vec<u32>> {
    let n = a.len();
    let inf = u32::MAX;
    let mut d = vec![vec![inf; n]; n];
    for u in 0..n {
        d[u][u] = 0;
        for v in 0..n {
            if a[u][v] {
                d[u][v] = 1;
            }
        }
    }
    for m in 0..n {
        for u in 0..n {
            for v in 0..n {
                if d[u][m] != inf && d[m][v] != inf && d[u][m] + d[m][v] < d[u][v] {
                    d[u][v] = d[u][m] + d[m][v];
                }
            }
        }
    }
    d
}

pub fn power_adj(a: &Adj, k: usize) -> Adj {
    let d = floyd_warshall(a);
    let n = a.len();
    (0..n)
        .map(|u| (0..n).map(|v| u != v && d[u][v] <= k as u32).collect())
        .collect()
}

/// Chromatic number by trying `c = 1, 2, ...` with plain backtracking in
/// vertex order.
pub fn brute_chromatic(a: &Adj) -> usize {
    let n = a.len();
    if n == 0 {
        return 0;
    }
    // colors are introduced in order, so x <= used
    fn fits(a: &Adj, col: &mut Vec<usize>, v: usize, used: usize, c: usize) -> bool {
        if v == a.len() {
            return true;
        }
        for x in 0..c.min(used + 1) {
            if (0..v).all(|u| !a[u][v] || col[u] != x) {
                col[v] = x;
                if fits(a, col, v + 1, used.max(x + 1), c) {
                    return true;
                }
            }
        }
        false
    }
    let mut col = vec![0; n];
    (1..=n).find(|&c| fits(a, &mut col, 0, 0, c)).unwrap()
}

/// Independence number over all vertex subsets.
pub fn brute_independence(a: &Adj) -> usize {
    let n = a.len();
    assert!(n <= 20);
    let mut best = 0;
    for mask in 0u32..(1 << n) {
        let size = mask.count_ones() as usize;
        if size <= best {
            continue;
        }
        let ok = (0..n)
            .all(|u| mask >> u & 1 == 0 || (u + 1..n).all(|v| mask >> v & 1 == 0 || !a[u][v]));
        if ok {
            best = size;
        }
    }
    best
}

// ---------------------------------------------------------------------------
// Isomorphism and exhaustive generation

/// Backtracking isomorphism test with degree filtering.
pub fn isomorphic(a: &Adj, b: &Adj) -> bool {
    let n = a.len();
    if n != b.len() {
        return false;
    }
    let deg = |g: &Adj, v: usize| g[v].iter().filter(|&&x| x).count();
    let mut da: Vec<usize> = (0..n).map(|v| deg(a, v)).collect();
    let mut db: Vec<usize> = (0..n).map(|v| deg(b, v)).collect();
    let (sa, sb) = (da.clone(), db.clone());
    da.sort();
    db.sort();
    if da != db {
        return false;
    }
    fn extend(
        a: &Adj,
        b: &Adj,
        sa: &[usize],
        sb: &[usize],
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        let v = map.len();
        if v == a.len() {
            return true;
        }
        for w in 0..b.len() {
            if used[w] || sa[v] != sb[w] {
                continue;
            }
            if (0..v).all(|u| a[u][v] == b[map[u]][w]) {
                map.push(w);
                used[w] = true;
                if extend(a, b, sa, sb, map, used) {
                    return true;
                }
                map.pop();
                used[w] = false;
            }
        }
        false
    }
    extend(a, b, &sa, &sb, &mut Vec::new(), &mut vec![false; n])
}

/// Canonical form: the lexicographically largest upper-triangle bit string
/// over all relabellings that list vertices by non-increasing degree.
pub fn canonical_form(a: &Adj) -> Vec<bool> {
    let n = a.len();
    let deg: Vec<usize> = (0..n)
        .map(|v| a[v].iter().filter(|&&x| x).count())
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| deg[y].cmp(&deg[x]));
    // cells of equal degree, in order
    let mut cells: Vec<Vec<usize>> = Vec::new();
    for &v in &order {
        match cells.last_mut() {
            Some(c) if deg[c[0]] == deg[v] => c.push(v),
            _ => cells.push(vec![v]),
        }
    }
    let mut best: Option<Vec<bool>> = None;
    let mut perm = Vec::with_capacity(n);
    fn rec(
        a: &Adj,
        cells: &[Vec<usize>],
        ci: usize,
        used: &mut Vec<bool>,
        perm: &mut Vec<usize>,
        best: &mut Option<Vec<bool>>,
    ) {
        if ci == cells.len() {
            let n = perm.len();
            let mut bits = Vec::with_capacity(n * (n - 1) / 2);
            for i in 0..n {
                for j in i + 1..n {
                    bits.push(a[perm[i]][perm[j]]);
                }
            }
            if best.as_ref().is_none_or(|b| bits > *b) {
                *best = Some(bits);
            }
            return;
        }
        let cell = &cells[ci];
        let placed_in_cell = cell.iter().filter(|&&v| used[v]).count();
        if placed_in_cell == cell.len() {
            rec(a, cells, ci + 1, used, perm, best);
            return;
        }
        for &v in cell {
            if used[v] {
                continue;
            }
            used[v] = true;
            perm.push(v);
            rec(a, cells, ci, used, perm, best);
            perm.pop();
            used[v] = false;
        }
    }
    rec(a, &cells, 0, &mut vec![false; n], &mut perm, &mut best);
    best.unwrap_or_default()
}

/// One representative of every isomorphism class of connected graphs on
/// `n` vertices. Each such graph has a vertex whose removal keeps it
/// connected, so extending the classes on `n - 1` vertices by one vertex
/// with a non-empty neighbourhood reaches all of them.
pub fn connected_graphs(n: usize) -> Vec<Adj> {
    assert!(n >= 1);
    if n == 1 {
        return vec![vec![vec![false]]];
    }
    let smaller = connected_graphs(n - 1);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for g in &smaller {
        for mask in 1u32..(1 << (n - 1)) {
            let mut a: Adj = g
                .iter()
                .map(|row| row.iter().copied().chain([false]).collect())
                .collect();
            a.push(vec![false; n]);
            for u in 0..n - 1 {
                if mask >> u & 1 == 1 {
                    a[u][n - 1] = true;
                    a[n - 1][u] = true;
                }
            }
            if seen.insert(canonical_form(&a)) {
                out.push(a);
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// graph6

/// Decodes graph6 for `n < 63` straight from the format description.
pub fn decode_graph6_small(s: &str) -> Adj {
    let bytes: Vec<u8> = s.trim_end().bytes().collect();
    let n = (bytes[0] - 63) as usize;
    assert!(n < 63);
    let mut bits = Vec::new();
    for &b in &bytes[1..] {
        let x = b - 63;
        for i in (0..6).rev() {
            bits.push(x >> i & 1 == 1);
        }
    }
    let mut a = vec![vec![false; n]; n];
    let mut idx = 0;
    for j in 1..n {
        for i in 0..j {
            if bits[idx] {
                a[i][j] = true;
                a[j][i] = true;
            }
            idx += 1;
        }
    }
    a
}

// ---------------------------------------------------------------------------
// Exact rational linear programming by Fourier-Motzkin elimination

pub type Q = BigRational;

pub fn q(x: i64) -> Q {
    BigRational::from_integer(BigInt::from(x))
}

/// `Σ coeffs·x <= rhs` or `= rhs`.
#[derive(Clone, Debug)]
pub struct QRow {
    pub coeffs: Vec<Q>,
    pub eq: bool,
    pub rhs: Q,
}

#[derive(Clone, Debug, PartialEq)]
pub enum QOutcome {
    Infeasible,
    Unbounded,
    Optimal(Q),
}

/// Maximizes `c·x` subject to `rows`. Introduces `t = c·x`, removes every
/// other variable, and reads the optimum off the remaining bounds on `t`.
pub fn fm_maximize(c: &[Q], rows: &[QRow]) -> QOutcome {
    let nv = c.len();
    // variables 0..nv are x, variable nv is t
    let mut eqs: Vec<(Vec<Q>, Q)> = Vec::new();
    let mut les: Vec<(Vec<Q>, Q)> = Vec::new();
    for r in rows {
        let mut v = r.coeffs.clone();
        v.push(Q::zero());
        if r.eq {
            eqs.push((v, r.rhs.clone()));
        } else {
            les.push((v, r.rhs.clone()));
        }
    }
    let mut tdef: Vec<Q> = c.iter().map(|x| -x.clone()).collect();
    tdef.push(Q::one());
    eqs.push((tdef, Q::zero()));

    let mut alive: Vec<usize> = (0..nv).collect();
    // substitute equalities first
    while let Some(pos) = eqs
        .iter()
        .position(|(v, _)| alive.iter().any(|&j| !v[j].is_zero()))
    {
        let (v, b) = eqs.swap_remove(pos);
        let j = *alive.iter().find(|&&j| !v[j].is_zero()).unwrap();
        let piv = v[j].clone();
        let sub = |(w, d): (Vec<Q>, Q)| -> (Vec<Q>, Q) {
            if w[j].is_zero() {
                return (w, d);
            }
            let f = &w[j] / &piv;
            let nw: Vec<Q> = w.iter().zip(&v).map(|(x, y)| x - &f * y).collect();
            (nw, d - &f * &b)
        };
        eqs = eqs.into_iter().map(sub).collect();
        les = les.into_iter().map(sub).collect();
        alive.retain(|&x| x != j);
    }
    // leftover equalities in t alone (or constants)
    let mut t_lo: Option<Q> = None;
    let mut t_hi: Option<Q> = None;
    let mut infeasible = false;
    let tighten_eq = |v: &[Q], b: &Q, lo: &mut Option<Q>, hi: &mut Option<Q>, bad: &mut bool| {
        let a = &v[nv];
        if a.is_zero() {
            if !b.is_zero() {
                *bad = true;
            }
        } else {
            let val = b / a;
            if lo.as_ref().is_none_or(|l| val > *l) {
                *lo = Some(val.clone());
            }
            if hi.as_ref().is_none_or(|h| val < *h) {
                *hi = Some(val);
            }
        }
    };
    for (v, b) in &eqs {
        tighten_eq(v, b, &mut t_lo, &mut t_hi, &mut infeasible);
    }
    for &j in &alive.clone() {
        let (pos, rest): (Vec<_>, Vec<_>) = les.into_iter().partition(|(v, _)| !v[j].is_zero());
        let (up, down): (Vec<_>, Vec<_>) = pos.into_iter().partition(|(v, _)| v[j].is_positive());
        let mut next = rest;
        let mut seen = HashSet::new();
        for (a, ab) in &up {
            for (d, db) in &down {
                let fa = -&d[j];
                let fd = a[j].clone();
                let mut v: Vec<Q> = a.iter().zip(d).map(|(x, y)| x * &fa + y * &fd).collect();
                let mut rhs = ab * &fa + db * &fd;
                // normalize by the largest coefficient magnitude to dedupe
                let scale = v.iter().map(|x| x.abs()).chain([rhs.abs()]).max().unwrap();
                if !scale.is_zero() {
                    v = v.into_iter().map(|x| x / &scale).collect();
                    rhs /= &scale;
                }
                if seen.insert((v.clone(), rhs.clone())) {
                    next.push((v, rhs));
                }
            }
        }
        les = next;
    }
    for (v, b) in &les {
        let a = &v[nv];
        if a.is_zero() {
            if b.is_negative() {
                infeasible = true;
            }
        } else if a.is_positive() {
            let val = b / a;
            if t_hi.as_ref().is_none_or(|h| val < *h) {
                t_hi = Some(val);
            }
        } else {
            let val = b / a;
            if t_lo.as_ref().is_none_or(|l| val > *l) {
                t_lo = Some(val);
            }
        }
    }
    if infeasible {
        return QOutcome::Infeasible;
    }
    if let (Some(l), Some(h)) = (&t_lo, &t_hi) {
        if l > h {
            return QOutcome::Infeasible;
        }
    }
    match t_hi {
        Some(h) => QOutcome::Optimal(h),
        None => QOutcome::Unbounded,
    }
}

pub fn q_to_f64(x: &Q) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap()
}
