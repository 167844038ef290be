//! Exact chromatic and independence numbers by branch and bound.

use serde::Serialize;

use crate::graph::Graph;

/// Default node budget for both searches.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColoringResult {
    /// Chromatic number, or the best upper bound found if timed out.
    pub chi: usize,
    /// Best lower bound proven (equals `chi` unless timed out).
    pub lower_bound: usize,
    /// Color of each vertex, `0..chi`.
    pub coloring: Vec<usize>,
    pub nodes_explored: u64,
    pub timed_out: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IndependenceResult {
    pub alpha: usize,
    pub witness_set: Vec<usize>,
    pub nodes_explored: u64,
    pub timed_out: bool,
}

/// Fixed-width bitset over at most 512 vertices.
#[derive(Clone, Copy, PartialEq, Eq)]
struct Bits([u64; 8]);

impl Bits {
    const EMPTY: Bits = Bits([0; 8]);

    fn set(&mut self, i: usize) {
        self.0[i >> 6] |= 1 << (i & 63);
    }

    fn clear(&mut self, i: usize) {
        self.0[i >> 6] &= !(1 << (i & 63));
    }

    fn and(&self, o: &Bits) -> Bits {
        let mut r = *self;
        for (a, b) in r.0.iter_mut().zip(&o.0) {
            *a &= b;
        }
        r
    }

    fn and_not(&self, o: &Bits) -> Bits {
        let mut r = *self;
        for (a, b) in r.0.iter_mut().zip(&o.0) {
            *a &= !b;
        }
        r
    }

    fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    fn first(&self) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let t = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + t)
            })
        })
    }
}

fn neighborhoods(g: &Graph) -> Vec<Bits> {
    (0..g.n())
        .map(|v| {
            let mut b = Bits::EMPTY;
            for w in g.neighbors(v) {
                b.set(w);
            }
            b
        })
        .collect()
}

/// Vertices sorted by degree descending, ties by id.
fn degree_order(g: &Graph) -> Vec<usize> {
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    order
}

// ---------------------------------------------------------------------------
// Maximum clique (used for independence numbers and coloring lower bounds)

struct CliqueSearch<'a> {
    adj: &'a [Bits],
    best: Vec<usize>,
    current: Vec<usize>,
    nodes: u64,
    budget: u64,
    timed_out: bool,
}

impl CliqueSearch<'_> {
    /// Greedy coloring of `cand` in the given vertex order; returns the
    /// vertices with their color bound, ascending.
    fn color_bound(&self, cand: &Bits) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(cand.count());
        let mut uncolored = *cand;
        let mut color = 0;
        while !uncolored.is_empty() {
            color += 1;
            let mut avail = uncolored;
            while let Some(v) = avail.first() {
                avail.clear(v);
                avail = avail.and_not(&self.adj[v]);
                uncolored.clear(v);
                out.push((v, color));
            }
        }
        out
    }

    fn expand(&mut self, mut cand: Bits) {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.timed_out = true;
            return;
        }
        let order = self.color_bound(&cand);
        for &(v, bound) in order.iter().rev() {
            if self.current.len() + bound <= self.best.len() || self.timed_out {
                return;
            }
            self.current.push(v);
            let next = cand.and(&self.adj[v]);
            if next.is_empty() {
                if self.current.len() > self.best.len() {
                    self.best = self.current.clone();
                }
            } else {
                self.expand(next);
            }
            self.current.pop();
            cand.clear(v);
        }
    }
}

fn max_clique(g: &Graph, budget: u64) -> (Vec<usize>, u64, bool) {
    let n = g.n();
    if n == 0 {
        return (Vec::new(), 0, false);
    }
    // Relabel so that bitset order follows degree-descending order.
    let order = degree_order(g);
    let h = g.induced_subgraph(&order);
    let adj = neighborhoods(&h);
    let mut all = Bits::EMPTY;
    for v in 0..n {
        all.set(v);
    }
    let mut s = CliqueSearch {
        adj: &adj,
        best: vec![0],
        current: Vec::new(),
        nodes: 0,
        budget,
        timed_out: false,
    };
    s.expand(all);
    let mut clique: Vec<usize> = s.best.iter().map(|&v| order[v]).collect();
    clique.sort_unstable();
    (clique, s.nodes, s.timed_out)
}

/// Largest independent set, as a maximum clique of the complement.
pub fn independence_number_exact(g: &Graph, budget: u64) -> IndependenceResult {
    let (set, nodes, timed_out) = max_clique(&g.complement(), budget);
    IndependenceResult {
        alpha: set.len(),
        witness_set: set,
        nodes_explored: nodes,
        timed_out,
    }
}

// ---------------------------------------------------------------------------
// DSATUR branch and bound

struct ColorSearch<'a> {
    adj: &'a [Bits],
    n: usize,
    colors: Vec<Option<usize>>,
    /// `forbid[v][c]` = number of neighbors of `v` holding color `c`.
    forbid: Vec<Vec<u32>>,
    saturation: Vec<usize>,
    best: Vec<usize>,
    best_k: usize,
    lower: usize,
    nodes: u64,
    budget: u64,
    timed_out: bool,
}

impl ColorSearch<'_> {
    fn assign(&mut self, v: usize, c: usize) {
        self.colors[v] = Some(c);
        for w in self.adj[v].iter() {
            if self.forbid[w][c] == 0 {
                self.saturation[w] += 1;
            }
            self.forbid[w][c] += 1;
        }
    }

    fn unassign(&mut self, v: usize, c: usize) {
        self.colors[v] = None;
        for w in self.adj[v].iter() {
            self.forbid[w][c] -= 1;
            if self.forbid[w][c] == 0 {
                self.saturation[w] -= 1;
            }
        }
    }

    /// Uncolored vertex with maximum saturation, then maximum uncolored
    /// degree, then smallest id.
    fn pick(&self) -> Option<usize> {
        let mut best: Option<(usize, usize, usize)> = None;
        for v in 0..self.n {
            if self.colors[v].is_some() {
                continue;
            }
            let deg = self.adj[v]
                .iter()
                .filter(|&w| self.colors[w].is_none())
                .count();
            let key = (self.saturation[v], deg, v);
            best = match best {
                Some(b) if (b.0, b.1) >= (key.0, key.1) => Some(b),
                _ => Some(key),
            };
        }
        best.map(|b| b.2)
    }

    fn search(&mut self, colored: usize, used: usize) {
        if self.timed_out || self.best_k <= self.lower {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.timed_out = true;
            return;
        }
        if colored == self.n {
            if used < self.best_k {
                self.best_k = used;
                self.best = self
                    .colors
                    .iter()
                    .map(|c| c.expect("all colored"))
                    .collect();
            }
            return;
        }
        let v = self.pick().expect("uncolored vertex exists");
        // Colors above `used` are interchangeable; only try one fresh color.
        for c in 0..=used {
            if c + 1 >= self.best_k {
                break;
            }
            if self.forbid[v][c] > 0 {
                continue;
            }
            self.assign(v, c);
            self.search(colored + 1, used.max(c + 1));
            self.unassign(v, c);
            if self.timed_out || self.best_k <= self.lower {
                return;
            }
        }
    }
}

fn greedy_dsatur(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let adj = neighborhoods(g);
    let mut colors: Vec<Option<usize>> = vec![None; n];
    let mut seen: Vec<Vec<bool>> = vec![vec![false; n + 1]; n];
    let mut sat = vec![0usize; n];
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| colors[v].is_none())
            .max_by_key(|&v| (sat[v], g.degree(v), std::cmp::Reverse(v)))
            .expect("uncolored vertex");
        let c = (0..=n).find(|&c| !seen[v][c]).expect("a free color");
        colors[v] = Some(c);
        for w in adj[v].iter() {
            if !seen[w][c] {
                seen[w][c] = true;
                sat[w] += 1;
            }
        }
    }
    colors.into_iter().map(|c| c.expect("colored")).collect()
}

/// Exact chromatic number by DSATUR-ordered backtracking, seeded with a
/// greedy DSATUR upper bound and a maximum-clique lower bound.
pub fn chromatic_number_exact(g: &Graph, budget: u64) -> ColoringResult {
    let n = g.n();
    if n == 0 {
        return ColoringResult {
            chi: 0,
            lower_bound: 0,
            coloring: Vec::new(),
            nodes_explored: 0,
            timed_out: false,
        };
    }
    let greedy = greedy_dsatur(g);
    let greedy_k = greedy.iter().max().map_or(0, |&c| c + 1);
    let (clique, clique_nodes, clique_timeout) = max_clique(g, budget / 2);
    let lower = clique.len().max(1);
    if greedy_k == lower {
        return ColoringResult {
            chi: greedy_k,
            lower_bound: lower,
            coloring: greedy,
            nodes_explored: clique_nodes,
            timed_out: false,
        };
    }
    let adj = neighborhoods(g);
    let mut s = ColorSearch {
        adj: &adj,
        n,
        colors: vec![None; n],
        forbid: vec![vec![0; greedy_k + 1]; n],
        saturation: vec![0; n],
        best: greedy,
        best_k: greedy_k,
        lower,
        nodes: 0,
        budget: budget.saturating_sub(clique_nodes),
        timed_out: false,
    };
    // Pre-color the clique: each member needs its own color.
    for (c, &v) in clique.iter().enumerate() {
        s.assign(v, c);
    }
    s.search(clique.len(), clique.len());
    let timed_out = s.timed_out || (clique_timeout && s.best_k > lower);
    ColoringResult {
        chi: s.best_k,
        lower_bound: if timed_out { lower } else { s.best_k },
        coloring: s.best,
        nodes_explored: s.nodes + clique_nodes,
        timed_out,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, power_graph, Family};

    #[test]
    fn chromatic_examples() {
        let c6 = generate(Family::Cycle, &[6]).unwrap();
        assert_eq!(chromatic_number_exact(&c6, DEFAULT_BUDGET).chi, 2);
        let sq = power_graph(&c6, 2);
        let r = chromatic_number_exact(&sq, DEFAULT_BUDGET);
        assert_eq!(r.chi, 3);
        assert!(sq.is_proper_coloring(&r.coloring));
        let pet = generate(Family::Petersen, &[]).unwrap();
        assert_eq!(
            chromatic_number_exact(&power_graph(&pet, 2), DEFAULT_BUDGET).chi,
            10
        );
        assert_eq!(chromatic_number_exact(&pet, DEFAULT_BUDGET).chi, 3);
        assert_eq!(
            chromatic_number_exact(&generate(Family::Cycle, &[7]).unwrap(), DEFAULT_BUDGET).chi,
            3
        );
        assert_eq!(
            chromatic_number_exact(&Graph::empty(4).unwrap(), DEFAULT_BUDGET).chi,
            1
        );
    }

    #[test]
    fn chromatic_needs_search() {
        // Grötzsch graph (Mycielskian of C5): triangle-free with chi = 4.
        let mut g = Graph::empty(11).unwrap();
        for i in 0..5 {
            g.add_edge(i, (i + 1) % 5);
            g.add_edge(5 + i, (i + 1) % 5);
            g.add_edge(5 + i, (i + 4) % 5);
            g.add_edge(5 + i, 10);
        }
        let r = chromatic_number_exact(&g, DEFAULT_BUDGET);
        assert_eq!(r.chi, 4);
        assert!(!r.timed_out);
        assert!(g.is_proper_coloring(&r.coloring));
    }

    #[test]
    fn independence_examples() {
        let sq = power_graph(&generate(Family::Cycle, &[6]).unwrap(), 2);
        let r = independence_number_exact(&sq, DEFAULT_BUDGET);
        assert_eq!(r.alpha, 2);
        assert!(sq.is_independent_set(&r.witness_set));
        assert_eq!(
            independence_number_exact(&generate(Family::Complete, &[5]).unwrap(), DEFAULT_BUDGET)
                .alpha,
            1
        );
        assert_eq!(
            independence_number_exact(&Graph::empty(7).unwrap(), DEFAULT_BUDGET).alpha,
            7
        );
        assert_eq!(
            independence_number_exact(&generate(Family::Petersen, &[]).unwrap(), DEFAULT_BUDGET)
                .alpha,
            4
        );
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let g = generate(Family::Kneser, &[9, 3]).unwrap();
        let r = chromatic_number_exact(&g, 50);
        assert!(r.timed_out);
        assert!(g.is_proper_coloring(&r.coloring));
        assert!(r.lower_bound <= r.chi);
    }
}
