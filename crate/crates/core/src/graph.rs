//! Simple undirected graphs: parsing, standard families, distances and
//! power graphs.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest vertex count accepted anywhere in the crate.
pub const MAX_VERTICES: usize = 512;

/// Distance value for pairs in different connected components.
pub const UNREACHABLE: u32 = u32::MAX;

/// Undirected simple graph on vertices `0..n`, stored as a dense
/// symmetric adjacency relation.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<bool>,
    name: Option<String>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("name", &self.name)
            .field("n", &self.n)
            .field("edges", &self.edges())
            .finish()
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooLarge {
                n,
                max: MAX_VERTICES,
            });
        }
        Ok(Graph {
            n,
            adj: vec![false; n * n],
            name: None,
        })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Input(format!(
                    "edge ({u}, {v}) out of range for n = {n}"
                )));
            }
            if u == v {
                return Err(Error::Input(format!("self-loop at vertex {u}")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Adds the edge `uv`. Self-loops are ignored.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        if u != v {
            self.adj[u * self.n + v] = true;
            self.adj[v * self.n + u] = true;
        }
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.n + v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().filter(|&&b| b).count()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(v)
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(w, _)| w)
    }

    pub fn adjacency_lists(&self) -> Vec<Vec<usize>> {
        (0..self.n).map(|v| self.neighbors(v).collect()).collect()
    }

    fn row(&self, v: usize) -> &[bool] {
        &self.adj[v * self.n..(v + 1) * self.n]
    }

    pub fn edge_count(&self) -> usize {
        self.edges().len()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn is_regular(&self) -> bool {
        let d0 = if self.n == 0 { 0 } else { self.degree(0) };
        (0..self.n).all(|v| self.degree(v) == d0)
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count() == self.n * self.n.saturating_sub(1) / 2
    }

    /// Row-major adjacency matrix as floats.
    pub fn adjacency_matrix(&self) -> Vec<f64> {
        self.adj
            .iter()
            .map(|&b| if b { 1.0 } else { 0.0 })
            .collect()
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::empty(self.n).expect("same size");
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    /// Vertex sets of the connected components, each sorted, ordered by
    /// smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for w in self.neighbors(v) {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Subgraph induced by `vertices`, relabelled to `0..vertices.len()` in
    /// the given order.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Graph {
        let mut g = Graph::empty(vertices.len()).expect("subgraph is no larger");
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// True when `colors` is a proper vertex coloring.
    pub fn is_proper_coloring(&self, colors: &[usize]) -> bool {
        colors.len() == self.n && self.edges().iter().all(|&(u, v)| colors[u] != colors[v])
    }

    pub fn is_independent_set(&self, set: &[usize]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &u)| set[i + 1..].iter().all(|&v| u != v && !self.has_edge(u, v)))
    }
}

// ---------------------------------------------------------------------------
// graph6

fn push_size(out: &mut Vec<u8>, n: usize) {
    if n < 63 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + 63);
        }
    }
}

/// Encodes `g` in header-less graph6.
pub fn encode_graph6(g: &Graph) -> String {
    let mut out = Vec::new();
    push_size(&mut out, g.n());
    let mut acc = 0u8;
    let mut nbits = 0;
    for j in 1..g.n() {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            nbits += 1;
            if nbits == 6 {
                out.push(acc + 63);
                acc = 0;
                nbits = 0;
            }
        }
    }
    if nbits > 0 {
        out.push((acc << (6 - nbits)) + 63);
    }
    String::from_utf8(out).expect("graph6 is ASCII")
}

/// Decodes a single graph6 string. A trailing newline is tolerated, as is
/// the optional `>>graph6<<` header.
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let bytes = text.trim_end_matches(['\n', '\r']).as_bytes();
    let (bytes, base) = match bytes.strip_prefix(b">>graph6<<") {
        Some(rest) => (rest, 10),
        None => (bytes, 0),
    };
    let err = |offset: usize, reason: &str| Error::Graph6 {
        offset: offset + base,
        reason: reason.to_string(),
    };
    if let Some(pos) = bytes.iter().position(|b| !(63..=126).contains(b)) {
        return Err(err(
            pos,
            &format!(
                "byte 0x{:02x} outside the printable range 63..=126",
                bytes[pos]
            ),
        ));
    }
    let (n, body_start) = match bytes.first() {
        None => return Err(err(0, "empty input")),
        Some(&126) => {
            if bytes.get(1) == Some(&126) {
                return Err(err(1, "eight-byte size header is not supported"));
            }
            if bytes.len() < 4 {
                return Err(err(bytes.len(), "truncated size header"));
            }
            let n = bytes[1..4]
                .iter()
                .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
            (n, 4)
        }
        Some(&b) => ((b - 63) as usize, 1),
    };
    if n > MAX_VERTICES {
        return Err(Error::TooLarge {
            n,
            max: MAX_VERTICES,
        });
    }
    let nbits = n * n.saturating_sub(1) / 2;
    let need = nbits.div_ceil(6);
    let body = &bytes[body_start..];
    if body.len() < need {
        return Err(err(
            bytes.len(),
            &format!(
                "truncated bit stream: need {need} data bytes, found {}",
                body.len()
            ),
        ));
    }
    if body.len() > need {
        return Err(err(body_start + need, "unexpected trailing data"));
    }
    let mut g = Graph::empty(n)?;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - 63;
            if (byte >> (5 - k % 6)) & 1 == 1 {
                g.add_edge(i, j);
            }
            k += 1;
        }
    }
    Ok(g)
}

/// Parses an edge list: one `u v` pair per line, 0-based, `#` starts a
/// comment. The vertex count is one more than the largest id, or the value
/// of an optional `# n = N` / `n N` directive if present.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut edges = Vec::new();
    let mut declared: Option<usize> = None;
    for (lineno, raw) in text.lines().enumerate() {
        let line_no = lineno + 1;
        let (content, comment) = match raw.find('#') {
            Some(p) => (&raw[..p], Some(&raw[p + 1..])),
            None => (raw, None),
        };
        if let Some(c) = comment {
            let c = c.trim();
            if let Some(rest) = c.strip_prefix("n").map(str::trim_start) {
                if let Some(v) = rest.strip_prefix('=') {
                    if let Ok(n) = v.trim().parse::<usize>() {
                        declared = Some(n);
                    }
                }
            }
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        if fields.is_empty() {
            continue;
        }
        let bad = |reason: String| Error::EdgeList {
            line: line_no,
            reason,
        };
        if fields.len() == 2 && fields[0] == "n" {
            declared = Some(
                fields[1]
                    .parse()
                    .map_err(|_| bad(format!("bad vertex count {:?}", fields[1])))?,
            );
            continue;
        }
        if fields.len() != 2 {
            return Err(bad(format!(
                "expected `u v`, found {} fields",
                fields.len()
            )));
        }
        let u: usize = fields[0]
            .parse()
            .map_err(|_| bad(format!("bad vertex id {:?}", fields[0])))?;
        let v: usize = fields[1]
            .parse()
            .map_err(|_| bad(format!("bad vertex id {:?}", fields[1])))?;
        if u == v {
            return Err(bad(format!("self-loop at {u}")));
        }
        edges.push((u, v));
    }
    let inferred = edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
    let n = match declared {
        Some(d) if d < inferred => {
            return Err(Error::EdgeList {
                line: 0,
                reason: format!("declared n = {d} but vertex {} used", inferred - 1),
            })
        }
        Some(d) => d,
        None => inferred,
    };
    Graph::from_edges(n, &edges)
}

/// Accepts either a single graph6 line or an edge list.
pub fn parse_graph_text(text: &str) -> Result<Graph> {
    let meaningful: Vec<&str> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .collect();
    let looks_g6 = meaningful.len() == 1
        && !meaningful[0].contains(char::is_whitespace)
        && !meaningful[0].starts_with('#');
    if looks_g6 {
        parse_graph6(meaningful[0])
    } else {
        parse_edge_list(text)
    }
}

// ---------------------------------------------------------------------------
// Families

/// Named graph families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Cycle,
    Complete,
    Path,
    Hypercube,
    Prism,
    GeneralizedPetersen,
    Kneser,
    Petersen,
    Empty,
    CompleteBipartite,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Cycle => "cycle",
            Family::Complete => "complete",
            Family::Path => "path",
            Family::Hypercube => "hypercube",
            Family::Prism => "prism",
            Family::GeneralizedPetersen => "generalized_petersen",
            Family::Kneser => "kneser",
            Family::Petersen => "petersen",
            Family::Empty => "empty",
            Family::CompleteBipartite => "complete_bipartite",
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "cycle" | "C" => Family::Cycle,
            "complete" | "K" => Family::Complete,
            "path" | "P" => Family::Path,
            "hypercube" | "Q" => Family::Hypercube,
            "prism" => Family::Prism,
            "generalized_petersen" | "gp" => Family::GeneralizedPetersen,
            "kneser" => Family::Kneser,
            "petersen" => Family::Petersen,
            "empty" => Family::Empty,
            "complete_bipartite" | "kb" => Family::CompleteBipartite,
            _ => return Err(Error::Input(format!("unknown graph family {s:?}"))),
        })
    }
}

/// A family together with its parameters, written `name:p1,p2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    pub family: Family,
    pub params: Vec<usize>,
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, params) = match s.split_once(':') {
            Some((name, rest)) => (name, rest),
            None => (s, ""),
        };
        let family: Family = name.trim().parse()?;
        let params = params
            .split(',')
            .map(str::trim)
            .filter(|p| !p.is_empty())
            .map(|p| {
                p.parse::<usize>()
                    .map_err(|_| Error::Input(format!("bad family parameter {p:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FamilySpec { family, params })
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.family.name())?;
        if !self.params.is_empty() {
            let ps: Vec<String> = self.params.iter().map(|p| p.to_string()).collect();
            write!(f, ":{}", ps.join(","))?;
        }
        Ok(())
    }
}

impl FamilySpec {
    pub fn build(&self) -> Result<Graph> {
        generate(self.family, &self.params).map(|g| g.with_name(self.to_string()))
    }
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Builds a member of `family`.
pub fn generate(family: Family, params: &[usize]) -> Result<Graph> {
    let domain = |reason: String| Error::Domain {
        family: family.name().to_string(),
        reason,
    };
    let want = |count: usize| -> Result<()> {
        if params.len() != count {
            Err(domain(format!(
                "expected {count} parameter(s), got {}",
                params.len()
            )))
        } else {
            Ok(())
        }
    };
    let g = match family {
        Family::Cycle => {
            want(1)?;
            let n = params[0];
            if n < 3 {
                return Err(domain(format!("cycle needs n >= 3, got {n}")));
            }
            let mut g = Graph::empty(n)?;
            for i in 0..n {
                g.add_edge(i, (i + 1) % n);
            }
            g
        }
        Family::Path => {
            want(1)?;
            let n = params[0];
            if n < 1 {
                return Err(domain("path needs n >= 1".into()));
            }
            let mut g = Graph::empty(n)?;
            for i in 1..n {
                g.add_edge(i - 1, i);
            }
            g
        }
        Family::Complete => {
            want(1)?;
            let n = params[0];
            if n < 1 {
                return Err(domain("complete graph needs n >= 1".into()));
            }
            Graph::empty(n)?.complement()
        }
        Family::Empty => {
            want(1)?;
            if params[0] < 1 {
                return Err(domain("empty graph needs n >= 1".into()));
            }
            Graph::empty(params[0])?
        }
        Family::CompleteBipartite => {
            want(2)?;
            let (a, b) = (params[0], params[1]);
            if a < 1 || b < 1 {
                return Err(domain("both sides must be non-empty".into()));
            }
            let mut g = Graph::empty(a + b)?;
            for u in 0..a {
                for v in a..a + b {
                    g.add_edge(u, v);
                }
            }
            g
        }
        Family::Hypercube => {
            want(1)?;
            let d = params[0];
            if d > 9 {
                return Err(domain(format!(
                    "hypercube dimension {d} exceeds {MAX_VERTICES} vertices"
                )));
            }
            let n = 1usize << d;
            let mut g = Graph::empty(n)?;
            for v in 0..n {
                for bit in 0..d {
                    g.add_edge(v, v ^ (1 << bit));
                }
            }
            g
        }
        Family::Prism => {
            want(1)?;
            generalized_petersen(params[0], 1).map_err(|e| match e {
                Error::Domain { reason, .. } => domain(reason),
                other => other,
            })?
        }
        Family::GeneralizedPetersen => {
            want(2)?;
            generalized_petersen(params[0], params[1])?
        }
        Family::Petersen => {
            if !params.is_empty() {
                return Err(domain("petersen takes no parameters".into()));
            }
            generalized_petersen(5, 2)?
        }
        Family::Kneser => {
            want(2)?;
            let (n, s) = (params[0], params[1]);
            if s < 1 || n < 2 * s {
                return Err(domain(format!(
                    "kneser(n, s) needs s >= 1 and n >= 2s, got ({n}, {s})"
                )));
            }
            let count = binomial(n, s);
            if count > MAX_VERTICES {
                return Err(Error::TooLarge {
                    n: count,
                    max: MAX_VERTICES,
                });
            }
            let sets = subsets_of_size(n, s);
            let mut g = Graph::empty(sets.len())?;
            for i in 0..sets.len() {
                for j in i + 1..sets.len() {
                    if sets[i] & sets[j] == 0 {
                        g.add_edge(i, j);
                    }
                }
            }
            g
        }
    };
    Ok(g)
}

/// Bitmasks of all `s`-subsets of `0..n` in lexicographic order.
fn subsets_of_size(n: usize, s: usize) -> Vec<u64> {
    fn rec(start: usize, n: usize, left: usize, mask: u64, out: &mut Vec<u64>) {
        if left == 0 {
            out.push(mask);
            return;
        }
        for i in start..=n - left {
            rec(i + 1, n, left - 1, mask | (1 << i), out);
        }
    }
    let mut out = Vec::new();
    rec(0, n, s, 0, &mut out);
    out
}

fn generalized_petersen(n: usize, s: usize) -> Result<Graph> {
    let domain = |reason: String| Error::Domain {
        family: "generalized_petersen".into(),
        reason,
    };
    if n < 3 {
        return Err(domain(format!("needs n >= 3, got {n}")));
    }
    if s < 1 || 2 * s >= n {
        return Err(domain(format!(
            "needs 1 <= s < n/2, got s = {s} with n = {n}"
        )));
    }
    let mut g = Graph::empty(2 * n)?;
    for i in 0..n {
        g.add_edge(i, (i + 1) % n);
        g.add_edge(i, n + i);
        g.add_edge(n + i, n + (i + s) % n);
    }
    Ok(g)
}

// ---------------------------------------------------------------------------
// Distances and powers

/// All-pairs hop distances; [`UNREACHABLE`] marks disconnected pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    dist: Vec<u32>,
}

impl DistanceMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Raw entry, possibly [`UNREACHABLE`].
    pub fn raw(&self, v: usize, w: usize) -> u32 {
        self.dist[v * self.n + w]
    }

    pub fn get(&self, v: usize, w: usize) -> Option<u32> {
        match self.raw(v, w) {
            UNREACHABLE => None,
            d => Some(d),
        }
    }

    /// True when `v` and `w` are distinct and at distance at most `k`.
    pub fn within(&self, v: usize, w: usize, k: usize) -> bool {
        v != w && self.get(v, w).is_some_and(|d| d as usize <= k)
    }

    /// Largest finite distance.
    pub fn max_finite(&self) -> u32 {
        self.dist
            .iter()
            .copied()
            .filter(|&d| d != UNREACHABLE)
            .max()
            .unwrap_or(0)
    }
}

/// Breadth-first search from every vertex.
pub fn distances(g: &Graph) -> DistanceMatrix {
    let n = g.n();
    let lists = g.adjacency_lists();
    let mut dist = vec![UNREACHABLE; n * n];
    let mut queue = VecDeque::new();
    for s in 0..n {
        let row = &mut dist[s * n..(s + 1) * n];
        row[s] = 0;
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            let dv = row[v];
            for &w in &lists[v] {
                if row[w] == UNREACHABLE {
                    row[w] = dv + 1;
                    queue.push_back(w);
                }
            }
        }
    }
    DistanceMatrix { n, dist }
}

/// `G^k`: vertices at distance between 1 and `k` become adjacent.
pub fn power_graph(g: &Graph, k: usize) -> Graph {
    assert!(k >= 1, "power_graph needs k >= 1");
    if k == 1 {
        return g.clone();
    }
    let d = distances(g);
    let mut p = Graph::empty(g.n()).expect("same size");
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            if d.within(u, v, k) {
                p.add_edge(u, v);
            }
        }
    }
    if let Some(name) = g.name() {
        p = p.with_name(format!("{name}^{k}"));
    }
    p
}

/// True iff every power `A^l`, `0 <= l <= k`, has a constant diagonal, i.e.
/// all vertices see the same number of closed walks of each length up to `k`.
///
/// `diag(A^0)` and `diag(A^1)` are always constant, so this is `true` for
/// `k <= 1`.
pub fn is_k_partially_walk_regular(g: &Graph, k: usize) -> bool {
    let n = g.n();
    if n <= 1 || k <= 1 {
        return true;
    }
    // Constancy for all l < n implies constancy for every l (Cayley-Hamilton).
    let k = k.min(n - 1);
    match closed_walks_exact(g, k) {
        Some(counts) => counts.iter().all(|row| row.iter().all(|&c| c == row[0])),
        None => closed_walks_scaled(g, k).iter().all(|row| {
            row.iter()
                .all(|&c| (c - row[0]).abs() <= 1e-12 * c.abs().max(row[0].abs()).max(1e-300))
        }),
    }
}

/// `counts[l-1][v]` = closed walks of length `l` at `v`, for `l in 1..=k`.
/// `None` on overflow.
fn closed_walks_exact(g: &Graph, k: usize) -> Option<Vec<Vec<u128>>> {
    let n = g.n();
    let lists = g.adjacency_lists();
    let mut out = vec![vec![0u128; n]; k];
    for v in 0..n {
        let mut x = vec![0u128; n];
        x[v] = 1;
        for counts in out.iter_mut() {
            let mut y = vec![0u128; n];
            for (u, nb) in lists.iter().enumerate() {
                let mut acc = 0u128;
                for &w in nb {
                    acc = acc.checked_add(x[w])?;
                }
                y[u] = acc;
            }
            x = y;
            counts[v] = x[v];
        }
    }
    Some(out)
}

fn closed_walks_scaled(g: &Graph, k: usize) -> Vec<Vec<f64>> {
    let n = g.n();
    let lists = g.adjacency_lists();
    let scale = 1.0 / (g.max_degree().max(1) as f64);
    let mut out = vec![vec![0f64; n]; k];
    for v in 0..n {
        let mut x = vec![0f64; n];
        x[v] = 1.0;
        for counts in out.iter_mut() {
            let y: Vec<f64> = lists
                .iter()
                .map(|nb| nb.iter().map(|&w| x[w]).sum::<f64>() * scale)
                .collect();
            x = y;
            counts[v] = x[v];
        }
    }
    out
}
