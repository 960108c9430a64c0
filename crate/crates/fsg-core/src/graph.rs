//! Simple undirected graphs on vertices `1..=n`, stored as fixed-width
//! bit rows, plus the named families the library works with.
//!
//! The width cap of 64 keeps neighborhood operations at one word each and is
//! far above anything the factorial state-space search can enumerate.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::rng;

/// Hard vertex cap imposed by the `u64` adjacency rows.
pub const MAX_VERTICES: usize = 64;

/// An undirected simple graph on vertices `1..=n`.
///
/// Invariants: no self-loops, symmetric adjacency, all neighbors in range.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SimpleGraph {
    n: usize,
    rows: Vec<u64>, // rows[v-1] has bit u-1 set iff (u,v) is an edge
}

impl SimpleGraph {
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_VERTICES {
            return Err(Error::InvalidParameter(format!(
                "vertex count {n} outside 1..={MAX_VERTICES}"
            )));
        }
        Ok(Self {
            n,
            rows: vec![0; n],
        })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::InvalidParameter(format!("self-loop at {u}")));
        }
        self.rows[u - 1] |= 1 << (v - 1);
        self.rows[v - 1] |= 1 << (u - 1);
        Ok(())
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v == 0 || v > self.n {
            return Err(Error::InvalidParameter(format!(
                "vertex {v} outside 1..={}",
                self.n
            )));
        }
        Ok(())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        debug_assert!(u >= 1 && u <= self.n && v >= 1 && v <= self.n);
        self.rows[u - 1] & (1 << (v - 1)) != 0
    }

    /// Neighbor bitmask of `v` (bit `u-1` set iff `(u,v)` is an edge).
    #[inline]
    pub fn neighbor_mask(&self, v: usize) -> u64 {
        self.rows[v - 1]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v - 1].count_ones() as usize
    }

    /// Neighbors of `v` in increasing order.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        let mut mask = self.rows[v - 1];
        std::iter::from_fn(move || {
            if mask == 0 {
                None
            } else {
                let u = mask.trailing_zeros() as usize + 1;
                mask &= mask - 1;
                Some(u)
            }
        })
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(u,v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 1..=self.n {
            let mut mask = self.rows[u - 1] & !((1u64 << u) - 1); // neighbors > u
            while mask != 0 {
                let v = mask.trailing_zeros() as usize + 1;
                mask &= mask - 1;
                out.push((u, v));
            }
        }
        out
    }

    pub fn min_degree(&self) -> usize {
        (1..=self.n).map(|v| self.degree(v)).min().unwrap()
    }

    pub fn is_connected(&self) -> bool {
        let mut seen: u64 = 1;
        let mut frontier: u64 = 1;
        while frontier != 0 {
            let mut next: u64 = 0;
            let mut m = frontier;
            while m != 0 {
                let v = m.trailing_zeros() as usize;
                m &= m - 1;
                next |= self.rows[v];
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen.count_ones() as usize == self.n
    }

    /// Connected components as sorted vertex lists, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut unvisited: u64 = if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        };
        let mut out = Vec::new();
        while unvisited != 0 {
            let start = unvisited.trailing_zeros() as usize;
            let mut comp: u64 = 1 << start;
            let mut frontier = comp;
            while frontier != 0 {
                let mut next: u64 = 0;
                let mut m = frontier;
                while m != 0 {
                    let v = m.trailing_zeros() as usize;
                    m &= m - 1;
                    next |= self.rows[v];
                }
                frontier = next & !comp;
                comp |= next;
            }
            unvisited &= !comp;
            let mut members = Vec::new();
            let mut m = comp;
            while m != 0 {
                members.push(m.trailing_zeros() as usize + 1);
                m &= m - 1;
            }
            out.push(members);
        }
        out
    }

    /// Induced subgraph on `keep`, relabeling kept vertices to `1..=|keep|`
    /// in increasing order of their old labels. Returns the new graph and
    /// the label map `map[new-1] = old`.
    pub fn induced_subgraph(&self, keep: &[usize]) -> Result<(SimpleGraph, Vec<usize>)> {
        let mut map: Vec<usize> = keep.to_vec();
        map.sort_unstable();
        map.dedup();
        if map.len() != keep.len() {
            return Err(Error::InvalidParameter(
                "duplicate vertices in induced subgraph selection".into(),
            ));
        }
        for &v in &map {
            self.check_vertex(v)?;
        }
        let mut g = SimpleGraph::empty(map.len())?;
        for (i, &u) in map.iter().enumerate() {
            for (j, &v) in map.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i + 1, j + 1)?;
                }
            }
        }
        Ok((g, map))
    }

    /// Checks the structural invariants; used by tests on every produced graph.
    pub fn validate(&self) -> Result<()> {
        let mask = if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        };
        for v in 1..=self.n {
            let row = self.rows[v - 1];
            if row & !mask != 0 {
                return Err(Error::InvalidParameter(format!(
                    "vertex {v} has out-of-range neighbors"
                )));
            }
            if row & (1 << (v - 1)) != 0 {
                return Err(Error::InvalidParameter(format!("self-loop at {v}")));
            }
            for u in self.neighbors(v) {
                if !self.has_edge(u, v) {
                    return Err(Error::InvalidParameter(format!(
                        "asymmetric adjacency at ({u},{v})"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Two-coloring of every connected component, if one exists. Within each
    /// component the side containing its smallest vertex goes to `a`.
    pub fn is_bipartite(&self) -> Option<Bipartition> {
        let mut color = vec![u8::MAX; self.n];
        for start in 0..self.n {
            if color[start] != u8::MAX {
                continue;
            }
            color[start] = 0;
            let mut queue = std::collections::VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for u in self.neighbors(v + 1) {
                    let u = u - 1;
                    if color[u] == u8::MAX {
                        color[u] = 1 - color[v];
                        queue.push_back(u);
                    } else if color[u] == color[v] {
                        return None;
                    }
                }
            }
        }
        let a = (0..self.n).filter(|&v| color[v] == 0).map(|v| v + 1).collect();
        let b = (0..self.n).filter(|&v| color[v] == 1).map(|v| v + 1).collect();
        Some(Bipartition { a, b })
    }

    /// 0-based adjacency lists (each sorted ascending), the representation
    /// used by the flow and traversal kernels.
    pub fn adjacency_lists(&self) -> Vec<Vec<u32>> {
        (1..=self.n)
            .map(|v| self.neighbors(v).map(|u| (u - 1) as u32).collect())
            .collect()
    }

    /// Serializes to the edge-list text format.
    pub fn to_edge_list(&self) -> String {
        let mut s = format!("{}\n", self.n);
        for (u, v) in self.edges() {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }
}

impl fmt::Debug for SimpleGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimpleGraph(n={}, edges={:?})", self.n, self.edges())
    }
}

/// A vertex bipartition `(A, B)` with no intra-part edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bipartition {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
}

impl Bipartition {
    pub fn side_a_mask(&self) -> u64 {
        self.a.iter().fold(0u64, |m, &v| m | (1 << (v - 1)))
    }
}

/// A named graph family plus its parameters.
#[derive(Clone, Debug, PartialEq)]
pub enum FamilySpec {
    Complete { n: usize },
    Star { n: usize },
    StarPlus { n: usize },
    Path { n: usize },
    Cycle { n: usize },
    Theta0,
    Starcle { n: usize, diagonal: Vec<usize> },
    Grid { rows: usize, cols: usize },
    Gnp { n: usize, p: f64, seed: u64 },
}

/// The 7-vertex theta graph with degree-3 vertices 1 and 3 joined by the
/// paths 1-2-3, 1-5-4-3, and 1-6-7-3.
pub const THETA0_EDGES: [(usize, usize); 8] = [
    (1, 2),
    (2, 3),
    (1, 5),
    (5, 4),
    (4, 3),
    (1, 6),
    (6, 7),
    (7, 3),
];

/// Builds the graph described by `spec`.
pub fn build_family(spec: &FamilySpec) -> Result<SimpleGraph> {
    match spec {
        FamilySpec::Complete { n } => {
            let mut g = SimpleGraph::empty(*n)?;
            for u in 1..*n {
                for v in u + 1..=*n {
                    g.add_edge(u, v)?;
                }
            }
            Ok(g)
        }
        FamilySpec::Star { n } => {
            let mut g = SimpleGraph::empty(*n)?;
            for i in 1..*n {
                g.add_edge(i, *n)?;
            }
            Ok(g)
        }
        FamilySpec::StarPlus { n } => {
            if *n < 3 {
                return Err(Error::InvalidParameter(format!(
                    "star_plus requires n >= 3, got {n}"
                )));
            }
            let mut g = build_family(&FamilySpec::Star { n: *n })?;
            g.add_edge(1, 2)?;
            Ok(g)
        }
        FamilySpec::Path { n } => {
            let mut g = SimpleGraph::empty(*n)?;
            for i in 1..*n {
                g.add_edge(i, i + 1)?;
            }
            Ok(g)
        }
        FamilySpec::Cycle { n } => {
            if *n < 3 {
                return Err(Error::InvalidParameter(format!(
                    "cycle requires n >= 3, got {n}"
                )));
            }
            let mut g = build_family(&FamilySpec::Path { n: *n })?;
            g.add_edge(1, *n)?;
            Ok(g)
        }
        FamilySpec::Theta0 => SimpleGraph::from_edges(7, &THETA0_EDGES),
        FamilySpec::Starcle { n, diagonal } => {
            if *n < 3 {
                return Err(Error::InvalidParameter(format!(
                    "starcle requires n >= 3, got {n}"
                )));
            }
            if diagonal.len() + 3 > *n {
                return Err(Error::InvalidParameter(format!(
                    "starcle diagonal tuple length {} exceeds n-3 = {}",
                    diagonal.len(),
                    *n - 3
                )));
            }
            for w in diagonal.windows(2) {
                if w[0] >= w[1] {
                    return Err(Error::InvalidParameter(
                        "starcle diagonal tuple must be strictly increasing".into(),
                    ));
                }
            }
            for &x in diagonal {
                if x <= 1 || x >= *n - 1 {
                    return Err(Error::InvalidParameter(format!(
                        "starcle diagonal entry {x} outside the open range (1, {})",
                        *n - 1
                    )));
                }
            }
            let mut g = build_family(&FamilySpec::Cycle { n: *n })?;
            for &x in diagonal {
                g.add_edge(x, *n)?;
            }
            Ok(g)
        }
        FamilySpec::Grid { rows, cols } => {
            if *rows == 0 || *cols == 0 {
                return Err(Error::InvalidParameter("grid dimensions must be >= 1".into()));
            }
            let n = rows
                .checked_mul(*cols)
                .filter(|&n| n <= MAX_VERTICES)
                .ok_or_else(|| {
                    Error::InvalidParameter(format!(
                        "grid {rows}x{cols} exceeds {MAX_VERTICES} vertices"
                    ))
                })?;
            let mut g = SimpleGraph::empty(n)?;
            let idx = |r: usize, c: usize| r * cols + c + 1;
            for r in 0..*rows {
                for c in 0..*cols {
                    if c + 1 < *cols {
                        g.add_edge(idx(r, c), idx(r, c + 1))?;
                    }
                    if r + 1 < *rows {
                        g.add_edge(idx(r, c), idx(r + 1, c))?;
                    }
                }
            }
            Ok(g)
        }
        FamilySpec::Gnp { n, p, seed } => gnp(*n, *p, *seed),
    }
}

/// An Erdős–Rényi sample `G(n,p)`, deterministic given `(n, p, seed)`.
///
/// Each potential edge's decision is keyed by `(seed, edge index)` through a
/// counter-based generator, so decisions are order-independent and identical
/// across platforms.
pub fn gnp(n: usize, p: f64, seed: u64) -> Result<SimpleGraph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!(
            "edge probability {p} outside [0,1]"
        )));
    }
    let mut g = SimpleGraph::empty(n)?;
    // Threshold in fixed point: include iff hash < p * 2^64.
    let threshold = (p * 18_446_744_073_709_551_616.0) as u128;
    let mut edge_index = 0u64;
    for u in 1..n {
        for v in u + 1..=n {
            if (rng::hash2(seed, edge_index) as u128) < threshold {
                g.add_edge(u, v)?;
            }
            edge_index += 1;
        }
    }
    Ok(g)
}

impl FromStr for FamilySpec {
    type Err = Error;

    /// Parses the family DSL: `star:7`, `starcle:9:3,5`, `gnp:8:0.5:12345`,
    /// `grid:3:4`, `theta0`, ...
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        let tag = parts[0];
        let parse_n = |parts: &[&str]| -> Result<usize> {
            if parts.len() != 2 {
                return Err(Error::Parse(format!(
                    "family {tag:?} expects exactly one parameter, got {s:?}"
                )));
            }
            parts[1]
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad vertex count in {s:?}")))
        };
        match tag {
            "complete" => Ok(FamilySpec::Complete { n: parse_n(&parts)? }),
            "star" => Ok(FamilySpec::Star { n: parse_n(&parts)? }),
            "star_plus" => Ok(FamilySpec::StarPlus { n: parse_n(&parts)? }),
            "path" => Ok(FamilySpec::Path { n: parse_n(&parts)? }),
            "cycle" => Ok(FamilySpec::Cycle { n: parse_n(&parts)? }),
            "theta0" => {
                if parts.len() != 1 {
                    return Err(Error::Parse("theta0 takes no parameters".into()));
                }
                Ok(FamilySpec::Theta0)
            }
            "starcle" => {
                if parts.len() != 3 {
                    return Err(Error::Parse(format!(
                        "starcle expects starcle:<n>:<x1,x2,...>, got {s:?}"
                    )));
                }
                let n = parts[1]
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad vertex count in {s:?}")))?;
                let diagonal = parts[2]
                    .split(',')
                    .map(|t| {
                        t.trim()
                            .parse::<usize>()
                            .map_err(|_| Error::Parse(format!("bad diagonal entry {t:?} in {s:?}")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(FamilySpec::Starcle { n, diagonal })
            }
            "grid" => {
                if parts.len() != 3 {
                    return Err(Error::Parse(format!(
                        "grid expects grid:<rows>:<cols>, got {s:?}"
                    )));
                }
                let rows = parts[1]
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad row count in {s:?}")))?;
                let cols = parts[2]
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad column count in {s:?}")))?;
                Ok(FamilySpec::Grid { rows, cols })
            }
            "gnp" => {
                if parts.len() != 4 {
                    return Err(Error::Parse(format!(
                        "gnp expects gnp:<n>:<p>:<seed>, got {s:?}"
                    )));
                }
                let n = parts[1]
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad vertex count in {s:?}")))?;
                let p = parts[2]
                    .parse::<f64>()
                    .map_err(|_| Error::Parse(format!("bad probability in {s:?}")))?;
                let seed = parts[3]
                    .parse::<u64>()
                    .map_err(|_| Error::Parse(format!("bad seed in {s:?}")))?;
                Ok(FamilySpec::Gnp { n, p, seed })
            }
            other => Err(Error::Parse(format!("unknown graph family {other:?}"))),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Complete { n } => write!(f, "complete:{n}"),
            FamilySpec::Star { n } => write!(f, "star:{n}"),
            FamilySpec::StarPlus { n } => write!(f, "star_plus:{n}"),
            FamilySpec::Path { n } => write!(f, "path:{n}"),
            FamilySpec::Cycle { n } => write!(f, "cycle:{n}"),
            FamilySpec::Theta0 => write!(f, "theta0"),
            FamilySpec::Starcle { n, diagonal } => {
                let tuple: Vec<String> = diagonal.iter().map(|x| x.to_string()).collect();
                write!(f, "starcle:{n}:{}", tuple.join(","))
            }
            FamilySpec::Grid { rows, cols } => write!(f, "grid:{rows}:{cols}"),
            FamilySpec::Gnp { n, p, seed } => write!(f, "gnp:{n}:{p}:{seed}"),
        }
    }
}

/// Parses the edge-list text format: line 1 is `n`, every following nonempty
/// line is `u v` with `1 <= u < v <= n`. Duplicate edges are rejected.
pub fn parse_edge_list(text: &str) -> Result<SimpleGraph> {
    let mut lines = text.lines();
    let n: usize = lines
        .next()
        .ok_or_else(|| Error::Parse("empty edge-list input".into()))?
        .trim()
        .parse()
        .map_err(|_| Error::Parse("first line must be the vertex count".into()))?;
    let mut g = SimpleGraph::empty(n)?;
    for (lineno, line) in lines.enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let mut it = line.split_whitespace();
        let (u, v) = match (it.next(), it.next(), it.next()) {
            (Some(u), Some(v), None) => (
                u.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad vertex on line {}", lineno + 2)))?,
                v.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad vertex on line {}", lineno + 2)))?,
            ),
            _ => {
                return Err(Error::Parse(format!(
                    "line {} must be \"u v\"",
                    lineno + 2
                )))
            }
        };
        if u >= v {
            return Err(Error::Parse(format!(
                "line {} must satisfy u < v, got {u} {v}",
                lineno + 2
            )));
        }
        if v > n {
            return Err(Error::Parse(format!(
                "line {}: vertex {v} exceeds n = {n}",
                lineno + 2
            )));
        }
        if g.has_edge(u, v) {
            return Err(Error::Parse(format!(
                "line {}: duplicate edge ({u},{v})",
                lineno + 2
            )));
        }
        g.add_edge(u, v)?;
    }
    Ok(g)
}
