//! Exact vertex connectivity, disjoint-path extraction, and fan
//! construction via unit-capacity flows on the vertex-split network.
//!
//! Every vertex `v` splits into `v_in -> v_out` with capacity one, and each
//! undirected edge `(u,v)` contributes the arcs `u_out -> v_in` and
//! `v_out -> u_in`. Max flow from `s_out` to `t_in` then counts internally
//! vertex-disjoint `s`-`t` paths (a direct edge counts as one path), and the
//! residual cut recovers a minimum separating vertex set.
//!
//! All routines work on 0-based adjacency lists so they serve both the small
//! position/people graphs and explicit `FS(X,Y)` components.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fs::{FSInstance, FsComponent, EXPLICIT_STATE_BUDGET};
use crate::graph::SimpleGraph;
use crate::perm::{factorial, rank_images, Permutation};

/// Flow network with paired forward/reverse arcs; augmentations move one
/// unit at a time, which is all the vertex-split construction needs.
struct UnitFlow {
    heads: Vec<Vec<u32>>, // per node: arc ids, in insertion order
    to: Vec<u32>,
    cap: Vec<u32>,
}

impl UnitFlow {
    fn new(nodes: usize) -> Self {
        Self {
            heads: vec![Vec::new(); nodes],
            to: Vec::new(),
            cap: Vec::new(),
        }
    }

    fn add_arc(&mut self, from: u32, to: u32, cap: u32) {
        let id = self.to.len() as u32;
        self.heads[from as usize].push(id);
        self.to.push(to);
        self.cap.push(cap);
        self.heads[to as usize].push(id + 1);
        self.to.push(from);
        self.cap.push(0);
    }

    /// One augmentation along a shortest residual path; ties broken by arc
    /// insertion order, which follows ascending vertex ids.
    fn augment(&mut self, s: u32, t: u32, parent_arc: &mut [u32]) -> bool {
        const UNSET: u32 = u32::MAX;
        parent_arc.fill(UNSET);
        parent_arc[s as usize] = UNSET - 1;
        let mut queue = std::collections::VecDeque::from([s]);
        'bfs: while let Some(u) = queue.pop_front() {
            for &a in &self.heads[u as usize] {
                if self.cap[a as usize] == 0 {
                    continue;
                }
                let v = self.to[a as usize];
                if parent_arc[v as usize] != UNSET {
                    continue;
                }
                parent_arc[v as usize] = a;
                if v == t {
                    break 'bfs;
                }
                queue.push_back(v);
            }
        }
        if parent_arc[t as usize] == UNSET {
            return false;
        }
        let mut v = t;
        while v != s {
            let a = parent_arc[v as usize];
            self.cap[a as usize] -= 1;
            self.cap[(a ^ 1) as usize] += 1;
            v = self.to[(a ^ 1) as usize];
        }
        true
    }
}

/// The split network between `s` and `t` in the graph given by 0-based
/// adjacency lists. `edge_cap` is the capacity of edge arcs: 1 for
/// path extraction, large for cut extraction (edge arcs other than a direct
/// `s`-`t` edge are internally bounded to one unit anyway, and keeping them
/// unsaturated forces the residual min cut onto internal arcs).
fn build_split_network(adj: &[Vec<u32>], s: u32, t: u32, edge_cap: u32) -> UnitFlow {
    let m = adj.len();
    let mut net = UnitFlow::new(2 * m);
    // Internal arcs first so path walks can rely on them.
    for v in 0..m as u32 {
        net.add_arc(2 * v, 2 * v + 1, 1);
    }
    for (u, row) in adj.iter().enumerate() {
        let u = u as u32;
        for &v in row {
            // A direct s-t edge stays at one unit: it is one path.
            let cap = if (u, v) == (s, t) || (u, v) == (t, s) {
                1
            } else {
                edge_cap
            };
            net.add_arc(2 * u + 1, 2 * v, cap);
        }
    }
    net
}

/// Max number of internally vertex-disjoint `s`-`t` paths, stopping early at
/// `limit` augmentations when given. Returns the count and the flow network
/// for path extraction.
fn split_max_flow(adj: &[Vec<u32>], s: u32, t: u32, limit: Option<usize>) -> (usize, UnitFlow) {
    split_max_flow_caps(adj, s, t, limit, 1)
}

fn split_max_flow_caps(
    adj: &[Vec<u32>],
    s: u32,
    t: u32,
    limit: Option<usize>,
    edge_cap: u32,
) -> (usize, UnitFlow) {
    debug_assert_ne!(s, t);
    let mut net = build_split_network(adj, s, t, edge_cap);
    let mut parent_arc = vec![0u32; 2 * adj.len()];
    let source = 2 * s + 1;
    let sink = 2 * t;
    let mut count = 0usize;
    while limit.map_or(true, |l| count < l) {
        if !net.augment(source, sink, &mut parent_arc) {
            break;
        }
        count += 1;
    }
    (count, net)
}

/// Decomposes the final flow into internally disjoint vertex paths.
fn extract_paths(adj: &[Vec<u32>], net: &UnitFlow, s: u32, t: u32, count: usize) -> Vec<Vec<u32>> {
    let m = adj.len();
    // Forward arcs carrying flow, grouped by tail node.
    let mut flow_out: Vec<Vec<u32>> = vec![Vec::new(); 2 * m];
    for a in (0..net.to.len() as u32).step_by(2) {
        if net.cap[a as usize] == 0 {
            let tail = net.to[(a + 1) as usize];
            flow_out[tail as usize].push(net.to[a as usize]);
        }
    }
    let source = 2 * s + 1;
    let sink = 2 * t;
    let mut paths = Vec::with_capacity(count);
    for _ in 0..count {
        let mut path = vec![s];
        let mut node = flow_out[source as usize].pop().expect("flow path available");
        loop {
            // node is an in-node 2v; record v and step through its out-node.
            let v = node / 2;
            path.push(v);
            if node == sink {
                break;
            }
            let out = node + 1;
            node = flow_out[out as usize].pop().expect("flow conservation");
        }
        paths.push(path);
    }
    paths
}

/// Validates a claimed family of internally disjoint `s`-`t` paths.
/// Panics on violation: results are certified before being reported.
fn certify_paths(adj: &[Vec<u32>], s: u32, t: u32, paths: &[Vec<u32>]) {
    let mut used = vec![false; adj.len()];
    for path in paths {
        assert!(path.len() >= 2, "path too short");
        assert_eq!(path[0], s, "path must start at the source");
        assert_eq!(*path.last().unwrap(), t, "path must end at the sink");
        for w in path.windows(2) {
            assert!(
                adj[w[0] as usize].contains(&w[1]),
                "path step ({},{}) is not an edge",
                w[0],
                w[1]
            );
        }
        for &v in &path[1..path.len() - 1] {
            assert!(v != s && v != t, "interior vertex equals an endpoint");
            assert!(!used[v as usize], "paths share interior vertex {v}");
            used[v as usize] = true;
        }
    }
}

/// Max internally disjoint paths plus the paths themselves, on 0-based
/// adjacency lists.
pub(crate) fn max_disjoint_paths_adj(
    adj: &[Vec<u32>],
    s: u32,
    t: u32,
    limit: Option<usize>,
) -> (usize, Vec<Vec<u32>>) {
    let (count, net) = split_max_flow(adj, s, t, limit);
    let paths = extract_paths(adj, &net, s, t, count);
    certify_paths(adj, s, t, &paths);
    (count, paths)
}

pub(crate) fn connected_adj(adj: &[Vec<u32>]) -> bool {
    let m = adj.len();
    if m == 0 {
        return true;
    }
    let mut seen = vec![false; m];
    let mut stack = vec![0u32];
    seen[0] = true;
    let mut reached = 1usize;
    while let Some(u) = stack.pop() {
        for &v in &adj[u as usize] {
            if !seen[v as usize] {
                seen[v as usize] = true;
                reached += 1;
                stack.push(v);
            }
        }
    }
    reached == m
}

/// Iterative root-split DFS for articulation vertices.
pub(crate) fn has_articulation_vertex(adj: &[Vec<u32>]) -> bool {
    let m = adj.len();
    let mut disc = vec![u32::MAX; m];
    let mut low = vec![u32::MAX; m];
    let mut parent = vec![u32::MAX; m];
    let mut timer = 0u32;
    // (vertex, neighbor cursor)
    let mut stack: Vec<(u32, usize)> = Vec::new();
    for root in 0..m as u32 {
        if disc[root as usize] != u32::MAX {
            continue;
        }
        let mut root_children = 0usize;
        disc[root as usize] = timer;
        low[root as usize] = timer;
        timer += 1;
        stack.push((root, 0));
        while let Some(&mut (u, ref mut cursor)) = stack.last_mut() {
            if *cursor < adj[u as usize].len() {
                let v = adj[u as usize][*cursor];
                *cursor += 1;
                if disc[v as usize] == u32::MAX {
                    parent[v as usize] = u;
                    if u == root {
                        root_children += 1;
                    }
                    disc[v as usize] = timer;
                    low[v as usize] = timer;
                    timer += 1;
                    stack.push((v, 0));
                } else if v != parent[u as usize] {
                    low[u as usize] = low[u as usize].min(disc[v as usize]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _)) = stack.last() {
                    low[p as usize] = low[p as usize].min(low[u as usize]);
                    if p != root && low[u as usize] >= disc[p as usize] {
                        return true;
                    }
                }
            }
        }
        if root_children > 1 {
            return true;
        }
    }
    false
}

/// Exact vertex connectivity with an optional certifying minimum cutset
/// (absent exactly for complete graphs, which have none).
///
/// Pair cover: fix a minimum-degree vertex `s`; take flows from `s` to every
/// non-neighbor and between every non-adjacent pair of neighbors of `s`.
pub(crate) fn vertex_connectivity_adj(adj: &[Vec<u32>]) -> (usize, Option<Vec<u32>>) {
    let m = adj.len();
    assert!(m >= 2, "connectivity requires at least two vertices");
    if !connected_adj(adj) {
        return (0, Some(Vec::new()));
    }
    if adj.iter().all(|row| row.len() == m - 1) {
        return (m - 1, None);
    }
    let s = (0..m as u32).min_by_key(|&v| adj[v as usize].len()).unwrap();
    let is_edge = |u: u32, v: u32| adj[u as usize].contains(&v);
    let mut pairs: Vec<(u32, u32)> = Vec::new();
    for t in 0..m as u32 {
        if t != s && !is_edge(s, t) {
            pairs.push((s, t));
        }
    }
    let nbrs = &adj[s as usize];
    for (i, &u) in nbrs.iter().enumerate() {
        for &v in &nbrs[i + 1..] {
            if !is_edge(u, v) {
                pairs.push((u, v));
            }
        }
    }
    let mut best = m - 1;
    let mut best_pair = None;
    for &(u, v) in &pairs {
        let (count, _) = split_max_flow(adj, u, v, Some(best));
        if count < best {
            best = count;
            best_pair = Some((u, v));
        }
    }
    let (u, v) = best_pair.unwrap_or(pairs[0]);
    // Rerun the minimizing pair with unsaturable edge arcs so the residual
    // min cut consists of internal arcs, i.e. a vertex cut. The pairs are
    // non-adjacent, so no direct-edge special case arises and the flow value
    // is unchanged.
    let (count, net) = split_max_flow_caps(adj, u, v, None, m as u32);
    debug_assert_eq!(count, best);
    // Minimum vertex cut: internal arcs crossing the residual cut from u_out.
    let mut reach = vec![false; 2 * m];
    let mut stack = vec![2 * u + 1];
    reach[(2 * u + 1) as usize] = true;
    while let Some(x) = stack.pop() {
        for &a in &net.heads[x as usize] {
            if net.cap[a as usize] == 0 {
                continue;
            }
            let y = net.to[a as usize];
            if !reach[y as usize] {
                reach[y as usize] = true;
                stack.push(y);
            }
        }
    }
    let cut: Vec<u32> = (0..m as u32)
        .filter(|&w| reach[(2 * w) as usize] && !reach[(2 * w + 1) as usize])
        .collect();
    assert_eq!(cut.len(), best, "residual cut must certify the flow value");
    (best, Some(cut))
}

/// `vertex_connectivity(adj) >= k`, with cheap special cases for small `k`.
pub(crate) fn is_k_connected_adj(adj: &[Vec<u32>], k: usize) -> bool {
    let m = adj.len();
    match k {
        0 => true,
        1 => m >= 1 && connected_adj(adj),
        2 => m >= 3 && connected_adj(adj) && !has_articulation_vertex(adj),
        _ => {
            if m <= k {
                return false;
            }
            if !connected_adj(adj) {
                return false;
            }
            if adj.iter().all(|row| row.len() == m - 1) {
                return true; // complete on m >= k+1 vertices
            }
            let s = (0..m as u32).min_by_key(|&v| adj[v as usize].len()).unwrap();
            if adj[s as usize].len() < k {
                return false;
            }
            let is_edge = |u: u32, v: u32| adj[u as usize].contains(&v);
            for t in 0..m as u32 {
                if t != s && !is_edge(s, t) && split_max_flow(adj, s, t, Some(k)).0 < k {
                    return false;
                }
            }
            let nbrs = adj[s as usize].clone();
            for (i, &u) in nbrs.iter().enumerate() {
                for &v in &nbrs[i + 1..] {
                    if !is_edge(u, v) && split_max_flow(adj, u, v, Some(k)).0 < k {
                        return false;
                    }
                }
            }
            true
        }
    }
}

/// Certified list of internally vertex-disjoint paths between two vertices.
#[derive(Clone, Debug, Serialize)]
pub struct DisjointPaths {
    pub count: usize,
    pub paths: Vec<Vec<usize>>,
}

/// Max internally disjoint `u`-`v` paths in `g` (1-based vertices).
/// A direct edge counts as one path.
pub fn max_disjoint_paths(g: &SimpleGraph, u: usize, v: usize) -> Result<DisjointPaths> {
    check_pair(g, u, v)?;
    let adj = g.adjacency_lists();
    let (count, paths) = max_disjoint_paths_adj(&adj, (u - 1) as u32, (v - 1) as u32, None);
    Ok(DisjointPaths {
        count,
        paths: paths
            .into_iter()
            .map(|p| p.into_iter().map(|x| x as usize + 1).collect())
            .collect(),
    })
}

fn check_pair(g: &SimpleGraph, u: usize, v: usize) -> Result<()> {
    if u == 0 || v == 0 || u > g.n() || v > g.n() {
        return Err(Error::InvalidParameter(format!(
            "vertex pair ({u},{v}) outside 1..={}",
            g.n()
        )));
    }
    if u == v {
        return Err(Error::InvalidParameter("endpoints must differ".into()));
    }
    Ok(())
}

/// Exact vertex connectivity of `g`; `n - 1` for complete graphs, 0 for
/// disconnected ones.
pub fn vertex_connectivity(g: &SimpleGraph) -> Result<usize> {
    Ok(vertex_connectivity_with_cutset(g)?.0)
}

/// Vertex connectivity plus a certifying minimum cutset (`None` exactly for
/// complete graphs).
pub fn vertex_connectivity_with_cutset(g: &SimpleGraph) -> Result<(usize, Option<Vec<usize>>)> {
    if g.n() < 2 {
        return Err(Error::InvalidParameter(
            "connectivity requires at least two vertices".into(),
        ));
    }
    let (kappa, cut) = vertex_connectivity_adj(&g.adjacency_lists());
    Ok((
        kappa,
        cut.map(|c| c.into_iter().map(|v| v as usize + 1).collect()),
    ))
}

/// `vertex_connectivity(g) >= k`.
pub fn is_k_connected_graph(g: &SimpleGraph, k: usize) -> bool {
    is_k_connected_adj(&g.adjacency_lists(), k)
}

/// A fan at `u`: paths from `u` to each target, pairwise sharing only `u`.
///
/// Realized by attaching an auxiliary vertex adjacent to exactly the targets
/// and taking disjoint `u`-auxiliary paths; the fan exists iff the flow
/// saturates all targets.
pub fn disjoint_fan(
    g: &SimpleGraph,
    u: usize,
    targets: &[usize],
) -> Result<Option<Vec<Vec<usize>>>> {
    if u == 0 || u > g.n() {
        return Err(Error::InvalidParameter(format!("vertex {u} out of range")));
    }
    let mut uniq = targets.to_vec();
    uniq.sort_unstable();
    uniq.dedup();
    if uniq.len() != targets.len() {
        return Err(Error::InvalidParameter("targets must be distinct".into()));
    }
    if targets.iter().any(|&t| t == 0 || t > g.n()) {
        return Err(Error::InvalidParameter("target out of range".into()));
    }
    if targets.contains(&u) {
        return Err(Error::InvalidParameter(
            "targets must not include the fan center".into(),
        ));
    }
    if targets.is_empty() {
        return Ok(Some(Vec::new()));
    }
    let mut adj = g.adjacency_lists();
    let aux = adj.len() as u32;
    adj.push(uniq.iter().map(|&t| (t - 1) as u32).collect());
    for &t in &uniq {
        adj[t - 1].push(aux);
    }
    let (count, paths) = max_disjoint_paths_adj(&adj, (u - 1) as u32, aux, None);
    if count < targets.len() {
        return Ok(None);
    }
    let mut fan: Vec<Vec<usize>> = paths
        .into_iter()
        .map(|p| p[..p.len() - 1].iter().map(|&x| x as usize + 1).collect())
        .collect();
    fan.sort_by_key(|p| *p.last().unwrap());
    let ends: Vec<usize> = fan.iter().map(|p| *p.last().unwrap()).collect();
    assert_eq!(ends, uniq, "fan must hit every target exactly once");
    Ok(Some(fan))
}

/// Exact connectivity of the `FS(X,Y)` component containing `sigma`.
pub fn fs_component_connectivity(inst: &FSInstance, sigma: &Permutation) -> Result<usize> {
    let comp = inst.fs_component_of(sigma)?;
    fs_component_kappa(&comp)
}

/// Exact connectivity of an already-materialized component.
pub fn fs_component_kappa(comp: &FsComponent) -> Result<usize> {
    if comp.len() < 2 {
        return Ok(0);
    }
    Ok(vertex_connectivity_adj(&comp.adj).0)
}

/// Max disjoint paths between two states of one explicit component, with an
/// optional early-exit limit.
pub fn fs_max_disjoint_paths(
    comp: &FsComponent,
    sigma: &Permutation,
    rho: &Permutation,
    limit: Option<usize>,
) -> Result<usize> {
    let a = comp
        .index_of(sigma)
        .ok_or_else(|| Error::InvalidParameter(format!("{sigma} not in component")))?;
    let b = comp
        .index_of(rho)
        .ok_or_else(|| Error::InvalidParameter(format!("{rho} not in component")))?;
    if a == b {
        return Err(Error::InvalidParameter("states must differ".into()));
    }
    Ok(max_disjoint_paths_adj(&comp.adj, a as u32, b as u32, limit).0)
}

/// Which position pairs the local exchangeability check quantifies over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairScope {
    /// Every edge of `X`, whether or not the swap is friendly at `sigma`.
    AllXEdges,
    /// Only edges of `X` whose swap is friendly at `sigma` (the stricter
    /// reading; implied by the default scope).
    FriendlyOnly,
}

#[derive(Clone, Copy, Debug)]
pub struct ExchangeabilityOptions {
    pub scope: PairScope,
    /// Check a single state per component. Sound only when both `X` and `Y`
    /// are vertex-transitive; callers assert that themselves.
    pub one_state_per_component: bool,
}

impl Default for ExchangeabilityOptions {
    fn default() -> Self {
        Self {
            scope: PairScope::AllXEdges,
            one_state_per_component: false,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ExchangeabilityReport {
    pub holds: bool,
    pub checked_pairs: u64,
    /// First failing `(sigma, (u,v))` found, in rank order.
    pub counterexample: Option<(Permutation, (usize, usize))>,
}

/// Local exchangeability: do `k` internally disjoint `FS(X,Y)`-paths join
/// `sigma` and `sigma ∘ (u,v)` for every state and every checked `X`-edge?
/// A positive verdict certifies that `FS(X,Y)` is `k`-connected.
pub fn check_local_exchangeability(
    inst: &FSInstance,
    k: usize,
    opts: ExchangeabilityOptions,
) -> Result<ExchangeabilityReport> {
    let n = inst.n();
    if n < k + 1 {
        return Err(Error::InvalidParameter(format!(
            "local exchangeability needs n >= k+1, got n = {n}, k = {k}"
        )));
    }
    let total =
        factorial(n).ok_or_else(|| Error::InvalidParameter("n too large".into()))? as usize;
    if total > EXPLICIT_STATE_BUDGET {
        return Err(Error::BudgetExceeded(format!(
            "whole-space exchangeability needs {total} explicit states, budget is \
             {EXPLICIT_STATE_BUDGET}"
        )));
    }
    let x_edges = inst.x().edges();
    // The whole state space as one explicit graph indexed by rank.
    let adj: Vec<Vec<u32>> = (0..total as u64)
        .map(|rank| {
            let p = Permutation::unrank(rank, n).expect("rank in range");
            let mut row: Vec<u32> = inst
                .friendly_swaps(&p)
                .into_iter()
                .map(|(i, j)| swap_rank(&p, i, j))
                .collect();
            row.sort_unstable();
            row
        })
        .collect();
    let states: Box<dyn Iterator<Item = u64>> = if opts.one_state_per_component {
        let (labels, count) = inst.component_labels()?;
        let mut reps = vec![u64::MAX; count];
        for (rank, &label) in labels.iter().enumerate() {
            if reps[label as usize] == u64::MAX {
                reps[label as usize] = rank as u64;
            }
        }
        Box::new(reps.into_iter())
    } else {
        Box::new(0..total as u64)
    };
    let mut checked = 0u64;
    for rank in states {
        let sigma = Permutation::unrank(rank, n).expect("rank in range");
        for &(u, v) in &x_edges {
            if opts.scope == PairScope::FriendlyOnly
                && !inst.y().has_edge(sigma.apply(u), sigma.apply(v))
            {
                continue;
            }
            let other = swap_rank(&sigma, u, v);
            checked += 1;
            let (count, _) = split_max_flow(&adj, rank as u32, other, Some(k));
            if count < k {
                return Ok(ExchangeabilityReport {
                    holds: false,
                    checked_pairs: checked,
                    counterexample: Some((sigma, (u, v))),
                });
            }
        }
    }
    Ok(ExchangeabilityReport {
        holds: true,
        checked_pairs: checked,
        counterexample: None,
    })
}

#[inline]
fn swap_rank(sigma: &Permutation, i: usize, j: usize) -> u32 {
    let mut image: [u8; 20] = [0; 20];
    let n = sigma.n();
    image[..n].copy_from_slice(sigma.images());
    image.swap(i - 1, j - 1);
    rank_images(&image[..n]) as u32
}

/// Connectivity report for the command-line front end.
#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ConnectivityReport {
    pub n: usize,
    pub kappa: usize,
    /// A minimum vertex cutset certifying `kappa`; absent for complete graphs.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cutset: Option<Vec<usize>>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_family, gnp, FamilySpec};
    use proptest::prelude::*;

    fn fam(s: &str) -> SimpleGraph {
        build_family(&s.parse::<FamilySpec>().unwrap()).unwrap()
    }

    /// Brute-force connectivity: smallest vertex set whose removal
    /// disconnects the graph; n-1 for complete graphs.
    fn brute_kappa(g: &SimpleGraph) -> usize {
        let n = g.n();
        let adj = g.adjacency_lists();
        if !connected_adj(&adj) {
            return 0;
        }
        for size in 0..n - 1 {
            let mut found = false;
            for_all_subsets(n, size, &mut |subset| {
                if !found && removal_disconnects(&adj, subset) {
                    found = true;
                }
            });
            if found {
                return size;
            }
        }
        n - 1
    }

    fn for_all_subsets(n: usize, size: usize, f: &mut impl FnMut(&[usize])) {
        fn rec(
            n: usize,
            size: usize,
            start: usize,
            cur: &mut Vec<usize>,
            f: &mut impl FnMut(&[usize]),
        ) {
            if cur.len() == size {
                f(cur);
                return;
            }
            for v in start..n {
                cur.push(v);
                rec(n, size, v + 1, cur, f);
                cur.pop();
            }
        }
        rec(n, size, 0, &mut Vec::new(), f);
    }

    fn removal_disconnects(adj: &[Vec<u32>], removed: &[usize]) -> bool {
        let m = adj.len();
        let gone: Vec<bool> = (0..m).map(|v| removed.contains(&v)).collect();
        let Some(start) = (0..m).find(|&v| !gone[v]) else {
            return false;
        };
        let mut seen = vec![false; m];
        seen[start] = true;
        let mut stack = vec![start];
        let mut reached = 1;
        while let Some(u) = stack.pop() {
            for &v in &adj[u] {
                let v = v as usize;
                if !gone[v] && !seen[v] {
                    seen[v] = true;
                    reached += 1;
                    stack.push(v);
                }
            }
        }
        reached < m - removed.len()
    }

    /// Exhaustive oracle for max internally disjoint paths: enumerate all
    /// simple paths, then search for the largest pairwise-disjoint family.
    fn brute_max_disjoint(g: &SimpleGraph, s: usize, t: usize) -> usize {
        fn all_paths(
            g: &SimpleGraph,
            cur: &mut Vec<usize>,
            t: usize,
            onpath: &mut u64,
            out: &mut Vec<Vec<usize>>,
        ) {
            let last = *cur.last().unwrap();
            if last == t {
                out.push(cur.clone());
                return;
            }
            for nb in g.neighbors(last) {
                if *onpath & (1 << (nb - 1)) == 0 {
                    *onpath |= 1 << (nb - 1);
                    cur.push(nb);
                    all_paths(g, cur, t, onpath, out);
                    cur.pop();
                    *onpath &= !(1 << (nb - 1));
                }
            }
        }
        let mut paths = Vec::new();
        let mut onpath = 1u64 << (s - 1);
        all_paths(g, &mut vec![s], t, &mut onpath, &mut paths);
        let masks: Vec<u64> = paths
            .iter()
            .map(|p| {
                p[1..p.len() - 1]
                    .iter()
                    .fold(0u64, |m, &v| m | (1 << (v - 1)))
            })
            .collect();
        fn best(masks: &[u64], idx: usize, used: u64) -> usize {
            if idx == masks.len() {
                return 0;
            }
            let skip = best(masks, idx + 1, used);
            if masks[idx] & used == 0 {
                skip.max(1 + best(masks, idx + 1, used | masks[idx]))
            } else {
                skip
            }
        }
        best(&masks, 0, 0)
    }

    #[test]
    fn complete_graph_paths() {
        let k4 = fam("complete:4");
        for u in 1..=4 {
            for v in u + 1..=4 {
                assert_eq!(max_disjoint_paths(&k4, u, v).unwrap().count, 3);
            }
        }
    }

    #[test]
    fn cycle_antipodal_paths() {
        let c6 = fam("cycle:6");
        let dp = max_disjoint_paths(&c6, 1, 4).unwrap();
        assert_eq!(dp.count, 2);
    }

    #[test]
    fn theta0_degree_three_pair() {
        let g = fam("theta0");
        let dp = max_disjoint_paths(&g, 1, 3).unwrap();
        assert_eq!(dp.count, 3);
        assert_eq!(brute_max_disjoint(&g, 1, 3), 3);
    }

    #[test]
    fn kappa_known_values() {
        assert_eq!(vertex_connectivity(&fam("complete:5")).unwrap(), 4);
        assert_eq!(vertex_connectivity(&fam("star:6")).unwrap(), 1);
        assert_eq!(vertex_connectivity(&fam("theta0")).unwrap(), 2);
        assert_eq!(vertex_connectivity(&fam("cycle:7")).unwrap(), 2);
        assert_eq!(vertex_connectivity(&fam("path:2")).unwrap(), 1);
    }

    #[test]
    fn kappa_cutset_certification() {
        let (kappa, cut) = vertex_connectivity_with_cutset(&fam("star:6")).unwrap();
        assert_eq!(kappa, 1);
        assert_eq!(cut, Some(vec![6]));
        let (kappa, cut) = vertex_connectivity_with_cutset(&fam("complete:4")).unwrap();
        assert_eq!(kappa, 3);
        assert!(cut.is_none());
        // The theta graph's cutset really disconnects it.
        let g = fam("theta0");
        let (kappa, cut) = vertex_connectivity_with_cutset(&g).unwrap();
        let cut = cut.unwrap();
        assert_eq!(cut.len(), kappa);
        let adj = g.adjacency_lists();
        let cut0: Vec<usize> = cut.iter().map(|&v| v - 1).collect();
        assert!(removal_disconnects(&adj, &cut0));
    }

    #[test]
    fn kappa_matches_brute_force_on_fixed_corpus() {
        for s in [
            "path:5",
            "cycle:6",
            "star:7",
            "star_plus:5",
            "theta0",
            "complete:6",
            "grid:2:3",
            "starcle:7:4",
            "grid:2:4",
        ] {
            let g = fam(s);
            assert_eq!(vertex_connectivity(&g).unwrap(), brute_kappa(&g), "graph {s}");
        }
    }

    #[test]
    fn removing_any_smaller_set_keeps_connection() {
        // Both sides of the connectivity definition, exhaustively.
        for s in ["cycle:6", "theta0", "grid:2:3", "complete:5", "star_plus:6"] {
            let g = fam(s);
            let kappa = vertex_connectivity(&g).unwrap();
            let adj = g.adjacency_lists();
            if kappa > 0 {
                for_all_subsets(g.n(), kappa - 1, &mut |subset| {
                    assert!(!removal_disconnects(&adj, subset), "graph {s}");
                });
            }
            if kappa < g.n() - 1 {
                let mut found = false;
                for_all_subsets(g.n(), kappa, &mut |subset| {
                    found |= removal_disconnects(&adj, subset);
                });
                assert!(found, "graph {s} must have a disconnecting {kappa}-set");
            }
        }
    }

    #[test]
    fn fan_in_complete_graph() {
        let k4 = fam("complete:4");
        let fan = disjoint_fan(&k4, 1, &[2, 3, 4]).unwrap().unwrap();
        assert_eq!(fan, vec![vec![1, 2], vec![1, 3], vec![1, 4]]);
    }

    #[test]
    fn fan_on_cycle() {
        let c5 = fam("cycle:5");
        let fan = disjoint_fan(&c5, 1, &[2, 5]).unwrap().unwrap();
        assert_eq!(fan, vec![vec![1, 2], vec![1, 5]]);
        // Three disjoint paths from one vertex of a cycle do not exist.
        assert!(disjoint_fan(&c5, 1, &[2, 3, 4]).unwrap().is_none());
    }

    #[test]
    fn fan_on_theta0_branch_vertex() {
        let g = fam("theta0");
        // Degree-3 vertex 1 fanning to neighbors on distinct branch paths.
        let fan = disjoint_fan(&g, 1, &[2, 5]).unwrap().unwrap();
        assert_eq!(fan.len(), 2);
        let fan = disjoint_fan(&g, 1, &[2, 5, 6]).unwrap().unwrap();
        assert_eq!(fan.len(), 3);
    }

    #[test]
    fn fan_rejects_bad_arguments() {
        let c5 = fam("cycle:5");
        assert!(disjoint_fan(&c5, 1, &[1, 2]).is_err());
        assert!(disjoint_fan(&c5, 1, &[2, 2]).is_err());
        assert!(disjoint_fan(&c5, 9, &[2]).is_err());
    }

    #[test]
    fn fs_component_connectivity_star_instances() {
        let id4 = Permutation::identity(4);
        let c4 = FSInstance::new(fam("cycle:4"), fam("star:4")).unwrap();
        assert_eq!(fs_component_connectivity(&c4, &id4).unwrap(), 2);
        let k4 = FSInstance::new(fam("complete:4"), fam("star:4")).unwrap();
        assert_eq!(fs_component_connectivity(&k4, &id4).unwrap(), 3);
        let p3 = FSInstance::new(fam("path:3"), fam("path:3")).unwrap();
        assert_eq!(
            fs_component_connectivity(&p3, &Permutation::identity(3)).unwrap(),
            1
        );
    }

    #[test]
    fn exchangeability_k3_k3() {
        let inst = FSInstance::new(fam("complete:3"), fam("complete:3")).unwrap();
        let report =
            check_local_exchangeability(&inst, 2, ExchangeabilityOptions::default()).unwrap();
        assert!(
            report.holds,
            "FS(K3,K3) is a 6-cycle; every swap pair has 2 disjoint paths"
        );
    }

    #[test]
    fn exchangeability_p3_p3_fails() {
        let inst = FSInstance::new(fam("path:3"), fam("path:3")).unwrap();
        let report =
            check_local_exchangeability(&inst, 1, ExchangeabilityOptions::default()).unwrap();
        assert!(!report.holds);
        let (sigma, (u, v)) = report.counterexample.unwrap();
        // The counterexample swap is not friendly at sigma, so the endpoints
        // sit in different components.
        assert!(!inst.y().has_edge(sigma.apply(u), sigma.apply(v)));
    }

    #[test]
    fn exchangeability_k1_when_connected() {
        let inst = FSInstance::new(fam("complete:3"), fam("complete:3")).unwrap();
        let report =
            check_local_exchangeability(&inst, 1, ExchangeabilityOptions::default()).unwrap();
        assert!(report.holds);
        // Per-component representative mode agrees here (both sides are
        // vertex-transitive).
        let opts = ExchangeabilityOptions {
            one_state_per_component: true,
            ..Default::default()
        };
        assert!(check_local_exchangeability(&inst, 1, opts).unwrap().holds);
    }

    #[test]
    fn k2_shortcut_agrees_with_flow() {
        for s in [
            "path:4",
            "cycle:5",
            "star:5",
            "theta0",
            "complete:4",
            "grid:2:3",
        ] {
            let g = fam(s);
            let adj = g.adjacency_lists();
            let kappa = vertex_connectivity(&g).unwrap();
            assert_eq!(is_k_connected_adj(&adj, 2), kappa >= 2, "graph {s}");
            assert_eq!(is_k_connected_adj(&adj, 3), kappa >= 3, "graph {s}");
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(60))]

        #[test]
        fn kappa_matches_brute_force(
            (n, seed) in (2usize..=7).prop_flat_map(|n| (Just(n), any::<u64>()))
        ) {
            let g = gnp(n, 0.5, seed).unwrap();
            prop_assert_eq!(vertex_connectivity(&g).unwrap(), brute_kappa(&g));
        }

        #[test]
        fn is_k_connected_matches_kappa(
            (n, seed, k) in (3usize..=7).prop_flat_map(|n| (Just(n), any::<u64>(), 1usize..=4))
        ) {
            let g = gnp(n, 0.55, seed).unwrap();
            let kappa = vertex_connectivity(&g).unwrap();
            prop_assert_eq!(is_k_connected_graph(&g, k), kappa >= k);
        }

        #[test]
        fn menger_pairwise_equivalence(
            (n, seed) in (2usize..=6).prop_flat_map(|n| (Just(n), any::<u64>()))
        ) {
            // min over non-adjacent pairs of max_disjoint_paths equals the
            // connectivity, on connected inputs.
            let g = gnp(n, 0.6, seed).unwrap();
            prop_assume!(g.is_connected());
            let kappa = vertex_connectivity(&g).unwrap();
            let n = g.n();
            let mut min_pair = usize::MAX;
            for u in 1..=n {
                for v in u + 1..=n {
                    let dp = max_disjoint_paths(&g, u, v).unwrap();
                    prop_assert_eq!(dp.count, brute_max_disjoint(&g, u, v));
                    if !g.has_edge(u, v) {
                        min_pair = min_pair.min(dp.count);
                    }
                }
            }
            if min_pair != usize::MAX {
                prop_assert_eq!(kappa, min_pair);
            } else {
                prop_assert_eq!(kappa, n - 1);
            }
            prop_assert!(kappa <= g.min_degree());
        }
    }
}
