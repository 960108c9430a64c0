//! The friends-and-strangers graph `FS(X,Y)` as an implicit graph over all
//! `n!` placements, with exact component enumeration by breadth-first search
//! over Lehmer-ranked permutations.
//!
//! `X` is the position graph and `Y` the people graph. A placement `sigma`
//! (person `sigma(i)` stands on position `i`) is adjacent to
//! `sigma ∘ (i,j)` exactly when `(i,j)` is an edge of `X` and
//! `(sigma(i), sigma(j))` is an edge of `Y`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::perm::{factorial, rank_images, Permutation};

/// Default cap on `n` for whole-state-space operations (10! = 3,628,800).
pub const DEFAULT_ENUMERATION_CAP: usize = 10;

/// Absolute cap: ranks are stored as `u32` and 12! still fits comfortably.
pub const MAX_ENUMERATION_N: usize = 12;

/// Cap on the number of states materialized as an explicit component.
pub const EXPLICIT_STATE_BUDGET: usize = 200_000;

/// A pair `(X, Y)` of equal-order graphs defining the implicit `FS(X,Y)`
/// state space. Immutable after construction.
#[derive(Clone, Debug)]
pub struct FSInstance {
    x: SimpleGraph,
    y: SimpleGraph,
    x_edges: Vec<(usize, usize)>,
    cap: usize,
}

impl FSInstance {
    pub fn new(x: SimpleGraph, y: SimpleGraph) -> Result<Self> {
        Self::with_cap(x, y, DEFAULT_ENUMERATION_CAP)
    }

    pub fn with_cap(x: SimpleGraph, y: SimpleGraph, cap: usize) -> Result<Self> {
        if x.n() != y.n() {
            return Err(Error::InvalidParameter(format!(
                "X has {} vertices but Y has {}",
                x.n(),
                y.n()
            )));
        }
        if cap > MAX_ENUMERATION_N {
            return Err(Error::InvalidParameter(format!(
                "enumeration cap {cap} exceeds hard maximum {MAX_ENUMERATION_N}"
            )));
        }
        let x_edges = x.edges();
        Ok(Self { x, y, x_edges, cap })
    }

    pub fn n(&self) -> usize {
        self.x.n()
    }

    pub fn x(&self) -> &SimpleGraph {
        &self.x
    }

    pub fn y(&self) -> &SimpleGraph {
        &self.y
    }

    /// Whether `Y` is literally the star with center `n` (the instances for
    /// which per-type bookkeeping is meaningful).
    pub fn is_star_instance(&self) -> bool {
        let n = self.n();
        n >= 2 && self.y.edge_count() == n - 1 && (1..n).all(|i| self.y.has_edge(i, n))
    }

    fn state_count(&self) -> Result<u64> {
        let n = self.n();
        if n > self.cap {
            return Err(Error::CapExceeded { n, cap: self.cap });
        }
        Ok(factorial(n).expect("cap <= 12"))
    }

    /// The edges of `X` along which `sigma` admits a friendly swap.
    pub fn friendly_swaps(&self, sigma: &Permutation) -> Vec<(usize, usize)> {
        self.x_edges
            .iter()
            .copied()
            .filter(|&(i, j)| self.y.has_edge(sigma.apply(i), sigma.apply(j)))
            .collect()
    }

    /// One entry per friendly swap: the `X`-edge used and the neighbor state.
    pub fn fs_neighbors(&self, sigma: &Permutation) -> Vec<((usize, usize), Permutation)> {
        self.friendly_swaps(sigma)
            .into_iter()
            .map(|(i, j)| ((i, j), sigma.swapped_at(i, j)))
            .collect()
    }

    pub fn fs_degree(&self, sigma: &Permutation) -> usize {
        self.friendly_swaps(sigma).len()
    }

    /// Exact partition of all `n!` states into connected components.
    pub fn fs_components(&self) -> Result<Vec<ComponentSummary>> {
        let total = self.state_count()? as usize;
        let star = self.is_star_instance();
        let n = self.n();
        let mut visited = BitTable::new(total);
        let mut queue = std::collections::VecDeque::new();
        let mut out = Vec::new();
        for seed in 0..total as u32 {
            if visited.get(seed as usize) {
                continue;
            }
            visited.set(seed as usize);
            queue.push_back(seed);
            let mut size = 0u64;
            let mut histogram = if star { vec![0u64; n] } else { Vec::new() };
            while let Some(rank) = queue.pop_front() {
                size += 1;
                let sigma = Permutation::unrank(rank as u64, n).expect("rank in range");
                if star {
                    histogram[sigma.preimage(n) - 1] += 1;
                }
                for (i, j) in self.friendly_swaps(&sigma) {
                    let nb = neighbor_rank(&sigma, i, j);
                    if !visited.get(nb as usize) {
                        visited.set(nb as usize);
                        queue.push_back(nb);
                    }
                }
            }
            out.push(ComponentSummary {
                id: out.len(),
                size,
                representative: Permutation::unrank(seed as u64, n).expect("rank in range"),
                type_histogram: if star { Some(histogram) } else { None },
            });
        }
        debug_assert_eq!(out.iter().map(|c| c.size).sum::<u64>(), total as u64);
        Ok(out)
    }

    /// Component label per rank plus the number of components. Labels are
    /// assigned in increasing order of each component's lowest rank.
    pub fn component_labels(&self) -> Result<(Vec<u32>, usize)> {
        let total = self.state_count()? as usize;
        let n = self.n();
        const UNSET: u32 = u32::MAX;
        let mut label = vec![UNSET; total];
        let mut count = 0u32;
        let mut queue = std::collections::VecDeque::new();
        for seed in 0..total as u32 {
            if label[seed as usize] != UNSET {
                continue;
            }
            label[seed as usize] = count;
            queue.push_back(seed);
            while let Some(rank) = queue.pop_front() {
                let sigma = Permutation::unrank(rank as u64, n).expect("rank in range");
                for (i, j) in self.friendly_swaps(&sigma) {
                    let nb = neighbor_rank(&sigma, i, j);
                    if label[nb as usize] == UNSET {
                        label[nb as usize] = count;
                        queue.push_back(nb);
                    }
                }
            }
            count += 1;
        }
        Ok((label, count as usize))
    }

    /// Materializes the component containing `sigma` as an explicit graph.
    /// States are numbered by their position in the sorted rank list.
    pub fn fs_component_of(&self, sigma: &Permutation) -> Result<FsComponent> {
        self.state_count()?;
        let n = self.n();
        if sigma.n() != n {
            return Err(Error::LengthMismatch(sigma.n(), n));
        }
        let start = sigma.rank() as u32;
        let mut members = vec![start];
        let mut seen = std::collections::HashSet::from([start]);
        let mut head = 0usize;
        while head < members.len() {
            let rank = members[head];
            head += 1;
            if members.len() > EXPLICIT_STATE_BUDGET {
                return Err(Error::BudgetExceeded(format!(
                    "component exceeds the explicit materialization budget of \
                     {EXPLICIT_STATE_BUDGET} states"
                )));
            }
            let p = Permutation::unrank(rank as u64, n).expect("rank in range");
            for (i, j) in self.friendly_swaps(&p) {
                let nb = neighbor_rank(&p, i, j);
                if seen.insert(nb) {
                    members.push(nb);
                }
            }
        }
        members.sort_unstable();
        let adj = members
            .iter()
            .map(|&rank| {
                let p = Permutation::unrank(rank as u64, n).expect("rank in range");
                let mut row: Vec<u32> = self
                    .friendly_swaps(&p)
                    .into_iter()
                    .map(|(i, j)| {
                        let nb = neighbor_rank(&p, i, j);
                        members.binary_search(&nb).expect("neighbor in component") as u32
                    })
                    .collect();
                row.sort_unstable();
                row
            })
            .collect();
        Ok(FsComponent {
            n,
            ranks: members,
            adj,
        })
    }

    /// Searches for a state of degree zero; returns the lowest-rank witness.
    pub fn has_isolated_vertex(&self) -> Result<Option<Permutation>> {
        let total = self.state_count()?;
        let n = self.n();
        for rank in 0..total {
            let sigma = Permutation::unrank(rank, n).expect("rank in range");
            if self.fs_degree(&sigma) == 0 {
                return Ok(Some(sigma));
            }
        }
        Ok(None)
    }
}

/// Rank of `sigma ∘ (i,j)` without materializing the neighbor.
#[inline]
fn neighbor_rank(sigma: &Permutation, i: usize, j: usize) -> u32 {
    let mut image: [u8; 20] = [0; 20];
    let n = sigma.n();
    image[..n].copy_from_slice(sigma.images());
    image.swap(i - 1, j - 1);
    rank_images(&image[..n]) as u32
}

/// Summary of one connected component of `FS(X,Y)`.
#[derive(Clone, Debug)]
pub struct ComponentSummary {
    pub id: usize,
    pub size: u64,
    /// Lowest-rank member.
    pub representative: Permutation,
    /// For star instances: count of members per type `sigma^{-1}(n)`;
    /// index `p-1` holds the count for type `p`.
    pub type_histogram: Option<Vec<u64>>,
}

/// The induced subgraph of `FS(X,Y)` on one component, with stable vertex
/// numbering by rank.
#[derive(Clone, Debug)]
pub struct FsComponent {
    n: usize,
    /// Sorted Lehmer ranks of the member states.
    pub ranks: Vec<u32>,
    /// Adjacency lists over indices into `ranks`.
    pub adj: Vec<Vec<u32>>,
}

impl FsComponent {
    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.len()).sum::<usize>() / 2
    }

    /// The state at explicit index `idx`.
    pub fn state(&self, idx: usize) -> Permutation {
        Permutation::unrank(self.ranks[idx] as u64, self.n).expect("rank in range")
    }

    pub fn index_of(&self, sigma: &Permutation) -> Option<usize> {
        self.ranks.binary_search(&(sigma.rank() as u32)).ok()
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(|r| r.len()).min().unwrap_or(0)
    }
}

/// Machine-readable component report.
#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ComponentReport {
    pub n: usize,
    pub component_count: usize,
    pub components: Vec<ComponentEntry>,
}

#[derive(Serialize)]
pub struct ComponentEntry {
    pub size: u64,
    pub representative: Vec<u8>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub type_histogram: Option<Vec<u64>>,
}

impl ComponentReport {
    pub fn new(n: usize, components: &[ComponentSummary]) -> Self {
        Self {
            n,
            component_count: components.len(),
            components: components
                .iter()
                .map(|c| ComponentEntry {
                    size: c.size,
                    representative: c.representative.images().to_vec(),
                    type_histogram: c.type_histogram.clone(),
                })
                .collect(),
        }
    }
}

/// Flat bit table indexed by rank; the visited set for whole-space search.
struct BitTable {
    words: Vec<u64>,
}

impl BitTable {
    fn new(len: usize) -> Self {
        Self {
            words: vec![0; len.div_ceil(64)],
        }
    }

    #[inline]
    fn get(&self, i: usize) -> bool {
        self.words[i >> 6] & (1 << (i & 63)) != 0
    }

    #[inline]
    fn set(&mut self, i: usize) {
        self.words[i >> 6] |= 1 << (i & 63);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_family, FamilySpec};
    use proptest::prelude::*;

    fn fam(s: &str) -> SimpleGraph {
        build_family(&s.parse::<FamilySpec>().unwrap()).unwrap()
    }

    fn inst(x: &str, y: &str) -> FSInstance {
        FSInstance::new(fam(x), fam(y)).unwrap()
    }

    /// Independent neighbor oracle straight from the defining edge relation:
    /// try every transposition of [n] and test both membership conditions.
    fn naive_neighbors(inst: &FSInstance, sigma: &Permutation) -> Vec<Permutation> {
        let n = inst.n();
        let mut out = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                if inst.x().has_edge(i, j) && inst.y().has_edge(sigma.apply(i), sigma.apply(j)) {
                    out.push(sigma.swapped_at(i, j));
                }
            }
        }
        out.sort();
        out
    }

    #[test]
    fn p3_p3_neighbors_match_known_figure() {
        let fs = inst("path:3", "path:3");
        let id = Permutation::identity(3);
        let mut nbs: Vec<Permutation> = fs.fs_neighbors(&id).into_iter().map(|(_, p)| p).collect();
        nbs.sort();
        assert_eq!(
            nbs,
            vec![
                Permutation::from_images(&[1, 3, 2]).unwrap(),
                Permutation::from_images(&[2, 1, 3]).unwrap(),
            ]
        );
        let rev = Permutation::from_images(&[3, 2, 1]).unwrap();
        let mut nbs: Vec<Permutation> =
            fs.fs_neighbors(&rev).into_iter().map(|(_, p)| p).collect();
        nbs.sort();
        assert_eq!(
            nbs,
            vec![
                Permutation::from_images(&[2, 3, 1]).unwrap(),
                Permutation::from_images(&[3, 1, 2]).unwrap(),
            ]
        );
    }

    #[test]
    fn edgeless_x_freezes_everything() {
        let x = SimpleGraph::empty(4).unwrap();
        let fs = FSInstance::new(x, fam("complete:4")).unwrap();
        assert!(fs.fs_neighbors(&Permutation::identity(4)).is_empty());
        let witness = fs.has_isolated_vertex().unwrap().unwrap();
        assert_eq!(witness, Permutation::identity(4));
        assert_eq!(fs.fs_components().unwrap().len(), 24);
    }

    #[test]
    fn p3_p3_components() {
        let comps = inst("path:3", "path:3").fs_components().unwrap();
        assert_eq!(comps.len(), 2);
        assert!(comps.iter().all(|c| c.size == 3));
    }

    #[test]
    fn c6_star6_components() {
        let comps = inst("cycle:6", "star:6").fs_components().unwrap();
        assert_eq!(comps.len(), 24);
        assert!(comps.iter().all(|c| c.size == 30));
    }

    #[test]
    fn k3_k3_single_component() {
        let fs = inst("complete:3", "complete:3");
        let comps = fs.fs_components().unwrap();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].size, 6);
        let comp = fs.fs_component_of(&Permutation::identity(3)).unwrap();
        assert_eq!(comp.len(), 6);
    }

    #[test]
    fn p3_p3_component_subgraph_is_a_path() {
        let fs = inst("path:3", "path:3");
        let comp = fs.fs_component_of(&Permutation::identity(3)).unwrap();
        assert_eq!(comp.len(), 3);
        assert_eq!(comp.edge_count(), 2);
        let mut degs: Vec<usize> = comp.adj.iter().map(|r| r.len()).collect();
        degs.sort_unstable();
        assert_eq!(degs, vec![1, 1, 2]);
    }

    #[test]
    fn p4_star4_identity_component() {
        let fs = inst("path:4", "star:4");
        let comp = fs.fs_component_of(&Permutation::identity(4)).unwrap();
        assert_eq!(comp.len(), 4);
    }

    #[test]
    fn star_type_histograms_balance() {
        let fs = inst("cycle:4", "star:4");
        assert!(fs.is_star_instance());
        let comps = fs.fs_components().unwrap();
        for c in &comps {
            let hist = c.type_histogram.as_ref().unwrap();
            assert_eq!(hist.iter().sum::<u64>(), c.size);
            // Every type occurs in every component.
            assert!(hist.iter().all(|&h| h > 0));
        }
    }

    #[test]
    fn kn_kn_never_isolated() {
        for n in 2..=5 {
            let fs = inst(&format!("complete:{n}"), &format!("complete:{n}"));
            assert!(fs.has_isolated_vertex().unwrap().is_none());
        }
    }

    #[test]
    fn c4_c4_isolated_vertex_scan() {
        // Exhaustive degree scan over all 24 states, then compare.
        let fs = inst("cycle:4", "cycle:4");
        let mut expect = None;
        for rank in 0..24 {
            let p = Permutation::unrank(rank, 4).unwrap();
            if fs.fs_degree(&p) == 0 {
                expect = Some(p);
                break;
            }
        }
        assert_eq!(fs.has_isolated_vertex().unwrap(), expect);
        // C4 against C4 always admits some friendly swap: no witness exists.
        assert!(expect.is_none());
    }

    #[test]
    fn cap_is_enforced() {
        let x = fam("path:5");
        let y = fam("star:5");
        let fs = FSInstance::with_cap(x, y, 4).unwrap();
        assert!(matches!(
            fs.fs_components(),
            Err(Error::CapExceeded { n: 5, cap: 4 })
        ));
    }

    #[test]
    fn single_vertex_space() {
        let x = SimpleGraph::empty(1).unwrap();
        let y = SimpleGraph::empty(1).unwrap();
        let fs = FSInstance::new(x, y).unwrap();
        let comps = fs.fs_components().unwrap();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].size, 1);
    }

    #[test]
    fn component_report_shape() {
        let comps = inst("path:3", "path:3").fs_components().unwrap();
        let report = ComponentReport::new(3, &comps);
        let json = serde_json::to_value(&report).unwrap();
        assert_eq!(json["componentCount"], 2);
        assert_eq!(json["components"][0]["size"], 3);
        assert!(json["components"][0]["representative"].is_array());
    }

    fn arb_graph(n: usize, density_bits: u64) -> SimpleGraph {
        crate::graph::gnp(n, 0.45, density_bits).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn neighbor_relation_is_symmetric(
            (n, sx, sy, rank_salt) in (3usize..=5).prop_flat_map(|n| {
                (Just(n), any::<u64>(), any::<u64>(), any::<u64>())
            })
        ) {
            let fs = FSInstance::new(arb_graph(n, sx), arb_graph(n, sy)).unwrap();
            let total = factorial(n).unwrap();
            let sigma = Permutation::unrank(rank_salt % total, n).unwrap();
            for (_, tau) in fs.fs_neighbors(&sigma) {
                let back: Vec<Permutation> =
                    fs.fs_neighbors(&tau).into_iter().map(|(_, p)| p).collect();
                prop_assert!(back.contains(&sigma));
            }
            // Degree bounded by both edge counts.
            let d = fs.fs_degree(&sigma);
            prop_assert!(d <= fs.x().edge_count() && d <= fs.y().edge_count());
        }

        #[test]
        fn neighbors_match_naive_oracle(
            (n, sx, sy, rank_salt) in (2usize..=5).prop_flat_map(|n| {
                (Just(n), any::<u64>(), any::<u64>(), any::<u64>())
            })
        ) {
            let fs = FSInstance::new(arb_graph(n, sx), arb_graph(n, sy)).unwrap();
            let total = factorial(n).unwrap();
            let sigma = Permutation::unrank(rank_salt % total, n).unwrap();
            let mut got: Vec<Permutation> =
                fs.fs_neighbors(&sigma).into_iter().map(|(_, p)| p).collect();
            got.sort();
            got.dedup();
            prop_assert_eq!(got, naive_neighbors(&fs, &sigma));
        }

        #[test]
        fn component_multiset_symmetric_in_x_and_y(
            (n, sx, sy) in (2usize..=5).prop_flat_map(|n| (Just(n), any::<u64>(), any::<u64>()))
        ) {
            // FS(X,Y) and FS(Y,X) have the same component size multiset,
            // via the inversion isomorphism.
            let x = arb_graph(n, sx);
            let y = arb_graph(n, sy);
            let mut a: Vec<u64> = FSInstance::new(x.clone(), y.clone()).unwrap()
                .fs_components().unwrap().iter().map(|c| c.size).collect();
            let mut b: Vec<u64> = FSInstance::new(y, x).unwrap()
                .fs_components().unwrap().iter().map(|c| c.size).collect();
            a.sort_unstable();
            b.sort_unstable();
            prop_assert_eq!(a, b);
        }

        #[test]
        fn component_sizes_sum_to_factorial(
            (n, sx, sy) in (1usize..=5).prop_flat_map(|n| (Just(n), any::<u64>(), any::<u64>()))
        ) {
            let fs = FSInstance::new(arb_graph(n, sx), arb_graph(n, sy)).unwrap();
            let comps = fs.fs_components().unwrap();
            prop_assert_eq!(comps.iter().map(|c| c.size).sum::<u64>(), factorial(n).unwrap());
        }
    }
}
