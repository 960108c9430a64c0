//! Block (maximal biconnected subgraph) and cut-vertex decomposition via
//! the classic low-link search with an edge stack.

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;

/// Blocks, cut vertices, and the bipartite block-cut tree of a connected
/// graph.
///
/// Every vertex lies in at least one block, two blocks share at most one
/// vertex, and a vertex lies in two or more blocks exactly when it is a cut
/// vertex. Single edges (bridges) count as blocks.
#[derive(Clone, Debug)]
pub struct BlockDecomposition {
    /// Sorted vertex set of each block, blocks in lexicographic order.
    pub blocks: Vec<Vec<usize>>,
    /// Sorted cut vertices.
    pub cut_vertices: Vec<usize>,
    /// Block-cut tree edges as (block index, cut vertex) pairs.
    pub tree_edges: Vec<(usize, usize)>,
}

impl BlockDecomposition {
    pub fn is_cut_vertex(&self, v: usize) -> bool {
        self.cut_vertices.binary_search(&v).is_ok()
    }

    /// Indices of the blocks containing `v`.
    pub fn blocks_containing(&self, v: usize) -> Vec<usize> {
        self.blocks
            .iter()
            .enumerate()
            .filter(|(_, b)| b.binary_search(&v).is_ok())
            .map(|(i, _)| i)
            .collect()
    }
}

/// Biconnected in the block sense: a single edge counts, and for three or
/// more vertices the graph must be connected with no cut vertex.
pub fn is_biconnected_block(g: &SimpleGraph) -> bool {
    match g.n() {
        0 | 1 => false,
        2 => g.has_edge(1, 2),
        _ => {
            g.is_connected()
                && !crate::connectivity::has_articulation_vertex(&g.adjacency_lists())
        }
    }
}

/// Decomposes a connected graph on at least two vertices into its blocks.
/// Disconnected inputs are rejected; decompose per component instead.
pub fn block_decomposition(g: &SimpleGraph) -> Result<BlockDecomposition> {
    if g.n() < 2 {
        return Err(Error::InvalidParameter(
            "block decomposition needs at least two vertices".into(),
        ));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected("block decomposition"));
    }

    let n = g.n();
    let mut disc = vec![0usize; n + 1];
    let mut low = vec![0usize; n + 1];
    let mut timer = 1usize;
    let mut edge_stack: Vec<(usize, usize)> = Vec::new();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut is_cut = vec![false; n + 1];

    struct Dfs<'a> {
        g: &'a SimpleGraph,
        disc: &'a mut Vec<usize>,
        low: &'a mut Vec<usize>,
        timer: &'a mut usize,
        edge_stack: &'a mut Vec<(usize, usize)>,
        blocks: &'a mut Vec<Vec<usize>>,
        is_cut: &'a mut Vec<bool>,
    }

    impl Dfs<'_> {
        fn run(&mut self, u: usize, parent: usize, root: usize) {
            self.disc[u] = *self.timer;
            self.low[u] = *self.timer;
            *self.timer += 1;
            let mut children = 0usize;
            for v in self.g.neighbors(u) {
                if self.disc[v] == 0 {
                    children += 1;
                    self.edge_stack.push((u, v));
                    self.run(v, u, root);
                    self.low[u] = self.low[u].min(self.low[v]);
                    if self.low[v] >= self.disc[u] {
                        if u != root || children > 1 {
                            self.is_cut[u] = true;
                        }
                        // Pop the edges of the finished block.
                        let mut members = std::collections::BTreeSet::new();
                        while let Some(&(a, b)) = self.edge_stack.last() {
                            self.edge_stack.pop();
                            members.insert(a);
                            members.insert(b);
                            if (a, b) == (u, v) {
                                break;
                            }
                        }
                        self.blocks.push(members.into_iter().collect());
                    }
                } else if v != parent && self.disc[v] < self.disc[u] {
                    self.edge_stack.push((u, v));
                    self.low[u] = self.low[u].min(self.disc[v]);
                }
            }
        }
    }

    Dfs {
        g,
        disc: &mut disc,
        low: &mut low,
        timer: &mut timer,
        edge_stack: &mut edge_stack,
        blocks: &mut blocks,
        is_cut: &mut is_cut,
    }
    .run(1, 0, 1);

    debug_assert!(edge_stack.is_empty());
    blocks.sort();
    let cut_vertices: Vec<usize> = (1..=n).filter(|&v| is_cut[v]).collect();
    let mut tree_edges = Vec::new();
    for (bi, block) in blocks.iter().enumerate() {
        for &v in block {
            if is_cut[v] {
                tree_edges.push((bi, v));
            }
        }
    }
    Ok(BlockDecomposition {
        blocks,
        cut_vertices,
        tree_edges,
    })
}
