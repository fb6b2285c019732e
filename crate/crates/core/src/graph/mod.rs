//! Immutable undirected simple graphs, random generators and the embedded
//! Florentine families network.

mod edgelist;
mod florentine;
mod generators;
mod spec;

pub use edgelist::{parse_edge_list, read_edge_list, write_edge_list};
pub use florentine::{florentine_families, florentine_family_names, FLORENTINE_EDGE_LIST, FLORENTINE_MANIFEST};
pub use generators::{generate_barabasi_albert, generate_er_with_auxiliary, generate_erdos_renyi};
pub use spec::{GraphSpec, NetworkFamily};

use thiserror::Error;

/// Dense node index in `[0, n)`.
pub type NodeId = usize;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("self-loop on node {0}")]
    SelfLoop(NodeId),
    #[error("edge ({u}, {v}) references a node outside [0, {n})")]
    NodeOutOfRange { u: NodeId, v: NodeId, n: usize },
    #[error("invalid graph parameter: {0}")]
    InvalidParameter(String),
    #[error("edge list line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("reading {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

/// Undirected simple graph in compressed adjacency form.
///
/// Neighbor lists are sorted ascending, symmetric, and free of self-loops and
/// duplicates. The degree of `u` is the length of its neighbor list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<NodeId>,
}

impl Graph {
    /// Builds a graph from an undirected edge list. Duplicate and reversed
    /// edges collapse to a single edge; self-loops and out-of-range endpoints
    /// are rejected.
    pub fn from_edge_list(edges: &[(NodeId, NodeId)], n: usize) -> Result<Self, GraphError> {
        let mut adjacency: Vec<Vec<NodeId>> = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::NodeOutOfRange { u, v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        Ok(Self::from_adjacency(adjacency))
    }

    /// Empty graph with `n` isolated nodes.
    pub fn empty(n: usize) -> Self {
        Self::from_adjacency(vec![Vec::new(); n])
    }

    pub(crate) fn from_adjacency(mut adjacency: Vec<Vec<NodeId>>) -> Self {
        let mut offsets = Vec::with_capacity(adjacency.len() + 1);
        offsets.push(0);
        let mut targets = Vec::with_capacity(adjacency.iter().map(Vec::len).sum());
        for list in adjacency.iter_mut() {
            list.sort_unstable();
            list.dedup();
            targets.extend_from_slice(list);
            offsets.push(targets.len());
        }
        let g = Graph { offsets, targets };
        g.check_invariants();
        g
    }

    fn check_invariants(&self) {
        debug_assert!(self.nodes().all(|u| {
            let nb = self.neighbors(u);
            nb.windows(2).all(|w| w[0] < w[1])
                && nb.iter().all(|&v| v != u && self.neighbors(v).binary_search(&u).is_ok())
        }));
    }

    #[inline]
    pub fn node_count(&self) -> usize {
        self.offsets.len() - 1
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    #[inline]
    pub fn nodes(&self) -> std::ops::Range<NodeId> {
        0..self.node_count()
    }

    #[inline]
    pub fn neighbors(&self, u: NodeId) -> &[NodeId] {
        &self.targets[self.offsets[u]..self.offsets[u + 1]]
    }

    #[inline]
    pub fn degree(&self, u: NodeId) -> usize {
        self.offsets[u + 1] - self.offsets[u]
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.nodes().map(|u| self.degree(u)).collect()
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        u < self.node_count() && self.neighbors(u).binary_search(&v).is_ok()
    }

    pub fn mean_degree(&self) -> f64 {
        if self.node_count() == 0 {
            return 0.0;
        }
        self.targets.len() as f64 / self.node_count() as f64
    }

    /// Canonical edge list: each edge once as `(u, v)` with `u < v`, in
    /// lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.nodes().flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .copied()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    pub fn is_connected(&self) -> bool {
        let n = self.node_count();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &v in self.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    stack.push(v);
                }
            }
        }
        count == n
    }
}
