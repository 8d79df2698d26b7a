use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::error::NbgError;
use crate::Result;

/// Directed graph on vertices `0..n` without self-loops.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    arcs: BTreeSet<(usize, usize)>,
}

impl Digraph {
    pub fn new(n: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (i, j) in arcs {
            if i >= n || j >= n {
                return Err(NbgError::VertexOutOfRange { index: i.max(j), n });
            }
            if i == j {
                return Err(NbgError::SelfLoop(i));
            }
            set.insert((i, j));
        }
        Ok(Digraph { n, arcs: set })
    }

    pub fn empty(n: usize) -> Self {
        Digraph { n, arcs: BTreeSet::new() }
    }

    /// Directed cycle `0 → 1 → … → n−1 → 0`.
    pub fn directed_cycle(n: usize) -> Self {
        let arcs = (0..n).map(|i| (i, (i + 1) % n)).filter(|(i, j)| i != j).collect();
        Digraph { n, arcs }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.arcs.iter().copied()
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn has_arc(&self, i: usize, j: usize) -> bool {
        self.arcs.contains(&(i, j))
    }

    pub fn out_neighbours(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.arcs.range((i, 0)..(i + 1, 0)).map(|&(_, j)| j)
    }

    pub fn in_neighbours(&self, j: usize) -> impl Iterator<Item = usize> + '_ {
        self.arcs.iter().filter(move |&&(_, t)| t == j).map(|&(s, _)| s)
    }

    /// True when every arc has its reverse.
    pub fn is_symmetric(&self) -> bool {
        self.arcs.iter().all(|&(i, j)| self.arcs.contains(&(j, i)))
    }
}

/// Underlying graph of a graphical game.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UnderlyingGraph {
    Directed(Digraph),
    /// Edges `{i, j}` stored with `i < j`.
    Undirected { n: usize, edges: Vec<(usize, usize)> },
}

impl UnderlyingGraph {
    pub fn n(&self) -> usize {
        match self {
            UnderlyingGraph::Directed(d) => d.n(),
            UnderlyingGraph::Undirected { n, .. } => *n,
        }
    }
}
