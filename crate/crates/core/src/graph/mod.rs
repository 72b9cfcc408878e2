//! Simple undirected graphs and the combinatorial data derived from them.

pub mod generators;
pub mod oracles;

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};

/// A simple undirected graph on vertices `0..n` with a dense adjacency
/// relation. Loops are never stored and the relation is kept symmetric by
/// every constructor.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<bool>,
}

/// Vertex degrees of a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeData {
    pub degrees: Vec<usize>,
    pub is_regular: bool,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    ///
    /// # Panics
    ///
    /// Panics if `n == 0`; graphs always have at least one vertex.
    pub fn edgeless(n: usize) -> Self {
        assert!(n > 0, "a graph needs at least one vertex");
        Graph {
            n,
            adj: vec![false; n * n],
        }
    }

    /// The complete graph `K_n`.
    pub fn complete(n: usize) -> Self {
        Self::from_fn(n, |_, _| true)
    }

    /// Builds a graph from a symmetric predicate; `f(i, j)` is only queried
    /// for `i < j`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut g = Self::edgeless(n);
        for i in 0..n {
            for j in i + 1..n {
                if f(i, j) {
                    g.set_edge(i, j, true);
                }
            }
        }
        g
    }

    /// Builds a graph from an edge list. Duplicate edges are accepted and
    /// collapse to a single edge.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n == 0 {
            return Err(Error::InvalidParameter("vertex count must be positive".into()));
        }
        let mut g = Self::edgeless(n);
        for (i, j) in edges {
            if i >= n || j >= n {
                return Err(Error::InvalidParameter(format!(
                    "edge ({i}, {j}) out of range for {n} vertices"
                )));
            }
            if i == j {
                return Err(Error::InvalidParameter(format!("self-loop at vertex {i}")));
            }
            g.set_edge(i, j, true);
        }
        Ok(g)
    }

    pub(crate) fn set_edge(&mut self, i: usize, j: usize, present: bool) {
        debug_assert!(i != j);
        self.adj[i * self.n + j] = present;
        self.adj[j * self.n + i] = present;
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i * self.n + j]
    }

    /// Number of edges `m`.
    pub fn edge_count(&self) -> usize {
        self.adj.iter().filter(|&&a| a).count() / 2
    }

    /// Edges `(i, j)` with `i < j` in row-major order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |i| {
            (i + 1..self.n).filter_map(move |j| self.has_edge(i, j).then_some((i, j)))
        })
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        let row = &self.adj[v * self.n..(v + 1) * self.n];
        row.iter().enumerate().filter_map(|(j, &a)| a.then_some(j))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors(v).count()
    }

    pub fn degrees(&self) -> DegreeData {
        let degrees: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        let is_regular = degrees.windows(2).all(|w| w[0] == w[1]);
        DegreeData {
            degrees,
            is_regular,
        }
    }

    pub fn is_regular(&self) -> bool {
        self.degrees().is_regular
    }

    /// The complement graph: distinct vertices are adjacent exactly when
    /// they are not adjacent here.
    pub fn complement(&self) -> Graph {
        Self::from_fn(self.n, |i, j| !self.has_edge(i, j))
    }

    /// Vertex sets of the connected components, each sorted, ordered by
    /// smallest vertex.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut components = Vec::new();
        let mut queue = VecDeque::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            queue.push_back(start);
            let mut component = Vec::new();
            while let Some(v) = queue.pop_front() {
                component.push(v);
                for w in self.neighbors(v) {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            component.sort_unstable();
            components.push(component);
        }
        components
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() == 1
    }

    /// The subgraph induced by `vertices`, relabelled `0..vertices.len()` in
    /// the given order.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Graph {
        Self::from_fn(vertices.len(), |a, b| self.has_edge(vertices[a], vertices[b]))
    }

    /// The graph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        let mut seen = vec![false; self.n];
        if perm.len() != self.n || perm.iter().any(|&p| p >= self.n || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::InvalidParameter("relabelling is not a permutation".into()));
        }
        let mut g = Self::edgeless(self.n);
        for (i, j) in self.edges() {
            g.set_edge(perm[i], perm[j], true);
        }
        Ok(g)
    }

    /// Two-colourability by breadth-first search.
    pub fn is_bipartite(&self) -> bool {
        let mut side: Vec<Option<bool>> = vec![None; self.n];
        let mut queue = VecDeque::new();
        for start in 0..self.n {
            if side[start].is_some() {
                continue;
            }
            side[start] = Some(false);
            queue.push_back(start);
            while let Some(v) = queue.pop_front() {
                let s = side[v].unwrap();
                for w in self.neighbors(v) {
                    match side[w] {
                        None => {
                            side[w] = Some(!s);
                            queue.push_back(w);
                        }
                        Some(t) if t == s => return false,
                        Some(_) => {}
                    }
                }
            }
        }
        true
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::generators::{cycle, kneser};
    use super::*;

    #[test]
    fn complement_of_complete_is_edgeless() {
        for n in 1..7 {
            assert_eq!(Graph::complete(n).complement(), Graph::edgeless(n));
        }
    }

    #[test]
    fn c5_is_self_complementary() {
        let c5 = cycle(5).unwrap();
        let comp = c5.complement();
        assert_eq!(comp.edge_count(), 5);
        assert_eq!(comp.degrees().degrees, vec![2; 5]);
        // i -> 2i mod 5 maps C5 onto its complement
        let perm: Vec<usize> = (0..5).map(|i| (2 * i) % 5).collect();
        assert_eq!(c5.relabel(&perm).unwrap(), comp);
    }

    #[test]
    fn single_vertex_is_fixed_by_complement() {
        let g = Graph::edgeless(1);
        assert_eq!(g.complement(), g);
    }

    #[test]
    fn degree_sum_is_twice_edge_count() {
        let g = kneser(5, 2).unwrap();
        let d = g.degrees();
        assert_eq!(d.degrees.iter().sum::<usize>(), 2 * g.edge_count());
        assert!(d.is_regular);
    }

    #[test]
    fn components() {
        assert_eq!(cycle(5).unwrap().connected_components(), vec![vec![0, 1, 2, 3, 4]]);
        let matching = kneser(4, 2).unwrap();
        let comps = matching.connected_components();
        assert_eq!(comps.len(), 3);
        assert!(comps.iter().all(|c| c.len() == 2));
        assert_eq!(Graph::edgeless(3).connected_components(), vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn from_edges_rejects_loops_and_out_of_range() {
        assert!(Graph::from_edges(3, [(0, 0)]).is_err());
        assert!(Graph::from_edges(3, [(0, 3)]).is_err());
        assert!(Graph::from_edges(0, []).is_err());
        let g = Graph::from_edges(3, [(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn bipartite_detection() {
        assert!(cycle(6).unwrap().is_bipartite());
        assert!(!cycle(5).unwrap().is_bipartite());
        assert!(Graph::edgeless(4).is_bipartite());
    }
}
