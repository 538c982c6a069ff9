//! Bitset graphs on at most [`MAX_VERTICES`] vertices.
//!
//! Every vertex row is a single `u128`, so neighborhoods, intersections and
//! degree counts are one or two machine instructions each.

use std::fmt;

use crate::error::GraphError;

/// Hard vertex capacity of [`SimpleGraph`] and [`crate::EdgeColoring`].
pub const MAX_VERTICES: usize = 128;

/// A set of vertices, one bit per vertex.
pub type VertexSet = u128;

#[inline(always)]
pub(crate) const fn bit(v: usize) -> VertexSet {
    1u128 << v
}

/// Mask with the lowest `n` bits set.
#[inline(always)]
pub const fn low_mask(n: usize) -> VertexSet {
    if n >= 128 {
        u128::MAX
    } else {
        (1u128 << n) - 1
    }
}

/// Iterator over the members of a [`VertexSet`] in increasing order.
#[derive(Clone, Copy, Debug)]
pub struct Members(VertexSet);

impl Iterator for Members {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }
}

#[inline]
pub fn members(set: VertexSet) -> Members {
    Members(set)
}

/// Undirected simple graph stored as symmetric adjacency bitsets.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SimpleGraph {
    n: usize,
    adj: Vec<VertexSet>,
}

impl SimpleGraph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        check_order(n)?;
        Ok(SimpleGraph {
            n,
            adj: vec![0; n],
        })
    }

    pub fn complete(n: usize) -> Result<Self, GraphError> {
        check_order(n)?;
        let all = low_mask(n);
        Ok(SimpleGraph {
            n,
            adj: (0..n).map(|v| all & !bit(v)).collect(),
        })
    }

    /// The cycle 0-1-…-(n-1)-0. Requires `n >= 3`.
    pub fn cycle(n: usize) -> Result<Self, GraphError> {
        if n < 3 {
            return Err(GraphError::Order(n));
        }
        let mut g = Self::empty(n)?;
        for v in 0..n {
            g.add_edge(v, (v + 1) % n)?;
        }
        Ok(g)
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Self::empty(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Builds a graph from raw rows, validating symmetry, loops and range.
    pub fn from_adjacency(adj: Vec<VertexSet>) -> Result<Self, GraphError> {
        let n = adj.len();
        check_order(n)?;
        let outside = !low_mask(n);
        for (v, &row) in adj.iter().enumerate() {
            if row & outside != 0 {
                return Err(GraphError::Vertex { v: 127 - row.leading_zeros() as usize, n });
            }
            if row & bit(v) != 0 {
                return Err(GraphError::SelfLoop(v));
            }
            for u in members(row) {
                if adj[u] & bit(v) == 0 {
                    return Err(GraphError::Asymmetric(v, u));
                }
            }
        }
        Ok(SimpleGraph { n, adj })
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn rows(&self) -> &[VertexSet] {
        &self.adj
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    #[inline]
    pub fn vertices(&self) -> VertexSet {
        low_mask(self.n)
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] & bit(v) != 0
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).max().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        self.check_pair(u, v)?;
        self.adj[u] |= bit(v);
        self.adj[v] |= bit(u);
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        self.check_pair(u, v)?;
        self.adj[u] &= !bit(v);
        self.adj[v] &= !bit(u);
        Ok(())
    }

    /// Edges `(u, v)` with `u < v`, in canonical pair order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for v in 1..self.n {
            for u in members(self.adj[v] & low_mask(v)) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn complement(&self) -> SimpleGraph {
        let all = low_mask(self.n);
        SimpleGraph {
            n: self.n,
            adj: self.adj.iter().enumerate().map(|(v, &r)| all & !r & !bit(v)).collect(),
        }
    }

    /// The subgraph induced on all vertices except `v`; higher vertices shift down.
    pub fn delete_vertex(&self, v: usize) -> Result<SimpleGraph, GraphError> {
        if self.n < 2 {
            return Err(GraphError::Order(self.n - 1));
        }
        if v >= self.n {
            return Err(GraphError::Vertex { v, n: self.n });
        }
        let adj = (0..self.n)
            .filter(|&u| u != v)
            .map(|u| squeeze_out(self.adj[u], v))
            .collect();
        Ok(SimpleGraph { n: self.n - 1, adj })
    }

    fn check_pair(&self, u: usize, v: usize) -> Result<(), GraphError> {
        for w in [u, v] {
            if w >= self.n {
                return Err(GraphError::Vertex { v: w, n: self.n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        Ok(())
    }
}

/// Removes bit `v` from `set`, shifting all higher bits down by one.
#[inline]
pub(crate) fn squeeze_out(set: VertexSet, v: usize) -> VertexSet {
    let low = set & low_mask(v);
    let high = if v + 1 >= 128 { 0 } else { (set >> (v + 1)) << v };
    low | high
}

fn check_order(n: usize) -> Result<(), GraphError> {
    if n == 0 || n > MAX_VERTICES {
        Err(GraphError::Order(n))
    } else {
        Ok(())
    }
}

impl fmt::Debug for SimpleGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimpleGraph(n={}, edges={:?})", self.n, self.edges())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complement_of_c5_is_c5() {
        let c5 = SimpleGraph::cycle(5).unwrap();
        let co = c5.complement();
        assert_eq!(co.edge_count(), 5);
        assert!((0..5).all(|v| co.degree(v) == 2));
    }

    #[test]
    fn from_adjacency_rejects_asymmetry_and_loops() {
        assert!(matches!(
            SimpleGraph::from_adjacency(vec![0b10, 0]),
            Err(GraphError::Asymmetric(0, 1))
        ));
        assert!(matches!(
            SimpleGraph::from_adjacency(vec![0b1]),
            Err(GraphError::SelfLoop(0))
        ));
        assert!(SimpleGraph::from_adjacency(vec![0b100, 0]).is_err());
    }

    #[test]
    fn capacity_is_enforced() {
        assert!(SimpleGraph::empty(0).is_err());
        assert!(SimpleGraph::empty(129).is_err());
        let k = SimpleGraph::complete(128).unwrap();
        assert_eq!(k.degree(127), 127);
        assert_eq!(k.edge_count(), 128 * 127 / 2);
    }

    #[test]
    fn delete_vertex_relabels() {
        let g = SimpleGraph::from_edges(4, &[(0, 3), (1, 2), (2, 3)]).unwrap();
        let h = g.delete_vertex(1).unwrap();
        assert_eq!(h.order(), 3);
        assert_eq!(h.edges(), vec![(0, 2), (1, 2)]);
        let top = SimpleGraph::complete(128).unwrap().delete_vertex(127).unwrap();
        assert_eq!(top, SimpleGraph::complete(127).unwrap());
    }
}
