//! Edge colorings of complete graphs and their text format.
//!
//! Pairs are stored in a flat triangular array. The canonical pair order is
//! column-major over the upper triangle, the same order graph6 uses:
//! `(0,1), (0,2), (1,2), (0,3), (1,3), (2,3), …`, so the pair `u < v` lives
//! at index `v(v-1)/2 + u`.

use std::fmt::Write as _;

use crate::error::{GraphError, ParseError};
use crate::graph::{bit, SimpleGraph, MAX_VERTICES};
use crate::target::Target;

/// Sentinel for a pair that has not been given a color yet.
pub const UNASSIGNED: u8 = u8::MAX;

/// Index of the unordered pair `{u, v}` in canonical pair order.
#[inline]
pub fn pair_index(u: usize, v: usize) -> usize {
    let (u, v) = if u < v { (u, v) } else { (v, u) };
    v * (v - 1) / 2 + u
}

/// Inverse of [`pair_index`].
pub fn pair_at(index: usize) -> (usize, usize) {
    let mut v = ((index * 2) as u64).isqrt() as usize;
    while v * (v + 1) / 2 <= index {
        v += 1;
    }
    while v * (v - 1) / 2 > index {
        v -= 1;
    }
    (index - v * (v - 1) / 2, v)
}

#[inline]
pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// A (possibly partial) assignment of colors `0..colors` to the pairs of `K_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EdgeColoring {
    n: usize,
    colors: usize,
    pairs: Vec<u8>,
}

impl EdgeColoring {
    /// All pairs unassigned.
    pub fn new(n: usize, colors: usize) -> Result<Self, GraphError> {
        if n == 0 || n > MAX_VERTICES {
            return Err(GraphError::Order(n));
        }
        if colors == 0 || colors >= UNASSIGNED as usize {
            return Err(GraphError::Color { color: colors, colors: UNASSIGNED as usize - 1 });
        }
        Ok(EdgeColoring { n, colors, pairs: vec![UNASSIGNED; pair_count(n)] })
    }

    /// Every pair gets `color`.
    pub fn monochromatic(n: usize, colors: usize, color: usize) -> Result<Self, GraphError> {
        let mut c = Self::new(n, colors)?;
        c.check_color(color)?;
        c.pairs.fill(color as u8);
        Ok(c)
    }

    /// Two-coloring from a graph: edges get color 0, non-edges color 1.
    pub fn from_graph(g: &SimpleGraph) -> Self {
        let mut c = Self::new(g.order(), 2).expect("graph order already validated");
        for v in 1..g.order() {
            for u in 0..v {
                c.pairs[pair_index(u, v)] = if g.has_edge(u, v) { 0 } else { 1 };
            }
        }
        c
    }

    /// Builds a complete coloring from color classes; `classes[i]` holds the
    /// edges of color `i`. Classes must partition the edges of `K_n`.
    pub fn from_classes(n: usize, classes: &[SimpleGraph]) -> Result<Self, GraphError> {
        let mut c = Self::new(n, classes.len())?;
        for (i, g) in classes.iter().enumerate() {
            if g.order() != n {
                return Err(GraphError::Order(g.order()));
            }
            for (u, v) in g.edges() {
                let slot = &mut c.pairs[pair_index(u, v)];
                if *slot != UNASSIGNED {
                    return Err(GraphError::Color { color: i, colors: classes.len() });
                }
                *slot = i as u8;
            }
        }
        if let Some((u, v)) = c.first_unassigned() {
            return Err(GraphError::Incomplete(u, v));
        }
        Ok(c)
    }

    /// Raw constructor over canonical-order pair colors.
    pub fn from_pairs(n: usize, colors: usize, pairs: Vec<u8>) -> Result<Self, GraphError> {
        let mut c = Self::new(n, colors)?;
        if pairs.len() != c.pairs.len() {
            return Err(GraphError::Order(n));
        }
        for &p in &pairs {
            if p != UNASSIGNED {
                c.check_color(p as usize)?;
            }
        }
        c.pairs = pairs;
        Ok(c)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn colors(&self) -> usize {
        self.colors
    }

    /// Canonical-order pair colors, with [`UNASSIGNED`] for open pairs.
    pub fn pairs(&self) -> &[u8] {
        &self.pairs
    }

    pub fn get(&self, u: usize, v: usize) -> Result<Option<usize>, GraphError> {
        self.check_pair(u, v)?;
        let c = self.pairs[pair_index(u, v)];
        Ok((c != UNASSIGNED).then_some(c as usize))
    }

    pub fn set(&mut self, u: usize, v: usize, color: usize) -> Result<(), GraphError> {
        self.check_pair(u, v)?;
        self.check_color(color)?;
        self.pairs[pair_index(u, v)] = color as u8;
        Ok(())
    }

    pub fn unset(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        self.check_pair(u, v)?;
        self.pairs[pair_index(u, v)] = UNASSIGNED;
        Ok(())
    }

    pub fn is_complete(&self) -> bool {
        self.first_unassigned().is_none()
    }

    pub fn first_unassigned(&self) -> Option<(usize, usize)> {
        self.pairs.iter().position(|&c| c == UNASSIGNED).map(pair_at)
    }

    /// `d_color(v)`: assigned edges at `v` carrying `color`.
    pub fn degree(&self, color: usize, v: usize) -> Result<usize, GraphError> {
        self.check_color(color)?;
        if v >= self.n {
            return Err(GraphError::Vertex { v, n: self.n });
        }
        let c = color as u8;
        Ok((0..self.n).filter(|&u| u != v && self.pairs[pair_index(u, v)] == c).count())
    }

    /// The graph of color-`color` edges.
    pub fn class(&self, color: usize) -> Result<SimpleGraph, GraphError> {
        self.check_color(color)?;
        let c = color as u8;
        let mut adj = vec![0u128; self.n];
        for v in 1..self.n {
            for u in 0..v {
                if self.pairs[pair_index(u, v)] == c {
                    adj[u] |= bit(v);
                    adj[v] |= bit(u);
                }
            }
        }
        SimpleGraph::from_adjacency(adj)
    }

    /// Number of edges in each color class.
    pub fn class_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.colors];
        for &p in &self.pairs {
            if p != UNASSIGNED {
                sizes[p as usize] += 1;
            }
        }
        sizes
    }

    /// The coloring induced on all vertices but `v`; higher vertices shift down.
    pub fn delete_vertex(&self, v: usize) -> Result<EdgeColoring, GraphError> {
        if self.n < 2 {
            return Err(GraphError::Order(0));
        }
        if v >= self.n {
            return Err(GraphError::Vertex { v, n: self.n });
        }
        let keep: Vec<usize> = (0..self.n).filter(|&u| u != v).collect();
        Ok(self.induced(&keep))
    }

    /// The coloring induced on `vertices`, relabeled `0..vertices.len()` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> EdgeColoring {
        let m = vertices.len();
        let mut out = EdgeColoring { n: m, colors: self.colors, pairs: vec![UNASSIGNED; pair_count(m)] };
        for j in 1..m {
            for i in 0..j {
                out.pairs[pair_index(i, j)] = self.pairs[pair_index(vertices[i], vertices[j])];
            }
        }
        out
    }

    /// True iff the coloring is complete and class `i` avoids `targets[i]` for every `i`.
    ///
    /// Partial colorings are rejected with [`GraphError::Incomplete`].
    pub fn is_good(&self, targets: &[Target]) -> Result<bool, GraphError> {
        Ok(self.first_violation(targets)?.is_none())
    }

    /// The first monochromatic forbidden copy, as `(color, vertices)`.
    pub fn first_violation(&self, targets: &[Target]) -> Result<Option<(usize, Vec<usize>)>, GraphError> {
        if targets.len() != self.colors {
            return Err(GraphError::TargetCount { expected: self.colors, got: targets.len() });
        }
        if let Some((u, v)) = self.first_unassigned() {
            return Err(GraphError::Incomplete(u, v));
        }
        for (i, t) in targets.iter().enumerate() {
            let class = self.class(i)?;
            if let Some(copy) = crate::detect::find_target(&class, t) {
                return Ok(Some((i, copy)));
            }
        }
        Ok(None)
    }

    /// Text form: header `N c`, then `u v color` per pair in canonical order,
    /// with `-` standing for an unassigned pair.
    pub fn to_text(&self) -> String {
        let mut s = String::with_capacity(8 * self.pairs.len() + 16);
        let _ = writeln!(s, "{} {}", self.n, self.colors);
        for (i, &c) in self.pairs.iter().enumerate() {
            let (u, v) = pair_at(i);
            if c == UNASSIGNED {
                let _ = writeln!(s, "{u} {v} -");
            } else {
                let _ = writeln!(s, "{u} {v} {c}");
            }
        }
        s
    }

    /// Parses [`EdgeColoring::to_text`] output. Pairs may come in any order
    /// but each must appear exactly once.
    pub fn parse_text(text: &str) -> Result<EdgeColoring, ParseError> {
        let err = |line: usize, msg: String| ParseError::Coloring { line, msg };
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());

        let (hline, header) = lines.next().ok_or_else(|| err(1, "missing header".into()))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(err(hline, format!("expected `N c`, found {header:?}")));
        }
        let n: usize = fields[0].parse().map_err(|_| err(hline, format!("bad vertex count {:?}", fields[0])))?;
        let colors: usize = fields[1].parse().map_err(|_| err(hline, format!("bad color count {:?}", fields[1])))?;
        let mut out = EdgeColoring::new(n, colors).map_err(|e| err(hline, e.to_string()))?;
        let mut seen = vec![false; out.pairs.len()];

        for (ln, line) in lines {
            let f: Vec<&str> = line.split_whitespace().collect();
            if f.len() != 3 {
                return Err(err(ln, format!("expected `u v color`, found {line:?}")));
            }
            let u: usize = f[0].parse().map_err(|_| err(ln, format!("bad vertex {:?}", f[0])))?;
            let v: usize = f[1].parse().map_err(|_| err(ln, format!("bad vertex {:?}", f[1])))?;
            if u == v || u >= n || v >= n {
                return Err(err(ln, format!("invalid pair ({u}, {v}) for N = {n}")));
            }
            let idx = pair_index(u, v);
            if std::mem::replace(&mut seen[idx], true) {
                return Err(err(ln, format!("pair ({u}, {v}) listed twice")));
            }
            out.pairs[idx] = if f[2] == "-" {
                UNASSIGNED
            } else {
                let c: usize = f[2].parse().map_err(|_| err(ln, format!("bad color {:?}", f[2])))?;
                if c >= colors {
                    return Err(err(ln, format!("color {c} out of range for {colors} colors")));
                }
                c as u8
            };
        }
        if let Some(i) = seen.iter().position(|s| !s) {
            let (u, v) = pair_at(i);
            return Err(err(0, format!("pair ({u}, {v}) missing")));
        }
        Ok(out)
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

    fn check_color(&self, color: usize) -> Result<(), GraphError> {
        if color >= self.colors {
            Err(GraphError::Color { color, colors: self.colors })
        } else {
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// K5 as the union of the cycles 0-1-2-3-4 (color 0) and 0-2-4-1-3 (color 1).
    pub(crate) fn two_pentagons() -> EdgeColoring {
        EdgeColoring::from_graph(&SimpleGraph::cycle(5).unwrap())
    }

    #[test]
    fn pair_index_roundtrip() {
        for i in 0..pair_count(128) {
            let (u, v) = pair_at(i);
            assert!(u < v && v < 128);
            assert_eq!(pair_index(u, v), i);
            assert_eq!(pair_index(v, u), i);
        }
        assert_eq!(pair_at(0), (0, 1));
        assert_eq!(pair_at(1), (0, 2));
        assert_eq!(pair_at(2), (1, 2));
        assert_eq!(pair_at(3), (0, 3));
    }

    #[test]
    fn degree_examples() {
        let k3 = EdgeColoring::monochromatic(3, 1, 0).unwrap();
        assert!((0..3).all(|v| k3.degree(0, v).unwrap() == 2));

        let mut k2 = EdgeColoring::new(2, 2).unwrap();
        k2.set(0, 1, 1).unwrap();
        assert_eq!(k2.degree(0, 0).unwrap(), 0);
        assert_eq!(k2.degree(1, 0).unwrap(), 1);

        let k5 = two_pentagons();
        for v in 0..5 {
            assert_eq!(k5.degree(0, v).unwrap(), 2);
            assert_eq!(k5.degree(1, v).unwrap(), 2);
        }
        assert!(k5.degree(2, 0).is_err());
        assert!(k5.degree(0, 5).is_err());
    }

    #[test]
    fn partial_degree_counts_assigned_only() {
        let mut c = EdgeColoring::new(4, 2).unwrap();
        c.set(0, 1, 0).unwrap();
        c.set(0, 2, 1).unwrap();
        assert_eq!(c.degree(0, 0).unwrap(), 1);
        assert_eq!(c.degree(1, 0).unwrap(), 1);
        assert_eq!(c.first_unassigned(), Some((1, 2)));
        assert!(matches!(c.is_good(&[Target::Cycle4, Target::Cycle4]), Err(GraphError::Incomplete(1, 2))));
    }

    #[test]
    fn is_good_examples() {
        let k5 = two_pentagons();
        assert!(k5.is_good(&[Target::Cycle4, Target::Cycle4]).unwrap());
        let k3 = EdgeColoring::monochromatic(3, 2, 0).unwrap();
        assert!(!k3.is_good(&[Target::Path3, Target::Path3]).unwrap());
        assert!(matches!(
            k3.is_good(&[Target::Path3]),
            Err(GraphError::TargetCount { expected: 2, got: 1 })
        ));
    }

    #[test]
    fn no_two_coloring_of_k6_avoids_c4() {
        let targets = [Target::Cycle4, Target::Cycle4];
        let m = pair_count(6);
        for mask in 0u32..(1 << m) {
            let pairs = (0..m).map(|i| ((mask >> i) & 1) as u8).collect();
            let c = EdgeColoring::from_pairs(6, 2, pairs).unwrap();
            assert!(!c.is_good(&targets).unwrap(), "mask {mask:#x}");
        }
    }

    #[test]
    fn delete_vertex_examples() {
        let k2 = EdgeColoring::monochromatic(2, 1, 0).unwrap();
        let k1 = k2.delete_vertex(0).unwrap();
        assert_eq!(k1.order(), 1);
        assert!(k1.pairs().is_empty());
        assert!(k1.delete_vertex(0).is_err());

        let k5 = two_pentagons();
        for v in 0..5 {
            let d = k5.delete_vertex(v).unwrap();
            assert_eq!(d.order(), 4);
            assert!(d.is_good(&[Target::Cycle4, Target::Cycle4]).unwrap());
        }
    }

    #[test]
    fn degrees_sum_to_n_minus_one() {
        let k5 = two_pentagons();
        for v in 0..5 {
            let total: usize = (0..2).map(|c| k5.degree(c, v).unwrap()).sum();
            assert_eq!(total, 4);
        }
    }

    #[test]
    fn text_format_tolerates_comments_and_order() {
        let text = "# header\n 3   2 \n1 2 1 # trailing\n0 1 0\n\n0 2 -\n";
        let c = EdgeColoring::parse_text(text).unwrap();
        assert_eq!(c.get(0, 1).unwrap(), Some(0));
        assert_eq!(c.get(2, 1).unwrap(), Some(1));
        assert_eq!(c.get(0, 2).unwrap(), None);
        assert_eq!(EdgeColoring::parse_text(&c.to_text()).unwrap(), c);

        assert!(EdgeColoring::parse_text("3 2\n0 1 0\n0 1 1\n1 2 0\n0 2 0\n").is_err());
        assert!(EdgeColoring::parse_text("3 2\n0 1 0\n1 2 0\n").is_err());
        assert!(EdgeColoring::parse_text("3 2\n0 1 2\n1 2 0\n0 2 0\n").is_err());
    }
}
