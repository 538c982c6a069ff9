//! Subgraph (not induced) containment for the target family.
//!
//! All routines work on raw adjacency rows so the search engine can call them
//! on its own per-color bitsets without building a [`SimpleGraph`].

use crate::graph::{bit, low_mask, members, SimpleGraph, VertexSet};
use crate::target::Target;

pub fn contains_target(g: &SimpleGraph, t: &Target) -> bool {
    find_in_rows(g.rows(), t).is_some()
}

/// Vertices of one copy of `t` in `g`, listed in the order of
/// [`Target::materialize`]'s labeling.
pub fn find_target(g: &SimpleGraph, t: &Target) -> Option<Vec<usize>> {
    find_in_rows(g.rows(), t)
}

pub(crate) fn find_in_rows(rows: &[VertexSet], t: &Target) -> Option<Vec<usize>> {
    let n = rows.len();
    match t.normalized() {
        Target::Empty(k) => (n >= k as usize).then(|| (0..k as usize).collect()),
        Target::Clique(k) => {
            let mut acc = Vec::with_capacity(k as usize);
            find_clique(rows, low_mask(n), k as usize, &mut acc).then_some(acc)
        }
        Target::Cycle4 => {
            for u in 0..n {
                for w in (u + 1)..n {
                    let common = rows[u] & rows[w];
                    if common.count_ones() >= 2 {
                        let mut it = members(common);
                        let (a, b) = (it.next()?, it.next()?);
                        return Some(vec![u, a, w, b]);
                    }
                }
            }
            None
        }
        Target::Path3 => (0..n).find(|&v| rows[v].count_ones() >= 2).map(|v| {
            let mut it = members(rows[v]);
            let a = it.next().unwrap();
            let b = it.next().unwrap();
            vec![v, a, b]
        }),
        Target::Star(k) => (0..n).find(|&v| rows[v].count_ones() >= k).map(|v| {
            std::iter::once(v).chain(members(rows[v]).take(k as usize)).collect()
        }),
        Target::Book(k) => {
            for u in 0..n {
                for v in members(rows[u] & !low_mask(u + 1)) {
                    let common = rows[u] & rows[v];
                    if common.count_ones() >= k {
                        return Some([u, v].into_iter().chain(members(common).take(k as usize)).collect());
                    }
                }
            }
            None
        }
        Target::WithIsolated(base, t) => {
            if (n as u64) < base.vertex_count() + t as u64 {
                return None;
            }
            let mut copy = find_in_rows(rows, &base)?;
            let used: VertexSet = copy.iter().fold(0, |s, &v| s | bit(v));
            copy.extend(members(low_mask(n) & !used).take(t as usize));
            Some(copy)
        }
    }
}

/// Branch and bound for a `need`-clique inside `cand`; on success the clique
/// is appended to `acc`.
fn find_clique(rows: &[VertexSet], mut cand: VertexSet, need: usize, acc: &mut Vec<usize>) -> bool {
    if need == 0 {
        return true;
    }
    while cand.count_ones() as usize >= need {
        let v = cand.trailing_zeros() as usize;
        cand &= !bit(v);
        acc.push(v);
        if find_clique(rows, cand & rows[v], need - 1, acc) {
            return true;
        }
        acc.pop();
    }
    false
}

#[inline]
pub(crate) fn has_clique(rows: &[VertexSet], mut cand: VertexSet, need: usize) -> bool {
    match need {
        0 => true,
        1 => cand != 0,
        2 => {
            while cand.count_ones() >= 2 {
                let v = cand.trailing_zeros() as usize;
                cand &= !bit(v);
                if cand & rows[v] != 0 {
                    return true;
                }
            }
            false
        }
        _ => {
            while cand.count_ones() as usize >= need {
                let v = cand.trailing_zeros() as usize;
                cand &= !bit(v);
                if has_clique(rows, cand & rows[v], need - 1) {
                    return true;
                }
            }
            false
        }
    }
}

/// After adding edge `uv` to a `t`-free graph, whether some copy of `t` now
/// uses that edge. `rows` must already contain `uv`.
///
/// Edgeless targets never pass through an edge; callers handle them by
/// vertex count alone.
#[inline]
pub(crate) fn contains_through_edge(rows: &[VertexSet], t: &Target, u: usize, v: usize) -> bool {
    match t {
        Target::Clique(k) => {
            let k = *k as usize;
            k == 2 || (k > 2 && has_clique(rows, rows[u] & rows[v], k - 2))
        }
        Target::Cycle4 => {
            let nv = rows[v] & !bit(u);
            members(rows[u] & !bit(v)).any(|w| rows[w] & nv != 0)
        }
        Target::Path3 => rows[u].count_ones() >= 2 || rows[v].count_ones() >= 2,
        Target::Star(k) => rows[u].count_ones() >= *k || rows[v].count_ones() >= *k,
        Target::Book(k) => {
            let common = rows[u] & rows[v];
            common.count_ones() >= *k
                || members(common).any(|w| {
                    (rows[u] & rows[w]).count_ones() >= *k || (rows[v] & rows[w]).count_ones() >= *k
                })
        }
        Target::Empty(_) => false,
        Target::WithIsolated(base, t) => {
            rows.len() as u64 >= base.vertex_count() + *t as u64 && contains_through_edge(rows, base, u, v)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> Target {
        s.parse().unwrap()
    }

    #[test]
    fn spec_examples() {
        let c5 = SimpleGraph::cycle(5).unwrap();
        assert!(!contains_target(&c5, &Target::Cycle4));
        assert!(contains_target(&c5, &Target::Path3));

        let k4 = SimpleGraph::complete(4).unwrap();
        assert!(contains_target(&k4, &t("B2")));
        assert!(contains_target(&k4, &Target::Cycle4));
        assert!(!contains_target(&k4, &t("B3")));

        let e9 = SimpleGraph::empty(9).unwrap();
        assert!(contains_target(&e9, &t("9K1")));
        assert!(!contains_target(&e9, &t("10K1")));
        assert!(!contains_target(&e9, &t("K2")));
    }

    #[test]
    fn copies_are_genuine() {
        let petersen_outer = SimpleGraph::from_edges(
            10,
            &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5), (1, 6), (2, 7), (3, 8), (4, 9),
              (5, 7), (7, 9), (9, 6), (6, 8), (8, 5)],
        )
        .unwrap();
        assert!(!contains_target(&petersen_outer, &Target::Cycle4));
        assert!(!contains_target(&petersen_outer, &t("K3")));
        let star = find_target(&petersen_outer, &t("S3")).unwrap();
        assert!(star[1..].iter().all(|&l| petersen_outer.has_edge(star[0], l)));
        assert!(find_target(&petersen_outer, &t("S4")).is_none());
        let p = find_target(&petersen_outer, &t("P3+7K1")).unwrap();
        assert_eq!(p.len(), 10);
        assert!(find_target(&petersen_outer, &t("P3+8K1")).is_none());
    }

    #[test]
    fn through_edge_matches_whole_graph() {
        let mut rows = vec![0u128; 6];
        let add = |rows: &mut Vec<u128>, u: usize, v: usize| {
            rows[u] |= bit(v);
            rows[v] |= bit(u);
        };
        for (u, v) in [(0, 1), (1, 2), (2, 3)] {
            add(&mut rows, u, v);
        }
        assert!(!contains_through_edge(&rows, &Target::Cycle4, 2, 3));
        add(&mut rows, 3, 0);
        assert!(contains_through_edge(&rows, &Target::Cycle4, 3, 0));
        add(&mut rows, 0, 2);
        assert!(contains_through_edge(&rows, &Target::Clique(3), 0, 2));
        assert!(!contains_through_edge(&rows, &Target::Clique(4), 0, 2));
        // Spine 0-2 has pages 1 and 3; adding page edge 0-1 last still finds it.
        assert!(contains_through_edge(&rows, &t("B2"), 0, 1));
    }
}
