//! Independent reference implementations used by the integration tests.
//! Nothing here calls the detection or search code under test.

#![allow(dead_code)]

use c4_ramsey::Target;

/// Edge list of a target, built by hand from its definition.
pub fn target_edges(t: &Target) -> (usize, Vec<(usize, usize)>) {
    match t {
        Target::Clique(k) => {
            let k = *k as usize;
            (k, (0..k).flat_map(|j| (0..j).map(move |i| (i, j))).collect())
        }
        Target::Cycle4 => (4, vec![(0, 1), (1, 2), (2, 3), (3, 0)]),
        Target::Star(k) => (*k as usize + 1, (1..=*k as usize).map(|i| (0, i)).collect()),
        Target::Book(k) => {
            let mut e = vec![(0, 1)];
            for i in 0..*k as usize {
                e.push((0, i + 2));
                e.push((1, i + 2));
            }
            (*k as usize + 2, e)
        }
        Target::Empty(k) => (*k as usize, vec![]),
        Target::Path3 => (3, vec![(0, 1), (1, 2)]),
        Target::WithIsolated(b, s) => {
            let (n, e) = target_edges(b);
            (n + *s as usize, e)
        }
    }
}

/// Adjacency matrix for a graph on at most 16 vertices.
pub type Matrix = Vec<Vec<bool>>;

pub fn matrix(n: usize, edges: &[(usize, usize)]) -> Matrix {
    let mut m = vec![vec![false; n]; n];
    for &(u, v) in edges {
        m[u][v] = true;
        m[v][u] = true;
    }
    m
}

/// Whether some injection of the pattern's vertices maps every pattern edge to an edge of `host`.
pub fn injects(pattern: &(usize, Vec<(usize, usize)>), host: &Matrix) -> bool {
    let (k, edges) = pattern;
    let n = host.len();
    if *k > n {
        return false;
    }
    let pm = matrix(*k, edges);
    let mut map = vec![usize::MAX; *k];
    let mut used = vec![false; n];
    fn go(i: usize, pm: &Matrix, host: &Matrix, map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        if i == map.len() {
            return true;
        }
        for x in 0..host.len() {
            if used[x] || (0..i).any(|j| pm[i][j] && !host[map[j]][x]) {
                continue;
            }
            used[x] = true;
            map[i] = x;
            if go(i + 1, pm, host, map, used) {
                return true;
            }
            used[x] = false;
        }
        false
    }
    go(0, &pm, host, &mut map, &mut used)
}

pub fn contains(host: &Matrix, t: &Target) -> bool {
    injects(&target_edges(t), host)
}

/// All pairs `u < v` of `K_n`, in column-major order.
pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    (1..n).flat_map(|v| (0..v).map(move |u| (u, v))).collect()
}

/// Whether some 2-coloring of `K_n` avoids `a` in color 0 and `b` in color 1,
/// by enumerating all `2^C(n,2)` colorings.
pub fn naive_two_coloring_exists(n: usize, a: &Target, b: &Target) -> bool {
    let p = pairs(n);
    (0u64..1 << p.len()).any(|mask| {
        let (mut c0, mut c1) = (vec![], vec![]);
        for (i, &e) in p.iter().enumerate() {
            if mask >> i & 1 == 0 {
                c0.push(e)
            } else {
                c1.push(e)
            }
        }
        !contains(&matrix(n, &c0), a) && !contains(&matrix(n, &c1), b)
    })
}

/// Whether the complement edges of `g` split into an `a`-free and a `b`-free class,
/// by enumerating all splits.
pub fn naive_partition_exists(n: usize, g_edges: &[(usize, usize)], a: &Target, b: &Target) -> bool {
    let gm = matrix(n, g_edges);
    let free: Vec<(usize, usize)> = pairs(n).into_iter().filter(|&(u, v)| !gm[u][v]).collect();
    (0u64..1 << free.len()).any(|mask| {
        let (mut c0, mut c1) = (vec![], vec![]);
        for (i, &e) in free.iter().enumerate() {
            if mask >> i & 1 == 0 {
                c0.push(e)
            } else {
                c1.push(e)
            }
        }
        !contains(&matrix(n, &c0), a) && !contains(&matrix(n, &c1), b)
    })
}

/// graph6 by straight bit packing, for orders up to 62.
pub fn graph6_reference(n: usize, edges: &[(usize, usize)]) -> String {
    assert!(n <= 62);
    let m = matrix(n, edges);
    let mut bits = Vec::new();
    for v in 1..n {
        for row in m.iter().take(v) {
            bits.push(row[v]);
        }
    }
    while bits.len() % 6 != 0 {
        bits.push(false);
    }
    let mut s = String::new();
    s.push((n as u8 + 63) as char);
    for chunk in bits.chunks(6) {
        let x = chunk.iter().fold(0u8, |acc, &b| acc << 1 | b as u8);
        s.push((x + 63) as char);
    }
    s
}
