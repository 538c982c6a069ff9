//! Acceptance suite: one PASS/FAIL line per criterion. Runs without the libtest
//! harness so the lines are always printed; exits non-zero if any criterion fails.

mod common;

use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use c4_ramsey::bounds::{
    book_bound, isqrt_ceil, isqrt_floor, lemma2_bound, lemma_p3_bound, parsons_bound, theorem_mt_bound, BoundQuery,
};
use c4_ramsey::{
    contains_target, derive, extend_with_disjoint_clique, graph6, parse_targets, partition_check, ramsey_by_search,
    search_coloring, verify_lower_bound, EdgeColoring, FactKind, Registry, SearchBudget, SearchStatus, SimpleGraph,
    Target, TargetList,
};

const FAST_LIMIT: Duration = Duration::from_secs(1);
const GRID_LIMIT: Duration = Duration::from_secs(10);
const SEARCH_LIMIT: Duration = Duration::from_secs(60);
const STRETCH_LIMIT: Duration = Duration::from_secs(600);

type Check = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Check);

fn timed(limit: Duration, f: impl FnOnce() -> Check) -> Check {
    let start = Instant::now();
    let detail = f()?;
    let took = start.elapsed();
    if took > limit {
        return Err(format!("{detail}; took {took:.2?}, limit {limit:?}"));
    }
    Ok(format!("{detail}; {took:.2?}"))
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn table_rows() -> Check {
    let reg = Registry::seed();
    let rows: [(&str, u64); 7] = [
        ("C4,K11", 43),
        ("C4,K12", 51),
        ("C4,K3,K4", 29),
        ("C4,K4,K4", 66),
        ("C4,K3,K3,K3", 57),
        ("C4,C4,K3,K4", 75),
        ("C4,C4,K4,K4", 177),
    ];
    let mut got = Vec::new();
    for (key, want) in rows {
        let list: TargetList = key.parse().map_err(|e| format!("{e}"))?;
        let tree = derive(&list, &reg).map_err(|e| e.to_string())?;
        tree.replay(Some(&reg)).map_err(|e| e.to_string())?;
        ensure(tree.value() == want, || format!("R({key}): derived {}, expected {want}", tree.value()))?;
        if key == "C4,K3,K4" {
            ensure(tree.children.is_empty() && tree.conclusion.kind != FactKind::LowerBound, || {
                "row #3 should resolve to the registry fact".into()
            })?;
        }
        got.push(tree.value());
    }
    Ok(format!("values {got:?}, all trees replay"))
}

fn books_and_stars() -> Check {
    let reg = Registry::seed();
    let star = reg.upper(&"C4,S17".parse().map_err(|e| format!("{e}"))?);
    let with = book_bound(17, star).map_err(|e| e.to_string())?;
    let without = book_bound(17, None).map_err(|e| e.to_string())?;
    let p7 = parsons_bound(7).map_err(|e| e.to_string())?;
    let r7 = isqrt_ceil(7).map_err(|e| e.to_string())?;
    ensure((with, without, p7, r7) == (28, 29, 11, 3), || {
        format!("book(17) = {with}/{without}, parsons(7) = {p7}, ceil sqrt 7 = {r7}")
    })?;
    Ok("book(17) = 28 with R(C4,S17) = 22, 29 without; parsons(7) = 11".into())
}

fn empty_identity() -> Check {
    for m in 2u64..=1000 {
        let v = theorem_mt_bound(&BoundQuery::new(m, vec![])).map_err(|e| e.to_string())?;
        ensure(v == m * m + m + 1, || format!("m = {m}: {v}"))?;
    }
    Ok("m in [2, 1000]".into())
}

fn formula_relations() -> Check {
    let mut rng = StdRng::seed_from_u64(0x5eed_0004);
    let mut points = 0;
    for m in 1u64..=50 {
        for i in 0..250 {
            let s = match i {
                0 => 1,
                1 => 1_000_000,
                _ => rng.random_range(1..=1_000_000u64),
            };
            // Split the excess over one to three children.
            let n = rng.random_range(1..=3u64);
            let mut r = vec![1u64; n as usize];
            let mut left = s;
            for x in r.iter_mut().take(n as usize - 1) {
                let part = rng.random_range(0..=left);
                *x += part;
                left -= part;
            }
            r[n as usize - 1] += left;
            let q = BoundQuery::new(m, r);
            let mt = theorem_mt_bound(&q).map_err(|e| e.to_string())?;
            let p3 = lemma_p3_bound(&q).map_err(|e| e.to_string())?;
            let l2 = lemma2_bound(&q).map_err(|e| e.to_string())?;
            ensure(mt == p3 + 1 && p3 >= l2, || format!("m = {m}, s = {s}: {mt} {p3} {l2}"))?;
            points += 1;
        }
    }
    for k in 1u64..=1_000_000 {
        let (c, f) = (isqrt_ceil(k + 1).map_err(|e| e.to_string())?, isqrt_floor(k).map_err(|e| e.to_string())?);
        ensure(c == f + 1, || format!("k = {k}: {c} vs {f}"))?;
    }
    Ok(format!("{points} grid points; isqrt identity for k in [1, 1e6]"))
}

fn scan(targets: &str, lo: usize, hi: usize, want: usize) -> Check {
    timed(SEARCH_LIMIT, || {
        let t = parse_targets(targets).map_err(|e| e.to_string())?;
        let scan = ramsey_by_search(&t, lo, hi, &SearchBudget::unlimited().with_time(SEARCH_LIMIT))
            .map_err(|e| e.to_string())?;
        ensure(scan.ramsey == Some(want), || format!("R({targets}): got {:?}", scan.ramsey))?;
        Ok(format!("R({targets}) = {want}"))
    })
}

fn small_ramsey() -> Check {
    let mut parts = vec![
        scan("C4,C4", 4, 6, 6)?,
        scan("P3,P3", 2, 3, 3)?,
        scan("C4,K3", 5, 7, 7)?,
        scan("C4,S3", 5, 6, 6)?,
    ];
    let t = parse_targets("C4,K4").map_err(|e| e.to_string())?;
    parts.push(timed(SEARCH_LIMIT, || {
        let out = search_coloring(9, &t, &SearchBudget::unlimited().with_time(SEARCH_LIMIT), None)
            .map_err(|e| e.to_string())?;
        ensure(out.is_feasible(), || format!("(C4,K4) N = 9: {}", out.status.name()))?;
        Ok("(C4,K4) N=9 Feasible".into())
    })?);
    let start = Instant::now();
    let out = search_coloring(10, &t, &SearchBudget::unlimited().with_time(STRETCH_LIMIT), None)
        .map_err(|e| e.to_string())?;
    match out.status {
        SearchStatus::Infeasible => parts.push(format!("(C4,K4) N=10 Infeasible; {:.2?}", start.elapsed())),
        SearchStatus::Unknown => parts.push("(C4,K4) N=10 Unknown within budget".into()),
        SearchStatus::Feasible(_) => return Err("(C4,K4) N=10 reported Feasible".into()),
    }
    Ok(parts.join("; "))
}

fn random_c4_free(rng: &mut StdRng) -> Option<(usize, Vec<(usize, usize)>)> {
    let n = rng.random_range(3..=7usize);
    let mut p = common::pairs(n);
    for i in (1..p.len()).rev() {
        p.swap(i, rng.random_range(0..=i));
    }
    let mut edges = Vec::new();
    for e in p {
        edges.push(e);
        if common::contains(&common::matrix(n, &edges), &Target::Cycle4) {
            edges.pop();
        }
    }
    // Occasionally thin out the maximal graph.
    while !edges.is_empty() && rng.random_bool(0.2) {
        edges.swap_remove(rng.random_range(0..edges.len()));
    }
    (common::pairs(n).len() - edges.len() <= 12).then_some((n, edges))
}

fn partition_kernel() -> Check {
    let budget = SearchBudget::unlimited().with_time(SEARCH_LIMIT);
    let (k3, k4) = (Target::Clique(3), Target::Clique(4));
    let full = [Target::Cycle4, k3.clone(), k4.clone()];
    let mut parts = Vec::new();
    for (name, g, feasible) in [
        ("E9", SimpleGraph::empty(9), false),
        ("E8", SimpleGraph::empty(8), true),
        ("C5", SimpleGraph::cycle(5), true),
    ] {
        let g = g.map_err(|e| e.to_string())?;
        parts.push(timed(SEARCH_LIMIT, || {
            let out = partition_check(&g, (&k3, &k4), &budget).map_err(|e| e.to_string())?;
            match (&out.status, feasible) {
                (SearchStatus::Feasible(w), true) => {
                    ensure(w.is_good(&full) == Ok(true) && w.class(0).ok().as_ref() == Some(&g), || {
                        format!("{name}: witness does not verify")
                    })?;
                }
                (SearchStatus::Infeasible, false) => {}
                (s, _) => return Err(format!("{name}: {}", s.name())),
            }
            Ok(format!("{name} {}", out.status.name()))
        })?);
    }

    let mut rng = StdRng::seed_from_u64(0x5eed_0006);
    let pairs = [
        (Target::Clique(3), Target::Clique(4)),
        (Target::Clique(3), Target::Clique(3)),
        (Target::Path3, Target::Clique(4)),
        (Target::Cycle4, Target::Clique(3)),
        (Target::Star(3), Target::Clique(3)),
        (Target::Clique(2), Target::Clique(3)),
    ];
    let mut checked = 0;
    let mut agree_feasible = 0;
    while checked < 150 {
        let Some((n, edges)) = random_c4_free(&mut rng) else { continue };
        let (a, b) = &pairs[checked % pairs.len()];
        let g = SimpleGraph::from_edges(n, &edges).map_err(|e| e.to_string())?;
        let out = partition_check(&g, (a, b), &budget).map_err(|e| e.to_string())?;
        let want = common::naive_partition_exists(n, &edges, a, b);
        ensure(!matches!(out.status, SearchStatus::Unknown) && out.is_feasible() == want, || {
            format!("n = {n}, edges {edges:?}, ({a},{b}): kernel {} vs brute force {want}", out.status.name())
        })?;
        agree_feasible += usize::from(want);
        checked += 1;
    }
    parts.push(format!("{checked} random graphs agree with brute force ({agree_feasible} feasible)"));
    Ok(parts.join("; "))
}

fn witness_pipeline() -> Check {
    let base_targets = parse_targets("C4,K3").map_err(|e| e.to_string())?;
    let out = search_coloring(6, &base_targets, &SearchBudget::unlimited(), None).map_err(|e| e.to_string())?;
    let base = out.status.witness().ok_or("no (C4,K3)-coloring of K6")?;
    let (ext, promoted) = extend_with_disjoint_clique(base, &base_targets, 3, 0, 1).map_err(|e| e.to_string())?;
    ensure(ext.order() == 9 && promoted == parse_targets("C4,K4").unwrap(), || "wrong extension shape".into())?;
    let fact = verify_lower_bound(&ext, &promoted).map_err(|e| e.to_string())?;
    ensure(fact.kind == FactKind::LowerBound && fact.value == 10, || format!("got {fact}"))?;
    Ok(format!("{fact}, matching the searched value 10"))
}

fn random_graph(rng: &mut StdRng, n: usize, p: f64) -> (SimpleGraph, Vec<(usize, usize)>) {
    let edges: Vec<(usize, usize)> = common::pairs(n).into_iter().filter(|_| rng.random_bool(p)).collect();
    (SimpleGraph::from_edges(n, &edges).expect("valid edges"), edges)
}

fn containment_oracle() -> Check {
    let mut targets = vec![Target::Cycle4, Target::Path3];
    targets.extend((1..=6).map(Target::Clique));
    targets.extend((1..=7).map(Target::Star));
    targets.extend((1..=6).map(Target::Book));
    targets.extend((1..=8).map(Target::Empty));
    targets.extend([
        Target::with_isolated(Target::Clique(3), 2),
        Target::with_isolated(Target::Cycle4, 1),
        Target::with_isolated(Target::Book(2), 1),
        Target::with_isolated(Target::Star(3), 3),
        Target::with_isolated(Target::Path3, 4),
    ]);
    let mut rng = StdRng::seed_from_u64(0x5eed_0008);
    let graphs = 600;
    for _ in 0..graphs {
        let n = rng.random_range(1..=8);
        let p = rng.random_range(0.1..0.9);
        let (g, edges) = random_graph(&mut rng, n, p);
        let host = common::matrix(n, &edges);
        for t in &targets {
            let want = common::contains(&host, t);
            ensure(contains_target(&g, t) == want, || format!("{t} in {edges:?} (n = {n}): expected {want}"))?;
        }
    }
    Ok(format!("{graphs} graphs x {} targets", targets.len()))
}

fn graph6_io() -> Check {
    ensure(common::graph6_reference(5, &[]) == "D??", || "reference encoder disagrees on E5".into())?;
    ensure(common::graph6_reference(2, &[(0, 1)]) == "A_", || "reference encoder disagrees on K2".into())?;
    let e5 = graph6::encode(&SimpleGraph::empty(5).unwrap());
    let k2 = graph6::encode(&SimpleGraph::complete(2).unwrap());
    ensure(e5 == "D??" && k2 == "A_", || format!("E5 -> {e5}, K2 -> {k2}"))?;
    let mut rng = StdRng::seed_from_u64(0x5eed_0009);
    for _ in 0..1000 {
        let n = rng.random_range(1..=62);
        let p = rng.random_range(0.0..1.0);
        let (g, edges) = random_graph(&mut rng, n, p);
        let s = graph6::encode(&g);
        ensure(s == common::graph6_reference(n, &edges), || format!("encoding mismatch for n = {n}"))?;
        let back = graph6::decode(&s).map_err(|e| e.to_string())?;
        ensure(back == g, || format!("round trip failed for {s}"))?;
    }
    let c = EdgeColoring::from_graph(&SimpleGraph::cycle(5).unwrap());
    ensure(EdgeColoring::parse_text(&c.to_text()).ok() == Some(c), || "coloring text round trip".into())?;
    Ok("E5 = D??, K2 = A_, 1000 random round trips".into())
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("1 concrete-case upper bounds", FAST_LIMIT, table_rows),
        ("2 books and stars", FAST_LIMIT, books_and_stars),
        ("3 n = 0 identity", FAST_LIMIT, empty_identity),
        ("4 formula relations", GRID_LIMIT, formula_relations),
        ("5 small Ramsey numbers by search", STRETCH_LIMIT + 4 * SEARCH_LIMIT, small_ramsey),
        ("6 partition kernel", 4 * SEARCH_LIMIT, partition_kernel),
        ("7 witness pipeline", SEARCH_LIMIT, witness_pipeline),
        ("8 containment oracle", SEARCH_LIMIT, containment_oracle),
        ("9 graph6 bit-exactness", SEARCH_LIMIT, graph6_io),
    ];
    let mut failed = 0;
    for (name, limit, check) in criteria {
        match timed(limit, check) {
            Ok(detail) => println!("PASS  criterion {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  criterion {name}: {why}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
