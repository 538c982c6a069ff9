//! Backtracking search for good colorings of `K_N`.
//!
//! Pairs are assigned in canonical pair order. After each assignment only the
//! copies of the target through the new edge are checked, using the color's
//! adjacency bitsets. Branches are cut when:
//!
//! - the new edge completes a forbidden copy in its color;
//! - an endpoint's degree in that color would exceed its cap (from the caller,
//!   or implied by a star-like target);
//! - an endpoint has more open pairs than all colors together can still absorb.
//!
//! Colors with identical targets and caps are interchangeable; the search
//! only opens a new color of such a class after the previous member of the
//! class has been used. That is the only symmetry reduction, so an
//! `Infeasible` outcome is exhaustive modulo color permutations within those
//! classes.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::coloring::{pair_count, pair_index, EdgeColoring, UNASSIGNED};
use crate::derive::Planner;
use crate::detect::{contains_through_edge, find_in_rows, find_target};
use crate::error::{GraphError, SearchError};
use crate::graph::{bit, SimpleGraph, VertexSet, MAX_VERTICES};
use crate::registry::Registry;
use crate::target::{Target, TargetList};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    pub node_limit: u64,
    pub time_limit: Duration,
    pub thread_hint: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { node_limit: u64::MAX, time_limit: Duration::from_secs(60), thread_hint: 1 }
    }
}

impl SearchBudget {
    /// No node limit and a time limit far beyond any desk-scale run.
    pub fn unlimited() -> Self {
        SearchBudget { node_limit: u64::MAX, time_limit: Duration::from_secs(365 * 24 * 3600), thread_hint: 1 }
    }

    pub fn with_nodes(mut self, node_limit: u64) -> Self {
        self.node_limit = node_limit.max(1);
        self
    }

    pub fn with_time(mut self, time_limit: Duration) -> Self {
        self.time_limit = time_limit.max(Duration::from_millis(1));
        self
    }

    pub fn with_threads(mut self, threads: usize) -> Self {
        self.thread_hint = threads.max(1);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchStatus {
    Feasible(EdgeColoring),
    Infeasible,
    Unknown,
}

impl SearchStatus {
    pub fn name(&self) -> &'static str {
        match self {
            SearchStatus::Feasible(_) => "Feasible",
            SearchStatus::Infeasible => "Infeasible",
            SearchStatus::Unknown => "Unknown",
        }
    }

    pub fn witness(&self) -> Option<&EdgeColoring> {
        match self {
            SearchStatus::Feasible(w) => Some(w),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    pub status: SearchStatus,
    pub nodes_explored: u64,
    pub elapsed: Duration,
    pub certificate_note: String,
}

impl SearchOutcome {
    pub fn is_feasible(&self) -> bool {
        matches!(self.status, SearchStatus::Feasible(_))
    }

    pub fn is_infeasible(&self) -> bool {
        matches!(self.status, SearchStatus::Infeasible)
    }
}

/// Searches for a coloring of `K_n` whose class `i` avoids `targets[i]`.
///
/// `degree_caps[i]`, when supplied, is a trusted upper bound on every
/// vertex's color-`i` degree.
pub fn search_coloring(
    n: usize,
    targets: &[Target],
    budget: &SearchBudget,
    degree_caps: Option<&[usize]>,
) -> Result<SearchOutcome, SearchError> {
    if n == 0 || n > MAX_VERTICES {
        return Err(SearchError::Order(n));
    }
    if targets.is_empty() || targets.len() > 64 {
        return Err(SearchError::TargetCount { expected: targets.len().clamp(1, 64), got: targets.len() });
    }
    if let Some(c) = degree_caps {
        if c.len() != targets.len() {
            return Err(SearchError::CapCount { expected: targets.len(), got: c.len() });
        }
    }
    let all = (1u64 << targets.len()) - 1;
    let problem = Problem::new(n, targets, degree_caps, &[], all);
    Ok(problem.run(budget))
}

/// Per-`N` outcomes over `n_min..=n_max` and the Ramsey number they certify.
#[derive(Clone, Debug)]
pub struct RamseyScan {
    pub outcomes: BTreeMap<usize, SearchOutcome>,
    /// Least `N` that is `Infeasible` when every smaller `N` in range is `Feasible`.
    pub ramsey: Option<usize>,
}

/// Runs [`search_coloring`] for each order in range. Once some `N` is
/// infeasible, larger orders are recorded as infeasible without searching,
/// since every coloring of a larger complete graph restricts to one of `K_N`.
pub fn ramsey_by_search(
    targets: &[Target],
    n_min: usize,
    n_max: usize,
    budget: &SearchBudget,
) -> Result<RamseyScan, SearchError> {
    if n_min == 0 || n_min > n_max || n_max > MAX_VERTICES {
        return Err(SearchError::Range(n_min, n_max));
    }
    let mut outcomes = BTreeMap::new();
    let mut ramsey = None;
    let mut all_feasible = true;
    let mut closed_at = None;
    for n in n_min..=n_max {
        if let Some(first) = closed_at {
            outcomes.insert(
                n,
                SearchOutcome {
                    status: SearchStatus::Infeasible,
                    nodes_explored: 0,
                    elapsed: Duration::ZERO,
                    certificate_note: format!("implied by the infeasible K{first}"),
                },
            );
            continue;
        }
        let out = search_coloring(n, targets, budget, None)?;
        match out.status {
            SearchStatus::Infeasible => {
                if all_feasible {
                    ramsey = Some(n);
                }
                closed_at = Some(n);
            }
            SearchStatus::Unknown => all_feasible = false,
            SearchStatus::Feasible(_) => {}
        }
        outcomes.insert(n, out);
    }
    Ok(RamseyScan { outcomes, ramsey })
}

/// Decides whether the non-edges of the `C4`-free graph `g` split into a
/// `targets.0`-free class and a `targets.1`-free class.
///
/// A `Feasible` witness is the full 3-coloring: `g`'s edges in color 0 and the
/// split of the complement in colors 1 and 2, verified good for
/// `(C4, targets.0, targets.1)`.
pub fn partition_check(
    g: &SimpleGraph,
    targets: (&Target, &Target),
    budget: &SearchBudget,
) -> Result<SearchOutcome, SearchError> {
    if let Some(c4) = find_target(g, &Target::Cycle4) {
        return Err(SearchError::NotC4Free(c4));
    }
    let all_targets = [Target::Cycle4, targets.0.clone(), targets.1.clone()];
    let fixed: Vec<(usize, usize, u8)> = g.edges().into_iter().map(|(u, v)| (u, v, 0)).collect();
    let problem = Problem::new(g.order(), &all_targets, None, &fixed, 0b110);
    Ok(problem.run(budget))
}

/// Recolors color `j` as `i` and shifts colors above `j` down by one.
pub fn merge_colors(coloring: &EdgeColoring, i: usize, j: usize) -> Result<EdgeColoring, GraphError> {
    let c = coloring.colors();
    for x in [i, j] {
        if x >= c {
            return Err(GraphError::Color { color: x, colors: c });
        }
    }
    if i == j || c < 2 {
        return Err(GraphError::Color { color: j, colors: c });
    }
    let relabel = |x: u8| -> u8 {
        if x == UNASSIGNED {
            return x;
        }
        let y = if x as usize == j { i as u8 } else { x };
        if y as usize > j {
            y - 1
        } else {
            y
        }
    };
    let pairs = coloring.pairs().iter().map(|&p| relabel(p)).collect();
    EdgeColoring::from_pairs(coloring.order(), c - 1, pairs)
}

/// Degree caps implied by the registry: with `u` any vertex of `targets[i]`,
/// every color-`i` degree is below `R(…, targets[i] − u, …)`. Colors with no
/// derivable bound get `n − 1`.
pub fn degree_caps_from_registry(n: usize, targets: &[Target], registry: &Registry) -> Vec<usize> {
    let mut planner = Planner::new(registry);
    targets
        .iter()
        .enumerate()
        .map(|(i, t)| {
            let options = t.delete_options().unwrap_or_default();
            options
                .into_iter()
                .filter_map(|d| {
                    let mut v = targets.to_vec();
                    v[i] = d;
                    planner.derive(&TargetList::new(v)).ok().map(|tree| tree.value())
                })
                .min()
                .map_or(n.saturating_sub(1), |r| (r.saturating_sub(1) as usize).min(n.saturating_sub(1)))
        })
        .collect()
}

const NONE: u8 = u8::MAX;

struct Problem {
    n: usize,
    colors: usize,
    targets: Vec<Target>,
    /// Whether the target can occur at all on `n` vertices through an edge.
    active: Vec<bool>,
    caps: Vec<u32>,
    /// Open pairs in assignment order.
    edges: Vec<(usize, usize)>,
    fixed: Vec<(usize, usize, u8)>,
    palette: u64,
    /// Previous member of the color's symmetry class.
    sym_prev: Vec<Option<usize>>,
    trivially_infeasible: Option<String>,
}

#[derive(Clone)]
struct State {
    adj: Vec<VertexSet>,
    deg: Vec<u32>,
    used: Vec<u32>,
    open: Vec<u32>,
    choice: Vec<u8>,
}

enum Walk {
    Found,
    Exhausted,
    Stopped,
}

struct Control {
    deadline: Instant,
    node_limit: u64,
    nodes: AtomicU64,
    stop: AtomicBool,
}

impl Problem {
    fn new(n: usize, targets: &[Target], caps: Option<&[usize]>, fixed: &[(usize, usize, u8)], palette: u64) -> Problem {
        let colors = targets.len();
        let targets: Vec<Target> = targets.iter().map(Target::normalized).collect();
        let mut trivially_infeasible = None;
        let mut active = Vec::with_capacity(colors);
        let mut cap_list = Vec::with_capacity(colors);
        for (i, t) in targets.iter().enumerate() {
            let live = match t {
                Target::Empty(k) => {
                    if (*k as usize) <= n {
                        trivially_infeasible = Some(format!("color {i} forbids {t}, which every class on {n} vertices contains"));
                    }
                    false
                }
                Target::WithIsolated(b, s) => b.vertex_count() + *s as u64 <= n as u64,
                _ => t.vertex_count() <= n as u64,
            };
            let shape_cap = match t.as_star() {
                Some(k) if live => (k - 1) as usize,
                _ => n.saturating_sub(1),
            };
            let user_cap = caps.map_or(usize::MAX, |c| c[i]);
            cap_list.push(shape_cap.min(user_cap).min(n.saturating_sub(1)) as u32);
            active.push(live);
        }

        let mut is_fixed = vec![false; pair_count(n)];
        for &(u, v, _) in fixed {
            is_fixed[pair_index(u, v)] = true;
        }
        let mut edges = Vec::with_capacity(pair_count(n));
        for v in 1..n {
            for u in 0..v {
                if !is_fixed[pair_index(u, v)] {
                    edges.push((u, v));
                }
            }
        }

        let fixed_colors: u64 = fixed.iter().fold(0, |m, &(_, _, c)| m | (1 << c));
        let sym_prev = (0..colors)
            .map(|c| {
                if fixed_colors & (1 << c) != 0 || palette & (1 << c) == 0 {
                    return None;
                }
                (0..c).rev().find(|&p| {
                    fixed_colors & (1 << p) == 0
                        && palette & (1 << p) != 0
                        && targets[p] == targets[c]
                        && cap_list[p] == cap_list[c]
                })
            })
            .collect();

        Problem {
            n,
            colors,
            targets,
            active,
            caps: cap_list,
            edges,
            fixed: fixed.to_vec(),
            palette,
            sym_prev,
            trivially_infeasible,
        }
    }

    fn note(&self) -> String {
        let classes: Vec<String> = (0..self.colors)
            .filter_map(|c| self.sym_prev[c].map(|p| format!("{p}~{c}")))
            .collect();
        let sym = if classes.is_empty() {
            "no symmetry reduction".to_string()
        } else {
            format!("color-permutation reduction on interchangeable colors [{}]", classes.join(", "))
        };
        format!(
            "exhaustive backtracking over {} open pairs in canonical order; {sym}; degree caps {:?}",
            self.edges.len(),
            self.caps
        )
    }

    fn initial_state(&self) -> Result<State, String> {
        let n = self.n;
        let mut st = State {
            adj: vec![0; self.colors * n],
            deg: vec![0; self.colors * n],
            used: vec![0; self.colors],
            open: vec![0; n],
            choice: vec![NONE; self.edges.len()],
        };
        for &(u, v) in &self.edges {
            st.open[u] += 1;
            st.open[v] += 1;
        }
        for &(u, v, c) in &self.fixed {
            let c = c as usize;
            st.adj[c * n + u] |= bit(v);
            st.adj[c * n + v] |= bit(u);
            st.deg[c * n + u] += 1;
            st.deg[c * n + v] += 1;
            st.used[c] += 1;
        }
        for c in 0..self.colors {
            if let Some(copy) = find_in_rows(&st.adj[c * n..(c + 1) * n], &self.targets[c]) {
                if self.active[c] {
                    return Err(format!("fixed edges already contain {} in color {c} on {copy:?}", self.targets[c]));
                }
            }
        }
        Ok(st)
    }

    /// Tries colors `from..` on open pair `depth`; applies and returns the first that survives.
    #[inline]
    fn try_assign(&self, st: &mut State, depth: usize, from: usize) -> Option<u8> {
        let n = self.n;
        let (u, v) = self.edges[depth];
        for c in from..self.colors {
            if self.palette & (1 << c) == 0 {
                continue;
            }
            if let Some(p) = self.sym_prev[c] {
                if st.used[p] == 0 {
                    continue;
                }
            }
            let cap = self.caps[c];
            if st.deg[c * n + u] >= cap || st.deg[c * n + v] >= cap {
                continue;
            }
            self.apply(st, u, v, c);
            let rows = &st.adj[c * n..(c + 1) * n];
            let bad = (self.active[c] && contains_through_edge(rows, &self.targets[c], u, v))
                || !self.room(st, u)
                || !self.room(st, v);
            if bad {
                self.revert(st, u, v, c);
                continue;
            }
            return Some(c as u8);
        }
        None
    }

    /// Whether the remaining open pairs at `w` can still be colored within the caps.
    #[inline]
    fn room(&self, st: &State, w: usize) -> bool {
        let open = st.open[w];
        if open == 0 {
            return true;
        }
        let mut spare = 0;
        for c in 0..self.colors {
            if self.palette & (1 << c) != 0 {
                spare += self.caps[c] - st.deg[c * self.n + w];
                if spare >= open {
                    return true;
                }
            }
        }
        false
    }

    #[inline]
    fn apply(&self, st: &mut State, u: usize, v: usize, c: usize) {
        let n = self.n;
        st.adj[c * n + u] |= bit(v);
        st.adj[c * n + v] |= bit(u);
        st.deg[c * n + u] += 1;
        st.deg[c * n + v] += 1;
        st.used[c] += 1;
        st.open[u] -= 1;
        st.open[v] -= 1;
    }

    #[inline]
    fn revert(&self, st: &mut State, u: usize, v: usize, c: usize) {
        let n = self.n;
        st.adj[c * n + u] &= !bit(v);
        st.adj[c * n + v] &= !bit(u);
        st.deg[c * n + u] -= 1;
        st.deg[c * n + v] -= 1;
        st.used[c] -= 1;
        st.open[u] += 1;
        st.open[v] += 1;
    }

    /// Depth-first walk below `base` down to `limit`, calling `leaf` at each
    /// full-depth state; `leaf` returns `true` to stop the walk.
    fn walk(
        &self,
        st: &mut State,
        base: usize,
        limit: usize,
        ctl: &Control,
        leaf: &mut dyn FnMut(&State) -> bool,
    ) -> Walk {
        let mut depth = base;
        let mut local: u64 = 0;
        let flush = |local: &mut u64| -> bool {
            let total = ctl.nodes.fetch_add(*local, Ordering::Relaxed) + *local;
            *local = 0;
            total >= ctl.node_limit || ctl.stop.load(Ordering::Relaxed) || Instant::now() >= ctl.deadline
        };
        loop {
            if depth == limit {
                if leaf(st) {
                    flush(&mut local);
                    return Walk::Found;
                }
                if depth == base {
                    flush(&mut local);
                    return Walk::Exhausted;
                }
                depth -= 1;
                continue;
            }
            let from = match st.choice[depth] {
                NONE => 0,
                prev => {
                    let (u, v) = self.edges[depth];
                    self.revert(st, u, v, prev as usize);
                    prev as usize + 1
                }
            };
            match self.try_assign(st, depth, from) {
                Some(c) => {
                    st.choice[depth] = c;
                    depth += 1;
                    local += 1;
                    if local & 0xfff == 0 && flush(&mut local) {
                        return Walk::Stopped;
                    }
                    if ctl.node_limit != u64::MAX
                        && ctl.nodes.load(Ordering::Relaxed) + local >= ctl.node_limit
                    {
                        flush(&mut local);
                        return Walk::Stopped;
                    }
                }
                None => {
                    st.choice[depth] = NONE;
                    if depth == base {
                        flush(&mut local);
                        return Walk::Exhausted;
                    }
                    depth -= 1;
                }
            }
        }
    }

    fn witness(&self, st: &State) -> EdgeColoring {
        let n = self.n;
        let mut pairs = vec![UNASSIGNED; pair_count(n)];
        for c in 0..self.colors {
            for v in 1..n {
                let row = st.adj[c * n + v];
                for u in 0..v {
                    if row & bit(u) != 0 {
                        pairs[pair_index(u, v)] = c as u8;
                    }
                }
            }
        }
        EdgeColoring::from_pairs(n, self.colors, pairs).expect("search state is a valid coloring")
    }

    fn run(&self, budget: &SearchBudget) -> SearchOutcome {
        let started = Instant::now();
        let finish = |status: SearchStatus, nodes: u64, note: String| {
            if let SearchStatus::Feasible(w) = &status {
                assert!(
                    w.is_good(&self.targets).unwrap_or(false),
                    "search produced a coloring that fails verification"
                );
            }
            SearchOutcome { status, nodes_explored: nodes, elapsed: started.elapsed(), certificate_note: note }
        };
        if let Some(why) = &self.trivially_infeasible {
            return finish(SearchStatus::Infeasible, 0, why.clone());
        }
        let mut st = match self.initial_state() {
            Ok(st) => st,
            Err(why) => return finish(SearchStatus::Infeasible, 0, why),
        };
        let ctl = Control {
            deadline: started + budget.time_limit,
            node_limit: budget.node_limit,
            nodes: AtomicU64::new(0),
            stop: AtomicBool::new(false),
        };
        let total = self.edges.len();

        if budget.thread_hint <= 1 || total < 8 {
            let mut found = false;
            let walk = self.walk(&mut st, 0, total, &ctl, &mut |_| {
                found = true;
                true
            });
            let nodes = ctl.nodes.load(Ordering::Relaxed);
            return match walk {
                Walk::Found => finish(SearchStatus::Feasible(self.witness(&st)), nodes, "witness verified".into()),
                Walk::Exhausted => finish(SearchStatus::Infeasible, nodes, self.note()),
                Walk::Stopped => finish(SearchStatus::Unknown, nodes, "budget exhausted before the search closed".into()),
            };
        }

        // Split on a prefix of the pair order, then run the subtrees in parallel.
        let threads = budget.thread_hint;
        let mut split = 1;
        let mut prefixes: Vec<Vec<u8>> = Vec::new();
        loop {
            prefixes.clear();
            let mut probe = st.clone();
            let walk = self.walk(&mut probe, 0, split, &ctl, &mut |s| {
                prefixes.push(s.choice[..split].to_vec());
                false
            });
            if let Walk::Stopped = walk {
                let nodes = ctl.nodes.load(Ordering::Relaxed);
                return finish(SearchStatus::Unknown, nodes, "budget exhausted while splitting work".into());
            }
            if prefixes.is_empty() {
                let nodes = ctl.nodes.load(Ordering::Relaxed);
                return finish(SearchStatus::Infeasible, nodes, self.note());
            }
            if prefixes.len() >= 16 * threads || split == total {
                break;
            }
            split += 1;
        }
        if split == total {
            let mut done = st.clone();
            for (d, &c) in prefixes[0].iter().enumerate() {
                let (u, v) = self.edges[d];
                self.apply(&mut done, u, v, c as usize);
                done.choice[d] = c;
            }
            let nodes = ctl.nodes.load(Ordering::Relaxed);
            return finish(SearchStatus::Feasible(self.witness(&done)), nodes, "witness verified".into());
        }

        let next = AtomicUsize::new(0);
        let stopped = AtomicBool::new(false);
        let found: Mutex<Option<EdgeColoring>> = Mutex::new(None);
        std::thread::scope(|scope| {
            for _ in 0..threads {
                scope.spawn(|| loop {
                    let i = next.fetch_add(1, Ordering::Relaxed);
                    if i >= prefixes.len() || ctl.stop.load(Ordering::Relaxed) {
                        return;
                    }
                    let mut local = st.clone();
                    for (d, &c) in prefixes[i].iter().enumerate() {
                        let (u, v) = self.edges[d];
                        self.apply(&mut local, u, v, c as usize);
                        local.choice[d] = c;
                    }
                    match self.walk(&mut local, split, total, &ctl, &mut |_| true) {
                        Walk::Found => {
                            let mut slot = found.lock().expect("witness lock");
                            if slot.is_none() {
                                *slot = Some(self.witness(&local));
                            }
                            ctl.stop.store(true, Ordering::Relaxed);
                            return;
                        }
                        Walk::Stopped => {
                            stopped.store(true, Ordering::Relaxed);
                            ctl.stop.store(true, Ordering::Relaxed);
                            return;
                        }
                        Walk::Exhausted => {}
                    }
                });
            }
        });
        let nodes = ctl.nodes.load(Ordering::Relaxed);
        if let Some(w) = found.into_inner().expect("witness lock") {
            return finish(SearchStatus::Feasible(w), nodes, "witness verified".into());
        }
        if stopped.load(Ordering::Relaxed) {
            return finish(SearchStatus::Unknown, nodes, "budget exhausted before the search closed".into());
        }
        let note = format!("{}; {} subtrees split at depth {split}, all closed", self.note(), prefixes.len());
        finish(SearchStatus::Infeasible, nodes, note)
    }
}
