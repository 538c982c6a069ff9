//! Recursive upper-bound planner producing replayable derivation trees.
//!
//! Each node states `R(targets) ≤ value` together with the rule that justifies
//! it and the sub-derivations the rule consumed. [`DerivationTree::replay`]
//! re-evaluates every rule from its children and must reproduce every value.

use std::collections::{BTreeSet, HashMap};
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::bounds::{
    book_bound_from_star, lemma2_bound, lemma_p3_bound, parsons_bound, stars_bound, theorem_mt_bound, BoundQuery,
};
use crate::error::BoundError;
use crate::registry::{FactKind, RamseyFact, Registry, Trust};
use crate::target::{union_k1_normalize, Target, TargetList};

pub const DEFAULT_DEPTH: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Rule {
    /// A fact taken from the registry.
    Registry,
    /// Some target is `kK1`: any `k` vertices carry it in every color.
    TrivialEmpty,
    /// A single target `H` alone: `R(H) = |V(H)|`.
    SingleColor,
    /// A `K2` target forbids its color outright: `R(X, K2) = R(X)`.
    DropK2,
    /// `R(C4, H_1∪K1, …) = max{R(C4, H_1, …), |V(H_i)|+1}`.
    UnionK1,
    /// `R(C4, K_{1,k}) ≤ k + ⌈√k⌉ + 1`.
    Parsons,
    /// `R(C4, B_k) ≤ s + ⌈√s⌉ + 1` from `s ≥ R(C4, K_{1,k})`.
    BookCor,
    /// Multicolor `C4` versus stars.
    StarsCor,
    /// The main bound for `R(C4 × m, G_1, …, G_n)` from `r_i ≥ R(…, G_i − w_i, …)`.
    TheoremMT,
    /// The main bound where `max |V(G_i)|` exceeded the formula value.
    MaxWithVertexCount,
    /// `R(P3, C4 × (m−1), G_1, …)` from `r_i ≥ R(P3, C4 × (m−1), …, G_i − w_i, …)`.
    Lemma2,
    /// `R(P3, C4 × (m−1), G_1, …)` from `r_i ≥ R(C4 × m, …, G_i − w_i, …)`.
    LemmaP3,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivationTree {
    #[serde(flatten)]
    pub conclusion: RamseyFact,
    pub rule: Rule,
    pub notes: Vec<String>,
    pub children: Vec<DerivationTree>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum DeriveError {
    #[error("cannot derive an upper bound for R({targets}); missing facts for: {}", missing.join("; "))]
    CannotDerive { targets: String, missing: Vec<String> },
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("replay mismatch at R({targets}) [{rule}]: {msg}")]
pub struct ReplayError {
    pub targets: String,
    pub rule: Rule,
    pub msg: String,
}

impl DerivationTree {
    pub fn value(&self) -> u64 {
        self.conclusion.value
    }

    pub fn targets(&self) -> &TargetList {
        &self.conclusion.targets
    }

    pub fn depth(&self) -> usize {
        1 + self.children.iter().map(DerivationTree::depth).max().unwrap_or(0)
    }

    /// Re-evaluates every node from its children. With a registry, leaves
    /// citing the registry must match a recorded fact.
    pub fn replay(&self, registry: Option<&Registry>) -> Result<(), ReplayError> {
        for c in &self.children {
            c.replay(registry)?;
        }
        let fail = |msg: String| ReplayError { targets: self.targets().key(), rule: self.rule, msg };
        let expected = self.evaluate(registry).map_err(fail)?;
        if expected != self.value() {
            return Err(fail(format!("rule evaluates to {expected}, node states {}", self.value())));
        }
        Ok(())
    }

    fn evaluate(&self, registry: Option<&Registry>) -> Result<u64, String> {
        let t = self.targets();
        let kids: Vec<u64> = self.children.iter().map(DerivationTree::value).collect();
        let child_key = |i: usize| self.children[i].targets().clone();
        let bound = |r: Result<u64, BoundError>| r.map_err(|e| e.to_string());
        let expect_children = |k: usize| {
            if self.children.len() == k {
                Ok(())
            } else {
                Err(format!("expected {k} children, found {}", self.children.len()))
            }
        };
        match self.rule {
            Rule::Registry => {
                expect_children(0)?;
                if let Some(reg) = registry {
                    let ok = reg
                        .facts_for(t)
                        .iter()
                        .any(|f| f.kind.bounds_above() && f.value == self.value());
                    if !ok {
                        return Err("no matching registry fact".into());
                    }
                }
                Ok(self.value())
            }
            Rule::TrivialEmpty => {
                expect_children(0)?;
                t.targets()
                    .iter()
                    .filter_map(|x| match x {
                        Target::Empty(k) => Some(*k as u64),
                        _ => None,
                    })
                    .min()
                    .ok_or_else(|| "no kK1 target".to_string())
            }
            Rule::SingleColor => {
                expect_children(0)?;
                match t.targets() {
                    [h] => Ok(h.vertex_count()),
                    _ => Err("expected a single target".into()),
                }
            }
            Rule::DropK2 => {
                expect_children(1)?;
                let ok = t
                    .targets()
                    .iter()
                    .position(Target::is_k2)
                    .is_some_and(|i| t.remove(i) == child_key(0));
                if !ok {
                    return Err("child is not the list with one K2 removed".into());
                }
                Ok(kids[0])
            }
            Rule::UnionK1 => {
                expect_children(1)?;
                let rw = union_k1_normalize(t).map_err(|e| e.to_string())?;
                if rw.inner != child_key(0) {
                    return Err(format!("child should be R({})", rw.inner));
                }
                Ok(kids[0].max(rw.vertex_floor))
            }
            Rule::Parsons => {
                expect_children(0)?;
                match (t.m(), t.others()) {
                    (1, [s]) => bound(parsons_bound(s.as_star().ok_or("not a star")?)),
                    _ => Err("expected (C4, star)".into()),
                }
            }
            Rule::BookCor => {
                expect_children(1)?;
                let k = match (t.m(), t.others()) {
                    (1, [Target::Book(k)]) => *k,
                    _ => return Err("expected (C4, book)".into()),
                };
                if child_key(0) != TargetList::new([Target::Cycle4, Target::Star(k)]) {
                    return Err("child should bound the matching star".into());
                }
                bound(book_bound_from_star(kids[0]))
            }
            Rule::StarsCor => {
                expect_children(0)?;
                let ks: Option<Vec<u64>> = t.others().iter().map(Target::as_star).collect();
                bound(stars_bound(t.m() as u64, &ks.ok_or("non-star target")?))
            }
            Rule::TheoremMT | Rule::MaxWithVertexCount => {
                let m = t.m();
                expect_children(t.n())?;
                for (i, g) in t.others().iter().enumerate() {
                    check_deleted_child(t, m + i, g, &child_key(i))?;
                }
                let formula = bound(theorem_mt_bound(&BoundQuery::new(m as u64, kids)))?;
                let floor = t.max_other_order();
                let want = if formula >= floor { Rule::TheoremMT } else { Rule::MaxWithVertexCount };
                if self.rule != want {
                    return Err(format!("formula {formula} vs max order {floor} implies rule {want}"));
                }
                Ok(formula.max(floor))
            }
            Rule::Lemma2 | Rule::LemmaP3 => {
                let p = t
                    .targets()
                    .iter()
                    .position(|x| *x == Target::Path3)
                    .ok_or("no P3 target")?;
                let m = t.m() as u64 + 1;
                let g_positions: Vec<usize> = (t.m()..t.len()).filter(|&i| i != p).collect();
                expect_children(g_positions.len())?;
                let base = if self.rule == Rule::LemmaP3 { t.replace(p, Target::Cycle4) } else { t.clone() };
                for (ci, &gi) in g_positions.iter().enumerate() {
                    let g = &t.targets()[gi];
                    let ok = g.delete_options().map_err(|e| e.to_string())?.into_iter().any(|d| {
                        let mut v = t.targets().to_vec();
                        v[gi] = d;
                        if self.rule == Rule::LemmaP3 {
                            v[p] = Target::Cycle4;
                        }
                        TargetList::new(v) == child_key(ci)
                    });
                    if !ok {
                        return Err(format!("child {ci} is not R({base}) with {g} vertex-deleted"));
                    }
                }
                let q = BoundQuery::new(m, kids);
                if self.rule == Rule::Lemma2 {
                    bound(lemma2_bound(&q))
                } else {
                    let floor = g_positions.iter().map(|&i| t.targets()[i].vertex_count()).max().unwrap_or(0);
                    Ok(bound(lemma_p3_bound(&q))?.max(floor))
                }
            }
        }
    }

    pub fn render_text(&self) -> String {
        let mut s = String::new();
        self.render_into(&mut s, 0);
        s
    }

    fn render_into(&self, s: &mut String, indent: usize) {
        let pad = "  ".repeat(indent);
        let _ = write!(s, "{pad}{}  [{}]", self.conclusion, self.rule);
        if self.rule == Rule::Registry {
            let _ = write!(s, " {} ({})", self.conclusion.citation, self.conclusion.trust);
        }
        s.push('\n');
        for n in &self.notes {
            let _ = writeln!(s, "{pad}    · {n}");
        }
        for c in &self.children {
            c.render_into(s, indent + 1);
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("tree serializes")
    }
}

fn check_deleted_child(t: &TargetList, pos: usize, g: &Target, child: &TargetList) -> Result<(), String> {
    let ok = g
        .delete_options()
        .map_err(|e| e.to_string())?
        .into_iter()
        .any(|d| t.replace(pos, d) == *child);
    if ok {
        Ok(())
    } else {
        Err(format!("child R({child}) is not R({t}) with {g} vertex-deleted"))
    }
}

type Memo = HashMap<(TargetList, usize), Result<DerivationTree, BTreeSet<String>>>;

/// Depth-limited, memoized search for the smallest derivable upper bound.
pub struct Planner<'a> {
    registry: &'a Registry,
    depth: usize,
    memo: Memo,
}

pub fn derive(targets: &TargetList, registry: &Registry) -> Result<DerivationTree, DeriveError> {
    Planner::new(registry).derive(targets)
}

impl<'a> Planner<'a> {
    pub fn new(registry: &'a Registry) -> Self {
        Planner { registry, depth: DEFAULT_DEPTH, memo: HashMap::new() }
    }

    pub fn with_depth(mut self, depth: usize) -> Self {
        self.depth = depth;
        self
    }

    pub fn derive(&mut self, targets: &TargetList) -> Result<DerivationTree, DeriveError> {
        self.solve(targets, self.depth).map_err(|missing| DeriveError::CannotDerive {
            targets: targets.key(),
            missing: missing.into_iter().collect(),
        })
    }

    fn solve(&mut self, t: &TargetList, depth: usize) -> Result<DerivationTree, BTreeSet<String>> {
        let key = (t.clone(), depth);
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        let out = self.solve_uncached(t, depth);
        self.memo.insert(key, out.clone());
        out
    }

    fn solve_uncached(&mut self, t: &TargetList, depth: usize) -> Result<DerivationTree, BTreeSet<String>> {
        let mut missing = BTreeSet::new();
        let mut candidates: Vec<DerivationTree> = Vec::new();

        if let Some(f) = self.registry.upper(t) {
            candidates.push(DerivationTree { conclusion: f.clone(), rule: Rule::Registry, notes: vec![], children: vec![] });
        }
        if let Some(k) = t
            .targets()
            .iter()
            .filter_map(|x| match x {
                Target::Empty(k) => Some(*k as u64),
                _ => None,
            })
            .min()
        {
            candidates.push(leaf(t, k, Rule::TrivialEmpty, vec![format!("{k}K1 fits in any color class on {k} vertices")]));
        }
        if let [h] = t.targets() {
            candidates.push(leaf(t, h.vertex_count(), Rule::SingleColor, vec![]));
        }
        let (m, others) = (t.m(), t.others());
        if m == 1 && others.len() == 1 {
            if let Some(k) = others[0].as_star().filter(|&k| k >= 2) {
                if let Ok(v) = parsons_bound(k) {
                    candidates.push(leaf(t, v, Rule::Parsons, vec![format!("k = {k}")]));
                }
            }
        }
        if m >= 1 && !others.is_empty() {
            if let Some(ks) = others.iter().map(Target::as_star).collect::<Option<Vec<u64>>>() {
                if let Ok(v) = stars_bound(m as u64, &ks) {
                    candidates.push(leaf(t, v, Rule::StarsCor, vec![format!("m = {m}, k = {ks:?}")]));
                }
            }
        }
        if m >= 2 && others.is_empty() {
            if let Ok(v) = theorem_mt_bound(&BoundQuery::new(m as u64, vec![])) {
                candidates.push(leaf(t, v, Rule::TheoremMT, vec![format!("m = {m}, n = 0")]));
            }
        }

        if depth > 0 {
            let d = depth - 1;
            if t.len() >= 2 {
                if let Some(i) = t.targets().iter().position(Target::is_k2) {
                    match self.solve(&t.remove(i), d) {
                        Ok(child) => candidates.push(node(t, child.value(), Rule::DropK2, vec![], vec![child])),
                        Err(miss) => missing.extend(miss),
                    }
                }
            }
            if let Ok(rw) = union_k1_normalize(t) {
                match self.solve(&rw.inner, d) {
                    Ok(child) => {
                        let v = child.value().max(rw.vertex_floor);
                        candidates.push(node(t, v, Rule::UnionK1, vec![rw.note], vec![child]));
                    }
                    Err(miss) => missing.extend(miss),
                }
            }
            if m == 1 && others.len() == 1 {
                if let Target::Book(k) = others[0] {
                    if k >= 2 {
                        let star = TargetList::new([Target::Cycle4, Target::Star(k)]);
                        match self.solve(&star, d) {
                            Ok(child) => {
                                if let Ok(v) = book_bound_from_star(child.value()) {
                                    candidates.push(node(t, v, Rule::BookCor, vec![], vec![child]));
                                }
                            }
                            Err(miss) => missing.extend(miss),
                        }
                    }
                }
            }
            if m >= 1 && !others.is_empty() {
                match self.main_bound(t, d) {
                    Ok(Some(tree)) => candidates.push(tree),
                    Ok(None) => {}
                    Err(miss) => missing.extend(miss),
                }
            }
            if let Some(p) = t.targets().iter().position(|x| *x == Target::Path3) {
                for rule in [Rule::Lemma2, Rule::LemmaP3] {
                    match self.p3_bound(t, p, rule, d) {
                        Ok(Some(tree)) => candidates.push(tree),
                        Ok(None) => {}
                        Err(miss) => missing.extend(miss),
                    }
                }
            }
        }

        // Stable: ties keep the earliest candidate, so registry facts win ties.
        match candidates.into_iter().enumerate().min_by_key(|(i, c)| (c.value(), *i)) {
            Some((_, best)) => Ok(best),
            None => {
                missing.insert(t.key());
                Err(missing)
            }
        }
    }

    /// Best child for replacing position `pos` of `t` by one of its vertex-deleted forms.
    /// `adjust` maps the replaced list to the list actually bounded.
    fn best_deletion(
        &mut self,
        t: &TargetList,
        pos: usize,
        adjust: &dyn Fn(Vec<Target>) -> TargetList,
        depth: usize,
    ) -> Result<(DerivationTree, String), BTreeSet<String>> {
        let g = &t.targets()[pos];
        let options = g.delete_options().map_err(|_| BTreeSet::from([t.key()]))?;
        let mut missing = BTreeSet::new();
        let mut best: Option<(u64, u64, String, DerivationTree)> = None;
        for d in options {
            let mut v = t.targets().to_vec();
            v[pos] = d.clone();
            match self.solve(&adjust(v), depth) {
                Ok(tree) => {
                    let key = (tree.value(), d.vertex_count(), d.to_string());
                    if best.as_ref().is_none_or(|b| key < (b.0, b.1, b.2.clone())) {
                        best = Some((key.0, key.1, key.2, tree));
                    }
                }
                Err(miss) => missing.extend(miss),
            }
        }
        match best {
            Some((_, _, name, tree)) => {
                let note = format!("G = {g}: delete a vertex to get {name}, r = {}", tree.value());
                Ok((tree, note))
            }
            None => Err(missing),
        }
    }

    fn main_bound(&mut self, t: &TargetList, depth: usize) -> Result<Option<DerivationTree>, BTreeSet<String>> {
        let m = t.m();
        let mut children = Vec::new();
        let mut notes = Vec::new();
        for pos in m..t.len() {
            let (child, note) = self.best_deletion(t, pos, &TargetList::new, depth)?;
            children.push(child);
            notes.push(note);
        }
        let r: Vec<u64> = children.iter().map(DerivationTree::value).collect();
        let formula = match theorem_mt_bound(&BoundQuery::new(m as u64, r.clone())) {
            Ok(v) => v,
            Err(_) => return Ok(None),
        };
        let floor = t.max_other_order();
        notes.insert(0, format!("m = {m}, n = {}, r = {r:?}, formula = {formula}", t.n()));
        if m == 1 {
            notes.push("side condition: some G_i is not K2".into());
        }
        notes.push(format!(
            "hypothesis R > max|V(G_i)| = {floor} not discharged; bound is max(formula, {floor})"
        ));
        let rule = if formula >= floor { Rule::TheoremMT } else { Rule::MaxWithVertexCount };
        Ok(Some(node(t, formula.max(floor), rule, notes, children)))
    }

    fn p3_bound(
        &mut self,
        t: &TargetList,
        p: usize,
        rule: Rule,
        depth: usize,
    ) -> Result<Option<DerivationTree>, BTreeSet<String>> {
        let m = t.m() as u64 + 1;
        let adjust = move |mut v: Vec<Target>| {
            if rule == Rule::LemmaP3 {
                v[p] = Target::Cycle4;
            }
            TargetList::new(v)
        };
        let mut children = Vec::new();
        let mut notes = Vec::new();
        let positions: Vec<usize> = (t.m()..t.len()).filter(|&i| i != p).collect();
        for &pos in &positions {
            let (child, note) = self.best_deletion(t, pos, &adjust, depth)?;
            children.push(child);
            notes.push(note);
        }
        let r: Vec<u64> = children.iter().map(DerivationTree::value).collect();
        let q = BoundQuery::new(m, r.clone());
        let value = if rule == Rule::Lemma2 {
            match lemma2_bound(&q) {
                Ok(v) => v,
                Err(_) => return Ok(None),
            }
        } else {
            let floor = positions.iter().map(|&i| t.targets()[i].vertex_count()).max().unwrap_or(0);
            match lemma_p3_bound(&q) {
                Ok(v) => {
                    notes.push(format!("hypothesis on R with P3 replaced by C4 not discharged; bound is max(formula, {floor})"));
                    v.max(floor)
                }
                Err(_) => return Ok(None),
            }
        };
        notes.insert(0, format!("P3 block with m = {m}, r = {r:?}"));
        Ok(Some(node(t, value, rule, notes, children)))
    }
}

fn leaf(t: &TargetList, value: u64, rule: Rule, notes: Vec<String>) -> DerivationTree {
    node(t, value, rule, notes, vec![])
}

fn node(t: &TargetList, value: u64, rule: Rule, notes: Vec<String>, children: Vec<DerivationTree>) -> DerivationTree {
    DerivationTree {
        conclusion: RamseyFact::new(t.clone(), FactKind::UpperBound, value, rule.to_string(), Trust::Derived),
        rule,
        notes,
        children,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reg(lines: &str) -> Registry {
        Registry::parse(lines).unwrap()
    }

    fn key(s: &str) -> TargetList {
        s.parse().unwrap()
    }

    #[test]
    fn case_one_and_two_chain() {
        let r = reg("C4,K10 | exact | 36 | [LaLR] | published\n");
        let t = derive(&key("C4,K11"), &r).unwrap();
        assert_eq!(t.value(), 43);
        assert_eq!(t.rule, Rule::TheoremMT);
        assert_eq!(t.children[0].rule, Rule::Registry);
        t.replay(Some(&r)).unwrap();

        let t = derive(&key("C4,K12"), &r).unwrap();
        assert_eq!(t.value(), 51);
        assert_eq!(t.children[0].value(), 43);
        t.replay(Some(&r)).unwrap();
    }

    #[test]
    fn cases_six_and_seven_chain() {
        let r = reg("C4,C4,K4 | upper | 21 | [LidP] | published\nC4,C4,K3,K3 | upper | 36 | [XuR2] | published\n");
        let t6 = derive(&key("C4,C4,K3,K4"), &r).unwrap();
        assert_eq!(t6.value(), 75);
        let t7 = derive(&key("C4,C4,K4,K4"), &r).unwrap();
        assert_eq!(t7.value(), 177);
        assert!(t7.children.iter().all(|c| c.value() == 75));
        t7.replay(Some(&r)).unwrap();
    }

    #[test]
    fn case_four_from_computational_fact() {
        let r = reg("C4,K3,K4 | upper | 29 | computed | computational\n");
        let t = derive(&key("C4,K4,K4"), &r).unwrap();
        assert_eq!(t.value(), 66);
        t.replay(Some(&r)).unwrap();
    }

    #[test]
    fn case_five_drops_k2() {
        let r = reg("C4,K3,K3 | exact | 17 | [ExRe] | published\n");
        let t = derive(&key("C4,K3,K3,K3"), &r).unwrap();
        assert_eq!(t.value(), 57);
        assert!(t.children.iter().all(|c| c.rule == Rule::DropK2));
        t.replay(Some(&r)).unwrap();
    }

    #[test]
    fn books_stars_and_union() {
        let empty = Registry::new();
        assert_eq!(derive(&key("C4,B17"), &empty).unwrap().value(), 29);
        let with_star = reg("C4,S17 | exact | 22 | [Par3] | published\n");
        let b = derive(&key("C4,B17"), &with_star).unwrap();
        assert_eq!((b.value(), b.rule), (28, Rule::BookCor));
        b.replay(Some(&with_star)).unwrap();

        let s = derive(&key("C4,S3"), &empty).unwrap();
        assert_eq!(s.value(), 6);

        let u = derive(&key("C4,3K1"), &empty).unwrap();
        assert_eq!(u.value(), 3);

        let u = derive(&key("C4,K3+1K1"), &reg("C4,K3 | exact | 7 | known | user\n")).unwrap();
        assert_eq!(u.value(), 7);
        u.replay(None).unwrap();
    }

    #[test]
    fn unresolvable_lists_missing_facts() {
        let err = derive(&key("K3,K4"), &Registry::new()).unwrap_err();
        let DeriveError::CannotDerive { missing, .. } = err;
        assert!(missing.contains(&"K3,K4".to_string()));
    }

    #[test]
    fn tampered_tree_fails_replay() {
        let r = reg("C4,K10 | exact | 36 | [LaLR] | published\n");
        let mut t = derive(&key("C4,K11"), &r).unwrap();
        t.conclusion.value = 42;
        assert!(t.replay(Some(&r)).is_err());
        let mut t = derive(&key("C4,K11"), &r).unwrap();
        t.children[0].conclusion.value = 35;
        assert!(t.replay(Some(&r)).is_err());
        assert!(t.replay(None).is_err());
    }

    #[test]
    fn json_round_trip() {
        let r = Registry::seed();
        let t = derive(&key("C4,C4,K4,K4"), &r).unwrap();
        let back: DerivationTree = serde_json::from_str(&t.to_json()).unwrap();
        assert_eq!(back, t);
        let v: serde_json::Value = serde_json::from_str(&t.to_json()).unwrap();
        for field in ["rule", "value", "children", "notes", "citation"] {
            assert!(v.get(field).is_some(), "{field}");
        }
    }
}
