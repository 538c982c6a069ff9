//! The closed family of forbidden graphs and target lists.
//!
//! Grammar for a single target:
//!
//! ```text
//! target := base ( "+" count "K1" )*
//! base   := "C4" | "P3" | "K" k | "S" k | "B" k | k "K1"
//! ```
//!
//! `S k` is the star `K_{1,k}`, `B k` the book `K_2 + kK_1`, and `k K1` the
//! edgeless graph on `k` vertices. Values are kept in a normal form so that
//! coinciding members compare equal: `K1 = 1K1`, `S1 = K2`, `S2 = P3`,
//! `B1 = K3`, and isolated vertices added to an edgeless graph or to an
//! existing `+tK1` term are merged.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{GraphError, ParseError, TargetError};
use crate::graph::SimpleGraph;

#[derive(Clone, Debug)]
pub enum Target {
    /// `K_k`.
    Clique(u32),
    Cycle4,
    /// `K_{1,k}`: a center joined to `k` leaves.
    Star(u32),
    /// `B_k = K_2 + kK_1`: a spine edge plus `k` pages adjacent to both ends.
    Book(u32),
    /// `kK_1`: `k` isolated vertices.
    Empty(u32),
    Path3,
    /// `base ∪ tK_1`.
    WithIsolated(Box<Target>, u32),
}

impl Target {
    pub fn with_isolated(base: Target, t: u32) -> Target {
        Target::WithIsolated(Box::new(base), t).normalized()
    }

    pub fn normalized(&self) -> Target {
        match self {
            Target::Clique(1) => Target::Empty(1),
            Target::Star(1) => Target::Clique(2),
            Target::Star(2) => Target::Path3,
            Target::Book(1) => Target::Clique(3),
            Target::WithIsolated(b, 0) => b.normalized(),
            Target::WithIsolated(b, t) => match b.normalized() {
                Target::Empty(k) => Target::Empty(k + t),
                Target::WithIsolated(bb, s) => Target::WithIsolated(bb, s + t),
                nb => Target::WithIsolated(Box::new(nb), *t),
            },
            other => other.clone(),
        }
    }

    pub fn vertex_count(&self) -> u64 {
        match self {
            Target::Clique(k) | Target::Empty(k) => *k as u64,
            Target::Cycle4 => 4,
            Target::Star(k) => *k as u64 + 1,
            Target::Book(k) => *k as u64 + 2,
            Target::Path3 => 3,
            Target::WithIsolated(b, t) => b.vertex_count() + *t as u64,
        }
    }

    pub fn is_cycle4(&self) -> bool {
        matches!(self, Target::Cycle4)
    }

    /// `K_2`, the target excluded from the single-`C4` case of the main bound.
    pub fn is_k2(&self) -> bool {
        matches!(self.normalized(), Target::Clique(2))
    }

    /// `Some(k)` when this target is the star `K_{1,k}` (including `K2` and `P3`).
    pub fn as_star(&self) -> Option<u64> {
        match self.normalized() {
            Target::Clique(2) => Some(1),
            Target::Path3 => Some(2),
            Target::Star(k) => Some(k as u64),
            _ => None,
        }
    }

    /// Distinct graphs obtained by deleting one vertex, in sorted order.
    pub fn delete_options(&self) -> Result<Vec<Target>, TargetError> {
        let t = self.normalized();
        if t.vertex_count() < 2 {
            return Err(TargetError::SingleVertex(t.to_string()));
        }
        let mut out = match &t {
            Target::Clique(k) => vec![Target::Clique(k - 1)],
            Target::Cycle4 => vec![Target::Path3],
            Target::Star(k) => vec![Target::Star(k - 1), Target::Empty(*k)],
            Target::Book(k) => vec![Target::Star(*k), Target::Book(k - 1)],
            Target::Empty(k) => vec![Target::Empty(k - 1)],
            Target::Path3 => vec![Target::Clique(2), Target::Empty(2)],
            Target::WithIsolated(b, t) => {
                let mut v: Vec<Target> = b
                    .delete_options()?
                    .into_iter()
                    .map(|d| Target::WithIsolated(Box::new(d), *t))
                    .collect();
                v.push(Target::WithIsolated(b.clone(), t - 1));
                v
            }
        };
        for o in &mut out {
            *o = o.normalized();
        }
        out.sort();
        out.dedup();
        Ok(out)
    }

    /// `Some(H)` when this target is `H ∪ K_1` for some `H` with at least one vertex.
    pub fn strip_isolated(&self) -> Option<Target> {
        match self.normalized() {
            Target::Empty(k) if k >= 2 => Some(Target::Empty(k - 1)),
            Target::WithIsolated(b, t) => Some(Target::WithIsolated(b, t - 1).normalized()),
            _ => None,
        }
    }

    /// A concrete labeled copy of this target.
    pub fn materialize(&self) -> Result<SimpleGraph, GraphError> {
        let n = self.vertex_count() as usize;
        let mut g = SimpleGraph::empty(n)?;
        match self.normalized() {
            Target::Clique(k) => {
                for v in 1..k as usize {
                    for u in 0..v {
                        g.add_edge(u, v)?;
                    }
                }
            }
            Target::Cycle4 => {
                for v in 0..4 {
                    g.add_edge(v, (v + 1) % 4)?;
                }
            }
            Target::Star(k) => {
                for leaf in 1..=k as usize {
                    g.add_edge(0, leaf)?;
                }
            }
            Target::Book(k) => {
                g.add_edge(0, 1)?;
                for page in 2..k as usize + 2 {
                    g.add_edge(0, page)?;
                    g.add_edge(1, page)?;
                }
            }
            Target::Empty(_) => {}
            Target::Path3 => {
                g.add_edge(0, 1)?;
                g.add_edge(1, 2)?;
            }
            Target::WithIsolated(b, _) => {
                for (u, v) in b.materialize()?.edges() {
                    g.add_edge(u, v)?;
                }
            }
        }
        Ok(g)
    }

    fn sort_key(&self) -> (u64, String) {
        (self.vertex_count(), self.to_string())
    }
}

impl PartialEq for Target {
    fn eq(&self, other: &Self) -> bool {
        self.to_string() == other.to_string()
    }
}

impl Eq for Target {}

impl Hash for Target {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.to_string().hash(state);
    }
}

impl PartialOrd for Target {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Target {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

/// Renders the normal form, so display doubles as the equality key.
impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.normalized() {
            Target::Clique(k) => write!(f, "K{k}"),
            Target::Cycle4 => f.write_str("C4"),
            Target::Star(k) => write!(f, "S{k}"),
            Target::Book(k) => write!(f, "B{k}"),
            Target::Empty(1) => f.write_str("K1"),
            Target::Empty(k) => write!(f, "{k}K1"),
            Target::Path3 => f.write_str("P3"),
            Target::WithIsolated(b, t) => write!(f, "{b}+{t}K1"),
        }
    }
}

impl FromStr for Target {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_target_at(s, s, 0)
    }
}

pub fn parse_target(text: &str) -> Result<Target, ParseError> {
    text.parse()
}

pub fn render_target(t: &Target) -> String {
    t.to_string()
}

/// Parses `text`, a slice of `whole` beginning at byte `offset`; positions in
/// errors refer to `whole`.
fn parse_target_at(whole: &str, text: &str, offset: usize) -> Result<Target, ParseError> {
    let mut parts = Vec::new();
    let mut start = 0;
    for (i, ch) in text.char_indices() {
        if ch == '+' {
            parts.push((start, &text[start..i]));
            start = i + 1;
        }
    }
    parts.push((start, &text[start..]));

    let (bpos, base) = parts[0];
    let mut target = parse_base(whole, base, offset + bpos)?;
    for &(pos, part) in &parts[1..] {
        let at = offset + pos + (part.len() - part.trim_start().len());
        match parse_base(whole, part, offset + pos)?.normalized() {
            Target::Empty(t) => target = Target::WithIsolated(Box::new(target), t),
            _ => return Err(perr(whole, at, "expected `<t>K1` after `+`")),
        }
    }
    Ok(target.normalized())
}

fn parse_base(whole: &str, token: &str, offset: usize) -> Result<Target, ParseError> {
    let lead = token.len() - token.trim_start().len();
    let tok = token.trim();
    let at = offset + lead;
    if tok.is_empty() {
        return Err(perr(whole, at, "empty target"));
    }
    let digits = tok.bytes().take_while(u8::is_ascii_digit).count();
    if digits > 0 {
        let k = parse_count(whole, &tok[..digits], at)?;
        return if &tok[digits..] == "K1" {
            Ok(Target::Empty(k))
        } else {
            Err(perr(whole, at + digits, "expected `K1` after a count"))
        };
    }
    let (family, rest) = tok.split_at(1);
    if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) {
        return Err(perr(whole, at + 1, "expected a decimal parameter"));
    }
    let k = parse_count(whole, rest, at + 1)?;
    match family {
        "K" => Ok(Target::Clique(k)),
        "S" => Ok(Target::Star(k)),
        "B" => Ok(Target::Book(k)),
        "C" if k == 4 => Ok(Target::Cycle4),
        "C" => Err(perr(whole, at, "unsupported family: only the cycle C4 is available")),
        "P" if k == 3 => Ok(Target::Path3),
        "P" => Err(perr(whole, at, "unsupported family: only the path P3 is available")),
        _ => Err(perr(whole, at, "unknown graph family")),
    }
}

fn parse_count(whole: &str, digits: &str, at: usize) -> Result<u32, ParseError> {
    match digits.parse::<u32>() {
        Ok(0) => Err(perr(whole, at, "parameter must be at least 1")),
        Ok(k) if k as usize > crate::graph::MAX_VERTICES * 1024 => Err(perr(whole, at, "parameter too large")),
        Ok(k) => Ok(k),
        Err(_) => Err(perr(whole, at, "bad number")),
    }
}

fn perr(whole: &str, pos: usize, msg: &str) -> ParseError {
    ParseError::Target { input: whole.to_string(), pos, msg: msg.to_string() }
}

/// Parses a comma-separated target list, keeping the given order.
pub fn parse_targets(text: &str) -> Result<Vec<Target>, ParseError> {
    let mut out = Vec::new();
    let mut start = 0;
    for piece in text.split(',') {
        out.push(parse_target_at(text, piece, start)?);
        start += piece.len() + 1;
    }
    Ok(out)
}

pub fn render_targets(targets: &[Target]) -> String {
    targets.iter().map(Target::to_string).collect::<Vec<_>>().join(",")
}

impl Serialize for Target {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Target {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A target list in canonical order: all `C4` entries first, the rest sorted.
///
/// Ramsey numbers are symmetric in their arguments, so this order is used as
/// the registry key. `m` counts the leading `C4` block and `n` the remainder.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TargetList {
    targets: Vec<Target>,
}

impl TargetList {
    pub fn new(targets: impl IntoIterator<Item = Target>) -> Self {
        let mut targets: Vec<Target> = targets.into_iter().map(|t| t.normalized()).collect();
        targets.sort_by(|a, b| b.is_cycle4().cmp(&a.is_cycle4()).then_with(|| a.cmp(b)));
        TargetList { targets }
    }

    pub fn targets(&self) -> &[Target] {
        &self.targets
    }

    pub fn m(&self) -> usize {
        self.targets.iter().take_while(|t| t.is_cycle4()).count()
    }

    pub fn n(&self) -> usize {
        self.targets.len() - self.m()
    }

    /// The targets after the leading `C4` block.
    pub fn others(&self) -> &[Target] {
        &self.targets[self.m()..]
    }

    pub fn len(&self) -> usize {
        self.targets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.targets.is_empty()
    }

    pub fn key(&self) -> String {
        render_targets(&self.targets)
    }

    /// Largest target order, `max |V(G_i)|` over the non-`C4` entries.
    pub fn max_other_order(&self) -> u64 {
        self.others().iter().map(Target::vertex_count).max().unwrap_or(0)
    }

    /// The list with position `index` replaced by `with`.
    pub fn replace(&self, index: usize, with: Target) -> TargetList {
        let mut v = self.targets.clone();
        v[index] = with;
        TargetList::new(v)
    }

    /// The list with position `index` removed.
    pub fn remove(&self, index: usize) -> TargetList {
        let mut v = self.targets.clone();
        v.remove(index);
        TargetList::new(v)
    }
}

impl fmt::Display for TargetList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.key())
    }
}

impl FromStr for TargetList {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(TargetList::new(parse_targets(s)?))
    }
}

impl Serialize for TargetList {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.key())
    }
}

impl<'de> Deserialize<'de> for TargetList {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Result of rewriting `R(C4, H_1∪K_1, …, H_n∪K_1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnionK1Rewrite {
    /// `(C4, H_1, …, H_n)`.
    pub inner: TargetList,
    /// `max_i |V(H_i)| + 1`.
    pub vertex_floor: u64,
    pub note: String,
}

/// `R(C4, H_1∪K_1, …, H_n∪K_1) = max{R(C4, H_1, …, H_n), |V(H_1)|+1, …, |V(H_n)|+1}`.
pub fn union_k1_normalize(targets: &TargetList) -> Result<UnionK1Rewrite, TargetError> {
    if targets.m() != 1 || targets.n() == 0 {
        return Err(TargetError::Shape(format!(
            "{targets}: need exactly one C4 followed by at least one H∪K1"
        )));
    }
    let mut inner = vec![Target::Cycle4];
    let mut floor = 0;
    for t in targets.others() {
        let h = t
            .strip_isolated()
            .ok_or_else(|| TargetError::Shape(format!("{t} is not of the form H∪K1")))?;
        floor = floor.max(h.vertex_count() + 1);
        inner.push(h);
    }
    let inner = TargetList::new(inner);
    let note = format!("R({targets}) = max{{R({inner}), {floor}}}");
    Ok(UnionK1Rewrite { inner, vertex_floor: floor, note })
}
