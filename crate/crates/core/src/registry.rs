//! Provenance-carrying store of known Ramsey values and bounds.
//!
//! File format, one fact per line, `#` starts a comment:
//!
//! ```text
//! targets | kind | value | citation | trust
//! C4,K10  | exact | 36   | [LaLR]   | published
//! ```

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{ParseError, RegistryError};
use crate::target::TargetList;

const SEED: &str = include_str!("../data/seeds.txt");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FactKind {
    Exact,
    #[serde(rename = "upper")]
    UpperBound,
    #[serde(rename = "lower")]
    LowerBound,
}

impl FactKind {
    pub fn bounds_above(self) -> bool {
        matches!(self, FactKind::Exact | FactKind::UpperBound)
    }

    pub fn bounds_below(self) -> bool {
        matches!(self, FactKind::Exact | FactKind::LowerBound)
    }
}

impl fmt::Display for FactKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FactKind::Exact => "exact",
            FactKind::UpperBound => "upper",
            FactKind::LowerBound => "lower",
        })
    }
}

impl FromStr for FactKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exact" | "=" => Ok(FactKind::Exact),
            "upper" | "<=" => Ok(FactKind::UpperBound),
            "lower" | ">=" => Ok(FactKind::LowerBound),
            _ => Err(format!("unknown fact kind {s:?} (expected exact, upper or lower)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Trust {
    Published,
    Computational,
    Derived,
    User,
}

impl fmt::Display for Trust {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Trust::Published => "published",
            Trust::Computational => "computational",
            Trust::Derived => "derived",
            Trust::User => "user",
        })
    }
}

impl FromStr for Trust {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "published" => Ok(Trust::Published),
            "computational" => Ok(Trust::Computational),
            "derived" => Ok(Trust::Derived),
            "user" => Ok(Trust::User),
            _ => Err(format!("unknown trust tag {s:?}")),
        }
    }
}

/// `R(targets) = value`, `≤ value` or `≥ value`, with where it came from.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RamseyFact {
    pub targets: TargetList,
    pub kind: FactKind,
    pub value: u64,
    pub citation: String,
    pub trust: Trust,
}

impl RamseyFact {
    pub fn new(targets: TargetList, kind: FactKind, value: u64, citation: impl Into<String>, trust: Trust) -> Self {
        RamseyFact { targets, kind, value, citation: citation.into(), trust }
    }

    pub fn to_line(&self) -> String {
        format!("{} | {} | {} | {} | {}", self.targets, self.kind, self.value, self.citation, self.trust)
    }

    pub fn parse_line(line: &str, line_no: usize) -> Result<RamseyFact, ParseError> {
        let err = |msg: String| ParseError::Registry { line: line_no, msg };
        let fields: Vec<&str> = line.split('|').map(str::trim).collect();
        if fields.len() != 5 {
            return Err(err(format!("expected 5 `|`-separated fields, found {}", fields.len())));
        }
        let targets: TargetList = fields[0].parse().map_err(|e: ParseError| err(e.to_string()))?;
        let kind = fields[1].parse().map_err(err)?;
        let value = fields[2].parse().map_err(|_| err(format!("bad value {:?}", fields[2])))?;
        let trust = fields[4].parse().map_err(err)?;
        Ok(RamseyFact::new(targets, kind, value, fields[3], trust))
    }
}

impl fmt::Display for RamseyFact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel = match self.kind {
            FactKind::Exact => "=",
            FactKind::UpperBound => "≤",
            FactKind::LowerBound => "≥",
        };
        write!(f, "R({}) {rel} {}", self.targets, self.value)
    }
}

/// Facts keyed by canonical target list. Contradictory additions are refused.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Registry {
    facts: BTreeMap<TargetList, Vec<RamseyFact>>,
}

impl Registry {
    pub fn new() -> Self {
        Self::default()
    }

    /// The bundled facts quoted alongside the bound tables.
    pub fn seed() -> Self {
        Self::parse(SEED).expect("bundled seed registry is valid")
    }

    pub fn seed_text() -> &'static str {
        SEED
    }

    pub fn parse(text: &str) -> Result<Self, RegistryError> {
        let mut reg = Registry::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            reg.add(RamseyFact::parse_line(line, i + 1)?)?;
        }
        Ok(reg)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, RegistryError> {
        let text = std::fs::read_to_string(path.as_ref())
            .map_err(|e| RegistryError::Io(format!("{}: {e}", path.as_ref().display())))?;
        Self::parse(&text)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<(), RegistryError> {
        std::fs::write(path.as_ref(), self.to_text())
            .map_err(|e| RegistryError::Io(format!("{}: {e}", path.as_ref().display())))
    }

    pub fn to_text(&self) -> String {
        let mut s = String::from("# targets | kind | value | citation | trust\n");
        for f in self.iter() {
            s.push_str(&f.to_line());
            s.push('\n');
        }
        s
    }

    pub fn add(&mut self, fact: RamseyFact) -> Result<(), RegistryError> {
        if fact.value == 0 {
            return Err(RegistryError::ZeroValue);
        }
        let existing = self.facts.get(&fact.targets).map(Vec::as_slice).unwrap_or(&[]);
        if existing.contains(&fact) {
            return Ok(());
        }
        let lower = existing
            .iter()
            .chain(std::iter::once(&fact))
            .filter(|f| f.kind.bounds_below())
            .map(|f| f.value)
            .max();
        let upper = existing
            .iter()
            .chain(std::iter::once(&fact))
            .filter(|f| f.kind.bounds_above())
            .map(|f| f.value)
            .min();
        if let (Some(lower), Some(upper)) = (lower, upper) {
            if lower > upper {
                return Err(RegistryError::Contradiction { key: fact.targets.key(), lower, upper });
            }
        }
        self.facts.entry(fact.targets.clone()).or_default().push(fact);
        Ok(())
    }

    /// Strongest upper bound on record (smallest value among exact and upper facts).
    pub fn upper(&self, targets: &TargetList) -> Option<&RamseyFact> {
        self.facts
            .get(targets)?
            .iter()
            .filter(|f| f.kind.bounds_above())
            .min_by_key(|f| (f.value, f.kind != FactKind::Exact))
    }

    /// Strongest lower bound on record.
    pub fn lower(&self, targets: &TargetList) -> Option<&RamseyFact> {
        self.facts
            .get(targets)?
            .iter()
            .filter(|f| f.kind.bounds_below())
            .max_by_key(|f| (f.value, f.kind == FactKind::Exact))
    }

    /// The value when the recorded bounds meet.
    pub fn exact(&self, targets: &TargetList) -> Option<u64> {
        match (self.lower(targets), self.upper(targets)) {
            (Some(l), Some(u)) if l.value == u.value => Some(u.value),
            _ => None,
        }
    }

    pub fn facts_for(&self, targets: &TargetList) -> &[RamseyFact] {
        self.facts.get(targets).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn iter(&self) -> impl Iterator<Item = &RamseyFact> {
        self.facts.values().flatten()
    }

    pub fn len(&self) -> usize {
        self.facts.values().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.facts.is_empty()
    }
}
