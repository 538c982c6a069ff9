//! Closed-form upper bounds, evaluated in exact 64-bit integer arithmetic.
//!
//! Every `⌈m·√(x)⌉` term is computed as `isqrt_ceil(m²·x)` on an integer
//! radicand. The bounds sit exactly on perfect squares in several cases
//! (`√36`, `√49`), so no floating point is used anywhere here.

use serde::{Deserialize, Serialize};

use crate::error::BoundError;
use crate::registry::{FactKind, RamseyFact};
use crate::target::{Target, TargetList};

const ISQRT_LIMIT: u64 = 1 << 63;

/// `⌊√x⌋` for `x < 2^63`.
pub fn isqrt_floor(x: u64) -> Result<u64, BoundError> {
    if x >= ISQRT_LIMIT {
        return Err(BoundError::Overflow("isqrt argument"));
    }
    Ok(x.isqrt())
}

/// `⌈√x⌉` for `x < 2^63`.
pub fn isqrt_ceil(x: u64) -> Result<u64, BoundError> {
    let f = isqrt_floor(x)?;
    Ok(if f * f == x { f } else { f + 1 })
}

/// Parameters of the main bound: `m` copies of `C4` and one `r_i` per other target.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundQuery {
    pub m: u64,
    pub r: Vec<u64>,
}

impl BoundQuery {
    pub fn new(m: u64, r: Vec<u64>) -> Self {
        BoundQuery { m, r }
    }

    pub fn n(&self) -> u64 {
        self.r.len() as u64
    }

    /// `Σ r_i − n`.
    pub fn excess(&self) -> Result<u64, BoundError> {
        if let Some(i) = self.r.iter().position(|&r| r == 0) {
            return Err(BoundError::Precondition(format!("r_{} must be at least 1", i + 1)));
        }
        let sum = self
            .r
            .iter()
            .try_fold(0u64, |a, &r| a.checked_add(r))
            .ok_or(BoundError::Overflow("sum of r_i"))?;
        Ok(sum - self.n())
    }

    fn require_m(&self) -> Result<(), BoundError> {
        if self.m == 0 {
            Err(BoundError::Precondition("m must be at least 1".into()))
        } else {
            Ok(())
        }
    }

    /// `Σr_i − n` under the main theorem's side condition: for `m = 1` some
    /// `G_i` must differ from `K2`, i.e. some `r_i ≥ 2`.
    fn excess_for_main(&self) -> Result<u64, BoundError> {
        self.require_m()?;
        let s = self.excess()?;
        if self.m == 1 && s == 0 {
            return Err(BoundError::Precondition(
                "m = 1 needs some G_i other than K2 (Σr_i − n ≥ 1)".into(),
            ));
        }
        Ok(s)
    }
}

struct Checked(&'static str);

impl Checked {
    fn add(&self, a: u64, b: u64) -> Result<u64, BoundError> {
        a.checked_add(b).ok_or(BoundError::Overflow(self.0))
    }

    fn mul(&self, a: u64, b: u64) -> Result<u64, BoundError> {
        a.checked_mul(b).ok_or(BoundError::Overflow(self.0))
    }
}

/// `⌈m·√((m+1)²/4 + s)⌉ = ⌈√((m(m+1)/2)² + m²·s)⌉`.
fn main_root(m: u64, s: u64, ck: &Checked) -> Result<u64, BoundError> {
    let tri = ck.mul(m, m + 1)? / 2;
    let radicand = ck.add(ck.mul(tri, tri)?, ck.mul(ck.mul(m, m)?, s)?)?;
    isqrt_ceil(radicand)
}

/// `Σr_i − n + 1 + (m²+m)/2 + ⌈m·√((m+1)²/4 + Σr_i − n)⌉`.
pub fn theorem_mt_bound(q: &BoundQuery) -> Result<u64, BoundError> {
    let ck = Checked("main bound");
    let s = q.excess_for_main()?;
    let tri = ck.mul(q.m, q.m + 1)? / 2;
    let root = main_root(q.m, s, &ck)?;
    ck.add(ck.add(ck.add(s, 1)?, tri)?, root)
}

/// `Σr_i − n + 3 + (m²−m)/2 + ⌊√((m²−m)²/4 + (m−1)²(Σr_i − n + 1))⌋`, the bound on
/// `R(P3, C4 × (m−1), G_1, …, G_n)` from `r_i ≥ R(P3, C4 × (m−1), …, G_i − w_i, …)`.
pub fn lemma2_bound(q: &BoundQuery) -> Result<u64, BoundError> {
    q.require_m()?;
    let ck = Checked("P3 degree bound");
    let s = q.excess()?;
    let tri = ck.mul(q.m, q.m - 1)? / 2;
    let radicand = ck.add(ck.mul(tri, tri)?, ck.mul(ck.mul(q.m - 1, q.m - 1)?, ck.add(s, 1)?)?)?;
    let root = isqrt_floor(radicand)?;
    ck.add(ck.add(ck.add(s, 3)?, tri)?, root)
}

/// `Σr_i − n + (m²+m)/2 + ⌈m·√((m+1)²/4 + Σr_i − n)⌉`, the bound on
/// `R(P3, C4 × (m−1), G_1, …, G_n)` from `r_i ≥ R(C4 × m, …, G_i − w_i, …)`.
/// Always one less than [`theorem_mt_bound`].
pub fn lemma_p3_bound(q: &BoundQuery) -> Result<u64, BoundError> {
    let ck = Checked("P3 bound");
    let s = q.excess_for_main()?;
    let tri = ck.mul(q.m, q.m + 1)? / 2;
    let root = main_root(q.m, s, &ck)?;
    ck.add(ck.add(s, tri)?, root)
}

/// `R(C4, K_{1,k}) ≤ k + ⌈√k⌉ + 1` for `k ≥ 2`.
pub fn parsons_bound(k: u64) -> Result<u64, BoundError> {
    if k < 2 {
        return Err(BoundError::Precondition(format!("star size k = {k} must be at least 2")));
    }
    let ck = Checked("star bound");
    ck.add(ck.add(k, isqrt_ceil(k)?)?, 1)
}

/// `s + ⌈√s⌉ + 1`, where `s` bounds `R(C4, K_{1,k})`.
pub fn book_bound_from_star(s: u64) -> Result<u64, BoundError> {
    if s == 0 {
        return Err(BoundError::Precondition("star bound must be positive".into()));
    }
    let ck = Checked("book bound");
    ck.add(ck.add(s, isqrt_ceil(s)?)?, 1)
}

/// `R(C4, B_k) ≤ s + ⌈√s⌉ + 1` with `s` the registry value for `R(C4, K_{1,k})`
/// when given, and the Parsons bound otherwise.
pub fn book_bound(k: u64, star_fact: Option<&RamseyFact>) -> Result<u64, BoundError> {
    if k < 2 {
        return Err(BoundError::Precondition(format!("book size k = {k} must be at least 2")));
    }
    let s = match star_fact {
        None => parsons_bound(k)?,
        Some(f) => {
            let want = TargetList::new([Target::Cycle4, Target::Star(k as u32)]);
            if f.targets != want {
                return Err(BoundError::Precondition(format!(
                    "star fact is for {}, expected {want}",
                    f.targets
                )));
            }
            if f.kind == FactKind::LowerBound {
                return Err(BoundError::Precondition("star fact must be exact or an upper bound".into()));
            }
            f.value
        }
    };
    book_bound_from_star(s)
}

/// `R(C4 × m, K_{1,k_1}, …, K_{1,k_n}) ≤ 1 + Σk_i − n + (m²+m)/2 + ⌈m·√((m+1)²/4 + Σk_i − n)⌉`.
pub fn stars_bound(m: u64, k: &[u64]) -> Result<u64, BoundError> {
    if m == 0 || k.is_empty() || k.contains(&0) {
        return Err(BoundError::Precondition("need m ≥ 1, n ≥ 1 and every k_i ≥ 1".into()));
    }
    let q = BoundQuery::new(m, k.to_vec());
    let s = q.excess()?;
    if m + s < 2 {
        return Err(BoundError::Precondition("need m + Σk_i ≥ n + 2".into()));
    }
    theorem_mt_bound(&q)
}
