//! Lower-bound witnesses: verification and the disjoint-clique extension.

use crate::coloring::{pair_count, pair_index, EdgeColoring, UNASSIGNED};
use crate::error::{GraphError, WitnessError};
use crate::graph::MAX_VERTICES;
use crate::registry::{FactKind, RamseyFact, Trust};
use crate::target::{Target, TargetList};

pub const WITNESS_CITATION: &str = "computed: witness file";

/// Adds a `K_k` on new vertices `N..N+k`.
///
/// Internal edges of the new clique get `c4_color`; every edge between old
/// and new vertices gets `clique_color`. If `targets[clique_color]` is
/// `K_s`, the result is good for the same list with `K_{s+1}` there. The
/// output is verified against the promoted list before it is returned.
///
/// Returns the extended coloring together with the promoted target list.
pub fn extend_with_disjoint_clique(
    witness: &EdgeColoring,
    targets: &[Target],
    k: usize,
    c4_color: usize,
    clique_color: usize,
) -> Result<(EdgeColoring, Vec<Target>), WitnessError> {
    let n = witness.order();
    let c = witness.colors();
    if k < 2 {
        return Err(WitnessError::CliqueSize(k));
    }
    for color in [c4_color, clique_color] {
        if color >= c {
            return Err(GraphError::Color { color, colors: c }.into());
        }
    }
    if targets.len() != c {
        return Err(GraphError::TargetCount { expected: c, got: targets.len() }.into());
    }
    let s = match targets[clique_color].normalized() {
        Target::Clique(s) => s,
        _ => return Err(WitnessError::NotClique(clique_color)),
    };
    let n2 = n + k;
    if n2 > MAX_VERTICES {
        return Err(GraphError::Order(n2).into());
    }
    if let Some((color, vertices)) = witness.first_violation(targets)? {
        return Err(WitnessError::Violation { color, target: targets[color].to_string(), vertices });
    }

    let mut pairs = vec![UNASSIGNED; pair_count(n2)];
    pairs[..pair_count(n)].copy_from_slice(witness.pairs());
    for v in n..n2 {
        for u in 0..v {
            pairs[pair_index(u, v)] = if u >= n { c4_color as u8 } else { clique_color as u8 };
        }
    }
    let out = EdgeColoring::from_pairs(n2, c, pairs)?;

    let mut promoted = targets.to_vec();
    promoted[clique_color] = Target::Clique(s + 1);
    if let Some((color, vertices)) = out.first_violation(&promoted)? {
        return Err(WitnessError::Violation { color, target: promoted[color].to_string(), vertices });
    }
    Ok((out, promoted))
}

/// `R(targets) ≥ N + 1` when the witness is a good coloring of `K_N`;
/// otherwise the first monochromatic forbidden copy.
pub fn verify_lower_bound(witness: &EdgeColoring, targets: &[Target]) -> Result<RamseyFact, WitnessError> {
    if let Some((color, vertices)) = witness.first_violation(targets)? {
        return Err(WitnessError::Violation { color, target: targets[color].to_string(), vertices });
    }
    Ok(RamseyFact::new(
        TargetList::new(targets.to_vec()),
        FactKind::LowerBound,
        witness.order() as u64 + 1,
        WITNESS_CITATION,
        Trust::Computational,
    ))
}
