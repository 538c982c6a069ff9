// From a searched (C4,K3)-coloring of K6 to a certified bound R(C4,K4) >= 10.

use std::error::Error;

use c4_ramsey::{extend_with_disjoint_clique, parse_targets, search_coloring, verify_lower_bound, SearchBudget};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let targets = parse_targets("C4,K3")?;
    let out = search_coloring(6, &targets, &SearchBudget::unlimited(), None)?;
    let base = out.status.witness().ok_or("no (C4,K3)-coloring of K6 found")?;
    println!("{}", verify_lower_bound(base, &targets)?);

    for k in [2, 3] {
        let (ext, promoted) = extend_with_disjoint_clique(base, &targets, k, 0, 1)?;
        let fact = verify_lower_bound(&ext, &promoted)?;
        println!("plus a disjoint K{k}: {fact}  [{}]", fact.citation);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
