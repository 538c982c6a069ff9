// Merging the two triangle-free classes of a (C4,K3,K3)-coloring.
//
// Two triangle-free classes together cannot hold a K6, so the merged
// coloring is good for (C4,K6).

use std::error::Error;

use c4_ramsey::{merge_colors, parse_targets, search_coloring, verify_lower_bound, SearchBudget};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let targets = parse_targets("C4,K3,K3")?;
    let out = search_coloring(12, &targets, &SearchBudget::unlimited(), None)?;
    let w = out.status.witness().ok_or("no (C4,K3,K3)-coloring of K12 found")?;
    println!("{}", verify_lower_bound(w, &targets)?);

    let merged = merge_colors(w, 1, 2)?;
    println!("merged class sizes {:?}", merged.class_sizes());
    println!("{}", verify_lower_bound(&merged, &parse_targets("C4,K6")?)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
