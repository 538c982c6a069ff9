// Small Ramsey numbers computed by exhaustive search.

use std::error::Error;

use c4_ramsey::{parse_targets, ramsey_by_search, search_coloring, SearchBudget};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let budget = SearchBudget::unlimited();
    for (targets, lo, hi) in [("C4,C4", 4, 7), ("P3,P3", 2, 3), ("C4,K3", 5, 7), ("C4,S3", 5, 6), ("C4,K4", 9, 10)] {
        let t = parse_targets(targets)?;
        let scan = ramsey_by_search(&t, lo, hi, &budget)?;
        for (n, out) in &scan.outcomes {
            println!("  ({targets}) N={n}: {} after {} nodes", out.status.name(), out.nodes_explored);
        }
        match scan.ramsey {
            Some(r) => println!("R({targets}) = {r}"),
            None => println!("R({targets}) not settled in {lo}..={hi}"),
        }
    }
    let t = parse_targets("C4,C4")?;
    if let Some(w) = search_coloring(5, &t, &budget, None)?.status.witness() {
        println!("a (C4,C4)-coloring of K5:\n{}", w.to_text());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
