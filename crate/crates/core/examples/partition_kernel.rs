// Splitting the non-edges of a C4-free graph into a K3-free and a K4-free class.

use std::error::Error;

use c4_ramsey::{graph6, partition_check, SearchBudget, SimpleGraph, Target};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let budget = SearchBudget::unlimited();
    let (k3, k4) = (Target::Clique(3), Target::Clique(4));
    let cases = [
        ("empty graph on 9 vertices", SimpleGraph::empty(9)?),
        ("empty graph on 8 vertices", SimpleGraph::empty(8)?),
        ("5-cycle", SimpleGraph::cycle(5)?),
        ("Petersen graph", graph6::decode("IheA@GUAo")?),
    ];
    for (name, g) in cases {
        let out = partition_check(&g, (&k3, &k4), &budget)?;
        println!("{name} ({}): {} after {} nodes", graph6::encode(&g), out.status.name(), out.nodes_explored);
        if let Some(w) = out.status.witness() {
            println!("  class sizes {:?}", w.class_sizes());
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
