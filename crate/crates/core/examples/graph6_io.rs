// graph6 strings and the coloring text format.

use std::error::Error;

use c4_ramsey::{graph6, EdgeColoring, SimpleGraph};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    for (name, g) in [
        ("E5", SimpleGraph::empty(5)?),
        ("K2", SimpleGraph::complete(2)?),
        ("C5", SimpleGraph::cycle(5)?),
        ("K9", SimpleGraph::complete(9)?),
    ] {
        let s = graph6::encode(&g);
        assert_eq!(graph6::decode(&s)?, g);
        println!("{name}: {s}");
    }
    let big = graph6::decode(&graph6::encode(&SimpleGraph::cycle(100)?))?;
    println!("C100 round trip: {} vertices, {} edges", big.order(), big.edge_count());

    let coloring = EdgeColoring::from_graph(&SimpleGraph::cycle(5)?);
    let text = coloring.to_text();
    assert_eq!(EdgeColoring::parse_text(&text)?, coloring);
    print!("{text}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
