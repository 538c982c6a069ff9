// Upper bounds for the seven concrete multicolor cases, derived from the
// bundled registry and replayed.

use std::error::Error;

use c4_ramsey::{derive, Registry, TargetList};

pub const ROWS: [(&str, &str); 7] = [
    ("#1", "C4,K11"),
    ("#2", "C4,K12"),
    ("#3", "C4,K3,K4"),
    ("#4", "C4,K4,K4"),
    ("#5", "C4,K3,K3,K3"),
    ("#6", "C4,C4,K3,K4"),
    ("#7", "C4,C4,K4,K4"),
];

pub fn run_example() -> Result<Vec<u64>, Box<dyn Error>> {
    let registry = Registry::seed();
    let mut values = Vec::new();
    for (row, targets) in ROWS {
        let list: TargetList = targets.parse()?;
        let tree = derive(&list, &registry)?;
        tree.replay(Some(&registry))?;
        let lower = registry.lower(&list).map(|f| f.value);
        println!("{row} R({list}) <= {}  (lower {})", tree.value(), lower.map_or("-".into(), |v| v.to_string()));
        print!("{}", tree.render_text());
        values.push(tree.value());
    }
    Ok(values)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example().map(|_| ())
}
