// The command-line front end driven in-process.

use std::error::Error;

use c4_ramsey::cli::run;

pub const RECIPES: [&[&str]; 6] = [
    &["derive", "C4,C4,K4,K4"],
    &["bound", "--mt", "--m", "1", "--n", "1", "--r", "36"],
    &["bound", "--book", "--k", "17"],
    &["search", "--n", "6", "--targets", "C4,C4", "--exhaustive"],
    &["search", "--range", "5..7", "--targets", "C4,K3", "--exhaustive"],
    &["partition-check", "--graph6", "H??????", "--targets", "K3,K4"],
];

pub fn run_example() -> Result<(), Box<dyn Error>> {
    for recipe in RECIPES {
        println!("$ c4-ramsey {}", recipe.join(" "));
        let args = std::iter::once("c4-ramsey").chain(recipe.iter().copied());
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(args, &mut out, &mut err);
        print!("{}{}", String::from_utf8(out)?, String::from_utf8(err)?);
        if code != 0 {
            return Err(format!("exit code {code}").into());
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
