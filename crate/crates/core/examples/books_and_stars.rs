// Star and book bounds, with and without a known star value.

use std::error::Error;

use c4_ramsey::bounds::{book_bound, isqrt_ceil, parsons_bound, stars_bound};
use c4_ramsey::Registry;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let registry = Registry::seed();
    let star17 = registry.upper(&"C4,S17".parse()?);

    println!("R(C4,S7)  <= {} (ceil sqrt 7 = {})", parsons_bound(7)?, isqrt_ceil(7)?);
    println!("R(C4,S17) <= {} by the star bound", parsons_bound(17)?);
    println!("R(C4,B17) <= {} from R(C4,S17) = 22", book_bound(17, star17)?);
    println!("R(C4,B17) <= {} from the star bound alone", book_bound(17, None)?);
    for m in 1..=3 {
        println!("R(C4 x {m}, S3, S4) <= {}", stars_bound(m, &[3, 4])?);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
