// The main bound and its P3 variants on a few inputs.

use std::error::Error;

use c4_ramsey::bounds::{isqrt_ceil, isqrt_floor, lemma2_bound, lemma_p3_bound, theorem_mt_bound, BoundQuery};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    println!("{:>3} {:>12} {:>8} {:>8} {:>8}", "m", "r", "main", "p3", "lemma2");
    for (m, r) in [(1, vec![36]), (1, vec![30, 30]), (2, vec![21, 29]), (3, vec![10]), (5, vec![100, 200])] {
        let q = BoundQuery::new(m, r.clone());
        println!(
            "{m:>3} {:>12} {:>8} {:>8} {:>8}",
            format!("{r:?}"),
            theorem_mt_bound(&q)?,
            lemma_p3_bound(&q)?,
            lemma2_bound(&q)?
        );
    }
    for m in [2, 3, 10, 1000] {
        let v = theorem_mt_bound(&BoundQuery::new(m, vec![]))?;
        println!("m = {m}, no other targets: {v} = m^2 + m + 1");
    }
    let big = u64::MAX >> 2;
    println!("isqrt_floor({big}) = {}, isqrt_ceil = {}", isqrt_floor(big)?, isqrt_ceil(big)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
