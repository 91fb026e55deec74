//! The (p, q) family on the default grid: closed forms and degree identities.

use std::time::Instant;

use tameforge::family::{build_family, verify_closed_forms, verify_theorem, DEFAULT_GRID};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for (p, q) in DEFAULT_GRID {
        let start = Instant::now();
        let inst = build_family(p, q)?;
        let closed = verify_closed_forms(&inst)?;
        let theorem = verify_theorem(&inst)?;
        println!(
            "(p, q) = ({p}, {q}): m = {}, c = {}, deg H = {:?}, deg(c^2 h1^{} + h2^2) = {}, closed forms {}, theorem {} [{:.2?}]",
            inst.params.m,
            inst.params.c,
            inst.h.degrees()?,
            inst.params.s(),
            inst.reduced_difference().degree(),
            if closed.overall() { "ok" } else { "FAIL" },
            if theorem.overall() { "ok" } else { "FAIL" },
            start.elapsed()
        );
    }
    let inst = build_family(1, 1)?;
    println!("{}", verify_theorem(&inst)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
