//! The weighted-degree argument behind the last degree identity.

use tameforge::family::{build_family, verify_graded_analysis};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let inst = build_family(1, 1)?;
    let p = inst.p_poly();
    println!("omega = {}", inst.omega);
    println!("P = {p}");
    println!("P^omega = {}", p.leading_part(&inst.omega)?);
    println!("F(P) has degree {}", inst.f.apply(&p)?.degree());
    println!("{}", verify_graded_analysis(&inst)?);

    let wide = build_family(2, 2)?;
    let cert = verify_graded_analysis(&wide)?;
    println!(
        "(2, 2): {} checks, overall {}",
        cert.checks().len(),
        cert.overall()
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
