//! The Nagata map and the Kawanoue pair.

use tameforge::family::{kawanoue_pair, nagata, nagata_certificate};
use tameforge::sureduction::prefilter_type_one;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let (n, n_inv) = nagata()?;
    for (i, img) in n.images().iter().enumerate() {
        println!("N: x{} -> {img}", i + 1);
    }
    println!(
        "deg N = {}, tame word known: {}",
        n.map_degree()?,
        n.is_tame()
    );
    println!("N o N^-1 = id: {}", n.compose(&n_inv)?.is_identity());
    println!("type-I candidates: {:?}", prefilter_type_one(&n)?);
    println!("{}", nagata_certificate()?);

    for l in 1..=2 {
        for m in 1..=2 {
            let (f, g, cert) = kawanoue_pair(l, m)?;
            let sum = &f.pow(3)? + &g.pow(2)?;
            println!(
                "(l, m) = ({l}, {m}): deg f = {}, deg g = {}, deg(f^3 + g^2) = {}, checks {}",
                f.degree(),
                g.degree(),
                sum.degree(),
                if cert.overall() { "pass" } else { "FAIL" }
            );
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
