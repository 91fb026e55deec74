//! Building H' with the reduction lemma and certifying its type-I reduction.

use tameforge::automorphism::PolyMap;
use tameforge::family::{build_family, corollary_from_instance};
use tameforge::polyring::{parse_poly, Degree};
use tameforge::sureduction::{homogeneous_membership, phi_degree_lower_bound, prefilter_type_one};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let inst = build_family(1, 2)?;
    let (reduced, witness, cert) = corollary_from_instance(&inst)?;
    println!(
        "deg H = {:?}, deg H' = {:?}",
        inst.h.degrees()?,
        reduced.degrees()?
    );
    println!(
        "witness: order {:?}, s = {}, alpha = {}, phi(T1, T2) = {}",
        witness.perm, witness.s, witness.alpha, witness.phi_expr
    );
    println!("prefilter: {:?}", prefilter_type_one(&reduced)?);
    println!(
        "word length of H' = {}",
        reduced.word().map_or(0, |w| w.len())
    );
    for c in cert
        .checks()
        .iter()
        .filter(|c| c.name.starts_with("type I"))
    {
        println!("  {} -> {}", c.name, if c.pass { "pass" } else { "FAIL" });
    }
    println!("overall: {}", cert.overall());

    let h = parse_poly("x3^2", 3)?;
    let a = parse_poly("x1", 3)?;
    let b = parse_poly("x2*x3", 3)?;
    println!(
        "x3^2 in Q[x1, x2 x3]: {:?}",
        homogeneous_membership(&h, &a, &b)?
    );
    let sq = parse_poly("x1^2 + 2*x2*x3", 3)?;
    println!(
        "x1^2 + 2 x2 x3 in Q[x1, x2 x3]: {:?}",
        homogeneous_membership(&sq, &a, &b)?.is_some()
    );

    println!(
        "identity prefilter: {:?}",
        prefilter_type_one(&PolyMap::identity(3))?
    );
    for l in 1..=3 {
        let bound = phi_degree_lower_bound(2 * l, 3 * l, Degree::Finite(2), 3, 1)?;
        println!(
            "deg phi >= {bound} for (2l, 3l) = ({}, {}), bracket degree 2, u = 3",
            2 * l,
            3 * l
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
