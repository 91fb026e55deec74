//! Triangular derivations, exponential maps, slices and leading derivations.

use tameforge::derivation::Derivation;
use tameforge::polyring::{parse_poly, WeightVector};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let poly = |s: &str| parse_poly(s, 3);
    let d = Derivation::new(vec![poly("x2^2")?, poly("0")?, poly("2*x1*x2")?])?;
    let e = Derivation::new(vec![poly("2*x3")?, poly("4*x1")?, poly("1")?])?;

    println!("D triangular order: {:?}", d.triangular_permutation());
    println!("E triangular order: {:?}", e.triangular_permutation());

    let f = d.exp_map(None)?;
    for (i, img) in f.images().iter().enumerate() {
        println!("exp D: x{} -> {img}", i + 1);
    }
    println!(
        "exp D has a generator word of {} steps",
        f.word().map_or(0, |w| w.len())
    );

    let slice = e.slice_polynomials(None)?;
    for (i, g) in slice.iter().enumerate() {
        println!(
            "slice of E: g{} = {g}, E(g{}) = {}",
            i + 1,
            i + 1,
            e.apply(g)?
        );
    }

    let invariant = poly("x1^2 - x2*x3")?;
    println!("D(x1^2 - x2 x3) = {}", d.apply(&invariant)?);

    let omega = WeightVector::from_integers(&[2, 1, 3]);
    let (lead, degree) = e.leading_derivation(&omega)?;
    println!(
        "E^omega = {:?} of degree {degree}",
        lead.images().iter().map(|p| p.render()).collect::<Vec<_>>()
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
