//! Composition, generator words, inverses, Jacobians and bracket degrees.

use tameforge::automorphism::{bracket_degree, make_affine, make_elementary};
use tameforge::polyring::{parse_poly, rat};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let poly = |s: &str| parse_poly(s, 3);
    let e1 = make_elementary(0, poly("x2^2 + x3")?)?;
    let e2 = make_elementary(2, poly("-x1*x2")?)?;
    let swap = make_affine(
        vec![
            vec![rat(0), rat(1), rat(0)],
            vec![rat(1), rat(0), rat(0)],
            vec![rat(0), rat(0), rat(1)],
        ],
        vec![rat(1), rat(0), rat(0)],
    )?;

    let map = e1.compose(&e2)?.compose(&swap)?;
    for (i, img) in map.images().iter().enumerate() {
        println!("x{} -> {img}", i + 1);
    }
    println!(
        "deg = {}, word length = {}",
        map.map_degree()?,
        map.word().map_or(0, |w| w.len())
    );
    println!("Jacobian determinant = {}", map.jacobian_determinant()?);

    let inverse = map.invert()?;
    println!(
        "inverse composes to identity: {}",
        map.compose(&inverse)?.is_identity()
    );

    let f = poly("x1^2")?;
    let g = poly("x1^3 + x2")?;
    println!("deg[x1^2, x1^3 + x2] = {}", bracket_degree(&f, &g)?);
    println!("deg[x1^2, x1^4] = {}", bracket_degree(&f, &f.pow(2)?)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
