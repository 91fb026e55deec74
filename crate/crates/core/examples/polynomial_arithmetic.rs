//! Parsing, exact arithmetic, substitution and gradings.

use tameforge::polyring::{parse_laurent, parse_poly, ratio, WeightVector};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let g1 = parse_poly("x1 - x3^2", 3)?;
    let g2 = parse_poly("x2 - 4*x1*x3 + 8/3*x3^3", 3)?;
    println!("g1 = {g1}");
    println!("g2 = {g2}");

    let p = g1.pow(3)?.scale(&ratio(-64, 9)) - g2.pow(2)?;
    println!("P = -64/9 g1^3 - g2^2 = {p}");
    println!("deg P = {}", p.total_degree()?);

    // Substitution x_i -> F(x_i).
    let f = [
        parse_poly("x1 + x2^2", 3)?,
        parse_poly("x2", 3)?,
        parse_poly("x3 + 2*x1*x2 + x2^3", 3)?,
    ];
    let fg1 = g1.substitute(&f)?;
    println!("F(g1) = {fg1}, degree {}", fg1.degree());

    let d = p.partial_derivative(2)?;
    println!("dP/dx3 = {d}");

    let omega = WeightVector::from_integers(&[2, 1, 3]);
    println!("deg_omega P = {}", p.weighted_degree(&omega)?.render());
    println!("P^omega = {}", p.leading_part(&omega)?);
    println!(
        "highest homogeneous part = {}",
        p.highest_homogeneous_part()?
    );

    let l = parse_laurent("x1^-1*x3 + 2", 3)?;
    println!(
        "Laurent {l}: deg_omega = {}",
        l.weighted_degree(&omega)?.render()
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
