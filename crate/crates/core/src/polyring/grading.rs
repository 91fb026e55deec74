//! Weighted gradings: `deg_eta`, leading parts `f^eta`, and the degree type.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Add;

use num_rational::BigRational;
use num_traits::One;

use super::{rat, ExponentVector, PolyError, Polynomial, Result};

/// A degree value; the zero polynomial has degree `MinusInfinity`, which
/// orders below every finite value.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree<T> {
    MinusInfinity,
    Finite(T),
}

impl<T> Degree<T> {
    pub fn finite(&self) -> Option<&T> {
        match self {
            Degree::Finite(v) => Some(v),
            Degree::MinusInfinity => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Degree::Finite(_))
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Degree<U> {
        match self {
            Degree::Finite(v) => Degree::Finite(f(v)),
            Degree::MinusInfinity => Degree::MinusInfinity,
        }
    }
}

impl<T: Add<Output = T>> Add for Degree<T> {
    type Output = Degree<T>;
    fn add(self, rhs: Self) -> Self {
        match (self, rhs) {
            (Degree::Finite(a), Degree::Finite(b)) => Degree::Finite(a + b),
            _ => Degree::MinusInfinity,
        }
    }
}

impl<T: fmt::Display> fmt::Display for Degree<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::Finite(v) => v.fmt(f),
            Degree::MinusInfinity => f.write_str("-inf"),
        }
    }
}

impl Degree<BigRational> {
    pub fn render(&self) -> String {
        match self {
            Degree::Finite(v) => super::format_rational(v),
            Degree::MinusInfinity => "-inf".to_string(),
        }
    }
}

/// Weight vector `eta` with rational entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightVector(Vec<BigRational>);

impl WeightVector {
    pub fn new(entries: Vec<BigRational>) -> Self {
        WeightVector(entries)
    }

    pub fn from_integers(entries: &[i64]) -> Self {
        WeightVector(entries.iter().map(|&w| rat(w)).collect())
    }

    /// `(1, ..., 1)`, the weight of ordinary total degree.
    pub fn uniform(nvars: usize) -> Self {
        WeightVector(vec![BigRational::one(); nvars])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.0
    }

    /// Inner product `a . eta`.
    pub fn dot(&self, e: &ExponentVector) -> BigRational {
        self.0
            .iter()
            .zip(e.entries())
            .map(|(w, &a)| w * rat(a as i64))
            .sum()
    }

    fn check(&self, nvars: usize) -> Result<()> {
        if self.0.len() != nvars {
            return Err(PolyError::WeightLength {
                expected: nvars,
                got: self.0.len(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<_> = self.0.iter().map(super::format_rational).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl Polynomial {
    /// `deg_eta f`: the maximum of `a . eta` over the support.
    pub fn weighted_degree(&self, eta: &WeightVector) -> Result<Degree<BigRational>> {
        eta.check(self.nvars)?;
        Ok(self
            .terms
            .keys()
            .map(|e| eta.dot(e))
            .max()
            .map_or(Degree::MinusInfinity, Degree::Finite))
    }

    /// `f^eta`: the sum of the terms whose weight attains `deg_eta f`.
    pub fn leading_part(&self, eta: &WeightVector) -> Result<Polynomial> {
        eta.check(self.nvars)?;
        let top = match self.weighted_degree(eta)? {
            Degree::Finite(d) => d,
            Degree::MinusInfinity => return Err(PolyError::ZeroPolynomial("leading_part")),
        };
        let terms: BTreeMap<_, _> = self
            .terms
            .iter()
            .filter(|(e, _)| eta.dot(e) == top)
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect();
        Ok(Polynomial::from_map(self.nvars, self.laurent, terms))
    }
}

#[cfg(test)]
mod tests {
    use super::super::{parse_laurent, parse_poly, ratio};
    use super::*;

    fn omega11() -> WeightVector {
        WeightVector::from_integers(&[2, 1, 3])
    }

    #[test]
    fn weighted_degree_examples() {
        let g1 = parse_poly("x1 - x3^2", 3).unwrap();
        assert_eq!(
            g1.weighted_degree(&omega11()).unwrap(),
            Degree::Finite(rat(6))
        );
        let inv = parse_laurent("x3^-1", 3).unwrap();
        assert_eq!(
            inv.weighted_degree(&omega11()).unwrap(),
            Degree::Finite(rat(-3))
        );
        let one = Polynomial::one(3);
        let eta = WeightVector::new(vec![ratio(1, 2), rat(-7), rat(5)]);
        assert_eq!(one.weighted_degree(&eta).unwrap(), Degree::Finite(rat(0)));
        assert_eq!(
            Polynomial::zero(3).weighted_degree(&eta).unwrap(),
            Degree::MinusInfinity
        );
    }

    #[test]
    fn weight_length_is_checked() {
        let f = parse_poly("x1", 3).unwrap();
        assert_eq!(
            f.weighted_degree(&WeightVector::uniform(2)),
            Err(PolyError::WeightLength {
                expected: 3,
                got: 2
            })
        );
    }

    #[test]
    fn leading_part_examples() {
        let g1 = parse_poly("x1 - x3^2", 3).unwrap();
        assert_eq!(
            g1.leading_part(&omega11()).unwrap(),
            parse_poly("-x3^2", 3).unwrap()
        );
        let g2 = parse_poly("x2 - 4*x1*x3 + 8/3*x3^3", 3).unwrap();
        assert_eq!(
            g2.leading_part(&omega11()).unwrap(),
            parse_poly("8/3*x3^3", 3).unwrap()
        );
        let mono = parse_poly("-5/2*x1^3*x3", 3).unwrap();
        for eta in [
            omega11(),
            WeightVector::uniform(3),
            WeightVector::from_integers(&[-1, 0, 4]),
        ] {
            assert_eq!(mono.leading_part(&eta).unwrap(), mono);
        }
        assert_eq!(
            Polynomial::zero(3).leading_part(&omega11()),
            Err(PolyError::ZeroPolynomial("leading_part"))
        );
    }

    #[test]
    fn degree_ordering_and_addition() {
        assert!(Degree::MinusInfinity < Degree::Finite(rat(-1000)));
        assert_eq!(Degree::Finite(2) + Degree::Finite(3), Degree::Finite(5));
        assert_eq!(
            Degree::Finite(2) + Degree::MinusInfinity,
            Degree::MinusInfinity
        );
    }
}
