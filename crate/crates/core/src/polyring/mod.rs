//! Exact sparse multivariate polynomials over the rationals.
//!
//! A [`Polynomial`] is a canonical map from exponent vectors to nonzero
//! [`BigRational`] coefficients. Negative exponents are only admitted when
//! the value is flagged as Laurent; substitution, differentiation and total
//! degree refuse such values.

mod grading;
mod linear;
mod text;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use smallvec::SmallVec;
use thiserror::Error;

pub use grading::{Degree, WeightVector};
pub use linear::solve_linear;
pub use text::{parse_laurent, parse_poly};

/// Environment variable capping the number of terms of any intermediate product.
pub const MAX_TERMS_ENV: &str = "TAMEFORGE_MAX_TERMS";
const DEFAULT_MAX_TERMS: usize = 10_000_000;

/// Term cap for intermediate results, read once from [`MAX_TERMS_ENV`].
pub fn max_terms() -> usize {
    static CAP: OnceLock<usize> = OnceLock::new();
    *CAP.get_or_init(|| {
        std::env::var(MAX_TERMS_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .filter(|&n: &usize| n > 0)
            .unwrap_or(DEFAULT_MAX_TERMS)
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("variable count mismatch: {left} vs {right}")]
    NvarsMismatch { left: usize, right: usize },
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("exponent overflow at byte {pos}")]
    ExponentOverflow { pos: usize },
    #[error("variable x{index} out of range for {nvars} variables (byte {pos})")]
    VariableOutOfRange {
        index: usize,
        nvars: usize,
        pos: usize,
    },
    #[error("{0} does not accept Laurent polynomials")]
    LaurentInput(&'static str),
    #[error("negative exponent in a non-Laurent polynomial")]
    NegativeExponent,
    #[error("{0} is undefined for the zero polynomial")]
    ZeroPolynomial(&'static str),
    #[error("intermediate result exceeds {limit} terms (set {MAX_TERMS_ENV} to raise the cap)")]
    TermLimit { limit: usize },
    #[error("weight vector has length {got}, expected {expected}")]
    WeightLength { expected: usize, got: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("variable index {index} out of range for {nvars} variables")]
    IndexOutOfRange { index: usize, nvars: usize },
}

pub type Result<T, E = PolyError> = std::result::Result<T, E>;

/// Exponent vector `x^a = x1^a1 * ... * xn^an`.
///
/// Ordered graded-lexicographically with `x1 > x2 > ... > xn`: first by
/// coordinate sum, then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExponentVector(SmallVec<[i32; 4]>);

impl ExponentVector {
    pub fn new(entries: &[i32]) -> Self {
        ExponentVector(SmallVec::from_slice(entries))
    }

    pub fn zero(nvars: usize) -> Self {
        ExponentVector(SmallVec::from_elem(0, nvars))
    }

    /// The exponent vector of the single variable `x_{index+1}`.
    pub fn unit(nvars: usize, index: usize) -> Self {
        let mut e = Self::zero(nvars);
        e.0[index] = 1;
        e
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[i32] {
        &self.0
    }

    pub fn get(&self, i: usize) -> i32 {
        self.0[i]
    }

    pub fn total(&self) -> i64 {
        self.0.iter().map(|&a| a as i64).sum()
    }

    pub fn has_negative(&self) -> bool {
        self.0.iter().any(|&a| a < 0)
    }

    fn plus(&self, other: &Self) -> Self {
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for ExponentVector {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.total()
            .cmp(&other.total())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for ExponentVector {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Vec<i32>> for ExponentVector {
    fn from(v: Vec<i32>) -> Self {
        ExponentVector(SmallVec::from_vec(v))
    }
}

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Shorthand for `num/den`.
pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Renders a rational as `num` or `num/den`.
pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Sparse polynomial (or Laurent polynomial) in `nvars` variables over Q.
#[derive(Clone, Debug)]
pub struct Polynomial {
    nvars: usize,
    laurent: bool,
    terms: BTreeMap<ExponentVector, BigRational>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            laurent: false,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigRational::one())
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(ExponentVector::zero(nvars), c);
        }
        p
    }

    /// The variable `x_{index+1}` (indices are zero-based).
    pub fn var(nvars: usize, index: usize) -> Self {
        assert!(index < nvars, "variable index {index} out of range");
        Self::monomial(ExponentVector::unit(nvars, index), BigRational::one())
    }

    /// A single term. Negative exponents make the result Laurent.
    pub fn monomial(exponents: ExponentVector, coeff: BigRational) -> Self {
        let mut p = Self::zero(exponents.len());
        p.laurent = exponents.has_negative();
        if !coeff.is_zero() {
            p.terms.insert(exponents, coeff);
        }
        p
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, merging
    /// repeated exponents and dropping zeros.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (ExponentVector, BigRational)>,
    {
        Self::collect_terms(nvars, false, terms)
    }

    /// Like [`Polynomial::from_terms`] but accepts negative exponents.
    pub fn from_laurent_terms<I>(nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (ExponentVector, BigRational)>,
    {
        Self::collect_terms(nvars, true, terms)
    }

    fn collect_terms<I>(nvars: usize, laurent: bool, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (ExponentVector, BigRational)>,
    {
        let mut map: BTreeMap<ExponentVector, BigRational> = BTreeMap::new();
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(PolyError::NvarsMismatch {
                    left: nvars,
                    right: e.len(),
                });
            }
            if !laurent && e.has_negative() {
                return Err(PolyError::NegativeExponent);
            }
            *map.entry(e).or_insert_with(BigRational::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        Ok(Polynomial {
            nvars,
            laurent,
            terms: map,
        })
    }

    fn from_map(nvars: usize, laurent: bool, terms: BTreeMap<ExponentVector, BigRational>) -> Self {
        debug_assert!(terms.values().all(|c| !c.is_zero()));
        Polynomial {
            nvars,
            laurent,
            terms,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_laurent(&self) -> bool {
        self.laurent
    }

    /// The same value flagged as a Laurent polynomial.
    pub fn into_laurent(mut self) -> Self {
        self.laurent = true;
        self
    }

    /// Clears the Laurent flag if no exponent is negative.
    pub fn into_ordinary(mut self) -> Result<Self> {
        if self.terms.keys().any(ExponentVector::has_negative) {
            return Err(PolyError::NegativeExponent);
        }
        self.laurent = false;
        Ok(self)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.0.iter().all(|&a| a == 0))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending graded-lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &BigRational)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, e: &ExponentVector) -> BigRational {
        self.terms.get(e).cloned().unwrap_or_else(BigRational::zero)
    }

    /// The support `{a : c_a != 0}`.
    pub fn support(&self) -> BTreeSet<ExponentVector> {
        self.terms.keys().cloned().collect()
    }

    /// Whether `x_{index+1}` occurs in some term.
    pub fn involves(&self, index: usize) -> bool {
        self.terms.keys().any(|e| e.get(index) != 0)
    }

    /// Whether every variable occurring in the support is listed in `allowed`.
    pub fn only_involves(&self, allowed: &[usize]) -> bool {
        (0..self.nvars).all(|i| allowed.contains(&i) || !self.involves(i))
    }

    /// Maximum exponent of `x_{index+1}` over the support (0 for the zero polynomial).
    pub fn degree_in(&self, index: usize) -> i32 {
        self.terms.keys().map(|e| e.get(index)).max().unwrap_or(0)
    }

    fn check_nvars(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(PolyError::NvarsMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_nvars(other)?;
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            add_term(&mut terms, e, c);
        }
        Ok(Self::from_map(
            self.nvars,
            self.laurent || other.laurent,
            terms,
        ))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_nvars(other)?;
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            add_term(&mut terms, e, &-c);
        }
        Ok(Self::from_map(
            self.nvars,
            self.laurent || other.laurent,
            terms,
        ))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_nvars(other)?;
        let laurent = self.laurent || other.laurent;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.nvars));
        }
        let limit = max_terms();
        let (small, large) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc: HashMap<ExponentVector, BigRational> =
            HashMap::with_capacity(large.terms.len().saturating_mul(2));
        for (ea, ca) in &small.terms {
            for (eb, cb) in &large.terms {
                let e = ea.plus(eb);
                let c = ca * cb;
                match acc.get_mut(&e) {
                    Some(slot) => *slot += c,
                    None => {
                        acc.insert(e, c);
                    }
                }
            }
            if acc.len() > limit {
                return Err(PolyError::TermLimit { limit });
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(Self::from_map(self.nvars, laurent, terms))
    }

    /// Multiplies every coefficient by `k`.
    pub fn scale(&self, k: &BigRational) -> Self {
        if k.is_zero() {
            return Self::zero(self.nvars);
        }
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect();
        Self::from_map(self.nvars, self.laurent, terms)
    }

    /// `self^e` by repeated squaring; `f^0 = 1`.
    pub fn pow(&self, mut e: u32) -> Result<Self> {
        let mut result = Self::one(self.nvars);
        result.laurent = self.laurent;
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.try_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.try_mul(&base)?;
            }
        }
        Ok(result)
    }

    /// Exact partial derivative with respect to `x_{index+1}`.
    pub fn partial_derivative(&self, index: usize) -> Result<Self> {
        if self.laurent {
            return Err(PolyError::LaurentInput("partial_derivative"));
        }
        if index >= self.nvars {
            return Err(PolyError::IndexOutOfRange {
                index,
                nvars: self.nvars,
            });
        }
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e.get(index) != 0)
            .map(|(e, c)| {
                let mut d = e.clone();
                d.0[index] -= 1;
                (d, c * rat(e.get(index) as i64))
            })
            .collect();
        Ok(Self::from_map(self.nvars, false, terms))
    }

    /// Evaluates `self(images[0], ..., images[n-1])`.
    ///
    /// The images must share a variable count, which becomes the variable
    /// count of the result.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Self> {
        if self.laurent {
            return Err(PolyError::LaurentInput("substitute"));
        }
        if images.len() != self.nvars {
            return Err(PolyError::NvarsMismatch {
                left: self.nvars,
                right: images.len(),
            });
        }
        let target = match images.first() {
            Some(g) => g.nvars,
            None => 0,
        };
        for g in images {
            if g.nvars != target {
                return Err(PolyError::NvarsMismatch {
                    left: target,
                    right: g.nvars,
                });
            }
            if g.laurent {
                return Err(PolyError::LaurentInput("substitute"));
            }
        }
        if self.nvars == 0 {
            // A polynomial in zero variables is a constant with nowhere to go.
            return Ok(Self::zero(0));
        }
        let mut powers: Vec<Vec<Polynomial>> = images
            .iter()
            .map(|g| vec![Polynomial::one(target), g.clone()])
            .collect();
        for (i, g) in images.iter().enumerate() {
            let need = self.degree_in(i).max(0) as usize;
            while powers[i].len() <= need {
                let next = powers[i].last().expect("nonempty").try_mul(g)?;
                powers[i].push(next);
            }
        }
        let limit = max_terms();
        let mut acc: HashMap<ExponentVector, BigRational> = HashMap::new();
        for (e, c) in &self.terms {
            let mut term = Polynomial::constant(target, c.clone());
            for (i, &a) in e.0.iter().enumerate() {
                if a > 0 {
                    term = term.try_mul(&powers[i][a as usize])?;
                }
            }
            for (te, tc) in term.terms {
                match acc.get_mut(&te) {
                    Some(slot) => *slot += tc,
                    None => {
                        acc.insert(te, tc);
                    }
                }
            }
            if acc.len() > limit {
                return Err(PolyError::TermLimit { limit });
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(Self::from_map(target, false, terms))
    }

    /// Total degree; the zero polynomial has degree [`Degree::MinusInfinity`].
    pub fn total_degree(&self) -> Result<Degree<i64>> {
        if self.laurent {
            return Err(PolyError::LaurentInput("total_degree"));
        }
        Ok(self
            .terms
            .keys()
            .next_back()
            .map_or(Degree::MinusInfinity, |e| Degree::Finite(e.total())))
    }

    /// Total degree of a polynomial known to be nonzero and non-Laurent.
    ///
    /// Panics otherwise; intended for internal code paths that have already
    /// established both facts.
    pub fn degree(&self) -> i64 {
        match self.total_degree() {
            Ok(Degree::Finite(d)) => d,
            Ok(Degree::MinusInfinity) => panic!("degree of the zero polynomial"),
            Err(e) => panic!("{e}"),
        }
    }

    /// The highest homogeneous part (sum of terms of maximal total degree).
    pub fn highest_homogeneous_part(&self) -> Result<Self> {
        self.leading_part(&WeightVector::uniform(self.nvars))
    }

    /// Whether every term has the same total degree.
    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(ExponentVector::total);
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|x| x == d),
        }
    }

    /// Renders the polynomial in the text grammar accepted by [`parse_poly`].
    pub fn render(&self) -> String {
        text::render(self)
    }
}

fn add_term(
    terms: &mut BTreeMap<ExponentVector, BigRational>,
    e: &ExponentVector,
    c: &BigRational,
) {
    match terms.get_mut(e) {
        Some(slot) => {
            *slot += c;
            if slot.is_zero() {
                terms.remove(e);
            }
        }
        None => {
            terms.insert(e.clone(), c.clone());
        }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

// Operator sugar. These panic on a variable-count mismatch or when the term
// cap is hit; use the `try_*` methods to handle those as errors.

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &'a Polynomial) -> Polynomial {
        self.try_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &'a Polynomial) -> Polynomial {
        self.try_sub(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &'a Polynomial) -> Polynomial {
        self.try_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect();
        Polynomial::from_map(self.nvars, self.laurent, terms)
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Polynomial {
        parse_poly(s, 3).unwrap()
    }

    #[test]
    fn add_cancels_and_keeps_identity() {
        assert!((p("x1") + p("-x1")).is_zero());
        assert_eq!(p("x1") + p("x2^2"), p("x1 + x2^2"));
        let f = p("x1*x3 + 3/2*x2");
        assert_eq!(&f + &Polynomial::zero(3), f);
    }

    #[test]
    fn nvars_mismatch_is_an_error() {
        let a = Polynomial::var(2, 0);
        let b = Polynomial::var(3, 0);
        assert!(matches!(
            a.try_add(&b),
            Err(PolyError::NvarsMismatch { .. })
        ));
        assert!(matches!(
            a.try_mul(&b),
            Err(PolyError::NvarsMismatch { .. })
        ));
    }

    #[test]
    fn mul_examples() {
        assert_eq!(p("x2") * p("x3"), p("x2*x3"));
        let f = p("x1 - x3^2 + 7");
        assert_eq!(&f * &Polynomial::one(3), f);
        assert_eq!(p("x1 - x3^2") * p("x1 + x3^2"), p("x1^2 - x3^4"));
    }

    #[test]
    fn pow_matches_direct_expansion() {
        let g = p("x1 - x3^2");
        // Binomial expansion written out by hand.
        let expected = p("x1^3 - 3*x1^2*x3^2 + 3*x1*x3^4 - x3^6");
        assert_eq!(g.pow(3).unwrap(), expected);
        assert_eq!(g.pow(3).unwrap(), &(&g * &g) * &g);
        assert_eq!(g.pow(0).unwrap(), Polynomial::one(3));
        assert_eq!(g.pow(1).unwrap(), g);
    }

    #[test]
    fn partial_derivatives() {
        assert_eq!(p("x1*x3 + x2^2").partial_derivative(1).unwrap(), p("2*x2"));
        assert!(p("5/7").partial_derivative(0).unwrap().is_zero());
        let laurent = parse_laurent("x3^-1", 3).unwrap();
        assert_eq!(
            laurent.partial_derivative(2),
            Err(PolyError::LaurentInput("partial_derivative"))
        );
    }

    #[test]
    fn substitute_identity_and_invariant() {
        let f = p("x1^2 - x2*x3 + 4*x3^5");
        let id: Vec<_> = (0..3).map(|i| Polynomial::var(3, i)).collect();
        assert_eq!(f.substitute(&id).unwrap(), f);

        // F for p = q = 1 fixes I = x1^2 - x2*x3.
        let images = [p("x1 + x2^2"), p("x2"), p("x3 + 2*x1*x2 + x2^3")];
        let i = p("x1^2 - x2*x3");
        assert_eq!(i.substitute(&images).unwrap(), i);

        let h1 = p("x1 - x3^2").substitute(&images).unwrap();
        let expected = p("x1 + x2^2") - p("x3 + 2*x1*x2 + x2^3").pow(2).unwrap();
        assert_eq!(h1, expected);
        assert_eq!(h1.total_degree().unwrap(), Degree::Finite(6));
    }

    #[test]
    fn substitute_changes_variable_count() {
        let phi = parse_poly("-x1^3 + x2^2", 2).unwrap();
        let images = [p("x1"), p("x2 + x3")];
        assert_eq!(
            phi.substitute(&images).unwrap(),
            p("-x1^3 + x2^2 + 2*x2*x3 + x3^2")
        );
    }

    #[test]
    fn total_degree_conventions() {
        assert_eq!(
            p("x3 + 2*x1*x2 + x2^3").total_degree().unwrap(),
            Degree::Finite(3)
        );
        assert_eq!(p("0").total_degree().unwrap(), Degree::MinusInfinity);
        assert_eq!(p("-2/9").total_degree().unwrap(), Degree::Finite(0));
        assert!(Degree::MinusInfinity < Degree::Finite(i64::MIN));
    }

    #[test]
    fn support_is_key_set() {
        let s = p("x1 - x3^2").support();
        assert_eq!(
            s.into_iter().collect::<Vec<_>>(),
            vec![
                ExponentVector::new(&[1, 0, 0]),
                ExponentVector::new(&[0, 0, 2])
            ]
        );
        assert!(p("0").support().is_empty());
    }

    #[test]
    fn from_terms_rejects_negative_exponents() {
        let e = ExponentVector::new(&[0, 0, -1]);
        assert_eq!(
            Polynomial::from_terms(3, [(e.clone(), rat(1))]),
            Err(PolyError::NegativeExponent)
        );
        assert!(Polynomial::from_laurent_terms(3, [(e, rat(1))]).is_ok());
    }

    #[test]
    fn homogeneity() {
        assert!(p("x1*x2 - x3^2").is_homogeneous());
        assert!(!p("x1 - x3^2").is_homogeneous());
        assert_eq!(
            p("x1 - x3^2 + x2^2").highest_homogeneous_part().unwrap(),
            p("x2^2 - x3^2")
        );
    }
}
