//! Q-derivations of the polynomial ring.
//!
//! Covers application, triangularity, exponential automorphisms, the slice
//! construction of kernel generators and the leading derivation `D^eta` with
//! respect to a weight.

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::automorphism::PolyMap;
use crate::error::{Error, Result};
use crate::polyring::{Degree, ExponentVector, Polynomial, WeightVector};

/// A derivation, stored as the images of the variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    images: Vec<Polynomial>,
}

impl Derivation {
    pub fn new(images: Vec<Polynomial>) -> Result<Self> {
        let n = images.len();
        if n == 0 || images.iter().any(|f| f.nvars() != n || f.is_laurent()) {
            return Err(Error::InvalidImages { nvars: n });
        }
        Ok(Derivation { images })
    }

    pub fn zero(nvars: usize) -> Self {
        Derivation {
            images: vec![Polynomial::zero(nvars); nvars],
        }
    }

    pub fn nvars(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    pub fn image(&self, i: usize) -> &Polynomial {
        &self.images[i]
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(Polynomial::is_zero)
    }

    /// `-D`.
    pub fn negate(&self) -> Derivation {
        Derivation {
            images: self.images.iter().map(|f| -f).collect(),
        }
    }

    /// `w D`, again a derivation.
    pub fn times(&self, w: &Polynomial) -> Result<Derivation> {
        let images = self
            .images
            .iter()
            .map(|f| f.try_mul(w))
            .collect::<Result<Vec<_>, _>>()?;
        Derivation::new(images)
    }

    /// `D(f) = sum_i D(x_i) * df/dx_i`.
    pub fn apply(&self, f: &Polynomial) -> Result<Polynomial> {
        if f.nvars() != self.nvars() {
            return Err(crate::polyring::PolyError::NvarsMismatch {
                left: self.nvars(),
                right: f.nvars(),
            }
            .into());
        }
        let mut out = Polynomial::zero(self.nvars());
        for (i, img) in self.images.iter().enumerate() {
            if img.is_zero() || !f.involves(i) {
                continue;
            }
            out = out.try_add(&img.try_mul(&f.partial_derivative(i)?)?)?;
        }
        Ok(out)
    }

    /// First permutation (in lexicographic order) `sigma` such that
    /// `D(x_{sigma(i)})` lies in `Q[x_{sigma(1)}, ..., x_{sigma(i-1)}]`.
    pub fn triangular_permutation(&self) -> Option<Vec<usize>> {
        let n = self.nvars();
        (0..n).permutations(n).find(|sigma| {
            sigma
                .iter()
                .enumerate()
                .all(|(k, &v)| self.images[v].only_involves(&sigma[..k]))
        })
    }

    pub fn is_triangular(&self) -> bool {
        self.triangular_permutation().is_some()
    }

    /// `10 * (max total degree of the images + 1) * nvars`.
    pub fn default_cap(&self) -> usize {
        let top = self
            .images
            .iter()
            .filter_map(|f| f.total_degree().ok().and_then(|d| d.finite().copied()))
            .max()
            .unwrap_or(0)
            .max(0) as usize;
        10 * (top + 1) * self.nvars()
    }

    /// `[f, D f, D^2 f, ...]` up to the last nonzero iterate.
    ///
    /// With `cap = None` the chain is assumed to terminate (triangular case).
    fn iterates(&self, f: &Polynomial, var: usize, cap: Option<usize>) -> Result<Vec<Polynomial>> {
        let mut chain = Vec::new();
        let mut cur = f.clone();
        while !cur.is_zero() {
            if let Some(cap) = cap {
                if chain.len() > cap {
                    return Err(Error::NilpotencyCap { var: var + 1, cap });
                }
            }
            let next = self.apply(&cur)?;
            chain.push(cur);
            cur = next;
        }
        Ok(chain)
    }

    fn effective_cap(&self, cap: Option<usize>) -> Option<usize> {
        if self.is_triangular() {
            None
        } else {
            Some(cap.unwrap_or_else(|| self.default_cap()))
        }
    }

    /// `exp D = (sum_l D^l(x_i) / l!)_i`.
    ///
    /// Triangular derivations always succeed and the result carries a
    /// generator word. Otherwise every chain `D^l(x_i)` must vanish within
    /// `cap` steps (default [`Derivation::default_cap`]) and no word is
    /// attached.
    pub fn exp_map(&self, cap: Option<usize>) -> Result<PolyMap> {
        let cap = self.effective_cap(cap);
        let n = self.nvars();
        let images = (0..n)
            .map(|i| {
                let chain = self.iterates(&Polynomial::var(n, i), i, cap)?;
                Ok(exp_sum(&chain, None))
            })
            .collect::<Result<Vec<_>>>()?;
        attach_word(images, cap.is_none())
    }

    /// Slice polynomials `g_i' = sum_l D^l(x_i)/l! (-x_n)^l` for `i < n`.
    pub fn slice_polynomials(&self, cap: Option<usize>) -> Result<Vec<Polynomial>> {
        let n = self.nvars();
        if *self.image(n - 1) != Polynomial::one(n) {
            return Err(Error::NotASlice);
        }
        let cap = self.effective_cap(cap);
        let minus_xn = -Polynomial::var(n, n - 1);
        (0..n - 1)
            .map(|i| {
                let chain = self.iterates(&Polynomial::var(n, i), i, cap)?;
                Ok(exp_sum(&chain, Some(&minus_xn)))
            })
            .collect()
    }

    /// `(g_1', ..., g_{n-1}', x_n)`, with a word when `D` is triangular.
    pub fn slice_map(&self, cap: Option<usize>) -> Result<PolyMap> {
        let n = self.nvars();
        let mut images = self.slice_polynomials(cap)?;
        images.push(Polynomial::var(n, n - 1));
        attach_word(images, self.is_triangular())
    }

    /// The leading derivation `D^eta` together with `deg_eta D`.
    ///
    /// `deg_eta D` is the maximum of `deg_eta(D(x_i) x_i^{-1})`; variables
    /// attaining it keep `(D(x_i) x_i^{-1})^eta x_i`, the rest map to 0.
    pub fn leading_derivation(&self, eta: &WeightVector) -> Result<(Derivation, BigRational)> {
        let n = self.nvars();
        if self.is_zero() {
            return Err(Error::ZeroDerivation);
        }
        let mut ratios = Vec::with_capacity(n);
        for (i, img) in self.images.iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = -1;
            let inv = Polynomial::monomial(ExponentVector::from(e), BigRational::one());
            let ratio = img.clone().into_laurent().try_mul(&inv)?;
            let degree = ratio.weighted_degree(eta)?;
            ratios.push((ratio, degree));
        }
        let top = ratios
            .iter()
            .map(|(_, d)| d.clone())
            .max()
            .expect("nvars > 0");
        let Degree::Finite(top_value) = top.clone() else {
            unreachable!("nonzero derivation has a finite degree")
        };
        let images = ratios
            .into_iter()
            .enumerate()
            .map(|(i, (ratio, degree))| {
                if degree == top {
                    let lead = ratio.leading_part(eta)?;
                    Ok(lead.try_mul(&Polynomial::var(n, i))?.into_ordinary()?)
                } else {
                    Ok(Polynomial::zero(n))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((Derivation::new(images)?, top_value))
    }
}

/// `sum_l chain[l] / l! * weight^l`.
fn exp_sum(chain: &[Polynomial], weight: Option<&Polynomial>) -> Polynomial {
    let n = chain[0].nvars();
    let mut sum = Polynomial::zero(n);
    let mut factorial = BigInt::one();
    let mut power = Polynomial::one(n);
    for (l, term) in chain.iter().enumerate() {
        if l > 0 {
            factorial *= l;
            if let Some(w) = weight {
                power = &power * w;
            }
        }
        let scaled = term.scale(&BigRational::new(BigInt::one(), factorial.clone()));
        sum = &sum + &(&scaled * &power);
    }
    sum
}

fn attach_word(images: Vec<Polynomial>, triangular: bool) -> Result<PolyMap> {
    let map = PolyMap::new(images)?;
    if !triangular {
        return Ok(map);
    }
    let word = map
        .triangular_word()
        .expect("exponential of a triangular derivation is triangular");
    PolyMap::with_word(map.images().to_vec(), word)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{parse_poly, rat};

    fn p(s: &str) -> Polynomial {
        parse_poly(s, 3).unwrap()
    }

    fn der(images: [&str; 3]) -> Derivation {
        Derivation::new(images.iter().map(|s| p(s)).collect()).unwrap()
    }

    // D and E at p = q = 1.
    fn d11() -> Derivation {
        der(["x2^2", "0", "2*x1*x2"])
    }

    fn e11() -> Derivation {
        der(["2*x3", "4*x1", "1"])
    }

    #[test]
    fn apply_examples() {
        assert_eq!(d11().apply(&p("x3")).unwrap(), p("2*x1*x2"));
        assert!(d11().apply(&p("x1^2 - x2*x3")).unwrap().is_zero());
        assert!(e11().apply(&p("7/3")).unwrap().is_zero());
    }

    #[test]
    fn triangular_permutations() {
        assert_eq!(d11().triangular_permutation(), Some(vec![1, 0, 2]));
        assert_eq!(e11().triangular_permutation(), Some(vec![2, 0, 1]));
        assert_eq!(der(["x1", "0", "0"]).triangular_permutation(), None);
    }

    #[test]
    fn exp_of_d() {
        let f = d11().exp_map(None).unwrap();
        assert_eq!(
            f.images(),
            &[p("x1 + x2^2"), p("x2"), p("x3 + 2*x1*x2 + x2^3")]
        );
        assert!(f.is_tame());
        assert!(Derivation::zero(3).exp_map(None).unwrap().is_identity());
    }

    #[test]
    fn exp_of_nagata_derivation() {
        let w = p("x1*x3 + x2^2");
        let delta = der(["-2*x2", "x3", "0"]).times(&w).unwrap();
        assert!(!delta.is_triangular());
        let n = delta.exp_map(None).unwrap();
        assert!(!n.is_tame());
        assert_eq!(
            n.image(0),
            &p("x1 - 2*x1*x2*x3 - 2*x2^3 - x1^2*x3^3 - 2*x1*x2^2*x3^2 - x2^4*x3")
        );
        assert_eq!(n.image(1), &p("x2 + x1*x3^2 + x2^2*x3"));
        assert_eq!(n.image(2), &p("x3"));
    }

    #[test]
    fn non_nilpotent_hits_cap() {
        let d = der(["x1", "0", "0"]);
        assert!(matches!(
            d.exp_map(Some(5)),
            Err(Error::NilpotencyCap { var: 1, cap: 5 })
        ));
    }

    #[test]
    fn slice_examples() {
        let g = e11().slice_polynomials(None).unwrap();
        assert_eq!(g, vec![p("x1 - x3^2"), p("x2 - 4*x1*x3 + 8/3*x3^3")]);
        for gi in &g {
            assert!(e11().apply(gi).unwrap().is_zero());
        }
        let trivial = der(["0", "0", "1"]).slice_polynomials(None).unwrap();
        assert_eq!(trivial, vec![p("x1"), p("x2")]);
        assert_eq!(d11().slice_polynomials(None), Err(Error::NotASlice));
        let map = e11().slice_map(None).unwrap();
        assert!(map.is_tame());
        assert!(map.compose(&map.invert().unwrap()).unwrap().is_identity());
    }

    #[test]
    fn leading_derivation_of_e() {
        let omega = WeightVector::from_integers(&[2, 1, 3]);
        let (lead, degree) = e11().leading_derivation(&omega).unwrap();
        assert_eq!(lead, der(["2*x3", "4*x1", "0"]));
        assert_eq!(degree, rat(1));
    }

    #[test]
    fn leading_derivation_single_image() {
        // A single nonzero image that is one term; with several terms the
        // weight may select a proper part of it.
        let d = der(["0", "-5*x1^3*x3", "0"]);
        for eta in [
            WeightVector::from_integers(&[2, 1, 3]),
            WeightVector::uniform(3),
            WeightVector::from_integers(&[-4, 2, 9]),
        ] {
            assert_eq!(d.leading_derivation(&eta).unwrap().0, d);
        }
        assert_eq!(
            Derivation::zero(3).leading_derivation(&WeightVector::uniform(3)),
            Err(Error::ZeroDerivation)
        );
        let d = der(["0", "x1^3 - 2*x3", "0"]);
        let eta = WeightVector::from_integers(&[-4, 2, 9]);
        assert_eq!(
            d.leading_derivation(&eta).unwrap().0,
            der(["0", "-2*x3", "0"])
        );
    }

    #[test]
    fn invalid_images_rejected() {
        let laurent = crate::polyring::parse_laurent("x1^-1", 3).unwrap();
        assert!(Derivation::new(vec![laurent, p("0"), p("0")]).is_err());
        assert!(Derivation::new(vec![p("x1"), p("x2")]).is_err());
    }
}
