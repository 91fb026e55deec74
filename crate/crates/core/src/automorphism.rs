//! Polynomial endomorphisms, tame generator words, bracket degree and
//! Jacobians.
//!
//! A map `F = (f_1, ..., f_n)` acts on polynomials by substitution,
//! `F(h) = h(f_1, ..., f_n)`, and composition follows `(F o G)(x_i) = F(g_i)`.
//! A [`GeneratorWord`] `[s_0, s_1, ..., s_k]` realizes `s_0 o s_1 o ... o s_k`.

use itertools::Itertools;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::polyring::{solve_linear, Degree, Polynomial};

/// One tame generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step {
    /// `x_index -> x_index + phi`, with `phi` free of `x_index`.
    Elementary { index: usize, phi: Polynomial },
    /// `x_i -> sum_j matrix[i][j] x_j + shift[i]`.
    Affine {
        matrix: Vec<Vec<BigRational>>,
        shift: Vec<BigRational>,
    },
}

impl Step {
    fn images(&self, nvars: usize) -> Vec<Polynomial> {
        match self {
            Step::Elementary { index, phi } => (0..nvars)
                .map(|i| {
                    let x = Polynomial::var(nvars, i);
                    if i == *index {
                        &x + phi
                    } else {
                        x
                    }
                })
                .collect(),
            Step::Affine { matrix, shift } => affine_images(matrix, shift),
        }
    }

    fn inverse(&self) -> Result<Step> {
        match self {
            Step::Elementary { index, phi } => Ok(Step::Elementary {
                index: *index,
                phi: -phi,
            }),
            Step::Affine { matrix, shift } => {
                let inv = invert_matrix(matrix)?;
                let shift = inv
                    .iter()
                    .map(|row| {
                        -row.iter()
                            .zip(shift)
                            .map(|(a, b)| a * b)
                            .sum::<BigRational>()
                    })
                    .collect();
                Ok(Step::Affine { matrix: inv, shift })
            }
        }
    }
}

fn affine_images(matrix: &[Vec<BigRational>], shift: &[BigRational]) -> Vec<Polynomial> {
    let n = matrix.len();
    matrix
        .iter()
        .zip(shift)
        .map(|(row, b)| {
            let mut img = Polynomial::constant(n, b.clone());
            for (j, a) in row.iter().enumerate() {
                img = &img + &Polynomial::var(n, j).scale(a);
            }
            img
        })
        .collect()
}

fn invert_matrix(matrix: &[Vec<BigRational>]) -> Result<Vec<Vec<BigRational>>> {
    let n = matrix.len();
    if matrix.iter().any(|r| r.len() != n) {
        return Err(Error::SingularAffine(n));
    }
    let mut columns = Vec::with_capacity(n);
    for j in 0..n {
        let e: Vec<BigRational> = (0..n)
            .map(|i| {
                if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            })
            .collect();
        match solve_linear(matrix, &e)? {
            Some(col) => columns.push(col),
            None => return Err(Error::SingularAffine(n)),
        }
    }
    Ok((0..n)
        .map(|i| (0..n).map(|j| columns[j][i].clone()).collect())
        .collect())
}

/// A word in affine and elementary generators.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GeneratorWord(Vec<Step>);

impl GeneratorWord {
    pub fn new(steps: Vec<Step>) -> Self {
        GeneratorWord(steps)
    }

    pub fn steps(&self) -> &[Step] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn concat(&self, other: &GeneratorWord) -> GeneratorWord {
        GeneratorWord(self.0.iter().chain(&other.0).cloned().collect())
    }

    pub fn inverse(&self) -> Result<GeneratorWord> {
        self.0
            .iter()
            .rev()
            .map(Step::inverse)
            .collect::<Result<Vec<_>>>()
            .map(GeneratorWord)
    }

    /// The images of the composite map the word denotes.
    pub fn realize(&self, nvars: usize) -> Result<Vec<Polynomial>> {
        let mut acc = PolyMap::identity(nvars);
        for step in &self.0 {
            acc = acc.compose(&PolyMap::new(step.images(nvars))?)?;
        }
        Ok(acc.images)
    }
}

/// An endomorphism of `Q[x_1..x_n]`, optionally carrying a word that
/// proves it tame and gives its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMap {
    images: Vec<Polynomial>,
    word: Option<GeneratorWord>,
}

impl PolyMap {
    pub fn new(images: Vec<Polynomial>) -> Result<Self> {
        let n = images.len();
        if images.iter().any(|f| f.nvars() != n || f.is_laurent()) {
            return Err(Error::InvalidImages { nvars: n });
        }
        Ok(PolyMap { images, word: None })
    }

    /// Attaches a word after checking that it realizes the images.
    pub fn with_word(images: Vec<Polynomial>, word: GeneratorWord) -> Result<Self> {
        let map = PolyMap::new(images)?;
        if word.realize(map.nvars())? != map.images {
            return Err(Error::InvalidParameter(
                "generator word does not realize the images".into(),
            ));
        }
        Ok(PolyMap {
            word: Some(word),
            ..map
        })
    }

    /// Builds the map a word denotes.
    pub fn from_word(nvars: usize, word: GeneratorWord) -> Result<Self> {
        let images = word.realize(nvars)?;
        Ok(PolyMap {
            images,
            word: Some(word),
        })
    }

    /// Pairs images with a word known to realize them.
    pub(crate) fn from_parts(images: Vec<Polynomial>, word: GeneratorWord) -> Result<Self> {
        let map = PolyMap::new(images)?;
        Ok(PolyMap {
            word: Some(word),
            ..map
        })
    }

    pub fn identity(nvars: usize) -> Self {
        PolyMap {
            images: (0..nvars).map(|i| Polynomial::var(nvars, i)).collect(),
            word: Some(GeneratorWord::default()),
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

    pub fn word(&self) -> Option<&GeneratorWord> {
        self.word.as_ref()
    }

    /// Tame here means "carries a generator word".
    pub fn is_tame(&self) -> bool {
        self.word.is_some()
    }

    pub fn without_word(mut self) -> Self {
        self.word = None;
        self
    }

    /// `F(h) = h(f_1, ..., f_n)`.
    pub fn apply(&self, h: &Polynomial) -> Result<Polynomial> {
        Ok(h.substitute(&self.images)?)
    }

    /// `self o other`: the images are `self` applied to each image of `other`.
    pub fn compose(&self, other: &PolyMap) -> Result<PolyMap> {
        if self.nvars() != other.nvars() {
            return Err(crate::polyring::PolyError::NvarsMismatch {
                left: self.nvars(),
                right: other.nvars(),
            }
            .into());
        }
        let images = other
            .images
            .iter()
            .map(|g| self.apply(g))
            .collect::<Result<Vec<_>>>()?;
        let word = match (&self.word, &other.word) {
            (Some(a), Some(b)) => Some(a.concat(b)),
            _ => None,
        };
        Ok(PolyMap { images, word })
    }

    /// `deg F = sum_i deg f_i`.
    pub fn map_degree(&self) -> Result<i64> {
        self.images
            .iter()
            .enumerate()
            .map(|(i, f)| match f.total_degree()? {
                Degree::Finite(d) => Ok(d),
                Degree::MinusInfinity => Err(Error::ZeroImage(i)),
            })
            .sum()
    }

    /// Total degrees of the images.
    pub fn degrees(&self) -> Result<Vec<i64>> {
        self.images
            .iter()
            .enumerate()
            .map(|(i, f)| match f.total_degree()? {
                Degree::Finite(d) => Ok(d),
                Degree::MinusInfinity => Err(Error::ZeroImage(i)),
            })
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, f)| *f == Polynomial::var(self.nvars(), i))
    }

    /// The inverse, read off the reversed word of inverted steps.
    pub fn invert(&self) -> Result<PolyMap> {
        let word = self.word.as_ref().ok_or(Error::NoWord)?;
        PolyMap::from_word(self.nvars(), word.inverse()?)
    }

    /// Determinant of the Jacobian matrix `(d f_i / d x_j)`.
    pub fn jacobian_determinant(&self) -> Result<Polynomial> {
        let n = self.nvars();
        let jac = self
            .images
            .iter()
            .map(|f| {
                (0..n)
                    .map(|j| f.partial_derivative(j))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let mut det = Polynomial::zero(n);
        for perm in (0..n).permutations(n) {
            let mut term = Polynomial::one(n);
            for (i, &j) in perm.iter().enumerate() {
                term = &term * &jac[i][j];
                if term.is_zero() {
                    break;
                }
            }
            det = if permutation_is_odd(&perm) {
                &det - &term
            } else {
                &det + &term
            };
        }
        Ok(det)
    }

    /// Decomposes a triangular map into elementary steps.
    ///
    /// Looks for an ordering `sigma` with `f_{sigma(k)} - x_{sigma(k)}` in
    /// `Q[x_{sigma(1)}, ..., x_{sigma(k-1)}]`; the word then lists the steps
    /// for `sigma(n), ..., sigma(1)`.
    pub fn triangular_word(&self) -> Option<GeneratorWord> {
        let n = self.nvars();
        let diffs: Vec<Polynomial> = self
            .images
            .iter()
            .enumerate()
            .map(|(i, f)| f - &Polynomial::var(n, i))
            .collect();
        let order = (0..n).permutations(n).find(|sigma| {
            sigma
                .iter()
                .enumerate()
                .all(|(k, &v)| diffs[v].only_involves(&sigma[..k]))
        })?;
        let steps = order
            .iter()
            .rev()
            .filter(|&&v| !diffs[v].is_zero())
            .map(|&v| Step::Elementary {
                index: v,
                phi: diffs[v].clone(),
            })
            .collect();
        Some(GeneratorWord(steps))
    }
}

fn permutation_is_odd(perm: &[usize]) -> bool {
    let mut inversions = 0;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 1
}

/// The elementary automorphism `x_index -> x_index + phi`.
pub fn make_elementary(index: usize, phi: Polynomial) -> Result<PolyMap> {
    let n = phi.nvars();
    if index >= n || phi.is_laurent() {
        return Err(Error::InvalidImages { nvars: n });
    }
    if phi.involves(index) {
        return Err(Error::ElementaryInvolvesVariable { index });
    }
    let step = Step::Elementary { index, phi };
    PolyMap::from_word(n, GeneratorWord(vec![step]))
}

/// The affine automorphism `x -> A x + b`.
pub fn make_affine(matrix: Vec<Vec<BigRational>>, shift: Vec<BigRational>) -> Result<PolyMap> {
    let n = matrix.len();
    if shift.len() != n {
        return Err(Error::SingularAffine(n));
    }
    invert_matrix(&matrix)?;
    PolyMap::from_word(n, GeneratorWord(vec![Step::Affine { matrix, shift }]))
}

fn check_three(f: &Polynomial) -> Result<()> {
    if f.nvars() != 3 {
        return Err(Error::NotThreeVariables(f.nvars()));
    }
    Ok(())
}

/// `deg [f, g]`: two plus the largest total degree among the 2x2 Jacobian
/// minors of `(f, g)`; `MinusInfinity` when every minor vanishes.
pub fn bracket_degree(f: &Polynomial, g: &Polynomial) -> Result<Degree<i64>> {
    check_three(f)?;
    check_three(g)?;
    let df = (0..3)
        .map(|i| f.partial_derivative(i))
        .collect::<Result<Vec<_>, _>>()?;
    let dg = (0..3)
        .map(|i| g.partial_derivative(i))
        .collect::<Result<Vec<_>, _>>()?;
    let mut best = Degree::MinusInfinity;
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let minor = &(&df[i] * &dg[j]) - &(&df[j] * &dg[i]);
        best = best.max(minor.total_degree()?);
    }
    Ok(best + Degree::Finite(2))
}
