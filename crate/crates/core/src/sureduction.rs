//! Certification of Shestakov-Umirbaev reductions of type I.
//!
//! For `F = (f_1, f_2, f_3)` (after reordering) the four conditions are:
//!
//! 1. `deg f_1 : deg f_2 = 2 : s` for an odd `s >= 3`;
//! 2. `deg f_1 < deg f_3 <= deg f_2`;
//! 3. the highest homogeneous part of `f_3` is not in the subalgebra
//!    generated by those of `f_1` and `f_2`;
//! 4. some `alpha != 0` and `phi` in `Q[f_1, f_2 - alpha f_3]` give
//!    `deg(f_3 + phi) < deg f_3` and
//!    `deg [f_1, f_3 + phi] < deg f_2 + deg [f_1, f_2 - alpha f_3]`.
//!
//! Condition 4 quantifies over infinite sets, so it is only ever certified
//! from an explicit [`TypeOneWitness`]. Conditions 1-3 are decidable and
//! [`prefilter_type_one`] enumerates every ordering satisfying them.

use std::fmt;

use itertools::Itertools;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::automorphism::{bracket_degree, make_elementary, PolyMap};
use crate::error::{Error, Result};
use crate::polyring::{
    format_rational, solve_linear, Degree, ExponentVector, PolyError, Polynomial,
};

/// One named, recomputable check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

/// An ordered list of checks; `overall` is their conjunction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub label: String,
    checks: Vec<Check>,
}

impl Certificate {
    pub fn new(label: impl Into<String>) -> Self {
        Certificate {
            label: label.into(),
            checks: Vec::new(),
        }
    }

    pub fn push(
        &mut self,
        name: impl Into<String>,
        expected: impl Into<String>,
        computed: impl Into<String>,
        pass: bool,
    ) {
        self.checks.push(Check {
            name: name.into(),
            expected: expected.into(),
            computed: computed.into(),
            pass,
        });
    }

    /// Records `expected == computed`.
    pub fn push_eq<T: PartialEq + fmt::Display>(
        &mut self,
        name: impl Into<String>,
        expected: T,
        computed: T,
    ) {
        let pass = expected == computed;
        self.push(name, expected.to_string(), computed.to_string(), pass);
    }

    /// Appends another certificate's checks, prefixing their names.
    pub fn absorb(&mut self, other: Certificate) {
        for mut c in other.checks {
            c.name = format!("{}: {}", other.label, c.name);
            self.checks.push(c);
        }
    }

    pub fn checks(&self) -> &[Check] {
        &self.checks
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn overall(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.label)?;
        for c in &self.checks {
            let mark = if c.pass { "pass" } else { "FAIL" };
            writeln!(
                f,
                "  [{mark}] {}: expected {}, computed {}",
                c.name, c.expected, c.computed
            )?;
        }
        write!(
            f,
            "  overall: {}",
            if self.overall() { "pass" } else { "FAIL" }
        )
    }
}

/// Witness data for condition 4 together with the ordering and `s`.
///
/// `perm[k]` is the index of the image playing the role of `f_{k+1}`.
/// `phi_expr` is a polynomial in two formal variables, evaluated at
/// `(f_1, f_2 - alpha f_3)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeOneWitness {
    pub perm: [usize; 3],
    pub s: u32,
    pub alpha: BigRational,
    pub phi_expr: Polynomial,
}

/// Coefficients `c_{ij}` keyed by `(i, j)`.
pub type Membership = Vec<((u32, u32), BigRational)>;

/// Returns coefficients `c_{ij}` with `h = sum c_{ij} a^i b^j`, or `None`
/// when `h` is not in `Q[a, b]`.
///
/// All inputs must be nonzero and homogeneous. Each `a^i b^j` is then
/// homogeneous of degree `i deg a + j deg b`, so the degree-`deg h` slice of
/// `Q[a, b]` is spanned by the products of exactly that degree.
pub fn homogeneous_membership(
    h: &Polynomial,
    a: &Polynomial,
    b: &Polynomial,
) -> Result<Option<Membership>> {
    for poly in [h, a, b] {
        if poly.is_zero() {
            return Err(PolyError::ZeroPolynomial("homogeneous_membership").into());
        }
        if !poly.is_homogeneous() {
            return Err(Error::NotHomogeneous);
        }
    }
    let (dh, da, db) = (h.degree(), a.degree(), b.degree());
    let max_i = if da == 0 { 0 } else { dh / da };
    let max_j = if db == 0 { 0 } else { dh / db };
    let mut candidates = Vec::new();
    for i in 0..=max_i {
        for j in 0..=max_j {
            if i * da + j * db == dh {
                let product = a.pow(i as u32)?.try_mul(&b.pow(j as u32)?)?;
                candidates.push(((i as u32, j as u32), product));
            }
        }
    }
    if candidates.is_empty() {
        return Ok(None);
    }

    let mut monomials: Vec<ExponentVector> = h.support().into_iter().collect();
    for (_, prod) in &candidates {
        monomials.extend(prod.support());
    }
    monomials.sort();
    monomials.dedup();

    let matrix: Vec<Vec<BigRational>> = monomials
        .iter()
        .map(|e| candidates.iter().map(|(_, prod)| prod.coeff(e)).collect())
        .collect();
    let rhs: Vec<BigRational> = monomials.iter().map(|e| h.coeff(e)).collect();
    Ok(solve_linear(&matrix, &rhs)?.map(|x| {
        candidates
            .iter()
            .zip(x)
            .filter(|(_, c)| !c.is_zero())
            .map(|((ij, _), c)| (*ij, c))
            .collect()
    }))
}

fn ordered_degrees(f: &PolyMap, perm: [usize; 3]) -> Result<[i64; 3]> {
    let degrees = f.degrees()?;
    Ok([degrees[perm[0]], degrees[perm[1]], degrees[perm[2]]])
}

fn require_three(f: &PolyMap) -> Result<()> {
    if f.nvars() != 3 {
        return Err(Error::NotThreeVariables(f.nvars()));
    }
    Ok(())
}

/// Condition 3 for the images ordered by `perm`.
fn leading_parts_independent(f: &PolyMap, perm: [usize; 3]) -> Result<bool> {
    let top = |k: usize| f.image(perm[k]).highest_homogeneous_part();
    Ok(homogeneous_membership(&top(2)?, &top(0)?, &top(1)?)?.is_none())
}

/// `s` with `deg f_1 : deg f_2 = 2 : s`, if it is an odd integer `>= 3`.
fn ratio_exponent(d1: i64, d2: i64) -> Option<u32> {
    if d1 <= 0 || (2 * d2) % d1 != 0 {
        return None;
    }
    let s = 2 * d2 / d1;
    (s >= 3 && s % 2 == 1).then_some(s as u32)
}

/// Checks conditions 1-4 on `f` using the witness.
pub fn check_type_one(f: &PolyMap, w: &TypeOneWitness) -> Result<Certificate> {
    require_three(f)?;
    let mut cert = Certificate::new("type I");
    let perm = w.perm;
    let valid_perm = perm.iter().sorted().copied().eq(0..3);
    cert.push(
        "witness ordering is a permutation",
        "permutation of (1, 2, 3)",
        format!("({}, {}, {})", perm[0] + 1, perm[1] + 1, perm[2] + 1),
        valid_perm,
    );
    if !valid_perm {
        return Ok(cert);
    }
    cert.push(
        "witness s is odd and >= 3",
        "odd s >= 3",
        w.s.to_string(),
        w.s >= 3 && w.s % 2 == 1,
    );
    cert.push(
        "witness alpha is nonzero",
        "alpha != 0",
        format_rational(&w.alpha),
        !w.alpha.is_zero(),
    );

    let [d1, d2, d3] = ordered_degrees(f, perm)?;
    let s = w.s as i64;
    cert.push(
        "(i) deg f1 : deg f2 = 2 : s",
        format!("2:{s}"),
        format!("{d1}:{d2}"),
        s * d1 == 2 * d2,
    );
    cert.push(
        "(ii) deg f1 < deg f3 <= deg f2",
        "deg f1 < deg f3 <= deg f2",
        format!("{d1} < {d3} <= {d2}"),
        d1 < d3 && d3 <= d2,
    );
    let independent = leading_parts_independent(f, perm)?;
    cert.push(
        "(iii) top part of f3 not in Q[top f1, top f2]",
        "not a member",
        if independent {
            "not a member"
        } else {
            "member"
        },
        independent,
    );

    let f1 = f.image(perm[0]);
    let f2 = f.image(perm[1]);
    let f3 = f.image(perm[2]);
    let shifted = f2.try_sub(&f3.scale(&w.alpha))?;
    let phi = w.phi_expr.substitute(&[f1.clone(), shifted.clone()])?;
    let reduced = f3.try_add(&phi)?;
    let reduced_degree = reduced.total_degree()?;
    cert.push(
        "(iv) deg(f3 + phi) < deg f3",
        format!("< {d3}"),
        reduced_degree.to_string(),
        reduced_degree < Degree::Finite(d3),
    );
    let lhs = bracket_degree(f1, &reduced)?;
    let inner = bracket_degree(f1, &shifted)?;
    let rhs = Degree::Finite(d2) + inner.clone();
    cert.push(
        "(iv) deg[f1, f3 + phi] < deg f2 + deg[f1, f2 - alpha f3]",
        format!("< {d2} + {inner} = {rhs}"),
        lhs.to_string(),
        lhs < rhs,
    );
    Ok(cert)
}

/// All `(ordering, s)` pairs satisfying conditions 1-3.
///
/// An empty result proves that no type-I reduction exists. A nonempty one
/// only lists candidates; condition 4 still needs a witness.
pub fn prefilter_type_one(f: &PolyMap) -> Result<Vec<([usize; 3], u32)>> {
    require_three(f)?;
    let mut out = Vec::new();
    for order in (0..3).permutations(3) {
        let perm = [order[0], order[1], order[2]];
        let [d1, d2, d3] = ordered_degrees(f, perm)?;
        let Some(s) = ratio_exponent(d1, d2) else {
            continue;
        };
        if !(d1 < d3 && d3 <= d2) {
            continue;
        }
        if leading_parts_independent(f, perm)? {
            out.push((perm, s));
        }
    }
    Ok(out)
}

/// Builds `H' = H o G_1 o G_2` from a tame `H = (h_1, h_2, h_3)` with
/// `deg h_1 : deg h_2 : deg h_3 = 2 : s : 1` and
/// `(s-1)/2 deg h_1 < deg(c h_1^s - h_2^2) < deg h_2`.
///
/// Here `G_1: x_3 -> x_3 + c x_1^s - x_2^2` and `G_2: x_2 -> x_2 + x_3`, so
/// `H' = (h_1, h_2 + h_3 + r, h_3 + r)` with `r = c h_1^s - h_2^2`. The
/// returned witness uses the identity ordering, `alpha = 1` and
/// `phi = -c T_1^s + T_2^2`.
pub fn lemma_reduce(h: &PolyMap, c: &BigRational, s: u32) -> Result<(PolyMap, TypeOneWitness)> {
    require_three(h)?;
    if s < 3 || s.is_multiple_of(2) {
        return Err(Error::LemmaHypothesis(format!(
            "s = {s} is not an odd number >= 3"
        )));
    }
    if c.is_zero() {
        return Err(Error::LemmaHypothesis("c must be nonzero".into()));
    }
    let [d1, d2, d3] = ordered_degrees(h, [0, 1, 2])?;
    let si = s as i64;
    if d3 <= 0 || d1 != 2 * d3 || d2 != si * d3 {
        return Err(Error::LemmaHypothesis(format!(
            "deg h1 : deg h2 : deg h3 = {d1} : {d2} : {d3} is not 2 : {s} : 1"
        )));
    }
    let (h1, h2, h3) = (h.image(0), h.image(1), h.image(2));
    let r = h1.pow(s)?.scale(c).try_sub(&h2.pow(2)?)?;
    let dr = r.total_degree()?;
    let l = (si - 1) / 2;
    if !(Degree::Finite(l * d1) < dr && dr < Degree::Finite(d2)) {
        return Err(Error::LemmaHypothesis(format!(
            "need {} < deg(c h1^s - h2^2) < {d2}, got {dr}",
            l * d1
        )));
    }

    let x1 = Polynomial::var(3, 0);
    let x2 = Polynomial::var(3, 1);
    let g1 = make_elementary(2, x1.pow(s)?.scale(c).try_sub(&x2.pow(2)?)?)?;
    let g2 = make_elementary(1, Polynomial::var(3, 2))?;

    let h3_new = h3.try_add(&r)?;
    let h2_new = h2.try_add(&h3_new)?;
    let images = vec![h1.clone(), h2_new, h3_new];
    let reduced = match h.word() {
        Some(word) => {
            let mut steps = word.steps().to_vec();
            steps.extend(g1.word().expect("elementary").steps().iter().cloned());
            steps.extend(g2.word().expect("elementary").steps().iter().cloned());
            PolyMap::from_parts(images, crate::automorphism::GeneratorWord::new(steps))?
        }
        None => PolyMap::new(images)?,
    };

    let t1 = Polynomial::var(2, 0);
    let t2 = Polynomial::var(2, 1);
    let phi_expr = t2.pow(2)?.try_sub(&t1.pow(s)?.scale(c))?;
    let witness = TypeOneWitness {
        perm: [0, 1, 2],
        s,
        alpha: BigRational::one(),
        phi_expr,
    };
    Ok((reduced, witness))
}

/// Lower bound on `deg phi` for `phi` in `Q[g_1, g_2]` whose largest power
/// of `g_which` is `u`:
/// `q (lcm(d_1, d_2) - d_1 - d_2 + deg[g_1, g_2]) + r d_which`, where
/// `(q, r)` is `u` divided by `e_which`, `e_1 = d_2 / gcd` and
/// `e_2 = d_1 / gcd`.
pub fn phi_degree_lower_bound(
    deg_g1: i64,
    deg_g2: i64,
    bracket: Degree<i64>,
    u: u64,
    which: u8,
) -> Result<i64> {
    if deg_g1 < 1 || deg_g2 < 1 {
        return Err(Error::InvalidParameter("degrees must be positive".into()));
    }
    let Degree::Finite(bracket) = bracket else {
        return Err(Error::DependentPair);
    };
    let g = deg_g1.gcd(&deg_g2);
    let (e, deg_which) = match which {
        1 => (deg_g2 / g, deg_g1),
        2 => (deg_g1 / g, deg_g2),
        _ => {
            return Err(Error::InvalidParameter(format!(
                "which must be 1 or 2, got {which}"
            )))
        }
    };
    let (q, r) = (u as i64).div_rem(&e);
    let lcm = deg_g1.lcm(&deg_g2);
    Ok(q * (lcm - deg_g1 - deg_g2 + bracket) + r * deg_which)
}
