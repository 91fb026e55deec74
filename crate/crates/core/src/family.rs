//! The two-parameter family of tame automorphisms built from the triangular
//! derivations
//!
//! ```text
//! D(x1) = x2^(q+1),  D(x2) = 0,            D(x3) = (p+1) x1^p x2^q
//! E(x1) = 2 x3,      E(x2) = 2(p+1) x1^p,  E(x3) = 1
//! ```
//!
//! with `F = exp D`, `G = (g_1, g_2, x_3)` the slice map of `E`, and
//! `H = F o G = (h_1, h_2, h_3)`. The module also carries the Nagata map and
//! the Kawanoue pair used as reference points for the reduction theory.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::automorphism::PolyMap;
use crate::derivation::Derivation;
use crate::error::{Error, Result};
use crate::polyring::{
    format_rational, rat, ratio, Degree, ExponentVector, Polynomial, WeightVector,
};
use crate::sureduction::{
    check_type_one, lemma_reduce, prefilter_type_one, Certificate, TypeOneWitness,
};

/// The `(p, q)` cells exercised by default.
pub const DEFAULT_GRID: [(u32, u32); 6] = [(1, 1), (1, 2), (2, 1), (2, 2), (3, 1), (1, 3)];

/// `x^eps` with `eps = (1, 0, -2)`.
pub const EPSILON: [i32; 3] = [1, 0, -2];

/// Constants of the `(p, q)` family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyParams {
    pub p: u32,
    pub q: u32,
    /// `m = pq + p + q`.
    pub m: i64,
    /// `c = (-2)^(p+1) prod_{i=1..p} (i+1)/(2i+1)`.
    pub c: BigRational,
    /// `c_i = (-2)^(i+1) prod_{l=0..i} (p-l+1)/(2l+1)` for `i = 0..=p`.
    pub c_list: Vec<BigRational>,
}

impl FamilyParams {
    pub fn new(p: u32, q: u32) -> Result<Self> {
        if p < 1 || q < 1 {
            return Err(Error::InvalidParameter(format!(
                "p and q must be at least 1, got p = {p}, q = {q}"
            )));
        }
        let (pi, qi) = (p as i64, q as i64);
        let m = pi * qi + pi + qi;
        let minus_two = rat(-2);
        let mut c = minus_two.pow(p as i32 + 1);
        for i in 1..=pi {
            c *= ratio(i + 1, 2 * i + 1);
        }
        let c_list = (0..=pi)
            .map(|i| {
                let mut ci = minus_two.pow(i as i32 + 1);
                for l in 0..=i {
                    ci *= ratio(pi - l + 1, 2 * l + 1);
                }
                ci
            })
            .collect();
        Ok(FamilyParams { p, q, m, c, c_list })
    }

    /// The `2pm + p + 1` of the last degree identity.
    pub fn reduced_degree(&self) -> i64 {
        let p = self.p as i64;
        2 * p * self.m + p + 1
    }

    /// `kappa = -c^2`, the constant for which `kappa g_1^(2p+1) - g_2^2`
    /// loses its top `x_3^(2(2p+1))` term.
    pub fn kappa(&self) -> BigRational {
        -(&self.c * &self.c)
    }

    /// `s = 2p + 1`.
    pub fn s(&self) -> u32 {
        2 * self.p + 1
    }
}

/// Everything built for one `(p, q)`.
#[derive(Clone, Debug)]
pub struct FamilyInstance {
    pub params: FamilyParams,
    pub d: Derivation,
    pub e: Derivation,
    pub f: PolyMap,
    pub g: PolyMap,
    pub h: PolyMap,
    /// `(deg f_1, deg f_2, deg f_3) = (q + 1, 1, m)`.
    pub omega: WeightVector,
    reduced_difference: OnceLock<Polynomial>,
}

fn x(i: usize) -> Polynomial {
    Polynomial::var(3, i)
}

fn term(exps: [i32; 3], c: BigRational) -> Polynomial {
    Polynomial::monomial(ExponentVector::new(&exps), c)
}

fn binomial(n: i64, k: i64) -> BigInt {
    num_integer::binomial(BigInt::from(n), BigInt::from(k))
}

impl FamilyInstance {
    pub fn p(&self) -> u32 {
        self.params.p
    }

    pub fn q(&self) -> u32 {
        self.params.q
    }

    /// `kappa h_1^(2p+1) - h_2^2 = -(c^2 h_1^(2p+1) + h_2^2)`, expanded once
    /// and cached.
    pub fn reduced_difference(&self) -> &Polynomial {
        self.reduced_difference.get_or_init(|| {
            let kappa = self.params.kappa();
            let h1 = self.h.image(0);
            let h2 = self.h.image(1);
            &h1.pow(self.params.s()).expect("term cap").scale(&kappa)
                - &h2.pow(2).expect("term cap")
        })
    }

    /// `I = x1^(p+1) - x2 x3`.
    pub fn invariant_i(&self) -> Polynomial {
        &term([self.p() as i32 + 1, 0, 0], rat(1)) - &(&x(1) * &x(2))
    }

    /// `P = kappa g_1^(2p+1) - g_2^2`.
    pub fn p_poly(&self) -> Polynomial {
        let kappa = self.params.kappa();
        let g1 = self.g.image(0);
        let g2 = self.g.image(1);
        &g1.pow(self.params.s()).expect("term cap").scale(&kappa) - &g2.pow(2).expect("term cap")
    }
}

/// Closed forms of `f_1, f_2, f_3, g_1, g_2`.
pub fn closed_forms(params: &FamilyParams) -> [Polynomial; 5] {
    let (p, q) = (params.p as i32, params.q as i32);
    let f1 = &x(0) + &term([0, q + 1, 0], rat(1));
    let f2 = x(1);
    let mut f3 = x(2);
    for i in 0..=p {
        let coeff = BigRational::from_integer(binomial(p as i64 + 1, i as i64 + 1));
        f3 = &f3 + &term([p - i, (q + 1) * i + q, 0], coeff);
    }
    let g1 = &x(0) - &term([0, 0, 2], rat(1));
    let mut g2 = x(1);
    for (i, ci) in params.c_list.iter().enumerate() {
        let i = i as i32;
        g2 = &g2 + &term([p - i, 0, 2 * i + 1], ci.clone());
    }
    [f1, f2, f3, g1, g2]
}

/// The derivations `D` and `E` for `(p, q)`.
pub fn family_derivations(p: u32, q: u32) -> Result<(Derivation, Derivation)> {
    let (pi, qi) = (p as i32, q as i32);
    let p1 = rat(pi as i64 + 1);
    let d = Derivation::new(vec![
        term([0, qi + 1, 0], rat(1)),
        Polynomial::zero(3),
        term([pi, qi, 0], p1.clone()),
    ])?;
    let e = Derivation::new(vec![
        term([0, 0, 1], rat(2)),
        term([pi, 0, 0], rat(2) * p1),
        Polynomial::one(3),
    ])?;
    Ok((d, e))
}

/// Builds `F = exp D`, `G`, and `H = F o G`, and checks the exponential and
/// slice computations against the closed forms term by term.
pub fn build_family(p: u32, q: u32) -> Result<FamilyInstance> {
    let params = FamilyParams::new(p, q)?;
    let (d, e) = family_derivations(p, q)?;
    let f = d.exp_map(None)?;
    let g = e.slice_map(None)?;

    let [f1, f2, f3, g1, g2] = closed_forms(&params);
    let computed = [f.image(0), f.image(1), f.image(2), g.image(0), g.image(1)];
    let names = ["f1", "f2", "f3", "g1", "g2"];
    for ((name, closed), got) in names.iter().zip([&f1, &f2, &f3, &g1, &g2]).zip(computed) {
        if closed != got {
            return Err(Error::ClosedFormMismatch(format!(
                "{name}: closed form {closed}, computed {got}"
            )));
        }
    }

    let h = f.compose(&g)?;
    let omega = WeightVector::from_integers(&[q as i64 + 1, 1, params.m]);
    Ok(FamilyInstance {
        params,
        d,
        e,
        f,
        g,
        h,
        omega,
        reduced_difference: OnceLock::new(),
    })
}

/// Re-derives the closed forms, the iterate formula for `D^(i+1)(x_3)` and
/// the kernel facts `E(g_i) = 0`, `D(I) = 0`.
pub fn verify_closed_forms(inst: &FamilyInstance) -> Result<Certificate> {
    let mut cert = Certificate::new("closed forms");
    let [f1, f2, f3, g1, g2] = closed_forms(&inst.params);
    let pairs = [
        ("f1 = x1 + x2^(q+1)", f1, inst.f.image(0)),
        ("f2 = x2", f2, inst.f.image(1)),
        (
            "f3 = x3 + sum binom(p+1, i+1) x1^(p-i) x2^((q+1)i+q)",
            f3,
            inst.f.image(2),
        ),
        ("g1 = x1 - x3^2", g1, inst.g.image(0)),
        ("g2 = x2 + sum c_i x1^(p-i) x3^(2i+1)", g2, inst.g.image(1)),
    ];
    for (name, closed, got) in pairs {
        cert.push_eq(name, closed.render(), got.render());
    }
    cert.push_eq(
        "c_p = c",
        format_rational(&inst.params.c),
        format_rational(inst.params.c_list.last().expect("p >= 1")),
    );
    cert.push_eq(
        "c_0 = -2(p+1)",
        format_rational(&rat(-2 * (inst.p() as i64 + 1))),
        format_rational(&inst.params.c_list[0]),
    );

    // D^(i+1)(x3) / (p+1)! = x1^(p-i) x2^((q+1)i+q) / (p-i)!
    let (p, q) = (inst.p() as i64, inst.q() as i64);
    let fact = |n: i64| (1..=n).fold(BigInt::one(), |acc, k| acc * k);
    let mut iterate = x(2);
    let mut all = true;
    for i in 0..=p {
        iterate = inst.d.apply(&iterate)?;
        let expected = term(
            [(p - i) as i32, ((q + 1) * i + q) as i32, 0],
            BigRational::new(fact(p + 1), fact(p - i)),
        );
        all &= iterate == expected;
    }
    let tail = inst.d.apply(&iterate)?;
    cert.push(
        "D^(i+1)(x3)/(p+1)! = x1^(p-i) x2^((q+1)i+q)/(p-i)! for i = 0..p",
        "holds for every i",
        if all { "holds for every i" } else { "mismatch" },
        all,
    );
    cert.push_eq("D^(p+2)(x3) = 0", "0".to_string(), tail.render());

    for (i, gi) in [inst.g.image(0), inst.g.image(1)].into_iter().enumerate() {
        cert.push_eq(
            format!("E(g{}) = 0", i + 1),
            "0".to_string(),
            inst.e.apply(gi)?.render(),
        );
    }
    cert.push_eq(
        "D(I) = 0",
        "0".to_string(),
        inst.d.apply(&inst.invariant_i())?.render(),
    );
    cert.push_eq(
        "F and G carry generator words",
        "true".to_string(),
        (inst.f.is_tame() && inst.g.is_tame()).to_string(),
    );
    Ok(cert)
}

/// The four degree identities for `H`, plus the inequalities that make the
/// reduction lemma applicable with `s = 2p + 1`.
pub fn verify_theorem(inst: &FamilyInstance) -> Result<Certificate> {
    let mut cert = Certificate::new("theorem");
    let p = inst.p() as i64;
    let q = inst.q() as i64;
    let m = inst.params.m;
    let degrees = inst.h.degrees()?;
    cert.push_eq("deg h1 = 2m", 2 * m, degrees[0]);
    cert.push_eq("deg h2 = (2p+1)m", (2 * p + 1) * m, degrees[1]);
    cert.push_eq("deg h3 = m", m, degrees[2]);
    let reduced = inst.reduced_difference().total_degree()?;
    let target = inst.params.reduced_degree();
    cert.push_eq(
        "deg(c^2 h1^(2p+1) + h2^2) = 2pm+p+1",
        Degree::Finite(target),
        reduced.clone(),
    );
    let c2 = &inst.params.c * &inst.params.c;
    let literal = inst.h.image(0).pow(inst.params.s())?.scale(&c2) - inst.h.image(1).pow(2)?;
    cert.push_eq(
        "deg(c^2 h1^(2p+1) - h2^2) = 2 deg h2 (top terms add)",
        Degree::Finite(2 * degrees[1]),
        literal.total_degree()?,
    );
    cert.push_eq(
        "2pm+p+1 = (2p+1)m - (p+1)q + 1",
        target,
        (2 * p + 1) * m - (p + 1) * q + 1,
    );
    cert.push(
        "p deg h1 < deg(c^2 h1^(2p+1) + h2^2) < deg h2",
        format!("{} < d < {}", p * degrees[0], degrees[1]),
        reduced.to_string(),
        Degree::Finite(p * degrees[0]) < reduced && reduced < Degree::Finite(degrees[1]),
    );
    cert.push_eq(
        "H carries a generator word",
        "true".to_string(),
        inst.h.is_tame().to_string(),
    );
    Ok(cert)
}

fn weighted(f: &Polynomial, eta: &WeightVector) -> Result<Degree<BigRational>> {
    Ok(f.weighted_degree(eta)?)
}

fn render_degree(d: &Degree<BigRational>) -> String {
    d.render()
}

/// The graded argument for the last degree identity, step by step.
pub fn verify_graded_analysis(inst: &FamilyInstance) -> Result<Certificate> {
    let mut cert = Certificate::new("graded analysis");
    let omega = &inst.omega;
    let p = inst.p() as i32;
    let (pl, ql, m) = (p as i64, inst.q() as i64, inst.params.m);
    let c = &inst.params.c;
    let two_c = rat(2) * c;

    cert.push_eq(
        "omega = (deg f1, deg f2, deg f3)",
        WeightVector::from_integers(&inst.f.degrees()?).to_string(),
        omega.to_string(),
    );

    // (a) leading parts of g1, g2
    let g1 = inst.g.image(0);
    let g2 = inst.g.image(1);
    cert.push_eq(
        "(a) g1^omega = -x3^2",
        term([0, 0, 2], rat(-1)).render(),
        g1.leading_part(omega)?.render(),
    );
    cert.push_eq(
        "(a) g2^omega = c_p x3^(2p+1)",
        term([0, 0, 2 * p + 1], c.clone()).render(),
        g2.leading_part(omega)?.render(),
    );

    // Rows deg_omega(E(x_i) x_i^-1) and the leading derivation E^omega.
    let e = &inst.e;
    let mut rows = Vec::new();
    for i in 0..3 {
        let mut inv = [0i32; 3];
        inv[i] = -1;
        let ratio_i = e
            .image(i)
            .clone()
            .into_laurent()
            .try_mul(&term(inv, rat(1)))?;
        rows.push(render_degree(&weighted(&ratio_i, omega)?));
    }
    let expected_rows = [pl * ql + pl - 1, pl * ql + pl - 1, -m].map(|v| v.to_string());
    cert.push_eq(
        "deg_omega(E(x_i) x_i^-1) = (pq+p-1, pq+p-1, -m)",
        expected_rows.join(", "),
        rows.join(", "),
    );
    let (e_lead, e_deg) = e.leading_derivation(omega)?;
    cert.push_eq(
        "deg_omega E = pq+p-1",
        format_rational(&rat(pl * ql + pl - 1)),
        format_rational(&e_deg),
    );
    let expected_lead = [e.image(0).clone(), e.image(1).clone(), Polynomial::zero(3)];
    cert.push_eq(
        "E^omega = (E(x1), E(x2), 0)",
        expected_lead
            .iter()
            .map(Polynomial::render)
            .collect::<Vec<_>>()
            .join(", "),
        e_lead
            .images()
            .iter()
            .map(Polynomial::render)
            .collect::<Vec<_>>()
            .join(", "),
    );

    // (b) P = P1 - P2
    let big_p = inst.p_poly();
    let kappa = inst.params.kappa();
    let phi = g2 - &x(1);
    let p1 = &g1.pow(inst.params.s())?.scale(&kappa) - &phi.pow(2)?;
    let p2 = &x(1).pow(2)? + &(&phi * &x(1)).scale(&rat(2));
    cert.push_eq("(b) P = P1 - P2", big_p.render(), (&p1 - &p2).render());

    // P1 lies in x3^(2(2p+1)) Q[x^eps].
    let in_eps_ring = p1.terms().all(|(ex, _)| {
        let u = ex.get(0);
        ex.get(1) == 0 && ex.get(2) == 2 * (2 * p + 1) - 2 * u
    });
    cert.push(
        "P1 lies in x3^(4p+2) Q[x^eps]",
        "every term is x1^u x3^(4p+2-2u)",
        if in_eps_ring {
            "every term is x1^u x3^(4p+2-2u)"
        } else {
            "violated"
        },
        in_eps_ring,
    );

    // (c)-(e)
    let p1_lead = p1.leading_part(omega)?;
    let p2_lead = p2.leading_part(omega)?;
    let disjoint = p1_lead.support().intersection(&p2_lead.support()).count() == 0;
    cert.push_eq("(c) |P1^omega| and |P2^omega| are disjoint", true, disjoint);
    let single = p1_lead.num_terms() == 1;
    let (u, c_prime, x3_exp) = match p1_lead.terms().next() {
        Some((ex, coeff)) => (ex.get(0), coeff.clone(), ex.get(2)),
        None => (0, BigRational::zero(), 0),
    };
    cert.push_eq("(d) P1^omega is a single term", true, single);
    cert.push_eq("(d) u = p+1", (p + 1) as i64, u as i64);
    cert.push_eq(
        "(d) c' = 2c",
        format_rational(&two_c),
        format_rational(&c_prime),
    );
    cert.push_eq(
        "(d) x3 exponent = 2(2p-u+1)",
        (2 * (2 * p - u + 1)) as i64,
        x3_exp as i64,
    );
    cert.push_eq(
        "(e) P2^omega = 2c x2 x3^(2p+1)",
        term([0, 1, 2 * p + 1], two_c.clone()).render(),
        p2_lead.render(),
    );

    // (f)-(h)
    let p_lead = big_p.leading_part(omega)?;
    cert.push_eq(
        "(f) E^omega(P^omega) = 0",
        "0".to_string(),
        e_lead.apply(&p_lead)?.render(),
    );
    let x3_2p = term([0, 0, 2 * p], two_c.clone());
    let expected_lead = &x3_2p * &inst.invariant_i();
    cert.push_eq(
        "(g) P^omega = 2c x3^(2p) I",
        expected_lead.render(),
        p_lead.render(),
    );
    let p_deg = weighted(&big_p, omega)?;
    cert.push_eq(
        "(h) deg_omega P = 2pm+m+1",
        Degree::Finite(rat(2 * pl * m + m + 1)).render(),
        p_deg.render(),
    );

    // (i)
    let i_poly = inst.invariant_i();
    cert.push_eq(
        "(i) F(I) = I",
        i_poly.render(),
        inst.f.apply(&i_poly)?.render(),
    );

    // (j)
    let q_poly = &big_p - &p_lead;
    let q_deg = weighted(&q_poly, omega)?;
    let target = inst.params.reduced_degree();
    cert.push(
        "(j) deg_omega Q < 2pm+p+1",
        format!("< {target}"),
        q_deg.render(),
        q_deg < Degree::Finite(rat(target)),
    );
    let eps_deg = ql + 1 - 2 * m;
    let eps_poly = term(EPSILON, rat(1));
    cert.push_eq(
        "deg_omega x^eps = q+1-2m",
        Degree::Finite(rat(eps_deg)).render(),
        weighted(&eps_poly, omega)?.render(),
    );
    let shifted = term([0, -1, 2 * p + 1], rat(1));
    cert.push_eq(
        "deg_omega(x2^-1 x3^(2p+1)) = -(p+1) deg_omega x^eps",
        Degree::Finite(rat(-(pl + 1) * eps_deg)).render(),
        weighted(&shifted, omega)?.render(),
    );
    let congruent = match (&p_deg, &q_deg) {
        (Degree::Finite(a), Degree::Finite(b)) => {
            let diff = a - b;
            diff.is_integer() && (diff.to_integer() % BigInt::from(eps_deg)).is_zero()
        }
        _ => false,
    };
    cert.push_eq(
        "deg_omega Q = deg_omega P mod deg_omega x^eps",
        true,
        congruent,
    );

    // (k)
    let fp = inst.f.apply(&big_p)?;
    cert.push_eq(
        "(k) deg F(P) = 2pm+p+1",
        Degree::Finite(target),
        fp.total_degree()?,
    );
    let fp_lead = inst.f.apply(&p_lead)?;
    let f3_form = &inst.f.image(2).pow(2 * p as u32)?.scale(&two_c) * &i_poly;
    cert.push_eq(
        "F(P^omega) = 2c f3^(2p) I",
        f3_form.render(),
        fp_lead.render(),
    );
    cert.push_eq(
        "deg F(P^omega) = 2pm+p+1",
        Degree::Finite(target),
        fp_lead.total_degree()?,
    );
    let fq_deg = inst.f.apply(&q_poly)?.total_degree()?;
    cert.push(
        "deg F(Q) <= deg_omega Q",
        format!("<= {}", q_deg.render()),
        fq_deg.to_string(),
        match (&fq_deg, &q_deg) {
            (Degree::Finite(a), Degree::Finite(b)) => &rat(*a) <= b,
            (Degree::MinusInfinity, _) => true,
            _ => false,
        },
    );
    cert.push_eq(
        "F(P) = -(c^2 h1^(2p+1) + h2^2)",
        true,
        &fp == inst.reduced_difference(),
    );
    Ok(cert)
}

/// Applies the reduction lemma to `H` with constant `-c^2` and `s = 2p + 1`,
/// certifies the type-I reduction, and returns `H'` with its witness.
pub fn corollary_automorphism(p: u32, q: u32) -> Result<(PolyMap, TypeOneWitness, Certificate)> {
    let inst = build_family(p, q)?;
    corollary_from_instance(&inst)
}

/// [`corollary_automorphism`] for an already built instance.
pub fn corollary_from_instance(
    inst: &FamilyInstance,
) -> Result<(PolyMap, TypeOneWitness, Certificate)> {
    let params = &inst.params;
    let kappa = params.kappa();
    let mut cert = Certificate::new(format!("corollary p={} q={}", params.p, params.q));
    cert.absorb(verify_theorem(inst)?);

    let (reduced, witness) = lemma_reduce(&inst.h, &kappa, params.s())?;
    let mut cor = Certificate::new("corollary");
    let degrees = reduced.degrees()?;
    let (p, m) = (params.p as i64, params.m);
    cor.push_eq("deg h1' = 2m", 2 * m, degrees[0]);
    cor.push_eq("deg h2' = (2p+1)m", (2 * p + 1) * m, degrees[1]);
    cor.push_eq("deg h3' = 2pm+p+1", params.reduced_degree(), degrees[2]);
    cor.push_eq("deg h2' = deg h2", inst.h.degrees()?[1], degrees[1]);
    let l = p;
    cor.push(
        "l deg h1 < deg h3' < deg h2' < (l+1) deg h1",
        format!("{} < d3 < d2 < {}", l * degrees[0], (l + 1) * degrees[0]),
        format!("d3 = {}, d2 = {}", degrees[2], degrees[1]),
        l * degrees[0] < degrees[2] && degrees[2] < degrees[1] && degrees[1] < (l + 1) * degrees[0],
    );
    cor.push_eq("H' carries a generator word", true, reduced.is_tame());
    let candidates = prefilter_type_one(&reduced)?;
    cor.push_eq(
        "prefilter contains (identity order, s)",
        true,
        candidates.contains(&([0, 1, 2], params.s())),
    );
    cert.absorb(cor);
    cert.absorb(check_type_one(&reduced, &witness)?);
    Ok((reduced, witness, cert))
}

/// The Nagata map `exp(w delta)` and its inverse `exp(-w delta)`, where
/// `w = x1 x3 + x2^2` and `delta = (-2 x2, x3, 0)`. No generator word is
/// attached.
pub fn nagata() -> Result<(PolyMap, PolyMap)> {
    let w = &(&x(0) * &x(2)) + &x(1).pow(2)?;
    let delta = Derivation::new(vec![x(1).scale(&rat(-2)), x(2), Polynomial::zero(3)])?;
    let forward = delta.times(&w)?;
    let n = forward.exp_map(None)?;
    let n_inv = forward.negate().exp_map(None)?;
    Ok((n.without_word(), n_inv.without_word()))
}

/// Checks on the Nagata map: the literal images, two-sided inverse, degree,
/// Jacobian and an empty type-I prefilter.
pub fn nagata_certificate() -> Result<Certificate> {
    let (n, n_inv) = nagata()?;
    let mut cert = Certificate::new("nagata");
    let w = &(&x(0) * &x(2)) + &x(1).pow(2)?;
    let literal = [
        &(&x(0) - &(&w * &x(1)).scale(&rat(2))) - &(&w.pow(2)? * &x(2)),
        &x(1) + &(&w * &x(2)),
        x(2),
    ];
    for (i, lit) in literal.iter().enumerate() {
        cert.push_eq(
            format!("N(x{}) matches the literal formula", i + 1),
            lit.render(),
            n.image(i).render(),
        );
    }
    cert.push_eq(
        "N o N^-1 = identity",
        true,
        n.compose(&n_inv)?.is_identity(),
    );
    cert.push_eq(
        "N^-1 o N = identity",
        true,
        n_inv.compose(&n)?.is_identity(),
    );
    cert.push_eq("deg N = 9", 9, n.map_degree()?);
    cert.push_eq(
        "Jacobian determinant = 1",
        "1".to_string(),
        n.jacobian_determinant()?.render(),
    );
    let candidates = prefilter_type_one(&n)?;
    cert.push_eq("type-I prefilter is empty", 0usize, candidates.len());
    Ok(cert)
}

/// `f = -x1^(4l) x2^(2(2m-1)) - 2 x1^l x2^m` and
/// `g = x1^(6l) x2^(3(2m-1)) + 3 x1^(3l) x2^(3m-1) + (3/2) x2`, with checks.
pub fn kawanoue_pair(l: u32, m: u32) -> Result<(Polynomial, Polynomial, Certificate)> {
    if l < 1 || m < 1 {
        return Err(Error::InvalidParameter(format!(
            "l and m must be at least 1, got l = {l}, m = {m}"
        )));
    }
    let (l, m) = (l as i32, m as i32);
    let f = &term([4 * l, 2 * (2 * m - 1), 0], rat(-1)) - &term([l, m, 0], rat(2));
    let g = &(&term([6 * l, 3 * (2 * m - 1), 0], rat(1)) + &term([3 * l, 3 * m - 1, 0], rat(3)))
        + &term([0, 1, 0], ratio(3, 2));

    let mut cert = Certificate::new(format!("kawanoue l={l} m={m}"));
    let (df, dg) = (f.degree(), g.degree());
    cert.push(
        "deg f : deg g = 2 : 3",
        "2:3",
        format!("{df}:{dg}"),
        3 * df == 2 * dg,
    );
    let sum = &f.pow(3)? + &g.pow(2)?;
    let expected = &term([3 * l, 3 * m, 0], rat(1)) + &term([0, 2, 0], ratio(9, 4));
    cert.push_eq(
        "f^3 + g^2 = x1^(3l) x2^(3m) + 9/4 x2^2",
        expected.render(),
        sum.render(),
    );
    let minor = &(&f.partial_derivative(0)? * &g.partial_derivative(1)?)
        - &(&f.partial_derivative(1)? * &g.partial_derivative(0)?);
    cert.push_eq(
        "Jacobian minor in (x1, x2) is nonzero",
        true,
        !minor.is_zero(),
    );
    let ds = sum.degree();
    if l == 1 && m == 1 {
        cert.push_eq("deg(f^3 + g^2) = deg f", df, ds);
    } else {
        cert.push(
            "deg(f^3 + g^2) < deg f",
            format!("< {df}"),
            ds.to_string(),
            ds < df,
        );
    }
    Ok((f, g, cert))
}

/// The exponent vectors of a polynomial's support, for reports.
pub fn support_of(f: &Polynomial) -> BTreeSet<ExponentVector> {
    f.support()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::parse_poly;

    fn p(s: &str) -> Polynomial {
        parse_poly(s, 3).unwrap()
    }

    #[test]
    fn params_for_small_cases() {
        let a = FamilyParams::new(1, 1).unwrap();
        assert_eq!(a.m, 3);
        assert_eq!(a.c, ratio(8, 3));
        assert_eq!(a.c_list, vec![rat(-4), ratio(8, 3)]);
        let b = FamilyParams::new(2, 1).unwrap();
        assert_eq!(b.m, 5);
        // c = (-2)^3 * (2/3) * (3/5) = -16/5
        assert_eq!(b.c, ratio(-16, 5));
        assert_eq!(b.c_list.last().unwrap(), &b.c);
        assert!(FamilyParams::new(0, 1).is_err());
        assert!(FamilyParams::new(1, 0).is_err());
    }

    #[test]
    fn c_recurrence() {
        // c_0 = -2(p+1) and 2(p-i) c_i = -(2i+3) c_(i+1).
        for pp in 1..6 {
            let params = FamilyParams::new(pp, 1).unwrap();
            assert_eq!(params.c_list[0], rat(-2 * (pp as i64 + 1)));
            for i in 0..pp as usize {
                let lhs = rat(2 * (pp as i64 - i as i64)) * &params.c_list[i];
                let rhs = -rat(2 * i as i64 + 3) * &params.c_list[i + 1];
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn build_p1_q1() {
        let inst = build_family(1, 1).unwrap();
        assert_eq!(inst.f.image(2), &p("x3 + 2*x1*x2 + x2^3"));
        assert_eq!(inst.g.image(1), &p("x2 - 4*x1*x3 + 8/3*x3^3"));
        assert_eq!(inst.omega, WeightVector::from_integers(&[2, 1, 3]));
        assert_eq!(inst.h.degrees().unwrap(), vec![6, 9, 3]);
        assert_eq!(inst.h.map_degree().unwrap(), 18);
    }

    #[test]
    fn build_p2_q1_degree() {
        let inst = build_family(2, 1).unwrap();
        assert_eq!(inst.params.m, 5);
        assert_eq!(inst.f.image(2).degree(), 5);
    }

    #[test]
    fn build_rejects_bad_params() {
        assert!(matches!(
            build_family(0, 1),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn theorem_p1_q1() {
        let inst = build_family(1, 1).unwrap();
        let cert = verify_theorem(&inst).unwrap();
        assert!(cert.overall(), "{cert}");
        assert_eq!(inst.reduced_difference().degree(), 8);
    }

    #[test]
    fn graded_p1_q1() {
        let inst = build_family(1, 1).unwrap();
        let cert = verify_graded_analysis(&inst).unwrap();
        assert!(cert.overall(), "{cert}");
        let lead = inst.p_poly().leading_part(&inst.omega).unwrap();
        assert_eq!(lead, p("16/3*x1^2*x3^2 - 16/3*x2*x3^3"));
        assert_eq!(
            cert.check("deg_omega(E(x_i) x_i^-1) = (pq+p-1, pq+p-1, -m)")
                .unwrap()
                .computed,
            "1, 1, -3"
        );
    }

    #[test]
    fn closed_forms_p1_q1() {
        let inst = build_family(1, 1).unwrap();
        let cert = verify_closed_forms(&inst).unwrap();
        assert!(cert.overall(), "{cert}");
    }

    #[test]
    fn corollary_p1_q1() {
        let (h, w, cert) = corollary_automorphism(1, 1).unwrap();
        assert!(cert.overall(), "{cert}");
        assert_eq!(h.degrees().unwrap(), vec![6, 9, 8]);
        assert_eq!(w.s, 3);
        assert_eq!(w.alpha, rat(1));
        assert_eq!(w.phi_expr, parse_poly("x2^2 + 64/9*x1^3", 2).unwrap());
        assert!(h.is_tame());
    }

    #[test]
    fn corollary_matches_explicit_composition() {
        let inst = build_family(1, 1).unwrap();
        let (reduced, _, _) = corollary_from_instance(&inst).unwrap();
        let phi = &p("x1^3").scale(&inst.params.kappa()) - &p("x2^2");
        let g1 = crate::automorphism::make_elementary(2, phi).unwrap();
        let g2 = crate::automorphism::make_elementary(1, p("x3")).unwrap();
        let composed = inst.h.compose(&g1).unwrap().compose(&g2).unwrap();
        assert_eq!(reduced.images(), composed.images());
        assert_eq!(
            reduced.word().unwrap().realize(3).unwrap(),
            reduced.images().to_vec()
        );
    }

    #[test]
    fn nagata_checks() {
        let cert = nagata_certificate().unwrap();
        assert!(cert.overall(), "{cert}");
        let (n, _) = nagata().unwrap();
        assert!(!n.is_tame());
        assert_eq!(n.image(0).degree(), 5);
    }

    #[test]
    fn kawanoue_l1_m1() {
        let (f, g, cert) = kawanoue_pair(1, 1).unwrap();
        assert!(cert.overall(), "{cert}");
        assert_eq!(f, p("-x1^4*x2^2 - 2*x1*x2"));
        assert_eq!(f.degree(), 6);
        assert_eq!(g.degree(), 9);
        assert!(kawanoue_pair(0, 1).is_err());
    }
}
