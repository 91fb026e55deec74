//! Strategies and property bodies shared by the property suite and the
//! acceptance run.
#![allow(dead_code)]

use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed, TestCaseError};
use serde_json::Value;

use tameforge::automorphism::{bracket_degree, make_affine, make_elementary, PolyMap};
use tameforge::derivation::Derivation;
use tameforge::polyring::{
    parse_laurent, parse_poly, ratio, Degree, ExponentVector, Polynomial, WeightVector,
};

pub type Outcome = Result<(), TestCaseError>;

pub const SEED: u64 = 0x7a3e_f09e_2026_1019;

pub fn config() -> Config {
    Config {
        cases: 256,
        rng_seed: RngSeed::Fixed(SEED),
        failure_persistence: None,
        ..Config::default()
    }
}

pub fn rational() -> impl Strategy<Value = BigRational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| ratio(n, d))
}

pub fn nonzero_rational() -> impl Strategy<Value = BigRational> {
    rational().prop_filter("nonzero", |r| !r.is_zero())
}

/// Polynomials in `nvars` variables, each listed variable with exponent up to
/// `max_exp`, at most `max_terms` terms.
pub fn poly_in(
    vars: Vec<usize>,
    nvars: usize,
    max_exp: i32,
    max_terms: usize,
) -> impl Strategy<Value = Polynomial> {
    let k = vars.len();
    prop::collection::vec(
        (prop::collection::vec(0..=max_exp, k), rational()),
        0..=max_terms,
    )
    .prop_map(move |terms| {
        let terms = terms.into_iter().map(|(e, c)| {
            let mut full = vec![0i32; nvars];
            for (slot, &v) in vars.iter().enumerate() {
                full[v] = e[slot];
            }
            (ExponentVector::new(&full), c)
        });
        Polynomial::from_terms(nvars, terms).expect("valid terms")
    })
}

pub fn poly3() -> impl Strategy<Value = Polynomial> {
    poly_in(vec![0, 1, 2], 3, 3, 5)
}

pub fn nonzero_poly3() -> impl Strategy<Value = Polynomial> {
    poly3().prop_filter("nonzero", |f| !f.is_zero())
}

pub fn laurent3() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(
        (prop::collection::vec(-3i32..=3, 3), nonzero_rational()),
        1..=5,
    )
    .prop_map(|terms| {
        let terms = terms.into_iter().map(|(e, c)| (ExponentVector::new(&e), c));
        Polynomial::from_laurent_terms(3, terms)
            .expect("valid terms")
            .into_laurent()
    })
}

pub fn weights() -> impl Strategy<Value = WeightVector> {
    prop::collection::vec((-3i64..=5, 1i64..=3).prop_map(|(n, d)| ratio(n, d)), 3)
        .prop_map(WeightVector::new)
}

/// Triangular derivations with `Delta(x1)` constant, `Delta(x2)` in `Q[x1]`,
/// `Delta(x3)` in `Q[x1, x2]`.
pub fn triangular_derivation() -> impl Strategy<Value = Derivation> {
    (
        rational(),
        poly_in(vec![0], 3, 2, 2),
        poly_in(vec![0, 1], 3, 2, 2),
    )
        .prop_map(|(c, d2, d3)| {
            Derivation::new(vec![Polynomial::constant(3, c), d2, d3]).expect("three images")
        })
}

pub fn elementary_step() -> impl Strategy<Value = PolyMap> {
    (0usize..3).prop_flat_map(|i| {
        let others: Vec<usize> = (0..3).filter(|&j| j != i).collect();
        poly_in(others, 3, 1, 3)
            .prop_map(move |phi| make_elementary(i, phi).expect("phi avoids x_i"))
    })
}

pub fn affine_step() -> impl Strategy<Value = PolyMap> {
    (
        prop::collection::vec(prop::collection::vec(-2i64..=2, 3), 3),
        prop::collection::vec(rational(), 3),
    )
        .prop_filter_map("singular", |(rows, shift)| {
            let matrix: Vec<Vec<BigRational>> = rows
                .iter()
                .map(|r| r.iter().map(|&v| ratio(v, 1)).collect())
                .collect();
            make_affine(matrix, shift).ok()
        })
}

pub fn tame_word() -> impl Strategy<Value = PolyMap> {
    prop::collection::vec(prop_oneof![elementary_step(), affine_step()], 1..=3).prop_map(|steps| {
        steps
            .into_iter()
            .reduce(|a, b| a.compose(&b).expect("same nvars"))
            .expect("at least one step")
    })
}

pub fn small_map() -> impl Strategy<Value = Vec<Polynomial>> {
    prop::collection::vec(poly_in(vec![0, 1, 2], 3, 2, 3), 3)
}

#[allow(clippy::eq_op)]
pub fn ring_laws(f: Polynomial, g: Polynomial, h: Polynomial) -> Outcome {
    let zero = Polynomial::zero(3);
    let one = Polynomial::one(3);
    prop_assert_eq!(&f + &g, &g + &f);
    prop_assert_eq!(&f * &g, &g * &f);
    prop_assert_eq!(&(&f + &g) + &h, &f + &(&g + &h));
    prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
    prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
    prop_assert_eq!(&f + &zero, f.clone());
    prop_assert_eq!(&f * &one, f.clone());
    prop_assert!((&f - &f).is_zero());
    prop_assert_eq!(&f + &(-&f), zero);
    Ok(())
}

pub fn grading_is_multiplicative(f: Polynomial, g: Polynomial, eta: WeightVector) -> Outcome {
    let fg = &f * &g;
    let lead = fg.leading_part(&eta).unwrap();
    let product = &f.leading_part(&eta).unwrap() * &g.leading_part(&eta).unwrap();
    prop_assert_eq!(lead, product);
    let sum = f.weighted_degree(&eta).unwrap() + g.weighted_degree(&eta).unwrap();
    prop_assert_eq!(fg.weighted_degree(&eta).unwrap(), sum);
    Ok(())
}

pub fn leading_part_keeps_degree(f: Polynomial, eta: WeightVector) -> Outcome {
    let lead = f.leading_part(&eta).unwrap();
    prop_assert_eq!(
        lead.weighted_degree(&eta).unwrap(),
        f.weighted_degree(&eta).unwrap()
    );
    prop_assert_eq!(lead.leading_part(&eta).unwrap(), lead.clone());
    let rest = &f - &lead;
    prop_assert!(rest.weighted_degree(&eta).unwrap() < f.weighted_degree(&eta).unwrap());
    Ok(())
}

pub fn exp_map_is_a_homomorphism(delta: Derivation, f: Polynomial, g: Polynomial) -> Outcome {
    let map = delta.exp_map(None).unwrap();
    let (ef, eg) = (map.apply(&f).unwrap(), map.apply(&g).unwrap());
    prop_assert_eq!(map.apply(&(&f * &g)).unwrap(), &ef * &eg);
    prop_assert_eq!(map.apply(&(&f + &g)).unwrap(), &ef + &eg);
    let back = delta.negate().exp_map(None).unwrap();
    prop_assert!(map.compose(&back).unwrap().is_identity());
    prop_assert!(map.is_tame());
    Ok(())
}

pub fn word_inverse_round_trips(map: PolyMap) -> Outcome {
    let inverse = map.invert().unwrap();
    prop_assert!(map.compose(&inverse).unwrap().is_identity());
    prop_assert!(inverse.compose(&map).unwrap().is_identity());
    let word = map.word().unwrap();
    prop_assert_eq!(word.realize(3).unwrap(), map.images().to_vec());
    let twice = word.inverse().unwrap().inverse().unwrap();
    prop_assert_eq!(&twice, word);
    prop_assert!(!map.jacobian_determinant().unwrap().is_zero());
    Ok(())
}

pub fn bracket_symmetric_and_bounded(f: Polynomial, g: Polynomial) -> Outcome {
    let b = bracket_degree(&f, &g).unwrap();
    prop_assert_eq!(b.clone(), bracket_degree(&g, &f).unwrap());
    let bound = f.total_degree().unwrap() + g.total_degree().unwrap();
    prop_assert!(b <= bound);
    prop_assert_eq!(bracket_degree(&f, &f).unwrap(), Degree::MinusInfinity);
    Ok(())
}

pub fn parse_render_round_trip(f: Polynomial, l: Polynomial) -> Outcome {
    prop_assert_eq!(parse_poly(&f.render(), 3).unwrap(), f.clone());
    prop_assert_eq!(parse_laurent(&l.render(), 3).unwrap(), l.clone());
    prop_assert_eq!(f.to_string(), f.render());
    Ok(())
}

/// JSON pointers of every scalar leaf.
pub fn leaf_paths(v: &Value) -> Vec<String> {
    fn walk(v: &Value, prefix: String, out: &mut Vec<String>) {
        match v {
            Value::Object(map) => {
                for (k, child) in map {
                    walk(child, format!("{prefix}/{k}"), out);
                }
            }
            Value::Array(items) => {
                for (i, child) in items.iter().enumerate() {
                    walk(child, format!("{prefix}/{i}"), out);
                }
            }
            _ => out.push(prefix),
        }
    }
    let mut out = Vec::new();
    walk(v, String::new(), &mut out);
    out
}

/// A different value of the same kind.
pub fn tamper(v: &Value) -> Value {
    match v {
        Value::Bool(b) => Value::Bool(!b),
        Value::Number(n) => Value::from(n.as_i64().unwrap_or(0) + 1),
        Value::String(s) if s.is_empty() => Value::String("0".into()),
        Value::String(s) => Value::String(format!("{s}1")),
        Value::Null => Value::String("x".into()),
        other => other.clone(),
    }
}
