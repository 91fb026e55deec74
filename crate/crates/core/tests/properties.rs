//! Randomized algebraic properties. Every block runs 256 cases from a fixed
//! seed, so failures reproduce exactly.

mod common;

use num_rational::BigRational;
use proptest::prelude::*;

use common::*;
use tameforge::automorphism::PolyMap;
use tameforge::family::build_family;
use tameforge::polyring::{parse_poly, ratio, solve_linear, Polynomial};
use tameforge::sureduction::homogeneous_membership;

proptest! {
    #![proptest_config(config())]

    #[test]
    fn ring_laws(f in poly3(), g in poly3(), h in poly3()) {
        common::ring_laws(f, g, h)?;
    }

    #[test]
    fn grading_is_multiplicative(f in laurent3(), g in laurent3(), eta in weights()) {
        common::grading_is_multiplicative(f, g, eta)?;
    }

    #[test]
    fn leading_part_keeps_degree(f in laurent3(), eta in weights()) {
        common::leading_part_keeps_degree(f, eta)?;
    }

    #[test]
    fn exp_map_is_a_homomorphism(delta in triangular_derivation(), f in poly_in(vec![0, 1, 2], 3, 2, 3), g in poly_in(vec![0, 1, 2], 3, 2, 3)) {
        common::exp_map_is_a_homomorphism(delta, f, g)?;
    }

    #[test]
    fn word_inverse_round_trips(map in tame_word()) {
        common::word_inverse_round_trips(map)?;
    }

    #[test]
    fn bracket_symmetric_and_bounded(f in nonzero_poly3(), g in nonzero_poly3()) {
        common::bracket_symmetric_and_bounded(f, g)?;
    }

    #[test]
    fn parse_render_round_trip(f in poly3(), l in laurent3()) {
        common::parse_render_round_trip(f, l)?;
    }

    #[test]
    fn chain_rule(f in poly_in(vec![0, 1, 2], 3, 2, 3), images in small_map(), i in 0usize..3) {
        let composed = f.substitute(&images).unwrap();
        let lhs = composed.partial_derivative(i).unwrap();
        let mut rhs = Polynomial::zero(3);
        for (j, img) in images.iter().enumerate() {
            let outer = f.partial_derivative(j).unwrap().substitute(&images).unwrap();
            rhs = &rhs + &(&outer * &img.partial_derivative(i).unwrap());
        }
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn composition_is_associative(a in small_map(), b in small_map(), c in small_map()) {
        let (a, b, c) = (PolyMap::new(a).unwrap(), PolyMap::new(b).unwrap(), PolyMap::new(c).unwrap());
        let left = a.compose(&b).unwrap().compose(&c).unwrap();
        let right = a.compose(&b.compose(&c).unwrap()).unwrap();
        prop_assert_eq!(left.images(), right.images());
    }

    #[test]
    fn substitution_respects_omega(f in nonzero_poly3()) {
        let inst = build_family(1, 1).unwrap();
        let image = inst.f.apply(&f).unwrap();
        let weighted = f.weighted_degree(&inst.omega).unwrap();
        let total = image.total_degree().unwrap().map(|d| ratio(d, 1));
        prop_assert!(total <= weighted);
        if f.leading_part(&inst.omega).unwrap().num_terms() == 1 {
            prop_assert_eq!(total, weighted);
        }
    }

    #[test]
    fn membership_reconstructs(i in 0u32..3, j in 0u32..3, c1 in nonzero_rational(), c2 in rational()) {
        let a = parse_poly("x1^2 + x2*x3", 3).unwrap();
        let b = parse_poly("x3^3 - x1*x2^2", 3).unwrap();
        // a^3 and b^2 share degree 6, so include both to exercise the solver.
        let h = &(&a.pow(3 * i).unwrap() * &b.pow(2 * j).unwrap()).scale(&c1)
            + &a.pow(3 * (i + j)).unwrap().scale(&c2);
        prop_assume!(!h.is_zero());
        let coeffs = homogeneous_membership(&h, &a, &b).unwrap().expect("member by construction");
        let mut rebuilt = Polynomial::zero(3);
        for ((u, v), c) in coeffs {
            rebuilt = &rebuilt + &(&a.pow(u).unwrap() * &b.pow(v).unwrap()).scale(&c);
        }
        prop_assert_eq!(rebuilt, h);
    }

    #[test]
    fn linear_solutions_satisfy_the_system(rows in prop::collection::vec(prop::collection::vec(rational(), 3), 1..=4), x in prop::collection::vec(rational(), 3)) {
        let b: Vec<BigRational> = rows.iter().map(|r| r.iter().zip(&x).map(|(a, v)| a * v).sum()).collect();
        let sol = solve_linear(&rows, &b).unwrap().expect("consistent by construction");
        for (r, rhs) in rows.iter().zip(&b) {
            let lhs: BigRational = r.iter().zip(&sol).map(|(a, v)| a * v).sum();
            prop_assert_eq!(&lhs, rhs);
        }
    }
}
