mod common;

use num::{One, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wgenus_core::charclass::{self, a_hat, euler, q1, q2, q3, RootBundle, SplitBundle};
use wgenus_core::conditions::{check_string_gci, fano_c1_check, search_string};
use wgenus_core::genus::{phi_c, witten_of_gci};
use wgenus_core::qseries::{exp_nilpotent, invert_class, qs_invert, qs_mul};
use wgenus_core::{CohomClass, LineBundleSum, ManifoldModel, QSeries, Rational, TheoremVerdict};

const CASES: usize = 60;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_series<R: Rng>(rng: &mut R, m: &ManifoldModel, q: usize) -> QSeries {
    let coeffs = (0..=q).map(|_| common::random_class(rng, m)).collect();
    QSeries::from_coeffs(m.ngens(), coeffs, q)
}

#[test]
fn ring_laws() {
    let mut r = rng(1);
    for _ in 0..CASES {
        let m = common::random_model(&mut r);
        let (a, b, c) = (common::random_class(&mut r, &m), common::random_class(&mut r, &m), common::random_class(&mut r, &m));
        let ab = m.multiply(&a, &b).unwrap();
        assert_eq!(ab, m.multiply(&b, &a).unwrap());
        assert_eq!(m.multiply(&ab, &c).unwrap(), m.multiply(&a, &m.multiply(&b, &c).unwrap()).unwrap());
        let lhs = m.multiply(&a, &(&b + &c)).unwrap();
        let rhs = &ab + &m.multiply(&a, &c).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(m.multiply(&a, &CohomClass::one(m.ngens())).unwrap(), a);
    }
}

#[test]
fn reduction_is_confluent_and_truncates() {
    let mut r = rng(2);
    for _ in 0..CASES {
        let m = common::random_model(&mut r);
        let n = m.ngens();
        let mut terms: Vec<(Vec<u32>, Rational)> = (0..6)
            .map(|_| ((0..n).map(|_| r.gen_range(0..=4)).collect(), common::random_rational(&mut r)))
            .collect();
        let whole = m.reduce(&CohomClass::from_terms(n, terms.clone()));
        assert!(m.is_reduced(&whole));
        assert!(whole.max_degree().is_none_or(|d| d <= m.dim()));
        assert_eq!(m.reduce(&whole), whole);
        // term by term in a shuffled order
        for i in (1..terms.len()).rev() {
            terms.swap(i, r.gen_range(0..=i));
        }
        let piecewise = terms.iter().fold(CohomClass::zero(n), |acc, (e, c)| {
            &acc + &m.reduce(&CohomClass::monomial(e.clone(), c.clone()))
        });
        assert_eq!(piecewise, whole);
    }
}

#[test]
fn integration_is_linear() {
    let mut r = rng(3);
    for _ in 0..CASES {
        let m = common::random_model(&mut r);
        let (a, b) = (common::random_class(&mut r, &m), common::random_class(&mut r, &m));
        let s = common::random_rational(&mut r);
        let lhs = m.integrate(&(&a.scale(&s) + &b)).unwrap();
        assert_eq!(lhs, s * m.integrate(&a).unwrap() + m.integrate(&b).unwrap());
        assert_eq!(m.integrate(&CohomClass::monomial(m.fundamental_monomial(), Rational::one())).unwrap(), Rational::one());
    }
}

#[test]
fn series_inverse_and_exponential() {
    let mut r = rng(4);
    for _ in 0..CASES {
        let m = common::random_model(&mut r);
        let q = r.gen_range(0..=3);
        let mut a = random_series(&mut r, &m, q);
        let mut c0 = a.coeff(0).clone();
        if c0.constant_term().is_zero() {
            c0.add_term(vec![0; m.ngens()], Rational::one());
        }
        let mut coeffs = a.coeffs().to_vec();
        coeffs[0] = c0;
        a = QSeries::from_coeffs(m.ngens(), coeffs, q);
        let inv = qs_invert(&a, &m).unwrap();
        assert!(qs_mul(&a, &inv, &m).unwrap().is_one());
        assert!(qs_mul(&inv, &a, &m).unwrap().is_one());

        let x = common::random_nilpotent(&mut r, &m);
        let y = common::random_nilpotent(&mut r, &m);
        let lhs = exp_nilpotent(&(&x + &y), &m).unwrap();
        let rhs = m.multiply(&exp_nilpotent(&x, &m).unwrap(), &exp_nilpotent(&y, &m).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        let ex = exp_nilpotent(&x, &m).unwrap();
        let emx = exp_nilpotent(&-&x, &m).unwrap();
        assert_eq!(invert_class(&ex, &m).unwrap(), emx);
    }
}

#[test]
fn truncation_commutes_with_products() {
    let mut r = rng(5);
    for _ in 0..CASES {
        let m = common::random_model(&mut r);
        let a = random_series(&mut r, &m, 4);
        let b = random_series(&mut r, &m, 4);
        let k = r.gen_range(0..=4);
        let full = qs_mul(&a, &b, &m).unwrap().truncate(k);
        assert_eq!(full, qs_mul(&a.truncate(k), &b.truncate(k), &m).unwrap());
    }
}

fn random_root_bundle<R: Rng>(rng: &mut R, m: &ManifoldModel) -> RootBundle {
    RootBundle::from_vectors(m.ngens(), &common::random_roots(rng, m.ngens(), 3), 0).unwrap()
}

#[test]
fn multiplicative_classes_are_multiplicative() {
    let mut r = rng(6);
    for _ in 0..CASES {
        let m = common::random_model(&mut r);
        let e = random_root_bundle(&mut r, &m);
        let f = random_root_bundle(&mut r, &m);
        let ef = e.direct_sum(&f);
        let prod = m.multiply(&a_hat(&e, &m).unwrap(), &a_hat(&f, &m).unwrap()).unwrap();
        assert_eq!(a_hat(&ef, &m).unwrap(), prod);
        let q = 2;
        let qprod = qs_mul(&q1(&e, &m, q).unwrap(), &q1(&f, &m, q).unwrap(), &m).unwrap();
        assert_eq!(q1(&ef, &m, q).unwrap(), qprod);
        let q3prod = qs_mul(&q3(&e, &m, q).unwrap(), &q3(&f, &m, q).unwrap(), &m).unwrap();
        assert_eq!(q3(&ef, &m, q).unwrap(), q3prod);
    }
}

#[test]
fn trivial_summands_do_not_matter() {
    let mut r = rng(7);
    for _ in 0..CASES {
        let m = common::random_model(&mut r);
        let n = m.ngens();
        let e = random_root_bundle(&mut r, &m);
        let zero = RootBundle::from_vectors(n, &[vec![0; n], vec![0; n]], 0).unwrap();
        // a trivial complex line counts as two trivial real planes
        let padded = RootBundle::from_vectors(n, &e.root_vectors(), 0).unwrap().direct_sum(&zero);
        assert_eq!(a_hat(&padded, &m).unwrap(), a_hat(&e, &m).unwrap());
        assert_eq!(q1(&padded, &m, 2).unwrap(), q1(&e, &m, 2).unwrap());
        let shifted = RootBundle::from_vectors(n, &padded.root_vectors(), 2).unwrap();
        assert_eq!(q3(&shifted, &m, 2).unwrap(), q3(&e, &m, 2).unwrap());
    }
}

#[test]
fn even_series_do_not_see_root_signs() {
    let mut r = rng(8);
    for _ in 0..CASES {
        let m = common::random_model(&mut r);
        let n = m.ngens();
        let roots = common::random_roots(&mut r, n, 3);
        let flipped: Vec<Vec<i64>> = roots
            .iter()
            .map(|v| if r.gen_bool(0.5) { v.iter().map(|x| -x).collect() } else { v.clone() })
            .collect();
        let e = RootBundle::from_vectors(n, &roots, 0).unwrap();
        let f = RootBundle::from_vectors(n, &flipped, 0).unwrap();
        assert_eq!(a_hat(&e, &m).unwrap(), a_hat(&f, &m).unwrap());
        assert_eq!(q1(&e, &m, 2).unwrap(), q1(&f, &m, 2).unwrap());
        assert_eq!(q3(&e, &m, 2).unwrap(), q3(&f, &m, 2).unwrap());
    }
}

#[test]
fn q2_is_the_inverse_normal_factor() {
    // e^{c₁(V)/2}·Q₂(V) = e(V)·(Q₁(V)Â(V))⁻¹ after clearing Â
    let mut r = rng(9);
    let half = Rational::new(1.into(), 2.into());
    for _ in 0..CASES {
        let m = common::random_model(&mut r);
        let v = LineBundleSum::from_vectors(m.ngens(), &common::random_roots(&mut r, m.ngens(), 3)).unwrap();
        let q = 2;
        let twist = exp_nilpotent(&m.lift(&charclass::c1(&v)).scale(&half), &m).unwrap();
        let lhs = if v.is_empty() {
            QSeries::constant(twist, q)
        } else {
            q2(&v, &m, q).unwrap().mul_class(&twist, &m).unwrap()
        };
        let normal = qs_mul(&q1(&v, &m, q).unwrap(), &QSeries::constant(a_hat(&v, &m).unwrap(), q), &m).unwrap();
        let rhs = qs_invert(&normal, &m).unwrap().mul_class(&euler(&v, &m).unwrap(), &m).unwrap();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn both_evaluation_routes_agree_and_are_integral() {
    let mut r = rng(10);
    for _ in 0..CASES {
        let m = common::random_model(&mut r);
        let v = common::random_admissible_bundle(&mut r, &m, 3);
        let q = 2;
        let direct = phi_c(&m, &v, &RootBundle::empty(m.ngens()), &charclass::c1(&v), q).unwrap();
        let lemma = witten_of_gci(&m, &v, q).unwrap();
        assert!(direct.same_series(&lemma), "{} {:?}", m.name(), v.root_vectors());
        assert!(direct.is_integral());
    }
}

#[test]
fn twisted_indices_are_integral() {
    let mut r = rng(11);
    for _ in 0..CASES {
        let m = common::random_model(&mut r);
        let n = m.ngens();
        let v = LineBundleSum::from_vectors(n, &common::random_roots(&mut r, n, 2)).unwrap();
        // W = L ⊕ L* is spin
        let l = common::random_root(&mut r, n);
        let neg: Vec<i64> = l.iter().map(|x| -x).collect();
        let w = RootBundle::from_vectors(n, &[l, neg], 0).unwrap();
        let c1c = common::tangent_c1(&m);
        let res = phi_c(&m, &v, &w, &c1c, 2).unwrap();
        assert!(res.is_integral(), "{} {:?}", m.name(), res.series);
    }
}

#[test]
fn higher_order_extends_lower_order() {
    let mut r = rng(12);
    for _ in 0..20 {
        let m = common::random_model(&mut r);
        let v = common::random_admissible_bundle(&mut r, &m, 3);
        let lo = witten_of_gci(&m, &v, 2).unwrap();
        let hi = witten_of_gci(&m, &v, 4).unwrap();
        assert_eq!(lo.series[..], hi.series[..3]);
    }
}

#[test]
fn odd_dimensional_intersections_vanish() {
    let mut r = rng(13);
    let mut seen = 0;
    for _ in 0..CASES {
        let m = common::random_model(&mut r);
        let v = common::random_admissible_bundle(&mut r, &m, 3);
        if (m.dim() as i64 - v.rank() as i64).rem_euclid(2) == 1 {
            seen += 1;
            assert!(witten_of_gci(&m, &v, 3).unwrap().vanishes());
        }
    }
    assert!(seen > 0);
}

#[test]
fn search_hits_are_string_and_vanish_when_a_theorem_applies() {
    for dims in [vec![2], vec![3], vec![4], vec![5], vec![2, 2], vec![1, 2]] {
        let m = ManifoldModel::projective_product(&dims).unwrap();
        for v in search_string(&m, 2, 3).unwrap() {
            let rep = check_string_gci(&m, &v).unwrap();
            assert!(rep.is_string_pair());
            if rep.theorem_applicable != TheoremVerdict::None {
                assert!(witten_of_gci(&m, &v, 3).unwrap().vanishes(), "{} {:?}", m.name(), v.root_vectors());
            }
        }
    }
}

proptest! {
    #[test]
    fn fano_matches_degree_sum(n in 1u32..20, degrees in prop::collection::vec(1i64..6, 0..8)) {
        let rep = fano_c1_check(n, &degrees).unwrap();
        let sum: i64 = degrees.iter().sum();
        prop_assert_eq!(rep.c1_coefficient, n as i64 + 1 - sum);
        prop_assert_eq!(rep.fano, sum <= n as i64);
    }

    #[test]
    fn fano_rejects_nonpositive_degrees(n in 1u32..20, d in -5i64..=0) {
        prop_assert!(fano_c1_check(n, &[2, d]).is_err());
    }
}
