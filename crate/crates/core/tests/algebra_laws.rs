use car_core::algebra::{car_annihilator, car_creator};
use car_core::space::polarization_basis;
use car_core::{AlgElement, Complex64, ConjSpace, Grade, Vector};
use proptest::prelude::*;

fn space(m: usize) -> ConjSpace {
    ConjSpace::new(m).unwrap()
}

fn random_vector(m: usize, seed: u64) -> Vector {
    // reuse the element generator for coefficients: degree-1 part only
    let a = AlgElement::random(space(m), 1, seed).unwrap();
    let coords = (0..m).map(|j| a.coefficient(1 << j)).collect();
    Vector::new(space(m), coords).unwrap()
}

fn diff(a: &AlgElement, b: &AlgElement) -> f64 {
    a.max_abs_diff(b).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn anticommutation_relation(m in 1usize..7, s1: u64, s2: u64) {
        let k = random_vector(m, s1);
        let k2 = random_vector(m, s2);
        let bk_star = AlgElement::b_of(&k.conjugate());
        prop_assert!(diff(&bk_star, &AlgElement::b_of(&k).adjoint()) <= 1e-15);
        let bk2 = AlgElement::b_of(&k2);
        let lhs = bk_star.anticommutator(&bk2).unwrap();
        let rhs = AlgElement::scalar(space(m), k.inner(&k2).unwrap());
        prop_assert!(diff(&lhs, &rhs) <= 1e-12);
    }

    #[test]
    fn associativity(m in 1usize..6, s: u64) {
        let a = AlgElement::random(space(m), m, s).unwrap();
        let b = AlgElement::random(space(m), m, s ^ 1).unwrap();
        let c = AlgElement::random(space(m), m, s ^ 2).unwrap();
        prop_assert!(diff(&(&(&a * &b) * &c), &(&a * &(&b * &c))) <= 1e-12);
    }

    #[test]
    fn star_algebra_laws(m in 1usize..6, s: u64, re in -2.0f64..2.0, im in -2.0f64..2.0) {
        let a = AlgElement::random(space(m), m, s).unwrap();
        let b = AlgElement::random(space(m), m, s.wrapping_add(7)).unwrap();
        prop_assert!(diff(&(&a * &b).adjoint(), &(&b.adjoint() * &a.adjoint())) <= 1e-12);
        prop_assert_eq!(a.adjoint().adjoint(), a.clone());
        let lambda = Complex64::new(re, im);
        prop_assert!(diff(&a.scale(lambda).adjoint(), &a.adjoint().scale(lambda.conj())) <= 1e-15);
    }

    #[test]
    fn gamma_is_star_automorphism(m in 1usize..6, s: u64) {
        let a = AlgElement::random(space(m), m, s).unwrap();
        let b = AlgElement::random(space(m), m, !s).unwrap();
        prop_assert!(diff(&(&a * &b).gamma(), &(&a.gamma() * &b.gamma())) <= 1e-12);
        prop_assert_eq!(a.adjoint().gamma(), a.gamma().adjoint());
        prop_assert_eq!(a.gamma().gamma(), a.clone());
    }

    #[test]
    fn grade_projections(m in 1usize..6, s: u64, g in 0u8..2, h in 0u8..2) {
        let grade = |x: u8| if x == 0 { Grade::Even } else { Grade::Odd };
        let a = AlgElement::random(space(m), m, s).unwrap();
        let b = AlgElement::random(space(m), m, s ^ 0xff).unwrap();
        prop_assert_eq!(&a.even_part() + &a.odd_part(), a.clone());
        let half = Complex64::new(0.5, 0.0);
        prop_assert!(diff(&a.even_part(), &(&a + &a.gamma()).scale(half)) <= 1e-15);
        prop_assert!(diff(&a.odd_part(), &(&a - &a.gamma()).scale(half)) <= 1e-15);
        let pa = a.grade_project(grade(g));
        let pb = b.grade_project(grade(h));
        let prod = &pa * &pb;
        prop_assert!(prod.is_zero() || prod.pure_grade() == Some(grade(g) + grade(h)));
    }

    #[test]
    fn trace_laws(m in 1usize..6, s: u64) {
        let a = AlgElement::random(space(m), m, s).unwrap();
        let b = AlgElement::random(space(m), m, s.rotate_left(3)).unwrap();
        prop_assert!(((&a * &b).trace() - (&b * &a).trace()).norm() <= 1e-12);
        let pos = (&a.adjoint() * &a).trace();
        prop_assert!(pos.re >= 0.0 && pos.im.abs() <= 1e-12);
        prop_assert!((pos.re - a.trace_norm().powi(2)).abs() <= 1e-12);
    }

    #[test]
    fn split_reassembles(m in 1usize..7, s: u64, j in 0usize..7) {
        prop_assume!(j < m);
        let a = AlgElement::random(space(m), m, s).unwrap();
        let (x, y) = a.split_off_generator(j);
        let cj = AlgElement::generator(space(m), j).unwrap();
        prop_assert!(x.avoids_generator(j) && y.avoids_generator(j));
        prop_assert!(diff(&(&x + &(&cj * &y)), &a) <= 1e-15);
    }

    #[test]
    fn json_round_trip(m in 1usize..6, s: u64) {
        let a = AlgElement::random(space(m), m, s).unwrap();
        let back: AlgElement = serde_json::from_str(&serde_json::to_string(&a).unwrap()).unwrap();
        prop_assert_eq!(back, a);
    }
}

#[test]
fn generators_square_to_one_and_anticommute() {
    let s = space(5);
    let one = AlgElement::one(s);
    for i in 0..5 {
        let ci = AlgElement::generator(s, i).unwrap();
        assert_eq!(&ci * &ci, one);
        assert_eq!(ci.adjoint(), ci);
        for j in 0..i {
            let cj = AlgElement::generator(s, j).unwrap();
            assert!((&ci * &cj + &cj * &ci).is_zero());
        }
    }
}

#[test]
fn trace_is_faithful_on_monomials() {
    let m = 4;
    let s = space(m);
    for a in 0..1u64 << m {
        for b in 0..1u64 << m {
            let ca = AlgElement::monomial(s, a, Complex64::ONE).unwrap();
            let cb = AlgElement::monomial(s, b, Complex64::ONE).unwrap();
            let t = (&ca.adjoint() * &cb).trace();
            let expected = if a == b { 1.0 } else { 0.0 };
            assert_eq!(t, Complex64::new(expected, 0.0));
        }
    }
}

#[test]
fn monomial_counts() {
    for m in 1..=8 {
        let s = space(m);
        let full: Vec<u64> = (0..1u64 << m).collect();
        let even = full
            .iter()
            .filter(|x| Grade::of_mask(**x) == Grade::Even)
            .count();
        assert_eq!(full.len(), 1 << m);
        assert_eq!(even, 1 << (m - 1));
        let a = AlgElement::random(s, m, 3).unwrap();
        assert_eq!(a.len(), 1 << m);
        assert_eq!(a.even_part().len(), 1 << (m - 1));
    }
}

#[test]
fn car_relations_on_polarization() {
    // a(f)^2 for f = f1 expands to ((c1 + i c2)/2)^2 = (1 - 1 + i(c1c2 + c2c1))/4 = 0
    let f = polarization_basis(2).unwrap();
    let a = car_annihilator(&f[0]).unwrap();
    assert!((&a * &a).is_zero());
    for m in [2, 4, 6] {
        let basis = polarization_basis(m).unwrap();
        for (p, fp) in basis.iter().enumerate() {
            for (q, fq) in basis.iter().enumerate() {
                let ap = car_annihilator(fp).unwrap();
                let aq = car_annihilator(fq).unwrap();
                let aq_star = car_creator(fq).unwrap();
                assert!(
                    ap.anticommutator(&aq)
                        .unwrap()
                        .max_abs_diff(&AlgElement::zero(space(m)))
                        .unwrap()
                        <= 1e-12
                );
                let expected = if p == q { 1.0 } else { 0.0 };
                let rhs = AlgElement::scalar(space(m), Complex64::new(expected, 0.0));
                assert!(
                    ap.anticommutator(&aq_star)
                        .unwrap()
                        .max_abs_diff(&rhs)
                        .unwrap()
                        <= 1e-12
                );
            }
        }
    }
}
