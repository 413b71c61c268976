use hexaspinor::bivgeo::{build_flag, canonical_form, extract_null_pair, pfaffian, random_compact_bivector, random_special_unitary, FlagBasis};
use hexaspinor::cover::{lift, push_unchecked};
use hexaspinor::curvature::{random_alg_curvature, spintensor_to_tensor, tensor_to_spintensor};
use hexaspinor::norden::{bivector_to_vector, lower_bivector, vector_to_bivector, Bivector4, NordenSet, Spinor};
use hexaspinor::octo::{build_eta8, build_octonion_table, default_octonion_vector, evaluate_solution, quadratic_form, twistor, BitwistorSolution, Vec8};
use hexaspinor::realforms::build_real_form;
use hexaspinor::sample::{self, Rng64};
use hexaspinor::tensors::{antisymmetrize, contract, mat_max_abs, ComplexTensor, Mat4, C64};
use proptest::prelude::*;

fn rng(seed: u64) -> Rng64 {
    sample::rng(seed)
}

fn tensor(rng: &mut Rng64, shape: &[usize]) -> ComplexTensor {
    ComplexTensor::from_fn(shape, |_| sample::complex(rng))
}

fn biv(rng: &mut Rng64) -> Bivector4 {
    Bivector4::antisymmetric_part(&sample::antisymmetric4(rng))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn contraction_is_bilinear(seed in any::<u64>(), ar in -2.0..2.0f64, bi in -2.0..2.0f64) {
        let mut r = rng(seed);
        let (t1, t2, t3) = (tensor(&mut r, &[3, 4]), tensor(&mut r, &[3, 4]), tensor(&mut r, &[4, 2]));
        let (a, b) = (C64::new(ar, 0.5), C64::new(0.25, bi));
        let lhs = contract(&t1.scale(a).add(&t2.scale(b)).unwrap(), &t3, &[(1, 0)]).unwrap();
        let rhs = contract(&t1, &t3, &[(1, 0)]).unwrap().scale(a).add(&contract(&t2, &t3, &[(1, 0)]).unwrap().scale(b)).unwrap();
        prop_assert!(lhs.sub(&rhs).unwrap().max_abs() < 1e-12);
    }

    #[test]
    fn antisymmetrize_is_projector(seed in any::<u64>()) {
        let t = tensor(&mut rng(seed), &[3, 3, 3, 2]);
        let once = antisymmetrize(&t, &[0, 1, 2]).unwrap();
        let twice = antisymmetrize(&once, &[0, 1, 2]).unwrap();
        prop_assert!(twice.sub(&once).unwrap().max_abs() < 1e-14);
    }

    #[test]
    fn bivector_vector_bijection(seed in any::<u64>()) {
        let n = NordenSet::special();
        let mut r = rng(seed);
        let b = biv(&mut r);
        prop_assert!(mat_max_abs(&(vector_to_bivector(&n, &bivector_to_vector(&n, &b)).matrix() - b.matrix())) < 1e-13);
        let (x, y): (Spinor, Spinor) = (sample::vector(&mut r), sample::vector(&mut r));
        let v = bivector_to_vector(&n, &Bivector4::wedge(&x, &y));
        prop_assert!(n.inner(&v, &v).norm() < 1e-10);
    }

    #[test]
    fn push_is_homomorphism_with_sign_kernel(seed in any::<u64>()) {
        let n = NordenSet::special();
        let mut r = rng(seed);
        let (s1, s2) = (sample::special_linear4(&mut r), sample::special_linear4(&mut r));
        let k1 = push_unchecked(&n, &s1);
        prop_assert!(mat_max_abs(&(push_unchecked(&n, &(s1 * s2)) - k1 * push_unchecked(&n, &s2))) < 1e-9);
        prop_assert_eq!(push_unchecked(&n, &-s1), k1);
        let back = lift(&n, &k1, 1e-8).unwrap();
        prop_assert!(mat_max_abs(&(push_unchecked(&n, &back) - k1)) < 1e-8);
    }

    #[test]
    fn curvature_round_trip_is_linear(seed in 0u64..1000, w in -3.0..3.0f64) {
        let n = NordenSet::special();
        let a = random_alg_curvature(seed, 2).unwrap();
        let b = random_alg_curvature(seed + 1000, 2).unwrap();
        let sum = a.add(&b.scale(C64::new(w, 0.0)));
        let rs = tensor_to_spintensor(&n, &sum).unwrap();
        let parts = tensor_to_spintensor(&n, &a).unwrap().to_tensor().add(&tensor_to_spintensor(&n, &b).unwrap().to_tensor().scale(C64::new(w, 0.0))).unwrap();
        prop_assert!(rs.to_tensor().sub(&parts).unwrap().max_abs() < 1e-10);
        prop_assert!(spintensor_to_tensor(&n, &rs).unwrap().max_abs_diff(&sum) < 1e-9 * (1.0 + sum.max_abs()));
    }

    #[test]
    fn null_pair_gauge_fixed(seed in any::<u64>(), mag in 0.2..5.0f64, phase in 0.0..6.2f64) {
        let mut r = rng(seed);
        let x: Spinor = sample::vector(&mut r);
        let mut y: Spinor = sample::vector(&mut r);
        let k = (0..4).fold(0, |b, j| if x[j].norm() > x[b].norm() { j } else { b });
        let d = x.dot(&y) / x[k];
        y[k] -= d;
        let lam = C64::from_polar(mag, phase);
        let a = extract_null_pair(&(x * y.transpose()), 1e-9).unwrap();
        let b = extract_null_pair(&((x * lam) * (y / lam).transpose()), 1e-9).unwrap();
        prop_assert!((a.x - b.x).iter().chain((a.y - b.y).iter()).all(|z| z.norm() < 1e-9));
    }

    #[test]
    fn canonical_form_conjugation_invariant(seed in any::<u64>()) {
        let rf = build_real_form(6, 0).unwrap();
        let mut r = rng(seed);
        let m = random_compact_bivector(&mut r);
        let u = random_special_unitary(&mut r);
        let a = canonical_form(&rf, &m, 1e-9).unwrap();
        let b = canonical_form(&rf, &(u * m * u.adjoint()), 1e-9).unwrap();
        prop_assert!(a.eigenvalues.iter().sum::<C64>().norm() < 1e-12);
        for (p, q) in a.eigenvalues.iter().zip(&b.eigenvalues) {
            prop_assert!((p - q).norm() < 1e-9);
        }
    }

    #[test]
    fn flag_relations_at_any_angle(theta in -3.1..3.1f64, scale in 0.3..3.0f64) {
        let rf = build_real_form(2, 4).unwrap();
        let f = build_flag(&rf, &FlagBasis::standard().rotate(theta).scale(scale), 1e-9).unwrap();
        prop_assert!(f.max_residual() < 1e-10);
    }

    #[test]
    fn isotropy_along_solution_family(seed in any::<u64>()) {
        let n = NordenSet::special();
        let mut r = rng(seed);
        let sol = BitwistorSolution { x_dot: sample::vector(&mut r), y_dot: sample::vector(&mut r) };
        let b = biv(&mut r);
        let (x, y) = evaluate_solution(&sol, &b);
        let base = quadratic_form(&twistor(&sol.x_dot, &sol.y_dot));
        prop_assert!((quadratic_form(&twistor(&x, &y)) - base).norm() < 1e-10 * (1.0 + base.norm()));
        let low = lower_bivector(&n, &b);
        let pf = pfaffian(&b);
        prop_assert!((b.matrix().component_mul(low.matrix()).sum() * 0.5 - pf).norm() < 1e-10);
        prop_assert!(mat_max_abs(&(b.matrix() * low.matrix() + Mat4::identity() * (pf * 0.5))) < 1e-10);
    }

    #[test]
    fn octonion_norm_is_multiplicative(seed in any::<u64>()) {
        let t = build_octonion_table(&build_eta8(), &default_octonion_vector(), 1e-12).unwrap();
        let mut r = rng(seed);
        let (x, y): (Vec8, Vec8) = (sample::vector(&mut r), sample::vector(&mut r));
        let nrm = |v: &Vec8| v.iter().map(|z| z * z).sum::<C64>();
        let want = nrm(&x) * nrm(&y);
        prop_assert!((nrm(&t.mul(&x, &y)) - want).norm() <= 1e-9 * want.norm());
    }
}
