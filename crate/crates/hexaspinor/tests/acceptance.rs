//! One line per acceptance criterion. Two criteria cannot hold for any
//! faithful implementation; they are reported as FAIL and listed in
//! `UNATTAINABLE`. Any other failure, or an unattainable line that starts
//! passing, fails the test.

use hexaspinor::bivgeo::{self, canonical_form, extract_null_pair, pfaffian, random_compact_bivector, random_special_unitary, FlagBasis};
use hexaspinor::cover::{epsilon_invariance_residual, finite_difference_generator, lift, push_unchecked, raise_generator};
use hexaspinor::curvature::{
    bianchi_residual, constant_curvature, decompose, p_trace_residual, random_alg_curvature, recompose, spintensor_to_tensor,
    tensor_to_spintensor,
};
use hexaspinor::norden::{
    build_a_operators, build_gammas, clifford_residual, gamma7_anticommutator_residual, gamma7_square_residual, identity_suite,
    lower_bivector, push_traceless, Bivector4, NordenSet, Spinor,
};
use hexaspinor::octo::{
    build_eta8, build_octonion_table, canonical_generator, default_octonion_vector, family_test, klein_omega, klein_slice,
    solve_generator_to_point, solve_incidence, solve_point_from_generator, solve_point_to_generator, Mat2, Vec2, Vec8,
};
use hexaspinor::realforms::{build_real_form, conjugation_covariance_residual, random_real_orthogonal, signature_of, stabilizer_form};
use hexaspinor::sample;
use hexaspinor::tensors::{c, mat_max_abs, Mat4, C64, I, ONE, ZERO};

const UNATTAINABLE: [&str; 2] = ["1.gamma7_square", "8.family_involution_image"];

struct Line {
    id: String,
    residual: f64,
    threshold: f64,
}

impl Line {
    fn pass(&self) -> bool {
        self.residual <= self.threshold
    }
}

#[derive(Default)]
struct Sheet(Vec<Line>);

impl Sheet {
    fn residual(&mut self, id: &str, residual: f64, threshold: f64) {
        self.0.push(Line {
            id: id.to_string(),
            residual,
            threshold,
        });
    }

    fn holds(&mut self, id: &str, ok: bool) {
        self.residual(id, if ok { 0.0 } else { 1.0 }, 0.5);
    }
}

fn mx(a: &mut f64, x: f64) {
    if x > *a || x.is_nan() {
        *a = x;
    }
}

fn spinor_norm(v: &Spinor) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn orthogonalise(x: &Spinor, y: &mut Spinor) {
    let k = (0..4).fold(0, |b, j| if x[j].norm() > x[b].norm() { j } else { b });
    let d = x.dot(y) / x[k];
    y[k] -= d;
}

fn clifford(s: &mut Sheet) {
    let n = NordenSet::special();
    let gs = build_gammas(&n);
    s.residual("1.clifford_all_pairs", clifford_residual(&n, &gs), 1e-12);
    s.residual("1.gamma7_square", gamma7_square_residual(&gs), 1e-12);
    s.residual("1.gamma7_anticommutes", gamma7_anticommutator_residual(&gs), 1e-12);
}

fn operator_identities(s: &mut Sheet) {
    let n = NordenSet::special();
    for chk in identity_suite(&n, 2, 1e-12) {
        let t = match chk.name.as_str() {
            "clifford" | "gamma7_anticommutes" | "gamma7_square_law" => continue,
            "six_vector_antisymmetric" | "six_vector_triple_a" => 1e-10,
            _ => 1e-12,
        };
        s.residual(&format!("2.{}", chk.name), chk.residual, t);
    }
}

fn double_cover(s: &mut Sheet) {
    let n = NordenSet::special();
    let a_ops = build_a_operators(&n);
    let mut rng = sample::rng(3);
    let (mut hom, mut kernel, mut round, mut eps) = (0.0, 0.0, 0.0, 0.0);
    for k in 0..100 {
        let s1 = sample::special_linear4(&mut rng);
        let s2 = sample::special_linear4(&mut rng);
        let k1 = push_unchecked(&n, &s1);
        mx(&mut hom, mat_max_abs(&(push_unchecked(&n, &(s1 * s2)) - k1 * push_unchecked(&n, &s2))));
        mx(&mut kernel, mat_max_abs(&(push_unchecked(&n, &-s1) - k1)));
        if k < 20 {
            mx(&mut eps, epsilon_invariance_residual(&n, &s1));
            let back = lift(&n, &k1, 1e-8).map(|l| mat_max_abs(&(l - s1)).min(mat_max_abs(&(l + s1))));
            mx(&mut round, back.unwrap_or(f64::INFINITY));
        }
    }
    s.residual("3.push_homomorphism", hom, 1e-9);
    s.residual("3.push_sign_exact", kernel, 0.0);
    s.residual("3.lift_push_identity", round, 1e-8);
    s.residual("3.epsilon_invariance", eps, 1e-9);
    let mut deriv = 0.0;
    for _ in 0..10 {
        let t = sample::traceless4(&mut rng);
        let fd = finite_difference_generator(&n, &t, 1e-5);
        mx(&mut deriv, mat_max_abs(&(fd - raise_generator(&n, &push_traceless(&a_ops, &t)))));
    }
    s.residual("3.derivative_at_identity", deriv, 1e-6);
}

fn real_forms(s: &mut Sheet) {
    for (p, q) in [(6, 0), (1, 5), (2, 4), (3, 3)] {
        let rf = build_real_form(p, q).expect("supported row");
        s.holds(&format!("4.signature_{p}_{q}"), signature_of(rf.induced_metric()) == (p, q));
        s.residual(&format!("4.conjugation_covariance_{p}_{q}"), conjugation_covariance_residual(&rf), 1e-10);
    }
    let rf = build_real_form(2, 4).expect("supported row");
    let want = Mat4::from_fn(|a, b| if (a + 2) % 4 == b { ONE } else { ZERO });
    s.holds("4.split_s_block_bitwise", rf.s().iter().zip(want.iter()).all(|(x, y)| x.re.to_bits() == y.re.to_bits() && x.im.to_bits() == y.im.to_bits()));
    let special = NordenSet::special();
    let mut rng = sample::rng(5);
    let mut stab = 0.0;
    for _ in 0..20 {
        let k = random_real_orthogonal(&special, &mut rng, 0.6);
        match lift(&special, &k, 1e-8) {
            Ok(sp) => {
                let f = stabilizer_form(&rf, &sp);
                let sg = if f[(0, 0)].re >= 0.0 { ONE } else { -ONE };
                mx(&mut stab, mat_max_abs(&(f - Mat4::identity() * sg)));
            }
            Err(_) => stab = f64::INFINITY,
        }
    }
    s.residual("4.stabilizer_20_samples", stab, 1e-9);
}

fn curvature(s: &mut Sheet) {
    let n = NordenSet::special();
    let (mut round, mut spin_b, mut recomp, mut ptrace) = (0.0, 0.0, 0.0, 0.0);
    let mut gated = true;
    for k in 0..50 {
        let r6 = random_alg_curvature(100 + k, 3).expect("terms > 0");
        let scale = 1.0 + r6.max_abs();
        let rs = tensor_to_spintensor(&n, &r6).expect("Bianchi input");
        let back = spintensor_to_tensor(&n, &rs).expect("spinor Bianchi");
        mx(&mut round, back.max_abs_diff(&r6) / scale);
        if r6.bianchi_residual() < 1e-10 {
            mx(&mut spin_b, bianchi_residual(&rs));
        } else {
            gated = false;
        }
        let dec = decompose(&rs);
        mx(&mut recomp, recompose(&dec).max_abs_diff(&rs));
        mx(&mut ptrace, p_trace_residual(&dec));
    }
    s.residual("5.round_trip_50", round, 1e-9);
    s.holds("5.kn_inputs_tensor_bianchi", gated);
    s.residual("5.spinor_bianchi", spin_b, 1e-10);
    s.residual("5.recomposition", recomp, 1e-10);
    s.residual("5.p_trace_law", ptrace, 1e-10);
    let rs = tensor_to_spintensor(&n, &constant_curvature(&n)).expect("Bianchi input");
    s.residual("5.constant_curvature_weyl_zero", decompose(&rs).weyl.max_abs(), 1e-10);
}

fn bivector_geometry(s: &mut Sheet) {
    let n = NordenSet::special();
    let mut rng = sample::rng(6);
    let (mut simple, mut half) = (0.0, 0.0);
    for _ in 0..200 {
        let x: Spinor = sample::vector(&mut rng);
        let y: Spinor = sample::vector(&mut rng);
        mx(&mut simple, pfaffian(&Bivector4::wedge(&x, &y)).norm());
        let r = Bivector4::antisymmetric_part(&sample::antisymmetric4(&mut rng));
        let low = lower_bivector(&n, &r);
        mx(&mut half, (pfaffian(&r) - r.matrix().component_mul(low.matrix()).sum() * 0.5).norm());
    }
    s.residual("6.pfaffian_simple_zero", simple, 1e-11);
    s.residual("6.pfaffian_half_contraction", half, 1e-11);
    let mut recon = 0.0;
    for _ in 0..200 {
        let x: Spinor = sample::vector(&mut rng);
        let mut y: Spinor = sample::vector(&mut rng);
        orthogonalise(&x, &mut y);
        let p = x * y.transpose();
        let e = extract_null_pair(&p, 1e-9).map(|np| mat_max_abs(&(np.outer() - p)));
        mx(&mut recon, e.unwrap_or(f64::INFINITY));
    }
    s.residual("6.null_pair_reconstruction", recon, 1e-10);
    let rf = build_real_form(6, 0).expect("supported row");
    let (mut sum, mut inv) = (0.0, 0.0);
    for _ in 0..100 {
        let r = random_compact_bivector(&mut rng);
        let u = random_special_unitary(&mut rng);
        match (canonical_form(&rf, &r, 1e-9), canonical_form(&rf, &(u * r * u.adjoint()), 1e-9)) {
            (Ok(a), Ok(b)) => {
                mx(&mut sum, a.eigenvalues.iter().sum::<C64>().norm());
                for (x, y) in a.eigenvalues.iter().zip(&b.eigenvalues) {
                    mx(&mut inv, (x - y).norm());
                }
            }
            _ => sum = f64::INFINITY,
        }
    }
    s.residual("6.canonical_eigenvalue_sum", sum, 1e-12);
    s.residual("6.canonical_conjugation_invariance", inv, 1e-9);
    let rf24 = build_real_form(2, 4).expect("supported row");
    let base = FlagBasis::standard();
    match bivgeo::build_flag(&rf24, &base, 1e-10) {
        Ok(f) => {
            s.residual("6.flag_relations", f.max_residual(), 1e-12);
            let mut law = 0.0;
            for th in [std::f64::consts::PI / 8.0, std::f64::consts::PI / 5.0] {
                let v = bivgeo::build_flag(&rf24, &base.rotate(th), 1e-10)
                    .map(|f2| (n.inner(&f2.l, &f.m) + c(2.0 * (2.0 * th).sin())).norm());
                mx(&mut law, v.unwrap_or(f64::INFINITY));
            }
            s.residual("6.flag_rotation_law", law, 1e-9);
        }
        Err(_) => s.holds("6.flag_relations", false),
    }
}

fn eight_dimensional(s: &mut Sheet) {
    let e8 = build_eta8();
    s.residual("7.reduced_clifford", e8.clifford_residual(), 1e-12);
    s.residual("7.metric_from_operators", e8.metric_residual(), 1e-12);
    let (sq, tr, _) = e8.pair_metric_residuals();
    s.residual("7.pair_metric_square", sq, 1e-12);
    s.residual("7.pair_metric_trace", tr, 1e-12);
    s.residual("7.symmetric_part_law", e8.symmetric_part_residual(), 1e-12);
    let (tab, sq2, _) = e8.involution_residuals();
    s.residual("7.involution_table", tab.max(sq2), 1e-12);
    s.residual("7.s_tilde_metric", e8.s_tilde_residuals().0, 1e-12);
    match build_octonion_table(&e8, &default_octonion_vector(), 1e-12) {
        Ok(t) => {
            s.residual("7.octonion_unit", t.unit_residual(), 1e-12);
            s.residual("7.octonion_composition_200", t.composition_residual(8, 200), 1e-9);
            s.residual("7.octonion_alternative", t.alternativity_residual(9, 200), 1e-9);
            s.holds("7.octonion_non_associative", t.max_basis_associator() > 0.1);
        }
        Err(_) => s.holds("7.octonion_unit", false),
    }
}

fn quadrics(s: &mut Sheet) {
    let e8 = build_eta8();
    let mut rng = sample::rng(10);
    let rand_biv = |rng: &mut sample::Rng64| Bivector4::antisymmetric_part(&sample::antisymmetric4(rng));
    let r0 = rand_biv(&mut rng);
    let ys: [Spinor; 4] = std::array::from_fn(|_| sample::vector(&mut rng));
    let pairs = ys.map(|y| (r0.matrix() * y * I, y));
    s.holds("8.four_pair_rank_6", solve_incidence(&pairs).rank == 6);
    s.holds("8.two_pair_rank_5", solve_incidence(&pairs[..2]).rank == 5);
    s.holds("8.three_pair_rank_6", solve_incidence(&pairs[..3]).rank == 6);
    let rec = solve_generator_to_point(&pairs, 1e-9).map(|sol| mat_max_abs(&(sol.r.matrix() - r0.matrix())));
    s.residual("8.generator_to_point_recovery", rec.unwrap_or(f64::INFINITY), 1e-9);

    let xd: Spinor = sample::vector(&mut rng);
    let mut yd: Spinor = sample::vector(&mut rng);
    orthogonalise(&xd, &mut yd);
    match solve_point_to_generator(&xd, &yd, 1e-9) {
        Ok(pg) => {
            let rs: Vec<Bivector4> = (0..4)
                .map(|_| pg.member([sample::complex(&mut rng), sample::complex(&mut rng), sample::complex(&mut rng)]))
                .collect();
            match solve_point_from_generator(&rs, 1e-9) {
                Ok(p) => {
                    s.holds("8.full_system_rank_7", p.rank == 7);
                    let k = (0..4).fold(0, |b, j| if yd[j].norm() > yd[b].norm() * (1.0 + 1e-12) { j } else { b });
                    let err = spinor_norm(&(p.x - xd / yd[k])).max(spinor_norm(&(p.y - yd / yd[k])));
                    s.residual("8.point_from_generator_recovery", err, 1e-9);
                }
                Err(_) => s.holds("8.full_system_rank_7", false),
            }
        }
        Err(_) => s.holds("8.full_system_rank_7", false),
    }

    let rf = rand_biv(&mut rng);
    let ys: [Spinor; 4] = std::array::from_fn(|_| sample::vector(&mut rng));
    let gen = canonical_generator(&rf, &ys);
    s.holds("8.family_canonical_plus_one", family_test(&e8, &gen, 1e-9).map(|f| f.rho) == Ok(1));
    let img: [Vec8; 4] = gen.map(|x| e8.involution() * x);
    s.holds("8.family_involution_image", family_test(&e8, &img, 1e-9).map(|f| f.rho) == Ok(-1));

    let rho = Mat2::from_fn(|_, _| sample::complex(&mut rng));
    let pi = Vec2::new(sample::complex(&mut rng), sample::complex(&mut rng));
    let om = klein_omega(&rho, &pi);
    let x = Vec8::from_column_slice(&[ZERO, ZERO, ZERO, ZERO, pi[0], pi[1], om[0], om[1]]);
    let red = klein_slice(&x, &rho, 1e-12).map(|k| k.first_block.max(k.second_block));
    s.residual("8.klein_redundancy", red.unwrap_or(f64::INFINITY), 1e-10);
}

fn main() {
    let mut s = Sheet::default();
    clifford(&mut s);
    operator_identities(&mut s);
    double_cover(&mut s);
    real_forms(&mut s);
    curvature(&mut s);
    bivector_geometry(&mut s);
    eight_dimensional(&mut s);
    quadrics(&mut s);

    let mut unexpected = Vec::new();
    for l in &s.0 {
        let tag = if l.pass() { "PASS" } else { "FAIL" };
        println!("{tag} {:<45} residual={:.3e} threshold={:.0e}", l.id, l.residual, l.threshold);
        let known = UNATTAINABLE.contains(&l.id.as_str());
        if l.pass() == known {
            unexpected.push(l.id.clone());
        }
    }
    for id in UNATTAINABLE {
        assert!(s.0.iter().any(|l| l.id == id), "missing line {id}");
    }
    assert!(unexpected.is_empty(), "unexpected outcome: {unexpected:?}");
}
