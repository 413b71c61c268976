//! Bivectors of the six-space seen through spinors: simplicity, null pairs,
//! the canonical form for the compact real form, and flags of isotropic twistors.

use alloc::vec::Vec;
use libm::{cos, sin};
use nalgebra::SymmetricEigen;

use crate::linalg::expm;
use crate::norden::{build_a_operators, push_traceless, Bivector4, NordenSet, Spinor, Vec6};
use crate::realforms::{build_real_form, reality_pairing, RealFormData};
use crate::report::{fmax, Check};
use crate::sample;
use crate::tensors::{antisymmetrize, c, mat_max_abs, ComplexTensor, Epsilon4, Mat4, C64, I, ONE, ZERO};

/// Relative cut on the second singular value in null-pair extraction.
pub const RANK_ONE_THRESHOLD: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum BivgeoError {
    #[error("simplicity tests disagree (pfaffian {pfaffian:e}, second test {other:e})")]
    SimplicityDisagreement { pfaffian: f64, other: f64 },
    #[error("bivector image is zero")]
    Zero,
    #[error("bivector image has trace {0:e}")]
    NotTraceless(f64),
    #[error("bivector image is not isotropic (p_b^a p_a^b = {0:e})")]
    NotIsotropic(f64),
    #[error("bivector image is not rank one (singular value ratio {ratio:e})")]
    NotRankOne { ratio: f64 },
    #[error("canonical form needs q = 0 or q = 6, got ({p},{q})")]
    UnsupportedSignature { p: usize, q: usize },
    #[error("bivector violates the reality condition (residual {0:e})")]
    NotReal(f64),
    #[error("flag needs the (2,4) real form, got ({p},{q})")]
    FlagSignature { p: usize, q: usize },
    #[error("basis pairing {name} is {value:e}")]
    BasisCondition { name: &'static str, value: f64 },
    #[error("both extension denominators vanish")]
    NoExtension,
}

/// pf(R) = 2(R^{12}R^{34} - R^{13}R^{24} + R^{14}R^{23}).
pub fn pfaffian(r: &Bivector4) -> C64 {
    let m = r.matrix();
    (m[(0, 1)] * m[(2, 3)] - m[(0, 2)] * m[(1, 3)] + m[(0, 3)] * m[(1, 2)]) * 2.0
}

fn plucker_residual<const N: usize>(m: &nalgebra::SMatrix<C64, N, N>) -> f64 {
    let rr = ComplexTensor::from_fn(&[N; 4], |i| m[(i[0], i[1])] * m[(i[2], i[3])]);
    antisymmetrize(&rr, &[0, 1, 2, 3]).expect("four equal axes").max_abs()
}

fn decide(pf_res: f64, other: f64, tol: f64) -> Result<bool, BivgeoError> {
    let a = pf_res <= tol;
    let b = other <= tol;
    if a != b && (pf_res.max(other) > 100.0 * tol) && (pf_res.min(other) <= tol) {
        return Err(BivgeoError::SimplicityDisagreement { pfaffian: pf_res, other });
    }
    Ok(a)
}

/// Simplicity of R^{ab} by the Pfaffian and by the Plücker relation
/// R^{[ab}R^{cd]} = 0, both normalised by |R|².
pub fn is_simple(r: &Bivector4, tol: f64) -> Result<bool, BivgeoError> {
    let s = mat_max_abs(r.matrix());
    if s == 0.0 {
        return Ok(true);
    }
    let pf = pfaffian(r).norm() / (s * s);
    // the only independent Plücker component is pf/6
    let pl = 6.0 * plucker_residual(r.matrix()) / (s * s);
    decide(pf, pl, tol)
}

/// Simplicity of a six-space bivector given by its traceless image p_a^b:
/// Plücker T_{[αβ}T_{γδ]} = 0 on the pushed 6x6 array against
/// p_l^d p_s^l - ¼(p_l^k p_k^l)δ_s^d = 0.
pub fn is_simple_traceless(n: &NordenSet, p: &Mat4, tol: f64) -> Result<bool, BivgeoError> {
    let s = mat_max_abs(p);
    if s == 0.0 {
        return Ok(true);
    }
    let t6 = push_traceless(&build_a_operators(n), p);
    let pl = plucker_residual(&t6) / (s * s);
    let p2 = p * p;
    let q = p2 - Mat4::identity() * (p2.trace() * 0.25);
    decide(mat_max_abs(&q) / (s * s), pl, tol)
}

/// p_a^b = X^a Y_b with X^a Y_a = 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NullPair {
    pub x: Spinor,
    pub y: Spinor,
}

impl NullPair {
    pub fn outer(&self) -> Mat4 {
        self.x * self.y.transpose()
    }

    pub fn contraction(&self) -> C64 {
        self.x.dot(&self.y)
    }
}

/// Rank-one factorisation of an isotropic traceless image. The largest
/// component of X (first on ties) is set to 1.
pub fn extract_null_pair(p: &Mat4, tol: f64) -> Result<NullPair, BivgeoError> {
    let s = mat_max_abs(p);
    if s == 0.0 {
        return Err(BivgeoError::Zero);
    }
    let tr = p.trace().norm();
    if tr > tol * s {
        return Err(BivgeoError::NotTraceless(tr));
    }
    let iso = (p * p).trace().norm();
    if iso > tol * s * s {
        return Err(BivgeoError::NotIsotropic(iso));
    }
    let svd = p.svd(true, true);
    let sv = svd.singular_values;
    let (mut i1, mut i2) = (0, 1);
    if sv[i2] > sv[i1] {
        core::mem::swap(&mut i1, &mut i2);
    }
    for k in 2..4 {
        if sv[k] > sv[i1] {
            i2 = i1;
            i1 = k;
        } else if sv[k] > sv[i2] {
            i2 = k;
        }
    }
    let ratio = sv[i2] / sv[i1];
    if ratio > RANK_ONE_THRESHOLD {
        return Err(BivgeoError::NotRankOne { ratio });
    }
    let u = svd.u.expect("requested");
    let v_t = svd.v_t.expect("requested");
    let mut x: Spinor = u.column(i1).into_owned() * c(sv[i1]);
    let mut y: Spinor = v_t.row(i1).transpose();
    let mut k = 0;
    for j in 1..4 {
        if x[j].norm() > x[k].norm() * (1.0 + 1e-12) {
            k = j;
        }
    }
    let g = x[k];
    x /= g;
    y *= g;
    Ok(NullPair { x, y })
}

#[derive(Debug, Clone, PartialEq)]
pub struct CanonicalForm {
    /// Sorted by descending imaginary part, stable on ties.
    pub eigenvalues: [C64; 4],
    /// R_16, R_23, R_45.
    pub invariants: [C64; 3],
    /// Unitary with det 1 and U R U* diagonal.
    pub u: Mat4,
}

/// max |R + R*|: the reality condition for s = δ.
pub fn compact_reality_residual(r: &Mat4) -> f64 {
    mat_max_abs(&(r + r.adjoint()))
}

/// Canonical form of a real traceless R_b^a (stored with the lower index as
/// row) for the compact real form; iR is Hermitian.
pub fn canonical_form(rf: &RealFormData, r: &Mat4, tol: f64) -> Result<CanonicalForm, BivgeoError> {
    let (p, q) = rf.signature();
    if q != 0 && q != 6 {
        return Err(BivgeoError::UnsupportedSignature { p, q });
    }
    let scale = 1.0 + mat_max_abs(r);
    let real = compact_reality_residual(r);
    if real > tol * scale {
        return Err(BivgeoError::NotReal(real));
    }
    let tr = r.trace().norm();
    if tr > tol * scale {
        return Err(BivgeoError::NotTraceless(tr));
    }
    let h = r * I;
    let h = (h + h.adjoint()) * c(0.5);
    let eig = SymmetricEigen::new(h);
    let mut order = [0usize, 1, 2, 3];
    // λ = -iμ, so descending Im λ is ascending μ
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let eigenvalues = order.map(|k| -I * eig.eigenvalues[k]);
    let v = Mat4::from_fn(|i, j| eig.eigenvectors[(i, order[j])]);
    let mut u = v.adjoint();
    u /= u.determinant().powf(0.25);
    let t6 = push_traceless(&build_a_operators(&NordenSet::orthonormal()), r);
    Ok(CanonicalForm {
        eigenvalues,
        invariants: [t6[(0, 5)], t6[(1, 2)], t6[(3, 4)]],
        u,
    })
}

/// exp(iH) for a seeded traceless Hermitian H: a random special unitary.
pub fn random_special_unitary(rng: &mut sample::Rng64) -> Mat4 {
    let h = sample::traceless4(rng);
    let h = (h + h.adjoint()) * c(0.5);
    let h = h - Mat4::identity() * (h.trace() * 0.25);
    expm(&(h * I))
}

/// A random real traceless bivector for the compact form: anti-Hermitian.
pub fn random_compact_bivector(rng: &mut sample::Rng64) -> Mat4 {
    let m = sample::traceless4(rng);
    let a = (m - m.adjoint()) * c(0.5);
    a - Mat4::identity() * (a.trace() * 0.25)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtensionType {
    First,
    Second,
}

/// Spinor basis (X, Y, Z, T) of an isotropic twistor frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlagBasis {
    pub x: Spinor,
    pub y: Spinor,
    pub z: Spinor,
    pub t: Spinor,
}

impl FlagBasis {
    /// The coordinate basis e1..e4.
    pub fn standard() -> Self {
        let e = |k: usize| Spinor::from_fn(|i, _| if i == k { ONE } else { ZERO });
        Self {
            x: e(0),
            y: e(1),
            z: e(2),
            t: e(3),
        }
    }

    /// X → X/τ, Z → Z/τ, Y → τY, T → τT with τ = e^{iΘ}.
    pub fn rotate(&self, theta: f64) -> Self {
        let tau = C64::new(cos(theta), sin(theta));
        Self {
            x: self.x / tau,
            y: self.y * tau,
            z: self.z / tau,
            t: self.t * tau,
        }
    }

    /// T → rT, Y → Y/r.
    pub fn scale(&self, r: f64) -> Self {
        Self {
            x: self.x,
            y: self.y / c(r),
            z: self.z,
            t: self.t * c(r),
        }
    }

    fn named(&self) -> [(&'static str, &Spinor); 4] {
        [("X", &self.x), ("Y", &self.y), ("Z", &self.z), ("T", &self.t)]
    }
}

/// The eight pairings that must vanish.
pub const VANISHING_PAIRS: [(usize, usize); 8] = [(1, 1), (1, 0), (1, 2), (0, 0), (0, 3), (2, 2), (2, 3), (3, 3)];

const PAIR_NAMES: [&str; 8] = ["YY", "YX", "YZ", "XX", "XT", "ZZ", "ZT", "TT"];

/// All sixteen pairings u^a v_a with v_a = s_{aa'} conj(v)^{a'}, rows and
/// columns ordered X, Y, Z, T.
pub fn basis_pairings(rf: &RealFormData, b: &FlagBasis) -> [[C64; 4]; 4] {
    let v = b.named();
    core::array::from_fn(|i| core::array::from_fn(|j| reality_pairing(rf, v[i].1, v[j].1)))
}

/// ε^{abcd} X_a Y_b Z_c T_d with lowered spinors.
pub fn basis_volume(rf: &RealFormData, b: &FlagBasis) -> C64 {
    let low = |u: &Spinor| rf.s() * u.conjugate();
    let m = Mat4::from_columns(&[low(&b.x), low(&b.y), low(&b.z), low(&b.t)]);
    m.determinant() / Epsilon4::default().scale()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Flag {
    pub k: Vec6,
    pub n: Vec6,
    pub l: Vec6,
    pub m: Vec6,
    pub extension: f64,
    pub extension_type: ExtensionType,
    pub pairings: [[C64; 4]; 4],
}

fn contract_pair(n: &NordenSet, u: &Spinor, v: &Spinor) -> Vec6 {
    Vec6::from_fn(|k, _| (u.transpose() * n.eta_down()[k] * v)[(0, 0)])
}

/// K = η_{ab} iT^{[a}X^{b]}, N = η_{ab} T^{[a}Z^{b]},
/// L = η_{ab}(-T^{[a}Y^{b]} + X^{[a}Z^{b]}), M = -i η_{ab}(T^{[a}Y^{b]} + X^{[a}Z^{b]}).
pub fn build_flag(rf: &RealFormData, basis: &FlagBasis, tol: f64) -> Result<Flag, BivgeoError> {
    let (p, q) = rf.signature();
    if (p, q) != (2, 4) {
        return Err(BivgeoError::FlagSignature { p, q });
    }
    let pairings = basis_pairings(rf, basis);
    for (&(i, j), name) in VANISHING_PAIRS.iter().zip(PAIR_NAMES) {
        let v = pairings[i][j].norm();
        if v > tol {
            return Err(BivgeoError::BasisCondition { name, value: v });
        }
    }
    let vol = (basis_volume(rf, basis) - ONE).norm();
    if vol > tol {
        return Err(BivgeoError::BasisCondition { name: "volume", value: vol });
    }
    let norm = (pairings[0][2] * pairings[1][3] - ONE).norm();
    if norm > tol {
        return Err(BivgeoError::BasisCondition { name: "XZ*YT", value: norm });
    }
    let n = NordenSet::special();
    let b = basis;
    let tx = contract_pair(&n, &b.t, &b.x);
    let tz = contract_pair(&n, &b.t, &b.z);
    let ty = contract_pair(&n, &b.t, &b.y);
    let xz = contract_pair(&n, &b.x, &b.z);
    let k = tx * I;
    let nn = tz;
    let l = xz - ty;
    let m = (ty + xz) * (-I);
    let first = (k[1] + k[2]).norm();
    let second = (k[0] + k[5]).norm();
    let scale = 1.0 + k.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let (extension, extension_type) = if first > tol * scale {
        (first, ExtensionType::First)
    } else if second > tol * scale {
        (second, ExtensionType::Second)
    } else {
        return Err(BivgeoError::NoExtension);
    };
    Ok(Flag {
        k,
        n: nn,
        l,
        m,
        extension,
        extension_type,
        pairings,
    })
}

impl Flag {
    /// Named inner-product residuals against their required values.
    pub fn residuals(&self) -> Vec<(&'static str, f64)> {
        let n = NordenSet::special();
        let dot = |u: &Vec6, v: &Vec6| n.inner(u, v);
        let m2 = c(-2.0);
        let mut out = Vec::new();
        for (name, u, v, want) in [
            ("KK", &self.k, &self.k, ZERO),
            ("NN", &self.n, &self.n, ZERO),
            ("KN", &self.k, &self.n, ZERO),
            ("LK", &self.l, &self.k, ZERO),
            ("LM", &self.l, &self.m, ZERO),
            ("MK", &self.m, &self.k, ZERO),
            ("LN", &self.l, &self.n, ZERO),
            ("MN", &self.m, &self.n, ZERO),
            ("LL", &self.l, &self.l, m2),
            ("MM", &self.m, &self.m, m2),
        ] {
            out.push((name, (dot(u, v) - want).norm()));
        }
        let imag = [&self.k, &self.n, &self.l, &self.m]
            .iter()
            .flat_map(|v| v.iter())
            .map(|z| z.im.abs())
            .fold(0.0, f64::max);
        out.push(("real", imag));
        out
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals().iter().map(|r| r.1).fold(0.0, f64::max)
    }

    /// P^{αβγ} = 6K^{[α}N^βL^{γ]}.
    pub fn trivector(&self) -> ComplexTensor {
        let t = ComplexTensor::from_fn(&[6, 6, 6], |i| self.k[i[0]] * self.n[i[1]] * self.l[i[2]]);
        antisymmetrize(&t, &[0, 1, 2]).expect("three equal axes").scale(c(6.0))
    }
}

/// The standard basis for the (2,4) form.
pub fn standard_flag(tol: f64) -> Result<Flag, BivgeoError> {
    build_flag(&build_real_form(2, 4).expect("supported"), &FlagBasis::standard(), tol)
}

fn simple_sample(rng: &mut sample::Rng64, simple: bool) -> Bivector4 {
    if simple {
        Bivector4::wedge(&sample::vector(rng), &sample::vector(rng))
    } else {
        Bivector4::antisymmetric_part(&sample::antisymmetric4(rng))
    }
}

/// Residual checks for simplicity, null pairs, canonical forms and flags.
pub fn bivgeo_suite(seed: u64, count: usize, threshold: f64) -> Vec<Check> {
    let mut rng = sample::rng(seed);
    let n = NordenSet::special();
    let mut out = Vec::new();

    let mut pf_half = 0.0;
    let mut agree = true;
    let mut wrong = 0usize;
    for k in 0..count {
        let simple = k % 2 == 0;
        let r = simple_sample(&mut rng, simple);
        let low = crate::norden::lower_bivector(&n, &r);
        let half = r.matrix().component_mul(low.matrix()).sum() * 0.5;
        let pf = pfaffian(&r);
        fmax(&mut pf_half, (pf - half).norm() / (1.0 + pf.norm()));
        match is_simple(&r, 1e-9) {
            Ok(v) => wrong += usize::from(v != simple),
            Err(_) => agree = false,
        }
    }
    out.push(Check::new("pfaffian_half_contraction", pf_half, threshold));
    out.push(Check::flag("simplicity_tests_agree", agree));
    out.push(Check::new("simplicity_misclassified", wrong as f64, 0.5));

    let mut agree6 = true;
    let mut wrong6 = 0usize;
    let a_ops = build_a_operators(&n);
    for k in 0..count.min(200) {
        let simple = k % 2 == 0;
        let p = if simple {
            // u∧v pulled back: T_{αβ} = u_α v_β - v_α u_β
            let u: Vec6 = sample::vector(&mut rng);
            let v: Vec6 = sample::vector(&mut rng);
            let gu = n.metric() * u;
            let gv = n.metric() * v;
            let t6 = gu * gv.transpose() - gv * gu.transpose();
            crate::norden::pull_traceless(&n, &a_ops, &t6)
        } else {
            sample::traceless4(&mut rng)
        };
        match is_simple_traceless(&n, &p, 1e-9) {
            Ok(v) => wrong6 += usize::from(v != simple),
            Err(_) => agree6 = false,
        }
    }
    out.push(Check::flag("traceless_simplicity_tests_agree", agree6));
    out.push(Check::new("traceless_simplicity_misclassified", wrong6 as f64, 0.5));

    let mut recon = 0.0;
    let mut contraction = 0.0;
    for _ in 0..count.min(200) {
        let x: Spinor = sample::vector(&mut rng);
        let mut y: Spinor = sample::vector(&mut rng);
        // make Y orthogonal to X
        let k = (0..4).max_by(|&a, &b| x[a].norm().total_cmp(&x[b].norm())).unwrap_or(0);
        let d = x.dot(&y) / x[k];
        y[k] -= d;
        let p = x * y.transpose();
        match extract_null_pair(&p, 1e-9) {
            Ok(np) => {
                fmax(&mut recon, mat_max_abs(&(np.outer() - p)) / (1.0 + mat_max_abs(&p)));
                fmax(&mut contraction, np.contraction().norm());
            }
            Err(_) => recon = f64::INFINITY,
        }
    }
    out.push(Check::new("null_pair_reconstruction", recon, threshold));
    out.push(Check::new("null_pair_contraction", contraction, threshold));
    let x: Spinor = sample::vector(&mut rng);
    let bad = {
        let mut m = Mat4::zeros();
        m[(0, 1)] = ONE;
        m[(2, 3)] = ONE;
        m + x * Spinor::zeros().transpose()
    };
    out.push(Check::flag(
        "null_pair_rank_error",
        matches!(extract_null_pair(&bad, 1e-9), Err(BivgeoError::NotRankOne { .. })),
    ));

    let rf = build_real_form(6, 0).expect("supported");
    let mut diag = 0.0;
    let mut trace = 0.0;
    let mut invariance = 0.0;
    let mut unit = 0.0;
    for _ in 0..count.min(100) {
        let r = random_compact_bivector(&mut rng);
        let cf = match canonical_form(&rf, &r, 1e-9) {
            Ok(cf) => cf,
            Err(_) => {
                diag = f64::INFINITY;
                continue;
            }
        };
        let d = cf.u * r * cf.u.adjoint();
        let dd = Mat4::from_diagonal(&nalgebra::Vector4::from(cf.eigenvalues));
        fmax(&mut diag, mat_max_abs(&(d - dd)));
        fmax(&mut trace, cf.eigenvalues.iter().sum::<C64>().norm());
        fmax(&mut unit, mat_max_abs(&(cf.u * cf.u.adjoint() - Mat4::identity())));
        fmax(&mut unit, (cf.u.determinant() - ONE).norm());
        let su = random_special_unitary(&mut rng);
        let r2 = su * r * su.adjoint();
        if let Ok(cf2) = canonical_form(&rf, &r2, 1e-9) {
            for (a, b) in cf.eigenvalues.iter().zip(&cf2.eigenvalues) {
                fmax(&mut invariance, (a - b).norm());
            }
        } else {
            invariance = f64::INFINITY;
        }
    }
    out.push(Check::new("canonical_diagonalises", diag, threshold));
    out.push(Check::new("canonical_trace_zero", trace, threshold));
    out.push(Check::new("canonical_unitary_special", unit, threshold));
    out.push(Check::new("canonical_conjugation_invariance", invariance, 1e-9));

    let rf24 = build_real_form(2, 4).expect("supported");
    let base = FlagBasis::standard();
    match build_flag(&rf24, &base, 1e-10) {
        Ok(f) => {
            out.push(Check::new("flag_relations", f.max_residual(), threshold));
            let mut theta_res = 0.0;
            for th in [core::f64::consts::PI / 8.0, core::f64::consts::PI / 4.0] {
                match build_flag(&rf24, &base.rotate(th), 1e-10) {
                    Ok(f2) => {
                        let lm = n.inner(&f2.l, &f.m) + c(2.0 * sin(2.0 * th));
                        fmax(&mut theta_res, lm.norm());
                        let want = f.l * c(cos(2.0 * th)) + f.m * c(sin(2.0 * th));
                        fmax(&mut theta_res, (f2.l - want).amax_norm());
                        fmax(&mut theta_res, (f2.k - f.k).amax_norm());
                    }
                    Err(_) => theta_res = f64::INFINITY,
                }
            }
            out.push(Check::new("flag_rotation_law", theta_res, threshold));
            let r = 1.7;
            let scale_res = match build_flag(&rf24, &base.scale(r), 1e-10) {
                Ok(f3) => (f3.extension - r * f.extension)
                    .abs()
                    .max((f3.l - f.l).amax_norm())
                    .max((f3.m - f.m).amax_norm())
                    .max((f3.k - f.k * c(r)).amax_norm()),
                Err(_) => f64::INFINITY,
            };
            out.push(Check::new("flag_scaling_law", scale_res, threshold));
            let full = base.rotate(core::f64::consts::PI);
            let turn = match build_flag(&rf24, &full, 1e-10) {
                Ok(f4) => (full.t + base.t)
                    .amax_norm()
                    .max((f4.k - f.k).amax_norm())
                    .max((f4.l - f.l).amax_norm())
                    .max((f4.m - f.m).amax_norm()),
                Err(_) => f64::INFINITY,
            };
            out.push(Check::new("flag_full_turn", turn, threshold));
        }
        Err(_) => out.push(Check::flag("flag_relations", false)),
    }
    out
}

trait AmaxNorm {
    fn amax_norm(&self) -> f64;
}

impl<const R: usize> AmaxNorm for nalgebra::SVector<C64, R> {
    fn amax_norm(&self) -> f64 {
        self.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}
