//! Real slices R^6_(p,q) of the complex six-space and the matching spinor
//! reality structures.
//!
//! Vectors here are components against the complex-orthonormal operators
//! ([`NordenSet::orthonormal`]). The real basis is η_i = H_i^α η_α.

use alloc::vec::Vec;
use nalgebra::{SMatrix, SymmetricEigen};

use crate::bivgeo::pfaffian;
use crate::cover::lift;
use crate::linalg::expm;
use crate::norden::{lower_pair, vector_to_bivector, NordenSet, Spinor, Vec6};
use crate::report::{fmax, Check};
use crate::sample;
use crate::tensors::{c, mat_max_abs, Epsilon4, Mat4, Mat6, C64, I, ONE};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RealFormError {
    #[error("signature ({p},{q}) is not one of (6,0), (1,5), (2,4), (3,3)")]
    UnsupportedSignature { p: usize, q: usize },
    #[error("s block kind does not match the parity of q = {q}")]
    BranchMismatch { q: usize },
}

/// Even q: Hermitian polarity s_{ab'}. Odd q: Hermitian involution s_a^{b'}.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SKind {
    Polarity,
    Involution,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RealFormData {
    signature: (usize, usize),
    h: Mat6,
    h_inv: Mat6,
    involution: Mat6,
    s_kind: SKind,
    s: Mat4,
    induced_metric: SMatrix<f64, 6, 6>,
}

impl RealFormData {
    pub fn signature(&self) -> (usize, usize) {
        self.signature
    }

    /// H_i^α as `h()[(i, α)]`.
    pub fn h(&self) -> &Mat6 {
        &self.h
    }

    pub fn h_inv(&self) -> &Mat6 {
        &self.h_inv
    }

    /// S_α^{β'} as `involution()[(α, β)]`.
    pub fn involution(&self) -> &Mat6 {
        &self.involution
    }

    pub fn s_kind(&self) -> SKind {
        self.s_kind
    }

    pub fn s(&self) -> &Mat4 {
        &self.s
    }

    pub fn induced_metric(&self) -> &SMatrix<f64, 6, 6> {
        &self.induced_metric
    }

    /// The ± of the branch law: s = ±s̄ᵀ (polarity) or s s̄ = ±δ (involution).
    pub fn branch_sign(&self) -> f64 {
        let law = match self.s_kind {
            SKind::Polarity => self.s.adjoint(),
            SKind::Involution => self.s * self.s.conjugate(),
        };
        let target = match self.s_kind {
            SKind::Polarity => self.s,
            SKind::Involution => Mat4::identity(),
        };
        if mat_max_abs(&(law - target)) <= mat_max_abs(&(law + target)) {
            1.0
        } else {
            -1.0
        }
    }

    /// Residual of the branch law with the sign from [`Self::branch_sign`].
    pub fn branch_residual(&self) -> f64 {
        let sg = c(self.branch_sign());
        match self.s_kind {
            SKind::Polarity => mat_max_abs(&(self.s.adjoint() * sg - self.s)),
            SKind::Involution => mat_max_abs(&(self.s * self.s.conjugate() * sg - Mat4::identity())),
        }
    }

    /// The operators η_i = H_i^α η_α of the real basis.
    pub fn real_operators(&self) -> [Mat4; 6] {
        let n = NordenSet::orthonormal();
        core::array::from_fn(|i| (0..6).fold(Mat4::zeros(), |acc, a| acc + n.eta_up()[a] * self.h[(i, a)]))
    }
}

fn diag_pattern(imag: &[usize]) -> Vec6 {
    Vec6::from_fn(|k, _| if imag.contains(&k) { I } else { ONE })
}

fn real4(rows: [[f64; 4]; 4]) -> Mat4 {
    Mat4::from_fn(|i, j| c(rows[i][j]))
}

/// The tabulated s block and diagonal inclusion for each supported signature.
pub fn build_real_form(p: usize, q: usize) -> Result<RealFormData, RealFormError> {
    let (hd, s, kind) = match (p, q) {
        (6, 0) => (diag_pattern(&[]), Mat4::identity(), SKind::Polarity),
        (1, 5) => (
            diag_pattern(&[0, 2, 3, 4, 5]),
            real4([[0., 1., 0., 0.], [-1., 0., 0., 0.], [0., 0., 0., 1.], [0., 0., -1., 0.]]),
            SKind::Involution,
        ),
        (2, 4) => (
            diag_pattern(&[2, 3, 4, 5]),
            real4([[0., 0., 1., 0.], [0., 0., 0., 1.], [1., 0., 0., 0.], [0., 1., 0., 0.]]),
            SKind::Polarity,
        ),
        (3, 3) => (diag_pattern(&[0, 2, 4]), Mat4::identity(), SKind::Involution),
        _ => return Err(RealFormError::UnsupportedSignature { p, q }),
    };
    let h = Mat6::from_diagonal(&hd);
    let h_inv = Mat6::from_diagonal(&hd.map(|z| ONE / z));
    let involution = Mat6::from_diagonal(&hd.map(|z| z.conj() / z));
    // g_ij = H_i^α H_j^β δ_αβ
    let induced = h * h.transpose();
    let induced_metric = induced.map(|z| z.re);
    Ok(RealFormData {
        signature: (p, q),
        h,
        h_inv,
        involution,
        s_kind: kind,
        s,
        induced_metric,
    })
}

/// Counts of positive and negative eigenvalues of a real symmetric matrix.
pub fn signature_of(m: &SMatrix<f64, 6, 6>) -> (usize, usize) {
    let e = SymmetricEigen::new(*m);
    let pos = e.eigenvalues.iter().filter(|&&x| x > 1e-12).count();
    let neg = e.eigenvalues.iter().filter(|&&x| x < -1e-12).count();
    (pos, neg)
}

/// Reconstruct S_α^{β'} from s and the operators of `n` (which should be the
/// complex-orthonormal set).
pub fn involution_from_s(n: &NordenSet, rf: &RealFormData) -> Result<Mat6, RealFormError> {
    let q = rf.signature.1;
    let expect = if q.is_multiple_of(2) { SKind::Polarity } else { SKind::Involution };
    if rf.s_kind != expect {
        return Err(RealFormError::BranchMismatch { q });
    }
    let up = n.eta_up();
    let down = n.eta_down();
    let s = &rf.s;
    let out = match rf.s_kind {
        SKind::Involution => Mat6::from_fn(|a, b| {
            // ½ η_α^{ij} conj(η^β_{kl}) s_i^k s_j^l
            (s.transpose() * up[a] * s).component_mul(&down[b].conjugate()).sum() * 0.5
        }),
        SKind::Polarity => {
            let su = s.try_inverse().unwrap_or_else(Mat4::zeros).transpose();
            let eps = n.eps();
            Mat6::from_fn(|a, b| {
                // ¼ η_α^{ij} conj(η^β_{kl}) su_x^k su_y^l ε_{xyij}
                let t = su * down[b].conjugate() * su.transpose();
                let low = lower_pair(eps, &up[a]);
                t.component_mul(&low).sum() * 0.5
            })
        }
    };
    Ok(out)
}

/// S v = v̄ within `tol`.
pub fn is_real_vector(rf: &RealFormData, v: &Vec6, tol: f64) -> bool {
    let d = rf.involution * v - v.conjugate();
    let scale = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    d.iter().all(|z| z.norm() <= tol * (1.0 + scale))
}

/// uᵀ s v̄: the spinor pairing induced by the reality structure.
pub fn reality_pairing(rf: &RealFormData, u: &Spinor, v: &Spinor) -> C64 {
    (u.transpose() * rf.s * v.conjugate())[(0, 0)]
}

/// All three pairings of X and Y (XX, YY, XY) vanish within `tol`.
pub fn bivector_reality_check(rf: &RealFormData, x: &Spinor, y: &Spinor, tol: f64) -> bool {
    [(x, x), (y, y), (x, y)]
        .iter()
        .all(|(u, v)| reality_pairing(rf, u, v).norm() <= tol)
}

/// Max deviation between conj(η_i) and the s-transport of η_i.
pub fn conjugation_covariance_residual(rf: &RealFormData) -> f64 {
    let eps = Epsilon4::default();
    let mut r = 0.0;
    for eta in rf.real_operators() {
        let transported = match rf.s_kind {
            SKind::Involution => rf.s.transpose() * eta * rf.s,
            SKind::Polarity => {
                let su = rf.s.try_inverse().unwrap_or_else(Mat4::zeros).transpose();
                su.transpose() * lower_pair(&eps, &eta) * su
            }
        };
        fmax(&mut r, mat_max_abs(&(eta.conjugate() - transported)));
    }
    r
}

/// N_c^l = s^{lk'} S̄_{k'}^{m'} s_{am'} S_c^a for the (2,4) polarity; returns N.
pub fn stabilizer_form(rf: &RealFormData, s_spin: &Mat4) -> Mat4 {
    let su = rf.s.try_inverse().unwrap_or_else(Mat4::zeros).transpose();
    // N[c,l] = Σ su[l,k] conj(S)[k,m] s[a,m] S[c,a]
    (su * s_spin.conjugate() * rf.s.transpose() * s_spin.transpose()).transpose()
}

/// A real element of SO(2,4) in the tabulated real basis: exp(Ω g) with Ω
/// real antisymmetric.
pub fn random_real_orthogonal(n: &NordenSet, rng: &mut sample::Rng64, size: f64) -> Mat6 {
    let w: Mat6 = sample::real_matrix(rng);
    let omega = (w - w.transpose()) * c(0.5 * size);
    expm(&(omega * n.metric()))
}

/// Residual checks for all four supported real forms.
pub fn realform_suite(seed: u64, threshold: f64) -> Vec<Check> {
    let n = NordenSet::orthonormal();
    let mut out = Vec::new();
    for (p, q) in [(6, 0), (1, 5), (2, 4), (3, 3)] {
        let rf = build_real_form(p, q).expect("supported");
        let tag = |s: &str| alloc::format!("{s}_{p}_{q}");
        out.push(Check::new(
            tag("inclusion_inverse"),
            mat_max_abs(&(rf.h_inv * rf.h - Mat6::identity())),
            threshold,
        ));
        out.push(Check::new(
            tag("involution_squares_to_one"),
            mat_max_abs(&(rf.involution * rf.involution.conjugate() - Mat6::identity())),
            threshold,
        ));
        out.push(Check::flag(tag("induced_signature"), signature_of(&rf.induced_metric) == (p, q)));
        out.push(Check::new(tag("branch_law"), rf.branch_residual(), threshold));
        out.push(Check::new(
            tag("conjugation_covariance"),
            conjugation_covariance_residual(&rf),
            threshold,
        ));
        let inv = involution_from_s(&n, &rf).map(|m| mat_max_abs(&(m - rf.involution)));
        out.push(Check::new(tag("involution_from_s"), inv.unwrap_or(f64::INFINITY), threshold));
    }
    let rf = build_real_form(2, 4).expect("supported");
    let special = NordenSet::special();
    let mut rng = sample::rng(seed);
    let mut stab = 0.0;
    for _ in 0..20 {
        let k = random_real_orthogonal(&special, &mut rng, 0.6);
        match lift(&special, &k, 1e-8) {
            Ok(s) => {
                let nform = stabilizer_form(&rf, &s);
                let sg = if nform[(0, 0)].re >= 0.0 { ONE } else { -ONE };
                fmax(&mut stab, mat_max_abs(&(nform - Mat4::identity() * sg)));
            }
            Err(_) => stab = f64::INFINITY,
        }
    }
    out.push(Check::new("stabilizer_2_4", stab, 1e-9_f64.max(threshold)));
    let mut pf_imag = 0.0;
    for _ in 0..50 {
        let v = Vec6::from_fn(|_, _| c(sample::real(&mut rng)));
        let r = vector_to_bivector(&special, &v);
        let pf = pfaffian(&r);
        let quad = v[0] * v[0] + v[1] * v[1] - v[2] * v[2] - v[3] * v[3] - v[4] * v[4] - v[5] * v[5];
        fmax(&mut pf_imag, pf.im.abs());
        fmax(&mut pf_imag, (pf - quad).norm());
    }
    out.push(Check::new("pfaffian_real_2_4", pf_imag, threshold));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unsupported_signature() {
        assert_eq!(
            build_real_form(4, 2),
            Err(RealFormError::UnsupportedSignature { p: 4, q: 2 })
        );
    }

    #[test]
    fn involution_for_split_form() {
        let rf = build_real_form(2, 4).unwrap();
        let d: Vec<f64> = (0..6).map(|k| rf.involution()[(k, k)].re).collect();
        assert_eq!(d, [1.0, 1.0, -1.0, -1.0, -1.0, -1.0]);
    }

    #[test]
    fn branch_signs() {
        assert_eq!(build_real_form(1, 5).unwrap().branch_sign(), -1.0);
        assert_eq!(build_real_form(3, 3).unwrap().branch_sign(), 1.0);
        assert_eq!(build_real_form(6, 0).unwrap().branch_sign(), 1.0);
        assert_eq!(build_real_form(2, 4).unwrap().branch_sign(), 1.0);
    }

    #[test]
    fn suite_passes() {
        for chk in realform_suite(11, 1e-10) {
            assert!(chk.pass(), "{} {}", chk.name, chk.residual);
        }
    }
}
