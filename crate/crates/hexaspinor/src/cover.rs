//! The two-to-one map from unimodular 4x4 spin transforms to 6x6 orthogonal
//! transforms, its inverse up to sign, and the induced map on generators.

use alloc::vec::Vec;
use nalgebra::{DMatrix, DVector};

use crate::linalg::expm;
use crate::norden::{build_a_operators, push_traceless, AOperators, NordenSet};
use crate::report::{fmax, Check};
use crate::sample;
use crate::tensors::{c, mat_max_abs, Mat4, Mat6, C64, I, ONE, ZERO};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CoverError {
    #[error("determinant {det} differs from 1")]
    DeterminantNotOne { det: C64 },
    #[error("transform is not orthogonal (residual {residual:e})")]
    NotOrthogonal { residual: f64 },
    #[error("orthogonal transform has determinant {det}, not +1")]
    NonSpecial { det: C64 },
    #[error("intertwiner null space has dimension {dim}, expected 1")]
    NullSpaceDimension { dim: usize },
    #[error("lift residual {residual:e} exceeds tolerance")]
    LiftResidual { residual: f64 },
    #[error("generator has trace {trace}")]
    NotTraceless { trace: C64 },
}

/// Relative singular-value threshold used to count null directions.
pub const NULL_THRESHOLD: f64 = 1e-8;

/// K_α^β = ½ η_α^{ab} S_a^c S_b^d η^β_{cd}, with no input checks.
pub fn push_unchecked(n: &NordenSet, s: &Mat4) -> Mat6 {
    let st = s.transpose();
    let mut k = Mat6::zeros();
    for al in 0..6 {
        let m = st * n.eta_up()[al] * s;
        for be in 0..6 {
            k[(al, be)] = m.component_mul(&n.eta_down()[be]).sum() * 0.5;
        }
    }
    k
}

/// Push a unimodular spin transform forward. `tol` bounds |det S - 1|.
pub fn push(n: &NordenSet, s: &Mat4, tol: f64) -> Result<Mat6, CoverError> {
    let det = s.determinant();
    if (det - ONE).norm() > tol {
        return Err(CoverError::DeterminantNotOne { det });
    }
    Ok(push_unchecked(n, s))
}

/// ‖K g Kᵀ - g‖ in the max norm.
pub fn orthogonality_residual(n: &NordenSet, k: &Mat6) -> f64 {
    mat_max_abs(&(k * n.metric() * k.transpose() - n.metric()))
}

fn check_orthogonal(n: &NordenSet, k: &Mat6, tol: f64) -> Result<C64, CoverError> {
    let residual = orthogonality_residual(n, k);
    if residual.is_nan() || residual > tol * (1.0 + mat_max_abs(k).powi(2)) {
        return Err(CoverError::NotOrthogonal { residual });
    }
    Ok(k.determinant())
}

/// True iff det K = +1 within `tol`; errors if K is not orthogonal.
pub fn is_special(n: &NordenSet, k: &Mat6, tol: f64) -> Result<bool, CoverError> {
    let det = check_orthogonal(n, k, tol)?;
    Ok((det - ONE).norm() <= tol)
}

/// Choose between S and -S: the first entry of largest modulus (ties within a
/// relative 1e-12 go to the smaller flat index) must have argument in (-π/2, π/2].
pub fn apply_sign_convention(s: &Mat4) -> Mat4 {
    let mut best = 0;
    let mut best_abs = -1.0;
    for a in 0..4 {
        for b in 0..4 {
            let m = s[(a, b)].norm();
            if m > best_abs * (1.0 + 1e-12) {
                best = a * 4 + b;
                best_abs = m;
            }
        }
    }
    let z = s[(best / 4, best % 4)];
    if z.re > 0.0 || (z.re == 0.0 && z.im > 0.0) {
        *s
    } else {
        -s
    }
}

/// Smallest right singular vector of a stacked complex system, with the
/// number of singular values below `NULL_THRESHOLD` relative to the largest.
pub(crate) fn null_vector(m: &DMatrix<C64>) -> (DVector<C64>, usize, Vec<f64>) {
    let svd = m.clone().svd(false, true);
    let v_t = svd.v_t.expect("requested");
    let sv: Vec<f64> = svd.singular_values.iter().copied().collect();
    let smax = sv.iter().copied().fold(0.0, f64::max);
    let (imin, _) = sv
        .iter()
        .enumerate()
        .fold((0, f64::INFINITY), |acc, (i, &x)| if x < acc.1 { (i, x) } else { acc });
    let null_dim = sv.iter().filter(|&&x| x <= NULL_THRESHOLD * smax).count()
        + m.ncols().saturating_sub(sv.len());
    let v = v_t.row(imin).transpose().map(|z| z.conj());
    (v, null_dim, sv)
}

/// Recover S with push(S) = K, det S = 1, under the sign convention.
pub fn lift(n: &NordenSet, k: &Mat6, tol: f64) -> Result<Mat4, CoverError> {
    let det = check_orthogonal(n, k, tol)?;
    if (det - ONE).norm() > tol {
        if (det + ONE).norm() <= tol {
            return Err(CoverError::NonSpecial { det });
        }
        return Err(CoverError::NotOrthogonal {
            residual: (det - ONE).norm(),
        });
    }
    let up = n.eta_up();
    let m: Vec<Mat4> = (0..6)
        .map(|al| (0..6).fold(Mat4::zeros(), |acc, be| acc + up[be] * k[(al, be)]))
        .collect();
    // P W = W Q with W = Sᵀ, for every ordered pair with invertible blocks.
    let mut rows: Vec<[C64; 16]> = Vec::new();
    for al in 0..6 {
        for be in 0..6 {
            if al == be {
                continue;
            }
            let (Some(mi), Some(ui)) = (m[be].try_inverse(), up[be].try_inverse()) else {
                continue;
            };
            let p = m[al] * mi;
            let q = up[al] * ui;
            for i in 0..4 {
                for j in 0..4 {
                    let mut row = [ZERO; 16];
                    for x in 0..4 {
                        row[x * 4 + j] += p[(i, x)];
                        row[i * 4 + x] -= q[(x, j)];
                    }
                    rows.push(row);
                }
            }
        }
    }
    let sys = DMatrix::from_fn(rows.len(), 16, |r, col| rows[r][col]);
    let (v, dim, _) = null_vector(&sys);
    if dim != 1 {
        return Err(CoverError::NullSpaceDimension { dim });
    }
    let w = Mat4::from_fn(|i, j| v[i * 4 + j]);
    let mut s = w.transpose();
    let d = s.determinant();
    if d.norm() == 0.0 {
        return Err(CoverError::NullSpaceDimension { dim: 0 });
    }
    s /= d.powf(0.25);
    let mut best = s;
    let mut best_res = f64::INFINITY;
    let mut phase = ONE;
    for _ in 0..4 {
        let cand = s * phase;
        let r = mat_max_abs(&(push_unchecked(n, &cand) - k));
        if r < best_res {
            best_res = r;
            best = cand;
        }
        phase *= I;
    }
    if best_res.is_nan() || best_res > tol * (1.0 + mat_max_abs(k)) {
        return Err(CoverError::LiftResidual { residual: best_res });
    }
    Ok(apply_sign_convention(&best))
}

/// T_{αβ} = A_{αβb}^a T_a^b for a traceless T.
pub fn push_infinitesimal(n: &NordenSet, t: &Mat4, tol: f64) -> Result<Mat6, CoverError> {
    push_infinitesimal_with(&build_a_operators(n), t, tol)
}

pub fn push_infinitesimal_with(a_ops: &AOperators, t: &Mat4, tol: f64) -> Result<Mat6, CoverError> {
    let trace = t.trace();
    if trace.norm() > tol {
        return Err(CoverError::NotTraceless { trace });
    }
    Ok(push_traceless(a_ops, t))
}

/// The generator T_α^β = T_{αγ} g^{γβ} of the one-parameter group push(exp(tT)).
pub fn raise_generator(n: &NordenSet, t6: &Mat6) -> Mat6 {
    t6 * n.metric_inv()
}

/// max |S_a^b S_{a1}^{b1} S_c^d S_{c1}^{d1} ε_{bb1dd1} - det S ε_{aa1cc1}|.
pub fn epsilon_invariance_residual(n: &NordenSet, s: &Mat4) -> f64 {
    let eps = n.eps();
    let det = s.determinant();
    let mut nonzero = Vec::new();
    for b in 0..4 {
        for b1 in 0..4 {
            for d in 0..4 {
                for d1 in 0..4 {
                    let e = eps.get(b, b1, d, d1);
                    if e != ZERO {
                        nonzero.push((b, b1, d, d1, e));
                    }
                }
            }
        }
    }
    let mut r = 0.0;
    for a in 0..4 {
        for a1 in 0..4 {
            for cc in 0..4 {
                for c1 in 0..4 {
                    let mut v = ZERO;
                    for &(b, b1, d, d1, e) in &nonzero {
                        v += s[(a, b)] * s[(a1, b1)] * s[(cc, d)] * s[(c1, d1)] * e;
                    }
                    fmax(&mut r, (v - det * eps.get(a, a1, cc, c1)).norm());
                }
            }
        }
    }
    r
}

/// Derivative of push(exp(tT)) at t = 0 by central differences.
pub fn finite_difference_generator(n: &NordenSet, t: &Mat4, h: f64) -> Mat6 {
    let plus = push_unchecked(n, &expm(&(t * c(h))));
    let minus = push_unchecked(n, &expm(&(t * c(-h))));
    (plus - minus) / c(2.0 * h)
}

/// Residual checks for the double cover on seeded samples.
pub fn cover_suite(n: &NordenSet, seed: u64, threshold: f64) -> Vec<Check> {
    let mut rng = sample::rng(seed);
    let a_ops = build_a_operators(n);
    let mut hom = 0.0;
    let mut kernel = 0.0;
    let mut orth = 0.0;
    let mut det = 0.0;
    let mut round = 0.0;
    let mut hom_lift = 0.0;
    let mut eps_inv = 0.0;
    let mut lift_fail = 0.0;
    for k in 0..100 {
        let s1 = sample::special_linear4(&mut rng);
        let s2 = sample::special_linear4(&mut rng);
        let k1 = push_unchecked(n, &s1);
        let k2 = push_unchecked(n, &s2);
        fmax(&mut hom, mat_max_abs(&(push_unchecked(n, &(s1 * s2)) - k1 * k2)));
        fmax(&mut kernel, mat_max_abs(&(push_unchecked(n, &-s1) - k1)));
        fmax(&mut orth, orthogonality_residual(n, &k1));
        fmax(&mut det, (k1.determinant() - ONE).norm());
        if k < 20 {
            fmax(&mut eps_inv, epsilon_invariance_residual(n, &s1));
            match lift(n, &k1, 1e-8) {
                Ok(s) => fmax(&mut round, mat_max_abs(&(s - s1)).min(mat_max_abs(&(s + s1)))),
                Err(_) => lift_fail = 1.0,
            }
            match lift(n, &(k1 * k2), 1e-8) {
                Ok(s) => {
                    let p = s1 * s2;
                    fmax(&mut hom_lift, mat_max_abs(&(s - p)).min(mat_max_abs(&(s + p))));
                }
                Err(_) => lift_fail = 1.0,
            }
        }
    }
    let mut deriv = 0.0;
    for _ in 0..10 {
        let t = sample::traceless4(&mut rng);
        let fd = finite_difference_generator(n, &t, 1e-5);
        let an = raise_generator(n, &push_traceless(&a_ops, &t));
        fmax(&mut deriv, mat_max_abs(&(fd - an)));
    }
    let id_lift = lift(n, &Mat6::identity(), 1e-10)
        .map(|s| mat_max_abs(&(s - Mat4::identity())))
        .unwrap_or(f64::INFINITY);
    alloc::vec![
        Check::new("homomorphism", hom, threshold),
        Check::new("kernel_plus_minus", kernel, threshold),
        Check::new("orthogonality", orth, threshold),
        Check::new("determinant_one", det, threshold),
        Check::new("lift_round_trip", round, 1e-8_f64.max(threshold)),
        Check::new("lift_of_product", hom_lift, 1e-8_f64.max(threshold)),
        Check::new("lift_failures", lift_fail, 0.5),
        Check::new("lift_identity", id_lift, threshold),
        Check::new("epsilon_invariance", eps_inv, threshold),
        Check::new("generator_derivative", deriv, 1e-6_f64.max(threshold)),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn push_rejects_non_unimodular() {
        let n = NordenSet::special();
        let s = Mat4::identity() * c(2.0);
        assert!(matches!(push(&n, &s, 1e-10), Err(CoverError::DeterminantNotOne { .. })));
    }

    #[test]
    fn lift_rejects_reflection() {
        let n = NordenSet::orthonormal();
        let mut k = Mat6::identity();
        k[(5, 5)] = -ONE;
        assert!(matches!(lift(&n, &k, 1e-10), Err(CoverError::NonSpecial { .. })));
        assert_eq!(is_special(&n, &k, 1e-10), Ok(false));
    }

    #[test]
    fn lift_rejects_non_orthogonal() {
        let n = NordenSet::special();
        let k = Mat6::identity() * c(1.5);
        assert!(matches!(lift(&n, &k, 1e-10), Err(CoverError::NotOrthogonal { .. })));
    }

    #[test]
    fn sign_convention_boundary() {
        let s = Mat4::identity() * I;
        // argument exactly π/2 is kept
        assert_eq!(apply_sign_convention(&s), s);
        let s = Mat4::identity() * -I;
        assert_eq!(apply_sign_convention(&s), -s);
    }

    #[test]
    fn sign_convention_tie_uses_first_entry() {
        let mut s = Mat4::identity();
        s[(0, 0)] = -ONE;
        assert_eq!(apply_sign_convention(&s)[(0, 0)], ONE);
    }

    #[test]
    fn infinitesimal_rejects_trace() {
        let n = NordenSet::special();
        assert!(matches!(
            push_infinitesimal(&n, &Mat4::identity(), 1e-10),
            Err(CoverError::NotTraceless { .. })
        ));
    }

    #[test]
    fn suite_passes() {
        for n in [NordenSet::special(), NordenSet::orthonormal()] {
            for chk in cover_suite(&n, 3, 1e-9) {
                assert!(chk.pass(), "{} {}", chk.name, chk.residual);
            }
        }
    }
}
