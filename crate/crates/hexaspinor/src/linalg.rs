//! Small dense helpers not covered by nalgebra in no_std builds.

use nalgebra::{DMatrix, DVector, SMatrix};

use crate::tensors::{mat_max_abs, C64};

/// Matrix exponential by scaling and squaring of a truncated Taylor series.
pub fn expm<const N: usize>(m: &SMatrix<C64, N, N>) -> SMatrix<C64, N, N> {
    let norm = mat_max_abs(m) * N as f64;
    let mut squarings = 0;
    let mut scale = 1.0;
    while norm * scale > 0.25 {
        scale *= 0.5;
        squarings += 1;
    }
    let a = m * C64::new(scale, 0.0);
    let mut term = SMatrix::<C64, N, N>::identity();
    let mut sum = term;
    for k in 1..=24 {
        term = term * a / C64::new(k as f64, 0.0);
        sum += term;
    }
    for _ in 0..squarings {
        sum = sum * sum;
    }
    sum
}

/// Number of singular values above `rel` times the largest.
pub fn rank(m: &DMatrix<C64>, rel: f64) -> usize {
    let sv = m.clone().singular_values();
    let top = sv.iter().copied().fold(0.0, f64::max);
    if top == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&x| x > rel * top).count()
}

/// Minimum-norm least-squares solution with singular values below `rel`
/// times the largest discarded; returns the solution and the rank used.
pub fn lstsq(a: &DMatrix<C64>, b: &DVector<C64>, rel: f64) -> (DVector<C64>, usize) {
    let svd = a.clone().svd(true, true);
    let top = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let r = svd.singular_values.iter().filter(|&&x| x > rel * top).count();
    if top == 0.0 {
        return (DVector::zeros(a.ncols()), 0);
    }
    let x = svd.solve(b, rel * top).expect("u and v requested");
    (x, r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensors::{Mat4, I};

    #[test]
    fn exp_of_zero_is_identity() {
        assert_eq!(expm(&Mat4::zeros()), Mat4::identity());
    }

    #[test]
    fn exp_of_diagonal() {
        let mut m = Mat4::zeros();
        m[(0, 0)] = I * core::f64::consts::PI;
        m[(1, 1)] = C64::new(3.0, 0.0);
        let e = expm(&m);
        assert!((e[(0, 0)] + 1.0).norm() < 1e-13);
        assert!((e[(1, 1)] - libm::exp(3.0)).norm() < 1e-12);
    }

    #[test]
    fn rank_and_lstsq() {
        let a = DMatrix::from_row_slice(3, 2, &[C64::new(1.0, 0.0), C64::new(2.0, 0.0), C64::new(2.0, 0.0), C64::new(4.0, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0)]);
        assert_eq!(rank(&a, 1e-10), 1);
        let b = DVector::from_vec(alloc::vec![C64::new(5.0, 0.0), C64::new(10.0, 0.0), C64::new(0.0, 0.0)]);
        let (x, r) = lstsq(&a, &b, 1e-10);
        assert_eq!(r, 1);
        assert!(((&a * &x) - b).norm() < 1e-12);
        assert!((x[0] - 1.0).norm() < 1e-12 && (x[1] - 2.0).norm() < 1e-12);
    }
}
