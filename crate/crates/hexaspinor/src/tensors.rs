//! Dense complex tensors, Levi-Civita symbols and tolerance comparison.
//!
//! Storage is row-major. Raised and lowered index positions are not tracked
//! here; callers keep track of which axis is which.

use alloc::vec;
use alloc::vec::Vec;
use nalgebra::SMatrix;
use num_complex::Complex;

pub type C64 = Complex<f64>;
pub type Mat4 = SMatrix<C64, 4, 4>;
pub type Mat6 = SMatrix<C64, 6, 6>;
pub type Mat8 = SMatrix<C64, 8, 8>;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Real scalar as a complex number.
pub fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum TensorError {
    #[error("shape has a zero dimension")]
    ZeroDimension,
    #[error("expected {expected} entries for the shape, got {got}")]
    EntryCount { expected: usize, got: usize },
    #[error("entry {index} is not finite")]
    NonFinite { index: usize },
    #[error("shapes differ: {left:?} vs {right:?}")]
    ShapeMismatch { left: Vec<usize>, right: Vec<usize> },
    #[error("contracted axes {left} and {right} have dimensions {left_dim} and {right_dim}")]
    DimensionMismatch {
        left: usize,
        right: usize,
        left_dim: usize,
        right_dim: usize,
    },
    #[error("axis {axis} out of range for rank {rank}")]
    AxisOutOfRange { axis: usize, rank: usize },
    #[error("axis {axis} listed twice")]
    RepeatedAxis { axis: usize },
    #[error("tolerances must be finite and strictly positive")]
    InvalidTolerance,
}

/// Absolute and relative comparison thresholds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    abs: f64,
    rel: f64,
}

impl Tolerance {
    pub fn new(abs: f64, rel: f64) -> Result<Self, TensorError> {
        let ok = |x: f64| x.is_finite() && x > 0.0;
        if ok(abs) && ok(rel) {
            Ok(Self { abs, rel })
        } else {
            Err(TensorError::InvalidTolerance)
        }
    }

    /// Same value for both thresholds.
    pub fn uniform(t: f64) -> Result<Self, TensorError> {
        Self::new(t, t)
    }

    pub fn abs(&self) -> f64 {
        self.abs
    }

    pub fn rel(&self) -> f64 {
        self.rel
    }

    /// Allowed deviation against a reference magnitude.
    pub fn bound(&self, scale: f64) -> f64 {
        self.abs + self.rel * scale
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self { abs: 1e-10, rel: 1e-10 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComplexTensor {
    shape: Vec<usize>,
    entries: Vec<C64>,
}

fn strides_of(shape: &[usize]) -> Vec<usize> {
    let mut s = vec![1; shape.len()];
    for k in (0..shape.len().saturating_sub(1)).rev() {
        s[k] = s[k + 1] * shape[k + 1];
    }
    s
}

/// Advance a multi-index in row-major order. Returns false after the last one.
fn next_index(idx: &mut [usize], shape: &[usize]) -> bool {
    for k in (0..idx.len()).rev() {
        idx[k] += 1;
        if idx[k] < shape[k] {
            return true;
        }
        idx[k] = 0;
    }
    false
}

impl ComplexTensor {
    pub fn new(shape: Vec<usize>, entries: Vec<C64>) -> Result<Self, TensorError> {
        if shape.contains(&0) {
            return Err(TensorError::ZeroDimension);
        }
        let expected: usize = shape.iter().product();
        if expected != entries.len() {
            return Err(TensorError::EntryCount {
                expected,
                got: entries.len(),
            });
        }
        if let Some(index) = entries.iter().position(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(TensorError::NonFinite { index });
        }
        Ok(Self { shape, entries })
    }

    /// Zero tensor. Panics if a dimension is zero.
    pub fn zeros(shape: &[usize]) -> Self {
        assert!(shape.iter().all(|&d| d > 0), "zero dimension");
        let n = shape.iter().product();
        Self {
            shape: shape.to_vec(),
            entries: vec![ZERO; n],
        }
    }

    pub fn from_fn(shape: &[usize], mut f: impl FnMut(&[usize]) -> C64) -> Self {
        let mut t = Self::zeros(shape);
        let mut idx = vec![0; shape.len()];
        let mut flat = 0;
        loop {
            t.entries[flat] = f(&idx);
            flat += 1;
            if !next_index(&mut idx, shape) {
                break;
            }
        }
        t
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn rank(&self) -> usize {
        self.shape.len()
    }

    pub fn entries(&self) -> &[C64] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<C64> {
        self.entries
    }

    fn flat(&self, idx: &[usize]) -> usize {
        assert_eq!(idx.len(), self.shape.len(), "index rank");
        let mut f = 0;
        for (k, (&i, &d)) in idx.iter().zip(&self.shape).enumerate() {
            assert!(i < d, "index {i} out of range on axis {k}");
            f = f * d + i;
        }
        f
    }

    pub fn get(&self, idx: &[usize]) -> C64 {
        self.entries[self.flat(idx)]
    }

    pub fn set(&mut self, idx: &[usize], v: C64) {
        let f = self.flat(idx);
        self.entries[f] = v;
    }

    pub fn scale(&self, a: C64) -> Self {
        Self {
            shape: self.shape.clone(),
            entries: self.entries.iter().map(|z| z * a).collect(),
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(C64, C64) -> C64) -> Result<Self, TensorError> {
        self.same_shape(other)?;
        Ok(Self {
            shape: self.shape.clone(),
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| f(*a, *b))
                .collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self, TensorError> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, TensorError> {
        self.zip_with(other, |a, b| a - b)
    }

    fn same_shape(&self, other: &Self) -> Result<(), TensorError> {
        if self.shape == other.shape {
            Ok(())
        } else {
            Err(TensorError::ShapeMismatch {
                left: self.shape.clone(),
                right: other.shape.clone(),
            })
        }
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn conj(&self) -> Self {
        Self {
            shape: self.shape.clone(),
            entries: self.entries.iter().map(|z| z.conj()).collect(),
        }
    }

    /// Reorder axes: output axis `k` is input axis `axes[k]`.
    pub fn permute(&self, axes: &[usize]) -> Result<Self, TensorError> {
        check_axes(axes, self.rank())?;
        if axes.len() != self.rank() {
            return Err(TensorError::AxisOutOfRange {
                axis: axes.len(),
                rank: self.rank(),
            });
        }
        let shape: Vec<usize> = axes.iter().map(|&a| self.shape[a]).collect();
        let strides = strides_of(&self.shape);
        Ok(Self::from_fn(&shape, |idx| {
            let f: usize = idx.iter().zip(axes).map(|(&i, &a)| i * strides[a]).sum();
            self.entries[f]
        }))
    }

    pub fn from_matrix<const R: usize, const C: usize>(m: &SMatrix<C64, R, C>) -> Self {
        Self::from_fn(&[R, C], |i| m[(i[0], i[1])])
    }

    /// View a rank-2 tensor as a static matrix.
    pub fn to_matrix<const R: usize, const C: usize>(&self) -> Result<SMatrix<C64, R, C>, TensorError> {
        if self.shape != [R, C] {
            return Err(TensorError::ShapeMismatch {
                left: self.shape.clone(),
                right: vec![R, C],
            });
        }
        Ok(SMatrix::from_fn(|i, j| self.entries[i * C + j]))
    }

    pub fn from_vector(v: &[C64]) -> Self {
        Self {
            shape: vec![v.len()],
            entries: v.to_vec(),
        }
    }
}

fn check_axes(axes: &[usize], rank: usize) -> Result<(), TensorError> {
    for (k, &a) in axes.iter().enumerate() {
        if a >= rank {
            return Err(TensorError::AxisOutOfRange { axis: a, rank });
        }
        if axes[..k].contains(&a) {
            return Err(TensorError::RepeatedAxis { axis: a });
        }
    }
    Ok(())
}

/// Contract `t1` with `t2` over `(axis of t1, axis of t2)` pairs.
/// Free axes of `t1` come first, then those of `t2`.
pub fn contract(
    t1: &ComplexTensor,
    t2: &ComplexTensor,
    axis_pairs: &[(usize, usize)],
) -> Result<ComplexTensor, TensorError> {
    let left: Vec<usize> = axis_pairs.iter().map(|p| p.0).collect();
    let right: Vec<usize> = axis_pairs.iter().map(|p| p.1).collect();
    check_axes(&left, t1.rank())?;
    check_axes(&right, t2.rank())?;
    for &(a, b) in axis_pairs {
        if t1.shape[a] != t2.shape[b] {
            return Err(TensorError::DimensionMismatch {
                left: a,
                right: b,
                left_dim: t1.shape[a],
                right_dim: t2.shape[b],
            });
        }
    }
    let free1: Vec<usize> = (0..t1.rank()).filter(|a| !left.contains(a)).collect();
    let free2: Vec<usize> = (0..t2.rank()).filter(|a| !right.contains(a)).collect();
    let s1 = strides_of(&t1.shape);
    let s2 = strides_of(&t2.shape);
    let sum_shape: Vec<usize> = left.iter().map(|&a| t1.shape[a]).collect();

    let mut out_shape: Vec<usize> = free1.iter().map(|&a| t1.shape[a]).collect();
    out_shape.extend(free2.iter().map(|&a| t2.shape[a]));
    let scalar = out_shape.is_empty();
    if scalar {
        out_shape.push(1);
    }

    let n1 = free1.len();
    let out = ComplexTensor::from_fn(&out_shape, |idx| {
        let idx = if scalar { &[][..] } else { idx };
        let base1: usize = free1.iter().zip(&idx[..n1]).map(|(&a, &i)| i * s1[a]).sum();
        let base2: usize = free2.iter().zip(&idx[n1..]).map(|(&a, &i)| i * s2[a]).sum();
        if sum_shape.is_empty() {
            return t1.entries[base1] * t2.entries[base2];
        }
        let mut acc = ZERO;
        let mut k = vec![0; sum_shape.len()];
        loop {
            let mut f1 = base1;
            let mut f2 = base2;
            for (j, &kj) in k.iter().enumerate() {
                f1 += kj * s1[left[j]];
                f2 += kj * s2[right[j]];
            }
            acc += t1.entries[f1] * t2.entries[f2];
            if !next_index(&mut k, &sum_shape) {
                break;
            }
        }
        acc
    });
    Ok(out)
}

/// All permutations of `0..n` with their signs, identity first.
pub fn signed_permutations(n: usize) -> Vec<(Vec<usize>, i32)> {
    fn rec(prefix: &mut Vec<usize>, rest: &mut Vec<usize>, sign: i32, out: &mut Vec<(Vec<usize>, i32)>) {
        if rest.is_empty() {
            out.push((prefix.clone(), sign));
            return;
        }
        for k in 0..rest.len() {
            let x = rest.remove(k);
            prefix.push(x);
            // moving element k to the front of `rest` costs k transpositions
            rec(prefix, rest, if k % 2 == 0 { sign } else { -sign }, out);
            prefix.pop();
            rest.insert(k, x);
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut (0..n).collect(), 1, &mut out);
    out
}

/// Sign of a permutation given as a list of distinct values, 0 if any repeat.
pub fn permutation_sign(p: &[usize]) -> i32 {
    let mut sign = 1;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] == p[j] {
                return 0;
            }
            if p[i] > p[j] {
                sign = -sign;
            }
        }
    }
    sign
}

fn symmetrize_impl(t: &ComplexTensor, axes: &[usize], signed: bool) -> Result<ComplexTensor, TensorError> {
    check_axes(axes, t.rank())?;
    if let Some(&first) = axes.first() {
        for &a in axes {
            if t.shape[a] != t.shape[first] {
                return Err(TensorError::DimensionMismatch {
                    left: first,
                    right: a,
                    left_dim: t.shape[first],
                    right_dim: t.shape[a],
                });
            }
        }
    }
    let perms = signed_permutations(axes.len());
    let weight = 1.0 / perms.len() as f64;
    let mut src = vec![0; t.rank()];
    Ok(ComplexTensor::from_fn(&t.shape, |idx| {
        let mut acc = ZERO;
        for (p, sign) in &perms {
            src.copy_from_slice(idx);
            for (k, &pk) in p.iter().enumerate() {
                src[axes[k]] = idx[axes[pk]];
            }
            let v = t.get(&src);
            acc += if signed && *sign < 0 { -v } else { v };
        }
        acc * weight
    }))
}

/// Signed average over all permutations of the listed axes.
pub fn antisymmetrize(t: &ComplexTensor, axes: &[usize]) -> Result<ComplexTensor, TensorError> {
    symmetrize_impl(t, axes, true)
}

/// Unsigned average over all permutations of the listed axes.
pub fn symmetrize(t: &ComplexTensor, axes: &[usize]) -> Result<ComplexTensor, TensorError> {
    symmetrize_impl(t, axes, false)
}

/// Largest entrywise modulus of `t1 - t2`.
pub fn max_abs_diff(t1: &ComplexTensor, t2: &ComplexTensor) -> Result<f64, TensorError> {
    t1.same_shape(t2)?;
    Ok(t1
        .entries
        .iter()
        .zip(&t2.entries)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max))
}

/// True iff the maximal deviation is within `abs + rel * max magnitude`.
pub fn approx_equal(t1: &ComplexTensor, t2: &ComplexTensor, tol: Tolerance) -> Result<bool, TensorError> {
    let d = max_abs_diff(t1, t2)?;
    let scale = t1.max_abs().max(t2.max_abs());
    Ok(d <= tol.bound(scale))
}

/// Alternating symbol on four indices, scaled so that the 1234 entry is `scale`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Epsilon4 {
    scale: C64,
}

impl Epsilon4 {
    pub fn new(scale: C64) -> Self {
        Self { scale }
    }

    pub fn scale(&self) -> C64 {
        self.scale
    }

    pub fn get(&self, a: usize, b: usize, c: usize, d: usize) -> C64 {
        self.scale * permutation_sign(&[a, b, c, d]) as f64
    }

    pub fn to_tensor(&self) -> ComplexTensor {
        ComplexTensor::from_fn(&[4, 4, 4, 4], |i| self.get(i[0], i[1], i[2], i[3]))
    }
}

impl Default for Epsilon4 {
    fn default() -> Self {
        Self { scale: ONE }
    }
}

/// Levi-Civita symbol of rank `n` with unit leading entry.
pub fn levi_civita(n: usize) -> ComplexTensor {
    ComplexTensor::from_fn(&vec![n; n], |i| c(permutation_sign(i) as f64))
}

/// Identity of size `n` as a rank-2 tensor.
pub fn delta(n: usize) -> ComplexTensor {
    ComplexTensor::from_fn(&[n, n], |i| if i[0] == i[1] { ONE } else { ZERO })
}

/// Largest entry modulus of a static matrix.
pub fn mat_max_abs<const R: usize, const C: usize>(m: &SMatrix<C64, R, C>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_shapes() {
        assert_eq!(
            ComplexTensor::new(vec![2, 0], vec![]),
            Err(TensorError::ZeroDimension)
        );
        assert!(matches!(
            ComplexTensor::new(vec![2, 2], vec![ONE; 3]),
            Err(TensorError::EntryCount { expected: 4, got: 3 })
        ));
        assert!(matches!(
            ComplexTensor::new(vec![1], vec![C64::new(f64::NAN, 0.0)]),
            Err(TensorError::NonFinite { index: 0 })
        ));
    }

    #[test]
    fn full_contraction_gives_rank_one_scalar() {
        let d = delta(4);
        let t = contract(&d, &d, &[(0, 0), (1, 1)]).unwrap();
        assert_eq!(t.shape(), &[1]);
        assert_eq!(t.entries()[0], c(4.0));
    }

    #[test]
    fn contraction_dimension_mismatch() {
        let a = ComplexTensor::zeros(&[2, 3]);
        let b = ComplexTensor::zeros(&[2, 2]);
        assert!(matches!(
            contract(&a, &b, &[(1, 0)]),
            Err(TensorError::DimensionMismatch { .. })
        ));
        assert!(matches!(
            contract(&a, &b, &[(5, 0)]),
            Err(TensorError::AxisOutOfRange { .. })
        ));
        assert!(matches!(
            contract(&a, &b, &[(0, 0), (0, 1)]),
            Err(TensorError::RepeatedAxis { .. })
        ));
    }

    #[test]
    fn permutation_table() {
        let p = signed_permutations(3);
        assert_eq!(p.len(), 6);
        for (q, s) in &p {
            assert_eq!(*s, permutation_sign(q));
        }
        assert_eq!(permutation_sign(&[0, 0, 1]), 0);
    }

    #[test]
    fn tolerance_validation() {
        assert!(Tolerance::new(0.0, 1.0).is_err());
        assert!(Tolerance::new(1.0, f64::INFINITY).is_err());
        assert_eq!(Tolerance::default().abs(), 1e-10);
    }

    #[test]
    fn antisymmetrize_empty_axis_list_is_identity() {
        let t = ComplexTensor::from_fn(&[2, 2], |i| c((i[0] * 2 + i[1]) as f64));
        assert_eq!(antisymmetrize(&t, &[]).unwrap(), t);
    }

    #[test]
    fn permute_transposes() {
        let t = ComplexTensor::from_fn(&[2, 3], |i| c((i[0] * 3 + i[1]) as f64));
        let p = t.permute(&[1, 0]).unwrap();
        assert_eq!(p.shape(), &[3, 2]);
        assert_eq!(p.get(&[2, 1]), t.get(&[1, 2]));
    }
}
