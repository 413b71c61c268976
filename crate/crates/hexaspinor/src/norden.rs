//! Connecting operators between antisymmetric spinor pairs and six-vectors.
//!
//! Block layout: `eta_up[α][(a, b)]` is η_α^{ab}, `eta_down[α][(a, b)]` is
//! η^α_{ab}. All indices are 0-based.

use alloc::vec::Vec;
use libm::sqrt;
use nalgebra::SVector;

use crate::bivgeo::pfaffian;
use crate::report::{fmax, Check};
use crate::sample;
use crate::tensors::{c, contract, mat_max_abs, ComplexTensor, Epsilon4, Mat4, Mat6, Mat8, C64, I, ONE, ZERO};

pub type Spinor = SVector<C64, 4>;
pub type Vec6 = SVector<C64, 6>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum NordenError {
    #[error("block {index} is not antisymmetric (deviation {deviation:e})")]
    NotAntisymmetric { index: usize, deviation: f64 },
    #[error("operator metric is singular")]
    SingularMetric,
}

/// Antisymmetric complex 4x4 array R^{ab}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bivector4(Mat4);

fn antisymmetry_deviation(m: &Mat4) -> f64 {
    mat_max_abs(&(m + m.transpose()))
}

impl Bivector4 {
    pub fn new(m: Mat4) -> Result<Self, NordenError> {
        let deviation = antisymmetry_deviation(&m);
        if deviation > 1e-12 * (1.0 + mat_max_abs(&m)) {
            return Err(NordenError::NotAntisymmetric { index: 0, deviation });
        }
        Ok(Self((m - m.transpose()) * c(0.5)))
    }

    /// Antisymmetric part of an arbitrary matrix.
    pub fn antisymmetric_part(m: &Mat4) -> Self {
        Self((m - m.transpose()) * c(0.5))
    }

    pub fn zero() -> Self {
        Self(Mat4::zeros())
    }

    /// X^a Y^b - X^b Y^a.
    pub fn wedge(x: &Spinor, y: &Spinor) -> Self {
        let xy = x * y.transpose();
        Self(xy - xy.transpose())
    }

    pub fn matrix(&self) -> &Mat4 {
        &self.0
    }

    pub fn scale(&self, a: C64) -> Self {
        Self(self.0 * a)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(self.0 + other.0)
    }
}

/// R_{ab} = ½ ε_{abcd} R^{cd}.
pub fn lower_pair(eps: &Epsilon4, m: &Mat4) -> Mat4 {
    Mat4::from_fn(|a, b| {
        let mut s = ZERO;
        for p in 0..4 {
            for q in 0..4 {
                s += eps.get(a, b, p, q) * m[(p, q)];
            }
        }
        s * 0.5
    })
}

/// R^{ab} = ½ ε^{abcd} R_{cd}.
pub fn raise_pair(eps: &Epsilon4, m: &Mat4) -> Mat4 {
    lower_pair(eps, m) / (eps.scale() * eps.scale())
}

#[derive(Debug, Clone, PartialEq)]
pub struct NordenSet {
    eta_up: [Mat4; 6],
    eta_down: [Mat4; 6],
    eta_low: [Mat4; 6],
    metric: Mat6,
    metric_inv: Mat6,
    eps: Epsilon4,
}

fn table(entries: &[(usize, usize, usize, C64)]) -> [Mat4; 6] {
    let mut t = [Mat4::zeros(); 6];
    for &(k, a, b, v) in entries {
        t[k - 1][(a - 1, b - 1)] = v;
        t[k - 1][(b - 1, a - 1)] = -v;
    }
    t
}

fn special_up() -> [Mat4; 6] {
    let s = c(1.0 / sqrt(2.0));
    let is = I * s;
    table(&[
        (1, 1, 4, is),
        (1, 2, 3, -is),
        (2, 1, 2, s),
        (2, 3, 4, s),
        (3, 1, 2, s),
        (3, 3, 4, -s),
        (4, 1, 3, -is),
        (4, 2, 4, is),
        (5, 1, 3, s),
        (5, 2, 4, s),
        (6, 1, 4, is),
        (6, 2, 3, is),
    ])
}

fn special_down() -> [Mat4; 6] {
    let s = c(1.0 / sqrt(2.0));
    let is = I * s;
    table(&[
        (1, 1, 4, -is),
        (1, 2, 3, is),
        (2, 1, 2, s),
        (2, 3, 4, s),
        (3, 1, 2, s),
        (3, 3, 4, -s),
        (4, 1, 3, is),
        (4, 2, 4, -is),
        (5, 1, 3, s),
        (5, 2, 4, s),
        (6, 1, 4, -is),
        (6, 2, 3, -is),
    ])
}

/// g_{αβ} = ¼ η_α^{ab} η_β^{cd} ε_{abcd}.
fn metric_from_up(up: &[Mat4; 6], low: &[Mat4; 6]) -> Mat6 {
    Mat6::from_fn(|i, j| up[i].component_mul(&low[j]).sum() * 0.5)
}

impl NordenSet {
    /// The tabulated operators of the real (2,4) basis, with ε_{1234} = 1.
    pub fn special() -> Self {
        Self::from_tables(special_up(), special_down(), Epsilon4::default())
            .expect("tabulated operators are consistent")
    }

    /// Complex-orthonormal operators (g = identity): blocks 3..6 of the
    /// tabulated set divided by i.
    pub fn orthonormal() -> Self {
        let mut up = special_up();
        for m in up.iter_mut().skip(2) {
            *m /= I;
        }
        Self::from_eta_up(up, Epsilon4::default()).expect("orthonormal operators are consistent")
    }

    /// Given η_α^{ab}, derive the metric and η^α_{ab} = g^{αβ} η_{βab}.
    pub fn from_eta_up(up: [Mat4; 6], eps: Epsilon4) -> Result<Self, NordenError> {
        check_blocks(&up)?;
        let low = up.map(|m| lower_pair(&eps, &m));
        let metric = metric_from_up(&up, &low);
        let metric_inv = metric.try_inverse().ok_or(NordenError::SingularMetric)?;
        let down = core::array::from_fn(|a| (0..6).fold(Mat4::zeros(), |acc, b| acc + low[b] * metric_inv[(a, b)]));
        Ok(Self {
            eta_up: up,
            eta_down: down,
            eta_low: low,
            metric,
            metric_inv,
            eps,
        })
    }

    /// Accept both tables as given. The metric is computed from the raised
    /// blocks; consistency with `down` is left to [`identity_suite`].
    pub fn from_tables(up: [Mat4; 6], down: [Mat4; 6], eps: Epsilon4) -> Result<Self, NordenError> {
        check_blocks(&up)?;
        check_blocks(&down)?;
        let low = up.map(|m| lower_pair(&eps, &m));
        let metric = metric_from_up(&up, &low);
        let metric_inv = metric.try_inverse().ok_or(NordenError::SingularMetric)?;
        Ok(Self {
            eta_up: up,
            eta_down: down,
            eta_low: low,
            metric,
            metric_inv,
            eps,
        })
    }

    pub fn eta_up(&self) -> &[Mat4; 6] {
        &self.eta_up
    }

    pub fn eta_down(&self) -> &[Mat4; 6] {
        &self.eta_down
    }

    /// η_{αab}: the raised blocks with their spinor pair lowered.
    pub fn eta_low(&self) -> &[Mat4; 6] {
        &self.eta_low
    }

    /// g_{αβ}.
    pub fn metric(&self) -> &Mat6 {
        &self.metric
    }

    /// g^{αβ}.
    pub fn metric_inv(&self) -> &Mat6 {
        &self.metric_inv
    }

    pub fn eps(&self) -> &Epsilon4 {
        &self.eps
    }

    /// g_{αβ} u^α v^β.
    pub fn inner(&self, u: &Vec6, v: &Vec6) -> C64 {
        (u.transpose() * self.metric * v)[(0, 0)]
    }
}

fn check_blocks(blocks: &[Mat4; 6]) -> Result<(), NordenError> {
    for (index, m) in blocks.iter().enumerate() {
        let deviation = antisymmetry_deviation(m);
        if deviation > 1e-12 * (1.0 + mat_max_abs(m)) {
            return Err(NordenError::NotAntisymmetric { index, deviation });
        }
    }
    Ok(())
}

pub fn build_norden_special() -> NordenSet {
    NordenSet::special()
}

/// r^α = ½ η^α_{ab} R^{ab}.
pub fn bivector_to_vector(n: &NordenSet, r: &Bivector4) -> Vec6 {
    Vec6::from_fn(|k, _| n.eta_down[k].component_mul(&r.0).sum() * 0.5)
}

/// R^{ab} = η_α^{ab} r^α.
pub fn vector_to_bivector(n: &NordenSet, r: &Vec6) -> Bivector4 {
    Bivector4((0..6).fold(Mat4::zeros(), |acc, k| acc + n.eta_up[k] * r[k]))
}

pub fn lower_bivector(n: &NordenSet, r: &Bivector4) -> Bivector4 {
    Bivector4(lower_pair(&n.eps, &r.0))
}

pub fn raise_bivector(n: &NordenSet, r: &Bivector4) -> Bivector4 {
    Bivector4(raise_pair(&n.eps, &r.0))
}

/// A_{αβd}^c stored as `get(α, β)[(d, c)]`.
#[derive(Debug, Clone, PartialEq)]
pub struct AOperators {
    blocks: [[Mat4; 6]; 6],
}

impl AOperators {
    pub fn get(&self, alpha: usize, beta: usize) -> &Mat4 {
        &self.blocks[alpha][beta]
    }

    /// A^{αβ}{}_d{}^c, both six-indices raised with g.
    pub fn raised(&self, n: &NordenSet) -> AOperators {
        let gi = n.metric_inv();
        let mut blocks = [[Mat4::zeros(); 6]; 6];
        for (a, row) in blocks.iter_mut().enumerate() {
            for (b, out) in row.iter_mut().enumerate() {
                for m in 0..6 {
                    for l in 0..6 {
                        let w = gi[(a, m)] * gi[(b, l)];
                        if w != ZERO {
                            *out += self.blocks[m][l] * w;
                        }
                    }
                }
            }
        }
        AOperators { blocks }
    }

    /// Shape [6, 6, 4, 4], axes (α, β, d, c).
    pub fn to_tensor(&self) -> ComplexTensor {
        ComplexTensor::from_fn(&[6, 6, 4, 4], |i| self.blocks[i[0]][i[1]][(i[2], i[3])])
    }
}

/// A_{αβd}^c = ½(η_α^{ca} η_{βda} - η_β^{ca} η_{αda}).
pub fn build_a_operators(n: &NordenSet) -> AOperators {
    let up = &n.eta_up;
    let low = &n.eta_low;
    let mut blocks = [[Mat4::zeros(); 6]; 6];
    for (al, row) in blocks.iter_mut().enumerate() {
        for (be, out) in row.iter_mut().enumerate() {
            // (d, c) entry: Σ_a low_β[d,a] up_α[c,a] = (low_β up_αᵀ)[d,c]
            *out = (low[be] * up[al].transpose() - low[al] * up[be].transpose()) * c(0.5);
        }
    }
    AOperators { blocks }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GammaSet {
    gammas: [Mat8; 6],
    gamma7: Mat8,
}

impl GammaSet {
    pub fn gamma(&self, k: usize) -> &Mat8 {
        &self.gammas[k]
    }

    pub fn gammas(&self) -> &[Mat8; 6] {
        &self.gammas
    }

    /// γ_1 γ_2 ⋯ γ_6.
    pub fn gamma7(&self) -> &Mat8 {
        &self.gamma7
    }
}

/// γ_α = √2 [[0, σ_α], [η_α, 0]] with η_α = η_α^{ab} and σ_α[a][b] = η_{αba}.
pub fn build_gammas(n: &NordenSet) -> GammaSet {
    let r2 = c(sqrt(2.0));
    let gammas = core::array::from_fn(|k| {
        let mut g = Mat8::zeros();
        let sigma = n.eta_low[k].transpose();
        g.fixed_view_mut::<4, 4>(0, 4).copy_from(&(sigma * r2));
        g.fixed_view_mut::<4, 4>(4, 0).copy_from(&(n.eta_up[k] * r2));
        g
    });
    let gamma7 = gammas.iter().fold(Mat8::identity(), |acc, g| acc * g);
    GammaSet { gammas, gamma7 }
}

/// Max over all pairs of ‖γ_λγ_ψ + γ_ψγ_λ - 2 g_{λψ} I‖.
pub fn clifford_residual(n: &NordenSet, gs: &GammaSet) -> f64 {
    let mut r = 0.0;
    for l in 0..6 {
        for p in l..6 {
            let ac = gs.gammas[l] * gs.gammas[p] + gs.gammas[p] * gs.gammas[l];
            fmax(&mut r, mat_max_abs(&(ac - Mat8::identity() * (n.metric[(l, p)] * 2.0))));
        }
    }
    r
}

/// Max over α of ‖γ_7γ_α + γ_αγ_7‖.
pub fn gamma7_anticommutator_residual(gs: &GammaSet) -> f64 {
    let mut r = 0.0;
    for g in &gs.gammas {
        fmax(&mut r, mat_max_abs(&(gs.gamma7 * g + g * gs.gamma7)));
    }
    r
}

/// ‖γ_7² - I‖.
pub fn gamma7_square_residual(gs: &GammaSet) -> f64 {
    mat_max_abs(&(gs.gamma7 * gs.gamma7 - Mat8::identity()))
}

/// e_a^b_c^d_k^l with overall factor `e_tilde`; axes (a, b, c, d, k, l).
pub fn six_form_spinor(e_tilde: C64) -> ComplexTensor {
    let d = |x: usize, y: usize| if x == y { 1.0 } else { 0.0 };
    ComplexTensor::from_fn(&[4; 6], |i| {
        let (a, b, cc, dd, k, l) = (i[0], i[1], i[2], i[3], i[4], i[5]);
        let v = 2.0
            * ((4.0 * d(k, b) * d(cc, l) - d(k, l) * d(cc, b)) * d(a, dd)
                + (4.0 * d(k, dd) * d(a, l) - d(k, l) * d(a, dd)) * d(cc, b))
            - (4.0 * d(k, b) * d(a, l) - d(k, l) * d(a, b)) * d(cc, dd)
            - (4.0 * d(k, dd) * d(cc, l) - d(k, l) * d(cc, dd)) * d(a, b);
        e_tilde * v
    })
}

/// e_{αβγδλμ} = A_{αβb}^a A_{γδd}^c A_{λμl}^k e_a^b_c^d_k^l with ẽ = i/8.
pub fn six_vector(a_ops: &AOperators) -> ComplexTensor {
    let a = a_ops.to_tensor();
    let e = six_form_spinor(I / 8.0);
    // (p,q,c,d,k,l)
    let x = contract(&a, &e, &[(3, 0), (2, 1)]).expect("shapes fixed");
    // (p,q,k,l,r,s)
    let y = contract(&x, &a, &[(2, 3), (3, 2)]).expect("shapes fixed");
    // (p,q,r,s,t,u)
    contract(&y, &a, &[(2, 3), (3, 2)]).expect("shapes fixed")
}

/// i(tr(A_{αβ}A_{γδ}A_{λμ}) + tr(A_{αβ}A_{λμ}A_{γδ})) with each A block read as a (d, c) matrix.
pub fn six_vector_triple_a(a_ops: &AOperators) -> ComplexTensor {
    ComplexTensor::from_fn(&[6; 6], |i| {
        let p = a_ops.get(i[0], i[1]);
        let q = a_ops.get(i[2], i[3]);
        let r = a_ops.get(i[4], i[5]);
        I * ((p * q * r).trace() + (p * r * q).trace())
    })
}

/// Largest deviation from total antisymmetry over adjacent transpositions.
pub fn antisymmetry_residual(t: &ComplexTensor) -> f64 {
    let rank = t.rank();
    let mut r = 0.0;
    for k in 0..rank.saturating_sub(1) {
        let mut axes: Vec<usize> = (0..rank).collect();
        axes.swap(k, k + 1);
        let p = t.permute(&axes).expect("valid permutation");
        let s = t.add(&p).expect("same shape");
        fmax(&mut r, s.max_abs());
    }
    r
}

fn completeness_residuals(n: &NordenSet) -> (f64, f64) {
    let mut r1 = 0.0;
    for a in 0..6 {
        for b in 0..6 {
            let v = n.eta_down[a].component_mul(&n.eta_up[b]).sum() * 0.5;
            let target = if a == b { ONE } else { ZERO };
            fmax(&mut r1, (v - target).norm());
        }
    }
    let mut r2 = 0.0;
    for a in 0..4 {
        for a1 in 0..4 {
            for b in 0..4 {
                for b1 in 0..4 {
                    let v: C64 = (0..6).map(|k| n.eta_down[k][(a, a1)] * n.eta_up[k][(b, b1)]).sum();
                    let d = |x: usize, y: usize| if x == y { 1.0 } else { 0.0 };
                    let target = d(a, b) * d(a1, b1) - d(a, b1) * d(a1, b);
                    fmax(&mut r2, (v - target).norm());
                }
            }
        }
    }
    (r1, r2)
}

fn metric_residuals(n: &NordenSet) -> (f64, f64) {
    let eps = &n.eps;
    let up_eps = |a, b, c_, d| eps.get(a, b, c_, d) / (eps.scale() * eps.scale());
    let mut r1 = 0.0;
    for al in 0..6 {
        for be in 0..6 {
            let mut s = ZERO;
            for a in 0..4 {
                for a1 in 0..4 {
                    for b in 0..4 {
                        for b1 in 0..4 {
                            s += n.eta_down[al][(a, a1)] * n.eta_down[be][(b, b1)] * up_eps(a, a1, b, b1);
                        }
                    }
                }
            }
            fmax(&mut r1, (s * 0.25 - n.metric_inv[(al, be)]).norm());
        }
    }
    let mut r2 = 0.0;
    for a in 0..4 {
        for a1 in 0..4 {
            for b in 0..4 {
                for b1 in 0..4 {
                    let mut s = ZERO;
                    for al in 0..6 {
                        for be in 0..6 {
                            s += n.eta_up[al][(a, a1)] * n.eta_up[be][(b, b1)] * n.metric_inv[(al, be)];
                        }
                    }
                    fmax(&mut r2, (s - up_eps(a, a1, b, b1)).norm());
                }
            }
        }
    }
    (r1, r2)
}

/// All five contraction laws of ε^{abcd}ε_{klmn}.
pub fn epsilon_residual(eps: &Epsilon4) -> f64 {
    let e = eps.to_tensor();
    let eu = e.scale(ONE / (eps.scale() * eps.scale()));
    let mut r = 0.0;
    // over four indices: 24
    let full = contract(&eu, &e, &[(0, 0), (1, 1), (2, 2), (3, 3)]).unwrap();
    fmax(&mut r, (full.entries()[0] - 24.0).norm());
    // over three: 6 δ
    let three = contract(&eu, &e, &[(1, 1), (2, 2), (3, 3)]).unwrap();
    for a in 0..4 {
        for k in 0..4 {
            let t = if a == k { 6.0 } else { 0.0 };
            fmax(&mut r, (three.get(&[a, k]) - t).norm());
        }
    }
    // over two: 4 δ_[k^a δ_l]^b, axes (a, b, k, l)
    let two = contract(&eu, &e, &[(2, 2), (3, 3)]).unwrap();
    // over one: 6 δ_[k^a δ_l^b δ_m]^c, axes (a, b, c, k, l, m)
    let one = contract(&eu, &e, &[(3, 3)]).unwrap();
    let d = |x: usize, y: usize| if x == y { 1.0 } else { 0.0 };
    for a in 0..4 {
        for b in 0..4 {
            for k in 0..4 {
                for l in 0..4 {
                    let t = 2.0 * (d(k, a) * d(l, b) - d(l, a) * d(k, b));
                    fmax(&mut r, (two.get(&[a, b, k, l]) - t).norm());
                    for cc in 0..4 {
                        for m in 0..4 {
                            // 6 × antisymmetrised product = determinant of the 3x3 δ block
                            let t = d(k, a) * (d(l, b) * d(m, cc) - d(m, b) * d(l, cc))
                                - d(l, a) * (d(k, b) * d(m, cc) - d(m, b) * d(k, cc))
                                + d(m, a) * (d(k, b) * d(l, cc) - d(l, b) * d(k, cc));
                            fmax(&mut r, (one.get(&[a, b, cc, k, l, m]) - t).norm());
                        }
                    }
                }
            }
        }
    }
    r
}

fn symmetric_product_residuals(n: &NordenSet) -> [f64; 3] {
    let eps = &n.eps;
    let up = &n.eta_up;
    let low = &n.eta_low;
    let mut q = Mat6::zeros();
    for al in 0..6 {
        for be in 0..6 {
            q[(al, be)] = up[al].component_mul(&low[be]).sum() * 2.0;
        }
    }
    let q = (q + q.transpose()) * c(0.5);
    let mut res = [0.0; 3];
    let ee = |a: usize, n_: usize| -> C64 {
        // ε^{abcd} ε_{bcdn}
        let mut s = ZERO;
        for b in 0..4 {
            for cc in 0..4 {
                for d in 0..4 {
                    s += eps.get(a, b, cc, d) * eps.get(b, cc, d, n_);
                }
            }
        }
        s / (eps.scale() * eps.scale())
    };
    for al in 0..6 {
        for be in al..6 {
            for a in 0..4 {
                for nn in 0..4 {
                    let mut l1 = ZERO;
                    for b in 0..4 {
                        for cc in 0..4 {
                            for d in 0..4 {
                                let e = eps.get(b, cc, d, nn);
                                if e != ZERO {
                                    l1 += (up[al][(a, b)] * up[be][(cc, d)] + up[be][(a, b)] * up[al][(cc, d)]) * e;
                                }
                            }
                        }
                    }
                    let l1 = l1 * 0.5;
                    let r1 = q[(al, be)] * ee(a, nn) / 24.0;
                    fmax(&mut res[0], (l1 - r1).norm());

                    let mut l2 = ZERO;
                    let mut l3 = ZERO;
                    for b in 0..4 {
                        l2 += up[al][(a, b)] * low[be][(b, nn)] + up[be][(a, b)] * low[al][(b, nn)];
                        l3 += up[al][(a, b)] * low[be][(nn, b)] + up[be][(a, b)] * low[al][(nn, b)];
                    }
                    let dn = if a == nn { 1.0 } else { 0.0 };
                    fmax(&mut res[1], (l2 + q[(al, be)] * 0.25 * dn).norm());
                    fmax(&mut res[2], (l3 * 0.5 - n.metric[(al, be)] * 0.5 * dn).norm());
                }
            }
        }
    }
    res
}

/// Residuals of the two A-operator contraction laws.
pub fn a_contraction_residuals(n: &NordenSet, a_ops: &AOperators) -> (f64, f64) {
    let ar = a_ops.raised(n);
    let d = |x: usize, y: usize| if x == y { 1.0 } else { 0.0 };
    let mut r1 = 0.0;
    for dd in 0..4 {
        for cc in 0..4 {
            for r in 0..4 {
                for s in 0..4 {
                    let mut v = ZERO;
                    for al in 0..6 {
                        for be in 0..6 {
                            v += a_ops.blocks[al][be][(dd, cc)] * ar.blocks[al][be][(r, s)];
                        }
                    }
                    let t = 0.5 * d(r, s) * d(dd, cc) - 2.0 * d(r, cc) * d(dd, s);
                    fmax(&mut r1, (v - t).norm());
                }
            }
        }
    }
    let mut r2 = 0.0;
    for al in 0..6 {
        for be in 0..6 {
            for la in 0..6 {
                for mu in 0..6 {
                    // Σ_{c,d} A_{αβd}^c A^{λμ}_c^d = tr(A_{αβ} A^{λμ})
                    let v = (a_ops.blocks[al][be] * ar.blocks[la][mu]).trace();
                    let t = d(al, mu) * d(be, la) - d(be, mu) * d(al, la);
                    fmax(&mut r2, (v - t).norm());
                }
            }
        }
    }
    (r1, r2)
}

/// T_{αβ} = A_{αβb}^a T_a^b.
pub fn push_traceless(a_ops: &AOperators, t: &Mat4) -> Mat6 {
    Mat6::from_fn(|al, be| a_ops.blocks[al][be].component_mul(&t.transpose()).sum())
}

/// T_m^n = ½ A^{αβ}_m^n T_{βα}.
pub fn pull_traceless(n: &NordenSet, a_ops: &AOperators, t6: &Mat6) -> Mat4 {
    let ar = a_ops.raised(n);
    let mut out = Mat4::zeros();
    for al in 0..6 {
        for be in 0..6 {
            out += ar.blocks[al][be] * (t6[(be, al)] * 0.5);
        }
    }
    out
}

/// Named residuals for the operator identities, on seeded random inputs.
pub fn identity_suite(n: &NordenSet, seed: u64, threshold: f64) -> Vec<Check> {
    let mut out = Vec::new();
    let mut push = |name: &str, r: f64| out.push(Check::new(name, r, threshold));

    let anti = n
        .eta_up
        .iter()
        .chain(&n.eta_down)
        .map(antisymmetry_deviation)
        .fold(0.0, f64::max);
    push("blocks_antisymmetric", anti);

    let (c1, c2) = completeness_residuals(n);
    push("completeness_trace", c1);
    push("completeness_pair", c2);

    let (m1, m2) = metric_residuals(n);
    push("metric_from_lower_blocks", m1);
    push("epsilon_from_metric", m2);
    push("epsilon_contractions", epsilon_residual(&n.eps));

    // tabulated lower blocks agree with g^{αβ} η_{βab}
    let mut lowering = 0.0;
    for k in 0..6 {
        let d = (0..6).fold(Mat4::zeros(), |acc, b| acc + n.eta_low[b] * n.metric_inv[(k, b)]);
        fmax(&mut lowering, mat_max_abs(&(d - n.eta_down[k])));
    }
    push("pair_lowering_of_blocks", lowering);

    let mut rng = sample::rng(seed);
    let mut round = 0.0;
    let mut lower_raise = 0.0;
    let mut isotropy = 0.0;
    let mut radius = 0.0;
    let mut pf_half = 0.0;
    for _ in 0..100 {
        let r = Bivector4(sample::antisymmetric4(&mut rng));
        let v = bivector_to_vector(n, &r);
        fmax(&mut round, mat_max_abs(&(vector_to_bivector(n, &v).0 - r.0)));
        let lo = lower_bivector(n, &r);
        fmax(&mut lower_raise, mat_max_abs(&(raise_bivector(n, &lo).0 - r.0)));
        let pf = pfaffian(&r);
        fmax(&mut pf_half, (lo.0.component_mul(&r.0).sum() * 0.5 - pf).norm());
        // r^{ab} r_{bc} = -½ pf δ
        fmax(&mut radius, mat_max_abs(&(r.0 * lo.0 + Mat4::identity() * (pf * 0.5))));
        let x: Spinor = sample::vector(&mut rng);
        let y: Spinor = sample::vector(&mut rng);
        let w = bivector_to_vector(n, &Bivector4::wedge(&x, &y));
        fmax(&mut isotropy, n.inner(&w, &w).norm());
    }
    push("bivector_round_trip", round);
    push("lower_then_raise", lower_raise);
    push("pfaffian_half_contraction", pf_half);
    push("bivector_square_law", radius);
    push("wedge_is_isotropic", isotropy);

    let [s1, s2, s3] = symmetric_product_residuals(n);
    push("symmetric_product_epsilon", s1);
    push("symmetric_product_trace", s2);
    push("symmetric_product_metric", s3);

    let a_ops = build_a_operators(n);
    let (a1, a2) = a_contraction_residuals(n, &a_ops);
    push("a_contraction_spinor", a1);
    push("a_contraction_vector", a2);
    let mut atr = 0.0;
    let mut aanti = 0.0;
    for al in 0..6 {
        for be in 0..6 {
            fmax(&mut atr, a_ops.blocks[al][be].trace().norm());
            fmax(&mut aanti, mat_max_abs(&(a_ops.blocks[al][be] + a_ops.blocks[be][al])));
        }
    }
    push("a_trace_free", atr);
    push("a_antisymmetric", aanti);
    let mut rec = 0.0;
    for _ in 0..20 {
        let t = sample::traceless4(&mut rng);
        let back = pull_traceless(n, &a_ops, &push_traceless(&a_ops, &t));
        fmax(&mut rec, mat_max_abs(&(back - t)));
    }
    push("traceless_recovery", rec);

    let gs = build_gammas(n);
    push("clifford", clifford_residual(n, &gs));
    push("gamma7_anticommutes", gamma7_anticommutator_residual(&gs));
    // (γ_1⋯γ_6)² = -det(g) I for a diagonal metric
    let g7sq = gs.gamma7 * gs.gamma7 + Mat8::identity() * n.metric.determinant();
    push("gamma7_square_law", mat_max_abs(&g7sq));

    let e6 = six_vector(&a_ops);
    push("six_vector_antisymmetric", antisymmetry_residual(&e6));
    let e115 = six_vector_triple_a(&a_ops);
    push(
        "six_vector_triple_a",
        crate::tensors::max_abs_diff(&e6, &e115).expect("same shape"),
    );
    let lead = e6.get(&[0, 1, 2, 3, 4, 5]);
    push("six_vector_nonzero", if lead.norm() > 0.5 { 0.0 } else { 1.0 });
    out
}

/// Check externally supplied tables with the full identity suite.
pub fn validate(up: [Mat4; 6], down: [Mat4; 6], seed: u64, threshold: f64) -> Result<Vec<Check>, NordenError> {
    let n = NordenSet::from_tables(up, down, Epsilon4::default())?;
    Ok(identity_suite(&n, seed, threshold))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn special_table_entries() {
        let n = NordenSet::special();
        let s = 1.0 / sqrt(2.0);
        assert_eq!(n.eta_up()[1][(0, 1)], c(s));
        assert_eq!(n.eta_up()[2][(2, 3)], c(-s));
        assert_eq!(n.eta_up()[0][(0, 3)], I * s);
        assert_eq!(n.eta_up()[0][(1, 2)], -I * s);
        assert_eq!(n.eta_up()[0][(3, 0)], -I * s);
    }

    #[test]
    fn special_metric_is_split() {
        let n = NordenSet::special();
        let expect = Mat6::from_diagonal(&Vec6::from_fn(|k, _| if k < 2 { ONE } else { -ONE }));
        assert!(mat_max_abs(&(n.metric() - expect)) < 1e-15);
    }

    #[test]
    fn orthonormal_metric_is_identity() {
        let n = NordenSet::orthonormal();
        assert!(mat_max_abs(&(n.metric() - Mat6::identity())) < 1e-15);
    }

    #[test]
    fn rejects_symmetric_block() {
        let mut up = special_up();
        up[3][(0, 1)] = ONE;
        assert!(matches!(
            NordenSet::from_eta_up(up, Epsilon4::default()),
            Err(NordenError::NotAntisymmetric { index: 3, .. })
        ));
    }

    #[test]
    fn rejects_singular_metric() {
        let mut up = special_up();
        up[5] = up[4];
        assert_eq!(
            NordenSet::from_eta_up(up, Epsilon4::default()),
            Err(NordenError::SingularMetric)
        );
    }

    #[test]
    fn bivector_rejects_symmetric_input() {
        assert!(Bivector4::new(Mat4::identity()).is_err());
        assert!(Bivector4::new(Mat4::zeros()).is_ok());
    }

    #[test]
    fn gamma7_squares_to_minus_identity() {
        let gs = build_gammas(&NordenSet::special());
        let sq = gs.gamma7() * gs.gamma7();
        assert!(mat_max_abs(&(sq + Mat8::identity())) < 1e-12);
        assert!((gamma7_square_residual(&gs) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn suites_pass_for_both_bases() {
        for n in [NordenSet::special(), NordenSet::orthonormal()] {
            for chk in identity_suite(&n, 7, 1e-10) {
                assert!(chk.pass(), "{} {}", chk.name, chk.residual);
            }
        }
    }
}
