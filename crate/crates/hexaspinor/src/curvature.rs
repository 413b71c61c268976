//! Algebraic curvature tensors on the six-space and their spinor images.
//!
//! Layouts: `AlgCurvature6` is R_{αβγδ} with axes (α, β, γ, δ);
//! `CurvatureSpinTensor` is R_c^d_s^r with axes (c, d, s, r); the Ricci part
//! P_{cs}^{rd} has axes (c, s, r, d).

use alloc::vec::Vec;

use crate::norden::{build_a_operators, AOperators, NordenSet};
use crate::realforms::{RealFormData, SKind};
use crate::report::{fmax, Check};
use crate::sample;
use crate::tensors::{c, mat_max_abs, ComplexTensor, Mat4, Mat6, C64, ZERO};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CurvatureError {
    #[error("at least one Kulkarni-Nomizu term is required")]
    NoTerms,
    #[error("input violates the {which} symmetry (residual {residual:e})")]
    Symmetry { which: &'static str, residual: f64 },
    #[error("tensor has shape {0:?}")]
    Shape(Vec<usize>),
}

#[inline]
fn i6(a: usize, b: usize, g: usize, d: usize) -> usize {
    ((a * 6 + b) * 6 + g) * 6 + d
}

#[inline]
fn i4(a: usize, b: usize, g: usize, d: usize) -> usize {
    ((a * 4 + b) * 4 + g) * 4 + d
}

#[derive(Debug, Clone, PartialEq)]
pub struct AlgCurvature6 {
    r: Vec<C64>,
}

impl AlgCurvature6 {
    pub fn from_tensor(t: &ComplexTensor) -> Result<Self, CurvatureError> {
        if t.shape() != [6, 6, 6, 6] {
            return Err(CurvatureError::Shape(t.shape().to_vec()));
        }
        Ok(Self { r: t.entries().to_vec() })
    }

    pub fn zeros() -> Self {
        Self { r: alloc::vec![ZERO; 1296] }
    }

    pub fn get(&self, a: usize, b: usize, g: usize, d: usize) -> C64 {
        self.r[i6(a, b, g, d)]
    }

    pub fn to_tensor(&self) -> ComplexTensor {
        ComplexTensor::new(alloc::vec![6; 4], self.r.clone()).expect("finite entries")
    }

    pub fn add(&self, o: &Self) -> Self {
        Self {
            r: self.r.iter().zip(&o.r).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, s: C64) -> Self {
        Self {
            r: self.r.iter().map(|a| a * s).collect(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.r.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, o: &Self) -> f64 {
        self.r.iter().zip(&o.r).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    /// Largest violation of pair antisymmetry and pair exchange.
    pub fn symmetry_residual(&self) -> f64 {
        let mut m = 0.0;
        for a in 0..6 {
            for b in 0..6 {
                for g in 0..6 {
                    for d in 0..6 {
                        let v = self.get(a, b, g, d);
                        fmax(&mut m, (v + self.get(b, a, g, d)).norm());
                        fmax(&mut m, (v + self.get(a, b, d, g)).norm());
                        fmax(&mut m, (v - self.get(g, d, a, b)).norm());
                    }
                }
            }
        }
        m
    }

    /// Largest |R_{αβγδ} + R_{αδβγ} + R_{αγδβ}|.
    pub fn bianchi_residual(&self) -> f64 {
        let mut m = 0.0;
        for a in 0..6 {
            for b in 0..6 {
                for g in 0..6 {
                    for d in 0..6 {
                        let v = self.get(a, b, g, d) + self.get(a, d, b, g) + self.get(a, g, d, b);
                        fmax(&mut m, v.norm());
                    }
                }
            }
        }
        m
    }

    /// R_{βδ} = g^{αγ} R_{αβγδ}.
    pub fn ricci(&self, n: &NordenSet) -> Mat6 {
        let gi = n.metric_inv();
        Mat6::from_fn(|b, d| {
            let mut s = ZERO;
            for a in 0..6 {
                for g in 0..6 {
                    if gi[(a, g)] != ZERO {
                        s += gi[(a, g)] * self.get(a, b, g, d);
                    }
                }
            }
            s
        })
    }

    /// g^{βδ} R_{βδ}.
    pub fn scalar(&self, n: &NordenSet) -> C64 {
        self.ricci(n).component_mul(n.metric_inv()).sum()
    }
}

/// Σ (h_{αγ}k_{βδ} + h_{βδ}k_{αγ} - h_{αδ}k_{βγ} - h_{βγ}k_{αδ}) for one pair.
pub fn kulkarni_nomizu(h: &Mat6, k: &Mat6) -> AlgCurvature6 {
    let mut out = AlgCurvature6::zeros();
    for a in 0..6 {
        for b in 0..6 {
            for g in 0..6 {
                for d in 0..6 {
                    out.r[i6(a, b, g, d)] =
                        h[(a, g)] * k[(b, d)] + h[(b, d)] * k[(a, g)] - h[(a, d)] * k[(b, g)] - h[(b, g)] * k[(a, d)];
                }
            }
        }
    }
    out
}

/// The constant-curvature tensor 2(g_{αγ}g_{βδ} - g_{αδ}g_{βγ}).
pub fn constant_curvature(n: &NordenSet) -> AlgCurvature6 {
    kulkarni_nomizu(n.metric(), n.metric())
}

fn random_symmetric(rng: &mut sample::Rng64) -> Mat6 {
    let m: Mat6 = sample::matrix(rng);
    (m + m.transpose()) * c(0.5)
}

/// Sum of `terms` Kulkarni–Nomizu products of seeded random complex symmetric pairs.
pub fn random_alg_curvature(seed: u64, terms: usize) -> Result<AlgCurvature6, CurvatureError> {
    if terms == 0 {
        return Err(CurvatureError::NoTerms);
    }
    let mut rng = sample::rng(seed);
    let mut out = AlgCurvature6::zeros();
    for _ in 0..terms {
        let h = random_symmetric(&mut rng);
        let k = random_symmetric(&mut rng);
        out = out.add(&kulkarni_nomizu(&h, &k));
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureSpinTensor {
    r: Vec<C64>,
}

impl CurvatureSpinTensor {
    pub fn from_tensor(t: &ComplexTensor) -> Result<Self, CurvatureError> {
        if t.shape() != [4, 4, 4, 4] {
            return Err(CurvatureError::Shape(t.shape().to_vec()));
        }
        Ok(Self { r: t.entries().to_vec() })
    }

    pub fn zeros() -> Self {
        Self { r: alloc::vec![ZERO; 256] }
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize, usize, usize) -> C64) -> Self {
        let mut out = Self::zeros();
        for a in 0..4 {
            for b in 0..4 {
                for g in 0..4 {
                    for d in 0..4 {
                        out.r[i4(a, b, g, d)] = f(a, b, g, d);
                    }
                }
            }
        }
        out
    }

    pub fn get(&self, cc: usize, d: usize, s: usize, r: usize) -> C64 {
        self.r[i4(cc, d, s, r)]
    }

    pub fn to_tensor(&self) -> ComplexTensor {
        ComplexTensor::new(alloc::vec![4; 4], self.r.clone()).expect("finite entries")
    }

    pub fn max_abs(&self) -> f64 {
        self.r.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, o: &Self) -> f64 {
        self.r.iter().zip(&o.r).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    /// R = -2 R_k^r_r^k.
    pub fn scalar(&self) -> C64 {
        let mut s = ZERO;
        for k in 0..4 {
            for r in 0..4 {
                s += self.get(k, r, r, k);
            }
        }
        s * -2.0
    }

    /// Largest violation of pair exchange and of the pair traces.
    pub fn symmetry_residual(&self) -> f64 {
        let mut m = 0.0;
        for a in 0..4 {
            for b in 0..4 {
                for g in 0..4 {
                    for d in 0..4 {
                        fmax(&mut m, (self.get(a, b, g, d) - self.get(g, d, a, b)).norm());
                    }
                }
                let t: C64 = (0..4).map(|k| self.get(k, k, a, b)).sum();
                fmax(&mut m, t.norm());
            }
        }
        m
    }
}

fn check_input(which: &'static str, residual: f64, scale: f64) -> Result<(), CurvatureError> {
    if residual > 1e-9 * (1.0 + scale) {
        Err(CurvatureError::Symmetry { which, residual })
    } else {
        Ok(())
    }
}

/// R_c^d_s^r = ¼ η^α_{ck} η^{βdk} η^γ_{st} η^{δrt} R_{αβγδ}.
pub fn tensor_to_spintensor(n: &NordenSet, r6: &AlgCurvature6) -> Result<CurvatureSpinTensor, CurvatureError> {
    let scale = r6.max_abs();
    check_input("pair", r6.symmetry_residual(), scale)?;
    check_input("Bianchi", r6.bianchi_residual(), scale)?;
    Ok(tensor_to_spintensor_unchecked(n, r6))
}

pub fn tensor_to_spintensor_unchecked(n: &NordenSet, r6: &AlgCurvature6) -> CurvatureSpinTensor {
    let gi = n.metric_inv();
    let raised: Vec<Mat4> = (0..6)
        .map(|b| (0..6).fold(Mat4::zeros(), |acc, k| acc + n.eta_up()[k] * gi[(b, k)]))
        .collect();
    // q[a][b][(c, d)] = η^a_{ck} η^{b dk}
    let mut q = [[Mat4::zeros(); 6]; 6];
    for a in 0..6 {
        for b in 0..6 {
            q[a][b] = n.eta_down()[a] * raised[b].transpose();
        }
    }
    let mut out = CurvatureSpinTensor::zeros();
    for a in 0..6 {
        for b in 0..6 {
            let mut inner = Mat4::zeros();
            for g in 0..6 {
                for h in 0..6 {
                    let v = r6.get(a, b, g, h);
                    if v != ZERO {
                        inner += q[g][h] * v;
                    }
                }
            }
            for cc in 0..4 {
                for d in 0..4 {
                    let w = q[a][b][(cc, d)] * 0.25;
                    if w == ZERO {
                        continue;
                    }
                    for s in 0..4 {
                        for rr in 0..4 {
                            out.r[i4(cc, d, s, rr)] += w * inner[(s, rr)];
                        }
                    }
                }
            }
        }
    }
    out
}

/// R_{αβγδ} = A_{αβd}^c A_{γδr}^s R_c^d_s^r.
pub fn spintensor_to_tensor(n: &NordenSet, rs: &CurvatureSpinTensor) -> Result<AlgCurvature6, CurvatureError> {
    check_input("spinor pair", rs.symmetry_residual(), rs.max_abs())?;
    Ok(spintensor_to_tensor_with(&build_a_operators(n), rs))
}

pub fn spintensor_to_tensor_with(a_ops: &AOperators, rs: &CurvatureSpinTensor) -> AlgCurvature6 {
    // contract the second pair first: m[γδ][(c, d)] = Σ_{s,r} A_{γδr}^s R_c^d_s^r
    let mut m = [[Mat4::zeros(); 6]; 6];
    for g in 0..6 {
        for d6 in 0..6 {
            let a = a_ops.get(g, d6);
            m[g][d6] = Mat4::from_fn(|cc, d| {
                let mut s = ZERO;
                for ss in 0..4 {
                    for r in 0..4 {
                        s += a[(r, ss)] * rs.get(cc, d, ss, r);
                    }
                }
                s
            });
        }
    }
    let mut out = AlgCurvature6::zeros();
    for al in 0..6 {
        for be in 0..6 {
            let a = a_ops.get(al, be);
            for g in 0..6 {
                for d6 in 0..6 {
                    // Σ_{c,d} A_{αβd}^c m[(c, d)]
                    out.r[i6(al, be, g, d6)] = a.transpose().component_mul(&m[g][d6]).sum();
                }
            }
        }
    }
    out
}

/// Weyl part, Ricci part and scalar of a curvature spin-tensor.
#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition {
    pub weyl: CurvatureSpinTensor,
    /// P_{cs}^{rd} with axes (c, s, r, d).
    pub ricci_part: Vec<C64>,
    pub scalar: C64,
}

impl Decomposition {
    pub fn p(&self, cc: usize, s: usize, r: usize, d: usize) -> C64 {
        self.ricci_part[i4(cc, s, r, d)]
    }

    pub fn ricci_tensor(&self) -> ComplexTensor {
        ComplexTensor::new(alloc::vec![4; 4], self.ricci_part.clone()).expect("finite entries")
    }
}

fn asym2x2(f: impl Fn(usize, usize, usize, usize) -> C64) -> Vec<C64> {
    let mut out = alloc::vec![ZERO; 256];
    for a in 0..4 {
        for b in 0..4 {
            for g in 0..4 {
                for d in 0..4 {
                    out[i4(a, b, g, d)] = (f(a, b, g, d) - f(b, a, g, d) - f(a, b, d, g) + f(b, a, d, g)) * 0.25;
                }
            }
        }
    }
    out
}

fn delta(a: usize, b: usize) -> f64 {
    if a == b {
        1.0
    } else {
        0.0
    }
}

/// P_{cs}^{rd} = -4(R_[c^[r_s]^d] + R_[c^k_|k|^[r δ_s]^d]),
/// C_c^d_s^r = R_c^d_s^r + ¼P_{cs}^{dr} + R/40 (3δ_s^dδ_c^r - 2δ_s^rδ_c^d).
pub fn decompose(rs: &CurvatureSpinTensor) -> Decomposition {
    let scalar = rs.scalar();
    let tr: Mat4 = Mat4::from_fn(|cc, r| (0..4).map(|k| rs.get(cc, k, k, r)).sum());
    let aa = asym2x2(|cc, s, r, d| rs.get(cc, r, s, d));
    let ay = asym2x2(|cc, s, r, d| tr[(cc, r)] * delta(s, d));
    let p: Vec<C64> = aa.iter().zip(&ay).map(|(x, y)| (x + y) * -4.0).collect();
    let weyl = CurvatureSpinTensor::from_fn(|cc, d, s, r| {
        rs.get(cc, d, s, r)
            + p[i4(cc, s, d, r)] * 0.25
            + scalar / 40.0 * (3.0 * delta(s, d) * delta(cc, r) - 2.0 * delta(s, r) * delta(cc, d))
    });
    Decomposition {
        weyl,
        ricci_part: p,
        scalar,
    }
}

/// C - ¼P_{cs}^{dr} - R/40 (3δ_s^dδ_c^r - 2δ_s^rδ_c^d).
pub fn recompose(dec: &Decomposition) -> CurvatureSpinTensor {
    let r = dec.scalar;
    CurvatureSpinTensor::from_fn(|cc, d, s, rr| {
        dec.weyl.get(cc, d, s, rr)
            - dec.p(cc, s, d, rr) * 0.25
            - r / 40.0 * (3.0 * delta(s, d) * delta(cc, rr) - 2.0 * delta(s, rr) * delta(cc, d))
    })
}

/// max |R_l^d_s^l + R/8 δ_s^d|.
pub fn bianchi_residual(rs: &CurvatureSpinTensor) -> f64 {
    let r = rs.scalar();
    let mut m = 0.0;
    for d in 0..4 {
        for s in 0..4 {
            let t: C64 = (0..4).map(|l| rs.get(l, d, s, l)).sum();
            fmax(&mut m, (t + r / 8.0 * delta(s, d)).norm());
        }
    }
    m
}

/// max |P_{kc}^{kd} - ½R δ_c^d|.
pub fn p_trace_residual(dec: &Decomposition) -> f64 {
    let mut m = 0.0;
    for cc in 0..4 {
        for d in 0..4 {
            let t: C64 = (0..4).map(|k| dec.p(k, cc, k, d)).sum();
            fmax(&mut m, (t - dec.scalar * 0.5 * delta(cc, d)).norm());
        }
    }
    m
}

/// Largest single trace and largest deviation from symmetry in (c, s) and (d, r).
pub fn weyl_residuals(w: &CurvatureSpinTensor) -> (f64, f64) {
    let mut tr = 0.0;
    let mut sym = 0.0;
    for x in 0..4 {
        for y in 0..4 {
            let (mut t1, mut t2, mut t3, mut t4) = (ZERO, ZERO, ZERO, ZERO);
            for k in 0..4 {
                t1 += w.get(k, k, x, y);
                t2 += w.get(k, x, y, k);
                t3 += w.get(x, k, k, y);
                t4 += w.get(x, y, k, k);
            }
            for t in [t1, t2, t3, t4] {
                fmax(&mut tr, t.norm());
            }
            for s in 0..4 {
                for r in 0..4 {
                    let v = w.get(x, y, s, r);
                    fmax(&mut sym, (v - w.get(s, y, x, r)).norm());
                    fmax(&mut sym, (v - w.get(x, r, s, y)).norm());
                }
            }
        }
    }
    (tr, sym)
}

/// R_{βδ} = ¼ η_β^{cs} η_{δrd} P_{cs}^{rd}.
pub fn ricci_from_p(n: &NordenSet, dec: &Decomposition) -> Mat6 {
    let up = n.eta_up();
    let low = n.eta_low();
    Mat6::from_fn(|b, d6| {
        let mut s = ZERO;
        for cc in 0..4 {
            for ss in 0..4 {
                let u = up[b][(cc, ss)];
                if u == ZERO {
                    continue;
                }
                for r in 0..4 {
                    for d in 0..4 {
                        s += u * low[d6][(r, d)] * dec.p(cc, ss, r, d);
                    }
                }
            }
        }
        s * 0.25
    })
}

/// The pushed-forward Weyl tensor C_{αβγδ} = A_{αβd}^c A_{γδr}^s C_c^d_s^r.
pub fn weyl_tensor6(n: &NordenSet, dec: &Decomposition) -> AlgCurvature6 {
    spintensor_to_tensor_with(&build_a_operators(n), &dec.weyl)
}

/// Reality of the six-tensor in the real basis of `rf`: components
/// H_i^α H_j^β H_k^γ H_l^δ R_{αβγδ} must be real. The spin-tensor is pushed
/// with the complex-orthonormal operators.
pub fn is_real_curvature(rf: &RealFormData, rs: &CurvatureSpinTensor, tol: f64) -> bool {
    real_basis_imag_residual(rf, rs) <= tol * (1.0 + rs.max_abs())
}

pub fn real_basis_imag_residual(rf: &RealFormData, rs: &CurvatureSpinTensor) -> f64 {
    let n = NordenSet::orthonormal();
    let r6 = spintensor_to_tensor_with(&build_a_operators(&n), rs);
    let h = rf.h();
    let mut m = 0.0;
    for i in 0..6 {
        for j in 0..6 {
            for k in 0..6 {
                for l in 0..6 {
                    // H is diagonal for every supported row
                    let v = h[(i, i)] * h[(j, j)] * h[(k, k)] * h[(l, l)] * r6.get(i, j, k, l);
                    fmax(&mut m, v.im.abs());
                }
            }
        }
    }
    m
}

/// Spinor form of the reality condition.
/// Polarity: R_{ab'cd'} = conj(R_{b'ad'c}) with the upper indices lowered by s.
/// Involution: R_a^{b'}_c^{d'} = conj(R_a^b_c^d) transported by s on every index.
pub fn spinor_reality_residual(rf: &RealFormData, rs: &CurvatureSpinTensor) -> f64 {
    let s = rf.s();
    let mut m = 0.0;
    match rf.s_kind() {
        SKind::Polarity => {
            let t = |a: usize, b: usize, cc: usize, d: usize| -> C64 {
                let mut v = ZERO;
                for x in 0..4 {
                    for y in 0..4 {
                        let w = s[(x, b)] * s[(y, d)];
                        if w != ZERO {
                            v += rs.get(a, x, cc, y) * w;
                        }
                    }
                }
                v
            };
            for a in 0..4 {
                for b in 0..4 {
                    for cc in 0..4 {
                        for d in 0..4 {
                            fmax(&mut m, (t(a, b, cc, d) - t(b, a, d, cc).conj()).norm());
                        }
                    }
                }
            }
        }
        SKind::Involution => {
            let si = s.try_inverse().unwrap_or_else(Mat4::zeros);
            for a in 0..4 {
                for b in 0..4 {
                    for cc in 0..4 {
                        for d in 0..4 {
                            let mut v = ZERO;
                            for x in 0..4 {
                                for y in 0..4 {
                                    for z in 0..4 {
                                        for w in 0..4 {
                                            let k = si[(a, x)] * s[(y, b)] * si[(cc, z)] * s[(w, d)];
                                            if k != ZERO {
                                                v += rs.get(x, y, z, w).conj() * k;
                                            }
                                        }
                                    }
                                }
                            }
                            fmax(&mut m, (v - rs.get(a, b, cc, d)).norm());
                        }
                    }
                }
            }
        }
    }
    m
}

/// Residuals over `count` seeded Kulkarni–Nomizu tensors.
pub fn curvature_suite(n: &NordenSet, seed: u64, count: usize, terms: usize, threshold: f64) -> Vec<Check> {
    let a_ops = build_a_operators(n);
    let mut round = 0.0;
    let mut tensor_bianchi = 0.0;
    let mut spin_bianchi = 0.0;
    let mut recomp = 0.0;
    let mut ptrace = 0.0;
    let mut wtrace = 0.0;
    let mut wsym = 0.0;
    let mut ricci = 0.0;
    let mut scalar = 0.0;
    let mut weyl6 = 0.0;
    let mut spin_sym = 0.0;
    for k in 0..count {
        let r6 = random_alg_curvature(seed.wrapping_add(k as u64), terms).expect("terms >= 1");
        let rs = tensor_to_spintensor_unchecked(n, &r6);
        let back = spintensor_to_tensor_with(&a_ops, &rs);
        let scale = 1.0 + r6.max_abs();
        fmax(&mut round, back.max_abs_diff(&r6) / scale);
        fmax(&mut tensor_bianchi, r6.bianchi_residual() / scale);
        fmax(&mut spin_bianchi, bianchi_residual(&rs) / scale);
        fmax(&mut spin_sym, rs.symmetry_residual() / scale);
        let dec = decompose(&rs);
        fmax(&mut recomp, recompose(&dec).max_abs_diff(&rs) / scale);
        fmax(&mut ptrace, p_trace_residual(&dec) / scale);
        let (t, s) = weyl_residuals(&dec.weyl);
        fmax(&mut wtrace, t / scale);
        fmax(&mut wsym, s / scale);
        fmax(&mut ricci, mat_max_abs(&(ricci_from_p(n, &dec) - r6.ricci(n))) / scale);
        let direct = r6.scalar(n);
        fmax(&mut scalar, (direct - dec.scalar).norm() / (1.0 + direct.norm()));
        let c6 = weyl_tensor6(n, &dec);
        fmax(&mut weyl6, mat_max_abs(&c6.ricci(n)) / scale);
    }
    let cc = constant_curvature(n);
    let dec = decompose(&tensor_to_spintensor_unchecked(n, &cc));
    alloc::vec![
        Check::new("round_trip", round, threshold),
        Check::new("tensor_bianchi", tensor_bianchi, threshold),
        Check::new("spinor_bianchi", spin_bianchi, threshold),
        Check::new("spinor_pair_symmetry", spin_sym, threshold),
        Check::new("recomposition", recomp, threshold),
        Check::new("p_trace", ptrace, threshold),
        Check::new("weyl_trace_free", wtrace, threshold),
        Check::new("weyl_symmetric", wsym, threshold),
        Check::new("ricci_from_p", ricci, threshold),
        Check::new("scalar_consistency", scalar, threshold),
        Check::new("weyl6_ricci_free", weyl6, threshold),
        Check::new("constant_curvature_weyl", dec.weyl.max_abs(), threshold),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_terms_rejected() {
        assert_eq!(random_alg_curvature(1, 0), Err(CurvatureError::NoTerms));
    }

    #[test]
    fn shape_checked() {
        let t = ComplexTensor::zeros(&[4, 4, 4]);
        assert!(matches!(CurvatureSpinTensor::from_tensor(&t), Err(CurvatureError::Shape(_))));
        assert!(matches!(AlgCurvature6::from_tensor(&t), Err(CurvatureError::Shape(_))));
    }

    #[test]
    fn non_bianchi_input_rejected() {
        let n = NordenSet::special();
        // pair-symmetric but violating the cyclic identity
        let mut r = AlgCurvature6::zeros();
        for (a, b, g, d, v) in [(0, 1, 2, 3, 1.0), (1, 0, 3, 2, 1.0), (2, 3, 0, 1, 1.0), (3, 2, 1, 0, 1.0)] {
            r.r[i6(a, b, g, d)] = c(v);
            r.r[i6(b, a, g, d)] = c(-v);
            r.r[i6(a, b, d, g)] = c(-v);
        }
        assert!(matches!(
            tensor_to_spintensor(&n, &r),
            Err(CurvatureError::Symmetry { which: "Bianchi", .. })
        ));
    }

    #[test]
    fn zero_maps_to_zero() {
        let n = NordenSet::special();
        let rs = tensor_to_spintensor(&n, &AlgCurvature6::zeros()).unwrap();
        assert_eq!(rs.max_abs(), 0.0);
        assert_eq!(bianchi_residual(&rs), 0.0);
    }

    #[test]
    fn suite_passes() {
        for n in [NordenSet::special(), NordenSet::orthonormal()] {
            for chk in curvature_suite(&n, 5, 3, 2, 1e-10) {
                assert!(chk.pass(), "{} {}", chk.name, chk.residual);
            }
        }
    }

    #[test]
    fn constant_curvature_ricci_part_is_pure_trace() {
        let n = NordenSet::special();
        let dec = decompose(&tensor_to_spintensor(&n, &constant_curvature(&n)).unwrap());
        let k = dec.scalar / 6.0;
        let mut m: f64 = 0.0;
        for cc in 0..4 {
            for s in 0..4 {
                for r in 0..4 {
                    for d in 0..4 {
                        let want = k * (delta(cc, r) * delta(s, d) - delta(cc, d) * delta(s, r));
                        m = m.max((dec.p(cc, s, r, d) - want).norm());
                    }
                }
            }
        }
        assert!(m < 1e-12, "{m}");
        assert!(dec.scalar.norm() > 1.0);
    }

    fn real_kn(rf: &RealFormData, seed: u64) -> CurvatureSpinTensor {
        // real symmetric pair in the real basis, carried to orthonormal components
        let mut rng = sample::rng(seed);
        let h: Mat6 = sample::real_matrix(&mut rng);
        let k: Mat6 = sample::real_matrix(&mut rng);
        let hi = rf.h_inv();
        let carry = |m: Mat6| {
            let m = (m + m.transpose()) * c(0.5);
            hi.transpose() * m * hi
        };
        let r6 = kulkarni_nomizu(&carry(h), &carry(k));
        tensor_to_spintensor(&NordenSet::orthonormal(), &r6).unwrap()
    }

    #[test]
    fn reality_predicates() {
        for (p, q) in [(6, 0), (1, 5), (2, 4), (3, 3)] {
            let rf = crate::realforms::build_real_form(p, q).unwrap();
            let rs = real_kn(&rf, 11);
            assert!(is_real_curvature(&rf, &rs, 1e-10), "({p},{q})");
            assert!(spinor_reality_residual(&rf, &rs) < 1e-10, "({p},{q}) {}", spinor_reality_residual(&rf, &rs));
            let z = tensor_to_spintensor(&NordenSet::orthonormal(), &random_alg_curvature(3, 2).unwrap()).unwrap();
            assert!(!is_real_curvature(&rf, &z, 1e-6));
            assert!(spinor_reality_residual(&rf, &z) > 1e-3);
        }
    }

    #[test]
    fn linear_maps() {
        let n = NordenSet::special();
        let a = random_alg_curvature(1, 2).unwrap();
        let b = random_alg_curvature(2, 2).unwrap();
        let s = tensor_to_spintensor(&n, &a.add(&b.scale(c(2.0)))).unwrap();
        let sa = tensor_to_spintensor(&n, &a).unwrap();
        let sb = tensor_to_spintensor(&n, &b).unwrap();
        let sum = CurvatureSpinTensor::from_fn(|w, x, y, z| sa.get(w, x, y, z) + sb.get(w, x, y, z) * 2.0);
        assert!(s.max_abs_diff(&sum) < 1e-12 * (1.0 + s.max_abs()));
    }
}
