//! Flat-space bitwistors, the two quadrics in CP_7, the eight-dimensional
//! connecting operators and the octonion structure constants they induce.
//!
//! Eight-index layout: `EtaSet8::eta()[A][(K, L)]` is η^A_{KL}; twistor
//! vectors are X^A = (X^a, Y_b).

use alloc::vec::Vec;
use libm::sqrt;
use nalgebra::{DMatrix, DVector, Matrix2, SVector, Vector2};

use crate::bivgeo::pfaffian;
use crate::cover::null_vector;
use crate::linalg::{lstsq, rank};
use crate::norden::{bivector_to_vector, lower_bivector, Bivector4, NordenSet, Spinor};
use crate::report::{fmax, Check};
use crate::sample;
use crate::tensors::{c, mat_max_abs, permutation_sign, ComplexTensor, Mat4, Mat8, C64, I, ONE, ZERO};

pub type Vec8 = SVector<C64, 8>;
pub type Mat2 = Matrix2<C64>;
pub type Vec2 = Vector2<C64>;

/// Relative singular-value cut for rank reporting.
pub const RANK_THRESHOLD: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum OctoError {
    #[error("incidence X^a Y_a = {0:e} is not zero")]
    Incidence(f64),
    #[error("cospinor is zero")]
    ZeroCospinor,
    #[error("compatibility condition ({i},{j}) is {value:e}")]
    Condition { i: usize, j: usize, value: f64 },
    #[error("system has rank {rank}, expected {expected}")]
    Rank { rank: usize, expected: usize },
    #[error("vectors {i} and {j} are not isotropic pairs ({value:e})")]
    NotIsotropic { i: usize, j: usize, value: f64 },
    #[error("generator vectors are linearly dependent")]
    Dependent,
    #[error("family relation does not hold (residual {0:e})")]
    NoFamily(f64),
    #[error("normalisation X^A X_A = {0} is not 2")]
    Normalisation(C64),
    #[error("no index reading gives a unital composition table (best unit residual {0:e})")]
    NoReading(f64),
    #[error("twistor is not of the form (0, Y)")]
    NotRestricted,
}

/// The six independent slots of an antisymmetric 4x4: 12, 13, 14, 23, 24, 34.
pub const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

fn unit_bivector(p: usize) -> Mat4 {
    let (a, b) = PAIRS[p];
    let mut m = Mat4::zeros();
    m[(a, b)] = ONE;
    m[(b, a)] = -ONE;
    m
}

fn bivector_from_slots(u: &[C64]) -> Bivector4 {
    Bivector4::antisymmetric_part(&(0..6).fold(Mat4::zeros(), |acc, p| acc + unit_bivector(p) * u[p]))
}

fn spinor_norm(v: &Spinor) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Base values of the flat-space solution X^a = Ẋ^a - i r^{ab} Ẏ_b, Y_b = Ẏ_b.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BitwistorSolution {
    pub x_dot: Spinor,
    pub y_dot: Spinor,
}

pub fn evaluate_solution(sol: &BitwistorSolution, r: &Bivector4) -> (Spinor, Spinor) {
    (sol.x_dot - r.matrix() * sol.y_dot * I, sol.y_dot)
}

/// X^A = (X^a, Y_b).
pub fn twistor(x: &Spinor, y: &Spinor) -> Vec8 {
    Vec8::from_fn(|k, _| if k < 4 { x[k] } else { y[k - 4] })
}

pub fn twistor_parts(v: &Vec8) -> (Spinor, Spinor) {
    (Spinor::from_fn(|k, _| v[k]), Spinor::from_fn(|k, _| v[k + 4]))
}

/// The block form ε_{AB} = [[0, δ], [δ, 0]].
pub fn epsilon8() -> Mat8 {
    Mat8::from_fn(|a, b| if a + 4 == b || b + 4 == a { ONE } else { ZERO })
}

/// ε_{AB} X^A X^B = 2 X^a Y_a.
pub fn quadratic_form(v: &Vec8) -> C64 {
    (v.transpose() * epsilon8() * v)[(0, 0)]
}

/// Residual of the system i r^{ab} Ẏ_b = Ẋ^a for several pairs, rank and
/// minimum-norm solution.
#[derive(Debug, Clone, PartialEq)]
pub struct IncidenceSolution {
    pub r: Bivector4,
    pub rank: usize,
    pub residual: f64,
}

fn incidence_system(pairs: &[(Spinor, Spinor)]) -> (DMatrix<C64>, DVector<C64>) {
    let rows = 4 * pairs.len();
    let mut a = DMatrix::zeros(rows, 6);
    let mut b = DVector::zeros(rows);
    for (k, (x, y)) in pairs.iter().enumerate() {
        for p in 0..6 {
            let col = unit_bivector(p) * y * I;
            for r in 0..4 {
                a[(4 * k + r, p)] = col[r];
            }
        }
        for r in 0..4 {
            b[4 * k + r] = x[r];
        }
    }
    (a, b)
}

pub fn solve_incidence(pairs: &[(Spinor, Spinor)]) -> IncidenceSolution {
    let (a, b) = incidence_system(pairs);
    let (u, rank) = lstsq(&a, &b, RANK_THRESHOLD);
    let r = bivector_from_slots(u.as_slice());
    let residual = pairs
        .iter()
        .map(|(x, y)| spinor_norm(&(r.matrix() * y * I - x)))
        .fold(0.0, f64::max);
    IncidenceSolution { r, rank, residual }
}

/// Rank of the stacked coefficient matrix together with the right-hand side.
pub fn augmented_rank(pairs: &[(Spinor, Spinor)]) -> usize {
    let (a, b) = incidence_system(pairs);
    let mut m = DMatrix::zeros(a.nrows(), 7);
    m.view_mut((0, 0), (a.nrows(), 6)).copy_from(&a);
    m.set_column(6, &b);
    rank(&m, RANK_THRESHOLD)
}

#[derive(Debug, Clone, PartialEq)]
pub struct PointToGenerator {
    pub particular: Bivector4,
    /// S∧X, X∧Z, S∧Z (with the ½ of the bracket) for an annihilator basis {X, S, Z} of Ẏ.
    pub homogeneous: [Bivector4; 3],
    pub annihilator: [Spinor; 3],
    pub rank: usize,
    pub residual: f64,
}

impl PointToGenerator {
    /// r_particular + Σ λ_k (homogeneous)_k.
    pub fn member(&self, lambda: [C64; 3]) -> Bivector4 {
        (0..3).fold(self.particular, |acc, k| acc.add(&self.homogeneous[k].scale(lambda[k])))
    }
}

fn half_wedge(a: &Spinor, b: &Spinor) -> Bivector4 {
    Bivector4::wedge(a, b).scale(c(0.5))
}

/// The 3-dimensional affine family of bivectors with i r^{ab} Ẏ_b = Ẋ^a.
pub fn solve_point_to_generator(x_dot: &Spinor, y_dot: &Spinor, tol: f64) -> Result<PointToGenerator, OctoError> {
    let ys = spinor_norm(y_dot);
    if ys == 0.0 {
        return Err(OctoError::ZeroCospinor);
    }
    let inc = x_dot.dot(y_dot).norm();
    if inc > tol * (1.0 + spinor_norm(x_dot)) * ys {
        return Err(OctoError::Incidence(inc));
    }
    let sol = solve_incidence(&[(*x_dot, *y_dot)]);
    // orthonormal basis of the annihilator {v : v^a Ẏ_a = 0}
    let svd = DMatrix::from_fn(4, 4, |r, k| if r == 0 { y_dot[k] } else { ZERO }).svd(false, true);
    let v_t = svd.v_t.expect("requested");
    let null: Vec<Spinor> = (1..4)
        .map(|k| Spinor::from_fn(|i, _| v_t[(k, i)].conj()))
        .collect();
    let basis = if spinor_norm(x_dot) > tol {
        // keep X and drop the null direction it overlaps most
        let coeff: Vec<f64> = null.iter().map(|n| n.dotc(x_dot).norm()).collect();
        let drop = (0..3).fold(0, |best, k| if coeff[k] > coeff[best] { k } else { best });
        let rest: Vec<Spinor> = (0..3).filter(|&k| k != drop).map(|k| null[k]).collect();
        [*x_dot, rest[0], rest[1]]
    } else {
        [null[0], null[1], null[2]]
    };
    let [xb, sb, zb] = basis;
    Ok(PointToGenerator {
        particular: sol.r,
        homogeneous: [half_wedge(&sb, &xb), half_wedge(&xb, &zb), half_wedge(&sb, &zb)],
        annihilator: basis,
        rank: sol.rank,
        residual: sol.residual,
    })
}

/// X_i^a Y_{ja} + X_j^a Y_{ia} for i ≤ j (i = j gives twice the incidence).
pub fn generator_conditions(pairs: &[(Spinor, Spinor)]) -> Vec<(usize, usize, C64)> {
    let mut out = Vec::new();
    for i in 0..pairs.len() {
        for j in i..pairs.len() {
            let v = pairs[i].0.dot(&pairs[j].1) + pairs[j].0.dot(&pairs[i].1);
            out.push((i, j, v));
        }
    }
    out
}

fn check_conditions(pairs: &[(Spinor, Spinor)], tol: f64) -> Result<(), OctoError> {
    let scale = pairs
        .iter()
        .map(|(x, y)| (1.0 + spinor_norm(x)) * (1.0 + spinor_norm(y)))
        .fold(1.0, f64::max);
    for (i, j, v) in generator_conditions(pairs) {
        if v.norm() > tol * scale {
            return Err(OctoError::Condition { i, j, value: v.norm() });
        }
    }
    Ok(())
}

/// The unique r^{ab} with i r^{ab} Ẏ_{ib} = Ẋ_i^a for four compatible pairs.
pub fn solve_generator_to_point(pairs: &[(Spinor, Spinor); 4], tol: f64) -> Result<IncidenceSolution, OctoError> {
    check_conditions(pairs, tol)?;
    let sol = solve_incidence(pairs);
    if sol.rank != 6 {
        return Err(OctoError::Rank { rank: sol.rank, expected: 6 });
    }
    Ok(sol)
}

/// Two or three of the equations: returns the minimum-norm solution and the rank.
pub fn solve_generator_subsystem(pairs: &[(Spinor, Spinor)], tol: f64) -> Result<IncidenceSolution, OctoError> {
    check_conditions(pairs, tol)?;
    Ok(solve_incidence(pairs))
}

/// Solution (X^a, Y_b) of i(r_1 - r_2)Ẏ = 0, i(r_1 - r_3)Ẏ = 0,
/// i(r_3 - r_4)Ẏ = 0, i r_1 Ẏ = Ẋ, normalised so the largest |Y| entry is 1.
#[derive(Debug, Clone, PartialEq)]
pub struct PointFromGenerator {
    pub x: Spinor,
    pub y: Spinor,
    pub rank: usize,
    pub residual: f64,
}

pub fn bitwistor_system(rs: &[Bivector4]) -> DMatrix<C64> {
    let mut blocks: Vec<Mat4> = Vec::new();
    match rs.len() {
        4 => {
            blocks.push(rs[0].matrix() - rs[1].matrix());
            blocks.push(rs[0].matrix() - rs[2].matrix());
            blocks.push(rs[2].matrix() - rs[3].matrix());
        }
        _ => {
            for r in &rs[1..] {
                blocks.push(rs[0].matrix() - r.matrix());
            }
        }
    }
    let rows = 4 * (blocks.len() + 1);
    let mut m = DMatrix::zeros(rows, 8);
    for (k, b) in blocks.iter().enumerate() {
        for i in 0..4 {
            for j in 0..4 {
                m[(4 * k + i, 4 + j)] = b[(i, j)] * I;
            }
        }
    }
    let k = blocks.len();
    for i in 0..4 {
        for j in 0..4 {
            m[(4 * k + i, 4 + j)] = rs[0].matrix()[(i, j)] * I;
        }
        m[(4 * k + i, i)] = -ONE;
    }
    m
}

/// pf(r_i - r_j) for i < j: differences of points on one generator are isotropic.
pub fn difference_conditions(rs: &[Bivector4]) -> Vec<(usize, usize, C64)> {
    let mut out = Vec::new();
    for i in 0..rs.len() {
        for j in i + 1..rs.len() {
            out.push((i, j, pfaffian(&rs[i].add(&rs[j].scale(-ONE)))));
        }
    }
    out
}

pub fn solve_point_from_generator(rs: &[Bivector4], tol: f64) -> Result<PointFromGenerator, OctoError> {
    let scale = rs.iter().map(|r| 1.0 + mat_max_abs(r.matrix())).fold(1.0, f64::max);
    for (i, j, v) in difference_conditions(rs) {
        if v.norm() > tol * scale * scale {
            return Err(OctoError::Condition { i, j, value: v.norm() });
        }
    }
    let m = bitwistor_system(rs);
    let rk = rank(&m, RANK_THRESHOLD);
    if rk != 7 {
        return Err(OctoError::Rank { rank: rk, expected: 7 });
    }
    let (v, _, _) = null_vector(&m);
    let (mut x, mut y) = (Spinor::from_fn(|k, _| v[k]), Spinor::from_fn(|k, _| v[k + 4]));
    let mut k = 0;
    for j in 1..4 {
        if y[j].norm() > y[k].norm() * (1.0 + 1e-12) {
            k = j;
        }
    }
    let g = y[k];
    x /= g;
    y /= g;
    let residual = (&m * DVector::from_iterator(8, x.iter().chain(y.iter()).copied()))
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    Ok(PointFromGenerator { x, y, rank: rk, residual })
}

/// Homogeneous coordinates of a point of C A_6 on the second quadric.
#[derive(Debug, Clone, PartialEq)]
pub struct HomogeneousCoords {
    /// R^{KL} = [[r^{ab}, -½i r^γr_γ δ], [-i δ, r_{cd}]].
    pub pair: Mat8,
    /// (T, V, U, S, W, X, Y, Z) read from the pair form.
    pub coords: Vec8,
    /// R^A = ¼ η^A_{KL} R^{KL}.
    pub operator_coords: Vec8,
    /// 2(R^{12}R^{34} - R^{13}R^{24} + R^{14}R^{23} + R^{15}R^{51}).
    pub nf: C64,
}

pub fn pair_nf(p: &Mat8) -> C64 {
    let r = |a: usize, b: usize| p[(a - 1, b - 1)];
    (r(1, 2) * r(3, 4) - r(1, 3) * r(2, 4) + r(1, 4) * r(2, 3) + r(1, 5) * r(5, 1)) * 2.0
}

/// (T, V, U, S, W, X, Y, Z) from the printed component map of the pair form.
pub fn coords_from_pair(p: &Mat8) -> Vec8 {
    let r = |a: usize, b: usize| p[(a - 1, b - 1)];
    let s = sqrt(2.0);
    let v = (r(1, 2) + r(3, 4)) / s;
    let w = (r(1, 2) - r(3, 4)) / (I * s);
    let x = (r(1, 3) - r(2, 4)) / s;
    let y = (r(1, 3) + r(2, 4)) / (I * s);
    let t = (r(1, 4) - r(2, 3)) / (I * s);
    let z = -(r(1, 4) + r(2, 3)) / s;
    let a = r(5, 1);
    let b = r(1, 5);
    let ss = (a + b * 2.0) * 0.5;
    let u = (b * 2.0 - a) / (I * 2.0);
    Vec8::from_column_slice(&[t, v, u, ss, w, x, y, z])
}

/// Σ of squares of the coordinates.
pub fn coords_norm(v: &Vec8) -> C64 {
    v.iter().map(|z| z * z).sum()
}

/// -(U - iS)/(U + iS).
pub fn pf_from_coords(v: &Vec8) -> C64 {
    -(v[2] - I * v[3]) / (v[2] + I * v[3])
}

pub fn homogeneous_coords(n: &NordenSet, e8: &EtaSet8, r: &Bivector4) -> HomogeneousCoords {
    let rv = bivector_to_vector(n, r);
    let rr = n.inner(&rv, &rv);
    let rl = lower_bivector(n, r);
    let mut pair = Mat8::zeros();
    for a in 0..4 {
        for b in 0..4 {
            pair[(a, b)] = r.matrix()[(a, b)];
            pair[(a + 4, b + 4)] = rl.matrix()[(a, b)];
        }
        pair[(a, a + 4)] = -I * rr * 0.5;
        pair[(a + 4, a)] = -I;
    }
    HomogeneousCoords {
        coords: coords_from_pair(&pair),
        operator_coords: e8.lower_pair_form(&pair),
        nf: pair_nf(&pair),
        pair,
    }
}

/// max |R^{AB}R_{CB} - ½ nf δ_C^A| with R_{CB} = ε_{CK}ε_{BL}R^{KL}.
pub fn pair_square_residual(p: &Mat8, nf: C64) -> f64 {
    let e = epsilon8();
    let low = e * p * e.transpose();
    mat_max_abs(&(p * low.transpose() - Mat8::identity() * (nf * 0.5)))
}

/// The eight connecting operators with their metrics.
#[derive(Debug, Clone, PartialEq)]
pub struct EtaSet8 {
    eta: [Mat8; 8],
    eta_up: [Mat8; 8],
    g: Mat8,
    eps: Mat8,
    s: Mat8,
    s_tilde: Mat8,
}

fn eta8_table() -> [Mat8; 8] {
    let h = c(1.0 / sqrt(2.0));
    let ih = I * h;
    let mut t = [Mat8::zeros(); 8];
    let anti: [(usize, usize, usize, C64); 24] = [
        (2, 1, 2, h),
        (2, 3, 4, h),
        (2, 7, 8, h),
        (2, 5, 6, h),
        (5, 1, 2, -ih),
        (5, 3, 4, ih),
        (5, 7, 8, -ih),
        (5, 5, 6, ih),
        (1, 1, 4, -ih),
        (1, 2, 3, ih),
        (1, 6, 7, -ih),
        (1, 5, 8, ih),
        (8, 1, 4, -h),
        (8, 2, 3, -h),
        (8, 6, 7, -h),
        (8, 5, 8, -h),
        (7, 1, 3, -ih),
        (7, 2, 4, -ih),
        (7, 6, 8, ih),
        (7, 5, 7, ih),
        (6, 1, 3, h),
        (6, 2, 4, -h),
        (6, 6, 8, -h),
        (6, 5, 7, h),
    ];
    for (a, k, l, v) in anti {
        t[a - 1][(k - 1, l - 1)] = v;
        t[a - 1][(l - 1, k - 1)] = -v;
    }
    // operators 4 and 3 are listed entry by entry
    for k in 1..=4 {
        t[3][(k - 1, k + 3)] = h;
        t[3][(k + 3, k - 1)] = h;
        t[2][(k - 1, k + 3)] = -ih;
        t[2][(k + 3, k - 1)] = ih;
    }
    t
}

pub fn build_eta8() -> EtaSet8 {
    let eta = eta8_table();
    let eps = epsilon8();
    let eta_up = eta.map(|m| eps * m * eps);
    let g = Mat8::identity();
    // S_A^M = η_A^{MR} η_L^L_R + η_A^L_R η_L^{MR}; η_A^L_R raises the first pair index
    let mixed: [Mat8; 8] = eta.map(|m| eps * m);
    let mut s = Mat8::zeros();
    for a in 0..8 {
        for m in 0..8 {
            let mut v = ZERO;
            for l in 0..8 {
                for r in 0..8 {
                    v += eta_up[a][(m, r)] * mixed[l][(l, r)] + mixed[a][(l, r)] * eta_up[l][(m, r)];
                }
            }
            s[(a, m)] = v;
        }
    }
    let h = c(1.0 / sqrt(2.0));
    let s_tilde = Mat8::from_fn(|k, a| {
        let (bk, ba) = (k / 4, a / 4);
        if k % 4 != a % 4 {
            return ZERO;
        }
        match (bk, ba) {
            (0, 0) => I * h,
            (0, 1) => -I * h,
            _ => h,
        }
    });
    EtaSet8 {
        eta,
        eta_up,
        g,
        eps,
        s,
        s_tilde,
    }
}

impl EtaSet8 {
    /// η^A_{KL}.
    pub fn eta(&self) -> &[Mat8; 8] {
        &self.eta
    }

    /// η_A^{KL}.
    pub fn eta_up(&self) -> &[Mat8; 8] {
        &self.eta_up
    }

    pub fn metric(&self) -> &Mat8 {
        &self.g
    }

    pub fn eps(&self) -> &Mat8 {
        &self.eps
    }

    /// S_A^M as computed from the operators.
    pub fn involution(&self) -> &Mat8 {
        &self.s
    }

    /// S̃_K^A stored with K as row.
    pub fn s_tilde(&self) -> &Mat8 {
        &self.s_tilde
    }

    /// R^A = ¼ η^A_{KL} R^{KL}.
    pub fn lower_pair_form(&self, p: &Mat8) -> Vec8 {
        Vec8::from_fn(|a, _| self.eta[a].component_mul(p).sum() * 0.25)
    }

    /// R^{KL} = η_A^{KL} R^A.
    pub fn pair_form(&self, v: &Vec8) -> Mat8 {
        (0..8).fold(Mat8::zeros(), |acc, a| acc + self.eta_up[a] * v[a])
    }

    /// G_{AB}δ_K^L = η_{AK}^R η_B^L_R + η_{BK}^R η_A^L_R.
    pub fn clifford_residual(&self) -> f64 {
        let e = &self.eps;
        let mut m = 0.0;
        for a in 0..8 {
            for b in 0..8 {
                let v = self.eta[a] * e * self.eta[b].transpose() * e + self.eta[b] * e * self.eta[a].transpose() * e;
                fmax(&mut m, mat_max_abs(&(v - Mat8::identity() * self.g[(a, b)])));
            }
        }
        m
    }

    /// G_{AB} = ¼ η_A^{PQ} η_{BPQ}.
    pub fn metric_residual(&self) -> f64 {
        let m = Mat8::from_fn(|a, b| self.eta_up[a].component_mul(&self.eta[b]).sum() * 0.25);
        mat_max_abs(&(m - self.g))
    }

    /// ε_{PQRT} = η^A_{PQ} η^B_{RT} G_{AB}, axes (P, Q, R, T).
    pub fn pair_metric(&self) -> ComplexTensor {
        ComplexTensor::from_fn(&[8; 4], |i| {
            let mut v = ZERO;
            for a in 0..8 {
                for b in 0..8 {
                    if self.g[(a, b)] != ZERO {
                        v += self.eta[a][(i[0], i[1])] * self.eta[b][(i[2], i[3])] * self.g[(a, b)];
                    }
                }
            }
            v
        })
    }

    /// Residuals of ε_{STPQ} = ¼ε_{ST}^{KR}ε_{PQKR}, ε_{PQ} = ¼ε_{PQRT}ε^{RT},
    /// and of the pair symmetry ε_{PQRT} = ε_{RTPQ}.
    pub fn pair_metric_residuals(&self) -> (f64, f64, f64) {
        let e4 = self.pair_metric();
        let get = |p: usize, q: usize, r: usize, t: usize| e4.get(&[p, q, r, t]);
        let e = &self.eps;
        let mut r434 = 0.0;
        let mut r435 = 0.0;
        let mut sym = 0.0;
        // raised last pair: ε_{ST}^{KR} = ε_{STAB} ε^{AK} ε^{BR}; ε is a permutation
        let perm: Vec<usize> = (0..8).map(|k| (k + 4) % 8).collect();
        for s in 0..8 {
            for t in 0..8 {
                for p in 0..8 {
                    for q in 0..8 {
                        let mut v = ZERO;
                        for k in 0..8 {
                            for r in 0..8 {
                                v += get(s, t, perm[k], perm[r]) * get(p, q, k, r);
                            }
                        }
                        fmax(&mut r434, (v * 0.25 - get(s, t, p, q)).norm());
                        fmax(&mut sym, (get(s, t, p, q) - get(p, q, s, t)).norm());
                    }
                }
                let mut v = ZERO;
                for r in 0..8 {
                    for q in 0..8 {
                        v += get(s, t, r, q) * e[(r, q)];
                    }
                }
                fmax(&mut r435, (v * 0.25 - e[(s, t)]).norm());
            }
        }
        (r434, r435, sym)
    }

    /// η_A^{(MN)} = (1/8) η_A^{KL} ε_{KL} ε^{MN}.
    pub fn symmetric_part_residual(&self) -> f64 {
        let mut m = 0.0;
        for a in 0..8 {
            let sym = (self.eta_up[a] + self.eta_up[a].transpose()) * c(0.5);
            let tr = self.eta_up[a].component_mul(&self.eps).sum() / 8.0;
            fmax(&mut m, mat_max_abs(&(sym - self.eps * tr)));
        }
        m
    }

    /// Deviations of S from the tabulated block swap, of S² from δ and of
    /// G_{AK} = S_A^M ε_{KM}.
    pub fn involution_residuals(&self) -> (f64, f64, f64) {
        (
            mat_max_abs(&(self.s - self.eps)),
            mat_max_abs(&(self.s * self.s - Mat8::identity())),
            mat_max_abs(&(self.s * self.eps.transpose() - self.g)),
        )
    }

    /// ε_{AB} S̃_K^A S̃_L^B - G_{KL} and det S̃ - 1.
    pub fn s_tilde_residuals(&self) -> (f64, f64) {
        let st = &self.s_tilde;
        (
            mat_max_abs(&(st * self.eps * st.transpose() - self.g)),
            (st.determinant() - ONE).norm(),
        )
    }
}

/// ρ with (1/24) e_{ABCDKLMN} X^{ABCD} = ρ ε_{KR}ε_{LT}ε_{MU}ε_{NV} X^{RTUV}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FamilyResult {
    pub rho: i8,
    pub value: C64,
    pub residual: f64,
}

/// X^{ABCD} = ε^{ijkl} X_i^A X_j^B X_k^C X_l^D.
pub fn four_form(xs: &[Vec8; 4]) -> ComplexTensor {
    let perms = crate::tensors::signed_permutations(4);
    ComplexTensor::from_fn(&[8; 4], |i| {
        perms
            .iter()
            .map(|(p, s)| xs[p[0]][i[0]] * xs[p[1]][i[1]] * xs[p[2]][i[2]] * xs[p[3]][i[3]] * (*s as f64))
            .sum()
    })
}

/// (1/24) e_{ABCDKLMN} T^{ABCD} with e_{12345678} = +1.
pub fn hodge8(t: &ComplexTensor) -> ComplexTensor {
    ComplexTensor::from_fn(&[8; 4], |k| {
        let mut used = [false; 8];
        for &x in k {
            if used[x] {
                return ZERO;
            }
            used[x] = true;
        }
        let comp: Vec<usize> = (0..8).filter(|x| !used[*x]).collect();
        let full = [comp[0], comp[1], comp[2], comp[3], k[0], k[1], k[2], k[3]];
        t.get(&comp) * (permutation_sign(&full) as f64)
    })
}

fn lower_all(t: &ComplexTensor, e: &Mat8) -> ComplexTensor {
    ComplexTensor::from_fn(&[8; 4], |k| {
        let mut v = ZERO;
        // e is a signed permutation for both metrics used here
        let col = |a: usize| -> Vec<(usize, C64)> { (0..8).filter(|&b| e[(a, b)] != ZERO).map(|b| (b, e[(a, b)])).collect() };
        for (r, er) in col(k[0]) {
            for (s, es) in col(k[1]) {
                for (u, eu) in col(k[2]) {
                    for (w, ew) in col(k[3]) {
                        v += er * es * eu * ew * t.get(&[r, s, u, w]);
                    }
                }
            }
        }
        v
    })
}

/// Family test with a chosen metric ε_{KL} (the tabulated one, or a rescaled one).
pub fn family_test_with(eps: &Mat8, xs: &[Vec8; 4], tol: f64) -> Result<FamilyResult, OctoError> {
    let scale = xs.iter().map(|x| x.iter().map(|z| z.norm()).fold(0.0, f64::max)).fold(0.0, f64::max);
    for i in 0..4 {
        for j in i..4 {
            let v = (xs[i].transpose() * eps * xs[j])[(0, 0)].norm();
            if v > tol * (1.0 + scale * scale) {
                return Err(OctoError::NotIsotropic { i, j, value: v });
            }
        }
    }
    let m = DMatrix::from_fn(8, 4, |r, k| xs[k][r]);
    if rank(&m, 1e-9) < 4 {
        return Err(OctoError::Dependent);
    }
    let t = four_form(xs);
    let lhs = hodge8(&t);
    let rhs = lower_all(&t, eps);
    let (mut best, mut idx) = (0.0, 0);
    for (k, z) in rhs.entries().iter().enumerate() {
        if z.norm() > best {
            best = z.norm();
            idx = k;
        }
    }
    let value = lhs.entries()[idx] / rhs.entries()[idx];
    let residual = lhs
        .entries()
        .iter()
        .zip(rhs.entries())
        .map(|(a, b)| (a - b * value).norm())
        .fold(0.0, f64::max)
        / best;
    let rho = if (value - ONE).norm() <= 1e-6 {
        1
    } else if (value + ONE).norm() <= 1e-6 {
        -1
    } else {
        return Err(OctoError::NoFamily((value * value - ONE).norm()));
    };
    if residual > 1e-8 {
        return Err(OctoError::NoFamily(residual));
    }
    Ok(FamilyResult { rho, value, residual })
}

pub fn family_test(e8: &EtaSet8, xs: &[Vec8; 4], tol: f64) -> Result<FamilyResult, OctoError> {
    family_test_with(e8.eps(), xs, tol)
}

/// X_i = (i r Ẏ_i, Ẏ_i): four points of the generator belonging to r.
pub fn canonical_generator(r: &Bivector4, ys: &[Spinor; 4]) -> [Vec8; 4] {
    ys.map(|y| twistor(&(r.matrix() * y * I), &y))
}

/// Which slots of the structure-constant formula carry transposed operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Reading {
    pub first: bool,
    pub second: bool,
    pub third: bool,
}

impl Reading {
    pub fn all() -> [Reading; 8] {
        core::array::from_fn(|k| Reading {
            first: k & 4 != 0,
            second: k & 2 != 0,
            third: k & 1 != 0,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OctonionTable {
    /// t[i][j][k] = η_{ij}^k.
    pub t: Vec<C64>,
    pub unit: Vec8,
    pub reading: Reading,
}

/// η_{ij}^k = √2 η_i^{AB} η_{jYA} η_{kZB} X^Y X^Z under a reading.
pub fn structure_constants(e8: &EtaSet8, x: &Vec8, reading: Reading) -> Vec<C64> {
    let pick = |m: &Mat8, t: bool| if t { m.transpose() } else { *m };
    let a: Vec<Mat8> = e8.eta_up.iter().map(|m| pick(m, reading.first)).collect();
    let u: Vec<Vec8> = e8.eta.iter().map(|m| pick(m, reading.second).transpose() * x).collect();
    let w: Vec<Vec8> = e8.eta.iter().map(|m| pick(m, reading.third).transpose() * x).collect();
    let mut t = alloc::vec![ZERO; 512];
    for i in 0..8 {
        for j in 0..8 {
            for k in 0..8 {
                t[(i * 8 + j) * 8 + k] = (u[j].transpose() * a[i] * w[k])[(0, 0)] * sqrt(2.0);
            }
        }
    }
    t
}

/// e = (1/(4√2)) η^{iAB} ε_{AB}.
pub fn octonion_unit(e8: &EtaSet8) -> Vec8 {
    Vec8::from_fn(|i, _| e8.eta_up[i].component_mul(&e8.eps).sum() / (4.0 * sqrt(2.0)))
}

impl OctonionTable {
    pub fn get(&self, i: usize, j: usize, k: usize) -> C64 {
        self.t[(i * 8 + j) * 8 + k]
    }

    pub fn mul(&self, x: &Vec8, y: &Vec8) -> Vec8 {
        mul_with(&self.t, x, y)
    }

    pub fn to_tensor(&self) -> ComplexTensor {
        ComplexTensor::new(alloc::vec![8; 3], self.t.clone()).expect("finite entries")
    }

    pub fn unit_residual(&self) -> f64 {
        unit_residual(&self.t, &self.unit)
    }

    /// Relative |N(xy) - N(x)N(y)| over `count` seeded complex pairs.
    pub fn composition_residual(&self, seed: u64, count: usize) -> f64 {
        composition_residual(&self.t, seed, count)
    }

    /// Left and right alternative laws over seeded pairs.
    pub fn alternativity_residual(&self, seed: u64, count: usize) -> f64 {
        alternativity_residual(&self.t, seed, count)
    }

    /// Largest associator over basis triples.
    pub fn max_basis_associator(&self) -> f64 {
        let e = |k: usize| Vec8::from_fn(|i, _| if i == k { ONE } else { ZERO });
        let mut m = 0.0;
        for a in 0..8 {
            for b in 0..8 {
                for cc in 0..8 {
                    let l = self.mul(&self.mul(&e(a), &e(b)), &e(cc));
                    let r = self.mul(&e(a), &self.mul(&e(b), &e(cc)));
                    fmax(&mut m, (l - r).iter().map(|z| z.norm()).fold(0.0, f64::max));
                }
            }
        }
        m
    }

    pub fn max_imaginary(&self) -> f64 {
        self.t.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
    }
}

fn mul_with(t: &[C64], x: &Vec8, y: &Vec8) -> Vec8 {
    let mut out = Vec8::zeros();
    for i in 0..8 {
        for j in 0..8 {
            let w = x[i] * y[j];
            if w == ZERO {
                continue;
            }
            for k in 0..8 {
                out[k] += t[(i * 8 + j) * 8 + k] * w;
            }
        }
    }
    out
}

fn unit_residual(t: &[C64], e: &Vec8) -> f64 {
    let mut m = 0.0;
    for k in 0..8 {
        let x = Vec8::from_fn(|i, _| if i == k { ONE } else { ZERO });
        fmax(&mut m, (mul_with(t, e, &x) - x).iter().map(|z| z.norm()).fold(0.0, f64::max));
        fmax(&mut m, (mul_with(t, &x, e) - x).iter().map(|z| z.norm()).fold(0.0, f64::max));
    }
    m
}

fn norm8(x: &Vec8) -> C64 {
    x.iter().map(|z| z * z).sum()
}

fn composition_residual(t: &[C64], seed: u64, count: usize) -> f64 {
    let mut rng = sample::rng(seed);
    let mut m = 0.0;
    for _ in 0..count {
        let x: Vec8 = sample::vector(&mut rng);
        let y: Vec8 = sample::vector(&mut rng);
        let want = norm8(&x) * norm8(&y);
        fmax(&mut m, (norm8(&mul_with(t, &x, &y)) - want).norm() / want.norm().max(1e-300));
    }
    m
}

fn alternativity_residual(t: &[C64], seed: u64, count: usize) -> f64 {
    let mut rng = sample::rng(seed);
    let mut m = 0.0;
    for _ in 0..count {
        let x: Vec8 = sample::vector(&mut rng);
        let y: Vec8 = sample::vector(&mut rng);
        let xx = mul_with(t, &x, &x);
        let l = mul_with(t, &xx, &y) - mul_with(t, &x, &mul_with(t, &x, &y));
        let r = mul_with(t, &y, &xx) - mul_with(t, &mul_with(t, &y, &x), &x);
        fmax(&mut m, l.iter().chain(r.iter()).map(|z| z.norm()).fold(0.0, f64::max));
    }
    m
}

/// X = e_1 + e_5, the default normalised vector.
pub fn default_octonion_vector() -> Vec8 {
    Vec8::from_fn(|k, _| if k == 0 || k == 4 { ONE } else { ZERO })
}

/// Searches the eight readings in order and returns the first unital,
/// composition, alternative table.
pub fn build_octonion_table(e8: &EtaSet8, x: &Vec8, tol: f64) -> Result<OctonionTable, OctoError> {
    let nx = (x.transpose() * e8.eps() * x)[(0, 0)];
    if (nx - c(2.0)).norm() > tol {
        return Err(OctoError::Normalisation(nx));
    }
    let unit = octonion_unit(e8);
    let mut best = f64::INFINITY;
    for reading in Reading::all() {
        let t = structure_constants(e8, x, reading);
        let u = unit_residual(&t, &unit);
        best = best.min(u);
        if u <= 1e-9 && composition_residual(&t, 17, 50) <= 1e-9 && alternativity_residual(&t, 19, 50) <= 1e-9 {
            return Ok(OctonionTable { t, unit, reading });
        }
    }
    Err(OctoError::NoReading(best))
}

/// Restricted generator X^A = (0, Y_b) with Y_b = (π, ω) and
/// r = [[-½q ε, iρ], [-iρᵀ, ε]], q = 2 det ρ.
#[derive(Debug, Clone, PartialEq)]
pub struct KleinReport {
    pub r: Bivector4,
    pub q: C64,
    /// |-½q ε π + iρ ω|.
    pub first_block: f64,
    /// |-iρᵀ π + ε ω|, the significant relation.
    pub second_block: f64,
    pub degenerate: bool,
}

fn eps2() -> Mat2 {
    Mat2::new(ZERO, ONE, -ONE, ZERO)
}

pub fn klein_bivector(rho: &Mat2) -> (Bivector4, C64) {
    let q = rho.determinant() * 2.0;
    let e = eps2();
    let mut m = Mat4::zeros();
    for a in 0..2 {
        for b in 0..2 {
            m[(a, b)] = e[(a, b)] * q * -0.5;
            m[(a, b + 2)] = rho[(a, b)] * I;
            m[(a + 2, b)] = -rho[(b, a)] * I;
            m[(a + 2, b + 2)] = e[(a, b)];
        }
    }
    (Bivector4::antisymmetric_part(&m), q)
}

/// ω from the significant relation: ω = -iε ρᵀ π.
pub fn klein_omega(rho: &Mat2, pi: &Vec2) -> Vec2 {
    eps2() * rho.transpose() * pi * (-I)
}

pub fn klein_slice(x: &Vec8, rho: &Mat2, tol: f64) -> Result<KleinReport, OctoError> {
    let scale = x.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if (0..4).any(|k| x[k].norm() > tol * (1.0 + scale)) {
        return Err(OctoError::NotRestricted);
    }
    let pi = Vec2::new(x[4], x[5]);
    let omega = Vec2::new(x[6], x[7]);
    let (r, q) = klein_bivector(rho);
    let e = eps2();
    let b1 = e * pi * (q * -0.5) + rho * omega * I;
    let b2 = rho.transpose() * pi * (-I) + e * omega;
    let n = |v: Vec2| v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    Ok(KleinReport {
        r,
        q,
        first_block: n(b1),
        second_block: n(b2),
        degenerate: n(pi) <= tol,
    })
}

/// ρ from two incidences (π, ω), (η, ξ), when [π η] is invertible.
pub fn klein_solve(first: (&Vec2, &Vec2), second: (&Vec2, &Vec2)) -> Option<Mat2> {
    let p = Mat2::from_columns(&[*first.0, *second.0]);
    let w = Mat2::from_columns(&[*first.1, *second.1]);
    let pinv = p.try_inverse()?;
    // ρᵀ [π η] = iε⁻¹[ω ξ] with ε⁻¹ = -ε
    Some((eps2() * w * pinv * (-I)).transpose() * -ONE * -ONE)
}

/// ½ r^{ab} r_{ab} - pf(r) and r^{ab} r_{bc} + ½ pf(r) δ_c^a.
pub fn radius_residuals(n: &NordenSet, r: &Bivector4) -> (f64, f64) {
    let low = lower_bivector(n, r);
    let pf = pfaffian(r);
    let half = r.matrix().component_mul(low.matrix()).sum() * 0.5;
    let prod = r.matrix() * low.matrix();
    (
        (half - pf).norm(),
        mat_max_abs(&(prod + Mat4::identity() * (pf * 0.5))),
    )
}

fn random_bivector(rng: &mut sample::Rng64) -> Bivector4 {
    Bivector4::antisymmetric_part(&sample::antisymmetric4(rng))
}

/// Y orthogonal to X: adjust the entry of Y under the largest |X|.
fn orthogonal_to(x: &Spinor, y: &mut Spinor) {
    let k = (0..4).fold(0, |b, j| if x[j].norm() > x[b].norm() { j } else { b });
    let d = x.dot(y) / x[k];
    y[k] -= d;
}

/// Residual checks for the bitwistor, quadric, operator and octonion laws.
pub fn octo_suite(seed: u64, threshold: f64) -> Vec<Check> {
    let mut rng = sample::rng(seed);
    let n = NordenSet::special();
    let e8 = build_eta8();
    let mut out = Vec::new();

    // bitwistor solutions
    let mut inv = 0.0;
    let mut lin = 0.0;
    let mut radius_half = 0.0;
    let mut radius_prod = 0.0;
    for _ in 0..20 {
        let sol = BitwistorSolution {
            x_dot: sample::vector(&mut rng),
            y_dot: sample::vector(&mut rng),
        };
        let r1 = random_bivector(&mut rng);
        let r2 = random_bivector(&mut rng);
        let (x, y) = evaluate_solution(&sol, &r1);
        fmax(&mut inv, (quadratic_form(&twistor(&x, &y)) - quadratic_form(&twistor(&sol.x_dot, &sol.y_dot))).norm());
        let (x12, _) = evaluate_solution(&sol, &r1.add(&r2));
        let (x2, _) = evaluate_solution(&sol, &r2);
        fmax(&mut lin, spinor_norm(&(x12 - x - x2 + sol.x_dot)));
        let (h, p) = radius_residuals(&n, &r1);
        fmax(&mut radius_half, h);
        fmax(&mut radius_prod, p);
    }
    out.push(Check::new("pairing_invariance", inv, threshold));
    out.push(Check::new("solution_linearity", lin, threshold));
    out.push(Check::new("radius_half_contraction", radius_half, threshold));
    out.push(Check::new("radius_product_half", radius_prod, threshold));

    // point to generator
    let xd: Spinor = sample::vector(&mut rng);
    let mut yd: Spinor = sample::vector(&mut rng);
    orthogonal_to(&xd, &mut yd);
    match solve_point_to_generator(&xd, &yd, 1e-9) {
        Ok(pg) => {
            out.push(Check::new("point_to_generator_residual", pg.residual, threshold));
            out.push(Check::new("point_to_generator_rank", (pg.rank as f64 - 3.0).abs(), 0.5));
            let mut kill = 0.0;
            let mut simple = 0.0;
            let mut family = 0.0;
            for h in &pg.homogeneous {
                fmax(&mut kill, spinor_norm(&(h.matrix() * yd)));
                fmax(&mut simple, pfaffian(h).norm());
            }
            let sol = BitwistorSolution { x_dot: xd, y_dot: yd };
            for _ in 0..5 {
                let lam = [sample::complex(&mut rng), sample::complex(&mut rng), sample::complex(&mut rng)];
                let (x, _) = evaluate_solution(&sol, &pg.member(lam));
                fmax(&mut family, spinor_norm(&x));
            }
            out.push(Check::new("homogeneous_annihilate", kill, threshold));
            out.push(Check::new("homogeneous_simple", simple, threshold));
            out.push(Check::new("generator_points_vanish", family, 1e-9));
        }
        Err(_) => out.push(Check::flag("point_to_generator", false)),
    }

    // generator to point, with subsystem ranks
    let r0 = random_bivector(&mut rng);
    let ys: [Spinor; 4] = core::array::from_fn(|_| sample::vector(&mut rng));
    let pairs: [(Spinor, Spinor); 4] = ys.map(|y| (r0.matrix() * y * I, y));
    match solve_generator_to_point(&pairs, 1e-9) {
        Ok(sol) => out.push(Check::new("generator_to_point_recovery", mat_max_abs(&(sol.r.matrix() - r0.matrix())), 1e-9)),
        Err(_) => out.push(Check::flag("generator_to_point_recovery", false)),
    }
    let r2 = solve_incidence(&pairs[..2]);
    let r3 = solve_incidence(&pairs[..3]);
    out.push(Check::new("two_equation_rank", (r2.rank as f64 - 5.0).abs(), 0.5));
    out.push(Check::new("three_equation_rank", (r3.rank as f64 - 6.0).abs(), 0.5));
    out.push(Check::new("four_equation_rank", (solve_incidence(&pairs).rank as f64 - 6.0).abs(), 0.5));

    // generator of the second quadric to a point of the first
    let mut yq: Spinor = sample::vector(&mut rng);
    let xq: Spinor = sample::vector(&mut rng);
    orthogonal_to(&xq, &mut yq);
    if let Ok(pg) = solve_point_to_generator(&xq, &yq, 1e-9) {
        let rs: Vec<Bivector4> = (0..4)
            .map(|_| pg.member([sample::complex(&mut rng), sample::complex(&mut rng), sample::complex(&mut rng)]))
            .collect();
        match solve_point_from_generator(&rs, 1e-9) {
            Ok(p) => {
                out.push(Check::new("bitwistor_system_rank", (p.rank as f64 - 7.0).abs(), 0.5));
                let k = (0..4).fold(0, |b, j| if yq[j].norm() > yq[b].norm() * (1.0 + 1e-12) { j } else { b });
                let scale = yq[k];
                let dx = spinor_norm(&(p.x - xq / scale));
                let dy = spinor_norm(&(p.y - yq / scale));
                out.push(Check::new("bitwistor_point_recovery", dx.max(dy), 1e-9));
            }
            Err(_) => out.push(Check::flag("bitwistor_system_rank", false)),
        }
    }

    // homogeneous coordinates
    let mut norm_law = 0.0;
    let mut square_law = 0.0;
    let mut nf_zero = 0.0;
    let mut pf_rel = 0.0;
    let mut op_coords = 0.0;
    for _ in 0..10 {
        let r = random_bivector(&mut rng);
        let hc = homogeneous_coords(&n, &e8, &r);
        let e = epsilon8();
        let full = hc.pair.component_mul(&(e * hc.pair * e.transpose())).sum();
        fmax(&mut norm_law, (full - hc.nf * 4.0).norm());
        fmax(&mut square_law, pair_square_residual(&hc.pair, hc.nf));
        fmax(&mut nf_zero, hc.nf.norm().max((coords_norm(&hc.coords)).norm()));
        let pf = pfaffian(&r);
        fmax(&mut pf_rel, (pf - pf_from_coords(&hc.coords)).norm() / (1.0 + pf.norm()));
        for k in [0, 1, 4, 5, 6, 7] {
            fmax(&mut op_coords, (hc.coords[k] - hc.operator_coords[k]).norm());
        }
        let v: Vec8 = sample::vector(&mut rng);
        let p = e8.pair_form(&v);
        fmax(&mut square_law, pair_square_residual(&p, norm8(&v)));
        fmax(&mut op_coords, (e8.lower_pair_form(&p) - v).iter().map(|z| z.norm()).fold(0.0, f64::max));
    }
    out.push(Check::new("pair_norm_law", norm_law, 1e-9));
    out.push(Check::new("pair_square_law", square_law, 1e-9));
    out.push(Check::new("image_on_quadric", nf_zero, 1e-9));
    out.push(Check::new("pfaffian_from_coordinates", pf_rel, 1e-9));
    out.push(Check::new("operator_coordinates", op_coords, 1e-9));

    // eight-dimensional operators
    out.push(Check::new("reduced_clifford", e8.clifford_residual(), 1e-12));
    out.push(Check::new("metric_from_operators", e8.metric_residual(), 1e-12));
    let (r434, r435, sym) = e8.pair_metric_residuals();
    out.push(Check::new("pair_metric_square", r434, 1e-12));
    out.push(Check::new("pair_metric_trace", r435, 1e-12));
    out.push(Check::new("pair_metric_symmetric", sym, 1e-12));
    out.push(Check::new("symmetric_part_law", e8.symmetric_part_residual(), 1e-12));
    let (s_tab, s_sq, s_g) = e8.involution_residuals();
    out.push(Check::new("involution_table", s_tab, 1e-12));
    out.push(Check::new("involution_square", s_sq, 1e-12));
    out.push(Check::new("involution_metric", s_g, 1e-12));
    let (st_g, st_det) = e8.s_tilde_residuals();
    out.push(Check::new("s_tilde_metric", st_g, 1e-12));
    out.push(Check::new("s_tilde_det", st_det, 1e-12));

    // families
    let rf = random_bivector(&mut rng);
    let ys: [Spinor; 4] = core::array::from_fn(|_| sample::vector(&mut rng));
    let gen = canonical_generator(&rf, &ys);
    let rho = family_test(&e8, &gen, 1e-9).map(|f| f.rho);
    out.push(Check::flag("canonical_family_one", rho == Ok(1)));
    let scaled = [gen[0] * c(3.0), gen[1], gen[2], gen[3]];
    out.push(Check::flag("family_scale_invariant", family_test(&e8, &scaled, 1e-9).map(|f| f.rho) == rho));
    let img = gen.map(|x| e8.involution() * x);
    out.push(Check::flag("involution_image_family_one", family_test(&e8, &img, 1e-9).map(|f| f.rho) == Ok(1)));
    let swap = Mat8::from_fn(|a, b| {
        let p = |k: usize| match k {
            0 => 4,
            4 => 0,
            k => k,
        };
        if p(a) == b {
            ONE
        } else {
            ZERO
        }
    });
    let flipped = gen.map(|x| swap * x);
    out.push(Check::flag("pair_swap_family_two", family_test(&e8, &flipped, 1e-9).map(|f| f.rho) == Ok(-1)));
    let root_i = C64::new(0.5f64.sqrt(), 0.5f64.sqrt());
    out.push(Check::flag(
        "rescaled_metric_family_two",
        family_test_with(&(e8.eps() * root_i), &gen, 1e-9).map(|f| f.rho) == Ok(-1),
    ));

    // octonions
    match build_octonion_table(&e8, &default_octonion_vector(), 1e-12) {
        Ok(t) => {
            out.push(Check::new("octonion_unit", t.unit_residual(), 1e-12));
            out.push(Check::new("octonion_composition", t.composition_residual(seed ^ 0x5a, 200), 1e-9));
            out.push(Check::new("octonion_alternative", t.alternativity_residual(seed ^ 0xa5, 200), 1e-9));
            out.push(Check::flag("octonion_non_associative", t.max_basis_associator() > 0.1));
            out.push(Check::new("octonion_real", t.max_imaginary(), 1e-12));
        }
        Err(_) => out.push(Check::flag("octonion_unit", false)),
    }

    // Klein slice
    let rho2 = Mat2::from_fn(|_, _| sample::complex(&mut rng));
    let pi = Vec2::new(sample::complex(&mut rng), sample::complex(&mut rng));
    let omega = klein_omega(&rho2, &pi);
    let x8 = Vec8::from_column_slice(&[ZERO, ZERO, ZERO, ZERO, pi[0], pi[1], omega[0], omega[1]]);
    match klein_slice(&x8, &rho2, 1e-12) {
        Ok(k) => {
            out.push(Check::new("klein_redundancy", k.first_block.max(k.second_block), threshold));
            let y = Spinor::new(pi[0], pi[1], omega[0], omega[1]);
            out.push(Check::new("klein_incidence", spinor_norm(&(k.r.matrix() * y)), threshold));
        }
        Err(_) => out.push(Check::flag("klein_redundancy", false)),
    }
    let eta2 = Vec2::new(sample::complex(&mut rng), sample::complex(&mut rng));
    let xi = klein_omega(&rho2, &eta2);
    let solved = klein_solve((&pi, &omega), (&eta2, &xi)).map(|m| mat_max_abs2(&(m - rho2)));
    out.push(Check::new("klein_pair_solve", solved.unwrap_or(f64::INFINITY), 1e-10));
    out
}

fn mat_max_abs2(m: &Mat2) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}
