//! Generalized Zernike machinery on the unit disk: per-azimuthal-mode
//! radial bases, analysis and synthesis of real fields, the diagonal
//! weighted Laplacian and the banded conversion operator.
//!
//! The basis Z^{(b)}_{q,m} is orthonormal on the disk with respect to the
//! weight (1-r²)^b; its radial part is r^{|m|} P̃_q^{(b,|m|)}(2r²-1) with an
//! orthonormalized Jacobi polynomial, and the angular part is the real
//! cos/sin pair. The weighted companion W^{(b)} = (1-r²)^b Z^{(b)} carries
//! zero Dirichlet data structurally. For b = 1 the Laplacian maps W to Z
//! diagonally mode by mode, and multiplying by (1-r²) (the conversion
//! W → Z) is banded in the radial index; both operators are built by
//! quadrature projection against the orthonormal basis.

use crate::banded::BandedOp;
use crate::orthopoly1d::{norm_sq_ln, Jacobi};
use crate::quadrature::gauss_jacobi;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum DiskError {
    #[error("point ({x}, {y}) lies outside the unit disk")]
    OutsidePoint { x: f64, y: f64 },
    #[error("degree mismatch: expected {expected} got {got}")]
    DegreeMismatch { expected: usize, got: usize },
}

/// Basis selector: plain Zernike(b) or the weighted (1-r²)^b · Zernike(b).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiskBasis {
    pub b: f64,
    pub weighted: bool,
}

impl DiskBasis {
    pub fn zernike(b: f64) -> Self {
        Self { b, weighted: false }
    }

    pub fn weighted_zernike(b: f64) -> Self {
        Self { b, weighted: true }
    }
}

/// Real disk field in per-azimuthal-mode blocks: mode m holds the radial
/// coefficients of r^{|m|} P̃_q^{(b,|m|)}(2r²-1) for 2q + |m| <= degree,
/// with m >= 0 the cosine modes and m < 0 the sine modes.
#[derive(Debug, Clone, PartialEq)]
pub struct DiskCoeffs {
    pub b: f64,
    pub degree: usize,
    blocks: Vec<Vec<f64>>,
}

/// Radial block length for mode m under total degree truncation `degree`.
pub fn radial_len(degree: usize, m: i32) -> usize {
    let ma = m.unsigned_abs() as usize;
    if ma > degree {
        0
    } else {
        (degree - ma) / 2 + 1
    }
}

impl DiskCoeffs {
    pub fn zeros(b: f64, degree: usize) -> Self {
        let blocks = (-(degree as i32)..=degree as i32)
            .map(|m| vec![0.0; radial_len(degree, m)])
            .collect();
        Self { b, degree, blocks }
    }

    pub fn modes(&self) -> impl Iterator<Item = i32> {
        -(self.degree as i32)..=self.degree as i32
    }

    pub fn block(&self, m: i32) -> &[f64] {
        &self.blocks[(m + self.degree as i32) as usize]
    }

    pub fn block_mut(&mut self, m: i32) -> &mut Vec<f64> {
        &mut self.blocks[(m + self.degree as i32) as usize]
    }

    /// Total number of stored coefficients.
    pub fn total_len(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.blocks
            .iter()
            .flat_map(|b| b.iter())
            .fold(0.0f64, |acc, &v| acc.max(v.abs()))
    }

    /// Largest coefficient magnitude per polynomial degree 0..=K.
    pub fn decay_profile(&self) -> Vec<f64> {
        let mut out = vec![0.0f64; self.degree + 1];
        for m in self.modes() {
            let ma = m.unsigned_abs() as usize;
            for (q, &v) in self.block(m).iter().enumerate() {
                let deg = 2 * q + ma;
                out[deg] = out[deg].max(v.abs());
            }
        }
        out
    }

    /// Concatenate all blocks in mode order (m = -K..K).
    pub fn pack(&self) -> Vec<f64> {
        self.blocks.iter().flat_map(|b| b.iter().copied()).collect()
    }

    pub fn unpack(b: f64, degree: usize, flat: &[f64]) -> Result<Self, DiskError> {
        let mut out = Self::zeros(b, degree);
        let total = out.total_len();
        if flat.len() != total {
            return Err(DiskError::DegreeMismatch { expected: total, got: flat.len() });
        }
        let mut at = 0;
        for blk in &mut out.blocks {
            let n = blk.len();
            blk.copy_from_slice(&flat[at..at + n]);
            at += n;
        }
        Ok(out)
    }
}

/// Offsets of each mode's block inside the packed vector.
#[derive(Debug, Clone)]
pub struct DiskLayout {
    pub degree: usize,
    offsets: Vec<usize>,
    total: usize,
}

impl DiskLayout {
    pub fn new(degree: usize) -> Self {
        let mut offsets = Vec::with_capacity(2 * degree + 1);
        let mut at = 0;
        for m in -(degree as i32)..=degree as i32 {
            offsets.push(at);
            at += radial_len(degree, m);
        }
        Self { degree, offsets, total: at }
    }

    pub fn total(&self) -> usize {
        self.total
    }

    pub fn range(&self, m: i32) -> std::ops::Range<usize> {
        let idx = (m + self.degree as i32) as usize;
        let start = self.offsets[idx];
        start..start + radial_len(self.degree, m)
    }
}

// log of the radial normalization 2^{(m+b+2)/2} / sqrt(h_q^{(b,m)})
fn radial_norm_ln(b: f64, m: usize, q: usize) -> f64 {
    let basis = Jacobi { a: b, b: m as f64 };
    0.5 * ((m as f64 + b + 2.0) * std::f64::consts::LN_2 - norm_sq_ln(basis, q))
}

/// Values of the orthonormalized radial functions for mode m at radius r,
/// all q with 2q+m <= degree, via one classical Jacobi recurrence sweep.
fn radial_block(b: f64, m: usize, degree: usize, r: f64) -> Vec<f64> {
    let qmax = radial_len(degree, m as i32);
    let t = 2.0 * r * r - 1.0;
    let rm = r.powi(m as i32);
    let basis = Jacobi { a: b, b: m as f64 };
    let mut out = Vec::with_capacity(qmax);
    let mut prev = 1.0f64;
    let mut cur = 0.5 * (basis.a + basis.b + 2.0) * t + 0.5 * (basis.a - basis.b);
    for q in 0..qmax {
        let p = match q {
            0 => prev,
            1 => cur,
            _ => {
                let next = classical_step(basis, q, t, cur, prev);
                prev = cur;
                cur = next;
                cur
            }
        };
        out.push(p * rm * radial_norm_ln(b, m, q).exp());
    }
    out
}

fn classical_step(basis: Jacobi, n: usize, x: f64, cur: f64, prev: f64) -> f64 {
    let (a, b) = (basis.a, basis.b);
    let nf = n as f64;
    let t = 2.0 * nf + a + b;
    let c_x = (t - 1.0) * t * (t - 2.0);
    let c_0 = (t - 1.0) * (a * a - b * b);
    let c_prev = 2.0 * (nf + a - 1.0) * (nf + b - 1.0) * t;
    let denom = 2.0 * nf * (nf + a + b) * (t - 2.0);
    ((c_x * x + c_0) * cur - c_prev * prev) / denom
}

/// Orthonormalized radial part of Z^{(b)}_{ℓ,m}: r^{|m|} P̃_q^{(b,|m|)}(2r²-1)
/// with the normalization pinned by disk orthonormality.
pub fn zernike_radial_eval(b: f64, m: i32, q: usize, r: f64) -> f64 {
    let ma = m.unsigned_abs() as usize;
    let degree = 2 * q + ma;
    radial_block(b, ma, degree, r)[q]
}

/// Real angular factor √((2-δ_{m0})/2π) · {cos(mθ) for m >= 0, sin(|m|θ) else}.
pub fn angular_eval(m: i32, theta: f64) -> f64 {
    let norm = if m == 0 {
        1.0 / (2.0 * std::f64::consts::PI).sqrt()
    } else {
        1.0 / std::f64::consts::PI.sqrt()
    };
    if m >= 0 {
        norm * (m as f64 * theta).cos()
    } else {
        norm * ((-m) as f64 * theta).sin()
    }
}

/// Pointwise synthesis of a disk field, including the (1-r²)^b prefactor
/// when the basis is weighted; errors outside the closed disk.
pub fn disk_synth(c: &DiskCoeffs, basis: DiskBasis, x: f64, y: f64) -> Result<f64, DiskError> {
    let rr = x * x + y * y;
    if rr > 1.0 + 1e-12 {
        return Err(DiskError::OutsidePoint { x, y });
    }
    let rr = rr.min(1.0);
    let r = rr.sqrt();
    let theta = y.atan2(x);
    let mut acc = 0.0;
    for m in c.modes() {
        let blk = c.block(m);
        if blk.iter().all(|&v| v == 0.0) {
            continue;
        }
        let radial = radial_block(basis.b, m.unsigned_abs() as usize, c.degree, r);
        let ang = angular_eval(m, theta);
        let mode_sum: f64 = blk.iter().zip(&radial).map(|(&cv, &rv)| cv * rv).sum();
        acc += mode_sum * ang;
    }
    if basis.weighted {
        acc *= (1.0 - rr).powf(basis.b);
    }
    Ok(acc)
}

/// Expand a real function on the unit disk: tensor quadrature with
/// Gauss-Jacobi in t = 2r²-1 (weight matching the basis) and equispaced
/// trapezoidal sampling in θ.
pub fn disk_analyze(f: impl Fn(f64, f64) -> f64, basis: DiskBasis, degree: usize) -> DiskCoeffs {
    let k = degree;
    let n_r = k + 8;
    let n_theta = 2 * k + 16;
    // Radial rule in t: the Zernike inner product carries (1-r²)^b r dr;
    // expanding in the weighted basis cancels the weight entirely.
    let (t_rule, scale) = if basis.weighted {
        (gauss_jacobi(n_r, 0.0, 0.0).expect("rule"), 0.25)
    } else {
        (
            gauss_jacobi(n_r, basis.b, 0.0).expect("rule"),
            0.25 * 0.5f64.powf(basis.b),
        )
    };
    let radii: Vec<f64> = t_rule.nodes.iter().map(|&t| ((1.0 + t) / 2.0).sqrt()).collect();

    // angular transform at every radius: F[m+k][node]
    let mut fourier = vec![vec![0.0f64; n_r]; 2 * k + 1];
    let dtheta = 2.0 * std::f64::consts::PI / n_theta as f64;
    for i in 0..n_theta {
        let theta = i as f64 * dtheta;
        let (sin1, cos1) = theta.sin_cos();
        for (node, &r) in radii.iter().enumerate() {
            let fv = f(r * cos1.mul_add(r, 0.0) / r.max(f64::MIN_POSITIVE), 0.0)
                .mul_add(0.0, f(r * cos1, r * sin1));
            // rotation recurrence for cos(mθ), sin(mθ)
            let mut cos_m = 1.0;
            let mut sin_m = 0.0;
            for m in 0..=k as i32 {
                if m > 0 {
                    let c_next = cos_m * cos1 - sin_m * sin1;
                    let s_next = sin_m * cos1 + cos_m * sin1;
                    cos_m = c_next;
                    sin_m = s_next;
                }
                fourier[(m + k as i32) as usize][node] += fv * angular_eval(m, theta) * dtheta;
                if m > 0 {
                    fourier[(-m + k as i32) as usize][node] += fv * angular_eval(-m, theta) * dtheta;
                }
            }
        }
    }

    let mut out = DiskCoeffs::zeros(basis.b, k);
    for m in -(k as i32)..=k as i32 {
        let ma = m.unsigned_abs() as usize;
        let fm = &fourier[(m + k as i32) as usize];
        let blk = out.block_mut(m);
        for (node, (&w, &r)) in t_rule.weights.iter().zip(&radii).enumerate() {
            let radial = radial_block(basis.b, ma, k, r);
            for (q, &rv) in radial.iter().enumerate() {
                blk[q] += scale * w * fm[node] * rv;
            }
        }
    }
    out
}

/// Radial part of the polar Laplacian applied to W^{(1)}_{q,m}:
/// w'' + w'/r - m² w/r² with w(r) = (1-r²) · radial_{q,m}(r), evaluated
/// through differentiated Jacobi recurrences (no numerical differentiation).
fn laplacian_of_weighted_radial(m: usize, q: usize, r: f64) -> f64 {
    let b = 1.0;
    let basis = Jacobi { a: b, b: m as f64 };
    let t = 2.0 * r * r - 1.0;
    let norm = radial_norm_ln(b, m, q).exp();
    let p = crate::orthopoly1d::jacobi_eval(basis, q, t);
    // dP/dt and d²P/dt² via the parameter-raising identity
    let dp = if q >= 1 {
        (q as f64 + basis.a + basis.b + 1.0) / 2.0
            * crate::orthopoly1d::jacobi_eval(Jacobi { a: b + 1.0, b: m as f64 + 1.0 }, q - 1, t)
    } else {
        0.0
    };
    let ddp = if q >= 2 {
        (q as f64 + basis.a + basis.b + 1.0) * (q as f64 + basis.a + basis.b + 2.0) / 4.0
            * crate::orthopoly1d::jacobi_eval(Jacobi { a: b + 2.0, b: m as f64 + 2.0 }, q - 2, t)
    } else {
        0.0
    };
    let mf = m as f64;
    // u = r^m P(t), t = 2r²-1
    let rm = r.powi(m as i32);
    let u = rm * p;
    let u_r = mf * safe_pow(r, m as i32 - 1) * p + 4.0 * rm * r * dp;
    let u_rr = mf * (mf - 1.0) * safe_pow(r, m as i32 - 2) * p
        + 4.0 * (2.0 * mf + 1.0) * rm * dp
        + 16.0 * rm * r * r * ddp;
    let v = 1.0 - r * r;
    let v_r = -2.0 * r;
    let v_rr = -2.0;
    let w = v * u;
    let w_r = v_r * u + v * u_r;
    let w_rr = v_rr * u + 2.0 * v_r * u_r + v * u_rr;
    let angular_term = if m == 0 { 0.0 } else { mf * mf * w / (r * r) };
    norm * 0.0f64.mul_add(0.0, w_rr + w_r / r - angular_term)
}

// r^p with the convention 0·r^{-|p|} terms already excluded by callers
fn safe_pow(r: f64, p: i32) -> f64 {
    if p < 0 {
        if r == 0.0 {
            0.0
        } else {
            r.powi(p)
        }
    } else {
        r.powi(p)
    }
}

/// Full projection matrix ⟨Δ W^{(1)}_{q,m}, Z^{(1)}_{q',m}⟩_w for one mode;
/// diagonal up to quadrature rounding.
pub fn laplacian_radial_matrix(degree: usize, m_abs: usize) -> Vec<Vec<f64>> {
    let qmax = radial_len(degree, m_abs as i32);
    let rule = gauss_jacobi(degree + 8, 1.0, 0.0).expect("rule");
    let radii: Vec<f64> = rule.nodes.iter().map(|&t| ((1.0 + t) / 2.0).sqrt()).collect();
    let mut mat = vec![vec![0.0f64; qmax]; qmax];
    for (node, (&w, &r)) in rule.weights.iter().zip(&radii).enumerate() {
        let _ = node;
        let radial = radial_block(1.0, m_abs, degree, r);
        for q in 0..qmax {
            let lap = laplacian_of_weighted_radial(m_abs, q, r);
            for (qp, row) in mat.iter_mut().enumerate() {
                row[q] += 0.125 * w * lap * radial[qp];
            }
        }
    }
    mat
}

/// Per-mode diagonal Laplacian W^{(1)} → Z^{(1)}: entry q of mode |m| is
/// ⟨Δ W_{q,m}, Z_{q,m}⟩_w. Indexed by |m| = 0..=degree.
pub fn disk_laplacian_op(degree: usize) -> Vec<Vec<f64>> {
    (0..=degree)
        .map(|m_abs| {
            laplacian_radial_matrix(degree, m_abs)
                .iter()
                .enumerate()
                .map(|(q, row)| row[q])
                .collect()
        })
        .collect()
}

/// Full projection matrix ⟨W^{(1)}_{q,m}, Z^{(1)}_{q',m}⟩_w for one mode;
/// tridiagonal in exact arithmetic (multiplication by (1-r²)).
pub fn conversion_radial_matrix(degree: usize, m_abs: usize) -> Vec<Vec<f64>> {
    let qmax = radial_len(degree, m_abs as i32);
    let rule = gauss_jacobi(degree + 8, 2.0, 0.0).expect("rule");
    let radii: Vec<f64> = rule.nodes.iter().map(|&t| ((1.0 + t) / 2.0).sqrt()).collect();
    let mut mat = vec![vec![0.0f64; qmax]; qmax];
    for (&w, &r) in rule.weights.iter().zip(&radii) {
        let radial = radial_block(1.0, m_abs, degree, r);
        for (qp, row) in mat.iter_mut().enumerate() {
            for (q, val) in row.iter_mut().enumerate() {
                *val += w / 16.0 * radial[q] * radial[qp];
            }
        }
    }
    mat
}

/// Per-mode banded conversion W^{(1)} → Z^{(1)} with radial bandwidth <= 2,
/// indexed by |m| = 0..=degree.
pub fn disk_conversion_op(degree: usize) -> Vec<BandedOp> {
    (0..=degree)
        .map(|m_abs| {
            let mat = conversion_radial_matrix(degree, m_abs);
            let q = mat.len();
            let mut op = BandedOp::new(q, q, 2, 2);
            for (i, row) in mat.iter().enumerate() {
                for (j, &v) in row.iter().enumerate() {
                    if i.abs_diff(j) <= 2 {
                        op.set(i, j, v);
                    }
                }
            }
            op
        })
        .collect()
}
