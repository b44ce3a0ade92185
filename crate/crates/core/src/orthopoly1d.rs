//! Jacobi-polynomial machinery on [-1,1]: evaluation, banded derivative and
//! conversion operators, analysis (function to coefficients), synthesis and
//! point-evaluation rows.
//!
//! The convention is the classical unnormalized Jacobi polynomials with
//! P_n^{(a,b)}(1) = C(n+a, n), so the derivative acts as the banded shift
//!
//!   d/dx P_n^{(a,b)} = (n+a+b+1)/2 · P_{n-1}^{(a+1,b+1)},
//!
//! and raising a single parameter by one is a two-band conversion.

use crate::banded::BandedOp;
use crate::quadrature::gauss_jacobi;
use crate::specialfns::lgamma;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum BasisError {
    #[error("Jacobi exponent {0} must be > -1")]
    BadExponent(f64),
    #[error("unsupported conversion step ({0}, {1}): each parameter may increase by 0 or 1")]
    UnsupportedStep(f64, f64),
}

/// Jacobi basis P^{(a,b)} on [-1,1], weight (1-x)^a (1+x)^b.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jacobi {
    pub a: f64,
    pub b: f64,
}

impl Jacobi {
    pub const LEGENDRE: Jacobi = Jacobi { a: 0.0, b: 0.0 };

    pub fn new(a: f64, b: f64) -> Result<Self, BasisError> {
        if !(a > -1.0) {
            return Err(BasisError::BadExponent(a));
        }
        if !(b > -1.0) {
            return Err(BasisError::BadExponent(b));
        }
        Ok(Self { a, b })
    }

    /// Both parameters raised by one: the target basis of the derivative.
    pub fn raised(self) -> Jacobi {
        Jacobi { a: self.a + 1.0, b: self.b + 1.0 }
    }
}

/// Truncated expansion f(x) ≈ Σ_{n<K} coeffs[n] P_n(x) in a tagged basis.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffVec {
    pub basis: Jacobi,
    pub coeffs: Vec<f64>,
}

impl CoeffVec {
    pub fn new(basis: Jacobi, coeffs: Vec<f64>) -> Self {
        Self { basis, coeffs }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Pointwise synthesis at x; same recurrence as [`eval_row`], accumulated
    /// in degree order so the two agree exactly.
    pub fn eval(&self, x: f64) -> f64 {
        synth(self, x)
    }
}

/// Value of P_n^{(a,b)}(x) via the forward three-term recurrence.
pub fn jacobi_eval(basis: Jacobi, n: usize, x: f64) -> f64 {
    let (a, b) = (basis.a, basis.b);
    let mut prev = 1.0; // P_0
    if n == 0 {
        return prev;
    }
    let mut cur = 0.5 * (a + b + 2.0) * x + 0.5 * (a - b);
    for m in 2..=n {
        let (c_x, c_0, c_prev, denom) = recurrence_terms(a, b, m);
        let next = ((c_x * x + c_0) * cur - c_prev * prev) / denom;
        prev = cur;
        cur = next;
    }
    cur
}

// Coefficients of the degree-m step:
// denom·P_m = (c_x·x + c_0)·P_{m-1} - c_prev·P_{m-2}
fn recurrence_terms(a: f64, b: f64, m: usize) -> (f64, f64, f64, f64) {
    let mf = m as f64;
    let t = 2.0 * mf + a + b;
    let c_x = (t - 1.0) * t * (t - 2.0);
    let c_0 = (t - 1.0) * (a * a - b * b);
    let c_prev = 2.0 * (mf + a - 1.0) * (mf + b - 1.0) * t;
    let denom = 2.0 * mf * (mf + a + b) * (t - 2.0);
    (c_x, c_0, c_prev, denom)
}

/// Row of basis values [P_0(x), ..., P_{K-1}(x)]: dotting it with a
/// coefficient vector is point evaluation.
pub fn eval_row(basis: Jacobi, x: f64, k: usize) -> Vec<f64> {
    let mut row = Vec::with_capacity(k);
    let mut push = |v: f64| row.push(v);
    eval_scan(basis, x, k, &mut push);
    row
}

/// Truncated synthesis Σ coeffs[n] P_n(x).
pub fn synth(c: &CoeffVec, x: f64) -> f64 {
    let mut acc = 0.0;
    let mut n = 0usize;
    let coeffs = &c.coeffs;
    let mut take = |v: f64| {
        acc += coeffs[n] * v;
        n += 1;
    };
    eval_scan(c.basis, x, coeffs.len(), &mut take);
    acc
}

fn eval_scan(basis: Jacobi, x: f64, k: usize, sink: &mut impl FnMut(f64)) {
    if k == 0 {
        return;
    }
    let (a, b) = (basis.a, basis.b);
    let mut prev = 1.0;
    sink(prev);
    if k == 1 {
        return;
    }
    let mut cur = 0.5 * (a + b + 2.0) * x + 0.5 * (a - b);
    sink(cur);
    for m in 2..k {
        let (c_x, c_0, c_prev, denom) = recurrence_terms(a, b, m);
        let next = ((c_x * x + c_0) * cur - c_prev * prev) / denom;
        prev = cur;
        cur = next;
        sink(cur);
    }
}

/// Banded derivative: maps K coefficients in P^{(a,b)} to K coefficients in
/// P^{(a+1,b+1)}; single superdiagonal with entry (n-1, n) = (n+a+b+1)/2.
pub fn diff_op(a: f64, b: f64, k: usize) -> BandedOp {
    let mut op = BandedOp::new(k, k, 0, 1);
    for n in 1..k {
        op.set(n - 1, n, (n as f64 + a + b + 1.0) / 2.0);
    }
    op
}

/// Banded conversion between Jacobi bases whose parameters each increase by
/// zero or one; the composed (0,0) → (1,1) map has upper bandwidth 2.
pub fn conversion_op(from: Jacobi, to: Jacobi, k: usize) -> Result<BandedOp, BasisError> {
    let da = to.a - from.a;
    let db = to.b - from.b;
    let is_step = |d: f64| d == 0.0 || d == 1.0;
    if !is_step(da) || !is_step(db) {
        return Err(BasisError::UnsupportedStep(da, db));
    }
    let mut op = BandedOp::identity(k);
    if da == 1.0 {
        op = BandedOp::mul(&raise_a(from.a, from.b, k), &op);
    }
    if db == 1.0 {
        let a_now = from.a + da;
        op = BandedOp::mul(&raise_b(a_now, from.b, k), &op);
    }
    Ok(op)
}

// (2n+a+b+1) P_n^{(a,b)} = (n+a+b+1) P_n^{(a+1,b)} - (n+b) P_{n-1}^{(a+1,b)}
fn raise_a(a: f64, b: f64, k: usize) -> BandedOp {
    let mut op = BandedOp::new(k, k, 0, 1);
    for n in 0..k {
        let nf = n as f64;
        let t = 2.0 * nf + a + b + 1.0;
        op.set(n, n, (nf + a + b + 1.0) / t);
        if n > 0 {
            op.set(n - 1, n, -(nf + b) / t);
        }
    }
    op
}

// (2n+a+b+1) P_n^{(a,b)} = (n+a+b+1) P_n^{(a,b+1)} + (n+a) P_{n-1}^{(a,b+1)}
fn raise_b(a: f64, b: f64, k: usize) -> BandedOp {
    let mut op = BandedOp::new(k, k, 0, 1);
    for n in 0..k {
        let nf = n as f64;
        let t = 2.0 * nf + a + b + 1.0;
        op.set(n, n, (nf + a + b + 1.0) / t);
        if n > 0 {
            op.set(n - 1, n, (nf + a) / t);
        }
    }
    op
}

/// Squared L²_w norm ⟨P_n, P_n⟩ of the classical Jacobi polynomial.
pub fn norm_sq(basis: Jacobi, n: usize) -> f64 {
    norm_sq_ln(basis, n).exp()
}

/// log ⟨P_n, P_n⟩, usable at parameter sizes where the norm itself would
/// overflow.
pub fn norm_sq_ln(basis: Jacobi, n: usize) -> f64 {
    let (a, b) = (basis.a, basis.b);
    let nf = n as f64;
    (a + b + 1.0) * 2.0f64.ln() + lgamma(nf + a + 1.0).unwrap() + lgamma(nf + b + 1.0).unwrap()
        - lgamma(nf + a + b + 1.0).unwrap()
        - lgamma(nf + 1.0).unwrap()
        - (2.0 * nf + a + b + 1.0).ln()
}

/// Expand f on [-1,1] in the given basis by oversampled Gauss-Jacobi
/// quadrature: c_n = ⟨f, P_n⟩_w / ⟨P_n, P_n⟩_w with a (K+8)-point rule.
pub fn analyze(f: impl Fn(f64) -> f64, basis: Jacobi, k: usize) -> CoeffVec {
    let rule = gauss_jacobi(k + 8, basis.a, basis.b).expect("valid basis exponents");
    let samples: Vec<f64> = rule.nodes.iter().map(|&x| f(x)).collect();
    let mut coeffs = vec![0.0; k];
    // rolling recurrence over all nodes at once
    let mut prev: Vec<f64> = vec![1.0; rule.len()];
    let mut cur: Vec<f64> = rule
        .nodes
        .iter()
        .map(|&x| 0.5 * (basis.a + basis.b + 2.0) * x + 0.5 * (basis.a - basis.b))
        .collect();
    for (n, c) in coeffs.iter_mut().enumerate() {
        if n >= 2 {
            let (c_x, c_0, c_prev, denom) = recurrence_terms(basis.a, basis.b, n);
            for (j, &x) in rule.nodes.iter().enumerate() {
                let next = ((c_x * x + c_0) * cur[j] - c_prev * prev[j]) / denom;
                prev[j] = cur[j];
                cur[j] = next;
            }
        }
        let vals: &[f64] = match n {
            0 => &prev,
            _ => &cur,
        };
        // compensated accumulation: the high-degree inner products cancel to
        // near the rounding floor and are then divided by a small norm
        let mut sum = 0.0f64;
        let mut comp = 0.0f64;
        for ((&w, &fx), &p) in rule.weights.iter().zip(&samples).zip(vals) {
            let term = w * fx * p;
            let t = sum + term;
            comp += if sum.abs() >= term.abs() {
                (sum - t) + term
            } else {
                (term - t) + sum
            };
            sum = t;
        }
        *c = (sum + comp) / norm_sq(basis, n);
    }
    CoeffVec::new(basis, coeffs)
}
