//! Gauss-Laguerre and Gauss-Jacobi rules and the nonclassical
//! sum-of-exponentials parameters (A_j, s_j) for the Caputo kernel.
//!
//! Nodes are computed by Newton iteration on the three-term recurrence of
//! the orthonormal polynomials, weights through the Christoffel identity
//! λ_j = 1/Σ_k p̃_k(x_j)². A symmetric-tridiagonal (Golub-Welsch) eigenvalue
//! oracle cross-checks the nodes in the test suite.

use crate::specialfns::lgamma;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum QuadError {
    #[error("quadrature rule needs at least one point")]
    ZeroPoints,
    #[error("Jacobi weight exponent {0} must be > -1")]
    BadJacobiExponent(f64),
    #[error("fractional order alpha={0} must lie in (0,1) and be non-integer")]
    BadAlpha(f64),
    #[error("Newton iteration failed to produce strictly increasing nodes (L={l}, family={family})")]
    NodeComputationFailed { l: usize, family: String },
}

/// Weight function family of a Gauss rule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WeightFamily {
    /// e^{-x} on (0, ∞)
    Laguerre,
    /// (1-x)^a (1+x)^b on (-1, 1)
    Jacobi { a: f64, b: f64 },
}

/// Nodes and weights of an L-point Gauss rule.
///
/// Weights are unnormalized: they sum to the mass of the weight function,
/// not to one.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub family: WeightFamily,
}

impl GaussRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Σ_j λ_j f(p_j)
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

/// Quadrature flavor selecting the Table-1 parameter row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QuadMethod {
    YuanAgrawal,
    Diethelm,
    BirkSong,
}

/// Sum-of-exponentials approximation of the Caputo kernel:
/// D^α f(t) ≈ Σ_j a[j] ∫_0^t e^{-s[j]²(t-τ)} f'(τ) dτ.
#[derive(Debug, Clone, PartialEq)]
pub struct CaputoRule {
    pub method: QuadMethod,
    pub alpha: f64,
    /// ᾱ = 2α - 2⌈α⌉ + 1 ∈ (-1, 1)
    pub alpha_bar: f64,
    /// exponential amplitudes A_j
    pub a: Vec<f64>,
    /// exponential rates s_j (the kernel decays like e^{-s_j² t})
    pub s: Vec<f64>,
}

impl CaputoRule {
    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }
}

/// Orthonormal three-term recurrence
/// x p̃_k = sqrt_beta[k+1] p̃_{k+1} + diag[k] p̃_k + sqrt_beta[k] p̃_{k-1},
/// with sqrt_beta[0] = 0 and enough coefficients to evaluate degree `l`.
struct Recurrence {
    diag: Vec<f64>,      // len l
    sqrt_beta: Vec<f64>, // len l + 1
    mu0: f64,
    /// common rescale factor (1 for Jacobi, e^{-x/2} for Laguerre)
    prescale: fn(f64) -> f64,
}

fn recurrence_jacobi(l: usize, a: f64, b: f64) -> Recurrence {
    let mut diag = Vec::with_capacity(l);
    let mut sqrt_beta = Vec::with_capacity(l + 1);
    sqrt_beta.push(0.0);
    for k in 0..l {
        let kf = k as f64;
        let d = if k == 0 {
            (b - a) / (a + b + 2.0)
        } else {
            let t = 2.0 * kf + a + b;
            (b * b - a * a) / (t * (t + 2.0))
        };
        diag.push(d);
    }
    for k in 1..=l {
        let kf = k as f64;
        let beta = if k == 1 {
            4.0 * (1.0 + a) * (1.0 + b) / ((a + b + 2.0).powi(2) * (a + b + 3.0))
        } else {
            let t = 2.0 * kf + a + b;
            4.0 * kf * (kf + a) * (kf + b) * (kf + a + b) / (t * t * (t + 1.0) * (t - 1.0))
        };
        sqrt_beta.push(beta.sqrt());
    }
    let mu0 = (((a + b + 1.0) * 2.0f64.ln()) + lgamma(a + 1.0).unwrap()
        + lgamma(b + 1.0).unwrap()
        - lgamma(a + b + 2.0).unwrap())
    .exp();
    Recurrence {
        diag,
        sqrt_beta,
        mu0,
        prescale: |_| 1.0,
    }
}

fn recurrence_laguerre(l: usize) -> Recurrence {
    Recurrence {
        diag: (0..l).map(|k| 2.0 * k as f64 + 1.0).collect(),
        sqrt_beta: (0..=l).map(|k| k as f64).collect(),
        mu0: 1.0,
        prescale: |x| (-x / 2.0).exp(),
    }
}

/// Jacobi-matrix coefficients of the orthonormal polynomials for the weight
/// (1-x)^a (1+x)^b: returns (diagonal[0..l], off_diagonal[0..l], μ₀) where
/// off_diagonal[k] = √β_k couples degrees k-1 and k (entry 0 is unused).
pub fn jacobi_recurrence(l: usize, a: f64, b: f64) -> (Vec<f64>, Vec<f64>, f64) {
    let r = recurrence_jacobi(l, a, b);
    (r.diag, r.sqrt_beta[..l].to_vec(), r.mu0)
}

/// Jacobi-matrix coefficients for the Laguerre weight e^{-x}; same layout
/// as [`jacobi_recurrence`], μ₀ = 1.
pub fn laguerre_recurrence(l: usize) -> (Vec<f64>, Vec<f64>, f64) {
    let r = recurrence_laguerre(l);
    (r.diag, r.sqrt_beta[..l].to_vec(), r.mu0)
}

impl Recurrence {
    /// p̃_l(x), p̃_l'(x) and Σ_{k<l} p̃_k(x)², all carrying the common
    /// prescale factor. Roots and Newton ratios are unaffected by the
    /// prescale, which lets the Laguerre path dodge overflow.
    fn eval(&self, x: f64) -> (f64, f64, f64) {
        let l = self.diag.len();
        let mut p_prev = 0.0f64;
        let mut dp_prev = 0.0f64;
        let mut p = (self.prescale)(x) / self.mu0.sqrt();
        let mut dp = 0.0f64;
        let mut sumsq = 0.0f64;
        for k in 0..l {
            sumsq += p * p;
            let sb = self.sqrt_beta[k];
            let sb_next = self.sqrt_beta[k + 1];
            let p_next = ((x - self.diag[k]) * p - sb * p_prev) / sb_next;
            let dp_next = ((x - self.diag[k]) * dp + p - sb * dp_prev) / sb_next;
            p_prev = p;
            dp_prev = dp;
            p = p_next;
            dp = dp_next;
        }
        (p, dp, sumsq)
    }

    /// Newton iteration from `seed`, constrained to (lo, hi).
    fn polish(&self, seed: f64, lo: f64, hi: f64) -> Option<f64> {
        let mut x = seed;
        for _ in 0..120 {
            let (p, dp, _) = self.eval(x);
            if dp == 0.0 {
                return None;
            }
            let step = p / dp;
            let mut x_new = x - step;
            if x_new <= lo || x_new >= hi {
                x_new = if step > 0.0 { (x + lo) / 2.0 } else { (x + hi) / 2.0 };
            }
            if (x_new - x).abs() <= 1e-15 * (1.0 + x.abs()) {
                return Some(x_new);
            }
            x = x_new;
        }
        Some(x)
    }

    /// Christoffel weight λ = 1/Σ_{k<l} p̃_k(x)², undoing the prescale.
    fn weight_at(&self, x: f64) -> f64 {
        let scale = (self.prescale)(x);
        let (_, _, sumsq) = self.eval(x);
        scale * scale / sumsq
    }
}

/// L-point Gauss-Laguerre rule for ∫_0^∞ e^{-x} q(x) dx.
pub fn gauss_laguerre(l: usize) -> Result<GaussRule, QuadError> {
    let (nodes, _, weights) = laguerre_internal(l)?;
    Ok(GaussRule {
        nodes,
        weights,
        family: WeightFamily::Laguerre,
    })
}

/// Nodes, the overflow-free products e^{p_j} λ_j, and the plain weights λ_j.
fn laguerre_internal(l: usize) -> Result<(Vec<f64>, Vec<f64>, Vec<f64>), QuadError> {
    if l == 0 {
        return Err(QuadError::ZeroPoints);
    }
    let rec = recurrence_laguerre(l);
    let n = l as f64;
    let mut nodes = Vec::with_capacity(l);
    let mut z = 0.0f64;
    for i in 0..l {
        // Stroud-Secrest style seeds for the ascending roots (weight e^{-x})
        z = match i {
            0 => 3.0 / (1.0 + 2.4 * n),
            1 => z + 15.0 / (1.0 + 2.5 * n),
            _ => {
                let ai = i as f64 - 1.0;
                z + ((1.0 + 2.55 * ai) / (1.9 * ai)) * (z - nodes[i - 2])
            }
        };
        let lo = nodes.last().copied().unwrap_or(0.0);
        let root = rec
            .polish(z, lo, f64::INFINITY)
            .ok_or_else(|| QuadError::NodeComputationFailed {
                l,
                family: "Laguerre".into(),
            })?;
        nodes.push(root);
        z = root;
    }
    validate_increasing(&nodes, l, "Laguerre")?;
    // λ_j = e^{-x_j} / Σ p̂_k², and e^{p_j} λ_j = 1 / Σ p̂_k² with p̂ = e^{-x/2} p̃
    let mut weights = Vec::with_capacity(l);
    let mut exp_weights = Vec::with_capacity(l);
    for &x in &nodes {
        let (_, _, sumsq) = rec.eval(x);
        exp_weights.push(1.0 / sumsq);
        weights.push((-x).exp() / sumsq);
    }
    Ok((nodes, exp_weights, weights))
}

/// L-point Gauss-Jacobi rule for ∫_{-1}^1 (1-x)^a (1+x)^b q(x) dx.
pub fn gauss_jacobi(l: usize, a: f64, b: f64) -> Result<GaussRule, QuadError> {
    if l == 0 {
        return Err(QuadError::ZeroPoints);
    }
    if !(a > -1.0) {
        return Err(QuadError::BadJacobiExponent(a));
    }
    if !(b > -1.0) {
        return Err(QuadError::BadJacobiExponent(b));
    }
    let (nodes, weights) = if a == b {
        jacobi_symmetric(l, a)?
    } else {
        jacobi_general(l, a, b)?
    };
    Ok(GaussRule {
        nodes,
        weights,
        family: WeightFamily::Jacobi { a, b },
    })
}

/// Descending-root Newton pass shared by the general and symmetric paths.
fn jacobi_descending_roots(l: usize, a: f64, b: f64) -> Result<Vec<f64>, QuadError> {
    let rec = recurrence_jacobi(l, a, b);
    let n = l as f64;
    let mut roots: Vec<f64> = Vec::with_capacity(l);
    let mut z = 0.0f64;
    for i in 0..l {
        z = match i {
            0 => {
                let an = a / n;
                let bn = b / n;
                let r1 = (1.0 + a) * (2.78 / (4.0 + n * n) + 0.768 * an / n);
                let r2 = 1.0 + 1.48 * an + 0.96 * bn + 0.452 * an * an + 0.83 * an * bn;
                1.0 - r1 / r2
            }
            1 => {
                let r1 = (4.1 + a) / ((1.0 + a) * (1.0 + 0.156 * a));
                let r2 = 1.0 + 0.06 * (n - 8.0) * (1.0 + 0.12 * a) / n;
                let r3 = 1.0 + 0.012 * b * (1.0 + 0.25 * a.abs()) / n;
                z - (1.0 - z) * r1 * r2 * r3
            }
            2 => {
                let r1 = (1.67 + 0.28 * a) / (1.0 + 0.37 * a);
                let r2 = 1.0 + 0.22 * (n - 8.0) / n;
                let r3 = 1.0 + 8.0 * a / ((6.28 + a) * n * n);
                z - (roots[0] - z) * r1 * r2 * r3
            }
            _ if i == l - 2 && l > 4 => {
                let r1 = (1.0 + 0.235 * b) / (0.766 + 0.119 * b);
                let r2 = 1.0 / (1.0 + 0.639 * (n - 4.0) / (1.0 + 0.71 * (n - 4.0)));
                let r3 = 1.0 / (1.0 + 20.0 * a / ((7.5 + a) * n * n));
                z + (z - roots[i - 2]) * r1 * r2 * r3
            }
            _ if i == l - 1 && l > 4 => {
                let r1 = (1.0 + 0.37 * b) / (1.67 + 0.28 * b);
                let r2 = 1.0 / (1.0 + 0.22 * (n - 8.0) / n);
                let r3 = 1.0 / (1.0 + 8.0 * a / ((6.28 + a) * n * n));
                z + (z - roots[i - 2]) * r1 * r2 * r3
            }
            _ => 3.0 * roots[i - 1] - 3.0 * roots[i - 2] + roots[i - 3],
        };
        let hi = roots.last().copied().unwrap_or(1.0);
        let root =
            rec.polish(z.clamp(-0.999_999, hi), -1.0, hi)
                .ok_or_else(|| QuadError::NodeComputationFailed {
                    l,
                    family: format!("Jacobi({a},{b})"),
                })?;
        roots.push(root);
        z = root;
    }
    Ok(roots)
}

fn jacobi_general(l: usize, a: f64, b: f64) -> Result<(Vec<f64>, Vec<f64>), QuadError> {
    let mut nodes = jacobi_descending_roots(l, a, b)?;
    nodes.reverse();
    validate_increasing(&nodes, l, "Jacobi")?;
    let rec = recurrence_jacobi(l, a, b);
    let weights = nodes.iter().map(|&x| rec.weight_at(x)).collect();
    Ok((nodes, weights))
}

/// For a = b the rule is symmetric about 0; compute one half and mirror it
/// so node symmetry is exact and mirrored weights are identical.
fn jacobi_symmetric(l: usize, a: f64) -> Result<(Vec<f64>, Vec<f64>), QuadError> {
    let (raw, _) = jacobi_general(l, a, a)?;
    let rec = recurrence_jacobi(l, a, a);
    let half = l / 2;
    let mut nodes = vec![0.0; l];
    let mut weights = vec![0.0; l];
    for i in 0..half {
        let x = 0.5 * (raw[l - 1 - i] - raw[i]);
        let w = rec.weight_at(x);
        nodes[l - 1 - i] = x;
        nodes[i] = -x;
        weights[l - 1 - i] = w;
        weights[i] = w;
    }
    if l % 2 == 1 {
        nodes[half] = 0.0;
        weights[half] = rec.weight_at(0.0);
    }
    Ok((nodes, weights))
}

fn validate_increasing(nodes: &[f64], l: usize, family: &str) -> Result<(), QuadError> {
    if nodes.windows(2).all(|p| p[0] < p[1]) {
        Ok(())
    } else {
        Err(QuadError::NodeComputationFailed {
            l,
            family: family.into(),
        })
    }
}

/// ᾱ = 2α - 2⌈α⌉ + 1
pub fn alpha_bar(alpha: f64) -> f64 {
    2.0 * alpha - 2.0 * alpha.ceil() + 1.0
}

/// Assemble the sum-of-exponentials rule for the Caputo derivative of order
/// α ∈ (0,1) with L quadrature points, following the selected method's
/// parameter row.
pub fn build_rule(method: QuadMethod, alpha: f64, l: usize) -> Result<CaputoRule, QuadError> {
    if !(alpha > 0.0 && alpha < 1.0) || alpha.fract() == 0.0 {
        return Err(QuadError::BadAlpha(alpha));
    }
    if l == 0 {
        return Err(QuadError::ZeroPoints);
    }
    let ab = alpha_bar(alpha);
    let sign = if (alpha.floor() as i64) % 2 == 0 { 1.0 } else { -1.0 };
    let sin_factor = sign * (std::f64::consts::PI * alpha).sin() / std::f64::consts::PI;
    let (a_coeffs, s_rates) = match method {
        QuadMethod::YuanAgrawal => {
            let (nodes, exp_weights, _) = laguerre_internal(l)?;
            let a: Vec<f64> = nodes
                .iter()
                .zip(&exp_weights)
                .map(|(&p, &ew)| 2.0 * sin_factor * ew * p.powf(ab))
                .collect();
            (a, nodes)
        }
        QuadMethod::Diethelm => {
            let rule = gauss_jacobi(l, ab, -ab)?;
            let a = rule
                .nodes
                .iter()
                .zip(&rule.weights)
                .map(|(&p, &w)| sin_factor * 4.0 * w / (1.0 + p).powi(2))
                .collect();
            let s = rule.nodes.iter().map(|&p| (1.0 - p) / (1.0 + p)).collect();
            (a, s)
        }
        QuadMethod::BirkSong => {
            let rule = gauss_jacobi(l, 2.0 * ab + 1.0, 1.0 - 2.0 * ab)?;
            let a = rule
                .nodes
                .iter()
                .zip(&rule.weights)
                .map(|(&p, &w)| sin_factor * 8.0 * w / (1.0 + p).powi(4))
                .collect();
            let s = rule
                .nodes
                .iter()
                .map(|&p| (1.0 - p).powi(2) / (1.0 + p).powi(2))
                .collect();
            (a, s)
        }
    };
    Ok(CaputoRule {
        method,
        alpha,
        alpha_bar: ab,
        a: a_coeffs,
        s: s_rates,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factorial(k: usize) -> f64 {
        (1..=k).map(|i| i as f64).product()
    }

    /// Closed-form shifted Jacobi moment ∫ (1-x)^a (1+x)^{b+m} dx
    /// = 2^{a+b+m+1} B(a+1, b+m+1).
    fn jacobi_shifted_moment(a: f64, b: f64, m: usize) -> f64 {
        let m = m as f64;
        (((a + b + m + 1.0) * 2.0f64.ln()) + lgamma(a + 1.0).unwrap()
            + lgamma(b + m + 1.0).unwrap()
            - lgamma(a + b + m + 2.0).unwrap())
        .exp()
    }

    #[test]
    fn laguerre_one_point() {
        let r = gauss_laguerre(1).unwrap();
        assert!((r.nodes[0] - 1.0).abs() < 1e-14);
        assert!((r.weights[0] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn laguerre_two_points() {
        // roots of x^2 - 4x + 2
        let r = gauss_laguerre(2).unwrap();
        let s2 = 2.0f64.sqrt();
        assert!((r.nodes[0] - (2.0 - s2)).abs() < 1e-13);
        assert!((r.nodes[1] - (2.0 + s2)).abs() < 1e-13);
    }

    #[test]
    fn laguerre_moments_l30() {
        let r = gauss_laguerre(30).unwrap();
        for k in 0..60 {
            let got = r.integrate(|x| x.powi(k as i32));
            let want = factorial(k);
            assert!(
                (got - want).abs() <= 1e-10 * want,
                "k = {k}: got {got}, want {want}"
            );
        }
    }

    #[test]
    fn laguerre_rejects_zero() {
        assert_eq!(gauss_laguerre(0), Err(QuadError::ZeroPoints));
    }

    #[test]
    fn legendre_one_and_two_points() {
        let r = gauss_jacobi(1, 0.0, 0.0).unwrap();
        assert!(r.nodes[0].abs() < 1e-15);
        assert!((r.weights[0] - 2.0).abs() < 1e-14);

        let r = gauss_jacobi(2, 0.0, 0.0).unwrap();
        let x = 1.0 / 3.0f64.sqrt();
        assert!((r.nodes[0] + x).abs() < 1e-14);
        assert!((r.nodes[1] - x).abs() < 1e-14);
        assert!((r.weights[0] - 1.0).abs() < 1e-14);
        assert!((r.weights[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn jacobi_one_point_diethelm_weight() {
        // first recurrence coefficient (b-a)/(a+b+2) and the weight mass
        let ab = 0.3;
        let r = gauss_jacobi(1, ab, -ab).unwrap();
        assert!((r.nodes[0] - (-ab)).abs() < 1e-14);
        let want = 2.0 * (lgamma(1.0 + ab).unwrap() + lgamma(1.0 - ab).unwrap()).exp();
        assert!((r.weights[0] - want).abs() < 1e-13 * want);
    }

    #[test]
    fn jacobi_rejects_bad_exponents() {
        assert!(gauss_jacobi(3, -1.0, 0.0).is_err());
        assert!(gauss_jacobi(3, 0.0, -1.5).is_err());
        assert_eq!(gauss_jacobi(0, 0.0, 0.0), Err(QuadError::ZeroPoints));
    }

    #[test]
    fn jacobi_moments_all_table_weights() {
        // Moment exactness in the shifted basis (1+x)^k, which spans the
        // same polynomial space degree by degree.
        for &alpha in &[0.1, 0.25, 0.5, 0.6, 0.9] {
            let ab = alpha_bar(alpha);
            for &(a, b) in &[(ab, -ab), (2.0 * ab + 1.0, 1.0 - 2.0 * ab)] {
                for &l in &[1usize, 5, 15, 30] {
                    let r = gauss_jacobi(l, a, b).unwrap();
                    for k in 0..2 * l {
                        let got = r.integrate(|x| (1.0 + x).powi(k as i32));
                        let want = jacobi_shifted_moment(a, b, k);
                        assert!(
                            (got - want).abs() <= 1e-10 * want.abs(),
                            "alpha={alpha} a={a} b={b} L={l} k={k}: got {got} want {want}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn jacobi_symmetry_exact() {
        for &l in &[4usize, 9, 24] {
            let r = gauss_jacobi(l, 1.0, 1.0).unwrap();
            for i in 0..l {
                assert_eq!(r.nodes[i], -r.nodes[l - 1 - i], "node mirror L={l}");
                assert!(
                    (r.weights[i] - r.weights[l - 1 - i]).abs() <= 1e-14,
                    "weight mirror L={l}"
                );
            }
        }
    }

    #[test]
    fn node_interlacing() {
        for l in 1..=29usize {
            let small = gauss_laguerre(l).unwrap();
            let big = gauss_laguerre(l + 1).unwrap();
            for i in 0..l {
                assert!(big.nodes[i] < small.nodes[i] && small.nodes[i] < big.nodes[i + 1]);
            }
            let small = gauss_jacobi(l, 0.8, -0.8).unwrap();
            let big = gauss_jacobi(l + 1, 0.8, -0.8).unwrap();
            for i in 0..l {
                assert!(big.nodes[i] < small.nodes[i] && small.nodes[i] < big.nodes[i + 1]);
            }
        }
    }

    #[test]
    fn build_rule_diethelm_l1_half() {
        let r = build_rule(QuadMethod::Diethelm, 0.5, 1).unwrap();
        assert_eq!(r.alpha_bar, 0.0);
        assert!((r.a[0] - 8.0 / std::f64::consts::PI).abs() < 1e-14);
        assert!((r.s[0] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn alpha_bar_at_half() {
        assert_eq!(alpha_bar(0.5), 0.0);
    }

    #[test]
    fn build_rule_rejects_bad_alpha() {
        assert!(build_rule(QuadMethod::BirkSong, 1.0, 5).is_err());
        assert!(build_rule(QuadMethod::BirkSong, 0.0, 5).is_err());
        assert!(build_rule(QuadMethod::Diethelm, -0.5, 5).is_err());
    }

    #[test]
    fn sign_coherence() {
        // for α ∈ (0,1) every A_j must be positive
        for &method in &[QuadMethod::YuanAgrawal, QuadMethod::Diethelm, QuadMethod::BirkSong] {
            for &alpha in &[0.1, 0.25, 0.5, 0.75, 0.9] {
                for &l in &[1usize, 7, 20, 40] {
                    let r = build_rule(method, alpha, l).unwrap();
                    assert!(r.a.iter().all(|&a| a > 0.0 && a.is_finite()));
                    assert!(r.s.iter().all(|&s| s > 0.0));
                }
            }
        }
    }

    #[test]
    fn yuan_agrawal_rates_are_laguerre_nodes() {
        let r = build_rule(QuadMethod::YuanAgrawal, 0.5, 12).unwrap();
        let lag = gauss_laguerre(12).unwrap();
        for (s, p) in r.s.iter().zip(&lag.nodes) {
            assert_eq!(s, p);
        }
    }
}
