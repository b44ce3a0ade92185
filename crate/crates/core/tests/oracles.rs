//! Cross-checks of the production algorithms against independent routes:
//! Golub-Welsch eigenvalues for the Newton quadrature nodes, a dense solver
//! for the almost-banded factorization, and property tests for the special
//! functions.

mod common;

use common::{dense_solve, sturm_eigenvalues};
use fracspec_core::banded::BandedOp;
use fracspec_core::quadrature::{
    gauss_jacobi, gauss_laguerre, jacobi_recurrence, laguerre_recurrence,
};
use fracspec_core::specialfns::{erf, lgamma, mittag_leffler, MlParams};
use proptest::prelude::*;

#[test]
fn laguerre_nodes_match_golub_welsch() {
    for l in [1usize, 2, 5, 15, 30, 60] {
        let rule = gauss_laguerre(l).unwrap();
        let (diag, off, _) = laguerre_recurrence(l);
        let eigs = sturm_eigenvalues(&diag, &off);
        for (n, e) in rule.nodes.iter().zip(&eigs) {
            assert!(
                (n - e).abs() <= 1e-12 * (1.0 + e.abs()),
                "L={l}: Newton {n} vs eigenvalue {e}"
            );
        }
    }
}

#[test]
fn jacobi_nodes_match_golub_welsch() {
    for &(a, b) in &[
        (0.0, 0.0),
        (1.0, 1.0),
        (0.8, -0.8),
        (-0.6, 2.6),
        (2.0, 0.0),
        (0.5, 1.5),
    ] {
        for l in [1usize, 4, 15, 30, 64] {
            let rule = gauss_jacobi(l, a, b).unwrap();
            let (diag, off, _) = jacobi_recurrence(l, a, b);
            let eigs = sturm_eigenvalues(&diag, &off);
            for (n, e) in rule.nodes.iter().zip(&eigs) {
                assert!(
                    (n - e).abs() <= 1e-13,
                    "a={a} b={b} L={l}: Newton {n} vs eigenvalue {e}"
                );
            }
        }
    }
}

#[test]
fn banded_solve_matches_dense_oracle() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
    // diagonally dominant banded system, K = 100, bandwidth 3
    let n = 100;
    let mut op = BandedOp::new(n, n, 3, 3);
    for i in 0..n {
        for j in i.saturating_sub(3)..(i + 4).min(n) {
            if i != j {
                op.set(i, j, rng.gen_range(-1.0..1.0));
            }
        }
        op.set(i, i, 8.0 + rng.gen_range(0.0..1.0));
    }
    let rhs: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let x = op.solve(&rhs).unwrap();
    let image = op.matvec(&x);
    let resid = image
        .iter()
        .zip(&rhs)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0f64, f64::max);
    let rhs_inf = rhs.iter().fold(0.0f64, |a, &v| a.max(v.abs()));
    assert!(resid <= 1e-11 * rhs_inf, "residual {resid:e}");
    let xd = dense_solve(op.to_dense(), rhs.clone());
    let diff = x
        .iter()
        .zip(&xd)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0f64, f64::max);
    assert!(diff <= 1e-11, "banded vs dense differ by {diff:e}");
}

#[test]
fn bordered_solve_matches_dense_oracle() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
    let n = 60;
    for trial in 0..10 {
        let (lower, upper) = (rng.gen_range(0..3usize), rng.gen_range(1..4usize));
        let mut op = BandedOp::new(n, n, lower, upper);
        for i in 0..n {
            for j in i.saturating_sub(lower)..(i + upper + 1).min(n) {
                if i != j {
                    op.set(i, j, rng.gen_range(-1.0..1.0));
                }
            }
            if i < n {
                op.set(i, i, 6.0 + rng.gen_range(0.0..1.0));
            }
        }
        let borders = 1 + trial % 3;
        let border: Vec<Vec<f64>> = (0..borders)
            .map(|_| (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect())
            .collect();
        let op = op.with_border(border);
        let rhs: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let x = op.solve(&rhs).unwrap();
        let xd = dense_solve(op.to_dense(), rhs.clone());
        let diff = x
            .iter()
            .zip(&xd)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0f64, f64::max);
        assert!(diff <= 1e-10, "trial {trial}: bordered vs dense differ by {diff:e}");
    }
}

proptest! {
    #[test]
    fn mittag_leffler_recurrence_identity(
        alpha in 0.2f64..2.0,
        beta in 0.3f64..3.0,
        z in -20.0f64..20.0,
    ) {
        // E_{α,β}(z) = z·E_{α,α+β}(z) + 1/Γ(β)
        let lhs = mittag_leffler(MlParams::new(alpha, beta).unwrap(), z).unwrap();
        let rhs = z * mittag_leffler(MlParams::new(alpha, alpha + beta).unwrap(), z).unwrap()
            + (-lgamma(beta).unwrap()).exp();
        let scale = lhs.abs().max(1.0);
        prop_assert!((lhs - rhs).abs() <= 1e-12 * scale, "lhs {lhs} rhs {rhs}");
    }

    #[test]
    fn erf_is_odd_and_monotone(x in 0.0f64..8.0, h in 1e-3f64..0.5) {
        prop_assert!((erf(-x) + erf(x)).abs() < 1e-15);
        prop_assert!(erf(x + h) >= erf(x));
    }

    #[test]
    fn banded_solve_residual_property(seed in 0u64..500) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(2..20usize);
        let lower = rng.gen_range(0..3usize).min(n - 1);
        let upper = rng.gen_range(0..3usize).min(n - 1);
        let mut op = BandedOp::new(n, n, lower, upper);
        for i in 0..n {
            for j in i.saturating_sub(lower)..(i + upper + 1).min(n) {
                op.set(i, j, if i == j { 5.0 + rng.gen_range(0.0..1.0) } else { rng.gen_range(-1.0..1.0) });
            }
        }
        let rhs: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let x = op.solve(&rhs).unwrap();
        let resid = op
            .matvec(&x)
            .iter()
            .zip(&rhs)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0f64, f64::max);
        prop_assert!(resid <= 1e-11, "residual {resid:e}");
    }
}
