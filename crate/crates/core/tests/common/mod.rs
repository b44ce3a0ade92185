//! Shared oracles for the integration suites: a Golub-Welsch eigenvalue
//! route for quadrature nodes, a dense linear solver, and a log-log slope
//! fit.

/// Eigenvalues of the symmetric tridiagonal matrix with the given diagonal
/// and off-diagonal (off_diag[k] couples rows k-1 and k; entry 0 unused),
/// by Sturm-sequence bisection. Ascending order.
pub fn sturm_eigenvalues(diag: &[f64], off_diag: &[f64]) -> Vec<f64> {
    let n = diag.len();
    // Gershgorin bounds
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let r = off_diag.get(i).copied().unwrap_or(0.0).abs()
            + off_diag.get(i + 1).copied().unwrap_or(0.0).abs();
        lo = lo.min(diag[i] - r);
        hi = hi.max(diag[i] + r);
    }
    let count_below = |x: f64| -> usize {
        let mut count = 0;
        let mut d = 1.0f64;
        for i in 0..n {
            let beta2 = if i == 0 { 0.0 } else { off_diag[i] * off_diag[i] };
            d = (diag[i] - x) - beta2 / d;
            if d == 0.0 {
                d = 1e-300;
            }
            if d < 0.0 {
                count += 1;
            }
        }
        count
    };
    (0..n)
        .map(|k| {
            let (mut a, mut b) = (lo, hi);
            for _ in 0..200 {
                let mid = 0.5 * (a + b);
                if count_below(mid) <= k {
                    a = mid;
                } else {
                    b = mid;
                }
                if (b - a) <= f64::EPSILON * (1.0 + a.abs().max(b.abs())) {
                    break;
                }
            }
            0.5 * (a + b)
        })
        .collect()
}

/// Plain dense Gaussian elimination with partial pivoting.
pub fn dense_solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Vec<f64> {
    let n = b.len();
    for c in 0..n {
        let p = (c..n)
            .max_by(|&i, &j| a[i][c].abs().total_cmp(&a[j][c].abs()))
            .unwrap();
        a.swap(c, p);
        b.swap(c, p);
        let piv = a[c][c];
        assert!(piv != 0.0, "dense oracle hit a zero pivot");
        for r in c + 1..n {
            let m = a[r][c] / piv;
            if m != 0.0 {
                for cc in c..n {
                    let s = m * a[c][cc];
                    a[r][cc] -= s;
                }
                b[r] -= m * b[c];
            }
        }
    }
    let mut x = vec![0.0; n];
    for c in (0..n).rev() {
        let mut acc = b[c];
        for cc in c + 1..n {
            acc -= a[c][cc] * x[cc];
        }
        x[c] = acc / a[c][c];
    }
    x
}

/// Least-squares slope of ln(y) against ln(x).
pub fn loglog_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let xs: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.max(1e-300).ln()).collect();
    let sx: f64 = xs.iter().sum();
    let sy: f64 = ys.iter().sum();
    let sxx: f64 = xs.iter().map(|v| v * v).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(a, b)| a * b).sum();
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}
