//! Thomas algorithm for tridiagonal systems.

/// Solve a tridiagonal system in place. `lower` and `upper` have length
/// n-1, `diag` and `rhs` length n. Returns the solution vector.
///
/// No pivoting: the callers assemble diagonally dominant SPD matrices
/// (elastic stiffness plus mass/floor terms).
pub fn solve(lower: &[f64], diag: &[f64], upper: &[f64], rhs: &[f64]) -> Vec<f64> {
    let n = diag.len();
    assert!(n >= 1);
    assert_eq!(lower.len(), n - 1);
    assert_eq!(upper.len(), n - 1);
    assert_eq!(rhs.len(), n);
    let mut c = vec![0.0; n - 1];
    let mut d = vec![0.0; n];
    let mut x = vec![0.0; n];
    let mut beta = diag[0];
    d[0] = rhs[0] / beta;
    for i in 1..n {
        c[i - 1] = upper[i - 1] / beta;
        beta = diag[i] - lower[i - 1] * c[i - 1];
        d[i] = (rhs[i] - lower[i - 1] * d[i - 1]) / beta;
    }
    x[n - 1] = d[n - 1];
    for i in (0..n - 1).rev() {
        x[i] = d[i] - c[i] * x[i + 1];
    }
    x
}

/// Residual max-norm of `A x - b`, for solve verification.
pub fn residual_inf(lower: &[f64], diag: &[f64], upper: &[f64], rhs: &[f64], x: &[f64]) -> f64 {
    let n = diag.len();
    let mut worst = 0.0f64;
    for i in 0..n {
        let mut ax = diag[i] * x[i];
        if i > 0 {
            ax += lower[i - 1] * x[i - 1];
        }
        if i + 1 < n {
            ax += upper[i] * x[i + 1];
        }
        worst = worst.max((ax - rhs[i]).abs());
    }
    worst
}
