use crate::error::{Error, Result};
use crate::numeric::{monotone_root, Field, Matrix};

const ROOT_TOL: f64 = 1e-15;

/// Coefficient matrices of the forms `f_i = x_i − θ_i x_{n+1}`, `f_{n+1} = x_{n+1}` and
/// `g_i = x_i`, `g_{n+1} = θ·x + x_{n+1}`, one form per row.
pub fn khintchine_pair<T: Field>(theta: &[T]) -> Result<(Matrix<T>, Matrix<T>)> {
    let n = theta.len();
    if n == 0 {
        return Err(Error::Invalid("need at least one θ".into()));
    }
    let mut f = Matrix::<T>::identity(n + 1);
    let mut g = Matrix::<T>::identity(n + 1);
    for (i, t) in theta.iter().enumerate() {
        f[(i, n)] = -t.clone();
        g[(n, i)] = t.clone();
    }
    Ok((f, g))
}

/// `λ̄ = (|D|·∏λ_i)^{1/(d−1)}` and the dual box bounds `(d−1)·λ̄/λ_i`.
pub fn mahler_dual_box(lambda: &[f64], det: f64) -> Result<(f64, Vec<f64>)> {
    let d = lambda.len();
    if d < 2 {
        return Err(Error::Dimension { got: d, min: 2, max: usize::MAX });
    }
    if det == 0.0 || !det.is_finite() {
        return Err(Error::Invalid(format!("determinant {det}")));
    }
    if lambda.iter().any(|&l| !(l > 0.0 && l.is_finite())) {
        return Err(Error::Invalid("λ entries must be positive".into()));
    }
    let log_bar = (det.abs().ln() + lambda.iter().map(|l| l.ln()).sum::<f64>()) / (d - 1) as f64;
    let bar = log_bar.exp();
    let bounds = lambda.iter().map(|l| (d - 1) as f64 * bar / l).collect();
    Ok((bar, bounds))
}

/// `c_d`, the root `t > 1` of `t^{2(d−1)} − (d−1)t² − 1`.
pub fn c_d(d: usize) -> Result<f64> {
    t2_root(1.0, d)
}

/// `(d^{1/(2(d−1))}, d^{1/(2(d−2))})`, the strict bracket around `c_d`.
pub fn c_d_bounds(d: usize) -> Result<(f64, f64)> {
    check_dim(d)?;
    let ln = (d as f64).ln();
    Ok(((ln / (2 * (d - 1)) as f64).exp(), (ln / (2 * (d - 2)) as f64).exp()))
}

/// `t^{2(d−1)} − (d−1)t² − 1`, negative exactly on `(0, c_d)` for `t > 0`.
pub fn c_d_polynomial<T: Field>(t: &T, d: usize) -> T {
    let t2 = t.clone() * t.clone();
    t2.powi(d as u32 - 1) - T::from_i64(d as i64 - 1) * t2 - T::one()
}

/// Positive root `t` of `t₁²·t^{2(d−1)} = t₁² + (d−1)t²`.
///
/// Solved for `s = t²` in the form `(d−1)·ln s + 2·ln t₁ − ln(t₁² + (d−1)s)`, which is
/// increasing in `s` and stays finite for large `d`.
pub fn t2_root(t1: f64, d: usize) -> Result<f64> {
    check_dim(d)?;
    if !(t1 >= 1.0 && t1.is_finite()) {
        return Err(Error::Invalid(format!("t1 = {t1} must be at least 1")));
    }
    let m = (d - 1) as f64;
    let a = t1 * t1;
    let f = |s: f64| m * s.ln() + a.ln() - (a + m * s).ln();
    let mut hi = 2.0;
    while f(hi) <= 0.0 {
        hi *= 2.0;
    }
    let s = monotone_root(f, 1.0, hi, ROOT_TOL)?;
    Ok(s.sqrt())
}

fn check_dim(d: usize) -> Result<()> {
    if d < 3 {
        return Err(Error::Dimension { got: d, min: 3, max: usize::MAX });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::Rational;

    #[test]
    fn pair_in_one_variable() {
        let t = Rational::new(3.into(), 7.into());
        let (f, g) = khintchine_pair(&[t.clone()]).unwrap();
        let one = Rational::from_i64(1);
        let zero = Rational::from_i64(0);
        assert_eq!(f, Matrix::from_rows(vec![vec![one.clone(), -t.clone()], vec![zero.clone(), one.clone()]]).unwrap());
        assert_eq!(g, Matrix::from_rows(vec![vec![one.clone(), zero], vec![t, one]]).unwrap());
        assert_eq!(f.transpose().mul(&g), Matrix::identity(2));
        assert_eq!(f.mul(&g.transpose()), Matrix::identity(2));
    }

    #[test]
    fn zero_theta_gives_identity() {
        let (f, g) = khintchine_pair(&vec![Rational::from_i64(0); 3]).unwrap();
        assert_eq!(f, Matrix::identity(4));
        assert_eq!(g, Matrix::identity(4));
    }

    #[test]
    fn dual_box_examples() {
        let (bar, b) = mahler_dual_box(&[3.0, 5.0], 1.0).unwrap();
        assert!((bar - 15.0).abs() < 1e-12);
        assert!((b[0] - 5.0).abs() < 1e-12 && (b[1] - 3.0).abs() < 1e-12);
        let (_, b) = mahler_dual_box(&[1.0, 1.0, 1.0], 1.0).unwrap();
        assert!(b.iter().all(|x| (x - 2.0).abs() < 1e-12));
        let (bar, b) = mahler_dual_box(&[4.0, 1.0, 1.0], 2.0).unwrap();
        let r2 = 2f64.sqrt();
        assert!((bar - 2.0 * r2).abs() < 1e-12);
        assert!((b[0] - r2).abs() < 1e-12 && (b[1] - 4.0 * r2).abs() < 1e-12);
    }

    #[test]
    fn closed_forms() {
        assert!((c_d(3).unwrap() - (1.0 + 2f64.sqrt()).sqrt()).abs() < 1e-12);
        let c4 = (2.0 * (std::f64::consts::PI / 9.0).cos()).sqrt();
        assert!((c_d(4).unwrap() - c4).abs() < 1e-9);
        assert!(c_d(2).is_err());
    }

    #[test]
    fn polynomial_sign_brackets_the_root() {
        let c = c_d(5).unwrap();
        assert!(c_d_polynomial(&(c * 0.999), 5) < 0.0);
        assert!(c_d_polynomial(&(c * 1.001), 5) > 0.0);
        assert!(c_d_polynomial(&Rational::from_i64(1), 5) < Rational::from_i64(0));
    }

    #[test]
    fn fixed_point_of_the_second_root() {
        for d in 3..=10 {
            let t1 = (d as f64).powf(1.0 / (2.0 * (d - 1) as f64));
            assert!((t2_root(t1, d).unwrap() - t1).abs() < 1e-10);
        }
        assert!(t2_root(1.2, 3).unwrap() < c_d(3).unwrap());
        assert!(t2_root(0.5, 3).is_err());
    }
}
