use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::numeric::{Field, Matrix};

use super::{Lattice, Parallelepiped};

/// Node limit for a single enumeration.
pub const DEFAULT_NODE_BUDGET: u64 = 20_000_000;

const RADIUS_INFLATION: f64 = 1.0 + 1e-6;
const INTERVAL_PAD: f64 = 1e-6;

/// A lattice point found by enumeration: integer coordinates and exact gauge.
#[derive(Clone, Debug, PartialEq)]
pub struct LatticePoint<T> {
    pub coords: Vec<i64>,
    pub gauge: T,
}

/// Lattice points `k` of `Λ` with `gauge_Π(Bk) ≤ radius`, one per antipodal pair
/// (the last nonzero coordinate is positive).
///
/// The search runs Fincke–Pohst over the Euclidean relaxation `|Mk|₂ ≤ √d·radius`
/// in floating point with a padded radius; every candidate's gauge is then
/// evaluated in `T` and compared with `radius` in `T`.
pub fn points_within<T: Field>(
    body: &Parallelepiped<T>,
    lattice: &Lattice<T>,
    radius: f64,
    budget: u64,
) -> Result<Vec<LatticePoint<T>>> {
    let d = body.dim();
    if lattice.dim() != d {
        return Err(Error::Shape(format!("body dimension {d}, lattice dimension {}", lattice.dim())));
    }
    let m = body.canonical_map().mul(lattice.basis());
    let limit = T::from_f64(radius);
    Ok(ellipsoid_points(&m.to_f64(), radius * (d as f64).sqrt(), budget)?
        .into_iter()
        .filter_map(|k| {
            let gauge = sup_norm(&m, &k);
            (gauge.cmp_value(&limit) != Ordering::Greater).then_some(LatticePoint { coords: k, gauge })
        })
        .collect())
}

/// Superset of the nonzero `k` (one per ± pair) with `|Mk|₂ ≤ radius`.
pub(crate) fn ellipsoid_points(m: &Matrix<f64>, radius: f64, budget: u64) -> Result<Vec<Vec<i64>>> {
    if !(radius.is_finite() && radius > 0.0) {
        return Err(Error::Invalid(format!("enumeration radius {radius}")));
    }
    let d = m.rows();
    let (reduced, u) = lll_reduce(m)?;
    let r = upper_triangular(&reduced)?;
    let mut search = Search {
        r: &r,
        bound: (radius * RADIUS_INFLATION).powi(2),
        budget,
        nodes: 0,
        k: vec![0; d],
        out: Vec::new(),
    };
    search.descend(d, 0.0, true)?;
    Ok(search.out.into_iter().map(|k| canonical_sign(apply_columns(&u, &k))).collect())
}

/// `Σ_j k_j·u_j` for integer columns `u_j`.
fn apply_columns(u: &[Vec<i64>], k: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; u.len()];
    for (col, &kj) in u.iter().zip(k) {
        for (o, &x) in out.iter_mut().zip(col) {
            *o += kj * x;
        }
    }
    out
}

fn canonical_sign(mut k: Vec<i64>) -> Vec<i64> {
    if k.iter().rev().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
        k.iter_mut().for_each(|x| *x = -*x);
    }
    k
}

const LLL_DELTA: f64 = 0.99;

/// `(MU, U)` with `U` unimodular (as integer columns) and the columns of `MU` LLL-reduced.
///
/// Fincke–Pohst on an unreduced basis can visit far more nodes than there are
/// points in the ellipsoid; the reduction keeps the tree close to the output size.
fn lll_reduce(m: &Matrix<f64>) -> Result<(Matrix<f64>, Vec<Vec<i64>>)> {
    let d = m.rows();
    let mut b = m.to_columns();
    let mut u: Vec<Vec<i64>> = (0..d).map(|j| (0..d).map(|i| i64::from(i == j)).collect()).collect();
    let dot = |x: &[f64], y: &[f64]| x.iter().zip(y).map(|(p, q)| p * q).sum::<f64>();
    let mut k = 1;
    let mut rounds = 0u64;
    while k < d {
        rounds += 1;
        if rounds > 100_000 {
            break;
        }
        let (bstar, _) = gram_schmidt(&b);
        for j in (0..k).rev() {
            let q = mu_coefficient(&b, &bstar, k, j).round();
            if q != 0.0 {
                if q.abs() > 1e15 {
                    return Err(Error::Singular);
                }
                let qi = q as i64;
                for t in 0..d {
                    b[k][t] -= q * b[j][t];
                    u[k][t] = u[k][t].checked_sub(qi.checked_mul(u[j][t]).ok_or(Error::Singular)?).ok_or(Error::Singular)?;
                }
            }
        }
        let (bstar, mu) = gram_schmidt(&b);
        let lhs = dot(&bstar[k], &bstar[k]);
        let rhs = (LLL_DELTA - mu[k][k - 1] * mu[k][k - 1]) * dot(&bstar[k - 1], &bstar[k - 1]);
        if lhs >= rhs {
            k += 1;
        } else {
            b.swap(k, k - 1);
            u.swap(k, k - 1);
            k = (k - 1).max(1);
        }
    }
    // row-major: entry (i, j) is coordinate i of column j
    let reduced = Matrix::from_vec(d, d, (0..d * d).map(|x| b[x % d][x / d]).collect())?;
    Ok((reduced, u))
}

fn mu_coefficient(b: &[Vec<f64>], bstar: &[Vec<f64>], k: usize, j: usize) -> f64 {
    let num: f64 = b[k].iter().zip(&bstar[j]).map(|(p, q)| p * q).sum();
    let den: f64 = bstar[j].iter().map(|x| x * x).sum();
    num / den
}

/// Gram–Schmidt vectors and coefficients `μ_kj = ⟨b_k, b*_j⟩ / |b*_j|²`.
fn gram_schmidt(b: &[Vec<f64>]) -> (Vec<Vec<f64>>, Vec<Vec<f64>>) {
    let d = b.len();
    let mut bstar: Vec<Vec<f64>> = Vec::with_capacity(d);
    let mut mu = vec![vec![0.0; d]; d];
    for k in 0..d {
        let mut v = b[k].clone();
        for j in 0..k {
            mu[k][j] = mu_coefficient(b, &bstar, k, j);
            for t in 0..v.len() {
                v[t] -= mu[k][j] * bstar[j][t];
            }
        }
        bstar.push(v);
    }
    (bstar, mu)
}

pub(crate) fn sup_norm<T: Field>(m: &Matrix<T>, k: &[i64]) -> T {
    m.mul_i64(k).into_iter().map(|x| x.abs()).fold(T::zero(), T::max_value)
}

struct Search<'a> {
    r: &'a [Vec<f64>],
    bound: f64,
    budget: u64,
    nodes: u64,
    k: Vec<i64>,
    out: Vec<Vec<i64>>,
}

impl Search<'_> {
    /// Fixes coordinate `level - 1` given coordinates `level..d`; `used` is their
    /// contribution to `|Rk|²`. While every higher coordinate is zero the current
    /// one must be nonnegative.
    fn descend(&mut self, level: usize, used: f64, leading_zero: bool) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded(self.budget));
        }
        if level == 0 {
            if !leading_zero {
                self.out.push(self.k.clone());
            }
            return Ok(());
        }
        let i = level - 1;
        let d = self.k.len();
        let rii = self.r[i][i];
        let shift: f64 = (i + 1..d).map(|j| self.r[i][j] * self.k[j] as f64).sum();
        let centre = -shift / rii;
        let rest = (self.bound - used).max(0.0);
        let half = rest.sqrt() / rii + INTERVAL_PAD * (1.0 + centre.abs());
        let mut lo = (centre - half).ceil() as i64;
        let hi = (centre + half).floor() as i64;
        if leading_zero {
            lo = lo.max(0);
        }
        let slack = self.bound * (1.0 + 4.0 * INTERVAL_PAD);
        for ki in lo..=hi {
            let t = rii * ki as f64 + shift;
            let next = used + t * t;
            if next > slack {
                continue;
            }
            self.k[i] = ki;
            self.descend(i, next, leading_zero && ki == 0)?;
        }
        self.k[i] = 0;
        Ok(())
    }
}

/// `R` with `M = QR` and positive diagonal, via modified Gram–Schmidt on the columns.
fn upper_triangular(m: &Matrix<f64>) -> Result<Vec<Vec<f64>>> {
    let d = m.rows();
    let mut q: Vec<Vec<f64>> = m.to_columns();
    let mut r = vec![vec![0.0; d]; d];
    for j in 0..d {
        for i in 0..j {
            let proj: f64 = (0..d).map(|t| q[i][t] * q[j][t]).sum();
            r[i][j] += proj;
            for t in 0..d {
                q[j][t] -= proj * q[i][t];
            }
        }
        let norm = q[j].iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::Singular);
        }
        r[j][j] = norm;
        for t in 0..d {
            q[j][t] /= norm;
        }
    }
    Ok(r)
}
