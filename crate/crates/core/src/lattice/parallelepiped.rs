use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::numeric::{factorial, pow2, Field, Matrix, Vector};

/// The 0-symmetric parallelepiped `{z : |h_i(z)| ≤ η_i}`.
///
/// Row `i` of `forms` holds the coefficients of the linear form `h_i`.
/// Bodies are closed: boundary points are contained.
#[derive(Clone, Debug, PartialEq)]
pub struct Parallelepiped<T> {
    forms: Matrix<T>,
    bounds: Vec<T>,
}

impl<T: Field> Parallelepiped<T> {
    pub fn new(forms: Matrix<T>, bounds: Vec<T>) -> Result<Self> {
        if !forms.is_square() || forms.rows() != bounds.len() {
            return Err(Error::Shape(format!(
                "{}x{} forms with {} bounds",
                forms.rows(),
                forms.cols(),
                bounds.len()
            )));
        }
        if bounds.iter().any(|b| b.sign() != Ordering::Greater) {
            return Err(Error::Invalid("parallelepiped bounds must be positive".into()));
        }
        if forms.det()?.is_zero() {
            return Err(Error::Singular);
        }
        Ok(Parallelepiped { forms, bounds })
    }

    /// `B_d = [-1, 1]^d`.
    pub fn cube(d: usize) -> Self {
        Parallelepiped { forms: Matrix::identity(d), bounds: vec![T::one(); d] }
    }

    /// Axis-aligned box `{|z_i| ≤ η_i}`.
    pub fn axis_box(bounds: Vec<T>) -> Result<Self> {
        Parallelepiped::new(Matrix::identity(bounds.len()), bounds)
    }

    pub fn forms(&self) -> &Matrix<T> {
        &self.forms
    }

    pub fn bounds(&self) -> &[T] {
        &self.bounds
    }

    pub fn dim(&self) -> usize {
        self.bounds.len()
    }

    pub fn bounds_product(&self) -> T {
        self.bounds.iter().fold(T::one(), |acc, b| acc * b.clone())
    }

    /// `2^d · ∏η_i / |det H|`.
    pub fn volume(&self) -> T {
        let det = self.forms.det().expect("square forms").abs();
        pow2::<T>(self.dim() as i32) * self.bounds_product() / det
    }

    /// Minkowski functional `max_i |h_i(x)| / η_i`.
    pub fn gauge(&self, x: &[T]) -> T {
        let hx = self.forms.mul_vec(x);
        hx.into_iter()
            .zip(&self.bounds)
            .map(|(v, b)| v.abs() / b.clone())
            .fold(T::zero(), T::max_value)
    }

    pub fn contains(&self, x: &[T]) -> bool {
        self.gauge(x).cmp_value(&T::one()) != Ordering::Greater
    }

    /// `A_Π = diag(1/η)·H`, which maps the body onto `B_d`.
    pub fn canonical_map(&self) -> Matrix<T> {
        let inv: Vec<T> = self.bounds.iter().map(Field::recip).collect();
        self.forms.scale_rows(&inv)
    }

    /// `A = H⁻¹·diag(η)`, so that the body equals `A·B_d`.
    pub fn cube_image_map(&self) -> Result<Matrix<T>> {
        Ok(self.forms.inverse()?.scale_columns(&self.bounds))
    }

    /// `λ·Π`.
    pub fn scaled(&self, lambda: &T) -> Result<Self> {
        if lambda.sign() != Ordering::Greater {
            return Err(Error::Invalid("scale factor must be positive".into()));
        }
        Ok(Parallelepiped {
            forms: self.forms.clone(),
            bounds: self.bounds.iter().map(|b| b.clone() * lambda.clone()).collect(),
        })
    }

    /// Image `A·Π = {z : |H A⁻¹ z| ≤ η}`.
    pub fn image(&self, a: &Matrix<T>) -> Result<Self> {
        let forms = self.forms.mul(&a.inverse()?);
        Parallelepiped::new(forms, self.bounds.clone())
    }

    /// `H_{τ,Π}·Π`: the forms are kept and bound `i` is stretched by `τ_i`.
    pub fn hyperbolic_shift(&self, tau: &[T]) -> Result<Self> {
        if tau.len() != self.dim() {
            return Err(Error::Shape("tau length differs from dimension".into()));
        }
        let bounds = self.bounds.iter().zip(tau).map(|(b, t)| b.clone() * t.clone()).collect();
        Parallelepiped::new(self.forms.clone(), bounds)
    }

    /// Rescale `(H, η) → (sH, sη)` with `s = |det H|^{-1/d}`; the point set is unchanged.
    pub fn normalized(&self) -> Result<Self> {
        let d = self.dim();
        let det = self.forms.det()?.abs();
        if det == T::one() {
            return Ok(self.clone());
        }
        let root = det
            .nth_root(d as u32)
            .ok_or_else(|| Error::NotRepresentable(format!("|det H|^(1/{d}) with det = {det}")))?;
        let s = root.recip();
        Ok(Parallelepiped {
            forms: self.forms.scale(&s),
            bounds: self.bounds.iter().map(|b| b.clone() * s.clone()).collect(),
        })
    }

    /// The pseudo-compound parallelepiped `Π*`, forms `(Hᵀ)⁻¹` and bounds `∏η_j / η_i`.
    pub fn pseudo_compound(&self) -> Result<Self> {
        let n = self.normalized()?;
        let forms = n.forms.inverse_transpose()?;
        let p = n.bounds_product();
        let bounds = n.bounds.iter().map(|b| p.clone() / b.clone()).collect();
        Ok(Parallelepiped { forms, bounds })
    }

    /// Vertices `H⁻¹(±η_1, …, ±η_d)`, one of each antipodal pair.
    pub fn vertices_half(&self) -> Result<Vec<Vector<T>>> {
        let inv = self.forms.inverse()?;
        let d = self.dim();
        Ok((0u32..1 << (d - 1))
            .map(|mask| {
                let rhs: Vec<T> = (0..d)
                    .map(|i| {
                        let b = self.bounds[i].clone();
                        if i > 0 && mask >> (i - 1) & 1 == 1 {
                            -b
                        } else {
                            b
                        }
                    })
                    .collect();
                inv.mul_vec(&rhs)
            })
            .collect())
    }

    /// Float copy for suites that leave the exact kinds.
    pub fn to_f64(&self) -> Parallelepiped<f64> {
        Parallelepiped { forms: self.forms.to_f64(), bounds: self.bounds.iter().map(Field::to_f64).collect() }
    }

    /// Same point set: equal after normalizing every form row by its bound, up to row order and sign.
    pub fn same_body(&self, other: &Self) -> bool {
        if self.dim() != other.dim() {
            return false;
        }
        let a = self.canonical_map();
        let b = other.canonical_map();
        let mut used = vec![false; self.dim()];
        'rows: for i in 0..self.dim() {
            for (j, u) in used.iter_mut().enumerate() {
                if *u {
                    continue;
                }
                let ra = a.row(i);
                let rb = b.row(j);
                let plus = ra.iter().zip(rb).all(|(x, y)| close(x, y));
                let minus = ra.iter().zip(rb).all(|(x, y)| close(x, &-y.clone()));
                if plus || minus {
                    *u = true;
                    continue 'rows;
                }
            }
            return false;
        }
        true
    }
}

fn close<T: Field>(x: &T, y: &T) -> bool {
    if T::is_exact() {
        x == y
    } else {
        (x.to_f64() - y.to_f64()).abs() <= 1e-9 * x.to_f64().abs().max(1.0)
    }
}

/// Minkowski's lower bound `(2^d·covol / (d!·vol))^{1/d}` on the geometric mean of the minima.
pub(crate) fn minkowski_radius(volume: f64, covolume: f64, d: usize) -> f64 {
    let fact: f64 = factorial::<f64>(d as u32);
    (2f64.powi(d as i32) * covolume / (fact * volume)).powf(1.0 / d as f64)
}
