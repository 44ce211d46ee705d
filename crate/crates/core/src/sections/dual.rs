use std::cmp::Ordering;
use std::f64::consts::SQRT_2;

use crate::error::{Error, Result};
use crate::lattice::{ellipsoid_points, Parallelepiped, DEFAULT_NODE_BUDGET};
use crate::numeric::{pow2, Field, Matrix};

use super::volume::section_ratio;

pub const MAX_SECTION_DUAL_DIM: usize = 6;

/// Gauge of the section-dual body `Π^∧`.
///
/// With `Π = A·B_d`, `Π^∧ = A′·B_d^∧`, so the gauge at `z` is the gauge of
/// `B_d^∧` at `w = (A′)⁻¹z = Aᵀz / det A`. The radial function of `B_d^∧` in
/// direction `e` is `2^{1−d}·|e|·S(e)`, which makes the gauge `2^{d−1} / S(w)`,
/// a rational function of `w`.
#[derive(Clone, Debug)]
pub struct SectionDual<T> {
    /// `(A′)⁻¹` up to the sign of `det A`, which the gauge ignores.
    to_cube: Matrix<T>,
}

impl<T: Field> SectionDual<T> {
    pub fn new(body: &Parallelepiped<T>) -> Result<Self> {
        let a = body.cube_image_map()?;
        let det = a.det()?.abs();
        Ok(SectionDual { to_cube: a.transpose().scale(&det.recip()) })
    }

    pub fn dim(&self) -> usize {
        self.to_cube.rows()
    }

    /// `(A′)⁻¹`, the map taking `Π^∧` onto `B_d^∧`.
    pub fn to_cube_map(&self) -> &Matrix<T> {
        &self.to_cube
    }

    pub fn gauge(&self, z: &[T]) -> T {
        cube_dual_gauge(&self.to_cube.mul_vec(z))
    }

    pub fn gauge_i64(&self, k: &[i64]) -> T {
        cube_dual_gauge(&self.to_cube.mul_i64(k))
    }

    pub fn contains(&self, z: &[T]) -> bool {
        self.gauge(z).cmp_value(&T::one()) != Ordering::Greater
    }

    /// `μ₁(Π^∧, ℤ^d)` with a witness.
    ///
    /// `1 ≤ v ≤ √2` gives `|w|/√2 ≤ g(w) ≤ |w|`. Integer points are enumerated by
    /// increasing Euclidean radius `r` of `w = (A′)⁻¹z`; the search stops once the best
    /// gauge `G` found satisfies `√2·G ≤ r`.
    pub fn first_minimum(&self) -> Result<(T, Vec<i64>)> {
        self.first_minimum_with_budget(DEFAULT_NODE_BUDGET)
    }

    pub fn first_minimum_with_budget(&self, budget: u64) -> Result<(T, Vec<i64>)> {
        let d = self.dim();
        if !(2..=MAX_SECTION_DUAL_DIM).contains(&d) {
            return Err(Error::Dimension { got: d, min: 2, max: MAX_SECTION_DUAL_DIM });
        }
        let m = self.to_cube.to_f64();
        let mut radius = (m.det()?.abs() / unit_ball_volume(d)).powf(1.0 / d as f64);
        let mut best: Option<(T, Vec<i64>)> = None;
        loop {
            for k in ellipsoid_points(&m, radius, budget)? {
                let k = canonical(k);
                let g = self.gauge_i64(&k);
                let better = match &best {
                    None => true,
                    Some((b, bk)) => match g.cmp_value(b) {
                        Ordering::Less => true,
                        Ordering::Equal => k < *bk,
                        Ordering::Greater => false,
                    },
                };
                if better {
                    best = Some((g, k));
                }
            }
            match &best {
                Some((g, _)) if g.to_f64() * SQRT_2 <= radius => break,
                Some((g, _)) => radius = g.to_f64() * SQRT_2,
                None => radius *= 2.0,
            }
        }
        Ok(best.expect("loop exits with a candidate"))
    }
}

fn unit_ball_volume(d: usize) -> f64 {
    // V_d = 2π/d · V_{d−2}
    let mut v = if d % 2 == 0 { 1.0 } else { 2.0 };
    let mut k = if d % 2 == 0 { 2 } else { 3 };
    while k <= d {
        v *= 2.0 * std::f64::consts::PI / k as f64;
        k += 2;
    }
    v
}

fn canonical(mut k: Vec<i64>) -> Vec<i64> {
    if k.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
        k.iter_mut().for_each(|x| *x = -*x);
    }
    k
}

/// Gauge of `B_d^∧` at `w`: `2^{d−1} / S(w)`, and 0 at the origin.
pub fn cube_dual_gauge<T: Field>(w: &[T]) -> T {
    if w.iter().all(Field::is_zero) {
        return T::zero();
    }
    let s = section_ratio(w).expect("nonzero direction in dimension ≥ 2");
    pow2::<T>(w.len() as i32 - 1) / s
}

/// `g_{Π^∧}(z)`.
pub fn section_dual_gauge<T: Field>(body: &Parallelepiped<T>, z: &[T]) -> Result<T> {
    Ok(SectionDual::new(body)?.gauge(z))
}

/// `μ₁(Π^∧, ℤ^d)`.
pub fn first_minimum_section_dual<T: Field>(body: &Parallelepiped<T>) -> Result<T> {
    Ok(SectionDual::new(body)?.first_minimum()?.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::Rational;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn boundary_points_of_the_cube_dual() {
        let cube = Parallelepiped::<Rational>::cube(3);
        let g = |z: [Rational; 3]| section_dual_gauge(&cube, &z).unwrap();
        assert_eq!(g([r(3, 4), r(3, 4), r(3, 4)]), r(1, 1));
        assert_eq!(g([r(16, 25), r(4, 5), r(4, 5)]), r(1, 1));
        assert_eq!(g([r(0, 1), r(0, 1), r(0, 1)]), r(0, 1));
        assert_eq!(g([r(1, 1), r(0, 1), r(0, 1)]), r(1, 1));
    }

    #[test]
    fn first_minimum_of_cubes() {
        let cube = Parallelepiped::<Rational>::cube(3);
        let (m, w) = SectionDual::new(&cube).unwrap().first_minimum().unwrap();
        assert_eq!(m, r(1, 1));
        assert_eq!(w.iter().map(|x| x.abs()).sum::<i64>(), 1);
        let big = cube.scaled(&r(2, 1)).unwrap();
        assert_eq!(first_minimum_section_dual(&big).unwrap(), r(1, 4));
    }

    #[test]
    fn homogeneity_under_scaling_of_body() {
        let h = Matrix::<Rational>::from_i64_rows(&[vec![1, 1, 0], vec![0, 1, 2], vec![1, 0, 1]]).unwrap();
        let body = Parallelepiped::new(h, vec![r(1, 2), r(3, 2), r(1, 1)]).unwrap();
        let z = [r(1, 1), r(-2, 1), r(3, 1)];
        let g1 = section_dual_gauge(&body, &z).unwrap();
        let g3 = section_dual_gauge(&body.scaled(&r(3, 1)).unwrap(), &z).unwrap();
        assert_eq!(g1, g3 * r(9, 1));
    }
}
