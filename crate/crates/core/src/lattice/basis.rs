use crate::error::{Error, Result};
use crate::numeric::{Field, Matrix, Vector};

/// A full-rank lattice `B·ℤ^d`; the columns of `B` are the generators.
#[derive(Clone, Debug, PartialEq)]
pub struct Lattice<T> {
    basis: Matrix<T>,
}

impl<T: Field> Lattice<T> {
    pub fn new(basis: Matrix<T>) -> Result<Self> {
        if !basis.is_square() {
            return Err(Error::Shape(format!("{}x{} lattice basis", basis.rows(), basis.cols())));
        }
        if basis.det()?.is_zero() {
            return Err(Error::Singular);
        }
        Ok(Lattice { basis })
    }

    /// `ℤ^d`.
    pub fn integer(d: usize) -> Self {
        Lattice { basis: Matrix::identity(d) }
    }

    pub fn basis(&self) -> &Matrix<T> {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn covolume(&self) -> T {
        self.basis.det().expect("square basis").abs()
    }

    /// Lattice point with integer coordinates `k`.
    pub fn point(&self, k: &[i64]) -> Vector<T> {
        self.basis.mul_i64(k)
    }

    /// `Λ* = (Bᵀ)⁻¹ℤ^d`, so that `⟨b_i, b*_j⟩ = δ_ij`.
    pub fn dual(&self) -> Result<Lattice<T>> {
        Ok(Lattice { basis: self.basis.inverse_transpose()? })
    }

    /// Coordinates of `other`'s generators in this basis.
    pub fn coordinates_of(&self, other: &Lattice<T>) -> Result<Matrix<T>> {
        Ok(self.basis.inverse()?.mul(&other.basis))
    }

    pub fn contains_lattice(&self, other: &Lattice<T>) -> Result<bool> {
        Ok(self.coordinates_of(other)?.entries().iter().all(is_integral))
    }

    /// Same point set: each basis has integer coordinates in the other.
    pub fn same_lattice(&self, other: &Lattice<T>) -> Result<bool> {
        Ok(self.contains_lattice(other)? && other.contains_lattice(self)?)
    }

    pub fn to_f64(&self) -> Lattice<f64> {
        Lattice { basis: self.basis.to_f64() }
    }
}

pub(crate) fn is_integral<T: Field>(x: &T) -> bool {
    if T::is_exact() {
        x.to_rational().is_some_and(|q| q.is_integer())
    } else {
        let v = x.to_f64();
        (v - v.round()).abs() <= 1e-9 * v.abs().max(1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::Rational;

    #[test]
    fn integer_lattice_is_self_dual() {
        let z: Lattice<Rational> = Lattice::integer(4);
        assert_eq!(z.dual().unwrap(), z);
        assert_eq!(z.covolume(), Rational::from_i64(1));
    }

    #[test]
    fn dual_pairs_to_identity() {
        let b = Matrix::<Rational>::from_i64_rows(&[vec![2, 1, 0], vec![0, 3, 1], vec![1, 0, 1]]).unwrap();
        let l = Lattice::new(b.clone()).unwrap();
        let dual = l.dual().unwrap();
        assert_eq!(b.transpose().mul(dual.basis()), Matrix::identity(3));
        assert_eq!(l.covolume() * dual.covolume(), Rational::from_i64(1));
    }

    #[test]
    fn singular_basis_rejected() {
        let b = Matrix::<Rational>::from_i64_rows(&[vec![1, 2], vec![2, 4]]).unwrap();
        assert_eq!(Lattice::new(b), Err(Error::Singular));
    }

    #[test]
    fn unimodular_change_of_basis_gives_same_lattice() {
        let b = Matrix::<Rational>::from_i64_rows(&[vec![2, 0], vec![0, 3]]).unwrap();
        let u = Matrix::<Rational>::from_i64_rows(&[vec![1, 1], vec![0, 1]]).unwrap();
        let l1 = Lattice::new(b.clone()).unwrap();
        let l2 = Lattice::new(b.mul(&u)).unwrap();
        assert!(l1.same_lattice(&l2).unwrap());
        let l3 = Lattice::new(b.scale(&Rational::from_i64(2))).unwrap();
        assert!(l1.contains_lattice(&l3).unwrap());
        assert!(!l1.same_lattice(&l3).unwrap());
    }
}
