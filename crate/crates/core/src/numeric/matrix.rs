use std::fmt::Write as _;
use std::ops::{Index, IndexMut};

use super::{Field, Scalar, ScalarKind};
use crate::error::{Error, Result};

pub type Vector<T> = Vec<T>;

/// Dense row-major matrix over one scalar kind.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Clone> Matrix<T> {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_columns(cols: Vec<Vec<T>>) -> Result<Self> {
        Ok(Matrix::from_rows(cols)?.transpose())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vector<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn to_columns(&self) -> Vec<Vector<T>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        let data = (0..self.cols)
            .flat_map(|j| (0..self.rows).map(move |i| (i, j)))
            .map(|(i, j)| self[(i, j)].clone())
            .collect();
        Matrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn map<U, F: FnMut(&T) -> U>(&self, f: F) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    fn require_square(&self, what: &str) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::Shape(format!("{what} of a {}x{} matrix", self.rows, self.cols)))
        }
    }
}

impl<T: Field> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn diag(entries: &[T]) -> Self {
        let n = entries.len();
        let mut m = Matrix::zeros(n, n);
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| T::from_i64(x)).collect()).collect())
    }

    /// Panics on inner-dimension mismatch.
    pub fn mul(&self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = Matrix::<T>::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let t = out[(i, j)].clone() + a.clone() * rhs[(k, j)].clone();
                    out[(i, j)] = t;
                }
            }
        }
        out
    }

    /// Panics on shape mismatch.
    pub fn mul_vec(&self, v: &[T]) -> Vector<T> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows).map(|i| super::dot(self.row(i), v)).collect()
    }

    pub fn mul_i64(&self, k: &[i64]) -> Vector<T> {
        assert_eq!(self.cols, k.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i).iter().zip(k).fold(T::zero(), |acc, (a, &x)| {
                    if x == 0 {
                        acc
                    } else {
                        acc + a.clone() * T::from_i64(x)
                    }
                })
            })
            .collect()
    }

    pub fn scale(&self, s: &T) -> Matrix<T> {
        self.map(|x| x.clone() * s.clone())
    }

    /// Row `i` multiplied by `s[i]`.
    pub fn scale_rows(&self, s: &[T]) -> Matrix<T> {
        let mut out = self.clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone() * s[i].clone();
            }
        }
        out
    }

    /// Column `j` multiplied by `s[j]`.
    pub fn scale_columns(&self, s: &[T]) -> Matrix<T> {
        let mut out = self.clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone() * s[j].clone();
            }
        }
        out
    }

    pub fn sub(&self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a.clone() - b.clone()).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Field::is_zero)
    }

    pub fn convert<U: Field>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        self.map(f)
    }

    pub fn to_f64(&self) -> Matrix<f64> {
        self.map(Field::to_f64)
    }

    /// Fraction-free (Bareiss) elimination for exact kinds, partial pivoting for floats.
    pub fn det(&self) -> Result<T> {
        self.require_square("determinant")?;
        if T::is_exact() {
            Ok(bareiss_det(self.clone()))
        } else {
            Ok(lu_det(self.clone()))
        }
    }

    pub fn inverse(&self) -> Result<Matrix<T>> {
        self.require_square("inverse")?;
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Matrix::<T>::identity(n);
        for col in 0..n {
            let pivot = choose_pivot(&a, col).ok_or(Error::Singular)?;
            if pivot != col {
                a.swap_rows(pivot, col);
                inv.swap_rows(pivot, col);
            }
            let p = a[(col, col)].clone();
            for j in 0..n {
                a[(col, j)] = a[(col, j)].clone() / p.clone();
                inv[(col, j)] = inv[(col, j)].clone() / p.clone();
            }
            for i in 0..n {
                if i == col || a[(i, col)].is_zero() {
                    continue;
                }
                let f = a[(i, col)].clone();
                for j in 0..n {
                    a[(i, j)] = a[(i, j)].clone() - f.clone() * a[(col, j)].clone();
                    inv[(i, j)] = inv[(i, j)].clone() - f.clone() * inv[(col, j)].clone();
                }
            }
        }
        Ok(inv)
    }

    /// `(Mᵀ)⁻¹`, the basis of the dual lattice / dual forms.
    pub fn inverse_transpose(&self) -> Result<Matrix<T>> {
        Ok(self.inverse()?.transpose())
    }

    /// Determinant of the matrix with row `i` and column `j` removed.
    pub fn minor(&self, i: usize, j: usize) -> Result<T> {
        self.require_square("minor")?;
        let n = self.rows;
        if n == 1 {
            return Ok(T::one());
        }
        let data = (0..n)
            .filter(|&r| r != i)
            .flat_map(|r| (0..n).filter(move |&c| c != j).map(move |c| (r, c)))
            .map(|(r, c)| self[(r, c)].clone())
            .collect();
        Matrix { rows: n - 1, cols: n - 1, data }.det()
    }

    /// Matrix of signed cofactors, `(det M)·(Mᵀ)⁻¹` when `M` is invertible.
    pub fn cofactor(&self) -> Result<Matrix<T>> {
        self.require_square("cofactor matrix")?;
        let det = self.det()?;
        if !det.is_zero() {
            return Ok(self.inverse_transpose()?.scale(&det));
        }
        let n = self.rows;
        let mut out = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let m = self.minor(i, j)?;
                out[(i, j)] = if (i + j) % 2 == 0 { m } else { -m };
            }
        }
        Ok(out)
    }

    pub fn rank(&self) -> usize {
        let mut a = self.clone();
        let mut rank = 0;
        for col in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let Some(p) = choose_pivot_from(&a, col, rank) else { continue };
            a.swap_rows(p, rank);
            for i in rank + 1..self.rows {
                if a[(i, col)].is_zero() {
                    continue;
                }
                let f = a[(i, col)].clone() / a[(rank, col)].clone();
                for j in col..self.cols {
                    a[(i, j)] = a[(i, j)].clone() - f.clone() * a[(rank, j)].clone();
                }
            }
            rank += 1;
        }
        rank
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Row-major CSV, one row per line, entries in scalar text form.
    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(|x| x.to_scalar().to_string()).collect();
            let _ = writeln!(s, "{}", line.join(","));
        }
        s
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let rows = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(|l| l.split(',').map(|e| e.trim().parse::<Scalar>()?.to_field::<T>()).collect::<Result<Vec<T>>>())
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_rows(rows)
    }
}

fn choose_pivot<T: Field>(a: &Matrix<T>, col: usize) -> Option<usize> {
    choose_pivot_from(a, col, col)
}

fn choose_pivot_from<T: Field>(a: &Matrix<T>, col: usize, start: usize) -> Option<usize> {
    if T::KIND == ScalarKind::Float {
        let best = (start..a.rows)
            .max_by(|&x, &y| a[(x, col)].abs().cmp_value(&a[(y, col)].abs()))?;
        (!a[(best, col)].is_zero()).then_some(best)
    } else {
        (start..a.rows).find(|&i| !a[(i, col)].is_zero())
    }
}

fn bareiss_det<T: Field>(mut a: Matrix<T>) -> T {
    let n = a.rows;
    if n == 0 {
        return T::one();
    }
    let mut negate = false;
    let mut prev = T::one();
    for k in 0..n - 1 {
        if a[(k, k)].is_zero() {
            match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                Some(p) => {
                    a.swap_rows(p, k);
                    negate = !negate;
                }
                None => return T::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (a[(i, j)].clone() * a[(k, k)].clone() - a[(i, k)].clone() * a[(k, j)].clone())
                    / prev.clone();
                a[(i, j)] = v;
            }
        }
        prev = a[(k, k)].clone();
    }
    let d = a[(n - 1, n - 1)].clone();
    if negate {
        -d
    } else {
        d
    }
}

fn lu_det<T: Field>(mut a: Matrix<T>) -> T {
    let n = a.rows;
    let mut det = T::one();
    for k in 0..n {
        let Some(p) = choose_pivot(&a, k) else { return T::zero() };
        if p != k {
            a.swap_rows(p, k);
            det = -det;
        }
        let pivot = a[(k, k)].clone();
        det = det * pivot.clone();
        for i in k + 1..n {
            let f = a[(i, k)].clone() / pivot.clone();
            for j in k + 1..n {
                a[(i, j)] = a[(i, j)].clone() - f.clone() * a[(k, j)].clone();
            }
        }
    }
    det
}

impl<T: Field> Matrix<T> {
    /// Exact comparison for exact kinds; entrywise `|a - b| <= tol` for floats.
    pub fn approx_eq(&self, other: &Matrix<T>, tol: f64) -> bool {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return false;
        }
        if T::is_exact() {
            return self == other;
        }
        self.data
            .iter()
            .zip(&other.data)
            .all(|(a, b)| (a.to_f64() - b.to_f64()).abs() <= tol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{Quad3, Rational};

    fn rat_matrix(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_i64_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn cofactor_of_identity_and_diagonal() {
        let id = Matrix::<Rational>::identity(3);
        assert_eq!(id.cofactor().unwrap(), id);
        let d = rat_matrix(&[&[2, 0, 0], &[0, 3, 0], &[0, 0, 5]]);
        assert_eq!(d.cofactor().unwrap(), rat_matrix(&[&[15, 0, 0], &[0, 10, 0], &[0, 0, 6]]));
    }

    #[test]
    fn cofactor_two_by_two_matches_minor_expansion() {
        let m = rat_matrix(&[&[3, 7], &[-2, 5]]);
        assert_eq!(m.cofactor().unwrap(), rat_matrix(&[&[5, 2], &[-7, 3]]));
        // singular input goes through the minor expansion
        let s = rat_matrix(&[&[1, 2], &[2, 4]]);
        assert_eq!(s.cofactor().unwrap(), rat_matrix(&[&[4, -2], &[-2, 1]]));
    }

    #[test]
    fn cofactor_rejects_non_square() {
        let m = rat_matrix(&[&[1, 2, 3], &[4, 5, 6]]);
        assert!(matches!(m.cofactor(), Err(Error::Shape(_))));
    }

    #[test]
    fn determinant_with_zero_pivot() {
        let m = rat_matrix(&[&[0, 1, 2], &[1, 0, 3], &[4, -3, 8]]);
        assert_eq!(m.det().unwrap(), Rational::from_i64(-2));
        assert_eq!(m.to_f64().det().unwrap(), -2.0);
    }

    #[test]
    fn inverse_over_quad3() {
        let s3 = Quad3::from_ratios((0, 1), (1, 1));
        let m = Matrix::from_rows(vec![
            vec![s3.clone(), Quad3::from(1)],
            vec![Quad3::from(1), s3.clone()],
        ])
        .unwrap();
        let prod = m.mul(&m.inverse().unwrap());
        assert_eq!(prod, Matrix::identity(2));
    }

    #[test]
    fn singular_inverse_errors() {
        let s = rat_matrix(&[&[1, 2], &[2, 4]]);
        assert_eq!(s.inverse(), Err(Error::Singular));
        assert_eq!(s.rank(), 1);
    }

    #[test]
    fn csv_round_trip() {
        let m: Matrix<Quad3> = Matrix::from_csv("1/2, 2/3*sqrt3\n-1, 1-sqrt3\n").unwrap();
        assert_eq!(Matrix::<Quad3>::from_csv(&m.to_csv()).unwrap(), m);
        assert_eq!(m.to_csv(), "1/2,2/3*sqrt3\n-1,1-1*sqrt3\n");
    }
}
