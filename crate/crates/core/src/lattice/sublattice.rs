use num_bigint::BigInt;
use num_integer::Integer;

use crate::error::{Error, Result};

/// A rank `d - 1` sublattice of `ℤ^d`, given by integer generators.
#[derive(Clone, Debug, PartialEq)]
pub struct EmbeddedLattice {
    pub generators: Vec<Vec<i64>>,
}

impl EmbeddedLattice {
    pub fn ambient_dim(&self) -> usize {
        self.generators.first().map_or(0, Vec::len)
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    /// Determinant of the Gram matrix, the squared covolume.
    pub fn gram_det(&self) -> BigInt {
        let n = self.rank();
        let gram: Vec<Vec<BigInt>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        self.generators[i]
                            .iter()
                            .zip(&self.generators[j])
                            .map(|(a, b)| BigInt::from(*a) * b)
                            .sum()
                    })
                    .collect()
            })
            .collect();
        bareiss_det(gram)
    }

    pub fn covolume(&self) -> f64 {
        crate::numeric::Field::to_f64(&crate::numeric::Rational::from_integer(self.gram_det())).sqrt()
    }
}

/// A basis of `ℤ^d ∩ v⊥` for primitive `v`.
///
/// Column operations by extended gcd build a unimodular `U` with `vᵀU = (±1, 0, …, 0)`;
/// the remaining columns of `U` span the kernel. Its covolume is `|v|`.
pub fn orthogonal_sublattice(v: &[i64]) -> Result<EmbeddedLattice> {
    let d = v.len();
    if d < 2 {
        return Err(Error::Dimension { got: d, min: 2, max: usize::MAX });
    }
    let g = v.iter().fold(0i64, |acc, &x| acc.gcd(&x));
    if g != 1 {
        return Err(Error::NotPrimitive(v.to_vec()));
    }
    let mut w: Vec<i128> = v.iter().map(|&x| x as i128).collect();
    let mut cols: Vec<Vec<i128>> = (0..d).map(|j| (0..d).map(|i| i128::from(i == j)).collect()).collect();
    for j in 1..d {
        let (a, b) = (w[0], w[j]);
        if b == 0 {
            continue;
        }
        let e = a.extended_gcd(&b);
        let (g, x, y) = (e.gcd, e.x, e.y);
        let (c0, cj) = (cols[0].clone(), cols[j].clone());
        cols[0] = c0.iter().zip(&cj).map(|(p, q)| x * p + y * q).collect();
        cols[j] = c0.iter().zip(&cj).map(|(p, q)| (-b / g) * p + (a / g) * q).collect();
        w[0] = g;
        w[j] = 0;
    }
    let generators = cols[1..]
        .iter()
        .map(|c| {
            c.iter()
                .map(|&x| i64::try_from(x).map_err(|_| Error::Invalid("sublattice entry overflow".into())))
                .collect::<Result<Vec<i64>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(EmbeddedLattice { generators })
}

fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut sign = 1;
    let mut prev = BigInt::from(1);
    for k in 0..n - 1 {
        if m[k][k] == BigInt::from(0) {
            match (k + 1..n).find(|&i| m[i][k] != BigInt::from(0)) {
                Some(i) => {
                    m.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::from(0),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    &m[n - 1][n - 1] * sign
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(v: &[i64]) -> EmbeddedLattice {
        let l = orthogonal_sublattice(v).unwrap();
        assert_eq!(l.rank(), v.len() - 1);
        for g in &l.generators {
            assert_eq!(g.iter().zip(v).map(|(a, b)| a * b).sum::<i64>(), 0);
        }
        let norm_sq: i64 = v.iter().map(|x| x * x).sum();
        assert_eq!(l.gram_det(), BigInt::from(norm_sq));
        l
    }

    #[test]
    fn axis_vector() {
        assert_eq!(check(&[0, 0, 1]).gram_det(), BigInt::from(1));
    }

    #[test]
    fn all_ones() {
        assert!((check(&[1, 1, 1]).covolume() - 3f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn plane() {
        let l = check(&[2, 3]);
        let g = &l.generators[0];
        assert!(g == &vec![3, -2] || g == &vec![-3, 2]);
    }

    #[test]
    fn non_primitive_rejected() {
        assert_eq!(orthogonal_sublattice(&[2, 4, 6]), Err(Error::NotPrimitive(vec![2, 4, 6])));
        assert!(orthogonal_sublattice(&[0, 0]).is_err());
    }

    #[test]
    fn negative_and_mixed_entries() {
        check(&[-6, 10, 15]);
        check(&[0, -1, 0, 0]);
        check(&[7, 0, -5, 3, 2]);
    }
}
