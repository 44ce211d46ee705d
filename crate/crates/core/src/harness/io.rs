//! TOML files for bodies and lattices.
//!
//! ```toml
//! kind = "rational"            # rational | quad3 | float
//! forms = [[1, 0], ["1/2", 1]] # one linear form per row
//! bounds = ["1", "3/4"]
//! ```
//!
//! A lattice file holds `basis = [[...], ...]`, one basis vector per entry.
//! Entries are TOML integers, floats, or strings in scalar syntax such as `"2/3*sqrt3"`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{Lattice, Parallelepiped};
use crate::numeric::{Field, Matrix, Scalar, ScalarKind};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
enum Entry {
    Int(i64),
    Float(f64),
    Text(String),
}

impl Entry {
    fn to_scalar(&self) -> Result<Scalar> {
        match self {
            Entry::Int(n) => Ok(Scalar::Rational(crate::numeric::Rational::from_i64(*n))),
            Entry::Float(x) => Ok(Scalar::Float(*x)),
            Entry::Text(s) => s.parse(),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct BodyFile {
    kind: Option<ScalarKind>,
    forms: Vec<Vec<Entry>>,
    bounds: Vec<Entry>,
}

#[derive(Debug, Serialize, Deserialize)]
struct LatticeFile {
    kind: Option<ScalarKind>,
    basis: Vec<Vec<Entry>>,
}

fn parse_toml<D: serde::de::DeserializeOwned>(text: &str) -> Result<D> {
    toml::from_str(text).map_err(|e| Error::Parse(e.message().to_string()))
}

fn scalars(rows: &[Vec<Entry>]) -> Result<Vec<Vec<Scalar>>> {
    rows.iter().map(|r| r.iter().map(Entry::to_scalar).collect()).collect()
}

/// Narrowest kind holding every entry, unless the file names one.
fn infer_kind(declared: Option<ScalarKind>, entries: &[Scalar]) -> ScalarKind {
    declared.unwrap_or_else(|| {
        if entries.iter().any(|s| s.kind() == ScalarKind::Float) {
            ScalarKind::Float
        } else if entries.iter().any(|s| s.kind() == ScalarKind::Quad3) {
            ScalarKind::Quad3
        } else {
            ScalarKind::Rational
        }
    })
}

fn typed_matrix<T: Field>(rows: &[Vec<Scalar>]) -> Result<Matrix<T>> {
    let typed = rows.iter().map(|r| r.iter().map(Scalar::to_field).collect::<Result<Vec<T>>>()).collect::<Result<_>>()?;
    Matrix::from_rows(typed)
}

pub fn body_kind(text: &str) -> Result<ScalarKind> {
    let f: BodyFile = parse_toml(text)?;
    let mut all: Vec<Scalar> = scalars(&f.forms)?.into_iter().flatten().collect();
    all.extend(f.bounds.iter().map(Entry::to_scalar).collect::<Result<Vec<_>>>()?);
    Ok(infer_kind(f.kind, &all))
}

pub fn lattice_kind(text: &str) -> Result<ScalarKind> {
    let f: LatticeFile = parse_toml(text)?;
    let all: Vec<Scalar> = scalars(&f.basis)?.into_iter().flatten().collect();
    Ok(infer_kind(f.kind, &all))
}

pub fn parse_body<T: Field>(text: &str) -> Result<Parallelepiped<T>> {
    let f: BodyFile = parse_toml(text)?;
    let forms = typed_matrix(&scalars(&f.forms)?)?;
    let bounds = f.bounds.iter().map(|e| e.to_scalar()?.to_field()).collect::<Result<Vec<T>>>()?;
    Parallelepiped::new(forms, bounds)
}

pub fn parse_lattice<T: Field>(text: &str) -> Result<Lattice<T>> {
    let f: LatticeFile = parse_toml(text)?;
    let vectors: Matrix<T> = typed_matrix(&scalars(&f.basis)?)?;
    Lattice::new(vectors.transpose())
}

fn text_rows<T: Field>(m: &Matrix<T>) -> Vec<Vec<Entry>> {
    m.to_rows().iter().map(|r| r.iter().map(|x| Entry::Text(x.to_scalar().to_string())).collect()).collect()
}

pub fn body_to_toml<T: Field>(body: &Parallelepiped<T>) -> Result<String> {
    let f = BodyFile {
        kind: Some(T::KIND),
        forms: text_rows(body.forms()),
        bounds: body.bounds().iter().map(|x| Entry::Text(x.to_scalar().to_string())).collect(),
    };
    toml::to_string(&f).map_err(|e| Error::Invalid(e.to_string()))
}

pub fn lattice_to_toml<T: Field>(lattice: &Lattice<T>) -> Result<String> {
    let f = LatticeFile { kind: Some(T::KIND), basis: text_rows(&lattice.basis().transpose()) };
    toml::to_string(&f).map_err(|e| Error::Invalid(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{Quad3, Rational};

    #[test]
    fn body_round_trip() {
        let text = "forms = [[1, 0], [\"1/2\", 1]]\nbounds = [\"1\", \"3/4\"]\n";
        assert_eq!(body_kind(text).unwrap(), ScalarKind::Rational);
        let b: Parallelepiped<Rational> = parse_body(text).unwrap();
        assert_eq!(b.bounds()[1], Rational::new(3.into(), 4.into()));
        let again: Parallelepiped<Rational> = parse_body(&body_to_toml(&b).unwrap()).unwrap();
        assert_eq!(again, b);
    }

    #[test]
    fn quadratic_entries() {
        let text = "basis = [[\"2/3*sqrt3\", 0], [0, 1]]\n";
        assert_eq!(lattice_kind(text).unwrap(), ScalarKind::Quad3);
        let l: Lattice<Quad3> = parse_lattice(text).unwrap();
        assert_eq!(l.basis()[(0, 0)], Quad3::sqrt3_times(Rational::new(2.into(), 3.into())));
        assert!(parse_lattice::<Rational>(text).is_err());
        let back: Lattice<Quad3> = parse_lattice(&lattice_to_toml(&l).unwrap()).unwrap();
        assert_eq!(back, l);
    }

    #[test]
    fn basis_vectors_are_columns() {
        let l: Lattice<Rational> = parse_lattice("basis = [[1, 2], [0, 3]]").unwrap();
        assert_eq!(l.point(&[1, 0]), vec![Rational::from_i64(1), Rational::from_i64(2)]);
    }

    #[test]
    fn malformed_files() {
        assert!(parse_body::<f64>("forms = [[1]]").is_err());
        assert!(parse_body::<Rational>("forms = [[1, 0], [0, 1]]\nbounds = [1, 0]").is_err());
        assert!(body_kind("kind = \"octonion\"\nforms = []\nbounds = []").is_err());
    }
}
