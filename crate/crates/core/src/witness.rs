//! The three-dimensional extremal examples over ℚ(√3).
//!
//! For `0 < ε ≤ 1/2` the cube `Π = [−ε, ε]³` with `Π* = [−ε², ε²]³` and the
//! lattices `Λ₁ = Aℤ³`, `Λ₂ = Bℤ³` attain `μ₁(Π, Λ₁) = 2/√3` and
//! `μ₂(Π, Λ₂) = 5/4` while `μ₁(Π*, Λ_i*) = 1`. Every certificate below is a
//! sign decision in ℚ(√3).

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{successive_minima, Lattice, Parallelepiped};
use crate::numeric::{Field, Matrix, Quad3, Rational};

const SWEEP: i64 = 3;

/// Matrices and bodies of the example for one `ε`.
#[derive(Clone, Debug, PartialEq)]
pub struct WitnessInstance {
    pub epsilon: Rational,
    pub body: Parallelepiped<Quad3>,
    pub body_star: Parallelepiped<Quad3>,
    pub a: Matrix<Quad3>,
    pub b: Matrix<Quad3>,
    /// `(Aᵀ)⁻¹`.
    pub a_dual: Matrix<Quad3>,
    /// `(Bᵀ)⁻¹`.
    pub b_dual: Matrix<Quad3>,
}

fn q(x: Rational) -> Quad3 {
    Quad3::from(x)
}

fn over_root3(x: Rational) -> Quad3 {
    Quad3::sqrt3_times(x / Rational::from_i64(3))
}

fn ri(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn build_witness(epsilon: &Rational) -> Result<WitnessInstance> {
    let e = epsilon.clone();
    if e.sign() != Ordering::Greater || e > ri(1, 2) {
        return Err(Error::Invalid(format!("ε = {e} outside (0, 1/2]")));
    }
    let far = q(Rational::from_i64(1) / (Rational::from_i64(3) * e.clone() * e.clone()));
    let e2 = q(e.clone() * e.clone());
    let inv = Rational::from_i64(1) / e.clone();
    let a = Matrix::from_columns(vec![
        vec![over_root3(e.clone()), over_root3(e.clone()), over_root3(-e.clone() * ri(2, 1))],
        vec![over_root3(e.clone() * ri(2, 1)), over_root3(-e.clone()), over_root3(-e.clone())],
        vec![far.clone(); 3],
    ])?;
    let b = Matrix::from_columns(vec![
        vec![q(e.clone() * ri(1, 2)), q(e.clone() * ri(1, 2)), q(-e.clone())],
        vec![q(e.clone() * ri(5, 4)), q(e.clone() * ri(-3, 4)), q(e.clone() * ri(-1, 2))],
        vec![far; 3],
    ])?;
    let zero = Quad3::from(0);
    let a_dual = Matrix::from_columns(vec![
        vec![zero.clone(), over_root3(inv.clone()), over_root3(-inv.clone())],
        vec![over_root3(inv.clone()), over_root3(-inv.clone()), zero.clone()],
        vec![e2.clone(); 3],
    ])?;
    let b_dual = Matrix::from_columns(vec![
        vec![q(inv.clone() * ri(1, 12)), q(inv.clone() * ri(7, 12)), q(inv.clone() * ri(-2, 3))],
        vec![q(inv.clone() * ri(1, 2)), q(inv.clone() * ri(-1, 2)), zero],
        vec![e2.clone(); 3],
    ])?;
    for (name, m, dual) in [("A", &a, &a_dual), ("B", &b, &b_dual)] {
        if m.transpose().mul(dual) != Matrix::identity(3) {
            return Err(Error::Invalid(format!("{name}ᵀ·{name}dual ≠ I")));
        }
        if m.det()?.abs() != Quad3::from(1) {
            return Err(Error::Invalid(format!("|det {name}| ≠ 1")));
        }
    }
    let body = Parallelepiped::axis_box(vec![q(e.clone()); 3])?;
    let body_star = body.pseudo_compound()?;
    Ok(WitnessInstance { epsilon: e, body, body_star, a, b, a_dual, b_dual })
}

/// `ν₁ = 2/√3`.
pub fn nu1() -> Quad3 {
    Quad3::sqrt3_times(ri(2, 3))
}

/// `ν₂ = 5/4`.
pub fn nu2() -> Quad3 {
    q(ri(5, 4))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Region {
    Closed,
    Interior,
}

/// One certified identity `region(ν·K) ∩ MΛ = expected`, in lattice coordinates.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SetIdentity {
    pub name: String,
    pub scale: String,
    pub region: Region,
    pub members: Vec<[i64; 3]>,
    /// `|k_j|` bounds derived from the rows of `M⁻¹`.
    pub proof_bounds: [i64; 3],
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WitnessCertificate {
    pub epsilon: String,
    pub identities: Vec<SetIdentity>,
    pub sweep: i64,
}

struct Case<'a> {
    name: &'static str,
    body: &'a Parallelepiped<Quad3>,
    scale: Quad3,
    lattice: &'a Matrix<Quad3>,
    region: Region,
    expected: Vec<[i64; 3]>,
}

fn symmetric(points: &[[i64; 3]]) -> Vec<[i64; 3]> {
    let mut out = vec![[0, 0, 0]];
    for p in points {
        out.push(*p);
        out.push([-p[0], -p[1], -p[2]]);
    }
    out
}

/// Certifies every set identity of the example by exhaustive exact enumeration.
pub fn verify_example_points(w: &WitnessInstance) -> Result<WitnessCertificate> {
    let one = Quad3::from(1);
    let ab_pair = |m: i64| symmetric(&[[1, 0, 0], [0, 1, 0], [1, -m, 0]]);
    let specs = vec![
        Case {
            name: "nu1*Pi cap L1",
            body: &w.body,
            scale: nu1(),
            lattice: &w.a,
            region: Region::Closed,
            expected: ab_pair(1),
        },
        Case {
            name: "int(nu1*Pi) cap L1",
            body: &w.body,
            scale: nu1(),
            lattice: &w.a,
            region: Region::Interior,
            expected: symmetric(&[]),
        },
        Case {
            name: "int(Pi) cap L2",
            body: &w.body,
            scale: one.clone(),
            lattice: &w.b,
            region: Region::Interior,
            expected: symmetric(&[]),
        },
        Case {
            name: "nu2*Pi cap L2",
            body: &w.body,
            scale: nu2(),
            lattice: &w.b,
            region: Region::Closed,
            expected: ab_pair(1),
        },
        Case {
            name: "int(nu2*Pi) cap L2",
            body: &w.body,
            scale: nu2(),
            lattice: &w.b,
            region: Region::Interior,
            expected: symmetric(&[[1, 0, 0]]),
        },
        Case {
            name: "Pi cap L2",
            body: &w.body,
            scale: one.clone(),
            lattice: &w.b,
            region: Region::Closed,
            expected: symmetric(&[[1, 0, 0]]),
        },
        Case {
            name: "Pi* cap L1*",
            body: &w.body_star,
            scale: one.clone(),
            lattice: &w.a_dual,
            region: Region::Closed,
            expected: symmetric(&[[0, 0, 1]]),
        },
        Case {
            name: "Pi* cap L2*",
            body: &w.body_star,
            scale: one.clone(),
            lattice: &w.b_dual,
            region: Region::Closed,
            expected: symmetric(&[[0, 0, 1]]),
        },
        Case {
            name: "int(Pi*) cap L1*",
            body: &w.body_star,
            scale: one.clone(),
            lattice: &w.a_dual,
            region: Region::Interior,
            expected: symmetric(&[]),
        },
        Case {
            name: "int(Pi*) cap L2*",
            body: &w.body_star,
            scale: one,
            lattice: &w.b_dual,
            region: Region::Interior,
            expected: symmetric(&[]),
        },
    ];
    if w.a_dual.column(2) != w.b_dual.column(2) {
        return Err(Error::WitnessMismatch { identity: "a3* = b3*".into(), triple: [0, 0, 1] });
    }
    let identities = specs.iter().map(certify).collect::<Result<Vec<_>>>()?;
    Ok(WitnessCertificate { epsilon: w.epsilon.to_string(), identities, sweep: SWEEP })
}

fn certify(case: &Case<'_>) -> Result<SetIdentity> {
    let body = case.body.scaled(&case.scale)?;
    let m = body.canonical_map().mul(case.lattice);
    let bounds = coordinate_bounds(&m)?;
    let expected: BTreeSet<[i64; 3]> = case.expected.iter().copied().collect();
    let inside = |k: [i64; 3]| -> bool {
        let g = m.mul_i64(&k).into_iter().map(|x| x.abs()).fold(Quad3::from(0), Field::max_value);
        match case.region {
            Region::Closed => g <= Quad3::from(1),
            Region::Interior => g < Quad3::from(1),
        }
    };
    let mismatch = |k: [i64; 3]| Error::WitnessMismatch { identity: case.name.to_string(), triple: k };
    let mut found = BTreeSet::new();
    let reach = [0, 1, 2].map(|j| bounds[j].max(SWEEP));
    for k1 in -reach[0]..=reach[0] {
        for k2 in -reach[1]..=reach[1] {
            for k3 in -reach[2]..=reach[2] {
                let k = [k1, k2, k3];
                let within_proof = (0..3).all(|j| k[j].abs() <= bounds[j]);
                if inside(k) {
                    if !within_proof {
                        return Err(mismatch(k));
                    }
                    found.insert(k);
                }
            }
        }
    }
    if let Some(k) = found.symmetric_difference(&expected).next() {
        return Err(mismatch(*k));
    }
    Ok(SetIdentity {
        name: case.name.to_string(),
        scale: case.scale.to_string(),
        region: case.region,
        members: found.into_iter().collect(),
        proof_bounds: bounds,
    })
}

/// `|k_j| ≤ Σ_i |(M⁻¹)_{ji}|` for `|Mk|_∞ ≤ 1`.
fn coordinate_bounds(m: &Matrix<Quad3>) -> Result<[i64; 3]> {
    let inv = m.inverse()?;
    let mut out = [0; 3];
    for (j, slot) in out.iter_mut().enumerate() {
        let s = inv.row(j).iter().fold(Quad3::from(0), |acc, x| acc + x.abs());
        *slot = s.floor_i64().ok_or_else(|| Error::Invalid("bound overflow".into()))?;
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MinimumEntry {
    pub name: String,
    pub k: usize,
    pub value: String,
    pub witness: Vec<i64>,
    #[serde(skip)]
    pub exact: Quad3,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SharpnessReport {
    pub epsilon: String,
    pub certificate: WitnessCertificate,
    pub minima: Vec<MinimumEntry>,
}

impl SharpnessReport {
    pub fn value(&self, name: &str) -> Option<&Quad3> {
        self.minima.iter().find(|m| m.name == name).map(|m| &m.exact)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "epsilon = {}", self.epsilon);
        for id in &self.certificate.identities {
            let pts: Vec<String> = id.members.iter().map(|k| format!("({},{},{})", k[0], k[1], k[2])).collect();
            let _ = writeln!(s, "certified {} [scale {}]: {{{}}}", id.name, id.scale, pts.join(" "));
        }
        for m in &self.minima {
            let _ = writeln!(s, "mu{}({}) = {}", m.k, m.name, m.value);
        }
        s
    }
}

/// Exact minima of the example, from the certified sets, cross-checked by enumeration
/// in both the `Λ` form and the `ℤ³` form `Π₁ = A⁻¹Π`, `Π₂ = B⁻¹Π`.
pub fn sharpness_report(epsilon: &Rational) -> Result<SharpnessReport> {
    let w = build_witness(epsilon)?;
    let certificate = verify_example_points(&w)?;
    let cases: [(&str, &Parallelepiped<Quad3>, &Matrix<Quad3>, usize, Quad3); 5] = [
        ("Pi*, L1*", &w.body_star, &w.a_dual, 1, Quad3::from(1)),
        ("Pi*, L2*", &w.body_star, &w.b_dual, 1, Quad3::from(1)),
        ("Pi, L2", &w.body, &w.b, 1, Quad3::from(1)),
        ("Pi, L1", &w.body, &w.a, 1, nu1()),
        ("Pi, L2", &w.body, &w.b, 2, nu2()),
    ];
    let mut minima = Vec::new();
    for (name, body, basis, k, expected) in cases {
        let lattice = Lattice::new(basis.clone())?;
        let profile = successive_minima(body, &lattice, k)?;
        let value = profile.get(k).clone();
        let reformulated = successive_minima(&body.image(&basis.inverse()?)?, &Lattice::integer(3), k)?;
        if value != expected || reformulated.values != profile.values {
            return Err(Error::WitnessMismatch {
                identity: format!("mu{k}({name})"),
                triple: to_triple(&profile.witnesses[k - 1]),
            });
        }
        minima.push(MinimumEntry {
            name: name.to_string(),
            k,
            value: value.to_string(),
            witness: profile.witnesses[k - 1].clone(),
            exact: value,
        });
    }
    Ok(SharpnessReport { epsilon: epsilon.to_string(), certificate, minima })
}

fn to_triple(k: &[i64]) -> [i64; 3] {
    [k[0], k[1], k[2]]
}

/// `Π₁ = A⁻¹Π` or `Π₂ = B⁻¹Π`, whose minima against `ℤ³` match the `Λ` form.
pub fn reformulated_body(w: &WitnessInstance, which: u8) -> Result<Parallelepiped<Quad3>> {
    match which {
        1 => w.body.image(&w.a.inverse()?),
        2 => w.body.image(&w.b.inverse()?),
        _ => Err(Error::Invalid(format!("witness body {which}; expected 1 or 2"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrices_at_one_half() {
        let w = build_witness(&ri(1, 2)).unwrap();
        assert_eq!(w.a.column(2), vec![q(ri(4, 3)); 3]);
        assert_eq!(w.a_dual.column(2), vec![q(ri(1, 4)); 3]);
        assert_eq!(w.body_star.bounds(), &[q(ri(1, 4)), q(ri(1, 4)), q(ri(1, 4))]);
    }

    #[test]
    fn epsilon_range() {
        assert!(build_witness(&ri(3, 4)).is_err());
        assert!(build_witness(&ri(0, 1)).is_err());
        assert!(build_witness(&ri(1, 97)).is_ok());
    }

    #[test]
    fn proof_bounds_match_hand_analysis() {
        let w = build_witness(&ri(1, 2)).unwrap();
        let m = w.body.scaled(&nu1()).unwrap().canonical_map().mul(&w.a);
        // |k3| ≤ 2√3ε³ < 1 and |k1|, |k2| ≤ 4/3
        assert_eq!(coordinate_bounds(&m).unwrap(), [1, 1, 0]);
    }

    #[test]
    fn certificates_at_two_epsilons() {
        for e in [ri(1, 2), ri(1, 4)] {
            let c = verify_example_points(&build_witness(&e).unwrap()).unwrap();
            assert_eq!(c.identities.len(), 10);
        }
    }

    #[test]
    fn tampered_lattice_is_caught() {
        let mut w = build_witness(&ri(1, 2)).unwrap();
        for i in 0..3 {
            w.b[(i, 0)] = w.b[(i, 0)].clone() * Quad3::from(ri(9, 8));
        }
        assert!(matches!(verify_example_points(&w), Err(Error::WitnessMismatch { .. })));
    }

    #[test]
    fn report_text_contains_exact_constants() {
        let r = sharpness_report(&ri(1, 2)).unwrap();
        let t = r.to_text();
        assert!(t.contains("2/3*sqrt3"));
        assert!(t.contains("5/4"));
    }
}
