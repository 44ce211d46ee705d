use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::Parallelepiped;
use crate::numeric::{norm_sq, Field, Matrix, ToleranceConfig};
use crate::sections::v_tau;

/// Which surface a τ tuple is projected onto.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TauMode {
    /// `Στ_i² = ∏τ_i²`.
    Plain,
    /// `Στ_i² = v_τ²·∏τ_i²`.
    Sharp,
}

/// Positive weights `τ_1..τ_d` of a hyperbolic shift.
#[derive(Clone, Debug, PartialEq)]
pub struct TauTuple<T>(Vec<T>);

impl<T: Field> TauTuple<T> {
    pub fn new(tau: Vec<T>) -> Result<Self> {
        if tau.len() < 2 {
            return Err(Error::Dimension { got: tau.len(), min: 2, max: usize::MAX });
        }
        if tau.iter().any(|t| t.sign() != Ordering::Greater) {
            return Err(Error::Invalid("tau entries must be positive".into()));
        }
        Ok(TauTuple(tau))
    }

    pub fn as_slice(&self) -> &[T] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<T> {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn product(&self) -> T {
        self.0.iter().fold(T::one(), |acc, t| acc * t.clone())
    }

    /// `v²` for the mode: 1 for plain, `v_τ²` for sharp.
    pub fn weight_sq(&self, mode: TauMode) -> Result<T> {
        match mode {
            TauMode::Plain => Ok(T::one()),
            TauMode::Sharp => Ok(v_tau(&self.0)?.square()),
        }
    }

    /// `λ^{2(d−1)}` for the unique `λ` putting `λτ` on the surface of `mode`.
    pub fn scale_power(&self, mode: TauMode) -> Result<T> {
        let p = self.product();
        Ok(norm_sq(&self.0) / (self.weight_sq(mode)? * p.clone() * p))
    }

    /// `λ` itself, when the exponent `1/(2(d−1))` stays inside `T`.
    pub fn scale_factor(&self, mode: TauMode) -> Result<T> {
        let x = self.scale_power(mode)?;
        let n = 2 * (self.dim() as u32 - 1);
        x.nth_root(n).ok_or_else(|| Error::NotRepresentable(format!("({x})^(1/{n})")))
    }

    pub fn normalized(&self, mode: TauMode) -> Result<Self> {
        let lambda = self.scale_factor(mode)?;
        Ok(TauTuple(self.0.iter().map(|t| t.clone() * lambda.clone()).collect()))
    }

    /// Exact surface test for exact kinds, relative slack for floats.
    pub fn on_surface(&self, mode: TauMode, tol: &ToleranceConfig) -> Result<bool> {
        let x = self.scale_power(mode)?;
        if T::is_exact() {
            Ok(x == T::one())
        } else {
            Ok((x.to_f64() - 1.0).abs() <= tol.slack(1.0))
        }
    }

    /// `(∏τ_i)^{−1}·τ`, the positive vertex of `det(D_τ)^{−1}·D_τ·B_d`.
    pub fn vertex(&self) -> Vec<T> {
        tau_vertex(&self.0)
    }
}

pub fn normalize_tau<T: Field>(tau: &[T], mode: TauMode) -> Result<Vec<T>> {
    Ok(TauTuple::new(tau.to_vec())?.normalized(mode)?.into_vec())
}

pub fn tau_vertex<T: Field>(tau: &[T]) -> Vec<T> {
    let p = tau.iter().fold(T::one(), |acc, t| acc * t.clone());
    tau.iter().map(|t| t.clone() / p.clone()).collect()
}

/// `H_{τ,Π} = A_Π⁻¹·diag(τ)·A_Π` with `A_Π = diag(1/η)·H`.
pub fn hyperbolic_map<T: Field>(body: &Parallelepiped<T>, tau: &[T]) -> Result<Matrix<T>> {
    if tau.len() != body.dim() {
        return Err(Error::Shape("tau length differs from dimension".into()));
    }
    let a = body.canonical_map();
    Ok(a.inverse()?.mul(&Matrix::diag(tau)).mul(&a))
}
