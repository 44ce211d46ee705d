#![allow(dead_code)]

use geonum::lattice::{Lattice, Parallelepiped};
use geonum::numeric::{Field, Matrix, Rational};
use rand::Rng;

pub fn r(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Minima by scanning every `k` with `|k_i| ≤ reach`, sorting by exact gauge and
/// keeping the first `k_max` vectors that raise the rank.
pub fn brute_force_minima<T: Field>(body: &Parallelepiped<T>, lattice: &Lattice<T>, k_max: usize, reach: i64) -> Vec<T> {
    let d = body.dim();
    let mut pts: Vec<(T, Vec<i64>)> = Vec::new();
    let mut k = vec![-reach; d];
    loop {
        if k.iter().any(|&x| x != 0) {
            pts.push((body.gauge(&lattice.point(&k)), k.clone()));
        }
        let mut i = 0;
        while i < d && k[i] == reach {
            k[i] = -reach;
            i += 1;
        }
        if i == d {
            break;
        }
        k[i] += 1;
    }
    pts.sort_by(|a, b| a.0.cmp_value(&b.0));
    let mut chosen: Vec<Vec<i64>> = Vec::new();
    let mut out = Vec::new();
    for (g, k) in pts {
        let mut rows = chosen.clone();
        rows.push(k.clone());
        if Matrix::<Rational>::from_i64_rows(&rows).unwrap().rank() == rows.len() {
            chosen = rows;
            out.push(g);
            if out.len() == k_max {
                break;
            }
        }
    }
    out
}

/// Largest `|k_j|` of a point with gauge at most `mu`, from the rows of `(diag(1/η)·H·B)⁻¹`.
pub fn coordinate_reach(body: &Parallelepiped<Rational>, lattice: &Lattice<Rational>, mu: &Rational) -> f64 {
    let m = body.canonical_map().mul(lattice.basis()).inverse().unwrap();
    (0..body.dim())
        .map(|j| m.row(j).iter().map(|x| x.abs().to_f64()).sum::<f64>() * mu.to_f64())
        .fold(0.0, f64::max)
}

/// Monte Carlo slab estimate of `vol_{d−1}([-1,1]^d ∩ a⊥)` and its standard error.
pub fn slab_estimate(a: &[f64], h: f64, samples: u64, rng: &mut impl Rng) -> (f64, f64) {
    let d = a.len();
    let norm = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let mut hits = 0u64;
    let mut x = vec![0.0; d];
    for _ in 0..samples {
        for xi in x.iter_mut() {
            *xi = rng.gen_range(-1.0..1.0);
        }
        let s: f64 = x.iter().zip(a).map(|(p, q)| p * q).sum();
        if s.abs() <= 0.5 * h * norm {
            hits += 1;
        }
    }
    let p = hits as f64 / samples as f64;
    let scale = 2f64.powi(d as i32) / h;
    (p * scale, (p * (1.0 - p) / samples as f64).sqrt() * scale)
}

pub fn random_int_matrix(d: usize, lo: i64, hi: i64, rng: &mut impl Rng) -> Matrix<Rational> {
    loop {
        let rows: Vec<Vec<i64>> = (0..d).map(|_| (0..d).map(|_| rng.gen_range(lo..=hi)).collect()).collect();
        let m = Matrix::<Rational>::from_i64_rows(&rows).unwrap();
        if !Field::is_zero(&m.det().unwrap()) {
            return m;
        }
    }
}

pub fn random_bounds(d: usize, rng: &mut impl Rng) -> Vec<Rational> {
    (0..d).map(|_| r(rng.gen_range(1..=12), rng.gen_range(1..=6))).collect()
}

/// A body with `det H = 1`, built from a random unimodular matrix.
pub fn random_normalized_body(d: usize, rng: &mut impl Rng) -> Parallelepiped<Rational> {
    let h = geonum::harness::random_unimodular(d, rng).map(|&x| Rational::from_i64(x));
    Parallelepiped::new(h, random_bounds(d, rng)).unwrap()
}

pub fn random_rationals(n: usize, rng: &mut impl Rng) -> Vec<Rational> {
    (0..n).map(|_| r(rng.gen_range(-20..=20), rng.gen_range(1..=9))).collect()
}
