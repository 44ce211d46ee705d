//! Hand-derived reference values, frozen.

mod common;

use std::cmp::Ordering;

use geonum::harness::{gen_instance, random_unimodular, run_suite, InstanceStyle, TrialConfig};
use geonum::lattice::{orthogonal_sublattice, successive_minima, Lattice, Parallelepiped};
use geonum::numeric::{monotone_root, Field, Matrix, Quad3, Rational};
use geonum::sections::{cube_section_volume, first_minimum_section_dual, section3_area, v_tau, SectionDual};
use geonum::transference::{
    c_d, check_claims, mahler_dual_box, normalize_tau, t2_root, tau_vertex, ClaimConfig, ClaimId, Outcome, TauMode,
    TauTuple,
};
use geonum::witness::{build_witness, reformulated_body};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;

#[test]
fn cofactor_of_two_by_two() {
    let m = Matrix::<Rational>::from_i64_rows(&[vec![3, 5], vec![7, 11]]).unwrap();
    let expected = Matrix::<Rational>::from_i64_rows(&[vec![11, -7], vec![-5, 3]]).unwrap();
    assert_eq!(m.cofactor().unwrap(), expected);
}

#[test]
fn cofactor_of_diagonal() {
    let m = Matrix::diag(&[r(2, 1), r(3, 1), r(5, 1)]);
    assert_eq!(m.cofactor().unwrap(), Matrix::diag(&[r(15, 1), r(10, 1), r(6, 1)]));
}

#[test]
fn monotone_root_of_the_c3_quadratic() {
    let s = monotone_root(|s| s * s - (1.0 + 2f64.sqrt()), 1.0, 2.0, 1e-15).unwrap();
    assert!((s - 1.553_773_974_030_037).abs() < 1e-12);
}

#[test]
fn quadratic_signs() {
    assert_eq!(Quad3::from_ratios((5, 1), (-3, 1)).quad_sign(), Ordering::Less);
    assert_eq!(Quad3::from_ratios((2, 1), (-1, 1)).quad_sign(), Ordering::Greater);
    assert_eq!(Quad3::from_ratios((0, 1), (0, 1)).quad_sign(), Ordering::Equal);
}

#[test]
fn dual_of_the_first_witness_lattice() {
    let w = build_witness(&r(1, 2)).unwrap();
    let dual = Lattice::new(w.a.clone()).unwrap().dual().unwrap();
    assert_eq!(dual.basis(), &w.a_dual);
    // printed entries: 1/(ε√3) = 2/√3 and ε² = 1/4
    assert_eq!(dual.basis()[(1, 0)], Quad3::sqrt3_times(r(2, 3)));
    assert_eq!(dual.basis()[(2, 2)], Quad3::from(r(1, 4)));
}

#[test]
fn unimodular_dual_basis_is_biorthogonal() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let b = random_unimodular(4, &mut rng).map(|&x| Rational::from_i64(x));
    let dual = Lattice::new(b.clone()).unwrap().dual().unwrap();
    assert_eq!(b.transpose().mul(dual.basis()), Matrix::identity(4));
}

#[test]
fn small_cube_volume_and_gauge() {
    let pi = Parallelepiped::axis_box(vec![r(1, 2); 3]).unwrap();
    assert_eq!(pi.volume(), r(1, 1));
    assert_eq!(pi.gauge(&[r(1, 2), r(0, 1), r(0, 1)]), r(1, 1));
    let w = build_witness(&r(1, 2)).unwrap();
    let body = w.body.clone();
    assert_eq!(body.gauge(&w.a.column(0)), Quad3::sqrt3_times(r(2, 3)));
}

#[test]
fn minima_of_a_diagonal_lattice() {
    let body = Parallelepiped::<Rational>::cube(2);
    let lattice = Lattice::new(Matrix::diag(&[r(2, 1), r(3, 1)])).unwrap();
    assert_eq!(successive_minima(&body, &lattice, 2).unwrap().values, vec![r(2, 1), r(3, 1)]);
    assert_eq!(brute_force_minima(&body, &lattice, 2, 5), vec![r(2, 1), r(3, 1)]);
}

#[test]
fn witness_first_minimum_in_lattice_form() {
    let w = build_witness(&r(1, 2)).unwrap();
    let p = successive_minima(&w.body, &Lattice::new(w.a.clone()).unwrap(), 1).unwrap();
    assert_eq!(p.values[0], Quad3::sqrt3_times(r(2, 3)));
}

#[test]
fn orthogonal_covolumes() {
    let s = orthogonal_sublattice(&[1, 1, 1]).unwrap();
    assert_eq!(s.gram_det(), 3.into());
    let s = orthogonal_sublattice(&[2, 3]).unwrap();
    assert_eq!(s.gram_det(), 13.into());
    assert!((s.covolume() - 13f64.sqrt()).abs() < 1e-12);
}

#[test]
fn frozen_section_values() {
    let v = cube_section_volume(&[r(1, 1), r(1, 1), r(1, 1)]).unwrap();
    assert_eq!(v.square(), r(27, 1));
    assert_eq!(section3_area(&r(0, 1)).unwrap().square(), r(32, 1));
    assert_eq!(section3_area(&r(4, 5)).unwrap().simplified().to_string(), "16/25*sqrt(66)");
    let v = v_tau(&[r(1, 1), r(1, 1), r(1, 1)]).unwrap();
    assert_eq!(v.square(), r(27, 16));
}

#[test]
fn four_dimensional_diagonal_against_the_slab() {
    let exact = cube_section_volume(&[1.0, 1.0, 0.0, 0.0]).unwrap().to_f64();
    assert!((exact - 4.0 * 2f64.sqrt() * 2.0).abs() < 1e-12);
    let (est, se) = slab_estimate(&[1.0, 1.0, 0.0, 0.0], 1e-3, 1_000_000, &mut ChaCha8Rng::seed_from_u64(2));
    assert!((est - exact).abs() <= 4.0 * se, "{est} ± {se} vs {exact}");
}

#[test]
fn one_dominant_coordinate_is_nearly_a_facet() {
    let tau = [1.0, 1e-4, 1e-4];
    let v = v_tau(&tau).unwrap().to_f64();
    let (est, se) = slab_estimate(&tau, 1e-3, 1_000_000, &mut ChaCha8Rng::seed_from_u64(8));
    assert!((v - 1.0).abs() < 1e-3);
    assert!((est / 4.0 - v).abs() <= 4.0 * se / 4.0);
}

#[test]
fn section_dual_minimum_matches_box_scan() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..10 {
        let body = Parallelepiped::new(random_int_matrix(3, -2, 2, &mut rng), random_bounds(3, &mut rng)).unwrap();
        let sd = SectionDual::new(&body).unwrap();
        let mut best: Option<Rational> = None;
        for a in -8i64..=8 {
            for b in -8i64..=8 {
                for c in -8i64..=8 {
                    if (a, b, c) == (0, 0, 0) {
                        continue;
                    }
                    let g = sd.gauge_i64(&[a, b, c]);
                    if best.as_ref().map_or(true, |x| g < *x) {
                        best = Some(g);
                    }
                }
            }
        }
        assert_eq!(first_minimum_section_dual(&body).unwrap(), best.unwrap());
    }
}

#[test]
fn cube_dual_first_minima() {
    assert_eq!(first_minimum_section_dual(&Parallelepiped::<Rational>::cube(3)).unwrap(), r(1, 1));
    let twice = Parallelepiped::<Rational>::cube(3).scaled(&r(2, 1)).unwrap();
    assert_eq!(first_minimum_section_dual(&twice).unwrap(), r(1, 4));
}

#[test]
fn mahler_box_with_determinant_two() {
    let (bar, b) = mahler_dual_box(&[4.0, 1.0, 1.0], 2.0).unwrap();
    let r2 = 2f64.sqrt();
    assert!((bar - 2.0 * r2).abs() < 1e-12);
    assert!((b[0] - r2).abs() < 1e-12 && (b[1] - 4.0 * r2).abs() < 1e-12 && (b[2] - 4.0 * r2).abs() < 1e-12);
}

#[test]
fn plain_scale_of_ones() {
    let t = TauTuple::new(vec![1.0f64; 3]).unwrap();
    assert!((t.scale_factor(TauMode::Plain).unwrap() - 3f64.powf(0.25)).abs() < 1e-14);
    assert_eq!(TauTuple::new(vec![r(1, 1); 3]).unwrap().scale_power(TauMode::Plain).unwrap(), r(3, 1));
}

#[test]
fn sharp_boundary_tuples_and_vertices() {
    let root = Quad3::sqrt3_times(r(2, 3));
    assert_eq!(normalize_tau(&vec![Quad3::from(1); 3], TauMode::Sharp).unwrap(), vec![root.clone(); 3]);
    assert_eq!(normalize_tau(&[r(4, 1), r(5, 1), r(5, 1)], TauMode::Sharp).unwrap(), vec![r(1, 1), r(5, 4), r(5, 4)]);
    assert_eq!(tau_vertex(&[root.clone(), root.clone(), root]), vec![Quad3::from(r(3, 4)); 3]);
    assert_eq!(tau_vertex(&[r(1, 1), r(5, 4), r(5, 4)]), vec![r(16, 25), r(4, 5), r(4, 5)]);
}

#[test]
fn constants_and_second_root() {
    assert!((c_d(3).unwrap() - 1.553_773_974_0).abs() < 1e-10);
    assert!((c_d(4).unwrap() - 1.370_905_9).abs() < 1e-6);
    assert!(t2_root(1.2, 3).unwrap() < c_d(3).unwrap());
}

#[test]
fn t3_on_the_first_witness() {
    let w = build_witness(&r(1, 2)).unwrap();
    let body = reformulated_body(&w, 1).unwrap();
    let rep = &check_claims(&body, &[ClaimId::T3], &ClaimConfig::default()).unwrap()[0];
    assert_eq!(rep.outcome, Outcome::Pass);
    let margin = rep.margin.unwrap();
    assert!((margin - (2.0 - 2.0 / 3f64.sqrt())).abs() < 1e-12, "{margin}");
}

#[test]
fn seeded_four_dimensional_instance() {
    let body = gen_instance::<f64>(4, 11, InstanceStyle::Random).unwrap();
    let reports = check_claims(&body, &ClaimId::ALL, &ClaimConfig::default()).unwrap();
    assert!(reports.iter().all(|r| r.outcome != Outcome::Violation), "{reports:?}");
}

#[test]
fn small_seeded_suite() {
    let report = run_suite(&TrialConfig { dim: 3, trials: 10, seed: 7, ..TrialConfig::default() }).unwrap();
    assert_eq!(report.violations(), 0);
}

#[test]
fn quadratic_field_witness_in_float_mode() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let tau: Vec<f64> = (0..3).map(|_| rng.gen_range(0.2..3.0)).collect();
    let n = normalize_tau(&tau, TauMode::Sharp).unwrap();
    let t = TauTuple::new(n).unwrap();
    assert!((t.scale_power(TauMode::Sharp).unwrap() - 1.0).abs() < 1e-12);
}
