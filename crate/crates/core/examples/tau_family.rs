//! Normalizing a tuple to either surface and the hyperbolic shift it induces.

use geonum::lattice::Parallelepiped;
use geonum::numeric::{Field, Rational};
use geonum::sections::v_tau;
use geonum::transference::{hyperbolic_map, normalize_tau, tau_vertex, TauMode};

fn main() -> geonum::error::Result<()> {
    let tau = [3.0, 1.0, 0.5, 2.0];
    for mode in [TauMode::Plain, TauMode::Sharp] {
        let t = normalize_tau(&tau, mode)?;
        println!("{mode:?}: {t:.6?}, vertex {:.6?}", tau_vertex(&t));
    }
    println!("v_tau = {:.9}", v_tau(&tau)?.to_f64());

    let body = Parallelepiped::<Rational>::cube(3);
    let t: Vec<Rational> = [2, 1, 3].iter().map(|&x| Rational::from_i64(x)).collect();
    let h = hyperbolic_map(&body, &t)?;
    println!("det of the shift = {}", h.det()?);
    Ok(())
}
