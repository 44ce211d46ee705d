//! All successive minima of a parallelepiped against an integer lattice.
//!
//! Usage: `cargo run --example successive_minima -- [d] [seed]`

use geonum::harness::{gen_instance, InstanceStyle};
use geonum::lattice::{successive_minima, Lattice};
use geonum::numeric::Rational;

fn main() -> geonum::error::Result<()> {
    let mut args = std::env::args().skip(1);
    let d: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(3);
    let seed: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(1);

    let body = gen_instance::<f64>(d, seed, InstanceStyle::Random)?;
    let m = successive_minima(&body, &Lattice::integer(d), d)?;
    for (k, (v, w)) in m.values.iter().zip(&m.witnesses).enumerate() {
        println!("mu{} = {v:.6} at {w:?}", k + 1);
    }
    println!("2^d/d! <= prod * vol = {:.6} <= 2^d", m.product() * body.volume());

    if d == 3 {
        let exact = gen_instance::<Rational>(3, seed, InstanceStyle::Random)?;
        let m = successive_minima(&exact, &Lattice::integer(3), 3)?;
        let v: Vec<String> = m.values.iter().map(|x| x.to_string()).collect();
        println!("exact: {}", v.join(", "));
    }
    Ok(())
}
