//! Central sections of `[-1, 1]^d` orthogonal to a direction.
//!
//! Usage: `cargo run --example cube_sections -- 4/5 1 1`

use geonum::numeric::{Field, Rational, Scalar};
use geonum::sections::{cube_section_volume, v_tau};

fn main() -> geonum::error::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let dir: Vec<Rational> = if args.is_empty() {
        vec![Rational::new(4.into(), 5.into()), Rational::from_i64(1), Rational::from_i64(1)]
    } else {
        args.iter()
            .map(|s| match s.parse::<Scalar>()? {
                Scalar::Rational(q) => Ok(q),
                other => Err(geonum::error::Error::Parse(format!("{other} is not rational"))),
            })
            .collect::<geonum::error::Result<_>>()?
    };
    let vol = cube_section_volume(&dir)?;
    println!("vol = {} ~ {:.12}", vol.simplified(), vol.to_f64());
    if dir.iter().all(|x| x.sign() == std::cmp::Ordering::Greater) {
        println!("v_tau = {:.12}, within [1, sqrt 2]", v_tau(&dir)?.to_f64());
    }
    Ok(())
}
