//! The three-dimensional extremal examples, certified in ℚ(√3).
//!
//! Usage: `cargo run --example witness_3d -- [epsilon]`

use geonum::numeric::{Rational, Scalar};
use geonum::witness::sharpness_report;

fn main() -> geonum::error::Result<()> {
    let eps = match std::env::args().nth(1) {
        Some(s) => match s.parse::<Scalar>()? {
            Scalar::Rational(q) => q,
            other => return Err(geonum::error::Error::Parse(format!("{other} is not rational"))),
        },
        None => Rational::new(1.into(), 2.into()),
    };
    print!("{}", sharpness_report(&eps)?.to_text());
    Ok(())
}
