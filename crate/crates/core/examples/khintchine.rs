//! The pair `F`, `G` with `FᵀG = I` built from a vector `θ`.

use geonum::numeric::{Matrix, Rational};
use geonum::transference::khintchine_pair;

fn main() -> geonum::error::Result<()> {
    let theta: Vec<Rational> = vec![Rational::new(1.into(), 3.into()), Rational::new((-2).into(), 7.into())];
    let (f, g) = khintchine_pair(&theta)?;
    for (name, m) in [("F", &f), ("G", &g)] {
        for i in 0..m.rows() {
            let row: Vec<String> = m.row(i).iter().map(|x| x.to_string()).collect();
            println!("{name}[{i}] = [{}]", row.join(", "));
        }
    }
    assert_eq!(f.transpose().mul(&g), Matrix::identity(theta.len() + 1));
    println!("F^T G = I");
    Ok(())
}
