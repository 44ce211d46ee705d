//! Exact cofactors, determinants and a bracketed root.

use geonum::numeric::{monotone_root, Matrix, Rational};

fn show(name: &str, m: &Matrix<Rational>) {
    println!("{name}:");
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(|x| x.to_string()).collect();
        println!("  [{}]", row.join(", "));
    }
}

fn main() -> geonum::error::Result<()> {
    let m = Matrix::<Rational>::from_i64_rows(&[vec![2, 1, 0], vec![1, 3, 1], vec![0, 1, 4]])?;
    show("M", &m);
    show("cof(M)", &m.cofactor()?);
    println!("det M = {}", m.det()?);

    // t² = 1 + √2 has its positive root in [1, 2]
    let t = monotone_root(|t| t * t - (1.0 + 2f64.sqrt()), 1.0, 2.0, 1e-15)?;
    println!("sqrt(1 + sqrt 2) = {t:.15}");
    Ok(())
}
