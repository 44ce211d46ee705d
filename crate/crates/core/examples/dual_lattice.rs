//! The dual lattice `(Bᵀ)⁻¹ℤ^d` and its covolume.

use geonum::lattice::Lattice;
use geonum::numeric::{Matrix, Rational};

fn main() -> geonum::error::Result<()> {
    let b = Matrix::<Rational>::from_i64_rows(&[vec![2, 1], vec![0, 3]])?;
    let l = Lattice::new(b)?;
    let dual = l.dual()?;
    for i in 0..2 {
        let row: Vec<String> = dual.basis().row(i).iter().map(|x| x.to_string()).collect();
        println!("dual row {i}: [{}]", row.join(", "));
    }
    println!("covolume {} and dual covolume {}", l.covolume(), dual.covolume());
    println!("dual of dual is the lattice: {}", dual.dual()?.same_lattice(&l)?);
    Ok(())
}
