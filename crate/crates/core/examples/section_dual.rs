//! Gauge and first minimum of the section-dual body.

use geonum::lattice::Parallelepiped;
use geonum::numeric::{Field, Matrix, Rational};
use geonum::sections::{cube_dual_gauge, SectionDual};

fn main() -> geonum::error::Result<()> {
    for w in [[1, 0, 0], [1, 1, 0], [1, 1, 1]] {
        let w: Vec<Rational> = w.iter().map(|&x| Rational::from_i64(x)).collect();
        println!("cube-dual gauge of {:?} = {}", w.iter().map(|x| x.to_string()).collect::<Vec<_>>(), cube_dual_gauge(&w));
    }
    let forms = Matrix::<Rational>::from_i64_rows(&[vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 2]])?;
    let body = Parallelepiped::new(forms, [2, 1, 3].map(Rational::from_i64).to_vec())?;
    let (g, z) = SectionDual::new(&body)?.first_minimum()?;
    println!("first minimum {g} at {z:?}");
    Ok(())
}
