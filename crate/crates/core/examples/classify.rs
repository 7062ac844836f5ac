// Locating stability functionals and naming their hearts.
//
// cargo run --example classify

use heartfan::arrangement::{Arrangement, ConeRef, Sector};
use heartfan::dynkin::DynkinData;
use heartfan::error::Error;
use heartfan::linalg::rat;
use num_rational::BigRational;

fn q(v: &[i64]) -> Vec<BigRational> {
    v.iter().map(|&x| rat(x)).collect()
}

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let a1 = Arrangement::new(DynkinData::parse("A1~", &[])?)?;
    for theta in [[1, 1], [3, -1], [-1, 1], [1, -1], [-2, -5]] {
        let d = a1.classify_point(&q(&theta))?;
        let i = a1.numerical_interval(&q(&theta))?;
        println!("A1~ {theta:?}: {d}   interval [{}, {}]", i.lower, i.upper);
    }
    // a functional on a wall of the Tits cone is not a heart cone
    match a1.classify_point(&q(&[0, 1])) {
        Err(Error::NotAHeartCone(_)) => println!("A1~ [0, 1]: on a wall"),
        other => return Err(format!("unexpected {other:?}").into()),
    }

    let a2 = Arrangement::new(DynkinData::parse("A2~", &[])?)?;
    let c0 = a2.principal_chamber(Sector::Zero);
    for f in a2.faces(&c0) {
        if f.is_zero() {
            continue;
        }
        println!("A2~ face of C0 with walls {} set to zero: {}", f.extra_zeros, a2.classify_cone(&f)?);
    }
    let ray = ConeRef::new(c0, [1].into_iter().collect())?;
    println!("{}", a2.classify_cone(&ray)?.to_json());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
