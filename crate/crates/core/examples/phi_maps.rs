// Wall-crossing maps between restricted root lattices along a mutation class.
//
// cargo run --example phi_maps

use heartfan::dynkin::DynkinData;
use heartfan::mutation;
use heartfan::rootlat::{self, RestrictedRoots, RootVector};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let data = DynkinData::parse("D4~", &[2])?;
    let d = data.ambient();
    let j = data.marked();
    for i in [0, 1, 3, 4] {
        let nu = mutation::mutate(d, j, i)?;
        let back = mutation::iota(d, j, i)?;
        let phi = rootlat::phi_map_for(d, j, i)?;
        println!("φ_{i}: lattice of {} -> lattice of {}", d.vertex_set().difference(nu), d.vertex_set().difference(j));
        let a = RootVector::simple(d.vertex_set().difference(nu), back)?;
        println!("  α_{back} ↦ {}", phi.apply(&a)?);

        let mut src = RestrictedRoots::new(d, nu)?;
        let mut tgt = RestrictedRoots::new(d, j)?;
        let roots = src.positives(1)?;
        for r in &roots {
            assert!(tgt.contains(&phi.matrix.mul_vec(r)?)?);
        }
        println!("  {} level-1 roots land on roots", roots.len());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
