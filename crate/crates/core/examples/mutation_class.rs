// Mutation class of E7~ with J = {2,3,5,6,7}, and the spherical class of a
// D4~ seed.
//
// cargo run --example mutation_class

use heartfan::dynkin::DynkinData;
use heartfan::mutation;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let data = DynkinData::parse("E7~", &[2, 3, 5, 6, 7])?;
    let q = mutation::mutation_class(data.ambient(), data.marked())?;
    println!("{} has {} subsets in its class", data, q.vertices.len());
    for (src, label, dst) in q.named_arrows() {
        if src == dst {
            println!("  {src} loops at {label}");
        } else {
            println!("  {src} -{label}-> {dst}");
        }
    }
    assert_eq!(q.vertices.len(), 8);

    // every node is reachable and every arrow can be undone
    for &(s, i, t) in &q.arrows {
        let back = mutation::iota(data.ambient(), q.vertices[s], i)?;
        assert!(q.has_arrow(q.vertices[t], back, q.vertices[s]));
    }

    let d4 = DynkinData::parse("D4~", &[2])?;
    let sph = mutation::spherical_mutation_class(d4.ambient(), d4.marked())?;
    println!("{d4}: {} subsets when 0 stays unmutated", sph.vertices.len());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
