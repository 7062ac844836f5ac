// Chambers of A2~ meeting the box of level 2, with their hearts and the
// covering relations between them.
//
// cargo run --example chamber_box

use heartfan::arrangement::{Arrangement, Sector};
use heartfan::dynkin::DynkinData;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let arr = Arrangement::new(DynkinData::parse("A2~", &[])?)?;
    let chambers = arr.enumerate_box(Sector::Plus, 2)?;
    println!("{} chambers in sector + at box 2", chambers.len());
    for (k, c) in chambers.iter().enumerate().take(10) {
        let heart = arr.heart_of_chamber(c)?;
        let sep = arr.separating_set(c)?;
        println!("  #{k:<3} {heart:<12} separated from C+ by {} hyperplanes", sep.len());
    }

    let edges = arr.hasse_edges(&chambers)?;
    println!("{} covering relations", edges.len());
    for e in edges.iter().take(6) {
        let b = arr.brick_label(&chambers[e.from], &chambers[e.to])?;
        println!("  {} -> {} across wall {}, brick {}", e.from, e.to, e.label, b.class);
    }

    // the reduced path of a chamber crosses each separating hyperplane once
    let far = arr.walk(&arr.principal_chamber(Sector::Plus), &[0, 1, 2, 0])?;
    let path = arr.reduced_path(&far)?;
    let report = arr.is_atomic(&arr.principal_chamber(Sector::Plus), &path)?;
    assert!(report.is_atomic() && report.agree());
    println!("reduced path {path:?}, {}", arr.heart_of_chamber(&far)?);

    let zero = arr.enumerate_box(Sector::Zero, 1)?;
    assert_eq!(zero.len(), 6);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
