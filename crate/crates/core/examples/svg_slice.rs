// Writes the A2~ chambers of box 2 on the slice δ = 1, and the sector-0 fan,
// as SVG files in the temp directory.
//
// cargo run --example svg_slice

use heartfan::arrangement::{Arrangement, Sector};
use heartfan::dynkin::DynkinData;
use heartfan::export::ChamberListing;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let arr = Arrangement::new(DynkinData::parse("A2~", &[])?)?;
    let dir = std::env::temp_dir();
    for (sector, n, file) in [(Sector::Plus, 2, "a2_plus.svg"), (Sector::Zero, 1, "a2_zero.svg")] {
        let listing = ChamberListing::build(&arr, sector, n, true)?;
        assert!(listing.fan.as_ref().is_some_and(|f| f.ok));
        let svg = listing.to_svg(&arr)?;
        let path = dir.join(file);
        std::fs::write(&path, &svg)?;
        println!("{} chambers -> {}", listing.chambers.len(), path.display());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
