// The sector-0 fan as a movable fan: one nef cone per birational model.
//
// cargo run --example movable_fan

use heartfan::arrangement::Arrangement;
use heartfan::dynkin::DynkinData;
use heartfan::hearts::model_label;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for (name, marked) in [("A1~", vec![]), ("A2~", vec![]), ("D4~", vec![2])] {
        let arr = Arrangement::new(DynkinData::parse(name, &marked)?)?;
        let fan = arr.movable_fan()?;
        assert!(fan.ok());
        println!("{} with J = {marked:?}: {} models", name, fan.models.len());
        for (chamber, path) in fan.models.iter().take(6) {
            println!("  {:<8} rays {:?}", model_label(path), chamber.rays());
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
