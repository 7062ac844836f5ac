// Line bundles on a model moving chambers of the Tits cone.
//
// cargo run --example pic_dynamics

use heartfan::arrangement::{Arrangement, Comparison, Sector};
use heartfan::dynkin::DynkinData;
use heartfan::hearts::DegreeTuple;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let a1 = Arrangement::new(DynkinData::parse("A1~", &[])?)?;
    let act = a1.pic_action(&[])?;
    let cp = a1.principal_chamber(Sector::Plus);
    for d in 0..4 {
        let t = act.translate(&a1, &DegreeTuple::new(vec![], vec![d]), &cp)?;
        let mut xs: Vec<i64> = t.rays().iter().map(|r| r[1] / a1.delta_of(r).unwrap()).collect();
        xs.sort();
        println!("O({d}) . C+ is the interval {xs:?}: {}", a1.heart_of_chamber(&t)?);
    }

    let a2 = Arrangement::new(DynkinData::parse("A2~", &[])?)?;
    let cp = a2.principal_chamber(Sector::Plus);
    let fan = a2.movable_fan()?;
    let (_, model) = &fan.models[1];
    let act = a2.pic_action(model)?;
    println!("model path {model:?}, curves {:?}", act.curves);
    let small = DegreeTuple::new(model.clone(), vec![1, 0]);
    let big = DegreeTuple::new(model.clone(), vec![2, 1]);
    let ts = act.translate(&a2, &small, &cp)?;
    let tb = act.translate(&a2, &big, &cp)?;
    assert_eq!(a2.compare(&ts, &tb)?, Comparison::Less);
    println!("{} <= {}", a2.heart_of_chamber(&ts)?, a2.heart_of_chamber(&tb)?);
    println!("δ* = {:?}", act.delta_star_coords());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
