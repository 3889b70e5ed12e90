//! Parsing equations and maps, normal forms, and the companion map.

use drds::dynsys::{DifferenceEquation, Transformation};

fn main() -> drds::Result<()> {
    let eq = DifferenceEquation::parse("x[n+1] = x[n-1] / (x[n-1] + x[n-2])", None)?;
    println!("order {}: {eq}", eq.order());
    println!("companion map: {}", eq.targem());

    let map = Transformation::parse("y, (a + y)/x", None)?;
    println!("map with parameters {:?}: {map}", map.params());

    match DifferenceEquation::parse("x[n+1] = (1 + x[n]/x[n-1]", None) {
        Ok(_) => unreachable!(),
        Err(e) => println!("rejected: {e}"),
    }
    Ok(())
}
