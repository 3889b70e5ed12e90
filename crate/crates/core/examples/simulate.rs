//! Iterates a third-order equation in floats and exactly.

use drds::dynsys::DifferenceEquation;
use drds::poly::scalar::int;

fn main() -> drds::Result<()> {
    let eq = DifferenceEquation::parse("x[n+1] = (17+5*x[n]+24*x[n-1]+16*x[n-2])/(23+4*x[n]+19*x[n-1]+2*x[n-2])", None)?;
    let seq = eq.sequence_float(&[1.0, 2.0, 3.0], 200)?;
    println!("{eq}");
    println!("last three float terms: {:?}", &seq[seq.len() - 3..]);

    let exact = eq.orbit_exact(&[int(1), int(2), int(3)], 4)?;
    for x in exact.sequence.unwrap() {
        println!("  {x}");
    }
    Ok(())
}
