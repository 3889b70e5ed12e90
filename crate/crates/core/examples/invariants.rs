//! Invariant discovery for the generalized Lyness equation and the orbit
//! box it implies.

use drds::dynsys::DifferenceEquation;
use drds::invariants::{boundedness_certificate, find_invariant, invariant_drift};
use drds::poly::scalar::int;

fn main() -> drds::Result<()> {
    let eq = DifferenceEquation::parse("x[n+1] = (p+x[n])/x[n-1]", None)?;
    let vals = [("p", int(1))];
    for inv in find_invariant(&eq, 3)? {
        println!("I = {inv}");
        if let Some(f) = &inv.factored {
            println!("  numerator {f}");
        }
        let b = boundedness_certificate(&inv, &vals, &[1.0, 1.0])?;
        println!("  p = 1, x = (1, 1): I = {}, orbit in [{:?}, {:?}]", b.constant, b.sequence_lower, b.sequence_upper);
        println!("  drift over 1000 steps: {:e}", invariant_drift(&eq, &inv, &vals, &[1.0, 1.0], 1000)?);
    }

    let third = DifferenceEquation::parse("x[n+1] = (p+x[n]+x[n-1])/x[n-2]", None)?;
    for inv in find_invariant(&third, 4)? {
        println!("third order: {}", inv.factored.clone().unwrap_or_else(|| inv.to_string()));
    }
    Ok(())
}
