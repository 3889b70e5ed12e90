//! Equilibria of an equation and of a planar map, with local stability.

use drds::dynsys::{DifferenceEquation, Transformation};
use drds::equilibria::fixed_points::{positive_fixed_points, DEDUP_TOL};
use drds::equilibria::{diagonal_equilibria, local_stability};

fn main() -> drds::Result<()> {
    let eq = DifferenceEquation::parse("x[n+1] = (17+5*x[n]+24*x[n-1]+16*x[n-2])/(23+4*x[n]+19*x[n-1]+2*x[n-2])", None)?;
    let d = diagonal_equilibria(&eq)?;
    println!("equilibria of {eq} solve {}", d.polynomial);
    for r in &d.roots {
        println!("  root {:.15} (positive: {})", r.value, r.positive);
    }

    let map = Transformation::parse("(18+20*x1+24*x2)/(11+19*x1+25*x2), (26+29*x1+28*x2)/(29+14*x1+18*x2)", None)?;
    let search = positive_fixed_points(&map, 200, 0, DEDUP_TOL)?;
    for fp in &search.points {
        let s = local_stability(&map, fp)?;
        println!("fixed point {:?}: spectral radius {:.6}, {:?}", fp.coords, s.spectral_radius, s.verdict);
    }
    Ok(())
}
