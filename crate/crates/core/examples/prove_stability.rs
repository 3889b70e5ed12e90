//! Global-stability certificates: rigorous for an averaging equation,
//! semi-rigorous for a third-order one, and a failure for Lyness.

use drds::certify::{prove_global_stability, GsOptions, ProofMode};
use drds::dynsys::{DifferenceEquation, System};

fn run(text: &str, opts: &GsOptions) -> drds::Result<()> {
    let eq = DifferenceEquation::parse(text, None)?;
    let cert = prove_global_stability(&System::Equation(eq), opts)?;
    println!("{text}\n  verdict {:?}, r {:?}\n  {}\n", cert.verdict, cert.r, cert.theorem());
    Ok(())
}

fn main() -> drds::Result<()> {
    let rigorous = GsOptions { mode: ProofMode::Rigorous, max_r: 4, ..GsOptions::default() };
    run("x[n+1] = (1+x[n]+x[n-1])/3", &rigorous)?;
    run("x[n+1] = (17+5*x[n]+24*x[n-1]+16*x[n-2])/(23+4*x[n]+19*x[n-1]+2*x[n-2])", &GsOptions::default())?;
    run("x[n+1] = (1+x[n])/x[n-1]", &GsOptions { max_r: 3, ..GsOptions::default() })
}
