//! Convergence to periodic solutions: the exact certificate for the
//! period-two case, multistart evidence for the others, and cycle fits.

use drds::periodic::manifold::equation;
use drds::periodic::{
    build_smoothed_objective, extract_limit_cycle, manifold, multistart_certify, prove_conjecture1_rigorous,
    residual_norm, ResidualKind,
};

fn main() -> drds::Result<()> {
    let proof = prove_conjecture1_rigorous()?;
    println!("period two: {:?}\n  {}\n", proof.status, proof.theorem);

    for id in 2..=4 {
        let m = manifold(id)?;
        let norm = residual_norm(id, ResidualKind::FixedPointResidual)?;
        let obj = build_smoothed_objective(&norm, 0, 1, 1 + m.period)?;
        let report = multistart_certify(&obj, 24, 1e-6, 0);
        let seq = equation(id)?.sequence_float(&[1.0, 2.0, 3.0], 3000)?;
        let cycle = extract_limit_cycle(&seq, &m)?;
        println!(
            "conjecture {id}: period {}, {:?} (worst {:.2e}); orbit from (1,2,3) settles on {:?}",
            m.period, report.verdict, report.worst_value, cycle.observed
        );
    }
    Ok(())
}
