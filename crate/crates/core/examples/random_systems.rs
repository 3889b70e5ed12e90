//! Random dense equations and a numeric global-stability check on each.

use drds::certify::conjecture_global;
use drds::dynsys::{random_equation, RandomSpec};

fn main() -> drds::Result<()> {
    for seed in 0..5 {
        let eq = random_equation(&RandomSpec { k: 2, d: 1, a: 30, seed })?;
        let limit = conjecture_global(&eq.targem(), 1000, 20, seed);
        println!("{eq}\n  common limit: {limit:?}");
    }
    Ok(())
}
