//! Exact periodicity of Lyness-type recurrences. Symbolic search gives up
//! once the iterates outgrow the term budget; the numeric check still runs.

use drds::dynsys::{detect_period_numeric, detect_period_symbolic, DifferenceEquation};

fn main() -> drds::Result<()> {
    for text in [
        "x[n+1] = (1+x[n])/x[n-1]",
        "x[n+1] = (1+x[n]+x[n-1])/x[n-2]",
        "x[n+1] = (1+x[n]+x[n-1]+x[n-2])/x[n-3]",
    ] {
        let eq = DifferenceEquation::parse(text, None)?;
        let symbolic = match detect_period_symbolic(&eq, 20) {
            Ok(p) => format!("{p:?}"),
            Err(e) => e.to_string(),
        };
        let init: Vec<f64> = (1..=eq.order()).map(|i| i as f64 + 0.5).collect();
        let numeric = detect_period_numeric(&eq, &init, 2000, 1e-9, None)?;
        println!("{text}\n  symbolic: {symbolic}\n  numeric: {numeric:?}");
    }
    Ok(())
}
