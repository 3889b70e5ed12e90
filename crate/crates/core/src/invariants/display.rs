//! Factored rendering of invariant numerators.

use crate::dynsys::DifferenceEquation;
use crate::poly::scalar::int;
use crate::poly::Polynomial;

/// Shifts tried in candidate linear factors `x_i + a`.
const SHIFTS: [i64; 4] = [1, 2, 3, 4];

fn linear(ctx_poly: &Polynomial, i: usize, a: i64) -> Polynomial {
    let ctx = ctx_poly.vars();
    &Polynomial::var(ctx, i) + &Polynomial::constant(ctx, int(a))
}

fn at(p: &Polynomial, i: usize, a: i64) -> Polynomial {
    let ctx = p.vars();
    let args: Vec<Polynomial> = (0..ctx.len())
        .map(|j| if j == i { Polynomial::constant(ctx, int(-a)) } else { Polynomial::var(ctx, j) })
        .collect();
    p.substitute(&args)
}

/// `P + c·∏x`, with `c` free of state variables, chosen so that some
/// `x_i + a` divides the result. `I` changes only by the constant `c`.
/// `None` if `P` already has such a factor or no shift produces one.
pub fn friendly_shift(eq: &DifferenceEquation, p: &Polynomial) -> Option<Polynomial> {
    let k = eq.order();
    let t = super::find::lag_product(eq);
    let cands = || (0..k).flat_map(|i| SHIFTS.iter().map(move |&a| (i, a)));
    if cands().any(|(i, a)| at(p, i, a).is_zero()) {
        return None;
    }
    for (i, a) in cands() {
        let neg = -&at(p, i, a);
        let Some(c) = neg.div_exact(&at(&t, i, a)) else { continue };
        if (0..k).any(|j| c.uses_var(j)) {
            continue;
        }
        return Some(p + &(&c * &t));
    }
    None
}

/// `(x_i + a)⋯(rest)` when at least one linear factor divides `p`.
pub fn factored(p: &Polynomial, k: usize) -> Option<String> {
    let mut rest = p.clone();
    let mut parts = Vec::new();
    for i in 0..k {
        for &a in &SHIFTS {
            let f = linear(p, i, a);
            while let Some(q) = rest.div_exact(&f) {
                parts.push(format!("({f})"));
                rest = q;
            }
        }
    }
    if parts.is_empty() {
        return None;
    }
    if !rest.is_one() {
        parts.insert(0, format!("({rest})"));
    }
    Some(parts.join("*"))
}
