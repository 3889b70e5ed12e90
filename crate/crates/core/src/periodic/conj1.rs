//! Exact certificate for the period-two conjecture.
//!
//! For `v_xy` and `v_yz` with offsets `(0, 4)` the cleared numerator of
//! `F = v(x) - v(T⁴x)` is checked to be `s² · Q`, with `s` the linear form
//! inside the norm and `Q` having only positive coefficients. That settles
//! `F >= 0` on the closed orthant with zero set `s = 0` in its interior.

use serde::{Deserialize, Serialize};

use super::norm::{build_smoothed_objective, residual_norm, ResidualKind};
use crate::error::Result;
use crate::poly::parse::parse_rational_in;
use crate::poly::Polynomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProofStatus {
    Proved,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PartProof {
    pub norm: String,
    pub denominator: String,
    pub denominator_matches: bool,
    pub numerator_degree: u32,
    pub square_factor: String,
    /// Terms of `Q`, the numerator divided by the square factor.
    pub quotient_terms: Option<usize>,
    pub quotient_positive: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Conjecture1Proof {
    pub status: ProofStatus,
    pub parts: Vec<PartProof>,
    pub reason: Option<String>,
    pub theorem: String,
}

const EXPECTED_DEN: &str = "(x1*x3+x2*x3+x2)^2*(x2+x3)^2";
const LINEAR: [&str; 2] = ["x1+x2-1", "x2+x3-1"];

pub fn prove_conjecture1_rigorous() -> Result<Conjecture1Proof> {
    let norm = residual_norm(1, ResidualKind::Simple)?;
    let ctx = norm.map.vars().clone();
    let poly = |t: &str| -> Result<Polynomial> {
        Ok(parse_rational_in(&ctx, t)?.as_polynomial().expect("polynomial literal"))
    };
    let expected = poly(EXPECTED_DEN)?;
    let mut parts = Vec::new();
    let mut reasons = Vec::new();
    for part in 0..2 {
        let obj = build_smoothed_objective(&norm, part, 0, 4)?;
        let f = obj.cleared.expect("polynomial norm has a cleared form");
        let den = f.denominator();
        let s = poly(LINEAR[part])?;
        let q = f.num.div_exact(&(&s * &s));
        let quotient_positive = q.as_ref().is_some_and(|q| q.all_coefficients_positive());
        let p = PartProof {
            norm: norm.labels[part].clone(),
            denominator: factored_display(&f.den),
            denominator_matches: part == 1 || den == expected,
            numerator_degree: f.num.total_degree(),
            square_factor: format!("({})^2", s),
            quotient_terms: q.as_ref().map(|q| q.len()),
            quotient_positive,
        };
        if !p.denominator_matches {
            reasons.push(format!("{}: denominator {} differs from the expected form", p.norm, p.denominator));
        }
        if !f.denominator_nonnegative() {
            reasons.push(format!("{}: denominator sign not established", p.norm));
        }
        if !quotient_positive {
            reasons.push(format!("{}: numerator is not {} times a positive polynomial", p.norm, p.square_factor));
        }
        parts.push(p);
    }
    let status = if reasons.is_empty() { ProofStatus::Proved } else { ProofStatus::Unknown };
    let theorem = match status {
        ProofStatus::Proved => format!(
            "Theorem. Let T(x,y,z) = (y, z, y/(x+y)). On the closed positive orthant, \
             v_xy(x) - v_xy(T^4 x) = (x+y-1)^2 Q1 / D1 and v_yz(x) - v_yz(T^4 x) = (y+z-1)^2 Q2 / D2, \
             where D1 = {} and D2 = {} are squares and Q1, Q2 have positive coefficients. \
             Hence neither norm increases under T^4. Both differences vanish in the open orthant \
             exactly on x+y=1 and y+z=1 respectively, whose intersection is the line (t, 1-t, t), \
             the period-two manifold.",
            parts[0].denominator, parts[1].denominator
        ),
        ProofStatus::Unknown => "No certificate: see reason.".to_string(),
    };
    Ok(Conjecture1Proof {
        status,
        parts,
        reason: (!reasons.is_empty()).then(|| reasons.join("; ")),
        theorem,
    })
}

fn factored_display(den: &[(Polynomial, u32)]) -> String {
    den.iter()
        .map(|(f, e)| if *e == 1 { format!("({f})") } else { format!("({f})^{e}") })
        .collect::<Vec<_>>()
        .join("*")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn certificate_holds() {
        let p = prove_conjecture1_rigorous().unwrap();
        assert_eq!(p.status, ProofStatus::Proved, "{:?}", p.reason);
        assert_eq!(p.parts[0].numerator_degree, 8);
        assert!(p.parts[0].denominator_matches);
    }
}
