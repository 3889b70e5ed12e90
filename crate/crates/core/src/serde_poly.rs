//! Serde adapter writing a polynomial as its variable names plus a term list
//! of `(exponents, "p/q")` pairs.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::poly::scalar::parse_scalar;
use crate::poly::{vars, Monomial, Polynomial};

#[derive(Serialize, Deserialize)]
struct Repr {
    vars: Vec<String>,
    terms: Vec<(Vec<u32>, String)>,
}

pub fn serialize<S: Serializer>(p: &Polynomial, s: S) -> Result<S::Ok, S::Error> {
    Repr {
        vars: p.vars().to_vec(),
        terms: p
            .terms()
            .map(|(m, c)| (m.exponents().to_vec(), c.to_string()))
            .collect(),
    }
    .serialize(s)
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Polynomial, D::Error> {
    let r = Repr::deserialize(d)?;
    let ctx = vars(&r.vars);
    let mut terms = Vec::with_capacity(r.terms.len());
    for (e, c) in r.terms {
        if e.len() != ctx.len() {
            return Err(serde::de::Error::custom("exponent vector has wrong length"));
        }
        terms.push((Monomial::new(e), parse_scalar(&c).map_err(serde::de::Error::custom)?));
    }
    Ok(Polynomial::from_terms(&ctx, terms))
}
