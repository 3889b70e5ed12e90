//! Serde adapters writing exact rationals as `"p/q"` strings.

use serde::{Deserialize, Deserializer, Serializer};

use crate::poly::scalar::parse_scalar;
use crate::poly::Scalar;

pub fn serialize<S: Serializer>(q: &Scalar, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Scalar, D::Error> {
    let text = String::deserialize(d)?;
    parse_scalar(&text).map_err(serde::de::Error::custom)
}

pub mod vec {
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(v: &[Scalar], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for q in v {
            seq.serialize_element(&q.to_string())?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Scalar>, D::Error> {
        let texts = Vec::<String>::deserialize(d)?;
        texts
            .iter()
            .map(|t| parse_scalar(t).map_err(serde::de::Error::custom))
            .collect()
    }
}
