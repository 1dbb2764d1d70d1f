//! Exact rational scalars and their string encoding.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serializer};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero() -> Q {
    Q::zero()
}

pub fn one() -> Q {
    Q::one()
}

/// Renders `p/q`, or just `p` for integers.
pub fn fmt_q(x: &Q) -> String {
    x.to_string()
}

pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    Q::from_str(s).map_err(|_| Error::Parse(format!("not a rational: `{s}`")))
}

/// `x^n` for integer n; negative exponents need `x != 0`.
pub fn pow(x: &Q, n: i64) -> Q {
    if n >= 0 {
        num_traits::pow(x.clone(), n as usize)
    } else {
        num_traits::pow(x.recip(), n.unsigned_abs() as usize)
    }
}

pub fn binomial(n: u32, k: u32) -> Q {
    let mut acc = one();
    for j in 0..k {
        acc = acc * q((n - j) as i64) / q((j + 1) as i64);
    }
    acc
}

pub fn is_integer(x: &Q) -> bool {
    x.is_integer()
}

pub fn abs(x: &Q) -> Q {
    x.abs()
}

/// serde adapter: rationals travel as strings (`"3/2"`), integers are
/// accepted on input too.
pub mod serde_q {
    use super::*;

    pub fn serialize<S: Serializer>(x: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_q(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Q, D::Error> {
        let raw = serde_json::Value::deserialize(d)?;
        from_value(&raw).map_err(serde::de::Error::custom)
    }

    pub(crate) fn from_value(v: &serde_json::Value) -> std::result::Result<Q, String> {
        match v {
            serde_json::Value::String(s) => parse_q(s).map_err(|e| e.to_string()),
            serde_json::Value::Number(n) => n
                .as_i64()
                .map(q)
                .ok_or_else(|| format!("non-integer JSON number {n}; write rationals as strings")),
            other => Err(format!("expected rational, got {other}")),
        }
    }
}

pub mod serde_q_vec {
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(xs: &[Q], s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(xs.len()))?;
        for x in xs {
            seq.serialize_element(&fmt_q(x))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Q>, D::Error> {
        let raw = Vec::<serde_json::Value>::deserialize(d)?;
        raw.iter()
            .map(|v| serde_q::from_value(v).map_err(serde::de::Error::custom))
            .collect()
    }
}

pub mod serde_q_map {
    use super::*;
    use serde::ser::SerializeMap;
    use std::collections::BTreeMap;

    pub fn serialize<S: Serializer>(
        m: &BTreeMap<String, Q>,
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(m.len()))?;
        for (k, v) in m {
            map.serialize_entry(k, &fmt_q(v))?;
        }
        map.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<BTreeMap<String, Q>, D::Error> {
        let raw = BTreeMap::<String, serde_json::Value>::deserialize(d)?;
        raw.into_iter()
            .map(|(k, v)| {
                serde_q::from_value(&v)
                    .map(|x| (k, x))
                    .map_err(serde::de::Error::custom)
            })
            .collect()
    }
}
