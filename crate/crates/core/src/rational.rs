//! Exact rationals and their text form `p/q`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Deserializer, Visitor};
use serde::ser::{SerializeSeq, Serializer};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q2(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `7`, `-3`, `+2`, or `p/q` with `q ≠ 0`.
pub fn parse_rational(s: &str) -> Result<Q> {
    let s = s.trim();
    let int = |t: &str| -> Result<BigInt> {
        let digits = t.strip_prefix(['+', '-']).unwrap_or(t);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::parse(format!("bad rational {s:?}")));
        }
        t.trim_start_matches('+').parse().map_err(|_| Error::parse(format!("bad rational {s:?}")))
    };
    match s.split_once('/') {
        None => Ok(Q::from_integer(int(s)?)),
        Some((n, d)) => {
            let d = int(d)?;
            if d.is_zero() {
                return Err(Error::parse(format!("zero denominator in {s:?}")));
            }
            Ok(Q::new(int(n)?, d))
        }
    }
}

pub fn format_rational(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses a comma separated list of rationals.
pub fn parse_rational_list(s: &str) -> Result<Vec<Q>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(parse_rational).collect()
}

pub fn sign(x: &Q) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

struct QVisitor;

impl Visitor<'_> for QVisitor {
    type Value = Q;

    fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
        f.write_str("an integer or a rational string \"p/q\"")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Q, E> {
        Ok(q(v))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Q, E> {
        Ok(Q::from_integer(BigInt::from(v)))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Q, E> {
        parse_rational(v).map_err(E::custom)
    }
}

/// Serde adapter for a single rational.
pub mod serde_q {
    use super::*;

    pub fn serialize<S: Serializer>(x: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Q, D::Error> {
        d.deserialize_any(QVisitor)
    }
}

/// Serde adapter for a vector of rationals.
pub mod serde_qvec {
    use super::*;

    pub fn serialize<S: Serializer>(xs: &[Q], s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(xs.len()))?;
        for x in xs {
            seq.serialize_element(&format_rational(x))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Q>, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = Vec<Q>;
            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("a list of rationals")
            }
            fn visit_seq<A: de::SeqAccess<'de>>(self, mut seq: A) -> std::result::Result<Vec<Q>, A::Error> {
                let mut out = Vec::new();
                while let Some(Wrapped(x)) = seq.next_element()? {
                    out.push(x);
                }
                Ok(out)
            }
        }
        d.deserialize_seq(V)
    }

    struct Wrapped(Q);

    impl<'de> serde::Deserialize<'de> for Wrapped {
        fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
            d.deserialize_any(QVisitor).map(Wrapped)
        }
    }
}
