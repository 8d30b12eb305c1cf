//! Exact rational scalars and their string serialization (`"p/q"`, or `"p"`
//! when the denominator is one).

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qv(xs: &[i64]) -> Vec<Q> {
    xs.iter().map(|&x| q(x)).collect()
}

pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), Some(b.trim())),
        None => (s, None),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = match den {
        Some(d) => d.parse().map_err(|_| bad())?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Q::new(num, den))
}

pub fn is_integer(x: &Q) -> bool {
    x.denom().is_one()
}

pub fn to_i64(x: &Q) -> Option<i64> {
    if !is_integer(x) {
        return None;
    }
    i64::try_from(x.numer()).ok()
}

pub fn sign(x: &Q) -> Ordering {
    x.cmp(&Q::zero())
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn is_zero_vec(v: &[Q]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Positive multiple of `v` with coprime integer entries. Returns `None` for
/// the zero vector.
pub fn primitive(v: &[Q]) -> Option<Vec<Q>> {
    if is_zero_vec(v) {
        return None;
    }
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Q::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    Some(ints.into_iter().map(|x| Q::from_integer(x / &g)).collect())
}

/// Primitive representative of the line spanned by `v`, with positive first
/// nonzero coordinate.
pub fn primitive_line(v: &[Q]) -> Option<Vec<Q>> {
    let mut p = primitive(v)?;
    if p.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        for x in &mut p {
            *x = -x.clone();
        }
    }
    Some(p)
}

/// Round to one decimal place, half away from zero, and format.
pub fn fmt_one_decimal(x: &Q) -> String {
    let tenths = x * q(10);
    let half = qr(1, 2);
    let r = if tenths.is_negative() {
        -((-tenths + half).floor())
    } else {
        (tenths + half).floor()
    };
    let n = r.to_integer();
    let neg = n.is_negative();
    let a = n.abs();
    let (whole, frac) = a.div_rem(&BigInt::from(10));
    format!("{}{}.{}", if neg { "-" } else { "" }, whole, frac)
}

pub mod serde_q {
    use super::{parse_q, Q};
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Q, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    pub(crate) enum Raw {
        Str(String),
        Int(i64),
    }

    impl Raw {
        pub(crate) fn into_q<E: de::Error>(self) -> Result<Q, E> {
            match self {
                Raw::Str(s) => parse_q(&s).map_err(E::custom),
                Raw::Int(i) => Ok(super::q(i)),
            }
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        Raw::deserialize(d)?.into_q()
    }
}

pub mod serde_q_vec {
    use super::serde_q::Raw;
    use super::Q;
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Q], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for x in v {
            seq.serialize_element(&x.to_string())?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Q>, D::Error> {
        Vec::<Raw>::deserialize(d)?.into_iter().map(Raw::into_q).collect()
    }
}

pub mod serde_q_mat {
    use super::serde_q::Raw;
    use super::Q;
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(m: &[Vec<Q>], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(m.len()))?;
        for row in m {
            let row: Vec<String> = row.iter().map(ToString::to_string).collect();
            seq.serialize_element(&row)?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Q>>, D::Error> {
        Vec::<Vec<Raw>>::deserialize(d)?
            .into_iter()
            .map(|row| row.into_iter().map(Raw::into_q).collect())
            .collect()
    }
}
