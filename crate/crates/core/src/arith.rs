//! Integer helpers shared across modules.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

/// Binomial coefficient with the combinatorial convention:
/// C(a, b) = 0 when b < 0 or a < b, and C(a, 0) = 1 for a ≥ 0.
pub fn binomial(a: i64, b: i64) -> BigInt {
    if b < 0 || a < b || a < 0 {
        return BigInt::zero();
    }
    let b = b.min(a - b);
    let mut acc = BigInt::one();
    for i in 0..b {
        acc = acc * BigInt::from(a - i) / BigInt::from(i + 1);
    }
    acc
}

/// Same as [`binomial`] for a big upper argument.
pub fn binomial_big(a: &BigInt, b: i64) -> BigInt {
    if b < 0 || a < &BigInt::from(b) {
        return BigInt::zero();
    }
    poly_binomial(a, b as u32)
}

/// Polynomial binomial x(x−1)…(x−k+1)/k!, defined for every integer x.
pub fn poly_binomial(x: &BigInt, k: u32) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= x - BigInt::from(i);
        den *= BigInt::from(i + 1);
    }
    debug_assert!(num.is_multiple_of(&den));
    num / den
}

/// Divide every entry by the gcd of all entries. The zero vector is returned unchanged.
pub fn primitive(v: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for x in v.iter() {
        g = g.gcd(x);
        if g.is_one() {
            return;
        }
    }
    if g.is_zero() {
        return;
    }
    for x in v.iter_mut() {
        *x /= &g;
    }
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn to_i64(x: &BigInt) -> Option<i64> {
    x.to_i64()
}

pub fn big_vec(xs: &[i64]) -> Vec<BigInt> {
    xs.iter().map(|&x| BigInt::from(x)).collect()
}

/// A big integer that serializes as a JSON number when it fits in 64 bits
/// and as a decimal string otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JsonInt(pub BigInt);

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => ser.serialize_i64(v),
            None => ser.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = JsonInt;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a decimal string")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<JsonInt, E> {
                Ok(JsonInt(v.into()))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<JsonInt, E> {
                Ok(JsonInt(v.into()))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<JsonInt, E> {
                v.trim().parse::<BigInt>().map(JsonInt).map_err(E::custom)
            }
        }
        de.deserialize_any(V)
    }
}

pub fn json_vec(v: &[BigInt]) -> Vec<JsonInt> {
    v.iter().cloned().map(JsonInt).collect()
}

pub fn from_json_vec(v: Vec<JsonInt>) -> Vec<BigInt> {
    v.into_iter().map(|x| x.0).collect()
}

pub fn sign(x: &BigInt) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_conventions() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(0, 0), BigInt::one());
        assert_eq!(binomial(3, -1), BigInt::zero());
        assert_eq!(binomial(2, 3), BigInt::zero());
        assert_eq!(binomial(40, 20), "137846528820".parse::<BigInt>().unwrap());
    }

    #[test]
    fn poly_binomial_negative_arguments() {
        // C(x,3) for x = -1: (-1)(-2)(-3)/6 = -1
        assert_eq!(poly_binomial(&BigInt::from(-1), 3), BigInt::from(-1));
        assert_eq!(poly_binomial(&BigInt::from(2), 3), BigInt::zero());
        assert_eq!(poly_binomial(&BigInt::from(7), 3), BigInt::from(35));
        assert_eq!(poly_binomial(&BigInt::from(5), 0), BigInt::one());
    }

    #[test]
    fn primitive_divides_by_gcd() {
        let mut v = big_vec(&[4, -6, 10]);
        primitive(&mut v);
        assert_eq!(v, big_vec(&[2, -3, 5]));
        let mut z = big_vec(&[0, 0]);
        primitive(&mut z);
        assert_eq!(z, big_vec(&[0, 0]));
    }

    #[test]
    fn json_int_roundtrip() {
        let small = serde_json::to_string(&JsonInt(BigInt::from(-7))).unwrap();
        assert_eq!(small, "-7");
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let text = serde_json::to_string(&JsonInt(big.clone())).unwrap();
        assert_eq!(text, "\"123456789012345678901234567890\"");
        let back: JsonInt = serde_json::from_str(&text).unwrap();
        assert_eq!(back.0, big);
    }
}
