//! Divisor and curve classes on X^n_s with their pairings.
//!
//! Conventions: D = dH − Σ m_i E_i and c = δh − Σ μ_i e_i, so that
//! D·c = dδ − Σ m_i μ_i. Indices are 0-based in memory and 1-based in every
//! textual or JSON form.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

use crate::arith::{from_json_vec, json_vec, JsonInt};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Space {
    pub n: usize,
    pub s: usize,
}

impl Space {
    pub fn new(n: usize, s: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidSpace(format!("n must be at least 2, got {n}")));
        }
        Ok(Space { n, s })
    }

    /// Cremona moves need n+1 distinct points.
    pub fn require_weyl(&self) -> Result<()> {
        if self.s < self.n + 1 {
            return Err(Error::InvalidSpace(format!(
                "{self} has fewer than n+1 = {} points; the Weyl group is not defined",
                self.n + 1
            )));
        }
        Ok(())
    }

    pub fn check_same(&self, other: &Space) -> Result<()> {
        if self != other {
            return Err(Error::SpaceMismatch { left: *self, right: *other });
        }
        Ok(())
    }

    /// The classical list: X^2_s, s ≤ 8; X^3_s, s ≤ 7; X^4_s, s ≤ 8; X^n_s, s ≤ n+3 for n ≥ 5.
    pub fn in_mds_list(&self) -> bool {
        match self.n {
            2 => self.s <= 8,
            3 => self.s <= 7,
            4 => self.s <= 8,
            _ => self.s <= self.n + 3,
        }
    }

    /// Mori dream status from both the list and the sign of ⟨−K,−K⟩.
    pub fn is_mori_dream(&self) -> Result<MdsVerdict> {
        let k = anticanonical_divisor(*self);
        let square = dm_pairing(&k, &k)?;
        let listed = self.in_mds_list();
        let by_pairing = square.is_positive();
        if listed != by_pairing {
            return Err(Error::Invariant(format!(
                "{self}: list says {listed}, <-K,-K> = {square}"
            )));
        }
        Ok(MdsVerdict { mori_dream: listed, listed, anticanonical_square: square })
    }

    pub fn mori_dream(&self) -> bool {
        self.in_mds_list()
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        write!(f, "X^{}_{}", self.n, self.s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MdsVerdict {
    pub mori_dream: bool,
    pub listed: bool,
    #[serde(serialize_with = "ser_big")]
    pub anticanonical_square: BigInt,
}

fn ser_big<S: Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    JsonInt(x.clone()).serialize(s)
}

fn parse_notation(space: Space, text: &str) -> Result<(BigInt, Vec<BigInt>)> {
    let (head, tail) = text
        .split_once(';')
        .ok_or_else(|| Error::Parse(format!("expected \"d; m1,...,ms\", got {text:?}")))?;
    let parse = |t: &str| {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("not an integer: {:?}", t.trim())))
    };
    let d = parse(head)?;
    let m: Vec<BigInt> = if tail.trim().is_empty() {
        Vec::new()
    } else {
        tail.split(',').map(parse).collect::<Result<_>>()?
    };
    if m.len() != space.s {
        return Err(Error::LengthMismatch { expected: space.s, got: m.len() });
    }
    Ok((d, m))
}

fn write_notation(f: &mut fmt::Formatter, d: &BigInt, m: &[BigInt]) -> fmt::Result {
    write!(f, "{d};")?;
    for (i, x) in m.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

#[derive(Serialize, Deserialize)]
struct ClassJson {
    n: usize,
    s: usize,
    d: JsonInt,
    m: Vec<JsonInt>,
}

macro_rules! class_common {
    ($ty:ident, $deg:ident, $mult:ident) => {
        impl $ty {
            pub fn new(space: Space, $deg: BigInt, $mult: Vec<BigInt>) -> Result<Self> {
                if $mult.len() != space.s {
                    return Err(Error::LengthMismatch { expected: space.s, got: $mult.len() });
                }
                Ok($ty { space, $deg, $mult })
            }

            pub fn from_ints(space: Space, $deg: i64, $mult: &[i64]) -> Result<Self> {
                Self::new(space, $deg.into(), $mult.iter().map(|&x| x.into()).collect())
            }

            pub fn zero(space: Space) -> Self {
                $ty { space, $deg: BigInt::zero(), $mult: vec![BigInt::zero(); space.s] }
            }

            /// Parses the textual notation `"d; m1,...,ms"`.
            pub fn parse(space: Space, text: &str) -> Result<Self> {
                let (d, m) = parse_notation(space, text)?;
                Ok($ty { space, $deg: d, $mult: m })
            }

            pub fn degree(&self) -> &BigInt {
                &self.$deg
            }

            pub fn mults(&self) -> &[BigInt] {
                &self.$mult
            }

            pub fn is_zero(&self) -> bool {
                self.$deg.is_zero() && self.$mult.iter().all(|x| x.is_zero())
            }

            pub fn try_add(&self, other: &Self) -> Result<Self> {
                self.space.check_same(&other.space)?;
                Ok($ty {
                    space: self.space,
                    $deg: &self.$deg + &other.$deg,
                    $mult: self.$mult.iter().zip(&other.$mult).map(|(a, b)| a + b).collect(),
                })
            }

            pub fn try_sub(&self, other: &Self) -> Result<Self> {
                self.try_add(&other.scaled(&BigInt::from(-1)))
            }

            pub fn scaled(&self, k: &BigInt) -> Self {
                $ty {
                    space: self.space,
                    $deg: &self.$deg * k,
                    $mult: self.$mult.iter().map(|x| x * k).collect(),
                }
            }

            /// Coefficient vector (degree first, then the point multiplicities).
            pub fn to_vector(&self) -> Vec<BigInt> {
                std::iter::once(self.$deg.clone()).chain(self.$mult.iter().cloned()).collect()
            }

            pub fn from_vector(space: Space, v: &[BigInt]) -> Result<Self> {
                if v.len() != space.s + 1 {
                    return Err(Error::LengthMismatch { expected: space.s + 1, got: v.len() });
                }
                Ok($ty { space, $deg: v[0].clone(), $mult: v[1..].to_vec() })
            }

            /// Copy with multiplicities permuted: entry i of the result is entry perm[i] of self.
            pub fn permuted(&self, perm: &[usize]) -> Self {
                $ty {
                    space: self.space,
                    $deg: self.$deg.clone(),
                    $mult: perm.iter().map(|&j| self.$mult[j].clone()).collect(),
                }
            }
        }

        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
                write_notation(f, &self.$deg, &self.$mult)
            }
        }

        impl Serialize for $ty {
            fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
                ClassJson {
                    n: self.space.n,
                    s: self.space.s,
                    d: JsonInt(self.$deg.clone()),
                    m: json_vec(&self.$mult),
                }
                .serialize(ser)
            }
        }

        impl<'de> Deserialize<'de> for $ty {
            fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
                let raw = ClassJson::deserialize(de)?;
                let space = Space::new(raw.n, raw.s).map_err(serde::de::Error::custom)?;
                $ty::new(space, raw.d.0, from_json_vec(raw.m)).map_err(serde::de::Error::custom)
            }
        }
    };
}

/// D = dH − Σ m_i E_i.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DivisorClass {
    pub space: Space,
    pub d: BigInt,
    pub m: Vec<BigInt>,
}

/// c = δh − Σ μ_i e_i.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CurveClass {
    pub space: Space,
    pub delta: BigInt,
    pub mu: Vec<BigInt>,
}

class_common!(DivisorClass, d, m);
class_common!(CurveClass, delta, mu);

impl DivisorClass {
    pub fn hyperplane(space: Space) -> Self {
        let mut h = Self::zero(space);
        h.d = BigInt::from(1);
        h
    }

    /// E_i (0-based i), i.e. (0; 0,…,−1,…,0).
    pub fn exceptional(space: Space, i: usize) -> Self {
        let mut e = Self::zero(space);
        e.m[i] = BigInt::from(-1);
        e
    }
}

impl CurveClass {
    pub fn line(space: Space) -> Self {
        let mut h = Self::zero(space);
        h.delta = BigInt::from(1);
        h
    }

    /// e_i (0-based i).
    pub fn exceptional_line(space: Space, i: usize) -> Self {
        let mut e = Self::zero(space);
        e.mu[i] = BigInt::from(-1);
        e
    }

    /// c_I = (|I|−1)h − Σ_{i∈I} e_i, the class of a line in the span of the points in I.
    pub fn linear(space: Space, idx: &[usize]) -> Self {
        let mut c = Self::zero(space);
        c.delta = BigInt::from(idx.len() as i64 - 1);
        for &i in idx {
            c.mu[i] = BigInt::from(1);
        }
        c
    }
}

/// D·c = dδ − Σ m_i μ_i.
pub fn intersect(d: &DivisorClass, c: &CurveClass) -> Result<BigInt> {
    d.space.check_same(&c.space)?;
    Ok(intersect_unchecked(d, c))
}

pub(crate) fn intersect_unchecked(d: &DivisorClass, c: &CurveClass) -> BigInt {
    let mut acc = &d.d * &c.delta;
    for (a, b) in d.m.iter().zip(&c.mu) {
        acc -= a * b;
    }
    acc
}

/// ⟨D1,D2⟩ = (n−1)d₁d₂ − Σ m_{1,i} m_{2,i}.
pub fn dm_pairing(a: &DivisorClass, b: &DivisorClass) -> Result<BigInt> {
    a.space.check_same(&b.space)?;
    let mut acc = BigInt::from(a.space.n as i64 - 1) * &a.d * &b.d;
    for (x, y) in a.m.iter().zip(&b.m) {
        acc -= x * y;
    }
    Ok(acc)
}

/// The curve class c with D'·c = ⟨D', D⟩ for every D'.
pub fn dm_dual_curve(d: &DivisorClass) -> CurveClass {
    CurveClass {
        space: d.space,
        delta: BigInt::from(d.space.n as i64 - 1) * &d.d,
        mu: d.m.clone(),
    }
}

/// −K = (n+1)H − (n−1)ΣE_i.
pub fn anticanonical_divisor(space: Space) -> DivisorClass {
    DivisorClass {
        space,
        d: BigInt::from(space.n + 1),
        m: vec![BigInt::from(space.n - 1); space.s],
    }
}

/// F = (n+1)h − Σe_i.
pub fn anticanonical_curve(space: Space) -> CurveClass {
    CurveClass { space, delta: BigInt::from(space.n + 1), mu: vec![BigInt::from(1); space.s] }
}

/// Effective decomposition of F: lines through consecutive pairs of points
/// when s = 2n+2, or F itself on the plane with at most nine points.
pub fn f_decomposition(space: Space) -> Option<Vec<CurveClass>> {
    if space.s == 2 * space.n + 2 {
        let lines = (0..=space.n).map(|i| CurveClass::linear(space, &[2 * i, 2 * i + 1])).collect();
        return Some(lines);
    }
    if space.n == 2 && space.s <= 9 {
        return Some(vec![anticanonical_curve(space)]);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(n: usize, s: usize) -> Space {
        Space::new(n, s).unwrap()
    }

    #[test]
    fn hyperplane_misses_exceptional_lines() {
        let x = sp(3, 4);
        for i in 0..4 {
            let e = CurveClass::exceptional_line(x, i);
            assert_eq!(intersect(&DivisorClass::hyperplane(x), &e).unwrap(), BigInt::zero());
        }
    }

    #[test]
    fn intersect_examples() {
        let x = sp(4, 5);
        let d = DivisorClass::from_ints(x, 2, &[1, 1, 0, 0, 0]).unwrap();
        let c = CurveClass::from_ints(x, 1, &[1, 1, 0, 0, 0]).unwrap();
        assert_eq!(intersect(&d, &c).unwrap(), BigInt::zero());

        let y = sp(4, 8);
        let k = anticanonical_divisor(y);
        assert_eq!(k, DivisorClass::from_ints(y, 5, &[3; 8]).unwrap());
        assert_eq!(intersect(&k, &anticanonical_curve(y)).unwrap(), BigInt::from(1));
    }

    #[test]
    fn mismatched_spaces_are_rejected() {
        let d = DivisorClass::hyperplane(sp(3, 4));
        let c = CurveClass::line(sp(3, 5));
        assert!(matches!(intersect(&d, &c), Err(Error::SpaceMismatch { .. })));
        assert!(dm_pairing(&d, &DivisorClass::hyperplane(sp(4, 4))).is_err());
    }

    #[test]
    fn pairing_examples() {
        let x = sp(3, 7);
        let e = DivisorClass::exceptional(x, 2);
        assert_eq!(dm_pairing(&e, &e).unwrap(), BigInt::from(-1));
        let k = anticanonical_divisor(x);
        assert_eq!(dm_pairing(&k, &k).unwrap(), BigInt::from(4));
        let y = sp(5, 9);
        let ky = anticanonical_divisor(y);
        assert_eq!(dm_pairing(&ky, &ky).unwrap(), BigInt::zero());
    }

    #[test]
    fn dm_dual_curve_realizes_pairing() {
        let x = sp(4, 7);
        let a = DivisorClass::from_ints(x, 3, &[1, 2, 0, -1, 1, 1, 0]).unwrap();
        let b = DivisorClass::from_ints(x, 2, &[2, 1, 1, 0, 0, 1, -1]).unwrap();
        assert_eq!(dm_pairing(&a, &b).unwrap(), intersect(&a, &dm_dual_curve(&b)).unwrap());
    }

    #[test]
    fn anticanonical_classes() {
        let x = sp(2, 9);
        assert_eq!(anticanonical_divisor(x).to_string(), "3;1,1,1,1,1,1,1,1,1");
        assert_eq!(anticanonical_curve(x).to_string(), "3;1,1,1,1,1,1,1,1,1");
        assert_eq!(anticanonical_divisor(sp(5, 9)).to_string(), "6;4,4,4,4,4,4,4,4,4");
        assert_eq!(anticanonical_curve(sp(3, 8)).to_string(), "4;1,1,1,1,1,1,1,1");
    }

    #[test]
    fn mori_dream_examples() {
        assert!(sp(4, 8).is_mori_dream().unwrap().mori_dream);
        assert!(!sp(3, 8).is_mori_dream().unwrap().mori_dream);
        assert!(sp(6, 9).is_mori_dream().unwrap().mori_dream);
        assert!(!sp(5, 9).is_mori_dream().unwrap().mori_dream);
    }

    #[test]
    fn mori_dream_criteria_agree() {
        for n in 2..=12 {
            for s in (n + 1)..=(n + 8) {
                sp(n, s).is_mori_dream().unwrap();
            }
        }
    }

    #[test]
    fn f_decompositions() {
        let x = sp(3, 8);
        let lines = f_decomposition(x).unwrap();
        assert_eq!(lines.len(), 4);
        assert_eq!(lines[0].to_string(), "1;1,1,0,0,0,0,0,0");
        assert_eq!(lines[1].to_string(), "1;0,0,1,1,0,0,0,0");
        let sum = lines.iter().skip(1).fold(lines[0].clone(), |a, b| a.try_add(b).unwrap());
        assert_eq!(sum, anticanonical_curve(x));

        let p = sp(2, 9);
        assert_eq!(f_decomposition(p).unwrap(), vec![anticanonical_curve(p)]);
        assert!(f_decomposition(sp(4, 9)).is_none());
    }

    #[test]
    fn notation_roundtrip() {
        let x = sp(4, 5);
        let d = DivisorClass::parse(x, "6; 5,5,4,4,4").unwrap();
        assert_eq!(d.to_string(), "6;5,5,4,4,4");
        assert_eq!(DivisorClass::parse(x, &d.to_string()).unwrap(), d);
        assert!(DivisorClass::parse(x, "6;5,5").is_err());
        assert!(DivisorClass::parse(x, "6 5,5,4,4,4").is_err());
        assert!(CurveClass::parse(x, "a;1,1,1,1,1").is_err());
        let none = sp(2, 0);
        assert_eq!(DivisorClass::parse(none, "3;").unwrap().to_string(), "3;");
    }

    #[test]
    fn json_form() {
        let x = sp(2, 3);
        let d = DivisorClass::from_ints(x, 3, &[1, -2, 0]).unwrap();
        let text = serde_json::to_string(&d).unwrap();
        assert_eq!(text, r#"{"n":2,"s":3,"d":3,"m":[1,-2,0]}"#);
        let back: DivisorClass = serde_json::from_str(&text).unwrap();
        assert_eq!(back, d);
        assert!(serde_json::from_str::<CurveClass>(r#"{"n":2,"s":3,"d":3,"m":[1]}"#).is_err());
    }
}
