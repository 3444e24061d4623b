//! Gale maps between the degree one del Pezzo surface S = X^2_8 and the
//! curve lattice of X^4_8.
//!
//! ρ⁻¹(α) = 3h − ½Σe_i, ρ⁻¹(β_i) = ½(h − e_i), and η(w) = 2ρ⁻¹(w) − F.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::HashSet;

use crate::arith::{from_json_vec, json_vec, JsonInt};
use crate::error::{Error, Result};
use crate::lattice::{anticanonical_curve, CurveClass, DivisorClass, Space};
use crate::weyl::{cremona_curve, cremona_divisor, curve_effectivity_filter, effective_orbit, CremonaIndexSet, Effectivity, OrbitCatalog};

pub fn surface_space() -> Space {
    Space::new(2, 8).expect("valid space")
}

pub fn target_space() -> Space {
    Space::new(4, 8).expect("valid space")
}

/// aα + Σ b_i β_i on S.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SurfaceDivisor {
    pub a: BigInt,
    pub b: Vec<BigInt>,
}

#[derive(Serialize, Deserialize)]
struct SurfaceJson {
    a: JsonInt,
    b: Vec<JsonInt>,
}

impl SurfaceDivisor {
    pub fn new(a: BigInt, b: Vec<BigInt>) -> Result<Self> {
        if b.len() != 8 {
            return Err(Error::LengthMismatch { expected: 8, got: b.len() });
        }
        Ok(SurfaceDivisor { a, b })
    }

    pub fn from_ints(a: i64, b: &[i64]) -> Result<Self> {
        Self::new(BigInt::from(a), b.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn alpha() -> Self {
        Self::from_ints(1, &[0; 8]).expect("eight entries")
    }

    /// β_i, 0-based.
    pub fn beta(i: usize) -> Self {
        let mut b = [0; 8];
        b[i] = 1;
        Self::from_ints(0, &b).expect("eight entries")
    }

    pub fn canonical() -> Self {
        Self::from_ints(-3, &[1; 8]).expect("eight entries")
    }

    /// As a divisor class aH − Σ(−b_i)E_i on X^2_8.
    pub fn to_divisor(&self) -> DivisorClass {
        DivisorClass { space: surface_space(), d: self.a.clone(), m: self.b.iter().map(|x| -x).collect() }
    }

    pub fn from_divisor(d: &DivisorClass) -> Result<Self> {
        surface_space().check_same(&d.space)?;
        Self::new(d.d.clone(), d.m.iter().map(|x| -x).collect())
    }

    pub fn intersect(&self, other: &Self) -> BigInt {
        let mut v = &self.a * &other.a;
        for (x, y) in self.b.iter().zip(&other.b) {
            v -= x * y;
        }
        v
    }

    pub fn self_intersection(&self) -> BigInt {
        self.intersect(self)
    }

    pub fn dot_canonical(&self) -> BigInt {
        self.intersect(&Self::canonical())
    }

    pub fn scaled(&self, k: i64) -> Self {
        SurfaceDivisor { a: &self.a * k, b: self.b.iter().map(|x| x * k).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        SurfaceDivisor { a: &self.a - &other.a, b: self.b.iter().zip(&other.b).map(|(x, y)| x - y).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        SurfaceDivisor { a: &self.a + &other.a, b: self.b.iter().zip(&other.b).map(|(x, y)| x + y).collect() }
    }

    /// Standard Cremona transformation at the points in `idx` (three, 0-based).
    pub fn cremona(&self, idx: &[usize]) -> Result<Self> {
        let g = CremonaIndexSet::from_zero_based(surface_space(), idx)?;
        Self::from_divisor(&cremona_divisor(&self.to_divisor(), &g)?.0)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(SurfaceJson { a: JsonInt(self.a.clone()), b: json_vec(&self.b) }).expect("serializes")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let j: SurfaceJson = serde_json::from_value(v.clone())?;
        Self::new(j.a.0, from_json_vec(j.b))
    }
}

impl std::fmt::Display for SurfaceDivisor {
    fn fmt(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
        write!(f, "{}a", self.a)?;
        for (i, b) in self.b.iter().enumerate() {
            if !b.is_zero() {
                write!(f, "{}{}b{}", if b.is_negative() { "" } else { "+" }, b, i + 1)?;
            }
        }
        Ok(())
    }
}

/// A curve class on X^4_8 with half-integer coefficients, stored as 2c.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HalfCurveClass {
    pub doubled: CurveClass,
}

impl HalfCurveClass {
    pub fn is_integral(&self) -> bool {
        std::iter::once(&self.doubled.delta).chain(&self.doubled.mu).all(|x| x.is_even())
    }

    pub fn to_integral(&self) -> Option<CurveClass> {
        if !self.is_integral() {
            return None;
        }
        Some(CurveClass {
            space: self.doubled.space,
            delta: &self.doubled.delta / 2,
            mu: self.doubled.mu.iter().map(|x| x / 2).collect(),
        })
    }

    /// Applies Cr_Γ linearly to the half-integral class.
    pub fn cremona(&self, idx: &[usize]) -> Result<Self> {
        let g = CremonaIndexSet::from_zero_based(target_space(), idx)?;
        Ok(HalfCurveClass { doubled: cremona_curve(&self.doubled, &g)?.0 })
    }
}

impl std::fmt::Display for HalfCurveClass {
    fn fmt(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
        match self.to_integral() {
            Some(c) => write!(f, "{c}"),
            None => write!(f, "({})/2", self.doubled),
        }
    }
}

pub fn rho_inv(w: &SurfaceDivisor) -> HalfCurveClass {
    let sum_b: BigInt = w.b.iter().sum();
    HalfCurveClass {
        doubled: CurveClass {
            space: target_space(),
            delta: &w.a * 6 + &sum_b,
            mu: w.b.iter().map(|b| &w.a + b).collect(),
        },
    }
}

/// η(w) = 2ρ⁻¹(w) − F.
pub fn eta(w: &SurfaceDivisor) -> Result<CurveClass> {
    let out = rho_inv(w).doubled.try_sub(&anticanonical_curve(target_space()))?;
    Ok(out)
}

/// Surface Cremona at {i,j,k} followed by ρ⁻¹, against ρ⁻¹ followed by
/// the curve Cremona at the five complementary points of X^4_8.
pub fn check_equivariance(w: &SurfaceDivisor, i: usize, j: usize, k: usize) -> Result<bool> {
    let tri = [i, j, k];
    if tri.iter().any(|&x| x >= 8) || i == j || j == k || i == k {
        return Err(Error::InvalidIndexSet(format!("{:?} are not three distinct indices in 1..8", [i + 1, j + 1, k + 1])));
    }
    let rest: Vec<usize> = (0..8).filter(|x| !tri.contains(x)).collect();
    let left = rho_inv(&w.cremona(&tri)?);
    let right = rho_inv(w).cremona(&rest)?;
    Ok(left == right)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivarianceReport {
    pub checked: usize,
    pub failures: Vec<(SurfaceDivisor, [usize; 3])>,
}

/// Every triple against every class.
pub fn verify_equivariance(classes: &[SurfaceDivisor]) -> Result<EquivarianceReport> {
    let mut checked = 0;
    let mut failures = Vec::new();
    for w in classes {
        for i in 0..8 {
            for j in i + 1..8 {
                for k in j + 1..8 {
                    checked += 1;
                    if !check_equivariance(w, i, j, k)? {
                        failures.push((w.clone(), [i + 1, j + 1, k + 1]));
                    }
                }
            }
        }
    }
    Ok(EquivarianceReport { checked, failures })
}

pub fn random_surface_classes(seed: u64, count: usize, range: i64) -> Vec<SurfaceDivisor> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let a = rng.gen_range(-range..=range);
            let b: Vec<i64> = (0..8).map(|_| rng.gen_range(-range..=range)).collect();
            SurfaceDivisor::from_ints(a, &b).expect("eight entries")
        })
        .collect()
}

/// The identities 2ρ⁻¹(β_i) = h−e_i, η(α) = h, η(α−β_i) = e_i and
/// η(2α − Σ_{i∈A}β_i) = 2h − Σ_{i∉A}e_i for every 5-set A; each with its outcome.
pub fn generator_identities() -> Result<Vec<(String, bool)>> {
    let x = target_space();
    let mut out = Vec::new();
    for i in 0..8 {
        let mut want = CurveClass::line(x);
        want.mu[i] = BigInt::from(1);
        out.push((format!("2rho^-1(b{}) = h-e{}", i + 1, i + 1), rho_inv(&SurfaceDivisor::beta(i)).doubled == want));
    }
    out.push(("eta(a) = h".into(), eta(&SurfaceDivisor::alpha())? == CurveClass::line(x)));
    for i in 0..8 {
        let w = SurfaceDivisor::alpha().sub(&SurfaceDivisor::beta(i));
        out.push((format!("eta(a-b{}) = e{}", i + 1, i + 1), eta(&w)? == CurveClass::exceptional_line(x, i)));
    }
    for five in itertools::Itertools::combinations(0..8usize, 5) {
        let mut w = SurfaceDivisor::alpha().scaled(2);
        for &i in &five {
            w = w.sub(&SurfaceDivisor::beta(i));
        }
        let rest: Vec<usize> = (0..8).filter(|i| !five.contains(i)).collect();
        let want = CurveClass::linear(x, &rest);
        let name = format!(
            "eta(2a-sum b over {:?}) = 2h-sum e over {:?}",
            five.iter().map(|i| i + 1).collect::<Vec<_>>(),
            rest.iter().map(|i| i + 1).collect::<Vec<_>>()
        );
        out.push((name, eta(&w)? == want));
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SurfaceKind {
    #[serde(rename = "(-1)")]
    MinusOne,
    #[serde(rename = "(0)")]
    Zero,
    #[serde(rename = "(1)")]
    One,
}

impl SurfaceKind {
    /// (w², w·K_S).
    pub fn numbers(self) -> (i64, i64) {
        match self {
            SurfaceKind::MinusOne => (-1, -1),
            SurfaceKind::Zero => (0, -2),
            SurfaceKind::One => (1, -3),
        }
    }

    pub fn seed(self) -> SurfaceDivisor {
        match self {
            SurfaceKind::MinusOne => SurfaceDivisor::beta(0),
            SurfaceKind::Zero => SurfaceDivisor::alpha().sub(&SurfaceDivisor::beta(0)),
            SurfaceKind::One => SurfaceDivisor::alpha(),
        }
    }
}

impl std::str::FromStr for SurfaceKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "-1" | "(-1)" | "minus-one" => Ok(SurfaceKind::MinusOne),
            "0" | "(0)" | "zero" => Ok(SurfaceKind::Zero),
            "1" | "(1)" | "one" => Ok(SurfaceKind::One),
            _ => Err(Error::Parse(format!("unknown surface curve kind {s:?}"))),
        }
    }
}

pub fn has_kind(w: &SurfaceDivisor, kind: SurfaceKind) -> bool {
    let (sq, k) = kind.numbers();
    w.self_intersection() == BigInt::from(sq) && w.dot_canonical() == BigInt::from(k)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GaleMap {
    TwiceRhoInv,
    Eta,
}

impl std::str::FromStr for GaleMap {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "2rho" | "rho" | "twice-rho-inv" => Ok(GaleMap::TwiceRhoInv),
            "eta" => Ok(GaleMap::Eta),
            _ => Err(Error::Parse(format!("unknown Gale map {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LineLabel {
    MinusOneWeylLine,
    ZeroWeylLine,
    OneWeylLine,
    ExceptionalWeylLine,
    /// Orbit of 2h − Σ_{|I|=3} e_i.
    ConicOrbit,
    NonEffective,
    Unlisted,
}

/// Effective Weyl orbits on X^4_8 used to label Gale images.
pub struct LineCatalogs {
    pub minus_one: OrbitCatalog<CurveClass>,
    pub zero: OrbitCatalog<CurveClass>,
    pub one: OrbitCatalog<CurveClass>,
    pub exceptional: OrbitCatalog<CurveClass>,
    pub conic: OrbitCatalog<CurveClass>,
}

impl LineCatalogs {
    pub fn build() -> Result<Self> {
        let x = target_space();
        let mut h_e = CurveClass::line(x);
        h_e.mu[0] = BigInt::from(1);
        Ok(LineCatalogs {
            minus_one: effective_orbit(&CurveClass::linear(x, &[0, 1]), None)?,
            zero: effective_orbit(&h_e, None)?,
            one: effective_orbit(&CurveClass::line(x), None)?,
            exceptional: effective_orbit(&CurveClass::exceptional_line(x, 0), None)?,
            conic: effective_orbit(&CurveClass::linear(x, &[0, 1, 2]), None)?,
        })
    }

    pub fn label(&self, c: &CurveClass) -> LineLabel {
        if self.minus_one.contains(c) {
            LineLabel::MinusOneWeylLine
        } else if self.zero.contains(c) {
            LineLabel::ZeroWeylLine
        } else if self.one.contains(c) {
            LineLabel::OneWeylLine
        } else if self.exceptional.contains(c) {
            LineLabel::ExceptionalWeylLine
        } else if self.conic.contains(c) {
            LineLabel::ConicOrbit
        } else if curve_effectivity_filter(c) == Effectivity::NonEffective {
            LineLabel::NonEffective
        } else {
            LineLabel::Unlisted
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaleImage {
    pub input: SurfaceDivisor,
    pub kind: SurfaceKind,
    pub map: GaleMap,
    pub image: CurveClass,
    pub label: LineLabel,
}

impl GaleImage {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "input": self.input.to_json(),
            "kind": self.kind,
            "map": self.map,
            "image": self.image.to_string(),
            "label": self.label,
        })
    }
}

pub fn gale_image_classification(kind: SurfaceKind, w: &SurfaceDivisor, map: GaleMap) -> Result<GaleImage> {
    gale_image_classification_with(&LineCatalogs::build()?, kind, w, map)
}

pub fn gale_image_classification_with(
    catalogs: &LineCatalogs,
    kind: SurfaceKind,
    w: &SurfaceDivisor,
    map: GaleMap,
) -> Result<GaleImage> {
    if !has_kind(w, kind) {
        return Err(Error::KindMismatch(format!(
            "{w} has w^2 = {}, w.K = {}, not those of a {:?}-curve",
            w.self_intersection(),
            w.dot_canonical(),
            kind
        )));
    }
    let image = match map {
        GaleMap::TwiceRhoInv => rho_inv(w).doubled,
        GaleMap::Eta => eta(w)?,
    };
    Ok(GaleImage { input: w.clone(), kind, map, image: image.clone(), label: catalogs.label(&image) })
}

/// Surface curves of one kind: the effective Weyl orbit of β_1, α−β_1 or α.
pub fn surface_curves(kind: SurfaceKind) -> Result<Vec<SurfaceDivisor>> {
    let cat = effective_orbit(&kind.seed().to_divisor(), None)?;
    cat.classes().map(SurfaceDivisor::from_divisor).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaleConeCheck {
    /// 2ρ⁻¹ of the (−1)-curves against the orbit of h−e_i.
    pub minus_one_to_zero_lines: bool,
    /// η of the (1)-curves against the orbit of h.
    pub one_to_one_lines: bool,
    /// η of the (0)-curves against the orbit of e_i.
    pub zero_to_exceptional: bool,
    pub counts: [usize; 3],
}

impl GaleConeCheck {
    /// Generators of Eff^∨ (first two) and Mov^∨ (first and third) agree on both sides.
    pub fn holds(&self) -> bool {
        self.minus_one_to_zero_lines && self.one_to_one_lines && self.zero_to_exceptional
    }
}

/// Compares the Gale images of the surface curves with the orbit catalogs
/// that generate C_0 and C_1 on X^4_8.
pub fn gale_cone_cross_check(catalogs: &LineCatalogs) -> Result<GaleConeCheck> {
    let minus: Vec<SurfaceDivisor> = surface_curves(SurfaceKind::MinusOne)?;
    let zero: Vec<SurfaceDivisor> = surface_curves(SurfaceKind::Zero)?;
    let one: Vec<SurfaceDivisor> = surface_curves(SurfaceKind::One)?;
    let set = |cat: &OrbitCatalog<CurveClass>| cat.classes().cloned().collect::<HashSet<_>>();
    let a: HashSet<CurveClass> = minus.iter().map(|w| rho_inv(w).doubled).collect();
    let b: HashSet<CurveClass> = one.iter().map(eta).collect::<Result<_>>()?;
    let c: HashSet<CurveClass> = zero.iter().map(eta).collect::<Result<_>>()?;
    Ok(GaleConeCheck {
        minus_one_to_zero_lines: a == set(&catalogs.zero),
        one_to_one_lines: b == set(&catalogs.one),
        zero_to_exceptional: c == set(&catalogs.exceptional),
        counts: [minus.len(), zero.len(), one.len()],
    })
}
