//! Weyl base loci, chamber signatures, χ and the Weyl expected dimension.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::arith::{binomial, poly_binomial, sign, JsonInt};
use crate::cycles::{WeylPlane, WeylPlanes};
use crate::error::{Error, Result};
use crate::lattice::{anticanonical_curve, intersect, CurveClass, DivisorClass, Space};
use crate::weyl::{cremona_divisor, max_b_gamma, WeylWord};

/// k_W(D) = max(0, −D·c_W).
pub fn k_w(d: &DivisorClass, w: &WeylPlane) -> Result<BigInt> {
    Ok((-intersect(d, &w.sweeping_curve)?).max(BigInt::zero()))
}

#[derive(Clone, Debug)]
pub struct WeylBaseLocus {
    pub divisor: DivisorClass,
    /// Planes with k_W(D) > 0 and their multiplicities.
    pub components: Vec<(WeylPlane, BigInt)>,
    pub catalog_bound: Option<u64>,
    pub complete: bool,
    pub catalog_hash: String,
}

impl WeylBaseLocus {
    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let comps: Vec<serde_json::Value> = self
            .components
            .iter()
            .map(|(p, k)| {
                let mut v = p.to_json();
                v["multiplicity"] = serde_json::to_value(JsonInt(k.clone())).expect("integer");
                v
            })
            .collect();
        serde_json::json!({
            "divisor": self.divisor.to_string(),
            "components": comps,
            "catalog_bound": self.catalog_bound,
            "complete": self.complete,
            "catalog_hash": self.catalog_hash,
        })
    }
}

pub fn weyl_base_locus(d: &DivisorClass, degree_bound: Option<u64>) -> Result<WeylBaseLocus> {
    let planes = WeylPlanes::build(d.space, degree_bound)?;
    weyl_base_locus_with(d, &planes)
}

pub fn weyl_base_locus_with(d: &DivisorClass, planes: &WeylPlanes) -> Result<WeylBaseLocus> {
    d.space.check_same(&planes.space)?;
    let mut components = Vec::new();
    for p in planes.planes() {
        let k = k_w(d, p)?;
        if k.is_positive() {
            components.push((p.clone(), k));
        }
    }
    Ok(WeylBaseLocus {
        divisor: d.clone(),
        components,
        catalog_bound: planes.degree_bound,
        complete: planes.complete(),
        catalog_hash: planes.version_hash(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChamberSignature {
    pub divisor: DivisorClass,
    /// Sign of D·c for each catalog curve, in catalog order.
    pub signs: Vec<(CurveClass, i8)>,
    pub catalog_bound: Option<u64>,
    pub complete: bool,
}

impl ChamberSignature {
    pub fn sign_string(&self) -> String {
        self.signs
            .iter()
            .map(|(_, s)| match s {
                -1 => '-',
                0 => '0',
                _ => '+',
            })
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let signs: Vec<serde_json::Value> =
            self.signs.iter().map(|(c, s)| serde_json::json!({"curve": c.to_string(), "sign": s})).collect();
        serde_json::json!({
            "divisor": self.divisor.to_string(),
            "signature": self.sign_string(),
            "signs": signs,
            "catalog_bound": self.catalog_bound,
            "complete": self.complete,
        })
    }
}

pub fn chamber_signature(d: &DivisorClass, degree_bound: Option<u64>) -> Result<ChamberSignature> {
    let planes = WeylPlanes::build(d.space, degree_bound)?;
    chamber_signature_with(d, &planes)
}

pub fn chamber_signature_with(d: &DivisorClass, planes: &WeylPlanes) -> Result<ChamberSignature> {
    d.space.check_same(&planes.space)?;
    let mut signs = Vec::with_capacity(planes.len());
    for p in planes.planes() {
        signs.push((p.sweeping_curve.clone(), sign(&intersect(d, &p.sweeping_curve)?)));
    }
    Ok(ChamberSignature { divisor: d.clone(), signs, catalog_bound: planes.degree_bound, complete: planes.complete() })
}

/// True when both divisors have identical sign vectors over the catalog.
pub fn same_chamber(a: &DivisorClass, b: &DivisorClass, degree_bound: Option<u64>) -> Result<bool> {
    a.space.check_same(&b.space)?;
    let planes = WeylPlanes::build(a.space, degree_bound)?;
    let sa = chamber_signature_with(a, &planes)?;
    let sb = chamber_signature_with(b, &planes)?;
    Ok(sa.signs == sb.signs)
}

/// χ(D) = C(n+d, n) − Σ C(n+m_i−1, n), with both binomials taken as
/// polynomials in their upper argument.
pub fn euler_characteristic(d: &DivisorClass) -> BigInt {
    let n = d.space.n as i64;
    let mut chi = poly_binomial(&(&d.d + n), n as u32);
    for m in &d.m {
        chi -= poly_binomial(&(m + (n - 1)), n as u32);
    }
    chi
}

#[derive(Clone, Debug)]
pub struct Wdim {
    pub chi: BigInt,
    pub value: BigInt,
    pub base_locus: WeylBaseLocus,
}

impl Wdim {
    /// max(wdim, 0).
    pub fn truncated(&self) -> BigInt {
        self.value.clone().max(BigInt::zero())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "divisor": self.base_locus.divisor.to_string(),
            "chi": JsonInt(self.chi.clone()),
            "wdim": JsonInt(self.value.clone()),
            "wdim_truncated": JsonInt(self.truncated()),
            "base_locus": self.base_locus.to_json(),
        })
    }
}

pub fn wdim(d: &DivisorClass, degree_bound: Option<u64>) -> Result<Wdim> {
    let planes = WeylPlanes::build(d.space, degree_bound)?;
    wdim_with(d, &planes)
}

/// χ(D) + Σ_r Σ_W (−1)^{r+1} C(n + k_W(D) − r − 1, n).
pub fn wdim_with(d: &DivisorClass, planes: &WeylPlanes) -> Result<Wdim> {
    let base_locus = weyl_base_locus_with(d, planes)?;
    let chi = euler_characteristic(d);
    let n = d.space.n as i64;
    let mut value = chi.clone();
    for (p, k) in &base_locus.components {
        let k = k.to_string().parse::<i64>().map_err(|_| Error::ResourceCap(format!("k_W = {k} too large")))?;
        let r = p.r as i64;
        let term = binomial(n + k - r - 1, n);
        if r % 2 == 1 {
            value += term;
        } else {
            value -= term;
        }
    }
    Ok(Wdim { chi, value, base_locus })
}

/// Spaces on which every effective divisor pairs nonnegatively with F.
pub fn f_nonnegative_on_effective(space: Space) -> bool {
    space.mori_dream() || matches!((space.n, space.s), (2, 9) | (3, 8) | (5, 9))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EmptyReason {
    NegativeDegree,
    MultiplicityAboveDegree(usize),
    NegativeOnF,
}

impl std::fmt::Display for EmptyReason {
    fn fmt(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
        match self {
            EmptyReason::NegativeDegree => write!(f, "negative degree"),
            EmptyReason::MultiplicityAboveDegree(i) => write!(f, "m_{} exceeds the degree", i + 1),
            EmptyReason::NegativeOnF => write!(f, "negative on the anticanonical curve class"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct EffectivityGate {
    /// Final class after dropping fixed E_i parts and Cremona reduction.
    pub reduced: DivisorClass,
    pub word: WeylWord,
    pub empty: Option<EmptyReason>,
}

/// Proves emptiness of |D| where a cheap argument applies. Negative m_i are
/// fixed E_i parts and are dropped, then the class is Cremona-reduced; both
/// steps preserve h^0. A class surviving every test is not claimed effective.
pub fn effectivity(d: &DivisorClass) -> Result<EffectivityGate> {
    let f_test = f_nonnegative_on_effective(d.space);
    let f = anticanonical_curve(d.space);
    let weyl = d.space.s > d.space.n;
    let mut cur = d.clone();
    let mut word = WeylWord::identity();
    loop {
        for m in cur.m.iter_mut() {
            if m.is_negative() {
                *m = BigInt::zero();
            }
        }
        let verdict = if cur.d.is_negative() {
            Some(EmptyReason::NegativeDegree)
        } else if let Some(i) = cur.m.iter().position(|m| m > &cur.d) {
            Some(EmptyReason::MultiplicityAboveDegree(i))
        } else if f_test && intersect(&cur, &f)?.is_negative() {
            Some(EmptyReason::NegativeOnF)
        } else {
            None
        };
        if verdict.is_some() || !weyl {
            return Ok(EffectivityGate { reduced: cur, word, empty: verdict });
        }
        let (g, b) = max_b_gamma(&cur)?;
        if !b.is_positive() {
            return Ok(EffectivityGate { reduced: cur, word, empty: None });
        }
        cur = cremona_divisor(&cur, &g)?.0;
        word = word.then(g);
    }
}

#[derive(Clone, Debug)]
pub struct ExpectedDimension {
    pub wdim: Wdim,
    pub gate: EffectivityGate,
    /// 0 when the gate proves emptiness, max(wdim, 0) otherwise.
    pub value: BigInt,
}

impl ExpectedDimension {
    pub fn to_json(&self) -> serde_json::Value {
        let mut v = self.wdim.to_json();
        v["expected_dimension"] = serde_json::to_value(JsonInt(self.value.clone())).expect("integer");
        v["empty_reason"] = serde_json::json!(self.gate.empty.as_ref().map(|r| r.to_string()));
        v["reduced_class"] = serde_json::json!(self.gate.reduced.to_string());
        v
    }
}

pub fn expected_dimension_with(d: &DivisorClass, planes: &WeylPlanes) -> Result<ExpectedDimension> {
    let wdim = wdim_with(d, planes)?;
    let gate = effectivity(d)?;
    let value = if gate.empty.is_some() { BigInt::zero() } else { wdim.truncated() };
    Ok(ExpectedDimension { wdim, gate, value })
}

pub fn expected_dimension(d: &DivisorClass, degree_bound: Option<u64>) -> Result<ExpectedDimension> {
    let planes = WeylPlanes::build(d.space, degree_bound)?;
    expected_dimension_with(d, &planes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycles::{classify_weyl_planes, Join, sweeping_curve};
    use crate::weyl::{cremona_divisor, CremonaIndexSet};

    fn sp(n: usize, s: usize) -> Space {
        Space::new(n, s).unwrap()
    }

    fn div(space: Space, text: &str) -> DivisorClass {
        DivisorClass::parse(space, text).unwrap()
    }

    fn plane_of(space: Space, idx: &[usize]) -> WeylPlane {
        let r = idx.len() - 1;
        let j = Join::from_one_based(space, idx, 0).unwrap();
        classify_weyl_planes(space, r, None)
            .unwrap()
            .planes
            .into_iter()
            .find(|p| p.sweeping_curve == sweeping_curve(&j))
            .unwrap()
    }

    #[test]
    fn k_w_examples() {
        let x = sp(3, 5);
        let l12 = plane_of(x, &[1, 2]);
        assert_eq!(k_w(&div(x, "3;2,2,0,0,0"), &l12).unwrap(), BigInt::from(1));
        let e1 = classify_weyl_planes(x, 2, None)
            .unwrap()
            .planes
            .into_iter()
            .find(|p| p.sweeping_curve == CurveClass::exceptional_line(x, 0))
            .unwrap();
        assert_eq!(k_w(&div(x, "1;-2,0,0,0,0"), &e1).unwrap(), BigInt::from(2));
        for m in 1..5 {
            let d = div(x, "3;2,2,0,0,0").scaled(&BigInt::from(m));
            assert_eq!(k_w(&d, &l12).unwrap(), BigInt::from(m));
        }
    }

    #[test]
    fn base_locus_examples() {
        let x = sp(2, 5);
        let b = weyl_base_locus(&div(x, "4;2,2,2,2,2"), None).unwrap();
        assert_eq!(b.components.len(), 1);
        assert_eq!(b.components[0].0.sweeping_curve.to_string(), "2;1,1,1,1,1");
        assert_eq!(b.components[0].1, BigInt::from(2));
        assert!(b.complete);

        for (n, s) in [(3, 5), (4, 7), (2, 8)] {
            assert!(weyl_base_locus(&DivisorClass::hyperplane(sp(n, s)), None).unwrap().is_empty());
        }

        let y = sp(4, 5);
        let b = weyl_base_locus(&div(y, "6;5,5,4,4,4"), None).unwrap();
        assert!(b.components.iter().any(|(p, k)| p.r == 2 && k >= &BigInt::from(1)));
    }

    #[test]
    fn chamber_examples() {
        let x = sp(4, 5);
        let h = chamber_signature(&DivisorClass::hyperplane(x), None).unwrap();
        assert!(h.signs.iter().all(|(_, s)| *s >= 0));
        let a = div(x, "2;1,1,0,0,0");
        let b = div(x, "6;5,5,4,4,4");
        assert!(same_chamber(&a, &a.scaled(&BigInt::from(2)), None).unwrap());
        assert!(!same_chamber(&a, &b, None).unwrap());
        let sb = chamber_signature(&b, None).unwrap();
        assert!(sb.signs.iter().any(|(c, s)| *s < 0 && c.delta == BigInt::from(2)));
    }

    #[test]
    fn euler_characteristic_examples() {
        assert_eq!(euler_characteristic(&div(sp(3, 2), "2;2,2")), BigInt::from(2));
        assert_eq!(euler_characteristic(&div(sp(2, 5), "4;2,2,2,2,2")), BigInt::from(0));
        for n in 2..5 {
            for d in 0..6 {
                let x = sp(n, 3);
                let mut dh = DivisorClass::hyperplane(x).scaled(&BigInt::from(d));
                dh.m = vec![BigInt::zero(); 3];
                assert_eq!(euler_characteristic(&dh), binomial((n + d) as i64, n as i64));
            }
        }
    }

    #[test]
    fn wdim_examples() {
        let w = wdim(&div(sp(3, 2), "2;2,2"), None).unwrap();
        assert_eq!((w.chi.clone(), w.value.clone()), (BigInt::from(2), BigInt::from(3)));
        let w = wdim(&div(sp(2, 5), "4;2,2,2,2,2"), None).unwrap();
        assert_eq!((w.chi.clone(), w.value.clone()), (BigInt::from(0), BigInt::from(1)));
        for n in 2..6 {
            let x = sp(n, n + 2);
            assert_eq!(wdim(&DivisorClass::hyperplane(x), None).unwrap().value, BigInt::from(n as i64 + 1));
        }
    }

    #[test]
    fn wdim_is_cremona_invariant_on_x37() {
        let x = sp(3, 7);
        let planes = WeylPlanes::build(x, None).unwrap();
        let d = div(x, "6;-1,5,1,2,-1,6,4");
        let g = CremonaIndexSet::from_one_based(x, &[2, 5, 6, 7]).unwrap();
        let (e, _) = cremona_divisor(&d, &g).unwrap();
        assert_eq!(wdim_with(&d, &planes).unwrap().value, wdim_with(&e, &planes).unwrap().value);
    }

    #[test]
    fn gate_examples() {
        let x = sp(2, 3);
        assert_eq!(effectivity(&div(x, "3;3,3,3")).unwrap().empty, Some(EmptyReason::NegativeDegree));
        assert_eq!(
            effectivity(&div(x, "2;3,0,0")).unwrap().empty,
            Some(EmptyReason::MultiplicityAboveDegree(0))
        );
        assert!(effectivity(&div(x, "2;1,1,1")).unwrap().empty.is_none());
        let y = sp(3, 8);
        assert!(effectivity(&div(y, "2;1,1,1,1,1,1,1,1")).unwrap().empty.is_none());
        let g = effectivity(&div(y, "3;2,2,2,2,2,1,1,1")).unwrap();
        assert_eq!(g.empty, Some(EmptyReason::NegativeOnF));
        let z = sp(3, 9);
        assert!(effectivity(&div(z, "4;2,2,2,2,2,2,2,2,2")).unwrap().empty.is_none());
    }

    #[test]
    fn non_mds_needs_bound() {
        let x = sp(3, 9);
        assert!(matches!(wdim(&DivisorClass::hyperplane(x), None), Err(Error::MissingDegreeBound(_))));
        let w = wdim(&DivisorClass::hyperplane(x), Some(8)).unwrap();
        assert!(!w.base_locus.complete);
    }
}
