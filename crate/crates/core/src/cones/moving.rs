//! Cones C_k of k-moving curves and the divisor cones D_k they are dual to.
//!
//! Curve classes enter cones through w(c) = (δ, −μ_1, …, −μ_s) and divisor
//! classes through (d, m_1, …, m_s), so D·c is the ordinary dot product.

use itertools::Itertools;
use num_bigint::BigInt;
use serde::Serialize;
use std::collections::HashSet;

use super::{cone_from_inequalities, dual_cone, missing_from, RationalCone};
use crate::error::{Error, Result};
use crate::lattice::{dm_dual_curve, CurveClass, DivisorClass, Space};
use crate::weyl::effective_orbit;

/// Largest ambient dimension s+1 handled without an explicit override.
pub const DEFAULT_DIM_CAP: usize = 10;

pub fn curve_vector(c: &CurveClass) -> Vec<BigInt> {
    std::iter::once(c.delta.clone()).chain(c.mu.iter().map(|m| -m)).collect()
}

pub fn curve_from_vector(space: Space, v: &[BigInt]) -> Result<CurveClass> {
    if v.len() != space.s + 1 {
        return Err(Error::LengthMismatch { expected: space.s + 1, got: v.len() });
    }
    Ok(CurveClass { space, delta: v[0].clone(), mu: v[1..].iter().map(|m| -m).collect() })
}

fn check_cap(space: Space, cap: usize) -> Result<()> {
    if space.s + 1 > cap {
        return Err(Error::ResourceCap(format!(
            "{space} has ambient dimension {} above the cap {cap}",
            space.s + 1
        )));
    }
    Ok(())
}

fn check_k(space: Space, k: usize) -> Result<()> {
    if k + 1 > space.n {
        return Err(Error::InvalidBound(format!("k = {k} outside 0..{}", space.n - 1)));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
enum Family {
    Line,
    LineMinusPoint,
    Exceptional,
    Linear(usize),
}

impl Family {
    fn label(self) -> String {
        match self {
            Family::Line => "h".into(),
            Family::LineMinusPoint => "h-e_i".into(),
            Family::Exceptional => "e_i".into(),
            Family::Linear(size) => format!("c_I, |I|={size}"),
        }
    }

    fn seeds(self, space: Space) -> Vec<CurveClass> {
        match self {
            Family::Line => vec![CurveClass::line(space)],
            Family::LineMinusPoint => (0..space.s)
                .map(|i| {
                    let mut c = CurveClass::line(space);
                    c.mu[i] = BigInt::from(1);
                    c
                })
                .collect(),
            Family::Exceptional => (0..space.s).map(|i| CurveClass::exceptional_line(space, i)).collect(),
            Family::Linear(size) => {
                (0..space.s).combinations(size).map(|idx| CurveClass::linear(space, &idx)).collect()
            }
        }
    }
}

fn families(space: Space, k: usize) -> Vec<Family> {
    let n = space.n;
    match k {
        0 => vec![Family::Line, Family::LineMinusPoint],
        1 => vec![Family::LineMinusPoint, Family::Exceptional],
        _ if n == 4 && space.s == 8 && k == 3 => vec![Family::Linear(2), Family::Exceptional],
        _ => vec![Family::LineMinusPoint, Family::Exceptional, Family::Linear(n - k + 1)],
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitCount {
    pub seed: String,
    /// Distinct Weyl orbits met by the seeds of this family.
    pub orbits: usize,
    pub classes: usize,
    pub complete: bool,
}

#[derive(Clone, Debug)]
pub struct ConeGeneratorReport {
    pub space: Space,
    pub k: usize,
    pub counts: Vec<OrbitCount>,
    pub generators: Vec<CurveClass>,
    pub complete: bool,
    /// Filled in by [`ConeGeneratorReport::mark_extremal`].
    pub extremal: Option<Vec<bool>>,
}

impl ConeGeneratorReport {
    pub fn total_orbits(&self) -> usize {
        self.counts.iter().map(|c| c.orbits).sum()
    }

    pub fn mark_extremal(&mut self, cone: &RationalCone) -> Result<()> {
        let flags = self.generators.iter().map(|g| cone.is_extremal(&curve_vector(g))).collect::<Result<_>>()?;
        self.extremal = Some(flags);
        Ok(())
    }

    /// SHA-256 over the space, k, completeness and the sorted generators.
    pub fn version_hash(&self) -> String {
        let mut text = format!("{}|k{}|{}", self.space, self.k, self.complete);
        for g in &self.generators {
            text.push(';');
            text.push_str(&g.to_string());
        }
        crate::weyl::sha256_hex(text.as_bytes())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "space": self.space.to_string(),
            "k": self.k,
            "complete": self.complete,
            "orbits": self.counts,
            "orbit_total": self.total_orbits(),
            "generators": self.generators.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
            "extremal": self.extremal,
        })
    }
}

/// Generators of C_k collected from effective Weyl orbits.
pub fn ck_generators(space: Space, k: usize, degree_bound: Option<u64>) -> Result<(ConeGeneratorReport, RationalCone)> {
    ck_generators_capped(space, k, degree_bound, DEFAULT_DIM_CAP)
}

pub fn ck_generators_capped(
    space: Space,
    k: usize,
    degree_bound: Option<u64>,
    dim_cap: usize,
) -> Result<(ConeGeneratorReport, RationalCone)> {
    check_k(space, k)?;
    check_cap(space, dim_cap)?;
    space.require_weyl()?;
    if degree_bound.is_none() && !space.mori_dream() {
        return Err(Error::MissingDegreeBound(space));
    }
    let mut counts = Vec::new();
    let mut generators: Vec<CurveClass> = Vec::new();
    let mut all: HashSet<CurveClass> = HashSet::new();
    for fam in families(space, k) {
        let mut seen: HashSet<CurveClass> = HashSet::new();
        let (mut orbits, mut complete) = (0, true);
        for seed in fam.seeds(space) {
            if seen.contains(&seed) {
                continue;
            }
            let cat = effective_orbit(&seed, degree_bound)?;
            orbits += 1;
            complete &= cat.complete;
            for c in cat.classes() {
                seen.insert(c.clone());
                if all.insert(c.clone()) {
                    generators.push(c.clone());
                }
            }
        }
        counts.push(OrbitCount { seed: fam.label(), orbits, classes: seen.len(), complete });
    }
    generators.sort();
    let complete = counts.iter().all(|c| c.complete);
    let cone = RationalCone::new(space.s + 1, generators.iter().map(curve_vector).collect())?;
    let report = ConeGeneratorReport { space, k, counts, generators, complete, extremal: None };
    Ok((report, cone))
}

/// c_{I,t} as a curve class, for any size of I.
fn secant_class(space: Space, idx: &[usize], t: usize) -> CurveClass {
    let (n, t) = (space.n as i64, t as i64);
    let mut c = CurveClass::zero(space);
    c.delta = BigInt::from(idx.len() as i64 + (n + 1) * t - 1);
    for (i, m) in c.mu.iter_mut().enumerate() {
        *m = BigInt::from(if idx.contains(&i) { t + 1 } else { t });
    }
    c
}

/// Curve classes whose nonnegativity cuts out D_k on X^n_{n+3}:
/// h and h−e_i; nh−Σe_i+e_j; c_{I,t} with |I| = n−2t−k+1 ≥ 0; and e_i when k ≥ 1.
pub fn dk_inequalities(space: Space, k: usize) -> Result<Vec<CurveClass>> {
    check_k(space, k)?;
    if space.s != space.n + 3 {
        return Err(Error::Unsupported(format!("explicit D_k inequalities need s = n+3, got {space}")));
    }
    let (n, s) = (space.n, space.s);
    let mut out = vec![CurveClass::line(space)];
    for i in 0..s {
        let mut c = CurveClass::line(space);
        c.mu[i] = BigInt::from(1);
        out.push(c);
    }
    for j in 0..s {
        let mut c = CurveClass::zero(space);
        c.delta = BigInt::from(n as i64);
        for (i, m) in c.mu.iter_mut().enumerate() {
            *m = BigInt::from(i64::from(i != j));
        }
        out.push(c);
    }
    for t in 0..=(n + 1) / 2 {
        let size = n as i64 - 2 * t as i64 - k as i64 + 1;
        if size < 0 || (size == 0 && t == 0) {
            continue;
        }
        for idx in (0..s).combinations(size as usize) {
            out.push(secant_class(space, &idx, t));
        }
    }
    if k >= 1 {
        out.extend((0..s).map(|i| CurveClass::exceptional_line(space, i)));
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// The Weyl divisors: the effective orbit of E_1.
pub fn weyl_divisors(space: Space, degree_bound: Option<u64>) -> Result<Vec<DivisorClass>> {
    let cat = effective_orbit(&DivisorClass::exceptional(space, 0), degree_bound)?;
    Ok(cat.classes().cloned().collect())
}

/// The divisor cone D_k. On X^n_{n+3} it is cut out by [`dk_inequalities`].
/// On the other Mori dream spaces D_0 is spanned by the Weyl divisors and D_1
/// is the part of D_0 pairing nonnegatively, in the DM sense, with every Weyl divisor.
pub fn dk_inequality_cone(space: Space, k: usize) -> Result<RationalCone> {
    dk_inequality_cone_capped(space, k, DEFAULT_DIM_CAP)
}

pub fn dk_inequality_cone_capped(space: Space, k: usize, dim_cap: usize) -> Result<RationalCone> {
    check_k(space, k)?;
    check_cap(space, dim_cap)?;
    let dim = space.s + 1;
    if space.s == space.n + 3 {
        let rows: Vec<Vec<BigInt>> = dk_inequalities(space, k)?.iter().map(curve_vector).collect();
        return cone_from_inequalities(dim, &rows);
    }
    if !space.mori_dream() || k > 1 || space.s < space.n + 1 {
        return Err(Error::Unsupported(format!("D_{k} of {space}")));
    }
    let weyl = weyl_divisors(space, None)?;
    let eff = RationalCone::new(dim, weyl.iter().map(|d| d.to_vector()).collect())?;
    if k == 0 {
        return Ok(eff);
    }
    let mut rows = eff.inequalities().generators();
    rows.extend(weyl.iter().map(|w| curve_vector(&dm_dual_curve(w))));
    cone_from_inequalities(dim, &rows)
}

#[derive(Clone, Debug)]
pub struct DualityReport {
    pub space: Space,
    pub k: usize,
    pub equal: bool,
    pub ck_generators: usize,
    pub dual_generators: usize,
    /// Generators of C_k lying outside D_k^∨.
    pub not_in_dual: Vec<CurveClass>,
    /// Generators of D_k^∨ lying outside C_k.
    pub not_in_ck: Vec<CurveClass>,
    /// Version hash of the C_k generator catalog.
    pub catalog_hash: String,
}

impl DualityReport {
    pub fn to_json(&self) -> serde_json::Value {
        let show = |v: &[CurveClass]| v.iter().map(|c| c.to_string()).collect::<Vec<_>>();
        serde_json::json!({
            "space": self.space.to_string(),
            "k": self.k,
            "equal": self.equal,
            "ck_generators": self.ck_generators,
            "dual_generators": self.dual_generators,
            "not_in_dual": show(&self.not_in_dual),
            "not_in_ck": show(&self.not_in_ck),
            "catalog_hash": self.catalog_hash,
        })
    }
}

/// Compares C_k with the dual of D_k exactly.
pub fn verify_strong_duality(space: Space, k: usize, degree_bound: Option<u64>) -> Result<DualityReport> {
    if !space.mori_dream() {
        return Err(Error::Unsupported(format!("strong duality check on {space}, which is not a Mori dream space")));
    }
    let (report, ck) = ck_generators(space, k, degree_bound)?;
    let dk = dk_inequality_cone(space, k)?;
    let dual = dual_cone(&dk)?;
    let back = |vs: Vec<Vec<BigInt>>| vs.iter().map(|v| curve_from_vector(space, v)).collect::<Result<Vec<_>>>();
    let not_in_dual = back(missing_from(&ck, &dual)?)?;
    let not_in_ck = back(missing_from(&dual, &ck)?)?;
    Ok(DualityReport {
        space,
        k,
        equal: not_in_dual.is_empty() && not_in_ck.is_empty(),
        ck_generators: report.generators.len(),
        dual_generators: dual.generators().len(),
        not_in_dual,
        not_in_ck,
        catalog_hash: report.version_hash(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::binomial;
    use crate::lattice::dm_pairing;
    use num_traits::Signed;

    fn sp(n: usize, s: usize) -> Space {
        Space::new(n, s).unwrap()
    }

    #[test]
    fn curve_vectors_realize_intersection() {
        let x = sp(3, 6);
        let d = DivisorClass::from_ints(x, 3, &[2, 1, 0, 1, 1, -1]).unwrap();
        let c = CurveClass::parse(x, "4;1,2,1,0,1,1").unwrap();
        let dot = crate::arith::dot(&d.to_vector(), &curve_vector(&c));
        assert_eq!(dot, crate::lattice::intersect(&d, &c).unwrap());
        assert_eq!(curve_from_vector(x, &curve_vector(&c)).unwrap(), c);
    }

    #[test]
    fn table_orbit_counts() {
        for n in 3..=5 {
            let a = sp(n, n + 1);
            for k in 2..n {
                let (r, _) = ck_generators(a, k, None).unwrap();
                let c = binomial((n + 1) as i64, (n - k + 1) as i64).to_usize().unwrap();
                assert_eq!(r.total_orbits(), 2 * n + 2 + c, "X^{n}_{} k={k}", n + 1);
            }
            assert_eq!(ck_generators(a, 1, None).unwrap().0.total_orbits(), 2 * n + 2);

            let b = sp(n, n + 2);
            for k in 2..n {
                let c = binomial((n + 2) as i64, (n - k + 1) as i64).to_usize().unwrap();
                assert_eq!(ck_generators(b, k, None).unwrap().0.total_orbits(), 2 + c);
            }
            assert_eq!(ck_generators(b, 1, None).unwrap().0.total_orbits(), 2);

            let c = sp(n, n + 3);
            for k in 2..n {
                assert_eq!(ck_generators(c, k, None).unwrap().0.total_orbits(), 3);
            }
            assert_eq!(ck_generators(c, 1, None).unwrap().0.total_orbits(), 2);
        }
    }

    use num_traits::ToPrimitive;

    #[test]
    fn dk_membership_examples() {
        let x = sp(3, 6);
        let nef = dk_inequality_cone(x, 2).unwrap();
        assert!(nef.contains(&DivisorClass::hyperplane(x).to_vector()).unwrap());
        assert!(!nef.contains(&DivisorClass::exceptional(x, 0).to_vector()).unwrap());

        let eff = dk_inequality_cone(x, 0).unwrap();
        assert!(eff.contains(&DivisorClass::exceptional(x, 0).to_vector()).unwrap());
        let minus_h = DivisorClass::hyperplane(x).scaled(&BigInt::from(-1));
        assert!(!eff.contains(&minus_h.to_vector()).unwrap());

        let y = sp(4, 7);
        let mov = dk_inequality_cone(y, 1).unwrap();
        let k = crate::lattice::anticanonical_divisor(y);
        assert!(mov.contains(&k.to_vector()).unwrap());
        assert!(mov.contains(&DivisorClass::hyperplane(y).to_vector()).unwrap());
        for i in 0..7 {
            assert!(!mov.contains(&DivisorClass::exceptional(y, i).to_vector()).unwrap());
        }
    }

    #[test]
    fn movable_cone_matches_dm_pairing_test() {
        let y = sp(4, 7);
        let mov = dk_inequality_cone(y, 1).unwrap();
        let weyl = weyl_divisors(y, None).unwrap();
        for g in mov.generators() {
            let d = DivisorClass::from_vector(y, g).unwrap();
            for w in &weyl {
                assert!(!dm_pairing(&d, w).unwrap().is_negative(), "{d} against {w}");
            }
        }
    }

    #[test]
    fn strong_duality_x36() {
        for k in 0..3 {
            let r = verify_strong_duality(sp(3, 6), k, None).unwrap();
            assert!(r.equal, "{:?}", r.to_json());
        }
    }

    #[test]
    fn x26_minus_one_classes_dual_to_conics_and_lines() {
        let x = sp(2, 6);
        let weyl = weyl_divisors(x, None).unwrap();
        assert_eq!(weyl.len(), 27);
        let r = verify_strong_duality(x, 0, None).unwrap();
        assert!(r.equal, "{:?}", r.to_json());
    }

    #[test]
    fn filtration_x46() {
        let x = sp(4, 6);
        let cones: Vec<RationalCone> = (0..4).map(|k| ck_generators(x, k, None).unwrap().1).collect();
        for k in 0..3 {
            assert!(missing_from(&cones[k], &cones[k + 1]).unwrap().is_empty(), "C_{k} not in C_{}", k + 1);
        }
    }

    #[test]
    fn c0_generators_are_extremal_x36() {
        let (mut r, cone) = ck_generators(sp(3, 6), 0, None).unwrap();
        r.mark_extremal(&cone).unwrap();
        assert!(r.extremal.unwrap().iter().all(|&e| e));
    }

    #[test]
    fn caps_and_errors() {
        assert!(matches!(ck_generators(sp(5, 10), 1, None), Err(Error::ResourceCap(_))));
        assert!(matches!(ck_generators(sp(3, 8), 1, None), Err(Error::MissingDegreeBound(_))));
        assert!(matches!(verify_strong_duality(sp(3, 8), 1, Some(20)), Err(Error::Unsupported(_))));
        assert!(ck_generators(sp(3, 6), 3, None).is_err());
        assert!(matches!(dk_inequality_cone(sp(4, 8), 2), Err(Error::Unsupported(_))));
    }
}
