//! Joins J(L_I, σ_t), their sweeping curves and base-locus multiplicities,
//! and catalogs of Weyl r-planes.
//!
//! L_I is the linear span of the points in I and σ_t the t-secant variety of
//! the rational normal curve through n+3 points, so t ≥ 1 needs s = n+3.

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::arith::{binomial, json_vec, JsonInt};
use crate::error::{Error, Result};
use crate::lattice::{intersect, CurveClass, DivisorClass, Space};
use crate::weyl::{effective_orbit, OrbitCatalog, WeylWord};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Join {
    pub space: Space,
    /// 0-based, sorted.
    pub i: Vec<usize>,
    pub t: usize,
}

#[derive(Serialize, Deserialize)]
struct JoinJson {
    #[serde(rename = "I")]
    i: Vec<usize>,
    t: usize,
}

impl Join {
    pub fn new(space: Space, idx: &[usize], t: usize) -> Result<Self> {
        let set: BTreeSet<usize> = idx.iter().copied().collect();
        if set.len() != idx.len() {
            return Err(Error::InvalidJoin(format!("repeated index in {idx:?}")));
        }
        if let Some(&bad) = set.iter().find(|&&i| i >= space.s) {
            return Err(Error::InvalidJoin(format!("index {} out of range", bad + 1)));
        }
        if t >= 1 && space.s != space.n + 3 {
            return Err(Error::InvalidJoin(format!("secant joins need s = n+3, got {space}")));
        }
        if t == 0 && set.is_empty() {
            return Err(Error::InvalidJoin("empty join".into()));
        }
        let r = set.len() as i64 + 2 * t as i64 - 1;
        if r < 0 || r > space.n as i64 - 1 {
            return Err(Error::InvalidJoin(format!("dimension {r} outside 0..{}", space.n - 1)));
        }
        Ok(Join { space, i: set.into_iter().collect(), t })
    }

    pub fn from_one_based(space: Space, idx: &[usize], t: usize) -> Result<Self> {
        if idx.contains(&0) {
            return Err(Error::InvalidJoin("indices are 1-based".into()));
        }
        Self::new(space, &idx.iter().map(|i| i - 1).collect::<Vec<_>>(), t)
    }

    /// The linear span L_I.
    pub fn linear(space: Space, idx: &[usize]) -> Result<Self> {
        Self::new(space, idx, 0)
    }

    pub fn dim(&self) -> usize {
        self.i.len() + 2 * self.t - 1
    }

    pub fn contains_index(&self, j: usize) -> bool {
        self.i.binary_search(&j).is_ok()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(JoinJson { i: self.i.iter().map(|x| x + 1).collect(), t: self.t })
            .expect("join serializes")
    }

    pub fn from_json(space: Space, v: &serde_json::Value) -> Result<Self> {
        let j: JoinJson = serde_json::from_value(v.clone())?;
        Self::from_one_based(space, &j.i, j.t)
    }
}

impl std::fmt::Display for Join {
    fn fmt(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
        let idx = self.i.iter().map(|x| x + 1).join(",");
        if self.t == 0 {
            write!(f, "L{{{idx}}}")
        } else {
            write!(f, "J(L{{{idx}}},sigma_{})", self.t)
        }
    }
}

/// c_{I,t} = (|I|+(n+1)t−1)h − Σ_{i∈I}(t+1)e_i − Σ_{i∉I} t e_i.
pub fn sweeping_curve(j: &Join) -> CurveClass {
    let (n, t) = (j.space.n as i64, j.t as i64);
    let delta = j.i.len() as i64 + (n + 1) * t - 1;
    let mu: Vec<BigInt> =
        (0..j.space.s).map(|k| BigInt::from(if j.contains_index(k) { t + 1 } else { t })).collect();
    CurveClass { space: j.space, delta: BigInt::from(delta), mu }
}

/// δH_r − Σ μ_i E_{r,i} for an r-cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleDegrees {
    pub r: usize,
    pub hr_degree: BigInt,
    pub er_degrees: Vec<BigInt>,
}

impl CycleDegrees {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "r": self.r,
            "hr_degree": JsonInt(self.hr_degree.clone()),
            "er_degrees": json_vec(&self.er_degrees),
        })
    }

    fn zero(r: usize, s: usize) -> Self {
        CycleDegrees { r, hr_degree: BigInt::zero(), er_degrees: vec![BigInt::zero(); s] }
    }

    fn add(&mut self, other: &CycleDegrees) {
        self.hr_degree += &other.hr_degree;
        for (a, b) in self.er_degrees.iter_mut().zip(&other.er_degrees) {
            *a += b;
        }
    }
}

pub fn join_cycle_degrees(j: &Join) -> CycleDegrees {
    let (n, t, r) = (j.space.n as i64, j.t as i64, j.dim() as i64);
    let on = binomial(t + n - r, t);
    let off = binomial(t + n - r - 1, t - 1);
    CycleDegrees {
        r: j.dim(),
        hr_degree: on.clone(),
        er_degrees: (0..j.space.s).map(|k| if j.contains_index(k) { on.clone() } else { off.clone() }).collect(),
    }
}

/// κ = −(|I|+(n+1)t−1)d + Σ_{i∈I}(t+1)m_i + Σ_{i∉I} t m_i, evaluated directly.
pub fn kappa(j: &Join, d: &DivisorClass) -> Result<BigInt> {
    j.space.check_same(&d.space)?;
    let (n, t) = (j.space.n as i64, j.t as i64);
    let mut k = -BigInt::from(j.i.len() as i64 + (n + 1) * t - 1) * &d.d;
    for (idx, m) in d.m.iter().enumerate() {
        let w = if j.contains_index(idx) { t + 1 } else { t };
        k += BigInt::from(w) * m;
    }
    Ok(k)
}

/// Containment multiplicity max(0, κ).
pub fn containment(j: &Join, d: &DivisorClass) -> Result<BigInt> {
    Ok(kappa(j, d)?.max(BigInt::zero()))
}

pub fn is_orthogonal(j: &Join, d: &DivisorClass) -> Result<bool> {
    Ok(intersect(d, &sweeping_curve(j))?.is_zero())
}

/// The Weyl divisor E_{𝓘,σ_τ} = J(L_𝓘, σ_τ) with |𝓘| = n − 2τ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylDivisor {
    pub join: Join,
}

impl WeylDivisor {
    pub fn new(space: Space, idx: &[usize], tau: usize) -> Result<Self> {
        let join = Join::new(space, idx, tau)?;
        if join.dim() != space.n - 1 {
            return Err(Error::InvalidJoin(format!("{join} is not a divisor")));
        }
        Ok(WeylDivisor { join })
    }

    pub fn tau(&self) -> usize {
        self.join.t
    }

    pub fn indices(&self) -> &[usize] {
        &self.join.i
    }

    /// (τ+1)H − Σ_{i∈𝓘}(τ+1)E_i − Σ_{i∉𝓘} τE_i.
    pub fn divisor(&self) -> DivisorClass {
        let tau = self.tau() as i64;
        let s = self.join.space.s;
        DivisorClass {
            space: self.join.space,
            d: BigInt::from(tau + 1),
            m: (0..s)
                .map(|k| BigInt::from(if self.join.contains_index(k) { tau + 1 } else { tau }))
                .collect(),
        }
    }

    /// κ_V(D) = τ − t + 1 − |I∖𝓘|.
    pub fn kappa_of(&self, v: &Join) -> i64 {
        let outside = v.i.iter().filter(|k| !self.join.contains_index(**k)).count() as i64;
        self.tau() as i64 - v.t as i64 + 1 - outside
    }
}

/// Components of D ∩ V for a join V orthogonal to the Weyl divisor D.
pub fn intersection_decomposition(d: &WeylDivisor, v: &Join) -> Result<Vec<Join>> {
    d.join.space.check_same(&v.space)?;
    let k = d.kappa_of(v);
    if k != 0 {
        return Err(Error::NotOrthogonal { kappa: k });
    }
    if v.dim() == 0 {
        return Err(Error::InvalidJoin("a point has no proper intersection components".into()));
    }
    let mut out = Vec::new();
    for &i in v.i.iter().filter(|i| !d.join.contains_index(**i)) {
        let rest: Vec<usize> = v.i.iter().copied().filter(|&x| x != i).collect();
        out.push(Join::new(v.space, &rest, v.t)?);
    }
    if v.t >= 1 {
        for &i in d.indices().iter().filter(|i| !v.contains_index(**i)) {
            let mut more = v.i.clone();
            more.push(i);
            out.push(Join::new(v.space, &more, v.t - 1)?);
        }
    }
    Ok(out)
}

/// Degrees of the (r−1)-cycle D·V computed from the classes of D and V alone.
pub fn intersection_class_degrees(d: &WeylDivisor, v: &Join) -> CycleDegrees {
    let (n, t, r) = (v.space.n as i64, v.t as i64, v.dim() as i64);
    let tau = d.tau() as i64;
    let on = binomial(t + n - r, t);
    let off = binomial(t + n - r - 1, t - 1);
    let er = (0..v.space.s)
        .map(|j| {
            let in_d = d.join.contains_index(j);
            let in_v = v.contains_index(j);
            match (in_d, in_v) {
                (true, true) => BigInt::from(tau + 1) * &on,
                (true, false) => BigInt::from(tau + 1) * &off,
                (false, true) => BigInt::from(tau) * &on,
                (false, false) => BigInt::from(tau) * &off,
            }
        })
        .collect();
    CycleDegrees { r: v.dim() - 1, hr_degree: BigInt::from(tau + 1) * &on, er_degrees: er }
}

/// Sum of the cycle degrees of a list of joins of equal dimension.
pub fn total_degrees(joins: &[Join], r: usize, s: usize) -> CycleDegrees {
    let mut acc = CycleDegrees::zero(r, s);
    for j in joins {
        acc.add(&join_cycle_degrees(j));
    }
    acc
}

fn reduction_moves(v: &Join) -> Vec<(Join, CurveClass)> {
    let space = v.space;
    let n = space.n as i64;
    let mut out = Vec::new();
    for &i in &v.i {
        let rest: Vec<usize> = v.i.iter().copied().filter(|&x| x != i).collect();
        if let Ok(w) = Join::new(space, &rest, v.t) {
            let mut line = CurveClass::line(space);
            line.mu[i] = BigInt::from(1);
            out.push((w, line));
        }
    }
    if v.t >= 1 {
        for i in (0..space.s).filter(|i| !v.contains_index(*i)) {
            let mut more = v.i.clone();
            more.push(i);
            if let Ok(w) = Join::new(space, &more, v.t - 1) {
                let mut line = CurveClass::zero(space);
                line.delta = BigInt::from(n);
                for (k, m) in line.mu.iter_mut().enumerate() {
                    if k != i {
                        *m = BigInt::from(1);
                    }
                }
                out.push((w, line));
            }
        }
    }
    out
}

/// Writes c_V = c_W + Σ ℓ_k with each ℓ_k a (0)-Weyl line, following
/// a shortest chain of the two reduction moves from V down to W.
pub fn curve_decomposition(v: &Join, w: &Join) -> Result<(CurveClass, Vec<CurveClass>)> {
    v.space.check_same(&w.space)?;
    let cw = sweeping_curve(w);
    if v == w {
        return Ok((cw, Vec::new()));
    }
    let mut prev: HashMap<Join, (Join, CurveClass)> = HashMap::new();
    let mut queue = VecDeque::from([v.clone()]);
    while let Some(x) = queue.pop_front() {
        if x.dim() <= w.dim() {
            continue;
        }
        for (y, line) in reduction_moves(&x) {
            if y == *v || prev.contains_key(&y) {
                continue;
            }
            prev.insert(y.clone(), (x.clone(), line));
            if y == *w {
                let mut lines = Vec::new();
                let mut cur = y;
                while cur != *v {
                    let (p, l) = prev[&cur].clone();
                    lines.push(l);
                    cur = p;
                }
                lines.reverse();
                return Ok((cw, lines));
            }
            queue.push_back(y);
        }
    }
    Err(Error::Unreachable(format!("{w} is not reachable from {v} by the reduction moves")))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleWitness {
    /// perm[k] is the original (0-based) index placed at position k.
    pub permutation: Vec<usize>,
    pub divisors: Vec<WeylDivisor>,
}

/// Pairwise orthogonal Weyl divisors D_{a+1},…,D_{n+1−2t} having V as a
/// component of their intersection, where D_j = E_{𝓘_j,σ_t} and
/// 𝓘_j = {1,…,n+1−2t}∖{j} after relabeling I as {1,…,a}.
pub fn weyl_cycle_witness(v: &Join) -> Result<CycleWitness> {
    let space = v.space;
    let (n, t, a) = (space.n, v.t, v.i.len());
    let top = n + 1 - 2 * t;
    if top > space.s {
        return Err(Error::InvalidJoin(format!("{v} needs at least {top} points")));
    }
    let mut perm: Vec<usize> = v.i.clone();
    perm.extend((0..space.s).filter(|k| !v.contains_index(*k)));
    let mut divisors = Vec::new();
    for j in a..top {
        let idx: Vec<usize> = (0..top).filter(|&k| k != j).map(|k| perm[k]).collect();
        divisors.push(WeylDivisor::new(space, &idx, t)?);
    }
    Ok(CycleWitness { permutation: perm, divisors })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum PlaneSource {
    /// A join J(L_I, σ_t) from the closed-form list.
    Join {
        #[serde(rename = "I")]
        i: Vec<usize>,
        t: usize,
    },
    /// The exceptional divisor E_i (1-based).
    Exceptional { index: usize },
    /// An element of a degree-bounded orbit.
    Orbit,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylPlane {
    pub space: Space,
    pub r: usize,
    pub sweeping_curve: CurveClass,
    /// Seed index set I₀ (0-based) with witness(c_{I₀}) = sweeping_curve; empty for E_i below n+1 points.
    pub seed: Vec<usize>,
    pub witness: WeylWord,
    pub source: PlaneSource,
}

impl WeylPlane {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "curve": self.sweeping_curve.to_string(),
            "r": self.r,
            "seed": self.seed.iter().map(|x| x + 1).collect::<Vec<_>>(),
            "witness": self.witness,
            "source": self.source,
        })
    }
}

/// All Weyl r-planes of one dimension.
#[derive(Clone, Debug)]
pub struct PlaneCatalog {
    pub space: Space,
    pub r: usize,
    pub planes: Vec<WeylPlane>,
    pub complete: bool,
    pub degree_bound: Option<u64>,
}

impl PlaneCatalog {
    pub fn curves(&self) -> impl Iterator<Item = &CurveClass> {
        self.planes.iter().map(|p| &p.sweeping_curve)
    }
}

/// Joins of dimension r; t ≥ 1 only when s = n+3.
pub fn joins_of_dimension(space: Space, r: usize) -> Vec<Join> {
    let mut out = Vec::new();
    let max_t = if space.s == space.n + 3 { (r + 1) / 2 } else { 0 };
    for t in 0..=max_t {
        let size = r as i64 + 1 - 2 * t as i64;
        if size < 0 || size as usize > space.s {
            continue;
        }
        for idx in (0..space.s).combinations(size as usize) {
            if let Ok(j) = Join::new(space, &idx, t) {
                out.push(j);
            }
        }
    }
    out
}

/// Weyl r-planes: the closed-form list for s ≤ n+3, a bounded orbit of c_I otherwise.
pub fn classify_weyl_planes(space: Space, r: usize, degree_bound: Option<u64>) -> Result<PlaneCatalog> {
    if r < 1 || r + 1 > space.n {
        return Err(Error::InvalidBound(format!("r = {r} outside 1..{}", space.n - 1)));
    }
    if space.s >= space.n + 4 {
        return orbit_planes(space, r, degree_bound);
    }
    let mut planes: Vec<WeylPlane> = joins_of_dimension(space, r)
        .into_iter()
        .map(|j| WeylPlane {
            space,
            r,
            sweeping_curve: sweeping_curve(&j),
            seed: Vec::new(),
            witness: WeylWord::identity(),
            source: PlaneSource::Join { i: j.i.iter().map(|x| x + 1).collect(), t: j.t },
        })
        .collect();
    if r == space.n - 1 {
        for i in 0..space.s {
            planes.push(WeylPlane {
                space,
                r,
                sweeping_curve: CurveClass::exceptional_line(space, i),
                seed: Vec::new(),
                witness: WeylWord::identity(),
                source: PlaneSource::Exceptional { index: i + 1 },
            });
        }
    }
    if space.s >= space.n + 1 {
        attach_witnesses(space, r, &mut planes)?;
    }
    planes.sort_by(|a, b| a.sweeping_curve.cmp(&b.sweeping_curve));
    Ok(PlaneCatalog { space, r, planes, complete: true, degree_bound: None })
}

fn attach_witnesses(space: Space, r: usize, planes: &mut [WeylPlane]) -> Result<()> {
    let mut found: HashMap<CurveClass, (Vec<usize>, WeylWord)> = HashMap::new();
    for idx in (0..space.s).combinations(r + 1) {
        let seed = CurveClass::linear(space, &idx);
        if found.contains_key(&seed) {
            continue;
        }
        let cat = effective_orbit(&seed, None)?;
        for e in &cat.elements {
            found.entry(e.class.clone()).or_insert_with(|| (idx.clone(), e.witness.clone()));
        }
        if planes.iter().all(|p| found.contains_key(&p.sweeping_curve)) {
            break;
        }
    }
    if found.len() != planes.len() {
        return Err(Error::Invariant(format!(
            "{space}, r = {r}: {} orbit classes against {} closed-form planes",
            found.len(),
            planes.len()
        )));
    }
    for p in planes.iter_mut() {
        let (seed, word) = found.get(&p.sweeping_curve).ok_or_else(|| {
            Error::Invariant(format!("{} is missing from the orbits of the c_I", p.sweeping_curve))
        })?;
        p.seed = seed.clone();
        p.witness = word.clone();
    }
    Ok(())
}

fn orbit_planes(space: Space, r: usize, degree_bound: Option<u64>) -> Result<PlaneCatalog> {
    let seed_idx: Vec<usize> = (0..=r).collect();
    let seed = CurveClass::linear(space, &seed_idx);
    let cat: OrbitCatalog<CurveClass> = effective_orbit(&seed, degree_bound)?;
    let planes = cat
        .elements
        .iter()
        .map(|e| WeylPlane {
            space,
            r,
            sweeping_curve: e.class.clone(),
            seed: seed_idx.clone(),
            witness: e.witness.clone(),
            source: PlaneSource::Orbit,
        })
        .collect();
    Ok(PlaneCatalog { space, r, planes, complete: cat.complete, degree_bound: Some(cat.degree_bound) })
}

/// Weyl planes of every dimension 1..n−1.
#[derive(Clone, Debug)]
pub struct WeylPlanes {
    pub space: Space,
    pub by_dim: Vec<PlaneCatalog>,
    pub degree_bound: Option<u64>,
}

impl WeylPlanes {
    pub fn build(space: Space, degree_bound: Option<u64>) -> Result<Self> {
        if space.s >= space.n + 4 && degree_bound.is_none() && !space.mori_dream() {
            return Err(Error::MissingDegreeBound(space));
        }
        let by_dim = (1..space.n).map(|r| classify_weyl_planes(space, r, degree_bound)).collect::<Result<_>>()?;
        Ok(WeylPlanes { space, by_dim, degree_bound })
    }

    pub fn complete(&self) -> bool {
        self.by_dim.iter().all(|c| c.complete)
    }

    pub fn planes(&self) -> impl Iterator<Item = &WeylPlane> {
        self.by_dim.iter().flat_map(|c| c.planes.iter())
    }

    pub fn len(&self) -> usize {
        self.by_dim.iter().map(|c| c.planes.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// SHA-256 over the space, bound, completeness and every sweeping curve.
    pub fn version_hash(&self) -> String {
        let mut text = format!("{}|{:?}|{}", self.space, self.degree_bound, self.complete());
        for c in &self.by_dim {
            text.push_str(&format!("|r{}", c.r));
            for p in &c.planes {
                text.push(';');
                text.push_str(&p.sweeping_curve.to_string());
            }
        }
        crate::weyl::sha256_hex(text.as_bytes())
    }
}

/// Largest multiplicity for which a join needs a point, as a plain integer.
pub fn degree_as_i64(c: &CurveClass) -> Option<i64> {
    c.delta.to_i64()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{anticanonical_divisor, dm_pairing};

    fn sp(n: usize, s: usize) -> Space {
        Space::new(n, s).unwrap()
    }

    fn join(space: Space, idx: &[usize], t: usize) -> Join {
        Join::from_one_based(space, idx, t).unwrap()
    }

    #[test]
    fn join_validation() {
        assert!(Join::new(sp(4, 7), &[], 1).is_ok());
        assert!(Join::new(sp(4, 8), &[], 1).is_err());
        assert!(Join::new(sp(4, 7), &[], 0).is_err());
        assert!(Join::new(sp(4, 7), &[0, 1, 2, 3, 4], 0).is_err());
        assert!(Join::new(sp(4, 7), &[0, 1, 2], 1).is_err());
        assert!(Join::new(sp(3, 5), &[0, 5], 0).is_err());
        assert_eq!(join(sp(4, 7), &[1], 1).dim(), 2);
    }

    #[test]
    fn sweeping_curve_examples() {
        let x = sp(4, 7);
        assert_eq!(sweeping_curve(&join(x, &[1, 2], 0)).to_string(), "1;1,1,0,0,0,0,0");
        assert_eq!(sweeping_curve(&join(x, &[], 1)).to_string(), "4;1,1,1,1,1,1,1");
        assert_eq!(sweeping_curve(&join(x, &[1], 1)).to_string(), "5;2,1,1,1,1,1,1");
    }

    #[test]
    fn cycle_degree_examples() {
        let x = sp(4, 7);
        let c = join_cycle_degrees(&join(x, &[], 1));
        assert_eq!(c.hr_degree, BigInt::from(4));
        assert!(c.er_degrees.iter().all(|e| e == &BigInt::from(1)));

        let l = join_cycle_degrees(&join(x, &[2, 5], 0));
        assert_eq!(l.hr_degree, BigInt::from(1));
        let expected: Vec<BigInt> = [0, 1, 0, 0, 1, 0, 0].iter().map(|&v| BigInt::from(v)).collect();
        assert_eq!(l.er_degrees, expected);

        let y = sp(5, 8);
        let d = join_cycle_degrees(&join(y, &[1], 2));
        assert_eq!(d.r, 4);
        assert_eq!(d.hr_degree, BigInt::from(3));
        assert_eq!(d.er_degrees[0], BigInt::from(3));
        assert!(d.er_degrees[1..].iter().all(|e| e == &BigInt::from(2)));
    }

    #[test]
    fn kappa_examples() {
        let x = sp(3, 6);
        let d = DivisorClass::from_ints(x, 2, &[2, 1, 1, 1, 1, 1]).unwrap();
        assert_eq!(kappa(&join(x, &[1, 2], 0), &d).unwrap(), BigInt::from(1));
        let h = DivisorClass::hyperplane(x);
        for size in 1..=3 {
            let idx: Vec<usize> = (1..=size).collect();
            assert_eq!(kappa(&join(x, &idx, 0), &h).unwrap(), BigInt::from(1 - size as i64));
        }
    }

    #[test]
    fn kappa_matches_intersection_everywhere() {
        let x = sp(4, 7);
        let d = DivisorClass::from_ints(x, 5, &[3, 2, 2, 1, 0, 1, -1]).unwrap();
        for r in 0..4 {
            for j in joins_of_dimension(x, r) {
                assert_eq!(kappa(&j, &d).unwrap(), -intersect(&d, &sweeping_curve(&j)).unwrap());
            }
        }
    }

    #[test]
    fn weyl_divisor_kappa_formula() {
        for n in 2..=6 {
            let x = sp(n, n + 3);
            for tau in 0..=n / 2 {
                for big in (0..x.s).combinations(n - 2 * tau) {
                    let dw = WeylDivisor::new(x, &big, tau).unwrap();
                    let d = dw.divisor();
                    for r in 0..n {
                        for v in joins_of_dimension(x, r) {
                            assert_eq!(kappa(&v, &d).unwrap(), BigInt::from(dw.kappa_of(&v)));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn orthogonality_examples() {
        let x = sp(4, 7);
        let dw = WeylDivisor::new(x, &[0, 1], 1).unwrap();
        assert_eq!(dw.divisor().to_string(), "2;2,2,1,1,1,1,1");
        assert!(is_orthogonal(&join(x, &[1, 3, 4], 0), &dw.divisor()).unwrap());
        assert!(!is_orthogonal(&join(x, &[3, 4, 5], 0), &dw.divisor()).unwrap());
        assert_eq!(kappa(&join(x, &[3, 4, 5], 0), &dw.divisor()).unwrap(), BigInt::from(-1));
        assert!(!is_orthogonal(&join(x, &[1, 2], 0), &DivisorClass::hyperplane(x)).unwrap());
    }

    #[test]
    fn decomposition_examples() {
        let x = sp(4, 7);
        let dw = WeylDivisor::new(x, &[0, 1], 1).unwrap();
        let parts = intersection_decomposition(&dw, &join(x, &[1, 3, 4], 0)).unwrap();
        assert_eq!(parts, vec![join(x, &[1, 4], 0), join(x, &[1, 3], 0)]);
        assert!(matches!(
            intersection_decomposition(&dw, &join(x, &[], 1)),
            Err(Error::NotOrthogonal { kappa: 1 })
        ));

        let y = sp(3, 4);
        let plane = WeylDivisor::new(y, &[0, 1, 2], 0).unwrap();
        let parts = intersection_decomposition(&plane, &join(y, &[1, 4], 0)).unwrap();
        assert_eq!(parts, vec![join(y, &[1], 0)]);
        assert_eq!(kappa(&parts[0], &plane.divisor()).unwrap(), BigInt::from(1));
    }

    #[test]
    fn decomposition_bookkeeping_for_all_small_cases() {
        let mut checked = 0;
        for n in 2..=8 {
            let x = sp(n, n + 3);
            for tau in 0..=n / 2 {
                for big in (0..x.s).combinations(n - 2 * tau) {
                    let dw = WeylDivisor::new(x, &big, tau).unwrap();
                    for r in 1..n {
                        for v in joins_of_dimension(x, r) {
                            if dw.kappa_of(&v) != 0 {
                                continue;
                            }
                            let parts = intersection_decomposition(&dw, &v).unwrap();
                            for p in &parts {
                                assert_eq!(kappa(p, &dw.divisor()).unwrap(), BigInt::from(1));
                            }
                            let sum = total_degrees(&parts, r - 1, x.s);
                            assert_eq!(sum, intersection_class_degrees(&dw, &v), "{n} {big:?} {tau} {v}");
                            checked += 1;
                        }
                    }
                }
            }
        }
        assert!(checked > 1000);
    }

    #[test]
    fn curve_decomposition_examples() {
        let x = sp(4, 7);
        let (cw, lines) = curve_decomposition(&join(x, &[1, 2, 3], 0), &join(x, &[1, 2], 0)).unwrap();
        assert_eq!(cw.to_string(), "1;1,1,0,0,0,0,0");
        assert_eq!(lines.len(), 1);
        assert_eq!(lines[0].to_string(), "1;0,0,1,0,0,0,0");

        let (_, lines) = curve_decomposition(&join(x, &[1], 1), &join(x, &[1, 2], 0)).unwrap();
        assert_eq!(lines.len(), 1);
        assert_eq!(lines[0].to_string(), "4;1,0,1,1,1,1,1");

        let v = join(x, &[1], 1);
        assert!(curve_decomposition(&v, &v).unwrap().1.is_empty());
        assert!(curve_decomposition(&join(x, &[1, 2], 0), &join(x, &[3], 0)).is_err());
    }

    #[test]
    fn curve_decomposition_sums_and_lines() {
        let x = sp(4, 7);
        let k = anticanonical_divisor(x);
        let joins: Vec<Join> = (0..4).flat_map(|r| joins_of_dimension(x, r)).collect();
        let mut pairs = 0;
        for v in &joins {
            for w in &joins {
                if let Ok((cw, lines)) = curve_decomposition(v, w) {
                    let mut sum = cw;
                    for l in &lines {
                        assert_eq!(intersect(&k, l).unwrap(), BigInt::from(2));
                        sum = sum.try_add(l).unwrap();
                    }
                    assert_eq!(sum, sweeping_curve(v));
                    pairs += 1;
                }
            }
        }
        assert!(pairs > joins.len());
    }

    #[test]
    fn cycle_witness_examples() {
        let x = sp(3, 6);
        let w = weyl_cycle_witness(&join(x, &[1, 2], 0)).unwrap();
        let ds: Vec<String> = w.divisors.iter().map(|d| d.divisor().to_string()).collect();
        assert_eq!(ds, vec!["1;1,1,0,1,0,0", "1;1,1,1,0,0,0"]);
        assert_eq!(dm_pairing(&w.divisors[0].divisor(), &w.divisors[1].divisor()).unwrap(), BigInt::zero());

        let y = sp(4, 7);
        let v = join(y, &[3, 5], 1);
        let w = weyl_cycle_witness(&v).unwrap();
        assert_eq!(w.divisors.len(), 1);
        assert_eq!(w.divisors[0].join, v);

        let w = weyl_cycle_witness(&join(y, &[], 1)).unwrap();
        assert_eq!(w.divisors.len(), 3);
        let idx: Vec<Vec<usize>> = w.divisors.iter().map(|d| d.indices().to_vec()).collect();
        assert_eq!(idx, vec![vec![1, 2], vec![0, 2], vec![0, 1]]);
        for a in &w.divisors {
            for b in &w.divisors {
                if a != b {
                    assert_eq!(dm_pairing(&a.divisor(), &b.divisor()).unwrap(), BigInt::zero());
                }
            }
        }
    }

    #[test]
    fn plane_counts() {
        let x = sp(4, 7);
        let cat = classify_weyl_planes(x, 2, None).unwrap();
        assert_eq!(cat.planes.len(), 42);
        assert!(cat.complete);
        let joins = cat.planes.iter().filter(|p| matches!(p.source, PlaneSource::Join { t: 1, .. })).count();
        assert_eq!(joins, 7);
        for p in &cat.planes {
            let seed = CurveClass::linear(x, &p.seed);
            assert_eq!(p.witness.apply_curve(&seed).unwrap(), p.sweeping_curve);
        }

        for n in 2..=5 {
            let y = sp(n, n + 1);
            let top = classify_weyl_planes(y, n - 1, None).unwrap();
            assert_eq!(top.planes.len(), 2 * (n + 1));
        }
        assert!(classify_weyl_planes(x, 0, None).is_err());
        assert!(classify_weyl_planes(x, 4, None).is_err());
    }

    #[test]
    fn non_mds_planes_grow_with_bound() {
        let x = sp(5, 9);
        let a = classify_weyl_planes(x, 2, Some(40)).unwrap();
        let b = classify_weyl_planes(x, 2, Some(60)).unwrap();
        assert!(!a.complete && b.planes.len() > a.planes.len());
        assert!(matches!(classify_weyl_planes(x, 2, None), Err(Error::MissingDegreeBound(_))));
    }

    #[test]
    fn join_json_is_one_based() {
        let x = sp(4, 7);
        let j = join(x, &[2, 5], 1);
        assert_eq!(j.to_json().to_string(), r#"{"I":[2,5],"t":1}"#);
        assert_eq!(Join::from_json(x, &j.to_json()).unwrap(), j);
    }
}
