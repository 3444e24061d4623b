//! Standard Cremona transformations acting on divisor and curve classes.

mod cache;
mod orbit;
mod recursion;

pub use cache::CatalogCache;
pub use orbit::{
    default_degree_bound, effective_orbit, effective_orbit_with, BoundaryClass, OrbitCatalog,
    OrbitClass, OrbitElement, OrbitOptions, CATALOG_VERSION,
};
pub use orbit::sha256_hex;
pub use recursion::{degrees_strictly_increase, recursion_certificate, recursion_chain, Certificate, RecursionBranch, RecursionCase};

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

use crate::error::{Error, Result};
use crate::lattice::{dm_pairing, intersect, CurveClass, DivisorClass, Space};

/// Version of [`curve_effectivity_filter`]; recorded in every catalog.
pub const FILTER_VERSION: u32 = 1;

/// A set Γ of n+1 distinct point indices, stored 0-based and sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CremonaIndexSet {
    idx: Vec<usize>,
}

impl CremonaIndexSet {
    pub fn from_zero_based(space: Space, idx: &[usize]) -> Result<Self> {
        space.require_weyl()?;
        let mut v = idx.to_vec();
        v.sort_unstable();
        v.dedup();
        if v.len() != idx.len() {
            return Err(Error::InvalidIndexSet(format!("repeated index in {idx:?}")));
        }
        if v.len() != space.n + 1 {
            return Err(Error::InvalidIndexSet(format!(
                "expected {} indices, got {}",
                space.n + 1,
                v.len()
            )));
        }
        if let Some(&bad) = v.iter().find(|&&i| i >= space.s) {
            return Err(Error::InvalidIndexSet(format!("index {} out of range 1..{}", bad + 1, space.s)));
        }
        Ok(CremonaIndexSet { idx: v })
    }

    pub fn from_one_based(space: Space, idx: &[usize]) -> Result<Self> {
        if idx.contains(&0) {
            return Err(Error::InvalidIndexSet("indices are 1-based".into()));
        }
        let zero: Vec<usize> = idx.iter().map(|i| i - 1).collect();
        Self::from_zero_based(space, &zero)
    }

    pub fn indices(&self) -> &[usize] {
        &self.idx
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.idx.iter().map(|i| i + 1).collect()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.idx.binary_search(&i).is_ok()
    }

    /// Every Γ of the space in lexicographic order.
    pub fn all(space: Space) -> Result<Vec<Self>> {
        space.require_weyl()?;
        Ok((0..space.s).combinations(space.n + 1).map(|idx| CremonaIndexSet { idx }).collect())
    }

    fn check(&self, space: Space) -> Result<()> {
        if self.idx.len() != space.n + 1 || self.idx.iter().any(|&i| i >= space.s) {
            return Err(Error::InvalidIndexSet(format!("{self} is not valid on {space}")));
        }
        Ok(())
    }
}

impl fmt::Display for CremonaIndexSet {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        write!(f, "{{{}}}", self.one_based().iter().join(","))
    }
}

/// A product of Cremona moves, applied left to right.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct WeylWord {
    pub moves: Vec<CremonaIndexSet>,
}

impl WeylWord {
    pub fn identity() -> Self {
        WeylWord { moves: Vec::new() }
    }

    pub fn then(&self, g: CremonaIndexSet) -> Self {
        let mut moves = self.moves.clone();
        moves.push(g);
        WeylWord { moves }
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    pub fn apply_divisor(&self, d: &DivisorClass) -> Result<DivisorClass> {
        let mut cur = d.clone();
        for g in &self.moves {
            cur = cremona_divisor(&cur, g)?.0;
        }
        Ok(cur)
    }

    pub fn apply_curve(&self, c: &CurveClass) -> Result<CurveClass> {
        let mut cur = c.clone();
        for g in &self.moves {
            cur = cremona_curve(&cur, g)?.0;
        }
        Ok(cur)
    }

    /// Word as 1-based index arrays.
    pub fn to_arrays(&self) -> Vec<Vec<usize>> {
        self.moves.iter().map(|g| g.one_based()).collect()
    }

    pub fn from_arrays(space: Space, arrays: &[Vec<usize>]) -> Result<Self> {
        let moves = arrays
            .iter()
            .map(|a| CremonaIndexSet::from_one_based(space, a))
            .collect::<Result<_>>()?;
        Ok(WeylWord { moves })
    }
}

impl Serialize for WeylWord {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_arrays().serialize(ser)
    }
}

impl<'de> Deserialize<'de> for WeylWord {
    /// Indices are not range-checked here; see [`WeylWord::from_arrays`].
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let arrays = Vec::<Vec<usize>>::deserialize(de)?;
        let mut moves = Vec::with_capacity(arrays.len());
        for a in arrays {
            if a.contains(&0) {
                return Err(serde::de::Error::custom("indices are 1-based"));
            }
            let mut idx: Vec<usize> = a.iter().map(|i| i - 1).collect();
            idx.sort_unstable();
            moves.push(CremonaIndexSet { idx });
        }
        Ok(WeylWord { moves })
    }
}

/// b_Γ(D) = Σ_{i∈Γ} m_i − (n−1)d.
pub fn b_gamma(d: &DivisorClass, g: &CremonaIndexSet) -> BigInt {
    let sum: BigInt = g.idx.iter().map(|&i| &d.m[i]).sum();
    sum - BigInt::from(d.space.n as i64 - 1) * &d.d
}

/// a_Γ(c) = Σ_{i∈Γ} μ_i − δ.
pub fn a_gamma(c: &CurveClass, g: &CremonaIndexSet) -> BigInt {
    let sum: BigInt = g.idx.iter().map(|&i| &c.mu[i]).sum();
    sum - &c.delta
}

/// Cr_Γ(D) = (d − b)H − Σ_{i∈Γ}(m_i − b)E_i − Σ_{i∉Γ} m_i E_i.
pub fn cremona_divisor(d: &DivisorClass, g: &CremonaIndexSet) -> Result<(DivisorClass, BigInt)> {
    g.check(d.space)?;
    let b = b_gamma(d, g);
    let mut out = d.clone();
    out.d -= &b;
    for &i in &g.idx {
        out.m[i] -= &b;
    }
    Ok((out, b))
}

/// Cr_Γ(c) = (δ − (n−1)a)h − Σ_{i∈Γ}(μ_i − a)e_i − Σ_{i∉Γ} μ_i e_i.
pub fn cremona_curve(c: &CurveClass, g: &CremonaIndexSet) -> Result<(CurveClass, BigInt)> {
    g.check(c.space)?;
    let a = a_gamma(c, g);
    let mut out = c.clone();
    out.delta -= BigInt::from(c.space.n as i64 - 1) * &a;
    for &i in &g.idx {
        out.mu[i] -= &a;
    }
    Ok((out, a))
}

/// Checks that D·c is unchanged after applying `word` to both classes.
pub fn pairing_preserved(d: &DivisorClass, c: &CurveClass, word: &WeylWord) -> Result<bool> {
    let before = intersect(d, c)?;
    let after = intersect(&word.apply_divisor(d)?, &word.apply_curve(c)?)?;
    Ok(before == after)
}

/// Checks that ⟨D1,D2⟩ is unchanged after applying `word` to both classes.
pub fn dm_pairing_preserved(a: &DivisorClass, b: &DivisorClass, word: &WeylWord) -> Result<bool> {
    let before = dm_pairing(a, b)?;
    let after = dm_pairing(&word.apply_divisor(a)?, &word.apply_divisor(b)?)?;
    Ok(before == after)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub class: DivisorClass,
    pub word: WeylWord,
    /// False when the step budget ran out before every b_Γ was ≤ 0.
    pub reduced: bool,
}

/// The Γ maximizing b_Γ(D): the n+1 largest multiplicities, smallest indices first on ties.
/// This is also the lexicographically smallest maximizer.
pub fn max_b_gamma(d: &DivisorClass) -> Result<(CremonaIndexSet, BigInt)> {
    d.space.require_weyl()?;
    let mut order: Vec<usize> = (0..d.space.s).collect();
    order.sort_by(|&i, &j| d.m[j].cmp(&d.m[i]).then(i.cmp(&j)));
    let mut idx = order[..d.space.n + 1].to_vec();
    idx.sort_unstable();
    let g = CremonaIndexSet { idx };
    let b = b_gamma(d, &g);
    Ok((g, b))
}

pub fn is_cremona_reduced(d: &DivisorClass) -> Result<bool> {
    Ok(!max_b_gamma(d)?.1.is_positive())
}

/// Applies the move with the largest positive b_Γ until none is left or
/// `max_steps` moves have been made.
pub fn cremona_reduce(d: &DivisorClass, max_steps: usize) -> Result<Reduction> {
    let mut cur = d.clone();
    let mut word = WeylWord::identity();
    loop {
        let (g, b) = max_b_gamma(&cur)?;
        if !b.is_positive() {
            return Ok(Reduction { class: cur, word, reduced: true });
        }
        if word.len() >= max_steps {
            return Ok(Reduction { class: cur, word, reduced: false });
        }
        cur = cremona_divisor(&cur, &g)?.0;
        word.moves.push(g);
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Effectivity {
    Candidate,
    NonEffective,
    Indeterminate,
}

/// Conservative effectivity test for 1-cycle classes.
///
/// δ < 0 is never effective. With δ = 0 the class is a combination of the
/// e_i: nonnegative combinations are candidates, the zero class and
/// nonpositive ones are rejected, and mixed signs are reported as
/// indeterminate. Every class with δ > 0 is a candidate.
pub fn curve_effectivity_filter(c: &CurveClass) -> Effectivity {
    if c.delta.is_negative() {
        return Effectivity::NonEffective;
    }
    if c.delta.is_positive() {
        return Effectivity::Candidate;
    }
    let any_pos = c.mu.iter().any(|x| x.is_positive());
    let any_neg = c.mu.iter().any(|x| x.is_negative());
    match (any_pos, any_neg) {
        (false, true) => Effectivity::Candidate,
        (true, true) => Effectivity::Indeterminate,
        _ => Effectivity::NonEffective,
    }
}

/// Divisor classes of negative degree are never effective.
pub fn divisor_degree_filter(d: &DivisorClass) -> Effectivity {
    if d.d.is_negative() {
        Effectivity::NonEffective
    } else {
        Effectivity::Candidate
    }
}
