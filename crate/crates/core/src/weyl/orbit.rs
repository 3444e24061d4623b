//! Breadth-first enumeration of effective Weyl orbits.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::hash::Hash;

use super::{
    cremona_curve, cremona_divisor, curve_effectivity_filter, divisor_degree_filter,
    CremonaIndexSet, Effectivity, WeylWord, FILTER_VERSION,
};
use crate::arith::{from_json_vec, json_vec, JsonInt};
use crate::error::{Error, Result};
use crate::lattice::{CurveClass, DivisorClass, Space};

pub const CATALOG_VERSION: u32 = 1;

/// Classes the Weyl group acts on.
pub trait OrbitClass: Clone + Eq + Hash + Ord + fmt::Display + Send + Sync {
    const KIND: &'static str;
    fn space(&self) -> Space;
    fn degree(&self) -> &BigInt;
    fn mults(&self) -> &[BigInt];
    fn apply(&self, g: &CremonaIndexSet) -> Self;
    fn filter(&self) -> Effectivity;
    fn from_parts(space: Space, degree: BigInt, mults: Vec<BigInt>) -> Result<Self>;
}

impl OrbitClass for CurveClass {
    const KIND: &'static str = "curve";
    fn space(&self) -> Space {
        self.space
    }
    fn degree(&self) -> &BigInt {
        &self.delta
    }
    fn mults(&self) -> &[BigInt] {
        &self.mu
    }
    fn apply(&self, g: &CremonaIndexSet) -> Self {
        cremona_curve(self, g).expect("index set checked against space").0
    }
    fn filter(&self) -> Effectivity {
        curve_effectivity_filter(self)
    }
    fn from_parts(space: Space, degree: BigInt, mults: Vec<BigInt>) -> Result<Self> {
        CurveClass::new(space, degree, mults)
    }
}

impl OrbitClass for DivisorClass {
    const KIND: &'static str = "divisor";
    fn space(&self) -> Space {
        self.space
    }
    fn degree(&self) -> &BigInt {
        &self.d
    }
    fn mults(&self) -> &[BigInt] {
        &self.m
    }
    fn apply(&self, g: &CremonaIndexSet) -> Self {
        cremona_divisor(self, g).expect("index set checked against space").0
    }
    fn filter(&self) -> Effectivity {
        divisor_degree_filter(self)
    }
    fn from_parts(space: Space, degree: BigInt, mults: Vec<BigInt>) -> Result<Self> {
        DivisorClass::new(space, degree, mults)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitElement<C> {
    pub class: C,
    pub witness: WeylWord,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct BoundaryClass<C> {
    pub class: C,
    pub kind: Effectivity,
}

#[derive(Clone, Debug)]
pub struct OrbitCatalog<C: OrbitClass> {
    pub space: Space,
    pub seed: C,
    pub degree_bound: u64,
    /// True iff the search closed up without meeting a class above the bound.
    pub complete: bool,
    pub filter_version: u32,
    /// Sorted by (degree, multiplicities).
    pub elements: Vec<OrbitElement<C>>,
    /// Filtered children, sorted. Not persisted in the JSON form.
    pub boundary: Vec<BoundaryClass<C>>,
    pub boundary_count: usize,
    /// Distinct classes discarded for exceeding the bound.
    pub truncated: usize,
    index: HashMap<C, usize>,
}

#[derive(Clone, Debug)]
pub struct OrbitOptions {
    pub degree_bound: Option<u64>,
    pub record_boundary: bool,
}

impl Default for OrbitOptions {
    fn default() -> Self {
        OrbitOptions { degree_bound: None, record_boundary: true }
    }
}

/// 10·(seed degree + n), the bound used for Mori dream spaces when none is given.
pub fn default_degree_bound<C: OrbitClass>(seed: &C) -> u64 {
    let n = BigInt::from(seed.space().n);
    let b: BigInt = (seed.degree() + n) * 10;
    u64::try_from(b).unwrap_or(0)
}

pub fn effective_orbit<C: OrbitClass>(seed: &C, degree_bound: Option<u64>) -> Result<OrbitCatalog<C>> {
    effective_orbit_with(seed, &OrbitOptions { degree_bound, ..OrbitOptions::default() })
}

pub fn effective_orbit_with<C: OrbitClass>(seed: &C, opts: &OrbitOptions) -> Result<OrbitCatalog<C>> {
    let space = seed.space();
    space.require_weyl()?;
    let mds = space.mori_dream();
    let bound = match opts.degree_bound {
        Some(b) => b,
        None if mds => default_degree_bound(seed),
        None => return Err(Error::MissingDegreeBound(space)),
    };
    let big_bound = BigInt::from(bound);
    if seed.degree() > &big_bound {
        return Err(Error::InvalidBound(format!(
            "bound {bound} is below the seed degree {}",
            seed.degree()
        )));
    }
    let moves = CremonaIndexSet::all(space)?;

    let mut witness: HashMap<C, WeylWord> = HashMap::new();
    let mut boundary: HashMap<C, Effectivity> = HashMap::new();
    let mut over: HashSet<C> = HashSet::new();
    witness.insert(seed.clone(), WeylWord::identity());
    let mut frontier = vec![seed.clone()];
    while !frontier.is_empty() {
        frontier.sort();
        let mut next = Vec::new();
        for x in &frontier {
            let base = witness[x].clone();
            for g in &moves {
                let y = x.apply(g);
                if witness.contains_key(&y) || boundary.contains_key(&y) || over.contains(&y) {
                    continue;
                }
                let kind = y.filter();
                if kind != Effectivity::Candidate {
                    boundary.insert(y, kind);
                    continue;
                }
                if y.degree() > &big_bound {
                    over.insert(y);
                    continue;
                }
                witness.insert(y.clone(), base.then(g.clone()));
                next.push(y);
            }
        }
        frontier = next;
    }

    let complete = over.is_empty();
    if mds && opts.degree_bound.is_none() && !complete {
        return Err(Error::Invariant(format!(
            "orbit of {seed} on {space} exceeded the default bound {bound}"
        )));
    }
    let mut elements: Vec<OrbitElement<C>> =
        witness.into_iter().map(|(class, witness)| OrbitElement { class, witness }).collect();
    elements.sort_by(|a, b| a.class.cmp(&b.class));
    let boundary_count = boundary.len();
    let mut boundary: Vec<BoundaryClass<C>> = if opts.record_boundary {
        boundary.into_iter().map(|(class, kind)| BoundaryClass { class, kind }).collect()
    } else {
        Vec::new()
    };
    boundary.sort();
    Ok(OrbitCatalog::assemble(
        space,
        seed.clone(),
        bound,
        complete,
        FILTER_VERSION,
        elements,
        boundary,
        boundary_count,
        over.len(),
    ))
}

impl<C: OrbitClass> OrbitCatalog<C> {
    #[allow(clippy::too_many_arguments)]
    fn assemble(
        space: Space,
        seed: C,
        degree_bound: u64,
        complete: bool,
        filter_version: u32,
        elements: Vec<OrbitElement<C>>,
        boundary: Vec<BoundaryClass<C>>,
        boundary_count: usize,
        truncated: usize,
    ) -> Self {
        let index = elements.iter().enumerate().map(|(i, e)| (e.class.clone(), i)).collect();
        OrbitCatalog {
            space,
            seed,
            degree_bound,
            complete,
            filter_version,
            elements,
            boundary,
            boundary_count,
            truncated,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, c: &C) -> bool {
        self.index.contains_key(c)
    }

    pub fn witness(&self, c: &C) -> Option<&WeylWord> {
        self.index.get(c).map(|&i| &self.elements[i].witness)
    }

    pub fn classes(&self) -> impl Iterator<Item = &C> {
        self.elements.iter().map(|e| &e.class)
    }

    /// Number of classes up to permutation of the points.
    pub fn permutation_classes(&self) -> usize {
        self.classes()
            .map(|c| {
                let mut m = c.mults().to_vec();
                m.sort();
                (c.degree().clone(), m)
            })
            .collect::<BTreeSet<_>>()
            .len()
    }

    /// Replays every witness word from the seed, checking each intermediate class.
    pub fn verify_witnesses(&self) -> bool {
        self.elements.iter().all(|e| {
            let mut cur = self.seed.clone();
            for g in &e.witness.moves {
                cur = cur.apply(g);
                if cur.filter() != Effectivity::Candidate {
                    return false;
                }
            }
            cur == e.class
        })
    }

    /// Every move sends every element into the catalog or to a filtered class.
    pub fn is_move_closed(&self) -> Result<bool> {
        let moves = CremonaIndexSet::all(self.space)?;
        Ok(self.elements.iter().all(|e| {
            moves.iter().all(|g| {
                let y = e.class.apply(g);
                self.contains(&y) || y.filter() != Effectivity::Candidate
            })
        }))
    }

    fn to_file(&self) -> CatalogFile {
        CatalogFile {
            version: CATALOG_VERSION,
            filter_version: self.filter_version,
            kind: C::KIND.to_string(),
            n: self.space.n,
            s: self.space.s,
            seed: ElementJson::plain(&self.seed),
            degree_bound: self.degree_bound,
            complete: self.complete,
            boundary_count: self.boundary_count,
            truncated: self.truncated,
            elements: self
                .elements
                .iter()
                .map(|e| ElementJson {
                    witness: Some(e.witness.to_arrays()),
                    ..ElementJson::plain(&e.class)
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("catalog serializes")
    }

    /// SHA-256 of the canonical JSON form, as lowercase hex.
    pub fn version_hash(&self) -> String {
        sha256_hex(self.to_json().as_bytes())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let f: CatalogFile = serde_json::from_str(text)?;
        if f.kind != C::KIND {
            return Err(Error::Parse(format!("catalog holds {} classes, expected {}", f.kind, C::KIND)));
        }
        if f.version != CATALOG_VERSION {
            return Err(Error::Parse(format!("unsupported catalog version {}", f.version)));
        }
        let space = Space::new(f.n, f.s)?;
        let seed = f.seed.to_class::<C>(space)?;
        let mut elements = Vec::with_capacity(f.elements.len());
        for e in f.elements {
            let witness = WeylWord::from_arrays(space, e.witness.as_deref().unwrap_or(&[]))?;
            elements.push(OrbitElement { class: e.to_class::<C>(space)?, witness });
        }
        elements.sort_by(|a, b| a.class.cmp(&b.class));
        Ok(OrbitCatalog::assemble(
            space,
            seed,
            f.degree_bound,
            f.complete,
            f.filter_version,
            elements,
            Vec::new(),
            f.boundary_count,
            f.truncated,
        ))
    }
}

/// Lowercase hex SHA-256 digest.
pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Serialize, Deserialize)]
struct ElementJson {
    d: JsonInt,
    m: Vec<JsonInt>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    witness: Option<Vec<Vec<usize>>>,
}

impl ElementJson {
    fn plain<C: OrbitClass>(c: &C) -> Self {
        ElementJson { d: JsonInt(c.degree().clone()), m: json_vec(c.mults()), witness: None }
    }

    fn to_class<C: OrbitClass>(&self, space: Space) -> Result<C> {
        C::from_parts(space, self.d.0.clone(), from_json_vec(self.m.clone()))
    }
}

#[derive(Serialize, Deserialize)]
struct CatalogFile {
    version: u32,
    filter_version: u32,
    kind: String,
    n: usize,
    s: usize,
    seed: ElementJson,
    degree_bound: u64,
    complete: bool,
    boundary_count: usize,
    truncated: usize,
    elements: Vec<ElementJson>,
}
