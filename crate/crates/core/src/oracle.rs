//! Dimension of degree-d forms on P^n with assigned multiple points, by
//! exact rank over a prime field at pseudo-random points.
//!
//! Point k < min(s, n+1) is the k-th coordinate point, the next one is
//! (1:…:1), and the rest are drawn from ChaCha8 seeded with the problem seed.
//! Multiplicity m at q is imposed by the Hasse derivatives of order < m in
//! the affine chart where the first nonzero coordinate of q is 1.

use itertools::Itertools;
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::arith::{binomial, JsonInt};
use crate::baselocus::expected_dimension_with;
use crate::cycles::WeylPlanes;
use crate::error::{Error, Result};
use crate::lattice::{DivisorClass, Space};

pub const DEFAULT_PRIME: u64 = 2_147_483_647;
pub const DEFAULT_SEED: u64 = 20_240_101;
/// Largest number of matrix entries built for one problem.
pub const DEFAULT_ENTRY_CAP: usize = 25_000_000;
pub const ORACLE_VERSION: u32 = 1;
const SECOND_SEED_OFFSET: u64 = 0x9E37_79B9_7F4A_7C15;

pub fn second_seed(seed: u64) -> u64 {
    seed.wrapping_add(SECOND_SEED_OFFSET)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InterpolationProblem {
    pub n: usize,
    pub d: u32,
    pub mults: Vec<u32>,
    pub seed: u64,
    pub prime: u64,
    pub entry_cap: usize,
}

impl InterpolationProblem {
    pub fn new(n: usize, d: u32, mults: Vec<u32>, seed: u64) -> Self {
        InterpolationProblem { n, d, mults, seed, prime: DEFAULT_PRIME, entry_cap: DEFAULT_ENTRY_CAP }
    }

    /// Points with m_i = 0 impose nothing and are dropped.
    pub fn from_divisor(d: &DivisorClass, seed: u64) -> Result<Self> {
        let deg = u32::try_from(&d.d).map_err(|_| Error::Unsupported(format!("degree of {d} outside 0..2^32")))?;
        let mut mults = Vec::new();
        for m in &d.m {
            let m = u32::try_from(m).map_err(|_| Error::Unsupported(format!("multiplicity {m} of {d}")))?;
            if m > 0 {
                mults.push(m);
            }
        }
        Ok(Self::new(d.space.n, deg, mults, seed))
    }

    pub fn monomials(&self) -> usize {
        binomial(self.n as i64 + self.d as i64, self.n as i64).try_into().unwrap_or(usize::MAX)
    }

    pub fn conditions(&self) -> usize {
        self.mults
            .iter()
            .map(|&m| usize::try_from(binomial(self.n as i64 + m as i64 - 1, self.n as i64)).unwrap_or(usize::MAX))
            .fold(0usize, |a, b| a.saturating_add(b))
    }

    fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidSpace("n must be positive".into()));
        }
        if self.mults.iter().any(|&m| m == 0) {
            return Err(Error::Parse("multiplicities must be positive".into()));
        }
        if self.prime <= self.d as u64 || self.prime >= 1 << 32 {
            return Err(Error::Unsupported(format!("prime {} must exceed d = {} and fit 32 bits", self.prime, self.d)));
        }
        let entries = self.monomials().saturating_mul(self.conditions());
        if entries > self.entry_cap {
            return Err(Error::ResourceCap(format!("{entries} matrix entries above the cap {}", self.entry_cap)));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResult {
    /// Affine dimension h^0; the larger value when the seeds disagree.
    pub dimension: u64,
    pub seeds: [u64; 2],
    pub dimensions: [u64; 2],
    pub stable: bool,
    pub monomials: usize,
    pub conditions: usize,
    pub prime: u64,
}

impl OracleResult {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "dimension": self.dimension,
            "seeds": self.seeds,
            "dimensions": self.dimensions,
            "stable": self.stable,
            "monomials": self.monomials,
            "conditions": self.conditions,
            "prime": self.prime,
            "version": ORACLE_VERSION,
        })
    }
}

/// Projective points in F_p^{n+1}, following the placement rule above.
pub fn points(n: usize, s: usize, seed: u64, prime: u64) -> Vec<Vec<u64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(s);
    for k in 0..s {
        let p = if k < n + 1 {
            (0..=n).map(|j| u64::from(j == k)).collect()
        } else if k == n + 1 {
            vec![1; n + 1]
        } else {
            loop {
                let v: Vec<u64> = (0..=n).map(|_| rng.gen_range(0..prime)).collect();
                if v.iter().any(|&x| x != 0) {
                    break v;
                }
            }
        };
        out.push(p);
    }
    out
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn exponents(vars: usize, total: u32) -> Vec<Vec<u32>> {
    if vars == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=total).rev() {
        for mut rest in exponents(vars - 1, total - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn rank_mod(mut rows: Vec<Vec<u64>>, cols: usize, p: u64) -> usize {
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = pow_mod(rows[rank][c], p - 2, p);
        for x in rows[rank].iter_mut().skip(c) {
            *x = *x * inv % p;
        }
        let pivot = rows[rank].clone();
        for row in rows.iter_mut().skip(rank + 1) {
            let f = row[c];
            if f == 0 {
                continue;
            }
            for j in c..cols {
                row[j] = (row[j] + (p - f) * pivot[j]) % p;
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// h^0 for one seed.
pub fn single_seed_dimension(prob: &InterpolationProblem, seed: u64) -> Result<u64> {
    prob.validate()?;
    let p = prob.prime;
    let monos = exponents(prob.n + 1, prob.d);
    let cols = monos.len();
    let pts = points(prob.n, prob.mults.len(), seed, p);
    let dmax = prob.d as usize;
    let mut pascal = vec![vec![0u64; dmax + 1]; dmax + 1];
    for a in 0..=dmax {
        for b in 0..=a {
            pascal[a][b] = if b == 0 || b == a { 1 } else { (pascal[a - 1][b - 1] + pascal[a - 1][b]) % p };
        }
    }
    let mut rows = Vec::with_capacity(prob.conditions());
    for (q, &m) in pts.iter().zip(&prob.mults) {
        let chart = q.iter().position(|&x| x != 0).expect("nonzero point");
        let inv = pow_mod(q[chart], p - 2, p);
        let affine: Vec<u64> = q.iter().map(|&x| x * inv % p).collect();
        let free: Vec<usize> = (0..=prob.n).filter(|&j| j != chart).collect();
        for order in 0..m {
            for alpha in exponents(prob.n, order) {
                let row: Vec<u64> = monos
                    .iter()
                    .map(|beta| {
                        let mut v = 1u64;
                        for (a, &j) in alpha.iter().zip(&free) {
                            let (a, b) = (*a as usize, beta[j] as usize);
                            if b < a {
                                return 0;
                            }
                            v = v * pascal[b][a] % p * pow_mod(affine[j], (b - a) as u64, p) % p;
                        }
                        v
                    })
                    .collect();
                rows.push(row);
            }
        }
    }
    Ok((cols - rank_mod(rows, cols, p)) as u64)
}

/// h^0 with a second seed as a genericity check.
pub fn system_dimension(prob: &InterpolationProblem) -> Result<OracleResult> {
    let seeds = [prob.seed, second_seed(prob.seed)];
    let a = single_seed_dimension(prob, seeds[0])?;
    let b = single_seed_dimension(prob, seeds[1])?;
    Ok(OracleResult {
        dimension: a.max(b),
        seeds,
        dimensions: [a, b],
        stable: a == b,
        monomials: prob.monomials(),
        conditions: prob.conditions(),
        prime: prob.prime,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableMode {
    /// m_1 = … = m_s.
    Homogeneous,
    /// Nonincreasing multiplicity vectors.
    Sorted,
    /// Every vector in {1..m_max}^s.
    Full,
}

impl std::str::FromStr for TableMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "homogeneous" => Ok(TableMode::Homogeneous),
            "sorted" => Ok(TableMode::Sorted),
            "full" => Ok(TableMode::Full),
            _ => Err(Error::Parse(format!("unknown table mode {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub d: u32,
    pub m: Vec<u32>,
    pub oracle: u64,
    pub stable: bool,
    pub chi: BigInt,
    pub wdim: BigInt,
    /// 0 when emptiness is proven by the effectivity gate, max(wdim, 0) otherwise.
    pub expected: BigInt,
    pub matches: bool,
}

impl TableRow {
    pub fn divisor(&self, space: Space) -> DivisorClass {
        DivisorClass::from_ints(space, self.d as i64, &self.m.iter().map(|&x| x as i64).collect::<Vec<_>>())
            .expect("row length matches space")
    }
}

#[derive(Clone, Debug)]
pub struct DimensionTable {
    pub space: Space,
    pub seed: u64,
    pub prime: u64,
    pub degree_bound: Option<u64>,
    pub catalog_complete: bool,
    pub catalog_hash: String,
    pub rows: Vec<TableRow>,
}

impl DimensionTable {
    pub fn mismatches(&self) -> impl Iterator<Item = &TableRow> {
        self.rows.iter().filter(|r| !r.matches)
    }

    pub fn unstable(&self) -> impl Iterator<Item = &TableRow> {
        self.rows.iter().filter(|r| !r.stable)
    }

    pub fn all_match(&self) -> bool {
        self.rows.iter().all(|r| r.matches && r.stable)
    }

    pub fn header(&self) -> serde_json::Value {
        serde_json::json!({
            "space": self.space.to_string(),
            "seed": self.seed,
            "second_seed": second_seed(self.seed),
            "prime": self.prime,
            "version": ORACLE_VERSION,
            "degree_bound": self.degree_bound,
            "catalog_complete": self.catalog_complete,
            "catalog_hash": self.catalog_hash,
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        let row = |r: &TableRow| {
            serde_json::json!({
                "divisor": r.divisor(self.space).to_string(),
                "oracle": r.oracle,
                "stable": r.stable,
                "chi": JsonInt(r.chi.clone()),
                "wdim": JsonInt(r.wdim.clone()),
                "expected": JsonInt(r.expected.clone()),
                "match": r.matches,
            })
        };
        let mut v = self.header();
        v["rows"] = self.rows.iter().map(row).collect();
        v["mismatches"] = self.mismatches().map(row).collect();
        v
    }
}

/// Multiplicity vectors of length s with entries in 1..=m_max.
pub fn multiplicity_vectors(s: usize, m_max: u32, mode: TableMode) -> Vec<Vec<u32>> {
    match mode {
        TableMode::Homogeneous => (1..=m_max).map(|m| vec![m; s]).collect(),
        TableMode::Sorted => (1..=m_max)
            .combinations_with_replacement(s)
            .map(|mut v| {
                v.reverse();
                v
            })
            .collect(),
        TableMode::Full if s == 0 => vec![vec![]],
        TableMode::Full => (0..s).map(|_| 1..=m_max).multi_cartesian_product().collect(),
    }
}

/// Oracle against expected dimension for every d in 1..=d_max and every vector of the mode.
pub fn dimension_table(
    space: Space,
    d_max: u32,
    m_max: u32,
    seed: u64,
    mode: TableMode,
    degree_bound: Option<u64>,
) -> Result<DimensionTable> {
    let vecs = multiplicity_vectors(space.s, m_max, mode);
    let problems: Vec<(u32, Vec<u32>)> =
        (1..=d_max).flat_map(|d| vecs.iter().map(move |m| (d, m.clone()))).collect();
    dimension_table_for(space, &problems, seed, degree_bound)
}

pub fn dimension_table_for(
    space: Space,
    problems: &[(u32, Vec<u32>)],
    seed: u64,
    degree_bound: Option<u64>,
) -> Result<DimensionTable> {
    dimension_table_mod(space, problems, seed, DEFAULT_PRIME, degree_bound)
}

/// [`dimension_table_for`] over F_p for a chosen prime p.
pub fn dimension_table_mod(
    space: Space,
    problems: &[(u32, Vec<u32>)],
    seed: u64,
    prime: u64,
    degree_bound: Option<u64>,
) -> Result<DimensionTable> {
    let planes = WeylPlanes::build(space, degree_bound)?;
    let rows = problems
        .par_iter()
        .map(|(d, m)| {
            if m.len() != space.s {
                return Err(Error::LengthMismatch { expected: space.s, got: m.len() });
            }
            let class = DivisorClass::from_ints(space, *d as i64, &m.iter().map(|&x| x as i64).collect::<Vec<_>>())?;
            let exp = expected_dimension_with(&class, &planes)?;
            let mut prob = InterpolationProblem::from_divisor(&class, seed)?;
            prob.prime = prime;
            let res = system_dimension(&prob)?;
            Ok(TableRow {
                d: *d,
                m: m.clone(),
                oracle: res.dimension,
                stable: res.stable,
                chi: exp.wdim.chi.clone(),
                wdim: exp.wdim.value.clone(),
                matches: exp.value == BigInt::from(res.dimension),
                expected: exp.value,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DimensionTable {
        space,
        seed,
        prime,
        degree_bound,
        catalog_complete: planes.complete(),
        catalog_hash: planes.version_hash(),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::baselocus::euler_characteristic;

    fn dim(n: usize, d: u32, m: &[u32]) -> u64 {
        let r = system_dimension(&InterpolationProblem::new(n, d, m.to_vec(), DEFAULT_SEED)).unwrap();
        assert!(r.stable);
        r.dimension
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(dim(2, 1, &[1, 1]), 1);
        assert_eq!(dim(3, 2, &[2, 2]), 3);
        assert_eq!(dim(2, 4, &[2, 2, 2, 2, 2]), 1);
        assert_eq!(dim(3, 4, &[2; 9]), 1);
    }

    #[test]
    fn simple_points_impose_independent_conditions() {
        for n in 2..=4 {
            for d in 1..=4u32 {
                let total = binomial(n as i64 + d as i64, n as i64).to_string().parse::<u64>().unwrap();
                for s in 0..=(total as usize).min(12) {
                    assert_eq!(dim(n, d, &vec![1; s]), total - s as u64, "n={n} d={d} s={s}");
                }
            }
        }
    }

    #[test]
    fn monotone_in_multiplicities() {
        let base = [2u32, 1, 2, 1, 1];
        for i in 0..base.len() {
            let mut up = base.to_vec();
            up[i] += 1;
            let p = InterpolationProblem::new(3, 4, base.to_vec(), 7);
            let q = InterpolationProblem::new(3, 4, up, 7);
            assert!(single_seed_dimension(&q, 7).unwrap() <= single_seed_dimension(&p, 7).unwrap());
        }
    }

    #[test]
    fn dimension_at_least_chi() {
        let x = Space::new(3, 6).unwrap();
        for m in multiplicity_vectors(6, 3, TableMode::Sorted).into_iter().step_by(5) {
            let d = DivisorClass::from_ints(x, 4, &m.iter().map(|&v| v as i64).collect::<Vec<_>>()).unwrap();
            let chi = euler_characteristic(&d);
            let o = system_dimension(&InterpolationProblem::from_divisor(&d, 3).unwrap()).unwrap();
            assert!(BigInt::from(o.dimension) >= chi);
        }
    }

    #[test]
    fn errors() {
        let mut p = InterpolationProblem::new(2, 5, vec![1, 2], 1);
        p.prime = 5;
        assert!(matches!(system_dimension(&p), Err(Error::Unsupported(_))));
        let mut q = InterpolationProblem::new(4, 30, vec![10; 10], 1);
        q.entry_cap = 1000;
        assert!(matches!(system_dimension(&q), Err(Error::ResourceCap(_))));
        assert!(system_dimension(&InterpolationProblem::new(2, 2, vec![0], 1)).is_err());
    }

    #[test]
    fn seeds_are_reproducible() {
        assert_eq!(points(3, 7, 11, DEFAULT_PRIME), points(3, 7, 11, DEFAULT_PRIME));
        assert_ne!(points(3, 7, 11, DEFAULT_PRIME)[5], points(3, 7, 12, DEFAULT_PRIME)[5]);
        assert_eq!(points(3, 5, 11, DEFAULT_PRIME)[4], vec![1, 1, 1, 1]);
    }

    #[test]
    fn table_x36_homogeneous_simple_points() {
        let t = dimension_table(Space::new(3, 6).unwrap(), 4, 1, DEFAULT_SEED, TableMode::Homogeneous, None).unwrap();
        assert_eq!(t.rows.len(), 4);
        assert!(t.all_match(), "{:?}", t.to_json());
    }

    #[test]
    fn table_x39_flags_double_quadric() {
        let x = Space::new(3, 9).unwrap();
        let t = dimension_table_for(x, &[(4, vec![2; 9])], DEFAULT_SEED, Some(8)).unwrap();
        let row = &t.rows[0];
        assert_eq!(row.oracle, 1);
        assert!(!row.matches);
        assert!(BigInt::from(row.oracle) > row.expected);
    }

    #[test]
    fn mode_sizes() {
        assert_eq!(multiplicity_vectors(4, 3, TableMode::Full).len(), 81);
        assert_eq!(multiplicity_vectors(4, 3, TableMode::Sorted).len(), 15);
        assert_eq!(multiplicity_vectors(4, 3, TableMode::Homogeneous).len(), 3);
        assert!(multiplicity_vectors(3, 2, TableMode::Sorted).iter().all(|v| v.windows(2).all(|w| w[0] >= w[1])));
    }
}
