//! Finitely generated rational cones with exact duality.

mod dd;
mod moving;

pub use dd::{double_description, Polyhedral};
pub use moving::{
    ck_generators, ck_generators_capped, curve_from_vector, curve_vector, dk_inequalities, dk_inequality_cone,
    dk_inequality_cone_capped, verify_strong_duality, weyl_divisors, ConeGeneratorReport, DualityReport,
    OrbitCount, DEFAULT_DIM_CAP,
};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use std::sync::OnceLock;

use crate::arith::{dot, from_json_vec, json_vec, primitive, JsonInt};
use crate::error::{Error, Result};
use crate::linalg::rank;

#[derive(Debug)]
pub struct RationalCone {
    ambient_dim: usize,
    generators: Vec<Vec<BigInt>>,
    hrep: OnceLock<Polyhedral>,
}

impl Clone for RationalCone {
    fn clone(&self) -> Self {
        let hrep = OnceLock::new();
        if let Some(h) = self.hrep.get() {
            let _ = hrep.set(h.clone());
        }
        RationalCone { ambient_dim: self.ambient_dim, generators: self.generators.clone(), hrep }
    }
}

impl RationalCone {
    /// Zero vectors are dropped; the rest are made primitive, sorted and deduplicated.
    pub fn new(ambient_dim: usize, generators: Vec<Vec<BigInt>>) -> Result<Self> {
        let mut gens = Vec::with_capacity(generators.len());
        for mut g in generators {
            if g.len() != ambient_dim {
                return Err(Error::LengthMismatch { expected: ambient_dim, got: g.len() });
            }
            if g.iter().all(|x| x.is_zero()) {
                continue;
            }
            primitive(&mut g);
            gens.push(g);
        }
        gens.sort();
        gens.dedup();
        Ok(RationalCone { ambient_dim, generators: gens, hrep: OnceLock::new() })
    }

    pub fn from_ints(ambient_dim: usize, generators: &[Vec<i64>]) -> Result<Self> {
        Self::new(ambient_dim, generators.iter().map(|g| crate::arith::big_vec(g)).collect())
    }

    /// The whole space, generated by ± the unit vectors.
    pub fn full_space(ambient_dim: usize) -> Self {
        let mut gens = Vec::new();
        for i in 0..ambient_dim {
            for sign in [1, -1] {
                let mut e = vec![BigInt::zero(); ambient_dim];
                e[i] = BigInt::from(sign);
                gens.push(e);
            }
        }
        Self::new(ambient_dim, gens).expect("unit vectors")
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn generators(&self) -> &[Vec<BigInt>] {
        &self.generators
    }

    /// Inequality description {x : y·x ≥ 0 for rays y, l·x = 0 for lineality l}.
    pub fn inequalities(&self) -> &Polyhedral {
        self.hrep.get_or_init(|| double_description(&self.generators, self.ambient_dim))
    }

    fn check_dim(&self, len: usize) -> Result<()> {
        if len != self.ambient_dim {
            return Err(Error::LengthMismatch { expected: self.ambient_dim, got: len });
        }
        Ok(())
    }

    pub fn contains(&self, v: &[BigInt]) -> Result<bool> {
        self.check_dim(v.len())?;
        let h = self.inequalities();
        Ok(h.rays.iter().all(|y| !dot(y, v).is_negative())
            && h.lineality.iter().all(|l| dot(l, v).is_zero()))
    }

    /// True for the generator of a one-dimensional face of a pointed cone.
    pub fn is_extremal(&self, g: &[BigInt]) -> Result<bool> {
        if !self.contains(g)? || g.iter().all(|x| x.is_zero()) {
            return Ok(false);
        }
        let h = self.inequalities();
        let all: Vec<Vec<BigInt>> = h.rays.iter().chain(&h.lineality).cloned().collect();
        if rank(&all) < self.ambient_dim {
            return Ok(false);
        }
        let tight: Vec<Vec<BigInt>> = all.into_iter().filter(|y| dot(y, g).is_zero()).collect();
        Ok(rank(&tight) + 1 == self.ambient_dim)
    }

    /// Generators that span extremal rays.
    pub fn extremal_generators(&self) -> Vec<Vec<BigInt>> {
        self.generators.iter().filter(|g| self.is_extremal(g).unwrap_or(false)).cloned().collect()
    }

    pub fn json(&self) -> ConeJson {
        ConeJson {
            ambient_dim: self.ambient_dim,
            generators: self.generators.iter().map(|g| json_vec(g)).collect(),
        }
    }

    pub fn from_json(j: ConeJson) -> Result<Self> {
        Self::new(j.ambient_dim, j.generators.into_iter().map(from_json_vec).collect())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConeJson {
    pub ambient_dim: usize,
    pub generators: Vec<Vec<JsonInt>>,
}

/// The dual cone {y : y·g ≥ 0 for every generator g}.
pub fn dual_cone(c: &RationalCone) -> Result<RationalCone> {
    if c.generators.is_empty() {
        return Err(Error::EmptyGenerators(c.ambient_dim));
    }
    RationalCone::new(c.ambient_dim, c.inequalities().generators())
}

/// The cone {x : a·x ≥ 0 for every row a}, in generator form.
pub fn cone_from_inequalities(dim: usize, rows: &[Vec<BigInt>]) -> Result<RationalCone> {
    for r in rows {
        if r.len() != dim {
            return Err(Error::LengthMismatch { expected: dim, got: r.len() });
        }
    }
    RationalCone::new(dim, double_description(rows, dim).generators())
}

pub fn cone_contains(c: &RationalCone, v: &[BigInt]) -> Result<bool> {
    c.contains(v)
}

pub fn is_extremal(c: &RationalCone, g: &[BigInt]) -> Result<bool> {
    c.is_extremal(g)
}

/// Generators of `a` that are not in `b`.
pub fn missing_from(a: &RationalCone, b: &RationalCone) -> Result<Vec<Vec<BigInt>>> {
    if a.ambient_dim != b.ambient_dim {
        return Err(Error::LengthMismatch { expected: a.ambient_dim, got: b.ambient_dim });
    }
    let mut out = Vec::new();
    for g in &a.generators {
        if !b.contains(g)? {
            out.push(g.clone());
        }
    }
    Ok(out)
}

pub fn cone_equal(a: &RationalCone, b: &RationalCone) -> Result<bool> {
    Ok(missing_from(a, b)?.is_empty() && missing_from(b, a)?.is_empty())
}
