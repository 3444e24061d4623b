//! Double description method over the integers.
//!
//! Given rows a_1..a_m, computes the cone P = {x : a_i·x ≥ 0 for all i} as
//! span(lineality) + cone(rays), with every vector primitive.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::arith::{dot, primitive};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polyhedral {
    pub dim: usize,
    pub lineality: Vec<Vec<BigInt>>,
    pub rays: Vec<Vec<BigInt>>,
}

impl Polyhedral {
    /// Rays followed by ± each lineality vector.
    pub fn generators(&self) -> Vec<Vec<BigInt>> {
        let mut out = self.rays.clone();
        for l in &self.lineality {
            out.push(l.clone());
            out.push(l.iter().map(|x| -x).collect());
        }
        out
    }
}

#[derive(Clone)]
struct Ray {
    v: Vec<BigInt>,
    zeros: Vec<u64>,
}

fn set_bit(bits: &mut [u64], i: usize) {
    bits[i / 64] |= 1 << (i % 64);
}

fn count_and(a: &[u64], b: &[u64]) -> usize {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones() as usize).sum()
}

fn contains_all(sup: &[u64], sub: &[u64]) -> bool {
    sup.iter().zip(sub).all(|(x, y)| x & y == *y)
}

fn combine(cp: &BigInt, q: &[BigInt], cq: &BigInt, p: &[BigInt]) -> Vec<BigInt> {
    // cp·q − cq·p
    let mut v: Vec<BigInt> = q.iter().zip(p).map(|(x, y)| cp * x - cq * y).collect();
    primitive(&mut v);
    v
}

pub fn double_description(rows: &[Vec<BigInt>], dim: usize) -> Polyhedral {
    let words = rows.len().div_ceil(64).max(1);
    let mut lineality: Vec<Vec<BigInt>> = (0..dim)
        .map(|i| {
            let mut e = vec![BigInt::zero(); dim];
            e[i] = BigInt::from(1);
            e
        })
        .collect();
    let mut rays: Vec<Ray> = Vec::new();
    let mut processed = vec![0u64; words];

    for (idx, a) in rows.iter().enumerate() {
        if let Some(pos) = lineality.iter().position(|l| !dot(a, l).is_zero()) {
            let mut l0 = lineality.swap_remove(pos);
            let mut p = dot(a, &l0);
            if p.is_negative() {
                l0.iter_mut().for_each(|x| *x = -x.clone());
                p = -p;
            }
            for l in lineality.iter_mut() {
                let c = dot(a, l);
                if !c.is_zero() {
                    *l = combine(&p, l, &c, &l0);
                }
            }
            for r in rays.iter_mut() {
                let c = dot(a, &r.v);
                if !c.is_zero() {
                    r.v = combine(&p, &r.v, &c, &l0);
                }
                set_bit(&mut r.zeros, idx);
            }
            rays.push(Ray { v: l0, zeros: processed.clone() });
        } else {
            let vals: Vec<BigInt> = rays.iter().map(|r| dot(a, &r.v)).collect();
            let need = dim.saturating_sub(lineality.len()).saturating_sub(2);
            let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
            let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
            let mut next: Vec<Ray> = Vec::new();
            for &i in &pos {
                next.push(rays[i].clone());
            }
            for (i, r) in rays.iter().enumerate() {
                if vals[i].is_zero() {
                    let mut r = r.clone();
                    set_bit(&mut r.zeros, idx);
                    next.push(r);
                }
            }
            for &i in &pos {
                for &j in &neg {
                    let (p, q) = (&rays[i], &rays[j]);
                    if count_and(&p.zeros, &q.zeros) < need {
                        continue;
                    }
                    let common: Vec<u64> = p.zeros.iter().zip(&q.zeros).map(|(x, y)| x & y).collect();
                    let adjacent = rays
                        .iter()
                        .enumerate()
                        .all(|(k, r)| k == i || k == j || !contains_all(&r.zeros, &common));
                    if !adjacent {
                        continue;
                    }
                    let v = combine(&vals[i], &q.v, &vals[j], &p.v);
                    let mut zeros = common;
                    set_bit(&mut zeros, idx);
                    next.push(Ray { v, zeros });
                }
            }
            rays = next;
        }
        set_bit(&mut processed, idx);
    }

    let mut rays: Vec<Vec<BigInt>> = rays.into_iter().map(|r| r.v).collect();
    rays.sort();
    rays.dedup();
    for l in lineality.iter_mut() {
        primitive(l);
    }
    Polyhedral { dim, lineality, rays }
}
