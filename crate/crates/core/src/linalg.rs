//! Exact integer linear algebra.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::primitive;

/// Rank of an integer matrix by fraction-free elimination.
pub fn rank(rows: &[Vec<BigInt>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    if m.is_empty() {
        return 0;
    }
    let cols = m[0].len();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let pivot = m[r].clone();
        for i in (r + 1)..m.len() {
            if m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone();
            for j in c..cols {
                let v = &m[i][j] * &pivot[c] - &f * &pivot[j];
                m[i][j] = v;
            }
            primitive(&mut m[i]);
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// Basis of the integer kernel {x : A x = 0}, as primitive vectors.
pub fn kernel(rows: &[Vec<BigInt>], cols: usize) -> Vec<Vec<BigInt>> {
    // Row-reduce to echelon form keeping pivot columns.
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let pivot = m[r].clone();
        for i in 0..m.len() {
            if i == r || m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone();
            for j in 0..cols {
                let v = &m[i][j] * &pivot[c] - &f * &pivot[j];
                m[i][j] = v;
            }
            primitive(&mut m[i]);
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::new();
    for &f in &free {
        // x_f = L, x_pivot(i) = -L * m[i][f] / m[i][pivot], with L the lcm of pivots.
        let mut lcm = BigInt::from(1);
        for (i, &pc) in pivots.iter().enumerate() {
            if !m[i][f].is_zero() {
                lcm = num_integer::Integer::lcm(&lcm, &m[i][pc]);
            }
        }
        let mut x = vec![BigInt::zero(); cols];
        x[f] = lcm.clone();
        for (i, &pc) in pivots.iter().enumerate() {
            if !m[i][f].is_zero() {
                x[pc] = -(&lcm * &m[i][f]) / &m[i][pc];
            }
        }
        primitive(&mut x);
        basis.push(x);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{big_vec, dot};

    #[test]
    fn rank_small_matrices() {
        let a = vec![big_vec(&[1, 2, 3]), big_vec(&[2, 4, 6]), big_vec(&[0, 1, 1])];
        assert_eq!(rank(&a), 2);
        assert_eq!(rank(&[big_vec(&[0, 0])]), 0);
        let id: Vec<_> = (0..4).map(|i| {
            let mut v = vec![0; 4];
            v[i] = 1;
            big_vec(&v)
        }).collect();
        assert_eq!(rank(&id), 4);
    }

    #[test]
    fn kernel_is_orthogonal_and_complementary() {
        let a = vec![big_vec(&[1, 2, 3, 4]), big_vec(&[2, 3, 5, 1])];
        let k = kernel(&a, 4);
        assert_eq!(k.len(), 2);
        for v in &k {
            for row in &a {
                assert!(dot(row, v).is_zero());
            }
        }
        assert_eq!(rank(&k), 2);
        assert_eq!(kernel(&[], 3).len(), 3);
    }
}
