//! Degree-increasing Cremona recursion on curve classes of X^n_{n+4} and X^n_{n+5}.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::{cremona_curve, CremonaIndexSet};
use crate::error::Result;
use crate::lattice::CurveClass;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RecursionCase {
    /// s = n+4, n ≥ 5.
    NPlus4,
    /// s = n+5, n ∈ {3, 4}.
    NPlus5,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RecursionBranch {
    Strict,
    Equality,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    Satisfies {
        case: RecursionCase,
        branch: RecursionBranch,
        /// (k, ℓ) in sorted positions, 1-based; only for s = n+4.
        excluded: Option<(usize, usize)>,
        /// Γ on the n+1 smallest multiplicities, in the original labels.
        witness: CremonaIndexSet,
        image: CurveClass,
    },
    Fails {
        case: RecursionCase,
    },
    Unavailable {
        reason: String,
    },
}

impl Certificate {
    pub fn satisfied(&self) -> bool {
        matches!(self, Certificate::Satisfies { .. })
    }
}

fn branch(d: &BigInt, sum: &BigInt, top_gt_bottom: bool) -> Option<RecursionBranch> {
    if d > sum {
        Some(RecursionBranch::Strict)
    } else if d == sum && top_gt_bottom {
        Some(RecursionBranch::Equality)
    } else {
        None
    }
}

/// Evaluates the recursion inequality on a sorted copy of the multiplicities.
pub fn recursion_certificate(c: &CurveClass) -> Result<Certificate> {
    let space = c.space;
    let (n, s) = (space.n, space.s);
    let case = if s == n + 4 && n >= 5 {
        RecursionCase::NPlus4
    } else if s == n + 5 && (n == 3 || n == 4) {
        RecursionCase::NPlus5
    } else {
        return Ok(Certificate::Unavailable {
            reason: format!("no recursion statement for {space}"),
        });
    };
    if !c.delta.is_positive() || c.mu.iter().any(|m| m.is_negative()) {
        return Ok(Certificate::Unavailable {
            reason: "needs positive degree and nonnegative multiplicities".into(),
        });
    }
    let mut order: Vec<usize> = (0..s).collect();
    order.sort_by(|&i, &j| c.mu[i].cmp(&c.mu[j]).then(i.cmp(&j)));
    let m: Vec<&BigInt> = order.iter().map(|&i| &c.mu[i]).collect();
    let top_gt_bottom = m[s - 1] > m[0];
    let sum_of = |pos: &[usize]| -> BigInt { pos.iter().map(|&p| m[p - 1]).sum() };

    let found = match case {
        RecursionCase::NPlus5 => {
            let mut pos = vec![3, 4];
            pos.extend(7..=s);
            branch(&c.delta, &sum_of(&pos), top_gt_bottom).map(|b| (b, None))
        }
        RecursionCase::NPlus4 => {
            let mut hit = None;
            'outer: for k in 4..=n {
                for l in (k + 3)..=(n + 2) {
                    let pos: Vec<usize> = (1..=s).filter(|&p| p != 1 && p != k && p != l).collect();
                    if let Some(b) = branch(&c.delta, &sum_of(&pos), top_gt_bottom) {
                        hit = Some((b, Some((k, l))));
                        break 'outer;
                    }
                }
            }
            hit
        }
    };
    let Some((branch, excluded)) = found else {
        return Ok(Certificate::Fails { case });
    };
    let witness = CremonaIndexSet::from_zero_based(space, &order[..n + 1])?;
    let image = cremona_curve(c, &witness)?.0;
    Ok(Certificate::Satisfies { case, branch, excluded, witness, image })
}

/// Follows witness moves for up to `steps` iterations, stopping early when
/// the certificate no longer holds. The first entry is `c` itself.
pub fn recursion_chain(c: &CurveClass, steps: usize) -> Result<(Vec<CurveClass>, bool)> {
    let mut chain = vec![c.clone()];
    for _ in 0..steps {
        let last = chain.last().expect("nonempty");
        match recursion_certificate(last)? {
            Certificate::Satisfies { image, .. } => chain.push(image),
            _ => return Ok((chain, false)),
        }
    }
    let holds = recursion_certificate(chain.last().expect("nonempty"))?.satisfied();
    Ok((chain, holds))
}

/// True when degrees increase strictly along the chain.
pub fn degrees_strictly_increase(chain: &[CurveClass]) -> bool {
    chain.windows(2).all(|w| w[1].delta > w[0].delta) && !chain.iter().any(|c| c.delta.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Space;

    fn curve(n: usize, s: usize, text: &str) -> CurveClass {
        CurveClass::parse(Space::new(n, s).unwrap(), text).unwrap()
    }

    #[test]
    fn conic_on_eight_points_in_three_space() {
        let c = curve(3, 8, "2;0,0,0,0,0,1,1,1");
        match recursion_certificate(&c).unwrap() {
            Certificate::Satisfies { case, branch, witness, image, .. } => {
                assert_eq!(case, RecursionCase::NPlus5);
                assert_eq!(branch, RecursionBranch::Equality);
                assert_eq!(witness.one_based(), vec![1, 2, 3, 4]);
                assert_eq!(image.to_string(), "6;2,2,2,2,0,1,1,1");
            }
            other => panic!("unexpected {other:?}"),
        }
        let (chain, holds) = recursion_chain(&c, 20).unwrap();
        assert!(holds);
        assert_eq!(chain.len(), 21);
        assert!(degrees_strictly_increase(&chain));
    }

    #[test]
    fn conic_on_nine_points_in_four_space_fails() {
        let c = curve(4, 9, "2;0,0,0,0,0,0,1,1,1");
        assert_eq!(
            recursion_certificate(&c).unwrap(),
            Certificate::Fails { case: RecursionCase::NPlus5 }
        );
    }

    #[test]
    fn degree_eight_class_on_nine_points_satisfies() {
        let c = curve(4, 9, "8;0,1,1,1,2,2,2,2,2");
        assert!(recursion_certificate(&c).unwrap().satisfied());
        let (chain, holds) = recursion_chain(&c, 20).unwrap();
        assert!(holds && degrees_strictly_increase(&chain));
    }

    #[test]
    fn n_plus_four_case_uses_excluded_pair() {
        let c = curve(5, 9, "2;0,0,0,0,0,0,1,1,1");
        match recursion_certificate(&c).unwrap() {
            Certificate::Satisfies { case, excluded, .. } => {
                assert_eq!(case, RecursionCase::NPlus4);
                assert_eq!(excluded, Some((4, 7)));
            }
            other => panic!("unexpected {other:?}"),
        }
        let (chain, holds) = recursion_chain(&c, 20).unwrap();
        assert!(holds && degrees_strictly_increase(&chain));
    }

    #[test]
    fn other_spaces_are_unavailable() {
        let c = curve(3, 7, "2;0,0,0,0,1,1,1");
        assert!(matches!(recursion_certificate(&c).unwrap(), Certificate::Unavailable { .. }));
        let neg = curve(3, 8, "2;0,0,0,0,0,1,1,-1");
        assert!(matches!(recursion_certificate(&neg).unwrap(), Certificate::Unavailable { .. }));
    }
}
