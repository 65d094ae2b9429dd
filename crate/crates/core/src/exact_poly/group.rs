//! Structure of the multiplicative group generated by finitely many rationals.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{PolyError, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAnalysis {
    /// Rank of the prime-exponent lattice.
    pub lattice_rank: usize,
    pub contains_minus_one: bool,
    /// Primes occurring in the generators, ascending.
    pub primes: Vec<BigUint>,
}

/// Rank of the generated group modulo torsion, and whether `-1` lies in it.
pub fn group_analysis(generators: &[Rational]) -> Result<GroupAnalysis, PolyError> {
    let mut facts = Vec::with_capacity(generators.len());
    for (k, g) in generators.iter().enumerate() {
        facts.push(g.factor().ok_or(PolyError::ZeroGenerator(k))?);
    }
    let primes: Vec<BigUint> = facts
        .iter()
        .flat_map(|f| f.exponents.keys().cloned())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let rows: Vec<Vec<BigInt>> = facts
        .iter()
        .map(|f| {
            primes
                .iter()
                .map(|p| BigInt::from(*f.exponents.get(p).unwrap_or(&0)))
                .collect()
        })
        .collect();
    let (rank, kernel) = left_kernel(rows, primes.len());
    let contains_minus_one = kernel.iter().any(|u| {
        let parity: BigInt = u
            .iter()
            .zip(&facts)
            .filter(|(_, f)| f.negative)
            .map(|(c, _)| c.clone())
            .sum();
        parity.is_odd()
    });
    Ok(GroupAnalysis {
        lattice_rank: rank,
        contains_minus_one,
        primes,
    })
}

/// Row-reduce `rows` over the integers with unimodular row operations.
/// Returns the rank and a basis of the integer left kernel.
pub(crate) fn left_kernel(mut rows: Vec<Vec<BigInt>>, ncols: usize) -> (usize, Vec<Vec<BigInt>>) {
    let m = rows.len();
    let mut u: Vec<Vec<BigInt>> = (0..m)
        .map(|i| (0..m).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let mut pivot = 0;
    for col in 0..ncols {
        if pivot == m {
            break;
        }
        loop {
            // smallest nonzero entry at or below the pivot row
            let best = (pivot..m)
                .filter(|&r| !rows[r][col].is_zero())
                .min_by(|&a, &b| rows[a][col].abs().cmp(&rows[b][col].abs()));
            let Some(b) = best else { break };
            rows.swap(pivot, b);
            u.swap(pivot, b);
            let mut done = true;
            for r in pivot + 1..m {
                if rows[r][col].is_zero() {
                    continue;
                }
                let q = rows[r][col].div_floor(&rows[pivot][col]);
                let (pr, pu) = (rows[pivot].clone(), u[pivot].clone());
                for (x, y) in rows[r].iter_mut().zip(&pr) {
                    *x -= &q * y;
                }
                for (x, y) in u[r].iter_mut().zip(&pu) {
                    *x -= &q * y;
                }
                if !rows[r][col].is_zero() {
                    done = false;
                }
            }
            if done {
                pivot += 1;
                break;
            }
        }
    }
    let kernel = (pivot..m).map(|r| u[r].clone()).collect();
    (pivot, kernel)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&n| Rational::from_integer(n)).collect()
    }

    #[test]
    fn powers_of_two() {
        let g = group_analysis(&q(&[2, 8, 4, 32, 2])).unwrap();
        assert_eq!(g.lattice_rank, 1);
        assert!(!g.contains_minus_one);
    }

    #[test]
    fn independent_primes() {
        let g = group_analysis(&q(&[2, 3, 5, 7])).unwrap();
        assert_eq!(g.lattice_rank, 4);
        assert!(!g.contains_minus_one);
    }

    #[test]
    fn sign_pair() {
        let g = group_analysis(&q(&[-2, 2])).unwrap();
        assert_eq!(g.lattice_rank, 1);
        assert!(g.contains_minus_one);
    }

    #[test]
    fn even_combination_of_negatives() {
        // (-2)^2 / (-4) = -1
        let g = group_analysis(&q(&[-2, -4])).unwrap();
        assert!(g.contains_minus_one);
        // -2 and 4: (-2)^2 / 4 = 1, no odd combination reaches -1
        let g = group_analysis(&q(&[-2, 4])).unwrap();
        assert!(!g.contains_minus_one);
        let g = group_analysis(&q(&[-1])).unwrap();
        assert_eq!(g.lattice_rank, 0);
        assert!(g.contains_minus_one);
    }

    #[test]
    fn zero_rejected() {
        assert!(matches!(group_analysis(&q(&[2, 0])), Err(PolyError::ZeroGenerator(1))));
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let rows: Vec<Vec<BigInt>> = [[2, 0], [3, 1], [1, 1], [4, 2]]
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        let (rank, ker) = left_kernel(rows.clone(), 2);
        assert_eq!(rank, 2);
        assert_eq!(ker.len(), 2);
        for k in &ker {
            for c in 0..2 {
                let s: BigInt = k.iter().zip(&rows).map(|(a, r)| a * &r[c]).sum();
                assert!(s.is_zero());
            }
        }
    }
}
