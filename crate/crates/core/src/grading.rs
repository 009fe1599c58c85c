//! Discovery of a strictly positive integer grading by exact linear
//! programming.
//!
//! We look for `g` with `g · a_i >= 1` for every atom. Writing `g = p - n`
//! with `p, n >= 0` and adding surplus and artificial variables turns this
//! into a phase-one simplex problem, solved over the rationals with Bland's
//! rule so it always terminates.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::Rational;

/// A strictly positive integer grading for `atoms`, if one exists.
pub(crate) fn find_grading(dim: usize, atoms: &[Vec<i64>]) -> Option<Vec<i64>> {
    let rows = atoms.len();
    if rows == 0 {
        return Some(vec![1; dim]);
    }
    // Columns: p (dim), n (dim), surplus (rows), artificial (rows), rhs.
    let width = 2 * dim + 2 * rows;
    let rhs = width;
    let mut tab: Vec<Vec<Rational>> = Vec::with_capacity(rows);
    for (r, a) in atoms.iter().enumerate() {
        let mut row = vec![Rational::zero(); width + 1];
        for (c, &v) in a.iter().enumerate() {
            row[c] = Rational::from_integer(BigInt::from(v));
            row[dim + c] = Rational::from_integer(BigInt::from(-v));
        }
        row[2 * dim + r] = -Rational::one();
        row[2 * dim + rows + r] = Rational::one();
        row[rhs] = Rational::one();
        tab.push(row);
    }
    let mut basis: Vec<usize> = (0..rows).map(|r| 2 * dim + rows + r).collect();

    // Reduced costs of the phase-one objective (minimize the artificials).
    let mut cost = vec![Rational::zero(); width + 1];
    for row in &tab {
        for c in 0..=width {
            if c < 2 * dim + rows || c == rhs {
                cost[c] -= &row[c];
            }
        }
    }

    while let Some(enter) = (0..width).find(|&c| cost[c].is_negative()) {
        let mut leave: Option<usize> = None;
        for r in 0..rows {
            if tab[r][enter].is_positive() {
                let better = match leave {
                    None => true,
                    Some(l) => {
                        let a = &tab[r][rhs] / &tab[r][enter];
                        let b = &tab[l][rhs] / &tab[l][enter];
                        a < b || (a == b && basis[r] < basis[l])
                    }
                };
                if better {
                    leave = Some(r);
                }
            }
        }
        // Phase one is bounded below by zero, so a pivot row always exists.
        let leave = leave?;
        pivot(&mut tab, &mut cost, leave, enter);
        basis[leave] = enter;
    }

    if !cost[rhs].is_zero() {
        return None;
    }
    let mut g = vec![Rational::zero(); dim];
    for (r, &b) in basis.iter().enumerate() {
        if b < dim {
            g[b] += &tab[r][rhs];
        } else if b < 2 * dim {
            g[b - dim] -= &tab[r][rhs];
        }
    }
    integral_grading(&g)
}

fn pivot(tab: &mut [Vec<Rational>], cost: &mut [Rational], leave: usize, enter: usize) {
    let p = tab[leave][enter].clone();
    for v in tab[leave].iter_mut() {
        *v /= &p;
    }
    let pivot_row = tab[leave].clone();
    for (r, row) in tab.iter_mut().enumerate() {
        if r == leave || row[enter].is_zero() {
            continue;
        }
        let f = row[enter].clone();
        for (v, pv) in row.iter_mut().zip(&pivot_row) {
            *v -= &f * pv;
        }
    }
    let f = cost[enter].clone();
    for (v, pv) in cost.iter_mut().zip(&pivot_row) {
        *v -= &f * pv;
    }
}

/// Clears denominators and divides out the content.
fn integral_grading(g: &[Rational]) -> Option<Vec<i64>> {
    let lcm = g.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let ints: Vec<BigInt> = g.iter().map(|v| v.numer() * (&lcm / v.denom())).collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    ints.iter()
        .map(|v| {
            if content.is_zero() {
                Some(0)
            } else {
                (v / &content).to_i64()
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn positive(g: &[i64], atoms: &[Vec<i64>]) -> bool {
        atoms
            .iter()
            .all(|a| a.iter().zip(g).map(|(x, y)| x * y).sum::<i64>() > 0)
    }

    #[test]
    fn finds_grading_for_krull_atoms() {
        let atoms = vec![
            vec![1, 0, 0, 0],
            vec![0, 1, 0, 0],
            vec![0, 0, 1, 0],
            vec![0, 0, 0, 1],
            vec![1, 1, -1, -1],
        ];
        let g = find_grading(4, &atoms).unwrap();
        assert!(positive(&g, &atoms));
    }

    #[test]
    fn rejects_opposite_atoms() {
        assert!(find_grading(1, &[vec![1], vec![-1]]).is_none());
        assert!(find_grading(2, &[vec![1, 0], vec![0, 1], vec![-1, -1]]).is_none());
    }

    #[test]
    fn handles_negative_directions() {
        let atoms = vec![vec![-2, 1], vec![-1, 3], vec![-5, 0]];
        let g = find_grading(2, &atoms).unwrap();
        assert!(positive(&g, &atoms));
    }
}
