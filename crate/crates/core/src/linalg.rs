//! Exact nullspaces and ranks of rational matrices.
//!
//! Rows are scaled to integers and reduced with fraction-free (Bareiss)
//! elimination; the only rational arithmetic is the back substitution that
//! produces nullspace vectors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::poly::Rational;

/// Row echelon form over the integers, with the pivot column of each
/// nonzero row.
struct Echelon {
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    row.iter().map(|c| c.numer() * (&lcm / c.denom())).collect()
}

fn bareiss(matrix: &[Vec<Rational>], ncols: usize) -> Echelon {
    let mut rows: Vec<Vec<BigInt>> = matrix
        .iter()
        .map(|r| {
            debug_assert_eq!(r.len(), ncols);
            integer_row(r)
        })
        .filter(|r| r.iter().any(|c| !c.is_zero()))
        .collect();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let (top, bottom) = rows.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let pivot = &pivot_row[c];
        for row in bottom.iter_mut() {
            let lead = row[c].clone();
            for j in c + 1..ncols {
                let v = pivot * &row[j] - &lead * &pivot_row[j];
                debug_assert!((&v % &prev).is_zero());
                row[j] = v / &prev;
            }
            row[c] = BigInt::zero();
        }
        prev = pivot.clone();
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    Echelon { rows, pivots }
}

pub fn rank(matrix: &[Vec<Rational>], ncols: usize) -> usize {
    bareiss(matrix, ncols).pivots.len()
}

/// Basis of `{v : M v = 0}` in reduced row echelon form: each vector has
/// leading entry 1, and no other vector is nonzero at that position.
pub fn nullspace(matrix: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let ech = bareiss(matrix, ncols);
    let is_pivot = {
        let mut v = vec![false; ncols];
        for &p in &ech.pivots {
            v[p] = true;
        }
        v
    };
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut x = vec![Rational::zero(); ncols];
        x[free] = Rational::one();
        for (row, &pc) in ech.rows.iter().zip(&ech.pivots).rev() {
            let mut s = Rational::zero();
            for j in pc + 1..ncols {
                if !row[j].is_zero() && !x[j].is_zero() {
                    s += Rational::from_integer(row[j].clone()) * &x[j];
                }
            }
            x[pc] = -s / Rational::from_integer(row[pc].clone());
        }
        basis.push(x);
    }
    reduced_echelon(basis, ncols)
}

/// Gauss-Jordan reduction of a list of row vectors; zero rows are dropped.
pub fn reduced_echelon(mut rows: Vec<Vec<Rational>>, ncols: usize) -> Vec<Vec<Rational>> {
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let factor = rows[i][c].clone();
                let (pivot_row, target) = if i < r {
                    let (a, b) = rows.split_at_mut(r);
                    (&b[0], &mut a[i])
                } else {
                    let (a, b) = rows.split_at_mut(i);
                    (&a[r], &mut b[0])
                };
                for (t, pv) in target.iter_mut().zip(pivot_row) {
                    if !pv.is_zero() {
                        *t -= &factor * pv;
                    }
                }
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, rat};
    use proptest::prelude::*;

    fn mat(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter()
            .map(|r| r.iter().map(|&v| int(v)).collect())
            .collect()
    }

    fn apply(m: &[Vec<Rational>], v: &[Rational]) -> Vec<Rational> {
        m.iter()
            .map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    #[test]
    fn nullspace_small() {
        let m = mat(&[&[1, 2, 3], &[2, 4, 6]]);
        let ns = nullspace(&m, 3);
        assert_eq!(ns.len(), 2);
        assert_eq!(ns[0], vec![int(1), int(0), rat(1, -3)]);
        assert_eq!(ns[1], vec![int(0), int(1), rat(-2, 3)]);
        assert_eq!(rank(&m, 3), 1);
    }

    #[test]
    fn nullspace_of_empty_matrix_is_identity() {
        let ns = nullspace(&[], 2);
        assert_eq!(ns, mat(&[&[1, 0], &[0, 1]]));
    }

    #[test]
    fn full_rank_has_trivial_nullspace() {
        let m = mat(&[&[2, 1], &[1, 1]]);
        assert!(nullspace(&m, 2).is_empty());
        assert_eq!(rank(&m, 2), 2);
    }

    #[test]
    fn rational_entries() {
        let m = vec![vec![rat(1, 2), rat(1, 3), rat(-1, 6)]];
        let ns = nullspace(&m, 3);
        for v in &ns {
            assert!(apply(&m, v).iter().all(Zero::is_zero));
        }
        assert_eq!(ns.len(), 2);
    }

    /// Plain rational Gauss-Jordan rank, independent of the Bareiss path.
    fn naive_rank(m: &[Vec<Rational>], ncols: usize) -> usize {
        reduced_echelon(m.to_vec(), ncols).len()
    }

    proptest! {
        #[test]
        fn nullspace_is_kernel_with_complementary_dimension(
            entries in proptest::collection::vec(-3i64..=3, 1..=30),
            ncols in 1usize..=6,
        ) {
            let rows: Vec<Vec<Rational>> = entries
                .chunks(ncols)
                .filter(|c| c.len() == ncols)
                .map(|c| c.iter().map(|&v| int(v)).collect())
                .collect();
            let ns = nullspace(&rows, ncols);
            for v in &ns {
                prop_assert!(apply(&rows, v).iter().all(Zero::is_zero));
            }
            let r = rank(&rows, ncols);
            prop_assert_eq!(r, naive_rank(&rows, ncols));
            prop_assert_eq!(ns.len() + r, ncols);
            prop_assert_eq!(rank(&ns, ncols), ns.len());
        }
    }
}
