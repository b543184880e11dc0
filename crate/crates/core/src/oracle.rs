//! Brute-force ground truth for `D(A, m)`.
//!
//! The degree-`d` piece of `D(A, m)` is the kernel of a linear map on the
//! `2(d+1)` coefficients of `f ∂x + g ∂y`: for each form, the coefficients
//! of `θ(α_i)` that must vanish for `α_i^{m_i}` to divide it. Everything here is computed from that kernel
//! alone, without any closed form.

use num_traits::Zero;

use crate::arrangement::{Derivation, ExponentPair, Multiarrangement, Multiplicity};
use crate::error::{Error, Result};
use crate::linalg;
use crate::poly::{HomoPoly, Rational};

/// Rational basis of the degree-`degree` piece, in reduced echelon form
/// (monomials by decreasing x-exponent, f-block before g-block).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedPieceBasis {
    pub degree: usize,
    pub basis: Vec<Derivation>,
}

impl GradedPieceBasis {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

fn membership_matrix(arr: &Multiarrangement, m: &Multiplicity, d: usize) -> Vec<Vec<Rational>> {
    let mut rows = Vec::new();
    for (l, &k) in arr.forms().iter().zip(m.values()) {
        // θ(l) = a f + b g; each functional r gives the row (a r | b r)
        for r in l.divisibility_functionals(d, k as usize) {
            let mut row = Vec::with_capacity(2 * r.len());
            row.extend(r.iter().map(|c| l.a() * c));
            row.extend(r.iter().map(|c| l.b() * c));
            if row.iter().any(|c| !c.is_zero()) {
                rows.push(row);
            }
        }
    }
    rows
}

pub fn graded_piece(
    arr: &Multiarrangement,
    m: &Multiplicity,
    d: usize,
) -> Result<GradedPieceBasis> {
    if arr.len() != m.len() {
        return Err(Error::LengthMismatch {
            expected: arr.len(),
            got: m.len(),
        });
    }
    let rows = membership_matrix(arr, m, d);
    let basis = linalg::nullspace(&rows, 2 * (d + 1))
        .iter()
        .map(|v| Derivation::from_vector(d, v))
        .collect::<Result<Vec<_>>>()?;
    Ok(GradedPieceBasis { degree: d, basis })
}

/// `dim` of the degree-`d` piece, from the rank alone.
pub fn piece_dimension(arr: &Multiarrangement, m: &Multiplicity, d: usize) -> Result<usize> {
    if arr.len() != m.len() {
        return Err(Error::LengthMismatch {
            expected: arr.len(),
            got: m.len(),
        });
    }
    let width = 2 * (d + 1);
    Ok(width - linalg::rank(&membership_matrix(arr, m, d), width))
}

/// Smallest degree with a nonzero piece, paired with `|m|` minus it.
///
/// Pieces are nested (`x·θ` stays in the module) and `e1 <= |m|/2`, so the
/// smallest such degree is found by bisection over `0..=|m|/2`.
pub fn exponents(arr: &Multiarrangement, m: &Multiplicity) -> Result<ExponentPair> {
    let total = m.total() as usize;
    if piece_dimension(arr, m, total / 2)? == 0 {
        return Err(Error::Internal(format!(
            "no nonzero derivation of degree <= {total} for {m}"
        )));
    }
    let (mut lo, mut hi) = (0, total / 2);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if piece_dimension(arr, m, mid)? > 0 {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(ExponentPair::new(lo, total - lo))
}

pub fn graded_dimension_profile(
    arr: &Multiarrangement,
    m: &Multiplicity,
    d_max: usize,
) -> Result<Vec<usize>> {
    (0..=d_max).map(|d| piece_dimension(arr, m, d)).collect()
}

/// `max(0, d - e1 + 1) + max(0, d - e2 + 1)`
pub fn free_dimension(e: ExponentPair, d: usize) -> usize {
    (d + 1).saturating_sub(e.e1) + (d + 1).saturating_sub(e.e2)
}

/// First element (in echelon order) of the degree-`degree` piece that is not
/// of the form `p · lower` with `p` homogeneous.
pub fn complement_element(
    arr: &Multiarrangement,
    m: &Multiplicity,
    lower: &Derivation,
    degree: usize,
) -> Result<Derivation> {
    let piece = graded_piece(arr, m, degree)?;
    let width = 2 * (degree + 1);
    let mut multiples: Vec<Vec<Rational>> = Vec::new();
    if degree >= lower.degree() {
        let shift = degree - lower.degree();
        for i in 0..=shift {
            let mono = HomoPoly::monomial(Rational::from_integer(1.into()), shift - i, i);
            multiples.push(lower.mul_poly(&mono).to_vector());
        }
    }
    let base_rank = linalg::rank(&multiples, width);
    for cand in piece.basis {
        let mut trial = multiples.clone();
        trial.push(cand.to_vector());
        if linalg::rank(&trial, width) > base_rank {
            return Ok(cand);
        }
    }
    Err(Error::Internal(format!(
        "degree {degree} piece of {m} lies in S·θ1"
    )))
}

/// A homogeneous basis found by linear algebra alone.
pub fn oracle_basis(arr: &Multiarrangement, m: &Multiplicity) -> Result<(Derivation, Derivation)> {
    let exps = exponents(arr, m)?;
    let lower = graded_piece(arr, m, exps.e1)?
        .basis
        .into_iter()
        .next()
        .ok_or_else(|| Error::Internal("empty lowest piece".into()))?;
    let upper = complement_element(arr, m, &lower, exps.e2)?;
    Ok((lower, upper))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{is_member, saito_check};

    fn m(v: &[u32]) -> Multiplicity {
        Multiplicity::new(v.to_vec())
    }

    #[test]
    fn graded_piece_examples() {
        let b2 = Multiarrangement::b2();
        assert_eq!(graded_piece(&b2, &m(&[1, 1, 1, 1]), 0).unwrap().dim(), 0);
        let p = graded_piece(&b2, &m(&[1, 1, 1, 1]), 1).unwrap();
        assert_eq!(p.basis, vec![Derivation::euler()]);
        let p = graded_piece(&b2, &m(&[3, 5, 2, 2]), 5).unwrap();
        assert_eq!(p.dim(), 1);
        assert!(is_member(&p.basis[0], &b2, &m(&[3, 5, 2, 2])).unwrap());
    }

    #[test]
    fn exponents_examples() {
        let b2 = Multiarrangement::b2();
        assert_eq!(
            exponents(&b2, &m(&[1, 1, 1, 1])).unwrap(),
            ExponentPair::new(1, 3)
        );
        assert_eq!(
            exponents(&b2, &m(&[1, 5, 1, 1])).unwrap(),
            ExponentPair::new(3, 5)
        );
        assert_eq!(
            exponents(&b2, &m(&[2, 2, 1, 1])).unwrap(),
            ExponentPair::new(3, 3)
        );
        assert_eq!(
            exponents(&b2, &m(&[0, 0, 0, 0])).unwrap(),
            ExponentPair::new(0, 0)
        );
    }

    #[test]
    fn profile_examples() {
        let b2 = Multiarrangement::b2();
        assert_eq!(
            graded_dimension_profile(&b2, &m(&[1, 1, 1, 1]), 4).unwrap(),
            vec![0, 1, 2, 4, 6]
        );
        assert_eq!(
            graded_dimension_profile(&b2, &m(&[0, 0, 0, 0]), 2).unwrap(),
            vec![2, 4, 6]
        );
        assert_eq!(
            graded_dimension_profile(&b2, &m(&[3, 5, 2, 2]), 7).unwrap(),
            vec![0, 0, 0, 0, 0, 1, 2, 4]
        );
    }

    #[test]
    fn oracle_basis_examples() {
        let b2 = Multiarrangement::b2();
        let (t1, t2) = oracle_basis(&b2, &m(&[1, 1, 1, 1])).unwrap();
        assert_eq!(t1, Derivation::euler());
        assert_eq!(t2.degree(), 3);
        assert!(saito_check(&t1, &t2, &b2, &m(&[1, 1, 1, 1])).unwrap());

        let (t1, t2) = oracle_basis(&b2, &m(&[0, 0, 0, 0])).unwrap();
        assert_eq!((t1, t2), (Derivation::dx(), Derivation::dy()));

        let (t1, t2) = oracle_basis(&b2, &m(&[1, 0, 0, 0])).unwrap();
        assert_eq!(t1, Derivation::dy());
        assert_eq!(t2.degree(), 1);
        assert!(saito_check(&t1, &t2, &b2, &m(&[1, 0, 0, 0])).unwrap());
    }

    #[test]
    fn length_mismatch() {
        assert_eq!(
            graded_piece(&Multiarrangement::a2(), &m(&[1, 1]), 1),
            Err(Error::LengthMismatch {
                expected: 3,
                got: 2
            })
        );
    }
}
