//! Lower derivations for the A2 multiarrangement `{x, y, x+y}` with
//! multiplicity `(a, a, b)`.
//!
//! For `b` odd and `2a + b ≡ 3 (mod 4)`, let `μ = (1, b, a, a)` on B2 and
//! `L = (x - y, x + y)`. Then
//!
//! ```text
//! f' = f_μ∘L - g_μ∘L,   g' = f_μ∘L + g_μ∘L,   θ'_m = f' ∂x - g' ∂y
//! ```
//!
//! has degree `(2a + b - 1)/2` and lies in `D(m)` whenever `m` is balanced.

use std::fmt;

use num_traits::Zero;

use crate::arrangement::{is_member, Derivation, Multiarrangement, Multiplicity};
use crate::closedform::{f_m, g_m, B2Multiplicity};
use crate::error::{Error, Result};
use crate::poly::{int, HomoPoly, LinearForm, Rational};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct A2Multiplicity {
    /// multiplicity of `x` and of `y`
    pub a: u32,
    /// multiplicity of `x + y`
    pub b: u32,
}

impl A2Multiplicity {
    pub const fn new(a: u32, b: u32) -> Self {
        A2Multiplicity { a, b }
    }

    pub fn total(&self) -> u32 {
        2 * self.a + self.b
    }

    pub fn to_multiplicity(&self) -> Multiplicity {
        Multiplicity::new(vec![self.a, self.a, self.b])
    }

    pub fn is_admissible(&self) -> bool {
        self.b % 2 == 1 && self.total() % 4 == 3
    }

    pub fn is_balanced(&self) -> bool {
        self.to_multiplicity().is_balanced()
    }

    /// `(1, b, a, a)`
    pub fn mu(&self) -> B2Multiplicity {
        B2Multiplicity::new(1, self.b, self.a, self.a)
    }
}

impl fmt::Display for A2Multiplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.a, self.b)
    }
}

fn transform() -> (LinearForm, LinearForm) {
    (
        LinearForm::from_ints(1, -1).expect("nonzero"),
        LinearForm::from_ints(1, 1).expect("nonzero"),
    )
}

/// `g_μ(x - y, x + y)`
pub fn transformed_g_mu(m: &A2Multiplicity) -> Result<HomoPoly> {
    let (u, v) = transform();
    Ok(g_m(&m.mu())?.subst_linear(&u, &v))
}

pub fn theta_prime(m: &A2Multiplicity) -> Result<Derivation> {
    if !m.is_admissible() {
        return Err(Error::HypothesisViolation(format!(
            "{m} needs b odd and 2a + b ≡ 3 (mod 4)"
        )));
    }
    let (u, v) = transform();
    let mu = m.mu();
    let f = f_m(&mu)?.subst_linear(&u, &v);
    let g = g_m(&mu)?.subst_linear(&u, &v);
    let f_prime = f.checked_sub(&g)?;
    let g_prime = f.checked_add(&g)?;
    Derivation::new(f_prime, -g_prime)
}

pub fn a2_membership(theta: &Derivation, m: &A2Multiplicity) -> Result<bool> {
    is_member(theta, &Multiarrangement::a2(), &m.to_multiplicity())
}

/// `c` with `θ1 = c θ2`, if any.
pub fn scalar_ratio(theta1: &Derivation, theta2: &Derivation) -> Result<Option<Rational>> {
    if theta1.degree() != theta2.degree() {
        return Err(Error::DegreeMismatch {
            left: theta1.degree(),
            right: theta2.degree(),
        });
    }
    let v1 = theta1.to_vector();
    let v2 = theta2.to_vector();
    let Some(j) = v2.iter().position(|c| !c.is_zero()) else {
        return Ok(None);
    };
    let c = &v1[j] / &v2[j];
    Ok((theta2.scale(&c) == *theta1).then_some(c))
}

/// Terms `(c, x-exp, y-exp)` of one coefficient.
type Terms = &'static [(i64, usize, usize)];
/// `(a, b, ∂x terms, ∂y terms, (numerator, denominator))`
type FixtureRow = (u32, u32, Terms, Terms, (i64, i64));

/// Integer lower basis elements of `D(m)` for ten multiplicities, each with
/// the constant `c` for which it equals `c θ'_m`.
#[rustfmt::skip]
const FIXTURES: &[FixtureRow] = &[
    (2, 3, &[(1, 3, 0), (3, 2, 1)], &[(3, 1, 2), (1, 0, 3)], (-3, 2)),
    (3, 5, &[(1, 5, 0), (5, 4, 1), (10, 3, 2)], &[(10, 2, 3), (5, 1, 4), (1, 0, 5)], (15, 2)),
    (4, 3, &[(6, 5, 0), (10, 4, 1)], &[(10, 1, 4), (6, 0, 5)], (15, 1)),
    (4, 7,
     &[(1, 7, 0), (7, 6, 1), (21, 5, 2), (35, 4, 3)],
     &[(35, 3, 4), (21, 2, 5), (7, 1, 6), (1, 0, 7)], (-105, 2)),
    (5, 5,
     &[(50, 7, 0), (175, 6, 1), (175, 5, 2)],
     &[(175, 2, 5), (175, 1, 6), (50, 0, 7)], (-2625, 4)),
    (5, 9,
     &[(1, 9, 0), (9, 8, 1), (36, 7, 2), (84, 6, 3), (126, 5, 4)],
     &[(126, 4, 5), (84, 3, 6), (36, 2, 7), (9, 1, 8), (1, 0, 9)], (945, 2)),
    (6, 3, &[(15, 7, 0), (21, 6, 1)], &[(21, 1, 6), (15, 0, 7)], (-315, 4)),
    (6, 7,
     &[(490, 9, 0), (2646, 8, 1), (5292, 7, 2), (4116, 6, 3)],
     &[(4116, 3, 6), (5292, 2, 7), (2646, 1, 8), (490, 0, 9)], (46305, 1)),
    (6, 11,
     &[(1, 11, 0), (11, 10, 1), (55, 9, 2), (165, 8, 3), (330, 7, 4), (462, 6, 5)],
     &[(462, 5, 6), (330, 4, 7), (165, 3, 8), (55, 2, 9), (11, 1, 10), (1, 0, 11)], (-10395, 2)),
    (7, 5,
     &[(490, 9, 0), (1470, 8, 1), (1176, 7, 2)],
     &[(1176, 2, 7), (1470, 1, 8), (490, 0, 9)], (15435, 1)),
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fixture {
    pub m: A2Multiplicity,
    pub theta_sigma: Derivation,
    pub expected_ratio: Rational,
}

pub fn reference_lower_derivations() -> Vec<Fixture> {
    let poly = |degree: usize, terms: &[(i64, usize, usize)]| {
        let t: Vec<_> = terms.iter().map(|&(c, xe, ye)| (int(c), xe, ye)).collect();
        HomoPoly::from_terms(degree, &t).expect("fixture terms have the stated degree")
    };
    FIXTURES
        .iter()
        .map(|&(a, b, f, g, (n, d))| {
            let m = A2Multiplicity::new(a, b);
            let degree = (m.total() as usize - 1) / 2;
            Fixture {
                m,
                theta_sigma: Derivation::new(poly(degree, f), poly(degree, g))
                    .expect("same degree"),
                expected_ratio: Rational::new(n.into(), d.into()),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn poly(degree: usize, terms: &[(i64, i64, usize, usize)]) -> HomoPoly {
        let t: Vec<_> = terms
            .iter()
            .map(|&(n, d, a, b)| (rat(n, d), a, b))
            .collect();
        HomoPoly::from_terms(degree, &t).unwrap()
    }

    #[test]
    fn theta_prime_examples() {
        let t = theta_prime(&A2Multiplicity::new(2, 3)).unwrap();
        assert_eq!(t.f(), &poly(3, &[(-2, 3, 3, 0), (-2, 1, 2, 1)]));
        assert_eq!(t.g(), &poly(3, &[(-2, 1, 1, 2), (-2, 3, 0, 3)]));

        let t = theta_prime(&A2Multiplicity::new(3, 5)).unwrap();
        assert_eq!(
            t.f(),
            &poly(5, &[(2, 15, 5, 0), (2, 3, 4, 1), (4, 3, 3, 2)])
        );
        assert_eq!(
            t.g(),
            &poly(5, &[(4, 3, 2, 3), (2, 3, 1, 4), (2, 15, 0, 5)])
        );

        let t = theta_prime(&A2Multiplicity::new(4, 3)).unwrap();
        assert_eq!(t.f(), &poly(5, &[(2, 5, 5, 0), (2, 3, 4, 1)]));
        assert_eq!(t.g(), &poly(5, &[(2, 3, 1, 4), (2, 5, 0, 5)]));
    }

    #[test]
    fn theta_prime_rejects() {
        for m in [A2Multiplicity::new(2, 2), A2Multiplicity::new(1, 3)] {
            assert!(matches!(
                theta_prime(&m),
                Err(Error::HypothesisViolation(_))
            ));
        }
    }

    #[test]
    fn membership_examples() {
        let m = A2Multiplicity::new(2, 3);
        assert!(a2_membership(&theta_prime(&m).unwrap(), &m).unwrap());
        assert!(a2_membership(&Derivation::euler(), &A2Multiplicity::new(1, 1)).unwrap());
        let dx_member = is_member(
            &Derivation::dx(),
            &Multiarrangement::a2(),
            &Multiplicity::new(vec![1, 0, 0]),
        );
        assert!(!dx_member.unwrap());
    }

    #[test]
    fn ratio_examples() {
        let e = Derivation::euler();
        assert_eq!(
            scalar_ratio(&e, &e.scale(&int(2))).unwrap(),
            Some(rat(1, 2))
        );
        assert_eq!(scalar_ratio(&e, &Derivation::zero(1)).unwrap(), None);
        let other = Derivation::new(HomoPoly::x(), HomoPoly::x()).unwrap();
        assert_eq!(scalar_ratio(&e, &other).unwrap(), None);
        assert_eq!(
            scalar_ratio(&e, &Derivation::dx()),
            Err(Error::DegreeMismatch { left: 1, right: 0 })
        );
    }

    #[test]
    fn fixtures_match_reference_ratios() {
        let fx = reference_lower_derivations();
        assert_eq!(fx.len(), 10);
        for f in fx {
            let t = theta_prime(&f.m).unwrap();
            assert_eq!(
                scalar_ratio(&f.theta_sigma, &t).unwrap(),
                Some(f.expected_ratio.clone()),
                "{}",
                f.m
            );
        }
    }

    #[test]
    fn value_on_x_plus_y() {
        for (a, b) in [(2, 3), (3, 5), (4, 7), (6, 11), (1, 1), (0, 3)] {
            let m = A2Multiplicity::new(a, b);
            let t = theta_prime(&m).unwrap();
            let l = LinearForm::from_ints(1, 1).unwrap();
            assert_eq!(t.apply(&l), transformed_g_mu(&m).unwrap().scale(&int(-2)));
        }
    }
}
