//! Homogeneous bivariate polynomials and linear forms over the rationals.
//!
//! A [`HomoPoly`] of degree `d` is stored densely as `d + 1` coefficients,
//! `coeffs[i]` being the coefficient of `x^(d-i) y^i`. The degree is part of
//! the value: the zero polynomial of degree 3 and the zero polynomial of
//! degree 4 are different objects.

use std::fmt;
use std::ops::{Mul, Neg};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct HomoPoly {
    coeffs: Vec<Rational>,
}

impl HomoPoly {
    pub fn zero(degree: usize) -> Self {
        HomoPoly {
            coeffs: vec![Rational::zero(); degree + 1],
        }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        HomoPoly { coeffs: vec![c] }
    }

    pub fn x() -> Self {
        Self::monomial(Rational::one(), 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(Rational::one(), 0, 1)
    }

    /// `c * x^xexp * y^yexp`
    pub fn monomial(c: Rational, xexp: usize, yexp: usize) -> Self {
        let mut p = Self::zero(xexp + yexp);
        p.coeffs[yexp] = c;
        p
    }

    /// Builds a polynomial from its coefficients in decreasing x-exponent
    /// order. An empty vector has no degree and is rejected.
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Option<Self> {
        if coeffs.is_empty() {
            None
        } else {
            Some(HomoPoly { coeffs })
        }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        HomoPoly {
            coeffs: coeffs.iter().map(|&c| int(c)).collect(),
        }
    }

    /// Builds a polynomial of the given degree from `(coeff, xexp, yexp)`
    /// terms; repeated monomials are summed.
    pub fn from_terms(degree: usize, terms: &[(Rational, usize, usize)]) -> Result<Self> {
        let mut p = Self::zero(degree);
        for (c, xe, ye) in terms {
            if xe + ye != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: xe + ye,
                });
            }
            p.coeffs[*ye] += c;
        }
        Ok(p)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^(d-i) y^i`.
    pub fn coeff(&self, i: usize) -> &Rational {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Nonzero terms as `(coeff, xexp, yexp)` in decreasing x-exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&Rational, usize, usize)> + '_ {
        let d = self.degree();
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (c, d - i, i))
    }

    pub fn checked_add(&self, other: &HomoPoly) -> Result<HomoPoly> {
        self.same_degree(other)?;
        Ok(HomoPoly {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn checked_sub(&self, other: &HomoPoly) -> Result<HomoPoly> {
        self.same_degree(other)?;
        Ok(HomoPoly {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    fn same_degree(&self, other: &HomoPoly) -> Result<()> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(())
    }

    pub fn scale(&self, c: &Rational) -> HomoPoly {
        HomoPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn pow(&self, k: usize) -> HomoPoly {
        let mut acc = HomoPoly::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// `p(x, y) -> p(y, x)`
    pub fn swap_xy(&self) -> HomoPoly {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        HomoPoly { coeffs }
    }

    /// Returns `p(u(x,y), v(x,y))`.
    pub fn subst_linear(&self, u: &LinearForm, v: &LinearForm) -> HomoPoly {
        let d = self.degree();
        let upow = powers(&u.to_poly(), d);
        let vpow = powers(&v.to_poly(), d);
        let mut out = HomoPoly::zero(d);
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = &upow[d - i] * &vpow[i];
            for (o, t) in out.coeffs.iter_mut().zip(&term.coeffs) {
                *o += c * t;
            }
        }
        out
    }

    /// Remainder of `self` modulo `l^k`.
    ///
    /// The polynomial is rewritten in coordinates `(l, t)` with `t` a
    /// coordinate complementary to `l`; every term with `l`-exponent `>= k`
    /// is dropped and the rest is mapped back to `(x, y)`. The result is zero
    /// iff `l^k` divides `self`, and it depends linearly on `self`.
    pub fn rem_mod_linpow(&self, l: &LinearForm, k: usize) -> HomoPoly {
        let d = self.degree();
        if k == 0 {
            return HomoPoly::zero(d);
        }
        let coords = l.adapted_coordinates();
        let mut local = self.subst_linear(&coords.x_in_local, &coords.y_in_local);
        for (i, c) in local.coeffs.iter_mut().enumerate() {
            if coords.l_exponent(d, i) >= k {
                *c = Rational::zero();
            }
        }
        local.subst_linear(&coords.local_first, &coords.local_second)
    }

    /// True iff `l^k` divides `self`. Skips the change back to `(x, y)`.
    pub fn divisible_by_linpow(&self, l: &LinearForm, k: usize) -> bool {
        if k == 0 {
            return true;
        }
        let d = self.degree();
        let coords = l.adapted_coordinates();
        let local = self.subst_linear(&coords.x_in_local, &coords.y_in_local);
        local
            .coeffs
            .iter()
            .enumerate()
            .all(|(i, c)| coords.l_exponent(d, i) >= k || c.is_zero())
    }
}

fn powers(p: &HomoPoly, n: usize) -> Vec<HomoPoly> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(HomoPoly::one());
    for i in 0..n {
        let next = &out[i] * p;
        out.push(next);
    }
    out
}

impl Mul for &HomoPoly {
    type Output = HomoPoly;

    fn mul(self, rhs: &HomoPoly) -> HomoPoly {
        let mut out = HomoPoly::zero(self.degree() + rhs.degree());
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out.coeffs[i + j] += a * b;
                }
            }
        }
        out
    }
}

impl Mul for HomoPoly {
    type Output = HomoPoly;

    fn mul(self, rhs: HomoPoly) -> HomoPoly {
        &self * &rhs
    }
}

impl Neg for &HomoPoly {
    type Output = HomoPoly;

    fn neg(self) -> HomoPoly {
        HomoPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for HomoPoly {
    type Output = HomoPoly;

    fn neg(self) -> HomoPoly {
        -&self
    }
}

/// Canonical text form: `1/10*x^5 - 1/6*x^3*y^2`; the zero polynomial is `0`.
impl fmt::Display for HomoPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (c, xe, ye) in self.terms() {
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            first = false;
            let mut factors = Vec::new();
            if !mag.is_one() || xe + ye == 0 {
                factors.push(mag.to_string());
            }
            for (var, e) in [("x", xe), ("y", ye)] {
                match e {
                    0 => {}
                    1 => factors.push(var.to_string()),
                    _ => factors.push(format!("{var}^{e}")),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// `a*x + b*y` with `(a, b) != (0, 0)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LinearForm {
    a: Rational,
    b: Rational,
}

struct AdaptedCoordinates {
    /// x and y written in the local coordinates (X, Y).
    x_in_local: LinearForm,
    y_in_local: LinearForm,
    /// The local coordinates X and Y written in x and y.
    local_first: LinearForm,
    local_second: LinearForm,
    /// Whether the form itself is the local Y (otherwise it is X).
    form_is_second: bool,
}

impl AdaptedCoordinates {
    /// Exponent of the form in the local monomial at index `i` of degree `d`.
    fn l_exponent(&self, d: usize, i: usize) -> usize {
        if self.form_is_second {
            i
        } else {
            d - i
        }
    }
}

impl LinearForm {
    pub fn new(a: Rational, b: Rational) -> Result<Self> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::ZeroLinearForm);
        }
        Ok(LinearForm { a, b })
    }

    pub fn from_ints(a: i64, b: i64) -> Result<Self> {
        Self::new(int(a), int(b))
    }

    pub fn x() -> Self {
        LinearForm {
            a: Rational::one(),
            b: Rational::zero(),
        }
    }

    pub fn y() -> Self {
        LinearForm {
            a: Rational::zero(),
            b: Rational::one(),
        }
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn to_poly(&self) -> HomoPoly {
        HomoPoly {
            coeffs: vec![self.a.clone(), self.b.clone()],
        }
    }

    pub fn is_proportional(&self, other: &LinearForm) -> bool {
        (&self.a * &other.b - &self.b * &other.a).is_zero()
    }

    /// `l^k`, expanded by the binomial theorem.
    pub fn linpow(&self, k: usize) -> HomoPoly {
        let mut coeffs = Vec::with_capacity(k + 1);
        let mut binom = BigInt::one();
        for i in 0..=k {
            let c = Rational::from_integer(binom.clone())
                * num_traits::pow(self.a.clone(), k - i)
                * num_traits::pow(self.b.clone(), i);
            coeffs.push(c);
            binom = binom * BigInt::from(k - i) / BigInt::from(i + 1);
        }
        HomoPoly { coeffs }
    }

    /// Linear functionals on degree-`d` coefficient vectors whose common
    /// kernel is the set of polynomials divisible by `self^k`: the local
    /// coefficients (see `HomoPoly::rem_mod_linpow`) with exponent of the
    /// form below `k`.
    pub fn divisibility_functionals(&self, d: usize, k: usize) -> Vec<Vec<Rational>> {
        let coords = self.adapted_coordinates();
        let xp = powers(&coords.x_in_local.to_poly(), d);
        let yp = powers(&coords.y_in_local.to_poly(), d);
        let columns: Vec<HomoPoly> = (0..=d).map(|i| &xp[d - i] * &yp[i]).collect();
        (0..=d)
            .filter(|&j| coords.l_exponent(d, j) < k)
            .map(|j| columns.iter().map(|c| c.coeffs[j].clone()).collect())
            .collect()
    }

    fn adapted_coordinates(&self) -> AdaptedCoordinates {
        let zero = Rational::zero;
        let one = Rational::one;
        if !self.b.is_zero() {
            // X = x, Y = a x + b y, so y = (Y - a X) / b.
            AdaptedCoordinates {
                x_in_local: LinearForm {
                    a: one(),
                    b: zero(),
                },
                y_in_local: LinearForm {
                    a: -&self.a / &self.b,
                    b: self.b.recip(),
                },
                local_first: LinearForm::x(),
                local_second: self.clone(),
                form_is_second: true,
            }
        } else {
            // X = a x, Y = y.
            AdaptedCoordinates {
                x_in_local: LinearForm {
                    a: self.a.recip(),
                    b: zero(),
                },
                y_in_local: LinearForm {
                    a: zero(),
                    b: one(),
                },
                local_first: self.clone(),
                local_second: LinearForm::y(),
                form_is_second: false,
            }
        }
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_poly().fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> HomoPoly {
        HomoPoly::from_i64(c)
    }

    fn lf(a: i64, b: i64) -> LinearForm {
        LinearForm::from_ints(a, b).unwrap()
    }

    #[test]
    fn add_examples() {
        assert_eq!(
            p(&[1, 0, 0]).checked_add(&p(&[-1, 0, 0])).unwrap(),
            HomoPoly::zero(2)
        );
        assert_eq!(p(&[1, 1]).checked_add(&p(&[1, -1])).unwrap(), p(&[2, 0]));
        let a = HomoPoly::from_coeffs(vec![rat(1, 2), int(0), int(0), int(-1)]).unwrap();
        let b = HomoPoly::from_coeffs(vec![rat(1, 2), int(0), int(0), int(1)]).unwrap();
        assert_eq!(a.checked_add(&b).unwrap(), p(&[1, 0, 0, 0]));
    }

    #[test]
    fn add_rejects_degree_mismatch() {
        assert_eq!(
            p(&[1, 0]).checked_add(&p(&[1, 0, 0])),
            Err(Error::DegreeMismatch { left: 1, right: 2 })
        );
    }

    #[test]
    fn mul_examples() {
        assert_eq!(&p(&[1, -1]) * &p(&[1, 1]), p(&[1, 0, -1]));
        let z = &HomoPoly::x() * &HomoPoly::zero(3);
        assert!(z.is_zero());
        assert_eq!(z.degree(), 4);
        assert_eq!(p(&[1, 1]).pow(2), p(&[1, 2, 1]));
    }

    #[test]
    fn linpow_examples() {
        assert_eq!(lf(1, -1).linpow(2), p(&[1, -2, 1]));
        assert_eq!(lf(1, 1).linpow(0), HomoPoly::one());
        assert_eq!(lf(1, 0).linpow(5), p(&[1, 0, 0, 0, 0, 0]));
    }

    #[test]
    fn rem_examples() {
        assert!(p(&[1, 0, -1]).rem_mod_linpow(&lf(1, -1), 1).is_zero());
        assert_eq!(p(&[1, 0, 0]).rem_mod_linpow(&lf(0, 1), 1), p(&[1, 0, 0]));
        assert!(p(&[1, 0, -1, 0]).rem_mod_linpow(&lf(1, 1), 1).is_zero());
    }

    #[test]
    fn rem_keeps_degree_and_detects_multiplicity() {
        // x^2 (x - y)^3 is divisible by (x - y)^3 but not (x - y)^4.
        let q = &p(&[1, 0, 0]) * &lf(1, -1).linpow(3);
        assert!(q.rem_mod_linpow(&lf(1, -1), 3).is_zero());
        let r = q.rem_mod_linpow(&lf(1, -1), 4);
        assert!(!r.is_zero());
        assert_eq!(r.degree(), 5);
        assert!(q.divisible_by_linpow(&lf(2, -2), 3));
        assert!(!q.divisible_by_linpow(&lf(2, -2), 4));
        assert!(q.divisible_by_linpow(&lf(3, 0), 2));
        assert!(!q.divisible_by_linpow(&lf(3, 0), 3));
    }

    #[test]
    fn rem_of_small_degree_is_self() {
        let q = p(&[1, 2]);
        assert_eq!(q.rem_mod_linpow(&lf(1, 1), 4), q);
        assert_eq!(q.rem_mod_linpow(&lf(1, 1), 0), HomoPoly::zero(1));
    }

    #[test]
    fn subst_examples() {
        assert_eq!(
            p(&[0, 1, 0]).subst_linear(&lf(1, -1), &lf(1, 1)),
            p(&[1, 0, -1])
        );
        assert_eq!(
            p(&[1, 0, 0]).subst_linear(&LinearForm::x(), &LinearForm::y()),
            p(&[1, 0, 0])
        );
        assert_eq!(
            p(&[1, 0, 0, 0]).subst_linear(&lf(1, 1), &lf(1, 0)),
            p(&[1, 3, 3, 1])
        );
    }

    #[test]
    fn zero_form_rejected() {
        assert_eq!(LinearForm::from_ints(0, 0), Err(Error::ZeroLinearForm));
    }

    #[test]
    fn display() {
        let q = HomoPoly::from_coeffs(vec![rat(1, 10), int(0), rat(-1, 6), int(0), int(0), int(0)])
            .unwrap();
        assert_eq!(q.to_string(), "1/10*x^5 - 1/6*x^3*y^2");
        assert_eq!(HomoPoly::zero(3).to_string(), "0");
        assert_eq!(p(&[-1, 0, 2]).to_string(), "-x^2 + 2*y^2");
        assert_eq!(HomoPoly::constant(int(-3)).to_string(), "-3");
        assert_eq!(p(&[0, 1]).to_string(), "y");
    }

    fn arb_poly(max_degree: usize) -> impl Strategy<Value = HomoPoly> {
        (0..=max_degree).prop_flat_map(|d| {
            proptest::collection::vec(-6i64..=6, d + 1).prop_map(|c| HomoPoly::from_i64(&c))
        })
    }

    fn arb_form() -> impl Strategy<Value = LinearForm> {
        (-3i64..=3, -3i64..=3)
            .prop_filter("nonzero", |&(a, b)| a != 0 || b != 0)
            .prop_map(|(a, b)| lf(a, b))
    }

    proptest! {
        #[test]
        fn product_degree_and_commutativity(p in arb_poly(5), q in arb_poly(5)) {
            let pq = &p * &q;
            prop_assert_eq!(pq.degree(), p.degree() + q.degree());
            prop_assert_eq!(pq, &q * &p);
        }

        #[test]
        fn remainder_is_congruent_and_detects_multiples(
            p in arb_poly(7), l in arb_form(), k in 0usize..5,
        ) {
            let r = p.rem_mod_linpow(&l, k);
            prop_assert_eq!(r.degree(), p.degree());
            prop_assert!(p.checked_sub(&r).unwrap().divisible_by_linpow(&l, k));
            prop_assert_eq!(r.is_zero(), p.divisible_by_linpow(&l, k));
            let multiple = &p * &l.linpow(k);
            prop_assert!(multiple.rem_mod_linpow(&l, k).is_zero());
        }

        #[test]
        fn functionals_vanish_exactly_on_multiples(
            p in arb_poly(7), l in arb_form(), k in 0usize..5,
        ) {
            let vanish = |q: &HomoPoly| {
                l.divisibility_functionals(q.degree(), k).iter().all(|row| {
                    row.iter().zip(q.coeffs()).map(|(a, b)| a * b).sum::<Rational>().is_zero()
                })
            };
            prop_assert_eq!(vanish(&p), p.divisible_by_linpow(&l, k));
            prop_assert!(vanish(&(&p * &l.linpow(k))));
        }

        #[test]
        fn substitution_composes(p in arb_poly(5), u in arb_form(), v in arb_form()) {
            // p(u, v) followed by x -> y, y -> x equals p(u∘swap, v∘swap)
            let swapped = |l: &LinearForm| LinearForm::new(l.b().clone(), l.a().clone()).unwrap();
            prop_assert_eq!(
                p.subst_linear(&u, &v).swap_xy(),
                p.subst_linear(&swapped(&u), &swapped(&v))
            );
        }
    }
}
