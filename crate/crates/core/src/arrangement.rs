//! Rank-2 multiarrangements and homogeneous derivations.
//!
//! A derivation `f ∂x + g ∂y` belongs to `D(A, m)` when, for every form
//! `α_i` of the arrangement, `α_i^{m_i}` divides `θ(α_i) = a_i f + b_i g`.
//! Zero multiplicities impose no condition, so sub-arrangements (and the
//! three-line A2 arrangement) share this one type.

use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::oracle;
use crate::poly::{HomoPoly, LinearForm, Rational};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Derivation {
    f: HomoPoly,
    g: HomoPoly,
}

impl Derivation {
    pub fn new(f: HomoPoly, g: HomoPoly) -> Result<Self> {
        if f.degree() != g.degree() {
            return Err(Error::DegreeMismatch {
                left: f.degree(),
                right: g.degree(),
            });
        }
        Ok(Derivation { f, g })
    }

    pub fn zero(degree: usize) -> Self {
        Derivation {
            f: HomoPoly::zero(degree),
            g: HomoPoly::zero(degree),
        }
    }

    /// `x ∂x + y ∂y`
    pub fn euler() -> Self {
        Derivation {
            f: HomoPoly::x(),
            g: HomoPoly::y(),
        }
    }

    pub fn dx() -> Self {
        Derivation {
            f: HomoPoly::one(),
            g: HomoPoly::zero(0),
        }
    }

    pub fn dy() -> Self {
        Derivation {
            f: HomoPoly::zero(0),
            g: HomoPoly::one(),
        }
    }

    /// Coefficient of `∂x`.
    pub fn f(&self) -> &HomoPoly {
        &self.f
    }

    /// Coefficient of `∂y`.
    pub fn g(&self) -> &HomoPoly {
        &self.g
    }

    pub fn degree(&self) -> usize {
        self.f.degree()
    }

    pub fn is_zero(&self) -> bool {
        self.f.is_zero() && self.g.is_zero()
    }

    /// `θ(l) = a f + b g` for `l = a x + b y`.
    pub fn apply(&self, l: &LinearForm) -> HomoPoly {
        self.f
            .scale(l.a())
            .checked_add(&self.g.scale(l.b()))
            .expect("components share a degree")
    }

    pub fn scale(&self, c: &Rational) -> Derivation {
        Derivation {
            f: self.f.scale(c),
            g: self.g.scale(c),
        }
    }

    /// `p · θ`
    pub fn mul_poly(&self, p: &HomoPoly) -> Derivation {
        Derivation {
            f: p * &self.f,
            g: p * &self.g,
        }
    }

    pub fn checked_add(&self, other: &Derivation) -> Result<Derivation> {
        Ok(Derivation {
            f: self.f.checked_add(&other.f)?,
            g: self.g.checked_add(&other.g)?,
        })
    }

    pub fn checked_sub(&self, other: &Derivation) -> Result<Derivation> {
        Ok(Derivation {
            f: self.f.checked_sub(&other.f)?,
            g: self.g.checked_sub(&other.g)?,
        })
    }

    /// Coefficient determinant `f1 g2 - f2 g1`.
    pub fn det(&self, other: &Derivation) -> HomoPoly {
        (&self.f * &other.g)
            .checked_sub(&(&other.f * &self.g))
            .expect("products share a degree")
    }

    /// True iff `l` divides both coefficients.
    pub fn divisible_by(&self, l: &LinearForm) -> bool {
        self.f.divisible_by_linpow(l, 1) && self.g.divisible_by_linpow(l, 1)
    }

    /// Transports the derivation along the linear substitution
    /// `(x, y) -> (u, v)`.
    ///
    /// The result `θ'` satisfies `θ'(l ∘ L) = θ(l) ∘ L` for every linear form
    /// `l`, where `L` is the substitution. Consequently, if `θ ∈ D(A, m)` then
    /// `θ' ∈ D(A ∘ L, m)`.
    pub fn change_coordinates(&self, u: &LinearForm, v: &LinearForm) -> Result<Derivation> {
        let det = u.a() * v.b() - u.b() * v.a();
        if det.is_zero() {
            return Err(Error::SingularSubstitution);
        }
        let fl = self.f.subst_linear(u, v);
        let gl = self.g.subst_linear(u, v);
        // [u.a u.b; v.a v.b] [f'; g'] = [f∘L; g∘L]
        let inv = det.recip();
        let f = fl
            .scale(&(v.b() * &inv))
            .checked_sub(&gl.scale(&(u.b() * &inv)))?;
        let g = gl
            .scale(&(u.a() * &inv))
            .checked_sub(&fl.scale(&(v.a() * &inv)))?;
        Ok(Derivation { f, g })
    }

    /// Coefficient vector `(f coeffs, g coeffs)`.
    pub fn to_vector(&self) -> Vec<Rational> {
        self.f
            .coeffs()
            .iter()
            .chain(self.g.coeffs())
            .cloned()
            .collect()
    }

    pub fn from_vector(degree: usize, v: &[Rational]) -> Result<Derivation> {
        if v.len() != 2 * (degree + 1) {
            return Err(Error::Internal(format!(
                "coefficient vector of length {} for degree {degree}",
                v.len()
            )));
        }
        let (f, g) = v.split_at(degree + 1);
        Ok(Derivation {
            f: HomoPoly::from_coeffs(f.to_vec()).expect("nonempty"),
            g: HomoPoly::from_coeffs(g.to_vec()).expect("nonempty"),
        })
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "({})∂x + ({})∂y", self.f, self.g)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Multiarrangement {
    forms: Vec<LinearForm>,
}

impl Multiarrangement {
    pub fn new(forms: Vec<LinearForm>) -> Result<Self> {
        for i in 0..forms.len() {
            for j in i + 1..forms.len() {
                if forms[i].is_proportional(&forms[j]) {
                    return Err(Error::ProportionalForms {
                        first: i,
                        second: j,
                    });
                }
            }
        }
        Ok(Multiarrangement { forms })
    }

    /// `x, y, x - y, x + y`
    pub fn b2() -> Self {
        Multiarrangement {
            forms: vec![
                LinearForm::x(),
                LinearForm::y(),
                LinearForm::from_ints(1, -1).unwrap(),
                LinearForm::from_ints(1, 1).unwrap(),
            ],
        }
    }

    /// `x, y, x + y`
    pub fn a2() -> Self {
        Multiarrangement {
            forms: vec![
                LinearForm::x(),
                LinearForm::y(),
                LinearForm::from_ints(1, 1).unwrap(),
            ],
        }
    }

    pub fn forms(&self) -> &[LinearForm] {
        &self.forms
    }

    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }

    /// `∏ α_i^{m_i}`
    pub fn defining_power(&self, m: &Multiplicity) -> Result<HomoPoly> {
        self.check_len(m)?;
        Ok(self
            .forms
            .iter()
            .zip(m.values())
            .fold(HomoPoly::one(), |acc, (l, &k)| &acc * &l.linpow(k as usize)))
    }

    fn check_len(&self, m: &Multiplicity) -> Result<()> {
        if m.len() != self.forms.len() {
            return Err(Error::LengthMismatch {
                expected: self.forms.len(),
                got: m.len(),
            });
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Multiplicity(Vec<u32>);

impl Multiplicity {
    pub fn new(values: Vec<u32>) -> Self {
        Multiplicity(values)
    }

    pub fn values(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `|m|`
    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `2 m_i <= |m| - 1` for every `i`.
    pub fn is_balanced(&self) -> bool {
        let total = i64::from(self.total());
        self.0.iter().all(|&v| 2 * i64::from(v) < total)
    }

    /// Index of the first maximal entry.
    pub fn argmax(&self) -> Option<usize> {
        let max = *self.0.iter().max()?;
        self.0.iter().position(|&v| v == max)
    }
}

impl From<Vec<u32>> for Multiplicity {
    fn from(v: Vec<u32>) -> Self {
        Multiplicity(v)
    }
}

impl fmt::Display for Multiplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Degrees of a homogeneous basis, `e1 <= e2`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct ExponentPair {
    pub e1: usize,
    pub e2: usize,
}

impl ExponentPair {
    pub fn new(a: usize, b: usize) -> Self {
        ExponentPair {
            e1: a.min(b),
            e2: a.max(b),
        }
    }

    pub fn difference(&self) -> usize {
        self.e2 - self.e1
    }
}

impl fmt::Display for ExponentPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.e1, self.e2)
    }
}

pub fn is_member(theta: &Derivation, arr: &Multiarrangement, m: &Multiplicity) -> Result<bool> {
    arr.check_len(m)?;
    Ok(arr
        .forms
        .iter()
        .zip(m.values())
        .all(|(l, &k)| theta.apply(l).divisible_by_linpow(l, k as usize)))
}

/// Saito's criterion for two members of `D(A, m)`: the degrees sum to `|m|`
/// and the coefficient determinant does not vanish.
pub fn saito_check(
    theta1: &Derivation,
    theta2: &Derivation,
    arr: &Multiarrangement,
    m: &Multiplicity,
) -> Result<bool> {
    for (which, theta) in [(1, theta1), (2, theta2)] {
        if !is_member(theta, arr, m)? {
            return Err(Error::NotMember { which });
        }
    }
    if theta1.degree() + theta2.degree() != m.total() as usize {
        return Ok(false);
    }
    Ok(!theta1.det(theta2).is_zero())
}

/// Basis of `D(A, m)` for a non-balanced multiplicity.
///
/// With `k` the index of a maximal multiplicity, the lower generator is
/// `∏_{i≠k} α_i^{m_i}` times the constant derivation along the line
/// `α_k = 0`, normalised so its first nonzero component is positive. For
/// `k = 2` on B2 this is exactly `α_1^{m_1} α_3^{m_3} α_4^{m_4} ∂x`. The
/// upper generator, of degree `m_k`, comes from the oracle.
pub fn non_balanced_basis(
    arr: &Multiarrangement,
    m: &Multiplicity,
) -> Result<(Derivation, Derivation, ExponentPair)> {
    arr.check_len(m)?;
    if m.is_balanced() {
        return Err(Error::BalancedInput);
    }
    let k = m.argmax().ok_or(Error::BalancedInput)?;
    let lower = non_balanced_lower(arr, m, k);
    let mk = m.values()[k] as usize;
    let total = m.total() as usize;
    let exps = ExponentPair::new(total - mk, mk);
    let upper = oracle::complement_element(arr, m, &lower, mk)?;
    Ok((lower, upper, exps))
}

fn non_balanced_lower(arr: &Multiarrangement, m: &Multiplicity, k: usize) -> Derivation {
    let mut coeff = HomoPoly::one();
    for (i, (l, &mi)) in arr.forms().iter().zip(m.values()).enumerate() {
        if i != k {
            coeff = &coeff * &l.linpow(mi as usize);
        }
    }
    let lk = &arr.forms()[k];
    // direction (b, -a) lies on the line a x + b y = 0
    let (mut c1, mut c2) = (lk.b().clone(), -lk.a());
    let lead = if c1.is_zero() { c2.clone() } else { c1.clone() };
    if lead.is_negative() {
        c1 = -c1;
        c2 = -c2;
    }
    let norm = lead.abs();
    c1 /= &norm;
    c2 /= &norm;
    Derivation {
        f: coeff.scale(&c1),
        g: coeff.scale(&c2),
    }
}

/// `(x, y) -> (y, x)`; exchanges `m1` and `m2` on B2.
pub fn swap_xy() -> (LinearForm, LinearForm) {
    (LinearForm::y(), LinearForm::x())
}

/// `(x, y) -> (x, -y)`; exchanges `m3` and `m4` on B2.
pub fn negate_y() -> (LinearForm, LinearForm) {
    (LinearForm::x(), LinearForm::from_ints(0, -1).unwrap())
}

/// Checks `c · ∏ α_i^{m_i} = det` for some nonzero rational `c` and returns it.
pub fn determinant_ratio(
    theta1: &Derivation,
    theta2: &Derivation,
    arr: &Multiarrangement,
    m: &Multiplicity,
) -> Result<Option<Rational>> {
    let det = theta1.det(theta2);
    let q = arr.defining_power(m)?;
    if det.degree() != q.degree() || det.is_zero() {
        return Ok(None);
    }
    let Some(i) = q.coeffs().iter().position(|c| !c.is_zero()) else {
        return Ok(None);
    };
    let c = det.coeff(i) / q.coeff(i);
    Ok((q.scale(&c) == det).then_some(c))
}
