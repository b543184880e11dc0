//! Explicit derivations for the B2 multiarrangement `x, y, x-y, x+y`.
//!
//! For `m = (m1, m2, m3, m3)` with `m1, m2` odd and `|m| ≡ 0 (mod 4)`, put
//! `d = |m|/2 - 1` and
//!
//! ```text
//! f_m = Σ_{i=0}^{(d-m1)/2} (-1)^i ⟨m1+m2-d⟩_{(d-m1)/2-i} / ((d-m1-2i)!! (d-2i)!! (2i)!!) · x^{d-2i} y^{2i}
//! g_m = Σ_{i=0}^{(d-m2)/2} (-1)^{i+m3} ⟨m1+m2-d⟩_{(d-m2)/2-i} / ((d-m2-2i)!! (d-2i)!! (2i)!!) · x^{2i} y^{d-2i}
//! θ_m = f_m ∂x - g_m ∂y
//! ```
//!
//! where `⟨a⟩_n = a (a+2) ⋯ (a+2(n-1))` is the double Pochhammer symbol. A
//! sum whose upper bound is negative is the zero polynomial of degree `d`.
//!
//! Whenever `2 m_i <= |m| + 2` for all `i`, `θ_m ∈ D(m)`; for balanced `m`
//! the pair `(θ_m, θ_{m + (2,2,0,0)})` is a basis. The remaining functions
//! build bases for further balanced multiplicities out of shifted `θ`s and
//! check the recursion identities relating neighbouring `θ`s.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::arrangement::{
    is_member, negate_y, saito_check, swap_xy, Derivation, ExponentPair, Multiarrangement,
    Multiplicity,
};
use crate::error::{Error, Result};
use crate::poly::{int, HomoPoly, LinearForm, Rational};

/// `n!!` for `n >= -1`, with `(-1)!! = 0!! = 1`.
pub fn double_factorial(n: i64) -> Result<BigInt> {
    if n < -1 {
        return Err(Error::DomainError(n));
    }
    let mut acc = BigInt::one();
    let mut k = n;
    while k > 1 {
        acc *= k;
        k -= 2;
    }
    Ok(acc)
}

/// `⟨a⟩^{(2,n)} = ∏_{i<n} (a + 2i)`
pub fn double_pochhammer(a: i64, n: u32) -> BigInt {
    (0..i64::from(n)).fold(BigInt::one(), |acc, i| acc * (a + 2 * i))
}

fn sign(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

fn is_odd(v: i64) -> bool {
    v.rem_euclid(2) == 1
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct B2Multiplicity {
    pub m1: u32,
    pub m2: u32,
    pub m3: u32,
    pub m4: u32,
}

impl B2Multiplicity {
    pub const fn new(m1: u32, m2: u32, m3: u32, m4: u32) -> Self {
        B2Multiplicity { m1, m2, m3, m4 }
    }

    pub fn from_slice(v: &[u32]) -> Result<Self> {
        match v {
            &[m1, m2, m3, m4] => Ok(Self::new(m1, m2, m3, m4)),
            _ => Err(Error::LengthMismatch {
                expected: 4,
                got: v.len(),
            }),
        }
    }

    pub fn values(&self) -> [u32; 4] {
        [self.m1, self.m2, self.m3, self.m4]
    }

    pub fn total(&self) -> u32 {
        self.m1 + self.m2 + self.m3 + self.m4
    }

    pub fn to_multiplicity(&self) -> Multiplicity {
        Multiplicity::new(self.values().to_vec())
    }

    pub fn is_balanced(&self) -> bool {
        self.to_multiplicity().is_balanced()
    }

    pub fn m1_m2_odd(&self) -> bool {
        self.m1 % 2 == 1 && self.m2 % 2 == 1
    }

    pub fn total_divisible_by_4(&self) -> bool {
        self.total().is_multiple_of(4)
    }

    pub fn symmetric_tail(&self) -> bool {
        self.m3 == self.m4
    }

    /// The parity and congruence conditions under which `θ_m` is defined.
    pub fn theta_admissible(&self) -> bool {
        self.m1_m2_odd() && self.total_divisible_by_4() && self.symmetric_tail()
    }

    /// `2 m_i <= |m| + 2` for all `i`.
    pub fn within_membership_bound(&self) -> bool {
        let t = self.total();
        self.values().iter().all(|&v| 2 * v <= t + 2)
    }

    fn shifted(&self, delta: [i64; 4]) -> [i64; 4] {
        let v = self.values();
        [0, 1, 2, 3].map(|i| i64::from(v[i]) + delta[i])
    }
}

impl fmt::Display for B2Multiplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.m1, self.m2, self.m3, self.m4)
    }
}

/// `x^px y^py · (f_m, g_m)` for `m = (m1, m2, m3, m3)` given with signed
/// entries.
///
/// An entry `-1` in the first (second) position leaves an `x^-1` (`y^-1`)
/// term in `f_m` (`g_m`); shifted multiplicities such as `m + (-1, 1, 0, 0)`
/// in the basis table reach it, always with a prefactor that clears it.
fn components(m1: i64, m2: i64, m3: i64, px: i64, py: i64) -> Result<(HomoPoly, HomoPoly)> {
    if !is_odd(m1) || !is_odd(m2) {
        return Err(Error::HypothesisViolation(format!(
            "m1 = {m1} and m2 = {m2} must both be odd"
        )));
    }
    let total = m1 + m2 + 2 * m3;
    if total.rem_euclid(4) != 0 {
        return Err(Error::HypothesisViolation(format!(
            "|m| = {total} is not divisible by 4"
        )));
    }
    if m1 < -1 || m2 < -1 || m3 < 0 || total < 2 {
        return Err(Error::HypothesisViolation(format!(
            "({m1},{m2},{m3},{m3}) lies outside the range where θ is defined"
        )));
    }
    let d = total / 2 - 1;
    let a = m1 + m2 - d;
    let degree = (d + px + py) as usize;

    // i-th term of a sum: x^(d-2i) y^(2i) in f_m, x^(2i) y^(d-2i) in g_m
    let side = |mi: i64, parity: i64, swap: bool| -> Result<HomoPoly> {
        let mut terms = Vec::new();
        if d >= mi {
            let top = (d - mi) / 2;
            for i in 0..=top {
                let num = double_pochhammer(a, (top - i) as u32);
                let den = double_factorial(d - mi - 2 * i)?
                    * double_factorial(d - 2 * i)?
                    * double_factorial(2 * i)?;
                let c = Rational::new(num * sign(i + parity), den);
                let (xe, ye) = if swap {
                    (2 * i, d - 2 * i)
                } else {
                    (d - 2 * i, 2 * i)
                };
                let (xe, ye) = (xe + px, ye + py);
                if xe < 0 || ye < 0 {
                    return Err(Error::HypothesisViolation(format!(
                        "θ({m1},{m2},{m3},{m3}) needs a further factor of {}",
                        if xe < 0 { "x" } else { "y" }
                    )));
                }
                terms.push((c, xe as usize, ye as usize));
            }
        }
        HomoPoly::from_terms(degree, &terms)
    };
    Ok((side(m1, 0, false)?, side(m2, m3, true)?))
}

fn require_theta_admissible(m: &B2Multiplicity) -> Result<()> {
    if !m.symmetric_tail() {
        return Err(Error::HypothesisViolation(format!(
            "m3 = {} differs from m4 = {}",
            m.m3, m.m4
        )));
    }
    Ok(())
}

/// `f_m`
pub fn f_m(m: &B2Multiplicity) -> Result<HomoPoly> {
    require_theta_admissible(m)?;
    Ok(components(m.m1.into(), m.m2.into(), m.m3.into(), 0, 0)?.0)
}

/// `g_m`; note that `θ_m` carries `-g_m` as its `∂y` coefficient.
pub fn g_m(m: &B2Multiplicity) -> Result<HomoPoly> {
    require_theta_admissible(m)?;
    Ok(components(m.m1.into(), m.m2.into(), m.m3.into(), 0, 0)?.1)
}

/// `θ_{(m1, m2, m3, m3)}` for signed entries.
pub fn theta(m1: i64, m2: i64, m3: i64) -> Result<Derivation> {
    x_power_y_power_theta(0, 0, m1, m2, m3)
}

/// `x^px y^py θ_{(m1, m2, m3, m3)}`, which is polynomial even when `θ` alone
/// is not (see `components`).
pub fn x_power_y_power_theta(px: u32, py: u32, m1: i64, m2: i64, m3: i64) -> Result<Derivation> {
    let (f, g) = components(m1, m2, m3, px.into(), py.into())?;
    Derivation::new(f, -g)
}

pub fn theta_m(m: &B2Multiplicity) -> Result<Derivation> {
    require_theta_admissible(m)?;
    theta(m.m1.into(), m.m2.into(), m.m3.into())
}

fn theta_at(px: u32, py: u32, v: [i64; 4]) -> Result<Derivation> {
    if v[2] != v[3] {
        return Err(Error::Internal(format!(
            "shifted multiplicity {v:?} has unequal tail"
        )));
    }
    x_power_y_power_theta(px, py, v[0], v[1], v[2])
}

fn require_main_hypotheses(m: &B2Multiplicity) -> Result<()> {
    require_theta_admissible(m)?;
    if !m.m1_m2_odd() || !m.total_divisible_by_4() {
        return Err(Error::HypothesisViolation(format!(
            "{m} needs m1, m2 odd and |m| ≡ 0 (mod 4)"
        )));
    }
    if !m.is_balanced() {
        return Err(Error::HypothesisViolation(format!("{m} is not balanced")));
    }
    Ok(())
}

/// `(θ_m, θ_{m+(2,2,0,0)})` with exponents `(|m|/2 - 1, |m|/2 + 1)`.
pub fn main_basis(m: &B2Multiplicity) -> Result<(Derivation, Derivation, ExponentPair)> {
    require_main_hypotheses(m)?;
    let lower = theta_m(m)?;
    let upper = theta_m(&B2Multiplicity::new(m.m1 + 2, m.m2 + 2, m.m3, m.m4))?;
    let half = (m.total() / 2) as usize;
    Ok((lower, upper, ExponentPair::new(half - 1, half + 1)))
}

/// Scalars of a three-term relation `e θ_{m''} = b0 θ_{m'} - d0 q θ_m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecursionScalars {
    pub b0: Rational,
    pub d0: Rational,
    pub e: Rational,
    /// `|m|/2 - 1`
    pub d: u32,
}

fn df_u(n: i64) -> Result<Rational> {
    Ok(Rational::from_integer(double_factorial(n)?))
}

/// Scalars for `e θ_{m''} = b0 θ_{m'} - d0 (x² - y²) θ_m` with
/// `m = (1, m2, m3, m3)`, `m' = (1, m2, m3+2, m3+2)`,
/// `m'' = (1, m2+2, m3+1, m3+1)`.
pub fn lemma_b_scalars(m: &B2Multiplicity) -> Result<RecursionScalars> {
    if m.m1 != 1 {
        return Err(Error::HypothesisViolation(format!("{m} needs m1 = 1")));
    }
    require_main_hypotheses(m)?;
    let d = i64::from(m.total() / 2) - 1;
    let m2 = i64::from(m.m2);
    let s = (d - m2) / 2 + i64::from(m.m3);
    let m2f = df_u(m2)?;
    let b0 = int(sign(s)) / (&m2f * df_u(d - m2)?);
    let d0 = int(sign(s + 1)) / (&m2f * df_u(d + 2 - m2)?);
    let e = int(sign(s + 1) * (m2 - 2 * d - 3)) / (&m2f * df_u(d + 2 - m2)?);
    Ok(RecursionScalars {
        b0,
        d0,
        e,
        d: d as u32,
    })
}

pub fn check_lemma_b(m: &B2Multiplicity) -> Result<bool> {
    let s = lemma_b_scalars(m)?;
    let (m2, m3) = (i64::from(m.m2), i64::from(m.m3));
    let t = theta(1, m2, m3)?;
    let t1 = theta(1, m2, m3 + 2)?;
    let t2 = theta(1, m2 + 2, m3 + 1)?;
    let q = HomoPoly::from_i64(&[1, 0, -1]);
    let lhs = t1.scale(&s.b0).checked_sub(&t.mul_poly(&q).scale(&s.d0))?;
    Ok(lhs == t2.scale(&s.e))
}

/// Scalars for `e θ_{m''} = b0 θ_{m'} - d0 y² θ_m` with
/// `m' = (m1, m2+4, m3, m3)`, `m'' = (m1+2, m2+2, m3, m3)`.
pub fn lemma_d_scalars(m: &B2Multiplicity) -> Result<RecursionScalars> {
    require_main_hypotheses(m)?;
    let d = i64::from(m.total() / 2) - 1;
    let (m1, m2) = (i64::from(m.m1), i64::from(m.m2));
    let s = (d - m1) / 2;
    let m1f = df_u(m1)?;
    let b0 = int(sign(s)) / (&m1f * df_u(d - m1)?);
    let d0 = int(sign(s + 1)) / (&m1f * df_u(d + 2 - m1)?);
    let e = int(sign(s) * (m2 + 2)) / (&m1f * df_u(d + 2 - m1)?);
    Ok(RecursionScalars {
        b0,
        d0,
        e,
        d: d as u32,
    })
}

pub fn check_lemma_d(m: &B2Multiplicity) -> Result<bool> {
    let s = lemma_d_scalars(m)?;
    let (m1, m2, m3) = (i64::from(m.m1), i64::from(m.m2), i64::from(m.m3));
    let t = theta(m1, m2, m3)?;
    let t1 = theta(m1, m2 + 4, m3)?;
    let t2 = theta(m1 + 2, m2 + 2, m3)?;
    let q = HomoPoly::from_i64(&[0, 0, 1]);
    let lhs = t1.scale(&s.b0).checked_sub(&t.mul_poly(&q).scale(&s.d0))?;
    Ok(lhs == t2.scale(&s.e))
}

/// For `m = (1, 1, k, k)` with `k` odd: `θ_m(x - y)` and `θ_m(x + y)` both
/// equal `(-1)^{(k-1)/2} / ((k-1)!! k)` times the k-th power of the form.
pub fn check_lemma_a(k: u32) -> Result<bool> {
    if k.is_multiple_of(2) {
        return Err(Error::HypothesisViolation(format!("{k} is even")));
    }
    let t = theta(1, 1, k.into())?;
    let k = i64::from(k);
    let c = int(sign((k - 1) / 2)) / (df_u(k - 1)? * int(k));
    Ok([(1, -1), (1, 1)].iter().all(|&(a, b)| {
        let l = LinearForm::from_ints(a, b).unwrap();
        t.apply(&l) == l.linpow(k as usize).scale(&c)
    }))
}

/// `α_i` does not divide `θ_m` for any of the four forms.
pub fn check_cor_p(m: &B2Multiplicity) -> Result<bool> {
    require_main_hypotheses(m)?;
    let t = theta_m(m)?;
    Ok(Multiarrangement::b2()
        .forms()
        .iter()
        .all(|l| !t.divisible_by(l)))
}

/// Predicted `e2 - e1` for a balanced `m` with `|m1 - m2| >= |m3 - m4|`.
///
/// The listed cases assume `m3 <= m4`; the other order is reduced to it by
/// `y -> -y`, which exchanges `m3` and `m4`.
pub fn exponent_difference(m: &B2Multiplicity) -> Result<u32> {
    let not_covered = || Error::CaseNotCovered(format!("exponent difference of {m}"));
    if !m.is_balanced() || m.m1.abs_diff(m.m2) < m.m3.abs_diff(m.m4) {
        return Err(not_covered());
    }
    let (m3, m4) = (m.m3.min(m.m4), m.m3.max(m.m4));
    let gap = m4 - m3;
    let odd_pair = m.m1_m2_odd();
    if m.total().is_multiple_of(2) {
        if gap == 0 && odd_pair && m.total().is_multiple_of(4) {
            Ok(2)
        } else if gap == 0 || gap == 1 || (gap == 2 && odd_pair) {
            Ok(0)
        } else {
            Err(not_covered())
        }
    } else if gap <= 2 || (gap == 3 && odd_pair) {
        Ok(1)
    } else {
        Err(not_covered())
    }
}

/// Entries of the explicit basis table, by the label used in its
/// statement: tail gap `m4 - m3` (1, 2, 3 for gap 0, 1, 2), then `|m| mod 4`
/// (a, b, c, d for 0, 1, 2, 3), then the parity sub-case.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum CorQCase {
    C1ai,
    C1aii,
    C1bi,
    C1ci,
    C1cii,
    C1di,
    C2ai,
    C2bi,
    C2ci,
    C2di,
    C3ai,
}

impl CorQCase {
    pub fn label(&self) -> &'static str {
        match self {
            CorQCase::C1ai => "1(a)i",
            CorQCase::C1aii => "1(a)ii",
            CorQCase::C1bi => "1(b)i",
            CorQCase::C1ci => "1(c)i",
            CorQCase::C1cii => "1(c)ii",
            CorQCase::C1di => "1(d)i",
            CorQCase::C2ai => "2(a)i",
            CorQCase::C2bi => "2(b)i",
            CorQCase::C2ci => "2(c)i",
            CorQCase::C2di => "2(d)i",
            CorQCase::C3ai => "3(a)i",
        }
    }

    /// Matches a multiplicity already in normal position.
    fn classify(n: &B2Multiplicity) -> Option<CorQCase> {
        if n.m4 < n.m3 {
            return None;
        }
        let odd = |v: u32| v % 2 == 1;
        let both_odd = odd(n.m1) && odd(n.m2);
        let both_even = !odd(n.m1) && !odd(n.m2);
        let even_odd = !odd(n.m1) && odd(n.m2);
        let case = match (n.m4 - n.m3, n.total() % 4) {
            (0, 0) if both_odd => CorQCase::C1ai,
            (0, 0) if both_even => CorQCase::C1aii,
            (0, 1) if even_odd => CorQCase::C1bi,
            (0, 2) if both_odd => CorQCase::C1ci,
            (0, 2) if both_even => CorQCase::C1cii,
            (0, 3) if even_odd => CorQCase::C1di,
            (1, 0) if even_odd => CorQCase::C2ai,
            (1, 1) if both_odd => CorQCase::C2bi,
            (1, 2) if even_odd => CorQCase::C2ci,
            (1, 3) if both_odd => CorQCase::C2di,
            (2, 2) if both_odd => CorQCase::C3ai,
            _ => return None,
        };
        Some(case)
    }

    /// The displayed pair for `n` in normal position.
    fn build(&self, n: &B2Multiplicity) -> Result<(Derivation, Derivation)> {
        let xpy = HomoPoly::from_i64(&[1, 1]);
        let xmy = HomoPoly::from_i64(&[1, -1]);
        let th = |delta: [i64; 4]| theta_at(0, 0, n.shifted(delta));
        let xth = |delta: [i64; 4]| theta_at(1, 0, n.shifted(delta));
        let yth = |delta: [i64; 4]| theta_at(0, 1, n.shifted(delta));
        let xyth = |delta: [i64; 4]| theta_at(1, 1, n.shifted(delta));
        let pair = match self {
            CorQCase::C1ai => (th([0, 0, 0, 0])?, th([2, 2, 0, 0])?),
            CorQCase::C1aii => (xth([-1, 1, 0, 0])?, yth([1, -1, 0, 0])?),
            CorQCase::C1bi => (xth([-1, 0, 0, 0])?, th([1, 0, 1, 1])?),
            CorQCase::C1ci => (th([2, 0, 0, 0])?, th([0, 2, 0, 0])?),
            CorQCase::C1cii => (th([1, 1, 0, 0])?, xyth([-1, -1, 0, 0])?),
            CorQCase::C1di => (th([1, 0, 0, 0])?, xth([-1, 0, 1, 1])?),
            CorQCase::C2ai => (xth([-1, 0, 1, 0])?, th([1, 0, 0, -1])?.mul_poly(&xpy)),
            CorQCase::C2bi => (th([0, 0, 0, -1])?.mul_poly(&xpy), th([2, 0, 1, 0])?),
            CorQCase::C2ci => (th([1, 0, 1, 0])?, xth([-1, 0, 0, -1])?.mul_poly(&xpy)),
            CorQCase::C2di => (
                th([0, 0, 1, 0])?,
                th([0, 0, -1, -2])?.mul_poly(&(&xmy * &xpy.pow(2))),
            ),
            CorQCase::C3ai => (th([0, 0, 2, 0])?, th([0, 0, 0, -2])?.mul_poly(&xpy.pow(2))),
        };
        Ok(pair)
    }
}

impl fmt::Display for CorQCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Composition of `x <-> y` (exchanging `m1, m2`) and `y -> -y`
/// (exchanging `m3, m4`); both are symmetries of the B2 arrangement.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct B2Symmetry {
    pub swap_xy: bool,
    pub negate_y: bool,
}

impl B2Symmetry {
    pub const ALL: [B2Symmetry; 4] = [
        B2Symmetry {
            swap_xy: false,
            negate_y: false,
        },
        B2Symmetry {
            swap_xy: true,
            negate_y: false,
        },
        B2Symmetry {
            swap_xy: false,
            negate_y: true,
        },
        B2Symmetry {
            swap_xy: true,
            negate_y: true,
        },
    ];

    pub fn act(&self, m: &B2Multiplicity) -> B2Multiplicity {
        let mut v = m.values();
        if self.swap_xy {
            v.swap(0, 1);
        }
        if self.negate_y {
            v.swap(2, 3);
        }
        B2Multiplicity::new(v[0], v[1], v[2], v[3])
    }

    /// Sends `D(self.act(m))` onto `D(m)`.
    pub fn transport(&self, theta: &Derivation) -> Result<Derivation> {
        let mut t = theta.clone();
        if self.swap_xy {
            let (u, v) = swap_xy();
            t = t.change_coordinates(&u, &v)?;
        }
        if self.negate_y {
            let (u, v) = negate_y();
            t = t.change_coordinates(&u, &v)?;
        }
        Ok(t)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QBasis {
    pub case: CorQCase,
    pub symmetry: B2Symmetry,
    pub first: Derivation,
    pub second: Derivation,
}

impl QBasis {
    pub fn exponents(&self) -> ExponentPair {
        ExponentPair::new(self.first.degree(), self.second.degree())
    }
}

/// Explicit basis of `D(m)` for balanced `m` covered by the table.
///
/// `m` is moved into normal position by the first symmetry (identity,
/// `x<->y`, `y->-y`, both) under which a listed case applies; the pair built
/// there is carried back to `D(m)`.
pub fn cor_q_basis(m: &B2Multiplicity) -> Result<QBasis> {
    if !m.is_balanced() {
        return Err(Error::HypothesisViolation(format!("{m} is not balanced")));
    }
    for sym in B2Symmetry::ALL {
        let n = sym.act(m);
        if let Some(case) = CorQCase::classify(&n) {
            // 2(d)i with m3 = 0 would need θ with tail -1
            let (a, b) = case.build(&n).map_err(|e| match e {
                Error::HypothesisViolation(why) => {
                    Error::CaseNotCovered(format!("entry {case} degenerates for {m}: {why}"))
                }
                e => e,
            })?;
            return Ok(QBasis {
                case,
                symmetry: sym,
                first: sym.transport(&a)?,
                second: sym.transport(&b)?,
            });
        }
    }
    Err(Error::CaseNotCovered(format!(
        "no basis-table entry for {m}"
    )))
}

/// Membership of `θ_m` in `D(m)` on B2.
pub fn theta_is_member(m: &B2Multiplicity) -> Result<bool> {
    is_member(&theta_m(m)?, &Multiarrangement::b2(), &m.to_multiplicity())
}

/// Saito's criterion for a pair on B2.
pub fn b2_saito(a: &Derivation, b: &Derivation, m: &B2Multiplicity) -> Result<bool> {
    saito_check(a, b, &Multiarrangement::b2(), &m.to_multiplicity())
}
