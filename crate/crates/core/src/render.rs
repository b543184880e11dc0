//! Text, LaTeX and JSON forms of derivations and basis records.
//!
//! JSON derivations are `{"degree": d, "f": [[c, xe, ye], ...], "g": [...]}`
//! with `c` a string `p/q` (or `p` for integers) and only nonzero terms
//! listed, so that parsing reproduces the derivation exactly.

use std::fmt::Write;
use std::str::FromStr;

use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::arrangement::{Derivation, ExponentPair};
use crate::error::{Error, Result};
use crate::poly::{HomoPoly, Rational};

fn latex_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("\\frac{{{}}}{{{}}}", c.numer(), c.denom())
    }
}

/// `\frac{1}{10} \, x^{5} - \frac{1}{6} \, x^{3} y^{2}`
pub fn latex_poly(p: &HomoPoly) -> String {
    let mut out = String::new();
    for (c, xe, ye) in p.terms() {
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        let mag = c.abs();
        let mut vars = Vec::new();
        for (v, e) in [("x", xe), ("y", ye)] {
            match e {
                0 => {}
                1 => vars.push(v.to_string()),
                _ => vars.push(format!("{v}^{{{e}}}")),
            }
        }
        let vars = vars.join(" ");
        match (mag.is_one(), vars.is_empty()) {
            (true, false) => out.push_str(&vars),
            (_, true) => out.push_str(&latex_rational(&mag)),
            (false, false) => {
                let _ = write!(out, "{} \\, {vars}", latex_rational(&mag));
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// `\left(f\right)\partial_x+\left(g\right)\partial_y`
pub fn latex_derivation(theta: &Derivation) -> String {
    format!(
        "\\left({}\\right)\\partial_x+\\left({}\\right)\\partial_y",
        latex_poly(theta.f()),
        latex_poly(theta.g())
    )
}

pub type Term = (String, usize, usize);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivationJson {
    pub degree: usize,
    pub f: Vec<Term>,
    pub g: Vec<Term>,
}

fn terms_json(p: &HomoPoly) -> Vec<Term> {
    p.terms()
        .map(|(c, xe, ye)| (c.to_string(), xe, ye))
        .collect()
}

fn poly_from_json(degree: usize, terms: &[Term]) -> Result<HomoPoly> {
    let parsed = terms
        .iter()
        .map(|(c, xe, ye)| {
            Rational::from_str(c)
                .map(|c| (c, *xe, *ye))
                .map_err(|_| Error::Parse(format!("coefficient {c:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    HomoPoly::from_terms(degree, &parsed)
}

impl From<&Derivation> for DerivationJson {
    fn from(theta: &Derivation) -> Self {
        DerivationJson {
            degree: theta.degree(),
            f: terms_json(theta.f()),
            g: terms_json(theta.g()),
        }
    }
}

impl DerivationJson {
    pub fn to_derivation(&self) -> Result<Derivation> {
        Derivation::new(
            poly_from_json(self.degree, &self.f)?,
            poly_from_json(self.degree, &self.g)?,
        )
    }
}

pub fn derivation_to_json(theta: &Derivation) -> String {
    serde_json::to_string(&DerivationJson::from(theta)).expect("plain data serializes")
}

pub fn derivation_from_json(s: &str) -> Result<Derivation> {
    serde_json::from_str::<DerivationJson>(s)
        .map_err(|e| Error::Parse(e.to_string()))?
        .to_derivation()
}

/// Which construction produced a basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    ClosedForm { case: String },
    Oracle,
    NonBalanced,
}

impl std::fmt::Display for Provenance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Provenance::ClosedForm { case } => write!(f, "closed form {case}"),
            Provenance::Oracle => f.write_str("oracle"),
            Provenance::NonBalanced => f.write_str("non-balanced"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub arrangement: Vec<(String, String)>,
    pub multiplicity: Vec<u32>,
    pub exponents: (usize, usize),
    pub basis: [DerivationJson; 2],
    pub provenance: Provenance,
}

impl OutputRecord {
    pub fn new(
        arrangement: &crate::arrangement::Multiarrangement,
        multiplicity: &crate::arrangement::Multiplicity,
        exponents: ExponentPair,
        basis: [&Derivation; 2],
        provenance: Provenance,
    ) -> Self {
        OutputRecord {
            arrangement: arrangement
                .forms()
                .iter()
                .map(|l| (l.a().to_string(), l.b().to_string()))
                .collect(),
            multiplicity: multiplicity.values().to_vec(),
            exponents: (exponents.e1, exponents.e2),
            basis: basis.map(DerivationJson::from),
            provenance,
        }
    }

    pub fn derivations(&self) -> Result<[Derivation; 2]> {
        Ok([
            self.basis[0].to_derivation()?,
            self.basis[1].to_derivation()?,
        ])
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_latex(&self) -> Result<String> {
        let [a, b] = self.derivations()?;
        Ok(format!(
            "\\theta_1 = {}\n\\theta_2 = {}\n",
            latex_derivation(&a),
            latex_derivation(&b)
        ))
    }

    pub fn to_text(&self) -> Result<String> {
        let [a, b] = self.derivations()?;
        let m: Vec<String> = self.multiplicity.iter().map(u32::to_string).collect();
        Ok(format!(
            "m = ({})\nexponents = ({}, {})\nprovenance = {}\ntheta1 = {a}\ntheta2 = {b}\n",
            m.join(","),
            self.exponents.0,
            self.exponents.1,
            self.provenance
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{Multiarrangement, Multiplicity};
    use crate::closedform::{theta_m, B2Multiplicity};
    use crate::poly::rat;
    use proptest::prelude::*;

    #[test]
    fn latex_theta_3522() {
        let t = theta_m(&B2Multiplicity::new(3, 5, 2, 2)).unwrap();
        assert_eq!(
            latex_derivation(&t),
            "\\left(\\frac{1}{10} \\, x^{5} - \\frac{1}{6} \\, x^{3} y^{2}\\right)\\partial_x\
             +\\left(-\\frac{1}{15} \\, y^{5}\\right)\\partial_y"
        );
    }

    #[test]
    fn latex_small_coefficients() {
        assert_eq!(
            latex_poly(&HomoPoly::from_i64(&[-1, 0, 2])),
            "-x^{2} + 2 \\, y^{2}"
        );
        assert_eq!(latex_poly(&HomoPoly::zero(3)), "0");
        assert_eq!(latex_poly(&HomoPoly::constant(rat(-3, 4))), "-\\frac{3}{4}");
        assert_eq!(latex_poly(&HomoPoly::from_i64(&[0, 1])), "y");
    }

    #[test]
    fn json_euler() {
        assert_eq!(
            derivation_to_json(&Derivation::euler()),
            r#"{"degree":1,"f":[["1",1,0]],"g":[["1",0,1]]}"#
        );
    }

    #[test]
    fn json_zero() {
        let s = derivation_to_json(&Derivation::zero(2));
        assert_eq!(s, r#"{"degree":2,"f":[],"g":[]}"#);
        assert_eq!(derivation_from_json(&s).unwrap(), Derivation::zero(2));
    }

    #[test]
    fn json_rejects_garbage() {
        assert!(matches!(
            derivation_from_json(r#"{"degree":1,"f":[["1/0",1,0]],"g":[]}"#),
            Err(Error::Parse(_))
        ));
        assert!(derivation_from_json(r#"{"degree":1,"f":[["1",2,0]],"g":[]}"#).is_err());
        assert!(matches!(derivation_from_json("[]"), Err(Error::Parse(_))));
    }

    #[test]
    fn record_round_trip() {
        let t = theta_m(&B2Multiplicity::new(3, 5, 2, 2)).unwrap();
        let rec = OutputRecord::new(
            &Multiarrangement::b2(),
            &Multiplicity::new(vec![3, 5, 2, 2]),
            ExponentPair::new(5, 7),
            [&t, &Derivation::euler()],
            Provenance::ClosedForm {
                case: "main".into(),
            },
        );
        let back = OutputRecord::from_json(&rec.to_json()).unwrap();
        assert_eq!(back, rec);
        assert_eq!(back.derivations().unwrap()[0], t);
        assert!(rec.to_json().contains(r#""kind": "closed_form""#));
    }

    fn arb_derivation() -> impl Strategy<Value = Derivation> {
        (0usize..6).prop_flat_map(|d| {
            let coeffs = proptest::collection::vec((-50i64..50, 1i64..30), d + 1);
            (coeffs.clone(), coeffs).prop_map(|(f, g)| {
                let poly = |cs: Vec<(i64, i64)>| {
                    HomoPoly::from_coeffs(cs.into_iter().map(|(n, d)| rat(n, d)).collect()).unwrap()
                };
                Derivation::new(poly(f), poly(g)).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn json_round_trip(t in arb_derivation()) {
            prop_assert_eq!(derivation_from_json(&derivation_to_json(&t)).unwrap(), t);
        }
    }
}
