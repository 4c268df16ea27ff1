//! JSON documents exchanged with the command line.
//!
//! Cocycle:
//! `{ "m": 2, "theta": [[{"re":0,"im":0}, …], …], "beta": { "2,0": {"re":1,"im":0} } }`
//!
//! Gauge cochain: `{ "m": 2, "beta": { … } }`
//!
//! Mode field:
//! `{ "m": 2, "modes": [ {"freq": ["1/2", "0/1"], "coeff": {"re":1,"im":0}} ] }`

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cocycle::{BlackBoxCocycle, ComplexMatrix, StarCocycle};
use crate::equivalence::GaugeCochain;
use crate::error::{Error, Result};
use crate::modefield::ModeField;
use crate::momentum::MomentumVector;
use crate::polynomial::{format_multi_index, parse_multi_index, Polynomial};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for ComplexJson {
    /// Negative zeros are written as `0.0`.
    fn from(c: Complex64) -> Self {
        ComplexJson {
            re: c.re + 0.0,
            im: c.im + 0.0,
        }
    }
}

impl From<ComplexJson> for Complex64 {
    fn from(c: ComplexJson) -> Self {
        Complex64::new(c.re, c.im)
    }
}

pub fn matrix_to_json(m: &ComplexMatrix) -> Vec<Vec<ComplexJson>> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| m[(i, j)].into()).collect())
        .collect()
}

fn matrix_from_json(m: usize, rows: &[Vec<ComplexJson>]) -> Result<ComplexMatrix> {
    if rows.len() != m || rows.iter().any(|r| r.len() != m) {
        return Err(Error::Parse(format!("theta must be a {m}×{m} matrix")));
    }
    Ok(ComplexMatrix::from_fn(m, m, |i, j| rows[i][j].into()))
}

fn beta_to_json(beta: &Polynomial) -> BTreeMap<String, ComplexJson> {
    beta.terms()
        .map(|(k, c)| (format_multi_index(k), (*c).into()))
        .collect()
}

fn beta_from_json(m: usize, terms: &BTreeMap<String, ComplexJson>) -> Result<Polynomial> {
    let mut poly = Polynomial::zero(m);
    for (key, c) in terms {
        let index = parse_multi_index(key)?;
        if index.len() != m {
            return Err(Error::Parse(format!(
                "multi-index {key:?} has {} entries, expected {m}",
                index.len()
            )));
        }
        poly.add_term(index, (*c).into())
            .map_err(|e| Error::Parse(e.to_string()))?;
    }
    Ok(poly)
}

fn from_str<'a, T: Deserialize<'a>>(text: &'a str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CocycleDoc {
    pub m: usize,
    pub theta: Vec<Vec<ComplexJson>>,
    #[serde(default)]
    pub beta: BTreeMap<String, ComplexJson>,
}

impl CocycleDoc {
    pub fn parse(text: &str) -> Result<Self> {
        from_str(text)
    }

    pub fn from_cocycle(c: &StarCocycle) -> Self {
        CocycleDoc {
            m: c.dimension(),
            theta: matrix_to_json(c.theta()),
            beta: beta_to_json(c.beta()),
        }
    }

    /// Shape-checked `(Θ, β)` without the algebraic validation.
    pub fn parts(&self) -> Result<(ComplexMatrix, Polynomial)> {
        Ok((
            matrix_from_json(self.m, &self.theta)?,
            beta_from_json(self.m, &self.beta)?,
        ))
    }

    /// Shape errors are [`Error::Parse`]; failed antisymmetry, constant-term
    /// or degree checks are [`Error::Validation`].
    pub fn to_cocycle(&self) -> Result<StarCocycle> {
        let (theta, beta) = self.parts()?;
        StarCocycle::new(theta, beta)
    }

    /// The formula `pᵀΘq + β(q) − β(p) + β(p−q)` as an unvalidated evaluator,
    /// for reporting residuals of documents that fail validation.
    pub fn to_black_box(&self) -> Result<BlackBoxCocycle> {
        let (theta, beta) = self.parts()?;
        Ok(BlackBoxCocycle::new(self.m, move |p, q| {
            let (pf, qf) = (p.to_f64(), q.to_f64());
            let mut acc = beta.eval(q) - beta.eval(p) + beta.eval(&(p - q));
            for (i, pi) in pf.iter().enumerate() {
                for (j, qj) in qf.iter().enumerate() {
                    acc += theta[(i, j)] * (pi * qj);
                }
            }
            acc
        }))
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GaugeDoc {
    pub m: usize,
    #[serde(default)]
    pub beta: BTreeMap<String, ComplexJson>,
}

impl GaugeDoc {
    pub fn parse(text: &str) -> Result<Self> {
        from_str(text)
    }

    pub fn from_gauge(g: &GaugeCochain) -> Self {
        GaugeDoc {
            m: g.dimension(),
            beta: beta_to_json(g.polynomial()),
        }
    }

    pub fn to_gauge(&self) -> Result<GaugeCochain> {
        GaugeCochain::new(beta_from_json(self.m, &self.beta)?)
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModeDoc {
    pub freq: MomentumVector,
    pub coeff: ComplexJson,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldDoc {
    pub m: usize,
    pub modes: Vec<ModeDoc>,
}

impl FieldDoc {
    pub fn parse(text: &str) -> Result<Self> {
        from_str(text)
    }

    /// Modes in ascending frequency order.
    pub fn from_field(f: &ModeField) -> Self {
        FieldDoc {
            m: f.dimension(),
            modes: f
                .modes()
                .map(|(p, c)| ModeDoc {
                    freq: p.clone(),
                    coeff: (*c).into(),
                })
                .collect(),
        }
    }

    pub fn to_field(&self) -> Result<ModeField> {
        ModeField::from_modes(
            self.m,
            self.modes.iter().map(|d| (d.freq.clone(), d.coeff.into())),
        )
        .map_err(|e| match e {
            Error::Dimension { expected, found } => Error::Parse(format!(
                "frequency has {found} components, field dimension is {expected}"
            )),
            other => other,
        })
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }
}
