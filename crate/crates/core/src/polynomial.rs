//! Multivariate polynomials with complex coefficients, used for the 1-cochains
//! β of coboundary parts and gauge transforms.

use std::collections::BTreeMap;
use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::momentum::MomentumVector;

/// Exponent vector; `[2, 0]` is `p₁²`.
pub type MultiIndex = Vec<u32>;

#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    dimension: usize,
    terms: BTreeMap<MultiIndex, Complex64>,
}

impl Polynomial {
    pub fn zero(dimension: usize) -> Self {
        Polynomial {
            dimension,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms<I>(dimension: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MultiIndex, Complex64)>,
    {
        let mut poly = Polynomial::zero(dimension);
        for (index, coeff) in terms {
            poly.add_term(index, coeff)?;
        }
        Ok(poly)
    }

    pub fn add_term(&mut self, index: MultiIndex, coeff: Complex64) -> Result<()> {
        Error::check_dim(self.dimension, index.len())?;
        if !(coeff.re.is_finite() && coeff.im.is_finite()) {
            return Err(Error::Input(format!("non-finite coefficient at {index:?}")));
        }
        let entry = self.terms.entry(index).or_insert(Complex64::new(0.0, 0.0));
        *entry += coeff;
        self.terms.retain(|_, c| *c != Complex64::new(0.0, 0.0));
        Ok(())
    }

    /// `scale · pᵀ S p` for a square matrix `S`.
    pub fn quadratic_form(matrix: &DMatrix<f64>, scale: f64) -> Result<Self> {
        let m = matrix.nrows();
        Error::check_dim(m, matrix.ncols())?;
        let mut poly = Polynomial::zero(m);
        for i in 0..m {
            for j in 0..m {
                let c = matrix[(i, j)] * scale;
                if c != 0.0 {
                    let mut index = vec![0; m];
                    index[i] += 1;
                    index[j] += 1;
                    poly.add_term(index, Complex64::new(c, 0.0))?;
                }
            }
        }
        Ok(poly)
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Complex64)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|k| k.iter().sum()).max().unwrap_or(0)
    }

    pub fn constant_term(&self) -> Complex64 {
        self.terms
            .get(&vec![0; self.dimension])
            .copied()
            .unwrap_or_default()
    }

    pub fn eval_f64(&self, x: &[f64]) -> Complex64 {
        debug_assert_eq!(x.len(), self.dimension);
        self.terms
            .iter()
            .map(|(index, c)| {
                let monomial: f64 = index
                    .iter()
                    .zip(x)
                    .map(|(&k, &xi)| xi.powi(k as i32))
                    .product();
                c * monomial
            })
            .sum()
    }

    pub fn eval(&self, p: &MomentumVector) -> Complex64 {
        self.eval_f64(&p.to_f64())
    }

    pub fn partial(&self, axis: usize) -> Polynomial {
        let mut out = Polynomial::zero(self.dimension);
        for (index, c) in &self.terms {
            let k = index[axis];
            if k == 0 {
                continue;
            }
            let mut lowered = index.clone();
            lowered[axis] -= 1;
            *out.terms.entry(lowered).or_default() += c * f64::from(k);
        }
        out
    }

    /// Hessian matrix evaluated at `x`.
    pub fn hessian_at(&self, x: &[f64]) -> DMatrix<Complex64> {
        let m = self.dimension;
        let mut h = DMatrix::zeros(m, m);
        for i in 0..m {
            let di = self.partial(i);
            for j in i..m {
                let v = di.partial(j).eval_f64(x);
                h[(i, j)] = v;
                h[(j, i)] = v;
            }
        }
        h
    }

    pub fn scaled(&self, s: Complex64) -> Polynomial {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c *= s;
        }
        out.terms.retain(|_, c| *c != Complex64::new(0.0, 0.0));
        out
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        Error::check_dim(self.dimension, other.dimension)?;
        let mut out = self.clone();
        for (index, c) in &other.terms {
            out.add_term(index.clone(), *c)?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.add(&other.scaled(Complex64::new(-1.0, 0.0)))
    }
}

/// `"2,0"` → `[2, 0]`.
pub fn parse_multi_index(key: &str) -> Result<MultiIndex> {
    key.split(',')
        .map(|t| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| Error::Parse(format!("bad multi-index {key:?}")))
        })
        .collect()
}

pub fn format_multi_index(index: &[u32]) -> String {
    index
        .iter()
        .map(u32::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (index, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})")?;
            for (axis, &k) in index.iter().enumerate() {
                match k {
                    0 => {}
                    1 => write!(f, "·p{}", axis + 1)?,
                    _ => write!(f, "·p{}^{k}", axis + 1)?,
                }
            }
        }
        Ok(())
    }
}
