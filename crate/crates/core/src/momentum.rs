//! Exact momenta in ℝᵐ.
//!
//! Frequencies are kept as arbitrary-precision rationals so that `p + q`
//! lands on exactly the same key as any other route to the same mode.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MomentumVector(Vec<BigRational>);

pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

impl MomentumVector {
    pub fn new(coords: Vec<BigRational>) -> Self {
        MomentumVector(coords)
    }

    pub fn zeros(m: usize) -> Self {
        MomentumVector(vec![BigRational::zero(); m])
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        MomentumVector(coords.iter().map(|&c| ratio(c, 1)).collect())
    }

    /// Builds a vector from `(numerator, denominator)` pairs.
    pub fn from_ratios(coords: &[(i64, i64)]) -> Self {
        MomentumVector(coords.iter().map(|&(n, d)| ratio(n, d)).collect())
    }

    /// `scale · e_axis` in dimension `m`.
    pub fn axis(m: usize, axis: usize, scale: BigRational) -> Self {
        let mut v = Self::zeros(m);
        v.0[axis] = scale;
        v
    }

    pub fn dimension(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(rational_to_f64).collect()
    }

    pub fn dot_f64(&self, other: &[f64]) -> f64 {
        self.0
            .iter()
            .zip(other)
            .map(|(a, b)| rational_to_f64(a) * b)
            .sum()
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        MomentumVector(self.0.iter().map(|c| c * s).collect())
    }

    /// Returns a copy with `delta` added to one coordinate.
    pub fn shifted(&self, axis: usize, delta: &BigRational) -> Self {
        let mut v = self.clone();
        v.0[axis] = &v.0[axis] + delta;
        v
    }

    /// Largest absolute coordinate, as a float.
    pub fn max_abs(&self) -> f64 {
        self.0
            .iter()
            .map(|c| rational_to_f64(&c.abs()))
            .fold(0.0, f64::max)
    }

    pub fn check_dim(&self, m: usize) -> Result<()> {
        Error::check_dim(m, self.dimension())
    }
}

pub(crate) fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Exact rational from a finite float.
pub fn rational_from_f64(x: f64) -> Result<BigRational> {
    BigRational::from_float(x).ok_or_else(|| Error::Input(format!("not a finite number: {x}")))
}

/// Parses `"n/d"` or `"n"`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let parse_int = |t: &str| {
        BigInt::from_str(t.trim()).map_err(|_| Error::Parse(format!("bad rational {s:?}")))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let den = parse_int(d)?;
            if den.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(BigRational::new(parse_int(n)?, den))
        }
        None => Ok(BigRational::from_integer(parse_int(s)?)),
    }
}

/// Canonical `"n/d"` form; integers keep the `/1`.
pub fn format_rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

impl<'a> Add for &'a MomentumVector {
    type Output = MomentumVector;

    fn add(self, rhs: &'a MomentumVector) -> MomentumVector {
        debug_assert_eq!(self.dimension(), rhs.dimension());
        MomentumVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl<'a> Sub for &'a MomentumVector {
    type Output = MomentumVector;

    fn sub(self, rhs: &'a MomentumVector) -> MomentumVector {
        debug_assert_eq!(self.dimension(), rhs.dimension());
        MomentumVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &MomentumVector {
    type Output = MomentumVector;

    fn neg(self) -> MomentumVector {
        MomentumVector(self.0.iter().map(|a| -a).collect())
    }
}

impl Add for MomentumVector {
    type Output = MomentumVector;

    fn add(self, rhs: MomentumVector) -> MomentumVector {
        &self + &rhs
    }
}

impl Sub for MomentumVector {
    type Output = MomentumVector;

    fn sub(self, rhs: MomentumVector) -> MomentumVector {
        &self - &rhs
    }
}

impl Neg for MomentumVector {
    type Output = MomentumVector;

    fn neg(self) -> MomentumVector {
        -&self
    }
}

impl fmt::Display for MomentumVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

impl Serialize for MomentumVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.0.iter().map(format_rational))
    }
}

impl<'de> Deserialize<'de> for MomentumVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<String>::deserialize(deserializer)?;
        raw.iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()
            .map(MomentumVector)
            .map_err(serde::de::Error::custom)
    }
}
