use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::integer::lcm;
use num::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{format_rational, Rational};

/// A function `Z -> Q` with a finite period, stored as one full period of
/// values. The value at `k` is `values[k mod s]` with a nonnegative modulus.
#[derive(Clone, Debug)]
pub struct PeriodicFunction {
    values: Vec<Rational>,
}

impl PeriodicFunction {
    pub fn new(values: Vec<Rational>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidParameter(
                "periodic function needs at least one value".into(),
            ));
        }
        Ok(Self { values })
    }

    pub fn constant(c: Rational) -> Self {
        Self { values: vec![c] }
    }

    pub fn zero() -> Self {
        Self::constant(Rational::zero())
    }

    pub fn period(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn at(&self, k: i64) -> &Rational {
        let s = self.values.len() as i64;
        &self.values[k.rem_euclid(s) as usize]
    }

    /// Least divisor `d` of the stored period with `values[j] == values[j + d]`.
    pub fn minimal_period(&self) -> usize {
        let s = self.values.len();
        (1..=s)
            .filter(|d| s.is_multiple_of(*d))
            .find(|&d| (0..s).all(|j| self.values[j] == self.values[(j + d) % s]))
            .unwrap_or(s)
    }

    pub fn canonical(&self) -> Self {
        let d = self.minimal_period();
        Self {
            values: self.values[..d].to_vec(),
        }
    }

    pub fn is_constant(&self) -> bool {
        self.minimal_period() == 1
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    /// The same function written out over `period`, a multiple of the
    /// stored period.
    pub fn extended(&self, period: usize) -> Vec<Rational> {
        debug_assert_eq!(period % self.period(), 0);
        (0..period)
            .map(|j| self.values[j % self.values.len()].clone())
            .collect()
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&Rational, &Rational) -> Rational) -> Self {
        let s = lcm(self.period(), other.period());
        let a = self.extended(s);
        let b = other.extended(s);
        Self {
            values: a.iter().zip(&b).map(|(x, y)| f(x, y)).collect(),
        }
        .canonical()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            values: self.values.iter().map(|v| v * c).collect(),
        }
        .canonical()
    }
}

impl PartialEq for PeriodicFunction {
    fn eq(&self, other: &Self) -> bool {
        let s = lcm(self.period(), other.period());
        self.extended(s) == other.extended(s)
    }
}

impl Eq for PeriodicFunction {}

impl Add for &PeriodicFunction {
    type Output = PeriodicFunction;
    fn add(self, rhs: Self) -> PeriodicFunction {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &PeriodicFunction {
    type Output = PeriodicFunction;
    fn sub(self, rhs: Self) -> PeriodicFunction {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Mul for &PeriodicFunction {
    type Output = PeriodicFunction;
    fn mul(self, rhs: Self) -> PeriodicFunction {
        self.zip_with(rhs, |a, b| a * b)
    }
}

impl Neg for &PeriodicFunction {
    type Output = PeriodicFunction;
    fn neg(self) -> PeriodicFunction {
        self.scale(&-Rational::one())
    }
}

impl fmt::Display for PeriodicFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.values.len() == 1 {
            return write!(f, "{}", format_rational(&self.values[0]));
        }
        write!(f, "[")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", format_rational(v))?;
        }
        write!(f, "]")
    }
}
