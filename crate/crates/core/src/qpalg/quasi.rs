use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{One, Zero};
use serde::{Deserialize, Serialize};

use super::periodic::PeriodicFunction;
use crate::error::{Error, Result};
use crate::rational::{format_rational, parse_rational, Rational};

/// An element of `Q̂[t]`: `Σ c_i(k) k^i` with periodic coefficient functions.
///
/// Always kept canonical: every coefficient at its minimal period and no
/// identically-zero leading coefficients. The zero quasi-polynomial has
/// degree 0 and coefficient list `[0]`. Derived equality is therefore
/// equality of functions on `Z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiPolynomial {
    coefficients: Vec<PeriodicFunction>,
}

/// Minimal periods `(p_0, …, p_n)` of the coefficient functions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PeriodSequence(pub Vec<usize>);

impl fmt::Display for PeriodSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

impl QuasiPolynomial {
    pub fn new(coefficients: Vec<PeriodicFunction>) -> Self {
        let mut coefficients: Vec<PeriodicFunction> =
            coefficients.iter().map(PeriodicFunction::canonical).collect();
        while coefficients.len() > 1 && coefficients.last().is_some_and(PeriodicFunction::is_zero)
        {
            coefficients.pop();
        }
        if coefficients.is_empty() {
            coefficients.push(PeriodicFunction::zero());
        }
        Self { coefficients }
    }

    pub fn zero() -> Self {
        Self::new(vec![])
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![PeriodicFunction::constant(c)])
    }

    /// An ordinary polynomial from its coefficients, lowest degree first.
    pub fn polynomial(coeffs: Vec<Rational>) -> Self {
        Self::new(coeffs.into_iter().map(PeriodicFunction::constant).collect())
    }

    pub fn monomial(c: Rational, degree: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); degree + 1];
        coeffs[degree] = c;
        Self::polynomial(coeffs)
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn coefficients(&self) -> &[PeriodicFunction] {
        &self.coefficients
    }

    pub fn coefficient(&self, i: usize) -> Option<&PeriodicFunction> {
        self.coefficients.get(i)
    }

    pub fn eval(&self, k: i64) -> Rational {
        let kk = Rational::from_integer(k.into());
        let mut acc = Rational::zero();
        for c in self.coefficients.iter().rev() {
            acc = acc * &kk + c.at(k);
        }
        acc
    }

    pub fn is_polynomial(&self) -> bool {
        self.coefficients.iter().all(PeriodicFunction::is_constant)
    }

    /// Least common multiple of the coefficient periods.
    pub fn period(&self) -> usize {
        self.coefficients
            .iter()
            .fold(1, |acc, c| num::integer::lcm(acc, c.period()))
    }

    pub fn period_sequence(&self) -> PeriodSequence {
        PeriodSequence(
            self.coefficients
                .iter()
                .map(PeriodicFunction::minimal_period)
                .collect(),
        )
    }

    /// `q ≡ r` iff `q - r` has only constant coefficients.
    pub fn equivalent(&self, other: &Self) -> bool {
        (self - other).is_polynomial()
    }

    fn combine(&self, other: &Self, f: impl Fn(&PeriodicFunction, &PeriodicFunction) -> PeriodicFunction) -> Self {
        let n = self.coefficients.len().max(other.coefficients.len());
        let zero = PeriodicFunction::zero();
        Self::new(
            (0..n)
                .map(|i| {
                    f(
                        self.coefficients.get(i).unwrap_or(&zero),
                        other.coefficients.get(i).unwrap_or(&zero),
                    )
                })
                .collect(),
        )
    }
}

pub fn qp_add(a: &QuasiPolynomial, b: &QuasiPolynomial) -> QuasiPolynomial {
    a.combine(b, |x, y| x + y)
}

pub fn qp_mul(a: &QuasiPolynomial, b: &QuasiPolynomial) -> QuasiPolynomial {
    let n = a.coefficients.len() + b.coefficients.len() - 1;
    let mut out = vec![PeriodicFunction::zero(); n];
    for (i, x) in a.coefficients.iter().enumerate() {
        for (j, y) in b.coefficients.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    QuasiPolynomial::new(out)
}

pub fn qp_equivalent(a: &QuasiPolynomial, b: &QuasiPolynomial) -> bool {
    a.equivalent(b)
}

pub fn minimal_period(f: &PeriodicFunction) -> usize {
    f.minimal_period()
}

pub fn period_sequence(a: &QuasiPolynomial) -> PeriodSequence {
    a.period_sequence()
}

impl Add for &QuasiPolynomial {
    type Output = QuasiPolynomial;
    fn add(self, rhs: Self) -> QuasiPolynomial {
        qp_add(self, rhs)
    }
}

impl Sub for &QuasiPolynomial {
    type Output = QuasiPolynomial;
    fn sub(self, rhs: Self) -> QuasiPolynomial {
        self.combine(rhs, |x, y| x - y)
    }
}

impl Mul for &QuasiPolynomial {
    type Output = QuasiPolynomial;
    fn mul(self, rhs: Self) -> QuasiPolynomial {
        qp_mul(self, rhs)
    }
}

impl Neg for &QuasiPolynomial {
    type Output = QuasiPolynomial;
    fn neg(self) -> QuasiPolynomial {
        QuasiPolynomial::new(self.coefficients.iter().map(|c| -c).collect())
    }
}

impl Add for QuasiPolynomial {
    type Output = QuasiPolynomial;
    fn add(self, rhs: Self) -> QuasiPolynomial {
        &self + &rhs
    }
}

impl Sub for QuasiPolynomial {
    type Output = QuasiPolynomial;
    fn sub(self, rhs: Self) -> QuasiPolynomial {
        &self - &rhs
    }
}

impl Mul for QuasiPolynomial {
    type Output = QuasiPolynomial;
    fn mul(self, rhs: Self) -> QuasiPolynomial {
        &self * &rhs
    }
}

impl Neg for QuasiPolynomial {
    type Output = QuasiPolynomial;
    fn neg(self) -> QuasiPolynomial {
        -&self
    }
}

impl fmt::Display for QuasiPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coefficients.iter().enumerate().rev() {
            if c.is_zero() && self.degree() > 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}·t")?,
                _ => write!(f, "{c}·t^{i}")?,
            }
        }
        Ok(())
    }
}

/// Recovers a quasi-polynomial of degree `≤ degree` whose coefficients have
/// period dividing `period` from exact samples `(k, value)`.
///
/// Each residue class `r mod period` is solved independently as a
/// Vandermonde system in exact arithmetic. Every sample is then checked
/// against the result.
pub fn interpolate(
    samples: &[(i64, Rational)],
    degree: usize,
    period: usize,
) -> Result<QuasiPolynomial> {
    if period == 0 {
        return Err(Error::InvalidParameter("period must be positive".into()));
    }
    let needed = degree + 1;
    let mut table = vec![vec![Rational::zero(); period]; needed];
    for r in 0..period {
        let mut ks: Vec<(i64, &Rational)> = Vec::with_capacity(needed);
        for (k, v) in samples {
            if k.rem_euclid(period as i64) as usize != r || ks.iter().any(|(kk, _)| kk == k) {
                continue;
            }
            ks.push((*k, v));
            if ks.len() == needed {
                break;
            }
        }
        if ks.len() < needed {
            return Err(Error::InsufficientSamples {
                residue: r,
                needed,
                found: ks.len(),
            });
        }
        let a: Vec<Vec<Rational>> = ks
            .iter()
            .map(|(k, _)| {
                let kk = Rational::from_integer((*k).into());
                let mut row = Vec::with_capacity(needed);
                let mut pw = Rational::one();
                for _ in 0..needed {
                    row.push(pw.clone());
                    pw *= &kk;
                }
                row
            })
            .collect();
        let b: Vec<Rational> = ks.iter().map(|(_, v)| (*v).clone()).collect();
        let x = crate::linalg::solve(&a, &b).expect("distinct abscissas give a regular system");
        for (i, xi) in x.into_iter().enumerate() {
            table[i][r] = xi;
        }
    }
    let qp = QuasiPolynomial::new(
        table
            .into_iter()
            .map(|vals| PeriodicFunction::new(vals).expect("period is positive"))
            .collect(),
    );
    if samples.iter().any(|(k, v)| qp.eval(*k) != *v) {
        return Err(Error::InconsistentSamples { degree, period });
    }
    Ok(qp)
}

#[derive(Serialize, Deserialize)]
struct PeriodicJson {
    period: usize,
    values: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct QuasiPolynomialJson {
    degree: usize,
    coefficients: Vec<PeriodicJson>,
}

impl Serialize for QuasiPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        QuasiPolynomialJson {
            degree: self.degree(),
            coefficients: self
                .coefficients
                .iter()
                .map(|c| PeriodicJson {
                    period: c.period(),
                    values: c.values().iter().map(format_rational).collect(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QuasiPolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = QuasiPolynomialJson::deserialize(d)?;
        Self::try_from_json(raw).map_err(serde::de::Error::custom)
    }
}

impl QuasiPolynomial {
    fn try_from_json(raw: QuasiPolynomialJson) -> Result<Self> {
        if raw.coefficients.len() != raw.degree + 1 {
            return Err(Error::Parse(format!(
                "degree {} needs {} coefficients, found {}",
                raw.degree,
                raw.degree + 1,
                raw.coefficients.len()
            )));
        }
        let coeffs = raw
            .coefficients
            .into_iter()
            .map(|c| {
                if c.period != c.values.len() || c.period == 0 {
                    return Err(Error::Parse(format!(
                        "period {} does not match {} values",
                        c.period,
                        c.values.len()
                    )));
                }
                let vals = c
                    .values
                    .iter()
                    .map(|v| parse_rational(v))
                    .collect::<Result<Vec<_>>>()?;
                PeriodicFunction::new(vals)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(coeffs))
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let raw: QuasiPolynomialJson =
            serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::try_from_json(raw)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("quasi-polynomial serializes")
    }
}
