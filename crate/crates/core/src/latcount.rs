//! Lattice-point counting in integer dilates and Ehrhart quasi-polynomial
//! recovery.
//!
//! Each convex piece is compiled once per dilation `k` into integer rows
//! `a·x ≤ floor(k·b)`. The integer bounding box is walked over all but the
//! last coordinate; the last coordinate's feasible interval is solved in
//! closed form per piece, and for unions the intervals are merged so each
//! lattice point is counted once. Slices of the first coordinate are
//! counted in parallel.

use num::{BigInt, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::polygeom::{Target, VPolytope};
use crate::qpalg::{interpolate, QuasiPolynomial};
use crate::rational::{floor_int, Rational};

/// A single counting job: `|k·target ∩ Z^n|`.
#[derive(Clone, Debug)]
pub struct CountRequest {
    pub target: Target,
    pub k: u64,
}

impl CountRequest {
    pub fn new(target: Target, k: u64) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidParameter("dilation k must be at least 1".into()));
        }
        Ok(Self { target, k })
    }

    pub fn run(&self) -> Result<u128> {
        count(&self.target, self.k)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EhrhartResult {
    pub qp: QuasiPolynomial,
    pub period_used: u64,
    pub samples_used: Vec<(u64, u128)>,
    pub validation_points: Vec<(u64, u128)>,
}

struct CompiledPiece {
    rows: Vec<(Vec<i128>, i128)>,
    bbox: Vec<(i128, i128)>,
}

// keeps |a·x| + |rhs| far from i128 limits
const MAGNITUDE_LIMIT_BITS: u64 = 110;

fn to_i128(v: &BigInt) -> Result<i128> {
    v.to_i128().ok_or(Error::Overflow)
}

fn compile(p: &VPolytope, k: u64) -> Result<CompiledPiece> {
    let kk = Rational::from_integer(k.into());
    let (equalities, facets) = p.constraints();
    let bbox_big = p.bounding_box(k);
    let reach: BigInt = bbox_big
        .iter()
        .map(|(lo, hi)| lo.abs().max(hi.abs()))
        .max()
        .unwrap_or_else(BigInt::zero);

    let mut big_rows: Vec<(Vec<BigInt>, BigInt)> = Vec::new();
    for f in facets {
        big_rows.push((f.normal.clone(), floor_int(&(&f.offset * &kk))));
    }
    for e in equalities {
        let rhs = &e.offset * &kk;
        big_rows.push((e.normal.clone(), floor_int(&rhs)));
        big_rows.push((
            e.normal.iter().map(|a| -a).collect(),
            floor_int(&-rhs),
        ));
    }

    let mut rows = Vec::with_capacity(big_rows.len());
    for (a, b) in &big_rows {
        let bound: BigInt = a.iter().map(|ai| ai.abs() * &reach).sum::<BigInt>() + b.abs();
        if bound.bits() > MAGNITUDE_LIMIT_BITS {
            return Err(Error::Overflow);
        }
        rows.push((a.iter().map(to_i128).collect::<Result<Vec<_>>>()?, to_i128(b)?));
    }
    let bbox = bbox_big
        .iter()
        .map(|(lo, hi)| Ok((to_i128(lo)?, to_i128(hi)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(CompiledPiece { rows, bbox })
}

fn floor_div(a: i128, b: i128) -> i128 {
    debug_assert!(b > 0);
    a.div_euclid(b)
}

fn ceil_div(a: i128, b: i128) -> i128 {
    -floor_div(-a, b)
}

impl CompiledPiece {
    /// Feasible range of the last coordinate given the prefix, or `None`.
    fn last_interval(&self, prefix: &[i128]) -> Option<(i128, i128)> {
        let last = self.bbox.len() - 1;
        let (mut lo, mut hi) = self.bbox[last];
        for (a, b) in &self.rows {
            let partial: i128 = a[..last].iter().zip(prefix).map(|(ai, xi)| ai * xi).sum();
            let r = b - partial;
            let c = a[last];
            if c > 0 {
                hi = hi.min(floor_div(r, c));
            } else if c < 0 {
                lo = lo.max(ceil_div(-r, -c));
            } else if r < 0 {
                return None;
            }
            if lo > hi {
                return None;
            }
        }
        Some((lo, hi))
    }

    fn contains_origin_space(&self) -> bool {
        self.rows.iter().all(|(_, b)| *b >= 0)
    }
}

fn union_length(mut intervals: Vec<(i128, i128)>) -> u128 {
    intervals.sort_unstable();
    let mut total: u128 = 0;
    let mut current: Option<(i128, i128)> = None;
    for (lo, hi) in intervals {
        match current {
            Some((clo, chi)) if lo <= chi + 1 => current = Some((clo, chi.max(hi))),
            Some((clo, chi)) => {
                total += (chi - clo + 1) as u128;
                current = Some((lo, hi));
            }
            None => current = Some((lo, hi)),
        }
    }
    if let Some((clo, chi)) = current {
        total += (chi - clo + 1) as u128;
    }
    total
}

fn descend(pieces: &[&CompiledPiece], prefix: &mut Vec<i128>, n: usize) -> u128 {
    let level = prefix.len();
    if level == n - 1 {
        let intervals: Vec<(i128, i128)> = pieces
            .iter()
            .filter_map(|p| p.last_interval(prefix))
            .collect();
        return union_length(intervals);
    }
    let lo = pieces.iter().map(|p| p.bbox[level].0).min().expect("nonempty");
    let hi = pieces.iter().map(|p| p.bbox[level].1).max().expect("nonempty");
    let mut total = 0;
    for x in lo..=hi {
        let alive: Vec<&CompiledPiece> = pieces
            .iter()
            .copied()
            .filter(|p| p.bbox[level].0 <= x && x <= p.bbox[level].1)
            .collect();
        if alive.is_empty() {
            continue;
        }
        prefix.push(x);
        total += descend(&alive, prefix, n);
        prefix.pop();
    }
    total
}

fn count_compiled(pieces: &[CompiledPiece], n: usize) -> u128 {
    if n == 0 {
        return u128::from(pieces.iter().any(CompiledPiece::contains_origin_space));
    }
    let refs: Vec<&CompiledPiece> = pieces.iter().collect();
    if n == 1 {
        return descend(&refs, &mut Vec::new(), 1);
    }
    let lo = pieces.iter().map(|p| p.bbox[0].0).min().expect("nonempty");
    let hi = pieces.iter().map(|p| p.bbox[0].1).max().expect("nonempty");
    (lo..=hi)
        .into_par_iter()
        .map(|x| {
            let alive: Vec<&CompiledPiece> = refs
                .iter()
                .copied()
                .filter(|p| p.bbox[0].0 <= x && x <= p.bbox[0].1)
                .collect();
            if alive.is_empty() {
                return 0;
            }
            let mut prefix = Vec::with_capacity(n);
            prefix.push(x);
            descend(&alive, &mut prefix, n)
        })
        .sum()
}

fn count_pieces(pieces: &[VPolytope], n: usize, k: u64) -> Result<u128> {
    if k == 0 {
        return Err(Error::InvalidParameter("dilation k must be at least 1".into()));
    }
    let compiled = pieces
        .iter()
        .map(|p| compile(p, k))
        .collect::<Result<Vec<_>>>()?;
    Ok(count_compiled(&compiled, n))
}

/// `|k·target ∩ Z^n|`; for a ball, the union is counted (each lattice point
/// once). Every piece must be full-dimensional.
pub fn count(target: &Target, k: u64) -> Result<u128> {
    for p in target.pieces() {
        if !p.is_full_dimensional() {
            return Err(Error::NotFullDimensional {
                dim: p.dim(),
                ambient: p.ambient_dim(),
            });
        }
    }
    count_pieces(target.pieces(), target.ambient_dim(), k)
}

/// Lattice points of `k·p` for a polytope of any dimension, e.g. a facet.
pub fn count_face(p: &VPolytope, k: u64) -> Result<u128> {
    count_pieces(std::slice::from_ref(p), p.ambient_dim(), k)
}

fn to_rational(c: u128) -> Rational {
    Rational::from_integer(BigInt::from(c))
}

/// Counts at `k = 1..=s(n+1)` with `s` the denominator, interpolates, then
/// checks one further full round of residues `k = s(n+1)+1..=s(n+2)`.
pub fn ehrhart(target: &Target) -> Result<EhrhartResult> {
    let n = target.ambient_dim();
    let s = target
        .denominator()
        .to_u64()
        .ok_or(Error::Overflow)?;
    let sample_end = s * (n as u64 + 1);
    let validate_end = s * (n as u64 + 2);

    let counts: Vec<(u64, u128)> = (1..=validate_end)
        .into_par_iter()
        .map(|k| count(target, k).map(|c| (k, c)))
        .collect::<Result<Vec<_>>>()?;
    let (samples_used, validation_points): (Vec<_>, Vec<_>) =
        counts.into_iter().partition(|(k, _)| *k <= sample_end);

    let samples: Vec<(i64, Rational)> = samples_used
        .iter()
        .map(|&(k, c)| (k as i64, to_rational(c)))
        .collect();
    let qp = interpolate(&samples, n, s as usize)?;
    for &(k, c) in &validation_points {
        let predicted = qp.eval(k as i64);
        if predicted != to_rational(c) {
            return Err(Error::ValidationMismatch {
                k,
                counted: c.to_string(),
                predicted: crate::rational::format_rational(&predicted),
            });
        }
    }
    Ok(EhrhartResult {
        qp,
        period_used: s,
        samples_used,
        validation_points,
    })
}

/// The leading coefficient of the Ehrhart quasi-polynomial, i.e. the volume.
pub fn leading_volume(target: &Target) -> Result<Rational> {
    let result = ehrhart(target)?;
    let n = target.ambient_dim();
    let lead = result
        .qp
        .coefficient(n)
        .cloned()
        .unwrap_or_else(crate::qpalg::PeriodicFunction::zero);
    if !lead.is_constant() {
        return Err(Error::PeriodViolation {
            period: lead.minimal_period(),
        });
    }
    Ok(lead.values()[0].clone())
}
