//! Builders for the building blocks and glued polytopal balls.
//!
//! Coordinates are 1-based in the names below (`e_{i+1}`) and 0-based in
//! code (`axis = i`). Products put the first factor's coordinates first.

use num::{BigInt, One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::polygeom::{PolytopalBall, VPolytope};
use crate::rational::Rational;

pub const DEFAULT_SHIFT_BUDGET: u64 = 1 << 12;

/// The node set `T` of the cyclic polytopes: `n + 1` strictly increasing
/// integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicConfig {
    nodes: Vec<i64>,
}

impl CyclicConfig {
    pub fn new(nodes: Vec<i64>) -> Result<Self> {
        if nodes.is_empty() {
            return Err(Error::InvalidParameter("T must not be empty".into()));
        }
        if nodes.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidParameter(
                "T must be strictly increasing".into(),
            ));
        }
        Ok(Self { nodes })
    }

    /// `T = {0, 1, …, n}`.
    pub fn standard(n: usize) -> Self {
        Self {
            nodes: (0..=n as i64).collect(),
        }
    }

    pub fn nodes(&self) -> &[i64] {
        &self.nodes
    }

    /// The largest cyclic index this node set supports.
    pub fn n(&self) -> usize {
        self.nodes.len() - 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructionParams {
    pub n: usize,
    pub periods: Vec<u64>,
    pub cyclic: CyclicConfig,
    pub shifts: Option<Vec<u64>>,
}

impl ConstructionParams {
    pub fn new(n: usize, periods: Vec<u64>, cyclic: Option<CyclicConfig>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("dimension must be at least 1".into()));
        }
        if periods.len() != n {
            return Err(Error::InvalidParameter(format!(
                "expected {n} periods, got {}",
                periods.len()
            )));
        }
        if periods.contains(&0) {
            return Err(Error::InvalidParameter("periods must be positive".into()));
        }
        let cyclic = cyclic.unwrap_or_else(|| CyclicConfig::standard(n));
        if cyclic.nodes.len() != n + 1 {
            return Err(Error::InvalidParameter(format!(
                "T must have {} entries, got {}",
                n + 1,
                cyclic.nodes.len()
            )));
        }
        Ok(Self {
            n,
            periods,
            cyclic,
            shifts: None,
        })
    }

    pub fn with_shifts(mut self, shifts: Vec<u64>) -> Result<Self> {
        if shifts.len() != self.n {
            return Err(Error::InvalidParameter(format!(
                "expected {} shifts, got {}",
                self.n,
                shifts.len()
            )));
        }
        if shifts.contains(&0) {
            return Err(Error::InvalidParameter("shifts must be positive".into()));
        }
        self.shifts = Some(shifts);
        Ok(self)
    }
}

/// `q = p² − p + 1`.
pub fn q_of(p: u64) -> u64 {
    p * p - p + 1
}

fn check_period(p: u64) -> Result<()> {
    if p == 0 {
        return Err(Error::InvalidParameter("period p must be at least 1".into()));
    }
    Ok(())
}

fn rat(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

fn rat_u(v: u64) -> Rational {
    Rational::from_integer(v.into())
}

/// `ℓ = [−1/p, 0]`.
pub fn segment(p: u64) -> Result<VPolytope> {
    check_period(p)?;
    Ok(VPolytope::from_extreme_points(
        1,
        vec![
            vec![Rational::new(BigInt::from(-1), BigInt::from(p))],
            vec![Rational::zero()],
        ],
    ))
}

/// `conv{±q e_1, ±(q−1) e_1 + e_2, (q/p) e_2}`; a triangle when `p = 1`.
pub fn pentagon(p: u64) -> Result<VPolytope> {
    check_period(p)?;
    let q = q_of(p) as i64;
    VPolytope::new(
        2,
        vec![
            vec![rat(q), rat(0)],
            vec![rat(-q), rat(0)],
            vec![rat(q - 1), rat(1)],
            vec![rat(-(q - 1)), rat(1)],
            vec![rat(0), Rational::new(BigInt::from(q), BigInt::from(p))],
        ],
    )
}

/// `C_i = conv{(x, x², …, x^i) : x ∈ T}`; `C_0` is the point of `R^0`.
pub fn cyclic(config: &CyclicConfig, i: usize) -> Result<VPolytope> {
    if i > config.n() {
        return Err(Error::InvalidParameter(format!(
            "cyclic index {i} exceeds n = {}",
            config.n()
        )));
    }
    if i == 0 {
        return Ok(VPolytope::unit());
    }
    let points = config
        .nodes
        .iter()
        .map(|&x| {
            let x = BigInt::from(x);
            (1..=i as u32)
                .map(|e| Rational::from_integer(x.pow(e)))
                .collect()
        })
        .collect();
    VPolytope::new(i, points)
}

/// `Vol(C_i)` from the pulling triangulation; `Vol(C_0) = 1`.
pub fn cyclic_volume(config: &CyclicConfig, i: usize) -> Result<Rational> {
    cyclic(config, i)?.volume()
}

fn check_summand(config: &CyclicConfig, n: usize, i: usize, k: u64) -> Result<()> {
    if n < 2 || i == 0 || i >= n {
        return Err(Error::InvalidParameter(format!(
            "summand index must satisfy 1 <= i <= n-1, got i = {i}, n = {n}"
        )));
    }
    if k == 0 {
        return Err(Error::InvalidParameter("shift k must be at least 1".into()));
    }
    if config.n() != n {
        return Err(Error::InvalidParameter(format!(
            "T must have {} entries, got {}",
            n + 1,
            config.nodes.len()
        )));
    }
    Ok(())
}

fn origin_point(dim: usize) -> VPolytope {
    VPolytope::from_extreme_points(dim, vec![vec![Rational::zero(); dim]])
}

fn q_edge(p: u64) -> VPolytope {
    let q = q_of(p) as i64;
    VPolytope::from_extreme_points(2, vec![vec![rat(q), rat(0)], vec![rat(-q), rat(0)]])
}

/// `L_i = (C_i × Pyr^{n−i−1}(ℓ)) − k e_{i+1}`.
pub fn left_summand(config: &CyclicConfig, n: usize, i: usize, p: u64, k: u64) -> Result<VPolytope> {
    check_summand(config, n, i, k)?;
    let base = cyclic(config, i)?.product(&segment(p)?.pyr_power(n - i - 1));
    Ok(base.translate_axis(i, &-rat_u(k)))
}

/// `L'_i = (C_i × conv{0, e_2, …, e_{n−i}}) − k e_{i+1}`.
pub fn left_facet(config: &CyclicConfig, n: usize, i: usize, k: u64) -> Result<VPolytope> {
    check_summand(config, n, i, k)?;
    let base = cyclic(config, i)?.product(&origin_point(1).pyr_power(n - i - 1));
    Ok(base.translate_axis(i, &-rat_u(k)))
}

/// `R_i = (C_{i−1} × Pyr^{n−i−1}(P)) + k e_{i+1}`.
pub fn right_summand(config: &CyclicConfig, n: usize, i: usize, p: u64, k: u64) -> Result<VPolytope> {
    check_summand(config, n, i, k)?;
    let base = cyclic(config, i - 1)?.product(&pentagon(p)?.pyr_power(n - i - 1));
    Ok(base.translate_axis(i, &rat_u(k)))
}

/// `R'_i = (C_{i−1} × conv{±q e_1, e_3, …, e_{n−i+1}}) + k e_{i+1}`.
pub fn right_facet(config: &CyclicConfig, n: usize, i: usize, p: u64, k: u64) -> Result<VPolytope> {
    check_summand(config, n, i, k)?;
    check_period(p)?;
    let base = cyclic(config, i - 1)?.product(&q_edge(p).pyr_power(n - i - 1));
    Ok(base.translate_axis(i, &rat_u(k)))
}

fn hull_of(parts: &[&VPolytope]) -> Result<VPolytope> {
    let dim = parts[0].ambient_dim();
    let points = parts.iter().flat_map(|f| f.vertices().iter().cloned()).collect();
    VPolytope::new(dim, points)
}

/// `M_i = conv(L'_i ∪ R'_i)`.
pub fn middle_single(config: &CyclicConfig, n: usize, i: usize, p: u64, k: u64) -> Result<VPolytope> {
    hull_of(&[&left_facet(config, n, i, k)?, &right_facet(config, n, i, p, k)?])
}

/// `Q_0 = Pyr^{n−1}(ℓ) − k e_1`.
pub fn q0_piece(n: usize, p: u64, k: u64) -> Result<VPolytope> {
    if n == 0 {
        return Err(Error::InvalidParameter("dimension must be at least 1".into()));
    }
    Ok(segment(p)?.pyr_power(n - 1).translate_axis(0, &-rat_u(k)))
}

/// `Q'_0 = conv{0, e_2, …, e_n} − k e_1`.
pub fn q0_facet(n: usize, k: u64) -> Result<VPolytope> {
    if n == 0 {
        return Err(Error::InvalidParameter("dimension must be at least 1".into()));
    }
    Ok(origin_point(1).pyr_power(n - 1).translate_axis(0, &-rat_u(k)))
}

/// The single-period ball: `Pyr^{n−1}(ℓ)` for `i = 0`, otherwise the three
/// pieces `{L_i, M_i, R_i}` with unit shifts.
pub fn build_qi(config: &CyclicConfig, n: usize, i: usize, p: u64) -> Result<PolytopalBall> {
    if i >= n {
        return Err(Error::InvalidParameter(format!(
            "degree i = {i} must be below n = {n}"
        )));
    }
    if i == 0 {
        return PolytopalBall::new(vec![segment(p)?.pyr_power(n - 1)]);
    }
    PolytopalBall::new(vec![
        left_summand(config, n, i, p, 1)?,
        middle_single(config, n, i, p, 1)?,
        right_summand(config, n, i, p, 1)?,
    ])
}

/// A labelled facet that must be a facet of the common middle polytope.
#[derive(Clone, Debug)]
pub struct DesignatedFacet {
    pub label: String,
    pub facet: VPolytope,
}

fn check_qstar_params(params: &ConstructionParams, shifts: &[u64]) -> Result<()> {
    if params.n < 2 {
        return Err(Error::InvalidParameter(
            "the glued ball needs n >= 2 (for n = 1 use the segment)".into(),
        ));
    }
    if shifts.len() != params.n || shifts.contains(&0) {
        return Err(Error::InvalidParameter(format!(
            "need {} positive shifts, got {shifts:?}",
            params.n
        )));
    }
    Ok(())
}

/// `Q'_0, L'_1, R'_1, …, L'_{n−1}, R'_{n−1}` for the given shifts.
pub fn designated_facets(params: &ConstructionParams, shifts: &[u64]) -> Result<Vec<DesignatedFacet>> {
    check_qstar_params(params, shifts)?;
    let n = params.n;
    let mut out = vec![DesignatedFacet {
        label: "Q'_0".into(),
        facet: q0_facet(n, shifts[0])?,
    }];
    for i in 1..n {
        out.push(DesignatedFacet {
            label: format!("L'_{i}"),
            facet: left_facet(&params.cyclic, n, i, shifts[i])?,
        });
        out.push(DesignatedFacet {
            label: format!("R'_{i}"),
            facet: right_facet(&params.cyclic, n, i, params.periods[i], shifts[i])?,
        });
    }
    Ok(out)
}

/// `M = conv(Q'_0 ∪ L'_1 ∪ R'_1 ∪ … ∪ R'_{n−1})`.
pub fn middle_star(params: &ConstructionParams, shifts: &[u64]) -> Result<VPolytope> {
    let facets = designated_facets(params, shifts)?;
    let parts: Vec<&VPolytope> = facets.iter().map(|f| &f.facet).collect();
    hull_of(&parts)
}

/// Labels of designated facets that fail to be facets of `M`.
pub fn failing_facets(params: &ConstructionParams, shifts: &[u64]) -> Result<Vec<String>> {
    let facets = designated_facets(params, shifts)?;
    let parts: Vec<&VPolytope> = facets.iter().map(|f| &f.facet).collect();
    let m = hull_of(&parts)?;
    if !m.is_full_dimensional() {
        return Ok(facets.into_iter().map(|f| f.label).collect());
    }
    Ok(facets
        .into_iter()
        .filter(|f| !f.facet.is_facet_of(&m))
        .map(|f| f.label)
        .collect())
}

pub fn shifts_valid(params: &ConstructionParams, shifts: &[u64]) -> Result<bool> {
    let facets = designated_facets(params, shifts)?;
    let parts: Vec<&VPolytope> = facets.iter().map(|f| &f.facet).collect();
    let m = hull_of(&parts)?;
    Ok(m.is_full_dimensional() && facets.iter().all(|f| f.facet.is_facet_of(&m)))
}

pub fn choose_shifts(params: &ConstructionParams) -> Result<Vec<u64>> {
    choose_shifts_with_budget(params, DEFAULT_SHIFT_BUDGET)
}

/// Uniform shifts `K = 1, 2, 4, …` up to `budget`, then each coordinate in
/// turn is lowered to the smallest value that still passes. Lowering
/// candidates are checked in parallel but the smallest passing one wins.
pub fn choose_shifts_with_budget(params: &ConstructionParams, budget: u64) -> Result<Vec<u64>> {
    check_qstar_params(params, &vec![1; params.n])?;
    let n = params.n;
    let mut k = 1u64;
    loop {
        if shifts_valid(params, &vec![k; n])? {
            break;
        }
        match k.checked_mul(2) {
            Some(next) if next <= budget => k = next,
            _ => return Err(Error::SearchBudgetExceeded { last: vec![k; n] }),
        }
    }

    let mut shifts = vec![k; n];
    for j in 0..n {
        let current = shifts[j];
        let lowered = (1..current)
            .into_par_iter()
            .map(|v| {
                let mut trial = shifts.clone();
                trial[j] = v;
                shifts_valid(params, &trial).map(|ok| ok.then_some(v))
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .next();
        if let Some(v) = lowered {
            shifts[j] = v;
        }
    }
    Ok(shifts)
}

/// The glued ball with pieces `Q_0, M, L_1, R_1, …, L_{n−1}, R_{n−1}`.
///
/// Uses `params.shifts` when present (rejecting shifts that do not make
/// every designated facet a facet of `M`), otherwise searches for them.
pub fn build_qstar(params: &ConstructionParams) -> Result<PolytopalBall> {
    let shifts = match &params.shifts {
        Some(s) => s.clone(),
        None => choose_shifts(params)?,
    };
    let failing = failing_facets(params, &shifts)?;
    if !failing.is_empty() {
        return Err(Error::FacetValidation(format!(
            "with shifts {shifts:?} these are not facets of M: {}",
            failing.join(", ")
        )));
    }
    let n = params.n;
    let mut pieces = vec![
        q0_piece(n, params.periods[0], shifts[0])?,
        middle_star(params, &shifts)?,
    ];
    for i in 1..n {
        pieces.push(left_summand(&params.cyclic, n, i, params.periods[i], shifts[i])?);
        pieces.push(right_summand(&params.cyclic, n, i, params.periods[i], shifts[i])?);
    }
    PolytopalBall::new(pieces)
}

/// Outcome of the structural checks on a glued ball.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StructureReport {
    pub halfspace_violations: Vec<String>,
    pub nonintegral: Vec<String>,
    pub non_facets: Vec<String>,
    pub overlapping_pieces: Vec<(usize, usize)>,
}

impl StructureReport {
    pub fn ok(&self) -> bool {
        self.halfspace_violations.is_empty()
            && self.nonintegral.is_empty()
            && self.non_facets.is_empty()
            && self.overlapping_pieces.is_empty()
    }
}

fn check_halfspaces(
    report: &mut StructureReport,
    label: &str,
    poly: &VPolytope,
    axis: usize,
    test: impl Fn(&Rational) -> bool,
) {
    if !poly.vertices().iter().all(|v| test(&v[axis])) {
        report.halfspace_violations.push(label.to_string());
    }
}

/// Halfspace containment, integrality, facet and interior-disjointness
/// checks for the ball `Q_i` (unit shifts).
pub fn check_qi_structure(config: &CyclicConfig, n: usize, i: usize, p: u64) -> Result<StructureReport> {
    let mut r = StructureReport::default();
    let ball = build_qi(config, n, i, p)?;
    if i == 0 {
        return Ok(r);
    }
    let one = Rational::one();
    let l = left_summand(config, n, i, p, 1)?;
    let rr = right_summand(config, n, i, p, 1)?;
    let lp = left_facet(config, n, i, 1)?;
    let rp = right_facet(config, n, i, p, 1)?;
    let m = middle_single(config, n, i, p, 1)?;
    check_halfspaces(&mut r, "L", &l, i, |x| *x <= -one.clone());
    check_halfspaces(&mut r, "R", &rr, i, |x| *x >= one);
    check_halfspaces(&mut r, "M", &m, i, |x| -one.clone() <= *x && *x <= one);
    for (label, poly) in [("L'", &lp), ("R'", &rp), ("M", &m)] {
        if !poly.denominator().is_one() {
            r.nonintegral.push(label.into());
        }
    }
    for (label, f, p) in [("L' in L", &lp, &l), ("L' in M", &lp, &m), ("R' in R", &rp, &rr), ("R' in M", &rp, &m)] {
        if !f.is_facet_of(p) {
            r.non_facets.push(label.into());
        }
    }
    r.overlapping_pieces = ball.overlapping_pairs()?;
    Ok(r)
}

/// The same checks for the glued ball `Q_*` with the given shifts.
pub fn check_qstar_structure(params: &ConstructionParams, shifts: &[u64]) -> Result<StructureReport> {
    let mut r = StructureReport::default();
    let n = params.n;
    let facets = designated_facets(params, shifts)?;
    let m = middle_star(params, shifts)?;
    let k0 = rat_u(shifts[0]);
    check_halfspaces(&mut r, "Q_0", &q0_piece(n, params.periods[0], shifts[0])?, 0, |x| *x <= -k0.clone());
    for i in 1..n {
        let k = rat_u(shifts[i]);
        let l = left_summand(&params.cyclic, n, i, params.periods[i], shifts[i])?;
        let rr = right_summand(&params.cyclic, n, i, params.periods[i], shifts[i])?;
        check_halfspaces(&mut r, &format!("L_{i}"), &l, i, |x| *x <= -k.clone());
        check_halfspaces(&mut r, &format!("R_{i}"), &rr, i, |x| *x >= k);
        check_halfspaces(&mut r, "M", &m, i, |x| -k.clone() <= *x && *x <= k);
    }
    for f in &facets {
        if !f.facet.denominator().is_one() {
            r.nonintegral.push(f.label.clone());
        }
        if !f.facet.is_facet_of(&m) {
            r.non_facets.push(f.label.clone());
        }
    }
    if !m.denominator().is_one() {
        r.nonintegral.push("M".into());
    }
    let ball = build_qstar(&params.clone().with_shifts(shifts.to_vec())?)?;
    r.overlapping_pieces = ball.overlapping_pairs()?;
    Ok(r)
}
