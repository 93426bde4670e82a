use std::sync::{Arc, OnceLock};

use num::{BigInt, One, Signed, Zero};

use super::hull::{HRep, Hull, Inequality};
use crate::error::{Error, Result};
use crate::linalg::abs_determinant;
use crate::lp::{self, Constraint, LpOutcome, Relation};
use crate::rational::{ceil_int, denominator_lcm, floor_int, Rational};

/// A convex rational polytope given by its vertices.
///
/// Vertices are deduplicated, restricted to extreme points and kept in
/// lexicographic order, so two polytopes are equal iff their vertex sets
/// are. The facet description is computed on first use and memoized.
#[derive(Clone, Debug)]
pub struct VPolytope {
    ambient_dim: usize,
    vertices: Vec<Vec<Rational>>,
    hull: OnceLock<Arc<Hull>>,
}

impl PartialEq for VPolytope {
    fn eq(&self, other: &Self) -> bool {
        self.ambient_dim == other.ambient_dim && self.vertices == other.vertices
    }
}

impl Eq for VPolytope {}

/// Whether `x` is a convex combination of `others`.
pub(crate) fn in_convex_hull_lp(others: &[&Vec<Rational>], x: &[Rational]) -> bool {
    if others.is_empty() {
        return false;
    }
    let n = x.len();
    let mut constraints: Vec<Constraint> = (0..n)
        .map(|c| {
            Constraint::new(
                others.iter().map(|v| v[c].clone()).collect(),
                Relation::Eq,
                x[c].clone(),
            )
        })
        .collect();
    constraints.push(Constraint::new(
        vec![Rational::one(); others.len()],
        Relation::Eq,
        Rational::one(),
    ));
    lp::feasible(others.len(), &constraints)
}

fn check_points(ambient_dim: usize, points: &[Vec<Rational>]) -> Result<()> {
    if points.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    if let Some(p) = points.iter().find(|p| p.len() != ambient_dim) {
        return Err(Error::RaggedPoints {
            expected: ambient_dim,
            found: p.len(),
        });
    }
    Ok(())
}

impl VPolytope {
    /// Convex hull of `points`: duplicates are dropped and every point that
    /// is a convex combination of the others is pruned.
    pub fn new(ambient_dim: usize, points: Vec<Vec<Rational>>) -> Result<Self> {
        check_points(ambient_dim, &points)?;
        let mut pts = points;
        pts.sort();
        pts.dedup();
        let mut keep = vec![true; pts.len()];
        for i in 0..pts.len() {
            let others: Vec<&Vec<Rational>> = pts
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i && keep[j])
                .map(|(_, p)| p)
                .collect();
            if in_convex_hull_lp(&others, &pts[i]) {
                keep[i] = false;
            }
        }
        let vertices = pts
            .into_iter()
            .zip(keep)
            .filter_map(|(p, k)| k.then_some(p))
            .collect();
        Ok(Self::from_extreme_points(ambient_dim, vertices))
    }

    /// Trusts that `vertices` are pairwise distinct extreme points.
    pub(crate) fn from_extreme_points(ambient_dim: usize, mut vertices: Vec<Vec<Rational>>) -> Self {
        vertices.sort();
        vertices.dedup();
        Self {
            ambient_dim,
            vertices,
            hull: OnceLock::new(),
        }
    }

    /// The single point of `R^0`; the identity for [`product`](Self::product).
    pub fn unit() -> Self {
        Self::from_extreme_points(0, vec![vec![]])
    }

    pub fn from_integer_points(ambient_dim: usize, points: &[&[i64]]) -> Result<Self> {
        Self::new(
            ambient_dim,
            points
                .iter()
                .map(|p| p.iter().map(|&v| Rational::from_integer(v.into())).collect())
                .collect(),
        )
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn vertices(&self) -> &[Vec<Rational>] {
        &self.vertices
    }

    pub fn hull(&self) -> &Hull {
        self.hull
            .get_or_init(|| Arc::new(Hull::compute(self.ambient_dim, &self.vertices)))
    }

    pub fn dim(&self) -> usize {
        self.hull().dim
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    pub fn hrep(&self) -> Result<HRep> {
        if !self.is_full_dimensional() {
            return Err(Error::NotFullDimensional {
                dim: self.dim(),
                ambient: self.ambient_dim,
            });
        }
        Ok(HRep {
            ambient_dim: self.ambient_dim,
            inequalities: self.hull().facets.clone(),
        })
    }

    /// Equalities of the affine hull followed by the facets inside it.
    pub fn constraints(&self) -> (&[Inequality], &[Inequality]) {
        let h = self.hull();
        (&h.equalities, &h.facets)
    }

    pub fn contains(&self, x: &[Rational]) -> Result<bool> {
        if x.len() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: x.len(),
            });
        }
        Ok(self.hull().contains(x))
    }

    pub fn translate(&self, v: &[Rational]) -> Result<Self> {
        if v.len() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: v.len(),
            });
        }
        Ok(Self::from_extreme_points(
            self.ambient_dim,
            self.vertices
                .iter()
                .map(|p| p.iter().zip(v).map(|(a, b)| a + b).collect())
                .collect(),
        ))
    }

    /// Shift by `amount` along the standard basis vector `e_axis` (0-based).
    pub fn translate_axis(&self, axis: usize, amount: &Rational) -> Self {
        let mut v = vec![Rational::zero(); self.ambient_dim];
        v[axis] = amount.clone();
        self.translate(&v).expect("axis vector has the ambient dimension")
    }

    /// Cartesian product; `self`'s coordinates come first.
    pub fn product(&self, other: &Self) -> Self {
        let mut verts = Vec::with_capacity(self.vertices.len() * other.vertices.len());
        for u in &self.vertices {
            for w in &other.vertices {
                let mut p = u.clone();
                p.extend(w.iter().cloned());
                verts.push(p);
            }
        }
        Self::from_extreme_points(self.ambient_dim + other.ambient_dim, verts)
    }

    /// `conv({(x, 0)} ∪ {e_{d+1}})`.
    pub fn pyramid(&self) -> Self {
        let d = self.ambient_dim;
        let mut verts: Vec<Vec<Rational>> = self
            .vertices
            .iter()
            .map(|p| {
                let mut q = p.clone();
                q.push(Rational::zero());
                q
            })
            .collect();
        let mut apex = vec![Rational::zero(); d + 1];
        apex[d] = Rational::one();
        verts.push(apex);
        Self::from_extreme_points(d + 1, verts)
    }

    pub fn pyr_power(&self, i: usize) -> Self {
        (0..i).fold(self.clone(), |p, _| p.pyramid())
    }

    /// Least common multiple of all vertex coordinate denominators.
    pub fn denominator(&self) -> BigInt {
        denominator_lcm(self.vertices.iter().flatten())
    }

    /// Integer ranges `[ceil(k·min), floor(k·max)]` per coordinate.
    pub fn bounding_box(&self, k: u64) -> Vec<(BigInt, BigInt)> {
        let kk = Rational::from_integer(k.into());
        (0..self.ambient_dim)
            .map(|c| {
                let lo = self.vertices.iter().map(|p| &p[c]).min().expect("nonempty");
                let hi = self.vertices.iter().map(|p| &p[c]).max().expect("nonempty");
                (ceil_int(&(lo * &kk)), floor_int(&(hi * &kk)))
            })
            .collect()
    }

    /// Whether `self` is a facet of `p`: one dimension lower, its affine hull
    /// supports `p`, and the vertices of `p` on that hull are exactly the
    /// points of `p` lying in `self`.
    pub fn is_facet_of(&self, p: &VPolytope) -> bool {
        if self.ambient_dim != p.ambient_dim || self.dim() + 1 != p.dim() {
            return false;
        }
        let ph = p.hull();
        if !self.vertices.iter().all(|v| ph.contains(v)) {
            return false;
        }
        // an equality of self's hull that is not constant on p cuts out the
        // hyperplane of self inside aff(p)
        let Some(h) = self.hull().equalities.iter().find(|e| {
            let first = e.eval(&p.vertices[0]);
            p.vertices.iter().any(|v| e.eval(v) != first)
        }) else {
            return false;
        };
        let signs: Vec<Rational> = p.vertices.iter().map(|v| h.eval(v) - &h.offset).collect();
        let supporting = signs.iter().all(|s| !s.is_positive()) || signs.iter().all(|s| !s.is_negative());
        if !supporting {
            return false;
        }
        let fh = self.hull();
        p.vertices
            .iter()
            .zip(&signs)
            .filter(|(_, s)| s.is_zero())
            .all(|(v, _)| fh.contains(v))
    }

    /// Exact volume via the pulling triangulation from the first vertex;
    /// the point `R^0` has volume 1.
    pub fn volume(&self) -> Result<Rational> {
        if !self.is_full_dimensional() {
            return Err(Error::NotFullDimensional {
                dim: self.dim(),
                ambient: self.ambient_dim,
            });
        }
        let d = self.ambient_dim;
        let factorial: BigInt = (1..=d).fold(BigInt::one(), |acc, i| acc * BigInt::from(i));
        let mut total = Rational::zero();
        for simplex in pulling_triangulation(self) {
            let rows: Vec<Vec<Rational>> = simplex[1..]
                .iter()
                .map(|p| p.iter().zip(&simplex[0]).map(|(a, b)| a - b).collect())
                .collect();
            total += abs_determinant(&rows);
        }
        Ok(total / Rational::from_integer(factorial))
    }
}

/// Simplices (as vertex lists) of the pulling triangulation: cone from the
/// first vertex over a recursive triangulation of every facet avoiding it.
pub fn pulling_triangulation(p: &VPolytope) -> Vec<Vec<Vec<Rational>>> {
    let d = p.dim();
    if p.vertices.len() == d + 1 {
        return vec![p.vertices.clone()];
    }
    let apex = &p.vertices[0];
    let mut out = Vec::new();
    for f in &p.hull().facets {
        if f.is_tight(apex) {
            continue;
        }
        let face_pts: Vec<Vec<Rational>> = p
            .vertices
            .iter()
            .filter(|v| f.is_tight(v))
            .cloned()
            .collect();
        let face = VPolytope::from_extreme_points(p.ambient_dim, face_pts);
        for mut s in pulling_triangulation(&face) {
            s.insert(0, apex.clone());
            out.push(s);
        }
    }
    out
}

/// Whether the interiors of two full-dimensional polytopes are disjoint.
///
/// Maximizes a common slack `s` with `a·x + s ≤ b` over both facet systems;
/// the interiors meet iff the optimum is positive.
pub fn interiors_disjoint(p: &VPolytope, q: &VPolytope) -> Result<bool> {
    if p.ambient_dim != q.ambient_dim {
        return Err(Error::DimensionMismatch {
            expected: p.ambient_dim,
            found: q.ambient_dim,
        });
    }
    let hp = p.hrep()?;
    let hq = q.hrep()?;
    let n = p.ambient_dim;
    // x = x⁺ - x⁻, then s
    let nvars = 2 * n + 1;
    let mut constraints: Vec<Constraint> = hp
        .inequalities
        .iter()
        .chain(&hq.inequalities)
        .map(|f| {
            let mut coeffs = Vec::with_capacity(nvars);
            coeffs.extend(f.normal.iter().map(|a| Rational::from_integer(a.clone())));
            coeffs.extend(f.normal.iter().map(|a| Rational::from_integer(-a.clone())));
            coeffs.push(Rational::one());
            Constraint::new(coeffs, Relation::Le, f.offset.clone())
        })
        .collect();
    let mut cap = vec![Rational::zero(); nvars];
    cap[2 * n] = Rational::one();
    constraints.push(Constraint::new(cap.clone(), Relation::Le, Rational::one()));
    Ok(match lp::maximize(&cap, &constraints) {
        LpOutcome::Optimal { value, .. } => !value.is_positive(),
        LpOutcome::Infeasible => true,
        LpOutcome::Unbounded => unreachable!("slack is capped"),
    })
}

/// A finite union of full-dimensional convex pieces in a common `R^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolytopalBall {
    ambient_dim: usize,
    pieces: Vec<VPolytope>,
}

impl PolytopalBall {
    pub fn new(pieces: Vec<VPolytope>) -> Result<Self> {
        let first = pieces.first().ok_or(Error::EmptyPointSet)?;
        let ambient_dim = first.ambient_dim();
        for p in &pieces {
            if p.ambient_dim() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: ambient_dim,
                    found: p.ambient_dim(),
                });
            }
            if !p.is_full_dimensional() {
                return Err(Error::NotFullDimensional {
                    dim: p.dim(),
                    ambient: ambient_dim,
                });
            }
        }
        Ok(Self {
            ambient_dim,
            pieces,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn pieces(&self) -> &[VPolytope] {
        &self.pieces
    }

    pub fn contains(&self, x: &[Rational]) -> Result<bool> {
        for p in &self.pieces {
            if p.contains(x)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Pairs of pieces (by index) whose interiors meet.
    pub fn overlapping_pairs(&self) -> Result<Vec<(usize, usize)>> {
        let mut out = Vec::new();
        for i in 0..self.pieces.len() {
            for j in i + 1..self.pieces.len() {
                if !interiors_disjoint(&self.pieces[i], &self.pieces[j])? {
                    out.push((i, j));
                }
            }
        }
        Ok(out)
    }
}

/// Anything whose dilates can be counted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Target {
    Polytope(VPolytope),
    Ball(PolytopalBall),
}

impl Target {
    pub fn ambient_dim(&self) -> usize {
        match self {
            Target::Polytope(p) => p.ambient_dim(),
            Target::Ball(b) => b.ambient_dim(),
        }
    }

    pub fn pieces(&self) -> &[VPolytope] {
        match self {
            Target::Polytope(p) => std::slice::from_ref(p),
            Target::Ball(b) => b.pieces(),
        }
    }

    pub fn denominator(&self) -> BigInt {
        self.pieces()
            .iter()
            .fold(BigInt::one(), |acc, p| num::Integer::lcm(&acc, &p.denominator()))
    }

    pub fn bounding_box(&self, k: u64) -> Vec<(BigInt, BigInt)> {
        let boxes: Vec<_> = self.pieces().iter().map(|p| p.bounding_box(k)).collect();
        (0..self.ambient_dim())
            .map(|c| {
                let lo = boxes.iter().map(|b| &b[c].0).min().expect("nonempty").clone();
                let hi = boxes.iter().map(|b| &b[c].1).max().expect("nonempty").clone();
                (lo, hi)
            })
            .collect()
    }

    pub fn contains(&self, x: &[Rational]) -> Result<bool> {
        match self {
            Target::Polytope(p) => p.contains(x),
            Target::Ball(b) => b.contains(x),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.pieces().iter().map(|p| p.vertices().len()).sum()
    }
}

impl From<VPolytope> for Target {
    fn from(p: VPolytope) -> Self {
        Target::Polytope(p)
    }
}

impl From<PolytopalBall> for Target {
    fn from(b: PolytopalBall) -> Self {
        Target::Ball(b)
    }
}
