//! Exact convex rational polytope geometry.
//!
//! Polytopes are vertex lists; facet inequalities are derived on demand by
//! scanning hyperplanes spanned by vertex subsets, which is plenty at the
//! sizes used here (a few dozen vertices). Lower-dimensional polytopes keep
//! their ambient coordinates and carry affine-hull equalities.

mod hull;
mod json;
mod polytope;

pub use hull::{HRep, Hull, Inequality};
pub use polytope::{interiors_disjoint, pulling_triangulation, PolytopalBall, Target, VPolytope};

use num::BigInt;

use crate::error::Result;
use crate::rational::Rational;

pub fn make_polytope(ambient_dim: usize, points: Vec<Vec<Rational>>) -> Result<VPolytope> {
    VPolytope::new(ambient_dim, points)
}

pub fn translate(p: &VPolytope, v: &[Rational]) -> Result<VPolytope> {
    p.translate(v)
}

pub fn product(p: &VPolytope, q: &VPolytope) -> VPolytope {
    p.product(q)
}

pub fn pyramid(p: &VPolytope) -> VPolytope {
    p.pyramid()
}

pub fn pyr_power(p: &VPolytope, i: usize) -> VPolytope {
    p.pyr_power(i)
}

pub fn hrep(p: &VPolytope) -> Result<HRep> {
    p.hrep()
}

pub fn contains(p: &VPolytope, x: &[Rational]) -> Result<bool> {
    p.contains(x)
}

pub fn is_facet(f: &VPolytope, p: &VPolytope) -> bool {
    f.is_facet_of(p)
}

pub fn denominator(t: &Target) -> BigInt {
    t.denominator()
}

pub fn bounding_box(t: &Target, k: u64) -> Vec<(BigInt, BigInt)> {
    t.bounding_box(k)
}
