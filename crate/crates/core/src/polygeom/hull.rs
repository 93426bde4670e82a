use itertools::Itertools;
use num::{BigInt, Signed, Zero};

use crate::linalg::{nullspace, rref};
use crate::rational::{dot_int, primitive_integer_vector, Rational};

/// `normal · x ≤ offset` (or `=` when used as an equality), with a primitive
/// integer normal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Inequality {
    pub normal: Vec<BigInt>,
    pub offset: Rational,
}

impl Inequality {
    pub fn eval(&self, x: &[Rational]) -> Rational {
        dot_int(&self.normal, x)
    }

    pub fn holds(&self, x: &[Rational]) -> bool {
        self.eval(x) <= self.offset
    }

    pub fn is_tight(&self, x: &[Rational]) -> bool {
        self.eval(x) == self.offset
    }
}

/// Facet description of a full-dimensional polytope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HRep {
    pub ambient_dim: usize,
    pub inequalities: Vec<Inequality>,
}

/// Affine hull plus the facets computed inside it.
///
/// Facets of a lower-dimensional polytope are found in the projection onto
/// the pivot coordinates of its direction space, which is injective on the
/// hull, and lifted back with zeros elsewhere. They are only meaningful
/// together with the equalities.
#[derive(Clone, Debug)]
pub struct Hull {
    pub dim: usize,
    pub equalities: Vec<Inequality>,
    pub facets: Vec<Inequality>,
}

impl Hull {
    pub fn compute(ambient_dim: usize, points: &[Vec<Rational>]) -> Self {
        let base = &points[0];
        let mut dirs: Vec<Vec<Rational>> = points[1..]
            .iter()
            .map(|p| p.iter().zip(base).map(|(a, b)| a - b).collect())
            .collect();
        let pivots = rref(&mut dirs, ambient_dim);
        let dim = pivots.len();

        let equalities = nullspace(&dirs, ambient_dim)
            .into_iter()
            .map(|v| {
                let normal = primitive_integer_vector(&v).expect("nullspace basis vectors are nonzero");
                let offset = dot_int(&normal, base);
                Inequality { normal, offset }
            })
            .collect();

        let facets = if dim == 0 {
            Vec::new()
        } else {
            let projected: Vec<Vec<Rational>> = points
                .iter()
                .map(|p| pivots.iter().map(|&c| p[c].clone()).collect())
                .collect();
            full_dimensional_facets(dim, &projected)
                .into_iter()
                .map(|f| {
                    let mut normal = vec![BigInt::zero(); ambient_dim];
                    for (&c, a) in pivots.iter().zip(f.normal) {
                        normal[c] = a;
                    }
                    Inequality {
                        normal,
                        offset: f.offset,
                    }
                })
                .collect()
        };

        Self {
            dim,
            equalities,
            facets,
        }
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.equalities.iter().all(|e| e.is_tight(x)) && self.facets.iter().all(|f| f.holds(x))
    }

    pub fn in_affine_hull(&self, x: &[Rational]) -> bool {
        self.equalities.iter().all(|e| e.is_tight(x))
    }
}

/// Facets of the hull of `points`, which must affinely span `R^d`.
///
/// Every affinely independent `d`-subset spans a candidate hyperplane; it is
/// kept when all points lie weakly on one side.
fn full_dimensional_facets(d: usize, points: &[Vec<Rational>]) -> Vec<Inequality> {
    let mut found: Vec<Inequality> = Vec::new();
    for subset in (0..points.len()).combinations(d) {
        // already spanned by a known facet
        if found
            .iter()
            .any(|f| subset.iter().all(|&j| f.is_tight(&points[j])))
        {
            continue;
        }
        let p0 = &points[subset[0]];
        let rows: Vec<Vec<Rational>> = subset[1..]
            .iter()
            .map(|&j| points[j].iter().zip(p0).map(|(a, b)| a - b).collect())
            .collect();
        let ns = nullspace(&rows, d);
        if ns.len() != 1 {
            continue;
        }
        let normal = primitive_integer_vector(&ns[0]).expect("nonzero normal");
        let offset = dot_int(&normal, p0);
        let (mut above, mut below) = (false, false);
        for p in points {
            let v = dot_int(&normal, p) - &offset;
            if v.is_positive() {
                above = true;
            } else if v.is_negative() {
                below = true;
            }
            if above && below {
                break;
            }
        }
        let ineq = match (above, below) {
            (false, _) => Inequality { normal, offset },
            (true, false) => Inequality {
                normal: normal.into_iter().map(|a| -a).collect(),
                offset: -offset,
            },
            (true, true) => continue,
        };
        if !found.contains(&ineq) {
            found.push(ineq);
        }
    }
    found.sort();
    found
}
