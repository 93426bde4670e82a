#![allow(dead_code)]

use ehrlab::constructions::{cyclic, pentagon, segment, CyclicConfig};
use ehrlab::polygeom::VPolytope;
use ehrlab::rational::int;
use ehrlab::Rational;
use num::{BigInt, ToPrimitive};
use rand::Rng;

/// Small building block: segment, pentagon, cyclic polytope or integer box.
pub fn random_block<R: Rng>(rng: &mut R) -> VPolytope {
    match rng.gen_range(0..4) {
        0 => segment(rng.gen_range(1..=4)).unwrap(),
        1 => pentagon(rng.gen_range(1..=3)).unwrap(),
        2 => cyclic(&CyclicConfig::standard(2), rng.gen_range(1..=2)).unwrap(),
        _ => {
            let a = rng.gen_range(1..=3);
            let b = rng.gen_range(1..=2);
            VPolytope::from_integer_points(2, &[&[0, 0], &[a, 0], &[0, b], &[a, b]]).unwrap()
        }
    }
}

/// A building block pushed through random pyramids, products and integer
/// translations, staying in dimension at most `max_dim`.
pub fn random_instance<R: Rng>(rng: &mut R, max_dim: usize) -> VPolytope {
    let mut p = random_block(rng);
    while p.ambient_dim() > max_dim {
        p = random_block(rng);
    }
    for _ in 0..rng.gen_range(0..=2) {
        match rng.gen_range(0..3) {
            0 if p.ambient_dim() < max_dim => p = p.pyramid(),
            1 if p.ambient_dim() < max_dim => p = p.product(&segment(rng.gen_range(1..=3)).unwrap()),
            _ => {
                let v: Vec<Rational> = (0..p.ambient_dim()).map(|_| int(rng.gen_range(-2..=2))).collect();
                p = p.translate(&v).unwrap();
            }
        }
    }
    p
}

/// Counts lattice points of `k·target` one box point at a time.
pub fn brute_count(contains: impl Fn(&[Rational]) -> bool, bbox: &[(BigInt, BigInt)]) -> u128 {
    let ranges: Vec<(i64, i64)> = bbox
        .iter()
        .map(|(lo, hi)| (lo.to_i64().unwrap(), hi.to_i64().unwrap()))
        .collect();
    let mut total = 0;
    let mut point = vec![0i64; ranges.len()];
    fn walk(
        depth: usize,
        ranges: &[(i64, i64)],
        point: &mut Vec<i64>,
        total: &mut u128,
        contains: &dyn Fn(&[Rational]) -> bool,
    ) {
        if depth == ranges.len() {
            let x: Vec<Rational> = point.iter().map(|&c| int(c)).collect();
            if contains(&x) {
                *total += 1;
            }
            return;
        }
        for c in ranges[depth].0..=ranges[depth].1 {
            point[depth] = c;
            walk(depth + 1, ranges, point, total, contains);
        }
    }
    walk(0, &ranges, &mut point, &mut total, &contains);
    total
}

/// Scales a point down by `k`, so membership in `k·P` becomes membership in `P`.
pub fn shrink(x: &[Rational], k: u64) -> Vec<Rational> {
    let k = int(k as i64);
    x.iter().map(|c| c / &k).collect()
}
