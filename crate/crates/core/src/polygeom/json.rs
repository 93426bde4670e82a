//! Polytope and ball files.
//!
//! Polytope: `{"ambient_dim": n, "vertices": [["a/b", ...], ...]}`.
//! Ball: `{"ambient_dim": n, "pieces": [<polytope>, ...]}`.
//! Unknown top-level fields (such as `provenance`) are ignored on input.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::polytope::{PolytopalBall, Target, VPolytope};
use crate::error::{Error, Result};
use crate::rational::{format_rational, parse_rational};

#[derive(Serialize, Deserialize)]
struct PolytopeJson {
    ambient_dim: usize,
    vertices: Vec<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
struct BallJson {
    ambient_dim: usize,
    pieces: Vec<PolytopeJson>,
}

fn encode_polytope(p: &VPolytope) -> PolytopeJson {
    PolytopeJson {
        ambient_dim: p.ambient_dim(),
        vertices: p
            .vertices()
            .iter()
            .map(|v| v.iter().map(format_rational).collect())
            .collect(),
    }
}

fn decode_polytope(raw: PolytopeJson) -> Result<VPolytope> {
    let points = raw
        .vertices
        .iter()
        .map(|v| v.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    VPolytope::new(raw.ambient_dim, points)
}

fn parse_err(e: serde_json::Error) -> Error {
    Error::Parse(e.to_string())
}

impl VPolytope {
    pub fn to_json_value(&self) -> Value {
        serde_json::to_value(encode_polytope(self)).expect("polytope serializes")
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        decode_polytope(serde_json::from_str(s).map_err(parse_err)?)
    }
}

impl PolytopalBall {
    pub fn to_json_value(&self) -> Value {
        serde_json::to_value(BallJson {
            ambient_dim: self.ambient_dim(),
            pieces: self.pieces().iter().map(encode_polytope).collect(),
        })
        .expect("ball serializes")
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let raw: BallJson = serde_json::from_str(s).map_err(parse_err)?;
        ball_from_raw(raw)
    }
}

fn ball_from_raw(raw: BallJson) -> Result<PolytopalBall> {
    let pieces = raw
        .pieces
        .into_iter()
        .map(|p| {
            if p.ambient_dim != raw.ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: raw.ambient_dim,
                    found: p.ambient_dim,
                });
            }
            decode_polytope(p)
        })
        .collect::<Result<Vec<_>>>()?;
    if pieces.is_empty() {
        return Err(Error::Parse("ball has no pieces".into()));
    }
    PolytopalBall::new(pieces)
}

impl Target {
    pub fn to_json_value(&self) -> Value {
        match self {
            Target::Polytope(p) => p.to_json_value(),
            Target::Ball(b) => b.to_json_value(),
        }
    }

    /// Reads either file kind; the presence of `pieces` selects a ball.
    pub fn from_json_str(s: &str) -> Result<Self> {
        let value: Value = serde_json::from_str(s).map_err(parse_err)?;
        if value.get("pieces").is_some() {
            Ok(Target::Ball(ball_from_raw(
                serde_json::from_value(value).map_err(parse_err)?,
            )?))
        } else {
            Ok(Target::Polytope(decode_polytope(
                serde_json::from_value(value).map_err(parse_err)?,
            )?))
        }
    }
}
