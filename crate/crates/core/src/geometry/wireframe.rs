//! Linear projection of piece skeletons to the drawing plane.

use std::str::FromStr;

use crate::scalar::{parse_rational, rat, rat_int, QuadScalar, Rational};

use super::piece::Piece;
use super::polygon::Point2;
use super::GeometryError;

pub type Segment2 = [Point2; 2];

/// A 4×2 rational matrix; row `i` is the drawing-plane image of axis `i`.
#[derive(Clone, Debug, PartialEq)]
pub struct Projection {
    rows: [[Rational; 2]; 4],
}

impl Projection {
    pub fn new(rows: [[Rational; 2]; 4]) -> Self {
        Projection { rows }
    }

    /// First plane pair drawn horizontally and vertically, the second along
    /// the two diagonals at half length.
    pub fn standard() -> Self {
        Projection::new([
            [rat_int(1), rat_int(0)],
            [rat_int(0), rat_int(1)],
            [rat(1, 2), rat(1, 2)],
            [rat(-1, 2), rat(1, 2)],
        ])
    }

    pub fn zero() -> Self {
        Projection::new(std::array::from_fn(|_| [rat_int(0), rat_int(0)]))
    }

    pub fn rows(&self) -> &[[Rational; 2]; 4] {
        &self.rows
    }

    pub fn project(&self, p: &[QuadScalar; 4]) -> Point2 {
        std::array::from_fn(|c| {
            (0..4)
                .map(|i| &p[i] * &QuadScalar::from_rational(self.rows[i][c].clone()))
                .sum()
        })
    }
}

impl Default for Projection {
    fn default() -> Self {
        Projection::standard()
    }
}

/// Parses eight comma-separated rationals in row-major order.
impl FromStr for Projection {
    type Err = GeometryError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let entries = s.split(',').map(parse_rational).collect::<Result<Vec<_>, _>>()?;
        if entries.len() != 8 {
            return Err(GeometryError::Scalar(crate::scalar::ScalarError::Parse(s.to_string())));
        }
        Ok(Projection::new(std::array::from_fn(|i| {
            [entries[2 * i].clone(), entries[2 * i + 1].clone()]
        })))
    }
}

pub fn project_wireframe(piece: &Piece, projection: &Projection) -> Vec<Segment2> {
    piece
        .edges()
        .iter()
        .map(|(a, b)| [projection.project(a), projection.project(b)])
        .collect()
}
