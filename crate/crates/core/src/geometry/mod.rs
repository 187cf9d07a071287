//! Exact pieces in R⁴: simplices, boxes and products of convex polygons,
//! together with isometries, congruence search and tiling certificates.

mod certificate;
mod congruence;
mod isometry;
mod linalg;
mod piece;
mod polygon;
mod wireframe;

use thiserror::Error;

use crate::scalar::ScalarError;

pub use certificate::{certify_tiling, certify_tiling_2d, TilingCertificate};
pub use congruence::congruent;
pub use isometry::{apply_isometry, IsometryMap};
pub use linalg::{
    add, det, dot, identity4, mat_mul, mat_vec, norm2, origin, point4, scale, sub, transpose, Matrix4, Point4,
};
pub use piece::{Box4, HalfSpace, Piece, PieceClass, Product2x2, Simplex4};
pub use polygon::{cross2, point2, Point2, Polygon2};
pub use wireframe::{project_wireframe, Projection, Segment2};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("invalid polygon: {0}")]
    InvalidPolygon(String),
    #[error("simplex vertices are affinely dependent")]
    DegenerateSimplex,
    #[error("interval {0} has lower bound above upper bound")]
    InvalidBox(usize),
    #[error("polygon planes {0:?} and {1:?} do not partition the four axes")]
    PlaneOverlap((usize, usize), (usize, usize)),
    #[error("matrix is not orthogonal")]
    NotOrthogonal,
    #[error("invalid signed permutation")]
    InvalidPermutation,
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}
