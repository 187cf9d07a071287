//! Rigid motions `x ↦ M·x + t` with `MᵀM = I`, and their action on pieces.

use crate::scalar::QuadScalar;

use super::linalg::{add, identity4, mat_mul, mat_vec, origin, transpose, Matrix4, Point4};
use super::piece::{Box4, Piece, Product2x2, Simplex4};
use super::polygon::{Point2, Polygon2};
use super::GeometryError;

type Block2 = [[QuadScalar; 2]; 2];

#[derive(Clone, Debug, PartialEq)]
pub struct IsometryMap {
    matrix: Matrix4,
    translation: Point4,
}

impl IsometryMap {
    pub fn new(matrix: Matrix4, translation: Point4) -> Result<Self, GeometryError> {
        if mat_mul(&transpose(&matrix), &matrix) != identity4() {
            return Err(GeometryError::NotOrthogonal);
        }
        Ok(IsometryMap { matrix, translation })
    }

    pub fn identity() -> Self {
        Self::translation(origin())
    }

    pub fn translation(t: Point4) -> Self {
        IsometryMap {
            matrix: identity4(),
            translation: t,
        }
    }

    /// Sends axis `i` to `signs[i] · e_{perm[i]}`, then translates by `t`.
    pub fn signed_permutation(perm: [usize; 4], signs: [i8; 4], t: Point4) -> Result<Self, GeometryError> {
        let mut seen = [false; 4];
        for (&p, &s) in perm.iter().zip(&signs) {
            if p >= 4 || seen[p] || (s != 1 && s != -1) {
                return Err(GeometryError::InvalidPermutation);
            }
            seen[p] = true;
        }
        let mut m: Matrix4 = std::array::from_fn(|_| std::array::from_fn(|_| QuadScalar::zero()));
        for i in 0..4 {
            m[perm[i]][i] = QuadScalar::from_int(signs[i].into());
        }
        Ok(IsometryMap {
            matrix: m,
            translation: t,
        })
    }

    /// Rotation by the angle with cosine `c` and sine `s` in the plane of axes `i → j`.
    pub fn plane_rotation(i: usize, j: usize, c: QuadScalar, s: QuadScalar) -> Result<Self, GeometryError> {
        if i >= 4 || j >= 4 || i == j {
            return Err(GeometryError::InvalidPermutation);
        }
        let mut m = identity4();
        m[j][j] = c.clone();
        m[i][j] = -&s;
        m[j][i] = s;
        m[i][i] = c;
        IsometryMap::new(m, origin())
    }

    pub fn matrix(&self) -> &Matrix4 {
        &self.matrix
    }

    pub fn translation_part(&self) -> &Point4 {
        &self.translation
    }

    pub fn apply(&self, p: &Point4) -> Point4 {
        add(&mat_vec(&self.matrix, p), &self.translation)
    }

    /// `self ∘ inner`: apply `inner` first.
    pub fn compose(&self, inner: &IsometryMap) -> IsometryMap {
        IsometryMap {
            matrix: mat_mul(&self.matrix, &inner.matrix),
            translation: self.apply(&inner.translation),
        }
    }

    pub fn inverse(&self) -> IsometryMap {
        let mt = transpose(&self.matrix);
        let back = mat_vec(&mt, &self.translation);
        IsometryMap {
            matrix: mt,
            translation: back.map(|x| -x),
        }
    }

    pub fn is_translation(&self) -> bool {
        self.matrix == identity4()
    }

    /// `(perm, signs)` when the linear part is a signed permutation.
    pub fn as_signed_permutation(&self) -> Option<([usize; 4], [i8; 4])> {
        let mut perm = [0usize; 4];
        let mut signs = [0i8; 4];
        for col in 0..4 {
            let nonzero: Vec<usize> = (0..4).filter(|&r| !self.matrix[r][col].is_zero()).collect();
            let [row] = nonzero[..] else { return None };
            let entry = &self.matrix[row][col];
            signs[col] = if *entry == QuadScalar::one() {
                1
            } else if *entry == QuadScalar::from_int(-1) {
                -1
            } else {
                return None;
            };
            perm[col] = row;
        }
        Some((perm, signs))
    }

    /// Image plane and 2×2 block when span(e_i, e_j) maps onto a coordinate plane.
    fn block(&self, (i, j): (usize, usize)) -> Option<((usize, usize), Block2)> {
        let rows: Vec<usize> = (0..4)
            .filter(|&r| !self.matrix[r][i].is_zero() || !self.matrix[r][j].is_zero())
            .collect();
        let [a, b] = rows[..] else { return None };
        let m = &self.matrix;
        Some((
            (a, b),
            [[m[a][i].clone(), m[a][j].clone()], [m[b][i].clone(), m[b][j].clone()]],
        ))
    }

    fn map_polygon(&self, poly: &Polygon2) -> Option<Polygon2> {
        let (plane, a) = self.block(poly.plane())?;
        let t = [self.translation[plane.0].clone(), self.translation[plane.1].clone()];
        Some(poly.mapped(plane, a, t))
    }
}

/// Image of a piece under an isometry.
///
/// Kinds are kept whenever the map respects them: signed permutations keep
/// boxes as boxes, and maps that send the factor planes onto coordinate
/// planes keep products as products (a box becomes a product of rectangles).
/// Any other map returns the image of the piece's staircase subdivision into
/// 4-simplices. A flat box has no such subdivision and maps to nothing.
pub fn apply_isometry(iso: &IsometryMap, piece: &Piece) -> Vec<Piece> {
    match piece {
        Piece::Simplex(s) => vec![map_simplex(iso, s.vertices())],
        Piece::Box(b) => {
            if let Some((perm, signs)) = iso.as_signed_permutation() {
                return vec![Piece::Box(map_box(iso, b, perm, signs))];
            }
            for planes in PAIRINGS {
                if let Some(prod) = b.as_product(planes) {
                    if let Some(p) = map_product(iso, &prod) {
                        return vec![Piece::Product(p)];
                    }
                }
            }
            box_simplices(b).iter().map(|v| map_simplex(iso, v)).collect()
        }
        Piece::Product(p) => match map_product(iso, p) {
            Some(image) => vec![Piece::Product(image)],
            None => product_simplices(p).iter().map(|v| map_simplex(iso, v)).collect(),
        },
    }
}

const PAIRINGS: [[(usize, usize); 2]; 3] = [[(0, 1), (2, 3)], [(0, 2), (1, 3)], [(0, 3), (1, 2)]];

fn map_simplex(iso: &IsometryMap, v: &[Point4; 5]) -> Piece {
    let image: [Point4; 5] = std::array::from_fn(|k| iso.apply(&v[k]));
    Piece::Simplex(Simplex4::new(image).expect("isometries preserve non-degeneracy"))
}

fn map_box(iso: &IsometryMap, b: &Box4, perm: [usize; 4], signs: [i8; 4]) -> Box4 {
    let mut out: [(QuadScalar, QuadScalar); 4] = std::array::from_fn(|_| (QuadScalar::zero(), QuadScalar::zero()));
    for (axis, (lo, hi)) in b.intervals().iter().enumerate() {
        let r = perm[axis];
        let t = &iso.translation[r];
        out[r] = if signs[axis] > 0 {
            (lo + t, hi + t)
        } else {
            (t - hi, t - lo)
        };
    }
    Box4::new(out).expect("signed permutations keep intervals ordered")
}

fn map_product(iso: &IsometryMap, p: &Product2x2) -> Option<Product2x2> {
    let first = iso.map_polygon(p.first())?;
    let second = iso.map_polygon(p.second())?;
    Product2x2::new(first, second).ok()
}

/// Orderings of the four axes; vertex `k` of the staircase simplex has ones
/// in the last `k` axes of the ordering.
fn orderings() -> Vec<[usize; 4]> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let o = [a, b, c, d];
                    let mut seen = [false; 4];
                    o.iter().for_each(|&i| seen[i] = true);
                    if seen.iter().all(|&s| s) {
                        out.push(o);
                    }
                }
            }
        }
    }
    out
}

fn staircase(order: &[usize; 4]) -> [[bool; 4]; 5] {
    std::array::from_fn(|k| {
        let mut row = [false; 4];
        for &axis in &order[4 - k..] {
            row[axis] = true;
        }
        row
    })
}

fn box_simplices(b: &Box4) -> Vec<[Point4; 5]> {
    if b.intervals().iter().any(|(lo, hi)| lo == hi) {
        return Vec::new();
    }
    orderings()
        .iter()
        .map(|o| {
            staircase(o).map(|row| {
                std::array::from_fn(|k| {
                    let (lo, hi) = &b.intervals()[k];
                    if row[k] {
                        hi.clone()
                    } else {
                        lo.clone()
                    }
                })
            })
        })
        .collect()
}

/// Fan-triangulates both factors and splits each triangle × triangle into the
/// six staircase simplices of the unit Δ × Δ.
fn product_simplices(p: &Product2x2) -> Vec<[Point4; 5]> {
    let fan = |poly: &Polygon2| -> Vec<[Point2; 3]> {
        let v = poly.vertices();
        (1..v.len() - 1)
            .map(|k| [v[0].clone(), v[k].clone(), v[k + 1].clone()])
            .collect()
    };
    // Δ_{x≤y} × Δ_{z≤w}: axis 0 before 1 and axis 2 before 3 in increasing order.
    let delta_delta: Vec<[usize; 4]> = orderings()
        .into_iter()
        .filter(|o| {
            let pos = |a: usize| o.iter().position(|&x| x == a).unwrap();
            pos(0) < pos(1) && pos(2) < pos(3)
        })
        .collect();
    let (pa, pb) = (p.first().plane(), p.second().plane());
    let affine = |t: &[Point2; 3], s: bool, l: bool| -> Point2 {
        // (s, l) ∈ Δ_{s≤l} ↦ A0 + l·(A1 − A0) + s·(A2 − A1)
        std::array::from_fn(|c| {
            let mut v = t[0][c].clone();
            if l {
                v = &v + &(&t[1][c] - &t[0][c]);
            }
            if s {
                v = &v + &(&t[2][c] - &t[1][c]);
            }
            v
        })
    };
    let mut out = Vec::new();
    for t1 in fan(p.first()) {
        for t2 in fan(p.second()) {
            for o in &delta_delta {
                out.push(staircase(o).map(|row| {
                    let u = affine(&t1, row[0], row[1]);
                    let v = affine(&t2, row[2], row[3]);
                    let mut x: Point4 = origin();
                    x[pa.0] = u[0].clone();
                    x[pa.1] = u[1].clone();
                    x[pb.0] = v[0].clone();
                    x[pb.1] = v[1].clone();
                    x
                }));
            }
        }
    }
    out
}
