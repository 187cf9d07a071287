//! The three piece kinds and their exact measurements.

use crate::scalar::QuadScalar;

use super::linalg::{add, det, dot, normal_to, sub, Point4};
use super::polygon::{Point2, Polygon2};
use super::GeometryError;

/// The closed half-space `normal · x ≤ offset`.
#[derive(Clone, Debug, PartialEq)]
pub struct HalfSpace {
    pub normal: Point4,
    pub offset: QuadScalar,
}

impl HalfSpace {
    pub fn holds(&self, p: &Point4) -> bool {
        !(&dot(&self.normal, p) - &self.offset).is_positive()
    }

    /// True when `p` lies on the closed outer side (`normal · p ≥ offset`).
    fn outside_or_on(&self, p: &Point4) -> bool {
        !(&dot(&self.normal, p) - &self.offset).is_negative()
    }
}

/// A non-degenerate 4-simplex.
#[derive(Clone, Debug, PartialEq)]
pub struct Simplex4 {
    // boxed: exact coordinates are large and Piece moves around a lot
    vertices: Box<[Point4; 5]>,
}

impl Simplex4 {
    pub fn new(vertices: [Point4; 5]) -> Result<Self, GeometryError> {
        if edge_det(&vertices).is_zero() {
            return Err(GeometryError::DegenerateSimplex);
        }
        Ok(Simplex4 {
            vertices: Box::new(vertices),
        })
    }

    pub fn vertices(&self) -> &[Point4; 5] {
        &self.vertices
    }
}

fn edge_det(v: &[Point4; 5]) -> QuadScalar {
    let rows: Vec<Vec<QuadScalar>> = (1..5).map(|i| sub(&v[i], &v[0]).to_vec()).collect();
    det(&rows)
}

/// Axis-aligned box `[lo₀,hi₀] × … × [lo₃,hi₃]`; flat boxes are allowed.
#[derive(Clone, Debug, PartialEq)]
pub struct Box4 {
    intervals: Box<[(QuadScalar, QuadScalar); 4]>,
}

impl Box4 {
    pub fn new(intervals: [(QuadScalar, QuadScalar); 4]) -> Result<Self, GeometryError> {
        for (k, (lo, hi)) in intervals.iter().enumerate() {
            if (hi - lo).is_negative() {
                return Err(GeometryError::InvalidBox(k));
            }
        }
        Ok(Box4 {
            intervals: Box::new(intervals),
        })
    }

    pub fn intervals(&self) -> &[(QuadScalar, QuadScalar); 4] {
        &self.intervals
    }

    fn corner(&self, mask: usize) -> Point4 {
        std::array::from_fn(|k| {
            let (lo, hi) = &self.intervals[k];
            if mask >> k & 1 == 1 {
                hi.clone()
            } else {
                lo.clone()
            }
        })
    }

    /// The same region as a product of rectangles in `planes`, if not flat.
    pub fn as_product(&self, planes: [(usize, usize); 2]) -> Option<Product2x2> {
        let rect = |(i, j): (usize, usize)| {
            Polygon2::rectangle((i, j), self.intervals[i].clone(), self.intervals[j].clone()).ok()
        };
        Product2x2::new(rect(planes[0])?, rect(planes[1])?).ok()
    }
}

/// Product of two convex polygons whose planes partition the four axes.
#[derive(Clone, Debug, PartialEq)]
pub struct Product2x2 {
    first: Polygon2,
    second: Polygon2,
}

impl Product2x2 {
    pub fn new(first: Polygon2, second: Polygon2) -> Result<Self, GeometryError> {
        let (a, b) = (first.plane(), second.plane());
        let mut axes = [a.0, a.1, b.0, b.1];
        axes.sort_unstable();
        if axes != [0, 1, 2, 3] {
            return Err(GeometryError::PlaneOverlap(a, b));
        }
        Ok(Product2x2 { first, second })
    }

    pub fn first(&self) -> &Polygon2 {
        &self.first
    }

    pub fn second(&self) -> &Polygon2 {
        &self.second
    }

    fn lift(&self, p: &Point2, q: &Point2) -> Point4 {
        let mut out: Point4 = std::array::from_fn(|_| QuadScalar::zero());
        let (a, b) = (self.first.plane(), self.second.plane());
        out[a.0] = p[0].clone();
        out[a.1] = p[1].clone();
        out[b.0] = q[0].clone();
        out[b.1] = q[1].clone();
        out
    }

    /// Factor polygons re-expressed in the plane orientation of `planes`,
    /// or `None` when the plane pairs differ.
    fn factors_in(&self, planes: [(usize, usize); 2]) -> Option<[Polygon2; 2]> {
        let fit = |poly: &Polygon2, want: (usize, usize)| {
            if poly.plane() == want {
                Some(poly.clone())
            } else if poly.plane() == (want.1, want.0) {
                Some(poly.with_swapped_axes())
            } else {
                None
            }
        };
        let same = |p: &Polygon2, q: &Polygon2| Some([fit(p, planes[0])?, fit(q, planes[1])?]);
        same(&self.first, &self.second).or_else(|| same(&self.second, &self.first))
    }

    fn planes(&self) -> [(usize, usize); 2] {
        [self.first.plane(), self.second.plane()]
    }
}

/// Coarse shape class, used for censuses and drawing palettes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PieceClass {
    Simplex,
    Box,
    TriangleTriangle,
    TriangleQuad,
    QuadTriangle,
    QuadQuad,
    PolygonPolygon,
}

impl PieceClass {
    pub fn label(self) -> &'static str {
        match self {
            PieceClass::Simplex => "simplex",
            PieceClass::Box => "box",
            PieceClass::TriangleTriangle => "triangle*triangle",
            PieceClass::TriangleQuad => "triangle*quad",
            PieceClass::QuadTriangle => "quad*triangle",
            PieceClass::QuadQuad => "quad*quad",
            PieceClass::PolygonPolygon => "polygon*polygon",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Piece {
    Simplex(Simplex4),
    Box(Box4),
    Product(Product2x2),
}

impl From<Simplex4> for Piece {
    fn from(s: Simplex4) -> Self {
        Piece::Simplex(s)
    }
}

impl From<Box4> for Piece {
    fn from(b: Box4) -> Self {
        Piece::Box(b)
    }
}

impl From<Product2x2> for Piece {
    fn from(p: Product2x2) -> Self {
        Piece::Product(p)
    }
}

impl Piece {
    pub fn simplex(vertices: [Point4; 5]) -> Result<Self, GeometryError> {
        Simplex4::new(vertices).map(Piece::Simplex)
    }

    pub fn boxed(intervals: [(QuadScalar, QuadScalar); 4]) -> Result<Self, GeometryError> {
        Box4::new(intervals).map(Piece::Box)
    }

    pub fn product(first: Polygon2, second: Polygon2) -> Result<Self, GeometryError> {
        Product2x2::new(first, second).map(Piece::Product)
    }

    /// `[0, edge]⁴`.
    pub fn cube(edge: &QuadScalar) -> Self {
        Piece::Box(Box4 {
            intervals: Box::new(std::array::from_fn(|_| (QuadScalar::zero(), edge.clone()))),
        })
    }

    pub fn class(&self) -> PieceClass {
        match self {
            Piece::Simplex(_) => PieceClass::Simplex,
            Piece::Box(_) => PieceClass::Box,
            Piece::Product(p) => match (p.first.len(), p.second.len()) {
                (3, 3) => PieceClass::TriangleTriangle,
                (3, 4) => PieceClass::TriangleQuad,
                (4, 3) => PieceClass::QuadTriangle,
                (4, 4) => PieceClass::QuadQuad,
                _ => PieceClass::PolygonPolygon,
            },
        }
    }

    pub fn volume(&self) -> QuadScalar {
        match self {
            Piece::Simplex(s) => edge_det(&s.vertices).abs() / QuadScalar::from_int(24),
            Piece::Box(b) => b.intervals.iter().map(|(lo, hi)| hi - lo).product(),
            Piece::Product(p) => p.first.area() * p.second.area(),
        }
    }

    /// Vertices of the convex hull, without repetition.
    pub fn vertices(&self) -> Vec<Point4> {
        match self {
            Piece::Simplex(s) => s.vertices.to_vec(),
            Piece::Box(b) => {
                let mut out: Vec<Point4> = Vec::with_capacity(16);
                for mask in 0..16 {
                    let c = b.corner(mask);
                    if !out.contains(&c) {
                        out.push(c);
                    }
                }
                out
            }
            Piece::Product(p) => p
                .first
                .vertices()
                .iter()
                .flat_map(|u| p.second.vertices().iter().map(move |v| p.lift(u, v)))
                .collect(),
        }
    }

    /// One-dimensional skeleton as vertex pairs.
    pub fn edges(&self) -> Vec<(Point4, Point4)> {
        match self {
            Piece::Simplex(s) => {
                let v = &s.vertices;
                let mut out = Vec::with_capacity(10);
                for i in 0..5 {
                    for j in i + 1..5 {
                        out.push((v[i].clone(), v[j].clone()));
                    }
                }
                out
            }
            Piece::Box(b) => {
                let mut out = Vec::with_capacity(32);
                for mask in 0..16usize {
                    for k in 0..4 {
                        if mask >> k & 1 == 0 {
                            out.push((b.corner(mask), b.corner(mask | 1 << k)));
                        }
                    }
                }
                out
            }
            Piece::Product(p) => {
                let mut out = Vec::new();
                for (a, b) in p.first.edges() {
                    for q in p.second.vertices() {
                        out.push((p.lift(a, q), p.lift(b, q)));
                    }
                }
                for u in p.first.vertices() {
                    for (a, b) in p.second.edges() {
                        out.push((p.lift(u, a), p.lift(u, b)));
                    }
                }
                out
            }
        }
    }

    /// Half-space description `n · x ≤ c`.
    pub fn facets(&self) -> Vec<HalfSpace> {
        match self {
            Piece::Simplex(s) => {
                let v = &s.vertices;
                (0..5)
                    .map(|skip| {
                        let idx: Vec<usize> = (0..5).filter(|&i| i != skip).collect();
                        let base = &v[idx[0]];
                        let e: Vec<Point4> = idx[1..].iter().map(|&i| sub(&v[i], base)).collect();
                        let n = normal_to([&e[0], &e[1], &e[2]]);
                        let c = dot(&n, base);
                        let h = HalfSpace { normal: n, offset: c };
                        if h.holds(&v[skip]) {
                            h
                        } else {
                            HalfSpace {
                                normal: h.normal.map(|x| -x),
                                offset: -h.offset,
                            }
                        }
                    })
                    .collect()
            }
            Piece::Box(b) => {
                let mut out = Vec::with_capacity(8);
                for (k, (lo, hi)) in b.intervals.iter().enumerate() {
                    let unit = |s: i64| -> Point4 {
                        std::array::from_fn(|i| QuadScalar::from_int(if i == k { s } else { 0 }))
                    };
                    out.push(HalfSpace {
                        normal: unit(1),
                        offset: hi.clone(),
                    });
                    out.push(HalfSpace {
                        normal: unit(-1),
                        offset: -lo,
                    });
                }
                out
            }
            Piece::Product(p) => {
                let mut out = Vec::new();
                for poly in [&p.first, &p.second] {
                    let (i, j) = poly.plane();
                    for (a, b) in poly.edges() {
                        let du = &b[0] - &a[0];
                        let dv = &b[1] - &a[1];
                        let mut n: Point4 = std::array::from_fn(|_| QuadScalar::zero());
                        n[i] = dv.clone();
                        n[j] = -&du;
                        let c = &dv * &a[0] - &du * &a[1];
                        out.push(HalfSpace { normal: n, offset: c });
                    }
                }
                out
            }
        }
    }

    /// Closed point containment.
    pub fn contains_point(&self, x: &Point4) -> bool {
        match self {
            Piece::Box(b) => b
                .intervals
                .iter()
                .zip(x)
                .all(|((lo, hi), c)| !(c - lo).is_negative() && !(hi - c).is_negative()),
            Piece::Product(p) => [&p.first, &p.second].iter().all(|poly| {
                let (i, j) = poly.plane();
                poly.contains_point(&[x[i].clone(), x[j].clone()])
            }),
            Piece::Simplex(_) => self.facets().iter().all(|h| h.holds(x)),
        }
    }

    /// `other ⊆ self`; vertex containment suffices because both are convex.
    pub fn contains(&self, other: &Piece) -> bool {
        if let Some(ok) = self.contains_by_factors(other) {
            return ok;
        }
        match self {
            Piece::Simplex(_) => {
                let facets = self.facets();
                other.vertices().iter().all(|v| facets.iter().all(|h| h.holds(v)))
            }
            _ => other.vertices().iter().all(|v| self.contains_point(v)),
        }
    }

    /// True when the interiors are shown to be disjoint.
    ///
    /// Boxes and products with matching plane pairs are decided exactly
    /// factor by factor. Other pairs look for a separating facet hyperplane,
    /// which is sound but may miss separations along lower-dimensional faces.
    pub fn interior_disjoint(&self, other: &Piece) -> bool {
        self.volume().is_zero() || other.volume().is_zero() || self.separated_from(other)
    }

    /// Products (or boxes) over the same plane pair compare factor by factor.
    fn contains_by_factors(&self, other: &Piece) -> Option<bool> {
        let (outer, inner) = match (self, other) {
            (Piece::Product(p), Piece::Product(q)) => (p.clone(), q.factors_in(p.planes())?),
            (Piece::Box(b), Piece::Product(q)) => {
                let p = b.as_product(q.planes())?;
                (p, [q.first.clone(), q.second.clone()])
            }
            (Piece::Product(p), Piece::Box(b)) => {
                let q = b.as_product(p.planes())?;
                (p.clone(), [q.first, q.second])
            }
            _ => return None,
        };
        Some(outer.first.contains(&inner[0]) && outer.second.contains(&inner[1]))
    }

    /// The plane pair of a product piece.
    pub(crate) fn product_planes(&self) -> Option<[(usize, usize); 2]> {
        match self {
            Piece::Product(p) => Some(p.planes()),
            _ => None,
        }
    }

    /// Factors over `planes` of a product, or of a box read as a product.
    pub(crate) fn product_factors(&self, planes: [(usize, usize); 2]) -> Option<[Polygon2; 2]> {
        match self {
            Piece::Product(p) => p.factors_in(planes),
            Piece::Box(b) => b.as_product(planes).map(|p| [p.first, p.second]),
            Piece::Simplex(_) => None,
        }
    }

    /// [`Piece::interior_disjoint`] for pieces already known to be full-dimensional.
    pub(crate) fn separated_from(&self, other: &Piece) -> bool {
        match (self, other) {
            (Piece::Box(a), Piece::Box(b)) => a
                .intervals
                .iter()
                .zip(b.intervals.iter())
                .any(|((alo, ahi), (blo, bhi))| !(ahi - blo).is_positive() || !(bhi - alo).is_positive()),
            (Piece::Product(p), Piece::Product(q)) => match q.factors_in(p.planes()) {
                Some([f, s]) => p.first.interior_disjoint(&f) || p.second.interior_disjoint(&s),
                None => facet_separated(self, other),
            },
            (Piece::Box(b), Piece::Product(p)) | (Piece::Product(p), Piece::Box(b)) => {
                match b.as_product(p.planes()) {
                    Some(bp) => Piece::Product(bp).separated_from(&Piece::Product(p.clone())),
                    // only a flat box has no product form, and it has no interior
                    None => true,
                }
            }
            _ => facet_separated(self, other),
        }
    }

    pub fn translated(&self, t: &Point4) -> Piece {
        match self {
            Piece::Simplex(s) => Piece::Simplex(Simplex4 {
                vertices: Box::new(std::array::from_fn(|i| add(&s.vertices[i], t))),
            }),
            Piece::Box(b) => Piece::Box(Box4 {
                intervals: Box::new(std::array::from_fn(|k| {
                    let (lo, hi) = &b.intervals[k];
                    (lo + &t[k], hi + &t[k])
                })),
            }),
            Piece::Product(p) => {
                let shift = |poly: &Polygon2| {
                    let (i, j) = poly.plane();
                    poly.translated(&t[i], &t[j])
                };
                Piece::Product(Product2x2 {
                    first: shift(&p.first),
                    second: shift(&p.second),
                })
            }
        }
    }

    /// Same point set (convex hulls with equal vertex sets).
    pub fn same_region(&self, other: &Piece) -> bool {
        let a = self.vertices();
        let b = other.vertices();
        a.len() == b.len() && a.iter().all(|v| b.contains(v))
    }
}

fn facet_separated(a: &Piece, b: &Piece) -> bool {
    let one_way = |p: &Piece, q: &Piece| {
        let qv = q.vertices();
        p.facets().iter().any(|h| qv.iter().all(|v| h.outside_or_on(v)))
    };
    one_way(a, b) || one_way(b, a)
}
