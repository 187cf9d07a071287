//! Strictly convex polygons lying in a coordinate plane of R⁴.

use crate::scalar::QuadScalar;

use super::GeometryError;

pub type Point2 = [QuadScalar; 2];

pub fn point2<T: Into<QuadScalar>>(u: T, v: T) -> Point2 {
    [u.into(), v.into()]
}

fn sub2(a: &Point2, b: &Point2) -> Point2 {
    [&a[0] - &b[0], &a[1] - &b[1]]
}

pub fn cross2(a: &Point2, b: &Point2) -> QuadScalar {
    &a[0] * &b[1] - &a[1] * &b[0]
}

/// Orientation of `p` relative to the directed line `a → b`.
fn orient(a: &Point2, b: &Point2, p: &Point2) -> QuadScalar {
    cross2(&sub2(b, a), &sub2(p, a))
}

/// A convex polygon in the plane spanned by axes `plane.0` (u) and `plane.1` (v).
///
/// Vertices run counterclockwise in `(u, v)` and every vertex is a strict corner.
#[derive(Clone, Debug, PartialEq)]
pub struct Polygon2 {
    plane: (usize, usize),
    vertices: Vec<Point2>,
}

impl Polygon2 {
    pub fn new(plane: (usize, usize), vertices: Vec<Point2>) -> Result<Self, GeometryError> {
        if plane.0 >= 4 || plane.1 >= 4 || plane.0 == plane.1 {
            return Err(GeometryError::InvalidPolygon(format!("bad plane {:?}", plane)));
        }
        let m = vertices.len();
        if m < 3 {
            return Err(GeometryError::InvalidPolygon(format!("{} vertices", m)));
        }
        for k in 0..m {
            let a = &vertices[k];
            let b = &vertices[(k + 1) % m];
            if a == b {
                return Err(GeometryError::InvalidPolygon("repeated vertex".into()));
            }
            for (j, p) in vertices.iter().enumerate() {
                if j == k || j == (k + 1) % m {
                    continue;
                }
                if !orient(a, b, p).is_positive() {
                    return Err(GeometryError::InvalidPolygon(
                        "not strictly convex and counterclockwise".into(),
                    ));
                }
            }
        }
        Ok(Polygon2 { plane, vertices })
    }

    /// Like [`Polygon2::new`] but accepts clockwise input and drops repeated or
    /// collinear vertices. Returns `None` when nothing with positive area remains.
    pub fn from_loose(plane: (usize, usize), mut pts: Vec<Point2>) -> Option<Self> {
        pts.dedup();
        while pts.len() > 1 && pts.first() == pts.last() {
            pts.pop();
        }
        loop {
            let m = pts.len();
            if m < 3 {
                return None;
            }
            let flat = (0..m).find(|&k| orient(&pts[(k + m - 1) % m], &pts[k], &pts[(k + 1) % m]).is_zero());
            match flat {
                Some(k) => {
                    pts.remove(k);
                }
                None => break,
            }
        }
        let signed: QuadScalar = shoelace(&pts);
        if signed.is_negative() {
            pts.reverse();
        }
        Polygon2::new(plane, pts).ok()
    }

    /// Axis-aligned rectangle `[u0,u1] × [v0,v1]`.
    pub fn rectangle(
        plane: (usize, usize),
        u: (QuadScalar, QuadScalar),
        v: (QuadScalar, QuadScalar),
    ) -> Result<Self, GeometryError> {
        Polygon2::new(
            plane,
            vec![
                [u.0.clone(), v.0.clone()],
                [u.1.clone(), v.0.clone()],
                [u.1, v.1.clone()],
                [u.0, v.1],
            ],
        )
    }

    pub fn plane(&self) -> (usize, usize) {
        self.plane
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn edges(&self) -> impl Iterator<Item = (&Point2, &Point2)> {
        let m = self.vertices.len();
        (0..m).map(move |k| (&self.vertices[k], &self.vertices[(k + 1) % m]))
    }

    /// Shoelace area.
    pub fn area(&self) -> QuadScalar {
        shoelace(&self.vertices)
    }

    /// Closed containment.
    pub fn contains_point(&self, p: &Point2) -> bool {
        self.edges().all(|(a, b)| !orient(a, b, p).is_negative())
    }

    pub fn contains(&self, other: &Polygon2) -> bool {
        other.vertices.iter().all(|p| self.contains_point(p))
    }

    /// True when some edge line separates the interiors (complete for convex polygons).
    pub fn interior_disjoint(&self, other: &Polygon2) -> bool {
        let separates = |p: &Polygon2, q: &Polygon2| {
            p.edges()
                .any(|(a, b)| q.vertices.iter().all(|x| !orient(a, b, x).is_positive()))
        };
        separates(self, other) || separates(other, self)
    }

    pub fn translated(&self, du: &QuadScalar, dv: &QuadScalar) -> Polygon2 {
        Polygon2 {
            plane: self.plane,
            vertices: self.vertices.iter().map(|p| [&p[0] + du, &p[1] + dv]).collect(),
        }
    }

    /// Keeps the part with `n · p ≤ c`; `None` when that part has no area.
    pub fn clip(&self, n: &Point2, c: &QuadScalar) -> Option<Polygon2> {
        let value = |p: &Point2| &(&n[0] * &p[0] + &n[1] * &p[1]) - c;
        let m = self.vertices.len();
        let mut out = Vec::with_capacity(m + 1);
        for k in 0..m {
            let a = &self.vertices[k];
            let b = &self.vertices[(k + 1) % m];
            let (fa, fb) = (value(a), value(b));
            if !fa.is_positive() {
                out.push(a.clone());
            }
            if fa.signum() * fb.signum() < 0 {
                let t = &fa / &(&fa - &fb);
                out.push([&a[0] + &(&t * &(&b[0] - &a[0])), &a[1] + &(&t * &(&b[1] - &a[1]))]);
            }
        }
        Polygon2::from_loose(self.plane, out)
    }

    /// Same plane and the same vertex set.
    pub fn same_region(&self, other: &Polygon2) -> bool {
        self.plane == other.plane
            && self.vertices.len() == other.vertices.len()
            && self.vertices.iter().all(|p| other.vertices.contains(p))
    }

    /// The same `(u, v)` coordinates placed on another pair of axes.
    pub fn in_plane(&self, plane: (usize, usize)) -> Result<Polygon2, GeometryError> {
        if plane.0 >= 4 || plane.1 >= 4 || plane.0 == plane.1 {
            return Err(GeometryError::InvalidPolygon(format!("bad plane {:?}", plane)));
        }
        Ok(Polygon2 {
            plane,
            vertices: self.vertices.clone(),
        })
    }

    /// Re-expresses the polygon with the plane axes swapped.
    pub fn with_swapped_axes(&self) -> Polygon2 {
        let mut vertices: Vec<Point2> = self.vertices.iter().map(|p| [p[1].clone(), p[0].clone()]).collect();
        vertices.reverse();
        Polygon2 {
            plane: (self.plane.1, self.plane.0),
            vertices,
        }
    }

    /// Applies `(u, v) ↦ A·(u, v) + t` and moves to `plane`; `A` must be invertible.
    pub(crate) fn mapped(&self, plane: (usize, usize), a: [[QuadScalar; 2]; 2], t: [QuadScalar; 2]) -> Polygon2 {
        let mut vertices: Vec<Point2> = self
            .vertices
            .iter()
            .map(|p| {
                [
                    &(&(&a[0][0] * &p[0]) + &(&a[0][1] * &p[1])) + &t[0],
                    &(&(&a[1][0] * &p[0]) + &(&a[1][1] * &p[1])) + &t[1],
                ]
            })
            .collect();
        let det = &a[0][0] * &a[1][1] - &a[0][1] * &a[1][0];
        if det.is_negative() {
            vertices.reverse();
        }
        Polygon2 { plane, vertices }
    }
}

fn shoelace(pts: &[Point2]) -> QuadScalar {
    let m = pts.len();
    let twice: QuadScalar = (0..m).map(|k| cross2(&pts[k], &pts[(k + 1) % m])).sum();
    twice / QuadScalar::from_int(2)
}
