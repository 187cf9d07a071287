//! The five-piece dissection of the square on the hypotenuse, its product
//! with a second copy, the reassembly into the four leg-square products, and
//! the sum/difference-of-squares product identities.
//!
//! Coordinates. The square `[0,z]²` holds four right triangles whose
//! hypotenuses are its sides (a windmill) around a central square of side
//! `y − x`. In the rotated "leg frame" with unit vectors `f1 = (y, x)/z` and
//! `f2 = (−x, y)/z` every leg is axis-parallel, the pieces have coordinates
//! in the leg field and the reassembly is a list of axis-parallel cuts and
//! translations. Results are reported in the original (world) coordinates,
//! where the target squares are tilted; each target carries the frame
//! rotation that makes it axis-aligned.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use thiserror::Error;

use crate::expansion::{SignedCertificate, SignedTerm};
use crate::geometry::{
    apply_isometry, certify_tiling, certify_tiling_2d, identity4, origin, point2, GeometryError, IsometryMap, Piece,
    PieceClass, Point2, Point4, Polygon2, TilingCertificate,
};
use crate::scalar::{QuadScalar, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PythagError {
    #[error("length {0} is not positive")]
    NonPositive(String),
    #[error("legs must satisfy x <= y")]
    LegOrder,
    #[error("need x > y > 0")]
    NotGreater,
}

/// Legs `x ≤ y` of a right triangle with rational legs.
#[derive(Clone, Debug, PartialEq)]
pub struct RightTriangleParams {
    pub x: Rational,
    pub y: Rational,
    pub hyp2: Rational,
    pub hyp: QuadScalar,
}

impl RightTriangleParams {
    pub fn new(x: Rational, y: Rational) -> Result<Self, PythagError> {
        for l in [&x, &y] {
            if *l <= Rational::from_integer(0.into()) {
                return Err(PythagError::NonPositive(crate::scalar::format_rational(l)));
            }
        }
        if x > y {
            return Err(PythagError::LegOrder);
        }
        let hyp2 = &x * &x + &y * &y;
        let hyp = QuadScalar::sqrt_of(&hyp2).expect("sum of squares is non-negative");
        Ok(RightTriangleParams { x, y, hyp2, hyp })
    }

    /// Accepts the legs in either order.
    pub fn from_legs(a: Rational, b: Rational) -> Result<Self, PythagError> {
        if a <= b {
            Self::new(a, b)
        } else {
            Self::new(b, a)
        }
    }
}

/// A square (x or y) that some pieces are moved into.
#[derive(Clone, Debug, PartialEq)]
pub struct Target2D {
    pub label: String,
    /// Position in world coordinates.
    pub region: Polygon2,
    /// World-to-frame rotation; `frame · region` is the box `aligned`.
    pub frame: [[QuadScalar; 2]; 2],
    pub aligned: [(QuadScalar, QuadScalar); 2],
}

impl Target2D {
    pub fn area(&self) -> QuadScalar {
        self.region.area()
    }
}

/// A part of one piece and the translation that moves it into a target.
#[derive(Clone, Debug, PartialEq)]
pub struct Placement2D {
    pub source: usize,
    pub part: Polygon2,
    pub shift: Point2,
    pub target: usize,
}

impl Placement2D {
    pub fn moved(&self) -> Polygon2 {
        self.part.translated(&self.shift[0], &self.shift[1])
    }
}

#[derive(Clone, Debug)]
struct PlanarCertificates {
    whole: TilingCertificate,
    targets: Vec<TilingCertificate>,
    splits: Vec<TilingCertificate>,
}

/// Computed on first use and shared between clones and plane moves.
#[derive(Clone, Default)]
struct CertificateCache(Arc<OnceLock<PlanarCertificates>>);

impl PartialEq for CertificateCache {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

impl fmt::Debug for CertificateCache {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("CertificateCache")
    }
}

/// Certificates are cached, so treat the fields as read-only once built.
#[derive(Clone, Debug, PartialEq)]
pub struct Dissection2D {
    pub side: QuadScalar,
    pub container: Polygon2,
    pub names: Vec<&'static str>,
    pub pieces: Vec<Polygon2>,
    pub placements: Vec<Placement2D>,
    pub targets: Vec<Target2D>,
    cache: CertificateCache,
}

fn q(r: &Rational) -> QuadScalar {
    QuadScalar::from_rational(r.clone())
}

fn square(plane: (usize, usize), lo: [QuadScalar; 2], side: &QuadScalar) -> Polygon2 {
    Polygon2::rectangle(plane, (lo[0].clone(), &lo[0] + side), (lo[1].clone(), &lo[1] + side)).expect("positive side")
}

impl Dissection2D {
    /// The windmill dissection of `[0,z]²` in `plane`; targets are labelled
    /// `labels[0]` (short-leg square) and `labels[1]` (long-leg square).
    pub fn windmill(t: &RightTriangleParams, plane: (usize, usize), labels: [&str; 2]) -> Self {
        let (x, y, z) = (q(&t.x), q(&t.y), t.hyp.clone());
        let zero = QuadScalar::zero();
        let xy = &x + &y;
        let d = &y - &x;
        // world = rot · frame
        let rot = [[&y / &z, -(&x / &z)], [&x / &z, &y / &z]];
        let frame_t = [
            [rot[0][0].clone(), rot[1][0].clone()],
            [rot[0][1].clone(), rot[1][1].clone()],
        ];
        let to_world = |p: &Polygon2| p.mapped(plane, rot.clone(), [zero.clone(), zero.clone()]);
        let shift_world = |s: [&QuadScalar; 2]| -> Point2 {
            [
                &(&rot[0][0] * s[0]) + &(&rot[0][1] * s[1]),
                &(&rot[1][0] * s[0]) + &(&rot[1][1] * s[1]),
            ]
        };
        let tri = |pts: [[&QuadScalar; 2]; 3]| {
            Polygon2::new(plane, pts.iter().map(|p| [p[0].clone(), p[1].clone()]).collect())
                .expect("windmill triangles are proper")
        };
        let nx = -&x;
        let sw = tri([[&zero, &zero], [&y, &nx], [&y, &zero]]);
        let se = tri([[&y, &nx], [&xy, &d], [&y, &d]]);
        let ne = tri([[&xy, &d], [&x, &y], [&x, &d]]);
        let nw = tri([[&x, &y], [&zero, &zero], [&x, &zero]]);
        let central = (!d.is_zero()).then(|| square(plane, [x.clone(), zero.clone()], &d));

        let mut names = vec!["SW", "SE", "NE", "NW"];
        let mut frame_pieces = vec![sw.clone(), se.clone(), ne.clone(), nw.clone()];
        if let Some(c) = &central {
            names.push("C");
            frame_pieces.push(c.clone());
        }

        // Target 0: x-square [y, x+y] × [0, x]; target 1: y-square [0, y]².
        const X: usize = 0;
        const Y: usize = 1;
        let mut parts: Vec<(usize, Polygon2, [QuadScalar; 2], usize)> = Vec::new();
        let cut = point2(1, 0);
        let split = |p: &Polygon2, at: &QuadScalar| (p.clip(&cut, at), p.clip(&cut.clone().map(|c| -c), &-at));
        // SW stays in the lower rectangle [0,y] × [−x,0], which is cut at u = y − x.
        let (sw_left, sw_right) = split(&sw, &d);
        // NE joins that rectangle after moving by (−x, −y); its cut sits at u = y.
        let (ne_left, ne_right) = split(&ne, &y);
        let to_x = [x.clone(), x.clone()];
        let to_y = [x.clone(), y.clone()];
        let ne_to_x = [zero.clone(), -&d];
        let ne_to_y = [zero.clone(), zero.clone()];
        for (piece, part, shift, target) in [
            (0, sw_left, to_y, Y),
            (0, sw_right, to_x, X),
            (2, ne_left, ne_to_y, Y),
            (2, ne_right, ne_to_x, X),
        ] {
            if let Some(part) = part {
                parts.push((piece, part, shift, target));
            }
        }
        parts.push((1, se, [-&y, x.clone()], Y));
        parts.push((3, nw, [zero.clone(), zero.clone()], Y));
        if let Some(c) = central {
            parts.push((4, c, [zero.clone(), zero.clone()], Y));
        }
        parts.sort_by_key(|p| p.0);

        let frame_targets = [
            (labels[0], [y.clone(), zero.clone()], x.clone()),
            (labels[1], [zero.clone(), zero.clone()], y.clone()),
        ];
        let targets = frame_targets
            .iter()
            .map(|(label, lo, s)| Target2D {
                label: label.to_string(),
                region: to_world(&square(plane, lo.clone(), s)),
                frame: frame_t.clone(),
                aligned: [(lo[0].clone(), &lo[0] + s), (lo[1].clone(), &lo[1] + s)],
            })
            .collect();

        Dissection2D {
            side: z.clone(),
            container: square(plane, [zero.clone(), zero.clone()], &z),
            names,
            pieces: frame_pieces.iter().map(to_world).collect(),
            placements: parts
                .into_iter()
                .map(|(source, part, shift, target)| Placement2D {
                    source,
                    part: to_world(&part),
                    shift: shift_world([&shift[0], &shift[1]]),
                    target,
                })
                .collect(),
            targets,
            cache: CertificateCache::default(),
        }
    }

    /// A square that is already its own target: one piece, no moves.
    pub fn whole_square(side: &QuadScalar, plane: (usize, usize), label: &str) -> Self {
        let zero = QuadScalar::zero();
        let sq = square(plane, [zero.clone(), zero.clone()], side);
        let one = QuadScalar::one();
        Dissection2D {
            side: side.clone(),
            container: sq.clone(),
            names: vec!["S"],
            pieces: vec![sq.clone()],
            placements: vec![Placement2D {
                source: 0,
                part: sq.clone(),
                shift: [zero.clone(), zero.clone()],
                target: 0,
            }],
            targets: vec![Target2D {
                label: label.to_string(),
                region: sq,
                frame: [[one.clone(), zero.clone()], [zero.clone(), one]],
                aligned: [(zero.clone(), side.clone()), (zero, side.clone())],
            }],
            cache: CertificateCache::default(),
        }
    }

    pub fn plane(&self) -> (usize, usize) {
        self.container.plane()
    }

    pub fn area_sum(&self) -> QuadScalar {
        self.pieces.iter().map(Polygon2::area).sum()
    }

    /// The same dissection drawn on another pair of axes; shares the
    /// certificate cache, since the planar checks do not see the axes.
    pub fn in_plane(&self, plane: (usize, usize)) -> Result<Self, GeometryError> {
        let moved = |p: &Polygon2| p.in_plane(plane);
        Ok(Dissection2D {
            side: self.side.clone(),
            container: moved(&self.container)?,
            names: self.names.clone(),
            pieces: self.pieces.iter().map(moved).collect::<Result<_, _>>()?,
            placements: self
                .placements
                .iter()
                .map(|p| {
                    Ok(Placement2D {
                        part: moved(&p.part)?,
                        ..p.clone()
                    })
                })
                .collect::<Result<_, GeometryError>>()?,
            targets: self
                .targets
                .iter()
                .map(|t| {
                    Ok(Target2D {
                        region: moved(&t.region)?,
                        ..t.clone()
                    })
                })
                .collect::<Result<_, GeometryError>>()?,
            cache: self.cache.clone(),
        })
    }

    fn certificates(&self) -> &PlanarCertificates {
        self.cache.0.get_or_init(|| PlanarCertificates {
            whole: certify_tiling_2d(&self.container, &self.pieces),
            targets: (0..self.targets.len())
                .map(|k| {
                    let moved: Vec<Polygon2> = self
                        .placements
                        .iter()
                        .filter(|p| p.target == k)
                        .map(Placement2D::moved)
                        .collect();
                    certify_tiling_2d(&self.targets[k].region, &moved)
                })
                .collect(),
            splits: (0..self.pieces.len())
                .map(|i| {
                    let parts: Vec<Polygon2> = self
                        .placements
                        .iter()
                        .filter(|p| p.source == i)
                        .map(|p| p.part.clone())
                        .collect();
                    certify_tiling_2d(&self.pieces[i], &parts)
                })
                .collect(),
        })
    }

    pub fn certificate(&self) -> TilingCertificate {
        self.certificates().whole.clone()
    }

    /// Per target: the moved parts tile it.
    pub fn target_certificates(&self) -> Vec<TilingCertificate> {
        self.certificates().targets.clone()
    }

    /// Per piece: its parts tile it.
    pub fn split_certificates(&self) -> Vec<TilingCertificate> {
        self.certificates().splits.clone()
    }
}

/// The windmill dissection in the first coordinate plane.
pub fn dissect_square(t: &RightTriangleParams) -> Dissection2D {
    Dissection2D::windmill(t, (0, 1), ["x", "y"])
}

/// Products of the pieces of two planar dissections.
#[derive(Clone, Debug)]
pub struct ProductDissection {
    pub first: Dissection2D,
    pub second: Dissection2D,
    pub container: Piece,
    pub names: Vec<String>,
    pub pieces: Vec<Piece>,
}

impl ProductDissection {
    /// `first` must live in plane (0,1) and `second` in plane (2,3).
    pub fn new(first: Dissection2D, second: Dissection2D) -> Self {
        let (s1, s2) = (first.side.clone(), second.side.clone());
        let zero = QuadScalar::zero();
        let container = Piece::boxed([
            (zero.clone(), s1.clone()),
            (zero.clone(), s1),
            (zero.clone(), s2.clone()),
            (zero, s2),
        ])
        .expect("positive sides");
        let mut names = Vec::new();
        let mut pieces = Vec::new();
        for (n1, p1) in first.names.iter().zip(&first.pieces) {
            for (n2, p2) in second.names.iter().zip(&second.pieces) {
                names.push(format!("{}*{}", n1, n2));
                pieces.push(Piece::product(p1.clone(), p2.clone()).expect("planes (0,1) and (2,3)"));
            }
        }
        ProductDissection {
            first,
            second,
            container,
            names,
            pieces,
        }
    }

    /// Composed from the two planar certificates; the pieces are their
    /// products in row-major order.
    pub fn certificate(&self) -> TilingCertificate {
        TilingCertificate::product(&self.first.certificate(), &self.second.certificate())
    }

    pub fn census(&self) -> BTreeMap<PieceClass, usize> {
        let mut out = BTreeMap::new();
        for p in &self.pieces {
            *out.entry(p.class()).or_insert(0) += 1;
        }
        out
    }

    pub fn reassemble(&self) -> Reassembly {
        let n2 = self.second.pieces.len();
        let t2 = self.second.targets.len();
        let mut placements = Vec::new();
        for a in &self.first.placements {
            for b in &self.second.placements {
                let part = Piece::product(a.part.clone(), b.part.clone()).expect("planes");
                let (p1, p2) = (self.first.plane(), self.second.plane());
                let mut shift: Point4 = origin();
                shift[p1.0] = a.shift[0].clone();
                shift[p1.1] = a.shift[1].clone();
                shift[p2.0] = b.shift[0].clone();
                shift[p2.1] = b.shift[1].clone();
                placements.push(Placement4 {
                    source: a.source * n2 + b.source,
                    part,
                    isometry: IsometryMap::translation(shift),
                    target: a.target * t2 + b.target,
                });
            }
        }
        placements.sort_by_key(|p| (p.source, p.target));

        // Target (i, j) receives exactly the products of parts sent to i and
        // to j, so its certificate is the product of the planar ones.
        let (c1, c2) = (self.first.target_certificates(), self.second.target_certificates());
        let mut targets = Vec::new();
        for a in &self.first.targets {
            for b in &self.second.targets {
                let k = targets.len();
                let region = Piece::product(a.region.clone(), b.region.clone()).expect("planes");
                let mut m = identity4();
                let (p1, p2) = (self.first.plane(), self.second.plane());
                for (blk, (i, j)) in [(&a.frame, p1), (&b.frame, p2)] {
                    m[i][i] = blk[0][0].clone();
                    m[i][j] = blk[0][1].clone();
                    m[j][i] = blk[1][0].clone();
                    m[j][j] = blk[1][1].clone();
                }
                let frame = IsometryMap::new(m, origin()).expect("block rotations are orthogonal");
                let aligned = Piece::boxed([
                    a.aligned[0].clone(),
                    a.aligned[1].clone(),
                    b.aligned[0].clone(),
                    b.aligned[1].clone(),
                ])
                .expect("ordered intervals");
                let image = apply_isometry(&frame, &region);
                let frame_ok = image.len() == 1 && image[0].same_region(&aligned);
                targets.push(Target4 {
                    name: format!("R_{0}{0}{1}{1}", a.label, b.label),
                    certificate: TilingCertificate::product(&c1[k / t2], &c2[k % t2]),
                    region,
                    aligned,
                    frame,
                    frame_ok,
                });
            }
        }

        let (s1, s2) = (self.first.split_certificates(), self.second.split_certificates());
        let split_certificates = (0..self.pieces.len())
            .map(|i| TilingCertificate::product(&s1[i / n2], &s2[i % n2]))
            .collect();

        Reassembly {
            targets,
            placements,
            split_certificates,
        }
    }
}

/// `R_zzww` cut into the products of the two windmill dissections.
pub fn product_dissection(t1: &RightTriangleParams, t2: &RightTriangleParams) -> ProductDissection {
    ProductDissection::new(
        Dissection2D::windmill(t1, (0, 1), ["x", "y"]),
        Dissection2D::windmill(t2, (2, 3), ["u", "v"]),
    )
}

#[derive(Clone, Debug)]
pub struct Target4 {
    pub name: String,
    /// Tilted position in world coordinates.
    pub region: Piece,
    /// The axis-aligned box `frame(region)`.
    pub aligned: Piece,
    pub frame: IsometryMap,
    pub frame_ok: bool,
    pub certificate: TilingCertificate,
}

#[derive(Clone, Debug)]
pub struct Placement4 {
    /// Index of the product piece this part was cut from.
    pub source: usize,
    pub part: Piece,
    pub isometry: IsometryMap,
    pub target: usize,
}

impl Placement4 {
    pub fn moved(&self) -> Piece {
        self.part.translated(self.isometry.translation_part())
    }
}

#[derive(Clone, Debug)]
pub struct Reassembly {
    pub targets: Vec<Target4>,
    pub placements: Vec<Placement4>,
    /// Per source piece: its parts tile it.
    pub split_certificates: Vec<TilingCertificate>,
}

impl Reassembly {
    pub fn all_translations(&self) -> bool {
        self.placements.iter().all(|p| p.isometry.is_translation())
    }

    pub fn target_volumes(&self) -> Vec<QuadScalar> {
        self.targets.iter().map(|t| t.aligned.volume()).collect()
    }

    pub fn verdict(&self) -> bool {
        self.all_translations()
            && self.targets.iter().all(|t| t.frame_ok && t.certificate.verdict)
            && self.split_certificates.iter().all(|c| c.verdict)
    }
}

pub fn reassemble_product(t1: &RightTriangleParams, t2: &RightTriangleParams) -> Reassembly {
    product_dissection(t1, t2).reassemble()
}

/// `(x²+y²)(z²+w²)` as a box cut into the four boxes `x²z², x²w², y²z², y²w²`.
#[derive(Clone, Debug)]
pub struct SumOfSquares {
    pub container: Piece,
    pub labels: Vec<String>,
    pub pieces: Vec<Piece>,
    pub certificate: TilingCertificate,
}

pub fn sum_of_squares_product(
    x: &QuadScalar,
    y: &QuadScalar,
    z: &QuadScalar,
    w: &QuadScalar,
) -> Result<SumOfSquares, PythagError> {
    for v in [x, y, z, w] {
        if !v.is_positive() {
            return Err(PythagError::NonPositive(v.to_string()));
        }
    }
    let (x2, y2, z2, w2) = (x * x, y * y, z * z, w * w);
    let zero = QuadScalar::zero;
    let one = QuadScalar::one;
    let slab = |a: (QuadScalar, QuadScalar), b: (QuadScalar, QuadScalar)| {
        Piece::boxed([a, (zero(), one()), b, (zero(), one())]).expect("ordered")
    };
    let first = [(zero(), x2.clone()), (x2.clone(), &x2 + &y2)];
    let second = [(zero(), z2.clone()), (z2.clone(), &z2 + &w2)];
    let container = slab((zero(), &x2 + &y2), (zero(), &z2 + &w2));
    let names = [["x^2*z^2", "x^2*w^2"], ["y^2*z^2", "y^2*w^2"]];
    let mut labels = Vec::new();
    let mut pieces = Vec::new();
    for (i, a) in first.iter().enumerate() {
        for (j, b) in second.iter().enumerate() {
            labels.push(names[i][j].to_string());
            pieces.push(slab(a.clone(), b.clone()));
        }
    }
    let certificate = certify_tiling(&container, &pieces);
    Ok(SumOfSquares {
        container,
        labels,
        pieces,
        certificate,
    })
}

/// `(x²−y²)² = x⁴ − 2x²y² + y⁴` by signed evaluation: the directed segment
/// `x²` (positive) followed by `y²` pointing back (negative), squared.
pub fn difference_of_squares_product(x: &QuadScalar, y: &QuadScalar) -> Result<SignedCertificate, PythagError> {
    if !y.is_positive() || !(x - y).is_positive() {
        return Err(PythagError::NotGreater);
    }
    let (x2, y2) = (x * x, y * y);
    let term = |label: &str, sign: i8, value: QuadScalar| SignedTerm {
        label: label.to_string(),
        sign,
        value,
    };
    let terms = vec![
        term("x^2*x^2", 1, &x2 * &x2),
        term("x^2*y^2", -1, &x2 * &y2),
        term("y^2*x^2", -1, &y2 * &x2),
        term("y^2*y^2", 1, &y2 * &y2),
    ];
    let diff = &x2 - &y2;
    Ok(SignedCertificate::new("difference_of_squares", terms, &diff * &diff))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rat_int};

    fn legs(a: i64, b: i64) -> RightTriangleParams {
        RightTriangleParams::new(rat_int(a), rat_int(b)).unwrap()
    }

    fn qi(n: i64) -> QuadScalar {
        QuadScalar::from_int(n)
    }

    #[test]
    fn params_validation() {
        assert!(RightTriangleParams::new(rat_int(4), rat_int(3)).is_err());
        assert!(RightTriangleParams::new(rat_int(0), rat_int(3)).is_err());
        let t = RightTriangleParams::from_legs(rat_int(4), rat_int(3)).unwrap();
        assert_eq!(t.hyp, qi(5));
        let irr = legs(1, 2);
        assert_eq!(&irr.hyp * &irr.hyp, qi(5));
    }

    #[test]
    fn three_four_five_areas() {
        let d = dissect_square(&legs(3, 4));
        let areas: Vec<QuadScalar> = d.pieces.iter().map(Polygon2::area).collect();
        assert_eq!(areas, vec![qi(6), qi(6), qi(6), qi(6), qi(1)]);
        assert_eq!(d.area_sum(), qi(25));
        assert!(d.certificate().verdict);
        assert!(d.target_certificates().iter().all(|c| c.verdict));
        assert!(d.split_certificates().iter().all(|c| c.verdict));
        assert_eq!(d.targets[0].area(), qi(9));
        assert_eq!(d.targets[1].area(), qi(16));
        assert_eq!(d.placements.len(), 7);
    }

    #[test]
    fn isosceles_has_four_pieces() {
        let d = dissect_square(&legs(1, 1));
        assert_eq!(d.pieces.len(), 4);
        for p in &d.pieces {
            assert_eq!(p.area(), QuadScalar::from_rational(rat(1, 2)));
        }
        assert_eq!(d.area_sum(), qi(2));
        assert!(d.certificate().verdict);
        assert!(d.target_certificates().iter().all(|c| c.verdict));
        assert_eq!(d.placements.len(), 4);
    }

    #[test]
    fn irrational_hypotenuse() {
        let d = dissect_square(&legs(1, 2));
        assert_eq!(d.area_sum(), qi(5));
        assert!(d.certificate().verdict);
        assert!(d.target_certificates().iter().all(|c| c.verdict));
    }

    #[test]
    fn five_twelve_thirteen() {
        let d = dissect_square(&legs(5, 12));
        assert_eq!(d.pieces[4].area(), qi(49));
        assert_eq!(d.area_sum(), qi(169));
    }

    #[test]
    fn product_census_and_reassembly() {
        let pd = product_dissection(&legs(3, 4), &legs(5, 12));
        assert_eq!(pd.pieces.len(), 25);
        let census = pd.census();
        assert_eq!(census[&PieceClass::TriangleTriangle], 16);
        assert_eq!(census[&PieceClass::TriangleQuad], 4);
        assert_eq!(census[&PieceClass::QuadTriangle], 4);
        assert_eq!(census[&PieceClass::QuadQuad], 1);
        let cert = pd.certificate();
        assert!(cert.verdict);
        assert_eq!(cert.container_volume, qi(4225));
        let r = pd.reassemble();
        assert_eq!(r.target_volumes(), vec![qi(225), qi(1296), qi(400), qi(2304)]);
        let names: Vec<&str> = r.targets.iter().map(|t| t.name.as_str()).collect();
        assert_eq!(names, vec!["R_xxuu", "R_xxvv", "R_yyuu", "R_yyvv"]);
        assert_eq!(r.placements.len(), 49);
        assert!(r.verdict());
    }

    #[test]
    fn composed_certificates_agree_with_direct_checks() {
        let pd = product_dissection(&legs(1, 2), &legs(3, 4));
        assert_eq!(pd.certificate(), certify_tiling(&pd.container, &pd.pieces));
        let r = pd.reassemble();
        for (k, t) in r.targets.iter().enumerate() {
            let pieces: Vec<Piece> = r
                .placements
                .iter()
                .filter(|p| p.target == k)
                .map(Placement4::moved)
                .collect();
            let direct = certify_tiling(&t.region, &pieces);
            assert!(direct.verdict && t.certificate.verdict);
            assert_eq!(direct.container_volume, t.certificate.container_volume);
            assert_eq!(direct.volume_sum(), t.certificate.volume_sum());
        }
    }

    #[test]
    fn isosceles_product_gives_unit_boxes() {
        let r = reassemble_product(&legs(1, 1), &legs(1, 1));
        assert_eq!(r.target_volumes(), vec![qi(1); 4]);
        assert!(r.verdict());
        assert_eq!(product_dissection(&legs(1, 1), &legs(1, 1)).pieces.len(), 16);
    }

    #[test]
    fn sums_of_squares() {
        let s = sum_of_squares_product(&qi(3), &qi(4), &qi(5), &qi(12)).unwrap();
        let vols: Vec<QuadScalar> = s.pieces.iter().map(Piece::volume).collect();
        assert_eq!(vols, vec![qi(225), qi(1296), qi(400), qi(2304)]);
        assert!(s.certificate.verdict);
        assert_eq!(s.container.volume(), qi(4225));
        let small = sum_of_squares_product(&qi(1), &qi(2), &qi(1), &qi(2)).unwrap();
        assert_eq!(small.container.volume(), qi(25));
        assert!(sum_of_squares_product(&qi(0), &qi(2), &qi(1), &qi(2)).is_err());
    }

    #[test]
    fn difference_of_squares() {
        let c = difference_of_squares_product(&qi(2), &qi(1)).unwrap();
        assert!(c.verdict);
        assert_eq!(c.net, qi(9));
        let half = QuadScalar::from_rational(rat(1, 2));
        let c = difference_of_squares_product(&qi(1), &half).unwrap();
        assert_eq!(c.net, QuadScalar::from_rational(rat(9, 16)));
        assert!(difference_of_squares_product(&qi(1), &qi(1)).is_err());
    }
}
