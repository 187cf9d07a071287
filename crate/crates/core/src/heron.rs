//! The certified chain
//! `16A² = 4p²h² = 2a²b²+2a²c²+2b²c²−a⁴−b⁴−c⁴ = (a+b+c)(a+b−c)(a−b+c)(−a+b+c)`
//! for a triangle with vertices `(0,0)`, `(p,0)`, `(r,h)`.

use num_bigint::BigInt;
use thiserror::Error;

use crate::expansion::{cancel, heron_signed_expansion, heron_target, signed_sum, ExpansionError, HERON_SYMBOLS};
use crate::geometry::{
    apply_isometry, certify_tiling, certify_tiling_2d, origin, point2, IsometryMap, Piece, Polygon2, TilingCertificate,
};
use crate::poly::MonomialPolynomial;
use crate::pythag::{
    difference_of_squares_product, sum_of_squares_product, Dissection2D, ProductDissection, PythagError, Reassembly,
    RightTriangleParams,
};
use crate::record::{CertificateKind, CertificateRecord};
use crate::scalar::{format_rational, rat, rational_sqrt, QuadScalar, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HeronError {
    #[error("{0} must be positive")]
    NonPositive(&'static str),
    #[error("foot of the altitude r = {0} must satisfy 0 <= r <= p")]
    FootOutOfRange(String),
    #[error(
        "side c = p is not the longest (a^2 = {a2}, b^2 = {b2}, c^2 = {c2}); relabel so the base is the longest side"
    )]
    NotLongest { a2: String, b2: String, c2: String },
    #[error("sides violate the strict triangle inequality")]
    Degenerate,
    #[error("altitude {0} is not rational")]
    IrrationalAltitude(String),
    #[error(transparent)]
    Pythag(#[from] PythagError),
    #[error(transparent)]
    Expansion(#[from] ExpansionError),
}

fn zero() -> Rational {
    rat(0, 1)
}

/// A triangle with base `[0,p]` on the x-axis and apex `(r,h)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TriangleDatum {
    pub p: Rational,
    pub r: Rational,
    pub h: Rational,
    pub a2: Rational,
    pub b2: Rational,
    /// The input foot was `p − r` and got mirrored.
    pub reflected: bool,
    /// `a = b` and `c = a√2`: the whole chain collapses to `4a⁴`.
    pub isosceles_right: bool,
}

impl TriangleDatum {
    pub fn c2(&self) -> Rational {
        &self.p * &self.p
    }

    /// `p − r`.
    pub fn q(&self) -> Rational {
        &self.p - &self.r
    }

    pub fn area(&self) -> Rational {
        &self.p * &self.h / rat(2, 1)
    }

    pub fn a(&self) -> QuadScalar {
        QuadScalar::sqrt_of(&self.a2).expect("non-negative")
    }

    pub fn b(&self) -> QuadScalar {
        QuadScalar::sqrt_of(&self.b2).expect("non-negative")
    }

    pub fn c(&self) -> QuadScalar {
        QuadScalar::from_rational(self.p.clone())
    }

    /// Builds the datum from squared side lengths, with `c` the base.
    pub fn from_squared_sides(a2: Rational, b2: Rational, c: Rational) -> Result<Self, HeronError> {
        if c <= zero() {
            return Err(HeronError::NonPositive("c"));
        }
        let r = (&c * &c + &a2 - &b2) / (rat(2, 1) * &c);
        let h2 = &a2 - &r * &r;
        if h2 <= zero() {
            return Err(HeronError::Degenerate);
        }
        let h = rational_sqrt(&h2).ok_or_else(|| HeronError::IrrationalAltitude(format_rational(&h2)))?;
        triangle_from_coords(c, r, h)
    }
}

pub fn triangle_from_coords(p: Rational, r: Rational, h: Rational) -> Result<TriangleDatum, HeronError> {
    if p <= zero() {
        return Err(HeronError::NonPositive("p"));
    }
    if h <= zero() {
        return Err(HeronError::NonPositive("h"));
    }
    if r < zero() || r > p {
        return Err(HeronError::FootOutOfRange(format_rational(&r)));
    }
    let reflected = r > &p / rat(2, 1);
    let r = if reflected { &p - &r } else { r };
    let q = &p - &r;
    let a2 = &r * &r + &h * &h;
    let b2 = &q * &q + &h * &h;
    let c2 = &p * &p;
    if b2 > c2 {
        return Err(HeronError::NotLongest {
            a2: format_rational(&a2),
            b2: format_rational(&b2),
            c2: format_rational(&c2),
        });
    }
    let t = TriangleDatum {
        isosceles_right: a2 == b2 && &a2 + &b2 == c2,
        p,
        r,
        h,
        a2,
        b2,
        reflected,
    };
    let (a, b, c) = (t.a(), t.b(), t.c());
    if !(&a + &b - &c).is_positive() || !(&b + &c - &a).is_positive() {
        return Err(HeronError::Degenerate);
    }
    Ok(t)
}

/// One equality of the chain with the certificates backing it.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainStep {
    pub name: &'static str,
    pub left_label: &'static str,
    pub right_label: &'static str,
    pub left: QuadScalar,
    pub right: QuadScalar,
    pub equal: bool,
    pub certificates: Vec<CertificateRecord>,
}

impl ChainStep {
    fn new(
        name: &'static str,
        labels: (&'static str, &'static str),
        left: QuadScalar,
        right: QuadScalar,
        certificates: Vec<CertificateRecord>,
    ) -> Self {
        ChainStep {
            name,
            left_label: labels.0,
            right_label: labels.1,
            equal: left == right,
            left,
            right,
            certificates,
        }
    }

    /// Whether the step carries a tiling or signed certificate that holds.
    pub fn has_backing(&self) -> bool {
        self.certificates.iter().any(|c| {
            c.verdict
                && matches!(
                    c.kind,
                    CertificateKind::Tiling | CertificateKind::SignedEvaluation | CertificateKind::Cancellation
                )
        })
    }

    pub fn holds(&self) -> bool {
        self.equal && self.has_backing() && self.certificates.iter().all(|c| c.verdict)
    }

    /// The first reason this step does not hold.
    pub fn failure(&self) -> Option<String> {
        if let Some(c) = self.certificates.iter().find(|c| !c.verdict) {
            return Some(format!(
                "{}: certificate {} failed: {}",
                self.name,
                c.name,
                c.failure.clone().unwrap_or_default()
            ));
        }
        if !self.has_backing() {
            return Some(format!("{}: no certificate backs this step", self.name));
        }
        if !self.equal {
            return Some(format!("{}: {} != {}", self.name, self.left, self.right));
        }
        None
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChainReport {
    pub datum: TriangleDatum,
    /// In chain order: lhs, regrouping, pythagorean_rewrites, rhs_expansion.
    pub steps: Vec<ChainStep>,
    /// `16·s(s−a)(s−b)(s−c)`.
    pub radical: QuadScalar,
    pub verdict: bool,
}

impl ChainReport {
    /// `16A²`, `4p²h²`, the polynomial form and the four-factor product.
    pub fn chain_values(&self) -> Vec<QuadScalar> {
        let mut out = vec![self.steps[0].left.clone(), self.steps[0].right.clone()];
        out.push(self.steps[1].left.clone());
        out.push(self.steps[3].right.clone());
        out
    }

    pub fn value(&self) -> &QuadScalar {
        &self.steps[0].left
    }

    /// Adjacent steps must share their endpoints.
    fn links_ok(&self) -> bool {
        let s = &self.steps;
        s.len() == 4 && s[0].right == s[1].right && s[1].left == s[2].left && s[2].right == s[3].left
    }

    pub fn validate(&self) -> Result<(), String> {
        if let Some(f) = self.steps.iter().find_map(ChainStep::failure) {
            return Err(f);
        }
        if !self.links_ok() {
            return Err("chain steps do not link up".into());
        }
        if &self.radical != self.value() {
            return Err(format!("radical form gives {} not {}", self.radical, self.value()));
        }
        Ok(())
    }

    pub fn recompute_verdict(&mut self) {
        self.verdict = self.validate().is_ok();
    }

    pub fn certificates(&self) -> impl Iterator<Item = &CertificateRecord> {
        self.steps.iter().flat_map(|s| s.certificates.iter())
    }
}

/// The parallelogram `T ∪ T′` and its product with itself, cut and moved onto
/// a rectangle squared.
#[derive(Clone, Debug)]
pub struct LhsDissection {
    pub triangle: Polygon2,
    pub parallelogram: Polygon2,
    pub rectangle: Polygon2,
    /// `T×T`, `T×T′`, `T′×T`, `T′×T′`.
    pub copies: Vec<Piece>,
    pub witnesses: Vec<IsometryMap>,
    /// Planar cut of `P` with the horizontal shift carrying each part into `R`.
    pub cut: Vec<(Polygon2, Rational)>,
    /// Parts of `P×P` with the translation that moves each onto `R×R`.
    pub parts: Vec<(Piece, IsometryMap)>,
}

fn tri(plane: (usize, usize), p: &Rational, r: &Rational, h: &Rational) -> Polygon2 {
    let q = |x: &Rational| QuadScalar::from_rational(x.clone());
    Polygon2::from_loose(
        plane,
        vec![
            point2(q(&zero()), q(&zero())),
            point2(q(p), q(&zero())),
            point2(q(r), q(h)),
        ],
    )
    .expect("positive base and height")
}

/// Point reflection through the midpoint of `(p,0)` and `(r,h)` in each block selected by `flip`.
fn half_turns(p: &Rational, r: &Rational, h: &Rational, flip: [bool; 2]) -> IsometryMap {
    let mut t = origin();
    let mut signs = [1i8; 4];
    for (blk, &on) in flip.iter().enumerate() {
        if on {
            signs[2 * blk] = -1;
            signs[2 * blk + 1] = -1;
            t[2 * blk] = QuadScalar::from_rational(p + r);
            t[2 * blk + 1] = QuadScalar::from_rational(h.clone());
        }
    }
    IsometryMap::signed_permutation([0, 1, 2, 3], signs, t).expect("valid signed permutation")
}

/// Needs `p, h > 0` and `0 ≤ r ≤ p`.
pub fn lhs_dissection(p: &Rational, r: &Rational, h: &Rational) -> LhsDissection {
    let q = |x: Rational| QuadScalar::from_rational(x);
    let pts = |plane, vs: &[(Rational, Rational)]| {
        Polygon2::from_loose(
            plane,
            vs.iter().map(|(u, v)| point2(q(u.clone()), q(v.clone()))).collect(),
        )
    };
    let para = |plane| {
        pts(
            plane,
            &[
                (zero(), zero()),
                (p.clone(), zero()),
                (p + r, h.clone()),
                (r.clone(), h.clone()),
            ],
        )
        .expect("non-degenerate parallelogram")
    };
    let t1 = tri((0, 1), p, r, h);
    let t2 = tri((2, 3), p, r, h);
    let base = Piece::product(t1.clone(), t2).expect("planes");
    let mut copies = Vec::new();
    let mut witnesses = Vec::new();
    for flip in [[false, false], [false, true], [true, false], [true, true]] {
        let w = half_turns(p, r, h, flip);
        copies.extend(apply_isometry(&w, &base));
        witnesses.push(w);
    }

    // Left of u = r: a right triangle that slides by p to close up the rectangle.
    let left = |plane| pts(plane, &[(zero(), zero()), (r.clone(), zero()), (r.clone(), h.clone())]);
    let trapezoid = |plane| {
        pts(
            plane,
            &[
                (r.clone(), zero()),
                (p.clone(), zero()),
                (p + r, h.clone()),
                (r.clone(), h.clone()),
            ],
        )
        .expect("r < p leaves a trapezoid")
    };
    let factor = |plane: (usize, usize)| {
        let mut out = vec![(trapezoid(plane), zero())];
        if let Some(l) = left(plane) {
            out.push((l, p.clone()));
        }
        out
    };
    let mut parts = Vec::new();
    for (a, sa) in factor((0, 1)) {
        for (b, sb) in factor((2, 3)) {
            let mut t = origin();
            t[0] = q(sa.clone());
            t[2] = q(sb);
            parts.push((
                Piece::product(a.clone(), b).expect("planes"),
                IsometryMap::translation(t),
            ));
        }
    }
    let rectangle = pts(
        (0, 1),
        &[
            (r.clone(), zero()),
            (p + r, zero()),
            (p + r, h.clone()),
            (r.clone(), h.clone()),
        ],
    )
    .expect("positive sides");
    LhsDissection {
        triangle: t1,
        parallelogram: para((0, 1)),
        rectangle,
        copies,
        witnesses,
        cut: factor((0, 1)),
        parts,
    }
}

impl LhsDissection {
    fn squared(poly: &Polygon2) -> Piece {
        let moved = Polygon2::from_loose((2, 3), poly.vertices().to_vec()).expect("same shape");
        Piece::product(poly.clone(), moved).expect("planes")
    }

    pub fn parallelogram_squared(&self) -> Piece {
        Self::squared(&self.parallelogram)
    }

    pub fn rectangle_squared(&self) -> Piece {
        Self::squared(&self.rectangle)
    }

    pub fn copies_certificate(&self) -> TilingCertificate {
        certify_tiling(&self.parallelogram_squared(), &self.copies)
    }

    /// How many copies are exact images of `T×T` under their witness.
    pub fn verified_witnesses(&self) -> usize {
        let base = &self.copies[0];
        self.witnesses
            .iter()
            .zip(&self.copies)
            .filter(|(w, c)| {
                let img = apply_isometry(w, base);
                img.len() == 1 && img[0].same_region(c)
            })
            .count()
    }

    pub fn split_certificate(&self) -> TilingCertificate {
        let parts: Vec<Piece> = self.parts.iter().map(|(p, _)| p.clone()).collect();
        certify_tiling(&self.parallelogram_squared(), &parts)
    }

    pub fn target_certificate(&self) -> TilingCertificate {
        let moved: Vec<Piece> = self
            .parts
            .iter()
            .map(|(p, t)| p.translated(t.translation_part()))
            .collect();
        certify_tiling(&self.rectangle_squared(), &moved)
    }

    /// `P = T ∪ T′` and `R = Z ∪ (L + p)`.
    pub fn planar_certificates(&self) -> [TilingCertificate; 2] {
        let w = &self.witnesses[3];
        let image: Vec<_> = self
            .triangle
            .vertices()
            .iter()
            .map(|x| {
                let y = w.apply(&[x[0].clone(), x[1].clone(), QuadScalar::zero(), QuadScalar::zero()]);
                [y[0].clone(), y[1].clone()]
            })
            .collect();
        let reflected = Polygon2::from_loose((0, 1), image).expect("image of a triangle");
        let moved: Vec<Polygon2> = self
            .cut
            .iter()
            .map(|(poly, du)| poly.translated(&qr(du), &QuadScalar::zero()))
            .collect();
        [
            certify_tiling_2d(&self.parallelogram, &[self.triangle.clone(), reflected]),
            certify_tiling_2d(&self.rectangle, &moved),
        ]
    }
}

fn qr(x: &Rational) -> QuadScalar {
    QuadScalar::from_rational(x.clone())
}

/// `16A² = 4p²h²` through `P×P` (four copies of `T×T`) and `R×R`.
pub fn verify_lhs(t: &TriangleDatum) -> ChainStep {
    let d = lhs_dissection(&t.p, &t.r, &t.h);
    let [planar_para, planar_rect] = d.planar_certificates();
    let certs = vec![
        CertificateRecord::tiling("parallelogram", &planar_para),
        CertificateRecord::tiling("rectangle", &planar_rect),
        CertificateRecord::tiling("parallelogram_squared/copies", &d.copies_certificate()),
        CertificateRecord::congruence(
            "parallelogram_squared/witnesses",
            d.copies.len(),
            d.verified_witnesses(),
        ),
        CertificateRecord::tiling("parallelogram_squared/split", &d.split_certificate()),
        CertificateRecord::tiling("rectangle_squared", &d.target_certificate()),
    ];
    // Four copies of P×P hold sixteen copies of T×T.
    let left = QuadScalar::from_int(16) * d.copies[0].volume();
    let right = QuadScalar::from_int(4) * d.rectangle_squared().volume();
    ChainStep::new("lhs", ("16*A^2", "4*p^2*h^2"), left, right, certs)
}

const PRHQ: [&str; 4] = ["p", "r", "h", "q"];

fn lit(terms: &[(i64, [u32; 4])]) -> MonomialPolynomial {
    let mut out = MonomialPolynomial::zero(&PRHQ);
    for (c, e) in terms {
        out.add_term(e.to_vec(), BigInt::from(*c));
    }
    out
}

fn var(i: usize) -> MonomialPolynomial {
    MonomialPolynomial::var(&PRHQ, i)
}

/// Replaces `q` by `p − r`.
fn unfold_q(poly: &MonomialPolynomial) -> MonomialPolynomial {
    poly.substitute(3, &var(0).sub(&var(1)))
}

/// `2a²b²+2a²c²+2b²c²−a⁴−b⁴−c⁴` from the squared sides.
fn heron_polynomial(a2: &QuadScalar, b2: &QuadScalar, c2: &QuadScalar) -> QuadScalar {
    let two = QuadScalar::from_int(2);
    &two * a2 * b2 + &two * a2 * c2 + &two * b2 * c2 - a2 * a2 - b2 * b2 - c2 * c2
}

/// Expansion blocks, cancellation, regrouping and factoring over `p, r, h`
/// with `q = p − r`, ending at `4h²p²`.
pub fn verify_regrouping(t: &TriangleDatum) -> Result<ChainStep, HeronError> {
    let at = [qr(&t.p), qr(&t.r), qr(&t.h), qr(&t.q())];
    let (p, r, h, q) = (var(0), var(1), var(2), var(3));
    let a2 = r.pow(2).add(&h.pow(2));
    let b2 = q.pow(2).add(&h.pow(2));
    let c2 = p.pow(2);
    let mut certs = Vec::new();
    let mut id = |name: &str, l: &MonomialPolynomial, rgt: &MonomialPolynomial| {
        certs.push(CertificateRecord::identity(name, l, rgt, &at));
    };

    let blocks = [
        (
            "2a^2b^2",
            a2.mul(&b2).scale(2),
            lit(&[
                (2, [0, 2, 0, 2]),
                (2, [0, 0, 2, 2]),
                (2, [0, 2, 2, 0]),
                (2, [0, 0, 4, 0]),
            ]),
        ),
        (
            "2a^2c^2",
            a2.mul(&c2).scale(2),
            lit(&[(2, [2, 2, 0, 0]), (2, [2, 0, 2, 0])]),
        ),
        (
            "2b^2c^2",
            b2.mul(&c2).scale(2),
            lit(&[(2, [2, 0, 0, 2]), (2, [2, 0, 2, 0])]),
        ),
        (
            "-a^4",
            a2.pow(2).neg(),
            lit(&[(-1, [0, 4, 0, 0]), (-2, [0, 2, 2, 0]), (-1, [0, 0, 4, 0])]),
        ),
        (
            "-b^4",
            b2.pow(2).neg(),
            lit(&[(-1, [0, 0, 0, 4]), (-2, [0, 0, 2, 2]), (-1, [0, 0, 4, 0])]),
        ),
        ("-c^4", c2.pow(2).neg(), lit(&[(-1, [4, 0, 0, 0])])),
    ];
    let mut expanded = MonomialPolynomial::zero(&PRHQ);
    let mut rhs = MonomialPolynomial::zero(&PRHQ);
    for (name, block, printed) in &blocks {
        id(&format!("expand {}", name), block, printed);
        expanded = expanded.add(printed);
        rhs = rhs.add(block);
    }

    let cancelled = lit(&[
        (2, [0, 2, 0, 2]),
        (2, [2, 2, 0, 0]),
        (2, [2, 0, 2, 0]),
        (2, [2, 0, 0, 2]),
        (2, [2, 0, 2, 0]),
        (-1, [0, 4, 0, 0]),
        (-1, [0, 0, 0, 4]),
        (-1, [4, 0, 0, 0]),
    ]);
    id("cancel like terms", &expanded, &cancelled);

    let head = lit(&[(4, [2, 0, 2, 0])]);
    let g1 = lit(&[(2, [0, 2, 0, 2]), (2, [2, 0, 0, 2]), (-1, [0, 0, 0, 4])]);
    let g2 = lit(&[(-1, [4, 0, 0, 0]), (2, [2, 2, 0, 0]), (-1, [0, 4, 0, 0])]);
    id("regroup", &head.add(&g1).add(&g2), &cancelled);

    let diff_sq = p.pow(2).sub(&r.pow(2)).pow(2).neg();
    id("factor -(p^2-r^2)^2", &g2, &diff_sq);
    let p_plus_r = p.add(&r);
    let factored = q.pow(2).mul(&p_plus_r.pow(2)).neg();
    id("factor -(p-r)^2*(p+r)^2", &unfold_q(&diff_sq), &unfold_q(&factored));

    let bracket = lit(&[(2, [0, 2, 0, 0]), (2, [2, 0, 0, 0]), (-1, [0, 0, 0, 2])]).sub(&p_plus_r.pow(2));
    id(
        "combine (p-r)^2*[...]",
        &unfold_q(&g1.add(&factored)),
        &unfold_q(&q.pow(2).mul(&bracket)),
    );
    id(
        "bracket vanishes",
        &unfold_q(&bracket),
        &MonomialPolynomial::zero(&PRHQ),
    );
    id("rhs = 4h^2p^2", &unfold_q(&rhs), &unfold_q(&head));

    // Geometric backing for the products of sums and the squared difference.
    let (pq, rq, hq, qq) = (&at[0], &at[1], &at[2], &at[3]);
    certs.push(CertificateRecord::signed(&difference_of_squares_product(pq, rq)?));
    for (name, x, y, z, w) in [
        ("a^2*b^2", rq, hq, qq, hq),
        ("a^4", rq, hq, rq, hq),
        ("b^4", qq, hq, qq, hq),
    ] {
        let s = sum_of_squares_product(x, y, z, w)?;
        certs.push(CertificateRecord::tiling(
            &format!("sum_of_squares {}", name),
            &s.certificate,
        ));
    }

    let left = heron_polynomial(&qr(&t.a2), &qr(&t.b2), &qr(&t.c2()));
    let right = QuadScalar::from_int(4) * hq * hq * pq * pq;
    Ok(ChainStep::new(
        "regrouping",
        ("2a^2b^2+2a^2c^2+2b^2c^2-a^4-b^4-c^4", "4*p^2*h^2"),
        left,
        right,
        certs,
    ))
}

/// A square of side `hyp` cut according to legs `(l1, l2)`; a zero leg leaves
/// the square whole.
fn leg_square(
    l1: &Rational,
    l2: &Rational,
    labels: [&str; 2],
    plane: (usize, usize),
) -> Result<Dissection2D, HeronError> {
    if *l1 == zero() || *l2 == zero() {
        let (side, label) = if *l1 == zero() {
            (l2, labels[1])
        } else {
            (l1, labels[0])
        };
        return Ok(Dissection2D::whole_square(&qr(side), plane, label));
    }
    let t = RightTriangleParams::from_legs(l1.clone(), l2.clone())?;
    let labels = if l1 <= l2 { labels } else { [labels[1], labels[0]] };
    Ok(Dissection2D::windmill(&t, plane, labels))
}

/// The records for one product rewrite; returns them with the source volume
/// and the total target volume.
pub fn rewrite_records(
    name: &str,
    d: &ProductDissection,
    re: &Reassembly,
) -> (Vec<CertificateRecord>, QuadScalar, QuadScalar) {
    let source = d.container.volume();
    let mut certs = vec![CertificateRecord::tiling(&format!("{} source", name), &d.certificate())];
    let split_ok = re.split_certificates.iter().all(|c| c.verdict);
    certs.push(CertificateRecord {
        name: format!("{} cuts", name),
        kind: CertificateKind::Tiling,
        verdict: split_ok,
        expected: source.clone(),
        actual: re.split_certificates.iter().map(TilingCertificate::volume_sum).sum(),
        pieces: re.placements.len(),
        failure: (!split_ok).then(|| "a product piece is not tiled by its parts".to_string()),
    });
    for tg in &re.targets {
        let mut rec = CertificateRecord::tiling(&format!("{} {}", name, tg.name), &tg.certificate);
        if !tg.frame_ok {
            rec.verdict = false;
            rec.failure = Some("frame does not align the target".into());
        }
        certs.push(rec);
    }
    let translations = re.all_translations();
    certs.push(CertificateRecord::congruence(
        &format!("{} translations", name),
        re.placements.len(),
        re.placements.iter().filter(|p| p.isometry.is_translation()).count(),
    ));
    debug_assert_eq!(translations, certs.last().map(|c| c.verdict).unwrap_or(false));
    let targets = re.target_volumes().into_iter().sum();
    (certs, source, targets)
}

/// `a² → r²+h²`, `b² → q²+h²`, `c² → p²` realised by the 4-D product
/// dissections of the leg squares.
pub fn verify_pythagorean_rewrites(t: &TriangleDatum) -> Result<ChainStep, HeronError> {
    let q = t.q();
    let a01 = leg_square(&t.r, &t.h, ["r", "h"], (0, 1))?;
    let b01 = leg_square(&q, &t.h, ["q", "h"], (0, 1))?;
    let a23 = a01.in_plane((2, 3)).expect("valid plane");
    let b23 = b01.in_plane((2, 3)).expect("valid plane");
    let c23 = Dissection2D::whole_square(&t.c(), (2, 3), "p");
    let rewrites = [
        ("a^4", ProductDissection::new(a01.clone(), a23)),
        ("b^4", ProductDissection::new(b01.clone(), b23.clone())),
        ("a^2*b^2", ProductDissection::new(a01.clone(), b23)),
        ("a^2*c^2", ProductDissection::new(a01, c23.clone())),
        ("b^2*c^2", ProductDissection::new(b01, c23)),
    ];
    let results: Vec<_> = std::thread::scope(|s| {
        let handles: Vec<_> = rewrites
            .iter()
            .map(|(name, d)| s.spawn(move || rewrite_records(name, d, &d.reassemble())))
            .collect();
        handles.into_iter().map(|h| h.join().expect("rewrite thread")).collect()
    });
    let mut certs = Vec::new();
    let mut src = Vec::new();
    let mut dst = Vec::new();
    for (c, s, d) in results {
        certs.extend(c);
        src.push(s);
        dst.push(d);
    }
    let c4 = qr(&t.c2()) * qr(&t.c2());
    let combine = |v: &[QuadScalar]| {
        let two = QuadScalar::from_int(2);
        &two * &v[2] + &two * &v[3] + &two * &v[4] - &v[0] - &v[1] - &c4
    };
    Ok(ChainStep::new(
        "pythagorean_rewrites",
        ("2a^2b^2+2a^2c^2+2b^2c^2-a^4-b^4-c^4", "same, over leg-square boxes"),
        combine(&src),
        combine(&dst),
        certs,
    ))
}

/// The 81 signed boxes of the four-factor product cancel down to the polynomial form.
pub fn verify_rhs_expansion(t: &TriangleDatum) -> Result<ChainStep, HeronError> {
    let (a, b, c) = (t.a(), t.b(), t.c());
    let boxes = heron_signed_expansion(&a, &b, &c)?;
    let net = cancel(&boxes, &HERON_SYMBOLS);
    let values = [a.clone(), b.clone(), c.clone()];
    let target = heron_target();
    let product = (&a + &b + &c) * (&a + &b - &c) * (&a - &b + &c) * (-&a + &b + &c);
    let sum = signed_sum(&boxes);
    let sum_ok = sum == product;
    let certs = vec![
        CertificateRecord::cancellation("signed_expansion cancel", &net, &target, &values),
        CertificateRecord {
            name: "signed_expansion sum".into(),
            kind: CertificateKind::SignedEvaluation,
            verdict: sum_ok,
            expected: product.clone(),
            actual: sum,
            pieces: boxes.len(),
            failure: (!sum_ok).then(|| "signed boxes do not sum to the product".to_string()),
        },
    ];
    let left = net.net.eval(&values);
    Ok(ChainStep::new(
        "rhs_expansion",
        ("2a^2b^2+2a^2c^2+2b^2c^2-a^4-b^4-c^4", "(a+b+c)(a+b-c)(a-b+c)(-a+b+c)"),
        left,
        product,
        certs,
    ))
}

/// `16·s(s−a)(s−b)(s−c)` with `s` the semiperimeter.
pub fn heron_radical(t: &TriangleDatum) -> QuadScalar {
    let (a, b, c) = (t.a(), t.b(), t.c());
    let s = (&a + &b + &c) * QuadScalar::from_rational(rat(1, 2));
    QuadScalar::from_int(16) * &s * (&s - &a) * (&s - &b) * (&s - &c)
}

pub fn verify_heron(p: Rational, r: Rational, h: Rational) -> Result<ChainReport, HeronError> {
    let datum = triangle_from_coords(p, r, h)?;
    verify_datum(&datum)
}

pub fn verify_datum(datum: &TriangleDatum) -> Result<ChainReport, HeronError> {
    let (lhs, regroup, rewrites, rhs) = std::thread::scope(|s| {
        let lhs = s.spawn(|| verify_lhs(datum));
        let regroup = s.spawn(|| verify_regrouping(datum));
        let rhs = s.spawn(|| verify_rhs_expansion(datum));
        let rewrites = verify_pythagorean_rewrites(datum);
        (
            lhs.join().expect("lhs thread"),
            regroup.join().expect("regrouping thread"),
            rewrites,
            rhs.join().expect("expansion thread"),
        )
    });
    let mut report = ChainReport {
        datum: datum.clone(),
        steps: vec![lhs, regroup?, rewrites?, rhs?],
        radical: heron_radical(datum),
        verdict: false,
    };
    report.recompute_verdict();
    Ok(report)
}
