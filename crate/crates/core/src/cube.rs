//! Decompositions of the n-cube: the n! ordering simplices built by the L7
//! recursion, the n pyramids, the quartering of the 4-cube into products of
//! triangles, their six-simplex refinements, and the sum-of-cubes identity.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use thiserror::Error;

use crate::geometry::{certify_tiling, Piece, Point4, Polygon2, TilingCertificate};
use crate::scalar::{QuadScalar, Rational};

pub const MAX_DIM: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CubeError {
    #[error("dimension {n} outside {min}..={max}")]
    OutOfRange { n: usize, min: usize, max: usize },
    #[error("edge length must be positive")]
    NonPositiveEdge,
    #[error("unknown piece {0:?}; expected DeltaDelta or P4")]
    UnknownPiece(String),
}

fn check_dim(n: usize, min: usize) -> Result<(), CubeError> {
    if (min..=MAX_DIM).contains(&n) {
        Ok(())
    } else {
        Err(CubeError::OutOfRange { n, min, max: MAX_DIM })
    }
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// `(n+1) × n` array of 0/1 vertex coordinates of one ordering simplex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexMatrix {
    rows: Vec<Vec<u8>>,
}

impl VertexMatrix {
    /// Checks the staircase shape: zeros on top, ones at the bottom, one new
    /// 1 per row.
    pub fn new(rows: Vec<Vec<u8>>) -> Option<Self> {
        let n = rows.len().checked_sub(1)?;
        if rows.iter().any(|r| r.len() != n || r.iter().any(|&x| x > 1)) {
            return None;
        }
        if rows[0].iter().any(|&x| x != 0) {
            return None;
        }
        for k in 1..=n {
            let turned_on = (0..n).filter(|&c| rows[k][c] != rows[k - 1][c]).collect::<Vec<_>>();
            if turned_on.len() != 1 || rows[k][turned_on[0]] != 1 {
                return None;
            }
        }
        Some(VertexMatrix { rows })
    }

    pub fn rows(&self) -> &[Vec<u8>] {
        &self.rows
    }

    pub fn dim(&self) -> usize {
        self.rows.len() - 1
    }

    /// The coordinate order whose simplex has these vertices.
    pub fn ordering(&self) -> OrderingSimplex {
        let n = self.dim();
        let mut order = vec![0; n];
        for k in 1..=n {
            let c = (0..n)
                .find(|&c| self.rows[k][c] != self.rows[k - 1][c])
                .expect("staircase rows differ in one column");
            order[n - k] = c;
        }
        OrderingSimplex { order }
    }

    /// `|det|` of the edge vectors from the origin vertex (always 1).
    pub fn abs_det(&self) -> u64 {
        let n = self.dim();
        let mut m: Vec<Vec<i128>> = self.rows[1..]
            .iter()
            .map(|r| r.iter().map(|&x| x as i128).collect())
            .collect();
        // Bareiss elimination stays in the integers.
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| m[i][k] != 0) else {
                return 0;
            };
            if p != k {
                m.swap(p, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
                }
                m[i][k] = 0;
            }
            prev = m[k][k];
        }
        (sign * m[n - 1][n - 1]).unsigned_abs() as u64
    }
}

/// The simplex `0 ≤ x_{σ(1)} ≤ … ≤ x_{σ(n)} ≤ 1`, axes numbered from 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderingSimplex {
    order: Vec<usize>,
}

const LETTERS: [char; 4] = ['x', 'y', 'z', 'w'];

impl OrderingSimplex {
    pub fn new(order: Vec<usize>) -> Option<Self> {
        let mut seen = vec![false; order.len()];
        for &a in &order {
            if a >= order.len() || seen[a] {
                return None;
            }
            seen[a] = true;
        }
        Some(OrderingSimplex { order })
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn dim(&self) -> usize {
        self.order.len()
    }

    /// Axis with the largest coordinate.
    pub fn top(&self) -> usize {
        *self.order.last().expect("non-empty ordering")
    }

    /// Position of `axis` in the order.
    pub fn rank_of(&self, axis: usize) -> usize {
        self.order.iter().position(|&a| a == axis).expect("axis in range")
    }

    pub fn vertex_matrix(&self) -> VertexMatrix {
        let n = self.dim();
        let rows = (0..=n)
            .map(|k| {
                let mut row = vec![0u8; n];
                for &a in &self.order[n - k..] {
                    row[a] = 1;
                }
                row
            })
            .collect();
        VertexMatrix { rows }
    }

    /// The 4-simplex scaled by `edge`; requires dimension 4.
    pub fn to_piece(&self, edge: &QuadScalar) -> Piece {
        assert_eq!(self.dim(), 4, "only 4-dimensional orderings are geometric");
        let m = self.vertex_matrix();
        let verts: [Point4; 5] = std::array::from_fn(|k| {
            std::array::from_fn(|c| {
                if m.rows[k][c] == 1 {
                    edge.clone()
                } else {
                    QuadScalar::zero()
                }
            })
        });
        Piece::simplex(verts).expect("staircase simplices are non-degenerate")
    }

    /// Short name such as `xzyw` (four axes) or `x1<=x3<=x2` otherwise.
    pub fn label(&self) -> String {
        if self.dim() == 4 {
            self.order.iter().map(|&a| LETTERS[a]).collect()
        } else {
            self.order
                .iter()
                .map(|a| format!("x{}", a + 1))
                .collect::<Vec<_>>()
                .join("<=")
        }
    }

    /// Parses a four-letter label such as `zxwy`.
    pub fn from_label(s: &str) -> Option<Self> {
        let order = s
            .chars()
            .map(|ch| LETTERS.iter().position(|&l| l == ch))
            .collect::<Option<Vec<_>>>()?;
        if order.len() != 4 {
            return None;
        }
        OrderingSimplex::new(order)
    }
}

impl fmt::Display for OrderingSimplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.dim() == 4 {
            let parts: Vec<String> = self.order.iter().map(|&a| LETTERS[a].to_string()).collect();
            write!(f, "{}", parts.join("<="))
        } else {
            f.write_str(&self.label())
        }
    }
}

/// All `n!` vertex matrices, built recursively: for each matrix of size
/// `n − 1` and each column `j` from the rightmost to the leftmost, put a
/// column of ones under the `j`-th zero and fill the rest with the smaller
/// matrix.
pub fn l7_vertex_matrices(n: usize) -> Result<Vec<VertexMatrix>, CubeError> {
    check_dim(n, 1)?;
    Ok(l7(n))
}

fn l7(n: usize) -> Vec<VertexMatrix> {
    if n == 1 {
        return vec![VertexMatrix {
            rows: vec![vec![0], vec![1]],
        }];
    }
    let mut out = Vec::with_capacity(factorial(n) as usize);
    for sub in l7(n - 1) {
        for j in (0..n).rev() {
            let mut rows = vec![vec![0u8; n]];
            for k in 1..=n {
                let mut row = sub.rows[k - 1].clone();
                row.insert(j, 1);
                rows.push(row);
            }
            out.push(VertexMatrix { rows });
        }
    }
    out
}

/// The cube `[0, edge]ⁿ` cut into its `n!` ordering simplices.
#[derive(Clone, Debug)]
pub struct SimplicialDecomposition {
    pub n: usize,
    pub edge: QuadScalar,
    pub matrices: Vec<VertexMatrix>,
    pub orderings: Vec<OrderingSimplex>,
    /// Geometric pieces, present only for `n = 4`.
    pub pieces: Option<Vec<Piece>>,
}

impl SimplicialDecomposition {
    /// Volume of each simplex, `edgeⁿ · |det| / n!`.
    pub fn volumes(&self) -> Vec<QuadScalar> {
        let scale = self.edge.pow(self.n as u32);
        self.matrices
            .iter()
            .map(|m| {
                let frac = Rational::new(m.abs_det().into(), factorial(self.n).into());
                &scale * &QuadScalar::from_rational(frac)
            })
            .collect()
    }

    pub fn container_volume(&self) -> QuadScalar {
        self.edge.pow(self.n as u32)
    }

    /// Exact tiling certificate for `n = 4`.
    pub fn certificate(&self) -> Option<TilingCertificate> {
        self.pieces
            .as_ref()
            .map(|p| certify_tiling(&Piece::cube(&self.edge), p))
    }

    /// Combinatorial tiling check for any `n`: the orderings are pairwise
    /// distinct (distinct orderings have disjoint interiors) and the volumes
    /// add up to the cube.
    pub fn combinatorial_ok(&self) -> bool {
        let mut sorted = self.orderings.clone();
        sorted.sort();
        sorted.dedup();
        let total: QuadScalar = self.volumes().iter().sum();
        sorted.len() == self.orderings.len()
            && self.orderings.len() as u64 == factorial(self.n)
            && total == self.container_volume()
    }
}

pub fn simplicial_decomposition(n: usize, edge: &QuadScalar) -> Result<SimplicialDecomposition, CubeError> {
    check_dim(n, 1)?;
    if !edge.is_positive() {
        return Err(CubeError::NonPositiveEdge);
    }
    let matrices = l7(n);
    let orderings: Vec<OrderingSimplex> = matrices.iter().map(VertexMatrix::ordering).collect();
    let pieces = (n == 4).then(|| orderings.iter().map(|o| o.to_piece(edge)).collect());
    Ok(SimplicialDecomposition {
        n,
        edge: edge.clone(),
        matrices,
        orderings,
        pieces,
    })
}

/// `P_k`: the points of the unit cube whose coordinate `k` is largest.
#[derive(Clone, Debug)]
pub struct Pyramid {
    /// Dominant axis, numbered from 0.
    pub axis: usize,
    /// Its `(n−1)!` ordering simplices.
    pub orderings: Vec<OrderingSimplex>,
    pub volume: Rational,
}

impl Pyramid {
    pub fn pieces(&self) -> Option<Vec<Piece>> {
        (self.orderings.first()?.dim() == 4)
            .then(|| self.orderings.iter().map(|o| o.to_piece(&QuadScalar::one())).collect())
    }
}

/// `P_1, …, P_n` of the unit cube, each refined into ordering simplices.
pub fn pyramidal_decomposition(n: usize) -> Result<Vec<Pyramid>, CubeError> {
    check_dim(n, 2)?;
    let all: Vec<OrderingSimplex> = l7(n).iter().map(VertexMatrix::ordering).collect();
    Ok((0..n)
        .map(|axis| {
            let orderings: Vec<OrderingSimplex> = all.iter().filter(|o| o.top() == axis).cloned().collect();
            let volume = Rational::new((orderings.len() as u64).into(), factorial(n).into());
            Pyramid {
                axis,
                orderings,
                volume,
            }
        })
        .collect())
}

/// Right isosceles triangle `{0 ≤ u ≤ v ≤ e}` (`upper`) or `{0 ≤ v ≤ u ≤ e}`.
fn half_square(plane: (usize, usize), e: &QuadScalar, upper: bool) -> Polygon2 {
    let z = || QuadScalar::zero();
    let pts = if upper {
        vec![[z(), z()], [e.clone(), e.clone()], [z(), e.clone()]]
    } else {
        vec![[z(), z()], [e.clone(), z()], [e.clone(), e.clone()]]
    };
    Polygon2::new(plane, pts).expect("positive edge gives a proper triangle")
}

/// `Δ_{x≤y}×Δ_{z≤w}, Δ_{y≤x}×Δ_{z≤w}, Δ_{x≤y}×Δ_{w≤z}, Δ_{y≤x}×Δ_{w≤z}` in `[0, edge]⁴`.
pub fn quarter_hypercube(edge: &QuadScalar) -> Result<Vec<Piece>, CubeError> {
    if !edge.is_positive() {
        return Err(CubeError::NonPositiveEdge);
    }
    let mut out = Vec::with_capacity(4);
    for zw in [true, false] {
        for xy in [true, false] {
            out.push(
                Piece::product(half_square((0, 1), edge, xy), half_square((2, 3), edge, zw))
                    .expect("planes (0,1) and (2,3) partition the axes"),
            );
        }
    }
    Ok(out)
}

/// Index (0..4) of the quarter piece that contains an ordering simplex.
pub fn quarter_of(o: &OrderingSimplex) -> usize {
    let xy = o.rank_of(0) < o.rank_of(1);
    let zw = o.rank_of(2) < o.rank_of(3);
    match (xy, zw) {
        (true, true) => 0,
        (false, true) => 1,
        (true, false) => 2,
        (false, false) => 3,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SixPiece {
    /// `Δ_{x≤y} × Δ_{z≤w}`
    DeltaDelta,
    /// The pyramid where `w` dominates.
    P4,
}

impl FromStr for SixPiece {
    type Err = CubeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "DeltaDelta" | "delta-delta" => Ok(SixPiece::DeltaDelta),
            "P4" | "p4" => Ok(SixPiece::P4),
            other => Err(CubeError::UnknownPiece(other.to_string())),
        }
    }
}

/// Six ordering simplices, with a flag on those common to both refinements.
#[derive(Clone, Debug)]
pub struct SixRefinement {
    pub piece: SixPiece,
    pub orderings: Vec<OrderingSimplex>,
    pub shared: Vec<bool>,
}

impl SixRefinement {
    pub fn shared_orderings(&self) -> Vec<OrderingSimplex> {
        self.orderings
            .iter()
            .zip(&self.shared)
            .filter(|(_, &s)| s)
            .map(|(o, _)| o.clone())
            .collect()
    }
}

const DELTA_DELTA_SIX: [&str; 6] = ["xyzw", "xzwy", "xzyw", "zxwy", "zxyw", "zwxy"];
const P4_SIX: [&str; 6] = ["xyzw", "yxzw", "xzyw", "yzxw", "zxyw", "zyxw"];

pub fn refine_to_six(piece: SixPiece) -> SixRefinement {
    let parse = |labels: &[&str; 6]| -> Vec<OrderingSimplex> {
        labels
            .iter()
            .map(|l| OrderingSimplex::from_label(l).expect("fixed labels are valid"))
            .collect()
    };
    let (mine, other) = match piece {
        SixPiece::DeltaDelta => (parse(&DELTA_DELTA_SIX), parse(&P4_SIX)),
        SixPiece::P4 => (parse(&P4_SIX), parse(&DELTA_DELTA_SIX)),
    };
    let shared = mine.iter().map(|o| other.contains(o)).collect();
    SixRefinement {
        piece,
        orderings: mine,
        shared,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nicomachus {
    pub n: u64,
    pub sum_of_cubes: BigUint,
    pub square_of_triangular: BigUint,
    pub equal: bool,
}

/// `1³ + … + n³` against `(n(n+1)/2)²` by direct summation.
pub fn nicomachus_check(n: u64) -> Nicomachus {
    let sum_of_cubes: BigUint = (1..=n).map(|k| BigUint::from(k).pow(3)).sum();
    let tri = BigUint::from(n) * BigUint::from(n + 1) / 2u32;
    let square_of_triangular = &tri * &tri;
    Nicomachus {
        n,
        equal: sum_of_cubes == square_of_triangular,
        sum_of_cubes,
        square_of_triangular,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::congruent;
    use crate::scalar::rat;

    fn rows(m: &VertexMatrix) -> Vec<Vec<u8>> {
        m.rows().to_vec()
    }

    #[test]
    fn small_l7_matrices_in_display_order() {
        let one = l7_vertex_matrices(1).unwrap();
        assert_eq!(rows(&one[0]), vec![vec![0], vec![1]]);
        let two = l7_vertex_matrices(2).unwrap();
        assert_eq!(rows(&two[0]), vec![vec![0, 0], vec![0, 1], vec![1, 1]]);
        assert_eq!(rows(&two[1]), vec![vec![0, 0], vec![1, 0], vec![1, 1]]);
        let three = l7_vertex_matrices(3).unwrap();
        let shown: [[[u8; 3]; 4]; 6] = [
            [[0, 0, 0], [0, 0, 1], [0, 1, 1], [1, 1, 1]],
            [[0, 0, 0], [0, 1, 0], [0, 1, 1], [1, 1, 1]],
            [[0, 0, 0], [1, 0, 0], [1, 0, 1], [1, 1, 1]],
            [[0, 0, 0], [0, 0, 1], [1, 0, 1], [1, 1, 1]],
            [[0, 0, 0], [0, 1, 0], [1, 1, 0], [1, 1, 1]],
            [[0, 0, 0], [1, 0, 0], [1, 1, 0], [1, 1, 1]],
        ];
        for (m, want) in three.iter().zip(shown) {
            let want: Vec<Vec<u8>> = want.iter().map(|r| r.to_vec()).collect();
            assert_eq!(rows(m), want);
        }
    }

    #[test]
    fn out_of_range_dimensions() {
        assert!(l7_vertex_matrices(0).is_err());
        assert!(l7_vertex_matrices(9).is_err());
        assert!(pyramidal_decomposition(1).is_err());
        assert!(quarter_hypercube(&QuadScalar::zero()).is_err());
    }

    #[test]
    fn matrices_and_orderings_correspond() {
        for n in 1..=6 {
            let ms = l7_vertex_matrices(n).unwrap();
            assert_eq!(ms.len() as u64, factorial(n));
            let mut seen = std::collections::HashSet::new();
            for m in &ms {
                assert!(VertexMatrix::new(m.rows().to_vec()).is_some());
                assert_eq!(m.abs_det(), 1);
                let o = m.ordering();
                assert_eq!(&o.vertex_matrix(), m);
                assert!(seen.insert(o));
            }
        }
    }

    #[test]
    fn staircase_validation() {
        assert!(VertexMatrix::new(vec![vec![0, 0], vec![1, 1], vec![1, 1]]).is_none());
        assert!(VertexMatrix::new(vec![vec![1, 0], vec![1, 1], vec![1, 1]]).is_none());
        assert!(VertexMatrix::new(vec![vec![0, 0], vec![0, 1], vec![1, 1]]).is_some());
    }

    #[test]
    fn four_cube_tiling() {
        let d = simplicial_decomposition(4, &QuadScalar::one()).unwrap();
        let pieces = d.pieces.as_ref().unwrap();
        assert_eq!(pieces.len(), 24);
        for p in pieces {
            assert_eq!(p.volume(), QuadScalar::from_rational(rat(1, 24)));
        }
        assert!(d.certificate().unwrap().verdict);
        assert!(d.combinatorial_ok());
        let w = congruent(&pieces[0], &pieces[23]).unwrap();
        assert!(w.as_signed_permutation().is_some());
    }

    #[test]
    fn low_dimensional_tilings_are_combinatorial() {
        let two = simplicial_decomposition(2, &QuadScalar::one()).unwrap();
        assert!(two.pieces.is_none());
        assert_eq!(two.volumes(), vec![QuadScalar::from_rational(rat(1, 2)); 2]);
        assert!(two.combinatorial_ok());
        let three = simplicial_decomposition(3, &QuadScalar::one()).unwrap();
        assert_eq!(three.volumes(), vec![QuadScalar::from_rational(rat(1, 6)); 6]);
        assert!(three.combinatorial_ok());
        let scaled = simplicial_decomposition(3, &QuadScalar::from_int(2)).unwrap();
        assert_eq!(scaled.volumes()[0], QuadScalar::from_rational(rat(8, 6)));
    }

    #[test]
    fn pyramids() {
        for n in 2..=5 {
            let ps = pyramidal_decomposition(n).unwrap();
            assert_eq!(ps.len(), n);
            for p in &ps {
                assert_eq!(p.orderings.len() as u64, factorial(n - 1));
                assert_eq!(p.volume, rat(1, n as i64));
            }
        }
        let p4 = &pyramidal_decomposition(4).unwrap()[3];
        let pieces = p4.pieces().unwrap();
        let total: QuadScalar = pieces.iter().map(Piece::volume).sum();
        assert_eq!(total, QuadScalar::from_rational(rat(1, 4)));
    }

    #[test]
    fn quartering() {
        let q = quarter_hypercube(&QuadScalar::one()).unwrap();
        assert_eq!(q.len(), 4);
        for p in &q {
            assert_eq!(p.volume(), QuadScalar::from_rational(rat(1, 4)));
        }
        assert!(certify_tiling(&Piece::cube(&QuadScalar::one()), &q).verdict);
        let w = congruent(&q[0], &q[1]).unwrap();
        assert_eq!(w.as_signed_permutation().unwrap().0, [1, 0, 2, 3]);
    }

    #[test]
    fn quarter_and_pyramid_partitions_meet_in_threes() {
        let ords: Vec<OrderingSimplex> = l7(4).iter().map(VertexMatrix::ordering).collect();
        let mut table = [[0usize; 4]; 4];
        for o in &ords {
            table[quarter_of(o)][o.top()] += 1;
        }
        for row in table {
            assert_eq!(row.iter().sum::<usize>(), 6);
            let mut sorted = row;
            sorted.sort_unstable();
            assert_eq!(sorted, [0, 0, 3, 3]);
        }
    }

    #[test]
    fn six_simplex_refinements() {
        let dd = refine_to_six(SixPiece::DeltaDelta);
        let p4 = refine_to_six(SixPiece::P4);
        assert_eq!(dd.shared_orderings(), p4.shared_orderings());
        let labels: Vec<String> = dd.shared_orderings().iter().map(|o| o.label()).collect();
        assert_eq!(labels, vec!["xyzw", "xzyw", "zxyw"]);
        assert!(dd.orderings.iter().all(|o| quarter_of(o) == 0));
        assert!(p4.orderings.iter().all(|o| o.top() == 3));
        let pieces: Vec<Piece> = dd.orderings.iter().map(|o| o.to_piece(&QuadScalar::one())).collect();
        let container = &quarter_hypercube(&QuadScalar::one()).unwrap()[0];
        assert!(certify_tiling(container, &pieces).verdict);
        assert!("P5".parse::<SixPiece>().is_err());
    }

    #[test]
    fn sum_of_cubes() {
        assert_eq!(nicomachus_check(3).sum_of_cubes, BigUint::from(36u32));
        assert_eq!(nicomachus_check(1).square_of_triangular, BigUint::from(1u32));
        let c = nicomachus_check(24);
        assert!(c.equal);
        let direct: u64 = (1..=24u64).map(|k| k * k * k).sum();
        assert_eq!(c.sum_of_cubes, BigUint::from(direct));
    }
}
