//! Checkable evidence that a list of pieces tiles a container.

use std::collections::HashMap;

use crate::scalar::QuadScalar;

use super::piece::Piece;
use super::polygon::Polygon2;

/// Containment, exact volume balance and pairwise interior-disjointness.
///
/// The three checks together give an almost-everywhere tiling: disjoint
/// pieces inside the container whose volumes add up to the container's
/// volume leave only a null set uncovered.
#[derive(Clone, Debug, PartialEq)]
pub struct TilingCertificate {
    pub container_volume: QuadScalar,
    pub piece_volumes: Vec<QuadScalar>,
    pub containment_ok: bool,
    pub volume_sum_ok: bool,
    pub disjoint_ok: bool,
    pub verdict: bool,
    /// Indices of pieces that stick out of the container.
    pub uncontained: Vec<usize>,
    /// Index pairs whose interiors could not be shown disjoint.
    pub overlapping: Vec<(usize, usize)>,
}

impl TilingCertificate {
    fn assemble(
        container_volume: QuadScalar,
        piece_volumes: Vec<QuadScalar>,
        uncontained: Vec<usize>,
        overlapping: Vec<(usize, usize)>,
    ) -> Self {
        let total = piece_volumes
            .iter()
            .try_fold(QuadScalar::zero(), |acc, v| acc.checked_add(v));
        let volume_sum_ok = matches!(total, Ok(t) if t == container_volume);
        let containment_ok = uncontained.is_empty();
        let disjoint_ok = overlapping.is_empty();
        TilingCertificate {
            container_volume,
            piece_volumes,
            containment_ok,
            volume_sum_ok,
            disjoint_ok,
            verdict: containment_ok && volume_sum_ok && disjoint_ok,
            uncontained,
            overlapping,
        }
    }

    /// Certificate for the products `A_k × B_l` (row-major in `k, l`) tiling
    /// `A × B`, read off the certificates of the two factor tilings.
    ///
    /// Products of sets are contained, disjoint or of full measure exactly
    /// when their factors are, so nothing is lost by composing.
    pub fn product(a: &TilingCertificate, b: &TilingCertificate) -> TilingCertificate {
        let (na, nb) = (a.piece_volumes.len(), b.piece_volumes.len());
        let volumes = a
            .piece_volumes
            .iter()
            .flat_map(|va| b.piece_volumes.iter().map(move |vb| va * vb))
            .collect();
        let uncontained = (0..na * nb)
            .filter(|i| a.uncontained.contains(&(i / nb)) || b.uncontained.contains(&(i % nb)))
            .collect();
        // Interiors of A_k and A_k' meet when k = k' (positive area) or the pair is listed.
        let meets = |c: &TilingCertificate, i: usize, j: usize| {
            if i == j {
                !c.piece_volumes[i].is_zero()
            } else {
                c.overlapping.contains(&(i.min(j), i.max(j)))
            }
        };
        let mut overlapping = Vec::new();
        for i in 0..na * nb {
            for j in i + 1..na * nb {
                if meets(a, i / nb, j / nb) && meets(b, i % nb, j % nb) {
                    overlapping.push((i, j));
                }
            }
        }
        TilingCertificate::assemble(
            &a.container_volume * &b.container_volume,
            volumes,
            uncontained,
            overlapping,
        )
    }

    /// Sum of the piece volumes.
    pub fn volume_sum(&self) -> QuadScalar {
        self.piece_volumes.iter().sum()
    }

    /// Human-readable reason for a false verdict.
    pub fn failure(&self) -> Option<String> {
        if self.verdict {
            return None;
        }
        let mut parts = Vec::new();
        if !self.containment_ok {
            parts.push(format!("pieces {:?} leave the container", self.uncontained));
        }
        if !self.volume_sum_ok {
            parts.push(format!(
                "piece volumes sum to {} but the container has {}",
                self.volume_sum(),
                self.container_volume
            ));
        }
        if !self.disjoint_ok {
            parts.push(format!("piece pairs {:?} overlap", self.overlapping));
        }
        if parts.is_empty() {
            parts.push("verdict was overridden".into());
        }
        Some(parts.join("; "))
    }
}

pub fn certify_tiling(container: &Piece, pieces: &[Piece]) -> TilingCertificate {
    let mut grid = ProductGrid::new(pieces);
    let uncontained = match grid.as_ref().and_then(|g| g.contained(container)) {
        Some(ok) => (0..pieces.len()).filter(|&i| !ok[i]).collect(),
        None => (0..pieces.len()).filter(|&i| !container.contains(&pieces[i])).collect(),
    };
    let volumes: Vec<QuadScalar> = pieces.iter().map(Piece::volume).collect();
    let solid: Vec<usize> = (0..pieces.len()).filter(|&i| !volumes[i].is_zero()).collect();
    let mut overlapping = Vec::new();
    for (k, &i) in solid.iter().enumerate() {
        for &j in &solid[k + 1..] {
            let apart = match grid.as_mut() {
                Some(g) => g.separated(i, j),
                None => pieces[i].separated_from(&pieces[j]),
            };
            if !apart {
                overlapping.push((i, j));
            }
        }
    }
    TilingCertificate::assemble(container.volume(), volumes, uncontained, overlapping)
}

/// Pieces that are all products over one plane pair, with their distinct
/// factors interned so each planar disjointness test runs once.
struct ProductGrid {
    planes: [(usize, usize); 2],
    factors: [Vec<Polygon2>; 2],
    ids: Vec<[usize; 2]>,
    memo: [HashMap<(usize, usize), bool>; 2],
}

impl ProductGrid {
    fn new(pieces: &[Piece]) -> Option<Self> {
        let planes = pieces.iter().find_map(Piece::product_planes)?;
        let mut factors: [Vec<Polygon2>; 2] = Default::default();
        let mut ids = Vec::with_capacity(pieces.len());
        for piece in pieces {
            let pair = piece.product_factors(planes)?;
            let id = |slot: &mut Vec<Polygon2>, f: Polygon2| match slot.iter().position(|g| *g == f) {
                Some(k) => k,
                None => {
                    slot.push(f);
                    slot.len() - 1
                }
            };
            let [f0, f1] = pair;
            let [s0, s1] = &mut factors;
            ids.push([id(s0, f0), id(s1, f1)]);
        }
        Some(ProductGrid {
            planes,
            factors,
            ids,
            memo: Default::default(),
        })
    }

    /// Per piece: inside `container`, when the container splits over the same planes.
    fn contained(&self, container: &Piece) -> Option<Vec<bool>> {
        let outer = container.product_factors(self.planes)?;
        let inside: Vec<Vec<bool>> = (0..2)
            .map(|slot| self.factors[slot].iter().map(|f| outer[slot].contains(f)).collect())
            .collect();
        Some(self.ids.iter().map(|[a, b]| inside[0][*a] && inside[1][*b]).collect())
    }

    fn separated(&mut self, i: usize, j: usize) -> bool {
        (0..2).any(|slot| {
            let (a, b) = (self.ids[i][slot], self.ids[j][slot]);
            let key = (a.min(b), a.max(b));
            let polys = &self.factors[slot];
            *self.memo[slot]
                .entry(key)
                .or_insert_with(|| polys[key.0].interior_disjoint(&polys[key.1]))
        })
    }
}

/// Planar counterpart of [`certify_tiling`]; all polygons must share a plane.
pub fn certify_tiling_2d(container: &Polygon2, pieces: &[Polygon2]) -> TilingCertificate {
    let uncontained = (0..pieces.len())
        .filter(|&i| pieces[i].plane() != container.plane() || !container.contains(&pieces[i]))
        .collect();
    let mut overlapping = Vec::new();
    for i in 0..pieces.len() {
        for j in i + 1..pieces.len() {
            if !pieces[i].interior_disjoint(&pieces[j]) {
                overlapping.push((i, j));
            }
        }
    }
    TilingCertificate::assemble(
        container.area(),
        pieces.iter().map(Polygon2::area).collect(),
        uncontained,
        overlapping,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::linalg::point4;
    use crate::geometry::polygon::point2;
    use crate::scalar::rat;

    fn half(n: i64) -> QuadScalar {
        QuadScalar::from_rational(rat(n, 2))
    }

    fn halves() -> Vec<Piece> {
        let q = QuadScalar::from_int;
        let slab = |lo: QuadScalar, hi: QuadScalar| {
            Piece::boxed([(lo, hi), (q(0), q(1)), (q(0), q(1)), (q(0), q(1))]).unwrap()
        };
        vec![slab(q(0), half(1)), slab(half(1), q(1))]
    }

    #[test]
    fn two_slabs_tile_the_cube() {
        let cert = certify_tiling(&Piece::cube(&QuadScalar::one()), &halves());
        assert!(cert.verdict);
        assert_eq!(cert.volume_sum(), QuadScalar::one());
        assert!(cert.failure().is_none());
    }

    #[test]
    fn duplicated_piece_is_caught_by_disjointness() {
        let mut pieces = halves();
        pieces[1] = pieces[0].clone();
        let cert = certify_tiling(&Piece::cube(&QuadScalar::one()), &pieces);
        assert!(cert.containment_ok);
        assert!(!cert.disjoint_ok);
        assert!(!cert.verdict);
    }

    #[test]
    fn shifted_piece_leaves_the_container() {
        let mut pieces = halves();
        pieces[1] = pieces[1].translated(&point4([0, 0, 0, 1]));
        let cert = certify_tiling(&Piece::cube(&QuadScalar::one()), &pieces);
        assert!(!cert.containment_ok);
        assert_eq!(cert.uncontained, vec![1]);
        assert!(cert.failure().unwrap().contains("leave the container"));
    }

    #[test]
    fn planar_certificate() {
        let sq = Polygon2::rectangle((0, 1), (0.into(), 1.into()), (0.into(), 1.into())).unwrap();
        let lower = Polygon2::new((0, 1), vec![point2(0, 0), point2(1, 0), point2(1, 1)]).unwrap();
        let upper = Polygon2::new((0, 1), vec![point2(0, 0), point2(1, 1), point2(0, 1)]).unwrap();
        assert!(certify_tiling_2d(&sq, &[lower.clone(), upper]).verdict);
        assert!(!certify_tiling_2d(&sq, &[lower.clone(), lower]).verdict);
    }

    #[test]
    fn product_certificate_matches_direct_check() {
        let tri = |plane, pts: [(i64, i64); 3]| {
            Polygon2::from_loose(plane, pts.iter().map(|&(u, v)| point2(u, v)).collect()).unwrap()
        };
        let square = |plane| Polygon2::rectangle(plane, (0.into(), 1.into()), (0.into(), 1.into())).unwrap();
        let halves = |plane| {
            vec![
                tri(plane, [(0, 0), (1, 0), (1, 1)]),
                tri(plane, [(0, 0), (1, 1), (0, 1)]),
            ]
        };
        let (a, b) = (halves((0, 1)), halves((2, 3)));
        let ca = certify_tiling_2d(&square((0, 1)), &a);
        let cb = certify_tiling_2d(&square((2, 3)), &b);
        let pieces: Vec<Piece> = a
            .iter()
            .flat_map(|x| b.iter().map(move |y| Piece::product(x.clone(), y.clone()).unwrap()))
            .collect();
        let direct = certify_tiling(&Piece::cube(&QuadScalar::one()), &pieces);
        let composed = TilingCertificate::product(&ca, &cb);
        assert!(composed.verdict && direct.verdict);
        assert_eq!(composed.piece_volumes, direct.piece_volumes);

        let doubled = vec![a[0].clone(), a[0].clone()];
        let bad = TilingCertificate::product(&certify_tiling_2d(&square((0, 1)), &doubled), &cb);
        let pieces: Vec<Piece> = doubled
            .iter()
            .flat_map(|x| b.iter().map(move |y| Piece::product(x.clone(), y.clone()).unwrap()))
            .collect();
        let direct = certify_tiling(&Piece::cube(&QuadScalar::one()), &pieces);
        assert_eq!(bad.overlapping, direct.overlapping);
        assert!(!bad.verdict);
    }
}
