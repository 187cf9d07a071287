//! Search for an isometry carrying one piece onto another.

use std::cmp::Ordering;

use crate::scalar::QuadScalar;

use super::isometry::IsometryMap;
use super::linalg::{norm2, solve, sub, subtract_multiple, Matrix4, Point4};
use super::piece::Piece;

/// A witness `g` with `g(p1) = p2` as point sets, or `None`.
///
/// Signed coordinate permutations are tried first, plain permutations before
/// sign changes and the identity first of all. Otherwise the search maps
/// an affine basis of `p1` onto vertices of `p2` with matching distances,
/// solves for the linear part and checks it is orthogonal.
pub fn congruent(p1: &Piece, p2: &Piece) -> Option<IsometryMap> {
    let v1 = p1.vertices();
    let v2 = p2.vertices();
    if v1.len() != v2.len() || !same_distance_profile(&v1, &v2) {
        return None;
    }
    signed_permutation_witness(&v1, &v2).or_else(|| general_witness(&v1, &v2))
}

fn sorted_distances(v: &[Point4]) -> Option<Vec<QuadScalar>> {
    let mut d = Vec::with_capacity(v.len() * v.len() / 2);
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            d.push(norm2(&sub(&v[i], &v[j])));
        }
    }
    let mut failed = false;
    d.sort_by(|a, b| {
        a.cmp_exact(b).unwrap_or_else(|_| {
            failed = true;
            Ordering::Equal
        })
    });
    (!failed).then_some(d)
}

fn same_distance_profile(v1: &[Point4], v2: &[Point4]) -> bool {
    match (sorted_distances(v1), sorted_distances(v2)) {
        (Some(a), Some(b)) => a == b,
        _ => false,
    }
}

fn centroid(v: &[Point4]) -> Point4 {
    let n = QuadScalar::from_int(v.len() as i64);
    std::array::from_fn(|k| v.iter().map(|p| p[k].clone()).sum::<QuadScalar>() / n.clone())
}

fn permutations4() -> Vec<[usize; 4]> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4 {
        for b in (0..4).filter(|&b| b != a) {
            for c in (0..4).filter(|&c| c != a && c != b) {
                let d = 6 - a - b - c;
                out.push([a, b, c, d]);
            }
        }
    }
    out
}

fn signed_permutation_witness(v1: &[Point4], v2: &[Point4]) -> Option<IsometryMap> {
    let c1 = centroid(v1);
    let c2 = centroid(v2);
    let perms = permutations4();
    for mask in 0..16u8 {
        for &perm in &perms {
            let signs: [i8; 4] = std::array::from_fn(|i| if mask >> i & 1 == 1 { -1 } else { 1 });
            let linear = |p: &Point4| -> Point4 {
                let mut out: Point4 = std::array::from_fn(|_| QuadScalar::zero());
                for i in 0..4 {
                    out[perm[i]] = if signs[i] > 0 { p[i].clone() } else { -&p[i] };
                }
                out
            };
            let lc1 = linear(&c1);
            let t: Point4 = std::array::from_fn(|k| &c2[k] - &lc1[k]);
            let hits = v1.iter().all(|p| {
                let lp = linear(p);
                let img: Point4 = std::array::from_fn(|k| &lp[k] + &t[k]);
                v2.contains(&img)
            });
            if hits {
                return IsometryMap::signed_permutation(perm, signs, t).ok();
            }
        }
    }
    None
}

fn rank(vectors: &[Point4]) -> usize {
    let mut rows: Vec<Vec<QuadScalar>> = vectors.iter().map(|v| v.to_vec()).collect();
    let mut r = 0;
    for col in 0..4 {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let (top, below) = rows.split_at_mut(r + 1);
        let pivot = &top[r];
        for row in below {
            if !row[col].is_zero() {
                let f = &row[col] / &pivot[col];
                subtract_multiple(&mut row[col..4], &f, &pivot[col..4]);
            }
        }
        r += 1;
    }
    r
}

/// Indices of an affine basis (up to five affinely independent vertices).
fn affine_basis(v: &[Point4]) -> Vec<usize> {
    let mut basis = vec![0];
    let mut dirs: Vec<Point4> = Vec::new();
    for (i, p) in v.iter().enumerate().skip(1) {
        let d = sub(p, &v[0]);
        dirs.push(d);
        if rank(&dirs) == dirs.len() {
            basis.push(i);
            if basis.len() == 5 {
                break;
            }
        } else {
            dirs.pop();
        }
    }
    basis
}

fn general_witness(v1: &[Point4], v2: &[Point4]) -> Option<IsometryMap> {
    let basis = affine_basis(v1);
    if basis.len() != 5 {
        return None;
    }
    let mut images = Vec::with_capacity(5);
    assign(v1, v2, &basis, &mut images)
}

fn assign(v1: &[Point4], v2: &[Point4], basis: &[usize], images: &mut Vec<usize>) -> Option<IsometryMap> {
    let k = images.len();
    if k == basis.len() {
        return witness_from(v1, v2, basis, images);
    }
    for cand in 0..v2.len() {
        if images.contains(&cand) {
            continue;
        }
        let consistent =
            (0..k).all(|j| norm2(&sub(&v1[basis[k]], &v1[basis[j]])) == norm2(&sub(&v2[cand], &v2[images[j]])));
        if !consistent {
            continue;
        }
        images.push(cand);
        if let Some(w) = assign(v1, v2, basis, images) {
            return Some(w);
        }
        images.pop();
    }
    None
}

fn witness_from(v1: &[Point4], v2: &[Point4], basis: &[usize], images: &[usize]) -> Option<IsometryMap> {
    let e1: Vec<Point4> = (1..5).map(|k| sub(&v1[basis[k]], &v1[basis[0]])).collect();
    let e2: Vec<Point4> = (1..5).map(|k| sub(&v2[images[k]], &v2[images[0]])).collect();
    // Row r of M satisfies  m_r · e1[k] = e2[k][r]  for every k.
    let system: Vec<Vec<QuadScalar>> = e1.iter().map(|e| e.to_vec()).collect();
    let mut m: Matrix4 = std::array::from_fn(|_| std::array::from_fn(|_| QuadScalar::zero()));
    for (r, row) in m.iter_mut().enumerate() {
        let rhs: Vec<QuadScalar> = e2.iter().map(|e| e[r].clone()).collect();
        let sol = solve(&system, &rhs)?;
        for (c, x) in sol.into_iter().enumerate() {
            row[c] = x;
        }
    }
    let mut t = IsometryMap::new(m, std::array::from_fn(|_| QuadScalar::zero())).ok()?;
    let shift = sub(&v2[images[0]], &t.apply(&v1[basis[0]]));
    t = IsometryMap::translation(shift).compose(&t);
    v1.iter().all(|p| v2.contains(&t.apply(p))).then_some(t)
}
