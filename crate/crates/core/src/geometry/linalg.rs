//! Small exact linear algebra over [`QuadScalar`].

use crate::scalar::QuadScalar;

pub type Point4 = [QuadScalar; 4];
pub type Matrix4 = [[QuadScalar; 4]; 4];

pub fn point4<T: Into<QuadScalar>>(coords: [T; 4]) -> Point4 {
    coords.map(Into::into)
}

pub fn origin() -> Point4 {
    std::array::from_fn(|_| QuadScalar::zero())
}

pub fn add(a: &Point4, b: &Point4) -> Point4 {
    std::array::from_fn(|i| &a[i] + &b[i])
}

pub fn sub(a: &Point4, b: &Point4) -> Point4 {
    std::array::from_fn(|i| &a[i] - &b[i])
}

pub fn scale(a: &Point4, s: &QuadScalar) -> Point4 {
    std::array::from_fn(|i| &a[i] * s)
}

pub fn dot(a: &Point4, b: &Point4) -> QuadScalar {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm2(a: &Point4) -> QuadScalar {
    dot(a, a)
}

pub fn identity4() -> Matrix4 {
    std::array::from_fn(|i| std::array::from_fn(|j| if i == j { QuadScalar::one() } else { QuadScalar::zero() }))
}

pub fn mat_vec(m: &Matrix4, v: &Point4) -> Point4 {
    std::array::from_fn(|i| dot(&m[i], v))
}

pub fn mat_mul(a: &Matrix4, b: &Matrix4) -> Matrix4 {
    std::array::from_fn(|i| std::array::from_fn(|j| (0..4).map(|k| &a[i][k] * &b[k][j]).sum()))
}

pub fn transpose(m: &Matrix4) -> Matrix4 {
    std::array::from_fn(|i| std::array::from_fn(|j| m[j][i].clone()))
}

/// Determinant of a square matrix by fraction-free pivoting over the field.
pub fn det(rows: &[Vec<QuadScalar>]) -> QuadScalar {
    let n = rows.len();
    let mut m: Vec<Vec<QuadScalar>> = rows.to_vec();
    let mut acc = QuadScalar::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return QuadScalar::zero();
        };
        if pivot != col {
            m.swap(pivot, col);
            acc = -acc;
        }
        let (top, below) = m.split_at_mut(col + 1);
        let pivot = &top[col];
        acc = &acc * &pivot[col];
        for row in below {
            if !row[col].is_zero() {
                let f = &row[col] / &pivot[col];
                subtract_multiple(&mut row[col..], &f, &pivot[col..]);
            }
        }
    }
    acc
}

/// `row -= f · pivot`, entrywise.
pub(crate) fn subtract_multiple(row: &mut [QuadScalar], f: &QuadScalar, pivot: &[QuadScalar]) {
    for (x, p) in row.iter_mut().zip(pivot) {
        *x = &*x - &(f * p);
    }
}

/// Solves `m · x = rhs`; `None` when `m` is singular.
pub fn solve(rows: &[Vec<QuadScalar>], rhs: &[QuadScalar]) -> Option<Vec<QuadScalar>> {
    let n = rows.len();
    let mut m: Vec<Vec<QuadScalar>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut row = r.clone();
            row.push(b.clone());
            row
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(pivot, col);
        let p = m[col][col].clone();
        for x in &mut m[col][col..] {
            *x = &*x / &p;
        }
        let pivot = m[col].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != col && !row[col].is_zero() {
                let f = row[col].clone();
                subtract_multiple(&mut row[col..], &f, &pivot[col..]);
            }
        }
    }
    Some(
        m.into_iter()
            .map(|mut row| row.pop().expect("augmented column"))
            .collect(),
    )
}

/// Vector orthogonal to three vectors in R⁴ (generalised cross product).
pub fn normal_to(v: [&Point4; 3]) -> Point4 {
    std::array::from_fn(|skip| {
        let minor: Vec<Vec<QuadScalar>> = v
            .iter()
            .map(|row| (0..4).filter(|&c| c != skip).map(|c| row[c].clone()).collect())
            .collect();
        let d = det(&minor);
        if skip % 2 == 0 {
            d
        } else {
            -d
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Vec<Vec<QuadScalar>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| QuadScalar::from_int(x)).collect())
            .collect()
    }

    #[test]
    fn determinant_with_row_swap() {
        let a = m(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 3]]);
        assert_eq!(det(&a), QuadScalar::from_int(-3));
        let s = m(&[&[1, 2], &[2, 4]]);
        assert!(det(&s).is_zero());
    }

    #[test]
    fn solve_small_system() {
        let a = m(&[&[2, 1], &[1, 3]]);
        let x = solve(&a, &[QuadScalar::from_int(3), QuadScalar::from_int(5)]).unwrap();
        assert_eq!(x[0], QuadScalar::from_rational(crate::scalar::rat(4, 5)));
        assert_eq!(x[1], QuadScalar::from_rational(crate::scalar::rat(7, 5)));
        assert!(solve(&m(&[&[1, 1], &[1, 1]]), &[QuadScalar::one(), QuadScalar::one()]).is_none());
    }

    #[test]
    fn normal_is_orthogonal() {
        let a = point4([1, 2, 0, 1]);
        let b = point4([0, 1, 3, -1]);
        let c = point4([2, 0, 1, 1]);
        let n = normal_to([&a, &b, &c]);
        for v in [&a, &b, &c] {
            assert!(dot(&n, v).is_zero());
        }
        assert!(!norm2(&n).is_zero());
    }
}
