//! Small dense exact linear algebra (dimension <= ~6).

use crate::num::Rational;
use num_traits::Zero;

/// Gaussian elimination with exact pivoting. Returns the unique solution of
/// `A x = b` when `A` is square and nonsingular, `None` otherwise.
pub fn solve_square(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.len();
    if n == 0 {
        return Some(Vec::new());
    }
    debug_assert!(a.iter().all(|r| r.len() == n) && b.len() == n);

    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();

    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let p = m[col][col].clone();
        for c in col..=n {
            m[col][c] = &m[col][c] / &p;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..=n {
                    m[r][c] = &m[r][c] - &f * &m[col][c];
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n].clone()).collect())
}

/// Row rank of an arbitrary rational matrix.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let ncols = rows[0].len();
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let mut r = 0;
    for col in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(pivot) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, pivot);
        let p = m[r][col].clone();
        for c in col..ncols {
            m[r][c] = &m[r][c] / &p;
        }
        for i in 0..m.len() {
            if i != r && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for c in col..ncols {
                    m[i][c] = &m[i][c] - &f * &m[r][c];
                }
            }
        }
        r += 1;
    }
    r
}

/// Basis of the null space of the matrix whose rows are `rows` (each of
/// length `n`).
pub fn null_space(rows: &[Vec<Rational>], n: usize) -> Vec<Vec<Rational>> {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for col in 0..n {
        if r == m.len() {
            break;
        }
        let Some(pivot) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, pivot);
        let p = m[r][col].clone();
        for c in 0..n {
            m[r][c] = &m[r][c] / &p;
        }
        for i in 0..m.len() {
            if i != r && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for c in 0..n {
                    m[i][c] = &m[i][c] - &f * &m[r][c];
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    let mut basis = Vec::new();
    for free in 0..n {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![Rational::zero(); n];
        v[free] = Rational::from_integer(1.into());
        for (row_idx, &pcol) in pivots.iter().enumerate() {
            v[pcol] = -m[row_idx][free].clone();
        }
        basis.push(v);
    }
    basis
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Rational::zero();
    for (x, y) in a.iter().zip(b) {
        acc += x * y;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::rat;

    #[test]
    fn solves_2x2() {
        // x + y = 3, x - y = 1  =>  (2, 1)
        let a = vec![vec![rat(1, 1), rat(1, 1)], vec![rat(1, 1), rat(-1, 1)]];
        let b = vec![rat(3, 1), rat(1, 1)];
        assert_eq!(solve_square(&a, &b).unwrap(), vec![rat(2, 1), rat(1, 1)]);
    }

    #[test]
    fn singular_is_none() {
        let a = vec![vec![rat(1, 1), rat(2, 1)], vec![rat(2, 1), rat(4, 1)]];
        let b = vec![rat(1, 1), rat(2, 1)];
        assert!(solve_square(&a, &b).is_none());
    }

    #[test]
    fn rank_and_null_space() {
        let rows = vec![vec![rat(1, 1), rat(2, 1), rat(3, 1)]];
        assert_eq!(rank(&rows), 1);
        let ns = null_space(&rows, 3);
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert_eq!(dot(&rows[0], &v), rat(0, 1));
        }
    }
}
