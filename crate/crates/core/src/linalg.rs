//! Small dense exact linear algebra over the rationals.

use num_traits::{One, Zero};

use crate::rational::Q;

pub type Matrix = Vec<Vec<Q>>;

/// Reduced row echelon form. Returns the reduced rows (zero rows dropped)
/// and the pivot column of each.
pub fn rref(rows: &[Vec<Q>], ncols: usize) -> (Matrix, Vec<usize>) {
    let mut m: Matrix = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = Q::one() / &m[r][c];
        for x in &mut m[r] {
            *x = &*x * &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..ncols {
                    let d = &f * &m[r][j];
                    m[i][j] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank(rows: &[Vec<Q>], ncols: usize) -> usize {
    rref(rows, ncols).1.len()
}

/// Basis of `{x : rows·x = 0}`.
pub fn nullspace(rows: &[Vec<Q>], ncols: usize) -> Matrix {
    let (m, pivots) = rref(rows, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); ncols];
            v[f] = Q::one();
            for (row, &p) in m.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

pub fn inverse(m: &[Vec<Q>]) -> Option<Matrix> {
    let n = m.len();
    let aug: Matrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    let (red, pivots) = rref(&aug, 2 * n);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(red.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn mat_vec(m: &[Vec<Q>], v: &[Q]) -> Vec<Q> {
    m.iter().map(|row| crate::rational::dot(row, v)).collect()
}

pub fn transpose(m: &[Vec<Q>], ncols: usize) -> Matrix {
    (0..ncols).map(|j| m.iter().map(|row| row[j].clone()).collect()).collect()
}

pub fn mat_mul(a: &[Vec<Q>], b: &[Vec<Q>], bcols: usize) -> Matrix {
    let bt = transpose(b, bcols);
    a.iter().map(|row| bt.iter().map(|col| crate::rational::dot(row, col)).collect()).collect()
}

/// Coordinates of `v` in the span of `basis`, if it lies there.
pub fn coordinates(basis: &[Vec<Q>], v: &[Q]) -> Option<Vec<Q>> {
    let k = basis.len();
    let dim = v.len();
    // Columns are basis vectors; augmented with v.
    let rows: Matrix = (0..dim)
        .map(|i| {
            let mut r: Vec<Q> = basis.iter().map(|b| b[i].clone()).collect();
            r.push(v[i].clone());
            r
        })
        .collect();
    let (red, pivots) = rref(&rows, k + 1);
    if pivots.contains(&k) {
        return None;
    }
    let mut out = vec![Q::zero(); k];
    for (row, &p) in red.iter().zip(&pivots) {
        out[p] = row[k].clone();
    }
    Some(out)
}
