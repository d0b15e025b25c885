//! Dense linear algebra over F_p.

use crate::field::FieldElem;

pub type Matrix = Vec<Vec<FieldElem>>;

pub fn zeros(rows: usize, cols: usize, p: u64) -> Matrix {
    vec![vec![FieldElem::zero(p); cols]; rows]
}

pub fn identity(n: usize, p: u64) -> Matrix {
    let mut m = zeros(n, n, p);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = FieldElem::one(p);
    }
    m
}

pub fn transpose(m: &Matrix) -> Matrix {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len()).map(|j| m.iter().map(|r| r[j]).collect()).collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix, p: u64) -> Matrix {
    let n = b.first().map(|r| r.len()).unwrap_or(0);
    a.iter()
        .map(|row| {
            (0..n)
                .map(|j| row.iter().zip(b.iter()).fold(FieldElem::zero(p), |acc, (x, br)| acc + *x * br[j]))
                .collect()
        })
        .collect()
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut Matrix) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map(|r| r.len()).unwrap_or(0);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(k) = (r..rows).find(|&k| !m[k][c].is_zero()) else {
            continue;
        };
        m.swap(r, k);
        let inv = m[r][c].inv().unwrap();
        for x in m[r].iter_mut() {
            *x = *x * inv;
        }
        for k in 0..rows {
            if k != r && !m[k][c].is_zero() {
                let f = m[k][c];
                let pivot_row = m[r].clone();
                for (x, y) in m[k].iter_mut().zip(pivot_row.iter()) {
                    *x = *x - f * *y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &Matrix) -> usize {
    let mut a = m.clone();
    rref(&mut a).len()
}

/// Basis of `{ v : m v = 0 }`.
pub fn nullspace(m: &Matrix, cols: usize, p: u64) -> Vec<Vec<FieldElem>> {
    let mut a = m.clone();
    let pivots = rref(&mut a);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![FieldElem::zero(p); cols];
            v[f] = FieldElem::one(p);
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[r][f];
            }
            v
        })
        .collect()
}

/// A solution of `m x = b`, if one exists.
pub fn solve(m: &Matrix, b: &[FieldElem], p: u64) -> Option<Vec<FieldElem>> {
    let cols = m.first().map(|r| r.len()).unwrap_or(0);
    let mut aug: Matrix = m
        .iter()
        .zip(b.iter())
        .map(|(row, &bi)| {
            let mut r = row.clone();
            r.push(bi);
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.contains(&cols) {
        return None;
    }
    let mut x = vec![FieldElem::zero(p); cols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[r][cols];
    }
    Some(x)
}

pub fn determinant(m: &Matrix, p: u64) -> FieldElem {
    let n = m.len();
    let mut a = m.clone();
    let mut det = FieldElem::one(p);
    for c in 0..n {
        let Some(k) = (c..n).find(|&k| !a[k][c].is_zero()) else {
            return FieldElem::zero(p);
        };
        if k != c {
            a.swap(k, c);
            det = -det;
        }
        det = det * a[c][c];
        let inv = a[c][c].inv().unwrap();
        for k in c + 1..n {
            let f = a[k][c] * inv;
            if f.is_zero() {
                continue;
            }
            let pivot_row = a[c].clone();
            for (x, y) in a[k].iter_mut().zip(pivot_row.iter()) {
                *x = *x - f * *y;
            }
        }
    }
    det
}

fn shifted(m: &Matrix, mu: FieldElem) -> Matrix {
    let mut a = m.clone();
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = row[i] - mu;
    }
    a
}

/// Eigenvalues in F_p by exhaustive search, ascending by lift.
pub fn eigenvalues(m: &Matrix, p: u64) -> Vec<FieldElem> {
    FieldElem::all(p).filter(|&mu| determinant(&shifted(m, mu), p).is_zero()).collect()
}

/// Left eigenvectors: rows `a` with `a m = mu a`.
pub fn left_eigenspace(m: &Matrix, mu: FieldElem, p: u64) -> Vec<Vec<FieldElem>> {
    let n = m.len();
    nullspace(&transpose(&shifted(m, mu)), n, p)
}

/// True if the F_p-eigenspaces span the whole space.
pub fn is_diagonalizable(m: &Matrix, p: u64) -> bool {
    let n = m.len();
    eigenvalues(m, p)
        .into_iter()
        .map(|mu| n - rank(&shifted(m, mu)))
        .sum::<usize>()
        == n
}
