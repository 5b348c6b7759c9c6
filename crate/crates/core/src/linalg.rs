//! Exact dense linear algebra over a [`Field`]. Matrices are row vectors.

use crate::field::{Field, Scalar};

pub type Matrix = Vec<Vec<Scalar>>;

/// Reduced row-echelon form in place. Zero rows are dropped; returns the
/// pivot column of each remaining row.
pub fn rref(field: &Field, rows: &mut Matrix) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(pr) = (r..rows.len()).find(|&i| !field.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = field.inv(&rows[r][c]).unwrap();
        if !field.is_one(&inv) {
            for x in rows[r][c..].iter_mut() {
                *x = field.mul(x, &inv);
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || field.is_zero(&row[c]) {
                continue;
            }
            let factor = row[c].clone();
            for (x, p) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                if !field.is_zero(p) {
                    *x = field.sub(x, &field.mul(&factor, p));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Canonical RREF basis of the span of `vectors`.
pub fn row_space(field: &Field, mut vectors: Matrix) -> Matrix {
    vectors.retain(|v| v.iter().any(|x| !field.is_zero(x)));
    rref(field, &mut vectors);
    vectors
}

pub fn rank(field: &Field, m: &Matrix) -> usize {
    let mut m = m.clone();
    rref(field, &mut m).len()
}

/// Basis (canonical RREF) of `{x : eqs * x = 0}`, where `x` has `ncols` entries.
pub fn nullspace(field: &Field, eqs: &Matrix, ncols: usize) -> Matrix {
    let mut m = eqs.clone();
    let pivots = rref(field, &mut m);
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![field.zero(); ncols];
        v[free] = field.one();
        for (row, &p) in m.iter().zip(&pivots) {
            v[p] = field.neg(&row[free]);
        }
        basis.push(v);
    }
    row_space(field, basis)
}

/// Some solution of `a * x = b`, if one exists.
pub fn solve(field: &Field, a: &Matrix, b: &[Scalar]) -> Option<Vec<Scalar>> {
    let ncols = a.first().map_or(0, |r| r.len());
    let mut aug: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(field, &mut aug);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![field.zero(); ncols];
    for (row, &p) in aug.iter().zip(&pivots) {
        x[p] = row[ncols].clone();
    }
    Some(x)
}

pub fn inverse(field: &Field, m: &Matrix) -> Option<Matrix> {
    let n = m.len();
    let mut aug: Matrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { field.one() } else { field.zero() }));
            r
        })
        .collect();
    let pivots = rref(field, &mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn mat_vec(field: &Field, m: &Matrix, v: &[Scalar]) -> Vec<Scalar> {
    m.iter()
        .map(|row| {
            row.iter().zip(v).fold(field.zero(), |acc, (a, b)| {
                if field.is_zero(a) || field.is_zero(b) {
                    acc
                } else {
                    field.add(&acc, &field.mul(a, b))
                }
            })
        })
        .collect()
}

pub fn transpose(m: &Matrix) -> Matrix {
    let ncols = m.first().map_or(0, |r| r.len());
    (0..ncols)
        .map(|c| m.iter().map(|row| row[c].clone()).collect())
        .collect()
}

/// Reduce `v` against an RREF basis with the given pivots. The result is
/// zero iff `v` lies in the span.
pub fn reduce(field: &Field, basis: &Matrix, pivots: &[usize], v: &[Scalar]) -> Vec<Scalar> {
    let mut v = v.to_vec();
    for (row, &p) in basis.iter().zip(pivots) {
        if field.is_zero(&v[p]) {
            continue;
        }
        let c = v[p].clone();
        for (x, r) in v.iter_mut().zip(row) {
            if !field.is_zero(r) {
                *x = field.sub(x, &field.mul(&c, r));
            }
        }
    }
    v
}

pub fn pivots_of(field: &Field, basis: &Matrix) -> Vec<usize> {
    basis
        .iter()
        .map(|row| row.iter().position(|x| !field.is_zero(x)).unwrap())
        .collect()
}
