//! Shared fixtures and brute-force oracles for integration tests.
#![allow(dead_code)]

use fcalg::algebra::{AlgElement, Algebra, Subspace};
use fcalg::constructors::{group_algebra, matrix_algebra, triangular_algebra};
use fcalg::groups::FiniteGroupTable;
use fcalg::{Field, Scalar};

pub fn q() -> Field {
    Field::rationals()
}

pub fn gf(p: u64) -> Field {
    Field::prime(p).unwrap()
}

pub fn gf4() -> Field {
    Field::extension(2, &[1, 1, 1]).unwrap()
}

pub fn group_alg(field: &Field, name: &str) -> Algebra {
    group_algebra(field, &FiniteGroupTable::bundled(name).unwrap()).unwrap()
}

pub fn mat(field: &Field, n: usize) -> Algebra {
    matrix_algebra(field, n).unwrap()
}

pub fn tri(field: &Field, n: usize) -> Algebra {
    triangular_algebra(field, n).unwrap()
}

pub fn el(a: &Algebra, coords: &[i64]) -> AlgElement {
    a.element_from_ints(coords).unwrap()
}

pub fn label(a: &Algebra, name: &str) -> AlgElement {
    a.basis(a.label_index(name).unwrap())
}

/// Every finite algebra used by the oracle suites, with at most 4096 elements.
pub fn finite_algebras() -> Vec<(&'static str, Algebra)> {
    let f2 = gf(2);
    let f3 = gf(3);
    vec![
        ("F2[C2]", group_alg(&f2, "C2")),
        ("F2[C3]", group_alg(&f2, "C3")),
        ("F2[C4]", group_alg(&f2, "C4")),
        ("F3[C3]", group_alg(&f3, "C3")),
        ("F2[S3]", group_alg(&f2, "S3")),
        ("F3[S3]", group_alg(&f3, "S3")),
        ("F2[Q8]", group_alg(&f2, "Q8")),
        ("F2[D4]", group_alg(&f2, "D4")),
        ("F2[A4]", group_alg(&f2, "A4")),
        ("GF4[C3]", group_alg(&gf4(), "C3")),
        ("GF4[C2]", group_alg(&gf4(), "C2")),
        ("M2(F2)", mat(&f2, 2)),
        ("M2(F3)", mat(&f3, 2)),
        ("T2(F2)", tri(&f2, 2)),
        ("T2(F3)", tri(&f3, 2)),
        ("T3(F2)", tri(&f2, 3)),
    ]
}

/// Number of elements, or None beyond `cap`.
pub fn size(a: &Algebra, cap: u64) -> Option<u64> {
    let q = a.field().order()?;
    let mut s: u64 = 1;
    for _ in 0..a.dim() {
        s = s.checked_mul(q)?;
        if s > cap {
            return None;
        }
    }
    Some(s)
}

/// Element with code `c`: coordinate i is the field code of digit
/// `(c / q^(n-1-i)) mod q`, so numeric order is lexicographic.
pub fn element_of_code(a: &Algebra, mut c: u64) -> Vec<Scalar> {
    let f = a.field();
    let q = f.order().unwrap();
    let mut v = vec![f.zero(); a.dim()];
    for i in (0..a.dim()).rev() {
        v[i] = f.from_code(c % q);
        c /= q;
    }
    v
}

pub fn code_of(a: &Algebra, v: &[Scalar]) -> u64 {
    let f = a.field();
    let q = f.order().unwrap();
    v.iter().fold(0, |acc, x| acc * q + f.code(x))
}

pub fn all_elements(a: &Algebra) -> Vec<Vec<Scalar>> {
    let n = size(a, 1 << 20).expect("enumerable algebra");
    (0..n).map(|c| element_of_code(a, c)).collect()
}

/// Unit test by exhaustive search for a two-sided inverse.
pub fn brute_units(a: &Algebra) -> Vec<bool> {
    let elems = all_elements(a);
    let one = a.one_coords().to_vec();
    let mut unit = vec![false; elems.len()];
    for (i, x) in elems.iter().enumerate() {
        if unit[i] {
            continue;
        }
        for (j, y) in elems.iter().enumerate() {
            if a.mul_coords(x, y) == one && a.mul_coords(y, x) == one {
                unit[i] = true;
                unit[j] = true;
                break;
            }
        }
    }
    unit
}

/// Unit test via the rank of the left regular matrix; used when the
/// quadratic search above is too slow.
pub fn rank_units(a: &Algebra) -> Vec<bool> {
    all_elements(a).iter().map(|x| a.is_unit_coords(x)).collect()
}

/// Jacobson radical as `{x : 1 + ax is a unit for all a}`. The products
/// `ax` range over the span of the `b_i x`, enumerated exhaustively with an
/// early exit on the first non-unit.
pub fn brute_radical(a: &Algebra, units: &[bool]) -> Vec<Vec<Scalar>> {
    let f = a.field();
    let one = a.one_coords().to_vec();
    all_elements(a)
        .into_iter()
        .filter(|x| {
            let gens: Vec<Vec<Scalar>> = (0..a.dim())
                .map(|i| a.mul_coords(&a.basis_coords(i), x))
                .collect();
            let image = Subspace::from_vectors(a, gens);
            let mut ok = true;
            for_each_in_span(&image, |v| {
                let s: Vec<Scalar> = v.iter().zip(&one).map(|(u, o)| f.add(u, o)).collect();
                ok = units[code_of(a, &s) as usize];
                ok
            });
            ok
        })
        .collect()
}

/// Visit every vector of a finite span until `visit` returns false.
pub fn for_each_in_span(s: &Subspace, mut visit: impl FnMut(&[Scalar]) -> bool) {
    let a = s.algebra();
    let f = a.field();
    let q = f.order().unwrap();
    let total = q.pow(s.dim() as u32);
    for mut c in 0..total {
        let mut v = vec![f.zero(); a.dim()];
        for row in s.basis() {
            let coef = f.from_code(c % q);
            c /= q;
            for (vi, ri) in v.iter_mut().zip(row) {
                *vi = f.add(vi, &f.mul(&coef, ri));
            }
        }
        if !visit(&v) {
            return;
        }
    }
}

/// All elements of a subspace, in code order.
pub fn subspace_elements(s: &Subspace) -> Vec<Vec<Scalar>> {
    let a = s.algebra();
    let mut out = Vec::new();
    for_each_in_span(s, |v| {
        out.push(v.to_vec());
        true
    });
    out.sort_by_key(|v| code_of(a, v));
    out
}
