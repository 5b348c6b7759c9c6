//! Standard algebras: (twisted) group algebras, full and upper triangular
//! matrix algebras, direct sums.

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::groups::FiniteGroupTable;

/// Twisting function `lambda(g, h)`, indexed by group element indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cocycle {
    values: Vec<Vec<Scalar>>,
}

impl Cocycle {
    /// Checks shape, that every value is a unit, and the identity
    /// `lambda(g,h) lambda(gh,k) = lambda(h,k) lambda(g,hk)` on all triples.
    pub fn new(field: &Field, group: &FiniteGroupTable, values: Vec<Vec<Scalar>>) -> Result<Cocycle> {
        let n = group.order();
        let shape_err = |g: usize, location: String| Error::InvalidCocycle {
            triple: (g, 0, 0),
            location,
        };
        if values.len() != n {
            return Err(shape_err(
                0,
                format!("cocycle has {} rows, expected {n}", values.len()),
            ));
        }
        for (g, row) in values.iter().enumerate() {
            if row.len() != n {
                return Err(shape_err(
                    g,
                    format!("cocycle[{g}] has {} entries, expected {n}", row.len()),
                ));
            }
            for (h, v) in row.iter().enumerate() {
                if !field.contains(v) || field.is_zero(v) {
                    return Err(Error::InvalidCocycle {
                        triple: (g, h, group.identity()),
                        location: format!("cocycle[{g}][{h}] is not a nonzero scalar of {field}"),
                    });
                }
            }
        }
        for g in 0..n {
            for h in 0..n {
                for k in 0..n {
                    let lhs = field.mul(&values[g][h], &values[group.mul(g, h)][k]);
                    let rhs = field.mul(&values[h][k], &values[g][group.mul(h, k)]);
                    if lhs != rhs {
                        return Err(Error::InvalidCocycle {
                            triple: (g, h, k),
                            location: format!("cocycle identity at (g,h,k) = ({g},{h},{k})"),
                        });
                    }
                }
            }
        }
        Ok(Cocycle { values })
    }

    pub fn trivial(field: &Field, group: &FiniteGroupTable) -> Cocycle {
        let n = group.order();
        Cocycle {
            values: vec![vec![field.one(); n]; n],
        }
    }

    pub fn value(&self, g: usize, h: usize) -> &Scalar {
        &self.values[g][h]
    }
}

/// A twisted group algebra with its normalized basis `u_g`.
#[derive(Debug, Clone)]
pub struct TwistedGroupAlgebra {
    pub algebra: Algebra,
    /// Normalized cocycle, `lambda'(1, g) = lambda'(g, 1) = 1`.
    pub cocycle: Cocycle,
    /// `c = lambda(1, 1)`; the basis is `u'_g = c^{-1} u_g`.
    pub rescaling: Scalar,
    /// Basis indices of the `u'_g`. Together with the nonzero scalars they
    /// span the subgroup `{lambda u_g}` of units.
    pub group_basis: Vec<usize>,
}

pub fn group_algebra(field: &Field, group: &FiniteGroupTable) -> Result<Algebra> {
    Ok(twisted_group_algebra(field, group, &Cocycle::trivial(field, group))?.algebra)
}

pub fn twisted_group_algebra(
    field: &Field,
    group: &FiniteGroupTable,
    cocycle: &Cocycle,
) -> Result<TwistedGroupAlgebra> {
    let n = group.order();
    let e = group.identity();
    let c = cocycle.value(e, e).clone();
    let c_inv = field.inv(&c).ok_or_else(|| Error::InvalidCocycle {
        triple: (e, e, e),
        location: "cocycle[1][1] is zero".into(),
    })?;
    let normalized: Vec<Vec<Scalar>> = (0..n)
        .map(|g| (0..n).map(|h| field.mul(cocycle.value(g, h), &c_inv)).collect())
        .collect();
    let products = (0..n)
        .flat_map(|g| {
            let normalized = &normalized;
            (0..n).map(move |h| vec![(group.mul(g, h), normalized[g][h].clone())])
        })
        .collect();
    let mut one = vec![field.zero(); n];
    one[e] = field.one();
    let algebra = Algebra::from_sparse(field, n, products, one, Some(group.labels().to_vec()))?;
    Ok(TwistedGroupAlgebra {
        algebra,
        cocycle: Cocycle { values: normalized },
        rescaling: c,
        group_basis: (0..n).collect(),
    })
}

fn unit_label(i: usize, j: usize, n: usize) -> String {
    if n < 10 {
        format!("E{}{}", i + 1, j + 1)
    } else {
        format!("E{},{}", i + 1, j + 1)
    }
}

fn matrix_units(field: &Field, n: usize, positions: Vec<(usize, usize)>) -> Result<Algebra> {
    if n == 0 {
        return Err(Error::InvalidAlgebra("matrix size must be positive".into()));
    }
    let dim = positions.len();
    let index = |i: usize, j: usize| positions.iter().position(|&p| p == (i, j));
    let mut products = Vec::with_capacity(dim * dim);
    for &(i, j) in &positions {
        for &(k, l) in &positions {
            products.push(if j == k {
                vec![(index(i, l).expect("closed under products"), field.one())]
            } else {
                Vec::new()
            });
        }
    }
    let mut one = vec![field.zero(); dim];
    for i in 0..n {
        one[index(i, i).unwrap()] = field.one();
    }
    let labels = positions.iter().map(|&(i, j)| unit_label(i, j, n)).collect();
    Algebra::from_sparse(field, dim, products, one, Some(labels))
}

/// `M_n(F)` with basis `E_ij` in row-major order.
pub fn matrix_algebra(field: &Field, n: usize) -> Result<Algebra> {
    let positions = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    matrix_units(field, n, positions)
}

/// Upper triangular `T_n(F)` with basis `E_ij`, `i <= j`, row-major.
pub fn triangular_algebra(field: &Field, n: usize) -> Result<Algebra> {
    let positions = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    matrix_units(field, n, positions)
}

/// `A x B` with componentwise product; basis labels get `l.` / `r.` prefixes.
pub fn direct_sum(a: &Algebra, b: &Algebra) -> Result<Algebra> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch);
    }
    let (m, n) = (a.dim(), b.dim());
    let dim = m + n;
    let mut products = Vec::with_capacity(dim * dim);
    for i in 0..dim {
        for j in 0..dim {
            products.push(if i < m && j < m {
                a.product_terms(i, j).to_vec()
            } else if i >= m && j >= m {
                b.product_terms(i - m, j - m)
                    .iter()
                    .map(|(k, c)| (k + m, c.clone()))
                    .collect()
            } else {
                Vec::new()
            });
        }
    }
    let mut one = a.one_coords().to_vec();
    one.extend_from_slice(b.one_coords());
    let labels = a
        .labels()
        .iter()
        .map(|l| format!("l.{l}"))
        .chain(b.labels().iter().map(|l| format!("r.{l}")))
        .collect();
    Algebra::from_sparse(a.field(), dim, products, one, Some(labels))
}
