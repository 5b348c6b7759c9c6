//! Finite-dimensional unital associative algebras given by structure
//! constants, their elements, and subspaces in canonical RREF.

use std::fmt;
use std::sync::Arc;

use serde_json::Value;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::{self, Matrix};

/// Structure constants stored sparsely: `products[i * dim + j]` lists the
/// nonzero `(k, c[i][j][k])` with `b_i b_j = sum_k c[i][j][k] b_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraSpec {
    field: Field,
    dim: usize,
    products: Vec<Vec<(usize, Scalar)>>,
    one: Vec<Scalar>,
    labels: Vec<String>,
}

/// Shared handle to a validated [`AlgebraSpec`].
#[derive(Clone)]
pub struct Algebra(Arc<AlgebraSpec>);

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Algebra {}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Algebra(dim {} over {})", self.0.dim, self.0.field)
    }
}

impl Algebra {
    /// Build from dense constants `c[i][j][k]`, checking associativity on all
    /// basis triples and the unity axiom on every basis element.
    pub fn new(
        field: &Field,
        constants: &[Vec<Vec<Scalar>>],
        one: Vec<Scalar>,
        labels: Option<Vec<String>>,
    ) -> Result<Algebra> {
        let dim = constants.len();
        let mut products = Vec::with_capacity(dim * dim);
        for (i, row) in constants.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::InvalidAlgebra(format!(
                    "structure constants row {i} has {} entries, expected {dim}",
                    row.len()
                )));
            }
            for (j, v) in row.iter().enumerate() {
                if v.len() != dim {
                    return Err(Error::InvalidAlgebra(format!(
                        "structure constants c[{i}][{j}] has length {}, expected {dim}",
                        v.len()
                    )));
                }
                products.push(
                    v.iter()
                        .enumerate()
                        .filter(|(_, c)| !field.is_zero(c))
                        .map(|(k, c)| (k, c.clone()))
                        .collect(),
                );
            }
        }
        Algebra::from_sparse(field, dim, products, one, labels)
    }

    pub fn from_sparse(
        field: &Field,
        dim: usize,
        products: Vec<Vec<(usize, Scalar)>>,
        one: Vec<Scalar>,
        labels: Option<Vec<String>>,
    ) -> Result<Algebra> {
        if dim == 0 {
            return Err(Error::InvalidAlgebra("dimension must be positive".into()));
        }
        if products.len() != dim * dim {
            return Err(Error::InvalidAlgebra(
                "structure constant table has wrong size".into(),
            ));
        }
        if one.len() != dim {
            return Err(Error::InvalidAlgebra(format!(
                "unity has {} coordinates, expected {dim}",
                one.len()
            )));
        }
        let scalars_ok = products
            .iter()
            .flatten()
            .all(|(k, c)| *k < dim && field.contains(c))
            && one.iter().all(|c| field.contains(c));
        if !scalars_ok {
            return Err(Error::InvalidAlgebra(format!("scalar outside {field}")));
        }
        let labels = labels.unwrap_or_else(|| (0..dim).map(|i| format!("b{i}")).collect());
        if labels.len() != dim {
            return Err(Error::InvalidAlgebra("label count differs from dimension".into()));
        }
        let spec = AlgebraSpec {
            field: field.clone(),
            dim,
            products,
            one,
            labels,
        };
        let alg = Algebra(Arc::new(spec));
        alg.validate()?;
        Ok(alg)
    }

    fn validate(&self) -> Result<()> {
        let n = self.dim();
        let basis: Vec<Vec<Scalar>> = (0..n).map(|i| self.basis_coords(i)).collect();
        let one = &self.0.one;
        for (i, b) in basis.iter().enumerate() {
            if &self.mul_coords(one, b) != b || &self.mul_coords(b, one) != b {
                return Err(Error::InvalidAlgebra(format!(
                    "unity axiom fails on basis element {}",
                    self.0.labels[i]
                )));
            }
        }
        for i in 0..n {
            for j in 0..n {
                let bij = self.product_vector(i, j);
                for k in 0..n {
                    let left = self.mul_coords(&bij, &basis[k]);
                    let right = self.mul_coords(&basis[i], &self.product_vector(j, k));
                    if left != right {
                        return Err(Error::InvalidAlgebra(format!(
                            "associativity fails on basis triple ({i}, {j}, {k})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn spec(&self) -> &AlgebraSpec {
        &self.0
    }

    pub fn field(&self) -> &Field {
        &self.0.field
    }

    pub fn dim(&self) -> usize {
        self.0.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.0.labels
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.0.labels.iter().position(|l| l == label)
    }

    /// Nonzero terms of `b_i b_j`.
    pub fn product_terms(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.0.products[i * self.0.dim + j]
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Scalar {
        self.product_terms(i, j)
            .iter()
            .find(|(t, _)| *t == k)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| self.field().zero())
    }

    fn product_vector(&self, i: usize, j: usize) -> Vec<Scalar> {
        let mut v = vec![self.field().zero(); self.dim()];
        for (k, c) in self.product_terms(i, j) {
            v[*k] = c.clone();
        }
        v
    }

    pub fn one_coords(&self) -> &[Scalar] {
        &self.0.one
    }

    pub fn basis_coords(&self, i: usize) -> Vec<Scalar> {
        let f = self.field();
        (0..self.dim())
            .map(|k| if k == i { f.one() } else { f.zero() })
            .collect()
    }

    pub fn one(&self) -> AlgElement {
        AlgElement::raw(self, self.0.one.clone())
    }

    pub fn zero(&self) -> AlgElement {
        AlgElement::raw(self, vec![self.field().zero(); self.dim()])
    }

    pub fn basis(&self, i: usize) -> AlgElement {
        AlgElement::raw(self, self.basis_coords(i))
    }

    pub fn basis_elements(&self) -> Vec<AlgElement> {
        (0..self.dim()).map(|i| self.basis(i)).collect()
    }

    pub fn element(&self, coords: Vec<Scalar>) -> Result<AlgElement> {
        if coords.len() != self.dim() {
            return Err(Error::AlgebraMismatch);
        }
        if !coords.iter().all(|c| self.field().contains(c)) {
            return Err(Error::FieldMismatch);
        }
        Ok(AlgElement::raw(self, coords))
    }

    pub fn element_from_ints(&self, coords: &[i64]) -> Result<AlgElement> {
        let f = self.field();
        self.element(coords.iter().map(|&c| f.from_int(c)).collect())
    }

    pub fn scalar(&self, c: &Scalar) -> AlgElement {
        self.one().scale(c)
    }

    /// Bilinear product on raw coordinate vectors.
    pub fn mul_coords(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let f = self.field();
        let n = self.dim();
        let mut out = vec![f.zero(); n];
        for (i, ai) in a.iter().enumerate() {
            if f.is_zero(ai) {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if f.is_zero(bj) {
                    continue;
                }
                let coef = f.mul(ai, bj);
                for (k, c) in self.product_terms(i, j) {
                    out[*k] = f.add(&out[*k], &f.mul(&coef, c));
                }
            }
        }
        out
    }

    /// Matrix of `x -> u x` in the basis (column j is `u b_j`).
    pub fn left_matrix(&self, u: &[Scalar]) -> Matrix {
        let n = self.dim();
        let cols: Vec<Vec<Scalar>> = (0..n)
            .map(|j| self.mul_coords(u, &self.basis_coords(j)))
            .collect();
        linalg::transpose(&cols)
    }

    /// Matrix of `x -> x z` (column j is `b_j z`).
    pub fn right_matrix(&self, z: &[Scalar]) -> Matrix {
        let n = self.dim();
        let cols: Vec<Vec<Scalar>> = (0..n)
            .map(|j| self.mul_coords(&self.basis_coords(j), z))
            .collect();
        linalg::transpose(&cols)
    }

    /// A finite-dimensional unital algebra element is a unit iff its left
    /// regular matrix is nonsingular.
    pub fn is_unit_coords(&self, u: &[Scalar]) -> bool {
        linalg::rank(self.field(), &self.left_matrix(u)) == self.dim()
    }

    pub fn trace_of_left(&self, u: &[Scalar]) -> Scalar {
        let f = self.field();
        let m = self.left_matrix(u);
        (0..self.dim()).fold(f.zero(), |acc, i| f.add(&acc, &m[i][i]))
    }

    pub fn whole(&self) -> Subspace {
        Subspace::from_vectors(self, (0..self.dim()).map(|i| self.basis_coords(i)).collect())
    }

    pub fn zero_subspace(&self) -> Subspace {
        Subspace::from_vectors(self, Vec::new())
    }

    fn check_owned(&self, xs: &[&AlgElement]) -> Result<()> {
        if xs.iter().all(|x| &x.alg == self) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    /// `{x : xs = sx for all s in S}`.
    pub fn centralizer(&self, set: &[AlgElement]) -> Result<Subspace> {
        self.check_owned(&set.iter().collect::<Vec<_>>())?;
        let f = self.field();
        let mut eqs = Matrix::new();
        for s in set {
            let r = self.right_matrix(&s.coords);
            let l = self.left_matrix(&s.coords);
            for (rr, lr) in r.iter().zip(&l) {
                eqs.push(rr.iter().zip(lr).map(|(a, b)| f.sub(a, b)).collect());
            }
        }
        Ok(Subspace::from_rref(self, linalg::nullspace(f, &eqs, self.dim())))
    }

    pub fn center(&self) -> Subspace {
        self.centralizer(&self.basis_elements())
            .expect("basis belongs to the algebra")
    }

    /// `{x : x z = 0}`.
    pub fn left_annihilator(&self, z: &AlgElement) -> Result<Subspace> {
        self.check_owned(&[z])?;
        let m = self.right_matrix(&z.coords);
        Ok(Subspace::from_rref(
            self,
            linalg::nullspace(self.field(), &m, self.dim()),
        ))
    }

    /// Smallest unital subalgebra containing `set`.
    pub fn generated_subalgebra(&self, set: &[AlgElement]) -> Result<Subspace> {
        self.check_owned(&set.iter().collect::<Vec<_>>())?;
        let mut vectors = vec![self.0.one.clone()];
        vectors.extend(set.iter().map(|s| s.coords.clone()));
        let mut span = Subspace::from_vectors(self, vectors);
        loop {
            let next = span.sum(&span.product(&span));
            if next.dim() == span.dim() {
                return Ok(span);
            }
            span = next;
        }
    }

    pub fn is_commutative(&self) -> CommutativityCheck {
        self.whole().is_commutative()
    }

    /// Quotient by a two-sided ideal. The quotient basis is the set of
    /// standard basis vectors at the ideal's non-pivot columns.
    pub fn quotient(&self, ideal: &Subspace) -> Result<Quotient> {
        if ideal.algebra() != self {
            return Err(Error::AlgebraMismatch);
        }
        ideal.check_two_sided_ideal()?;
        if ideal.dim() == self.dim() {
            return Err(Error::NotAnIdeal(
                "the ideal is the whole algebra, the quotient would be zero".into(),
            ));
        }
        let f = self.field();
        let n = self.dim();
        let mut is_pivot = vec![false; n];
        for &p in ideal.pivots() {
            is_pivot[p] = true;
        }
        let complement: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
        let project = |v: &[Scalar]| -> Vec<Scalar> {
            let r = linalg::reduce(f, ideal.basis(), ideal.pivots(), v);
            complement.iter().map(|&c| r[c].clone()).collect()
        };
        let m = complement.len();
        let mut products = Vec::with_capacity(m * m);
        for &a in &complement {
            for &b in &complement {
                let img = project(&self.product_vector(a, b));
                products.push(
                    img.into_iter()
                        .enumerate()
                        .filter(|(_, c)| !f.is_zero(c))
                        .collect(),
                );
            }
        }
        let one = project(&self.0.one);
        let labels = complement.iter().map(|&c| self.0.labels[c].clone()).collect();
        let target = Algebra::from_sparse(f, m, products, one, Some(labels))?;
        Ok(Quotient {
            source: self.clone(),
            target,
            ideal: ideal.clone(),
            complement,
        })
    }

    pub fn format_coords(&self, coords: &[Scalar]) -> String {
        let f = self.field();
        let terms: Vec<String> = coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !f.is_zero(c))
            .map(|(i, c)| {
                let label = &self.0.labels[i];
                if f.is_one(c) {
                    label.clone()
                } else {
                    format!("{}*{label}", f.format(c))
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }

    pub fn coords_to_json(&self, coords: &[Scalar]) -> Value {
        Value::Array(coords.iter().map(|c| self.field().to_json(c)).collect())
    }
}

/// Result of a pairwise commutativity test.
#[derive(Debug, Clone)]
pub struct CommutativityCheck {
    pub commutative: bool,
    pub witness: Option<(AlgElement, AlgElement)>,
}

/// An element of an [`Algebra`]: a coordinate vector over its basis.
#[derive(Clone, PartialEq, Eq)]
pub struct AlgElement {
    alg: Algebra,
    coords: Vec<Scalar>,
}

impl AlgElement {
    pub(crate) fn raw(alg: &Algebra, coords: Vec<Scalar>) -> AlgElement {
        debug_assert_eq!(coords.len(), alg.dim());
        AlgElement {
            alg: alg.clone(),
            coords,
        }
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Scalar> {
        self.coords
    }

    fn same(&self, other: &AlgElement) -> Result<()> {
        if self.alg == other.alg {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    pub fn mul(&self, other: &AlgElement) -> Result<AlgElement> {
        self.same(other)?;
        Ok(AlgElement::raw(
            &self.alg,
            self.alg.mul_coords(&self.coords, &other.coords),
        ))
    }

    pub fn add(&self, other: &AlgElement) -> Result<AlgElement> {
        self.same(other)?;
        let f = self.alg.field();
        Ok(AlgElement::raw(
            &self.alg,
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| f.add(a, b))
                .collect(),
        ))
    }

    pub fn sub(&self, other: &AlgElement) -> Result<AlgElement> {
        self.same(other)?;
        let f = self.alg.field();
        Ok(AlgElement::raw(
            &self.alg,
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| f.sub(a, b))
                .collect(),
        ))
    }

    pub fn neg(&self) -> AlgElement {
        let f = self.alg.field();
        AlgElement::raw(&self.alg, self.coords.iter().map(|a| f.neg(a)).collect())
    }

    pub fn scale(&self, c: &Scalar) -> AlgElement {
        let f = self.alg.field();
        AlgElement::raw(&self.alg, self.coords.iter().map(|a| f.mul(a, c)).collect())
    }

    /// `self - alpha * 1`
    pub fn shift(&self, alpha: &Scalar) -> AlgElement {
        let f = self.alg.field();
        AlgElement::raw(
            &self.alg,
            self.coords
                .iter()
                .zip(self.alg.one_coords())
                .map(|(a, o)| f.sub(a, &f.mul(alpha, o)))
                .collect(),
        )
    }

    /// Lie commutator `[x, y] = xy - yx`.
    pub fn lie(&self, other: &AlgElement) -> Result<AlgElement> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    pub fn commutes_with(&self, other: &AlgElement) -> Result<bool> {
        Ok(self.lie(other)?.is_zero())
    }

    pub fn pow(&self, mut e: u64) -> AlgElement {
        let mut base = self.clone();
        let mut acc = self.alg.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).unwrap();
            }
            base = base.mul(&base).unwrap();
            e >>= 1;
        }
        acc
    }

    /// Inverse via the left regular matrix; checked on both sides.
    pub fn try_invert(&self) -> Result<AlgElement> {
        let f = self.alg.field();
        let l = self.alg.left_matrix(&self.coords);
        let v = linalg::solve(f, &l, self.alg.one_coords()).ok_or(Error::NotAUnit)?;
        if linalg::rank(f, &l) != self.alg.dim() {
            return Err(Error::NotAUnit);
        }
        let inv = AlgElement::raw(&self.alg, v);
        debug_assert!(inv.mul(self).unwrap().is_one());
        Ok(inv)
    }

    pub fn is_unit(&self) -> bool {
        self.alg.is_unit_coords(&self.coords)
    }

    pub fn is_zero(&self) -> bool {
        let f = self.alg.field();
        self.coords.iter().all(|c| f.is_zero(c))
    }

    pub fn is_one(&self) -> bool {
        self.coords == self.alg.one_coords()
    }

    pub fn to_json(&self) -> Value {
        self.alg.coords_to_json(&self.coords)
    }
}

impl fmt::Display for AlgElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.alg.format_coords(&self.coords))
    }
}

impl fmt::Debug for AlgElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

pub fn multiply(a: &AlgElement, b: &AlgElement) -> Result<AlgElement> {
    a.mul(b)
}

pub fn lie_commutator(x: &AlgElement, y: &AlgElement) -> Result<AlgElement> {
    x.lie(y)
}

/// A subspace of an algebra stored as a canonical RREF basis, so equal
/// subspaces compare equal.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    alg: Algebra,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.basis.iter().map(|r| self.alg.format_coords(r)).collect();
        write!(f, "span{{{}}}", rows.join(", "))
    }
}

impl Subspace {
    pub fn from_vectors(alg: &Algebra, vectors: Matrix) -> Subspace {
        Subspace::from_rref(alg, linalg::row_space(alg.field(), vectors))
    }

    pub fn from_elements(alg: &Algebra, elems: &[AlgElement]) -> Result<Subspace> {
        alg.check_owned(&elems.iter().collect::<Vec<_>>())?;
        Ok(Subspace::from_vectors(
            alg,
            elems.iter().map(|e| e.coords.clone()).collect(),
        ))
    }

    fn from_rref(alg: &Algebra, basis: Matrix) -> Subspace {
        let pivots = linalg::pivots_of(alg.field(), &basis);
        Subspace {
            alg: alg.clone(),
            basis,
            pivots,
        }
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_elements(&self) -> Vec<AlgElement> {
        self.basis
            .iter()
            .map(|r| AlgElement::raw(&self.alg, r.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_whole(&self) -> bool {
        self.dim() == self.alg.dim()
    }

    pub fn contains_coords(&self, v: &[Scalar]) -> bool {
        let f = self.alg.field();
        linalg::reduce(f, &self.basis, &self.pivots, v)
            .iter()
            .all(|c| f.is_zero(c))
    }

    pub fn contains(&self, x: &AlgElement) -> bool {
        x.alg == self.alg && self.contains_coords(&x.coords)
    }

    /// Coefficients of `v` in the RREF basis (assumes membership).
    pub fn coordinates_of(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.pivots.iter().map(|&p| v[p].clone()).collect()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|r| other.contains_coords(r))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut v = self.basis.clone();
        v.extend(other.basis.iter().cloned());
        Subspace::from_vectors(&self.alg, v)
    }

    /// Linear equations cutting out this subspace.
    fn equations(&self) -> Matrix {
        let f = self.alg.field();
        let n = self.alg.dim();
        let mut is_pivot = vec![false; n];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        // x is in the span iff x[c] = sum_r x[p_r] * basis[r][c] at every
        // non-pivot column c.
        (0..n)
            .filter(|&c| !is_pivot[c])
            .map(|c| {
                let mut row = vec![f.zero(); n];
                row[c] = f.one();
                for (r, &p) in self.basis.iter().zip(&self.pivots) {
                    row[p] = f.sub(&row[p], &r[c]);
                }
                row
            })
            .collect()
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        let f = self.alg.field();
        let eqs = other.equations();
        // Conditions on the coefficient vector a of x = sum a_i u_i.
        let m: Matrix = eqs
            .iter()
            .map(|e| {
                self.basis
                    .iter()
                    .map(|u| {
                        u.iter().zip(e).fold(f.zero(), |acc, (a, b)| {
                            if f.is_zero(a) || f.is_zero(b) {
                                acc
                            } else {
                                f.add(&acc, &f.mul(a, b))
                            }
                        })
                    })
                    .collect()
            })
            .collect();
        let ker = if m.is_empty() {
            (0..self.dim())
                .map(|i| {
                    (0..self.dim())
                        .map(|j| if i == j { f.one() } else { f.zero() })
                        .collect()
                })
                .collect()
        } else {
            linalg::nullspace(f, &m, self.dim())
        };
        let vectors = ker
            .iter()
            .map(|a| {
                let mut x = vec![f.zero(); self.alg.dim()];
                for (ai, u) in a.iter().zip(&self.basis) {
                    if f.is_zero(ai) {
                        continue;
                    }
                    for (xi, ui) in x.iter_mut().zip(u) {
                        *xi = f.add(xi, &f.mul(ai, ui));
                    }
                }
                x
            })
            .collect();
        Subspace::from_vectors(&self.alg, vectors)
    }

    /// Span of all products `u v` with `u` in self and `v` in other.
    pub fn product(&self, other: &Subspace) -> Subspace {
        let mut v = Vec::new();
        for a in &self.basis {
            for b in &other.basis {
                v.push(self.alg.mul_coords(a, b));
            }
        }
        Subspace::from_vectors(&self.alg, v)
    }

    /// Smallest k with self^k = 0, if it is at most dim + 1.
    pub fn nilpotency_index(&self) -> Option<usize> {
        if self.is_zero() {
            return Some(1);
        }
        let mut power = self.clone();
        for k in 1..=self.alg.dim() + 1 {
            if power.is_zero() {
                return Some(k);
            }
            power = power.product(self);
        }
        None
    }

    pub fn check_two_sided_ideal(&self) -> Result<()> {
        for i in 0..self.alg.dim() {
            let b = self.alg.basis_coords(i);
            for (r, row) in self.basis.iter().enumerate() {
                if !self.contains_coords(&self.alg.mul_coords(&b, row)) {
                    return Err(Error::NotAnIdeal(format!("b{i} * v{r} leaves the subspace")));
                }
                if !self.contains_coords(&self.alg.mul_coords(row, &b)) {
                    return Err(Error::NotAnIdeal(format!("v{r} * b{i} leaves the subspace")));
                }
            }
        }
        Ok(())
    }

    pub fn is_two_sided_ideal(&self) -> bool {
        self.check_two_sided_ideal().is_ok()
    }

    pub fn is_commutative(&self) -> CommutativityCheck {
        let f = self.alg.field();
        for i in 0..self.basis.len() {
            for j in i + 1..self.basis.len() {
                let (a, b) = (&self.basis[i], &self.basis[j]);
                let ab = self.alg.mul_coords(a, b);
                let ba = self.alg.mul_coords(b, a);
                if ab.iter().zip(&ba).any(|(x, y)| !f.is_zero(&f.sub(x, y))) {
                    return CommutativityCheck {
                        commutative: false,
                        witness: Some((
                            AlgElement::raw(&self.alg, a.clone()),
                            AlgElement::raw(&self.alg, b.clone()),
                        )),
                    };
                }
            }
        }
        CommutativityCheck {
            commutative: true,
            witness: None,
        }
    }

    /// The subspace as an algebra in its own right, in RREF-basis
    /// coordinates, with `unity` as its identity. Fails unless the subspace
    /// is closed under multiplication and contains `unity`.
    pub fn as_algebra(&self, unity: &AlgElement) -> Result<Algebra> {
        if !self.contains(unity) {
            return Err(Error::InvalidAlgebra("unity is outside the subspace".into()));
        }
        let f = self.alg.field();
        let m = self.dim();
        let mut products = Vec::with_capacity(m * m);
        for a in &self.basis {
            for b in &self.basis {
                let p = self.alg.mul_coords(a, b);
                if !self.contains_coords(&p) {
                    return Err(Error::InvalidAlgebra(
                        "subspace is not closed under multiplication".into(),
                    ));
                }
                products.push(
                    self.coordinates_of(&p)
                        .into_iter()
                        .enumerate()
                        .filter(|(_, c)| !f.is_zero(c))
                        .collect(),
                );
            }
        }
        let labels = (0..m).map(|i| format!("v{i}")).collect();
        Algebra::from_sparse(f, m, products, self.coordinates_of(unity.coords()), Some(labels))
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.basis.iter().map(|r| self.alg.coords_to_json(r)).collect())
    }
}

/// A quotient algebra together with its projection.
#[derive(Clone, Debug)]
pub struct Quotient {
    source: Algebra,
    target: Algebra,
    ideal: Subspace,
    complement: Vec<usize>,
}

impl Quotient {
    pub fn algebra(&self) -> &Algebra {
        &self.target
    }

    pub fn ideal(&self) -> &Subspace {
        &self.ideal
    }

    /// Source basis indices that form the quotient basis.
    pub fn complement(&self) -> &[usize] {
        &self.complement
    }

    pub fn project(&self, x: &AlgElement) -> Result<AlgElement> {
        if x.algebra() != &self.source {
            return Err(Error::AlgebraMismatch);
        }
        let f = self.source.field();
        let r = linalg::reduce(f, self.ideal.basis(), self.ideal.pivots(), x.coords());
        Ok(AlgElement::raw(
            &self.target,
            self.complement.iter().map(|&c| r[c].clone()).collect(),
        ))
    }

    /// A linear section of the projection.
    pub fn lift(&self, y: &AlgElement) -> Result<AlgElement> {
        if y.algebra() != &self.target {
            return Err(Error::AlgebraMismatch);
        }
        let f = self.source.field();
        let mut v = vec![f.zero(); self.source.dim()];
        for (c, yc) in self.complement.iter().zip(y.coords()) {
            v[*c] = yc.clone();
        }
        Ok(AlgElement::raw(&self.source, v))
    }
}
