//! Dense univariate polynomials over a [`Field`], lowest degree first.

use std::fmt;

use num_bigint::BigUint;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::field::{Field, FieldScalar, Scalar};

#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn new(field: &Field, mut coeffs: Vec<Scalar>) -> Poly {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn from_ints(field: &Field, coeffs: &[i64]) -> Poly {
        Poly::new(field, coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    pub fn zero(field: &Field) -> Poly {
        Poly::new(field, Vec::new())
    }

    pub fn one(field: &Field) -> Poly {
        Poly::new(field, vec![field.one()])
    }

    pub fn constant(field: &Field, c: Scalar) -> Poly {
        Poly::new(field, vec![c])
    }

    pub fn x(field: &Field) -> Poly {
        Poly::new(field, vec![field.zero(), field.one()])
    }

    /// `c * x^d`
    pub fn monomial(field: &Field, c: Scalar, d: usize) -> Poly {
        let mut coeffs = vec![field.zero(); d + 1];
        coeffs[d] = c;
        Poly::new(field, coeffs)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.field.is_one(&self.coeffs[0])
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| self.field.is_one(c))
    }

    pub fn lead(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(
            f,
            (0..n).map(|i| f.add(&self.coeff(i), &other.coeff(i))).collect(),
        )
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(
            f,
            (0..n).map(|i| f.sub(&self.coeff(i), &other.coeff(i))).collect(),
        )
    }

    pub fn neg(&self) -> Poly {
        Poly::new(
            &self.field,
            self.coeffs.iter().map(|c| self.field.neg(c)).collect(),
        )
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        Poly::new(
            &self.field,
            self.coeffs.iter().map(|a| self.field.mul(a, c)).collect(),
        )
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.field);
        }
        let f = &self.field;
        let mut out = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(&out[i + j], &f.mul(a, b));
            }
        }
        Poly::new(f, out)
    }

    pub fn monic(&self) -> Poly {
        match self.lead() {
            None => self.clone(),
            Some(l) => self.scale(&self.field.inv(l).expect("nonzero lead")),
        }
    }

    /// Euclidean division. Panics on division by zero.
    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        let f = &self.field;
        let dd = d.degree().expect("division by the zero polynomial");
        let lead_inv = f.inv(d.lead().unwrap()).unwrap();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Poly::zero(f), self.clone());
        }
        let mut q = vec![f.zero(); r.len() - dd];
        for i in (dd..r.len()).rev() {
            let c = f.mul(&r[i], &lead_inv);
            if f.is_zero(&c) {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                let t = f.mul(&c, dc);
                r[i - dd + j] = f.sub(&r[i - dd + j], &t);
            }
            q[i - dd] = c;
        }
        r.truncate(dd);
        (Poly::new(f, q), Poly::new(f, r))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.divrem(d).1
    }

    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let (q, r) = self.divrem(d);
        r.is_zero().then_some(q)
    }

    /// Monic gcd (zero if both inputs are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns (g, s, t) with s*self + t*other = g, g monic.
    pub fn ext_gcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let f = &self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(f), Poly::zero(f));
        let (mut t0, mut t1) = (Poly::zero(f), Poly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.lead().cloned() {
            None => (r0, s0, t0),
            Some(l) => {
                let li = f.inv(&l).unwrap();
                (r0.scale(&li), s0.scale(&li), t0.scale(&li))
            }
        }
    }

    /// Inverse of `self` modulo `m`, if coprime.
    pub fn inverse_mod(&self, m: &Poly) -> Option<Poly> {
        let (g, s, _) = self.rem(m).ext_gcd(m);
        g.is_one().then(|| s.rem(m))
    }

    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        Poly::new(
            f,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| f.mul(c, &f.from_int(i as i64)))
                .collect(),
        )
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn pow_mod(&self, e: &BigUint, m: &Poly) -> Poly {
        let mut acc = Poly::one(&self.field).rem(m);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            acc = acc.mul(&acc).rem(m);
            if e.bit(i) {
                acc = acc.mul(&base).rem(m);
            }
        }
        acc
    }

    /// Horner evaluation.
    pub fn eval(&self, a: &Scalar) -> Scalar {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(f.zero(), |acc, c| f.add(&f.mul(&acc, a), c))
    }

    /// Irreducibility over a finite field: no factor of degree <= deg/2,
    /// detected with gcd(f, x^(q^i) - x).
    pub fn is_irreducible_finite(&self) -> bool {
        let q = self.field.order().expect("finite field required");
        let n = match self.degree() {
            None | Some(0) => return false,
            Some(n) => n,
        };
        let x = Poly::x(&self.field);
        let qe = BigUint::from(q);
        let mut h = x.rem(self);
        for _ in 1..=n / 2 {
            h = h.pow_mod(&qe, self);
            if !self.gcd(&h.sub(&x)).is_one() {
                return false;
            }
        }
        true
    }

    pub(crate) fn is_irreducible_over_prime_field(&self) -> bool {
        self.is_irreducible_finite()
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.coeffs.iter().map(|c| self.field.to_json(c)).collect())
    }
}

/// Evaluate `f` at a scalar from the same field.
pub fn eval_poly(f: &Poly, alpha: &FieldScalar) -> Result<FieldScalar> {
    if alpha.field() != f.field() {
        return Err(Error::FieldMismatch);
    }
    Ok(FieldScalar::new(f.field(), f.eval(alpha.value())))
}

impl fmt::Display for Poly {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(out, "0");
        }
        let f = &self.field;
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if f.is_zero(c) {
                continue;
            }
            if !first {
                write!(out, " + ")?;
            }
            first = false;
            let cs = f.format(c);
            match i {
                0 => write!(out, "{cs}")?,
                _ => {
                    if !f.is_one(c) {
                        write!(out, "({cs})*")?;
                    }
                    if i == 1 {
                        write!(out, "x")?;
                    } else {
                        write!(out, "x^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} over {}", self.field)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eval_examples() {
        let q = Field::rationals();
        let f = Poly::from_ints(&q, &[-1, 0, 1]);
        let one = FieldScalar::from_int(&q, 1);
        let two = FieldScalar::from_int(&q, 2);
        assert!(eval_poly(&f, &one).unwrap().is_zero());
        assert_eq!(eval_poly(&f, &two).unwrap(), FieldScalar::from_int(&q, 3));

        let f2 = Field::prime(2).unwrap();
        let g = Poly::from_ints(&f2, &[1, 1, 1]);
        let a = FieldScalar::from_int(&f2, 1);
        assert_eq!(eval_poly(&g, &a).unwrap(), FieldScalar::from_int(&f2, 1));
    }

    #[test]
    fn eval_rejects_foreign_scalar() {
        let f2 = Field::prime(2).unwrap();
        let f3 = Field::prime(3).unwrap();
        let g = Poly::from_ints(&f2, &[1, 1, 1]);
        assert_eq!(
            eval_poly(&g, &FieldScalar::from_int(&f3, 1)),
            Err(Error::FieldMismatch)
        );
    }

    #[test]
    fn division_and_gcd() {
        let q = Field::rationals();
        let a = Poly::from_ints(&q, &[-1, 0, 0, 1]); // x^3 - 1
        let b = Poly::from_ints(&q, &[-1, 0, 1]); // x^2 - 1
        let (quot, r) = a.divrem(&b);
        assert_eq!(quot.mul(&b).add(&r), a);
        assert_eq!(a.gcd(&b), Poly::from_ints(&q, &[-1, 1]));
        let inv = Poly::from_ints(&q, &[1, 1]).inverse_mod(&Poly::from_ints(&q, &[1, 0, 1]));
        let inv = inv.unwrap();
        let prod = inv
            .mul(&Poly::from_ints(&q, &[1, 1]))
            .rem(&Poly::from_ints(&q, &[1, 0, 1]));
        assert!(prod.is_one());
    }

    #[test]
    fn irreducibility_over_gf2() {
        let f2 = Field::prime(2).unwrap();
        assert!(Poly::from_ints(&f2, &[1, 1, 1]).is_irreducible_finite());
        assert!(!Poly::from_ints(&f2, &[1, 0, 1]).is_irreducible_finite());
        assert!(Poly::from_ints(&f2, &[1, 1, 0, 1]).is_irreducible_finite());
        assert!(!Poly::from_ints(&f2, &[1, 0, 1, 0, 1]).is_irreducible_finite());
    }
}
