//! Exact scalar arithmetic over Q, GF(p) and GF(p^k).
//!
//! A [`Field`] is a cheap, shareable handle. Scalars are plain values
//! ([`Scalar`]) interpreted relative to a field; [`FieldScalar`] bundles the
//! two for the public API.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::poly::Poly;

/// Largest prime accepted as a characteristic.
pub const MAX_PRIME: u64 = (1 << 31) - 1;
/// Largest extension field order; multiplication goes through log tables.
pub const MAX_EXTENSION_ORDER: u64 = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FieldKind {
    Rationals,
    PrimeField,
    ExtensionField,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    pub kind: FieldKind,
    /// 0 for Q.
    pub characteristic: u64,
    pub degree: u32,
    /// Monic, lowest degree first; empty unless `kind` is an extension.
    pub modulus: Vec<u64>,
}

/// A scalar value. `Finite` holds the base-p code of the coefficient vector
/// (`sum c_j p^j`), which is just the residue for prime fields.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Rational(BigRational),
    Finite(u32),
}

struct LogTables {
    exp: Vec<u32>,
    log: Vec<u32>,
}

struct Inner {
    spec: FieldSpec,
    order: Option<u64>,
    tables: Option<LogTables>,
}

#[derive(Clone)]
pub struct Field(Arc<Inner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.spec == other.0.spec
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = &self.0.spec;
        match s.kind {
            FieldKind::Rationals => write!(f, "Q"),
            FieldKind::PrimeField => write!(f, "GF({})", s.characteristic),
            FieldKind::ExtensionField => write!(f, "GF({}^{})", s.characteristic, s.degree),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    pub fn rationals() -> Field {
        Field(Arc::new(Inner {
            spec: FieldSpec {
                kind: FieldKind::Rationals,
                characteristic: 0,
                degree: 1,
                modulus: Vec::new(),
            },
            order: None,
            tables: None,
        }))
    }

    pub fn prime(p: u64) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if p > MAX_PRIME {
            return Err(Error::InvalidField(format!(
                "characteristic {p} exceeds the supported maximum {MAX_PRIME}"
            )));
        }
        Ok(Field(Arc::new(Inner {
            spec: FieldSpec {
                kind: FieldKind::PrimeField,
                characteristic: p,
                degree: 1,
                modulus: Vec::new(),
            },
            order: Some(p),
            tables: None,
        })))
    }

    /// GF(p^k) as GF(p)[x]/(modulus). The modulus must be monic of degree
    /// k >= 2 and irreducible.
    pub fn extension(p: u64, modulus: &[u64]) -> Result<Field> {
        let base = Field::prime(p)?;
        let k = modulus.len().saturating_sub(1);
        if k < 2 {
            return Err(Error::InvalidField(
                "extension modulus must have degree at least 2".into(),
            ));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidField(format!(
                "modulus coefficients must lie in [0, {p})"
            )));
        }
        if modulus[k] != 1 {
            return Err(Error::InvalidField("extension modulus must be monic".into()));
        }
        let order = (p as u128).pow(k as u32);
        if order > MAX_EXTENSION_ORDER as u128 {
            return Err(Error::InvalidField(format!(
                "extension order {order} exceeds the supported maximum {MAX_EXTENSION_ORDER}"
            )));
        }
        let q = order as u64;
        let m = Poly::new(&base, modulus.iter().map(|&c| Scalar::Finite(c as u32)).collect());
        if !m.is_irreducible_over_prime_field() {
            return Err(Error::InvalidField("extension modulus is reducible".into()));
        }
        let tables = build_log_tables(&base, &m, q)?;
        Ok(Field(Arc::new(Inner {
            spec: FieldSpec {
                kind: FieldKind::ExtensionField,
                characteristic: p,
                degree: k as u32,
                modulus: modulus.to_vec(),
            },
            order: Some(q),
            tables: Some(tables),
        })))
    }

    pub fn from_spec(spec: &FieldSpec) -> Result<Field> {
        match spec.kind {
            FieldKind::Rationals => Ok(Field::rationals()),
            FieldKind::PrimeField => {
                if spec.degree != 1 {
                    return Err(Error::InvalidField("prime field must have degree 1".into()));
                }
                Field::prime(spec.characteristic)
            }
            FieldKind::ExtensionField => {
                if spec.modulus.len() != spec.degree as usize + 1 {
                    return Err(Error::InvalidField("modulus length must be degree + 1".into()));
                }
                Field::extension(spec.characteristic, &spec.modulus)
            }
        }
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.0.spec
    }

    pub fn characteristic(&self) -> u64 {
        self.0.spec.characteristic
    }

    pub fn degree(&self) -> u32 {
        self.0.spec.degree
    }

    /// Number of elements, `None` for Q.
    pub fn order(&self) -> Option<u64> {
        self.0.order
    }

    pub fn is_finite(&self) -> bool {
        self.0.order.is_some()
    }

    pub fn zero(&self) -> Scalar {
        if self.is_finite() {
            Scalar::Finite(0)
        } else {
            Scalar::Rational(BigRational::zero())
        }
    }

    pub fn one(&self) -> Scalar {
        if self.is_finite() {
            Scalar::Finite(1)
        } else {
            Scalar::Rational(BigRational::one())
        }
    }

    pub fn from_int(&self, n: i64) -> Scalar {
        match self.0.order {
            None => Scalar::Rational(BigRational::from_integer(n.into())),
            Some(_) => {
                let p = self.characteristic() as i64;
                Scalar::Finite(n.rem_euclid(p) as u32)
            }
        }
    }

    pub fn from_rational(&self, r: BigRational) -> Result<Scalar> {
        match self.0.order {
            None => Ok(Scalar::Rational(r)),
            Some(_) => {
                let p = BigInt::from(self.characteristic());
                let num = (r.numer() % &p + &p) % &p;
                let den = (r.denom() % &p + &p) % &p;
                let den = Scalar::Finite(den.to_u32().unwrap_or(0));
                let inv = self
                    .inv(&den)
                    .ok_or_else(|| Error::Parse(format!("denominator of {r} vanishes mod {p}")))?;
                Ok(self.mul(&Scalar::Finite(num.to_u32().unwrap_or(0)), &inv))
            }
        }
    }

    /// Scalar from its base-p code. Finite fields only.
    pub fn from_code(&self, code: u64) -> Scalar {
        debug_assert!(self.0.order.is_some_and(|q| code < q));
        Scalar::Finite(code as u32)
    }

    pub fn code(&self, s: &Scalar) -> u64 {
        match s {
            Scalar::Finite(c) => *c as u64,
            Scalar::Rational(_) => panic!("code() requires a finite field"),
        }
    }

    /// Coefficient vector over the prime field (length = degree).
    pub fn digits(&self, s: &Scalar) -> Vec<u64> {
        let p = self.characteristic();
        let mut c = self.code(s);
        (0..self.degree())
            .map(|_| {
                let d = c % p;
                c /= p;
                d
            })
            .collect()
    }

    pub fn from_digits(&self, digits: &[u64]) -> Scalar {
        let p = self.characteristic();
        let code = digits.iter().rev().fold(0u64, |acc, &d| acc * p + d % p);
        Scalar::Finite(code as u32)
    }

    fn add_codes(&self, a: u32, b: u32, negate_b: bool) -> u32 {
        let p = self.characteristic() as u32;
        if self.degree() == 1 {
            let b = if negate_b { (p - b) % p } else { b };
            return ((a as u64 + b as u64) % p as u64) as u32;
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.degree() {
            let (da, db) = (a % p, b % p);
            let db = if negate_b { (p - db) % p } else { db };
            out += ((da + db) % p) * place;
            a /= p;
            b /= p;
            place = place.wrapping_mul(p);
        }
        out
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x + y),
            (Scalar::Finite(x), Scalar::Finite(y)) => Scalar::Finite(self.add_codes(*x, *y, false)),
            _ => panic!("mixed scalar representations"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x - y),
            (Scalar::Finite(x), Scalar::Finite(y)) => Scalar::Finite(self.add_codes(*x, *y, true)),
            _ => panic!("mixed scalar representations"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match a {
            Scalar::Rational(x) => Scalar::Rational(-x),
            Scalar::Finite(x) => Scalar::Finite(self.add_codes(0, *x, true)),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x * y),
            (Scalar::Finite(x), Scalar::Finite(y)) => {
                if *x == 0 || *y == 0 {
                    return Scalar::Finite(0);
                }
                match &self.0.tables {
                    None => {
                        let p = self.characteristic();
                        Scalar::Finite(((*x as u64 * *y as u64) % p) as u32)
                    }
                    Some(t) => {
                        let n = t.exp.len();
                        let e = (t.log[*x as usize] as usize + t.log[*y as usize] as usize) % n;
                        Scalar::Finite(t.exp[e])
                    }
                }
            }
            _ => panic!("mixed scalar representations"),
        }
    }

    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        if self.is_zero(a) {
            return None;
        }
        match a {
            Scalar::Rational(x) => Some(Scalar::Rational(x.recip())),
            Scalar::Finite(x) => match &self.0.tables {
                None => {
                    let p = self.characteristic();
                    Some(Scalar::Finite(pow_mod(*x as u64, p - 2, p) as u32))
                }
                Some(t) => {
                    let n = t.exp.len();
                    let e = (n - t.log[*x as usize] as usize) % n;
                    Some(Scalar::Finite(t.exp[e]))
                }
            },
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Option<Scalar> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    pub fn pow(&self, a: &Scalar, mut e: u64) -> Scalar {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Rational(x) => x.is_zero(),
            Scalar::Finite(x) => *x == 0,
        }
    }

    pub fn is_one(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Rational(x) => x.is_one(),
            Scalar::Finite(x) => *x == 1,
        }
    }

    /// True when `s` is a well-formed value of this field.
    pub fn contains(&self, s: &Scalar) -> bool {
        match (s, self.0.order) {
            (Scalar::Rational(_), None) => true,
            (Scalar::Finite(c), Some(q)) => (*c as u64) < q,
            _ => false,
        }
    }

    /// All elements in code order. Finite fields only.
    pub fn elements(&self) -> impl Iterator<Item = Scalar> + '_ {
        let q = self.order().expect("elements() requires a finite field");
        (0..q).map(|c| Scalar::Finite(c as u32))
    }

    /// Shift candidates in the order 0, 1, -1, 2, -2, ... For finite fields
    /// the prime subfield is walked this way (skipping repeats) and the
    /// remaining elements follow in code order.
    pub fn shift_candidates(&self) -> Box<dyn Iterator<Item = Scalar> + '_> {
        let symmetric = (0i64..).flat_map(|n| if n == 0 { vec![0] } else { vec![n, -n] });
        match self.order() {
            None => Box::new(symmetric.map(|n| self.from_int(n))),
            Some(q) => {
                let p = self.characteristic() as i64;
                let mut seen = vec![false; p as usize];
                let mut prime_part = Vec::with_capacity(p as usize);
                for n in symmetric.take(2 * p as usize + 1) {
                    let r = n.rem_euclid(p) as usize;
                    if !seen[r] {
                        seen[r] = true;
                        prime_part.push(Scalar::Finite(r as u32));
                    }
                }
                Box::new(
                    prime_part
                        .into_iter()
                        .chain((p as u64..q).map(|c| Scalar::Finite(c as u32))),
                )
            }
        }
    }

    pub fn format(&self, s: &Scalar) -> String {
        match s {
            Scalar::Rational(r) => r.to_string(),
            Scalar::Finite(_) if self.degree() == 1 => self.code(s).to_string(),
            Scalar::Finite(_) => format!("{:?}", self.digits(s)),
        }
    }

    /// Q: string "p/q" ("n" when integral); GF: coefficient array.
    pub fn to_json(&self, s: &Scalar) -> Value {
        match s {
            Scalar::Rational(r) => Value::String(r.to_string()),
            Scalar::Finite(_) => Value::Array(self.digits(s).into_iter().map(Value::from).collect()),
        }
    }

    /// Accepts strings "p/q", integers, and (finite fields) coefficient arrays.
    pub fn parse(&self, v: &Value) -> std::result::Result<Scalar, String> {
        match v {
            Value::String(s) => {
                let r = parse_rational(s)?;
                self.from_rational(r).map_err(|e| e.to_string())
            }
            Value::Number(n) => {
                let i = n
                    .as_i64()
                    .ok_or_else(|| format!("scalar {n} is not an integer"))?;
                Ok(self.from_int(i))
            }
            Value::Array(items) if self.is_finite() => {
                if items.len() > self.degree() as usize {
                    return Err(format!(
                        "coefficient array longer than field degree {}",
                        self.degree()
                    ));
                }
                let p = self.characteristic() as i64;
                let mut digits = Vec::with_capacity(items.len());
                for item in items {
                    let d = item
                        .as_i64()
                        .ok_or_else(|| "coefficients must be integers".to_string())?;
                    digits.push(d.rem_euclid(p) as u64);
                }
                Ok(self.from_digits(&digits))
            }
            _ => Err(format!("cannot read {v} as a scalar of {self}")),
        }
    }
}

fn parse_rational(s: &str) -> std::result::Result<BigRational, String> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| format!("bad numerator in '{s}'"))?;
    let d: BigInt = d.parse().map_err(|_| format!("bad denominator in '{s}'"))?;
    if d.is_zero() {
        return Err(format!("zero denominator in '{s}'"));
    }
    Ok(BigRational::new(n, d))
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = ((acc as u128 * b as u128) % m as u128) as u64;
        }
        b = ((b as u128 * b as u128) % m as u128) as u64;
        e >>= 1;
    }
    acc
}

fn poly_code(base: &Field, f: &Poly) -> u32 {
    let digits: Vec<u64> = f.coeffs().iter().map(|c| base.code(c)).collect();
    base.from_digits(&digits).code()
}

fn build_log_tables(base: &Field, modulus: &Poly, q: u64) -> Result<LogTables> {
    let p = base.characteristic();
    let n = (q - 1) as usize;
    for candidate in p..q {
        let mut digits = Vec::new();
        let mut c = candidate;
        while c > 0 {
            digits.push(Scalar::Finite((c % p) as u32));
            c /= p;
        }
        let g = Poly::new(base, digits);
        let mut exp = Vec::with_capacity(n);
        let mut cur = Poly::one(base);
        loop {
            exp.push(poly_code(base, &cur));
            cur = cur.mul(&g).rem(modulus);
            if cur.is_one() || exp.len() > n {
                break;
            }
        }
        if exp.len() == n {
            let mut log = vec![0u32; q as usize];
            for (i, &e) in exp.iter().enumerate() {
                log[e as usize] = i as u32;
            }
            return Ok(LogTables { exp, log });
        }
    }
    Err(Error::InvalidField("no primitive element found".into()))
}

impl Scalar {
    fn code(&self) -> u32 {
        match self {
            Scalar::Finite(c) => *c,
            Scalar::Rational(_) => unreachable!(),
        }
    }
}

/// A scalar together with the field it lives in.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldScalar {
    field: Field,
    value: Scalar,
}

impl FieldScalar {
    pub fn new(field: &Field, value: Scalar) -> Self {
        debug_assert!(field.contains(&value));
        FieldScalar {
            field: field.clone(),
            value,
        }
    }

    pub fn from_int(field: &Field, n: i64) -> Self {
        FieldScalar::new(field, field.from_int(n))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn value(&self) -> &Scalar {
        &self.value
    }

    pub fn into_value(self) -> Scalar {
        self.value
    }

    pub fn is_zero(&self) -> bool {
        self.field.is_zero(&self.value)
    }

    pub fn inv(&self) -> Option<FieldScalar> {
        self.field
            .inv(&self.value)
            .map(|v| FieldScalar::new(&self.field, v))
    }

    pub fn pow(&self, e: u64) -> FieldScalar {
        FieldScalar::new(&self.field, self.field.pow(&self.value, e))
    }

    pub fn to_json(&self) -> Value {
        self.field.to_json(&self.value)
    }

    fn check(&self, other: &FieldScalar) {
        assert!(self.field == other.field, "scalars from different fields");
    }
}

impl fmt::Debug for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.field.format(&self.value))
    }
}

impl fmt::Display for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.field.format(&self.value))
    }
}

// Operator impls panic on mixed fields, like shape mismatches in matrix crates.
impl Add for &FieldScalar {
    type Output = FieldScalar;
    fn add(self, rhs: &FieldScalar) -> FieldScalar {
        self.check(rhs);
        FieldScalar::new(&self.field, self.field.add(&self.value, &rhs.value))
    }
}

impl Sub for &FieldScalar {
    type Output = FieldScalar;
    fn sub(self, rhs: &FieldScalar) -> FieldScalar {
        self.check(rhs);
        FieldScalar::new(&self.field, self.field.sub(&self.value, &rhs.value))
    }
}

impl Mul for &FieldScalar {
    type Output = FieldScalar;
    fn mul(self, rhs: &FieldScalar) -> FieldScalar {
        self.check(rhs);
        FieldScalar::new(&self.field, self.field.mul(&self.value, &rhs.value))
    }
}

impl Neg for &FieldScalar {
    type Output = FieldScalar;
    fn neg(self) -> FieldScalar {
        FieldScalar::new(&self.field, self.field.neg(&self.value))
    }
}
