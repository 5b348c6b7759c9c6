//! Per-element analysis: minimal polynomials, classification, shifted
//! inverses of torsion units, primary decomposition of `F[g]`.

use num_bigint::BigUint;
use num_integer::Integer;
use serde_json::{json, Value};

use crate::algebra::{AlgElement, Subspace};
use crate::error::{Error, Result};
use crate::factor::factor_poly_capped;
use crate::field::{Field, Scalar};
use crate::limits::Limits;
use crate::linalg::{self, Matrix};
use crate::poly::Poly;

/// Monic polynomial of least degree annihilating `g`, from the first linear
/// dependence in `1, g, g^2, ...`.
pub fn minimal_polynomial(g: &AlgElement) -> Poly {
    let alg = g.algebra();
    let f = alg.field();
    let mut powers: Vec<Vec<Scalar>> = vec![alg.one_coords().to_vec()];
    loop {
        let next = alg.mul_coords(powers.last().unwrap(), g.coords());
        let cols: Matrix = linalg::transpose(&powers);
        if let Some(c) = linalg::solve(f, &cols, &next) {
            let mut coeffs: Vec<Scalar> = c.iter().map(|x| f.neg(x)).collect();
            coeffs.push(f.one());
            return Poly::new(f, coeffs);
        }
        powers.push(next);
    }
}

/// How a torsion order (or its absence) was established.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TorsionMethod {
    /// Not a unit, so no order exists.
    NotUnit,
    /// Over Q: squarefree check plus cyclotomic identification of factors.
    Cyclotomic,
    /// Over GF(q): exponent bound from the factorization, then reduced.
    OrderBound,
    /// Direct search up to the torsion cap.
    Search,
}

impl TorsionMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            TorsionMethod::NotUnit => "not-unit",
            TorsionMethod::Cyclotomic => "cyclotomic",
            TorsionMethod::OrderBound => "order-bound",
            TorsionMethod::Search => "search",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorsionInfo {
    pub order: Option<u64>,
    pub method: TorsionMethod,
    /// Search bound; only meaningful for [`TorsionMethod::Search`].
    pub bound: u64,
}

impl TorsionInfo {
    /// True when `order == None` proves infinite order.
    pub fn certified(&self) -> bool {
        self.method != TorsionMethod::Search || self.order.is_some()
    }
}

#[derive(Debug, Clone)]
pub struct ElementProfile {
    pub minimal_polynomial: Poly,
    pub is_nilpotent: bool,
    pub nilpotency_index: Option<usize>,
    pub is_unipotent: bool,
    pub is_unit: bool,
    pub torsion: TorsionInfo,
    /// Every element of a finite-dimensional algebra is algebraic.
    pub is_algebraic: bool,
}

impl ElementProfile {
    pub fn torsion_order(&self) -> Option<u64> {
        self.torsion.order
    }

    pub fn to_json(&self) -> Value {
        json!({
            "minimal_polynomial": self.minimal_polynomial.to_json(),
            "minimal_polynomial_text": self.minimal_polynomial.to_string(),
            "is_nilpotent": self.is_nilpotent,
            "nilpotency_index": self.nilpotency_index,
            "is_unipotent": self.is_unipotent,
            "is_unit": self.is_unit,
            "torsion_order": self.torsion.order,
            "torsion_method": self.torsion.method.as_str(),
            "torsion_search_bound": self.torsion.bound,
            "torsion_certified": self.torsion.certified(),
            "is_algebraic": self.is_algebraic,
        })
    }
}

fn is_power_of_x(mu: &Poly) -> bool {
    let f = mu.field();
    let d = mu.degree().unwrap();
    (0..d).all(|i| f.is_zero(&mu.coeff(i)))
}

fn x_minus(f: &Field, a: &Scalar) -> Poly {
    Poly::new(f, vec![f.neg(a), f.one()])
}

pub fn classify(g: &AlgElement, limits: &Limits) -> ElementProfile {
    let mu = minimal_polynomial(g);
    let f = g.algebra().field();
    let d = mu.degree().unwrap();
    let is_nilpotent = is_power_of_x(&mu);
    let is_unit = !f.is_zero(&mu.coeff(0));
    let is_unipotent = mu == x_minus(f, &f.one()).pow(d as u64);
    let torsion = multiplicative_order(&mu, limits);
    ElementProfile {
        is_nilpotent,
        nilpotency_index: is_nilpotent.then_some(d),
        is_unipotent,
        is_unit,
        torsion,
        is_algebraic: true,
        minimal_polynomial: mu,
    }
}

/// Multiplicative order of `x` modulo `mu`, i.e. of any element with
/// minimal polynomial `mu`.
pub fn multiplicative_order(mu: &Poly, limits: &Limits) -> TorsionInfo {
    let f = mu.field();
    if f.is_zero(&mu.coeff(0)) {
        return TorsionInfo {
            order: None,
            method: TorsionMethod::NotUnit,
            bound: limits.torsion_cap,
        };
    }
    if mu.degree() == Some(0) {
        return TorsionInfo {
            order: Some(1),
            method: TorsionMethod::OrderBound,
            bound: limits.torsion_cap,
        };
    }
    let exact = if f.is_finite() {
        order_finite(mu).map(|o| (Some(o), TorsionMethod::OrderBound))
    } else {
        order_rational(mu, limits).map(|o| (o, TorsionMethod::Cyclotomic))
    };
    let (order, method) =
        exact.unwrap_or_else(|| (search_order(mu, limits.torsion_cap), TorsionMethod::Search));
    TorsionInfo {
        order,
        method,
        bound: limits.torsion_cap,
    }
}

fn x_pow_is_one(mu: &Poly, e: u64) -> bool {
    Poly::x(mu.field()).pow_mod(&BigUint::from(e), mu).is_one()
}

fn search_order(mu: &Poly, cap: u64) -> Option<u64> {
    let x = Poly::x(mu.field());
    let mut h = x.rem(mu);
    for n in 1..=cap {
        if h.is_one() {
            return Some(n);
        }
        h = h.mul(&x).rem(mu);
    }
    None
}

/// `Some(None)` certifies infinite order. `None` means factoring was
/// refused and the caller must fall back to a search.
fn order_rational(mu: &Poly, limits: &Limits) -> Option<Option<u64>> {
    let factors = factor_poly_capped(mu, limits.factor_degree_cap).ok()?;
    if factors.iter().any(|(_, m)| *m > 1) {
        return Some(None);
    }
    let mut order = 1u64;
    for (p, _) in &factors {
        let d = p.degree().unwrap() as u64;
        // A cyclotomic factor of degree d = phi(n) has n <= 2 d^2.
        match search_order(p, 2 * d * d + 2) {
            Some(n) => order = order.lcm(&n),
            None => return Some(None),
        }
    }
    Some(Some(order))
}

/// Exact order over GF(q) when the exponent bound can be factored.
fn order_finite(mu: &Poly) -> Option<u64> {
    let f = mu.field();
    let q = f.order().unwrap() as u128;
    let p = f.characteristic() as u128;
    let factors = factor_poly_capped(mu, usize::MAX).ok()?;
    let mut bound: u128 = 1;
    let mut primes: Vec<u128> = Vec::new();
    for (g, _) in &factors {
        let d = g.degree().unwrap() as u32;
        let qd = q.checked_pow(d)? - 1;
        primes.extend(prime_factors(qd)?);
        bound = lcm_u128(bound, qd)?;
    }
    let max_mult = factors.iter().map(|(_, m)| *m).max().unwrap();
    let mut pt: u128 = 1;
    while pt < max_mult as u128 {
        pt *= p;
    }
    if pt > 1 {
        primes.push(p);
    }
    bound = bound.checked_mul(pt)?;
    if bound > u64::MAX as u128 {
        return None;
    }
    primes.sort_unstable();
    primes.dedup();
    let mut order = bound as u64;
    for r in primes {
        let r = r as u64;
        while order.is_multiple_of(r) && x_pow_is_one(mu, order / r) {
            order /= r;
        }
    }
    Some(order)
}

fn lcm_u128(a: u128, b: u128) -> Option<u128> {
    (a / a.gcd(&b)).checked_mul(b)
}

/// Prime divisors by trial division below 10^6; a cofactor below 10^12 is
/// then prime. Larger composite-or-prime cofactors give `None`.
fn prime_factors(mut n: u128) -> Option<Vec<u128>> {
    const TRIAL: u128 = 1_000_000;
    let mut out = Vec::new();
    let mut d = 2;
    while d < TRIAL && d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        if n >= TRIAL * TRIAL {
            return None;
        }
        out.push(n);
    }
    Some(out)
}

fn check_scalar(g: &AlgElement, alpha: &Scalar) -> Result<()> {
    if g.algebra().field().contains(alpha) {
        Ok(())
    } else {
        Err(Error::FieldMismatch)
    }
}

/// `(g - alpha)^{-1} = (1 - alpha^m)^{-1} sum_{i<m} alpha^{m-1-i} g^i` for a
/// torsion element `g` of order `m`.
pub fn torsion_shift_inverse(g: &AlgElement, alpha: &Scalar, limits: &Limits) -> Result<AlgElement> {
    check_scalar(g, alpha)?;
    let mu = minimal_polynomial(g);
    let info = multiplicative_order(&mu, limits);
    let m = info.order.ok_or(Error::NotTorsion { bound: info.bound })?;
    torsion_shift_inverse_with_order(g, alpha, m)
}

/// Same as [`torsion_shift_inverse`] with a known order `m` (`g^m = 1`).
pub fn torsion_shift_inverse_with_order(g: &AlgElement, alpha: &Scalar, m: u64) -> Result<AlgElement> {
    check_scalar(g, alpha)?;
    let alg = g.algebra();
    let f = alg.field();
    debug_assert!(g.pow(m).is_one());
    let denom = f.sub(&f.one(), &f.pow(alpha, m));
    let scale = f.inv(&denom).ok_or(Error::ShiftNotUnit)?;
    let mut sum = alg.zero();
    let mut gi = alg.one();
    for i in 0..m {
        sum = sum.add(&gi.scale(&f.pow(alpha, m - 1 - i)))?;
        gi = gi.mul(g)?;
    }
    let inv = sum.scale(&scale);
    let shifted = g.shift(alpha);
    assert!(
        shifted.mul(&inv)?.is_one() && inv.mul(&shifted)?.is_one(),
        "closed-form shifted inverse failed verification"
    );
    Ok(inv)
}

/// The first `count` scalars `alpha` in shift order with `mu_g(alpha) != 0`,
/// i.e. with `g - alpha` a unit.
pub fn unit_shifts(g: &AlgElement, count: usize) -> Result<Vec<Scalar>> {
    let mu = minimal_polynomial(g);
    let f = g.algebra().field();
    let found: Vec<Scalar> = f
        .shift_candidates()
        .filter(|a| !f.is_zero(&mu.eval(a)))
        .take(count)
        .collect();
    if found.len() < count {
        return Err(Error::ExhaustedField {
            requested: count,
            found: found.len(),
        });
    }
    Ok(found)
}

/// One primary component `F[g] e_i` of `F[g]`.
#[derive(Debug, Clone)]
pub struct LocalComponent {
    /// Irreducible factor `p_i` of the minimal polynomial.
    pub factor: Poly,
    /// Exponent of `p_i` in the minimal polynomial.
    pub multiplicity: usize,
    pub idempotent: AlgElement,
    /// `F[g] e_i` as a subspace of the algebra.
    pub component: Subspace,
    /// `T e_i`, spanned by `p_i(g) g^j e_i`.
    pub radical: Subspace,
    pub radical_nilpotency: usize,
    /// `dim F[g]e_i - dim T e_i`.
    pub residue_degree: usize,
    /// The residue algebra is generated by the image of `g e_i` with
    /// minimal polynomial `p_i` and has dimension `deg p_i`.
    pub residue_is_field: bool,
}

#[derive(Debug, Clone)]
pub struct LocalDecomposition {
    pub minimal_polynomial: Poly,
    pub components: Vec<LocalComponent>,
}

impl LocalDecomposition {
    pub fn idempotents(&self) -> Vec<AlgElement> {
        self.components.iter().map(|c| c.idempotent.clone()).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "minimal_polynomial": self.minimal_polynomial.to_json(),
            "minimal_polynomial_text": self.minimal_polynomial.to_string(),
            "components": self.components.iter().map(|c| json!({
                "factor": c.factor.to_json(),
                "factor_text": c.factor.to_string(),
                "multiplicity": c.multiplicity,
                "idempotent": c.idempotent.to_json(),
                "idempotent_text": c.idempotent.to_string(),
                "component_dim": c.component.dim(),
                "radical": c.radical.to_json(),
                "radical_dim": c.radical.dim(),
                "radical_nilpotency": c.radical_nilpotency,
                "residue_degree": c.residue_degree,
                "residue_is_field": c.residue_is_field,
            })).collect::<Vec<_>>(),
        })
    }
}

fn eval_at(p: &Poly, g: &AlgElement) -> AlgElement {
    let alg = g.algebra();
    p.coeffs().iter().rev().fold(alg.zero(), |acc, c| {
        acc.mul(g).unwrap().add(&alg.scalar(c)).unwrap()
    })
}

/// Primary decomposition of `F[g]` along the factorization of `mu_g`, with
/// orthogonal idempotents from the Chinese remainder theorem.
pub fn local_decomposition(g: &AlgElement, limits: &Limits) -> Result<LocalDecomposition> {
    let alg = g.algebra();
    let mu = minimal_polynomial(g);
    let deg = mu.degree().unwrap();
    let factors = factor_poly_capped(&mu, limits.factor_degree_cap)?;
    let powers: Vec<AlgElement> = (0..deg).map(|j| g.pow(j as u64)).collect();
    let mut components = Vec::with_capacity(factors.len());
    for (p, e) in &factors {
        let primary = p.pow(*e as u64);
        let cofactor = mu.div_exact(&primary).expect("primary part divides mu");
        let s = cofactor.inverse_mod(&primary).expect("coprime primary parts");
        let ei_poly = cofactor.mul(&s).rem(&mu);
        let idempotent = eval_at(&ei_poly, g);
        let component = Subspace::from_elements(
            alg,
            &powers
                .iter()
                .map(|x| x.mul(&idempotent).unwrap())
                .collect::<Vec<_>>(),
        )?;
        let pe = eval_at(p, g).mul(&idempotent)?;
        let radical = Subspace::from_elements(
            alg,
            &powers.iter().map(|x| pe.mul(x).unwrap()).collect::<Vec<_>>(),
        )?;
        let radical_nilpotency = radical.nilpotency_index().unwrap_or(usize::MAX);
        let residue_degree = component.dim() - radical.dim();
        let residue_is_field = residue_field_check(g, &idempotent, &component, &radical, p)?;
        components.push(LocalComponent {
            factor: p.clone(),
            multiplicity: *e,
            idempotent,
            component,
            radical,
            radical_nilpotency,
            residue_degree,
            residue_is_field,
        });
    }
    Ok(LocalDecomposition {
        minimal_polynomial: mu,
        components,
    })
}

fn residue_field_check(
    g: &AlgElement,
    e: &AlgElement,
    component: &Subspace,
    radical: &Subspace,
    p: &Poly,
) -> Result<bool> {
    let comp_alg = component.as_algebra(e)?;
    let rad = Subspace::from_vectors(
        &comp_alg,
        radical
            .basis()
            .iter()
            .map(|v| component.coordinates_of(v))
            .collect(),
    );
    let residue = comp_alg.quotient(&rad)?;
    let ge = g.mul(e)?;
    let image = residue.project(&comp_alg.element(component.coordinates_of(ge.coords()))?)?;
    let mu = minimal_polynomial(&image);
    Ok(&mu == p && residue.algebra().dim() == p.degree().unwrap())
}

/// `(1 + x f)^{-1} = sum_{i<k} (-1)^i x^i f^i` for nilpotent `x` of index `k`
/// commuting with `f`.
pub fn unipotent_inverse(x: &AlgElement, f: &AlgElement) -> Result<AlgElement> {
    let mu = minimal_polynomial(x);
    if !is_power_of_x(&mu) {
        return Err(Error::NotNilpotent);
    }
    if !x.commutes_with(f)? {
        return Err(Error::NotCommuting);
    }
    let alg = x.algebra();
    let k = mu.degree().unwrap();
    let xf = x.mul(f)?;
    let mut sum = alg.zero();
    let mut term = alg.one();
    for _ in 0..k {
        sum = sum.add(&term)?;
        term = term.mul(&xf)?.neg();
    }
    let base = alg.one().add(&xf)?;
    assert!(
        base.mul(&sum)?.is_one() && sum.mul(&base)?.is_one(),
        "geometric-series inverse failed verification"
    );
    Ok(sum)
}
