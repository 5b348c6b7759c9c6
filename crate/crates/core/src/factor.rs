//! Factorization of monic univariate polynomials.
//!
//! Finite fields: squarefree decomposition, distinct-degree splitting and
//! Cantor-Zassenhaus equal-degree splitting driven by a fixed-seed RNG.
//! Q: squarefree decomposition followed by a Kronecker search for integer
//! factors, with candidate degrees pruned by factorization patterns modulo
//! small primes. Q is capped at a configurable degree.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::poly::Poly;

pub const DEFAULT_FACTOR_DEGREE_CAP: usize = 12;

const EDF_SEED: u64 = 0x5eed_fc01;
/// Largest integer whose divisors the Kronecker search will enumerate.
const DIVISOR_LIMIT: u64 = 1_000_000_000_000;

/// Factor a monic polynomial into monic irreducibles with multiplicities,
/// sorted by (degree, coefficients lowest degree first).
pub fn factor_poly(f: &Poly) -> Result<Vec<(Poly, usize)>> {
    factor_poly_capped(f, DEFAULT_FACTOR_DEGREE_CAP)
}

pub fn factor_poly_capped(f: &Poly, rational_cap: usize) -> Result<Vec<(Poly, usize)>> {
    match f.degree() {
        None | Some(0) => return Err(Error::InvalidPolynomial("factorization needs degree >= 1".into())),
        _ => {}
    }
    if !f.is_monic() {
        return Err(Error::InvalidPolynomial("polynomial must be monic".into()));
    }
    let mut out = Vec::new();
    if f.field().is_finite() {
        let mut rng = ChaCha8Rng::seed_from_u64(EDF_SEED);
        for (part, mult) in squarefree(f) {
            for (g, d) in distinct_degree(&part) {
                for h in equal_degree(&g, d, &mut rng) {
                    out.push((h, mult));
                }
            }
        }
    } else {
        let n = f.degree().unwrap();
        if n > rational_cap {
            return Err(Error::UnsupportedFactorization {
                degree: n,
                cap: rational_cap,
            });
        }
        for (part, mult) in squarefree(f) {
            for h in factor_squarefree_rational(&part, rational_cap)? {
                out.push((h, mult));
            }
        }
    }
    out.sort_by(|(a, _), (b, _)| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| a.coeffs().cmp(b.coeffs()))
    });
    Ok(out)
}

/// Musser-style squarefree decomposition; handles p-th powers in
/// characteristic p. Returns monic squarefree parts with multiplicities.
fn squarefree(f: &Poly) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    let df = f.derivative();
    let mut c = f.gcd(&df);
    let mut w = f.div_exact(&c).expect("gcd divides");
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.div_exact(&y).expect("gcd divides");
        if !fac.is_one() {
            out.push((fac, i));
        }
        c = c.div_exact(&y).expect("gcd divides");
        w = y;
        i += 1;
    }
    if !c.is_one() {
        let p = f.field().characteristic() as usize;
        debug_assert!(p > 0, "leftover cofactor only occurs in positive characteristic");
        for (g, m) in squarefree(&pth_root(&c)) {
            out.push((g, m * p));
        }
    }
    out
}

fn pth_root(c: &Poly) -> Poly {
    let field = c.field();
    let p = field.characteristic() as usize;
    // Frobenius inverse on GF(p^k) is a -> a^(p^(k-1)).
    let e = (p as u64).pow(field.degree() - 1);
    let coeffs = c.coeffs().iter().step_by(p).map(|a| field.pow(a, e)).collect();
    Poly::new(field, coeffs)
}

fn distinct_degree(f: &Poly) -> Vec<(Poly, usize)> {
    let field = f.field();
    let q = BigUint::from(field.order().unwrap());
    let x = Poly::x(field);
    let mut rest = f.clone();
    let mut h = x.rem(&rest);
    let mut out = Vec::new();
    let mut d = 1;
    while rest.degree().unwrap_or(0) >= 2 * d {
        h = h.pow_mod(&q, &rest);
        let g = rest.gcd(&h.sub(&x));
        if !g.is_one() {
            rest = rest.div_exact(&g).unwrap();
            h = h.rem(&rest);
            out.push((g, d));
        }
        d += 1;
    }
    if let Some(n) = rest.degree() {
        if n > 0 {
            out.push((rest, n));
        }
    }
    out
}

fn random_poly(field: &Field, below: usize, rng: &mut ChaCha8Rng) -> Poly {
    let q = field.order().unwrap();
    Poly::new(
        field,
        (0..below)
            .map(|_| field.from_code(rng.random_range(0..q)))
            .collect(),
    )
}

fn equal_degree(f: &Poly, d: usize, rng: &mut ChaCha8Rng) -> Vec<Poly> {
    let n = f.degree().unwrap();
    if n == d {
        return vec![f.clone()];
    }
    let field = f.field();
    let q = field.order().unwrap();
    let p = field.characteristic();
    loop {
        let a = random_poly(field, n, rng);
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = if p == 2 {
            // Trace map a + a^2 + ... + a^(2^(kd-1)).
            let steps = field.degree() as usize * d;
            let two = BigUint::from(2u32);
            let mut t = a.rem(f);
            let mut acc = t.clone();
            for _ in 1..steps {
                t = t.pow_mod(&two, f);
                acc = acc.add(&t);
            }
            acc
        } else {
            let e = (BigUint::from(q).pow(d as u32) - 1u32) / 2u32;
            a.pow_mod(&e, f).sub(&Poly::one(field))
        };
        let g = f.gcd(&b);
        let gd = g.degree().unwrap_or(0);
        if gd > 0 && gd < n {
            let mut out = equal_degree(&g, d, rng);
            out.extend(equal_degree(&f.div_exact(&g).unwrap(), d, rng));
            return out;
        }
    }
}

// ---- Q ----

type IntPoly = Vec<BigInt>;

fn trim_int(p: &mut IntPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn primitive_part(f: &Poly) -> IntPoly {
    let mut den = BigInt::one();
    for c in f.coeffs() {
        if let Scalar::Rational(r) = c {
            den = den.lcm(r.denom());
        }
    }
    let mut out: IntPoly = f
        .coeffs()
        .iter()
        .map(|c| match c {
            Scalar::Rational(r) => (r * BigRational::from_integer(den.clone())).to_integer(),
            Scalar::Finite(_) => unreachable!(),
        })
        .collect();
    let g = out.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if !g.is_zero() {
        for c in out.iter_mut() {
            *c /= &g;
        }
    }
    if out.last().is_some_and(|c| c.is_negative()) {
        for c in out.iter_mut() {
            *c = -c.clone();
        }
    }
    out
}

fn int_to_monic(field: &Field, p: &IntPoly) -> Poly {
    Poly::new(
        field,
        p.iter()
            .map(|c| Scalar::Rational(BigRational::from_integer(c.clone())))
            .collect(),
    )
    .monic()
}

fn eval_int(p: &IntPoly, a: &BigInt) -> BigInt {
    p.iter().rev().fold(BigInt::zero(), |acc, c| acc * a + c)
}

/// Exact division in Z[x]; `None` unless the quotient is integral.
fn div_int(f: &IntPoly, d: &IntPoly) -> Option<IntPoly> {
    let dd = d.len() - 1;
    if f.len() < d.len() {
        return None;
    }
    let mut r = f.clone();
    let mut q = vec![BigInt::zero(); f.len() - dd];
    let lead = &d[dd];
    for i in (dd..r.len()).rev() {
        if r[i].is_zero() {
            continue;
        }
        let (c, rem) = r[i].div_rem(lead);
        if !rem.is_zero() {
            return None;
        }
        for (j, dc) in d.iter().enumerate() {
            r[i - dd + j] -= &c * dc;
        }
        q[i - dd] = c;
    }
    r.iter().all(|c| c.is_zero()).then_some(q)
}

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n == 0 || n > DIVISOR_LIMIT {
        return None;
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Some(small.into_iter().map(BigInt::from).collect())
}

const SMALL_PRIMES: [u64; 24] = [
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
];

/// Degrees a rational factor of `g` may have, from factorizations mod p.
fn admissible_degrees(g: &IntPoly) -> Vec<bool> {
    let n = g.len() - 1;
    let mut allowed = vec![true; n + 1];
    let mut used = 0;
    for &p in SMALL_PRIMES.iter() {
        if used == 5 {
            break;
        }
        let pb = BigInt::from(p);
        if (&g[n] % &pb).is_zero() {
            continue;
        }
        let field = Field::prime(p).expect("small prime");
        let coeffs = g
            .iter()
            .map(|c| Scalar::Finite(c.mod_floor(&pb).to_u32().unwrap()))
            .collect();
        let gp = Poly::new(&field, coeffs).monic();
        if !gp.gcd(&gp.derivative()).is_one() {
            continue;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(EDF_SEED);
        let mut sums = vec![false; n + 1];
        sums[0] = true;
        for (part, d) in distinct_degree(&gp) {
            for h in equal_degree(&part, d, &mut rng) {
                let hd = h.degree().unwrap();
                for s in (hd..=n).rev() {
                    if sums[s - hd] {
                        sums[s] = true;
                    }
                }
            }
        }
        for (a, s) in allowed.iter_mut().zip(sums) {
            *a &= s;
        }
        used += 1;
    }
    allowed
}

fn candidate_points(count: usize) -> Vec<BigInt> {
    let mut pts = vec![BigInt::zero()];
    let mut k = 1i64;
    while pts.len() < count {
        pts.push(BigInt::from(k));
        pts.push(BigInt::from(-k));
        k += 1;
    }
    pts.truncate(count);
    pts
}

fn factor_squarefree_rational(g: &Poly, cap: usize) -> Result<Vec<Poly>> {
    let field = g.field().clone();
    let mut pending = vec![primitive_part(g)];
    let mut out = Vec::new();
    while let Some(mut h) = pending.pop() {
        trim_int(&mut h);
        let n = h.len() - 1;
        if n == 0 {
            continue;
        }
        if n == 1 {
            out.push(int_to_monic(&field, &h));
            continue;
        }
        match kronecker_split(&h, cap)? {
            None => out.push(int_to_monic(&field, &h)),
            Some((a, b)) => {
                pending.push(a);
                pending.push(b);
            }
        }
    }
    Ok(out)
}

/// Find a nontrivial factor of smallest degree, returning (factor, cofactor).
fn kronecker_split(g: &IntPoly, cap: usize) -> Result<Option<(IntPoly, IntPoly)>> {
    let n = g.len() - 1;
    let unsupported = || Error::UnsupportedFactorization { degree: n, cap };
    // Integer roots show up as zero values and split off immediately.
    let window = candidate_points(4 * n + 8);
    let mut values = Vec::with_capacity(window.len());
    for a in &window {
        let v = eval_int(g, a);
        if v.is_zero() {
            let lin = vec![-a.clone(), BigInt::one()];
            let rest = div_int(g, &lin).expect("integer root divides");
            return Ok(Some((lin, rest)));
        }
        values.push(v);
    }
    let allowed = admissible_degrees(g);
    for d in 1..=n / 2 {
        if !allowed[d] {
            continue;
        }
        // Prefer nodes whose values have few divisors.
        let mut ranked: Vec<(usize, usize)> = Vec::new();
        for (i, v) in values.iter().enumerate() {
            if let Some(divs) = divisors(v) {
                ranked.push((divs.len(), i));
            }
        }
        if ranked.len() < d + 1 {
            return Err(unsupported());
        }
        ranked.sort();
        let chosen: Vec<usize> = ranked[..=d].iter().map(|&(_, i)| i).collect();
        let checks: Vec<usize> = ranked[d + 1..].iter().take(6).map(|&(_, i)| i).collect();
        let nodes: Vec<BigInt> = chosen.iter().map(|&i| window[i].clone()).collect();
        let options: Vec<Vec<BigInt>> = chosen
            .iter()
            .enumerate()
            .map(|(k, &i)| {
                let divs = divisors(&values[i]).unwrap();
                if k == 0 {
                    divs
                } else {
                    divs.iter().flat_map(|x| [x.clone(), -x.clone()]).collect()
                }
            })
            .collect();
        let mut search = KroneckerSearch {
            g,
            d,
            nodes: &nodes,
            options: &options,
            checks: checks
                .iter()
                .map(|&i| (window[i].clone(), values[i].clone()))
                .collect(),
            table: Vec::new(),
        };
        if let Some(h) = search.run(0) {
            let rest = div_int(g, &h).expect("verified divisor");
            return Ok(Some((h, rest)));
        }
    }
    Ok(None)
}

struct KroneckerSearch<'a> {
    g: &'a IntPoly,
    d: usize,
    nodes: &'a [BigInt],
    options: &'a [Vec<BigInt>],
    checks: Vec<(BigInt, BigInt)>,
    /// Divided-difference diagonals; entry j holds [h[x_j], h[x_{j-1},x_j], ...].
    table: Vec<Vec<BigInt>>,
}

impl KroneckerSearch<'_> {
    fn run(&mut self, level: usize) -> Option<IntPoly> {
        if level == self.d + 1 {
            return self.finish();
        }
        for v in self.options[level].clone() {
            // Divided differences of an integer polynomial at integer nodes
            // are integers, which prunes most branches early.
            let mut diag = vec![v];
            let mut ok = true;
            for m in 1..=level {
                let num = &diag[m - 1] - &self.table[level - 1][m - 1];
                let den = &self.nodes[level] - &self.nodes[level - m];
                let (q, r) = num.div_rem(&den);
                if !r.is_zero() {
                    ok = false;
                    break;
                }
                diag.push(q);
            }
            if !ok {
                continue;
            }
            self.table.push(diag);
            if let Some(h) = self.run(level + 1) {
                return Some(h);
            }
            self.table.pop();
        }
        None
    }

    fn finish(&self) -> Option<IntPoly> {
        let d = self.d;
        let lead = &self.table[d][d];
        if lead.is_zero() || !(&self.g[self.g.len() - 1] % lead).is_zero() {
            return None;
        }
        // Newton form to monomial basis.
        let mut h: IntPoly = vec![self.table[d][d].clone()];
        for m in (0..d).rev() {
            let mut next = vec![BigInt::zero(); h.len() + 1];
            for (i, c) in h.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= c * &self.nodes[m];
            }
            next[0] += &self.table[m][m];
            h = next;
        }
        trim_int(&mut h);
        if h.len() != d + 1 {
            return None;
        }
        for (b, gb) in &self.checks {
            let hb = eval_int(&h, b);
            if hb.is_zero() || !(gb % &hb).is_zero() {
                return None;
            }
        }
        div_int(self.g, &h).map(|_| h)
    }
}
