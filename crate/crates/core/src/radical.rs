//! Jacobson radical.
//!
//! Characteristic zero uses the kernel of the trace form of the left
//! regular representation. Positive characteristic restricts scalars to the
//! prime field and runs the iterated-trace refinement
//! `I_i = {x in I_{i-1} : g_i(xy) = 0 for all y}`, where
//! `g_i(x) = (Tr(L~_x^(p^i)) mod p^(i+1)) / p^i` for an integer lift `L~_x`,
//! stopping at `i = floor(log_p N)`.

use crate::algebra::{Algebra, Subspace};
use crate::field::{Field, Scalar};
use crate::linalg::{self, Matrix};

impl Algebra {
    pub fn jacobson_radical(&self) -> Subspace {
        if self.field().is_finite() {
            radical_positive_char(self)
        } else {
            radical_char_zero(self)
        }
    }
}

pub fn jacobson_radical(alg: &Algebra) -> Subspace {
    alg.jacobson_radical()
}

fn radical_char_zero(alg: &Algebra) -> Subspace {
    let f = alg.field();
    let n = alg.dim();
    let traces: Vec<Scalar> = (0..n).map(|k| alg.trace_of_left(&alg.basis_coords(k))).collect();
    // Gram matrix of (x, y) -> Tr(L_{xy}); it is symmetric in the sense that
    // Tr(L_{xy}) = Tr(L_{yx}), so the left kernel equals the right kernel.
    let gram: Matrix = (0..n)
        .map(|j| {
            (0..n)
                .map(|i| {
                    alg.product_terms(i, j)
                        .iter()
                        .fold(f.zero(), |acc, (k, c)| f.add(&acc, &f.mul(c, &traces[*k])))
                })
                .collect()
        })
        .collect();
    Subspace::from_vectors(alg, linalg::nullspace(f, &gram, n))
}

/// The algebra viewed over GF(p): coordinates are the base-p digits of each
/// GF(q) coordinate, position `i * k + d` holding digit `d` of coordinate `i`.
struct PrimeRestriction<'a> {
    alg: &'a Algebra,
    k: usize,
    p: u64,
    theta_powers: Vec<Scalar>,
}

impl<'a> PrimeRestriction<'a> {
    fn new(alg: &'a Algebra) -> Self {
        let f = alg.field();
        let k = f.degree() as usize;
        let p = f.characteristic();
        let theta = if k == 1 { f.one() } else { f.from_code(p) };
        let theta_powers = (0..k as u64).map(|d| f.pow(&theta, d)).collect();
        PrimeRestriction {
            alg,
            k,
            p,
            theta_powers,
        }
    }

    fn dim(&self) -> usize {
        self.alg.dim() * self.k
    }

    fn flatten(&self, v: &[Scalar]) -> Vec<u64> {
        let f = self.alg.field();
        v.iter().flat_map(|c| f.digits(c)).collect()
    }

    fn unflatten(&self, v: &[u64]) -> Vec<Scalar> {
        let f = self.alg.field();
        v.chunks(self.k).map(|d| f.from_digits(d)).collect()
    }

    /// Prime-field basis element at flat position `i * k + d`: `theta^d b_i`.
    fn basis(&self, pos: usize) -> Vec<Scalar> {
        let f = self.alg.field();
        let mut v = vec![f.zero(); self.alg.dim()];
        v[pos / self.k] = self.theta_powers[pos % self.k].clone();
        v
    }

    /// Integer lift of the GF(p) left regular matrix of `x`.
    #[allow(clippy::needless_range_loop)]
    fn left_matrix(&self, x: &[Scalar]) -> Vec<Vec<u64>> {
        let n = self.dim();
        let mut m = vec![vec![0u64; n]; n];
        for col in 0..n {
            let img = self.flatten(&self.alg.mul_coords(x, &self.basis(col)));
            for (row, v) in img.into_iter().enumerate() {
                m[row][col] = v;
            }
        }
        m
    }
}

fn mat_mul_mod(a: &[Vec<u64>], b: &[Vec<u64>], m: u64) -> Vec<Vec<u64>> {
    let n = a.len();
    let mut out = vec![vec![0u64; n]; n];
    for i in 0..n {
        for (l, &ail) in a[i].iter().enumerate() {
            if ail == 0 {
                continue;
            }
            for j in 0..n {
                let prod = (ail as u128 * b[l][j] as u128) % m as u128;
                out[i][j] = ((out[i][j] as u128 + prod) % m as u128) as u64;
            }
        }
    }
    out
}

fn trace_of_power_mod(a: &[Vec<u64>], mut e: u64, m: u64) -> u64 {
    let n = a.len();
    let mut base: Vec<Vec<u64>> = a.iter().map(|r| r.iter().map(|x| x % m).collect()).collect();
    let mut acc: Vec<Vec<u64>> = (0..n)
        .map(|i| (0..n).map(|j| u64::from(i == j) % m).collect())
        .collect();
    while e > 0 {
        if e & 1 == 1 {
            acc = mat_mul_mod(&acc, &base, m);
        }
        e >>= 1;
        if e > 0 {
            base = mat_mul_mod(&base, &base, m);
        }
    }
    (0..n).fold(0u64, |t, i| ((t as u128 + acc[i][i] as u128) % m as u128) as u64)
}

fn radical_positive_char(alg: &Algebra) -> Subspace {
    let res = PrimeRestriction::new(alg);
    let p = res.p;
    let big_n = res.dim();
    let gfp = Field::prime(p).expect("characteristic is prime");
    let mut levels = 0u32;
    while (p as u128).pow(levels + 1) <= big_n as u128 {
        levels += 1;
    }
    let basis_ops: Vec<Vec<Scalar>> = (0..big_n).map(|c| res.basis(c)).collect();
    // Current ideal over GF(p), as flat digit vectors.
    let mut ideal: Vec<Vec<u64>> = (0..big_n)
        .map(|i| (0..big_n).map(|j| u64::from(i == j)).collect())
        .collect();
    for i in 0..=levels {
        if ideal.is_empty() {
            break;
        }
        let pi = p.pow(i);
        let modulus = pi * p;
        // eqs[t][s] = g_i(v_s * y_t); the map is GF(p)-linear on I_{i-1}.
        let mut eqs: Matrix = vec![Vec::with_capacity(ideal.len()); big_n];
        for v in &ideal {
            let vq = res.unflatten(v);
            for (t, y) in basis_ops.iter().enumerate() {
                let prod = alg.mul_coords(&vq, y);
                let lm = res.left_matrix(&prod);
                let tr = trace_of_power_mod(&lm, pi, modulus);
                eqs[t].push(gfp.from_int((tr / pi) as i64));
            }
        }
        let ker = linalg::nullspace(&gfp, &eqs, ideal.len());
        ideal = ker
            .iter()
            .map(|a| {
                let mut x = vec![0u64; big_n];
                for (ai, v) in a.iter().zip(&ideal) {
                    let c = gfp.code(ai);
                    if c == 0 {
                        continue;
                    }
                    for (xi, vi) in x.iter_mut().zip(v) {
                        *xi = (*xi + c * vi) % p;
                    }
                }
                x
            })
            .collect();
    }
    let vectors = ideal.iter().map(|v| res.unflatten(v)).collect();
    let j = Subspace::from_vectors(alg, vectors);
    debug_assert_eq!(j.dim() * res.k, ideal.len());
    j
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf2_c2() -> Algebra {
        let f = Field::prime(2).unwrap();
        let c = |v: [i64; 2]| v.iter().map(|&x| f.from_int(x)).collect::<Vec<_>>();
        Algebra::new(
            &f,
            &[vec![c([1, 0]), c([0, 1])], vec![c([0, 1]), c([1, 0])]],
            c([1, 0]),
            Some(vec!["1".into(), "g".into()]),
        )
        .unwrap()
    }

    #[test]
    fn radical_of_gf2_c2() {
        let a = gf2_c2();
        let j = a.jacobson_radical();
        assert_eq!(j.dim(), 1);
        assert!(j.contains(&a.element_from_ints(&[1, 1]).unwrap()));
    }

    #[test]
    fn trace_power_small() {
        let m = vec![vec![1, 1], vec![0, 1]];
        assert_eq!(trace_of_power_mod(&m, 4, 8), 2);
    }
}
