use fcalg::factor::factor_poly;
use fcalg::{eval_poly, Field, FieldScalar, Poly, Scalar};
use proptest::prelude::*;

fn fields() -> Vec<Field> {
    vec![
        Field::rationals(),
        Field::prime(2).unwrap(),
        Field::prime(3).unwrap(),
        Field::prime(7).unwrap(),
        Field::extension(2, &[1, 1, 1]).unwrap(),
        Field::extension(3, &[2, 2, 1]).unwrap(),
    ]
}

fn scalar(f: &Field, num: i64, den: i64, code: u64) -> Scalar {
    match f.order() {
        Some(q) => f.from_code(code % q),
        None => f.div(&f.from_int(num), &f.from_int(den)).unwrap(),
    }
}

fn poly(f: &Field, coeffs: &[(i64, i64, u64)]) -> Poly {
    Poly::new(f, coeffs.iter().map(|&(n, d, c)| scalar(f, n, d, c)).collect())
}

fn coeff_strategy(len: std::ops::Range<usize>) -> impl Strategy<Value = Vec<(i64, i64, u64)>> {
    prop::collection::vec((-20i64..20, 1i64..7, 0u64..1000), len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn nonzero_scalars_invert(which in 0usize..6, num in -1000i64..1000, den in 1i64..1000, code in 0u64..10_000) {
        let f = &fields()[which];
        let a = scalar(f, num, den, code);
        prop_assume!(!f.is_zero(&a));
        let inv = f.inv(&a).unwrap();
        prop_assert!(f.is_one(&f.mul(&a, &inv)));
    }
}

proptest! {
    #[test]
    fn factor_product_reproduces_input(p in prop::sample::select(vec![2u64, 3, 5, 7]), coeffs in prop::collection::vec(0u64..7, 1..9)) {
        let f = Field::prime(p).unwrap();
        let mut c: Vec<Scalar> = coeffs.iter().map(|&x| f.from_code(x % p)).collect();
        c.push(f.one());
        let input = Poly::new(&f, c);
        let factors = factor_poly(&input).unwrap();
        let product = factors
            .iter()
            .fold(Poly::one(&f), |acc, (q, m)| acc.mul(&q.pow(*m as u64)));
        prop_assert_eq!(product, input);
        for (q, m) in &factors {
            prop_assert!(q.is_monic() && *m >= 1);
            prop_assert!(q.is_irreducible_finite());
        }
    }

    #[test]
    fn evaluation_is_multiplicative(which in 0usize..6, fc in coeff_strategy(0..6), gc in coeff_strategy(0..6), at in (-9i64..9, 1i64..5, 0u64..100)) {
        let field = &fields()[which];
        let f = poly(field, &fc);
        let g = poly(field, &gc);
        let alpha = FieldScalar::new(field, scalar(field, at.0, at.1, at.2));
        let lhs = eval_poly(&f.mul(&g), &alpha).unwrap();
        let rhs = &eval_poly(&f, &alpha).unwrap() * &eval_poly(&g, &alpha).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
