mod common;

use common::*;

#[test]
fn radical_matches_quasi_regularity_oracle() {
    for (name, a) in finite_algebras() {
        if size(&a, 4096).is_none() {
            continue;
        }
        let units = rank_units(&a);
        let brute = brute_radical(&a, &units);
        let computed = subspace_elements(&a.jacobson_radical());
        assert_eq!(computed, brute, "{name}");
    }
}

#[test]
fn rank_unit_test_matches_inverse_search() {
    for (name, a) in finite_algebras() {
        if size(&a, 256).is_none() {
            continue;
        }
        assert_eq!(rank_units(&a), brute_units(&a), "{name}");
    }
}
