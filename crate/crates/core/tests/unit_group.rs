mod common;

use common::*;
use fcalg::limits::Limits;
use fcalg::units::{
    enumerate_units, fc_report, gated_conclusions, omega_annihilator_count, series_report, OmegaForm,
};
use fcalg::Error;

fn lim() -> Limits {
    Limits::default()
}

#[test]
fn enumeration_examples() {
    let f2 = gf(2);
    let u = enumerate_units(&group_alg(&f2, "C2"), &lim()).unwrap();
    assert_eq!(u.order(), 2);
    assert_eq!(enumerate_units(&mat(&f2, 2), &lim()).unwrap().order(), 6);
    let t = tri(&f2, 2);
    let u = enumerate_units(&t, &lim()).unwrap();
    assert_eq!(u.order(), 2);
    assert!(u.index_of(&el(&t, &[1, 1, 1])).is_some());
    assert_eq!(
        enumerate_units(&mat(&q(), 2), &lim()).unwrap_err(),
        Error::RequiresFiniteField
    );
    let small = Limits {
        enumeration_cap: 8,
        ..lim()
    };
    assert_eq!(
        enumerate_units(&mat(&f2, 2), &small).unwrap_err(),
        Error::EnumerationTooLarge { required: 16, cap: 8 }
    );
}

#[test]
fn enumeration_matches_inverse_search() {
    for (name, a) in finite_algebras() {
        if size(&a, 512).is_none() {
            continue;
        }
        let u = enumerate_units(&a, &lim()).unwrap();
        let brute = brute_units(&a);
        assert_eq!(u.order(), brute.iter().filter(|&&b| b).count(), "{name}");
        for x in u.elements() {
            assert!(brute[code_of(&a, x.coords()) as usize], "{name}");
        }
    }
}

#[test]
fn conjugacy_examples() {
    let f2 = gf(2);
    let m = mat(&f2, 2);
    let u = enumerate_units(&m, &lim()).unwrap();
    let data = u.conjugacy_data();
    let mut sizes = data.class_sizes();
    sizes.sort_unstable();
    assert_eq!(sizes, vec![1, 2, 3]);
    let c3 = u.index_of(&el(&m, &[0, 1, 1, 1])).unwrap();
    assert_eq!(u.element_order(c3), 3);
    assert_eq!(data.centralizer_orders[c3], 3);
    assert_eq!(data.index(c3), 2);

    let ab = enumerate_units(&group_alg(&f2, "C2"), &lim()).unwrap();
    assert!(ab.conjugacy_data().classes.iter().all(|c| c.len() == 1));
}

#[test]
fn class_representatives_are_least() {
    let u = enumerate_units(&group_alg(&gf(3), "S3"), &lim()).unwrap();
    for class in &u.conjugacy_data().classes {
        assert_eq!(class[0], *class.iter().min().unwrap());
    }
}

#[test]
fn fc_report_examples() {
    let m = mat(&gf(2), 2);
    let u = enumerate_units(&m, &lim()).unwrap();
    let r = fc_report(&u, &lim()).unwrap();
    assert!(r.delta_equals_u() && r.nabla_equals_r());
    assert!(r.class_equation_holds && r.torsion_is_subgroup && r.quotient_is_abelian);
    assert_eq!(r.torsion.len(), 6);
    for a in 0..u.order() {
        let expected = match u.element_order(a) {
            1 => 1,
            2 => 3,
            3 => 2,
            o => panic!("unexpected order {o}"),
        };
        assert_eq!(r.unit_indices[a], expected);
    }
    assert_eq!(r.nabla_size, 16);
}

#[test]
fn series_examples() {
    let f2 = gf(2);
    let u = enumerate_units(&group_alg(&f2, "C2"), &lim()).unwrap();
    let s = series_report(&u, &lim());
    assert_eq!((s.derived_length, s.nilpotency_class), (Some(1), Some(1)));

    let u = enumerate_units(&mat(&f2, 2), &lim()).unwrap();
    let s = series_report(&u, &lim());
    assert_eq!(s.derived_length, Some(2));
    assert_eq!(s.nilpotency_class, None);
    assert_eq!(
        s.derived_series.iter().map(Vec::len).collect::<Vec<_>>(),
        vec![6, 3, 1]
    );

    let t = tri(&gf(3), 2);
    let u = enumerate_units(&t, &lim()).unwrap();
    let s = series_report(&u, &lim());
    assert_eq!(s.commutator_subgroup.len(), 3);
    assert!(s.commutator_all_unipotent());
    for &i in &s.commutator_subgroup {
        let c = u.element(i).coords();
        assert!(c[0] == t.field().one() && c[2] == t.field().one());
    }
}

#[test]
fn commutator_subgroup_two_ways() {
    for (name, a) in finite_algebras() {
        let u = enumerate_units(&a, &lim()).unwrap();
        assert_eq!(
            u.commutator_subgroup(),
            u.commutator_subgroup_bruteforce(),
            "{name}"
        );
    }
}

#[test]
fn triangular_commutators_are_unipotent() {
    for a in [
        tri(&gf(2), 2),
        tri(&gf(3), 2),
        tri(&gf(2), 3),
        tri(&gf(5), 2),
        tri(&gf4(), 2),
    ] {
        let u = enumerate_units(&a, &lim()).unwrap();
        assert!(series_report(&u, &lim()).commutator_all_unipotent());
    }
}

#[test]
fn omega_examples() {
    let t = tri(&gf(2), 2);
    let u = enumerate_units(&t, &lim()).unwrap();
    let z = label(&t, "E11").lie(&label(&t, "E12")).unwrap();
    assert_eq!(z, label(&t, "E12"));
    let c = omega_annihilator_count(u.elements(), &z, OmegaForm::OneMinusH).unwrap();
    assert_eq!(c.count(), 2);
    assert!(c.counts_agree() && c.includes_identity);

    let c = omega_annihilator_count(u.elements(), &t.one(), OmegaForm::OneMinusH).unwrap();
    assert_eq!(c.count(), 1);
    assert_eq!(
        omega_annihilator_count(u.elements(), &t.zero(), OmegaForm::OneMinusH).unwrap_err(),
        Error::ZeroCommutator
    );
}

#[test]
fn conclusions_are_gated() {
    let f2 = gf(2);
    let u = enumerate_units(&group_alg(&f2, "C2"), &lim()).unwrap();
    let r = gated_conclusions(&u, &series_report(&u, &lim()));
    assert!(r.hypothesis.starts_with("unsatisfiable"));
    assert!(r.conclusion("3a").unwrap().holds);

    let u = enumerate_units(&mat(&f2, 2), &lim()).unwrap();
    let r = gated_conclusions(&u, &series_report(&u, &lim()));
    assert!(!r.conclusion("3b").unwrap().holds);

    let u = enumerate_units(&tri(&gf(3), 2), &lim()).unwrap();
    let r = gated_conclusions(&u, &series_report(&u, &lim()));
    assert!(r.conclusion("1a").unwrap().holds);
    assert!(!r.conclusion("1b").unwrap().holds);
}
