//! Acceptance suite: one PASS/FAIL line per criterion, tolerances pinned
//! below. Every comparison is exact; the only tolerances are sample sizes
//! and time budgets.

mod common;

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use common::*;
use fcalg::algebra::{AlgElement, Algebra, Subspace};
use fcalg::constructors::{twisted_group_algebra, Cocycle};
use fcalg::description::load_description;
use fcalg::element::{classify, local_decomposition, minimal_polynomial, torsion_shift_inverse};
use fcalg::groups::FiniteGroupTable;
use fcalg::limits::Limits;
use fcalg::sandwich::{conjugate_witnesses, default_unit_sample, nabla_sandwich, SandwichStatus};
use fcalg::units::{enumerate_units, fc_report, omega_annihilator_count, series_report, OmegaForm};
use fcalg::Scalar;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TIME_BUDGET: Duration = Duration::from_secs(60);
const MAX_TORSION_ORDER: u64 = 12;
const SHIFTS_PER_UNIT: usize = 10;
const WITNESS_PAIRS: usize = 100;
const WITNESS_SHIFTS: usize = 10;
const RADICAL_ORACLE_SIZE: u64 = 4096;
const DECOMPOSITION_SAMPLES: usize = 200;
const SEED: u64 = 0x5eed;

struct Outcome {
    ok: bool,
    detail: String,
}

fn pass(detail: String) -> Outcome {
    Outcome { ok: true, detail }
}

fn check(failures: &[String], detail: String) -> Outcome {
    if failures.is_empty() {
        pass(detail)
    } else {
        Outcome {
            ok: false,
            detail: format!("{detail}; {} failures, first: {}", failures.len(), failures[0]),
        }
    }
}

fn lim() -> Limits {
    Limits::default()
}

fn random_element(a: &Algebra, rng: &mut ChaCha8Rng, span: i64) -> AlgElement {
    let f = a.field();
    let coords = (0..a.dim())
        .map(|_| match f.order() {
            Some(q) => f.from_code(rng.random_range(0..q)),
            None => f.from_int(rng.random_range(-span..=span)),
        })
        .collect();
    a.element(coords).unwrap()
}

fn twisted_q_c2() -> Algebra {
    let qq = q();
    let g = FiniteGroupTable::cyclic(2).unwrap();
    let lam = Cocycle::new(
        &qq,
        &g,
        vec![vec![qq.one(), qq.one()], vec![qq.one(), qq.from_int(-1)]],
    )
    .unwrap();
    twisted_group_algebra(&qq, &g, &lam).unwrap().algebra
}

fn rational_algebras() -> Vec<(&'static str, Algebra)> {
    let qq = q();
    vec![
        ("M2(Q)", mat(&qq, 2)),
        ("T2(Q)", tri(&qq, 2)),
        ("Q[C2]", group_alg(&qq, "C2")),
        ("Q[C3]", group_alg(&qq, "C3")),
        ("Q[S3]", group_alg(&qq, "S3")),
        ("Q[C2]^tw", twisted_q_c2()),
    ]
}

/// `(g - alpha) * inv == 1 == inv * (g - alpha)` for up to `SHIFTS_PER_UNIT`
/// shifts with `alpha^m != 1`.
fn check_shift_inverses(g: &AlgElement, m: u64, failures: &mut Vec<String>) -> usize {
    let f = g.algebra().field();
    let shifts: Vec<Scalar> = f
        .shift_candidates()
        .filter(|a| !f.is_one(&f.pow(a, m)))
        .take(SHIFTS_PER_UNIT)
        .collect();
    for alpha in &shifts {
        let u = g.shift(alpha);
        match torsion_shift_inverse(g, alpha, &lim()) {
            Ok(inv) => {
                if !u.mul(&inv).unwrap().is_one() || !inv.mul(&u).unwrap().is_one() {
                    failures.push(format!("{g} shifted by {}", f.format(alpha)));
                }
            }
            Err(e) => failures.push(format!("{g} shifted by {}: {e}", f.format(alpha))),
        }
    }
    shifts.len()
}

fn criterion_1() -> Outcome {
    let mut failures = Vec::new();
    let (mut units, mut checks) = (0usize, 0usize);
    for (name, a) in finite_algebras() {
        let u = enumerate_units(&a, &lim()).unwrap();
        for (i, g) in u.elements().iter().enumerate() {
            let Some(m) = classify(g, &lim()).torsion_order() else {
                failures.push(format!("{name}: unit {g} has no torsion order"));
                continue;
            };
            if m != u.element_order(i) as u64 {
                failures.push(format!(
                    "{name}: order of {g} is {m}, group says {}",
                    u.element_order(i)
                ));
            }
            if m <= MAX_TORSION_ORDER {
                units += 1;
                checks += check_shift_inverses(g, m, &mut failures);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for (name, a) in rational_algebras() {
        let mut found = BTreeSet::new();
        let mut candidates: Vec<AlgElement> = a.basis_elements();
        candidates.extend(a.basis_elements().iter().map(AlgElement::neg));
        candidates.extend((0..400).map(|_| random_element(&a, &mut rng, 1)));
        for g in candidates {
            let Some(m) = classify(&g, &lim()).torsion_order() else {
                continue;
            };
            if m > MAX_TORSION_ORDER || !found.insert(format!("{g:?}")) {
                continue;
            }
            if !g.pow(m).is_one() {
                failures.push(format!("{name}: {g}^{m} != 1"));
            }
            units += 1;
            checks += check_shift_inverses(&g, m, &mut failures);
        }
    }
    check(
        &failures,
        format!("{units} torsion units, {checks} shift inverses verified"),
    )
}

fn criterion_2() -> Outcome {
    let qq = q();
    let algs = [mat(&qq, 2), tri(&qq, 2), group_alg(&qq, "S3")];
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 2);
    let mut failures = Vec::new();
    let mut inequalities = 0;
    let mut pairs = 0;
    while pairs < WITNESS_PAIRS {
        let a_alg = &algs[pairs % algs.len()];
        let a = random_element(a_alg, &mut rng, 3);
        let g = random_element(a_alg, &mut rng, 3);
        if a.lie(&g).unwrap().is_zero() {
            continue;
        }
        pairs += 1;
        let w = match conjugate_witnesses(&a, &g, WITNESS_SHIFTS, None) {
            Ok(w) => w,
            Err(e) => {
                failures.push(format!("({a}, {g}): {e}"));
                continue;
            }
        };
        if w.conjugates.len() != WITNESS_SHIFTS {
            failures.push(format!("({a}, {g}): {} conjugates", w.conjugates.len()));
        }
        for (alpha, c) in w.shifts.iter().zip(&w.conjugates) {
            let u = g.shift(alpha);
            if u.mul(c).unwrap() != a.mul(&u).unwrap() {
                failures.push(format!(
                    "({a}, {g}): conjugate by shift {} is wrong",
                    qq.format(alpha)
                ));
            }
        }
        for i in 0..w.conjugates.len() {
            for j in i + 1..w.conjugates.len() {
                inequalities += 1;
                if w.conjugates[i] == w.conjugates[j] {
                    failures.push(format!("({a}, {g}): conjugates {i} and {j} coincide"));
                }
            }
        }
    }
    check(
        &failures,
        format!("{pairs} pairs, {inequalities} pairwise inequalities"),
    )
}

fn nilpotent_power_is_zero(j: &Subspace, exponent: usize) -> bool {
    let mut p = j.clone();
    for _ in 1..exponent.max(1) {
        p = p.product(j);
    }
    p.is_zero()
}

fn criterion_3() -> Outcome {
    let mut failures = Vec::new();
    let mut tested = 0;
    for (name, a) in finite_algebras() {
        if size(&a, RADICAL_ORACLE_SIZE).is_none() {
            continue;
        }
        tested += 1;
        let j = a.jacobson_radical();
        if subspace_elements(&j) != brute_radical(&a, &rank_units(&a)) {
            failures.push(format!("{name}: radical differs from the oracle"));
        }
        if !nilpotent_power_is_zero(&j, a.dim()) {
            failures.push(format!("{name}: J^dim != 0"));
        }
        let quotient = a.quotient(&j).unwrap();
        if !quotient.algebra().jacobson_radical().is_zero() {
            failures.push(format!("{name}: J(A/J) != 0"));
        }
    }
    for (a, want) in [
        (group_alg(&gf(2), "C2"), 1),
        (mat(&gf(2), 2), 0),
        (tri(&gf(3), 2), 1),
    ] {
        let got = a.jacobson_radical().dim();
        if got != want {
            failures.push(format!("anchor: dim J = {got}, expected {want}"));
        }
    }
    check(
        &failures,
        format!("{tested} algebras against the oracle, 3 anchors"),
    )
}

fn eval_at(p: &fcalg::Poly, g: &AlgElement) -> AlgElement {
    let a = g.algebra();
    p.coeffs()
        .iter()
        .rev()
        .fold(a.zero(), |acc, c| acc.mul(g).unwrap().add(&a.scalar(c)).unwrap())
}

fn criterion_4() -> Outcome {
    let qq = q();
    let algs = [
        mat(&qq, 2),
        tri(&qq, 3),
        group_alg(&qq, "S3"),
        group_alg(&qq, "C3"),
        mat(&gf(3), 2),
        group_alg(&gf(2), "S3"),
        group_alg(&gf4(), "C3"),
        tri(&gf(2), 3),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 4);
    let mut failures = Vec::new();
    let mut components = 0;
    for k in 0..DECOMPOSITION_SAMPLES {
        let a = &algs[k % algs.len()];
        let g = random_element(a, &mut rng, 2);
        let d = match local_decomposition(&g, &lim()) {
            Ok(d) => d,
            Err(e) => {
                failures.push(format!("{g}: {e}"));
                continue;
            }
        };
        let es = d.idempotents();
        components += es.len();
        let total = es.iter().fold(a.zero(), |acc, e| acc.add(e).unwrap());
        if !total.is_one() {
            failures.push(format!("{g}: idempotents sum to {total}"));
        }
        for (i, ei) in es.iter().enumerate() {
            if ei.mul(ei).unwrap() != *ei || ei.is_zero() {
                failures.push(format!("{g}: e{i} is not a nonzero idempotent"));
            }
            if !ei.commutes_with(&g).unwrap() {
                failures.push(format!("{g}: e{i} does not commute with g"));
            }
            for (j, ej) in es.iter().enumerate() {
                if i != j && !ei.mul(ej).unwrap().is_zero() {
                    failures.push(format!("{g}: e{i} e{j} != 0"));
                }
            }
        }
        for c in &d.components {
            let pe = eval_at(&c.factor, &g).mul(&c.idempotent).unwrap();
            if !pe.pow(c.multiplicity as u64).is_zero() {
                failures.push(format!(
                    "{g}: p(g)e is not nilpotent of index <= {}",
                    c.multiplicity
                ));
            }
            if !nilpotent_power_is_zero(&c.radical, c.multiplicity) {
                failures.push(format!("{g}: component radical is not nilpotent"));
            }
            if !c.residue_is_field || c.residue_degree != c.factor.degree().unwrap() {
                failures.push(format!(
                    "{g}: residue of factor {} is not a field of degree deg p",
                    c.factor
                ));
            }
            if c.component.dim() != c.factor.degree().unwrap() * c.multiplicity {
                failures.push(format!("{g}: component dimension mismatch"));
            }
        }
        let mu = minimal_polynomial(&g);
        let prod = d.components.iter().fold(fcalg::Poly::one(a.field()), |acc, c| {
            acc.mul(&c.factor.pow(c.multiplicity as u64))
        });
        if prod != mu {
            failures.push(format!("{g}: factors do not multiply back to mu"));
        }
    }
    check(
        &failures,
        format!("{DECOMPOSITION_SAMPLES} elements, {components} components"),
    )
}

fn criterion_5() -> Outcome {
    let f2 = gf(2);
    let mut failures = Vec::new();
    let n = enumerate_units(&group_alg(&f2, "C2"), &lim()).unwrap().order();
    if n != 2 {
        failures.push(format!("|U(F2[C2])| = {n}"));
    }
    let u = enumerate_units(&mat(&f2, 2), &lim()).unwrap();
    if u.order() != 6 {
        failures.push(format!("|U(M2(F2))| = {}", u.order()));
    }
    let mut sizes = u.conjugacy_data().class_sizes();
    sizes.sort_unstable();
    if sizes != [1, 2, 3] {
        failures.push(format!("class sizes {sizes:?}"));
    }
    let dl = series_report(&u, &lim()).derived_length;
    if dl != Some(2) {
        failures.push(format!("derived length {dl:?}"));
    }
    let n = enumerate_units(&tri(&f2, 2), &lim()).unwrap().order();
    if n != 2 {
        failures.push(format!("|U(T2(F2))| = {n}"));
    }
    for (name, a) in [
        ("F2[C2]", group_alg(&f2, "C2")),
        ("M2(F2)", mat(&f2, 2)),
        ("T2(F2)", tri(&f2, 2)),
    ] {
        let oracle = brute_units(&a).iter().filter(|&&b| b).count();
        if oracle != enumerate_units(&a, &lim()).unwrap().order() {
            failures.push(format!("{name}: enumeration disagrees with inverse search"));
        }
    }
    check(&failures, "3 unit groups, class sizes and derived length".into())
}

fn criterion_6() -> Outcome {
    let mut failures = Vec::new();
    let mut instances = 0;
    for (name, a) in finite_algebras() {
        instances += 1;
        let u = enumerate_units(&a, &lim()).unwrap();
        let r = fc_report(&u, &lim()).unwrap();
        if !r.delta_equals_u() || !r.nabla_equals_r() || !r.class_equation_holds {
            failures.push(format!("{name}: definitional check failed"));
        }
        let n = u.order();
        let data = u.conjugacy_data();
        let mut class_total = 0;
        for class in &data.classes {
            class_total += class.len();
        }
        if class_total != n {
            failures.push(format!("{name}: classes cover {class_total} of {n}"));
        }
        for x in 0..n {
            let centralizer = (0..n).filter(|&y| u.mul(x, y) == u.mul(y, x)).count();
            if r.unit_indices[x] * centralizer != n || r.unit_indices[x] != data.index(x) {
                failures.push(format!("{name}: index of {} is inconsistent", u.element_text(x)));
            }
        }
        if r.ring_size != size(&a, u64::MAX).unwrap() {
            failures.push(format!("{name}: ring size {}", r.ring_size));
        }
    }
    check(
        &failures,
        format!("{instances} finite instances, indices checked against brute centralizers"),
    )
}

fn criterion_7() -> Outcome {
    let qq = q();
    let mut failures = Vec::new();
    for (name, a, want_dim, want_whole) in [
        ("M2(Q)", mat(&qq, 2), 1, false),
        ("T2(Q)", tri(&qq, 2), 1, false),
        ("Q[C2]", group_alg(&qq, "C2"), 2, true),
    ] {
        let sample = default_unit_sample(&a, &[]).unwrap();
        let est = nabla_sandwich(&a, &sample).unwrap();
        if est.status != SandwichStatus::Exact {
            failures.push(format!("{name}: status interval"));
        }
        if est.upper != a.center() || est.upper.dim() != want_dim || est.upper.is_whole() != want_whole {
            failures.push(format!("{name}: upper bound of dim {}", est.upper.dim()));
        }
        for v in est.upper.basis_elements() {
            for b in a.basis_elements() {
                if !v.commutes_with(&b).unwrap() {
                    failures.push(format!("{name}: {v} is not central"));
                }
            }
        }
    }
    check(
        &failures,
        "M2(Q) dim 1, T2(Q) dim 1, Q[C2] dim 2, all exact".into(),
    )
}

fn criterion_8() -> Outcome {
    let f2 = gf(2);
    let mut failures = Vec::new();
    let t = tri(&f2, 2);
    let u = enumerate_units(&t, &lim()).unwrap();
    let z = label(&t, "E11").lie(&label(&t, "E12")).unwrap();
    let c = omega_annihilator_count(u.elements(), &z, OmegaForm::OneMinusH).unwrap();
    if c.count() != 2 {
        failures.push(format!("T2(F2) count {}", c.count()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 8);
    let mut counted = 0;
    for name in FiniteGroupTable::bundled_names() {
        let a = group_alg(&f2, name);
        let units = enumerate_units(&a, &lim()).unwrap();
        let group: Vec<AlgElement> = a.basis_elements();
        let mut targets: Vec<AlgElement> = Vec::new();
        for x in &group {
            for y in &group {
                let z = x.lie(y).unwrap();
                if !z.is_zero() && !targets.contains(&z) {
                    targets.push(z);
                }
            }
        }
        while targets.len() < 3 {
            let z = random_element(&a, &mut rng, 0);
            if !z.is_zero() {
                targets.push(z);
            }
        }
        for z in targets.iter().take(4) {
            for (h, form) in [
                (units.elements(), OmegaForm::OneMinusH),
                (&group[..], OmegaForm::OneMinusH),
                (&group[..], OmegaForm::HMinusOne),
            ] {
                let c = omega_annihilator_count(h, z, form).unwrap();
                let brute = h
                    .iter()
                    .filter(|x| a.one().sub(x).unwrap().mul(z).unwrap().is_zero())
                    .count();
                counted += 1;
                if !c.counts_agree() || c.count() != brute {
                    failures.push(format!("F2[{name}], z = {z}: {} vs {brute}", c.count()));
                }
            }
        }
    }
    check(
        &failures,
        format!("T2(F2) count 2, {counted} group-algebra counts agree"),
    )
}

fn bundled_descriptions() -> Vec<PathBuf> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../descriptions");
    let mut v: Vec<PathBuf> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "json"))
        .collect();
    v.sort();
    v
}

/// Every command applicable to a description, with arguments drawn from
/// its named elements and basis labels.
fn command_lines(path: &Path) -> Vec<Vec<String>> {
    let d = load_description(path).unwrap();
    let p = path.to_str().unwrap().to_string();
    let mut out: Vec<Vec<String>> = [
        "validate", "radical", "center", "units", "fc", "series", "sandwich",
    ]
    .iter()
    .map(|c| vec![c.to_string(), p.clone()])
    .collect();
    for name in d.elements.keys() {
        out.push(vec!["classify".into(), p.clone(), name.clone()]);
        out.push(vec!["decompose".into(), p.clone(), name.clone()]);
    }
    let labels = d.algebra.labels();
    let pair = (0..labels.len())
        .flat_map(|i| (0..labels.len()).map(move |j| (i, j)))
        .find(|&(i, j)| !d.algebra.basis(i).lie(&d.algebra.basis(j)).unwrap().is_zero());
    if let Some((i, j)) = pair {
        let set = if d.group_basis.is_some() {
            "group-basis"
        } else {
            "units"
        };
        out.push(vec![
            "omega".into(),
            p.clone(),
            set.into(),
            labels[i].clone(),
            labels[j].clone(),
        ]);
        out.push(vec![
            "witnesses".into(),
            p.clone(),
            labels[i].clone(),
            labels[j].clone(),
            "3".into(),
        ]);
    }
    out
}

fn run_cli(args: &[String], threads: usize) -> (Option<i32>, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_fcalg"))
        .args(args)
        .args(["--threads", &threads.to_string()])
        .output()
        .unwrap();
    (out.status.code(), out.stdout)
}

fn criterion_9() -> Outcome {
    let mut failures = Vec::new();
    let mut commands = 0;
    for path in bundled_descriptions() {
        for args in command_lines(&path) {
            commands += 1;
            let first = run_cli(&args, 8);
            let second = run_cli(&args, 8);
            let single = run_cli(&args, 1);
            if first != second || first != single {
                failures.push(args.join(" "));
            }
            if first.1.is_empty() {
                failures.push(format!("{}: empty report", args.join(" ")));
            }
        }
    }
    check(
        &failures,
        format!("{commands} command lines, 3 runs each (8, 8, 1 threads)"),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 9] = [
        ("torsion shift inverse formula", criterion_1),
        ("distinct conjugates by shifts", criterion_2),
        ("Jacobson radical against quasi-regularity oracle", criterion_3),
        ("local decomposition of F[g]", criterion_4),
        ("unit-group anchors", criterion_5),
        ("FC definitional suite", criterion_6),
        ("sandwich exactness over Q", criterion_7),
        ("omega-annihilator counts", criterion_8),
        ("CLI determinism", criterion_9),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut all_ok = true;
    for (i, (title, run)) in criteria.iter().enumerate() {
        let id = (i + 1).to_string();
        if !filter.is_empty() && !filter.iter().any(|f| f == &id) {
            continue;
        }
        let start = Instant::now();
        let o = run();
        let elapsed = start.elapsed();
        let ok = o.ok && elapsed <= TIME_BUDGET;
        all_ok &= ok;
        println!(
            "criterion {id} {} {title}: {} ({:.1}s, budget {}s)",
            if ok { "PASS" } else { "FAIL" },
            o.detail,
            elapsed.as_secs_f64(),
            TIME_BUDGET.as_secs()
        );
    }
    if !all_ok {
        std::process::exit(1);
    }
}
