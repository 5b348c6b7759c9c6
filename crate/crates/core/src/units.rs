//! Unit groups of algebras over finite fields: enumeration, conjugacy,
//! FC data, commutator series, annihilator counts and gated reports.

use std::collections::{BTreeMap, VecDeque};
use std::sync::OnceLock;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::algebra::{AlgElement, Algebra};
use crate::element::classify;
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::limits::Limits;

/// `q^dim` if it fits in `u128`.
pub fn algebra_size(alg: &Algebra) -> Option<u128> {
    let q = alg.field().order()? as u128;
    (0..alg.dim()).try_fold(1u128, |acc, _| acc.checked_mul(q))
}

fn check_enumerable(alg: &Algebra, limits: &Limits) -> Result<u64> {
    if !alg.field().is_finite() {
        return Err(Error::RequiresFiniteField);
    }
    let size = algebra_size(alg).unwrap_or(u128::MAX);
    if size > limits.enumeration_cap {
        return Err(Error::EnumerationTooLarge {
            required: size,
            cap: limits.enumeration_cap,
        });
    }
    Ok(size as u64)
}

/// Element with code `c = sum_i code(x_i) q^(n-1-i)`; numeric order of
/// codes is lexicographic order of coordinate codes.
pub fn element_of_code(alg: &Algebra, mut c: u64) -> Vec<Scalar> {
    let f = alg.field();
    let q = f.order().expect("finite field");
    let mut v = vec![f.zero(); alg.dim()];
    for x in v.iter_mut().rev() {
        *x = f.from_code(c % q);
        c /= q;
    }
    v
}

pub fn code_of(alg: &Algebra, v: &[Scalar]) -> u64 {
    let f = alg.field();
    let q = f.order().expect("finite field");
    v.iter().fold(0, |acc, x| acc * q + f.code(x))
}

/// The full unit group, in increasing code order, so index 0 is the
/// lexicographically least unit.
pub struct UnitGroupTable {
    algebra: Algebra,
    codes: Vec<u64>,
    elements: Vec<AlgElement>,
    identity: usize,
    table: OnceLock<Vec<u32>>,
    inverses: OnceLock<Vec<usize>>,
    conjugacy: OnceLock<ConjugacyData>,
}

impl std::fmt::Debug for UnitGroupTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "UnitGroupTable(order {})", self.order())
    }
}

/// Enumerate `U(A)` by scanning every element with the left regular
/// invertibility test.
pub fn enumerate_units(alg: &Algebra, limits: &Limits) -> Result<UnitGroupTable> {
    let size = check_enumerable(alg, limits)?;
    let codes: Vec<u64> = (0..size)
        .into_par_iter()
        .filter(|&c| alg.is_unit_coords(&element_of_code(alg, c)))
        .collect();
    let elements: Vec<AlgElement> = codes
        .iter()
        .map(|&c| alg.element(element_of_code(alg, c)).unwrap())
        .collect();
    let one = code_of(alg, alg.one_coords());
    let identity = codes.binary_search(&one).expect("1 is a unit");
    Ok(UnitGroupTable {
        algebra: alg.clone(),
        codes,
        elements,
        identity,
        table: OnceLock::new(),
        inverses: OnceLock::new(),
        conjugacy: OnceLock::new(),
    })
}

/// Sorted member indices of a subgroup.
pub type Subgroup = Vec<usize>;

impl UnitGroupTable {
    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[AlgElement] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &AlgElement {
        &self.elements[i]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn index_of(&self, x: &AlgElement) -> Option<usize> {
        if x.algebra() != &self.algebra {
            return None;
        }
        self.codes.binary_search(&code_of(&self.algebra, x.coords())).ok()
    }

    fn index_of_coords(&self, v: &[Scalar]) -> usize {
        self.codes
            .binary_search(&code_of(&self.algebra, v))
            .expect("unit group is closed under products")
    }

    /// Flat Cayley table, built on first use.
    fn table(&self) -> &[u32] {
        self.table.get_or_init(|| {
            let alg = &self.algebra;
            self.elements
                .par_iter()
                .flat_map_iter(|a| {
                    self.elements
                        .iter()
                        .map(move |b| self.index_of_coords(&alg.mul_coords(a.coords(), b.coords())) as u32)
                })
                .collect()
        })
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table()[a * self.order() + b] as usize
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses.get_or_init(|| {
            let n = self.order();
            let mut inv = vec![0; n];
            for (a, slot) in inv.iter_mut().enumerate() {
                *slot = (0..n).find(|&b| self.mul(a, b) == self.identity).unwrap();
            }
            inv
        })[a]
    }

    /// Group commutator `(g, h) = g^-1 h^-1 g h`.
    pub fn commutator(&self, g: usize, h: usize) -> usize {
        let gi = self.inverse(g);
        let hi = self.inverse(h);
        self.mul(self.mul(gi, hi), self.mul(g, h))
    }

    pub fn conjugate(&self, a: usize, by: usize) -> usize {
        self.mul(self.mul(self.inverse(by), a), by)
    }

    pub fn element_order(&self, a: usize) -> usize {
        self.element_order_bounded(a, self.order()).expect("finite group")
    }

    /// Order of `a` if it is at most `bound`.
    pub fn element_order_bounded(&self, a: usize, bound: usize) -> Option<usize> {
        let mut x = a;
        for k in 1..=bound {
            if x == self.identity {
                return Some(k);
            }
            x = self.mul(x, a);
        }
        None
    }

    /// Closure of `gens` under multiplication (a subgroup, as U is finite).
    pub fn generate(&self, gens: &[usize]) -> Subgroup {
        let mut gens = gens.to_vec();
        gens.sort_unstable();
        gens.dedup();
        let mut member = vec![false; self.order()];
        member[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in &gens {
                let y = self.mul(x, g);
                if !member[y] {
                    member[y] = true;
                    queue.push_back(y);
                }
            }
        }
        (0..self.order()).filter(|&i| member[i]).collect()
    }

    /// Greedy generating set of a subgroup: scan members in order and keep
    /// those not yet generated.
    pub fn generating_set(&self, group: &[usize]) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![self.identity];
        for &x in group {
            if span.binary_search(&x).is_err() {
                gens.push(x);
                span = self.generate(&gens);
            }
        }
        gens
    }

    pub fn whole(&self) -> Subgroup {
        (0..self.order()).collect()
    }

    /// `[A, B]`, generated by all `(a, b)`.
    pub fn commutator_of(&self, a: &[usize], b: &[usize]) -> Subgroup {
        let mut gens: Vec<usize> = a
            .iter()
            .flat_map(|&x| b.iter().map(move |&y| (x, y)))
            .map(|(x, y)| self.commutator(x, y))
            .collect();
        gens.sort_unstable();
        gens.dedup();
        self.generate(&gens)
    }

    /// `U'` from all pairwise commutators.
    pub fn commutator_subgroup_bruteforce(&self) -> Subgroup {
        let all = self.whole();
        self.commutator_of(&all, &all)
    }

    /// `U'` as the normal closure of commutators of a generating set.
    pub fn commutator_subgroup(&self) -> Subgroup {
        let gens = self.generating_set(&self.whole());
        let mut normal_gens: Vec<usize> = gens
            .iter()
            .flat_map(|&s| gens.iter().map(move |&t| (s, t)))
            .map(|(s, t)| self.commutator(s, t))
            .collect();
        loop {
            let n = self.generate(&normal_gens);
            let missing: Vec<usize> = n
                .iter()
                .flat_map(|&x| gens.iter().map(move |&s| (x, s)))
                .map(|(x, s)| self.conjugate(x, s))
                .filter(|y| n.binary_search(y).is_err())
                .collect();
            if missing.is_empty() {
                return n;
            }
            normal_gens.extend(missing);
        }
    }

    /// Center `zeta(U)`.
    pub fn center(&self) -> Subgroup {
        let data = self.conjugacy_data();
        (0..self.order())
            .filter(|&a| data.centralizer_orders[a] == self.order())
            .collect()
    }

    pub fn is_subgroup(&self, set: &[usize]) -> bool {
        set.binary_search(&self.identity).is_ok()
            && set.iter().all(|&a| {
                set.binary_search(&self.inverse(a)).is_ok()
                    && set.iter().all(|&b| set.binary_search(&self.mul(a, b)).is_ok())
            })
    }

    pub fn is_abelian(&self, set: &[usize]) -> bool {
        set.iter()
            .all(|&a| set.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn conjugacy_data(&self) -> &ConjugacyData {
        self.conjugacy.get_or_init(|| {
            let n = self.order();
            let mut class_of = vec![usize::MAX; n];
            let mut classes = Vec::new();
            for a in 0..n {
                if class_of[a] != usize::MAX {
                    continue;
                }
                let mut members: Vec<usize> = (0..n).map(|g| self.conjugate(a, g)).collect();
                members.sort_unstable();
                members.dedup();
                for &m in &members {
                    class_of[m] = classes.len();
                }
                classes.push(members);
            }
            let centralizer_orders = (0..n).map(|a| n / classes[class_of[a]].len()).collect();
            ConjugacyData {
                classes,
                class_of,
                centralizer_orders,
            }
        })
    }

    pub fn element_text(&self, i: usize) -> String {
        self.elements[i].to_string()
    }

    fn subgroup_json(&self, s: &[usize]) -> Value {
        Value::Array(s.iter().map(|&i| Value::String(self.element_text(i))).collect())
    }
}

/// Conjugacy classes (ordered by least member, which is the
/// representative) and centralizer orders per element.
#[derive(Debug, Clone)]
pub struct ConjugacyData {
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
    pub centralizer_orders: Vec<usize>,
}

impl ConjugacyData {
    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    pub fn index(&self, a: usize) -> usize {
        self.classes[self.class_of[a]].len()
    }
}

pub fn conjugacy_data(u: &UnitGroupTable) -> &ConjugacyData {
    u.conjugacy_data()
}

/// FC data of a finite algebra, computed from the definitions.
#[derive(Debug, Clone)]
pub struct FcReport {
    pub unit_order: usize,
    /// `[U : C_U(a)]` for every unit, in element order.
    pub unit_indices: Vec<usize>,
    /// Units with finite index, i.e. `Delta U`.
    pub delta_u: Subgroup,
    pub ring_size: u64,
    /// Number of elements `r` with finite `[U : C_U(r)]`.
    pub nabla_size: u64,
    /// Histogram of `[U : C_U(r)]` over the ring.
    pub nabla_index_histogram: BTreeMap<usize, u64>,
    pub nabla_orbit_count: u64,
    /// Elements of finite order in `Delta U`.
    pub torsion: Subgroup,
    pub torsion_is_subgroup: bool,
    /// `Delta U / t(Delta U)` abelian, i.e. `(Delta U)' <= t(Delta U)`.
    pub quotient_is_abelian: bool,
    pub class_equation_holds: bool,
}

impl FcReport {
    pub fn delta_equals_u(&self) -> bool {
        self.delta_u.len() == self.unit_order
    }

    pub fn nabla_equals_r(&self) -> bool {
        self.nabla_size == self.ring_size
    }
}

pub fn fc_report(u: &UnitGroupTable, limits: &Limits) -> Result<FcReport> {
    let alg = u.algebra();
    let ring_size = check_enumerable(alg, limits)?;
    let data = u.conjugacy_data();
    let n = u.order();
    let unit_indices: Vec<usize> = (0..n).map(|a| data.index(a)).collect();
    let delta_u: Subgroup = (0..n).collect();
    let class_equation_holds = data.class_sizes().iter().sum::<usize>() == n
        && (0..n).all(|a| data.index(a) * data.centralizer_orders[a] == n);

    // U acts on R by conjugation; [U : C_U(r)] is the orbit size of r.
    let gens: Vec<&AlgElement> = u
        .generating_set(&u.whole())
        .into_iter()
        .map(|g| u.element(g))
        .collect();
    let gen_pairs: Vec<(Vec<Scalar>, Vec<Scalar>)> = gens
        .iter()
        .map(|g| (g.try_invert().unwrap().into_coords(), g.coords().to_vec()))
        .collect();
    let mut seen = vec![false; ring_size as usize];
    let mut histogram = BTreeMap::new();
    let mut orbit_count = 0u64;
    let mut nabla_size = 0u64;
    for start in 0..ring_size {
        if seen[start as usize] {
            continue;
        }
        seen[start as usize] = true;
        let mut orbit = 1u64;
        let mut queue = VecDeque::from([start]);
        while let Some(c) = queue.pop_front() {
            let r = element_of_code(alg, c);
            for (gi, g) in &gen_pairs {
                let y = code_of(alg, &alg.mul_coords(&alg.mul_coords(gi, &r), g));
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    orbit += 1;
                    queue.push_back(y);
                }
            }
        }
        orbit_count += 1;
        nabla_size += orbit;
        *histogram.entry(orbit as usize).or_insert(0) += orbit;
    }

    let torsion: Subgroup = (0..n)
        .filter(|&a| u.element_order_bounded(a, n).is_some())
        .collect();
    let torsion_is_subgroup = u.is_subgroup(&torsion);
    let derived = u.commutator_of(&delta_u, &delta_u);
    let quotient_is_abelian = derived.iter().all(|x| torsion.binary_search(x).is_ok());
    Ok(FcReport {
        unit_order: n,
        unit_indices,
        delta_u,
        ring_size,
        nabla_size,
        nabla_index_histogram: histogram,
        nabla_orbit_count: orbit_count,
        torsion,
        torsion_is_subgroup,
        quotient_is_abelian,
        class_equation_holds,
    })
}

impl FcReport {
    pub fn to_json(&self, u: &UnitGroupTable) -> Value {
        let data = u.conjugacy_data();
        let mut unit_hist: BTreeMap<usize, usize> = BTreeMap::new();
        for &i in &self.unit_indices {
            *unit_hist.entry(i).or_insert(0) += 1;
        }
        json!({
            "unit_group_order": self.unit_order,
            "delta_u_order": self.delta_u.len(),
            "delta_u_equals_u": self.delta_equals_u(),
            "index_table": (0..self.unit_order).map(|a| json!({
                "element": u.element_text(a),
                "class": data.class_of[a],
                "centralizer_order": data.centralizer_orders[a],
                "index": self.unit_indices[a],
            })).collect::<Vec<_>>(),
            "unit_index_histogram": unit_hist.iter().map(|(k, v)| (k.to_string(), json!(v))).collect::<serde_json::Map<_, _>>(),
            "class_equation_holds": self.class_equation_holds,
            "ring_size": self.ring_size,
            "nabla_size": self.nabla_size,
            "nabla_equals_r": self.nabla_equals_r(),
            "nabla_orbit_count": self.nabla_orbit_count,
            "nabla_index_histogram": self.nabla_index_histogram.iter().map(|(k, v)| (k.to_string(), json!(v))).collect::<serde_json::Map<_, _>>(),
            "torsion_order": self.torsion.len(),
            "torsion_equals_delta_u": self.torsion.len() == self.delta_u.len(),
            "torsion_is_subgroup": self.torsion_is_subgroup,
            "delta_u_mod_torsion_is_abelian": self.quotient_is_abelian,
        })
    }
}

/// Derived and lower central series with commutator flags.
#[derive(Debug, Clone)]
pub struct SeriesReport {
    pub derived_series: Vec<Subgroup>,
    /// `None` when the series stalls at a nontrivial subgroup.
    pub derived_length: Option<usize>,
    pub lower_central_series: Vec<Subgroup>,
    pub nilpotency_class: Option<usize>,
    pub commutator_subgroup: Subgroup,
    pub commutator_unipotent: Vec<bool>,
    pub commutator_central: bool,
    pub torsion_abelian: bool,
}

impl SeriesReport {
    pub fn commutator_all_unipotent(&self) -> bool {
        self.commutator_unipotent.iter().all(|&b| b)
    }

    pub fn to_json(&self, u: &UnitGroupTable) -> Value {
        json!({
            "derived_series_orders": self.derived_series.iter().map(Vec::len).collect::<Vec<_>>(),
            "derived_length": self.derived_length,
            "solvable": self.derived_length.is_some(),
            "lower_central_series_orders": self.lower_central_series.iter().map(Vec::len).collect::<Vec<_>>(),
            "nilpotency_class": self.nilpotency_class,
            "nilpotent": self.nilpotency_class.is_some(),
            "commutator_subgroup": u.subgroup_json(&self.commutator_subgroup),
            "commutator_subgroup_order": self.commutator_subgroup.len(),
            "commutator_unipotent": self.commutator_unipotent,
            "commutator_all_unipotent": self.commutator_all_unipotent(),
            "commutator_central_in_delta_u": self.commutator_central,
            "torsion_subgroup_abelian": self.torsion_abelian,
        })
    }
}

fn series(u: &UnitGroupTable, next: impl Fn(&Subgroup) -> Subgroup) -> (Vec<Subgroup>, Option<usize>) {
    let mut chain = vec![u.whole()];
    loop {
        let last = chain.last().unwrap();
        if last.len() == 1 {
            return (chain.clone(), Some(chain.len() - 1));
        }
        let nxt = next(last);
        if nxt.len() == last.len() {
            return (chain, None);
        }
        chain.push(nxt);
    }
}

pub fn series_report(u: &UnitGroupTable, limits: &Limits) -> SeriesReport {
    let whole = u.whole();
    let (derived_series, derived_length) = series(u, |g| u.commutator_of(g, g));
    let (lower_central_series, nilpotency_class) = series(u, |g| u.commutator_of(g, &whole));
    let commutator_subgroup = u.commutator_subgroup();
    let commutator_unipotent = commutator_subgroup
        .iter()
        .map(|&i| classify(u.element(i), limits).is_unipotent)
        .collect();
    let center = u.center();
    let commutator_central = commutator_subgroup
        .iter()
        .all(|x| center.binary_search(x).is_ok());
    SeriesReport {
        derived_series,
        derived_length,
        lower_central_series,
        nilpotency_class,
        commutator_subgroup,
        commutator_unipotent,
        commutator_central,
        torsion_abelian: u.is_abelian(&whole),
    }
}

/// Which elements of `H` to test against `z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OmegaForm {
    /// Elements `1 - h`.
    OneMinusH,
    /// Elements `h - 1`, the group-algebra companion form.
    HMinusOne,
}

#[derive(Debug, Clone)]
pub struct OmegaCount {
    pub form: OmegaForm,
    pub h_size: usize,
    /// Witnesses `h`, by membership of `1 - h` in the left annihilator.
    pub witnesses: Vec<AlgElement>,
    /// Same count by direct multiplication.
    pub brute_force_count: usize,
    /// `h = 1` is among the witnesses (its `1 - h = 0` kills everything).
    pub includes_identity: bool,
}

impl OmegaCount {
    pub fn count(&self) -> usize {
        self.witnesses.len()
    }

    pub fn counts_agree(&self) -> bool {
        self.count() == self.brute_force_count
    }

    pub fn to_json(&self) -> Value {
        json!({
            "form": match self.form { OmegaForm::OneMinusH => "1-h", OmegaForm::HMinusOne => "h-1" },
            "h_size": self.h_size,
            "count": self.count(),
            "brute_force_count": self.brute_force_count,
            "counts_agree": self.counts_agree(),
            "includes_identity": self.includes_identity,
            "witnesses": self.witnesses.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
        })
    }
}

/// Count `h` in `H` whose `1 - h` (or `h - 1`) lies in the left annihilator
/// of the nonzero element `z`.
pub fn omega_annihilator_count(h: &[AlgElement], z: &AlgElement, form: OmegaForm) -> Result<OmegaCount> {
    if z.is_zero() {
        return Err(Error::ZeroCommutator);
    }
    let alg = z.algebra();
    let ann = alg.left_annihilator(z)?;
    let one = alg.one();
    let mut witnesses = Vec::new();
    let mut brute = 0;
    for x in h {
        let diff = match form {
            OmegaForm::OneMinusH => one.sub(x)?,
            OmegaForm::HMinusOne => x.sub(&one)?,
        };
        if ann.contains(&diff) {
            witnesses.push(x.clone());
        }
        if diff.mul(z)?.is_zero() {
            brute += 1;
        }
    }
    let includes_identity = witnesses.iter().any(AlgElement::is_one);
    Ok(OmegaCount {
        form,
        h_size: h.len(),
        witnesses,
        brute_force_count: brute,
        includes_identity,
    })
}

pub const OMEGA_HYPOTHESIS: &str =
    "unsatisfiable at finite scale: omega-subgroups are infinite by definition";

/// One evaluated conclusion, recorded as data only.
#[derive(Debug, Clone)]
pub struct GatedConclusion {
    pub id: &'static str,
    pub statement: &'static str,
    pub holds: bool,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct ConclusionsReport {
    pub hypothesis: &'static str,
    pub conclusions: Vec<GatedConclusion>,
}

impl ConclusionsReport {
    pub fn conclusion(&self, id: &str) -> Option<&GatedConclusion> {
        self.conclusions.iter().find(|c| c.id == id)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "hypothesis_status": self.hypothesis,
            "conclusions": self.conclusions.iter().map(|c| json!({
                "id": c.id,
                "statement": c.statement,
                "status": if c.holds { "holds" } else { "fails" },
                "detail": c.detail,
                "gated": true,
            })).collect::<Vec<_>>(),
        })
    }
}

pub fn gated_conclusions(u: &UnitGroupTable, series: &SeriesReport) -> ConclusionsReport {
    let class = series.nilpotency_class;
    let class_text = class.map_or("not nilpotent".to_string(), |c| format!("class {c}"));
    let conclusions = vec![
        GatedConclusion {
            id: "1a",
            statement: "the commutator subgroup of t(Delta U) consists of unipotent elements",
            holds: series.commutator_all_unipotent(),
            detail: format!("commutator subgroup order {}", series.commutator_subgroup.len()),
        },
        GatedConclusion {
            id: "1b",
            statement: "the commutator subgroup of t(Delta U) is central in Delta U",
            holds: series.commutator_central,
            detail: format!("center order {}", u.center().len()),
        },
        GatedConclusion {
            id: "2",
            statement: "Delta U is nilpotent of class at most 2",
            holds: class.is_some_and(|c| c <= 2),
            detail: class_text.clone(),
        },
        GatedConclusion {
            id: "3a",
            statement: "Delta U is solvable of derived length at most 3",
            holds: series.derived_length.is_some_and(|l| l <= 3),
            detail: series
                .derived_length
                .map_or("not solvable".to_string(), |l| format!("derived length {l}")),
        },
        GatedConclusion {
            id: "3b",
            statement: "t(Delta U) is nilpotent of class at most 2",
            holds: class.is_some_and(|c| c <= 2),
            detail: class_text,
        },
    ];
    ConclusionsReport {
        hypothesis: OMEGA_HYPOTHESIS,
        conclusions,
    }
}
