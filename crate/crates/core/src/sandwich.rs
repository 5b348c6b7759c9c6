//! Bounds on the FC-subalgebra over infinite fields: the center from below,
//! the centralizer of a unit sample from above, and explicit conjugate
//! witnesses for elements outside it.

use serde_json::{json, Value};

use crate::algebra::{AlgElement, Algebra, Subspace};
use crate::element::{classify, minimal_polynomial, unit_shifts};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::limits::Limits;

/// Pairwise distinct conjugates `(g - alpha_i)^-1 a (g - alpha_i)`.
#[derive(Debug, Clone)]
pub struct WitnessList {
    pub a: AlgElement,
    pub g: AlgElement,
    pub shifts: Vec<Scalar>,
    pub conjugates: Vec<AlgElement>,
    /// `(i, j, conjugate_i != conjugate_j)` for every `i < j`.
    pub pairwise_distinct: Vec<(usize, usize, bool)>,
}

impl WitnessList {
    pub fn all_distinct(&self) -> bool {
        self.pairwise_distinct.iter().all(|&(_, _, d)| d)
    }

    pub fn to_json(&self) -> Value {
        let f = self.a.algebra().field();
        json!({
            "a": self.a.to_string(),
            "g": self.g.to_string(),
            "shifts": self.shifts.iter().map(|s| f.to_json(s)).collect::<Vec<_>>(),
            "conjugates": self.conjugates.iter().map(AlgElement::to_json).collect::<Vec<_>>(),
            "conjugates_text": self.conjugates.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "pairwise_distinct": self.pairwise_distinct.iter().map(|&(i, j, d)| json!([i, j, d])).collect::<Vec<_>>(),
            "all_distinct": self.all_distinct(),
            "base_field_infinite": !f.is_finite(),
        })
    }
}

/// Conjugates of `a` by `g - alpha` for `count` shifts. With `shifts` given
/// they are used as is; otherwise the first valid shifts in the standard
/// order are taken.
pub fn conjugate_witnesses(
    a: &AlgElement,
    g: &AlgElement,
    count: usize,
    shifts: Option<&[Scalar]>,
) -> Result<WitnessList> {
    if a.lie(g)?.is_zero() {
        return Err(Error::CommutingPair);
    }
    let f = g.algebra().field();
    let shifts = match shifts {
        Some(s) => {
            if s.iter().any(|x| !f.contains(x)) {
                return Err(Error::FieldMismatch);
            }
            s.to_vec()
        }
        None => unit_shifts(g, count)?,
    };
    let mut conjugates = Vec::with_capacity(shifts.len());
    for alpha in &shifts {
        let u = g.shift(alpha);
        let inv = u.try_invert().map_err(|_| Error::ShiftNotUnit)?;
        conjugates.push(inv.mul(a)?.mul(&u)?);
    }
    let mut pairwise_distinct = Vec::new();
    for i in 0..conjugates.len() {
        for j in i + 1..conjugates.len() {
            pairwise_distinct.push((i, j, conjugates[i] != conjugates[j]));
        }
    }
    Ok(WitnessList {
        a: a.clone(),
        g: g.clone(),
        shifts,
        conjugates,
        pairwise_distinct,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SandwichStatus {
    Exact,
    Interval,
}

/// `Z(A) <= nabla(A) <= C_A(sample)`.
#[derive(Debug, Clone)]
pub struct NablaEstimate {
    pub lower: Subspace,
    pub upper: Subspace,
    pub status: SandwichStatus,
    pub certificate: Vec<AlgElement>,
}

impl NablaEstimate {
    pub fn to_json(&self) -> Value {
        let exact = self.status == SandwichStatus::Exact;
        json!({
            "lower_bound": self.lower.to_json(),
            "lower_dim": self.lower.dim(),
            "upper_bound": self.upper.to_json(),
            "upper_dim": self.upper.dim(),
            "status": if exact { "exact" } else { "interval" },
            "nabla_equals_center": exact,
            "note": if exact {
                "the centralizer of the sampled algebraic units meets the center, so nabla equals the center"
            } else {
                "bounds differ; enlarge the unit sample to tighten the upper bound"
            },
            "certificate": self.certificate.iter().map(|u| u.to_string()).collect::<Vec<_>>(),
        })
    }
}

pub fn nabla_sandwich(alg: &Algebra, sample: &[AlgElement]) -> Result<NablaEstimate> {
    if alg.field().is_finite() {
        return Err(Error::RequiresInfiniteField);
    }
    for u in sample {
        if u.algebra() != alg {
            return Err(Error::AlgebraMismatch);
        }
        if !u.is_unit() {
            return Err(Error::NotAUnit);
        }
    }
    let lower = alg.center();
    let upper = alg.centralizer(sample)?;
    debug_assert!(lower.is_subspace_of(&upper));
    let status = if lower == upper {
        SandwichStatus::Exact
    } else {
        SandwichStatus::Interval
    };
    Ok(NablaEstimate {
        lower,
        upper,
        status,
        certificate: sample.to_vec(),
    })
}

/// `1 + b_i` for nilpotent basis elements, then `b_i - alpha_i` with
/// `alpha_i` the first shift making it a unit, then `extra`; deduplicated
/// in that order.
pub fn default_unit_sample(alg: &Algebra, extra: &[AlgElement]) -> Result<Vec<AlgElement>> {
    let mut out: Vec<AlgElement> = Vec::new();
    let mut push = |x: AlgElement| {
        if !out.contains(&x) {
            out.push(x);
        }
    };
    let basis = alg.basis_elements();
    for b in &basis {
        let mu = minimal_polynomial(b);
        let d = mu.degree().unwrap();
        if (0..d).all(|i| alg.field().is_zero(&mu.coeff(i))) {
            push(alg.one().add(b)?);
        }
    }
    for b in &basis {
        let alpha = unit_shifts(b, 1)?.remove(0);
        push(b.shift(&alpha));
    }
    for x in extra {
        if x.algebra() != alg {
            return Err(Error::AlgebraMismatch);
        }
        push(x.clone());
    }
    Ok(out)
}

pub const CLASS_VOCABULARY_NOTE: &str = "nilpotency class bounds are reported as 'at most 2'";

#[derive(Debug, Clone)]
pub struct TorsionCommutationReport {
    /// `(unit, torsion order, commutes with every upper-bound vector)`.
    pub torsion_units: Vec<(AlgElement, u64, bool)>,
}

impl TorsionCommutationReport {
    pub fn holds(&self) -> bool {
        self.torsion_units.iter().all(|(_, _, c)| *c)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "statement": "sampled torsion units commute with the computed nabla bound",
            "holds": self.holds(),
            "torsion_units": self.torsion_units.iter().map(|(u, m, c)| json!({
                "unit": u.to_string(),
                "order": m,
                "commutes_with_bound": c,
            })).collect::<Vec<_>>(),
            "note": CLASS_VOCABULARY_NOTE,
        })
    }
}

/// For an exact sandwich, check that every torsion unit among `units`
/// commutes with the whole bound.
pub fn torsion_commutation_report(
    estimate: &NablaEstimate,
    units: &[AlgElement],
    limits: &Limits,
) -> Result<TorsionCommutationReport> {
    if estimate.status != SandwichStatus::Exact {
        return Err(Error::InconclusiveSandwich);
    }
    let bound = estimate.upper.basis_elements();
    let mut torsion_units = Vec::new();
    for u in units {
        if let Some(m) = classify(u, limits).torsion_order() {
            let commutes = bound
                .iter()
                .map(|v| u.commutes_with(v))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .all(|c| c);
            torsion_units.push((u.clone(), m, commutes));
        }
    }
    Ok(TorsionCommutationReport { torsion_units })
}
