//! Command dispatch and the deterministic report envelope.

use serde_json::{json, Map, Value};

use crate::algebra::AlgElement;
use crate::description::{field_summary, Description};
use crate::element::{classify, local_decomposition};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::limits::Limits;
use crate::sandwich::{
    conjugate_witnesses, default_unit_sample, nabla_sandwich, torsion_commutation_report, SandwichStatus,
    CLASS_VOCABULARY_NOTE,
};
use crate::units::{
    enumerate_units, fc_report, gated_conclusions, omega_annihilator_count, series_report, OmegaForm,
    UnitGroupTable,
};

pub const TOOL: &str = "fcalg";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
pub const REPORT_SCHEMA_ID: &str = "urn:fcalg:schema:report:v1";

/// Subgroups of `U` (or the group basis) usable as `H` in an omega count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OmegaSet {
    Units,
    Center,
    Commutator,
    GroupBasis,
}

impl OmegaSet {
    pub fn parse(s: &str) -> Option<OmegaSet> {
        match s {
            "units" => Some(OmegaSet::Units),
            "center" => Some(OmegaSet::Center),
            "commutator" => Some(OmegaSet::Commutator),
            "group-basis" => Some(OmegaSet::GroupBasis),
            _ => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            OmegaSet::Units => "units",
            OmegaSet::Center => "center",
            OmegaSet::Commutator => "commutator",
            OmegaSet::GroupBasis => "group-basis",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    Validate,
    Radical,
    Center,
    Decompose {
        element: String,
    },
    Classify {
        element: String,
    },
    Units,
    Fc,
    Series,
    Omega {
        set: OmegaSet,
        x: String,
        y: String,
        form: OmegaForm,
    },
    Witnesses {
        a: String,
        g: String,
        count: usize,
        shifts: Option<Vec<String>>,
    },
    Sandwich {
        sample: Vec<String>,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Radical => "radical",
            Command::Center => "center",
            Command::Decompose { .. } => "decompose",
            Command::Classify { .. } => "classify",
            Command::Units => "units",
            Command::Fc => "fc",
            Command::Series => "series",
            Command::Omega { .. } => "omega",
            Command::Witnesses { .. } => "witnesses",
            Command::Sandwich { .. } => "sandwich",
        }
    }

    /// Build a command from its name and positional arguments, as typed on
    /// the command line.
    pub fn from_args(name: &str, args: &[String]) -> Result<Command> {
        let bad = |message: String| Error::Schema {
            path: format!("command {name}"),
            message,
        };
        let arity = |n: usize| {
            if args.len() == n {
                Ok(())
            } else {
                Err(bad(format!("expected {n} arguments, got {}", args.len())))
            }
        };
        let cmd = match name {
            "validate" | "radical" | "center" | "units" | "fc" | "series" => {
                arity(0)?;
                match name {
                    "validate" => Command::Validate,
                    "radical" => Command::Radical,
                    "center" => Command::Center,
                    "units" => Command::Units,
                    "fc" => Command::Fc,
                    _ => Command::Series,
                }
            }
            "decompose" | "classify" => {
                arity(1)?;
                let element = args[0].clone();
                if name == "decompose" {
                    Command::Decompose { element }
                } else {
                    Command::Classify { element }
                }
            }
            "omega" => {
                if args.len() != 3 && args.len() != 4 {
                    return Err(bad(format!("expected 3 or 4 arguments, got {}", args.len())));
                }
                let set =
                    OmegaSet::parse(&args[0]).ok_or_else(|| bad(format!("unknown set '{}'", args[0])))?;
                let form = match args.get(3).map(String::as_str) {
                    None | Some("one-minus-h") => OmegaForm::OneMinusH,
                    Some("h-minus-one") => OmegaForm::HMinusOne,
                    Some(other) => return Err(bad(format!("unknown form '{other}'"))),
                };
                Command::Omega {
                    set,
                    x: args[1].clone(),
                    y: args[2].clone(),
                    form,
                }
            }
            "witnesses" => {
                if args.len() != 3 && args.len() != 4 {
                    return Err(bad(format!("expected 3 or 4 arguments, got {}", args.len())));
                }
                let count = args[2]
                    .parse()
                    .map_err(|_| bad(format!("'{}' is not a count", args[2])))?;
                let shifts = args
                    .get(3)
                    .map(|s| s.split(',').map(|x| x.trim().to_string()).collect());
                Command::Witnesses {
                    a: args[0].clone(),
                    g: args[1].clone(),
                    count,
                    shifts,
                }
            }
            "sandwich" => Command::Sandwich {
                sample: args.to_vec(),
            },
            _ => return Err(bad("unknown command".into())),
        };
        Ok(cmd)
    }

    pub fn args_json(&self) -> Value {
        match self {
            Command::Decompose { element } | Command::Classify { element } => json!({ "element": element }),
            Command::Omega { set, x, y, form } => json!({
                "set": set.as_str(),
                "x": x,
                "y": y,
                "form": form_str(*form),
            }),
            Command::Witnesses { a, g, count, shifts } => json!({
                "a": a,
                "g": g,
                "count": count,
                "shifts": shifts,
            }),
            Command::Sandwich { sample } => json!({ "sample": sample }),
            _ => json!({}),
        }
    }
}

fn form_str(form: OmegaForm) -> &'static str {
    match form {
        OmegaForm::OneMinusH => "one-minus-h",
        OmegaForm::HMinusOne => "h-minus-one",
    }
}

pub fn limits_json(limits: &Limits) -> Value {
    json!({
        "enumeration_cap": u64::try_from(limits.enumeration_cap).unwrap_or(u64::MAX),
        "factor_degree_cap": limits.factor_degree_cap,
        "torsion_cap": limits.torsion_cap,
    })
}

/// Operation results plus hypothesis-gate annotations.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub results: Value,
    pub gates: Vec<Value>,
}

impl Outcome {
    fn plain(results: Value) -> Outcome {
        Outcome {
            results,
            gates: Vec::new(),
        }
    }
}

pub fn run_command(desc: &Description, cmd: &Command, limits: &Limits) -> Result<Outcome> {
    let alg = &desc.algebra;
    match cmd {
        Command::Validate => {
            let comm = alg.is_commutative();
            let elements: Map<String, Value> = desc
                .elements
                .iter()
                .map(|(k, v)| (k.clone(), json!({ "coords": v.to_json(), "text": v.to_string() })))
                .collect();
            Ok(Outcome::plain(json!({
                "valid": true,
                "name": desc.name,
                "field": field_summary(alg.field()),
                "dim": alg.dim(),
                "labels": alg.labels(),
                "one": alg.one().to_string(),
                "commutative": comm.commutative,
                "group_basis": desc.group_basis,
                "elements": elements,
            })))
        }
        Command::Radical => {
            let j = alg.jacobson_radical();
            Ok(Outcome::plain(json!({
                "dim": j.dim(),
                "basis": j.to_json(),
                "basis_text": j.basis_elements().iter().map(|e| e.to_string()).collect::<Vec<_>>(),
                "nilpotency_index": j.nilpotency_index(),
                "semisimple": j.is_zero(),
            })))
        }
        Command::Center => {
            let z = alg.center();
            Ok(Outcome::plain(json!({
                "dim": z.dim(),
                "basis": z.to_json(),
                "basis_text": z.basis_elements().iter().map(|e| e.to_string()).collect::<Vec<_>>(),
                "algebra_commutative": z.is_whole(),
            })))
        }
        Command::Decompose { element } => {
            let g = desc.resolve(element)?;
            let d = local_decomposition(&g, limits)?;
            Ok(Outcome::plain(
                json!({ "element": g.to_string(), "decomposition": d.to_json() }),
            ))
        }
        Command::Classify { element } => {
            let g = desc.resolve(element)?;
            Ok(Outcome::plain(json!({
                "element": g.to_string(),
                "profile": classify(&g, limits).to_json(),
            })))
        }
        Command::Units => {
            let u = enumerate_units(alg, limits)?;
            Ok(Outcome::plain(units_json(&u)))
        }
        Command::Fc => {
            let u = enumerate_units(alg, limits)?;
            let r = fc_report(&u, limits)?;
            Ok(Outcome::plain(r.to_json(&u)))
        }
        Command::Series => {
            let u = enumerate_units(alg, limits)?;
            let s = series_report(&u, limits);
            let gates = gated_conclusions(&u, &s);
            Ok(Outcome {
                results: s.to_json(&u),
                gates: vec![gates.to_json()],
            })
        }
        Command::Omega { set, x, y, form } => {
            let x = desc.resolve(x)?;
            let y = desc.resolve(y)?;
            let z = x.lie(&y)?;
            let h: Vec<AlgElement> = match set {
                OmegaSet::GroupBasis => {
                    let gb = desc.group_basis.as_ref().ok_or_else(|| Error::Schema {
                        path: "algebra.kind".into(),
                        message: "group-basis requires a group or twisted group algebra".into(),
                    })?;
                    gb.iter().map(|&i| alg.basis(i)).collect()
                }
                _ => {
                    let u = enumerate_units(alg, limits)?;
                    let idx = match set {
                        OmegaSet::Units => u.whole(),
                        OmegaSet::Center => u.center(),
                        _ => u.commutator_subgroup(),
                    };
                    idx.iter().map(|&i| u.element(i).clone()).collect()
                }
            };
            let c = omega_annihilator_count(&h, &z, *form)?;
            Ok(Outcome::plain(json!({
                "z": z.to_string(),
                "set": set.as_str(),
                "count": c.to_json(),
            })))
        }
        Command::Witnesses { a, g, count, shifts } => {
            let a = desc.resolve(a)?;
            let g = desc.resolve(g)?;
            let parsed: Option<Vec<Scalar>> = match shifts {
                Some(list) => Some(
                    list.iter()
                        .enumerate()
                        .map(|(i, s)| {
                            alg.field()
                                .parse(&Value::String(s.clone()))
                                .map_err(|message| Error::Schema {
                                    path: format!("--shifts[{i}]"),
                                    message,
                                })
                        })
                        .collect::<Result<_>>()?,
                ),
                None => None,
            };
            let w = conjugate_witnesses(&a, &g, *count, parsed.as_deref())?;
            Ok(Outcome::plain(w.to_json()))
        }
        Command::Sandwich { sample } => {
            if alg.field().is_finite() {
                return Err(Error::RequiresInfiniteField);
            }
            let extra = sample
                .iter()
                .map(|s| desc.resolve(s))
                .collect::<Result<Vec<_>>>()?;
            let units = default_unit_sample(alg, &extra)?;
            let est = nabla_sandwich(alg, &units)?;
            let torsion_commutation = match est.status {
                SandwichStatus::Exact => {
                    torsion_commutation_report(&est, &est.certificate, limits)?.to_json()
                }
                SandwichStatus::Interval => json!({ "status": "inconclusive" }),
            };
            Ok(Outcome {
                results: json!({ "estimate": est.to_json(), "torsion_commutation": torsion_commutation }),
                gates: vec![json!({ "note": CLASS_VOCABULARY_NOTE })],
            })
        }
    }
}

fn units_json(u: &UnitGroupTable) -> Value {
    let data = u.conjugacy_data();
    json!({
        "order": u.order(),
        "identity": u.element_text(u.identity()),
        "elements": (0..u.order()).map(|i| json!({
            "element": u.element_text(i),
            "order": u.element_order(i),
            "class": data.class_of[i],
        })).collect::<Vec<_>>(),
        "class_count": data.classes.len(),
        "class_sizes": data.class_sizes(),
        "class_representatives": data.classes.iter().map(|c| u.element_text(c[0])).collect::<Vec<_>>(),
        "abelian": data.classes.len() == u.order(),
    })
}

/// The full report document; `timing_ms` is only filled when requested so
/// that default output is byte-identical across runs.
pub fn envelope(
    desc: &Description,
    cmd: &Command,
    limits: &Limits,
    outcome: Outcome,
    timing_ms: Option<f64>,
) -> Value {
    json!({
        "$schema": REPORT_SCHEMA_ID,
        "tool": TOOL,
        "version": VERSION,
        "input": { "name": desc.name, "digest": desc.digest },
        "command": cmd.name(),
        "args": cmd.args_json(),
        "limits": limits_json(limits),
        "status": "ok",
        "results": outcome.results,
        "hypothesis_gates": outcome.gates,
        "timing": timing_ms.map(|t| json!({ "elapsed_ms": t })),
    })
}

pub fn error_envelope(command: &str, digest: Option<&str>, err: &Error) -> Value {
    json!({
        "$schema": REPORT_SCHEMA_ID,
        "tool": TOOL,
        "version": VERSION,
        "input": { "digest": digest },
        "command": command,
        "status": "error",
        "error": { "kind": err.kind(), "message": err.to_string(), "input_error": err.is_input_error() },
    })
}

/// Pretty JSON with a trailing newline.
pub fn render(v: &Value) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(v).expect("report serializes");
    out.push(b'\n');
    out
}

pub fn exit_code(err: &Error) -> i32 {
    if err.is_input_error() {
        2
    } else {
        1
    }
}
