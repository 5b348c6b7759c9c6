use std::path::Path;

use pyo3::prelude::*;
use pyo3::types::PyDict;

fn with_module<R>(f: impl FnOnce(Python<'_>, &Bound<'_, PyDict>) -> R) -> R {
    Python::attach(|py| {
        let m = PyModule::new(py, "fcalg_py").unwrap();
        fcalg_py::register(&m).unwrap();
        let globals = PyDict::new(py);
        globals.set_item("fcalg_py", m).unwrap();
        globals.set_item("json", py.import("json").unwrap()).unwrap();
        let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../descriptions");
        globals.set_item("DESCRIPTIONS", dir.to_str().unwrap()).unwrap();
        f(py, &globals)
    })
}

fn run(code: &str) {
    with_module(|py, globals| {
        let code = std::ffi::CString::new(code).unwrap();
        if let Err(e) = py.run(&code, Some(globals), None) {
            e.print(py);
            panic!("python snippet failed");
        }
    })
}

#[test]
fn load_and_report() {
    run(r#"
a = fcalg_py.load(DESCRIPTIONS + "/f2_c2.json")
assert a.dim == 2 and a.labels == ["1", "g"]
assert a.radical_dim() == 1 and a.center_dim() == 2
r = json.loads(a.run("fc"))
assert r["results"]["unit_group_order"] == 2
assert r["input"]["digest"] == a.digest
"#);
}

#[test]
fn witnesses_with_explicit_shifts() {
    run(r#"
m = fcalg_py.load(DESCRIPTIONS + "/m2_q.json")
r = json.loads(m.run("witnesses", ["a", "g", "3", "0,3,4"]))
assert r["results"]["conjugates_text"] == ["2*E12", "1/2*E12", "2/3*E12"], r
"#);
}

#[test]
fn errors_map_to_exceptions() {
    run(r#"
m = fcalg_py.load(DESCRIPTIONS + "/m2_q.json")
try:
    m.run("units")
    raise AssertionError("expected failure")
except fcalg_py.FcalgError as e:
    assert "RequiresFiniteField" in str(e)
for bad in [lambda: m.run("classify", ["missing"]), lambda: m.run("nope"), lambda: fcalg_py.loads("{")]:
    try:
        bad()
        raise AssertionError("expected failure")
    except ValueError:
        pass
"#);
}

#[test]
fn describe_round_trips() {
    run(r#"
a = fcalg_py.load(DESCRIPTIONS + "/q_s3.json")
b = fcalg_py.loads(a.describe())
assert b.dim == a.dim and b.labels == a.labels and b.elements() == a.elements()
assert json.loads(b.run("center"))["results"]["dim"] == 3
"#);
}
