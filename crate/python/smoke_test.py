"""Smoke test for the fcalg_py extension.

Build and install first:
    pip install --no-build-isolation -e crates/py
"""

import json
import pathlib

import fcalg_py

ROOT = pathlib.Path(__file__).resolve().parent.parent
DESCRIPTIONS = ROOT / "descriptions"


def report(alg, command, *args):
    return json.loads(alg.run(command, list(args)))


def main():
    c2 = fcalg_py.load(str(DESCRIPTIONS / "f2_c2.json"))
    assert c2.dim == 2 and c2.radical_dim() == 1
    fc = report(c2, "fc")
    assert fc["results"]["unit_group_order"] == 2
    assert fc["results"]["delta_u_equals_u"] and fc["results"]["nabla_equals_r"]

    m2 = fcalg_py.load(str(DESCRIPTIONS / "m2_q.json"))
    assert m2.radical_dim() == 0 and m2.center_dim() == 1
    w = report(m2, "witnesses", "a", "g", "3", "0,3,4")
    assert w["results"]["conjugates_text"] == ["2*E12", "1/2*E12", "2/3*E12"]
    assert report(m2, "sandwich")["results"]["estimate"]["status"] == "exact"

    gl2 = fcalg_py.load(str(DESCRIPTIONS / "m2_f2.json"))
    units = report(gl2, "units")["results"]
    assert units["order"] == 6 and sorted(units["class_sizes"]) == [1, 2, 3]

    again = fcalg_py.loads(c2.describe())
    assert again.labels == c2.labels and again.dim == c2.dim

    try:
        m2.run("units")
    except fcalg_py.FcalgError as e:
        assert "RequiresFiniteField" in str(e)
    else:
        raise AssertionError("units over Q must fail")

    try:
        m2.run("classify", ["missing"])
    except ValueError as e:
        assert "UnknownElement" in str(e)
    else:
        raise AssertionError("unknown element must fail")

    try:
        import jsonschema
    except ImportError:
        jsonschema = None
    if jsonschema is not None:
        schema = json.loads((ROOT / "schema" / "algebra-description.schema.json").read_text())
        for path in sorted(DESCRIPTIONS.glob("*.json")):
            jsonschema.validate(json.loads(path.read_text()), schema)
        report_schema = json.loads((ROOT / "schema" / "report.schema.json").read_text())
        jsonschema.validate(fc, report_schema)

    print("fcalg_py smoke test passed")


if __name__ == "__main__":
    main()
