import json
import os
import pathlib

import pytest

import ordfix


def instance_dir():
    env = os.environ.get("ORDFIX_INSTANCE_DIR")
    if env:
        return pathlib.Path(env)
    return pathlib.Path(__file__).resolve().parents[2] / "instances"


def test_gallery_names():
    names = ordfix.gallery_names()
    assert "max-half" in names
    assert "metric-half" in names


def test_run_gallery_max_half():
    code, text = ordfix.run_gallery("max-half")
    assert code == 0
    report = json.loads(text)
    assert report["verdict"].startswith("fixed point")
    assert report["solves"][0]["iterations"] == 31
    assert float(report["solves"][0]["fixed_point"]) <= 1e-9


def test_load_and_certify_fixture():
    inst = ordfix.load_instance(str(instance_dir() / "max_half.json"))
    assert inst.label == "max-half"
    inst.samples = 500
    code, report = ordfix.certify_report(inst)
    assert code == 0
    names = {c["name"]: c["status"] for c in report["certificates"]}
    assert names["pm.p1"] == "pass"
    assert names["contraction.weak"] == "pass"


def test_solve_with_extra_starts():
    inst = ordfix.gallery_instance("max-half")
    inst.samples = 500
    code, report = ordfix.solve_report(inst, extra_starts=[10.0, 123.4])
    assert code == 0
    assert len(report["solves"]) == 3
    assert "agreed across 3 starts" in report["verdict"]


def test_eval_expr():
    assert ordfix.eval_expr("min(x, y) + 1", x=2.0, y=5.0) == 3.0
    assert ordfix.eval_expr("t / 2", t=9.0) == 4.5
    with pytest.raises(ValueError):
        ordfix.eval_expr("max(x,,y)", x=1.0, y=2.0)
    with pytest.raises(ValueError):
        ordfix.eval_expr("x", y=1.0)  # unbound variable


def test_bad_document_maps_to_value_error():
    with pytest.raises(ValueError):
        ordfix.parse_instance_text("{}")


def test_instance_json_roundtrip():
    inst = ordfix.gallery_instance("finite-chain")
    text = ordfix.instance_json(inst)
    again = ordfix.parse_instance_text(text)
    assert ordfix.instance_json(again) == text
