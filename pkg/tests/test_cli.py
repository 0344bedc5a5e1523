import json
import subprocess
import sys
from importlib import resources

import pytest

from divfan.cli import parse_function, parse_vector, run
from divfan.document import Document, canonical_dumps, library
from divfan.errors import DocumentError
from divfan.exact import QQ


def call(*argv):
    code, report = run(list(argv))
    return code, json.loads(canonical_dumps(report))


def test_aut():
    code, rep = call("aut", "--toric", "hirzebruch_r1")
    assert code == 0
    assert rep["group_order"] == 2
    assert rep["generators"] == [[[-1, 0], [1, 1]]]


def test_eval():
    code, rep = call("eval", "--ppdivisor", "D_omega2_r1", "--m", "1")
    assert code == 0
    assert rep["divisor"] == [{"point": "inf", "coeff": "-1/2"}]


def test_missing_document():
    code, rep = call("validate", "missing.json")
    assert code == 2
    assert "verdict" not in rep and rep["error"]["type"] == "DocumentError"


def test_bad_documents(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    assert call("validate", str(p))[0] == 2
    p.write_text(json.dumps({"version": 2}))
    assert call("validate", str(p))[0] == 2
    p.write_text(json.dumps({"version": 1, "fans": {"x": {"members": ["nope"]}}}))
    assert call("validate", str(p))[0] == 2


def test_unknown_name_lists_alternatives():
    code, rep = call("eval", "--ppdivisor", "nope", "--m", "1")
    assert code == 2 and "D_omega1_r1" in rep["error"]["context"]["available"]


def test_missing_flag_is_an_error():
    code, rep = call("eval", "--ppdivisor", "D_omega1_r1")
    assert code == 2 and "--m" in rep["error"]["message"]


def test_report_fields_and_determinism():
    a = call("validate", "--fan", "F1")[1]
    b = call("validate", "--fan", "F1", "--jobs", "3")[1]
    for k in ("tool_version", "verdict", "witness", "timing_ms"):
        assert k in a
    a.pop("timing_ms"), b.pop("timing_ms")
    assert a == b


def test_separated_and_face():
    code, rep = call("separated", "--fan", "nonseparated")
    assert code == 1 and rep["witness"]["mu_of_intersection"]["vertices"] == [["1"]]
    assert call("separated", "--fan", "F1")[0] == 0
    code, rep = call("face", "--sub", "D_omega1_r1&D_omega2_r1", "--super", "D_omega1_r1")
    assert code == 0 and rep["witness"]
    assert call("face", "--sub", "P3_D0", "--super", "P3_D1")[0] == 1


def test_bound_from_environment(monkeypatch):
    monkeypatch.setenv("DIVFAN_BOUND", "2")
    assert call("face", "--sub", "P3_D0", "--super", "P3_D0")[1]["bound"] == 2


def test_localize():
    code, rep = call("localize", "--ppdivisor", "D_omega1_r1", "--m", "1", "--f", "1/t")
    assert code == 0
    coeffs = rep["localized"]["coeffs"]
    assert {"point": "inf", "empty": True} in coeffs
    assert call("localize", "--ppdivisor", "D_omega1_r1", "--m", "1", "--f", "t")[0] == 2


def test_qp_and_dump(tmp_path):
    out = tmp_path / "lp.json"
    code, rep = call("qp", "--fan", "F1", "--dump-lp", str(out))
    assert code == 0 and rep["witness"]["epsilon"] != "0"
    lp = json.loads(out.read_text())
    assert len(lp["variables"]) == rep["program"]["variables"]
    assert call("qp", "--toric", "hirzebruch_r2")[0] == 0


def test_actions():
    assert call("action-verify", "--action", "p3_literal")[0] == 1
    code, rep = call("action-verify", "--action", "p3_swap")
    assert code == 0 and rep["assignments"]["c1"]["P3_D0"] == "P3_D1"
    assert call("action-verify", "--fan", "F1", "--action", "p3_swap")[0] == 2


def test_orbit_and_descent():
    code, rep = call("orbit", "--action", "s4_transport", "--translates-only")
    assert code == 0 and rep["maximal"] == 96 and rep["group_order"] == 24
    code, rep = call("orbit", "--action", "p3_swap", "--member", "P3_D0")
    assert rep["orbits"]["P3_D0"]["members"] == ["P3_D0", "P3_D0&P3_D1", "P3_D1"]
    assert call("descent", "--hom", "hirzebruch_r1_swap")[0] == 0
    code, rep = call("descent", "--hom", "hirzebruch_r1_trivial")
    assert code == 0 and rep["homomorphisms_into_aut"] == 1
    assert call("descent", "--action", "p3_swap")[0] == 0
    assert call("descent", "--action", "prism_rotation")[0] == 1


def test_selftest():
    code, rep = call("selftest", "--scale", "0.01")
    assert code == 0 and len(rep["suites"]) == 6


def test_console_script():
    proc = subprocess.run([sys.executable, "-m", "divfan.cli", "aut", "--toric", "p1"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["group_order"] == 2


def test_parsers():
    assert parse_vector("1, -1/2") == (1, -0.5)
    f = parse_function("(t-1)^2/t", QQ)
    assert f.factors == {QQ.element(1): 2, QQ.element(0): -1}
    assert parse_function("-3", QQ).constant == QQ.element(-3)
    with pytest.raises(Exception):
        parse_function("t+", QQ)


def test_library_round_trip():
    text = resources.files("divfan").joinpath("data/library.json").read_text(encoding="utf-8")
    assert library().dumps() == text
    assert Document.loads(text).dumps() == text


def test_built_document_round_trip():
    from divfan.fixtures import build_library
    doc = build_library()
    text = doc.dumps()
    assert Document.loads(text).dumps() == text


def test_dangling_reference():
    doc = json.loads(library().dumps())
    doc["actions"]["p3_swap"]["fan"] = "nowhere"
    with pytest.raises(DocumentError):
        Document.from_json(doc)
