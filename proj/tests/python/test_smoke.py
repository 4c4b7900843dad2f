from fractions import Fraction
from pathlib import Path

import pytest

import rvvport

ROOT = Path(__file__).resolve().parents[2]
CORPUS = ROOT / "corpus"


def test_vector_types():
    t = rvvport.parse_vector_type("vfloat32m2_t")
    assert t == {"name": "vfloat32m2_t", "kind": "float", "sew": 32, "lmul": Fraction(2), "fields": 1}
    assert rvvport.parse_vector_type("vint64mf2_t") is None
    names = rvvport.vector_type_names()
    assert len(names) == 292
    assert all(rvvport.parse_vector_type(n)["name"] == n for n in names)
    assert rvvport.register_footprint("vint8mf4_t") == Fraction(1, 4)
    assert rvvport.register_footprint("vint8mf4_t", "physical") == 1
    assert rvvport.register_footprint("vuint8m2x2_t") == 4


def test_analyze_native_reference():
    src = (CORPUS / "vec_add_f32" / "native_rvv.c").read_text()
    assert rvvport.list_functions(src) == ["vec_add_f32"]
    report = rvvport.analyze(src)
    assert Fraction(report["pressure"]) == 3
    assert report["spills_predicted"] is False
    rows = rvvport.liveness(src)
    peak = max(len(r["live_in"]) + len(set(r["live_out"]) - set(r["live_in"])) for r in rows)
    assert peak == 3


def test_parse_error_carries_location():
    with pytest.raises(rvvport.ParseError, match="line 3"):
        rvvport.analyze("void f(void)\n{\n    goto out;\nout:\n    return;\n}\n")


def test_metrics():
    assert rvvport.pass_rate(32, 34) == Fraction(1600, 17)
    rows = [(True, 1)] * 3 + [(True, 2)] * 31
    assert rvvport.efficiency_score(rows) == Fraction(309, 10)
    assert rvvport.efficiency_score(rows + [(False, 10)]) == Fraction(309, 10)
    assert rvvport.efficiency_score(rows + [(False, 10)], include_failed=True) == Fraction(31)
    assert rvvport.speedup(593, 100) == Fraction(593, 100)
    with pytest.raises(rvvport.ContractError):
        rvvport.pass_rate(0, 0)


def test_extract_code():
    assert rvvport.extract_code("Here:\n```c\nint x;\n```\n") == "int x;\n"
    with pytest.raises(rvvport.NoCodeError):
        rvvport.extract_code("no code here")


def test_load_corpus():
    cases, errors = rvvport.load_corpus(str(CORPUS))
    assert errors == []
    assert [c["id"] for c in cases][:2] == ["deinterleave_u8", "dot_f32"]
    with pytest.raises(rvvport.CorpusError):
        rvvport.load_corpus(str(ROOT / "no-such-dir"))
