import json
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from meanlog.report import CSV_FIELDS, VerificationReport, compare, dumps, loads, to_csv


def test_compare_abs_and_rel():
    assert compare("a", "r", 1.0, 1.0 + 1e-10, 1e-9).passed
    assert not compare("a", "r", 1.0, 1.0 + 1e-8, 1e-9).passed
    assert compare("a", "r", 100.0, 101.0, 0.02, kind="rel").passed
    assert not compare("a", "r", 100.0, 103.0, 0.02, kind="rel").passed


def test_compare_exact_and_nonfinite():
    assert compare("a", "r", 3, 3, 0.0, kind="exact").passed
    assert not compare("a", "r", 3, 4, 0.0, kind="exact").passed
    assert not compare("a", "r", 1.0, math.nan, 1.0).passed


def test_report_validation():
    with pytest.raises(ValueError):
        VerificationReport("a", "r", 1.0, 1.0, 0.0, True, kind="loose")
    with pytest.raises(ValueError):
        VerificationReport("a", "r", 1.0, 1.0, 0.0, True, runtime_ms=-1)


def test_error_property():
    assert compare("a", "r", 2.0, 2.5, 1.0).error == 0.5
    assert compare("a", "r", 2.0, 2.5, 1.0, kind="rel").error == 0.25
    assert VerificationReport("a", "r", "< 1", 0.5, 1.0, True, "bound").error is None


finite = st.floats(allow_nan=False, allow_infinity=False)


@given(st.text(max_size=20), finite, finite, st.floats(0, 1e6), st.integers(0, 10 ** 6),
       st.dictionaries(st.text(max_size=5), st.one_of(finite, st.integers(), st.text(max_size=5))))
def test_json_round_trip(name, expected, computed, tol, ms, details):
    r = VerificationReport(name, "ref", expected, computed, tol, abs(computed - expected) <= tol,
                           "abs", ms, details)
    assert loads(dumps([r])) == [r]


def test_dumps_is_deterministic_and_sorted():
    rs = [compare("b", "r", 1.0, 1.0, 0.0, x=1, a=2), compare("a", "r", 2.0, 3.0, 0.5)]
    text = dumps(rs)
    assert text == dumps(rs)
    payload = json.loads(text)
    assert payload["passed"] is False
    assert [r["check_name"] for r in payload["reports"]] == ["b", "a"]
    assert list(payload["reports"][0]["details"]) == ["a", "x"]


def test_dumps_handles_numpy_and_infinity():
    import numpy as np
    r = VerificationReport("a", "r", 1.0, 1.0, 0.0, True, details={"n": np.int64(3), "t": math.inf})
    d = json.loads(dumps([r]))["reports"][0]["details"]
    assert d == {"n": 3, "t": "inf"}


def test_csv_export():
    text = to_csv([compare("a,b", "r", 0.1, 0.1, 0.0, kind="exact")])
    lines = text.splitlines()
    assert lines[0] == ",".join(CSV_FIELDS)
    assert lines[1].startswith('"a,b",r,0.1,0.1,0.0,exact,True,')
