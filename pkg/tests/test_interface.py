import json
import math

import pytest
from hypothesis import given, settings, strategies as st

from macdonald import GlobalReport, direct_formula, predict_global, verify
from macdonald.interface import FACTOR_LIMIT, sylow_summary


@pytest.mark.parametrize(
    "alpha,order,cls,exp",
    [
        (3, 16, 3, 8),
        (-1, 16, 3, 8),
        (7, 944784, 7, 648),
        (13, 4478976, 5, 864),
        (4, 2187, 5, 27),
        (5, 2048, 5, 32),
        (6, 78125, 5, 125),
    ],
)
def test_predict_global_examples(alpha, order, cls, exp):
    r = predict_global(alpha)
    assert (r.order, r.nilpotency_class, r.exponent) == (order, cls, exp)


def test_alpha13_arithmetic():
    assert 2**11 * 3**7 == 4478976 and math.lcm(32, 27) == 864


def test_report_fields():
    r = predict_global(7)
    assert isinstance(r, GlobalReport)
    assert r.factorization == ((2, 1), (3, 1)) and not r.three_admissible
    d = r.to_dict()
    assert list(d) == ["alpha", "factorization", "three_admissible", "sylow", "global"]
    assert d["global"] == {"order": 944784, "class": 7, "exponent": 648}
    assert [s["case"] for s in d["sylow"]] == ["Case2", "Case3"]


def test_direct_formula_matches_sylow_assembly_on_range():
    for alpha in range(-500, 501):
        if alpha in (0, 1, 2):
            continue
        r = predict_global(alpha)
        assert direct_formula(alpha) == (r.order, r.nilpotency_class, r.exponent)
        assert r.order == math.prod(s.order for s in r.sylow)
        assert r.exponent == math.lcm(*(s.exponent for s in r.sylow))


@given(st.integers(-10**8, 10**8).filter(lambda a: a not in (0, 1, 2)))
@settings(max_examples=300)
def test_direct_formula_matches_sylow_assembly_random(alpha):
    r = predict_global(alpha)
    assert direct_formula(alpha) == (r.order, r.nilpotency_class, r.exponent)


def test_sylow_summary_cases():
    s = sylow_summary(19, 3)  # Case 1, m = 2
    assert (s.order, s.nilpotency_class, s.exponent) == (3**14, 5, 3**6)
    s = sylow_summary(9, 2)  # Case 2, m = 3
    assert (s.order, s.nilpotency_class, s.exponent) == (2**18, 5, 2**8)


@pytest.mark.parametrize("alpha", [0, 1, 2])
def test_excluded_alpha(alpha):
    with pytest.raises(ValueError):
        predict_global(alpha)


def test_large_alpha_needs_factorization():
    alpha = 2**40 * 3 + 1
    assert alpha - 1 > FACTOR_LIMIT
    with pytest.raises(ValueError):
        predict_global(alpha)
    r = predict_global(alpha, {2: 40, 3: 1})
    # (alpha - 1)/3 = 2^40 = 1 mod 3, so the 3-part is Case 1
    assert r.order == 2 ** (7 * 40 - 3) * 3**7
    with pytest.raises(ValueError):
        predict_global(alpha, {2: 39, 3: 1})


def test_fast_verify_large_context_skips_engine():
    v = verify(1 + 11**2)
    assert v.passed
    statuses = {c.name: c.status for c in v.sylow[0].checks}
    assert statuses["engine"] == "skipped"


@pytest.mark.parametrize("alpha", [3, -1, 4, 5])
def test_deep_verify_small(alpha):
    v = verify(alpha, "deep")
    assert v.passed, str(v)
    names = {c.name for s in v.sylow for c in s.checks}
    assert {"coset enumeration", "oracle triangle", "isomorphism"} <= names


def test_deep_verify_respects_cap():
    v = verify(7, "deep", cap=10**4)
    j3 = v.sylow[1]
    assert j3.passed
    assert "skipped" in {c.status for c in j3.checks}


def test_json_schema():
    v = verify(3, "fast")
    d = json.loads(v.to_json())
    assert list(d) == ["alpha", "factorization", "sylow", "global"]
    assert d["factorization"] == [{"p": 2, "m": 1}]
    s = d["sylow"][0]
    assert list(s) == ["p", "case", "order", "class", "exponent", "checks"]
    assert all(set(c) == {"name", "theorem", "status"} for c in s["checks"])
    assert {c["status"] for c in s["checks"]} <= {"pass", "fail", "skipped"}


def test_verify_rejects_bad_depth():
    with pytest.raises(ValueError):
        verify(3, "medium")
