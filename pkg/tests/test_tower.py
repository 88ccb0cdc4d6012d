import numpy as np
import pytest

from conftest import engine, tower
from macdonald.analysis import exponent, nilpotency_class
from macdonald.engine import (
    assemble_tower,
    build_tower,
    cross_check,
    cross_check_report,
    make_context,
    tower_spec,
    tower_verify,
    with_trivial_anchor,
)

CONTEXTS = [(4, 3), (3, 2), (5, 2), (7, 3), (-1, 2), (6, 5), (13, 3), (10, 3)]


@pytest.mark.parametrize(
    "alpha,p,base,levels",
    [
        (4, 3, 81, [81, 243, 729, 2187]),
        (3, 2, 4, [4, 4, 8, 16]),
        (5, 2, 64, [64, 128, 512, 2048]),
        (7, 3, 81, [81, 729, 2187, 6561, 19683, 59049]),
        (6, 5, 625, [625, 3125, 15625, 78125]),
    ],
)
def test_level_orders(alpha, p, base, levels):
    T = tower(alpha, p)
    assert T.base.order == base
    assert T.step_orders() == levels
    assert T.order == base * int(np.prod([s.n for s in T.spec.steps]))


@pytest.mark.parametrize("alpha,p", CONTEXTS)
def test_tower_verify_passes(alpha, p):
    T = tower(alpha, p) if (alpha, p) in {(4, 3), (3, 2), (5, 2), (7, 3), (6, 5)} else build_tower(alpha, p)
    rep = tower_verify(T)
    assert rep.passed, str(rep)
    names = {c.name for c in rep.checks}
    assert {"relations preserved", "fixes anchor"} <= names
    assert T.order == make_context(alpha, p).expected_order


@pytest.mark.parametrize("alpha,p", [(3, 2), (4, 3), (5, 2), (7, 3)])
def test_cross_check_confirms_engine(alpha, p):
    assert cross_check(make_context(alpha, p), tower(alpha, p))


def test_cross_check_exhaustive_report():
    rep = cross_check_report(make_context(4, 3), tower(4, 3))
    assert rep.passed and len(rep.checks) >= 3


def test_cross_check_rejects_mismatch():
    assert not cross_check(make_context(4, 3), tower(3, 2))


def test_case1_odd_k_is_normalised():
    # alpha = 4: k = 1 is odd, so the recipe runs with alpha + 27
    assert tower_spec(4, 3).alpha == 31
    for alpha, p in [(4, 3), (6, 5), (10, 3), (8, 7)]:
        beta, q = tower_spec(alpha, p).alpha, p ** make_context(alpha, p).m
        assert ((beta - 1) // q) % 2 == 0 and (beta - alpha) % q**3 == 0


def test_trivial_anchor_is_detected():
    bad = assemble_tower(with_trivial_anchor(tower_spec(3, 2)), strict=False)
    assert bad.order == 16  # the broken recipe still yields a group of order 16
    rep = tower_verify(bad)
    assert not rep.passed
    assert any("relator" in c.name for c in rep.failures())


def test_case1_recipe_on_case3_gives_proper_image():
    T = build_tower(7, 3, construction="case1")
    assert T.order == 3**7
    assert tower_verify(T).passed


def test_tower_handle_invariants_match_engine():
    for alpha, p in [(3, 2), (4, 3), (5, 2)]:
        H, G = tower(alpha, p).handle(), engine(alpha, p)
        assert (H.order, exponent(H), nilpotency_class(H)) == (G.order, exponent(G), nilpotency_class(G))
