import csv
import io

import numpy as np
import pytest
from sympy.combinatorics import Permutation, PermutationGroup

from conftest import table
from macdonald.analysis import center, exponent
from macdonald.enumerator import STRATEGIES, coset_enumerate, permutation_handle, table_to_csv
from macdonald.presentation import macdonald_presentation, parse_presentation, sylow_presentation


def scan_ok(t, spec):
    """Independent check: every relator scanned from every coset returns to it."""
    col = {}
    for i, g in enumerate(t.generators):
        col[(g, 1)], col[(g, -1)] = 2 * i, 2 * i + 1
    T = t.table
    start = np.arange(T.shape[0])
    for rel in spec.relators:
        c = start
        for g, e in rel:
            for _ in range(abs(e)):
                c = T[c, col[(g, 1 if e > 0 else -1)]]
        if not np.array_equal(c, start):
            return False
    return True


def sympy_order(t):
    perms = [Permutation(list(t.table[:, 2 * i])) for i in range(len(t.generators))]
    return PermutationGroup(perms).order()


@pytest.mark.parametrize("alpha,p,n", [(3, 2, 16), (4, 3, 2187), (-1, 2, 16), (5, 2, 2048)])
def test_trivial_subgroup_plain(alpha, p, n):
    spec = sylow_presentation(alpha, p)
    t = coset_enumerate(spec)
    assert t.complete and t.n_cosets == n
    assert (t.table >= 0).all()
    assert scan_ok(t, spec)
    assert sympy_order(t) == n


def test_macdonald_presentation_of_three():
    t = coset_enumerate(macdonald_presentation(3))
    assert t.complete and t.n_cosets == 16


def test_nontrivial_subgroup_index():
    t = coset_enumerate(sylow_presentation(4, 3), ["A"])
    assert t.complete and t.n_cosets == 81 and not t.subgroup_trivial


@pytest.mark.parametrize("alpha,p,n", [(3, 2, 16), (4, 3, 2187), (5, 2, 2048), (6, 5, 78125), (7, 3, 59049)])
def test_lifted_enumeration(alpha, p, n):
    t = table(alpha, p)
    assert t.complete and t.n_cosets == n
    assert scan_ok(t, sylow_presentation(alpha, p))
    if n <= 2187:  # Schreier-Sims in sympy is too slow beyond this degree
        assert sympy_order(t) == n


def test_lifted_table_agrees_with_plain_table():
    spec = sylow_presentation(4, 3)
    for t in (coset_enumerate(spec), coset_enumerate(spec, via="A"), coset_enumerate(spec, via="B A")):
        assert scan_ok(t, spec)
        assert t.n_cosets == 2187


def test_overflow_is_reported_not_wrong():
    t = coset_enumerate(sylow_presentation(4, 3), max_cosets=500)
    assert t.status == "overflow" and not t.complete
    with pytest.raises(ValueError):
        permutation_handle(t)
    t = coset_enumerate(sylow_presentation(6, 5), via="A", max_cosets=1000)
    assert t.status == "overflow"


def test_determinism():
    spec = sylow_presentation(5, 2)
    a, b = coset_enumerate(spec), coset_enumerate(spec)
    assert np.array_equal(a.table, b.table) and a.defined == b.defined


def test_argument_errors():
    spec = sylow_presentation(3, 2)
    with pytest.raises(ValueError):
        coset_enumerate(spec, max_cosets=0)
    with pytest.raises(ValueError):
        coset_enumerate(spec, strategy="felsch")
    with pytest.raises(ValueError):
        coset_enumerate(spec, ["B"], via="A")
    assert STRATEGIES == ("hlt",)


def test_infinite_cyclic_via_is_refused():
    # <A | > : no relation ever bounds the order of A
    with pytest.raises(ValueError):
        coset_enumerate(parse_presentation("gens: A B\nB\n"), via="A")


def test_permutation_handle_examples():
    P = permutation_handle(table(3, 2))
    assert P.order == 16 and exponent(P) == 8
    P = permutation_handle(table(4, 3))
    assert center(P).order == 3


def test_one_coset_table_gives_trivial_handle():
    t = coset_enumerate(parse_presentation("gens: A B\nA\nB\n"))
    assert t.n_cosets == 1
    assert permutation_handle(t).order == 1


def test_csv_export():
    t = coset_enumerate(sylow_presentation(3, 2))
    rows = list(csv.reader(io.StringIO(table_to_csv(t))))
    assert rows[0] == ["coset", "A", "A^-1", "B", "B^-1"]
    assert len(rows) == 17
    assert [int(v) for v in rows[1][1:]] == list(t.table[0])
