import numpy as np
import pytest

from conftest import SMALL, engine, perm
from macdonald.engine import (
    NormalForm,
    make_context,
    nf_commutator,
    nf_inv,
    nf_mul,
    nf_pow,
    normal_form_group,
    theta,
)
from macdonald.valuation import Case, macdonald_polynomials


# -- contexts -------------------------------------------------------------------------


@pytest.mark.parametrize(
    "alpha,p,bounds,order",
    [(3, 2, (4, 2, 2), 16), (4, 3, (27, 9, 9), 2187), (7, 3, (81, 27, 27), 59049),
     (5, 2, (32, 8, 8), 2048), (6, 5, (125, 25, 25), 78125), (-1, 2, (4, 2, 2), 16)],
)
def test_context_examples(alpha, p, bounds, order):
    ctx = make_context(alpha, p)
    assert ctx.bounds == bounds and ctx.expected_order == order


@pytest.mark.parametrize("alpha", [3, 4, 5, 6, 7, 9, 10, 13, 17, 19, 28, -1, -3, -5, -8, -11, 82, 244])
def test_context_invariants(alpha):
    from sympy import factorint

    for p in factorint(abs(alpha - 1)):
        ctx = make_context(alpha, p)
        m = ctx.m
        assert ctx.alpha > 2 and (ctx.alpha - alpha) % ctx.order_A == 0
        assert ctx.i0 * ctx.j0 * ctx.k0 == ctx.expected_order
        assert (ctx.alpha * ctx.alpha_inv) % ctx.order_B == 1
        if ctx.case.case is Case.ONE:
            q = p**m
            assert ctx.bounds == (q**3, q**2, q**2) and ctx.expected_order == p ** (7 * m)
            assert (ctx.order_A, ctx.order_B, ctx.order_C) == (q**3, q**3, q**2)
        elif ctx.case.case is Case.TWO:
            assert ctx.bounds == (2 ** (3 * m - 1), 2 ** (2 * m - 1), 2 ** (2 * m - 1))
            assert ctx.expected_order == 2 ** (7 * m - 3)
            assert (ctx.order_A, ctx.order_C) == (2 ** (3 * m - 1), 2 ** (2 * m))
        else:
            assert ctx.bounds == (81, 27, 27) and (ctx.order_A, ctx.order_C) == (81, 27)


def test_context_rejects_non_divisor():
    with pytest.raises(ValueError):
        make_context(7, 5)


def test_engine_refuses_oversized_tables():
    with pytest.raises(MemoryError):
        normal_form_group(make_context(1 + 11**2, 11))


# -- multiplication ------------------------------------------------------------------


def test_nf_mul_examples():
    c = make_context(3, 2)
    assert nf_mul(c, (0, 1, 0), (1, 0, 0)) == NormalForm(3, 1, 1)  # BA = A^3 B C
    c = make_context(4, 3)
    g = macdonald_polynomials(4).gamma
    assert g == 171
    assert nf_mul(c, nf_pow(c, (1, 0, 0), g), nf_pow(c, (0, 1, 0), g)) == (0, 0, 0)


def test_nf_rejects_out_of_range():
    c = make_context(3, 2)
    with pytest.raises(ValueError):
        nf_mul(c, (4, 0, 0), (0, 0, 0))


@pytest.mark.parametrize("alpha,p", SMALL)
def test_engine_matches_permutation_oracle(alpha, p):
    """A^i B^j C^k -> the same word in the coset-table group is an isomorphism."""
    G, P = engine(alpha, p), perm(alpha, p)
    a, b = P.gen("A"), P.gen("B")
    c = P.commutator(a, b)
    i, j, k = G.decode(np.arange(G.order))
    phi = P.mul(P.mul(P.pow_array(np.full(G.order, a), i), P.pow_array(np.full(G.order, b), j)),
                P.pow_array(np.full(G.order, int(c)), k))
    assert np.unique(phi).size == G.order == P.order
    rng = np.random.default_rng(1)
    x, y = rng.integers(0, G.order, 20000), rng.integers(0, G.order, 20000)
    assert np.array_equal(phi[G.mul(x, y)], P.mul(phi[x], phi[y]))


@pytest.mark.parametrize("alpha,p", SMALL + [(6, 5), (7, 3)])
def test_group_laws_random(alpha, p):
    G = engine(alpha, p)
    rng = np.random.default_rng(2)
    x, y, z = (rng.integers(0, G.order, 50000) for _ in range(3))
    assert np.array_equal(G.mul(G.mul(x, y), z), G.mul(x, G.mul(y, z)))
    assert np.array_equal(G.mul(x, G.inv(x)), np.zeros_like(x))
    assert np.array_equal(G.mul(0, x), x)


def test_left_multiplication_permutes_normal_forms():
    G = engine(4, 3)
    allx = np.arange(G.order)
    for g in [G.gen("A"), G.gen("B"), G.C, 1234]:
        assert np.unique(G.mul(g, allx)).size == G.order


def test_derived_operations():
    c = make_context(7, 3)
    x, y = NormalForm(5, 7, 11), NormalForm(80, 1, 26)
    assert nf_mul(c, x, nf_inv(c, x)) == (0, 0, 0)
    assert nf_pow(c, x, 10**40 + 3) == nf_pow(c, x, (10**40 + 3) % 59049)
    assert nf_pow(c, x, -1) == nf_inv(c, x)
    lhs = nf_commutator(c, x, y)
    rhs = nf_mul(c, nf_mul(c, nf_inv(c, x), nf_inv(c, y)), nf_mul(c, x, y))
    assert lhs == rhs
    assert nf_commutator(c, (1, 0, 0), (0, 1, 0)) == (0, 0, 1)


def test_defining_relations_hold():
    for alpha, p in SMALL + [(6, 5), (7, 3)]:
        G = engine(alpha, p)
        A, B, C = G.gen("A"), G.gen("B"), G.C
        al = G.ctx.alpha
        assert G.conjugate(A, C) == G.pow(A, al)
        assert G.conjugate(B, G.inv(C)) == G.pow(B, al)


# -- theta --------------------------------------------------------------------------


def test_theta_examples():
    c = make_context(4, 3)
    assert theta(c, (0, 0, 0)) == (0, 0, 0)
    assert theta(c, (1, 0, 0)) == (0, 1, 0)
    assert theta(c, (0, 0, 1)) == nf_inv(c, (0, 0, 1))


def test_theta_is_an_involutive_automorphism():
    G = engine(3, 2)
    allx = np.arange(16)
    assert np.array_equal(G.theta(G.theta(allx)), allx)
    X, Y = np.meshgrid(allx, allx)
    assert np.array_equal(G.theta(G.mul(X, Y)), G.mul(G.theta(X), G.theta(Y)))
