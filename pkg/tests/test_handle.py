import itertools

import numpy as np
import pytest
from sympy.combinatorics import Permutation, PermutationGroup

from macdonald.analysis import center, exponent, nilpotency_class
from macdonald.handle import CayleyGroup, DirectProduct, Relabeled, TrivialGroup, from_callables, heisenberg


def test_heisenberg_mod_n():
    H = heisenberg(4)
    assert H.order == 64
    x, y = H.gens
    assert H.decode(H.commutator(x, y)) == (0, 0, 1)
    assert H.power(H.z, 4) == 0 and H.power(H.z, 2) != 0
    Q = heisenberg(4, 2)
    assert Q.order == 32 and Q.power(Q.z, 2) == 0
    with pytest.raises(ValueError):
        heisenberg(4, 3)


def test_heisenberg_matches_matrices():
    n = 3
    H = heisenberg(n)

    def mat(code):
        a, b, c = (int(v) for v in H.decode(code))
        return np.array([[1, a, c], [0, 1, b], [0, 0, 1]])

    for g, h in itertools.product(range(H.order), repeat=2):
        assert np.array_equal(mat(H.multiply(g, h)), (mat(g) @ mat(h)) % n)


def test_cayley_group_against_sympy():
    # dihedral group of order 8 acting on the square's vertices
    r, s = Permutation([1, 2, 3, 0]), Permutation([0, 3, 2, 1])
    elems = list(PermutationGroup([r, s]).generate())
    index = {e: i for i, e in enumerate(elems)}
    right = [np.array([index[e * g] for e in elems]) for g in (r, s)]
    # relabel so the identity has code 0
    e0 = index[Permutation(3)]
    order = [e0] + [i for i in range(8) if i != e0]
    relabel = np.empty(8, dtype=np.int64)
    relabel[order] = np.arange(8)
    perms = [relabel[p[order]] for p in right]
    G = CayleyGroup(perms, ("r", "s"))
    assert G.order == 8 and exponent(G) == 4 and center(G).order == 2 and nilpotency_class(G) == 2


def test_cayley_group_rejects_non_permutations():
    with pytest.raises(ValueError):
        CayleyGroup([np.array([0, 0, 1])])


def test_from_callables():
    G = from_callables(0, [1], lambda a, b: (a + b) % 12)
    assert G.order == 12 and exponent(G) == 12
    S3 = from_callables((0, 1, 2), [(1, 0, 2), (1, 2, 0)], lambda a, b: tuple(a[i] for i in b))
    assert S3.order == 6 and center(S3).order == 1


def test_direct_product():
    H, K = heisenberg(3), heisenberg(4, 2)
    D = DirectProduct(H, K)
    assert D.order == 27 * 32
    assert exponent(D) == 12
    # in Heis(Z/4)/<z^2> the corner is read mod 2, so (a, b) both even is central too
    assert center(D).order == 3 * 8
    assert nilpotency_class(D) == 2
    assert D.gen_names == ("x0", "y0", "x1", "y1")
    x = np.arange(D.order)
    assert np.array_equal(D.join(D.split(x)), x)


def test_trivial_and_relabeled():
    T = TrivialGroup()
    assert T.order == 1 and exponent(T) == 1
    H = heisenberg(5)
    R = Relabeled(H, [H.gens[1], H.gens[0]], ("u", "v"))
    assert R.gen("u") == H.gens[1]
    assert R.decode(R.gen("v")) == H.decode(H.gens[0])


def test_power_handles_huge_and_negative_exponents():
    H = heisenberg(7)
    g = 100
    assert H.power(g, 7**30 + 2) == H.power(g, 2)
    assert H.power(g, -1) == H.invert(g)
    n = np.array([0, 1, 5, 343])
    assert [int(v) for v in H.pow_array(np.full(4, g), n)] == [H.power(g, int(k)) for k in n]
