"""Structure computations over dense group handles.

Subgroups are boolean masks over the element codes of their parent, so
centralizers, series terms and power subgroups are a handful of vectorised
multiplications over the whole group.  Everything refuses groups larger than
the enumeration cap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from ..handle import GroupHandle, as_codes, heisenberg
from ..valuation import factorize

__all__ = [
    "DEFAULT_CAP",
    "CapExceeded",
    "NotNilpotent",
    "NotAbelian",
    "HomomorphismError",
    "NotHomomorphism",
    "NotSurjective",
    "Subgroup",
    "QuotientGroup",
    "enumerate_group",
    "whole",
    "trivial",
    "subgroup_generated",
    "normal_closure",
    "centralizer",
    "center",
    "normalizer",
    "commutator_subgroup",
    "upper_central_series",
    "lower_central_series",
    "nilpotency_class",
    "element_orders",
    "element_order",
    "exponent",
    "power_subgroup",
    "quotient",
    "product_set",
    "is_abelian",
    "abelian_invariants",
    "epimorphism_kernel",
    "heisenberg",
]

DEFAULT_CAP = 10**6


class CapExceeded(OverflowError):
    """The group is larger than the enumeration cap."""


class NotNilpotent(ValueError):
    pass


class NotAbelian(ValueError):
    pass


class HomomorphismError(ValueError):
    pass


class NotHomomorphism(HomomorphismError):
    pass


class NotSurjective(HomomorphismError):
    pass


def _check_cap(G: GroupHandle, cap: int):
    if G.order > cap:
        raise CapExceeded(f"group of order {G.order} exceeds the enumeration cap {cap}")


@dataclass(eq=False)
class Subgroup:
    """A subgroup of ``group`` as a membership mask plus generating witnesses."""

    group: GroupHandle = field(repr=False)
    mask: np.ndarray = field(repr=False)
    witnesses: tuple = ()

    @property
    def order(self) -> int:
        return int(self.mask.sum())

    @property
    def elements(self) -> np.ndarray:
        return np.flatnonzero(self.mask)

    def __contains__(self, g) -> bool:
        return bool(self.mask[int(g)])

    def __len__(self):
        return self.order

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.group is other.group and np.array_equal(self.mask, other.mask)

    def __le__(self, other: "Subgroup") -> bool:
        return bool(np.all(other.mask[self.mask]))

    def __and__(self, other: "Subgroup") -> "Subgroup":
        return subgroup_generated(self.group, np.flatnonzero(self.mask & other.mask))

    def __repr__(self):
        return f"<Subgroup order={self.order} of {self.group!r}>"


def enumerate_group(G: GroupHandle, cap: int = DEFAULT_CAP) -> np.ndarray:
    """All elements, reached by breadth-first closure over the generators."""
    _check_cap(G, cap)
    mask = _closure(G, G.gens, np.zeros(G.order, dtype=bool))
    if not mask.all():
        raise ValueError("generators do not reach every element of the handle")
    return np.flatnonzero(mask)


def whole(G: GroupHandle) -> Subgroup:
    return Subgroup(G, np.ones(G.order, dtype=bool), tuple(int(g) for g in G.gens))


def trivial(G: GroupHandle) -> Subgroup:
    mask = np.zeros(G.order, dtype=bool)
    mask[0] = True
    return Subgroup(G, mask, ())


def _closure(G, gens, start_mask):
    """Smallest subgroup containing the subgroup ``start_mask`` and ``gens``.

    In a finite group closing under right multiplication by the generators
    already gives a subgroup."""
    gens = as_codes(gens).ravel()
    mask = start_mask.copy()
    mask[0] = True
    frontier = np.flatnonzero(mask)
    while frontier.size and gens.size:
        nxt = G.mul(frontier[:, None], gens[None, :]).ravel()
        nxt = np.unique(nxt[~mask[nxt]])
        mask[nxt] = True
        frontier = nxt
    return mask


def subgroup_generated(G: GroupHandle, gens: Iterable, cap: int = DEFAULT_CAP) -> Subgroup:
    """``<gens>``; the witnesses are a greedily thinned generating set."""
    cand = np.unique(as_codes(list(gens) if not isinstance(gens, np.ndarray) else gens).ravel())
    mask = np.zeros(G.order, dtype=bool)
    mask[0] = True
    picked = []
    while True:
        cand = cand[~mask[cand]]
        if cand.size == 0:
            break
        g = int(cand[0])
        picked.append(g)
        mask = _closure(G, picked, np.zeros(G.order, dtype=bool))
        if mask.sum() > cap:
            raise CapExceeded(f"subgroup exceeds the enumeration cap {cap}")
    return Subgroup(G, mask, tuple(picked))


def normal_closure(G: GroupHandle, gens: Iterable, cap: int = DEFAULT_CAP) -> Subgroup:
    H = subgroup_generated(G, gens, cap)
    while True:
        w = as_codes(H.witnesses)
        if w.size == 0:
            return H
        conj = G.conjugate(w[:, None], G.gens[None, :]).ravel()
        if np.all(H.mask[conj]):
            return H
        H = subgroup_generated(G, np.concatenate([w, conj]), cap)


def centralizer(G: GroupHandle, g, cap: int = DEFAULT_CAP) -> Subgroup:
    """Elements commuting with ``g`` (an element) or with every element of a list."""
    _check_cap(G, cap)
    X = G.all_elements()
    mask = np.ones(G.order, dtype=bool)
    for h in np.atleast_1d(as_codes(g)):
        mask &= G.mul(X, h) == G.mul(h, X)
    return subgroup_generated(G, np.flatnonzero(mask), cap)


def center(G: GroupHandle, cap: int = DEFAULT_CAP) -> Subgroup:
    return centralizer(G, G.gens, cap)


def normalizer(G: GroupHandle, H: Subgroup, cap: int = DEFAULT_CAP) -> Subgroup:
    _check_cap(G, cap)
    X = G.all_elements()
    mask = np.ones(G.order, dtype=bool)
    for h in H.witnesses:
        mask &= H.mask[G.conjugate(h, X)]
    return subgroup_generated(G, np.flatnonzero(mask), cap)


def commutator_subgroup(G: GroupHandle, H: Subgroup, K: Subgroup | None = None, cap: int = DEFAULT_CAP) -> Subgroup:
    """``[H, K]`` for normal subgroups (``K`` defaults to the whole group).

    Commutators of every element of ``H`` with the witnesses of ``K`` generate
    ``[H, K]`` up to normal closure, which is taken explicitly."""
    K = whole(G) if K is None else K
    hs = H.elements
    ks = as_codes(K.witnesses)
    if hs.size == 0 or ks.size == 0:
        return trivial(G)
    comms = np.unique(G.commutator(hs[:, None], ks[None, :]).ravel())
    return normal_closure(G, comms, cap)


def upper_central_series(G: GroupHandle, cap: int = DEFAULT_CAP) -> list:
    """``[Z_0, Z_1, ..., Z_c = G]``.  ``g`` lies in ``Z_{i+1}`` iff its commutator
    with every generator lies in ``Z_i``, i.e. ``g Z_i`` is central in ``G/Z_i``."""
    _check_cap(G, cap)
    X = G.all_elements()
    series = [trivial(G)]
    while series[-1].order < G.order:
        Z = series[-1]
        mask = np.ones(G.order, dtype=bool)
        for s in G.gens:
            mask &= Z.mask[G.commutator(X, s)]
        if np.array_equal(mask, Z.mask):
            raise NotNilpotent(f"upper central series stalls at order {Z.order} < {G.order}")
        series.append(subgroup_generated(G, np.flatnonzero(mask), cap))
    return series


def lower_central_series(G: GroupHandle, cap: int = DEFAULT_CAP) -> list:
    """``[gamma_1 = G, gamma_2, ..., gamma_{c+1} = 1]``."""
    _check_cap(G, cap)
    series = [whole(G)]
    while series[-1].order > 1:
        nxt = commutator_subgroup(G, series[-1], None, cap)
        if nxt.order == series[-1].order:
            raise NotNilpotent(f"lower central series stalls at order {nxt.order}")
        series.append(nxt)
    return series


def nilpotency_class(G: GroupHandle, cap: int = DEFAULT_CAP) -> int:
    upper = upper_central_series(G, cap)
    lower = lower_central_series(G, cap)
    if len(upper) != len(lower):  # pragma: no cover - a theorem, kept as a guard
        raise AssertionError("upper and lower central series have different lengths")
    return len(upper) - 1


def element_orders(G: GroupHandle, elements=None, cap: int = DEFAULT_CAP) -> np.ndarray:
    """Orders of ``elements`` (default: all), one prime of ``|G|`` at a time."""
    if elements is None:
        _check_cap(G, cap)
    X = G.all_elements() if elements is None else as_codes(elements)
    n = G.order
    orders = np.ones(X.shape, dtype=np.int64)
    for q, a in factorize(n).items():
        h = G.pow(X, n // q**a)  # the q-part of each element
        for _ in range(a):
            live = h != 0
            if not live.any():
                break
            orders[live] *= q
            h = G.pow(h, q)
    return orders


def element_order(G: GroupHandle, g: int) -> int:
    return int(element_orders(G, [int(g)])[0])


def exponent(G: GroupHandle, cap: int = DEFAULT_CAP) -> int:
    return math.lcm(*np.unique(element_orders(G, cap=cap)).tolist())


def power_subgroup(G: GroupHandle, n: int, cap: int = DEFAULT_CAP) -> Subgroup:
    """``G^n``: the subgroup generated by all ``n``-th powers."""
    _check_cap(G, cap)
    return subgroup_generated(G, np.unique(G.pow(G.all_elements(), n)), cap)


def product_set(G: GroupHandle, *subsets) -> np.ndarray:
    """Mask of all products ``x_1 x_2 ... x_k`` with ``x_i`` from the given subsets."""
    mask = np.zeros(G.order, dtype=bool)
    mask[0] = True
    cur = np.array([0], dtype=np.int64)
    for S in subsets:
        elems = S.elements if isinstance(S, Subgroup) else as_codes(S)
        cur = np.unique(G.mul(cur[:, None], elems[None, :]).ravel())
    mask[:] = False
    mask[cur] = True
    return mask


class QuotientGroup(GroupHandle):
    """``K/N`` realised on congruence classes: code = class label."""

    def __init__(self, G: GroupHandle, N: Subgroup, K: Subgroup | None = None):
        K = whole(G) if K is None else K
        if not N <= K:
            raise ValueError("N is not contained in K")
        members = K.elements
        nw = as_codes(N.witnesses)
        local = np.full(G.order, -1, dtype=np.int64)
        local[members] = np.arange(members.size)
        if nw.size:
            src = np.repeat(members, nw.size)
            dst = G.mul(members[:, None], nw[None, :]).ravel()
            graph = coo_matrix(
                (np.ones(src.size, dtype=np.int8), (local[src], local[dst])), shape=(members.size,) * 2
            )
            count, comp = connected_components(graph, directed=True, connection="weak")
        else:
            count, comp = members.size, np.arange(members.size)
        # the class of the identity gets label 0
        relabel = np.arange(count)
        c0 = comp[local[0]]
        relabel[[0, c0]] = relabel[[c0, 0]]
        label = np.full(G.order, -1, dtype=np.int64)
        label[members] = relabel[comp]
        reps = np.empty(count, dtype=np.int64)
        reps[label[members]] = members
        self.parent, self.N, self.K = G, N, K
        self.label, self.reps = label, reps
        self.order = int(count)
        kw = as_codes(K.witnesses)
        self.gens = label[kw] if kw.size else np.zeros(0, dtype=np.int64)
        self.gen_names = tuple(f"g{i}" for i in range(self.gens.size))
        if self.order * N.order != K.order:
            raise ValueError("N is not normal in K (classes have unequal size)")

    def _mul(self, x, y):
        return self.label[self.parent.mul(self.reps[x], self.reps[y])]

    def _inv(self, x):
        return self.label[self.parent.inv(self.reps[x])]

    def image(self, g) -> np.ndarray:
        return self.label[as_codes(g)]


def quotient(G: GroupHandle, N: Subgroup, K: Subgroup | None = None) -> QuotientGroup:
    return QuotientGroup(G, N, K)


def _members(X):
    if isinstance(X, Subgroup):
        return X.group, X.elements, as_codes(X.witnesses)
    return X, X.all_elements(), as_codes(X.gens)


def is_abelian(X) -> bool:
    G, _, w = _members(X)
    if w.size < 2:
        return True
    return bool(np.all(G.commutator(w[:, None], w[None, :]) == 0))


def abelian_invariants(X) -> list:
    """Invariant factors ``[d_1 | d_2 | ...]`` of an abelian group or subgroup,
    read off from how many elements each ``q^k``-th power map kills."""
    G, elems, _ = _members(X)
    if not is_abelian(X):
        raise NotAbelian("abelian_invariants needs an abelian group")
    n = elems.size
    if n == 1:
        return []
    per_prime = {}
    for q, a in factorize(n).items():
        killed = []  # |{g : g^(q^k) = 1}| for k = 1..a
        h = elems.copy()
        for k in range(1, a + 1):
            h = G.pow(h, q)
            killed.append(int(np.count_nonzero(h == 0)))
        # rank of the q^k-layer: number of cyclic factors of order >= q^k
        logs = [0] + [round(math.log(c, q)) for c in killed]
        ge = [logs[k] - logs[k - 1] for k in range(1, len(logs))]
        exps = []
        for k in range(len(ge)):
            nxt = ge[k + 1] if k + 1 < len(ge) else 0
            exps += [k + 1] * (ge[k] - nxt)
        per_prime[q] = sorted(exps, reverse=True)
    width = max(len(v) for v in per_prime.values())
    factors = []
    for i in range(width):
        d = 1
        for q, exps in per_prime.items():
            if i < len(exps):
                d *= q ** exps[i]
        factors.append(d)
    return sorted(factors)


def epimorphism_kernel(G: GroupHandle, H: GroupHandle, genmap, cap: int = DEFAULT_CAP) -> Subgroup:
    """Kernel of the epimorphism ``G -> H`` extending ``genmap``.

    ``genmap`` maps generator names (or positions) to elements of ``H``.  The
    map is first spread along a spanning tree of the Cayley graph, then checked
    on every edge, which is equivalent to being a homomorphism."""
    _check_cap(G, cap)
    if isinstance(genmap, Mapping):
        imgs = np.array([int(genmap[name]) for name in G.gen_names], dtype=np.int64)
    else:
        imgs = as_codes(list(genmap))
    if imgs.size != G.gens.size:
        raise ValueError("genmap must give an image for every generator")
    image = np.full(G.order, -1, dtype=np.int64)
    image[0] = 0
    frontier = np.array([0], dtype=np.int64)
    while frontier.size:
        nxt = []
        for s, t in zip(G.gens, imgs):
            dst = G.mul(frontier, s)
            new = image[dst] < 0
            if new.any():
                d, idx = np.unique(dst[new], return_index=True)
                image[d] = H.mul(image[frontier[new][idx]], t)
                nxt.append(d)
        frontier = np.unique(np.concatenate(nxt)) if nxt else np.zeros(0, dtype=np.int64)
    if (image < 0).any():
        raise ValueError("generators do not reach every element of G")
    X = G.all_elements()
    for s, t in zip(G.gens, imgs):
        if not np.array_equal(image[G.mul(X, s)], H.mul(image, t)):
            raise NotHomomorphism("the generator map does not extend to a homomorphism")
    if np.unique(image).size != H.order:
        raise NotSurjective(f"image has order {np.unique(image).size}, target has order {H.order}")
    return subgroup_generated(G, np.flatnonzero(image == 0), cap)
