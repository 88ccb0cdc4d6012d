"""Todd-Coxeter coset enumeration.

Relator-driven (HLT) definitions with row filling, union-find coincidence
processing, and a lookahead pass plus compaction when the table is full.
Optionally tracks a cyclic subgroup through the enumeration so the regular
representation can be lifted from a much smaller coset table.
Columns are ``2*g`` for generator ``g`` and ``2*g + 1`` for its inverse, so the
inverse column of ``x`` is ``x ^ 1``.  Running out of space yields an
``overflow`` status, never a wrong table.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ._accel import njit
from .handle import CayleyGroup, GroupHandle, TrivialGroup
from .presentation import PresentationSpec, Word, parse_word

__all__ = [
    "CosetTable",
    "coset_enumerate",
    "permutation_handle",
    "table_to_csv",
    "DEFAULT_MAX_COSETS",
    "STRATEGIES",
]

DEFAULT_MAX_COSETS = 2_000_000

_OK, _FULL = 0, 1
# st slots
_NEXT, _LIVE, _QLEN, _DEFINED, _STATUS, _NREL, _LOOKAHEADS = range(7)

# Every table entry table[c, x] = d carries a label l with r_c x = w^l r_d, where
# r_c is the defining word of coset c and w the tracked subgroup generator.  With
# nothing tracked all labels stay 0 and this is plain HLT.  Closed cycles whose
# labels do not cancel give relations w^n = 1; st[_NREL] holds their gcd.


@njit
def _nm(v, st):
    n = st[_NREL]
    return v % n if n > 0 else v


@njit
def _relation(st, v):
    a = abs(v)
    b = st[_NREL]
    while b:
        a, b = b, a % b
    st[_NREL] = a


@njit
def _rep(p, off, c):
    """Root of ``c`` and the offset o with r_c = w^o r_root (path compressed)."""
    r = c
    tot = 0
    while p[r] != r:
        tot += off[r]
        r = p[r]
    acc = tot
    while c != r:
        nxt = p[c]
        o = off[c]
        p[c] = r
        off[c] = acc
        acc -= o
        c = nxt
    return r, tot


@njit
def _merge(p, off, queue, st, a, b, delta):
    """Record r_a = w^delta r_b."""
    ra, oa = _rep(p, off, a)
    rb, ob = _rep(p, off, b)
    d = delta + ob - oa  # r_ra = w^d r_rb
    if ra == rb:
        _relation(st, d)
        return
    if ra < rb:
        p[rb] = ra
        off[rb] = _nm(-d, st)
        queue[st[_QLEN]] = rb
    else:
        p[ra] = rb
        off[ra] = _nm(d, st)
        queue[st[_QLEN]] = ra
    st[_QLEN] += 1
    st[_LIVE] -= 1


@njit
def _coincidence(table, lab, p, off, queue, st, a, b, delta):
    ncols = table.shape[1]
    st[_QLEN] = 0
    _merge(p, off, queue, st, a, b, delta)
    i = 0
    while i < st[_QLEN]:
        g = queue[i]
        i += 1
        for x in range(ncols):
            d = table[g, x]
            if d < 0:
                continue
            xi = x ^ 1
            if table[d, xi] == g:
                table[d, xi] = -1
            mu, og = _rep(p, off, g)
            nu, od = _rep(p, off, d)
            lam = _nm(lab[g, x] - og + od, st)  # r_mu x = w^lam r_nu
            e = table[mu, x]
            if e >= 0:
                _merge(p, off, queue, st, e, nu, lam - lab[mu, x])
                continue
            e = table[nu, xi]
            if e >= 0:
                _merge(p, off, queue, st, e, mu, -lam - lab[nu, xi])
                continue
            table[mu, x] = nu
            lab[mu, x] = lam
            table[nu, xi] = mu
            lab[nu, xi] = _nm(-lam, st)


@njit
def _define(table, lab, p, off, st, c, x):
    n = st[_NEXT]
    if n >= table.shape[0]:
        return False
    for y in range(table.shape[1]):
        table[n, y] = -1
        lab[n, y] = 0
    p[n] = n
    off[n] = 0
    table[c, x] = n
    table[n, x ^ 1] = c
    lab[c, x] = 0
    lab[n, x ^ 1] = 0
    st[_NEXT] = n + 1
    st[_LIVE] += 1
    st[_DEFINED] += 1
    return True


@njit
def _scan(table, lab, p, off, queue, st, c, word, lo, hi, target, fill):
    """Scan ``word[lo:hi]`` at coset ``c``, which should return to ``c`` with
    label ``target``; define cosets when ``fill``.  Returns _FULL when a
    definition was needed but the table is full."""
    f = c
    lf = 0
    i = lo
    b = c
    lb = 0
    j = hi - 1
    while True:
        while i <= j and table[f, word[i]] >= 0:
            lf += lab[f, word[i]]
            f = table[f, word[i]]
            i += 1
        if i > j:
            d = _nm(target + lb - lf, st)  # r_f = w^d r_b
            if f != b:
                _coincidence(table, lab, p, off, queue, st, f, b, d)
            elif d != 0:
                _relation(st, d)
            return _OK
        while j >= i and table[b, word[j] ^ 1] >= 0:
            lb += lab[b, word[j] ^ 1]
            b = table[b, word[j] ^ 1]
            j -= 1
        if j < i:
            _coincidence(table, lab, p, off, queue, st, f, b, _nm(target + lb - lf, st))
            return _OK
        if i == j:
            d = _nm(target + lb - lf, st)
            table[f, word[i]] = b
            lab[f, word[i]] = d
            table[b, word[i] ^ 1] = f
            lab[b, word[i] ^ 1] = _nm(-d, st)
            return _OK
        if not fill:
            return _OK
        if not _define(table, lab, p, off, st, f, word[i]):
            return _FULL


@njit
def _lookahead(table, lab, p, off, queue, st, rels, offs):
    st[_LOOKAHEADS] += 1
    c = 0
    while c < st[_NEXT]:
        if p[c] == c:
            for r in range(offs.shape[0] - 1):
                _scan(table, lab, p, off, queue, st, c, rels, offs[r], offs[r + 1], 0, False)
                if p[c] != c:
                    break
        c += 1


@njit
def _compact(table, lab, p, off, st, cursor):
    """Renumber live cosets consecutively; returns the new position of ``cursor``."""
    n = st[_NEXT]
    newidx = np.full(n, -1, dtype=np.int64)
    k = 0
    new_cursor = -1
    for c in range(n):
        if p[c] == c:
            if new_cursor < 0 and c >= cursor:
                new_cursor = k
            newidx[c] = k
            k += 1
    if new_cursor < 0:
        new_cursor = k
    for c in range(n):
        if p[c] == c:
            r = newidx[c]
            for x in range(table.shape[1]):
                d = table[c, x]
                if d < 0:
                    table[r, x] = -1
                    lab[r, x] = 0
                else:
                    root, od = _rep(p, off, d)
                    table[r, x] = newidx[root]
                    lab[r, x] = _nm(lab[c, x] + od, st)
    for c in range(k):
        p[c] = c
        off[c] = 0
    st[_NEXT] = k
    st[_LIVE] = k
    return new_cursor


@njit
def _hlt(table, lab, p, off, queue, st, rels, offs, subs, soffs, target):
    """Relator-driven enumeration with lookahead and compaction when full."""
    for r in range(soffs.shape[0] - 1):
        while _scan(table, lab, p, off, queue, st, 0, subs, soffs[r], soffs[r + 1], target, True) == _FULL:
            _lookahead(table, lab, p, off, queue, st, rels, offs)
            _compact(table, lab, p, off, st, 0)
            if st[_NEXT] >= table.shape[0]:
                st[_STATUS] = 1
                return
    c = 0
    ncols = table.shape[1]
    while c < st[_NEXT]:
        if p[c] == c:
            r = 0
            while r < offs.shape[0] - 1 and c < st[_NEXT] and p[c] == c:
                if _scan(table, lab, p, off, queue, st, c, rels, offs[r], offs[r + 1], 0, True) == _FULL:
                    _lookahead(table, lab, p, off, queue, st, rels, offs)
                    c = _compact(table, lab, p, off, st, c)
                    if st[_NEXT] >= table.shape[0]:
                        st[_STATUS] = 1
                        return
                    r = 0
                    continue
                r += 1
            if c < st[_NEXT] and p[c] == c:
                x = 0
                while x < ncols:
                    if table[c, x] < 0:
                        if not _define(table, lab, p, off, st, c, x):
                            _lookahead(table, lab, p, off, queue, st, rels, offs)
                            c = _compact(table, lab, p, off, st, c)
                            if st[_NEXT] >= table.shape[0]:
                                st[_STATUS] = 1
                                return
                            c -= 1  # rescan this coset from its relators
                            break
                    x += 1
        c += 1
    _compact(table, lab, p, off, st, 0)


@njit
def _consistent(table, n, rels, offs):
    for c in range(n):
        for x in range(table.shape[1]):
            d = table[c, x]
            if d < 0 or d >= n or table[d, x ^ 1] != c:
                return False
        for r in range(offs.shape[0] - 1):
            f = c
            for i in range(offs[r], offs[r + 1]):
                f = table[f, rels[i]]
            if f != c:
                return False
    return True


@njit
def _reached(table):
    n = table.shape[0]
    seen = np.zeros(n, dtype=np.bool_)
    todo = np.empty(n, dtype=np.int64)
    seen[0] = True
    todo[0] = 0
    top = 1
    count = 1
    while top:
        top -= 1
        c = todo[top]
        for x in range(table.shape[1]):
            d = table[c, x]
            if not seen[d]:
                seen[d] = True
                todo[top] = d
                top += 1
                count += 1
    return count


def _flatten(words: Sequence[Word], gens: Sequence[str]):
    index = {g: i for i, g in enumerate(gens)}
    letters, offs = [], [0]
    for w in words:
        for g, e in w:
            col = 2 * index[g] + (0 if e > 0 else 1)
            letters.extend([col] * abs(e))
        offs.append(len(letters))
    return np.array(letters, dtype=np.int64), np.array(offs, dtype=np.int64)


@dataclass
class CosetTable:
    generators: tuple
    table: np.ndarray  # (n, 2*len(generators)); -1 = undefined
    status: str  # "complete" or "overflow"
    defined: int  # total cosets ever defined
    subgroup_trivial: bool = True

    @property
    def n_cosets(self) -> int:
        return int(self.table.shape[0])

    @property
    def complete(self) -> bool:
        return self.status == "complete"

    def __len__(self):
        return self.n_cosets


STRATEGIES = ("hlt",)


def _run(spec, subs, capacity, target):
    gens = spec.generators
    # short relators first: they close cycles cheaply before the long ones are scanned
    rels = sorted(spec.relators, key=lambda w: sum(abs(e) for _, e in w))
    rel_flat, rel_offs = _flatten(rels, gens)
    sub_flat, sub_offs = _flatten(subs, gens)
    ncols = 2 * len(gens)
    table = np.full((capacity, ncols), -1, dtype=np.int64)
    lab = np.zeros((capacity, ncols), dtype=np.int64)
    p = np.arange(capacity, dtype=np.int64)
    off = np.zeros(capacity, dtype=np.int64)
    queue = np.zeros(capacity, dtype=np.int64)
    st = np.array([1, 1, 0, 1, 0, 0, 0], dtype=np.int64)
    _hlt(table, lab, p, off, queue, st, rel_flat, rel_offs, sub_flat, sub_offs, target)
    n = int(st[_NEXT])
    return table[:n].copy(), lab[:n].copy(), st, rel_flat, rel_offs


def coset_enumerate(
    spec: PresentationSpec,
    subgroup_words: Sequence = (),
    max_cosets: int = DEFAULT_MAX_COSETS,
    strategy: str = "hlt",
    via=None,
) -> CosetTable:
    """Enumerate the cosets of ``<subgroup_words>`` in the group presented by ``spec``.

    With ``via`` (a word generating a cyclic subgroup H) and no subgroup words,
    the regular representation is obtained without enumerating it directly:
    the cosets of H are enumerated while every entry records which power of the
    generator of H it carries.  Unbalanced closed cycles prove relations
    ``via^n = 1``; with N their gcd the table lifts to index*N points.  The
    lift is accepted only if it is consistent with every relator and
    transitive, which forces |G| = index*N and makes it regular.
    """
    if max_cosets < 1:
        raise ValueError("max_cosets must be at least 1")
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}")
    gens = spec.generators
    subs = [parse_word(w, gens) if isinstance(w, str) else tuple(w) for w in subgroup_words]
    trivial_sub = not any(subs)
    if len(gens) == 0:
        return CosetTable(gens, np.zeros((1, 0), dtype=np.int64), "complete", 1, trivial_sub)
    if via is None:
        table, _, st, rel_flat, rel_offs = _run(spec, subs, max_cosets, 0)
        if st[_STATUS]:
            return CosetTable(gens, table, "overflow", int(st[_DEFINED]), trivial_sub)
        if not _consistent(table, table.shape[0], rel_flat, rel_offs):  # pragma: no cover
            raise RuntimeError("coset enumeration produced an inconsistent table")
        return CosetTable(gens, table, "complete", int(st[_DEFINED]), trivial_sub)

    if not trivial_sub:
        raise ValueError("via= enumerates the regular representation; give no subgroup words")
    w = parse_word(via, gens) if isinstance(via, str) else tuple(via)
    table, lab, st, rel_flat, rel_offs = _run(spec, [w], max_cosets, 1)
    if st[_STATUS]:
        return CosetTable(gens, table, "overflow", int(st[_DEFINED]), True)
    index, order = table.shape[0], int(st[_NREL])
    if order == 0:
        raise ValueError(f"no relation bounds the order of {via!r}; the group may be infinite")
    if index * order > max_cosets:
        return CosetTable(gens, table, "overflow", int(st[_DEFINED]), True)
    # (i, k) stands for w^k r_i; right multiplication by x sends it to (j, k + label)
    k = np.arange(order, dtype=np.int64)
    lifted = (table[:, None, :] * order + (k[None, :, None] + lab[:, None, :]) % order).reshape(
        index * order, table.shape[1]
    )
    if not _consistent(lifted, lifted.shape[0], rel_flat, rel_offs) or _reached(lifted) != lifted.shape[0]:
        raise RuntimeError("lifted coset table failed verification")  # pragma: no cover
    return CosetTable(gens, lifted, "complete", int(st[_DEFINED]), True)


def permutation_handle(table: CosetTable) -> GroupHandle:
    """The group acting on the cosets; for the trivial subgroup this is the
    right-regular representation with coset 0 as the identity."""
    if not table.complete:
        raise ValueError("coset table is not complete")
    if table.n_cosets == 1:
        return TrivialGroup()
    perms = [table.table[:, 2 * g] for g in range(len(table.generators))]
    if table.subgroup_trivial:
        return CayleyGroup(perms, table.generators)
    # the action on cosets of a proper subgroup need not be regular
    from .handle import from_callables

    gens = [tuple(int(v) for v in perm) for perm in perms]
    ident = tuple(range(table.n_cosets))
    return from_callables(ident, gens, lambda a, b: tuple(b[i] for i in a), gen_names=table.generators)


def table_to_csv(table: CosetTable) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    cols = []
    for g in table.generators:
        cols += [g, f"{g}^-1"]
    w.writerow(["coset"] + cols)
    for c, row in enumerate(table.table):
        w.writerow([c] + [int(v) for v in row])
    return buf.getvalue()
