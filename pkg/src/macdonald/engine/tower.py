"""Models of J built as towers of cyclic extensions.

The gadget: given a group T, an element t and an automorphism Omega of T with
``Omega(t) = t`` and ``Omega^n = conjugation by t``, there is an overgroup
``E = <T, g>`` with ``g^n = t`` and ``g^-1 u g = Omega(u)``.  Elements of E are
stored as ``g^e u`` with ``0 <= e < n`` and ``u`` in T, coded ``e*|T| + u``:

    (g^e u)(g^f v) = g^((e+f) mod n) * t^carry * Omega^f(u) * v

Each level is a dense :class:`GroupHandle`; automorphisms are precomputed as
permutations of the level below.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

import numpy as np

from ..handle import GroupHandle, Relabeled, as_codes
from ..presentation import Word, sylow_presentation, word_inverse, word_mul
from ..valuation import Case, classify
from .normal_form import SylowContext

__all__ = [
    "AbelianLevel",
    "ExtensionLevel",
    "StepSpec",
    "TowerSpec",
    "ExtensionTower",
    "TowerCheck",
    "VerificationReport",
    "TowerError",
    "tower_spec",
    "assemble_tower",
    "build_tower",
    "tower_verify",
    "cross_check",
    "cross_check_report",
    "with_trivial_anchor",
]


class TowerError(RuntimeError):
    """A cyclic-extension step failed one of its proof obligations."""


# -- levels ------------------------------------------------------------------------


def _triangular_basis(rows, r):
    """Row-echelon basis ``H`` of the lattice spanned by ``rows``: ``H[i][j] = 0`` for
    ``j < i`` and ``H[i][i] > 0``.  Raises if the lattice is not of full rank."""
    pool = [list(map(int, row)) for row in rows]
    basis = []
    for col in range(r):
        live = [row for row in pool if row[col] != 0]
        rest = [row for row in pool if row[col] == 0]
        while len(live) > 1:
            live.sort(key=lambda row: abs(row[col]))
            piv = live[0]
            nxt = [piv]
            for row in live[1:]:
                q = row[col] // piv[col]
                red = [a - q * b for a, b in zip(row, piv)]
                (nxt if red[col] else rest).append(red)
            live = nxt
        if not live:
            raise ValueError("relations do not define a finite group")
        piv = live[0]
        if piv[col] < 0:
            piv = [-a for a in piv]
        basis.append(piv)
        pool = rest
    return np.array(basis, dtype=np.int64)


class AbelianLevel(GroupHandle):
    """``Z^r`` modulo the lattice spanned by ``relation_rows``.

    Elements are ``g_0^e_0 ... g_(r-1)^e_(r-1)`` with ``0 <= e_i < d_i``.
    """

    def __init__(self, names: Sequence[str], relation_rows: Sequence[Sequence[int]]):
        self.names = tuple(names)
        r = len(self.names)
        self.relation_rows = [tuple(int(a) for a in row) for row in relation_rows]
        self.H = _triangular_basis(self.relation_rows, r)
        self.d = self.H.diagonal().copy()
        self.order = int(np.prod(self.d))
        self.radix = np.ones(r, dtype=np.int64)
        for i in range(r - 2, -1, -1):
            self.radix[i] = self.radix[i + 1] * self.d[i + 1]
        self.gen_names = self.names
        self.gens = np.array([self.encode(np.eye(r, dtype=np.int64)[i]) for i in range(r)], dtype=np.int64)
        self.named = dict(zip(self.names, map(int, self.gens)))

    def reduce(self, E):
        E = np.array(E, dtype=np.int64, copy=True)
        for i in range(len(self.d)):
            q = np.floor_divide(E[..., i], self.d[i])
            E -= q[..., None] * self.H[i]
        return E

    def encode(self, E):
        return self.reduce(E) @ self.radix

    def decode(self, x):
        x = as_codes(x)
        return (x[..., None] // self.radix) % self.d

    def _mul(self, x, y):
        return self.encode(self.decode(x) + self.decode(y))

    def _inv(self, x):
        return self.encode(-self.decode(x))

    def relators(self) -> list:
        rels = [word_mul(tuple(zip(self.names, row))) for row in self.relation_rows]
        for i in range(len(self.names)):
            for j in range(i + 1, len(self.names)):
                a, b = ((self.names[i], 1),), ((self.names[j], 1),)
                rels.append(word_mul(word_inverse(a), word_inverse(b), a, b))
        return rels

    def word_of(self, x: int) -> Word:
        e = self.decode(int(x))
        return tuple((n, int(v)) for n, v in zip(self.names, e) if v)

    def hom_table(self, images: Mapping[str, int], H: GroupHandle) -> np.ndarray:
        E = self.decode(self.all_elements())
        out = np.zeros(self.order, dtype=np.int64)
        for i, name in enumerate(self.names):
            out = H.mul(out, H.pow_array(np.full(self.order, images[name], dtype=np.int64), E[:, i]))
        return out


class ExtensionLevel(GroupHandle):
    """Cyclic extension of ``parent`` by a new generator via the gadget."""

    def __init__(
        self,
        parent: GroupHandle,
        gname: str,
        n: int,
        anchor: int,
        anchor_name: Optional[str],
        omega: np.ndarray,
        omega_images: Mapping[str, Word],
    ):
        self.parent = T = parent
        self.gname, self.n = gname, int(n)
        self.anchor, self.anchor_name = int(anchor), anchor_name
        self.omega = np.asarray(omega, dtype=np.int64)
        self.omega_images = dict(omega_images)
        size = T.order
        self.order = size * self.n
        P = np.empty((2, self.n, size), dtype=np.int64)
        cur = np.arange(size, dtype=np.int64)
        for f in range(self.n):
            P[0, f] = cur
            cur = self.omega[cur]
        P[1] = T.mul(np.full(P[0].shape, self.anchor, dtype=np.int64), P[0])
        self._P = P
        self.names = T.names + (gname,)
        self.named = dict(T.named)
        self.named[gname] = size if self.n > 1 else self.anchor
        self.gen_names = self.names
        self.gens = np.array([self.named[nm] for nm in self.names], dtype=np.int64)

    def _split(self, x):
        return np.divmod(x, self.parent.order)

    def _mul(self, x, y):
        e, u = self._split(x)
        f, v = self._split(y)
        s = e + f
        carry = (s >= self.n).astype(np.int64)
        s -= self.n * carry
        w = self._P[carry, f, u]
        return s * self.parent.order + self.parent.mul(w, v)

    def _inv(self, x):
        e, u = self._split(x)
        e2 = (self.n - e) % self.n
        w = self._P[(e > 0).astype(np.int64), e2, u]
        return e2 * self.parent.order + self.parent.inv(w)

    def relators(self) -> list:
        T = self.parent
        g = ((self.gname, 1),)
        rels = list(T.relators())
        rels.append(word_mul(((self.gname, self.n),), word_inverse(T.word_of(self.anchor))))
        for s in T.names:
            img = T.word_of(int(self.omega[T.named[s]]))
            rels.append(word_mul(word_inverse(g), ((s, 1),), g, word_inverse(img)))
        return rels

    def word_of(self, x: int) -> Word:
        e, u = divmod(int(x), self.parent.order)
        head = ((self.gname, e),) if e else ()
        return head + self.parent.word_of(u)

    def hom_table(self, images: Mapping[str, int], H: GroupHandle) -> np.ndarray:
        below = self.parent.hom_table(images, H)
        e, u = self._split(self.all_elements())
        top = H.pow_array(np.full(self.order, images[self.gname], dtype=np.int64), e)
        return H.mul(top, below[u])


def _levels(level):
    out = []
    while isinstance(level, ExtensionLevel):
        out.append(level)
        level = level.parent
    out.append(level)
    return out  # top first


def resolve_images(level, given: Mapping[str, int], H: GroupHandle) -> dict:
    """Complete an assignment of generator images: a generator introduced with
    ``g^n = t`` determines the image of a named anchor ``t``."""
    imgs = {k: int(v) for k, v in given.items()}
    for lv in _levels(level):
        if isinstance(lv, ExtensionLevel) and lv.anchor_name and lv.anchor_name not in imgs and lv.gname in imgs:
            imgs[lv.anchor_name] = H.power(imgs[lv.gname], lv.n)
    missing = [nm for nm in level.names if nm not in imgs]
    if missing:
        raise ValueError(f"no image determined for {missing}")
    return imgs


# -- specifications ----------------------------------------------------------------


@dataclass(frozen=True)
class StepSpec:
    gname: str
    n: int
    anchor: Optional[str]  # name of the anchor generator, or None for the identity
    images: tuple  # ((name, word), ...) on the current level


@dataclass(frozen=True)
class TowerSpec:
    alpha: int
    p: int
    case: Case
    base_names: tuple
    base_rows: tuple
    steps: tuple
    top: tuple  # names standing for A and B
    label: str = ""


def _w(*syl):
    return tuple((n, int(e)) for n, e in syl if e)


def _case1_spec(alpha, p, m, label="case1"):
    k = (alpha - 1) // p**m
    if k % 2:
        alpha += p ** (3 * m)
        k = (alpha - 1) // p**m
    pm = p**m
    c = k * k * 3 ** (2 * m - 1) if p == 3 else 0
    b = pm * k // 2 + c
    rows = ((p ** (2 * m), 0, 0), (pm, pm, 0), (0, 0, pm))
    steps = (
        StepSpec("Z0", pm, "Z", (("X", _w(("X", alpha))), ("Y", _w(("Y", 1 - k * pm))), ("Z", _w(("Z", 1))))),
        StepSpec("X0", pm, "X", (("X", _w(("X", 1))), ("Y", _w(("Z", -1), ("Y", 1 + b))), ("Z0", _w(("Z0", 1), ("X", -k))))),
        StepSpec("Y0", pm, "Y", (("X0", _w(("X0", 1), ("Z0", 1))), ("Y", _w(("Y", 1))), ("Z0", _w(("Y", k), ("Z0", 1))))),
    )
    return TowerSpec(alpha, p, Case.ONE, ("X", "Y", "Z"), rows, steps, ("X0", "Y0"), label)


def _case2_spec(alpha, m):
    k = (alpha - 1) // 2**m
    rows = ((-(2 ** (2 * m - 2)), 0, 2**m), (2 ** (m - 1), 2 ** (m - 1), 0), (2 ** (2 * m - 1), 0, 0))
    h = 2 ** (m - 1)
    steps = (
        StepSpec("z0", h, "z", (("x", _w(("x", alpha))), ("y", _w(("y", 1 - 2**m * k))), ("z", _w(("z", 1))))),
        StepSpec("x0", 2**m, "x", (("x", _w(("x", 1))), ("y", _w(("z", -2), ("y", 1 + h * k))), ("z0", _w(("z0", 1), ("x", -k))))),
        StepSpec("y0", 2**m, "y", (("x0", _w(("x0", 1), ("z0", 1))), ("y", _w(("y", 1))), ("z0", _w(("y", k), ("z0", 1))))),
    )
    return TowerSpec(alpha, 2, Case.TWO, ("x", "y", "z"), rows, steps, ("x0", "y0"), "case2")


def _case3_spec(alpha):
    k = (alpha - 1) // 3
    beta = pow(alpha, -1, 27)
    rows = ((27, 0), (9, 3))
    steps = (
        # the non-abelian base <x, y, z>: z of order 9 acting by x -> x^-8
        StepSpec("z", 9, None, (("x", _w(("x", -8))), ("y", _w(("y", 1))))),
        StepSpec("y0", 3, "y", (("x", _w(("x", -8), ("z", 3))), ("y", _w(("y", 1))), ("z", _w(("y", -3), ("z", 1))))),
        StepSpec("z0", 3, "z", (("x", _w(("x", alpha))), ("y0", _w(("y0", beta))), ("z", _w(("z", 1))))),
        StepSpec("x0", 3, "x", (("x", _w(("x", 1))), ("y0", _w(("z0", -3), ("y0", -2))), ("z0", _w(("z0", 1), ("x", -k))))),
        StepSpec("y1", 3, "y0", (("x0", _w(("x0", 1), ("z0", 1))), ("y0", _w(("y0", 1))), ("z0", _w(("y0", k), ("z0", 1))))),
    )
    return TowerSpec(alpha, 3, Case.THREE, ("x", "y"), rows, steps, ("x0", "y1"), "case3")


def tower_spec(alpha: int, p: int, construction: Optional[str] = None) -> TowerSpec:
    """The extension recipe for ``(alpha, p)``.

    ``construction="case1"`` forces the Case 1 recipe; for a Case 3 alpha this
    yields an image of J of order 3^7 rather than J itself.
    """
    from ..presentation import canonical_alpha

    cc = classify(alpha, p)
    beta = canonical_alpha(alpha, p)
    if construction == "case1" or (construction is None and cc.case is Case.ONE):
        return _case1_spec(beta, p, cc.m, "case1" if cc.case is Case.ONE else "case1-on-case3")
    if construction not in (None,):
        raise ValueError(f"unknown construction {construction!r}")
    if cc.case is Case.TWO:
        return _case2_spec(beta, cc.m)
    return _case3_spec(beta)


def with_trivial_anchor(spec: TowerSpec, step: int = -1) -> TowerSpec:
    """Copy of ``spec`` whose chosen step uses the identity as anchor (a broken recipe)."""
    steps = list(spec.steps)
    s = steps[step]
    steps[step] = StepSpec(s.gname, s.n, None, s.images)
    return TowerSpec(spec.alpha, spec.p, spec.case, spec.base_names, spec.base_rows, tuple(steps), spec.top, spec.label + "+trivial-anchor")


# -- verification ------------------------------------------------------------------


@dataclass(frozen=True)
class TowerCheck:
    step: str
    name: str
    passed: bool
    detail: str = ""


@dataclass
class VerificationReport:
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c.passed]

    def add(self, step, name, ok, detail=""):
        self.checks.append(TowerCheck(step, name, bool(ok), detail))

    def __str__(self):
        return "\n".join(f"{'PASS' if c.passed else 'FAIL'} {c.step}: {c.name} {c.detail}".rstrip() for c in self.checks)


def _step_checks(T, spec: StepSpec, report: VerificationReport):
    """Obligations for extending ``T`` by ``spec``; returns (omega permutation, anchor)."""
    given = {nm: T.eval_word(w, T.named) for nm, w in spec.images}
    anchor = T.named[spec.anchor] if spec.anchor else 0
    try:
        imgs = resolve_images(T, given, T)
    except ValueError as exc:
        report.add(spec.gname, "images determined", False, str(exc))
        return None, anchor
    bad = [r for r in T.relators() if T.eval_word(r, imgs) != 0]
    report.add(spec.gname, "relations preserved", not bad, f"{len(bad)} relator(s) violated" if bad else "")
    omega = T.hom_table(imgs, T)
    bij = np.unique(omega).size == T.order
    report.add(spec.gname, "automorphism", bij)
    report.add(spec.gname, "fixes anchor", int(omega[anchor]) == anchor)
    power = np.arange(T.order, dtype=np.int64)
    for _ in range(spec.n):
        power = omega[power]
    wrong = [s for s in T.names if int(power[T.named[s]]) != int(T.conjugate(T.named[s], anchor))]
    report.add(spec.gname, f"power {spec.n} is conjugation by anchor", not wrong, f"fails on {wrong}" if wrong else "")
    return omega, anchor


@dataclass
class ExtensionTower:
    spec: TowerSpec
    base: AbelianLevel
    levels: list
    report: VerificationReport

    @property
    def top(self):
        return self.levels[-1]

    @property
    def order(self) -> int:
        return self.top.order

    @property
    def alpha(self):
        return self.spec.alpha

    @property
    def p(self):
        return self.spec.p

    @property
    def generators(self) -> dict:
        a, b = self.spec.top
        return {"A": self.top.named[a], "B": self.top.named[b]}

    def handle(self) -> GroupHandle:
        """The top level as a group generated by the images of A and B."""
        g = self.generators
        return Relabeled(self.top, [g["A"], g["B"]], ("A", "B"))

    def step_orders(self) -> list:
        return [lv.order for lv in self.levels]


def assemble_tower(spec: TowerSpec, strict: bool = True) -> ExtensionTower:
    report = VerificationReport()
    base = AbelianLevel(spec.base_names, spec.base_rows)
    levels = [base]
    T = base
    for st in spec.steps:
        omega, anchor = _step_checks(T, st, report)
        if omega is None or np.unique(omega).size != T.order:
            if strict:
                raise TowerError(f"step {st.gname} failed:\n{report}")
            break
        T = ExtensionLevel(T, st.gname, st.n, anchor, st.anchor, omega, dict(st.images))
        levels.append(T)
    if strict and not report.passed:
        raise TowerError(f"tower for alpha={spec.alpha}, p={spec.p} failed:\n{report}")
    return ExtensionTower(spec, base, levels, report)


def build_tower(alpha: int, p: int, strict: bool = True, construction: Optional[str] = None) -> ExtensionTower:
    return assemble_tower(tower_spec(alpha, p, construction), strict=strict)


def tower_verify(tower: ExtensionTower) -> VerificationReport:
    """Re-run every step's obligations from scratch and check the order bookkeeping."""
    report = VerificationReport()
    for T, st in zip(tower.levels, tower.spec.steps):
        _step_checks(T, st, report)
    expected = tower.base.order
    for st in tower.spec.steps[: len(tower.levels) - 1]:
        expected *= st.n
    report.add("tower", "order is base order times extension degrees", tower.order == expected, f"{tower.order}")
    if len(tower.levels) != len(tower.spec.steps) + 1:
        report.add("tower", "all steps built", False, "construction stopped early")
        return report
    # the top level must be an image of J: the defining relators hold at the top generators
    pres = sylow_presentation(tower.spec.alpha, tower.spec.p)
    bad = [r for r in pres.relators if tower.top.eval_word(r, tower.generators) != 0]
    report.add("tower", "top generators satisfy the defining relators", not bad, f"{len(bad)} violated" if bad else "")
    return report


# -- comparison with the normal-form engine -----------------------------------------------


def cross_check_report(ctx: SylowContext, tower: ExtensionTower, samples: int = 2000, exhaustive_limit: int = 10**4, seed: int = 0) -> VerificationReport:
    from .normal_form import normal_form_group

    report = VerificationReport()
    same = ctx.p == tower.p and tower.order == ctx.expected_order
    report.add("cross", "orders agree", same, f"{ctx.expected_order} vs {tower.order}")
    if not same:
        return report
    top = tower.top
    gens = tower.generators
    pres = sylow_presentation(ctx.alpha, ctx.p)
    bad = [r for r in pres.relators if top.eval_word(r, gens) != 0]
    report.add("cross", "Sylow relators hold in the tower", not bad)
    G = normal_form_group(ctx)
    X, Y = gens["A"], gens["B"]
    Z = int(top.commutator(X, Y))

    def phi(codes):
        i, j, k = G.decode(codes)
        full = lambda g, e: top.pow_array(np.full(e.shape, g, dtype=np.int64), e)
        return top.mul(top.mul(full(X, i), full(Y, j)), full(Z, k))

    N = G.order
    if N <= 10**6:
        table = phi(G.all_elements())
        report.add("cross", "word map is bijective", np.unique(table).size == N)
    if N <= exhaustive_limit:
        ok = True
        xs = G.all_elements()
        for a in range(N):
            lhs = table[G.mul(np.full(N, a), xs)]
            rhs = top.mul(np.full(N, table[a]), table)
            if not np.array_equal(lhs, rhs):
                ok = False
                break
        report.add("cross", "word map is multiplicative (all pairs)", ok)
    else:
        rng = np.random.default_rng(seed)
        x = rng.integers(0, N, samples)
        y = rng.integers(0, N, samples)
        ok = np.array_equal(phi(G.mul(x, y)), top.mul(phi(x), phi(y)))
        report.add("cross", f"word map is multiplicative ({samples} random pairs)", ok)
    return report


def cross_check(ctx: SylowContext, tower: ExtensionTower, **kw) -> bool:
    """True iff the tower and the normal-form engine realise the same group."""
    return cross_check_report(ctx, tower, **kw).passed
