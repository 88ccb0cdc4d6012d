"""Normal forms ``A^i B^j C^k`` of the Sylow subgroup J and their multiplication.

Collection rules (``C = [A, B]``, conjugation ``b^a = a^-1 b a``):

* ``C^-1 A C = A^alpha`` and ``C B C^-1 = B^alpha``, so ``C^c`` moves past powers
  of ``A`` and ``B`` diagonally;
* ``B A^x = A^x B A^e C^-x`` with ``e = (alpha-1) S_x``,
  ``S_x = alpha + 2 alpha^2 + ... + (x-1) alpha^(x-1)``; this recursion stops
  once ``x`` is a multiple of ``j0`` because ``A^j0`` is central;
* ``B^j0 = A^-j0`` and, for p = 2, ``C^k0 = A^(2^(3m-2))``.

The map ``(b, s) -> normal form of B^b A^s`` is tabulated once per context;
a product then costs a handful of table lookups.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .._accel import USE_NUMBA, njit
from ..handle import GroupHandle, as_codes
from ..valuation import Case, CaseClass, classify
from ..presentation import canonical_alpha

__all__ = [
    "SylowContext",
    "NormalForm",
    "make_context",
    "NormalFormGroup",
    "normal_form_group",
    "nf_mul",
    "nf_inv",
    "nf_pow",
    "nf_commutator",
    "theta",
    "CollectionError",
    "TABLE_CAP",
]

TABLE_CAP = 20_000_000


class CollectionError(RuntimeError):
    """The collection recursion failed to terminate (internal error)."""


@dataclass(frozen=True)
class SylowContext:
    alpha: int
    p: int
    m: int
    case: CaseClass
    bounds: tuple
    order_A: int
    order_B: int
    order_C: int
    alpha_inv: int
    expected_order: int
    alpha_input: int

    @property
    def i0(self):
        return self.bounds[0]

    @property
    def j0(self):
        return self.bounds[1]

    @property
    def k0(self):
        return self.bounds[2]

    @property
    def c_overflow(self) -> int:
        """Exponent ``e`` with ``C^k0 = A^e`` (0 outside Case 2)."""
        if self.case.case is Case.TWO:
            return 2 ** (3 * self.m - 2)
        return 0


class NormalForm(NamedTuple):
    i: int
    j: int
    k: int


def make_context(alpha: int, p: int) -> SylowContext:
    cc = classify(alpha, p)
    m = cc.m
    beta = canonical_alpha(alpha, p)
    if cc.case is Case.ONE:
        bounds = (p ** (3 * m), p ** (2 * m), p ** (2 * m))
        order_C = p ** (2 * m)
    elif cc.case is Case.TWO:
        bounds = (2 ** (3 * m - 1), 2 ** (2 * m - 1), 2 ** (2 * m - 1))
        order_C = 2 ** (2 * m)
    else:
        bounds = (81, 27, 27)
        order_C = 27
    i0 = bounds[0]
    return SylowContext(
        alpha=beta,
        p=p,
        m=m,
        case=cc,
        bounds=bounds,
        order_A=i0,
        order_B=i0,
        order_C=order_C,
        alpha_inv=pow(beta, -1, i0),
        expected_order=bounds[0] * bounds[1] * bounds[2],
        alpha_input=alpha,
    )


# -- table construction ----------------------------------------------------------


def _b_past_a(ctx: SylowContext):
    """For every ``x`` mod i0, ``(a, c)`` with ``B A^x = A^a B C^c``."""
    i0, j0, al = ctx.i0, ctx.j0, ctx.alpha
    # S_x mod i0 for all x
    S = np.zeros(i0, dtype=object)
    acc, apow = 0, al % i0  # apow = alpha^x
    for x in range(1, i0):
        S[x] = acc
        acc = (acc + x * apow) % i0
        apow = apow * al % i0
    shift = np.array([((al - 1) * int(S[x])) % i0 for x in range(i0)], dtype=np.int64)

    ra = np.full(i0, -1, dtype=np.int64)
    rc = np.zeros(i0, dtype=np.int64)
    for x0 in range(i0):
        if ra[x0] >= 0:
            continue
        chain, x = [], x0
        on_chain = set()
        while ra[x] < 0 and x % j0 != 0:
            if x in on_chain:
                raise CollectionError(f"B-past-A recursion cycles at exponent {x}")
            on_chain.add(x)
            chain.append(x)
            x = int(shift[x])
        if ra[x] < 0:  # central exponent
            ra[x], rc[x] = x, 0
        for y in reversed(chain):
            e = int(shift[y])
            ra[y] = (y + ra[e]) % i0
            rc[y] = rc[e] - y
    return ra, rc


def _normalize(ctx, a, b, c):
    """Reduce unbounded exponent arrays to normal-form ranges."""
    i0, j0, k0 = ctx.bounds
    qc, c = np.divmod(c, k0)
    a = a + qc * ctx.c_overflow
    qb, b = np.divmod(b, j0)
    a = a - qb * j0
    return np.mod(a, i0), b, c


def _build_tables(ctx: SylowContext):
    i0, j0, k0 = ctx.bounds
    if i0 * j0 > TABLE_CAP:
        raise MemoryError(f"collection table of size {i0 * j0} exceeds cap {TABLE_CAP}")
    apow = np.array([pow(ctx.alpha, c, i0) for c in range(k0)], dtype=np.int64)
    ra, rc = _b_past_a(ctx)
    Ta = np.empty((j0, i0), dtype=np.int64)
    Tb = np.empty((j0, i0), dtype=np.int64)
    Tc = np.empty((j0, i0), dtype=np.int64)
    s = np.arange(i0, dtype=np.int64)
    Ta[0], Tb[0], Tc[0] = s, 0, 0
    for j in range(1, j0):
        # B^j A^s = (B^(j-1) A^a) B C^c
        a1, b1, c1 = Ta[j - 1][ra], Tb[j - 1][ra], Tc[j - 1][ra]
        Ta[j], Tb[j], Tc[j] = _normalize(ctx, a1, b1 + apow[c1], c1 + rc)
    return Ta, Tb, Tc


# -- multiplication kernels ------------------------------------------------------------


@njit
def _nf_mul_kernel(x, y, Ta, Tb, Tc, apow, ainvpow, i0, j0, k0, c_over):
    out = np.empty_like(x)
    jk = j0 * k0
    for n in range(x.shape[0]):
        u = x[n]
        v = y[n]
        a = u // jk
        b = (u // k0) % j0
        c = u % k0
        a2 = v // jk
        b2 = (v // k0) % j0
        c2 = v % k0
        s = (a2 * ainvpow[c]) % i0
        t = (b2 * apow[c]) % i0
        a1 = Ta[b, s]
        b1 = Tb[b, s]
        c1 = Tc[b, s]
        A = a + a1
        B = b1 + t * apow[c1]
        C = c1 + c + c2
        if C >= k0:
            q = C // k0
            C -= q * k0
            A += q * c_over
        q = B // j0
        B -= q * j0
        A -= q * j0
        A %= i0
        if A < 0:
            A += i0
        out[n] = (A * j0 + B) * k0 + C
    return out


def _nf_mul_numpy(x, y, Ta, Tb, Tc, apow, ainvpow, i0, j0, k0, c_over):
    jk = j0 * k0
    a, b, c = x // jk, (x // k0) % j0, x % k0
    a2, b2, c2 = y // jk, (y // k0) % j0, y % k0
    s = (a2 * ainvpow[c]) % i0
    t = (b2 * apow[c]) % i0
    a1, b1, c1 = Ta[b, s], Tb[b, s], Tc[b, s]
    A = a + a1
    B = b1 + t * apow[c1]
    qc, C = np.divmod(c1 + c + c2, k0)
    A = A + qc * c_over
    qb, B = np.divmod(B, j0)
    A = np.mod(A - qb * j0, i0)
    return (A * j0 + B) * k0 + C


_nf_mul = _nf_mul_kernel if USE_NUMBA else _nf_mul_numpy


class NormalFormGroup(GroupHandle):
    """J realised on normal-form codes ``(i*j0 + j)*k0 + k``."""

    def __init__(self, ctx: SylowContext):
        self.ctx = ctx
        i0, j0, k0 = ctx.bounds
        self.order = ctx.expected_order
        self._Ta, self._Tb, self._Tc = _build_tables(ctx)
        self._apow = np.array([pow(ctx.alpha, c, i0) for c in range(k0)], dtype=np.int64)
        self._ainvpow = np.array([pow(ctx.alpha_inv, c, i0) for c in range(k0)], dtype=np.int64)
        self.gen_names = ("A", "B")
        self.gens = np.array([self.encode(1, 0, 0), self.encode(0, 1, 0)], dtype=np.int64)

    def _args(self):
        i0, j0, k0 = self.ctx.bounds
        return (self._Ta, self._Tb, self._Tc, self._apow, self._ainvpow, i0, j0, k0, self.ctx.c_overflow)

    def encode(self, i, j, k):
        """Code of ``A^i B^j C^k`` for arbitrary integer exponents."""
        i0, j0, k0 = self.ctx.bounds
        if np.ndim(i) == 0 and np.ndim(j) == 0 and np.ndim(k) == 0:
            i, j, k = int(i), int(j), int(k)
            if 0 <= i < i0 and 0 <= j < j0 and 0 <= k < k0:
                return (i * j0 + j) * k0 + k
        a = self._from_exponents(i, j, k)
        return a if np.ndim(a) else int(a)

    def _from_exponents(self, i, j, k):
        A = self._pow_gen(0, i)
        B = self._pow_gen(1, j)
        C = self._pow_c(k)
        return self.mul(self.mul(A, B), C)

    def _pow_gen(self, which, e):
        e = as_codes(e)
        i0 = self.ctx.i0
        e = np.mod(e, i0)
        if which == 0:
            a, b, c = e, np.zeros_like(e), np.zeros_like(e)
        else:
            a, b, c = np.zeros_like(e), e, np.zeros_like(e)
        a, b, c = _normalize(self.ctx, a, b, c)
        return self._code(a, b, c)

    def _pow_c(self, e):
        e = np.mod(as_codes(e), self.ctx.order_C)
        z = np.zeros_like(e)
        a, b, c = _normalize(self.ctx, z, z, e)
        return self._code(a, b, c)

    def _code(self, a, b, c):
        _, j0, k0 = self.ctx.bounds
        return (as_codes(a) * j0 + b) * k0 + c

    def decode(self, x):
        _, j0, k0 = self.ctx.bounds
        x = as_codes(x)
        return x // (j0 * k0), (x // k0) % j0, x % k0

    def _mul(self, x, y):
        return _nf_mul(x, y, *self._args())

    def _inv(self, x):
        a, b, c = self.decode(x)
        return self.mul(self.mul(self._pow_c(-c), self._pow_gen(1, -b)), self._pow_gen(0, -a))

    @property
    def C(self) -> int:
        return int(self.commutator(self.gens[0], self.gens[1]))

    def theta(self, x):
        """Image under the automorphism swapping A and B (so C goes to C^-1)."""
        a, b, c = self.decode(x)
        return self.mul(self.mul(self._pow_gen(1, a), self._pow_gen(0, b)), self._pow_c(-c))

    def nf(self, x) -> NormalForm:
        a, b, c = self.decode(int(x))
        return NormalForm(int(a), int(b), int(c))


@functools.lru_cache(maxsize=32)
def normal_form_group(ctx: SylowContext) -> NormalFormGroup:
    return NormalFormGroup(ctx)


def _check_nf(ctx, x):
    x = NormalForm(*x)
    if not (0 <= x.i < ctx.i0 and 0 <= x.j < ctx.j0 and 0 <= x.k < ctx.k0):
        raise ValueError(f"{tuple(x)} is not a normal form for bounds {ctx.bounds}")
    return normal_form_group(ctx).encode(*x)


def nf_mul(ctx: SylowContext, x, y) -> NormalForm:
    G = normal_form_group(ctx)
    return G.nf(G.multiply(_check_nf(ctx, x), _check_nf(ctx, y)))


def nf_inv(ctx: SylowContext, x) -> NormalForm:
    G = normal_form_group(ctx)
    return G.nf(G.invert(_check_nf(ctx, x)))


def nf_pow(ctx: SylowContext, x, n: int) -> NormalForm:
    G = normal_form_group(ctx)
    return G.nf(G.power(_check_nf(ctx, x), n))


def nf_commutator(ctx: SylowContext, x, y) -> NormalForm:
    G = normal_form_group(ctx)
    return G.nf(int(G.commutator(_check_nf(ctx, x), _check_nf(ctx, y))))


def theta(ctx: SylowContext, x) -> NormalForm:
    G = normal_form_group(ctx)
    return G.nf(int(G.theta(_check_nf(ctx, x))))
