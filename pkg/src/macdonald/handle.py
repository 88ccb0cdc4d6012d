"""Dense finite groups.

Every concrete group in the package encodes its elements as the integers
``0 .. order-1`` with ``0`` the identity.  ``mul`` and ``inv`` act elementwise on
integer arrays, which is what lets the structure computations run as boolean
masks over the whole group.
"""

from __future__ import annotations

from collections import deque
from typing import Callable, Hashable, Mapping, Sequence

import numpy as np

from ._accel import USE_NUMBA, njit

__all__ = [
    "GroupHandle",
    "CayleyGroup",
    "HeisenbergGroup",
    "heisenberg",
    "TrivialGroup",
    "DirectProduct",
    "from_callables",
    "as_codes",
    "Relabeled",
]


def as_codes(x) -> np.ndarray:
    return np.asarray(x, dtype=np.int64)


class GroupHandle:
    """Base class: subclasses set ``order``, ``gens``, ``gen_names`` and define
    ``_mul`` / ``_inv`` on int64 arrays of equal shape."""

    order: int
    gens: np.ndarray
    gen_names: tuple
    identity = 0

    # -- vectorised core ----------------------------------------------------
    def mul(self, x, y) -> np.ndarray:
        x, y = np.broadcast_arrays(as_codes(x), as_codes(y))
        shape = x.shape
        out = self._mul(np.ascontiguousarray(x).ravel(), np.ascontiguousarray(y).ravel())
        return out.reshape(shape)

    def inv(self, x) -> np.ndarray:
        x = as_codes(x)
        return self._inv(np.ascontiguousarray(x).ravel()).reshape(x.shape)

    def _mul(self, x, y):  # pragma: no cover - abstract
        raise NotImplementedError

    def _inv(self, x):  # pragma: no cover - abstract
        raise NotImplementedError

    # -- derived ---------------------------------------------------------------
    def pow(self, x, n) -> np.ndarray:
        """``x**n`` by square-and-multiply; ``n`` may be huge or negative."""
        x = as_codes(x)
        n = int(n)
        if n < 0:
            x, n = self.inv(x), -n
        n %= self.order  # g**|G| = 1
        result = np.zeros_like(x)
        base = x
        while n:
            if n & 1:
                result = self.mul(result, base)
            n >>= 1
            if n:
                base = self.mul(base, base)
        return result

    def pow_array(self, x, n) -> np.ndarray:
        """Elementwise ``x[i] ** n[i]`` for non-negative integer arrays ``n``."""
        x, n = np.broadcast_arrays(as_codes(x), as_codes(n))
        n = n.copy()
        result = np.zeros_like(x)
        base = x.copy()
        while n.any():
            odd = (n & 1).astype(bool)
            if odd.any():
                result[odd] = self.mul(result[odd], base[odd])
            n >>= 1
            live = n > 0
            if live.any():
                base[live] = self.mul(base[live], base[live])
        return result

    def commutator(self, x, y) -> np.ndarray:
        """``[x, y] = x^-1 y^-1 x y``."""
        return self.mul(self.mul(self.inv(x), self.inv(y)), self.mul(x, y))

    def conjugate(self, x, y) -> np.ndarray:
        """``x^y = y^-1 x y``."""
        return self.mul(self.mul(self.inv(y), x), y)

    def multiply(self, g: int, h: int) -> int:
        return int(self.mul(np.array([g]), np.array([h]))[0])

    def invert(self, g: int) -> int:
        return int(self.inv(np.array([g]))[0])

    def power(self, g: int, n: int) -> int:
        return int(self.pow(np.array([g]), n)[0])

    def gen(self, name: str) -> int:
        return int(self.gens[self.gen_names.index(name)])

    def eval_word(self, word, assignment: Mapping[str, int] | None = None) -> int:
        """Evaluate a syllable word; names map to generators unless ``assignment`` given."""
        g = 0
        for name, e in word:
            x = assignment[name] if assignment is not None else self.gen(name)
            g = self.multiply(g, self.power(int(x), e))
        return g

    def all_elements(self) -> np.ndarray:
        return np.arange(self.order, dtype=np.int64)

    def __repr__(self):
        return f"<{type(self).__name__} order={self.order}>"


# -- Cayley-graph backed groups ---------------------------------------------------


@njit
def _trace_kernel(x, y, perms, letters, lengths):
    out = np.empty_like(x)
    for i in range(x.shape[0]):
        g = x[i]
        w = y[i]
        for t in range(lengths[w]):
            g = perms[letters[w, t], g]
        out[i] = g
    return out


def _trace_numpy(x, y, perms, letters, lengths):
    out = x.copy()
    lens = lengths[y]
    rows = letters[y]
    for t in range(letters.shape[1]):
        live = lens > t
        if not live.any():
            break
        out[live] = perms[rows[live, t], out[live]]
    return out


_trace = _trace_kernel if USE_NUMBA else _trace_numpy


class CayleyGroup(GroupHandle):
    """Group given by its right-regular action: ``perms[s][g] = g * gen_s``.

    Each element gets a shortest word in the generators and their inverses
    (breadth-first from the identity); ``x * y`` traces ``x`` along that word.
    """

    def __init__(self, right_perms: Sequence[np.ndarray], gen_names: Sequence[str] | None = None):
        perms = [np.asarray(p, dtype=np.int64) for p in right_perms]
        n = perms[0].shape[0] if perms else 1
        for p in perms:
            if p.shape != (n,) or not np.array_equal(np.sort(p), np.arange(n)):
                raise ValueError("generator actions must be permutations of equal size")
        letters = []
        for p in perms:
            q = np.empty_like(p)
            q[p] = np.arange(n)
            letters += [p, q]
        self.order = n
        self.gen_names = tuple(gen_names) if gen_names else tuple(f"g{i}" for i in range(len(perms)))
        self._perms = np.array(letters, dtype=np.int64).reshape(len(letters), n) if letters else np.zeros((0, n), np.int64)
        self.gens = np.array([p[0] for p in perms], dtype=np.int64)
        self._build_words()

    def _build_words(self):
        n = self.order
        parent = np.full(n, -1, dtype=np.int64)
        via = np.full(n, -1, dtype=np.int64)
        depth = np.zeros(n, dtype=np.int64)
        seen = np.zeros(n, dtype=bool)
        seen[0] = True
        frontier = np.array([0], dtype=np.int64)
        d = 0
        while frontier.size:
            d += 1
            nxt = []
            for s in range(self._perms.shape[0]):
                img = self._perms[s][frontier]
                fresh = ~seen[img]
                if not fresh.any():
                    continue
                img_f, src = img[fresh], frontier[fresh]
                img_f, first = np.unique(img_f, return_index=True)
                parent[img_f] = src[first]
                via[img_f] = s
                depth[img_f] = d
                seen[img_f] = True
                nxt.append(img_f)
            frontier = np.concatenate(nxt) if nxt else np.zeros(0, np.int64)
        if not seen.all():
            raise ValueError("generators do not act transitively: not a regular representation")
        L = int(depth.max()) if n else 0
        letters = np.zeros((n, max(L, 1)), dtype=np.int8 if self._perms.shape[0] < 127 else np.int64)
        # fill words back to front by walking parents level by level
        cur = np.arange(n, dtype=np.int64)
        pos = depth.copy()
        live = pos > 0
        while live.any():
            idx = np.nonzero(live)[0]
            letters[idx, pos[idx] - 1] = via[cur[idx]]
            cur[idx] = parent[cur[idx]]
            pos[idx] -= 1
            live = pos > 0
        self._letters = letters.astype(np.int64)
        self._lengths = depth

    def word_letters(self, g: int) -> list[int]:
        """Shortest word for ``g`` as letter indices ``2*s`` (gen) / ``2*s+1`` (inverse)."""
        return [int(t) for t in self._letters[g, : self._lengths[g]]]

    def _mul(self, x, y):
        return _trace(x, y, self._perms, self._letters, self._lengths)

    def _inv(self, x):
        # reversed word with inverted letters, traced from the identity
        L = self._letters.shape[1]
        lens = self._lengths[x]
        rows = self._letters[x]
        out = np.zeros_like(x)
        for t in range(L - 1, -1, -1):
            live = lens > t
            if not live.any():
                continue
            out[live] = self._perms[rows[live, t] ^ 1, out[live]]
        return out


def from_callables(
    identity: Hashable,
    gens: Sequence[Hashable],
    multiply: Callable,
    cap: int = 10**6,
    gen_names: Sequence[str] | None = None,
) -> CayleyGroup:
    """Enumerate a group given by Python callables and return its dense Cayley form."""
    index = {identity: 0}
    elems = [identity]
    queue = deque([identity])
    while queue:
        g = queue.popleft()
        for s in gens:
            h = multiply(g, s)
            if h not in index:
                if len(elems) >= cap:
                    raise OverflowError(f"group larger than cap {cap}")
                index[h] = len(elems)
                elems.append(h)
                queue.append(h)
    perms = [np.array([index[multiply(g, s)] for g in elems], dtype=np.int64) for s in gens]
    grp = CayleyGroup(perms, gen_names)
    grp.elements = elems
    return grp


class TrivialGroup(GroupHandle):
    order = 1
    gens = np.zeros(0, dtype=np.int64)
    gen_names = ()

    def _mul(self, x, y):
        return np.zeros_like(x)

    def _inv(self, x):
        return np.zeros_like(x)


class HeisenbergGroup(GroupHandle):
    """Unitriangular 3x3 matrices over ``Z/n``, optionally modulo ``<z^d>``.

    ``(a, b, c)`` stands for the matrix with superdiagonal ``a, b`` and corner
    ``c``; the product is ``(a+a', b+b', c+c'+a b')``.  With ``center_mod = d``
    (a divisor of ``n``) the corner is read modulo ``d``.
    """

    def __init__(self, n: int, center_mod: int | None = None):
        if n < 2:
            raise ValueError("need n >= 2")
        d = n if center_mod is None else center_mod
        if n % d:
            raise ValueError("center_mod must divide n")
        self.n, self.d = n, d
        self.order = n * n * d
        self.gen_names = ("x", "y")
        self.gens = np.array([self.encode(1, 0, 0), self.encode(0, 1, 0)], dtype=np.int64)

    def encode(self, a, b, c):
        n, d = self.n, self.d
        return (np.mod(a, n) * n + np.mod(b, n)) * d + np.mod(c, d)

    def decode(self, x):
        x = as_codes(x)
        n, d = self.n, self.d
        return x // (n * d), (x // d) % n, x % d

    def _mul(self, x, y):
        a, b, c = self.decode(x)
        a2, b2, c2 = self.decode(y)
        return self.encode(a + a2, b + b2, c + c2 + a * b2)

    def _inv(self, x):
        a, b, c = self.decode(x)
        return self.encode(-a, -b, -c + a * b)

    @property
    def z(self) -> int:
        return int(self.encode(0, 0, 1))


def heisenberg(n: int, center_mod: int | None = None) -> HeisenbergGroup:
    return HeisenbergGroup(n, center_mod)


class DirectProduct(GroupHandle):
    """``G x H`` with codes ``g * |H| + h``; generators are the factors' generators."""

    def __init__(self, *factors: GroupHandle):
        self.factors = factors
        self.order = int(np.prod([f.order for f in factors], dtype=object))
        self._radix = []
        r = 1
        for f in reversed(factors):
            self._radix.append(r)
            r *= f.order
        self._radix.reverse()
        gens, names = [], []
        for i, f in enumerate(factors):
            for name, g in zip(f.gen_names, f.gens):
                gens.append(int(g) * self._radix[i])
                names.append(f"{name}{i}")
        self.gens = np.array(gens, dtype=np.int64)
        self.gen_names = tuple(names)

    def split(self, x):
        x = as_codes(x)
        return [(x // r) % f.order for f, r in zip(self.factors, self._radix)]

    def join(self, parts):
        out = 0
        for p, r in zip(parts, self._radix):
            out = out + p * r
        return as_codes(out)

    def _mul(self, x, y):
        return self.join([f.mul(a, b) for f, a, b in zip(self.factors, self.split(x), self.split(y))])

    def _inv(self, x):
        return self.join([f.inv(a) for f, a in zip(self.factors, self.split(x))])


class Relabeled(GroupHandle):
    """The same group as ``base`` presented with a different generating list."""

    def __init__(self, base: GroupHandle, gens: Sequence[int], gen_names: Sequence[str]):
        self.base = base
        self.order = base.order
        self.gens = np.array(list(gens), dtype=np.int64)
        self.gen_names = tuple(gen_names)

    def _mul(self, x, y):
        return self.base._mul(x, y)

    def _inv(self, x):
        return self.base._inv(x)

    def __getattr__(self, name):
        # forward helpers such as encode/decode/theta to the wrapped group
        if name == "base":
            raise AttributeError(name)
        return getattr(self.base, name)
