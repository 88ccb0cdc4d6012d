"""Finite presentations of G(alpha) and of its Sylow subgroups.

A word is a tuple of ``(generator, exponent)`` syllables in canonical form:
adjacent syllables on the same generator are merged, zero exponents dropped.
Relators are stored canonically; commutator and conjugation sugar is only
understood by the parser.

Text format::

    gens: A B
    # comment
    B^-1 A^-1 B A B^-1 A B A^-3
    [A,B]^2 = A^B          # sugar, expanded on parse

``a^b`` means ``b^-1 a b`` and ``[a,b]`` means ``a^-1 b^-1 a b``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

from .valuation import Case, classify

__all__ = [
    "Word",
    "PresentationSpec",
    "PresentationError",
    "canonical_word",
    "word_inverse",
    "word_power",
    "word_mul",
    "commutator",
    "conjugate",
    "parse_word",
    "format_word",
    "parse_presentation",
    "format_presentation",
    "macdonald_presentation",
    "canonical_alpha",
    "sylow_exponent",
    "sylow_presentation",
    "adjoin_relators",
]

Word = tuple  # tuple[tuple[str, int], ...]


class PresentationError(ValueError):
    """Malformed presentation text or a word over undeclared generators."""


def canonical_word(syllables: Iterable[Sequence]) -> Word:
    """Free reduction: merge equal neighbours and drop zero exponents."""
    out: list[list] = []
    for g, e in syllables:
        e = int(e)
        if e == 0:
            continue
        if out and out[-1][0] == g:
            out[-1][1] += e
            if out[-1][1] == 0:
                out.pop()
        else:
            out.append([g, e])
    return tuple((g, e) for g, e in out)


def word_inverse(w: Word) -> Word:
    return tuple((g, -e) for g, e in reversed(w))


def word_mul(*words: Word) -> Word:
    return canonical_word(s for w in words for s in w)


def word_power(w: Word, n: int) -> Word:
    if n < 0:
        w, n = word_inverse(w), -n
    if len(w) == 1:
        g, e = w[0]
        return canonical_word([(g, e * n)])
    return canonical_word(s for _ in range(n) for s in w)


def commutator(a: Word, b: Word) -> Word:
    return word_mul(word_inverse(a), word_inverse(b), a, b)


def conjugate(a: Word, b: Word) -> Word:
    """``a^b = b^-1 a b``."""
    return word_mul(word_inverse(b), a, b)


@dataclass(frozen=True)
class PresentationSpec:
    generators: tuple
    relators: tuple

    def __post_init__(self):
        gens = tuple(self.generators)
        if len(set(gens)) != len(gens):
            raise PresentationError("duplicate generator names")
        for g in gens:
            if not _NAME.fullmatch(g):
                raise PresentationError(f"bad generator name {g!r}")
        rels = tuple(canonical_word(r) for r in self.relators)
        known = set(gens)
        for r in rels:
            for g, _ in r:
                if g not in known:
                    raise PresentationError(f"relator uses undeclared generator {g!r}")
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "relators", rels)

    def to_text(self) -> str:
        return format_presentation(self)

    @classmethod
    def from_text(cls, text: str) -> "PresentationSpec":
        return parse_presentation(text)


# -- parsing -----------------------------------------------------------------

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_TOKEN = re.compile(r"\s*(?:([A-Za-z_][A-Za-z0-9_]*)|(-?\d+)|([\[\]\(\)\^,=*]))")


def _tokenize(text):
    pos, toks = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise PresentationError(f"unexpected character at {text[pos:]!r}")
        name, num, sym = m.groups()
        if name is not None:
            toks.append(("name", name))
        elif num is not None:
            toks.append(("int", int(num)))
        else:
            toks.append(("sym", sym))
        pos = m.end()
    return toks


class _Parser:
    def __init__(self, text, gens):
        self.toks = _tokenize(text)
        self.i = 0
        self.gens = set(gens) if gens is not None else None

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, kind=None, value=None):
        tok = self.peek()
        if tok[0] is None or (kind and tok[0] != kind) or (value and tok[1] != value):
            want = value or kind or "token"
            raise PresentationError(f"expected {want}, got {tok[1]!r}")
        self.i += 1
        return tok

    def relator(self):
        lhs = self.word()
        if self.peek() == ("sym", "="):
            self.take()
            rhs = self.word()
            lhs = word_mul(lhs, word_inverse(rhs))
        if self.peek()[0] is not None:
            raise PresentationError(f"trailing input near {self.peek()[1]!r}")
        return lhs

    def word(self):
        parts = []
        while True:
            kind, val = self.peek()
            if kind == "sym" and val == "*":
                self.take()
                continue
            if kind == "name" or (kind == "sym" and val in "[(") or (kind == "int" and val == 1):
                parts.append(self.factor())
            else:
                break
        return word_mul(*parts) if parts else ()

    def atom(self):
        kind, val = self.peek()
        if kind == "name":
            self.take()
            if self.gens is not None and val not in self.gens:
                raise PresentationError(f"unknown generator {val!r}")
            return ((val, 1),)
        if kind == "int" and val == 1:
            self.take()
            return ()
        if (kind, val) == ("sym", "("):
            self.take()
            w = self.word()
            self.take("sym", ")")
            return w
        if (kind, val) == ("sym", "["):
            self.take()
            a = self.word()
            self.take("sym", ",")
            b = self.word()
            self.take("sym", "]")
            return commutator(a, b)
        raise PresentationError(f"unexpected token {val!r}")

    def factor(self):
        w = self.atom()
        while self.peek() == ("sym", "^"):
            self.take()
            kind, val = self.peek()
            if kind == "int":
                self.take()
                w = word_power(w, val)
            else:
                w = conjugate(w, self.atom())
        return w


def parse_word(text: str, generators: Sequence[str] | None = None) -> Word:
    """Parse one word (sugar allowed); ``lhs = rhs`` yields ``lhs rhs^-1``."""
    return _Parser(text, generators).relator()


def format_word(w: Word) -> str:
    if not w:
        return "1"
    return " ".join(g if e == 1 else f"{g}^{e}" for g, e in w)


def parse_presentation(text: str) -> PresentationSpec:
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines or not lines[0].startswith("gens:"):
        raise PresentationError("first line must be 'gens: ...'")
    gens = lines[0][len("gens:"):].replace(",", " ").split()
    rels = [parse_word(line, gens) for line in lines[1:]]
    return PresentationSpec(tuple(gens), tuple(rels))


def format_presentation(spec: PresentationSpec) -> str:
    out = ["gens: " + " ".join(spec.generators)]
    out.extend(format_word(r) for r in spec.relators)
    return "\n".join(out) + "\n"


# -- the Macdonald presentations -----------------------------------------------

_A = (("A", 1),)
_B = (("B", 1),)


def macdonald_presentation(alpha: int) -> PresentationSpec:
    """``<A, B | A^[A,B] = A^alpha, B^[B,A] = B^alpha>``."""
    if alpha in (0, 1, 2):
        raise ValueError(f"alpha must not be 0, 1 or 2 (got {alpha})")
    r1 = word_mul(conjugate(_A, commutator(_A, _B)), (("A", -alpha),))
    r2 = word_mul(conjugate(_B, commutator(_B, _A)), (("B", -alpha),))
    return PresentationSpec(("A", "B"), (r1, r2))


def sylow_exponent(alpha: int, p: int) -> int:
    """Bound on the order of A and B in the Sylow p-subgroup."""
    cc = classify(alpha, p)
    if cc.case is Case.TWO:
        return 2 ** (3 * cc.m - 1)
    if cc.case is Case.THREE:
        return 81
    return p ** (3 * cc.m)


def canonical_alpha(alpha: int, p: int) -> int:
    """Least ``beta > 2`` congruent to alpha modulo :func:`sylow_exponent`."""
    cc = classify(alpha, p)
    M = sylow_exponent(alpha, p)
    beta = alpha % M
    while beta <= 2:
        beta += M
    got = classify(beta, p)
    if (got.case, got.m) != (cc.case, cc.m):  # pragma: no cover - congruence preserves both
        raise AssertionError(f"canonical representative {beta} changes the case of {alpha}")
    return beta


def adjoin_relators(spec: PresentationSpec, extra: Iterable[Union[Word, str]]) -> PresentationSpec:
    """Same generators, relators extended by ``extra`` (duplicates skipped)."""
    rels = list(spec.relators)
    seen = set(rels)
    for w in extra:
        w = parse_word(w, spec.generators) if isinstance(w, str) else canonical_word(w)
        for g, _ in w:
            if g not in spec.generators:
                raise PresentationError(f"unknown generator {g!r}")
        if w not in seen:
            seen.add(w)
            rels.append(w)
    return PresentationSpec(spec.generators, tuple(rels))


def sylow_presentation(alpha: int, p: int) -> PresentationSpec:
    """Presentation of the Sylow p-subgroup: Macdonald relators plus ``A^e = B^e = 1``."""
    beta = canonical_alpha(alpha, p)
    e = sylow_exponent(alpha, p)
    return adjoin_relators(macdonald_presentation(beta), [(("A", e),), (("B", e),)])
