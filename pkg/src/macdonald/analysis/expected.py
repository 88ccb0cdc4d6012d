"""Closed-form structure of the Sylow subgroup J, per case.

Series terms are given by generator words over ``A``, ``B`` and ``C = [A, B]``.
They are compared with the computed series as element sets.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form

from ..presentation import Word, commutator, format_word, word_power
from ..valuation import Case, classify

__all__ = ["ExpectedStructure", "expected_structure", "snf_invariants", "C_WORD"]

C_WORD: Word = (("C", 1),)


def _g(name: str, e: int = 1) -> Word:
    return ((name, e),)


@dataclass(frozen=True)
class ExpectedStructure:
    alpha: int
    p: int
    case: Case
    m: int
    order: int
    nilpotency_class: int
    exponent: int
    upper: tuple  # generator lists of Z_1 .. Z_{c-1}
    lower: tuple  # generator lists of gamma_2 .. gamma_c
    powers: dict = field(default_factory=dict)  # n -> i with J^n = Z_i
    abelian_term: Optional[int] = None  # i with Z_i abelian
    z_relations: Optional[tuple] = None  # relation rows of that abelian Z_i
    z_exponent: Optional[int] = None
    section_invariants: Optional[tuple] = None  # (i, j, invariants of Z_i / Z_j)
    heisenberg: Optional[tuple] = None  # (n, center_mod, i) with J/Z_i = Heis(Z/n)/<z^center_mod>
    quaternion: bool = False
    reverse_series: bool = True  # gamma_i = Z_{c+1-i}

    def describe(self, words) -> str:
        return "<" + ", ".join(format_word(w) for w in words) + ">"


def snf_invariants(rows) -> list:
    """Invariant factors of the abelian group with the given relation rows."""
    M = smith_normal_form(Matrix(rows), domain=ZZ)
    diag = [abs(int(M[i, i])) for i in range(min(M.shape))]
    if any(d == 0 for d in diag) or M.shape[0] < M.shape[1]:
        raise ValueError("relation matrix does not define a finite group")
    return sorted(d for d in diag if d != 1)


def expected_structure(alpha: int, p: int) -> ExpectedStructure:
    cc = classify(alpha, p)
    m = cc.m
    A, B, C = (lambda e=1: _g("A", e)), (lambda e=1: _g("B", e)), (lambda e=1: _g("C", e))
    if cc.case is Case.ONE:
        q = p**m
        upper = (
            (A(q * q),),
            (A(q * q), C(q)),
            (A(q), B(q), C(q)),
            (A(q), B(q), C()),
        )
        return ExpectedStructure(
            alpha, p, cc.case, m, p ** (7 * m), 5, q**3, upper, tuple(reversed(upper)),
            powers={q * q: 1, q: 3},
            abelian_term=3,
            z_relations=((q * q, 0, 0), (q, q, 0), (0, 0, q)),
            z_exponent=q * q,
            heisenberg=(q, None, 3),
        )
    if cc.case is Case.TWO and m == 1:
        upper = ((A(2),), (A(2), C()))
        return ExpectedStructure(
            alpha, 2, cc.case, 1, 16, 3, 8, upper, tuple(reversed(upper)), quaternion=True
        )
    if cc.case is Case.TWO:
        h = 2 ** (m - 1)
        q = 2**m
        upper = (
            (A(2 ** (2 * m - 1)),),
            (A(2 ** (2 * m - 1)), C(h)),
            (A(q), B(q), C(h)),
            (A(h), B(h), C()),
        )
        lower = (
            (A(q), B(q), C()),
            (A(q), B(q), C(q)),
            (A(q * q), commutator(A(), word_power(B(), q))),
            (A(q * q),),
        )
        return ExpectedStructure(
            alpha, 2, cc.case, m, 2 ** (7 * m - 3), 5, 2 ** (3 * m - 1), upper, lower,
            abelian_term=3,
            z_relations=((2 ** (2 * m - 2), 0, -q), (h, h, 0), (2 ** (2 * m - 1), 0, 0)),
            z_exponent=2 ** (2 * m - 1),
            heisenberg=(q, h, 3),
            reverse_series=False,
        )
    upper = (
        (A(27),),
        (A(27), C(9)),
        (A(9), B(9), C(9)),
        (A(9), B(9), C(3)),
        (A(3), B(3), C(3)),
        (A(3), B(3), C()),
    )
    return ExpectedStructure(
        alpha, 3, cc.case, 1, 3**10, 7, 81, upper, tuple(reversed(upper)),
        powers={3: 5, 9: 3, 27: 1},
        abelian_term=3,
        z_exponent=9,
        section_invariants=(5, 3, (3, 3, 3)),
        heisenberg=(3, None, 5),
    )
