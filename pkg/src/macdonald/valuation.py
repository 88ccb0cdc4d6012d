"""Exact evaluation of the Macdonald polynomial expressions and their p-adic valuations.

Everything here is integer arithmetic.  ``gmpy2`` backs the big powers when it is
installed (``mu`` has roughly ``alpha**2 * log2(alpha)`` bits); plain ``int`` is
used otherwise.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

try:
    import gmpy2

    _mpz = gmpy2.mpz
except ImportError:  # pragma: no cover
    gmpy2 = None
    _mpz = int

__all__ = [
    "INFINITY",
    "Case",
    "CaseClass",
    "Case3Witness",
    "Polynomials",
    "ValuationPrediction",
    "LemmaViolation",
    "is_prime",
    "factorize",
    "padic_valuation",
    "geometric_sum",
    "geometric_sum_mod",
    "macdonald_polynomials",
    "polynomials_mod",
    "classify",
    "three_admissible",
    "predict_valuation",
    "lift_exponent_witness",
    "mult_order",
    "EXPRESSIONS",
]


class _Infinity:
    """Valuation of zero.  Compares greater than every integer."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITY"

    __str__ = __repr__

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("macdonald.INFINITY")

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True


INFINITY = _Infinity()


class LemmaViolation(ArithmeticError):
    """An identity that is supposed to hold exactly left a remainder."""


class Case(enum.IntEnum):
    ONE = 1
    TWO = 2
    THREE = 3

    def __str__(self):
        return f"Case{self.value}"


@dataclass(frozen=True)
class CaseClass:
    case: Case
    m: int
    three_admissible: bool

    @property
    def tag(self) -> str:
        return str(self.case)


@dataclass(frozen=True)
class Case3Witness:
    s: int
    u: int
    t_residue: int


@dataclass(frozen=True)
class Polynomials:
    gamma: Optional[int]
    mu: int
    mu0: int
    xi: Optional[int]


EXPRESSIONS = ("gamma", "alpha_minus_one_times_mu", "xi")


@dataclass(frozen=True)
class ValuationPrediction:
    expression: str
    predicted_v: Optional[int]
    applicable: bool
    kind: str  # "exact", "lower_bound" or "not_covered"
    case3_witness: Optional[Case3Witness] = None


def is_prime(p: int) -> bool:
    if not isinstance(p, int) or p < 2:
        return False
    if gmpy2 is not None:
        return bool(gmpy2.is_prime(p))
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def _require_prime(p):
    if not is_prime(p):
        raise ValueError(f"{p!r} is not a prime")


def factorize(n: int) -> dict[int, int]:
    """Prime factorisation of ``|n|`` by trial division."""
    n = abs(int(n))
    if n == 0:
        raise ValueError("cannot factorise 0")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def padic_valuation(n: int, p: int):
    """Largest ``e`` with ``p**e | n``; :data:`INFINITY` for ``n == 0``."""
    _require_prime(p)
    if n == 0:
        return INFINITY
    if gmpy2 is not None:
        return int(gmpy2.remove(_mpz(n), p)[1])
    e = 0
    n = abs(n)
    while n % p == 0:
        n //= p
        e += 1
    return e


def geometric_sum(a: int, n: int) -> int:
    """``1 + a + ... + a**(n-1)`` by exact division ``(a**n - 1) / (a - 1)``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if a == 1:
        return n
    num = _mpz(a) ** n - 1
    q, r = divmod(num, a - 1)
    if r:
        raise LemmaViolation(f"({a}^{n} - 1) not divisible by {a - 1}")
    return q


def geometric_sum_mod(a: int, n: int, modulus: int) -> int:
    """``(1 + a + ... + a**(n-1)) mod modulus`` without forming the full sum."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if a == 1:
        return n % modulus
    big = modulus * abs(a - 1)
    num = (pow(a % big, n, big) - 1) % big
    if num % (a - 1):
        raise LemmaViolation("geometric sum residue is not divisible by a - 1")
    return (num // (a - 1)) % modulus


def _check_alpha(alpha):
    if alpha in (0, 1, 2):
        raise ValueError(f"alpha must not be 0, 1 or 2 (got {alpha})")


def macdonald_polynomials(alpha: int) -> Polynomials:
    """Exact values of gamma (alpha > 0), mu, mu0 = alpha*mu and xi (alpha < 0)."""
    _check_alpha(alpha)
    a = _mpz(alpha)
    gamma = None
    xi = None
    if alpha > 0:
        gamma = int(a**alpha - geometric_sum(alpha, alpha))
    mu = a ** (alpha * alpha + 1) - geometric_sum(alpha, alpha * alpha)
    if alpha < 0:
        # 2 + alpha + ... + alpha**(-alpha-1)
        xi = int(1 + geometric_sum(alpha, -alpha))
    return Polynomials(gamma=gamma, mu=int(mu), mu0=int(a * mu), xi=xi)


def polynomials_mod(alpha: int, modulus: int) -> Polynomials:
    """The same expressions reduced modulo ``modulus`` (non-negative residues)."""
    _check_alpha(alpha)
    M = modulus
    gamma = xi = None
    if alpha > 0:
        gamma = (pow(alpha, alpha, M) - geometric_sum_mod(alpha, alpha, M)) % M
    n2 = alpha * alpha
    mu = (pow(alpha % M, n2 + 1, M) - geometric_sum_mod(alpha, n2, M)) % M
    if alpha < 0:
        xi = (1 + geometric_sum_mod(alpha, -alpha, M)) % M
    return Polynomials(gamma=gamma, mu=mu, mu0=(alpha * mu) % M, xi=xi)


def three_admissible(alpha: int) -> bool:
    v = padic_valuation(alpha - 1, 3)
    if v == 0 or v > 1:
        return True
    return ((alpha - 1) // 3) % 3 == 1


def classify(alpha: int, p: int) -> CaseClass:
    _require_prime(p)
    if (alpha - 1) % p or alpha == 1:
        raise ValueError(f"{p} does not divide alpha - 1 = {alpha - 1}")
    m = padic_valuation(alpha - 1, p)
    if p == 2:
        case = Case.TWO
    elif p == 3 and m == 1 and ((alpha - 1) // 3) % 3 == 2:
        case = Case.THREE
    else:
        case = Case.ONE
    return CaseClass(case=case, m=m, three_admissible=three_admissible(alpha))


def _not_covered(which):
    return ValuationPrediction(which, None, False, "not_covered")


def predict_valuation(alpha: int, p: int, which: str) -> ValuationPrediction:
    """Closed-form valuation of ``gamma``, ``(alpha-1)*mu`` or ``xi`` at ``p``."""
    if which not in EXPRESSIONS:
        raise ValueError(f"unknown expression {which!r}")
    _check_alpha(alpha)
    cc = classify(alpha, p)
    m = cc.m
    if which == "gamma":
        if alpha <= 0:
            raise ValueError("gamma is defined for alpha > 0 only")
        if p == 2:
            return ValuationPrediction(which, 2 * m - 1, True, "exact")
        if cc.case is Case.ONE:
            return ValuationPrediction(which, 2 * m, True, "exact")
        k = (alpha - 1) // 3
        s = padic_valuation(k + 1, 3)
        u = (k + 1) // 3**s
        witness = Case3Witness(s=s, u=u, t_residue=(-u) % 3)
        return ValuationPrediction(which, 2 + s, True, "exact", witness)

    if which == "alpha_minus_one_times_mu":
        if alpha == -1:
            raise ValueError("(alpha-1)*mu is not covered for alpha = -1")
        if p == 2:
            return ValuationPrediction(which, 3 * m, False, "lower_bound")
        if p > 3:
            return ValuationPrediction(which, 3 * m, True, "exact")
        k = (alpha - 1) // 3
        if (alpha - 1) % 3 == 0 and k % 9 == 8:
            return ValuationPrediction(which, 4, True, "exact")
        return _not_covered(which)

    if alpha >= 0 or alpha == -2:
        raise ValueError("xi is covered for alpha < 0, alpha != -2 only")
    if cc.case is Case.ONE:
        return ValuationPrediction(which, 2 * m, True, "exact")
    if cc.case is Case.TWO:
        return ValuationPrediction(which, 2 * m - 1, True, "exact")
    k = (alpha - 1) // 3
    u = (k + 1) // 3
    if u % 3:
        return ValuationPrediction(which, 3, True, "exact")
    return _not_covered(which)


def lift_exponent_witness(k: int, a: int, b: int, p: int) -> int:
    """Integer ``t`` making the lifting-the-exponent identity exact.

    Odd ``p``:  ``(1 + k p^a)^(p^b) = 1 + k p^(a+b) + k t p^(2a+b)``.
    ``p = 2``:  ``(1 + k 2^a)^(2^b) = 1 + k 2^(a+b) + k^2 2^(2a+b-1) + k t 2^(2a+b)``.
    """
    _require_prime(p)
    if a < 1 or b < 0 or (p == 2 and b < 1):
        raise ValueError("need a >= 1 and b >= 0 (b >= 1 when p = 2)")
    P = _mpz(p)
    lhs = (1 + k * P**a) ** (P**b)
    rest = lhs - 1 - k * P ** (a + b)
    if p == 2:
        rest -= k * k * P ** (2 * a + b - 1)
    if k == 0:
        if rest:
            raise LemmaViolation("identity fails for k = 0")
        return 0
    t, r = divmod(rest, k * P ** (2 * a + b))
    if r:
        raise LemmaViolation(f"no integer witness for k={k}, a={a}, b={b}, p={p}")
    return int(t)


def _totient_factors(M):
    f = factorize(M)
    phi = 1
    for q, e in f.items():
        phi *= (q - 1) * q ** (e - 1)
    return phi, factorize(phi) if phi > 1 else {}


def mult_order(alpha: int, M: int) -> int:
    """Least ``n >= 1`` with ``alpha**n == 1 (mod M)``."""
    if M < 2:
        raise ValueError("modulus must be at least 2")
    if math.gcd(alpha, M) != 1:
        raise ValueError(f"gcd({alpha}, {M}) != 1")
    order, primes = _totient_factors(M)
    a = alpha % M
    for q in primes:
        while order % q == 0 and pow(a, order // q, M) == 1:
            order //= q
    return order
