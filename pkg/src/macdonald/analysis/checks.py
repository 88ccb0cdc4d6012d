"""Named pass/fail checks over a handle for J generated by ``A`` and ``B``."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ..handle import GroupHandle, heisenberg
from ..presentation import canonical_alpha, sylow_exponent
from ..valuation import Case, classify, polynomials_mod
from .expected import ExpectedStructure, expected_structure, snf_invariants
from .groups import (
    DEFAULT_CAP,
    HomomorphismError,
    abelian_invariants,
    center,
    centralizer,
    epimorphism_kernel,
    exponent,
    element_orders,
    is_abelian,
    lower_central_series,
    normalizer,
    power_subgroup,
    product_set,
    quotient,
    subgroup_generated,
    upper_central_series,
)

__all__ = [
    "Check",
    "CheckList",
    "generators_ABC",
    "relation_pack",
    "order_checks",
    "decomposition_checks",
    "structure_checks",
    "axiom_checks",
    "theta_checks",
    "negative_representative",
]


@dataclass
class Check:
    name: str
    claim: str
    ok: Optional[bool]  # None: not run (e.g. refused by the enumeration cap)
    detail: str = ""

    @property
    def status(self) -> str:
        return "skipped" if self.ok is None else ("pass" if self.ok else "fail")


@dataclass
class CheckList:
    checks: list = field(default_factory=list)

    def add(self, name: str, claim: str, ok, detail: str = "") -> bool:
        self.checks.append(Check(name, claim, bool(ok), detail))
        return bool(ok)

    def skip(self, name: str, claim: str, reason: str) -> None:
        self.checks.append(Check(name, claim, None, reason))

    def extend(self, other) -> "CheckList":
        self.checks.extend(other)
        return self

    @property
    def passed(self) -> bool:
        return all(c.ok is not False for c in self.checks)

    @property
    def failures(self) -> list:
        return [c for c in self.checks if c.ok is False]

    def __iter__(self):
        return iter(self.checks)

    def __len__(self):
        return len(self.checks)

    def __str__(self):
        return "\n".join(f"[{c.status}] {c.name}: {c.claim}" + (f" ({c.detail})" if c.detail else "") for c in self.checks)


def generators_ABC(G: GroupHandle) -> dict:
    a, b = G.gen("A"), G.gen("B")
    return {"A": a, "B": b, "C": int(G.commutator(a, b))}


def negative_representative(alpha: int, p: int) -> int:
    """Largest negative integer other than -2 defining the same Sylow subgroup."""
    M = sylow_exponent(alpha, p)
    beta = canonical_alpha(alpha, p) - M
    while beta >= 0 or beta == -2:
        beta -= M
    return beta


def _is1(G, *parts) -> bool:
    g = 0
    for x, e in parts:
        g = G.multiply(g, G.power(x, e))
    return g == 0


def relation_pack(G: GroupHandle, alpha: int, p: int) -> CheckList:
    """Defining relations plus their consequences with huge exponents."""
    out = CheckList()
    g = generators_ABC(G)
    A, B, C = g["A"], g["B"], g["C"]
    beta = canonical_alpha(alpha, p)
    n = G.order
    out.add("relator A", "A^[A,B] = A^alpha", G.conjugate(A, C) == G.power(A, beta))
    out.add("relator B", "B^[B,A] = B^alpha", G.conjugate(B, G.inv(C)) == G.power(B, beta))
    cc = classify(alpha, p)
    m = cc.m
    if cc.case is Case.ONE:
        e3, e2 = p ** (3 * m), p ** (2 * m)
        out.add("cross relations", f"A^{e3} = B^{e3} = C^{e2} = A^{e2}B^{e2} = 1",
                _is1(G, (A, e3)) and _is1(G, (B, e3)) and _is1(G, (C, e2)) and _is1(G, (A, e2), (B, e2)))
    elif cc.case is Case.TWO:
        a3, a2, c2, c1 = 2 ** (3 * m - 1), 2 ** (3 * m - 2), 2 ** (2 * m), 2 ** (2 * m - 1)
        same = G.power(A, a2) == G.power(C, c1) == G.power(B, a2)
        out.add("cross relations", f"A^{a2} = C^{c1} = B^{a2}; A^{a3} = B^{a3} = C^{c2} = A^{c1}B^{c1} = 1",
                same and _is1(G, (A, a3)) and _is1(G, (B, a3)) and _is1(G, (C, c2)) and _is1(G, (A, c1), (B, c1)))
    else:
        out.add("cross relations", "A^81 = B^81 = C^27 = A^27B^27 = 1",
                _is1(G, (A, 81)) and _is1(G, (B, 81)) and _is1(G, (C, 27)) and _is1(G, (A, 27), (B, 27)))
    pm = polynomials_mod(beta, n)
    out.add("gamma relation", "A^gamma B^gamma = 1, A^((alpha-1)gamma) = 1 = B^((alpha-1)gamma)",
            _is1(G, (A, pm.gamma), (B, pm.gamma)) and _is1(G, (A, (beta - 1) * pm.gamma)) and _is1(G, (B, (beta - 1) * pm.gamma)))
    out.add("mu0 relation", "A^mu0 B^mu0 = 1, A^((alpha-1)mu0) = 1 = B^((alpha-1)mu0)",
            _is1(G, (A, pm.mu0), (B, pm.mu0)) and _is1(G, (A, (beta - 1) * pm.mu0)) and _is1(G, (B, (beta - 1) * pm.mu0)))
    neg = negative_representative(alpha, p)
    xi = polynomials_mod(neg, n).xi
    out.add("xi relation", f"A^xi B^xi = 1 and A^((alpha-1)xi) = 1 = B^((alpha-1)xi) at alpha = {neg}",
            _is1(G, (A, xi), (B, xi)) and _is1(G, (A, (neg - 1) * xi)) and _is1(G, (B, (neg - 1) * xi)))
    return out


def order_checks(G: GroupHandle, alpha: int, p: int) -> CheckList:
    """Orders of A, C, <A, C> and <A> n <B>."""
    out = CheckList()
    g = generators_ABC(G)
    A, B, C = g["A"], g["B"], g["C"]
    cc = classify(alpha, p)
    m = cc.m
    if cc.case is Case.ONE:
        oa, oc, oac, meet = p ** (3 * m), p ** (2 * m), p ** (5 * m), p**m
    elif cc.case is Case.TWO:
        oa, oc, oac, meet = 2 ** (3 * m - 1), 2 ** (2 * m), 2 ** (5 * m - 2), 2**m
    else:
        oa, oc, oac, meet = 81, 27, 3**7, 3
    ords = element_orders(G, [A, B, C])
    out.add("order of A", f"|A| = |B| = {oa}", ords[0] == oa and ords[1] == oa, f"got {ords[0]}, {ords[1]}")
    out.add("order of C", f"|C| = {oc}", ords[2] == oc, f"got {ords[2]}")
    if cc.case is Case.TWO:
        t = G.power(A, 2 ** (3 * m - 2))
        out.add("Case 2 involution", "A^(2^(3m-2)) = C^(2^(2m-1)) has order 2",
                t == G.power(C, 2 ** (2 * m - 1)) and t != 0 and G.power(t, 2) == 0)
    HA, HB = subgroup_generated(G, [A]), subgroup_generated(G, [B])
    out.add("order of <A,C>", f"|<A,C>| = {oac}", subgroup_generated(G, [A, C]).order == oac)
    out.add("<A> meet <B>", f"|<A> n <B>| = {meet}", (HA & HB).order == meet)
    return out


def decomposition_checks(G: GroupHandle) -> CheckList:
    """J = <X><Y><Z> for all six orderings of A, B, C."""
    out = CheckList()
    g = generators_ABC(G)
    subs = {k: subgroup_generated(G, [v]) for k, v in g.items()}
    for perm in itertools.permutations("ACB"):
        cover = product_set(G, *(subs[k] for k in perm))
        out.add(f"factorisation {''.join(perm)}", f"J = <{perm[0]}><{perm[1]}><{perm[2]}>", cover.all())
    return out


def _subgroup_of(G, words, gens):
    return subgroup_generated(G, [G.eval_word(w, gens) for w in words])


def structure_checks(G: GroupHandle, alpha: int, p: int, cap: int = DEFAULT_CAP,
                     exp: Optional[ExpectedStructure] = None) -> CheckList:
    """Compare the computed structure of ``G`` with the closed forms."""
    out = CheckList()
    exp = expected_structure(alpha, p) if exp is None else exp
    g = generators_ABC(G)
    c = exp.nilpotency_class
    out.add("order", f"|J| = {exp.order}", G.order == exp.order, f"got {G.order}")
    upper = upper_central_series(G, cap)
    lower = lower_central_series(G, cap)
    out.add("class", f"nilpotency class {c}", len(upper) - 1 == c and len(lower) - 1 == c,
            f"upper {len(upper) - 1}, lower {len(lower) - 1}")
    ex = exponent(G, cap)
    out.add("exponent", f"exponent {exp.exponent}", ex == exp.exponent, f"got {ex}")
    for i, words in enumerate(exp.upper, start=1):
        ok = i < len(upper) and upper[i] == _subgroup_of(G, words, g)
        out.add(f"Z_{i}", f"Z_{i}(J) = {exp.describe(words)}", ok,
                f"order {upper[i].order}" if i < len(upper) else "series too short")
    for i, words in enumerate(exp.lower, start=2):
        ok = i - 1 < len(lower) and lower[i - 1] == _subgroup_of(G, words, g)
        out.add(f"gamma_{i}", f"gamma_{i}(J) = {exp.describe(words)}", ok)
    if exp.reverse_series and len(upper) == len(lower):
        out.add("reverse series", "gamma_i(J) = Z_{c+1-i}(J)",
                all(lower[i - 1] == upper[c + 1 - i] for i in range(1, c + 2)))
    for n, i in exp.powers.items():
        out.add(f"J^{n}", f"J^{n} = Z_{i}(J)", i < len(upper) and power_subgroup(G, n, cap) == upper[i])
    A, B, C = g["A"], g["B"], g["C"]
    Z1 = center(G, cap)
    out.add("center", "Z(J) = C_J(A) n C_J(B)", Z1 == (centralizer(G, A, cap) & centralizer(G, B, cap)))
    for x, name in ((A, "A"), (B, "B")):
        out.add(f"centralizer {name}", f"C_J({name}) = <{name}>", centralizer(G, x, cap) == subgroup_generated(G, [x]))
        out.add(f"normalizer {name}", f"N_J(<{name}>) = <{name},C>",
                normalizer(G, subgroup_generated(G, [x]), cap) == subgroup_generated(G, [x, C]))
    if exp.abelian_term is not None and exp.abelian_term < len(upper):
        Z = upper[exp.abelian_term]
        i = exp.abelian_term
        ab = is_abelian(Z)
        out.add(f"Z_{i} abelian", f"Z_{i}(J) is abelian", ab)
        if ab and exp.z_relations is not None:
            census = abelian_invariants(Z)
            out.add(f"Z_{i} invariants", f"Z_{i}(J) has invariants {snf_invariants(exp.z_relations)}",
                    census == snf_invariants(exp.z_relations), f"census {census}")
        if exp.z_exponent is not None:
            ords = element_orders(G, Z.elements, cap)
            out.add(f"Z_{i} exponent", f"Z_{i}(J) has exponent {exp.z_exponent}", int(ords.max()) == exp.z_exponent)
    if exp.section_invariants is not None:
        i, j, inv = exp.section_invariants
        Q = quotient(G, upper[j], upper[i])
        out.add(f"Z_{i}/Z_{j}", f"Z_{i}(J)/Z_{j}(J) has invariants {list(inv)}", abelian_invariants(Q) == list(inv))
    if exp.heisenberg is not None:
        n, d, i = exp.heisenberg
        H = heisenberg(n, d)
        label = f"Heis(Z/{n})" + (f"/<z^{d}>" if d else "")
        try:
            K = epimorphism_kernel(G, H, {"A": H.gen("x"), "B": H.gen("y")}, cap)
            ok, detail = K == upper[i], f"kernel order {K.order}"
        except HomomorphismError as err:
            ok, detail = False, str(err)
        out.add(f"J/Z_{i}", f"A->x, B->y is onto {label} with kernel Z_{i}(J)", ok, detail)
    if exp.quaternion:
        ords = element_orders(G, cap=cap)
        out.add("quaternion profile", "order 16, a unique involution, exponent 8",
                G.order == 16 and int((ords == 2).sum()) == 1 and int(ords.max()) == 8)
    return out


def axiom_checks(G: GroupHandle, triples: int = 100_000, seed: int = 0, exhaustive_limit: int = 4096) -> CheckList:
    """Group axioms on the dense multiplication.

    Exhaustive associativity uses Light's test: the middle elements y with
    (xy)z = x(yz) for all x, z form a sub-magma, so checking y over the
    generators covers every triple."""
    out = CheckList()
    rng = np.random.default_rng(seed)
    n = G.order
    x, y, z = (rng.integers(0, n, triples) for _ in range(3))
    out.add("associativity", f"(xy)z = x(yz) on {triples} random triples",
            np.array_equal(G.mul(G.mul(x, y), z), G.mul(x, G.mul(y, z))))
    X = G.all_elements()
    if n <= exhaustive_limit:
        ok = all(
            np.array_equal(G.mul(G.mul(X, s)[:, None], X[None, :]), G.mul(X[:, None], G.mul(s, X)[None, :]))
            for s in G.gens
        )
        out.add("associativity (exhaustive)", f"all {n}^3 triples via Light's test", ok)
    out.add("identity", "1x = x1 = x", np.array_equal(G.mul(0, X), X) and np.array_equal(G.mul(X, 0), X))
    out.add("inverse", "x x^-1 = x^-1 x = 1", not G.mul(X, G.inv(X)).any() and not G.mul(G.inv(X), X).any())
    # with associativity, left multiplication by a product is the composite map,
    # so bijectivity for the generators gives it for every element
    rows = np.concatenate([G.gens, rng.integers(0, n, min(n, 32))])
    out.add("uniqueness", "left multiplication by each generator (and 32 random elements) permutes J",
            all(np.unique(G.mul(int(r), X)).size == n for r in rows))
    return out


def theta_checks(G, pairs: int = 20_000, seed: int = 0) -> CheckList:
    """The swap automorphism of a normal-form handle."""
    out = CheckList()
    rng = np.random.default_rng(seed)
    n = G.order
    X = G.all_elements()
    A, B = G.gen("A"), G.gen("B")
    out.add("theta generators", "theta(A) = B, theta(B) = A, theta(C) = C^-1",
            G.theta(A) == B and G.theta(B) == A and G.theta(G.C) == G.inv(G.C))
    out.add("theta involution", "theta(theta(x)) = x", np.array_equal(G.theta(G.theta(X)), X))
    x, y = rng.integers(0, n, pairs), rng.integers(0, n, pairs)
    out.add("theta homomorphism", "theta(xy) = theta(x)theta(y)",
            np.array_equal(G.theta(G.mul(x, y)), G.mul(G.theta(x), G.theta(y))))
    return out
