"""Command line: ``macdonald predict|analyze|verify|enumerate``.

Exit codes: 0 when everything passes, 1 on any failed check or refused
computation, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .analysis import (
    DEFAULT_CAP,
    CapExceeded,
    abelian_invariants,
    center,
    exponent,
    is_abelian,
    lower_central_series,
    upper_central_series,
)
from .engine import make_context, normal_form_group
from .enumerator import DEFAULT_MAX_COSETS, coset_enumerate, table_to_csv
from .interface import predict_global, verify
from .presentation import PresentationError, parse_presentation

OK, FAIL, USAGE = 0, 1, 2


class _UsageError(Exception):
    pass


def _alpha(text: str) -> int:
    try:
        a = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if a in (0, 1, 2):
        raise argparse.ArgumentTypeError("alpha must not be 0, 1 or 2")
    return a


def _factorization(text: str | None):
    """``"2^3,5,7^2"`` -> {2: 3, 5: 1, 7: 2}."""
    if not text:
        return None
    out = {}
    for part in text.split(","):
        p, _, m = part.strip().partition("^")
        try:
            out[int(p)] = int(m) if m else 1
        except ValueError:
            raise _UsageError(f"bad factorization term {part!r}") from None
    return out


def _emit(obj, as_json: bool, text: str):
    print(json.dumps(obj, indent=2) if as_json else text)


def cmd_predict(args) -> int:
    r = predict_global(args.alpha, _factorization(args.factorization))
    lines = [f"G({r.alpha}): alpha - 1 = " + " * ".join(f"{p}^{m}" for p, m in r.factorization)]
    for s in r.sylow:
        lines.append(f"  p={s.p}  {s.case}  m={s.m}  |J|={s.order}  class={s.nilpotency_class}  exponent={s.exponent}")
    lines.append(f"order {r.order}\nclass {r.nilpotency_class}\nexponent {r.exponent}")
    _emit(r.to_dict(), args.json, "\n".join(lines))
    return OK


def _nf_text(G, code) -> str:
    i, j, k = G.nf(code)
    parts = [n if e == 1 else f"{n}^{e}" for n, e in (("A", i), ("B", j), ("C", k)) if e]
    return " ".join(parts) or "1"


def _analyze_prime(alpha: int, p: int, cap: int) -> dict:
    ctx = make_context(alpha, p)
    if ctx.expected_order > cap:
        raise CapExceeded(f"|J| = {ctx.expected_order} exceeds the enumeration cap {cap}")
    G = normal_form_group(ctx)
    upper = upper_central_series(G, cap)
    lower = lower_central_series(G, cap)
    abelian = [i for i, Z in enumerate(upper) if is_abelian(Z)]
    top = max(abelian)
    return {
        "p": p,
        "case": ctx.case.tag,
        "m": ctx.m,
        "alpha": ctx.alpha,
        "order": G.order,
        "class": len(upper) - 1,
        "exponent": exponent(G, cap),
        "center_order": center(G, cap).order,
        "upper": [{"order": Z.order, "generators": [_nf_text(G, g) for g in Z.witnesses]} for Z in upper],
        "lower": [{"order": L.order, "generators": [_nf_text(G, g) for g in L.witnesses]} for L in lower],
        "largest_abelian_upper_term": {"index": top, "invariants": abelian_invariants(upper[top])},
    }


def cmd_analyze(args) -> int:
    r = predict_global(args.alpha)
    primes = [p for p, _ in r.factorization]
    if args.prime is not None:
        if args.prime not in primes:
            raise _UsageError(f"{args.prime} does not divide alpha - 1")
        primes = [args.prime]
    results, status = [], OK
    for p in primes:
        try:
            results.append(_analyze_prime(args.alpha, p, args.cap))
        except CapExceeded as exc:
            results.append({"p": p, "refused": str(exc)})
            status = FAIL
    if args.json:
        print(json.dumps({"alpha": args.alpha, "sylow": results}, indent=2))
        return status
    for res in results:
        if "refused" in res:
            print(f"p={res['p']}: refused ({res['refused']})")
            continue
        print(f"p={res['p']}  {res['case']}  m={res['m']}  canonical alpha {res['alpha']}")
        print(f"  |J| = {res['order']}, class {res['class']}, exponent {res['exponent']}, |Z(J)| = {res['center_order']}")
        for i, Z in enumerate(res["upper"]):
            print(f"  Z_{i}: order {Z['order']:>8}  <{', '.join(Z['generators'])}>")
        for i, L in enumerate(res["lower"], start=1):
            print(f"  gamma_{i}: order {L['order']:>8}  <{', '.join(L['generators'])}>")
        ab = res["largest_abelian_upper_term"]
        print(f"  Z_{ab['index']} is abelian with invariants {ab['invariants']}")
    return status


def cmd_verify(args) -> int:
    v = verify(args.alpha, "deep" if args.deep else "fast", cap=args.cap,
               factorization=_factorization(args.factorization))
    print(v.to_json() if args.json else v)
    return OK if v.passed else FAIL


def cmd_enumerate(args) -> int:
    try:
        spec = parse_presentation(Path(args.file).read_text())
    except OSError as exc:
        raise _UsageError(str(exc)) from None
    table = coset_enumerate(spec, args.subgroup or (), max_cosets=args.max_cosets, via=args.via)
    if args.csv:
        Path(args.csv).write_text(table_to_csv(table))
    info = {"status": table.status, "cosets": table.n_cosets, "defined": table.defined}
    _emit(info, args.json, f"{table.status}: {table.n_cosets} cosets ({table.defined} defined in total)")
    return OK if table.complete else FAIL


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="macdonald", description="Sylow subgroups of the Macdonald groups G(alpha).")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("predict", help="order, class and exponent of G(alpha)")
    p.add_argument("alpha", type=_alpha)
    p.add_argument("--json", action="store_true")
    p.add_argument("--factorization", help="factorization of |alpha-1| as 'p^m,q^n,...' (needed above 10^9)")
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("analyze", help="central series, exponent and center of each Sylow subgroup")
    p.add_argument("alpha", type=_alpha)
    p.add_argument("--prime", type=int)
    p.add_argument("--json", action="store_true")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("verify", help="check every prediction against the constructions")
    p.add_argument("alpha", type=_alpha)
    p.add_argument("--deep", action="store_true", help="also build towers, enumerate cosets and compare structure")
    p.add_argument("--json", action="store_true")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.add_argument("--factorization")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("enumerate", help="Todd-Coxeter enumeration of a presentation file")
    p.add_argument("file")
    p.add_argument("--max-cosets", type=int, default=DEFAULT_MAX_COSETS)
    p.add_argument("--subgroup", action="append", help="subgroup generator word (repeatable)")
    p.add_argument("--via", help="lift the regular representation from the cosets of this cyclic subgroup")
    p.add_argument("--csv", help="write the coset table to this file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_enumerate)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)  # exits with status 2 on usage errors
    try:
        return args.func(args)
    except (_UsageError, PresentationError, ValueError) as exc:
        print(f"macdonald: error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
