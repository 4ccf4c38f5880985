"""Command line: ``padicfactor {factor,invariants,gen,verify,bench}``.

Exit codes: 0 success, 1 failed self-check or verification, 2 usage or
input error, 3 the polynomial is outside the supported domain.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import random
import sys
import time

from . import __version__
from .errors import BadParams, BadPrime, EmptyInput, PadicFactorError
from .factor import factor
from .hensel import hensel_lift
from .montes import montes
from .invariants import invariant_report
from .padic import disc_valuation, format_poly, parse_expression, parse_poly, pmul, preduce
from .sfl import direct_sfl
from .testpolys import FamilySpec, expected_invariants, gen_family, is_prime, parse_params
from .tower import PrimeField, pgcd, pstrip

SCHEMA = "padicfactor/1"

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_DOMAIN = 0, 1, 2, 3


def _read_poly(text: str, p: int | None) -> list:
    if any(ch.isalpha() for ch in text):
        return parse_expression(text, p)
    return parse_poly(text)


def _resolve(args) -> tuple[list, int, str]:
    """Polynomial, prime and a display name from the shared options."""
    if args.family:
        spec = FamilySpec.make(args.family, **parse_params(args.params or ""))
        if args.prime is not None and args.prime != spec.p:
            raise BadParams("--prime disagrees with the family parameter p")
        return gen_family(spec), spec.p, spec.name
    if args.poly is None:
        raise BadParams("give a polynomial or --family")
    if args.prime is None:
        raise BadParams("--prime is required")
    if not is_prime(args.prime):
        raise BadPrime(f"{args.prime} is not prime")
    f = _read_poly(args.poly, args.prime)
    return f, args.prime, args.poly


def _emit(obj, as_json: bool, text: str):
    if as_json:
        obj = {"schema": SCHEMA, **obj}
        print(json.dumps(obj, sort_keys=True))
    else:
        print(text, end="" if text.endswith("\n") else "\n")


def _fmt_width(w) -> str:
    return "(" + ",".join(str(x) for x in w) + ")"


def cmd_factor(args) -> int:
    f, p, name = _resolve(args)
    hook = None
    if args.trace:
        def hook(step):
            print(f"lift pass {step.iteration}: h>={step.h} prec={step.work_prec} "
                  f"t={step.seconds:.4f}s", file=sys.stderr)
    res = factor(f, p, args.precision, algorithm=args.alg, direct=args.direct,
                 seed=args.seed, verbose=args.verbose, hook=hook)
    if args.json:
        _emit({"command": "factor", "input": name, **res.to_dict()}, True, "")
        return EXIT_OK if res.product_ok else EXIT_FAIL
    out = io.StringIO()
    out.write(f"f = {name} (degree {len(f) - 1}), p = {p}, nu = {args.precision}\n")
    for k, r in enumerate(res.factors, 1):
        inv = r.invariants
        out.write(f"factor {k}: degree {r.degree}, e={inv.e} f={inv.f}, depth {inv.depth}, "
                  f"width {_fmt_width(inv.width)}, index {inv.index}, "
                  f"exponent {inv.exponent}, {inv.splitting}\n")
        out.write(f"  {format_poly(r.lifted.coeffs)}\n")
    out.write(f"ind_p = {res.index}, v_p(disc) = {res.disc_valuation}, "
              f"delta_p = {res.delta}, width sum = {res.width_sum}\n")
    out.write(f"product check: {'ok' if res.product_ok else 'FAILED'}\n")
    _emit({}, False, out.getvalue())
    return EXIT_OK if res.product_ok else EXIT_FAIL


def cmd_invariants(args) -> int:
    f, p, name = _resolve(args)
    mo = montes(f, p, seed=args.seed, verbose=args.verbose)
    reps = [invariant_report(m.type) for m in mo.factors]
    payload = {"command": "invariants", "input": name, "p": p,
               "factors": [r.to_dict() for r in reps]}
    if args.family:
        spec = FamilySpec.make(args.family, **parse_params(args.params or ""))
        payload["expected"] = expected_invariants(spec).to_dict()
    lines = [f"{name}: {len(reps)} factor(s), v_p(disc) = {disc_valuation(f, p)}"]
    for k, r in enumerate(reps, 1):
        lines.append(f"  {k}: depth {r.depth}, width {_fmt_width(r.width)}, index {r.index}, "
                     f"exponent {r.exponent}, e={r.e} f={r.f}, slopes "
                     + " ".join(str(s) for s in r.slopes))
    _emit(payload, args.json, "\n".join(lines))
    return EXIT_OK


def cmd_gen(args) -> int:
    spec = FamilySpec.make(args.family, **parse_params(args.params or ""))
    f = gen_family(spec)
    _emit({"command": "gen", "family": spec.name, "poly": [str(c) for c in f],
           "expected": expected_invariants(spec).to_dict()}, args.json, format_poly(f))
    return EXIT_OK


def verify(f, factors, p: int, nu: int) -> bool:
    """``prod factors = f mod p**nu``, compared coefficientwise."""
    M = p ** nu
    prod = [1]
    for g in factors:
        prod = pmul(prod, preduce(list(g), M), M)
    return prod == preduce(list(f), M)


def cmd_verify(args) -> int:
    f, p, name = _resolve(args)
    facs = [_read_poly(s, p) for s in args.factor]
    ok = verify(f, facs, p, args.precision)
    _emit({"command": "verify", "input": name, "ok": ok}, args.json,
          "ok" if ok else "mismatch")
    return EXIT_OK if ok else EXIT_FAIL


# -- bench -------------------------------------------------------------------

def _suite(name: str, p: int | None) -> list:
    if name == "E":
        return [FamilySpec.make("E", p=p or 5, j=j) for j in range(1, 9)]
    if name == "B":
        return [FamilySpec.make("B", p=p or 7, k=k) for k in (2, 4, 5)]
    if name == "D":
        return [FamilySpec.make("D", l=l, p=q, n=2, k=3)
                for l in (5, 7) for q in (2, 3)]
    raise BadParams(f"unknown suite {name!r} (E, B or D)")


def _companion(n: int, p: int, rng: random.Random):
    """Random monic ``g`` of degree ``n`` and a simple irreducible factor of ``g mod p``.

    The factor is a monic quadratic without roots mod ``p``, times a
    random cofactor coprime to it; the higher digits are random.
    """
    F = PrimeField(p)
    while True:
        gbar = [rng.randrange(p), rng.randrange(p), 1]
        if all((gbar[0] + gbar[1] * a + a * a) % p for a in range(p)):
            break
    while True:
        h = [rng.randrange(p) for _ in range(n - 2)] + [1]
        if len(pgcd(F, list(gbar), pstrip(F, list(h)))) == 1:
            break
    g = pmul(gbar, h, p)
    g = [c + p * rng.randrange(p ** 3) for c in g[:-1]] + [1]
    return g, gbar


def cmd_bench(args) -> int:
    rng = random.Random(args.seed)
    rows = []
    for spec in _suite(args.suite, args.prime):
        f = gen_family(spec)
        t0 = time.perf_counter()
        res = factor(f, spec.p, args.precision, algorithm=args.alg, seed=args.seed)
        wall = time.perf_counter() - t0
        traj = "|".join(";".join(str(s.h) for s in r.steps) for r in res.factors)
        g, gbar = _companion(len(f) - 1, spec.p, rng)
        t1 = time.perf_counter()
        a = list(direct_sfl(g, gbar, spec.p, args.precision).coeffs)
        t2 = time.perf_counter()
        b = hensel_lift(g, gbar, spec.p, args.precision)
        t3 = time.perf_counter()
        rows.append({
            "family": spec.family,
            "params": ";".join(f"{k}={v}" for k, v in spec.params),
            "factors": len(res.factors),
            "montes_iterations": res.montes.iterations,
            "lift_passes": sum(len(r.steps) for r in res.factors),
            "h_trajectory": traj,
            "wall_s": f"{wall:.4f}",
            "direct_s": f"{t2 - t1:.4f}",
            "hensel_s": f"{t3 - t2:.4f}",
            "direct_eq_hensel": a == b,
        })
    if args.json:
        _emit({"command": "bench", "suite": args.suite, "rows": rows}, True, "")
    else:
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        sys.stdout.write(buf.getvalue())
    return EXIT_OK


# -- parser ------------------------------------------------------------------

def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--prime", "-p", type=int, help="the prime p")
    common.add_argument("--precision", "-n", type=_positive, default=20,
                        help="p-adic digits nu of the output (default 20)")
    common.add_argument("--alg", type=int, choices=(1, 2), default=1,
                        help="lifting variant: 1 with inversion warm-up, 2 short")
    common.add_argument("--direct", action="store_true",
                        help="lift simple factors of f mod p without Montes data")
    common.add_argument("--family", help="test family: A, Am, B, C, D or E")
    common.add_argument("--params", help="family parameters, e.g. p=7,k=5")
    common.add_argument("--json", action="store_true", help="versioned JSON output")
    common.add_argument("--trace", action="store_true", help="lifting passes on stderr")
    common.add_argument("--seed", type=int, default=0,
                        help="seed for residue-field factorization")
    common.add_argument("--verbose", "-v", action="store_true", help="Montes trace on stderr")

    ap = argparse.ArgumentParser(prog="padicfactor",
                                 description="Exact p-adic polynomial factorization.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)
    poly_help = "monic integer polynomial: '5,0,1' (constant first) or 'x^2+5'"
    for name, helptext in (("factor", "factor f over Z_p to nu digits"),
                           ("invariants", "Okutsu invariants of every factor")):
        sp = sub.add_parser(name, parents=[common], help=helptext)
        sp.add_argument("poly", nargs="?", help=poly_help)
    sp = sub.add_parser("gen", parents=[common], help="print a test-family polynomial")
    sp = sub.add_parser("verify", parents=[common], help="check prod(factors) = f mod p^nu")
    sp.add_argument("poly", nargs="?", help=poly_help)
    sp.add_argument("--factor", action="append", required=True, help="a factor (repeatable)")
    sp = sub.add_parser("bench", parents=[common], help="benchmark suite as CSV")
    sp.add_argument("--suite", required=True, choices=("E", "B", "D"))
    return ap


COMMANDS = {"factor": cmd_factor, "invariants": cmd_invariants, "gen": cmd_gen,
            "verify": cmd_verify, "bench": cmd_bench}


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.command == "gen" and not args.family:
        ap.error("gen needs --family")
    if args.verbose:
        logging.basicConfig(level=logging.INFO, format="%(message)s", stream=sys.stderr)
    try:
        return COMMANDS[args.command](args)
    except (BadParams, BadPrime, EmptyInput) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PadicFactorError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (ValueError, SyntaxError) as exc:
        print(f"error: cannot read input: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
