"""Command-line front end: decisions, verification sweeps, matrix inspection.

Exit codes: 0 success or all checks passed, 1 a verification was falsified,
2 invalid usage. Output is deterministic for a fixed invocation, including
the seeded random sweeps. The default output format is text; override with
--format or the GAUGETORSION_FORMAT environment variable.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import os
import random
import sys

from .chern import verify_newton
from .fp import Prime
from .matrices import (
    OrderBoundExceeded,
    companion_matrix,
    jordan_transpose,
    pascal_matrix,
    verify_conjugation,
    verify_p_power_order,
)
from .polyring import MultiPoly
from .steenrod import check_milnor_on_c2, milnor_q_closed, milnor_q_recursive
from .suspension import MechanizationError, derive_recurrence, solve_alpha_p
from .torsion import decide_global, decide_p

ENV_FORMAT = "GAUGETORSION_FORMAT"
_FORMATS = ("text", "json", "csv")


def _usage_error(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 2


def _resolve_format(value: str | None, allowed: tuple[str, ...]) -> str | None:
    fmt = value or os.environ.get(ENV_FORMAT) or "text"
    return fmt if fmt in allowed else None


def _parse_primes(spec: str) -> list[Prime] | None:
    try:
        return [Prime(int(tok)) for tok in spec.split(",") if tok.strip()]
    except ValueError:
        return None


def cmd_decide(args: argparse.Namespace) -> int:
    fmt = _resolve_format(args.format, ("text", "json"))
    if fmt is None:
        return _usage_error("decide supports --format text or json")
    if args.n < 2:
        return _usage_error(f"need n >= 2, got {args.n}")
    if args.p is not None:
        try:
            prime = Prime(args.p)
        except ValueError:
            return _usage_error(f"p must be prime, got {args.p}")
        cert = decide_p(args.n, args.k, prime)
        if fmt == "json":
            print(cert.to_json(indent=2))
        else:
            d = cert.to_dict()
            print(
                f"n={d['n']} k={d['k']} p={d['p']}: {d['verdict']} "
                f"(phi_c1={d['phi_c1']}, alpha_p={d['alpha_p']}, "
                f"matrix_order={d['matrix_order']}, recurrence_check={d['recurrence_check']})"
            )
        return 0
    result = decide_global(args.n, args.k)
    if fmt == "json":
        print(result.to_json(indent=2))
    else:
        print(f"n={result.n} k={result.k}")
        for cert in result.primes:
            d = cert.to_dict()
            print(
                f"  p={d['p']}: {d['verdict']} (phi_c1={d['phi_c1']}, "
                f"alpha_p={d['alpha_p']}, matrix_order={d['matrix_order']})"
            )
        print(f"torsion_free: {str(result.torsion_free).lower()}")
    return 0


def _random_poly(rng: random.Random, n: int, p: Prime, max_deg: int, max_terms: int) -> MultiPoly:
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        mono = tuple(rng.randint(0, max_deg // n + 1) for _ in range(n))
        terms[mono] = rng.randint(1, p.value - 1) if p.value > 2 else 1
    return MultiPoly(n, p, terms)


def _verify_newton_cases(args) -> tuple[list[str], list[str]]:
    passes, failures = [], []
    for prime in args.prime_list:
        for n in range(2, args.n_max + 1):
            for i in range(args.i_max + 1):
                ok, residual = verify_newton(n, i, prime)
                label = f"newton n={n} i={i} p={prime}"
                if ok:
                    passes.append(label)
                else:
                    failures.append(f"{label}: residual {residual.render()}")
    return passes, failures


def _verify_milnor_cases(args) -> tuple[list[str], list[str]]:
    passes, failures = [], []
    for prime in args.prime_list:
        for n in range(2, args.n_max + 1):
            for level in range(1, args.l_max + 1):
                if prime.value**level + 1 > args.degree_cap:
                    continue
                ok, lhs, rhs = check_milnor_on_c2(n, prime, level)
                label = f"milnor n={n} level={level} p={prime}"
                if ok:
                    passes.append(label)
                else:
                    failures.append(
                        f"{label}: lhs {lhs.render()} vs rhs {rhs.render()}"
                    )
        rng = random.Random(args.seed)
        for case in range(args.samples):
            f = _random_poly(rng, rng.randint(1, 3), prime, 6, 4)
            level = rng.randint(1, 2)
            label = f"milnor-equivalence p={prime} case={case}"
            if milnor_q_closed(level, f) == milnor_q_recursive(level, f):
                passes.append(label)
            else:
                failures.append(f"{label}: split on {f.render()} at level {level}")
    return passes, failures


def _verify_conjugation_cases(args) -> tuple[list[str], list[str]]:
    passes, failures = [], []
    for n in range(2, args.n_max + 1):
        ok, witness = verify_conjugation(n)
        if ok:
            passes.append(f"conjugation n={n}")
        else:
            failures.append(
                f"conjugation n={n}: BA={witness['BA'].to_json()} AD={witness['AD'].to_json()}"
            )
    return passes, failures


def _verify_order_cases(args) -> tuple[list[str], list[str]]:
    passes, failures = [], []
    for prime in args.prime_list:
        for n in range(2, args.n_max + 1):
            try:
                ok, order = verify_p_power_order(n, prime)
            except OrderBoundExceeded as exc:
                failures.append(f"order n={n} p={prime}: {exc}")
                continue
            label = f"order n={n} p={prime}: {order}"
            (passes if ok else failures).append(label)
    return passes, failures


def _verify_recurrence_cases(args) -> tuple[list[str], list[str]]:
    passes, failures = [], []
    for prime in args.prime_list:
        q = prime.value
        for n in range(2, args.n_max + 1):
            if n % q != 0:
                continue
            try:
                derived = derive_recurrence(n, prime)
            except MechanizationError as exc:
                failures.append(f"recurrence n={n} p={prime}: {exc}")
                continue
            expected = companion_matrix(n).reduce(prime)
            if derived != expected:
                failures.append(
                    f"recurrence n={n} p={prime}: derived {derived.to_json()} "
                    f"vs companion {expected.to_json()}"
                )
                continue
            bad_k = [
                k for k in range(n) if solve_alpha_p(n, prime, k).value.residue != k % q
            ]
            if bad_k:
                failures.append(f"recurrence n={n} p={prime}: alpha_p wrong for k in {bad_k}")
            else:
                passes.append(f"recurrence n={n} p={prime}")
    return passes, failures


_VERIFY_TARGETS = {
    "newton": _verify_newton_cases,
    "milnor": _verify_milnor_cases,
    "conjugation": _verify_conjugation_cases,
    "order": _verify_order_cases,
    "recurrence": _verify_recurrence_cases,
}


def cmd_verify(args: argparse.Namespace) -> int:
    fmt = _resolve_format(args.format, ("text", "json"))
    if fmt is None:
        return _usage_error("verify supports --format text or json")
    if args.n_max < 2:
        return _usage_error(f"need --n-max >= 2, got {args.n_max}")
    primes = _parse_primes(args.primes)
    if primes is None:
        return _usage_error(f"bad prime list: {args.primes!r}")
    args.prime_list = primes
    passes, failures = _VERIFY_TARGETS[args.target](args)
    if fmt == "json":
        print(
            json.dumps(
                {
                    "target": args.target,
                    "cases": len(passes) + len(failures),
                    "passed": len(passes),
                    "failures": failures,
                },
                indent=2,
            )
        )
    else:
        for line in failures:
            print(f"FAIL {line}")
        print(
            f"{args.target}: {len(passes)}/{len(passes) + len(failures)} cases passed"
        )
    return 1 if failures else 0


def cmd_sweep(args: argparse.Namespace) -> int:
    fmt = _resolve_format(args.format, _FORMATS)
    if fmt is None:
        return _usage_error(f"unknown format {args.format!r}")
    if args.n_max < 2:
        return _usage_error(f"need --n-max >= 2, got {args.n_max}")
    rows = []
    for n in range(2, args.n_max + 1):
        for k in range(n):
            result = decide_global(n, k)
            witness = next(
                (c.verdict.p for c in result.primes if c.verdict.kind.value == "Torsion"),
                None,
            )
            rows.append((n, k, result.torsion_free, witness))
    if fmt == "csv":
        print("n,k,torsion_free,witness_prime")
        for n, k, free, witness in rows:
            print(f"{n},{k},{str(free).lower()},{'' if witness is None else witness}")
    elif fmt == "json":
        print(
            json.dumps(
                [
                    {"n": n, "k": k, "torsion_free": free, "witness_prime": witness}
                    for n, k, free, witness in rows
                ],
                indent=2,
            )
        )
    else:
        for n, k, free, witness in rows:
            tail = "" if witness is None else f"  (p={witness})"
            print(f"n={n:3d} k={k:3d}  torsion_free={str(free).lower()}{tail}")
    return 0


def cmd_matrix(args: argparse.Namespace) -> int:
    fmt = _resolve_format(args.format, ("text", "json"))
    if fmt is None:
        return _usage_error("matrix supports --format text or json")
    if args.n < 2:
        return _usage_error(f"need n >= 2, got {args.n}")
    prime = None
    if args.p is not None:
        try:
            prime = Prime(args.p)
        except ValueError:
            return _usage_error(f"p must be prime, got {args.p}")
    b = companion_matrix(args.n)
    a = pascal_matrix(args.n)
    d = jordan_transpose(args.n)
    blocks = {"B": b, "A": a, "D": d, "BA": b * a, "AD": a * d}
    if prime is not None:
        blocks = {name: m.reduce(prime) for name, m in blocks.items()}
    if fmt == "json":
        payload: dict = {"n": args.n, "p": None if prime is None else prime.value}
        for name, m in blocks.items():
            payload[name] = json.loads(m.to_json())
        print(json.dumps(payload, indent=2))
    else:
        suffix = "" if prime is None else f" mod {prime}"
        for name, m in blocks.items():
            print(f"{name}{suffix}:")
            print(m.render())
            print()
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gaugetorsion",
        description="Exact torsion decisions for gauge-group classifying spaces "
        "over the 2-sphere, with verification sweeps for the identities behind them.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_decide = sub.add_parser("decide", help="torsion verdict for one (n, k)")
    p_decide.add_argument("--n", type=int, required=True)
    p_decide.add_argument("--k", type=int, required=True)
    p_decide.add_argument("--p", type=int, default=None, help="restrict to one prime")
    p_decide.add_argument("--format", choices=("text", "json"), default=None)
    p_decide.add_argument("--output", type=str, default=None, help="write report to a file")
    p_decide.set_defaults(func=cmd_decide)

    p_verify = sub.add_parser("verify", help="run an identity sweep")
    p_verify.add_argument("target", choices=sorted(_VERIFY_TARGETS))
    p_verify.add_argument("--n-max", type=int, default=None)
    p_verify.add_argument("--i-max", type=int, default=6)
    p_verify.add_argument("--l-max", type=int, default=2)
    p_verify.add_argument("--degree-cap", type=int, default=26)
    p_verify.add_argument("--primes", type=str, default=None)
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--samples", type=int, default=200)
    p_verify.add_argument("--format", choices=("text", "json"), default=None)
    p_verify.add_argument("--output", type=str, default=None, help="write report to a file")
    p_verify.set_defaults(func=cmd_verify)

    p_sweep = sub.add_parser("sweep", help="full (n, k) torsion table")
    p_sweep.add_argument("--n-max", type=int, required=True)
    p_sweep.add_argument("--format", choices=_FORMATS, default=None)
    p_sweep.add_argument("--output", type=str, default=None, help="write report to a file")
    p_sweep.set_defaults(func=cmd_sweep)

    p_matrix = sub.add_parser("matrix", help="print the recurrence matrices")
    p_matrix.add_argument("--n", type=int, required=True)
    p_matrix.add_argument("--p", type=int, default=None)
    p_matrix.add_argument("--format", choices=("text", "json"), default=None)
    p_matrix.add_argument("--output", type=str, default=None, help="write report to a file")
    p_matrix.set_defaults(func=cmd_matrix)
    return parser


_VERIFY_DEFAULTS = {
    "newton": ("2,3,5", 6),
    "milnor": ("2,3,5", 5),
    "conjugation": ("2,3,5", 40),
    "order": ("2,3,5,7,11", 50),
    "recurrence": ("2,3,5", 20),
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "verify":
        default_primes, default_n_max = _VERIFY_DEFAULTS[args.target]
        if args.primes is None:
            args.primes = default_primes
        if args.n_max is None:
            args.n_max = default_n_max
    if getattr(args, "output", None):
        with open(args.output, "w") as handle, contextlib.redirect_stdout(handle):
            return args.func(args)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
