"""Command-line front end.

Every operation is exposed as a subcommand with human-readable output by
default and machine output under --json. JSON payloads encode every integer
and rational as a decimal string (so arbitrary-precision values survive any
JSON parser), booleans as JSON booleans, and floats as their repr strings.
Exit codes: 0 success, 1 input error, 2 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import engine, lattice, salem, selftest
from .errors import InvariantViolation
from .fibgen import classify_membership, entry_point, gen_fib, salem_trace_of_power

_DEFAULT_LIMIT = 10**7


class _CliInputError(ValueError):
    def __init__(self, message: str, usage: str | None = None):
        super().__init__(message)
        self.usage = usage


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # exit 1 instead of argparse's default 2
        raise _CliInputError(message, usage=self.format_usage())


def _jsonify(value):
    if isinstance(value, bool):
        return value
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, str) or value is None:
        return value
    if isinstance(value, dict):
        return {k: _jsonify(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonify(v) for v in value]
    raise TypeError(f"cannot serialize {type(value).__name__}")


def _human_scalar(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _human_lines(value, prefix: str = "") -> list[str]:
    if isinstance(value, dict):
        lines = []
        for key, item in value.items():
            sub = f"{prefix}.{key}" if prefix else str(key)
            lines.extend(_human_lines(item, sub))
        return lines
    if isinstance(value, (list, tuple)):
        lines = []
        for i, item in enumerate(value):
            lines.extend(_human_lines(item, f"{prefix}[{i}]"))
        return lines
    if value is None:
        return [f"{prefix}: none"]
    return [f"{prefix}: {_human_scalar(value)}"]


def _parse_eps(text: str) -> int:
    if text in ("1", "+1"):
        return 1
    if text == "-1":
        return -1
    raise _CliInputError(f"epsilon must be +1 or -1, got {text!r}")


def _parse_poly(text: str, what: str) -> salem.IntPolynomial:
    try:
        coeffs = [int(part.strip(), 10) for part in text.split(",")]
    except ValueError:
        raise _CliInputError(
            f"{what} must be comma-separated integer coefficients "
            f"(constant term first), got {text!r}"
        ) from None
    return salem.IntPolynomial(coeffs)


def _guard(value: int, what: str, limit: int) -> int:
    if abs(value) > limit:
        raise _CliInputError(f"{what}={value} exceeds the runtime limit {limit}")
    return value


# ---------------------------------------------------------------------------
# Subcommand handlers: each returns (payload, errata_flags, human_text).
# ---------------------------------------------------------------------------


def _cmd_fib(args) -> tuple[dict, list[str], str]:
    n = _guard(args.n, "n", args.limit_n)
    value = gen_fib(args.a, n)
    return {"value": value}, [], str(value)


def _cmd_trace(args) -> tuple[dict, list[str], str]:
    n = _guard(args.n, "n", args.limit_n)
    value = salem_trace_of_power(args.a, n)
    return {"value": value}, [], str(value)


def _cmd_entry(args) -> tuple[dict, list[str], str]:
    m = _guard(args.m, "m", args.limit_n)
    value = entry_point(args.a, m)
    return {"value": value}, [], str(value)


def _cmd_member(args) -> tuple[dict, list[str], str]:
    n = _guard(args.n, "n", args.limit_n)
    result = classify_membership(args.a, n)
    payload = {
        "status": result.status,
        "matches": [
            {"k": m.k, "parity": m.parity, "square_witness": m.square_witness}
            for m in result.matches
        ],
    }
    return payload, [], "\n".join(_human_lines(payload))


def _cmd_gram(args) -> tuple[dict, list[str], str]:
    lat = lattice.fibonacci_lattice(args.m, args.a)
    payload = {
        "gram": [list(row) for row in lat.gram],
        "disc": lat.disc,
        "signature": [1, 1],
    }
    return payload, [], "\n".join(_human_lines(payload))


def _cmd_abpow(args) -> tuple[dict, list[str], str]:
    n = _guard(args.n, "n", args.limit_n)
    g = lattice.ab_power(args.a, n)
    payload = {
        "matrix": [list(row) for row in g.matrix],
        "det": g.det,
        "trace": g.trace,
    }
    return payload, [], "\n".join(_human_lines(payload))


def _cmd_isometry(args) -> tuple[dict, list[str], str]:
    lat = lattice.fibonacci_lattice(args.m, args.a)
    g = lattice.Isometry2(((args.entries[0], args.entries[1]), (args.entries[2], args.entries[3])))
    payload = {
        "matrix": [list(row) for row in g.matrix],
        "is_isometry": lattice.is_isometry(g, lat),
    }
    return payload, [], "\n".join(_human_lines(payload))


def _cmd_discact(args) -> tuple[dict, list[str], str]:
    n = _guard(args.n, "n", args.limit_n)
    mat = lattice.integrality_matrix(n, args.m, args.a, args.eps)
    action = lattice.disc_action(
        lattice.ab_power(args.a, n),
        lattice.fibonacci_lattice(args.m, args.a),
        args.eps,
    )
    payload = {
        "epsilon": action.epsilon,
        "holds": action.holds,
        "matrix": [list(row) for row in mat],
    }
    return payload, [], "\n".join(_human_lines(payload))


def _cmd_cyclotomic(args) -> tuple[dict, list[str], str]:
    poly = salem.cyclotomic(args.l)
    payload = {
        "coefficients": list(poly.coeffs),
        "degree": poly.degree,
        "polynomial": str(poly),
    }
    return payload, [], "\n".join(_human_lines(payload))


def _cmd_resultant(args) -> tuple[dict, list[str], str]:
    p = _parse_poly(args.p, "first polynomial")
    q = _parse_poly(args.q, "second polynomial")
    value = salem.resultant(p, q)
    flags = list(engine.errata_for_resultant(p, q))
    payload = {
        "p": list(p.coeffs),
        "q": list(q.coeffs),
        "resultant": value,
    }
    return payload, flags, "\n".join(_human_lines(payload))


def _cmd_salem(args) -> tuple[dict, list[str], str]:
    quad = salem.salem_data(args.tau)
    payload = {
        "tau": quad.tau,
        "polynomial": str(quad.polynomial),
        "coefficients": list(quad.polynomial.coeffs),
        "palindromic": salem.is_palindromic(quad.polynomial),
        "lambda": quad.lambda_,
        "entropy": quad.entropy,
    }
    return payload, [], "\n".join(_human_lines(payload))


def _cmd_pell(args) -> tuple[dict, list[str], str]:
    bound = _guard(args.bound, "bound", args.limit_n)
    sols = salem.pell_solutions(args.d, args.eps, bound)
    payload = {
        "solutions": [[alpha, beta] for alpha, beta in sols],
        "count": len(sols),
    }
    return payload, [], "\n".join(_human_lines(payload))


def _cmd_candidates(args) -> tuple[dict, list[str], str]:
    m = _guard(args.m, "m", args.limit_n)
    report = engine.analyze(m, args.a)
    payload = report.as_dict()
    flags = payload.pop("errata_flags")
    return payload, flags, "\n".join(_human_lines(payload))


def _cmd_example100(args) -> tuple[dict, list[str], str]:
    report = engine.target_exponent_scenario(args.m)
    payload = report.as_dict()
    flags = payload.pop("errata_flags")
    # errata attached to the embedded closure report stay within the payload
    return payload, flags, "\n".join(_human_lines(payload))


def _cmd_selftest(args) -> tuple[dict, list[str], str]:
    results = selftest.run_suites(args.suite)
    payload = {
        "suites": [
            {
                "name": r.name,
                "checks": r.checks,
                "failures": r.failures,
                "first_counterexample": r.first_counterexample,
            }
            for r in results
        ],
        "all_passed": all(r.passed for r in results),
    }
    lines = []
    for r in results:
        if r.passed:
            lines.append(f"{r.name}: PASS ({r.checks} checks)")
        else:
            lines.append(
                f"{r.name}: FAIL ({r.failures}/{r.checks} failed; "
                f"first: {r.first_counterexample})"
            )
    lines.append("all passed" if payload["all_passed"] else "FAILURES PRESENT")
    return payload, [], "\n".join(lines)


def _build_parser() -> _Parser:
    # global flags are accepted both before and after the subcommand; the
    # SUPPRESS defaults keep a subparser from clobbering a value the main
    # parser already set
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--json",
        action="store_true",
        default=argparse.SUPPRESS,
        help="machine-readable output",
    )
    common.add_argument(
        "--quiet",
        action="store_true",
        default=argparse.SUPPRESS,
        help="suppress stdout",
    )
    common.add_argument(
        "--limit-n",
        type=int,
        default=argparse.SUPPRESS,
        help=f"guard for index-sized arguments (default {_DEFAULT_LIMIT})",
    )
    parser = _Parser(
        prog="fibk3",
        parents=[common],
        description=(
            "Exact arithmetic for generalized Fibonacci sequences, even rank-2 "
            "lattices, Salem trace quadratics, and generator-candidate filtering."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_parser(name, **kwargs):
        return sub.add_parser(name, parents=[common], **kwargs)

    p = add_parser("fib", help="n-th generalized Fibonacci number")
    p.add_argument("a", type=int)
    p.add_argument("n", type=int)
    p.set_defaults(handler=_cmd_fib)

    p = add_parser("member", help="membership test via the square criterion")
    p.add_argument("a", type=int)
    p.add_argument("n", type=int)
    p.set_defaults(handler=_cmd_member)

    p = add_parser("entry", help="entry point: least e with m | a_e")
    p.add_argument("a", type=int)
    p.add_argument("m", type=int)
    p.set_defaults(handler=_cmd_entry)

    p = add_parser("trace", help="trace of the n-th power of A*B")
    p.add_argument("a", type=int)
    p.add_argument("n", type=int)
    p.set_defaults(handler=_cmd_trace)

    p = add_parser("gram", help="Gram matrix of the standard lattice")
    p.add_argument("m", type=int)
    p.add_argument("a", type=int)
    p.set_defaults(handler=_cmd_gram)

    p = add_parser("abpow", help="(A*B)^n in closed form")
    p.add_argument("a", type=int)
    p.add_argument("n", type=int)
    p.set_defaults(handler=_cmd_abpow)

    p = add_parser(
        "isometry",
        help="test a row-major 2x2 matrix against the standard lattice "
        "(separate negative entries with --)",
    )
    p.add_argument("m", type=int)
    p.add_argument("a", type=int)
    p.add_argument("entries", type=int, nargs=4, metavar="E")
    p.set_defaults(handler=_cmd_isometry)

    p = add_parser("discact", help="discriminant-group action test for (A*B)^n")
    p.add_argument("m", type=int)
    p.add_argument("a", type=int)
    p.add_argument("n", type=int)
    p.add_argument("eps", type=_parse_eps)
    p.set_defaults(handler=_cmd_discact)

    p = add_parser("cyclotomic", help="l-th cyclotomic polynomial")
    p.add_argument("l", type=int)
    p.set_defaults(handler=_cmd_cyclotomic)

    p = add_parser(
        "resultant",
        help="resultant of two polynomials given as ascending coefficient "
        "lists, e.g. 1,-3,1 (constant term first)",
    )
    p.add_argument("p")
    p.add_argument("q")
    p.set_defaults(handler=_cmd_resultant)

    p = add_parser("salem", help="Salem quadratic, number, and entropy")
    p.add_argument("tau", type=int)
    p.set_defaults(handler=_cmd_salem)

    p = add_parser("pell", help="solutions of alpha^2 - D*beta^2 = 4*eps")
    p.add_argument("d", type=int, metavar="D")
    p.add_argument("eps", type=_parse_eps)
    p.add_argument("bound", type=int)
    p.set_defaults(handler=_cmd_pell)

    p = add_parser("candidates", help="generator analysis for (m, a)")
    p.add_argument("m", type=int)
    p.add_argument("a", type=int)
    p.set_defaults(handler=_cmd_candidates)

    p = add_parser(
        "example100", help="published target-exponent-100 scenario for m"
    )
    p.add_argument("m", type=int)
    p.set_defaults(handler=_cmd_example100)

    p = add_parser("selftest", help="run the named property suite, or all")
    p.add_argument("--suite", default=None)
    p.set_defaults(handler=_cmd_selftest)

    return parser


def _emit(args, command: str, status: str, payload, flags: list[str], human: str) -> None:
    if args.quiet:
        return
    if args.json:
        document = {
            "command": command,
            "status": status,
            "payload": _jsonify(payload),
            "errata_flags": list(flags),
        }
        print(json.dumps(document, sort_keys=True, separators=(",", ":")))
    else:
        if human:
            print(human)
        for flag in flags:
            print(f"errata: {flag}")


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _CliInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        if exc.usage:
            print(exc.usage.rstrip(), file=sys.stderr)
        return 1
    args.json = getattr(args, "json", False)
    args.quiet = getattr(args, "quiet", False)
    args.limit_n = getattr(args, "limit_n", _DEFAULT_LIMIT)
    command = args.command
    try:
        payload, flags, human = args.handler(args)
    except _CliInputError as exc:
        _emit(args, command, "input_error", {"message": str(exc)}, [], "")
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        _emit(args, command, "input_error", {"message": str(exc)}, [], "")
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except InvariantViolation as exc:
        _emit(args, command, "internal_error", {"message": str(exc)}, [], "")
        print(f"internal error: {exc}", file=sys.stderr)
        return 2
    _emit(args, command, "ok", payload, flags, human)
    if command == "selftest" and not payload["all_passed"]:
        return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
