"""Command-line front end.

Matrix files are plain text: optional comment lines starting with ``#``,
then the dimension ``n``, then ``n`` rows of ``n`` whitespace-separated
numbers.  Integer tokens parse exactly.  Permutations on the command line
and in JSON are one-based.

Exit codes: 0 success / property true, 1 property false (witness printed),
2 error or bad usage.  ``ROBQAP_BRUTE_CAP`` overrides the default
brute-force cap; an explicit ``--cap`` beats both.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys

import numpy as np

from . import __version__
from .core import Permutation, SymMatrix, identity
from .errors import ParseError, RobqapError
from .qap import (
    DEFAULT_BRUTE_CAP,
    QapSolution,
    brute_force,
    build_distance,
    qap_value,
    solve_robinsonian,
    verify_theorem1,
)
from .seriation import seriate
from .structure import (
    build_b_delta,
    decompose_cuts,
    decompose_toeplitz,
    gen_robinson_similarity,
    gen_toeplitz_dissimilarity,
    is_kalmanson,
    is_metric,
    is_robinson_dissimilarity,
    is_robinson_similarity,
    is_strongly_monotone,
    is_toeplitz,
)

def format_number(x) -> str:
    """Full round-trip precision; integers print without a decimal point."""
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return repr(float(x))


def format_matrix(M: SymMatrix) -> str:
    lines = [str(M.n)]
    for row in M.entries:
        lines.append(" ".join(format_number(v) for v in row))
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> SymMatrix:
    """Parse the matrix file format described in the module docstring."""
    tokens = []
    for line in text.splitlines():
        if line.lstrip().startswith("#"):
            continue
        tokens.extend(line.split())
    if not tokens:
        raise ParseError("empty input")
    try:
        n = int(tokens[0])
    except ValueError:
        raise ParseError(f"expected the dimension first, got {tokens[0]!r}") from None
    if n < 1:
        raise ParseError(f"dimension must be positive, got {n}")
    body = tokens[1:]
    if len(body) != n * n:
        raise ParseError(
            f"expected {n * n} entries for a {n}x{n} matrix, got {len(body)}"
        )
    values = []
    integral = True
    for tok in body:
        try:
            values.append(int(tok))
        except ValueError:
            try:
                values.append(float(tok))
            except ValueError:
                raise ParseError(f"malformed number: {tok!r}") from None
            integral = False
    dtype = np.int64 if integral else np.float64
    return SymMatrix(np.array(values, dtype=dtype).reshape(n, n))


def parse_permutation(text: str) -> Permutation:
    try:
        values = [int(tok) for tok in text.replace(",", " ").split()]
        return Permutation(values)
    except ValueError as exc:
        raise ParseError(f"bad permutation {text!r}: {exc}") from None


def _load(path: str) -> SymMatrix:
    try:
        with open(path, encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    return parse_matrix(text)


def _jsonable(value):
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (np.floating,)):
        return float(value)
    return value


def _print_json(payload: dict) -> None:
    print(json.dumps(payload, default=_jsonable))


def _solution_payload(n: int, sol: QapSolution) -> dict:
    payload = {
        "n": n,
        "permutation": list(sol.permutation.image),
        "value": sol.value,
        "method": sol.method,
    }
    if sol.certificate is not None:
        payload["certificate"] = {
            "pi": list(sol.certificate.pi.image),
            "tau": list(sol.certificate.tau.image),
            "toeplitz_side": sol.certificate.toeplitz_side,
        }
    return payload


def _cmd_check(args) -> int:
    M = _load(args.matrix)
    if args.property in ("robinson-sim", "robinson-dis"):
        pred = (
            is_robinson_similarity
            if args.property == "robinson-sim"
            else is_robinson_dissimilarity
        )
        verdict = pred(M, ignore_diagonal=args.ignore_diagonal)
    elif args.property == "toeplitz":
        verdict = is_toeplitz(M)
    elif args.property == "kalmanson":
        verdict = is_kalmanson(M)
    elif args.property == "metric":
        verdict = is_metric(M)
    else:
        verdict = is_strongly_monotone(M)

    if args.property == "toeplitz" and verdict:
        if args.json:
            _print_json({"ok": True, "beta": list(verdict.beta)})
        else:
            print("true")
            print("beta: " + " ".join(format_number(b) for b in verdict.beta))
        return 0
    if verdict is True:
        if args.json:
            _print_json({"ok": True})
        else:
            print("true")
        return 0
    if args.json:
        witness = {
            key: _jsonable(val)
            for key, val in dataclasses.asdict(verdict).items()
        }
        _print_json({"ok": False, "witness": witness})
    else:
        print(str(verdict))
    return 1


def _cmd_seriate(args) -> int:
    M = _load(args.matrix)
    result = seriate(M)
    if args.json:
        _print_json(
            {
                "n": M.n,
                "permutation": list(result.permutation.image),
                "fiedler_value": result.fiedler_value,
                "fiedler_vector": [float(v) for v in result.fiedler_vector],
                "reversal_ambiguous": result.reversal_ambiguous,
            }
        )
    else:
        print("permutation: " + " ".join(str(v) for v in result.permutation.image))
        print(f"fiedler value: {format_number(result.fiedler_value)}")
    return 0


def _cmd_decompose(args) -> int:
    M = _load(args.matrix)
    if args.what == "toeplitz":
        profile = is_toeplitz(M)
        if not profile:
            if args.json:
                _print_json({"ok": False, "witness": str(profile)})
            else:
                print(str(profile))
            return 1
        comb = decompose_toeplitz(profile)
        if args.json:
            _print_json(
                {
                    "n": comb.n,
                    "j_coefficient": comb.j_coefficient,
                    "c": list(comb.c),
                }
            )
        else:
            print(f"j coefficient: {format_number(comb.j_coefficient)}")
            for delta, coeff in enumerate(comb.c, start=1):
                print(f"c[{delta}] = {format_number(coeff)}")
        return 0
    weights = decompose_cuts(M)
    in_cone = weights.in_cut_cone()
    if args.json:
        _print_json(
            {
                "n": weights.n,
                "weights": [
                    {"u": u, "v": v, "weight": w}
                    for (u, v), w in sorted(weights.nonzero().items())
                ],
                "in_cone": in_cone,
            }
        )
    else:
        for (u, v), w in sorted(weights.nonzero().items()):
            print(f"lambda({u},{v}) = {format_number(w)}")
        print(f"in cut cone: {'true' if in_cone else 'false'}")
    return 0


def _brute_cap(args) -> int:
    if args.cap is not None:
        return args.cap
    env = os.environ.get("ROBQAP_BRUTE_CAP")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise ParseError(f"bad ROBQAP_BRUTE_CAP value {env!r}") from None
    return DEFAULT_BRUTE_CAP


def _cmd_qap(args) -> int:
    A = _load(args.a)
    B = _load(args.b)
    if args.action == "value":
        sigma = parse_permutation(args.perm) if args.perm else identity(A.n)
        value = qap_value(A, B, sigma)
        if args.json:
            _print_json({"n": A.n, "permutation": list(sigma.image), "value": value})
        else:
            print(format_number(value))
        return 0
    if args.action == "solve":
        sol = solve_robinsonian(A, B)
    else:
        sol = brute_force(A, B, cap=_brute_cap(args))
    _print_json(_solution_payload(A.n, sol))
    return 0


def _cmd_gen(args) -> int:
    kind = args.kind
    n = args.n
    if kind == "two-sum":
        M = build_distance("two-sum", n)
    elif kind == "p-sum":
        M = build_distance("p-sum", n, p=args.p)
    elif kind == "linear":
        M = build_distance("linear-arrangement", n)
    elif kind == "bandwidth":
        M = build_distance("bandwidth", n, delta=args.delta)
    elif kind == "b-delta":
        if args.delta is None:
            raise ParseError("b-delta requires --delta")
        M = build_b_delta(n, args.delta)
    elif kind == "robinson":
        M = gen_robinson_similarity(n, args.seed)
    else:
        M = gen_toeplitz_dissimilarity(n, args.seed)
    if args.json:
        _print_json({"n": M.n, "entries": M.entries.tolist()})
    else:
        sys.stdout.write(format_matrix(M))
    return 0


def _cmd_verify(args) -> int:
    n = args.n
    deltas = [args.delta] if args.delta is not None else list(range(1, n))
    checked = 0
    for seed in range(args.count):
        A = gen_robinson_similarity(n, seed)
        for delta in deltas:
            verdict = verify_theorem1(A, delta)
            if verdict is not True:
                msg = (
                    f"violated at n={n} seed={seed} delta={delta}: "
                    f"permutation {' '.join(str(v) for v in verdict.image)}"
                )
                if args.json:
                    _print_json(
                        {
                            "ok": False,
                            "n": n,
                            "seed": seed,
                            "delta": delta,
                            "permutation": list(verdict.image),
                        }
                    )
                else:
                    print(msg)
                return 1
            checked += 1
    if args.json:
        _print_json({"ok": True, "n": n, "instances": args.count, "checks": checked})
    else:
        print(f"inequality holds: {checked} checks on {args.count} instances (n={n})")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="robqap",
        description=(
            "Robinson/Toeplitz structure checks, spectral seriation, and "
            "closed-form or brute-force QAP solving."
        ),
    )
    parser.add_argument("--version", action="version", version=f"robqap {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    json_flag = argparse.ArgumentParser(add_help=False)
    json_flag.add_argument("--json", action="store_true", help="machine-readable output")

    p_check = sub.add_parser("check", parents=[json_flag], help="structural predicates")
    p_check.add_argument(
        "property",
        choices=[
            "robinson-sim",
            "robinson-dis",
            "toeplitz",
            "kalmanson",
            "metric",
            "strong-monotone",
        ],
    )
    p_check.add_argument("matrix")
    p_check.add_argument(
        "--ignore-diagonal",
        action="store_true",
        help="check only strict triples i < j < k (Robinson checks)",
    )
    p_check.set_defaults(handler=_cmd_check)

    p_ser = sub.add_parser("seriate", parents=[json_flag], help="spectral reordering")
    p_ser.add_argument("matrix")
    p_ser.set_defaults(handler=_cmd_seriate)

    p_dec = sub.add_parser("decompose", parents=[json_flag], help="exact expansions")
    p_dec.add_argument("what", choices=["toeplitz", "cuts"])
    p_dec.add_argument("matrix")
    p_dec.set_defaults(handler=_cmd_decompose)

    p_qap = sub.add_parser("qap", parents=[json_flag], help="objective and solvers")
    p_qap.add_argument("action", choices=["value", "solve", "brute"])
    p_qap.add_argument("a")
    p_qap.add_argument("b")
    p_qap.add_argument("--perm", help="one-based assignment for 'value'")
    p_qap.add_argument("--cap", type=int, help="brute-force size cap")
    p_qap.set_defaults(handler=_cmd_qap)

    p_gen = sub.add_parser("gen", parents=[json_flag], help="instance generators")
    p_gen.add_argument(
        "kind",
        choices=[
            "two-sum",
            "p-sum",
            "linear",
            "bandwidth",
            "b-delta",
            "robinson",
            "toeplitz-dis",
        ],
    )
    p_gen.add_argument("--n", type=int, required=True)
    p_gen.add_argument("--p", type=float, help="exponent for p-sum")
    p_gen.add_argument("--delta", type=int, help="band parameter")
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.set_defaults(handler=_cmd_gen)

    p_ver = sub.add_parser(
        "verify", parents=[json_flag], help="exhaustive inequality checks"
    )
    p_ver.add_argument("target", choices=["theorem1"])
    p_ver.add_argument("--n", type=int, required=True)
    p_ver.add_argument("--delta", type=int, help="single band parameter (default: all)")
    p_ver.add_argument("--count", type=int, default=25, help="generated instances")
    p_ver.add_argument("--seed", type=int, default=0)
    p_ver.set_defaults(handler=_cmd_verify)

    return parser


def run(argv) -> int:
    """Dispatch a command line; returns the process exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 0 for --help/--version and 2 for usage errors
        return int(exc.code or 0)
    try:
        return args.handler(args)
    except RobqapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))
