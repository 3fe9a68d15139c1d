"""Command-line front end.

Subcommands: classify | simulate | exact | xi | spectrum | limit | compare.
Outputs are deterministic: CSV with a header row, LF endings and floats at
17 significant digits; JSON via the standard shortest-round-trip float
representation.  Exit codes: 0 success, 1 usage or input error, 2 domain
error, 3 numeric failure.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .coin import Coin, classify, load_coin, split_pq, unitarity_residuals
from .errors import (
    DegenerateABError,
    DegenerateError,
    DomainError,
    NotNormalizedError,
    NotUnitaryError,
    TooLargeError,
)
from .exact import closed_form_distribution, xi_bruteforce, xi_closed
from .quaternion import Quaternion
from .spectral import (
    eigen_system,
    limit_compare,
    qqw_limit_density,
    qqw_limit_params,
    weight_constant,
)
from .walk import distribution, evolve

EXIT_USAGE = 1
EXIT_DOMAIN = 2
EXIT_NUMERIC = 3


class UsageError(Exception):
    pass


def _fmt(value: float) -> str:
    return f"{value:.17g}"


def _parse_quaternion(text: str, flag: str) -> Quaternion:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{flag}: malformed JSON array (line {exc.lineno})") from exc
    if (not isinstance(data, list) or len(data) != 4
            or not all(isinstance(v, (int, float)) for v in data)):
        raise UsageError(f"{flag}: expected a JSON array of four numbers")
    return Quaternion(*(float(v) for v in data))


def _load_coin(path: str) -> Coin:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except FileNotFoundError:
        raise UsageError(f"coin file not found: {path}")
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: malformed JSON (line {exc.lineno})")
    del payload
    return load_coin(path)


def _parse_init(args) -> tuple[Quaternion, Quaternion]:
    alpha = _parse_quaternion(args.alpha, "--alpha")
    beta = _parse_quaternion(args.beta, "--beta")
    defect = abs(alpha.norm_sq() + beta.norm_sq() - 1.0)
    if defect > 1e-10:
        raise UsageError(
            f"--alpha/--beta: |alpha|^2 + |beta|^2 = 1 violated by {defect:.3e}")
    return alpha, beta


def _write_dist_csv(path: str, dist) -> None:
    lines = ["x,probability"]
    for x, p in zip(dist.positions(), dist.probs):
        lines.append(f"{int(x)},{_fmt(float(p))}")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def _quaternion_json(q: Quaternion) -> list[float]:
    return [q.x0, q.x1, q.x2, q.x3]


def _complex_json(z: complex) -> list[float]:
    return [z.real, z.imag]


# ---------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------

def _cmd_classify(args) -> int:
    coin = _load_coin(args.coin)
    payload = {
        "class": classify(coin),
        "residuals": unitarity_residuals(*coin.entries()),
    }
    print(json.dumps(payload, sort_keys=True))
    return 0


def _cmd_simulate(args) -> int:
    coin = _load_coin(args.coin)
    alpha, beta = _parse_init(args)
    if args.steps < 0:
        raise UsageError("--steps must be non-negative")
    dist = distribution(evolve(coin, alpha, beta, args.steps))
    _write_dist_csv(args.out, dist)
    return 0


def _cmd_exact(args) -> int:
    coin = _load_coin(args.coin)
    alpha, beta = _parse_init(args)
    if args.steps < 0:
        raise UsageError("--steps must be non-negative")
    dist = closed_form_distribution(coin, alpha, beta, args.steps)
    _write_dist_csv(args.out, dist)
    return 0


def _cmd_xi(args) -> int:
    coin = _load_coin(args.coin)
    if args.l < 0 or args.m < 0:
        raise UsageError("--l and --m must be non-negative")
    if args.brute:
        ps = xi_bruteforce(split_pq(coin), args.l, args.m)
    else:
        ps = xi_closed(coin, args.l, args.m)
    payload = {
        "l": ps.l,
        "m": ps.m,
        "position": ps.position,
        "matrix": [[list(map(float, ps.matrix[r, c])) for c in range(2)]
                   for r in range(2)],
    }
    if ps.n_paths is not None:
        payload["paths"] = ps.n_paths
    print(json.dumps(payload, sort_keys=True))
    return 0


def _cmd_spectrum(args) -> int:
    coin = _load_coin(args.coin)
    pairs = eigen_system(coin, args.theta)
    payload = {
        "theta": args.theta,
        "eigenvalues": [_complex_json(p.value) for p in pairs],
        "angles": [p.lam for p in pairs],
        "vectors": [[_complex_json(complex(z)) for z in p.vector] for p in pairs],
        "residuals": [p.residual for p in pairs],
    }
    print(json.dumps(payload, sort_keys=True))
    return 0


def _cmd_limit(args) -> int:
    coin = _load_coin(args.coin)
    alpha, beta = _parse_init(args)
    if args.grid < 3:
        raise UsageError("--grid must be at least 3")
    params = qqw_limit_params(coin)
    c = weight_constant(coin, alpha, beta)
    ys = np.linspace(-1.0, 1.0, args.grid)
    dens = qqw_limit_density(params, ys) * (1.0 - c * ys)
    lines = ["y,density"]
    for y, f in zip(ys, dens):
        lines.append(f"{_fmt(float(y))},{_fmt(float(f))}")
    with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
    return 0


def _cmd_compare(args) -> int:
    coin = _load_coin(args.coin)
    alpha, beta = _parse_init(args)
    result = limit_compare(coin, alpha, beta, args.steps)
    payload = {
        "kolmogorov": result.kolmogorov,
        "r": result.r,
        "G": result.g,
        "weightC": result.weight_c,
    }
    print(json.dumps(payload, sort_keys=True))
    return 0


# ---------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------

def _add_init_args(sub) -> None:
    sub.add_argument("--alpha", required=True,
                     help="initial left amplitude as a JSON array [x0,x1,x2,x3]")
    sub.add_argument("--beta", required=True,
                     help="initial right amplitude as a JSON array [x0,x1,x2,x3]")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qqwalk",
        description="quaternionic coined quantum walks on the line")
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("classify", help="print the coin class and unitarity residuals")
    sub.add_argument("--coin", required=True)
    sub.set_defaults(func=_cmd_classify)

    sub = subs.add_parser("simulate", help="evolve the walk and write x,probability CSV")
    sub.add_argument("--coin", required=True)
    _add_init_args(sub)
    sub.add_argument("--steps", type=int, required=True)
    sub.add_argument("--out", required=True)
    sub.set_defaults(func=_cmd_simulate)

    sub = subs.add_parser("exact", help="closed-form distribution, same CSV schema")
    sub.add_argument("--coin", required=True)
    _add_init_args(sub)
    sub.add_argument("--steps", type=int, required=True)
    sub.add_argument("--out", required=True)
    sub.set_defaults(func=_cmd_exact)

    sub = subs.add_parser("xi", help="print a path-sum matrix as JSON")
    sub.add_argument("--coin", required=True)
    sub.add_argument("--l", type=int, required=True)
    sub.add_argument("--m", type=int, required=True)
    sub.add_argument("--brute", action="store_true",
                     help="enumerate paths instead of the closed form")
    sub.set_defaults(func=_cmd_xi)

    sub = subs.add_parser("spectrum", help="eigenvalues/eigenvectors of the symbol")
    sub.add_argument("--coin", required=True)
    sub.add_argument("--theta", type=float, required=True)
    sub.set_defaults(func=_cmd_spectrum)

    sub = subs.add_parser("limit", help="write the weighted limit density as y,density CSV")
    sub.add_argument("--coin", required=True)
    _add_init_args(sub)
    sub.add_argument("--grid", type=int, default=1001)
    sub.add_argument("--out", required=True)
    sub.set_defaults(func=_cmd_limit)

    sub = subs.add_parser("compare", help="Kolmogorov distance to the limit CDF, as JSON")
    sub.add_argument("--coin", required=True)
    _add_init_args(sub)
    sub.add_argument("--steps", type=int, required=True)
    sub.set_defaults(func=_cmd_compare)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad usage and 0 on --help
        return 0 if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, NotNormalizedError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DomainError, NotUnitaryError, TooLargeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (DegenerateError, DegenerateABError, ZeroDivisionError,
            FloatingPointError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
