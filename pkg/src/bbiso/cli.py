"""Command line driver for classification, densities, recognition, isomorphism.

Every subcommand reads group description files in the JSON format of the
groupfile module, takes its randomness from ``--seed`` alone, and keeps the
exit-code contract: 0 for a positive verdict, 1 for a negative verdict, 2 for
errors and inapplicable inputs.  Nothing is printed to stdout when the exit
code is 2.
"""

import argparse
import dataclasses
import json
import sys
from random import Random

from . import report
from .abelian import iso_abelian
from .blackbox import EnumerationBoundError, LasVegasError, enumerate_elements
from .groupfile import GroupFileError, load_group
from .metacyclic import (
    DEFAULT_EPSILON,
    NotMetacyclicError,
    _budget_scale,
    deconjugate,
    iso_metacyclic,
    recognize_coprime_metacyclic,
)
from .oracle import brute_force_iso, enumerate_table
from .orders import (
    FactorizationError,
    FactoredInteger,
    _is_prime,
    as_factored,
    classify_order,
    density_scan,
    mu,
)


class CliError(Exception):
    """A user-facing problem that maps to exit code 2."""


@dataclasses.dataclass(frozen=True)
class RunConfig:
    """Run-wide knobs.  The seed fully determines all randomized behavior."""

    seed: int = 0
    epsilon: float = DEFAULT_EPSILON
    threshold_override: float | None = None
    enumeration_bound: int = 200
    json_output: bool = False


def _plain(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.4f}"
    return str(value)


def _print_pairs(pairs, config: RunConfig) -> None:
    if config.json_output:
        print(json.dumps(dict(pairs), sort_keys=True))
    else:
        for key, value in pairs:
            print(f"{key} = {_plain(value)}")


def _parse_order_factors(text: str) -> FactoredInteger:
    pairs = []
    seen = set()
    for chunk in text.split(","):
        chunk = chunk.strip()
        head, sep, tail = chunk.partition(":")
        if not chunk or not sep:
            raise CliError(
                f"--order-factors entries look like p:e, got {chunk!r}"
            )
        try:
            p, e = int(head), int(tail)
        except ValueError:
            raise CliError(
                f"--order-factors entries look like p:e, got {chunk!r}"
            ) from None
        if p < 2 or not _is_prime(p):
            raise CliError(f"--order-factors: {p} is not prime")
        if e < 1:
            raise CliError("--order-factors exponents must be positive")
        if p in seen:
            raise CliError(f"--order-factors repeats the prime {p}")
        seen.add(p)
        pairs.append((p, e))
    return FactoredInteger.from_factors(pairs)


def _load_handle(path: str, factors_text, config: RunConfig):
    try:
        G = load_group(path)
    except GroupFileError as err:
        raise CliError(f"{path}: {err}") from None
    if factors_text is not None:
        n = _parse_order_factors(factors_text)
        if G.known_order is not None and G.known_order.value != n.value:
            raise CliError(
                f"{path}: declared order {G.known_order.value} does not"
                f" match --order-factors ({n.value})"
            )
        G = dataclasses.replace(G, known_order=n)
    if G.known_order is None:
        try:
            size = len(enumerate_elements(G, bound=config.enumeration_bound))
        except EnumerationBoundError:
            raise CliError(
                f"{path}: the order is not declared and enumeration passed"
                f" {config.enumeration_bound} elements; add an order field"
                " or pass --order-factors"
            ) from None
        G = dataclasses.replace(G, known_order=as_factored(size))
    return G


def _cmd_classify(args, config: RunConfig) -> int:
    try:
        n = int(args.n)
    except ValueError:
        raise CliError(f"n must be an integer, got {args.n!r}") from None
    if n < 1:
        raise CliError("n must be a positive integer")
    info = classify_order(n, threshold_override=config.threshold_override)
    _print_pairs(
        [
            ("n", n),
            ("threshold", info.threshold),
            ("small_part", info.small_part.value),
            ("big_part", info.big_part.value),
            ("in_d", info.in_d),
            ("in_dhat", info.in_dhat),
            ("mu", mu(n)),
        ],
        config,
    )
    return 0


def _cmd_density(args, config: RunConfig) -> int:
    if args.limit <= 0:
        raise CliError("--limit must be positive")
    if args.threads < 1:
        raise CliError("--threads must be at least 1")
    value = density_scan(args.set, args.limit, threads=args.threads)
    _print_pairs(
        [
            ("set", args.set),
            ("limit", args.limit),
            ("count", round(value * args.limit)),
            ("density", value),
        ],
        config,
    )
    return 0


def _common_order(G, H) -> FactoredInteger:
    n, m = G.known_order, H.known_order
    if n.value != m.value:
        raise CliError(f"order mismatch: {n.value} vs {m.value}")
    return n


def _cmd_iso(args, config: RunConfig) -> int:
    G = _load_handle(args.file1, args.order_factors, config)
    H = _load_handle(args.file2, args.order_factors, config)
    n = _common_order(G, H)
    rng = Random(config.seed)
    try:
        if args.mode == "abelian":
            verdict = iso_abelian(
                G,
                H,
                n,
                threshold_override=config.threshold_override,
                strict=True,
            )
        elif args.mode == "metacyclic":
            verdict = iso_metacyclic(
                G,
                H,
                n,
                rng,
                threshold_override=config.threshold_override,
                epsilon=config.epsilon,
            )
        else:
            verdict = brute_force_iso(
                enumerate_table(G, config.enumeration_bound),
                enumerate_table(H, config.enumeration_bound),
            )
    except NotMetacyclicError as err:
        raise CliError(str(err)) from None
    except LasVegasError as err:
        raise CliError(f"randomized search exhausted: {err}") from None
    except (ValueError, EnumerationBoundError) as err:
        raise CliError(str(err)) from None
    if config.json_output:
        print(
            json.dumps(
                {"isomorphic": verdict, "mode": args.mode, "n": n.value},
                sort_keys=True,
            )
        )
    else:
        print("isomorphic" if verdict else "not isomorphic")
    return 0 if verdict else 1


def _cmd_recognize(args, config: RunConfig) -> int:
    G = _load_handle(args.file, args.order_factors, config)
    rng = Random(config.seed)
    try:
        dec = recognize_coprime_metacyclic(
            G,
            G.known_order,
            rng,
            threshold_override=config.threshold_override,
            epsilon=config.epsilon,
        )
    except NotMetacyclicError as err:
        if config.json_output:
            print(json.dumps({"metacyclic": False, "reason": str(err)}, sort_keys=True))
        else:
            print(f"not coprime meta-cyclic: {err}")
        return 1
    except LasVegasError as err:
        raise CliError(f"randomized search exhausted: {err}") from None
    except ValueError as err:
        raise CliError(str(err)) from None
    if config.json_output:
        print(
            json.dumps(
                {
                    "metacyclic": True,
                    "c": dec.c.value,
                    "d": dec.d.value,
                    "v": dec.action_v,
                },
                sort_keys=True,
            )
        )
    else:
        print(f"coprime meta-cyclic: c = {dec.c.value}, d = {dec.d.value}, v = {dec.action_v}")
    return 0


def _cmd_deconjugate(args, config: RunConfig) -> int:
    G = _load_handle(args.file, args.order_factors, config)
    if len(G.generators) != 2:
        raise CliError(
            "the file must declare exactly two generators,"
            " the acting element first"
        )
    x, y = G.generators
    rng = Random(config.seed)
    try:
        a = G.element_order(x)
        b = G.element_order(y)
        v = deconjugate(G, x, y, a, b, rng, tries_scale=_budget_scale(config.epsilon))
    except LasVegasError as err:
        raise CliError(f"randomized search exhausted: {err}") from None
    except ValueError as err:
        raise CliError(str(err)) from None
    if config.json_output:
        print(json.dumps({"a": a.value, "b": b.value, "v": v}, sort_keys=True))
    else:
        print(v)
    return 0


def _cmd_report(args, config: RunConfig) -> int:
    if args.threads < 1:
        raise CliError("--threads must be at least 1")
    limits = []
    for chunk in args.limits.split(","):
        chunk = chunk.strip()
        try:
            limit = int(chunk)
        except ValueError:
            raise CliError(f"--limits entries must be integers, got {chunk!r}") from None
        if limit <= 0:
            raise CliError("--limits entries must be positive")
        limits.append(limit)
    rows = report.density_rows(limits, threads=args.threads)
    csv_path, png_path = report.write_outputs(rows, args.out_dir)
    if config.json_output:
        print(
            json.dumps(
                {"csv": csv_path, "png": png_path, "rows": rows}, sort_keys=True
            )
        )
    else:
        sys.stdout.write(report.csv_text(rows))
    return 0


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--seed", type=int, default=0, help="PRNG seed; fixes every randomized choice"
    )
    common.add_argument(
        "--epsilon",
        type=float,
        default=DEFAULT_EPSILON,
        help="failure budget for randomized searches (default 2**-20)",
    )
    common.add_argument(
        "--threshold",
        type=float,
        default=None,
        help="override the small/big prime cutoff",
    )
    common.add_argument(
        "--json", action="store_true", help="print one machine-readable JSON object"
    )
    common.add_argument(
        "--enumeration-bound",
        type=int,
        default=200,
        dest="enumeration_bound",
        help="cap for enumeration fallbacks (order filling, brute force)",
    )

    parser = argparse.ArgumentParser(
        prog="bbiso",
        description=(
            "Isomorphism tests for groups given by generators, with the"
            " order classification that delimits them."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="classify a group order")
    p.add_argument("n", help="the order to classify")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser(
        "density", parents=[common], help="density of an order class up to a limit"
    )
    p.add_argument("--set", choices=("d", "dhat"), required=True)
    p.add_argument("--limit", type=int, required=True)
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=_cmd_density)

    p = sub.add_parser("iso", parents=[common], help="decide isomorphism of two groups")
    p.add_argument("--mode", choices=("abelian", "metacyclic", "bruteforce"), required=True)
    p.add_argument("--order-factors", default=None, dest="order_factors")
    p.add_argument("file1")
    p.add_argument("file2")
    p.set_defaults(func=_cmd_iso)

    p = sub.add_parser(
        "recognize",
        parents=[common],
        help="recognize a coprime cyclic-by-cyclic decomposition",
    )
    p.add_argument("--order-factors", default=None, dest="order_factors")
    p.add_argument("file")
    p.set_defaults(func=_cmd_recognize)

    p = sub.add_parser(
        "deconjugate",
        parents=[common],
        help="conjugation exponent v with x^-1 y x = y^v for a two-generator file",
    )
    p.add_argument("--order-factors", default=None, dest="order_factors")
    p.add_argument("file")
    p.set_defaults(func=_cmd_deconjugate)

    p = sub.add_parser(
        "report",
        parents=[common],
        help="density table as CSV plus a rendered figure",
    )
    p.add_argument("--limits", default="1000,10000,100000")
    p.add_argument("--out-dir", default="reports", dest="out_dir")
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=_cmd_report)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    config = RunConfig(
        seed=args.seed,
        epsilon=args.epsilon,
        threshold_override=args.threshold,
        enumeration_bound=args.enumeration_bound,
        json_output=args.json,
    )
    try:
        if not 0 <= config.seed < 2**64:
            raise CliError("--seed must fit in 64 bits")
        if not 0.0 < config.epsilon < 1.0:
            raise CliError("--epsilon must lie strictly between 0 and 1")
        if config.enumeration_bound < 1:
            raise CliError("--enumeration-bound must be positive")
        return args.func(args, config)
    except CliError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except (FactorizationError, GroupFileError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
