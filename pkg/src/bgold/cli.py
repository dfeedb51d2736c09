"""Command line front end: ``bgold <compare|density|psi|sing|beatty|discrepancy>``.

Exit codes: 0 ok, 2 precision exhausted, 3 capacity, 4 bad arguments.  Errors
are reported on stderr as a one-line JSON object.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from dataclasses import asdict
from fractions import Fraction

import numpy as np

from . import __version__
from .beatty import BeattyConfig, generate_up_to
from .errors import BadArguments, BgoldError
from .experiments import compare, density, discrepancy_ladder
from .irrational import as_fraction, parse_spec
from .psi import psi_conv_build
from .singular import singular_series_table


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise BadArguments(message)


def _int(text: str) -> int:
    text = text.strip()
    if "^" in text:
        base, exp = text.split("^", 1)
        return int(base) ** int(exp)
    return int(float(text)) if "e" in text.lower() else int(text)


def _range(text: str) -> tuple[int, int]:
    if ".." not in text:
        raise BadArguments(f"expected A..B, got {text!r}")
    a, b = text.split("..", 1)
    return _int(a), _int(b)


def _fmt(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "1" if v else "0"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return "%.12g" % v


def _emit(args, header: list[str], rows, extra: dict | None = None) -> None:
    out = open(args.out, "w", encoding="utf-8", newline="\n") if args.out else sys.stdout
    try:
        if args.format == "json":
            doc = {"columns": header, "rows": [dict(zip(header, r)) for r in rows]}
            if extra:
                doc["summary"] = extra
            json.dump(doc, out, default=float)
            out.write("\n")
        else:
            out.write(",".join(header) + "\n")
            for r in rows:
                out.write(",".join(_fmt(v) for v in r) + "\n")
            if extra:
                print(json.dumps({"summary": extra}, default=float), file=sys.stderr)
    finally:
        if out is not sys.stdout:
            out.close()


def _config(args) -> BeattyConfig:
    cfg = BeattyConfig(parse_spec(args.alpha), as_fraction(args.beta))
    if cfg.is_rational and not args.allow_rational:
        raise BadArguments(f"{args.alpha} is rational; pass --allow-rational to run anyway")
    return cfg


def cmd_compare(args) -> None:
    cfg = _config(args)
    window = _range(args.window) if args.window else None
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        res = compare(cfg, args.kappa, args.xmax, window)
    if not res.rows:
        print("warning: window contains no N of the right parity", file=sys.stderr)
    header = ["N", "G_kappa", "R_kappa", "main_term", "rel_err", "witness"]
    rows = [(r.n, r.g_kappa, r.r_kappa, r.main_term, r.rel_err, r.witness) for r in res.rows]
    _emit(args, header, rows, res.summary())


def cmd_density(args) -> None:
    cfg = _config(args)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        s = density(cfg, args.kappa, args.xmax)
    header = ["x_max", "parity_class_size", "no_rep_count", "witness_count",
              "no_rep_fraction", "witness_fraction", "predicted_witness_fraction"]
    row = (s.x_max, s.parity_class_size, s.no_rep_count, s.witness_count,
           s.no_rep_fraction, s.witness_fraction, s.predicted_witness_fraction)
    _emit(args, header, [row])


def _gamma_value(text: str) -> float:
    try:
        return float(Fraction(text))
    except ValueError:
        return float(parse_spec(text))


def cmd_psi(args) -> None:
    poly = psi_conv_build(args.kappa, _gamma_value(args.gamma))
    x = np.arange(args.grid) / args.grid
    v = poly(x)
    _emit(args, ["x", "psi"], list(zip(x.tolist(), v.tolist())),
          {"grid_min": float(v.min()), "grid_argmin": float(x[np.argmin(v)])})


def cmd_sing(args) -> None:
    vals, tails = singular_series_table(args.kappa, args.limit)
    n = np.arange(1, args.limit + 1)
    _emit(args, ["N", "S_kappa", "tail_bound"],
          list(zip(n.tolist(), vals[1:].tolist(), tails[1:].tolist())))


def cmd_beatty(args) -> None:
    cfg = BeattyConfig(parse_spec(args.alpha), as_fraction(args.beta))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        seq = generate_up_to(cfg, args.limit)
    _emit(args, ["n"], [(int(v),) for v in seq])


def cmd_discrepancy(args) -> None:
    gamma = parse_spec(args.gamma)
    a, b = args.ladder.split("..", 1)
    lo, hi = _int(a), _int(b)
    ladder = []
    m = lo
    while m <= hi:
        ladder.append(m)
        m *= 10
    rows = discrepancy_ladder(gamma, as_fraction(args.delta), ladder)
    _emit(args, ["M", "D_star", "log_ratio"], rows)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="bgold", description="Beatty-prime representation experiments")
    p.add_argument("--version", action="version", version=__version__)
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=["csv", "json"], default="csv")
    common.add_argument("--out", default=None, help="output file (default stdout)")
    common.add_argument("--seed", type=int, default=0, help="seed for randomised runs")
    beatty = _Parser(add_help=False)
    beatty.add_argument("--alpha", default="sqrt:2", help="number spec, e.g. sqrt:2, pi, dec:2.5@10^9")
    beatty.add_argument("--beta", default="0", help="rational shift")
    beatty.add_argument("--allow-rational", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("compare", parents=[common, beatty], help="G_kappa vs main term")
    s.add_argument("--kappa", type=int, default=2)
    s.add_argument("--xmax", type=_int, default=10**4)
    s.add_argument("--window", default=None, help="A..B")
    s.set_defaults(func=cmd_compare)

    s = sub.add_parser("density", parents=[common, beatty], help="witness / no-representation counts")
    s.add_argument("--kappa", type=int, default=2)
    s.add_argument("--xmax", type=_int, default=10**4)
    s.set_defaults(func=cmd_density)

    s = sub.add_parser("psi", parents=[common], help="tabulate psi^(kappa)")
    s.add_argument("--gamma", required=True)
    s.add_argument("--kappa", type=int, default=2)
    s.add_argument("--grid", type=_int, default=1000)
    s.set_defaults(func=cmd_psi)

    s = sub.add_parser("sing", parents=[common], help="tabulate the singular series")
    s.add_argument("--kappa", type=int, default=2)
    s.add_argument("--limit", type=_int, default=100)
    s.set_defaults(func=cmd_sing)

    s = sub.add_parser("beatty", parents=[common, beatty], help="list Beatty elements")
    s.add_argument("--limit", type=_int, default=100)
    s.set_defaults(func=cmd_beatty)

    s = sub.add_parser("discrepancy", parents=[common], help="star discrepancy ladder")
    s.add_argument("--gamma", default="golden-inverse")
    s.add_argument("--delta", default="0")
    s.add_argument("--ladder", default="10^2..10^5")
    s.set_defaults(func=cmd_discrepancy)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        args.func(args)
    except BgoldError as exc:
        print(json.dumps({"error": exc.category, "message": str(exc)}), file=sys.stderr)
        return exc.exit_code
    return 0


if __name__ == "__main__":
    sys.exit(main())
