"""Seeded, reproducible experiment runner.

Every subcommand resolves all randomness from one ``--seed`` through
labelled child generators, so identical invocations produce byte-identical
output files.  Output is CSV (RFC-4180 quoting) or JSONL; every file
starts with a comment row echoing the configuration and a header row
naming the columns.

Exit codes: 0 success, 1 suite/assertion failure, 2 usage or validation
error.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from fractions import Fraction

from .errors import IetextError
from .extension import SimpleFunction, Observable, correlation_cesaro, iter_walk
from .groups import GTuple, Representation, Torus, U1, haar_tuple, parse_group
from .iet import EXACT, IET, Permutation, make_iet
from .obstruction import track_conjugacy, track_fixed_vector
from .rauzy import ExtendedState, check_P1, check_P2, renormalize
from .sampling import random_irreducible_perm
from .seeding import derive_rng
from .selftest import run_selftest

OUT_DIR_ENV = "IETEXT_OUT_DIR"

#: A final Weyl sum above this fraction of the dimension flags the walk as
#: degenerate (calibration choice; an equidistributing walk sits near 0).
DEGENERATE_WEYL = 0.9


# -- value parsing ---------------------------------------------------------

def _parse_lengths(text: str, n: int | None, rng) -> tuple:
    if text == "random":
        if n is None:
            raise IetextError("--lengths random requires --n")
        import numpy as np
        return tuple(float(v) for v in rng.dirichlet(np.ones(n)))
    parts = [p.strip() for p in text.split(",")]
    slashes = ["/" in p for p in parts]
    if any(slashes) and not all(slashes):
        raise IetextError("lengths mix p/q rationals with decimals; pick one mode")
    if all(slashes):
        return tuple(Fraction(p) for p in parts)
    return tuple(float(p) for p in parts)


def _parse_perm(text: str, n: int | None, rng) -> Permutation:
    if text == "random":
        if n is None:
            raise IetextError("--perm random requires --n")
        return random_irreducible_perm(n, rng)
    return Permutation(tuple(int(p) for p in text.split(",")))


def _parse_point(text: str, iet: IET, rng):
    if text == "random":
        return (float(rng.random()) * iet.total if iet.mode != EXACT
                else Fraction(int(rng.integers(0, 10**9)), 10**9) * iet.total)
    if iet.mode == EXACT:
        return Fraction(text)
    return float(Fraction(text))


def _build_iet(args, rng) -> IET:
    lengths = _parse_lengths(args.lengths, args.n, rng)
    perm = _parse_perm(args.perm, args.n or len(lengths), rng)
    return make_iet(lengths, perm)


def _build_tuple(text: str, group, n: int, rng) -> GTuple:
    if text == "haar":
        return haar_tuple(group, n, rng)
    elements = tuple(group.parse_element(p) for p in text.split(";"))
    if len(elements) != n:
        raise IetextError(f"tuple has {len(elements)} elements, IET has {n} intervals")
    return GTuple(group, elements)


def _parse_reps(text: str, group) -> list[Representation]:
    if isinstance(group, Torus):
        labels = [tuple(int(v) for v in part.split(","))
                  for part in text.split(";")]
    elif isinstance(group, U1):
        labels = [int(p) for p in text.split(",")]
    else:  # SU2 spins or product labels
        labels = []
        for part in text.split(","):
            if "|" in part:
                labels.append(tuple(_parse_one_label(f, p)
                                    for f, p in zip(group.factors, part.split("|"))))
            else:
                labels.append(Fraction(part))
    return [Representation(group, lab) for lab in labels]


def _parse_one_label(factor, text: str):
    if isinstance(factor, U1):
        return int(text)
    if isinstance(factor, Torus):
        return tuple(int(v) for v in text.split("~"))
    return Fraction(text)


def _format_scalar(v) -> str:
    return str(v) if isinstance(v, Fraction) else repr(float(v))


# -- output plumbing -------------------------------------------------------

class Writer:
    """CSV/JSONL writer with a config comment and a header row."""

    def __init__(self, stream, fmt: str, config: dict, columns: list[str]):
        self.stream = stream
        self.fmt = fmt
        self.columns = columns
        echo = " ".join(f"{k}={v}" for k, v in sorted(config.items()))
        if fmt == "csv":
            stream.write(f"# config: {echo}\n")
            self._csv = csv.writer(stream, lineterminator="\n")
            self._csv.writerow(columns)
        else:
            stream.write(json.dumps({"config": config}, sort_keys=True) + "\n")

    def row(self, values: list) -> None:
        if self.fmt == "csv":
            self._csv.writerow(values)
        else:
            self.stream.write(json.dumps(dict(zip(self.columns, values))) + "\n")

    def comment(self, text: str) -> None:
        if self.fmt == "csv":
            self.stream.write(f"# {text}\n")
        else:
            self.stream.write(json.dumps({"comment": text}) + "\n")


def _config_echo(args, skip=("out", "func", "config")) -> dict:
    return {k: str(v) for k, v in sorted(vars(args).items())
            if k not in skip and v is not None}


def _open_out(args):
    if args.out is None:
        return sys.stdout, False
    path = args.out
    if not os.path.dirname(path) and os.environ.get(OUT_DIR_ENV):
        path = os.path.join(os.environ[OUT_DIR_ENV], path)
    return open(path, "w", newline=""), True


# -- subcommands -----------------------------------------------------------

def cmd_iet(args) -> int:
    rng = derive_rng(args.seed, "lengths")
    iet = _build_iet(args, rng)
    stream, close = _open_out(args)
    try:
        writer = Writer(stream, args.format, _config_echo(args), ["j", "x", "interval"])
        writer.comment("offsets: " + ",".join(_format_scalar(w) for w in iet.offsets))
        x = _parse_point(args.orbit, iet, derive_rng(args.seed, "point"))
        word = []
        for j in range(args.k):
            word.append(iet.interval_index(x))
            writer.row([j, _format_scalar(x), word[-1]])
            x = iet.apply(x)
        writer.comment("coding word: " + ",".join(str(w) for w in word))
    finally:
        if close:
            stream.close()
    return 0


def _serialize_tuple(t: GTuple) -> str:
    return ";".join(t.group.format_element(el) for el in t.elements)


def cmd_renorm(args) -> int:
    rng = derive_rng(args.seed, "lengths")
    iet = _build_iet(args, rng)
    group = parse_group(args.group)
    tup = _build_tuple(args.tuple, group, iet.n, derive_rng(args.seed, "tuple"))
    path = renormalize(ExtendedState(iet, tup), args.steps)
    eps = Fraction(args.eps) if iet.mode == EXACT else float(Fraction(args.eps))
    stream, close = _open_out(args)
    try:
        writer = Writer(stream, args.format, _config_echo(args),
                        ["m", "rule", "status", "lengths", "perm", "g", "P1", "b", "P2"])

        def emit(m, rule, status, state):
            p1, b = check_P1(iet, m, eps)
            p2 = check_P2(iet, m, eps)
            writer.row([
                m, rule, status,
                ";".join(_format_scalar(v) for v in state.iet.normalized().lengths),
                ",".join(str(v) for v in state.iet.perm.images),
                _serialize_tuple(state.tuple), int(p1), b, int(p2)])

        emit(0, "", "ok", path.initial)
        for m, rec in enumerate(path.steps, start=1):
            emit(m, str(rec.rule), "ok", path.state(m))
        if path.degenerate:
            writer.row([path.m, "", "degenerate", "", "", "", "", "", ""])
    finally:
        if close:
            stream.close()
    return 0


def cmd_walk(args) -> int:
    rng = derive_rng(args.seed, "lengths")
    iet = _build_iet(args, rng)
    group = parse_group(args.group)
    tup = _build_tuple(args.tuple, group, iet.n, derive_rng(args.seed, "tuple"))
    reps = _parse_reps(args.reps, group)
    x = _parse_point(args.x, iet, derive_rng(args.seed, "point"))
    stream, close = _open_out(args)
    try:
        columns = ["k"]
        for i, rep in enumerate(reps):
            columns += [f"re_S{i}", f"im_S{i}"]
        writer = Writer(stream, args.format, _config_echo(args), columns)
        final = {}
        for k, _, sums in iter_walk(iet, tup, x, args.K, reps):
            if k % args.stride == 0 or k == args.K:
                row = [k]
                for rep in reps:
                    s = sums[rep] / k
                    row += [repr(s.real), repr(s.imag)]
                writer.row(row)
            if k == args.K:
                final = {rep: sums[rep] / k for rep in reps}
        flags = []
        for i, rep in enumerate(reps):
            mag = abs(final[rep])
            note = " degenerate" if mag >= DEGENERATE_WEYL * rep.dimension else ""
            flags.append(f"|S_K[{i}]|={mag:.6f}{note}")
        writer.comment("summary: " + " ".join(flags))
    finally:
        if close:
            stream.close()
    return 0


def cmd_mix(args) -> int:
    rng = derive_rng(args.seed, "lengths")
    iet = _build_iet(args, rng)
    group = parse_group(args.group)
    tup = _build_tuple(args.tuple, group, iet.n, derive_rng(args.seed, "tuple"))
    reps = _parse_reps(args.obs_rep, group)
    obs = Observable(frequency=args.obs_freq, rep=reps[0])
    cesaro = correlation_cesaro(iet, SimpleFunction(iet, tup), obs,
                                args.N, args.M, derive_rng(args.seed, "mc"))
    stream, close = _open_out(args)
    try:
        writer = Writer(stream, args.format, _config_echo(args), ["j", "C_j"])
        for j in range(1, args.N + 1):
            if j % args.stride == 0 or j == args.N:
                writer.row([j, repr(float(cesaro[j - 1]))])
        writer.comment(f"summary: C_N={float(cesaro[-1]):.6f} "
                       f"mc_error_bound={3.0 / math.sqrt(args.M):.6f}")
    finally:
        if close:
            stream.close()
    return 0


def cmd_obstruct(args) -> int:
    rng = derive_rng(args.seed, "lengths")
    iet = _build_iet(args, rng)
    group = parse_group(args.group)
    tup = _build_tuple(args.tuple, group, iet.n, derive_rng(args.seed, "tuple"))
    rep = _parse_reps(args.rep, group)[0]
    reports = track_fixed_vector(ExtendedState(iet, tup), rep,
                                 steps=args.steps, stride=args.stride)
    stream, close = _open_out(args)
    try:
        writer = Writer(stream, args.format, _config_echo(args),
                        ["m", "rule", "surrogate", "ob"])
        for r in reports:
            writer.row([r.m, "" if r.rule is None else str(r.rule),
                        repr(r.surrogate), repr(r.ob)])
        writer.comment(f"summary: final_ob={reports[-1].ob:.6e} "
                       f"min_ob={min(r.ob for r in reports):.6e}")
    finally:
        if close:
            stream.close()
    return 0


def cmd_conj(args) -> int:
    rng = derive_rng(args.seed, "lengths")
    iet = _build_iet(args, rng)
    group = parse_group(args.group)
    tup_g = _build_tuple(args.tuple, group, iet.n, derive_rng(args.seed, "tuple", 0))
    tup_h = _build_tuple(args.tuple2, group, iet.n, derive_rng(args.seed, "tuple", 1))
    reports = track_conjugacy(ExtendedState(iet, tup_g), ExtendedState(iet, tup_h),
                              steps=args.steps, stride=args.stride,
                              all_components=args.all_components)
    stream, close = _open_out(args)
    try:
        writer = Writer(stream, args.format, _config_echo(args), ["m", "rule", "c"])
        for r in reports:
            writer.row([r.m, "" if r.rule is None else str(r.rule), repr(r.value)])
        writer.comment(f"summary: final_c={reports[-1].value:.6e} "
                       f"min_c={min(r.value for r in reports):.6e}")
    finally:
        if close:
            stream.close()
    return 0


def cmd_selftest(args) -> int:
    return 0 if run_selftest(seed=args.seed) else 1


# -- parser ----------------------------------------------------------------

def _add_common(p, tuple2=False):
    p.add_argument("--n", type=int, default=None, help="number of intervals (for random data)")
    p.add_argument("--perm", default="random", help="comma list of images, or 'random'")
    p.add_argument("--lengths", required=True,
                   help="comma list of p/q rationals or decimals, or 'random'")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None, help=f"output file (default stdout; bare "
                   f"names resolve under ${OUT_DIR_ENV} when set)")
    p.add_argument("--format", choices=("csv", "jsonl"), default="csv")
    p.add_argument("--config", default=None, help="key=value file with defaults")
    p.add_argument("--group", default="u1")
    p.add_argument("--tuple", default="haar",
                   help="'haar' or ';'-joined serialized elements")
    if tuple2:
        p.add_argument("--tuple2", default="haar")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ietext",
        description="Renormalization and equidistribution experiments for "
                    "group extensions of interval exchanges.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("iet", help="orbits and coding words of an IET")
    _add_common(p)
    p.add_argument("--orbit", default="random", help="starting point, e.g. 1/2 or 0.5")
    p.add_argument("--k", type=int, default=10, help="orbit length")
    p.set_defaults(func=cmd_iet)

    p = sub.add_parser("renorm", help="extended renormalization path")
    _add_common(p)
    p.add_argument("--steps", type=int, default=30)
    p.add_argument("--eps", default="1/10", help="threshold for the P1/P2 flags")
    p.set_defaults(func=cmd_renorm)

    p = sub.add_parser("walk", help="walk on the group with Weyl character sums")
    _add_common(p)
    p.add_argument("--x", default="random", help="base point")
    p.add_argument("--K", type=int, default=10**5)
    p.add_argument("--reps", default="1", help="representation labels")
    p.add_argument("--stride", type=int, default=1000)
    p.set_defaults(func=cmd_walk)

    p = sub.add_parser("mix", help="Cesaro correlation diagnostic")
    _add_common(p)
    p.add_argument("--N", type=int, default=500, help="number of lags")
    p.add_argument("--M", type=int, default=500, help="Monte Carlo points")
    p.add_argument("--obs-rep", default="1", help="fiber representation label")
    p.add_argument("--obs-freq", type=int, default=0, help="base frequency")
    p.add_argument("--stride", type=int, default=10)
    p.set_defaults(func=cmd_mix)

    p = sub.add_parser("obstruct", help="fixed-vector obstruction series")
    _add_common(p)
    p.add_argument("--rep", default="1", help="matrix-realizable label")
    p.add_argument("--steps", type=int, default=30)
    p.add_argument("--stride", type=int, default=1)
    p.set_defaults(func=cmd_obstruct)

    p = sub.add_parser("conj", help="conjugacy obstruction series")
    _add_common(p, tuple2=True)
    p.add_argument("--steps", type=int, default=30)
    p.add_argument("--stride", type=int, default=1)
    p.add_argument("--all-components", action="store_true")
    p.set_defaults(func=cmd_conj)

    p = sub.add_parser("selftest", help="run the built-in oracle suites")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_selftest)

    return parser


def _inject_config(argv: list[str]) -> list[str]:
    """Splice config-file entries right after the subcommand so explicit
    flags still win (argparse keeps the last occurrence)."""
    if "--config" not in argv:
        return argv
    path = argv[argv.index("--config") + 1]
    tokens = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            key, _, value = line.partition("=")
            tokens += [f"--{key.strip().replace('_', '-')}", value.strip()]
    return argv[:1] + tokens + argv[1:]


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if argv:
        argv = _inject_config(argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except IetextError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
