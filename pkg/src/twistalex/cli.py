"""Command line interface.

Exit codes: 0 success, 1 a theorem-backed check failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import __version__
from .algebra import ComplexFloat
from .cache import InvariantCache
from .checks import SUITES, CheckOptions, run_check_suite
from .knots import PresentationError
from .l2 import (
    l2_from_alexander,
    mp_coefficients,
    mp_degree,
    mp_symmetry_check,
    plot_samples,
    torus_closed_form,
    unknot_form,
)
from .representations import SEARCH_PRIMES, Representation, RepresentationError, rep_search_sl2_fp
from .roots import RootFindingError
from .table import TableError, bundled_table_path, load_table, presentation_from_text, resolve_knot
from .torsion import (
    IllConditionedFit,
    NoValidColumn,
    alexander_polynomial,
    alexander_torsion,
    twisted_torsion,
    twisted_torsion_numeric,
)

EXIT_OK, EXIT_THEOREM, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _knot(args):
    try:
        return resolve_knot(args.knot)
    except (PresentationError, TableError, OSError) as exc:
        raise InputError(str(exc)) from None


def _monic_word(flag):
    return "monic" if flag else "not monic"


# ---------------------------------------------------------------------------


def cmd_parse(args, out):
    src = args.source
    try:
        if os.path.exists(src):
            with open(src) as fh:
                text = fh.read()
        else:
            text = src
        P = presentation_from_text(text, args.format)
    except (PresentationError, OSError) as exc:
        raise InputError(str(exc)) from None
    out.write(P.to_json())
    return EXIT_OK


def _cached(args, name, kind, params, compute):
    if args.no_cache:
        return compute()
    cache = InvariantCache(args.cache, seed=args.seed)
    result = cache.get_or_compute(name, kind, params, compute)
    cache.save()
    return result


def cmd_alexander(args, out):
    name, P, _ = _knot(args)

    def compute():
        delta = alexander_polynomial(P)
        tau = alexander_torsion(P)
        return (
            f"Δ = {delta.render()}; τ = {tau.render()}; deg {tau.degree()}; "
            f"{_monic_word(tau.is_monic())}"
        )

    out.write(_cached(args, name, "alexander-cli", {"presentation": P.to_json()}, compute) + "\n")
    return EXIT_OK


def _load_rep(path):
    try:
        return Representation.load(path)
    except (OSError, json.JSONDecodeError, RepresentationError, ValueError) as exc:
        raise InputError(f"representation {path}: {exc}") from None


def cmd_twisted(args, out):
    name, P, _ = _knot(args)
    rep = _load_rep(args.rep)
    try:
        rep = rep.aligned(P)
        if args.numeric or isinstance(rep.ring, ComplexFloat):
            res = twisted_torsion_numeric(P, rep, samples=args.samples, column=args.column)
            r = res.report
            cond = r.get("condition")
            out.write(
                f"deg {res.degree}; {_monic_word(res.monic)}; samples {r['samples']}; "
                f"column {r['column'] + 1}; condition {cond:.3g}\n"
                if cond is not None
                else f"deg {res.degree}; zero torsion; samples {r['samples']}\n"
            )
        else:
            tau = twisted_torsion(P, rep, column=args.column)
            if tau.is_zero():
                out.write("τ = 0 (non-acyclic)\n")
            else:
                out.write(f"τ = {tau.render()}; deg {tau.degree()}; {_monic_word(tau.is_monic())}\n")
    except RepresentationError as exc:
        raise InputError(str(exc)) from None
    except NoValidColumn as exc:
        raise InputError(f"no valid column: {exc}") from None
    except IllConditionedFit as exc:
        out.write(f"ill-conditioned fit: {exc}\n")
        return EXIT_THEOREM
    return EXIT_OK


def cmd_repsearch(args, out):
    name, P, _ = _knot(args)
    if args.prime not in SEARCH_PRIMES:
        raise InputError(f"--prime must be one of {SEARCH_PRIMES}")
    if P.n > 12:
        raise InputError("representation search supports at most 12 generators")
    reps = rep_search_sl2_fp(P, args.prime, args.budget)
    os.makedirs(args.out, exist_ok=True)
    stem = "".join(c if c.isalnum() or c in "_-" else "_" for c in name)
    for i, rep in enumerate(reps, 1):
        path = os.path.join(args.out, f"{stem}_F{args.prime}_{i}.json")
        with open(path, "w") as fh:
            fh.write(rep.to_json())
        out.write(path + "\n")
    out.write(f"{len(reps)} nonabelian representations into SL(2,F_{args.prime})\n")
    return EXIT_OK


def cmd_l2(args, out):
    name, P, _ = _knot(args)
    if args.homomorphism == "full":
        if args.knot == "unknot":
            f = unknot_form()
        elif args.knot.startswith("torus:"):
            p, q = (int(x) for x in args.knot[len("torus:"):].split(","))
            f = torus_closed_form(p, q)
        else:
            raise InputError("the full torsion is only available for unknot and torus:p,q")
    else:
        try:
            f = l2_from_alexander(alexander_polynomial(P), rng=np.random.default_rng(args.seed))
        except RootFindingError as exc:
            raise InputError(f"root finding failed: {exc}") from None
    out.write(f.render() + "\n")
    s = mp_symmetry_check(f)
    c = mp_coefficients(f)
    out.write(
        f"homomorphism: {args.homomorphism}; deg {mp_degree(f)}; {_monic_word(c.monic)}; "
        f"symmetry n = {s.n}\n"
    )
    if args.plot:
        if args.tmax <= 1 or args.points < 2:
            raise InputError("--tmax must exceed 1 and --points be at least 2")
        with open(args.plot, "w") as fh:
            fh.write(plot_samples(f, args.tmax, args.points))
    return EXIT_OK


def cmd_check(args, out):
    path = bundled_table_path() if args.table == "bundled" else args.table
    try:
        table = load_table(path)
    except TableError as exc:
        raise InputError(str(exc)) from None
    options = CheckOptions(prime=args.prime, budget=args.budget, pairs=args.pairs, seed=args.seed)
    cache = None if args.no_cache else InvariantCache(args.cache, seed=args.seed)
    report = run_check_suite(table, args.suite, options, cache=cache, jobs=args.jobs)
    if cache is not None:
        cache.save()
    out.write(report.render(verbose=not args.failures_only))
    return report.exit_code


def cmd_cache(args, out):
    cache = InvariantCache(args.cache)
    if args.action == "clear":
        n = len(cache.entries)
        cache.clear()
        out.write(f"cleared {n} entries from {cache.path}\n")
    else:
        out.write(f"cache {cache.path} (version {__version__})\n")
        for kind, n in sorted(cache.summary().items()):
            out.write(f"  {kind}: {n}\n")
        if not cache.entries:
            out.write("  empty\n")
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser():
    ap = argparse.ArgumentParser(prog="twistalex", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"twistalex {__version__}")
    ap.add_argument("--seed", type=int, default=0, help="seed for every random choice")
    ap.add_argument("--cache", default=None, help="cache file (default ~/.cache/twistalex)")
    ap.add_argument("--no-cache", action="store_true", help="neither read nor write the cache")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="validate a knot and print its presentation")
    p.add_argument("source", help="file or literal braid word, PD code or presentation JSON")
    p.add_argument("--format", choices=("braid", "pd", "presentation"))
    p.set_defaults(func=cmd_parse)

    knot_help = "unknot, torus:p,q, braid:..., pd:..., a table name or a file"
    p = sub.add_parser("alexander", help="Alexander polynomial and torsion")
    p.add_argument("knot", help=knot_help)
    p.set_defaults(func=cmd_alexander)

    p = sub.add_parser("twisted", help="twisted Alexander torsion")
    p.add_argument("knot", help=knot_help)
    p.add_argument("--rep", required=True, help="representation JSON file")
    p.add_argument("--numeric", action="store_true", help="sampled complex evaluation")
    p.add_argument("--samples", type=int, default=64)
    p.add_argument("--column", type=int, default=None, help="0-based deleted column block")
    p.set_defaults(func=cmd_twisted)

    p = sub.add_parser("repsearch", help="search SL(2,F_p) representations")
    p.add_argument("knot", help=knot_help)
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--budget", type=int, default=50)
    p.add_argument("--out", default="reps", help="output directory")
    p.set_defaults(func=cmd_repsearch)

    p = sub.add_parser("l2", help="L2-Alexander torsion as a max-product function")
    p.add_argument("knot", help=knot_help)
    p.add_argument("--homomorphism", choices=("abelianization", "full"), default="abelianization")
    p.add_argument("--plot", help="write t<TAB>f(t) samples to this file")
    p.add_argument("--tmax", type=float, default=10.0)
    p.add_argument("--points", type=int, default=200)
    p.set_defaults(func=cmd_l2)

    p = sub.add_parser("check", help="run a check suite over a knot table")
    p.add_argument("table", help="table JSON file, or 'bundled'")
    p.add_argument("--suite", choices=SUITES, default="all")
    p.add_argument("--prime", type=int, default=5, choices=SEARCH_PRIMES)
    p.add_argument("--budget", type=int, default=10)
    p.add_argument("--pairs", type=int, default=20)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--failures-only", action="store_true")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("cache", help="inspect or clear the invariant cache")
    p.add_argument("action", choices=("show", "clear"))
    p.set_defaults(func=cmd_cache)
    return ap


def main(argv=None, out=None):
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (PresentationError, TableError, RepresentationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
