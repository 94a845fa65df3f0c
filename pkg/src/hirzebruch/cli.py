"""Command-line front end.

Subcommands: exceptional, exists, hn, dlp, delta, kronecker, reduce, grid.
All numeric arguments are exact rationals ("p/q" or integer literals;
floating-point input is rejected).  Exit codes: 0 success, 2 invalid input,
3 precondition violated, 4 cache error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import dlp as dlp_mod
from . import exceptional as exc_mod
from . import existence, kronecker, reduction
from .lattice import (
    ChernCharacter,
    DivisorClass,
    IntegralityError,
    format_rational,
    parse_rational,
)
from .prioritary import BogomolovViolation

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_PRECONDITION = 3
EXIT_CACHE = 4


class InputError(ValueError):
    pass


def _parse_char(text: str) -> ChernCharacter:
    parts = text.split(",")
    if len(parts) != 4:
        raise InputError("character must be r,a,b,ch2 (got %r)" % text)
    r = int(parts[0])
    a, b = int(parts[1]), int(parts[2])
    return ChernCharacter(r, DivisorClass(a, b), parse_rational(parts[3]))


def _parse_slope(text: str) -> DivisorClass:
    parts = text.split(",")
    if len(parts) != 2:
        raise InputError("slope must be aNum/aDen,bNum/bDen (got %r)" % text)
    return DivisorClass(parse_rational(parts[0]), parse_rational(parts[1]))


def char_obj(v: ChernCharacter) -> dict:
    return {
        "r": v.r,
        "c1": [int(v.c1.a), int(v.c1.b)],
        "ch2": format_rational(v.ch2),
    }


def char_from_obj(obj: dict) -> ChernCharacter:
    return ChernCharacter(
        int(obj["r"]),
        DivisorClass(obj["c1"][0], obj["c1"][1]),
        parse_rational(obj["ch2"]),
    )


def hn_obj(dec) -> dict:
    return {
        "e": dec.e,
        "m": format_rational(dec.m),
        "factors": [char_obj(f) for f in dec.factors],
    }


def cert_obj(cert, trace=None) -> dict:
    out = {
        "verdict": cert.verdict,
        "wall": cert.wall,
        "hn": hn_obj(cert.hn) if cert.hn is not None else None,
    }
    if trace is not None:
        out["trace"] = [
            {"e_from": a, "e_to": b, "m_from": format_rational(c), "m_to": format_rational(d)}
            for (a, b, c, d) in trace.steps
        ]
    return out


def emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True) + "\n")


def _cache_path(args) -> str:
    if getattr(args, "cache", None):
        return args.cache
    return os.environ.get("HIRZ_CACHE", "")


def _load_or_build_table(e: int, rmax: int, cache: str):
    base = None
    if cache and os.path.exists(cache):
        try:
            base = exc_mod.load_table(cache, e)
        except exc_mod.CacheError as err:
            sys.stderr.write("warning: %s; rebuilding\n" % err)
            base = None
    table = exc_mod.build_table(e, rmax, base=base)
    if cache:
        exc_mod.save_table(table, cache)
    return table


# ---------------------------------------------------------------------------
# subcommands

def cmd_exceptional(args) -> int:
    e, rmax = args.e, args.max_rank
    if e >= 2:
        sys.stderr.write(
            "notice: e=%d reduces to F_%d; printing the table for F_%d\n" % (e, e % 2, e % 2)
        )
        e = e % 2
    table = _load_or_build_table(e, rmax, _cache_path(args))
    for rec in table.records:
        if rec.r > rmax:
            continue
        sys.stdout.write(exc_mod.record_to_json(rec, table.e) + "\n")
    return EXIT_OK


def cmd_exists(args) -> int:
    v = _parse_char(args.char)
    if args.e >= 2 and not args.direct:
        cert, trace = reduction.reduce_decision(v, args.e, args.m)
        emit(cert_obj(cert, trace))
    else:
        cert = existence.moduli_nonempty(v, args.m, args.e)
        emit(cert_obj(cert))
    return EXIT_OK


def cmd_hn(args) -> int:
    v = _parse_char(args.char)
    dec = existence.hn_generic(v, args.m, args.e)
    if dec is None:
        emit({"verdict": existence.NO_PRIORITARY, "hn": None})
    else:
        emit({"verdict": "OK", "hn": hn_obj(dec)})
    return EXIT_OK


def cmd_dlp(args) -> int:
    nu = _parse_slope(args.nu)
    if args.below_rank <= 2:
        val = dlp_mod.dlp_line_bundles(nu, args.m, args.e) if args.below_rank == 2 else dlp_mod.DlpValue(None)
    else:
        table = _load_or_build_table(args.e, args.below_rank - 1, _cache_path(args))
        val = dlp_mod.dlp_below_rank(nu, args.m, args.e, args.below_rank, table)
    emit(
        {
            "value": format_rational(val.value, infinity="-inf") if val.value is not None else "-inf",
            "witness": list(val.witness) if val.witness else None,
            "equal_slope": val.equal_slope,
        }
    )
    return EXIT_OK


def cmd_delta(args) -> int:
    nu = _parse_slope(args.nu)
    table = None
    if args.max_rank > 1:
        table = _load_or_build_table(args.e, args.max_rank - 1, _cache_path(args))
    br = existence.delta_estimate(nu, args.m, args.e, args.max_rank, table)
    emit(
        {
            "nu": [format_rational(nu.a), format_rational(nu.b)],
            "m": format_rational(br.m),
            "rank_cutoff": br.rank_cutoff,
            "lower": format_rational(br.lower),
            "upper": format_rational(br.upper) if br.upper is not None else "unknown",
            "witness": char_obj(br.witness) if br.witness is not None else None,
            "wall": br.wall,
        }
    )
    return EXIT_OK


def cmd_kronecker(args) -> int:
    ell = args.ell
    a, b, c, d = (int(t) for t in args.abcd.split(","))
    p = kronecker.KroneckerParams(args.e, ell, a, b, c, d)
    p.require_admissible()
    k_char, l_char, v_char = kronecker.kronecker_characters(p)
    m_v = kronecker.wall_m_v(p)
    eps = kronecker.wall_crossing_epsilon(p)
    out = {
        "k": char_obj(k_char),
        "l": char_obj(l_char),
        "v": char_obj(v_char),
        "m_wall": format_rational(m_v),
        "m_l": format_rational(kronecker.wall_m_l(p)),
        "epsilon": format_rational(eps),
        "delta_closed_form": format_rational(
            kronecker.delta_closed_form(v_char.nu(), m_v, p.e, ell)
        ),
    }
    emit(out)
    return EXIT_OK


def cmd_reduce(args) -> int:
    v = _parse_char(args.char)
    cert, trace = reduction.reduce_decision(v, args.e, args.m)
    obj = cert_obj(cert, trace)
    obj["final_character"] = char_obj(trace.final_character)
    emit(obj)
    return EXIT_OK


def cmd_grid(args) -> int:
    parts = [parse_rational(t) for t in args.square.split(",")]
    if len(parts) != 4:
        raise InputError("square must be eps0,eps1,phi0,phi1")
    table = None
    if args.below_rank > 2:
        table = _load_or_build_table(args.e, args.below_rank - 1, _cache_path(args))
    eps_vals, phi_vals, rows = dlp_mod.dlp_grid(
        args.e, args.m, tuple(parts), args.steps, args.below_rank, table, jobs=args.jobs
    )
    if args.format == "csv":
        sys.stdout.write("eps,phi,delta\n")
        for i, ev in enumerate(eps_vals):
            for j, pv in enumerate(phi_vals):
                val = rows[i][j]
                sys.stdout.write(
                    "%s,%s,%s\n"
                    % (
                        format_rational(ev),
                        format_rational(pv),
                        format_rational(val) if val is not None else "-inf",
                    )
                )
    else:
        emit(
            {
                "eps": [format_rational(t) for t in eps_vals],
                "phi": [format_rational(t) for t in phi_vals],
                "values": [
                    [format_rational(v) if v is not None else "-inf" for v in row]
                    for row in rows
                ],
            }
        )
    return EXIT_OK


# ---------------------------------------------------------------------------

def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as err:
        raise argparse.ArgumentTypeError(str(err))


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="hirz",
        description="Exact decision procedures for moduli of sheaves on Hirzebruch surfaces.",
    )
    top.add_argument("--jobs", type=int, default=1, help="worker threads for grids/tables")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("exceptional", help="enumerate exceptional bundles with stability intervals")
    p.add_argument("--e", type=int, required=True)
    p.add_argument("--max-rank", type=int, required=True)
    p.add_argument("--cache", help="JSONL cache path (env HIRZ_CACHE also honored)")
    p.set_defaults(func=cmd_exceptional)

    p = sub.add_parser("exists", help="decide nonemptiness of the semistable moduli space")
    p.add_argument("--e", type=int, required=True)
    p.add_argument("--char", required=True, help="r,a,b,ch2")
    p.add_argument("--m", type=_rational, required=True)
    p.add_argument("--direct", action="store_true", help="run the direct engine even for e >= 2")
    p.set_defaults(func=cmd_exists)

    p = sub.add_parser("hn", help="generic Harder-Narasimhan filtration")
    p.add_argument("--e", type=int, required=True)
    p.add_argument("--char", required=True, help="r,a,b,ch2")
    p.add_argument("--m", type=_rational, required=True)
    p.set_defaults(func=cmd_hn)

    p = sub.add_parser("dlp", help="rank-bounded Drezet-Le Potier value at a slope")
    p.add_argument("--e", type=int, required=True)
    p.add_argument("--nu", required=True, help="slope a,b with rational entries")
    p.add_argument("--m", type=_rational, required=True)
    p.add_argument("--below-rank", type=int, required=True)
    p.add_argument("--cache")
    p.set_defaults(func=cmd_dlp)

    p = sub.add_parser("delta", help="bracket the sharp Bogomolov threshold")
    p.add_argument("--e", type=int, required=True)
    p.add_argument("--nu", required=True)
    p.add_argument("--m", type=_rational, required=True)
    p.add_argument("--max-rank", type=int, required=True)
    p.add_argument("--cache")
    p.set_defaults(func=cmd_delta)

    p = sub.add_parser("kronecker", help="orthogonal Kronecker pair: characters, wall, threshold")
    p.add_argument("--e", type=int, required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--abcd", required=True, help="a,b,c,d positive integers")
    p.set_defaults(func=cmd_kronecker)

    p = sub.add_parser("reduce", help="decide on F_e (e >= 2) through the reduction map")
    p.add_argument("--e", type=int, required=True)
    p.add_argument("--char", required=True)
    p.add_argument("--m", type=_rational, required=True)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("grid", help="emit a DLP value grid over a slope square")
    p.add_argument("--e", type=int, required=True)
    p.add_argument("--m", type=_rational, required=True)
    p.add_argument("--square", required=True, help="eps0,eps1,phi0,phi1")
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--below-rank", type=int, required=True)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--cache")
    p.set_defaults(func=cmd_grid)

    return top


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except exc_mod.CacheError as err:
        sys.stderr.write("cache error: %s\n" % err)
        return EXIT_CACHE
    except (BogomolovViolation, kronecker.KroneckerDomainError) as err:
        sys.stderr.write("precondition violated: %s\n" % err)
        return EXIT_PRECONDITION
    except (InputError, IntegralityError, ValueError) as err:
        sys.stderr.write("invalid input: %s\n" % err)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
