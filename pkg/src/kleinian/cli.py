"""Command-line driver.

    kleinian verify E8
    kleinian verify D 5 --c 1/3 --format json
    kleinian verify all --seed 1
    kleinian probe A3 "(1+X)*X"
    kleinian export diagram E8 --format dot

Exit codes: 0 pass, 1 failed check or I/O error, 2 bad arguments or a
degenerate D-type parameter.
"""

from __future__ import annotations

import argparse
import json
import sys

from .dynkin import affine_diagram, match_profile
from .expr import ExpressionError
from .groups import build_group, parse_label
from .mckay import verify_mckay
from .pipeline import (
    DEFAULT_C,
    all_targets,
    distinguished_profile,
    format_number,
    parse_c,
    verify,
    verify_many,
)
from .probes import ProbeError, probe
from .resolution.type_d import DegenerateParameter, degenerate_check

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(ValueError):
    pass


def _target(text: str, r: int | None, flag_r: int | None) -> tuple[str, int]:
    r = flag_r if flag_r is not None else r
    if r is not None and text.upper() in ("A", "D", "E"):
        text = f"{text}{r}"
    try:
        return parse_label(text)
    except ValueError as err:
        raise UsageError(str(err)) from None


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
        return
    try:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    except OSError as err:
        raise OSError(f"cannot write {out}: {err.strerror or err}") from err


def _c_for(kind: str, c_text):
    if kind != "D":
        if c_text is not None:
            raise UsageError("--c only applies to D-type groups")
        return None
    try:
        return parse_c(DEFAULT_C if c_text is None else c_text)
    except (ExpressionError, ValueError, ZeroDivisionError) as err:
        raise UsageError(f"cannot read c: {err}") from None


# -- commands ----------------------------------------------------------------


def cmd_verify(args) -> int:
    if args.target.lower() == "all":
        reports = verify_many(all_targets(args.seed), workers=args.jobs)
    else:
        kind, r = _target(args.target, args.r, args.r_flag)
        c = _c_for(kind, args.c)
        try:
            reports = [verify(kind, r, c)]
        except DegenerateParameter as err:
            print(f"degenerate parameter: {err}", file=sys.stderr)
            return EXIT_USAGE
    ok = all(rep.ok for rep in reports)
    if args.format == "json":
        body = [rep.to_dict() for rep in reports]
        text = json.dumps(body if len(body) > 1 else body[0], indent=2)
    else:
        text = "\n".join(rep.render(timings=not args.no_timings) for rep in reports)
        if len(reports) > 1:
            passed = sum(rep.ok for rep in reports)
            text += f"\n{passed}/{len(reports)} targets pass"
    _emit(text, args.out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_probe(args) -> int:
    kind, r = _target(args.target, None, args.r_flag)
    try:
        v = probe(kind, r, args.candidate)
    except (ProbeError, ExpressionError) as err:
        print(f"probe error: {err}", file=sys.stderr)
        return EXIT_USAGE
    if args.format == "json":
        body = {
            "kind": kind,
            "r": r,
            "candidate": v.candidate,
            "accepted": v.accepted,
            "reason": v.match.reason,
            "same_profile_as_f": v.same_profile_as_f,
            "unit_multiple_of_f": v.unit_multiple_of_f,
            "recovered_c": None if v.recovered_c is None else format_number(v.recovered_c),
            "notes": v.notes,
            "profile": v.profile.to_dict(v.match.to_dict()),
        }
        _emit(json.dumps(body, indent=2), args.out)
    else:
        _emit(v.summary(), args.out)
    return EXIT_OK


def cmd_export(args) -> int:
    kind, r = _target(args.label, None, args.r_flag)
    D = affine_diagram(kind, r)
    if args.what == "diagram":
        text = D.to_dot() if args.format == "dot" else json.dumps(D.to_dict(), indent=2)
    elif args.what == "profile":
        c = _c_for(kind, args.c)
        if c is not None:
            v = degenerate_check(c, r)
            if not v:
                print(f"degenerate parameter: c = {format_number(c)}: {v.reason}", file=sys.stderr)
                return EXIT_USAGE
        prof = distinguished_profile(kind, r, c)
        match = match_profile(prof, D)
        title = f"{kind}{r}" if c is None else f"{kind}{r} c={format_number(c)}"
        text = prof.to_dot(title) if args.format == "dot" else prof.to_json(match.to_dict())
    else:
        rep = verify_mckay(build_group(kind, r), D)
        if args.format == "dot":
            text = rep.graph.to_dot(f"mckay {kind}{r}")
        else:
            body = rep.graph.to_dict()
            body["diagram_match"] = rep.match.to_dict()
            text = json.dumps(body, indent=2)
    _emit(text, args.out)
    return EXIT_OK


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="kleinian", description="Kleinian singularities: resolution divisors and affine diagrams")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run the verification pipeline")
    v.add_argument("target", help="group label (E8, D5, A 3) or 'all'")
    v.add_argument("r", nargs="?", type=int, help="rank, when the kind is given alone")
    v.add_argument("--r", dest="r_flag", type=int)
    v.add_argument("--c", help="D-type parameter, e.g. 1/3 or zeta(8)^3")
    v.add_argument("--seed", type=int, default=0, help="seed for sampled c in 'verify all'")
    v.add_argument("--format", choices=("text", "json"), default="text")
    v.add_argument("--out")
    v.add_argument("--jobs", type=int, default=None, help="worker processes for 'verify all'")
    v.add_argument("--no-timings", action="store_true", help="omit timings (byte-stable text)")
    v.set_defaults(func=cmd_verify)

    pr = sub.add_parser("probe", help="test a candidate function in X, Y, Z")
    pr.add_argument("target")
    pr.add_argument("candidate")
    pr.add_argument("--r", dest="r_flag", type=int)
    pr.add_argument("--format", choices=("text", "json"), default="text")
    pr.add_argument("--out")
    pr.set_defaults(func=cmd_probe)

    ex = sub.add_parser("export", help="write a diagram, divisor profile or McKay graph")
    ex.add_argument("what", choices=("diagram", "profile", "mckay"))
    ex.add_argument("label")
    ex.add_argument("--r", dest="r_flag", type=int)
    ex.add_argument("--c")
    ex.add_argument("--format", choices=("dot", "json"), default="json")
    ex.add_argument("--out")
    ex.set_defaults(func=cmd_export)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
