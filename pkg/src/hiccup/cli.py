"""Command-line interface: ``hiccup <command> ...``.

Exit status is 0 when every check passes, 1 when any fails and 2 on usage
errors.
"""
from __future__ import annotations

import argparse
import json
import sys
import warnings
from pathlib import Path

from .errors import HiccupError, NotApplicableError, ParameterError

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _params(text: str):
    from .sequences import HiccupParams

    try:
        return HiccupParams.parse(text)
    except ParameterError as exc:
        raise UsageError(f"--params {text!r}: {exc} (expected e.g. --params 1,1,3,2)") from None


def _emit(args, payload, text: str) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True, default=str))
    else:
        print(text)


def cmd_generate(args) -> int:
    from .catalog import write_bfile
    from .sequences import generate_hiccup

    if args.count < 1:
        raise UsageError("--count must be >= 1")
    p = _params(args.params)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        seq = generate_hiccup(p, args.count)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    if args.bfile:
        Path(args.bfile).write_text(write_bfile(seq), encoding="utf-8")
    _emit(args, {"params": str(p), "terms": seq}, " ".join(map(str, seq)))
    return EXIT_OK


def cmd_derive(args) -> int:
    p = _params(args.params)
    if args.what == "morphism":
        from .morphisms import hiccup_morphism

        form = hiccup_morphism(p)
        payload = {
            "params": str(p),
            "morphism": str(form.morphism),
            "seed": form.seed,
            "coding": None if form.coding.is_identity else str(form.coding),
            "shift": form.shift,
            "pure": form.pure,
        }
        _emit(args, payload, str(form.morphism))
        return EXIT_OK
    if args.what == "beatty":
        from .sturmian import format_beatty, hiccup_beatty

        try:
            bp = hiccup_beatty(p)
        except NotApplicableError as exc:
            _emit(args, {"params": str(p), "status": "NOT-APPLICABLE", "reason": str(exc)}, f"NOT-APPLICABLE: {exc}")
            return EXIT_FAIL
        formula = format_beatty(bp)
        text = formula + (f"  (n >= {bp.first_index})" if bp.first_index > 1 else "")
        _emit(args, {"params": str(p), "formula": formula, "first_index": bp.first_index}, text)
        return EXIT_OK
    from .morphisms import hiccup_morphism
    from .numeration import dumont_thomas

    form = hiccup_morphism(p)
    if not form.pure or len(form.seed) != 1:
        _emit(args, {"params": str(p), "status": "NOT-APPLICABLE"}, "NOT-APPLICABLE: no pure one-letter fixed point")
        return EXIT_FAIL
    ns = dumont_thomas(form.morphism, form.seed)
    payload = {
        "params": str(p),
        "morphism": str(form.morphism),
        "bases": ns.bases(8),
        "recurrence": list(ns.recurrence),
        "dot": ns.recognizer.to_dot(),
    }
    rec = " + ".join(f"{c}*B(n{f'-{i}' if i else ''})" for i, c in enumerate(ns.recurrence) if c) or "0"
    text = f"morphism: {form.morphism}\nbases: {', '.join(map(str, ns.bases(8)))}, ...\nB(n+1) = {rec}\n{ns.recognizer.to_dot()}"
    _emit(args, payload, text.rstrip())
    return EXIT_OK


def cmd_verify(args) -> int:
    from .catalog import find_entry, verify_all, verify_entry

    if args.horizon < 2:
        raise UsageError("--horizon must be >= 2")
    if args.all:
        reports = verify_all(args.horizon, jobs=args.jobs)
    else:
        try:
            entry = find_entry(args.entry)
        except ParameterError as exc:
            raise UsageError(str(exc)) from None
        reports = [verify_entry(entry, args.horizon)]
    ok = all(r.passed for r in reports)
    payload = {"horizon": args.horizon, "passed": ok, "reports": [r.to_dict() for r in reports]}
    lines = [r.summary() for r in reports]
    lines.append(f"{sum(r.passed for r in reports)}/{len(reports)} entries pass")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_infer(args) -> int:
    from .catalog import read_bfile
    from .sequences import infer_params

    try:
        text = Path(args.bfile).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {args.bfile}: {exc.strerror}") from None
    seq = read_bfile(text)
    found = infer_params(seq, args.jmax)
    _emit(args, {"candidates": [str(p) for p in found]}, "\n".join(map(str, found)) or "no hiccup parameters fit")
    return EXIT_OK if found else EXIT_FAIL


def cmd_conjecture(args) -> int:
    from .cfrac import check_bds_conjecture, check_wythoff_s1

    if args.which == "bds":
        if args.j < 1 or args.horizon < 1:
            raise UsageError("--j and --horizon must be >= 1")
        rep = check_bds_conjecture(args.j, args.horizon, args.precision)
        d = rep.to_dict()
        text = (
            f"j={rep.j} horizon={rep.horizon}: {d['status']}  agreements={rep.agreements}"
            f"  mismatches={rep.mismatches}  uncertain={rep.uncertain}"
            f"  min_positive_margin={rep.min_positive_margin:.3e}  runtime={d['runtime']}s"
        )
        _emit(args, d, text)
        return EXIT_OK if rep.passed else EXIT_FAIL
    rep = check_wythoff_s1(args.precision, args.horizon)
    d = rep.to_dict()
    text = (
        f"s1 = {rep.s1} (rounded {rep.s1_rounded}); 15th decimal truncated {rep.fifteenth_digit}\n"
        f"floor(s_n) = floor(n*phi) for n <= {rep.horizon}: {rep.agreements} agreements, "
        f"mismatches={rep.mismatches}  status={rep.status}"
    )
    _emit(args, d, text)
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_represent(args) -> int:
    from .numeration import a284753_system, represent
    from .sequences import HiccupParams, generate_hiccup

    ns = a284753_system()
    if args.n is not None:
        if args.n < 0:
            raise UsageError("--n must be >= 0")
        w = represent(ns, args.n)
        _emit(args, {"n": args.n, "representation": w}, w)
        return EXIT_OK
    if args.an < 1:
        raise UsageError("--an must be >= 1")
    a = generate_hiccup(HiccupParams(0, 2, 4, 2), args.an)[-1]
    w, wa = represent(ns, args.an), represent(ns, a)
    _emit(args, {"n": args.an, "a(n)": a, "rep(n)": w, "rep(a(n))": wa}, f"a({args.an}) = {a}: {w} -> {wa}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("text", "json"), default="text", help="output format")
    parser = argparse.ArgumentParser(prog="hiccup", description="Hiccup sequences and their characterizations.")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", parents=[fmt], help="terms of a hiccup sequence")
    g.add_argument("--params", required=True, help="j,x,y,z")
    g.add_argument("--count", type=int, required=True)
    g.add_argument("--bfile", help="also write the terms as an OEIS b-file")
    g.set_defaults(func=cmd_generate)

    d = sub.add_parser("derive", parents=[fmt], help="morphism, Beatty formula or numeration system")
    d.add_argument("--params", required=True)
    d.add_argument("--what", choices=("morphism", "beatty", "numeration"), required=True)
    d.set_defaults(func=cmd_derive)

    v = sub.add_parser("verify", parents=[fmt], help="cross-check catalog entries")
    which = v.add_mutually_exclusive_group(required=True)
    which.add_argument("--entry", help="OEIS id, e.g. A086377")
    which.add_argument("--all", action="store_true")
    v.add_argument("--horizon", type=int, default=10_000)
    v.add_argument("--jobs", type=int, default=1, help="worker processes for --all")
    v.set_defaults(func=cmd_verify)

    i = sub.add_parser("infer", parents=[fmt], help="hiccup parameters fitting a b-file")
    i.add_argument("--bfile", required=True)
    i.add_argument("--jmax", type=int, default=2)
    i.set_defaults(func=cmd_infer)

    c = sub.add_parser("conjecture", help="continued-fraction conjecture checks")
    csub = c.add_subparsers(dest="which", required=True)
    b = csub.add_parser("bds", parents=[fmt])
    b.add_argument("--j", type=int, required=True)
    b.add_argument("--horizon", type=int, default=1000)
    b.add_argument("--precision", type=int, default=30, help="decimal digits per remainder")
    b.set_defaults(func=cmd_conjecture)
    w = csub.add_parser("wythoff-s1", parents=[fmt])
    w.add_argument("--precision", type=int, default=20)
    w.add_argument("--horizon", type=int, default=1000)
    w.set_defaults(func=cmd_conjecture)

    r = sub.add_parser("represent", parents=[fmt], help="Dumont-Thomas representations for A284753")
    rw = r.add_mutually_exclusive_group(required=True)
    rw.add_argument("--n", type=int)
    rw.add_argument("--an", type=int)
    r.set_defaults(func=cmd_represent)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"hiccup: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ParameterError as exc:
        print(f"hiccup: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except HiccupError as exc:
        print(f"hiccup: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
