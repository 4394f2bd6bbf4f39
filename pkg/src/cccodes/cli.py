"""Command-line interface: verify, develop, bound, search, build, spectrum,
table, and design subcommands.

Exit codes: 0 success/verified, 1 verification failure, 2 usage or data error.
Output is deterministic for fixed inputs.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import bounds, catalog, dataio, pipelines, search
from .core import (Composition, Gdc, gdc_type, read_code_text, verify_code,
                   verify_gdc, write_code_text)
from .designs import (DifferenceMatrix, Gdd, Pbd, RoomFrame, build_dm,
                      build_td, read_design_text, search_skew_room_frame,
                      verify_dm, verify_gdd, verify_pbd,
                      verify_skew_room_frame, write_design_text)
from .group_action import develop, parse_manifest


class CliError(Exception):
    pass


def _comp(text: str) -> Composition:
    try:
        return Composition.parse(text)
    except Exception as e:
        raise CliError(f"bad composition {text!r}: {e}") from None


def _read_text(path: str) -> str:
    p = Path(path)
    if not p.exists():
        for sub in ("manifests", "recipes", "designs", "codes"):
            candidate = dataio.data_root() / sub / path
            if candidate.exists():
                p = candidate
                break
        else:
            raise CliError(f"no such file: {path}")
    return p.read_text()


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_verify(args) -> int:
    text = _read_text(args.file)
    if args.file.endswith(".man") or "[orbits]" in text:
        m = parse_manifest(text, name=args.file)
        obj = develop(m)
        rep = verify_gdc(obj, m.expected_type, m.expected_size)
    else:
        obj = read_code_text(text)
        rep = verify_gdc(obj) if isinstance(obj, Gdc) else verify_code(obj)
    if isinstance(obj, Gdc):
        head = f"type {gdc_type(obj)} size {len(obj)}"
    else:
        head = f"n {obj.n} size {len(obj)}"
    if rep.ok:
        print(f"{head} OK")
        return 0
    print(f"{head} FAIL")
    for v in rep.violations:
        print(f"  {v}")
    return 1


def cmd_develop(args) -> int:
    m = parse_manifest(_read_text(args.manifest), name=args.manifest)
    g = develop(m)
    rep = verify_gdc(g, m.expected_type, m.expected_size)
    if not rep.ok:
        print(f"developed but verification failed: {rep.summary()}")
        return 1
    _emit(write_code_text(g), args.emit)
    if args.emit:
        print(f"type {gdc_type(g)} size {len(g)} OK -> {args.emit}")
    return 0


def cmd_bound(args) -> int:
    comp = _comp(args.comp)
    rows = []
    if args.method in ("u", "all"):
        rows.append(("U", bounds.upper_bound(args.n, comp)))
    if args.method in ("johnson", "all"):
        rows.append(("johnson", bounds.johnson_bound(args.n, 6, comp)))
    if args.method in ("per-position", "all"):
        if comp.weights == (3, 1):
            rows.append(("per-position", bounds.per_position_bound_31(args.n)))
        elif args.method == "per-position":
            raise CliError("per-position bound is defined for composition 3,1")
    for name, b in rows:
        caveat = f" ({b.caveat})" if b.caveat else ""
        print(f"{name}: {b.value} [{b.provenance}]{caveat}")
    return 0


def cmd_search(args) -> int:
    comp = _comp(args.comp)
    budget = search.SearchBudget(seconds=args.budget_seconds,
                                 nodes=args.budget_nodes)
    out = search.max_code(args.n, args.d, comp, budget)
    print(f"{out.status} {out.size} nodes={out.nodes} elapsed={out.elapsed:.2f}s")
    if args.emit:
        Path(args.emit).write_text(write_code_text(out.witness))
    return 0


def cmd_build(args) -> int:
    if args.pipeline:
        obj = pipelines.run_pipeline_text(
            _read_text(args.pipeline),
            build_code=lambda n, c: catalog.build_optimal(n, c))
        if isinstance(obj, Gdc):
            print(f"type {gdc_type(obj)} size {len(obj)} OK")
        else:
            print(f"n {obj.n} size {len(obj)} OK")
        if args.emit:
            Path(args.emit).write_text(write_code_text(obj))
        return 0
    if args.n is None:
        raise CliError("build needs <n> or --pipeline")
    comp = _comp(args.comp)
    code = catalog.build_optimal(args.n, comp)
    print(f"n {code.n} size {len(code)} OK")
    if args.emit:
        Path(args.emit).write_text(write_code_text(code))
    return 0


def cmd_spectrum(args) -> int:
    comp = _comp(args.comp)
    e = catalog.spectrum(args.n, comp)
    if e.kind == "exact":
        print(f"A({e.n}, 6, [{e.composition}]) = {e.exact}  [{e.source}]")
    else:
        word = "range" if e.kind == "range" else "open"
        print(f"A({e.n}, 6, [{e.composition}]) in [{e.lo}, {e.hi}]  "
              f"({word}) [{e.source}]")
    return 0


def cmd_table(args) -> int:
    try:
        lo_s, hi_s = args.range.split("..")
        lo, hi = int(lo_s), int(hi_s)
    except ValueError:
        raise CliError(f"bad range {args.range!r}; want e.g. 4..10") from None
    comps = [_comp(args.comp)] if args.comp else [Composition((2, 2)),
                                                  Composition((3, 1))]
    ns = list(range(lo, hi + 1))

    def cell(e) -> str:
        return str(e.exact) if e.kind == "exact" else f"{e.lo}..{e.hi}"

    if args.format == "csv":
        print("composition," + ",".join(str(n) for n in ns))
        for comp in comps:
            row = [cell(catalog.spectrum(n, comp)) for n in ns]
            print(f"[{comp}]," + ",".join(row))
    elif args.format == "md":
        print("| n | " + " | ".join(str(n) for n in ns) + " |")
        print("|---" * (len(ns) + 1) + "|")
        for comp in comps:
            row = [cell(catalog.spectrum(n, comp)) for n in ns]
            print(f"| A(n,[{comp}]) | " + " | ".join(row) + " |")
    else:
        print("n".ljust(12) + " ".join(str(n).rjust(6) for n in ns))
        for comp in comps:
            row = [cell(catalog.spectrum(n, comp)).rjust(6) for n in ns]
            print(f"A(n,[{comp}])".ljust(12) + " ".join(row))
    return 0


def cmd_design(args) -> int:
    if args.action == "verify":
        obj = read_design_text(_read_text(args.args[0]))
        if isinstance(obj, Gdd):
            rep = verify_gdd(obj)
        elif isinstance(obj, Pbd):
            rep = verify_pbd(obj)
        elif isinstance(obj, DifferenceMatrix):
            rep = verify_dm(obj)
        elif isinstance(obj, RoomFrame):
            rep = verify_skew_room_frame(obj)
        else:
            raise CliError("unknown design kind")
        print("OK" if rep.ok else f"FAIL {rep.summary()}")
        return 0 if rep.ok else 1
    # build
    what = args.args[0] if args.args else ""
    if what == "td":
        obj = build_td(int(args.args[1]), int(args.args[2]))
    elif what == "dm":
        obj = build_dm(int(args.args[1]))
    elif what == "srf":
        sizes = [int(args.args[1])] * int(args.args[2])
        found = search_skew_room_frame(sizes)
        if found is None:
            print("none (search space exhausted)")
            return 1
        obj = found
    else:
        raise CliError("design build wants: td <k> <m> | dm <g> | srf <t> <u>")
    if args.emit:
        Path(args.emit).write_text(write_design_text(obj))
        print(f"OK -> {args.emit}")
    else:
        sys.stdout.write(write_design_text(obj))
    return 0


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="ccc",
        description="Ternary constant-composition codes of weight 4, distance 6")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=int, default=1,
                        help="accepted for interface compatibility; execution "
                             "is single-threaded and results never depend on it")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=lambda **kw:
                           argparse.ArgumentParser(parents=[common], **kw))

    s = sub.add_parser("verify", help="verify a manifest or code file")
    s.add_argument("file")
    s.set_defaults(fn=cmd_verify)

    s = sub.add_parser("develop", help="develop a manifest into a code file")
    s.add_argument("manifest")
    s.add_argument("--emit")
    s.set_defaults(fn=cmd_develop)

    s = sub.add_parser("bound", help="upper bounds")
    s.add_argument("n", type=int)
    s.add_argument("--comp", required=True)
    s.add_argument("--method", default="all",
                   choices=["u", "johnson", "per-position", "all"])
    s.set_defaults(fn=cmd_bound)

    s = sub.add_parser("search", help="exact maximum-code search")
    s.add_argument("n", type=int)
    s.add_argument("--comp", required=True)
    s.add_argument("--d", type=int, default=6)
    s.add_argument("--budget-seconds", type=float, default=None)
    s.add_argument("--budget-nodes", type=int, default=None)
    s.add_argument("--emit")
    s.set_defaults(fn=cmd_search)

    s = sub.add_parser("build", help="build a cataloged optimal code")
    s.add_argument("n", type=int, nargs="?")
    s.add_argument("--comp", default="2,2")
    s.add_argument("--pipeline")
    s.add_argument("--emit")
    s.set_defaults(fn=cmd_build)

    s = sub.add_parser("spectrum", help="maximum-size classification at n")
    s.add_argument("n", type=int)
    s.add_argument("--comp", required=True)
    s.set_defaults(fn=cmd_spectrum)

    s = sub.add_parser("table", help="spectrum table over a range")
    s.add_argument("range")
    s.add_argument("--comp")
    s.add_argument("--format", default="text", choices=["text", "csv", "md"])
    s.set_defaults(fn=cmd_table)

    s = sub.add_parser("design", help="verify or build ingredient designs")
    s.add_argument("action", choices=["verify", "build"])
    s.add_argument("args", nargs="*")
    s.add_argument("--emit")
    s.set_defaults(fn=cmd_design)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except CliError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
