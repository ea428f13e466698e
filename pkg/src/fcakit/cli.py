"""The `fca` command: every operation as a subcommand with stable text/JSON
output, plus the HTTP service launcher.  Exit codes: 0 success, 1 domain
error, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import concepts as co
from . import contexts as cx
from . import implications as im
from . import lattices as la
from . import relations as re
from .errors import FcaError
from .exploration import ExplorationSession


def _read_text(path: str) -> str:
    p = Path(path)
    if not p.is_file():
        print(f"fca: no such file: {path}", file=sys.stderr)
        raise SystemExit(2)
    return p.read_text(encoding="utf-8")


def _load_context(path: str) -> cx.Context:
    text = _read_text(path)
    if path.endswith(".csv"):
        return cx.read_csv_context(text)
    return cx.read_burmeister(text)


def _load_many_valued(path: str) -> cx.ManyValuedContext:
    return cx.read_csv_many_valued(_read_text(path))


def _write_out(text: str, out: str | None) -> None:
    if out and out != "-":
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _print_implications(imps: im.ImplicationSet, attributes) -> None:
    for imp in imps:
        print(im.format_implication(imp, attributes))


def cmd_relation(args) -> int:
    rel = re.read_relation(_read_text(args.file))
    if args.op == "props":
        for name, flag in re.check_properties(rel).flags().items():
            print(f"{name}={'true' if flag else 'false'}")
    elif args.op == "closure":
        sys.stdout.write(re.write_relation(re.transitive_closure(rel, reflexive=args.reflexive)))
    elif args.op == "invert":
        sys.stdout.write(re.write_relation(re.inverse(rel)))
    elif args.op == "classes":
        for block in re.equivalence_classes(rel).blocks:
            print(" ".join(str(i) for i in sorted(block)))
    return 0


def cmd_lattice_check(args) -> int:
    poset = re.Poset(re.read_relation(_read_text(args.file)))
    lat = la.lattice_from_poset(poset)
    report = la.verify_axioms(lat)
    print(f"lattice with {lat.size} elements, bottom={lat.bottom}, top={lat.top}")
    print(f"axioms={'ok' if report.ok else 'violated'} checks={report.checks}")
    for line in report.violations:
        print(f"  {line}")
    dist = la.is_distributive(lat)
    mod = la.is_modular(lat)
    print(f"distributive={'true' if dist.holds else 'false'}"
          + (f" witness={dist.sublattice_witness}" if dist.sublattice_witness else ""))
    print(f"modular={'true' if mod.holds else 'false'}"
          + (f" witness={mod.sublattice_witness}" if mod.sublattice_witness else ""))
    return 0


def cmd_concepts(args) -> int:
    ctx = _load_context(args.file)
    found = co.iter_concepts(ctx, args.strategy, stream=args.stream, presort=args.presort)
    if args.format == "tsv":
        for c in found:
            ext, intt = c.names(ctx)
            print(",".join(ext) + "\t" + ",".join(intt))
    else:
        payload = [{"extent": list(c.names(ctx)[0]), "intent": list(c.names(ctx)[1])}
                   for c in found]
        print(json.dumps({"concepts": payload}, indent=2, sort_keys=True))
    return 0


def cmd_lattice(args) -> int:
    ctx = _load_context(args.file)
    lat = co.concept_lattice(ctx)
    _write_out(co.to_dot(lat, args.labels), args.dot)
    return 0


def cmd_basis(args) -> int:
    ctx = _load_context(args.file)
    _print_implications(im.duquenne_guigues(ctx, args.variant), ctx.attributes)
    return 0


def cmd_direct_basis(args) -> int:
    ctx = _load_context(args.file)
    _print_implications(im.proper_premises(ctx), ctx.attributes)
    return 0


def cmd_close(args) -> int:
    ctx = _load_context(args.file)
    imps = im.parse_implications(_read_text(args.basis), ctx.attributes)
    start = ctx.attribute_indices(n for n in args.set.split(",") if n)
    closed = im.simp_closure(start, imps)
    print(",".join(ctx.attribute_names(closed)))
    return 0


def cmd_clarify(args) -> int:
    ctx = _load_context(args.file)
    out, obj_merge, attr_merge = cx.clarify(ctx)
    for rep, merged in sorted(obj_merge.items()):
        if len(merged) > 1:
            print(f"objects merged into {ctx.objects[rep]}: "
                  + ",".join(ctx.objects[g] for g in merged), file=sys.stderr)
    for rep, merged in sorted(attr_merge.items()):
        if len(merged) > 1:
            print(f"attributes merged into {ctx.attributes[rep]}: "
                  + ",".join(ctx.attributes[m] for m in merged), file=sys.stderr)
    _write_out(cx.write_burmeister(out), args.out)
    return 0


def cmd_reduce(args) -> int:
    ctx = _load_context(args.file)
    out, removed_attrs = cx.reduce_attributes(ctx)
    out, removed_objs = cx.reduce_objects(out)
    if removed_attrs:
        print("removed attributes: " + ",".join(removed_attrs), file=sys.stderr)
    if removed_objs:
        print("removed objects: " + ",".join(removed_objs), file=sys.stderr)
    _write_out(cx.write_burmeister(out), args.out)
    return 0


def cmd_scale(args) -> int:
    mv = _load_many_valued(args.file)
    _write_out(cx.write_burmeister(cx.scale(mv, args.method)), args.out)
    return 0


def cmd_kn(args) -> int:
    mv = _load_many_valued(args.file)
    _write_out(cx.write_burmeister(cx.build_kn(mv)), args.out)
    return 0


def cmd_kw(args) -> int:
    ctx = _load_context(args.file)
    _write_out(cx.write_csv_many_valued(cx.build_kw(ctx)), args.out)
    return 0


def cmd_bench(args) -> int:
    ctx = _load_context(args.file)
    runs = [co.measure_delay(ctx, args.strategy).as_dict() for _ in range(args.repeat)]
    print(json.dumps({"file": args.file, "repeat": args.repeat, "runs": runs},
                     indent=2, sort_keys=True))
    return 0


def cmd_explore(args) -> int:
    ctx = _load_context(args.file)
    session = ExplorationSession(ctx.attributes, ctx)
    print(f"exploring {len(ctx.attributes)} attributes "
          f"from {len(ctx.objects)} example objects", file=sys.stderr)
    while not session.finished:
        imp = session.pending_implication()
        left = ",".join(ctx.attribute_names(imp.premise)) or "{}"
        right = ",".join(ctx.attribute_names(imp.display_conclusion()))
        print(f"Does every object with {{{left}}} also have {{{right}}}? [a]ccept / [r]eject / [q]uit")
        try:
            answer = input("> ").strip().lower()
        except EOFError:
            answer = "q"
        if answer in ("a", "accept"):
            session.accept()
        elif answer in ("r", "reject"):
            try:
                name = input("counterexample object name> ").strip()
                attrs = input("its attributes (comma-separated)> ").strip()
            except EOFError:
                break
            try:
                session.reject(name, [t for t in attrs.split(",") if t])
            except FcaError as e:
                print(f"rejected: {e}", file=sys.stderr)
        elif answer in ("q", "quit"):
            break
    print("accepted implications:")
    for imp in session.accepted_set():
        print("  " + im.format_implication(imp, session.attributes))
    print(f"examples: {len(session.examples.objects)} objects; status: {session.status}")
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(state_dir=args.state_dir, ui_dir=args.ui_dir)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fca", description="Formal concept analysis toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("relation", help="binary relation operations on a matrix file")
    p.add_argument("file")
    p.add_argument("--op", required=True, choices=["props", "closure", "invert", "classes"])
    p.add_argument("--reflexive", action="store_true", help="reflexive-transitive closure")
    p.set_defaults(fn=cmd_relation)

    p = sub.add_parser("lattice-check", help="check a poset file for lattice structure")
    p.add_argument("file")
    p.set_defaults(fn=cmd_lattice_check)

    p = sub.add_parser("concepts", help="enumerate all formal concepts")
    p.add_argument("file")
    p.add_argument("--strategy", default="auto", choices=["auto", "bottom-up", "top-down"])
    p.add_argument("--stream", action="store_true", help="emit concepts on backtrack")
    p.add_argument("--presort", action="store_true",
                   help="cardinality-sort the enumeration axis first (same set, different order)")
    p.add_argument("--format", default="tsv", choices=["json", "tsv"])
    p.set_defaults(fn=cmd_concepts)

    p = sub.add_parser("lattice", help="concept lattice as a DOT diagram")
    p.add_argument("file")
    p.add_argument("--dot", default="-", help="output path, '-' for stdout")
    p.add_argument("--labels", default="reduced", choices=["full", "reduced"])
    p.set_defaults(fn=cmd_lattice)

    p = sub.add_parser("basis", help="Duquenne-Guigues implication basis")
    p.add_argument("file")
    p.add_argument("--variant", default="optimized", choices=["plain", "optimized"])
    p.set_defaults(fn=cmd_basis)

    p = sub.add_parser("direct-basis", help="canonical direct basis from proper premises")
    p.add_argument("file")
    p.set_defaults(fn=cmd_direct_basis)

    p = sub.add_parser("close", help="close an attribute set under an implication file")
    p.add_argument("file")
    p.add_argument("--set", required=True, help="comma-separated attribute names")
    p.add_argument("--basis", required=True, help="implication file, one 'a b -> c d' per line")
    p.set_defaults(fn=cmd_close)

    p = sub.add_parser("clarify", help="remove duplicate rows and columns")
    p.add_argument("file")
    p.add_argument("-o", "--out", default="-")
    p.set_defaults(fn=cmd_clarify)

    p = sub.add_parser("reduce", help="remove reducible attributes and objects")
    p.add_argument("file")
    p.add_argument("-o", "--out", default="-")
    p.set_defaults(fn=cmd_reduce)

    p = sub.add_parser("scale", help="scale a many-valued CSV context to binary")
    p.add_argument("file")
    p.add_argument("--method", default="nominal", choices=["nominal", "interordinal"])
    p.add_argument("-o", "--out", default="-")
    p.set_defaults(fn=cmd_scale)

    p = sub.add_parser("kn", help="pair context whose implications are the input's functional dependencies")
    p.add_argument("file")
    p.add_argument("-o", "--out", default="-")
    p.set_defaults(fn=cmd_kn)

    p = sub.add_parser("kw", help="many-valued context whose functional dependencies are the input's implications")
    p.add_argument("file")
    p.add_argument("-o", "--out", default="-")
    p.set_defaults(fn=cmd_kw)

    p = sub.add_parser("bench", help="enumeration delay statistics as JSON")
    p.add_argument("file")
    p.add_argument("--repeat", type=int, default=1)
    p.add_argument("--strategy", default="auto", choices=["auto", "bottom-up", "top-down"])
    p.set_defaults(fn=cmd_bench)

    p = sub.add_parser("explore", help="interactive attribute exploration from a seed context")
    p.add_argument("file")
    p.set_defaults(fn=cmd_explore)

    p = sub.add_parser("serve", help="run the HTTP session service and web UI")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8711)
    p.add_argument("--state-dir", default=None, help="directory for session event logs")
    p.add_argument("--ui-dir", default=None, help="directory of built web UI assets")
    p.set_defaults(fn=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.fn(args)
    except FcaError as e:
        print(f"fca: {e}", file=sys.stderr)
        return 1
    except BrokenPipeError:
        return 0
    except SystemExit as e:
        return int(e.code or 0)


if __name__ == "__main__":
    sys.exit(main())
