"""Command-line front end.

JSON results go to stdout and a one-line summary to stderr.  Exit codes:
0 success, 1 domain error (an obstruction blocks a requested construction,
or a checked labeling is invalid), 2 usage error (bad flags, unparsable
graph, group or labels file).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from . import constructions as C
from . import factors, families, spectra, structure
from .groups import GroupError, GroupSpec
from .multigraph import GraphError, Multigraph
from .solver import (Labeling, LabelingError, VerificationError, brute_force_oracle,
                     check_zero_sum, default_budget, solve)


class UsageError(Exception):
    pass


def _emit(obj: dict, summary: str) -> None:
    sys.stdout.write(json.dumps(obj, ensure_ascii=False) + "\n")
    sys.stderr.write(summary + "\n")


def _read_graph(path: str) -> Multigraph:
    try:
        return Multigraph.read(path)
    except OSError as exc:
        raise UsageError(f"cannot read graph file {path}: {exc.strerror}") from None
    except GraphError as exc:
        raise UsageError(f"cannot parse graph file {path}: {exc}") from None


def _parse_group(text: str) -> GroupSpec:
    try:
        return GroupSpec.parse(text)
    except GroupError as exc:
        raise UsageError(str(exc)) from None


def _write_dot(path: str | None, g: Multigraph, lab: Labeling | None) -> None:
    if path:
        Path(path).write_text(g.to_dot(None if lab is None else lab.assignment))


def _write_labels(path: str | None, lab: Labeling) -> None:
    if path:
        Path(path).write_text(lab.to_text())


# -- subcommands -------------------------------------------------------------

def cmd_solve(args) -> int:
    g = _read_graph(args.graph)
    group = _parse_group(args.group)
    if args.oracle:
        res = brute_force_oracle(g, group)
    else:
        res = solve(g, group, args.budget, seed=args.seed)
    if res.witness is not None:
        _write_labels(args.out, res.witness)
        _write_dot(args.dot, g, res.witness)
    _emit(res.to_json(), f"{group}: {res.status} ({res.nodes} nodes)")
    return 0


def cmd_check(args) -> int:
    g = _read_graph(args.graph)
    group = _parse_group(args.group)
    try:
        lab = Labeling.read(args.labels, group)
    except OSError as exc:
        raise UsageError(f"cannot read labels file {args.labels}: {exc.strerror}") from None
    except (LabelingError, GroupError) as exc:
        raise UsageError(f"cannot parse labels file {args.labels}: {exc}") from None
    report = check_zero_sum(g, lab)
    _write_dot(args.dot, g, lab)
    _emit(report.to_json(), "valid" if report else "invalid")
    return 0 if report else 1


def cmd_construct(args) -> int:
    g = _read_graph(args.graph)
    th = args.theorem
    target = g
    if th in ("rrr", "sss") and args.j is None:
        raise UsageError(f"--j is required for {th}")
    if th == "rrr":
        lab = C.construct_rrr(g, args.j)
    elif th == "sss":
        lab = C.construct_sss(g, args.j)
    elif th == "ppd":
        lab = C.construct_ppd(g)
    elif th == "ppp":
        lab = C.construct_ppp(g)
    elif th == "zzz":
        lab = C.construct_zzz(g)
    elif th == "z2k":
        lab = C.construct_z2k(g)
    else:
        lab = C.construct_fff(g)
        target = families.m2(g)
        if args.graph_out:
            Path(args.graph_out).write_text(target.to_text(comment="M_2 of " + args.graph))
    report = check_zero_sum(target, lab)
    _write_labels(args.out, lab)
    _write_dot(args.dot, target, lab)
    _emit({"theorem": th, "group": str(lab.group), "verified": report.valid,
           "vertices": target.num_vertices, "edges": target.num_edges,
           "labels": lab.to_text()},
          f"{th}: labeling over {lab.group} verified={report.valid}")
    return 0


def _edge_list(arg: str | None) -> list[int]:
    if not arg:
        return []
    try:
        return [int(x) for x in arg.split(",") if x]
    except ValueError:
        raise UsageError(f"expected comma-separated edge ids, got {arg!r}") from None


def cmd_factor(args) -> int:
    g = _read_graph(args.graph)
    out: dict = {}
    kind = args.kind
    if kind in ("matching", "all"):
        m = factors.perfect_matching(g, _edge_list(args.avoid))
        out["perfect_matching"] = None if m is None else sorted(m.edges)
    if kind in ("one-factor", "all") and args.edge is not None:
        m = factors.one_factor_containing(g, args.edge)
        out["one_factor"] = None if m is None else sorted(m.edges)
    if kind in ("two-factor", "all") and g.is_cubic():
        tf = factors.two_factor_containing(g, _edge_list(args.must))
        out["two_factor"] = None if tf is None else sorted(tf.edges)
    if kind in ("coloring", "all") and g.is_cubic():
        col = factors.three_edge_coloring(g)
        out["three_edge_coloring"] = None if col is None else [sorted(c) for c in col.classes]
        out["chromatic_index"] = 3 if col is not None else 4
    if kind == "one-factor" and args.edge is None:
        raise UsageError("--edge is required for one-factor")
    if kind in ("two-factor", "coloring") and not g.is_cubic():
        raise GraphError(f"{kind} needs a cubic graph")
    _emit(out, ", ".join(f"{k}={v}" if isinstance(v, int) else f"{k}={'none' if v is None else 'found'}"
                         for k, v in out.items()))
    return 0


def cmd_analyze(args) -> int:
    g = _read_graph(args.graph)
    out: dict = {
        "vertices": g.num_vertices, "edges": g.num_edges,
        "connected": g.is_connected(), "cubic": g.is_cubic(),
        "min_degree": g.min_degree() if g.num_vertices else 0,
        "max_degree": g.max_degree() if g.num_vertices else 0,
        "bridges": structure.find_bridges(g),
    }
    if g.num_vertices and g.is_connected():
        dec = structure.decompose(g)
        out["decomposition"] = dec.to_json()
        found = spectra.bridge_deletion_obstruction(g)
        out["bridge_deletion_obstruction"] = None if found is None else {"bridge": found[0], "kind": found[1]}
        if g.is_cubic():
            out["www_obstruction"] = spectra.www_obstruction(g)
            out["tttx_obstruction"] = spectra.tttx_obstruction(g)
            out["zzz_condition"] = C.zzz_condition(g) is None
            out["has_one_factor"] = factors.perfect_matching(g) is not None
            out["chromatic_index"] = factors.chromatic_index_cubic(g)
    _emit(out, f"{g.num_vertices} vertices, {g.num_edges} edges, {len(out['bridges'])} bridges")
    return 0


def cmd_spectrum(args) -> int:
    g = _read_graph(args.graph)
    rep = spectra.spectrum(g, tuple(args.j or [2]), args.kmax, args.budget)
    _emit(rep.to_json(), "zeta: " + ", ".join(
        f"j={j}:{r.kind}" + (f"={r.lo}" if r.kind == "exact" else
                             f"[{r.lo},{r.hi}]" if r.kind == "interval" else "")
        for j, r in sorted(rep.zeta.items())))
    return 0


def cmd_classify(args) -> int:
    g = _read_graph(args.graph)
    cls = spectra.classify_cubic(g, args.budget)
    _emit(cls.to_json(), f"category {cls.category}")
    return 0


def cmd_gen(args) -> int:
    what = args.what
    if what == "martini":
        g, note = families.martini(), "martini glass"
    elif what in ("m1", "m2"):
        if not args.base:
            raise UsageError(f"--base is required for {what}")
        base = _read_graph(args.base)
        g = families.m1(base) if what == "m1" else families.m2(base)
        note = f"{what.upper()} of {args.base}"
    else:
        if not args.name:
            raise UsageError("fixture name required")
        try:
            g = families.fixture(args.name).graph
        except families.FixtureError as exc:
            raise UsageError(str(exc)) from None
        note = f"fixture {args.name}"
    text = g.to_text(comment=note)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    sys.stderr.write(f"{note}: {g.num_vertices} vertices, {g.num_edges} edges\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="zsmagic", description="Zero-sum group-magic labelings of multigraphs.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="decide zero-sum magicness over a group")
    s.add_argument("--graph", required=True)
    s.add_argument("--group", required=True)
    s.add_argument("--budget", type=int, default=None)
    s.add_argument("--seed", type=int, default=None)
    s.add_argument("--oracle", action="store_true", help="use exhaustive enumeration")
    s.add_argument("--out", help="write the witness as a labels file")
    s.add_argument("--dot")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("check", help="verify a labels file")
    s.add_argument("--graph", required=True)
    s.add_argument("--group", required=True)
    s.add_argument("--labels", required=True)
    s.add_argument("--dot")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("construct", help="build a labeling from graph structure")
    s.add_argument("--graph", required=True, help="input graph (the base graph for fff)")
    s.add_argument("--theorem", required=True, choices=C.THEOREMS)
    s.add_argument("--j", type=int)
    s.add_argument("--out")
    s.add_argument("--graph-out", help="fff: write the generated M_2 graph")
    s.add_argument("--dot")
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("factor", help="matchings, 2-factors and 3-edge-colorings")
    s.add_argument("--graph", required=True)
    s.add_argument("--kind", default="all", choices=("matching", "one-factor", "two-factor", "coloring", "all"))
    s.add_argument("--avoid", help="comma-separated edge ids to avoid")
    s.add_argument("--must", help="comma-separated edge ids the 2-factor must contain")
    s.add_argument("--edge", type=int, help="edge the 1-factor must contain")
    s.set_defaults(func=cmd_factor)

    s = sub.add_parser("analyze", help="bridges, decomposition and obstructions")
    s.add_argument("--graph", required=True)
    s.set_defaults(func=cmd_analyze)

    s = sub.add_parser("spectrum", help="zim and zeta report")
    s.add_argument("--graph", required=True)
    s.add_argument("--j", type=int, action="append")
    s.add_argument("--kmax", type=int, default=4)
    s.add_argument("--budget", type=int, default=None)
    s.set_defaults(func=cmd_spectrum)

    s = sub.add_parser("classify", help="group classification of a cubic graph")
    s.add_argument("--graph", required=True)
    s.add_argument("--budget", type=int, default=None)
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("gen", help="emit a generated or fixture graph")
    s.add_argument("what", choices=("martini", "m1", "m2", "fixture"))
    s.add_argument("name", nargs="?")
    s.add_argument("--base")
    s.add_argument("--out")
    s.set_defaults(func=cmd_gen)
    return p


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "budget", None) is None and hasattr(args, "budget"):
        args.budget = default_budget()
    try:
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return 2
    except (C.ConstructionError, GraphError, GroupError, LabelingError) as exc:
        _emit({"error": str(exc)}, f"error: {exc}")
        return 1
    except (C.SearchInconclusive, VerificationError) as exc:
        _emit({"error": str(exc)}, f"error: {exc}")
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
