"""Command-line interface: ``tailstrata {strata,schedule,branches,smoothable,report}``.

Exit codes: 0 on success, 2 for usage errors, 3 for invalid input files.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings

from .branches import (
    blowup_schedule,
    branch_lattice_dot,
    enumerate_branches,
    meet,
    separation_stage,
    tail_count,
)
from .dualgraph import DualGraph, GraphError, maximal_contracted_subcurve, validate
from .smoothcheck import ConfigurationError, ParamTail, is_smoothable, tangent_verdict
from .strata import (
    EmptyMainLocusWarning,
    ModuliContext,
    all_strata,
    classify,
    enumerate_strata,
    main_dimension,
    stratum_record,
)

EXIT_INPUT = 3


class InputError(Exception):
    pass


def dumps(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _read_json(path: str):
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def _load_graph(data) -> DualGraph:
    if not isinstance(data, dict):
        raise InputError("graph JSON must be an object")
    try:
        g = DualGraph.from_dict(data)
    except GraphError as exc:
        raise InputError(str(exc)) from exc
    report = validate(g)
    if not report.ok:
        lines = [f"  [{i.code}] {i.message}" for i in report.issues()]
        raise InputError("graph fails validation:\n" + "\n".join(lines))
    return g


def _context(args, parser) -> ModuliContext:
    try:
        return ModuliContext(args.n, args.d, args.k)
    except ValueError as exc:
        parser.error(str(exc))


# -- rendering ---------------------------------------------------------------

def _fmt_mu(mu) -> str:
    return "(" + ",".join(map(str, mu)) + ")"


def _fmt_set(s) -> str:
    return "{" + ",".join(map(str, s)) + "}"


def _table(header, rows) -> str:
    cells = [list(map(str, header))] + [list(map(str, r)) for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    out = []
    for j, r in enumerate(cells):
        out.append("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())
        if j == 0:
            out.append("  ".join("-" * w for w in widths))
    return "\n".join(out) + "\n"


def _strata_rows(records):
    return [
        (r["m"], r["m_prime"], _fmt_mu(r["mu"]), _fmt_set(r["S"]), r["dim"],
         "yes" if r["dimension_obstructed"] else "no",
         "yes" if r["generically_in_main"] else "no")
        for r in records
    ]


STRATA_HEADER = ("m", "m'", "mu", "S", "dim", "obstructed", "in_main")


def _main_dim(ctx: ModuliContext) -> tuple:
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", EmptyMainLocusWarning)
        dim = main_dimension(ctx)
    return dim, [str(w.message) for w in caught]


# -- commands ----------------------------------------------------------------

def cmd_strata(args, parser) -> str:
    ctx = _context(args, parser)
    if args.m is not None and args.m < 1:
        parser.error("--m must be at least 1")
    strata = enumerate_strata(ctx, args.m) if args.m is not None else all_strata(ctx)
    records = [stratum_record(idx, ctx) for idx in strata]
    if args.format == "json":
        return dumps(records)
    dim, notes = _main_dim(ctx)
    head = f"M_1,{ctx.k}(P^{ctx.n}, {ctx.d}): main component dimension {dim}\n"
    head += "".join(f"warning: {w}\n" for w in notes)
    return head + _table(STRATA_HEADER, _strata_rows(records))


def schedule_records(ctx: ModuliContext, variant: str) -> list:
    sched = blowup_schedule(ctx, variant)
    return [
        {"m": st.m, "action": st.action, "noop": st.noop,
         "strata": [stratum_record(idx, ctx) for idx in st.strata]}
        for st in sched.stages
    ]


def cmd_schedule(args, parser) -> str:
    ctx = _context(args, parser)
    stages = schedule_records(ctx, args.variant)
    if args.format == "json":
        return dumps(stages)
    out = [f"blow-up schedule for M_1,{ctx.k}(P^{ctx.n}, {ctx.d}), variant {args.variant}\n"]
    for st in stages:
        out.append(f"stage {st['m']}: {st['action']}\n")
        if not st["strata"]:
            out.append("  (empty)\n")
        for r in st["strata"]:
            out.append(f"  m'={r['m_prime']} mu={_fmt_mu(r['mu'])} S={_fmt_set(r['S'])} dim={r['dim']}\n")
    return "".join(out)


def branch_report(g: DualGraph) -> dict:
    branches = enumerate_branches(g)
    maximal = maximal_contracted_subcurve(g)
    seps = []
    for i in range(len(branches)):
        for j in range(i + 1, len(branches)):
            a, b = branches[i], branches[j]
            seps.append({
                "branches": [i, j],
                "meet": list(meet(a, b).ids),
                "stage": separation_stage(g, a, b),
                "nested": a < b or b < a,
            })
    return {
        "branches": [{"vertices": list(b.ids), "tail_count": tail_count(g, b)} for b in branches],
        "maximal": list(maximal.ids) if maximal else None,
        "separations": seps,
    }


def cmd_branches(args, parser) -> str:
    g = _load_graph(_read_json(args.graph))
    if args.format == "dot":
        return branch_lattice_dot(g)
    rep = branch_report(g)
    if args.format == "json":
        return dumps(rep)
    out = [f"{len(rep['branches'])} branch(es)\n"]
    for i, b in enumerate(rep["branches"]):
        out.append(f"  [{i}] {_fmt_set(b['vertices'])}  tails={b['tail_count']}\n")
    if rep["separations"]:
        out.append("separation stages (tail count of the meet):\n")
    for s in rep["separations"]:
        i, j = s["branches"]
        tag = " (nested)" if s["nested"] else ""
        out.append(f"  [{i}] vs [{j}]: stage {s['stage']}{tag}\n")
    return "".join(out)


def load_smoothing_config(data):
    """Parse a smoothability config into (graph or None, {label: ParamTail})."""
    if not isinstance(data, dict):
        raise InputError("config JSON must be an object")
    graph = _load_graph(data["graph"]) if data.get("graph") is not None else None
    n = data.get("n", graph.n if graph else None)
    if not isinstance(n, int) or n < 1:
        raise InputError("config needs an integer n >= 1")
    if graph is not None and graph.n != n:
        raise InputError(f"config n={n} disagrees with graph n={graph.n}")
    tails = {}
    for entry in data.get("tails", []):
        label = str(entry.get("edge", len(tails)))
        if label in tails:
            raise InputError(f"edge {label!r} listed twice")
        coords = entry.get("coords")
        if not isinstance(coords, list) or len(coords) != n:
            raise InputError(f"tail {label!r} needs exactly n={n} coordinate polynomials")
        try:
            tails[label] = ParamTail(tuple(tuple(p) for p in coords))
        except (ConfigurationError, TypeError) as exc:
            raise InputError(f"tail {label!r}: {exc}") from exc
    return graph, tails


def cmd_smoothable(args, parser) -> str:
    graph, tails = load_smoothing_config(_read_json(args.config))
    try:
        if graph is not None:
            verdict = is_smoothable(graph, tails)
        else:
            if not tails:
                raise InputError("config without a graph needs at least one tail")
            verdict = tangent_verdict(list(tails.values()), list(tails))
    except ConfigurationError as exc:
        raise InputError(str(exc)) from exc
    if args.format == "json":
        return dumps(verdict.to_dict())
    v = verdict
    lines = [f"smoothable: {'yes' if v.smoothable else 'no'} (case {v.case})"]
    if v.rank is not None:
        lines.append(f"tangent rank {v.rank} with m = {v.m} nodes")
    lines.append(f"certificate: {v.certificate.get('kind')}")
    for key in ("relation", "pivot_coordinates", "minor"):
        if key in v.certificate:
            lines.append(f"  {key}: {json.dumps(v.certificate[key])}")
    return "\n".join(lines) + "\n"


# canned configurations for the plane-cubics dossier
CUBIC_MEETING_CONDITIONS = [
    ("one-tail", "cusp at the attachment point",
     [((0, 0, 1), (0, 0, 0, 1))],
     [((0, 1), (0, 0, 1))]),
    ("two-tail", "conic and line tangent",
     [((0, 1), (0, 0, 1)), ((0, 1), (0,))],
     [((0, 1), (0, 0, 1)), ((0,), (0, 1))]),
    ("three-tail", "three branches coplanar (automatic in P^2)",
     [((0, 1), (0,)), ((0,), (0, 1)), ((0, 1), (0, 1))],
     None),
]


def cubics_report() -> dict:
    ctx = ModuliContext(2, 3, 0)
    dim, _ = _main_dim(ctx)
    strata = []
    for idx in all_strata(ctx):
        rec = stratum_record(idx, ctx)
        rec["classification"] = classify(idx, ctx)
        strata.append(rec)
    conditions = []
    for name, condition, special, generic in CUBIC_MEETING_CONDITIONS:
        entry = {"locus": name, "condition": condition}
        entry["special"] = tangent_verdict([ParamTail(t) for t in special]).smoothable
        entry["generic"] = None if generic is None else tangent_verdict([ParamTail(t) for t in generic]).smoothable
        conditions.append(entry)
    return {
        "space": "M_1(P^2, 3)",
        "main_dimension": dim,
        "strata": strata,
        "schedule": schedule_records(ctx, "full"),
        "main_component_schedule": [
            {"m": st["m"], "action": st["action"], "noop": st["noop"]}
            for st in schedule_records(ctx, "main")
        ],
        "meeting_conditions": conditions,
    }


def cmd_report(args, parser) -> str:
    rep = cubics_report()
    if args.format == "json":
        return dumps(rep)
    out = [f"Plane cubics {rep['space']}\n", f"main component: dimension {rep['main_dimension']}\n\n"]
    out.append("components with a contracted elliptic curve:\n")
    for r in rep["strata"]:
        out.append(f"  {r['m']}-tail  mu={_fmt_mu(r['mu'])}  dim={r['dim']}  -> {r['classification']}\n")
    out.append("\nblow-up order (full space):\n")
    for st in rep["schedule"]:
        out.append(f"  stage {st['m']}: {st['action']}\n")
    out.append("on the main component:\n")
    for st in rep["main_component_schedule"]:
        out.append(f"  stage {st['m']}: {st['action']}\n")
    out.append("\nwhere the contracted-curve loci meet the main component:\n")
    for c in rep["meeting_conditions"]:
        gen = "n/a" if c["generic"] is None else ("smoothable" if c["generic"] else "not smoothable")
        sp = "smoothable" if c["special"] else "not smoothable"
        out.append(f"  {c['locus']}: {c['condition']}; example {sp}, generic {gen}\n")
    return "".join(out)


# -- argument parsing --------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tailstrata",
        description="Tail strata, branches and blow-up order for genus-1 stable maps to P^n.")
    sub = parser.add_subparsers(dest="command", required=True)

    def ctx_flags(p):
        p.add_argument("--n", type=int, required=True, help="target dimension")
        p.add_argument("--d", type=int, required=True, help="degree")
        p.add_argument("--k", type=int, default=0, help="number of marked points")

    def common(p, formats=("table", "json")):
        p.add_argument("--format", choices=formats, default="table")
        p.add_argument("--out", default=None, help="write output here instead of stdout")

    p = sub.add_parser("strata", help="components of the m-tail loci")
    ctx_flags(p)
    p.add_argument("--m", type=int, default=None, help="only this tail count")
    common(p)
    p.set_defaults(func=cmd_strata, subparser=p)

    p = sub.add_parser("schedule", help="ordered blow-up stages")
    ctx_flags(p)
    p.add_argument("--variant", choices=("full", "main"), default="full")
    common(p)
    p.set_defaults(func=cmd_schedule, subparser=p)

    p = sub.add_parser("branches", help="branch lattice of a dual graph")
    p.add_argument("graph", help="graph JSON file, or - for stdin")
    common(p, ("table", "json", "dot"))
    p.set_defaults(func=cmd_branches)

    p = sub.add_parser("smoothable", help="decide smoothability from tail parametrizations")
    p.add_argument("config", help="configuration JSON file, or - for stdin")
    common(p)
    p.set_defaults(func=cmd_smoothable)

    p = sub.add_parser("report", help="the plane-cubics analysis, computed from the engine")
    common(p)
    p.set_defaults(func=cmd_report)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text = args.func(args, getattr(args, "subparser", parser))
    except InputError as exc:
        print(f"tailstrata {args.command}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
