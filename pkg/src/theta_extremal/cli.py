"""Command-line entry point: ``theta-extremal <command> ...``.

Every command prints one report (JSON unless noted) to stdout. Exit status is
0 on success, 1 when a verification or a proof stage fails and 2 on usage
errors. ``THETA_EXTREMAL_THREADS`` caps the worker pool used for list-valued
``--q`` arguments.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from . import __version__
from .detect import DEFAULT_BUDGET, detect_theta, verify_embedding
from .errors import (
    EmbeddingError,
    InvalidEdge,
    InvalidVertex,
    NotPrimePower,
    ParseError,
    PreconditionError,
    RangeError,
    SizeLimit,
    SpecError,
)
from .extremal import ex_exhaustive, ex_search_lower, scaling_report
from .geometry import (
    build_incidence_graph,
    freeness_certificate,
    verify_c8_direction_pattern,
    write_vertex_table,
)
from .graph import BipartitionTag, LEFT, RIGHT, bfs_layers, degree_stats
from .graph6 import encode_graph6, load_graph, save_graph
from .pipeline import run_prop31
from .proof import (
    AlmostTreeCert,
    classify_strong_thick,
    compute_bad_sets,
    embed_theta_from_thick,
    extract_disjoint_stars,
    greedy_embed_tree,
    grow_regular_tree,
    is_tree_embedding,
    peel_to_min_degree,
    regularize_degrees,
    thick_bound,
    validate_regular_tree,
)
from .theta import build_theta, k_star, parse_spec, upper_bound_exponent

# anything else that rejects the arguments (bad anchors, non-bipartite hosts, ...)
USAGE_ERRORS = (SpecError, ParseError, NotPrimePower, SizeLimit, InvalidEdge, InvalidVertex, OSError, ValueError, argparse.ArgumentTypeError)
STAGE_ERRORS = (PreconditionError, RangeError, EmbeddingError)


class Failure(Exception):
    """Carries a report whose command failed verification (exit 1)."""

    def __init__(self, result):
        self.result = result


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("THETA_EXTREMAL_THREADS", "1")))
    except ValueError:
        return 1


def _map(fn, items):
    items = list(items)
    workers = min(_threads(), len(items)) or 1
    if workers == 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(workers) as pool:
        return list(pool.map(fn, items))


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _spec(text: str):
    try:
        return parse_spec(text)
    except SpecError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive(text: str) -> int:
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


# ---- command handlers: each returns the result payload -----------------------


def cmd_theta_build(a):
    tg = build_theta(a.spec)
    if a.out:
        save_graph(tg.graph, a.out)
    return {
        "spec": str(a.spec),
        "vertices": tg.graph.vertex_count,
        "edges": tg.graph.edge_count,
        "poles": list(tg.poles),
        "paths": [list(p) for p in tg.paths],
        "graph6": encode_graph6(tg.graph),
    }


def cmd_theta_kstar(a):
    return {"spec": str(a.spec), "k_star": k_star(a.spec), "exponent": str(upper_bound_exponent(a.spec))}


def _text_kstar(res):
    return f"k*={res['k_star']}, exponent={res['exponent']}\n"


def cmd_detect(a):
    g = load_graph(a.input)
    res = detect_theta(g, a.spec, a.mode, a.budget, a.backend)
    out = res.to_json()
    out["verified"] = all(verify_embedding(g, a.spec, e) for e in res.embeddings)
    out["free"] = res.is_free
    return out


def cmd_construct(a):
    ig = build_incidence_graph(a.q)
    if a.out:
        save_graph(ig.graph, a.out)
    if a.table:
        with open(a.table, "w", newline="") as fh:
            fh.write(write_vertex_table(ig))
    st = degree_stats(ig.graph)
    return {
        "q": a.q,
        "points": ig.point_count,
        "lines": ig.graph.vertex_count - ig.point_count,
        "vertices": ig.graph.vertex_count,
        "edges": ig.graph.edge_count,
        "min_degree": st.min,
        "max_degree": st.max,
        "modulus": list(ig.field.modulus) if ig.field.modulus else None,
    }


def cmd_verify_c8(a):
    ig = build_incidence_graph(a.q)
    if a.sample is not None:
        rep = verify_c8_direction_pattern(ig, "sample", seed=a.seed, count=a.sample)
    else:
        rep = verify_c8_direction_pattern(ig, "exhaustive")
    out = rep.to_json()
    if not rep.ok:
        raise Failure(out)
    return out


def cmd_verify_free(a):
    reports = _map(lambda q: freeness_certificate(q, a.budget, a.backend), a.q)
    out = reports[0] if len(reports) == 1 else {"certificates": reports}
    if any(r["verdict"] == "copy found" for r in reports):
        raise Failure(out)
    return out


def cmd_lemma_core(a):
    g = load_graph(a.input)
    view = peel_to_min_degree(g, a.ell)
    return {
        "ell": a.ell,
        "vertices": list(view.vertices()),
        "edges": view.edge_count,
        "min_degree": view.min_degree(),
        "empty": view.is_empty(),
    }


def _side(text: str) -> int:
    t = text.lower()
    if t in ("left", "l", "0"):
        return LEFT
    if t in ("right", "r", "1"):
        return RIGHT
    raise argparse.ArgumentTypeError("side must be left or right")


def cmd_lemma_embed_tree(a):
    g = load_graph(a.input)
    tree = load_graph(a.tree)
    anchor, sides = None, None
    if a.anchor:
        t, side = a.anchor.split(":")
        anchor = (int(t), _side(side))
        sides = BipartitionTag.from_coloring(g)
    image = greedy_embed_tree(g, tree, anchor, sides)
    return {"image": list(image), "verified": is_tree_embedding(g, tree, image)}


def cmd_lemma_stars(a):
    g = load_graph(a.input)
    if a.centers is not None:
        centers = a.centers
        pool = [v for v in g.vertices() if v not in set(centers)]
    else:
        tag = BipartitionTag.from_coloring(g)
        centers, pool = tag.part(LEFT), tag.part(RIGHT)
    stars = extract_disjoint_stars(g, centers, pool, a.d, a.C)
    return {"d": a.d, "C": a.C, "count": len(stars), "stars": [{"center": s.center, "leaves": list(s.leaves)} for s in stars]}


def cmd_lemma_regularize(a):
    g = load_graph(a.input)
    view, rep = regularize_degrees(g, a.ratio)
    return {"vertices": list(view.vertices()), **rep.to_json()}


def cmd_lemma_grow_tree(a):
    g = load_graph(a.input)
    lg = bfs_layers(g, a.root)
    cert = grow_regular_tree(lg, a.d, a.s, a.C0, a.C1)
    ok, why = validate_regular_tree(g, cert)
    return {"certificate": cert.to_json(), "valid": ok, "violation": why.to_json() if why else None}


def cmd_lemma_badsets(a):
    g = load_graph(a.input)
    bad = compute_bad_sets(bfs_layers(g, a.root), a.s, a.theta_top, a.theta_inner)
    return bad.to_json()


def _almost_tree(a):
    g = load_graph(a.input)
    cert = AlmostTreeCert(bfs_layers(g, a.root), a.d, a.s + 1)
    ok, why = cert.validate()
    if not ok:
        raise PreconditionError(f"input is not a regular almost-tree of type ({a.d}, {a.s + 1}): {why.reason}")
    return cert


def cmd_lemma_classify(a):
    cert = _almost_tree(a)
    labels = classify_strong_thick(cert, a.spec, a.s)
    return {**labels.to_json(), "thick_count": len(labels.thick), "bound": thick_bound(a.spec, a.d, a.s)}


def cmd_lemma_embed_thick(a):
    cert = _almost_tree(a)
    labels = classify_strong_thick(cert, a.spec, a.s)
    emb = embed_theta_from_thick(cert, a.spec, a.s, labels, a.budget)
    return {"embedding": emb.to_json(), "verified": verify_embedding(cert.graph, a.spec, emb)}


def cmd_extremal_exact(a):
    return ex_exhaustive(a.n, a.spec).to_json()


def cmd_extremal_search(a):
    res = ex_search_lower(a.n, a.spec, a.budget, a.seed)
    if a.out:
        save_graph(res.witness, a.out)
    return res.to_json()


def cmd_extremal_scaling(a):
    rows = []
    for part in _map(lambda q: scaling_report(a.spec, [q]), a.q):
        rows.extend(part)
    return {"rows": [r.to_json() for r in rows]}


def _csv_scaling(res):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["q", "n", "edges", "bound", "ratio"])
    for r in res["rows"]:
        w.writerow([r["q"], r["n"], r["edges"], r["bound"], r["ratio"]])
    return buf.getvalue()


def cmd_pipeline_prop31(a):
    g = load_graph(a.input)
    rep = run_prop31(g, a.spec, a.theta_top, a.theta_inner, a.C0, a.C1, a.root, a.s)
    out = rep.to_json()
    if not rep.ok:
        raise Failure(out)
    return out


# ---- report schemas -----------------------------------------------------------

_INT = {"type": "integer"}
_STR = {"type": "string"}
_BOOL = {"type": "boolean"}
_INTS = {"type": "array", "items": _INT}
_EMB = {
    "type": ["object", "null"],
    "properties": {"poles": _INTS, "paths": {"type": "array", "items": _INTS}},
}


_ERROR = {
    "type": "object",
    "properties": {"error": {"type": "string"}, "message": {"type": "string"}},
    "required": ["error", "message"],
}


def _obj(props, required=None):
    return {"type": "object", "properties": props, "required": sorted(props if required is None else required)}


_FREE = _obj(
    {"q": _INT, "spec": _STR, "vertices": _INT, "edges": _INT, "verdict": _STR, "status": _STR,
     "expansions": _INT, "budget": _INT, "embedding": _EMB, "embedding_valid": _BOOL},
    ["q", "spec", "vertices", "edges", "verdict", "status", "expansions", "budget"],
)


RESULT_SCHEMAS = {
    "theta build": _obj({"spec": _STR, "vertices": _INT, "edges": _INT, "poles": _INTS,
                         "paths": {"type": "array", "items": _INTS}, "graph6": _STR}),
    "theta kstar": _obj({"spec": _STR, "k_star": _INT, "exponent": _STR}),
    "detect": _obj({"status": {"enum": ["found", "exhausted", "budget"]}, "mode": _STR, "expansions": _INT,
                    "count": _INT, "verified": _BOOL, "free": _BOOL, "embedding": _EMB,
                    "embeddings": {"type": "array", "items": _EMB}},
                   ["status", "mode", "expansions", "count", "verified", "free"]),
    "construct": _obj({"q": _INT, "points": _INT, "lines": _INT, "vertices": _INT, "edges": _INT,
                       "min_degree": _INT, "max_degree": _INT, "modulus": {"type": ["array", "null"]}}),
    "verify c8": _obj({"q": _INT, "mode": _STR, "cycles_checked": _INT, "violations": _INT,
                       "violating_cycles": {"type": "array"}, "starts": _INT, "seed": _INT},
                      ["q", "mode", "cycles_checked", "violations", "violating_cycles"]),
    "verify free": {"anyOf": [_FREE, _obj({"certificates": {"type": "array", "items": _FREE}})]},
    "lemma core": _obj({"ell": _INT, "vertices": _INTS, "edges": _INT, "min_degree": _INT, "empty": _BOOL}),
    "lemma embed-tree": _obj({"image": _INTS, "verified": _BOOL}),
    "lemma stars": _obj({"d": _INT, "C": _INT, "count": _INT, "stars": {"type": "array"}}),
    "lemma regularize": _obj({"vertices": _INTS, "retained": _STR, "edges": _INT, "min_degree": _INT,
                              "max_degree": _INT, "source": _STR}),
    "lemma grow-tree": _obj({"certificate": {"type": "object"}, "valid": _BOOL,
                             "violation": {"type": ["object", "null"]}}),
    "lemma badsets": _obj({"s": _INT, "theta_top": _INT, "theta_inner": _INT, "sizes": {"type": "object"},
                           "sets": {"type": "object"}}),
    "lemma classify": _obj({"strong": _INTS, "thick": _INTS, "thin_count": _INT, "witnesses": {"type": "object"},
                            "thick_count": _INT, "bound": _INT}),
    "lemma embed-thick": _obj({"embedding": _EMB, "verified": _BOOL}),
    "extremal exact": _obj({"n": _INT, "spec": _STR, "max_edges": _INT, "method": _STR, "witness_graph6": _STR,
                            "classes": {"type": ["integer", "null"]}}),
    "extremal search": _obj({"n": _INT, "spec": _STR, "max_edges": _INT, "method": _STR, "witness_graph6": _STR,
                             "seed": _INT, "budget": _INT}),
    "extremal scaling": _obj({"rows": {"type": "array", "items": _obj(
        {"q": _INT, "n": _INT, "edges": _INT, "bound": _INT, "ratio": _STR})}}),
    "pipeline prop31": _obj({"ok": _BOOL, "failed_stage": {"type": ["string", "null"]},
                             "stages": {"type": "array"}, "embedding": _EMB}),
}


def report_schema(command: str) -> dict:
    return {
        "$schema": "https://json-schema.org/draft/2020-12/schema",
        "title": f"theta-extremal {command} report",
        "type": "object",
        "properties": {
            "tool": {"const": "theta-extremal"},
            "version": _STR,
            "command": {"const": command},
            "config": {"type": "object"},
            "ok": _BOOL,
            "result": {"anyOf": [RESULT_SCHEMAS[command], _ERROR]},
        },
        "required": ["tool", "version", "command", "config", "ok", "result"],
    }


# ---- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="theta-extremal", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def leaf(parent, name, handler, help, fmt=("json",)):
        sp = parent.add_parser(name, help=help, description=help)
        sp.set_defaults(handler=handler, formats=fmt)
        sp.add_argument("--format", choices=fmt, default=fmt[0], help="report format (default %(default)s)")
        return sp

    def group(name, help):
        g = sub.add_parser(name, help=help, description=help)
        return g.add_subparsers(dest="sub", required=True)

    th = group("theta", "theta graph specifications")
    sp = leaf(th, "build", cmd_theta_build, "build the theta graph of a spec")
    sp.add_argument("--spec", type=_spec, required=True, help="path lengths, e.g. 3,5,5")
    sp.add_argument("--out", help="write the graph (.g6 or edge list)")
    sp = leaf(th, "kstar", cmd_theta_kstar, "k* and the upper-bound exponent", ("text", "json"))
    sp.add_argument("--spec", type=_spec, required=True)

    sp = leaf(sub, "detect", cmd_detect, "search a host graph for a theta copy")
    sp.add_argument("--input", required=True, help="host graph (.g6 or edge list)")
    sp.add_argument("--spec", type=_spec, required=True)
    sp.add_argument("--mode", choices=["first", "count", "all"], default="first")
    sp.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET, help="node expansion limit")
    sp.add_argument("--backend", choices=["cython", "python"], default=None)

    sp = leaf(sub, "construct", cmd_construct, "build the moment-curve incidence graph G(q)")
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--out", help="write the graph (.g6 or edge list)")
    sp.add_argument("--table", help="write the vertex table CSV")

    ver = group("verify", "verify properties of G(q)")
    sp = leaf(ver, "c8", cmd_verify_c8, "check the direction pattern of every 8-cycle")
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--sample", type=_positive, help="sample this many start points instead")
    sp.add_argument("--seed", type=int, default=0)
    sp = leaf(ver, "free", cmd_verify_free, "certify that G(q) has no theta(3,5,5)")
    sp.add_argument("--q", type=_int_list, required=True, help="one or more q, comma separated")
    sp.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET)
    sp.add_argument("--backend", choices=["cython", "python"], default=None)

    lem = group("lemma", "run one extraction or embedding lemma")
    sp = leaf(lem, "core", cmd_lemma_core, "peel to minimum degree ell")
    sp.add_argument("--input", required=True)
    sp.add_argument("--ell", type=int, required=True)
    sp = leaf(lem, "embed-tree", cmd_lemma_embed_tree, "greedy tree embedding")
    sp.add_argument("--input", required=True)
    sp.add_argument("--tree", required=True, help="tree graph file")
    sp.add_argument("--anchor", help="tree_vertex:left|right (host must be bipartite)")
    sp = leaf(lem, "stars", cmd_lemma_stars, "disjoint stars from one side of a bipartite graph")
    sp.add_argument("--input", required=True)
    sp.add_argument("--centers", type=_int_list, help="centre vertices (default: the side of vertex 0)")
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--C", type=int, required=True)
    sp = leaf(lem, "regularize", cmd_lemma_regularize, "subgraph with bounded degree ratio")
    sp.add_argument("--input", required=True)
    sp.add_argument("--ratio", type=int, default=2)
    sp = leaf(lem, "grow-tree", cmd_lemma_grow_tree, "grow a regular tree by one layer")
    for flag in ("--d", "--s", "--C0", "--C1"):
        sp.add_argument(flag, type=int, required=True)
    sp = leaf(lem, "badsets", cmd_lemma_badsets, "bad sets of a layered host")
    sp.add_argument("--s", type=int, required=True)
    sp.add_argument("--theta-top", type=int, required=True)
    sp.add_argument("--theta-inner", type=int, required=True)
    for name, handler, help in (
        ("classify", cmd_lemma_classify, "strong/thick labels of an almost-tree"),
        ("embed-thick", cmd_lemma_embed_thick, "theta copy from too many thick vertices"),
    ):
        sp = leaf(lem, name, handler, help)
        sp.add_argument("--spec", type=_spec, required=True)
        sp.add_argument("--d", type=int, required=True)
        sp.add_argument("--s", type=int, required=True)
        if name == "embed-thick":
            sp.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET)
    for name in ("grow-tree", "badsets", "classify", "embed-thick"):
        lp = lem.choices[name]
        lp.add_argument("--input", required=True)
        lp.add_argument("--root", type=int, default=0)

    ext = group("extremal", "extremal numbers")
    sp = leaf(ext, "exact", cmd_extremal_exact, "exact ex(n, spec) for n <= 9")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--spec", type=_spec, required=True)
    sp = leaf(ext, "search", cmd_extremal_search, "certified lower bound by seeded search")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--spec", type=_spec, required=True)
    sp.add_argument("--budget", type=_positive, default=2000, help="number of moves")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out", help="write the witness graph")
    sp = leaf(ext, "scaling", cmd_extremal_scaling, "edge counts of G(q) against the bound", ("csv", "json"))
    sp.add_argument("--spec", type=_spec, default=parse_spec("3,5,5"))
    sp.add_argument("--q", type=_int_list, required=True)

    pip = group("pipeline", "scripted proof walkthroughs")
    sp = leaf(pip, "prop31", cmd_pipeline_prop31, "bad sets, tree growth, classification, embedding")
    sp.add_argument("--input", required=True)
    sp.add_argument("--spec", type=_spec, required=True)
    sp.add_argument("--theta-top", type=int, required=True)
    sp.add_argument("--theta-inner", type=int, required=True)
    sp.add_argument("--C0", type=int, default=1)
    sp.add_argument("--C1", type=int, default=None, help="default: vertex count of the theta graph")
    sp.add_argument("--root", type=int, default=0)
    sp.add_argument("--s", type=int, default=None, help="default: k1 + 1")

    sc = sub.add_parser("schema", help="print the JSON schema of a command's report")
    sc.add_argument("name", nargs="+", help="command, e.g. 'verify c8'")
    return p


def _command_name(args) -> str:
    sub = getattr(args, "sub", None)
    return f"{args.command} {sub}" if sub else args.command


def _config(args) -> dict:
    out = {}
    for k, v in sorted(vars(args).items()):
        if k in ("handler", "formats", "command", "sub"):
            continue
        out[k] = str(v) if hasattr(v, "lengths") else v
    return out


def _emit(command, args, result, ok):
    if "error" in result:
        pass
    elif args.format == "csv":
        return _csv_scaling(result)
    elif args.format == "text":
        return _text_kstar(result)
    report = {
        "tool": "theta-extremal",
        "version": __version__,
        "command": command,
        "config": _config(args),
        "ok": ok,
        "result": result,
    }
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command == "schema":
        name = " ".join(args.name)
        if name not in RESULT_SCHEMAS:
            print(f"theta-extremal: unknown command {name!r}", file=sys.stderr)
            return 2
        sys.stdout.write(json.dumps(report_schema(name), indent=2, sort_keys=True) + "\n")
        return 0
    command = _command_name(args)
    try:
        result = args.handler(args)
        code = 0
    except Failure as f:
        result, code = f.result, 1
    except STAGE_ERRORS as exc:
        result, code = {"error": type(exc).__name__, "message": str(exc)}, 1
    except USAGE_ERRORS as exc:
        print(f"theta-extremal {command}: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(_emit(command, args, result, code == 0))
    return code


if __name__ == "__main__":
    sys.exit(main())
