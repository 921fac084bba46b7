"""Command line front end.

Problem files are INI documents::

    [algebra]
    family = C
    rank = 10

    [orbit]
    partition = 6,6,4,4

    [setup]
    half_blocks = 4,1,3
    middle_core = 1,1,1,1
    # optional, one partition per half block separated by "|"
    gl_orbits = 1,1,1,1 | 1 | 1,1,1
    cover = universal

    [budgets]
    max_nodes = 1000000
    max_group = 1000000

A bare name such as ``ex17`` resolves to the fixture shipped with the package.
"""
from __future__ import annotations

import argparse
import configparser
import json
import sys
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Optional

from . import __version__
from .counting import COVERS, AnalysisReport, Setup, analyze, validate_setup
from .diagram import from_flag, k_basis, render
from .errors import NiltermError, ParseError, ValidationError
from .orbits import Partition, brute_collapse, partitions_of, x_collapse
from .rootsys import AlgebraFamily
from .twist import (DEFAULT_MAX_GROUP, DEFAULT_MAX_NODES, KMatrix, spanning_subgroup,
                    edge_generators, enumerate_chambers, k_action, twist_at, twist_map)


@dataclass(frozen=True)
class ProblemSpec:
    setup: Setup
    max_nodes: int = DEFAULT_MAX_NODES
    max_group: int = DEFAULT_MAX_GROUP


def _ints(text: str, field: str) -> tuple:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise ValidationError(f"expected a comma list of integers, got {text!r}", field) from None


def _get(cp, section: str, key: str, default=None) -> str:
    if not cp.has_section(section):
        if default is not None:
            return default
        raise ValidationError("missing section", section)
    if not cp.has_option(section, key):
        if default is not None:
            return default
        raise ValidationError("missing key", f"{section}.{key}")
    return cp.get(section, key)


def parse_problem(text: str, source: str = "<problem>") -> ProblemSpec:
    cp = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    try:
        cp.read_string(text, source=source)
    except configparser.Error as e:
        raise ParseError(f"{source}: {e}") from None
    family = _get(cp, "algebra", "family").strip().upper()
    try:
        rank = int(_get(cp, "algebra", "rank"))
    except ValueError:
        raise ValidationError("rank must be an integer", "algebra.rank") from None
    try:
        fam = AlgebraFamily(family, rank)
    except NiltermError as e:
        raise ValidationError(str(e), "algebra") from None
    orbit = Partition(_ints(_get(cp, "orbit", "partition"), "orbit.partition"))
    blocks = _ints(_get(cp, "setup", "half_blocks", ""), "setup.half_blocks")
    core = Partition(_ints(_get(cp, "setup", "middle_core", ""), "setup.middle_core"))
    raw = _get(cp, "setup", "gl_orbits", "").strip()
    gl = tuple(Partition(_ints(x, "setup.gl_orbits")) for x in raw.split("|")) if raw else ()
    cover = _get(cp, "setup", "cover", "universal").strip()
    if cover not in COVERS:
        raise ValidationError(f"unknown cover {cover!r}", "setup.cover")
    try:
        max_nodes = int(_get(cp, "budgets", "max_nodes", str(DEFAULT_MAX_NODES)))
        max_group = int(_get(cp, "budgets", "max_group", str(DEFAULT_MAX_GROUP)))
    except ValueError:
        raise ValidationError("budgets must be integers", "budgets") from None
    if any(b < 1 for b in blocks):
        raise ValidationError("half blocks must be positive", "setup.half_blocks")
    ambient = {"A": rank + 1, "B": 2 * rank + 1, "C": 2 * rank, "D": 2 * rank}[family]
    if orbit.size != ambient:
        raise ValidationError(f"partition sums to {orbit.size}, expected {ambient}",
                              "orbit.partition")
    spec = ProblemSpec(Setup(fam, orbit, blocks, core, gl, cover), max_nodes, max_group)
    try:
        validate_setup(spec.setup)
    except ValidationError:
        raise
    except NiltermError as e:
        raise ValidationError(str(e), "setup") from None
    return spec


def _csv(parts) -> str:
    return ",".join(str(x) for x in parts)


def emit_problem(spec: ProblemSpec) -> str:
    s = spec.setup
    lines = [
        "[algebra]", f"family = {s.family.family}", f"rank = {s.family.rank}", "",
        "[orbit]", f"partition = {_csv(s.orbit)}", "",
        "[setup]", f"half_blocks = {_csv(s.half_blocks)}",
        f"middle_core = {_csv(s.middle_core)}",
        f"gl_orbits = {' | '.join(_csv(q) for q in s.gl_orbits)}",
        f"cover = {s.cover}", "",
        "[budgets]", f"max_nodes = {spec.max_nodes}", f"max_group = {spec.max_group}", "",
    ]
    return "\n".join(lines)


def fixture_names() -> list:
    root = resources.files("nilterm") / "problems"
    return sorted(p.name[:-4] for p in root.iterdir() if p.name.endswith(".ini"))


def load_problem(ref: str) -> ProblemSpec:
    """Read a problem from a path, or from a shipped fixture by name."""
    path = Path(ref)
    for cand in (path, path.with_name(path.name + ".ini")):
        if cand.is_file():
            return parse_problem(cand.read_text(), str(cand))
    name = path.name[:-4] if path.name.endswith(".ini") else path.name
    res = resources.files("nilterm") / "problems" / f"{name}.ini"
    if res.is_file():
        return parse_problem(res.read_text(), f"{name}.ini")
    raise ParseError(f"no problem file {ref!r} (fixtures: {', '.join(fixture_names())})")


def _rows(m: KMatrix) -> list:
    return [list(r) for r in m.entries]


def _orders(d: dict) -> dict:
    return {str(k): v for k, v in sorted(d.items())}


def report_document(spec: ProblemSpec, r: AnalysisReport) -> dict:
    s = spec.setup
    return {
        "tool": "nilterm",
        "version": __version__,
        "problem": {
            "family": s.family.family,
            "rank": s.family.rank,
            "partition": list(s.orbit),
            "half_blocks": list(s.half_blocks),
            "middle_core": list(s.middle_core),
            "gl_orbits": [list(q) for q in s.gl_orbits],
            "cover": s.cover,
        },
        "report": {
            "chambers": r.s_l,
            "w_prime_order": r.w_prime,
            "classes": r.n_classes,
            "pi1_order": r.pi1,
            "aut_x": r.aut_x,
            "aut_core": r.aut_core,
            "w_x_order": r.w_x,
            "count_theorem13": r.count_thm13,
            "count_corollary10": r.count_cor10,
            "w_x_reflections": r.w_x_reflections,
            "w_x_element_orders": _orders(r.w_x_element_orders),
            "w_prime_element_orders": _orders(r.w_prime_element_orders),
        },
        "chain": [{"k": st.k, "q": list(st.q), "result": list(st.result), "type": st.kind,
                   "degree": st.degree} for st in r.chain],
        "walls": [{"generator": w.generator, "node": w.node, "marks": list(w.marks),
                   "beta": w.beta, "merge": w.merge_kind, "k_t": w.k_t, "type": w.kind,
                   "rho": list(w.value)} for w in r.walls],
        "generators": [_rows(m) for m in r.generators],
        "checks": [{"name": c.name, "expected": c.expected, "actual": c.actual,
                    "status": c.status} for c in r.checks],
    }


def _text_report(doc: dict) -> str:
    p, r = doc["problem"], doc["report"]
    out = [f"problem: {p['family']}{p['rank']} orbit {p['partition']} blocks {p['half_blocks']}"
           f" core {p['middle_core']} cover {p['cover']}", ""]
    names = [("chambers", "#S(L)"), ("w_prime_order", "|W'|"), ("classes", "N"),
             ("pi1_order", "|pi1(O)|"), ("aut_x", "|Aut(X/O)|"), ("aut_core", "|Aut(X'/O')|"),
             ("w_x_order", "|W_X|"), ("count_theorem13", "count (N*Aut/Aut')"),
             ("count_corollary10", "count (#S(L)/|W_X|)")]
    width = max(len(label) for _, label in names)
    out += [f"{label:<{width}}  {r[key]}" for key, label in names]
    out += ["", f"W_X: {r['w_x_reflections']} reflections, element orders "
            + ", ".join(f"{k}:{v}" for k, v in r["w_x_element_orders"].items()), "", "chain:"]
    for st in doc["chain"]:
        out.append(f"  k={st['k']} q={st['q']} -> {st['result']}  {st['type']}")
    out += ["", "walls (one per generator of W'):"]
    for w in doc["walls"]:
        kt = "" if w["k_t"] is None else f" k_t={w['k_t']}"
        out.append(f"  g{w['generator']}: node {w['node']} marks {w['marks']} beta={w['beta']}"
                   f" {w['merge']}{kt} {w['type']} rho={w['rho']}")
    out += ["", "checks:"]
    for c in doc["checks"]:
        out.append(f"  [{c['status']}] {c['name']}: expected {c['expected']}, got {c['actual']}")
    return "\n".join(out)


def _emit(doc, text: str, fmt: str) -> str:
    if fmt == "machine":
        return json.dumps(doc, indent=2, sort_keys=True)
    return text


def run_analyze(spec: ProblemSpec, fmt: str):
    r = analyze(spec.setup, spec.max_nodes, spec.max_group)
    doc = report_document(spec, r)
    return _emit(doc, _text_report(doc), fmt), r.ok


def run_enumerate(spec: ProblemSpec, fmt: str):
    base = from_flag(spec.setup.flag)
    g = enumerate_chambers(base, spec.max_nodes)
    kb = k_basis(base)
    nodes = [{"index": i, "marks": sorted(n.marks), "key": list(n.key),
              "word": [v for _, v in n.word]} for i, n in enumerate(g.nodes)]
    edges = []
    for e in g.edges:
        rec = {"src": e.src, "vertex": e.vertex, "dst": e.dst, "reflection": e.normalizing}
        if e.normalizing:
            rec["matrix"] = _rows(k_action(g.nodes[e.src].parabolic, e.vertex, base, kb))
        edges.append(rec)
    doc = {"chambers": g.count, "shapes": sorted(sorted(s) for s in g.shapes()),
           "nodes": nodes, "edges": edges}
    lines = [f"chambers: {g.count}", f"mark shapes: {doc['shapes']}", ""]
    for n in nodes:
        lines.append(f"node {n['index']}: marks {n['marks']} word {n['word']}")
    lines.append("")
    for e in edges:
        m = f" {e['matrix']}" if "matrix" in e else ""
        kind = "reflection" if e["reflection"] else "crossing"
        lines.append(f"{e['src']} --{e['vertex']}--> {e['dst']} {kind}{m}")
    return _emit(doc, "\n".join(lines), fmt), True


def run_twist_trace(spec: ProblemSpec, at: list, fmt: str):
    base = from_flag(spec.setup.flag)
    kb = k_basis(base)
    node = base
    steps = [{"vertex": None, "marks": sorted(node.marks), "diagram": render(node)}]
    for v in at:
        T = twist_map(node, v)
        nxt = twist_at(node, v)
        rec = {"vertex": v, "component": list(T.component), "marks": sorted(nxt.marks)}
        if nxt.marks == node.marks:
            rec["matrix"] = _rows(k_action(node, v, base, kb))
        node = nxt
        rec["diagram"] = render(node)
        steps.append(rec)
    lines = []
    for st in steps:
        head = "start" if st["vertex"] is None else (
            f"twist at {st['vertex']} (component {st['component']})")
        lines += [head, st["diagram"]]
        if st["vertex"] is not None:
            if "matrix" in st:
                lines += ["k-matrix:"] + ["  " + " ".join(f"{x:>3}" for x in r)
                                         for r in st["matrix"]]
            else:
                lines.append("marks move; no element of W'")
        lines.append("")
    return _emit({"steps": steps}, "\n".join(lines).rstrip(), fmt), True


def _parse_basis(text: Optional[str]):
    if not text:
        return None
    return tuple(tuple(int(x) for x in row.split(",")) for row in text.split(";"))


def run_wprime(spec: ProblemSpec, fmt: str, basis: Optional[str] = None):
    base = from_flag(spec.setup.flag)
    g = enumerate_chambers(base, spec.max_nodes)
    kb = k_basis(base)
    gens, where = edge_generators(g, kb)
    group = spanning_subgroup(gens, kb.d, spec.max_group)[1]
    change = _parse_basis(basis)
    recs = []
    for i, m in enumerate(gens):
        e = where[m][0]
        shown = m.change_basis(change) if change else m
        recs.append({"generator": i, "node": e.src, "marks": sorted(g.nodes[e.src].marks),
                     "vertex": e.vertex, "matrix": _rows(shown)})
    doc = {"order": group.order, "basis": [f"a{i}" for i in kb.marked_indices],
           "element_orders": _orders(group.element_orders()),
           "reflections": group.reflection_count(), "generators": recs}
    if change:
        doc["change_of_basis"] = [list(r) for r in change]
    lines = [f"|W'| = {group.order}", f"k-basis: {', '.join(doc['basis'])}", ""]
    for r in recs:
        lines.append(f"g{r['generator']}: twist at {r['vertex']} of node {r['node']}"
                     f" (marks {r['marks']})")
        lines += ["  " + " ".join(f"{x:>3}" for x in row) for row in r["matrix"]]
    return _emit(doc, "\n".join(lines), fmt), True


def run_oracle_collapse(family: str, n: int, fmt: str):
    rows = []
    for q in partitions_of(n):
        p = Partition(q)
        greedy = x_collapse(family, p)
        brute = brute_collapse(family, p)
        rows.append({"partition": list(p), "greedy": list(greedy), "brute": list(brute),
                     "match": greedy == brute})
    ok = all(r["match"] for r in rows)
    lines = [f"{family}-collapse, n = {n}"]
    for r in rows:
        flag = "ok" if r["match"] else "MISMATCH"
        lines.append(f"{_csv(r['partition']):<24} {_csv(r['greedy']):<24}"
                     f" {_csv(r['brute']):<24} {flag}")
    return _emit({"family": family, "n": n, "rows": rows, "all_match": ok},
                 "\n".join(lines), fmt), ok


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "machine"), default="text")
    common.add_argument("--max-nodes", type=int, default=None,
                        help=f"chamber budget (default {DEFAULT_MAX_NODES})")
    common.add_argument("--threads", type=int, default=1,
                        help="accepted for compatibility; work runs on one thread")
    ap = argparse.ArgumentParser(prog="nilterm", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"nilterm {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)
    for name in ("analyze", "enumerate", "wprime"):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("problem", help="problem file or fixture name (ex17, ex19)")
        if name == "wprime":
            p.add_argument("--basis", help="rows of a change of basis, e.g. '1,0;1,1'")
    p = sub.add_parser("twist-trace", parents=[common])
    p.add_argument("problem")
    p.add_argument("--at", required=True, help="comma list of vertices to twist at, in order")
    p = sub.add_parser("oracle", parents=[common])
    p.add_argument("what", choices=("collapse",))
    p.add_argument("--family", choices=("B", "C", "D"), required=True)
    p.add_argument("--n", type=int, required=True)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "oracle":
            out, ok = run_oracle_collapse(args.family, args.n, args.format)
        else:
            spec = load_problem(args.problem)
            if args.max_nodes is not None:
                spec = ProblemSpec(spec.setup, args.max_nodes, spec.max_group)
            if args.command == "analyze":
                out, ok = run_analyze(spec, args.format)
            elif args.command == "enumerate":
                out, ok = run_enumerate(spec, args.format)
            elif args.command == "wprime":
                out, ok = run_wprime(spec, args.format, args.basis)
            else:
                at = [int(x) for x in args.at.split(",") if x.strip()]
                out, ok = run_twist_trace(spec, at, args.format)
    except NiltermError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 2
    print(out)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
