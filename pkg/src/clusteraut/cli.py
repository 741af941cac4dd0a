"""Batch command-line front end.

Exit codes: 0 success, 2 malformed input, 3 result depends on an incomplete
exploration (a cap was hit), 4 a verification failed or a map is not an
automorphism.  Points and arcs are numbered from 1 on the command line and in
every file.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from collections import deque
from dataclasses import dataclass

from .automorphisms import (
    NoQuiverIso,
    NotACluster,
    aut_group,
    check_cluster_automorphism,
    oracle_check,
)
from .exact_arith import ParseError, parse_ratfn
from .groups import GroupTooLarge, identify_group, semidirect_check
from .mapping_class import (
    DEFAULT_SEED,
    Fingerprinter,
    SearchFailed,
    annulus_generators,
    mcg_generators,
    phi,
    presentation_G,
    presentation_G_images,
    presentation_H,
    psi_z,
    verify_presentation,
)
from .quiver import Quiver, QuiverError, classify_type, linear_a, mutate_quiver
from .seeds import ExchangeGraph, Incomplete, Seed, Unreachable, explore, initial_seed, mutate_seed
from .surface import (
    ClosedOncePunctured,
    ExcludedSurface,
    InvalidTriangulation,
    NotFlippable,
    Triangulation,
    annulus_std,
    figure2_left,
    figure2_right,
    once_punctured_torus,
    polygon_fan,
    punctured_disc_std,
    twice_punctured_disc_std,
)

OK, MALFORMED, INCOMPLETE, FAILED = 0, 2, 3, 4


class InputError(ValueError):
    pass


@dataclass
class RunConfig:
    node_cap: int
    depth_cap: int
    ball_depth: int
    group_order_bound: int
    fmt: str
    graph: str | None
    output: str | None
    seed: int

    @classmethod
    def from_args(cls, a: argparse.Namespace) -> "RunConfig":
        if a.node_cap < 1 or a.depth_cap < 1 or a.ball_depth < 0 or a.group_bound < 1:
            raise InputError("caps must be positive")
        return cls(a.node_cap, a.depth_cap, a.ball_depth, a.group_bound, a.format, a.graph, a.output, a.seed)


# ----------------------------------------------------------------------
# input and output helpers


def _load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise InputError(f"{path} is not valid JSON: {e}") from None


def _load_quiver(path: str) -> Quiver:
    data = _load_json(path)
    if isinstance(data, dict) and "quiver" in data:
        data = data["quiver"]
    try:
        return Quiver.from_json(data)
    except (QuiverError, TypeError, KeyError, IndexError) as e:
        raise InputError(f"{path}: {e}") from None


def _load_graph(cfg: RunConfig, quiver_path: str | None = None) -> ExchangeGraph:
    if cfg.graph:
        try:
            return ExchangeGraph.from_json(_load_json(cfg.graph))
        except (KeyError, TypeError, ValueError) as e:
            raise InputError(f"{cfg.graph}: malformed exchange-graph file ({e})") from None
    if quiver_path is None:
        raise InputError("give a quiver file or --graph")
    return explore(_load_quiver(quiver_path), cfg.node_cap, cfg.depth_cap)


def _emit(cfg: RunConfig, data, text: str | None = None) -> None:
    if cfg.fmt == "text" and text is not None:
        out = text.rstrip("\n") + "\n"
    else:
        out = json.dumps(data, indent=1, sort_keys=True, ensure_ascii=False) + "\n"
    if cfg.output:
        with open(cfg.output, "w") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


def _positions(tokens, n: int) -> list[int]:
    out = []
    for t in tokens:
        try:
            k = int(t)
        except ValueError:
            raise InputError(f"position {t!r} is not an integer") from None
        if not 1 <= k <= n:
            raise InputError(f"position {k} out of range 1..{n}")
        out.append(k - 1)
    return out


# ----------------------------------------------------------------------
# cluster commands


def cmd_mutate(cfg: RunConfig, args) -> int:
    data = _load_json(args.input)
    if isinstance(data, dict) and "cluster" in data:
        q = Quiver.from_json(data["quiver"])
        try:
            cluster = tuple(parse_ratfn(t, q.n) for t in data["cluster"])
        except ParseError as e:
            raise InputError(str(e)) from None
        seed = Seed(cluster, q)
        for k in _positions(args.positions, q.n):
            seed = mutate_seed(seed, k)
        result = {"quiver": seed.quiver.to_json(), "cluster": seed.strings()}
        text = str(seed.quiver) + "\n" + "\n".join(seed.strings())
    else:
        q = _load_quiver(args.input)
        for k in _positions(args.positions, q.n):
            q = mutate_quiver(q, k)
        result, text = q.to_json(), str(q)
    _emit(cfg, result, text)
    return OK


def cmd_explore(cfg: RunConfig, args) -> int:
    q = _load_quiver(args.input)
    g = explore(q, cfg.node_cap, cfg.depth_cap)
    if cfg.output:
        with open(cfg.output, "w") as fh:
            fh.write(g.dumps() + "\n")
    summary = {
        "nodes": len(g.nodes),
        "variables": len(g.variable_keys()),
        "complete": g.complete,
        "depth_reached": g.depth_reached,
        "type": _type_name(q),
    }
    text = f"clusters {summary['nodes']}  variables {summary['variables']}  complete {g.complete}"
    out = sys.stdout
    out.write((text if cfg.fmt == "text" else json.dumps(summary, sort_keys=True, ensure_ascii=False)) + "\n")
    return OK if g.complete else INCOMPLETE


def cmd_variables(cfg: RunConfig, args) -> int:
    g = _load_graph(cfg, args.input)
    names = sorted(g.variable_keys())
    _emit(cfg, {"complete": g.complete, "variables": names}, "\n".join(names))
    return OK if g.complete else INCOMPLETE


def _parse_images(path: str, n: int):
    data = _load_json(path)
    if isinstance(data, dict):
        data = data.get("images")
    if not isinstance(data, list) or len(data) != n:
        raise InputError(f"{path}: expected a list of {n} images")
    try:
        return [parse_ratfn(str(t), n) for t in data]
    except ParseError as e:
        raise InputError(str(e)) from None


def cmd_check(cfg: RunConfig, args) -> int:
    g = _load_graph(cfg, args.quiver)
    images = _parse_images(args.images, g.n)
    report = {"images": [str(x) for x in images]}
    code = OK
    try:
        f = check_cluster_automorphism(g, images)
        report.update(verdict="automorphism", **f.describe())
        if g.complete:
            report["oracle"] = oracle_check(g, images)
    except NoQuiverIso as e:
        report.update(verdict="NoQuiverIso", reason=str(e))
        if e.image_quiver is not None:
            report["image_quiver"] = e.image_quiver.to_json()
            report["image_arrows"] = [[i + 1, j + 1, v] for i, j, v in e.image_quiver.arrows()]
        code = FAILED
    except NotACluster as e:
        report.update(verdict="NotACluster", reason=str(e))
        code = FAILED
    text = report["verdict"] + (f" ({report['direction']})" if "direction" in report else "")
    _emit(cfg, report, text)
    return code


def _group_report(g: ExchangeGraph, bound: int) -> dict:
    grp = aut_group(g)
    full = identify_group(grp.group, bound)
    direct = identify_group(grp.direct_group(), bound)
    rep = {
        "type": _type_name(g.quiver),
        "order": grp.order,
        "direct_order": len(grp.direct),
        "index": grp.index,
        "structure": full.name,
        "structure_matches": full.matches,
        "direct_structure": direct.name,
        "direct_structure_matches": direct.matches,
        "generators": [list(grp.image_keys[i]) for i in grp.group.small_generating_set()],
    }
    if grp.index == 2:
        split = semidirect_check(grp.group, grp.direct)
        rep["split"] = split.split
        rep["direct_product"] = split.direct
    return rep


def cmd_aut(cfg: RunConfig, args) -> int:
    g = _load_graph(cfg, args.input)
    if not g.complete:
        raise Incomplete("the automorphism group needs a complete exchange graph; raise --node-cap")
    rep = _group_report(g, cfg.group_order_bound)
    text = f"|Aut+| = {rep['direct_order']} ({rep['direct_structure']})  |Aut| = {rep['order']} ({rep['structure']})"
    _emit(cfg, rep, text)
    return OK


# ----------------------------------------------------------------------
# table check


def _type_name(q: Quiver) -> str:
    t = classify_type(q)
    return t.name or t.kind


def _d_quiver(n: int) -> Quiver:
    return Quiver.from_arrows(n, [(0, 2), (1, 2)] + [(k, k + 1) for k in range(2, n - 1)])


def _e_quiver(n: int) -> Quiver:
    return Quiver.from_arrows(n, [(0, 1), (1, 2), (2, 3)] + [(k, k + 1) for k in range(3, n - 2)] + [(2, n - 1)])


def _table_rows(max_rank: int) -> list[tuple[str, Quiver, tuple[str, str]]]:
    rows = [
        ("A1", linear_a(1), ("Z2", "Z2")),
    ]
    for n in range(2, min(max_rank, 6) + 1):
        rows.append((f"A{n}", linear_a(n), (f"Z{n + 3}", f"D{n + 3}")))
    rows.append(("D4", _d_quiver(4), ("Z4×S3", "D4×S3")))
    for n in range(5, max_rank + 1):
        rows.append((f"D{n}", _d_quiver(n), (f"Z{n}×Z2", f"D{n}×Z2")))
    if max_rank >= 6:
        rows.append(("E6", _e_quiver(6), ("Z14", "D14")))
    return [r for r in rows if r[1].n <= max_rank]


def cmd_verify_table1(cfg: RunConfig, args) -> int:
    results = []
    for name, q, (want_direct, want_full) in _table_rows(args.max_rank):
        t0 = time.perf_counter()
        g = explore(q, cfg.node_cap, cfg.depth_cap)
        if not g.complete:
            results.append({"row": name, "pass": False, "reason": "exploration hit a cap"})
            continue
        rep = _group_report(g, cfg.group_order_bound)
        ok = want_direct in rep["direct_structure_matches"] and want_full in rep["structure_matches"]
        results.append(
            {
                "row": name,
                "pass": ok,
                "aut_plus": [rep["direct_order"], want_direct],
                "aut": [rep["order"], want_full],
                "seconds": round(time.perf_counter() - t0, 3),
            }
        )
    gens = {k: phi(v) for k, v in annulus_generators(2, 1).items()}
    checks = verify_presentation(gens, presentation_H(2, 1))
    results.append({"row": "Ã(2,1)", "pass": all(c.holds for c in checks), "relations": {c.relation: c.holds for c in checks}})
    images, _ = presentation_G_images(4)
    checks = verify_presentation(images, presentation_G(7))
    results.append({"row": "D̃6", "pass": all(c.holds for c in checks), "relations": {c.relation: c.holds for c in checks}})
    lines = [f"{r['row']:8s} {'PASS' if r['pass'] else 'FAIL'}" for r in results]
    _emit(cfg, {"rows": results, "pass": all(r["pass"] for r in results)}, "\n".join(lines))
    return OK if all(r["pass"] for r in results) else FAILED


# ----------------------------------------------------------------------
# surfaces

_NAMED = {
    "polygon": (1, lambda a: polygon_fan(a[0])),
    "annulus": (2, lambda a: annulus_std(a[0], a[1])),
    "punctured-disc": (1, lambda a: punctured_disc_std(a[0], 1)),
    "twice-punctured-disc": (1, lambda a: twice_punctured_disc_std(a[0])),
    "figure2_left": (0, lambda a: figure2_left()),
    "figure2_right": (0, lambda a: figure2_right()),
    "torus": (0, lambda a: once_punctured_torus()),
}


def _triangulation(tokens: list[str]) -> tuple[Triangulation, list[str]]:
    """Consume a named triangulation (and its integer parameters) or a JSON file."""
    if not tokens:
        raise InputError("missing triangulation")
    name, rest = tokens[0], tokens[1:]
    if name in _NAMED:
        count, build = _NAMED[name]
        if len(rest) < count:
            raise InputError(f"{name} needs {count} integer parameter(s)")
        try:
            params = [int(t) for t in rest[:count]]
        except ValueError:
            raise InputError(f"{name} parameters must be integers") from None
        return build(params), rest[count:]
    data = _load_json(name)
    try:
        return Triangulation.from_json(data), rest
    except (KeyError, TypeError, ValueError) as e:
        raise InputError(f"{name}: malformed triangulation ({e})") from None


def _bmatrix_payload(t: Triangulation) -> dict:
    q = t.b_matrix()
    return {**q.to_json(), "arrows": [[i + 1, j + 1, v] for i, j, v in q.arrows()]}


def cmd_surface(cfg: RunConfig, args) -> int:
    t, rest = _triangulation(args.spec)
    action = args.action
    if action == "bmatrix":
        _expect_empty(rest)
        q = t.b_matrix()
        _emit(cfg, _bmatrix_payload(t), str(q))
    elif action == "flip":
        if len(rest) != 1:
            raise InputError("flip needs exactly one arc number")
        (k,) = _positions(rest, t.n)
        t2 = t.flip(k)
        out = {"triangulation": t2.to_json(), "b_matrix": _bmatrix_payload(t2)}
        out["equals"] = [name for name in ("figure2_left", "figure2_right") if t2.same_as(_NAMED[name][1]([]))]
        _emit(cfg, out, str(t2.b_matrix()))
    elif action == "flipgraph":
        _expect_empty(rest)
        nodes, edges, complete = _flip_closure(t, cfg)
        _emit(cfg, {"triangulations": nodes, "flips": edges, "complete": complete}, f"triangulations {nodes}  flips {edges}")
        return OK if complete else INCOMPLETE
    elif action == "mcg":
        _expect_empty(rest)
        gens = mcg_generators(t)
        out = {}
        lines = []
        for name, mc in gens.items():
            f = phi(mc)
            out[name] = {
                "word": [k + 1 for k in mc.word],
                "arc_map": [p + 1 for p in mc.perm],
                "vertex_map": dict(mc.vertex_map),
                "images": list(f.image_strings()),
            }
            lines.append(f"{name}: " + ", ".join(f.image_strings()))
        _emit(cfg, out, "\n".join(lines))
    elif action == "psi":
        if len(rest) != 1:
            raise InputError("psi needs a puncture name")
        f = psi_z(t, rest[0], max_depth=cfg.ball_depth)
        _emit(cfg, f.describe(), ", ".join(f.image_strings()))
    return OK


def _expect_empty(rest):
    if rest:
        raise InputError(f"unexpected arguments: {' '.join(rest)}")


def _flip_closure(t: Triangulation, cfg: RunConfig) -> tuple[int, int, bool]:
    """Count tagged triangulations reachable by flips, identified by their clusters."""
    fp = Fingerprinter(t.n, cfg.seed)
    start = fp.initial()
    seen = {tuple(sorted(start)): 0}
    queue = deque([(t.b_matrix(), start, 0)])
    edges = set()
    complete = True
    while queue:
        b, vals, d = queue.popleft()
        me = seen[tuple(sorted(vals))]
        for k in range(t.n):
            v2 = Fingerprinter.mutate(vals, b, k)
            key = tuple(sorted(v2))
            if key not in seen:
                if len(seen) >= cfg.node_cap or d + 1 > cfg.depth_cap:
                    complete = False
                    continue
                seen[key] = len(seen)
                queue.append((mutate_quiver(b, k), v2, d + 1))
            edges.add(frozenset((me, seen[key])))
    return len(seen), len(edges), complete


# ----------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--node-cap", type=int, default=20000)
    common.add_argument("--depth-cap", type=int, default=64)
    common.add_argument("--ball-depth", type=int, default=16, help="depth of bounded flip searches")
    common.add_argument("--group-bound", type=int, default=200, help="largest group order to identify")
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--graph", help="exchange-graph cache written by 'explore -o'")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for modular fingerprints")
    common.add_argument("-o", "--output", help="write the result to this file")

    p = argparse.ArgumentParser(prog="clusteraut", description="Cluster algebras, their automorphisms and surfaces.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("mutate", parents=[common], help="mutate a quiver or seed file")
    s.add_argument("input")
    s.add_argument("positions", nargs="*")
    s.set_defaults(func=cmd_mutate)

    s = sub.add_parser("explore", parents=[common], help="explore the exchange graph")
    s.add_argument("input")
    s.set_defaults(func=cmd_explore)

    s = sub.add_parser("variables", parents=[common], help="list cluster variables")
    s.add_argument("input", nargs="?")
    s.set_defaults(func=cmd_variables)

    s = sub.add_parser("check", parents=[common], help="decide whether images define a cluster automorphism")
    s.add_argument("images")
    s.add_argument("quiver", nargs="?")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("aut", parents=[common], help="automorphism group of a finite-type algebra")
    s.add_argument("input", nargs="?")
    s.set_defaults(func=cmd_aut)

    s = sub.add_parser("verify-table1", parents=[common], help="check automorphism groups of small types")
    s.add_argument("--max-rank", type=int, default=5)
    s.set_defaults(func=cmd_verify_table1)

    s = sub.add_parser("surface", parents=[common], help="triangulated surfaces")
    s.add_argument("action", choices=("bmatrix", "flip", "flipgraph", "mcg", "psi"))
    s.add_argument("spec", nargs="+", help="name and parameters, or a triangulation JSON file, then arguments")
    s.set_defaults(func=cmd_surface)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig.from_args(args)
        return args.func(cfg, args)
    except (InputError, QuiverError, ParseError, InvalidTriangulation, NotFlippable, ExcludedSurface, IndexError) as e:
        print(f"error: {e}", file=sys.stderr)
        return MALFORMED
    except (Incomplete, Unreachable, SearchFailed) as e:
        print(f"incomplete: {e}", file=sys.stderr)
        return INCOMPLETE
    except (GroupTooLarge, ClosedOncePunctured) as e:
        print(f"error: {e}", file=sys.stderr)
        return FAILED


if __name__ == "__main__":
    sys.exit(main())
