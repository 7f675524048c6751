"""Command-line entry point: ``towerlab <verb> ...``.

Exit status 0 on success, 1 on domain errors (one line on stderr), 2 on
usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import config
from .automorphism import automorphism_group, inner_homomorphism, is_complete
from .catalog import catalog_list, survey, survey_table
from .errors import OrderCapExceeded, TowerlabError
from .graphlab import (
    BoxTree,
    assignment_from_pattern,
    boxed_report,
    build_boxed,
    build_wall,
    graph_automorphism_group,
    load_graph,
)
from .groups import center, fingerprint, subgroup_generated
from .named import construct_named
from .normtower import aut_equals_normalizer_check, normalizer_report, normalizer_tower
from .tower import run_tower, tower_report


def _group_cmd(args) -> dict:
    G = construct_named(args.spec)
    z = center(G).order
    try:
        comp = is_complete(G)
        complete, aut_order = comp.complete, comp.outer_index * (G.order // z)
    except OrderCapExceeded:
        complete, aut_order = False, None
    return {
        "spec": args.spec,
        "order": G.order,
        "center_order": z,
        "abelian": G.is_abelian,
        "complete": complete,
        "aut_order": aut_order,
        "fingerprint": fingerprint(G).to_dict(),
    }


def _aut_cmd(args) -> dict:
    G = construct_named(args.spec)
    A = automorphism_group(G)
    pi = inner_homomorphism(A)
    inner = pi.image_subgroup().order
    return {
        "spec": args.spec,
        "group_order": G.order,
        "order": A.order,
        "inner_order": inner,
        "outer_index": A.order // inner,
        "natural_map": pi.image.tolist(),
        "table": A.group.table.tolist(),
        "realization": A.realization.tolist(),
    }


def _tower_cmd(args) -> dict:
    G = construct_named(args.spec)
    run = run_tower(G, max_stages=args.max_stages, max_limits=args.max_limits)
    return {"spec": args.spec, **tower_report(run)}


def _parse_indices(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise TowerlabError(f"--sub expects comma-separated integers, got {text!r}") from None


def _normtower_cmd(args) -> dict:
    H = construct_named(args.ambient)
    gens = _parse_indices(args.sub)
    if any(not 0 <= g < H.order for g in gens):
        raise TowerlabError(f"generator index out of range for a group of order {H.order}")
    S = subgroup_generated(H, gens)
    tower = normalizer_tower(H, S)
    rep = normalizer_report(tower)
    return {
        "ambient": args.ambient,
        "generators": gens,
        "ambient_order": rep["ambient_order"],
        "stage_orders": rep["stage_orders"],
        "member_counts": [len(s.members) for s in tower.stages],
        "height": rep["height"],
        "stages": rep["members"],
    }


def _fact_cmd(args) -> dict:
    G = construct_named(args.spec)
    rep = aut_equals_normalizer_check(G, max_stages=args.max_stages)
    return {"spec": args.spec, **rep.to_dict()}


def _graph_aut_cmd(args) -> dict:
    g = load_graph(args.file)
    A = graph_automorphism_group(g)
    return {
        "vertices": g.vertex_count,
        "edges": len(g.edges),
        "order": A.order,
        "rigid": A.order == 1,
        "automorphisms": A.perms.tolist(),
    }


def _build(args):
    tree = BoxTree.of_depth(args.depth)
    assign = assignment_from_pattern(tree, args.classes)
    return tree, assign


def _boxed_cmd(args) -> dict:
    tree, assign = _build(args)
    b = build_boxed(tree, assign)
    parts = assign.partition()
    return {
        "depth": args.depth,
        "classes_pattern": args.classes,
        "slot_count": b.slot_count,
        "vertex_count": b.graph.vertex_count,
        "classes": parts,
        "ambient_order": b.ambient.order,
        "w_order": b.W.order,
        "w_generators": [list(g) for g in b.W.gens],
    }


def _boxed_height_cmd(args) -> dict:
    tree, assign = _build(args)
    rep = boxed_report(build_boxed(tree, assign))
    return {"classes_pattern": args.classes, **rep}


def _wall_cmd(args) -> dict:
    tree, assign = _build(args)
    if args.wall == "none":
        wall_class = None
    elif args.wall == "match":
        wall_class = 0
    elif args.wall == "distinct":
        wall_class = assign.class_count
    else:
        try:
            wall_class = int(args.wall)
        except ValueError:
            raise TowerlabError(f"--wall expects match, distinct, none or a class id, got {args.wall!r}") from None
    b = build_wall(tree, assign, wall_class, rows=args.rows, level=args.level)
    rep = boxed_report(b)
    return {"classes_pattern": args.classes, "wall": args.wall, "wall_class": wall_class, **rep}


def _survey_cmd(args) -> dict:
    entries = catalog_list(args.max_order)
    rows = survey(entries, max_stages=args.max_stages, max_limits=args.max_limits, workers=args.workers)
    return {"rows": [r.to_dict() for r in rows], "_table": survey_table(rows)}


def _human(data: dict) -> str:
    if "_table" in data:
        return data["_table"]
    lines = []
    for key, val in data.items():
        if key in ("table", "realization", "automorphisms", "stages", "natural_map", "w_generators", "fingerprint"):
            continue  # bulky; available through --json
        if key == "blocks":
            for b in val:
                lines.append(f"block {b['start']}: stage orders {b['stage_orders']}, center orders {b['center_orders']}, "
                             f"period {b['period']}, colimit order {b['colimit_order']}")
            continue
        if isinstance(val, dict):
            val = ", ".join(f"{k}={v}" for k, v in val.items())
        lines.append(f"{key}: {val}")
    return "\n".join(lines)


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="towerlab", description="Automorphism and normalizer towers of finite groups.")
    sub = p.add_subparsers(dest="verb", required=True)

    def verb(name, func, help_text):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.add_argument("--out", metavar="PATH", help="write the report to PATH instead of stdout")
        sp.set_defaults(func=func)
        return sp

    sp = verb("group", _group_cmd, "order, center, fingerprint and completeness")
    sp.add_argument("spec")
    sp = verb("aut", _aut_cmd, "automorphism group")
    sp.add_argument("spec")
    sp = verb("tower", _tower_cmd, "automorphism tower")
    sp.add_argument("spec")
    sp.add_argument("--max-stages", type=int, default=config.DEFAULT_MAX_STAGES)
    sp.add_argument("--max-limits", type=int, default=config.DEFAULT_MAX_LIMITS)
    sp = verb("normtower", _normtower_cmd, "normalizer tower of a subgroup")
    sp.add_argument("--ambient", required=True, help="group spec or file:<path>")
    sp.add_argument("--sub", required=True, help="comma-separated generator indices")
    sp = verb("fact-check", _fact_cmd, "compare automorphism and normalizer towers")
    sp.add_argument("spec")
    sp.add_argument("--max-stages", type=int, default=config.DEFAULT_MAX_STAGES)
    sp = verb("graph-aut", _graph_aut_cmd, "automorphism group of a graph file")
    sp.add_argument("file")
    for name, func, text in (
        ("boxed", _boxed_cmd, "build the boxed construction"),
        ("boxed-height", _boxed_height_cmd, "normalizer tower height of the boxed construction"),
        ("wall", _wall_cmd, "boxed construction with wall rows"),
    ):
        sp = verb(name, func, text)
        sp.add_argument("--depth", type=int, required=True)
        sp.add_argument("--classes", default="all-one", help="all-one, per-component, per-slot or upto:B")
        if name == "wall":
            sp.add_argument("--wall", default="match", help="match, distinct, none or a class id")
            sp.add_argument("--rows", type=int, default=2)
            sp.add_argument("--level", type=int, default=2)
    sp = verb("survey", _survey_cmd, "tower survey over the catalog")
    sp.add_argument("--max-order", type=int, default=15)
    sp.add_argument("--max-stages", type=int, default=config.DEFAULT_MAX_STAGES)
    sp.add_argument("--max-limits", type=int, default=config.DEFAULT_MAX_LIMITS)
    sp.add_argument("--workers", type=int, default=1)
    return p


def _emit(text: str, out: Optional[str]) -> None:
    data = (text + "\n").encode("utf-8")
    if out:
        with open(out, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _parser().parse_args(argv)
    try:
        data = args.func(args)
        if args.json:
            data.pop("_table", None)
            text = json.dumps(data, indent=2, ensure_ascii=False)
        else:
            text = _human(data)
        _emit(text, args.out)
    except (TowerlabError, ValueError) as exc:
        msg = " ".join(str(exc).split()) or type(exc).__name__
        print(f"towerlab: error: {msg}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"towerlab: error: {exc.strerror or exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
