"""Acceptance criteria 1-10, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -v``; the result lines are printed
even when output capture is on.
"""

import subprocess
import sys
import time

import numpy as np
import pytest

from towerlab.automorphism import automorphism_group, inner_homomorphism
from towerlab.errors import OrderCapExceeded
from towerlab.graphlab import BoxTree, assignment_from_pattern, boxed_tower_height, build_boxed, build_wall, graph_automorphism_group, load_graph
from towerlab.groups import center, centralizer_in
from towerlab.named import construct_named
from towerlab.normtower import aut_equals_normalizer_check
from towerlab.tower import Ordinal, run_tower

import oracles


@pytest.fixture
def report(capsys):
    def emit(number, ok, detail):
        with capsys.disabled():
            print(f"\n[criterion {number}] {'PASS' if ok else 'FAIL'}: {detail}")
        assert ok, detail

    return emit


@pytest.fixture(scope="module")
def centerless(catalog):
    return [e for e in catalog if e.centerless]


@pytest.fixture(scope="module")
def wielandt_runs(centerless):
    start = time.perf_counter()
    runs = {e.spec: run_tower(e.group, max_stages=16, max_limits=4) for e in centerless}
    return runs, time.perf_counter() - start


def test_criterion_01_d8_tower(report):
    start = time.perf_counter()
    run = run_tower(construct_named("D8"))
    elapsed = time.perf_counter() - start
    first = run.blocks[0]
    per = first.period
    ok = (
        run.termination == Ordinal(1, 1)
        and run.stage(Ordinal(1, 0)).order == 2
        and all(g.order == 8 and center(g).order == 2 for g in first.stages[: per.m + 1])
        and elapsed < 1.0
    )
    report(1, ok, f"D8 terminates at {run.termination}, |G_ω| = {run.stage(Ordinal(1, 0)).order}, {elapsed:.3f}s")


def test_criterion_02_wielandt(report, wielandt_runs, centerless):
    runs, elapsed = wielandt_runs
    bad = [s for s, r in runs.items() if r.status != "terminated" or r.termination.limit_part != 0
           or r.termination.finite_part >= 16]
    heights = {s: str(r.termination) for s, r in runs.items() if r.termination}
    ok = not bad and len(runs) == len(centerless) and elapsed < 60
    report(2, ok, f"{len(runs)} centerless groups of order <= 48 terminate finitely in {elapsed:.1f}s; "
                  f"heights {heights}; failures {bad}")


def test_criterion_03_kernel_law(report, wielandt_runs):
    runs, _ = wielandt_runs
    checked, bad = 0, []
    for spec, run in runs.items():
        for block in run.blocks:
            for i, pi in enumerate(block.succ_maps):
                checked += 1
                if pi.kernel().members != center(block.stages[i]).members:
                    bad.append((spec, i))
    report(3, checked > 0 and not bad, f"{checked} successor maps, kernel = center everywhere; failures {bad}")


def test_criterion_04_centerless_propagation(report, centerless):
    bad = []
    for e in centerless:
        A = automorphism_group(e.group)
        inn = inner_homomorphism(A).image_subgroup()
        if center(A.group).order != 1 or centralizer_in(A.group, inn).order != 1:
            bad.append(e.spec)
    report(4, not bad, f"{len(centerless)} centerless groups: Aut centerless and C_Aut(Inn) = 1; failures {bad}")


def test_criterion_05_naturality(report, catalog):
    groups = []
    for e in catalog:
        if e.group.order < 3:
            continue
        try:
            groups.append((e.spec, e.group, automorphism_group(e.group)))
        except OrderCapExceeded:
            continue
    rng = np.random.default_rng(20240601)
    failures = 0
    used = set()
    for _ in range(1000):
        spec, G, A = groups[rng.integers(len(groups))]
        used.add(spec)
        theta = A.realization[rng.integers(A.order)]
        g = int(rng.integers(G.order))
        theta_inv = np.argsort(theta)
        if not np.array_equal(theta[G.conjugation[g][theta_inv]], G.conjugation[theta[g]]):
            failures += 1
    report(5, failures == 0 and len(used) >= 10, f"1000 (θ, g) samples over {len(used)} groups, {failures} failures")


def test_criterion_06_fact(report, centerless, wielandt_runs):
    runs, _ = wielandt_runs
    chosen = [e for e in centerless if e.group.order <= 24 and runs[e.spec].termination.finite_part <= 4]
    bad = []
    for e in chosen:
        rep = aut_equals_normalizer_check(e.group, run=runs[e.spec])
        if not rep.passed:
            bad.append((e.spec, rep.discrepancy))
    report(6, len(chosen) > 0 and not bad, f"{len(chosen)} groups ({', '.join(e.spec for e in chosen)}); failures {bad}")


def _height(depth, pattern):
    tree = BoxTree.of_depth(depth)
    return boxed_tower_height(build_boxed(tree, assignment_from_pattern(tree, pattern)))


def test_criterion_07_boxed_heights(report):
    start = time.perf_counter()
    alpha = {a: _height(a, "all-one") for a in (1, 2, 3)}
    beta = {(a, b): _height(a, f"upto:{b}") for a in (2, 3) for b in range(a)}
    elapsed = time.perf_counter() - start
    ok = all(h == a for a, h in alpha.items()) and all(h == b for (a, b), h in beta.items()) and elapsed < 120
    report(7, ok, f"all-one heights {alpha}; truncated heights {beta}; {elapsed:.1f}s")


def test_criterion_08_wall(report):
    tree = BoxTree.of_depth(3)
    assign = assignment_from_pattern(tree, "all-one")
    plain = boxed_tower_height(build_boxed(tree, assign))
    match = boxed_tower_height(build_wall(tree, assign, 0))
    other = boxed_tower_height(build_wall(tree, assign, assign.class_count))
    report(8, match < plain and other == plain, f"α=3: no wall {plain}, matching wall {match}, distinct wall {other}")


def test_criterion_09_oracles(report, small_catalog, graph_files):
    bad = []
    for e in small_catalog:
        mine = sorted(map(tuple, automorphism_group(e.group).realization.tolist()))
        if mine != oracles.automorphisms(oracles.rows(e.group)):
            bad.append(e.spec)
    graphs = 0
    for path in graph_files:
        g = load_graph(path)
        if g.vertex_count > 7:
            continue
        graphs += 1
        mine = [tuple(p) for p in graph_automorphism_group(g, max_order=10_000).perms.tolist()]
        if mine != oracles.graph_automorphisms(g.vertex_count, g.edges, g.colors):
            bad.append(path.name)
    report(9, not bad, f"{len(small_catalog)} groups and {graphs} graphs match brute force; failures {bad}")


ACCEPTANCE_COMMANDS = [
    ["tower", "D8", "--json"],
    ["survey", "--max-order", "48", "--json"],
    ["fact-check", "A4", "--json"],
    ["fact-check", "S3xS3", "--json"],
    ["boxed-height", "--depth", "3", "--classes", "all-one", "--json"],
    ["boxed-height", "--depth", "3", "--classes", "upto:2", "--json"],
    ["wall", "--depth", "3", "--wall", "match", "--json"],
    ["wall", "--depth", "3", "--wall", "distinct", "--json"],
    ["aut", "D8", "--json"],
    ["graph-aut", "tests/data/graphs/prism.json", "--json"],
]


def test_criterion_10_determinism(report):
    from pathlib import Path
    root = Path(__file__).resolve().parent.parent
    diffs = []
    for args in ACCEPTANCE_COMMANDS:
        outs = [subprocess.run([sys.executable, "-m", "towerlab.cli", *args], capture_output=True, cwd=root) for _ in range(2)]
        if any(o.returncode != 0 for o in outs) or outs[0].stdout != outs[1].stdout:
            diffs.append(" ".join(args))
    report(10, not diffs, f"{len(ACCEPTANCE_COMMANDS)} commands byte-identical across two runs; differing {diffs}")
