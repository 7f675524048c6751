"""Automorphism towers through finite stages and periodic limits.

A run is a list of blocks.  Block ``k`` holds the stages ``ω·k + i``; its
stage 0 is the colimit of block ``k-1``.  A limit is only taken when two
stages of a block are isomorphic: with ``θ: G_n -> G_m`` an isomorphism the
tail of the tower is periodic, and the direct limit is the eventual image
``E`` of the endomorphism ``φ = θ^-1 ∘ π_{n,m}`` of ``G_n``.  ``E`` is kept as
a literal subgroup of ``G_n``, and ``π_{n,ω} = (φ|_E)^-k ∘ φ^k`` once the
image chain has stabilised after ``k`` steps.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from functools import total_ordering
from typing import Optional

import numpy as np

from . import config
from .automorphism import AutGroup, automorphism_group, inner_homomorphism
from .errors import OrderCapExceeded
from .groups import FiniteGroup, Fingerprint, Homomorphism, Subgroup, center, fingerprint
from .search import find_isomorphism

log = logging.getLogger(__name__)

__all__ = [
    "Ordinal",
    "Period",
    "Colimit",
    "TowerBlock",
    "TowerRun",
    "VanishingRow",
    "VanishingReport",
    "ascend_finite",
    "detect_period",
    "limit_colimit",
    "run_tower",
    "compose_maps",
    "block_projection",
    "transport_isomorphism",
    "vanishing_spectrum",
    "tower_report",
]


@total_ordering
@dataclass(frozen=True)
class Ordinal:
    """The ordinal ω·limit_part + finite_part (always below ω²)."""

    limit_part: int = 0
    finite_part: int = 0

    def __post_init__(self):
        if self.limit_part < 0 or self.finite_part < 0:
            raise ValueError("ordinal parts must be nonnegative")

    def __lt__(self, other: "Ordinal") -> bool:
        if not isinstance(other, Ordinal):
            return NotImplemented
        return (self.limit_part, self.finite_part) < (other.limit_part, other.finite_part)

    def successor(self) -> "Ordinal":
        return Ordinal(self.limit_part, self.finite_part + 1)

    @property
    def is_limit(self) -> bool:
        return self.limit_part > 0 and self.finite_part == 0

    def __str__(self) -> str:
        k, n = self.limit_part, self.finite_part
        if k == 0:
            return str(n)
        head = "ω" if k == 1 else f"ω·{k}"
        return head if n == 0 else f"{head}+{n}"

    def to_dict(self) -> dict:
        return {"limit_part": self.limit_part, "finite_part": self.finite_part}


@dataclass(frozen=True)
class Period:
    n: int
    m: int
    witness: Homomorphism  # isomorphism stage n -> stage m


@dataclass(frozen=True)
class Colimit:
    group: FiniteGroup
    members: tuple[int, ...]  # E as a subset of stage n
    anchor: int  # n
    endomorphism: np.ndarray  # φ on stage n
    exponent: int  # k
    projection: Homomorphism  # π_{n,ω}: G_n -> E


@dataclass(frozen=True)
class TowerBlock:
    stages: tuple[FiniteGroup, ...]
    succ_maps: tuple[Homomorphism, ...]
    auts: tuple[AutGroup, ...]
    status: str  # terminal | max-stages | period | cap-exceeded
    terminal: Optional[int] = None
    period: Optional[Period] = None
    colimit: Optional[Colimit] = None
    error: str = ""


@dataclass(frozen=True)
class TowerRun:
    blocks: tuple[TowerBlock, ...]
    status: str  # terminated | budget-exhausted | no-period-found | cap-exceeded
    termination: Optional[Ordinal] = None
    message: str = ""

    def ordinals(self) -> list[Ordinal]:
        return [Ordinal(k, i) for k, b in enumerate(self.blocks) for i in range(len(b.stages))]

    def stage(self, a: Ordinal) -> FiniteGroup:
        return self.blocks[a.limit_part].stages[a.finite_part]

    def has(self, a: Ordinal) -> bool:
        return a.limit_part < len(self.blocks) and a.finite_part < len(self.blocks[a.limit_part].stages)


def _period_in(stages: list[FiniteGroup], prints: list[Fingerprint], m: int) -> Optional[Period]:
    for n in range(m):
        if prints[n] != prints[m]:
            continue
        theta = find_isomorphism(stages[n], stages[m])
        if theta is not None:
            return Period(n, m, theta)
    return None


def ascend_finite(G: FiniteGroup, max_stages: int = config.DEFAULT_MAX_STAGES, *, stop_on_period: bool = False) -> TowerBlock:
    """Compute G_0 = G, G_1 = Aut(G_0), ... holding at most ``max_stages`` stages.

    Stops early at the first stage whose natural map is bijective (that
    stage's Aut is kept so the bijective map is on record).  With
    ``stop_on_period`` it also stops as soon as the newest stage is
    isomorphic to an earlier one.
    """
    if max_stages < 1:
        raise ValueError("max_stages must be at least 1")
    stages, maps, auts = [G], [], []
    prints = [fingerprint(G)] if stop_on_period else []
    while len(stages) < max_stages:
        try:
            A = automorphism_group(stages[-1])
        except OrderCapExceeded as exc:
            return TowerBlock(tuple(stages), tuple(maps), tuple(auts), "cap-exceeded", error=str(exc))
        pi = inner_homomorphism(A)
        stages.append(A.group)
        maps.append(pi)
        auts.append(A)
        if pi.is_bijective:
            return TowerBlock(tuple(stages), tuple(maps), tuple(auts), "terminal", terminal=len(stages) - 2)
        if stop_on_period:
            prints.append(fingerprint(A.group))
            per = _period_in(stages, prints, len(stages) - 1)
            if per is not None:
                return TowerBlock(tuple(stages), tuple(maps), tuple(auts), "period", period=per)
    return TowerBlock(tuple(stages), tuple(maps), tuple(auts), "max-stages")


def detect_period(block: TowerBlock) -> Optional[Period]:
    """The least pair n < m (smallest m, then smallest n) with G_n ≅ G_m."""
    stages = list(block.stages)
    prints = [fingerprint(g) for g in stages]
    for m in range(1, len(stages)):
        per = _period_in(stages, prints, m)
        if per is not None:
            return per
    return None


def _compose_within(block: TowerBlock, i: int, j: int) -> np.ndarray:
    img = np.arange(block.stages[i].order)
    for s in range(i, j):
        img = block.succ_maps[s].image[img]
    return img


def limit_colimit(block: TowerBlock, period: Period) -> Colimit:
    n, m, theta = period.n, period.m, period.witness
    Gn = block.stages[n]
    order = Gn.order
    theta_inv = np.empty(order, dtype=np.int64)
    theta_inv[theta.image] = np.arange(order)
    phi = theta_inv[_compose_within(block, n, m)]

    cur = np.arange(order)
    k = 0
    while True:
        nxt = np.unique(phi[cur])
        if len(nxt) == len(cur):
            break
        cur = nxt
        k += 1
    members = cur
    phi_e_inv = np.full(order, -1, dtype=np.int64)
    phi_e_inv[phi[members]] = members

    def proj_with(exp: int) -> np.ndarray:
        img = np.arange(order)
        for _ in range(exp):
            img = phi[img]
        for _ in range(exp):
            img = phi_e_inv[img]
        return img

    raw = proj_with(k)
    if not np.array_equal(raw, proj_with(k + 1)):
        raise AssertionError("colimit projection depends on the stabilisation exponent")
    E, emb = Subgroup(Gn, tuple(members.tolist())).as_group()
    pos = np.full(order, -1, dtype=np.int64)
    pos[emb] = np.arange(len(emb))
    proj = Homomorphism.make(Gn, E, pos[raw])
    if len(np.unique(proj.image)) != E.order:
        raise AssertionError("colimit projection is not surjective")
    phi.setflags(write=False)
    return Colimit(E, tuple(members.tolist()), n, phi, k, proj)


def transport_isomorphism(block: TowerBlock, theta: Homomorphism, a: int, b: int) -> Homomorphism:
    """Push an isomorphism G_a -> G_b one stage up: G_{a+1} -> G_{b+1}.

    An automorphism x of G_a goes to θ ∘ x ∘ θ^-1, an automorphism of G_b.
    """
    src, dst = block.auts[a], block.auts[b]
    t = theta.image
    t_inv = np.empty_like(t)
    t_inv[t] = np.arange(len(t))
    image = [dst.index_of(t[src.realization[x][t_inv]]) for x in range(src.order)]
    return Homomorphism.make(block.stages[a + 1], block.stages[b + 1], image)


def block_projection(block: TowerBlock, alpha: int) -> Homomorphism:
    """π_{α,λ} from stage α of a block into the block's colimit."""
    col = block.colimit
    per = block.period
    if col is None or per is None:
        raise ValueError("block has no colimit")
    n, m = per.n, per.m
    E = col.group
    if alpha <= n:
        return Homomorphism.make(block.stages[alpha], E, col.projection.image[_compose_within(block, alpha, n)])
    if alpha <= m:
        theta = per.witness
        t_inv = np.empty_like(theta.image)
        t_inv[theta.image] = np.arange(len(theta.image))
        # (φ|_E)^-1 on E, in E's own indices
        members = np.asarray(col.members)
        phi_e = col.endomorphism[members]
        pos = np.full(block.stages[n].order, -1, dtype=np.int64)
        pos[members] = np.arange(len(members))
        back = np.empty(len(members), dtype=np.int64)
        back[pos[phi_e]] = np.arange(len(members))
        via_n = col.projection.image[t_inv[_compose_within(block, alpha, m)]]
        return Homomorphism.make(block.stages[alpha], E, back[via_n])
    # past the period: pull back along the transported isomorphism G_{α-p} -> G_α
    p = m - n
    theta = per.witness
    for r in range(alpha - m):
        theta = transport_isomorphism(block, theta, n + r, m + r)
    inner = block_projection(block, alpha - p)
    return Homomorphism.make(block.stages[alpha], E, inner.image[theta.inverse().image])


def run_tower(
    G: FiniteGroup,
    max_stages: int = config.DEFAULT_MAX_STAGES,
    max_limits: int = config.DEFAULT_MAX_LIMITS,
) -> TowerRun:
    """Run the automorphism tower until a stage's natural map is bijective.

    Each block ascends until a terminal stage or the first repeated
    isomorphism type; a repeat triggers a colimit and a new block.  At most
    ``max_limits`` limit stages are taken, so ordinals stay below ω².
    Raises :class:`OrderCapExceeded` with the partial run attached when a
    stage is too large.
    """
    if max_stages < 1 or max_limits < 0:
        raise ValueError("budgets must be positive")
    blocks: list[TowerBlock] = []
    current = G
    for k in range(max_limits + 1):
        block = ascend_finite(current, max_stages, stop_on_period=True)
        log.debug("block %d: %s after %d stages", k, block.status, len(block.stages))
        if block.status == "cap-exceeded":
            run = TowerRun(tuple(blocks + [block]), "cap-exceeded", message=block.error)
            raise OrderCapExceeded(block.error, partial=run)
        if block.status == "terminal":
            blocks.append(block)
            return TowerRun(tuple(blocks), "terminated", Ordinal(k, block.terminal))
        if block.period is None:
            blocks.append(block)
            return TowerRun(tuple(blocks), "no-period-found")
        if k == max_limits:
            blocks.append(block)
            break
        col = limit_colimit(block, block.period)
        blocks.append(replace(block, colimit=col))
        current = col.group
    return TowerRun(tuple(blocks), "budget-exhausted")


def _step(run: TowerRun, a: Ordinal) -> tuple[Ordinal, Homomorphism]:
    """The map from stage ``a`` to the next stage of the run."""
    block = run.blocks[a.limit_part]
    if a.finite_part + 1 < len(block.stages):
        return a.successor(), block.succ_maps[a.finite_part]
    if block.colimit is None:
        raise ValueError(f"no stage after {a} in this run")
    return Ordinal(a.limit_part + 1, 0), block_projection(block, a.finite_part)


def compose_maps(run: TowerRun, start: Ordinal, end: Ordinal) -> Homomorphism:
    """π_{start,end}, composed from successor maps and colimit projections."""
    if not run.has(start) or not run.has(end):
        raise ValueError(f"ordinal outside the computed run ({start} -> {end})")
    if end < start:
        raise ValueError("compose_maps needs start <= end")
    src = run.stage(start)
    img = np.arange(src.order)
    a = start
    while a < end:
        nxt, h = _step(run, a)
        img = h.image[img]
        a = nxt
    return Homomorphism.make(src, run.stage(end), img)


@dataclass(frozen=True)
class VanishingRow:
    ordinal: Ordinal
    group_order: int
    vanishing: tuple[int, ...]  # H: elements killed within the horizon
    f: Optional[Ordinal]  # max over H of the least killing stage


@dataclass(frozen=True)
class VanishingReport:
    horizon: int
    rows: tuple[VanishingRow, ...] = field(default_factory=tuple)


def vanishing_spectrum(run: TowerRun, horizon: int) -> VanishingReport:
    """Which elements die, and when, over the first ``horizon`` stages of a run.

    Every stage except the last in the prefix gets a row; the last has no
    later stage to die in.
    """
    ords = run.ordinals()
    if horizon < 1 or horizon > len(ords):
        raise ValueError(f"horizon {horizon} exceeds computed prefix of {len(ords)} stages")
    prefix = ords[:horizon]
    steps = [_step(run, a)[1] for a in prefix[:-1]]
    rows = []
    for i, a in enumerate(prefix[:-1]):
        order = run.stage(a).order
        first = np.full(order, -1, dtype=np.int64)
        img = np.arange(order)
        for j in range(i, len(prefix) - 1):
            img = steps[j].image[img]
            newly = (img == 0) & (first < 0)
            first[newly] = j + 1
        dead = np.flatnonzero(first >= 0)
        f = prefix[int(first[dead].max())] if len(dead) else None
        rows.append(VanishingRow(a, order, tuple(dead.tolist()), f))
    return VanishingReport(horizon, tuple(rows))


def tower_report(run: TowerRun) -> dict:
    """JSON-ready summary; key order is fixed so output is byte-stable."""
    blocks = []
    for k, b in enumerate(run.blocks):
        blocks.append({
            "start": str(Ordinal(k, 0)),
            "stage_orders": [g.order for g in b.stages],
            "center_orders": [center(g).order for g in b.stages],
            "fingerprints": [fingerprint(g).to_dict() for g in b.stages],
            "period": [b.period.n, b.period.m] if b.period else None,
            "colimit_order": b.colimit.group.order if b.colimit else None,
            "terminal": b.terminal,
        })
    return {
        "blocks": blocks,
        "status": run.status,
        "termination": run.termination.to_dict() if run.termination else None,
        "termination_label": str(run.termination) if run.termination else None,
    }
