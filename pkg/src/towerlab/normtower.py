"""Normalizer towers N_0 = G, N_{k+1} = N_H(N_k) inside a finite ambient group.

In a finite ambient group the chain stabilises after finitely many strict
steps, so no limit stages are needed.  The ambient may be a Cayley-table
group (:class:`FiniteGroup`) or a slot-permutation group from
:mod:`towerlab.graphlab.perm`; both expose ``normalizer`` and ``order`` on
their subgroup objects through the two helpers below.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from . import config
from .errors import BudgetExceeded, NotASubgroupError, PreconditionError
from .groups import FiniteGroup, Subgroup, center, normalizer_in
from .tower import Ordinal, TowerRun, compose_maps, run_tower

__all__ = [
    "NormalizerTower",
    "FactReport",
    "normalizer_tower",
    "perm_normalizer_tower",
    "aut_equals_normalizer_check",
    "normalizer_report",
]


@dataclass(frozen=True)
class NormalizerTower:
    ambient: object
    stages: tuple
    height: int

    @property
    def stage_orders(self) -> list[int]:
        return [s.order for s in self.stages]


def _height_bound(order: int) -> float:
    return math.log2(order) + 1 if order > 1 else 1


def normalizer_tower(H: FiniteGroup, G: Subgroup) -> NormalizerTower:
    if G.parent is not H:
        raise NotASubgroupError("G must be a subgroup of the ambient group H")
    if not G.is_subgroup():
        raise NotASubgroupError("member set is not a subgroup")
    stages = [G]
    while True:
        nxt = normalizer_in(H, stages[-1])
        if nxt.members == stages[-1].members:
            break
        stages.append(nxt)
    height = len(stages) - 1
    assert height < _height_bound(H.order)
    return NormalizerTower(H, tuple(stages), height)


def perm_normalizer_tower(ambient, sub, max_steps: Optional[int] = None) -> NormalizerTower:
    """Normalizer tower of a permutation group inside a slot ambient.

    ``ambient`` is a :class:`~towerlab.graphlab.perm.SlotAmbient` and ``sub``
    a :class:`~towerlab.graphlab.perm.PermGroup` contained in it.
    """
    if not ambient.contains_group(sub):
        raise NotASubgroupError("subgroup is not contained in the ambient group")
    stages = [sub]
    while True:
        if max_steps is not None and len(stages) > max_steps:
            partial = NormalizerTower(ambient, tuple(stages), len(stages) - 1)
            raise BudgetExceeded(f"normalizer tower still growing after {max_steps} steps", partial=partial)
        try:
            nxt = ambient.normalizer(stages[-1])
        except BudgetExceeded as exc:
            raise BudgetExceeded(str(exc), partial=NormalizerTower(ambient, tuple(stages), len(stages) - 1)) from None
        if nxt.order == stages[-1].order:
            break
        stages.append(nxt)
    height = len(stages) - 1
    assert height < _height_bound(ambient.order)
    return NormalizerTower(ambient, tuple(stages), height)


@dataclass(frozen=True)
class FactReport:
    passed: bool
    termination: int  # γ, the terminal stage index
    aut_orders: tuple[int, ...]
    normalizer_orders: tuple[int, ...]
    normalizer_height: int
    discrepancy: Optional[int] = None  # first stage where the towers differ

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "termination": self.termination,
            "aut_tower_orders": list(self.aut_orders),
            "normalizer_tower_orders": list(self.normalizer_orders),
            "normalizer_height": self.normalizer_height,
            "first_discrepancy": self.discrepancy,
        }


def aut_equals_normalizer_check(
    G: FiniteGroup,
    max_stages: int = config.DEFAULT_MAX_STAGES,
    run: Optional[TowerRun] = None,
) -> FactReport:
    """Compare the automorphism tower of a centerless G with its normalizer tower.

    Every stage G_α is embedded in the terminal group G_γ through the
    (injective) composed natural maps; the normalizer tower of the image of
    G is computed in G_γ and the two chains are compared as subgroups.
    """
    if center(G).order != 1:
        raise PreconditionError("the comparison needs a centerless group")
    if run is None:
        run = run_tower(G, max_stages=max_stages, max_limits=0)
    if run.status != "terminated" or run.termination is None or run.termination.limit_part != 0:
        raise PreconditionError(f"tower did not terminate within the finite budget ({run.status})")
    gamma = run.termination.finite_part
    top = Ordinal(0, gamma)
    H = run.stage(top)
    embedded = []
    for a in range(gamma + 1):
        emb = compose_maps(run, Ordinal(0, a), top)
        if not emb.is_injective:
            raise AssertionError("natural map of a centerless tower is not injective")
        embedded.append(emb.image_subgroup())
    ntower = normalizer_tower(H, embedded[0])
    nstages = list(ntower.stages)
    discrepancy = None
    for a in range(max(len(nstages), len(embedded))):
        ours = embedded[a] if a < len(embedded) else embedded[-1]
        theirs = nstages[a] if a < len(nstages) else nstages[-1]
        if ours.members != theirs.members:
            discrepancy = a
            break
    return FactReport(
        passed=discrepancy is None,
        termination=gamma,
        aut_orders=tuple(s.order for s in embedded),
        normalizer_orders=tuple(s.order for s in nstages),
        normalizer_height=ntower.height,
        discrepancy=discrepancy,
    )


def normalizer_report(tower: NormalizerTower) -> dict:
    return {
        "ambient_order": tower.ambient.order,
        "stage_orders": tower.stage_orders,
        "members": [list(s.members) for s in tower.stages] if isinstance(tower.ambient, FiniteGroup) else None,
        "height": tower.height,
    }
