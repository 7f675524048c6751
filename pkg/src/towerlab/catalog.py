"""A curated catalog of small groups and batch tower surveys."""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

from . import config
from .automorphism import is_complete
from .errors import GroupSpecError, OrderCapExceeded, TowerlabError
from .groups import FiniteGroup, Fingerprint, center, fingerprint
from .named import construct_named
from .search import find_isomorphism
from .tower import Ordinal, TowerRun, run_tower

__all__ = [
    "CatalogEntry",
    "SurveyRow",
    "SMALL_ORDER_SPECS",
    "SELECTED_SPECS",
    "catalog_list",
    "survey",
    "survey_table",
    "check_distinct",
]

# Every isomorphism type of order 1..15.
SMALL_ORDER_SPECS: tuple[str, ...] = (
    "T", "C2", "C3", "C4", "C2xC2", "C5", "C6", "S3", "C7",
    "C8", "C4xC2", "C2xC2xC2", "D8", "Q8", "C9", "C3xC3", "C10", "D10", "C11",
    "C12", "C2xC6", "D12", "A4", "C3:C4", "C13", "C14", "D14", "C15",
)

# A hand-picked set of larger groups, mostly centerless.
SELECTED_SPECS: tuple[str, ...] = (
    "D16", "Q8xC2", "C16", "D18", "C3xS3", "C5:C4", "D20", "C7:C3", "D22",
    "S4", "C2xA4", "D24", "D26", "D30", "S3xS3", "C13:C3", "C7:C6", "D42", "D46",
)


@dataclass(frozen=True, eq=False)
class CatalogEntry:
    spec: str
    group: FiniteGroup
    fingerprint: Fingerprint
    abelian: bool
    centerless: bool
    complete: bool

    @property
    def tags(self) -> dict:
        return {"abelian": self.abelian, "centerless": self.centerless, "complete": self.complete}


def _entry(spec: str) -> CatalogEntry:
    G = construct_named(spec)
    try:
        complete = is_complete(G).complete
    except OrderCapExceeded:
        complete = False  # |Aut| above the cap already exceeds |G|
    return CatalogEntry(spec, G, fingerprint(G), G.is_abelian, center(G).order == 1, complete)


_CACHE: dict[str, CatalogEntry] = {}


def catalog_list(max_order: int) -> list[CatalogEntry]:
    """Catalog entries of order at most ``max_order``, by order then listing position."""
    if not 1 <= max_order <= config.MAX_CATALOG_ORDER:
        raise GroupSpecError(f"max_order must be between 1 and {config.MAX_CATALOG_ORDER}")
    out = []
    for spec in SMALL_ORDER_SPECS + SELECTED_SPECS:
        if spec not in _CACHE:
            _CACHE[spec] = _entry(spec)
        if _CACHE[spec].group.order <= max_order:
            out.append(_CACHE[spec])
    out.sort(key=lambda e: e.group.order)  # stable, so listing order breaks ties
    return out


def check_distinct(entries: Sequence[CatalogEntry]) -> list[tuple[str, str]]:
    """Pairs of isomorphic entries (empty when the catalog is sound)."""
    bad = []
    for a, b in itertools.combinations(entries, 2):
        if a.fingerprint == b.fingerprint and find_isomorphism(a.group, b.group) is not None:
            bad.append((a.spec, b.spec))
    return bad


@dataclass(frozen=True)
class SurveyRow:
    spec: str
    order: int
    center_order: int
    status: str
    termination: Optional[Ordinal]
    centerless_onset: Optional[Ordinal]
    period: Optional[tuple[int, int]]
    stage_orders: tuple[tuple[int, ...], ...]
    message: str = ""

    def to_dict(self) -> dict:
        return {
            "spec": self.spec,
            "order": self.order,
            "center_order": self.center_order,
            "status": self.status,
            "termination": self.termination.to_dict() if self.termination else None,
            "termination_label": str(self.termination) if self.termination else None,
            "centerless_onset": str(self.centerless_onset) if self.centerless_onset else None,
            "period": list(self.period) if self.period else None,
            "stage_orders": [list(b) for b in self.stage_orders],
            "message": self.message,
        }


def _row_from_run(spec: str, G: FiniteGroup, run: TowerRun) -> SurveyRow:
    onset = None
    for a in run.ordinals():
        if center(run.stage(a)).order == 1:
            onset = a
            break
    per = run.blocks[0].period if run.blocks else None
    return SurveyRow(
        spec=spec,
        order=G.order,
        center_order=center(G).order,
        status=run.status,
        termination=run.termination,
        centerless_onset=onset,
        period=(per.n, per.m) if per else None,
        stage_orders=tuple(tuple(g.order for g in b.stages) for b in run.blocks),
        message=run.message,
    )


def survey_one(spec: str, max_stages: int = config.DEFAULT_MAX_STAGES, max_limits: int = config.DEFAULT_MAX_LIMITS) -> SurveyRow:
    try:
        G = construct_named(spec)
    except TowerlabError as exc:
        return SurveyRow(spec, 0, 0, "error", None, None, None, (), str(exc))
    try:
        run = run_tower(G, max_stages=max_stages, max_limits=max_limits)
    except OrderCapExceeded as exc:
        run = exc.partial if exc.partial is not None else TowerRun((), "cap-exceeded", message=str(exc))
    except TowerlabError as exc:
        return SurveyRow(spec, G.order, center(G).order, "error", None, None, None, (), str(exc))
    return _row_from_run(spec, G, run)


def _survey_args(args: tuple[str, int, int]) -> SurveyRow:
    return survey_one(*args)


def survey(
    entries: Sequence[CatalogEntry | str],
    max_stages: int = config.DEFAULT_MAX_STAGES,
    max_limits: int = config.DEFAULT_MAX_LIMITS,
    workers: int = 1,
) -> list[SurveyRow]:
    """One row per entry, in input order; errors end up in the row, not raised."""
    specs = [e if isinstance(e, str) else e.spec for e in entries]
    jobs = [(s, max_stages, max_limits) for s in specs]
    if workers <= 1 or len(jobs) <= 1:
        return [_survey_args(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_survey_args, jobs))


_COLUMNS = ("spec", "order", "|Z|", "status", "height", "centerless", "period", "stages")


def survey_table(rows: Sequence[SurveyRow]) -> str:
    """Aligned plain-text table."""
    body = []
    for r in rows:
        body.append((
            r.spec,
            str(r.order),
            str(r.center_order),
            r.status,
            str(r.termination) if r.termination else "-",
            str(r.centerless_onset) if r.centerless_onset else "-",
            f"({r.period[0]},{r.period[1]})" if r.period else "-",
            " | ".join(",".join(map(str, b)) for b in r.stage_orders),
        ))
    widths = [max(len(c), *(len(row[i]) for row in body)) if body else len(c) for i, c in enumerate(_COLUMNS)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(_COLUMNS, widths)).rstrip()]
    for row in body:
        lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
    return "\n".join(lines)
