"""Finite groups stored as Cayley tables over element indices.

Index 0 is always the identity.  ``table[i, j]`` is the index of the product
``g_i * g_j``.  Tables are numpy arrays marked read-only after construction;
hot loops use the cached list-of-lists copy in :attr:`FiniteGroup.rows`.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import InvalidGroupError, NotASubgroupError

__all__ = [
    "FiniteGroup",
    "Subgroup",
    "Homomorphism",
    "Fingerprint",
    "from_cayley_table",
    "center",
    "centralizer_in",
    "normalizer_in",
    "subgroup_generated",
    "fingerprint",
    "minimal_generating_set",
    "element_invariants",
    "group_to_json",
    "group_from_json",
    "load_group",
]


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = np.ascontiguousarray(arr, dtype=np.int64)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    order: int
    table: np.ndarray
    names: Optional[tuple[str, ...]] = None

    @classmethod
    def trusted(cls, table, names: Optional[Sequence[str]] = None) -> "FiniteGroup":
        """Wrap a table already known to be a group table (no validation)."""
        table = _frozen(np.asarray(table))
        return cls(int(table.shape[0]), table, tuple(names) if names is not None else None)

    def __repr__(self) -> str:
        return f"FiniteGroup(order={self.order})"

    @cached_property
    def rows(self) -> list[list[int]]:
        return self.table.tolist()

    @cached_property
    def inverses(self) -> np.ndarray:
        inv = np.argmin(self.table, axis=1)  # the column holding 0 in each row
        return _frozen(inv)

    @cached_property
    def element_orders(self) -> np.ndarray:
        n = self.order
        idx = np.arange(n)
        orders = np.zeros(n, dtype=np.int64)
        cur = idx.copy()
        k = 1
        while True:
            hit = (cur == 0) & (orders == 0)
            orders[hit] = k
            if orders.all():
                break
            cur = self.table[cur, idx]
            k += 1
        return _frozen(orders)

    @cached_property
    def conjugation(self) -> np.ndarray:
        """``conjugation[g, h]`` is the index of ``g h g^-1``."""
        return _frozen(self.table[self.table, self.inverses[:, None]])

    @cached_property
    def class_sizes(self) -> np.ndarray:
        """Size of the conjugacy class of each element."""
        s = np.sort(self.conjugation, axis=0)
        return _frozen(1 + (np.diff(s, axis=0) != 0).sum(axis=0))

    @cached_property
    def is_abelian(self) -> bool:
        return bool((self.table == self.table.T).all())

    def mul(self, a: int, b: int) -> int:
        return self.rows[a][b]

    def inv(self, a: int) -> int:
        return int(self.inverses[a])

    def power(self, a: int, k: int) -> int:
        k %= int(self.element_orders[a])
        out = 0
        for _ in range(k):
            out = self.rows[out][a]
        return out

    def name(self, i: int) -> str:
        return self.names[i] if self.names is not None else str(i)

    def same_table(self, other: "FiniteGroup") -> bool:
        return self.order == other.order and bool((self.table == other.table).all())

    def validate(self) -> None:
        """Raise :class:`InvalidGroupError` unless the table is a group table."""
        _validate_table(self.table)


def _validate_table(t: np.ndarray) -> None:
    n = t.shape[0]
    if t.ndim != 2 or t.shape != (n, n) or n == 0:
        raise InvalidGroupError("table must be a non-empty square array")
    if t.min() < 0 or t.max() >= n:
        raise InvalidGroupError("table entries out of range")
    ar = np.arange(n)
    if not ((t[0] == ar).all() and (t[:, 0] == ar).all()):
        raise InvalidGroupError("identity is not at index 0")
    srt = np.sort(t, axis=1)
    if not (srt == ar).all() or not (np.sort(t, axis=0) == ar[:, None]).all():
        raise InvalidGroupError("table is not a Latin square")
    for i in range(n):
        # (g_i g_j) g_k  versus  g_i (g_j g_k)
        if not (t[t[i]] == t[i][t]).all():
            raise InvalidGroupError("table is not associative")


def from_cayley_table(order: int, table, names: Optional[Sequence[str]] = None) -> FiniteGroup:
    """Build a group from a raw table, checking every group axiom eagerly."""
    try:
        arr = np.asarray(table, dtype=np.int64)
    except (TypeError, ValueError):
        raise InvalidGroupError("table must be a rectangular integer array") from None
    if order < 1:
        raise InvalidGroupError("order must be positive")
    if arr.shape != (order, order):
        raise InvalidGroupError(f"table shape {arr.shape} does not match order {order}")
    _validate_table(arr)
    if names is not None:
        names = [str(x) for x in names]
        if len(names) != order:
            raise InvalidGroupError("names must have one entry per element")
    return FiniteGroup.trusted(arr, names)


@dataclass(frozen=True, eq=False)
class Subgroup:
    parent: FiniteGroup
    members: tuple[int, ...]

    @classmethod
    def of(cls, parent: FiniteGroup, members: Iterable[int]) -> "Subgroup":
        return cls(parent, tuple(sorted(set(int(m) for m in members))))

    @property
    def order(self) -> int:
        return len(self.members)

    @cached_property
    def mask(self) -> np.ndarray:
        m = np.zeros(self.parent.order, dtype=bool)
        m[list(self.members)] = True
        return m

    def __contains__(self, item: int) -> bool:
        return bool(self.mask[item])

    def __len__(self) -> int:
        return len(self.members)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.parent is other.parent and self.members == other.members

    def __hash__(self) -> int:
        return hash((id(self.parent), self.members))

    def __repr__(self) -> str:
        return f"Subgroup(order={self.order} of {self.parent.order})"

    def is_subgroup(self) -> bool:
        idx = np.asarray(self.members)
        if 0 not in self.members:
            return False
        prods = self.parent.table[np.ix_(idx, idx)]
        return bool(self.mask[prods].all() and self.mask[self.parent.inverses[idx]].all())

    def as_group(self) -> tuple[FiniteGroup, np.ndarray]:
        """The subgroup as a standalone group plus the embedding into the parent.

        Members keep their ascending order, so the identity stays at index 0.
        """
        idx = np.asarray(self.members, dtype=np.int64)
        pos = np.full(self.parent.order, -1, dtype=np.int64)
        pos[idx] = np.arange(len(idx))
        table = pos[self.parent.table[np.ix_(idx, idx)]]
        names = None
        if self.parent.names is not None:
            names = [self.parent.names[i] for i in idx]
        return FiniteGroup.trusted(table, names), idx


@dataclass(frozen=True, eq=False)
class Homomorphism:
    source: FiniteGroup
    target: FiniteGroup
    image: np.ndarray

    @classmethod
    def make(cls, source: FiniteGroup, target: FiniteGroup, image) -> "Homomorphism":
        return cls(source, target, _frozen(np.asarray(image)))

    @classmethod
    def identity(cls, group: FiniteGroup) -> "Homomorphism":
        return cls.make(group, group, np.arange(group.order))

    def __call__(self, g: int) -> int:
        return int(self.image[g])

    def __repr__(self) -> str:
        return f"Homomorphism({self.source.order} -> {self.target.order})"

    def is_homomorphism(self) -> bool:
        s, t, im = self.source, self.target, self.image
        if im.shape != (s.order,) or im[0] != 0:
            return False
        return bool((im[s.table] == t.table[im[:, None], im[None, :]]).all())

    def kernel(self) -> Subgroup:
        return Subgroup(self.source, tuple(np.flatnonzero(self.image == 0).tolist()))

    def image_subgroup(self) -> Subgroup:
        return Subgroup(self.target, tuple(np.unique(self.image).tolist()))

    @property
    def is_injective(self) -> bool:
        return len(np.unique(self.image)) == self.source.order

    @property
    def is_surjective(self) -> bool:
        return len(np.unique(self.image)) == self.target.order

    @property
    def is_bijective(self) -> bool:
        return self.is_injective and self.source.order == self.target.order

    def then(self, other: "Homomorphism") -> "Homomorphism":
        """``other ∘ self``."""
        if other.source is not self.target:
            raise ValueError("composition requires matching intermediate group")
        return Homomorphism.make(self.source, other.target, other.image[self.image])

    def inverse(self) -> "Homomorphism":
        if not self.is_bijective:
            raise ValueError("only bijective homomorphisms have inverses")
        inv = np.empty_like(self.image)
        inv[self.image] = np.arange(self.source.order)
        return Homomorphism.make(self.target, self.source, inv)


@dataclass(frozen=True)
class Fingerprint:
    order: int
    abelian: bool
    center_order: int
    element_orders: tuple[int, ...]
    class_sizes: tuple[int, ...]

    def to_dict(self) -> dict:
        return {
            "order": self.order,
            "abelian": self.abelian,
            "center_order": self.center_order,
            "element_orders": list(self.element_orders),
            "class_sizes": list(self.class_sizes),
        }


def _check_sub(G: FiniteGroup, S: Subgroup) -> None:
    if S.parent is not G and not (S.parent.same_table(G)):
        raise NotASubgroupError("subgroup belongs to a different group")
    if not S.is_subgroup():
        raise NotASubgroupError("member set is not closed under products and inverses")


def center(G: FiniteGroup) -> Subgroup:
    t = G.table
    central = (t == t.T).all(axis=1)
    return Subgroup(G, tuple(np.flatnonzero(central).tolist()))


def centralizer_in(G: FiniteGroup, S: Subgroup) -> Subgroup:
    _check_sub(G, S)
    idx = np.asarray(S.members)
    t = G.table
    ok = (t[:, idx] == t[idx, :].T).all(axis=1)
    return Subgroup(G, tuple(np.flatnonzero(ok).tolist()))


def normalizer_in(G: FiniteGroup, S: Subgroup) -> Subgroup:
    """All g with g S g^-1 = S, found by scanning G.

    Only generators of S need checking; conjugation is a bijection, so
    mapping a generating set into S maps S onto S.
    """
    _check_sub(G, S)
    gens = greedy_generators(G, S.members)
    ok = np.ones(G.order, dtype=bool)
    for s in gens:
        ok &= S.mask[G.conjugation[:, s]]
    return Subgroup(G, tuple(np.flatnonzero(ok).tolist()))


def _closure(G: FiniteGroup, gens: Sequence[int], stop_above: Optional[int] = None) -> list[int]:
    rows = G.rows
    seen = [False] * G.order
    seen[0] = True
    out = [0]
    for x in out:
        row = rows[x]
        for g in gens:
            y = row[g]
            if not seen[y]:
                seen[y] = True
                out.append(y)
        if stop_above is not None and len(out) > stop_above:
            break
    return out


def greedy_generators(G: FiniteGroup, members: Iterable[int]) -> list[int]:
    """A (not necessarily minimal) generating list for the subgroup ``members``."""
    gens: list[int] = []
    span = {0}
    for m in members:
        if m not in span:
            gens.append(int(m))
            span = set(_closure(G, gens))
    return gens


def subgroup_generated(G: FiniteGroup, gens: Iterable[int]) -> Subgroup:
    gens = [int(g) for g in gens]
    for g in gens:
        if not 0 <= g < G.order:
            raise IndexError(f"element {g} out of range for group of order {G.order}")
    return Subgroup.of(G, _closure(G, gens))


def element_invariants(G: FiniteGroup) -> np.ndarray:
    """Per-element integer code preserved by every isomorphism.

    Combines element order, conjugacy-class size and the number of square
    and cube roots.
    """
    n = G.order
    ar = np.arange(n)
    sq = G.table[ar, ar]
    cube = G.table[sq, ar]
    sq_roots = np.bincount(sq, minlength=n)
    cube_roots = np.bincount(cube, minlength=n)
    base = n + 1
    return G.element_orders + base * (G.class_sizes + base * (sq_roots + base * cube_roots))


def fingerprint(G: FiniteGroup) -> Fingerprint:
    return Fingerprint(
        order=G.order,
        abelian=G.is_abelian,
        center_order=center(G).order,
        element_orders=tuple(sorted(G.element_orders.tolist())),
        class_sizes=tuple(sorted(G.class_sizes.tolist())),
    )


def _conjugacy_classes_of_cyclic(G: FiniteGroup) -> list[int]:
    """One generator per conjugacy class of cyclic subgroups, by (-order, index)."""
    orders = G.element_orders
    covered = np.zeros(G.order, dtype=bool)
    reps = []
    for g in sorted(range(1, G.order), key=lambda x: (-int(orders[x]), x)):
        if covered[g]:
            continue
        reps.append(g)
        # every generator of every conjugate of <g>
        cyc = _closure(G, [g])
        gens_of_cyc = [c for c in cyc if orders[c] == orders[g]]
        for c in gens_of_cyc:
            covered[G.conjugation[:, c]] = True
    return reps


def minimal_generating_set(G: FiniteGroup) -> tuple[int, ...]:
    """A generating set of minimum size.

    Sizes are tried in increasing order.  Up to conjugation, the first
    generator can be taken from a list of representatives of conjugacy
    classes of cyclic subgroups, so the search fixes it to those
    representatives; the rest range over all elements.  Both lists are
    ordered by descending element order, then ascending index, and the first
    generating tuple found is returned.
    """
    n = G.order
    if n == 1:
        return ()
    orders = G.element_orders
    for g in range(1, n):
        if orders[g] == n:
            return (g,)
    reps = _conjugacy_classes_of_cyclic(G)
    pool = sorted(range(1, n), key=lambda x: (-int(orders[x]), x))
    half = n // 2
    for k in itertools.count(2):
        for first in reps:
            inside = set(_closure(G, [first]))
            rest = [x for x in pool if x not in inside]
            for others in itertools.combinations(rest, k - 1):
                gens = (first, *others)
                if len(_closure(G, gens, stop_above=half)) > half:
                    return gens
    raise AssertionError("unreachable")


def group_to_json(G: FiniteGroup) -> dict:
    d = {"order": G.order, "table": G.table.tolist()}
    if G.names is not None:
        d["names"] = list(G.names)
    return d


def group_from_json(data: dict) -> FiniteGroup:
    if not isinstance(data, dict) or "order" not in data or "table" not in data:
        raise InvalidGroupError('group JSON needs "order" and "table" keys')
    return from_cayley_table(int(data["order"]), data["table"], data.get("names"))


def load_group(path) -> FiniteGroup:
    try:
        with open(Path(path), encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InvalidGroupError(f"cannot read group file {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InvalidGroupError(f"group file {path} is not valid JSON: {exc.msg}") from None
    return group_from_json(data)
