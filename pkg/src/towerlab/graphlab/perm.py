"""Permutation groups on slots and normalizers inside a product of symmetric groups.

A :class:`SlotAmbient` is the group of all permutations of ``range(degree)``
that preserve a coloring of the points (the direct product of the symmetric
groups on the color classes).  Normalizers inside it are found either by
scanning every ambient element, for small ambients, or by a backtrack search
over point images along a stabilizer chain.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional, Sequence

import numpy as np

from .. import config
from ..errors import BudgetExceeded
from ..groups import FiniteGroup
from ..named import group_from_permutations

__all__ = ["PermGroup", "SlotAmbient"]


def _as_perm(p: Sequence[int], degree: int) -> tuple[int, ...]:
    t = tuple(int(x) for x in p)
    if len(t) != degree or sorted(t) != list(range(degree)):
        raise ValueError(f"{list(p)} is not a permutation of {degree} points")
    return t


@dataclass(frozen=True, eq=False)
class PermGroup:
    """A permutation group given by generators; elements are materialised on demand."""

    degree: int
    gens: tuple[tuple[int, ...], ...]

    @classmethod
    def generated(cls, degree: int, gens: Iterable[Sequence[int]]) -> "PermGroup":
        ident = tuple(range(degree))
        clean = sorted({_as_perm(g, degree) for g in gens} - {ident})
        return cls(degree, tuple(clean))

    @classmethod
    def from_elements(cls, degree: int, elements: np.ndarray) -> "PermGroup":
        """Wrap a known, closed element list; a small generating set is picked greedily."""
        elements = np.asarray(elements, dtype=np.int64).reshape(-1, degree)
        elements = elements[np.lexsort(elements.T[::-1])]
        gens: list[tuple[int, ...]] = []
        have = {tuple(range(degree))}
        for row in elements.tolist():
            t = tuple(row)
            if t in have:
                continue
            gens.append(t)
            have = set(_closure(degree, gens, None))
            if len(have) == len(elements):
                break
        grp = cls(degree, tuple(gens))
        elements.setflags(write=False)
        grp.__dict__["elements"] = elements
        return grp

    @cached_property
    def elements(self) -> np.ndarray:
        """All elements, sorted lexicographically (identity first)."""
        elems = _closure(self.degree, self.gens, config.MAX_PERM_GROUP_ORDER)
        arr = np.asarray(sorted(elems), dtype=np.int64).reshape(len(elems), self.degree)
        arr.setflags(write=False)
        return arr

    @property
    def order(self) -> int:
        return len(self.elements)

    @cached_property
    def _keys(self) -> frozenset:
        return frozenset(map(tuple, self.elements.tolist()))

    def __contains__(self, p) -> bool:
        return tuple(int(x) for x in p) in self._keys

    def same_elements(self, other: "PermGroup") -> bool:
        return self.degree == other.degree and self.order == other.order and self._keys == other._keys

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return all(g in other for g in self.gens)

    def orbits(self) -> list[list[int]]:
        seen, out = set(), []
        for p in range(self.degree):
            if p in seen:
                continue
            orb = _orbit(p, self.gens)
            seen |= orb
            out.append(sorted(orb))
        return out

    def as_finite_group(self) -> FiniteGroup:
        return group_from_permutations(self.elements.tolist())


def _closure(degree: int, gens: Sequence[Sequence[int]], cap: Optional[int]) -> set[tuple[int, ...]]:
    ident = tuple(range(degree))
    seen = {ident}
    todo = [ident]
    for x in todo:
        for g in gens:
            y = tuple(g[i] for i in x)  # g ∘ x
            if y not in seen:
                seen.add(y)
                todo.append(y)
                if cap is not None and len(seen) > cap:
                    raise BudgetExceeded(f"permutation group has more than {cap} elements")
    return seen


def _orbit(p: int, gens: Sequence[Sequence[int]]) -> set[int]:
    seen = {p}
    todo = [p]
    for x in todo:
        for g in gens:
            y = g[x]
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return seen


def _inverse(p: Sequence[int]) -> list[int]:
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return inv


class SlotAmbient:
    """All permutations of ``range(len(classes))`` preserving ``classes``."""

    def __init__(self, classes: Sequence[int], scan_limit: int = config.NORMALIZER_SCAN_LIMIT):
        self.classes = tuple(int(c) for c in classes)
        self.degree = len(self.classes)
        self.scan_limit = scan_limit
        groups: dict[int, list[int]] = {}
        for p, c in enumerate(self.classes):
            groups.setdefault(c, []).append(p)
        self.cells = [groups[c] for c in sorted(groups)]

    @property
    def order(self) -> int:
        return math.prod(math.factorial(len(c)) for c in self.cells)

    def contains(self, p: Sequence[int]) -> bool:
        return all(self.classes[p[i]] == self.classes[i] for i in range(self.degree))

    def contains_group(self, K: PermGroup) -> bool:
        return K.degree == self.degree and all(self.contains(g) for g in K.gens)

    def generators(self) -> list[tuple[int, ...]]:
        """Adjacent transpositions inside every class."""
        out = []
        for cell in self.cells:
            for a, b in zip(cell, cell[1:]):
                p = list(range(self.degree))
                p[a], p[b] = b, a
                out.append(tuple(p))
        return out

    def as_group(self) -> PermGroup:
        return PermGroup.generated(self.degree, self.generators())

    def iter_elements(self) -> np.ndarray:
        """Every ambient element as rows of one array (scan path only)."""
        if self.order > self.scan_limit:
            raise BudgetExceeded(f"ambient of order {self.order} is above the scan limit {self.scan_limit}")
        rows = []
        per_cell = [list(itertools.permutations(c)) for c in self.cells]
        for choice in itertools.product(*per_cell):
            p = list(range(self.degree))
            for cell, img in zip(self.cells, choice):
                for a, b in zip(cell, img):
                    p[a] = b
            rows.append(p)
        return np.asarray(rows, dtype=np.int64).reshape(len(rows), self.degree)

    def normalizer(self, K: PermGroup, method: str = "auto") -> PermGroup:
        if method == "auto":
            method = "scan" if self.order <= self.scan_limit else "backtrack"
        if method == "scan":
            return self._normalizer_scan(K)
        if method == "backtrack":
            return _Backtrack(self, K).run()
        raise ValueError(f"unknown normalizer method {method!r}")

    def _normalizer_scan(self, K: PermGroup) -> PermGroup:
        P = self.iter_elements()
        Pinv = np.argsort(P, axis=1)
        keep = np.ones(len(P), dtype=bool)
        for k in K.gens:
            k = np.asarray(k)
            # (g k g^-1)(x) = g(k(g^-1(x)))
            conj = np.take_along_axis(P, k[Pinv], axis=1)
            keep &= np.fromiter((tuple(r) in K._keys for r in conj.tolist()), dtype=bool, count=len(P))
        return PermGroup.from_elements(self.degree, P[keep])


class _Backtrack:
    """Stabilizer-chain search for N_ambient(K).

    Points are visited in a fixed base order.  Level ``i`` (processed from
    the last point back to the first) looks for normalizer elements fixing
    base[:i] pointwise and moving base[i]; images already in the orbit of
    base[i] under the elements found so far are skipped.  Inside one search,
    a boolean mask per generator k of K tracks which elements of K are still
    consistent with the partial map g k g^-1; an empty mask prunes the node.
    """

    def __init__(self, ambient: SlotAmbient, K: PermGroup):
        self.amb = ambient
        self.n = ambient.degree
        self.E = K.elements
        self.kgens = [list(g) for g in K.gens]
        self.kinv = [_inverse(g) for g in self.kgens]
        self.base = self._base_order(K)
        self.cls = ambient.classes

    def _base_order(self, K: PermGroup) -> list[int]:
        # breadth-first within each orbit so neighbours under K's generators come early
        out, seen = [], set()
        for orb in sorted(K.orbits(), key=lambda o: (-len(o), o[0])):
            queue = [orb[0]]
            seen.add(orb[0])
            for x in queue:
                out.append(x)
                for g in self.kgens:
                    y = g[x]
                    if y not in seen:
                        seen.add(y)
                        queue.append(y)
        return out

    def run(self) -> PermGroup:
        found: list[list[int]] = []
        for lvl in reversed(range(self.n)):
            p = self.base[lvl]
            fixed = set(self.base[:lvl])
            orbit = _orbit(p, found)
            for j in range(self.n):
                if j == p or j in fixed or self.cls[j] != self.cls[p] or j in orbit:
                    continue
                g = self._search(lvl, j)
                if g is not None:
                    found.append(g)
                    orbit = _orbit(p, found)
        return PermGroup.generated(self.n, found)

    def _assign(self, img, masks, q, v):
        """Set g(q) = v and narrow the masks; ``None`` when some mask empties."""
        img[q] = v
        E = self.E
        out = []
        for k, kinv, mask in zip(self.kgens, self.kinv, masks):
            m = mask
            kq = img[k[q]]
            if kq >= 0:
                m = m & (E[:, v] == kq)
            p = kinv[q]
            if p != q and img[p] >= 0:
                m = m & (E[:, img[p]] == v)
            if not m.any():
                return None
            out.append(m)
        return out

    def _search(self, lvl: int, j: int) -> Optional[list[int]]:
        n = self.n
        img = [-1] * n
        used = [False] * n
        masks = [np.ones(len(self.E), dtype=bool) for _ in self.kgens]
        for q in self.base[:lvl]:
            masks = self._assign(img, masks, q, q)
            if masks is None:
                return None
            used[q] = True
        p = self.base[lvl]
        masks = self._assign(img, masks, p, j)
        if masks is None:
            return None
        used[j] = True
        rest = self.base[lvl + 1:]

        def candidates(q, masks):
            for k, kinv, m in zip(self.kgens, self.kinv, masks):
                src = kinv[q]
                if src != q and img[src] >= 0:
                    vals = np.unique(self.E[m, img[src]]).tolist()
                    return [v for v in vals if not used[v] and self.cls[v] == self.cls[q]]
            return [v for v in range(n) if not used[v] and self.cls[v] == self.cls[q]]

        def rec(i, masks):
            if i == len(rest):
                return list(img)
            q = rest[i]
            for v in candidates(q, masks):
                saved = list(img)
                nm = self._assign(img, masks, q, v)
                if nm is not None:
                    used[v] = True
                    got = rec(i + 1, nm)
                    if got is not None:
                        return got
                    used[v] = False
                img[:] = saved
            return None

        return rec(0, masks)
