"""Automorphism groups as concrete finite groups.

The search walks a stabilizer chain along the minimal generating tuple
``(g_0, ..., g_{d-1})``.  Level ``i`` looks for automorphisms that fix
``g_0..g_{i-1}`` and move ``g_i``; a candidate image already in the orbit of
``g_i`` under the automorphisms found so far is skipped, since its coset is
already known.  The group order is the product of the orbit lengths, which
lets the cap be enforced before anything is materialised.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Optional

import numpy as np

from . import config
from .errors import OrderCapExceeded
from .groups import FiniteGroup, Homomorphism, center
from .search import ImageSearch

__all__ = ["AutGroup", "Completeness", "automorphism_group", "inner_homomorphism", "is_complete", "aut_to_json"]


@dataclass(frozen=True, eq=False)
class AutGroup:
    """Aut(base) as an abstract group plus the map it realizes on ``base``.

    ``realization[i]`` is the image table of automorphism ``i``.  Products
    follow composition: ``realization[table[i, j]] == realization[i][realization[j]]``,
    i.e. automorphism j is applied first.  Numbering is canonical: rows
    sorted lexicographically, which puts the identity at 0.
    """

    group: FiniteGroup
    realization: np.ndarray
    base: FiniteGroup
    base_gens: tuple[int, ...]

    @cached_property
    def _index(self) -> dict[bytes, int]:
        keys = np.ascontiguousarray(self.realization[:, list(self.base_gens)])
        return {keys[i].tobytes(): i for i in range(len(keys))}

    def index_of(self, images) -> int:
        """Index of the automorphism with the given full image table."""
        arr = np.ascontiguousarray(np.asarray(images, dtype=np.int64)[list(self.base_gens)])
        return self._index[arr.tobytes()]

    @property
    def order(self) -> int:
        return self.group.order


@dataclass(frozen=True)
class Completeness:
    complete: bool
    center_order: int
    outer_index: int


def _orbit(point: int, gens: list[list[int]]) -> set[int]:
    seen = {point}
    todo = [point]
    for x in todo:
        for g in gens:
            y = g[x]
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return seen


def automorphism_generators(G: FiniteGroup, max_order: Optional[int] = None) -> tuple[list[list[int]], int, tuple[int, ...]]:
    """Generators of Aut(G), its order, and the generating tuple of G used."""
    cap = config.max_aut_order() if max_order is None else max_order
    if G.order > cap:
        raise OrderCapExceeded(f"group of order {G.order} exceeds the Aut cap {cap}")
    search = ImageSearch(G, G)
    gens = search.gens
    found: list[list[int]] = []
    deeper = 1
    for i in reversed(range(len(gens))):
        prefix = list(gens[:i])
        orbit = _orbit(gens[i], found)
        for y in search.candidates(i, prefix).tolist():
            if y in orbit:
                continue
            phi = search.first(prefix + [y])
            if phi is None:
                continue
            found.append(phi)
            orbit = _orbit(gens[i], found)
            if len(orbit) * deeper > cap:
                raise OrderCapExceeded(f"Aut of a group of order {G.order} has more than {cap} elements")
        deeper *= len(orbit)
    return found, deeper, gens


def automorphism_group(G: FiniteGroup, max_order: Optional[int] = None) -> AutGroup:
    """The full automorphism group of G, canonically numbered."""
    found, order, gens = automorphism_generators(G, max_order)
    n = G.order
    gidx = list(gens)
    ident = np.arange(n, dtype=np.int64)
    elems = [ident]
    seen = {ident[gidx].tobytes()}
    gen_arrays = [np.asarray(f, dtype=np.int64) for f in found]
    for e in elems:
        for s in gen_arrays:
            c = e[s]
            key = c[gidx].tobytes()
            if key not in seen:
                seen.add(key)
                elems.append(c)
    if len(elems) != order:
        raise AssertionError(f"closure gave {len(elems)} automorphisms, chain predicted {order}")
    real = np.stack(elems) if elems else ident[None, :]
    real = real[np.lexsort(real.T[::-1])]
    m = len(real)
    keys = np.ascontiguousarray(real[:, gidx])
    index = {keys[i].tobytes(): i for i in range(m)}
    table = np.empty((m, m), dtype=np.int64)
    for i in range(m):
        comp = np.ascontiguousarray(real[i][keys])  # images of gens under real_i ∘ real_j
        table[i] = [index[row.tobytes()] for row in comp]
    real.setflags(write=False)
    return AutGroup(FiniteGroup.trusted(table), real, G, tuple(gens))


def inner_homomorphism(A: AutGroup) -> Homomorphism:
    """The natural map g -> (h -> g h g^-1) from the base into A."""
    G = A.base
    conj = G.conjugation
    image = [A.index_of(conj[g]) for g in range(G.order)]
    pi = Homomorphism.make(G, A.group, image)
    if pi.kernel().members != center(G).members:
        raise AssertionError("kernel of the natural map differs from the center")
    return pi


def is_complete(G: FiniteGroup, max_order: Optional[int] = None) -> Completeness:
    """Centerless with every automorphism inner.

    The trivial group counts as complete: its natural map is an isomorphism.
    """
    z = center(G).order
    _, aut_order, _ = automorphism_generators(G, max_order)
    inner = G.order // z
    return Completeness(complete=(z == 1 and aut_order == inner), center_order=z, outer_index=aut_order // inner)


def aut_to_json(A: AutGroup) -> dict:
    return {
        "order": A.group.order,
        "table": A.group.table.tolist(),
        "realization": A.realization.tolist(),
    }


def aut_order(G: FiniteGroup, max_order: Optional[int] = None) -> int:
    return automorphism_generators(G, max_order)[1]
