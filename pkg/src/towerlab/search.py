"""Backtracking over images of a generating tuple.

A homomorphism out of ``G`` is pinned down by where it sends a generating
tuple.  Candidate images are filtered by element invariants and by the
invariants of a few short two-letter words before the map is extended over
the whole group and checked.
"""

from __future__ import annotations

from typing import Callable, Optional, Sequence

import numpy as np

from .groups import FiniteGroup, Homomorphism, element_invariants, fingerprint, minimal_generating_set


_WORDS = (
    lambda t, inv, x, ys: t[x, ys],  # ab
    lambda t, inv, x, ys: t[x, inv[ys]],  # ab^-1
    lambda t, inv, x, ys: t[t[x, x], ys],  # a^2 b
    lambda t, inv, x, ys: t[x, t[ys, ys]],  # a b^2
    lambda t, inv, x, ys: t[t[x, ys], t[inv[x], inv[ys]]],  # [a, b]
)


class ImageSearch:
    """Enumerate generator images from ``source`` into ``target``.

    Only bijective homomorphisms are accepted, which is all the callers
    (automorphism and isomorphism search) need.
    """

    def __init__(self, source: FiniteGroup, target: FiniteGroup, gens: Optional[Sequence[int]] = None):
        self.src = source
        self.dst = target
        self.gens = tuple(minimal_generating_set(source) if gens is None else gens)
        self.inv_src = element_invariants(source)
        self.inv_dst = self.inv_src if target is source else element_invariants(target)
        self.cands = [np.flatnonzero(self.inv_dst == self.inv_src[g]) for g in self.gens]
        ts, isv = source.table, source.inverses
        # reference word invariants for each ordered pair of generators (a < b)
        self.ref = {}
        for b in range(len(self.gens)):
            for a in range(b):
                yb = np.asarray([self.gens[b]])
                self.ref[a, b] = [int(self.inv_src[w(ts, isv, self.gens[a], yb)[0]]) for w in _WORDS]

    def candidates(self, level: int, images: Sequence[int]) -> np.ndarray:
        ys = self.cands[level]
        td, idv = self.dst.table, self.dst.inverses
        for a, x in enumerate(images[:level]):
            if len(ys) == 0:
                break
            for w, r in zip(_WORDS, self.ref[a, level]):
                ys = ys[self.inv_dst[w(td, idv, x, ys)] == r]
        return ys

    def extend(self, images: Sequence[int], upto: Optional[int] = None) -> Optional[list[int]]:
        """Extend generator images to a map on ``<gens[:upto]>``.

        Returns the image list (``-1`` off the subgroup) or ``None`` when the
        images are inconsistent or the map is not injective.
        """
        k = len(self.gens) if upto is None else upto
        gens, imgs = self.gens[:k], [int(v) for v in images[:k]]
        rs, rd = self.src.rows, self.dst.rows
        phi = [-1] * self.src.order
        phi[0] = 0
        queue = [0]
        pairs = list(zip(gens, imgs))
        for x in queue:
            rowx = rs[x]
            rowp = rd[phi[x]]
            for g, h in pairs:
                y = rowx[g]
                v = rowp[h]
                py = phi[y]
                if py < 0:
                    phi[y] = v
                    queue.append(y)
                elif py != v:
                    return None
        if len({phi[q] for q in queue}) != len(queue):
            return None
        return phi

    def first(self, prefix: Sequence[int], accept: Optional[Callable[[list[int]], bool]] = None) -> Optional[list[int]]:
        """Depth-first search for one bijection whose generator images start with ``prefix``."""
        d = len(self.gens)
        images = [int(v) for v in prefix]

        def rec(level: int) -> Optional[list[int]]:
            if level == d:
                phi = self.extend(images)
                if phi is None or (accept is not None and not accept(phi)):
                    return None
                return phi
            for y in self.candidates(level, images).tolist():
                images.append(y)
                ok = True
                if 0 < level < d - 1:
                    ok = self.extend(images, level + 1) is not None
                if ok:
                    found = rec(level + 1)
                    if found is not None:
                        return found
                images.pop()
            return None

        if images and self.extend(images, len(images)) is None:
            return None
        return rec(len(images))


def find_isomorphism(G: FiniteGroup, H: FiniteGroup) -> Optional[Homomorphism]:
    """One isomorphism G -> H, or ``None``.

    Equal tables give the identity map.  Otherwise generator images are
    tried in ascending index order along G's minimal generating set and the
    first bijective homomorphism found is returned, so the witness is
    reproducible.
    """
    if G.order != H.order:
        return None
    if G is H or G.same_table(H):
        return Homomorphism.identity(G) if G is H else Homomorphism.make(G, H, np.arange(G.order))
    if fingerprint(G) != fingerprint(H):
        return None
    search = ImageSearch(G, H)
    if np.any(np.sort(search.inv_src) != np.sort(search.inv_dst)):
        return None
    phi = search.first([])
    if phi is None:
        return None
    return Homomorphism.make(G, H, phi)
