"""Named group constructors.

Spec grammar (factors joined by ``x`` form a direct product)::

    T               trivial group
    C<n>            cyclic, element k is g^k
    D<n>            dihedral of ORDER n (n even, n >= 4); element i + (n/2)*j is r^i s^j
    Q8              quaternion group, elements 1,-1,i,-i,j,-j,k,-k
    Dic<n>          dicyclic of order n (4 | n, n >= 8); element i + (n/2)*j is a^i x^j
    C<n>:C<m>       C_n ⋊ C_m, the generator b of C_m acting by a -> a^r where r is the
                    smallest unit of largest multiplicative order dividing m
    C<n>:C<m>:<r>   the same with an explicit multiplier r
    S<n>, A<n>      symmetric / alternating on {0..n-1}, n <= 6; permutations in
                    lexicographic one-line order, product (pq)(x) = p(q(x))
    file:<path>     a group JSON file

``D8`` is the dihedral group with eight elements.  In a product ``GxH`` the
pair (a, b) has index a*|H| + b.
"""

from __future__ import annotations

import itertools
import math
import re
from typing import Sequence

import numpy as np

from . import config
from .errors import GroupSpecError
from .groups import FiniteGroup, load_group

__all__ = [
    "construct_named",
    "cyclic",
    "dihedral",
    "quaternion",
    "dicyclic",
    "metacyclic",
    "symmetric",
    "alternating",
    "direct_product",
    "group_from_permutations",
]

MAX_FACTOR_ORDER = 720


def cyclic(n: int) -> FiniteGroup:
    ar = np.arange(n)
    names = ["e"] + ["g" if k == 1 else f"g^{k}" for k in range(1, n)]
    return FiniteGroup.trusted((ar[:, None] + ar[None, :]) % n, names)


def dihedral(n: int) -> FiniteGroup:
    if n < 4 or n % 2:
        raise GroupSpecError(f"D<n> needs an even order n >= 4, got {n}")
    m = n // 2
    table = np.empty((n, n), dtype=np.int64)
    for x in range(n):
        i, a = x % m, x // m
        for y in range(n):
            k, b = y % m, y // m
            table[x, y] = (i + (k if a == 0 else -k)) % m + m * ((a + b) % 2)
    names = [_rs_name(x % m, x // m, "r", "s") for x in range(n)]
    return FiniteGroup.trusted(table, names)


def _rs_name(i: int, j: int, r: str, s: str) -> str:
    parts = []
    if i:
        parts.append(r if i == 1 else f"{r}^{i}")
    if j:
        parts.append(s if j == 1 else f"{s}^{j}")
    return "".join(parts) or "e"


def quaternion() -> FiniteGroup:
    # units as (sign, axis); axis 0 = 1, 1 = i, 2 = j, 3 = k
    mult = {
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }
    elems = [(s, a) for a in range(4) for s in (1, -1)]
    index = {e: i for i, e in enumerate(elems)}
    table = np.empty((8, 8), dtype=np.int64)
    for x, (s1, a1) in enumerate(elems):
        for y, (s2, a2) in enumerate(elems):
            s3, a3 = mult[(a1, a2)]
            table[x, y] = index[(s1 * s2 * s3, a3)]
    names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    return FiniteGroup.trusted(table, names)


def dicyclic(n: int) -> FiniteGroup:
    if n < 8 or n % 4:
        raise GroupSpecError(f"Dic<n> needs n divisible by 4 and n >= 8, got {n}")
    h = n // 2  # order of a
    m = n // 4
    table = np.empty((n, n), dtype=np.int64)
    for x in range(n):
        i, j = x % h, x // h
        for y in range(n):
            k, l = y % h, y // h
            if j == 0:
                e, f = i + k, l
            else:
                e, f = i - k, 1 + l
                if f == 2:
                    e, f = e + m, 0
            table[x, y] = e % h + h * f
    names = [_rs_name(x % h, x // h, "a", "x") for x in range(n)]
    return FiniteGroup.trusted(table, names)


def _default_multiplier(n: int, m: int) -> int:
    best, best_order = 1, 1
    for r in range(2, n):
        if math.gcd(r, n) != 1 or pow(r, m, n) != 1:
            continue
        k, acc = 1, r
        while acc != 1:
            acc = acc * r % n
            k += 1
        if k > best_order:
            best, best_order = r, k
    return best


def metacyclic(n: int, m: int, r: int | None = None) -> FiniteGroup:
    if n < 1 or m < 1:
        raise GroupSpecError("C<n>:C<m> needs positive n and m")
    if r is None:
        r = _default_multiplier(n, m)
    r %= n if n > 1 else 1
    if n > 1 and (math.gcd(r, n) != 1 or pow(r, m, n) != 1 % n):
        raise GroupSpecError(f"multiplier {r} is not a unit of order dividing {m} mod {n}")
    order = n * m
    rpow = [pow(r, j, n) if n > 1 else 0 for j in range(m)]
    table = np.empty((order, order), dtype=np.int64)
    for x in range(order):
        i, j = x % n, x // n
        for y in range(order):
            k, l = y % n, y // n
            table[x, y] = (i + rpow[j] * k) % n + n * ((j + l) % m)
    names = [_rs_name(x % n, x // n, "a", "b") for x in range(order)]
    return FiniteGroup.trusted(table, names)


def group_from_permutations(perms: Sequence[Sequence[int]]) -> FiniteGroup:
    """The group of the given permutations (closed under composition), in lex order."""
    elems = sorted(set(tuple(p) for p in perms))
    index = {p: i for i, p in enumerate(elems)}
    n = len(elems)
    arr = np.asarray(elems, dtype=np.int64)
    table = np.empty((n, n), dtype=np.int64)
    for i in range(n):
        comp = arr[i][arr]  # row j is p_i ∘ p_j
        table[i] = [index[tuple(c)] for c in comp.tolist()]
    names = [_cycle_name(p) for p in elems]
    return FiniteGroup.trusted(table, names)


def _cycle_name(p: Sequence[int]) -> str:
    seen, cycles = set(), []
    for start in range(len(p)):
        if start in seen or p[start] == start:
            continue
        cyc, x = [], start
        while x not in seen:
            seen.add(x)
            cyc.append(str(x))
            x = p[x]
        cycles.append("(" + " ".join(cyc) + ")")
    return "".join(cycles) or "()"


def _parity(p: Sequence[int]) -> int:
    return sum(1 for a, b in itertools.combinations(range(len(p)), 2) if p[a] > p[b]) % 2


def symmetric(n: int) -> FiniteGroup:
    if not 1 <= n <= config.MAX_SYMMETRIC_DEGREE:
        raise GroupSpecError(f"S<n> supports 1 <= n <= {config.MAX_SYMMETRIC_DEGREE}")
    return group_from_permutations(list(itertools.permutations(range(n))))


def alternating(n: int) -> FiniteGroup:
    if not 1 <= n <= config.MAX_SYMMETRIC_DEGREE:
        raise GroupSpecError(f"A<n> supports 1 <= n <= {config.MAX_SYMMETRIC_DEGREE}")
    return group_from_permutations([p for p in itertools.permutations(range(n)) if _parity(p) == 0])


def direct_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    m = H.order
    n = G.order * m
    ar = np.arange(n)
    a, b = ar // m, ar % m
    table = G.table[a[:, None], a[None, :]] * m + H.table[b[:, None], b[None, :]]
    names = None
    if G.names is not None and H.names is not None:
        names = [f"({G.names[x]},{H.names[y]})" for x, y in zip(a.tolist(), b.tolist())]
    return FiniteGroup.trusted(table, names)


_FACTOR = re.compile(
    r"^(?:(?P<T>T)|Q8|C(?P<cn>\d+):C(?P<cm>\d+)(?::(?P<cr>\d+))?|(?P<fam>Dic|C|D|S|A)(?P<n>\d+))$"
)


def _factor(spec: str) -> FiniteGroup:
    m = _FACTOR.match(spec)
    if not m:
        raise GroupSpecError(f"malformed group spec {spec!r}")
    if m.group("T"):
        return cyclic(1)
    if spec == "Q8":
        return quaternion()
    if m.group("cn"):
        n, k = int(m.group("cn")), int(m.group("cm"))
        if n * k > MAX_FACTOR_ORDER:
            raise GroupSpecError(f"{spec}: order {n * k} out of supported range")
        r = int(m.group("cr")) if m.group("cr") else None
        return metacyclic(n, k, r)
    fam, n = m.group("fam"), int(m.group("n"))
    if fam in ("S", "A"):
        return symmetric(n) if fam == "S" else alternating(n)
    if not 1 <= n <= MAX_FACTOR_ORDER:
        raise GroupSpecError(f"{spec}: order {n} out of supported range")
    if fam == "C":
        return cyclic(n)
    if fam == "D":
        return dihedral(n)
    return dicyclic(n)


def construct_named(spec: str) -> FiniteGroup:
    """Build a group from a spec string (see the module docstring)."""
    spec = spec.strip()
    if spec.startswith("file:"):
        return load_group(spec[5:])
    if not spec:
        raise GroupSpecError("empty group spec")
    parts = spec.split("x")
    if any(not p for p in parts):
        raise GroupSpecError(f"malformed group spec {spec!r}")
    groups = [_factor(p) for p in parts]
    if len(groups) == 1:
        return groups[0]
    total = math.prod(g.order for g in groups)
    if total > config.MAX_PRODUCT_ORDER:
        raise GroupSpecError(f"{spec}: direct products are capped at order {config.MAX_PRODUCT_ORDER}")
    out = groups[0]
    for g in groups[1:]:
        out = direct_product(out, g)
    return out
