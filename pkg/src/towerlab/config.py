"""Size caps and default budgets.

Every cap lives here so it can be adjusted in one place.
"""

from __future__ import annotations

import os

# Largest base group (and largest resulting Aut group) the engine will build.
DEFAULT_MAX_AUT_ORDER = 512

# Named-constructor limits.
MAX_SYMMETRIC_DEGREE = 6
MAX_PRODUCT_ORDER = 200

# Catalog and graph limits.
MAX_CATALOG_ORDER = 48
MAX_GRAPH_VERTICES = 64

# Exhaustive slot-group scans above this many elements switch to backtracking.
NORMALIZER_SCAN_LIMIT = 50_000
# Largest permutation group materialised element-by-element.
MAX_PERM_GROUP_ORDER = 500_000

DEFAULT_MAX_STAGES = 16
DEFAULT_MAX_LIMITS = 4


def max_aut_order() -> int:
    """Aut order cap, overridable through ``TOWERLAB_MAX_ORDER``."""
    raw = os.environ.get("TOWERLAB_MAX_ORDER")
    if raw is None or raw.strip() == "":
        return DEFAULT_MAX_AUT_ORDER
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"TOWERLAB_MAX_ORDER must be an integer, got {raw!r}") from None
    if value < 1:
        raise ValueError("TOWERLAB_MAX_ORDER must be positive")
    return value
