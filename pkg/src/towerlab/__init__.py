"""Automorphism towers, normalizer towers and boxed wreath constructions for small finite groups."""

from .automorphism import AutGroup, automorphism_group, inner_homomorphism, is_complete
from .catalog import CatalogEntry, SurveyRow, catalog_list, survey
from .errors import (
    BudgetExceeded,
    GraphError,
    GroupSpecError,
    InvalidGroupError,
    NotASubgroupError,
    OrderCapExceeded,
    PreconditionError,
    TowerlabError,
)
from .groups import (
    FiniteGroup,
    Homomorphism,
    Subgroup,
    center,
    centralizer_in,
    fingerprint,
    from_cayley_table,
    minimal_generating_set,
    normalizer_in,
    subgroup_generated,
)
from .named import construct_named
from .normtower import NormalizerTower, aut_equals_normalizer_check, normalizer_tower
from .search import find_isomorphism
from .tower import Ordinal, TowerRun, compose_maps, run_tower, vanishing_spectrum

__version__ = "0.1.0"

__all__ = [
    "AutGroup",
    "BudgetExceeded",
    "CatalogEntry",
    "FiniteGroup",
    "GraphError",
    "GroupSpecError",
    "Homomorphism",
    "InvalidGroupError",
    "NormalizerTower",
    "NotASubgroupError",
    "OrderCapExceeded",
    "Ordinal",
    "PreconditionError",
    "Subgroup",
    "SurveyRow",
    "TowerRun",
    "TowerlabError",
    "aut_equals_normalizer_check",
    "automorphism_group",
    "catalog_list",
    "center",
    "centralizer_in",
    "compose_maps",
    "construct_named",
    "find_isomorphism",
    "fingerprint",
    "from_cayley_table",
    "inner_homomorphism",
    "is_complete",
    "minimal_generating_set",
    "normalizer_in",
    "normalizer_tower",
    "run_tower",
    "subgroup_generated",
    "survey",
    "vanishing_spectrum",
]
