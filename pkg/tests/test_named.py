import pytest

from towerlab.errors import GroupSpecError
from towerlab.groups import center, fingerprint
from towerlab.named import construct_named

import oracles


@pytest.mark.parametrize(
    "spec,order",
    [("T", 1), ("C7", 7), ("D8", 8), ("D4", 4), ("Q8", 8), ("Dic12", 12), ("C7:C3", 21),
     ("C5:C4:2", 20), ("S4", 24), ("A5", 60), ("C2xC2xC2", 8), ("S3xS3", 36)],
)
def test_orders(spec, order):
    G = construct_named(spec)
    assert G.order == order
    if order <= 24:
        assert oracles.is_group_table(oracles.rows(G))


@pytest.mark.parametrize("bad", ["", "D7", "D2", "Z4", "C", "S7", "A9", "C2x", "xC2", "C5:C3:2", "Dic6", "S6xS6"])
def test_malformed_specs_rejected(bad):
    with pytest.raises(GroupSpecError):
        construct_named(bad)


def test_dic12_matches_metacyclic_default():
    from towerlab.search import find_isomorphism
    assert find_isomorphism(construct_named("Dic12"), construct_named("C3:C4")) is not None


def test_dihedral_naming_is_by_order():
    D8 = construct_named("D8")
    assert center(D8).order == 2
    assert fingerprint(D8).element_orders.count(4) == 2


def test_missing_file_is_domain_error(tmp_path):
    with pytest.raises(Exception) as exc:
        construct_named(f"file:{tmp_path / 'nope.json'}")
    from towerlab.errors import TowerlabError
    assert isinstance(exc.value, TowerlabError)
