import pytest

from clusteraut.automorphisms import aut_group
from clusteraut.groups import (
    FiniteGroup,
    GroupTooLarge,
    are_isomorphic,
    cyclic,
    direct_product,
    dihedral,
    identify_group,
    semidirect_check,
    symmetric3,
)
from clusteraut.quiver import Quiver, linear_a
from clusteraut.seeds import explore


@pytest.mark.parametrize("m", [1, 2, 5, 8])
def test_cyclic(m):
    g = cyclic(m)
    g.check_axioms()
    assert g.is_abelian() and max(g.element_orders()) == m


@pytest.mark.parametrize("m", [3, 4, 6])
def test_dihedral_has_order_2m(m):
    g = dihedral(m)
    g.check_axioms()
    assert g.order == 2 * m and not g.is_abelian()
    assert g.element_orders().count(2) == m + (1 if m % 2 == 0 else 0)


def test_identification_names():
    assert identify_group(cyclic(6)).matches == ["Z6", "Z3×Z2"]
    assert identify_group(dihedral(3)).matches == ["D3", "S3"]
    assert identify_group(cyclic(2)).name == "Z2"
    assert "D4×Z2" in identify_group(direct_product(dihedral(4), cyclic(2))).matches
    assert not are_isomorphic(dihedral(4), direct_product(cyclic(4), cyclic(2)))
    assert are_isomorphic(symmetric3(), dihedral(3))


def test_bound_and_invalid_tables():
    with pytest.raises(GroupTooLarge):
        identify_group(cyclic(30), bound=20)
    with pytest.raises(ValueError):
        FiniteGroup([[0, 1], [0, 1]])
    with pytest.raises(ValueError):
        semidirect_check(cyclic(4), [0])


def test_a3_group_splits_over_direct_part():
    grp = aut_group(explore(linear_a(3)))
    assert grp.order == 12
    assert identify_group(grp.group).name == "D6"
    assert identify_group(grp.direct_group()).matches[0] == "Z6"
    rep = semidirect_check(grp.group, grp.direct)
    assert rep.split and not rep.direct
    assert grp.group.element_order(rep.witness) == 2 and rep.witness not in grp.direct


def test_a1_group_is_all_direct():
    grp = aut_group(explore(Quiver.empty(1)))
    assert grp.order == 2 and grp.index == 1
    with pytest.raises(ValueError):
        semidirect_check(grp.group, grp.direct)
