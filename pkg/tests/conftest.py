import pytest

from gradalg.cocycles import enumerate_cocycle_classes
from gradalg.groups import FiniteGroup, build_group, dihedral_table


@pytest.fixture(scope="session")
def z4():
    return FiniteGroup.cyclic(4)


@pytest.fixture(scope="session")
def z10():
    return FiniteGroup.cyclic(10)


@pytest.fixture(scope="session")
def klein():
    return FiniteGroup.product([FiniteGroup.cyclic(2), FiniteGroup.cyclic(2)])


@pytest.fixture(scope="session")
def klein_classes(klein):
    return enumerate_cocycle_classes(klein.full_subgroup())


@pytest.fixture(scope="session")
def d4():
    return build_group({"kind": "table", "table": dihedral_table(4),
                        "name": "D4"})
