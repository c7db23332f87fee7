"""
Shared fixtures: the standard classified sets and the L ⊑ H poset
"""
import pytest

from classified.models.cset import ClassifiedSet, LabelUniverse
from classified.models.element import Atom
from classified.models.poset import SecurityPoset
from classified.services.category_service import CategoryService
from classified.services.poset_service import PosetService


@pytest.fixture
def universe() -> LabelUniverse:
    return LabelUniverse.of(["L", "H"])


@pytest.fixture
def delta_bool(universe) -> ClassifiedSet:
    return CategoryService.delta_bool(universe)


@pytest.fixture
def nabla_bool(universe) -> ClassifiedSet:
    return CategoryService.nabla_bool(universe)


@pytest.fixture
def unit(universe) -> ClassifiedSet:
    return CategoryService.terminal(universe)


@pytest.fixture
def empty(universe) -> ClassifiedSet:
    return CategoryService.initial(universe)


@pytest.fixture
def poset() -> SecurityPoset:
    return PosetService.load_poset_file(None)


@pytest.fixture
def chain_xyz() -> ClassifiedSet:
    """Three atoms over {L} with a related to b only"""
    a, b, c = Atom("a"), Atom("b"), Atom("c")
    return ClassifiedSet.make(LabelUniverse.of(["L"]), [a, b, c], {"L": {(a, b)}})
