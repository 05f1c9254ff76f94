import pytest

from taxrules.core import AssociationRule, RuleSet
from taxrules.formats import parse_transactions
from taxrules.taxonomy import TaxonomySet, build_taxonomy

# The worked clothing example used throughout: four rules sharing the
# consequent `cap`, plus two small taxonomies over clothes and shoes.

CLOTHING_DB_TEXT = """\
t-shirt slipper cap
short slipper cap
sandal short cap
sandal t-shirt cap
slipper t-shirt cap
cap jacket
t-shirt sandal
"""


@pytest.fixture
def clothing_rules() -> RuleSet:
    return RuleSet(
        (
            AssociationRule(("short", "slipper"), ("cap",)),
            AssociationRule(("sandal", "short"), ("cap",)),
            AssociationRule(("sandal", "t-shirt"), ("cap",)),
            AssociationRule(("slipper", "t-shirt"), ("cap",)),
        )
    )


@pytest.fixture
def clothes_taxonomy():
    return build_taxonomy(
        [("t-shirt", "light_clothes"), ("short", "light_clothes")], "clothes"
    )


@pytest.fixture
def shoes_taxonomy():
    return build_taxonomy(
        [("slipper", "light_shoes"), ("sandal", "light_shoes")], "shoes"
    )


@pytest.fixture
def clothing_taxes(clothes_taxonomy, shoes_taxonomy) -> TaxonomySet:
    return TaxonomySet((clothes_taxonomy, shoes_taxonomy))


@pytest.fixture
def clothing_db():
    return parse_transactions(CLOTHING_DB_TEXT)
