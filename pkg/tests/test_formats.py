import random
import string

import pytest

from oracles import random_database, random_taxonomy_set
from taxrules.core import AssociationRule, MiningParams, RuleSet, Side
from taxrules.formats import (
    FormatWarning,
    ParseError,
    export_borgelt_rules,
    import_borgelt_rules,
    parse_generalized,
    parse_ruleset,
    parse_taxonomies,
    parse_transactions,
    write_generalized,
    write_ruleset,
    write_taxonomies,
    write_transactions,
)
from taxrules.generalize import generalize
from taxrules.taxonomy import TaxonomyError


def test_parse_transactions_basic():
    db = parse_transactions("a b c\nb c\n")
    assert len(db) == 2
    assert db.transactions[0].items == ("a", "b", "c")


def test_parse_transactions_dedup_warning():
    with pytest.warns(FormatWarning):
        db = parse_transactions("# comment\na a b\n")
    assert len(db) == 1
    assert db.transactions[0].items == ("a", "b")


def test_parse_transactions_clothing(clothing_db):
    assert len(clothing_db) == 7
    # hand count over the 7 baskets: cap, jacket, sandal, short, slipper, t-shirt
    assert len(clothing_db.item_universe) == 6


def test_parse_transactions_edge_separators():
    db = parse_transactions("  a\t\tb  \n\n")
    assert db.transactions[0].items == ("a", "b")


def test_parse_taxonomies_basic():
    taxes = parse_taxonomies("= clothes\nt-shirt\tlight_clothes\nshort\tlight_clothes\n")
    assert len(taxes) == 1
    assert taxes.taxonomies[0].internal_nodes == {"light_clothes"}
    assert taxes.taxonomies[0].name == "clothes"


def test_parse_taxonomies_empty():
    assert len(parse_taxonomies("")) == 0


def test_parse_taxonomies_disjointness_error():
    text = "= one\na\tp\n= two\na\tq\n"
    with pytest.raises(TaxonomyError):
        parse_taxonomies(text)


def test_parse_taxonomies_malformed_line():
    with pytest.raises(ParseError) as e:
        parse_taxonomies("= t\nchild parent-with-no-tab\n")
    assert e.value.line == 2


def test_borgelt_import():
    rs = import_borgelt_rules("cap <- short slipper (12.5, 66.7)\n")
    (r,) = rs.rules
    assert r.key == ((("short", "slipper")), ("cap",))
    assert r.support == pytest.approx(0.125)
    assert r.confidence == pytest.approx(0.667)


def test_borgelt_missing_measures_warns():
    with pytest.warns(FormatWarning):
        rs = import_borgelt_rules("x <- y\n")
    (r,) = rs.rules
    assert r.support is None and r.confidence is None


def test_borgelt_rejects_garbage():
    with pytest.raises(ParseError):
        import_borgelt_rules("this is not a rule line\n")
    with pytest.raises(ParseError):
        import_borgelt_rules("x <- y (1, 2, 3)\n")


def test_borgelt_round_trip():
    rng = random.Random(8)
    for _ in range(50):
        rules = []
        seen = set()
        for _ in range(rng.randint(1, 8)):
            lhs = tuple(sorted(rng.sample(string.ascii_lowercase, rng.randint(1, 3))))
            rhs = tuple(
                sorted(set(rng.sample(string.ascii_uppercase, rng.randint(1, 2))))
            )
            if (lhs, rhs) in seen:
                continue
            seen.add((lhs, rhs))
            # dyadic fractions survive the *100 / 100 percentage round-trip
            sup = rng.randrange(0, 65) / 64
            conf = rng.randrange(0, 65) / 64
            rules.append(AssociationRule(lhs, rhs, sup, conf))
        rs = RuleSet(tuple(rules))
        assert import_borgelt_rules(export_borgelt_rules(rs)) == rs


def test_ruleset_doc_round_trip(clothing_rules):
    rs = RuleSet(clothing_rules.rules, mining_params=MiningParams(0.5, 0.5, 5))
    text = write_ruleset(rs)
    assert parse_ruleset(text) == rs
    assert write_ruleset(parse_ruleset(text)) == text


def test_ruleset_doc_kind_checked(clothing_rules):
    with pytest.raises(ParseError):
        parse_generalized(write_ruleset(clothing_rules))


def test_generalized_doc_round_trip(clothing_rules, clothing_taxes, clothing_db):
    gs = generalize(clothing_rules, clothing_taxes, Side.LHS, db=clothing_db)
    text = write_generalized(gs)
    parsed = parse_generalized(text)
    assert parsed.rules == gs.rules
    assert parsed.side == gs.side
    assert parsed.options == gs.options
    assert parsed.taxonomy_set == gs.taxonomy_set
    assert write_generalized(parsed) == text


def test_generalized_doc_fig2_shape(clothing_rules, clothing_taxes):
    gs = generalize(clothing_rules, clothing_taxes, Side.LHS)
    text = write_generalized(gs)
    parsed = parse_generalized(text)
    assert len(parsed) == 1
    assert len(parsed.rules[0].sources) == 4


def test_empty_generalized_doc():
    gs = generalize(RuleSet(()), parse_taxonomies(""), Side.LHS)
    parsed = parse_generalized(write_generalized(gs))
    assert len(parsed) == 0


def test_transactions_round_trip():
    rng = random.Random(21)
    for _ in range(50):
        db = random_database(rng, [f"i{k}" for k in range(8)], rng.randint(1, 10))
        text = write_transactions(db)
        assert parse_transactions(text).transactions == db.transactions
        assert write_transactions(parse_transactions(text)) == text


def test_taxonomy_round_trip():
    rng = random.Random(34)
    for _ in range(50):
        taxes = random_taxonomy_set(rng, [f"i{k}" for k in range(8)])
        text = write_taxonomies(taxes)
        assert parse_taxonomies(text) == taxes
        assert write_taxonomies(parse_taxonomies(text)) == text


@pytest.mark.parametrize(
    "parser", [parse_transactions, parse_taxonomies, import_borgelt_rules, parse_ruleset, parse_generalized]
)
def test_parsers_total_over_garbage(parser):
    import warnings

    rng = random.Random(55)
    for _ in range(200):
        blob = "".join(chr(rng.randrange(0, 0x2FF)) for _ in range(rng.randint(0, 80)))
        try:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", FormatWarning)
                parser(blob)
        except (ParseError, ValueError):
            pass  # structured failure is the contract; anything else is a bug
