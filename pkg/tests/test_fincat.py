from itertools import product as iproduct

import pytest

from qcatlab.fincat import (
    FinCategory,
    Functor,
    SizeCapError,
    chain_poset,
    compose_functors,
    diamond_poset,
    discrete_category,
    enumerate_functors,
    functor_category,
    identity_functor,
    opposite_category,
    poset_category,
    poset_le,
    product_category,
    terminal_category,
    validate_category,
    validate_functor,
    validate_nat_transf,
)


def brute_force_functor_count(d, c):
    """Independent oracle: enumerate all raw table pairs and filter by the axioms."""
    count = 0
    dom_objs = list(d.objects)
    dom_mors = sorted(d.morphisms)
    for objs in iproduct(c.objects, repeat=len(dom_objs)):
        omap = dict(zip(dom_objs, objs))
        for mors in iproduct(sorted(c.morphisms), repeat=len(dom_mors)):
            mmap = dict(zip(dom_mors, mors))
            if validate_functor(Functor(d, c, omap, mmap)).ok:
                count += 1
    return count


def test_chain_poset_is_valid_category():
    c = chain_poset(["a", "b", "c"])
    assert validate_category(c).ok


def test_diamond_is_valid_category():
    assert validate_category(diamond_poset()).ok


def test_nonassociative_table_reports_triple():
    # one object, two non-identity endos with a deliberately bad composite
    morphisms = {"i": ("o", "o"), "f": ("o", "o"), "g": ("o", "o")}
    comp = {}
    for a in morphisms:
        comp[(a, "i")] = a
        comp[("i", a)] = a
    comp[("f", "f")] = "g"
    comp[("f", "g")] = "f"
    comp[("g", "f")] = "i"
    comp[("g", "g")] = "g"
    c = FinCategory(["o"], morphisms, {"o": "i"}, comp)
    report = validate_category(c)
    assert not report.ok
    assert any(v[0] == "associativity" for v in report.violations)


def test_missing_identity_reported():
    c = FinCategory(["o"], {"f": ("o", "o")}, {}, {("f", "f"): "f"})
    report = validate_category(c)
    assert not report.ok
    assert ("missing-identity", "o") in report.violations


def test_functor_category_interval_into_chain2():
    # monotone maps [1] -> {0<1}: 00, 01, 11
    interval = chain_poset(["0", "1"], name="[1]")
    result = functor_category(interval, chain_poset(["0", "1"]))
    assert len(result.category.objects) == 3
    assert validate_category(result.category).ok


def test_functor_category_terminal_gives_iso_copy():
    c = diamond_poset()
    result = functor_category(terminal_category(), c)
    assert len(result.category.objects) == len(c.objects)
    assert len(result.category.morphisms) == len(c.morphisms)


def test_functor_category_interval_squared():
    interval = chain_poset(["0", "1"], name="[1]")
    result = functor_category(interval, interval)
    assert len(result.category.objects) == 3
    # poset-shaped: at most one morphism between any two objects
    for a in result.category.objects:
        for b in result.category.objects:
            assert len(result.category.hom(a, b)) <= 1


@pytest.mark.parametrize(
    "d,c",
    [
        (chain_poset(["0", "1"]), chain_poset(["0", "1"])),
        (chain_poset(["0", "1"]), chain_poset(["a", "b", "c"])),
        (discrete_category(["p", "q"]), diamond_poset()),
    ],
)
def test_functor_count_matches_brute_force(d, c):
    assert len(enumerate_functors(d, c)) == brute_force_functor_count(d, c)


def test_opposite_is_involution_on_the_nose():
    c = chain_poset(["a", "b", "c"])
    assert opposite_category(opposite_category(c)) == c


def test_opposite_diamond_swaps_top_and_bottom():
    c = diamond_poset()
    op = opposite_category(c)
    assert validate_category(op).ok
    # bot was the least element; in the opposite it is the greatest
    assert all(poset_le(op, o, "bot") for o in op.objects)
    assert all(poset_le(op, "top", o) for o in op.objects)


def test_product_of_chain2s_has_four_objects():
    c = chain_poset(["0", "1"])
    result = product_category(c, c)
    assert len(result.category.objects) == 4
    assert validate_category(result.category).ok
    assert validate_functor(result.proj1).ok
    assert validate_functor(result.proj2).ok


def test_functor_category_size_cap():
    big = discrete_category([str(i) for i in range(8)])
    with pytest.raises(SizeCapError):
        functor_category(big, big, cap=10)


def test_nat_transf_validation():
    interval = chain_poset(["0", "1"], name="[1]")
    c = chain_poset(["a", "b", "c"])
    fs = enumerate_functors(interval, c)
    ident = identity_functor(c)
    assert validate_functor(ident).ok
    assert validate_functor(compose_functors(ident, fs[0])).ok
    # components that do not even have the right endpoints are rejected
    from qcatlab.fincat import NatTransf

    f = next(x for x in fs if x.object_map == {"0": "a", "1": "b"})
    g = next(x for x in fs if x.object_map == {"0": "b", "1": "c"})
    good = NatTransf(f, g, {"0": "a<=b", "1": "b<=c"})
    assert validate_nat_transf(good).ok
    bad = NatTransf(f, g, {"0": "a<=a", "1": "b<=c"})
    assert not validate_nat_transf(bad).ok


def test_poset_category_transitive_closure():
    c = poset_category(["p", "q", "r"], [("p", "q"), ("q", "r")])
    assert "p<=r" in c.morphisms
    assert validate_category(c).ok
