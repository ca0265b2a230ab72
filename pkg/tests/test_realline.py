import random
from fractions import Fraction as F

import pytest

from topomodal.errors import RegionError
from topomodal.realline import (
    EMPTY, FULL, Iv, Pt, Region, bool_op, comb, normalize, operator_apply,
    parse_region, render_region,
)

from .generators import random_region


def region(text: str) -> Region:
    return parse_region(text)


def test_normalize_merges_adjacent():
    assert normalize([Iv(F(0), F(1), False, False), Iv(F(1), F(2), True, False)]) == region("(0,2)")
    assert normalize(
        [Iv(F(0), F(1), False, False), Pt(F(1)), Iv(F(1), F(2), False, False)]
    ) == region("(0,2)")
    assert normalize([Iv(F(3), F(3), True, True)]) == Region.point(3)


def test_normalize_rejects_malformed():
    with pytest.raises(RegionError, match="lower endpoint"):
        normalize([Iv(F(2), F(1), False, False)])
    with pytest.raises(RegionError, match="empty interval"):
        normalize([Iv(F(1), F(1), True, False)])
    with pytest.raises(RegionError, match="exclusive"):
        normalize([Iv(None, F(0), True, False)])


def test_normalize_idempotent_and_order_insensitive():
    rng = random.Random(11)
    for _ in range(300):
        r = random_region(rng)
        assert normalize(r.components) == r
        shuffled = list(r.components)
        rng.shuffle(shuffled)
        assert normalize(shuffled) == r


def test_bool_op_examples():
    assert bool_op("complement", region("(0,inf)")) == region("(-inf,0]")
    assert bool_op("intersect", region("(0,2)"), region("(1,3)")) == region("(1,2)")
    assert bool_op("complement", region("{0}")) == region("(-inf,0) u (0,inf)")
    assert bool_op("union", region("(0,1)"), region("[1,2)")) == region("(0,2)")
    assert bool_op("difference", region("(0,3)"), region("[1,2]")) == region("(0,1) u (2,3)")
    with pytest.raises(ValueError):
        bool_op("union", region("(0,1)"))
    with pytest.raises(ValueError):
        bool_op("xor", region("(0,1)"), region("(0,1)"))


def test_boolean_laws_random():
    rng = random.Random(12)
    for _ in range(300):
        a, b = random_region(rng), random_region(rng)
        assert a.complement().complement() == a
        assert a.union(b) == b.union(a)
        assert a.intersect(b) == b.intersect(a)
        assert a.union(b).complement() == a.complement().intersect(b.complement())
        assert a.difference(b) == a.intersect(b.complement())
        assert a.union(EMPTY) == a
        assert a.intersect(FULL) == a


def test_operator_examples():
    assert operator_apply("d", region("(0,1) u {2}")) == region("[0,1]")
    assert operator_apply("i", region("[0,1]")) == region("(0,1)")
    assert operator_apply("p", region("(-inf,0) u (0,inf)")) == FULL
    assert operator_apply("d", EMPTY) == EMPTY
    assert operator_apply("d", region("{1} u {2} u {3}")) == EMPTY
    assert operator_apply("c", region("(0,1)")) == region("[0,1]")
    with pytest.raises(ValueError):
        operator_apply("q", EMPTY)


def test_interior_vs_punctured_interior():
    # 1 is missing from the region yet has a punctured neighborhood inside it.
    r = region("(0,1) u (1,2)")
    assert r.punctured_interior() == region("(0,2)")
    assert r.interior() == r


def test_derivative_axioms_random():
    rng = random.Random(13)
    for _ in range(500):
        a, b = random_region(rng), random_region(rng)
        assert a.union(b).derivative() == a.derivative().union(b.derivative())
        da = a.derivative()
        assert da.derivative().union(a.union(da)) == a.union(da)  # ddA <= A u dA
        assert da.derivative().union(da) == da  # T1 regression: ddA <= dA
        assert a.punctured_interior() == a.complement().derivative().complement()
        assert a.interior() == a.intersect(a.punctured_interior())
        assert a.closure() == a.union(da)
        assert a.closure() == a.complement().interior().complement()


def test_comb_examples():
    assert comb(0, 1) == region("(1/8,1/4) u (1/2,1)")
    assert comb(0, 0) == region("(1/2,1)")
    assert comb(1, 1) == region("(1/32,1/16) u (1/8,1/4)")
    with pytest.raises(ValueError):
        comb(0, -1)


def test_comb_accumulates_toward_zero():
    prev_low = None
    for k in range(0, 6):
        r = comb(0, k)
        low = r.components[0].lo
        assert low == F(1, 2 ** (2 * k + 1))
        if prev_low is not None:
            assert low < prev_low
        prev_low = low
    assert not comb(0, 50).contains(0)


def test_classify_examples():
    assert region("(-inf,0) u (0,inf)").classify() == ("co_singleton", F(0))
    assert region("{5}").classify() == ("singleton", F(5))
    assert region("(0,1)").classify() == ("other", None)
    assert EMPTY.classify() == ("empty", None)
    assert FULL.classify() == ("full", None)
    assert region("(-inf,0) u (1,inf)").classify() == ("other", None)
    assert region("(-inf,0) u {0} u (0,inf)").classify() == ("full", None)


def test_contains():
    r = region("[0,1) u {2}")
    assert r.contains(0)
    assert r.contains(F(1, 2))
    assert not r.contains(1)
    assert r.contains(2)
    assert not r.contains(3)
    assert FULL.contains(F(-7, 3))
    assert not EMPTY.contains(0)


def test_text_round_trip():
    texts = [
        "empty", "R", "(0,1]", "{2}", "(-inf,0) u (0,inf)",
        "(1/8,1/4) u (1/2,1)", "[-3/4,0] u (1,inf)",
    ]
    for text in texts:
        assert render_region(parse_region(text)) == text
    rng = random.Random(14)
    for _ in range(300):
        r = random_region(rng)
        assert parse_region(render_region(r)) == r


def test_parse_region_errors():
    for bad in ["(1,", "(2,1)", "[inf,3)", "{inf}", "(0,1) u", "<0,1>", "(1,2,3)"]:
        with pytest.raises(RegionError):
            parse_region(bad)


def test_parse_region_renormalizes():
    assert parse_region("(1,2) u (0,1) u {1}") == region("(0,2)")
