import random
from fractions import Fraction as F

import pytest

from topomodal.errors import GuardError, UnboundVariableError
from topomodal.formula import (
    All, And, CDia, DBox, DDia, DiffBox, IBox, KUR, BOX_KUR, KUR_IDIFF, Not,
    Or, Var, parse,
)
from topomodal.realline import comb, parse_region
from topomodal.semantics import (
    FiniteCarrier, Model, RealCarrier, equiv_classes_up_to, evaluate,
    model_from_dict, model_to_dict, point_validity, satisfies, valid_on_space,
)
from topomodal.topology import (
    discrete, empty_space, is_homeomorphic, pseudo_line, sierpinski,
)

from .generators import random_formula, random_space, random_valuation


def real_model(**regions) -> Model:
    return Model(RealCarrier(), {v: parse_region(t) for v, t in regions.items()})


def finite_model(space, **val) -> Model:
    return Model(FiniteCarrier(space), {v: frozenset(s) for v, s in val.items()})


def test_eval_real_examples():
    m = real_model(p="(0,1) u (1,2)")
    assert evaluate(m, parse("[d]p")) == parse_region("(0,2)")
    assert evaluate(m, parse("[i]p")) == parse_region("(0,1) u (1,2)")
    m = real_model(p="(-inf,5) u (5,inf)")
    assert evaluate(m, parse("[!=]p")) == parse_region("{5}")
    assert evaluate(m, parse("[A]p")) == parse_region("empty")
    assert evaluate(m, parse("<E>p")) == parse_region("R")


def test_eval_finite_examples():
    m = finite_model(sierpinski(), p={"b"})
    assert evaluate(m, parse("[d]p")) == frozenset({"a"})
    assert evaluate(m, parse("true")) == frozenset({"a", "b"})
    assert evaluate(m, parse("false")) == frozenset()
    assert evaluate(m, parse("p -> false")) == frozenset({"a"})


def test_eval_unbound_variable():
    m = finite_model(sierpinski(), p={"b"})
    with pytest.raises(UnboundVariableError, match="q"):
        evaluate(m, parse("p & q"))


def test_difference_clause_matches_definition():
    # [!=]phi holds at x iff the extension of phi plus x covers the space.
    rng = random.Random(21)
    for _ in range(150):
        s = random_space(rng, max_points=4)
        val = random_valuation(rng, s, ("p",))
        m = Model(FiniteCarrier(s), val)
        got = evaluate(m, parse("[!=]p"))
        expected = frozenset(
            x for x in s.points if val["p"] | {x} == s.full_set
        )
        assert got == expected


def test_universal_clause_matches_definition():
    rng = random.Random(22)
    for _ in range(150):
        s = random_space(rng, max_points=4)
        val = random_valuation(rng, s, ("p",))
        m = Model(FiniteCarrier(s), val)
        got = evaluate(m, parse("[A]p"))
        assert got == (s.full_set if val["p"] == s.full_set else frozenset())


def test_box_clauses_agree_with_operators():
    rng = random.Random(23)
    for _ in range(100):
        s = random_space(rng)
        val = random_valuation(rng, s, ("p", "q"))
        m = Model(FiniteCarrier(s), val)
        f = random_formula(rng, 3, var_pool=("p", "q"))
        ext = evaluate(m, f)
        assert evaluate(m, DBox(f)) == s.punctured_interior(ext)
        assert evaluate(m, DDia(f)) == s.derivative(ext)
        assert evaluate(m, IBox(f)) == s.interior(ext)
        assert evaluate(m, CDia(f)) == s.closure(ext)


def test_defined_modality_identities():
    rng = random.Random(24)
    for _ in range(150):
        s = random_space(rng)
        val = random_valuation(rng, s, ("p", "q"))
        m = Model(FiniteCarrier(s), val)
        f = random_formula(rng, 3, var_pool=("p", "q"))
        assert evaluate(m, All(f)) == evaluate(m, And(f, DiffBox(f)))
        assert evaluate(m, IBox(f)) == evaluate(m, And(f, DBox(f)))
        assert evaluate(m, CDia(f)) == evaluate(m, Or(f, Not(DBox(Not(f)))))


def test_defined_modality_identities_real_carrier():
    m = real_model(p="(0,1) u {2}", q="[1,3)")
    for f in [parse("p"), parse("p & ~q"), parse("[i]p | q"), parse("[!=]p")]:
        assert evaluate(m, All(f)) == evaluate(m, And(f, DiffBox(f)))
        assert evaluate(m, IBox(f)) == evaluate(m, And(f, DBox(f)))
        assert evaluate(m, CDia(f)) == evaluate(m, Or(f, Not(DBox(Not(f)))))


def test_satisfies_examples():
    plm = finite_model(pseudo_line(), p={"l"})
    assert not satisfies(plm, "m", KUR)
    assert satisfies(plm, "l", KUR)
    assert satisfies(plm, "m", parse("true"))
    m = Model(RealCarrier(), {"p": comb(0, 2)})
    assert not satisfies(m, F(1, 8), KUR)
    assert satisfies(m, F(3, 16), KUR)


def test_valid_on_space_examples():
    r = valid_on_space(discrete(["a", "b"]), parse("[d]false"))
    assert r.valid and r.valuations_total == 1

    r = valid_on_space(sierpinski(), KUR)
    assert r.valid and r.valuations_total == 4

    r = valid_on_space(pseudo_line(), KUR)
    assert not r.valid
    assert r.countermodel == {"p": frozenset({"l"})}
    assert r.refuting_point == "m"
    assert r.valuations_checked == 2  # all-empty first, then the least failing one
    assert r.recheck(pseudo_line())

    r = valid_on_space(pseudo_line(), BOX_KUR)
    assert r.valid and r.valuations_total == 8


def test_validity_guard():
    with pytest.raises(GuardError):
        valid_on_space(discrete(list("abcde")), KUR_IDIFF, max_bits=8)
    # and the override allows it
    assert valid_on_space(discrete(["a", "b"]), KUR_IDIFF, max_bits=8).valid


def test_point_validity_examples():
    assert point_validity(pseudo_line(), "l", KUR).valid
    assert not point_validity(pseudo_line(), "m", KUR).valid
    assert point_validity(sierpinski(), "a", parse("true")).valid


def test_least_countermodel_is_reported():
    # Recompute the least refuting valuation by brute force and compare.
    space = pseudo_line()
    report = valid_on_space(space, KUR)
    pairs = [(pt, "p") for pt in space.points]
    for counter in range(1 << len(pairs)):
        val = {"p": frozenset(pt for i, (pt, _) in enumerate(pairs) if counter >> i & 1)}
        ext = evaluate(Model(FiniteCarrier(space), val), KUR)
        missing = [x for x in space.points if x not in ext]
        if missing:
            assert val == report.countermodel
            assert missing[0] == report.refuting_point
            break


def test_validity_is_homeomorphism_invariant():
    rng = random.Random(25)
    for _ in range(25):
        s = random_space(rng, max_points=3)
        perm = list(s.points)
        rng.shuffle(perm)
        names = dict(zip(s.points, perm))
        from topomodal.topology import FiniteSpace

        t = FiniteSpace(s.points, [[names[x] for x in o] for o in s.opens])
        assert is_homeomorphic(s, t)
        for _ in range(3):
            f = random_formula(rng, 3, var_pool=("p",))
            assert valid_on_space(s, f).valid == valid_on_space(t, f).valid


def test_empty_space_semantics():
    e = empty_space()
    m = Model(FiniteCarrier(e), {"p": frozenset()})
    assert evaluate(m, parse("[A]p")) == frozenset()  # full IS the empty set here
    assert evaluate(m, parse("[!=]p")) == frozenset()
    assert valid_on_space(e, parse("false")).valid  # no point can refute


def test_equiv_examples():
    r = equiv_classes_up_to(4, KUR, KUR_IDIFF)
    assert r.equal and r.spaces_checked == 46

    r = equiv_classes_up_to(3, KUR, parse("true"))
    assert not r.equal
    assert is_homeomorphic(r.witness, pseudo_line())
    assert r.left_valid is False and r.right_valid is True

    r = equiv_classes_up_to(1, parse("p -> p"), parse("true"))
    assert r.equal and r.spaces_checked == 1

    with pytest.raises(GuardError):
        equiv_classes_up_to(6, KUR, KUR_IDIFF)


def test_equiv_include_empty():
    # With no points to refute anything, the empty space validates every
    # formula, so including it can only grow the count, never the witness.
    r = equiv_classes_up_to(1, parse("<E>true"), parse("true"))
    assert r.equal and r.spaces_checked == 1
    r = equiv_classes_up_to(1, parse("<E>true"), parse("true"), include_empty=True)
    assert r.equal and r.spaces_checked == 2
    e = empty_space()
    assert valid_on_space(e, parse("<E>true")).valid
    assert valid_on_space(e, parse("false")).valid


def test_model_json_round_trip():
    m = finite_model(sierpinski(), p={"b"})
    d = model_to_dict(m)
    m2 = model_from_dict(d)
    assert m2.valuation == m.valuation
    assert m2.carrier.space == m.carrier.space

    rm = real_model(p="(0,1) u {2}")
    d = model_to_dict(rm)
    assert d["space"] == "R"
    rm2 = model_from_dict(d)
    assert rm2.valuation == rm.valuation


def test_model_rejects_foreign_valuation():
    from topomodal.errors import TopologyError

    with pytest.raises(TopologyError):
        finite_model(sierpinski(), p={"z"})
