import random

import pytest

from topomodal.errors import ParseError
from topomodal.formula import (
    BUILTINS, KUR, KUR_IDIFF, And, Bot, ClosureSet, DBox, DDia, DiffBox, IBox,
    Implies, Not, Or, Top, Var, closure_set, in_interior_difference_fragment,
    parse, render, resolve, subformulas, variables,
)

from .generators import random_formula


def test_parse_atomic():
    assert parse("p") == Var("p")
    assert parse("true") == Top()
    assert parse("false") == Bot()
    assert parse("foo_1") == Var("foo_1")


def test_parse_kur_shape():
    kur = parse("[d]([i]p | [i]~p) -> ([d]p | [d]~p)")
    p = Var("p")
    assert kur == Implies(
        DBox(Or(IBox(p), IBox(Not(p)))),
        Or(DBox(p), DBox(Not(p))),
    )
    assert kur == KUR


def test_duals_are_distinct_nodes():
    assert parse("~[d]~p") == Not(DBox(Not(Var("p"))))
    assert parse("<d>p") == DDia(Var("p"))
    assert parse("<d>p") != parse("~[d]~p")
    assert render(parse("<d>p")) == "<d>p"


def test_precedence():
    assert parse("p & q | r") == Or(And(Var("p"), Var("q")), Var("r"))
    assert parse("p -> q -> r") == Implies(Var("p"), Implies(Var("q"), Var("r")))
    assert parse("~p & q") == And(Not(Var("p")), Var("q"))
    assert parse("[d]p | q") == Or(DBox(Var("p")), Var("q"))


def test_render_examples():
    assert render(Var("p")) == "p"
    assert render(KUR) == "[d]([i]p | [i]~p) -> [d]p | [d]~p"
    assert render(And(Var("p"), Or(Var("q"), Var("r")))) == "p & (q | r)"


def test_render_preserves_associativity_shape():
    left = And(And(Var("p"), Var("q")), Var("r"))
    right = And(Var("p"), And(Var("q"), Var("r")))
    assert render(left) == "p & q & r"
    assert render(right) == "p & (q & r)"
    assert parse(render(left)) == left
    assert parse(render(right)) == right
    nested = Implies(Implies(Var("p"), Var("q")), Var("r"))
    assert render(nested) == "(p -> q) -> r"
    assert parse(render(nested)) == nested


def test_parse_error_reports_position_and_expectations():
    with pytest.raises(ParseError) as info:
        parse("p -> (q |")
    assert info.value.position == 9
    assert "identifier" in info.value.expected
    with pytest.raises(ParseError) as info:
        parse("p q")
    assert info.value.position == 2
    with pytest.raises(ParseError) as info:
        parse("p & P")
    assert info.value.position == 4


def test_closure_set_examples():
    p = Var("p")
    assert closure_set({p}) == frozenset({p, Not(p)})
    assert closure_set({DiffBox(p)}) == frozenset(
        {DiffBox(p), Not(DiffBox(p)), p, Not(p)}
    )
    assert closure_set({IBox(p)}) == frozenset({IBox(p), Not(IBox(p)), p, Not(p)})


def test_closure_set_never_stacks_double_negations():
    cs = closure_set({parse("~(p & ~q)")})
    assert not any(
        isinstance(f, Not) and isinstance(f.child, Not) for f in cs
    )


def test_closure_set_idempotent_and_bounded():
    rng = random.Random(7)
    for _ in range(60):
        gens = {random_formula(rng, 4) for _ in range(rng.randint(1, 3))}
        cs = closure_set(gens)
        assert closure_set(cs) == cs
        subs = set()
        for g in gens:
            subs |= subformulas(g)
        assert len(cs) <= 2 * len(subs)


def test_closure_set_type_rejects_non_closed():
    with pytest.raises(ValueError):
        ClosureSet({parse("[i]p")})
    ClosureSet(closure_set({parse("[i]p")}))  # a closed set passes


def test_variables():
    assert variables(KUR) == frozenset({"p"})
    assert variables(KUR_IDIFF) == frozenset({"p", "q"})
    assert variables(Top()) == frozenset()


def test_builtins_resolve():
    assert resolve("Kur") == KUR
    assert resolve("KurIDiff") == KUR_IDIFF
    assert resolve("BoxKur") == DBox(KUR)
    assert resolve("p & q") == And(Var("p"), Var("q"))
    assert set(BUILTINS) == {"Kur", "BoxKur", "KurIDiff"}


def test_kur_idiff_expands_the_relativized_box():
    expected = parse(
        "(~q & [!=]q & [i](q -> [i]p | [i]~p)) -> [i](q -> p) | [i](q -> ~p)"
    )
    assert KUR_IDIFF == expected


def test_fragment_check():
    assert in_interior_difference_fragment(parse("[i]p & [!=]q"))
    assert in_interior_difference_fragment(KUR_IDIFF)
    assert not in_interior_difference_fragment(parse("[d]p"))
    assert not in_interior_difference_fragment(parse("<d>p"))
    assert not in_interior_difference_fragment(parse("[A]p"))
    assert not in_interior_difference_fragment(parse("<E>p"))
    assert not in_interior_difference_fragment(KUR)


def test_round_trip_random():
    rng = random.Random(20260808)
    for _ in range(2000):
        f = random_formula(rng, rng.randint(0, 8))
        assert parse(render(f)) == f
