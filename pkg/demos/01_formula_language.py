#!/usr/bin/env python3
"""Tour of the formula language: parsing, rendering, closure sets.

The language has four box modalities with ASCII spellings and a dual for
each:

    [d] / <d>    punctured interior box / Cantor-derivative diamond
    [i] / <c>    interior box / closure diamond
    [!=] / <!=>  difference ("elsewhere") modalities
    [A] / <E>    universal / existential modalities
"""

import _bootstrap  # noqa: F401

from topomodal import BUILTINS, closure_set, parse, render, variables

print("== parsing and precedence ==")
for text in ["p & q | r", "p -> q -> r", "~[d]~p", "<d>p", "[i](q -> p)"]:
    f = parse(text)
    print(f"{text!r:20} parses to {f!r}")
    print(f"{'':20} renders as {render(f)!r}")

print()
print("== duals are first-class nodes ==")
print("parse('<d>p')    =", parse("<d>p"))
print("parse('~[d]~p')  =", parse("~[d]~p"))
print("equal?", parse("<d>p") == parse("~[d]~p"), "(same truth conditions, kept distinct)")

print()
print("== built-in named formulas ==")
for name, f in BUILTINS.items():
    print(f"{name:10} = {render(f)}")
    print(f"{'':10}   variables: {sorted(variables(f))}")

print()
print("== closure sets: subformulas plus single negations ==")
cs = closure_set({parse("[!=]p"), parse("[i]p")})
for f in cs.sorted():
    print("  ", render(f))
print("size:", len(cs), "(never more than twice the subformula count)")
