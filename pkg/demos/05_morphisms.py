#!/usr/bin/env python3
"""Interior maps, unique points, and preservation for the difference modality.

A surjective interior map pulls interior-fragment formulas back exactly.
Once the difference modality joins in, a formula can pin down a single
target point; if that point's fiber is not a singleton, truth drifts. The
preservation checker makes the drift visible, and the morphism search finds
the maps that avoid it.
"""

import _bootstrap  # noqa: F401

from topomodal import (
    FiniteCarrier, Model, PointMap, analyze_map, closure_set, discrete,
    find_u_morphisms, gg_check, parse, pseudo_line, render, sierpinski,
    unique_points, verify_preservation,
)
from topomodal.topology import FiniteSpace

print("== analyzing a map ==")
pl, s = pseudo_line(), sierpinski()
f = PointMap(pl, s, {"l": "a", "m": "b", "r": "a"})
rep = analyze_map(f, ["b"])
print("pseudo-line -> Sierpinski by l,r |-> a and m |-> b, U = {b}:")
print(f"  continuous={rep.is_continuous} open={rep.is_open} "
      f"surjective={rep.is_surjective} U-injective={rep.is_u_injective}")

print()
print("== unique points ==")
d3 = discrete(["a", "b", "c"])
model = Model(FiniteCarrier(d3), {"p": frozenset({"b", "c"})})
sigma = closure_set({parse("[!=]p")})
print("three discrete points, p = {b,c}, sigma =", [render(g) for g in sigma.sorted()])
print("unique points:", sorted(unique_points(model, sigma)),
      " (a is pinned by ~p and by [!=]p)")

print()
print("== preservation along a collapse ==")
d4 = discrete(["a", "b1", "b2", "c"])
collapse = PointMap(d4, d3, {"a": "a", "b1": "b", "b2": "b", "c": "c"})
result = verify_preservation(collapse, {"p": {"b", "c"}}, sigma)
print("4-point discrete -> 3-point discrete, b1,b2 |-> b, p = {b,c}:")
print("  sigma-morphism?", result.is_sigma_morphism,
      "  mismatches:", len(result.mismatches))

print()
print("== the drift when injectivity is waived ==")
one = FiniteSpace(["z"], [[], ["z"]])
const = PointMap(discrete(["x1", "x2"]), one, {"x1": "z", "x2": "z"})
result = verify_preservation(const, {"p": set()}, sigma)
print("two points collapsed to one, p empty on the target:")
print("  sigma-morphism?", result.is_sigma_morphism, " (z is ~p-unique, fiber has size 2)")
for phi, ext_x, pulled in result.mismatches:
    print(f"  {render(phi)}: source {sorted(ext_x)} vs pulled back {sorted(pulled)}")

print()
print("== searching for U-morphisms ==")
doubled = FiniteSpace(
    ["a1", "a2", "b"], [[], ["a1"], ["a2"], ["a1", "a2"], ["a1", "a2", "b"]]
)
for pm in find_u_morphisms(doubled, s, ["b"]):
    print("  found:", dict(pm.as_pairs()))

print()
print("== the for-every-finite-U relation, bounded ==")
d4 = discrete(["a", "b", "c", "d"])
d3 = discrete(["x", "y", "z"])
for k in range(4):
    rep = gg_check(d4, d3, k)
    tail = "" if rep.holds else f" (fails at U = {sorted(rep.failing_u)})"
    print(f"  4-pt discrete >> 3-pt discrete at k={k}: {rep.holds}{tail}")
print("at k = |target| the relation collapses to homeomorphism, hence the failure")
