#!/usr/bin/env python3
"""Exact region algebra on the real line.

Regions are finite unions of rational-endpoint intervals and isolated
points, always kept canonical, with every operator an exact endpoint
rewrite (no floating point anywhere). The comb regions at the end are the
valuations that refute the Kuratowski formula on the line.
"""

import _bootstrap  # noqa: F401

from fractions import Fraction

from topomodal import comb, parse_region

print("== canonical forms ==")
for text in ["(0,1) u [1,2)", "(0,1) u {1} u (1,2)", "[3,3]", "(1,2) u (0,1)"]:
    print(f"{text!r:25} normalizes to {parse_region(text)}")

print()
print("== Boolean algebra ==")
a = parse_region("(0,2)")
b = parse_region("(1,3)")
print(f"complement of (0,inf)  = {parse_region('(0,inf)').complement()}")
print(f"(0,2) intersect (1,3)  = {a.intersect(b)}")
print(f"complement of {{0}}      = {parse_region('{0}').complement()}")

print()
print("== the four operators ==")
r = parse_region("(0,1) u {2}")
print(f"r            = {r}")
print(f"derivative   = {r.derivative()}   (the isolated point is not a limit point)")
print(f"closure      = {r.closure()}")
print(f"interior     = {r.interior()}")
split = parse_region("(0,1) u (1,2)")
print(f"s            = {split}")
print(f"p(s)         = {split.punctured_interior()}   (1 has a punctured nbhd inside s)")
print(f"i(s)         = {split.interior()}             (but no full nbhd)")

print()
print("== classification against the full line ==")
for text in ["(-inf,0) u (0,inf)", "{5}", "(0,1)", "R", "empty"]:
    kind, x = parse_region(text).classify()
    print(f"{text!r:22} -> {kind}" + (f"({x})" if x is not None else ""))

print()
print("== comb regions: teeth (2^-(2n+1), 2^-2n) ==")
for k in range(3):
    print(f"comb(0,{k}) = {comb(0, k)}")
print("left edge of comb(0,k) is 2^-(2k+1):",
      [comb(0, k).components[0].lo == Fraction(1, 2 ** (2 * k + 1)) for k in range(4)])
