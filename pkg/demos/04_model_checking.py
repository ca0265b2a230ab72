#!/usr/bin/env python3
"""Model checking on both carriers, validity search, and class equivalence.

The headline formulas:

    Kur      = [d]([i]p | [i]~p) -> [d]p | [d]~p      (Kuratowski)
    BoxKur   = [d] Kur
    KurIDiff = the interior+difference formula defining the same class as Kur

Validity on a finite space enumerates every valuation of the formula's
variables; the first failing valuation in counter order is reported as a
countermodel. On the real line only evaluation is offered, since region
valuations are not finitely enumerable.
"""

import _bootstrap  # noqa: F401

from fractions import Fraction

from topomodal import (
    BUILTINS, FiniteCarrier, KUR, Model, RealCarrier, comb, equiv_classes_up_to,
    evaluate, parse, parse_region, point_validity, pseudo_line, render,
    satisfies, sierpinski, valid_on_space,
)

print("== evaluation on the real line ==")
m = Model(RealCarrier(), {"p": parse_region("(0,1) u (1,2)")})
for text in ["[d]p", "[i]p", "<d>p", "[!=]p"]:
    print(f"  [[ {text} ]] = {evaluate(m, parse(text))}")

print()
print("== evaluation on a finite space ==")
sm = Model(FiniteCarrier(sierpinski()), {"p": frozenset({"b"})})
print("  Sierpinski, p = {b}:  [[ [d]p ]] =", sorted(evaluate(sm, parse("[d]p"))))

print()
print("== validity search with countermodels ==")
pl = pseudo_line()
report = valid_on_space(pl, KUR)
print("Kur on the pseudo-line:", "valid" if report.valid else "invalid")
print("  countermodel p =", sorted(report.countermodel["p"]),
      "refuted at", report.refuting_point)
print("  Kur extension there:", sorted(report.extension))
report = valid_on_space(pl, BUILTINS["BoxKur"])
print("BoxKur on the pseudo-line:", "valid" if report.valid else "invalid",
      f"({report.valuations_checked} valuations checked)")

print()
print("== validity point by point ==")
for x in pl.points:
    print(f"  Kur at {x}: {'valid' if point_validity(pl, x, KUR).valid else 'invalid'}")
print("(exactly the locally-1-component points pass)")

print()
print("== the comb refutes Kur on the line ==")
model = Model(RealCarrier(), {"p": comb(0, 2)})
x = Fraction(1, 8)
print("p =", comb(0, 2))
print(f"at x = {x}: [d]([i]p | [i]~p)? {satisfies(model, x, parse('[d]([i]p | [i]~p)'))},"
      f" [d]p? {satisfies(model, x, parse('[d]p'))},"
      f" [d]~p? {satisfies(model, x, parse('[d]~p'))}")
print("failure set of Kur:", evaluate(model, KUR).complement())

print()
print("== class equivalence over the finite catalog ==")
r = equiv_classes_up_to(4, KUR, BUILTINS["KurIDiff"])
print(f"Kur vs KurIDiff up to size 4: equal on {r.spaces_checked} representatives")
r = equiv_classes_up_to(3, KUR, parse("true"))
print(f"Kur vs true: distinct, witness {r.witness_id} "
      f"(opens {[sorted(o) for o in r.witness.sorted_opens]})")
print("which is the pseudo-line again:", render(KUR), "fails there")
