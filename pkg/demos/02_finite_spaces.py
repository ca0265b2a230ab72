#!/usr/bin/env python3
"""Finite topological spaces: operators, connectivity, the preorder view.

Every finite topology is determined by its minimal neighborhoods U_x, and
all four operators (derivative d, closure c, interior i, punctured interior
p) read straight off that map. The two stock spaces here carry most of the
story: the Sierpinski space and the three-point "pseudo-line", the smallest
space with a point whose punctured neighborhood is disconnected.
"""

import _bootstrap  # noqa: F401

from topomodal import (
    from_preorder, generate_from_subbasis, find_homeomorphism, pseudo_line,
    sierpinski, to_preorder,
)

s = sierpinski()
print("== Sierpinski space ==")
print("opens:", [sorted(o) for o in s.sorted_opens])
print("minimal neighborhoods:", {x: sorted(u) for x, u in s.min_nbhd.items()})
print("d({a}) =", sorted(s.derivative({"a"})), "   d({b}) =", sorted(s.derivative({"b"})))

pl = pseudo_line()
print()
print("== pseudo-line ==")
print("opens:", [sorted(o) for o in pl.sorted_opens])
print("d({l}) =", sorted(pl.derivative({"l"})))
print("p({l}) =", sorted(pl.punctured_interior({"l"})),
      " (the punctured minimal neighborhoods of l and r are empty)")
print("{l,r} connected?", pl.is_connected({"l", "r"}), " (covered by the disjoint opens {l}, {r})")
print("whole space connected?", pl.is_connected(pl.full_set))
print("locally 1-component at m?", pl.is_locally_1_component("m"),
      " (the only neighborhood of m is X, and X-{m} splits)")
print("locally 1-component at l?", pl.is_locally_1_component("l"))

print()
print("== the preorder correspondence ==")
pre = to_preorder(pl)
print("x <= y pairs:", sorted(pre.relation))
print("round trip preserves the opens:", from_preorder(pre).opens == pl.opens)

print()
print("== homeomorphism testing ==")
clothed = generate_from_subbasis(["1", "2", "3"], [["2"], ["3"]])
print("subbasis {{2},{3}} on three points gives opens:",
      [sorted(o) for o in clothed.sorted_opens])
witness = find_homeomorphism(pl, clothed)
print("homeomorphic to the pseudo-line via:", witness)
vshape = generate_from_subbasis(["1", "2", "3"], [["1", "2"], ["2", "3"]])
print("the V-shaped space (subbasis {{1,2},{2,3}}) instead:",
      find_homeomorphism(pl, vshape))
