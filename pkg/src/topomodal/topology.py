"""Exact finite topological spaces.

A finite topology is stored as an explicit open-set family together with two
derived views that every algorithm here works from:

* the minimal-neighborhood map ``U_x`` (intersection of all opens containing
  ``x``, itself open because the family is finite), and
* the specialization preorder ``x <= y  iff  x in U_y``.

Finite topologies correspond exactly to preorders: the opens are the sets
closed under passing to ``<=``-smaller points, and the four topological
operators are O(n^2) reads of the minimal-neighborhood map.
"""

from __future__ import annotations

import string
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import GuardError, TopologyError

PointSet = frozenset


def _set_key(s: Iterable[str]) -> tuple:
    t = tuple(sorted(s))
    return (len(t), t)


class FiniteSpace:
    """A finite point set with an explicit topology.

    Construction validates the axioms (empty and full set present, family
    closed under binary union and intersection) and reports the first
    missing witness in a deterministic order. Instances are immutable.
    """

    __slots__ = ("points", "opens", "sorted_opens", "min_nbhd", "_index", "_full")

    def __init__(self, points: Iterable[str], opens: Iterable[Iterable[str]]):
        pts = tuple(sorted(points))
        if len(set(pts)) != len(pts):
            raise TopologyError(f"duplicate point names in {pts!r}")
        index = {p: i for i, p in enumerate(pts)}

        masks: set[int] = set()
        for subset in opens:
            m = 0
            for p in subset:
                if p not in index:
                    raise TopologyError(f"open set member {p!r} is not a point of the space")
                m |= 1 << index[p]
            masks.add(m)

        full = (1 << len(pts)) - 1
        if 0 not in masks:
            raise TopologyError("the empty set is missing from the open family")
        if full not in masks:
            raise TopologyError("the full point set is missing from the open family")
        ordered = sorted(masks, key=lambda m: _set_key(self._unmask_raw(m, pts)))
        for i, a in enumerate(ordered):
            for b in ordered[i + 1:]:
                if (a | b) not in masks:
                    raise TopologyError(
                        f"union of {sorted(self._unmask_raw(a, pts))} and "
                        f"{sorted(self._unmask_raw(b, pts))} is missing from the open family"
                    )
                if (a & b) not in masks:
                    raise TopologyError(
                        f"intersection of {sorted(self._unmask_raw(a, pts))} and "
                        f"{sorted(self._unmask_raw(b, pts))} is missing from the open family"
                    )

        min_masks = []
        for i in range(len(pts)):
            acc = full
            for m in masks:
                if m >> i & 1:
                    acc &= m
            # Automatic for finite families closed under intersection.
            assert acc in masks, "minimal neighborhood escaped the open family"
            min_masks.append(acc)

        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "_index", index)
        object.__setattr__(self, "_full", frozenset(pts))
        object.__setattr__(
            self, "opens", frozenset(frozenset(self._unmask_raw(m, pts)) for m in masks)
        )
        object.__setattr__(
            self, "sorted_opens", tuple(sorted(self.opens, key=_set_key))
        )
        object.__setattr__(
            self, "min_nbhd",
            {p: frozenset(self._unmask_raw(min_masks[i], pts)) for p, i in index.items()},
        )

    @staticmethod
    def _unmask_raw(mask: int, pts: tuple[str, ...]) -> list[str]:
        return [pts[i] for i in range(len(pts)) if mask >> i & 1]

    def __setattr__(self, name, value):
        raise AttributeError("FiniteSpace is immutable")

    def __eq__(self, other):
        if not isinstance(other, FiniteSpace):
            return NotImplemented
        return self.points == other.points and self.opens == other.opens

    def __hash__(self):
        return hash((self.points, self.opens))

    def __repr__(self):
        return f"FiniteSpace({len(self.points)} points, {len(self.opens)} opens)"

    def __reduce__(self):
        return (FiniteSpace, (self.points, tuple(tuple(sorted(o)) for o in self.sorted_opens)))

    # -- basic views ---------------------------------------------------

    @property
    def full_set(self) -> PointSet:
        return self._full

    def check_subset(self, A: Iterable[str]) -> PointSet:
        s = frozenset(A)
        foreign = s - self._full
        if foreign:
            raise TopologyError(f"foreign points {sorted(foreign)} are not in the space")
        return s

    def leq(self, x: str, y: str) -> bool:
        """Specialization order: x <= y iff x lies in every neighborhood of y."""
        return x in self.min_nbhd[y]

    def is_open(self, A: Iterable[str]) -> bool:
        return frozenset(A) in self.opens

    # -- the four operators ----------------------------------------------

    def derivative(self, A: Iterable[str]) -> PointSet:
        """Limit points of A: every punctured neighborhood of x meets A."""
        s = self.check_subset(A)
        return frozenset(
            x for x in self.points if (self.min_nbhd[x] & s) - {x}
        )

    def closure(self, A: Iterable[str]) -> PointSet:
        s = self.check_subset(A)
        return s | self.derivative(s)

    def interior(self, A: Iterable[str]) -> PointSet:
        s = self.check_subset(A)
        return frozenset(x for x in self.points if self.min_nbhd[x] <= s)

    def punctured_interior(self, A: Iterable[str]) -> PointSet:
        """Points with a punctured neighborhood inside A; the dual of derivative."""
        s = self.check_subset(A)
        return frozenset(
            x for x in self.points if self.min_nbhd[x] - {x} <= s
        )

    def operator_apply(self, kind: str, A: Iterable[str]) -> PointSet:
        try:
            op = {
                "d": self.derivative,
                "c": self.closure,
                "i": self.interior,
                "p": self.punctured_interior,
            }[kind]
        except KeyError:
            raise ValueError(f"unknown operator kind {kind!r}, expected one of d, c, i, p")
        return op(A)

    # -- connectivity -----------------------------------------------------

    def is_connected(self, C: Iterable[str]) -> bool:
        """No pair of disjoint opens covers C while both meet it; empty C counts as connected."""
        s = self.check_subset(C)
        if not s:
            return True
        relevant = [o for o in self.sorted_opens if o & s]
        for i, a in enumerate(relevant):
            for b in relevant[i + 1:]:
                if not (a & b) and s <= (a | b):
                    return False
        return True

    def is_locally_1_component(self, x: str) -> bool:
        """Every neighborhood of x contains a neighborhood N with N minus {x} connected.

        Reduces to connectivity of the punctured minimal neighborhood: any
        open N with x in N is a superset of U_x, so inside U = U_x the only
        candidate is U_x itself, and U_x works inside every larger U.
        """
        if x not in self._index:
            raise TopologyError(f"foreign point {x!r}")
        return self.is_connected(self.min_nbhd[x] - {x})

    # -- preorder round trip ----------------------------------------------

    def to_preorder(self) -> "Preorder":
        pairs = frozenset(
            (x, y) for y in self.points for x in self.min_nbhd[y]
        )
        return Preorder(self.points, pairs)

    def down_rows(self) -> tuple[int, ...]:
        """Minimal neighborhoods as bitmask rows, row y = {index(x) : x <= y}."""
        return tuple(
            sum(1 << self._index[x] for x in self.min_nbhd[y]) for y in self.points
        )


def validate_space(points: Iterable[str], opens: Iterable[Iterable[str]]) -> FiniteSpace:
    """Build a FiniteSpace, raising TopologyError with the first failing witness."""
    return FiniteSpace(points, opens)


def operator_apply(s: FiniteSpace, kind: str, A: Iterable[str]) -> PointSet:
    """Functional form of the d/c/i/p operators."""
    return s.operator_apply(kind, A)


def is_connected(s: FiniteSpace, C: Iterable[str]) -> bool:
    return s.is_connected(C)


def is_locally_1_component(s: FiniteSpace, x: str) -> bool:
    return s.is_locally_1_component(x)


def generate_from_subbasis(points: Iterable[str], subbasis: Iterable[Iterable[str]]) -> FiniteSpace:
    """Smallest topology on the points containing every subbasis member."""
    pts = tuple(sorted(points))
    index = {p: i for i, p in enumerate(pts)}
    full = (1 << len(pts)) - 1
    masks = {0, full}
    for subset in subbasis:
        m = 0
        for p in subset:
            if p not in index:
                raise TopologyError(f"subbasis member {p!r} is not a point of the space")
            m |= 1 << index[p]
        masks.add(m)
    # Fixpoint under pairwise union/intersection; finite, so this terminates.
    while True:
        fresh = set()
        for a in masks:
            for b in masks:
                u, n = a | b, a & b
                if u not in masks:
                    fresh.add(u)
                if n not in masks:
                    fresh.add(n)
        if not fresh:
            break
        masks |= fresh
    return FiniteSpace(pts, [FiniteSpace._unmask_raw(m, pts) for m in masks])


@dataclass(frozen=True)
class Preorder:
    """Reflexive transitive relation on a finite point list; (x, y) reads x <= y."""

    points: tuple[str, ...]
    relation: frozenset[tuple[str, str]]

    def __post_init__(self):
        pts = tuple(sorted(self.points))
        object.__setattr__(self, "points", pts)
        ps = set(pts)
        for x, y in self.relation:
            if x not in ps or y not in ps:
                raise TopologyError(f"relation pair ({x!r}, {y!r}) mentions a foreign point")
        for x in pts:
            if (x, x) not in self.relation:
                raise TopologyError(f"not reflexive: ({x!r}, {x!r}) missing")
        for x, y in self.relation:
            for z in pts:
                if (y, z) in self.relation and (x, z) not in self.relation:
                    raise TopologyError(
                        f"not transitive: ({x!r}, {y!r}) and ({y!r}, {z!r}) "
                        f"require ({x!r}, {z!r})"
                    )

    def leq(self, x: str, y: str) -> bool:
        return (x, y) in self.relation

    def down(self, y: str) -> PointSet:
        return frozenset(x for x in self.points if (x, y) in self.relation)


def to_preorder(s: FiniteSpace) -> Preorder:
    return s.to_preorder()


def from_preorder(pre: Preorder) -> FiniteSpace:
    """The topology whose opens are the sets closed under <=-smaller points."""
    n = len(pre.points)
    if n > 16:
        raise GuardError(f"from_preorder enumerates 2^{n} subsets; refusing above 16 points")
    index = {p: i for i, p in enumerate(pre.points)}
    down_masks = [
        sum(1 << index[x] for x in pre.down(y)) for y in pre.points
    ]
    opens = []
    for mask in range(1 << n):
        if all(down_masks[i] | mask == mask for i in range(n) if mask >> i & 1):
            opens.append([pre.points[i] for i in range(n) if mask >> i & 1])
    return FiniteSpace(pre.points, opens)


def space_from_down_rows(rows: Sequence[int], points: Sequence[str] | None = None) -> FiniteSpace:
    """Rebuild a space from minimal-neighborhood bitmask rows."""
    n = len(rows)
    if points is None:
        points = default_point_names(n)
    opens = []
    for mask in range(1 << n):
        if all(rows[i] | mask == mask for i in range(n) if mask >> i & 1):
            opens.append([points[i] for i in range(n) if mask >> i & 1])
    return FiniteSpace(points, opens)


def default_point_names(n: int) -> tuple[str, ...]:
    if n > 26:
        raise GuardError("generated spaces use single-letter point names; 26 points maximum")
    return tuple(string.ascii_lowercase[:n])


def preorder_down_rows(n: int) -> Iterator[tuple[int, ...]]:
    """Every preorder on n points, as minimal-neighborhood bitmask rows.

    Backtracks over one down-closure mask per point; a partial assignment is
    pruned as soon as some decided pair violates ``j <= i  implies  U_j
    contained in U_i``. Yields in ascending lexicographic row order.
    """
    if n == 0:
        yield ()
        return
    candidates = [[m for m in range(1 << n) if m >> i & 1] for i in range(n)]
    rows = [0] * n

    def backtrack(i: int) -> Iterator[tuple[int, ...]]:
        if i == n:
            yield tuple(rows)
            return
        for mask in candidates[i]:
            ok = True
            for j in range(i):
                if mask >> j & 1 and rows[j] | mask != mask:
                    ok = False
                    break
                if rows[j] >> i & 1 and mask | rows[j] != rows[j]:
                    ok = False
                    break
            if ok:
                rows[i] = mask
                yield from backtrack(i + 1)
        rows[i] = 0

    yield from backtrack(0)


# -- canonical labeling and homeomorphism -------------------------------------

def _refine_colors(rows: Sequence[int], n: int) -> list[int]:
    """Stable color partition of the preorder digraph, permutation-invariant."""
    up = [sum((rows[j] >> i & 1) << j for j in range(n)) for i in range(n)]
    colors: list = [
        (bin(rows[i]).count("1"), bin(up[i]).count("1")) for i in range(n)
    ]
    for _ in range(n + 1):
        sigs = []
        for i in range(n):
            around = sorted(
                (colors[j], rows[i] >> j & 1, rows[j] >> i & 1)
                for j in range(n) if j != i
            )
            sigs.append((colors[i], tuple(around)))
        ranking = {sig: rank for rank, sig in enumerate(sorted(set(sigs)))}
        new = [ranking[s] for s in sigs]
        if new == colors:
            break
        colors = new
    return colors


def _twin_groups(rows: Sequence[int], members: Sequence[int], n: int) -> list[list[int]]:
    """Split a color class into groups of pairwise interchangeable points."""

    def twins(i: int, j: int) -> bool:
        if (rows[j] >> i & 1) != (rows[i] >> j & 1):
            return False
        for l in range(n):
            if l == i or l == j:
                continue
            if (rows[l] >> i & 1) != (rows[l] >> j & 1):
                return False
            if (rows[i] >> l & 1) != (rows[j] >> l & 1):
                return False
        return True

    groups: list[list[int]] = []
    for m in members:
        for g in groups:
            if all(twins(m, other) for other in g):
                g.append(m)
                break
        else:
            groups.append([m])
    return groups


def _distinct_perms(labels: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """Permutations of a multiset without repeats, in lexicographic order."""
    counts: dict[int, int] = {}
    for l in labels:
        counts[l] = counts.get(l, 0) + 1
    keys = sorted(counts)
    out: list[int] = []

    def rec() -> Iterator[tuple[int, ...]]:
        if len(out) == len(labels):
            yield tuple(out)
            return
        for k in keys:
            if counts[k]:
                counts[k] -= 1
                out.append(k)
                yield from rec()
                out.pop()
                counts[k] += 1

    yield from rec()


def canonical_down_rows(
    rows: Sequence[int], max_candidates: int = 100_000
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Canonical form of a preorder matrix plus one permutation achieving it.

    The canonical form is the lexicographically least relabeling among the
    permutations compatible with the stable color partition, after collapsing
    interchangeable (twin) points inside each class. Two preorders are
    isomorphic iff their canonical forms are equal.

    Returns (canonical rows, sigma) where sigma maps canonical position to
    original index.
    """
    n = len(rows)
    if n == 0:
        return (), ()
    colors = _refine_colors(rows, n)
    by_color: dict[int, list[int]] = {}
    for i, c in enumerate(colors):
        by_color.setdefault(c, []).append(i)

    class_layouts = []  # per class: (positions-width, twin groups, label patterns)
    total = 1
    for c in sorted(by_color):
        members = by_color[c]
        groups = _twin_groups(rows, members, n)
        labels = []
        for gi, g in enumerate(groups):
            labels += [gi] * len(g)
        patterns = list(_distinct_perms(labels))
        total *= len(patterns)
        if total > max_candidates:
            raise GuardError(
                "canonical labeling search space exceeds "
                f"{max_candidates} candidates; raise max_candidates to force it"
            )
        class_layouts.append((groups, patterns))

    best_key: tuple[int, ...] | None = None
    best_sigma: tuple[int, ...] | None = None

    def assemble(choice: list[tuple[int, ...]]) -> list[int]:
        sigma: list[int] = []
        for (groups, _), pattern in zip(class_layouts, choice):
            queues = [list(g) for g in groups]
            for label in pattern:
                sigma.append(queues[label].pop(0))
        return sigma

    def walk(ci: int, choice: list[tuple[int, ...]]):
        nonlocal best_key, best_sigma
        if ci == len(class_layouts):
            sigma = assemble(choice)
            key = tuple(
                sum(((rows[sigma[a]] >> sigma[b]) & 1) << b for b in range(n))
                for a in range(n)
            )
            if best_key is None or key < best_key:
                best_key, best_sigma = key, tuple(sigma)
            return
        for pattern in class_layouts[ci][1]:
            walk(ci + 1, choice + [pattern])

    walk(0, [])
    assert best_key is not None and best_sigma is not None
    return best_key, best_sigma


def find_homeomorphism(
    s1: FiniteSpace, s2: FiniteSpace, max_points: int = 10
) -> dict[str, str] | None:
    """A bijection carrying opens onto opens, or None.

    Compares canonical forms of the specialization preorders; the witness is
    the composite of the two canonicalizing permutations, re-checked against
    the raw open families before being returned.
    """
    if len(s1.points) != len(s2.points):
        return None
    if len(s1.opens) != len(s2.opens):
        return None
    if max(len(s1.points), 1) > max_points:
        raise GuardError(
            f"homeomorphism search guarded to {max_points} points; pass max_points to override"
        )
    sizes1 = sorted(len(s1.min_nbhd[p]) for p in s1.points)
    sizes2 = sorted(len(s2.min_nbhd[p]) for p in s2.points)
    if sizes1 != sizes2:
        return None
    key1, sig1 = canonical_down_rows(s1.down_rows())
    key2, sig2 = canonical_down_rows(s2.down_rows())
    if key1 != key2:
        return None
    mapping = {
        s1.points[sig1[pos]]: s2.points[sig2[pos]] for pos in range(len(s1.points))
    }
    image_opens = frozenset(
        frozenset(mapping[x] for x in o) for o in s1.opens
    )
    assert image_opens == s2.opens, "canonical forms matched but opens disagree"
    return mapping


def is_homeomorphic(s1: FiniteSpace, s2: FiniteSpace, max_points: int = 10) -> bool:
    return find_homeomorphism(s1, s2, max_points=max_points) is not None


# -- stock spaces -------------------------------------------------------------

def sierpinski() -> FiniteSpace:
    """Two points with exactly one nontrivial open singleton."""
    return FiniteSpace(["a", "b"], [[], ["a"], ["a", "b"]])


def pseudo_line() -> FiniteSpace:
    """Three points, opens generated by the outer singletons; refutes Kur at m."""
    return FiniteSpace(
        ["l", "m", "r"], [[], ["l"], ["r"], ["l", "r"], ["l", "m", "r"]]
    )


def discrete(points: Iterable[str]) -> FiniteSpace:
    pts = tuple(sorted(points))
    if len(pts) > 16:
        raise GuardError("discrete topology enumerates all subsets; 16 points maximum")
    opens = []
    for mask in range(1 << len(pts)):
        opens.append([pts[i] for i in range(len(pts)) if mask >> i & 1])
    return FiniteSpace(pts, opens)


def indiscrete(points: Iterable[str]) -> FiniteSpace:
    pts = tuple(sorted(points))
    return FiniteSpace(pts, [[], list(pts)])


def empty_space() -> FiniteSpace:
    return FiniteSpace([], [[]])


# -- JSON form ----------------------------------------------------------------

def space_to_dict(s: FiniteSpace) -> dict:
    return {
        "points": list(s.points),
        "opens": [sorted(o) for o in s.sorted_opens],
    }


def space_from_dict(d: Mapping) -> FiniteSpace:
    if not isinstance(d, Mapping) or "points" not in d:
        raise TopologyError("space object must be a mapping with a 'points' key")
    if "opens" in d:
        return FiniteSpace(d["points"], d["opens"])
    if "subbasis" in d:
        return generate_from_subbasis(d["points"], d["subbasis"])
    raise TopologyError("space object needs an 'opens' or 'subbasis' key")
