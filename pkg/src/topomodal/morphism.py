"""Interior-map analysis, unique points, and difference-modality morphisms.

A surjective interior map preserves interior-fragment formulas along
preimages, but the difference modality can break: if some formula in the
working set pins down a single point of the target, that point's fiber must
be a singleton or the pulled-back extension drifts. ``unique_points``
computes exactly those pinned points, ``analyze_map`` checks the map flags,
and ``verify_preservation`` compares both routes formula by formula.

``find_u_morphisms`` searches all point assignments by backtracking in
lexicographic order with incremental continuity pruning; openness is only
decided on complete candidates because partial images can still grow.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping

from .errors import GuardError, TopologyError
from .formula import ClosureSet, Formula, in_interior_difference_fragment, render
from .semantics import FiniteCarrier, Model, evaluate
from .topology import (
    FiniteSpace, PointSet, find_homeomorphism, space_from_dict, space_to_dict,
)


@dataclass(frozen=True)
class PointMap:
    """A total map between the point sets of two finite spaces."""

    source: FiniteSpace
    target: FiniteSpace
    mapping: Mapping[str, str]

    def __post_init__(self):
        m = dict(self.mapping)
        missing = set(self.source.points) - set(m)
        if missing:
            raise TopologyError(f"map not total: no image for {sorted(missing)}")
        extra = set(m) - set(self.source.points)
        if extra:
            raise TopologyError(f"map defined on foreign points {sorted(extra)}")
        bad = {y for y in m.values() if y not in self.target.full_set}
        if bad:
            raise TopologyError(f"map images {sorted(bad)} are not target points")
        object.__setattr__(self, "mapping", m)

    def __call__(self, x: str) -> str:
        return self.mapping[x]

    def image(self, A: Iterable[str]) -> PointSet:
        return frozenset(self.mapping[x] for x in self.source.check_subset(A))

    def preimage(self, B: Iterable[str]) -> PointSet:
        b = self.target.check_subset(B)
        return frozenset(x for x in self.source.points if self.mapping[x] in b)

    def fiber(self, y: str) -> PointSet:
        return self.preimage({y})

    def as_pairs(self) -> tuple[tuple[str, str], ...]:
        return tuple(sorted(self.mapping.items()))


@dataclass
class MorphismReport:
    """Map flags with re-checkable violation witnesses.

    Witnesses: ``continuity_witness`` is the first target open with a
    non-open preimage, ``openness_witness`` the first source open with a
    non-open image, ``surjectivity_witness`` the first unhit target point,
    ``injectivity_witness`` the first u in U with a non-singleton fiber,
    paired with that fiber.
    """

    map: PointMap
    u: PointSet
    is_continuous: bool
    is_open: bool
    is_surjective: bool
    is_u_injective: bool
    continuity_witness: PointSet | None = None
    openness_witness: PointSet | None = None
    surjectivity_witness: str | None = None
    injectivity_witness: tuple[str, PointSet] | None = None

    @property
    def is_interior(self) -> bool:
        return self.is_continuous and self.is_open

    @property
    def is_u_morphism(self) -> bool:
        return self.is_interior and self.is_surjective and self.is_u_injective


def analyze_map(f: PointMap, u: Iterable[str] = ()) -> MorphismReport:
    """Continuity, openness, surjectivity and U-injectivity, with witnesses."""
    u_set = f.target.check_subset(u)
    continuous, cont_wit = True, None
    for o in f.target.sorted_opens:
        if not f.source.is_open(f.preimage(o)):
            continuous, cont_wit = False, o
            break
    open_, open_wit = True, None
    for o in f.source.sorted_opens:
        if not f.target.is_open(f.image(o)):
            open_, open_wit = False, o
            break
    hit = f.image(f.source.points)
    surjective, surj_wit = True, None
    for y in f.target.points:
        if y not in hit:
            surjective, surj_wit = False, y
            break
    u_injective, inj_wit = True, None
    for y in sorted(u_set):
        fib = f.fiber(y)
        if len(fib) != 1:
            u_injective, inj_wit = False, (y, fib)
            break
    return MorphismReport(
        map=f, u=u_set,
        is_continuous=continuous, is_open=open_,
        is_surjective=surjective, is_u_injective=u_injective,
        continuity_witness=cont_wit, openness_witness=open_wit,
        surjectivity_witness=surj_wit, injectivity_witness=inj_wit,
    )


def unique_points(model: Model, sigma: ClosureSet) -> PointSet:
    """Points that are the entire extension of some member of sigma.

    Sigma must stay inside the interior+difference fragment; members using
    the punctured-interior box or the universal modality are rejected
    because unique-point injectivity says nothing about them.
    """
    if not isinstance(model.carrier, FiniteCarrier):
        raise TypeError("unique points are only computed over finite carriers")
    if not isinstance(sigma, ClosureSet):
        sigma = ClosureSet(sigma)
    for phi in sigma.sorted():
        if not in_interior_difference_fragment(phi):
            raise ValueError(
                f"{render(phi)} uses a derivative or universal modality, outside "
                "the interior+difference fragment"
            )
    out = set()
    for phi in sigma.sorted():
        ext = evaluate(model, phi)
        if len(ext) == 1:
            out |= ext
    return frozenset(out)


def pullback_valuation(f: PointMap, val_y: Mapping[str, Iterable[str]]) -> dict[str, PointSet]:
    """Variable-wise preimage of a target valuation."""
    return {v: f.preimage(s) for v, s in val_y.items()}


@dataclass
class PreservationReport:
    """Per-formula comparison of source extensions against target preimages."""

    map: PointMap
    sigma: ClosureSet
    unique_pts: PointSet
    morphism: MorphismReport
    mismatches: tuple[tuple[Formula, PointSet, PointSet], ...]  # (phi, source ext, pulled ext)

    @property
    def is_sigma_morphism(self) -> bool:
        return self.morphism.is_u_morphism

    @property
    def preserved(self) -> bool:
        return not self.mismatches


def verify_preservation(
    f: PointMap, val_y: Mapping[str, Iterable[str]], sigma: ClosureSet
) -> PreservationReport:
    """Check each member of sigma under the pullback valuation against its preimage."""
    if not isinstance(sigma, ClosureSet):
        sigma = ClosureSet(sigma)
    target_val = {v: f.target.check_subset(s) for v, s in val_y.items()}
    model_y = Model(FiniteCarrier(f.target), target_val)
    uniq = unique_points(model_y, sigma)
    report = analyze_map(f, uniq)
    model_x = Model(FiniteCarrier(f.source), pullback_valuation(f, target_val))
    mismatches = []
    for phi in sigma.sorted():
        ext_x = evaluate(model_x, phi)
        pulled = f.preimage(evaluate(model_y, phi))
        if ext_x != pulled:
            mismatches.append((phi, ext_x, pulled))
    return PreservationReport(
        map=f, sigma=sigma, unique_pts=uniq, morphism=report,
        mismatches=tuple(mismatches),
    )


def find_u_morphisms(
    source: FiniteSpace,
    target: FiniteSpace,
    u: Iterable[str] = (),
    max_source_points: int = 6,
    first_only: bool = False,
) -> list[PointMap]:
    """All surjective U-injective interior maps source -> target, in lexicographic order.

    Backtracks over images of the source points in order. Pruning along the
    way: specialization pairs already decided must be preserved (continuity),
    a second point may not land on a u in U (injectivity), and enough points
    must remain to hit the unhit targets (surjectivity). Openness and the
    full flag set are confirmed on each complete candidate.
    """
    u_set = target.check_subset(u)
    n = len(source.points)
    if n > max_source_points:
        raise GuardError(
            f"morphism search guarded to {max_source_points} source points; "
            "raise max_source_points to force it"
        )
    if len(u_set) > n and target.points:
        return []  # u alone outnumbers the source fibers
    src, tgt = source.points, target.points
    if not tgt:
        return [] if src else ([PointMap(source, target, {})] if not u_set else [])

    found: list[PointMap] = []
    assign: dict[str, str] = {}
    hit_count: dict[str, int] = {y: 0 for y in tgt}

    def unhit() -> int:
        return sum(1 for c in hit_count.values() if c == 0)

    def backtrack(i: int) -> bool:
        if i == n:
            candidate = PointMap(source, target, dict(assign))
            report = analyze_map(candidate, u_set)
            if report.is_u_morphism:
                found.append(candidate)
                if first_only:
                    return True
            return False
        x = src[i]
        for y in tgt:
            if y in u_set and hit_count[y] >= 1:
                continue
            ok = True
            for x2, y2 in assign.items():
                if source.leq(x2, x) and not target.leq(y2, y):
                    ok = False
                    break
                if source.leq(x, x2) and not target.leq(y, y2):
                    ok = False
                    break
            if not ok:
                continue
            assign[x] = y
            hit_count[y] += 1
            if unhit() <= n - i - 1:
                if backtrack(i + 1):
                    return True
            hit_count[y] -= 1
            del assign[x]
        return False

    backtrack(0)
    return found


@dataclass
class GGReport:
    """Bounded check of the morphism-for-every-finite-U relation between two spaces."""

    holds: bool
    source: FiniteSpace
    target: FiniteSpace
    bound: int
    subsets_checked: int
    failing_u: PointSet | None = None


def gg_check(
    source: FiniteSpace,
    target: FiniteSpace,
    k: int,
    max_source_points: int = 6,
) -> GGReport:
    """Does every U of size at most k admit a surjective U-injective interior map?

    Subsets are tried by size then lexicographic order, so a failure reports
    the least failing U. At k = |target| a positive answer forces a bijective
    interior map, collapsing the relation to homeomorphism.
    """
    checked = 0
    for size in range(0, k + 1):
        for u in combinations(target.points, size):
            checked += 1
            if not find_u_morphisms(
                source, target, u,
                max_source_points=max_source_points, first_only=True,
            ):
                return GGReport(
                    holds=False, source=source, target=target, bound=k,
                    subsets_checked=checked, failing_u=frozenset(u),
                )
    return GGReport(holds=True, source=source, target=target, bound=k, subsets_checked=checked)


# -- map files -----------------------------------------------------------------

def map_to_dict(f: PointMap) -> dict:
    return {
        "from": space_to_dict(f.source),
        "to": space_to_dict(f.target),
        "map": dict(f.as_pairs()),
    }


def map_from_dict(d: Mapping) -> PointMap:
    if not all(k in d for k in ("from", "to", "map")):
        raise TopologyError("map object needs 'from', 'to' and 'map' keys")
    return PointMap(space_from_dict(d["from"]), space_from_dict(d["to"]), dict(d["map"]))


__all__ = [
    "PointMap", "MorphismReport", "analyze_map", "unique_points",
    "pullback_valuation", "PreservationReport", "verify_preservation",
    "find_u_morphisms", "GGReport", "gg_check", "map_to_dict", "map_from_dict",
    "find_homeomorphism",
]
