"""Model checking over any carrier with Boolean set algebra and the four operators.

The evaluator implements one clause per connective:

* ``~``, ``&``, ``|``, ``->`` are the Boolean operations on subsets;
* ``[d]`` maps to the punctured interior, ``[i]`` to the interior;
* ``[!=]`` is computed from how the argument sits against the full carrier:
  full stays full, a co-singleton collapses to its missing point, anything
  else collapses to empty;
* ``[A]`` is full exactly when its argument is;
* each diamond unfolds through negation of its box.

Validity on a finite space quantifies over every valuation of exactly the
variables occurring in the formula, walked in binary-counter order over
(point, variable) pairs so the least countermodel is always the one found.
Validity over the real line is deliberately not offered: region valuations
are not finitely enumerable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Mapping, Union

from . import realline
from .errors import GuardError, UnboundVariableError
from .formula import (
    All, And, Bot, CDia, DBox, DDia, DiffBox, DiffDia, Exists, Formula, IBox,
    Implies, Not, Or, Top, Var, variables,
)
from .realline import Region
from .topology import FiniteSpace, PointSet, space_from_dict, space_to_dict

Subset = Union[PointSet, Region]


class FiniteCarrier:
    """A finite space viewed through the carrier contract; subsets are frozensets."""

    def __init__(self, space: FiniteSpace):
        self.space = space

    def full(self) -> PointSet:
        return self.space.full_set

    def empty(self) -> PointSet:
        return frozenset()

    def complement(self, a: PointSet) -> PointSet:
        return self.space.full_set - a

    def union(self, a: PointSet, b: PointSet) -> PointSet:
        return a | b

    def intersect(self, a: PointSet, b: PointSet) -> PointSet:
        return a & b

    def apply(self, kind: str, a: PointSet) -> PointSet:
        return self.space.operator_apply(kind, a)

    def classify_full(self, a: PointSet):
        missing = self.space.full_set - a
        if not missing:
            return ("full", None)
        if len(missing) == 1:
            return ("co_singleton", next(iter(missing)))
        return ("other", None)

    def contains(self, a: PointSet, x: str) -> bool:
        self.space.check_subset({x})
        return x in a

    def check_value(self, a) -> PointSet:
        return self.space.check_subset(a)

    def singleton(self, x) -> PointSet:
        return frozenset({x})


class RealCarrier:
    """The real line; subsets are canonical Regions."""

    def full(self) -> Region:
        return realline.FULL

    def empty(self) -> Region:
        return realline.EMPTY

    def complement(self, a: Region) -> Region:
        return a.complement()

    def union(self, a: Region, b: Region) -> Region:
        return a.union(b)

    def intersect(self, a: Region, b: Region) -> Region:
        return a.intersect(b)

    def apply(self, kind: str, a: Region) -> Region:
        return a.operator_apply(kind)

    def classify_full(self, a: Region):
        kind, x = a.classify()
        if kind == "full":
            return ("full", None)
        if kind == "co_singleton":
            return ("co_singleton", x)
        return ("other", None)

    def contains(self, a: Region, x) -> bool:
        return a.contains(Fraction(x))

    def check_value(self, a) -> Region:
        if not isinstance(a, Region):
            raise TypeError(f"real-line valuations must be Regions, got {type(a).__name__}")
        return a

    def singleton(self, x) -> Region:
        return Region.point(x)


Carrier = Union[FiniteCarrier, RealCarrier]


@dataclass
class Model:
    """A carrier plus a valuation of propositional variables by carrier subsets."""

    carrier: Carrier
    valuation: Mapping[str, Subset]

    def __post_init__(self):
        self.valuation = {
            name: self.carrier.check_value(v) for name, v in self.valuation.items()
        }


def evaluate(model: Model, f: Formula) -> Subset:
    """The exact extension of f in the model."""
    k = model.carrier
    match f:
        case Var(name):
            try:
                return model.valuation[name]
            except KeyError:
                raise UnboundVariableError(name) from None
        case Top():
            return k.full()
        case Bot():
            return k.empty()
        case Not(child):
            return k.complement(evaluate(model, child))
        case And(left, right):
            return k.intersect(evaluate(model, left), evaluate(model, right))
        case Or(left, right):
            return k.union(evaluate(model, left), evaluate(model, right))
        case Implies(left, right):
            return k.union(k.complement(evaluate(model, left)), evaluate(model, right))
        case DBox(child):
            return k.apply("p", evaluate(model, child))
        case IBox(child):
            return k.apply("i", evaluate(model, child))
        case DiffBox(child):
            ext = evaluate(model, child)
            kind, x = k.classify_full(ext)
            if kind == "full":
                return k.full()
            if kind == "co_singleton":
                return k.singleton(x)
            return k.empty()
        case All(child):
            ext = evaluate(model, child)
            kind, _ = k.classify_full(ext)
            return k.full() if kind == "full" else k.empty()
        # Diamonds unfold through negation of the matching box.
        case DDia(child):
            return evaluate(model, Not(DBox(Not(child))))
        case CDia(child):
            return evaluate(model, Not(IBox(Not(child))))
        case DiffDia(child):
            return evaluate(model, Not(DiffBox(Not(child))))
        case Exists(child):
            return evaluate(model, Not(All(Not(child))))
    raise TypeError(f"not a formula node: {f!r}")


def satisfies(model: Model, x, f: Formula) -> bool:
    """Truth of f at the point x."""
    return model.carrier.contains(evaluate(model, f), x)


@dataclass
class ValidityReport:
    """Outcome of a validity search, with a re-checkable countermodel when refuted.

    ``countermodel`` is the least refuting valuation in binary-counter order
    and ``refuting_point`` the least point it fails at; ``extension`` is the
    formula's extension under that valuation.
    """

    valid: bool
    formula: Formula
    countermodel: dict[str, PointSet] | None = None
    refuting_point: str | None = None
    extension: PointSet | None = None
    valuations_checked: int = 0
    valuations_total: int = 0
    points_restricted_to: tuple[str, ...] | None = field(default=None, repr=False)

    def recheck(self, space: FiniteSpace) -> bool:
        """Re-derive the verdict this report claims, from the raw space."""
        if self.valid:
            return valid_on_space(space, self.formula).valid
        model = Model(FiniteCarrier(space), self.countermodel)
        ext = evaluate(model, self.formula)
        return ext == self.extension and self.refuting_point not in ext


def _valuations(
    points: tuple[str, ...], names: tuple[str, ...]
) -> Iterator[dict[str, PointSet]]:
    """All valuations of the names over the points, as a binary counter.

    Bit i of the counter decides the i-th (point, variable) pair, pairs
    ordered by point first (lexicographic) then variable name.
    """
    pairs = [(pt, v) for pt in points for v in names]
    for counter in range(1 << len(pairs)):
        val: dict[str, set] = {v: set() for v in names}
        for i, (pt, v) in enumerate(pairs):
            if counter >> i & 1:
                val[v].add(pt)
        yield {v: frozenset(s) for v, s in val.items()}


def _validity_search(
    space: FiniteSpace,
    f: Formula,
    check_points: tuple[str, ...],
    max_bits: int,
) -> ValidityReport:
    names = tuple(sorted(variables(f)))
    bits = len(space.points) * len(names)
    if bits > max_bits:
        raise GuardError(
            f"{len(space.points)} points x {len(names)} variables needs 2^{bits} "
            f"valuations, over the {max_bits}-bit guard; raise max_bits to force it"
        )
    carrier = FiniteCarrier(space)
    total = 1 << bits
    checked = 0
    for val in _valuations(space.points, names):
        checked += 1
        ext = evaluate(Model(carrier, val), f)
        for x in check_points:
            if x not in ext:
                return ValidityReport(
                    valid=False,
                    formula=f,
                    countermodel=val,
                    refuting_point=x,
                    extension=ext,
                    valuations_checked=checked,
                    valuations_total=total,
                    points_restricted_to=check_points if check_points != space.points else None,
                )
    return ValidityReport(
        valid=True, formula=f, valuations_checked=checked, valuations_total=total
    )


def valid_on_space(space: FiniteSpace, f: Formula, max_bits: int = 24) -> ValidityReport:
    """Is f true at every point under every valuation of its variables?"""
    return _validity_search(space, f, space.points, max_bits)


def point_validity(space: FiniteSpace, x: str, f: Formula, max_bits: int = 24) -> ValidityReport:
    """Is f true at the point x under every valuation of its variables?"""
    space.check_subset({x})
    return _validity_search(space, f, (x,), max_bits)


@dataclass
class EquivReport:
    """Outcome of comparing the definable classes of two formulas on a finite catalog."""

    equal: bool
    left: Formula
    right: Formula
    max_size: int
    spaces_checked: int
    witness: FiniteSpace | None = None
    witness_id: str | None = None
    left_valid: bool | None = None
    right_valid: bool | None = None


def equiv_classes_up_to(
    n: int,
    f: Formula,
    g: Formula,
    include_empty: bool = False,
    max_n: int = 5,
    max_bits: int = 24,
) -> EquivReport:
    """Do f and g hold on exactly the same spaces of size up to n (up to homeomorphism)?

    Finite evidence only: agreement here says nothing about infinite spaces.
    The least witness (smallest size, canonical order) is reported on
    disagreement.
    """
    from . import catalog  # deferred: catalog builds on this module

    if n > max_n:
        raise GuardError(f"equivalence check guarded to size {max_n}; raise max_n to force it")
    checked = 0
    sizes = ([0] if include_empty else []) + list(range(1, n + 1))
    for size in sizes:
        cat = catalog.enumerate_spaces(size, mode="homeo", max_n=max_n)
        for space_id, space in cat.entries():
            checked += 1
            fv = valid_on_space(space, f, max_bits=max_bits).valid
            gv = valid_on_space(space, g, max_bits=max_bits).valid
            if fv != gv:
                return EquivReport(
                    equal=False, left=f, right=g, max_size=n,
                    spaces_checked=checked, witness=space, witness_id=space_id,
                    left_valid=fv, right_valid=gv,
                )
    return EquivReport(equal=True, left=f, right=g, max_size=n, spaces_checked=checked)


# -- model files ---------------------------------------------------------------

def model_to_dict(model: Model) -> dict:
    if isinstance(model.carrier, RealCarrier):
        return {
            "space": "R",
            "valuation": {v: str(r) for v, r in sorted(model.valuation.items())},
        }
    return {
        "space": space_to_dict(model.carrier.space),
        "valuation": {v: sorted(s) for v, s in sorted(model.valuation.items())},
    }


def model_from_dict(d: Mapping) -> Model:
    if not isinstance(d, Mapping) or "space" not in d:
        raise ValueError("model object must be a mapping with a 'space' key")
    space = d["space"]
    valuation = d.get("valuation", {})
    if space == "R":
        val = {v: realline.parse_region(text) for v, text in valuation.items()}
        return Model(RealCarrier(), val)
    finite = space_from_dict(space)
    val = {v: frozenset(pts) for v, pts in valuation.items()}
    return Model(FiniteCarrier(finite), val)
