"""Exact topology of the real line on finitely describable regions.

A region is a finite union of rational-endpoint intervals and isolated
rational points, kept in a canonical sorted, disjoint, non-mergeable form.
All endpoints are ``fractions.Fraction``; there is no floating point
anywhere, so every operator result is an exact endpoint rewrite.

Text syntax: ``(0,1] u {2} u (5/2,inf)``, with ``empty`` and ``R`` for the
two trivial regions and ``-inf``/``inf`` for the open infinite ends.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import RegionError

Rat = Fraction


@dataclass(frozen=True)
class Pt:
    """An isolated point."""

    x: Fraction


@dataclass(frozen=True)
class Iv:
    """An interval with strictly ordered endpoints; None encodes an infinite end.

    Infinite ends are always exclusive; degenerate intervals are stored as
    Pt, never as Iv.
    """

    lo: Fraction | None
    hi: Fraction | None
    lo_closed: bool
    hi_closed: bool


Component = Pt | Iv

# Sweep form: (lo, lo_closed, hi, hi_closed) with None for infinite ends.
_Raw = tuple


def _to_raw(c: Component) -> _Raw:
    if isinstance(c, Pt):
        return (c.x, True, c.x, True)
    return (c.lo, c.lo_closed, c.hi, c.hi_closed)


def _check_raw(raw: _Raw) -> _Raw:
    lo, lo_c, hi, hi_c = raw
    if lo is None and lo_c:
        raise RegionError("-inf endpoint must be exclusive")
    if hi is None and hi_c:
        raise RegionError("inf endpoint must be exclusive")
    if lo is not None and hi is not None:
        if lo > hi:
            raise RegionError(f"malformed component: lower endpoint {lo} above upper {hi}")
        if lo == hi and not (lo_c and hi_c):
            raise RegionError(f"empty interval component at {lo}")
    return raw


def _lo_key(raw: _Raw) -> tuple:
    lo, lo_c, _, _ = raw
    if lo is None:
        return (0, 0, 0)
    return (1, lo, 0 if lo_c else 1)


def _later_start(a_lo, a_c, b_lo, b_c):
    """The more restrictive of two lower endpoints (for intersections)."""
    if a_lo is None:
        return b_lo, b_c
    if b_lo is None:
        return a_lo, a_c
    if a_lo > b_lo:
        return a_lo, a_c
    if b_lo > a_lo:
        return b_lo, b_c
    return a_lo, a_c and b_c


def _earlier_end(a_hi, a_c, b_hi, b_c):
    """The more restrictive of two upper endpoints (for intersections)."""
    if a_hi is None:
        return b_hi, b_c
    if b_hi is None:
        return a_hi, a_c
    if a_hi < b_hi:
        return a_hi, a_c
    if b_hi < a_hi:
        return b_hi, b_c
    return a_hi, a_c and b_c


def _hi_less(a: _Raw, b: _Raw) -> bool:
    """Does component a end strictly before component b ends?"""
    ah, ahc = a[2], a[3]
    bh, bhc = b[2], b[3]
    if ah is None:
        return False
    if bh is None:
        return True
    return (ah, ahc) < (bh, bhc)  # closed end reaches further than open at same value


def _touches(cur: _Raw, nxt: _Raw) -> bool:
    """Is cur union nxt a single component (given cur starts first)?"""
    hi, hi_c = cur[2], cur[3]
    lo, lo_c = nxt[0], nxt[1]
    if hi is None or lo is None:
        return True
    if lo < hi:
        return True
    return lo == hi and (hi_c or lo_c)


def _from_raws(raws: Iterable[_Raw]) -> tuple[Component, ...]:
    comps: list[Component] = []
    for lo, lo_c, hi, hi_c in raws:
        if lo is not None and hi is not None and lo == hi:
            comps.append(Pt(lo))
        else:
            comps.append(Iv(lo, hi, lo_c, hi_c))
    return tuple(comps)


@dataclass(frozen=True)
class Region:
    """Canonical finite union of intervals and isolated points on the line."""

    components: tuple[Component, ...]

    # -- constructors ---------------------------------------------------

    @staticmethod
    def point(x) -> "Region":
        return Region((Pt(Fraction(x)),))

    @staticmethod
    def interval(lo, hi, lo_closed: bool = False, hi_closed: bool = False) -> "Region":
        lo_f = None if lo is None else Fraction(lo)
        hi_f = None if hi is None else Fraction(hi)
        return normalize([Iv(lo_f, hi_f, lo_closed, hi_closed)])

    # -- Boolean algebra --------------------------------------------------

    def union(self, other: "Region") -> "Region":
        return normalize(self.components + other.components)

    def intersect(self, other: "Region") -> "Region":
        raws = []
        for a in map(_to_raw, self.components):
            for b in map(_to_raw, other.components):
                lo, lo_c = _later_start(a[0], a[1], b[0], b[1])
                hi, hi_c = _earlier_end(a[2], a[3], b[2], b[3])
                if lo is not None and hi is not None:
                    if lo > hi or (lo == hi and not (lo_c and hi_c)):
                        continue
                raws.append((lo, lo_c, hi, hi_c))
        return normalize(_from_raws(raws))

    def complement(self) -> "Region":
        raws: list[_Raw] = []
        cur_lo: Fraction | None = None
        cur_lo_c = False
        reaches_inf = True
        for comp in self.components:
            lo, lo_c, hi, hi_c = _to_raw(comp)
            if lo is not None:
                nonempty = (
                    cur_lo is None
                    or cur_lo < lo
                    or (cur_lo == lo and cur_lo_c and not lo_c)
                )
                if nonempty:
                    raws.append((cur_lo, cur_lo_c, lo, not lo_c))
            if hi is None:
                reaches_inf = False
                break
            cur_lo, cur_lo_c = hi, not hi_c
        if reaches_inf:
            raws.append((cur_lo, cur_lo_c, None, False))
        return normalize(_from_raws(raws))

    def difference(self, other: "Region") -> "Region":
        return self.intersect(other.complement())

    # -- topology ---------------------------------------------------------

    def derivative(self) -> "Region":
        """Limit points: each interval component contributes its closure, points nothing."""
        raws = []
        for c in self.components:
            if isinstance(c, Iv):
                raws.append((c.lo, c.lo is not None, c.hi, c.hi is not None))
        return normalize(_from_raws(raws))

    def closure(self) -> "Region":
        return self.union(self.derivative())

    def punctured_interior(self) -> "Region":
        return self.complement().derivative().complement()

    def interior(self) -> "Region":
        return self.complement().closure().complement()

    def operator_apply(self, kind: str) -> "Region":
        try:
            op = {
                "d": self.derivative,
                "c": self.closure,
                "i": self.interior,
                "p": self.punctured_interior,
            }[kind]
        except KeyError:
            raise ValueError(f"unknown operator kind {kind!r}, expected one of d, c, i, p")
        return op()

    # -- queries ----------------------------------------------------------

    def contains(self, x) -> bool:
        x = Fraction(x)
        for c in self.components:
            if isinstance(c, Pt):
                if c.x == x:
                    return True
            elif (c.lo is None or c.lo < x or (c.lo == x and c.lo_closed)) and (
                c.hi is None or x < c.hi or (x == c.hi and c.hi_closed)
            ):
                return True
        return False

    def is_empty(self) -> bool:
        return not self.components

    def is_full(self) -> bool:
        return self.components == (Iv(None, None, False, False),)

    def classify(self) -> tuple[str, Fraction | None]:
        """One of empty, singleton(x), co_singleton(x), full, other."""
        cs = self.components
        if not cs:
            return ("empty", None)
        if self.is_full():
            return ("full", None)
        if len(cs) == 1 and isinstance(cs[0], Pt):
            return ("singleton", cs[0].x)
        if (
            len(cs) == 2
            and isinstance(cs[0], Iv) and isinstance(cs[1], Iv)
            and cs[0].lo is None and cs[1].hi is None
            and cs[0].hi is not None and cs[0].hi == cs[1].lo
            and not cs[0].hi_closed and not cs[1].lo_closed
        ):
            return ("co_singleton", cs[0].hi)
        return ("other", None)

    def isolated_points(self) -> list[Fraction]:
        return [c.x for c in self.components if isinstance(c, Pt)]

    def __str__(self) -> str:
        return render_region(self)


def normalize(components: Iterable[Component]) -> Region:
    """Canonical region for the given components: sorted, disjoint, merged.

    Idempotent and insensitive to input order; rejects malformed components
    (lower endpoint above upper, empty intervals, closed infinite ends).
    """
    raws = [_check_raw(_to_raw(c)) for c in components]
    raws.sort(key=_lo_key)
    merged: list[_Raw] = []
    for raw in raws:
        if not merged or not _touches(merged[-1], raw):
            merged.append(raw)
            continue
        cur = merged[-1]
        if _hi_less(cur, raw):
            hi, hi_c = raw[2], raw[3]
        elif _hi_less(raw, cur):
            hi, hi_c = cur[2], cur[3]
        else:
            hi, hi_c = cur[2], cur[3] or raw[3]
        merged[-1] = (cur[0], cur[1], hi, hi_c)
    return Region(_from_raws(merged))


EMPTY = Region(())
FULL = Region((Iv(None, None, False, False),))
Region.EMPTY = EMPTY
Region.FULL = FULL


def comb(n0: int, k: int) -> Region:
    """Union of the open intervals (2^-(2n+1), 2^-2n) for n = n0 .. n0+k.

    The teeth shrink toward 0 as n grows; these are the finite truncations
    of the infinite comb valuation that refutes Kur on the line.
    """
    if n0 < 0 or k < 0:
        raise ValueError("comb wants n0 >= 0 and k >= 0")
    comps = [
        Iv(Fraction(1, 2 ** (2 * n + 1)), Fraction(1, 2 ** (2 * n)), False, False)
        for n in range(n0, n0 + k + 1)
    ]
    return normalize(comps)


def bool_op(kind: str, r1: Region, r2: Region | None = None) -> Region:
    """Set algebra dispatch: union, intersect, difference (binary), complement (unary)."""
    if kind == "complement":
        if r2 is not None:
            raise ValueError("complement takes one region")
        return r1.complement()
    if r2 is None:
        raise ValueError(f"{kind} takes two regions")
    try:
        return {
            "union": r1.union,
            "intersect": r1.intersect,
            "difference": r1.difference,
        }[kind](r2)
    except KeyError:
        raise ValueError(f"unknown Boolean op {kind!r}")


def operator_apply(kind: str, r: Region) -> Region:
    return r.operator_apply(kind)


# -- text form ----------------------------------------------------------------

_RAT_RE = re.compile(r"-?\d+(?:/\d+)?|-inf|inf")


def _render_rat(x: Fraction | None, infinite: str) -> str:
    if x is None:
        return infinite
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def render_region(r: Region) -> str:
    if r.is_empty():
        return "empty"
    if r.is_full():
        return "R"
    parts = []
    for c in r.components:
        if isinstance(c, Pt):
            parts.append("{" + _render_rat(c.x, "") + "}")
        else:
            lo = "[" if c.lo_closed else "("
            hi = "]" if c.hi_closed else ")"
            parts.append(
                f"{lo}{_render_rat(c.lo, '-inf')},{_render_rat(c.hi, 'inf')}{hi}"
            )
    return " u ".join(parts)


def _parse_rat(text: str, what: str) -> Fraction | None:
    text = text.strip()
    if text in ("-inf", "inf"):
        return None
    if not _RAT_RE.fullmatch(text):
        raise RegionError(f"malformed {what} {text!r}")
    return Fraction(text)


def parse_region(text: str) -> Region:
    """Parse region text; accepts any component order and renormalizes."""
    body = text.strip()
    if body == "empty":
        return EMPTY
    if body == "R":
        return FULL
    comps: list[Component] = []
    for part in body.split("u"):
        part = part.strip()
        if not part:
            raise RegionError(f"empty component in region text {text!r}")
        if part.startswith("{"):
            if not part.endswith("}"):
                raise RegionError(f"unterminated point component {part!r}")
            x = _parse_rat(part[1:-1], "point")
            if x is None:
                raise RegionError("an isolated point must be finite")
            comps.append(Pt(x))
            continue
        if part[0] not in "([" or part[-1] not in ")]":
            raise RegionError(f"malformed component {part!r}")
        inner = part[1:-1].split(",")
        if len(inner) != 2:
            raise RegionError(f"component {part!r} needs exactly one comma")
        lo = _parse_rat(inner[0], "endpoint")
        hi = _parse_rat(inner[1], "endpoint")
        if lo is None and inner[0].strip() == "inf":
            raise RegionError("lower endpoint cannot be inf")
        if hi is None and inner[1].strip() == "-inf":
            raise RegionError("upper endpoint cannot be -inf")
        comps.append(Iv(lo, hi, part[0] == "[", part[-1] == "]"))
    return normalize(comps)
