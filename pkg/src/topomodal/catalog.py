"""Catalogs of finite topologies and the exhaustive verification suites.

Spaces are enumerated through preorders (one minimal-neighborhood bitmask
row per point), which is exact because finite topologies and preorders
determine each other. Homeomorphism mode keeps one canonically labeled
representative per isomorphism class of preorders.

A second, deliberately dumb enumeration path counts topologies directly as
open-set families closed under union and intersection; it exists so the two
counts can be required to agree. Reference counts for small sizes are kept
as an advisory cross-check (a warning, never a failure, so the tool stays
self-contained).
"""

from __future__ import annotations

import csv
import io
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import Iterable, Sequence

from .errors import GuardError
from .formula import (
    ClosureSet, Formula, KUR, KUR_IDIFF, render, variables,
)
from .morphism import find_u_morphisms, unique_points
from .semantics import (
    FiniteCarrier, Model, _valuations, point_validity, valid_on_space,
)
from .topology import (
    FiniteSpace, canonical_down_rows, default_point_names, empty_space,
    preorder_down_rows, space_from_down_rows, space_to_dict,
)

# Counts of finite topologies reported in the combinatorial literature,
# used only to warn when an enumeration disagrees.
REFERENCE_LABELED_COUNTS = {0: 1, 1: 1, 2: 4, 3: 29, 4: 355, 5: 6942, 6: 209527}
REFERENCE_HOMEO_COUNTS = {0: 1, 1: 1, 2: 3, 3: 9, 4: 33, 5: 139, 6: 718}

DEFAULT_LABELED_GUARD = 5
DEFAULT_HOMEO_GUARD = 6


@dataclass(frozen=True)
class SpaceCatalog:
    """Complete, duplicate-free list of the topologies of one size."""

    size: int
    mode: str  # "labeled" or "homeo"
    spaces: tuple[FiniteSpace, ...]

    def ids(self) -> list[str]:
        tag = "" if self.mode == "homeo" else "L"
        width = max(3, len(str(len(self.spaces))))
        return [f"n{self.size}{tag}_{i:0{width}d}" for i in range(len(self.spaces))]

    def entries(self) -> list[tuple[str, FiniteSpace]]:
        return list(zip(self.ids(), self.spaces))

    def __len__(self) -> int:
        return len(self.spaces)


@lru_cache(maxsize=32)
def _catalog_cached(n: int, mode: str) -> SpaceCatalog:
    if n == 0:
        return SpaceCatalog(0, mode, (empty_space(),))
    if mode == "labeled":
        rows_list = sorted(preorder_down_rows(n))
    else:
        rows_list = sorted({canonical_down_rows(rows)[0] for rows in preorder_down_rows(n)})
    points = default_point_names(n)
    spaces = tuple(space_from_down_rows(rows, points) for rows in rows_list)
    reference = (
        REFERENCE_LABELED_COUNTS if mode == "labeled" else REFERENCE_HOMEO_COUNTS
    ).get(n)
    if reference is not None and reference != len(spaces):
        warnings.warn(
            f"enumeration found {len(spaces)} spaces of size {n} ({mode}); "
            f"reference count is {reference}",
            stacklevel=2,
        )
    return SpaceCatalog(n, mode, spaces)


def enumerate_spaces(n: int, mode: str = "homeo", max_n: int | None = None) -> SpaceCatalog:
    """All topologies on n points, either labeled or up to homeomorphism."""
    if mode not in ("labeled", "homeo"):
        raise ValueError(f"mode must be 'labeled' or 'homeo', got {mode!r}")
    guard = max_n if max_n is not None else (
        DEFAULT_LABELED_GUARD if mode == "labeled" else DEFAULT_HOMEO_GUARD
    )
    if n > guard:
        raise GuardError(
            f"enumeration of size {n} exceeds the guard {guard}; raise max_n to force it"
        )
    return _catalog_cached(n, mode)


def spaces_up_to(n: int, max_n: int | None = None) -> list[tuple[str, FiniteSpace]]:
    """Homeomorphism representatives of every size 1..n, with stable ids."""
    out: list[tuple[str, FiniteSpace]] = []
    for size in range(1, n + 1):
        out.extend(enumerate_spaces(size, "homeo", max_n=max_n).entries())
    return out


# -- classification -------------------------------------------------------------

@dataclass(frozen=True)
class ClassificationRow:
    space_id: str
    size: int
    flags: tuple[tuple[str, bool], ...]  # (formula label, valid) in request order
    loc1comp: bool
    connected: bool
    space: FiniteSpace

    def flag(self, label: str) -> bool:
        return dict(self.flags)[label]


def _classify_one(args) -> ClassificationRow:
    space_id, space, labeled_formulas, max_bits = args
    flags = tuple(
        (label, valid_on_space(space, f, max_bits=max_bits).valid)
        for label, f in labeled_formulas
    )
    return ClassificationRow(
        space_id=space_id,
        size=len(space.points),
        flags=flags,
        loc1comp=all(space.is_locally_1_component(x) for x in space.points),
        connected=space.is_connected(space.points),
        space=space,
    )


def classify(
    n: int,
    formulas: Sequence[tuple[str, Formula]],
    max_bits: int = 24,
    max_n: int | None = None,
    jobs: int = 1,
) -> list[ClassificationRow]:
    """One row per homeomorphism representative of sizes 1..n.

    Rows come back in canonical space order regardless of the worker count.
    """
    tasks = [
        (space_id, space, tuple(formulas), max_bits)
        for space_id, space in spaces_up_to(n, max_n=max_n)
    ]
    return _pmap(_classify_one, tasks, jobs)


def rows_to_csv(rows: Iterable[ClassificationRow]) -> str:
    rows = list(rows)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    labels = [label for label, _ in rows[0].flags] if rows else []
    writer.writerow(["space_id", "n", *labels, "loc1comp", "connected"])
    for row in rows:
        writer.writerow(
            [row.space_id, row.size]
            + [str(v).lower() for _, v in row.flags]
            + [str(row.loc1comp).lower(), str(row.connected).lower()]
        )
    return buf.getvalue()


def rows_to_json(rows: Iterable[ClassificationRow]) -> list[dict]:
    return [
        {
            "space_id": row.space_id,
            "n": row.size,
            "flags": {label: v for label, v in row.flags},
            "loc1comp": row.loc1comp,
            "connected": row.connected,
            "space": space_to_dict(row.space),
        }
        for row in rows
    ]


# -- exhaustive theorem suites ---------------------------------------------------

@dataclass(frozen=True)
class KurTheoremReport:
    """Exhaustive agreement check of Kur and KurIDiff validity on a catalog."""

    max_size: int
    spaces_checked: int
    counts_by_size: tuple[tuple[int, int], ...]
    discrepancies: tuple[tuple[str, bool, bool], ...]  # (space_id, kur, kur_idiff)

    @property
    def ok(self) -> bool:
        return not self.discrepancies


def _kur_flags_one(args) -> tuple[str, bool, bool]:
    space_id, space, max_bits = args
    return (
        space_id,
        valid_on_space(space, KUR, max_bits=max_bits).valid,
        valid_on_space(space, KUR_IDIFF, max_bits=max_bits).valid,
    )


def _pmap(fn, tasks, jobs: int):
    if jobs <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, tasks, chunksize=8))


def verify_theorem_kur(
    n: int, max_bits: int = 24, max_n: int | None = None, jobs: int = 1
) -> KurTheoremReport:
    """Check Kur and KurIDiff agree on every representative of sizes 1..n."""
    counts: list[tuple[int, int]] = []
    tasks = []
    for size in range(1, n + 1):
        cat = enumerate_spaces(size, "homeo", max_n=max_n)
        counts.append((size, len(cat)))
        tasks.extend((space_id, space, max_bits) for space_id, space in cat.entries())
    results = _pmap(_kur_flags_one, tasks, jobs)
    bad = tuple(
        (space_id, kur, idiff) for space_id, kur, idiff in results if kur != idiff
    )
    return KurTheoremReport(
        max_size=n, spaces_checked=len(results),
        counts_by_size=tuple(counts), discrepancies=bad,
    )


@dataclass(frozen=True)
class L1CLemmaReport:
    """Every locally-1-component point must satisfy Kur under all valuations."""

    max_size: int
    spaces_checked: int
    points_checked: int
    violations: tuple[tuple[str, str], ...]  # (space_id, point)

    @property
    def ok(self) -> bool:
        return not self.violations


def _l1c_one(args) -> tuple[int, tuple[tuple[str, str], ...]]:
    space_id, space, max_bits = args
    checked = 0
    bad = []
    for x in space.points:
        if not space.is_locally_1_component(x):
            continue
        checked += 1
        if not point_validity(space, x, KUR, max_bits=max_bits).valid:
            bad.append((space_id, x))
    return checked, tuple(bad)


def verify_lemma_l1c(
    n: int, max_bits: int = 24, max_n: int | None = None, jobs: int = 1
) -> L1CLemmaReport:
    tasks = [
        (space_id, space, max_bits) for space_id, space in spaces_up_to(n, max_n=max_n)
    ]
    results = _pmap(_l1c_one, tasks, jobs)
    bad: list[tuple[str, str]] = []
    for _, violations in results:
        bad.extend(violations)
    return L1CLemmaReport(
        max_size=n, spaces_checked=len(tasks),
        points_checked=sum(c for c, _ in results), violations=tuple(bad),
    )


# -- exploratory separation search ------------------------------------------------

@dataclass(frozen=True)
class TransferFinding:
    source_id: str
    target_id: str
    valuations_tested: int


@dataclass(frozen=True)
class TransferReport:
    """Outcome of the finite search for validity-transfer pairs.

    Exploratory by construction: a finding is a catalog pair (X, Y) where a
    surjective interior map injective on the sigma-unique points exists for
    every tested target valuation, yet the probe formula is valid on X and
    not on Y. An empty list is a search result, not a theorem.
    """

    max_size: int
    formula: Formula
    sigma: tuple[Formula, ...]
    pairs_scanned: int
    findings: tuple[TransferFinding, ...]


def search_transfer_pairs(
    n: int,
    probe: Formula,
    sigma: ClosureSet,
    max_bits: int = 24,
    max_n: int | None = None,
    max_source_points: int = 6,
) -> TransferReport:
    if not isinstance(sigma, ClosureSet):
        sigma = ClosureSet(sigma)
    names = tuple(sorted(set().union(*(variables(f) for f in sigma)) if sigma else set()))
    reps = spaces_up_to(n, max_n=max_n)
    flags = {
        space_id: valid_on_space(space, probe, max_bits=max_bits).valid
        for space_id, space in reps
    }
    findings: list[TransferFinding] = []
    scanned = 0
    for x_id, x_space in reps:
        if not flags[x_id]:
            continue
        for y_id, y_space in reps:
            if x_id == y_id or flags[y_id]:
                continue
            scanned += 1
            carrier = FiniteCarrier(y_space)
            tested = 0
            all_admit = True
            for val in _valuations(y_space.points, names):
                tested += 1
                uniq = unique_points(Model(carrier, val), sigma)
                if not find_u_morphisms(
                    x_space, y_space, uniq,
                    max_source_points=max_source_points, first_only=True,
                ):
                    all_admit = False
                    break
            if all_admit:
                findings.append(TransferFinding(x_id, y_id, tested))
    return TransferReport(
        max_size=n, formula=probe, sigma=tuple(sigma.sorted()),
        pairs_scanned=scanned, findings=tuple(findings),
    )


# -- independent enumeration path (open-set families) ------------------------------

def labeled_spaces_open_families(n: int, max_n: int = 4) -> list[tuple[int, ...]]:
    """Every topology on n points found by brute force over subset families.

    Walks all families of proper nonempty subsets, keeps those closed under
    pairwise union and intersection once the empty and full sets join, and
    returns each as a sorted mask tuple. Exponential in 2^n; guarded low on
    purpose, this is the oracle the preorder path is checked against.
    """
    if n > max_n:
        raise GuardError(
            f"open-family enumeration is doubly exponential; guarded to {max_n} points"
        )
    if n == 0:
        return [(0,)]
    full = (1 << n) - 1
    mids = list(range(1, full))
    out = []
    for pick in range(1 << len(mids)):
        fam = [0, full] + [m for i, m in enumerate(mids) if pick >> i & 1]
        fam_set = set(fam)
        ok = True
        for i, a in enumerate(fam):
            for b in fam[i + 1:]:
                if a | b not in fam_set or a & b not in fam_set:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(tuple(sorted(fam_set)))
    return out


def _relabel_family(fam: tuple[int, ...], perm: Sequence[int], n: int) -> tuple[int, ...]:
    out = []
    for mask in fam:
        new = 0
        for i in range(n):
            if mask >> i & 1:
                new |= 1 << perm[i]
        out.append(new)
    return tuple(sorted(out))


def homeo_count_open_families(n: int, max_n: int = 4) -> int:
    """Homeomorphism classes counted on the open-family path.

    Deduplicates by the least relabeling of the family over all point
    permutations; independent of the preorder canonical form.
    """
    fams = labeled_spaces_open_families(n, max_n=max_n)
    perms = list(permutations(range(n))) if n else [()]
    canon = set()
    for fam in fams:
        canon.add(min(_relabel_family(fam, p, n) for p in perms))
    return len(canon)


@dataclass(frozen=True)
class CountCrosscheck:
    size: int
    labeled_preorder: int
    labeled_open_families: int
    homeo_preorder: int
    homeo_open_families: int

    @property
    def agree(self) -> bool:
        return (
            self.labeled_preorder == self.labeled_open_families
            and self.homeo_preorder == self.homeo_open_families
        )


def count_crosscheck(n: int, max_n: int = 4) -> CountCrosscheck:
    """Counts of size-n topologies computed by both enumeration paths."""
    labeled_p = len(enumerate_spaces(n, "labeled", max_n=max(n, DEFAULT_LABELED_GUARD)))
    homeo_p = len(enumerate_spaces(n, "homeo", max_n=max(n, DEFAULT_HOMEO_GUARD)))
    labeled_o = len(labeled_spaces_open_families(n, max_n=max_n))
    homeo_o = homeo_count_open_families(n, max_n=max_n)
    return CountCrosscheck(n, labeled_p, labeled_o, homeo_p, homeo_o)
