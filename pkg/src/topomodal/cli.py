"""Command-line entry point.

Exit codes are a contract: 0 when the checked property holds (or a plain
command succeeded), 1 when it was refuted (countermodel, missing morphism,
discrepancy, failing U), 2 on usage, input or guard errors.

``--json`` switches every command to a machine-readable envelope
``{"command", "verdict", "witness", "stats"}`` in which spaces appear as
open-family objects, regions as region text and formulas as rendered text,
all of which re-parse to equal values.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import catalog, morphism, realline, semantics, topology
from .errors import (
    GuardError, ParseError, RegionError, TopologyError, TopomodalError,
    UnboundVariableError,
)
from .formula import ClosureSet, closure_set, render, resolve, variables


def _load_json_arg(text: str) -> dict:
    """A JSON object given inline (starts with '{') or as a file path."""
    if text.lstrip().startswith("{"):
        return json.loads(text)
    with open(text) as fh:
        return json.load(fh)


def _load_space(text: str) -> topology.FiniteSpace:
    return topology.space_from_dict(_load_json_arg(text))


def _split_valuation(pairs: list[str]) -> dict[str, str]:
    out = {}
    for item in pairs:
        if "=" not in item:
            raise ValueError(f"valuation {item!r} must look like name=value")
        name, value = item.split("=", 1)
        out[name.strip()] = value
    return out


def _finite_valuation(pairs: list[str]) -> dict[str, frozenset]:
    return {
        name: frozenset(p for p in value.split(",") if p.strip() != "")
        for name, value in _split_valuation(pairs).items()
    }


def _sigma_from_text(text: str) -> ClosureSet:
    generators = [resolve(part) for part in text.split(",") if part.strip()]
    return closure_set(generators)


def _points_arg(text: str | None) -> tuple[str, ...]:
    if not text:
        return ()
    return tuple(p for p in text.split(",") if p.strip() != "")


class _Emitter:
    def __init__(self, command: str, as_json: bool):
        self.command = command
        self.as_json = as_json
        self.start = time.perf_counter()
        self.lines: list[str] = []
        self.stats: dict = {}

    def say(self, line: str):
        self.lines.append(line)

    def finish(self, code: int, verdict: str, witness=None) -> int:
        self.stats.setdefault("millis", round((time.perf_counter() - self.start) * 1000, 3))
        if self.as_json:
            print(json.dumps(
                {
                    "command": self.command,
                    "verdict": verdict,
                    "witness": witness,
                    "stats": self.stats,
                },
                indent=2,
                default=str,
            ))
        else:
            for line in self.lines:
                print(line)
        return code


def _fmt_points(points) -> str:
    return "{" + ", ".join(sorted(points)) + "}"


def _fmt_valuation(val) -> str:
    return ", ".join(f"{v}={_fmt_points(s)}" for v, s in sorted(val.items()))


def _witness_valuation(val) -> dict:
    return {v: sorted(s) for v, s in sorted(val.items())}


# -- handlers -------------------------------------------------------------------

def _cmd_parse(args) -> int:
    em = _Emitter("parse", args.json)
    f = resolve(args.formula)
    text = render(f)
    em.say(text)
    em.say(f"vars: {sorted(variables(f))}")
    return em.finish(0, "ok", {"formula": text, "vars": sorted(variables(f))})


def _cmd_eval(args) -> int:
    em = _Emitter("eval", args.json)
    model = semantics.model_from_dict(_load_json_arg(args.model))
    f = resolve(args.formula)
    ext = semantics.evaluate(model, f)
    if isinstance(model.carrier, semantics.RealCarrier):
        text = str(ext)
    else:
        text = _fmt_points(ext)
    em.say(text)
    witness = {"extension": str(ext) if isinstance(ext, realline.Region) else sorted(ext)}
    return em.finish(0, "ok", witness)


def _cmd_valid(args) -> int:
    em = _Emitter("valid", args.json)
    space = _load_space(args.space)
    f = resolve(args.formula)
    report = semantics.valid_on_space(space, f, max_bits=args.max_bits)
    em.stats["spaces"] = 1
    em.stats["valuations"] = report.valuations_checked
    if report.valid:
        em.say(f"valid on the space ({report.valuations_checked} valuations)")
        return em.finish(0, "valid", None)
    em.say("invalid")
    em.say(f"countermodel: {_fmt_valuation(report.countermodel)}")
    em.say(f"refuting point: {report.refuting_point}")
    em.say(f"extension: {_fmt_points(report.extension)}")
    return em.finish(1, "invalid", {
        "countermodel": _witness_valuation(report.countermodel),
        "refuting_point": report.refuting_point,
        "extension": sorted(report.extension),
    })


def _cmd_point_valid(args) -> int:
    em = _Emitter("point-valid", args.json)
    space = _load_space(args.space)
    f = resolve(args.formula)
    report = semantics.point_validity(space, args.point, f, max_bits=args.max_bits)
    em.stats["spaces"] = 1
    em.stats["valuations"] = report.valuations_checked
    if report.valid:
        em.say(f"valid at {args.point} ({report.valuations_checked} valuations)")
        return em.finish(0, "valid", None)
    em.say(f"invalid at {args.point}")
    em.say(f"countermodel: {_fmt_valuation(report.countermodel)}")
    return em.finish(1, "invalid", {
        "countermodel": _witness_valuation(report.countermodel),
        "refuting_point": report.refuting_point,
    })


def _cmd_equiv(args) -> int:
    em = _Emitter("equiv", args.json)
    f = resolve(args.f1)
    g = resolve(args.f2)
    report = semantics.equiv_classes_up_to(
        args.n, f, g,
        include_empty=args.include_empty,
        max_n=args.guard if args.guard is not None else 5,
        max_bits=args.max_bits,
    )
    em.stats["spaces"] = report.spaces_checked
    if report.equal:
        em.say(f"equal on {report.spaces_checked} representatives (sizes 1..{args.n})")
        return em.finish(0, "equal", None)
    em.say(f"distinct: witness {report.witness_id}")
    em.say(f"  {render(f)} valid: {report.left_valid}")
    em.say(f"  {render(g)} valid: {report.right_valid}")
    return em.finish(1, "distinct", {
        "witness_id": report.witness_id,
        "space": topology.space_to_dict(report.witness),
        "left_valid": report.left_valid,
        "right_valid": report.right_valid,
    })


def _cmd_enumerate(args) -> int:
    em = _Emitter("enumerate", args.json)
    cat = catalog.enumerate_spaces(args.n, mode=args.mode, max_n=args.guard)
    em.stats["spaces"] = len(cat)
    em.say(f"{len(cat)} spaces of size {args.n} ({args.mode})")
    spaces = []
    for space_id, space in cat.entries():
        d = topology.space_to_dict(space)
        spaces.append({"space_id": space_id, **d})
        em.say(f"{space_id}: opens {[sorted(o) for o in space.sorted_opens]}")
    return em.finish(0, "ok", {"count": len(cat), "spaces": spaces})


def _cmd_classify(args) -> int:
    em = _Emitter("classify", args.json)
    labeled = [(text, resolve(text)) for text in args.formula]
    rows = catalog.classify(
        args.n, labeled, max_bits=args.max_bits, max_n=args.guard, jobs=args.jobs
    )
    em.stats["spaces"] = len(rows)
    for line in catalog.rows_to_csv(rows).splitlines():
        em.say(line)
    return em.finish(0, "ok", {"rows": catalog.rows_to_json(rows)})


def _cmd_verify_kur(args) -> int:
    em = _Emitter("verify kur-theorem", args.json)
    report = catalog.verify_theorem_kur(args.n, max_bits=args.max_bits,
                                        max_n=args.guard, jobs=args.jobs)
    em.stats["spaces"] = report.spaces_checked
    counts = ", ".join(f"size {s}: {c}" for s, c in report.counts_by_size)
    em.say(f"checked {report.spaces_checked} representatives ({counts})")
    if report.ok:
        em.say("Kur and KurIDiff agree everywhere")
        return em.finish(0, "verified", None)
    for space_id, kur, idiff in report.discrepancies:
        em.say(f"DISCREPANCY {space_id}: Kur={kur} KurIDiff={idiff}")
    return em.finish(1, "refuted", {
        "discrepancies": [
            {"space_id": sid, "kur": a, "kur_idiff": b}
            for sid, a, b in report.discrepancies
        ]
    })


def _cmd_verify_l1c(args) -> int:
    em = _Emitter("verify l1c-lemma", args.json)
    report = catalog.verify_lemma_l1c(args.n, max_bits=args.max_bits,
                                      max_n=args.guard, jobs=args.jobs)
    em.stats["spaces"] = report.spaces_checked
    em.say(
        f"checked {report.points_checked} locally-1-component points "
        f"across {report.spaces_checked} representatives"
    )
    if report.ok:
        em.say("every one satisfies Kur")
        return em.finish(0, "verified", None)
    for space_id, x in report.violations:
        em.say(f"VIOLATION {space_id} at point {x}")
    return em.finish(1, "refuted", {
        "violations": [{"space_id": sid, "point": x} for sid, x in report.violations]
    })


def _cmd_morphism_analyze(args) -> int:
    em = _Emitter("morphism analyze", args.json)
    f = morphism.map_from_dict(_load_json_arg(args.map))
    report = morphism.analyze_map(f, _points_arg(args.u))
    em.say(f"continuous:  {report.is_continuous}")
    em.say(f"open:        {report.is_open}")
    em.say(f"surjective:  {report.is_surjective}")
    em.say(f"U-injective: {report.is_u_injective}  (U = {_fmt_points(report.u)})")
    witness = {}
    if report.continuity_witness is not None:
        em.say(f"  open set with non-open preimage: {sorted(report.continuity_witness)}")
        witness["continuity"] = sorted(report.continuity_witness)
    if report.openness_witness is not None:
        em.say(f"  open set with non-open image: {sorted(report.openness_witness)}")
        witness["openness"] = sorted(report.openness_witness)
    if report.surjectivity_witness is not None:
        em.say(f"  unhit target point: {report.surjectivity_witness}")
        witness["surjectivity"] = report.surjectivity_witness
    if report.injectivity_witness is not None:
        u, fib = report.injectivity_witness
        em.say(f"  {u} has fiber {_fmt_points(fib)}")
        witness["u_injectivity"] = {"u": u, "fiber": sorted(fib)}
    verdict = "U-morphism" if report.is_u_morphism else "not a U-morphism"
    em.say(verdict)
    return em.finish(0 if report.is_u_morphism else 1, verdict, witness or None)


def _cmd_morphism_find(args) -> int:
    em = _Emitter("morphism find", args.json)
    source = _load_space(args.source)
    target = _load_space(args.target)
    found = morphism.find_u_morphisms(
        source, target, _points_arg(args.u),
        max_source_points=args.guard, first_only=args.first,
    )
    em.stats["maps"] = len(found)
    em.say(f"{len(found)} U-morphism(s) for U = {_fmt_points(_points_arg(args.u))}")
    maps = []
    for pm in found:
        em.say("  " + ", ".join(f"{x}->{y}" for x, y in pm.as_pairs()))
        maps.append(dict(pm.as_pairs()))
    return em.finish(0 if found else 1, "found" if found else "none", {"maps": maps})


def _cmd_morphism_preserve(args) -> int:
    em = _Emitter("morphism preserve", args.json)
    f = morphism.map_from_dict(_load_json_arg(args.map))
    sigma = _sigma_from_text(args.sigma)
    val = _finite_valuation(args.valuation or [])
    report = morphism.verify_preservation(f, val, sigma)
    em.stats["formulas"] = len(sigma)
    em.say(f"sigma ({len(sigma)} formulas): {[render(p) for p in sigma.sorted()]}")
    em.say(f"unique points: {_fmt_points(report.unique_pts)}")
    em.say(f"sigma-morphism: {report.is_sigma_morphism}")
    mismatches = []
    for phi, ext_x, pulled in report.mismatches:
        em.say(
            f"MISMATCH {render(phi)}: source extension {_fmt_points(ext_x)} "
            f"!= pulled target extension {_fmt_points(pulled)}"
        )
        mismatches.append({
            "formula": render(phi),
            "source_extension": sorted(ext_x),
            "pulled_extension": sorted(pulled),
        })
    if not mismatches:
        em.say("all extensions agree with their preimages")
    return em.finish(
        0 if not mismatches else 1,
        "preserved" if not mismatches else "mismatch",
        {
            "sigma_morphism": report.is_sigma_morphism,
            "unique_points": sorted(report.unique_pts),
            "mismatches": mismatches,
        },
    )


def _cmd_gg(args) -> int:
    em = _Emitter("gg", args.json)
    source = _load_space(args.source)
    target = _load_space(args.target)
    report = morphism.gg_check(source, target, args.k, max_source_points=args.guard)
    em.stats["subsets"] = report.subsets_checked
    if report.holds:
        em.say(f"holds: every U with |U| <= {args.k} admits a U-morphism")
        return em.finish(0, "holds", None)
    em.say(f"fails at U = {_fmt_points(report.failing_u)}")
    return em.finish(1, "fails", {"failing_u": sorted(report.failing_u)})


def _cmd_real_eval(args) -> int:
    em = _Emitter("real eval", args.json)
    val = {
        name: realline.parse_region(text)
        for name, text in _split_valuation(args.valuation or []).items()
    }
    model = semantics.Model(semantics.RealCarrier(), val)
    ext = semantics.evaluate(model, resolve(args.formula))
    em.say(str(ext))
    return em.finish(0, "ok", {"extension": str(ext)})


def _cmd_search_transfer(args) -> int:
    em = _Emitter("search transfer", args.json)
    probe = resolve(args.formula)
    sigma = _sigma_from_text(args.sigma)
    report = catalog.search_transfer_pairs(
        args.n, probe, sigma,
        max_bits=args.max_bits, max_n=args.guard, max_source_points=args.source_guard,
    )
    em.stats["pairs"] = report.pairs_scanned
    em.say(
        f"exploratory search, sizes 1..{args.n}, probe {render(probe)}, "
        f"{report.pairs_scanned} candidate pairs scanned"
    )
    if report.findings:
        for finding in report.findings:
            em.say(
                f"finding: {finding.source_id} -> {finding.target_id} "
                f"(all {finding.valuations_tested} target valuations admit a morphism)"
            )
    else:
        em.say("none found")
    return em.finish(0, "complete", {
        "findings": [
            {
                "source_id": f.source_id,
                "target_id": f.target_id,
                "valuations_tested": f.valuations_tested,
            }
            for f in report.findings
        ]
    })


# -- parser ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable envelope")
    common.add_argument(
        "--seed", type=int, default=None,
        help="seed for randomized property suites; the commands here are deterministic",
    )

    bits = argparse.ArgumentParser(add_help=False)
    bits.add_argument(
        "--max-bits", type=int, default=24,
        help="guard on points x variables for valuation enumeration (default 24)",
    )

    jobs = argparse.ArgumentParser(add_help=False)
    jobs.add_argument("--jobs", type=int, default=1, help="parallel workers (default 1)")

    parser = argparse.ArgumentParser(
        prog="topomodal",
        description="exact model checking for derivative-based topological modal logic",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", parents=[common], help="parse and re-render a formula")
    p.add_argument("-f", "--formula", required=True)
    p.set_defaults(handler=_cmd_parse)

    p = sub.add_parser("eval", parents=[common], help="evaluate a formula on a model file")
    p.add_argument("--model", required=True, help="model JSON (path or inline)")
    p.add_argument("-f", "--formula", required=True)
    p.set_defaults(handler=_cmd_eval)

    p = sub.add_parser("valid", parents=[common, bits],
                       help="decide validity on a finite space")
    p.add_argument("--space", required=True, help="space JSON (path or inline)")
    p.add_argument("-f", "--formula", required=True)
    p.set_defaults(handler=_cmd_valid)

    p = sub.add_parser("point-valid", parents=[common, bits],
                       help="decide validity at one point")
    p.add_argument("--space", required=True)
    p.add_argument("-x", "--point", required=True)
    p.add_argument("-f", "--formula", required=True)
    p.set_defaults(handler=_cmd_point_valid)

    p = sub.add_parser("equiv", parents=[common, bits],
                       help="compare two formulas over all spaces up to a size")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-f1", required=True)
    p.add_argument("-f2", required=True)
    p.add_argument("--include-empty", action="store_true")
    p.add_argument("--guard", type=int, default=None, help="raise the size guard")
    p.set_defaults(handler=_cmd_equiv)

    p = sub.add_parser("enumerate", parents=[common],
                       help="enumerate finite topologies of one size")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--mode", choices=["labeled", "homeo"], default="homeo")
    p.add_argument("--guard", type=int, default=None)
    p.set_defaults(handler=_cmd_enumerate)

    p = sub.add_parser("classify", parents=[common, bits, jobs],
                       help="CSV of per-space validity flags up to a size")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-f", "--formula", action="append", required=True,
                   help="formula or built-in name; repeatable")
    p.add_argument("--guard", type=int, default=None)
    p.set_defaults(handler=_cmd_classify)

    p = sub.add_parser("verify", help="exhaustive verification suites")
    vsub = p.add_subparsers(dest="verify_command", required=True)
    v = vsub.add_parser("kur-theorem", parents=[common, bits, jobs],
                        help="Kur and KurIDiff define the same class, up to a size")
    v.add_argument("-n", type=int, required=True)
    v.add_argument("--guard", type=int, default=None)
    v.set_defaults(handler=_cmd_verify_kur)
    v = vsub.add_parser("l1c-lemma", parents=[common, bits, jobs],
                        help="locally-1-component points satisfy Kur, up to a size")
    v.add_argument("-n", type=int, required=True)
    v.add_argument("--guard", type=int, default=None)
    v.set_defaults(handler=_cmd_verify_l1c)

    p = sub.add_parser("morphism", help="interior map analysis and search")
    msub = p.add_subparsers(dest="morphism_command", required=True)
    m = msub.add_parser("analyze", parents=[common], help="flags and witnesses for a map file")
    m.add_argument("--map", required=True, help="map JSON (path or inline)")
    m.add_argument("-U", "--u", default="", help="comma-separated target points")
    m.set_defaults(handler=_cmd_morphism_analyze)
    m = msub.add_parser("find", parents=[common], help="all U-morphisms between two spaces")
    m.add_argument("--from", dest="source", required=True)
    m.add_argument("--to", dest="target", required=True)
    m.add_argument("-U", "--u", default="")
    m.add_argument("--first", action="store_true", help="stop at the first morphism")
    m.add_argument("--guard", type=int, default=6, help="max source points (default 6)")
    m.set_defaults(handler=_cmd_morphism_find)
    m = msub.add_parser("preserve", parents=[common],
                        help="pullback preservation over a closure set")
    m.add_argument("--map", required=True)
    m.add_argument("--sigma", required=True,
                   help="comma-separated generators; closed under subformulas and negations")
    m.add_argument("-v", "--valuation", action="append", default=[],
                   help="target valuation entry like p=a,b; repeatable")
    m.set_defaults(handler=_cmd_morphism_preserve)

    p = sub.add_parser("gg", parents=[common],
                       help="U-morphisms for every U up to size k")
    p.add_argument("--from", dest="source", required=True)
    p.add_argument("--to", dest="target", required=True)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--guard", type=int, default=6)
    p.set_defaults(handler=_cmd_gg)

    p = sub.add_parser("real", help="real-line evaluation")
    rsub = p.add_subparsers(dest="real_command", required=True)
    r = rsub.add_parser("eval", parents=[common], help="evaluate over region valuations")
    r.add_argument("-v", "--valuation", action="append", default=[],
                   help="region valuation entry like p=(0,1) u (1,2); repeatable")
    r.add_argument("-f", "--formula", required=True)
    r.set_defaults(handler=_cmd_real_eval)

    p = sub.add_parser("search", help="exploratory searches")
    ssub = p.add_subparsers(dest="search_command", required=True)
    s = ssub.add_parser("transfer", parents=[common, bits],
                        help="catalog pairs with morphisms under every valuation "
                             "yet disagreeing on a probe formula")
    s.add_argument("-n", type=int, required=True)
    s.add_argument("-f", "--formula", required=True)
    s.add_argument("--sigma", default="[!=]p,[i]p")
    s.add_argument("--guard", type=int, default=None)
    s.add_argument("--source-guard", type=int, default=6)
    s.set_defaults(handler=_cmd_search_transfer)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (ParseError, RegionError, TopologyError, GuardError,
            UnboundVariableError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except TopomodalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
