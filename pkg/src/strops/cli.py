"""``strops`` command line: rings, squares, string rings, E^2 pages, towers, Q operations.

Exit status is 0 on success, 2 on domain errors and 64 on usage errors.
Output is deterministic: bases follow the monomial order and tables are sorted
by source basis.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from typing import Sequence

from .catalog import ManifoldData, parse_fiber, parse_space
from .errors import StropsError
from .graded_algebra import Coefficients, GradedElement, RingPresentation
from .pro_tower import o2_comparison, o2_tower, s1_tower, tower_limit
from .qops import q_context, q_op
from .steenrod import action_for, twisted_sq
from .string_product import (
    cjy_e2_page,
    intersection_ring,
    string_ring,
    trivial_model,
    verify_structure_homs,
)

EX_OK = 0
EX_DOMAIN = 2
EX_USAGE = 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(f"{self.prog}: {message}")


def _window(text: str) -> tuple[int, int]:
    m = re.fullmatch(r"\s*(-?\d+)\s*:\s*(-?\d+)\s*", text)
    if not m:
        raise argparse.ArgumentTypeError(f"window must look like LO:HI, got {text!r}")
    lo, hi = int(m[1]), int(m[2])
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty window {text!r}")
    return lo, hi


def _signed(k: int) -> str:
    return f"{k:+d}" if k else "0"


# -- formatting helpers ----------------------------------------------------------


def _ring_entries(ring: RingPresentation, degrees: Sequence[int], shift: int | None) -> list[dict]:
    out = []
    for k in degrees:
        basis = ring.basis_in_degree(k)
        if not basis:
            continue
        entry = {"degree": k}
        if shift is not None:
            entry["unshifted_degree"] = k + shift
        entry["basis"] = [ring.format_monomial(m) for m in basis]
        entry["dim"] = len(basis)
        out.append(entry)
    return out


def _products(elems: Sequence[GradedElement]) -> list[dict]:
    return [{"a": str(a), "b": str(b), "result": str(a * b)} for a in elems for b in elems]


def _table(rows: Sequence[Sequence[str]], header: Sequence[str]) -> str:
    rows = [list(map(str, r)) for r in rows]
    widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h) for i, h in enumerate(header)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip()]
    lines.append("  ".join("-" * w for w in widths))
    lines += ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows]
    return "\n".join(lines)


def _entries_table(entries: list[dict], shifted: bool) -> str:
    if shifted:
        rows = [(_signed(e["degree"]), e.get("unshifted_degree", ""), e["dim"], ", ".join(e["basis"])) for e in entries]
        return _table(rows, ["HH-degree", "H-degree", "dim", "basis"])
    rows = [(e["degree"], e["dim"], ", ".join(e["basis"])) for e in entries]
    return _table(rows, ["degree", "dim", "basis"])


def _products_table(products: list[dict]) -> str:
    return _table([(p["a"], p["b"], p["result"]) for p in products], ["a", "b", "a*b"])


# -- commands -------------------------------------------------------------------------


def cmd_ring(args) -> tuple[dict, str]:
    M = parse_space(args.space)
    if args.coeffs:
        M = M.over(Coefficients.parse(args.coeffs))
    if args.kind == "intersection":
        ring = intersection_ring(M).ring
        lo, hi = ring.degree_range()
        entries = _ring_entries(ring, range(lo, hi + 1), M.dim)
    else:
        ring = M.cohomology
        lo, hi = ring.degree_range()
        entries = _ring_entries(ring, range(lo, hi + 1), None)
    elems = [e for k in range(lo, hi + 1) for e in ring.basis_elements(k)]
    doc = {
        "space": M.name,
        "kind": args.kind,
        "dim": M.dim,
        "ring": ring.to_dict(),
        "entries": entries,
        "products": _products(elems),
    }
    text = "\n\n".join([
        f"{args.kind} ring of {M.name} (dim {M.dim}): {ring!r}",
        _entries_table(entries, args.kind == "intersection"),
        _products_table(doc["products"]),
    ])
    return doc, text


def cmd_sq(args) -> tuple[dict, str]:
    M = parse_space(args.space).mod2
    act = action_for(M)
    x = M.cohomology.parse(args.cls)
    if args.twisted:
        result = twisted_sq(args.i, x, M.negative_tangent_twist(), act)
        op = f"Sq^{args.i}_t"
    else:
        result = act.sq(args.i, x)
        op = f"Sq^{args.i}"
    doc = {"space": M.name, "operation": op, "class": str(x), "result": str(result)}
    return doc, f"{op}({x}) = {result}  in H^*({M.name}; F2)"


def cmd_string_ring(args) -> tuple[dict, str]:
    S = string_ring(trivial_model(parse_space(args.base), parse_fiber(args.fiber)), args.window)
    entries = _ring_entries(S.ring, S.degrees, S.intersection.dim)
    doc = {
        "base": S.model.base.name,
        "fiber": S.fiber.name,
        "window": list(S.window),
        "ring": S.ring.to_dict(),
        "entries": entries,
        "products": [{"a": str(a), "b": str(b), "result": str(r)} for a, b, r in S.product_table()],
    }
    text = "\n\n".join([
        f"string ring of {S.model.name}, window {S.window[0]}:{S.window[1]}: {S.ring!r}",
        _entries_table(entries, True),
        _products_table(doc["products"]),
    ])
    return doc, text


def cmd_e2(args) -> tuple[dict, str]:
    P = cjy_e2_page(parse_space(args.base), parse_fiber(args.fiber), args.tmax)
    entries = []
    for bd in P.nonzero_bidegrees():
        basis = P.entries[bd]
        entries.append({
            "bidegree": list(bd),
            "total_degree": bd[0] + bd[1],
            "basis": [P.ring.format_monomial(m) for m in basis],
            "dim": len(basis),
        })
    elems = [P.ring.monomial(m) for bd in P.nonzero_bidegrees() for m in P.entries[bd]]
    doc = {
        "base": P.base.name,
        "fiber": P.fiber.name,
        "tmax": args.tmax,
        "entries": entries,
        "products": _products(elems),
    }
    if P.certificate:
        doc["certificate"] = P.certificate
    rows = [(f"({e['bidegree'][0]},{e['bidegree'][1]})", _signed(e["total_degree"]), e["dim"], ", ".join(e["basis"])) for e in entries]
    parts = [
        f"E2 page for {P.fiber.name} -> E -> {P.base.name} (total degree <= {args.tmax})",
        _table(rows, ["(-m,n)", "total", "dim", "basis"]),
        _products_table(doc["products"]),
        "certificate: " + (P.certificate or "none (bidegree argument does not apply)"),
    ]
    return doc, "\n\n".join(parts)


def cmd_tower(args) -> tuple[dict, str]:
    if args.group == "s1":
        tower = s1_tower(args.levels)
    else:
        tower = o2_tower(args.levels)
    levels = []
    parts = []
    for lv in tower.levels:
        lo, hi = lv.ring.degree_range()
        entries = _ring_entries(lv.ring, range(lo, hi + 1), lv.shift)
        level = {"n": lv.n, "ring": lv.ring.to_dict(), "entries": entries}
        parts.append(f"level {lv.n}: {lv.ring!r}\n" + _entries_table(entries, True))
        if lv.sq1t_table is not None:
            level["sq1t_table"] = dict(sorted(lv.sq1t_table.items()))
            parts.append(_table(sorted(lv.sq1t_table.items()), ["x in HH_1", "x Sq^1_t"]))
        levels.append(level)
    maps = []
    for n, f in sorted(tower.maps.items()):
        images = {g: str(img) for g, img in zip(f.source.names, f.images)}
        maps.append({"source": n + 1, "target": n, "images": images})
        parts.append(f"map {n + 1} -> {n}: " + ", ".join(f"{g} -> {v}" for g, v in images.items()))
    doc = {"group": args.group, "levels": levels, "maps": maps}
    if args.limit:
        if args.window is None:
            raise UsageError("--limit needs --window LO:HI")
        L = tower_limit(tower, args.window)
        basis = {str(k): [L.ring.format_monomial(m) for m in b] for k, b in L.all_basis().items()}
        doc["limit"] = {"window": list(args.window), "computed_at_level": L.level, "basis": basis}
        parts.append(
            f"inverse limit in degrees {args.window[0]}..{args.window[1]} (stable from level {L.level}):\n"
            + _table([(_signed(int(k)), ", ".join(v)) for k, v in basis.items()], ["HH-degree", "basis"])
        )
    if args.group == "o2":
        cert = o2_comparison(args.levels)
        doc["certificate"] = {
            "invariant": cert.invariant,
            "inequivalent": cert.inequivalent,
            "witness_levels": list(cert.witness_levels),
            "h1_maps_iso": cert.h1_maps_iso,
            "levels": [
                {
                    "n": r.n,
                    "trivial_h1_dim": r.trivial_h1_dim,
                    "trivial_sq1t_rank": r.trivial_sq1t_rank,
                    "adjoint_h1_dim": r.adjoint_h1_dim,
                    "adjoint_sq1t_injective": r.adjoint_sq1t_injective,
                    "adjoint_reason": r.adjoint_reason,
                }
                for r in cert.levels
            ],
            "summary": cert.summary(),
        }
        rows = [
            (r.n, r.trivial_sq1t_rank, {True: "yes", False: "no", None: "?"}[r.adjoint_sq1t_injective], r.adjoint_reason)
            for r in cert.levels
        ]
        parts.append(_table(rows, ["n", "rank Sq^1_t (M x O(2))", "injective (Ad)", "reason"]))
        parts.append(cert.summary())
    return doc, "\n\n".join(parts)


def _parse_homology_class(M: ManifoldData, text: str):
    ctx = q_context(M)
    m = re.fullmatch(r"\s*PD\((.*)\)\s*", text)
    if m:
        return ctx, ctx.intersection.from_cohomology(ctx.manifold.cohomology.parse(m[1]))
    return ctx, ctx.ring.parse(text)


def cmd_qop(args) -> tuple[dict, str]:
    ctx, x = _parse_homology_class(parse_space(args.space), args.cls)
    result = q_op(args.i, x, ctx)
    deg = x.degree
    doc = {
        "space": ctx.manifold.name,
        "i": args.i,
        "class": str(x),
        "degree": deg,
        "result": str(result),
        "result_degree": None if deg is None else 2 * deg + args.i,
    }
    text = f"Q_{args.i}({x}) = {result}  in HH_*({ctx.manifold.name}; F2)"
    return doc, text


def cmd_verify(args) -> tuple[dict, str]:
    report = verify_structure_homs(trivial_model(parse_space(args.base), parse_fiber(args.fiber)), args.window)
    checks = [
        {
            "map": c.name,
            "passed": c.passed,
            "pairs_checked": c.pairs_checked,
            "unit_preserved": c.unit_preserved,
            "counterexample": None if c.counterexample is None else list(c.counterexample),
        }
        for c in report.checks
    ]
    doc = {"model": report.model, "window": list(report.window), "passed": report.passed, "checks": checks}
    rows = [(c["map"], "pass" if c["passed"] else "FAIL", c["pairs_checked"]) for c in checks]
    text = f"structure maps for {report.model}, window {report.window[0]}:{report.window[1]}\n\n" + _table(
        rows, ["map", "result", "pairs"]
    )
    return doc, text


# -- parser ----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="strops", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def add(name, func, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--format", choices=["table", "json"], default="table")
        p.set_defaults(func=func)
        return p

    p = add("ring", cmd_ring, "cohomology or intersection ring of a catalog space")
    p.add_argument("--space", required=True)
    p.add_argument("--kind", choices=["cohomology", "intersection"], default="cohomology")
    p.add_argument("--coeffs", help="reduce coefficients, e.g. F2")

    p = add("sq", cmd_sq, "Steenrod square of a cohomology class")
    p.add_argument("--space", required=True)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--class", dest="cls", required=True)
    p.add_argument("--twisted", action="store_true", help="twist by -TM")

    p = add("string-ring", cmd_string_ring, "string ring of a trivial product M x F")
    p.add_argument("--base", required=True)
    p.add_argument("--fiber", required=True)
    p.add_argument("--window", type=_window)

    p = add("e2", cmd_e2, "E2 page of the string-topology spectral sequence")
    p.add_argument("--base", required=True)
    p.add_argument("--fiber", required=True)
    p.add_argument("--tmax", type=int, required=True)

    p = add("tower", cmd_tower, "pro-ring tower for BS1 or BO(2)")
    p.add_argument("--group", choices=["s1", "o2"], required=True)
    p.add_argument("--levels", type=int, required=True)
    p.add_argument("--limit", action="store_true")
    p.add_argument("--window", type=_window)

    p = add("qop", cmd_qop, "Q_i = PD(Sq^(q-i)) on shifted homology")
    p.add_argument("--space", required=True)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--class", dest="cls", required=True, help='e.g. "PD(a)" or "alpha^2"')

    p = add("verify", cmd_verify, "check p_*, s_* and fiber restriction are ring maps")
    p.add_argument("--base", required=True)
    p.add_argument("--fiber", required=True)
    p.add_argument("--window", type=_window)
    return parser


def _join_negative_values(argv: Sequence[str]) -> list[str]:
    """Let ``--window -6:2`` through argparse, which would read ``-6:2`` as an option."""
    out = []
    it = iter(argv)
    for a in it:
        if a == "--window":
            nxt = next(it, None)
            out.append(a if nxt is None else f"--window={nxt}")
        else:
            out.append(a)
    return out


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(_join_negative_values(argv))
        doc, text = args.func(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EX_USAGE
    except (StropsError, ValueError) as exc:
        print(f"strops: error: {exc}", file=sys.stderr)
        return EX_DOMAIN
    if args.format == "json":
        print(json.dumps(doc, indent=2))
    else:
        print(text)
    return EX_OK


if __name__ == "__main__":
    sys.exit(main())
