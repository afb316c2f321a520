"""Command-line front end: counts, canonical, check, search, suite.

Exit status: 0 success, 1 a check failed, 2 bad input, 3 search budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
import tempfile
from collections import Counter
from pathlib import Path
from typing import Optional, TextIO

from .family import HyperplaneFamily, Sign
from .gf import NotAPrimePower, factor_prime_power, make_field
from .pg import ORDER_TAG, Codim2Subspace, Hyperplane, make_space
from .quadric import (
    Kind,
    QuadraticForm,
    UnexpectedSectionSize,
    UnsupportedSize,
    expected_counts,
    parabolic_family,
    standard_form,
)
from .search import BudgetExceeded, SearchLimits, backtracking_search, exhaustive_search_pg32, suite_sweep
from .sigma import Classification, FamilyAnalysis, analyze

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class FamilyFileError(ValueError):
    def __init__(self, message: str, lineno: Optional[int] = None):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {message}" if lineno else message)


# -- family files -------------------------------------------------------------

def format_family(family: HyperplaneFamily) -> str:
    lines = [f"pgfam {family.space.k} {family.space.q} {family.sign.value}"]
    lines += [" ".join(map(str, h.covector)) for h in family.sorted_members()]
    return "\n".join(lines) + "\n"


def parse_family(text: str) -> HyperplaneFamily:
    header = None
    rows: list[tuple[int, tuple[int, ...]]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if header is None:
            parts = line.split()
            if len(parts) != 4 or parts[0] != "pgfam":
                raise FamilyFileError("expected header 'pgfam <k> <q> <+|->'", lineno)
            try:
                k, q = int(parts[1]), int(parts[2])
                sign = Sign.parse(parts[3])
                factor_prime_power(q)
            except (ValueError, NotAPrimePower) as exc:
                raise FamilyFileError(str(exc), lineno) from None
            if k < 1 or k % 2 == 0:
                raise FamilyFileError(f"k must be odd, got {k}", lineno)
            header = (k, q, sign)
            continue
        k, q, _ = header
        try:
            vec = tuple(int(x) for x in line.split())
        except ValueError:
            raise FamilyFileError("covector entries must be integers", lineno) from None
        if len(vec) != k + 1:
            raise FamilyFileError(f"expected {k + 1} entries, got {len(vec)}", lineno)
        if any(not 0 <= x < q for x in vec):
            raise FamilyFileError(f"entries must lie in 0..{q - 1}", lineno)
        if next((x for x in vec if x), 0) != 1:
            raise FamilyFileError("covector is not canonical (leftmost nonzero entry must be 1)", lineno)
        rows.append((lineno, vec))
    if header is None:
        raise FamilyFileError("missing header")
    if not rows:
        raise FamilyFileError("family has no members")
    seen: dict[tuple[int, ...], int] = {}
    for lineno, vec in rows:
        if vec in seen:
            raise FamilyFileError(f"duplicate member (first on line {seen[vec]})", lineno)
        seen[vec] = lineno
    k, q, sign = header
    try:
        space = make_space(k, q)
    except ValueError as exc:
        raise FamilyFileError(str(exc)) from None
    return HyperplaneFamily(space, sign, frozenset(Hyperplane(v) for _, v in rows))


def write_atomic(path: Path, text: str) -> None:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="ascii") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def load_family(path: Path) -> HyperplaneFamily:
    return parse_family(Path(path).read_text(encoding="ascii"))


# -- report documents -----------------------------------------------------------

def describe_classification(c: Optional[Classification]) -> Optional[dict]:
    if c is None:
        return None
    doc: dict = {"kind": c.verdict.value}
    w = c.witness
    if isinstance(w, QuadraticForm):
        doc["witness"] = {"type": "quadratic_form", "coeffs": [list(r) for r in w.coeffs]}
    elif isinstance(w, Codim2Subspace):
        doc["witness"] = {"type": "line", "dual_basis": [list(r) for r in w.dual_basis]}
    elif isinstance(w, frozenset):
        doc["witness"] = {"type": "point_set", "points": [list(p.coords) for p in sorted(w)]}
    if c.classical is not None:
        doc["classical"] = c.classical
    return doc


def analysis_document(family: HyperplaneFamily, a: FamilyAnalysis) -> dict:
    return {
        "parameters": {"n": family.n, "q": family.space.q, "sign": family.sign.value},
        "expected": expected_counts(family.n, family.space.q, family.sign).as_dict(),
        "observed": a.as_dict(),
        "theorem_violations": list(a.theorem_violations),
        "verdict": describe_classification(a.verdict),
    }


def _flatten(doc, prefix: str = "") -> list[tuple[str, str]]:
    rows = []
    if isinstance(doc, dict):
        for k, v in doc.items():
            rows += _flatten(v, f"{prefix}.{k}" if prefix else str(k))
    elif isinstance(doc, list) and doc and isinstance(doc[0], (dict, list)):
        for i, v in enumerate(doc):
            rows += _flatten(v, f"{prefix}[{i}]")
    else:
        rows.append((prefix, json.dumps(doc) if isinstance(doc, (list, type(None), bool)) else str(doc)))
    return rows


def emit(doc: dict, as_json: bool, out: TextIO) -> None:
    if as_json:
        out.write(json.dumps(doc, sort_keys=True) + "\n")
        return
    rows = _flatten(doc)
    width = max((len(k) for k, _ in rows), default=0)
    for k, v in rows:
        out.write(f"{k.ljust(width)}  {v}\n")
    out.write("\n")


# -- commands -------------------------------------------------------------------

def _validate(n: int, q: int) -> None:
    if n < 1:
        raise UnsupportedSize(f"n must be >= 1, got {n}")
    factor_prime_power(q)


def cmd_counts(args, out: TextIO) -> int:
    _validate(args.n, args.q)
    sign = args.sign
    table = expected_counts(args.n, args.q, sign)
    observed = None
    violations: list[str] = []
    if args.enumerate:
        form = standard_form(Kind.for_sign(sign), args.n, make_field(args.q))
        sections = Counter(int(s) for s in form.hyperplane_sections)
        codim2 = Counter(int(s) for s in form.codim2_sections)
        fam = parabolic_family(form)
        a = analyze(fam, classify=False)
        degrees = sorted(set(int(d) for d in a.p1.degrees))
        observed = {
            "quadric_size": int(form.on_mask.sum()),
            "parabolic_hyperplanes": sections.get(table.h1, 0),
            "tangent_hyperplanes": sections.get(table.h2, 0),
            "hyperplane_section_sizes": sorted(sections),
            "codim2_section_sizes": sorted(codim2),
            "point_degrees": degrees,
            "sigma_size": len(fam),
            "black_in_sigma_plane": sorted(a.black_per_member),
            "black_in_other_plane": sorted(a.black_per_nonmember),
        }
        checks = [
            ("quadric_size", observed["quadric_size"] == table.quadric_size),
            ("parabolic_hyperplanes", observed["parabolic_hyperplanes"] == table.parabolic_hyperplanes),
            ("tangent_hyperplanes", observed["tangent_hyperplanes"] == table.quadric_size),
            ("hyperplane_section_sizes", set(sections) <= {table.h1, table.h2}),
            ("codim2_section_sizes", set(codim2) <= set(table.codim2_values.values())),
            ("point_degrees", degrees == sorted({table.black_degree, table.white_degree})),
            ("sigma_size", len(fam) == table.sigma_size),
            ("black_in_sigma_plane", observed["black_in_sigma_plane"] == [table.black_in_sigma_plane]),
            ("black_in_other_plane", observed["black_in_other_plane"] == [table.black_in_other_plane]),
        ]
        violations = [f"enumeration mismatch: {name}" for name, ok in checks if not ok]
        violations += a.theorem_violations
    doc = {
        "command": "counts",
        "parameters": {"n": args.n, "q": args.q, "sign": sign.value},
        "expected": table.as_dict(),
        "observed": observed,
        "theorem_violations": violations,
        "verdict": None,
    }
    emit(doc, args.json, out)
    return EXIT_FAIL if violations else EXIT_OK


def cmd_canonical(args, out: TextIO) -> int:
    _validate(args.n, args.q)
    form = standard_form(Kind.for_sign(args.sign), args.n, make_field(args.q))
    fam = parabolic_family(form)
    text = format_family(fam)
    if args.output == "-":
        out.write(text)
        return EXIT_OK
    try:
        write_atomic(Path(args.output), text)
    except OSError as exc:
        print(f"error: cannot write {args.output}: {exc.strerror}", file=sys.stderr)
        return EXIT_FAIL
    emit({"command": "canonical", "path": str(args.output), "members": len(fam),
          "parameters": {"n": args.n, "q": args.q, "sign": args.sign.value}}, args.json, out)
    return EXIT_OK


def cmd_check(args, out: TextIO) -> int:
    try:
        fam = load_family(args.path)
    except OSError as exc:
        print(f"error: cannot read {args.path}: {exc.strerror}", file=sys.stderr)
        return EXIT_USAGE
    except FamilyFileError as exc:
        print(f"error: {args.path}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    a = analyze(fam, classify=not args.no_classify)
    doc = {"command": "check", **analysis_document(fam, a)}
    emit(doc, args.json, out)
    if not (a.p1.holds and a.p2.holds) or a.theorem_violations:
        return EXIT_FAIL
    if not args.no_classify and (a.verdict is None or a.verdict.verdict.value == "Unknown"):
        return EXIT_FAIL
    return EXIT_OK


def cmd_search(args, out: TextIO) -> int:
    _validate(args.n, args.q)
    limits = SearchLimits(args.node_budget, args.time_budget, args.report_every)
    budget_hit = False
    if (args.n, args.q) == (1, 2):
        result = exhaustive_search_pg32(args.sign)
    else:
        try:
            result = backtracking_search(args.n, args.q, args.sign, limits)
        except BudgetExceeded as exc:
            result = exc.result
            budget_hit = True
    tallies: Counter = Counter()
    for fam, a in result.families:
        doc = {"command": "search", **analysis_document(fam, a),
               "members": [list(h.covector) for h in fam.sorted_members()]}
        emit(doc, args.json, out)
        tallies[a.verdict.verdict.value if a.verdict else "unclassified"] += 1
    trailer = {
        "command": "search",
        "summary": {
            "parameters": {"n": args.n, "q": args.q, "sign": args.sign.value},
            "families": len(result.families),
            "exhaustive": result.exhaustive,
            "budget_exceeded": budget_hit,
            "nodes_explored": result.nodes_explored,
            "verdicts": dict(sorted(tallies.items())),
            "families_with_violations": sum(bool(a.theorem_violations) for _, a in result.families),
        },
    }
    emit(trailer, args.json, out)
    return EXIT_BUDGET if budget_hit else EXIT_OK


def cmd_suite(args, out: TextIO) -> int:
    if args.max_n < 1 or args.max_q < 2:
        raise UnsupportedSize("need --max-n >= 1 and --max-q >= 2")
    rep = suite_sweep(args.max_n, args.max_q)
    emit({"command": "suite", **rep}, args.json, out)
    return EXIT_OK if rep["passed"] else EXIT_FAIL


# -- argument parsing -------------------------------------------------------------

def parse_count(text: str) -> int:
    """Accept '1000000', '10^6', '1e6'."""
    m = re.fullmatch(r"\s*(\d+)\s*\^\s*(\d+)\s*", text)
    if m:
        return int(m.group(1)) ** int(m.group(2))
    try:
        value = float(text) if re.search(r"[eE.]", text) else int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a count: {text!r}") from None
    if value != int(value):
        raise argparse.ArgumentTypeError(f"not a whole number: {text!r}")
    return int(value)


def _sign(text: str) -> Sign:
    try:
        return Sign.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="emit JSON documents (one per line)")
    common.add_argument("--seed-order", default=argparse.SUPPRESS,
                        help=f"enumeration order tag (only {ORDER_TAG!r} is defined)")
    common.add_argument("--threads", type=int, default=argparse.SUPPRESS,
                        help="worker threads (sweeps run single-threaded; accepted for compatibility)")

    parser = argparse.ArgumentParser(prog="pgquadric", parents=[common],
                                     description="Parabolic hyperplane families of Q+/-(2n+1,q).")
    sub = parser.add_subparsers(dest="command", required=True)

    def params(p):
        p.add_argument("-n", type=int, required=True, help="ambient dimension is 2n+1")
        p.add_argument("-q", type=int, required=True, help="field order")
        p.add_argument("--sign", type=_sign, required=True, help="'+' hyperbolic, '-' elliptic")

    p = sub.add_parser("counts", parents=[common], help="closed-form counts, optionally enumerated")
    params(p)
    p.add_argument("--enumerate", action="store_true", help="cross-check against the standard quadric")
    p.set_defaults(func=cmd_counts)

    p = sub.add_parser("canonical", parents=[common], help="write the parabolic family of the standard quadric")
    params(p)
    p.add_argument("-o", "--output", default="-", help="family file path ('-' for stdout)")
    p.set_defaults(func=cmd_canonical)

    p = sub.add_parser("check", parents=[common], help="analyze a family file")
    p.add_argument("path")
    p.add_argument("--no-classify", action="store_true")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("search", parents=[common], help="search for families satisfying (P1) and (P2)")
    params(p)
    p.add_argument("--node-budget", type=parse_count, default=10**6)
    p.add_argument("--time-budget", type=float, default=60.0, help="seconds")
    p.add_argument("--report-every", type=parse_count, default=100_000)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("suite", parents=[common], help="integer-arithmetic identity sweep")
    p.add_argument("--max-n", type=int, default=6)
    p.add_argument("--max-q", type=int, default=16)
    p.set_defaults(func=cmd_suite)
    return parser


def main(argv: Optional[list[str]] = None, out: Optional[TextIO] = None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and EXIT_USAGE
    # parent actions are shared with the subparsers, so defaults are filled here
    for name, value in (("json", False), ("seed_order", ORDER_TAG), ("threads", 1)):
        if not hasattr(args, name):
            setattr(args, name, value)
    if args.seed_order != ORDER_TAG:
        print(f"error: unknown enumeration order {args.seed_order!r}", file=sys.stderr)
        return EXIT_USAGE
    if args.threads < 1:
        print("error: --threads must be positive", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args, out)
    except NotAPrimePower as exc:
        print(f"error: NotAPrimePower: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UnsupportedSize, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except UnexpectedSectionSize as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
