"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Optional, Union

from fusion_rings import __version__
from fusion_rings.affine import (
    AffineSymbol,
    FusionTable,
    RationalLevel,
    VerificationReport,
    canonicalize,
    check_range,
    fuse_generic,
    fuse_rational,
    genus_dimension,
    structure_table,
    verify_associativity_generic,
    verify_associativity_rational,
    verify_commutativity_generic,
    verify_commutativity_rational,
    verify_dimension_homomorphism,
    verify_factorization,
    verify_quotient,
)
from fusion_rings.oracle import calibrate_convention, fusion_oracle, oracle_diagnostic, verify_oracle
from fusion_rings.ring import FormalSum
from fusion_rings.virasoro import VirSymbol, verify_ds_epimorphism

TABLE_FORMAT_VERSION = 1
DEFAULT_BOUND = 3

Level = Union[str, RationalLevel]  # "generic" or a rational level

_AFFINE_RE = re.compile(r"^\(\s*(-?\d+)\s*,\s*(-?\d+)\s*;\s*(-?\d+)\s*\)$")
_VIR_RE = re.compile(r"^\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)$")
_LEVEL_RE = re.compile(r"^\s*(\d+)\s*/\s*(\d+)\s*$")


class UsageError(ValueError):
    pass


def parse_symbol(text: str) -> AffineSymbol:
    """Parse ``"(r,e;s)"``; whitespace is allowed around every token."""
    m = _AFFINE_RE.match(text.strip())
    if not m:
        raise UsageError(f"symbol: cannot parse {text!r}, expected (r,e;s)")
    r, e, s = (int(g) for g in m.groups())
    if r < 0:
        raise UsageError(f"r must be nonnegative: got {r}")
    if e not in (0, 1):
        raise UsageError(f"parity must be 0 or 1: got {e}")
    if s < 0:
        raise UsageError(f"s must be nonnegative: got {s}")
    return AffineSymbol(r, e, s)


def format_symbol(x: AffineSymbol) -> str:
    return f"({x.r},{x.parity};{x.s})"


def parse_vir_symbol(text: str) -> VirSymbol:
    m = _VIR_RE.match(text.strip())
    if not m:
        raise UsageError(f"symbol: cannot parse {text!r}, expected (a,b)")
    a, b = (int(g) for g in m.groups())
    if a < 0 or b < 0:
        raise UsageError(f"indices must be nonnegative: got ({a},{b})")
    return VirSymbol(a, b)


def format_vir_symbol(x: VirSymbol) -> str:
    return f"({x.a},{x.b})"


def parse_level(text: str) -> Level:
    if text.strip() == "generic":
        return "generic"
    m = _LEVEL_RE.match(text)
    if not m:
        raise UsageError(f"level: expected 'generic' or 'p/q', got {text!r}")
    try:
        return RationalLevel(int(m.group(1)), int(m.group(2)))
    except ValueError as exc:
        raise UsageError(f"level: {exc}") from exc


def level_str(level: Level) -> str:
    return level if isinstance(level, str) else str(level)


def split_insertions(text: str) -> list[str]:
    """Split on commas that sit outside parentheses."""
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if "".join(cur).strip():
        parts.append("".join(cur))
    return [p.strip() for p in parts if p.strip()]


def _symbol_dict(x: AffineSymbol) -> dict[str, int]:
    return {"r": x.r, "parity": x.parity, "s": x.s}


@dataclass(frozen=True)
class ProductReport:
    level: str
    inputs: tuple[AffineSymbol, ...]
    product: tuple[tuple[AffineSymbol, int], ...]
    version: str = __version__

    def to_dict(self) -> dict[str, Any]:
        return {
            "level": self.level,
            "inputs": [_symbol_dict(x) for x in self.inputs],
            "product": [{**_symbol_dict(x), "coeff": c} for x, c in self.product],
            "version": self.version,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False) + "\n"

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> ProductReport:
        return cls(
            level=data["level"],
            inputs=tuple(AffineSymbol(d["r"], d["parity"], d["s"]) for d in data["inputs"]),
            product=tuple((AffineSymbol(d["r"], d["parity"], d["s"]), d["coeff"]) for d in data["product"]),
            version=data["version"],
        )

    @classmethod
    def from_json(cls, text: str) -> ProductReport:
        return cls.from_dict(json.loads(text))

    def to_text(self) -> str:
        lhs = " o ".join(format_symbol(x) for x in self.inputs)
        if not self.product:
            return f"{lhs} = 0\n"
        rhs = " + ".join(format_symbol(x) if c == 1 else f"{c}*{format_symbol(x)}" for x, c in self.product)
        return f"{lhs} = {rhs}\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["r", "parity", "s", "coeff"])
        for x, c in self.product:
            w.writerow([x.r, x.parity, x.s, c])
        return buf.getvalue()


def compute_product(level: Level, a: AffineSymbol, b: AffineSymbol) -> ProductReport:
    if level == "generic":
        prod = fuse_generic(a, b)
        terms = tuple(prod.items())
    else:
        for name, x in (("a", a), ("b", b)):
            try:
                check_range(level, x)
            except ValueError as exc:
                raise UsageError(f"{name}: {exc}") from exc
        prod = fuse_rational(level, canonicalize(level, a), canonicalize(level, b))
        terms = tuple((c.rep, n) for c, n in prod.items())
    return ProductReport(level_str(level), (a, b), terms)


# tables


def table_to_dict(table: FusionTable) -> dict[str, Any]:
    return {
        "format_version": TABLE_FORMAT_VERSION,
        "level": str(table.level),
        "version": __version__,
        "classes": [_symbol_dict(c.rep) for c in table.classes],
        "entries": [{"i": i, "j": j, "k": k, "N": n} for i, j, k, n in table.entries()],
    }


def table_to_json(table: FusionTable) -> str:
    return json.dumps(table_to_dict(table), indent=1) + "\n"


def table_to_csv(table: FusionTable) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["i", "j", "k", "N"])
    for row in table.entries():
        w.writerow(row)
    return buf.getvalue()


def table_to_text(table: FusionTable) -> str:
    lines = [f"level {table.level}: {len(table)} classes"]
    for i, c in enumerate(table.classes):
        lines.append(f"  [{i}] {format_symbol(c.rep)}")
    for i in range(len(table)):
        for j in range(i, len(table)):
            prod = table.product(i, j)
            rhs = " + ".join(f"[{k}]" if n == 1 else f"{n}*[{k}]" for k, n in prod) or "0"
            lines.append(f"[{i}] o [{j}] = {rhs}")
    return "\n".join(lines) + "\n"


def load_table_cache(path: Path, level: RationalLevel) -> FusionTable:
    """Rebuild a table from a cache file, checking it belongs to ``level``."""
    try:
        data = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cache: cannot read {path}: {exc}") from exc
    if data.get("format_version") != TABLE_FORMAT_VERSION:
        raise UsageError(f"cache: format_version {data.get('format_version')!r} != {TABLE_FORMAT_VERSION}")
    if data.get("level") != str(level):
        raise UsageError(f"cache: level {data.get('level')!r} does not match {level}")
    table = structure_table(level)
    stored = [AffineSymbol(d["r"], d["parity"], d["s"]) for d in data.get("classes", [])]
    if stored != [c.rep for c in table.classes]:
        raise UsageError("cache: class list does not match the level")
    n = len(table)
    entries = data.get("entries", [])
    if len(entries) != n**3:
        raise UsageError(f"cache: expected {n ** 3} entries, found {len(entries)}")
    rows: dict[tuple[int, int], dict[int, int]] = {}
    for e in entries:
        rows.setdefault((e["i"], e["j"]), {})[e["k"]] = e["N"]
    for (i, j), row in rows.items():
        if i <= j:
            table._rows[(i, j)] = FormalSum(row)
    return table


def get_table(level: RationalLevel, cache: Optional[str]) -> FusionTable:
    if cache:
        path = Path(cache)
        if path.exists():
            return load_table_cache(path, level)
        table = structure_table(level)
        path.write_text(table_to_json(table))
        return table
    return structure_table(level)


# output helpers


def _use_color(stream) -> bool:
    if os.environ.get("FUSION_RINGS_NO_COLOR"):
        return False
    return hasattr(stream, "isatty") and stream.isatty()


def _style(text: str, ok: bool, color: bool) -> str:
    if not color:
        return text
    return f"\x1b[{32 if ok else 31}m{text}\x1b[0m"


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# commands


def cmd_fuse(args: argparse.Namespace) -> int:
    level = parse_level(args.level)
    a = _parse_named(args.a, "a")
    b = _parse_named(args.b, "b")
    report = compute_product(level, a, b)
    text = {"json": report.to_json, "csv": report.to_csv, "text": report.to_text}[args.format]()
    _emit(text, args.out)
    return 0


def _require_rational(level: Level, command: str) -> RationalLevel:
    if not isinstance(level, RationalLevel):
        raise UsageError(f"level: {command} needs a rational level p/q")
    return level


def cmd_table(args: argparse.Namespace) -> int:
    level = _require_rational(parse_level(args.level), "table")
    table = get_table(level, args.cache)
    render = {"json": table_to_json, "csv": table_to_csv, "text": table_to_text}[args.format]
    _emit(render(table), args.out)
    return 0


def cmd_genus(args: argparse.Namespace) -> int:
    level = _require_rational(parse_level(args.level), "genus")
    table = get_table(level, args.cache)
    idx = []
    for n, text in enumerate(split_insertions(args.insertions or "")):
        x = _parse_named(text, f"insertion {n}")
        try:
            idx.append(table.index(canonicalize(level, x)))
        except ValueError as exc:
            raise UsageError(f"insertion {n}: {exc}") from exc
    try:
        dim = genus_dimension(table, args.genus, idx)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if args.format == "json":
        payload = {
            "level": str(level),
            "genus": args.genus,
            "insertions": [_symbol_dict(table.classes[i].rep) for i in idx],
            "dimension": dim,
            "version": __version__,
        }
        _emit(json.dumps(payload, indent=2) + "\n", args.out)
    else:
        _emit(f"{dim}\n", args.out)
    return 0


def run_suite(suite: str, level: Level, bound: int) -> VerificationReport:
    generic = level == "generic"
    if suite == "assoc":
        return verify_associativity_generic(bound) if generic else verify_associativity_rational(level)
    if suite == "comm":
        return verify_commutativity_generic(bound) if generic else verify_commutativity_rational(level)
    if suite == "ds-hom":
        return verify_ds_epimorphism(bound=bound) if generic else verify_ds_epimorphism(level=level)
    if suite == "quotient":
        return verify_quotient(_require_rational(level, "verify quotient"))
    if not generic:
        raise UsageError(f"level: verify {suite} runs at generic level only")
    if suite == "factorization":
        return verify_factorization(bound)
    if suite == "dimension-hom":
        return verify_dimension_homomorphism(bound)
    if suite == "oracle":
        return verify_oracle(bound)
    raise UsageError(f"suite: unknown suite {suite!r}")


def cmd_verify(args: argparse.Namespace) -> int:
    level = parse_level(args.level)
    if args.bound < 0:
        raise UsageError(f"bound must be nonnegative: got {args.bound}")
    report = run_suite(args.suite, level, args.bound)
    if args.format == "json":
        payload = {"level": level_str(level), **report.to_dict(), "version": __version__}
        _emit(json.dumps(payload, indent=2, default=str) + "\n", args.out)
    else:
        color = not args.out and _use_color(sys.stdout)
        status = _style("PASS" if report.passed else "FAIL", report.passed, color)
        lines = [f"{status} {report.name} at {level_str(level)}: {report.checked} checks"]
        if report.counterexample:
            for key, value in report.counterexample.items():
                lines.append(f"  {key}: {value}")
        _emit("\n".join(lines) + "\n", args.out)
    return 0 if report.passed else 1


def cmd_oracle(args: argparse.Namespace) -> int:
    a = _parse_named(args.a, "a")
    b = _parse_named(args.b, "b")
    conv = calibrate_convention()
    got = fusion_oracle(a, b, conv)
    want = sorted(k for k, v in fuse_generic(a, b) for _ in range(v))
    agree = got == want
    diag = oracle_diagnostic(a, b, conv)
    if args.format == "json":
        payload = {
            "inputs": [_symbol_dict(a), _symbol_dict(b)],
            "convention": {"contragredient": conv.contragredient, "branch_swap": conv.branch_swap},
            "oracle": [_symbol_dict(x) for x in got],
            "expected": [_symbol_dict(x) for x in want],
            "agree": agree,
            **diag,
            "version": __version__,
        }
        _emit(json.dumps(payload, indent=2) + "\n", args.out)
    else:
        color = not args.out and _use_color(sys.stdout)
        lines = [
            f"convention: contragredient={conv.contragredient} branch_swap={conv.branch_swap}",
            "R_a: " + ", ".join(diag["R_a"]),
            "R_b: " + ", ".join(diag["R_b"]),
            "oracle:   " + " ".join(format_symbol(x) for x in got),
            "expected: " + " ".join(format_symbol(x) for x in want),
            _style("agree" if agree else "DISAGREE", agree, color),
        ]
        _emit("\n".join(lines) + "\n", args.out)
    return 0 if agree else 1


def _parse_named(text: str, name: str) -> AffineSymbol:
    try:
        return parse_symbol(text)
    except UsageError as exc:
        raise UsageError(f"{name}: {exc}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fusion-rings", description="Exact fusion rings of affine sl(2).")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, level_default: Optional[str] = "generic") -> None:
        p.add_argument("--level", default=level_default, required=level_default is None, help="'generic' or 'p/q'")
        p.add_argument("--format", choices=("text", "json", "csv"), default="text")
        p.add_argument("--out", help="write output to this path")

    p = sub.add_parser("fuse", help="fusion product of two symbols")
    common(p)
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_fuse)

    p = sub.add_parser("table", help="full structure-constant table at p/q")
    common(p, None)
    p.add_argument("--cache", help="table cache file, created if missing")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("genus", help="dimension of conformal blocks at genus g")
    common(p, None)
    p.add_argument("--genus", type=int, default=0)
    p.add_argument("--insertions", default="", help="comma-separated symbols")
    p.add_argument("--cache", help="table cache file, created if missing")
    p.set_defaults(func=cmd_genus)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=("assoc", "comm", "factorization", "quotient", "ds-hom", "oracle", "dimension-hom"))
    common(p)
    p.add_argument("--bound", type=int, default=DEFAULT_BOUND)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="coinvariant-oracle product with its root sets")
    common(p)
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
