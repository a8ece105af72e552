"""Command line: roots, classify, bruteforce, verify, tables.

Exit codes: 0 success, 1 verification mismatch, 2 usage error.
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass

from .analyzer import analyze_family, mass_formula_holds, total_count
from .bruteforce import TooLarge, VerificationError, count_classes, verify_all_families, verify_tables
from .classifier import classify
from .fields import NonPrime, is_prime, prime_power
from .reports import (
    BruteForceReport,
    ClassifyReport,
    VerifyReport,
    family_entry,
    poly_to_json,
)
from .roots import UnsupportedType, build_root_system, check_supported, format_roots_table
from .tables import render_table

GRAMMAR = (
    "usage: roots <T> <r> | classify <T> <r> <p> [--analyze] [--json PATH] | "
    "bruteforce <T> <r> <q> [--profile] | verify <T> <r> <p> --q LIST | tables [--type T]"
)
TABLE_TYPES = [("B", 2), ("G", 2), ("B", 3), ("C", 3)]


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    type_label: str | None = None
    rank: int | None = None
    p: int | None = None
    q: int | None = None
    q_list: tuple[int, ...] = ()
    analyze: bool = False
    profile: bool = False
    json_path: str | None = None
    table_type: str | None = None


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="unipotent-classes", add_help=True)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def typed(name):
        sp = sub.add_parser(name)
        sp.add_argument("type_label")
        sp.add_argument("rank", type=int)
        return sp

    typed("roots")
    sp = typed("classify")
    sp.add_argument("p", type=int)
    sp.add_argument("--analyze", action="store_true")
    sp.add_argument("--json", dest="json_path")
    sp = typed("bruteforce")
    sp.add_argument("q", type=int)
    sp.add_argument("--profile", action="store_true")
    sp = typed("verify")
    sp.add_argument("p", type=int)
    sp.add_argument("--q", dest="q_list", required=True)
    sp = sub.add_parser("tables")
    sp.add_argument("--type", dest="table_type")
    return parser


def parse_config(argv: list[str]) -> RunConfig:
    ns = _parser().parse_args(argv)
    cfg = RunConfig(
        command=ns.command,
        type_label=getattr(ns, "type_label", None),
        rank=getattr(ns, "rank", None),
        p=getattr(ns, "p", None),
        q=getattr(ns, "q", None),
        analyze=getattr(ns, "analyze", False),
        profile=getattr(ns, "profile", False),
        json_path=getattr(ns, "json_path", None),
        table_type=getattr(ns, "table_type", None),
    )
    if cfg.type_label is not None:
        try:
            check_supported(cfg.type_label, cfg.rank)
        except UnsupportedType as exc:
            raise UsageError(str(exc)) from exc
    if cfg.p is not None and not is_prime(cfg.p):
        raise UsageError(f"{cfg.p} is not prime")
    if cfg.q is not None:
        try:
            prime_power(cfg.q)
        except NonPrime as exc:
            raise UsageError(f"{cfg.q} is not a prime power") from exc
    if ns.command == "verify":
        try:
            qs = tuple(int(x) for x in ns.q_list.split(","))
        except ValueError as exc:
            raise UsageError(f"bad q list {ns.q_list!r}") from exc
        for q in qs:
            try:
                base, _ = prime_power(q)
            except NonPrime as exc:
                raise UsageError(f"{q} is not a prime power") from exc
            if base != cfg.p:
                raise UsageError(f"{q} is not a power of {cfg.p}")
        cfg = RunConfig(**{**cfg.__dict__, "q_list": qs})
    return cfg


def classify_report(type_label: str, rank: int, p: int, analyze: bool) -> ClassifyReport:
    rs = build_root_system(type_label, rank)
    families = classify(rs, p)
    exprs = [analyze_family(f, p) for f in families] if analyze else [None] * len(families)
    report = ClassifyReport(type_label, rank, p, [family_entry(f, e) for f, e in zip(families, exprs)])
    if analyze:
        report.manual_families = [e.family.representative() for e in exprs if e.manual]
        if not report.manual_families:
            k = total_count(exprs)
            report.k_poly = poly_to_json(k)
            report.k_poly_str = str(k)
            report.mass_formula = mass_formula_holds(exprs, rs.N)
    return report


def _cmd_roots(cfg: RunConfig, out) -> int:
    print(format_roots_table(build_root_system(cfg.type_label, cfg.rank)), file=out, end="")
    return 0


def _cmd_classify(cfg: RunConfig, out) -> int:
    report = classify_report(cfg.type_label, cfg.rank, cfg.p, cfg.analyze)
    if cfg.json_path:
        text = report.to_json()
        if cfg.json_path == "-":
            print(text, file=out)
        else:
            with open(cfg.json_path, "w", encoding="utf-8") as fh:
                fh.write(text + "\n")
    print(f"{cfg.type_label}{cfg.rank}, p = {cfg.p}: {len(report.families)} families", file=out)
    for fam in report.families:
        line = f"  {fam.representative}"
        if fam.d:
            line += f"  (unresolved: {', '.join(map(str, fam.d))})"
        if fam.count is not None:
            line += f"  -> {fam.count}"
        if fam.manual:
            line += f"  MANUAL: {fam.manual}"
        print(line, file=out)
    if cfg.analyze:
        if report.manual_families:
            print(f"manual families: {len(report.manual_families)}", file=out)
        else:
            print(f"k(U) = {report.k_poly_str}", file=out)
            print(f"mass formula: {'holds' if report.mass_formula else 'FAILS'}", file=out)
    return 0


def _cmd_bruteforce(cfg: RunConfig, out) -> int:
    rs = build_root_system(cfg.type_label, cfg.rank)
    start = time.perf_counter()
    inv = count_classes(rs, cfg.q)
    elapsed = time.perf_counter() - start
    report = BruteForceReport(cfg.type_label, cfg.rank, cfg.q, inv.total_classes,
                              {str(k): v for k, v in inv.centralizer_histogram.items()})
    print(f"{cfg.type_label}{cfg.rank}, q = {cfg.q}: {report.total_classes} classes", file=out)
    print("centralizer order: classes", file=out)
    for order, n in inv.centralizer_histogram.items():
        print(f"  {order}: {n}", file=out)
    if cfg.profile:
        print(f"|U| = {inv.order}, enumeration took {elapsed:.2f} s", file=out)
    return 0


def _cmd_verify(cfg: RunConfig, out) -> int:
    rs = build_root_system(cfg.type_label, cfg.rank)
    tables = verify_tables(rs, cfg.p, list(cfg.q_list))
    problems = list(tables.problems)
    checked = 0
    for q in cfg.q_list:
        try:
            checked += len(verify_all_families(rs, cfg.p, q))
        except VerificationError as exc:
            problems.append(f"q={q}: {type(exc).__name__}: {exc}")
    report = VerifyReport(cfg.type_label, cfg.rank, cfg.p,
                          {str(k): v for k, v in tables.counts.items()},
                          {str(k): v for k, v in tables.expected_counts.items()}, checked, problems)
    for q in cfg.q_list:
        print(f"q = {q}: {tables.counts[q]} classes (published polynomial: {tables.expected_counts[q]})",
              file=out)
    print(f"families verified: {report.families_checked}", file=out)
    for prob in report.problems:
        print(f"MISMATCH {prob}", file=out)
    print("OK" if report.ok else "FAILED", file=out)
    return 0 if report.ok else 1


def _table_selection(name: str | None) -> list[tuple[str, int]]:
    if name is None:
        return TABLE_TYPES
    chosen = [(t, r) for t, r in TABLE_TYPES if name in (t, f"{t}{r}")]
    if not chosen:
        raise UsageError(f"no family table for {name!r}; choose from B2, G2, B3, C3")
    return chosen


def _cmd_tables(cfg: RunConfig, out) -> int:
    blocks = [render_table(t, r) for t, r in _table_selection(cfg.table_type)]
    print("\n\n".join(blocks), file=out)
    return 0


COMMANDS = {
    "roots": _cmd_roots,
    "classify": _cmd_classify,
    "bruteforce": _cmd_bruteforce,
    "verify": _cmd_verify,
    "tables": _cmd_tables,
}


def run(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        cfg = parse_config(argv)
        return COMMANDS[cfg.command](cfg, out)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        print(GRAMMAR, file=sys.stderr)
        return 2
    except TooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())
