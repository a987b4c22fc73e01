"""Command-line interface.

Exit codes: 0 success (exhaustive), 1 verify found no fixed point, 2 usage
error, 3 search complete only up to a user-supplied limit, 4 checkpoint
could not be used.
"""
from __future__ import annotations

import argparse
import logging
import os
import sys
from typing import List, Optional

from . import families as fam
from .encoding import VARIANTS, _encode_bounded, is_fixed_point, to_radix, variant_from_name, zero_lower_bound
from .expr import ExpressionError, evaluate
from .records import OutputRecord, write_csv, write_jsonl
from .search import (
    CheckpointError,
    ConfigurationError,
    Search,
    SearchSpec,
    checkpoint_resume,
    compute_k_star,
    compute_l_star,
    resolve_bounds,
)
from .tables import TABLES, build_table

EXIT_OK = 0
EXIT_NOT_FIXED = 1
EXIT_USAGE = 2
EXIT_PARTIAL = 3
EXIT_CHECKPOINT = 4

JOBS_ENV = "MEERTENS_JOBS"
REPORT_BITS = 4096

log = logging.getLogger("meertens")


class UsageError(Exception):
    pass


def _natural(text: str) -> int:
    try:
        return evaluate(text)
    except ExpressionError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _default_jobs() -> int:
    try:
        return max(1, int(os.environ.get(JOBS_ENV, "1")))
    except ValueError:
        return 1


class _Emitter:
    """Streams jsonl immediately; buffers csv so one header covers every record."""

    def __init__(self, fmt: str, out=None):
        self.fmt = fmt
        self.out = out or sys.stdout
        self.buffer: List[OutputRecord] = []

    def emit(self, kind: str, payload: dict) -> None:
        rec = OutputRecord(kind, payload)
        if self.fmt == "jsonl":
            write_jsonl([rec], self.out)
        else:
            self.buffer.append(rec)

    def close(self) -> None:
        if self.fmt == "csv":
            write_csv(self.buffer, self.out)
        self.out.flush()


def cmd_search(args, out) -> int:
    variant = variant_from_name(args.variant)
    spec = SearchSpec(args.base, variant, args.zeroless, args.max_digits, args.limit, args.jobs)
    if args.checkpoint and os.path.exists(args.checkpoint):
        search = checkpoint_resume(args.checkpoint, spec)
        log.info("resumed %d/%d units from %s", len(search.completed), len(search.units), args.checkpoint)
    else:
        search = Search(spec)
    em = _Emitter(args.format, out)
    if args.format == "jsonl":
        on_finding = lambda f: em.emit("finding", f.to_dict())
    else:
        on_finding = None
    findings = search.run(checkpoint_path=args.checkpoint, on_finding=on_finding)
    bounds = search.bounds
    if args.format == "csv":
        for f in findings:
            em.emit("finding", f.to_dict())
    summary = bounds.to_dict()
    summary.update(
        variant=variant.name,
        zeroless=args.zeroless,
        value_limit=args.limit,
        values=[f.value for f in findings],
        completeness="exhaustive" if bounds.exhaustive else "partial",
    )
    em.emit("bound", summary)
    em.close()
    return EXIT_OK if bounds.exhaustive else EXIT_PARTIAL


def cmd_verify(args, out) -> int:
    variant = variant_from_name(args.variant)
    if args.value < 1 or args.base < 2:
        raise UsageError("need value >= 1 and base >= 2")
    em = _Emitter(args.format, out)
    ok, finding = is_fixed_point(args.value, args.base, variant)
    if ok:
        payload = finding.to_dict()
        payload["fixed_point"] = True
        em.emit("finding", payload)
    else:
        rep = to_radix(args.value, args.base)
        encoded = _encode_bounded(rep.digits, variant, 1 << REPORT_BITS)
        em.emit("finding", {
            "value": args.value,
            "base": args.base,
            "variant": variant.name,
            "digits": list(rep.digits),
            "fixed_point": False,
            "encoded": encoded,
            "encoded_exceeds_bits": None if encoded is not None else REPORT_BITS,
        })
    em.close()
    return EXIT_OK if ok else EXIT_NOT_FIXED


def cmd_tables(args, out) -> int:
    rows = build_table(args.table, max_base=args.max_base, max_a=args.max_a, limit=args.limit,
                       scan_base=args.scan_base, scan_digits=args.scan_digits,
                       max_digits=args.max_digits, jobs=args.jobs)
    em = _Emitter(args.format, out)
    for row in rows:
        em.emit("table_row", row)
    em.close()
    return EXIT_OK


def cmd_bounds(args, out) -> int:
    em = _Emitter(args.format, out)
    if args.plot_to is not None:
        for b in range(2, args.plot_to + 1):
            em.emit("table_row", {"table": "kstar-plot", "base": b, "k_star": compute_k_star(b)})
    if args.base is not None:
        spec = SearchSpec(args.base, variant_from_name(args.variant), args.zeroless, args.max_digits, args.limit)
        try:
            report = resolve_bounds(spec).to_dict()
        except ConfigurationError:
            # no proven bound and no user cap: report the raw quantities
            report = {"base": args.base, "k_star": compute_k_star(args.base),
                      "l_star": compute_l_star(args.base), "applied_digit_cap": None,
                      "cap_source": None, "exhaustive": False}
        report["variant"] = args.variant
        em.emit("bound", report)
    em.close()
    return EXIT_OK


def cmd_zeros(args, out) -> int:
    em = _Emitter(args.format, out)
    em.emit("bound", {"base": args.base, "digits": args.digits,
                      "zero_lower_bound": zero_lower_bound(args.base, args.digits)})
    em.close()
    return EXIT_OK


def _family_witnesses(args) -> list:
    fid = args.id
    need = lambda name: _require(args, name)
    if fid == "1024":
        return fam.family_1024_3c(need("c_max"))
    if fid == "lead":
        return fam.family_lead_exponent(need("e"), need("c_max"))
    if fid == "large1024":
        return [fam.large_1024_instance()]
    if fid == "pow2":
        return fam.family_pow2(need("a"))
    if fid == "tower":
        return fam.family_tower(need("t")).witnesses
    if fid == "thm23":
        return fam.family_thm23(need("n"), need("m"))
    if fid == "thm23r":
        return fam.family_thm23_reverse(need("n"), need("m"))
    if fid == "alpha":
        return [fam.family_alpha(need("t"))]
    if fid == "rmn":
        return fam.family_rmn(need("r_max"))
    if fid == "base":
        return [fam.family_base_fixed(variant_from_name(args.variant))]
    raise UsageError(f"unknown family {fid!r}")


def _require(args, name: str) -> int:
    value = getattr(args, name)
    if value is None:
        raise UsageError(f"family {args.id!r} needs --{name.replace('_', '-')}")
    return value


def cmd_family(args, out) -> int:
    em = _Emitter(args.format, out)
    if args.id == "pow2-count":
        a = _require(args, "a")
        em.emit("table_row", {"table": 2, "a": a, "count": fam.family_pow2_count(a)})
    else:
        for w in _family_witnesses(args):
            em.emit("skip" if w.skipped else "witness", w.to_dict())
    em.close()
    return EXIT_OK


FAMILY_IDS = ["1024", "lead", "large1024", "pow2", "pow2-count", "tower", "thm23", "thm23r", "alpha", "rmn", "base"]


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="meertens", description="Fixed points of prime-exponent digit encodings.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)
    variants = sorted(VARIANTS)

    def fmt(sp, default="jsonl"):
        sp.add_argument("--format", choices=["jsonl", "csv"], default=default)

    s = sub.add_parser("search", help="exhaustive fixed-point search in one base")
    s.add_argument("--base", type=_natural, required=True)
    s.add_argument("--variant", choices=variants, default="standard")
    s.add_argument("--zeroless", action="store_true")
    s.add_argument("--max-digits", type=_natural)
    s.add_argument("--limit", type=_natural, help="largest value to consider (expressions allowed)")
    s.add_argument("--jobs", type=int, default=_default_jobs())
    s.add_argument("--checkpoint", help="resume from / save progress to this file")
    fmt(s)
    s.set_defaults(func=cmd_search)

    v = sub.add_parser("verify", help="check one value")
    v.add_argument("--value", type=_natural, required=True)
    v.add_argument("--base", type=_natural, required=True)
    v.add_argument("--variant", choices=variants, default="standard")
    fmt(v)
    v.set_defaults(func=cmd_verify)

    t = sub.add_parser("tables", help="regenerate a reference table")
    t.add_argument("--table", type=int, required=True)
    t.add_argument("--max-base", type=int)
    t.add_argument("--max-a", type=int, default=15)
    t.add_argument("--limit", type=_natural)
    t.add_argument("--scan-base", type=int, help="also scan every base up to this one")
    t.add_argument("--scan-digits", type=int, default=3)
    t.add_argument("--max-digits", type=int, default=12)
    t.add_argument("--jobs", type=int, default=_default_jobs())
    fmt(t, "csv")
    t.set_defaults(func=cmd_tables)

    b = sub.add_parser("bounds", help="digit bounds for a base; k* plot data")
    b.add_argument("--base", type=_natural)
    b.add_argument("--variant", choices=variants, default="alpha")
    b.add_argument("--zeroless", action="store_true")
    b.add_argument("--max-digits", type=_natural)
    b.add_argument("--limit", type=_natural)
    b.add_argument("--plot-to", type=int, help="emit (b, k*) rows for 2 <= b <= N")
    fmt(b)
    b.set_defaults(func=cmd_bounds)

    f = sub.add_parser("family", help="generate verified witnesses of a constructive family")
    f.add_argument("--id", choices=FAMILY_IDS, required=True)
    for name in ("a", "c-max", "e", "t", "n", "m", "r-max"):
        f.add_argument(f"--{name}", type=int)
    f.add_argument("--variant", choices=variants, default="standard")
    fmt(f)
    f.set_defaults(func=cmd_family)

    z = sub.add_parser("zeros", help="lower bound on zero digits")
    z.add_argument("--base", type=_natural, required=True)
    z.add_argument("--digits", type=int, required=True)
    fmt(z)
    z.set_defaults(func=cmd_zeros)
    return p


def main(argv: Optional[List[str]] = None, out=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.command == "tables" and args.table not in TABLES:
        parser.error(f"unknown table {args.table}; choose from {sorted(TABLES)}")
    try:
        return args.func(args, out or sys.stdout)
    except CheckpointError as exc:
        print(f"meertens: checkpoint error: {exc}", file=sys.stderr)
        return EXIT_CHECKPOINT
    except (ConfigurationError, UsageError, ValueError) as exc:
        print(f"meertens: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
