"""Regenerate the reference tables at a chosen scale.

Each row carries a ``completeness`` marker:

``exact``                  computed quantity, no search involved
``exhaustive``             per-base search to a proven digit bound
``exhaustive-below-limit`` per-base search, complete only below a declared limit
``exhaustive-to-digits``   cross-base scan, complete for the stated digit count
"""
from __future__ import annotations

from typing import Dict, List, Optional

from .encoding import ALPHA, GMN, GRMN, REVERSE, STANDARD, EncodingVariant
from .families import family_pow2
from .search import (
    Search,
    SearchSpec,
    compute_k_star,
    compute_l_star,
    search_all_bases,
    search_fixed_points,
)

__all__ = ["TABLES", "build_table", "variant_table", "pow2_table", "kstar_table", "lstar_table", "gmn_table"]

EXACT = "exact"
EXHAUSTIVE = "exhaustive"
BELOW_LIMIT = "exhaustive-below-limit"
TO_DIGITS = "exhaustive-to-digits"


def variant_table(
    table: int,
    variant: EncodingVariant,
    max_base: int,
    limit: Optional[int] = None,
    scan_base: Optional[int] = None,
    scan_digits: int = 3,
    jobs: int = 1,
) -> List[dict]:
    """Rows ``{base, values}`` for one variant.

    Bases up to ``max_base`` are searched one by one (to the proven bound
    when there is one, else to ``limit``). Bases above ``max_base`` up to
    ``scan_base`` come from the cross-base scan over ``scan_digits`` digits.
    """
    rows: Dict[int, dict] = {}
    for b in range(2, max_base + 1):
        search = Search(SearchSpec(b, variant, value_limit=limit, parallelism=jobs))
        values = [f.value for f in search.run()]
        if values:
            marker = EXHAUSTIVE if search.bounds.exhaustive else BELOW_LIMIT
            rows[b] = {"table": table, "base": b, "variant": variant.name, "values": values,
                       "completeness": marker}
    if scan_base is not None and scan_base > max_base:
        found: Dict[int, List[int]] = {}
        for f in search_all_bases(variant, scan_digits, scan_base, b_min=max_base + 1):
            found.setdefault(f.base, []).append(f.value)
        for b in sorted(found):
            rows[b] = {"table": table, "base": b, "variant": variant.name, "values": sorted(found[b]),
                       "completeness": f"{TO_DIGITS}:{scan_digits}"}
    return [rows[b] for b in sorted(rows)]


def pow2_table(max_a: int = 15) -> List[dict]:
    return [
        {"table": 2, "a": a, "k_values": [w.parameters["k"] for w in family_pow2(a)], "completeness": EXACT}
        for a in range(3, max_a + 1)
    ]


def kstar_table(max_base: int = 16, min_base: int = 2) -> List[dict]:
    return [{"table": 4, "base": b, "k_star": compute_k_star(b), "completeness": EXACT}
            for b in range(min_base, max_base + 1)]


def lstar_table(max_base: int = 16, min_base: int = 2) -> List[dict]:
    return [{"table": 6, "base": b, "l_star": compute_l_star(b), "completeness": EXACT}
            for b in range(min_base, max_base + 1)]


def gmn_table(max_base: int = 29, max_digits: int = 12, limit: int = 10**6, jobs: int = 1) -> List[dict]:
    """Rows for identity-map GMN and GRMN; bases whose only fixed point is 1 are omitted."""
    rows = []
    for variant in (GMN, GRMN):
        for b in range(2, max_base + 1):
            spec = SearchSpec(b, variant, max_digits=max_digits, value_limit=limit, parallelism=jobs)
            values = [f.value for f in search_fixed_points(spec)]
            if values != [1]:
                rows.append({"table": 7, "base": b, "variant": variant.name, "values": values,
                             "completeness": BELOW_LIMIT})
    return rows


TABLES = {
    1: "Meertens numbers (standard)",
    2: "divisors k > a of 2^a - a",
    3: "alpha-Meertens numbers",
    4: "k* by base",
    5: "reverse Meertens numbers",
    6: "l* by base",
    7: "generalized (reverse) Meertens numbers, identity maps",
}


def build_table(
    table: int,
    max_base: Optional[int] = None,
    max_a: int = 15,
    limit: Optional[int] = None,
    scan_base: Optional[int] = None,
    scan_digits: int = 3,
    max_digits: int = 12,
    jobs: int = 1,
) -> List[dict]:
    if table == 1:
        return variant_table(1, STANDARD, max_base or 10, limit or 10**8, scan_base, scan_digits, jobs)
    if table == 2:
        return pow2_table(max_a)
    if table == 3:
        return variant_table(3, ALPHA, max_base or 16, limit, scan_base, scan_digits, jobs)
    if table == 4:
        return kstar_table(max_base or 16)
    if table == 5:
        return variant_table(5, REVERSE, max_base or 10, limit or 10**6, scan_base, scan_digits, jobs)
    if table == 6:
        return lstar_table(max_base or 16)
    if table == 7:
        return gmn_table(max_base or 29, max_digits, limit or 10**6, jobs)
    raise ValueError(f"unknown table {table}")
