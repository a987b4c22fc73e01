"""Constructive families of fixed points, each instance re-verified.

Every generator returns :class:`FamilyWitness` records. Small witnesses are
checked with :func:`meertens.encoding.is_fixed_point` on the materialized
integer. Witnesses above ``threshold_bits`` are never built; instead the
digit pattern is checked on prime exponents, which is exact:

* one digit ``D`` followed by ``r`` zeros: ``value == D * B**r`` reduces to
  exponent arithmetic when ``value``, ``D`` and ``B`` are all smooth;
* two digits ``d1 d2`` with ``B = T - c``: ``value == d1*B + d2`` holds iff
  ``value == d1*T`` and ``d1*c == d2``.

Degenerate parameter choices (base below 2, a digit not below the base)
come back as skip records rather than being dropped.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

from .bigmath import divisors_above, nth_prime
from .encoding import (
    ALPHA,
    REVERSE,
    STANDARD,
    EncodingVariant,
    is_fixed_point,
)

__all__ = [
    "FamilyWitness",
    "FamilyVerificationError",
    "DEFAULT_THRESHOLD_BITS",
    "family_1024_3c",
    "family_lead_exponent",
    "large_1024_instance",
    "family_pow2",
    "family_pow2_count",
    "family_tower",
    "family_thm23",
    "family_thm23_reverse",
    "family_alpha",
    "family_rmn",
    "rmn_primes",
    "family_base_fixed",
]

DEFAULT_THRESHOLD_BITS = 4096

Exps = Dict[int, int]


class FamilyVerificationError(AssertionError):
    """A generator produced a witness that does not check out."""


@dataclass(frozen=True)
class FamilyWitness:
    family_id: str
    parameters: Dict[str, int]
    variant: EncodingVariant
    value: Optional[int] = None
    base: Optional[int] = None
    value_expr: str = ""
    base_expr: str = ""
    verified: bool = False
    method: str = "direct"
    skip_reason: Optional[str] = None

    @property
    def skipped(self) -> bool:
        return self.skip_reason is not None

    def to_dict(self) -> dict:
        return {
            "family_id": self.family_id,
            "parameters": dict(self.parameters),
            "value": self.value,
            "value_expr": self.value_expr,
            "base": self.base,
            "base_expr": self.base_expr,
            "variant": self.variant.name,
            "verified": self.verified,
            "method": self.method,
            "skip_reason": self.skip_reason,
        }


def _expr(exps: Exps) -> str:
    items = [(p, e) for p, e in sorted(exps.items()) if e]
    if not items:
        return "1"
    return "*".join(str(p) if e == 1 else f"{p}^{e}" for p, e in items)


def _log2(exps: Exps) -> float:
    return sum(e * math.log2(p) for p, e in exps.items())


def _value(exps: Exps) -> int:
    out = 1
    for p, e in exps.items():
        out *= p**e
    return out


def _norm(exps: Exps) -> Exps:
    return {p: e for p, e in sorted(exps.items()) if e}


def _mul(*parts: Exps) -> Exps:
    out: Exps = {}
    for part in parts:
        for p, e in part.items():
            out[p] = out.get(p, 0) + e
    return _norm(out)


def _scale(exps: Exps, r: int) -> Exps:
    return _norm({p: e * r for p, e in exps.items()})


def _less(x: int, exps: Exps) -> bool:
    """Exact ``x < prod(exps)``, materializing the product only when the logs are close."""
    lx, le = math.log2(x) if x > 0 else -1.0, _log2(exps)
    if abs(lx - le) > 1e-6 * max(1.0, le):
        return lx < le
    return x < _value(exps)


def _encoded_exps(digits: Sequence[int], variant: EncodingVariant) -> Exps:
    """Prime exponents of the encoding of ``digits`` (prime-indexed variants only)."""
    f2 = variant.digit_map
    order = list(digits)[::-1] if variant.reverse else digits
    return _norm({nth_prime(i): f2(d) for i, d in enumerate(order, start=1)})


def _finish(family_id: str, params: Dict[str, int], variant: EncodingVariant,
            value: Optional[int], base: Optional[int], value_expr: str, base_expr: str,
            method: str, ok: bool) -> FamilyWitness:
    if not ok:
        raise FamilyVerificationError(
            f"{family_id} {params}: {value_expr} is not a {variant.name} fixed point in base {base_expr}"
        )
    return FamilyWitness(family_id, dict(params), variant, value, base, value_expr, base_expr, True, method)


def _skip(family_id: str, params: Dict[str, int], variant: EncodingVariant, reason: str,
          value_expr: str = "", base_expr: str = "") -> FamilyWitness:
    return FamilyWitness(family_id, dict(params), variant, None, None, value_expr, base_expr,
                         False, "none", reason)


def _digit_then_zeros(family_id: str, params: Dict[str, int], variant: EncodingVariant,
                      value: Exps, base: Exps, lead: Exps, zeros: int,
                      threshold_bits: int) -> FamilyWitness:
    """Witness whose base-B digits are ``prod(lead)`` followed by ``zeros`` zeros."""
    vexpr, bexpr = _expr(value), _expr(base)
    if not _less(1, base):
        return _skip(family_id, params, variant, "base below 2", vexpr, bexpr)
    if _log2(lead) >= _log2(base) + 1 or not _less(_value(lead), base):
        return _skip(family_id, params, variant, "leading digit not below base", vexpr, bexpr)
    if _log2(value) <= threshold_bits:
        v, b = _value(value), _value(base)
        return _finish(family_id, params, variant, v, b, vexpr, bexpr, "direct",
                       is_fixed_point(v, b, variant)[0])
    radix_ok = _mul(lead, _scale(base, zeros)) == _norm(value)
    code_ok = _encoded_exps([_value(lead)] + [0] * zeros, variant) == _norm(value)
    return _finish(family_id, params, variant, None, None, vexpr, bexpr, "symbolic",
                   radix_ok and code_ok)


def _two_digit(family_id: str, params: Dict[str, int], variant: EncodingVariant,
               value: Exps, top: Exps, offset: int, d1: Exps, d2: int,
               threshold_bits: int) -> FamilyWitness:
    """Witness ``value = d1*B + d2`` in base ``B = prod(top) - offset``."""
    vexpr = _expr(value)
    bexpr = _expr(top) + (f"-{offset}" if offset else "")
    lead = _value(d1)
    # B >= 2 and both digits below B, i.e. prod(top) > max(d1, d2, 1) + offset
    if not _less(max(lead, d2, 1) + offset, top):
        return _skip(family_id, params, variant, "digit not below base (or base below 2)", vexpr, bexpr)
    if _log2(value) <= threshold_bits:
        v, b = _value(value), _value(top) - offset
        return _finish(family_id, params, variant, v, b, vexpr, bexpr, "direct",
                       is_fixed_point(v, b, variant)[0])
    radix_ok = _mul(d1, top) == _norm(value) and lead * offset == d2
    code_ok = _encoded_exps([lead, d2], variant) == _norm(value)
    return _finish(family_id, params, variant, None, None, vexpr, bexpr, "symbolic",
                   radix_ok and code_ok)


def family_lead_exponent(e: int, c_max: int) -> List[FamilyWitness]:
    """``2^e * 3^c`` in base ``(2^e 3^c - c) / e`` (digits ``e`` and ``c``), wherever ``e`` divides."""
    out = []
    for c in range(c_max + 1):
        v = 2**e * 3**c
        if (v - c) % e:
            continue
        b = (v - c) // e
        params = {"e": e, "c": c}
        if not (b >= 2 and e < b and c < b):
            out.append(_skip("lead_exponent", params, STANDARD, "digit not below base", f"2^{e}*3^{c}"))
            continue
        out.append(_finish("lead_exponent", params, STANDARD, v, b, _expr({2: e, 3: c}),
                           str(b), "direct", is_fixed_point(v, b, STANDARD)[0]))
    return out


def family_1024_3c(c_max: int) -> List[FamilyWitness]:
    """``1024 * 3^c`` in base ``(1024 * 3^c - c) / 10`` whenever 10 divides."""
    return [
        FamilyWitness("1024*3^c", {"c": w.parameters["c"]}, w.variant, w.value, w.base,
                      w.value_expr, w.base_expr, w.verified, w.method, w.skip_reason)
        for w in family_lead_exponent(10, c_max)
    ]


def large_1024_instance() -> FamilyWitness:
    """``2^100 * 3^96``, digits 100 and 96, in base ``(2^100 3^96 - 96) / 100``."""
    (w,) = [w for w in family_lead_exponent(100, 96) if w.parameters["c"] == 96]
    return w


def family_pow2(a: int, threshold_bits: int = DEFAULT_THRESHOLD_BITS) -> List[FamilyWitness]:
    """``2^(2^a)`` in base ``2^k`` for each divisor ``k > a`` of ``2^a - a``."""
    if a < 3:
        raise ValueError("a must be >= 3")
    n = 2**a - a
    out = []
    for k in divisors_above(n, a):
        out.append(_digit_then_zeros("pow2", {"a": a, "k": k, "m": n // k}, STANDARD,
                                     {2: 2**a}, {2: k}, {2: a}, n // k, threshold_bits))
    return out


def family_pow2_count(a: int) -> int:
    """Number of divisors of ``2^a - a`` exceeding ``a``."""
    if a < 3:
        raise ValueError("a must be >= 3")
    return len(divisors_above(2**a - a, a))


@dataclass(frozen=True)
class TowerResult:
    t: int
    exponents: List[int]
    witnesses: List[FamilyWitness] = field(default_factory=list)


def family_tower(t: int, threshold_bits: int = DEFAULT_THRESHOLD_BITS) -> TowerResult:
    """``2^(2^(2^t))`` in base ``2^K`` for the ``t + 1`` exponents ``K = 2^(2^t-j) - 2^(t-j)``."""
    if t <= 2:
        raise ValueError("t must be > 2")
    a = 2**t
    n = 2**a - a
    exps = []
    witnesses = []
    for j in range(t + 1):
        K = 2 ** (2**t - j) - 2 ** (t - j)
        if n % K or K <= a:
            raise FamilyVerificationError(f"tower t={t}: {K} is not a divisor of 2^{a}-{a} above {a}")
        exps.append(K)
        witnesses.append(_digit_then_zeros("tower", {"t": t, "j": j, "k": K, "m": n // K}, STANDARD,
                                           {2: 2**a}, {2: K}, {2: a}, n // K, threshold_bits))
    return TowerResult(t, exps, witnesses)


def family_thm23(n: int, m: int, threshold_bits: int = DEFAULT_THRESHOLD_BITS) -> List[FamilyWitness]:
    """The three standard families built from powers of 2 and 3."""
    if not m >= n >= 0:
        raise ValueError("need m >= n >= 0")
    p = {"n": n, "m": m}
    return [
        _two_digit("2*3^n", {"n": n}, STANDARD, {2: 1, 3: n}, {2: 1, 3: n}, n, {}, n, threshold_bits),
        _two_digit("2^2^n*3^2^m", p, STANDARD, {2: 2**n, 3: 2**m},
                   {2: 2**n - n, 3: 2**m}, 2 ** (m - n), {2: n}, 2**m, threshold_bits),
        _two_digit("2^3^n*3^3^m", p, STANDARD, {2: 3**n, 3: 3**m},
                   {2: 3**n, 3: 3**m - n}, 3 ** (m - n), {3: n}, 3**m, threshold_bits),
    ]


def family_thm23_reverse(n: int, m: int, threshold_bits: int = DEFAULT_THRESHOLD_BITS) -> List[FamilyWitness]:
    """The three reverse families built from powers of 2 and 3."""
    if not m >= n >= 0:
        raise ValueError("need m >= n >= 0")
    p = {"n": n, "m": m}
    return [
        _two_digit("3*2^n", {"n": n}, REVERSE, {2: n, 3: 1}, {2: n, 3: 1}, n, {}, n, threshold_bits),
        _two_digit("2^2^m*3^2^n", p, REVERSE, {2: 2**m, 3: 2**n},
                   {2: 2**m - n, 3: 2**n}, 2 ** (m - n), {2: n}, 2**m, threshold_bits),
        _two_digit("2^3^m*3^3^n", p, REVERSE, {2: 3**m, 3: 3**n},
                   {2: 3**m, 3: 3**n - n}, 3 ** (m - n), {3: n}, 3**m, threshold_bits),
    ]


def family_alpha(t: int, threshold_bits: int = DEFAULT_THRESHOLD_BITS) -> FamilyWitness:
    """``3 * 2^(2^t + 1)`` in base ``3 * 2^(2^t - t + 1)``: digit ``2^t`` then a zero."""
    if t < 0:
        raise ValueError("t must be >= 0")
    return _digit_then_zeros("alpha", {"t": t}, ALPHA, {2: 2**t + 1, 3: 1},
                             {2: 2**t - t + 1, 3: 1}, {2: t}, 1, threshold_bits)


def family_rmn(r_max: int, threshold_bits: int = DEFAULT_THRESHOLD_BITS) -> List[FamilyWitness]:
    """``p^p`` with ``p = p_(r+1)`` in base ``p^((p-1)/r)`` whenever ``r`` divides ``p - 1``."""
    if r_max < 1:
        raise ValueError("r_max must be >= 1")
    out = []
    for r in range(1, r_max + 1):
        p = nth_prime(r + 1)
        if (p - 1) % r:
            continue
        out.append(_digit_then_zeros("p^p", {"r": r, "p": p}, REVERSE, {p: p},
                                     {p: (p - 1) // r}, {p: 1}, r, threshold_bits))
    return out


def rmn_primes(r_max: int) -> List[int]:
    """Primes ``p_(r+1)`` with ``r | p_(r+1) - 1`` for ``r <= r_max``."""
    return [nth_prime(r + 1) for r in range(1, r_max + 1) if (nth_prime(r + 1) - 1) % r == 0]


def family_base_fixed(variant: EncodingVariant) -> FamilyWitness:
    """The base itself, written ``10``, as a fixed point of ``variant``.

    Forward: ``b = f1(1)^f2(1) * f1(2)^f2(0)``; reverse swaps the roles of
    positions 1 and 2.
    """
    f1, f2 = variant.index_map, variant.digit_map
    if variant.reverse:
        b = f1(2) ** f2(1) * f1(1) ** f2(0)
    else:
        b = f1(1) ** f2(1) * f1(2) ** f2(0)
    params = {"b": b}
    if b < 2:
        return _skip("base", params, variant, f"derived base {b} below 2", str(b), str(b))
    return _finish("base", params, variant, b, b, str(b), str(b), "direct",
                   is_fixed_point(b, b, variant)[0])

