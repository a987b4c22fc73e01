"""Radix representations and the prime-exponent digit encodings.

A number ``m`` with base-``b`` digits ``d_1 .. d_n`` (most significant first)
is encoded as ``prod f1(i) ** f2(d_i)``. The named variants are:

* ``standard``: f1 = i-th prime, f2 = identity
* ``alpha``:    f1 = i-th prime, f2 = d + 1 (injective)
* ``reverse``:  standard maps applied to the digits least-significant first
* ``gmn`` / ``grmn``: f1 = f2 = identity, forward / reversed

A fixed point of an encoding is a Meertens number of that flavour.
"""
from __future__ import annotations

import math
import string
from dataclasses import dataclass
from typing import Callable, Dict, Optional, Sequence, Tuple

from .bigmath import Factorization, factorize, lambert_w, nth_prime

__all__ = [
    "RadixRep",
    "EncodingVariant",
    "Finding",
    "INDEX_MAPS",
    "DIGIT_MAPS",
    "STANDARD",
    "ALPHA",
    "REVERSE",
    "GMN",
    "GRMN",
    "VARIANTS",
    "variant_from_name",
    "to_radix",
    "from_radix",
    "encode",
    "encode_digits",
    "is_fixed_point",
    "make_finding",
    "zero_digit_stats",
    "zero_lower_bound",
    "render_digits",
]

INDEX_MAPS: Dict[str, Callable[[int], int]] = {
    "prime": nth_prime,
    "identity": lambda i: i,
}
DIGIT_MAPS: Dict[str, Callable[[int], int]] = {
    "identity": lambda d: d,
    "successor": lambda d: d + 1,
}


@dataclass(frozen=True)
class RadixRep:
    """A base and its digits, most significant first.

    ``to_radix`` always produces the canonical form (no leading zeros except
    for the value 0). Non-canonical reps with leading zeros may be built by
    hand; only the reverse encoding accepts them meaningfully.
    """

    base: int
    digits: Tuple[int, ...]

    def __post_init__(self) -> None:
        if self.base < 2:
            raise ValueError(f"base must be >= 2, got {self.base}")
        digits = tuple(self.digits)
        if not digits:
            raise ValueError("a radix representation needs at least one digit")
        for d in digits:
            if not 0 <= d < self.base:
                raise ValueError(f"digit {d} out of range for base {self.base}")
        object.__setattr__(self, "digits", digits)

    def __len__(self) -> int:
        return len(self.digits)

    @property
    def is_canonical(self) -> bool:
        return self.digits[0] != 0 or len(self.digits) == 1

    def value(self) -> int:
        return from_radix(self)

    def render(self) -> str:
        return render_digits(self)


@dataclass(frozen=True)
class EncodingVariant:
    f1: str = "prime"
    f2: str = "identity"
    reverse: bool = False

    def __post_init__(self) -> None:
        if self.f1 not in INDEX_MAPS:
            raise ValueError(f"unknown index map {self.f1!r}")
        if self.f2 not in DIGIT_MAPS:
            raise ValueError(f"unknown digit map {self.f2!r}")

    @property
    def kind(self) -> str:
        if self.f1 == "prime" and self.f2 == "identity":
            return "reverse" if self.reverse else "standard"
        if self.f1 == "prime" and self.f2 == "successor" and not self.reverse:
            return "alpha"
        return "generalized"

    @property
    def name(self) -> str:
        if self.kind != "generalized":
            return self.kind
        if self.f1 == "identity" and self.f2 == "identity":
            return "grmn" if self.reverse else "gmn"
        return f"generalized:{self.f1}:{self.f2}:{'reverse' if self.reverse else 'forward'}"

    @property
    def index_map(self) -> Callable[[int], int]:
        return INDEX_MAPS[self.f1]

    @property
    def digit_map(self) -> Callable[[int], int]:
        return DIGIT_MAPS[self.f2]

    @property
    def prime_indexed(self) -> bool:
        """True when every position contributes a distinct prime (f1 > identity)."""
        return self.f1 == "prime"

    def to_dict(self) -> dict:
        return {"f1": self.f1, "f2": self.f2, "reverse": self.reverse}

    @classmethod
    def from_dict(cls, d: dict) -> "EncodingVariant":
        return cls(d["f1"], d["f2"], bool(d["reverse"]))


STANDARD = EncodingVariant("prime", "identity", False)
ALPHA = EncodingVariant("prime", "successor", False)
REVERSE = EncodingVariant("prime", "identity", True)
GMN = EncodingVariant("identity", "identity", False)
GRMN = EncodingVariant("identity", "identity", True)

VARIANTS: Dict[str, EncodingVariant] = {
    "standard": STANDARD,
    "alpha": ALPHA,
    "reverse": REVERSE,
    "gmn": GMN,
    "grmn": GRMN,
}


def variant_from_name(name: str) -> EncodingVariant:
    try:
        return VARIANTS[name.lower()]
    except KeyError:
        if name.startswith("generalized:"):
            _, f1, f2, direction = name.split(":")
            return EncodingVariant(f1, f2, direction == "reverse")
        raise ValueError(f"unknown variant {name!r}") from None


def to_radix(m: int, b: int) -> RadixRep:
    """Canonical base-``b`` digits of ``m >= 0``."""
    if b < 2:
        raise ValueError(f"base must be >= 2, got {b}")
    if m < 0:
        raise ValueError("only nonnegative integers have a radix representation")
    if m == 0:
        return RadixRep(b, (0,))
    if b & (b - 1) == 0:
        shift, mask = b.bit_length() - 1, b - 1
        out = []
        while m:
            out.append(m & mask)
            m >>= shift
    else:
        out = []
        while m:
            m, d = divmod(m, b)
            out.append(d)
    out.reverse()
    return RadixRep(b, tuple(out))


def from_radix(rep: RadixRep) -> int:
    b = rep.base
    m = 0
    for d in rep.digits:
        m = m * b + d
    return m


def _exponent_order(digits: Sequence[int], variant: EncodingVariant) -> Sequence[int]:
    return digits[::-1] if variant.reverse else digits


def encode_digits(digits: Sequence[int], variant: EncodingVariant) -> int:
    """Encode a raw digit sequence (most significant first)."""
    f1, f2 = variant.index_map, variant.digit_map
    out = 1
    for i, d in enumerate(_exponent_order(tuple(digits), variant), start=1):
        e = f2(d)
        if e:
            out *= f1(i) ** e
    return out


def encode(rep: RadixRep, variant: EncodingVariant) -> int:
    """Exact value of the encoding of ``rep`` under ``variant``.

    For the reverse direction, high-order zero padding contributes
    ``f1(i) ** f2(0)`` at the tail, which is 1 whenever ``f2(0) == 0``.
    """
    return encode_digits(rep.digits, variant)


def _encode_bounded(digits: Sequence[int], variant: EncodingVariant, bound: int) -> Optional[int]:
    """Encode, returning None as soon as the running product exceeds ``bound``."""
    f1, f2 = variant.index_map, variant.digit_map
    bits = bound.bit_length()
    out = 1
    for i, d in enumerate(_exponent_order(digits, variant), start=1):
        e = f2(d)
        if not e:
            continue
        p = f1(i)
        if p == 1:
            continue
        # p**e > 2**(e*log2 p); skip building astronomically large powers
        if e * math.log2(p) > bits + 1:
            return None
        out *= p**e
        if out > bound:
            return None
    return out


@dataclass(frozen=True)
class Finding:
    value: int
    base: int
    variant: EncodingVariant
    digits: RadixRep
    factorization: Factorization
    zero_digits: int
    trailing_zeros: int

    @property
    def num_digits(self) -> int:
        return len(self.digits)

    def sort_key(self) -> tuple:
        return (self.value, self.base, self.variant.name)

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "base": self.base,
            "variant": self.variant.name,
            "digits": list(self.digits.digits),
            "rendered": self.digits.render(),
            "factorization": {str(p): e for p, e in self.factorization.factors.items()},
            "zero_digits": self.zero_digits,
            "trailing_zeros": self.trailing_zeros,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Finding":
        rep = RadixRep(int(d["base"]), tuple(int(x) for x in d["digits"]))
        fac = Factorization.from_factors({int(p): int(e) for p, e in d["factorization"].items()})
        return cls(
            int(d["value"]), int(d["base"]), variant_from_name(d["variant"]), rep, fac,
            int(d["zero_digits"]), int(d["trailing_zeros"]),
        )


def make_finding(rep: RadixRep, variant: EncodingVariant) -> Finding:
    """Build a Finding for a rep already known to be a fixed point."""
    value = from_radix(rep)
    if variant.prime_indexed:
        f2 = variant.digit_map
        exps: Dict[int, int] = {}
        for i, d in enumerate(_exponent_order(rep.digits, variant), start=1):
            if f2(d):
                exps[nth_prime(i)] = f2(d)
        fac = Factorization.from_factors(exps)
    else:
        fac = factorize(value)
    zeros, trailing = zero_digit_stats(rep)
    return Finding(value, rep.base, variant, rep, fac, zeros, trailing)


def is_fixed_point(m: int, b: int, variant: EncodingVariant) -> Tuple[bool, Optional[Finding]]:
    """Whether ``m`` is fixed by the encoding in base ``b``; the Finding on success."""
    if m < 1:
        raise ValueError("fixed-point candidates must be >= 1")
    rep = to_radix(m, b)
    if _encode_bounded(rep.digits, variant, m) != m:
        return False, None
    return True, make_finding(rep, variant)


def zero_digit_stats(rep: RadixRep) -> Tuple[int, int]:
    """(number of zero digits, number of trailing zero digits)."""
    digits = rep.digits
    zeros = digits.count(0)
    trailing = 0
    for d in reversed(digits):
        if d:
            break
        trailing += 1
    return zeros, trailing


def zero_lower_bound(b: int, u: int) -> float:
    """Lower bound on the zero-digit count of a u-digit (reverse) Meertens number.

    Raw value ``u - exp(W(1.675 u ln b))``, clamped at 0.
    """
    if b < 2 or u < 1:
        raise ValueError("need b >= 2 and u >= 1")
    return max(0.0, u - math.exp(lambert_w(1.675 * u * math.log(b))))


_DIGIT_CHARS = string.digits + string.ascii_uppercase


def render_digits(rep: RadixRep) -> str:
    """0-9, A-Z for digits below 36, otherwise bracketed decimal per digit."""
    return "".join(_DIGIT_CHARS[d] if d < 36 else f"[{d}]" for d in rep.digits)
