"""Exact integer utilities: primes, primorials, Chebyshev theta, factoring, Lambert W.

Everything here is exact big-integer arithmetic except :func:`chebyshev_theta`
and :func:`lambert_w`, which are the only floating-point surfaces.
"""
from __future__ import annotations

import bisect
import math
import random
import threading
from dataclasses import dataclass, field
from typing import Dict, List

__all__ = [
    "PrimeTable",
    "Factorization",
    "PRIMES",
    "nth_prime",
    "primes_up_to",
    "prime_index",
    "primorial",
    "chebyshev_theta",
    "lambert_w",
    "is_prime",
    "factorize",
    "divisors",
    "divisors_above",
    "is_squarefree",
]

# Miller-Rabin with these bases is deterministic below this bound (covers 64 bits).
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_DETERMINISTIC_BELOW = 3317044064679887385961981
_MR_RANDOM_ROUNDS = 64

_TRIAL_LIMIT = 10**6
_TRIAL_BLOCK = 500
_PRIMORIAL_CACHE = 4096


class PrimeTable:
    """Append-only, lazily grown table of primes (1-indexed view via ``nth``).

    Growth is by segmented sieve with geometric doubling of the sieved range.
    Extension happens under a lock; readers only ever see a prefix that has
    already been fully sieved.
    """

    def __init__(self) -> None:
        self._primes: List[int] = [2, 3, 5, 7, 11, 13]
        self._sieved_to = 17  # every prime < _sieved_to is in _primes
        self._primorials: List[int] = [1]
        self._lock = threading.Lock()

    @property
    def limit(self) -> int:
        """Largest index currently materialized."""
        return len(self._primes)

    @property
    def primes(self) -> List[int]:
        return self._primes

    def _sieve_segment(self, lo: int, hi: int) -> None:
        # all base primes up to sqrt(hi) are present because hi <= lo**2
        seg = bytearray(b"\x01") * (hi - lo)
        root = math.isqrt(hi - 1)
        for p in self._primes:
            if p > root:
                break
            start = max(p * p, ((lo + p - 1) // p) * p)
            if start >= hi:
                continue
            seg[start - lo :: p] = bytes(len(range(start - lo, hi - lo, p)))
        self._primes.extend(lo + i for i, flag in enumerate(seg) if flag)
        self._sieved_to = hi

    def extend_to_value(self, x: int) -> None:
        """Ensure every prime <= x is present."""
        if x < self._sieved_to:
            return
        with self._lock:
            while x >= self._sieved_to:
                lo = self._sieved_to
                hi = min(max(2 * lo, x + 1), lo * lo)
                self._sieve_segment(lo, hi)

    def extend_to_count(self, n: int) -> None:
        """Ensure at least ``n`` primes are present."""
        while len(self._primes) < n:
            self.extend_to_value(2 * self._sieved_to)

    def nth(self, n: int) -> int:
        if n < 1:
            raise ValueError("prime index must be >= 1")
        if n > len(self._primes):
            if n >= 6:
                ln = math.log(n)
                self.extend_to_value(int(n * (ln + math.log(ln))) + 1)
            self.extend_to_count(n)
        return self._primes[n - 1]

    def primorial(self, n: int) -> int:
        if n < 0:
            raise ValueError("primorial index must be >= 0")
        cache = self._primorials
        if n < len(cache):
            return cache[n]
        self.nth(n)
        if n > _PRIMORIAL_CACHE:
            # caching every large primorial would cost quadratic memory
            return _product(self._primes[:n])
        with self._lock:
            while len(cache) <= n:
                cache.append(cache[-1] * self._primes[len(cache) - 1])
        return cache[n]


def _product(xs: List[int]) -> int:
    """Product by balanced splitting, so the big multiplications stay few."""
    if len(xs) <= 32:
        return math.prod(xs)
    mid = len(xs) // 2
    return _product(xs[:mid]) * _product(xs[mid:])


PRIMES = PrimeTable()


def nth_prime(n: int) -> int:
    """Return the ``n``-th prime (``nth_prime(1) == 2``)."""
    return PRIMES.nth(n)


def primes_up_to(x: float) -> List[int]:
    """All primes <= x, ascending."""
    x = int(math.floor(x))
    if x < 2:
        return []
    PRIMES.extend_to_value(x)
    primes = PRIMES.primes
    return primes[: bisect.bisect_right(primes, x)]


def prime_index(p: int) -> int:
    """1-based index of the prime ``p``; raises ValueError if ``p`` is not prime."""
    PRIMES.extend_to_value(p)
    primes = PRIMES.primes
    i = bisect.bisect_left(primes, p)
    if i == len(primes) or primes[i] != p:
        raise ValueError(f"{p} is not prime")
    return i + 1


def primorial(n: int) -> int:
    """Exact product of the first ``n`` primes; ``primorial(0) == 1``."""
    return PRIMES.primorial(n)


def chebyshev_theta(x: float) -> float:
    """Sum of ``ln p`` over primes ``p <= x``."""
    if x < 0:
        raise ValueError("theta is defined for x >= 0")
    return math.fsum(math.log(p) for p in primes_up_to(x))


def lambert_w(x: float) -> float:
    """Principal branch of Lambert W on ``x >= 0``.

    Bisection on a monotone bracket, finished with safeguarded Newton steps.
    """
    if x < 0 or math.isnan(x):
        raise ValueError("lambert_w is only implemented for x >= 0")
    if x == 0:
        return 0.0
    if math.isinf(x):
        return math.inf
    # w*e^w is increasing on [0, inf) and W(x) <= log1p(x) there
    lo, hi = 0.0, max(1.0, math.log1p(x))
    tol = 1e-12 * max(1.0, x)

    def g(w: float) -> float:
        return w * math.exp(w) - x

    for _ in range(30):
        mid = 0.5 * (lo + hi)
        if g(mid) < 0:
            lo = mid
        else:
            hi = mid
    w = 0.5 * (lo + hi)
    for _ in range(50):
        gw = g(w)
        if abs(gw) <= tol:
            break
        if gw < 0:
            lo = w
        else:
            hi = w
        step = w - gw / (math.exp(w) * (w + 1.0))
        w = step if lo < step < hi else 0.5 * (lo + hi)
        if hi - lo <= 4 * math.ulp(hi):
            break
    return w


def _is_sprp(n: int, a: int, d: int, s: int) -> bool:
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_prime(n: int) -> bool:
    """Miller-Rabin; deterministic below ~3.3e24, 64 random rounds above."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    if n < _MR_DETERMINISTIC_BELOW:
        bases = _MR_BASES
    else:
        rng = random.Random(n)
        bases = [rng.randrange(2, n - 1) for _ in range(_MR_RANDOM_ROUNDS)]
    return all(_is_sprp(n, a, d, s) for a in bases)


@dataclass(frozen=True)
class Factorization:
    """Prime factorization; ``proven`` is False if any factor is only a probable prime."""

    factors: Dict[int, int] = field(default_factory=dict)
    value: int = 1
    proven: bool = True

    def __post_init__(self) -> None:
        object.__setattr__(self, "factors", dict(sorted(self.factors.items())))

    @classmethod
    def from_factors(cls, factors: Dict[int, int], proven: bool = True) -> "Factorization":
        value = 1
        for p, e in factors.items():
            value *= p**e
        return cls({p: e for p, e in factors.items() if e}, value, proven)

    def reconstruct(self) -> int:
        out = 1
        for p, e in self.factors.items():
            out *= p**e
        return out

    def expression(self) -> str:
        """Render as ``2^8*3*5^3``; ``1`` for the empty product."""
        if not self.factors:
            return "1"
        return "*".join(str(p) if e == 1 else f"{p}^{e}" for p, e in self.factors.items())


_trial_blocks: List[tuple] = []


def _trial_block_products() -> List[tuple]:
    if not _trial_blocks:
        primes = primes_up_to(_TRIAL_LIMIT)
        for i in range(0, len(primes), _TRIAL_BLOCK):
            block = primes[i : i + _TRIAL_BLOCK]
            _trial_blocks.append((math.prod(block), block))
    return _trial_blocks


def _brent(n: int, rng: random.Random) -> int:
    """Return a nontrivial factor of the odd composite ``n``."""
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def factorize(n: int) -> Factorization:
    """Complete prime factorization of ``n >= 1``.

    Trial division by primes below 10^6 (batched through gcds with block
    products), then Brent's rho on whatever cofactor remains.
    """
    if n < 1:
        raise ValueError("factorize requires n >= 1")
    original = n
    factors: Dict[int, int] = {}

    def take(p: int) -> None:
        nonlocal n
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        factors[p] = factors.get(p, 0) + e

    if n < _TRIAL_LIMIT**2:
        # small n: plain trial division stops at sqrt(n)
        p_iter = iter(primes_up_to(min(_TRIAL_LIMIT, math.isqrt(n))))
        for p in p_iter:
            if p * p > n:
                break
            if n % p == 0:
                take(p)
        if n > 1:
            factors[n] = factors.get(n, 0) + 1
        return Factorization(factors, original, True)

    for prod, block in _trial_block_products():
        g = math.gcd(n, prod)
        if g == 1:
            continue
        for p in block:
            if g % p == 0:
                take(p)
        if n == 1:
            break

    proven = True
    stack = [n] if n > 1 else []
    rng = random.Random(0x5EED)
    while stack:
        c = stack.pop()
        if c < _TRIAL_LIMIT**2 or is_prime(c):
            # no factor below 10^6 remains, so c < 10^12 is prime
            if c >= _MR_DETERMINISTIC_BELOW:
                proven = False
            factors[c] = factors.get(c, 0) + 1
            continue
        d = _brent(c, rng)
        stack.extend((d, c // d))
    return Factorization(factors, original, proven)


def divisors(n: int) -> List[int]:
    """All positive divisors of ``n``, ascending."""
    divs = [1]
    for p, e in factorize(n).factors.items():
        divs = [d * p**i for d in divs for i in range(e + 1)]
    return sorted(divs)


def divisors_above(n: int, t: int) -> List[int]:
    """Divisors of ``n`` strictly greater than ``t``, ascending."""
    return [d for d in divisors(n) if d > t]


def is_squarefree(n: int) -> bool:
    return all(e == 1 for e in factorize(n).factors.values())
