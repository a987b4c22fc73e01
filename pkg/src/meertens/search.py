"""Termination bounds and the pruned exhaustive fixed-point search.

The search enumerates digit tuples rather than integers. For a fixed digit
count ``k`` it walks the positions in exponent order, keeping the exact
partial product ``P`` of the encoding. A fixed point is ``m = P * R`` where
``R`` is the product contributed by the unfixed positions, so a subtree is
dead as soon as no admissible ``R`` is left:

* ``R`` lies between the smallest and largest possible tail products;
* ``m`` is a ``k``-digit number, at most the value limit;
* forward encodings fix the leading digits of ``m``, which confines ``m`` to
  an interval of width ``b ** (k - j)``;
* reverse encodings fix the trailing digits, so ``P * R`` must hit a
  residue class modulo ``b ** j``.

Units of work are the top-level digit prefixes ``(k, d_1[, d_2])``.
They are independent, which is what makes checkpointing and the parallel
fan-out trivial.
"""
from __future__ import annotations

import hashlib
import json
import logging
import math
import os
import time
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from .bigmath import factorize, nth_prime, prime_index, primorial
from .encoding import (
    EncodingVariant,
    Finding,
    encode_digits,
    from_radix,
    is_fixed_point,
    make_finding,
    to_radix,
    variant_from_name,
    RadixRep,
)

log = logging.getLogger(__name__)

__all__ = [
    "ConfigurationError",
    "CheckpointError",
    "BoundReport",
    "SearchSpec",
    "Search",
    "compute_k_star",
    "compute_l_star",
    "zeroless_digit_cap",
    "resolve_bounds",
    "estimate_nodes",
    "search_fixed_points",
    "search_bases",
    "search_all_bases",
    "checkpoint_save",
    "checkpoint_resume",
    "CHECKPOINT_SCHEMA",
]

CHECKPOINT_SCHEMA = "1"
NODE_WARNING_THRESHOLD = 10**9

# cap_source values
KSTAR = "KStar"
LSTAR = "LStar"
SQUAREFREE = "Squarefree"
USER_LIMIT = "UserLimit"


class ConfigurationError(ValueError):
    """The search has no resolvable digit cap or contradictory settings."""


class CheckpointError(Exception):
    """A checkpoint could not be used for the requested search."""


def _largest_beating_primorial(b: int, factor: int) -> int:
    """Largest ``k`` with ``b**k > factor * primorial(k)``, or 0 if there is none.

    Once ``p_k >= b`` the ratio ``b**k / p_k#`` only decreases, so the scan
    stops at the first failure past that point. The comparison runs on
    logarithms; only near-ties are settled with exact integers.
    """
    if b < 2:
        raise ValueError("base must be >= 2")
    ln_b, ln_f = math.log(b), math.log(factor)
    best, k, theta = 0, 0, 0.0
    while True:
        k += 1
        p = nth_prime(k)
        theta += math.log(p)
        gap = k * ln_b - ln_f - theta
        # rounding in the running sum is far below this margin
        if abs(gap) > 1e-9 * (k * ln_b + 1.0):
            wins = gap > 0
        else:
            wins = b**k > factor * primorial(k)
        if wins:
            best = k
        elif p >= b:
            return best


def compute_k_star(b: int) -> int:
    """Largest ``k`` with ``b**k > 2 * primorial(k)`` (0 if there is none)."""
    return _largest_beating_primorial(b, 2)


def compute_l_star(b: int) -> int:
    """Largest ``l`` with ``b**l > primorial(l)`` (0 if there is none)."""
    return _largest_beating_primorial(b, 1)


def zeroless_digit_cap(b: int) -> Optional[int]:
    """``u - 1`` for squarefree ``b`` whose largest prime factor is ``p_u``; else None."""
    if b < 2:
        raise ValueError("base must be >= 2")
    fac = factorize(b)
    if any(e > 1 for e in fac.factors.values()):
        return None
    return prime_index(max(fac.factors)) - 1


@dataclass(frozen=True)
class BoundReport:
    base: int
    k_star: int
    l_star: int
    squarefree_cap: Optional[int]
    applied_digit_cap: int
    cap_source: str
    l_star_reading: str = "largest l with b^l > p_l#"

    @property
    def exhaustive(self) -> bool:
        return self.cap_source != USER_LIMIT

    def to_dict(self) -> dict:
        d = asdict(self)
        d["exhaustive"] = self.exhaustive
        return d


@dataclass(frozen=True)
class SearchSpec:
    base: int
    variant: EncodingVariant
    zeroless: bool = False
    max_digits: Optional[int] = None
    value_limit: Optional[int] = None
    parallelism: int = 1

    def __post_init__(self) -> None:
        if self.base < 2:
            raise ConfigurationError("base must be >= 2")
        if self.max_digits is not None and self.max_digits < 0:
            raise ConfigurationError("max_digits must be >= 0")
        if self.value_limit is not None and self.value_limit < 0:
            raise ConfigurationError("value_limit must be >= 0")
        if self.parallelism < 1:
            raise ConfigurationError("parallelism must be >= 1")

    def to_dict(self) -> dict:
        return {
            "base": self.base,
            "variant": self.variant.to_dict(),
            "zeroless": self.zeroless,
            "max_digits": self.max_digits,
            "value_limit": self.value_limit,
            "parallelism": self.parallelism,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "SearchSpec":
        return cls(
            base=int(d["base"]),
            variant=EncodingVariant.from_dict(d["variant"]),
            zeroless=bool(d["zeroless"]),
            max_digits=d["max_digits"],
            value_limit=d["value_limit"],
            parallelism=int(d.get("parallelism", 1)),
        )

    def fingerprint(self) -> str:
        """Hash of everything that affects the result set (not parallelism)."""
        d = self.to_dict()
        del d["parallelism"]
        blob = json.dumps(d, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()


def _proven_cap(spec: SearchSpec, k_star: int, l_star: int, sq_cap: Optional[int]) -> Tuple[Optional[int], Optional[str]]:
    v = spec.variant
    if v.f1 != "prime":
        return None, None
    if v.f2 == "successor":
        return k_star, KSTAR
    if spec.zeroless:
        if sq_cap is not None and sq_cap < l_star:
            return sq_cap, SQUAREFREE
        return l_star, LSTAR
    return None, None


def resolve_bounds(spec: SearchSpec) -> BoundReport:
    """Work out the digit cap a search will actually use."""
    b = spec.base
    k_star, l_star = compute_k_star(b), compute_l_star(b)
    sq_cap = zeroless_digit_cap(b)
    proven, source = _proven_cap(spec, k_star, l_star, sq_cap)
    user: Optional[int] = spec.max_digits
    if spec.value_limit is not None:
        lim_digits = len(to_radix(spec.value_limit, b)) if spec.value_limit else 0
        user = lim_digits if user is None else min(user, lim_digits)
    if proven is None:
        if user is None:
            raise ConfigurationError(
                f"variant {spec.variant.name!r} has no proven digit bound; "
                "give max_digits or value_limit"
            )
        return BoundReport(b, k_star, l_star, sq_cap, user, USER_LIMIT)
    if user is not None and user < proven:
        return BoundReport(b, k_star, l_star, sq_cap, user, USER_LIMIT)
    if user is not None and user == proven and spec.value_limit is not None:
        # the limit may cut into the last digit level
        if spec.value_limit < b**proven - 1:
            return BoundReport(b, k_star, l_star, sq_cap, proven, USER_LIMIT)
    return BoundReport(b, k_star, l_star, sq_cap, proven, source)


def estimate_nodes(spec: SearchSpec, cap: int) -> float:
    """Rough count of digit tuples below ``b**k`` summed over ``k <= cap``.

    Volume of the simplex ``sum e_i ln f1(i) <= k ln b`` with each coordinate
    clipped at ``b``; only used to warn about hopeless searches.
    """
    b = spec.base
    ln_b = math.log(b)
    total = 0.0
    f1 = spec.variant.index_map
    for k in range(1, cap + 1):
        budget = k * ln_b
        log_vol = k * math.log(budget) - math.lgamma(k + 1)
        for i in range(1, k + 1):
            p = f1(i)
            # a position with f1(i) == 1 is unconstrained by size: b choices
            log_vol += ln_b if p == 1 else -math.log(math.log(p))
        total += math.exp(min(log_vol, k * ln_b, 700.0))
    return total


class _DigitTree:
    """Pruned tree of digit tuples with exactly ``k`` digits."""

    def __init__(self, base: int, variant: EncodingVariant, k: int, zeroless: bool, limit: Optional[int]):
        b = base
        self.b, self.k = b, k
        self.reverse = variant.reverse
        self.f2 = variant.digit_map
        f1 = variant.index_map
        self.F = [1] + [f1(i) for i in range(1, k + 1)]
        self.dmin = 1 if zeroless else 0
        self.pow_b = [b**r for r in range(k + 1)]
        self.lo = self.pow_b[k - 1]
        hi = self.pow_b[k] - 1
        if limit is not None:
            hi = min(hi, limit)
        self.hi = hi
        self.unit_step = all(self.f2(d + 1) - self.f2(d) == 1 for d in range(min(b - 1, 8)))
        e_min, e_max = self.f2(self.dmin), self.f2(b - 1)
        self.min_tail = [1] * (k + 1)
        for j in range(k - 1, -1, -1):
            self.min_tail[j] = self.min_tail[j + 1] * self.F[j + 1] ** e_min
        # exact max tail only where it can bind; None means it exceeds hi by a margin
        log_hi = math.log(hi) if hi > 0 else 0.0
        self.max_tail: List[Optional[int]] = [1] * (k + 1)
        log_tail = 0.0
        for j in range(k - 1, -1, -1):
            log_tail += e_max * math.log(self.F[j + 1])
            if log_tail <= log_hi + 1.0:
                self.max_tail[j] = self.F[j + 1] ** e_max * (self.max_tail[j + 1] or 1)
            else:
                self.max_tail[j] = None
        self.nodes = 0

    @property
    def empty(self) -> bool:
        return self.hi < self.lo

    def _tail_range(self, j: int, P: int, lo: int, hi: int) -> Tuple[int, int]:
        r_lo = max(self.min_tail[j], -(-lo // P))
        r_hi = hi // P
        mx = self.max_tail[j]
        if mx is not None and mx < r_hi:
            r_hi = mx
        return r_lo, r_hi

    def viable(self, j: int, P: int, X: int) -> bool:
        """Whether the node with ``j`` fixed positions can still reach a fixed point.

        ``X`` is the value of the leading digits (forward) or the trailing
        digits (reverse) fixed so far.
        """
        if self.reverse:
            r_lo, r_hi = self._tail_range(j, P, self.lo, self.hi)
            if r_lo > r_hi:
                return False
            if j == 0:
                return True
            M = self.pow_b[j]
            g = math.gcd(P, M)
            if X % g:
                return False
            Mg = M // g
            if Mg == 1:
                return True
            r0 = (X // g) * pow(P // g, -1, Mg) % Mg
            return r_lo + (r0 - r_lo) % Mg <= r_hi
        if j == 0:
            lo, hi = self.lo, self.hi
        else:
            scale = self.pow_b[self.k - j]
            lo, hi = X * scale, min(self.hi, (X + 1) * scale - 1)
        r_lo, r_hi = self._tail_range(j, P, lo, hi)
        return r_lo <= r_hi

    def children(self, j: int, P: int, X: int) -> Iterator[Tuple[int, int, int]]:
        """(digit, new P, new X) for each digit at position ``j + 1`` not ruled out by size."""
        b, f = self.b, self.F[j + 1]
        d0 = self.dmin if (self.reverse or j) else max(1, self.dmin)
        bound = self.hi // self.min_tail[j + 1]
        Pd = P * f ** self.f2(d0)
        for d in range(d0, b):
            if Pd > bound:
                break
            yield d, Pd, (X + d * self.pow_b[j]) if self.reverse else X * b + d
            Pd = Pd * f if self.unit_step else P * f ** self.f2(d + 1)

    def walk(self, prefix: Sequence[int]) -> Optional[Tuple[int, int]]:
        """(P, X) after fixing ``prefix``, or None if it is not viable."""
        P, X = 1, 0
        if not self.viable(0, P, X):
            return None
        for j, d in enumerate(prefix):
            P = P * self.F[j + 1] ** self.f2(d)
            X = X + d * self.pow_b[j] if self.reverse else X * self.b + d
            if not self.viable(j + 1, P, X):
                return None
        return P, X

    def prefixes(self, depth: int) -> List[Tuple[int, ...]]:
        depth = min(depth, self.k)
        out: List[Tuple[int, ...]] = []
        if self.empty or not self.viable(0, 1, 0):
            return out

        def rec(j: int, P: int, X: int, pre: Tuple[int, ...]) -> None:
            if j == depth:
                out.append(pre)
                return
            for d, P2, X2 in self.children(j, P, X):
                if self.viable(j + 1, P2, X2):
                    rec(j + 1, P2, X2, pre + (d,))

        rec(0, 1, 0, ())
        return out

    def solve(self, prefix: Sequence[int]) -> List[int]:
        """All fixed-point values in the subtree below ``prefix``."""
        start = self.walk(prefix)
        if start is None:
            return []
        out: List[int] = []
        if self.reverse:
            self._dfs_reverse(len(prefix), start[0], start[1], out)
        else:
            self._dfs_forward(len(prefix), start[0], start[1], out)
        return out

    def _dfs_forward(self, j: int, P: int, D: int, out: List[int]) -> None:
        # P, D already viable at depth j
        self.nodes += 1
        k = self.k
        if j == k:
            if P == D:
                out.append(P)
            return
        b, pow_b, min_tail, max_tail = self.b, self.pow_b, self.min_tail, self.max_tail
        f = self.F[j + 1]
        d0 = self.dmin if j else max(1, self.dmin)
        hi_g = self.hi
        nxt = min_tail[j + 1]
        mx = max_tail[j + 1]
        bound = hi_g // nxt
        scale = pow_b[k - j - 1]
        unit = self.unit_step
        f2 = self.f2
        Pd = P * f ** f2(d0)
        Db = D * b
        for d in range(d0, b):
            if Pd > bound:
                break
            D2 = Db + d
            lo = D2 * scale
            hi = (D2 + 1) * scale - 1
            if hi > hi_g:
                hi = hi_g
            r_lo = -(-lo // Pd)
            if r_lo < nxt:
                r_lo = nxt
            r_hi = hi // Pd
            if mx is not None and mx < r_hi:
                r_hi = mx
            if r_lo <= r_hi:
                self._dfs_forward(j + 1, Pd, D2, out)
            Pd = Pd * f if unit else P * f ** f2(d + 1)

    def _dfs_reverse(self, j: int, P: int, E: int, out: List[int]) -> None:
        self.nodes += 1
        if j == self.k:
            if P == E:
                out.append(P)
            return
        for _, P2, E2 in self.children(j, P, E):
            if self.viable(j + 1, P2, E2):
                self._dfs_reverse(j + 1, P2, E2, out)


Unit = Tuple[int, ...]  # (k, d_1[, d_2]) in exponent order


class _Solver:
    """Digit trees for one spec; solves individual units."""

    def __init__(self, spec: SearchSpec):
        self.spec = spec
        self._trees: Dict[int, _DigitTree] = {}

    def tree(self, k: int) -> _DigitTree:
        t = self._trees.get(k)
        if t is None:
            s = self.spec
            t = self._trees[k] = _DigitTree(s.base, s.variant, k, s.zeroless, s.value_limit)
        return t

    @property
    def nodes(self) -> int:
        return sum(t.nodes for t in self._trees.values())

    def solve_unit(self, unit: Unit) -> List[Finding]:
        k, prefix = unit[0], unit[1:]
        out = []
        for value in self.tree(k).solve(prefix):
            ok, finding = is_fixed_point(value, self.spec.base, self.spec.variant)
            assert ok, f"search produced non-fixed point {value}"
            out.append(finding)
        return out


class Search:
    """A resumable, partitionable fixed-point search.

    >>> from meertens.encoding import ALPHA
    >>> s = Search(SearchSpec(12, ALPHA))
    >>> [f.value for f in s.run()]
    [12, 24]
    """

    def __init__(self, spec: SearchSpec, split_depth: Optional[int] = None):
        self.spec = spec
        self.bounds = resolve_bounds(spec)
        if split_depth is None:
            split_depth = 2 if spec.parallelism > spec.base - 1 else 1
        self.split_depth = split_depth
        self._solver = _Solver(spec)
        cap = self.bounds.applied_digit_cap
        if spec.value_limit is None:
            est = estimate_nodes(spec, cap)
            if est > NODE_WARNING_THRESHOLD:
                warnings.warn(
                    f"search over {cap} digits in base {spec.base} may visit ~{est:.2g} nodes",
                    RuntimeWarning,
                    stacklevel=2,
                )
        self.units: List[Unit] = []
        for k in range(1, cap + 1):
            self.units.extend((k,) + p for p in self._solver.tree(k).prefixes(split_depth))
        self.completed: set = set()
        self._found: Dict[int, Finding] = {}
        self.elapsed = 0.0

    @property
    def nodes(self) -> int:
        """Tree nodes expanded in this process (worker processes not included)."""
        return self._solver.nodes

    @property
    def done(self) -> bool:
        return len(self.completed) == len(self.units)

    @property
    def pending(self) -> List[Unit]:
        return [u for u in self.units if u not in self.completed]

    def solve_unit(self, unit: Unit) -> List[Finding]:
        return self._solver.solve_unit(unit)

    def _record(self, unit: Unit, findings: Iterable[Finding]) -> None:
        for f in findings:
            self._found[f.value] = f
        self.completed.add(unit)

    def run(self, max_units: Optional[int] = None, checkpoint_path: Optional[str] = None, on_finding=None) -> List[Finding]:
        """Process pending units (at most ``max_units``) and return all findings so far."""
        todo = self.pending
        if max_units is not None:
            todo = todo[:max_units]
        t0 = time.perf_counter()
        if self.spec.parallelism > 1 and len(todo) > 1:
            results = self._run_parallel(todo)
        else:
            results = ((u, self.solve_unit(u)) for u in todo)
        for unit, findings in results:
            self._record(unit, findings)
            if on_finding is not None:
                for f in findings:
                    on_finding(f)
            if checkpoint_path is not None:
                self.elapsed += time.perf_counter() - t0
                t0 = time.perf_counter()
                self.save(checkpoint_path)
        self.elapsed += time.perf_counter() - t0
        return self.findings()

    def _run_parallel(self, todo: List[Unit]) -> Iterator[Tuple[Unit, List[Finding]]]:
        n = self.spec.parallelism
        buckets = [todo[i::n] for i in range(n)]
        payload = self.spec.to_dict()
        with ProcessPoolExecutor(max_workers=n) as pool:
            futures = [pool.submit(_solve_units, payload, bucket) for bucket in buckets if bucket]
            for fut in futures:
                for unit, dicts in fut.result():
                    yield tuple(unit), [Finding.from_dict(d) for d in dicts]

    def findings(self) -> List[Finding]:
        return [self._found[v] for v in sorted(self._found)]

    # checkpointing

    def checkpoint(self) -> dict:
        spec = self.spec
        return {
            "schema_version": CHECKPOINT_SCHEMA,
            "spec": spec.to_dict(),
            "fingerprint": spec.fingerprint(),
            "split_depth": self.split_depth,
            "completed_prefixes": [list(u) for u in sorted(self.completed)],
            "findings": [f.to_dict() for f in self.findings()],
            "elapsed": self.elapsed,
        }

    def save(self, path: str) -> None:
        checkpoint_save(self, path)

    @classmethod
    def from_checkpoint(cls, state: dict, spec: Optional[SearchSpec] = None) -> "Search":
        if state.get("schema_version") != CHECKPOINT_SCHEMA:
            raise CheckpointError(f"unsupported checkpoint schema {state.get('schema_version')!r}")
        try:
            stored = SearchSpec.from_dict(state["spec"])
        except (KeyError, TypeError, ValueError) as exc:
            raise CheckpointError(f"malformed checkpoint spec: {exc}") from exc
        if stored.fingerprint() != state.get("fingerprint"):
            raise CheckpointError("checkpoint fingerprint does not match its spec")
        if spec is not None:
            if spec.fingerprint() != stored.fingerprint():
                raise CheckpointError("checkpoint was written for a different search")
            stored = spec
        search = cls(stored, split_depth=int(state["split_depth"]))
        known = set(search.units)
        for u in state["completed_prefixes"]:
            u = tuple(int(x) for x in u)
            if u not in known:
                raise CheckpointError(f"checkpoint prefix {u} is not a unit of this search")
            search.completed.add(u)
        for d in state["findings"]:
            f = Finding.from_dict(d)
            search._found[f.value] = f
        search.elapsed = float(state["elapsed"])
        return search


def _solve_units(spec_dict: dict, units: List[Unit]) -> List[Tuple[Unit, List[dict]]]:
    solver = _Solver(SearchSpec.from_dict(spec_dict))
    return [(u, [f.to_dict() for f in solver.solve_unit(tuple(u))]) for u in units]


def dump_checkpoint(state: dict) -> str:
    return json.dumps(state, sort_keys=True, indent=1) + "\n"


def checkpoint_save(search: Search, path: str) -> None:
    """Write the search state atomically as a JSON document."""
    tmp = f"{path}.tmp"
    with open(tmp, "w") as fh:
        fh.write(dump_checkpoint(search.checkpoint()))
    os.replace(tmp, path)


def checkpoint_resume(source, spec: Optional[SearchSpec] = None) -> Search:
    """Rebuild a search from a checkpoint path, JSON text, or parsed dict."""
    if isinstance(source, dict):
        state = source
    else:
        text = source
        if isinstance(source, (str, os.PathLike)) and os.path.exists(source):
            with open(source) as fh:
                text = fh.read()
        try:
            state = json.loads(text)
        except (TypeError, json.JSONDecodeError) as exc:
            raise CheckpointError(f"unreadable checkpoint: {exc}") from exc
    if not isinstance(state, dict):
        raise CheckpointError("checkpoint must be a JSON object")
    return Search.from_checkpoint(state, spec)


def search_fixed_points(spec: SearchSpec) -> List[Finding]:
    """All fixed points within the resolved digit cap, ascending by value."""
    return Search(spec).run()


def search_bases(m: int, b_lo: int, b_hi: int, variant: EncodingVariant) -> List[int]:
    """Bases in ``[b_lo, b_hi]`` in which ``m`` is a fixed point."""
    if not 2 <= b_lo <= b_hi:
        raise ValueError("need 2 <= b_lo <= b_hi")
    return [b for b in range(b_lo, b_hi + 1) if is_fixed_point(m, b, variant)[0]]


def search_all_bases(
    variant: EncodingVariant,
    max_digits: int,
    b_max: int,
    b_min: int = 2,
    zeroless: bool = False,
) -> List[Finding]:
    """Fixed points with 2..max_digits digits in every base of ``[b_min, b_max]``.

    Works from the digit side: each digit tuple has one encoded value ``P``,
    and ``from_radix(tuple, b)`` is increasing in ``b``, so the base (if any)
    is found by bisection. One-digit fixed points are not reported; they need
    ``f1(1) ** f2(d) == d`` and so are base-independent.
    """
    f1, f2 = variant.index_map, variant.digit_map
    dmin = 1 if zeroless else 0
    out: List[Finding] = []
    for k in range(2, max_digits + 1):
        F = [1] + [f1(i) for i in range(1, k + 1)]
        top = b_max**k - 1
        e_min = f2(dmin)
        min_tail = [1] * (k + 1)
        for j in range(k - 1, -1, -1):
            min_tail[j] = min_tail[j + 1] * F[j + 1] ** e_min
        exps: List[int] = []

        def rec(j: int, P: int) -> None:
            if j == k:
                digits = exps[::-1] if variant.reverse else list(exps)
                if digits[0] == 0:
                    return
                b = _solve_base(digits, P, max(b_min, max(digits) + 1), b_max)
                if b is not None:
                    out.append(make_finding(RadixRep(b, tuple(digits)), variant))
                return
            f = F[j + 1]
            bound = top // min_tail[j + 1]
            d = dmin
            if j == 0 and not variant.reverse:
                d = max(d, 1)
            while d < b_max:
                Pd = P * f ** f2(d)
                if Pd > bound:
                    break
                exps.append(d)
                rec(j + 1, Pd)
                exps.pop()
                d += 1

        rec(0, 1)
    out.sort(key=lambda f: (f.base, f.value))
    return out


def _solve_base(digits: Sequence[int], target: int, lo: int, hi: int) -> Optional[int]:
    if lo > hi:
        return None

    def val(b: int) -> int:
        m = 0
        for d in digits:
            m = m * b + d
        return m

    if val(lo) > target or val(hi) < target:
        return None
    while lo < hi:
        mid = (lo + hi) // 2
        if val(mid) < target:
            lo = mid + 1
        else:
            hi = mid
    return lo if val(lo) == target else None
