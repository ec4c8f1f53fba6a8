"""Beatty-type integer sequences and complementary-set checks.

A Beatty sequence is ``floor(n*alpha)`` for irrational ``alpha > 1``; the slow
variant, for slopes in (0, 1), is indexed ``floor((n+1)*alpha)`` so it starts
at n = 0. The two golden-ratio Beatty sequences (the classical lower and upper
Wythoff sequences) partition the positive integers and satisfy well-known
composition identities that are checked exhaustively here.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .surds import PHI, PHI_SQUARED, Surd, floor_mul, floor_mul_range

_REPORT_LIMIT = 20


def beatty(alpha: Surd, n_from: int, n_to: int, slow: bool = False) -> list[int]:
    """Terms ``floor(n*alpha)`` (or ``floor((n+1)*alpha)`` when slow) for n in [n_from, n_to]."""
    if alpha.is_rational:
        raise ValueError("Beatty sequences need an irrational slope")
    if not alpha > 0:
        raise ValueError("slope must be positive")
    if slow and not alpha < 1:
        raise ValueError("slow Beatty sequences need a slope in (0, 1)")
    if n_to < n_from:
        return []
    offset = 1 if slow else 0
    return [floor_mul(alpha, n + offset) for n in range(n_from, n_to + 1)]


def wythoff_lower(n: int) -> int:
    return floor_mul(PHI, n)


def wythoff_upper(n: int) -> int:
    return floor_mul(PHI_SQUARED, n)


@dataclass(frozen=True)
class IdentityReport:
    ok: bool
    n_checked: int
    violations: tuple[str, ...]


def check_wythoff_identities(n_max: int) -> IdentityReport:
    """Verify A(A(n)) = B(n) - 1 and A(B(n)) = A(n) + B(n) = 2A(n) + n for n <= n_max."""
    if n_max < 1:
        raise ValueError("n_max must be positive")
    b = floor_mul_range(PHI_SQUARED, n_max)
    a = floor_mul_range(PHI, b[n_max])
    violations = []
    for n in range(1, n_max + 1):
        if a[a[n]] != b[n] - 1:
            violations.append(f"n={n}: A(A(n))={a[a[n]]} but B(n)-1={b[n] - 1}")
        if a[b[n]] != a[n] + b[n] or a[b[n]] != 2 * a[n] + n:
            violations.append(f"n={n}: A(B(n))={a[b[n]]}, A+B={a[n] + b[n]}, 2A+n={2 * a[n] + n}")
        if len(violations) >= _REPORT_LIMIT:
            break
    return IdentityReport(not violations, n_max, tuple(violations))


@dataclass(frozen=True)
class AffineSequence:
    """Closed-form integer sequence ``p*base(n) + q*n + r`` for n >= start.

    ``base`` selects the underlying sequence: ``lower`` and ``upper`` are the
    two golden-ratio Beatty sequences, ``slow`` is ``floor((n+1)*alpha)`` for
    the given slope, ``id`` is n itself, and ``empty`` has no terms at all.
    """

    base: str
    p: int = 1
    q: int = 0
    r: int = 0
    start: int = 1
    alpha: Surd | None = None

    _BASES = ("lower", "upper", "slow", "id", "empty")

    def __post_init__(self):
        if self.base not in self._BASES:
            raise ValueError(f"unknown base {self.base!r} (expected one of {self._BASES})")
        if self.base == "slow" and self.alpha is None:
            raise ValueError("slow base needs a slope")

    def base_value(self, n: int) -> int:
        if self.base == "lower":
            return floor_mul(PHI, n)
        if self.base == "upper":
            return floor_mul(PHI_SQUARED, n)
        if self.base == "slow":
            return floor_mul(self.alpha, n + 1)
        if self.base == "id":
            return n
        raise ValueError("the empty sequence has no terms")

    def term(self, n: int) -> int:
        return self.p * self.base_value(n) + self.q * n + self.r

    def terms(self, count: int) -> list[int]:
        return [self.term(n) for n in range(self.start, self.start + count)]

    def values_upto(self, bound: int) -> set[int]:
        """All terms in [1, bound]; the sequence must be strictly increasing."""
        if self.base == "empty":
            return set()
        values: set[int] = set()
        n = self.start
        prev = None
        while True:
            t = self.term(n)
            if prev is not None and t <= prev:
                raise ValueError(f"sequence is not strictly increasing at n={n}")
            if t > bound:
                return values
            if t >= 1:
                values.add(t)
            prev = t
            n += 1


@dataclass(frozen=True)
class PartitionReport:
    """Outcome of a cover-and-disjointness check over {1..bound}."""

    ok: bool
    bound: int
    missing: tuple[int, ...] = ()
    duplicated: tuple[int, ...] = ()
    missing_count: int = 0
    duplicated_count: int = 0
    note: str = ""


def _partition_report(value_sets: list[set[int]], bound: int, note: str = "") -> PartitionReport:
    hits = bytearray(bound + 1)
    for values in value_sets:
        for v in values:
            if 1 <= v <= bound and hits[v] < 255:
                hits[v] += 1
    missing = [m for m in range(1, bound + 1) if hits[m] == 0]
    duplicated = [m for m in range(1, bound + 1) if hits[m] > 1]
    return PartitionReport(
        ok=not missing and not duplicated,
        bound=bound,
        missing=tuple(missing[:_REPORT_LIMIT]),
        duplicated=tuple(duplicated[:_REPORT_LIMIT]),
        missing_count=len(missing),
        duplicated_count=len(duplicated),
        note=note,
    )


def _beatty_values_upto(alpha: Surd, bound: int) -> set[int]:
    values = set()
    n = 1
    while True:
        t = floor_mul(alpha, n)
        if t > bound:
            return values
        if t >= 1:
            values.add(t)
        n += 1


def beatty_pair_check(alpha: Surd, beta: Surd, bound: int) -> PartitionReport:
    """Do the two Beatty sequences partition {1..bound}?"""
    for slope in (alpha, beta):
        if slope.is_rational:
            raise ValueError("Beatty pair check needs irrational slopes")
        if not slope > 1:
            raise ValueError("Beatty pair slopes must exceed 1")
    return _partition_report([_beatty_values_upto(alpha, bound), _beatty_values_upto(beta, bound)], bound)


def complementary_triple_check(
    s1: AffineSequence, s2: AffineSequence, s3: AffineSequence, bound: int
) -> PartitionReport:
    """Are the three value sets pairwise disjoint with union {1..bound}?"""
    return _partition_report([s.values_upto(bound) for s in (s1, s2, s3)], bound)
