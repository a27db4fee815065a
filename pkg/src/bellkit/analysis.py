"""Census of the inequality family: term counts, zeros, special members.

For N sites the family has 2^(2^N) members (one per sign vector). Facts
checked or reported here, all scale-invariant:

* a member is "t-term" when exactly t coefficients are nonzero;
  "full-term" means t = 2^N, "trivial" means t = 1;
* the trivial members collapse to exactly 2^N classes under scalar
  equivalence, one per expectation value;
* at least half of all members are full-term for N >= 2 (exactly half
  for N = 2 and N = 3; the exact fraction for N = 4 is 33664/65536,
  about 51.4 %, a computed result of this module);
* the share of members with a zero at any fixed position is exactly
  C(2^N, 2^(N-1)) / 2^(2^N), approaching 1/sqrt(2^(N-1) pi) from below.

Counting is exhaustive through N = 4 (and optionally N = 5); N = 5
defaults to a seeded uniform sample with a reported standard error.
"""
from __future__ import annotations

import math
from collections.abc import Iterator, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import kernels
from .errors import BellkitError, CapExceededError
from .inequality import (
    CoefficientVector,
    _as_vector,
    reverse_observables,
)
from .limits import MATERIALIZE_MAX_SITES, STREAM_MAX_SITES, site_cap
from .polynomial import (
    BellPolynomial,
    UVIndex,
    bell_poly,
    from_coefficient_vector,
    to_coefficient_vector,
)

DEFAULT_SAMPLE_SIZE = 10_000_000


def term_count(v: CoefficientVector | Sequence[int]) -> int:
    """Number of expectation values appearing (nonzero coefficients)."""
    return sum(1 for c in _as_vector(v).coeffs if c != 0)


@dataclass(frozen=True)
class ClassificationReport:
    """Counting results over the family (or a uniform sample of it)."""

    n_sites: int
    mode: str  # "exhaustive" or "sample"
    total: int
    histogram: tuple[int, ...]  # histogram[t] = number of t-term members
    full_term: int
    trivial_classes: int | None  # scalar-equivalence classes; exhaustive only
    zero_counts: tuple[int, ...]  # per position k
    seed: int | None = None
    full_term_stderr: float | None = None

    @property
    def full_term_fraction(self) -> float:
        return self.full_term / self.total


def _reduce_batches(
    batches: Iterator[np.ndarray],
    length: int,
    jobs: int,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    zero = np.zeros(length, dtype=np.int64)
    hist = np.zeros(length + 1, dtype=np.int64)
    one_pos = np.zeros(length, dtype=np.int64)

    def accumulate(result) -> None:
        z, h, o = result
        np.add(zero, z, out=zero)
        np.add(hist, h, out=hist)
        np.add(one_pos, o, out=one_pos)

    if jobs <= 1:
        for codes in batches:
            accumulate(kernels.classify_batch(codes, length))
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            window: list = []
            for codes in batches:
                window.append(pool.submit(kernels.classify_batch, codes, length))
                if len(window) > jobs:
                    accumulate(window.pop(0).result())
            for fut in window:
                accumulate(fut.result())
    return zero, hist, one_pos


def classify(
    n_sites: int,
    *,
    exhaustive: bool | None = None,
    sample_size: int | None = None,
    seed: int = 0,
    jobs: int = 1,
    batch_size: int = 1 << 20,
) -> ClassificationReport:
    """Count term statistics over the family.

    Exhaustive by default up to 4 sites. Five sites defaults to a fixed
    seed uniform sample (2^32 members are countable exhaustively, but
    slowly; pass ``exhaustive=True`` to insist). The sample is drawn in
    fixed-size blocks, so results depend only on (sample_size, seed).
    """
    if n_sites < 1:
        raise BellkitError("site count must be at least 1")
    length = 1 << n_sites
    cap = min(site_cap(STREAM_MAX_SITES), 5)
    if n_sites > cap:
        raise CapExceededError(
            f"classification capped at {cap} sites, got {n_sites}"
        )
    if exhaustive is None:
        exhaustive = n_sites <= MATERIALIZE_MAX_SITES and sample_size is None
    if exhaustive and sample_size is not None:
        raise BellkitError("choose either exhaustive counting or a sample size")

    if exhaustive:
        total = 1 << length

        def batches() -> Iterator[np.ndarray]:
            for start in range(0, total, batch_size):
                stop = min(start + batch_size, total)
                yield np.arange(start, stop, dtype=np.int64)

        zero, hist, one_pos = _reduce_batches(batches(), length, jobs)
        report = ClassificationReport(
            n_sites=n_sites,
            mode="exhaustive",
            total=total,
            histogram=tuple(int(x) for x in hist),
            full_term=int(hist[length]),
            trivial_classes=int(np.count_nonzero(one_pos)),
            zero_counts=tuple(int(x) for x in zero),
        )
        _check_exhaustive(report)
        return report

    size = DEFAULT_SAMPLE_SIZE if sample_size is None else int(sample_size)
    if size < 1:
        raise BellkitError("sample size must be positive")
    rng = np.random.default_rng(seed)

    def sample_batches() -> Iterator[np.ndarray]:
        remaining = size
        while remaining > 0:
            m = min(batch_size, remaining)
            yield rng.integers(0, 1 << length, size=m, dtype=np.int64)
            remaining -= m

    zero, hist, one_pos = _reduce_batches(sample_batches(), length, jobs)
    full = int(hist[length])
    p = full / size
    return ClassificationReport(
        n_sites=n_sites,
        mode="sample",
        total=size,
        histogram=tuple(int(x) for x in hist),
        full_term=full,
        trivial_classes=None,
        zero_counts=tuple(int(x) for x in zero),
        seed=seed,
        full_term_stderr=math.sqrt(p * (1 - p) / size),
    )


def _check_exhaustive(report: ClassificationReport) -> None:
    """Counting facts every exhaustive census must satisfy."""
    n, total = report.n_sites, report.total
    if sum(report.histogram) != total:
        raise BellkitError("histogram does not sum to the population size")
    if report.trivial_classes != 1 << n:
        raise BellkitError(
            f"expected {1 << n} trivial classes, counted {report.trivial_classes}"
        )
    if n >= 2 and 2 * report.full_term < total:
        raise BellkitError("fewer than half of the members are full-term")
    if n in (2, 3) and 2 * report.full_term != total:
        raise BellkitError(f"full-term count must be exactly half for N={n}")


def zero_probability(n_sites: int, k: int = 0) -> Fraction:
    """Exact share of members whose coefficient at position k is zero.

    Independent of k: C(2^N, 2^(N-1)) / 2^(2^N).
    """
    if n_sites < 1:
        raise BellkitError("site count must be at least 1")
    length = 1 << n_sites
    if not 0 <= k < length:
        raise BellkitError(f"position {k} out of range")
    return Fraction(math.comb(length, length // 2), 1 << length)


def zero_probability_asymptotic(n_sites: int) -> float:
    """Large-N estimate 1/sqrt(2^(N-1) pi) of the zero probability."""
    return 1.0 / math.sqrt((1 << (n_sites - 1)) * math.pi)


def binomial_identity_sides(n_sites: int) -> tuple[int, int]:
    """Both sides of the even-overlap counting identity, exactly.

    Left: sum_k C(2^(N-1), 2k) C(2k, k) 2^(2^(N-1) - 2k) with k running
    while 2k <= 2^(N-1). Right: C(2^N, 2^(N-1)).
    """
    if n_sites < 1:
        raise BellkitError("site count must be at least 1")
    half = 1 << (n_sites - 1)
    lhs = sum(
        math.comb(half, 2 * k) * math.comb(2 * k, k) * (1 << (half - 2 * k))
        for k in range(half // 2 + 1)
    )
    return lhs, math.comb(1 << n_sites, half)


def verify_binomial_identity(n_sites: int) -> bool:
    """Exact big-integer check that the two identity sides agree."""
    lhs, rhs = binomial_identity_sides(n_sites)
    return lhs == rhs


def max_b0_family(n_sites: int, k: int) -> list[BellPolynomial]:
    """All standard-form members whose E(k,k,...,k) coefficient is maximal.

    For k = 0 these are the members with constant coefficient
    2^(N-1) - 1 (the value 2^(N-1) itself only occurs in the trivial
    member, which reduces to coefficient 1). They correspond to a parity
    number with a single set bit and a sign number that is either zero
    or a copy of that bit (bit 0 of the sign number must stay zero), so
    there are exactly 2^N - 1 of them, all full-term with odd
    coefficients. For k = 1 the observable enumeration is reversed,
    which reverses every coefficient vector.
    """
    if n_sites < 3:
        raise BellkitError("the construction applies from 3 sites upward")
    if k not in (0, 1):
        raise BellkitError("the repeated observable digit must be 0 or 1")
    half = 1 << (n_sites - 1)
    members: list[BellPolynomial] = []
    for bit in range(half):
        v = 1 << bit
        for u in ((0,) if bit == 0 else (0, 1 << bit)):
            poly = bell_poly(UVIndex(n_sites, u, v))
            coeffs = poly.coeffs
            if coeffs[0] != half - 1:
                raise BellkitError("construction lost the maximal coefficient")
            if any(c % 2 == 0 for c in coeffs):
                raise BellkitError("construction produced an even coefficient")
            members.append(poly)
    if len(members) != (1 << n_sites) - 1:
        raise BellkitError("unexpected family size")
    if k == 1:
        members = [
            from_coefficient_vector(reverse_observables(to_coefficient_vector(p)))
            for p in members
        ]
    return members
