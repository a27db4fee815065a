"""Brute-force verification against local deterministic models.

A deterministic strategy fixes every observable outcome in advance: one
value in {-1, +1} per (site, observable) pair, 2N values in total. These
strategies are the vertices of the local correlation polytope, and since
the maximum of a linear functional over a convex set is attained at a
vertex, randomized local models never exceed deterministic ones. The
oracle therefore maximizes |sum_k b_k prod_i A_i(k_i)| over all 4^N
strategies (halved by fixing the first site's observable-0 value to +1
and taking absolute values).

This search is deliberately independent of the butterfly-transform code
that generates inequalities: it shares no code path with it, so the two
sides genuinely cross-check each other.

The singlet fixtures model two spin measurements at angles theta_i and
eta_j on a rotationally invariant entangled pair, whose product
expectation is -cos(theta_i - eta_j). Single-site expectations vanish by
state symmetry (not computed here). Tilting one apparatus by any angle
phi leaves the mean over all nine setting pairs at zero because
cos(pi/3 + phi) + cos(pi + phi) + cos(5*pi/3 + phi) == 0.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import BellkitError, CapExceededError
from .inequality import CoefficientVector, _as_vector, setting_digits
from .limits import LHV_MAX_SITES

TILT_ANGLES = (math.pi / 3, math.pi, 5 * math.pi / 3)


@dataclass(frozen=True)
class DeterministicStrategy:
    """Fixed outcomes: values[i] = (A_i(0), A_i(1)) for site i (0-based)."""

    n_sites: int
    values: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if self.n_sites < 1:
            raise BellkitError("site count must be at least 1")
        if len(self.values) != self.n_sites:
            raise BellkitError(f"expected {self.n_sites} value pairs")
        for pair in self.values:
            if len(pair) != 2 or any(x not in (-1, 1) for x in pair):
                raise BellkitError("strategy values must be +1 or -1")

    def encode(self) -> int:
        """Pack into 2N bits: low-N mask for observable 0, high-N for 1.

        Within each mask, site i occupies bit n_sites-1-i (the same
        position its digit has in a setting index); a set bit means -1.
        """
        m0 = m1 = 0
        for i, (a0, a1) in enumerate(self.values):
            bit = 1 << (self.n_sites - 1 - i)
            if a0 == -1:
                m0 |= bit
            if a1 == -1:
                m1 |= bit
        return m0 | (m1 << self.n_sites)

    @classmethod
    def decode(cls, n_sites: int, code: int) -> "DeterministicStrategy":
        if not 0 <= code < (1 << (2 * n_sites)):
            raise BellkitError(f"strategy code {code} out of range")
        m0 = code & ((1 << n_sites) - 1)
        m1 = code >> n_sites
        values = []
        for i in range(n_sites):
            bit = 1 << (n_sites - 1 - i)
            values.append((-1 if m0 & bit else 1, -1 if m1 & bit else 1))
        return cls(n_sites, tuple(values))


def strategy_value(v: CoefficientVector | Sequence[int],
                   s: DeterministicStrategy) -> int:
    """sum_k b_k prod_i A_i(k_i) for one strategy, in plain integer math."""
    v = _as_vector(v)
    if v.n_sites != s.n_sites:
        raise BellkitError("vector and strategy site counts differ")
    total = 0
    for k, c in enumerate(v.coeffs):
        if c == 0:
            continue
        product = 1
        for i, digit in enumerate(setting_digits(k, v.n_sites)):
            product *= s.values[i][digit]
        total += c * product
    return total


def max_lhv(v: CoefficientVector | Sequence[int], *,
            max_sites: int = LHV_MAX_SITES, jobs: int = 1) -> int:
    """Largest |strategy value| over every deterministic strategy."""
    v = _as_vector(v)
    if v.n_sites > max_sites:
        raise CapExceededError(
            f"strategy search capped at {max_sites} sites, got {v.n_sites}"
        )
    coeffs = np.array(v.coeffs, dtype=np.int64)
    m0_stop = 1 << (v.n_sites - 1)
    if jobs <= 1 or m0_stop < 2 * jobs:
        return int(kernels.lhv_max_range(coeffs, v.n_sites, 0, m0_stop))
    step = -(-m0_stop // jobs)
    ranges = [(start, min(start + step, m0_stop))
              for start in range(0, m0_stop, step)]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        results = pool.map(
            lambda r: int(kernels.lhv_max_range(coeffs, v.n_sites, r[0], r[1])),
            ranges,
        )
        return max(results)


def is_tight(v: CoefficientVector | Sequence[int], claimed_bound: int, *,
             max_sites: int = LHV_MAX_SITES, jobs: int = 1) -> bool:
    """True when some deterministic strategy attains exactly the claim."""
    return max_lhv(v, max_sites=max_sites, jobs=jobs) == claimed_bound


# -- singlet fixtures ---------------------------------------------------------

@dataclass(frozen=True)
class SingletSetup:
    """Measurement angles (radians) for the two-site singlet fixture."""

    thetas: tuple[float, float, float] = (0.0, 2 * math.pi / 3, 4 * math.pi / 3)
    etas: tuple[float, float, float] = (math.pi, 5 * math.pi / 3, math.pi / 3)


def singlet_expectation(setup: SingletSetup, i: int, j: int) -> float:
    """Product expectation -cos(theta_i - eta_j); +1 on the diagonal."""
    if not (0 <= i <= 2 and 0 <= j <= 2):
        raise BellkitError("angle indices must lie in 0..2")
    return -math.cos(setup.thetas[i] - setup.etas[j])


def expectation_table(setup: SingletSetup | None = None,
                      phi: float = 0.0) -> np.ndarray:
    """3x3 table of product expectations, second apparatus tilted by phi."""
    setup = setup or SingletSetup()
    return np.array(
        [[-math.cos(setup.thetas[i] - setup.etas[j] - phi) for j in range(3)]
         for i in range(3)]
    )


def tilt_identity(phi: float) -> float:
    """cos(pi/3 + phi) + cos(pi + phi) + cos(5*pi/3 + phi); zero for all phi."""
    return sum(math.cos(angle + phi) for angle in TILT_ANGLES)
