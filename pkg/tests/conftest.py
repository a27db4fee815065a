"""Shared test helpers: small independent oracles.

Everything here is written the slow, obvious way on purpose. The
helpers avoid the package's transform/recursion code paths so that
tests comparing against them are genuine cross-checks, not tautologies.
"""
from __future__ import annotations

import itertools
from pathlib import Path

import numpy as np
from hypothesis import settings

settings.register_profile("suite", deadline=None)
settings.load_profile("suite")

GOLDEN = Path(__file__).parent / "golden"


def read_golden(name: str) -> str:
    return (GOLDEN / name).read_text(encoding="utf-8")


def popcount_parity(x: int) -> int:
    count = 0
    while x:
        count += x & 1
        x >>= 1
    return count & 1


def formula_matrix(n_sites: int) -> np.ndarray:
    """Dense sign matrix straight from the parity formula (no recursion)."""
    order = 1 << n_sites
    return np.array(
        [[-1 if popcount_parity(j & k) else 1 for k in range(order)]
         for j in range(order)],
        dtype=np.int64,
    )


def signs_of_code(code: int, n_sites: int) -> tuple[int, ...]:
    return tuple(1 - 2 * ((code >> j) & 1) for j in range(1 << n_sites))


def coefficients_by_expansion(code: int, n_sites: int) -> list[int]:
    """Transform via the defining sum over +-1 tuples, one term at a time.

    Index j of the sign vector encodes the tuple (h_1, ..., h_N) through
    h_i = 1 - 2 j_i with j_1 as the most significant digit. Coefficient
    k is sum over tuples of h_1^{k_1} ... h_N^{k_N} c(h).
    """
    out = []
    for k in range(1 << n_sites):
        k_digits = [(k >> (n_sites - 1 - i)) & 1 for i in range(n_sites)]
        total = 0
        for h in itertools.product((1, -1), repeat=n_sites):
            j = 0
            for h_i in h:
                j = (j << 1) | ((1 - h_i) // 2)
            c_j = 1 - 2 * ((code >> j) & 1)
            term = c_j
            for h_i, k_i in zip(h, k_digits):
                term *= h_i ** k_i
            total += term
        out.append(total)
    return out


def poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def poly_from_factors(exponents: list[int], signs: list[int]) -> list[int]:
    """Expand prod_i (1 + signs[i] * z^exponents[i])."""
    poly = [1]
    for exp, sign in zip(exponents, signs):
        factor = [0] * (exp + 1)
        factor[0] = 1
        factor[exp] = sign
        poly = poly_mul(poly, factor)
    return poly
