"""Correlation Bell inequalities as exact integer coefficient vectors.

A coefficient vector (b_0, ..., b_{2^N-1}) encodes the constraint

    |sum_k b_k E(k)| <= |sum_k b_k|

on the full-correlation expectation values E(k) of N sites with two
+-1-valued observables each. The index k is read as N binary digits,
site 1 first (most significant); digit d_i selects the observable used
at site i. The complete family for N sites is generated by applying the
order-2^N Sylvester transform to every +-1 sign vector c; such raw
vectors have even entries and coefficient sum +-2^N.

Sign vectors are encoded as bitmasks: bit j set means c_j = -1. The
enumeration order is the numeric order of these codes.

Equivalence transforms implemented here (used for orbit computations):

* permuting sites permutes the index digits,
* relabeling the two observables at a site flips that site's digit,
* flipping the outcome signs of one observable at one site negates all
  coefficients whose digit there selects that observable,
* global negation.

These four families are the natural index-level liftings of relabeling
the experiment; the orbit helper closes a vector under any subset of
them (negation always included).
"""
from __future__ import annotations

import math
from collections.abc import Iterable, Iterator, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import kernels
from .errors import BellkitError, CapExceededError
from .limits import MATERIALIZE_MAX_SITES, STREAM_MAX_SITES, site_cap

MINUS = "−"  # sign used by the traditional rendering
LEQ = "≤"


@dataclass(frozen=True)
class CoefficientVector:
    """One Bell inequality: 2^n_sites exact integer coefficients.

    Vectors with coefficient sum zero are rejected outright; no member
    of the generated family has one, so accepting them would only mask
    caller bugs.
    """

    n_sites: int
    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n_sites < 1:
            raise BellkitError("site count must be at least 1")
        if len(self.coeffs) != 1 << self.n_sites:
            raise BellkitError(
                f"expected {1 << self.n_sites} coefficients, got {len(self.coeffs)}"
            )
        if not all(isinstance(c, int) for c in self.coeffs):
            raise BellkitError("coefficients must be integers")
        if sum(self.coeffs) == 0:
            raise BellkitError("coefficient sum is zero: not a Bell inequality")

    @classmethod
    def from_ints(cls, values: Iterable[int]) -> "CoefficientVector":
        """Build from a plain sequence, inferring the site count."""
        coeffs = tuple(int(v) for v in values)
        n = (len(coeffs) - 1).bit_length()
        if len(coeffs) < 2 or len(coeffs) != 1 << n:
            raise BellkitError(
                f"coefficient count must be a power of two >= 2, got {len(coeffs)}"
            )
        return cls(n, coeffs)


class StandardForm(CoefficientVector):
    """Coefficient vector with coprime entries and positive sum."""

    def __post_init__(self) -> None:
        super().__post_init__()
        if math.gcd(*(abs(c) for c in self.coeffs)) != 1:
            raise BellkitError("standard form requires coprime coefficients")
        if sum(self.coeffs) < 0:
            raise BellkitError("standard form requires a positive coefficient sum")


def _as_vector(v: CoefficientVector | Sequence[int]) -> CoefficientVector:
    if isinstance(v, CoefficientVector):
        return v
    return CoefficientVector.from_ints(v)


def setting_digits(k: int, n_sites: int) -> tuple[int, ...]:
    """Per-site observable digits of index k, site 1 first."""
    return tuple((k >> (n_sites - 1 - i)) & 1 for i in range(n_sites))


def sign_vector_from_code(code: int, n_sites: int) -> tuple[int, ...]:
    """Decode a bitmask into the sign vector c (bit j set -> c_j = -1)."""
    length = 1 << n_sites
    if not 0 <= code < (1 << length):
        raise BellkitError(f"code {code} out of range for {n_sites} sites")
    return tuple(1 - 2 * ((code >> j) & 1) for j in range(length))


def code_from_sign_vector(c: Sequence[int]) -> int:
    code = 0
    for j, value in enumerate(c):
        if value == -1:
            code |= 1 << j
        elif value != 1:
            raise BellkitError("sign vector entries must be +1 or -1")
    return code


def from_sign_vector(c: Sequence[int]) -> CoefficientVector:
    """Coefficients of the inequality selected by the sign vector c.

    Applies the order-matching Sylvester transform; the result has even
    entries, |entry| <= 2^N and coefficient sum +-2^N.
    """
    vec = np.asarray(c, dtype=np.int64)
    n = (vec.shape[0] - 1).bit_length()
    if vec.ndim != 1 or vec.shape[0] < 2 or vec.shape[0] != 1 << n:
        raise BellkitError("sign vector length must be a power of two >= 2")
    if not np.all(np.abs(vec) == 1):
        raise BellkitError("sign vector entries must be +1 or -1")
    transformed = kernels.wht_vector(vec)
    return CoefficientVector(n, tuple(int(x) for x in transformed))


def bound(v: CoefficientVector | Sequence[int]) -> int:
    """Right-hand side |sum_k b_k| of the inequality (scale-covariant)."""
    v = _as_vector(v)
    total = sum(v.coeffs)
    if total == 0:
        raise BellkitError("zero coefficient sum: not a Bell inequality")
    return abs(total)


def standard_form(v: CoefficientVector | Sequence[int]) -> StandardForm:
    """Divide by the gcd and orient the sum positive. Idempotent."""
    v = _as_vector(v)
    g = math.gcd(*(abs(c) for c in v.coeffs))
    coeffs = tuple(c // g for c in v.coeffs)
    if sum(coeffs) < 0:
        coeffs = tuple(-c for c in coeffs)
    return StandardForm(v.n_sites, coeffs)


def bowtie(a: CoefficientVector | Sequence[int],
           b: CoefficientVector | Sequence[int]) -> CoefficientVector:
    """Lift two N-site inequalities of equal bound to one (N+1)-site one.

    First half: pairwise sums; second half: pairwise differences. The
    callers must pre-scale the arguments to equal |coefficient sum|.
    """
    a, b = _as_vector(a), _as_vector(b)
    if a.n_sites != b.n_sites:
        raise BellkitError("operands must have the same site count")
    if bound(a) != bound(b):
        raise BellkitError(
            f"coefficient sums differ in magnitude ({bound(a)} vs {bound(b)}); "
            "pre-scale one operand"
        )
    sums = tuple(x + y for x, y in zip(a.coeffs, b.coeffs))
    diffs = tuple(x - y for x, y in zip(a.coeffs, b.coeffs))
    return CoefficientVector(a.n_sites + 1, sums + diffs)


def enumerate_inequalities(
    n_sites: int,
    *,
    stream: bool = False,
    batch_size: int = 1 << 13,
    jobs: int = 1,
) -> Iterator[tuple[int, CoefficientVector]]:
    """Yield (code, vector) for every sign vector, in code order.

    All 2^(2^N) inequalities are produced. Materializing the stream is
    reasonable up to N = 4 (65 536 items); N = 5 yields 2^32 items and
    must be requested explicitly with ``stream=True``. Transforms are
    computed in code-range batches; with jobs > 1 upcoming batches are
    prepared on worker threads while the current one is consumed.
    """
    cap = site_cap(STREAM_MAX_SITES)
    if n_sites < 1:
        raise BellkitError("site count must be at least 1")
    if n_sites > cap:
        raise CapExceededError(f"enumeration capped at {cap} sites, got {n_sites}")
    if n_sites > MATERIALIZE_MAX_SITES and not stream:
        raise BellkitError(
            f"{n_sites} sites means 2^{1 << n_sites} items; pass stream=True"
        )
    if (1 << n_sites) > 62:
        raise CapExceededError("sign-vector codes beyond 62 bits are unsupported")

    total = 1 << (1 << n_sites)
    starts = range(0, total, batch_size)

    def compute(start: int) -> np.ndarray:
        stop = min(start + batch_size, total)
        codes = np.arange(start, stop, dtype=np.int64)
        return kernels.wht_rows(kernels.signs_from_codes(codes, 1 << n_sites))

    def emit(start: int, block: np.ndarray) -> Iterator[tuple[int, CoefficientVector]]:
        for offset, row in enumerate(block):
            yield start + offset, CoefficientVector(
                n_sites, tuple(int(x) for x in row)
            )

    if jobs <= 1:
        for start in starts:
            yield from emit(start, compute(start))
        return

    with ThreadPoolExecutor(max_workers=jobs) as pool:
        pending = []
        it = iter(starts)
        for start in it:
            pending.append((start, pool.submit(compute, start)))
            if len(pending) >= jobs + 1:
                s, fut = pending.pop(0)
                yield from emit(s, fut.result())
        for s, fut in pending:
            yield from emit(s, fut.result())


def to_traditional(v: CoefficientVector | Sequence[int]) -> str:
    """Render with 1-based observable digits, e.g. |E(1,1) - E(1,2)| <= 2."""
    v = _as_vector(v)
    parts: list[str] = []
    for k, c in enumerate(v.coeffs):
        if c == 0:
            continue
        digits = ",".join(str(d + 1) for d in setting_digits(k, v.n_sites))
        magnitude = "" if abs(c) == 1 else str(abs(c))
        term = f"{magnitude}E({digits})"
        if not parts:
            parts.append(term if c > 0 else MINUS + term)
        else:
            parts.append(f" {'+' if c > 0 else MINUS} {term}")
    return f"|{''.join(parts)}| {LEQ} {bound(v)}"


def reverse_observables(v: CoefficientVector | Sequence[int]) -> CoefficientVector:
    """Swap the observable labels 1 and 2 everywhere: reverse the vector."""
    v = _as_vector(v)
    return CoefficientVector(v.n_sites, tuple(reversed(v.coeffs)))


# -- equivalence transforms --------------------------------------------------

def negate(v: CoefficientVector) -> CoefficientVector:
    return CoefficientVector(v.n_sites, tuple(-c for c in v.coeffs))


def site_permutation(v: CoefficientVector, perm: Sequence[int]) -> CoefficientVector:
    """Permute sites: new digit i is the old digit perm[i] (0-based)."""
    n = v.n_sites
    if sorted(perm) != list(range(n)):
        raise BellkitError(f"not a permutation of {n} sites: {perm!r}")
    out = [0] * len(v.coeffs)
    for k, c in enumerate(v.coeffs):
        digits = setting_digits(k, n)
        k2 = 0
        for i in range(n):
            k2 = (k2 << 1) | digits[perm[i]]
        out[k2] = c
    return CoefficientVector(n, tuple(out))


def observable_flip(v: CoefficientVector, site: int) -> CoefficientVector:
    """Swap the two observables at the given site (0-based)."""
    n = v.n_sites
    if not 0 <= site < n:
        raise BellkitError(f"site {site} out of range")
    bit = 1 << (n - 1 - site)
    out = [0] * len(v.coeffs)
    for k, c in enumerate(v.coeffs):
        out[k ^ bit] = c
    return CoefficientVector(n, tuple(out))


def value_flip(v: CoefficientVector, site: int, observable: int) -> CoefficientVector:
    """Negate the outcome signs of one observable at one site."""
    n = v.n_sites
    if not 0 <= site < n:
        raise BellkitError(f"site {site} out of range")
    if observable not in (0, 1):
        raise BellkitError("observable must be 0 or 1")
    shift = n - 1 - site
    coeffs = tuple(
        -c if ((k >> shift) & 1) == observable else c
        for k, c in enumerate(v.coeffs)
    )
    return CoefficientVector(n, coeffs)


Transform = Callable[[CoefficientVector], CoefficientVector]


def default_generators(n_sites: int) -> list[Transform]:
    """Adjacent site swaps, observable relabelings, value flips, negation."""
    gens: list[Transform] = [negate]
    for i in range(n_sites):
        gens.append(lambda v, i=i: observable_flip(v, i))
        for obs in (0, 1):
            gens.append(lambda v, i=i, obs=obs: value_flip(v, i, obs))
    for i in range(n_sites - 1):
        perm = list(range(n_sites))
        perm[i], perm[i + 1] = perm[i + 1], perm[i]
        gens.append(lambda v, perm=tuple(perm): site_permutation(v, perm))
    return gens


def symmetry_orbit(
    v: CoefficientVector | Sequence[int],
    generators: Iterable[Transform] | None = None,
) -> frozenset[CoefficientVector]:
    """Closure of v under the generators (global negation always included)."""
    v = _as_vector(v)
    gens = list(generators) if generators is not None else default_generators(v.n_sites)
    if negate not in gens:
        gens.append(negate)
    seen = {v}
    frontier = [v]
    while frontier:
        current = frontier.pop()
        for g in gens:
            image = g(current)
            if image not in seen:
                seen.add(image)
                frontier.append(image)
    return frozenset(seen)


def canonical(
    v: CoefficientVector | Sequence[int],
    generators: Iterable[Transform] | None = None,
) -> StandardForm:
    """Lexicographically smallest standard form over the symmetry orbit."""
    orbit = symmetry_orbit(v, generators)
    return min((standard_form(m) for m in orbit), key=lambda s: s.coeffs)
