"""The single-variable polynomial view of Bell inequalities.

A coefficient vector (b_0, ..., b_{2^N-1}) is read as the polynomial
B(z) = sum_k b_k z^k. The whole family for N sites decomposes into
2^(N-1) summand polynomials

    s_k(z) = (1 +- z^(2^(N-1))) (1 +- z^(2^(N-2))) ... (1 +- z^2),

where the signs are the bits of k (low factor exponent 2 driven by bit
0). Each s_k is even with +-1 coefficients and degree 2^N - 2. Every
member of the family is then

    B(z) = sum_k (-1)^(u_k) z^(v_k) s_k(z)

for a pair (u, v) of 2^(N-1)-bit integers: the "sign number" u chooses
each summand's sign, the "parity number" v whether it lands on even or
odd powers. Bit k of u and v (least significant = k = 0) drives summand
k. Useful consequences, all exact:

    B(1)  = (-1)^(u_0) 2^(N-1)
    B(-1) = (-1)^(u_0 + v_0) 2^(N-1)
    B(0)  = sum_k (-1)^(u_k) (1 - v_k)
    -B    has index (u with all bits flipped, v)
    B(-z) has index (u XOR v, v)

Everything here uses exact integer (or dyadic rational) arithmetic.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import BellkitError, CapExceededError
from .inequality import CoefficientVector

POLY_MAX_SITES = 14  # summand matrix for n sites is 2^(n-1) x 2^(n-1)


@dataclass(frozen=True)
class BellPolynomial:
    """Integer polynomial of degree < 2^n_sites, stored densely."""

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

    @classmethod
    def from_ints(cls, values, n_sites: int | None = None) -> "BellPolynomial":
        """Build from ascending coefficients, zero-padding to length 2^n."""
        coeffs = [int(v) for v in values]
        if n_sites is None:
            n_sites = max(1, (len(coeffs) - 1).bit_length())
        length = 1 << n_sites
        if len(coeffs) > length:
            raise BellkitError(f"{len(coeffs)} coefficients exceed degree < {length}")
        coeffs += [0] * (length - len(coeffs))
        return cls(n_sites, tuple(coeffs))

    def __str__(self) -> str:
        return render(self.coeffs)


def render(coeffs) -> str:
    """Ascending-power text form: explicit signs, bare z for power 1."""
    parts: list[str] = []
    for power, c in enumerate(coeffs):
        if c == 0:
            continue
        magnitude = abs(c)
        if power == 0:
            body = str(magnitude)
        else:
            head = "" if magnitude == 1 else str(magnitude)
            body = f"{head}z" if power == 1 else f"{head}z^{power}"
        if not parts:
            parts.append(body if c > 0 else "-" + body)
        else:
            parts.append(("+" if c > 0 else "-") + body)
    return "".join(parts) if parts else "0"


@dataclass(frozen=True)
class UVIndex:
    """Sign number u and parity number v, each with 2^(n_sites-1) bits."""

    n_sites: int
    u: int
    v: int

    def __post_init__(self) -> None:
        if self.n_sites < 1:
            raise BellkitError("site count must be at least 1")
        limit = 1 << (1 << (self.n_sites - 1))
        if not (0 <= self.u < limit and 0 <= self.v < limit):
            raise BellkitError(
                f"u and v must lie in [0, {limit}) for {self.n_sites} sites"
            )

    @property
    def summands(self) -> int:
        return 1 << (self.n_sites - 1)


@lru_cache(maxsize=None)
def _summand_even_coeffs(n_sites: int, k: int) -> tuple[int, ...]:
    """Even-position coefficients of summand k, by halving the site count.

    Dropping the leading factor leaves the summand with index k modulo
    2^(n-2) for one site fewer; the leading sign is bit n-2 of k.
    """
    if n_sites == 1:
        return (1,)
    half = 1 << (n_sites - 2)
    if k < half:
        prev = _summand_even_coeffs(n_sites - 1, k)
        return prev + prev
    prev = _summand_even_coeffs(n_sites - 1, k - half)
    return prev + tuple(-x for x in prev)


@lru_cache(maxsize=None)
def _summand_matrix(n_sites: int) -> np.ndarray:
    """Column k holds the even-position coefficients of summand k."""
    half = 1 << (n_sites - 1)
    mat = np.empty((half, half), dtype=np.int8)
    for k in range(half):
        mat[:, k] = _summand_even_coeffs(n_sites, k)
    mat.flags.writeable = False
    return mat


def summand_poly(n_sites: int, k: int) -> BellPolynomial:
    """The k-th summand polynomial: even, +-1 coefficients, degree 2^N - 2."""
    if n_sites < 1:
        raise BellkitError("site count must be at least 1")
    if not 0 <= k < (1 << (n_sites - 1)):
        raise BellkitError(
            f"summand index {k} out of range for {n_sites} sites"
        )
    even = _summand_even_coeffs(n_sites, k)
    coeffs = [0] * (1 << n_sites)
    for i, value in enumerate(even):
        coeffs[2 * i] = value
    return BellPolynomial(n_sites, tuple(coeffs))


def column_poly(n_sites: int, k: int) -> BellPolynomial:
    """Column k of the order-2^N sign matrix read as a polynomial.

    All 2^N rows contribute one power each; with that full range the
    substitution z -> z^2 turns column k at n-1 sites into summand k at
    n sites.
    """
    length = 1 << n_sites
    if not 0 <= k < length:
        raise BellkitError(f"column index {k} out of range for {n_sites} sites")
    coeffs = tuple(-1 if ((j & k).bit_count() & 1) else 1 for j in range(length))
    return BellPolynomial(n_sites, coeffs)


def bell_poly(index: UVIndex) -> BellPolynomial:
    """Family member for (u, v): signed summands, shifted onto odd powers."""
    n = index.n_sites
    if n > POLY_MAX_SITES:
        raise CapExceededError(
            f"family construction capped at {POLY_MAX_SITES} sites, got {n}"
        )
    half = index.summands
    u_bits = np.fromiter(
        ((index.u >> k) & 1 for k in range(half)), dtype=np.int64, count=half
    )
    v_bits = np.fromiter(
        ((index.v >> k) & 1 for k in range(half)), dtype=np.int64, count=half
    )
    signs = 1 - 2 * u_bits
    mat = _summand_matrix(n)
    even = mat @ (signs * (1 - v_bits))
    odd = mat @ (signs * v_bits)
    coeffs = np.empty(1 << n, dtype=np.int64)
    coeffs[0::2] = even
    coeffs[1::2] = odd
    return BellPolynomial(n, tuple(int(c) for c in coeffs))


def evaluate(p: BellPolynomial, z):
    """Horner evaluation; exact for int or Fraction arguments."""
    result = 0
    for c in reversed(p.coeffs):
        result = result * z + c
    return result


def negate_index(index: UVIndex) -> UVIndex:
    """Flip every bit of the sign number: the polynomial negates."""
    mask = (1 << index.summands) - 1
    return UVIndex(index.n_sites, index.u ^ mask, index.v)


def reflect_index(index: UVIndex) -> UVIndex:
    """Replace u by u XOR v: the polynomial's argument flips sign."""
    return UVIndex(index.n_sites, index.u ^ index.v, index.v)


def constant_coeff(index: UVIndex) -> int:
    """Constant coefficient straight from the index pair.

    Counts, among the zero bits of v, how many u-bits are zero minus how
    many are one: <~u, ~v> - <u, ~v> with popcount scalar products over
    the 2^(N-1)-bit window.
    """
    mask = (1 << index.summands) - 1
    u_flip = ~index.u & mask
    v_flip = ~index.v & mask
    return (u_flip & v_flip).bit_count() - (index.u & v_flip).bit_count()


def bowtie(a: BellPolynomial, b: BellPolynomial) -> BellPolynomial:
    """(1 + z^(2^N)) A(z) + (1 - z^(2^N)) B(z), one site more."""
    if a.n_sites != b.n_sites:
        raise BellkitError("operands must have the same site count")
    if abs(evaluate(a, 1)) != abs(evaluate(b, 1)):
        raise BellkitError(
            "operands must have equal |value at 1|; pre-scale one of them"
        )
    m = 1 << a.n_sites
    out = [0] * (2 * m)
    for i, c in enumerate(a.coeffs):
        out[i] += c
        out[i + m] += c
    for i, c in enumerate(b.coeffs):
        out[i] += c
        out[i + m] -= c
    return BellPolynomial(a.n_sites + 1, tuple(out))


@dataclass(frozen=True)
class NormalizedBellPolynomial:
    """Family member scaled to |value| exactly 1 at both z = 1 and z = -1."""

    n_sites: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.coeffs) != 1 << self.n_sites:
            raise BellkitError(
                f"expected {1 << self.n_sites} coefficients, got {len(self.coeffs)}"
            )
        at_one = sum(self.coeffs)
        at_minus_one = sum(c if i % 2 == 0 else -c for i, c in enumerate(self.coeffs))
        if abs(at_one) != 1 or abs(at_minus_one) != 1:
            raise BellkitError(
                "normalized polynomials must have |value| 1 at z = 1 and z = -1"
            )


def normalize(p: BellPolynomial) -> NormalizedBellPolynomial:
    """Scale by 2^(1-N) in exact dyadic arithmetic."""
    denominator = 1 << (p.n_sites - 1)
    return NormalizedBellPolynomial(
        p.n_sites, tuple(Fraction(c, denominator) for c in p.coeffs)
    )


def to_coefficient_vector(p: BellPolynomial) -> CoefficientVector:
    """Shared-coefficient bridge; rejects zero-sum polynomials."""
    return CoefficientVector(p.n_sites, p.coeffs)


def from_coefficient_vector(v: CoefficientVector) -> BellPolynomial:
    return BellPolynomial(v.n_sites, v.coeffs)
