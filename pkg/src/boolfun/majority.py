"""The majority family and its linear-coefficient bound.

Maj_d is the sign of x_1 + ... + x_d with ties (even d, zero sum) sent to -1.
Its d linear coefficients are all equal by symmetry; M(d) denotes their sum,
with M(0) = 0 by convention.  M(d) also equals the expected absolute value
of the coordinate sum of d uniform signs, which gives an independent
binomial-sum route to the same number.

Profiles for each d are computed once and cached, since scans compare every
examined function against the same majority data.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass

import numpy as np

from .core import (
    MAX_ARITY,
    BooleanFunction,
    InputError,
    InvariantError,
    fourier_coefficient,
    fwht,
    linear_sum,
)
from .derivatives import derivative_value_counts, total_influence
from .dyadic import ZERO, DyadicRational


def majority(d: int) -> BooleanFunction:
    """Maj_d as a BooleanFunction; ties on even d evaluate to -1."""
    if not isinstance(d, int) or not 1 <= d <= MAX_ARITY:
        raise InputError(f"majority arity must be in 1..{MAX_ARITY}, got {d!r}")
    idx = np.arange(1 << d, dtype=np.uint32)
    # index bit 1 means x = -1, so the sign sum is d - 2*popcount
    ties_down = (2 * np.bitwise_count(idx).astype(np.int64) >= d).astype(np.uint8)
    table = int.from_bytes(np.packbits(ties_down, bitorder="little").tobytes(), "little")
    return BooleanFunction(d, table)


@dataclass(frozen=True)
class MajorityProfile:
    """Exact summary of Maj_d used by the conjecture and equivalence checks."""

    d: int
    linear_coefficient: DyadicRational
    bound_M: DyadicRational
    total_influence: DyadicRational
    p_plus_per_coordinate: DyadicRational


_lock = threading.Lock()
_profiles: dict[int, MajorityProfile] = {}


def majority_profile(d: int) -> MajorityProfile:
    if not isinstance(d, int) or not 1 <= d <= MAX_ARITY:
        raise InputError(f"majority arity must be in 1..{MAX_ARITY}, got {d!r}")
    with _lock:
        cached = _profiles.get(d)
        if cached is not None:
            return cached
        maj = majority(d)
        spectrum = fwht(maj)
        coef = fourier_coefficient(spectrum, 1)
        for i in range(2, d + 1):
            if fourier_coefficient(spectrum, 1 << (i - 1)) != coef:
                raise InvariantError(f"Maj_{d} linear coefficients differ across coordinates")
        bound = linear_sum(spectrum)
        if bound != d * coef:
            raise InvariantError(f"Maj_{d} linear sum disagrees with d * fhat(1)")
        inf = total_influence(spectrum)
        zero0, plus0, minus0 = derivative_value_counts(maj, 1)
        for i in range(2, d + 1):
            if derivative_value_counts(maj, i) != (zero0, plus0, minus0):
                raise InvariantError(f"Maj_{d} derivative counts differ across coordinates")
        if minus0 != 0:
            raise InvariantError(f"Maj_{d} is monotone but has a -1 derivative value")
        if inf != bound:
            raise InvariantError(f"Maj_{d} total influence must equal M({d})")
        profile = MajorityProfile(
            d=d,
            linear_coefficient=coef,
            bound_M=bound,
            total_influence=inf,
            p_plus_per_coordinate=DyadicRational(plus0, d - 1),
        )
        _profiles[d] = profile
        return profile


def maj_linear_coefficient(d: int) -> DyadicRational:
    """The common value of the d singleton coefficients of Maj_d."""
    return majority_profile(d).linear_coefficient


def maj_bound(d: int) -> DyadicRational:
    """M(d): the sum of the linear coefficients of Maj_d, with M(0) = 0."""
    if d == 0:
        return ZERO
    return majority_profile(d).bound_M


def expected_abs_sum(n: int) -> DyadicRational:
    """E|x_1 + ... + x_n| for uniform signs, as an exact binomial sum."""
    if not isinstance(n, int) or not 1 <= n <= MAX_ARITY:
        raise InputError(f"arity must be in 1..{MAX_ARITY}, got {n!r}")
    total = sum(math.comb(n, k) * abs(n - 2 * k) for k in range(n + 1))
    return DyadicRational(total, n)
