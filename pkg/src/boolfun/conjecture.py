"""The linear-coefficient bound and its three equivalent derivative forms.

For f of total degree d, the claim under test is that the sum of the n
singleton coefficients of f is at most M(d), the same sum for Maj_d.  The
three derivative inequalities checked alongside it compare f against Maj_d
through derivative value probabilities and total influence; each of them
holds exactly when the original inequality does, for every f and every d.

When d differs from n the comparison embeds both functions in
D = max(n, d) coordinates.  Irrelevant coordinates have identically zero
derivatives, so they add nothing to either side, but truncating the sums at
n instead would break the equivalence (a dictator on one coordinate against
d = 2 already separates the truncated forms).
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    MAX_ARITY,
    BooleanFunction,
    InputError,
    InvariantError,
    degree,
    fwht,
    linear_sum,
)
from .derivatives import derivative_value_counts, total_influence
from .dyadic import ZERO, DyadicRational
from .majority import maj_bound, majority_profile


@dataclass(frozen=True)
class ConjectureReport:
    """Outcome of the bound check for one function."""

    n: int
    degree: int
    linear_sum: DyadicRational
    bound: DyadicRational
    gap: DyadicRational
    satisfied: bool


@dataclass(frozen=True)
class EquivalencePredicates:
    """Truth values and exact sides of the four inequalities at a chosen d."""

    n: int
    d: int
    original: bool
    ineq_a: bool
    ineq_b: bool
    ineq_c: bool
    sides: dict[str, tuple[DyadicRational, DyadicRational]]

    @property
    def agreement(self) -> bool:
        return self.original == self.ineq_a == self.ineq_b == self.ineq_c


def check_conjecture(f: BooleanFunction) -> ConjectureReport:
    """Compare the singleton-coefficient sum of f against M(deg f)."""
    spectrum = fwht(f)
    ls = linear_sum(spectrum)
    d = degree(spectrum)
    bound = maj_bound(d)
    return ConjectureReport(
        n=f.n,
        degree=d,
        linear_sum=ls,
        bound=bound,
        gap=bound - ls,
        satisfied=ls <= bound,
    )


def equivalence_predicates(f: BooleanFunction, d: int) -> EquivalencePredicates:
    """Evaluate all four inequalities for f against Maj_d, exactly.

    d is free: it does not have to equal deg(f).  The sums run over the
    D = max(n, d) embedding coordinates; only 1..n contribute for f and only
    1..d for Maj_d.
    """
    if not isinstance(d, int) or not 1 <= d <= MAX_ARITY:
        raise InputError(f"comparison arity must be in 1..{MAX_ARITY}, got {d!r}")
    spectrum = fwht(f)
    ls = linear_sum(spectrum)
    inf_f = total_influence(spectrum)
    sum_plus = ZERO
    sum_minus = ZERO
    k = f.n - 1
    for i in range(1, f.n + 1):
        _, plus, minus = derivative_value_counts(f, i)
        sum_plus = sum_plus + DyadicRational(plus, k)
        sum_minus = sum_minus + DyadicRational(minus, k)
    maj = majority_profile(d)
    maj_plus_sum = d * maj.p_plus_per_coordinate
    sides = {
        "original": (ls, maj.bound_M),
        "ineq_a": (inf_f - maj.total_influence, 2 * sum_minus),
        "ineq_b": (sum_plus - maj_plus_sum, sum_minus),
        "ineq_c": (2 * sum_plus, inf_f + maj.total_influence),
    }
    truth = {name: lhs <= rhs for name, (lhs, rhs) in sides.items()}
    return EquivalencePredicates(
        n=f.n,
        d=d,
        original=truth["original"],
        ineq_a=truth["ineq_a"],
        ineq_b=truth["ineq_b"],
        ineq_c=truth["ineq_c"],
        sides=sides,
    )


def assert_equivalence(f: BooleanFunction, d: int) -> EquivalencePredicates:
    """equivalence_predicates, raising InvariantError unless all four agree."""
    preds = equivalence_predicates(f, d)
    if not preds.agreement:
        raise InvariantError(
            f"equivalence broken at n={f.n} d={d} table={f.table:#x}: "
            f"original={preds.original} a={preds.ineq_a} "
            f"b={preds.ineq_b} c={preds.ineq_c}"
        )
    return preds
