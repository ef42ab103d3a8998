"""Density formulas and extremal constructions for quotient-free sets.

Closed-form and bracketed values of the best achievable asymptotic density,
the certified series bracket for the best upper density of a coprime pair,
exact maximal quotient-free subsets of an initial segment, the explicit
dense construction, and the strict-gap verdict between the two densities.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Optional, Sequence

import mpmath

from .arith import (
    CoprimeBasis,
    RationalSet,
    as_fraction,
    coprime_part_list,
    derive_basis,
    enumerate_smooth,
    exact_sum,
    phi,
    smooth_stream,
)
from .errors import BudgetError, DomainError
from .lattice import DEFAULT_SEARCH_CAP, gamma_bracket

DEFAULT_SERIES_BUDGET = 10**6
LN_PRECISION_DIGITS = 60


@dataclass(frozen=True)
class DensityBracket:
    """Exact rational enclosure of a density quantity.

    ``method`` records how it was produced; closed forms collapse to a
    single point (lower == upper).
    """

    lower: Fraction
    upper: Fraction
    method: str
    detail: dict

    def __post_init__(self):
        if self.lower > self.upper:
            raise DomainError("bracket lower bound exceeds upper bound")

    @property
    def width(self) -> Fraction:
        return self.upper - self.lower

    def contains(self, value: Fraction) -> bool:
        return self.lower <= value <= self.upper


def _check_coprime_integers(values: Sequence[int]) -> tuple[int, ...]:
    vals = tuple(values)
    if not vals:
        raise DomainError("the set must be nonempty")
    if any(not isinstance(v, int) or v <= 1 for v in vals):
        raise DomainError("elements must be integers greater than 1")
    if any(x >= y for x, y in zip(vals, vals[1:])):
        raise DomainError("elements must be strictly increasing")
    if any(gcd(a, b) != 1 for i, a in enumerate(vals) for b in vals[i + 1:]):
        raise DomainError("elements not pairwise coprime")
    return vals


def rho_closed_form(values: Sequence[int]) -> Fraction:
    """Best asymptotic density for pairwise-coprime integer quotients.

    Exactly (1 + product of (a-1)/(a+1)) / 2.
    """
    vals = _check_coprime_integers(values)
    product = Fraction(1)
    for a in vals:
        product *= Fraction(a - 1, a + 1)
    return (1 + product) / 2


def rho_general(
    a_set,
    depth: int,
    cap: int = DEFAULT_SEARCH_CAP,
) -> DensityBracket:
    """Bracket the best density of any quotient set by exact truncation.

    The coprime-part density of the derived prime basis times the bracket
    for the optimal difference-free weight.
    """
    if not isinstance(a_set, RationalSet):
        a_set = RationalSet.of(a_set)
    basis = derive_basis(a_set)
    factor = phi(basis)
    bracket = gamma_bracket(basis, depth, cap)
    lower, upper = factor * bracket.lower, factor * bracket.upper
    if a_set.is_coprime_integers():
        closed = rho_closed_form([f.numerator for f in a_set.elements])
        if not lower <= closed <= upper:
            raise AssertionError(
                f"bracket [{lower}, {upper}] misses the closed form {closed}"
            )
    return DensityBracket(
        lower,
        upper,
        "truncated-gamma",
        {
            "depth": depth,
            "basis": list(basis.basis),
            "witness_size": len(bracket.witness),
        },
    )


def sigma_series(
    p: int,
    q: int,
    tolerance,
    budget: int = DEFAULT_SERIES_BUDGET,
) -> DensityBracket:
    """Certified bracket for the majority-color series of a coprime pair.

    Partial sums use the exact majority color count per prefix; the lower
    tail keeps at least half of each later prefix, the upper tail allows all
    of it and closes the harmonic remainder of the smooth sequence in closed
    form.  Enumeration stops once the bracket width is within tolerance.
    """
    if not (1 < p < q):
        raise DomainError(f"need 1 < p < q, got p={p}, q={q}")
    if gcd(p, q) != 1:
        raise DomainError(f"elements not pairwise coprime: gcd({p},{q}) > 1")
    tolerance = as_fraction(tolerance)
    if tolerance <= 0:
        raise DomainError("tolerance must be positive")
    factor = Fraction((p - 1) * (q - 1), p * q)
    full_recip = Fraction(p * q, (p - 1) * (q - 1))

    gen = smooth_stream((p, q))
    values: list[int] = []
    partial = Fraction(0)
    white = black = 0
    prefix_recip = Fraction(0)
    prev_parity = 0
    bracket: Optional[DensityBracket] = None
    while len(values) < budget:
        value, exps = next(gen)
        values.append(value)
        prefix_recip += Fraction(1, value)
        if len(values) == 1:
            prev_parity = sum(exps) % 2
            continue
        terms = len(values) - 1
        if prev_parity == 0:
            white += 1
        else:
            black += 1
        prev_parity = sum(exps) % 2
        partial += max(white, black) * (
            Fraction(1, values[-2]) - Fraction(1, value)
        )
        # tails after the last summed prefix: at least ceil/2 of each later
        # prefix counts, at most all of it plus the harmonic remainder
        tail_lower = Fraction((terms + 2) // 2, value)
        tail_upper = Fraction(terms + 1, value) + (full_recip - prefix_recip)
        lower = factor * (partial + tail_lower)
        upper = factor * (partial + tail_upper)
        bracket = DensityBracket(
            lower,
            upper,
            "series-with-tail",
            {"terms": terms, "next_value": value},
        )
        if upper - lower <= tolerance:
            return bracket
    raise BudgetError(
        f"tolerance {tolerance} not reached within {budget} enumerated values",
        achieved=bracket,
    )


def max_subset_count(
    p: int,
    q: int,
    n: int,
    with_witness: bool = False,
):
    """Exact maximal size of a quotient-free subset of {1..n} for pair (p,q).

    Sums, over every n-free class representative, the majority color count
    of the smooth prefix that still fits under the bound; the witness picks
    that majority class, scaled back into the class (white on ties).
    """
    if not (1 < p < q):
        raise DomainError(f"need 1 < p < q, got p={p}, q={q}")
    if gcd(p, q) != 1:
        raise DomainError(f"elements not pairwise coprime: gcd({p},{q}) > 1")
    if n < 1:
        raise DomainError("the horizon must be at least 1")
    seq = enumerate_smooth((p, q), n)
    parities = [sum(e) % 2 for e in seq.exponents]
    white_prefix = [0]
    for parity in parities:
        white_prefix.append(white_prefix[-1] + (1 if parity == 0 else 0))

    total = 0
    witness: list[int] = []
    for rep in range(1, n + 1):
        if rep % p == 0 or rep % q == 0:
            continue
        t = bisect_right(seq.values, n // rep)  # m_t * rep <= n, integers only
        w = white_prefix[t]
        b = t - w
        total += max(w, b)
        if with_witness:
            keep = 0 if w >= b else 1
            witness.extend(
                seq.values[i] * rep for i in range(t) if parities[i] == keep
            )
    if with_witness:
        return total, tuple(sorted(witness))
    return total


@dataclass(frozen=True)
class DenseSetSample:
    """A horizon's worth of the explicit dense quotient-free construction."""

    x: int
    members: tuple[int, ...]
    counting_density: Fraction
    log_density: Optional[Fraction]


def _ln_fraction(x: int, digits: int = LN_PRECISION_DIGITS) -> Fraction:
    """ln(x) as an exact dyadic rational of ~digits precision."""
    with mpmath.workdps(digits):
        value = mpmath.ln(x)
    sign, man, exp, _ = value._mpf_
    result = Fraction(int(man), 1) * (Fraction(2) ** int(exp))
    return -result if sign else result


def construct_dense_set(
    a_set,
    x: int,
    witness_exponents: Optional[Iterable[Sequence[int]]] = None,
    depth: int = 6,
    cap: int = DEFAULT_SEARCH_CAP,
) -> DenseSetSample:
    """Members up to x of the dense construction: chosen smooth part times free part.

    For pairwise-coprime integer quotients the chosen smooth parts are the
    even-parity (white) ones over the set itself; otherwise a truncated
    optimal witness over the derived prime basis is used (or an explicit
    exponent set passed by the caller).
    """
    if not isinstance(a_set, RationalSet):
        a_set = RationalSet.of(a_set)
    if x < 1:
        raise DomainError("the horizon must be at least 1")

    if witness_exponents is not None:
        basis = derive_basis(a_set)
        chosen = {tuple(e) for e in witness_exponents}
        if any(len(e) != basis.size or any(c < 0 for c in e) for e in chosen):
            raise DomainError(
                f"witness exponent vectors must be nonnegative of length {basis.size}"
            )
    elif a_set.is_coprime_integers():
        basis = CoprimeBasis.from_coprime_integers(
            [f.numerator for f in a_set.elements]
        )
        chosen = None  # every even-parity exponent vector
    else:
        basis = derive_basis(a_set)
        chosen = set(gamma_bracket(basis, depth, cap).witness)

    seq = enumerate_smooth(basis, x)
    if chosen is None:
        smooth_parts = [v for v, e in seq.entries() if sum(e) % 2 == 0]
    else:
        smooth_parts = [v for v, e in seq.entries() if e in chosen]
    free_parts = coprime_part_list(basis, x)

    members: list[int] = []
    for m in smooth_parts:
        top = bisect_right(free_parts, x // m)
        members.extend(m * free_parts[i] for i in range(top))
    members.sort()

    counting = Fraction(len(members), x)
    log_density = None
    if x >= 2:
        recip = _grouped_reciprocal_sum(smooth_parts, free_parts, x)
        log_density = recip / _ln_fraction(x)
    return DenseSetSample(x, tuple(members), counting, log_density)


def _grouped_reciprocal_sum(
    smooth_parts: Sequence[int], free_parts: Sequence[int], x: int
) -> Fraction:
    """Sum of 1/(m*n) over chosen m and free n with m*n <= x, exactly.

    Factors through prefix harmonic sums of the free parts, evaluated once
    per distinct cutoff via segment tree-sums.
    """
    cutoffs = sorted({x // m for m in smooth_parts})
    prefix: dict[int, Fraction] = {}
    running = Fraction(0)
    lo = 0
    for cut in cutoffs:
        hi = bisect_right(free_parts, cut)
        running += exact_sum(Fraction(1, n) for n in free_parts[lo:hi])
        prefix[cut] = running
        lo = hi
    return exact_sum(Fraction(1, m) * prefix[x // m] for m in smooth_parts)


@dataclass(frozen=True)
class DensityRow:
    x: int
    count: int
    counting_density: Fraction
    log_density: Optional[Fraction]


def empirical_densities(
    members: Sequence[int], checkpoints: Sequence[int]
) -> list[DensityRow]:
    """Exact counting and logarithmic densities of a sorted member list."""
    members = list(members)
    if any(a > b for a, b in zip(members, members[1:])):
        raise DomainError("members must be sorted ascending")
    checkpoints = sorted(set(checkpoints))
    if not checkpoints:
        return []
    if any(c < 1 for c in checkpoints):
        raise DomainError("checkpoints must be positive")
    if members and members[-1] > checkpoints[-1]:
        raise DomainError("members extend beyond the last checkpoint")

    rows = []
    running = Fraction(0)
    lo = 0
    for x in checkpoints:
        hi = bisect_right(members, x)
        running += exact_sum(Fraction(1, k) for k in members[lo:hi])
        lo = hi
        log_density = running / _ln_fraction(x) if x >= 2 else None
        rows.append(DensityRow(x, hi, Fraction(hi, x), log_density))
    return rows


@dataclass(frozen=True)
class GapReport:
    """Outcome of the strict comparison between the two density optima."""

    p: int
    q: int
    rho: Fraction
    sigma: Optional[DensityBracket]
    gap_proven: bool
    rounds: int


def strict_gap_check(
    p: int,
    q: int,
    budget: int = DEFAULT_SERIES_BUDGET,
    max_rounds: int = 10,
) -> GapReport:
    """Try to certify that the series value strictly exceeds the closed form.

    Tightens the series tolerance by a factor of four per round.  Budget
    exhaustion yields an inconclusive report, never a false positive.
    """
    rho = rho_closed_form([p, q])
    tolerance = Fraction(1, 16)
    sigma: Optional[DensityBracket] = None
    for round_no in range(1, max_rounds + 1):
        try:
            sigma = sigma_series(p, q, tolerance, budget)
        except BudgetError as exc:
            achieved = exc.achieved
            proven = achieved is not None and achieved.lower > rho
            return GapReport(p, q, rho, achieved, proven, round_no)
        if sigma.lower > rho:
            return GapReport(p, q, rho, sigma, True, round_no)
        tolerance /= 4
    return GapReport(p, q, rho, sigma, False, max_rounds)
