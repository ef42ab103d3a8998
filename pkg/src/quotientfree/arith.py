"""Exact integer and rational foundations.

Pairwise-coprime bases for sets of forbidden quotients, smooth-number
enumeration, counting of integers coprime to a basis, and the unique
smooth-times-coprime factorization.  Every membership and ordering decision
here is made in exact integer arithmetic; floating point never decides
anything.
"""

from __future__ import annotations

import heapq
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, islice
from math import gcd, prod
from typing import Iterable, Iterator, Sequence, Union

from .errors import DomainError, InsufficientEnumerationError

RationalLike = Union[int, str, Fraction]
Vector = tuple[int, ...]


def as_fraction(value: RationalLike) -> Fraction:
    """Parse an int, Fraction, or 'p/q' string into an exact Fraction."""
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise DomainError(f"not a rational number: {value!r}") from exc


def exact_sum(fractions: Iterable[Fraction]) -> Fraction:
    """Sum fractions by pairwise (tree) reduction.

    Keeps intermediate denominators near the lcm of the inputs instead of
    their product, which is what makes 10^5-term harmonic sums feasible.
    """
    items = list(fractions)
    if not items:
        return Fraction(0)
    while len(items) > 1:
        paired = [items[i] + items[i + 1] for i in range(0, len(items) - 1, 2)]
        if len(items) % 2:
            paired.append(items[-1])
        items = paired
    return items[0]


def _factor(n: int) -> dict[int, int]:
    """Trial-division prime factorization; inputs are desk-scale."""
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@dataclass(frozen=True)
class RationalSet:
    """A finite set of forbidden quotients, stored as reduced fractions.

    Elements are positive, distinct, and never 1 (a set containing 1 could
    not avoid the quotient x/x in any interesting sense).
    """

    elements: tuple[Fraction, ...]

    @classmethod
    def of(cls, items: Iterable[RationalLike]) -> "RationalSet":
        elems = []
        for item in items:
            f = as_fraction(item)
            if f <= 0:
                raise DomainError(f"quotients must be positive, got {f}")
            if f == 1:
                raise DomainError("the quotient 1 is not allowed")
            elems.append(f)
        if not elems:
            raise DomainError("the quotient set must be nonempty")
        if len(set(elems)) != len(elems):
            raise DomainError("quotients must be distinct")
        return cls(tuple(sorted(elems)))

    def is_coprime_integers(self) -> bool:
        """True when all elements are integers > 1 and pairwise coprime."""
        ints = [f for f in self.elements if f.denominator == 1]
        if len(ints) != len(self.elements):
            return False
        vals = [f.numerator for f in ints]
        return all(gcd(a, b) == 1 for a, b in combinations(vals, 2))


@dataclass(frozen=True)
class CoprimeBasis:
    """Pairwise-coprime basis plus the exponent vectors of the quotients.

    ``basis`` is strictly increasing with entries > 1 and pairwise coprime;
    ``diffs`` holds one integer exponent vector per quotient, never zero.
    """

    basis: tuple[int, ...]
    diffs: tuple[Vector, ...]

    def __post_init__(self):
        if not self.basis:
            raise DomainError("basis must be nonempty")
        if any(b <= 1 for b in self.basis):
            raise DomainError("basis entries must exceed 1")
        if any(x >= y for x, y in zip(self.basis, self.basis[1:])):
            raise DomainError("basis must be strictly increasing")
        if any(gcd(a, b) != 1 for a, b in combinations(self.basis, 2)):
            raise DomainError("basis entries must be pairwise coprime")
        for vec in self.diffs:
            if len(vec) != len(self.basis):
                raise DomainError("difference vector length must match basis size")
            if all(v == 0 for v in vec):
                raise DomainError("difference vectors must be nonzero")

    @classmethod
    def from_coprime_integers(cls, values: Sequence[int]) -> "CoprimeBasis":
        """Basis equal to the integer set itself, one unit vector per element."""
        vals = list(values)
        if sorted(vals) != vals or len(set(vals)) != len(vals):
            raise DomainError("elements must be strictly increasing")
        s = len(vals)
        units = tuple(tuple(1 if j == i else 0 for j in range(s)) for i in range(s))
        return cls(tuple(vals), units)

    @property
    def size(self) -> int:
        return len(self.basis)


def derive_basis(a_set: RationalSet) -> CoprimeBasis:
    """Factor every quotient over the primes of its numerator and denominator.

    Always returns the prime basis, ascending, so the result is canonical.
    """
    primes: set[int] = set()
    for f in a_set.elements:
        primes.update(_factor(f.numerator))
        primes.update(_factor(f.denominator))
    basis = tuple(sorted(primes))
    index = {p: i for i, p in enumerate(basis)}
    diffs = []
    for f in a_set.elements:
        vec = [0] * len(basis)
        for p, e in _factor(f.numerator).items():
            vec[index[p]] += e
        for p, e in _factor(f.denominator).items():
            vec[index[p]] -= e
        diffs.append(tuple(vec))
    return CoprimeBasis(basis, tuple(diffs))


def _basis_ints(basis) -> tuple[int, ...]:
    if isinstance(basis, CoprimeBasis):
        return basis.basis
    return tuple(basis)


@dataclass(frozen=True)
class SmoothSequence:
    """All basis-smooth integers up to ``bound``, ascending, with exponents."""

    values: tuple[int, ...]
    exponents: tuple[Vector, ...]
    bound: int
    basis: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.values)

    def entries(self) -> Iterator[tuple[int, Vector]]:
        return zip(self.values, self.exponents)


def smooth_stream(basis) -> Iterator[tuple[int, Vector]]:
    """Yield (value, exponents) of basis-smooth integers in ascending order.

    Breadth expansion of exponent vectors merged through a heap; vectors are
    deduplicated, so each smooth integer appears exactly once.
    """
    b = _basis_ints(basis)
    s = len(b)
    start = (0,) * s
    heap: list[tuple[int, Vector]] = [(1, start)]
    seen = {start}
    while heap:
        value, exps = heapq.heappop(heap)
        yield value, exps
        for j, bj in enumerate(b):
            child = exps[:j] + (exps[j] + 1,) + exps[j + 1:]
            if child not in seen:
                seen.add(child)
                heapq.heappush(heap, (value * bj, child))


def enumerate_smooth(basis, bound: int) -> SmoothSequence:
    """All basis-smooth integers <= bound with their exponent vectors."""
    if bound < 1:
        raise DomainError("bound must be at least 1")
    b = _basis_ints(basis)
    values: list[int] = []
    exponents: list[Vector] = []
    for value, exps in smooth_stream(b):
        if value > bound:
            break
        values.append(value)
        exponents.append(exps)
    return SmoothSequence(tuple(values), tuple(exponents), bound, b)


def first_smooth_entries(basis, count: int) -> list[tuple[int, Vector]]:
    """The first ``count`` basis-smooth integers in ascending order."""
    if count < 1:
        raise DomainError("count must be at least 1")
    return list(islice(smooth_stream(basis), count))


def smooth_index(seq: SmoothSequence, u: RationalLike) -> int:
    """The 1-based index t with m_t <= u < m_{t+1} in the smooth sequence."""
    u = as_fraction(u)
    if u < 1:
        raise DomainError(f"argument must be at least 1, got {u}")
    # Completeness below floor(u) pins the successor: there is no integer in
    # (bound, u) once bound >= floor(u), so the next smooth value exceeds u.
    if seq.bound < u.numerator // u.denominator:
        raise InsufficientEnumerationError(
            f"sequence enumerated to {seq.bound}, need at least {u.numerator // u.denominator}"
        )
    return bisect_right(seq.values, u)


def count_coprime_part(basis, x: int) -> int:
    """|{n <= x : no basis element divides n}| by inclusion-exclusion."""
    if x < 1:
        raise DomainError("bound must be at least 1")
    b = _basis_ints(basis)
    total = 0
    for k in range(len(b) + 1):
        sign = -1 if k % 2 else 1
        for combo in combinations(b, k):
            total += sign * (x // prod(combo))
    return total


def coprime_part_list(basis, x: int) -> list[int]:
    """Ascending list of n <= x divisible by no basis element."""
    b = _basis_ints(basis)
    return [n for n in range(1, x + 1) if all(n % bj for bj in b)]


def phi(basis) -> Fraction:
    """Product of (1 - 1/b) over the basis: the density of its coprime part."""
    result = Fraction(1)
    for b in _basis_ints(basis):
        result *= Fraction(b - 1, b)
    return result


def harmonic_coprime_sum(basis, x: int) -> Fraction:
    """Exact sum of 1/n over n <= x with n divisible by no basis element."""
    if x < 1:
        raise DomainError("bound must be at least 1")
    return exact_sum(Fraction(1, n) for n in coprime_part_list(basis, x))


@dataclass(frozen=True)
class Factorization:
    """The unique split k = m * n with m basis-smooth and n basis-free."""

    m: int
    n: int


def factor_decompose(k: int, basis) -> Factorization:
    """Strip all basis divisors from k: the smooth part times the free part."""
    if k < 1:
        raise DomainError("argument must be a positive integer")
    m = 1
    rest = k
    for b in _basis_ints(basis):
        while rest % b == 0:
            rest //= b
            m *= b
    return Factorization(m, rest)
