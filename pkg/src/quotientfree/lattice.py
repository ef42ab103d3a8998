"""Difference-free lattice combinatorics.

Checkerboard classification of lattice points, exact maximum difference-free
subsets (cardinality and weighted) by branch and bound on the conflict
graph, truncated brackets for the optimal weight of a difference-free set,
and the diagonal sweep that recolors an optimal configuration inside an
axis-legged triangle to a single color without losing points.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, gcd
from typing import Iterable, Optional, Sequence

from .arith import CoprimeBasis, as_fraction, first_smooth_entries, enumerate_smooth
from .errors import CapError, DomainError, SweepError

Point = tuple[int, ...]

# Two non-adjacent lattice points of a triangle whose legs do NOT lie on the
# coordinate axes; they are differently colored, so the majority color
# undercounts the maximum there.  Fixed guard vector for the axis-leg
# hypothesis.
SKEW_TRIANGLE_COUNTEREXAMPLE: tuple[Point, ...] = ((1, 0), (0, 2))

DEFAULT_SEARCH_CAP = 40


@dataclass(frozen=True)
class Region:
    """How a point set was produced: first-entries t, value-bound n, or explicit."""

    kind: str
    param: Optional[int] = None


@dataclass(frozen=True)
class LatticeConfig:
    """A finite set of nonnegative exponent vectors with region metadata.

    Points are stored sorted lexicographically; this is the fixed point
    order referenced by witness tie-breaking.
    """

    points: tuple[Point, ...]
    region: Region = field(default=Region("explicit"))

    def __post_init__(self):
        pts = self.points
        if any(any(c < 0 for c in p) for p in pts):
            raise DomainError("all coordinates must be nonnegative")
        if len(set(pts)) != len(pts):
            raise DomainError("points must be distinct")
        if len(set(len(p) for p in pts)) > 1:
            raise DomainError("points must share one dimension")
        object.__setattr__(self, "points", tuple(sorted(pts)))

    @classmethod
    def explicit(cls, points: Iterable[Sequence[int]]) -> "LatticeConfig":
        return cls(tuple(tuple(p) for p in points), Region("explicit"))

    @classmethod
    def first_entries(cls, basis, t: int) -> "LatticeConfig":
        """Exponent vectors of the first t basis-smooth integers."""
        entries = first_smooth_entries(basis, t)
        return cls(tuple(e for _, e in entries), Region("first-entries", t))

    @classmethod
    def value_bound(cls, basis, n: int) -> "LatticeConfig":
        """Exponent vectors of all basis-smooth integers <= n."""
        seq = enumerate_smooth(basis, n)
        return cls(seq.exponents, Region("value-bound", n))

    def __len__(self) -> int:
        return len(self.points)


@dataclass(frozen=True)
class ColorCount:
    """Checkerboard tallies: white = even coordinate sum, black = odd."""

    white: int
    black: int

    @property
    def total(self) -> int:
        return self.white + self.black

    def majority(self) -> int:
        return max(self.white, self.black)


@dataclass(frozen=True)
class CheckerboardSplit:
    counts: ColorCount
    white: tuple[Point, ...]
    black: tuple[Point, ...]


def point_color(p: Sequence[int]) -> str:
    return "white" if sum(p) % 2 == 0 else "black"


def checkerboard_split(config: LatticeConfig) -> CheckerboardSplit:
    """Partition the points by parity of their coordinate sum."""
    white = tuple(p for p in config.points if sum(p) % 2 == 0)
    black = tuple(p for p in config.points if sum(p) % 2 == 1)
    return CheckerboardSplit(ColorCount(len(white), len(black)), white, black)


@dataclass(frozen=True)
class IndependentSetResult:
    """Exact maximum difference-free subset: size, witness, and optimality flag."""

    size: int
    witness: tuple[Point, ...]
    optimal: bool


@dataclass(frozen=True)
class GammaBracket:
    """Exact enclosure of the optimal difference-free weight.

    ``lower`` is the exact optimum over the truncated region of depth
    ``depth``; ``upper`` adds the exact tail mass of everything beyond it.
    """

    lower: Fraction
    upper: Fraction
    depth: int
    witness: tuple[Point, ...]

    @property
    def width(self) -> Fraction:
        return self.upper - self.lower


# ---------------------------------------------------------------------------
# Conflict-graph search
# ---------------------------------------------------------------------------


def _normalize_diffs(diffs) -> tuple[Point, ...]:
    if isinstance(diffs, CoprimeBasis):
        return diffs.diffs
    out = tuple(tuple(d) for d in diffs)
    for d in out:
        if all(v == 0 for v in d):
            raise DomainError("difference vectors must be nonzero")
    return out


def _conflict_masks(points: Sequence[Point], diffs: Sequence[Point]) -> list[int]:
    """Bit-adjacency: i ~ j iff their difference (either way) is a diff vector."""
    index = {p: i for i, p in enumerate(points)}
    adj = [0] * len(points)
    for i, p in enumerate(points):
        for d in diffs:
            q = tuple(a + b for a, b in zip(p, d))
            j = index.get(q)
            if j is not None and j != i:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    return adj


def _iter_bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _solve_max_weight(points, adj, weights, sub_mask):
    """Exact maximum-weight conflict-free subset of the vertices in sub_mask.

    Branch and bound: vertices in descending weight order, include-branch
    first, incumbent seeded with the best conflict-free parity class, and a
    greedy-matching clique bound (each matched pair contributes only its
    heavier endpoint).
    """
    n = len(points)
    order = sorted(
        (i for i in range(n) if (sub_mask >> i) & 1),
        key=lambda i: (-weights[i], points[i]),
    )
    zero = 0 * weights[order[0]] if order else 0

    def class_mask(parity: int) -> int:
        m = 0
        for i in order:
            if sum(points[i]) % 2 == parity:
                m |= 1 << i
        return m

    def is_free(mask: int) -> bool:
        return all(not (adj[i] & mask) for i in _iter_bits(mask))

    def mask_weight(mask: int):
        total = zero
        for i in _iter_bits(mask):
            total += weights[i]
        return total

    best_mask = 0
    best = zero
    for parity in (0, 1):
        cm = class_mask(parity)
        if cm and is_free(cm):
            w = mask_weight(cm)
            if w > best or best_mask == 0:
                best, best_mask = w, cm
    if best_mask == 0 and order:
        taken = 0
        for i in order:
            if not (adj[i] & taken):
                taken |= 1 << i
        best, best_mask = mask_weight(taken), taken

    def bound(rem: int):
        total = zero
        r = rem
        for i in order:
            bit = 1 << i
            if not (r & bit):
                continue
            r ^= bit
            nb = adj[i] & r
            if nb:
                # pair i with its heaviest remaining neighbor; the pair is a
                # clique, so it contributes at most w[i] (order is descending)
                j = max(_iter_bits(nb), key=lambda k: weights[k])
                r ^= 1 << j
            total += weights[i]
        return total

    sys.setrecursionlimit(max(sys.getrecursionlimit(), 4 * n + 1000))

    def rec(rem: int, current, chosen: int):
        nonlocal best, best_mask
        if not rem:
            if current > best:
                best, best_mask = current, chosen
            return
        if current + bound(rem) <= best:
            return
        for i in order:
            if (rem >> i) & 1:
                v = i
                break
        bit = 1 << v
        rec(rem & ~adj[v] & ~bit, current + weights[v], chosen | bit)
        rec(rem & ~bit, current, chosen)

    if order:
        rec(sub_mask, zero, 0)
    return best, best_mask


def _lex_least_optimal(points, adj, weights, target):
    """Lexicographically least optimum under the fixed (sorted) point order.

    Greedy inclusion: commit each point in order iff the target value is
    still reachable with it in; each test is one exact solve on the residue.
    """
    n = len(points)
    chosen_weight = 0 * weights[0]
    chosen_mask = 0
    rem = (1 << n) - 1
    for i in range(n):  # points are stored lex-sorted
        bit = 1 << i
        if not (rem & bit):
            continue
        residue = rem & ~adj[i] & ~bit
        value = chosen_weight + weights[i]
        if residue:
            sub, _ = _solve_max_weight(points, adj, weights, residue)
            value = value + sub
        if value == target:
            chosen_mask |= bit
            chosen_weight += weights[i]
            rem = residue
        else:
            rem &= ~bit
    return chosen_mask


def max_difference_free(
    config: LatticeConfig,
    diffs,
    cap: int = DEFAULT_SEARCH_CAP,
) -> IndependentSetResult:
    """Exact maximum difference-free subset of the configured points.

    Two points conflict when their difference, in either direction, is one
    of the given vectors.  The witness is the lexicographically least
    optimal subset under the sorted point order.
    """
    points = config.points
    if len(points) > cap:
        raise CapError(
            f"instance too large for exact search: {len(points)} points exceed cap {cap}"
        )
    if not points:
        return IndependentSetResult(0, (), True)
    diffs = _normalize_diffs(diffs)
    adj = _conflict_masks(points, diffs)
    weights = [1] * len(points)
    best, _ = _solve_max_weight(points, adj, weights, (1 << len(points)) - 1)
    mask = _lex_least_optimal(points, adj, weights, best)
    witness = tuple(points[i] for i in _iter_bits(mask))
    return IndependentSetResult(best, witness, True)


def f_via_checkerboard(p: int, q: int, t: int) -> int:
    """Majority color count over the first t smooth integers of the pair basis."""
    _check_coprime_pair(p, q)
    if t < 1:
        raise DomainError("t must be at least 1")
    entries = first_smooth_entries((p, q), t)
    white = sum(1 for _, e in entries if sum(e) % 2 == 0)
    return max(white, t - white)


def _check_coprime_pair(p: int, q: int) -> None:
    if not (1 < p < q):
        raise DomainError(f"need 1 < p < q, got p={p}, q={q}")
    if gcd(p, q) != 1:
        raise DomainError(f"elements not pairwise coprime: gcd({p},{q}) > 1")


# ---------------------------------------------------------------------------
# Weighted bracket
# ---------------------------------------------------------------------------


def _simplex_lattice(s: int, depth: int) -> list[Point]:
    """All u in Z_+^s with coordinate sum <= depth."""
    pts: list[Point] = []

    def rec(prefix: tuple[int, ...], budget: int):
        if len(prefix) == s - 1:
            for k in range(budget + 1):
                pts.append(prefix + (k,))
            return
        for k in range(budget + 1):
            rec(prefix + (k,), budget - k)

    if s == 0:
        return [()]
    rec((), depth)
    return pts


def _point_weight(basis: Sequence[int], u: Point) -> Fraction:
    den = 1
    for b, e in zip(basis, u):
        den *= b ** e
    return Fraction(1, den)


def truncated_weight_mass(basis: Sequence[int], depth: int) -> Fraction:
    """Exact total weight of all points with coordinate sum <= depth."""
    layer = [Fraction(1)] + [Fraction(0)] * depth
    for b in basis:
        nxt = [Fraction(0)] * (depth + 1)
        for total, w in enumerate(layer):
            if w == 0:
                continue
            power = Fraction(1)
            for k in range(depth - total + 1):
                nxt[total + k] += w * power
                power /= b
        layer = nxt
    return sum(layer, Fraction(0))


def total_weight_mass(basis: Sequence[int]) -> Fraction:
    """Sum of the geometric weights over the entire nonnegative lattice."""
    result = Fraction(1)
    for b in basis:
        result *= Fraction(b, b - 1)
    return result


def max_feasible_depth(s: int, cap: int) -> int:
    """Largest depth whose lattice simplex stays within the point cap."""
    depth = -1
    while comb(depth + 1 + s, s) <= cap:
        depth += 1
    return depth


def gamma_bracket(
    basis: CoprimeBasis,
    depth: int,
    cap: int = DEFAULT_SEARCH_CAP,
) -> GammaBracket:
    """Bracket the optimal difference-free weight by exact truncation.

    Lower bound: exact optimum over the region of coordinate sum <= depth.
    Upper bound: lower plus the exact tail mass beyond the region, from the
    closed form of the geometric series.
    """
    if depth < 0:
        raise DomainError("depth must be nonnegative")
    s = basis.size
    count = comb(depth + s, s)
    if count > cap:
        raise CapError(
            f"truncation region has {count} points, exceeding cap {cap}; "
            f"largest feasible depth is {max_feasible_depth(s, cap)}"
        )
    points = sorted(_simplex_lattice(s, depth))
    weights = [_point_weight(basis.basis, p) for p in points]
    adj = _conflict_masks(points, basis.diffs)
    best, mask = _solve_max_weight(points, adj, weights, (1 << len(points)) - 1)
    witness = tuple(sorted(points[i] for i in _iter_bits(mask)))
    tail = total_weight_mass(basis.basis) - truncated_weight_mass(basis.basis, depth)
    return GammaBracket(best, best + tail, depth, witness)


def white_weight_value(values: Sequence[int]) -> Fraction:
    """Exact weight of the even-parity class over the whole lattice.

    Equals half of (product of b/(b-1)) plus half of (product of b/(b+1)):
    the even-parity part of the full geometric product.
    """
    vals = list(values)
    if not vals or any(v <= 1 for v in vals):
        raise DomainError("elements must be integers greater than 1")
    if sorted(vals) != vals or len(set(vals)) != len(vals):
        raise DomainError("elements must be strictly increasing")
    if any(gcd(a, b) != 1 for i, a in enumerate(vals) for b in vals[i + 1:]):
        raise DomainError("elements not pairwise coprime")
    all_mass = Fraction(1)
    signed_mass = Fraction(1)
    for v in vals:
        all_mass *= Fraction(v, v - 1)
        signed_mass *= Fraction(v, v + 1)
    return (all_mass + signed_mass) / 2


# ---------------------------------------------------------------------------
# Axis-legged triangles and the diagonal sweep
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Triangle:
    """Axis-legged triangle x >= 0, y >= 0 with an exact membership test.

    Rational mode: a*x + b*y <= c in exact rationals.  Integer mode:
    p^x * q^y <= n on big integers, which is the same triangle with
    logarithmic coefficients but decided without any logarithms.
    """

    mode: str
    a: Optional[Fraction] = None
    b: Optional[Fraction] = None
    c: Optional[Fraction] = None
    p: Optional[int] = None
    q: Optional[int] = None
    n: Optional[int] = None

    @classmethod
    def rational(cls, a, b, c) -> "Triangle":
        a, b, c = as_fraction(a), as_fraction(b), as_fraction(c)
        if a <= 0 or b <= 0:
            raise DomainError("triangle coefficients must be positive")
        return cls("rational", a=a, b=b, c=c)

    @classmethod
    def integer(cls, p: int, q: int, n: int) -> "Triangle":
        if not (1 < p < q):
            raise DomainError(f"need 1 < p < q, got p={p}, q={q}")
        if n < 1:
            raise DomainError("bound must be at least 1")
        return cls("integer", p=p, q=q, n=n)

    def contains(self, x: int, y: int) -> bool:
        if x < 0 or y < 0:
            return False
        if self.mode == "rational":
            return self.a * x + self.b * y <= self.c
        return self.p ** x * self.q ** y <= self.n

    def max_diagonal(self) -> int:
        """Largest coordinate sum of any lattice point inside, -1 if empty."""
        d = 0
        while self.contains(d, 0) or self.contains(0, d):
            d += 1
        return d - 1

    def points(self, limit: Optional[int] = None) -> list[Point]:
        """All lattice points inside, lex order; abort past ``limit`` points."""
        out: list[Point] = []
        x = 0
        while self.contains(x, 0):
            y = 0
            while self.contains(x, y):
                out.append((x, y))
                if limit is not None and len(out) > limit:
                    return out
                y += 1
            x += 1
        return out

    def lattice_config(self) -> LatticeConfig:
        region = (
            Region("value-bound", self.n) if self.mode == "integer" else Region("explicit")
        )
        return LatticeConfig(tuple(self.points()), region)


AXIS_DIFFS: tuple[Point, ...] = ((1, 0), (0, 1))


def _validate_sweep_input(triangle: Triangle, pts: set[Point], cap: int) -> None:
    for p in pts:
        if len(p) != 2:
            raise DomainError("the sweep works on plane configurations")
        if not triangle.contains(*p):
            raise DomainError(f"point {p} lies outside the triangle")
    for x, y in pts:
        if (x + 1, y) in pts or (x, y + 1) in pts:
            raise DomainError(f"points ({x},{y}) and a neighbor are both present")
    tri_pts = triangle.points(limit=cap + 1)
    if len(tri_pts) <= cap:
        opt = max_difference_free(LatticeConfig.explicit(tri_pts), AXIS_DIFFS, cap).size
        if len(pts) != opt:
            raise DomainError(
                f"input has {len(pts)} points but the maximum is {opt}; "
                "the sweep requires a maximum configuration"
            )
    # beyond the cap the maximality of the input is trusted


def monochromatize(
    triangle: Triangle,
    config,
    cap: int = DEFAULT_SEARCH_CAP,
) -> LatticeConfig:
    """Recolor an optimal non-adjacent configuration to a single color.

    Sweeps diagonals x+y = d upward, keeping everything at or below the
    current diagonal one color.  Three moves, by case: a diagonal cut by the
    hypotenuse shifts its points toward the cut; a vacant spot on a full-
    width diagonal splits the shifts around it; a fully occupied diagonal
    forces the row below empty and everything under it shifts up.  Each move
    lands on vacant cells of the opposite parity, so no adjacencies appear.
    """
    points = config.points if isinstance(config, LatticeConfig) else tuple(
        tuple(p) for p in config
    )
    current = set(points)
    size = len(current)
    _validate_sweep_input(triangle, current, cap)

    for d in range(triangle.max_diagonal() + 1):
        diag = sorted(p for p in current if p[0] + p[1] == d)
        below = [p for p in current if p[0] + p[1] < d]
        if not diag or not below:
            continue
        below_colors = {(x + y) % 2 for x, y in below}
        if len(below_colors) != 1:
            raise SweepError(d, "points below the diagonal are not one color")
        color_below = below_colors.pop()
        if color_below == d % 2:
            continue

        left_out = not triangle.contains(0, d)
        right_out = not triangle.contains(d, 0)
        if left_out and right_out:
            raise SweepError(d, "diagonal lies outside the triangle yet carries points")

        if left_out or right_out:
            # hypotenuse cuts the diagonal: shift its points toward the cut
            step = (-1, 0) if left_out else (0, -1)
            moved = []
            for x, y in diag:
                nx, ny = x + step[0], y + step[1]
                if nx < 0 or ny < 0 or not triangle.contains(nx, ny):
                    raise SweepError(d, f"shift target ({nx},{ny}) leaves the triangle")
                if (nx, ny) in current and (nx, ny) not in diag:
                    raise SweepError(d, f"shift target ({nx},{ny}) is occupied")
                moved.append((nx, ny))
            current.difference_update(diag)
            current.update(moved)
        else:
            full_diag = [(x, d - x) for x in range(d + 1)]
            vacant = [pt for pt in full_diag if pt not in current]
            if vacant:
                # split shifts around the vacant spot: left part down, right part left
                px = vacant[0][0]
                moved = []
                for x, y in diag:
                    nx, ny = (x, y - 1) if x < px else (x - 1, y)
                    if nx < 0 or ny < 0 or not triangle.contains(nx, ny):
                        raise SweepError(d, f"shift target ({nx},{ny}) leaves the triangle")
                    if (nx, ny) in current and (nx, ny) not in diag:
                        raise SweepError(d, f"shift target ({nx},{ny}) is occupied")
                    moved.append((nx, ny))
                current.difference_update(diag)
                current.update(moved)
            else:
                # full diagonal: its neighbors are free, so row d-1 must be empty
                if any(p[0] + p[1] == d - 1 for p in current):
                    raise SweepError(d, "row below a full diagonal is occupied")
                moved = []
                for x, y in below:
                    nx, ny = x, y + 1
                    if not triangle.contains(nx, ny):
                        raise SweepError(d, f"upward target ({nx},{ny}) leaves the triangle")
                    if (nx, ny) in current and (nx, ny) not in below:
                        raise SweepError(d, f"upward target ({nx},{ny}) is occupied")
                    moved.append((nx, ny))
                current.difference_update(below)
                current.update(moved)
        if len(current) != size:
            raise SweepError(d, "moves collided and lost a point")

    result = sorted(current)
    if len(result) != size:
        raise SweepError(None, "output size differs from input size")
    if any(not triangle.contains(*p) for p in result):
        raise SweepError(None, "output leaves the triangle")
    out_set = set(result)
    for x, y in result:
        if (x + 1, y) in out_set or (x, y + 1) in out_set:
            raise SweepError(None, "output contains adjacent points")
    if len({(x + y) % 2 for x, y in result}) > 1:
        raise SweepError(None, "output is not monochromatic")
    return LatticeConfig.explicit(result)
