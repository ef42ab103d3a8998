"""Independent brute-force oracles shared by the test modules.

These deliberately avoid the library's own algorithms: smooth numbers come
from nested loops, maxima from exhaustive subset enumeration, memberships
from direct arithmetic.
"""

from fractions import Fraction


def naive_smooth(basis, bound):
    """All products of basis powers <= bound by nested loops, sorted."""
    values = {1: tuple([0] * len(basis))}

    def extend(partial, exps, index):
        if index == len(basis):
            return
        b = basis[index]
        power = partial
        e = list(exps)
        while True:
            extend(power, tuple(e), index + 1)
            power *= b
            if power > bound:
                break
            e[index] += 1
            values[power] = tuple(e)

    extend(1, tuple([0] * len(basis)), 0)
    ordered = sorted(values)
    return ordered, [values[v] for v in ordered]


def brute_force_max_difference_free(points, diffs):
    """Exhaustive maximum conflict-free subset by subset recursion."""
    points = list(points)
    n = len(points)
    index = {p: i for i, p in enumerate(points)}
    masks = [0] * n
    for i, p in enumerate(points):
        for d in diffs:
            q = tuple(a + b for a, b in zip(p, d))
            j = index.get(q)
            if j is not None and j != i:
                masks[i] |= 1 << j
                masks[j] |= 1 << i
    best = 0
    best_mask = 0

    def rec(i, allowed, chosen_count, chosen_mask):
        nonlocal best, best_mask
        if chosen_count + (n - i) < best:
            return
        if i == n:
            if chosen_count > best:
                best, best_mask = chosen_count, chosen_mask
            return
        if (allowed >> i) & 1:
            rec(i + 1, allowed & ~masks[i], chosen_count + 1, chosen_mask | (1 << i))
        rec(i + 1, allowed, chosen_count, chosen_mask)

    rec(0, (1 << n) - 1, 0, 0)
    return best


def brute_force_all_optima(points, diffs):
    """Every maximum conflict-free subset, as sorted point tuples."""
    points = sorted(points)
    n = len(points)
    index = {p: i for i, p in enumerate(points)}
    masks = [0] * n
    for i, p in enumerate(points):
        for d in diffs:
            q = tuple(a + b for a, b in zip(p, d))
            j = index.get(q)
            if j is not None and j != i:
                masks[i] |= 1 << j
                masks[j] |= 1 << i
    best = brute_force_max_difference_free(points, diffs)
    optima = []
    for mask in range(1 << n):
        if bin(mask).count("1") != best:
            continue
        ok = True
        for i in range(n):
            if (mask >> i) & 1 and masks[i] & mask:
                ok = False
                break
        if ok:
            optima.append(tuple(points[i] for i in range(n) if (mask >> i) & 1))
    return optima


def quotient_free_violations(members, quotients):
    """Pairs (x, y) in members with x/y among the quotients, via partners."""
    member_set = set(members)
    bad = []
    for k in members:
        for a in quotients:
            a = Fraction(a)
            if (k * a.numerator) % a.denominator == 0:
                partner = k * a.numerator // a.denominator
                if partner in member_set and partner != k:
                    bad.append((partner, k))
    return bad


def random_fraction(rng, max_num, max_den):
    return Fraction(rng.randint(1, max_num), rng.randint(1, max_den))
