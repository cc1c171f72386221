"""Counting Lame equations with finite monodromy.

Two independent mechanisms are provided and cross-checked in the tests:

* closed-form counts (`dahmen_projective`, `dahmen_ordinary`, `count_family`,
  `total_for_n`), and
* brute-force oracles (`lattice_oracle` for the dihedral counts via exact
  rational lattice-region membership, `brute_force_family` for the
  hemisphere-distribution counts per basic-triangle family).

Dihedral conventions: an equation with monodromy parameters (s, t) taken mod 1
contributes to the count for N when the subgroup of Q/Z generated by s and t
(ordinary) or 2s and 2t (projective) has order exactly N.  The admissible
(s, t) form, for each angle triple (t1, t2, t3) with ti in {1..n} summing to
2n+1, a pair of open triangular regions

    sigma < t1/2,  tau < t2/2,  sigma + tau > (t1 + t2 - 1)/2

(and its negation), where sigma and tau range over representatives of s and t
mod 1.  All membership tests are exact over Fractions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .geom import InvalidInputError

# ---------------------------------------------------------------------------
# Elementary arithmetic
# ---------------------------------------------------------------------------


def euler_phi(n: int) -> int:
    if n < 1:
        raise InvalidInputError("euler_phi needs a positive integer")
    result = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def mobius(n: int) -> int:
    if n < 1:
        raise InvalidInputError("mobius needs a positive integer")
    result = 1
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            result = -result
        p += 1
    if m > 1:
        result = -result
    return result


def phi_big(n: int) -> int:
    """Number of pairs (k1, k2) in [0, n)^2 with gcd(k1, k2, n) = 1."""
    if n < 1:
        raise InvalidInputError("phi_big needs a positive integer")
    result = n * n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // (p * p)
        p += 1
    if m > 1:
        result -= result // (m * m)
    return result


def epsilon_correction(n: int, big_n: int) -> int:
    """1 exactly when N = 3 and n = 1 mod 3, else 0."""
    return 1 if (big_n == 3 and n % 3 == 1) else 0


def _a_coefficient(n: int) -> int:
    # a_{2l} = a_{2l+1} = l(l+1)/2
    l = n // 2
    return l * (l + 1) // 2


def _b_coefficient(n: int) -> int:
    # b_{2l} = b_{2l-1} = l^2
    l = (n + 1) // 2
    return l * l


# ---------------------------------------------------------------------------
# Closed-form dihedral counts
# ---------------------------------------------------------------------------


def dahmen_projective(n: int, big_n: int) -> int:
    """Number of Lame equations of index n with projective monodromy D_N."""
    if n < 1 or big_n < 1:
        raise InvalidInputError("need n >= 1 and N >= 1")
    if big_n == 1:
        return 0
    value = Fraction(n * (n + 1), 12) * (phi_big(big_n) - 3 * euler_phi(big_n))
    value += Fraction(2, 3) * epsilon_correction(n, big_n)
    if value.denominator != 1 or value < 0:
        raise ArithmeticError(f"non-integral projective count {value} at {(n, big_n)}")
    return int(value)


def dahmen_ordinary(n: int, big_n: int) -> int:
    """Number of Lame equations of index n with ordinary monodromy group of
    order 2N (dihedral).  The lattice region is empty for N <= 2."""
    if n < 1 or big_n < 1:
        raise InvalidInputError("need n >= 1 and N >= 1")
    if big_n <= 2:
        return 0
    half_n = euler_phi(big_n // 2) if big_n % 2 == 0 else 0
    value = Fraction(1, 2) * (
        Fraction(n * (n + 1) * phi_big(big_n), 24)
        - (_a_coefficient(n) * euler_phi(big_n) + _b_coefficient(n) * half_n)
    )
    value += Fraction(2, 3) * epsilon_correction(n, big_n)
    if value.denominator != 1 or value < 0:
        raise ArithmeticError(f"non-integral ordinary count {value} at {(n, big_n)}")
    return int(value)


def projective_divisor_total(n: int, big_n: int) -> Fraction:
    """Closed form for sum over d | N of (3 PL(n, d) - 2 eps(n, d))."""
    return Fraction(n * (n + 1), 4) * (big_n - 1) * (big_n - 2)


def ordinary_divisor_total(n: int, big_n: int) -> Fraction:
    """Closed form for sum over d | N of (3 L(n, d) - 2 eps(n, d)),
    split by the parity of N."""
    a, b = _a_coefficient(n), _b_coefficient(n)
    if big_n % 2 == 1:
        l = (big_n + 1) // 2
        return Fraction(3 * a * (l - 1) * (l - 2), 2) + Fraction(
            (b - a) * l * (l - 1), 2
        )
    l = big_n // 2
    return Fraction(3 * a * (l - 1) * (l - 2), 2) + Fraction(
        (b - a) * (l - 1) * (l - 2), 2
    )


# ---------------------------------------------------------------------------
# Exact lattice-region oracle
# ---------------------------------------------------------------------------


def region_weight(n: int, s: Fraction, t: Fraction) -> int:
    """Number of spherical tori of index n with monodromy parameters (s, t).

    Counts, over all angle triples and both sign systems, the integer
    representatives of s and t lying in the corresponding open region.
    """
    if n < 1:
        raise InvalidInputError("need n >= 1")
    s, t = Fraction(s), Fraction(t)
    total = 0
    for t1 in range(1, n + 1):
        for t2 in range(1, n + 1):
            t3 = 2 * n + 1 - t1 - t2
            if not 1 <= t3 <= n:
                continue
            half1 = Fraction(t1, 2)
            half2 = Fraction(t2, 2)
            bound = Fraction(t1 + t2 - 1, 2)
            # largest representative strictly below the angle bounds
            sigma = s + math.ceil(half1 - s) - 1
            tau = t + math.ceil(half2 - t) - 1
            if sigma + tau > bound:
                total += 1
            # smallest representative strictly above the negated bounds
            sigma = s + math.floor(-half1 - s) + 1
            tau = t + math.floor(-half2 - t) + 1
            if sigma + tau < -bound:
                total += 1
    return total


def projective_region_weight(n: int, s2: Fraction, t2: Fraction) -> int:
    """Sum of region weights over the four (s, t) lifts of (2s, 2t)."""
    s2, t2 = Fraction(s2), Fraction(t2)
    half = Fraction(1, 2)
    return sum(
        region_weight(n, s2 / 2 + a * half, t2 / 2 + b * half)
        for a in (0, 1)
        for b in (0, 1)
    )


def _primitive_lower_triangle(big_n: int):
    for k1 in range(1, big_n):
        for k2 in range(1, big_n - k1):
            if math.gcd(k1, k2, big_n) == 1:
                yield k1, k2


def lattice_oracle(n: int, big_n: int, projective: bool = False) -> int:
    """Brute-force dihedral count via exact lattice-point weights.

    Sums region weights over primitive lattice points (k1/N, k2/N) in the
    open lower triangle 0 < k1, 0 < k2, k1 + k2 < N, then converts the
    threefold-redundant total to a count of equations.
    """
    if n < 1 or big_n < 1:
        raise InvalidInputError("need n >= 1 and N >= 1")
    weight = projective_region_weight if projective else region_weight
    raw = sum(
        weight(n, Fraction(k1, big_n), Fraction(k2, big_n))
        for k1, k2 in _primitive_lower_triangle(big_n)
    )
    value = Fraction(raw + 2 * epsilon_correction(n, big_n), 3)
    if value.denominator != 1:
        raise ArithmeticError(
            f"lattice total {raw} not of the form 3k - 2eps at {(n, big_n)}"
        )
    return int(value)


# ---------------------------------------------------------------------------
# Per-family counts (hemisphere distributions over basic triangles)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CountRow:
    """One family row: a basic triangle class and its counting formula."""

    family: str
    bases: tuple[Fraction, ...]       # basic n values covered by this row
    distances: tuple[tuple[int, bool], ...] | None   # (graph distance, major-arc)
    formula: str                      # "ceil6" | "tri" | "tri_minus" | "dihedral"
    note: str | None = None           # "regular" | "semibalanced" | None


@dataclass
class CountQuery:
    n: Fraction
    families: tuple[str, ...] | None = None


@dataclass
class CountReport:
    n: Fraction
    total: int
    breakdown: list[dict] = field(default_factory=list)


def _formula_value(formula: str, m: int) -> int:
    tri = m * (m + 1) // 2
    if formula == "ceil6":
        return -((-m * (m + 1)) // 6)  # ceil(m(m+1)/6)
    if formula == "tri":
        return tri
    if formula == "tri_minus":
        return tri - m // 2
    raise InvalidInputError(f"unknown counting formula {formula!r}")


def count_family(row: CountRow, m: int) -> int:
    """Closed-form number of tori built from this family with m - 1 hemispheres."""
    if m < 1:
        raise InvalidInputError("need m >= 1")
    return _formula_value(row.formula, m)


def brute_force_family(row: CountRow, m: int) -> int:
    """Count hemisphere distributions (m1, m2, m3) with m1+m2+m3 = m-1 up to
    the symmetries of the basic triangle.

    Regular triangles identify cyclic rotations of the distribution.
    Semibalanced triangles identify the mirrored pair, which swaps the two
    short-edge counts, exactly when no hemisphere sits on the long edge
    (attaching there breaks the mirror symmetry of the resulting torus).
    """
    if m < 1:
        raise InvalidInputError("need m >= 1")
    seen = set()
    for m1 in range(m):
        for m2 in range(m - m1):
            m3 = m - 1 - m1 - m2
            dist = (m1, m2, m3)
            if row.note == "regular":
                key = min(
                    dist, (dist[1], dist[2], dist[0]), (dist[2], dist[0], dist[1])
                )
            elif row.note == "semibalanced":
                apex = _apex_index(row)
                others = [dist[i] for i in range(3) if i != apex]
                if dist[apex] == 0:
                    key = (dist[apex], apex, tuple(sorted(others)))
                else:
                    key = dist
            else:
                key = dist
            seen.add(key)
    return len(seen)


def _apex_index(row: CountRow) -> int:
    """Index of the long edge of a semibalanced row (the odd one out)."""
    if row.distances is None:
        raise InvalidInputError("row has no distance tuple")
    for i in range(3):
        if row.distances.count(row.distances[i]) == 1:
            return i
    raise InvalidInputError("semibalanced row has no distinguished edge")


def rows_matching_n(rows: list[CountRow], n: Fraction) -> list[tuple[CountRow, int]]:
    """Pairs (row, m) for rows whose basic value reaches n with m - 1 hemispheres."""
    matches = []
    for row in rows:
        for base in row.bases:
            gap = Fraction(n) - base
            if gap.denominator == 1 and gap >= 0:
                matches.append((row, int(gap) + 1))
                break
    return matches


def total_for_n(n: Fraction, rows: list[CountRow] | None = None) -> CountReport:
    """Total count of polyhedral spherical tori at index n, with breakdown."""
    n = Fraction(n)
    if n.denominator == 1:
        raise InvalidInputError(
            "integer n belongs to the dihedral families; use dahmen_ordinary"
        )
    if n.denominator == 2:
        raise InvalidInputError(
            "half-integer n has a one-complex-dimensional modulus, not a count"
        )
    if rows is None:
        from .goldens import count_rows

        rows = count_rows()
    report = CountReport(n=n, total=0)
    for row, m in rows_matching_n(rows, n):
        if row.formula == "dihedral":
            continue
        value = count_family(row, m)
        report.total += value
        report.breakdown.append(
            {
                "family": row.family,
                "distances": row.distances,
                "m": m,
                "count": value,
            }
        )
    return report


def dihedral_count(k: tuple[int, int, int], m: int) -> int:
    """Count for the dihedral family with coprime gap triple k at index n = m."""
    if math.gcd(math.gcd(k[0], k[1]), k[2]) != 1:
        raise InvalidInputError("gap triple must be coprime")
    if k[0] == k[1] == k[2] == 1:
        return _formula_value("ceil6", m)
    return _formula_value("tri", m)
