"""The one-parameter limit law of normalised tensor sums.

The law interpolates, with a parameter q in [0, 1), between the standard
semicircle law (q = 0) and a classically convolved pair of semicircles.  Its
free cumulants are pinned down by the bipartite-connected pairing counts:
order 2 contributes 1, odd orders vanish, and order 2j (j >= 2) contributes
2 (q/2)^j times the number of connected bipartite pairings of [2j].  Moments
are produced by two independent routes, a direct recurrence on the moment
sequence and the generic free moment-cumulant transform, which must agree
exactly.
"""

from __future__ import annotations

from fractions import Fraction

from .cumulants import CumulantSeq, MomentSeq, Rational, moments_from_free_cumulants
from .partitions import catalan_number, count_bicon_pairs


def mu1_free_cumulants(order: int) -> CumulantSeq:
    """Free cumulants of the classical sum of two independent semicircles,
    each scaled to variance 1/2: odd orders vanish, even order n carries
    2 (1/2)^(n/2) times the bipartite-connected pairing count of [n]."""
    values = []
    for n in range(1, order + 1):
        if n % 2:
            values.append(Fraction(0))
        else:
            values.append(2 * Fraction(1, 2) ** (n // 2) * count_bicon_pairs(n))
    return CumulantSeq(tuple(values))


def z_free_cumulants(q: Rational, order: int) -> CumulantSeq:
    """Free cumulants of the limit law: mixing the semicircle (weight
    sqrt(1-q)) with the classical double semicircle (weight sqrt(q)) leaves
    exactly 1 at order 2 and 2 (q/2)^(n/2) |bipartite-connected pairings|
    at higher even orders."""
    q = Fraction(q)
    if not 0 <= q < 1:
        raise ValueError("q must lie in [0, 1)")
    values = []
    for n in range(1, order + 1):
        if n % 2:
            values.append(Fraction(0))
        elif n == 2:
            values.append(Fraction(1))
        else:
            values.append(2 * (q / 2) ** (n // 2) * count_bicon_pairs(n))
    return CumulantSeq(tuple(values))


def _composition_sum(moments: list[Fraction], parts: int, total: int) -> Fraction:
    """Sum over (k_1, ..., k_parts) >= 0 with sum `total` of the products
    moments[k_1] * ... * moments[k_parts]."""
    row = [Fraction(0)] * (total + 1)
    row[0] = Fraction(1)
    for _ in range(parts):
        nxt = [Fraction(0)] * (total + 1)
        for t in range(total + 1):
            acc = Fraction(0)
            for i in range(t + 1):
                if row[t - i] and moments[i]:
                    acc += moments[i] * row[t - i]
            nxt[t] = acc
        row = nxt
    return row[total]


def mu_q_moments_recurrence(q: Rational, order: int) -> MomentSeq:
    """Moments of the limit law by the direct recurrence: odd moments vanish,
    the second moment is 1, and each higher even moment splits over the size
    2j of the block containing the first position, weighted by the order-2j
    free cumulant and a product of lower moments filling the gaps."""
    q = Fraction(q)
    if not 0 <= q < 1:
        raise ValueError("q must lie in [0, 1)")
    if order < 2:
        raise ValueError("order must be >= 2")
    table: list[Fraction] = [Fraction(1)]  # order 0
    for n in range(1, order + 1):
        if n % 2:
            table.append(Fraction(0))
            continue
        if n == 2:
            table.append(Fraction(1))
            continue
        total = _composition_sum(table, 2, n - 2)
        for j in range(2, n // 2 + 1):
            weight = 2 * (q / 2) ** j * count_bicon_pairs(2 * j)
            if weight:
                total += weight * _composition_sum(table, 2 * j, n - 2 * j)
        table.append(total)
    return MomentSeq(tuple(table[1:]))


def mu_q_moments_cumulant_route(q: Rational, order: int) -> MomentSeq:
    """Moments of the limit law through the generic free moment-cumulant
    transform; the independent cross-check of the recurrence."""
    return moments_from_free_cumulants(z_free_cumulants(q, order))


def semicircle_moments(order: int) -> MomentSeq:
    """Centred unit-variance semicircle: Catalan numbers at even orders."""
    values = tuple(
        Fraction(catalan_number(n // 2)) if n % 2 == 0 else Fraction(0)
        for n in range(1, order + 1)
    )
    return MomentSeq(values)
