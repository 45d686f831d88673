"""Exact finite-n moments of normalised sums of tensor products.

The object of study is S_n = (1/(delta sqrt(n))) * sum of n centred tensor
products a_k (x) b_k of free identically distributed legs.  Its m-th moment
at finite n is an exact rational combination

    (1/delta^m) * sum over partitions p of [m] of
        phi(p) * n (n-1) ... (n - |p| + 1) / n^(m/2),

where phi(p) is the expectation of a product of m centred tensor factors
coloured by the blocks of p.  The table {p -> phi(p)} is computed by two
independent routes:

* the tensor route expands every centred factor binomially and factorises
  each resulting word across the two tensor legs, evaluating one coloured
  free moment per leg;
* the bi-free route sums vertically split alternating bi-non-crossing
  cumulants over all sign words, with the vanishing rules (mixed colours,
  scalars inside non-singleton blocks) doing the pruning.

Even-order moments are plain Fractions.  For odd m the value carries a
single factor 1/sqrt(delta^2 n); it is returned as a :class:`SqrtQuotient`
so no irrational arithmetic ever happens.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .bichromatic import LEFT, RIGHT, BNCPartition, enumerate_bnc_vs_alt
from .cumulants import (
    MomentSeq,
    Operand,
    Rational,
    free_coloured_moment,
    kappa_bnc_vs,
)
from .limits import InsufficientMomentsError, ResourceLimitError
from .limit_law import mu_q_moments_recurrence
from .partitions import (
    SetPartition,
    enumerate_pair_noncrossing,
    enumerate_partitions,
    is_refinement,
)

DEFAULT_ORDER_CAP = 8


@dataclass(frozen=True)
class TensorCLTInput:
    """Leg distributions and derived parameters of the normalised tensor sum.

    Both legs share the mean and the variance; the tensor variance delta^2 and
    the interpolation parameter q are determined by them and are validated on
    construction.
    """

    ms_a: MomentSeq
    ms_b: MomentSeq
    lam: Fraction
    sigma2: Fraction
    delta2: Fraction
    q: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lam", Fraction(self.lam))
        object.__setattr__(self, "sigma2", Fraction(self.sigma2))
        object.__setattr__(self, "delta2", Fraction(self.delta2))
        object.__setattr__(self, "q", Fraction(self.q))
        if self.ms_a.moment(1) != self.lam or self.ms_b.moment(1) != self.lam:
            raise ValueError("first moments of both legs must equal lam")
        if self.ms_a.order < 2 or self.ms_b.order < 2:
            raise InsufficientMomentsError("legs need moments at least to order 2")
        var_a = self.ms_a.moment(2) - self.lam**2
        var_b = self.ms_b.moment(2) - self.lam**2
        if var_a != self.sigma2 or var_b != self.sigma2:
            raise ValueError("both legs must have variance sigma2")
        if self.sigma2 == 0:
            raise ValueError("sigma2 must be non-zero")
        if self.delta2 != self.sigma2 * (self.sigma2 + 2 * self.lam**2):
            raise ValueError("delta2 must equal sigma2 (sigma2 + 2 lam^2)")
        if self.q != 2 * self.lam**2 / (self.sigma2 + 2 * self.lam**2):
            raise ValueError("q must equal 2 lam^2 / (sigma2 + 2 lam^2)")
        if not 0 <= self.q < 1:
            raise ValueError("q must lie in [0, 1)")

    @classmethod
    def from_legs(cls, ms_a: MomentSeq, ms_b: MomentSeq) -> "TensorCLTInput":
        """Derive lam, sigma2, delta2 and q from the leg moments."""
        lam = ms_a.moment(1)
        sigma2 = ms_a.moment(2) - lam**2
        delta2 = sigma2 * (sigma2 + 2 * lam**2)
        q = 2 * lam**2 / (sigma2 + 2 * lam**2)
        return cls(ms_a, ms_b, lam, sigma2, delta2, q)

    @property
    def max_order(self) -> int:
        return min(self.ms_a.order, self.ms_b.order)


@dataclass(frozen=True)
class SqrtQuotient:
    """An exact value of the form coeff / sqrt(base), base a positive
    rational.  Odd-order moments live here."""

    coeff: Fraction
    base: Fraction

    def __float__(self) -> float:
        return float(self.coeff) / math.sqrt(float(self.base))

    def __abs__(self) -> float:
        return abs(float(self))


ExactMoment = Fraction | SqrtQuotient


def _falling(n: int, k: int) -> int:
    return math.perm(n, k) if k <= n else 0


class _MomentEngine:
    """Per-input cache of the {partition -> phi(partition)} tables for both
    routes.  The tables do not depend on n, so each (input, m, route) is
    computed once."""

    def __init__(self, inp: TensorCLTInput):
        self.inp = inp
        self._tensor_tables: dict[int, dict[SetPartition, Fraction]] = {}
        self._bifree_tables: dict[int, dict[SetPartition, Fraction]] = {}

    # -- route 1: binomial expansion + tensor factorisation ----------------

    def tensor_table(self, m: int) -> dict[SetPartition, Fraction]:
        if m not in self._tensor_tables:
            self._tensor_tables[m] = {
                part: self._phi_tensor(part) for part in enumerate_partitions(m)
            }
        return self._tensor_tables[m]

    def _phi_tensor(self, part: SetPartition) -> Fraction:
        m = part.n
        colours = part.block_index()
        lam2 = self.inp.lam**2
        total = Fraction(0)
        for mask in range(1 << m):
            dropped = m - mask.bit_count()
            if dropped and not lam2:
                continue
            word = tuple(colours[k] for k in range(m) if mask >> k & 1)
            weight = (-lam2) ** dropped
            total += (
                weight
                * free_coloured_moment(word, self.inp.ms_a)
                * free_coloured_moment(word, self.inp.ms_b)
            )
        return total

    # -- route 2: vertically split bi-free cumulants over sign words -------

    def bifree_table(self, m: int) -> dict[SetPartition, Fraction]:
        if m not in self._bifree_tables:
            self._bifree_tables[m] = self._build_bifree_table(m)
        return self._bifree_tables[m]

    def _build_bifree_table(self, m: int) -> dict[SetPartition, Fraction]:
        group_sums: dict[SetPartition, Fraction] = {}
        for tau in enumerate_bnc_vs_alt(m):
            factor_part = _factor_partition(tau.partition, m)
            contribution = _sign_word_sum(
                tau, factor_part.block_index(), self.inp, prune=True
            )
            if contribution:
                group_sums[factor_part] = (
                    group_sums.get(factor_part, Fraction(0)) + contribution
                )
        table: dict[SetPartition, Fraction] = {}
        for part in enumerate_partitions(m):
            acc = Fraction(0)
            for factor_part, value in group_sums.items():
                if is_refinement(factor_part, part):
                    acc += value
            table[part] = acc
        return table

    # -- combining a table into a moment ------------------------------------

    def moment_from_table(
        self, table: dict[SetPartition, Fraction], m: int, n: int
    ) -> ExactMoment:
        numerator = Fraction(0)
        for part, phi in table.items():
            if phi:
                numerator += phi * _falling(n, len(part.blocks))
        half = m // 2
        scale = self.inp.delta2**half * Fraction(n) ** half
        if m % 2 == 0:
            return numerator / scale
        return SqrtQuotient(numerator / scale, self.inp.delta2 * n)


def _factor_partition(position_partition: SetPartition, m: int) -> SetPartition:
    """Finest partition of the m tensor factors that colours every block of a
    position partition on [2m] monochromatically (factor k owns positions
    2k-1 and 2k); computed by union-find over the factors."""
    parent = list(range(m + 1))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for block in position_partition.blocks:
        factors = [(p + 1) // 2 for p in block]
        for other in factors[1:]:
            ra, rb = find(factors[0]), find(other)
            if ra != rb:
                parent[ra] = rb
    return SetPartition.from_labels([find(k) for k in range(1, m + 1)])


def _sign_word_sum(
    tau: BNCPartition, colours: tuple[int, ...], inp: TensorCLTInput, prune: bool
) -> Fraction:
    """Sum of kappa_bnc_vs over all sign words: each tensor factor is either
    the variable pair (colour from the compatible colouring) or the scalar
    pair (-lam, +lam).

    With ``prune`` set, sign words placing a scalar inside a non-singleton
    block are skipped; those evaluate to zero anyway (tested both ways).
    """
    m = len(colours)
    lam = inp.lam
    var_left = [Operand(LEFT, c) for c in colours]
    var_right = [Operand(RIGHT, c) for c in colours]
    scalar_left = Operand(LEFT, value=-lam)
    scalar_right = Operand(RIGHT, value=lam)

    forced = 0  # factors whose positions touch a non-singleton block
    if prune:
        for block in tau.partition.blocks:
            if len(block) > 1:
                for p in block:
                    forced |= 1 << ((p + 1) // 2 - 1)

    total = Fraction(0)
    for mask in range(1 << m):  # bit k set: factor k+1 becomes the scalar pair
        if prune and mask & forced:
            continue
        ops = []
        for k in range(m):
            if mask >> k & 1:
                ops.append(scalar_left)
                ops.append(scalar_right)
            else:
                ops.append(var_left[k])
                ops.append(var_right[k])
        total += kappa_bnc_vs(tau, ops, inp.ms_a, inp.ms_b)
    return total


@lru_cache(maxsize=None)
def _engine(inp: TensorCLTInput) -> _MomentEngine:
    return _MomentEngine(inp)


def _check_args(m: int, n: int, inp: TensorCLTInput, order_cap: int) -> None:
    if n < 1:
        raise ValueError("n must be >= 1")
    if m < 0:
        raise ValueError("m must be >= 0")
    if m > order_cap:
        raise ResourceLimitError(
            f"moment order {m} exceeds the cap {order_cap} "
            f"(the sum runs over Bell(m) partitions); raise order_cap to override"
        )
    if m > inp.max_order:
        raise InsufficientMomentsError(
            f"order {m} exceeds the supplied leg moments (order {inp.max_order})"
        )


def exact_moment_Sn(
    m: int, n: int, inp: TensorCLTInput, *, order_cap: int = DEFAULT_ORDER_CAP
) -> ExactMoment:
    """m-th moment of S_n by the tensor-factorisation route, exactly."""
    _check_args(m, n, inp, order_cap)
    if m == 0:
        return Fraction(1)
    eng = _engine(inp)
    return eng.moment_from_table(eng.tensor_table(m), m, n)


def exact_moment_Sn_bifree(
    m: int, n: int, inp: TensorCLTInput, *, order_cap: int = DEFAULT_ORDER_CAP
) -> ExactMoment:
    """m-th moment of S_n by the bi-free cumulant route; must agree with
    :func:`exact_moment_Sn` exactly."""
    _check_args(m, n, inp, order_cap)
    if m == 0:
        return Fraction(1)
    eng = _engine(inp)
    return eng.moment_from_table(eng.bifree_table(m), m, n)


@lru_cache(maxsize=None)
def _nc2_count(m: int) -> int:
    return sum(1 for _ in enumerate_pair_noncrossing(m))


def centred_limit_moment(m: int, var_a: Rational, var_b: Rational) -> Fraction:
    """Limit moment of the unnormalised centred tensor sum: zero at odd
    orders, the non-crossing pairing count times the variance powers at even
    orders."""
    if m < 1:
        raise ValueError("m must be >= 1")
    if m % 2:
        return Fraction(0)
    half = m // 2
    return _nc2_count(m) * Fraction(var_a) ** half * Fraction(var_b) ** half


@dataclass(frozen=True)
class ConvergenceRow:
    n: int
    value: ExactMoment
    limit: Fraction
    gap: float


def convergence_table(
    m: int,
    n_values: list[int],
    inp: TensorCLTInput,
    *,
    order_cap: int = DEFAULT_ORDER_CAP,
) -> list[ConvergenceRow]:
    """Exact moments of S_n against the limit-law moment, with float gaps."""
    limit_order = max(m, 2)
    limit = mu_q_moments_recurrence(inp.q, limit_order).moment(m) if m >= 1 else Fraction(1)
    rows = []
    for n in n_values:
        value = exact_moment_Sn(m, n, inp, order_cap=order_cap)
        gap = abs(float(value) - float(limit))
        rows.append(ConvergenceRow(n=n, value=value, limit=limit, gap=gap))
    return rows
