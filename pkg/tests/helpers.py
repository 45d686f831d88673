"""Reference leg distributions shared by the engine and acceptance tests."""

from fractions import Fraction as Fr

from bifree.cumulants import CumulantSeq, MomentSeq, moments_from_free_cumulants
from bifree.limit_law import semicircle_moments
from bifree.tensor_clt import TensorCLTInput


def semicircle_legs(order: int = 8) -> TensorCLTInput:
    """Centred unit-variance semicircle on both legs (lam = 0, q = 0)."""
    ms = semicircle_moments(order)
    return TensorCLTInput.from_legs(ms, ms)


def bernoulli_legs(order: int = 8) -> TensorCLTInput:
    """Two-point mass at 0 and 2 on both legs: lam = 1, sigma^2 = 1, q = 2/3."""
    ms = MomentSeq.from_rationals([Fr(2) ** (k - 1) for k in range(1, order + 1)])
    return TensorCLTInput.from_legs(ms, ms)


def asymmetric_legs(order: int = 8) -> TensorCLTInput:
    """Different leg distributions with equal mean 1/2 and variance 1:
    a shifted semicircle against a two-point mass (q = 1/3)."""
    kappas = (Fr(1, 2), Fr(1)) + (Fr(0),) * (order - 2)
    ms_a = moments_from_free_cumulants(CumulantSeq(kappas))
    ms_b = MomentSeq.from_rationals(
        [(Fr(-1, 2) ** k + Fr(3, 2) ** k) / 2 for k in range(1, order + 1)]
    )
    return TensorCLTInput.from_legs(ms_a, ms_b)


def shifted_semicircle_legs(lam, sigma2, order: int = 8) -> TensorCLTInput:
    """Semicircle of the given variance shifted by lam, on both legs."""
    kappas = (Fr(lam), Fr(sigma2)) + (Fr(0),) * (order - 2)
    ms = moments_from_free_cumulants(CumulantSeq(kappas))
    return TensorCLTInput.from_legs(ms, ms)


def reference_inputs(order: int = 8) -> list[TensorCLTInput]:
    return [semicircle_legs(order), bernoulli_legs(order), asymmetric_legs(order)]
