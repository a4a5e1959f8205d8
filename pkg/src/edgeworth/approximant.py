from dataclasses import dataclass

import numpy as np

from src.algebra.cumulants import CumulantSet
from src.edgeworth.corrections import HermiteBasisFunction, build_Qk, build_qk
from src.utils.normal_utils import std_normal_cdf, std_normal_pdf


@dataclass(frozen=True)
class EdgeworthApproximant:
    """φ_m(x) = φ(x) + Σ_{k=1}^{m-2} q_k(x) n^{-k/2} and its integral Φ_m.

    φ_m is a signed approximant and may dip below zero far in the tails, nothing is clipped.
    """

    m: int
    q: tuple[HermiteBasisFunction, ...]
    Q: tuple[HermiteBasisFunction, ...]

    def __post_init__(self) -> None:
        if self.m < 2:
            raise ValueError(f"Approximant order m must be >= 2, got {self.m}")
        if len(self.q) != self.m - 2 or len(self.Q) != self.m - 2:
            raise ValueError(f"Approximant of order {self.m} needs {self.m - 2} corrections")

    @classmethod
    def from_cumulants(cls, c: CumulantSet, m: int | None = None) -> "EdgeworthApproximant":
        m = c.max_order if m is None else m
        c.require(m)
        truncated = c.truncated(m)
        return cls(
            m=m,
            q=tuple(build_qk(truncated, k) for k in range(1, m - 1)),
            Q=tuple(build_Qk(truncated, k) for k in range(1, m - 1)),
        )

    def density(self, n: int, x: float | np.ndarray) -> float | np.ndarray:
        return eval_phi_m(self, n, x)

    def cdf(self, n: int, x: float | np.ndarray) -> float | np.ndarray:
        return eval_Phi_m(self, n, x)


def _check_n(n: int) -> None:
    if n < 1:
        raise ValueError(f"Number of summands must be >= 1, got {n}")


def eval_phi_m(a: EdgeworthApproximant, n: int, x: float | np.ndarray) -> float | np.ndarray:
    _check_n(n)
    value = std_normal_pdf(x)
    for k, qk in enumerate(a.q, start=1):
        value = value + qk(x) * n ** (-k / 2)
    return value


def eval_Phi_m(a: EdgeworthApproximant, n: int, x: float | np.ndarray) -> float | np.ndarray:
    _check_n(n)
    value = std_normal_cdf(x)
    for k, Qk in enumerate(a.Q, start=1):
        # the φ factor underflows to 0 for infinite x, avoid inf * 0
        correction = np.where(np.isfinite(x), Qk(np.where(np.isfinite(x), x, 0.0)), 0.0)
        value = value + correction * n ** (-k / 2)
    return value if np.ndim(value) else float(value)
