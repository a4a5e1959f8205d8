from dataclasses import dataclass
from math import log, sqrt


@dataclass(frozen=True)
class EntropyReport:
    D_total: float
    D_core: float
    tail_mass: float
    tail_second_moment: float
    T_used: float

    @property
    def D_tail(self) -> float:
        return self.D_total - self.D_core


@dataclass(frozen=True)
class MatchedMomentCheck:
    """D(R) against the moment-matched normal and the reconstruction of D(R || Z) from it"""

    D_matched: float
    reconstruction: float
    mean: float
    variance: float


@dataclass(frozen=True)
class TailSplit:
    s: float
    n: int
    rho_n: float

    @property
    def T(self) -> float:
        if self.s == 2:
            return sqrt(self.rho_n)
        return sqrt((self.s - 2) * log(self.n) + self.s * log(log(self.n)) + self.rho_n)
