from collections.abc import Iterable, Mapping
from fractions import Fraction
from functools import lru_cache
from typing import Any, Union

import sympy as sp

from src.algebra.multiindex import MultiIndex

Monomial = tuple[MultiIndex, ...]
Operand = Union["CumulantPolynomial", int, Fraction]

_INDEX_OF_SYMBOL: dict[sp.Symbol, MultiIndex] = {}


@lru_cache(maxsize=None)
def cumulant_symbol(nu: MultiIndex) -> sp.Symbol:
    """The sympy symbol standing for γ_ν"""
    symbol = sp.Symbol(nu.label())
    _INDEX_OF_SYMBOL[symbol] = nu
    return symbol


def to_sympy(value: int | Fraction) -> sp.Rational:
    if isinstance(value, Fraction):
        return sp.Rational(value.numerator, value.denominator)
    return sp.Integer(value)


def from_sympy(value: sp.Expr) -> Any:
    """Exact sympy numbers come back as Fraction, inexact ones as float"""
    if value.is_Rational:
        return Fraction(int(value.p), int(value.q))
    return float(value)


class CumulantPolynomial:
    """Polynomial with rational coefficients in formal cumulant symbols γ_ν.

    The sympy expression is kept expanded, so equality and zero tests are structural.
    """

    __slots__ = ("expr",)

    def __init__(self, expr: sp.Expr | int | Fraction = 0) -> None:
        if isinstance(expr, (int, Fraction)):
            expr = to_sympy(expr)
        self.expr: sp.Expr = sp.expand(expr)

    @classmethod
    def variable(cls, symbol: MultiIndex) -> "CumulantPolynomial":
        return cls(cumulant_symbol(symbol))

    @classmethod
    def constant(cls, value: int | Fraction) -> "CumulantPolynomial":
        return cls(value)

    @staticmethod
    def _lift(other: Operand) -> sp.Expr:
        if isinstance(other, CumulantPolynomial):
            return other.expr
        if isinstance(other, (int, Fraction)):
            return to_sympy(other)
        return NotImplemented

    def __add__(self, other: Operand) -> "CumulantPolynomial":
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return CumulantPolynomial(self.expr + other)

    __radd__ = __add__

    def __neg__(self) -> "CumulantPolynomial":
        return CumulantPolynomial(-self.expr)

    def __sub__(self, other: Operand) -> "CumulantPolynomial":
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return CumulantPolynomial(self.expr - other)

    def __rsub__(self, other: Operand) -> "CumulantPolynomial":
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return CumulantPolynomial(other - self.expr)

    def __mul__(self, other: Operand) -> "CumulantPolynomial":
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return CumulantPolynomial(self.expr * other)

    __rmul__ = __mul__

    def __truediv__(self, other: int | Fraction) -> "CumulantPolynomial":
        return CumulantPolynomial(self.expr / to_sympy(other))

    def __pow__(self, exponent: int) -> "CumulantPolynomial":
        if exponent < 0:
            raise ValueError(f"Negative powers are not polynomials: {exponent}")
        return CumulantPolynomial(self.expr**exponent)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = CumulantPolynomial(other)
        if not isinstance(other, CumulantPolynomial):
            return NotImplemented
        return self.expr == other.expr

    def __hash__(self) -> int:
        return hash(self.expr)

    def __bool__(self) -> bool:
        return self.expr != 0

    def __repr__(self) -> str:
        return f"CumulantPolynomial({self.to_text()!r})"

    @property
    def generators(self) -> list[sp.Symbol]:
        return sorted(self.expr.free_symbols, key=lambda s: _INDEX_OF_SYMBOL[s])

    @property
    def symbols(self) -> set[MultiIndex]:
        return {_INDEX_OF_SYMBOL[s] for s in self.expr.free_symbols}

    def as_poly(self) -> sp.Poly:
        generators = self.generators
        if not generators:
            raise ValueError(f"{self.to_text()} is a constant, it has no generators")
        return sp.Poly(self.expr, *generators, domain=sp.QQ)

    @property
    def terms(self) -> dict[Monomial, Fraction]:
        """Monomials as sorted symbol tuples, repeated according to their power"""
        if not self.expr.free_symbols:
            return {(): from_sympy(self.expr)} if self else {}

        poly = self.as_poly()
        indices = [_INDEX_OF_SYMBOL[s] for s in poly.gens]
        return {
            tuple(nu for nu, power in zip(indices, powers) for _ in range(power)): from_sympy(
                poly.domain.to_sympy(coefficient)
            )
            for powers, coefficient in poly.terms()
        }

    def evaluate(self, values: Mapping[MultiIndex, Any]) -> Any:
        """Substitute cumulant values, absent symbols count as zero"""
        substitution = {
            s: to_sympy(v) if isinstance(v, (int, Fraction)) else sp.Float(v)
            for s, v in (
                (s, values.get(_INDEX_OF_SYMBOL[s], 0)) for s in self.expr.free_symbols
            )
        }
        return from_sympy(self.expr.subs(substitution))

    def restrict(self, zero_symbols: Iterable[MultiIndex]) -> "CumulantPolynomial":
        """Drop every monomial containing one of the given symbols"""
        return CumulantPolynomial(
            self.expr.subs({cumulant_symbol(nu): 0 for nu in zero_symbols})
        )

    def to_text(self) -> str:
        return sp.sstr(self.expr)
