from fractions import Fraction

import pytest
import sympy as sp

from src.algebra.cumulant_polynomial import CumulantPolynomial
from src.algebra.cumulants import (
    CumulantSet,
    CumulantTensor,
    cumulants_to_moments,
    moments_to_cumulants,
)
from src.algebra.multiindex import MultiIndex
from src.algebra.scalars import parse_number
from src.core.exceptions import InsufficientCumulants, NonStandardized
from src.distributions.distributions.centered_exponential import (
    CenteredExponentialDistribution,
)
from src.distributions.distributions.gaussian import GaussianDistribution
from src.distributions.distributions.gaussian_mixture import GaussianMixtureDistribution
from src.distributions.distributions.laplace import LaplaceDistribution
from src.distributions.distributions.uniform import UniformDistribution


def test_centered_exponential_cumulants():
    # cumulants of Exp(1) are (r - 1)!
    c = CenteredExponentialDistribution().cumulants(6)
    assert [c[r] for r in range(3, 7)] == [2, 6, 24, 120]


def test_laplace_and_uniform_cumulants():
    laplace = LaplaceDistribution().cumulants(6)
    assert laplace[3] == 0
    assert laplace[4] == 3
    assert laplace[6] == 30

    uniform = UniformDistribution().cumulants(6)
    assert uniform[3] == 0
    assert uniform[4] == Fraction(-6, 5)
    assert uniform[6] == Fraction(48, 7)


def test_gaussian_cumulants_vanish():
    c = GaussianDistribution().cumulants(8)
    assert all(c[r] == 0 for r in range(3, 9))


def test_zero_fourth_cumulant_mixture():
    c = GaussianMixtureDistribution.zero_fourth_cumulant().cumulants(6)
    assert c[3] == 0
    assert c[4] == 0
    # γ_6 = -2 a⁶ / 9 with a = 6/5
    assert c[6] == Fraction(-2, 9) * Fraction(6, 5) ** 6
    assert float(c[6]) == pytest.approx(-0.663552)


def test_moment_cumulant_round_trip():
    c = CumulantSet(max_order=6, gamma={3: Fraction(1, 2), 4: -1, 5: Fraction(3, 7), 6: 2})
    moments = cumulants_to_moments(c)
    assert moments[:2] == [0, 1]
    assert moments_to_cumulants(moments) == c


def test_non_standardized_moments_are_rejected():
    with pytest.raises(NonStandardized):
        moments_to_cumulants([0, 2, 0, 12])
    with pytest.raises(NonStandardized):
        moments_to_cumulants([0.1, 1.0, 0.0])


def test_float_moments_within_tolerance():
    c = moments_to_cumulants([1e-14, 1.0 + 1e-14, 0.5, 3.0])
    assert c[3] == pytest.approx(0.5)


def test_missing_orders():
    c = CumulantSet(max_order=4, gamma={3: 1})
    assert c[1] == 0 and c[2] == 1 and c[4] == 0
    with pytest.raises(InsufficientCumulants):
        c[5]
    with pytest.raises(ValueError):
        CumulantSet(max_order=3, gamma={4: 1})


def test_product_embedding():
    tensor = CumulantTensor.product_embedding(
        [CumulantSet(max_order=4, gamma={3: 2, 4: 6}), None]
    )
    assert tensor.dimension == 2
    assert tensor[MultiIndex((3, 0))] == 2
    assert tensor[MultiIndex((0, 3))] == 0
    assert tensor[MultiIndex((2, 1))] == 0
    assert tensor[MultiIndex((4, 0))] == 6


def test_parse_number():
    assert parse_number("3/4") == Fraction(3, 4)
    assert parse_number("0.25") == Fraction(1, 4)
    assert parse_number(2) == 2
    with pytest.raises(ValueError):
        parse_number("two")


def test_cumulant_polynomial_arithmetic():
    g3 = CumulantPolynomial.variable(MultiIndex((3,)))
    g4 = CumulantPolynomial.variable(MultiIndex((4,)))

    expression = (g3 + g4) ** 2 - g3 * g3 - 2 * g3 * g4
    assert expression == g4**2
    assert (g3 - g3) == 0
    assert not (g3 - g3)
    assert (g3 * Fraction(1, 12)).evaluate({MultiIndex((3,)): 6}) == Fraction(1, 2)
    assert (g3 * g4 + 1).restrict({MultiIndex((3,))}) == 1


def test_cumulant_polynomial_is_rational_sympy_polynomial():
    nu3, nu4 = MultiIndex((3,)), MultiIndex((4,))
    g3 = CumulantPolynomial.variable(nu3)
    g4 = CumulantPolynomial.variable(nu4)

    c2 = g4**2 / 48 + g3 * g4 * Fraction(1, 3) + 2
    poly = c2.as_poly()
    assert poly.domain == sp.QQ
    assert poly.total_degree() == 2
    assert c2.terms == {(nu4, nu4): Fraction(1, 48), (nu3, nu4): Fraction(1, 3), (): 2}
    assert c2.symbols == {nu3, nu4}
    assert (g3**2 / 12).to_text() == "γ3**2/12"
    assert (g3**2 / 12).evaluate({nu3: 0.5}) == pytest.approx(1 / 48)
    assert CumulantPolynomial(Fraction(2, 3)).terms == {(): Fraction(2, 3)}
    assert CumulantPolynomial().terms == {}
