import math

import numpy as np
import pytest

from src.modules.helmholtz.domain.entities.medium import EigenPair, MediumConfig, SignClass
from src.modules.helmholtz.domain.exceptions import ConfigError, DomainError, NumericalError
from src.modules.helmholtz.infrastructure.services.spectral_1d.eigenpairs import (
    classify_lambda0,
    count_interior_zeros_analytic,
    eigen_equation_quotient,
    eigenfunction_derivative,
    eigenfunction_eval,
    eigenpairs_within,
    eigenvalue_bracket,
    growth_constant,
    interface_fluxes,
    solve_eigenvalue,
    spectrum,
    tau_asymptotic,
    weyl_constant,
    weyl_count,
    weyl_slope,
)
from src.modules.helmholtz.infrastructure.services.spectral_1d.inner_products import (
    a_inner_quadrature,
    c_inner_quadrature,
    h_gram,
    h_inner,
    h_inner_quadrature,
    stiffness_gram,
    stiffness_inner,
)


def test_medium_rejects_same_sign_sigma():
    with pytest.raises(ConfigError):
        MediumConfig(sigma_minus=1.0)
    with pytest.raises(ConfigError):
        MediumConfig(a_minus=1.0)


def test_classification_trichotomy(medium, symmetric_medium, positive_medium):
    """Знак lambda_0 определяется отношением sigma_+ a_- / (a_+ sigma_-)."""
    assert classify_lambda0(medium) is SignClass.NEGATIVE
    assert classify_lambda0(symmetric_medium) is SignClass.ZERO
    assert classify_lambda0(positive_medium) is SignClass.POSITIVE

    assert solve_eigenvalue(medium, 0).lam < 0
    assert solve_eigenvalue(symmetric_medium, 0).lam == 0.0
    assert solve_eigenvalue(positive_medium, 0).lam > 0


def test_first_positive_eigenvalue_bracket(medium):
    pair = solve_eigenvalue(medium, 1)
    assert math.pi**2 / 25 < pair.lam < 9 * math.pi**2 / 100


@pytest.mark.parametrize("j", range(-20, 21))
def test_eigenvalue_inside_bracket_and_solves_equation(medium, j):
    pair = solve_eigenvalue(medium, j)
    lo, hi = eigenvalue_bracket(medium, j)
    assert lo < pair.lam < hi
    assert pair.alpha > 0
    if pair.sign_class is not SignClass.ZERO:
        assert abs(eigen_equation_quotient(medium, pair) - 1.0) < 1e-10


def test_quotient_undefined_for_zero_class(symmetric_medium):
    pair = solve_eigenvalue(symmetric_medium, 0)
    with pytest.raises(DomainError):
        eigen_equation_quotient(symmetric_medium, pair)


def test_zero_class_is_tent(symmetric_medium):
    """При lambda_0 = 0 собственная функция - нормированная "палатка"."""
    pair = solve_eigenvalue(symmetric_medium, 0)
    assert pair.alpha == pytest.approx(math.sqrt(3.0 / 10.0), rel=1e-14)
    values = eigenfunction_eval(pair, symmetric_medium, np.array([-2.5, 0.0, 2.5]))
    np.testing.assert_allclose(values, pair.alpha * np.array([0.5, 1.0, 0.5]), rtol=1e-14)


def test_zero_class_normalization_scales_with_weight():
    """Удвоение c в классе Zero уменьшает alpha^2 вдвое."""
    base = solve_eigenvalue(MediumConfig(sigma_minus=-1.0), 0)
    heavy = solve_eigenvalue(MediumConfig(sigma_minus=-1.0, c_plus=2.0, c_minus=2.0), 0)
    assert heavy.alpha**2 == pytest.approx(0.5 * base.alpha**2, rel=1e-14)


@pytest.mark.parametrize("j", [-3, -1, 0, 1, 2, 7])
def test_eigenfunction_shape(medium, j):
    pair = solve_eigenvalue(medium, j)
    ends = eigenfunction_eval(pair, medium, np.array([medium.a_minus, medium.a_plus]))
    assert np.all(ends == 0.0)
    assert float(eigenfunction_eval(pair, medium, 0.0)) == pytest.approx(pair.alpha, rel=1e-14)
    left = float(eigenfunction_eval(pair, medium, -1e-12))
    assert left == pytest.approx(pair.alpha, rel=1e-9)


def test_eval_outside_domain_raises(medium):
    pair = solve_eigenvalue(medium, 1)
    with pytest.raises(DomainError):
        eigenfunction_eval(pair, medium, medium.a_plus + 1.0)


@pytest.mark.parametrize("j", range(-5, 6))
def test_flux_continuity(medium, j):
    """sigma_+ phi'(0+) = sigma_- phi'(0-) по формулам и по конечным разностям."""
    pair = solve_eigenvalue(medium, j)
    flux_minus, flux_plus = interface_fluxes(pair, medium)
    assert abs(flux_plus - flux_minus) <= 1e-9 * max(1.0, abs(flux_plus))

    delta = 1e-5
    phi = lambda x: float(eigenfunction_eval(pair, medium, x))  # noqa: E731
    right = (-3 * phi(0.0) + 4 * phi(delta) - phi(2 * delta)) / (2 * delta)
    left = (3 * phi(-1e-300) - 4 * phi(-delta) + phi(-2 * delta)) / (2 * delta)
    assert medium.sigma_plus * right == pytest.approx(medium.sigma_minus * left, rel=1e-6, abs=1e-8)


def test_derivative_matches_finite_differences(medium):
    pair = solve_eigenvalue(medium, -2)
    x = np.linspace(-4.5, 4.5, 19)
    x = x[np.abs(x) > 0.1]
    step = 1e-6
    numeric = (eigenfunction_eval(pair, medium, x + step) - eigenfunction_eval(pair, medium, x - step)) / (
        2 * step
    )
    np.testing.assert_allclose(eigenfunction_derivative(pair, medium, x), numeric, rtol=1e-6, atol=1e-8)


@pytest.mark.parametrize(
    ("j", "expected"),
    [(3, (0, 3)), (1, (0, 1)), (-2, (2, 0)), (0, (0, 0))],
)
def test_analytic_zero_counts(medium, j, expected):
    pair = solve_eigenvalue(medium, j)
    assert count_interior_zeros_analytic(pair, medium) == expected


def test_zero_counts_match_sampled_sign_changes(medium):
    pair = solve_eigenvalue(medium, 4)
    x = np.linspace(medium.a_minus, medium.a_plus, 20001)[1:-1]
    values = eigenfunction_eval(pair, medium, x)
    on_plus = values[x > 0]
    on_minus = values[x < 0]
    assert int(np.count_nonzero(np.diff(np.sign(on_plus)))) == 4
    assert int(np.count_nonzero(np.diff(np.sign(on_minus)))) == 0


def test_spectrum_is_ordered(medium):
    pairs = spectrum(medium, -3, 3)
    lams = [p.lam for p in pairs]
    assert [p.index for p in pairs] == list(range(-3, 4))
    assert all(a < b for a, b in zip(lams, lams[1:]))
    assert lams[0] < 0 < lams[-1]


def test_spectrum_singleton_and_bad_range(medium):
    assert len(spectrum(medium, 0, 0)) == 1
    with pytest.raises(DomainError):
        spectrum(medium, 2, 1)


@pytest.mark.parametrize("j", [-50, 50])
def test_tau_asymptotics_far_out(medium, j):
    pair = solve_eigenvalue(medium, j)
    assert abs(pair.tau - tau_asymptotic(medium, j)) < 1e-3 * pair.tau


def test_tau_asymptotics_mirror_symmetric(symmetric_medium):
    for j in (1, 5, 20):
        assert tau_asymptotic(symmetric_medium, j) == pytest.approx(
            tau_asymptotic(symmetric_medium, -j), rel=1e-15
        )
        assert solve_eigenvalue(symmetric_medium, j).lam == pytest.approx(
            -solve_eigenvalue(symmetric_medium, -j).lam, rel=1e-12
        )


def test_tau_asymptotics_undefined_at_zero(medium):
    with pytest.raises(DomainError):
        tau_asymptotic(medium, 0)


def test_weyl_count_matches_slope(medium):
    """count(Lambda) / sqrt(Lambda) стремится к (k_+ a_+ + k_- |a_-|) / pi."""
    Lambda = 1e4
    count = weyl_count(medium, Lambda)
    slope = weyl_slope(medium)
    assert abs(count / math.sqrt(Lambda) - slope) <= 0.05 * slope


def test_weyl_count_below_first_nonzero_eigenvalue():
    config = MediumConfig(a_minus=-1.0, a_plus=1.0)
    first = min(solve_eigenvalue(config, 1).lam, abs(solve_eigenvalue(config, -1).lam))
    assert abs(solve_eigenvalue(config, 0).lam) < first
    assert weyl_count(config, first - 1e-9) == 1
    assert weyl_count(config, first) >= 2


def test_weyl_count_monotone_and_bounded(medium):
    lambdas = [1.0, 10.0, 50.0, 100.0, 500.0, 1000.0]
    counts = [weyl_count(medium, lam) for lam in lambdas]
    assert counts == sorted(counts)
    constant = weyl_constant(medium, lambdas)
    assert all(c <= constant * math.sqrt(lam) + 1e-12 for c, lam in zip(counts, lambdas))
    assert weyl_count(medium, 1000.0) == len(eigenpairs_within(medium, 1000.0))


def test_weyl_count_requires_lambda_at_least_one(medium):
    with pytest.raises(DomainError):
        weyl_count(medium, 0.5)


def test_growth_constant_positive(medium):
    m = growth_constant(medium, 100)
    assert m > 0
    for pair in spectrum(medium, -100, 100):
        assert 1.0 + abs(pair.lam) >= m * (1.0 + abs(pair.index)) ** 2 - 1e-12


@pytest.mark.parametrize("j", range(-3, 4))
def test_normalization_by_quadrature(medium, j):
    pair = solve_eigenvalue(medium, j)
    assert c_inner_quadrature(medium, pair, pair) == pytest.approx(1.0, abs=1e-10)


def test_orthonormality_by_quadrature(medium):
    """<phi_i, phi_j>_c = delta_ij и a(phi_i, phi_j) = lambda_i delta_ij при |i|, |j| <= 10."""
    pairs = spectrum(medium, -10, 10)
    for i, p in enumerate(pairs):
        for q in pairs[i:]:
            expected_c = 1.0 if p.index == q.index else 0.0
            assert c_inner_quadrature(medium, p, q) == pytest.approx(expected_c, abs=1e-8)
            expected_a = p.lam if p.index == q.index else 0.0
            assert a_inner_quadrature(medium, p, q) == pytest.approx(
                expected_a, abs=1e-8 * max(1.0, abs(p.lam), abs(q.lam))
            )


def test_stiffness_gram_is_diagonal(medium):
    pairs = spectrum(medium, -10, 10)
    gram = stiffness_gram(medium, pairs)
    lams = np.array([p.lam for p in pairs])
    scale = np.sqrt(np.outer(1.0 + np.abs(lams), 1.0 + np.abs(lams)))
    np.testing.assert_allclose(gram / scale, np.diag(lams) / scale, atol=1e-9)

    p, q = pairs[3], pairs[12]
    assert stiffness_inner(medium, p, p) == pytest.approx(p.lam, rel=1e-8)
    assert stiffness_inner(medium, p, q) == stiffness_inner(medium, q, p)
    assert abs(stiffness_inner(medium, p, q)) <= 1e-9 * math.sqrt((1.0 + abs(p.lam)) * (1.0 + abs(q.lam)))


def test_h_gram_exactly_symmetric_and_positive(medium):
    pairs = spectrum(medium, -15, 15)
    gram = h_gram(medium, pairs)
    assert np.array_equal(gram, gram.T)
    assert np.all(np.diag(gram) > 0)
    assert np.all(np.linalg.eigvalsh(gram) > 0)


def test_h_inner_symmetric_in_arguments(medium):
    p, q = solve_eigenvalue(medium, 3), solve_eigenvalue(medium, -4)
    assert h_inner(medium, p, q) == h_inner(medium, q, p)


def test_h_inner_matches_quadrature(medium):
    """Замкнутая форма против квадратуры на 200 случайных парах с |i|, |j| <= 40."""
    rng = np.random.default_rng(7)
    pairs = {p.index: p for p in spectrum(medium, -40, 40)}
    for _ in range(200):
        i, j = (int(v) for v in rng.integers(-40, 41, size=2))
        p, q = pairs[i], pairs[j]
        closed = h_inner(medium, p, q)
        numeric = h_inner_quadrature(medium, p, q)
        scale = math.sqrt(h_inner(medium, p, p) * h_inner(medium, q, q))
        assert abs(closed - numeric) <= 1e-8 * max(abs(numeric), scale), (i, j)


def test_h_inner_in_zero_class(symmetric_medium):
    pairs = spectrum(symmetric_medium, -2, 2)
    for p in pairs:
        for q in pairs:
            assert h_inner(symmetric_medium, p, q) == pytest.approx(
                h_inner_quadrature(symmetric_medium, p, q), abs=1e-9
            )


def test_h_gram_rejects_coinciding_tau(medium):
    first = solve_eigenvalue(medium, 1)
    clone = EigenPair(index=2, lam=first.lam, tau=first.tau, alpha=first.alpha, sign_class=first.sign_class)
    with pytest.raises(NumericalError):
        h_gram(medium, [first, clone])
