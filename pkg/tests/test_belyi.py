import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lame_monodromy.belyi import (
    INF,
    CertificationError,
    Configuration,
    DegenerateConfigurationError,
    SolveResult,
    certify,
    cubic_fixture_configuration,
    evaluate_with_derivatives,
    newton_solve,
    phi_residual,
    power_map_configuration,
)
from lame_monodromy.geom import InvalidInputError


def test_power_map_residual_zero():
    for d in (2, 3, 4):
        assert np.max(np.abs(phi_residual(power_map_configuration(d)))) < 1e-12


def test_cubic_fixture_residual_zero():
    assert np.max(np.abs(phi_residual(cubic_fixture_configuration()))) < 1e-12


def test_perturbed_residual_small_but_nonzero():
    c = power_map_configuration(3)
    c.ones[1] += 1e-3
    norm = np.max(np.abs(phi_residual(c)))
    assert 0 < norm < 1e-1


def test_derivatives_match_closed_form():
    # F(z) = z^3: F' = 3z^2, F'' = 6z, F''' = 6
    c = power_map_configuration(3)
    x = 0.7 + 0.2j
    f, f1, f2, f3 = evaluate_with_derivatives(c, x, 3)
    assert abs(f - x**3) < 1e-12
    assert abs(f1 - 3 * x**2) < 1e-12
    assert abs(f2 - 6 * x) < 1e-12
    assert abs(f3 - 6) < 1e-12


def test_collision_rejected():
    c = power_map_configuration(3)
    c.ones[1] = c.ones[2] + 1e-12
    with pytest.raises(DegenerateConfigurationError):
        phi_residual(c)


def test_configuration_validation():
    with pytest.raises(InvalidInputError):
        Configuration(1.0, [0.5], [1.0], [INF], (1,), (1,), (1,))  # z1 != 0
    with pytest.raises(InvalidInputError):
        Configuration(1.0, [0.0], [1.0], [INF], (2,), (1,), (2,))  # sums differ


def test_newton_recovers_cube_roots():
    exact = power_map_configuration(3)
    init = exact.copy()
    init.ones = [o + (0.01 + 0.01j if i else 0) for i, o in enumerate(exact.ones)]
    init.lam += 0.01
    result = newton_solve(None, init)
    assert result.converged
    assert result.residual < 1e-10
    got = sorted(result.configuration.ones, key=lambda z: (z.real, z.imag))
    want = sorted(exact.ones, key=lambda z: (z.real, z.imag))
    assert all(abs(a - b) < 1e-8 for a, b in zip(got, want))


def test_newton_recovers_square_map():
    init = power_map_configuration(2)
    init.ones[1] = -1.1
    result = newton_solve(None, init)
    assert result.converged
    assert abs(result.configuration.ones[1] + 1) < 1e-8


def test_newton_recovers_cubic_fixture():
    exact = cubic_fixture_configuration()
    init = exact.copy()
    init.lam += 0.02
    init.zeros[1] += -0.01 + 0.005j
    init.ones[1] += 0.01
    result = newton_solve({"0": [2, 1], "1": [2, 1], "infinity": [3]}, init)
    assert result.converged
    c = result.configuration
    assert abs(c.lam + 2) < 1e-8
    assert abs(c.zeros[1] - 1.5) < 1e-8
    assert abs(c.ones[1] + 0.5) < 1e-8


def test_newton_quadratic_convergence():
    exact = power_map_configuration(4)
    init = exact.copy()
    init.ones = [o + (0.01 if i else 0) for i, o in enumerate(exact.ones)]
    result = newton_solve(None, init)
    assert result.converged
    drops = [h for h in result.history if h > 0]
    # each Newton step should roughly square the residual
    for prev, new in zip(drops, drops[1:]):
        if prev < 1e-1 and new > 1e-14:
            assert new < 10 * prev**2


def test_passport_mismatch_rejected():
    init = power_map_configuration(3)
    with pytest.raises(InvalidInputError):
        newton_solve({"0": [2, 1], "1": [1, 1, 1], "infinity": [3]}, init)


def test_jacobian_directional_derivative():
    from lame_monodromy.belyi import _real_residual

    base = cubic_fixture_configuration()
    x = base.pack()
    rng = np.random.default_rng(2)
    for _ in range(5):
        v = rng.standard_normal(x.size)
        v /= np.linalg.norm(v)
        d1 = (_real_residual(base.unpack(x + 1e-5 * v))
              - _real_residual(base.unpack(x - 1e-5 * v))) / 2e-5
        d2 = (_real_residual(base.unpack(x + 1e-4 * v))
              - _real_residual(base.unpack(x - 1e-4 * v))) / 2e-4
        # central differences agree to O(h^2)
        assert np.max(np.abs(d1 - d2)) < 1e-5


def test_certify_exact_solutions():
    assert certify(SolveResult(power_map_configuration(3), 0.0, 0, True))["pass"]
    assert certify(SolveResult(cubic_fixture_configuration(), 0.0, 0, True))["pass"]


def test_certify_rejects_misdeclared_multiplicity():
    bad = Configuration(-2.0, [0.0, 1.5], [1.0, -0.5], [INF],
                        (2, 1), (1, 2), (3,))
    with pytest.raises(CertificationError) as err:
        certify(SolveResult(bad, 0.0, 0, True))
    assert err.value.point is not None


def test_certify_rejects_perturbed_and_nonconverged():
    perturbed = cubic_fixture_configuration()
    perturbed.ones[1] += 1e-3
    with pytest.raises(CertificationError):
        certify(SolveResult(perturbed, 0.0, 0, True))
    with pytest.raises(CertificationError):
        certify(SolveResult(cubic_fixture_configuration(), 1.0, 5, False))


def test_factorisation_of_f_minus_one():
    c = cubic_fixture_configuration()
    rng = np.random.default_rng(0)
    for _ in range(100):
        x = complex(rng.standard_normal(), rng.standard_normal())
        f = evaluate_with_derivatives(c, x, 0)[0]
        rhs = c.lam * (x - c.ones[0]) ** 2 * (x - c.ones[1])
        assert abs((f - 1) - rhs) < 1e-8 * max(1.0, abs(rhs))


def test_serialization_round_trip():
    c = cubic_fixture_configuration()
    back = Configuration.from_dict(c.to_dict())
    assert back.to_dict() == c.to_dict()
    r = SolveResult(c, 1e-12, 4, True, jacobian_rank=6)
    back_r = SolveResult.from_dict(r.to_dict())
    assert back_r.to_dict() == r.to_dict()


@given(st.floats(-0.005, 0.005), st.floats(-0.005, 0.005))
@settings(max_examples=25, deadline=None)
def test_newton_basin_property(dx, dy):
    exact = power_map_configuration(2)
    init = exact.copy()
    init.ones[1] += complex(dx, dy)
    init.lam += complex(dy, dx)
    result = newton_solve(None, init)
    assert result.converged
    assert abs(result.configuration.ones[1] + 1) < 1e-8
