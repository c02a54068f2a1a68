import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sladvect.spectral import PHASE_SCHEMES, dft_coefficient, one_step_complex, phase_shift, phase_table

from reference_data import FROZEN_AMP, FROZEN_THETA

M, MU = 40, 0.4


def _mode(k, M=M):
    x = np.arange(M) / M
    v = np.exp(2j * np.pi * k * x)
    return v, 2j * np.pi * k * v


def test_dft_examples():
    assert dft_coefficient(np.ones(8), 0) == 8
    v, _ = _mode(3, 8)
    assert dft_coefficient(v, 3) == pytest.approx(8)
    assert abs(dft_coefficient(v, 2)) < 1e-13
    np.testing.assert_allclose(
        [dft_coefficient(v, k) for k in range(-4, 4)],
        np.roll(np.fft.fft(v), 4), atol=1e-12)
    with pytest.raises(ValueError):
        dft_coefficient(v, 5)


@pytest.mark.parametrize("k", range(1, M // 2 + 1))
def test_upwind_closed_form(k):
    row = phase_shift("upwind", M, MU, k)
    symbol = 1 - MU + MU * np.exp(-2j * np.pi * k / M)
    assert np.angle(np.exp(1j * (row.theta + np.angle(symbol)))) == pytest.approx(0.0, abs=1e-10)
    assert row.amplification == pytest.approx(abs(symbol), abs=1e-12)


def test_exact_phase_line():
    row = phase_shift("cip", M, MU, 5)
    assert row.theta_exact == pytest.approx(2 * np.pi * MU * 5 / M)
    assert row.kh == 5 / M


@pytest.mark.parametrize("kind", PHASE_SCHEMES)
def test_integer_cfl_is_exact_shift(kind):
    for k in (1, 7, 13):
        row = phase_shift(kind, M, 1.0, k)
        assert row.amplification == pytest.approx(1.0, abs=1e-12)
        assert abs(row.phase_error) < 1e-12


@pytest.mark.parametrize("kind", PHASE_SCHEMES)
def test_zero_cfl_is_identity(kind):
    row = phase_shift(kind, M, 0.0, 9)
    assert row.theta == 0.0
    assert row.amplification == pytest.approx(1.0, abs=1e-14)


@pytest.mark.parametrize("kind", PHASE_SCHEMES)
@pytest.mark.parametrize("k", [1, 8, 19, 20])
def test_circulant_diagonality(kind, k):
    v, d = _mode(k)
    out, _ = one_step_complex(kind, M, MU, v, d)
    leak = max(abs(dft_coefficient(out, m)) for m in range(-M // 2 + 1, M // 2 + 1) if m != k)
    assert leak <= 1e-10 * M


@pytest.mark.parametrize("kind", PHASE_SCHEMES)
@settings(max_examples=10, deadline=None)
@given(k=st.integers(1, M // 2 - 1), mu=st.floats(0.05, 0.95))
def test_conjugate_symmetry(kind, k, mu):
    plus, minus = phase_shift(kind, M, mu, k), phase_shift(kind, M, mu, -k)
    assert minus.ratio == pytest.approx(np.conj(plus.ratio), abs=1e-12)


def test_phase_table_shape_and_order():
    rows = phase_table(M=M, mu=MU)
    assert len(rows) == len(PHASE_SCHEMES) * M // 2
    assert [r.scheme for r in rows[:: M // 2]] == list(PHASE_SCHEMES)
    assert [r.k for r in rows[: M // 2]] == list(range(1, M // 2 + 1))
    assert all(np.isfinite(r.theta_unwrapped) for r in rows)


def test_cip_phase_error_smallest():
    rows = {(r.scheme, r.k): r for r in phase_table(M=M, mu=MU)}
    for k in range(1, M // 2 + 1):
        cip = abs(rows["cip", k].phase_error)
        assert cip <= abs(rows["spline", k].phase_error)
        assert cip <= abs(rows["lagrange", k].phase_error)


def test_bad_arguments():
    with pytest.raises(ValueError):
        phase_shift("cip", M, MU, M)
    with pytest.raises(ValueError):
        phase_shift("cip", M, -0.1, 1)
    with pytest.raises(ValueError):
        one_step_complex("cip", M, MU, _mode(1)[0])


@pytest.mark.parametrize("kind", ["cip", "spline"])
def test_frozen_phase_values(kind):
    rows = phase_table([kind], M=M, mu=MU)
    np.testing.assert_allclose([r.theta for r in rows], FROZEN_THETA[kind], rtol=1e-11, atol=1e-12)
    np.testing.assert_allclose([r.amplification for r in rows], FROZEN_AMP[kind], rtol=1e-11)
