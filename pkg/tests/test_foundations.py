import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from motion_uncertainty.errors import DomainError, SpectrumHoleError
from motion_uncertainty.foundations import (
    SamplerKernel,
    cosine_expansion,
    discrete_entropy,
    emulate_sampler,
    independence_bound,
    kernel_spectrum,
    max_entropy_check,
    sup_error,
    worst_case_uncertainty,
)

GAUSS = SamplerKernel.gaussian(1.0)


# -- entropy -------------------------------------------------------------------


@pytest.mark.parametrize("p,want", [((0.5, 0.5), math.log(2)), ((1.0, 0.0), 0.0),
                                    ((0.25,) * 4, math.log(4))])
def test_discrete_entropy_examples(p, want):
    assert discrete_entropy(p) == pytest.approx(want, abs=1e-15)


@pytest.mark.parametrize("p", [(0.5, 0.6), (-0.1, 1.1), (), (float("nan"), 1.0)])
def test_discrete_entropy_rejects(p):
    with pytest.raises(DomainError):
        discrete_entropy(p)


@given(st.integers(2, 50), st.integers(0, 2**32 - 1))
def test_entropy_at_most_log_n(n, seed):
    p = np.random.default_rng(seed).dirichlet(np.ones(n))
    assert discrete_entropy(p) < math.log(n)
    assert discrete_entropy(np.full(n, 1 / n)) == pytest.approx(math.log(n), rel=1e-14)


def test_independence_examples():
    b = independence_bound(np.full((2, 2), 0.25))
    assert b.independent and b.slack == 0.0
    b = independence_bound([[0.5, 0.0], [0.0, 0.5]])
    assert not b.independent
    assert b.h_joint == pytest.approx(math.log(2), abs=1e-15)
    assert b.h_x + b.h_f == pytest.approx(2 * math.log(2), abs=1e-15)
    assert b.slack == pytest.approx(math.log(2), abs=1e-15)


def test_independence_rejects_vector():
    with pytest.raises(DomainError):
        independence_bound([0.5, 0.5])


def test_dirichlet_joints_have_positive_slack():
    rng = np.random.default_rng(2024)
    for _ in range(1000):
        n, m = rng.integers(2, 7, size=2)
        joint = rng.dirichlet(np.ones(n * m)).reshape(n, m)
        b = independence_bound(joint)
        assert b.slack > 0 and not b.independent


@given(st.integers(0, 2**32 - 1))
def test_product_joints_have_zero_slack(seed):
    r = np.random.default_rng(seed)
    joint = np.outer(r.dirichlet(np.ones(3)), r.dirichlet(np.ones(4)))
    joint /= joint.sum()
    b = independence_bound(joint)
    assert b.independent and b.slack == 0.0


@pytest.mark.parametrize("args,want", [((0, 0), 0), ((2, 3), 13), ((1, 1), 2)])
def test_worst_case_uncertainty(args, want):
    assert worst_case_uncertainty(*args) == want


def test_worst_case_rejects_negative():
    with pytest.raises(DomainError):
        worst_case_uncertainty(-1, 0)


def test_max_entropy_sigma_one():
    r = max_entropy_check(1.0)
    assert r.gaussian == pytest.approx(1.418939, abs=1e-6)
    assert r.uniform == pytest.approx(1.242453, abs=1e-6)
    assert r.gaussian_quad == pytest.approx(1.418939, abs=1e-6)
    assert r.uniform_quad == pytest.approx(1.242453, abs=1e-6)
    assert r.gaussian_is_max and r.max_quad_error < 1e-9


@given(st.floats(1e-3, 1e3))
def test_max_entropy_ordering_shifts_with_log_sigma(sigma):
    r, r1 = max_entropy_check(sigma), max_entropy_check(1.0)
    assert r.gaussian_is_max
    shift = math.log(sigma)
    for name in ("gaussian", "uniform", "laplace"):
        assert getattr(r, name) == pytest.approx(getattr(r1, name) + shift, abs=1e-12)


def test_max_entropy_rejects():
    with pytest.raises(DomainError):
        max_entropy_check(0.0)


# -- spectrum ------------------------------------------------------------------


def test_spectrum_examples():
    a, b = kernel_spectrum(GAUSS, 0.0)
    assert a == pytest.approx(math.sqrt(2 * math.pi), rel=1e-12) and b == 0.0
    a, b = kernel_spectrum(GAUSS, 1.0)
    assert a == pytest.approx(1.520347, abs=1e-6) and abs(b) < 1e-15


@pytest.mark.parametrize("width", [0.3, 1.0, 2.5])
def test_spectrum_closed_form(width):
    k = SamplerKernel.gaussian(width)
    for w in np.linspace(0, 4, 81):
        want = math.sqrt(2 * math.pi) * width * math.exp(-(width * w) ** 2 / 2)
        if want**2 < 1e-10:
            continue
        a, b = kernel_spectrum(k, w)
        assert a == pytest.approx(want, rel=1e-8)
        assert abs(b) < 1e-12


def test_even_tabulated_kernel_has_zero_b():
    k = SamplerKernel.tabulate(lambda x: np.maximum(0, 1 - np.abs(x)), -2, 2, 401)
    for w in (0.5, 1.0, 3.0):
        assert abs(kernel_spectrum(k, w)[1]) < 1e-14


def test_spectrum_hole():
    with pytest.raises(SpectrumHoleError, match="omega=8"):
        kernel_spectrum(GAUSS, 8.0)
    with pytest.raises(SpectrumHoleError):
        cosine_expansion(8.0, GAUSS)


# -- cosine expansion ----------------------------------------------------------


def test_cosine_residual_matches_golden(golden):
    e = cosine_expansion(1.0, GAUSS, 512, 8.0)
    assert len(e) == 1024
    err = sup_error(e, np.cos, -3, 3, 20001)
    ref = golden["expansion"]["cosine_n512_r8"]
    assert err < 1e-3
    assert err == pytest.approx(ref, rel=1e-6)


def test_expansion_reproduces_sine_by_phase():
    # the phase moves every shift by pi/2, so the window is widened at the same spacing
    e = cosine_expansion(1.0, GAUSS, 768, 12.0, phase=-math.pi / 2)
    assert sup_error(e, np.sin, -3, 3) < 1e-6


def test_n_sweep_non_increasing(golden):
    errs = [sup_error(cosine_expansion(1.0, GAUSS, int(n), 8.0), np.cos, -3, 3, 20001)
            for n in sorted(golden["expansion"]["n_sweep"], key=int)]
    assert all(b <= a for a, b in zip(errs, errs[1:]))
    np.testing.assert_allclose(errs, [golden["expansion"]["n_sweep"][k]
                                      for k in sorted(golden["expansion"]["n_sweep"], key=int)],
                               rtol=1e-6)


def test_range_sweep_non_increasing(golden):
    step = 16.0 / 512
    sweep = golden["expansion"]["range_sweep"]
    errs = []
    for r in sorted(sweep, key=float):
        e = cosine_expansion(1.0, GAUSS, int(round(2 * float(r) / step)), float(r))
        errs.append(sup_error(e, np.cos, -3, 3, 20001))
    assert all(b <= a for a, b in zip(errs, errs[1:]))
    ref = [sweep[r] for r in sorted(sweep, key=float)]
    np.testing.assert_allclose(errs, ref, rtol=1e-4, atol=1e-14)


def test_asymmetric_kernel_uses_sine_branch():
    k = SamplerKernel.tabulate(lambda x: np.exp(-((x - 0.5) ** 2) / 2), -12, 13, 4001)
    e = cosine_expansion(1.0, k, 512, 8.0)
    assert np.any(e.coefficients[512:] != 0)
    assert sup_error(e, np.cos, -3, 3) < 1e-5


@pytest.mark.parametrize("kw", [dict(omega0=0.0), dict(n_points=1), dict(half_range=0.0)])
def test_cosine_expansion_validation(kw):
    args = dict(omega0=1.0, kernel=GAUSS, n_points=512, half_range=8.0) | kw
    with pytest.raises(DomainError):
        cosine_expansion(**args)


# -- emulation -----------------------------------------------------------------


def test_emulate_identity():
    _, err = emulate_sampler(GAUSS, GAUSS, 1)
    assert err < 1e-6


def test_emulate_narrow_matches_golden_and_improves(golden):
    ref = golden["expansion"]["emulate_narrow"]
    target = SamplerKernel.gaussian(0.5)
    errs = [emulate_sampler(target, GAUSS, k)[1] for k in range(1, 7)]
    assert all(b <= a for a, b in zip(errs, errs[1:]))
    np.testing.assert_allclose(errs, [ref[str(k)] for k in range(1, 7)], rtol=1e-6)
    assert errs[-1] < 0.005


def test_emulate_hole_names_frequency():
    # harmonic 6 of a window of 3 sits at 2*pi, where |psi_hat|^2 ~ 4.5e-17
    with pytest.raises(SpectrumHoleError, match="omega=6.28"):
        emulate_sampler(SamplerKernel.gaussian(0.5), GAUSS, 7)


def test_emulate_tabulated_target():
    tri = SamplerKernel.tabulate(lambda x: np.maximum(0, 1 - np.abs(x)), -1, 1, 201)
    exp, err = emulate_sampler(tri, GAUSS, 6)
    assert err < 0.1
    assert exp.target["kind"] == "emulated"
    assert exp.target["target"]["kind"] == "user_tabulated"


def test_emulate_rejects_zero_harmonics():
    with pytest.raises(DomainError):
        emulate_sampler(GAUSS, GAUSS, 0)
