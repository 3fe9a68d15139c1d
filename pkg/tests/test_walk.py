import math

import numpy as np
import pytest

import qqwalk._kernels as kernels
from qqwalk import Quaternion, NotNormalizedError
from qqwalk.coin import hadamard_coin, random_coin, split_pq, validate_coin
from qqwalk.exact import boundary_prob
from qqwalk.walk import (
    distribution,
    evolve,
    evolve_fourier,
    init_fourier,
    init_state,
    moment,
    step,
    step_fourier,
    to_fourier_rep,
)

from helpers import dict_distribution, dict_evolve, random_spinor

S = math.sqrt(0.5)
I = Quaternion.i()
J = Quaternion.j()
K = Quaternion.k()


def test_init_state_basics():
    st = init_state(Quaternion(1), Quaternion.zero())
    assert st.n == 0
    assert st.total_probability() == pytest.approx(1.0)
    left, right = st.amplitude(0)
    assert left.approx_eq(Quaternion(1)) and right.approx_eq(Quaternion.zero())

    st = init_state(Quaternion(S), S * J)
    assert st.total_probability() == pytest.approx(1.0, abs=1e-12)

    with pytest.raises(NotNormalizedError):
        init_state(Quaternion(1), Quaternion(1))


def test_hadamard_one_step():
    coin = hadamard_coin()
    st = step(init_state(Quaternion(1), Quaternion.zero()), split_pq(coin))
    left, right = st.amplitude(-1)
    assert left.approx_eq(Quaternion(S), 1e-15)
    assert right.approx_eq(Quaternion.zero())
    left, right = st.amplitude(1)
    assert left.approx_eq(Quaternion.zero())
    assert right.approx_eq(Quaternion(S), 1e-15)


def test_hadamard_two_steps():
    coin = hadamard_coin()
    st = evolve(coin, Quaternion(1), Quaternion.zero(), 2)
    assert st.amplitude(-2)[0].approx_eq(Quaternion(0.5), 1e-15)
    assert st.amplitude(0)[0].approx_eq(Quaternion(0.5), 1e-15)
    assert st.amplitude(0)[1].approx_eq(Quaternion(0.5), 1e-15)
    assert st.amplitude(2)[1].approx_eq(Quaternion(-0.5), 1e-15)
    dist = distribution(st)
    assert dist.prob(-2) == pytest.approx(0.25, abs=1e-14)
    assert dist.prob(0) == pytest.approx(0.5, abs=1e-14)
    assert dist.prob(2) == pytest.approx(0.25, abs=1e-14)


def test_diagonal_coin_closed_amplitudes():
    # b = c = 0: amplitude a^n alpha at -n and d^n beta at +n, nothing else
    rng = np.random.default_rng(31)
    coin = random_coin(rng, "case1")
    alpha, beta = random_spinor(rng)
    n = 17
    st = evolve(coin, alpha, beta, n)
    a_pow = Quaternion.one()
    d_pow = Quaternion.one()
    for _ in range(n):
        a_pow = coin.a * a_pow
        d_pow = coin.d * d_pow
    assert st.amplitude(-n)[0].approx_eq(a_pow * alpha, 1e-12)
    assert st.amplitude(n)[1].approx_eq(d_pow * beta, 1e-12)
    dist = distribution(st)
    assert dist.prob(-n) == pytest.approx(alpha.norm_sq(), abs=1e-12)
    assert dist.prob(n) == pytest.approx(beta.norm_sq(), abs=1e-12)
    interior = dist.probs[1:-1]
    assert np.max(np.abs(interior)) == 0.0


def test_antidiagonal_coin_localizes():
    rng = np.random.default_rng(32)
    coin = random_coin(rng, "case2")
    alpha, beta = random_spinor(rng)
    even = distribution(evolve(coin, alpha, beta, 12))
    assert even.prob(0) == pytest.approx(1.0, abs=1e-12)
    odd = distribution(evolve(coin, alpha, beta, 13))
    assert odd.prob(1) == pytest.approx(alpha.norm_sq(), abs=1e-12)
    assert odd.prob(-1) == pytest.approx(beta.norm_sq(), abs=1e-12)


def test_engine_matches_dict_oracle():
    rng = np.random.default_rng(33)
    for kind in ("general", "case4", "case5", "complex"):
        coin = random_coin(rng, kind)
        alpha, beta = random_spinor(rng)
        n = 9
        st = evolve(coin, alpha, beta, n)
        ref = dict_evolve(coin, alpha, beta, n)
        for x in range(-n, n + 1, 2):
            left, right = st.amplitude(x)
            rl, rr = ref.get(x, (Quaternion.zero(), Quaternion.zero()))
            assert left.approx_eq(rl, 1e-13)
            assert right.approx_eq(rr, 1e-13)
        ref_dist = dict_distribution(ref)
        dist = distribution(st)
        for x, p in ref_dist.items():
            assert dist.prob(x) == pytest.approx(p, abs=1e-13)


def test_step_equals_evolve():
    rng = np.random.default_rng(34)
    coin = random_coin(rng)
    alpha, beta = random_spinor(rng)
    ops = split_pq(coin)
    st = init_state(alpha, beta)
    for _ in range(6):
        st = step(st, ops)
    direct = evolve(coin, alpha, beta, 6)
    assert np.allclose(st.psi, direct.psi, atol=1e-14)


def test_probability_conservation_and_parity():
    rng = np.random.default_rng(35)
    for _ in range(5):
        coin = random_coin(rng)
        alpha, beta = random_spinor(rng)
        _, norms = evolve(coin, alpha, beta, 120, with_norms=True)
        assert np.max(np.abs(norms - 1.0)) <= 1e-12
    # zero-support positions stay zero: evolve a one-sided state
    coin = random_coin(rng, "case1")
    st = evolve(coin, Quaternion(1), Quaternion.zero(), 5)
    assert distribution(st).prob(5) == 0.0


def test_fourier_rep_components():
    alpha = Quaternion(0.1, 0.2, 0.3, 0.4)
    beta = Quaternion(0.5, 0.6, 0.7, 0.8)
    scale = 1.0 / math.sqrt(alpha.norm_sq() + beta.norm_sq())
    alpha, beta = scale * alpha, scale * beta
    phi = init_fourier(alpha, beta).phi[0]
    assert phi[0] == pytest.approx(alpha.simplex)
    assert phi[1] == pytest.approx(np.conj(alpha.perplex))
    assert phi[2] == pytest.approx(beta.simplex)
    assert phi[3] == pytest.approx(np.conj(beta.perplex))


def test_fourier_rep_real_state_is_real():
    st = init_state(Quaternion(S), Quaternion(S))
    phi = to_fourier_rep(st).phi
    assert np.max(np.abs(phi.imag)) == 0.0
    assert phi[0, 0] == pytest.approx(S)


def test_fourier_norm_matches():
    rng = np.random.default_rng(36)
    coin = random_coin(rng)
    alpha, beta = random_spinor(rng)
    st = evolve(coin, alpha, beta, 40)
    fr = to_fourier_rep(st)
    psi_norms = np.sum(st.psi * st.psi, axis=(1, 2))
    phi_norms = np.sum(np.abs(fr.phi) ** 2, axis=1)
    assert np.max(np.abs(psi_norms - phi_norms)) <= 1e-13


def test_convert_then_evolve_commutes():
    # evolving quaternion amplitudes then converting equals converting the
    # initial state and evolving with the complex images of P and Q
    rng = np.random.default_rng(37)
    for kind in ("general", "case5"):
        coin = random_coin(rng, kind)
        alpha, beta = random_spinor(rng)
        n = 25
        converted = to_fourier_rep(evolve(coin, alpha, beta, n))
        evolved = evolve_fourier(coin, alpha, beta, n)
        assert np.max(np.abs(converted.phi - evolved.phi)) <= 1e-12


def test_fourier_step_matches_evolve():
    rng = np.random.default_rng(38)
    coin = random_coin(rng)
    alpha, beta = random_spinor(rng)
    st = init_fourier(alpha, beta)
    for _ in range(5):
        st = step_fourier(st, coin)
    direct = evolve_fourier(coin, alpha, beta, 5)
    assert np.max(np.abs(st.phi - direct.phi)) <= 1e-14


def test_moments():
    coin = hadamard_coin()
    dist = distribution(evolve(coin, Quaternion(1), Quaternion.zero(), 20))
    assert moment(dist, 0) == pytest.approx(1.0, abs=1e-12)

    # symmetric initial state: first moment vanishes at every step
    alpha, beta = Quaternion(S), S * I
    for n in (5, 20, 41):
        dist = distribution(evolve(coin, alpha, beta, n))
        assert moment(dist, 1) == pytest.approx(0.0, abs=1e-10)

    # two-point distribution at +-n has second moment n^2
    rng = np.random.default_rng(39)
    coin1 = random_coin(rng, "case1")
    alpha, beta = random_spinor(rng)
    dist = distribution(evolve(coin1, alpha, beta, 13))
    assert moment(dist, 2) == pytest.approx(13.0 ** 2, abs=1e-9)


def test_edge_probabilities_match_closed_form():
    rng = np.random.default_rng(40)
    for _ in range(10):
        coin = random_coin(rng)
        alpha, beta = random_spinor(rng)
        n = 14
        dist = distribution(evolve(coin, alpha, beta, n))
        assert dist.prob(n) == pytest.approx(
            boundary_prob(coin, alpha, beta, n, +1), abs=1e-10)
        assert dist.prob(-n) == pytest.approx(
            boundary_prob(coin, alpha, beta, n, -1), abs=1e-10)


def test_backends_agree(monkeypatch):
    if not kernels.HAVE_NUMBA:
        pytest.skip("numba unavailable")
    rng = np.random.default_rng(41)
    coin = random_coin(rng)
    alpha, beta = random_spinor(rng)

    monkeypatch.setenv(kernels.ENV_VAR, "numba")
    st_nb, norms_nb = evolve(coin, alpha, beta, 64, with_norms=True)
    fr_nb = evolve_fourier(coin, alpha, beta, 64)
    monkeypatch.setenv(kernels.ENV_VAR, "numpy")
    st_np, norms_np = evolve(coin, alpha, beta, 64, with_norms=True)
    fr_np = evolve_fourier(coin, alpha, beta, 64)

    assert np.array_equal(st_nb.psi, st_np.psi) or np.max(
        np.abs(st_nb.psi - st_np.psi)) <= 1e-15
    assert np.max(np.abs(norms_nb - norms_np)) <= 1e-14
    assert np.max(np.abs(fr_nb.phi - fr_np.phi)) <= 1e-14


def test_backend_env_validation(monkeypatch):
    monkeypatch.setenv(kernels.ENV_VAR, "bogus")
    with pytest.raises(RuntimeError):
        kernels.active_backend()
