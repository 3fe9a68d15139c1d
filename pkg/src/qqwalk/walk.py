"""Time evolution of the walk from an origin-localized spinor.

Amplitudes live on the parity sublattice: after n steps the walker is
supported on x in {-n, -n+2, ..., n}, stored densely as an (n+1, 2, 4)
float array indexed by site, chirality (0 = left, 1 = right), and
quaternion component.  The equivalent 4-component complex representation
(first column of the 2x2 complex image of the amplitude pair) is carried
alongside for cross-checks; both evolve the distribution identically.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .coin import Coin, MoveOperators, chi_p, chi_q, split_pq
from .errors import NotNormalizedError
from .quaternion import Quaternion

__all__ = [
    "WalkState",
    "FourierState",
    "Distribution",
    "init_state",
    "step",
    "evolve",
    "distribution",
    "to_fourier_rep",
    "init_fourier",
    "step_fourier",
    "evolve_fourier",
    "distribution_fourier",
    "moment",
]


@dataclass
class WalkState:
    """Quaternion amplitudes after n steps."""

    n: int
    psi: np.ndarray  # (n+1, 2, 4)

    def positions(self) -> np.ndarray:
        return np.arange(-self.n, self.n + 1, 2)

    def amplitude(self, x: int) -> tuple[Quaternion, Quaternion]:
        """(left, right) amplitude pair at position x (zero off support)."""
        if (x + self.n) % 2 or abs(x) > self.n:
            return Quaternion.zero(), Quaternion.zero()
        i = (x + self.n) // 2
        return (Quaternion.from_array(self.psi[i, 0]),
                Quaternion.from_array(self.psi[i, 1]))

    def total_probability(self) -> float:
        return float(np.sum(self.psi * self.psi))


@dataclass
class FourierState:
    """4-component complex amplitudes after n steps."""

    n: int
    phi: np.ndarray  # (n+1, 4) complex128

    def positions(self) -> np.ndarray:
        return np.arange(-self.n, self.n + 1, 2)

    def total_probability(self) -> float:
        return float(np.sum(np.abs(self.phi) ** 2))


@dataclass
class Distribution:
    """Position probabilities on the parity sublattice after n steps."""

    n: int
    probs: np.ndarray  # (n+1,)

    def positions(self) -> np.ndarray:
        return np.arange(-self.n, self.n + 1, 2)

    def prob(self, x: int) -> float:
        if (x + self.n) % 2 or abs(x) > self.n:
            return 0.0
        return float(self.probs[(x + self.n) // 2])

    def total(self) -> float:
        return float(np.sum(self.probs))


def init_state(alpha: Quaternion, beta: Quaternion,
               tol: float = 1e-10) -> WalkState:
    """State at n = 0: the spinor (alpha, beta) at the origin."""
    defect = abs(alpha.norm_sq() + beta.norm_sq() - 1.0)
    if defect > tol:
        raise NotNormalizedError(
            f"|alpha|^2 + |beta|^2 = 1 violated by {defect:.3e}")
    psi = np.zeros((1, 2, 4))
    psi[0, 0] = alpha.to_array()
    psi[0, 1] = beta.to_array()
    return WalkState(0, psi)


def step(state: WalkState, ops: MoveOperators) -> WalkState:
    """One evolution step; coin entries multiply amplitudes from the left."""
    coin = np.ascontiguousarray(ops.p + ops.q)
    return WalkState(state.n + 1, _kernels.step_quat_numpy(state.psi, coin))


def evolve(coin: Coin, alpha: Quaternion, beta: Quaternion, steps: int,
           with_norms: bool = False):
    """Run `steps` updates from the origin state (alpha, beta).

    With `with_norms=True` also returns the total probability after every
    step (length steps + 1), which is asserted, never corrected.
    """
    if steps < 0:
        raise ValueError("steps must be non-negative")
    state0 = init_state(alpha, beta)
    mat = np.ascontiguousarray(coin.matrix())
    if _kernels.use_numba():
        psi, norms = _kernels.evolve_quat_numba(state0.psi, mat, steps)
    else:
        psi, norms = _kernels.evolve_quat_numpy(state0.psi, mat, steps)
    out = WalkState(steps, psi)
    return (out, norms) if with_norms else out


def distribution(state: WalkState | FourierState) -> Distribution:
    """Pointwise squared amplitude norms."""
    if isinstance(state, FourierState):
        return distribution_fourier(state)
    probs = np.sum(state.psi * state.psi, axis=(1, 2))
    return Distribution(state.n, np.maximum(probs, 0.0))


def to_fourier_rep(state: WalkState) -> FourierState:
    """First column of the complex image of each amplitude pair."""
    psi = state.psi
    phi = np.empty((psi.shape[0], 4), dtype=np.complex128)
    phi[:, 0] = psi[:, 0, 0] + 1j * psi[:, 0, 1]
    phi[:, 1] = psi[:, 0, 2] - 1j * psi[:, 0, 3]
    phi[:, 2] = psi[:, 1, 0] + 1j * psi[:, 1, 1]
    phi[:, 3] = psi[:, 1, 2] - 1j * psi[:, 1, 3]
    return FourierState(state.n, phi)


def init_fourier(alpha: Quaternion, beta: Quaternion,
                 tol: float = 1e-10) -> FourierState:
    return to_fourier_rep(init_state(alpha, beta, tol=tol))


def step_fourier(state: FourierState, coin: Coin) -> FourierState:
    cp = chi_p(coin)
    cq = chi_q(coin)
    return FourierState(state.n + 1, _kernels.step_c4_numpy(state.phi, cp, cq))


def evolve_fourier(coin: Coin, alpha: Quaternion, beta: Quaternion, steps: int,
                   with_norms: bool = False):
    """Evolve in the 4-component complex representation."""
    if steps < 0:
        raise ValueError("steps must be non-negative")
    phi0 = init_fourier(alpha, beta).phi
    cp = np.ascontiguousarray(chi_p(coin))
    cq = np.ascontiguousarray(chi_q(coin))
    if _kernels.use_numba():
        phi, norms = _kernels.evolve_c4_numba(phi0, cp, cq, steps)
    else:
        phi, norms = _kernels.evolve_c4_numpy(phi0, cp, cq, steps)
    out = FourierState(steps, phi)
    return (out, norms) if with_norms else out


def distribution_fourier(state: FourierState) -> Distribution:
    probs = np.sum(np.abs(state.phi) ** 2, axis=1)
    return Distribution(state.n, np.maximum(probs, 0.0))


def moment(dist: Distribution, r: int) -> float:
    """Sum of x^r * P(x) over the support."""
    if r < 0:
        raise ValueError("moment order must be non-negative")
    x = dist.positions().astype(float)
    return float(np.sum(x ** r * dist.probs))
