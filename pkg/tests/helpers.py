"""Shared independent oracles for the test suite.

Everything here is deliberately written against the package's public
definitions but through a different computational route, so agreement is
meaningful: a dict-based walk evolution, a determinant-sampling route to
characteristic-polynomial coefficients, and tiny utilities.
"""

from __future__ import annotations

import numpy as np

from qqwalk import Quaternion
from qqwalk.coin import Coin, u_theta


def dict_evolve(coin: Coin, alpha: Quaternion, beta: Quaternion, steps: int):
    """Reference evolution on a sparse dict x -> (left, right) amplitudes.

    Applies the componentwise update
        L'(x) = a L(x+1) + b R(x+1),  R'(x) = c L(x-1) + d R(x-1)
    literally, with scalar quaternion arithmetic.
    """
    a, b, c, d = coin.entries()
    zero = Quaternion.zero()
    state = {0: (alpha, beta)}
    for _ in range(steps):
        nxt: dict[int, list[Quaternion]] = {}
        for x, (left, right) in state.items():
            lo = nxt.setdefault(x - 1, [zero, zero])
            lo[0] = lo[0] + a * left + b * right
            hi = nxt.setdefault(x + 1, [zero, zero])
            hi[1] = hi[1] + c * left + d * right
        state = {x: (v[0], v[1]) for x, v in nxt.items()}
    return state


def dict_distribution(state) -> dict[int, float]:
    return {x: l.norm_sq() + r.norm_sq() for x, (l, r) in state.items()}


def numeric_char_poly(coin: Coin, theta: float) -> np.ndarray:
    """Coefficients of det(lambda I - U(theta)) from determinant samples.

    Evaluates the determinant at five points on a circle of radius 2 and
    solves the Vandermonde system; no eigen-solve involved.
    """
    u = u_theta(coin, theta)
    lams = 2.0 * np.exp(2j * np.pi * np.arange(5) / 5)
    vals = np.array([np.linalg.det(lam * np.eye(4) - u) for lam in lams])
    vander = np.vander(lams, 5)  # columns lam^4 ... lam^0
    return np.linalg.solve(vander, vals)


def quat_mat_to_complex(mat: np.ndarray) -> np.ndarray:
    """(2, 2, 4) quaternion matrix -> its 4x4 complex image, re-derived."""
    out = np.zeros((4, 4), dtype=np.complex128)
    for r in range(2):
        for c in range(2):
            x0, x1, x2, x3 = mat[r, c]
            sp = complex(x0, x1)
            pp = complex(x2, x3)
            out[2 * r, 2 * c] = sp
            out[2 * r, 2 * c + 1] = -pp
            out[2 * r + 1, 2 * c] = np.conj(pp)
            out[2 * r + 1, 2 * c + 1] = np.conj(sp)
    return out


def random_quaternion(rng: np.random.Generator, scale: float = 1.0) -> Quaternion:
    return Quaternion.from_array(rng.normal(scale=scale, size=4))


def random_spinor(rng: np.random.Generator) -> tuple[Quaternion, Quaternion]:
    """A random normalized initial pair (alpha, beta)."""
    v = rng.normal(size=8)
    v /= np.linalg.norm(v)
    return Quaternion.from_array(v[:4]), Quaternion.from_array(v[4:])
