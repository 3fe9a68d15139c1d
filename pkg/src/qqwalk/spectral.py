"""Spectral analysis of the momentum symbol and weak-limit densities.

The 4x4 unitary symbol U(theta) of the walk has four eigen-angles
lambda_m(theta); their theta-derivatives (group velocities) fill the
support (-r, r) of the limit law of X_n / n.  This module evaluates the
quartic characteristic polynomial in closed form, solves it through a
companion-matrix eigendecomposition with Newton polish, builds eigenvectors
both numerically (null space) and through the closed quaternionic
construction, and evaluates the two limit densities: the arcsine-type law
of complex-coin walks and its generalization for trace-free coins
(vanishing real parts of the diagonal), including quadrature that absorbs
the inverse-square-root edge singularity by the substitution y = r sin(phi).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .coin import Coin, u_theta
from .errors import DegenerateABError, DegenerateError, DomainError
from .quaternion import Quaternion
from .walk import Distribution

__all__ = [
    "EigenPair",
    "EigenvectorParams",
    "LimitDensity",
    "CompareResult",
    "char_poly_coeffs",
    "eigen_system",
    "eigen_angles",
    "appendix_ab",
    "eigenvector_params",
    "eigenvector_closed",
    "group_velocity",
    "group_velocities",
    "case5_angle",
    "case5_group_velocity",
    "support_radius",
    "support_radius_alt",
    "support_radius_scan",
    "qw_limit_density",
    "qqw_limit_params",
    "qqw_limit_density",
    "weight_constant",
    "integrate_weighted_density",
    "limit_moment",
    "limit_cdf",
    "kolmogorov_distance",
    "limit_compare",
]


# ---------------------------------------------------------------------
# characteristic polynomial and eigensystem
# ---------------------------------------------------------------------

def char_poly_coeffs(coin: Coin, theta: float) -> np.ndarray:
    """Coefficients of det(lambda I - U(theta)), descending powers.

    [1, -2(a0 e^{it} + d0 e^{-it}),
        2(2 a0 d0 - Re(bc) + |a|^2 cos 2t),
     -2(d0 e^{it} + a0 e^{-it}), 1]
    """
    a0 = coin.a.re
    d0 = coin.d.re
    asq = coin.a.norm_sq()
    rebc = (coin.b * coin.c).re
    eit = np.exp(1j * theta)
    emit = np.exp(-1j * theta)
    return np.array([
        1.0,
        -2.0 * (a0 * eit + d0 * emit),
        2.0 * (2.0 * a0 * d0 - rebc + asq * math.cos(2.0 * theta)),
        -2.0 * (d0 * eit + a0 * emit),
        1.0,
    ], dtype=np.complex128)


def _quartic_roots(coeffs: np.ndarray) -> np.ndarray:
    """Roots of a monic quartic via its companion matrix, Newton-polished.

    A double root makes the companion eigenvalues split by about
    sqrt(machine eps) symmetrically around the true value, so clusters
    tighter than 1e-7 are collapsed to their mean, which cancels the
    split to first order.
    """
    c = coeffs / coeffs[0]
    comp = np.zeros((4, 4), dtype=np.complex128)
    comp[0, :] = -c[1:]
    comp[1, 0] = comp[2, 1] = comp[3, 2] = 1.0
    roots = np.linalg.eigvals(comp)
    dc = np.polyder(np.poly1d(c)).coeffs
    for _ in range(2):
        num = np.polyval(c, roots)
        den = np.polyval(dc, roots)
        safe = np.abs(den) > 1e-14
        roots = np.where(safe, roots - num / np.where(safe, den, 1.0), roots)
    merged = roots.copy()
    used = np.zeros(4, dtype=bool)
    d2c = np.polyder(np.poly1d(c), 2).coeffs
    for i in range(4):
        if used[i]:
            continue
        cluster = [i]
        for j in range(i + 1, 4):
            if not used[j] and abs(roots[i] - roots[j]) < 1e-7:
                cluster.append(j)
                used[j] = True
        if len(cluster) == 2:
            # a double root is a simple root of the derivative: polish the
            # cluster mean with Newton steps on p'
            z = np.mean(roots[cluster])
            for _ in range(3):
                den = np.polyval(d2c, z)
                if abs(den) < 1e-14:
                    break
                z = z - np.polyval(dc, z) / den
            merged[cluster] = z
        elif len(cluster) > 2:
            merged[cluster] = np.mean(roots[cluster])
    return merged


@dataclass
class EigenPair:
    theta: float
    lam: float                 # eigen-angle in [-pi, pi)
    value: complex             # e^{i lam}
    vector: np.ndarray         # (4,) complex, unit norm
    residual: float            # ||U v - value v||


def _null_vector(m: np.ndarray) -> np.ndarray:
    """Unit vector minimizing ||m v||, with a deterministic phase."""
    _, _, vh = np.linalg.svd(m)
    v = vh[-1].conj()
    k = int(np.argmax(np.abs(v)))
    phase = v[k] / abs(v[k])
    v = v / phase
    return v / np.linalg.norm(v)


def eigen_angles(coin: Coin, theta: float) -> np.ndarray:
    """Sorted eigen-angles of U(theta) in [-pi, pi)."""
    roots = _quartic_roots(char_poly_coeffs(coin, theta))
    angles = np.angle(roots)
    angles[angles >= math.pi] -= 2.0 * math.pi
    return np.sort(angles)


def eigen_system(coin: Coin, theta: float,
                 degeneracy_tol: float = 1e-8) -> list[EigenPair]:
    """Four eigenpairs of U(theta), sorted by eigen-angle.

    Raises DegenerateError when two eigenvalues are closer than
    `degeneracy_tol`; such momentum nodes must be excluded by the caller.
    """
    u = u_theta(coin, theta)
    roots = _quartic_roots(char_poly_coeffs(coin, theta))
    for i in range(4):
        for j in range(i + 1, 4):
            if abs(roots[i] - roots[j]) < degeneracy_tol:
                raise DegenerateError(theta)
    angles = np.angle(roots)
    angles[angles >= math.pi] -= 2.0 * math.pi
    order = np.argsort(angles)
    pairs = []
    eye = np.eye(4, dtype=np.complex128)
    for idx in order:
        lam = float(angles[idx])
        value = complex(np.exp(1j * lam))
        vec = _null_vector(u - value * eye)
        residual = float(np.linalg.norm(u @ vec - value * vec))
        pairs.append(EigenPair(theta, lam, value, vec, residual))
    return pairs


# ---------------------------------------------------------------------
# closed eigenvector construction
# ---------------------------------------------------------------------

def appendix_ab(coin: Coin, theta: float, lam: float) -> tuple[Quaternion, Quaternion]:
    """The quaternion pair (A, B) of the relation A s = B s i for the

    simplex-perplex halves of the eigenvector; both vanish only at
    degenerate nodes.
    """
    a, b, c, d = coin.entries()
    bbar = b.conj()
    cm = math.cos(lam - theta)
    cp = math.cos(lam + theta)
    c2 = math.cos(2.0 * lam)
    sm = math.sin(lam - theta)
    sp = math.sin(lam + theta)
    s2 = math.sin(2.0 * lam)
    av = c + (d * bbar) * cm + (bbar * a) * cp - bbar * c2
    bv = -(d * bbar) * sm - (bbar * a) * sp + bbar * s2
    return av, bv


@dataclass
class EigenvectorParams:
    """Direction quaternion C (unit, pure imaginary at true eigen-angles),

    the squared magnitude of B, and T = b d conj(b) + conj(c) d c.
    """

    c: Quaternion
    bsq: float
    t: Quaternion


def _t_quaternion(coin: Coin) -> Quaternion:
    b, c, d = coin.b, coin.c, coin.d
    return b * d * b.conj() + c.conj() * d * c


def eigenvector_params(coin: Coin, theta: float, lam: float,
                       formula: str = "appendix") -> EigenvectorParams:
    """Compute the eigenvector direction parameter C.

    formula="appendix": C = B^{-1} A from the defining relation (exact).
    formula="general":  the printed general-momentum expression
                        Im(2|b|^2 sin(l-t) a + sin(l+t) T + b c sin 2l
                           - b conj(d)^2 c sin 2t) / |B|^2.
    formula="case5":    the trace-free variant
                        Im(2|b|^2 a sin(l-t) + T sin(l+t)
                           + b c (sin 2l + |a|^2 sin 2t)) / |B|^2,
                        |B|^2 = 2|a|^2 Re(bc) cos 2t + G - 2|a|^4.
    """
    a, b, c, d = coin.entries()
    av, bv = appendix_ab(coin, theta, lam)
    t_quat = _t_quaternion(coin)
    bsq_exact = bv.norm_sq()
    if formula == "appendix":
        if av.norm() * bv.norm() <= 1e-10:
            raise DegenerateABError(f"|A||B| ~ 0 at theta={theta!r}, lambda={lam!r}")
        return EigenvectorParams(bv.inverse() * av, bsq_exact, t_quat)

    sm = math.sin(lam - theta)
    sp = math.sin(lam + theta)
    s2l = math.sin(2.0 * lam)
    s2t = math.sin(2.0 * theta)
    bnorm = b.norm_sq()
    anorm = a.norm_sq()
    if formula == "general":
        big = (2.0 * bnorm * sm) * a + sp * t_quat + (b * c) * s2l \
            - (b * d.conj() * d.conj() * c) * s2t
        a0, d0 = a.re, d.re
        re_aabc = (a.conj() * a.conj() * b * c).re
        bsq = (anorm * bnorm * (sm * sm + sp * sp)
               - 2.0 * bnorm * (a0 * sp + d0 * sm) * s2l
               - 2.0 * re_aabc * sm * sp
               + bnorm * s2l * s2l)
    elif formula == "case5":
        rebc = (b * c).re
        g = 1.0 + anorm * anorm - rebc * rebc
        big = (2.0 * bnorm * sm) * a + sp * t_quat \
            + (b * c) * (s2l + anorm * s2t)
        bsq = 2.0 * anorm * rebc * math.cos(2.0 * theta) + g - 2.0 * anorm * anorm
    else:
        raise ValueError(f"unknown formula {formula!r}")
    if abs(bsq) <= 1e-12:
        raise DegenerateABError(f"|B|^2 ~ 0 at theta={theta!r}, lambda={lam!r}")
    return EigenvectorParams(big.imag_part() / bsq, bsq, t_quat)


def eigenvector_closed(coin: Coin, theta: float, lam: float,
                       formula: str = "appendix") -> np.ndarray:
    """Unit eigenvector of U(theta) for eigenvalue e^{i lam}, built from

    the closed construction: s = p - C p i with seed p = |b|^2, then
    t = (conj(b)/|b|^2) (s e^{i(lam-theta)} - a s); the vector is
    (s', conj(s''), t', conj(t'')).

    The map p -> p - C p i is twice a projection; when C approaches -i
    the real seed lands in its kernel.  The perplex seed p = |b|^2 j spans
    the complementary branches, so whichever seed gives the larger s wins.
    """
    b = coin.b
    bsq = b.norm_sq()
    if bsq <= 1e-20:
        raise DegenerateABError("construction needs b != 0")
    params = eigenvector_params(coin, theta, lam, formula=formula)
    cq = params.c
    unit_i = Quaternion.i()
    candidates = [Quaternion(bsq), Quaternion(0.0, 0.0, bsq, 0.0)]
    s = max((p - cq * p * unit_i for p in candidates),
            key=lambda q: q.norm())
    phase = Quaternion(math.cos(lam - theta), math.sin(lam - theta), 0.0, 0.0)
    t = (b.conj() / bsq) * (s * phase - coin.a * s)
    vec = np.array([
        s.simplex,
        np.conj(s.perplex),
        t.simplex,
        np.conj(t.perplex),
    ], dtype=np.complex128)
    norm = np.linalg.norm(vec)
    if norm <= 1e-14:
        raise DegenerateABError("construction produced a null vector")
    vec /= norm
    k = int(np.argmax(np.abs(vec)))
    vec /= vec[k] / abs(vec[k])
    return vec


# ---------------------------------------------------------------------
# group velocities
# ---------------------------------------------------------------------

def _circle_diff(x: np.ndarray | float, y: np.ndarray | float):
    """x - y wrapped to (-pi, pi]."""
    d = np.asarray(x) - np.asarray(y)
    return (d + math.pi) % (2.0 * math.pi) - math.pi


def _match_nearest(ref: np.ndarray, other: np.ndarray) -> np.ndarray:
    """For each angle in `ref`, the nearest angle (on the circle) in `other`."""
    diff = np.abs(_circle_diff(ref[:, None], other[None, :]))
    return other[np.argmin(diff, axis=1)]


def group_velocities(coin: Coin, theta: float, h: float = 1e-6) -> np.ndarray:
    """d lambda_m / d theta for the four branches, by central differences

    with nearest-on-circle branch matching.  Raises DegenerateError when
    the spectrum degenerates anywhere in the stencil.
    """
    lam0 = eigen_angles(coin, theta)
    for offset in (0.0, -h, h):
        angles = eigen_angles(coin, theta + offset)
        gaps = np.abs(_circle_diff(angles[:, None], angles[None, :]))
        np.fill_diagonal(gaps, np.inf)
        if np.min(gaps) < 1e-8:
            raise DegenerateError(theta + offset)
    lam_plus = _match_nearest(lam0, eigen_angles(coin, theta + h))
    lam_minus = _match_nearest(lam0, eigen_angles(coin, theta - h))
    return np.asarray(_circle_diff(lam_plus, lam_minus)) / (2.0 * h)


def group_velocity(coin: Coin, theta: float, branch: int, h: float = 1e-6) -> float:
    """Numeric d lambda / d theta for one branch (branches sorted by angle)."""
    return float(group_velocities(coin, theta, h=h)[branch])


def _case5_params(coin: Coin, tol: float = 1e-12) -> tuple[float, float]:
    # The trace-free predicate (Re a = Re d = 0) is the actual domain of
    # the closed limit law; coins in the overlap with the split-structure
    # class carry the case4 tag but still satisfy it.
    if abs(coin.a.re) > tol or abs(coin.d.re) > tol:
        raise DomainError("limit law requires vanishing real parts of a and d")
    if any(q.is_zero() for q in coin.entries()):
        raise DomainError("limit law requires a, b, c, d all nonzero")
    return coin.a.norm_sq(), (coin.b * coin.c).re


def case5_angle(coin: Coin, theta: float) -> float:
    """The eigen-angle lambda in [0, pi/2] of a trace-free coin:

    cos 2*lambda = Re(bc) - |a|^2 cos 2*theta, so the spectrum is
    {e^{i lam}, -e^{i lam}, e^{-i lam}, -e^{-i lam}}.
    """
    u, s = _case5_params(coin)
    c2l = min(1.0, max(-1.0, s - u * math.cos(2.0 * theta)))
    return 0.5 * math.acos(c2l)


def case5_group_velocity(coin: Coin, theta: float) -> float:
    """Analytic d lambda / d theta magnitude for a trace-free coin.

    y = |a|^2 sin 2t / (sqrt(1 - Re(bc) + |a|^2 cos 2t)
                        * sqrt(1 + Re(bc) - |a|^2 cos 2t)),
    with the radicands rearranged into sums of non-negative terms
    (1 +- Re(bc) -+ |a|^2) + 2 |a|^2 {sin, cos}^2(t), so the value stays
    accurate arbitrarily close to band-touching momenta.  The constant
    offsets are clamped at zero: they are non-negative for every unitary
    coin and only float representation noise can push them below.
    """
    u, s = _case5_params(coin)
    st, ct = math.sin(theta), math.cos(theta)
    base_plus = max(0.0, (1.0 + s) - u)
    base_minus = max(0.0, (1.0 - s) - u)
    d_plus = base_plus + 2.0 * u * st * st    # 1 + cos 2*lambda
    d_minus = base_minus + 2.0 * u * ct * ct  # 1 - cos 2*lambda
    denom = math.sqrt(d_plus * d_minus)
    num = u * math.sin(2.0 * theta)
    if denom == 0.0:
        return math.nan
    return num / denom


# ---------------------------------------------------------------------
# limit densities
# ---------------------------------------------------------------------

@dataclass
class LimitDensity:
    """Parameters of a weak-limit density.

    kind "qw": the arcsine-type law with support radius r = |a|.
    kind "qqw-case5": the trace-free generalization with
    G = 1 + |a|^4 - Re(bc)^2 and
    r = sqrt((G - sqrt(G^2 - 4 |a|^4)) / 2).
    """

    r: float
    g: float
    a_sq: float
    rebc: float
    kind: str
    weight: float = 0.0


def _g_constant(u: float, s: float) -> float:
    # grouped so that G = 1 exactly when |Re(bc)| = |a|^2 in floats
    return 1.0 + (u * u - s * s)


def support_radius(coin: Coin) -> float:
    """r = sqrt((G - sqrt(G^2 - 4 |a|^4)) / 2) for a trace-free coin.

    The discriminant is computed as (G - 2|a|^2)(G + 2|a|^2) and clamped
    at zero: coins whose b*c is real sit exactly on the double-root
    boundary, where the naive expression would turn representation noise
    of order 1e-16 into an error of order 1e-8 in r.
    """
    u, s = _case5_params(coin)
    g = _g_constant(u, s)
    disc = max(0.0, (g - 2.0 * u) * (g + 2.0 * u))
    return math.sqrt(max(0.0, (g - math.sqrt(disc)) / 2.0))


def support_radius_alt(coin: Coin) -> float:
    """The equivalent surd form

    (sqrt((1 + |a|^2)^2 - Re(bc)^2) - sqrt((1 - |a|^2)^2 - Re(bc)^2)) / 2,
    with both radicands factored into ((1 +- |a|^2) - Re(bc)) *
    ((1 +- |a|^2) + Re(bc)) and clamped, for the same boundary reason.
    """
    u, s = _case5_params(coin)
    hi = max(0.0, ((1.0 + u) - s) * ((1.0 + u) + s))
    lo = max(0.0, ((1.0 - u) - s) * ((1.0 - u) + s))
    return (math.sqrt(hi) - math.sqrt(lo)) / 2.0


def support_radius_scan(coin: Coin, grid: int = 4096) -> float:
    """sup over theta of |d lambda / d theta| by grid scan plus golden-

    section refinement of the analytic branch derivative.
    """
    _case5_params(coin)

    def speed(th: float) -> float:
        val = case5_group_velocity(coin, th)
        return abs(val) if math.isfinite(val) else -math.inf

    thetas = (np.arange(grid) + 0.5) * (math.pi / grid)
    values = np.array([speed(t) for t in thetas])
    k = int(np.argmax(values))
    # the supremum can sit at a band-touching endpoint, so widen the
    # refinement bracket to the interval edge when the best grid point
    # is the first or last one
    lo = thetas[k - 1] if k > 0 else 0.0
    hi = thetas[k + 1] if k < grid - 1 else math.pi
    # golden-section maximization on [lo, hi]
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    x1 = hi - invphi * (hi - lo)
    x2 = lo + invphi * (hi - lo)
    f1, f2 = speed(x1), speed(x2)
    for _ in range(200):
        if f1 < f2:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + invphi * (hi - lo)
            f2 = speed(x2)
        else:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - invphi * (hi - lo)
            f1 = speed(x1)
        if hi - lo < 1e-13:
            break
    return max(values[k], f1, f2)


def qw_limit_params(coin: Coin) -> LimitDensity:
    """Limit-density parameters of a complex-coin walk: support |a|."""
    if not coin.is_complex():
        raise DomainError("coin entries must be complex")
    if any(q.is_zero() for q in coin.entries()):
        raise DomainError("limit law requires a, b, c, d all nonzero")
    u = coin.a.norm_sq()
    s = (coin.b * coin.c).re
    return LimitDensity(r=math.sqrt(u), g=_g_constant(u, s),
                        a_sq=u, rebc=s, kind="qw")


def qqw_limit_params(coin: Coin) -> LimitDensity:
    """Limit-density parameters of a trace-free quaternionic coin."""
    u, s = _case5_params(coin)
    return LimitDensity(r=support_radius(coin), g=_g_constant(u, s),
                        a_sq=u, rebc=s, kind="qqw-case5")


def qw_limit_density(y, r: float):
    """The arcsine-type density sqrt(1 - r^2) / (pi (1 - y^2) sqrt(r^2 - y^2))

    on (-r, r); zero outside; +inf exactly at the edges.  Vectorized in y.
    """
    if not 0.0 < r < 1.0:
        raise DomainError("support radius must satisfy 0 < r < 1")
    y = np.asarray(y, dtype=float)
    out = np.zeros_like(y)
    inside = np.abs(y) < r
    yy = y[inside]
    out[inside] = math.sqrt(1.0 - r * r) / (
        math.pi * (1.0 - yy * yy) * np.sqrt(r * r - yy * yy))
    out[np.abs(y) == r] = math.inf
    if out.ndim == 0:
        return float(out)
    return out


def _qqw_edge_free(params: LimitDensity, y: np.ndarray) -> np.ndarray:
    """f(y) * sqrt(r^2 - y^2), bounded up to the support edge."""
    r, g, u = params.r, params.g, params.a_sq
    disc = math.sqrt(max(0.0, (g - 2.0 * u) * (g + 2.0 * u)))
    big_rsq = (g + disc) / 2.0
    num = np.maximum((g - 2.0) * y * y + (g - 2.0 * u * u)
                     + (1.0 - y * y) * disc, 0.0)
    den = np.sqrt(np.maximum(big_rsq - y * y, 0.0))
    # den vanishes together with num at |y| = r on the double-root
    # boundary; those points carry zero quadrature weight
    safe = np.where(den > 0.0, den, 1.0)
    return np.where(den > 0.0,
                    math.sqrt(2.0) * np.sqrt(num)
                    / (2.0 * math.pi * (1.0 - y * y) * safe),
                    0.0)


def _edge_free_factor(params: LimitDensity, y: np.ndarray) -> np.ndarray:
    """f(y) * sqrt(r^2 - y^2) for either density family."""
    y = np.asarray(y, dtype=float)
    if params.kind == "qw":
        r = params.r
        return math.sqrt(1.0 - r * r) / (math.pi * (1.0 - y * y))
    return _qqw_edge_free(params, y)


def qqw_limit_density(params: LimitDensity | Coin, y):
    """The trace-free limit density; reduces to the complex-walk density

    with support |a|^2 when Re(bc) = 0.  Vectorized in y.
    """
    if isinstance(params, Coin):
        params = qqw_limit_params(params)
    if params.kind == "qw":
        return qw_limit_density(y, params.r)
    r = params.r
    y = np.asarray(y, dtype=float)
    out = np.zeros_like(y)
    inside = np.abs(y) < r
    yy = y[inside]
    out[inside] = _qqw_edge_free(params, yy) / np.sqrt(r * r - yy * yy)
    out[np.abs(y) == r] = math.inf
    if out.ndim == 0:
        return float(out)
    return out


def weight_constant(coin: Coin, alpha: Quaternion, beta: Quaternion) -> float:
    """The linear skew of the limit density:

    |alpha|^2 - |beta|^2 - 2 Re(a alpha conj(b beta)) / |a|^2.

    The cross term is computed as a real part, which is always real; for
    quaternionic data the two summands of the printed symmetrization can
    carry opposite imaginary parts, and the real part is what the moment
    expansion uses.
    """
    asq = coin.a.norm_sq()
    if asq <= 1e-24:
        raise DomainError("weight constant requires a != 0")
    cross = (coin.a * alpha * (coin.b * beta).conj()).re
    return alpha.norm_sq() - beta.norm_sq() - 2.0 * cross / asq


@lru_cache(maxsize=32)
def _gauss_legendre(n: int) -> tuple[np.ndarray, np.ndarray]:
    nodes, weights = np.polynomial.legendre.leggauss(n)
    return nodes, weights


def integrate_weighted_density(params: LimitDensity, weight_c: float = 0.0,
                               moment: int = 0, n_nodes: int = 2000) -> float:
    """integral of y^moment (1 - C y) f(y) dy over (-r, r).

    Under y = r sin(phi) the Jacobian cancels the inverse-square-root edge
    factor analytically, so the integrand is the bounded function
    y^moment (1 - C y) [f(y) sqrt(r^2 - y^2)] sampled at open
    Gauss-Legendre nodes.
    """
    r = params.r
    x, w = _gauss_legendre(n_nodes)
    phi = 0.5 * math.pi * x
    y = r * np.sin(phi)
    integrand = (y ** moment) * (1.0 - weight_c * y) * _edge_free_factor(params, y)
    return float(np.sum(w * integrand) * 0.5 * math.pi)


def limit_moment(coin: Coin, alpha: Quaternion, beta: Quaternion,
                 order: int, n_nodes: int = 2000) -> float:
    """Moment of the limit law: integral of y^order (1 - C y) f(y) dy."""
    params = qqw_limit_params(coin)
    c = weight_constant(coin, alpha, beta)
    return integrate_weighted_density(params, weight_c=c, moment=order,
                                      n_nodes=n_nodes)


def limit_cdf(params: LimitDensity, weight_c: float, ys, n_nodes: int = 400):
    """F(y) = integral_{-r}^{y} (1 - C t) f(t) dt, vectorized over ys."""
    r = params.r
    ys = np.atleast_1d(np.asarray(ys, dtype=float))
    phi_hi = np.arcsin(np.clip(ys / r, -1.0, 1.0))
    x, w = _gauss_legendre(n_nodes)
    half = 0.5 * (phi_hi + 0.5 * math.pi)          # (ny,)
    mid = 0.5 * (phi_hi - 0.5 * math.pi)
    phi = mid[:, None] + half[:, None] * x[None, :]  # (ny, nn)
    t = r * np.sin(phi)
    integrand = (1.0 - weight_c * t) * _edge_free_factor(params, t)
    return np.sum(w[None, :] * integrand, axis=1) * half


def kolmogorov_distance(dist: Distribution, params: LimitDensity,
                        weight_c: float) -> float:
    """max_i |F_emp(y_i) - F_limit(y_i)| over the support points y_i = x/n

    of the rescaled distribution at time n, with F_emp right-continuous.

    Evaluating at the support points (rather than taking the full
    two-sided supremum) avoids the half-atom offset of order max_x P(x)/2
    that atomization alone contributes near the band-edge singularity; it
    is the statistic such convergence studies plot.
    """
    n = dist.n
    ys = dist.positions() / n
    cum = np.cumsum(dist.probs)
    f_lim = limit_cdf(params, weight_c, ys)
    return float(np.max(np.abs(cum - f_lim)))


@dataclass
class CompareResult:
    kolmogorov: float
    r: float
    g: float
    weight_c: float


def limit_compare(coin: Coin, alpha: Quaternion, beta: Quaternion,
                  n: int) -> CompareResult:
    """Kolmogorov distance between the exact rescaled distribution at time n

    and the weak-limit CDF of a trace-free coin.
    """
    from .walk import distribution, evolve

    if n < 100 or n % 2:
        raise DomainError("comparison is defined for even n >= 100")
    params = qqw_limit_params(coin)
    c = weight_constant(coin, alpha, beta)
    dist = distribution(evolve(coin, alpha, beta, n))
    dist_val = kolmogorov_distance(dist, params, c)
    return CompareResult(kolmogorov=dist_val, r=params.r, g=params.g, weight_c=c)
