"""Ambient Minkowski form, gamma matrices, and the hyperboloid chart.

Conventions pinned here and relied on everywhere else:

* eta = diag(1, -1, -1, -1, -1) on the ambient R^5.
* gamma_0 = diag(1, -1), gamma_1 = [[0, 1], [-1, 0]] and, for k = 2, 3, 4,
  gamma_k = [[0, u], [u, 0]] with u = e1, e2, e3 the quaternion units.  The
  Clifford relations {gamma_mu, gamma_nu} = 2 eta_mu_nu hold exactly in
  quaternion arithmetic, and the product gamma_0*...*gamma_4 is the scalar -1
  (the representation identifies the two irreducible Clifford modules, so it
  is not faithful).
* Points x with eta(x, x) = -1 embed as x_tilde = sum_mu x^mu gamma_mu; the
  inverse reads off x^mu = (1/4) eta^{mu mu} Tr(gamma_mu x_tilde) with the
  trace taken in the 4x4 complex realization.  The raised index makes
  extract_point the exact linear inverse of embed_point.
"""

from __future__ import annotations

import numpy as np

from .quaternion import Q_E1, Q_E2, Q_E3, Q_ONE, Q_ZERO, QuatMatrix2

ETA_DIAG = np.array([1.0, -1.0, -1.0, -1.0, -1.0])
ETA = np.diag(ETA_DIAG)

HYPERBOLOID_TOL = 1e-9


class OffHyperboloidError(ValueError):
    """Input point does not satisfy eta(x, x) = -1 within tolerance."""


class NonCoercibleMatrixError(ValueError):
    """Matrix is not the embedding of any ambient point."""


def minkowski_form(a, b) -> float:
    """eta(a, b) = a0*b0 - sum_k ak*bk for ambient 5-vectors."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    return float(np.sum(ETA_DIAG * a * b))


_GAMMAS = (
    QuatMatrix2.diag(Q_ONE, -Q_ONE),
    QuatMatrix2(((Q_ZERO, Q_ONE), (-Q_ONE, Q_ZERO))),
    QuatMatrix2(((Q_ZERO, Q_E1), (Q_E1, Q_ZERO))),
    QuatMatrix2(((Q_ZERO, Q_E2), (Q_E2, Q_ZERO))),
    QuatMatrix2(((Q_ZERO, Q_E3), (Q_E3, Q_ZERO))),
)


def gamma(mu: int) -> QuatMatrix2:
    """The generator gamma_mu, mu in 0..4."""
    if not 0 <= mu <= 4:
        raise IndexError(f"gamma index must be in 0..4, got {mu}")
    return _GAMMAS[mu]


def embed_point(x, strict: bool = True, tol: float = HYPERBOLOID_TOL) -> QuatMatrix2:
    """x_tilde = sum_mu x^mu gamma_mu.

    In strict mode x must lie on the hyperboloid eta(x, x) = -1.
    """
    x = np.asarray(x, dtype=float)
    if x.shape != (5,):
        raise ValueError(f"ambient point must have 5 components, got shape {x.shape}")
    if strict:
        defect = abs(minkowski_form(x, x) + 1.0)
        if defect > tol:
            raise OffHyperboloidError(
                f"point is off the hyperboloid: |eta(x,x)+1| = {defect:.3e} > {tol:.1e}")
    m = _GAMMAS[0].scale(x[0])
    for mu in range(1, 5):
        m = m + _GAMMAS[mu].scale(x[mu])
    return m


def extract_point(m: QuatMatrix2, tol: float = 1e-8) -> np.ndarray:
    """Inverse of embed_point via the raised-index trace formula.

    Raises NonCoercibleMatrixError when m is not (close to) an embedded point.
    """
    x = np.empty(5)
    for mu in range(5):
        prod = _GAMMAS[mu] @ m
        # Tr over the 4x4 realization equals twice the diagonal scalar sum.
        x[mu] = 0.5 * ETA_DIAG[mu] * prod.diag_scalar_sum()
    residual = (embed_point(x, strict=False) - m).max_abs()
    if residual > tol:
        raise NonCoercibleMatrixError(
            f"matrix is not an embedded ambient point: roundtrip residual {residual:.3e}")
    return x


def eta_identity_residual(x) -> float:
    """Max-abs defect of eta(x,x)*1 = x_tilde^* gamma0 x_tilde gamma0."""
    m = embed_point(x, strict=False)
    lhs = (m.adjoint() @ _GAMMAS[0] @ m @ _GAMMAS[0]).to_complex()
    rhs = minkowski_form(x, x) * np.eye(4, dtype=complex)
    return float(np.max(np.abs(lhs - rhs)))


def clifford_residual() -> float:
    """Max defect of {gamma_mu, gamma_nu} = 2 eta_mu_nu over all 25 pairs."""
    worst = 0.0
    for mu in range(5):
        for nu in range(5):
            anti = (_GAMMAS[mu] @ _GAMMAS[nu]) + (_GAMMAS[nu] @ _GAMMAS[mu])
            target = QuatMatrix2.identity().scale(2.0 * ETA[mu, nu])
            worst = max(worst, (anti - target).max_abs())
    return worst


def pseudoscalar() -> np.ndarray:
    """gamma_0 gamma_1 gamma_2 gamma_3 gamma_4 in the 4x4 complex realization.

    Equals -1 exactly in this representation: the product of all five
    generators is central and scalar, which is what makes the representation
    non-faithful on the full Clifford algebra.
    """
    prod = _GAMMAS[0]
    for mu in range(1, 5):
        prod = prod @ _GAMMAS[mu]
    return prod.to_complex()


def sample_hyperboloid(n: int, rng: np.random.Generator,
                       rho_range: tuple[float, float] = (-2.0, 2.0)) -> np.ndarray:
    """n seeded points on eta(x,x) = -1.

    x0 = sinh(rho) with rho uniform in rho_range; the spatial part is
    cosh(rho) times a uniform direction on S^3.
    """
    rho = rng.uniform(rho_range[0], rho_range[1], size=n)
    direction = rng.normal(size=(n, 4))
    direction /= np.linalg.norm(direction, axis=1, keepdims=True)
    points = np.empty((n, 5))
    points[:, 0] = np.sinh(rho)
    points[:, 1:] = np.cosh(rho)[:, None] * direction
    return points
