"""The covering group Sp(1,1) of SO(1,4)_0, its Lie algebra, and flows.

Membership: g in Sp(1,1) iff g^* gamma0 g = gamma0 (quaternionic adjoint).
The covering homomorphism is evaluated by the trace formula

    pi(g)_{mu nu} = (1/4) eta^{mu mu} Tr(gamma_mu g gamma_nu g^{-1}),

trace in the 4x4 complex realization; the raised first index is the unique
dressing that makes pi(1) = 1 and pi multiplicative.  The boost lift uses
rapidity pi*t against the base group's 2*pi*t, and its sign is pinned by
pi(boost_cover(t)) = boost_base(t) under the normative embedding
x_tilde = sum x^mu gamma_mu.
"""

from __future__ import annotations

import numpy as np
from scipy.linalg import expm

from .geometry import ETA, ETA_DIAG, gamma
from .quaternion import Q_ONE, Quaternion, QuatMatrix2, qmat_dist

SP11_TOL = 1e-10


class NotInSpinGroupError(ValueError):
    """Matrix fails the g^* gamma0 g = gamma0 membership invariant."""


class SpinElement:
    """An element of Sp(1,1), stored as a 2x2 quaternionic matrix."""

    __slots__ = ("matrix",)

    def __init__(self, matrix: QuatMatrix2, tol: float = SP11_TOL):
        residual = sp11_residual(matrix)
        if residual > tol:
            raise NotInSpinGroupError(
                f"not an Sp(1,1) element: membership residual {residual:.3e}")
        self.matrix = matrix

    def __matmul__(self, other: "SpinElement") -> "SpinElement":
        return SpinElement(self.matrix @ other.matrix)

    def __neg__(self) -> "SpinElement":
        return SpinElement(-self.matrix)

    def inverse_matrix(self) -> QuatMatrix2:
        """g^{-1} = gamma0 g^* gamma0, exact on the group."""
        g0 = gamma(0)
        return g0 @ self.matrix.adjoint() @ g0

    def dist(self, other: "SpinElement") -> float:
        return qmat_dist(self.matrix, other.matrix)


def sp11_residual(m: QuatMatrix2) -> float:
    g0 = gamma(0)
    return qmat_dist(m.adjoint() @ g0 @ m, g0)


def spin_identity() -> SpinElement:
    return SpinElement(QuatMatrix2.identity())


def boost_cover(t: float) -> SpinElement:
    """Lift of the reference-wedge boost; rapidity pi*t."""
    c = Quaternion(np.cosh(np.pi * t))
    s = Quaternion(-np.sinh(np.pi * t))
    return SpinElement(QuatMatrix2(((c, s), (s, c))))


def reflection_cover() -> SpinElement:
    """Lift of the wedge reflection: diag(1, -1)."""
    return SpinElement(QuatMatrix2.diag(Q_ONE, -Q_ONE))


def rotation_cover(q: Quaternion) -> SpinElement:
    """diag(q, q) for a unit quaternion: covers an edge rotation (SO(3))."""
    n2 = q.norm2()
    if abs(n2 - 1.0) > 1e-10:
        raise ValueError(f"rotation cover needs a unit quaternion, |q|^2 = {n2}")
    return SpinElement(QuatMatrix2.diag(q, q))


def covering_hom(g: SpinElement) -> np.ndarray:
    """The 5x5 proper orthochronous image of g under the covering map."""
    ginv = g.inverse_matrix()
    out = np.empty((5, 5))
    for nu in range(5):
        conj = g.matrix @ gamma(nu) @ ginv
        for mu in range(5):
            prod = gamma(mu) @ conj
            out[mu, nu] = 0.5 * ETA_DIAG[mu] * prod.diag_scalar_sum()
    if not is_proper_orthochronous(out):
        raise NotInSpinGroupError("covering image failed the SO(1,4)_0 checks")
    return out


def is_proper_orthochronous(lam: np.ndarray, tol: float = 1e-8) -> bool:
    if np.max(np.abs(lam.T @ ETA @ lam - ETA)) > tol:
        return False
    if lam[0, 0] < 1.0 - 1e-10:
        return False
    return abs(np.linalg.det(lam) - 1.0) <= tol


def boost_base(t: float) -> np.ndarray:
    """The reference-wedge boost in SO(1,4)_0; rapidity 2*pi*t."""
    lam = np.eye(5)
    c, s = np.cosh(2.0 * np.pi * t), np.sinh(2.0 * np.pi * t)
    lam[0, 0] = lam[1, 1] = c
    lam[0, 1] = lam[1, 0] = s
    return lam


def reflection_base() -> np.ndarray:
    """(x0, x1, vec x) -> (x0, -x1, -vec x); proper orthochronous in 5 dims."""
    return np.diag([1.0, -1.0, -1.0, -1.0, -1.0])


def rotation_base(phi: float, axis1: int = 1, axis2: int = 2) -> np.ndarray:
    """Rotation by phi in the (x^axis1, x^axis2) plane."""
    lam = np.eye(5)
    c, s = np.cos(phi), np.sin(phi)
    lam[axis1, axis1] = lam[axis2, axis2] = c
    lam[axis1, axis2] = -s
    lam[axis2, axis1] = s
    return lam


# -- so(1,4) --------------------------------------------------------------

def lie_generator(mu: int, nu: int) -> np.ndarray:
    """Basis element M_{mu nu} with (M_{mu nu})_{ab} = eta_{nu a} d_{mu b} - eta_{mu a} d_{nu b}.

    Antisymmetric in the labels; spatial pairs give E_mu_nu - E_nu_mu.
    Integer entries, so bracket identities can be checked exactly.
    """
    m = np.zeros((5, 5), dtype=int)
    if mu == nu:
        return m
    m[nu, mu] += int(ETA_DIAG[nu])
    m[mu, nu] -= int(ETA_DIAG[mu])
    return m


def lie_basis() -> list[tuple[int, int, np.ndarray]]:
    """The ten basis elements (mu, nu, M_{mu nu}) with mu < nu."""
    return [(mu, nu, lie_generator(mu, nu))
            for mu in range(5) for nu in range(mu + 1, 5)]


def lie_bracket(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b - b @ a


def structure_rhs(mu: int, nu: int, rho: int, sigma: int) -> np.ndarray:
    """eta_mr M_ns + eta_ns M_mr - eta_nr M_ms - eta_ms M_nr."""
    eta = ETA_DIAG
    return (int(eta[mu]) * (mu == rho) * lie_generator(nu, sigma)
            + int(eta[nu]) * (nu == sigma) * lie_generator(mu, rho)
            - int(eta[nu]) * (nu == rho) * lie_generator(mu, sigma)
            - int(eta[mu]) * (mu == sigma) * lie_generator(nu, rho))


# Two-dimensional Abelian subgroups: rotation pair, boost+rotation, two null
# rotations about the common null direction e0+e1, null rotation + rotation.
ABELIAN_SUBGROUPS = {
    "L1": (lie_generator(1, 2), lie_generator(3, 4)),
    "L2": (lie_generator(0, 1), lie_generator(2, 3)),
    "L3": (lie_generator(1, 2) - lie_generator(0, 2),
           lie_generator(1, 3) - lie_generator(0, 3)),
    "L4": (lie_generator(1, 2) - lie_generator(0, 2), lie_generator(3, 4)),
}


def abelian_flow(tag: str, t: float, s: float) -> np.ndarray:
    """exp(t*G1) exp(s*G2) for the tagged Abelian generator pair."""
    if tag not in ABELIAN_SUBGROUPS:
        raise KeyError(f"unknown Abelian subgroup tag {tag!r}; expected one of "
                       f"{sorted(ABELIAN_SUBGROUPS)}")
    g1, g2 = ABELIAN_SUBGROUPS[tag]
    return expm(t * g1.astype(float)) @ expm(s * g2.astype(float))


def abelian_commutation_residual(tag: str, t: float, s: float) -> float:
    g1, g2 = ABELIAN_SUBGROUPS[tag]
    e1 = expm(t * g1.astype(float))
    e2 = expm(s * g2.astype(float))
    return float(np.max(np.abs(e1 @ e2 - e2 @ e1)))


J12 = np.diag([1.0, -1.0, -1.0, 1.0, 1.0])


def reflection_obstruction_check(grid: int = 5, extent: float = 1.0) -> dict:
    """j12 Lambda(t,s) j12 = Lambda(-t,-s) for the L2 flow, on a grid.

    The conjugated L2 flow reproduces itself with both parameters negated,
    which is exactly the behaviour that rules this subgroup out as a
    deformation flow: the reflected algebra would carry the same deformation
    sign instead of the flipped one.
    """
    ts = np.linspace(-extent, extent, grid)
    worst = 0.0
    for t in ts:
        for s in ts:
            lhs = J12 @ abelian_flow("L2", t, s) @ J12
            rhs = abelian_flow("L2", -t, -s)
            worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    return {
        "subgroup": "L2",
        "grid": grid,
        "extent": extent,
        "max_residual": worst,
        "passed": bool(worst < 1e-10),
    }


def random_spin_word(rng: np.random.Generator, max_len: int = 4) -> SpinElement:
    """A short random word in boost and reflection lifts.

    Boost parameters stay small so that matrix entries remain moderate and
    absolute float error stays far below the 1e-10 homomorphism tolerance.
    """
    g = spin_identity()
    for _ in range(int(rng.integers(1, max_len + 1))):
        if rng.random() < 0.5:
            g = g @ boost_cover(float(rng.uniform(-0.3, 0.3)))
        else:
            g = g @ reflection_cover()
    return g


def random_proper_lorentz(rng: np.random.Generator, scale: float = 0.7) -> np.ndarray:
    """exp of a random so(1,4) combination: a generic element of SO(1,4)_0."""
    coeffs = rng.uniform(-scale, scale, size=10)
    algebra = sum(c * m.astype(float) for c, (_, _, m) in zip(coeffs, lie_basis()))
    return expm(algebra)
