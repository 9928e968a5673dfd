"""Finite-mode selfdual CAR algebra in a Fock representation.

Mode layout
-----------
There are n = d_plus + d_minus Jordan-Wigner modes: particle modes first
(indices 0..d_plus-1, charge +1 when occupied), then antiparticle modes
(charge -1 when occupied).  Sign strings sit on lower-numbered modes.  Basis
state i occupies mode j iff bit (n-1-j) of i is set, so index 0 is the
vacuum.

Doubled one-particle space
--------------------------
The selfdual space has dimension 2n and is laid out as two copies of C^n:
components 0..n-1 form copy A (gauge phase e^{+is}), components n..2n-1 copy
B (phase e^{-is}).  The antiunitary involution C swaps the copies and
conjugates componentwise.  The generating field is

    B(f) = sum_p (fA_p c_p^+ + fB_p c_p)  +  sum_q (fA_q c_q + fB_q c_q^+),

p over particle modes, q over antiparticle modes, and satisfies B(f)^* = B(Cf)
and {B(f), B(g)} = <Cf, g> exactly.  Copy A of a particle mode creates, copy A
of an antiparticle mode annihilates: charge is raised by +1 either way, which
is what makes cospinors B(f (+) 0) pure charge raisers and spinors B(0 (+) f)
pure charge lowerers.

The Fock state of this representation is the quasifree state whose two-point
operator is the basis projection S = Pi_plus (+) Pi_minus (particle slots of
copy A plus antiparticle slots of copy B).

Boosts act diagonally with one frequency per mode; on the doubled space the
one-particle boost is diag(e^{i t w}) on the charge-raising components and the
conjugate on the lowering ones, so the two copies are mutual adjoints.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.linalg import expm

MAX_MODES = 14


class ModelError(ValueError):
    """Inconsistent one-particle model data."""


@lru_cache(maxsize=8)
def jordan_wigner_ops(n: int) -> tuple[np.ndarray, ...]:
    """Annihilation matrices c_0..c_{n-1} on the 2^n Fock space."""
    lower = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
    zphase = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
    ident = np.eye(2, dtype=complex)
    ops = []
    for j in range(n):
        m = np.eye(1, dtype=complex)
        for k in range(n):
            if k < j:
                m = np.kron(m, zphase)
            elif k == j:
                m = np.kron(m, lower)
            else:
                m = np.kron(m, ident)
        m.flags.writeable = False
        ops.append(m)
    return tuple(ops)


@lru_cache(maxsize=8)
def occupation_table(n: int) -> np.ndarray:
    """(2^n, n) array: occ[i, j] = 1 iff basis state i occupies mode j."""
    idx = np.arange(2 ** n)[:, None]
    shifts = (n - 1 - np.arange(n))[None, :]
    occ = (idx >> shifts) & 1
    occ.flags.writeable = False
    return occ


class OneParticleModel:
    """Doubled one-particle space with boost, gauge, localization, reflection.

    Parameters mirror the JSON model config; see the module docstring for the
    layout.  localized_modes and reflection_pairing use global mode indices.
    """

    def __init__(self, d_plus: int, d_minus: int,
                 boost_freqs_plus, boost_freqs_minus,
                 localized_modes, reflection_pairing=None,
                 rotation_angle: float | None = None,
                 seed: int = 0, validate: bool = True):
        self.d_plus = int(d_plus)
        self.d_minus = int(d_minus)
        self.n_modes = self.d_plus + self.d_minus
        self.seed = int(seed)
        self.boost_freqs_plus = np.asarray(boost_freqs_plus, dtype=float)
        self.boost_freqs_minus = np.asarray(boost_freqs_minus, dtype=float)
        self.localized_modes = tuple(sorted(int(j) for j in localized_modes))
        self.reflection_pairing = (None if reflection_pairing is None
                                   else tuple(int(j) for j in reflection_pairing))
        self.rotation_angle = None if rotation_angle is None else float(rotation_angle)

        if validate:
            self._validate()

        n = self.n_modes
        self.dim = 2 ** n
        self.mode_freqs = np.concatenate([self.boost_freqs_plus, self.boost_freqs_minus])
        self.mode_charges = np.concatenate([np.ones(self.d_plus, dtype=int),
                                            -np.ones(self.d_minus, dtype=int)])
        occ = occupation_table(n)
        self.charges = occ @ self.mode_charges              # Q eigenvalue per basis state
        self.phases = occ @ self.mode_freqs                 # boost generator eigenvalue
        self.parities = 1 - 2 * (occ.sum(axis=1) % 2)       # (-1)^N per basis state

    # -- validation ---------------------------------------------------------
    def _validate(self):
        if self.d_plus < 0 or self.d_minus < 0 or self.n_modes < 1:
            raise ModelError("need at least one mode")
        if self.n_modes > MAX_MODES:
            raise ModelError(f"{self.n_modes} modes exceed the dense-matrix cap {MAX_MODES}")
        if len(self.boost_freqs_plus) != self.d_plus:
            raise ModelError("boost_freqs_plus length must equal d_plus")
        if len(self.boost_freqs_minus) != self.d_minus:
            raise ModelError("boost_freqs_minus length must equal d_minus")
        modes = set(range(self.n_modes))
        locs = set(self.localized_modes)
        if not locs or not locs <= modes:
            raise ModelError("localized_modes must be a nonempty subset of mode indices")
        if locs == modes:
            raise ModelError("localized_modes must be a proper subset (the complement "
                             "carries the reflected wedge)")
        tau = self.reflection_pairing
        if tau is not None:
            if sorted(tau) != list(range(self.n_modes)):
                raise ModelError("reflection_pairing must be a permutation of all modes")
            freqs = np.concatenate([self.boost_freqs_plus, self.boost_freqs_minus])
            species = [j < self.d_plus for j in range(self.n_modes)]
            for j in range(self.n_modes):
                if tau[tau[j]] != j:
                    raise ModelError("reflection_pairing must be an involution")
                if species[tau[j]] != species[j]:
                    raise ModelError("reflection_pairing must preserve particle/antiparticle type")
                if abs(freqs[tau[j]] + freqs[j]) > 1e-12:
                    raise ModelError("reflection_pairing must negate boost frequencies")
            if locs & {tau[j] for j in locs}:
                raise ModelError("reflection_pairing must map localized modes into the complement")

    # -- doubled one-particle operators --------------------------------------
    @property
    def doubled_dim(self) -> int:
        return 2 * self.n_modes

    def conjugation_matrix(self) -> np.ndarray:
        """Matrix part of C; the full map is v -> Cmat @ conj(v)."""
        n = self.n_modes
        zero = np.zeros((n, n))
        eye = np.eye(n)
        return np.block([[zero, eye], [eye, zero]])

    def apply_conjugation(self, f: np.ndarray) -> np.ndarray:
        return self.conjugation_matrix() @ np.conj(np.asarray(f, dtype=complex))

    def basis_projection(self) -> np.ndarray:
        """Two-point operator of the Fock state: Pi+ (+) Pi-."""
        n, dp = self.n_modes, self.d_plus
        diag = np.zeros(2 * n)
        diag[:dp] = 1.0              # copy A, particle slots
        diag[n + dp:] = 1.0          # copy B, antiparticle slots
        return np.diag(diag).astype(complex)

    def gauge_one_particle(self, s: float) -> np.ndarray:
        n = self.n_modes
        diag = np.concatenate([np.full(n, np.exp(1j * s)), np.full(n, np.exp(-1j * s))])
        return np.diag(diag)

    def boost_one_particle(self, t: float) -> np.ndarray:
        """u_xi(t) on the doubled space: copies are mutual adjoints."""
        raise_phase = np.exp(1j * t * self.mode_freqs * self.mode_charges)
        # copy A carries e^{i t w} on particle slots and e^{-i t w} on antiparticle
        # slots (both charge-raising directions); copy B is the conjugate.
        diag = np.concatenate([raise_phase, np.conj(raise_phase)])
        return np.diag(diag)

    def reflection_one_particle(self) -> np.ndarray:
        if self.reflection_pairing is None:
            raise ModelError("model has no reflection_pairing")
        n = self.n_modes
        perm = np.zeros((n, n))
        for j, k in enumerate(self.reflection_pairing):
            perm[k, j] = 1.0
        out = np.zeros((2 * n, 2 * n))
        out[:n, :n] = perm
        out[n:, n:] = perm
        return out.astype(complex)

    def rotation_mode_generator(self) -> np.ndarray:
        """Real antisymmetric generator mixing the first two modes per species."""
        if self.rotation_angle is None:
            raise ModelError("model has no rotation")
        g = np.zeros((self.n_modes, self.n_modes))
        placed = False
        if self.d_plus >= 2:
            g[0, 1], g[1, 0] = -1.0, 1.0
            placed = True
        if self.d_minus >= 2:
            a = self.d_plus
            g[a, a + 1], g[a + 1, a] = -1.0, 1.0
            placed = True
        if not placed:
            raise ModelError("rotation needs at least two modes in some species block")
        return g

    def rotation_one_particle(self) -> np.ndarray:
        w = expm(self.rotation_angle * self.rotation_mode_generator())
        out = np.zeros((self.doubled_dim, self.doubled_dim))
        n = self.n_modes
        out[:n, :n] = w
        out[n:, n:] = w           # real rotation: conjugate copy is identical
        return out.astype(complex)

    # -- Fock-space data ------------------------------------------------------
    def annihilators(self) -> tuple[np.ndarray, ...]:
        return jordan_wigner_ops(self.n_modes)

    def vacuum(self) -> np.ndarray:
        v = np.zeros(self.dim, dtype=complex)
        v[0] = 1.0
        return v

    def charge_values(self) -> list[int]:
        return sorted(set(int(c) for c in self.charges))


def default_model(seed: int = 7) -> OneParticleModel:
    """The 2+2-mode reference model used by the verification suites."""
    return OneParticleModel(
        d_plus=2, d_minus=2,
        boost_freqs_plus=[1.0, -1.0],
        boost_freqs_minus=[1.0, -1.0],
        localized_modes=[0, 2],
        reflection_pairing=[1, 0, 3, 2],
        rotation_angle=np.pi / 4,
        seed=seed,
    )


# -- operators --------------------------------------------------------------

@dataclass(frozen=True)
class FockOperator:
    """Dense operator on the Fock space, tagged with its model."""

    matrix: np.ndarray
    model: OneParticleModel

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.shape != (self.model.dim, self.model.dim):
            raise ValueError(f"operator shape {m.shape} does not match Fock dim {self.model.dim}")
        object.__setattr__(self, "matrix", m)

    def __matmul__(self, other: "FockOperator") -> "FockOperator":
        return FockOperator(self.matrix @ other.matrix, self.model)

    def __add__(self, other: "FockOperator") -> "FockOperator":
        return FockOperator(self.matrix + other.matrix, self.model)

    def __sub__(self, other: "FockOperator") -> "FockOperator":
        return FockOperator(self.matrix - other.matrix, self.model)

    def __mul__(self, scalar) -> "FockOperator":
        return FockOperator(self.matrix * scalar, self.model)

    __rmul__ = __mul__

    def __neg__(self) -> "FockOperator":
        return FockOperator(-self.matrix, self.model)

    @property
    def H(self) -> "FockOperator":
        return FockOperator(self.matrix.conj().T, self.model)

    def norm(self) -> float:
        """Operator norm (largest singular value)."""
        return float(np.linalg.norm(self.matrix, 2))

    def dist(self, other: "FockOperator") -> float:
        return float(np.linalg.norm(self.matrix - other.matrix, 2))

    def charge_shift(self, m: int) -> np.ndarray:
        """Component sum_n E(n+m) F E(n)."""
        q = self.model.charges
        mask = (q[:, None] - q[None, :]) == m
        return np.where(mask, self.matrix, 0.0)

    def charge_shifts(self, tol: float = 0.0) -> dict[int, np.ndarray]:
        """Nonzero charge-shift components, keyed by the shift."""
        q = self.model.charges
        diffs = q[:, None] - q[None, :]
        out = {}
        for m in np.unique(diffs):
            block = np.where(diffs == m, self.matrix, 0.0)
            if np.max(np.abs(block)) > tol:
                out[int(m)] = block
        return out

    def is_gauge_invariant(self, tol: float = 1e-10) -> bool:
        return float(np.max(np.abs(self.matrix - self.charge_shift(0)))) <= tol


def identity_op(model: OneParticleModel) -> FockOperator:
    return FockOperator(np.eye(model.dim, dtype=complex), model)


def field_B(model: OneParticleModel, f) -> FockOperator:
    """The selfdual generator B(f), f in the doubled space C^{2n}."""
    f = np.asarray(f, dtype=complex)
    if f.shape != (model.doubled_dim,):
        raise ValueError(f"field vector must have {model.doubled_dim} components, "
                         f"got shape {f.shape}")
    n, dp = model.n_modes, model.d_plus
    ops = model.annihilators()
    out = np.zeros((model.dim, model.dim), dtype=complex)
    for j in range(n):
        c, cdag = ops[j], ops[j].conj().T
        raise_coef, lower_coef = f[j], f[n + j]
        if j < dp:
            out += raise_coef * cdag + lower_coef * c
        else:
            out += raise_coef * c + lower_coef * cdag
    return FockOperator(out, model)


def cospinor(model: OneParticleModel, f_plus) -> FockOperator:
    """Charge-raising field B(f (+) 0)."""
    f_plus = np.asarray(f_plus, dtype=complex)
    if f_plus.shape != (model.n_modes,):
        raise ValueError(f"cospinor argument must have {model.n_modes} components")
    return field_B(model, np.concatenate([f_plus, np.zeros(model.n_modes, dtype=complex)]))


def spinor(model: OneParticleModel, f_minus) -> FockOperator:
    """Charge-lowering field B(0 (+) f)."""
    f_minus = np.asarray(f_minus, dtype=complex)
    if f_minus.shape != (model.n_modes,):
        raise ValueError(f"spinor argument must have {model.n_modes} components")
    return field_B(model, np.concatenate([np.zeros(model.n_modes, dtype=complex), f_minus]))


def gauge_unitary(model: OneParticleModel, s: float) -> FockOperator:
    """V(s) = exp(isQ), diagonal in the occupation basis."""
    return FockOperator(np.diag(np.exp(1j * s * model.charges)), model)


def charge_projector(model: OneParticleModel, n: int) -> FockOperator:
    return FockOperator(np.diag((model.charges == n).astype(complex)), model)


def charge_operator(model: OneParticleModel) -> FockOperator:
    return FockOperator(np.diag(model.charges.astype(complex)), model)


def boost_unitary(model: OneParticleModel, t: float) -> FockOperator:
    """Second-quantized boost: phase e^{it * (sum of occupied frequencies)}."""
    return FockOperator(np.diag(np.exp(1j * t * model.phases)), model)


def boost_generator(model: OneParticleModel) -> FockOperator:
    return FockOperator(np.diag(model.phases.astype(complex)), model)


def grading_Y(model: OneParticleModel) -> FockOperator:
    """Y = (-1)^N, the Bose/Fermi grading."""
    return FockOperator(np.diag(model.parities.astype(complex)), model)


def twist_Z(model: OneParticleModel) -> FockOperator:
    """Z = (1 - iY)/sqrt(2)."""
    y = grading_Y(model).matrix
    return FockOperator((np.eye(model.dim) - 1j * y) / np.sqrt(2.0), model)


def dgamma(model: OneParticleModel, h: np.ndarray) -> FockOperator:
    """Second quantization of a one-particle mode-space operator h."""
    h = np.asarray(h, dtype=complex)
    n = model.n_modes
    if h.shape != (n, n):
        raise ValueError(f"mode-space operator must be {n}x{n}")
    ops = model.annihilators()
    out = np.zeros((model.dim, model.dim), dtype=complex)
    for j in range(n):
        cdag_j = ops[j].conj().T
        for k in range(n):
            if h[j, k] != 0:
                out += h[j, k] * (cdag_j @ ops[k])
    return FockOperator(out, model)


def exterior_rep(model: OneParticleModel, w: np.ndarray) -> FockOperator:
    """Functorial lift of a mode-space map: Gamma(w) on the Fock space.

    Matrix elements are determinants of submatrices of w; exact for
    permutation matrices (used for the reflection), and an independent
    cross-check of the exp(dGamma) route for unitaries.
    """
    w = np.asarray(w, dtype=complex)
    n = model.n_modes
    occ = occupation_table(n)
    subsets = [tuple(np.nonzero(occ[i])[0]) for i in range(model.dim)]
    out = np.zeros((model.dim, model.dim), dtype=complex)
    for col, src in enumerate(subsets):
        k = len(src)
        for row, dst in enumerate(subsets):
            if len(dst) != k:
                continue
            if k == 0:
                out[row, col] = 1.0
            else:
                out[row, col] = np.linalg.det(w[np.ix_(dst, src)])
    return FockOperator(out, model)


def reflection_fock(model: OneParticleModel) -> FockOperator:
    """Implementer of the wedge reflection on the Fock space."""
    if model.reflection_pairing is None:
        raise ModelError("model has no reflection_pairing")
    perm = np.zeros((model.n_modes, model.n_modes))
    for j, k in enumerate(model.reflection_pairing):
        perm[k, j] = 1.0
    return exterior_rep(model, perm)


def rotation_fock(model: OneParticleModel, angle: float | None = None) -> FockOperator:
    """Implementer of the model rotation (charge-commuting, real orthogonal)."""
    phi = model.rotation_angle if angle is None else float(angle)
    if phi is None:
        raise ModelError("model has no rotation")
    g = model.rotation_mode_generator()
    return FockOperator(expm(phi * dgamma(model, g).matrix), model)


def bogolyubov_fock(model: OneParticleModel, h_plus: np.ndarray,
                    h_minus: np.ndarray) -> tuple[FockOperator, np.ndarray]:
    """Implementer for u = (e^{ih+} (+) e^{ih-}) (+) conj on the doubled space.

    h_plus and h_minus are Hermitian blocks on the particle and antiparticle
    mode spaces.  Returns (U, u) with U the Fock unitary and u the 2n x 2n
    one-particle map; u commutes with C and with the basis projection.
    """
    dp, dm, n = model.d_plus, model.d_minus, model.n_modes
    h_plus = np.asarray(h_plus, dtype=complex)
    h_minus = np.asarray(h_minus, dtype=complex)
    if h_plus.shape != (dp, dp) or h_minus.shape != (dm, dm):
        raise ValueError("Bogolyubov generator blocks have wrong shapes")
    w_plus = expm(1j * h_plus)
    w_minus = expm(1j * h_minus)
    w = np.zeros((n, n), dtype=complex)
    w[:dp, :dp] = w_plus
    w[dp:, dp:] = w_minus
    u = np.zeros((2 * n, 2 * n), dtype=complex)
    u[:n, :n] = w
    u[n:, n:] = np.conj(w)
    # mode-space transformation: raise-coefficients by w+, lower by conj(w-)
    h_modes = np.zeros((n, n), dtype=complex)
    h_modes[:dp, :dp] = h_plus
    h_modes[dp:, dp:] = -np.conj(h_minus)
    big_u = FockOperator(expm(1j * dgamma(model, h_modes).matrix), model)
    return big_u, u


# -- quasifree states -------------------------------------------------------

def validate_quasifree(model: OneParticleModel, s: np.ndarray, tol: float = 1e-10):
    """Check S = S^*, 0 <= S <= 1, C S C = 1 - S."""
    s = np.asarray(s, dtype=complex)
    d = model.doubled_dim
    if s.shape != (d, d):
        raise ValueError(f"two-point operator must be {d}x{d}")
    if np.max(np.abs(s - s.conj().T)) > tol:
        raise ValueError("two-point operator is not selfadjoint")
    eigs = np.linalg.eigvalsh(s)
    if eigs.min() < -tol or eigs.max() > 1.0 + tol:
        raise ValueError("two-point operator spectrum is not within [0, 1]")
    cmat = model.conjugation_matrix()
    flipped = cmat @ np.conj(s) @ cmat
    if np.max(np.abs(flipped - (np.eye(d) - s))) > tol:
        raise ValueError("two-point operator fails C S C = 1 - S")
    return s


def _matchings(indices: list[int]):
    """Perfect matchings as pair lists, smallest-open-index-first."""
    if not indices:
        yield []
        return
    first, rest = indices[0], indices[1:]
    for pos in range(len(rest)):
        partner = rest[pos]
        remaining = rest[:pos] + rest[pos + 1:]
        for sub in _matchings(remaining):
            yield [(first, partner)] + sub


def _permutation_sign(perm: list[int]) -> int:
    sign = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign


def quasifree_npoint(model: OneParticleModel, s: np.ndarray, fs) -> complex:
    """n-point function of the quasifree state with two-point operator S.

    Odd length gives 0; even length 2n is the signed sum over the restricted
    permutations (equivalently perfect matchings) of products of two-point
    values <Cf_a, S f_b>, with the overall (-1)^{n(n-1)/2} prefactor.
    """
    s = validate_quasifree(model, s)
    vectors = [np.asarray(f, dtype=complex) for f in fs]
    k = len(vectors)
    if k % 2 == 1:
        return 0.0 + 0.0j
    if k == 0:
        return 1.0 + 0.0j
    half = k // 2
    pair_value = np.empty((k, k), dtype=complex)
    for a in range(k):
        ca = model.apply_conjugation(vectors[a])
        for b in range(k):
            pair_value[a, b] = np.vdot(ca, s @ vectors[b])
    prefactor = (-1.0) ** (half * (half - 1) // 2)
    total = 0.0 + 0.0j
    for pairs in _matchings(list(range(k))):
        one_line = [p[0] for p in pairs] + [p[1] for p in pairs]
        sign = _permutation_sign(one_line)
        term = 1.0 + 0.0j
        for a, b in pairs:
            term *= pair_value[a, b]
        total += sign * term
    return prefactor * total


def fock_npoint(model: OneParticleModel, fs) -> complex:
    """Vacuum expectation <Omega, B(f_1)...B(f_k) Omega> by matrix products."""
    omega = model.vacuum()
    vec = omega
    for f in reversed(list(fs)):
        vec = field_B(model, f).matrix @ vec
    return complex(np.vdot(omega, vec))


def car_norm_bound(model: OneParticleModel, f) -> float:
    """The unique C*-norm of B(f)."""
    f = np.asarray(f, dtype=complex)
    norm2 = float(np.real(np.vdot(f, f)))
    pairing = abs(np.vdot(f, model.apply_conjugation(f)))
    inner = max(norm2 ** 2 - pairing ** 2, 0.0)
    return float(np.sqrt(0.5 * (norm2 + np.sqrt(inner))))


# -- wedge subalgebra data ----------------------------------------------------

def wedge_subalgebra_basis(model: OneParticleModel, tag: str) -> list[np.ndarray]:
    """Orthonormal doubled-space basis of the tagged wedge subspace.

    W0 spans the localized modes in both copies; W0' is its reflection image;
    'rotated' applies the model rotation to the W0 basis.
    """
    n = model.n_modes
    base = []
    for j in model.localized_modes:
        for offset in (0, n):
            v = np.zeros(2 * n, dtype=complex)
            v[offset + j] = 1.0
            base.append(v)
    if tag == "W0":
        return base
    if tag == "W0p":
        refl = model.reflection_one_particle()
        return [refl @ v for v in base]
    if tag == "rotated":
        rot = model.rotation_one_particle()
        return [rot @ v for v in base]
    raise ValueError(f"unknown wedge tag {tag!r}; expected W0, W0p or rotated")
