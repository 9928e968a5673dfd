"""Exact quaternion scalars and 2x2 quaternionic matrices.

Arithmetic is carried out directly on the real coefficients over the basis
{1, e1, e2, e3} with e1*e2 = e3 (cyclic), so group computations stay exact up
to float rounding of the inputs.

The complex realization maps a quaternion to a 2x2 complex block,

    1 -> I,   e1 -> -i*sigma1,   e2 -> -i*sigma2,   e3 -> -i*sigma3,

which is a homomorphism of real algebras (e_j^2 = -1, e1*e2 = e3).  A 2x2
quaternionic matrix realizes as a 4x4 complex matrix by replacing each entry
with its block.  Only relations are observable downstream; this fixed chart is
validated by the Clifford-relation tests.
"""

from __future__ import annotations

import numpy as np

_SIGMA1 = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
_SIGMA2 = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
_SIGMA3 = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)


class Quaternion:
    """A quaternion w + x*e1 + y*e2 + z*e3 with float coefficients."""

    __slots__ = ("w", "x", "y", "z")

    def __init__(self, w: float = 0.0, x: float = 0.0, y: float = 0.0, z: float = 0.0):
        self.w = float(w)
        self.x = float(x)
        self.y = float(y)
        self.z = float(z)

    # -- algebra -----------------------------------------------------------
    def __add__(self, other: "Quaternion") -> "Quaternion":
        return Quaternion(self.w + other.w, self.x + other.x,
                          self.y + other.y, self.z + other.z)

    def __sub__(self, other: "Quaternion") -> "Quaternion":
        return Quaternion(self.w - other.w, self.x - other.x,
                          self.y - other.y, self.z - other.z)

    def __neg__(self) -> "Quaternion":
        return Quaternion(-self.w, -self.x, -self.y, -self.z)

    def __mul__(self, other):
        if isinstance(other, Quaternion):
            a, b = self, other
            return Quaternion(
                a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
                a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
                a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
                a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
            )
        return Quaternion(self.w * other, self.x * other, self.y * other, self.z * other)

    def __rmul__(self, scalar: float) -> "Quaternion":
        return Quaternion(self.w * scalar, self.x * scalar, self.y * scalar, self.z * scalar)

    def conjugate(self) -> "Quaternion":
        return Quaternion(self.w, -self.x, -self.y, -self.z)

    def norm2(self) -> float:
        """|q|^2 = q * conj(q), a nonnegative real scalar."""
        return self.w ** 2 + self.x ** 2 + self.y ** 2 + self.z ** 2

    def scalar_part(self) -> float:
        return self.w

    # -- realization and comparison ----------------------------------------
    def to_complex(self) -> np.ndarray:
        """2x2 complex block w*I - i*(x*sigma1 + y*sigma2 + z*sigma3)."""
        return (self.w * np.eye(2, dtype=complex)
                - 1.0j * (self.x * _SIGMA1 + self.y * _SIGMA2 + self.z * _SIGMA3))

    def coeffs(self) -> np.ndarray:
        return np.array([self.w, self.x, self.y, self.z])

    def __repr__(self) -> str:
        return f"Quaternion({self.w}, {self.x}, {self.y}, {self.z})"


Q_ZERO = Quaternion()
Q_ONE = Quaternion(1.0)
Q_E1 = Quaternion(0.0, 1.0)
Q_E2 = Quaternion(0.0, 0.0, 1.0)
Q_E3 = Quaternion(0.0, 0.0, 0.0, 1.0)


class QuatMatrix2:
    """2x2 matrix over the quaternions."""

    __slots__ = ("entries",)

    def __init__(self, entries):
        ((a, b), (c, d)) = entries
        self.entries = ((a, b), (c, d))

    @staticmethod
    def identity() -> "QuatMatrix2":
        return QuatMatrix2(((Q_ONE, Q_ZERO), (Q_ZERO, Q_ONE)))

    @staticmethod
    def diag(a: Quaternion, d: Quaternion) -> "QuatMatrix2":
        return QuatMatrix2(((a, Q_ZERO), (Q_ZERO, d)))

    def __matmul__(self, other: "QuatMatrix2") -> "QuatMatrix2":
        (a, b), (c, d) = self.entries
        (e, f), (g, h) = other.entries
        return QuatMatrix2(((a * e + b * g, a * f + b * h),
                            (c * e + d * g, c * f + d * h)))

    def __add__(self, other: "QuatMatrix2") -> "QuatMatrix2":
        (a, b), (c, d) = self.entries
        (e, f), (g, h) = other.entries
        return QuatMatrix2(((a + e, b + f), (c + g, d + h)))

    def __sub__(self, other: "QuatMatrix2") -> "QuatMatrix2":
        (a, b), (c, d) = self.entries
        (e, f), (g, h) = other.entries
        return QuatMatrix2(((a - e, b - f), (c - g, d - h)))

    def __neg__(self) -> "QuatMatrix2":
        (a, b), (c, d) = self.entries
        return QuatMatrix2(((-a, -b), (-c, -d)))

    def scale(self, s: float) -> "QuatMatrix2":
        (a, b), (c, d) = self.entries
        return QuatMatrix2(((s * a, s * b), (s * c, s * d)))

    def adjoint(self) -> "QuatMatrix2":
        """Transpose of the entrywise quaternionic conjugate."""
        (a, b), (c, d) = self.entries
        return QuatMatrix2(((a.conjugate(), c.conjugate()),
                            (b.conjugate(), d.conjugate())))

    def diag_scalar_sum(self) -> float:
        """Sum of the scalar parts of the diagonal entries (half the 4x4 trace)."""
        (a, _), (_, d) = self.entries
        return a.scalar_part() + d.scalar_part()

    def to_complex(self) -> np.ndarray:
        """4x4 complex realization (each quaternion entry as a 2x2 block)."""
        (a, b), (c, d) = self.entries
        return np.block([[a.to_complex(), b.to_complex()],
                         [c.to_complex(), d.to_complex()]])

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.to_complex())))

    def __repr__(self) -> str:
        (a, b), (c, d) = self.entries
        return f"QuatMatrix2((({a}, {b}), ({c}, {d})))"


def qmat_dist(a: QuatMatrix2, b: QuatMatrix2) -> float:
    """Max-abs distance between two quaternionic matrices (via realization)."""
    return (a - b).max_abs()
