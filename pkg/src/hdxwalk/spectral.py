"""Dense symmetric eigensolver and spectral inequality checks.

The solver is cyclic Jacobi: sweep all (p, q) pairs, rotate each away,
stop when the off-diagonal Frobenius mass drops below ``1e-12 * n``.  By
Weyl's inequality that mass bounds every eigenvalue's error, so it is
reported as the spectrum's residual and added on the permissive side of
every inequality check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import BoundViolated, IsolatedVertex, NoConvergence

OFF_DIAGONAL_TOL = 1e-12
MAX_SWEEPS = 100


@dataclass(frozen=True)
class SymMatrix:
    """Dense symmetric matrix; symmetry exact by mirroring the upper triangle."""

    order: int
    entries: np.ndarray

    @classmethod
    def from_array(cls, arr):
        a = np.asarray(arr, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError("square matrix required")
        mirrored = np.triu(a) + np.triu(a, 1).T
        mirrored.setflags(write=False)
        return cls(a.shape[0], mirrored)


@dataclass(frozen=True)
class Spectrum:
    """Descending eigenvalues with a residual error bound."""

    eigenvalues: tuple
    residual: float
    vectors: np.ndarray = field(repr=False, compare=False)

    @property
    def lambda1(self):
        return self.eigenvalues[0]

    @property
    def lambda2(self):
        return self.eigenvalues[1]

    @property
    def lambda_min(self):
        return self.eigenvalues[-1]

    def mixing_rate(self):
        """max(|lambda_2|, |lambda_min|); requires order >= 2."""
        return max(abs(self.lambda2), abs(self.lambda_min))

    @property
    def top_eigenvector(self):
        return self.vectors[:, 0]


def normalized_adjacency(g):
    """D^(1/2) A D^(1/2) with D = diag(1/deg); self-loops on the diagonal."""
    n = g.order()
    degs = [g.total_degree(v) for v in range(n)]
    if any(d == 0 for d in degs):
        raise IsolatedVertex("zero weighted degree")
    inv_sqrt = np.array([1.0 / math.sqrt(d) for d in degs])
    a = np.zeros((n, n))
    for u, v, w in g.edges:
        a[u, v] += w
        a[v, u] += w
    for v in range(n):
        a[v, v] += g.self_loop_weight[v]
    a *= inv_sqrt[:, None]
    a *= inv_sqrt[None, :]
    return SymMatrix.from_array(a)


def _off_mass(a):
    off = a - np.diag(np.diag(a))
    return math.sqrt(float(np.sum(off * off)))


def spectrum(m, max_sweeps=MAX_SWEEPS, tol=OFF_DIAGONAL_TOL):
    """Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.

    Raises NoConvergence if the off-diagonal mass has not dropped below
    ``tol * n`` after ``max_sweeps`` full sweeps.
    """
    if isinstance(m, SymMatrix):
        a = np.array(m.entries, dtype=float)
    else:
        a = np.array(SymMatrix.from_array(m).entries, dtype=float)
    n = a.shape[0]
    q = np.eye(n)
    if n <= 1:
        return Spectrum(tuple(np.diag(a)), 0.0, q)

    residual = _off_mass(a)
    sweeps = 0
    while residual >= tol * n:
        if sweeps == max_sweeps:
            raise NoConvergence(
                f"off-diagonal mass {residual:.3e} after {max_sweeps} sweeps"
            )
        for p in range(n - 1):
            for r in range(p + 1, n):
                apq = a[p, r]
                if apq == 0.0:
                    continue
                theta = (a[r, r] - a[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.hypot(theta, 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                row_p = a[p, :].copy()
                row_r = a[r, :].copy()
                a[p, :] = c * row_p - s * row_r
                a[r, :] = s * row_p + c * row_r
                col_p = a[:, p].copy()
                col_r = a[:, r].copy()
                a[:, p] = c * col_p - s * col_r
                a[:, r] = s * col_p + c * col_r
                a[p, r] = a[r, p] = 0.0
                q_p = q[:, p].copy()
                q_r = q[:, r].copy()
                q[:, p] = c * q_p - s * q_r
                q[:, r] = s * q_p + c * q_r
        sweeps += 1
        residual = _off_mass(a)

    eigs = np.diag(a)
    order = np.argsort(-eigs, kind="stable")
    return Spectrum(tuple(float(eigs[k]) for k in order), residual, q[:, order])


# ---------------------------------------------------------------------------
# inequality checks


@dataclass(frozen=True)
class SpectralCheck:
    name: str
    lhs: float
    rhs: float

    @property
    def slack(self):
        return self.rhs - self.lhs


def cheeger_check(g, phi, spec):
    """Assert lambda_2 <= 1 - phi^2 / 2, residual on the permissive side."""
    if g.order() < 2:
        return SpectralCheck("cheeger", 0.0, 0.0)
    lhs = spec.lambda2
    rhs = 1.0 - float(phi) ** 2 / 2.0 + spec.residual
    if lhs > rhs:
        raise BoundViolated("cheeger", g.level, lhs, rhs)
    return SpectralCheck("cheeger", lhs, rhs)


def trevisan_check(g, beta, spec):
    """Assert lambda_min >= -1 + beta^2 / 2, residual on the permissive side."""
    if g.order() < 2:
        return SpectralCheck("trevisan", 0.0, 0.0)
    lhs = spec.lambda_min
    rhs = -1.0 + float(beta) ** 2 / 2.0 - spec.residual
    if lhs < rhs:
        raise BoundViolated("trevisan", g.level, lhs, rhs)
    return SpectralCheck("trevisan", lhs, rhs)
