"""Single-excitation block and its O(N) secular eigensolver.

The occupation-1 block of the full Hamiltonian is the N x N matrix

    H1[i, i] = eps_i = xi_i - v,      H1[i, j] = -v   (i != j)

i.e. ``diag(xi) - v * ones``, a rank-one downdate of a diagonal matrix.
Its eigenvalues are the roots of the secular function

    f(E) = 1 - v * sum_m 1 / (xi_m - E)

with exactly one root below xi_1 and one in each gap (xi_i, xi_{i+1});
the roots interlace the levels from below, E_i < xi_i < E_{i+1}.  Each
root is pinned by bisection on a bracket whose endpoint signs are known
analytically, so the solve needs O(N) memory and never builds the matrix.

Nearly degenerate levels put secular poles too close together for stable
bracketing; those models route to the dense Jacobi solver instead.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fullspace import dense_eigenvalues
from .model import PairingModel, Spectrum

# route to the dense solver below this relative level spacing
DEGENERACY_SPACING = 1e-10


class DegenerateLevels(ValueError):
    """Level spacing too small for the secular solver; use the dense path."""


@dataclass(frozen=True, eq=False)
class Sub1Matrix:
    """Implicit storage (xi, v) of the single-excitation block."""

    xi: np.ndarray
    v: float

    def __post_init__(self) -> None:
        xi = np.array(self.xi, dtype=float)
        if xi.ndim != 1 or xi.size == 0:
            raise ValueError("xi must be a non-empty 1-D array")
        if np.any(np.diff(xi) < 0):
            raise ValueError("xi must be ascending")
        xi.flags.writeable = False
        object.__setattr__(self, "xi", xi)
        object.__setattr__(self, "v", float(self.v))

    @property
    def n(self) -> int:
        return self.xi.size

    def materialize(self) -> np.ndarray:
        """Dense N x N form: diag(xi - v) with -v elsewhere.  Exactly
        symmetric by construction."""
        a = np.full((self.n, self.n), -self.v)
        np.fill_diagonal(a, self.xi - self.v)
        return a


def build_sub1(model: PairingModel) -> Sub1Matrix:
    """Single-excitation block of the model, stored implicitly."""
    return Sub1Matrix(xi=model.xi, v=model.v)


def _secular(xi: np.ndarray, v: float, e: float) -> float:
    return 1.0 - v * float(np.sum(1.0 / (xi - e)))


def _bisect_root(xi: np.ndarray, v: float, lo: float, hi: float,
                 tol: float, max_iter: int = 200) -> float:
    # endpoint signs are analytic (+ at lo, - at hi); only midpoints are
    # evaluated, so the poles at the bracket ends are never touched
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            break
        if _secular(xi, v, mid) > 0.0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= tol * max(abs(lo), abs(hi)):
            break
    return 0.5 * (lo + hi)


def sub1_eigenvalues_secular(sub1: Sub1Matrix, tol: float = 1e-13) -> Spectrum:
    """All N eigenvalues of the block via the secular equation.

    Requires v > 0 and strictly increasing levels with minimum spacing
    above ``1e3 * tol * max|xi|``; raises DegenerateLevels otherwise.
    Each root is located to relative tolerance ``tol``.
    """
    xi = sub1.xi
    v = sub1.v
    n = sub1.n
    if not (v > 0):
        raise ValueError("secular solver requires v > 0")
    if not (0 < tol < 1e-3):
        raise ValueError("tol must be in (0, 1e-3)")
    scale = float(np.max(np.abs(xi)))
    if n > 1:
        spacing = float(np.min(np.diff(xi)))
        if spacing <= 1e3 * tol * scale:
            raise DegenerateLevels(
                f"min level spacing {spacing:.3e} <= {1e3 * tol * scale:.3e}"
            )
    if n == 1:
        return Spectrum(values=np.array([xi[0] - v]), solver="secular")
    roots = np.empty(n)
    # E_1 >= xi_1 - n v by a norm bound; widen by one v so f(lo) >= 1/(n+1)
    lo = xi[0] - (n + 1) * v
    roots[0] = _bisect_root(xi, v, lo, xi[0], tol)
    for i in range(1, n):
        roots[i] = _bisect_root(xi, v, xi[i - 1], xi[i], tol)
    if not (np.all(roots < xi) and np.all(roots[1:] > xi[:-1])):
        raise RuntimeError("secular roots violate interlacing (internal error)")
    return Spectrum(values=roots, solver="secular")


def sub1_eigenvalues(model: PairingModel, tol: float = 1e-13) -> Spectrum:
    """Eigenvalues of the single-excitation block, choosing the solver.

    Secular path for well-spaced levels; dense Jacobi fallback when the
    minimum spacing drops below ``1e-10 * max|xi|`` (or the secular
    preconditions reject the model).  v = 0 returns the levels unchanged.
    """
    sub1 = build_sub1(model)
    if sub1.v == 0.0:
        return Spectrum(values=sub1.xi.copy(), solver="secular")
    if sub1.n > 1:
        scale = float(np.max(np.abs(sub1.xi)))
        if float(np.min(np.diff(sub1.xi))) <= DEGENERACY_SPACING * scale:
            return _dense_fallback(sub1)
    try:
        return sub1_eigenvalues_secular(sub1, tol=tol)
    except DegenerateLevels:
        return _dense_fallback(sub1)


def _dense_fallback(sub1: Sub1Matrix) -> Spectrum:
    spec = dense_eigenvalues(sub1.materialize())
    return Spectrum(values=spec.values, solver="dense-fallback")
