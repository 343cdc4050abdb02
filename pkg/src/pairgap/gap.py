"""Superconducting gap from spectra and from the mean-field gap equation.

Quasiparticle ansatz: a level at xi costs E(xi) = sqrt(xi^2 + Delta^2).
The spectrum route matches the spacing of the two lowest eigenvalues of
the single-excitation block against the two lowest levels:

    sqrt(xi_1^2 + Delta^2) - sqrt(xi_2^2 + Delta^2) = d,   d = E_1 - E_2

Isolating one radical and squaring gives the closed form

    S = (xi_1^2 - xi_2^2 - d^2) / (2 d),      Delta = sqrt(S^2 - xi_2^2)

with S = sqrt(xi_2^2 + Delta^2).  A real gap requires d < 0 and S >= xi_2,
which splits into two solution branches: |d| <= xi_2 - xi_1, where the
difference equation holds literally, and |d| >= xi_1 + xi_2, where the
eigenvalue spacing covers both excitations (the radicals add); spacings
between the two admit no real root.  Every result is verified by
back-substitution into its branch.

The mean-field route solves  1 = (v/2) sum_m 1 / sqrt(xi_m^2 + Delta^2),
whose right side decreases strictly in Delta, by bisection.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import PairingModel, Spectrum

RESIDUAL_REL = 1e-10   # back-substitution guard, relative to |d|

OUTCOME_GAP = "gap"
OUTCOME_NO_REAL_ROOT = "no-real-root"
OUTCOME_NO_SOLUTION = "no-solution"

METHOD_SUB1 = "sub1-spectrum"
METHOD_EQN = "gap-equation"


@dataclass(frozen=True)
class GapResult:
    """Outcome of one gap computation.

    ``delta`` and ``residual`` are set only when ``outcome == "gap"``;
    the residual is the back-substitution defect of the defining equation.
    """

    outcome: str
    method: str
    delta: float | None = None
    residual: float | None = None

    @property
    def ok(self) -> bool:
        return self.outcome == OUTCOME_GAP


@dataclass(frozen=True)
class CouplingEstimate:
    """Coupling strength from a density of states g0 (1/eV), the
    dimensionless product r = g0 * v, and the Debye energy (eV)."""

    g0: float
    r: float
    debye_ev: float

    def __post_init__(self) -> None:
        for name in ("g0", "r", "debye_ev"):
            x = getattr(self, name)
            if not (np.isfinite(x) and x > 0):
                raise ValueError(f"{name} must be finite and > 0")
        if self.r >= 1.0:
            raise ValueError("r must be < 1 (weak dimensionless coupling)")


def estimate_coupling(est: CouplingEstimate) -> float:
    """Coupling v = r / g0 in eV."""
    return est.r / est.g0


def excitation_energy(xi: float, delta: float) -> float:
    """Quasiparticle energy sqrt(xi^2 + delta^2), delta >= 0."""
    if not delta >= 0:
        raise ValueError("delta must be >= 0")
    return math.hypot(xi, delta)


def gap_from_levels(xi1: float, xi2: float, d: float) -> GapResult:
    """Solve the two-level spacing equation for the gap.

    Parameters are the two lowest levels (0 < xi1 < xi2) and the spacing
    d = E_1 - E_2 < 0 of the two lowest block eigenvalues.  Returns a gap
    when |d| lies outside the forbidden window (xi2 - xi1, xi1 + xi2),
    no-real-root otherwise (see module docstring for the two branches).
    """
    for name, x in (("xi1", xi1), ("xi2", xi2), ("d", d)):
        if not np.isfinite(x):
            raise ValueError(f"{name} must be finite")
    if not 0 < xi1 < xi2:
        raise ValueError(f"levels must satisfy 0 < xi1 < xi2, got {xi1}, {xi2}")
    if d >= 0:
        return GapResult(outcome=OUTCOME_NO_REAL_ROOT, method=METHOD_SUB1)
    s = (xi1 * xi1 - xi2 * xi2 - d * d) / (2.0 * d)
    if s < xi2:
        return GapResult(outcome=OUTCOME_NO_REAL_ROOT, method=METHOD_SUB1)
    # factored form is exact at the boundary s == xi2 and avoids
    # cancellation just above it
    delta = math.sqrt((s - xi2) * (s + xi2))
    e1 = math.hypot(xi1, delta)
    e2 = math.hypot(xi2, delta)
    if s + d >= 0:
        residual = (e1 - e2) - d          # difference branch
    else:
        residual = (e1 + e2) + d          # spacing covers both excitations
    if abs(residual) > RESIDUAL_REL * abs(d):
        raise RuntimeError(
            f"gap back-substitution residual {residual:.3e} exceeds "
            f"{RESIDUAL_REL:.0e} * |d| (internal error)"
        )
    return GapResult(outcome=OUTCOME_GAP, method=METHOD_SUB1,
                     delta=delta, residual=residual)


def gap_from_spectrum(model: PairingModel, spectrum: Spectrum) -> GapResult:
    """Gap from the two lowest eigenvalues of the single-excitation block."""
    if model.n < 2:
        raise ValueError("gap extraction needs at least two levels")
    if spectrum.n != model.n:
        raise ValueError(
            f"spectrum has {spectrum.n} values for a model with {model.n} levels"
        )
    d = float(spectrum.values[0] - spectrum.values[1])
    return gap_from_levels(float(model.xi[0]), float(model.xi[1]), d)


def solve_gap_equation(model: PairingModel, tol: float = 1e-12) -> GapResult:
    """Solve the mean-field gap equation by bisection.

    No-solution when (v/2) sum 1/|xi_m| < 1 (the right side at Delta = 0
    already falls short).  A level at exactly zero energy makes the
    equation singular and raises ValueError.
    """
    xi = model.xi
    v = model.v
    if np.any(xi == 0):
        raise ValueError("gap equation is singular for a level at xi = 0")
    if not (0 < tol < 1e-3):
        raise ValueError("tol must be in (0, 1e-3)")

    def rhs(delta: float) -> float:
        return 0.5 * v * float(np.sum(1.0 / np.sqrt(xi * xi + delta * delta)))

    r0 = rhs(0.0)
    if r0 < 1.0:
        return GapResult(outcome=OUTCOME_NO_SOLUTION, method=METHOD_EQN)
    if r0 == 1.0:
        return GapResult(outcome=OUTCOME_GAP, method=METHOD_EQN,
                         delta=0.0, residual=0.0)
    # rhs(hi) < 1 holds already at hi = n v / 2 since each term < 1/hi;
    # the doubling is a numerical safeguard
    hi = 0.5 * v * model.n
    for _ in range(200):
        if rhs(hi) < 1.0:
            break
        hi *= 2.0
    else:
        raise RuntimeError("gap equation bracket expansion failed (internal error)")
    lo = 0.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            break
        if rhs(mid) >= 1.0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= tol * hi:
            break
    delta = 0.5 * (lo + hi)
    return GapResult(outcome=OUTCOME_GAP, method=METHOD_EQN,
                     delta=delta, residual=rhs(delta) - 1.0)
