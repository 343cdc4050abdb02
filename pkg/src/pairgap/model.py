"""Core pairing-model data types.

A model is a set of single-pair energy levels ``xi`` (ascending) together
with a constant pairing strength ``v``.  The equally spaced family used
throughout the package is parameterized by a level count ``n_levels``, a
spacing ``delta``, a dimensionless coupling ratio ``lam = v / delta`` and an
integer offset ``b`` of the lowest level:

    xi_m = (b + m) * delta,  m = 1..n_levels,     v = lam * delta

All energies enter the Hamiltonians linearly, so rescaling every energy by
a common factor rescales every spectrum and gap by the same factor.  Solvers
therefore run in spacing units (``delta = 1``) and results are converted to
physical units only at the I/O boundary.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

SOLVER_TAGS = ("secular", "dense-fallback", "oracle")


@dataclass(frozen=True, eq=False)
class PairingModel:
    """Immutable level set plus coupling.

    Attributes
    ----------
    xi : ndarray
        Level energies, ascending.  Strictly ascending unless
        ``allow_degenerate`` is set, in which case ties are admitted and
        eigen-solves route to the dense fallback.
    v : float
        Pairing strength, >= 0.  Zero is admitted only so the
        zero-coupling identities remain expressible; the physical model
        has v > 0.
    """

    xi: np.ndarray
    v: float
    allow_degenerate: bool = False

    def __post_init__(self) -> None:
        xi = np.array(self.xi, dtype=float)
        if xi.ndim != 1 or xi.size == 0:
            raise ValueError("xi must be a non-empty 1-D array of levels")
        if not np.all(np.isfinite(xi)):
            raise ValueError("xi must be finite")
        d = np.diff(xi)
        if self.allow_degenerate:
            if np.any(d < 0):
                raise ValueError("xi must be non-decreasing")
        elif np.any(d <= 0):
            raise ValueError(
                "xi must be strictly ascending (set allow_degenerate to admit ties)"
            )
        v = float(self.v)
        if not np.isfinite(v) or v < 0:
            raise ValueError("v must be finite and >= 0")
        xi.flags.writeable = False
        object.__setattr__(self, "xi", xi)
        object.__setattr__(self, "v", v)

    @property
    def n(self) -> int:
        return self.xi.size


@dataclass(frozen=True)
class ModelParams:
    """Equally spaced parameterization (see module docstring)."""

    n_levels: int
    delta: float
    lam: float
    b: int = 0

    def __post_init__(self) -> None:
        if int(self.n_levels) != self.n_levels or self.n_levels < 1:
            raise ValueError("n_levels must be an integer >= 1")
        if not (self.delta > 0 and np.isfinite(self.delta)):
            raise ValueError("delta must be finite and > 0")
        if not (self.lam > 0 and np.isfinite(self.lam)):
            raise ValueError("lam must be finite and > 0")
        if int(self.b) != self.b or self.b < 0:
            raise ValueError("b must be an integer >= 0")
        object.__setattr__(self, "n_levels", int(self.n_levels))
        object.__setattr__(self, "b", int(self.b))


def make_model(params: ModelParams) -> PairingModel:
    """Build the equally spaced model xi_m = (b + m) delta, v = lam delta."""
    m = np.arange(1, params.n_levels + 1, dtype=float)
    xi = (params.b + m) * params.delta
    return PairingModel(xi=xi, v=params.lam * params.delta)


def epsilon(model: PairingModel, m: int) -> float:
    """Shifted level eps_m = xi_m - v for 1-based index m."""
    if int(m) != m or not 1 <= m <= model.n:
        raise IndexError(f"level index m={m} outside 1..{model.n}")
    return float(model.xi[int(m) - 1] - model.v)


def rescale(model: PairingModel, c: float) -> PairingModel:
    """Scale every energy by c > 0; spectra and gaps scale by the same c."""
    if not (c > 0 and np.isfinite(c)):
        raise ValueError("scale factor c must be finite and > 0")
    return PairingModel(
        xi=model.xi * c, v=model.v * c, allow_degenerate=model.allow_degenerate
    )


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Eigenvalues in ascending order plus the solver that produced them."""

    values: np.ndarray
    solver: str

    def __post_init__(self) -> None:
        values = np.array(self.values, dtype=float)
        if values.ndim != 1 or values.size == 0:
            raise ValueError("spectrum must be a non-empty 1-D array")
        if np.any(np.diff(values) < 0):
            raise ValueError("spectrum values must be ascending")
        if self.solver not in SOLVER_TAGS:
            raise ValueError(f"unknown solver tag {self.solver!r}")
        values.flags.writeable = False
        object.__setattr__(self, "values", values)

    @property
    def n(self) -> int:
        return self.values.size


def params_from_config(cfg: Mapping) -> tuple[ModelParams, float]:
    """Parse a config mapping into ModelParams plus the spacing in eV.

    Schema: ``{"n": int, "lambda": float, "b": int (optional, default 0)}``
    together with exactly one of ``"delta_ev"`` or ``"v_ev"``; the other is
    derived through v = lambda * delta.  Returns ``(params, delta_ev)``
    where ``params`` is expressed in spacing units (delta = 1) and
    ``delta_ev`` carries the physical scale.
    """
    if not isinstance(cfg, Mapping):
        raise ValueError("config must be a JSON object")
    allowed = {"n", "lambda", "b", "delta_ev", "v_ev"}
    unknown = set(cfg) - allowed
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    for key in ("n", "lambda"):
        if key not in cfg:
            raise ValueError(f"config missing required key {key!r}")
    has_delta = "delta_ev" in cfg
    has_v = "v_ev" in cfg
    if has_delta == has_v:
        raise ValueError("config must set exactly one of delta_ev, v_ev")
    n = cfg["n"]
    lam = float(cfg["lambda"])
    b = cfg.get("b", 0)
    if has_delta:
        delta_ev = float(cfg["delta_ev"])
    else:
        v_ev = float(cfg["v_ev"])
        if not (lam > 0):
            raise ValueError("lambda must be > 0")
        delta_ev = v_ev / lam
    if not (delta_ev > 0 and np.isfinite(delta_ev)):
        raise ValueError("energy scale must be finite and > 0")
    return ModelParams(n_levels=n, delta=1.0, lam=lam, b=b), delta_ev
