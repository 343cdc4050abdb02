"""Parameter sweeps comparing the two gap routes, and the critical offset.

Each sweep point builds the equally spaced model in spacing units
(delta = 1), extracts the gap from the single-excitation spectrum and
from the mean-field gap equation, and reports both in eV together with
their relative deviation.  Presets:

    fig1   gap versus level count      (lam = 10, b = 0,  n = 2..100)
    fig2   gap versus coupling ratio   (n = 20, b = 0,    lam = 1..100)
    fig3   gap versus level offset     (n = 10, lam = 10, b = 0..70)

all at v = 2e-6 eV.  Because every energy is proportional to delta, the
dimensionless columns (rel_err, first_gap_ratio, status) are independent
of the physical scale v_ev.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .gap import gap_from_spectrum, solve_gap_equation
from .model import ModelParams, make_model
from .subspace import sub1_eigenvalues

CSV_HEADER = ("param,n,lambda,b,v_ev,delta_ev,gap_sub1_ev,gap_eqn_ev,"
              "rel_err,first_gap_ratio,status")

STATUS_OK = "ok"
STATUS_NO_REAL_ROOT_SUB1 = "no_real_root_sub1"
STATUS_NO_SOLUTION_EQN = "no_solution_eqn"
STATUS_BOTH_FAILED = "both_failed"

SWEPT_PARAMS = ("n", "lambda", "b")
PRESET_NAMES = ("fig1", "fig2", "fig3")

DEFAULT_V_EV = 2e-6


@dataclass(frozen=True)
class SweepSpec:
    """One sweep: which parameter varies, over which values, and the
    fixed remainder of the model."""

    swept: str
    values: tuple[float, ...]
    n: int = 20
    lam: float = 10.0
    b: int = 0
    v_ev: float = DEFAULT_V_EV
    name: str = "custom"

    def __post_init__(self) -> None:
        if self.swept not in SWEPT_PARAMS:
            raise ValueError(f"swept must be one of {SWEPT_PARAMS}")
        values = tuple(float(x) for x in self.values)
        if not values:
            raise ValueError("sweep needs at least one value")
        if any(b <= a for a, b in zip(values, values[1:])):
            raise ValueError("sweep values must be strictly ascending")
        if self.swept == "n":
            if any(v != int(v) or v < 2 for v in values):
                raise ValueError("swept n values must be integers >= 2")
        elif self.swept == "lambda":
            if any(v <= 0 for v in values):
                raise ValueError("swept lambda values must be > 0")
        else:
            if any(v != int(v) or v < 0 for v in values):
                raise ValueError("swept b values must be integers >= 0")
        if int(self.n) != self.n or self.n < 2:
            raise ValueError("n must be an integer >= 2")
        if not self.lam > 0:
            raise ValueError("lam must be > 0")
        if int(self.b) != self.b or self.b < 0:
            raise ValueError("b must be an integer >= 0")
        if not self.v_ev > 0:
            raise ValueError("v_ev must be > 0")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "b", int(self.b))


def preset(name: str) -> SweepSpec:
    """Canonical sweep by name; see module docstring."""
    if name == "fig1":
        return SweepSpec(swept="n", values=tuple(range(2, 101)),
                         lam=10.0, b=0, v_ev=DEFAULT_V_EV, name=name)
    if name == "fig2":
        return SweepSpec(swept="lambda", values=tuple(range(1, 101)),
                         n=20, b=0, v_ev=DEFAULT_V_EV, name=name)
    if name == "fig3":
        return SweepSpec(swept="b", values=tuple(range(0, 71)),
                         n=10, lam=10.0, v_ev=DEFAULT_V_EV, name=name)
    raise ValueError(f"unknown preset {name!r}; expected one of {PRESET_NAMES}")


@dataclass(frozen=True)
class SweepRecord:
    """One sweep point.  Energy columns are in eV; absent values are None.

    The ``*_spacing`` fields carry the same gaps in spacing units
    (delta = 1), exactly as the solvers produced them; the eV columns are
    those values times ``delta_ev``.  They are not part of the CSV or
    JSON schema.
    """

    param: float
    n: int
    lam: float
    b: int
    v_ev: float
    delta_ev: float
    gap_sub1_ev: float | None
    gap_eqn_ev: float | None
    gap_sub1_spacing: float | None
    gap_eqn_spacing: float | None
    rel_err: float | None
    first_gap_ratio: float | None
    status: str


def relative_error(value: float, reference: float) -> float:
    """|value - reference| / |reference|; the reference must be nonzero."""
    if reference == 0:
        raise ValueError("relative error undefined for reference == 0")
    return abs(value - reference) / abs(reference)


def _sweep_point(swept: str, value: float, n: int, lam: float, b: int,
                 v_ev: float, tol: float | None = None) -> SweepRecord:
    if swept == "n":
        n = int(value)
    elif swept == "lambda":
        lam = float(value)
    else:
        b = int(value)
    model = make_model(ModelParams(n_levels=n, delta=1.0, lam=lam, b=b))
    delta_ev = v_ev / lam
    secular_tol = tol if tol is not None else 1e-13
    eqn_tol = tol if tol is not None else 1e-12

    spectrum = sub1_eigenvalues(model, tol=secular_tol)
    r_sub1 = gap_from_spectrum(model, spectrum)
    r_eqn = solve_gap_equation(model, tol=eqn_tol)

    # gaps and ratios in spacing units; eV conversion is a single multiply
    gap_sub1 = r_sub1.delta if r_sub1.ok else None
    gap_eqn = r_eqn.delta if r_eqn.ok else None
    if gap_sub1 is not None and gap_eqn is not None:
        status = STATUS_OK
        rel_err = relative_error(gap_sub1, gap_eqn)
    elif gap_sub1 is None and gap_eqn is None:
        status = STATUS_BOTH_FAILED
        rel_err = None
    elif gap_sub1 is None:
        status = STATUS_NO_REAL_ROOT_SUB1
        rel_err = None
    else:
        status = STATUS_NO_SOLUTION_EQN
        rel_err = None
    first_gap_ratio = None
    if n >= 3:
        e = spectrum.values
        first_gap_ratio = float((e[1] - e[0]) / (e[2] - e[1]))
    return SweepRecord(
        param=value, n=n, lam=lam, b=b, v_ev=v_ev, delta_ev=delta_ev,
        gap_sub1_ev=None if gap_sub1 is None else gap_sub1 * delta_ev,
        gap_eqn_ev=None if gap_eqn is None else gap_eqn * delta_ev,
        gap_sub1_spacing=gap_sub1, gap_eqn_spacing=gap_eqn,
        rel_err=rel_err, first_gap_ratio=first_gap_ratio, status=status,
    )


def run_sweep(spec: SweepSpec, tol: float | None = None) -> list[SweepRecord]:
    """Evaluate every sweep point; root failures become statuses, never
    exceptions, so a sweep across a no-root region completes."""
    return [
        _sweep_point(spec.swept, value, spec.n, spec.lam, spec.b, spec.v_ev,
                     tol=tol)
        for value in spec.values
    ]


@dataclass(frozen=True)
class CriticalB:
    """Largest level offset that still admits a real spectrum-route gap.

    ``prefix_ok`` records whether real roots formed an unbroken prefix of
    b = 0..b_max, i.e. the root disappears once and never returns.
    """

    b_star: int
    b_max: int
    prefix_ok: bool


def find_critical_b(n: int, lam: float, v_ev: float, b_max: int) -> CriticalB:
    """Scan b = 0..b_max for the last offset with a real spectrum-route gap.

    The existence of the root is scale invariant, so v_ev does not affect
    b_star; it is part of the signature because the scan is specified in
    physical units.  Raises ValueError when even b = 0 has no real root.
    """
    if int(n) != n or n < 2:
        raise ValueError("n must be an integer >= 2")
    if not lam > 0:
        raise ValueError("lam must be > 0")
    if not v_ev > 0:
        raise ValueError("v_ev must be > 0")
    if int(b_max) != b_max or b_max < 0:
        raise ValueError("b_max must be an integer >= 0")
    has_root = []
    for b in range(int(b_max) + 1):
        model = make_model(ModelParams(n_levels=int(n), delta=1.0,
                                       lam=float(lam), b=b))
        result = gap_from_spectrum(model, sub1_eigenvalues(model))
        has_root.append(result.ok)
    if not has_root[0]:
        raise ValueError("no real root even at b = 0 (degenerate regime)")
    b_star = 0
    while b_star + 1 < len(has_root) and has_root[b_star + 1]:
        b_star += 1
    prefix_ok = all(not flag for flag in has_root[b_star + 1:])
    return CriticalB(b_star=b_star, b_max=int(b_max), prefix_ok=prefix_ok)


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def _fmt_float(x: float | None) -> str:
    return "" if x is None else format(float(x), ".17g")


def _record_cells(r: SweepRecord) -> list[str]:
    return [
        _fmt_float(r.param),
        str(r.n),
        _fmt_float(r.lam),
        str(r.b),
        _fmt_float(r.v_ev),
        _fmt_float(r.delta_ev),
        _fmt_float(r.gap_sub1_ev),
        _fmt_float(r.gap_eqn_ev),
        _fmt_float(r.rel_err),
        _fmt_float(r.first_gap_ratio),
        r.status,
    ]


def records_to_csv(records: list[SweepRecord]) -> str:
    """Delimited sweep output: fixed header, floats at 17 significant
    digits, absent values as empty fields."""
    lines = [CSV_HEADER]
    lines.extend(",".join(_record_cells(r)) for r in records)
    return "\n".join(lines) + "\n"


def record_to_dict(r: SweepRecord) -> dict:
    return {
        "param": r.param,
        "n": r.n,
        "lambda": r.lam,
        "b": r.b,
        "v_ev": r.v_ev,
        "delta_ev": r.delta_ev,
        "gap_sub1_ev": r.gap_sub1_ev,
        "gap_eqn_ev": r.gap_eqn_ev,
        "rel_err": r.rel_err,
        "first_gap_ratio": r.first_gap_ratio,
        "status": r.status,
    }


def records_to_json(records: list[SweepRecord]) -> str:
    """JSON alternative to the CSV output; identical field names."""
    return json.dumps([record_to_dict(r) for r in records], indent=2) + "\n"
