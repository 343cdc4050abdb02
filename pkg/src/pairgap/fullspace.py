"""Full 2^N spin-analogy Hamiltonian and the brute-force dense oracle.

Basis convention.  A basis state is addressed by its 1-based position
``p`` in ``[1, 2^N]``.  Writing ``p - 1`` as N bits ``b_1 .. b_N`` with
``b_1`` most significant, pair level ``m`` is occupied iff ``b_m = 0``;
hence ``occupied_count(p) = N - popcount(p - 1)``, position ``2^N`` is the
all-empty state and ``2^N - 2^(N-i)`` is the state whose only occupied
level is ``i``.

In this basis the Hamiltonian has diagonal entries ``sum eps_m`` over
occupied levels (``eps_m = xi_m - v``) and off-diagonal entries ``-v``
between states that differ by moving one occupation to an empty level.
Occupation count is conserved, so the matrix is the direct sum of one
block per occupation number k, of dimension C(N, k).

``dense_eigenvalues`` is a cyclic-by-row Jacobi eigensolver kept free of
any code shared with the secular solver in :mod:`pairgap.subspace`; it is
the independent reference the fast path is checked against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .model import PairingModel, Spectrum

MAX_FULL_BUILD_N = 12      # dense 2^N x 2^N construction guard
MAX_APPLY_N = 20           # matrix-free apply guard
MAX_BLOCK_DIM = 4096       # C(N, k) guard for extracted blocks
MAX_DENSE_DIM = 4096       # Jacobi oracle dimension guard


def _check_position(p: int, n: int) -> int:
    if int(p) != p or not 1 <= p <= (1 << n):
        raise IndexError(f"position p={p} outside 1..2^{n}")
    return int(p)


def occupied_count(p: int, n: int) -> int:
    """Number of occupied pair levels of the basis state at position p."""
    q = _check_position(p, n) - 1
    return n - q.bit_count()


def occupied_levels(p: int, n: int) -> tuple[int, ...]:
    """Occupied level indices (1-based, ascending) of the state at p."""
    q = _check_position(p, n) - 1
    return tuple(m for m in range(1, n + 1) if not (q >> (n - m)) & 1)


def h_diagonal(n: int, m: int) -> np.ndarray:
    """Diagonal of the occupation projector of level m as a 0/1 vector.

    Entry p (1-based) is 1 iff level m is occupied in the state at p.
    Equals the Kronecker product I x .. x diag(1, 0) x .. x I with the
    diag(1, 0) factor at slot m, evaluated through the bit rule.
    """
    if int(n) != n or not 1 <= n <= 24:
        raise ValueError(f"n={n} outside 1..24")
    if int(m) != m or not 1 <= m <= n:
        raise ValueError(f"level m={m} outside 1..{n}")
    q = np.arange(1 << int(n), dtype=np.int64)
    return (1 - ((q >> (int(n) - int(m))) & 1)).astype(np.int64)


@dataclass(frozen=True)
class LemmaReport:
    """Result of the single-occupation position probe for one N."""

    n: int
    ok: bool
    checked: int
    violations: tuple[tuple[int, int, int, int], ...]  # (m, position, got, expected)


def verify_lemma(n: int) -> LemmaReport:
    """Probe the single-occupation identities of the projector diagonals.

    For every level pair (i, m) checks, in exact integer arithmetic, that
    the diagonal of the level-m projector is 1 at position 2^n - 2^(n-i)
    iff i == m, and is 0 at the all-empty position 2^n.  Only the n^2 + n
    required positions are probed; no 2^n vector is materialized.
    """
    if int(n) != n or not 2 <= n <= 20:
        raise ValueError(f"n={n} outside 2..20")
    n = int(n)
    violations = []
    checked = 0
    for m in range(1, n + 1):
        for i in range(1, n + 1):
            p = (1 << n) - (1 << (n - i))
            got = 1 - (((p - 1) >> (n - m)) & 1)
            expected = 1 if i == m else 0
            checked += 1
            if got != expected:
                violations.append((m, p, got, expected))
        p = 1 << n
        got = 1 - (((p - 1) >> (n - m)) & 1)
        checked += 1
        if got != 0:
            violations.append((m, p, got, 0))
    return LemmaReport(n=n, ok=not violations, checked=checked,
                       violations=tuple(violations))


def _occupied_bits(q: int, n: int) -> list[int]:
    return [m for m in range(1, n + 1) if not (q >> (n - m)) & 1]


def build_full_hamiltonian(model: PairingModel) -> np.ndarray:
    """Dense 2^N x 2^N pairing Hamiltonian in the position basis.

    Diagonal: sum of eps_m = xi_m - v over occupied levels.  Off-diagonal:
    -v between states related by moving one occupation to an empty level.
    Exactly symmetric by construction.
    """
    n = model.n
    if n > MAX_FULL_BUILD_N:
        raise ValueError(f"full build limited to N <= {MAX_FULL_BUILD_N}, got {n}")
    eps = model.xi - model.v
    v = model.v
    dim = 1 << n
    h = np.zeros((dim, dim))
    for q in range(dim):
        occ = _occupied_bits(q, n)
        if occ:
            h[q, q] = eps[np.asarray(occ) - 1].sum()
        empty = [m for m in range(1, n + 1) if m not in occ]
        for l in occ:
            for m in empty:
                q2 = q + (1 << (n - l)) - (1 << (n - m))
                h[q2, q] = -v
    return h


def apply_full_hamiltonian(model: PairingModel, state: np.ndarray) -> np.ndarray:
    """Matrix-free product of the full Hamiltonian with a state vector.

    Never materializes the 2^N x 2^N matrix; works level pair by level
    pair on the 2^N amplitudes.
    """
    n = model.n
    if n > MAX_APPLY_N:
        raise ValueError(f"matrix-free apply limited to N <= {MAX_APPLY_N}, got {n}")
    dim = 1 << n
    x = np.asarray(state, dtype=float)
    if x.shape != (dim,):
        raise ValueError(f"state must have shape ({dim},), got {x.shape}")
    eps = model.xi - model.v
    v = model.v
    q = np.arange(dim, dtype=np.int64)
    diag = np.zeros(dim)
    occ_masks = []
    for m in range(1, n + 1):
        occ = ((q >> (n - m)) & 1) == 0
        occ_masks.append(occ)
        diag += eps[m - 1] * occ
    out = diag * x
    for l in range(1, n + 1):
        for m in range(1, n + 1):
            if m == l:
                continue
            # source: l occupied, m empty; target: occupation moved l -> m
            src = np.nonzero(occ_masks[l - 1] & ~occ_masks[m - 1])[0]
            if src.size == 0:
                continue
            dst = src + ((1 << (n - l)) - (1 << (n - m)))
            out[dst] += -v * x[src]
    return out


def _block_positions(n: int, k: int) -> list[int]:
    """0-based basis indices of the occupation-k block, ascending."""
    full = (1 << n) - 1
    qs = [full - sum(1 << (n - m) for m in occ)
          for occ in combinations(range(1, n + 1), k)]
    qs.sort()
    return qs


def extract_block(model: PairingModel, k: int) -> np.ndarray:
    """Dense occupation-k block of the full Hamiltonian, basis ascending.

    Basis states are the C(N, k) positions with k occupied levels, ordered
    by ascending position; for k = 1 this ordering coincides with the
    occupied-level index, giving diag(eps) with -v elsewhere.
    """
    n = model.n
    if n > MAX_APPLY_N:
        raise ValueError(f"block extraction limited to N <= {MAX_APPLY_N}, got {n}")
    if int(k) != k or not 0 <= k <= n:
        raise ValueError(f"occupation k={k} outside 0..{n}")
    k = int(k)
    dim = math.comb(n, k)
    if dim > MAX_BLOCK_DIM:
        raise ValueError(f"block dimension C({n},{k})={dim} exceeds {MAX_BLOCK_DIM}")
    qs = _block_positions(n, k)
    index = {q: a for a, q in enumerate(qs)}
    eps = model.xi - model.v
    v = model.v
    h = np.zeros((dim, dim))
    for a, q in enumerate(qs):
        occ = _occupied_bits(q, n)
        if occ:
            h[a, a] = eps[np.asarray(occ) - 1].sum()
        empty = [m for m in range(1, n + 1) if m not in occ]
        for l in occ:
            for m in empty:
                b = index[q + (1 << (n - l)) - (1 << (n - m))]
                h[b, a] = -v
    return h


@dataclass(frozen=True, eq=False)
class BlockReport:
    """One occupation block: its size and oracle eigenvalues."""

    weight: int
    dim: int
    eigenvalues: Spectrum


def block_report(model: PairingModel, k: int, tol: float = 1e-12) -> BlockReport:
    """Extract block k and diagonalize it with the dense oracle."""
    h = extract_block(model, k)
    spec = dense_eigenvalues(h, tol=tol)
    return BlockReport(weight=int(k), dim=h.shape[0], eigenvalues=spec)


# ---------------------------------------------------------------------------
# dense oracle: cyclic-by-row Jacobi
# ---------------------------------------------------------------------------

def _jacobi_cycle(a, off_tol, max_sweeps):
    """Cyclic-by-row Jacobi sweeps in place; returns sweeps used or -1."""
    n = a.shape[0]
    for sweep in range(max_sweeps + 1):
        off2 = 0.0
        for i in range(n - 1):
            for j in range(i + 1, n):
                off2 += a[i, j] * a[i, j]
        if math.sqrt(2.0 * off2) <= off_tol:
            return sweep
        if sweep == max_sweeps:
            return -1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                app = a[p, p]
                aqq = a[q, q]
                tau = 0.5 * (aqq - app) / apq
                if tau >= 0.0:
                    t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                a[p, p] = app - t * apq
                a[q, q] = aqq + t * apq
                a[p, q] = 0.0
                a[q, p] = 0.0
                for i in range(n):
                    if i != p and i != q:
                        aip = a[i, p]
                        aiq = a[i, q]
                        a[i, p] = c * aip - s * aiq
                        a[p, i] = a[i, p]
                        a[i, q] = s * aip + c * aiq
                        a[q, i] = a[i, q]
    return -1


_jacobi_compiled = None


def _get_jacobi_kernel():
    # numba import deferred so that CLI paths that never diagonalize a
    # dense matrix do not pay the JIT toolchain import
    global _jacobi_compiled
    if _jacobi_compiled is None:
        from numba import njit

        _jacobi_compiled = njit(cache=True)(_jacobi_cycle)
    return _jacobi_compiled


def dense_eigenvalues(a: np.ndarray, tol: float = 1e-12,
                      max_sweeps: int = 100) -> Spectrum:
    """All eigenvalues of an exactly symmetric dense matrix, ascending.

    Cyclic-by-row Jacobi rotations, iterated until the off-diagonal
    Frobenius norm falls below ``tol`` times the Frobenius norm of the
    input.  Raises RuntimeError if ``max_sweeps`` sweeps do not converge.
    """
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"matrix must be square, got shape {a.shape}")
    dim = a.shape[0]
    if dim > MAX_DENSE_DIM:
        raise ValueError(f"dense oracle limited to dim <= {MAX_DENSE_DIM}, got {dim}")
    if not np.array_equal(a, a.T):
        raise ValueError("matrix must be exactly symmetric")
    if not (tol > 0):
        raise ValueError("tol must be > 0")
    work = np.array(a, dtype=np.float64, order="C", copy=True)
    off_tol = tol * float(np.linalg.norm(work))
    sweeps = _get_jacobi_kernel()(work, off_tol, int(max_sweeps))
    if sweeps < 0:
        raise RuntimeError(f"Jacobi did not converge within {max_sweeps} sweeps")
    return Spectrum(values=np.sort(np.diagonal(work).copy()), solver="oracle")
