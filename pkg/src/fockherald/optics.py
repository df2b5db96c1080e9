"""State preparation and channel primitives on the truncated Fock space.

Conventions:

* ``eta`` is the per-photon *loss* probability of mode b (survival amplitude
  sqrt(1 - eta)).
* The beam splitter obeys  U b U^dag = sqrt(T) b + sqrt(1-T) c  and
  U c U^dag = -sqrt(1-T) b + sqrt(T) c,  i.e. U = exp[theta (b c^dag - b^dag c)]
  with T = cos(theta)^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.linalg import expm

from .errors import ParameterOutOfRange
from .fock import DEFAULT_CUTOFF, TwoModeState, check_cutoff, pair_index

# Largest truncated tail mass lambda^(2(n_max+1)) tolerated by tmsvs(); gives
# r_max ~= 1.34 at the default cutoff of 24.
TAIL_MAX = 1e-3


def _unit_interval(name: str, x: float) -> float:
    x = float(x)
    if not 0.0 <= x <= 1.0:
        raise ParameterOutOfRange(f"{name} must lie in [0, 1], got {x}")
    return x


@dataclass(frozen=True)
class ParamSet:
    """Squeezing ``r``, loss factor ``eta`` and beam-splitter transmissivity ``T``."""

    r: float
    eta: float = 0.0
    T: float = 1.0

    def __post_init__(self):
        r = float(self.r)
        if not math.isfinite(r):
            raise ParameterOutOfRange(f"squeezing must be finite, got {r}")
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "eta", _unit_interval("eta", self.eta))
        object.__setattr__(self, "T", _unit_interval("T", self.T))

    @property
    def lam(self) -> float:
        """lambda = tanh(r)."""
        return math.tanh(self.r)

    @classmethod
    def from_lambda(cls, lam: float, eta: float = 0.0, T: float = 1.0) -> ParamSet:
        if not -1.0 < lam < 1.0:
            raise ParameterOutOfRange(f"lambda must lie in (-1, 1), got {lam}")
        return cls(math.atanh(lam), eta, T)


@dataclass(frozen=True)
class CFPoint:
    """Arguments (alpha, beta) of the two-mode characteristic function."""

    alpha: complex = 0j
    beta: complex = 0j


def r_max(cutoff: int = DEFAULT_CUTOFF) -> float:
    """Largest squeezing accepted by :func:`tmsvs` at this cutoff."""
    lam_max = TAIL_MAX ** (1.0 / (2 * (cutoff + 1)))
    return math.atanh(lam_max)


def tmsvs_tail(lam: float, cutoff: int) -> float:
    """Probability mass of the squeezed vacuum above the cutoff."""
    return lam ** (2 * (cutoff + 1))


def tmsvs(r: float, cutoff: int = DEFAULT_CUTOFF) -> TwoModeState:
    """Two-mode squeezed vacuum sum_n lambda^n sqrt(1-lambda^2) |nn>, truncated.

    Not renormalized: the trace is 1 - lambda^(2(n_max+1)).
    """
    n_max = check_cutoff(cutoff)
    if not abs(r) < r_max(n_max):
        raise ParameterOutOfRange(
            f"|r|={abs(r):.4g} >= r_max={r_max(n_max):.4g} at cutoff {n_max}; raise the cutoff"
        )
    lam = math.tanh(r)
    c0 = math.sqrt(1.0 - lam * lam)
    psi = np.zeros((n_max + 1) ** 2, dtype=complex)
    for n in range(n_max + 1):
        psi[pair_index(n, n, n_max)] = c0 * lam**n
    m = np.outer(psi, psi.conj())
    return TwoModeState(n_max, m)


# -- beam splitter -------------------------------------------------------------


def _bs_generator_block(n_total: int) -> np.ndarray:
    """b c^dag - b^dag c restricted to |j, N-j>, j = photons in b."""
    g = np.zeros((n_total + 1, n_total + 1))
    for j in range(1, n_total + 1):
        # b c^dag |j, N-j> = sqrt(j (N-j+1)) |j-1, N-j+1>
        amp = math.sqrt(j * (n_total - j + 1))
        g[j - 1, j] = amp
        g[j, j - 1] = -amp
    return g


@lru_cache(maxsize=256)
def _bs_blocks_cached(T: float, n_total_max: int) -> tuple:
    theta = math.acos(math.sqrt(T))
    blocks = []
    for n in range(n_total_max + 1):
        u = expm(theta * _bs_generator_block(n))
        u.setflags(write=False)
        blocks.append(u)
    return tuple(blocks)


def beam_splitter_blocks(T: float, n_total_max: int) -> tuple:
    """Exact beam-splitter rotations, one per total photon number N <= n_total_max.

    ``blocks[N][j_out, j_in] = <j_out, N-j_out| U |j_in, N-j_in>`` with j counting
    photons in mode b.
    """
    return _bs_blocks_cached(_unit_interval("T", T), int(n_total_max))


def bs_basis(cutoff: int) -> list[tuple[int, int]]:
    """States (n_b, n_c) with n_b + n_c <= cutoff, ordered by total number then n_b."""
    return [(j, n - j) for n in range(cutoff + 1) for j in range(n + 1)]


def beam_splitter_unitary(T: float, cutoff: int) -> np.ndarray:
    """Beam-splitter unitary on modes (b, c) over :func:`bs_basis`.

    The space is truncated by *total* photon number so every block is complete
    and the matrix is exactly unitary.
    """
    blocks = beam_splitter_blocks(T, cutoff)
    dim = (cutoff + 1) * (cutoff + 2) // 2
    u = np.zeros((dim, dim))
    start = 0
    for blk in blocks:
        k = blk.shape[0]
        u[start:start + k, start:start + k] = blk
        start += k
    return u


def ladder_ops_bc(cutoff: int) -> tuple[np.ndarray, np.ndarray]:
    """Annihilation operators b and c over :func:`bs_basis` (exact, no edge error)."""
    basis = bs_basis(cutoff)
    index = {s: i for i, s in enumerate(basis)}
    dim = len(basis)
    b = np.zeros((dim, dim))
    c = np.zeros((dim, dim))
    for i, (nb, nc) in enumerate(basis):
        if nb:
            b[index[(nb - 1, nc)], i] = math.sqrt(nb)
        if nc:
            c[index[(nb, nc - 1)], i] = math.sqrt(nc)
    return b, c


# -- loss ----------------------------------------------------------------------


def loss_kraus(eta: float, dim: int) -> list[np.ndarray]:
    """Photon-loss Kraus operators K_l, l = 0..dim-1, on a ``dim``-level mode.

    K_l |n> = sqrt(C(n, l) (1-eta)^(n-l) eta^l) |n-l>.
    """
    eta = _unit_interval("eta", eta)
    ops = []
    for l in range(dim):
        k = np.zeros((dim, dim))
        for n in range(l, dim):
            k[n - l, n] = math.sqrt(math.comb(n, l) * (1.0 - eta) ** (n - l) * eta**l)
        ops.append(k)
    return ops


def loss_channel(state: TwoModeState, eta: float) -> TwoModeState:
    """Apply photon loss to mode b: rho -> sum_l K_l rho K_l^dag."""
    eta = _unit_interval("eta", eta)
    d = state.cutoff + 1
    rho = state.tensor()
    out = np.zeros_like(rho)
    for l, k in enumerate(loss_kraus(eta, d)):
        # K_l is a single shifted diagonal: K_l[n-l, n] = w[n]
        w = np.diagonal(k, offset=l)
        if not np.any(w):
            continue
        out[:, : d - l, :, : d - l] += (
            w[None, :, None, None] * rho[:, l:, :, l:] * w[None, None, None, :]
        )
    return TwoModeState(state.cutoff, out.reshape(d * d, d * d))


# -- characteristic function --------------------------------------------------


def annihilation(dim: int) -> np.ndarray:
    return np.diag(np.sqrt(np.arange(1, dim)), k=1)


def displacement(alpha: complex, dim: int) -> np.ndarray:
    """Truncated D(alpha) = exp(alpha a^dag - alpha* a) at dimension ``dim``."""
    a = annihilation(dim)
    return expm(alpha * a.T - np.conj(alpha) * a)


def numeric_cf(state: TwoModeState, point: CFPoint) -> complex:
    """chi(alpha, beta) = Tr[rho D_a(alpha) D_b(beta)]."""
    if abs(point.alpha) > 1 or abs(point.beta) > 1:
        raise ParameterOutOfRange("characteristic function arguments are limited to |.| <= 1")
    d = state.cutoff + 1
    da = displacement(point.alpha, d)
    db = displacement(point.beta, d)
    return complex(np.einsum("ijkl,ki,lj->", state.tensor(), da, db))
