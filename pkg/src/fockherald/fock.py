"""Truncated two-mode Fock space: states, the reported 6x6 block, and basic linear algebra.

Two-mode states are dense density matrices over the product basis |n_a n_b>,
n_a, n_b = 0..n_max, flattened row-major as ``n_a * (n_max + 1) + n_b``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import CutoffExceeded, DimensionMismatch, ParameterOutOfRange

DEFAULT_CUTOFF = 24

TAU_HERM = 1e-10
TAU_TRACE = 1e-10
TAU_PSD = 1e-9

BLOCK_BASIS = ((0, 0), (0, 1), (1, 0), (0, 2), (1, 1), (2, 0))
BLOCK_LABELS = tuple(f"{na}{nb}" for na, nb in BLOCK_BASIS)


def check_cutoff(n_max: int) -> int:
    if int(n_max) != n_max or n_max < 2:
        raise ParameterOutOfRange(f"cutoff must be an integer >= 2, got {n_max!r}")
    return int(n_max)


def pair_index(n_a: int, n_b: int, n_max: int) -> int:
    """Flat index of |n_a n_b> in the row-major two-mode layout."""
    if not (0 <= n_a <= n_max and 0 <= n_b <= n_max):
        raise CutoffExceeded(f"|{n_a},{n_b}> lies outside cutoff n_max={n_max}")
    return n_a * (n_max + 1) + n_b


def basis_label(n_a: int, n_b: int, n_max: int) -> str:
    # Concatenated labels ("11") are only unambiguous while every number is one digit.
    if n_max <= 9:
        return f"{n_a}{n_b}"
    return f"{n_a},{n_b}"


def basis_labels(n_max: int) -> list[str]:
    return [basis_label(na, nb, n_max) for na in range(n_max + 1) for nb in range(n_max + 1)]


def parse_label(label: str) -> tuple[int, int]:
    """Inverse of :func:`basis_label` ("11" -> (1, 1), "12,3" -> (12, 3))."""
    if "," in label:
        a, b = label.split(",")
        return int(a), int(b)
    if len(label) != 2 or not label.isdigit():
        raise ValueError(f"cannot parse basis label {label!r}")
    return int(label[0]), int(label[1])


def _freeze(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=complex, copy=True)
    a.setflags(write=False)
    return a


def _matrix_json(labels, m: np.ndarray) -> dict:
    return {
        "basis": list(labels),
        "re": m.real.tolist(),
        "im": m.imag.tolist(),
    }


@dataclass(frozen=True)
class TwoModeState:
    """Density matrix of modes (a, b) truncated at ``cutoff`` photons per mode.

    ``norm_trace`` records the trace at construction. Truncated constructors
    such as the squeezed vacuum are *not* renormalized, so it may be below 1.
    """

    cutoff: int
    matrix: np.ndarray = field(repr=False)
    norm_trace: float = None

    def __post_init__(self):
        n_max = check_cutoff(self.cutoff)
        object.__setattr__(self, "cutoff", n_max)
        m = _freeze(self.matrix)
        d = (n_max + 1) ** 2
        if m.shape != (d, d):
            raise DimensionMismatch(f"expected a {d}x{d} matrix for cutoff {n_max}, got {m.shape}")
        object.__setattr__(self, "matrix", m)
        if self.norm_trace is None:
            object.__setattr__(self, "norm_trace", float(np.trace(m).real))

    @property
    def dim(self) -> int:
        return (self.cutoff + 1) ** 2

    @property
    def trace(self) -> float:
        return float(np.trace(self.matrix).real)

    def tensor(self) -> np.ndarray:
        """View as rho[a_row, b_row, a_col, b_col]."""
        d = self.cutoff + 1
        return self.matrix.reshape(d, d, d, d)

    def element(self, bra: tuple[int, int], ket: tuple[int, int]) -> complex:
        """<bra| rho |ket> for photon-number pairs (n_a, n_b)."""
        i = pair_index(*bra, self.cutoff)
        j = pair_index(*ket, self.cutoff)
        return complex(self.matrix[i, j])

    def normalized(self) -> TwoModeState:
        tr = self.trace
        return TwoModeState(self.cutoff, self.matrix / tr, 1.0)

    def check(self, tau_herm=TAU_HERM, tau_psd=TAU_PSD, tau_trace=TAU_TRACE) -> None:
        """Raise AssertionError unless Hermitian, PSD and trace-consistent.

        Runs an eigensolver, so it is not done on construction.
        """
        m = self.matrix
        herm = np.max(np.abs(m - m.conj().T)) if m.size else 0.0
        assert herm <= tau_herm, f"not Hermitian: max |rho - rho^H| = {herm:.3e}"
        evals = np.linalg.eigvalsh((m + m.conj().T) / 2)
        assert evals.min() >= -tau_psd, f"negative eigenvalue {evals.min():.3e}"
        assert abs(self.trace - self.norm_trace) <= tau_trace, "trace drifted from norm_trace"

    def to_json(self) -> dict:
        return _matrix_json(basis_labels(self.cutoff), self.matrix)

    @classmethod
    def from_json(cls, doc: dict) -> TwoModeState:
        m = np.asarray(doc["re"], dtype=float) + 1j * np.asarray(doc["im"], dtype=float)
        n_max = int(round(np.sqrt(m.shape[0]))) - 1
        if basis_labels(n_max) != list(doc["basis"]):
            raise ValueError("basis labels do not match a row-major two-mode layout")
        return cls(n_max, m)


@dataclass(frozen=True)
class FockBlock:
    """The 6x6 sub-matrix over |00>, |01>, |10>, |02>, |11>, |20>."""

    entries: np.ndarray = field(repr=False)
    basis_labels: tuple = BLOCK_LABELS

    def __post_init__(self):
        m = _freeze(self.entries)
        if m.shape != (6, 6):
            raise DimensionMismatch(f"a Fock block is 6x6, got {m.shape}")
        object.__setattr__(self, "entries", m)

    def __getitem__(self, key):
        return self.entries[key]

    def at(self, bra: str, ket: str) -> complex:
        """Entry addressed by basis labels, e.g. ``block.at("00", "11")``."""
        return complex(self.entries[BLOCK_LABELS.index(bra), BLOCK_LABELS.index(ket)])

    def to_json(self) -> dict:
        return _matrix_json(self.basis_labels, self.entries)

    def dumps(self, **extra) -> str:
        doc = self.to_json()
        doc.update(extra)
        return json.dumps(doc)

    @classmethod
    def from_json(cls, doc: dict) -> FockBlock:
        if tuple(doc["basis"]) != BLOCK_LABELS:
            raise ValueError(f"unexpected block basis {doc['basis']!r}")
        m = np.asarray(doc["re"], dtype=float) + 1j * np.asarray(doc["im"], dtype=float)
        return cls(m)


def ket(n_a: int, n_b: int, cutoff: int = DEFAULT_CUTOFF) -> TwoModeState:
    """Projector |n_a n_b><n_a n_b|."""
    n_max = check_cutoff(cutoff)
    i = pair_index(n_a, n_b, n_max)
    m = np.zeros(((n_max + 1) ** 2,) * 2, dtype=complex)
    m[i, i] = 1.0
    return TwoModeState(n_max, m)


def from_vector(psi: np.ndarray, cutoff: int) -> TwoModeState:
    """Pure state |psi><psi| from a flat amplitude vector (not renormalized)."""
    psi = np.asarray(psi, dtype=complex).ravel()
    return TwoModeState(cutoff, np.outer(psi, psi.conj()))


def extract_block(state: TwoModeState) -> FockBlock:
    idx = [pair_index(na, nb, state.cutoff) for na, nb in BLOCK_BASIS]
    return FockBlock(state.matrix[np.ix_(idx, idx)])


def partial_trace_b(state: TwoModeState) -> np.ndarray:
    """Reduced density matrix of mode a."""
    return np.einsum("ijkj->ik", state.tensor())


def partial_trace_a(state: TwoModeState) -> np.ndarray:
    """Reduced density matrix of mode b."""
    return np.einsum("ijil->jl", state.tensor())


def _psd_sqrt(m: np.ndarray) -> np.ndarray:
    w, v = np.linalg.eigh((m + m.conj().T) / 2)
    # eigenvalues at round-off level would otherwise contribute ~sqrt(eps) each
    w = np.where(w > 1e-14 * max(w.max(), 0.0), w, 0.0)
    return (v * np.sqrt(w)) @ v.conj().T


def fidelity(s1: TwoModeState, s2: TwoModeState) -> float:
    """Uhlmann fidelity ||sqrt(r1) sqrt(r2)||_1^2 in [0, 1].

    Both inputs are divided by their traces first, so truncated but otherwise
    valid states are compared as normalized states.
    """
    if s1.cutoff != s2.cutoff:
        raise DimensionMismatch(f"cutoffs differ: {s1.cutoff} vs {s2.cutoff}")
    r1 = s1.matrix / s1.trace
    r2 = s2.matrix / s2.trace
    sv = np.linalg.svd(_psd_sqrt(r1) @ _psd_sqrt(r2), compute_uv=False)
    f = float(np.sum(sv) ** 2)
    return min(max(f, 0.0), 1.0)
