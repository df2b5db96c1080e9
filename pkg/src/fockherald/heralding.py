"""Conditional (heralded) operations on mode b.

An ancilla |k> in mode c is mixed with mode b on the beam splitter and mode c
is projected onto |m>. Because the ancilla and the projection are both pure,
the whole map on mode b is a single operator

    M = <m|_c U |k>_c,   rho -> M rho M^dag,

and photon-number conservation makes M a single shifted diagonal
(n_b -> n_b + k - m).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import HeraldImpossible, ParameterOutOfRange
from .fock import DEFAULT_CUTOFF, TwoModeState
from .optics import ParamSet, beam_splitter_blocks, loss_channel, tmsvs

P_MIN = 1e-12

_NAMED = {"OPR": (1, 1), "OPS": (0, 1), "OPA": (1, 0)}


@dataclass(frozen=True)
class HeraldSpec:
    k: int
    m: int
    name: str = "Custom"

    def __post_init__(self):
        if self.k < 0 or self.m < 0:
            raise ParameterOutOfRange("photon numbers must be non-negative")
        if self.name in _NAMED:
            if _NAMED[self.name] != (self.k, self.m):
                raise ValueError(f"{self.name} means (k, m) = {_NAMED[self.name]}")
        elif self.name != "Custom":
            raise ValueError(f"unknown scheme name {self.name!r}")

    @classmethod
    def named(cls, name: str) -> HeraldSpec:
        name = name.upper()
        if name not in _NAMED:
            raise ValueError(f"unknown scheme {name!r}; expected one of {sorted(_NAMED)}")
        return cls(*_NAMED[name], name)

    @property
    def label(self) -> str:
        return f"{self.k}{self.m}"


OPR = HeraldSpec(1, 1, "OPR")
OPS = HeraldSpec(0, 1, "OPS")
OPA = HeraldSpec(1, 0, "OPA")


@dataclass(frozen=True)
class HeraldOutcome:
    state: TwoModeState
    probability: float


def herald_weights(T: float, k: int, m: int, n_b_max: int) -> np.ndarray:
    """Diagonal of M: w[j] = <j+k-m, m| U |j, k> for j = 0..n_b_max (0 where j+k-m < 0)."""
    blocks = beam_splitter_blocks(T, n_b_max + k)
    w = np.zeros(n_b_max + 1)
    for j in range(n_b_max + 1):
        j_out = j + k - m
        if j_out >= 0:
            w[j] = blocks[j + k][j_out, j]
    return w


def herald(
    state: TwoModeState,
    spec: HeraldSpec,
    T: float,
    ancilla_cutoff: int | None = None,
) -> HeraldOutcome:
    """Condition mode b on detecting ``spec.m`` photons after injecting ``spec.k``.

    When k > m the output cutoff grows by k - m so no photons are dropped.

    Raises:
        HeraldImpossible: the success probability is below ``P_MIN``.
    """
    n_max = state.cutoff
    if ancilla_cutoff is None:
        ancilla_cutoff = n_max
    if spec.k > ancilla_cutoff or spec.m > ancilla_cutoff:
        raise ParameterOutOfRange(f"ancilla photon numbers exceed ancilla cutoff {ancilla_cutoff}")
    shift = spec.k - spec.m
    w = herald_weights(T, spec.k, spec.m, n_max)

    d = n_max + 1
    n_out = n_max + max(0, shift)
    d_out = n_out + 1
    lo = max(0, -shift)
    src = slice(lo, d)
    dst = slice(lo + shift, d + shift)
    ws = w[lo:]
    rho = state.tensor()
    out = np.zeros((d_out,) * 4, dtype=complex)
    out[:d, dst, :d, dst] = ws[None, :, None, None] * rho[:, src, :, src] * ws[None, None, None, :]
    out = out.reshape(d_out**2, d_out**2)

    p = float(np.trace(out).real)
    if not p >= P_MIN:
        raise HeraldImpossible(f"{spec.name} success probability {p:.3e} below {P_MIN:g}", p)
    return HeraldOutcome(TwoModeState(n_out, out / p), p)


def run_scheme(params: ParamSet, spec: HeraldSpec, cutoff: int = DEFAULT_CUTOFF) -> HeraldOutcome:
    """Squeezed vacuum -> loss on mode b -> heralded operation."""
    rho = tmsvs(params.r, cutoff)
    rho = loss_channel(rho, params.eta)
    return herald(rho, spec, params.T)
