"""Heralded photon replacement, subtraction and addition on a lossy two-mode squeezed vacuum.

Two independent backends: a truncated Fock-space simulator (:mod:`.fock`,
:mod:`.optics`, :mod:`.heralding`) and closed-form / jet-expanded analytic
results (:mod:`.analytic`, :mod:`.jets`).
"""

from .errors import (
    CapExceeded,
    CutoffExceeded,
    DimensionMismatch,
    FockHeraldError,
    HeraldImpossible,
    NotNilpotent,
    ParameterOutOfRange,
    UnsupportedScheme,
    VarMismatch,
)
from .fock import FockBlock, TwoModeState, extract_block, fidelity, ket, partial_trace_a, partial_trace_b
from .heralding import OPA, OPR, OPS, HeraldOutcome, HeraldSpec, herald, run_scheme
from .optics import CFPoint, ParamSet, beam_splitter_unitary, loss_channel, numeric_cf, tmsvs

__version__ = "0.1.0"
