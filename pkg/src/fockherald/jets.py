"""Truncated multivariate power series ("jets") with per-variable degree caps.

Mixed partial derivatives at the origin are read off as coefficients times
factorials, so expressions of the form

    d^N / dx_1 ... dx_N  exp(polynomial)  |_{x=0}

are evaluated exactly (up to floating-point arithmetic) with no numerical
differentiation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import CapExceeded, NotNilpotent, VarMismatch

Index = tuple


@dataclass(frozen=True)
class JetVars:
    names: tuple
    caps: tuple

    def __post_init__(self):
        names = tuple(self.names)
        caps = tuple(int(c) for c in self.caps)
        if len(names) != len(caps):
            raise ValueError("one cap per variable is required")
        if len(set(names)) != len(names):
            raise ValueError("variable names must be distinct")
        if any(c < 0 for c in caps):
            raise ValueError("caps must be non-negative")
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "caps", caps)

    def __len__(self):
        return len(self.names)

    def position(self, name: str) -> int:
        return self.names.index(name)

    def fits(self, index: Index) -> bool:
        return all(e <= c for e, c in zip(index, self.caps))

    def index(self, **powers: int) -> Index:
        """Multi-index from keyword powers, e.g. ``index(f1=2, h2=1)``."""
        idx = [0] * len(self.names)
        for name, p in powers.items():
            idx[self.position(name)] = p
        return tuple(idx)


class Jet:
    """Sparse truncated series: a mapping multi-index -> coefficient."""

    __slots__ = ("vars", "coeffs")

    def __init__(self, vars: JetVars, coeffs: Mapping[Index, complex] | None = None):
        self.vars = vars
        self.coeffs = {}
        for idx, c in (coeffs or {}).items():
            idx = tuple(idx)
            if len(idx) != len(vars):
                raise ValueError(f"index {idx} has wrong length for {len(vars)} variables")
            if c != 0 and vars.fits(idx):
                self.coeffs[idx] = c

    # -- constructors ---------------------------------------------------------

    @classmethod
    def constant(cls, vars: JetVars, c: complex = 1.0) -> Jet:
        return cls(vars, {(0,) * len(vars): c})

    @classmethod
    def monomial(cls, vars: JetVars, c: complex = 1.0, **powers: int) -> Jet:
        return cls(vars, {vars.index(**powers): c})

    @classmethod
    def variable(cls, vars: JetVars, name: str) -> Jet:
        return cls.monomial(vars, 1.0, **{name: 1})

    # -- arithmetic -------------------------------------------------------------

    def _check(self, other: Jet) -> None:
        if self.vars != other.vars:
            raise VarMismatch(f"{self.vars} vs {other.vars}")

    def __add__(self, other):
        if not isinstance(other, Jet):
            other = Jet.constant(self.vars, other)
        return jet_add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return Jet(self.vars, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Jet):
            return jet_mul(self, other)
        return Jet(self.vars, {k: v * other for k, v in self.coeffs.items()})

    def __rmul__(self, other):
        return self * other

    def __eq__(self, other):
        return isinstance(other, Jet) and self.vars == other.vars and self.coeffs == other.coeffs

    def __repr__(self):
        terms = []
        for idx, c in sorted(self.coeffs.items()):
            mono = "*".join(
                n if e == 1 else f"{n}^{e}" for n, e in zip(self.vars.names, idx) if e
            )
            terms.append(f"{c}" + (f"*{mono}" if mono else ""))
        return "Jet(" + (" + ".join(terms) or "0") + ")"

    def coefficient(self, index: Sequence[int]) -> complex:
        return self.coeffs.get(tuple(index), 0.0)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs


def jet_add(a: Jet, b: Jet) -> Jet:
    a._check(b)
    out = dict(a.coeffs)
    for k, v in b.coeffs.items():
        out[k] = out.get(k, 0.0) + v
    return Jet(a.vars, out)


def jet_mul(a: Jet, b: Jet) -> Jet:
    """Cauchy product, dropping every term whose exponent exceeds a cap."""
    a._check(b)
    caps = a.vars.caps
    out: dict = {}
    for ia, ca in a.coeffs.items():
        for ib, cb in b.coeffs.items():
            idx = tuple(x + y for x, y in zip(ia, ib))
            if all(e <= c for e, c in zip(idx, caps)):
                out[idx] = out.get(idx, 0.0) + ca * cb
    return Jet(a.vars, out)


def jet_exp(a: Jet) -> Jet:
    """exp(a) for a jet with zero constant term; the series terminates under truncation."""
    zero = (0,) * len(a.vars)
    if a.coeffs.get(zero, 0.0) != 0:
        raise NotNilpotent("exp needs a zero constant term")
    result = Jet.constant(a.vars)
    term = result
    j = 0
    while True:
        j += 1
        term = jet_mul(term, a) * (1.0 / j)
        if term.is_zero:
            return result
        result = jet_add(result, term)


def derivative_at_zero(a: Jet, orders: Sequence[int]) -> complex:
    """Mixed partial derivative of the given orders, evaluated at the origin."""
    orders = tuple(int(o) for o in orders)
    if len(orders) != len(a.vars):
        raise ValueError("one derivative order per variable is required")
    if not a.vars.fits(orders):
        raise CapExceeded(f"orders {orders} exceed caps {a.vars.caps}")
    scale = math.prod(math.factorial(o) for o in orders)
    return a.coefficient(orders) * scale
