"""Closed-form and derivative-form results for the three heralded schemes.

Everything here works in lambda = tanh(r). Two independent analytic routes are
provided: explicit closed forms for the 6x6 block and success probabilities,
and generating-function (derivative) forms evaluated by jet expansion.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import CapExceeded, HeraldImpossible, UnsupportedScheme
from .fock import BLOCK_BASIS, BLOCK_LABELS, FockBlock
from .heralding import OPA, OPR, OPS, P_MIN, HeraldSpec
from .jets import Jet, JetVars, derivative_at_zero, jet_exp
from .optics import CFPoint, ParamSet

DEFAULT_MAX_PHOTONS = 6

JET_NAMES = ("f1", "f2", "g1", "g2", "h1", "h2", "s1", "s2")


@dataclass(frozen=True)
class OmegaKappas:
    omega: float
    kappa1: float
    kappa2: float


@dataclass(frozen=True)
class ElementQuery:
    """<n1 m1| rho |n2 m2> with n counting mode-a and m mode-b photons."""

    n1: int
    m1: int
    n2: int
    m2: int
    scheme: HeraldSpec

    def __post_init__(self):
        if min(self.n1, self.m1, self.n2, self.m2) < 0:
            raise ValueError("photon numbers must be non-negative")


def _scheme_key(scheme: HeraldSpec) -> str:
    for named in (OPR, OPS, OPA):
        if (scheme.k, scheme.m) == (named.k, named.m):
            return named.name
    raise UnsupportedScheme(f"no closed form for herald (k, m) = ({scheme.k}, {scheme.m})")


def omega_kappas(params: ParamSet) -> OmegaKappas:
    lam2 = params.lam**2
    eta, T = params.eta, params.T
    omega = 1.0 / (1.0 - lam2 * eta - T * lam2 * (1.0 - eta))
    kappa1 = (1.0 + T * T) * (1.0 - eta) + 2.0 * T * (eta - 2.0)
    kappa2 = T - eta * (1.0 - eta) * (1.0 - T) ** 2
    return OmegaKappas(omega, kappa1, kappa2)


def success_probability(params: ParamSet, scheme: HeraldSpec) -> float:
    key = _scheme_key(scheme)
    ok = omega_kappas(params)
    lam2 = params.lam**2
    eta, T, om = params.eta, params.T, ok.omega
    if key == "OPR":
        return om**3 * (1 - lam2) * (T + ok.kappa1 * lam2 + ok.kappa2 * lam2**2)
    if key == "OPS":
        return om**2 * lam2 * (1 - lam2) * (1 - eta) * (1 - T)
    return om**2 * (1 - lam2) * (1 - lam2 * eta) * (1 - T)


def success_probability_jet(params: ParamSet, scheme: HeraldSpec) -> float:
    """Success probability from its generating-function form, by jet expansion."""
    key = _scheme_key(scheme)
    lam2 = params.lam**2
    eta, T = params.eta, params.T
    om = omega_kappas(params).omega
    use_h = key in ("OPR", "OPS")
    use_s = key in ("OPR", "OPA")
    v = JetVars(("h1", "h2", "s1", "s2"), (use_h, use_h, use_s, use_s))
    expo = (
        Jet.monomial(v, om * (1 - T) * lam2 * (1 - eta), h1=1, h2=1)
        + Jet.monomial(v, om * (1 - T) * (1 - lam2 * eta), s1=1, s2=1)
        + Jet.monomial(v, om * (1 - lam2) * math.sqrt(T), s1=1, h2=1)
        + Jet.monomial(v, om * (1 - lam2) * math.sqrt(T), h1=1, s2=1)
    )
    d = derivative_at_zero(jet_exp(expo), v.caps)
    return float((om * (1 - lam2) * d).real)


def _require_feasible(p: float, scheme: HeraldSpec) -> float:
    if not p >= P_MIN:
        raise HeraldImpossible(f"{scheme.name} success probability {p:.3e} below {P_MIN:g}", p)
    return p


def _block_position(position) -> tuple[int, int]:
    i, j = position
    if isinstance(i, str):
        i = BLOCK_LABELS.index(i)
    if isinstance(j, str):
        j = BLOCK_LABELS.index(j)
    if not (0 <= i < 6 and 0 <= j < 6):
        raise IndexError(f"block position {position!r} outside the 6x6 block")
    return i, j


def tmsvs_block(params: ParamSet) -> FockBlock:
    """Block of the (untruncated, normalized) squeezed vacuum."""
    lam = params.lam
    b = np.zeros((6, 6))
    i00, i11 = BLOCK_LABELS.index("00"), BLOCK_LABELS.index("11")
    b[i00, i00] = 1 - lam**2
    b[i00, i11] = b[i11, i00] = lam * (1 - lam**2)
    b[i11, i11] = lam**2 * (1 - lam**2)
    return FockBlock(b)


def _closed_form_entries(params: ParamSet, scheme: HeraldSpec) -> dict:
    key = _scheme_key(scheme)
    p = _require_feasible(success_probability(params, scheme), scheme)
    lam, eta, T = params.lam, params.eta, params.T
    lam2 = lam * lam
    base = 1 - lam2
    if key == "OPR":
        coh = math.sqrt(T * (1 - eta)) * lam * (2 * T - 1) * base / p
        return {
            ("00", "00"): T * base / p,
            ("10", "10"): eta * T * lam2 * base / p,
            ("00", "11"): coh,
            ("11", "00"): coh,
            ("11", "11"): (1 - eta) * (2 * T - 1) ** 2 * lam2 * base / p,
            ("20", "20"): T * eta**2 * lam2**2 * base / p,
        }
    if key == "OPS":
        p1010 = (1 - T) * (1 - eta) * lam2 * base / p
        return {("10", "10"): p1010, ("20", "20"): 2 * eta * lam2 * p1010}
    p0101 = (1 - T) * base / p
    return {("01", "01"): p0101, ("11", "11"): eta * lam2 * p0101}


def element_closed_form(params: ParamSet, scheme: HeraldSpec, position) -> complex:
    """Block entry at ``position`` (index pair or label pair such as ("00", "11"))."""
    i, j = _block_position(position)
    entries = _closed_form_entries(params, scheme)
    return complex(entries.get((BLOCK_LABELS[i], BLOCK_LABELS[j]), 0.0))


def closed_form_block(params: ParamSet, scheme: HeraldSpec) -> FockBlock:
    b = np.zeros((6, 6))
    for (bra, ket), v in _closed_form_entries(params, scheme).items():
        b[BLOCK_LABELS.index(bra), BLOCK_LABELS.index(ket)] = v
    return FockBlock(b)


def _element_exponent(params: ParamSet, key: str, v: JetVars) -> Jet:
    lam, eta, T = params.lam, params.eta, params.T
    amp = lam * math.sqrt(1 - eta)
    st, sr = math.sqrt(T), math.sqrt(1 - T)

    def mono(c, **p):
        return Jet.monomial(v, c, **p)

    expo = mono(lam * lam * eta, f1=1, f2=1)
    expo = expo + mono(amp * st, f1=1, g1=1) + mono(amp * st, f2=1, g2=1)
    if key in ("OPR", "OPS"):
        expo = expo + mono(amp * sr, f1=1, h2=1) + mono(amp * sr, h1=1, f2=1)
    if key == "OPR":
        expo = expo + mono(st, h2=1, s1=1) + mono(st, h1=1, s2=1)
    if key in ("OPR", "OPA"):
        expo = expo + mono(-sr, g1=1, s1=1) + mono(-sr, g2=1, s2=1)
    return expo


def element_general(
    params: ParamSet, query: ElementQuery, max_photons: int = DEFAULT_MAX_PHOTONS
) -> complex:
    """Any Fock element <n1 m1|rho|n2 m2> of a heralded state, by jet expansion."""
    key = _scheme_key(query.scheme)
    n1, m1, n2, m2 = query.n1, query.m1, query.n2, query.m2
    if max(n1, m1, n2, m2) > max_photons:
        raise CapExceeded(f"photon numbers above max_photons={max_photons}")
    h = int(key in ("OPR", "OPS"))
    s = int(key in ("OPR", "OPA"))
    orders = (n1, n2, m1, m2, h, h, s, s)
    v = JetVars(JET_NAMES, orders)
    p = _require_feasible(success_probability_jet(params, query.scheme), query.scheme)
    d = derivative_at_zero(jet_exp(_element_exponent(params, key, v)), orders)
    lam2 = params.lam**2
    norm = math.sqrt(math.factorial(n1) * math.factorial(n2) * math.factorial(m1) * math.factorial(m2))
    return complex((1 - lam2) * d / (p * norm))


def general_block(params: ParamSet, scheme: HeraldSpec) -> FockBlock:
    """The 6x6 block assembled entry by entry from :func:`element_general`."""
    _require_feasible(success_probability_jet(params, scheme), scheme)
    b = np.zeros((6, 6), dtype=complex)
    for i, (n1, m1) in enumerate(BLOCK_BASIS):
        for j, (n2, m2) in enumerate(BLOCK_BASIS):
            b[i, j] = element_general(params, ElementQuery(n1, m1, n2, m2, scheme))
    return FockBlock(b)


def cf_tmsvs(params: ParamSet, point: CFPoint) -> complex:
    """Gaussian characteristic function Tr[rho D_a(alpha) D_b(beta)] of the squeezed vacuum."""
    lam = params.lam
    a, b = complex(point.alpha), complex(point.beta)
    q = (1 + lam**2) * (abs(a) ** 2 + abs(b) ** 2) / (2 * (1 - lam**2))
    c = lam * (a.conjugate() * b.conjugate() + a * b) / (1 - lam**2)
    return cmath.exp(-q + c)
