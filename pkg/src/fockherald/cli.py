"""Command-line front end: Fock blocks, parameter sweeps and the cross-backend check.

Exit codes: 0 ok, 1 verification failure, 2 bad parameters, 3 herald impossible.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time

import numpy as np

from . import analytic
from .errors import HeraldImpossible, ParameterOutOfRange
from .fock import BLOCK_LABELS, DEFAULT_CUTOFF, FockBlock, extract_block
from .heralding import HeraldSpec, run_scheme
from .optics import ParamSet, tmsvs

EXIT_OK, EXIT_VERIFY, EXIT_PARAMS, EXIT_HERALD = 0, 1, 2, 3

STATES = ("tmsvs", "opr", "ops", "opa")
SWEEP_PARAMS = ("eta", "T", "r")


def fmt(x: float) -> str:
    """Round-trip float formatting (17 significant digits)."""
    return format(float(x), ".17g")


def parse_element(text: str) -> tuple[str, str]:
    try:
        bra, ket = text.split(":")
    except ValueError:
        raise argparse.ArgumentTypeError(f"element must look like 00:11, got {text!r}") from None
    for lab in (bra, ket):
        if lab not in BLOCK_LABELS:
            raise argparse.ArgumentTypeError(f"{lab!r} is not one of {', '.join(BLOCK_LABELS)}")
    return bra, ket


def compute_block(state: str, params: ParamSet, backend: str, cutoff: int) -> tuple[FockBlock, float]:
    """6x6 block and success probability (1 for the bare squeezed vacuum)."""
    if state == "tmsvs":
        if backend == "numeric":
            return extract_block(tmsvs(params.r, cutoff)), 1.0
        return analytic.tmsvs_block(params), 1.0
    spec = HeraldSpec.named(state)
    if backend == "numeric":
        out = run_scheme(params, spec, cutoff)
        return extract_block(out.state), out.probability
    return analytic.closed_form_block(params, spec), analytic.success_probability(params, spec)


def _open_out(path):
    return open(path, "w", newline="") if path else None


def _emit(text: str, path) -> None:
    fh = _open_out(path)
    if fh is None:
        sys.stdout.write(text)
        return
    with fh:
        fh.write(text)


# -- table ---------------------------------------------------------------------


def cmd_table(args) -> int:
    params = ParamSet(args.squeeze, args.eta, args.transmissivity)
    block, p_d = compute_block(args.state, params, args.backend, args.cutoff)
    if args.format == "json":
        doc = block.to_json()
        doc.update(
            state=args.state,
            backend=args.backend,
            params={"r": params.r, "lambda": params.lam, "eta": params.eta, "T": params.T},
            p_d=p_d,
        )
        text = json.dumps(doc, indent=2) + "\n"
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["bra", *BLOCK_LABELS])
        for lab, row in zip(BLOCK_LABELS, block.entries):
            w.writerow([lab, *(fmt(v.real) for v in row)])
        w.writerow(["p_d", fmt(p_d)])
        text = buf.getvalue()
    _emit(text, args.output)
    return EXIT_OK


# -- sweep -----------------------------------------------------------------------


def sweep_grid(start: float, stop: float, step: float) -> list[float]:
    if not step > 0:
        raise ParameterOutOfRange("step must be positive")
    if start > stop:
        raise ParameterOutOfRange("start must not exceed stop")
    n = int(np.floor((stop - start) / step + 1e-9)) + 1
    return [start + i * step for i in range(n)]


def sweep_rows(args) -> list[list[str]]:
    fixed = {"r": args.squeeze, "eta": args.eta, "T": args.transmissivity}
    elements = args.element or [(lab, lab) for lab in BLOCK_LABELS]
    rows = [["param", *(f"{b}:{k}" for b, k in elements), "p_d", "feasible"]]
    for x in sweep_grid(args.start, args.stop, args.step):
        vals = dict(fixed, **{args.param: x})
        params = ParamSet(vals["r"], vals["eta"], vals["T"])
        try:
            block, p_d = compute_block(args.state, params, args.backend, args.cutoff)
        except HeraldImpossible as exc:
            p = getattr(exc, "probability", None)
            rows.append([fmt(x), *([""] * len(elements)), "" if p is None else fmt(p), "0"])
            continue
        cells = [fmt(block.at(b, k).real) for b, k in elements]
        rows.append([fmt(x), *cells, fmt(p_d), "1"])
    return rows


def cmd_sweep(args) -> int:
    rows = sweep_rows(args)
    if args.format == "json":
        header, body = rows[0], rows[1:]
        text = json.dumps([dict(zip(header, r)) for r in body], indent=2) + "\n"
    else:
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(rows)
        text = buf.getvalue()
    _emit(text, args.output)
    return EXIT_OK


# -- verify ----------------------------------------------------------------------


CHECKS = (
    ("numeric-vs-closed block", "tol"),
    ("numeric-vs-closed p_d", "tol"),
    ("jet-vs-closed block", "jet_tol"),
    ("jet-vs-closed p_d", "jet_tol"),
)


def verify(cutoff: int, trials: int, seed: int, tol: float, jet_tol: float = 1e-12, r=None, out=None):
    """Cross-backend oracle suite over seeded random (r, eta, T) triples.

    Returns (ok, report) where report maps check name -> max deviation.
    """
    out = out or sys.stdout
    rng = np.random.default_rng(seed)
    worst = {name: 0.0 for name, _ in CHECKS}
    limits = {"tol": tol, "jet_tol": jet_tol}
    rejected = []
    for t in range(trials):
        rr = rng.uniform(0.1, 1.0) if r is None else r
        eta, T = rng.uniform(0.05, 0.95, size=2)
        params = ParamSet(rr, eta, T)
        for name in ("opr", "ops", "opa"):
            spec = HeraldSpec.named(name)
            closed = analytic.closed_form_block(params, spec).entries
            p_closed = analytic.success_probability(params, spec)
            jet = analytic.general_block(params, spec).entries
            p_jet = analytic.success_probability_jet(params, spec)
            worst["jet-vs-closed block"] = max(worst["jet-vs-closed block"], np.abs(jet - closed).max())
            worst["jet-vs-closed p_d"] = max(worst["jet-vs-closed p_d"], abs(p_jet - p_closed))
            try:
                num = run_scheme(params, spec, cutoff)
            except ParameterOutOfRange as exc:
                rejected.append((t, name, str(exc)))
                continue
            dev = np.abs(extract_block(num.state).entries - closed).max()
            worst["numeric-vs-closed block"] = max(worst["numeric-vs-closed block"], dev)
            worst["numeric-vs-closed p_d"] = max(
                worst["numeric-vs-closed p_d"], abs(num.probability - p_closed)
            )
    ok = not rejected
    print(f"verify: trials={trials} cutoff={cutoff} seed={seed}", file=out)
    if trials == 0:
        print("no checks run", file=out)
        return True, worst
    for name, lim in CHECKS:
        passed = worst[name] <= limits[lim]
        ok = ok and passed
        status = "PASS" if passed else "FAIL"
        print(f"{status} {name}: max deviation {worst[name]:.3e} (tol {limits[lim]:.0e})", file=out)
    if rejected:
        t, name, msg = rejected[0]
        print(f"FAIL truncation: {len(rejected)} numeric runs rejected (first: trial {t} {name}: {msg})", file=out)
    return ok, worst


def cmd_verify(args) -> int:
    start = time.perf_counter()
    ok, _ = verify(args.cutoff, args.trials, args.seed, args.tol, args.jet_tol, args.squeeze)
    print(f"elapsed {time.perf_counter() - start:.1f} s")
    return EXIT_OK if ok else EXIT_VERIFY


# -- parser ------------------------------------------------------------------------


def _common(p, *, r_default=0.7):
    p.add_argument("-r", "--squeeze", type=float, default=r_default, help="squeezing parameter r")
    p.add_argument("--eta", type=float, default=0.2, help="loss factor of mode b")
    p.add_argument("-T", "--transmissivity", type=float, default=0.7, help="beam-splitter transmissivity")
    p.add_argument("--backend", choices=("analytic", "numeric"), default="analytic")
    p.add_argument("--cutoff", type=int, default=DEFAULT_CUTOFF, help="per-mode photon cutoff (numeric backend)")
    p.add_argument("-o", "--output", help="write to FILE instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fockherald", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table", help="6x6 Fock block of one state")
    p.add_argument("--state", choices=STATES, default="tmsvs")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    _common(p)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("sweep", help="block elements along a one-parameter grid (CSV)")
    p.add_argument("--param", choices=SWEEP_PARAMS, required=True)
    p.add_argument("--start", type=float, required=True)
    p.add_argument("--stop", type=float, required=True)
    p.add_argument("--step", type=float, required=True)
    p.add_argument("--state", choices=STATES, default="opr")
    p.add_argument("--element", type=parse_element, action="append", help="block position, e.g. 00:11 (repeatable)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    _common(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", help="cross-check numeric, closed-form and jet backends")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--cutoff", type=int, default=DEFAULT_CUTOFF)
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--tol", type=float, default=1e-8, help="numeric vs closed-form tolerance")
    p.add_argument("--jet-tol", type=float, default=1e-12, help="jet vs closed-form tolerance")
    p.add_argument("-r", "--squeeze", type=float, default=None, help="pin r instead of sampling it")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParameterOutOfRange as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARAMS
    except HeraldImpossible as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_HERALD


if __name__ == "__main__":
    sys.exit(main())
