"""Command-line front end: batch spectra, coefficients, resummation, tables.

Every command writes its table to stdout (CSV by default) and diagnostics
to stderr.  Exit codes: 0 success, 2 usage, 3 domain error, 4 convergence
failure.  ``--manifest`` records the run (command, parameters, version,
timestamp, output checksum) as JSON for reproducibility audits.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import os
import sys
import time
from fractions import Fraction

from . import __version__
from .lo_harmonic import lo_spectrum
from .model_core import (
    ConvergenceError,
    DomainError,
    EstimationError,
    NgasError,
    OscKind,
    OscillatorSpec,
    PhaseError,
    well_depth_shift,
)
from .oracle import diagonalize
from .phi4 import Phi4Params, condensate_ratio, scan_sigma, sigma_domain
from .recursion import mfpt_series, sfpt_coefficients
from .resummation import borel_coefficients, borel_sum, estimate_singularity, optimal_truncation
from .squarewell import SWModel, sw_lo, sw_second_order
from .tables import ALPHA, get_table, render_csv

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DOMAIN = 3
EXIT_CONVERGENCE = 4


def _kind(text: str) -> OscKind:
    try:
        return OscKind[text.upper()]
    except KeyError as exc:
        raise DomainError(f"unknown model {text!r}") from exc


def _parse_g(text: str) -> Fraction:
    """Couplings are parsed exactly ('1', '0.1', '8/15' all stay rational)."""
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"cannot parse coupling {text!r}") from exc


def _decimals(default: int = 4) -> int:
    return int(os.environ.get("NGAS_PRECISION", str(default)))


def _emit(text: str, manifest_path, argv):
    sys.stdout.write(text)
    if manifest_path:
        manifest = {
            "command": " ".join(argv),
            "tool_version": __version__,
            "timestamp": time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()),
            "output_sha256": hashlib.sha256(text.encode()).hexdigest(),
        }
        with open(manifest_path, "w") as fh:
            json.dump(manifest, fh, indent=2)
            fh.write("\n")


def _cmd_spectrum(args, argv) -> int:
    kind_txt = args.model.upper()
    dec = _decimals()
    rows = []
    if args.method == "squarewell":
        model = {"AHO": SWModel.AHO, "QAHO": SWModel.AHO, "SHO": SWModel.SHO,
                 "DWO": SWModel.DWO, "QDWO": SWModel.DWO}.get(kind_txt)
        if model is None:
            raise DomainError(f"square-well method supports AHO/SHO/DWO, got {args.model}")
        g = float(args.g)
        okind = {SWModel.AHO: OscKind.QAHO, SWModel.DWO: OscKind.QDWO,
                 SWModel.SHO: OscKind.SHO}[model]
        for n in args.n:
            lo = sw_lo(model, g, n + 1)
            e_lo = lo.E_LO
            e2 = sw_second_order(model, g, n + 1, m_max=4000, tail_tol=1e-5)
            if model is SWModel.DWO:
                e_lo += 1.0 / (16.0 * g)
                e2 += 1.0 / (16.0 * g)
            oracle = math.nan
            if not args.no_oracle:
                oracle = diagonalize(OscillatorSpec(okind, g, n), levels=n + 1)[n]
            err = 100.0 * abs(e_lo - oracle) / abs(oracle) if oracle == oracle else math.nan
            rows.append({"n": n, "g": g, "E_LO": e_lo, "E2": e2,
                         "oracle": oracle, "percent_error": err})
    else:
        kind = _kind(kind_txt)
        for n in args.n:
            spec = OscillatorSpec(kind, float(args.g), n)
            rep = lo_spectrum(spec)
            oracle = math.nan
            if not args.no_oracle:
                oracle = diagonalize(spec, levels=n + 1)[n]
            err = 100.0 * abs(rep.reference_energy - oracle) / abs(oracle) if oracle == oracle else math.nan
            rows.append({"n": n, "g": float(args.g), "E_LO": rep.reference_energy,
                         "E2": math.nan, "oracle": oracle, "percent_error": err})

    if args.format == "json":
        text = json.dumps(rows, indent=2, default=float) + "\n"
    else:
        cols = ["n", "g", "E_LO", "E2", "oracle", "percent_error"]
        lines = [",".join(cols)]
        for r in rows:
            lines.append(",".join(
                f"{r[c]:.{dec}f}" if isinstance(r[c], float) else str(r[c]) for c in cols))
        text = "\n".join(lines) + "\n"
    _emit(text, args.manifest, argv)
    return EXIT_OK


def _series_for_args(args):
    g = _parse_g(args.g)
    kind = _kind(args.model)
    if args.scheme == "sfpt":
        K = {OscKind.QAHO: 2, OscKind.QDWO: 2, OscKind.SAHO: 3, OscKind.OAHO: 4}[kind]
        return sfpt_coefficients(K, args.n, args.order)
    return mfpt_series(OscillatorSpec(kind, float(g), args.n), args.order, omega=None)


def _cmd_coeffs(args, argv) -> int:
    g = _parse_g(args.g)
    kind = _kind(args.model)
    if args.scheme == "sfpt":
        K = {OscKind.QAHO: 2, OscKind.QDWO: 2, OscKind.SAHO: 3, OscKind.OAHO: 4}[kind]
        series = sfpt_coefficients(K, args.n, args.order)
    else:
        series = mfpt_series(OscillatorSpec(kind, float(g), args.n), args.order, g=g)
    if args.format == "json":
        text = json.dumps(series.to_json(), indent=2) + "\n"
    else:
        lines = ["p,coefficient"]
        for p, c in enumerate(series.coefficients):
            if series.exact:
                fr = Fraction(c)
                lines.append(f"{p},{fr.numerator}/{fr.denominator}")
            else:
                lines.append(f"{p},{float(c):.15g}")
        text = "\n".join(lines) + "\n"
    _emit(text, args.manifest, argv)
    return EXIT_OK


def _cmd_resum(args, argv) -> int:
    g = _parse_g(args.g)
    kind = _kind(args.model)
    spec = OscillatorSpec(kind, float(g), args.n)
    shift = well_depth_shift(spec)
    dec = _decimals(5)
    if args.method == "mot":
        series = mfpt_series(spec, args.order, g=g)
        mot = optimal_truncation(series)
        text = ("model,g,n,N0,E_MOT\n"
                f"{kind.value},{float(g)},{args.n},{mot.N0},{mot.E_mot + shift:.{dec}f}\n")
    else:
        alpha = args.alpha if args.alpha is not None else ALPHA.get(kind, 1.0)
        order = max(args.order, args.nc + 2)
        series = mfpt_series(spec, order, g=g)
        if args.rc is not None:
            rc = args.rc
        else:
            long_series = series if series.order >= 42 else mfpt_series(spec, 46, g=g)
            rc = estimate_singularity(borel_coefficients(long_series, alpha)).r_c
        out = borel_sum(series, alpha, rc, args.nc, args.eps)
        text = ("model,g,n,alpha,r_c,N_c,delta_E,E_tot\n"
                f"{kind.value},{float(g)},{args.n},{alpha},{rc:.4f},{args.nc},"
                f"{out.delta_E:.{dec}f},{out.E_tot + shift:.{dec}f}\n")
    _emit(text, args.manifest, argv)
    return EXIT_OK


def _cmd_tables(args, argv) -> int:
    table = get_table(args.chapter, args.table, with_oracle=not args.no_oracle)
    _emit(render_csv(table), args.manifest, argv)
    return EXIT_OK


def _cmd_phi4(args, argv) -> int:
    if args.eta is not None:
        params = Phi4Params(m_R=args.mr, eta=args.eta)
    elif args.gr is not None:
        params = Phi4Params.from_g_R(args.mr, args.gr)
    else:
        raise DomainError("supply --eta or --gr")
    dec = _decimals(6)
    lines = ["sigma,t,U0_rel"]
    requested_top = args.sigma_max
    bound = math.sqrt(max(sigma_domain(params), 0.0))
    rows = scan_sigma(params, grid=args.sigma_grid, sigma_max=requested_top)
    for s, t, u in rows:
        lines.append(f"{s:.{dec}f},{t:.{dec}f},{u:.{dec}g}")
    if requested_top is not None and requested_top > bound:
        lines.append(f"# truncated at sigma_min={bound:.{dec}f} (gap equation unsolvable beyond)")
    text = "\n".join(lines) + "\n"
    if args.rho_k:
        ks = [5.0 * params.m_R * i / (args.sigma_grid - 1) for i in range(args.sigma_grid)]
        text += "k,rho\n"
        text += "".join(f"{k:.{dec}f},{condensate_ratio(k, params.m_R):.{dec}f}\n" for k in ks)
    _emit(text, args.manifest, argv)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="ngas",
        description="Self-consistent oscillator spectra, mean-field perturbation "
                    "series, and their resummation.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("spectrum", help="leading-order (and 2nd-order) level energies")
    sp.add_argument("model", help="QAHO|QDWO|SAHO|OAHO|SHO (AHO/DWO aliases for square-well)")
    sp.add_argument("g", help="coupling (exact rationals accepted: 0.1, 8/15)")
    sp.add_argument("n", nargs="+", type=int, help="level indices")
    sp.add_argument("--method", choices=("harmonic", "squarewell"), default="harmonic")
    sp.add_argument("--format", choices=("csv", "json"), default="csv")
    sp.add_argument("--no-oracle", action="store_true", help="skip the diagonalization column")
    sp.add_argument("--manifest", help="write a JSON run manifest here")
    sp.set_defaults(func=_cmd_spectrum)

    cp = sub.add_parser("coeffs", help="perturbation-series coefficients")
    cp.add_argument("model", help="QAHO|QDWO|SAHO|OAHO")
    cp.add_argument("g", help="coupling")
    cp.add_argument("n", type=int, help="level index")
    cp.add_argument("--order", type=int, default=5)
    cp.add_argument("--scheme", choices=("sfpt", "mfpt"), default="mfpt")
    cp.add_argument("--format", choices=("csv", "json"), default="csv")
    cp.add_argument("--manifest", help="write a JSON run manifest here")
    cp.set_defaults(func=_cmd_coeffs)

    rp = sub.add_parser("resum", help="total correction by truncation or Borel-Laplace sum")
    rp.add_argument("model", help="QAHO|QDWO|SAHO")
    rp.add_argument("g", help="coupling")
    rp.add_argument("n", type=int, help="level index")
    rp.add_argument("--method", choices=("mot", "borel"), default="mot")
    rp.add_argument("--order", type=int, default=12)
    rp.add_argument("--alpha", type=float, default=None, help="growth index (default per model)")
    rp.add_argument("--nc", type=int, default=12, help="terms kept in the mapped series")
    rp.add_argument("--rc", type=float, default=None, help="singularity distance override")
    rp.add_argument("--eps", type=float, default=1e-3, help="upper-limit cutoff 1-eps")
    rp.add_argument("--manifest", help="write a JSON run manifest here")
    rp.set_defaults(func=_cmd_resum)

    tp = sub.add_parser("tables", help="regenerate a benchmark table as CSV")
    tp.add_argument("--chapter", type=int, required=True, choices=(3, 5))
    tp.add_argument("--table", type=int, required=True, choices=(1, 2, 3))
    tp.add_argument("--no-oracle", action="store_true")
    tp.add_argument("--manifest", help="write a JSON run manifest here")
    tp.set_defaults(func=_cmd_tables)

    pp = sub.add_parser("phi4", help="renormalized scalar-vacuum scan")
    pp.add_argument("--mr", type=float, default=1.0, help="renormalized mass")
    pp.add_argument("--eta", type=float, default=None, help="-4 pi^2 / g_R")
    pp.add_argument("--gr", type=float, default=None, help="renormalized coupling (negative branch)")
    pp.add_argument("--sigma-grid", type=int, default=100)
    pp.add_argument("--sigma-max", type=float, default=None)
    pp.add_argument("--rho-k", action="store_true", help="append the condensate momentum profile")
    pp.add_argument("--manifest", help="write a JSON run manifest here")
    pp.set_defaults(func=_cmd_phi4)
    return ap


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, argv)
    except (DomainError, PhaseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (ConvergenceError, EstimationError) as exc:
        print(f"convergence error: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE


if __name__ == "__main__":
    sys.exit(main())
