#!/usr/bin/env python3
"""Large-order behaviour of the mean-field series.

Prints coefficient magnitudes, the transformed-series singularity estimates
(r_c, p) and their drift with order, for a chosen model and coupling.

    python scripts/large_order_scan.py QAHO 1 --order 60
"""

import argparse
import sys
from fractions import Fraction

from ngas.model_core import OscillatorSpec, OscKind
from ngas.recursion import mfpt_series
from ngas.resummation import borel_coefficients, estimate_singularity
from ngas.tables import ALPHA


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("model", choices=[k.value for k in (OscKind.QAHO, OscKind.SAHO, OscKind.QDWO)])
    ap.add_argument("g")
    ap.add_argument("--order", type=int, default=60)
    ap.add_argument("--n", type=int, default=0)
    args = ap.parse_args()

    kind = OscKind[args.model]
    g = Fraction(args.g)
    spec = OscillatorSpec(kind, float(g), args.n)
    series = mfpt_series(spec, args.order, g=g)
    alpha = ALPHA[kind]
    print(f"# {kind.value} g={float(g)} n={args.n} exact={series.exact}")
    print("p,|E_p|,sign")
    for p, c in enumerate(series.coefficients):
        cf = float(c)
        print(f"{p},{abs(cf):.6e},{'+' if cf >= 0 else '-'}")
    b = borel_coefficients(series, alpha)
    for top in range(16, args.order - 1, 8):
        est = estimate_singularity(b[: top + 2], window=8)
        print(f"# order {top}: r_c={est.r_c:.6f} (spread {est.r_c_spread:.1e}) "
              f"p={est.p_exp:.4f} (spread {est.p_spread:.1e})")
    return 0


if __name__ == "__main__":
    sys.exit(main())
