#!/usr/bin/env python3
"""Scan the renormalized scalar-vacuum potential over its sigma domain.

    python scripts/phi4_scan.py --eta 10 --grid 200 > phi4_eta10.csv
"""

import argparse
import sys

from ngas.phi4 import Phi4Params, condensate_ratio, scan_sigma, sigma_domain


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--mr", type=float, default=1.0)
    ap.add_argument("--eta", type=float, required=True)
    ap.add_argument("--grid", type=int, default=200)
    args = ap.parse_args()

    params = Phi4Params(m_R=args.mr, eta=args.eta)
    print(f"# eta={args.eta} m_R={args.mr} sigma^2_max={sigma_domain(params):.8g}")
    print("sigma,t,U0_rel,rho_at_sigma_scale")
    for s, t, u in scan_sigma(params, grid=args.grid):
        print(f"{s:.8f},{t:.10f},{u:.10g},{condensate_ratio(s, args.mr):.8f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
