#!/usr/bin/env python3
"""Print the Segre-Verlinde correspondence check over a parameter grid.

Usage: python scripts/correspondence_table.py [max_rho] [max_abs_r] [order]
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from k3mukai import check_correspondence  # noqa: E402


def main() -> int:
    max_rho = int(sys.argv[1]) if len(sys.argv) > 1 else 4
    max_r = int(sys.argv[2]) if len(sys.argv) > 2 else 3
    order = int(sys.argv[3]) if len(sys.argv) > 3 else 12

    print(f"exact Segre-Verlinde comparison to order {order}")
    print(f"{'rho':>4} {'r':>4} {'s':>4} {'G-identity':>11} {'F-identity':>11}")
    failures = 0
    for rho in range(1, max_rho + 1):
        for r in range(-max_r, max_r + 1):
            report = check_correspondence(rho, r, order)
            g = "holds" if report.g_identity_holds else f"fails@{report.first_discrepant_order}"
            f = "holds" if report.f_identity_holds else f"fails@{report.first_discrepant_order}"
            print(f"{rho:>4} {r:>4} {rho + r:>4} {g:>11} {f:>11}")
            if not (report.g_identity_holds and report.f_identity_holds):
                failures += 1
    print(f"\n{failures} failures out of {max_rho * (2 * max_r + 1)} parameter points")
    return 0 if failures == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
