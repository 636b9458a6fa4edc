#!/usr/bin/env python3
"""Print small tables of exact Segre and Verlinde numbers.

Usage: python scripts/number_tables.py [max_n]
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from k3mukai import (  # noqa: E402
    KClassInvariants,
    ModuliData,
    SegreParams,
    VerlindeParams,
    reduce_to_hilbert,
    segre_number,
    verlinde_number,
)


def main() -> int:
    max_n = int(sys.argv[1]) if len(sys.argv) > 1 else 6

    print("Segre numbers [z^n] V^c2 W^c1sq X^2 for rho=2, s=3, c2=2, c1sq=4")
    for n in range(0, max_n + 1):
        value = segre_number(SegreParams(rho=2, s=3, c2=2, c1sq=4, n=n))
        print(f"  n={n:>2}: {value}")

    print("\nVerlinde numbers [w^n] G^chiL F for rho=2, r=1, chi(L)=3")
    for n in range(0, max_n + 1):
        value = verlinde_number(VerlindeParams(rho=2, r=1, chiL=3, n=n))
        print(f"  n={n:>2}: {value}")

    print("\nreduction of a rank-2 moduli integrand to Hilbert-scheme data")
    m = ModuliData(rho=2, n=3, alpha=KClassInvariants(2, 4, 5, 3), Lsq=6, u=1)
    target = reduce_to_hilbert(m)
    beta = target.beta
    print("  alpha = (rank 2, c1^2 4, c1.L 5, v2 3), u = 1")
    print(f"  beta  = (rank {beta.rank}, c1^2 {beta.c1sq}, c1.L {beta.c1L}, v2 {beta.v2}),"
          f" u' = {target.u_prime}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
