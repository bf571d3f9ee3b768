#!/usr/bin/env python3
"""Print the quantized operators and characteristic polynomials for small
ranks, together with the coefficient tables omega_i and the structural checks
(semi-classical limit, weight grading)."""

import argparse
import sys
import time

from quantumcurves import (
    char_poly,
    extract_omegas,
    higgs_field,
    is_equivariant,
    quantum_curve,
    semiclassical_limit,
)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-rank", type=int, default=5)
    args = parser.parse_args()

    for r in range(2, args.max_rank + 1):
        start = time.time()
        P = quantum_curve(r)
        scl = semiclassical_limit(P)
        cp = char_poly(higgs_field(r))
        elapsed = time.time() - start
        print(f"== rank {r}  ({elapsed:.2f}s)")
        print(f"   operator : {P.render()}")
        for i, omega in enumerate(extract_omegas(P), start=2):
            print(f"   omega_{i}  : {omega.render()}")
        print(f"   scl      : {scl.render()}")
        print(f"   char poly: {cp.render()}")
        print(f"   scl == char poly: {scl == cp}")
        print(f"   weight grading P(x, λħ; λ^l q_l) = λ^{r} P: {is_equivariant(P)}")
        if r == 4:
            print(
                "   note: the published display of the rank-4 operator carries"
                " +3ħ²q2'' - 12ħq3'; direct elimination of the first-order"
                " system gives the signs above, and the same display drops"
                " the y^2 power on the -10*q2 term of the char poly."
            )
        print()
    return 0


if __name__ == "__main__":
    sys.exit(main())
