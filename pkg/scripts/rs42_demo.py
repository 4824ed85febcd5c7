"""Repair of node 3 in the [4,2] full-length RS code over GF(4).

Compares the bandwidth-optimal subspace-polynomial scheme with naive repair
from two whole symbols, then runs both on a simulated cluster.
"""

import argparse
import random

from rsrepair import RsCode, build_construction_iii, build_field, build_naive, io_cost
from rsrepair.cluster import Cluster, simulate_repair
from rsrepair.constructions import optimal_local_basis


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--jstar", type=int, default=3)
    args = ap.parse_args()

    fld = build_field(2, 1, 2)
    code = RsCode.full_length(fld, 2)
    print(f"code: [{code.n},{code.k}] over GF(4), points {list(code.eval_points)}")
    rng = random.Random(args.seed)
    for name, scheme in [("optimal", build_construction_iii(code, jstar=args.jstar)),
                         ("naive", build_naive(code, args.jstar))]:
        print(f"\n{name} scheme, standard basis")
        print(io_cost(scheme).to_table())
        t = simulate_repair(Cluster.random(code, rng), scheme, args.jstar)
        print(t.summary())
        if name == "optimal":
            bases = {j: optimal_local_basis(scheme, j) for j in scheme.helpers}
            bases[args.jstar] = optimal_local_basis(scheme, args.jstar)
            print("\nsame scheme, each helper on its own best basis")
            print(io_cost(scheme, bases).to_table())


if __name__ == "__main__":
    main()
