"""Exact (bandwidth, I/O) Pareto fronts under the standard basis.

q = 3 runs are exploratory: the data is printed, nothing is asserted.
"""

import argparse

from rsrepair.search import SearchConfig, pareto_front


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()
    for q, ell, r in [(2, 2, 2), (2, 3, 2), (3, 2, 3), (3, 2, 2), (2, 3, 1)]:
        code = SearchConfig(q=q, ell=ell, r=r).code()
        front = pareto_front(code, workers=args.workers)
        pts = ", ".join(f"({p.bandwidth},{p.io})" for p in front)
        print(f"q={q} ell={ell} r={r} [{code.n},{code.k}]: {pts}  k*ell={code.k * ell}")


if __name__ == "__main__":
    main()
