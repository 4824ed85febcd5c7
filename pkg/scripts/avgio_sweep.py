"""Average I/O of subspace-polynomial collections, exact and heuristic."""

import argparse

from rsrepair import average_io, build_collection_iii, is_symmetric
from rsrepair.gf import ordered_basis_count
from rsrepair.search import SearchConfig


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--skip-exact-above", type=int, default=200,
                    help="skip exact mode when a node has more bases than this")
    args = ap.parse_args()
    for q, ell, m in [(2, 2, 1), (2, 3, 1), (2, 3, 2), (3, 2, 1), (2, 4, 1), (2, 4, 2)]:
        code = SearchConfig(q=q, ell=ell, r=q ** m).code()
        coll = build_collection_iii(code)
        line = f"q={q} ell={ell} m={m} [{code.n},{code.k}] symmetric={is_symmetric(coll)} k*ell={code.k * ell}"
        heur = average_io(coll, "heuristic")
        line += f" heuristic<={heur.value}"
        if ordered_basis_count(code.field) <= args.skip_exact_above:
            line += f" exact={average_io(coll, 'exact').value}"
        print(line)


if __name__ == "__main__":
    main()
