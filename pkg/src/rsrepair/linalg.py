"""Gaussian elimination over a finite field given by its `add/sub/mul/inv` ops.

Matrices are lists of rows; entries are encoded field elements.  The same
routines serve F-linear algebra (entries in the subfield) and E-linear algebra
(entries anywhere in E), since F is closed under E's operations.
"""

from __future__ import annotations

from typing import Sequence


def rref(fld, rows: Sequence[Sequence[int]], ncols: int | None = None):
    """Reduced row-echelon form.  Returns (nonzero rows as tuples, pivot columns)."""
    m = [list(r) for r in rows]
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        lead = m[r][c]
        if lead != 1:
            li = fld.inv(lead)
            m[r] = [fld.mul(li, x) for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [fld.sub(x, fld.mul(f, y)) for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return [tuple(row) for row in m[:r]], pivots


def rank(fld, rows: Sequence[Sequence[int]]) -> int:
    return len(rref(fld, rows)[0])


def rank_bits(vectors: Sequence[int]) -> int:
    """Rank over GF(2) of vectors packed as int bitmasks."""
    basis = []
    for v in vectors:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
    return len(basis)


def nullspace(fld, rows: Sequence[Sequence[int]], ncols: int) -> list[tuple[int, ...]]:
    """Basis of {v : rows . v = 0}, in RREF-derived standard form."""
    red, pivots = rref(fld, rows, ncols) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    out = []
    for fcol in free:
        v = [0] * ncols
        v[fcol] = 1
        for row, pc in zip(red, pivots):
            if row[fcol]:
                v[pc] = fld.neg(row[fcol])
        out.append(tuple(v))
    return out


def inverse(fld, mat: Sequence[Sequence[int]]) -> list[list[int]]:
    n = len(mat)
    aug = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(mat)]
    red, pivots = rref(fld, aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(red) < n:
        raise ValueError("matrix is singular")
    return [list(row[n:]) for row in red]


def solve_combination(fld, gens: Sequence[Sequence[int]], target: Sequence[int]):
    """Coefficients lam with sum(lam_t * gens[t]) == target, or None if not in the span.

    `gens` must be linearly independent.
    """
    k = len(gens)
    n = len(target)
    # columns = generators; augmented with target
    aug = [[gens[t][i] for t in range(k)] + [target[i]] for i in range(n)]
    red, pivots = rref(fld, aug, k + 1)
    if k in pivots:
        return None
    lam = [0] * k
    for row, pc in zip(red, pivots):
        lam[pc] = row[k]
    return lam
