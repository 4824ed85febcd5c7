"""F-linear subspaces of E in canonical (RREF) form, plus enumeration helpers."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from . import linalg
from .gf import Field, SubfieldBasis, rank_of


@dataclass(frozen=True)
class Subspace:
    """An F-subspace of E.

    ``rows`` is the RREF of the default-basis coordinates of a spanning set, so
    two Subspace objects are equal exactly when the sets are equal.
    """

    field: Field
    rows: tuple[tuple[int, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.rows)

    def basis(self) -> tuple[int, ...]:
        return tuple(self.field.from_coords(r) for r in self.rows)

    def elements(self) -> Iterator[int]:
        fld = self.field
        basis = self.basis()
        for coeffs in itertools.product(fld.subfield_elements(), repeat=len(basis)):
            yield fld.scale_sum(coeffs, basis)

    def __contains__(self, a: int) -> bool:
        fld = self.field
        return linalg.rank(fld, list(self.rows) + [fld.coords(a)]) == self.dim

    def __len__(self) -> int:
        return self.field.q ** self.dim

    def sort_key(self) -> int:
        return matrix_key(self.field, self.rows)

    def to_rows(self) -> list[list[int]]:
        """Serialization: the RREF matrix as digit rows (subfield indices)."""
        return [[self.field.subfield_index(x) for x in r] for r in self.rows]

    @classmethod
    def from_rows(cls, fld: Field, rows) -> "Subspace":
        sub = fld.subfield_elements()
        mat = [tuple(sub[x] for x in r) for r in rows]
        red, _ = linalg.rref(fld, mat, fld.ell)
        if len(red) != len(mat) or tuple(red) != tuple(mat):
            raise ValueError("rows are not a canonical RREF matrix")
        return cls(fld, tuple(red))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, basis={list(self.basis())})"


def matrix_key(fld: Field, rows: Sequence[Sequence[int]]) -> int:
    """The matrix read row-major as a base-q integer."""
    q = fld.q
    key = 0
    for r in rows:
        for x in r:
            key = key * q + fld.subfield_index(x)
    return key


def span(fld: Field, gens: Iterable[int] = ()) -> Subspace:
    rows = [fld.coords(a) for a in gens]
    red, _ = linalg.rref(fld, rows, fld.ell) if rows else ([], [])
    return Subspace(fld, tuple(red))


def whole(fld: Field) -> Subspace:
    return span(fld, fld.default_elems)


def zero(fld: Field) -> Subspace:
    return Subspace(fld, ())


def scale(S: Subspace, rho: int) -> Subspace:
    if rho == 0:
        raise ValueError("cannot scale a subspace by zero")
    fld = S.field
    return span(fld, [fld.mul(rho, b) for b in S.basis()])


def kernel_quotient(fld: Field, gamma: int) -> Subspace:
    """K/gamma = {a : Tr(gamma a) = 0}."""
    if gamma == 0:
        raise ValueError("gamma must be nonzero")
    # Tr(gamma a) = sum_i a_i Tr(gamma x^i) in default coordinates
    w = [fld.trace(fld.mul(gamma, b)) for b in fld.default_elems]
    gens = linalg.nullspace(fld, [w], fld.ell)
    return span(fld, [fld.from_coords(v) for v in gens])


def _annihilator(S: Subspace) -> list[tuple[int, ...]]:
    return linalg.nullspace(S.field, list(S.rows), S.field.ell)


def intersect(subspaces: Sequence[Subspace]) -> Subspace:
    subspaces = list(subspaces)
    if not subspaces:
        raise ValueError("intersect needs at least one subspace")
    fld = subspaces[0].field
    if any(S.field != fld for S in subspaces):
        raise ValueError("subspaces live in different fields")
    if len(subspaces) == 1:
        return subspaces[0]
    ann = [v for S in subspaces for v in _annihilator(S)]
    gens = linalg.nullspace(fld, ann, fld.ell)
    return span(fld, [fld.from_coords(v) for v in gens])


def sum_of(subspaces: Sequence[Subspace]) -> Subspace:
    fld = subspaces[0].field
    return span(fld, [b for S in subspaces for b in S.basis()])


def gaussian_binomial(n: int, k: int, q: int) -> int:
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def enumerate_rref(fld: Field, nrows: int, ncols: int) -> list[tuple[tuple[int, ...], ...]]:
    """Every nrows x ncols RREF matrix of full row rank over F.

    Sorted ascending by `matrix_key`, which makes the list index a stable
    handle for splitting work.
    """
    if not 0 <= nrows <= ncols:
        raise ValueError(f"need 0 <= rows <= cols, got {nrows}, {ncols}")
    sub = fld.subfield_elements()
    out = []
    for pivots in itertools.combinations(range(ncols), nrows):
        free = [(i, c) for i, pc in enumerate(pivots) for c in range(pc + 1, ncols) if c not in pivots]
        for vals in itertools.product(sub, repeat=len(free)):
            m = [[0] * ncols for _ in range(nrows)]
            for i, pc in enumerate(pivots):
                m[i][pc] = 1
            for (i, c), v in zip(free, vals):
                m[i][c] = v
            out.append(tuple(tuple(r) for r in m))
    out.sort(key=lambda m: matrix_key(fld, m))
    return out


def enumerate_subspaces(fld: Field, dim: int) -> Iterator[Subspace]:
    if not 0 <= dim <= fld.ell:
        raise ValueError(f"dimension {dim} out of range 0..{fld.ell}")
    for rows in enumerate_rref(fld, dim, fld.ell):
        yield Subspace(fld, rows)


def basis_shift(fld: Field, A: Sequence[int], B: SubfieldBasis | Sequence[int]):
    """Least nonzero gamma with (a_i + gamma b_i) an F-basis; returns (gamma, shifted)."""
    b = B.elems if isinstance(B, SubfieldBasis) else tuple(B)
    if len(A) != len(b) or len(b) != fld.ell:
        raise ValueError("A and B must both have ell elements")
    for gamma in fld.nonzero():
        shifted = tuple(fld.add(a, fld.mul(gamma, bi)) for a, bi in zip(A, b))
        if rank_of(fld, shifted) == fld.ell:
            return gamma, shifted
    raise ValueError("no shift found; B is not a basis")
