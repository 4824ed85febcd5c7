"""Scheme builders and the per-node basis machinery.

The subspace-polynomial construction (build_construction_iii) uses L_W of an m-dimensional
F-subspace W:  g_i(x) = L_W(b_i (x - a)) / (x - a),  a = alpha_jstar.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from . import poly
from .codes import RsCode
from .gf import (
    SubfieldBasis, default_basis, dual_basis, enumerate_bases, ordered_basis_count,
    rank_of, subspace_polynomial,
)
from .repair import RepairScheme, read_positions, scheme_new
from .subspaces import Subspace, span

EXACT_BASIS_BUDGET = 10 ** 6


def power_of(q: int, r: int):
    """m with q^m == r, or None."""
    m, v = 0, 1
    while v < r:
        v *= q
        m += 1
    return m if v == r else None


def default_w(fld, m: int) -> Subspace:
    return span(fld, fld.default_elems[:m])


def build_construction_iii(code: RsCode, W: Subspace | None = None,
                           basis: SubfieldBasis | None = None, jstar: int = 1) -> RepairScheme:
    fld = code.field
    if not code.is_full_length:
        raise ValueError("the subspace-polynomial construction targets full-length RS codes")
    m = power_of(fld.q, code.r)
    if m is None or not 1 <= m < fld.ell:
        raise ValueError(f"r = {code.r} must be q^m with 1 <= m < ell (q={fld.q}, ell={fld.ell})")
    if W is None:
        W = default_w(fld, m)
    if W.dim != m:
        raise ValueError(f"W has dimension {W.dim}, expected m = {m}")
    if basis is None:
        basis = default_basis(fld)
    L = subspace_polynomial(fld, W)
    a = code.point(jstar)
    polys = []
    for b in basis.elems:
        inner = [fld.neg(fld.mul(b, a)), b]  # b (x - a)
        num = poly.compose(fld, L, inner)
        quot, rem = poly.divide_linear(fld, num, a)
        assert rem == 0
        polys.append(quot)
    return scheme_new(code, jstar, polys)


def build_naive(code, jstar: int, helpers=None) -> RepairScheme:
    """Conventional repair from k helpers downloading whole symbols.

    g_i = b_i * prod_{j not in helpers, j != jstar} (x - alpha_j), which vanishes
    at every non-helper and has degree n - 1 - k = r - 1.
    """
    fld = code.field
    if helpers is None:
        helpers = [j for j in range(1, code.n + 1) if j != jstar][: code.k]
    helpers = sorted(helpers)
    if len(helpers) != code.k or jstar in helpers:
        raise ValueError(f"naive repair needs exactly k={code.k} helpers other than {jstar}")
    silent = [code.point(j) for j in range(1, code.n + 1) if j != jstar and j not in helpers]
    base = poly.from_roots(fld, silent)
    return scheme_new(code, jstar, [poly.scale(fld, b, base) for b in fld.default_elems])


def optimal_local_basis(scheme: RepairScheme, j: int) -> SubfieldBasis:
    """Basis under which helper j reads exactly dim(S_j) sub-symbols.

    Extend the canonical basis of the column space greedily by the least
    elements that raise the rank, then take the dual.  A full column space
    therefore yields the dual of the default basis.
    """
    fld = scheme.field
    gammas = list(scheme.column_spaces[j].basis())
    for a in fld.nonzero():
        if len(gammas) == fld.ell:
            break
        if rank_of(fld, gammas + [a]) == len(gammas) + 1:
            gammas.append(a)
    return dual_basis(fld, gammas).dual_basis()


@dataclass(frozen=True)
class SchemeCollection:
    """One repair scheme per position; `schemes[j-1]` repairs node j."""

    code: RsCode
    schemes: tuple[RepairScheme, ...]
    bases: Mapping[int, SubfieldBasis] | None = None

    def __post_init__(self):
        for j, s in enumerate(self.schemes, start=1):
            if s.jstar != j:
                raise ValueError(f"scheme at slot {j} repairs {s.jstar}")
            if s.code != self.code:
                raise ValueError("all schemes must share the collection's code")

    @property
    def n(self):
        return len(self.schemes)

    def scheme(self, jstar: int) -> RepairScheme:
        return self.schemes[jstar - 1]


def build_collection_iii(code: RsCode, W: Subspace | None = None,
                         basis: SubfieldBasis | None = None) -> SchemeCollection:
    return SchemeCollection(code, tuple(build_construction_iii(code, W, basis, j)
                                        for j in range(1, code.n + 1)))


def is_symmetric(coll: SchemeCollection) -> bool:
    for a in range(1, coll.n + 1):
        for b in range(a + 1, coll.n + 1):
            if coll.scheme(a).column_spaces[b] != coll.scheme(b).column_spaces[a]:
                return False
    return True


@dataclass(frozen=True)
class AverageIO:
    value: Fraction
    per_node: tuple[int, ...]
    mode: str
    upper_bound: bool
    bases_per_node: int

    def to_dict(self):
        return {"value": str(self.value), "value_float": float(self.value), "per_node": list(self.per_node),
                "mode": self.mode, "upper_bound": self.upper_bound, "bases_per_node": self.bases_per_node}


def node_reads(coll: SchemeCollection, j: int, basis: SubfieldBasis) -> int:
    """Sub-symbols node j reads across the repairs of every other node under `basis`."""
    return sum(len(read_positions(coll.scheme(t), j, basis)) for t in range(1, coll.n + 1) if t != j)


def average_io(coll: SchemeCollection, mode: str = "exact") -> AverageIO:
    """(1/n) sum_j min_B sum_{j* != j} |supp W^B_{j->j*}|, one basis per node."""
    fld = coll.code.field
    if mode == "exact":
        count = ordered_basis_count(fld)
        if count > EXACT_BASIS_BUDGET:
            raise ValueError(f"{count} ordered bases exceed the exact budget; use mode='heuristic'")
        # supports depend only on the unordered basis, so one representative per set suffices
        cands = [dual_basis(fld, b) for b in enumerate_bases(fld)]
        assert len(cands) * math.factorial(fld.ell) == count
        per_node = tuple(min(node_reads(coll, j, B) for B in cands) for j in range(1, coll.n + 1))
        return AverageIO(Fraction(sum(per_node), coll.n), per_node, mode, False, count)
    if mode == "heuristic":
        per_node = []
        for j in range(1, coll.n + 1):
            cands = [default_basis(fld)] + [optimal_local_basis(coll.scheme(t), j)
                                            for t in range(1, coll.n + 1) if t != j]
            per_node.append(min(node_reads(coll, j, B) for B in cands))
        return AverageIO(Fraction(sum(per_node), coll.n), tuple(per_node), mode, True, coll.n)
    raise ValueError(f"unknown mode {mode!r}")
