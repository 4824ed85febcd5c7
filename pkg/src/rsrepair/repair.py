"""Trace repair schemes: validation, exact bandwidth / disk-read accounting, execution.

Positions (nodes) are 1-based, as are sub-symbol read positions in reports.
"""

from __future__ import annotations

import csv
import io
import json
from collections import Counter, defaultdict
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import Callable, Mapping, Sequence

import networkx as nx

from . import linalg, poly
from .codes import ErasedCodeword, LinearCode, RsCode
from .gf import SubfieldBasis, default_basis, dual_basis, rank_of, w_vector
from .subspaces import Subspace, gaussian_binomial, scale, span


class SchemeError(ValueError):
    def __init__(self, msg, index=None, rank=None):
        super().__init__(msg)
        self.index = index
        self.rank = rank


@dataclass(frozen=True, eq=False)
class RepairScheme:
    """ell dual codewords used to repair position `jstar`.

    For RS codes `polys` holds the degree < r polynomials whose evaluations
    are `words`; schemes over generic linear codes carry only `words`.
    """

    code: RsCode | LinearCode
    jstar: int
    words: tuple[tuple[int, ...], ...]
    polys: tuple[tuple[int, ...], ...] | None = None

    @property
    def field(self):
        return self.code.field

    @property
    def n(self) -> int:
        return self.code.n

    @property
    def helpers(self) -> list[int]:
        return [j for j in range(1, self.n + 1) if j != self.jstar]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(w[j - 1] for w in self.words)

    @cached_property
    def column_spaces(self) -> dict[int, Subspace]:
        return {j: span(self.field, self.column(j)) for j in range(1, self.n + 1)}

    @cached_property
    def shipped(self) -> dict[int, tuple[int, ...]]:
        """Per node, indices i of the first F-independent subset of {g_i(alpha_j)}."""
        fld = self.field
        out = {}
        for j in range(1, self.n + 1):
            rows, idx = [], []
            for i, g in enumerate(self.column(j)):
                cand = rows + [fld.coords(g)]
                if linalg.rank(fld, cand) == len(cand):
                    rows, idx = cand, idx + [i]
            out[j] = tuple(idx)
        return out


def _check_dual(code, words):
    fld = code.field
    gen = code.generator()
    for i, w in enumerate(words):
        for row in gen:
            if fld.scale_sum(row, w):
                raise SchemeError(f"word {i + 1} is not a dual codeword", index=i + 1)


def _check_rank(code, jstar, words):
    fld = code.field
    vals = [w[jstar - 1] for w in words]
    r = rank_of(fld, vals)
    if r < fld.ell:
        raise SchemeError(f"values at position {jstar} have F-rank {r} < {fld.ell}", rank=r)


def scheme_new(code: RsCode, jstar: int, polys: Sequence[Sequence[int]]) -> RepairScheme:
    fld = code.field
    if not 1 <= jstar <= code.n:
        raise SchemeError(f"position {jstar} out of range 1..{code.n}")
    if len(polys) != fld.ell:
        raise SchemeError(f"need {fld.ell} polynomials, got {len(polys)}")
    polys = tuple(tuple(poly.trim(g)) for g in polys)
    words = tuple(tuple(poly.evaluate(fld, g, a) for a in code.eval_points) for g in polys)
    _check_dual(code, words)
    _check_rank(code, jstar, words)
    return RepairScheme(code, jstar, words, polys)


def scheme_from_words(code, jstar: int, words) -> RepairScheme:
    fld = code.field
    if not 1 <= jstar <= code.n:
        raise SchemeError(f"position {jstar} out of range 1..{code.n}")
    words = tuple(tuple(w) for w in words)
    if len(words) != fld.ell:
        raise SchemeError(f"need {fld.ell} dual codewords, got {len(words)}")
    if any(len(w) != code.n for w in words):
        raise SchemeError(f"dual codewords must have length {code.n}")
    _check_dual(code, words)
    _check_rank(code, jstar, words)
    return RepairScheme(code, jstar, words)


def column_space(scheme: RepairScheme, j: int) -> Subspace:
    return scheme.column_spaces[j]


def bandwidth(scheme: RepairScheme) -> int:
    return sum(scheme.column_spaces[j].dim for j in scheme.helpers)


# -- I/O accounting ---------------------------------------------------------------

Bases = SubfieldBasis | Mapping[int, SubfieldBasis] | None


def basis_for(scheme_or_field, bases: Bases, j: int) -> SubfieldBasis:
    if bases is None:
        fld = getattr(scheme_or_field, "field", scheme_or_field)
        return default_basis(fld)
    if isinstance(bases, SubfieldBasis):
        return bases
    return bases[j]


def read_positions(scheme: RepairScheme, j: int, basis: SubfieldBasis) -> frozenset[int]:
    """0-based sub-symbol positions helper j must read: supp of W^B over a column basis."""
    fld = scheme.field
    out = set()
    for i in scheme.shipped[j]:
        w = w_vector(fld, basis, scheme.words[i][j - 1])
        out.update(t for t, x in enumerate(w) if x)
    return frozenset(out)


@dataclass(frozen=True)
class HelperCost:
    node: int
    bandwidth: int
    reads: int
    read_positions: tuple[int, ...]


@dataclass(frozen=True)
class CostReport:
    jstar: int
    rows: tuple[HelperCost, ...]

    @property
    def total_bandwidth(self) -> int:
        return sum(r.bandwidth for r in self.rows)

    @property
    def total_reads(self) -> int:
        return sum(r.reads for r in self.rows)

    def row(self, j: int) -> HelperCost:
        return next(r for r in self.rows if r.node == j)

    def to_dict(self) -> dict:
        return {
            "jstar": self.jstar,
            "helpers": [
                {"node": r.node, "bandwidth": r.bandwidth, "reads": r.reads,
                 "read_positions": list(r.read_positions)}
                for r in self.rows
            ],
            "total_bandwidth": self.total_bandwidth,
            "total_reads": self.total_reads,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["helper", "bandwidth", "reads", "read_positions"])
        for r in self.rows:
            w.writerow([r.node, r.bandwidth, r.reads, " ".join(map(str, r.read_positions))])
        w.writerow(["total", self.total_bandwidth, self.total_reads, ""])
        return buf.getvalue()

    def to_table(self) -> str:
        lines = [f"{'j':>4}  {'bandwidth':>9}  {'reads':>5}  read_positions"]
        for r in self.rows:
            pos = "{" + ",".join(map(str, r.read_positions)) + "}"
            lines.append(f"{r.node:>4}  {r.bandwidth:>9}  {r.reads:>5}  {pos}")
        lines.append(f"{'sum':>4}  {self.total_bandwidth:>9}  {self.total_reads:>5}")
        return "\n".join(lines)


def io_cost(scheme: RepairScheme, bases: Bases = None) -> CostReport:
    """Per-helper bandwidth and disk reads under a shared basis or a per-node mapping."""
    rows = []
    for j in scheme.helpers:
        pos = read_positions(scheme, j, basis_for(scheme, bases, j))
        rows.append(HelperCost(j, scheme.column_spaces[j].dim, len(pos),
                               tuple(sorted(t + 1 for t in pos))))
    return CostReport(scheme.jstar, tuple(rows))


# -- execution ------------------------------------------------------------------------

@dataclass
class ReadLog:
    reads: dict[int, set[int]] = dc_field(default_factory=dict)
    transferred: dict[int, tuple[int, ...]] = dc_field(default_factory=dict)

    @property
    def total_reads(self) -> int:
        return sum(len(s) for s in self.reads.values())

    @property
    def total_transferred(self) -> int:
        return sum(len(t) for t in self.transferred.values())

    def matches(self, report: CostReport) -> bool:
        for r in report.rows:
            if tuple(sorted(self.reads.get(r.node, ()))) != r.read_positions:
                return False
            if len(self.transferred.get(r.node, ())) != r.bandwidth:
                return False
        return True


def helper_response(scheme: RepairScheme, j: int, read: Callable[[int], int], basis: SubfieldBasis) -> tuple[int, ...]:
    """Traces helper j ships: Tr(gamma c_j) for the chosen column basis, touching only needed sub-symbols."""
    fld = scheme.field
    out = []
    for i in scheme.shipped[j]:
        w = w_vector(fld, basis, scheme.words[i][j - 1])
        acc = 0
        for t, wt in enumerate(w):
            if wt:
                acc = fld.add(acc, fld.mul(wt, read(t)))
        out.append(acc)
    return tuple(out)


def collect(scheme: RepairScheme, responses: Mapping[int, Sequence[int]]) -> int:
    """Reassemble the erased symbol from the helpers' shipped traces."""
    fld = scheme.field
    ell = fld.ell
    rhs = [0] * ell
    for j in scheme.helpers:
        idx = scheme.shipped[j]
        if not idx:
            continue
        traces = responses[j]
        gens = [fld.coords(scheme.words[i][j - 1]) for i in idx]
        for i in range(ell):
            lam = linalg.solve_combination(fld, gens, fld.coords(scheme.words[i][j - 1]))
            rhs[i] = fld.add(rhs[i], fld.scale_sum(lam, traces))
    rhs = [fld.neg(x) for x in rhs]
    target = dual_basis(fld, scheme.column(scheme.jstar))
    return fld.scale_sum(rhs, target.dual)


def execute_repair(scheme: RepairScheme, damaged: ErasedCodeword, bases: Bases = None):
    """Run the repair on a damaged codeword; returns (recovered symbol, ReadLog)."""
    if damaged.hole != scheme.jstar:
        raise SchemeError(f"erasure at {damaged.hole} but scheme repairs {scheme.jstar}")
    from .gf import vector_rep

    fld = scheme.field
    log = ReadLog()
    responses = {}
    for j in scheme.helpers:
        basis = basis_for(scheme, bases, j)
        stored = vector_rep(fld, basis, damaged.symbol(j))
        touched = log.reads.setdefault(j, set())

        def read(t, stored=stored, touched=touched):
            touched.add(t + 1)
            return stored[t]

        responses[j] = helper_response(scheme, j, read, basis)
        log.transferred[j] = responses[j]
    return collect(scheme, responses), log


# -- structure -----------------------------------------------------------------------

@dataclass(frozen=True)
class RotationWitness:
    subspace: Subspace
    multipliers: dict[int, int]


def _require_full_length(scheme):
    if scheme.n != scheme.field.size:
        raise ValueError("rotationality is defined for full-length codes only (n = |E|)")


def is_rotational(scheme: RepairScheme) -> RotationWitness | None:
    """Witness (S, rho) with S_j = rho_j S and {rho_j} = E*, or None."""
    _require_full_length(scheme)
    fld = scheme.field
    helpers = scheme.helpers
    S = scheme.column_spaces[helpers[0]]
    by_space = defaultdict(list)
    for rho in fld.nonzero():
        by_space[scale(S, rho)].append(rho)
    g = nx.Graph()
    top = [("h", j) for j in helpers]
    g.add_nodes_from(top)
    for j in helpers:
        cands = by_space.get(scheme.column_spaces[j])
        if not cands:
            return None
        g.add_edges_from((("h", j), ("m", rho)) for rho in cands)
    matching = nx.bipartite.hopcroft_karp_matching(g, top_nodes=top)
    mult = {j: matching[("h", j)][1] for j in helpers if ("h", j) in matching}
    if len(mult) != len(helpers):
        return None
    return RotationWitness(S, mult)


def lemma7_criterion(scheme: RepairScheme) -> bool:
    """All column spaces have dim ell-1 and each hyperplane of E occurs exactly q-1 times."""
    _require_full_length(scheme)
    fld = scheme.field
    cols = [scheme.column_spaces[j] for j in scheme.helpers]
    if any(S.dim != fld.ell - 1 for S in cols):
        return False
    counts = Counter(cols)
    return (len(counts) == gaussian_binomial(fld.ell, fld.ell - 1, fld.q)
            and all(c == fld.q - 1 for c in counts.values()))


def translate_scheme(scheme: RepairScheme) -> RepairScheme:
    """h_i(x) = g_i(x + alpha_jstar): the equivalent scheme repairing position 1 (alpha_1 = 0)."""
    code = scheme.code
    if not isinstance(code, RsCode) or not code.is_full_length or scheme.polys is None:
        raise ValueError("translation needs a full-length RS scheme given by polynomials")
    if code.eval_points[0] != 0:
        raise ValueError("translation assumes alpha_1 = 0")
    if scheme.jstar == 1:
        return scheme
    a = code.point(scheme.jstar)
    return scheme_new(code, 1, [poly.shift(scheme.field, g, a) for g in scheme.polys])
