"""Exhaustive desk-scale verification: scheme-class enumeration, optimality and
rotationality audits, Pareto fronts, and brute-force trace-kernel oracles.

A scheme class is an ell-dimensional F-subspace of the polynomials of degree
< r over E (coordinates: coefficient t, default-basis coordinate b -> index
t*ell + b).  Bandwidth, reads and rotationality depend only on the class, so
enumerating classes instead of ell-tuples loses nothing.
"""

from __future__ import annotations

import functools
import itertools
import json
import math
import random
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field

from . import linalg
from .codes import LinearCode, RsCode, is_mds
from .constructions import (
    average_io, build_collection_iii, build_construction_iii, default_w, is_symmetric, power_of,
)
from .gf import (
    Field, SubfieldBasis, build_field, default_basis, dual_basis, enumerate_bases, random_basis, rank_of,
    w_vector,
)
from .repair import (
    RepairScheme, bandwidth, io_cost, is_rotational, lemma7_criterion, scheme_from_words, scheme_new,
)
from .subspaces import enumerate_rref, gaussian_binomial, intersect, kernel_quotient, span

CLASS_BUDGET = 10 ** 6


class BudgetError(ValueError):
    pass


@dataclass(frozen=True)
class SearchConfig:
    q: int = 2
    ell: int = 2
    r: int = 2
    jstar: int = 1
    workers: int = 1

    def code(self) -> RsCode:
        p, d = _prime_power(self.q)
        fld = build_field(p, d, self.ell)
        return RsCode.full_length(fld, fld.size - self.r)


def _prime_power(q):
    for p in range(2, q + 1):
        if q % p == 0:
            d, v = 0, 1
            while v < q:
                v *= p
                d += 1
            if v != q:
                raise ValueError(f"q={q} is not a prime power")
            return p, d
    raise ValueError(f"q={q} is not a prime power")


@dataclass
class Report:
    name: str
    parameters: dict
    counts: dict = dc_field(default_factory=dict)
    violations: list = dc_field(default_factory=list)
    details: dict = dc_field(default_factory=dict)
    exploratory: bool = False
    wall_time: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {"name": self.name, "parameters": self.parameters, "counts": self.counts,
                "violations": self.violations, "details": self.details, "exploratory": self.exploratory,
                "metadata": {"wall_time": round(self.wall_time, 3)}}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, default=str)

    def to_text(self) -> str:
        lines = [f"[{self.name}] " + ", ".join(f"{k}={v}" for k, v in self.parameters.items())]
        lines += [f"  {k}: {v}" for k, v in self.counts.items()]
        lines.append(f"  violations: {len(self.violations)}" + (" (exploratory, not asserted)" if self.exploratory else ""))
        for v in self.violations[:10]:
            lines.append(f"    - {v}")
        return "\n".join(lines)


# -- scheme classes ------------------------------------------------------------------

@dataclass(frozen=True)
class SchemeClass:
    index: int
    rows: tuple[tuple[int, ...], ...]

    def polys(self, fld: Field, r: int) -> list[list[int]]:
        ell = fld.ell
        return [[fld.from_coords(row[t * ell:(t + 1) * ell]) for t in range(r)] for row in self.rows]

    def scheme(self, code: RsCode, jstar: int) -> RepairScheme:
        return scheme_new(code, jstar, self.polys(code.field, code.r))


def class_count(code: RsCode) -> int:
    fld = code.field
    return gaussian_binomial(code.r * fld.ell, fld.ell, fld.q)


def _class_matrices(code: RsCode):
    count = class_count(code)
    if count > CLASS_BUDGET:
        raise BudgetError(f"{count} scheme classes exceed the enumeration budget {CLASS_BUDGET}")
    return _rref_cached(code.field, code.r)


@functools.lru_cache(maxsize=4)
def _rref_cached(fld: Field, r: int):
    return tuple(enumerate_rref(fld, fld.ell, r * fld.ell))


class _Scanner:
    """Evaluates class invariants with table lookups (one instance per worker)."""

    def __init__(self, code: RsCode, jstar: int, bases):
        fld = self.fld = code.field
        self.ell, self.r, self.n = fld.ell, code.r, code.n
        self.jidx = jstar - 1
        size = fld.size
        self.mt = [[fld.mul(a, b) for b in range(size)] for a in range(size)] if size <= 1024 else None
        self.powers = [[fld.pow(a, t) for t in range(self.r)] for a in code.eval_points]
        self.masks = []
        for B in bases:
            self.masks.append([sum(1 << t for t, x in enumerate(w_vector(fld, B, g)) if x) for g in range(size)])
        self.gf2 = fld.p == 2 and fld.d == 1

    def _mul(self, a, b):
        return self.mt[a][b] if self.mt is not None else self.fld.mul(a, b)

    def rank(self, elems):
        if self.gf2:
            return linalg.rank_bits(elems)
        fld = self.fld
        return linalg.rank(fld, [fld.coords(a) for a in elems])

    def evaluate(self, rows):
        fld = self.fld
        ell = self.ell
        coeffs = [[fld.from_coords(row[t * ell:(t + 1) * ell]) for t in range(self.r)] for row in rows]
        add, mul = fld.add, self._mul
        cols = []
        for pw in self.powers:
            col = []
            for c in coeffs:
                acc = 0
                for ct, pt in zip(c, pw):
                    if ct and pt:
                        acc = add(acc, mul(ct, pt))
                col.append(acc)
            cols.append(col)
        return cols

    def measure(self, rows):
        """(valid, column dims of helpers, reads per basis) for one class."""
        cols = self.evaluate(rows)
        if self.rank(cols[self.jidx]) < self.ell:
            return False, None, None
        dims = []
        ios = [0] * len(self.masks)
        for j, col in enumerate(cols):
            if j == self.jidx:
                continue
            dims.append(self.rank(col))
            for b, table in enumerate(self.masks):
                m = 0
                for g in col:
                    m |= table[g]
                ios[b] += bin(m).count("1")
        return True, tuple(dims), tuple(ios)


@dataclass
class ScanResult:
    total: int = 0
    valid: int = 0
    min_bw: int | None = None
    optimal: list = dc_field(default_factory=list)  # (index, dims, ios) at min bw
    hyperplane: list = dc_field(default_factory=list)  # indices with every column of dim ell-1
    points: dict = dc_field(default_factory=dict)  # (bw, io under basis 0) -> least index

    def merge(self, other: "ScanResult") -> "ScanResult":
        out = ScanResult(self.total + other.total, self.valid + other.valid)
        mins = [m for m in (self.min_bw, other.min_bw) if m is not None]
        out.min_bw = min(mins) if mins else None
        out.optimal = sorted([o for s in (self, other) if s.min_bw == out.min_bw for o in s.optimal])
        out.hyperplane = sorted(self.hyperplane + other.hyperplane)
        out.points = dict(self.points)
        for k, v in other.points.items():
            out.points[k] = min(v, out.points.get(k, v))
        return out


def _scan_slice(args):
    desc, k, jstar, basis_elems, start, stop = args
    fld = build_field(desc["p"], desc["d"], desc["ell"], desc["modulus"])
    code = RsCode.full_length(fld, k)
    bases = [dual_basis(fld, b) for b in basis_elems]
    mats = _class_matrices(code)[start:stop]
    sc = _Scanner(code, jstar, bases)
    res = ScanResult()
    for offset, rows in enumerate(mats):
        idx = start + offset
        res.total += 1
        valid, dims, ios = sc.measure(rows)
        if not valid:
            continue
        res.valid += 1
        bw = sum(dims)
        if res.min_bw is None or bw < res.min_bw:
            res.min_bw, res.optimal = bw, []
        if bw == res.min_bw:
            res.optimal.append((idx, dims, ios))
        if all(d == fld.ell - 1 for d in dims):
            res.hyperplane.append(idx)
        key = (bw, ios[0])
        if key not in res.points:
            res.points[key] = idx
    return res


def scan_classes(code: RsCode, jstar: int = 1, bases=None, workers: int = 1) -> ScanResult:
    """Scan every class, splitting the index range into contiguous slices per worker."""
    if not code.is_full_length:
        raise ValueError("class enumeration assumes a full-length RS code")
    fld = code.field
    bases = [default_basis(fld)] if bases is None else list(bases)
    total = class_count(code)
    if total > CLASS_BUDGET:
        raise BudgetError(f"{total} scheme classes exceed the enumeration budget {CLASS_BUDGET}")
    desc = {"p": fld.p, "d": fld.d, "ell": fld.ell, "modulus": list(fld.modulus)}
    elems = [B.elems for B in bases]
    nslices = max(1, workers)
    bounds = [total * i // nslices for i in range(nslices + 1)]
    jobs = [(desc, code.k, jstar, elems, bounds[i], bounds[i + 1]) for i in range(nslices)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(_scan_slice, jobs))
    else:
        parts = [_scan_slice(j) for j in jobs]
    out = ScanResult()
    for part in parts:
        out = out.merge(part)
    return out


def enumerate_scheme_classes(code: RsCode, jstar: int = 1):
    """Yield every class whose values at alpha_jstar span E, in index order."""
    fld = code.field
    sc = _Scanner(code, jstar, [])
    for idx, rows in enumerate(_class_matrices(code)):
        cols = sc.evaluate(rows)
        if sc.rank(cols[jstar - 1]) == fld.ell:
            yield SchemeClass(idx, rows)


def get_class(code: RsCode, index: int) -> SchemeClass:
    return SchemeClass(index, _class_matrices(code)[index])


# -- verifiers ----------------------------------------------------------------------

def _timed(fn):
    def wrapper(*a, **kw):
        t0 = time.perf_counter()
        rep = fn(*a, **kw)
        rep.wall_time = time.perf_counter() - t0
        return rep
    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


@_timed
def verify_lemma10(code: RsCode, jstar: int = 1, workers: int = 1, scan: ScanResult | None = None) -> Report:
    """Every bandwidth-optimal class has all column dimensions ell - m."""
    fld = code.field
    m = power_of(fld.q, code.r)
    if m is None or not 1 <= m < fld.ell:
        raise ValueError("needs r = q^m with 1 <= m < ell")
    scan = scan or scan_classes(code, jstar, workers=workers)
    expected = (code.n - 1) * (fld.ell - m)
    rep = Report("optimal_column_dims", {"q": fld.q, "ell": fld.ell, "r": code.r, "jstar": jstar})
    rep.counts = {"classes": scan.total, "valid": scan.valid, "optimal_bandwidth": scan.min_bw,
                  "expected_bandwidth": expected, "optimal_classes": len(scan.optimal)}
    if scan.min_bw != expected:
        rep.violations.append(f"optimal bandwidth {scan.min_bw} != {expected}")
    for idx, dims, _ in scan.optimal:
        if any(d != fld.ell - m for d in dims):
            rep.violations.append(f"class {idx} has column dims {dims}")
    return rep


@_timed
def verify_theorem3(ell: int, q: int = 2, r: int = 2, jstar: int = 1, workers: int = 1,
                    per_basis: bool | None = None) -> Report:
    """Bandwidth-optimal schemes for full-length RS with q = r = 2 are rotational with I/O k*ell."""
    cfg = SearchConfig(q=q, ell=ell, r=r, jstar=jstar, workers=workers)
    code = cfg.code()
    fld = code.field
    if per_basis is None:
        per_basis = ell == 2
    bases = [default_basis(fld)]
    if per_basis:
        bases += [dual_basis(fld, b) for b in enumerate_bases(fld, ordered=True) if b != fld.default_elems]
    scan = scan_classes(code, jstar, bases, workers)
    target = code.k * fld.ell
    rep = Report("optimal_schemes_rotational", {"q": q, "ell": ell, "r": r, "jstar": jstar},
                 exploratory=(q != 2 or r != 2))
    rotational = criterion_agree = 0
    io_values = Counter()
    basis_mismatch = 0
    for idx, dims, ios in scan.optimal:
        s = get_class(code, idx).scheme(code, jstar)
        rot = is_rotational(s) is not None
        rotational += rot
        if all(d == fld.ell - 1 for d in dims):
            criterion_agree += (lemma7_criterion(s) == rot)
        else:
            criterion_agree += 1
        io_values[ios[0]] += 1
        basis_mismatch += sum(1 for v in ios[1:] if v != target)
        if not rot:
            rep.violations.append(f"class {idx} is bandwidth-optimal but not rotational")
        if ios[0] != target:
            rep.violations.append(f"class {idx} has I/O {ios[0]} != k*ell = {target}")
    rep.counts = {"classes": scan.total, "valid": scan.valid, "optimal_bandwidth": scan.min_bw,
                  "optimal_classes": len(scan.optimal), "rotational": rotational,
                  "hyperplane_criterion_agreement": criterion_agree, "kl": target,
                  "io_values": dict(sorted(io_values.items()))}
    if per_basis:
        rep.details["bases_swept"] = len(bases)
        rep.details["per_basis_io_mismatches"] = basis_mismatch
    if criterion_agree != len(scan.optimal):
        rep.violations.append("is_rotational disagrees with the hyperplane-count criterion")
    return rep


@_timed
def verify_lemma7(code: RsCode, jstar: int = 1, workers: int = 1) -> Report:
    """On schemes whose columns all have dim ell-1, rotational <=> each hyperplane occurs q-1 times."""
    fld = code.field
    scan = scan_classes(code, jstar, workers=workers)
    rep = Report("hyperplane_criterion", {"q": fld.q, "ell": fld.ell, "r": code.r, "jstar": jstar})
    agree = rot = 0
    for idx in scan.hyperplane:
        s = get_class(code, idx).scheme(code, jstar)
        a = is_rotational(s) is not None
        b = lemma7_criterion(s)
        rot += a
        if a == b:
            agree += 1
        else:
            rep.violations.append(f"class {idx}: is_rotational={a}, criterion={b}")
    rep.counts = {"hyperplane_classes": len(scan.hyperplane), "rotational": rot, "agree": agree}
    return rep


@dataclass(frozen=True)
class ParetoPoint:
    bandwidth: int
    io: int
    representative: SchemeClass


def pareto_front(code: RsCode, jstar: int = 1, basis: SubfieldBasis | None = None,
                 workers: int = 1) -> list[ParetoPoint]:
    fld = code.field
    basis = basis or default_basis(fld)
    scan = scan_classes(code, jstar, [basis], workers)
    pts = sorted(scan.points)
    front = [pt for pt in pts
             if not any(o[0] <= pt[0] and o[1] <= pt[1] and o != pt for o in pts)]
    mats = _class_matrices(code)
    return [ParetoPoint(bw, io, SchemeClass(scan.points[(bw, io)], mats[scan.points[(bw, io)]]))
            for bw, io in front]


def counterexample_code(fld: Field | None = None) -> tuple[LinearCode, list[tuple[int, ...]]]:
    """The [4,2]_4 MDS code dual to span{(1,0,1,1), (xi,1,0,1)}, and those two words."""
    fld = fld or build_field(2, 1, 2)
    xi = fld.primitive
    words = [(1, 0, 1, 1), (xi, 1, 0, 1)]
    return LinearCode.from_parity(fld, words), words


@_timed
def verify_counterexample() -> Report:
    code, words = counterexample_code()
    fld = code.field
    s = scheme_from_words(code, 1, words)
    rep = Report("counterexample", {"code": "[4,2]_4 MDS, dual spanned by (1,0,1,1),(xi,1,0,1)"})
    mds = is_mds(code)
    bw = bandwidth(s)
    rot = is_rotational(s)
    cols = {j: s.column_spaces[j].basis() for j in s.helpers}
    rep.counts = {"mds": mds, "bandwidth": bw, "rotational": rot is not None,
                  "rank_at_1": rank_of(fld, s.column(1))}
    rep.details["column_space_bases"] = cols
    if not mds:
        rep.violations.append("code is not MDS")
    if bw != 3:
        rep.violations.append(f"bandwidth {bw} != 3")
    if rot is not None:
        rep.violations.append("scheme unexpectedly rotational")
    return rep


def _independent_tuples(fld: Field, s: int):
    for tup in itertools.permutations(fld.nonzero(), s):
        if rank_of(fld, tup) == s:
            yield tup


def primitive_elements(fld: Field) -> list[int]:
    order = fld.size - 1
    return sorted(fld.exp(e) for e in range(order) if math.gcd(e, order) == 1)


@_timed
def oracle_lemma5_lemma6(fld: Field) -> Report:
    """Exhaustive: dim(cap K/gamma_t) = ell - s and sum_j b_j = q^ell - q^(ell-s)."""
    if fld.size > 64:
        raise BudgetError("oracle limited to q^ell <= 64")
    q, ell = fld.q, fld.ell
    rep = Report("kernel_intersections", {"q": q, "ell": ell})
    prims = primitive_elements(fld)
    tuples = 0
    for s in range(1, ell + 1):
        for gam in _independent_tuples(fld, s):
            tuples += 1
            dim = intersect([kernel_quotient(fld, g) for g in gam]).dim
            if dim != ell - s:
                rep.violations.append(f"intersection: {gam} gives dim {dim}")
            for xi in prims:
                total = 0
                for j in range(fld.size - 1):
                    x = fld.pow(xi, j)
                    total += any(fld.trace(fld.mul(g, x)) for g in gam)
                if total != q ** ell - q ** (ell - s):
                    rep.violations.append(f"support count: {gam}, xi={xi}: sum {total}")
    rep.counts = {"independent_tuples": tuples, "primitive_elements": len(prims)}
    return rep


@_timed
def verify_theorem1(q: int, ell: int, m: int, random_bases: int = 5, seed: int = 0) -> Report:
    """Subspace-polynomial schemes, every target, standard + random bases: I/O = ell(q^ell - q^(ell-s))."""
    code = SearchConfig(q=q, ell=ell, r=q ** m).code()
    fld = code.field
    s = ell - m
    expected = ell * (q ** ell - q ** (ell - s))
    rng = random.Random(seed)
    bases = [default_basis(fld)] + [random_basis(fld, rng) for _ in range(random_bases)]
    rep = Report("rotational_io", {"q": q, "ell": ell, "m": m, "random_bases": random_bases, "seed": seed})
    checked = 0
    for jstar in range(1, code.n + 1):
        sch = build_construction_iii(code, jstar=jstar)
        wit = is_rotational(sch)
        if wit is None or wit.subspace.dim != s:
            rep.violations.append(f"jstar={jstar}: not rotational with column-dimension {s}")
        for B in bases:
            checked += 1
            got = io_cost(sch, B).total_reads
            if got != expected:
                rep.violations.append(f"jstar={jstar}, basis {B.elems}: I/O {got} != {expected}")
    rep.counts = {"schemes": code.n, "basis_checks": checked, "expected_io": expected, "kl": code.k * ell}
    return rep


@_timed
def verify_theorem2(q: int, ell: int, m: int, mode: str = "exact") -> Report:
    """Subspace-polynomial collection: symmetric, rotational, average I/O k*ell."""
    code = SearchConfig(q=q, ell=ell, r=q ** m).code()
    coll = build_collection_iii(code, default_w(code.field, m))
    rep = Report("collection_average_io", {"q": q, "ell": ell, "m": m, "mode": mode})
    sym = is_symmetric(coll)
    rot = sum(1 for s in coll.schemes if is_rotational(s) is not None)
    avg = average_io(coll, mode)
    target = code.k * ell
    rep.counts = {"symmetric": sym, "rotational_members": rot, "average_io": str(avg.value),
                  "bases_per_node": avg.bases_per_node, "kl": target}
    if not sym:
        rep.violations.append("collection is not symmetric")
    if rot != coll.n:
        rep.violations.append(f"only {rot}/{coll.n} members rotational")
    if avg.value != target:
        rep.violations.append(f"average I/O {avg.value} != {target}")
    return rep
