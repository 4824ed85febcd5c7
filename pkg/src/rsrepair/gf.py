"""Finite fields E = GF(q^ell) with a distinguished subfield F = GF(q), q = p^d.

Elements are plain ints: the polynomial representation modulo the defining
modulus, with digit i (base p) holding the coefficient of x^i.  Subfield
elements are elements of E fixed by the q-power Frobenius; for d == 1 they are
exactly the ints 0..p-1.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Sequence

from . import linalg

MAX_FIELD_SIZE = 1 << 20


class FieldError(ValueError):
    """Invalid field parameters (non-prime p, reducible modulus, ...)."""


class RankError(ValueError):
    """A tuple of elements that was required to be F-independent is not."""

    def __init__(self, msg, rank, index=None):
        super().__init__(msg)
        self.rank = rank
        self.index = index


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


# -- polynomials over GF(p), digit lists low-to-high ---------------------------

def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _polymod_p(a, b, p):
    a = _trim(a)
    b = _trim(b)
    inv_lead = pow(b[-1], p - 2, p)
    while len(a) >= len(b):
        c = (a[-1] * inv_lead) % p
        shift = len(a) - len(b)
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        a = _trim(a)
    return a


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    deg = len(_trim(modulus)) - 1
    if deg < 1:
        return False
    for dd in range(1, deg // 2 + 1):
        for tail in itertools.product(range(p), repeat=dd):
            if not _polymod_p(modulus, list(tail) + [1], p):
                return False
    return True


def least_irreducible(p: int, degree: int) -> list[int]:
    """Smallest monic irreducible of the given degree, ordered by integer encoding."""
    for v in range(p ** degree):
        tail = [(v // p ** i) % p for i in range(degree)]
        cand = tail + [1]
        if is_irreducible(cand, p):
            return cand
    raise FieldError(f"no irreducible polynomial of degree {degree} over GF({p})")


# -- the field ------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Field:
    """E = GF(p^(d*ell)) viewed as a degree-ell extension of F = GF(p^d).

    Build with :func:`build_field`; the constructor assumes validated inputs.
    """

    p: int
    d: int
    ell: int
    modulus: tuple[int, ...]
    _tables: dict = dc_field(default_factory=dict, repr=False)

    # identity -----------------------------------------------------------------
    @property
    def key(self):
        return (self.p, self.d, self.ell, self.modulus)

    def __eq__(self, other):
        return isinstance(other, Field) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"Field(q={self.q}, ell={self.ell}, modulus={list(self.modulus)})"

    @property
    def degree(self) -> int:
        return self.d * self.ell

    @property
    def size(self) -> int:
        return self.p ** self.degree

    @property
    def q(self) -> int:
        return self.p ** self.d

    @property
    def primitive(self) -> int:
        return self._tables["exp"][1]

    # encoding -----------------------------------------------------------------
    def digits(self, a: int) -> list[int]:
        p = self.p
        return [(a // p ** i) % p for i in range(self.degree)]

    def from_digits(self, digs: Sequence[int]) -> int:
        if len(digs) > self.degree or any(not 0 <= c < self.p for c in digs):
            raise ValueError(f"bad digit array {list(digs)} for {self!r}")
        return sum(c * self.p ** i for i, c in enumerate(digs))

    def elements(self) -> range:
        return range(self.size)

    def nonzero(self) -> range:
        return range(1, self.size)

    # arithmetic ---------------------------------------------------------------
    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        t = self._tables.get("add")
        if t is not None:
            return t[a][b]
        return self._add_digits(a, b, 1)

    def sub(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        return self.add(a, self.neg(b))

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        return self._tables["neg"][a]

    def _add_digits(self, a, b, sign):
        p = self.p
        out, place = 0, 1
        while a or b:
            out += ((a % p + sign * (b % p)) % p) * place
            a //= p
            b //= p
            place *= p
        return out

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        t = self._tables
        return t["exp"][t["log"][a] + t["log"][b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        t = self._tables
        return t["exp"][(self.size - 1 - t["log"][a]) % (self.size - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("zero to a negative power")
            return 1 if e == 0 else 0
        t = self._tables
        return t["exp"][(t["log"][a] * e) % (self.size - 1)]

    def log(self, a: int) -> int:
        if a == 0:
            raise ValueError("log of zero")
        return self._tables["log"][a]

    def exp(self, e: int) -> int:
        return self._tables["exp"][e % (self.size - 1)]

    def scale_sum(self, coeffs: Iterable[int], elems: Iterable[int]) -> int:
        """sum(c_i * e_i)."""
        acc = 0
        for c, e in zip(coeffs, elems):
            if c and e:
                acc = self.add(acc, self.mul(c, e))
        return acc

    def frobenius(self, a: int, times: int = 1) -> int:
        """a -> a^(q^times)."""
        return self.pow(a, self.q ** times)

    # trace and subfield ---------------------------------------------------------
    def trace(self, a: int) -> int:
        return self._tables["trace"][a]

    def subfield_elements(self) -> tuple[int, ...]:
        return self._tables["subfield"]

    def subfield_index(self, a: int) -> int:
        """Position of a subfield element in ascending order (its base-q digit)."""
        return self._tables["subfield_index"][a]

    def in_subfield(self, a: int) -> bool:
        return a in self._tables["subfield_index"]

    # coordinates under the default basis (1, x, ..., x^(ell-1)) ----------------
    @property
    def default_elems(self) -> tuple[int, ...]:
        return tuple(self.p ** i for i in range(self.ell))

    def coords(self, a: int) -> tuple[int, ...]:
        """F-coordinates of a in the default basis."""
        return self._tables["coords"][a]

    def from_coords(self, v: Sequence[int]) -> int:
        if self.d == 1:
            return sum(c * self.p ** i for i, c in enumerate(v))
        return self.scale_sum(v, self.default_elems)

    def descriptor(self) -> dict:
        return {
            "p": self.p,
            "d": self.d,
            "ell": self.ell,
            "modulus": list(self.modulus),
            "primitive": self.digits(self.primitive),
        }


def _mul_raw(a: int, b: int, p: int, modulus: Sequence[int]) -> int:
    """Multiply two encoded elements modulo `modulus` without tables."""
    deg = len(modulus) - 1
    if p == 2:
        mod_int = sum(c << i for i, c in enumerate(modulus))
        out = 0
        while b:
            if b & 1:
                out ^= a
            b >>= 1
            a <<= 1
            if a >> deg & 1:
                a ^= mod_int
        return out
    da = [(a // p ** i) % p for i in range(deg)]
    db = [(b // p ** i) % p for i in range(deg)]
    prod = [0] * (2 * deg)
    for i, x in enumerate(da):
        if x:
            for j, y in enumerate(db):
                prod[i + j] = (prod[i + j] + x * y) % p
    rem = _polymod_p(prod, list(modulus), p)
    return sum(c * p ** i for i, c in enumerate(rem))


def _pow_raw(a, e, p, modulus):
    out = 1
    while e:
        if e & 1:
            out = _mul_raw(out, a, p, modulus)
        a = _mul_raw(a, a, p, modulus)
        e >>= 1
    return out


def _find_primitive(p, modulus, size):
    factors = _prime_factors(size - 1)
    for g in range(1, size):
        if _pow_raw(g, size - 1, p, modulus) != 1:
            continue
        if all(_pow_raw(g, (size - 1) // f, p, modulus) != 1 for f in factors):
            return g
    raise FieldError("no primitive element found; modulus is not irreducible")


def _build_tables(fld: Field) -> None:
    p, size, deg = fld.p, fld.size, fld.degree
    t = fld._tables
    g = _find_primitive(p, fld.modulus, size)

    exp = [0] * (2 * (size - 1))
    log = [0] * size
    x = 1
    for i in range(size - 1):
        exp[i] = x
        log[x] = i
        x = _mul_raw(x, g, p, fld.modulus)
    if x != 1:
        raise FieldError("primitive element check failed")
    for i in range(size - 1, 2 * (size - 1)):
        exp[i] = exp[i - (size - 1)]
    if size == 2:
        exp = [1, 1]
    t["exp"], t["log"] = exp, log

    if p != 2:
        t["neg"] = [fld._add_digits(0, a, -1) for a in range(size)]
        if size <= 729:
            t["add"] = [[fld._add_digits(a, b, 1) for b in range(size)] for a in range(size)]

    q, ell = fld.q, fld.ell

    def slow_trace(a):
        acc, y = 0, a
        for _ in range(ell):
            acc = fld.add(acc, y)
            y = fld.pow(y, q)
        return acc

    # trace is GF(p)-linear: tr[a] = tr[a - p^i] + tr[p^i], i the lowest nonzero digit
    unit_tr = [slow_trace(p ** i) for i in range(deg)]
    tr = [0] * size
    for a in range(1, size):
        i, rest = 0, a
        while rest % p == 0:
            rest //= p
            i += 1
        tr[a] = fld.add(tr[a - p ** i], unit_tr[i])
    t["trace"] = tr

    if q == 2 and size > 2:
        sub = (0, 1)
    else:
        step = (size - 1) // (q - 1)
        sub = tuple(sorted({0} | {exp[k * step] for k in range(q - 1)}))
    t["subfield"] = sub
    t["subfield_index"] = {a: i for i, a in enumerate(sub)}

    if fld.d == 1:
        t["coords"] = [tuple((a // p ** i) % p for i in range(ell)) for a in range(size)]
    else:
        base = fld.default_elems
        gram = [[tr[fld.mul(bi, bj)] for bj in base] for bi in base]
        ginv = linalg.inverse(fld, gram)
        dual = [fld.scale_sum([ginv[k][j] for k in range(ell)], base) for j in range(ell)]
        t["coords"] = [tuple(tr[fld.mul(dj, a)] for dj in dual) for a in range(size)]


@functools.lru_cache(maxsize=None)
def _cached_field(p, d, ell, modulus):
    fld = Field(p, d, ell, modulus)
    _build_tables(fld)
    return fld


def build_field(p: int, d: int = 1, ell: int = 1, modulus: Sequence[int] | None = None) -> Field:
    """Construct E = GF(p^(d*ell)) over F = GF(p^d).

    ``modulus`` is a digit list low-to-high (monic, degree d*ell).  When omitted
    the least irreducible in integer-encoding order is used, so the result is
    reproducible from (p, d, ell) alone.
    """
    if not is_prime(p):
        raise FieldError(f"p={p} is not prime")
    if d < 1 or ell < 1:
        raise FieldError(f"degrees must be positive, got d={d}, ell={ell}")
    deg = d * ell
    if p ** deg > MAX_FIELD_SIZE:
        raise FieldError(f"field of size {p}^{deg} exceeds the supported bound {MAX_FIELD_SIZE}")
    if modulus is None:
        modulus = least_irreducible(p, deg)
    modulus = [int(c) for c in modulus]
    if len(modulus) != deg + 1 or modulus[-1] != 1:
        raise FieldError(f"modulus must be monic of degree {deg}, got {modulus}")
    if any(not 0 <= c < p for c in modulus):
        raise FieldError(f"modulus digits must lie in [0, {p})")
    if not is_irreducible(modulus, p):
        raise FieldError(f"modulus {modulus} is reducible over GF({p})")
    return _cached_field(p, d, ell, tuple(modulus))


def field_from_descriptor(desc: dict) -> Field:
    fld = build_field(desc["p"], desc.get("d", 1), desc["ell"], desc["modulus"])
    if "primitive" in desc and fld.from_digits(desc["primitive"]) != fld.primitive:
        raise FieldError("descriptor primitive element does not match the deterministic choice")
    return fld


def trace(fld: Field, a: int) -> int:
    return fld.trace(a)


# -- bases ----------------------------------------------------------------------

@dataclass(frozen=True)
class SubfieldBasis:
    """An ordered F-basis of E together with its trace-dual basis."""

    field: Field
    elems: tuple[int, ...]
    dual: tuple[int, ...]

    def dual_basis(self) -> "SubfieldBasis":
        return SubfieldBasis(self.field, self.dual, self.elems)


def rank_of(fld: Field, elems: Sequence[int]) -> int:
    """F-rank of a collection of elements of E."""
    if fld.p == 2 and fld.d == 1:
        return linalg.rank_bits(elems)
    return linalg.rank(fld, [fld.coords(a) for a in elems])


def first_dependent_index(fld: Field, elems: Sequence[int]):
    """Index of the first element lying in the span of its predecessors, or None."""
    rows = []
    for i, a in enumerate(elems):
        rows.append(fld.coords(a))
        if linalg.rank(fld, rows) < len(rows):
            return i
    return None


def dual_basis(fld: Field, elems: Sequence[int]) -> SubfieldBasis:
    elems = tuple(elems)
    if len(elems) != fld.ell:
        raise RankError(f"need {fld.ell} elements, got {len(elems)}", rank=rank_of(fld, elems))
    bad = first_dependent_index(fld, elems)
    if bad is not None:
        r = rank_of(fld, elems)
        raise RankError(f"elements are F-dependent (rank {r}); index {bad} lies in the span of the earlier ones",
                        rank=r, index=bad)
    gram = [[fld.trace(fld.mul(a, b)) for b in elems] for a in elems]
    ginv = linalg.inverse(fld, gram)
    n = len(elems)
    dual = tuple(fld.scale_sum([ginv[k][j] for k in range(n)], elems) for j in range(n))
    return SubfieldBasis(fld, elems, dual)


def default_basis(fld: Field) -> SubfieldBasis:
    return dual_basis(fld, fld.default_elems)


def vector_rep(fld: Field, basis: SubfieldBasis, a: int) -> tuple[int, ...]:
    """Coordinates of a in `basis`: a = sum(v_i * basis.elems[i])."""
    return tuple(fld.trace(fld.mul(bd, a)) for bd in basis.dual)


def from_vector(fld: Field, basis: SubfieldBasis, v: Sequence[int]) -> int:
    return fld.scale_sum(v, basis.elems)


def trace_recover(fld: Field, basis: SubfieldBasis, traces: Sequence[int]) -> int:
    """Recover a from (Tr(b_1 a), ..., Tr(b_ell a))."""
    if len(traces) != fld.ell:
        raise ValueError(f"expected {fld.ell} traces, got {len(traces)}")
    return fld.scale_sum(traces, basis.dual)


def w_vector(fld: Field, basis: SubfieldBasis, gamma: int) -> tuple[int, ...]:
    """(Tr(gamma b_1), ..., Tr(gamma b_ell)); Tr(gamma a) = w . vector_rep(a)."""
    return tuple(fld.trace(fld.mul(gamma, b)) for b in basis.elems)


def support(v: Sequence[int]) -> frozenset[int]:
    return frozenset(i for i, x in enumerate(v) if x)


def enumerate_bases(fld: Field, ordered: bool = False):
    """All F-bases of E as tuples of elements (unordered sets in ascending order by default)."""
    for combo in itertools.combinations(fld.nonzero(), fld.ell):
        if rank_of(fld, combo) == fld.ell:
            if ordered:
                yield from itertools.permutations(combo)
            else:
                yield combo


def ordered_basis_count(fld: Field) -> int:
    q, ell = fld.q, fld.ell
    out = 1
    for i in range(ell):
        out *= q ** ell - q ** i
    return out


def random_basis(fld: Field, rng) -> SubfieldBasis:
    """Uniform random ordered basis by rejection; rng is a random.Random."""
    while True:
        elems = tuple(rng.randrange(1, fld.size) for _ in range(fld.ell))
        if rank_of(fld, elems) == fld.ell:
            return dual_basis(fld, elems)


# -- subspace polynomials -------------------------------------------------------

def subspace_polynomial(fld: Field, W) -> list[int]:
    """Coefficients (low-to-high) of prod_{w in W} (x - w).

    ``W`` is a Subspace or a collection of elements forming an F-subspace.
    """
    from . import poly

    if hasattr(W, "elements") and callable(W.elements):
        elems = list(W.elements())
    else:
        elems = sorted(set(W))
        _check_subspace(fld, elems)
    out = [1]
    for w in elems:
        out = poly.mul(fld, out, [fld.neg(w), 1])
    return out


def _check_subspace(fld: Field, elems: list[int]) -> None:
    s = set(elems)
    if 0 not in s:
        raise ValueError("not an F-subspace: 0 missing")
    for a in elems:
        for c in fld.subfield_elements():
            if fld.mul(c, a) not in s:
                raise ValueError("not an F-subspace: not closed under F-scaling")
        for b in elems:
            if fld.add(a, b) not in s:
                raise ValueError("not an F-subspace: not closed under addition")
