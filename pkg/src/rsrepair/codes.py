"""Reed-Solomon and generic linear codes over E, duals, and single erasures."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from . import linalg, poly
from .gf import Field

MAX_CODEWORDS = 1 << 20

Codeword = tuple  # length-n tuple of encoded field elements


class CodeTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class RsCode:
    """RS(A, k): evaluations of polynomials of degree < k at the points A."""

    field: Field
    eval_points: tuple[int, ...]
    k: int

    def __post_init__(self):
        pts = self.eval_points
        if len(set(pts)) != len(pts):
            raise ValueError("evaluation points must be distinct")
        if any(not 0 <= a < self.field.size for a in pts):
            raise ValueError("evaluation point outside the field")
        if not 0 <= self.k <= len(pts):
            raise ValueError(f"need 0 <= k <= n, got k={self.k}, n={len(pts)}")

    @classmethod
    def full_length(cls, fld: Field, k: int) -> "RsCode":
        """Points ordered 0, 1, xi, xi^2, ..., xi^(|E|-2)."""
        pts = (0,) + tuple(fld.exp(i) for i in range(fld.size - 1))
        return cls(fld, pts, k)

    @property
    def n(self) -> int:
        return len(self.eval_points)

    @property
    def r(self) -> int:
        return self.n - self.k

    @property
    def is_full_length(self) -> bool:
        return self.n == self.field.size

    def point(self, j: int) -> int:
        """Evaluation point of 1-based position j."""
        return self.eval_points[j - 1]

    def position_of(self, a: int) -> int:
        return self.eval_points.index(a) + 1

    def generator(self) -> list[tuple[int, ...]]:
        fld = self.field
        return [tuple(fld.pow(a, t) for a in self.eval_points) for t in range(self.k)]

    def encode(self, message: Sequence[int]) -> Codeword:
        if poly.degree(message) >= self.k:
            raise ValueError(f"message degree {poly.degree(message)} is not below k={self.k}")
        return rs_encode(self, message)

    def contains(self, word: Sequence[int]) -> bool:
        return _in_span(self.field, self.generator(), word)

    def descriptor(self) -> dict:
        return {"field": self.field.descriptor(), "eval_points": list(self.eval_points), "k": self.k}


def rs_encode(code: RsCode, message: Sequence[int]) -> Codeword:
    if poly.degree(message) >= code.k:
        raise ValueError(f"message degree {poly.degree(message)} is not below k={code.k}")
    return tuple(poly.evaluate(code.field, message, a) for a in code.eval_points)


def dual_code(code: RsCode) -> RsCode:
    if not code.is_full_length:
        raise NotImplementedError("dual is only provided for full-length RS codes")
    return RsCode(code.field, code.eval_points, code.n - code.k)


@dataclass(frozen=True)
class LinearCode:
    """A linear [n, k] code over E given by an RREF generator matrix."""

    field: Field
    n: int
    gen: tuple[tuple[int, ...], ...]

    @classmethod
    def from_generator(cls, fld: Field, rows) -> "LinearCode":
        rows = [tuple(r) for r in rows]
        n = len(rows[0])
        red, _ = linalg.rref(fld, rows, n)
        if len(red) != len(rows):
            raise ValueError(f"generator rows are not full rank (rank {len(red)} < {len(rows)})")
        return cls(fld, n, tuple(red))

    @classmethod
    def from_parity(cls, fld: Field, rows) -> "LinearCode":
        """The code whose dual is spanned by `rows`."""
        rows = [tuple(r) for r in rows]
        n = len(rows[0])
        return cls.from_generator(fld, linalg.nullspace(fld, rows, n))

    @property
    def k(self) -> int:
        return len(self.gen)

    @property
    def r(self) -> int:
        return self.n - self.k

    def generator(self):
        return [list(r) for r in self.gen]

    def dual(self) -> "LinearCode":
        return LinearCode.from_generator(self.field, linalg.nullspace(self.field, self.gen, self.n))

    def contains(self, word) -> bool:
        return _in_span(self.field, self.gen, word)

    def descriptor(self) -> dict:
        fld = self.field
        return {"field": fld.descriptor(), "generator": [[fld.digits(x) for x in r] for r in self.gen]}


def _in_span(fld, gen, word) -> bool:
    gen = list(gen)
    return linalg.rank(fld, gen + [tuple(word)]) == linalg.rank(fld, gen)


def as_linear(code) -> LinearCode:
    if isinstance(code, LinearCode):
        return code
    return LinearCode.from_generator(code.field, code.generator())


def codewords(code):
    fld = code.field
    gen = code.generator()
    k = len(gen)
    if fld.size ** k > MAX_CODEWORDS:
        raise CodeTooLarge(f"{fld.size}^{k} codewords exceeds the enumeration bound {MAX_CODEWORDS}")
    for coeffs in itertools.product(fld.elements(), repeat=k):
        yield tuple(fld.scale_sum(coeffs, col) for col in zip(*gen)) if gen else (0,) * code.n


def min_distance(code) -> int:
    """Exact minimum Hamming weight of a nonzero codeword, by enumeration."""
    best = None
    for cw in codewords(code):
        w = sum(1 for x in cw if x)
        if w and (best is None or w < best):
            best = w
    if best is None:
        raise ValueError("the zero code has no minimum distance")
    return best


def is_mds(code) -> bool:
    return min_distance(code) == code.n - len(code.generator()) + 1


def inner(fld, u, v) -> int:
    return fld.scale_sum(u, v)


# -- erasures ----------------------------------------------------------------

@dataclass(frozen=True)
class ErasedCodeword:
    """A codeword with position `hole` (1-based) unavailable."""

    symbols: tuple
    hole: int

    def __post_init__(self):
        if self.symbols[self.hole - 1] is not None:
            raise ValueError("hole position must hold None")

    @property
    def n(self):
        return len(self.symbols)

    def symbol(self, j: int) -> int:
        if j == self.hole:
            raise LookupError(f"position {j} is erased")
        return self.symbols[j - 1]

    def restore(self, value: int) -> Codeword:
        s = list(self.symbols)
        s[self.hole - 1] = value
        return tuple(s)


def erase(cw, jstar: int) -> ErasedCodeword:
    if isinstance(cw, ErasedCodeword):
        if cw.hole != jstar:
            raise ValueError("only single erasures are supported")
        return cw
    if not 1 <= jstar <= len(cw):
        raise IndexError(f"position {jstar} out of range 1..{len(cw)}")
    s = list(cw)
    s[jstar - 1] = None
    return ErasedCodeword(tuple(s), jstar)
