"""Polynomials over E as coefficient lists, low degree first."""

from __future__ import annotations

from typing import Sequence


def trim(a: Sequence[int]) -> list[int]:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def degree(a: Sequence[int]) -> int:
    """Degree, with -1 for the zero polynomial."""
    return len(trim(a)) - 1


def add(fld, a, b):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return trim(fld.add(x, y) for x, y in zip(a, b))


def scale(fld, c, a):
    return trim(fld.mul(c, x) for x in a)


def mul(fld, a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = fld.add(out[i + j], fld.mul(x, y))
    return trim(out)


def evaluate(fld, a, x):
    acc = 0
    for c in reversed(a):
        acc = fld.add(fld.mul(acc, x), c)
    return acc


def compose(fld, a, b):
    """a(b(x)) by Horner."""
    out = []
    for c in reversed(a):
        out = add(fld, mul(fld, out, b), [c])
    return out


def divide_linear(fld, a, root):
    """Synthetic division of a by (x - root).  Returns (quotient, remainder)."""
    a = trim(a)
    if not a:
        return [], 0
    quot = [0] * (len(a) - 1)
    acc = 0
    for i in range(len(a) - 1, -1, -1):
        acc = fld.add(fld.mul(acc, root), a[i])
        if i > 0:
            quot[i - 1] = acc
    return trim(quot), acc


def shift(fld, a, c):
    """a(x + c)."""
    return compose(fld, a, trim([c, 1]))


def from_roots(fld, roots):
    out = [1]
    for r in roots:
        out = mul(fld, out, [fld.neg(r), 1])
    return out
