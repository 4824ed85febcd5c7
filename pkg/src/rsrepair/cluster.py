"""A toy storage cluster: n nodes, each storing its symbol as ell sub-symbols on a
disk that counts every sub-symbol read.  Repairs run the trace framework against
these disks and are checked against the analytic cost report.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Mapping

from .codes import rs_encode
from .gf import SubfieldBasis, default_basis, from_vector, vector_rep
from .repair import RepairScheme, collect, helper_response, io_cost


@dataclass
class Disk:
    subsymbols: list[int] | None
    reads: set[int] = dc_field(default_factory=set)

    def read(self, t: int) -> int:
        if self.subsymbols is None:
            raise LookupError("disk has failed")
        self.reads.add(t)
        return self.subsymbols[t]


class Cluster:
    def __init__(self, code, codeword, bases: Mapping[int, SubfieldBasis] | None = None):
        fld = code.field
        self.code = code
        self.bases = dict(bases) if bases else {j: default_basis(fld) for j in range(1, code.n + 1)}
        if len(codeword) != code.n or not code.contains(codeword):
            raise ValueError("initial contents are not a codeword")
        self.disks = {j: Disk(list(vector_rep(fld, self.bases[j], codeword[j - 1])))
                      for j in range(1, code.n + 1)}

    @classmethod
    def random(cls, code, rng, bases=None) -> "Cluster":
        fld = code.field
        gen = code.generator()
        coeffs = [rng.randrange(fld.size) for _ in gen]
        cw = tuple(fld.scale_sum(coeffs, col) for col in zip(*gen)) if gen else (0,) * code.n
        return cls(code, cw, bases)

    @classmethod
    def from_message(cls, code, message, bases=None) -> "Cluster":
        return cls(code, rs_encode(code, message), bases)

    def symbol(self, j: int) -> int:
        d = self.disks[j]
        if d.subsymbols is None:
            raise LookupError(f"node {j} has failed")
        return from_vector(self.code.field, self.bases[j], d.subsymbols)

    def codeword(self) -> tuple:
        return tuple(self.symbol(j) for j in range(1, self.code.n + 1))

    def consistent(self) -> bool:
        try:
            return self.code.contains(self.codeword())
        except LookupError:
            return False

    def fail(self, j: int) -> None:
        self.disks[j].subsymbols = None

    def install(self, j: int, value: int) -> None:
        self.disks[j] = Disk(list(vector_rep(self.code.field, self.bases[j], value)))

    def reset_counters(self) -> None:
        for d in self.disks.values():
            d.reads.clear()


@dataclass(frozen=True)
class HelperTranscript:
    node: int
    read_positions: tuple[int, ...]
    transferred: int


@dataclass(frozen=True)
class RepairTranscript:
    failed: int
    helpers: tuple[HelperTranscript, ...]
    recovered: int
    success: bool

    @property
    def total_read(self) -> int:
        return sum(len(h.read_positions) for h in self.helpers)

    @property
    def total_transferred(self) -> int:
        return sum(h.transferred for h in self.helpers)

    def to_dict(self) -> dict:
        return {"failed": self.failed, "recovered": self.recovered, "success": self.success,
                "total_read": self.total_read, "total_transferred": self.total_transferred,
                "helpers": [{"node": h.node, "read_positions": list(h.read_positions),
                             "transferred": h.transferred} for h in self.helpers]}

    def summary(self) -> str:
        return (f"node {self.failed}: transferred {self.total_transferred}, read {self.total_read}, "
                f"{'ok' if self.success else 'FAILED'}")


def simulate_repair(cluster: Cluster, scheme: RepairScheme, jstar: int) -> RepairTranscript:
    """Fail node jstar, repair it from the helpers' disks, reinstall the symbol."""
    if scheme.jstar != jstar:
        raise ValueError(f"scheme repairs node {scheme.jstar}, not {jstar}")
    if scheme.field != cluster.code.field or scheme.n != cluster.code.n:
        raise ValueError("scheme and cluster use different fields or lengths")
    original = cluster.symbol(jstar)
    cluster.reset_counters()
    cluster.fail(jstar)
    responses = {}
    for j in scheme.helpers:
        if scheme.shipped[j]:
            responses[j] = helper_response(scheme, j, cluster.disks[j].read, cluster.bases[j])
    value = collect(scheme, responses)
    cluster.install(jstar, value)

    helpers = tuple(HelperTranscript(j, tuple(sorted(t + 1 for t in cluster.disks[j].reads)),
                                     len(responses.get(j, ())))
                    for j in scheme.helpers)
    report = io_cost(scheme, cluster.bases)
    for h in helpers:
        row = report.row(h.node)
        if h.read_positions != row.read_positions or h.transferred != row.bandwidth:
            raise RuntimeError(f"node {h.node}: transcript disagrees with the analytic cost report")
    return RepairTranscript(jstar, helpers, value, value == original and cluster.consistent())
