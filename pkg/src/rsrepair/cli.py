"""rsrepair command line.

Exit codes: 0 success, 1 a verifier found violations (or a repair failed),
2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import formats
from .cluster import Cluster, simulate_repair
from .constructions import (
    SchemeCollection, average_io, build_collection_iii, build_construction_iii, build_naive, is_symmetric,
)
from .gf import FieldError, build_field, default_basis
from .repair import SchemeError, bandwidth, io_cost, is_rotational, lemma7_criterion
from .search import (
    BudgetError, SearchConfig, counterexample_code, oracle_lemma5_lemma6, pareto_front, verify_counterexample,
    verify_lemma7, verify_lemma10, verify_theorem1, verify_theorem2, verify_theorem3,
)
from .subspaces import span


class UsageError(Exception):
    pass


def _emit(text: str, out=None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _field_from_args(a):
    return build_field(a.p, a.d, a.ell, a.modulus)


def _code(q, ell, r):
    if r < 1:
        raise UsageError("r must be positive")
    return SearchConfig(q=q, ell=ell, r=r).code()


def _load_basis(source, fld):
    if source in (None, "default"):
        return default_basis(fld)
    B = formats.load(source)
    if B.field != fld:
        raise UsageError("basis file uses a different field")
    return B


# -- field ------------------------------------------------------------------------

def cmd_field(a):
    if a.action == "build":
        fld = _field_from_args(a)
        _emit(formats.dumps({"format_version": 1, "kind": "field", **fld.descriptor()}), a.out)
        return 0
    if a.field:
        fld = formats.load(a.field)
    else:
        fld = _field_from_args(a)
    lines = [f"E = GF({fld.p}^{fld.degree}) over F = GF({fld.q}), ell = {fld.ell}",
             f"modulus (low->high): {list(fld.modulus)}",
             f"primitive element: {fld.primitive} digits {fld.digits(fld.primitive)}",
             f"subfield elements: {list(fld.subfield_elements())}",
             f"default basis: {list(fld.default_elems)}"]
    if fld.size <= 64:
        lines.append(f"{'elem':>5} {'digits':>14} {'log':>4} {'trace':>5}")
        for x in fld.elements():
            lg = "-" if x == 0 else str(fld.log(x))
            lines.append(f"{x:>5} {str(fld.digits(x)):>14} {lg:>4} {fld.trace(x):>5}")
    _emit("\n".join(lines))
    return 0


# -- scheme -------------------------------------------------------------------------

def cmd_scheme_build(a):
    if a.construction == "counterexample":
        from .repair import scheme_from_words

        code, words = counterexample_code()
        _emit(formats.dumps(formats.scheme_to_dict(scheme_from_words(code, 1, words))), a.out)
        return 0
    q = a.q
    if a.construction == "iii":
        if a.m is None:
            raise UsageError("--m is required for construction iii")
        code = _code(q, a.ell, q ** a.m)
        fld = code.field
        dims = a.w_dims if a.w_dims is not None else list(range(a.m))
        if any(not 0 <= i < fld.ell for i in dims):
            raise UsageError(f"--w-dims entries must lie in 0..{fld.ell - 1}")
        W = span(fld, [fld.default_elems[i] for i in dims])
        B = _load_basis(a.basis, fld)
        if a.collection:
            doc = formats.collection_to_dict(build_collection_iii(code, W, B))
        else:
            doc = formats.scheme_to_dict(build_construction_iii(code, W, B, a.jstar))
    else:
        if a.r is None:
            raise UsageError("--r is required for the naive construction")
        code = _code(q, a.ell, a.r)
        if a.collection:
            doc = formats.collection_to_dict(SchemeCollection(
                code, tuple(build_naive(code, j) for j in range(1, code.n + 1))))
        else:
            doc = formats.scheme_to_dict(build_naive(code, a.jstar, a.helpers))
    _emit(formats.dumps(doc), a.out)
    return 0


def _format_report(report, fmt):
    if fmt == "json":
        return report.to_json()
    if fmt == "csv":
        return report.to_csv()
    return report.to_table()


def cmd_scheme_cost(a):
    s = formats.load(a.scheme)
    if isinstance(s, SchemeCollection):
        raise UsageError("scheme cost expects a single scheme file")
    B = _load_basis(a.basis, s.field)
    _emit(_format_report(io_cost(s, B), a.format))
    return 0


def _check_one(s):
    out = {"jstar": s.jstar, "valid": True, "bandwidth": bandwidth(s)}
    if s.n == s.field.size:
        wit = is_rotational(s)
        out["rotational"] = wit is not None
        if wit is not None:
            out["witness"] = {"subspace_basis": list(wit.subspace.basis()),
                              "multipliers": {str(j): r for j, r in sorted(wit.multipliers.items())}}
        out["hyperplane_criterion"] = lemma7_criterion(s)
    return out


def cmd_scheme_check(a):
    obj = formats.load(a.scheme)
    if isinstance(obj, SchemeCollection):
        doc = {"kind": "collection", "symmetric": is_symmetric(obj), "schemes": [_check_one(s) for s in obj.schemes]}
    else:
        doc = {"kind": "scheme", **_check_one(obj)}
    _emit(json.dumps(doc, indent=2, sort_keys=True))
    return 0


# -- repair ------------------------------------------------------------------------

def cmd_repair_run(a):
    s = formats.load(a.scheme)
    if isinstance(s, SchemeCollection):
        raise UsageError("repair run expects a single scheme file")
    fld = s.field
    B = _load_basis(a.basis, fld)
    bases = {j: B for j in range(1, s.n + 1)}
    if a.codeword:
        cw = tuple(fld.from_digits(x) for x in formats.load(a.codeword))
        clusters = [Cluster(s.code, cw, bases)]
    else:
        rng = random.Random(a.seed)
        clusters = [Cluster.random(s.code, rng, bases) for _ in range(a.random)]
    transcripts = [simulate_repair(c, s, s.jstar) for c in clusters]
    if a.format == "json":
        _emit(json.dumps([t.to_dict() for t in transcripts], indent=2, sort_keys=True))
    else:
        _emit("\n".join(t.summary() for t in transcripts))
    return 0 if all(t.success for t in transcripts) else 1


# -- verify / pareto / avgio --------------------------------------------------------------

def cmd_verify(a):
    name = a.name
    if name == "thm1":
        rep = verify_theorem1(a.q, a.ell, a.m or 1, a.random_bases, a.seed)
    elif name == "thm2":
        rep = verify_theorem2(a.q, a.ell, a.m or 1, a.mode)
    elif name == "thm3":
        if a.ell >= 4 and not a.extended:
            raise UsageError("ell >= 4 is an extended check; pass --extended")
        rep = verify_theorem3(a.ell, a.q, a.r, a.jstar, a.workers)
    elif name in ("lemma5", "lemma6"):
        p, d = _split_q(a.q)
        rep = oracle_lemma5_lemma6(build_field(p, d, a.ell))
    elif name == "lemma7":
        rep = verify_lemma7(_code(a.q, a.ell, a.r), a.jstar, a.workers)
    elif name == "lemma10":
        rep = verify_lemma10(_code(a.q, a.ell, a.r), a.jstar, a.workers)
    else:
        rep = verify_counterexample()
    if a.format == "json":
        d = rep.to_dict()
        if not a.timing:
            d.pop("metadata")
        _emit(json.dumps(d, indent=2, sort_keys=True, default=str))
    else:
        text = rep.to_text()
        if name == "thm3":
            ios = rep.counts["io_values"]
            io_txt = f"io={next(iter(ios))} for all" if len(ios) == 1 else f"io values {ios}"
            text += (f"\noptimal classes: {rep.counts['optimal_classes']}, rotational: {rep.counts['rotational']}, "
                     f"{io_txt}, violations: {len(rep.violations)}")
        if a.timing:
            text += f"\nwall_time: {rep.wall_time:.3f}s"
        _emit(text)
    return 0 if rep.ok or rep.exploratory else 1


def _split_q(q):
    from .search import _prime_power

    return _prime_power(q)


def cmd_pareto(a):
    code = _code(a.q, a.ell, a.r)
    B = _load_basis(a.basis, code.field)
    front = pareto_front(code, a.jstar, B, a.workers)
    if a.format == "json":
        _emit(json.dumps([{"bandwidth": p.bandwidth, "io": p.io, "class_index": p.representative.index}
                          for p in front], indent=2, sort_keys=True))
    elif a.format == "csv":
        _emit("bandwidth,io,class_index\n" + "".join(f"{p.bandwidth},{p.io},{p.representative.index}\n"
                                                     for p in front))
    else:
        _emit("\n".join([f"{'bandwidth':>9} {'io':>4}  class"] +
                        [f"{p.bandwidth:>9} {p.io:>4}  {p.representative.index}" for p in front]))
    return 0


def cmd_avgio(a):
    coll = formats.load(a.collection)
    if not isinstance(coll, SchemeCollection):
        raise UsageError("avgio expects a collection file")
    res = average_io(coll, a.mode)
    if a.format == "json":
        _emit(json.dumps(res.to_dict(), indent=2, sort_keys=True))
    else:
        tag = " (upper bound)" if res.upper_bound else ""
        _emit(f"average I/O: {res.value}{tag}\nper node: {list(res.per_node)}")
    return 0


# -- parser ------------------------------------------------------------------------------

def _field_args(p):
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--d", type=int, default=1)
    p.add_argument("--ell", type=int, default=2)
    p.add_argument("--modulus", type=int, nargs="+", help="digits low-to-high")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="rsrepair", description="Repair bandwidth and I/O for full-length RS codes")
    sub = ap.add_subparsers(dest="cmd", required=True)

    f = sub.add_parser("field", help="construct or inspect a field")
    f.add_argument("action", choices=["build", "show"])
    _field_args(f)
    f.add_argument("--field", help="field descriptor file (show)")
    f.add_argument("--out")
    f.set_defaults(func=cmd_field)

    s = sub.add_parser("scheme", help="build, cost or check repair schemes")
    ssub = s.add_subparsers(dest="action", required=True)
    b = ssub.add_parser("build")
    b.add_argument("--construction", choices=["iii", "naive", "counterexample"], default="iii")
    b.add_argument("--q", type=int, default=2)
    b.add_argument("--ell", type=int, default=2)
    b.add_argument("--m", type=int)
    b.add_argument("--r", type=int)
    b.add_argument("--w-dims", type=int, nargs="*", help="default-basis indices spanning W (default: first m)")
    b.add_argument("--jstar", type=int, default=1)
    b.add_argument("--helpers", type=int, nargs="*")
    b.add_argument("--basis", default="default")
    b.add_argument("--collection", action="store_true", help="emit one scheme per node")
    b.add_argument("--out")
    b.set_defaults(func=cmd_scheme_build)
    c = ssub.add_parser("cost")
    c.add_argument("--scheme", required=True)
    c.add_argument("--basis", default="default")
    c.add_argument("--format", choices=["table", "json", "csv"], default="table")
    c.set_defaults(func=cmd_scheme_cost)
    k = ssub.add_parser("check")
    k.add_argument("--scheme", required=True)
    k.set_defaults(func=cmd_scheme_check)

    r = sub.add_parser("repair", help="simulate repairs")
    rsub = r.add_subparsers(dest="action", required=True)
    run = rsub.add_parser("run")
    run.add_argument("--scheme", required=True)
    src = run.add_mutually_exclusive_group(required=True)
    src.add_argument("--codeword")
    src.add_argument("--random", type=int)
    run.add_argument("--seed", type=int, default=0)
    run.add_argument("--basis", default="default")
    run.add_argument("--format", choices=["text", "json"], default="text")
    run.set_defaults(func=cmd_repair_run)

    v = sub.add_parser("verify", help="run an exhaustive verifier")
    v.add_argument("name", choices=["thm1", "thm2", "thm3", "lemma5", "lemma6", "lemma7", "lemma10",
                                    "counterexample"])
    v.add_argument("--q", type=int, default=2)
    v.add_argument("--ell", type=int, default=2)
    v.add_argument("--m", type=int)
    v.add_argument("--r", type=int, default=2)
    v.add_argument("--jstar", type=int, default=1)
    v.add_argument("--workers", type=int, default=1)
    v.add_argument("--random-bases", type=int, default=5)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--mode", choices=["exact", "heuristic"], default="exact")
    v.add_argument("--extended", action="store_true", help="allow ell >= 4 for thm3")
    v.add_argument("--timing", action="store_true", help="include wall time (breaks byte-identical output)")
    v.add_argument("--format", choices=["text", "json"], default="text")
    v.set_defaults(func=cmd_verify)

    p = sub.add_parser("pareto", help="exact (bandwidth, I/O) Pareto front")
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--ell", type=int, default=2)
    p.add_argument("--r", type=int, default=2)
    p.add_argument("--jstar", type=int, default=1)
    p.add_argument("--basis", default="default")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--format", choices=["table", "json", "csv"], default="table")
    p.set_defaults(func=cmd_pareto)

    g = sub.add_parser("avgio", help="average I/O of a collection")
    g.add_argument("--collection", required=True)
    g.add_argument("--mode", choices=["exact", "heuristic"], default="exact")
    g.add_argument("--format", choices=["text", "json"], default="text")
    g.set_defaults(func=cmd_avgio)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, formats.FormatError, FieldError, SchemeError, BudgetError, ValueError, OSError) as e:
        print(f"rsrepair: error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
