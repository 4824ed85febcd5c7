"""JSON file formats (format_version 1) for fields, codes, schemes, collections,
bases and codewords.  Field elements are written as digit arrays, low to high.
"""

from __future__ import annotations

import json
from pathlib import Path

from .codes import LinearCode, RsCode
from .constructions import SchemeCollection
from .gf import Field, SubfieldBasis, dual_basis, field_from_descriptor
from .repair import RepairScheme, scheme_from_words, scheme_new

FORMAT_VERSION = 1


class FormatError(ValueError):
    pass


def _el(fld: Field, a: int) -> list[int]:
    return fld.digits(a)


def _unel(fld: Field, digs) -> int:
    try:
        return fld.from_digits(digs)
    except (TypeError, ValueError) as e:
        raise FormatError(f"bad field element {digs!r}: {e}") from None


def code_to_dict(code) -> dict:
    fld = code.field
    if isinstance(code, RsCode):
        return {"type": "rs", "field": fld.descriptor(), "eval_points": list(code.eval_points), "k": code.k}
    return {"type": "linear", "field": fld.descriptor(),
            "generator": [[_el(fld, x) for x in row] for row in code.gen]}


def code_from_dict(d: dict):
    fld = field_from_descriptor(d["field"])
    if d.get("type", "rs") == "rs":
        return RsCode(fld, tuple(d["eval_points"]), d["k"])
    return LinearCode.from_generator(fld, [[_unel(fld, x) for x in row] for row in d["generator"]])


def _scheme_body(s: RepairScheme) -> dict:
    fld = s.field
    body = {"jstar": s.jstar}
    if s.polys is not None:
        body["polys"] = [[_el(fld, c) for c in g] for g in s.polys]
    else:
        body["words"] = [[_el(fld, c) for c in w] for w in s.words]
    return body


def _scheme_from_body(code, body: dict) -> RepairScheme:
    fld = code.field
    if "polys" in body:
        return scheme_new(code, body["jstar"], [[_unel(fld, c) for c in g] for g in body["polys"]])
    return scheme_from_words(code, body["jstar"], [[_unel(fld, c) for c in w] for w in body["words"]])


def scheme_to_dict(s: RepairScheme) -> dict:
    return {"format_version": FORMAT_VERSION, "kind": "scheme", "code": code_to_dict(s.code), **_scheme_body(s)}


def basis_to_dict(B: SubfieldBasis) -> dict:
    return {"format_version": FORMAT_VERSION, "kind": "basis", "field": B.field.descriptor(),
            "elems": [_el(B.field, b) for b in B.elems]}


def basis_from_dict(d: dict, fld: Field | None = None) -> SubfieldBasis:
    fld = fld or field_from_descriptor(d["field"])
    return dual_basis(fld, [_unel(fld, b) for b in d["elems"]])


def collection_to_dict(c: SchemeCollection) -> dict:
    out = {"format_version": FORMAT_VERSION, "kind": "collection", "code": code_to_dict(c.code),
           "schemes": [_scheme_body(s) for s in c.schemes]}
    if c.bases:
        out["bases"] = {str(j): [_el(c.code.field, b) for b in B.elems] for j, B in sorted(c.bases.items())}
    return out


def codeword_to_dict(fld: Field, cw) -> dict:
    return {"format_version": FORMAT_VERSION, "kind": "codeword", "symbols": [_el(fld, x) for x in cw]}


def from_dict(d: dict):
    """Rebuild whatever object a document describes (validated on construction)."""
    if not isinstance(d, dict):
        raise FormatError("top-level JSON value must be an object")
    if d.get("format_version") != FORMAT_VERSION:
        raise FormatError(f"unsupported format_version {d.get('format_version')!r}")
    kind = d.get("kind")
    try:
        if kind == "scheme":
            return _scheme_from_body(code_from_dict(d["code"]), d)
        if kind == "collection":
            code = code_from_dict(d["code"])
            schemes = tuple(_scheme_from_body(code, b) for b in d["schemes"])
            bases = None
            if "bases" in d:
                bases = {int(j): dual_basis(code.field, [_unel(code.field, x) for x in v])
                         for j, v in d["bases"].items()}
            return SchemeCollection(code, schemes, bases)
        if kind == "basis":
            return basis_from_dict(d)
        if kind == "codeword":
            return d["symbols"]
        if kind == "field":
            return field_from_descriptor(d)
    except KeyError as e:
        raise FormatError(f"missing key {e} in {kind} document") from None
    raise FormatError(f"unknown document kind {kind!r}")


def dumps(d: dict) -> str:
    return json.dumps(d, indent=2, sort_keys=True) + "\n"


def load(path) -> object:
    text = Path(path).read_text()
    try:
        d = json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(f"{path}:{e.lineno}:{e.colno}: {e.msg} (offset {e.pos})") from None
    return from_dict(d)
