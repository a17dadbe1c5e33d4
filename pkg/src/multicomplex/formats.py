"""Canonical text (``.mcx``) and JSON (``.mcx.json``) formats for one complex.

Text::

    n 3
    face 4 : 1 2
    face 5 : 1 2 3
    rel 4 < 5

Singletons are implicit.  Face ids are arbitrary distinct integers on input;
on output the non-singleton faces are numbered ``n+1, n+2, ...`` in canonical
order, so singletons conceptually own ids ``1..n``.
"""

from __future__ import annotations

import json
from typing import Any

from .core import MultiComplex, iter_bits, validate
from .errors import ParseError


def _assemble(n: int, faces: list[tuple[Any, list[int]]], rels: list[tuple[Any, Any]]) -> MultiComplex:
    ids = [fid for fid, _ in faces]
    if len(set(ids)) != len(ids):
        raise ParseError("face ids must be distinct")
    index = {fid: n + i for i, fid in enumerate(ids)}
    for fid, content in faces:
        if len(content) < 2:
            raise ParseError(f"face {fid} has fewer than 2 labels; singletons are implicit")
    pairs = []
    for a, b in rels:
        if a not in index or b not in index:
            raise ParseError(f"rel {a} < {b} refers to an undeclared face")
        pairs.append((index[a], index[b]))
    all_faces = [[v] for v in range(1, n + 1)] + [content for _, content in faces]
    return validate(n, all_faces, pairs)


def parse_text(text: str) -> MultiComplex:
    n = None
    faces: list[tuple[int, list[int]]] = []
    rels: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        try:
            if tok[0] == "n" and len(tok) == 2:
                if n is not None:
                    raise ParseError("duplicate 'n' line")
                n = int(tok[1])
            elif tok[0] == "face" and len(tok) >= 3 and tok[2] == ":":
                faces.append((int(tok[1]), [int(x) for x in tok[3:]]))
            elif tok[0] == "rel" and len(tok) == 4 and tok[2] == "<":
                rels.append((int(tok[1]), int(tok[3])))
            else:
                raise ParseError(f"unrecognised line: {raw!r}")
        except ValueError as exc:
            if isinstance(exc, ParseError):
                raise ParseError(f"line {lineno}: {exc}") from None
            raise ParseError(f"line {lineno}: expected integers in {raw!r}") from None
    if n is None:
        raise ParseError("missing 'n <int>' line")
    return _assemble(n, faces, rels)


def to_text(C: MultiComplex) -> str:
    lines = [f"n {C.n}"]
    for i, f in enumerate(C.faces):
        lines.append(f"face {C.n + i + 1} : " + " ".join(map(str, f)))
    for j in range(C.m):
        for i in iter_bits(C.lower[j]):
            lines.append(f"rel {C.n + i + 1} < {C.n + j + 1}")
    return "\n".join(lines) + "\n"


def to_json_obj(C: MultiComplex) -> dict:
    return {
        "n": C.n,
        "faces": [{"id": C.n + i + 1, "multiset": list(f)} for i, f in enumerate(C.faces)],
        "order": [[C.n + i + 1, C.n + j + 1] for j in range(C.m) for i in iter_bits(C.lower[j])],
    }


def from_json_obj(obj: Any) -> MultiComplex:
    try:
        n = int(obj["n"])
        faces = [(f["id"], [int(v) for v in f["multiset"]]) for f in obj.get("faces", [])]
        rels = [(a, b) for a, b in obj.get("order", [])]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed complex JSON: {exc}") from None
    return _assemble(n, faces, rels)


def to_json(C: MultiComplex) -> str:
    return json.dumps(to_json_obj(C), sort_keys=True)


def parse_json(text: str) -> MultiComplex:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    return from_json_obj(obj)


def load(path: str) -> MultiComplex:
    with open(path) as fh:
        text = fh.read()
    if path.endswith(".json"):
        return parse_json(text)
    return parse_text(text)
