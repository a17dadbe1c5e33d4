"""Golden examples shipped in ``corpus/`` and the harness that checks them."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .formats import load, parse_text
from .hopf import (
    Element,
    TensorElement,
    antipode_axiomatic,
    coproduct,
    compare_antipodes,
    from_primitive_basis,
    is_primitive,
    primitive_pc,
    to_primitive_basis,
)
from .encode import pc_dim1
from .iso import canonical_form


def corpus_dir() -> Path:
    return Path(str(resources.files("multicomplex") / "corpus"))


def corpus_path(name: str) -> str:
    return str(corpus_dir() / name)


@dataclass
class GoldenResult:
    name: str
    source: str
    passed: bool
    detail: str = ""


def _alias_keys(aliases: dict) -> dict:
    return {a: canonical_form(parse_text(t.replace(";", "\n"))) for a, t in aliases.items()}


def _run_case(case: dict, keys: dict) -> tuple[bool, str]:
    op, inp, exp = case["op"], case["input"], case["expect"]
    if op == "basis-from":
        coeffs = {tuple(sorted(keys[a] for a in mono)): c for mono, c in inp}
        got = from_primitive_basis(coeffs)
        return got == Element({keys[a]: c for a, c in exp.items()}), ""
    if op == "encode-delta":
        from .cli import read_encoder_input
        got = read_encoder_input("delta", corpus_path(inp))
        return canonical_form(got) == canonical_form(load(corpus_path(exp))), ""
    C = load(corpus_path(inp))
    if op == "load":
        return canonical_form(C) == keys[exp], ""
    if op == "is-primitive":
        return is_primitive(primitive_pc(C)) == exp, ""
    if op == "coproduct":
        want = TensorElement({(keys[a], keys[b]): c for a, b, c in exp})
        return coproduct(Element.basis(C)) == want, ""
    if op == "basis-to":
        want = {tuple(sorted(keys[a] for a in mono)): c for mono, c in exp}
        return to_primitive_basis(C) == want, ""
    want = Element({keys[a]: Fraction(c) for a, c in exp.items()})
    if op == "primitive":
        got = primitive_pc(C)
    elif op == "pc-dim1":
        got = pc_dim1(C)
    elif op == "antipode-axiom":
        got = antipode_axiomatic(Element.basis(C))
    elif op == "grouped-delta":
        got = compare_antipodes(Element.basis(C)).grouped_delta
    else:
        raise ValueError(f"unknown golden op {op!r}")
    return got == want, "" if got == want else f"got {dict(got.terms)}"


def run_goldens(source: str | None = None) -> list[GoldenResult]:
    """Check every golden case (optionally only those from one ``source``)."""
    spec = json.loads((corpus_dir() / "expected.json").read_text())
    keys = _alias_keys(spec["aliases"])
    out = []
    for case in spec["cases"]:
        if source and case["source"] != source:
            continue
        try:
            ok, detail = _run_case(case, keys)
        except Exception as exc:  # report, keep going
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        out.append(GoldenResult(case["name"], case["source"], ok, detail))
    return out
