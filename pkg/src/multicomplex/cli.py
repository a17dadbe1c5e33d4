"""``mcx``: command-line access to multi-complexes and their Hopf algebra.

Exit codes: 0 success, 1 a verification failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Sequence

from . import families
from .core import MultiComplex, SubComplexMask, iter_bits
from .encode import (
    from_colored_simplicial,
    from_delta,
    from_graph,
    from_hypergraph,
    from_multigraph,
    from_simplicial,
)
from .errors import CrossCheckMismatch, MultiComplexError, ParseError
from .formats import load, parse_json, to_json_obj, to_text
from .hopf import (
    ANTIPODES,
    AXIOMS,
    Element,
    TensorElement,
    compare_antipodes,
    coproduct,
    from_primitive_basis,
    primitive_pc,
    to_primitive_basis,
    verify_hopf_axioms,
)
from .iso import automorphism_count, canonical_form, embedding_count, key_from_hex, key_to_complex, multiplicity
from .poset import mobius, mobius_chain_oracle, spanning_subcomplexes


class VerificationFailed(Exception):
    pass


# ---- encoder input -------------------------------------------------------

ENCODERS = ("graph", "multigraph", "hypergraph", "simplicial", "delta", "colored")


def read_encoder_input(kind: str, path: str, allow_singleton: bool = False) -> MultiComplex:
    """Parse the line format of ``mcx encode``.

    ``n <k>`` then ``edge a b ...`` lines (graph kinds) or ``simplex a b ...``
    lines; ``facet i j`` (delta) and ``color <face-id> <k>`` (colored) refer to
    face ids, where vertices are 1..n and simplices get n+1, n+2, ... in
    order of appearance.
    """
    n = None
    edges: list[list[int]] = []
    simplices: list[list[int]] = []
    facets: list[tuple[int, int]] = []
    colors: list[tuple[int, int]] = []
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            tok = raw.split("#", 1)[0].split()
            if not tok:
                continue
            try:
                args = [int(t) for t in tok[1:]]
            except ValueError:
                raise ParseError(f"{path}:{lineno}: expected integers in {raw.strip()!r}") from None
            head = tok[0]
            if head == "n" and len(args) == 1:
                n = args[0]
            elif head == "edge" and kind in ("graph", "multigraph", "hypergraph") and args:
                edges.append(args)
            elif head == "simplex" and kind in ("simplicial", "delta", "colored") and args:
                simplices.append(args)
            elif head == "facet" and kind == "delta" and len(args) == 2:
                facets.append((args[0], args[1]))
            elif head == "color" and kind == "colored" and len(args) == 2:
                colors.append((args[0], args[1]))
            else:
                raise ParseError(f"{path}:{lineno}: unexpected line for {kind} input: {raw.strip()!r}")
    if n is None:
        raise ParseError(f"{path}: missing 'n <int>' line")
    if kind in ("graph", "multigraph"):
        for e in edges:
            if len(e) != 2:
                raise ParseError(f"{path}: edge {e} must have two endpoints")
        return (from_graph if kind == "graph" else from_multigraph)(n, edges)
    if kind == "hypergraph":
        return from_hypergraph(n, edges, allow_singleton=allow_singleton)
    if kind == "simplicial":
        return from_simplicial(n, simplices)
    if kind == "delta":
        return from_delta(n, simplices, [(i - n - 1, j - n - 1) for i, j in facets])
    coloring: dict = {}
    for fid, k in colors:
        if 1 <= fid <= n:
            coloring[fid] = coloring.get(fid, 0) + k
        elif n < fid <= n + len(simplices):
            face = tuple(sorted(simplices[fid - n - 1]))
            coloring[face] = coloring.get(face, 0) + k
        else:
            raise ParseError(f"{path}: color refers to unknown face id {fid}")
    return from_colored_simplicial(n, simplices, coloring)


# ---- element input / output ---------------------------------------------

def element_to_json(e: Element) -> dict:
    return {"terms": [{"key": k.hex(), "num": c.numerator, "den": c.denominator}
                      for k, c in e.terms.items()]}


def element_from_json(obj) -> Element:
    try:
        return Element({key_from_hex(t["key"]): Fraction(int(t["num"]), int(t.get("den", 1)))
                        for t in obj["terms"]})
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"malformed element JSON: {exc}") from None


def tensor_to_json(t: TensorElement) -> dict:
    return {"terms": [{"keys": [k.hex() for k in ks], "num": c.numerator, "den": c.denominator}
                      for ks, c in t.terms.items()]}


def load_complex(path: str) -> MultiComplex:
    return load(path)


def load_element(path: str) -> Element:
    """A complex file (text or JSON) or an element JSON ``{"terms": [...]}``."""
    if path.endswith(".json"):
        with open(path) as fh:
            text = fh.read()
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}: invalid JSON: {exc}") from None
        if isinstance(obj, dict) and "terms" in obj:
            return element_from_json(obj)
        return Element.basis(parse_json(text))
    return Element.basis(load(path))


class Legend:
    """Short aliases C1, C2, ... for keys, in order of first use."""

    def __init__(self):
        self.names: dict[bytes, str] = {}

    def __call__(self, key: bytes) -> str:
        if key not in self.names:
            self.names[key] = f"C{len(self.names) + 1}"
        return self.names[key]

    def render(self) -> str:
        lines = ["legend:"]
        for key, name in self.names.items():
            text = to_text(key_to_complex(key)).strip().replace("\n", " | ")
            lines.append(f"  {name} = {text}")
        return "\n".join(lines)


def _fmt_coeff(c: Fraction) -> str:
    return f"{'+' if c >= 0 else '-'}{abs(c)}"


def render_element(e: Element, legend: Legend) -> str:
    if not e:
        return "0"
    return "\n".join(f"{_fmt_coeff(c)}·{legend(k)}" for k, c in e.terms.items())


def render_tensor(t: TensorElement, legend: Legend) -> str:
    if not t:
        return "0"
    return "\n".join(f"{_fmt_coeff(c)}·" + " ⊗ ".join(legend(k) for k in ks) for ks, c in t.terms.items())


def _emit_element(args, e: Element, header: str | None = None) -> None:
    if args.json:
        print(json.dumps(element_to_json(e)))
        return
    legend = Legend()
    if header:
        print(header)
    print(render_element(e, legend))
    print(legend.render())


# ---- subcommands ---------------------------------------------------------

def cmd_validate(args) -> int:
    C = load_complex(args.file)
    print(json.dumps(to_json_obj(C)) if args.json else to_text(C), end="" if not args.json else "\n")
    return 0


def cmd_canon(args) -> int:
    print(canonical_form(load_complex(args.file)).hex())
    return 0


def cmd_encode(args) -> int:
    C = read_encoder_input(args.kind, args.file, allow_singleton=args.allow_singleton_hyperedges)
    print(json.dumps(to_json_obj(C)) if args.json else to_text(C), end="" if not args.json else "\n")
    return 0


def cmd_lattice(args) -> int:
    C = load_complex(args.file)
    L = spanning_subcomplexes(C)
    mu = L.mu_to_top()
    rows = [{"mask": hex(x), "faces": [C.n + i + 1 for i in iter_bits(x)], "mu": mu[x]} for x in L.masks]
    if args.json:
        print(json.dumps({"count": len(L), "masks": rows}))
    else:
        print(f"spanning sub-complexes: {len(L)}")
        for r in rows:
            print(f"{r['mask']:>10}  mu(D,C)={r['mu']:+d}  faces {r['faces']}")
    return 0


def _mask_arg(C: MultiComplex, text: str | None, default: int) -> SubComplexMask:
    if text is None:
        return SubComplexMask(C, default)
    mask = 0
    for tok in filter(None, text.split(",")):
        fid = int(tok) - 1
        if not C.n <= fid < C.n + C.m:
            raise ParseError(f"face id {tok} is not a non-singleton face (valid: {C.n + 1}..{C.n + C.m})")
        mask |= 1 << (fid - C.n)
    return SubComplexMask(C, mask)


def cmd_mobius(args) -> int:
    C = load_complex(args.file)
    D = _mask_arg(C, args.lower, 0)
    E = _mask_arg(C, args.upper, C.full_mask)
    value = mobius(C, D, E)
    oracle = mobius_chain_oracle(C, D, E)
    if args.json:
        print(json.dumps({"mu": value, "chain_oracle": oracle}))
    else:
        print(f"mu = {value}  (chain count: {oracle})")
    if value != oracle:
        raise VerificationFailed("recursive and chain-count Möbius values differ")
    return 0


def cmd_primitive(args) -> int:
    _emit_element(args, primitive_pc(load_complex(args.file)))
    return 0


def cmd_basis(args) -> int:
    if args.direction == "to":
        coeffs = to_primitive_basis(load_complex(args.file))
        if args.json:
            print(json.dumps({"monomials": [{"keys": [k.hex() for k in mono], "coeff": c}
                                            for mono, c in coeffs.items()]}))
            return 0
        legend = Legend()
        for mono, c in coeffs.items():
            print(f"{c}·" + "·".join(f"P[{legend(k)}]" for k in mono))
        print(legend.render())
        return 0
    with open(args.file) as fh:
        try:
            obj = json.load(fh)
            coeffs = {tuple(sorted(key_from_hex(k) for k in m["keys"])): int(m["coeff"])
                      for m in obj["monomials"]}
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"{args.file}: expected basis JSON with 'monomials': {exc}") from None
    _emit_element(args, from_primitive_basis(coeffs))
    return 0


def cmd_coproduct(args) -> int:
    t = coproduct(load_element(args.file))
    if args.json:
        print(json.dumps(tensor_to_json(t)))
        return 0
    legend = Legend()
    print(render_tensor(t, legend))
    print(legend.render())
    return 0


def cmd_antipode(args) -> int:
    a = load_element(args.file)
    if args.method != "compare":
        _emit_element(args, ANTIPODES[args.method](a))
        return 0
    cmp = compare_antipodes(a)
    if args.json:
        print(json.dumps({name: element_to_json(e) for name, e in (
            ("axiom", cmp.axiom), ("primitive", cmp.primitive), ("grouped", cmp.grouped),
            ("axiom_minus_primitive", cmp.primitive_delta), ("axiom_minus_grouped", cmp.grouped_delta))}))
    else:
        legend = Legend()
        for name, e in (("axiom", cmp.axiom), ("primitive", cmp.primitive), ("grouped", cmp.grouped),
                        ("axiom - primitive", cmp.primitive_delta), ("axiom - grouped", cmp.grouped_delta)):
            print(f"{name}:")
            print("\n".join("  " + line for line in render_element(e, legend).splitlines()))
        print(legend.render())
    if cmp.primitive_delta:
        raise VerificationFailed("axiomatic and primitive-basis antipodes differ")
    return 0


def cmd_multiplicity(args) -> int:
    C, D = load_complex(args.big), load_complex(args.small)
    m = multiplicity(C, D)
    emb, aut = embedding_count(C, D), automorphism_count(D)
    if args.json:
        print(json.dumps({"multiplicity": m, "embeddings": emb, "automorphisms": aut}))
    else:
        print(f"[C:D] = {m}  (injective morphisms {emb}, |Aut(D)| = {aut})")
    return 0


def default_axiom_corpus() -> tuple[list[MultiComplex], list[str]]:
    items, names = [], []
    for n in range(0, 5):
        for i, G in enumerate(families.all_graphs(n)):
            items.append(G)
            names.append(f"graph n={n} #{i}")
    for name in ("LOOP_DOUBLE_EDGE", "SIMPLEX2", "DELTA_EXAMPLE"):
        items.append(getattr(families, name))
        names.append(name.lower())
    return items, names


def cmd_verify(args) -> int:
    if args.what == "examples":
        from .goldens import run_goldens
        results = run_goldens()
        for r in results:
            print(f"{'PASS' if r.passed else 'FAIL'}  [{r.source}] {r.name}" + (f"  {r.detail}" if r.detail else ""))
        if not all(r.passed for r in results):
            raise VerificationFailed("golden example failure")
        return 0
    if args.files:
        items = [load_element(p) for p in args.files]
        names = list(args.files)
    else:
        items, names = default_axiom_corpus()
    report = verify_hopf_axioms(items, names)
    by_name: dict = {}
    for name, axiom, ok in report.rows:
        by_name.setdefault(name, {})[axiom] = ok
    for name, res in by_name.items():
        bad = [a for a in AXIOMS if a in res and not res[a]]
        print(f"{'PASS' if not bad else 'FAIL'}  {name}" + (f"  failed: {', '.join(bad)}" if bad else ""))
    print(f"{len(by_name)} elements, {len(report.failures())} failed checks")
    if not report.ok:
        raise VerificationFailed("Hopf axiom failure")
    return 0


def cmd_recon(args) -> int:
    from .recon import scan_counterexamples
    rep = scan_counterexamples(args.n, args.deck, min_edges=args.min_edges, jobs=args.jobs,
                               method=args.generator)
    if args.json:
        print(json.dumps({
            "n": rep.n, "deck": rep.kind, "min_edges": rep.min_edges, "graphs": rep.graphs,
            "classes": rep.classes, "class_sizes": {str(k): v for k, v in sorted(rep.class_sizes.items())},
            "pairs": [[to_text(G), to_text(H)] for G, H in rep.pairs],
            "primitive_differences": rep.primitive_differences,
            "disconnected_unique": rep.disconnected_unique,
        }))
        return 0
    print(rep.summary())
    for (G, H), prim in zip(rep.pairs, rep.primitive_differences):
        print(f"pair (difference primitive: {prim}):")
        print("  " + to_text(G).strip().replace("\n", " | "))
        print("  " + to_text(H).strip().replace("\n", " | "))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mcx", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    sub = p.add_subparsers(dest="cmd", required=True)

    def add(name, fn, help, file=True):
        sp = sub.add_parser(name, parents=[common], help=help)
        if file:
            sp.add_argument("file")
        sp.set_defaults(fn=fn)
        return sp

    add("validate", cmd_validate, "check a complex and print it in canonical face order")
    add("canon", cmd_canon, "print the canonical key as hex")
    sp = add("encode", cmd_encode, "build a complex from a graph-like description", file=False)
    sp.add_argument("kind", choices=ENCODERS)
    sp.add_argument("file")
    sp.add_argument("--allow-singleton-hyperedges", action="store_true")
    add("lattice", cmd_lattice, "spanning sub-complexes and mu(D, C)")
    sp = add("mobius", cmd_mobius, "mu(D, E) for two spanning sub-complexes")
    sp.add_argument("--lower", help="comma-separated face ids of D (default: no faces)")
    sp.add_argument("--upper", help="comma-separated face ids of E (default: all faces)")
    add("primitive", cmd_primitive, "the primitive element P_C")
    sp = add("basis", cmd_basis, "convert to / from the primitive basis", file=False)
    sp.add_argument("direction", choices=("to", "from"))
    sp.add_argument("file")
    add("coproduct", cmd_coproduct, "the coproduct of a complex or element")
    sp = add("antipode", cmd_antipode, "the antipode by one of three methods")
    sp.add_argument("--method", choices=(*ANTIPODES, "compare"), default="axiom")
    sp = add("multiplicity", cmd_multiplicity, "[C:D] with its cross-check", file=False)
    sp.add_argument("big")
    sp.add_argument("small")
    sp = add("verify", cmd_verify, "check Hopf axioms or the golden examples", file=False)
    sp.add_argument("what", choices=("axioms", "examples"))
    sp.add_argument("files", nargs="*")
    sp = add("recon", cmd_recon, "reconstruction experiments", file=False)
    sp.add_argument("action", choices=("scan",))
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--deck", choices=("vertex", "vertex-full", "edge", "edge-full"), default="vertex")
    sp.add_argument("--min-edges", type=int, default=0)
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--generator", choices=("extend", "edgesets"), default="extend",
                    help="grow graphs vertex by vertex, or enumerate every labelled edge set")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except VerificationFailed as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return 1
    except CrossCheckMismatch as exc:
        print(f"internal cross-check failed: {exc}", file=sys.stderr)
        return 1
    except (MultiComplexError, OSError) as exc:
        print(f"mcx {args.cmd}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
