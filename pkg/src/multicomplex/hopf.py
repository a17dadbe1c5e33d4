"""The Hopf algebra of multi-complexes over the rationals.

Basis elements are canonical keys; the product is disjoint union, the
coproduct sums restrictions over ordered vertex bipartitions, and the counit
picks out the coefficient of the empty complex.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product as cartesian
from typing import Iterable, Mapping, Sequence, Union

from .core import MultiComplex, component_count, restrict_mask, spanning_complex
from .iso import (
    EMPTY_KEY,
    CanonicalKey,
    canonical_form,
    key_components,
    key_degree,
    key_product,
    key_to_complex,
)
from .poset import spanning_subcomplexes

Scalar = Union[int, Fraction]


def _clean(terms: Mapping) -> dict:
    return {k: Fraction(c) for k, c in terms.items() if c != 0}


@dataclass(frozen=True)
class Element:
    """A finite rational combination of canonical keys; zero terms never stored."""

    terms: Mapping[CanonicalKey, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "terms", dict(sorted(_clean(self.terms).items())))

    @classmethod
    def basis(cls, C: Union[MultiComplex, CanonicalKey], coeff: Scalar = 1) -> "Element":
        key = C if isinstance(C, bytes) else canonical_form(C)
        return cls({key: coeff})

    @classmethod
    def one(cls) -> "Element":
        return cls({EMPTY_KEY: 1})

    def __add__(self, other: "Element") -> "Element":
        out = defaultdict(Fraction, self.terms)
        for k, c in other.terms.items():
            out[k] += c
        return Element(out)

    def __neg__(self) -> "Element":
        return Element({k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "Element") -> "Element":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Element):
            return product(self, other)
        return Element({k: c * other for k, c in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, Element) and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def coeff(self, key: CanonicalKey) -> Fraction:
        return self.terms.get(key, Fraction(0))

    def degrees(self) -> set[int]:
        return {key_degree(k) for k in self.terms}


@dataclass(frozen=True)
class TensorElement:
    """A rational combination of key tuples (any fixed arity)."""

    terms: Mapping[tuple[CanonicalKey, ...], Fraction] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "terms", dict(sorted(_clean(self.terms).items())))

    def __add__(self, other: "TensorElement") -> "TensorElement":
        out = defaultdict(Fraction, self.terms)
        for k, c in other.terms.items():
            out[k] += c
        return TensorElement(out)

    def __sub__(self, other: "TensorElement") -> "TensorElement":
        return self + TensorElement({k: -c for k, c in other.terms.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, TensorElement) and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def swap(self) -> "TensorElement":
        """Reverse the tensor factors."""
        return TensorElement({k[::-1]: c for k, c in self.terms.items()})


def tensor(*elements: Element) -> TensorElement:
    out: dict = defaultdict(Fraction)
    for combo in cartesian(*(e.terms.items() for e in elements)):
        c = Fraction(1)
        for _, x in combo:
            c *= x
        out[tuple(k for k, _ in combo)] += c
    return TensorElement(out)


def product(a: Element, b: Element) -> Element:
    out: dict = defaultdict(Fraction)
    for ka, ca in a.terms.items():
        for kb, cb in b.terms.items():
            out[key_product(ka, kb)] += ca * cb
    return Element(out)


def tensor_product(a: TensorElement, b: TensorElement) -> TensorElement:
    """Factorwise product in the tensor power algebra."""
    out: dict = defaultdict(Fraction)
    for ka, ca in a.terms.items():
        for kb, cb in b.terms.items():
            out[tuple(key_product(x, y) for x, y in zip(ka, kb))] += ca * cb
    return TensorElement(out)


@lru_cache(maxsize=None)
def _coproduct_key(key: CanonicalKey) -> tuple:
    C = key_to_complex(key)
    full = (1 << C.n) - 1
    out: Counter = Counter()
    for X in range(full + 1):
        out[(canonical_form(restrict_mask(C, X)), canonical_form(restrict_mask(C, full ^ X)))] += 1
    return tuple(sorted(out.items()))


def coproduct(a: Element) -> TensorElement:
    out: dict = defaultdict(Fraction)
    for k, c in a.terms.items():
        for pair, mult in _coproduct_key(k):
            out[pair] += c * mult
    return TensorElement(out)


def counit(a: Element) -> Fraction:
    return a.coeff(EMPTY_KEY)


def _apply_at(fn, t: TensorElement, pos: int) -> TensorElement:
    out: dict = defaultdict(Fraction)
    for keys, c in t.terms.items():
        pos %= len(keys)
        image = fn(Element({keys[pos]: 1}))
        if isinstance(image, Element):
            image = TensorElement({(k,): x for k, x in image.terms.items()})
        for ks, x in image.terms.items():
            out[keys[:pos] + ks + keys[pos + 1:]] += c * x
    return TensorElement(out)


def apply_left(fn, t: TensorElement) -> TensorElement:
    """(fn ⊗ id ⊗ ...) for a linear map ``fn`` into elements or tensors."""
    return _apply_at(fn, t, 0)


def apply_right(fn, t: TensorElement) -> TensorElement:
    """(id ⊗ ... ⊗ fn)."""
    return _apply_at(fn, t, -1)


def multiply(t: TensorElement) -> Element:
    """The multiplication map on a tensor of any arity."""
    out: dict = defaultdict(Fraction)
    for keys, c in t.terms.items():
        k = EMPTY_KEY
        for x in keys:
            k = key_product(k, x)
        out[k] += c
    return Element(out)


def _linear(fn_key):
    """Extend a per-key function returning an Element linearly."""
    def apply(a: Element) -> Element:
        out: dict = defaultdict(Fraction)
        for k, c in a.terms.items():
            for kk, cc in fn_key(k).terms.items():
                out[kk] += c * cc
        return Element(out)
    return apply


def _census(C: MultiComplex) -> list[tuple[CanonicalKey, int, int]]:
    """(key, component count, mu(D, C)) for every spanning sub-complex D."""
    L = spanning_subcomplexes(C)
    mu = L.mu_to_top()
    return [(canonical_form(spanning_complex(C, D)), component_count(C, D), mu[D]) for D in L.masks]


@lru_cache(maxsize=None)
def _census_key(key: CanonicalKey):
    return tuple(_census(key_to_complex(key)))


@lru_cache(maxsize=None)
def _pc_key(key: CanonicalKey) -> Element:
    out: dict = defaultdict(Fraction)
    for k, _, mu in _census_key(key):
        out[k] += mu
    return Element(out)


def primitive_pc(C: Union[MultiComplex, CanonicalKey]) -> Element:
    """P_C = sum over spanning D of mu(D, C) [D]."""
    key = C if isinstance(C, bytes) else canonical_form(C)
    return _pc_key(key)


PrimitiveCoeffs = Mapping[tuple[CanonicalKey, ...], int]


def to_primitive_basis(C: Union[MultiComplex, CanonicalKey]) -> dict[tuple[CanonicalKey, ...], int]:
    """Coefficients of [C] as a polynomial in P_D, D connected.

    Each monomial is the sorted tuple of its connected keys.
    """
    key = C if isinstance(C, bytes) else canonical_form(C)
    out: Counter = Counter()
    for k, _, _ in _census_key(key):
        out[key_components(k)] += 1
    return dict(sorted(out.items()))


def from_primitive_basis(coeffs: PrimitiveCoeffs) -> Element:
    total = Element()
    for monomial, c in coeffs.items():
        if c == 0:
            continue
        term = Element.one()
        for k in monomial:
            term = product(term, primitive_pc(k))
        total = total + term * c
    return total


@lru_cache(maxsize=None)
def _antipode_axiom_key(key: CanonicalKey) -> Element:
    if key == EMPTY_KEY:
        return Element.one()
    C = key_to_complex(key)
    full = (1 << C.n) - 1
    out = -Element({key: 1})
    for X in range(1, full):
        left = _antipode_axiom_key(canonical_form(restrict_mask(C, X)))
        right = Element({canonical_form(restrict_mask(C, full ^ X)): 1})
        out = out - product(left, right)
    return out


@lru_cache(maxsize=None)
def _antipode_primitive_key(key: CanonicalKey) -> Element:
    out = Element()
    groups = Counter((k, c) for k, c, _ in _census_key(key))
    for (k, c), mult in groups.items():
        out = out + primitive_pc(k) * ((-1) ** c * mult)
    return out


@lru_cache(maxsize=None)
def _antipode_grouped_key(key: CanonicalKey) -> Element:
    out: dict = defaultdict(Fraction)
    for k, c, _ in _census_key(key):
        out[k] += (-1) ** c
    return Element(out)


antipode_axiomatic = _linear(_antipode_axiom_key)
antipode_axiomatic.__doc__ = "Ground-truth antipode from the recursion m(S ⊗ id)Δ = uε."
antipode_primitive = _linear(_antipode_primitive_key)
antipode_primitive.__doc__ = "S(C) = sum over spanning D of (-1)^{c_D} P_D."
antipode_grouped = _linear(_antipode_grouped_key)
antipode_grouped.__doc__ = (
    "The grouped formula taken literally: sum over spanning D of (-1)^{c_D} [D]. "
    "It is not the antipode in general; see compare_antipodes.")

ANTIPODES = {
    "axiom": antipode_axiomatic,
    "primitive": antipode_primitive,
    "grouped": antipode_grouped,
}


@dataclass
class AntipodeComparison:
    axiom: Element
    primitive: Element
    grouped: Element

    @property
    def primitive_delta(self) -> Element:
        return self.axiom - self.primitive

    @property
    def grouped_delta(self) -> Element:
        return self.axiom - self.grouped


def compare_antipodes(a: Element) -> AntipodeComparison:
    return AntipodeComparison(antipode_axiomatic(a), antipode_primitive(a), antipode_grouped(a))


def is_primitive(a: Element) -> bool:
    one = Element.one()
    return coproduct(a) == tensor(a, one) + tensor(one, a)


def pc_matrix_rank(keys: Sequence[CanonicalKey]) -> tuple[int, int]:
    """(rank, row count) of the matrix of P_C, C in ``keys``, over the complex basis."""
    from sympy import Matrix

    rows = [primitive_pc(k) for k in keys]
    cols = sorted({k for r in rows for k in r.terms})
    index = {k: i for i, k in enumerate(cols)}
    M = Matrix.zeros(len(rows), len(cols))
    for i, r in enumerate(rows):
        for k, c in r.terms.items():
            M[i, index[k]] = c
    return M.rank(), len(rows)


AXIOMS = ("coassociativity", "counit-left", "counit-right", "cocommutativity",
          "multiplicativity", "antipode-left", "antipode-right")


def _counit_map(t: TensorElement, side: int) -> Element:
    out: dict = defaultdict(Fraction)
    for (x, y), c in t.terms.items():
        if (x if side == 0 else y) == EMPTY_KEY:
            out[y if side == 0 else x] += c
    return Element(out)


def check_axioms(a: Element, b: Element | None = None) -> dict[str, bool]:
    """Evaluate each bialgebra / antipode axiom on ``a`` (and ``b`` for Δ(ab))."""
    d = coproduct(a)
    res = {
        "coassociativity": apply_left(coproduct, d) == apply_right(coproduct, d),
        "counit-left": _counit_map(d, 0) == a,
        "counit-right": _counit_map(d, 1) == a,
        "cocommutativity": d.swap() == d,
        "antipode-left": multiply(apply_left(antipode_axiomatic, d)) == Element.one() * counit(a),
        "antipode-right": multiply(apply_right(antipode_axiomatic, d)) == Element.one() * counit(a),
    }
    if b is not None:
        res["multiplicativity"] = coproduct(product(a, b)) == tensor_product(d, coproduct(b))
    return res


@dataclass
class AxiomReport:
    rows: list[tuple[str, str, bool]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r[2] for r in self.rows)

    def failures(self) -> list[tuple[str, str, bool]]:
        return [r for r in self.rows if not r[2]]


def verify_hopf_axioms(corpus: Iterable[Union[MultiComplex, Element]],
                       names: Sequence[str] | None = None) -> AxiomReport:
    """Run every axiom on each corpus element; Δ(ab) pairs each with its successor."""
    elems = [x if isinstance(x, Element) else Element.basis(x) for x in corpus]
    report = AxiomReport()
    for i, a in enumerate(elems):
        name = names[i] if names else str(i)
        b = elems[(i + 1) % len(elems)]
        for axiom, ok in check_axioms(a, b).items():
            report.rows.append((name, axiom, ok))
    return report


def clear_caches() -> None:
    for fn in (_coproduct_key, _census_key, _pc_key, _antipode_axiom_key,
               _antipode_primitive_key, _antipode_grouped_key):
        fn.cache_clear()
