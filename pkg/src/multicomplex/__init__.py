"""Multi-complexes and their Hopf algebra: structure, isomorphism, Möbius
functions, primitive elements, antipodes and reconstruction experiments."""

from .core import (
    EMPTY,
    LIMITS,
    VERTEX,
    MultiComplex,
    SubComplexMask,
    component_count,
    connected_components,
    delete_faces,
    dimension,
    disjoint_union,
    face_dimension,
    generated_sub,
    intersect_sub,
    is_connected,
    relabel,
    restrict,
    validate,
)
from .errors import CrossCheckMismatch, MultiComplexError
from .formats import load, parse_json, parse_text, to_json, to_text
from .iso import (
    automorphism_count,
    canonical_form,
    embedding_count,
    is_isomorphic,
    multiplicity,
)
from .poset import mobius, mobius_chain_oracle, mobius_vector, spanning_subcomplexes
from .hopf import (
    Element,
    TensorElement,
    antipode_axiomatic,
    antipode_grouped,
    antipode_primitive,
    compare_antipodes,
    coproduct,
    counit,
    from_primitive_basis,
    is_primitive,
    primitive_pc,
    product,
    to_primitive_basis,
    verify_hopf_axioms,
)
from .encode import (
    from_colored_simplicial,
    from_delta,
    from_graph,
    from_hypergraph,
    from_multigraph,
    from_simplicial,
    pc_dim1,
)
from .recon import Deck, deck, decks_equal, difference_is_primitive, scan_counterexamples
