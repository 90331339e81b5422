"""Combinatorial invariants of affine hypertoric varieties ``Y(A, 0)``."""
from .arrangement import (
    Arrangement,
    CharPoly,
    IntersectionPoset,
    chamber_count,
    chamber_of,
    char_poly,
    char_poly_finite_field,
    crepant_resolution_count,
    edelman_reiner_arrangement,
    er_closed_form,
    from_columns,
    intersection_poset,
    omin_matrix,
)
from .classify import (
    ClassLabel,
    EquivalenceWitness,
    classify4,
    classify6,
    equivalence_witness,
    isomorphic,
    quiver_iso,
)
from .datum import (
    HypertoricDatum,
    codim2_slices,
    degree_two_test,
    dimension,
    flats,
    from_graph,
    from_matrix_a,
    from_matrix_b,
    is_generic,
    namikawa_weyl,
    poisson_bracket,
    ring_generators,
)
from .graphs import Graph
from .matroid import Matroid

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
