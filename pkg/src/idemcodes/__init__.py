"""Minimal left group codes from primitive idempotents of semisimple group algebras.

Pipeline: strong Shoda pairs (H, K) of G -> primitive central idempotents
e_C(G, H, K) of FG -> complete sets of orthogonal primitive idempotents in
each component -> the left ideals FGe read as linear codes.
"""

from .algebra import AlgElem, RatAlgElem, alg_arith, are_orthogonal, is_central, is_idempotent, tilde
from .codes import (
    LinearCode,
    SearchReport,
    code_from_idempotent,
    code_search,
    export_generator_matrix,
    minimum_distance,
    weight_distribution,
)
from .errors import IdemcodesError
from .fields import ExtensionCtx, FieldCtx, FieldElem, extension, get_field, multiplicative_order_mod
from .groups import (
    Group,
    Subgroup,
    cyclic_group,
    group_dicyclic,
    group_direct,
    group_from_table,
    group_metacyclic,
    load_cayley,
    subgroups,
)
from .idempotents import (
    PrimSet,
    build_P_A,
    crossed_ctx,
    primitive_idempotents,
    primitive_idempotents_nilpotent,
    primitive_idempotents_trivial_twisting,
    psi_inverse,
    psi_matrix,
    solve_sum_of_squares,
    verify_primset,
)
from .shoda import (
    CyclotomicClass,
    StrongShodaPair,
    cyclotomic_classes,
    e_C,
    eps_C,
    eps_rational,
    is_strong_shoda_pair,
    make_pair,
    strong_shoda_pairs,
    wedderburn_report,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
