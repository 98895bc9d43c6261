"""Incidence algebras of finite posets and their discrete differential calculi."""

from .chains import Chain, Cochain, LinearOperator, adjoint_apply, apply, compose, pairing
from .differential import AxiomReport, DifferentialStructure, cartan_D, restrict_ket, verify
from .errors import PosetDiffError
from .greechie import (
    GreechieLogic,
    ProperElement,
    block_complex,
    block_count,
    block_degree,
    f_map,
    greechie_border,
    proper_poset,
    validate_logic,
)
from .incidence import (
    AlgebraElement,
    BasisPair,
    IncidenceAlgebra,
    decompose,
    is_scalar,
    multiply,
    split_scalar_differential,
)
from .poset import Poset
from .simplicial import SimplicialComplex, border, close_downward, dim, face_poset

__version__ = "0.1.0"
