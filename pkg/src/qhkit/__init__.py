"""Exact computations with split quasi-hereditary algebras over ZZ and exact fields.

The main entry points are `verify_split_qh`, which certifies a heredity chain
for given standard modules, and the derived constructions built on the
resulting `QHStructure`: costandard modules, standard and costandard
filtrations, characteristic tilting modules, Ringel duals and reduction
modulo primes.
"""

from .linalg import GF, QQ, ZZ, GroundRing, LinalgError, Matrix, smith_form
from .algebra import (
    Algebra, AlgebraError, AModule, Morphism, check_algebra, check_module, direct_sum,
    dual_module, projective_module, regular_module,
)
from .homological import ext, find_isomorphism, hom_rank, hom_space, tor1_and_tensor
from .poset import Poset, PosetError
from .filtrations import (
    FiltrationCertificate, InconsistencyError, extract_delta_filtration,
    extract_nabla_filtration, has_delta_filtration, has_nabla_filtration,
)
from .qh import (
    NotQuasiHereditary, QHStructure, ext_orthogonality_table, standard_modules,
    verify_split_qh,
)
from .tilting import build_characteristic_tilting, build_partial_tilting, verify_tilting
from .ringel import double_dual_invariants, ringel_dual, self_duality_probe
from .base_change import (
    fiberwise_filtration_check, hom_base_change_check, prime_sample, reduce_mod_p,
)
from .quiver import Quiver, QuiverError, compile_quiver
from .io import SpecError, emit_algebra_spec, load_spec, parse_algebra_spec

__version__ = "0.1.0"
