"""Exact pseudo-Hermite and pseudo-Smith normal forms over rings of integers
of number fields, with the supporting field, ideal, lattice-reduction and
multi-modular determinant machinery."""

from .ideals import FractionalIdeal, IdealError, idempotents
from .lattice import (LatticeContext, QualityError, build_context,
                      reduce_ideal_basis, shortest_basis_element)
from .numberfield import FieldElement, FieldError, NumberField, build_field
from .pseudo_hnf import (PseudoMatrix, canonicalize, euclidean_step,
                         module_hnf, pseudo_hnf, to_absolute)
from .pseudo_snf import (BiPseudoMatrix, DivisorChain, pseudo_snf,
                         quotient_determinantal_ideal)
from .reduction import ReducedBasisCache, normalize_row, reduce_mod_ideal
from .determinant import (det, det_bound, determinantal_ideal,
                          determinantal_ideal_multiple, rank_and_submatrix)
from .residues import (PrimePlan, ResidueSystem, crt_combine_factors,
                       crt_combine_primes, lift_to_field, plan_primes,
                       project_element, split_prime)

__all__ = [
    "BiPseudoMatrix", "DivisorChain", "FieldElement", "FieldError",
    "FractionalIdeal", "IdealError", "LatticeContext", "NumberField",
    "PrimePlan", "PseudoMatrix", "QualityError", "ReducedBasisCache",
    "ResidueSystem", "build_context", "build_field", "canonicalize",
    "crt_combine_factors", "crt_combine_primes", "det", "det_bound",
    "determinantal_ideal", "determinantal_ideal_multiple", "euclidean_step",
    "idempotents", "lift_to_field", "module_hnf", "normalize_row",
    "plan_primes", "project_element", "pseudo_hnf", "pseudo_snf",
    "quotient_determinantal_ideal", "rank_and_submatrix",
    "reduce_ideal_basis", "reduce_mod_ideal", "shortest_basis_element",
    "split_prime", "to_absolute",
]
