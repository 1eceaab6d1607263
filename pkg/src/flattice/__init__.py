"""Exact finite-dimensional models of Archimedean f-algebras.

Vector lattices are sublattices of Q^n with pointwise order, f-algebra
multiplications are weighted pointwise products, and the Fremlin tensor
product is the sublattice of functions on a product point set generated by
simple tensors.  All arithmetic is over ``fractions.Fraction``.
"""

from .errors import *  # noqa: F401,F403
from .falgebra import (FAlgebra, band_complement, build_from_weight, extract_orthomorphism_weight,
                       extract_partial_weight, extract_weight, find_identity, is_semi_prime,
                       nilpotent_band, quotient_by_band, restrict_to_support, table_algebra,
                       verify_falgebra)
from .lattice import (LinearMap, Subspace, Sublattice, check_lattice_hom, check_positive,
                      is_sublattice, make_subspace, member_two_point, sublattice,
                      sublattice_closure, upsilon)
from .morphisms import (algebra_hom, check_algebra_hom, check_multext, induced_tensor_hom,
                        verify_universal)
from .tensor import (fremlin_tensor, reconstruct_mult_from_generators, tensor_falgebra,
                     tensor_weight)

__version__ = "0.1.0"
