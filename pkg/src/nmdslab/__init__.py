"""Exact-arithmetic toolkit for ternary BCH codes and near-MDS certification.

Builds the length-(q+1) BCH codes over GF(q), q = 3^m, whose generator
polynomial is the least common multiple of the minimal polynomials of two
consecutive powers of a primitive (q+1)-th root of unity, computes their
exact weight distributions, and certifies the near-MDS property by two
independent routes: a generic restricted-subcode rank test and a closed-form
criterion on pairs of roots of unity in the quadratic extension.
"""

from .gf import (FieldSpec, FieldElement, ExtensionPair, UnitySubgroup,
                 field_build, primitive_element, extension_build,
                 unity_subgroup, frobenius)
from .polyring import Poly, CyclotomicCoset, cyclotomic_coset, minimal_poly, is_irreducible
from .linalg import MatrixGF, rref, rank, nullspace, det, mat_mul, mat_vec
from .codes import (CyclicCode, BCHSpec, UnityParityCheck, bch_build,
                    generator_matrix, parity_check_matrix, dual_code,
                    unity_parity_check, encode, contains,
                    write_code_json, read_code_json)
from .analysis import (WeightDistribution, Classification, MonicCensus,
                       weight_distribution, macwilliams_transform,
                       min_distance, classify, nmds_identity_check,
                       monic_census)
from .nmds import (SubsetCertReport, PairCertReport, UTriple, restricted_dim,
                   certify_generic, certify_pairs, det3, det4, det4_factored,
                   delta, condition_2x2, special_sum_check, unique_z,
                   rational_solution_exists)
from .errors import (ResourceLimitError, UnsupportedParameterError,
                     InternalCheckError, InconsistentDistributionError)

__version__ = "0.1.0"
