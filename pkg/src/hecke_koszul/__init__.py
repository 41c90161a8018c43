"""Exact computations with Hecke symmetries: q-(anti)symmetrizers, quantum
exterior/symmetric algebras, Poincare series, and the Koszul complex whose
one-dimensional homology is the homological determinant."""

__version__ = "0.1.0"

from .errors import (AxiomViolation, HeckeError, MismatchedQ, NotCommuting, NotOneDimensional, ParseError,
                     PoleAtQ, ResourceCapExceeded, RootOfUnity, RootSignViolation, SingularHalfAdjoint,
                     Undetermined)
from .exact import ExactMatrix, RatFunc, eval_ratfunc, kron, parse_ratfunc, qfact, qint, rank, rat, rref
from .hecke import (AxiomReport, HeckeSym, antisymmetrizer, check_hecke, compute_P, hecke_operator,
                    quantum_rank, symmetrizer)
from .qspaces import birank, lambda_dim, poincare, reconstruct_rational, sym_dim
from .koszul import (KoszulComplex, KoszulTable, SuperMatrixPoint, berezinian_check, codifferential_dprime,
                     differential_d, dual_basis_insert, gurevich_identity, homology_generator, homology_table,
                     koszul)
from .partitions import HomQuery, Partition, hom_dimension, hook_valid, pieri_col, pieri_row, verify_theorem1_homs
from .zoo import (RFamily, drinfeld_jimbo, family_from_spec, hecke_sum, load_family, load_rmatrix, odd_point,
                  super_flip)
