"""Cyclotomic numbers and Jacobi sums of orders l^2 and 2l^2 over finite fields."""

__version__ = "0.1.0"

from .bench import BenchReport, run_bench
from .classes import ClassPartition, PairClass, canonical_rep, class_size_census, orbit, partition
from .cycint import CycInt, embed_complex, monomial
from .cyclonum import (
    CycNumMatrix,
    MinimalCycNums,
    compute_all,
    compute_minimal,
    verify_identities,
)
from .field import (
    FieldElement,
    FieldSpec,
    IndexTable,
    build_index_table,
    field_for_q,
    find_generator,
    make_field,
)
from .jacobi import (
    JacobiResult,
    Method,
    expression_transversal_check,
    jacobi_from_full_matrix,
    jacobi_minimal,
    jacobi_oracle,
    jacobi_theorem,
    norm_check,
    recover_cyclotomic,
)
from .params import OrderSpec, Parity, Variant, enumerate_valid_q, make_order_spec
