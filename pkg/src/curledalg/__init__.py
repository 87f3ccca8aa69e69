"""Exact deciders and verification harness for 3-dimensional curled algebras.

An algebra over a field K is curled when x and x^2 are linearly dependent
for every element x, and endo-commutative when squaring preserves products,
x^2 y^2 = (xy)^2. This package represents 3-dimensional curled algebras by
their multiplication tables over GF(p) or the rationals and decides
endo-commutativity three independent ways: definitional brute force, a
21-equation structural characterization, and identity vanishing of the
symbolic difference expansion. A differential harness enumerates or samples
whole table spaces and reports any disagreement between the deciders.
"""

from .algebra import (
    ALL_TYPES,
    CurledTable,
    CurledType,
    Element,
    NotCurledNormalFormError,
    SingularMatrixError,
    StructureTensor,
    change_of_basis,
    from_tensor,
    is_curled_bruteforce,
    is_curled_symbolic,
    linearly_dependent,
    normalize_diagonal,
    product,
    square,
    to_tensor,
)
from .conditions import (
    ConditionReport,
    check_condition_10,
    check_condition_17,
    check_zeropotency_condition,
    condition_report,
    is_ec_by_theorem,
    is_zeropotent_by_condition,
)
from .field import (
    GF,
    RATIONALS,
    FieldDescriptor,
    FieldElement,
    FieldMismatchError,
    UnsupportedFieldError,
    enumerate_field,
    from_integer,
    inverse,
)
from .formal import (
    FormalVector,
    FormalWord,
    GREEK_NAMES,
    ScalarPoly,
    difference_expansion,
    eval_formal,
    eval_to_polynomials,
    formal_multiply,
    generic_product,
    generic_square_x,
    generic_square_y,
    greek_poly,
    parse_poly,
    recombined_difference,
    specialize,
)
from .oracle import (
    BudgetExceededError,
    DifferentialReport,
    TableId,
    classify_counts,
    decode_table,
    differential_reports,
    differential_test,
    encode_table,
    enumerate_tables,
    is_ec_bruteforce,
    is_ec_polynomial,
    is_zeropotent_bruteforce,
)

__version__ = "0.1.0"

__all__ = [
    "ALL_TYPES",
    "BudgetExceededError",
    "ConditionReport",
    "CurledTable",
    "CurledType",
    "DifferentialReport",
    "Element",
    "FieldDescriptor",
    "FieldElement",
    "FieldMismatchError",
    "FormalVector",
    "FormalWord",
    "GF",
    "GREEK_NAMES",
    "NotCurledNormalFormError",
    "RATIONALS",
    "ScalarPoly",
    "SingularMatrixError",
    "StructureTensor",
    "TableId",
    "UnsupportedFieldError",
    "change_of_basis",
    "check_condition_10",
    "check_condition_17",
    "check_zeropotency_condition",
    "classify_counts",
    "condition_report",
    "decode_table",
    "difference_expansion",
    "differential_reports",
    "differential_test",
    "encode_table",
    "enumerate_field",
    "enumerate_tables",
    "eval_formal",
    "eval_to_polynomials",
    "formal_multiply",
    "from_integer",
    "from_tensor",
    "generic_product",
    "generic_square_x",
    "generic_square_y",
    "greek_poly",
    "inverse",
    "is_curled_bruteforce",
    "is_curled_symbolic",
    "is_ec_bruteforce",
    "is_ec_by_theorem",
    "is_ec_polynomial",
    "is_zeropotent_bruteforce",
    "is_zeropotent_by_condition",
    "linearly_dependent",
    "normalize_diagonal",
    "parse_poly",
    "product",
    "recombined_difference",
    "specialize",
    "square",
    "to_tensor",
]
