"""Partition q-series of quiver mutation loops, computed in exact arithmetic."""

from ._backend import BACKEND
from .closed_forms import (
    DynkinType,
    alternating_dynkin,
    cartan_matrix,
    dynkin_closed_form,
    dynkin_loop,
    square_closed_form,
    square_loop,
    theta_check_a3,
)
from .errors import LatticeLimitError
from .lattice import enumerate_lattice
from .loops import (
    MutationLoop,
    Mutate,
    NotALoopError,
    PentagonError,
    Relabel,
    apply_steps,
    normalize,
    pentagon_contract,
    pentagon_expand,
    validate_loop,
)
from .partition import partition_series, q_pentagon_check, sum_loop
from .quiver import Quiver, QuiverError, sign_classes, square_product, tensor_product
from .series import QSeries, inv_pochhammer, pochhammer, series_mul
from .variables import (
    DegenerateLoopError,
    ExponentForm,
    VariableSystem,
    build_system,
    certify_positive,
    exponent_form,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "DegenerateLoopError",
    "DynkinType",
    "ExponentForm",
    "LatticeLimitError",
    "Mutate",
    "MutationLoop",
    "NotALoopError",
    "PentagonError",
    "QSeries",
    "Quiver",
    "QuiverError",
    "Relabel",
    "VariableSystem",
    "alternating_dynkin",
    "apply_steps",
    "build_system",
    "cartan_matrix",
    "certify_positive",
    "dynkin_closed_form",
    "dynkin_loop",
    "enumerate_lattice",
    "exponent_form",
    "inv_pochhammer",
    "normalize",
    "partition_series",
    "pentagon_contract",
    "pentagon_expand",
    "pochhammer",
    "q_pentagon_check",
    "series_mul",
    "sign_classes",
    "square_closed_form",
    "square_loop",
    "square_product",
    "sum_loop",
    "tensor_product",
    "theta_check_a3",
    "validate_loop",
]
