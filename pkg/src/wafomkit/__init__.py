"""Digital nets over GF(2) and their weighted Walsh figure of merit.

The merit W_u^n(P) and the QMC error of exp(-sum_j u_j x_j) over the same
net are related by constants B <= err / W <= A that depend only on u.
"""

from .constants import constant_A, constant_B
from .errors import BudgetError, DimensionError, DomainError, NetFormatError, ParameterError, WafomError
from .exp_error import err_exp, err_via_dual, exact_integral_exp, normalized_err_exp, qmc_mean_exp
from .experiment import (
    Criterion,
    ExperimentConfig,
    ExperimentRecord,
    bench_compare,
    random_search,
    run_ratio_experiment,
)
from .gf2 import BitMatrix, BitVector, kernel_basis, random_matrix, row_vec_mul, transpose_mul_vec
from .merit import build_lookup_tables, wafom_dual_sum, wafom_lookup, wafom_pointwise
from .net import (
    NetParams,
    PointSet,
    dual_net,
    generate_points,
    generate_points_graycode,
    parse_net,
    random_net,
    read_net,
    write_net,
)
from .walsh import (
    coeff_bounds_1d,
    mu_weight,
    walsh_coeff_exp_1d,
    walsh_coeff_exp_multi,
    walsh_coeff_numeric,
    walsh_function,
)

__version__ = "0.1.0"
