"""Pair-sum collapse calculus for binomial Gaussian blur.

Exact-integer matrices, the collapse operators and their banded-matrix
realizations, kernel construction and convolution, three interchangeable
blur strategies with an equivalence checker and benchmark, and netpbm
image I/O behind a small CLI.
"""

from .collapse import (
    GammaSpec,
    NdArray,
    collapse,
    collapse_all,
    collapse_axis,
    collapse_down,
    collapse_down_power,
    collapse_power,
    collapse_right,
    collapse_right_power,
    generalized_collapse,
    generalized_collapse_power,
)
from .kernels import (
    EdgeMode,
    FilterResult,
    Kernel,
    box_kernel,
    convolve,
    convolve_crop,
    extend,
    gaussian_kernel,
    gaussian_kernel_rect,
    gaussian_kernel_sampled,
    interpolation_kernel,
    separable_convolve,
)
from .matrix import (
    DimensionError,
    ExactOverflowError,
    Matrix,
    ScalarMode,
    add,
    approx_equal,
    multiply,
    scale,
)
from .netpbm import (
    ColorImage,
    ImagePlane,
    NetpbmError,
    merge_color,
    plane_from_matrix,
    read_netpbm,
    split_color,
    write_netpbm,
)
from .pipeline import (
    BenchReport,
    BenchRow,
    BlurRequest,
    EquivalenceReport,
    Method,
    benchmark,
    blur,
    deviation,
    entry_ops,
    equivalence_report,
    rect_blur,
    seeded_image,
)
from .structured import (
    ToeplitzSpec,
    binomial,
    coefficient_matrix,
    coefficient_matrix_entry_sum,
    collapsed_coefficient_square,
    column_sum_vector,
    r_falling,
    r_matrix,
    r_phi,
    r_phi_falling,
    row_sum_vector,
    toeplitz,
    toeplitz_full_collapse,
)

__version__ = "0.1.0"
